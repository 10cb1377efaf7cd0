//! Quotient structures, finite abelian invariants and group isomorphism.

use crate::error::{Error, Result};
use crate::hypergroup::{Carrier, HyperOp, Hypergroup};
use crate::relations::{beta, is_regular, EquivRelation};
use crate::subset::ElemSet;

/// A validated finite group given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    names: Vec<String>,
    n: usize,
    mul: Vec<usize>,
    identity: usize,
}

impl GroupTable {
    /// Validates associativity, a two-sided identity and inverses.
    pub fn new(names: Vec<String>, mul: Vec<usize>) -> Result<GroupTable> {
        let n = names.len();
        if mul.len() != n * n {
            return Err(Error::Parse(format!(
                "group table has {} entries, expected {}",
                mul.len(),
                n * n
            )));
        }
        if mul.iter().any(|&x| x >= n) {
            return Err(Error::IndexOutOfRange(*mul.iter().max().unwrap(), n));
        }
        let at = |a: usize, b: usize| mul[a * n + b];
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or_else(|| Error::Parse("group table has no identity".into()))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(Error::Parse(format!(
                            "group table not associative at ({a},{b},{c})"
                        )));
                    }
                }
            }
            if !(0..n).any(|b| at(a, b) == identity && at(b, a) == identity) {
                return Err(Error::Parse(format!("element {a} has no inverse")));
            }
        }
        Ok(GroupTable {
            names,
            n,
            mul,
            identity,
        })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn name(&self, i: usize) -> String {
        self.names[i].clone()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.n)
            .find(|&b| self.mul(a, b) == self.identity)
            .expect("validated group")
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (a..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn order_of(&self, x: usize) -> usize {
        let mut acc = x;
        let mut ord = 1;
        while acc != self.identity {
            acc = self.mul(acc, x);
            ord += 1;
        }
        ord
    }

    /// Subgroup generated by a subset.
    pub fn generated_subgroup(&self, seed: ElemSet) -> ElemSet {
        let mut k = seed;
        k.insert(self.identity);
        loop {
            let mut grown = k;
            for a in k.iter() {
                grown.insert(self.inverse(a));
                for b in k.iter() {
                    grown.insert(self.mul(a, b));
                }
            }
            if grown == k {
                return k;
            }
            k = grown;
        }
    }

    pub fn is_subgroup(&self, k: ElemSet) -> bool {
        k.contains(self.identity)
            && k.iter()
                .all(|a| k.contains(self.inverse(a)) && k.iter().all(|b| k.contains(self.mul(a, b))))
    }

    /// All subgroups, in bitmask order. Subset scan, so capped.
    pub fn subgroups(&self) -> Result<Vec<ElemSet>> {
        if self.n > 16 {
            return Err(Error::CapExceeded(self.n, 16));
        }
        let mut out = Vec::new();
        for bits in 1..(1u64 << self.n) {
            let k = ElemSet::from_bits(bits);
            if self.is_subgroup(k) {
                out.push(k);
            }
        }
        Ok(out)
    }

    /// Subgroup generated by all commutators.
    pub fn commutator_subgroup(&self) -> ElemSet {
        let mut gens = ElemSet::empty();
        for a in 0..self.n {
            for b in 0..self.n {
                let c = self.mul(
                    self.mul(a, b),
                    self.mul(self.inverse(a), self.inverse(b)),
                );
                gens.insert(c);
            }
        }
        self.generated_subgroup(gens)
    }

    /// Quotient by a normal subgroup; cosets named by brace-joined members.
    pub fn quotient_by(&self, nsub: ElemSet) -> Result<GroupTable> {
        if !self.is_subgroup(nsub) {
            return Err(Error::NotSubgroup);
        }
        let coset = |x: usize| -> ElemSet { nsub.iter().map(|s| self.mul(x, s)).collect() };
        let mut cosets: Vec<ElemSet> = Vec::new();
        let mut coset_of = vec![usize::MAX; self.n];
        for x in 0..self.n {
            let c = coset(x);
            let id = cosets.iter().position(|&d| d == c).unwrap_or_else(|| {
                cosets.push(c);
                cosets.len() - 1
            });
            coset_of[x] = id;
        }
        let m = cosets.len();
        let names = cosets
            .iter()
            .map(|c| {
                format!(
                    "{{{}}}",
                    c.iter().map(|i| self.names[i].clone()).collect::<Vec<_>>().join(",")
                )
            })
            .collect();
        let mut mul = vec![0usize; m * m];
        for (i, ci) in cosets.iter().enumerate() {
            for (j, cj) in cosets.iter().enumerate() {
                let a = ci.min_elem().unwrap();
                let b = cj.min_elem().unwrap();
                mul[i * m + j] = coset_of[self.mul(a, b)];
            }
        }
        GroupTable::new(names, mul)
    }

    // ---- builders -------------------------------------------------------

    pub fn cyclic(n: usize) -> GroupTable {
        assert!(n >= 1);
        let names = (0..n).map(|i| i.to_string()).collect();
        let mul = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        GroupTable::new(names, mul).expect("cyclic group")
    }

    pub fn direct_product(a: &GroupTable, b: &GroupTable) -> GroupTable {
        let (na, nb) = (a.n, b.n);
        let n = na * nb;
        let names = (0..n)
            .map(|i| format!("({},{})", a.names[i / nb], b.names[i % nb]))
            .collect();
        let mut mul = vec![0usize; n * n];
        for i in 0..n {
            for j in 0..n {
                let (x1, y1) = (i / nb, i % nb);
                let (x2, y2) = (j / nb, j % nb);
                mul[i * n + j] = a.mul(x1, x2) * nb + b.mul(y1, y2);
            }
        }
        GroupTable::new(names, mul).expect("product group")
    }

    /// The symmetric group on three points, elements as one-line images.
    pub fn symmetric_3() -> GroupTable {
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let names = perms
            .iter()
            .map(|p| format!("p{}{}{}", p[0], p[1], p[2]))
            .collect();
        let n = perms.len();
        let compose = |f: &[usize; 3], g: &[usize; 3]| [f[g[0]], f[g[1]], f[g[2]]];
        let mut mul = vec![0usize; n * n];
        for i in 0..n {
            for j in 0..n {
                let h = compose(&perms[i], &perms[j]);
                mul[i * n + j] = perms.iter().position(|p| *p == h).unwrap();
            }
        }
        GroupTable::new(names, mul).expect("S3")
    }
}

/// Invariant-factor descriptor of a finitely generated abelian group:
/// Z^rank x Z_d1 x ... with d1 | d2 | ... and every d >= 2.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct FgAbGroup {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

impl FgAbGroup {
    pub fn trivial() -> FgAbGroup {
        FgAbGroup { rank: 0, torsion: vec![] }
    }

    pub fn free(rank: usize) -> FgAbGroup {
        FgAbGroup { rank, torsion: vec![] }
    }

    pub fn cyclic(d: u64) -> FgAbGroup {
        FgAbGroup::from_cyclic_orders(0, &[d])
    }

    /// Canonicalizes an arbitrary multiset of cyclic orders into the
    /// invariant-factor chain.
    pub fn from_cyclic_orders(rank: usize, orders: &[u64]) -> FgAbGroup {
        use std::collections::BTreeMap;
        // prime -> prime powers present, descending
        let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        for &d in orders {
            assert!(d >= 1);
            let mut rem = d;
            let mut p = 2;
            while p * p <= rem {
                if rem % p == 0 {
                    let mut q = 1;
                    while rem % p == 0 {
                        rem /= p;
                        q *= p;
                    }
                    by_prime.entry(p).or_default().push(q);
                }
                p += 1;
            }
            if rem > 1 {
                by_prime.entry(rem).or_default().push(rem);
            }
        }
        let mut slots = 0usize;
        for powers in by_prime.values_mut() {
            powers.sort_unstable_by(|a, b| b.cmp(a));
            slots = slots.max(powers.len());
        }
        let mut factors = Vec::new();
        for i in 0..slots {
            let mut d = 1u64;
            for powers in by_prime.values() {
                if i < powers.len() {
                    d *= powers[i];
                }
            }
            factors.push(d);
        }
        factors.reverse();
        FgAbGroup { rank, torsion: factors }
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl std::fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        if self.rank == 1 {
            parts.push("Z".to_string());
        } else if self.rank > 1 {
            parts.push(format!("Z^{}", self.rank));
        }
        for d in &self.torsion {
            parts.push(format!("Z_{d}"));
        }
        write!(f, "{}", parts.join(" x "))
    }
}

impl std::str::FromStr for FgAbGroup {
    type Err = Error;

    /// Parses descriptors like "Z", "Z^2", "Z_4", "Z x Z_2 x Z_4", "0".
    fn from_str(s: &str) -> Result<FgAbGroup> {
        let s = s.trim();
        if s == "0" || s == "Z_1" || s == "1" {
            return Ok(FgAbGroup::trivial());
        }
        let mut rank = 0usize;
        let mut orders = Vec::new();
        for part in s.split(['x', '*']) {
            let part = part.trim();
            if part == "Z" {
                rank += 1;
            } else if let Some(r) = part.strip_prefix("Z^") {
                rank += r
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad rank in {part:?}")))?;
            } else if let Some(d) = part.strip_prefix("Z_") {
                orders.push(
                    d.parse::<u64>()
                        .map_err(|_| Error::Parse(format!("bad torsion order in {part:?}")))?,
                );
            } else {
                return Err(Error::Parse(format!("bad group descriptor part {part:?}")));
            }
        }
        Ok(FgAbGroup::from_cyclic_orders(rank, &orders))
    }
}

/// A quotient table over the blocks of an equivalence, before any
/// hypergroup validation. Cells are sets of block indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientTable {
    pub names: Vec<String>,
    pub cells: Vec<ElemSet>,
}

impl QuotientTable {
    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn cell(&self, a: usize, b: usize) -> ElemSet {
        self.cells[a * self.names.len() + b]
    }
}

fn block_name(h: &Hypergroup, block: ElemSet) -> String {
    format!("{{{}}}", h.subset_names(block).join(","))
}

/// Raw quotient over full class products: cell(A,B) = classes met by A+B.
/// Total for every equivalence; a hypergroup exactly when rel is regular.
pub fn quotient_table_classwise(h: &Hypergroup, rel: &EquivRelation) -> Result<QuotientTable> {
    if rel.len() != h.size() {
        return Err(Error::PartitionMismatch);
    }
    let blocks = rel.blocks();
    let m = blocks.len();
    let names = blocks.iter().map(|&b| block_name(h, b)).collect();
    let mut cells = vec![ElemSet::empty(); m * m];
    for (i, &a) in blocks.iter().enumerate() {
        for (j, &b) in blocks.iter().enumerate() {
            cells[i * m + j] = rel.classes_met(h.prod(a, b));
        }
    }
    Ok(QuotientTable { names, cells })
}

/// Quotient hypergroup of a regular relation: cell(A,B) = {rho(z) : z in
/// a+b} for representatives, with every representative choice compared.
pub fn quotient(h: &Hypergroup, rel: &EquivRelation) -> Result<Hypergroup> {
    if rel.len() != h.size() {
        return Err(Error::PartitionMismatch);
    }
    let blocks = rel.blocks();
    let m = blocks.len();
    let mut cells = vec![ElemSet::empty(); m * m];
    for (i, &ba) in blocks.iter().enumerate() {
        for (j, &bb) in blocks.iter().enumerate() {
            let mut expected: Option<ElemSet> = None;
            for a in ba.iter() {
                for b in bb.iter() {
                    let met = rel.classes_met(h.cell(a, b));
                    match expected {
                        None => expected = Some(met),
                        Some(e) if e == met => {}
                        Some(_) => return Err(Error::WellDefinednessViolation(a, b)),
                    }
                }
            }
            cells[i * m + j] = expected.expect("nonempty blocks");
        }
    }
    let names = blocks.iter().map(|&b| block_name(h, b)).collect();
    let carrier = Carrier::new(names)?;
    let op = HyperOp::new(m, cells)?;
    Hypergroup::verify(carrier, op).map_err(|_| Error::NotRegular)
}

/// Extracts the group table from a quotient whose cells are all singletons.
pub fn as_group(hq: &Hypergroup) -> Result<GroupTable> {
    let n = hq.size();
    let mut mul = vec![0usize; n * n];
    for a in 0..n {
        for b in 0..n {
            let cell = hq.cell(a, b);
            if cell.len() != 1 {
                return Err(Error::NotSingleValued);
            }
            mul[a * n + b] = cell.min_elem().unwrap();
        }
    }
    GroupTable::new(hq.carrier().names().to_vec(), mul)
}

/// Invariant factors of a finite abelian group, by repeatedly splitting
/// off a cyclic subgroup generated by an element of maximal order.
pub fn abelian_invariants(g: &GroupTable) -> Result<FgAbGroup> {
    if !g.is_abelian() {
        return Err(Error::NotAbelian);
    }
    fn go(g: &GroupTable, acc: &mut Vec<u64>) -> Result<()> {
        if g.size() == 1 {
            return Ok(());
        }
        let top = (0..g.size()).max_by_key(|&x| g.order_of(x)).unwrap();
        let order = g.order_of(top) as u64;
        let q = g.quotient_by(g.generated_subgroup(ElemSet::singleton(top)))?;
        go(&q, acc)?;
        acc.push(order);
        Ok(())
    }
    let mut torsion = Vec::new();
    go(g, &mut torsion)?;
    Ok(FgAbGroup { rank: 0, torsion })
}

/// Group isomorphism test: invariant comparison for abelian pairs,
/// generator-image backtracking otherwise.
pub fn iso_groups(g1: &GroupTable, g2: &GroupTable) -> Result<bool> {
    if g1.size() > 64 || g2.size() > 64 {
        return Err(Error::CapExceeded(g1.size().max(g2.size()), 64));
    }
    if g1.size() != g2.size() {
        return Ok(false);
    }
    if g1.is_abelian() != g2.is_abelian() {
        return Ok(false);
    }
    if g1.is_abelian() {
        return Ok(abelian_invariants(g1)? == abelian_invariants(g2)?);
    }
    // order profiles must match
    let profile = |g: &GroupTable| {
        let mut p: Vec<usize> = (0..g.size()).map(|x| g.order_of(x)).collect();
        p.sort_unstable();
        p
    };
    if profile(g1) != profile(g2) {
        return Ok(false);
    }
    // greedy generating sequence for g1
    let mut gens = Vec::new();
    let mut closure = ElemSet::singleton(g1.identity());
    while closure.len() < g1.size() {
        let x = (0..g1.size()).find(|&x| !closure.contains(x)).unwrap();
        gens.push(x);
        let mut seed = closure;
        seed.insert(x);
        closure = g1.generated_subgroup(seed);
    }
    Ok(extend_iso(g1, g2, &gens, &mut vec![None; g1.size()], 0))
}

fn extend_iso(
    g1: &GroupTable,
    g2: &GroupTable,
    gens: &[usize],
    map: &mut Vec<Option<usize>>,
    k: usize,
) -> bool {
    if k == gens.len() {
        return verify_iso(g1, g2, map);
    }
    let g = gens[k];
    for img in 0..g2.size() {
        if g1.order_of(g) != g2.order_of(img) {
            continue;
        }
        let saved = map.clone();
        map[g] = Some(img);
        if propagate(g1, g2, map) && extend_iso(g1, g2, gens, map, k + 1) {
            return true;
        }
        *map = saved;
    }
    false
}

/// Closes a partial generator assignment under multiplication; false on
/// any inconsistency or collision.
fn propagate(g1: &GroupTable, g2: &GroupTable, map: &mut Vec<Option<usize>>) -> bool {
    map[g1.identity()] = Some(g2.identity());
    loop {
        let mut changed = false;
        for a in 0..g1.size() {
            let Some(fa) = map[a] else { continue };
            for b in 0..g1.size() {
                let Some(fb) = map[b] else { continue };
                let ab = g1.mul(a, b);
                let fab = g2.mul(fa, fb);
                match map[ab] {
                    None => {
                        map[ab] = Some(fab);
                        changed = true;
                    }
                    Some(x) if x != fab => return false,
                    _ => {}
                }
            }
        }
        if !changed {
            break;
        }
    }
    // injectivity on the assigned part
    let mut seen = ElemSet::empty();
    for fx in map.iter().flatten() {
        if seen.contains(*fx) {
            return false;
        }
        seen.insert(*fx);
    }
    true
}

fn verify_iso(g1: &GroupTable, g2: &GroupTable, map: &[Option<usize>]) -> bool {
    if map.iter().any(|m| m.is_none()) {
        return false;
    }
    let f = |x: usize| map[x].unwrap();
    let mut seen = ElemSet::empty();
    for x in 0..g1.size() {
        if seen.contains(f(x)) {
            return false;
        }
        seen.insert(f(x));
    }
    (0..g1.size()).all(|a| (0..g1.size()).all(|b| f(g1.mul(a, b)) == g2.mul(f(a), f(b))))
}

/// Lifts a subgroup of H/beta back to a strongly regular relation on H:
/// classes are unions of beta-classes along cosets of N.
pub fn subgroup_pullback(h: &Hypergroup, nsub: ElemSet) -> Result<EquivRelation> {
    let b = beta(h);
    let g = as_group(&quotient(h, &b)?)?;
    if !g.is_subgroup(nsub) {
        return Err(Error::NotSubgroup);
    }
    let coset_key = |c: usize| -> ElemSet { nsub.iter().map(|s| g.mul(c, s)).collect() };
    let n = h.size();
    let keys: Vec<ElemSet> = (0..n).map(|x| coset_key(b.class_of(x))).collect();
    let class_of: Vec<usize> = {
        let mut seen: Vec<ElemSet> = Vec::new();
        let mut ids = vec![0usize; n];
        for x in 0..n {
            ids[x] = seen.iter().position(|&k| k == keys[x]).unwrap_or_else(|| {
                seen.push(keys[x]);
                seen.len() - 1
            });
        }
        ids
    };
    let rel = EquivRelation::from_class_of(class_of)?;
    debug_assert!(is_regular(h, &rel).map(|r| r.strongly_regular).unwrap_or(false));
    Ok(rel)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_group_basics() {
        let g = GroupTable::cyclic(6);
        assert_eq!(g.identity(), 0);
        assert_eq!(g.order_of(1), 6);
        assert_eq!(g.order_of(2), 3);
        assert_eq!(g.inverse(2), 4);
        assert!(g.is_abelian());
    }

    #[test]
    fn s3_is_not_abelian_and_has_a3_commutator() {
        let g = GroupTable::symmetric_3();
        assert!(!g.is_abelian());
        let d = g.commutator_subgroup();
        assert_eq!(d.len(), 3);
        let q = g.quotient_by(d).unwrap();
        assert!(iso_groups(&q, &GroupTable::cyclic(2)).unwrap());
    }

    #[test]
    fn invariants_of_cyclic_and_product_groups() {
        assert_eq!(
            abelian_invariants(&GroupTable::cyclic(4)).unwrap(),
            FgAbGroup { rank: 0, torsion: vec![4] }
        );
        assert_eq!(
            abelian_invariants(&GroupTable::cyclic(1)).unwrap(),
            FgAbGroup::trivial()
        );
        let z2xz2 = GroupTable::direct_product(&GroupTable::cyclic(2), &GroupTable::cyclic(2));
        assert_eq!(
            abelian_invariants(&z2xz2).unwrap(),
            FgAbGroup { rank: 0, torsion: vec![2, 2] }
        );
        let z2xz6 = GroupTable::direct_product(&GroupTable::cyclic(2), &GroupTable::cyclic(6));
        assert_eq!(
            abelian_invariants(&z2xz6).unwrap(),
            FgAbGroup { rank: 0, torsion: vec![2, 6] }
        );
        // Z_4 x Z_6 has invariant factors 2 | 12
        let z4xz6 = GroupTable::direct_product(&GroupTable::cyclic(4), &GroupTable::cyclic(6));
        assert_eq!(
            abelian_invariants(&z4xz6).unwrap(),
            FgAbGroup { rank: 0, torsion: vec![2, 12] }
        );
    }

    #[test]
    fn iso_distinguishes_groups_of_equal_order() {
        let z4 = GroupTable::cyclic(4);
        let z2xz2 = GroupTable::direct_product(&GroupTable::cyclic(2), &GroupTable::cyclic(2));
        assert!(!iso_groups(&z4, &z2xz2).unwrap());
        assert!(!iso_groups(&GroupTable::symmetric_3(), &GroupTable::cyclic(6)).unwrap());
        assert!(iso_groups(&z4, &GroupTable::cyclic(4)).unwrap());
        // non-abelian positive case: S3 against itself with scrambled labels
        let s3 = GroupTable::symmetric_3();
        let perm = [3usize, 5, 1, 0, 4, 2];
        let names = (0..6).map(|i| s3.name(perm[i])).collect();
        let mul = (0..36)
            .map(|i| {
                let (a, b) = (i / 6, i % 6);
                perm.iter()
                    .position(|&p| p == s3.mul(perm[a], perm[b]))
                    .unwrap()
            })
            .collect();
        let scrambled = GroupTable::new(names, mul).unwrap();
        assert!(iso_groups(&s3, &scrambled).unwrap());
    }

    #[test]
    fn fgab_canonicalization_and_display() {
        let g = FgAbGroup::from_cyclic_orders(0, &[4, 6]);
        assert_eq!(g.torsion, vec![2, 12]);
        assert_eq!(g.to_string(), "Z_2 x Z_12");
        assert_eq!(FgAbGroup::free(1).to_string(), "Z");
        assert_eq!(FgAbGroup::trivial().to_string(), "0");
        assert_eq!(FgAbGroup::from_cyclic_orders(2, &[1, 1]).to_string(), "Z^2");
        let parsed: FgAbGroup = "Z x Z_6 x Z_4".parse().unwrap();
        assert_eq!(parsed, FgAbGroup::from_cyclic_orders(1, &[4, 6]));
    }

    #[test]
    fn quotient_by_delta_and_nabla() {
        let h = Hypergroup::from_group(&GroupTable::cyclic(4));
        let d = EquivRelation::identity(4);
        let q = quotient(&h, &d).unwrap();
        assert!(iso_groups(&as_group(&q).unwrap(), &GroupTable::cyclic(4)).unwrap());
        let top = EquivRelation::full(4);
        let q = quotient(&h, &top).unwrap();
        assert_eq!(q.size(), 1);
    }
}
