//! Equivalence relations on a carrier, regularity, the fundamental
//! relations and the kernel correspondence.

use std::collections::HashSet;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::hypergroup::{Hypergroup, SubHyp};
use crate::quotients::{as_group, quotient, subgroup_pullback};
use crate::subset::ElemSet;

/// An equivalence relation in canonical form: class ids are assigned by
/// least element, so blocks are sorted by their minimum.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EquivRelation {
    class_of: Vec<usize>,
    blocks: Vec<ElemSet>,
}

impl EquivRelation {
    /// The diagonal relation.
    pub fn identity(n: usize) -> EquivRelation {
        EquivRelation::from_class_of((0..n).collect()).expect("n >= 1")
    }

    /// The full relation.
    pub fn full(n: usize) -> EquivRelation {
        EquivRelation::from_class_of(vec![0; n]).expect("n >= 1")
    }

    /// Normalizes an arbitrary class-id vector.
    pub fn from_class_of(raw: Vec<usize>) -> Result<EquivRelation> {
        if raw.is_empty() {
            return Err(Error::PartitionMismatch);
        }
        let mut remap: Vec<Option<usize>> = vec![None; raw.len().max(raw.iter().max().unwrap() + 1)];
        let mut class_of = vec![0usize; raw.len()];
        let mut blocks: Vec<ElemSet> = Vec::new();
        for (x, &c) in raw.iter().enumerate() {
            let id = *remap[c].get_or_insert_with(|| {
                blocks.push(ElemSet::empty());
                blocks.len() - 1
            });
            class_of[x] = id;
            blocks[id].insert(x);
        }
        Ok(EquivRelation { class_of, blocks })
    }

    /// Builds from explicit blocks, which must partition 0..n.
    pub fn from_blocks(n: usize, blocks: &[ElemSet]) -> Result<EquivRelation> {
        let mut class_of = vec![usize::MAX; n];
        for (id, b) in blocks.iter().enumerate() {
            for x in b.iter() {
                if x >= n || class_of[x] != usize::MAX {
                    return Err(Error::PartitionMismatch);
                }
                class_of[x] = id;
            }
        }
        if class_of.contains(&usize::MAX) {
            return Err(Error::PartitionMismatch);
        }
        EquivRelation::from_class_of(class_of)
    }

    /// Smallest equivalence containing the given pairs.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<EquivRelation> {
        let mut uf = Uf::new(n);
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::IndexOutOfRange(a.max(b), n));
            }
            uf.union(a, b);
        }
        Ok(uf.into_relation())
    }

    /// Number of carrier elements.
    pub fn len(&self) -> usize {
        self.class_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.class_of.is_empty()
    }

    pub fn num_classes(&self) -> usize {
        self.blocks.len()
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    /// The block containing x.
    pub fn class_set(&self, x: usize) -> ElemSet {
        self.blocks[self.class_of[x]]
    }

    /// Blocks, sorted by least element.
    pub fn blocks(&self) -> &[ElemSet] {
        &self.blocks
    }

    pub fn same(&self, x: usize, y: usize) -> bool {
        self.class_of[x] == self.class_of[y]
    }

    /// The set of class ids met by a subset.
    pub fn classes_met(&self, s: ElemSet) -> ElemSet {
        s.iter().map(|x| self.class_of[x]).collect()
    }

    /// Relation containment: self as a set of pairs inside other.
    pub fn is_contained_in(&self, other: &EquivRelation) -> bool {
        debug_assert_eq!(self.len(), other.len());
        (0..self.len()).all(|x| self.class_set(x).is_subset(other.class_set(x)))
    }

    /// Smallest equivalence containing both (transitive closure of the union).
    pub fn join_with(&self, other: &EquivRelation) -> EquivRelation {
        let n = self.len();
        let mut uf = Uf::new(n);
        for x in 0..n {
            if let Some(m) = self.class_set(x).min_elem() {
                uf.union(x, m);
            }
            if let Some(m) = other.class_set(x).min_elem() {
                uf.union(x, m);
            }
        }
        uf.into_relation()
    }

    /// Intersection as sets of pairs.
    pub fn meet_with(&self, other: &EquivRelation) -> EquivRelation {
        let n = self.len();
        let mut keys: Vec<(usize, usize)> = Vec::with_capacity(n);
        for x in 0..n {
            keys.push((self.class_of[x], other.class_of[x]));
        }
        let mut ids = Vec::with_capacity(n);
        let mut seen: Vec<(usize, usize)> = Vec::new();
        for k in keys {
            let id = seen.iter().position(|&s| s == k).unwrap_or_else(|| {
                seen.push(k);
                seen.len() - 1
            });
            ids.push(id);
        }
        EquivRelation::from_class_of(ids).expect("n >= 1")
    }

    /// Blocks as name lists, in canonical order.
    pub fn block_names(&self, h: &Hypergroup) -> Vec<Vec<String>> {
        self.blocks.iter().map(|&b| h.subset_names(b)).collect()
    }
}

struct Uf {
    parent: Vec<usize>,
}

impl Uf {
    fn new(n: usize) -> Uf {
        Uf {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        // keep the smaller index as root so canonical ids fall out directly
        if ra < rb {
            self.parent[rb] = ra;
        } else {
            self.parent[ra] = rb;
        }
    }

    fn union_all(&mut self, s: ElemSet) {
        if let Some(first) = s.min_elem() {
            for x in s.iter() {
                self.union(first, x);
            }
        }
    }

    fn partition(&mut self) -> Vec<usize> {
        (0..self.parent.len()).map(|x| self.find(x)).collect()
    }

    fn into_relation(mut self) -> EquivRelation {
        let ids = self.partition();
        EquivRelation::from_class_of(ids).expect("n >= 1")
    }
}

/// Outcome of a regularity check. A witness (a, b, c, x) names a related
/// pair (a, b), the translating element c and an offending product
/// element x; it is present exactly when the matching flag is false.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularityReport {
    pub regular: bool,
    pub strongly_regular: bool,
    pub regular_witness: Option<(usize, usize, usize, usize)>,
    pub strong_witness: Option<(usize, usize, usize, usize)>,
}

/// Checks regularity of rel on h: for every related pair (a, b) and every
/// c, the translated products a+c, b+c (and c+a, c+b) must meet the same
/// classes. Strong regularity additionally collapses each side to a
/// single class.
pub fn is_regular(h: &Hypergroup, rel: &EquivRelation) -> Result<RegularityReport> {
    let n = h.size();
    if rel.len() != n {
        return Err(Error::PartitionMismatch);
    }
    let mut report = RegularityReport {
        regular: true,
        strongly_regular: true,
        regular_witness: None,
        strong_witness: None,
    };
    for a in 0..n {
        for b in a..n {
            if !rel.same(a, b) {
                continue;
            }
            for c in 0..n {
                for (x, y) in [(h.cell(a, c), h.cell(b, c)), (h.cell(c, a), h.cell(c, b))] {
                    let mx = rel.classes_met(x);
                    let my = rel.classes_met(y);
                    if mx != my {
                        report.regular = false;
                        report.strongly_regular = false;
                        if report.regular_witness.is_none() {
                            let off = x
                                .iter()
                                .find(|&u| !my.contains(rel.class_of(u)))
                                .or_else(|| y.iter().find(|&v| !mx.contains(rel.class_of(v))))
                                .unwrap();
                            report.regular_witness = Some((a, b, c, off));
                        }
                    } else if mx.len() > 1 {
                        report.strongly_regular = false;
                        if report.strong_witness.is_none() {
                            report.strong_witness = Some((a, b, c, x.min_elem().unwrap()));
                        }
                    }
                }
            }
        }
    }
    if report.regular {
        report.regular_witness = None;
    }
    if report.strongly_regular {
        report.strong_witness = None;
    }
    Ok(report)
}

/// The fundamental relation: transitive closure of membership in a common
/// finite product. The family of product sets is closed by extending each
/// known product one factor to the right, which reaches every product by
/// associativity.
pub fn beta(h: &Hypergroup) -> EquivRelation {
    let n = h.size();
    let mut uf = Uf::new(n);
    let mut seen: HashSet<ElemSet> = HashSet::new();
    let mut queue: Vec<ElemSet> = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let c = h.cell(a, b);
            if seen.insert(c) {
                queue.push(c);
            }
        }
    }
    while let Some(p) = queue.pop() {
        uf.union_all(p);
        for x in 0..n {
            let q = h.prod(p, ElemSet::singleton(x));
            if seen.insert(q) {
                queue.push(q);
            }
        }
    }
    uf.into_relation()
}

/// The least strongly regular relation with abelian quotient: the pullback
/// of the commutator subgroup of H/beta.
pub fn gamma(h: &Hypergroup) -> Result<EquivRelation> {
    let b = beta(h);
    let g = as_group(&quotient(h, &b)?)?;
    subgroup_pullback(h, g.commutator_subgroup())
}

const TUPLE_CARRIER_CAP: usize = 12;
const TUPLE_LEN_CAP: usize = 8;

fn tuple_caps(h: &Hypergroup, n_cap: usize) -> Result<()> {
    if h.size() > TUPLE_CARRIER_CAP {
        return Err(Error::CapExceeded(h.size(), TUPLE_CARRIER_CAP));
    }
    if !(2..=TUPLE_LEN_CAP).contains(&n_cap) {
        return Err(Error::CapExceeded(n_cap, TUPLE_LEN_CAP));
    }
    Ok(())
}

fn tuple_product(h: &Hypergroup, t: &[usize]) -> ElemSet {
    let mut acc = ElemSet::singleton(t[0]);
    for &x in &t[1..] {
        acc = h.prod(acc, ElemSet::singleton(x));
    }
    acc
}

/// Direct tuple-enumeration construction of gamma, capped: every product
/// of every ordering of a multiset lands in one class. Errors with
/// NotStabilized unless the partition is unchanged over the last length.
pub fn gamma_bruteforce(h: &Hypergroup, n_cap: usize) -> Result<EquivRelation> {
    tuple_caps(h, n_cap)?;
    let n = h.size();
    let mut uf = Uf::new(n);
    let mut prev = uf.partition();
    for len in 2..=n_cap {
        for multiset in (0..n).combinations_with_replacement(len) {
            let mut hull = ElemSet::empty();
            let orderings: HashSet<Vec<usize>> =
                multiset.iter().copied().permutations(len).collect();
            for t in &orderings {
                hull = hull.union(tuple_product(h, t));
            }
            uf.union_all(hull);
        }
        let cur = uf.partition();
        if len == n_cap && cur != prev {
            return Err(Error::NotStabilized(n_cap));
        }
        prev = cur;
    }
    Ok(uf.into_relation())
}

fn parity_vs_sorted(t: &[usize]) -> bool {
    let mut inv = 0usize;
    for i in 0..t.len() {
        for j in i + 1..t.len() {
            if t[i] > t[j] {
                inv += 1;
            }
        }
    }
    inv % 2 == 0
}

/// The even-permutation variant of gamma: products of a tuple and of any
/// even reordering land in one class. A repeated entry collapses the two
/// parity classes, so only all-distinct multisets keep them apart.
pub fn alpha(h: &Hypergroup, n_cap: usize) -> Result<EquivRelation> {
    tuple_caps(h, n_cap)?;
    let n = h.size();
    let mut uf = Uf::new(n);
    let mut prev = uf.partition();
    for len in 2..=n_cap {
        for multiset in (0..n).combinations_with_replacement(len) {
            let distinct = multiset.windows(2).all(|w| w[0] != w[1]);
            if distinct {
                let mut even_hull = ElemSet::empty();
                let mut odd_hull = ElemSet::empty();
                for t in multiset.iter().copied().permutations(len) {
                    let p = tuple_product(h, &t);
                    // the identity permutation is even, so each product is
                    // internally collapsed either way
                    uf.union_all(p);
                    if parity_vs_sorted(&t) {
                        even_hull = even_hull.union(p);
                    } else {
                        odd_hull = odd_hull.union(p);
                    }
                }
                uf.union_all(even_hull);
                uf.union_all(odd_hull);
            } else {
                let mut hull = ElemSet::empty();
                let orderings: HashSet<Vec<usize>> =
                    multiset.iter().copied().permutations(len).collect();
                for t in &orderings {
                    hull = hull.union(tuple_product(h, t));
                }
                uf.union_all(hull);
            }
        }
        let cur = uf.partition();
        if len == n_cap && cur != prev {
            return Err(Error::NotStabilized(n_cap));
        }
        prev = cur;
    }
    Ok(uf.into_relation())
}

/// The kernel of a regular relation: elements s such that every x meets
/// its own class inside x+s and inside s+x.
pub fn kernel(h: &Hypergroup, rel: &EquivRelation) -> Result<SubHyp> {
    let report = is_regular(h, rel)?;
    if !report.regular {
        return Err(Error::NotRegular);
    }
    let n = h.size();
    let s: ElemSet = (0..n)
        .filter(|&s| {
            (0..n).all(|x| {
                h.cell(x, s).iter().any(|y| rel.same(y, x))
                    && h.cell(s, x).iter().any(|y| rel.same(y, x))
            })
        })
        .collect();
    Ok(h.subhyp(s))
}

/// The congruence modulo a closed subhypergroup S: x and y are related
/// exactly when x+S = y+S and S+x = S+y.
pub fn congruence_mod(h: &Hypergroup, s: ElemSet) -> Result<EquivRelation> {
    if !h.is_subhypergroup(s) || !h.is_closed(s) {
        return Err(Error::NotClosed);
    }
    let n = h.size();
    let keys: Vec<(ElemSet, ElemSet)> = (0..n)
        .map(|x| {
            let xs = ElemSet::singleton(x);
            (h.prod(xs, s), h.prod(s, xs))
        })
        .collect();
    let mut ids = Vec::with_capacity(n);
    let mut seen: Vec<(ElemSet, ElemSet)> = Vec::new();
    for k in keys {
        let id = seen.iter().position(|&q| q == k).unwrap_or_else(|| {
            seen.push(k);
            seen.len() - 1
        });
        ids.push(id);
    }
    EquivRelation::from_class_of(ids)
}

/// Join of two regular relations; the result is again regular and that is
/// asserted.
pub fn join(h: &Hypergroup, r1: &EquivRelation, r2: &EquivRelation) -> Result<EquivRelation> {
    for r in [r1, r2] {
        if !is_regular(h, r)?.regular {
            return Err(Error::NotRegular);
        }
    }
    let j = r1.join_with(r2);
    assert!(is_regular(h, &j)?.regular, "join of regular relations must be regular");
    Ok(j)
}

/// Meet of two regular relations; the result is again regular and that is
/// asserted.
pub fn meet(h: &Hypergroup, r1: &EquivRelation, r2: &EquivRelation) -> Result<EquivRelation> {
    for r in [r1, r2] {
        if !is_regular(h, r)?.regular {
            return Err(Error::NotRegular);
        }
    }
    let m = r1.meet_with(r2);
    assert!(is_regular(h, &m)?.regular, "meet of regular relations must be regular");
    Ok(m)
}

/// R(H) on a canonical hypergroup: one congruence per closed
/// subhypergroup, in bitmask order of the kernels.
pub fn enumerate_regular(h: &Hypergroup) -> Result<Vec<EquivRelation>> {
    if !h.flags().canonical {
        return Err(Error::NotCanonical);
    }
    h.subhypergroups(true)?
        .iter()
        .map(|s| congruence_mod(h, s.elements))
        .collect()
}

const PARTITION_SCAN_CAP: usize = 10;

/// All partitions of 0..n, by restricted growth strings, in lexicographic
/// order of class-id vectors.
pub fn all_partitions(n: usize) -> Result<Vec<EquivRelation>> {
    if n == 0 || n > PARTITION_SCAN_CAP {
        return Err(Error::CapExceeded(n, PARTITION_SCAN_CAP));
    }
    let mut out = Vec::new();
    let mut ids = vec![0usize; n];
    fn go(ids: &mut Vec<usize>, pos: usize, max_used: usize, out: &mut Vec<EquivRelation>) {
        if pos == ids.len() {
            out.push(EquivRelation::from_class_of(ids.clone()).expect("n >= 1"));
            return;
        }
        for c in 0..=max_used + 1 {
            ids[pos] = c;
            go(ids, pos + 1, max_used.max(c), out);
        }
    }
    go(&mut ids, 1, 0, &mut out);
    Ok(out)
}

/// Exhaustive partition scan filtered by regularity; the oracle route for
/// small carriers.
pub fn enumerate_regular_bruteforce(h: &Hypergroup) -> Result<Vec<EquivRelation>> {
    let mut out = Vec::new();
    for p in all_partitions(h.size())? {
        if is_regular(h, &p)?.regular {
            out.push(p);
        }
    }
    out.sort();
    Ok(out)
}

/// SR(H): pullbacks of the subgroups of H/beta, in bitmask order of the
/// subgroups.
pub fn enumerate_strongly_regular(h: &Hypergroup) -> Result<Vec<EquivRelation>> {
    let b = beta(h);
    let g = as_group(&quotient(h, &b)?)?;
    g.subgroups()?
        .into_iter()
        .map(|nsub| subgroup_pullback(h, nsub))
        .collect()
}

/// One named check of the kernel correspondence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrespondenceReport {
    pub checks: Vec<(String, bool)>,
}

impl CorrespondenceReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }

    pub fn first_failure(&self) -> Option<&str> {
        self.checks
            .iter()
            .find(|(_, ok)| !*ok)
            .map(|(name, _)| name.as_str())
    }
}

/// End-to-end audit of the correspondence between regular relations and
/// closed subhypergroups on a canonical hypergroup: both round trips,
/// order preservation, the kernel join/meet laws, and the description of
/// the strongly regular relations as joins with beta.
pub fn verify_correspondence(h: &Hypergroup) -> Result<CorrespondenceReport> {
    let subs: Vec<ElemSet> = h
        .subhypergroups(true)?
        .iter()
        .map(|s| s.elements)
        .collect();
    let relations = enumerate_regular(h)?;
    let mut checks = Vec::new();

    let mut fg = true;
    for &s in &subs {
        fg &= kernel(h, &congruence_mod(h, s)?)?.elements == s;
    }
    checks.push(("kernel(congruence_mod(S)) = S".to_string(), fg));

    let mut gf = true;
    let brute = enumerate_regular_bruteforce(h)?;
    for r in &brute {
        gf &= congruence_mod(h, kernel(h, r)?.elements)? == *r;
    }
    checks.push(("congruence_mod(kernel(rho)) = rho".to_string(), gf));

    let mut sorted_rels = relations.clone();
    sorted_rels.sort();
    checks.push((
        "congruences of closed subhypergroups exhaust R(H)".to_string(),
        sorted_rels == brute,
    ));

    let mut order = true;
    for (i, &s1) in subs.iter().enumerate() {
        for (j, &s2) in subs.iter().enumerate() {
            order &= s1.is_subset(s2) == relations[i].is_contained_in(&relations[j]);
        }
    }
    checks.push(("order preservation both ways".to_string(), order));

    let mut join_law = true;
    let mut meet_law = true;
    for (i, r1) in relations.iter().enumerate() {
        for (j, r2) in relations.iter().enumerate() {
            let jn = join(h, r1, r2)?;
            let want = h.generated_subhypergroup(subs[i].union(subs[j])).elements;
            join_law &= kernel(h, &jn)?.elements == want;
            let mt = meet(h, r1, r2)?;
            meet_law &= kernel(h, &mt)?.elements == subs[i].intersect(subs[j]);
        }
    }
    checks.push(("kernel of join is generated union".to_string(), join_law));
    checks.push(("kernel of meet is intersection".to_string(), meet_law));

    let b = beta(h);
    let mut joined: Vec<EquivRelation> = relations
        .iter()
        .map(|r| join(h, r, &b))
        .collect::<Result<_>>()?;
    joined.sort();
    joined.dedup();
    let mut strong: Vec<EquivRelation> = brute
        .iter()
        .filter(|r| is_regular(h, r).map(|q| q.strongly_regular).unwrap_or(false))
        .cloned()
        .collect();
    strong.sort();
    checks.push(("SR(H) = beta v R(H)".to_string(), joined == strong));

    Ok(CorrespondenceReport { checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quotients::GroupTable;
    use crate::testutil::{ex37, set};

    fn blocks_of(h: &Hypergroup, rel: &EquivRelation) -> Vec<Vec<String>> {
        rel.block_names(h)
    }

    #[test]
    fn beta_on_a_group_is_diagonal() {
        let h = Hypergroup::from_group(&GroupTable::cyclic(6));
        assert_eq!(beta(&h), EquivRelation::identity(6));
    }

    #[test]
    fn beta_on_the_total_hypergroup_is_full() {
        let h = Hypergroup::total_hypergroup(4);
        assert_eq!(beta(&h), EquivRelation::full(4));
    }

    #[test]
    fn beta_blocks_on_the_eight_element_example() {
        let h = ex37();
        let b = beta(&h);
        assert_eq!(
            blocks_of(&h, &b),
            vec![
                vec!["0", "u"],
                vec!["x", "-z"],
                vec!["y", "v"],
                vec!["z", "-x"],
            ]
            .into_iter()
            .map(|v| v.into_iter().map(String::from).collect::<Vec<_>>())
            .collect::<Vec<_>>()
        );
        let rep = is_regular(&h, &b).unwrap();
        assert!(rep.regular && rep.strongly_regular);
    }

    #[test]
    fn gamma_equals_beta_on_commutative_hypergroups() {
        for h in [ex37(), Hypergroup::total_with_zero(3)] {
            assert_eq!(gamma(&h).unwrap(), beta(&h));
        }
    }

    #[test]
    fn gamma_on_s3_is_the_alternating_cosets() {
        let h = Hypergroup::from_group(&GroupTable::symmetric_3());
        let g = gamma(&h).unwrap();
        assert_eq!(g.num_classes(), 2);
        // even permutations (orders 1 and 3) in one class
        let evens: ElemSet = (0..6)
            .filter(|&i| GroupTable::symmetric_3().order_of(i) != 2)
            .collect();
        assert_eq!(g.class_set(0), evens);
        assert_eq!(gamma_bruteforce(&h, 4).unwrap(), g);
    }

    #[test]
    fn gamma_bruteforce_matches_pullback_construction() {
        for h in [
            ex37(),
            Hypergroup::from_group(&GroupTable::cyclic(6)),
            Hypergroup::total_with_zero(2),
            Hypergroup::total_hypergroup(3),
        ] {
            assert_eq!(gamma_bruteforce(&h, 4).unwrap(), gamma(&h).unwrap());
        }
    }

    #[test]
    fn alpha_sits_between_beta_and_gamma() {
        for h in [
            ex37(),
            Hypergroup::from_group(&GroupTable::symmetric_3()),
            Hypergroup::from_group(&GroupTable::cyclic(5)),
        ] {
            let a = alpha(&h, 5).unwrap();
            assert!(beta(&h).is_contained_in(&a));
            assert!(a.is_contained_in(&gamma(&h).unwrap()));
        }
    }

    #[test]
    fn alpha_on_s3_needs_length_four_tuples() {
        let h = Hypergroup::from_group(&GroupTable::symmetric_3());
        // at cap 4 the identity first meets the three-cycles, so the
        // partition still moved on the last length
        assert_eq!(alpha(&h, 4), Err(Error::NotStabilized(4)));
        let a = alpha(&h, 5).unwrap();
        assert_eq!(a, gamma(&h).unwrap());
    }

    #[test]
    fn kernel_of_beta_on_the_example() {
        let h = ex37();
        let k = kernel(&h, &beta(&h)).unwrap();
        assert_eq!(k.elements, set(&h, "0,u"));
        assert!(k.closed && k.normal && k.reflexive);
    }

    #[test]
    fn congruence_mod_recovers_beta_from_its_kernel() {
        let h = ex37();
        let b = beta(&h);
        assert_eq!(congruence_mod(&h, set(&h, "0,u")).unwrap(), b);
    }

    #[test]
    fn congruence_mod_rejects_non_closed_subsets() {
        let h = ex37();
        assert_eq!(
            congruence_mod(&h, set(&h, "x,y")),
            Err(Error::NotClosed)
        );
    }

    #[test]
    fn the_mixed_relation_from_two_squares() {
        // Delta together with S^2 and T^2 for S = {0,u,v,y}, T = {x,-x,z,-z}
        let h = ex37();
        let s = set(&h, "0,u,v,y");
        let t = set(&h, "x,z,-x,-z");
        let rho = EquivRelation::from_blocks(8, &[s, t]).unwrap();
        let rep = is_regular(&h, &rho).unwrap();
        assert!(rep.regular && rep.strongly_regular);
        let k = kernel(&h, &rho).unwrap();
        assert_eq!(k.elements, s);
        // quotient by rho is the two-element group
        let q = quotient(&h, &rho).unwrap();
        let g = as_group(&q).unwrap();
        assert!(crate::quotients::iso_groups(&g, &GroupTable::cyclic(2)).unwrap());
    }

    #[test]
    fn regularity_witnesses_on_a_bad_partition() {
        let h = ex37();
        // {0,x} vs the rest is not regular
        let bad = EquivRelation::from_blocks(
            8,
            &[set(&h, "0,x"), set(&h, "y,z,u,v,-x,-z")],
        )
        .unwrap();
        let rep = is_regular(&h, &bad).unwrap();
        assert!(!rep.regular);
        assert!(rep.regular_witness.is_some());
        let (a, b, _, _) = rep.regular_witness.unwrap();
        assert!(bad.same(a, b));
    }

    #[test]
    fn join_and_meet_of_regular_relations() {
        let h = ex37();
        let b = beta(&h);
        let rho = congruence_mod(&h, set(&h, "0,u,v,y")).unwrap();
        let j = join(&h, &b, &rho).unwrap();
        let m = meet(&h, &b, &rho).unwrap();
        assert_eq!(j, rho.join_with(&b));
        assert!(m.is_contained_in(&b) && b.is_contained_in(&j));
    }

    #[test]
    fn regular_enumeration_routes_agree_on_the_example() {
        let h = ex37();
        let mut by_kernels = enumerate_regular(&h).unwrap();
        assert_eq!(by_kernels.len(), 6);
        by_kernels.sort();
        let brute = enumerate_regular_bruteforce(&h).unwrap();
        assert_eq!(by_kernels, brute);
    }

    #[test]
    fn strongly_regular_enumeration_on_the_example() {
        let h = ex37();
        let srs = enumerate_strongly_regular(&h).unwrap();
        // subgroups of Z_4: three of them
        assert_eq!(srs.len(), 3);
        assert!(srs.contains(&beta(&h)));
        assert!(srs.contains(&EquivRelation::full(8)));
    }

    #[test]
    fn correspondence_audit_passes_on_canonical_members() {
        for h in [
            ex37(),
            Hypergroup::from_group(&GroupTable::cyclic(6)),
            Hypergroup::total_with_zero(3),
        ] {
            let report = verify_correspondence(&h).unwrap();
            assert!(report.passed(), "failed: {:?}", report.first_failure());
        }
    }

    #[test]
    fn all_partitions_counts_are_bell_numbers() {
        assert_eq!(all_partitions(1).unwrap().len(), 1);
        assert_eq!(all_partitions(4).unwrap().len(), 15);
        assert_eq!(all_partitions(8).unwrap().len(), 4140);
    }

    #[test]
    fn lattice_operations_on_plain_relations() {
        let a = EquivRelation::from_blocks(
            4,
            &[
                [0usize, 1].into_iter().collect(),
                [2usize, 3].into_iter().collect(),
            ],
        )
        .unwrap();
        let b = EquivRelation::from_blocks(
            4,
            &[
                [0usize].into_iter().collect(),
                [1usize, 2].into_iter().collect(),
                [3usize].into_iter().collect(),
            ],
        )
        .unwrap();
        assert_eq!(a.join_with(&b), EquivRelation::full(4));
        assert_eq!(a.meet_with(&b), EquivRelation::identity(4));
        assert!(a.meet_with(&b).is_contained_in(&a));
    }
}

