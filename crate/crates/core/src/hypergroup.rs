//! Finite hypergroups as set-valued Cayley tables.

use crate::error::{Error, Result};
use crate::quotients::GroupTable;
use crate::subset::ElemSet;

/// Carriers are capped at 64 so subsets fit in a machine word.
pub const MAX_CARRIER: usize = 64;
/// Exhaustive subset enumeration is capped separately.
pub const SUBSET_ENUM_CAP: usize = 16;

/// The underlying set of a hypergroup: a size and one display name per index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Carrier {
    names: Vec<String>,
}

impl Carrier {
    pub fn new(names: Vec<String>) -> Result<Carrier> {
        if names.is_empty() {
            return Err(Error::Parse("carrier must have at least one element".into()));
        }
        if names.len() > MAX_CARRIER {
            return Err(Error::CapExceeded(names.len(), MAX_CARRIER));
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(Error::Parse(format!("duplicate element name {a:?}")));
            }
        }
        Ok(Carrier { names })
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// A size x size grid of nonempty cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperOp {
    n: usize,
    cells: Vec<ElemSet>,
}

impl HyperOp {
    pub fn new(n: usize, cells: Vec<ElemSet>) -> Result<HyperOp> {
        if cells.len() != n * n {
            return Err(Error::Parse(format!(
                "table has {} cells, expected {}",
                cells.len(),
                n * n
            )));
        }
        let full = ElemSet::full(n);
        for c in &cells {
            if !c.is_subset(full) {
                return Err(Error::IndexOutOfRange(c.iter().last().unwrap_or(0), n));
            }
        }
        Ok(HyperOp { n, cells })
    }

    pub fn cell(&self, a: usize, b: usize) -> ElemSet {
        self.cells[a * self.n + b]
    }
}

/// Structural predicates of a validated hypergroup, all recomputable
/// from the table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize)]
pub struct Flags {
    pub associative: bool,
    pub reproductive: bool,
    pub commutative: bool,
    pub regular: bool,
    pub strongly_regular: bool,
    pub canonical: bool,
    /// Commutative regular class used for the hypermodule structure:
    /// E_H subset of x+z for every inverse z of x, and C(x+y) = C(x)+C(y).
    pub hg_class: bool,
}

/// Every axiom violation found by `Hypergroup::verify`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VerifyFailure {
    pub empty_cells: Vec<(usize, usize)>,
    pub non_associative: Vec<(usize, usize, usize)>,
    pub non_reproductive: Vec<usize>,
}

impl std::fmt::Display for VerifyFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for &(a, b) in &self.empty_cells {
            writeln!(f, "EmptyCell({a},{b})")?;
        }
        for &(a, b, c) in &self.non_associative {
            writeln!(f, "NotAssociative({a},{b},{c})")?;
        }
        for &a in &self.non_reproductive {
            writeln!(f, "NotReproductive({a})")?;
        }
        Ok(())
    }
}

/// A carrier subset satisfying the subhypergroup law a+K = K = K+a.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct SubHyp {
    pub elements: ElemSet,
    pub closed: bool,
    pub normal: bool,
    pub reflexive: bool,
}

/// A validated finite hypergroup. Immutable after construction; all
/// operations are pure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergroup {
    carrier: Carrier,
    op: HyperOp,
    flags: Flags,
    identities: ElemSet,
    inverses: Vec<ElemSet>,
    scalar_identity: Option<usize>,
}

impl Hypergroup {
    /// Checks both hypergroup axioms on the table. On failure the report
    /// lists every violated triple and element.
    pub fn verify(carrier: Carrier, op: HyperOp) -> std::result::Result<Hypergroup, VerifyFailure> {
        let n = carrier.size();
        assert_eq!(op.n, n, "table size must match carrier size");
        let mut fail = VerifyFailure::default();
        for a in 0..n {
            for b in 0..n {
                if op.cell(a, b).is_empty() {
                    fail.empty_cells.push((a, b));
                }
            }
        }
        if fail.empty_cells.is_empty() {
            let full = ElemSet::full(n);
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        let left = sprod(&op, op.cell(a, b), ElemSet::singleton(c));
                        let right = sprod(&op, ElemSet::singleton(a), op.cell(b, c));
                        if left != right {
                            fail.non_associative.push((a, b, c));
                        }
                    }
                }
            }
            for a in 0..n {
                let row = sprod(&op, ElemSet::singleton(a), full);
                let col = sprod(&op, full, ElemSet::singleton(a));
                if row != full || col != full {
                    fail.non_reproductive.push(a);
                }
            }
        }
        if fail != VerifyFailure::default() {
            return Err(fail);
        }

        let mut h = Hypergroup {
            carrier,
            op,
            flags: Flags {
                associative: true,
                reproductive: true,
                ..Flags::default()
            },
            identities: ElemSet::empty(),
            inverses: Vec::new(),
            scalar_identity: None,
        };
        h.identities = h.compute_identities();
        h.inverses = (0..n).map(|x| h.compute_inverses(x)).collect();
        h.scalar_identity = h.compute_scalar_identity();
        h.flags = h.classify();
        Ok(h)
    }

    pub fn size(&self) -> usize {
        self.carrier.size()
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn flags(&self) -> Flags {
        self.flags
    }

    pub fn cell(&self, a: usize, b: usize) -> ElemSet {
        self.op.cell(a, b)
    }

    pub fn full_set(&self) -> ElemSet {
        ElemSet::full(self.size())
    }

    /// Setwise extension of the hyperoperation; empty iff an operand is empty.
    pub fn set_product(&self, a: ElemSet, b: ElemSet) -> Result<ElemSet> {
        let full = self.full_set();
        for s in [a, b] {
            if !s.is_subset(full) {
                return Err(Error::IndexOutOfRange(
                    s.minus(full).min_elem().unwrap(),
                    self.size(),
                ));
            }
        }
        Ok(self.prod(a, b))
    }

    /// Internal unchecked setwise product.
    pub(crate) fn prod(&self, a: ElemSet, b: ElemSet) -> ElemSet {
        sprod(&self.op, a, b)
    }

    /// n-fold setwise sum of a nonempty subset.
    pub(crate) fn fold_sum(&self, s: ElemSet, n: u32) -> ElemSet {
        assert!(n >= 1);
        let mut acc = s;
        for _ in 1..n {
            acc = self.prod(acc, s);
        }
        acc
    }

    /// The identity set E_H.
    pub fn identities(&self) -> ElemSet {
        self.identities
    }

    /// The inverse set C_H(x).
    pub fn inverses(&self, x: usize) -> ElemSet {
        self.inverses[x]
    }

    /// Union of inverse sets over a subset.
    pub fn inverses_set(&self, s: ElemSet) -> ElemSet {
        s.iter().fold(ElemSet::empty(), |acc, x| acc.union(self.inverses[x]))
    }

    /// The scalar identity 0_H, when one exists.
    pub fn scalar_identity(&self) -> Option<usize> {
        self.scalar_identity
    }

    fn compute_identities(&self) -> ElemSet {
        let n = self.size();
        (0..n)
            .filter(|&e| {
                (0..n).all(|x| self.cell(e, x).contains(x) && self.cell(x, e).contains(x))
            })
            .collect()
    }

    fn compute_inverses(&self, x: usize) -> ElemSet {
        let n = self.size();
        let e = self.identities;
        (0..n)
            .filter(|&y| {
                !self.cell(x, y).intersect(e).is_empty() && !self.cell(y, x).intersect(e).is_empty()
            })
            .collect()
    }

    fn compute_scalar_identity(&self) -> Option<usize> {
        let n = self.size();
        (0..n).find(|&e| {
            (0..n).all(|x| {
                self.cell(e, x) == ElemSet::singleton(x) && self.cell(x, e) == ElemSet::singleton(x)
            })
        })
    }

    /// Recomputes every structural flag from the table.
    pub fn classify(&self) -> Flags {
        let n = self.size();
        let commutative = (0..n).all(|a| (a..n).all(|b| self.cell(a, b) == self.cell(b, a)));
        let regular =
            !self.identities.is_empty() && (0..n).all(|x| !self.inverses[x].is_empty());
        let strongly_regular = regular && (0..n).all(|x| self.inverses[x].len() == 1);
        let unique_inverses = (0..n).all(|x| self.inverses[x].len() == 1);
        let reversible = (0..n).all(|y| {
            (0..n).all(|z| {
                self.cell(y, z).iter().all(|x| {
                    self.prod(self.inverses[y], ElemSet::singleton(x)).contains(z)
                        && self.prod(ElemSet::singleton(x), self.inverses[z]).contains(y)
                })
            })
        });
        let canonical =
            commutative && self.scalar_identity.is_some() && unique_inverses && reversible;
        let hg_class = commutative
            && regular
            && (0..n).all(|x| {
                self.inverses[x]
                    .iter()
                    .all(|z| self.identities.is_subset(self.cell(x, z)))
            })
            && (0..n).all(|x| {
                (0..n).all(|y| {
                    self.inverses_set(self.cell(x, y))
                        == self.prod(self.inverses[x], self.inverses[y])
                })
            });
        Flags {
            associative: true,
            reproductive: true,
            commutative,
            regular,
            strongly_regular,
            canonical,
            hg_class,
        }
    }

    /// True when K reproduces inside itself: a+K = K = K+a for all a in K.
    pub fn is_subhypergroup(&self, k: ElemSet) -> bool {
        !k.is_empty()
            && k.iter().all(|a| {
                let s = ElemSet::singleton(a);
                self.prod(s, k) == k && self.prod(k, s) == k
            })
    }

    /// Closed means the whole identity set lies in K; on canonical
    /// hypergroups this is exactly 0_H in K.
    pub fn is_closed(&self, k: ElemSet) -> bool {
        self.identities.is_subset(k)
    }

    pub fn is_normal(&self, k: ElemSet) -> bool {
        (0..self.size()).all(|a| {
            let s = ElemSet::singleton(a);
            self.prod(s, k) == self.prod(k, s)
        })
    }

    /// Intersection-symmetry reading of reflexivity: whenever x+y meets K,
    /// so does y+x.
    pub fn is_reflexive(&self, k: ElemSet) -> bool {
        let n = self.size();
        (0..n).all(|x| {
            (0..n).all(|y| {
                self.cell(x, y).intersect(k).is_empty() || !self.cell(y, x).intersect(k).is_empty()
            })
        })
    }

    pub fn subhyp(&self, elements: ElemSet) -> SubHyp {
        SubHyp {
            elements,
            closed: self.is_closed(elements),
            normal: self.is_normal(elements),
            reflexive: self.is_reflexive(elements),
        }
    }

    /// All subhypergroups, by exhaustive subset scan, in bitmask order.
    pub fn subhypergroups(&self, require_closed: bool) -> Result<Vec<SubHyp>> {
        let n = self.size();
        if n > SUBSET_ENUM_CAP {
            return Err(Error::CapExceeded(n, SUBSET_ENUM_CAP));
        }
        let mut out = Vec::new();
        for bits in 1..(1u64 << n) {
            let k = ElemSet::from_bits(bits);
            if require_closed && !self.is_closed(k) {
                continue;
            }
            if self.is_subhypergroup(k) {
                out.push(self.subhyp(k));
            }
        }
        Ok(out)
    }

    /// Smallest subhypergroup containing seed together with the identity
    /// set, closed under the hyperoperation and inverses.
    pub fn generated_subhypergroup(&self, seed: ElemSet) -> SubHyp {
        let mut k = seed.union(self.identities);
        loop {
            let grown = k.union(self.prod(k, k)).union(self.inverses_set(k));
            if grown == k {
                break;
            }
            k = grown;
        }
        debug_assert!(self.is_subhypergroup(k));
        self.subhyp(k)
    }

    /// Names of a subset in index order.
    pub fn subset_names(&self, s: ElemSet) -> Vec<String> {
        s.iter().map(|i| self.carrier.name(i).to_string()).collect()
    }

    /// Subset from element names.
    pub fn subset_from_names(&self, names: &[&str]) -> Result<ElemSet> {
        let mut s = ElemSet::empty();
        for name in names {
            let i = self
                .carrier
                .index_of(name)
                .ok_or_else(|| Error::Parse(format!("unknown element name {name:?}")))?;
            s.insert(i);
        }
        Ok(s)
    }

    // ---- builders -------------------------------------------------------

    /// A group viewed as a hypergroup with singleton cells.
    pub fn from_group(g: &GroupTable) -> Hypergroup {
        let n = g.size();
        let names = (0..n).map(|i| g.name(i)).collect();
        let cells = (0..n * n)
            .map(|i| ElemSet::singleton(g.mul(i / n, i % n)))
            .collect();
        let carrier = Carrier::new(names).expect("group carrier");
        let op = HyperOp::new(n, cells).expect("group table");
        Hypergroup::verify(carrier, op).expect("groups are hypergroups")
    }

    /// Componentwise product: cell((a1,b1),(a2,b2)) = cell(a1,a2) x cell(b1,b2).
    pub fn direct_product(a: &Hypergroup, b: &Hypergroup) -> Result<Hypergroup> {
        let (na, nb) = (a.size(), b.size());
        let n = na * nb;
        if n > MAX_CARRIER {
            return Err(Error::CapExceeded(n, MAX_CARRIER));
        }
        let names = (0..n)
            .map(|i| format!("({},{})", a.carrier.name(i / nb), b.carrier.name(i % nb)))
            .collect();
        let mut cells = vec![ElemSet::empty(); n * n];
        for i in 0..n {
            for j in 0..n {
                let ca = a.cell(i / nb, j / nb);
                let cb = b.cell(i % nb, j % nb);
                cells[i * n + j] = ca
                    .iter()
                    .flat_map(|x| cb.iter().map(move |y| x * nb + y))
                    .collect();
            }
        }
        let carrier = Carrier::new(names)?;
        let op = HyperOp::new(n, cells)?;
        Ok(Hypergroup::verify(carrier, op).expect("product of hypergroups"))
    }

    /// The total hypergroup: every cell is the whole carrier.
    pub fn total_hypergroup(n: usize) -> Hypergroup {
        assert!(n >= 1 && n <= MAX_CARRIER);
        let names = (0..n).map(element_name).collect();
        let cells = vec![ElemSet::full(n); n * n];
        let carrier = Carrier::new(names).expect("carrier");
        let op = HyperOp::new(n, cells).expect("table");
        Hypergroup::verify(carrier, op).expect("total table is a hypergroup")
    }

    /// Total hypergroup with an adjoined scalar identity: carrier
    /// {0, a_1..a_n}; 0 is scalar, x+y is the nonzero part for distinct
    /// nonzero x,y, and x+x is the whole carrier. Canonical for n >= 1.
    pub fn total_with_zero(n: usize) -> Hypergroup {
        assert!(n >= 1 && n + 1 <= MAX_CARRIER);
        let size = n + 1;
        let mut names = vec!["0".to_string()];
        names.extend((0..n).map(element_name));
        let full = ElemSet::full(size);
        let nonzero = full.minus(ElemSet::singleton(0));
        let mut cells = vec![ElemSet::empty(); size * size];
        for a in 0..size {
            for b in 0..size {
                cells[a * size + b] = if a == 0 {
                    ElemSet::singleton(b)
                } else if b == 0 {
                    ElemSet::singleton(a)
                } else if a == b {
                    full
                } else {
                    nonzero
                };
            }
        }
        let carrier = Carrier::new(names).expect("carrier");
        let op = HyperOp::new(size, cells).expect("table");
        Hypergroup::verify(carrier, op).expect("total-with-zero is a hypergroup")
    }

    /// Finite analogue of the hypergroup on Z x Z with
    /// (a,b)+(c,d) = {(a+c, x)}: carrier Z_m x Z_m, cell = the full row of
    /// first coordinate a+c mod m. Regular with E the zero row and whole
    /// rows as inverse sets, so inverses are far from unique.
    pub fn rn_hypergroup(m: usize) -> Hypergroup {
        assert!(m >= 2 && m * m <= MAX_CARRIER);
        let n = m * m;
        let names = (0..n).map(|i| format!("{}{}", i / m, i % m)).collect();
        let row = |a: usize| -> ElemSet { (0..m).map(|x| a * m + x).collect() };
        let mut cells = vec![ElemSet::empty(); n * n];
        for i in 0..n {
            for j in 0..n {
                cells[i * n + j] = row((i / m + j / m) % m);
            }
        }
        let carrier = Carrier::new(names).expect("carrier");
        let op = HyperOp::new(n, cells).expect("table");
        Hypergroup::verify(carrier, op).expect("rn table is a hypergroup")
    }
}

fn element_name(i: usize) -> String {
    let letters = "abcdefghijklmnopqrstuvwxyz";
    if i < letters.len() {
        letters[i..i + 1].to_string()
    } else {
        format!("a{i}")
    }
}

fn sprod(op: &HyperOp, a: ElemSet, b: ElemSet) -> ElemSet {
    let mut acc = ElemSet::empty();
    for x in a.iter() {
        for y in b.iter() {
            acc = acc.union(op.cell(x, y));
        }
    }
    acc
}
