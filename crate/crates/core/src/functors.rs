//! Homomorphism enumeration between finite hypergroups, hom-invariant
//! relation assignments over a finite universe, induced quotient maps and
//! functoriality checks.

use crate::error::{Error, Result};
use crate::hypergroup::Hypergroup;
use crate::modtensor::lambda_relation;
use crate::quotients::FgAbGroup;
use crate::relations::{
    alpha, beta, congruence_mod, gamma, is_regular, kernel, EquivRelation,
};
use crate::subset::ElemSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HomKind {
    /// f(a+b) = f(a)+f(b) setwise.
    Good,
    /// f(a+b) is contained in f(a)+f(b).
    Inclusion,
}

/// A total map between carriers satisfying one of the homomorphism laws.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomMap {
    pub image: Vec<usize>,
    pub kind: HomKind,
    pub identity_preserving: bool,
}

impl HomMap {
    pub fn apply(&self, s: ElemSet) -> ElemSet {
        s.iter().map(|x| self.image[x]).collect()
    }

    pub fn identity(h: &Hypergroup, kind: HomKind) -> HomMap {
        HomMap {
            image: (0..h.size()).collect(),
            kind,
            identity_preserving: true,
        }
    }
}

/// Search limits for homomorphism enumeration.
#[derive(Debug, Clone, Copy)]
pub struct HomBudget {
    pub max_nodes: u64,
    pub max_homs: usize,
}

impl Default for HomBudget {
    fn default() -> Self {
        HomBudget {
            max_nodes: 500_000,
            max_homs: 20_000,
        }
    }
}

/// Full check of the homomorphism law for a candidate image vector.
pub fn is_hom(h: &Hypergroup, k: &Hypergroup, image: &[usize], kind: HomKind) -> bool {
    if image.len() != h.size() || image.iter().any(|&y| y >= k.size()) {
        return false;
    }
    let f = |s: ElemSet| -> ElemSet { s.iter().map(|x| image[x]).collect() };
    (0..h.size()).all(|a| {
        (0..h.size()).all(|b| {
            let lhs = f(h.cell(a, b));
            let rhs = k.cell(image[a], image[b]);
            match kind {
                HomKind::Good => lhs == rhs,
                HomKind::Inclusion => lhs.is_subset(rhs),
            }
        })
    })
}

fn identity_preserving(h: &Hypergroup, k: &Hypergroup, image: &[usize]) -> bool {
    h.identities().iter().all(|e| k.identities().contains(image[e]))
}

/// All homomorphisms of the given kind, by backtracking in carrier order
/// with incremental cell-compatibility pruning; results are in
/// lexicographic order of image vectors.
pub fn enumerate_homs(
    h: &Hypergroup,
    k: &Hypergroup,
    kind: HomKind,
    require_identity_preserving: bool,
    budget: &HomBudget,
) -> Result<Vec<HomMap>> {
    struct Search<'a> {
        h: &'a Hypergroup,
        k: &'a Hypergroup,
        kind: HomKind,
        require_ip: bool,
        nodes: u64,
        budget: HomBudget,
        image: Vec<usize>,
        out: Vec<HomMap>,
    }

    impl Search<'_> {
        /// Constraints that become checkable once element t is assigned:
        /// pairs involving t, and pairs whose product cell contains t.
        fn consistent(&self, t: usize) -> bool {
            if self.require_ip
                && self.h.identities().contains(t)
                && !self.k.identities().contains(self.image[t])
            {
                return false;
            }
            for a in 0..=t {
                for b in 0..=t {
                    if a != t && b != t && !self.h.cell(a, b).contains(t) {
                        continue;
                    }
                    if !self.check_pair(a, b, t) {
                        return false;
                    }
                }
            }
            true
        }

        fn check_pair(&self, a: usize, b: usize, t: usize) -> bool {
            let cell = self.h.cell(a, b);
            let target = self.k.cell(self.image[a], self.image[b]);
            let mut mapped = ElemSet::empty();
            let mut complete = true;
            for w in cell.iter() {
                if w <= t {
                    if !target.contains(self.image[w]) {
                        return false;
                    }
                    mapped.insert(self.image[w]);
                } else {
                    complete = false;
                }
            }
            if self.kind == HomKind::Good && complete && mapped != target {
                return false;
            }
            true
        }

        fn go(&mut self, t: usize) -> Result<()> {
            if t == self.h.size() {
                if self.out.len() >= self.budget.max_homs {
                    return Err(Error::BudgetExceeded);
                }
                self.out.push(HomMap {
                    image: self.image.clone(),
                    kind: self.kind,
                    identity_preserving: identity_preserving(self.h, self.k, &self.image),
                });
                return Ok(());
            }
            for y in 0..self.k.size() {
                self.nodes += 1;
                if self.nodes > self.budget.max_nodes {
                    return Err(Error::BudgetExceeded);
                }
                self.image[t] = y;
                if self.consistent(t) {
                    self.go(t + 1)?;
                }
            }
            Ok(())
        }
    }

    let mut search = Search {
        h,
        k,
        kind,
        require_ip: require_identity_preserving,
        nodes: 0,
        budget: *budget,
        image: vec![0; h.size()],
        out: Vec::new(),
    };
    search.go(0)?;
    Ok(search.out)
}

/// A named finite family of hypergroups.
#[derive(Debug, Clone)]
pub struct Universe {
    names: Vec<String>,
    members: Vec<Hypergroup>,
}

impl Universe {
    pub fn new(entries: Vec<(String, Hypergroup)>) -> Result<Universe> {
        let mut names = Vec::new();
        let mut members = Vec::new();
        for (name, h) in entries {
            if names.contains(&name) {
                return Err(Error::Parse(format!("duplicate universe member {name:?}")));
            }
            names.push(name);
            members.push(h);
        }
        if members.is_empty() {
            return Err(Error::Parse("empty universe".into()));
        }
        Ok(Universe { names, members })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn member(&self, i: usize) -> &Hypergroup {
        &self.members[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// A named relation recipe, applicable to any hypergroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RelationKind {
    Beta,
    Gamma,
    Alpha { cap: usize },
    Delta,
    Nabla,
    Lambda,
    /// Congruence modulo the closed subhypergroup with these element names.
    Mod(Vec<String>),
}

impl RelationKind {
    /// Parses "beta" | "gamma" | "alpha" | "delta" | "nabla" | "lambda" |
    /// "mod:a,b,c"; alpha uses the supplied tuple-length cap.
    pub fn parse(s: &str, alpha_cap: usize) -> Result<RelationKind> {
        Ok(match s {
            "beta" => RelationKind::Beta,
            "gamma" => RelationKind::Gamma,
            "alpha" => RelationKind::Alpha { cap: alpha_cap },
            "delta" => RelationKind::Delta,
            "nabla" => RelationKind::Nabla,
            "lambda" => RelationKind::Lambda,
            _ => {
                if let Some(names) = s.strip_prefix("mod:") {
                    RelationKind::Mod(names.split(',').map(|n| n.trim().to_string()).collect())
                } else {
                    return Err(Error::Parse(format!("unknown relation kind {s:?}")));
                }
            }
        })
    }
}

/// Materializes a relation recipe on a concrete hypergroup.
pub fn build_relation(h: &Hypergroup, kind: &RelationKind) -> Result<EquivRelation> {
    match kind {
        RelationKind::Beta => Ok(beta(h)),
        RelationKind::Gamma => gamma(h),
        RelationKind::Alpha { cap } => alpha(h, *cap),
        RelationKind::Delta => Ok(EquivRelation::identity(h.size())),
        RelationKind::Nabla => Ok(EquivRelation::full(h.size())),
        RelationKind::Lambda => lambda_relation(h),
        RelationKind::Mod(names) => {
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            congruence_mod(h, h.subset_from_names(&refs)?)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegularityMode {
    Regular,
    StronglyRegular,
}

/// One relation per universe member, each validated against the mode.
#[derive(Debug, Clone)]
pub struct RelationAssignment {
    pub mode: RegularityMode,
    pub rels: Vec<EquivRelation>,
}

impl RelationAssignment {
    pub fn new(
        u: &Universe,
        rels: Vec<EquivRelation>,
        mode: RegularityMode,
    ) -> Result<RelationAssignment> {
        if rels.len() != u.len() {
            return Err(Error::UniverseMismatch);
        }
        for (h, rel) in u.members.iter().zip(&rels) {
            let report = is_regular(h, rel)?;
            let ok = match mode {
                RegularityMode::Regular => report.regular,
                RegularityMode::StronglyRegular => report.strongly_regular,
            };
            if !ok {
                return Err(Error::NotRegular);
            }
        }
        Ok(RelationAssignment { mode, rels })
    }

    /// The same recipe on every member.
    pub fn from_kind(
        u: &Universe,
        kind: &RelationKind,
        mode: RegularityMode,
    ) -> Result<RelationAssignment> {
        let rels = u
            .members
            .iter()
            .map(|h| build_relation(h, kind))
            .collect::<Result<Vec<_>>>()?;
        RelationAssignment::new(u, rels, mode)
    }
}

/// A homomorphism that breaks invariance, with the offending related pair
/// or the kernel element escaping the target kernel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvarianceWitness {
    pub src: usize,
    pub dst: usize,
    pub image: Vec<usize>,
    pub pair: Option<(usize, usize)>,
    pub kernel_escape: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvarianceReport {
    pub invariant: bool,
    /// Pair condition and kernel condition agreed on every hom checked.
    pub characterizations_agree: bool,
    pub witness: Option<InvarianceWitness>,
    /// Universe pairs whose enumeration exceeded the budget.
    pub skipped: Vec<(usize, usize)>,
    pub homs_checked: usize,
}

/// Checks hom-invariance of an assignment over every ordered universe
/// pair: related pairs must map to related pairs, equivalently the source
/// kernel must land in the target kernel; both characterizations are
/// evaluated and compared. Budget-exceeded pairs are recorded and skipped
/// rather than failing the whole report.
pub fn is_hom_invariant(
    u: &Universe,
    a: &RelationAssignment,
    kind: HomKind,
    require_identity_preserving: bool,
    budget: &HomBudget,
) -> Result<InvarianceReport> {
    if a.rels.len() != u.len() {
        return Err(Error::UniverseMismatch);
    }
    let kernels: Vec<ElemSet> = u
        .members
        .iter()
        .zip(&a.rels)
        .map(|(h, rel)| kernel(h, rel).map(|s| s.elements))
        .collect::<Result<_>>()?;
    let mut report = InvarianceReport {
        invariant: true,
        characterizations_agree: true,
        witness: None,
        skipped: Vec::new(),
        homs_checked: 0,
    };
    for i in 0..u.len() {
        for j in 0..u.len() {
            let homs = match enumerate_homs(
                u.member(i),
                u.member(j),
                kind,
                require_identity_preserving,
                budget,
            ) {
                Ok(homs) => homs,
                Err(Error::BudgetExceeded) => {
                    report.skipped.push((i, j));
                    continue;
                }
                Err(e) => return Err(e),
            };
            for f in homs {
                report.homs_checked += 1;
                let mut bad_pair = None;
                'outer: for x in 0..u.member(i).size() {
                    for y in x + 1..u.member(i).size() {
                        if a.rels[i].same(x, y) && !a.rels[j].same(f.image[x], f.image[y]) {
                            bad_pair = Some((x, y));
                            break 'outer;
                        }
                    }
                }
                let escape = kernels[i]
                    .iter()
                    .find(|&s| !kernels[j].contains(f.image[s]));
                let pair_ok = bad_pair.is_none();
                let kernel_ok = escape.is_none();
                if pair_ok != kernel_ok {
                    report.characterizations_agree = false;
                }
                if !pair_ok || !kernel_ok {
                    report.invariant = false;
                    if report.witness.is_none() {
                        report.witness = Some(InvarianceWitness {
                            src: i,
                            dst: j,
                            image: f.image.clone(),
                            pair: bad_pair,
                            kernel_escape: escape,
                        });
                    }
                }
            }
        }
    }
    Ok(report)
}

/// The induced map on quotients, with the isomorphism-criterion data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedMap {
    /// Image class (in the target quotient) of each source class.
    pub class_image: Vec<usize>,
    pub is_homomorphism: bool,
    pub bijective: bool,
    /// The subhypergroup generated by Im f together with the target
    /// kernel is everything.
    pub image_joins_to_target: bool,
    /// The preimage of the target kernel lies inside the source kernel.
    pub preimage_in_kernel: bool,
}

/// Builds the map on quotient classes induced by f, which exists exactly
/// when f maps the source kernel into the target kernel.
pub fn induced_map(
    h: &Hypergroup,
    k: &Hypergroup,
    f: &HomMap,
    rho: &EquivRelation,
    sigma: &EquivRelation,
) -> Result<InducedMap> {
    let s_rho = kernel(h, rho)?.elements;
    let s_sigma = kernel(k, sigma)?.elements;
    if !f.apply(s_rho).is_subset(s_sigma) {
        return Err(Error::KernelNotMapped);
    }
    let mut class_image = vec![usize::MAX; rho.num_classes()];
    for x in 0..h.size() {
        let c = rho.class_of(x);
        let fc = sigma.class_of(f.image[x]);
        if class_image[c] == usize::MAX {
            class_image[c] = fc;
        } else if class_image[c] != fc {
            return Err(Error::WellDefinednessViolation(x, rho.blocks()[c].min_elem().unwrap()));
        }
    }
    let qh = crate::quotients::quotient(h, rho)?;
    let qk = crate::quotients::quotient(k, sigma)?;
    let lift = |s: ElemSet| -> ElemSet { s.iter().map(|c| class_image[c]).collect() };
    let is_homomorphism = (0..qh.size()).all(|a| {
        (0..qh.size()).all(|b| {
            let lhs = lift(qh.cell(a, b));
            let rhs = qk.cell(class_image[a], class_image[b]);
            match f.kind {
                HomKind::Good => lhs == rhs,
                HomKind::Inclusion => lhs.is_subset(rhs),
            }
        })
    });
    let image_classes: ElemSet = class_image.iter().copied().collect();
    let bijective = image_classes.len() == qk.size() && class_image.len() == qk.size();
    let image_set = f.apply(h.full_set());
    let image_joins_to_target =
        k.generated_subhypergroup(image_set.union(s_sigma)).elements == k.full_set();
    let preimage_in_kernel =
        (0..h.size()).all(|x| !s_sigma.contains(f.image[x]) || s_rho.contains(x));
    Ok(InducedMap {
        class_image,
        is_homomorphism,
        bijective,
        image_joins_to_target,
        preimage_in_kernel,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctorialityReport {
    pub ok: bool,
    pub failures: Vec<String>,
    pub skipped: Vec<(usize, usize)>,
    pub composites_checked: usize,
}

/// Verifies the composition law of the induced maps over every composable
/// pair of enumerated homomorphisms, and that identities induce
/// identities.
pub fn functoriality_check(
    u: &Universe,
    a: &RelationAssignment,
    kind: HomKind,
    require_identity_preserving: bool,
    budget: &HomBudget,
) -> Result<FunctorialityReport> {
    if a.rels.len() != u.len() {
        return Err(Error::UniverseMismatch);
    }
    let mut report = FunctorialityReport {
        ok: true,
        failures: Vec::new(),
        skipped: Vec::new(),
        composites_checked: 0,
    };
    let mut homs: Vec<Vec<Option<Vec<HomMap>>>> = vec![vec![None; u.len()]; u.len()];
    for i in 0..u.len() {
        for j in 0..u.len() {
            match enumerate_homs(u.member(i), u.member(j), kind, require_identity_preserving, budget)
            {
                Ok(list) => homs[i][j] = Some(list),
                Err(Error::BudgetExceeded) => report.skipped.push((i, j)),
                Err(e) => return Err(e),
            }
        }
    }
    // identities induce identities
    for i in 0..u.len() {
        let id = HomMap::identity(u.member(i), kind);
        let induced = induced_map(u.member(i), u.member(i), &id, &a.rels[i], &a.rels[i])?;
        let expect: Vec<usize> = (0..a.rels[i].num_classes()).collect();
        if induced.class_image != expect {
            report.ok = false;
            report.failures.push(format!("identity on member {i} does not induce identity"));
        }
    }
    for i in 0..u.len() {
        for j in 0..u.len() {
            let Some(fs) = &homs[i][j] else { continue };
            for l in 0..u.len() {
                let Some(gs) = &homs[j][l] else { continue };
                for f in fs {
                    let ff = induced_map(u.member(i), u.member(j), f, &a.rels[i], &a.rels[j])?;
                    for g in gs {
                        let gg = induced_map(u.member(j), u.member(l), g, &a.rels[j], &a.rels[l])?;
                        let comp = HomMap {
                            image: f.image.iter().map(|&x| g.image[x]).collect(),
                            kind,
                            identity_preserving: f.identity_preserving && g.identity_preserving,
                        };
                        let fc = induced_map(u.member(i), u.member(l), &comp, &a.rels[i], &a.rels[l])?;
                        let composed: Vec<usize> =
                            ff.class_image.iter().map(|&c| gg.class_image[c]).collect();
                        report.composites_checked += 1;
                        if fc.class_image != composed {
                            report.ok = false;
                            report.failures.push(format!(
                                "composition mismatch {i}->{j}->{l} f={:?} g={:?}",
                                f.image, g.image
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Pointwise join of two assignments on the same universe.
pub fn sequence_join(a: &RelationAssignment, b: &RelationAssignment) -> Result<RelationAssignment> {
    sequence_combine(a, b, EquivRelation::join_with)
}

/// Pointwise meet of two assignments on the same universe.
pub fn sequence_meet(a: &RelationAssignment, b: &RelationAssignment) -> Result<RelationAssignment> {
    sequence_combine(a, b, EquivRelation::meet_with)
}

fn sequence_combine(
    a: &RelationAssignment,
    b: &RelationAssignment,
    op: impl Fn(&EquivRelation, &EquivRelation) -> EquivRelation,
) -> Result<RelationAssignment> {
    if a.rels.len() != b.rels.len()
        || a.rels.iter().zip(&b.rels).any(|(x, y)| x.len() != y.len())
    {
        return Err(Error::UniverseMismatch);
    }
    let mode = if a.mode == RegularityMode::StronglyRegular && b.mode == RegularityMode::StronglyRegular
    {
        RegularityMode::StronglyRegular
    } else {
        RegularityMode::Regular
    };
    Ok(RelationAssignment {
        mode,
        rels: a.rels.iter().zip(&b.rels).map(|(x, y)| op(x, y)).collect(),
    })
}

/// Freeness of a theta image in the category of abelian groups: no
/// torsion. The trivial group counts as free of rank 0.
pub fn theta_free_check(g: &FgAbGroup) -> bool {
    g.is_free()
}
