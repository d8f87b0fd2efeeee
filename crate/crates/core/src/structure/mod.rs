//! Idempotents, regularity, Green's relations, ideals and the extended Green's
//! relations of `End(T_n)`.
//!
//! Almost everything is computed twice: once from the closed-form descriptions in
//! terms of blocks, orbits and fixed-point groups (`*_formula`), and once directly
//! from the definitions using the Cayley table (`*_brute`). The free functions at
//! the bottom of this module build a [`Universe`] and return the formula side after
//! checking it against the brute-force side.

mod extended;
mod green;
mod ideals;
mod partition;

use std::sync::OnceLock;

use fixedbitset::FixedBitSet;

pub use extended::{AbundanceReport, FixSet, ProbeReport};
pub use green::{IdempotentPartition, PrincipalIdeals};
pub use ideals::{IdealCheck, IdealDescription, IdealForm};
pub use partition::{GreenPartition, Partition, Relation};

use crate::endomorphism::{Block, Endomorphism, StarOp};
use crate::error::{ensure_capacity, Error, Result};
use crate::generators::OrbitMap;
use crate::monoid::{ElemId, EndMonoid, MAX_TABLE_DEGREE};
use crate::pairs::PermissiblePair;
use crate::transformation::{permutations, Transformation};

/// Largest degree for the formula side of this module.
pub const MAX_STRUCTURE_DEGREE: usize = 6;

/// `End(T_n)` together with its orbits and lazily computed brute-force data.
pub struct Universe {
    monoid: EndMonoid,
    orbits: OrbitMap,
    ideals: OnceLock<green::BruteIdeals>,
    fix: OnceLock<Vec<Option<Vec<Transformation>>>>,
}

impl Universe {
    pub fn new(n: usize) -> Result<Self> {
        ensure_capacity("structure", n, MAX_STRUCTURE_DEGREE)?;
        let monoid = EndMonoid::new(n)?;
        let orbits = OrbitMap::new(&monoid);
        Ok(Universe { monoid, orbits, ideals: OnceLock::new(), fix: OnceLock::new() })
    }

    /// Like [`Universe::new`], but also builds the Cayley table up front.
    pub fn with_table(n: usize) -> Result<Self> {
        ensure_capacity("structure (brute force)", n, MAX_TABLE_DEGREE)?;
        let u = Universe::new(n)?;
        u.monoid.cayley_table()?;
        Ok(u)
    }

    pub fn degree(&self) -> usize {
        self.monoid.degree()
    }

    pub fn monoid(&self) -> &EndMonoid {
        &self.monoid
    }

    pub fn orbits(&self) -> &OrbitMap {
        &self.orbits
    }

    pub fn len(&self) -> usize {
        self.monoid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monoid.is_empty()
    }

    fn table(&self) -> Result<()> {
        self.monoid.cayley_table().map(|_| ())
    }

    #[inline]
    fn block(&self, a: ElemId) -> Block {
        self.monoid.block(a)
    }

    fn in_blocks(&self, blocks: &[Block]) -> Vec<ElemId> {
        self.monoid.ids().filter(|&a| blocks.contains(&self.block(a))).collect()
    }

    /// `4g` for `σ^g`, the key that separates L-classes inside `D(4)`.
    fn four_g(&self, a: ElemId) -> Option<usize> {
        match self.monoid.get(a) {
            Endomorphism::Sigma4 { g } => Some(g.apply(3)),
            _ => None,
        }
    }

    fn star(&self, a: ElemId, op: StarOp) -> ElemId {
        let image = self.monoid.get(a).star_map(op).expect("star maps apply to φ_{t,e}");
        self.monoid.id_of(&image).expect("star images are elements")
    }

    fn is_idempotent(&self, a: ElemId) -> bool {
        self.monoid.mul(a, a) == a
    }

    /// `Fix(t, e)` for `a = φ_{t,e}`, `None` otherwise.
    pub fn fix_of(&self, a: ElemId) -> Option<&[Transformation]> {
        let all = self.fix.get_or_init(|| {
            let perms: Vec<Transformation> =
                permutations(self.degree()).expect("degree within range").collect();
            self.monoid
                .elements()
                .iter()
                .map(|x| x.pair().map(|p| fix_elements(p, &perms)))
                .collect()
        });
        all[a.index()].as_deref()
    }

    fn bitset(&self, ids: impl IntoIterator<Item = ElemId>) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(self.len());
        for a in ids {
            set.insert(a.index());
        }
        set
    }

    fn ids_of(set: &FixedBitSet) -> Vec<ElemId> {
        set.ones().map(|i| ElemId(i as u32)).collect()
    }

    fn endos(&self, ids: &[ElemId]) -> Vec<Endomorphism> {
        ids.iter().map(|&a| *self.monoid.get(a)).collect()
    }

    fn partition_of(&self, relation: Relation, p: &Partition) -> GreenPartition {
        GreenPartition::new(relation, &self.monoid, p)
    }
}

fn fix_elements(p: &PermissiblePair, perms: &[Transformation]) -> Vec<Transformation> {
    perms.iter().filter(|g| p.conjugate_by(g) == *p).copied().collect()
}

fn mismatch(what: &str, n: usize) -> Error {
    Error::Inconsistent(format!("{what}: formula and brute force disagree at n = {n}"))
}

/// The idempotents of `End(T_n)` grouped by rank.
pub fn idempotent_partition(n: usize) -> Result<IdempotentPartition> {
    let u = Universe::new(n)?;
    let formula = u.idempotent_partition_formula();
    if formula != u.idempotent_partition_brute() {
        return Err(mismatch("idempotent partition", n));
    }
    Ok(formula)
}

/// The regular elements of `End(T_n)`.
pub fn regular_elements(n: usize) -> Result<Vec<Endomorphism>> {
    let u = Universe::with_table(n)?;
    let brute = u.regular_brute()?;
    if brute != u.regular_formula() {
        return Err(mismatch("regular elements", n));
    }
    Ok(u.endos(&brute))
}

/// One of the five Green's relations, checked against principal-ideal equality.
pub fn green_partition(n: usize, relation: Relation) -> Result<GreenPartition> {
    if !relation.is_green() {
        return Err(Error::invalid(format!("{relation} is not one of L, R, H, D, J")));
    }
    let u = Universe::with_table(n)?;
    let formula = u.green_formula(relation)?;
    if formula != u.green_brute(relation)? {
        return Err(mismatch(relation.name(), n));
    }
    Ok(u.partition_of(relation, &formula))
}

/// `End(T_n)α`, `αEnd(T_n)` and `End(T_n)αEnd(T_n)`.
pub fn principal_ideals(alpha: &Endomorphism) -> Result<PrincipalIdeals> {
    let u = Universe::with_table(alpha.degree())?;
    let a = u.monoid.id_of(alpha)?;
    let out = u.principal_ideals_formula(a);
    if out != u.principal_ideals_brute(a)? {
        return Err(mismatch("principal ideals", alpha.degree()));
    }
    Ok(PrincipalIdeals {
        left: u.endos(&out.left),
        right: u.endos(&out.right),
        two_sided: u.endos(&out.two_sided),
    })
}

/// `α ≤_J β`, that is `End(T_n)αEnd(T_n) ⊆ End(T_n)βEnd(T_n)`.
pub fn j_leq(alpha: &Endomorphism, beta: &Endomorphism) -> Result<bool> {
    crate::error::ensure_same_degree(alpha.degree(), beta.degree())?;
    let u = Universe::new(alpha.degree())?;
    ensure_capacity("j_leq", u.degree(), MAX_TABLE_DEGREE)?;
    Ok(u.j_leq_formula(u.monoid.id_of(alpha)?, u.monoid.id_of(beta)?))
}

/// Every ideal of `End(T_n)`, lazily, in a fixed order.
pub fn enumerate_ideals(n: usize) -> Result<impl Iterator<Item = IdealDescription>> {
    ensure_capacity("enumerate_ideals", n, MAX_TABLE_DEGREE)?;
    Ok(Universe::new(n)?.ideal_descriptions())
}

/// Number of ideals of `End(T_n)`.
pub fn count_ideals(n: usize) -> Result<u128> {
    ensure_capacity("count_ideals", n, MAX_TABLE_DEGREE)?;
    Universe::new(n)?.count_ideals()
}

/// `Fix(t, e) = {g ∈ S_n : t^g = t, e^g = e}`.
pub fn fix_set(pair: &PermissiblePair) -> Result<FixSet> {
    ensure_capacity("fix_set", pair.degree(), MAX_STRUCTURE_DEGREE)?;
    let perms: Vec<Transformation> = permutations(pair.degree())?.collect();
    Ok(FixSet { pair: *pair, elements: fix_elements(pair, &perms) })
}

/// One of the starred or tilde relations, checked against the definitions.
pub fn extended_partition(n: usize, relation: Relation) -> Result<GreenPartition> {
    if relation.is_green() {
        return Err(Error::invalid(format!("{relation} is not a starred or tilde relation")));
    }
    let u = Universe::with_table(n)?;
    let formula = u.extended_formula(relation)?;
    if formula != u.extended_brute(relation)? {
        return Err(mismatch(relation.name(), n));
    }
    Ok(u.partition_of(relation, &formula))
}

pub fn abundance_report(n: usize) -> Result<AbundanceReport> {
    Universe::with_table(n)?.abundance_report()
}

/// The J-order as a Graphviz digraph, one node per J-class, edges for covers.
pub fn j_order_dot(n: usize) -> Result<String> {
    Universe::new(n)?.j_order_dot()
}
