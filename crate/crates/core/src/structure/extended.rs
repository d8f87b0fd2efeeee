use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use super::{Partition, Relation, Universe};
use crate::endomorphism::{Block, TypeTag};
use crate::error::{Error, Result};
use crate::monoid::ElemId;
use crate::pairs::PermissiblePair;
use crate::transformation::Transformation;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixSet {
    pub pair: PermissiblePair,
    pub elements: Vec<Transformation>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AbundanceReport {
    pub left_abundant: bool,
    pub right_abundant: bool,
    pub left_fountain: bool,
    pub right_fountain: bool,
}

/// Outcome of random probes of the defining condition of R* or L*.
#[derive(Debug, Clone, Default, Serialize)]
pub struct ProbeReport {
    pub probes: u64,
    /// Probes with both elements in one class where the condition failed.
    pub violations: u64,
    /// Class pairs (by class number) that some probe separated.
    pub separated_pairs: u64,
    pub class_pairs: u64,
}

impl Universe {
    /// Canonical kernel of `x ↦ f(x)` over all `x`, relabelled by first occurrence.
    fn kernel(&self, domain: &[ElemId], f: impl Fn(ElemId) -> ElemId) -> Vec<u32> {
        let mut label = vec![u32::MAX; self.len()];
        let mut next = 0;
        domain
            .iter()
            .map(|&x| {
                let y = f(x).index();
                if label[y] == u32::MAX {
                    label[y] = next;
                    next += 1;
                }
                label[y]
            })
            .collect()
    }

    /// R* from the definition: `α R* β` iff `γα = δα ⇔ γβ = δβ` for all `γ, δ`.
    /// With `idempotents_only`, `γ` and `δ` range over idempotents instead.
    pub fn r_star_brute(&self, idempotents_only: bool) -> Result<Partition> {
        self.table()?;
        let m = &self.monoid;
        let domain: Vec<ElemId> = if idempotents_only { m.idempotents() } else { m.ids().collect() };
        Ok(Partition::by_key(m.ids().map(|a| (a, self.kernel(&domain, |g| m.mul(g, a))))))
    }

    /// L* from the definition: `α L* β` iff `αγ = αδ ⇔ βγ = βδ` for all `γ, δ`.
    pub fn l_star_brute(&self, idempotents_only: bool) -> Result<Partition> {
        self.table()?;
        let m = &self.monoid;
        let domain: Vec<ElemId> = if idempotents_only { m.idempotents() } else { m.ids().collect() };
        Ok(Partition::by_key(m.ids().map(|a| (a, self.kernel(&domain, |g| m.mul(a, g))))))
    }

    /// R~: equal sets of idempotent left identities `{η : ηα = α}`.
    pub fn r_tilde_brute(&self) -> Result<Partition> {
        self.table()?;
        let m = &self.monoid;
        let es = m.idempotents();
        Ok(Partition::by_key(m.ids().map(|a| (a, es.iter().map(|&e| m.mul(e, a) == a).collect::<Vec<_>>()))))
    }

    /// L~: equal sets of idempotent right identities `{η : αη = α}`.
    pub fn l_tilde_brute(&self) -> Result<Partition> {
        self.table()?;
        let m = &self.monoid;
        let es = m.idempotents();
        Ok(Partition::by_key(m.ids().map(|a| (a, es.iter().map(|&e| m.mul(a, e) == a).collect::<Vec<_>>()))))
    }

    /// `J(α)` for the starred or tilde family: the smallest ideal containing `α`
    /// that is a union of `l`-classes and of `r`-classes, by fixed-point iteration.
    /// Elements are related when these ideals agree.
    fn saturated_j(&self, l: &Partition, r: &Partition) -> Result<Partition> {
        let ideals = self.brute_ideals()?;
        let size = self.len();
        let (ll, rl) = (l.labels(size), r.labels(size));
        let j_classes = self.green_brute(Relation::J)?;
        let mut key_of = vec![FixedBitSet::new(); size];
        for class in j_classes.classes() {
            let mut set = ideals.two_sided[class[0].index()].clone();
            loop {
                let (lset, rset): (FixedBitSet, FixedBitSet) = {
                    let mut lc = FixedBitSet::with_capacity(size);
                    let mut rc = FixedBitSet::with_capacity(size);
                    for x in set.ones() {
                        lc.insert(ll[x] as usize);
                        rc.insert(rl[x] as usize);
                    }
                    (lc, rc)
                };
                let mut next = FixedBitSet::with_capacity(size);
                for x in 0..size {
                    if lset.contains(ll[x] as usize) || rset.contains(rl[x] as usize) {
                        next.union_with(&ideals.two_sided[x]);
                    }
                }
                if next == set {
                    break;
                }
                set = next;
            }
            for a in class {
                key_of[a.index()] = set.clone();
            }
        }
        Ok(Partition::by_key(self.monoid.ids().map(|a| (a, key_of[a.index()].clone()))))
    }

    /// The relation computed from its definition.
    pub fn extended_brute(&self, relation: Relation) -> Result<Partition> {
        let size = self.len();
        Ok(match relation {
            Relation::RStar => self.r_star_brute(false)?,
            Relation::LStar => self.l_star_brute(false)?,
            Relation::RTilde => self.r_tilde_brute()?,
            Relation::LTilde => self.l_tilde_brute()?,
            Relation::HStar => self.l_star_brute(false)?.meet(&self.r_star_brute(false)?, size),
            Relation::HTilde => self.l_tilde_brute()?.meet(&self.r_tilde_brute()?, size),
            Relation::DStar => self.l_star_brute(false)?.join(&self.r_star_brute(false)?, size),
            Relation::DTilde => self.l_tilde_brute()?.join(&self.r_tilde_brute()?, size),
            Relation::JStar => self.saturated_j(&self.l_star_brute(false)?, &self.r_star_brute(false)?)?,
            Relation::JTilde => self.saturated_j(&self.l_tilde_brute()?, &self.r_tilde_brute()?)?,
            other => return Err(Error::invalid(format!("{other} is not a starred or tilde relation"))),
        })
    }

    fn same_rank(&self) -> Partition {
        Partition::by_key(self.monoid.ids().map(|a| (a, self.monoid.get(a).rank())))
    }

    /// The relation from its closed-form description.
    pub fn extended_formula(&self, relation: Relation) -> Result<Partition> {
        use Block::*;
        let n = self.degree();
        let size = self.len();
        let ids = self.monoid.ids();
        // Classes given as lists of blocks; blocks not listed stay together as "the rest".
        let by_blocks = |groups: &[&[Block]]| {
            Partition::by_key(ids.clone().map(|a| {
                let b = self.block(a);
                (a, groups.iter().position(|g| g.contains(&b)).unwrap_or(usize::MAX))
            }))
        };
        Ok(match relation {
            Relation::RStar | Relation::RTilde => self.same_rank(),
            Relation::LTilde => Partition::by_key(ids.map(|a| {
                let key = match self.block(a) {
                    Aut | A | B | C => (0, 0),
                    D => (1, self.four_g(a).unwrap_or(0)),
                    _ => (2, a.index()),
                };
                (a, key)
            })),
            Relation::LStar => Partition::by_key(ids.map(|a| {
                let key = match self.block(a) {
                    Aut => (0, TypeTag::Group, Vec::new()),
                    D => (1, TypeTag::Exceptional, vec![Transformation::constant(n, self.four_g(a).unwrap_or(0) + 1)?]),
                    A | B | C => (2, self.monoid.get(a).type_tag(), self.fix_of(a).unwrap_or_default().to_vec()),
                    _ => (3 + a.index(), TypeTag::Trivial, Vec::new()),
                };
                Ok((a, key))
            })
            .collect::<Result<Vec<_>>>()?),
            Relation::HStar => self.extended_formula(Relation::LStar)?.meet(&self.same_rank(), size),
            Relation::HTilde => self.extended_formula(Relation::LTilde)?.meet(&self.same_rank(), size),
            Relation::DStar | Relation::JStar if n <= 3 => self.same_rank(),
            Relation::DStar | Relation::JStar => by_blocks(&[&[Aut], &[D], &[E1]]),
            Relation::DTilde if n <= 2 => self.same_rank(),
            Relation::DTilde if n == 3 => by_blocks(&[&[E3], &[E1]]),
            Relation::DTilde if n == 4 => by_blocks(&[&[D], &[E1]]),
            Relation::DTilde | Relation::JTilde if n >= 3 => by_blocks(&[&[E1]]),
            Relation::JTilde => self.same_rank(),
            other => return Err(Error::invalid(format!("{other} is not a starred or tilde relation"))),
        })
    }

    pub fn abundance_report(&self) -> Result<AbundanceReport> {
        let every_class_has_idempotent =
            |p: &Partition| p.classes().iter().all(|c| c.iter().any(|&a| self.is_idempotent(a)));
        Ok(AbundanceReport {
            left_abundant: every_class_has_idempotent(&self.r_star_brute(false)?),
            right_abundant: every_class_has_idempotent(&self.l_star_brute(false)?),
            left_fountain: every_class_has_idempotent(&self.r_tilde_brute()?),
            right_fountain: every_class_has_idempotent(&self.l_tilde_brute()?),
        })
    }

    /// Random probes of the defining condition of R* (`left = false`) or L*, over
    /// every pair of classes of `partition`. Within a class the condition must hold
    /// for every probe; across classes a probe may or may not separate the pair.
    pub fn probe_star<R: Rng>(&self, partition: &Partition, right: bool, per_pair: u64, rng: &mut R) -> Result<ProbeReport> {
        self.table()?;
        let m = &self.monoid;
        let all: Vec<ElemId> = m.ids().collect();
        let classes = partition.classes();
        let mut report = ProbeReport::default();
        for i in 0..classes.len() {
            for j in i..classes.len() {
                report.class_pairs += 1;
                let mut separated = false;
                for _ in 0..per_pair {
                    let a = *classes[i].choose(rng).expect("classes are nonempty");
                    let b = *classes[j].choose(rng).expect("classes are nonempty");
                    let (g, d) = (*all.choose(rng).expect("nonempty"), *all.choose(rng).expect("nonempty"));
                    let holds = if right {
                        (m.mul(g, a) == m.mul(d, a)) == (m.mul(g, b) == m.mul(d, b))
                    } else {
                        (m.mul(a, g) == m.mul(a, d)) == (m.mul(b, g) == m.mul(b, d))
                    };
                    report.probes += 1;
                    if !holds {
                        if i == j {
                            report.violations += 1;
                        } else {
                            separated = true;
                        }
                    }
                }
                report.separated_pairs += separated as u64;
            }
        }
        Ok(report)
    }

    /// Sampled check that R* is a left congruence. Returns the first failure as
    /// `(γ, α, β)` with `α R* β` but not `γα R* γβ`.
    pub fn r_star_left_congruence_failure<R: Rng>(&self, samples: u64, rng: &mut R) -> Result<Option<[ElemId; 3]>> {
        let p = self.r_star_brute(false)?;
        let same = p.same_class(self.len());
        let all: Vec<ElemId> = self.monoid.ids().collect();
        for _ in 0..samples {
            let class = p.classes().choose(rng).expect("nonempty");
            let (a, b) = (*class.choose(rng).expect("nonempty"), *class.choose(rng).expect("nonempty"));
            let g = *all.choose(rng).expect("nonempty");
            if !same(self.monoid.mul(g, a), self.monoid.mul(g, b)) {
                return Ok(Some([g, a, b]));
            }
        }
        Ok(None)
    }

    /// `(α, β, η)` with `α ∈ A`, `β ∈ B`, `α L~ β`, `η ∈ E_3` and `αη`, `βη` not
    /// L~-related, showing that L~ is not a right congruence.
    pub fn l_tilde_right_congruence_witness(&self) -> Result<Option<[ElemId; 3]>> {
        let p = self.l_tilde_brute()?;
        let same = p.same_class(self.len());
        let m = &self.monoid;
        for a in m.ids_in(Block::A) {
            for b in m.ids_in(Block::B) {
                if !same(a, b) {
                    continue;
                }
                for e in m.ids_in(Block::E3) {
                    if !same(m.mul(a, e), m.mul(b, e)) {
                        return Ok(Some([a, b, e]));
                    }
                }
            }
        }
        Ok(None)
    }
}
