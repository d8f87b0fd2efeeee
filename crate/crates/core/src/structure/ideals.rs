use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use rand::Rng;
use serde::Serialize;

use super::{Relation, Universe};
use crate::endomorphism::{Block, StarOp};
use crate::error::{ensure_capacity, Result};
use crate::monoid::{ElemId, MAX_TABLE_DEGREE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdealForm {
    /// `End(T_n)`.
    Whole,
    /// `End(T_n) ∖ Aut(T_n)`.
    Singular,
    /// `End(T_4) ∖ (Aut(T_4) ∪ D(4))`, present at degree 4 only.
    NonExceptional,
    /// `X ∪ Y ∪ E_2 ∪ C ∪ E_1` with `X` a union of A-orbits and `Y` of B-orbits.
    EvenClosed,
    /// `Y ∪ Y⁺ ∪ Z ∪ E_1` with `Y` a union of B-orbits and `Z` of C-orbits.
    NonpermClosed,
}

/// An ideal given by its form and the orbits (by orbit id) it is built from.
/// In the non-permutation form, `z` never repeats an orbit already in `Y⁺`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct IdealDescription {
    pub form: IdealForm,
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub z: Vec<usize>,
}

/// Orbit ids of A, B and C, and the `+` map from B-orbits to C-orbits (as indices
/// into `c`).
#[derive(Clone)]
struct OrbitLayout {
    a: Vec<usize>,
    b: Vec<usize>,
    c: Vec<usize>,
    b_plus: Vec<usize>,
}

fn mask_to(ids: &[usize], mask: u64) -> Vec<usize> {
    ids.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &o)| o).collect()
}

/// Submasks of `free` in increasing order, starting with 0.
fn submasks(free: u64) -> impl Iterator<Item = u64> {
    std::iter::successors(Some(0u64), move |&s| {
        let next = (s | !free).wrapping_add(1) & free;
        (next != 0).then_some(next)
    })
}

/// Result of checking generated ideals for two-sided closure.
#[derive(Debug, Clone, Default, Serialize)]
pub struct IdealCheck {
    pub checked: u64,
    pub failures: Vec<IdealDescription>,
}

impl Universe {
    fn orbit_layout(&self) -> OrbitLayout {
        let m = &self.monoid;
        let (a, b, c) = (
            self.orbits.orbits_in(m, Block::A),
            self.orbits.orbits_in(m, Block::B),
            self.orbits.orbits_in(m, Block::C),
        );
        let b_plus = b
            .iter()
            .map(|&o| {
                let plus = self.orbits.orbit(self.star(self.orbits.representative(o), StarOp::Plus));
                c.iter().position(|&x| x == plus).expect("B⁺ lies in C")
            })
            .collect();
        OrbitLayout { a, b, c, b_plus }
    }

    fn fixed_forms(&self) -> Vec<IdealForm> {
        let mut forms = vec![IdealForm::Whole];
        if !self.monoid.ids_in(Block::E3).is_empty() {
            forms.push(IdealForm::Singular);
        }
        if !self.monoid.ids_in(Block::D).is_empty() {
            forms.push(IdealForm::NonExceptional);
        }
        forms
    }

    /// Every ideal, in order: the fixed forms, then even-closed ideals by mask of
    /// `A ∪ B` orbits, then non-permutation ideals by mask of B-orbits and submask
    /// of the remaining C-orbits.
    pub fn ideal_descriptions(&self) -> impl Iterator<Item = IdealDescription> {
        let layout = self.orbit_layout();
        let describe = |form, x, y, z| IdealDescription { form, x, y, z };
        let fixed: Vec<IdealDescription> =
            self.fixed_forms().into_iter().map(|f| describe(f, vec![], vec![], vec![])).collect();
        let has_e2 = self.degree() >= 2;
        let (na, nb, nc) = (layout.a.len(), layout.b.len(), layout.c.len());
        assert!(na + nb < 64 && nc < 64, "orbit masks fit in 64 bits up to degree 5");

        let l1 = layout.clone();
        let even = (0..if has_e2 { 1u64 << (na + nb) } else { 0 }).map(move |mask| {
            describe(IdealForm::EvenClosed, mask_to(&l1.a, mask), mask_to(&l1.b, mask >> na), vec![])
        });
        let l2 = layout;
        let nonperm = (0..if has_e2 { 1u64 << nb } else { 0 }).flat_map(move |ymask| {
            let plus = plus_mask(&l2.b_plus, ymask);
            let full = if nc == 0 { 0 } else { u64::MAX >> (64 - nc) };
            let l3 = l2.clone();
            submasks(full & !plus).map(move |zmask| {
                describe(IdealForm::NonpermClosed, vec![], mask_to(&l3.b, ymask), mask_to(&l3.c, zmask))
            })
        });
        fixed.into_iter().chain(even).chain(nonperm)
    }

    pub fn count_ideals(&self) -> Result<u128> {
        ensure_capacity("count_ideals", self.degree(), MAX_TABLE_DEGREE)?;
        let layout = self.orbit_layout();
        let mut total = self.fixed_forms().len() as u128;
        if self.degree() >= 2 {
            total += 1u128 << (layout.a.len() + layout.b.len());
            for ymask in 0..1u64 << layout.b.len() {
                let used = plus_mask(&layout.b_plus, ymask).count_ones() as usize;
                total += 1u128 << (layout.c.len() - used);
            }
        }
        Ok(total)
    }

    /// Elements of the ideal described by `d`.
    pub fn ideal_elements(&self, d: &IdealDescription) -> FixedBitSet {
        use Block::*;
        let orbit_members = |os: &[usize]| -> Vec<ElemId> {
            os.iter().flat_map(|&o| self.orbits.members(o).iter().copied()).collect()
        };
        let mut ids = match d.form {
            IdealForm::Whole => self.monoid.ids().collect(),
            IdealForm::Singular => self.in_blocks(&[D, E3, A, B, E2, C, E1]),
            IdealForm::NonExceptional => self.in_blocks(&[E3, A, B, E2, C, E1]),
            IdealForm::EvenClosed => self.in_blocks(&[E2, C, E1]),
            IdealForm::NonpermClosed => self.in_blocks(&[E1]),
        };
        ids.extend(orbit_members(&d.x));
        ids.extend(orbit_members(&d.y));
        ids.extend(orbit_members(&d.z));
        if d.form == IdealForm::NonpermClosed {
            for &o in &d.y {
                let plus = self.star(self.orbits.representative(o), StarOp::Plus);
                ids.extend_from_slice(self.orbits.members(self.orbits.orbit(plus)));
            }
        }
        self.bitset(ids)
    }

    /// Whether `set` is closed under multiplication on both sides by every element
    /// of `gens`; with `gens` generating `End(T_n)` this decides two-sided closure.
    pub fn closed_under(&self, set: &FixedBitSet, gens: &[ElemId]) -> bool {
        let m = &self.monoid;
        set.ones().all(|x| {
            let x = ElemId(x as u32);
            gens.iter().all(|&g| set.contains(m.mul(x, g).index()) && set.contains(m.mul(g, x).index()))
        })
    }

    /// Whether `set` contains the principal two-sided ideal of each of its elements.
    pub fn is_ideal_brute(&self, set: &FixedBitSet) -> Result<bool> {
        let ideals = self.brute_ideals()?;
        Ok(!set.is_clear() && set.ones().all(|x| ideals.two_sided[x].is_subset(set)))
    }

    /// Automorphism generators together with every orbit representative: a
    /// generating set for `End(T_n)` that does not depend on essential orbits.
    pub fn orbit_generators(&self) -> Vec<ElemId> {
        let mut gens: Vec<ElemId> = crate::generators::automorphism_generators(self.degree())
            .iter()
            .map(|g| self.monoid.id_of(g).expect("automorphisms are elements"))
            .collect();
        gens.extend((0..self.orbits.len()).map(|o| self.orbits.representative(o)));
        gens
    }

    /// All ideals from the definition: nonempty down-closed unions of J-classes.
    pub fn ideals_brute(&self) -> Result<BTreeSet<Vec<ElemId>>> {
        let ideals = self.brute_ideals()?;
        let classes = self.green_brute(Relation::J)?;
        let mut order: Vec<usize> = (0..classes.len()).collect();
        let size = |k: usize| ideals.two_sided[classes.classes()[k][0].index()].count_ones(..);
        order.sort_by_key(|&k| std::cmp::Reverse(size(k)));
        let leq = |i: usize, j: usize| {
            let (a, b) = (classes.classes()[i][0], classes.classes()[j][0]);
            ideals.two_sided[b.index()].contains(a.index())
        };
        let mut out = BTreeSet::new();
        let mut chosen = Vec::new();
        down_sets(&order, 0, &mut chosen, &leq, &mut |picked: &[usize]| {
            if !picked.is_empty() {
                let mut ids: Vec<ElemId> =
                    picked.iter().flat_map(|&k| classes.classes()[k].iter().copied()).collect();
                ids.sort_unstable();
                out.insert(ids);
            }
        });
        Ok(out)
    }

    /// The enumerated ideals as sorted id lists.
    pub fn ideals_formula(&self) -> BTreeSet<Vec<ElemId>> {
        self.ideal_descriptions()
            .map(|d| Self::ids_of(&self.ideal_elements(&d)))
            .collect()
    }

    /// Checks the first `prefix` enumerated ideals and `samples` random ones from the
    /// non-permutation form with both closure tests.
    pub fn check_ideals_sampled<R: Rng>(&self, prefix: usize, samples: usize, rng: &mut R) -> Result<IdealCheck> {
        let gens = self.orbit_generators();
        let mut report = IdealCheck::default();
        let check = |d: IdealDescription, report: &mut IdealCheck| -> Result<()> {
            let set = self.ideal_elements(&d);
            report.checked += 1;
            if !(self.is_ideal_brute(&set)? && self.closed_under(&set, &gens)) {
                report.failures.push(d);
            }
            Ok(())
        };
        for d in self.ideal_descriptions().take(prefix) {
            check(d, &mut report)?;
        }
        let layout = self.orbit_layout();
        if self.degree() >= 2 {
            for _ in 0..samples {
                let ymask = rng.gen::<u64>() & ((1u64 << layout.b.len()) - 1);
                let free = !plus_mask(&layout.b_plus, ymask) & ((1u64 << layout.c.len()) - 1);
                let zmask = rng.gen::<u64>() & free;
                let d = IdealDescription {
                    form: IdealForm::NonpermClosed,
                    x: vec![],
                    y: mask_to(&layout.b, ymask),
                    z: mask_to(&layout.c, zmask),
                };
                check(d, &mut report)?;
            }
        }
        Ok(report)
    }

    /// Closure of every ideal of the two orbit-parameterized forms, without listing
    /// them: each such set is `E_1` or `E_2 ∪ C ∪ E_1` together with a union of
    /// principal ideals of orbit members, so it is an ideal exactly when every
    /// single-orbit instance is. Returns the offending orbit ids.
    pub fn check_orbit_forms(&self) -> Result<Vec<usize>> {
        let layout = self.orbit_layout();
        let mut bad = Vec::new();
        let base = |form| IdealDescription { form, x: vec![], y: vec![], z: vec![] };
        if self.degree() < 2 {
            return Ok(bad);
        }
        for d in [base(IdealForm::EvenClosed), base(IdealForm::NonpermClosed)] {
            if !self.is_ideal_brute(&self.ideal_elements(&d))? {
                bad.push(usize::MAX);
            }
        }
        let single = |form, x: &[usize], y: &[usize], z: &[usize]| IdealDescription {
            form,
            x: x.to_vec(),
            y: y.to_vec(),
            z: z.to_vec(),
        };
        for &o in &layout.a {
            if !self.is_ideal_brute(&self.ideal_elements(&single(IdealForm::EvenClosed, &[o], &[], &[])))? {
                bad.push(o);
            }
        }
        for &o in &layout.b {
            let even = single(IdealForm::EvenClosed, &[], &[o], &[]);
            let nonperm = single(IdealForm::NonpermClosed, &[], &[o], &[]);
            if !self.is_ideal_brute(&self.ideal_elements(&even))? || !self.is_ideal_brute(&self.ideal_elements(&nonperm))? {
                bad.push(o);
            }
        }
        for &o in &layout.c {
            if !self.is_ideal_brute(&self.ideal_elements(&single(IdealForm::NonpermClosed, &[], &[], &[o])))? {
                bad.push(o);
            }
        }
        Ok(bad)
    }
}

fn plus_mask(b_plus: &[usize], ymask: u64) -> u64 {
    b_plus.iter().enumerate().filter(|(i, _)| ymask >> i & 1 == 1).fold(0, |acc, (_, &c)| acc | 1 << c)
}

/// Enumerates down-sets of a poset whose elements are listed in `order` with every
/// element before everything below it. An element is forced in when something
/// above it was chosen, and is free otherwise.
fn down_sets(
    order: &[usize],
    pos: usize,
    chosen: &mut Vec<usize>,
    leq: &dyn Fn(usize, usize) -> bool,
    emit: &mut dyn FnMut(&[usize]),
) {
    let Some(&k) = order.get(pos) else {
        emit(chosen);
        return;
    };
    let forced = chosen.iter().any(|&c| leq(k, c));
    chosen.push(k);
    down_sets(order, pos + 1, chosen, leq, emit);
    chosen.pop();
    if !forced {
        down_sets(order, pos + 1, chosen, leq, emit);
    }
}
