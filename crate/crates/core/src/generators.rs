//! Right `Aut(T_n)`-orbits, essential orbits and minimal generating sets.

use std::collections::{HashMap, VecDeque};

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::endomorphism::{Block, Endomorphism, TypeTag};
use crate::error::{ensure_capacity, Error, Result};
use crate::monoid::{ElemId, EndMonoid, MAX_TABLE_DEGREE};
use crate::transformation::Transformation;

/// Largest degree accepted by [`orbits`].
pub const MAX_ORBIT_DEGREE: usize = 6;

/// `ψ_{(1 2)}` and `ψ_{(1 2 … n)}`, which generate `Aut(T_n)`.
pub fn automorphism_generators(n: usize) -> Vec<Endomorphism> {
    if n < 2 {
        return vec![Endomorphism::identity(n.max(1))];
    }
    let swap = Transformation::transposition(n, 1, 2).expect("n ≥ 2");
    let cycle = Transformation::cycle(n, &(1..=n).collect::<Vec<_>>()).expect("valid cycle");
    let mut out = vec![Endomorphism::Aut { g: swap }];
    if cycle != swap {
        out.push(Endomorphism::Aut { g: cycle });
    }
    out
}

/// Orbit membership for every element of an [`EndMonoid`]. Orbits are numbered in
/// increasing order of their minimal element, which is also their representative.
pub struct OrbitMap {
    orbit_of: Vec<u32>,
    members: Vec<Vec<ElemId>>,
}

impl OrbitMap {
    pub fn new(m: &EndMonoid) -> Self {
        let gens: Vec<ElemId> = automorphism_generators(m.degree())
            .iter()
            .map(|g| m.id_of(g).expect("automorphisms are elements"))
            .collect();
        let mut orbit_of = vec![u32::MAX; m.len()];
        let mut members = Vec::new();
        for start in m.ids() {
            if orbit_of[start.index()] != u32::MAX {
                continue;
            }
            let label = members.len() as u32;
            let mut orbit = vec![start];
            orbit_of[start.index()] = label;
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for &g in &gens {
                    let y = m.mul(x, g);
                    if orbit_of[y.index()] == u32::MAX {
                        orbit_of[y.index()] = label;
                        orbit.push(y);
                        queue.push_back(y);
                    }
                }
            }
            orbit.sort();
            members.push(orbit);
        }
        OrbitMap { orbit_of, members }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    #[inline]
    pub fn orbit(&self, a: ElemId) -> usize {
        self.orbit_of[a.index()] as usize
    }

    pub fn members(&self, orbit: usize) -> &[ElemId] {
        &self.members[orbit]
    }

    pub fn representative(&self, orbit: usize) -> ElemId {
        self.members[orbit][0]
    }

    /// Orbit ids lying in `block`, in increasing order.
    pub fn orbits_in(&self, m: &EndMonoid, block: Block) -> Vec<usize> {
        (0..self.len()).filter(|&o| m.block(self.representative(o)) == block).collect()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Orbit {
    pub id: usize,
    pub representative: Endomorphism,
    pub members: Vec<Endomorphism>,
    pub rank: u128,
    #[serde(rename = "type")]
    pub type_tag: TypeTag,
    pub block: Block,
    pub essential: bool,
}

/// Multiplicative closure of `gens` (the subsemigroup they generate), as a bitset.
pub fn closure(m: &EndMonoid, gens: &[ElemId]) -> FixedBitSet {
    let mut seen = FixedBitSet::with_capacity(m.len());
    let mut queue: VecDeque<ElemId> = VecDeque::new();
    for &g in gens {
        if !seen.put(g.index()) {
            queue.push_back(g);
        }
    }
    while let Some(x) = queue.pop_front() {
        for &g in gens {
            let y = m.mul(x, g);
            if !seen.put(y.index()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

/// Elements of the subsemigroup generated by every element of rank greater than
/// `rank`. That set contains `Aut(T_n)`, so it is a union of orbits, and it is
/// enough to multiply on the right by one representative per generating orbit.
fn generated_above(m: &EndMonoid, orbits: &OrbitMap, rank: u128) -> FixedBitSet {
    let rank_of = |o: usize| m.get(orbits.representative(o)).rank();
    let gen_orbits: Vec<usize> = (0..orbits.len()).filter(|&o| rank_of(o) > rank).collect();
    let reps: Vec<ElemId> = gen_orbits.iter().map(|&o| orbits.representative(o)).collect();
    let mut seen = FixedBitSet::with_capacity(m.len());
    let mut queue = VecDeque::new();
    let add_orbit = |o: usize, seen: &mut FixedBitSet, queue: &mut VecDeque<ElemId>| {
        for &x in orbits.members(o) {
            seen.insert(x.index());
            queue.push_back(x);
        }
    };
    for &o in &gen_orbits {
        add_orbit(o, &mut seen, &mut queue);
    }
    while let Some(x) = queue.pop_front() {
        for &r in &reps {
            let y = m.mul(x, r);
            if !seen.contains(y.index()) {
                add_orbit(orbits.orbit(y), &mut seen, &mut queue);
            }
        }
    }
    seen
}

/// Essential flag per orbit: an orbit of rank `r` is essential when none of its
/// elements lies in the subsemigroup generated by the elements of rank above `r`.
pub fn essential_flags(m: &EndMonoid, orbits: &OrbitMap) -> Vec<bool> {
    let rank_of = |o: usize| m.get(orbits.representative(o)).rank();
    let mut ranks: Vec<u128> = (0..orbits.len()).map(rank_of).collect();
    ranks.sort_unstable();
    ranks.dedup();
    let hit: HashMap<u128, FixedBitSet> = ranks.iter().map(|&r| (r, generated_above(m, orbits, r))).collect();
    (0..orbits.len())
        .map(|o| !hit[&rank_of(o)].contains(orbits.representative(o).index()))
        .collect()
}

/// Rank-2 orbits containing a product of two rank-3 elements.
pub fn rank_two_orbits_hit_by_rank_three_pairs(m: &EndMonoid, orbits: &OrbitMap) -> Vec<usize> {
    let rank3: Vec<ElemId> = m.ids().filter(|&a| m.get(a).rank() == 3).collect();
    let reps: Vec<ElemId> = (0..orbits.len())
        .map(|o| orbits.representative(o))
        .filter(|&a| m.get(a).rank() == 3)
        .collect();
    let mut hit: Vec<usize> = rank3
        .iter()
        .flat_map(|&g| reps.iter().map(move |&d| m.mul(g, d)))
        .filter(|&p| m.get(p).rank() == 2)
        .map(|p| orbits.orbit(p))
        .collect();
    hit.sort_unstable();
    hit.dedup();
    hit
}

fn orbit_records(m: &EndMonoid, map: &OrbitMap) -> Result<Vec<Orbit>> {
    let essential = essential_flags(m, map);
    Ok((0..map.len())
        .map(|o| {
            let rep = *m.get(map.representative(o));
            Orbit {
                id: o,
                representative: rep,
                members: map.members(o).iter().map(|&a| *m.get(a)).collect(),
                rank: rep.rank(),
                type_tag: rep.type_tag(),
                block: rep.block(),
                essential: essential[o],
            }
        })
        .collect())
}

/// All right `Aut(T_n)`-orbits of `End(T_n)`, with their essential flags.
pub fn orbits(n: usize) -> Result<Vec<Orbit>> {
    ensure_capacity("orbits", n, MAX_ORBIT_DEGREE)?;
    let m = EndMonoid::new(n)?;
    let map = OrbitMap::new(&m);
    orbit_records(&m, &map)
}

pub fn orbits_in(m: &EndMonoid) -> Result<Vec<Orbit>> {
    orbit_records(m, &OrbitMap::new(m))
}

pub fn essential_orbits(n: usize) -> Result<Vec<Orbit>> {
    Ok(orbits(n)?.into_iter().filter(|o| o.essential).collect())
}

#[derive(Debug, Clone, Serialize)]
pub struct MinimalGeneratingSet {
    pub n: usize,
    /// Generators of `Aut(T_n)`.
    pub automorphisms: Vec<Endomorphism>,
    /// One representative per essential singular orbit, including `φ_{id,id}`.
    pub singular: Vec<Endomorphism>,
    /// Number of rank-3 orbits.
    pub r3: usize,
    /// Number of essential rank-2 orbits.
    pub r2: usize,
}

impl MinimalGeneratingSet {
    pub fn elements(&self) -> Vec<Endomorphism> {
        self.automorphisms.iter().chain(&self.singular).copied().collect()
    }

    pub fn len(&self) -> usize {
        self.automorphisms.len() + self.singular.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn check_generating_degree(n: usize) -> Result<()> {
    ensure_capacity("minimal_generating_set", n, MAX_ORBIT_DEGREE)?;
    if n < 5 {
        return Err(Error::invalid(format!("minimal generating sets are computed for n ≥ 5, got {n}")));
    }
    Ok(())
}

pub fn minimal_generating_set(n: usize) -> Result<MinimalGeneratingSet> {
    check_generating_degree(n)?;
    minimal_generating_set_in(&EndMonoid::new(n)?)
}

pub fn minimal_generating_set_in(m: &EndMonoid) -> Result<MinimalGeneratingSet> {
    check_generating_degree(m.degree())?;
    let records = orbits_in(m)?;
    let singular: Vec<Endomorphism> = records
        .iter()
        .filter(|o| o.essential && o.block != Block::Aut)
        .map(|o| o.representative)
        .collect();
    Ok(MinimalGeneratingSet {
        n: m.degree(),
        automorphisms: automorphism_generators(m.degree()),
        r3: records.iter().filter(|o| o.rank == 3).count(),
        r2: records.iter().filter(|o| o.rank == 2 && o.essential).count(),
        singular,
    })
}

/// Whether the subsemigroup generated by `set` is all of `End(T_n)`.
pub fn verify_generates(set: &[Endomorphism], n: usize) -> Result<bool> {
    ensure_capacity("verify_generates", n, MAX_TABLE_DEGREE)?;
    verify_generates_in(&EndMonoid::new(n)?, set)
}

pub fn verify_generates_in(m: &EndMonoid, set: &[Endomorphism]) -> Result<bool> {
    let ids = set.iter().map(|a| m.id_of(a)).collect::<Result<Vec<_>>>()?;
    Ok(closure(m, &ids).count_ones(..) == m.len())
}
