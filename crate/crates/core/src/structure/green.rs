use fixedbitset::FixedBitSet;
use petgraph::dot::{Config, Dot};
use petgraph::graph::{DiGraph, NodeIndex};
use serde::Serialize;

use super::{Partition, Relation, Universe};
use crate::endomorphism::{klein_representative, Block, Endomorphism, StarOp};
use crate::error::{Error, Result};
use crate::monoid::ElemId;

/// Principal one- and two-sided ideals of every element, from the Cayley table.
pub(crate) struct BruteIdeals {
    pub left: Vec<FixedBitSet>,
    pub right: Vec<FixedBitSet>,
    pub two_sided: Vec<FixedBitSet>,
}

/// The idempotents of `End(T_n)` by rank: `{ε}`, `E_7` (degree 4 only), `E_3`, `E_2`, `E_1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdempotentPartition {
    pub identity: Vec<Endomorphism>,
    pub e7: Vec<Endomorphism>,
    pub e3: Vec<Endomorphism>,
    pub e2: Vec<Endomorphism>,
    pub e1: Vec<Endomorphism>,
}

impl IdempotentPartition {
    pub fn all(&self) -> Vec<Endomorphism> {
        let mut out: Vec<_> = [&self.identity, &self.e7, &self.e3, &self.e2, &self.e1]
            .into_iter()
            .flatten()
            .copied()
            .collect();
        out.sort();
        out
    }

    /// The levels from the bottom of the chain up, in rank order: `E_1, E_2, E_3, (E_7), {ε}`.
    pub fn chain(&self) -> Vec<&[Endomorphism]> {
        [&self.e1, &self.e2, &self.e3, &self.e7, &self.identity]
            .into_iter()
            .filter(|level| !level.is_empty())
            .map(Vec::as_slice)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrincipalIdeals<T = Endomorphism> {
    pub left: Vec<T>,
    pub right: Vec<T>,
    pub two_sided: Vec<T>,
}

impl Universe {
    pub(crate) fn brute_ideals(&self) -> Result<&BruteIdeals> {
        self.table()?;
        Ok(self.ideals.get_or_init(|| {
            let m = &self.monoid;
            let left: Vec<FixedBitSet> =
                m.ids().map(|a| self.bitset(m.ids().map(|x| m.mul(x, a)))).collect();
            let right: Vec<FixedBitSet> =
                m.ids().map(|a| self.bitset(m.ids().map(|x| m.mul(a, x)))).collect();
            // SαS is the union of the left ideals of the elements of αS; elements
            // with equal left ideals contribute the same set, so skip repeats.
            let left_class = Partition::by_key(m.ids().map(|a| (a, &left[a.index()]))).labels(m.len());
            let two_sided = right
                .iter()
                .map(|r| {
                    let mut seen = FixedBitSet::with_capacity(m.len());
                    let mut acc = FixedBitSet::with_capacity(m.len());
                    for y in r.ones() {
                        if !seen.put(left_class[y] as usize) {
                            acc.union_with(&left[y]);
                        }
                    }
                    acc
                })
                .collect();
            BruteIdeals { left, right, two_sided }
        }))
    }

    pub fn idempotent_partition_formula(&self) -> IdempotentPartition {
        let m = &self.monoid;
        let pick = |f: &dyn Fn(&Endomorphism) -> bool| m.elements().iter().filter(|a| f(a)).copied().collect();
        IdempotentPartition {
            identity: vec![Endomorphism::identity(self.degree())],
            e7: pick(&|a| matches!(a, Endomorphism::Sigma4 { g } if klein_representative(g).is_identity())),
            e3: pick(&|a| a.block() == Block::E3),
            e2: pick(&|a| a.block() == Block::E2),
            e1: pick(&|a| a.block() == Block::E1),
        }
    }

    /// `{α : α² = α}`, split by rank.
    pub fn idempotent_partition_brute(&self) -> IdempotentPartition {
        let idempotents: Vec<Endomorphism> =
            self.monoid.idempotents().into_iter().map(|a| *self.monoid.get(a)).collect();
        let of_rank = |r: u128| idempotents.iter().filter(|a| a.rank() == r).copied().collect();
        if self.degree() == 1 {
            // ε is the whole monoid, and has rank 1.
            return IdempotentPartition { identity: idempotents, e7: vec![], e3: vec![], e2: vec![], e1: vec![] };
        }
        let n = self.degree() as u32;
        IdempotentPartition {
            identity: of_rank((n as u128).pow(n)),
            e7: of_rank(7),
            e3: of_rank(3),
            e2: of_rank(2),
            e1: of_rank(1),
        }
    }

    /// `{α : αβα = α for some β}`.
    pub fn regular_brute(&self) -> Result<Vec<ElemId>> {
        self.table()?;
        let m = &self.monoid;
        Ok(m.ids().filter(|&a| m.ids().any(|b| m.mul(m.mul(a, b), a) == a)).collect())
    }

    /// Everything outside `A ∪ B ∪ C`.
    pub fn regular_formula(&self) -> Vec<ElemId> {
        self.monoid.ids().filter(|&a| !matches!(self.block(a), Block::A | Block::B | Block::C)).collect()
    }

    pub fn green_brute(&self, relation: Relation) -> Result<Partition> {
        let ideals = self.brute_ideals()?;
        let ids = self.monoid.ids();
        let by = |sets: &Vec<FixedBitSet>| Partition::by_key(ids.clone().map(|a| (a, &sets[a.index()])));
        let (l, r) = (by(&ideals.left), by(&ideals.right));
        Ok(match relation {
            Relation::L => l,
            Relation::R => r,
            Relation::H => l.meet(&r, self.len()),
            Relation::D => l.join(&r, self.len()),
            Relation::J => by(&ideals.two_sided),
            other => return Err(Error::invalid(format!("{other} is not one of L, R, H, D, J"))),
        })
    }

    pub fn green_formula(&self, relation: Relation) -> Result<Partition> {
        let ids = self.monoid.ids();
        Ok(match relation {
            // Aut is one class, D(4) splits by 4g, everything else is a singleton.
            Relation::L | Relation::H => Partition::by_key(ids.map(|a| {
                let key = match self.block(a) {
                    Block::Aut => (0, 0),
                    Block::D => (1, self.four_g(a).unwrap_or(0)),
                    _ => (2, a.index()),
                };
                (a, key)
            })),
            // Aut, D, E_3, E_2, E_1 are classes; A, B, C split into orbits.
            Relation::R | Relation::D | Relation::J => Partition::by_key(ids.map(|a| {
                let key = match self.block(a) {
                    Block::A | Block::B | Block::C => (self.block(a), self.orbits.orbit(a)),
                    b => (b, 0),
                };
                (a, key)
            })),
            other => return Err(Error::invalid(format!("{other} is not one of L, R, H, D, J"))),
        })
    }

    fn singular_without_d(&self) -> Vec<ElemId> {
        self.in_blocks(&[Block::E3, Block::A, Block::B, Block::E2, Block::C, Block::E1])
    }

    fn orbit_plus(&self, a: ElemId, extra: &[Block]) -> Vec<ElemId> {
        let mut out: Vec<ElemId> = self.orbits.members(self.orbits.orbit(a)).to_vec();
        out.extend(self.in_blocks(extra));
        out
    }

    pub fn left_ideal_formula(&self, a: ElemId) -> Vec<ElemId> {
        let m = &self.monoid;
        let mut out = match m.get(a) {
            Endomorphism::Aut { .. } => m.ids().collect(),
            Endomorphism::Phi(_) => {
                vec![a, self.star(a, StarOp::Plus), self.star(a, StarOp::Minus), self.star(a, StarOp::Zero)]
            }
            Endomorphism::Sigma4 { .. } => {
                let key = self.four_g(a);
                let mut out: Vec<ElemId> = m.ids_in(Block::D).into_iter().filter(|&b| self.four_g(b) == key).collect();
                out.extend(self.singular_without_d().into_iter().map(|phi| m.mul(phi, a)));
                out
            }
        };
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn right_ideal_formula(&self, a: ElemId) -> Vec<ElemId> {
        use Block::*;
        let mut out = match self.block(a) {
            Aut => self.monoid.ids().collect(),
            D => self.in_blocks(&[D, E3, A, B, E2, C, E1]),
            E3 => self.singular_without_d(),
            A => self.orbit_plus(a, &[E2, C, E1]),
            E2 => self.in_blocks(&[E2, C, E1]),
            B | C => self.orbit_plus(a, &[E1]),
            E1 => self.in_blocks(&[E1]),
        };
        out.sort_unstable();
        out
    }

    pub fn two_sided_ideal_formula(&self, a: ElemId) -> Vec<ElemId> {
        if self.block(a) != Block::B {
            return self.right_ideal_formula(a);
        }
        let plus = self.star(a, StarOp::Plus);
        let mut out = self.orbit_plus(a, &[Block::E1]);
        out.extend_from_slice(self.orbits.members(self.orbits.orbit(plus)));
        out.sort_unstable();
        out
    }

    pub fn principal_ideals_formula(&self, a: ElemId) -> PrincipalIdeals<ElemId> {
        PrincipalIdeals {
            left: self.left_ideal_formula(a),
            right: self.right_ideal_formula(a),
            two_sided: self.two_sided_ideal_formula(a),
        }
    }

    pub fn principal_ideals_brute(&self, a: ElemId) -> Result<PrincipalIdeals<ElemId>> {
        let ideals = self.brute_ideals()?;
        Ok(PrincipalIdeals {
            left: Self::ids_of(&ideals.left[a.index()]),
            right: Self::ids_of(&ideals.right[a.index()]),
            two_sided: Self::ids_of(&ideals.two_sided[a.index()]),
        })
    }

    /// `a ≤_J b` by cases on the block of `b`.
    pub fn j_leq_formula(&self, a: ElemId, b: ElemId) -> bool {
        use Block::*;
        let (x, y) = (self.block(a), self.block(b));
        let same_orbit = |c: ElemId| self.orbits.orbit(a) == self.orbits.orbit(c);
        match y {
            Aut => true,
            D => x != Aut,
            E3 => !matches!(x, Aut | D),
            A => same_orbit(b) || matches!(x, E2 | C | E1),
            E2 => matches!(x, E2 | C | E1),
            B => same_orbit(b) || same_orbit(self.star(b, StarOp::Plus)) || x == E1,
            C => same_orbit(b) || x == E1,
            E1 => x == E1,
        }
    }

    pub fn j_leq_brute(&self, a: ElemId, b: ElemId) -> Result<bool> {
        Ok(self.brute_ideals()?.two_sided[b.index()].contains(a.index()))
    }

    /// J-classes (formula side) ordered by their minimal element, with the covering
    /// pairs `(lower, upper)` of the J-order.
    pub fn j_order(&self) -> Result<(Partition, Vec<(usize, usize)>)> {
        let classes = self.green_formula(Relation::J)?;
        let reps: Vec<ElemId> = classes.classes().iter().map(|c| c[0]).collect();
        let k = reps.len();
        let below = |i: usize, j: usize| i != j && self.j_leq_formula(reps[i], reps[j]);
        let mut covers = Vec::new();
        for i in 0..k {
            for j in 0..k {
                if below(i, j) && !(0..k).any(|m| below(i, m) && below(m, j)) {
                    covers.push((i, j));
                }
            }
        }
        Ok((classes, covers))
    }

    pub fn j_order_dot(&self) -> Result<String> {
        let (classes, covers) = self.j_order()?;
        let mut graph: DiGraph<String, ()> = DiGraph::new();
        let nodes: Vec<NodeIndex> = classes
            .classes()
            .iter()
            .map(|c| graph.add_node(self.class_label(c)))
            .collect();
        for (lower, upper) in covers {
            graph.add_edge(nodes[upper], nodes[lower], ());
        }
        Ok(format!("{:?}", Dot::with_config(&graph, &[Config::EdgeNoLabel])))
    }

    /// `Aut`, `D`, `E3`, `E2`, `E1`, or `A[φ(..)]`-style labels naming an orbit by its representative.
    pub fn class_label(&self, class: &[ElemId]) -> String {
        let block = self.block(class[0]);
        match block {
            Block::A | Block::B | Block::C => format!("{block}[{}]", self.monoid.get(class[0])),
            _ if class.len() == 1 => format!("{block}[{}]", self.monoid.get(class[0])),
            _ => block.name().to_string(),
        }
    }
}
