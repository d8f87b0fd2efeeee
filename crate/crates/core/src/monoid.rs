//! An interned copy of `End(T_n)` with dense element ids and an optional Cayley table.

use std::sync::OnceLock;

use rustc_hash::FxHashMap;

use crate::endomorphism::{enumerate_end, Block, Endomorphism};
use crate::error::{ensure_capacity, Error, Result};

/// Largest degree for which the full multiplication table is materialized.
pub const MAX_TABLE_DEGREE: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElemId(pub u32);

impl ElemId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// The elements of `End(T_n)` sorted by their derived order, so that comparing ids
/// compares elements.
///
/// The index is filled once at construction and is read-only afterwards; the
/// Cayley table is built lazily on first use.
pub struct EndMonoid {
    n: usize,
    elements: Vec<Endomorphism>,
    index: FxHashMap<Endomorphism, ElemId>,
    blocks: Vec<Block>,
    table: OnceLock<Vec<u32>>,
}

impl EndMonoid {
    pub fn new(n: usize) -> Result<Self> {
        let mut elements = enumerate_end(n)?;
        elements.sort();
        let index = elements.iter().enumerate().map(|(i, a)| (*a, ElemId(i as u32))).collect();
        let blocks = elements.iter().map(Endomorphism::block).collect();
        Ok(EndMonoid { n, elements, index, blocks, table: OnceLock::new() })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Endomorphism] {
        &self.elements
    }

    pub fn ids(&self) -> impl Iterator<Item = ElemId> + Clone {
        (0..self.elements.len() as u32).map(ElemId)
    }

    #[inline]
    pub fn get(&self, id: ElemId) -> &Endomorphism {
        &self.elements[id.index()]
    }

    #[inline]
    pub fn block(&self, id: ElemId) -> Block {
        self.blocks[id.index()]
    }

    pub fn id_of(&self, a: &Endomorphism) -> Result<ElemId> {
        self.index
            .get(a)
            .copied()
            .ok_or_else(|| Error::Inconsistent(format!("{a} is not an element of End(T_{})", self.n)))
    }

    pub fn identity(&self) -> ElemId {
        self.id_of(&Endomorphism::identity(self.n)).expect("ε is always present")
    }

    /// Builds the Cayley table now, failing above [`MAX_TABLE_DEGREE`].
    pub fn cayley_table(&self) -> Result<&[u32]> {
        ensure_capacity("cayley_table", self.n, MAX_TABLE_DEGREE)?;
        Ok(self.table.get_or_init(|| {
            let len = self.elements.len();
            let mut table = Vec::with_capacity(len * len);
            for a in &self.elements {
                for b in &self.elements {
                    table.push(self.index[&a.mul(b)].0);
                }
            }
            table
        }))
    }

    #[inline]
    pub fn mul(&self, a: ElemId, b: ElemId) -> ElemId {
        match self.table.get() {
            Some(table) => ElemId(table[a.index() * self.elements.len() + b.index()]),
            None => self.index[&self.get(a).mul(self.get(b))],
        }
    }

    pub fn ids_in(&self, block: Block) -> Vec<ElemId> {
        self.ids().filter(|&i| self.block(i) == block).collect()
    }

    pub fn idempotents(&self) -> Vec<ElemId> {
        self.ids().filter(|&i| self.mul(i, i) == i).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_and_sorting() {
        for (n, size) in [(1, 1), (2, 7), (3, 40), (4, 345)] {
            let m = EndMonoid::new(n).unwrap();
            assert_eq!(m.len(), size);
            assert!(m.elements().windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn table_agrees_with_symbolic_product() {
        let m = EndMonoid::new(3).unwrap();
        m.cayley_table().unwrap();
        for a in m.ids() {
            for b in m.ids() {
                assert_eq!(*m.get(m.mul(a, b)), m.get(a).mul(m.get(b)));
            }
        }
        assert_eq!(m.get(m.identity()), &Endomorphism::identity(3));
    }
}
