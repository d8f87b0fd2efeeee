use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::endomorphism::Endomorphism;
use crate::error::Error;
use crate::monoid::{ElemId, EndMonoid};

/// Green's relations and their starred and tilde variants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    L,
    R,
    H,
    D,
    J,
    #[serde(rename = "L*")]
    LStar,
    #[serde(rename = "R*")]
    RStar,
    #[serde(rename = "H*")]
    HStar,
    #[serde(rename = "D*")]
    DStar,
    #[serde(rename = "J*")]
    JStar,
    #[serde(rename = "L~")]
    LTilde,
    #[serde(rename = "R~")]
    RTilde,
    #[serde(rename = "H~")]
    HTilde,
    #[serde(rename = "D~")]
    DTilde,
    #[serde(rename = "J~")]
    JTilde,
}

impl Relation {
    pub const GREEN: [Relation; 5] = [Relation::L, Relation::R, Relation::H, Relation::D, Relation::J];
    pub const EXTENDED: [Relation; 10] = [
        Relation::RStar,
        Relation::LStar,
        Relation::HStar,
        Relation::DStar,
        Relation::JStar,
        Relation::RTilde,
        Relation::LTilde,
        Relation::HTilde,
        Relation::DTilde,
        Relation::JTilde,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Relation::L => "L",
            Relation::R => "R",
            Relation::H => "H",
            Relation::D => "D",
            Relation::J => "J",
            Relation::LStar => "L*",
            Relation::RStar => "R*",
            Relation::HStar => "H*",
            Relation::DStar => "D*",
            Relation::JStar => "J*",
            Relation::LTilde => "L~",
            Relation::RTilde => "R~",
            Relation::HTilde => "H~",
            Relation::DTilde => "D~",
            Relation::JTilde => "J~",
        }
    }

    pub fn is_green(self) -> bool {
        Relation::GREEN.contains(&self)
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Relation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Relation::GREEN
            .iter()
            .chain(&Relation::EXTENDED)
            .copied()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown relation {s:?}")))
    }
}

/// A partition of element ids in canonical form: every class sorted, classes
/// ordered by their minimal element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    classes: Vec<Vec<ElemId>>,
}

impl Partition {
    pub fn from_classes(mut classes: Vec<Vec<ElemId>>) -> Self {
        classes.retain(|c| !c.is_empty());
        for c in &mut classes {
            c.sort_unstable();
        }
        classes.sort_unstable_by_key(|c| c[0]);
        Partition { classes }
    }

    /// Groups ids by an arbitrary key.
    pub fn by_key<K, I>(items: I) -> Self
    where
        K: Hash + Eq,
        I: IntoIterator<Item = (ElemId, K)>,
    {
        let mut groups: HashMap<K, Vec<ElemId>> = HashMap::new();
        for (id, key) in items {
            groups.entry(key).or_default().push(id);
        }
        Partition::from_classes(groups.into_values().collect())
    }

    pub fn classes(&self) -> &[Vec<ElemId>] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Class number of every id, for a universe of `size` elements.
    pub fn labels(&self, size: usize) -> Vec<u32> {
        let mut out = vec![u32::MAX; size];
        for (k, c) in self.classes.iter().enumerate() {
            for a in c {
                out[a.index()] = k as u32;
            }
        }
        out
    }

    pub fn same_class(&self, size: usize) -> impl Fn(ElemId, ElemId) -> bool {
        let labels = self.labels(size);
        move |a, b| labels[a.index()] == labels[b.index()]
    }

    pub fn meet(&self, other: &Partition, size: usize) -> Partition {
        let (x, y) = (self.labels(size), other.labels(size));
        Partition::by_key((0..size).map(|i| (ElemId(i as u32), (x[i], y[i]))))
    }

    /// The smallest equivalence containing both partitions.
    pub fn join(&self, other: &Partition, size: usize) -> Partition {
        let mut uf = UnionFind::<usize>::new(size);
        for c in self.classes.iter().chain(&other.classes) {
            for w in c.windows(2) {
                uf.union(w[0].index(), w[1].index());
            }
        }
        let labels = uf.into_labeling();
        Partition::by_key(labels.into_iter().enumerate().map(|(i, l)| (ElemId(i as u32), l)))
    }

    /// Whether every class of `self` lies inside a class of `other`.
    pub fn refines(&self, other: &Partition, size: usize) -> bool {
        let labels = other.labels(size);
        self.classes.iter().all(|c| c.iter().all(|a| labels[a.index()] == labels[c[0].index()]))
    }

    pub fn covers(&self, size: usize) -> bool {
        self.classes.iter().map(Vec::len).sum::<usize>() == size && self.labels(size).iter().all(|&l| l != u32::MAX)
    }
}

/// A partition of `End(T_n)` into classes of endomorphisms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GreenPartition {
    pub relation: Relation,
    pub classes: Vec<Vec<Endomorphism>>,
}

impl GreenPartition {
    pub fn new(relation: Relation, m: &EndMonoid, p: &Partition) -> Self {
        let classes = p.classes().iter().map(|c| c.iter().map(|&a| *m.get(a)).collect()).collect();
        GreenPartition { relation, classes }
    }
}
