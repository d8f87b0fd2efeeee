//! Total transformations of `{1, …, n}`.
//!
//! A [`Transformation`] is stored as its image word. Points are 0-indexed
//! internally and 1-indexed in every textual or JSON form. Products are read
//! left to right: `s.then(t)` maps `x` to `(x s) t`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{ensure_capacity, ensure_same_degree, Error, Result};

/// Largest degree a [`Transformation`] can carry.
pub const MAX_DEGREE: usize = 16;

/// Largest degree accepted by [`enumerate_all`].
pub const MAX_ENUMERATION_DEGREE: usize = 7;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transformation {
    n: u8,
    images: [u8; MAX_DEGREE],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Parity {
    Even,
    Odd,
    NotAPermutation,
}

/// Summary of the membership predicates used throughout the crate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransformClass {
    pub rank: usize,
    pub is_permutation: bool,
    pub parity: Parity,
    pub is_idempotent: bool,
    /// 1-indexed.
    pub fixed_points: Vec<usize>,
}

impl Transformation {
    /// Builds a transformation from 1-indexed images.
    pub fn new(images: &[usize]) -> Result<Self> {
        let n = images.len();
        check_degree(n)?;
        let mut out = [0u8; MAX_DEGREE];
        for (slot, &x) in out.iter_mut().zip(images) {
            if x == 0 || x > n {
                return Err(Error::invalid(format!("image {x} outside 1..={n}")));
            }
            *slot = (x - 1) as u8;
        }
        Ok(Transformation { n: n as u8, images: out })
    }

    /// Builds a transformation from 0-indexed images.
    pub fn from_zero_based(images: &[u8]) -> Result<Self> {
        let n = images.len();
        check_degree(n)?;
        if let Some(&x) = images.iter().find(|&&x| x as usize >= n) {
            return Err(Error::invalid(format!("0-based image {x} outside 0..{n}")));
        }
        let mut out = [0u8; MAX_DEGREE];
        out[..n].copy_from_slice(images);
        Ok(Transformation { n: n as u8, images: out })
    }

    pub(crate) fn from_fn(n: usize, f: impl Fn(usize) -> usize) -> Self {
        debug_assert!(n <= MAX_DEGREE);
        let mut images = [0u8; MAX_DEGREE];
        for (i, slot) in images.iter_mut().enumerate().take(n) {
            let x = f(i);
            debug_assert!(x < n);
            *slot = x as u8;
        }
        Transformation { n: n as u8, images }
    }

    pub fn identity(n: usize) -> Self {
        assert!((1..=MAX_DEGREE).contains(&n), "degree {n} out of range");
        Self::from_fn(n, |i| i)
    }

    /// The constant map `c_point` (1-indexed point).
    pub fn constant(n: usize, point: usize) -> Result<Self> {
        check_degree(n)?;
        check_point(n, point)?;
        Ok(Self::from_fn(n, |_| point - 1))
    }

    /// The transposition `(a b)` (1-indexed points).
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        check_degree(n)?;
        check_point(n, a)?;
        check_point(n, b)?;
        if a == b {
            return Err(Error::invalid("transposition needs two distinct points"));
        }
        let (a, b) = (a - 1, b - 1);
        Ok(Self::from_fn(n, |i| if i == a { b } else if i == b { a } else { i }))
    }

    /// The cycle `(c_0 c_1 … c_k)` (1-indexed points).
    pub fn cycle(n: usize, points: &[usize]) -> Result<Self> {
        check_degree(n)?;
        let mut images: Vec<usize> = (0..n).collect();
        for (k, &p) in points.iter().enumerate() {
            check_point(n, p)?;
            if points[..k].contains(&p) {
                return Err(Error::invalid(format!("point {p} repeated in cycle")));
            }
            images[p - 1] = points[(k + 1) % points.len()] - 1;
        }
        Ok(Self::from_fn(n, |i| images[i]))
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.n as usize
    }

    /// 0-indexed image word.
    #[inline]
    pub fn images(&self) -> &[u8] {
        &self.images[..self.n as usize]
    }

    /// 0-indexed image of the 0-indexed point `i`.
    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images_one_based(&self) -> Vec<usize> {
        self.images().iter().map(|&x| x as usize + 1).collect()
    }

    /// Left-to-right product `self · other`, i.e. `x ↦ (x self) other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        ensure_same_degree(self.degree(), other.degree())?;
        Ok(self.then(other))
    }

    #[inline]
    pub(crate) fn then(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        let mut images = [0u8; MAX_DEGREE];
        for (slot, &x) in images.iter_mut().zip(self.images()) {
            *slot = other.images[x as usize];
        }
        Transformation { n: self.n, images }
    }

    #[inline]
    pub fn square(&self) -> Self {
        self.then(self)
    }

    pub fn rank(&self) -> usize {
        let mut seen = 0u32;
        for &x in self.images() {
            seen |= 1 << x;
        }
        seen.count_ones() as usize
    }

    pub fn is_permutation(&self) -> bool {
        self.rank() == self.degree()
    }

    pub fn is_identity(&self) -> bool {
        self.images().iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn is_idempotent(&self) -> bool {
        self.images().iter().all(|&x| self.images[x as usize] == x)
    }

    /// Parity from the cycle count: a permutation is even iff `n - #cycles` is even.
    pub fn parity(&self) -> Parity {
        if !self.is_permutation() {
            return Parity::NotAPermutation;
        }
        let n = self.degree();
        let mut seen = [false; MAX_DEGREE];
        let mut cycles = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.apply(x);
            }
        }
        if (n - cycles).is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// 1-indexed fixed points.
    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&i| self.apply(i) == i).map(|i| i + 1).collect()
    }

    pub fn classify(&self) -> TransformClass {
        let parity = self.parity();
        TransformClass {
            rank: self.rank(),
            is_permutation: parity != Parity::NotAPermutation,
            parity,
            is_idempotent: self.is_idempotent(),
            fixed_points: self.fixed_points(),
        }
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_permutation() {
            return None;
        }
        let mut images = [0u8; MAX_DEGREE];
        for (i, &x) in self.images().iter().enumerate() {
            images[x as usize] = i as u8;
        }
        Some(Transformation { n: self.n, images })
    }

    /// `self^g = g⁻¹ self g`; fails unless `g` is a permutation of the same degree.
    pub fn conjugate(&self, g: &Self) -> Result<Self> {
        ensure_same_degree(self.degree(), g.degree())?;
        if !g.is_permutation() {
            return Err(Error::invalid("conjugating element must be a permutation"));
        }
        Ok(self.conjugate_by(g))
    }

    /// Conjugation without the permutation check.
    #[inline]
    pub(crate) fn conjugate_by(&self, g: &Self) -> Self {
        // (i g) ↦ (i s) g
        let mut images = [0u8; MAX_DEGREE];
        for i in 0..self.degree() {
            images[g.images[i] as usize] = g.images[self.images[i] as usize];
        }
        Transformation { n: self.n, images }
    }

    /// Position of the image word in lexicographic order over `T_n`.
    pub fn lex_index(&self) -> usize {
        let n = self.degree();
        self.images().iter().fold(0usize, |acc, &x| acc * n + x as usize)
    }

    /// Inverse of [`Transformation::lex_index`].
    pub fn from_lex_index(n: usize, mut index: usize) -> Result<Self> {
        check_degree(n)?;
        let total = n.checked_pow(n as u32).ok_or_else(|| Error::invalid("degree too large to index"))?;
        if index >= total {
            return Err(Error::invalid(format!("index {index} outside 0..{total}")));
        }
        let mut images = [0u8; MAX_DEGREE];
        for slot in images[..n].iter_mut().rev() {
            *slot = (index % n) as u8;
            index /= n;
        }
        Ok(Transformation { n: n as u8, images })
    }

    /// The next image word in lexicographic order, if any.
    fn successor(&self) -> Option<Self> {
        let n = self.degree();
        let mut next = *self;
        for i in (0..n).rev() {
            if (next.images[i] as usize) + 1 < n {
                next.images[i] += 1;
                return Some(next);
            }
            next.images[i] = 0;
        }
        None
    }

    /// The next permutation in lexicographic order, if any.
    fn next_permutation(&self) -> Option<Self> {
        let n = self.degree();
        let mut next = *self;
        let w = &mut next.images[..n];
        let i = (1..n).rev().find(|&i| w[i - 1] < w[i])?;
        let j = (i..n).rev().find(|&j| w[j] > w[i - 1]).expect("pivot exists");
        w.swap(i - 1, j);
        w[i..].reverse();
        Some(next)
    }
}

fn check_degree(n: usize) -> Result<()> {
    if (1..=MAX_DEGREE).contains(&n) {
        Ok(())
    } else {
        Err(Error::invalid(format!("degree must lie in 1..={MAX_DEGREE}, got {n}")))
    }
}

fn check_point(n: usize, p: usize) -> Result<()> {
    if (1..=n).contains(&p) {
        Ok(())
    } else {
        Err(Error::invalid(format!("point {p} outside 1..={n}")))
    }
}

/// Composes two transformations left to right.
pub fn compose(s: &Transformation, t: &Transformation) -> Result<Transformation> {
    s.compose(t)
}

pub fn classify(t: &Transformation) -> TransformClass {
    t.classify()
}

pub fn conjugate(t: &Transformation, g: &Transformation) -> Result<Transformation> {
    t.conjugate(g)
}

/// All `n^n` transformations in lexicographic order of image words.
pub fn enumerate_all(n: usize) -> Result<impl Iterator<Item = Transformation>> {
    check_degree(n)?;
    ensure_capacity("enumerate_all", n, MAX_ENUMERATION_DEGREE)?;
    let first = Transformation::from_fn(n, |_| 0);
    Ok(std::iter::successors(Some(first), Transformation::successor))
}

/// All `n!` permutations in lexicographic order of image words.
pub fn permutations(n: usize) -> Result<impl Iterator<Item = Transformation>> {
    check_degree(n)?;
    ensure_capacity("permutations", n, 9)?;
    Ok(std::iter::successors(Some(Transformation::identity(n)), Transformation::next_permutation))
}

impl fmt::Display for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &x) in self.images().iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", x as usize + 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl FromStr for Transformation {
    type Err = Error;

    /// Parses space-separated 1-indexed images, e.g. `"1 3 2 1 2"`.
    fn from_str(s: &str) -> Result<Self> {
        let images = s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|tok| !tok.is_empty())
            .map(|tok| tok.parse::<usize>().map_err(|e| Error::Parse(format!("`{tok}`: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Transformation::new(&images)
    }
}

#[derive(Serialize, Deserialize)]
struct TransformationRepr {
    n: usize,
    images: Vec<usize>,
}

impl Serialize for Transformation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        TransformationRepr { n: self.degree(), images: self.images_one_based() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Transformation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = TransformationRepr::deserialize(deserializer)?;
        if repr.n != repr.images.len() {
            return Err(serde::de::Error::custom(format!(
                "n = {} but {} images given",
                repr.n,
                repr.images.len()
            )));
        }
        Transformation::new(&repr.images).map_err(serde::de::Error::custom)
    }
}

/// Serde helper for fields that hold a bare 1-indexed image array.
pub(crate) mod image_array {
    use super::Transformation;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(t: &Transformation, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(t.images_one_based())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Transformation, D::Error> {
        let images = Vec::<usize>::deserialize(d)?;
        Transformation::new(&images).map_err(serde::de::Error::custom)
    }
}
