//! The sets `U_n` and `P_n` that parameterize singular endomorphisms.
//!
//! A pair `(t, e)` is permissible when `t³ = t` and `te = et = e² = e`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{ensure_capacity, Error, Result};
use crate::transformation::{enumerate_all, image_array, Transformation};

/// Largest degree accepted by [`enumerate_p`].
pub const MAX_PAIR_DEGREE: usize = 6;

/// Partition of the points of some `t` with `t³ = t`. All sets are 1-indexed and sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UDecomposition {
    /// Fixed points.
    pub j: Vec<usize>,
    /// Points sent to a fixed point.
    pub k: Vec<usize>,
    /// The smaller point of each fixed-point-free 2-cycle.
    pub i: Vec<usize>,
    /// The partners of `i`, in matching order.
    pub it: Vec<usize>,
    /// Points sent into a 2-cycle.
    pub m: Vec<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawPair")]
pub struct PermissiblePair {
    #[serde(with = "image_array")]
    pub t: Transformation,
    #[serde(with = "image_array")]
    pub e: Transformation,
}

#[derive(Deserialize)]
struct RawPair {
    #[serde(with = "image_array")]
    t: Transformation,
    #[serde(with = "image_array")]
    e: Transformation,
}

impl TryFrom<RawPair> for PermissiblePair {
    type Error = Error;

    fn try_from(raw: RawPair) -> Result<Self> {
        PermissiblePair::new(raw.t, raw.e)
    }
}

impl PermissiblePair {
    /// Validates the defining identities.
    pub fn new(t: Transformation, e: Transformation) -> Result<Self> {
        if t.degree() != e.degree() {
            return Err(Error::DegreeMismatch { left: t.degree(), right: e.degree() });
        }
        if !is_permissible(&t, &e) {
            return Err(Error::invalid(format!("({t}) / ({e}) is not a permissible pair")));
        }
        Ok(PermissiblePair { t, e })
    }

    pub(crate) fn new_unchecked(t: Transformation, e: Transformation) -> Self {
        debug_assert!(is_permissible(&t, &e), "not permissible: {t} / {e}");
        PermissiblePair { t, e }
    }

    pub fn degree(&self) -> usize {
        self.t.degree()
    }

    /// `(t^g, e^g)`; `g` must be a permutation.
    pub fn conjugate_by(&self, g: &Transformation) -> Self {
        PermissiblePair { t: self.t.conjugate_by(g), e: self.e.conjugate_by(g) }
    }
}

impl fmt::Debug for PermissiblePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(t={:?}, e={:?})", self.t, self.e)
    }
}

/// `t³ = t` and `te = et = e² = e`.
pub fn is_permissible(t: &Transformation, e: &Transformation) -> bool {
    t.degree() == e.degree()
        && t.square().then(t) == *t
        && t.then(e) == *e
        && e.then(t) == *e
        && e.is_idempotent()
}

/// `t³ = t` and `t` has a fixed point.
pub fn is_in_u(t: &Transformation) -> bool {
    t.square().then(t) == *t && (0..t.degree()).any(|i| t.apply(i) == i)
}

pub fn decompose(t: &Transformation) -> Result<UDecomposition> {
    if t.square().then(t) != *t {
        return Err(Error::invalid(format!("t = [{t}] does not satisfy t³ = t")));
    }
    let mut d = UDecomposition { j: vec![], k: vec![], i: vec![], it: vec![], m: vec![] };
    for x in 0..t.degree() {
        let xt = t.apply(x);
        let xtt = t.apply(xt);
        if xt == x {
            d.j.push(x + 1);
        } else if xtt == xt {
            d.k.push(x + 1);
        } else if xtt == x {
            if x < xt {
                d.i.push(x + 1);
                d.it.push(xt + 1);
            }
        } else {
            d.m.push(x + 1);
        }
    }
    Ok(d)
}

fn require_u(t: &Transformation) -> Result<UDecomposition> {
    let d = decompose(t)?;
    if d.j.is_empty() {
        return Err(Error::invalid(format!("t = [{t}] has no fixed point, so it is not in U_n")));
    }
    Ok(d)
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `Σ_{r=1}^{|J|} C(|J|, r) · r^{|I|+|J|−r}`.
pub fn count_pairs_for(t: &Transformation) -> Result<u128> {
    let d = require_u(t)?;
    let (j, i) = (d.j.len() as u128, d.i.len() as u128);
    Ok((1..=j).map(|r| binomial(j, r) * r.pow((i + j - r) as u32)).sum())
}

/// Every `e` with `(t, e) ∈ P_n`, each exactly once.
///
/// The retract set `R ⊆ J` runs over non-empty subsets in lexicographic order of
/// their sorted point lists; for each `R` the map `f: (J∖R) ∪ I → R` runs in
/// odometer order (last coordinate fastest).
pub fn enumerate_pairs_for(t: &Transformation) -> Result<impl Iterator<Item = PermissiblePair>> {
    let d = require_u(t)?;
    let t = *t;
    let j: Vec<usize> = d.j.iter().map(|x| x - 1).collect();
    let mut subsets: Vec<Vec<usize>> = (1u32..1 << j.len())
        .map(|mask| j.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &x)| x).collect())
        .collect();
    subsets.sort();
    Ok(subsets.into_iter().flat_map(move |r| {
        let domain: Vec<usize> = j
            .iter()
            .copied()
            .filter(|x| !r.contains(x))
            .chain(d.i.iter().map(|x| x - 1))
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        Odometer::new(domain.len(), r.len()).map(move |digits| {
            let e = extend(&t, &r, &domain, &digits);
            PermissiblePair::new_unchecked(t, e)
        })
    }))
}

/// Extends `f` (given by `digits` into `r`) from `(J∖R) ∪ I` to the whole domain.
fn extend(t: &Transformation, r: &[usize], domain: &[usize], digits: &[usize]) -> Transformation {
    let n = t.degree();
    let mut e: Vec<Option<usize>> = vec![None; n];
    for &x in r {
        e[x] = Some(x);
    }
    for (&x, &dg) in domain.iter().zip(digits) {
        e[x] = Some(r[dg]);
    }
    // K and It map to already assigned points, M maps into It ∪ I; two passes suffice.
    for _ in 0..2 {
        for x in 0..n {
            if e[x].is_none() {
                e[x] = e[t.apply(x)];
            }
        }
    }
    Transformation::from_fn(n, |x| e[x].expect("extension covers every point"))
}

/// All tuples in `0..base` of the given length, last coordinate fastest.
struct Odometer {
    digits: Vec<usize>,
    base: usize,
    done: bool,
}

impl Odometer {
    fn new(len: usize, base: usize) -> Self {
        Odometer { digits: vec![0; len], base, done: base == 0 && len > 0 }
    }
}

impl Iterator for Odometer {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.digits.clone();
        self.done = true;
        for d in self.digits.iter_mut().rev() {
            *d += 1;
            if *d < self.base {
                self.done = false;
                break;
            }
            *d = 0;
        }
        Some(out)
    }
}

/// All of `P_n`, grouped by `t` in lexicographic order.
pub fn enumerate_p(n: usize) -> Result<impl Iterator<Item = PermissiblePair>> {
    ensure_capacity("enumerate_p", n, MAX_PAIR_DEGREE)?;
    Ok(enumerate_all(n)?
        .filter(is_in_u)
        .flat_map(|t| enumerate_pairs_for(&t).expect("t is in U_n")))
}
