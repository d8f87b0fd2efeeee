//! Elements of `End(T_n)` and their symbolic arithmetic.
//!
//! Every endomorphism is an automorphism `ψ_g` (conjugation by `g`), a map
//! `φ_{t,e}` indexed by a permissible pair, or, at degree 4 only, one of the
//! rank-7 maps `σ^g`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{ensure_capacity, ensure_same_degree, Error, Result};
use crate::pairs::{enumerate_p, is_permissible, PermissiblePair};
use crate::transformation::{enumerate_all, image_array, permutations, Parity, Transformation};

/// Largest degree accepted by [`enumerate_end`] and [`oracle_multiply`].
pub const MAX_END_DEGREE: usize = 6;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", try_from = "RawEndomorphism")]
pub enum Endomorphism {
    Aut {
        #[serde(with = "image_array")]
        g: Transformation,
    },
    Phi(PermissiblePair),
    Sigma4 {
        #[serde(with = "image_array")]
        g: Transformation,
    },
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum RawEndomorphism {
    Aut {
        #[serde(with = "image_array")]
        g: Transformation,
    },
    Phi(PermissiblePair),
    Sigma4 {
        #[serde(with = "image_array")]
        g: Transformation,
    },
}

impl TryFrom<RawEndomorphism> for Endomorphism {
    type Error = Error;

    fn try_from(raw: RawEndomorphism) -> Result<Self> {
        match raw {
            RawEndomorphism::Aut { g } => Endomorphism::aut(g),
            RawEndomorphism::Phi(p) => Ok(Endomorphism::phi(p)),
            RawEndomorphism::Sigma4 { g } => Endomorphism::sigma4(g),
        }
    }
}

/// Coarse classification by multiplicative behaviour.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TypeTag {
    Group,
    Exceptional,
    Odd,
    Even,
    NonPermutation,
    Trivial,
}

/// The rank-and-type blocks `Aut, D, E_3, A, B, E_2, C, E_1`, ordered from the top
/// of the J-order downwards. `φ_{id,id}` lives in `E1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Block {
    Aut,
    D,
    E3,
    A,
    B,
    E2,
    C,
    E1,
}

impl Block {
    pub const ALL: [Block; 8] =
        [Block::Aut, Block::D, Block::E3, Block::A, Block::B, Block::E2, Block::C, Block::E1];

    pub fn name(self) -> &'static str {
        match self {
            Block::Aut => "Aut",
            Block::D => "D",
            Block::E3 => "E3",
            Block::A => "A",
            Block::B => "B",
            Block::E2 => "E2",
            Block::C => "C",
            Block::E1 => "E1",
        }
    }

    pub fn is_singular(self) -> bool {
        self != Block::Aut
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StarOp {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
    #[serde(rename = "0")]
    Zero,
}

impl Endomorphism {
    pub fn aut(g: Transformation) -> Result<Self> {
        if !g.is_permutation() {
            return Err(Error::invalid(format!("ψ_g needs a permutation, got [{g}]")));
        }
        Ok(Endomorphism::Aut { g })
    }

    /// `φ_{t,e}`. At degree 1 this is the identity map, so it is returned as `ε`.
    pub fn phi(pair: PermissiblePair) -> Self {
        if pair.degree() == 1 {
            Endomorphism::identity(1)
        } else {
            Endomorphism::Phi(pair)
        }
    }

    pub fn phi_of(t: Transformation, e: Transformation) -> Result<Self> {
        PermissiblePair::new(t, e).map(Endomorphism::phi)
    }

    pub fn sigma4(g: Transformation) -> Result<Self> {
        if g.degree() != 4 || !g.is_permutation() {
            return Err(Error::invalid(format!("σ^g needs a permutation of degree 4, got [{g}]")));
        }
        Ok(Endomorphism::Sigma4 { g })
    }

    /// `ε = ψ_id`.
    pub fn identity(n: usize) -> Self {
        Endomorphism::Aut { g: Transformation::identity(n) }
    }

    /// `φ_{id,id}`; `ε` at degree 1.
    pub fn phi_id(n: usize) -> Self {
        let id = Transformation::identity(n);
        Endomorphism::phi(PermissiblePair::new_unchecked(id, id))
    }

    pub fn degree(&self) -> usize {
        match self {
            Endomorphism::Aut { g } | Endomorphism::Sigma4 { g } => g.degree(),
            Endomorphism::Phi(p) => p.degree(),
        }
    }

    pub fn pair(&self) -> Option<&PermissiblePair> {
        match self {
            Endomorphism::Phi(p) => Some(p),
            _ => None,
        }
    }

    pub fn is_automorphism(&self) -> bool {
        matches!(self, Endomorphism::Aut { .. })
    }

    pub fn apply(&self, s: &Transformation) -> Result<Transformation> {
        ensure_same_degree(self.degree(), s.degree())?;
        Ok(self.apply_unchecked(s))
    }

    pub(crate) fn apply_unchecked(&self, s: &Transformation) -> Transformation {
        match self {
            Endomorphism::Aut { g } => s.conjugate_by(g),
            Endomorphism::Phi(p) => match s.parity() {
                Parity::Odd => p.t,
                Parity::Even => p.t.square(),
                Parity::NotAPermutation => p.e,
            },
            Endomorphism::Sigma4 { g } => {
                if s.is_permutation() {
                    klein_representative(s).conjugate_by(g)
                } else {
                    Transformation::from_fn(4, |_| g.apply(3))
                }
            }
        }
    }

    /// Left-to-right product: `s(αβ) = (sα)β`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        ensure_same_degree(self.degree(), other.degree())?;
        Ok(self.mul(other))
    }

    pub(crate) fn mul(&self, other: &Self) -> Self {
        use Endomorphism::*;
        match (self, other) {
            (Aut { g }, Aut { g: h }) => Aut { g: g.then(h) },
            (Aut { .. } | Sigma4 { .. }, Phi(_)) => *other,
            (Phi(p), Aut { g }) => Phi(p.conjugate_by(g)),
            (Phi(p), Phi(q)) => Phi(phi_product(p, q)),
            (Sigma4 { g }, Sigma4 { g: h }) => Sigma4 { g: klein_representative(g).then(h) },
            (Sigma4 { g }, Aut { g: h }) => Sigma4 { g: g.then(h) },
            (Aut { g: h }, Sigma4 { g }) => Sigma4 { g: klein_representative(h).then(g) },
            (Phi(p), Sigma4 { .. }) => {
                let t = other.apply_unchecked(&p.t);
                let e = other.apply_unchecked(&p.e);
                Phi(PermissiblePair::new_unchecked(t, e))
            }
        }
    }

    /// Image cardinality: `n^n` for automorphisms, 7 for `σ^g`, `|{t, t², e}|` for `φ_{t,e}`.
    pub fn rank(&self) -> u128 {
        match self {
            Endomorphism::Aut { g } => (g.degree() as u128).pow(g.degree() as u32),
            Endomorphism::Sigma4 { .. } => 7,
            Endomorphism::Phi(p) => {
                let t2 = p.t.square();
                1 + (t2 != p.t) as u128 + (p.e != p.t && p.e != t2) as u128
            }
        }
    }

    pub fn block(&self) -> Block {
        match self {
            Endomorphism::Aut { .. } => Block::Aut,
            Endomorphism::Sigma4 { .. } => Block::D,
            Endomorphism::Phi(PermissiblePair { t, e }) => match t.parity() {
                Parity::Odd => Block::E3,
                Parity::Even if t.is_identity() => {
                    if e.is_identity() {
                        Block::E1
                    } else {
                        Block::E2
                    }
                }
                Parity::Even => Block::A,
                Parity::NotAPermutation if t == e => Block::E1,
                Parity::NotAPermutation if *t != t.square() => Block::B,
                Parity::NotAPermutation => Block::C,
            },
        }
    }

    pub fn type_tag(&self) -> TypeTag {
        match self.block() {
            Block::Aut => TypeTag::Group,
            Block::D => TypeTag::Exceptional,
            Block::E3 => TypeTag::Odd,
            Block::A | Block::E2 => TypeTag::Even,
            Block::E1 if self.is_phi_id() => TypeTag::Trivial,
            Block::B | Block::C | Block::E1 => TypeTag::NonPermutation,
        }
    }

    pub fn rank_and_type(&self) -> (u128, TypeTag) {
        (self.rank(), self.type_tag())
    }

    pub fn is_phi_id(&self) -> bool {
        matches!(self, Endomorphism::Phi(p) if p.t.is_identity() && p.e.is_identity())
    }

    pub fn is_idempotent(&self) -> bool {
        self.mul(self) == *self
    }

    /// `α⁺ = φ_{t²,e}`, `α⁻ = φ_{e,e}`, `α⁰ = φ_{t²,t²}` for singular `α = φ_{t,e}`.
    pub fn star_map(&self, op: StarOp) -> Result<Self> {
        let Endomorphism::Phi(p) = self else {
            return Err(Error::invalid(format!(
                "star maps are defined on maps φ_{{t,e}} only, got {} type",
                self.block()
            )));
        };
        let t2 = p.t.square();
        let (t, e) = match op {
            StarOp::Plus => (t2, p.e),
            StarOp::Minus => (p.e, p.e),
            StarOp::Zero => (t2, t2),
        };
        Ok(Endomorphism::Phi(PermissiblePair::new_unchecked(t, e)))
    }
}

fn phi_product(p: &PermissiblePair, q: &PermissiblePair) -> PermissiblePair {
    let (u2, f) = (q.t.square(), q.e);
    if p.e.is_identity() {
        return PermissiblePair::new_unchecked(u2, u2);
    }
    match p.t.parity() {
        Parity::Odd => *q,
        Parity::Even => PermissiblePair::new_unchecked(u2, f),
        Parity::NotAPermutation => PermissiblePair::new_unchecked(f, f),
    }
}

const KLEIN: [[u8; 4]; 4] = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]];

/// `p_s`: the element of the coset `Ks` that fixes 4, where `K` is the Klein four-group.
pub fn klein_representative(s: &Transformation) -> Transformation {
    debug_assert!(s.degree() == 4 && s.is_permutation());
    KLEIN
        .iter()
        .map(|k| Transformation::from_zero_based(k).expect("valid").then(s))
        .find(|ks| ks.apply(3) == 3)
        .expect("every coset of K meets the stabilizer of 4")
}

/// Checked version of [`klein_representative`].
pub fn p_s(s: &Transformation) -> Result<Transformation> {
    if s.degree() != 4 || !s.is_permutation() {
        return Err(Error::invalid("p_s needs a permutation of degree 4"));
    }
    Ok(klein_representative(s))
}

impl fmt::Display for Endomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endomorphism::Aut { g } => write!(f, "aut(g={})", comma_word(g)),
            Endomorphism::Phi(p) => write!(f, "phi(t={};e={})", comma_word(&p.t), comma_word(&p.e)),
            Endomorphism::Sigma4 { g } => write!(f, "sigma4(g={})", comma_word(g)),
        }
    }
}

impl fmt::Debug for Endomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub(crate) fn comma_word(t: &Transformation) -> String {
    t.images_one_based().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// All of `End(T_n)`: automorphisms, then maps `φ_{t,e}`, then (degree 4) `σ^g`.
pub fn enumerate_end(n: usize) -> Result<Vec<Endomorphism>> {
    ensure_capacity("enumerate_end", n, MAX_END_DEGREE)?;
    let mut out: Vec<Endomorphism> = permutations(n)?.map(|g| Endomorphism::Aut { g }).collect();
    if n > 1 {
        out.extend(enumerate_p(n)?.map(Endomorphism::Phi));
    }
    if n == 4 {
        out.extend(permutations(4)?.map(|g| Endomorphism::Sigma4 { g }));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct IdentifyOptions {
    /// Compare the candidate against the table on every point of `T_n`.
    pub check_all_points: bool,
    /// Check `(st)F = (sF)(tF)` for all pairs (quadratic in `n^n`).
    pub check_homomorphism: bool,
}

/// Recovers the symbolic form of a value map `F: T_n → T_n`.
///
/// Automorphisms are read off the images of the constants, `σ^g` from the images
/// of `(1 2)`, `(1 3)` and `c_1`, and `φ_{t,e}` as `t = (1 2)F`, `e = c_1 F`. The
/// candidate is always compared against `F` on a fixed probe set; the options add
/// exhaustive checks.
pub fn identify<F>(n: usize, f: F, opts: IdentifyOptions) -> Result<Endomorphism>
where
    F: Fn(&Transformation) -> Transformation,
{
    if !(1..=crate::transformation::MAX_DEGREE).contains(&n) {
        return Err(Error::invalid(format!("degree {n} out of range")));
    }
    let value = |s: &Transformation| -> Result<Transformation> {
        let v = f(s);
        if v.degree() != n {
            return Err(Error::NotAnEndomorphism(format!("image of [{s}] has degree {}", v.degree())));
        }
        Ok(v)
    };
    let candidate = if n == 1 {
        Endomorphism::identity(1)
    } else {
        let constant = |i: usize| Transformation::constant(n, i).expect("point in range");
        let tau12 = Transformation::transposition(n, 1, 2).expect("n ≥ 2");
        let v1 = value(&constant(1))?;
        let v2 = value(&constant(2))?;
        if v1 != v2 {
            let mut images = Vec::with_capacity(n);
            for i in 1..=n {
                let v = value(&constant(i))?;
                if v.rank() != 1 {
                    return Err(Error::NotAnEndomorphism(format!("c_{i} maps to the non-constant [{v}]")));
                }
                images.push(v.apply(0) + 1);
            }
            let g = Transformation::new(&images)?;
            Endomorphism::aut(g).map_err(|_| {
                Error::NotAnEndomorphism(format!("constants map to constants via the non-bijection [{g}]"))
            })?
        } else if n == 4 && value(&tau12)? != value(&Transformation::transposition(4, 1, 3)?)? {
            sigma_from_probes(&value(&tau12)?, &value(&Transformation::transposition(4, 1, 3)?)?, &v1)?
        } else {
            let t = value(&tau12)?;
            if !is_permissible(&t, &v1) {
                return Err(Error::NotAnEndomorphism(format!(
                    "probe values t=[{t}], e=[{v1}] do not form a permissible pair"
                )));
            }
            Endomorphism::Phi(PermissiblePair::new_unchecked(t, v1))
        }
    };

    let mismatch = |s: &Transformation, got: Transformation| {
        Error::NotAnEndomorphism(format!(
            "value at [{s}] is [{got}], but {candidate} gives [{}]",
            candidate.apply_unchecked(s)
        ))
    };
    for s in probe_set(n) {
        let v = value(&s)?;
        if v != candidate.apply_unchecked(&s) {
            return Err(mismatch(&s, v));
        }
    }
    if opts.check_all_points || opts.check_homomorphism {
        ensure_capacity("identify (exhaustive checks)", n, MAX_END_DEGREE)?;
        let table: Vec<(Transformation, Transformation)> =
            enumerate_all(n)?.map(|s| value(&s).map(|v| (s, v))).collect::<Result<_>>()?;
        if opts.check_all_points {
            for (s, v) in &table {
                if *v != candidate.apply_unchecked(s) {
                    return Err(mismatch(s, *v));
                }
            }
        }
        if opts.check_homomorphism {
            ensure_capacity("identify (homomorphism check)", n, 5)?;
            let images: Vec<Transformation> = table.iter().map(|(_, v)| *v).collect();
            for (s, vs) in &table {
                for (t, vt) in &table {
                    let st = s.then(t).lex_index();
                    if images[st] != vs.then(vt) {
                        return Err(Error::NotAnEndomorphism(format!(
                            "([{s}][{t}])F differs from ([{s}]F)([{t}]F)"
                        )));
                    }
                }
            }
        }
    }
    Ok(candidate)
}

fn sigma_from_probes(v12: &Transformation, v13: &Transformation, vc: &Transformation) -> Result<Endomorphism> {
    let moved = |t: &Transformation| -> Result<[usize; 2]> {
        let pts: Vec<usize> = (0..4).filter(|&i| t.apply(i) != i).collect();
        match pts.as_slice() {
            [a, b] if t.apply(*a) == *b => Ok([*a, *b]),
            _ => Err(Error::NotAnEndomorphism(format!("transposition maps to the non-transposition [{t}]"))),
        }
    };
    let (a, b) = (moved(v12)?, moved(v13)?);
    let one = *a
        .iter()
        .find(|x| b.contains(x))
        .ok_or_else(|| Error::NotAnEndomorphism("images of (1 2) and (1 3) are disjoint".into()))?;
    let two = if a[0] == one { a[1] } else { a[0] };
    let three = if b[0] == one { b[1] } else { b[0] };
    if vc.rank() != 1 {
        return Err(Error::NotAnEndomorphism(format!("c_1 maps to the non-constant [{vc}]")));
    }
    let four = vc.apply(0);
    let g = Transformation::from_zero_based(&[one as u8, two as u8, three as u8, four as u8])?;
    Endomorphism::sigma4(g).map_err(|_| Error::NotAnEndomorphism(format!("rank-7 probes give [{g}]")))
}

/// Cheap probes covering every case of the application rules.
fn probe_set(n: usize) -> Vec<Transformation> {
    let mut out = vec![Transformation::identity(n)];
    for i in 1..=n {
        out.push(Transformation::constant(n, i).expect("point in range"));
    }
    if n >= 2 {
        out.push(Transformation::transposition(n, 1, 2).expect("n ≥ 2"));
        let mut images: Vec<usize> = (1..=n).collect();
        images[1] = 1;
        out.push(Transformation::new(&images).expect("valid"));
    }
    if n >= 3 {
        out.push(Transformation::cycle(n, &[1, 2, 3]).expect("n ≥ 3"));
        out.push(Transformation::transposition(n, 1, 3).expect("n ≥ 3"));
        out.push(Transformation::cycle(n, &(1..=n).collect::<Vec<_>>()).expect("valid"));
    }
    out
}

/// `identify(s ↦ (sα)β)`: the product computed by composing value maps.
pub fn oracle_multiply(alpha: &Endomorphism, beta: &Endomorphism) -> Result<Endomorphism> {
    oracle_multiply_with(alpha, beta, IdentifyOptions::default())
}

pub fn oracle_multiply_with(
    alpha: &Endomorphism,
    beta: &Endomorphism,
    opts: IdentifyOptions,
) -> Result<Endomorphism> {
    ensure_same_degree(alpha.degree(), beta.degree())?;
    let n = alpha.degree();
    ensure_capacity("oracle_multiply", n, MAX_END_DEGREE)?;
    identify(n, |s| beta.apply_unchecked(&alpha.apply_unchecked(s)), opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(images: &[usize]) -> Transformation {
        Transformation::new(images).unwrap()
    }

    fn phi(a: &[usize], b: &[usize]) -> Endomorphism {
        Endomorphism::phi_of(t(a), t(b)).unwrap()
    }

    #[test]
    fn apply_examples() {
        let g = t(&[3, 1, 2, 5, 4]);
        let aut = Endomorphism::aut(g).unwrap();
        for i in 1..=5 {
            let ci = Transformation::constant(5, i).unwrap();
            let expected = Transformation::constant(5, g.apply(i - 1) + 1).unwrap();
            assert_eq!(aut.apply(&ci).unwrap(), expected);
        }
        let a = phi(&[1, 3, 2, 1, 5], &[1, 1, 1, 1, 1]);
        assert_eq!(a.apply(&t(&[1, 1, 2, 3, 4])).unwrap(), t(&[1, 1, 1, 1, 1]));
        let s = Endomorphism::sigma4(Transformation::identity(4)).unwrap();
        assert_eq!(s.apply(&t(&[2, 1, 4, 3])).unwrap(), Transformation::identity(4));
        assert!(s.apply(&Transformation::identity(3)).is_err());
    }

    #[test]
    fn rank_and_type_examples() {
        let q = phi(&[1, 3, 2, 4, 5], &[1, 1, 1, 1, 1]);
        assert_eq!(q.rank_and_type(), (3, TypeTag::Odd));
        let u = phi(&[1, 1, 1, 4, 4], &[1, 1, 1, 1, 1]);
        assert_eq!(u.rank_and_type(), (2, TypeTag::NonPermutation));
        assert_eq!(u.block(), Block::C);
        assert_eq!(Endomorphism::phi_id(5).rank_and_type(), (1, TypeTag::Trivial));
        let p = phi(&[2, 1, 4, 3, 5], &[5, 5, 5, 5, 5]);
        assert_eq!((p.rank(), p.block()), (3, Block::A));
        let b = phi(&[1, 3, 2, 1, 5], &[5, 5, 5, 5, 5]);
        assert_eq!((b.rank(), b.block()), (3, Block::B));
        assert_eq!(Endomorphism::identity(3).rank(), 27);
        assert_eq!(Endomorphism::sigma4(Transformation::identity(4)).unwrap().rank(), 7);
    }

    #[test]
    fn multiply_examples() {
        let g = t(&[2, 3, 1, 5, 4]);
        let a = phi(&[1, 3, 2, 1, 5], &[5, 5, 5, 5, 5]);
        let expected = Endomorphism::phi_of(t(&[1, 3, 2, 1, 5]).conjugate(&g).unwrap(), t(&[5; 5]).conjugate(&g).unwrap());
        assert_eq!(a.multiply(&Endomorphism::aut(g).unwrap()).unwrap(), expected.unwrap());

        let x = phi(&[1, 2], &[1, 1]);
        let y = phi(&[1, 2], &[2, 2]);
        assert_eq!(x.multiply(&y).unwrap(), y);

        for g in permutations(4).unwrap() {
            for h in permutations(4).unwrap() {
                let sg = Endomorphism::sigma4(g).unwrap();
                let sh = Endomorphism::sigma4(h).unwrap();
                let expected = Endomorphism::sigma4(klein_representative(&g).then(&h)).unwrap();
                assert_eq!(sg.multiply(&sh).unwrap(), expected);
            }
        }
        assert!(x.multiply(&Endomorphism::identity(3)).is_err());
    }

    #[test]
    fn star_map_examples() {
        let e = phi(&[1, 1, 1, 1, 1], &[1, 1, 1, 1, 1]);
        assert_eq!(e.star_map(StarOp::Plus).unwrap(), e);
        let b = phi(&[1, 3, 2, 1, 5], &[1, 1, 1, 1, 1]);
        assert_eq!(b.star_map(StarOp::Minus).unwrap(), e);
        let q = phi(&[1, 3, 2, 4, 5], &[1, 1, 1, 1, 1]);
        assert_eq!(q.star_map(StarOp::Zero).unwrap(), Endomorphism::phi_id(5));
        assert!(Endomorphism::identity(5).star_map(StarOp::Plus).is_err());
    }

    #[test]
    fn klein_representatives() {
        assert_eq!(klein_representative(&t(&[2, 1, 4, 3])), Transformation::identity(4));
        for s in permutations(4).unwrap() {
            let p = klein_representative(&s);
            assert_eq!(p.apply(3), 3);
            assert_eq!(klein_representative(&p), p);
        }
    }

    #[test]
    fn identify_round_trips() {
        let opts = IdentifyOptions { check_all_points: true, check_homomorphism: false };
        for a in enumerate_end(3).unwrap() {
            assert_eq!(identify(3, |s| a.apply_unchecked(s), opts).unwrap(), a);
        }
        for g in permutations(4).unwrap() {
            let s = Endomorphism::sigma4(g).unwrap();
            assert_eq!(identify(4, |x| s.apply_unchecked(x), opts).unwrap(), s);
        }
    }

    #[test]
    fn identify_rejects_non_endomorphisms() {
        let opts = IdentifyOptions { check_all_points: false, check_homomorphism: true };
        // s ↦ s² is not a homomorphism of T_3
        assert!(identify(3, |s| s.square(), opts).is_err());
        // the constant map to [1 3 2] fails the permissible-pair probe
        assert!(identify(3, |_| t(&[1, 3, 2]), IdentifyOptions::default()).is_err());
    }

    #[test]
    fn enumeration_sizes() {
        assert_eq!(enumerate_end(1).unwrap(), vec![Endomorphism::identity(1)]);
        assert_eq!(enumerate_end(2).unwrap().len(), 7);
        let e4 = enumerate_end(4).unwrap();
        let rank7: Vec<_> = e4.iter().filter(|a| a.rank() == 7).collect();
        assert_eq!(rank7.len(), 24);
        assert_eq!(rank7.iter().filter(|a| a.is_idempotent()).count(), 4);
    }

    #[test]
    fn json_forms() {
        let a = phi(&[1, 3, 2, 1, 5], &[5, 5, 5, 5, 5]);
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(json, r#"{"kind":"phi","t":[1,3,2,1,5],"e":[5,5,5,5,5]}"#);
        assert_eq!(serde_json::from_str::<Endomorphism>(&json).unwrap(), a);
        let g = Endomorphism::identity(3);
        assert_eq!(serde_json::to_string(&g).unwrap(), r#"{"kind":"aut","g":[1,2,3]}"#);
        let s = Endomorphism::sigma4(Transformation::identity(4)).unwrap();
        assert_eq!(serde_json::to_string(&s).unwrap(), r#"{"kind":"sigma4","g":[1,2,3,4]}"#);
        assert!(serde_json::from_str::<Endomorphism>(r#"{"kind":"sigma4","g":[1,2,3]}"#).is_err());
        assert!(serde_json::from_str::<Endomorphism>(r#"{"kind":"aut","g":[1,1,3]}"#).is_err());
    }
}
