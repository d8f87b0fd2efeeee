//! A monoid presentation of `End(T_n)` (degrees 5 and 6) over a minimal generating
//! set, and a rewriter that brings words to a normal form.
//!
//! The symmetric part uses the Coxeter generators `q:i-(i+1)` for `ψ_{(i i+1)}`,
//! so the automorphism letters form `n - 1` symbols rather than two. Every other
//! letter `p` stands for one representative `φ_{t,e}` of an essential orbit.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::endomorphism::{comma_word, Endomorphism, TypeTag};
use crate::error::{ensure_capacity, Error, Result};
use crate::generators::{essential_flags, minimal_generating_set_in, OrbitMap, MAX_ORBIT_DEGREE};
use crate::monoid::EndMonoid;
use crate::pairs::PermissiblePair;
use crate::transformation::{permutations, Transformation};

/// Number of rewrite steps after which [`Presentation::normal_form`] gives up.
pub const REWRITE_BUDGET: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    /// `q_i`, the adjacent transposition `(i i+1)`, 1-based.
    Q(u8),
    /// The `i`-th singular generator.
    P(u16),
}

pub type Word = Vec<Symbol>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    Coxeter,
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    R7,
    R8,
    R9,
    R10,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub family: Family,
    pub lhs: Word,
    pub rhs: Word,
}

/// Indices of the distinguished generators `p^od, p^ev, p^np, p^tr`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Markers {
    pub od: u16,
    pub ev: u16,
    pub np: u16,
    pub tr: u16,
}

/// One rewrite in a traced normal-form computation: the family used and the word
/// it produced.
#[derive(Debug, Clone)]
pub struct Step {
    pub family: Family,
    pub word: Word,
}

/// A non-essential product `p1 p2` expressed through the canonical pair of its orbit:
/// `p1 p2 · canon(g⁻¹) = u1 u2`, i.e. `θ(p1 p2) = θ(u1 u2) ψ_g`.
#[derive(Debug, Clone, Copy)]
struct R3Instance {
    canonical: (u16, u16),
    g: Transformation,
}

pub struct Presentation {
    n: usize,
    generators: Vec<Endomorphism>,
    by_pair: HashMap<PermissiblePair, u16>,
    markers: Markers,
    perms: Vec<Transformation>,
    fix: Vec<Vec<Transformation>>,
    monoid: EndMonoid,
    orbits: OrbitMap,
    essential: Vec<bool>,
    /// Canonical generator pair and its image, per non-essential orbit.
    canonical: HashMap<usize, (u16, u16)>,
    rules: Vec<Rule>,
}

/// The lexicographically least reduced word for `g` in the `q_i`.
pub fn canonical_word(g: &Transformation) -> Word {
    let mut images = g.images().to_vec();
    let mut out = Vec::new();
    while let Some(i) = (0..images.len().saturating_sub(1)).find(|&i| images[i] > images[i + 1]) {
        images.swap(i, i + 1);
        out.push(Symbol::Q(i as u8 + 1));
    }
    out
}

fn fix_of(p: &PermissiblePair, perms: &[Transformation]) -> Vec<Transformation> {
    perms.iter().filter(|g| p.conjugate_by(g) == *p).copied().collect()
}

fn phi_pair(a: &Endomorphism) -> Result<&PermissiblePair> {
    a.pair().ok_or_else(|| Error::Inconsistent(format!("{a} is not a singular map φ_(t,e)")))
}

impl Presentation {
    pub fn new(n: usize) -> Result<Self> {
        ensure_capacity("presentation", n, MAX_ORBIT_DEGREE)?;
        let monoid = EndMonoid::new(n)?;
        let gens = minimal_generating_set_in(&monoid)?;
        let orbits = OrbitMap::new(&monoid);
        let essential = essential_flags(&monoid, &orbits);
        let generators = gens.singular.clone();
        let perms: Vec<Transformation> = permutations(n)?.collect();
        let mut by_pair = HashMap::new();
        let mut fix = Vec::new();
        for (i, a) in generators.iter().enumerate() {
            let p = phi_pair(a)?;
            by_pair.insert(*p, i as u16);
            fix.push(fix_of(p, &perms));
        }
        let first = |pred: &dyn Fn(&Endomorphism) -> bool| {
            generators
                .iter()
                .position(pred)
                .map(|i| i as u16)
                .ok_or_else(|| Error::Inconsistent("missing a distinguished generator".into()))
        };
        let markers = Markers {
            od: first(&|a| a.type_tag() == TypeTag::Odd)?,
            ev: first(&|a| a.type_tag() == TypeTag::Even && a.rank() == 3)?,
            np: first(&|a| a.type_tag() == TypeTag::NonPermutation && a.rank() == 3)?,
            tr: first(&|a| a.is_phi_id())?,
        };
        let mut pres = Presentation {
            n,
            generators,
            by_pair,
            markers,
            perms,
            fix,
            monoid,
            orbits,
            essential,
            canonical: HashMap::new(),
            rules: Vec::new(),
        };
        pres.canonical = pres.canonical_pairs();
        pres.rules = pres.build_rules()?;
        Ok(pres)
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Endomorphism] {
        &self.generators
    }

    pub fn markers(&self) -> Markers {
        self.markers
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// All letters: the `q_i` in order, then the `p`'s in generator order.
    pub fn alphabet(&self) -> Vec<Symbol> {
        (1..self.n as u8)
            .map(Symbol::Q)
            .chain((0..self.generators.len() as u16).map(Symbol::P))
            .collect()
    }

    fn p_image(&self, i: u16) -> &Endomorphism {
        &self.generators[i as usize]
    }

    fn type_of(&self, i: u16) -> TypeTag {
        self.p_image(i).type_tag()
    }

    /// `θ(s)`.
    pub fn theta_symbol(&self, s: Symbol) -> Result<Endomorphism> {
        match s {
            Symbol::Q(i) if (1..self.n).contains(&(i as usize)) => {
                Endomorphism::aut(Transformation::transposition(self.n, i as usize, i as usize + 1)?)
            }
            Symbol::P(i) if (i as usize) < self.generators.len() => Ok(*self.p_image(i)),
            other => Err(Error::UnknownSymbol(format!("{other:?}"))),
        }
    }

    /// `θ(w)`, multiplying left to right; the empty word gives `ε`.
    pub fn theta_eval(&self, w: &[Symbol]) -> Result<Endomorphism> {
        w.iter().try_fold(Endomorphism::identity(self.n), |acc, &s| Ok(acc.mul(&self.theta_symbol(s)?)))
    }

    pub fn symbol_name(&self, s: Symbol) -> String {
        match s {
            Symbol::Q(i) => format!("q:{}-{}", i, i + 1),
            Symbol::P(i) => {
                let m = self.markers;
                match i {
                    _ if i == m.od => "p^od".into(),
                    _ if i == m.ev => "p^ev".into(),
                    _ if i == m.np => "p^np".into(),
                    _ if i == m.tr => "p^tr".into(),
                    _ => {
                        let p = self.p_image(i).pair().expect("generators are singular");
                        format!("p:t={};e={}", comma_word(&p.t), comma_word(&p.e))
                    }
                }
            }
        }
    }

    pub fn parse_symbol(&self, s: &str) -> Result<Symbol> {
        let unknown = || Error::UnknownSymbol(s.to_string());
        match s {
            "p^od" => return Ok(Symbol::P(self.markers.od)),
            "p^ev" => return Ok(Symbol::P(self.markers.ev)),
            "p^np" => return Ok(Symbol::P(self.markers.np)),
            "p^tr" => return Ok(Symbol::P(self.markers.tr)),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("q:") {
            let (a, b) = rest.split_once('-').ok_or_else(unknown)?;
            let (a, b): (usize, usize) = (a.parse().map_err(|_| unknown())?, b.parse().map_err(|_| unknown())?);
            if b == a + 1 && a >= 1 && b <= self.n {
                return Ok(Symbol::Q(a as u8));
            }
            return Err(unknown());
        }
        let rest = s.strip_prefix("p:t=").ok_or_else(unknown)?;
        let (t, e) = rest.split_once(";e=").ok_or_else(unknown)?;
        let parse = |x: &str| -> Result<Transformation> {
            let images = x.split(',').map(|v| v.trim().parse::<usize>()).collect::<std::result::Result<Vec<_>, _>>();
            Transformation::new(&images.map_err(|_| unknown())?)
        };
        let pair = PermissiblePair::new(parse(t)?, parse(e)?).map_err(|_| unknown())?;
        self.by_pair.get(&pair).map(|&i| Symbol::P(i)).ok_or_else(unknown)
    }

    /// Parses a whitespace-separated word.
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        s.split_whitespace().map(|tok| self.parse_symbol(tok)).collect()
    }

    pub fn format_word(&self, w: &[Symbol]) -> String {
        w.iter().map(|&s| self.symbol_name(s)).collect::<Vec<_>>().join(" ")
    }

    fn orbit_of(&self, a: &Endomorphism) -> Result<usize> {
        Ok(self.orbits.orbit(self.monoid.id_of(a)?))
    }

    /// For each non-essential orbit reached by a product of two generators, the
    /// lexicographically least such pair.
    fn canonical_pairs(&self) -> HashMap<usize, (u16, u16)> {
        let k = self.generators.len() as u16;
        let mut out = HashMap::new();
        for a in 0..k {
            for b in 0..k {
                let o = self.orbit_of(&self.p_image(a).mul(self.p_image(b))).expect("products are elements");
                if !self.essential[o] {
                    out.entry(o).or_insert((a, b));
                }
            }
        }
        out
    }

    fn r3_instance(&self, a: u16, b: u16) -> Result<Option<R3Instance>> {
        let product = self.p_image(a).mul(self.p_image(b));
        let o = self.orbit_of(&product)?;
        if self.essential[o] {
            return Ok(None);
        }
        let (u1, u2) = self.canonical[&o];
        let v0 = self.p_image(u1).mul(self.p_image(u2));
        let g = self
            .perms
            .iter()
            .find(|g| v0.mul(&Endomorphism::Aut { g: **g }) == product)
            .copied()
            .ok_or_else(|| Error::Inconsistent("orbit members differ by an automorphism".into()))?;
        Ok(Some(R3Instance { canonical: (u1, u2), g }))
    }

    fn fix_of_pair(&self, u1: u16, u2: u16) -> Result<Vec<Transformation>> {
        let v0 = self.p_image(u1).mul(self.p_image(u2));
        Ok(fix_of(phi_pair(&v0)?, &self.perms))
    }

    fn build_rules(&self) -> Result<Vec<Rule>> {
        use Symbol::{P, Q};
        let n = self.n as u8;
        let k = self.generators.len() as u16;
        let m = self.markers;
        let mut rules = Vec::new();
        let mut push = |family, lhs: Word, rhs: Word| rules.push(Rule { family, lhs, rhs });

        for i in 1..n {
            push(Family::Coxeter, vec![Q(i), Q(i)], vec![]);
            if i + 1 < n {
                push(Family::Coxeter, [Q(i), Q(i + 1)].repeat(3), vec![]);
            }
            for j in i + 2..n {
                push(Family::Coxeter, [Q(i), Q(j)].repeat(2), vec![]);
            }
        }
        for i in 1..n {
            for p in 0..k {
                push(Family::R1, vec![Q(i), P(p)], vec![P(p)]);
            }
        }
        for p in 0..k {
            for g in self.fix[p as usize].iter().filter(|g| !g.is_identity()) {
                let mut lhs = vec![P(p)];
                lhs.extend(canonical_word(g));
                push(Family::R2, lhs, vec![P(p)]);
            }
        }
        for a in 0..k {
            for b in 0..k {
                let Some(inst) = self.r3_instance(a, b)? else { continue };
                let (u1, u2) = inst.canonical;
                if (a, b) == (u1, u2) {
                    for f in self.fix_of_pair(u1, u2)?.iter().filter(|f| !f.is_identity()) {
                        let mut lhs = vec![P(a), P(b)];
                        lhs.extend(canonical_word(f));
                        push(Family::R3, lhs, vec![P(u1), P(u2)]);
                    }
                } else {
                    let mut lhs = vec![P(a), P(b)];
                    lhs.extend(canonical_word(&inst.g.inverse().expect("permutation")));
                    push(Family::R3, lhs, vec![P(u1), P(u2)]);
                }
            }
        }
        for a in 0..k {
            for a2 in (0..k).filter(|&a2| a2 != a && self.type_of(a2) == self.type_of(a)) {
                for x in 0..k {
                    push(Family::R4, vec![P(a), P(x)], vec![P(a2), P(x)]);
                }
            }
        }
        for p in 0..k {
            push(Family::R5, vec![P(m.od), P(p)], vec![P(p)]);
            if self.p_image(p).rank() == 2 {
                push(Family::R6, vec![P(m.ev), P(p)], vec![P(p)]);
            }
            push(Family::R7, vec![P(m.ev), P(m.ev), P(p)], vec![P(m.ev), P(p)]);
            push(Family::R8, vec![P(m.np), P(m.ev), P(p)], vec![P(m.np), P(p)]);
            push(Family::R8, vec![P(m.ev), P(m.np), P(p)], vec![P(m.np), P(p)]);
            push(Family::R8, vec![P(m.np), P(m.np), P(p)], vec![P(m.np), P(p)]);
        }
        push(Family::R9, vec![P(m.ev), P(m.tr)], vec![P(m.tr)]);
        push(Family::R9, vec![P(m.np), P(m.tr)], vec![P(m.tr)]);
        push(Family::R9, vec![P(m.tr), P(m.tr)], vec![P(m.tr)]);
        for p in 0..k {
            push(Family::R10, vec![P(m.tr), P(m.np), P(p)], vec![P(m.np), P(p)]);
            if matches!(self.type_of(p), TypeTag::Odd | TypeTag::Even) {
                push(Family::R10, vec![P(m.tr), P(p)], vec![P(m.tr)]);
            }
        }
        Ok(rules)
    }

    /// The first rule whose two sides have different images, if any.
    pub fn first_unsound_rule(&self) -> Result<Option<&Rule>> {
        for r in &self.rules {
            if self.theta_eval(&r.lhs)? != self.theta_eval(&r.rhs)? {
                return Ok(Some(r));
            }
        }
        Ok(None)
    }

    fn marker_of(&self, p: u16) -> u16 {
        match self.type_of(p) {
            TypeTag::Odd => self.markers.od,
            TypeTag::Even => self.markers.ev,
            TypeTag::NonPermutation => self.markers.np,
            _ => self.markers.tr,
        }
    }

    /// Normal form of `w`: a reduced word in the `q_i` when `w` has no `p`; otherwise
    /// `p q…q` or `p p q…q`, where the `p`-prefix is determined by the orbit of `θ(w)`
    /// and the `q`-suffix is the least reduced word of the least permutation in the
    /// relevant coset of `Fix`.
    pub fn normal_form(&self, w: &[Symbol]) -> Result<Word> {
        self.rewrite(w, None)
    }

    /// Like [`Presentation::normal_form`], also returning every intermediate word.
    pub fn normal_form_traced(&self, w: &[Symbol]) -> Result<(Word, Vec<Step>)> {
        let mut steps = Vec::new();
        let out = self.rewrite(w, Some(&mut steps))?;
        Ok((out, steps))
    }

    fn rewrite(&self, w: &[Symbol], mut trace: Option<&mut Vec<Step>>) -> Result<Word> {
        use Symbol::{P, Q};
        for &s in w {
            self.theta_symbol(s)?;
        }
        let mut w = w.to_vec();
        let mut count = 0usize;
        let mut step = |family: Family, w: &Word| -> Result<()> {
            count += 1;
            if count > REWRITE_BUDGET {
                return Err(Error::RewriteBudgetExceeded { budget: REWRITE_BUDGET });
            }
            if let Some(t) = trace.as_deref_mut() {
                t.push(Step { family, word: w.clone() });
            }
            Ok(())
        };
        let is_p = |s: &Symbol| matches!(s, P(_));
        let perm_of = |q: &[Symbol]| -> Result<Transformation> {
            match self.theta_eval(q)? {
                Endomorphism::Aut { g } => Ok(g),
                _ => Err(Error::Inconsistent("q-words evaluate to automorphisms".into())),
            }
        };

        if !w.iter().any(is_p) {
            let canon = canonical_word(&perm_of(&w)?);
            if canon != w {
                w = canon;
                step(Family::Coxeter, &w)?;
            }
            return Ok(w);
        }

        // R1: drop every q standing directly before a p.
        while let Some(i) = (0..w.len() - 1).find(|&i| !is_p(&w[i]) && is_p(&w[i + 1])) {
            w.remove(i);
            step(Family::R1, &w)?;
        }
        let k = |w: &Word| w.iter().take_while(|s| is_p(s)).count();
        let p_at = |w: &Word, i: usize| match w[i] {
            P(x) => x,
            Q(_) => unreachable!("prefix holds only p letters"),
        };
        let m = self.markers;

        // R4, R5: every non-final p becomes the marker of its type; odd markers vanish.
        let mut i = 0;
        while i + 1 < k(&w) {
            let p = p_at(&w, i);
            let marker = self.marker_of(p);
            if marker != p {
                w[i] = P(marker);
                step(Family::R4, &w)?;
            }
            if marker == m.od {
                w.remove(i);
                step(Family::R5, &w)?;
            } else {
                i += 1;
            }
        }

        // R7 to R10 on the leading triple until at most two p's remain.
        while k(&w) >= 3 {
            let (a, b) = (p_at(&w, 0), p_at(&w, 1));
            let (family, drop) = match (a, b) {
                _ if a == m.ev && b == m.ev => (Family::R7, 0),
                _ if a == m.np && b == m.ev => (Family::R8, 1),
                _ if a == m.ev && b == m.np => (Family::R8, 0),
                _ if a == m.np && b == m.np => (Family::R8, 0),
                _ if (a == m.ev || a == m.np || a == m.tr) && b == m.tr => (Family::R9, 0),
                _ if a == m.tr && b == m.np => (Family::R10, 0),
                _ if a == m.tr && b == m.ev => (Family::R10, 1),
                _ => return Err(Error::Inconsistent(format!("no rule reduces {}", self.format_word(&w[..3])))),
            };
            w.remove(drop);
            step(family, &w)?;
        }

        if k(&w) == 2 {
            let (a, b) = (p_at(&w, 0), p_at(&w, 1));
            let shortcut = match (a, b) {
                _ if a == m.ev && self.p_image(b).rank() == 2 => Some((Family::R6, 0)),
                _ if (a == m.ev || a == m.np || a == m.tr) && b == m.tr => Some((Family::R9, 0)),
                _ if a == m.tr && matches!(self.type_of(b), TypeTag::Odd | TypeTag::Even) => Some((Family::R10, 1)),
                _ => None,
            };
            if let Some((family, drop)) = shortcut {
                w.remove(drop);
                step(family, &w)?;
            } else {
                let inst = self.r3_instance(a, b)?.ok_or_else(|| {
                    Error::Inconsistent(format!("{} lies in an essential orbit", self.format_word(&w[..2])))
                })?;
                if (a, b) != inst.canonical {
                    // Insert canon(g⁻¹) canon(g), then apply R3 to the left half.
                    let inv = canonical_word(&inst.g.inverse().expect("permutation"));
                    let mut expanded = w[..2].to_vec();
                    expanded.extend(inv);
                    expanded.extend(canonical_word(&inst.g));
                    expanded.extend_from_slice(&w[2..]);
                    step(Family::Coxeter, &expanded)?;
                    let (u1, u2) = inst.canonical;
                    let mut next = vec![P(u1), P(u2)];
                    next.extend(canonical_word(&inst.g));
                    next.extend_from_slice(&w[2..]);
                    w = next;
                    step(Family::R3, &w)?;
                }
            }
        }

        // Reduce the q-suffix to the least representative of its Fix-coset.
        let head = k(&w);
        let (fix, family) = if head == 1 {
            (self.fix[p_at(&w, 0) as usize].clone(), Family::R2)
        } else {
            (self.fix_of_pair(p_at(&w, 0), p_at(&w, 1))?, Family::R3)
        };
        let h = perm_of(&w[head..])?;
        let best = fix.iter().map(|f| f.then(&h)).min().expect("Fix contains the identity");
        let mut canon = w[..head].to_vec();
        canon.extend(canonical_word(&best));
        if canon != w {
            // h = f·best with f ∈ Fix: rewrite the suffix as canon(f) canon(best)
            // and delete canon(f) with R2 or R3.
            let f = h.then(&best.inverse().expect("permutation"));
            if !f.is_identity() {
                let mut expanded = w[..head].to_vec();
                expanded.extend(canonical_word(&f));
                expanded.extend(canonical_word(&best));
                step(Family::Coxeter, &expanded)?;
                step(family, &canon)?;
            } else {
                step(Family::Coxeter, &canon)?;
            }
            w = canon;
        }
        Ok(w)
    }

    /// The shape of a normal form: `0` for a pure q-word, otherwise the number of
    /// leading p letters, or `None` if `w` is not of the form `p* q*` with at most two p's.
    pub fn shape(w: &[Symbol]) -> Option<usize> {
        let k = w.iter().take_while(|s| matches!(s, Symbol::P(_))).count();
        (k <= 2 && w[k..].iter().all(|s| matches!(s, Symbol::Q(_)))).then_some(k)
    }
}

/// The presentation for degree `n` (5 or 6).
pub fn presentation(n: usize) -> Result<Presentation> {
    Presentation::new(n)
}
