//! Acceptance run: one line per criterion, nonzero exit if any fails.
//!
//! Values on the right-hand side of each comparison are computed here from the
//! definitions (Cayley table, composition, brute-force search), not taken from
//! the library's own formula code.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::time::Instant;

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use endtn::generators::essential_orbits;
use endtn::presentation::{Presentation, REWRITE_BUDGET};
use endtn::structure::Partition;
use endtn::verify::{multiplication_exhaustive, multiplication_sampled};
use endtn::{
    count_pairs_for, enumerate_all, enumerate_end, enumerate_pairs_for, extended_partition, fix_set, green_partition,
    idempotent_partition, is_in_u, minimal_generating_set, oracle_multiply, orbits, permutations, regular_elements,
    verify_generates, Block, ElemId, EndMonoid, Endomorphism, Error, IdentifyOptions, PermissiblePair, Relation, Symbol,
    Transformation, Universe,
};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn lib<T>(r: Result<T, Error>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn tr(images: &[usize]) -> Transformation {
    Transformation::new(images).unwrap()
}

/// Classes as sorted lists of element indices, in canonical order.
fn canon(classes: impl IntoIterator<Item = Vec<u32>>) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = classes
        .into_iter()
        .map(|mut c| {
            c.sort_unstable();
            c
        })
        .collect();
    out.sort();
    out
}

fn group_by<K: std::hash::Hash + Eq>(len: usize, key: impl Fn(usize) -> K) -> Vec<Vec<u32>> {
    let mut map: HashMap<K, Vec<u32>> = HashMap::new();
    for i in 0..len {
        map.entry(key(i)).or_default().push(i as u32);
    }
    canon(map.into_values())
}

fn of_endos(m: &EndMonoid, classes: &[Vec<Endomorphism>]) -> Vec<Vec<u32>> {
    canon(classes.iter().map(|c| c.iter().map(|a| m.id_of(a).unwrap().0).collect()))
}

fn of_partition(p: &Partition) -> Vec<Vec<u32>> {
    canon(p.classes().iter().map(|c| c.iter().map(|a| a.0).collect()))
}

/// Every class of `fine` lies inside a class of `coarse`.
fn refines(fine: &[Vec<u32>], coarse: &[Vec<u32>]) -> bool {
    let mut label = HashMap::new();
    for (i, c) in coarse.iter().enumerate() {
        for &a in c {
            label.insert(a, i);
        }
    }
    fine.iter().all(|c| c.iter().all(|a| label[a] == label[&c[0]]))
}

/// Principal one- and two-sided ideals from the Cayley table.
struct Ideals {
    left: Vec<FixedBitSet>,
    right: Vec<FixedBitSet>,
    two: Vec<FixedBitSet>,
}

fn principal_ideals(m: &EndMonoid) -> Ideals {
    let len = m.len();
    let ids: Vec<ElemId> = m.ids().collect();
    let left: Vec<FixedBitSet> = ids
        .par_iter()
        .map(|&a| {
            let mut s = FixedBitSet::with_capacity(len);
            for &x in &ids {
                s.insert(m.mul(x, a).index());
            }
            s
        })
        .collect();
    let right: Vec<FixedBitSet> = ids
        .par_iter()
        .map(|&a| {
            let mut s = FixedBitSet::with_capacity(len);
            for &x in &ids {
                s.insert(m.mul(a, x).index());
            }
            s
        })
        .collect();
    let two = (0..len)
        .into_par_iter()
        .map(|a| {
            let mut s = FixedBitSet::with_capacity(len);
            for b in left[a].ones() {
                s.union_with(&right[b]);
            }
            s
        })
        .collect();
    Ideals { left, right, two }
}

fn criterion_1() -> Outcome {
    let all_points = IdentifyOptions { check_all_points: true, ..Default::default() };
    let mut total = 0;
    for n in 2..=4 {
        let r = lib(multiplication_exhaustive(n, all_points))?;
        if let Some(x) = &r.mismatch {
            return Err(format!("n={n}: {} * {}: symbolic {}, oracle {}", x.alpha, x.beta, x.symbolic, x.oracle));
        }
        total += r.pairs;
    }
    let r = lib(multiplication_sampled(5, 1_000_000, 0, IdentifyOptions::default()))?;
    if let Some(x) = &r.mismatch {
        return Err(format!("n=5: {} * {}: symbolic {}, oracle {}", x.alpha, x.beta, x.symbolic, x.oracle));
    }
    Ok(format!("{total} exhaustive pairs at n=2..4, {} sampled pairs at n=5", r.pairs))
}

fn permissible_by_definition(t: &Transformation, e: &Transformation) -> bool {
    let te = t.compose(e).unwrap();
    let et = e.compose(t).unwrap();
    te == *e && et == *e && e.compose(e).unwrap() == *e
}

fn criterion_2() -> Outcome {
    let mut checked = 0;
    for n in 1..=6 {
        let all: Vec<Transformation> = lib(enumerate_all(n))?.collect();
        let cubes: Vec<&Transformation> = all.iter().filter(|t| t.compose(&t.square()).unwrap() == **t).collect();
        let in_u: Vec<&Transformation> = cubes.iter().copied().filter(|t| !t.fixed_points().is_empty()).collect();
        ensure!(in_u == all.iter().filter(|t| is_in_u(t)).collect::<Vec<_>>(), "n={n}: is_in_u disagrees");
        // Without a fixed point there is no e at all.
        let stray = cubes.iter().find(|t| t.fixed_points().is_empty() && all.iter().any(|e| permissible_by_definition(t, e)));
        ensure!(stray.is_none(), "n={n}: t = {} has no fixed point but admits some e", stray.unwrap());
        let bad = in_u.par_iter().find_map_first(|t| {
            let formula = count_pairs_for(t).unwrap();
            let listed: Vec<PermissiblePair> = enumerate_pairs_for(t).unwrap().collect();
            let distinct = listed.iter().collect::<HashSet<_>>().len();
            let brute = all.iter().filter(|e| permissible_by_definition(t, e)).count() as u128;
            let valid = listed.iter().all(|p| p.t == **t && permissible_by_definition(t, &p.e));
            (formula != listed.len() as u128 || formula != brute || distinct != listed.len() || !valid)
                .then(|| format!("t={t}: formula {formula}, enumeration {}, brute force {brute}", listed.len()))
        });
        if let Some(b) = bad {
            return Err(format!("n={n}: {b}"));
        }
        checked += in_u.len();
    }
    Ok(format!("{checked} transformations t in U_n, n=1..6"))
}

fn criterion_3() -> Outcome {
    for n in 1..=6 {
        let end = lib(enumerate_end(n))?;
        let aut = end.iter().filter(|a| a.is_automorphism()).count();
        ensure!(aut == factorial(n), "n={n}: |Aut| = {aut}");
    }
    for n in 1..=4 {
        let perms: Vec<Transformation> = lib(permutations(n))?.collect();
        for g in &perms {
            for h in &perms {
                let (pg, ph) = (Endomorphism::aut(*g).unwrap(), Endomorphism::aut(*h).unwrap());
                let expected = Endomorphism::aut(g.compose(h).unwrap()).unwrap();
                ensure!(pg.multiply(&ph).unwrap() == expected, "n={n}: ψ_{g} ψ_{h} ≠ ψ_gh");
                ensure!(oracle_multiply(&pg, &ph).unwrap() == expected, "n={n}: oracle ψ_{g} ψ_{h} ≠ ψ_gh");
            }
        }
    }
    for n in 2..=6 {
        let p = lib(idempotent_partition(n))?;
        let in_tn = lib(enumerate_all(n))?.filter(|t| t.square() == *t).count();
        ensure!(
            p.e1.len() == p.e2.len() + 1 && p.e1.len() == in_tn,
            "n={n}: |E1| = {}, |E2| = {}, idempotents of T_n = {in_tn}",
            p.e1.len(),
            p.e2.len()
        );
    }
    let end4 = lib(enumerate_end(4))?;
    let rank7: Vec<&Endomorphism> = end4.iter().filter(|a| matches!(a, Endomorphism::Sigma4 { .. })).collect();
    let idem = rank7.iter().filter(|a| oracle_multiply(a, a).unwrap() == ***a).count();
    ensure!(rank7.len() == 24 && rank7.iter().all(|a| a.rank() == 7), "n=4: {} rank-7 elements", rank7.len());
    ensure!(idem == 4, "n=4: {idem} rank-7 idempotents");
    Ok("|Aut| = n! (n ≤ 6), ψ_g ψ_h = ψ_gh (n ≤ 4), |E1| = |E2| + 1 (2 ≤ n ≤ 6), 24 rank-7 maps with 4 idempotents".into())
}

fn criterion_4() -> Outcome {
    let mut pairs = 0u64;
    for n in 1..=5 {
        let m = lib(EndMonoid::new(n))?;
        lib(m.cayley_table())?;
        let p = lib(idempotent_partition(n))?;
        // Bottom of the chain first.
        let layers: Vec<Vec<ElemId>> = p
            .chain()
            .into_iter()
            .filter(|l| !l.is_empty())
            .map(|l| l.iter().map(|a| m.id_of(a).unwrap()).collect())
            .collect();
        let mut layer_of = HashMap::new();
        for (i, l) in layers.iter().enumerate() {
            for &a in l {
                layer_of.insert(a, i);
            }
        }
        let brute: BTreeSet<ElemId> = m.ids().filter(|&a| m.mul(a, a) == a).collect();
        ensure!(brute == layer_of.keys().copied().collect(), "n={n}: idempotent layers miss idempotents");
        for &x in &brute {
            for &y in &brute {
                pairs += 1;
                let xy = m.mul(x, y);
                ensure!(brute.contains(&xy), "n={n}: product of idempotents is not idempotent");
                ensure!(m.mul(xy, x) == m.mul(y, x), "n={n}: xyx ≠ yx");
                let (lx, ly) = (layer_of[&x], layer_of[&y]);
                if lx == ly {
                    ensure!(xy == y, "n={n}: layer {lx} is not right zero");
                } else {
                    let low = lx.min(ly);
                    ensure!(layer_of[&xy] == low && layer_of[&m.mul(y, x)] == low, "n={n}: layers are not a chain");
                }
            }
        }
    }
    Ok(format!("{pairs} idempotent pairs at n=1..5"))
}

fn regular_by_search(m: &EndMonoid) -> Vec<ElemId> {
    let ids: Vec<ElemId> = m.ids().collect();
    ids.par_iter().copied().filter(|&a| ids.iter().any(|&x| m.mul(m.mul(a, x), a) == a)).collect()
}

fn criterion_5() -> Outcome {
    let mut regular_degrees = Vec::new();
    for n in 1..=5 {
        let m = lib(EndMonoid::new(n))?;
        lib(m.cayley_table())?;
        let reg = regular_by_search(&m);
        let from_lib: Vec<ElemId> = lib(regular_elements(n))?.iter().map(|a| m.id_of(a).unwrap()).collect();
        ensure!(reg == from_lib, "n={n}: regular_elements differs from search");
        if reg.len() == m.len() {
            regular_degrees.push(n);
        }
        if n == 5 {
            let expected: Vec<ElemId> = m.ids().filter(|&a| m.get(a).is_automorphism() || m.mul(a, a) == a).collect();
            ensure!(reg == expected, "n=5: regular set is not Aut ∪ E");
        }
    }
    ensure!(regular_degrees == [1, 2], "regular for n in {regular_degrees:?}");
    Ok("regular set = Aut ∪ E at n=5, regular exactly for n ∈ {1, 2}".into())
}

fn criterion_6() -> Outcome {
    for n in 3..=5 {
        let m = lib(EndMonoid::new(n))?;
        lib(m.cayley_table())?;
        let len = m.len();
        let id = principal_ideals(&m);
        let l = group_by(len, |a| id.left[a].clone());
        let r = group_by(len, |a| id.right[a].clone());
        let h = group_by(len, |a| (id.left[a].clone(), id.right[a].clone()));
        let j = group_by(len, |a| id.two[a].clone());
        let get = |rel| lib(green_partition(n, rel)).map(|p| of_endos(&m, &p.classes));
        let (fl, fr, fh, fd, fj) =
            (get(Relation::L)?, get(Relation::R)?, get(Relation::H)?, get(Relation::D)?, get(Relation::J)?);
        ensure!(fl == l, "n={n}: L differs from principal left ideals");
        ensure!(fr == r, "n={n}: R differs from principal right ideals");
        ensure!(fh == h, "n={n}: H differs");
        ensure!(fj == j, "n={n}: J differs from principal two-sided ideals");
        // D = L ∘ R, computed from the classes above.
        let d = {
            let r_of: HashMap<u32, usize> = r.iter().enumerate().flat_map(|(i, c)| c.iter().map(move |&a| (a, i))).collect();
            let mut lr: Vec<usize> = (0..r.len()).collect();
            fn find(p: &mut [usize], x: usize) -> usize {
                if p[x] != x {
                    let root = find(p, p[x]);
                    p[x] = root;
                }
                p[x]
            }
            for c in &l {
                let a = find(&mut lr, r_of[&c[0]]);
                for x in c {
                    let b = find(&mut lr, r_of[x]);
                    lr[b] = a;
                }
            }
            group_by(len, |a| find(&mut lr.clone(), r_of[&(a as u32)]))
        };
        ensure!(fd == d, "n={n}: D differs from L ∘ R");
        ensure!(h == l && refines(&l, &r) && r == d && d == j, "n={n}: H = L ⊆ R = D = J fails");
        let units: HashSet<u32> = m.ids().filter(|&a| m.get(a).is_automorphism()).map(|a| a.0).collect();
        if n != 4 {
            ensure!(
                l.iter().filter(|c| !units.contains(&c[0])).all(|c| c.len() == 1),
                "n={n}: L is not trivial outside the units"
            );
        } else {
            let sigma: Vec<u32> =
                m.ids().filter(|&a| matches!(m.get(a), Endomorphism::Sigma4 { .. })).map(|a| a.0).collect();
            let restricted: Vec<Vec<u32>> =
                canon(l.iter().filter(|c| sigma.contains(&c[0])).cloned());
            let by_4g = group_by(len, |a| match m.get(ElemId(a as u32)) {
                Endomorphism::Sigma4 { g } => Some(g.apply(3)),
                _ => None,
            })
            .into_iter()
            .filter(|c| sigma.contains(&c[0]))
            .collect::<Vec<_>>();
            ensure!(restricted == by_4g, "n=4: L-classes of D(4) are not keyed by 4g");
            ensure!(
                l.iter().filter(|c| !units.contains(&c[0]) && !sigma.contains(&c[0])).all(|c| c.len() == 1),
                "n=4: L is not trivial outside Aut ∪ D"
            );
        }
    }
    Ok("L, R, H, D, J match principal ideals at n=3..5; H = L ⊆ R = D = J".into())
}

/// All nonempty ideals, as unions of principal two-sided ideals.
fn ideals_by_search(m: &EndMonoid, id: &Ideals) -> BTreeSet<Vec<ElemId>> {
    let gens: BTreeSet<Vec<usize>> = id.two.iter().map(|s| s.ones().collect()).collect();
    let gens: Vec<FixedBitSet> = gens
        .into_iter()
        .map(|v| {
            let mut s = FixedBitSet::with_capacity(m.len());
            s.extend(v);
            s
        })
        .collect();
    let mut seen: HashSet<FixedBitSet> = gens.iter().cloned().collect();
    let mut queue: Vec<FixedBitSet> = gens.clone();
    while let Some(s) = queue.pop() {
        for g in &gens {
            if g.is_subset(&s) {
                continue;
            }
            let mut t = s.clone();
            t.union_with(g);
            if seen.insert(t.clone()) {
                queue.push(t);
            }
        }
    }
    seen.into_iter().map(|s| s.ones().map(|i| ElemId(i as u32)).collect()).collect()
}

fn closed(m: &EndMonoid, set: &[ElemId]) -> bool {
    let mut member = vec![false; m.len()];
    for a in set {
        member[a.index()] = true;
    }
    set.iter().all(|&a| m.ids().all(|x| member[m.mul(x, a).index()] && member[m.mul(a, x).index()]))
}

fn criterion_7() -> Outcome {
    let mut notes = Vec::new();
    for n in 3..=4 {
        let u = lib(Universe::with_table(n))?;
        let emitted = u.ideals_formula();
        let searched = ideals_by_search(u.monoid(), &principal_ideals(u.monoid()));
        ensure!(emitted == searched, "n={n}: {} emitted ideals, {} found by search", emitted.len(), searched.len());
        ensure!(emitted.iter().all(|s| closed(u.monoid(), s)), "n={n}: an emitted set is not an ideal");
        ensure!(lib(u.count_ideals())? == emitted.len() as u128, "n={n}: count differs from list");
        notes.push(format!("{} at n={n}", emitted.len()));
    }
    let u = lib(Universe::with_table(5))?;
    let bad = lib(u.check_orbit_forms())?;
    ensure!(bad.is_empty(), "n=5: orbit forms fail closure at {bad:?}");
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let check = lib(u.check_ideals_sampled(4096, 2000, &mut rng))?;
    ensure!(check.failures.is_empty(), "n=5: {:?} is not an ideal", check.failures[0]);
    let total = lib(u.count_ideals())?;
    ensure!(total == 1_074_956_290, "n=5: {total} ideals");
    notes.push(format!(
        "n=5: {total} ideals, every orbit-parameterized form closed, {} listed sets checked directly",
        check.checked
    ));
    Ok(notes.join("; "))
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut probes = 0;
    for n in 3..=5 {
        let u = lib(Universe::with_table(n))?;
        let m = u.monoid();
        let by_rank = group_by(m.len(), |a| m.get(ElemId(a as u32)).rank());
        for rel in [Relation::RStar, Relation::RTilde] {
            let p = lib(extended_partition(n, rel))?;
            ensure!(of_endos(m, &p.classes) == by_rank, "n={n}: {rel} is not the same-rank partition");
        }
        let reduced = lib(u.r_star_brute(true))?;
        ensure!(of_partition(&reduced) == by_rank, "n={n}: idempotent-reduced R* is not same-rank");
        let report = lib(u.probe_star(&reduced, true, 100_000, &mut rng))?;
        ensure!(report.violations == 0, "n={n}: {} R* probe violations", report.violations);
        probes += report.probes;
        let l_star = lib(u.extended_formula(Relation::LStar))?;
        let report = lib(u.probe_star(&l_star, false, 1_000, &mut rng))?;
        ensure!(report.violations == 0, "n={n}: {} L* probe violations", report.violations);
        probes += report.probes;
        for rel in [Relation::LStar, Relation::LTilde, Relation::HStar, Relation::HTilde] {
            lib(extended_partition(n, rel))?;
        }
        for rel in [Relation::DStar, Relation::JStar, Relation::DTilde, Relation::JTilde] {
            let p = lib(extended_partition(n, rel))?;
            let apart: &[Block] = match (rel, n) {
                (Relation::DStar | Relation::JStar, 3) => &[],
                (Relation::DStar | Relation::JStar, _) => &[Block::Aut, Block::D, Block::E1],
                (Relation::DTilde, 3) => &[Block::E3, Block::E1],
                (Relation::DTilde, 4) => &[Block::D, Block::E1],
                _ => &[Block::E1],
            };
            let expected = if apart.is_empty() {
                by_rank.clone()
            } else {
                group_by(m.len(), |a| Some(m.block(ElemId(a as u32))).filter(|b| apart.contains(b)))
            };
            ensure!(of_endos(m, &p.classes) == expected, "n={n}: {rel} does not separate exactly {apart:?}");
        }
    }
    let t = PermissiblePair::new(tr(&[1, 3, 2, 1, 5]), tr(&[1, 1, 1, 1, 1])).unwrap();
    let v = PermissiblePair::new(tr(&[1, 1, 1, 4, 4]), tr(&[1, 1, 1, 1, 1])).unwrap();
    let expected = vec![tr(&[1, 2, 3, 4, 5]), tr(&[1, 3, 2, 4, 5])];
    ensure!(lib(fix_set(&t))?.elements == expected, "Fix([1,3,2,1,5], c1) ≠ {{id, (2 3)}}");
    ensure!(lib(fix_set(&v))?.elements == expected, "Fix([1,1,1,4,4], c1) ≠ {{id, (2 3)}}");
    let u = lib(Universe::with_table(5))?;
    let l_star = lib(u.extended_formula(Relation::LStar))?;
    let same = l_star.same_class(u.len());
    let (a, b) = (u.monoid().id_of(&Endomorphism::phi(t)).unwrap(), u.monoid().id_of(&Endomorphism::phi(v)).unwrap());
    ensure!(same(a, b), "n=5: the Fix witness pair is not L*-related");
    let counts: Vec<usize> = [Relation::RStar, Relation::LStar, Relation::HStar, Relation::DStar, Relation::JStar]
        .into_iter()
        .chain([Relation::RTilde, Relation::LTilde, Relation::HTilde, Relation::DTilde, Relation::JTilde])
        .map(|r| lib(u.extended_formula(r)).map(|p| p.len()))
        .collect::<Result<_, _>>()?;
    ensure!(counts == [4, 638, 679, 3, 3, 4, 572, 574, 2, 2], "n=5: class counts {counts:?}");
    let ab = lib(u.abundance_report())?;
    ensure!(
        ab.left_abundant && !ab.right_abundant && ab.left_fountain && ab.right_fountain,
        "n=5: abundance report {ab:?}"
    );
    ensure!(lib(u.l_tilde_right_congruence_witness())?.is_some(), "n=5: no witness that L~ is not a right congruence");
    ensure!(
        lib(u.r_star_left_congruence_failure(100_000, &mut rng))?.is_none(),
        "n=5: R* fails to be a left congruence"
    );
    Ok(format!("n=3..5 kernels exact, {probes} definition probes, abundance at n=5 as stated"))
}

fn criterion_9() -> Outcome {
    let set = lib(minimal_generating_set(5))?;
    let all_orbits = lib(orbits(5))?;
    let r3 = all_orbits.iter().filter(|o| o.rank == 3).count();
    let essential = lib(essential_orbits(5))?;
    let r2 = essential.iter().filter(|o| o.rank == 2).count();
    ensure!(set.r3 == r3 && set.r2 == r2, "r3 = {}, r2 = {} reported; orbit enumeration gives {r3}, {r2}", set.r3, set.r2);
    ensure!(set.len() == 3 + r3 + r2, "size {} ≠ 3 + {r3} + {r2}", set.len());
    let elements = set.elements();
    ensure!(lib(verify_generates(&elements, 5))?, "the set does not generate End(T_5)");
    for i in 0..elements.len() {
        let mut rest = elements.clone();
        let dropped = rest.remove(i);
        ensure!(!lib(verify_generates(&rest, 5))?, "still generates without {dropped}");
    }
    Ok(format!("size {} = 3 + {r3} + {r2}, generates, no element removable", set.len()))
}

fn criterion_10() -> Outcome {
    let p = lib(Presentation::new(5))?;
    if let Some(rule) = lib(p.first_unsound_rule())? {
        return Err(format!("{} relation {} = {} is unsound", rule.family, p.format_word(&rule.lhs), p.format_word(&rule.rhs)));
    }
    let alphabet: Vec<Symbol> = p.alphabet();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut shapes = [0usize; 3];
    let mut longest = 0;
    for _ in 0..10_000 {
        let w: Vec<Symbol> = (0..20).map(|_| alphabet[rng.gen_range(0..alphabet.len())]).collect();
        let theta = lib(p.theta_eval(&w))?;
        let (nf, steps) = p.normal_form_traced(&w).map_err(|e| format!("{}: {e}", p.format_word(&w)))?;
        ensure!(steps.len() <= REWRITE_BUDGET, "{}: {} steps", p.format_word(&w), steps.len());
        longest = longest.max(steps.len());
        for s in &steps {
            ensure!(lib(p.theta_eval(&s.word))? == theta, "{}: {} step changes θ", p.format_word(&w), s.family);
        }
        ensure!(lib(p.theta_eval(&nf))? == theta, "{}: θ(normal form) ≠ θ(word)", p.format_word(&w));
        match Presentation::shape(&nf) {
            Some(k) => shapes[k] += 1,
            None => return Err(format!("{}: normal form {} has the wrong shape", p.format_word(&w), p.format_word(&nf))),
        }
    }
    Ok(format!(
        "{} sound relations; 10000 words normalized (shapes {shapes:?}, at most {longest} steps)",
        p.rules().len()
    ))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        ("oracle equivalence", criterion_1),
        ("counting lemma", criterion_2),
        ("cardinality identities", criterion_3),
        ("idempotent structure", criterion_4),
        ("regularity", criterion_5),
        ("Green's relations", criterion_6),
        ("ideals", criterion_7),
        ("extended relations", criterion_8),
        ("generators", criterion_9),
        ("presentation", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
