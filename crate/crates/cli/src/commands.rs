//! One function per verb. Each returns a [`Report`]; verification failures are
//! recorded in `Report::failure` rather than returned as errors.

use std::collections::BTreeMap;
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use endtn::endomorphism::MAX_END_DEGREE;
use endtn::error::ensure_capacity;
use endtn::generators::verify_generates;
use endtn::pairs::PermissiblePair;
use endtn::presentation::Presentation;
use endtn::structure::{IdealDescription, Partition};
use endtn::verify::{multiplication_exhaustive, multiplication_sampled, MultReport};
use endtn::{
    count_pairs_for, enumerate_all, enumerate_end, enumerate_p, fix_set, idempotent_partition, is_in_u,
    minimal_generating_set, orbits, regular_elements, Block, EndMonoid, Endomorphism, GreenPartition,
    IdentifyOptions, Relation, Transformation, Universe,
};

use crate::report::{col, wide, Report};
use crate::CliError;

/// Largest degree for exhaustive `verify-mult` without the capacity override.
pub const MAX_EXHAUSTIVE_MULT_DEGREE: usize = 4;

pub struct Config {
    pub n: Option<usize>,
    pub seed: u64,
    pub samples: Option<u64>,
    pub relation: Option<Relation>,
    pub verify: bool,
    pub t: Option<Transformation>,
    pub e: Option<Transformation>,
    pub words: Option<PathBuf>,
}

impl Config {
    fn n(&self) -> Result<usize, CliError> {
        self.n.ok_or_else(|| CliError::Usage("--n is required".into()))
    }

    fn relation(&self) -> Result<Relation, CliError> {
        self.relation.ok_or_else(|| CliError::Usage("--relation is required".into()))
    }
}

fn key(a: &Endomorphism) -> String {
    a.to_string()
}

fn keys(v: &[Endomorphism]) -> Vec<String> {
    v.iter().map(key).collect()
}

fn tag<T: Serialize>(x: &T) -> String {
    match serde_json::to_value(x) {
        Ok(Value::String(s)) => s,
        Ok(v) => v.to_string(),
        Err(_) => String::new(),
    }
}

fn word_of(t: &Transformation) -> String {
    t.images_one_based().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

pub fn enumerate(cfg: &Config) -> Result<Report, CliError> {
    let n = cfg.n()?;
    let elements = enumerate_end(n)?;
    let mut r = Report::new(vec![col("index"), col("key"), col("block"), col("rank"), col("type")]);
    r.line(format!("|End(T_{n})| = {}", elements.len()));
    let mut list = Vec::new();
    for (i, a) in elements.iter().enumerate() {
        r.row(vec![i.to_string(), key(a), a.block().to_string(), a.rank().to_string(), tag(&a.type_tag())]);
        list.push(json!({
            "key": key(a),
            "block": a.block(),
            "rank": a.rank().to_string(),
            "type": a.type_tag(),
            "element": a,
        }));
    }
    r.json = Value::Array(list);
    Ok(r)
}

pub fn counts(cfg: &Config) -> Result<Report, CliError> {
    let n = cfg.n()?;
    ensure_capacity("counts", n, MAX_END_DEGREE)?;
    let mut pairs = 0u128;
    for t in enumerate_all(n)?.filter(is_in_u) {
        pairs += count_pairs_for(&t)?;
    }
    let m = EndMonoid::new(n)?;
    let aut = m.ids_in(Block::Aut).len() as u128;
    let mut values: Vec<(String, String)> = vec![
        ("transformations".into(), (n as u128).pow(n as u32).to_string()),
        ("permissible_pairs".into(), pairs.to_string()),
        ("endomorphisms".into(), m.len().to_string()),
        ("automorphisms".into(), aut.to_string()),
    ];
    for b in Block::ALL {
        values.push((format!("block_{}", b.name()), m.ids_in(b).len().to_string()));
    }
    values.push(("idempotents".into(), m.idempotents().len().to_string()));
    let u = Universe::new(n)?;
    values.push(("orbits".into(), u.orbits().len().to_string()));
    if n <= endtn::monoid::MAX_TABLE_DEGREE {
        values.push(("ideals".into(), u.count_ideals()?.to_string()));
    }

    let mut r = Report::new(vec![col("quantity"), col("value")]);
    if cfg.verify {
        let enumerated = enumerate_p(n)?.count() as u128;
        if enumerated != pairs {
            r.fail(format!("|P_{n}|: counting formula gives {pairs}, enumeration gives {enumerated}"));
        }
        let expected = aut + pairs + if n == 4 { 24 } else { 0 };
        if expected != m.len() as u128 {
            r.fail(format!("|End(T_{n})|: n! + |P_n| (+24) = {expected}, enumeration gives {}", m.len()));
        }
        if r.failure.is_none() {
            r.line("counting formula agrees with enumeration");
        }
    }
    let mut obj = serde_json::Map::new();
    obj.insert("n".into(), json!(n));
    for (q, v) in &values {
        r.row(vec![q.clone(), v.clone()]);
        obj.insert(q.clone(), json!(v));
    }
    r.json = Value::Object(obj);
    Ok(r)
}

pub fn verify_mult(cfg: &Config) -> Result<Report, CliError> {
    let n = cfg.n()?;
    let opts = IdentifyOptions { check_all_points: cfg.verify, check_homomorphism: false };
    let (mode, report): (&str, MultReport) = match cfg.samples {
        Some(s) => ("sampled", multiplication_sampled(n, s, cfg.seed, opts)?),
        None => {
            ensure_capacity("verify-mult (exhaustive)", n, MAX_EXHAUSTIVE_MULT_DEGREE)?;
            ("exhaustive", multiplication_exhaustive(n, opts)?)
        }
    };
    let mut r = Report::new(vec![col("n"), col("mode"), col("pairs"), col("result")]);
    let result = match &report.mismatch {
        None => {
            r.line(format!("all pairs agree ({} pairs, {mode})", report.pairs));
            "all pairs agree".to_string()
        }
        Some(m) => {
            let msg = format!("mismatch: alpha = {}, beta = {}, symbolic = {}, oracle = {}", m.alpha, m.beta, m.symbolic, m.oracle);
            r.line(msg.clone());
            r.fail(msg.clone());
            msg
        }
    };
    r.row(vec![n.to_string(), mode.into(), report.pairs.to_string(), result]);
    r.json = json!({
        "n": n,
        "mode": mode,
        "seed": cfg.seed,
        "pairs": report.pairs,
        "passed": report.passed(),
        "mismatch": report.mismatch.as_ref().map(|m| json!({
            "alpha": key(&m.alpha),
            "beta": key(&m.beta),
            "symbolic": m.symbolic,
            "oracle": m.oracle,
        })),
    });
    Ok(r)
}

/// The first class (in canonical order) on which two partitions differ.
fn first_difference(u: &Universe, a: &Partition, b: &Partition) -> String {
    let show = |p: &Partition, i: usize| match p.classes().get(i) {
        Some(c) => format!("[{}]", c.iter().map(|&x| key(u.monoid().get(x))).collect::<Vec<_>>().join(" ")),
        None => "none".into(),
    };
    let i = (0..a.len().max(b.len())).find(|&i| a.classes().get(i) != b.classes().get(i)).unwrap_or(0);
    format!("class {i}: formula {}, brute force {}", show(a, i), show(b, i))
}

fn partition_report(u: &Universe, relation: Relation, formula: &Partition, brute: &Partition) -> Report {
    let mut r = Report::new(vec![col("relation"), col("class"), col("label"), col("size"), wide("members")]);
    if formula != brute {
        r.fail(format!("{relation}: formula and brute force disagree at n = {}; {}", u.degree(), first_difference(u, formula, brute)));
    }
    let gp = GreenPartition::new(relation, u.monoid(), formula);
    r.line(format!("{relation} on End(T_{}): {} classes", u.degree(), gp.classes.len()));
    for (i, (ids, c)) in formula.classes().iter().zip(&gp.classes).enumerate() {
        r.row(vec![relation.to_string(), i.to_string(), u.class_label(ids), c.len().to_string(), keys(c).join(" ")]);
    }
    r.json = json!({
        "n": u.degree(),
        "relation": relation,
        "classes": gp.classes.iter().map(|c| keys(c)).collect::<Vec<_>>(),
    });
    r
}

pub fn green(cfg: &Config) -> Result<Report, CliError> {
    let relation = cfg.relation()?;
    if !relation.is_green() {
        return Err(CliError::Usage(format!("{relation} is not one of L, R, H, D, J; use `extended`")));
    }
    let u = Universe::with_table(cfg.n()?)?;
    let formula = u.green_formula(relation)?;
    let brute = u.green_brute(relation)?;
    Ok(partition_report(&u, relation, &formula, &brute))
}

pub fn extended(cfg: &Config) -> Result<Report, CliError> {
    let relation = cfg.relation()?;
    if relation.is_green() {
        return Err(CliError::Usage(format!("{relation} is one of Green's relations; use `green`")));
    }
    let u = Universe::with_table(cfg.n()?)?;
    let formula = u.extended_formula(relation)?;
    let brute = u.extended_brute(relation)?;
    let mut r = partition_report(&u, relation, &formula, &brute);
    let ab = u.abundance_report()?;
    r.line(format!(
        "left abundant: {}, right abundant: {}, left fountain: {}, right fountain: {}",
        ab.left_abundant, ab.right_abundant, ab.left_fountain, ab.right_fountain
    ));
    if let Value::Object(obj) = &mut r.json {
        obj.insert("abundance".into(), json!(ab));
    }
    Ok(r)
}

/// Ideals are listed in full up to this degree; above it only `--samples` of them.
const LIST_ALL_IDEALS_DEGREE: usize = 4;

pub fn ideals(cfg: &Config) -> Result<Report, CliError> {
    let n = cfg.n()?;
    ensure_capacity("ideals", n, endtn::monoid::MAX_TABLE_DEGREE)?;
    let u = Universe::new(n)?;
    let total = u.count_ideals()?;
    let limit = match cfg.samples {
        Some(s) => s,
        None if n <= LIST_ALL_IDEALS_DEGREE => u64::MAX,
        None => 0,
    };
    let mut r = Report::new(vec![col("index"), col("form"), col("size"), wide("orbits")]);
    r.line(format!("End(T_{n}) has {total} ideals"));
    let mut listed = Vec::new();
    for (i, d) in u.ideal_descriptions().take(limit.min(usize::MAX as u64) as usize).enumerate() {
        let set = u.ideal_elements(&d);
        let mut orbit_ids: Vec<usize> = set.ones().map(|a| u.orbits().orbit(endtn::ElemId(a as u32))).collect();
        orbit_ids.dedup();
        orbit_ids.sort_unstable();
        orbit_ids.dedup();
        let ids = orbit_ids.iter().map(|o| o.to_string()).collect::<Vec<_>>().join(" ");
        r.row(vec![i.to_string(), tag(&d.form), set.count_ones(..).to_string(), ids]);
        listed.push(json!({"form": d.form, "orbits": orbit_ids}));
    }
    if (listed.len() as u128) < total {
        r.line(format!("listed the first {} (use --samples to change)", listed.len()));
    }

    if cfg.verify {
        if n <= LIST_ALL_IDEALS_DEGREE {
            let formula = u.ideals_formula();
            let brute = u.ideals_brute()?;
            if let Some(x) = formula.symmetric_difference(&brute).next() {
                let side = if formula.contains(x) { "formula only" } else { "brute force only" };
                let members: Vec<String> = x.iter().map(|&a| key(u.monoid().get(a))).collect();
                r.fail(format!("ideal in {side}: [{}]", members.join(" ")));
            }
        } else {
            let bad = u.check_orbit_forms()?;
            if let Some(&o) = bad.first() {
                r.fail(format!("orbit-parameterized ideal form fails closure at orbit {o}"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let check = u.check_ideals_sampled(4096, cfg.samples.unwrap_or(1000) as usize, &mut rng)?;
            if let Some(d) = check.failures.first() {
                r.fail(format!("not an ideal: {}", describe(d)));
            }
        }
        if r.failure.is_none() {
            r.line("ideals agree with brute force");
        }
    }
    r.json = json!({"n": n, "count": total.to_string(), "ideals": listed});
    Ok(r)
}

fn describe(d: &IdealDescription) -> String {
    format!("{} x={:?} y={:?} z={:?}", tag(&d.form), d.x, d.y, d.z)
}

pub fn idempotents(cfg: &Config) -> Result<Report, CliError> {
    let n = cfg.n()?;
    let p = idempotent_partition(n)?;
    let groups: [(&str, &[Endomorphism]); 5] =
        [("identity", &p.identity), ("E7", &p.e7), ("E3", &p.e3), ("E2", &p.e2), ("E1", &p.e1)];
    let mut r = Report::new(vec![col("group"), col("key")]);
    let mut obj = serde_json::Map::new();
    obj.insert("n".into(), json!(n));
    for (name, v) in groups {
        r.line(format!("{name}: {}", v.len()));
        for a in v {
            r.row(vec![name.into(), key(a)]);
        }
        obj.insert(name.into(), json!(keys(v)));
    }
    r.json = Value::Object(obj);
    Ok(r)
}

pub fn regular(cfg: &Config) -> Result<Report, CliError> {
    let n = cfg.n()?;
    let reg = regular_elements(n)?;
    let total = EndMonoid::new(n)?.len();
    let mut r = Report::new(vec![col("key"), col("block")]);
    r.line(format!("{} of {total} elements are regular; End(T_{n}) is {}regular", reg.len(), if reg.len() == total { "" } else { "not " }));
    for a in &reg {
        r.row(vec![key(a), a.block().to_string()]);
    }
    r.json = json!({"n": n, "total": total, "regular": keys(&reg)});
    Ok(r)
}

pub fn gens(cfg: &Config) -> Result<Report, CliError> {
    let n = cfg.n()?;
    let set = minimal_generating_set(n)?;
    let mut r = Report::new(vec![col("role"), col("key"), col("block")]);
    r.line(format!("minimal generating set of size {} (automorphisms {}, r3 = {}, r2 = {})", set.len(), set.automorphisms.len(), set.r3, set.r2));
    for a in &set.automorphisms {
        r.row(vec!["automorphism".into(), key(a), a.block().to_string()]);
    }
    for a in &set.singular {
        let role = match a.rank() {
            1 => "rank-1",
            2 => "rank-2",
            3 => "rank-3",
            _ => "singular",
        };
        r.row(vec![role.into(), key(a), a.block().to_string()]);
    }
    if cfg.verify {
        let elements = set.elements();
        if !verify_generates(&elements, n)? {
            r.fail("the set does not generate End(T_n)");
        } else {
            for i in 0..elements.len() {
                let mut rest = elements.clone();
                let dropped = rest.remove(i);
                if verify_generates(&rest, n)? {
                    r.fail(format!("not minimal: still generates without {dropped}"));
                    break;
                }
            }
        }
        if r.failure.is_none() {
            r.line("generates End(T_n); no element can be removed");
        }
    }
    r.json = json!({
        "n": n,
        "size": set.len(),
        "r3": set.r3,
        "r2": set.r2,
        "automorphisms": keys(&set.automorphisms),
        "singular": keys(&set.singular),
    });
    Ok(r)
}

const WORD_LENGTH: usize = 20;
const DEFAULT_WORDS: u64 = 10_000;

pub fn presentation_check(cfg: &Config) -> Result<Report, CliError> {
    let n = cfg.n()?;
    let p = Presentation::new(n)?;
    let mut r = Report::new(vec![col("index"), col("shape"), col("normal_form"), wide("word")]);
    let mut by_family: BTreeMap<String, usize> = BTreeMap::new();
    for rule in p.rules() {
        *by_family.entry(rule.family.to_string()).or_default() += 1;
    }
    r.line(format!("{} p-generators, {} relations", p.generators().len(), p.rules().len()));
    r.line(by_family.iter().map(|(f, c)| format!("{f}: {c}")).collect::<Vec<_>>().join(", "));
    if let Some(rule) = p.first_unsound_rule()? {
        r.fail(format!(
            "unsound {} relation {} = {}: θ(lhs) = {}, θ(rhs) = {}",
            rule.family,
            p.format_word(&rule.lhs),
            p.format_word(&rule.rhs),
            p.theta_eval(&rule.lhs)?,
            p.theta_eval(&rule.rhs)?
        ));
    } else {
        r.line("every relation holds in End(T_n)");
    }

    let words: Vec<Vec<endtn::Symbol>> = match &cfg.words {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            text.lines().filter(|l| !l.trim().is_empty()).map(|l| p.parse_word(l)).collect::<Result<_, _>>()?
        }
        None => {
            let alphabet = p.alphabet();
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            (0..cfg.samples.unwrap_or(DEFAULT_WORDS))
                .map(|_| (0..WORD_LENGTH).map(|_| alphabet[rng.gen_range(0..alphabet.len())]).collect())
                .collect()
        }
    };
    let mut shapes = [0usize; 3];
    let mut out = Vec::new();
    for w in &words {
        let theta = p.theta_eval(w)?;
        let (nf, steps) = match p.normal_form_traced(w) {
            Ok(x) => x,
            Err(e) => {
                r.fail(format!("word {}: {e}", p.format_word(w)));
                break;
            }
        };
        let nf_theta = p.theta_eval(&nf)?;
        if nf_theta != theta {
            r.fail(format!("word {}: normal form {}, θ(word) = {theta}, θ(normal form) = {nf_theta}", p.format_word(w), p.format_word(&nf)));
            break;
        }
        if cfg.verify {
            if let Some(s) = steps.iter().find(|s| p.theta_eval(&s.word).ok() != Some(theta)) {
                r.fail(format!("word {}: {} step gives {}, θ changes from {theta}", p.format_word(w), s.family, p.format_word(&s.word)));
                break;
            }
        }
        let shape = Presentation::shape(&nf);
        match shape {
            Some(k) => shapes[k] += 1,
            None => {
                r.fail(format!("word {}: normal form {} is not of the form p* q* with at most two p's", p.format_word(w), p.format_word(&nf)));
                break;
            }
        }
        let shape = shape.map(|k| k.to_string()).unwrap_or_default();
        r.row(vec![out.len().to_string(), shape.clone(), p.format_word(&nf), p.format_word(w)]);
        out.push(json!({"word": p.format_word(w), "normal_form": p.format_word(&nf), "shape": shape}));
    }
    r.line(format!(
        "{} words normalized; shapes: {} q*, {} p q*, {} p p q*",
        out.len(),
        shapes[0],
        shapes[1],
        shapes[2]
    ));
    r.json = json!({
        "n": n,
        "generators": p.generators().len(),
        "relations": p.rules().len(),
        "families": by_family,
        "sound": r.failure.is_none(),
        "words": out,
        "shapes": shapes,
    });
    Ok(r)
}

pub fn fix(cfg: &Config) -> Result<Report, CliError> {
    let pairs: Vec<PermissiblePair> = match (cfg.t, cfg.e) {
        (Some(t), Some(e)) => {
            if let Some(n) = cfg.n {
                if n != t.degree() {
                    return Err(CliError::Usage(format!("--n {n} does not match the degree {} of --t", t.degree())));
                }
            }
            vec![PermissiblePair::new(t, e)?]
        }
        (None, None) => orbits(cfg.n()?)?
            .iter()
            .filter_map(|o| o.representative.pair().copied())
            .collect(),
        _ => return Err(CliError::Usage("--t and --e go together".into())),
    };
    let mut r = Report::new(vec![col("t"), col("e"), col("size"), col("fix")]);
    let mut list = Vec::new();
    for pair in &pairs {
        let f = fix_set(pair)?;
        let elements: Vec<String> = f.elements.iter().map(|g| format!("[{}]", word_of(g))).collect();
        r.row(vec![word_of(&pair.t), word_of(&pair.e), elements.len().to_string(), elements.join(" ")]);
        list.push(json!({
            "t": pair.t.images_one_based(),
            "e": pair.e.images_one_based(),
            "fix": f.elements.iter().map(Transformation::images_one_based).collect::<Vec<_>>(),
        }));
    }
    r.json = Value::Array(list);
    Ok(r)
}
