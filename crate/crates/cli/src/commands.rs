use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use serde_json::{json, Value};

use shiftcat::codes::{compose, BlockMap};
use shiftcat::flowops::{
    check_mirage_lemmas, classify_term, connecting_arrows, cyclic_idempotents, expand_shift, verify_naturality,
    ExpansionContext,
};
use shiftcat::karoubi::{karoubi_vs_lu_comparison, lu_labeled_poset, KaroubiCategory, LabeledPoset};
use shiftcat::pseudowords::{term_block_code, OmegaTerm, QuotientVerdict, TestBattery};
use shiftcat::semigroups::{syntactic_semigroup, FiniteSemigroup, SyntacticSemigroup};
use shiftcat::shifts::{PeriodicPoint, Shift, ShiftPresentation};
use shiftcat::suites::{run_suite, SuiteError};
use shiftcat::words::Alphabet;

use crate::error::CliError;
use crate::report::Report;

/// Largest random test semigroup unless `--tests` says otherwise.
const DEFAULT_TEST_SIZE: usize = 40;

/// Global options shared by the commands.
pub struct Context {
    pub seed: Option<u64>,
    pub random_tests: usize,
    pub test_size: usize,
}

impl Context {
    pub fn new(seed: Option<u64>, tests: &str) -> Result<Self, CliError> {
        let bad = || CliError::usage(format!("--tests expects COUNT or COUNT:MAX_SIZE, got `{tests}`"));
        let (count, size) = match tests.split_once(':') {
            Some((c, s)) => (c.parse().map_err(|_| bad())?, s.parse().map_err(|_| bad())?),
            None => (tests.parse().map_err(|_| bad())?, DEFAULT_TEST_SIZE),
        };
        if count > 0 && seed.is_none() {
            return Err(CliError::usage("random test semigroups need --seed"));
        }
        Ok(Context { seed, random_tests: count, test_size: size })
    }

    /// The syntactic semigroup of `shift` plus the requested random ones.
    fn battery(&self, shift: &Shift, name: &str) -> Result<TestBattery, CliError> {
        let syn = syntactic_semigroup(shift)?;
        let random = match self.seed {
            Some(seed) if self.random_tests > 0 => {
                TestBattery::random(shift.alphabet(), self.random_tests, self.test_size, seed)
            }
            _ => TestBattery::new(),
        };
        Ok(random.with(TestBattery::syntactic(name, &syn)))
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::new(crate::error::exit::NO_INPUT, format!("cannot read {}: {e}", path.display())))
}

fn with_path<T, E: Into<CliError>>(path: &Path, r: Result<T, E>) -> Result<T, CliError> {
    r.map_err(|e| {
        let mut e: CliError = e.into();
        e.message = format!("{}: {}", path.display(), e.message);
        e
    })
}

fn load_shift(path: &Path) -> Result<Shift, CliError> {
    let text = read(path)?;
    let p = with_path(path, ShiftPresentation::from_json(&text))?;
    with_path(path, p.trim())
}

fn load_map(path: &Path) -> Result<BlockMap, CliError> {
    let text = read(path)?;
    with_path(path, BlockMap::from_json(&text))
}

/// A semigroup table, or the syntactic semigroup of a shift.
enum SemigroupInput {
    Table(Box<FiniteSemigroup>),
    Syntactic(Box<SyntacticSemigroup>),
}

impl SemigroupInput {
    fn semigroup(&self) -> &FiniteSemigroup {
        match self {
            SemigroupInput::Table(s) => s,
            SemigroupInput::Syntactic(syn) => syn.semigroup(),
        }
    }

    /// The accepting set, or every element for a bare table.
    fn accept(&self) -> Vec<usize> {
        match self {
            SemigroupInput::Table(s) => s.elements().collect(),
            SemigroupInput::Syntactic(syn) => syn.accept().to_vec(),
        }
    }
}

fn load_semigroup(path: &Path) -> Result<SemigroupInput, CliError> {
    let text = read(path)?;
    let value: Value = with_path(path, serde_json::from_str(&text).map_err(CliError::data))?;
    if value.get("table").is_some() {
        Ok(SemigroupInput::Table(Box::new(with_path(path, FiniteSemigroup::from_json(&text))?)))
    } else {
        let p = with_path(path, ShiftPresentation::from_json(&text))?;
        let shift = with_path(path, p.trim())?;
        Ok(SemigroupInput::Syntactic(Box::new(with_path(path, syntactic_semigroup(&shift))?)))
    }
}

fn words_json(a: &Alphabet, words: impl IntoIterator<Item = shiftcat::words::Word>) -> Vec<String> {
    words.into_iter().map(|w| a.format(&w)).collect()
}

pub fn blocks(path: &Path, bound: usize) -> Result<Report, CliError> {
    let x = load_shift(path)?;
    let blocks = words_json(x.alphabet(), x.blocks(bound));
    let text = blocks.join("\n") + "\n";
    Ok(Report::new("blocks", json!({"schema": "shiftcat/blocks@1", "bound": bound, "blocks": blocks})).text(text))
}

pub fn member(path: &Path, input: &str, bound: usize) -> Result<Report, CliError> {
    let x = load_shift(path)?;
    let a = x.alphabet();
    let t = OmegaTerm::parse(a, input)?;
    let json = match t.as_word() {
        Some(w) => json!({
            "schema": "shiftcat/member@1",
            "input": a.format(&w),
            "kind": "word",
            "block": x.is_block(&w),
            "periodic_point": x.is_periodic_point(&w),
        }),
        None => {
            let syn = syntactic_semigroup(&x)?;
            json!({
                "schema": "shiftcat/member@1",
                "input": t.format(a),
                "kind": "term",
                "closure": t.closure_membership(&syn)?,
                "level": bound,
                "mirage": t.in_mirage(&x, bound),
            })
        }
    };
    let text = format!("{}\n", json_line(&json, &["input", "block", "closure", "mirage"]));
    Ok(Report::new("member", json).text(text))
}

/// `key=value` pairs for the keys present in `v`.
fn json_line(v: &Value, keys: &[&str]) -> String {
    keys.iter()
        .filter_map(|k| v.get(k).map(|x| format!("{k}={}", x.as_str().map(str::to_string).unwrap_or(x.to_string()))))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn irreducible(path: &Path) -> Result<Report, CliError> {
    let x = load_shift(path)?;
    let irreducible = x.is_irreducible()?;
    let component: Option<Vec<String>> =
        x.covering_component().map(|c| c.iter().map(|&v| x.vertex_names()[v].clone()).collect());
    let json = json!({
        "schema": "shiftcat/irreducible@1",
        "irreducible": irreducible,
        "component": component,
    });
    Ok(Report::new("irreducible", json).text(format!("{irreducible}\n")))
}

fn point_json(a: &Alphabet, pt: &PeriodicPoint) -> Value {
    json!({"representative": a.format(pt.representative()), "phase": pt.phase(), "period": pt.period()})
}

pub fn periodic(path: &Path, order: usize, bound: usize) -> Result<Report, CliError> {
    let x = load_shift(path)?;
    let counts = x.periodic_counts(order)?;
    let a = x.alphabet();
    let orbits: Vec<Value> = (1..=bound)
        .map(|n| {
            let reps: BTreeSet<String> = x.periodic_points(n).iter().map(|p| a.format(p.representative())).collect();
            json!({"period": n, "representatives": reps})
        })
        .collect();
    let mut text = String::from("n p q\n");
    for n in 0..order {
        let _ = writeln!(text, "{} {} {}", n + 1, counts.p[n], counts.q[n]);
    }
    let json = json!({
        "schema": "shiftcat/periodic@1",
        "order": order,
        "p": counts.p,
        "q": counts.q,
        "orbits": orbits,
    });
    Ok(Report::new("periodic", json).text(text))
}

pub fn zeta(path: &Path, order: usize) -> Result<Report, CliError> {
    let x = load_shift(path)?;
    let z = x.zeta(order)?;
    let coeffs: Vec<String> = z.integer_coefficients().iter().map(|c| c.to_string()).collect();
    let coeff_values: Vec<Value> =
        coeffs.iter().map(|c| c.parse::<u64>().map(Value::from).unwrap_or_else(|_| Value::from(c.clone()))).collect();
    let json = json!({
        "schema": "shiftcat/zeta@1",
        "order": order,
        "p": z.counts.p,
        "q": z.counts.q,
        "coefficients": coeff_values,
    });
    Ok(Report::new("zeta", json).text(coeffs.join(" ") + "\n"))
}

pub fn syntactic(path: &Path) -> Result<Report, CliError> {
    let x = load_shift(path)?;
    let syn = syntactic_semigroup(&x)?;
    let s = syn.semigroup();
    let mut json = s.to_json();
    json["accept"] = json!(syn.accept());
    json["idempotents"] = json!(s.idempotents());
    Ok(Report::new("syntactic", json).text(s.to_gap()))
}

/// Per J-class data and the covering relation of `≤_J`.
fn green_json(s: &FiniteSemigroup) -> (Value, Vec<(usize, usize)>) {
    let g = s.green();
    let n = g.j_classes().len();
    let classes: Vec<Value> = (0..n)
        .map(|j| {
            let h = g.h_classes_in(j)[0];
            json!({
                "id": j,
                "elements": g.j_classes()[j],
                "witnesses": g.j_classes()[j].iter().map(|&x| s.alphabet().format(s.witness(x))).collect::<Vec<_>>(),
                "regular": g.is_regular(j),
                "r_classes": g.r_classes_in(j).len(),
                "l_classes": g.l_classes_in(j).len(),
                "h_classes": g.h_classes_in(j).len(),
                "idempotents": g.j_classes()[j].iter().filter(|&&x| s.is_idempotent(x)).count(),
                "group": s.schutzenberger(h).descriptor(),
            })
        })
        .collect();
    let below = |a: usize, b: usize| a != b && g.j_leq(a, b);
    let covers: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| below(a, b) && !(0..n).any(|c| below(a, c) && below(c, b)))
        .collect();
    let minimal = g.minimal_j_classes();
    (json!({"size": s.size(), "classes": classes, "covers": covers, "minimal": minimal}), covers)
}

fn green_text(v: &Value) -> String {
    let mut out = format!("size {}\n", v["size"]);
    for c in v["classes"].as_array().into_iter().flatten() {
        let _ = writeln!(
            out,
            "J{}: {} elements, {} R, {} L, {} H, {} idempotents, {}, group {}",
            c["id"],
            c["elements"].as_array().map_or(0, Vec::len),
            c["r_classes"],
            c["l_classes"],
            c["h_classes"],
            c["idempotents"],
            if c["regular"] == true { "regular" } else { "null" },
            c["group"].as_str().unwrap_or("?"),
        );
    }
    out
}

pub fn green(path: &Path) -> Result<Report, CliError> {
    let input = load_semigroup(path)?;
    let s = input.semigroup();
    let (mut json, covers) = green_json(s);
    json["schema"] = json!("shiftcat/green@1");
    let mut dot = String::from("digraph green {\n  rankdir=BT;\n  node [shape=box];\n");
    for c in json["classes"].as_array().into_iter().flatten() {
        let _ = writeln!(dot, "  J{} [label=\"J{} ({}, {})\"];", c["id"], c["id"], u8::from(c["regular"] == true), c["group"].as_str().unwrap_or("?"));
    }
    for (a, b) in covers {
        let _ = writeln!(dot, "  J{a} -> J{b};");
    }
    dot.push_str("}\n");
    let text = green_text(&json);
    Ok(Report::new("green", json).text(text).dot(dot))
}

pub fn karoubi(path: &Path) -> Result<Report, CliError> {
    let input = load_semigroup(path)?;
    let s = input.semigroup();
    let cat = KaroubiCategory::build(s);
    let census = cat.census_json()?;
    let mut automorphisms = Vec::new();
    for &e in cat.objects() {
        let g = cat.automorphism_group(e)?;
        automorphisms.push(json!({"object": e, "witness": s.alphabet().format(s.witness(e)), "group": g.descriptor()}));
    }
    let classes: Vec<Vec<usize>> = cat.isomorphism_classes()?;
    let (green, _) = green_json(s);
    let g = s.green();
    let min = g.minimal_j_classes();
    let minimal: Vec<Value> = min.iter().map(|&j| green["classes"][j].clone()).collect();
    // With a zero, the J-classes covering it are the 0-minimal ideals.
    let zero = (min.len() == 1 && g.j_classes()[min[0]].len() == 1 && s.size() > 1).then(|| min[0]);
    let zero_minimal: Vec<Value> = match zero {
        Some(z) => (0..g.j_classes().len())
            .filter(|&j| j != z && g.j_leq(z, j) && !(0..g.j_classes().len()).any(|c| c != z && c != j && g.j_leq(z, c) && g.j_leq(c, j)))
            .map(|j| green["classes"][j].clone())
            .collect(),
        None => Vec::new(),
    };
    let accept = input.accept();
    let poset = lu_labeled_poset(s, &accept);
    let mut comparisons = serde_json::Map::new();
    let all: Vec<usize> = s.elements().collect();
    for (name, k) in [("accept", &accept), ("all", &all)] {
        let c = karoubi_vs_lu_comparison(s, k)?;
        comparisons.insert(name.to_string(), json!({"verdict": c.verdict.name(), "classes": c.lu_poset.len()}));
    }
    let json = json!({
        "schema": "shiftcat/karoubi@1",
        "semigroup_size": s.size(),
        "census": census,
        "isomorphism_classes": classes,
        "automorphisms": automorphisms,
        "green": green,
        "minimal_ideal": minimal,
        "zero_minimal_ideals": zero_minimal,
        "lu_poset": poset.to_json(),
        "comparison": comparisons,
    });
    let mut text = format!(
        "semigroup of size {}, {} objects, {} arrows\ncensus {}\n",
        s.size(),
        cat.objects().len(),
        cat.arrow_count(),
        census["census"]
    );
    let summary = |m: &Value| {
        format!("{} R, {} L, {} H, {} idempotents", m["r_classes"], m["l_classes"], m["h_classes"], m["idempotents"])
    };
    for m in &minimal {
        let _ = writeln!(text, "minimal ideal: {}", summary(m));
    }
    for m in &zero_minimal {
        let _ = writeln!(text, "0-minimal J-class: {}", summary(m));
    }
    for (name, c) in &comparisons {
        let _ = writeln!(text, "K(S) vs LU({name}): {}", c["verdict"].as_str().unwrap_or("?"));
    }
    Ok(Report::new("karoubi", json).text(text).dot(poset.to_dot("lu")))
}

fn poset_text(p: &LabeledPoset) -> String {
    let mut out = String::new();
    for (c, l) in p.classes.iter().zip(&p.labels) {
        let _ = writeln!(out, "J{c} {}", l.descriptor());
    }
    for (i, j) in p.covers() {
        let _ = writeln!(out, "J{} < J{}", p.classes[i], p.classes[j]);
    }
    out
}

pub fn lu_poset(path: &Path, all: bool) -> Result<Report, CliError> {
    let input = load_semigroup(path)?;
    let s = input.semigroup();
    let k: Vec<usize> = if all { s.elements().collect() } else { input.accept() };
    let p = lu_labeled_poset(s, &k);
    Ok(Report::new("lu-poset", p.to_json()).text(poset_text(&p)).dot(p.to_dot("lu")))
}

pub fn code_apply(map: &Path, word: Option<&str>, point: Option<&str>, shift: Option<&Path>) -> Result<Report, CliError> {
    let phi = load_map(map)?;
    let (a, b) = (phi.source().clone(), phi.target().clone());
    if let Some(w) = word {
        let u = a.parse_word(w)?;
        let image = b.format(&phi.word_code(&u));
        let json = json!({"schema": "shiftcat/code-apply@1", "word": a.format(&u), "image": image});
        return Ok(Report::new("code apply", json).text(image + "\n"));
    }
    if let Some(p) = point {
        let pt = PeriodicPoint::from_word(&a.parse_word(p)?)?;
        let image = phi.centralize().apply_to_periodic(&pt);
        let json = json!({"schema": "shiftcat/code-apply@1", "point": point_json(&a, &pt), "image": point_json(&b, &image)});
        return Ok(Report::new("code apply", json).text(b.format(image.representative()) + "\n"));
    }
    let path = shift.ok_or_else(|| CliError::usage("code apply needs --word, --point or --shift"))?;
    let x = load_shift(path)?;
    let y = phi.centralize().apply_to_shift(&x)?;
    Ok(Report::new("code apply", y.to_presentation().to_json()).dot(y.to_dot()))
}

pub fn code_compose(first: &Path, second: &Path) -> Result<Report, CliError> {
    let phi = load_map(first)?.centralize();
    let psi = load_map(second)?.centralize();
    let lam = compose(&phi, &psi)?;
    Ok(Report::new("code compose", lam.block_map().to_json()))
}

pub fn code_centralize(map: &Path) -> Result<Report, CliError> {
    let phi = load_map(map)?.centralize();
    Ok(Report::new("code centralize", phi.block_map().to_json()))
}

pub fn term_eval(path: &Path, term: &str) -> Result<Report, CliError> {
    let x = load_shift(path)?;
    let syn = syntactic_semigroup(&x)?;
    let s = syn.semigroup();
    let a = x.alphabet();
    let t = OmegaTerm::parse(a, term)?;
    let v = t.eval_generators(s)?;
    let json = json!({
        "schema": "shiftcat/term-eval@1",
        "term": t.format(a),
        "canonical": t.canonical().format(a),
        "element": v,
        "witness": a.format(s.witness(v)),
        "idempotent": s.is_idempotent(v),
        "closure": syn.is_accepted(v),
    });
    let text = format!("{}\n", json_line(&json, &["canonical", "element", "witness", "idempotent", "closure"]));
    Ok(Report::new("term eval", json).text(text))
}

pub fn term_factors(path: &Path, term: &str, bound: usize) -> Result<Report, CliError> {
    let x = load_shift(path)?;
    let a = x.alphabet();
    let t = OmegaTerm::parse(a, term)?;
    let factors = words_json(a, t.factors(bound));
    let json = json!({
        "schema": "shiftcat/term-factors@1",
        "term": t.format(a),
        "bound": bound,
        "factors": factors,
        "mirage": t.in_mirage(&x, bound),
    });
    let text = format!("{}\nmirage={}\n", factors.join(" "), json["mirage"]);
    Ok(Report::new("term factors", json).text(text))
}

pub fn term_code(map: &Path, term: &str) -> Result<Report, CliError> {
    let phi = load_map(map)?;
    let t = OmegaTerm::parse(phi.source(), term)?;
    let image = term_block_code(&phi, &t)?.format(phi.target());
    let json = json!({"schema": "shiftcat/term-code@1", "term": t.format(phi.source()), "image": image});
    Ok(Report::new("term code", json).text(image + "\n"))
}

fn context(path: &Path, letter: &str, diamond: &str) -> Result<ExpansionContext, CliError> {
    let x = load_shift(path)?;
    let alpha = x.alphabet().letter(letter)?;
    Ok(expand_shift(&x, alpha, diamond)?)
}

pub fn expand(path: &Path, letter: &str, diamond: &str) -> Result<Report, CliError> {
    let ctx = context(path, letter, diamond)?;
    Ok(Report::new("expand", ctx.target.to_presentation().to_json()).dot(ctx.target.to_dot()))
}

pub fn classify(path: &Path, term: &str, letter: &str, diamond: &str, bound: usize) -> Result<Report, CliError> {
    let ctx = context(path, letter, diamond)?;
    let b = ctx.target_alphabet();
    let t = OmegaTerm::parse(b, term)?;
    let ty = classify_term(&t, &ctx, bound)?;
    let json = json!({"schema": "shiftcat/classify@1", "term": t.format(b), "level": bound, "type": ty.to_string()});
    Ok(Report::new("classify", json).text(format!("{ty}\n")))
}

pub fn flowcheck(
    ctx: &Context,
    path: &Path,
    letter: &str,
    diamond: &str,
    bound: usize,
    order: usize,
) -> Result<Report, CliError> {
    let fc = context(path, letter, diamond)?;
    let b = fc.target_alphabet().clone();
    let lemmas = check_mirage_lemmas(&fc, order, 4);
    let fmt_failures = |v: &[(shiftcat::words::Word, usize)]| -> Vec<Value> {
        v.iter().map(|(w, k)| json!({"word": b.format(w), "level": k})).collect()
    };
    let tests = ctx.battery(&fc.target, "X'")?;
    let idem = cyclic_idempotents(&fc.target, bound);
    let arrows = connecting_arrows(&fc.target, &idem, 3);
    let mut cases = Vec::new();
    let mut text = String::new();
    let mut all_commute = true;
    for arrow in &arrows {
        let r = verify_naturality(arrow, &fc, &tests)?;
        let verdict = match &r.verdict {
            QuotientVerdict::EqualInAll { tested } => format!("equal in {tested} tests"),
            QuotientVerdict::DistinguishedBy(t) => format!("distinguished by {t}"),
        };
        all_commute &= r.commutes();
        let _ = writeln!(text, "{} [{}] {verdict}", arrow.u.format(&b), r.case);
        cases.push(json!({
            "e": arrow.e.format(&b),
            "u": arrow.u.format(&b),
            "f": arrow.f.format(&b),
            "case": r.case.to_string(),
            "commutes": r.commutes(),
            "verdict": verdict,
        }));
    }
    let passed = lemmas.holds() && all_commute;
    let _ = writeln!(
        text,
        "mirage lemmas: {} words, {}\nnaturality: {} arrows, {}",
        lemmas.words_checked,
        if lemmas.holds() { "hold" } else { "FAIL" },
        arrows.len(),
        if all_commute { "commute" } else { "FAIL" }
    );
    let json = json!({
        "schema": "shiftcat/flowcheck@1",
        "passed": passed,
        "tests": tests.len(),
        "mirage": {
            "max_len": order,
            "words_checked": lemmas.words_checked,
            "expansion_failures": fmt_failures(&lemmas.expansion_failures),
            "contraction_failures": fmt_failures(&lemmas.contraction_failures),
        },
        "idempotents": idem.iter().map(|e| e.format(&b)).collect::<Vec<_>>(),
        "arrows": cases,
    });
    Ok(Report::new("flowcheck", json).text(text).passed(passed))
}

pub fn check(ctx: &Context, suite: &str) -> Result<Report, CliError> {
    let seed = ctx.seed.ok_or_else(|| CliError::usage("check needs --seed"))?;
    let r = run_suite(suite, seed).map_err(|e| match e {
        SuiteError::Unknown(_) => CliError::usage(e.to_string()),
        SuiteError::Setup { .. } => CliError::internal(e),
    })?;
    if !r.passed() {
        for f in &r.failures {
            eprintln!("counterexample: {f}");
        }
    }
    let mut text = r.log.join("\n");
    let _ = write!(text, "\n{}: {} checks, {}\n", r.name, r.checks, if r.passed() { "pass" } else { "FAIL" });
    Ok(Report::new("check", r.to_json()).text(text).passed(r.passed()))
}
