//! Named property suites, run by seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::codes::{compose, higher_block_map, lambda_first_letter, BlockMap};
use crate::corpus;
use crate::flowops::{
    check_mirage_lemmas, classify_word, connecting_arrows, cyclic_idempotents, expand_shift, mirage_words,
    verify_naturality, ExpansionContext, DEFAULT_DIAMOND,
};
use crate::karoubi::{karoubi_vs_lu_comparison, KaroubiCategory, PosetVerdict};
use crate::pseudowords::TestBattery;
use crate::semigroups::{syntactic_semigroup, FiniteSemigroup};
use crate::words::{Alphabet, Letter, Word};

pub const SUITES: &[&str] =
    &["word-code-identities", "mirage-preservation", "flow-naturality", "census-coherence", "karoubi-lu"];

/// Counterexamples kept per suite.
const MAX_FAILURES: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SuiteError {
    #[error("unknown suite {0:?}; known suites: {known}", known = SUITES.join(", "))]
    Unknown(String),
    #[error("suite {suite} could not run: {reason}")]
    Setup { suite: String, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: String,
    pub seed: u64,
    pub checks: usize,
    pub log: Vec<String>,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str, seed: u64) -> Self {
        SuiteReport { name: name.to_string(), seed, checks: 0, log: Vec::new(), failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.failures.len() < MAX_FAILURES {
            self.failures.push(what());
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "schema": "shiftcat/suite-report@1",
            "suite": self.name,
            "seed": self.seed,
            "passed": self.passed(),
            "checks": self.checks,
            "log": self.log,
            "failures": self.failures,
        })
    }
}

pub fn run_suite(name: &str, seed: u64) -> Result<SuiteReport, SuiteError> {
    let setup = |reason: String| SuiteError::Setup { suite: name.to_string(), reason };
    match name {
        "word-code-identities" => Ok(word_code_identities(seed)),
        "mirage-preservation" => mirage_preservation(seed).map_err(setup),
        "flow-naturality" => flow_naturality(seed).map_err(setup),
        "census-coherence" => census_coherence(seed).map_err(setup),
        "karoubi-lu" => karoubi_lu(seed).map_err(setup),
        other => Err(SuiteError::Unknown(other.to_string())),
    }
}

pub fn random_word<R: Rng>(alphabet_size: usize, len: usize, rng: &mut R) -> Word {
    Word::from_letters((0..len).map(|_| Letter(rng.gen_range(0..alphabet_size) as u32)))
}

fn word_code_identities(seed: u64) -> SuiteReport {
    let mut r = SuiteReport::new("word-code-identities", seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ab = Alphabet::from_chars("ab").unwrap();
    for pair in 0..5 {
        let phi = BlockMap::random(ab.clone(), ab.clone(), rng.gen_range(0..3), rng.gen_range(0..3), &mut rng);
        let psi = BlockMap::random(ab.clone(), ab.clone(), rng.gen_range(0..3), rng.gen_range(0..3), &mut rng);
        let (cphi, cpsi) = (phi.centralize(), psi.centralize());
        let lam = compose(&cphi, &cpsi).expect("same alphabet");
        r.log.push(format!("pair {pair}: windows {} and {}, composite wing {}", phi.window(), psi.window(), lam.wing()));
        for _ in 0..2000 {
            let u = random_word(2, rng.gen_range(0..14), &mut rng);
            let v = random_word(2, rng.gen_range(0..8), &mut rng);
            let fmt = |w: &Word| ab.format(w);
            r.check(lam.word_code(&u) == cpsi.word_code(&cphi.word_code(&u)), || format!("composition law on {}", fmt(&u)));
            let uv = u.concat(&v);
            let n = phi.window();
            let one = phi.word_code(&u.concat(&v.prefix((n - 1).min(v.len())))).concat(&phi.word_code(&v));
            r.check(phi.word_code(&uv) == one, || format!("identity I on {} | {}", fmt(&u), fmt(&v)));
            let k = cphi.wing();
            let two = cphi
                .word_code(&u.concat(&v.prefix(k.min(v.len()))))
                .concat(&cphi.word_code(&u.suffix(k.min(u.len())).concat(&v)));
            r.check(cphi.word_code(&uv) == two, || format!("identity II on {} | {}", fmt(&u), fmt(&v)));
        }
    }
    for n in 2..=4 {
        let up = higher_block_map(&ab, n);
        let lam = lambda_first_letter(&ab, n);
        for _ in 0..2000 {
            let u = random_word(2, rng.gen_range(1..12), &mut rng);
            let v = random_word(2, n - 1, &mut rng);
            let back = lam.word_code(&up.word_code(&u.concat(&v)));
            r.check(back == u, || format!("lambda identity, N = {n}, u = {}", ab.format(&u)));
        }
        let words: Vec<Word> = ab.words_of_length(n + 3);
        let mut images: Vec<Word> = words.iter().map(|w| up.word_code(w)).collect();
        images.sort();
        images.dedup();
        r.check(images.len() == words.len(), || format!("higher block code not injective at N = {n}"));
    }
    r.log.push(format!("{} checks", r.checks));
    r
}

fn contexts() -> Result<Vec<(&'static str, ExpansionContext)>, String> {
    let mut out = Vec::new();
    for (name, shift) in [("even", corpus::even()), ("golden", corpus::golden())] {
        let a = shift.alphabet().letter("a").map_err(|e| e.to_string())?;
        out.push((name, expand_shift(&shift, a, DEFAULT_DIAMOND).map_err(|e| e.to_string())?));
    }
    Ok(out)
}

fn mirage_preservation(seed: u64) -> Result<SuiteReport, String> {
    let mut r = SuiteReport::new("mirage-preservation", seed);
    for (name, ctx) in contexts()? {
        let check = check_mirage_lemmas(&ctx, 8, 4);
        r.check(check.expansion_failures.is_empty(), || format!("{name}: E fails on {:?}", check.expansion_failures));
        r.check(check.contraction_failures.is_empty(), || {
            format!("{name}: C fails on {:?}", check.contraction_failures)
        });
        let words = mirage_words(&ctx.target, 12, 2);
        for w in &words {
            let res = classify_word(w, &ctx, 2);
            r.check(res.is_ok(), || format!("{name}: {} unclassified: {res:?}", ctx.target_alphabet().format(w)));
        }
        r.log.push(format!("{name}: {} words for the lemmas, {} classified", check.words_checked, words.len()));
    }
    Ok(r)
}

fn target_battery(ctx: &ExpansionContext, seed: u64) -> Result<TestBattery, String> {
    let syn = syntactic_semigroup(&ctx.target).map_err(|e| e.to_string())?;
    Ok(TestBattery::random(ctx.target_alphabet(), 3, 40, seed).with(TestBattery::syntactic("X'", &syn)))
}

fn flow_naturality(seed: u64) -> Result<SuiteReport, String> {
    let mut r = SuiteReport::new("flow-naturality", seed);
    for (name, ctx) in contexts()? {
        let tests = target_battery(&ctx, seed)?;
        let idem = cyclic_idempotents(&ctx.target, 4);
        let arrows = connecting_arrows(&ctx.target, &idem, 3);
        let b = ctx.target_alphabet();
        for arrow in &arrows {
            match verify_naturality(arrow, &ctx, &tests) {
                Ok(report) => {
                    let line = format!("{name}: {} [{}] {:?}", arrow.u.format(b), report.case, report.verdict);
                    r.check(report.commutes(), || line.clone());
                    r.log.push(line);
                }
                Err(e) => r.check(false, || format!("{name}: {}: {e}", arrow.u.format(b))),
            }
        }
    }
    Ok(r)
}

fn census_coherence(seed: u64) -> Result<SuiteReport, String> {
    let mut r = SuiteReport::new("census-coherence", seed);
    let mut semigroups: Vec<(String, FiniteSemigroup)> = Vec::new();
    for (name, shift) in corpus::all() {
        let syn = syntactic_semigroup(&shift).map_err(|e| e.to_string())?;
        semigroups.push((format!("S({name})"), syn.semigroup().clone()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ab = Alphabet::from_chars("ab").unwrap();
    for i in 0..10 {
        semigroups.push((format!("random#{i}"), FiniteSemigroup::random_transformation(&ab, 40, &mut rng)));
    }
    for (name, s) in &semigroups {
        let k = KaroubiCategory::build(s);
        r.check(k.retraction_order().is_ok(), || format!("{name}: retraction order differs from J-order"));
        match k.iso_class_census() {
            Ok(census) => {
                let total: usize = census.values().sum();
                r.check(total == k.objects().len(), || format!("{name}: census {census:?} misses objects"));
                r.log.push(format!("{name}: size {}, census {census:?}", s.size()));
            }
            Err(e) => r.check(false, || format!("{name}: {e}")),
        }
        for &e in k.objects() {
            let g = s.green();
            let ok = k.automorphism_group(e).map(|a| a.order() == g.h_classes()[g.h_of(e)].len());
            r.check(ok == Ok(true), || format!("{name}: Aut({e}) disagrees with its H-class: {ok:?}"));
        }
    }
    Ok(r)
}

fn karoubi_lu(seed: u64) -> Result<SuiteReport, String> {
    let mut r = SuiteReport::new("karoubi-lu", seed);
    for (name, shift) in corpus::all() {
        let syn = syntactic_semigroup(&shift).map_err(|e| e.to_string())?;
        let s = syn.semigroup();
        let all: Vec<usize> = s.elements().collect();
        for (which, k) in [("accept", syn.accept().to_vec()), ("all", all)] {
            match karoubi_vs_lu_comparison(s, &k) {
                Ok(c) => {
                    let line = format!(
                        "{name}/{which}: {} ({} classes, {} arrows)",
                        c.verdict.name(),
                        c.lu_poset.len(),
                        c.arrow_count
                    );
                    r.check(matches!(c.verdict, PosetVerdict::Iso(_)), || line.clone());
                    r.log.push(line);
                }
                Err(e) => r.check(false, || format!("{name}/{which}: {e}")),
            }
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite() {
        assert!(matches!(run_suite("nope", 1), Err(SuiteError::Unknown(_))));
    }

    #[test]
    fn all_suites_pass() {
        for name in SUITES {
            let r = run_suite(name, 7).unwrap();
            assert!(r.passed(), "{name}: {:?}", r.failures);
            assert!(r.checks > 0);
        }
    }
}
