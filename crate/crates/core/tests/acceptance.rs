//! Acceptance criteria AC-1 to AC-12, one line each.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::Instant;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use shiftcat::codes::{compose, higher_block_map, lambda_first_letter, BlockMap, CentralBlockMap};
use shiftcat::corpus;
use shiftcat::flowops::{
    check_mirage_lemmas, classify_word, connecting_arrows, cyclic_idempotents, expand_shift, mirage_words,
    verify_naturality, ExpansionContext, FlowType, DEFAULT_DIAMOND,
};
use shiftcat::karoubi::{
    induced_on_arrow, induced_on_idempotent, karoubi_vs_lu_comparison, lu_labeled_poset, poset_isomorphic,
    KaroubiCategory, PosetVerdict, TermArrow,
};
use shiftcat::pseudowords::{OmegaTerm, TestBattery};
use shiftcat::semigroups::{syntactic_semigroup, FiniteSemigroup};
use shiftcat::shifts::Shift;
use shiftcat::words::{Alphabet, Letter, Word};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

// Boolean transfer matrices, built from hand-written edge lists.

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
struct BoolMat(Vec<Vec<bool>>);

impl BoolMat {
    fn mul(&self, o: &BoolMat) -> BoolMat {
        let n = self.0.len();
        BoolMat((0..n).map(|i| (0..n).map(|j| (0..n).any(|k| self.0[i][k] && o.0[k][j])).collect()).collect())
    }

    fn nonzero(&self) -> bool {
        self.0.iter().any(|r| r.iter().any(|&x| x))
    }

    fn omega(&self) -> BoolMat {
        let mut powers = vec![self.clone()];
        loop {
            let next = powers.last().unwrap().mul(self);
            if let Some(i) = powers.iter().position(|m| *m == next) {
                return powers[i..].iter().find(|m| m.mul(m) == **m).expect("idempotent in cycle").clone();
            }
            powers.push(next);
        }
    }
}

fn letter_matrices(vertices: usize, edges: &[(usize, char, usize)]) -> HashMap<char, BoolMat> {
    let mut out: HashMap<char, BoolMat> = HashMap::new();
    for &(s, c, d) in edges {
        out.entry(c).or_insert_with(|| BoolMat(vec![vec![false; vertices]; vertices])).0[s][d] = true;
    }
    out
}

fn word_matrix(m: &HashMap<char, BoolMat>, w: &str) -> BoolMat {
    let mut it = w.chars();
    let first = m[&it.next().unwrap()].clone();
    it.fold(first, |acc, c| acc.mul(&m[&c]))
}

/// `ω`-term given as (word, power?) pieces with `u^(ω+q)` as `(u, Some(q))`.
fn eval_term(m: &HashMap<char, BoolMat>, pieces: &[(&str, Option<u32>)]) -> BoolMat {
    let mut acc: Option<BoolMat> = None;
    for &(w, p) in pieces {
        let base = word_matrix(m, w);
        let x = match p {
            None => base,
            Some(q) => (0..q).fold(base.omega(), |a, _| a.mul(&base)),
        };
        acc = Some(match acc {
            None => x,
            Some(a) => a.mul(&x),
        });
    }
    acc.unwrap()
}

fn ac1() -> Outcome {
    let x = corpus::four_letter();
    let syn = syntactic_semigroup(&x).map_err(|e| e.to_string())?;
    let a = x.alphabet();
    let v = OmegaTerm::parse(a, "(a)^w b (a)^w c (a)^w").unwrap();
    let cv = OmegaTerm::parse(a, "c (a)^w b (a)^w c (a)^w").unwrap();
    let got = (v.closure_membership(&syn).unwrap(), cv.closure_membership(&syn).unwrap());
    let m = letter_matrices(3, &[(0, 'a', 0), (1, 'a', 1), (2, 'a', 2), (0, 'b', 1), (1, 'c', 2), (2, 'd', 0)]);
    let oracle = (
        eval_term(&m, &[("a", Some(0)), ("b", None), ("a", Some(0)), ("c", None), ("a", Some(0))]).nonzero(),
        eval_term(&m, &[("c", None), ("a", Some(0)), ("b", None), ("a", Some(0)), ("c", None), ("a", Some(0))])
            .nonzero(),
    );
    ensure(got == (true, false) && oracle == got, || format!("got {got:?}, oracle {oracle:?}"))?;
    Ok(format!("v in closure, c.v not; |S(X)| = {}", syn.semigroup().size()))
}

fn ac2() -> Outcome {
    let x = corpus::even();
    let syn = syntactic_semigroup(&x).map_err(|e| e.to_string())?;
    let a = x.alphabet();
    let p = |s: &str| OmegaTerm::parse(a, s).unwrap();
    let tests = TestBattery::new().with(TestBattery::syntactic("even", &syn));
    let s = TermArrow::new(p("(a)^w"), p("(a)^w (b)^w"), p("(b)^w"), &tests).map_err(|e| e.to_string())?;
    let t = TermArrow::new(p("(b)^w"), p("(b)^(w+1) (a)^w"), p("(a)^w"), &tests).map_err(|e| e.to_string())?;
    let st = s.then(&t, &tests).map_err(|e| e.to_string())?;
    let got = [
        s.u.closure_membership(&syn).unwrap(),
        t.u.closure_membership(&syn).unwrap(),
        st.u.closure_membership(&syn).unwrap(),
    ];
    let m = letter_matrices(2, &[(0, 'a', 0), (0, 'b', 1), (1, 'b', 0)]);
    let oracle = [
        eval_term(&m, &[("a", Some(0)), ("b", Some(0))]).nonzero(),
        eval_term(&m, &[("b", Some(1)), ("a", Some(0))]).nonzero(),
        eval_term(&m, &[("a", Some(0)), ("b", Some(1)), ("a", Some(0))]).nonzero(),
    ];
    ensure(got == [true, true, false] && got == oracle, || format!("got {got:?}, oracle {oracle:?}"))?;
    ensure(st.u.canonical_eq(&p("(a)^w (b)^(w+1) (a)^w")), || format!("s.t middle {}", st.u.format(a)))?;
    Ok(format!("s, t in closure; s.t = {} is not", st.u.format(a)))
}

fn random_word<R: Rng>(size: usize, len: usize, rng: &mut R) -> Word {
    Word::from_letters((0..len).map(|_| Letter(rng.gen_range(0..size) as u32)))
}

fn ac3() -> Outcome {
    let a = Alphabet::from_chars("abc").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut count = 0;
    for n in 2..=4 {
        let up = higher_block_map(&a, n);
        let lam = lambda_first_letter(&a, n);
        for _ in 0..10_000 {
            let u = random_word(3, rng.gen_range(1..16), &mut rng);
            let v = random_word(3, n - 1, &mut rng);
            let back = lam.word_code(&up.word_code(&u.concat(&v)));
            ensure(back == u, || format!("N = {n}: u = {}, v = {}", a.format(&u), a.format(&v)))?;
            count += 1;
        }
    }
    Ok(format!("{count} pairs"))
}

/// Windowed images by the definition, from single-window lookups.
fn naive_code(phi: &BlockMap, u: &Word) -> Word {
    let n = phi.window();
    if u.len() < n {
        return Word::empty();
    }
    Word::from_letters((0..=u.len() - n).map(|i| phi.apply(&u.letters()[i..i + n])))
}

fn ac4() -> Outcome {
    let a = Alphabet::from_chars("ab").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut count = 0;
    for pair in 0..5 {
        let phi = BlockMap::random(a.clone(), a.clone(), rng.gen_range(0..3), rng.gen_range(0..3), &mut rng);
        let psi = BlockMap::random(a.clone(), a.clone(), rng.gen_range(0..3), rng.gen_range(0..3), &mut rng);
        let (cphi, cpsi) = (phi.centralize(), psi.centralize());
        let lam: CentralBlockMap = compose(&cphi, &cpsi).map_err(|e| e.to_string())?;
        ensure(lam.wing() == cphi.wing() + cpsi.wing(), || format!("pair {pair}: composite wing"))?;
        let (bphi, bpsi, blam) = (cphi.block_map(), cpsi.block_map(), lam.block_map());
        for _ in 0..10_000 {
            let u = random_word(2, rng.gen_range(0..16), &mut rng);
            let v = random_word(2, rng.gen_range(0..10), &mut rng);
            let f = |w: &Word| a.format(w);
            ensure(naive_code(blam, &u) == naive_code(bpsi, &naive_code(bphi, &u)), || {
                format!("pair {pair}: composition law fails on {}", f(&u))
            })?;
            ensure(phi.word_code(&u) == naive_code(&phi, &u), || format!("pair {pair}: word code on {}", f(&u)))?;
            let uv = u.concat(&v);
            let n = phi.window();
            let one = naive_code(&phi, &u.concat(&v.prefix((n - 1).min(v.len())))).concat(&naive_code(&phi, &v));
            ensure(naive_code(&phi, &uv) == one, || format!("pair {pair}: identity I on {} {}", f(&u), f(&v)))?;
            let k = cphi.wing();
            let two = naive_code(bphi, &u.concat(&v.prefix(k.min(v.len()))))
                .concat(&naive_code(bphi, &u.suffix(k.min(u.len())).concat(&v)));
            ensure(naive_code(bphi, &uv) == two, || format!("pair {pair}: identity II on {} {}", f(&u), f(&v)))?;
            ensure(lam.word_code(&u) == cpsi.word_code(&cphi.word_code(&u)), || {
                format!("pair {pair}: library composition on {}", f(&u))
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} words over 5 pairs"))
}

fn ac5() -> Outcome {
    let mut arrows_checked = 0;
    let mut pairs_checked = 0;
    for (name, x) in [("golden", corpus::golden()), ("even", corpus::even())] {
        let up = higher_block_map(x.alphabet(), 2).centralize();
        let wide = up.widen(2);
        let y = up.apply_to_shift(&x).map_err(|e| e.to_string())?;
        let sx = syntactic_semigroup(&x).map_err(|e| e.to_string())?;
        let sy = syntactic_semigroup(&y).map_err(|e| e.to_string())?;
        let src = TestBattery::new().with(TestBattery::syntactic(name, &sx));
        let dst = TestBattery::new().with(TestBattery::syntactic("image", &sy));
        let idem = cyclic_idempotents(&x, 4);
        let arrows = connecting_arrows(&x, &idem, 3);
        let fmt = |t: &OmegaTerm| t.format(x.alphabet());
        let mut images = HashMap::new();
        for arrow in &arrows {
            let img = induced_on_arrow(&up, arrow, &src).map_err(|e| e.to_string())?;
            let other = induced_on_arrow(&wide, arrow, &src).map_err(|e| e.to_string())?;
            ensure(img.quotient_eq(&other, &dst).unwrap(), || format!("{name}: wing dependence at {}", fmt(&arrow.u)))?;
            img.validate(&dst).map_err(|e| format!("{name}: image of {} invalid: {e}", fmt(&arrow.u)))?;
            images.insert((fmt(&arrow.e), fmt(&arrow.f)), (arrow.clone(), img));
            arrows_checked += 1;
        }
        for e in &idem {
            let id = induced_on_arrow(&up, &TermArrow::identity(e.clone()), &src).map_err(|e| e.to_string())?;
            let fe = induced_on_idempotent(&up, e).map_err(|e| e.to_string())?;
            ensure(id.quotient_eq(&TermArrow::identity(fe), &dst).unwrap(), || format!("{name}: identity at {}", fmt(e)))?;
        }
        for ((e1, f1), (s, fs)) in &images {
            for ((e2, f2), (r, fr)) in &images {
                if f1 != e2 {
                    continue;
                }
                let sr = s.then(r, &src).map_err(|e| e.to_string())?;
                let fsr = induced_on_arrow(&up, &sr, &src).map_err(|e| e.to_string())?;
                let composed = fs.then(fr, &dst).map_err(|e| e.to_string())?;
                ensure(fsr.quotient_eq(&composed, &dst).unwrap(), || {
                    format!("{name}: composition {e1} -> {f1} -> {f2}")
                })?;
                pairs_checked += 1;
            }
        }
    }
    Ok(format!("{arrows_checked} arrows, {pairs_checked} composable pairs"))
}

/// Coefficients of `1/det(I - tA)` to order `n`, with the determinant
/// expanded over permutations.
fn inverse_char_series(a: &[Vec<i64>], n: usize) -> Vec<BigInt> {
    let d = a.len();
    fn perms(k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(k - 1) {
            for i in 0..=p.len() {
                let mut q = p.clone();
                q.insert(i, k - 1);
                out.push(q);
            }
        }
        out
    }
    let mut det = vec![0i64; d + 1];
    for p in perms(d) {
        let inversions = (0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        let mut poly = vec![sign];
        for (i, &j) in p.iter().enumerate() {
            let entry = [i64::from(i == j), -a[i][j]];
            let mut next = vec![0; poly.len() + 1];
            for (x, &c) in poly.iter().enumerate() {
                next[x] += c * entry[0];
                next[x + 1] += c * entry[1];
            }
            poly = next;
        }
        for (x, c) in poly.into_iter().enumerate() {
            det[x] += c;
        }
    }
    let mut inv: Vec<BigInt> = vec![BigInt::from(1)];
    for k in 1..=n {
        let mut c = BigInt::from(0);
        for j in 1..=k.min(d) {
            c -= BigInt::from(det[j]) * &inv[k - j];
        }
        inv.push(c);
    }
    inv
}

fn ac6() -> Outcome {
    let z = corpus::golden().zeta(12).map_err(|e| e.to_string())?;
    let got = z.integer_coefficients();
    let oracle = inverse_char_series(&[vec![1, 1], vec![1, 0]], 12);
    ensure(got == oracle, || format!("{got:?} vs {oracle:?}"))?;
    let mut orders = Vec::new();
    for (name, x) in corpus::all() {
        let z = x.zeta(12).map_err(|e| format!("{name}: {e}"))?;
        orders.push(format!("{name}:{}", z.order()));
    }
    let shown: Vec<String> = got.iter().map(|c| c.to_string()).collect();
    Ok(format!("golden [{}]; integral for {}", shown.join(","), orders.join(" ")))
}

fn is_primitive_naive(w: &[u8]) -> bool {
    let n = w.len();
    (1..n).filter(|d| n.is_multiple_of(*d)).all(|d| (0..n).any(|i| w[i] != w[(i + d) % n]))
}

/// Cyclic admissibility by the defining rules of each shift.
fn cyclic_ok(name: &str, w: &[u8]) -> bool {
    let n = w.len();
    match name {
        "full2" => true,
        "golden" => (0..n).all(|i| !(w[i] == 1 && w[(i + 1) % n] == 1)),
        "even" => {
            let Some(start) = w.iter().position(|&c| c == 0) else {
                return true;
            };
            let mut run = 0;
            for i in 1..=n {
                if w[(start + i) % n] == 1 {
                    run += 1;
                } else {
                    if run % 2 == 1 {
                        return false;
                    }
                    run = 0;
                }
            }
            true
        }
        _ => unreachable!(),
    }
}

fn mobius(n: u64) -> i64 {
    let (mut m, mut k, mut out) = (n, 2, 1);
    while k * k <= m {
        if m % k == 0 {
            m /= k;
            if m % k == 0 {
                return 0;
            }
            out = -out;
        }
        k += 1;
    }
    if m > 1 {
        out = -out;
    }
    out
}

fn ac7() -> Outcome {
    let mut parts = Vec::new();
    for name in ["golden", "even", "full2"] {
        let x = corpus::by_name(name).unwrap();
        let counts = x.periodic_counts(12).map_err(|e| e.to_string())?;
        for n in 1..=12usize {
            let direct = (0..1u32 << n)
                .map(|bits| (0..n).map(|i| ((bits >> i) & 1) as u8).collect::<Vec<u8>>())
                .filter(|w| is_primitive_naive(w) && cyclic_ok(name, w))
                .count() as i64;
            let inverted: i64 = (1..=n as u64)
                .filter(|d| (n as u64).is_multiple_of(*d))
                .map(|d| mobius(n as u64 / d) * counts.p[d as usize - 1] as i64)
                .sum();
            ensure(inverted == direct && counts.q[n - 1] as i64 == direct, || {
                format!("{name}, n = {n}: inverted {inverted}, library q {}, direct {direct}", counts.q[n - 1])
            })?;
        }
        parts.push(format!("{name} q12={}", counts.q[11]));
    }
    Ok(parts.join(", "))
}

/// Green classes from principal ideals computed by definition.
fn ac8() -> Outcome {
    let syn = syntactic_semigroup(&corpus::periodic_ab()).map_err(|e| e.to_string())?;
    let s = syn.semigroup();
    let n = s.size();
    let ab = s.eval_word(&s.alphabet().parse_word("ab").unwrap()).unwrap();
    let mut x = ab;
    while s.mul(x, x) != x {
        x = s.mul(x, ab);
    }
    let right = |y: usize| -> BTreeSet<usize> { std::iter::once(y).chain((0..n).map(|z| s.mul(y, z))).collect() };
    let left = |y: usize| -> BTreeSet<usize> { std::iter::once(y).chain((0..n).map(|z| s.mul(z, y))).collect() };
    let two = |y: usize| -> BTreeSet<usize> {
        let mut out = right(y);
        for r in right(y) {
            out.extend(left(r));
        }
        out
    };
    let jx = two(x);
    let class: Vec<usize> = (0..n).filter(|&y| two(y) == jx).collect();
    let rs: BTreeSet<_> = class.iter().map(|&y| right(y)).collect();
    let ls: BTreeSet<_> = class.iter().map(|&y| left(y)).collect();
    let hs: BTreeSet<_> = class.iter().map(|&y| (right(y), left(y))).collect();
    let idem = class.iter().filter(|&&y| s.mul(y, y) == y).count();
    let got = (rs.len(), ls.len(), hs.len(), idem);
    ensure(got == (2, 2, 4, 2), || format!("oracle gives R, L, H, E = {got:?}"))?;
    let g = s.green();
    let j = g.j_of(s.omega_power(ab));
    let lib = (g.r_classes_in(j).len(), g.l_classes_in(j).len(), g.h_classes_in(j).len());
    ensure(lib == (2, 2, 4) && g.j_classes()[j] == class, || format!("library gives {lib:?}"))?;
    Ok(format!("J-class of size {}: 2 R, 2 L, 4 H, 2 idempotents", class.len()))
}

fn even_context() -> Result<ExpansionContext, String> {
    let x = corpus::even();
    let a = x.alphabet().letter("a").unwrap();
    expand_shift(&x, a, DEFAULT_DIAMOND).map_err(|e| e.to_string())
}

fn ac9() -> Outcome {
    let ctx = even_context()?;
    let (alpha, dia) = (ctx.alpha(), ctx.diamond());
    let check = check_mirage_lemmas(&ctx, 10, 4);
    ensure(check.holds(), || format!("library lemma check: {check:?}"))?;
    let factors_blocks = |shift: &Shift, w: &Word, k: usize| {
        let l = w.letters();
        (0..l.len()).all(|i| (i + 1..=(i + k).min(l.len())).all(|j| shift.is_block(&Word(l[i..j].to_vec()))))
    };
    let expand = |w: &Word| Word::from_letters(w.iter().flat_map(|&l| if l == alpha { vec![l, dia] } else { vec![l] }));
    let contract = |w: &Word| Word::from_letters(w.iter().copied().filter(|&l| l != dia));
    let mut words = 0;
    for u in ctx.source_alphabet().words_up_to(10) {
        if u.is_empty() {
            continue;
        }
        for k in 1..=4 {
            if factors_blocks(&ctx.source, &u, k) {
                ensure(factors_blocks(&ctx.target, &expand(&u), k), || format!("E fails at k = {k}"))?;
            }
        }
        words += 1;
    }
    for w in ctx.target_alphabet().words_up_to(10) {
        if w.is_empty() || w == Word::letter(dia) {
            continue;
        }
        for k in 1..=4 {
            if factors_blocks(&ctx.target, &w, 2 * k) {
                let c = contract(&w);
                ensure(!c.is_empty() && factors_blocks(&ctx.source, &c, k), || format!("C fails at k = {k}"))?;
            }
        }
        words += 1;
    }
    // preimage search for Im E
    let in_image = |v: &[Letter]| -> bool {
        let w = Word(v.to_vec());
        let c = contract(&w);
        !c.is_empty() && expand(&c) == w
    };
    let mut classified = 0;
    for w in mirage_words(&ctx.target, 10, 2) {
        let l = w.letters();
        let n = l.len();
        let mut types = Vec::new();
        if n == 1 && (l[0] == alpha || l[0] == dia) {
            types.push(FlowType::Letter);
        }
        if in_image(l) {
            types.push(FlowType::ImageE);
        }
        if n >= 2 && l[0] == dia && in_image(&l[1..]) {
            types.push(FlowType::DiamondImageE);
        }
        if n >= 2 && l[n - 1] == alpha && in_image(&l[..n - 1]) {
            types.push(FlowType::ImageEAlpha);
        }
        if n >= 2 && l[0] == dia && l[n - 1] == alpha && (n == 2 || in_image(&l[1..n - 1])) {
            types.push(FlowType::DiamondImageEAlpha);
        }
        let got = classify_word(&w, &ctx, 2);
        ensure(types.len() == 1 && got == Ok(types[0]), || {
            format!("{}: oracle {types:?}, library {got:?}", ctx.target_alphabet().format(&w))
        })?;
        classified += 1;
    }
    Ok(format!("{words} words for E/C at k <= 4, {classified} mirage words classified uniquely"))
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

/// Compares `value` with the archived file, writing it when absent or when
/// `UPDATE_GOLDEN` is set.
fn golden(name: &str, value: &serde_json::Value) -> Result<(), String> {
    let path = golden_dir().join(name);
    let text = serde_json::to_string_pretty(value).unwrap() + "\n";
    if std::env::var_os("UPDATE_GOLDEN").is_some() || !path.exists() {
        std::fs::create_dir_all(golden_dir()).map_err(|e| e.to_string())?;
        std::fs::write(&path, text).map_err(|e| e.to_string())?;
        return Ok(());
    }
    let old = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
    ensure(old == text, || format!("{} differs from the archived report", path.display()))
}

fn ac10() -> Outcome {
    let ctx = even_context()?;
    let sx = syntactic_semigroup(&ctx.source).map_err(|e| e.to_string())?;
    let sy = syntactic_semigroup(&ctx.target).map_err(|e| e.to_string())?;
    let tests = TestBattery::random(ctx.target_alphabet(), 3, 40, 10).with(TestBattery::syntactic("X'", &sy));
    let idem = cyclic_idempotents(&ctx.target, 4);
    let arrows = connecting_arrows(&ctx.target, &idem, 3);
    let mut cases: BTreeMap<String, usize> = BTreeMap::new();
    for arrow in &arrows {
        let report = verify_naturality(arrow, &ctx, &tests).map_err(|e| e.to_string())?;
        ensure(report.commutes(), || {
            format!("{} [{}]: {:?}", arrow.u.format(ctx.target_alphabet()), report.case, report.verdict)
        })?;
        *cases.entry(report.case.to_string()).or_insert(0) += 1;
    }
    let p = lu_labeled_poset(sx.semigroup(), sx.accept());
    let q = lu_labeled_poset(sy.semigroup(), sy.accept());
    let verdict = poset_isomorphic(&p, &q).map_err(|e| e.to_string())?;
    let report = serde_json::json!({
        "schema": "shiftcat/lu-comparison@1",
        "source": "even",
        "target": "even expanded at a",
        "verdict": verdict.name(),
        "source_poset": p.to_json(),
        "target_poset": q.to_json(),
    });
    golden("ac10_lu_posets.json", &report)?;
    ensure(verdict.is_iso_or_invariant_equal(), || format!("LU posets: {verdict:?}"))?;
    Ok(format!(
        "{} idempotents, {} arrows commute {cases:?}; LU posets {} ({} classes)",
        idem.len(),
        arrows.len(),
        verdict.name(),
        p.len()
    ))
}

/// Lucas numbers `trace(A^n)` for the golden mean matrix.
fn lucas(n: usize) -> Vec<u64> {
    let mut out = vec![1u64, 3];
    while out.len() < n {
        let k = out.len();
        out.push(out[k - 1] + out[k - 2]);
    }
    out.truncate(n);
    out
}

fn ac11() -> Outcome {
    let x = corpus::golden();
    let base = x.periodic_counts(10).map_err(|e| e.to_string())?;
    ensure(base.p == lucas(10), || format!("golden p {:?}", base.p))?;
    for n in [2, 3] {
        let y = higher_block_map(x.alphabet(), n).centralize().apply_to_shift(&x).map_err(|e| e.to_string())?;
        let c = y.periodic_counts(10).map_err(|e| e.to_string())?;
        ensure(c == base, || format!("recoding with N = {n}: {c:?}"))?;
    }
    Ok(format!("p = {:?}", base.p))
}

/// Arrow J-classes with middle in `k`, from principal ideals in `K(S)`.
fn arrow_class_count(s: &FiniteSemigroup, k: &[usize]) -> usize {
    let cat = KaroubiCategory::build(s);
    let objs = cat.objects().to_vec();
    let hom: HashMap<(usize, usize), Vec<usize>> =
        objs.iter().flat_map(|&e| objs.iter().map(move |&f| (e, f))).map(|(e, f)| ((e, f), cat.hom(e, f).unwrap())).collect();
    let ideal = |e: usize, u: usize, f: usize| -> BTreeSet<(usize, usize, usize)> {
        let mut out = BTreeSet::new();
        for &e2 in &objs {
            for &f2 in &objs {
                for &a in &hom[&(e2, e)] {
                    let au = s.mul(a, u);
                    for &b in &hom[&(f, f2)] {
                        out.insert((e2, s.mul(au, b), f2));
                    }
                }
            }
        }
        out
    };
    let mut classes = BTreeSet::new();
    for &e in &objs {
        for &f in &objs {
            for &u in &hom[&(e, f)] {
                if k.contains(&u) {
                    classes.insert(ideal(e, u, f));
                }
            }
        }
    }
    classes.len()
}

fn ac12() -> Outcome {
    let mut parts = Vec::new();
    for (name, x) in corpus::all() {
        let syn = syntactic_semigroup(&x).map_err(|e| e.to_string())?;
        let s = syn.semigroup();
        ensure(s.size() <= 60, || format!("{name}: size {}", s.size()))?;
        let all: Vec<usize> = s.elements().collect();
        for (which, k) in [("accept", syn.accept().to_vec()), ("all", all)] {
            let c = karoubi_vs_lu_comparison(s, &k).map_err(|e| format!("{name}/{which}: {e}"))?;
            ensure(matches!(c.verdict, PosetVerdict::Iso(_)), || format!("{name}/{which}: {:?}", c.verdict))?;
            let oracle = arrow_class_count(s, &k);
            ensure(oracle == c.arrow_poset.len(), || {
                format!("{name}/{which}: {} arrow classes, oracle {oracle}", c.arrow_poset.len())
            })?;
            let direct = poset_isomorphic(&c.arrow_poset, &c.lu_poset).map_err(|e| e.to_string())?;
            ensure(matches!(direct, PosetVerdict::Iso(_)), || format!("{name}/{which}: search gives {direct:?}"))?;
        }
        parts.push(format!("{name}:{}", s.size()));
    }
    Ok(format!("Iso for {}", parts.join(" ")))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("AC-1", ac1),
        ("AC-2", ac2),
        ("AC-3", ac3),
        ("AC-4", ac4),
        ("AC-5", ac5),
        ("AC-6", ac6),
        ("AC-7", ac7),
        ("AC-8", ac8),
        ("AC-9", ac9),
        ("AC-10", ac10),
        ("AC-11", ac11),
        ("AC-12", ac12),
    ];
    let mut failed = 0;
    for (id, run) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".to_string()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("{id} PASS ({secs:.1}s) {detail}"),
            Err(detail) => {
                failed += 1;
                println!("{id} FAIL ({secs:.1}s) {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
