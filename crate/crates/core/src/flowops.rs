//! Symbol expansion and the flow functors between Karoubi envelopes.

use std::fmt;

use thiserror::Error;

use crate::karoubi::{KaroubiError, TermArrow};
use crate::pseudowords::{
    image_e_membership, quotient_equal, strip_boundary, term_contract, term_expand, term_in_image_e, FlowLetters,
    OmegaTerm, PseudoError, QuotientVerdict, TestBattery,
};
use crate::shifts::{Edge, LabeledGraph, Shift, ShiftError};
use crate::words::{Alphabet, Letter, Word, WordError};

/// Default symbol for the fresh letter.
pub const DEFAULT_DIAMOND: &str = "o";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FlowError {
    #[error("not in the mirage at level 2 of the expanded shift")]
    NotInMirage2,
    #[error("invalid arrow: {0}")]
    InvalidArrow(String),
    #[error("a component consists of the fresh letter only")]
    DiamondOnly,
    #[error("not an idempotent witness")]
    NotIdempotentWitness,
    #[error("classification failed: {0}")]
    ClassificationFailure(String),
    #[error("symbol {0:?} already belongs to the alphabet")]
    DiamondInAlphabet(String),
    #[error("expansion check failed: {0}")]
    CharacterizationFailure(String),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Shift(#[from] ShiftError),
    #[error(transparent)]
    Pseudo(#[from] PseudoError),
}

impl From<KaroubiError> for FlowError {
    fn from(e: KaroubiError) -> Self {
        match e {
            KaroubiError::Pseudo(p) => FlowError::Pseudo(p),
            other => FlowError::InvalidArrow(other.to_string()),
        }
    }
}

/// A shift `X` over `A`, a letter `α`, and the expansion `X′` over
/// `B = A ∪ {◊}`.
#[derive(Debug, Clone)]
pub struct ExpansionContext {
    pub source: Shift,
    pub target: Shift,
    pub letters: FlowLetters,
}

/// Splits every `α`-edge `s → d` into `s →α m →◊ d` with a fresh `m`.
pub fn expand_shift(source: &Shift, alpha: Letter, diamond: &str) -> Result<ExpansionContext, FlowError> {
    let a = source.alphabet();
    if a.contains(diamond) {
        return Err(FlowError::DiamondInAlphabet(diamond.to_string()));
    }
    let b = a.extended(diamond)?;
    let dia = Letter(a.len() as u32);
    let g = source.graph();
    let mut names = source.vertex_names().to_vec();
    let mut edges = Vec::new();
    for e in g.edges() {
        if e.label == alpha {
            let mid = names.len();
            names.push(format!("{}>{}#{}", source.vertex_names()[e.src], source.vertex_names()[e.dst], mid));
            edges.push(Edge { src: e.src, label: alpha, dst: mid });
            edges.push(Edge { src: mid, label: dia, dst: e.dst });
        } else {
            edges.push(*e);
        }
    }
    let graph = LabeledGraph::new(names.len(), b.len(), edges);
    let target = Shift::from_graph(b, graph, names)?;
    let ctx = ExpansionContext { source: source.clone(), target, letters: FlowLetters { alpha, diamond: dia } };
    ctx.check_characterization(6)?;
    Ok(ctx)
}

impl ExpansionContext {
    pub fn alpha(&self) -> Letter {
        self.letters.alpha
    }

    pub fn diamond(&self) -> Letter {
        self.letters.diamond
    }

    pub fn source_alphabet(&self) -> &Alphabet {
        self.source.alphabet()
    }

    pub fn target_alphabet(&self) -> &Alphabet {
        self.target.alphabet()
    }

    pub fn expand(&self, w: &Word) -> Word {
        self.letters.expand_word(w)
    }

    pub fn contract(&self, w: &Word) -> Word {
        self.letters.contract_word(w)
    }

    /// `E` maps blocks of `X` of length at most `len` to blocks of `X′`, and
    /// blocks of `X′` in `Im E` of length at most `len` contract to blocks
    /// of `X`.
    pub fn check_characterization(&self, len: usize) -> Result<(), FlowError> {
        for u in self.source.blocks(len) {
            if !self.target.is_block(&self.expand(&u)) {
                let s = self.source_alphabet().format(&u);
                return Err(FlowError::CharacterizationFailure(format!("E({s}) is not a block")));
            }
        }
        for w in self.target.blocks(len) {
            if image_e_membership(&w, self.letters) && !self.source.is_block(&self.contract(&w)) {
                let s = self.target_alphabet().format(&w);
                return Err(FlowError::CharacterizationFailure(format!("C({s}) is not a block")));
            }
        }
        Ok(())
    }
}

/// The five shapes of a word in the level-2 mirage of `X′`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FlowType {
    /// `α` or `◊`.
    Letter,
    /// `v ∈ Im E`.
    ImageE,
    /// `◊v`, `v ∈ Im E`.
    DiamondImageE,
    /// `vα`, `v ∈ Im E`.
    ImageEAlpha,
    /// `◊vα`, `v ∈ Im E ∪ {ε}`.
    DiamondImageEAlpha,
}

impl fmt::Display for FlowType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FlowType::Letter => "letter",
            FlowType::ImageE => "E",
            FlowType::DiamondImageE => "oE",
            FlowType::ImageEAlpha => "E.alpha",
            FlowType::DiamondImageEAlpha => "oE.alpha",
        };
        f.write_str(s)
    }
}

/// The predicates of the five types, each tested on its own.
fn type_predicates(w: &Word, fl: FlowLetters) -> [(FlowType, bool); 5] {
    let l = w.letters();
    let n = l.len();
    let im = |v: &[Letter]| image_e_membership(&Word(v.to_vec()), fl);
    let starts = n >= 1 && l[0] == fl.diamond;
    let ends = n >= 1 && l[n - 1] == fl.alpha;
    [
        (FlowType::Letter, n == 1 && (l[0] == fl.alpha || l[0] == fl.diamond)),
        (FlowType::ImageE, im(l)),
        (FlowType::DiamondImageE, starts && n >= 2 && im(&l[1..])),
        (FlowType::ImageEAlpha, ends && n >= 2 && im(&l[..n - 1])),
        (FlowType::DiamondImageEAlpha, starts && ends && n >= 2 && (n == 2 || im(&l[1..n - 1]))),
    ]
}

/// The type of a word; every other type is checked to fail.
pub fn classify_word(w: &Word, ctx: &ExpansionContext, k: usize) -> Result<FlowType, FlowError> {
    if w.is_empty() || !ctx.target.mirage_membership_k(w, k.max(2)) {
        return Err(FlowError::NotInMirage2);
    }
    let hits: Vec<FlowType> =
        type_predicates(w, ctx.letters).iter().filter(|(_, ok)| *ok).map(|(t, _)| *t).collect();
    match hits.as_slice() {
        [t] => Ok(*t),
        _ => Err(FlowError::ClassificationFailure(format!(
            "{} matches {hits:?}",
            ctx.target_alphabet().format(w)
        ))),
    }
}

/// The type of a term, read on its `M(2)` unfolding, which keeps the first
/// and last letters and every length-2 factor.
pub fn classify_term(t: &OmegaTerm, ctx: &ExpansionContext, k: usize) -> Result<FlowType, FlowError> {
    if t.is_empty() || !t.in_mirage(&ctx.target, k.max(2)) {
        return Err(FlowError::NotInMirage2);
    }
    if let Some(w) = t.as_word() {
        return classify_word(&w, ctx, k);
    }
    classify_word(&t.unfold(t.unfolding_exponent(k.max(2))), ctx, k)
}

/// `F(e,u,f) = (E(e), E(u), E(f))`, after checking the arrow.
pub fn functor_f(arrow: &TermArrow, ctx: &ExpansionContext, source_tests: &TestBattery) -> Result<TermArrow, FlowError> {
    arrow.validate(source_tests)?;
    let fl = ctx.letters;
    Ok(TermArrow { e: term_expand(&arrow.e, fl), u: term_expand(&arrow.u, fl), f: term_expand(&arrow.f, fl) })
}

/// `G(e,u,f) = (C(e), C(u), C(f))`.
pub fn functor_g(arrow: &TermArrow, ctx: &ExpansionContext) -> Result<TermArrow, FlowError> {
    let c = |t: &OmegaTerm| match term_contract(t, ctx.letters) {
        Err(PseudoError::EmptyResult) => Err(FlowError::DiamondOnly),
        other => other.map_err(FlowError::from),
    };
    Ok(TermArrow { e: c(&arrow.e)?, u: c(&arrow.u)?, f: c(&arrow.f)? })
}

/// `η_e` and its inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Eta {
    pub arrow: TermArrow,
    pub inverse: TermArrow,
    /// `e ∈ Im E`.
    pub in_image: bool,
}

/// `η_e: e → FG(e)`: `(e, e, e)` when `e ∈ Im E`, otherwise
/// `(e, e◊, e′α◊)` with `e = ◊e′α`, inverse `(e′α◊, e′αe, e)`.
pub fn eta(e: &OmegaTerm, ctx: &ExpansionContext, tests: &TestBattery) -> Result<Eta, FlowError> {
    if !tests.idempotent_in_all(e)? {
        return Err(FlowError::NotIdempotentWitness);
    }
    let fl = ctx.letters;
    if term_in_image_e(e, fl) {
        let id = TermArrow::identity(e.clone());
        return Ok(Eta { arrow: id.clone(), inverse: id, in_image: true });
    }
    match classify_term(e, ctx, 2)? {
        FlowType::DiamondImageEAlpha => {}
        other => {
            let s = e.format(ctx.target_alphabet());
            return Err(FlowError::ClassificationFailure(format!("idempotent {s} has type {other}")));
        }
    }
    let inner = strip_boundary(e)?;
    let alpha_dia = Word(vec![fl.alpha, fl.diamond]);
    let split = inner.concat_word(&alpha_dia).canonical();
    let arrow = TermArrow { e: e.clone(), u: e.concat_word(&Word::letter(fl.diamond)).canonical(), f: split.clone() };
    let inverse = TermArrow {
        e: split,
        u: inner.concat_word(&Word::letter(fl.alpha)).concat(e).canonical(),
        f: e.clone(),
    };
    Ok(Eta { arrow, inverse, in_image: false })
}

/// Which of `e`, `f` lie in `Im E`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NaturalityCase {
    pub source_in_image: bool,
    pub target_in_image: bool,
}

impl fmt::Display for NaturalityCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |b: bool| if b { "E" } else { "oEa" };
        write!(f, "e:{} f:{}", side(self.source_in_image), side(self.target_in_image))
    }
}

/// Both sides of the naturality square for one arrow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaturalityReport {
    pub case: NaturalityCase,
    /// `η_e · FG(e,u,f)`.
    pub left: TermArrow,
    /// `(e,u,f) · η_f`.
    pub right: TermArrow,
    pub verdict: QuotientVerdict,
}

impl NaturalityReport {
    pub fn commutes(&self) -> bool {
        self.verdict.is_equal()
    }
}

/// Checks `η_e · FG(e,u,f) = (e,u,f) · η_f` in every test semigroup.
pub fn verify_naturality(
    arrow: &TermArrow,
    ctx: &ExpansionContext,
    tests: &TestBattery,
) -> Result<NaturalityReport, FlowError> {
    arrow.validate(tests)?;
    let eta_e = eta(&arrow.e, ctx, tests)?;
    let eta_f = eta(&arrow.f, ctx, tests)?;
    let g = functor_g(arrow, ctx)?;
    let fl = ctx.letters;
    let fg = TermArrow { e: term_expand(&g.e, fl), u: term_expand(&g.u, fl), f: term_expand(&g.f, fl) };
    let left = eta_e.arrow.then(&fg, tests)?;
    let right = arrow.then(&eta_f.arrow, tests)?;
    let mut verdict = QuotientVerdict::EqualInAll { tested: tests.len() };
    for (x, y) in [(&left.e, &right.e), (&left.u, &right.u), (&left.f, &right.f)] {
        let v = quotient_equal(x, y, tests)?;
        if !v.is_equal() {
            verdict = v;
            break;
        }
    }
    let case = NaturalityCase { source_in_image: eta_e.in_image, target_in_image: eta_f.in_image };
    Ok(NaturalityReport { case, left, right, verdict })
}

/// Counterexamples to the mirage lemmas over words of length at most
/// `max_len` and levels `1..=max_k`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MirageCheck {
    pub words_checked: usize,
    /// `u ∈ M_k(X)` but `E(u) ∉ M_k(X′)`.
    pub expansion_failures: Vec<(Word, usize)>,
    /// `w ∈ M_2k(X′)`, `w ≠ ◊`, but `C(w) ∉ M_k(X)`.
    pub contraction_failures: Vec<(Word, usize)>,
}

impl MirageCheck {
    pub fn holds(&self) -> bool {
        self.expansion_failures.is_empty() && self.contraction_failures.is_empty()
    }
}

pub fn check_mirage_lemmas(ctx: &ExpansionContext, max_len: usize, max_k: usize) -> MirageCheck {
    let mut out = MirageCheck::default();
    for u in ctx.source_alphabet().words_up_to(max_len) {
        if u.is_empty() {
            continue;
        }
        out.words_checked += 1;
        for k in 1..=max_k {
            if ctx.source.mirage_membership_k(&u, k) && !ctx.target.mirage_membership_k(&ctx.expand(&u), k) {
                out.expansion_failures.push((u.clone(), k));
            }
        }
    }
    for w in ctx.target_alphabet().words_up_to(max_len) {
        if w.is_empty() || w == Word::letter(ctx.diamond()) {
            continue;
        }
        out.words_checked += 1;
        for k in 1..=max_k {
            if ctx.target.mirage_membership_k(&w, 2 * k) {
                let c = ctx.contract(&w);
                if c.is_empty() || !ctx.source.mirage_membership_k(&c, k) {
                    out.contraction_failures.push((w.clone(), k));
                }
            }
        }
    }
    out
}

/// Words of length `1..=max_len` in the level-`k` mirage of `shift`, grown
/// letter by letter.
pub fn mirage_words(shift: &Shift, max_len: usize, k: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut frontier = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for l in shift.alphabet().letters() {
                let mut v = w.clone();
                v.push(l);
                let tail = v.suffix(k.min(v.len()));
                if tail.factors_up_to(k).iter().all(|f| shift.is_block(f)) {
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// `v^ω` for the primitive words `v`, `|v| ≤ max_len`, all of whose powers
/// are blocks of `shift`, one per conjugate, shortlex order.
pub fn cyclic_idempotents(shift: &Shift, max_len: usize) -> Vec<OmegaTerm> {
    let reps = shift.vertex_count() + 1;
    shift
        .alphabet()
        .words_up_to(max_len)
        .into_iter()
        .filter(|v| !v.is_empty() && v.is_primitive().unwrap_or(false) && shift.is_block(&v.pow(reps)))
        .map(OmegaTerm::omega)
        .collect()
}

/// For each pair `e = v^ω`, `f = z^ω` of [`cyclic_idempotents`], the arrow
/// `(e, e·w·f, f)` with `w` shortlex least of length at most `max_gap` such
/// that every `v^n w z^n` is a block; pairs without such `w` are skipped.
pub fn connecting_arrows(shift: &Shift, idempotents: &[OmegaTerm], max_gap: usize) -> Vec<TermArrow> {
    let reps = shift.vertex_count() + 1;
    let gaps = shift.alphabet().words_up_to(max_gap);
    let base = |t: &OmegaTerm| t.powers().next().expect("power").base.clone();
    let mut out = Vec::new();
    for e in idempotents {
        for f in idempotents {
            let (v, z) = (base(e).pow(reps), base(f).pow(reps));
            if let Some(w) = gaps.iter().find(|w| shift.is_block(&v.concat(w).concat(&z))) {
                let u = e.concat_word(w).concat(f).canonical();
                out.push(TermArrow { e: e.clone(), u, f: f.clone() });
            }
        }
    }
    out
}
