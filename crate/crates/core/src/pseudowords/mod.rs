//! Rank-1 ω-terms: words interleaved with powers `u^(ω+q)`.

mod code;
mod flow;
mod quotient;

pub use code::{term_block_code, term_block_code_traced, BlockCodeTrace};
pub use flow::{image_e_membership, strip_boundary, term_contract, term_expand, term_in_image_e, FlowLetters};
pub use quotient::{quotient_equal, QuotientVerdict, TestBattery, TestSemigroup};

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rand::Rng;
use thiserror::Error;

use crate::codes::CodeError;
use crate::semigroups::{FiniteSemigroup, SyntacticSemigroup};
use crate::shifts::Shift;
use crate::words::{Alphabet, Letter, Word, WordError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PseudoError {
    #[error("letter {0} has no assigned element")]
    UnassignedLetter(u32),
    #[error("the empty term has no value in a semigroup")]
    EmptyTerm,
    #[error("plain word of length {len} is too short (need {need})")]
    TooShort { len: usize, need: usize },
    #[error("cannot parse term `{text}`: {reason}")]
    Parse { text: String, reason: String },
    #[error("nested powers are not supported: `{0}`")]
    NestedPower(String),
    #[error("contraction leaves the empty word")]
    EmptyResult,
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// `base^(ω+q)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Power {
    pub base: Word,
    pub q: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Item {
    Word(Word),
    Power(Power),
}

/// A product of words and powers, kept as written; [`canonical`] gives
/// the normal form.
///
/// [`canonical`]: OmegaTerm::canonical
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct OmegaTerm {
    items: Vec<Item>,
}

impl From<Word> for OmegaTerm {
    fn from(w: Word) -> Self {
        OmegaTerm::word(w)
    }
}

impl OmegaTerm {
    pub fn from_items(items: Vec<Item>) -> Self {
        for it in &items {
            if let Item::Power(p) = it {
                assert!(!p.base.is_empty(), "power base must be nonempty");
            }
        }
        OmegaTerm { items }
    }

    pub fn word(w: Word) -> Self {
        OmegaTerm { items: vec![Item::Word(w)] }
    }

    /// `base^(ω+q)`.
    pub fn power(base: Word, q: i64) -> Self {
        OmegaTerm::from_items(vec![Item::Power(Power { base, q })])
    }

    /// `base^ω`.
    pub fn omega(base: Word) -> Self {
        OmegaTerm::power(base, 0)
    }

    pub fn items(&self) -> &[Item] {
        &self.items
    }

    pub fn concat(&self, other: &OmegaTerm) -> OmegaTerm {
        let mut items = self.items.clone();
        items.extend(other.items.iter().cloned());
        OmegaTerm { items }
    }

    pub fn concat_word(&self, w: &Word) -> OmegaTerm {
        self.concat(&OmegaTerm::word(w.clone()))
    }

    /// Whether no power occurs (after dropping nothing).
    pub fn is_plain(&self) -> bool {
        self.items.iter().all(|i| matches!(i, Item::Word(_)))
    }

    /// The word denoted by a plain term.
    pub fn as_word(&self) -> Option<Word> {
        let mut out = Word::empty();
        for it in &self.items {
            match it {
                Item::Word(w) => out.extend(w),
                Item::Power(_) => return None,
            }
        }
        Some(out)
    }

    pub fn is_empty(&self) -> bool {
        self.items.iter().all(|i| matches!(i, Item::Word(w) if w.is_empty()))
    }

    pub fn powers(&self) -> impl Iterator<Item = &Power> {
        self.items.iter().filter_map(|i| match i {
            Item::Power(p) => Some(p),
            Item::Word(_) => None,
        })
    }

    pub fn max_abs_q(&self) -> u64 {
        self.powers().map(|p| p.q.unsigned_abs()).max().unwrap_or(0)
    }

    /// Letters occurring in the term.
    pub fn letters(&self) -> BTreeSet<Letter> {
        let mut out = BTreeSet::new();
        for it in &self.items {
            let w = match it {
                Item::Word(w) => w,
                Item::Power(p) => &p.base,
            };
            out.extend(w.iter().copied());
        }
        out
    }

    /// Applies a letter-to-word substitution to every word and base. Powers
    /// whose base maps to ε disappear.
    pub fn substitute(&self, f: impl Fn(Letter) -> Word) -> OmegaTerm {
        let image = |w: &Word| -> Word {
            let mut out = Word::empty();
            for &l in w.iter() {
                out.extend(&f(l));
            }
            out
        };
        let items = self
            .items
            .iter()
            .filter_map(|it| match it {
                Item::Word(w) => Some(Item::Word(image(w))),
                Item::Power(p) => {
                    let b = image(&p.base);
                    (!b.is_empty()).then_some(Item::Power(Power { base: b, q: p.q }))
                }
            })
            .collect();
        OmegaTerm { items }
    }

    /// Normal form:
    ///
    /// 1. adjacent words are merged and empty words dropped;
    /// 2. `(z^c)^(ω+q)` becomes `z^(ω+cq)` with `z` primitive;
    /// 3. `x·(yx)^(ω+q)` becomes `(xy)^(ω+q)·x`, one letter at a time, while
    ///    the letter before a power equals the power's last letter; a
    ///    preceding power `u^(ω+p)` gives up copies `u^(ω+p-1)·u` for this;
    /// 4. `u^(ω+p)·u` becomes `u^(ω+p+1)`;
    /// 5. `u^(ω+p)·u^(ω+q)` becomes `u^(ω+p+q)`.
    pub fn canonical(&self) -> OmegaTerm {
        let mut out: Vec<Item> = Vec::new();
        for it in &self.items {
            match it {
                Item::Word(w) => push_word(&mut out, w.clone()),
                Item::Power(p) => {
                    let (root, c) = p.base.primitive_root().expect("nonempty base");
                    let mut base = root;
                    let q = p.q * c as i64;
                    let mut carried: Vec<Letter> = Vec::new();
                    loop {
                        let last = base.last().expect("nonempty");
                        match out.last_mut() {
                            Some(Item::Word(w)) if w.last() == Some(last) => {
                                w.0.pop();
                                if w.is_empty() {
                                    out.pop();
                                }
                                base = base.rotate(base.len() - 1);
                                carried.push(last);
                            }
                            // u^(ω+p) = u^(ω+p-1)·u, then keep rotating through u
                            Some(Item::Power(prev)) if prev.base != base && prev.base.last() == Some(last) => {
                                prev.q -= 1;
                                let copy = prev.base.clone();
                                out.push(Item::Word(copy));
                            }
                            _ => break,
                        }
                    }
                    carried.reverse();
                    match out.last_mut() {
                        Some(Item::Power(prev)) if prev.base == base => prev.q += q,
                        _ => out.push(Item::Power(Power { base, q })),
                    }
                    push_word(&mut out, Word(carried));
                }
            }
        }
        OmegaTerm { items: out }
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical() == *self
    }

    /// Equality of canonical forms (sound, not complete).
    pub fn canonical_eq(&self, other: &OmegaTerm) -> bool {
        self.canonical() == other.canonical()
    }

    /// The word obtained by replacing each `u^(ω+q)` with `u^(m+q)`.
    pub fn unfold(&self, m: usize) -> Word {
        let mut out = Word::empty();
        for it in &self.items {
            match it {
                Item::Word(w) => out.extend(w),
                Item::Power(p) => {
                    let e = m as i64 + p.q;
                    assert!(e >= 0, "unfolding exponent {m} too small for q = {}", p.q);
                    out.extend(&p.base.pow(e as usize));
                }
            }
        }
        out
    }

    /// `M(k) = k + max|q| + 2`.
    pub fn unfolding_exponent(&self, k: usize) -> usize {
        k + self.max_abs_q() as usize + 2
    }

    fn check_length(&self, k: usize) -> Result<(), PseudoError> {
        if let Some(w) = self.as_word() {
            if w.len() < k {
                return Err(PseudoError::TooShort { len: w.len(), need: k });
            }
        }
        Ok(())
    }

    /// `𝔟_k(t)`.
    pub fn prefix_k(&self, k: usize) -> Result<Word, PseudoError> {
        self.check_length(k)?;
        Ok(self.unfold(self.unfolding_exponent(k)).prefix(k))
    }

    /// `𝔱_k(t)`.
    pub fn suffix_k(&self, k: usize) -> Result<Word, PseudoError> {
        self.check_length(k)?;
        Ok(self.unfold(self.unfolding_exponent(k)).suffix(k))
    }

    /// Nonempty factors of length at most `k`.
    pub fn factors(&self, k: usize) -> BTreeSet<Word> {
        self.unfold(self.unfolding_exponent(k)).factors_up_to(k)
    }

    /// Every factor of length at most `k` is a block of `shift`.
    pub fn in_mirage(&self, shift: &Shift, k: usize) -> bool {
        self.factors(k).iter().all(|f| shift.is_block(f))
    }

    /// Image under the morphism sending letter `i` to `assign[i]`.
    pub fn eval(&self, s: &FiniteSemigroup, assign: &[usize]) -> Result<usize, PseudoError> {
        let image = |l: Letter| assign.get(l.index()).copied().ok_or(PseudoError::UnassignedLetter(l.0));
        let mut acc: Option<usize> = None;
        let times = |acc: &mut Option<usize>, x: usize| {
            *acc = Some(match *acc {
                None => x,
                Some(a) => s.mul(a, x),
            });
        };
        for it in &self.items {
            match it {
                Item::Word(w) => {
                    for &l in w.iter() {
                        times(&mut acc, image(l)?);
                    }
                }
                Item::Power(p) => {
                    let mut b = image(p.base.letters()[0])?;
                    for &l in &p.base.letters()[1..] {
                        b = s.mul(b, image(l)?);
                    }
                    times(&mut acc, s.omega_plus(b, p.q));
                }
            }
        }
        acc.ok_or(PseudoError::EmptyTerm)
    }

    /// Evaluation sending each letter to the generator it names.
    pub fn eval_generators(&self, s: &FiniteSemigroup) -> Result<usize, PseudoError> {
        self.eval(s, s.generators())
    }

    /// Finite-quotient shadow of membership in the closure of `L(X)`.
    pub fn closure_membership(&self, syn: &SyntacticSemigroup) -> Result<bool, PseudoError> {
        Ok(syn.is_accepted(self.eval_generators(syn.semigroup())?))
    }

    /// Parses `(a)^w b (a)^w c (a)^w`, `(ab)^(w+1)`, `(b)^(w-2)`; `ω` is
    /// accepted for `w`. Whitespace separates nothing and is ignored.
    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<OmegaTerm, PseudoError> {
        let err = |reason: &str| PseudoError::Parse { text: text.to_string(), reason: reason.to_string() };
        let mut items = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            match rest.find('(') {
                None => {
                    if rest.contains(')') || rest.contains('^') {
                        return Err(err("unbalanced parenthesis"));
                    }
                    items.push(Item::Word(alphabet.parse_word(rest)?));
                    rest = "";
                }
                Some(open) => {
                    let before = &rest[..open];
                    if before.contains(')') || before.contains('^') {
                        return Err(err("unbalanced parenthesis"));
                    }
                    items.push(Item::Word(alphabet.parse_word(before)?));
                    let after = &rest[open + 1..];
                    let close = after.find(')').ok_or_else(|| err("missing `)`"))?;
                    let body = &after[..close];
                    if body.contains('(') {
                        return Err(PseudoError::NestedPower(text.to_string()));
                    }
                    let base = alphabet.parse_word(body)?;
                    if base.is_empty() {
                        return Err(err("empty power base"));
                    }
                    let tail = after[close + 1..].trim_start();
                    let tail = tail.strip_prefix('^').ok_or_else(|| err("expected `^` after `)`"))?.trim_start();
                    let (q, remaining) = parse_exponent(tail).ok_or_else(|| err("bad exponent"))?;
                    items.push(Item::Power(Power { base, q }));
                    rest = remaining;
                }
            }
        }
        let t = OmegaTerm { items };
        if t.is_empty() {
            return Err(err("empty term"));
        }
        Ok(OmegaTerm { items: t.items.into_iter().filter(|i| !matches!(i, Item::Word(w) if w.is_empty())).collect() })
    }

    /// Inverse of [`parse`](Self::parse); items separated by spaces.
    pub fn format(&self, alphabet: &Alphabet) -> String {
        let mut parts: Vec<String> = Vec::new();
        for it in &self.items {
            match it {
                Item::Word(w) if w.is_empty() => {}
                Item::Word(w) => parts.push(alphabet.format(w)),
                Item::Power(p) => {
                    let mut s = format!("({})^", alphabet.format(&p.base));
                    match p.q {
                        0 => s.push('w'),
                        q if q > 0 => write!(s, "(w+{q})").expect("string write"),
                        q => write!(s, "(w-{})", -q).expect("string write"),
                    }
                    parts.push(s);
                }
            }
        }
        if parts.is_empty() {
            "ε".to_string()
        } else {
            parts.join(" ")
        }
    }

    /// A random term with up to `max_items` items over `alphabet_size`
    /// letters, words of length ≤ 3, bases of length 1 to 3, |q| ≤ 2.
    pub fn random<R: Rng>(alphabet_size: usize, max_items: usize, rng: &mut R) -> OmegaTerm {
        let word = |rng: &mut R, lo: usize| -> Word {
            let len = rng.gen_range(lo..=3);
            (0..len).map(|_| Letter(rng.gen_range(0..alphabet_size as u32))).collect()
        };
        let n = rng.gen_range(1..=max_items.max(1));
        let mut items = Vec::new();
        for _ in 0..n {
            if rng.gen_bool(0.5) {
                items.push(Item::Word(word(rng, 1)));
            } else {
                let base = word(rng, 1);
                items.push(Item::Power(Power { base, q: rng.gen_range(-2..=2) }));
            }
        }
        OmegaTerm { items }
    }
}

fn push_word(out: &mut Vec<Item>, mut w: Word) {
    if w.is_empty() {
        return;
    }
    if let Some(Item::Word(prev)) = out.last() {
        let mut joined = prev.clone();
        joined.extend(&w);
        out.pop();
        w = joined;
    }
    if let Some(Item::Power(p)) = out.last_mut() {
        let n = p.base.len();
        while w.starts_with(&p.base) {
            p.q += 1;
            w = w.slice(n, w.len());
        }
    }
    if !w.is_empty() {
        out.push(Item::Word(w));
    }
}

/// Reads `w`, `ω`, `(w)`, `(w+3)`, `(w-1)`; returns q and the rest.
fn parse_exponent(s: &str) -> Option<(i64, &str)> {
    for omega in ["w", "ω"] {
        if let Some(rest) = s.strip_prefix(omega) {
            return Some((0, rest));
        }
    }
    let inner_end = s.find(')')?;
    let inner: String = s.strip_prefix('(')?[..inner_end - 1].chars().filter(|c| !c.is_whitespace()).collect();
    let rest = &s[inner_end + 1..];
    let body = inner.strip_prefix('w').or_else(|| inner.strip_prefix('ω'))?;
    if body.is_empty() {
        return Some((0, rest));
    }
    let q: i64 = body.strip_prefix('+').unwrap_or(body).parse().ok()?;
    Some((q, rest))
}
