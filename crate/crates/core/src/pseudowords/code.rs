use super::{Item, OmegaTerm, Power, PseudoError};
use crate::codes::WordCode;
use crate::words::Word;

/// Intermediate forms of [`term_block_code`], kept for coherence checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockCodeTrace {
    /// The input with every base inflated to length at least `N - 1`.
    pub inflated: OmegaTerm,
    /// Image before normalization: `unfold(raw, m) = Φ̄(unfold(inflated, m))`
    /// for every `m ≥ 1 + max|q|`.
    pub raw: OmegaTerm,
    pub result: OmegaTerm,
}

/// `Φ̄` on a term, normalized.
pub fn term_block_code<C: WordCode + ?Sized>(phi: &C, t: &OmegaTerm) -> Result<OmegaTerm, PseudoError> {
    Ok(term_block_code_traced(phi, t)?.result)
}

/// `Φ̄` on a term, with the inflated input and the raw image.
///
/// Reads the term left to right, keeping the last `N - 1` letters read as
/// context `c`. A word `w` contributes `Φ̄(c·w)`. A power `U^(ω+Q)` with
/// `|U| ≥ N - 1` contributes `Φ̄(c·U)·D^(ω+Q-1)` where
/// `D = Φ̄(𝔱_{N-1}(U)·U)`, since `Φ̄(c·U^n) = Φ̄(c·U)·D^(n-1)` for all
/// `n ≥ 1`, and leaves context `𝔱_{N-1}(U)`.
pub fn term_block_code_traced<C: WordCode + ?Sized>(phi: &C, t: &OmegaTerm) -> Result<BlockCodeTrace, PseudoError> {
    let n = phi.window();
    if let Some(w) = t.as_word() {
        if w.len() < n {
            return Err(PseudoError::TooShort { len: w.len(), need: n });
        }
    }
    let inflated = inflate(t, n - 1);
    let mut items = Vec::new();
    let mut context = Word::empty();
    for it in inflated.items() {
        match it {
            Item::Word(w) => {
                let cw = context.concat(w);
                items.push(Item::Word(phi.word_code(&cw)));
                context = cw.suffix((n - 1).min(cw.len()));
            }
            Item::Power(p) => {
                let u = &p.base;
                let tail = u.suffix(n - 1);
                items.push(Item::Word(phi.word_code(&context.concat(u))));
                let d = phi.word_code(&tail.concat(u));
                debug_assert_eq!(d.len(), u.len());
                items.push(Item::Power(Power { base: d, q: p.q - 1 }));
                context = tail;
            }
        }
    }
    let raw = OmegaTerm::from_items(items);
    let result = raw.canonical();
    Ok(BlockCodeTrace { inflated, raw, result })
}

/// Rewrites `u^(ω+q)` with `|u| < len` as `(u^m)^(ω+Q)·u^r`, where `m` is
/// least with `|u^m| ≥ len` and `q = Q·m + r`, `0 ≤ r < m`.
fn inflate(t: &OmegaTerm, len: usize) -> OmegaTerm {
    let mut items = Vec::new();
    for it in t.items() {
        match it {
            Item::Power(p) if p.base.len() < len => {
                let m = len.div_ceil(p.base.len());
                let (big_q, r) = (p.q.div_euclid(m as i64), p.q.rem_euclid(m as i64));
                items.push(Item::Power(Power { base: p.base.pow(m), q: big_q }));
                items.push(Item::Word(p.base.pow(r as usize)));
            }
            other => items.push(other.clone()),
        }
    }
    OmegaTerm::from_items(items)
}
