use super::{Item, OmegaTerm, Power, PseudoError};
use crate::words::{Letter, Word};

/// The expanded letter `α` and the fresh letter `◊`, as letters of
/// `B = A ∪ {◊}`; letters of `A` keep their indices in `B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FlowLetters {
    pub alpha: Letter,
    pub diamond: Letter,
}

impl FlowLetters {
    /// `E` on words: `α ↦ α◊`.
    pub fn expand_word(&self, w: &Word) -> Word {
        let mut out = Word::empty();
        for &l in w.iter() {
            out.push(l);
            if l == self.alpha {
                out.push(self.diamond);
            }
        }
        out
    }

    /// `C` on words: delete `◊`.
    pub fn contract_word(&self, w: &Word) -> Word {
        w.iter().copied().filter(|&l| l != self.diamond).collect()
    }
}

/// `E(t)`.
pub fn term_expand(t: &OmegaTerm, fl: FlowLetters) -> OmegaTerm {
    t.substitute(|l| fl.expand_word(&Word::letter(l))).canonical()
}

/// `C(t)`; fails when nothing but `◊` occurs.
pub fn term_contract(t: &OmegaTerm, fl: FlowLetters) -> Result<OmegaTerm, PseudoError> {
    let c = t.substitute(|l| fl.contract_word(&Word::letter(l))).canonical();
    if c.is_empty() {
        return Err(PseudoError::EmptyResult);
    }
    Ok(c)
}

/// Whether `w ∈ E(A⁺)`: `w` is nonempty, does not start with `◊` or end
/// with `α`, every `α` is followed by `◊` and every `◊` preceded by `α`.
pub fn image_e_membership(w: &Word, fl: FlowLetters) -> bool {
    let l = w.letters();
    if l.is_empty() || l[0] == fl.diamond || l[l.len() - 1] == fl.alpha {
        return false;
    }
    l.windows(2).all(|p| (p[0] == fl.alpha) == (p[1] == fl.diamond))
}

/// The test of [`image_e_membership`] on the `M(2)` unfolding, which
/// carries every first letter, last letter and length-2 factor of `t`.
pub fn term_in_image_e(t: &OmegaTerm, fl: FlowLetters) -> bool {
    !t.is_empty() && image_e_membership(&t.unfold(t.unfolding_exponent(2)), fl)
}

/// `t` without its first and last letters.
///
/// A leading `u^(ω+q)` with `u = xu'` becomes `(u'x)^(ω+q-1)·u'`; a trailing
/// one with `u = u''y` becomes `u''·(yu'')^(ω+q-1)`.
pub fn strip_boundary(t: &OmegaTerm) -> Result<OmegaTerm, PseudoError> {
    if let Some(w) = t.as_word() {
        if w.len() < 2 {
            return Err(PseudoError::TooShort { len: w.len(), need: 2 });
        }
        return Ok(OmegaTerm::word(w.slice(1, w.len() - 1)));
    }
    Ok(drop_last(&drop_first(&t.canonical())).canonical())
}

fn drop_first(t: &OmegaTerm) -> OmegaTerm {
    let mut items = t.items().to_vec();
    match items.first().cloned() {
        Some(Item::Word(w)) => items[0] = Item::Word(w.slice(1, w.len())),
        Some(Item::Power(p)) => {
            let n = p.base.len();
            items[0] = Item::Power(Power { base: p.base.rotate(1), q: p.q - 1 });
            items.insert(1, Item::Word(p.base.slice(1, n)));
        }
        None => {}
    }
    OmegaTerm::from_items(items).canonical()
}

fn drop_last(t: &OmegaTerm) -> OmegaTerm {
    let mut items = t.items().to_vec();
    match items.last().cloned() {
        Some(Item::Word(w)) => *items.last_mut().expect("nonempty") = Item::Word(w.slice(0, w.len() - 1)),
        Some(Item::Power(p)) => {
            let n = p.base.len();
            items.pop();
            items.push(Item::Word(p.base.slice(0, n - 1)));
            items.push(Item::Power(Power { base: p.base.rotate(n - 1), q: p.q - 1 }));
        }
        None => {}
    }
    OmegaTerm::from_items(items)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pseudowords::{quotient_equal, QuotientVerdict, TestBattery};
    use crate::words::Alphabet;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn b() -> Alphabet {
        Alphabet::from_chars("abo").unwrap()
    }

    fn fl() -> FlowLetters {
        FlowLetters { alpha: Letter(0), diamond: Letter(2) }
    }

    fn t(s: &str) -> OmegaTerm {
        OmegaTerm::parse(&b(), s).unwrap()
    }

    fn w(s: &str) -> Word {
        b().parse_word(s).unwrap()
    }

    #[test]
    fn expansion_and_contraction() {
        assert_eq!(b().format(&fl().expand_word(&w("aba"))), "aobao");
        assert_eq!(term_expand(&t("(a)^w"), fl()).format(&b()), "(ao)^w");
        assert_eq!(term_expand(&t("(b)^w"), fl()).format(&b()), "(b)^w");
        assert_eq!(term_contract(&t("aobao"), fl()).unwrap().format(&b()), "aba");
        assert_eq!(term_contract(&t("(ao)^w"), fl()).unwrap().format(&b()), "(a)^w");
        assert_eq!(term_contract(&t("o"), fl()), Err(PseudoError::EmptyResult));
        assert_eq!(term_contract(&t("(o)^(w+1)"), fl()), Err(PseudoError::EmptyResult));
    }

    #[test]
    fn contraction_inverts_expansion() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let battery = TestBattery::random(&b(), 3, 50, 99);
        for _ in 0..500 {
            let term = OmegaTerm::random(2, 5, &mut rng);
            let back = term_contract(&term_expand(&term, fl()), fl()).unwrap();
            assert!(back.canonical_eq(&term), "{}", term.format(&b()));
            assert!(matches!(quotient_equal(&back, &term, &battery).unwrap(), QuotientVerdict::EqualInAll { .. }));
        }
    }

    #[test]
    fn image_of_e_on_words() {
        assert!(image_e_membership(&w("aob"), fl()));
        assert!(!image_e_membership(&w("oa"), fl()));
        assert!(!image_e_membership(&w("ba"), fl()));
        assert!(!image_e_membership(&w("bo"), fl()));
        assert!(!image_e_membership(&w("ab"), fl()));
        // brute force over preimages
        let a = Alphabet::from_chars("ab").unwrap();
        let images: std::collections::BTreeSet<Word> =
            a.words_up_to(10).iter().filter(|u| !u.is_empty()).map(|u| fl().expand_word(u)).collect();
        for word in b().words_up_to(10) {
            assert_eq!(image_e_membership(&word, fl()), images.contains(&word), "{}", b().format(&word));
        }
    }

    #[test]
    fn image_of_e_on_terms() {
        assert!(term_in_image_e(&t("(ao)^w b"), fl()));
        assert!(term_in_image_e(&t("(b)^w (ao)^(w-1)"), fl()));
        assert!(!term_in_image_e(&t("o (ba o)^w"), fl()));
        assert!(!term_in_image_e(&t("(oa)^w"), fl()));
    }

    #[test]
    fn boundary_stripping() {
        assert_eq!(strip_boundary(&t("(a)^w")).unwrap().format(&b()), "(a)^(w-2)");
        let ab = t("(ab)^w");
        let stripped = strip_boundary(&ab).unwrap();
        assert_eq!(stripped.format(&b()), "(ba)^(w-1)");
        let back = t("a").concat(&stripped).concat(&t("b"));
        assert!(back.canonical_eq(&ab));
        assert_eq!(strip_boundary(&t("a")), Err(PseudoError::TooShort { len: 1, need: 2 }));
        assert_eq!(strip_boundary(&t("abb")).unwrap().format(&b()), "b");
        // ◊·E(w)^ω·α shape
        let u = t("o (bao)^w a");
        let s = strip_boundary(&u).unwrap();
        let battery = TestBattery::random(&b(), 2, 50, 5);
        let rebuilt = t("o").concat(&s).concat(&t("a"));
        assert!(matches!(quotient_equal(&rebuilt, &u, &battery).unwrap(), QuotientVerdict::EqualInAll { .. }));
    }

    #[test]
    fn stripping_then_rebuilding_is_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..500 {
            let term = OmegaTerm::random(3, 4, &mut rng);
            let Ok(s) = strip_boundary(&term) else { continue };
            let first = term.prefix_k(1).unwrap();
            let last = term.suffix_k(1).unwrap();
            let rebuilt = OmegaTerm::word(first).concat(&s).concat_word(&last);
            assert!(rebuilt.canonical_eq(&term), "{}", term.format(&b()));
        }
    }
}
