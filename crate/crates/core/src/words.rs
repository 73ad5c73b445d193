//! Alphabets, finite words and the combinatorics of primitive words.
//!
//! Letters are stored as indices into an [`Alphabet`]; the alphabet order is
//! the input order and is the order used for lexicographic comparison,
//! canonical rotations and sorted reports.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("alphabet must be nonempty")]
    EmptyAlphabet,
    #[error("duplicate symbol `{0}` in alphabet")]
    DuplicateSymbol(String),
    #[error("symbol `{0}` is not in the alphabet")]
    UnknownSymbol(String),
    #[error("unterminated `[` in word `{0}`")]
    Unterminated(String),
    #[error("operation requires a nonempty word")]
    EmptyWord,
    #[error("word `{0}` is not primitive")]
    NotPrimitive(String),
}

/// A letter, as an index into its alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Letter(pub u32);

impl Letter {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A finite nonempty ordered set of symbols.
#[derive(Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<String>,
    index: HashMap<String, Letter>,
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.symbols).finish()
    }
}

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self, WordError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(WordError::EmptyAlphabet);
        }
        let mut index = HashMap::with_capacity(symbols.len());
        for (i, s) in symbols.iter().enumerate() {
            if index.insert(s.clone(), Letter(i as u32)).is_some() {
                return Err(WordError::DuplicateSymbol(s.clone()));
            }
        }
        Ok(Alphabet { symbols, index })
    }

    /// Alphabet whose symbols are the characters of `chars`, in order.
    pub fn from_chars(chars: &str) -> Result<Self, WordError> {
        Alphabet::new(chars.chars().map(String::from))
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.symbols.len() as u32).map(Letter)
    }

    pub fn symbol(&self, letter: Letter) -> &str {
        &self.symbols[letter.index()]
    }

    pub fn letter(&self, symbol: &str) -> Result<Letter, WordError> {
        self.index
            .get(symbol)
            .copied()
            .ok_or_else(|| WordError::UnknownSymbol(symbol.to_string()))
    }

    pub fn contains(&self, symbol: &str) -> bool {
        self.index.contains_key(symbol)
    }

    pub fn contains_word(&self, w: &Word) -> bool {
        w.iter().all(|l| l.index() < self.symbols.len())
    }

    /// The alphabet with `symbol` appended as a new last letter.
    pub fn extended(&self, symbol: &str) -> Result<Alphabet, WordError> {
        let mut symbols = self.symbols.clone();
        symbols.push(symbol.to_string());
        Alphabet::new(symbols)
    }

    fn single_char(&self) -> bool {
        self.symbols.iter().all(|s| s.chars().count() == 1)
    }

    /// Parses a word written as juxtaposed symbols.
    ///
    /// Single-character symbols are read one character at a time; longer
    /// symbols must be enclosed in brackets, e.g. `[ab][ba]`. Whitespace is
    /// ignored.
    pub fn parse_word(&self, text: &str) -> Result<Word, WordError> {
        let mut letters = Vec::new();
        let mut chars = text.chars().peekable();
        while let Some(c) = chars.next() {
            if c.is_whitespace() {
                continue;
            }
            if c == '[' && !self.contains("[") {
                let mut sym = String::new();
                loop {
                    match chars.next() {
                        Some(']') => break,
                        Some(ch) => sym.push(ch),
                        None => return Err(WordError::Unterminated(text.to_string())),
                    }
                }
                letters.push(self.letter(&sym)?);
            } else {
                letters.push(self.letter(c.encode_utf8(&mut [0; 4]))?);
            }
        }
        Ok(Word(letters))
    }

    /// Builds a word from a list of symbol tokens (the JSON array form).
    pub fn word_from_tokens<S: AsRef<str>>(&self, tokens: &[S]) -> Result<Word, WordError> {
        tokens
            .iter()
            .map(|t| self.letter(t.as_ref()))
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }

    pub fn tokens(&self, w: &Word) -> Vec<String> {
        w.iter().map(|&l| self.symbol(l).to_string()).collect()
    }

    /// Renders a word; multi-character symbols are bracketed.
    pub fn format(&self, w: &Word) -> String {
        if w.is_empty() {
            return "ε".to_string();
        }
        let single = self.single_char();
        let mut out = String::new();
        for &l in w.iter() {
            let s = self.symbol(l);
            if single {
                out.push_str(s);
            } else {
                out.push('[');
                out.push_str(s);
                out.push(']');
            }
        }
        out
    }

    /// All words of length exactly `n`, in lexicographic order.
    pub fn words_of_length(&self, n: usize) -> Vec<Word> {
        let k = self.len();
        let mut out = Vec::new();
        let mut digits = vec![0usize; n];
        loop {
            out.push(Word(digits.iter().map(|&d| Letter(d as u32)).collect()));
            let mut i = n;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                digits[i] += 1;
                if digits[i] < k {
                    break;
                }
                digits[i] = 0;
            }
        }
    }

    /// All words of length at most `n` (including ε), shortlex order.
    pub fn words_up_to(&self, n: usize) -> Vec<Word> {
        (0..=n).flat_map(|len| self.words_of_length(len)).collect()
    }
}

/// A finite word; ε is the empty word.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        Word(letters.into_iter().collect())
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Letter> {
        self.0.iter()
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    pub fn extend(&mut self, other: &Word) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn pow(&self, n: usize) -> Word {
        Word(self.0.repeat(n))
    }

    /// `u[start..end]` as a word.
    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    /// The length-`k` prefix, or the whole word when `k > |u|`.
    pub fn prefix(&self, k: usize) -> Word {
        Word(self.0[..k.min(self.len())].to_vec())
    }

    /// The length-`k` suffix, or the whole word when `k > |u|`.
    pub fn suffix(&self, k: usize) -> Word {
        let n = self.len();
        Word(self.0[n - k.min(n)..].to_vec())
    }

    pub fn starts_with(&self, p: &Word) -> bool {
        self.0.starts_with(&p.0)
    }

    pub fn ends_with(&self, s: &Word) -> bool {
        self.0.ends_with(&s.0)
    }

    pub fn contains_factor(&self, f: &Word) -> bool {
        f.is_empty() || self.0.windows(f.len()).any(|w| w == f.0.as_slice())
    }

    /// All nonempty factors of length at most `k`.
    pub fn factors_up_to(&self, k: usize) -> BTreeSet<Word> {
        let mut out = BTreeSet::new();
        for len in 1..=k.min(self.len()) {
            for w in self.0.windows(len) {
                out.insert(Word(w.to_vec()));
            }
        }
        out
    }

    /// Rotation moving the first `s` letters to the end.
    pub fn rotate(&self, s: usize) -> Word {
        if self.is_empty() {
            return Word::empty();
        }
        let s = s % self.len();
        let mut v = self.0[s..].to_vec();
        v.extend_from_slice(&self.0[..s]);
        Word(v)
    }

    /// `w = root^exponent` with `root` primitive.
    pub fn primitive_root(&self) -> Result<(Word, usize), WordError> {
        let n = self.len();
        if n == 0 {
            return Err(WordError::EmptyWord);
        }
        for d in 1..=n {
            if n.is_multiple_of(d) && (d..n).all(|i| self.0[i] == self.0[i - d]) {
                return Ok((self.prefix(d), n / d));
            }
        }
        unreachable!("d = n always succeeds")
    }

    pub fn is_primitive(&self) -> Result<bool, WordError> {
        Ok(self.primitive_root()?.1 == 1)
    }

    /// Distinct cyclic rotations, in order of first appearance
    /// (`v`, then `v` rotated by one, ...).
    pub fn conjugates(&self) -> Result<Vec<Word>, WordError> {
        let (root, _) = self.primitive_root()?;
        Ok((0..root.len()).map(|s| self.rotate(s)).collect())
    }

    /// Lexicographically least conjugate (necklace representative) and the
    /// rotation amount producing it.
    pub fn least_rotation(&self) -> (Word, usize) {
        if self.is_empty() {
            return (Word::empty(), 0);
        }
        (0..self.len())
            .map(|s| (self.rotate(s), s))
            .min()
            .expect("nonempty")
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// Words of length at most `bound` in `v^* v^power A^(<|v|) ∩ A^* v^power`
/// that are not powers of `v`.
///
/// With `power = 2` the result is empty for every primitive `v`; with
/// `power = 1` counterexamples such as `babab` for `v = bab` appear.
pub fn primitivity_inclusion_violations(
    v: &Word,
    alphabet_size: usize,
    bound: usize,
    power: usize,
) -> Result<Vec<Word>, WordError> {
    if !v.is_primitive()? {
        return Err(WordError::NotPrimitive(format!("{:?}", v.0)));
    }
    let n = v.len();
    let core = v.pow(power);
    let tail = core.clone();
    let mut seen = BTreeSet::new();
    let alpha = Alphabet::new((0..alphabet_size).map(|i| i.to_string())).expect("nonempty");
    let mut j = 0usize;
    loop {
        let head = v.pow(j).concat(&core);
        if head.len() > bound {
            break;
        }
        for len in 0..n.min(bound - head.len() + 1) {
            for x in alpha.words_of_length(len) {
                let w = head.concat(&x);
                if w.ends_with(&tail) && !is_power_of(&w, v) {
                    seen.insert(w);
                }
            }
        }
        j += 1;
    }
    Ok(seen.into_iter().collect())
}

/// `check_primitivity_inclusion` with the squared form.
pub fn check_primitivity_inclusion(
    v: &Word,
    alphabet_size: usize,
    bound: usize,
) -> Result<Vec<Word>, WordError> {
    primitivity_inclusion_violations(v, alphabet_size, bound, 2)
}

/// Whether `w ∈ v^+`.
pub fn is_power_of(w: &Word, v: &Word) -> bool {
    !v.is_empty() && !w.is_empty() && w.len().is_multiple_of(v.len()) && w.0.chunks(v.len()).all(|c| c == v.0.as_slice())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::from_chars("ab").unwrap()
    }

    fn w(s: &str) -> Word {
        let a = Alphabet::from_chars("abc").unwrap();
        a.parse_word(s).unwrap()
    }

    #[test]
    fn prefix_and_suffix() {
        assert_eq!(w("abba").prefix(2), w("ab"));
        assert_eq!(w("ab").prefix(5), w("ab"));
        assert_eq!(w("abc").prefix(0), Word::empty());
        assert_eq!(w("abba").suffix(2), w("ba"));
        assert_eq!(w("ab").suffix(5), w("ab"));
        assert_eq!(w("abc").suffix(0), Word::empty());
    }

    #[test]
    fn factors() {
        let f: Vec<_> = w("aba").factors_up_to(2).into_iter().collect();
        assert_eq!(f, vec![w("a"), w("ab"), w("b"), w("ba")]);
        assert_eq!(w("aa").factors_up_to(1).len(), 1);
        assert!(Word::empty().factors_up_to(3).is_empty());
    }

    #[test]
    fn primitivity() {
        assert!(!w("abab").is_primitive().unwrap());
        assert!(w("aba").is_primitive().unwrap());
        assert!(w("bab").is_primitive().unwrap());
        assert_eq!(Word::empty().is_primitive(), Err(WordError::EmptyWord));
        assert_eq!(w("abab").primitive_root().unwrap(), (w("ab"), 2));
        assert_eq!(w("aaa").primitive_root().unwrap(), (w("a"), 3));
        assert_eq!(w("aba").primitive_root().unwrap(), (w("aba"), 1));
    }

    #[test]
    fn conjugate_lists() {
        assert_eq!(w("ab").conjugates().unwrap(), vec![w("ab"), w("ba")]);
        assert_eq!(w("aa").conjugates().unwrap(), vec![w("aa")]);
        assert_eq!(w("bab").conjugates().unwrap(), vec![w("bab"), w("abb"), w("bba")]);
        assert_eq!(w("bab").least_rotation(), (w("abb"), 1));
    }

    #[test]
    fn inclusion_squared_is_empty() {
        assert!(check_primitivity_inclusion(&w("ab"), 2, 10).unwrap().is_empty());
        assert!(check_primitivity_inclusion(&w("bab"), 2, 12).unwrap().is_empty());
        assert!(matches!(
            check_primitivity_inclusion(&w("abab"), 2, 10),
            Err(WordError::NotPrimitive(_))
        ));
    }

    #[test]
    fn inclusion_single_power_fails_for_bab() {
        let bad = primitivity_inclusion_violations(&w("bab"), 2, 12, 1).unwrap();
        assert!(bad.contains(&w("babab")));
    }

    #[test]
    fn parse_and_format() {
        let a2 = Alphabet::new(["ab", "ba", "aa", "bb"]).unwrap();
        let word = a2.parse_word("[ab][ba]").unwrap();
        assert_eq!(word.len(), 2);
        assert_eq!(a2.format(&word), "[ab][ba]");
        assert_eq!(ab().format(&ab().parse_word("a b b").unwrap()), "abb");
        assert!(matches!(ab().parse_word("abc"), Err(WordError::UnknownSymbol(_))));
        assert!(matches!(Alphabet::new(["a", "a"]), Err(WordError::DuplicateSymbol(_))));
        assert!(matches!(Alphabet::new(Vec::<String>::new()), Err(WordError::EmptyAlphabet)));
    }

    #[test]
    fn enumerations() {
        assert_eq!(ab().words_of_length(3).len(), 8);
        assert_eq!(ab().words_up_to(2).len(), 7);
    }
}
