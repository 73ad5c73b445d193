use super::{FiniteSemigroup, SemigroupError, DEFAULT_SIZE_LIMIT};
use crate::automata::Dfa;
use crate::shifts::{Shift, ShiftPresentation};
use crate::words::{Letter, Word};

/// `S(X)` with the image of `L(X)` and the minimal automaton it acts on.
#[derive(Debug, Clone)]
pub struct SyntacticSemigroup {
    semigroup: FiniteSemigroup,
    accept: Vec<usize>,
    dfa: Dfa,
}

/// Transition semigroup of the minimal complete automaton of the block
/// language of `shift`.
pub fn syntactic_semigroup(shift: &Shift) -> Result<SyntacticSemigroup, SemigroupError> {
    SyntacticSemigroup::with_limit(shift, DEFAULT_SIZE_LIMIT)
}

impl SyntacticSemigroup {
    pub fn with_limit(shift: &Shift, limit: usize) -> Result<Self, SemigroupError> {
        let dfa = Dfa::for_blocks(shift).minimize();
        let maps: Vec<Vec<usize>> = (0..dfa.alphabet_size()).map(|l| dfa.letter_map(Letter(l as u32))).collect();
        let semigroup = FiniteSemigroup::generate(&maps, shift.alphabet().clone(), limit)?;
        let accept = semigroup
            .elements()
            .filter(|&x| dfa.is_accepting(dfa.run_from(dfa.initial(), semigroup.witness(x))))
            .collect();
        Ok(SyntacticSemigroup { semigroup, accept, dfa })
    }

    pub fn from_presentation(p: &ShiftPresentation) -> Result<Self, SemigroupError> {
        syntactic_semigroup(&p.trim()?)
    }

    pub fn semigroup(&self) -> &FiniteSemigroup {
        &self.semigroup
    }

    /// Element ids of `η(L(X))`, sorted.
    pub fn accept(&self) -> &[usize] {
        &self.accept
    }

    pub fn is_accepted(&self, x: usize) -> bool {
        self.accept.binary_search(&x).is_ok()
    }

    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    /// `η(w)` for nonempty `w`.
    pub fn eta(&self, w: &Word) -> Option<usize> {
        self.semigroup.eval_word(w)
    }

    /// Element ids not in the image of `L(X)` (the zero, when present).
    pub fn rejected(&self) -> Vec<usize> {
        self.semigroup.elements().filter(|&x| !self.is_accepted(x)).collect()
    }
}
