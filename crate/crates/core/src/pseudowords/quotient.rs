use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{OmegaTerm, PseudoError};
use crate::semigroups::{FiniteSemigroup, SyntacticSemigroup};
use crate::words::Alphabet;

/// A finite semigroup with an image for each letter.
#[derive(Debug, Clone)]
pub struct TestSemigroup {
    pub name: String,
    pub semigroup: Arc<FiniteSemigroup>,
    pub assignment: Vec<usize>,
}

impl TestSemigroup {
    /// Letter `i` goes to generator `i`.
    pub fn by_generators(name: impl Into<String>, s: FiniteSemigroup) -> Self {
        let assignment = s.generators().to_vec();
        TestSemigroup { name: name.into(), semigroup: Arc::new(s), assignment }
    }

    pub fn eval(&self, t: &OmegaTerm) -> Result<usize, PseudoError> {
        t.eval(&self.semigroup, &self.assignment)
    }
}

/// Result of comparing two terms in finite quotients. `EqualInAll` is not
/// a proof of equality of pseudowords.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuotientVerdict {
    EqualInAll { tested: usize },
    DistinguishedBy(String),
}

impl QuotientVerdict {
    pub fn is_equal(&self) -> bool {
        matches!(self, QuotientVerdict::EqualInAll { .. })
    }
}

/// A list of test semigroups shared read-only.
#[derive(Debug, Clone, Default)]
pub struct TestBattery {
    tests: Vec<TestSemigroup>,
}

impl TestBattery {
    pub fn new() -> Self {
        TestBattery::default()
    }

    pub fn push(&mut self, t: TestSemigroup) {
        self.tests.push(t);
    }

    pub fn with(mut self, t: TestSemigroup) -> Self {
        self.push(t);
        self
    }

    pub fn tests(&self) -> &[TestSemigroup] {
        &self.tests
    }

    pub fn len(&self) -> usize {
        self.tests.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tests.is_empty()
    }

    /// `count` random transformation semigroups over `alphabet`, each of
    /// size at most `max_size`, from one seed.
    pub fn random(alphabet: &Alphabet, count: usize, max_size: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tests = (0..count)
            .map(|i| {
                let s = FiniteSemigroup::random_transformation(alphabet, max_size, &mut rng);
                TestSemigroup::by_generators(format!("random#{i}(seed {seed}, size {})", s.size()), s)
            })
            .collect();
        TestBattery { tests }
    }

    pub fn syntactic(name: &str, syn: &SyntacticSemigroup) -> TestSemigroup {
        TestSemigroup::by_generators(format!("S({name})"), syn.semigroup().clone())
    }

    pub fn extend(mut self, other: &TestBattery) -> Self {
        self.tests.extend(other.tests.iter().cloned());
        self
    }

    /// The value of `t` is idempotent in every test.
    pub fn idempotent_in_all(&self, t: &OmegaTerm) -> Result<bool, PseudoError> {
        for test in &self.tests {
            let x = test.eval(t)?;
            if !test.semigroup.is_idempotent(x) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Compares the values of `s` and `t` in each test, stopping at the first
/// difference.
pub fn quotient_equal(s: &OmegaTerm, t: &OmegaTerm, tests: &TestBattery) -> Result<QuotientVerdict, PseudoError> {
    for test in tests.tests() {
        if test.eval(s)? != test.eval(t)? {
            return Ok(QuotientVerdict::DistinguishedBy(test.name.clone()));
        }
    }
    Ok(QuotientVerdict::EqualInAll { tested: tests.len() })
}
