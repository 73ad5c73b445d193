use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{Shift, ShiftError};
use crate::series::{mobius_invert, PowerSeries};
use crate::words::{Word, WordError};
use crate::ZetaSeries;

/// A periodic point `x`, stored as its least-rotation primitive block and
/// the rotation giving `x_[0, n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PeriodicPoint {
    representative: Word,
    phase: usize,
}

impl PeriodicPoint {
    /// The point `w^∞` with `x_0 = w_0`.
    pub fn from_word(w: &Word) -> Result<Self, WordError> {
        let (root, _) = w.primitive_root()?;
        let n = root.len();
        let (least, s) = root.least_rotation();
        Ok(PeriodicPoint { representative: least, phase: (n - s) % n })
    }

    pub fn representative(&self) -> &Word {
        &self.representative
    }

    pub fn phase(&self) -> usize {
        self.phase
    }

    /// Least period.
    pub fn period(&self) -> usize {
        self.representative.len()
    }

    /// `x_[0, period)`.
    pub fn block(&self) -> Word {
        self.representative.rotate(self.phase)
    }
}

/// Periodic-point counts for `n = 1..=n_max` (index 0 holds `n = 1`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicCounts {
    /// Points fixed by `σ^n`.
    pub p: Vec<u64>,
    /// Points of least period `n`.
    pub q: Vec<u64>,
}

/// Truncated zeta function together with the counts it was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZetaFunction {
    pub series: ZetaSeries,
    pub counts: PeriodicCounts,
}

impl ZetaFunction {
    pub fn order(&self) -> usize {
        self.series.order()
    }

    /// Coefficients as integers (they are checked integral at construction).
    pub fn integer_coefficients(&self) -> Vec<BigInt> {
        self.series.coeffs().iter().map(|c| c.to_integer()).collect()
    }
}

impl Shift {
    /// Whether `w^∞` is a point of the shift.
    ///
    /// Tests whether `w^(V+1)` is a block, `V` the vertex count. If it is,
    /// the path it labels passes through `V + 2` copy boundaries, two of which
    /// share a vertex; the cycle between them is labeled by a power of `w`,
    /// so `w^∞` is the label of a bi-infinite path. The converse is
    /// immediate since every block of the trimmed graph labels a path.
    pub fn is_periodic_point(&self, w: &Word) -> bool {
        !w.is_empty() && self.is_block(&w.pow(self.vertex_count() + 1))
    }

    /// `p(n)` counts words `w` of length `n` with `w^∞` in the shift, `q(n)`
    /// the primitive ones. `q` is also derived from `p` by Möbius
    /// inversion; a disagreement is reported as an error.
    pub fn periodic_counts(&self, n_max: usize) -> Result<PeriodicCounts, ShiftError> {
        let mut p = Vec::with_capacity(n_max);
        let mut q = Vec::with_capacity(n_max);
        for n in 1..=n_max {
            let mut all = 0u64;
            let mut primitive = 0u64;
            for w in self.blocks_of_length(n) {
                if self.is_periodic_point(&w) {
                    all += 1;
                    if w.is_primitive()? {
                        primitive += 1;
                    }
                }
            }
            p.push(all);
            q.push(primitive);
        }
        for (i, (&inv, &direct)) in mobius_invert(&p).iter().zip(&q).enumerate() {
            if inv != direct as i64 {
                return Err(ShiftError::MobiusMismatch { n: i + 1, inverted: inv, direct });
            }
        }
        Ok(PeriodicCounts { p, q })
    }

    /// Periodic points of least period `n`.
    pub fn periodic_points(&self, n: usize) -> Vec<PeriodicPoint> {
        let mut pts: Vec<PeriodicPoint> = self
            .blocks_of_length(n)
            .into_iter()
            .filter(|w| self.is_periodic_point(w) && w.is_primitive().unwrap_or(false))
            .map(|w| PeriodicPoint::from_word(&w).expect("nonempty"))
            .collect();
        pts.sort();
        pts
    }

    /// `exp(Σ_{n ≤ order} p(n)/n tⁿ)` in exact arithmetic.
    pub fn zeta(&self, order: usize) -> Result<ZetaFunction, ShiftError> {
        let counts = self.periodic_counts(order)?;
        let mut log = vec![BigRational::zero()];
        for (i, &pn) in counts.p.iter().enumerate() {
            log.push(BigRational::new(BigInt::from(pn), BigInt::from(i + 1)));
        }
        let series: ZetaSeries = PowerSeries::from_coeffs(log).exp().expect("constant term is zero");
        for (n, c) in series.coeffs().iter().enumerate() {
            if !c.is_integer() || c.is_negative() {
                return Err(ShiftError::NonIntegralCoefficient { n, value: c.to_string() });
            }
        }
        Ok(ZetaFunction { series, counts })
    }
}
