//! Truncated formal power series over a generic coefficient ring, plus the
//! small number-theoretic helpers used for periodic-point bookkeeping.
//!
//! The zeta function is computed with exact rationals ([`crate::ZetaSeries`]);
//! the same code runs over `f64` or `Ratio<i64>` for quick estimates.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::{FromPrimitive, Num};

/// Coefficients `c_0 .. c_order` of a power series truncated after `t^order`.
#[derive(Clone, PartialEq, Eq)]
pub struct PowerSeries<T> {
    coeffs: Vec<T>,
}

impl<T: fmt::Debug> fmt::Debug for PowerSeries<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.coeffs).finish()
    }
}

impl<T> PowerSeries<T>
where
    T: Clone + Num,
{
    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series keeps at least c_0");
        PowerSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        PowerSeries { coeffs: vec![T::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = T::one();
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &T {
        &self.coeffs[n]
    }

    /// Multiplicative inverse; requires `c_0` invertible in `T`.
    pub fn inverse(&self) -> Option<Self> {
        let c0 = self.coeffs[0].clone();
        if c0.is_zero() {
            return None;
        }
        let n = self.order();
        let mut out = vec![T::zero(); n + 1];
        out[0] = T::one() / c0.clone();
        for k in 1..=n {
            let mut acc = T::zero();
            for j in 1..=k {
                acc = acc + self.coeffs[j].clone() * out[k - j].clone();
            }
            out[k] = T::zero() - acc / c0.clone();
        }
        Some(PowerSeries { coeffs: out })
    }
}

impl<T> PowerSeries<T>
where
    T: Clone + Num + FromPrimitive,
{
    /// `exp(f)` for a series with `c_0 = 0`, via `g' = f' g`.
    ///
    /// Returns `None` if `c_0 != 0`.
    pub fn exp(&self) -> Option<Self> {
        if !self.coeffs[0].is_zero() {
            return None;
        }
        let n = self.order();
        let mut g = vec![T::zero(); n + 1];
        g[0] = T::one();
        for m in 1..=n {
            let mut acc = T::zero();
            for j in 1..=m {
                let jj = T::from_usize(j)?;
                acc = acc + jj * self.coeffs[j].clone() * g[m - j].clone();
            }
            g[m] = acc / T::from_usize(m)?;
        }
        Some(PowerSeries { coeffs: g })
    }
}

impl<T: Clone + Num> Add for &PowerSeries<T> {
    type Output = PowerSeries<T>;
    fn add(self, rhs: Self) -> PowerSeries<T> {
        let n = self.order().min(rhs.order());
        PowerSeries {
            coeffs: (0..=n).map(|i| self.coeffs[i].clone() + rhs.coeffs[i].clone()).collect(),
        }
    }
}

impl<T: Clone + Num> Sub for &PowerSeries<T> {
    type Output = PowerSeries<T>;
    fn sub(self, rhs: Self) -> PowerSeries<T> {
        let n = self.order().min(rhs.order());
        PowerSeries {
            coeffs: (0..=n).map(|i| self.coeffs[i].clone() - rhs.coeffs[i].clone()).collect(),
        }
    }
}

impl<T: Clone + Num> Mul for &PowerSeries<T> {
    type Output = PowerSeries<T>;
    fn mul(self, rhs: Self) -> PowerSeries<T> {
        let n = self.order().min(rhs.order());
        let mut out = vec![T::zero(); n + 1];
        for i in 0..=n {
            for j in 0..=n - i {
                out[i + j] = out[i + j].clone() + self.coeffs[i].clone() * rhs.coeffs[j].clone();
            }
        }
        PowerSeries { coeffs: out }
    }
}

/// Möbius function μ(n), n ≥ 1.
pub fn mobius(n: u64) -> i64 {
    assert!(n >= 1);
    let mut n = n;
    let mut result = 1i64;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// `q(n) = Σ_{d | n} μ(n/d) p(d)`, with `p` indexed from 1 (`p[0]` is p(1)).
pub fn mobius_invert(p: &[u64]) -> Vec<i64> {
    (1..=p.len() as u64)
        .map(|n| {
            divisors(n)
                .into_iter()
                .map(|d| mobius(n / d) * p[(d - 1) as usize] as i64)
                .sum()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    #[test]
    fn mobius_values() {
        let mu: Vec<i64> = (1..=12).map(mobius).collect();
        assert_eq!(mu, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]);
    }

    #[test]
    fn exp_of_log_geometric() {
        // Σ t^n / n = -log(1 - t), so exp gives 1/(1 - t).
        let f: PowerSeries<Ratio<i64>> = PowerSeries::from_coeffs(
            std::iter::once(Ratio::from_integer(0))
                .chain((1..=6).map(|n| Ratio::new(1, n)))
                .collect(),
        );
        let g = f.exp().unwrap();
        assert!(g.coeffs().iter().all(|c| *c == Ratio::from_integer(1)));
    }

    #[test]
    fn inverse_roundtrip_f64() {
        let f = PowerSeries::from_coeffs(vec![1.0, -1.0, -1.0, 0.0, 0.0, 0.0]);
        let g = f.inverse().unwrap();
        assert_eq!(g.coeffs(), &[1.0, 1.0, 2.0, 3.0, 5.0, 8.0]);
        let one = &f * &g;
        assert_eq!(one.coeffs(), PowerSeries::<f64>::one(5).coeffs());
    }

    #[test]
    fn exp_rejects_nonzero_constant() {
        let f = PowerSeries::from_coeffs(vec![1.0f64, 0.0]);
        assert!(f.exp().is_none());
        assert!(PowerSeries::<f64>::zero(2).inverse().is_none());
    }

    #[test]
    fn mobius_inversion_full_shift() {
        let p: Vec<u64> = (1..=6).map(|n| 1u64 << n).collect();
        assert_eq!(mobius_invert(&p), vec![2, 2, 6, 12, 30, 54]);
    }
}
