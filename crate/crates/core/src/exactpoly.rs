//! Exact coefficient sequences with nonnegative big-integer entries, the
//! family `(1+x)^m (1+x^k)`, and the two unimodality predicates.
//!
//! Nothing in here touches floating point.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, Copy, Error, PartialEq, Eq)]
pub enum ParamError {
    #[error("m must be at least 1 (got {0})")]
    BadM(u64),
    #[error("k must be at least 2 (got {0})")]
    BadK(u64),
}

/// The pair `(m, k)` selecting `P = (1+x)^m (1+x^k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct FamilyParams {
    m: u64,
    k: u64,
}

impl FamilyParams {
    pub fn new(m: u64, k: u64) -> Result<Self, ParamError> {
        if m < 1 {
            return Err(ParamError::BadM(m));
        }
        if k < 2 {
            return Err(ParamError::BadK(k));
        }
        Ok(Self { m, k })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    /// Degree of `P`, i.e. `m + k`.
    pub fn degree(&self) -> u64 {
        self.m + self.k
    }
}

/// Coefficients `a_0, ..., a_n` of a polynomial with nonnegative integer
/// coefficients. Trailing zeros are stripped on construction; the zero
/// polynomial is stored as `[0]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CoeffSeq {
    coeffs: Vec<BigUint>,
}

impl CoeffSeq {
    pub fn new(mut coeffs: Vec<BigUint>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigUint::zero());
        }
        Self { coeffs }
    }

    pub fn from_u64s(values: &[u64]) -> Self {
        Self::new(values.iter().map(|&v| BigUint::from(v)).collect())
    }

    pub fn zero() -> Self {
        Self::new(Vec::new())
    }

    pub fn one() -> Self {
        Self::new(vec![BigUint::one()])
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigUint> {
        self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    /// Coefficient of `x^i`; zero outside `0..=degree`.
    pub fn get(&self, i: i64) -> BigUint {
        if i < 0 {
            return BigUint::zero();
        }
        self.coeffs.get(i as usize).cloned().unwrap_or_default()
    }

    pub fn sum(&self) -> BigUint {
        self.coeffs.iter().sum()
    }

    /// Multiply by `(1 + x)` in place of a full convolution.
    pub fn times_one_plus_x(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let n = self.coeffs.len();
        let mut out = Vec::with_capacity(n + 1);
        out.push(self.coeffs[0].clone());
        for i in 1..n {
            out.push(&self.coeffs[i] + &self.coeffs[i - 1]);
        }
        out.push(self.coeffs[n - 1].clone());
        Self::new(out)
    }
}

impl fmt::Debug for CoeffSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter().map(|c| c.to_string())).finish()
    }
}

impl fmt::Display for CoeffSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// `C(n, j)`, zero when `j < 0` or `j > n`.
pub fn binomial(n: u64, j: i64) -> BigUint {
    if j < 0 || j as u64 > n {
        return BigUint::zero();
    }
    let j = (j as u64).min(n - j as u64);
    let mut acc = BigUint::one();
    // acc = C(n, i) after step i; each division is exact.
    for i in 0..j {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Row `C(n, 0), ..., C(n, n)` of Pascal's triangle.
pub fn binomial_row(n: u64) -> Vec<BigUint> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut acc = BigUint::one();
    row.push(acc.clone());
    for i in 0..n {
        acc *= n - i;
        acc /= i + 1;
        row.push(acc.clone());
    }
    row
}

/// Coefficient of `x^u` in `(1+x)^m (1+x^k)`: `C(m,u) + C(m,u-k)`.
pub fn coefficient(params: FamilyParams, u: i64) -> BigUint {
    binomial(params.m, u) + binomial(params.m, u - params.k as i64)
}

pub fn expand_family(params: FamilyParams) -> CoeffSeq {
    let row = binomial_row(params.m);
    let k = params.k as usize;
    let n = params.degree() as usize;
    let coeffs = (0..=n)
        .map(|u| {
            let low = row.get(u).cloned().unwrap_or_default();
            let high = if u >= k { row.get(u - k).cloned().unwrap_or_default() } else { BigUint::zero() };
            low + high
        })
        .collect();
    CoeffSeq::new(coeffs)
}

/// Schoolbook product.
pub fn poly_mul(a: &CoeffSeq, b: &CoeffSeq) -> CoeffSeq {
    if a.is_zero() || b.is_zero() {
        return CoeffSeq::zero();
    }
    let mut out = vec![BigUint::zero(); a.len() + b.len() - 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coeffs.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    CoeffSeq::new(out)
}

/// `(1+x)^n` as a sequence.
pub fn one_plus_x_pow(n: u64) -> CoeffSeq {
    CoeffSeq::new(binomial_row(n))
}

/// Which part of the strong-unimodality definition failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StrongFailure {
    /// `a_i^2 < a_{i-1} a_{i+1}`.
    LogConcavity,
    /// A zero coefficient sits strictly between two nonzero ones.
    InternalZero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct UnimodalVerdict {
    pub holds: bool,
    /// `(i, i+1)` with `a_i < a_{i+1}` after an earlier strict descent.
    pub witness: Option<(usize, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StrongVerdict {
    pub holds: bool,
    pub failure: Option<(usize, StrongFailure)>,
}

/// Both verdicts for one sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct UnimodalReport {
    pub unimodal: UnimodalVerdict,
    pub strongly_unimodal: StrongVerdict,
}

impl UnimodalReport {
    pub fn of(s: &CoeffSeq) -> Self {
        Self { unimodal: is_unimodal(s), strongly_unimodal: is_strongly_unimodal(s) }
    }
}

/// Index range `[first, last]` of nonzero entries, if any.
fn support(s: &CoeffSeq) -> Option<(usize, usize)> {
    let first = s.coeffs.iter().position(|c| !c.is_zero())?;
    let last = s.coeffs.iter().rposition(|c| !c.is_zero())?;
    Some((first, last))
}

pub fn is_unimodal(s: &CoeffSeq) -> UnimodalVerdict {
    let mut descended = false;
    for (i, w) in s.coeffs.windows(2).enumerate() {
        if w[1] < w[0] {
            descended = true;
        } else if w[1] > w[0] && descended {
            return UnimodalVerdict { holds: false, witness: Some((i, i + 1)) };
        }
    }
    UnimodalVerdict { holds: true, witness: None }
}

/// Log-concavity at every interior index plus the no-internal-zero rule.
/// Leading and trailing zeros are ignored; reported indices refer to the
/// original sequence.
pub fn is_strongly_unimodal(s: &CoeffSeq) -> StrongVerdict {
    let Some((first, last)) = support(s) else {
        return StrongVerdict { holds: true, failure: None };
    };
    let a = &s.coeffs[first..=last];
    for i in 0..a.len() {
        if i >= 1 && i + 1 < a.len() && &a[i] * &a[i] < &a[i - 1] * &a[i + 1] {
            return StrongVerdict {
                holds: false,
                failure: Some((first + i, StrongFailure::LogConcavity)),
            };
        }
        // a is trimmed, so any zero right after a nonzero entry opens an
        // internal gap.
        if i + 1 < a.len() && !a[i].is_zero() && a[i + 1].is_zero() {
            return StrongVerdict {
                holds: false,
                failure: Some((first + i, StrongFailure::InternalZero)),
            };
        }
    }
    StrongVerdict { holds: true, failure: None }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(v: &[u64]) -> CoeffSeq {
        CoeffSeq::from_u64s(v)
    }

    fn fam(m: u64, k: u64) -> FamilyParams {
        FamilyParams::new(m, k).unwrap()
    }

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(7, 0), BigUint::one());
        assert_eq!(binomial(6, -1), BigUint::zero());
        assert_eq!(binomial(6, 7), BigUint::zero());
        assert_eq!(binomial(0, 0), BigUint::one());
    }

    #[test]
    fn binomial_matches_pascal_recurrence() {
        let mut row = vec![BigUint::one()];
        for n in 1..=80u64 {
            let mut next = vec![BigUint::one(); n as usize + 1];
            for j in 1..n as usize {
                next[j] = &row[j - 1] + &row[j];
            }
            row = next;
            for j in 0..=n {
                assert_eq!(binomial(n, j as i64), row[j as usize], "C({n},{j})");
            }
            assert_eq!(binomial_row(n), row);
        }
    }

    #[test]
    fn params_reject_small_values() {
        assert_eq!(FamilyParams::new(0, 3), Err(ParamError::BadM(0)));
        assert_eq!(FamilyParams::new(3, 1), Err(ParamError::BadK(1)));
    }

    #[test]
    fn expand_family_examples() {
        assert_eq!(expand_family(fam(1, 2)), seq(&[1, 1, 1, 1]));
        assert_eq!(expand_family(fam(6, 3)), seq(&[1, 6, 15, 21, 21, 21, 21, 15, 6, 1]));
        assert_eq!(expand_family(fam(5, 3)), seq(&[1, 5, 10, 11, 10, 11, 10, 5, 1]));
    }

    #[test]
    fn expand_family_against_convolution() {
        let sixth = poly_mul(&one_plus_x_pow(6), &seq(&[1, 0, 0, 1]));
        assert_eq!(sixth, expand_family(fam(6, 3)));
        let mut p = CoeffSeq::one();
        for _ in 0..6 {
            p = poly_mul(&p, &seq(&[1, 1]));
        }
        assert_eq!(poly_mul(&p, &seq(&[1, 0, 0, 1])), expand_family(fam(6, 3)));
    }

    #[test]
    fn poly_mul_basics() {
        assert_eq!(poly_mul(&seq(&[1, 1]), &seq(&[1, 1])), seq(&[1, 2, 1]));
        let s = seq(&[3, 0, 7, 2]);
        assert_eq!(poly_mul(&CoeffSeq::one(), &s), s);
        assert!(poly_mul(&CoeffSeq::zero(), &s).is_zero());
        assert_eq!(s.times_one_plus_x(), poly_mul(&s, &seq(&[1, 1])));
    }

    #[test]
    fn coefficient_examples() {
        let p = fam(6, 3);
        assert_eq!(coefficient(p, 3), BigUint::from(21u32));
        assert_eq!(coefficient(p, -1), BigUint::zero());
        assert_eq!(coefficient(p, 10), BigUint::zero());
        assert_eq!(coefficient(p, 5), coefficient(p, 4));
        assert_eq!(coefficient(p, 5), BigUint::from(21u32));
    }

    #[test]
    fn unimodal_examples() {
        let v = is_unimodal(&seq(&[1, 5, 10, 11, 10, 11, 10, 5, 1]));
        assert!(!v.holds);
        assert_eq!(v.witness, Some((4, 5)));
        assert!(is_unimodal(&seq(&[1, 6, 15, 21, 21, 21, 21, 15, 6, 1])).holds);
        assert!(is_unimodal(&seq(&[3])).holds);
        assert!(is_unimodal(&CoeffSeq::zero()).holds);
        // a plateau after a descent is still fine
        assert!(is_unimodal(&seq(&[1, 3, 2, 2, 1])).holds);
    }

    #[test]
    fn strong_examples() {
        let v = is_strongly_unimodal(&seq(&[1, 0, 1]));
        assert_eq!(v.failure, Some((0, StrongFailure::InternalZero)));
        assert!(is_strongly_unimodal(&seq(&[1, 6, 15, 21, 21, 21, 21, 15, 6, 1])).holds);
        assert!(is_strongly_unimodal(&seq(&[1, 2, 4])).holds);
        let v = is_strongly_unimodal(&seq(&[1, 2, 5]));
        assert_eq!(v.failure, Some((1, StrongFailure::LogConcavity)));
    }

    #[test]
    fn strong_ignores_outer_zeros() {
        let s = CoeffSeq::new(vec![0u32, 0, 1, 2, 1].into_iter().map(BigUint::from).collect());
        assert!(is_strongly_unimodal(&s).holds);
        let v = is_strongly_unimodal(&seq(&[0, 1, 0, 0, 1]));
        assert_eq!(v.failure, Some((1, StrongFailure::InternalZero)));
    }

    #[test]
    fn wide_gap_is_an_internal_zero() {
        // a_i a_{i+2} = 0 at every i here, yet 1 + x^3 has internal zeros.
        let v = is_strongly_unimodal(&seq(&[1, 0, 0, 1]));
        assert_eq!(v.failure, Some((0, StrongFailure::InternalZero)));
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        let s = seq(&[1, 2, 0, 0]);
        assert_eq!(s.degree(), 1);
        assert_eq!(s.to_string(), "1 2");
    }
}
