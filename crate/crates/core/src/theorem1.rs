//! Threshold machinery for `P = (1+x)^m (1+x^k)`.
//!
//! Every quantity here is an exact rational. The central-ratio closed forms
//! decide the "easy" direction of the threshold `m >= k^2 - 3`; the
//! `a`, `c±`, `B`, `A` and `beta` functions (all at `m = k^2 - 3`) carry the
//! log-concavity argument, and `inequality_one_probe` checks its key
//! inequality directly at each position.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exactpoly::{
    coefficient, expand_family, is_strongly_unimodal, is_unimodal, CoeffSeq, FamilyParams,
    ParamError,
};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Theorem1Error {
    #[error("m + k = {0} has the wrong parity for this formula")]
    Parity(u64),
    #[error("closed-form denominator is {0}, must be positive")]
    NonPositiveDenominator(BigInt),
    #[error("u = {u} is outside the range where this quantity is defined for k = {k}")]
    OutOfRange { k: u64, u: i64 },
    #[error("coefficient at u = {0} is zero; ratio undefined")]
    ZeroCoefficient(i64),
    #[error("no m <= {cap} passes for k = {k}")]
    NotFound { k: u64, cap: u64 },
    #[error("cap {cap} is below k^2 = {k2}")]
    CapTooSmall { cap: u64, k2: u64 },
    #[error("input polynomial is zero")]
    ZeroPolynomial,
    #[error(transparent)]
    Param(#[from] ParamError),
}

pub type Result<T> = std::result::Result<T, Theorem1Error>;

fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

fn ratio(num: BigInt, den: BigInt) -> BigRational {
    BigRational::new(num, den)
}

fn big(v: &BigUint) -> BigInt {
    BigInt::from(v.clone())
}

/// `(m^2 + 2m + 3(k^2 - 1)) / ((m+3)^2 - k^2)` for `m + k` odd: the ratio of
/// the coefficient at `(m+k-3)/2` to the one at `(m+k-1)/2`.
pub fn central_ratio_odd(m: u64, k: u64) -> Result<BigRational> {
    if (m + k) % 2 == 0 {
        return Err(Theorem1Error::Parity(m + k));
    }
    let (m, k) = (int(m as i64), int(k as i64));
    let num = &m * &m + BigInt::from(2) * &m + BigInt::from(3) * (&k * &k - 1);
    let den: BigInt = (&m + 3) * (&m + 3) - &k * &k;
    if !den.is_positive() {
        return Err(Theorem1Error::NonPositiveDenominator(den));
    }
    Ok(ratio(num, den))
}

/// `(m^2 + k^2 + 2m) / (m^2 + 4m + 4 - k^2)` for `m + k` even: the ratio of
/// the coefficient at `(m+k-2)/2` to the central one at `(m+k)/2`.
pub fn central_ratio_even(m: u64, k: u64) -> Result<BigRational> {
    if (m + k) % 2 == 1 {
        return Err(Theorem1Error::Parity(m + k));
    }
    let (m, k) = (int(m as i64), int(k as i64));
    let num = &m * &m + &k * &k + BigInt::from(2) * &m;
    let den: BigInt = &m * &m + BigInt::from(4) * &m + 4 - &k * &k;
    if !den.is_positive() {
        return Err(Theorem1Error::NonPositiveDenominator(den));
    }
    Ok(ratio(num, den))
}

/// Positions `(off_centre, centre)` of the two central coefficients compared
/// by the closed forms.
pub fn central_positions(params: FamilyParams) -> (i64, i64) {
    let n = params.degree() as i64;
    if n % 2 == 1 {
        ((n - 3) / 2, (n - 1) / 2)
    } else {
        ((n - 2) / 2, n / 2)
    }
}

/// Closed-form central ratio (parity picks the formula).
pub fn central_ratio(params: FamilyParams) -> Result<BigRational> {
    if params.degree() % 2 == 1 {
        central_ratio_odd(params.m(), params.k())
    } else {
        central_ratio_even(params.m(), params.k())
    }
}

/// `(closed form, exact coefficient ratio)`; the two agree.
pub fn ratio_vs_coefficients(params: FamilyParams) -> Result<(BigRational, BigRational)> {
    let closed = central_ratio(params)?;
    let (off, centre) = central_positions(params);
    let den = coefficient(params, centre);
    if den.is_zero() {
        return Err(Theorem1Error::ZeroCoefficient(centre));
    }
    let exact = ratio(big(&coefficient(params, off)), big(&den));
    Ok((closed, exact))
}

/// `k^2 - 3`, the critical exponent.
pub fn critical_m(k: u64) -> u64 {
    k * k - 3
}

fn k2(k: u64) -> i64 {
    (k * k) as i64
}

/// `a(u) = prod_{i<k} (u-i)/(k^2-2-u+i)`, which equals
/// `C(k^2-3, u-k) / C(k^2-3, u)`. Zero for `u < k`.
pub fn a_of_u(k: u64, u: i64) -> Result<BigRational> {
    if u > k2(k) - 3 {
        return Err(Theorem1Error::OutOfRange { k, u });
    }
    if u < k as i64 {
        return Ok(BigRational::zero());
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k as i64 {
        num *= u - i;
        den *= k2(k) - 2 - u + i;
    }
    Ok(ratio(num, den))
}

/// `c_+(u) = 1 + k(k^2-2) / ((u-k+1)(k^2-u-3))`, equal to `a(u+1)/a(u)`.
pub fn c_plus(k: u64, u: i64) -> Result<BigRational> {
    let den = int(u - k as i64 + 1) * int(k2(k) - u - 3);
    if den.is_zero() {
        return Err(Theorem1Error::OutOfRange { k, u });
    }
    Ok(BigRational::one() + ratio(int(k as i64 * (k2(k) - 2)), den))
}

/// `c_-(u) = 1 - k(k^2-2) / (u(k^2-u+k-2))`, equal to `a(u-1)/a(u)`.
pub fn c_minus(k: u64, u: i64) -> Result<BigRational> {
    let den = int(u) * int(k2(k) - u + k as i64 - 2);
    if den.is_zero() {
        return Err(Theorem1Error::OutOfRange { k, u });
    }
    Ok(BigRational::one() - ratio(int(k as i64 * (k2(k) - 2)), den))
}

/// The binomial factor `B(u) = (k^2-2-u)(u+1) / ((k^2-3-u)u)` of `beta`.
pub fn b_factor(k: u64, u: i64) -> Result<BigRational> {
    let den = int(k2(k) - 3 - u) * int(u);
    if den.is_zero() {
        return Err(Theorem1Error::OutOfRange { k, u });
    }
    Ok(ratio(int(k2(k) - 2 - u) * int(u + 1), den))
}

/// `B(u) - 1 = (k^2-2) / (u(k^2-3-u))`.
pub fn b_minus_one(k: u64, u: i64) -> Result<BigRational> {
    let den = int(u) * int(k2(k) - 3 - u);
    if den.is_zero() {
        return Err(Theorem1Error::OutOfRange { k, u });
    }
    Ok(ratio(int(k2(k) - 2), den))
}

/// The tail factor `A(u) = (1+a(u))^2 / ((1+a(u+1))(1+a(u-1)))` of `beta`.
pub fn a_factor(k: u64, u: i64) -> Result<BigRational> {
    let one = BigRational::one();
    let a0 = &one + a_of_u(k, u)?;
    let ap = &one + a_of_u(k, u + 1)?;
    let am = &one + a_of_u(k, u - 1)?;
    Ok(&a0 * &a0 / (ap * am))
}

fn critical_family(k: u64) -> Result<FamilyParams> {
    Ok(FamilyParams::new(critical_m(k), k)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetaCheck {
    pub k: u64,
    pub u: i64,
    /// `<P,x^u>^2 / (<P,x^{u+1}> <P,x^{u-1}>)` at `m = k^2-3`.
    pub beta: BigRational,
    /// `(B(u), A(u))` where both are defined.
    pub factors: Option<(BigRational, BigRational)>,
}

impl BetaCheck {
    /// True when no factorization is available or it reproduces `beta`.
    pub fn factorization_holds(&self) -> bool {
        self.factors.as_ref().is_none_or(|(b, a)| b * a == self.beta)
    }
}

/// Exact `beta(u)` for `P = (1+x)^{k^2-3}(1+x^k)`, plus its `B * A` split.
pub fn beta_exact(k: u64, u: i64) -> Result<BetaCheck> {
    let params = critical_family(k)?;
    let top = params.degree() as i64;
    if u < 1 || u > top - 1 {
        return Err(Theorem1Error::OutOfRange { k, u });
    }
    let mid = big(&coefficient(params, u));
    let next = big(&coefficient(params, u + 1));
    let prev = big(&coefficient(params, u - 1));
    if next.is_zero() {
        return Err(Theorem1Error::ZeroCoefficient(u + 1));
    }
    if prev.is_zero() {
        return Err(Theorem1Error::ZeroCoefficient(u - 1));
    }
    let beta = ratio(&mid * &mid, next * prev);
    // a(u+1) needs u+1 <= k^2-3; B needs u <= k^2-4.
    let factors = if u + 1 <= k2(k) - 3 {
        Some((b_factor(k, u)?, a_factor(k, u)?))
    } else {
        None
    };
    Ok(BetaCheck { k, u, beta, factors })
}

/// Upper end `floor((k^2+k-5)/2)` of the positions that need checking.
pub fn probe_upper(k: u64) -> i64 {
    (k2(k) + k as i64 - 5).div_euclid(2)
}

/// Lower end `ceil(2k^2/5)` of the region covered by the first case bound.
pub fn case_split(k: u64) -> i64 {
    (2 * k2(k) + 4).div_euclid(5)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InequalityProbe {
    pub k: u64,
    pub u: i64,
    /// `B(u) - 1`.
    pub lhs: BigRational,
    /// `((c_+ + c_- - 2) a + (c_+ c_- - 1) a^2) / (1 + a)^2`.
    pub rhs: BigRational,
    pub holds: bool,
}

/// Both sides of the key inequality; it holds iff `beta(u) >= 1`.
pub fn inequality_one_probe(k: u64, u: i64) -> Result<InequalityProbe> {
    if u < k as i64 || u > k2(k) - 4 {
        return Err(Theorem1Error::OutOfRange { k, u });
    }
    let lhs = b_minus_one(k, u)?;
    let a = a_of_u(k, u)?;
    let cp = c_plus(k, u)?;
    let cm = c_minus(k, u)?;
    let one = BigRational::one();
    let two = BigRational::from_integer(BigInt::from(2));
    let one_plus_a = &one + &a;
    let rhs = ((&cp + &cm - &two) * &a + (&cp * &cm - &one) * &a * &a) / (&one_plus_a * &one_plus_a);
    let holds = lhs >= rhs;
    Ok(InequalityProbe { k, u, lhs, rhs, holds })
}

/// `(4(B(u)-1) R, (c_+ + c_- - 2) R)` with
/// `R = (u-k+1)(k^2-3-u)(k^2+k-u-2)u / (k^2-2)`, evaluated from the rational
/// definitions. Both products are integers.
pub fn case_polynomial_probe(k: u64, u: i64) -> Result<(BigInt, BigInt)> {
    if u < k as i64 || u > k2(k) - 4 {
        return Err(Theorem1Error::OutOfRange { k, u });
    }
    let r = ratio(
        int(u - k as i64 + 1) * int(k2(k) - 3 - u) * int(k2(k) + k as i64 - u - 2) * int(u),
        int(k2(k) - 2),
    );
    let four = BigRational::from_integer(BigInt::from(4));
    let two = BigRational::from_integer(BigInt::from(2));
    let first = four * b_minus_one(k, u)? * &r;
    let second = (c_plus(k, u)? + c_minus(k, u)? - two) * &r;
    debug_assert!(first.is_integer() && second.is_integer());
    Ok((first.to_integer(), second.to_integer()))
}

/// The sufficient condition the case analysis relies on at `u`:
/// `4(B-1) > c_+ + c_- - 2` for `u >= 2k^2/5`, and `B - 1 >= (c_+ - 1) a(u)`
/// below that. Failing here does not mean the inequality fails.
pub fn case_bound_holds(k: u64, u: i64) -> Result<bool> {
    if u >= case_split(k) {
        let (first, second) = case_polynomial_probe(k, u)?;
        Ok(first > second)
    } else {
        if u < k as i64 || u > k2(k) - 4 {
            return Err(Theorem1Error::OutOfRange { k, u });
        }
        let bound = (c_plus(k, u)? - BigRational::one()) * a_of_u(k, u)?;
        Ok(b_minus_one(k, u)? >= bound)
    }
}

/// `a(u)^2 >= a(u+1) a(u-1)` and `c_+ + c_- > 2` at `u`.
pub fn a_log_concave_at(k: u64, u: i64) -> Result<(bool, bool)> {
    let a0 = a_of_u(k, u)?;
    let lc = &a0 * &a0 >= a_of_u(k, u + 1)? * a_of_u(k, u - 1)?;
    let convex = c_plus(k, u)? + c_minus(k, u)? > BigRational::from_integer(BigInt::from(2));
    Ok((lc, convex))
}

/// The `u = k-1` position: `beta(k-1) = B(k-1) / (1 + a(k))`, so it is at
/// least one iff `B(k-1) >= 1 + a(k)`. Returns `(B(k-1), 1 + a(k))`.
pub fn edge_position_check(k: u64) -> Result<(BigRational, BigRational)> {
    let u = k as i64 - 1;
    Ok((b_factor(k, u)?, BigRational::one() + a_of_u(k, k as i64)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Strong,
    Unimodal,
}

impl Mode {
    pub fn passes(self, s: &CoeffSeq) -> bool {
        match self {
            Mode::Strong => is_strongly_unimodal(s).holds,
            Mode::Unimodal => is_unimodal(s).holds,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ThresholdResult {
    pub k: u64,
    pub minimal_m_strong: u64,
    pub minimal_m_unimodal: u64,
    pub predicted: u64,
}

impl ThresholdResult {
    pub fn matches(&self) -> bool {
        self.minimal_m_strong == self.predicted && self.minimal_m_unimodal == self.predicted
    }
}

/// Smallest `m` in `[1, cap]` for which `(1+x)^m (1+x^k)` passes `mode`.
///
/// Every `m` below the answer is checked, so the result does not lean on
/// monotonicity in `m`.
pub fn minimal_m(k: u64, mode: Mode, cap: u64) -> Result<u64> {
    if k < 2 {
        return Err(ParamError::BadK(k).into());
    }
    if cap < k * k {
        return Err(Theorem1Error::CapTooSmall { cap, k2: k * k });
    }
    let k_us = k as usize;
    let mut row = CoeffSeq::one();
    for m in 1..=cap {
        row = row.times_one_plus_x();
        let r = row.coeffs();
        let coeffs = (0..=m as usize + k_us)
            .map(|u| {
                let lo = r.get(u).cloned().unwrap_or_default();
                let hi = if u >= k_us { r.get(u - k_us).cloned().unwrap_or_default() } else { BigUint::zero() };
                lo + hi
            })
            .collect();
        if mode.passes(&CoeffSeq::new(coeffs)) {
            return Ok(m);
        }
    }
    Err(Theorem1Error::NotFound { k, cap })
}

/// Both minimal exponents for `k`, each confirmed by rebuilding the answer and
/// its predecessor through `expand_family`.
pub fn threshold(k: u64, cap: u64) -> Result<ThresholdResult> {
    let strong = minimal_m(k, Mode::Strong, cap)?;
    let unimodal = minimal_m(k, Mode::Unimodal, cap)?;
    for (mode, m) in [(Mode::Strong, strong), (Mode::Unimodal, unimodal)] {
        let at = expand_family(FamilyParams::new(m, k)?);
        debug_assert!(mode.passes(&at));
        if m > 1 {
            let below = expand_family(FamilyParams::new(m - 1, k)?);
            debug_assert!(!mode.passes(&below));
        }
    }
    Ok(ThresholdResult { k, minimal_m_strong: strong, minimal_m_unimodal: unimodal, predicted: critical_m(k) })
}

/// Smallest `N <= cap` with `(1+x)^N p` strongly unimodal.
pub fn generic_min_n(p: &CoeffSeq, cap: u64) -> Result<u64> {
    if p.is_zero() {
        return Err(Theorem1Error::ZeroPolynomial);
    }
    let mut q = p.clone();
    for n in 0..=cap {
        if is_strongly_unimodal(&q).holds {
            return Ok(n);
        }
        q = q.times_one_plus_x();
    }
    Err(Theorem1Error::NotFound { k: 0, cap })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn fam(m: u64, k: u64) -> FamilyParams {
        FamilyParams::new(m, k).unwrap()
    }

    #[test]
    fn odd_ratio_examples() {
        assert_eq!(central_ratio_odd(6, 3).unwrap(), q(1, 1));
        assert_eq!(central_ratio_odd(8, 3).unwrap(), q(104, 112));
        assert_eq!(central_ratio_odd(4, 3).unwrap(), q(48, 40));
        assert_eq!(central_ratio_odd(5, 3), Err(Theorem1Error::Parity(8)));
    }

    #[test]
    fn even_ratio_examples() {
        assert_eq!(central_ratio_even(2, 2).unwrap(), q(1, 1));
        assert_eq!(central_ratio_even(4, 2).unwrap(), q(28, 32));
        assert_eq!(
            central_ratio_even(2, 4),
            Err(Theorem1Error::NonPositiveDenominator(BigInt::zero()))
        );
        assert!(matches!(central_ratio_even(3, 2), Err(Theorem1Error::Parity(5))));
    }

    #[test]
    fn closed_forms_match_coefficients() {
        for (m, k, want) in [(6, 3, q(1, 1)), (8, 3, q(78, 84)), (2, 2, q(1, 1))] {
            let (closed, exact) = ratio_vs_coefficients(fam(m, k)).unwrap();
            assert_eq!(closed, exact);
            assert_eq!(exact, want);
        }
    }

    #[test]
    fn a_examples() {
        assert_eq!(a_of_u(3, 3).unwrap(), q(1, 20));
        assert_eq!(a_of_u(3, 2).unwrap(), q(0, 1));
        assert_eq!(a_of_u(3, 4).unwrap(), q(2, 5));
        assert!(a_of_u(3, 7).is_err());
    }

    #[test]
    fn a_is_a_binomial_ratio() {
        use crate::exactpoly::binomial;
        for k in 2..=9u64 {
            let m = critical_m(k);
            for u in 0..=m as i64 {
                let want = q(0, 1)
                    + BigRational::new(
                        BigInt::from(binomial(m, u - k as i64)),
                        BigInt::from(binomial(m, u)),
                    );
                assert_eq!(a_of_u(k, u).unwrap(), want, "k={k} u={u}");
            }
        }
    }

    #[test]
    fn c_examples() {
        assert_eq!(c_plus(3, 3).unwrap(), q(8, 1));
        assert_eq!(c_minus(3, 4).unwrap(), q(1, 8));
        assert_eq!(c_plus(10, 40).unwrap(), q(2747, 1767));
        assert_eq!(c_plus(10, 40).unwrap(), q(1, 1) + q(980, 1767));
        assert!(c_plus(3, 6).is_err());
        assert!(c_minus(3, 0).is_err());
    }

    #[test]
    fn c_are_neighbour_ratios_of_a() {
        for k in 3..=12u64 {
            for u in k as i64..=k2(k) - 4 {
                let a = a_of_u(k, u).unwrap();
                assert_eq!(c_plus(k, u).unwrap(), a_of_u(k, u + 1).unwrap() / &a);
                assert_eq!(c_minus(k, u).unwrap(), a_of_u(k, u - 1).unwrap() / &a);
            }
        }
    }

    #[test]
    fn beta_examples() {
        assert_eq!(beta_exact(3, 4).unwrap().beta, q(1, 1));
        assert_eq!(beta_exact(3, 2).unwrap().beta, q(225, 126));
        assert_eq!(beta_exact(3, 5).unwrap().beta, beta_exact(3, 4).unwrap().beta);
        assert!(beta_exact(3, 4).unwrap().factorization_holds());
        assert!(beta_exact(3, 0).is_err());
        assert!(beta_exact(3, 9).is_err());
    }

    #[test]
    fn b_minus_one_has_no_extra_k() {
        for k in 3..=10u64 {
            for u in k as i64..=probe_upper(k) {
                assert_eq!(b_factor(k, u).unwrap() - q(1, 1), b_minus_one(k, u).unwrap());
            }
        }
        // the form with an extra factor k disagrees
        let shown = q(10 * 98, 40 * 57);
        assert_ne!(b_minus_one(10, 40).unwrap(), shown);
    }

    #[test]
    fn inequality_probe_examples() {
        let p = inequality_one_probe(10, 40).unwrap();
        assert!(p.holds);
        let lhs = p.lhs.numer().to_string().parse::<f64>().unwrap()
            / p.lhs.denom().to_string().parse::<f64>().unwrap();
        assert!((lhs - 0.0430).abs() < 5e-5);
        assert_eq!(p.lhs, q(98, 2280));
        assert!(inequality_one_probe(3, 3).unwrap().holds);
        assert!(inequality_one_probe(8, 33).unwrap().holds);
    }

    #[test]
    fn inequality_probe_matches_beta() {
        for k in 3..=9u64 {
            for u in k as i64..=probe_upper(k) {
                let p = inequality_one_probe(k, u).unwrap();
                let b = beta_exact(k, u).unwrap().beta;
                assert_eq!(p.holds, b >= q(1, 1), "k={k} u={u}");
            }
        }
    }

    #[test]
    fn case_probe_examples() {
        assert_eq!(case_polynomial_probe(3, 4).unwrap().1, BigInt::from(60));
        let (first, second) = case_polynomial_probe(10, 40).unwrap();
        assert_eq!((first.clone(), second.clone()), (BigInt::from(8432), BigInt::from(9530)));
        assert!(first < second);
        // interior of the interval: the bound still fails
        let (first, second) = case_polynomial_probe(10, 52).unwrap();
        assert_eq!((first.clone(), second.clone()), (BigInt::from(9632), BigInt::from(9770)));
        assert!(first < second);
    }

    #[test]
    fn case_probe_matches_closed_polynomials() {
        // 4(B-1)R = 4(u-k+1)(k^2+k-u-2), (c_+ + c_- - 2)R = k(k^3 - k^2 + 2u - 3k + 3)
        for k in 3..=15i64 {
            for u in k..=(k * k + k - 5) / 2 {
                let (first, second) = case_polynomial_probe(k as u64, u).unwrap();
                assert_eq!(first, BigInt::from(4 * (u - k + 1) * (k * k + k - u - 2)));
                assert_eq!(second, BigInt::from(k * (k * k * k - k * k + 2 * u - 3 * k + 3)));
            }
        }
    }

    #[test]
    fn edge_position_examples() {
        for k in 3..=12u64 {
            let (b, rhs) = edge_position_check(k).unwrap();
            assert!(b > rhs);
            let beta = beta_exact(k, k as i64 - 1).unwrap().beta;
            assert_eq!(beta, &b / &rhs);
        }
    }

    #[test]
    fn minimal_m_examples() {
        assert_eq!(minimal_m(3, Mode::Strong, 9).unwrap(), 6);
        assert_eq!(minimal_m(2, Mode::Strong, 4).unwrap(), 1);
        assert_eq!(minimal_m(7, Mode::Strong, 49).unwrap(), 46);
        assert_eq!(minimal_m(7, Mode::Unimodal, 49).unwrap(), 46);
        assert_eq!(minimal_m(3, Mode::Strong, 5), Err(Theorem1Error::CapTooSmall { cap: 5, k2: 9 }));
    }

    #[test]
    fn threshold_result() {
        let t = threshold(5, 25).unwrap();
        assert_eq!(t.predicted, 22);
        assert!(t.matches());
    }

    #[test]
    fn generic_min_n_examples() {
        assert_eq!(generic_min_n(&CoeffSeq::from_u64s(&[1, 0, 0, 1]), 50).unwrap(), 6);
        assert_eq!(generic_min_n(&CoeffSeq::from_u64s(&[1, 1]), 50).unwrap(), 0);
        assert_eq!(generic_min_n(&CoeffSeq::from_u64s(&[1, 0, 1]), 50).unwrap(), 1);
        assert!(matches!(
            generic_min_n(&CoeffSeq::from_u64s(&[1, 0, 0, 1]), 5),
            Err(Theorem1Error::NotFound { .. })
        ));
        assert_eq!(generic_min_n(&CoeffSeq::zero(), 5), Err(Theorem1Error::ZeroPolynomial));
    }
}
