//! Membership of `((1+z)/2)^m (1+z^k)/2` in the class E.
//!
//! For `f` with `f(1) = 1` the variance is `V(f) = f''(1) + f'(1) - f'(1)^2`
//! and the membership defect on the unit circle is
//! `H(f)(z) = exp(-Re V(f) |1-z|^2) - |f(z)|^2`; `f` is in E iff `H >= 0`.
//!
//! For the family, with `s = sin^2(theta/2)`, `H >= 0` at `z = e^{i theta}` iff
//! `m >= L(k, theta)` where
//!
//! ```text
//! L(k, theta) = (k^2 s + ln cos^2(k theta/2)) / (-ln(1 - s) - s)
//! ```
//!
//! so the least admissible `m` is the ceiling of `max L`. The maximum sits on
//! `(pi/k, 2pi/k]`, and `max L / k^4` is squeezed between
//! `alpha / (1 + 8/k^2)` and `alpha`, with `alpha` from [`crate::certmax`].

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::certmax::{d_value, ln_cos2, Interval};
use crate::search::{argmax, golden_max};

/// Default refinement tolerance in radians.
pub const DEFAULT_REFINE_TOL: f64 = 1e-10;
/// Default grid size for scans and certificates.
pub const DEFAULT_GRID: usize = 100_000;
/// A computed maximum closer than this to an integer is flagged.
pub const NEAR_INTEGER: f64 = 1e-6;
/// Certificate thresholds on the normalized defect.
pub const MEMBER_FLOOR: f64 = -1e-12;
pub const WITNESS_CEILING: f64 = -1e-9;

#[derive(Debug, Error, PartialEq)]
pub enum EClassError {
    #[error("f(1) = {0}, expected 1")]
    NotNormalized(String),
    #[error("f(1) = 0, cannot normalize")]
    ZeroAtOne,
    #[error("invalid scan: {0}")]
    BadScan(&'static str),
    #[error("coarse scan over (0, pi) found L({theta}) = {value} above the reported maximum {max}")]
    ReductionViolation { theta: f64, value: f64, max: f64 },
    #[error("minimum normalized defect {min} at theta = {theta} is between -1e-9 and -1e-12; refine the grid")]
    Inconclusive { min: f64, theta: f64 },
    #[error("m must be >= 1 and k >= 2 (got m = {m}, k = {k})")]
    BadParams { m: u64, k: u64 },
}

/// Input to [`variance`].
#[derive(Debug, Clone, PartialEq)]
pub enum VarianceInput {
    /// Rational coefficients `a_0, ..., a_n` with `sum a_i = 1`.
    Polynomial(Vec<BigRational>),
    /// `((1+z)/2)^m`.
    HalfOnePlusZPow(u64),
    /// `(1+z^k)/2`.
    HalfOnePlusZk(u64),
}

impl VarianceInput {
    /// Accepts only coefficients that already satisfy `f(1) = 1`.
    pub fn polynomial(coeffs: Vec<BigRational>) -> Result<Self, EClassError> {
        let total: BigRational = coeffs.iter().sum();
        if !total.is_one() {
            return Err(EClassError::NotNormalized(total.to_string()));
        }
        Ok(Self::Polynomial(coeffs))
    }

    /// Divides by `f(1)`.
    pub fn normalized(coeffs: Vec<BigRational>) -> Result<Self, EClassError> {
        let total: BigRational = coeffs.iter().sum();
        if total.is_zero() {
            return Err(EClassError::ZeroAtOne);
        }
        Ok(Self::Polynomial(coeffs.into_iter().map(|c| c / &total).collect()))
    }
}

/// `f''(1) + f'(1) - f'(1)^2`, which for `f(1) = 1` is `sum i^2 a_i - (sum i a_i)^2`.
pub fn variance(f: &VarianceInput) -> BigRational {
    match f {
        VarianceInput::Polynomial(coeffs) => {
            let mut first = BigRational::zero();
            let mut second = BigRational::zero();
            for (i, a) in coeffs.iter().enumerate() {
                let i = BigRational::from_integer(BigInt::from(i));
                first += &i * a;
                second += &i * &i * a;
            }
            second - &first * &first
        }
        VarianceInput::HalfOnePlusZPow(m) => BigRational::new(BigInt::from(*m), BigInt::from(4)),
        VarianceInput::HalfOnePlusZk(k) => BigRational::new(BigInt::from(k * k), BigInt::from(4)),
    }
}

/// Polynomial with complex coefficients, used for the product identity.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexPoly {
    coeffs: Vec<Complex64>,
}

impl ComplexPoly {
    /// Scales so that `f(1) = 1`; `None` if `f(1)` is zero.
    pub fn normalized(coeffs: Vec<Complex64>) -> Option<Self> {
        let total: Complex64 = coeffs.iter().sum();
        if total.norm() == 0.0 {
            return None;
        }
        Some(Self { coeffs: coeffs.into_iter().map(|c| c / total).collect() })
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
    }

    pub fn variance(&self) -> Complex64 {
        let mut first = Complex64::new(0.0, 0.0);
        let mut second = Complex64::new(0.0, 0.0);
        for (i, a) in self.coeffs.iter().enumerate() {
            let i = i as f64;
            first += a * i;
            second += a * (i * i);
        }
        second - first * first
    }

    pub fn mul(&self, other: &ComplexPoly) -> ComplexPoly {
        let mut out = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ComplexPoly { coeffs: out }
    }

    /// `H(f)(e^{i theta})`.
    pub fn defect(&self, theta: f64) -> f64 {
        let z = Complex64::from_polar(1.0, theta);
        (-self.variance().re * (Complex64::new(1.0, 0.0) - z).norm_sqr()).exp() - self.eval(z).norm_sqr()
    }
}

/// `|H(fg) - (exp(-Re V(f)|1-z|^2) H(g) + |g|^2 H(f))|` at `z = e^{i theta}`,
/// relative to the largest term on either side. `H(fg)` is computed from the product
/// polynomial, so its variance is independent of `V(f) + V(g)`.
pub fn h_product_identity_residual(f: &ComplexPoly, g: &ComplexPoly, theta: f64) -> f64 {
    let z = Complex64::from_polar(1.0, theta);
    let dist = (Complex64::new(1.0, 0.0) - z).norm_sqr();
    let lhs = f.mul(g).defect(theta);
    let weight = (-f.variance().re * dist).exp();
    let g_abs2 = g.eval(z).norm_sqr();
    let (first, second) = (weight * g.defect(theta), g_abs2 * f.defect(theta));
    let rhs = first + second;
    // largest term that enters either side
    let fg_abs2 = f.eval(z).norm_sqr() * g_abs2;
    let exp_fg = lhs + fg_abs2;
    let scale = [1.0, g_abs2, fg_abs2, exp_fg.abs(), first.abs() + weight * g_abs2, second.abs()]
        .into_iter()
        .fold(0.0, f64::max);
    (lhs - rhs).abs() / scale
}

/// `sin^2(theta/2)`.
fn half_sin2(theta: f64) -> f64 {
    let s = (0.5 * theta).sin();
    s * s
}

/// `-ln(1 - s) - s` with `s = sin^2(theta/2)`, via its series for small `s`.
pub fn l_denominator(theta: f64) -> f64 {
    let s = half_sin2(theta);
    if s < 0.25 {
        let mut power = s * s;
        let mut sum = 0.0;
        let mut j = 2.0;
        loop {
            let term = power / j;
            sum += term;
            if term <= 1e-18 * sum {
                break;
            }
            power *= s;
            j += 1.0;
        }
        sum
    } else {
        -ln_cos2(0.5 * theta) - s
    }
}

/// Whether `theta` lies within `eps` of some `(2t+1) pi / k`.
pub fn in_guard_zone(k: u64, theta: f64, eps: f64) -> bool {
    let step = PI / k as f64;
    // nearest odd multiple of pi/k
    let t = ((theta / step - 1.0) / 2.0).round();
    let centre = (2.0 * t + 1.0) * step;
    (theta - centre).abs() < eps
}

/// Default guard half-width `1e-8 pi / k`.
pub fn default_exclusion(k: u64) -> f64 {
    1e-8 * PI / k as f64
}

/// `L(k, theta)` with the default guard zones; `-inf` inside them.
pub fn l_value(k: u64, theta: f64) -> f64 {
    l_value_guarded(k, theta, default_exclusion(k))
}

/// `L(k, theta)`, returning `-inf` within `eps` of a singular angle.
pub fn l_value_guarded(k: u64, theta: f64, eps: f64) -> f64 {
    if in_guard_zone(k, theta, eps) {
        return f64::NEG_INFINITY;
    }
    let kf = k as f64;
    (kf * kf * half_sin2(theta) + ln_cos2(0.5 * kf * theta)) / l_denominator(theta)
}

/// `M(k, theta) = k^2 sin^2(theta/2) / (-ln(1-s) - s)`.
pub fn m_value(k: u64, theta: f64) -> f64 {
    let kf = k as f64;
    kf * kf * half_sin2(theta) / l_denominator(theta)
}

/// `N := L - M = ln cos^2(k theta/2) / (-ln(1-s) - s)`; `-inf` in guard zones.
pub fn n_value(k: u64, theta: f64) -> f64 {
    if in_guard_zone(k, theta, default_exclusion(k)) {
        return f64::NEG_INFINITY;
    }
    ln_cos2(0.5 * k as f64 * theta) / l_denominator(theta)
}

/// The numerator read without the `k^2` weight on `sin^2(theta/2)`. Kept
/// only to show that this reading breaks `L = M + N`.
pub fn l_value_unweighted(k: u64, theta: f64) -> f64 {
    (half_sin2(theta) + ln_cos2(0.5 * k as f64 * theta)) / l_denominator(theta)
}

/// `H(fg)` for `f = ((1+z)/2)^m`, `g = (1+z^k)/2` at `z = e^{i theta}`:
/// `exp(-(k^2+m) s) - cos^2(k theta/2) cos^2(theta/2)^m`.
pub fn h_family(m: u64, k: u64, theta: f64) -> f64 {
    let s = half_sin2(theta);
    let kf = k as f64;
    let c = (0.5 * kf * theta).cos();
    let tail = if c == 0.0 { 0.0 } else { (m as f64 * ln_cos2(0.5 * theta)).exp() * c * c };
    (-(kf * kf + m as f64) * s).exp() - tail
}

/// `H(fg) exp((k^2+m) s) = 1 - exp(den (L - m))`, same sign as `H(fg)`
/// but without the underflow of the raw defect.
pub fn h_family_normalized(m: u64, k: u64, theta: f64) -> f64 {
    let kf = k as f64;
    let c = (0.5 * kf * theta).cos();
    if c == 0.0 {
        return 1.0;
    }
    let numerator = kf * kf * half_sin2(theta) + ln_cos2(0.5 * kf * theta);
    -(numerator - m as f64 * l_denominator(theta)).exp_m1()
}

/// Scan configuration for maximizing `L(k, .)` on `(pi/k, 2pi/k]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThetaScan {
    pub k: u64,
    pub grid_points: usize,
    pub refine_tol: f64,
    pub exclusion_eps: f64,
}

impl ThetaScan {
    pub fn new(k: u64) -> Self {
        Self { k, grid_points: DEFAULT_GRID, refine_tol: DEFAULT_REFINE_TOL, exclusion_eps: default_exclusion(k) }
    }

    pub fn with_grid(mut self, grid_points: usize) -> Self {
        self.grid_points = grid_points;
        self
    }

    pub fn with_tol(mut self, refine_tol: f64) -> Self {
        self.refine_tol = refine_tol;
        self
    }

    fn validate(&self) -> Result<(), EClassError> {
        if self.k < 2 {
            return Err(EClassError::BadScan("k must be at least 2"));
        }
        if self.grid_points < 1000 {
            return Err(EClassError::BadScan("grid_points must be at least 1000"));
        }
        if !(self.refine_tol > 0.0) {
            return Err(EClassError::BadScan("refine_tol must be positive"));
        }
        if !(self.exclusion_eps > 0.0) {
            return Err(EClassError::BadScan("exclusion_eps must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EClassResult {
    pub k: u64,
    pub max_l: f64,
    pub argmax_theta: f64,
    /// Least `m` with the family in E.
    pub m_of_k: u64,
    /// `max_l` was within [`NEAR_INTEGER`] of an integer and `m_of_k` was
    /// settled by direct certificates.
    pub near_integer: bool,
    /// `k < 9`: outside the range where the `k^4` bounds are proved.
    pub below_supported_k: bool,
    pub sandwich_lo: Option<f64>,
    pub sandwich_hi: Option<f64>,
}

impl EClassResult {
    pub fn scaled(&self) -> f64 {
        self.max_l / (self.k as f64).powi(4)
    }

    /// Fill in `[alpha_lo / (1 + 8/k^2), alpha_hi]`.
    pub fn with_alpha(mut self, alpha: &Interval) -> Self {
        let kf = self.k as f64;
        self.sandwich_lo = Some(alpha.lo / (1.0 + 8.0 / (kf * kf)));
        self.sandwich_hi = Some(alpha.hi);
        self
    }

    /// `max_l / k^4` inside the sandwich, padded by `slack`.
    pub fn in_sandwich(&self, slack: f64) -> Option<bool> {
        let (lo, hi) = (self.sandwich_lo?, self.sandwich_hi?);
        let v = self.scaled();
        Some(lo - slack <= v && v <= hi + slack)
    }
}

fn eval_grid<F: Fn(f64) -> f64 + Sync>(points: &[f64], f: F) -> Vec<f64> {
    points.par_iter().map(|&t| f(t)).collect()
}

/// Maximize `L(k, .)` on `(pi/k, 2pi/k]`: dense grid, then golden section
/// between the grid neighbours of the best point. A coarse scan of the whole
/// of `(0, pi)` must not beat the result.
pub fn max_l(scan: &ThetaScan) -> Result<EClassResult, EClassError> {
    scan.validate()?;
    let k = scan.k;
    let eps = scan.exclusion_eps;
    let step = PI / k as f64;
    let n = scan.grid_points;
    let points: Vec<f64> = (1..=n).map(|i| step + step * i as f64 / n as f64).collect();
    let values = eval_grid(&points, |t| l_value_guarded(k, t, eps));
    let (best, best_value) = argmax(&values).ok_or(EClassError::BadScan("empty grid"))?;

    let lo = if best == 0 { step + eps } else { points[best - 1] };
    let hi = points[(best + 1).min(n - 1)];
    let refined = golden_max(|t| l_value_guarded(k, t, eps), lo, hi, scan.refine_tol);
    let (argmax_theta, max_value) =
        if refined.value >= best_value { (refined.x, refined.value) } else { (points[best], best_value) };

    // Whole-interval check.
    let coarse = (n / 5).max(20_000);
    let coarse_points: Vec<f64> = (0..coarse).map(|i| PI * (i as f64 + 0.5) / coarse as f64).collect();
    let coarse_values = eval_grid(&coarse_points, |t| l_value_guarded(k, t, eps));
    if let Some((i, v)) = argmax(&coarse_values) {
        if v > max_value + 1e-9 * max_value.abs().max(1.0) {
            return Err(EClassError::ReductionViolation { theta: coarse_points[i], value: v, max: max_value });
        }
    }

    let nearest = max_value.round();
    let (m_of_k, near_integer) = if (max_value - nearest).abs() < NEAR_INTEGER && nearest >= 1.0 {
        let candidate = nearest as u64;
        let member = membership_certificate(candidate, k, n.max(DEFAULT_GRID))?;
        (if member.member { candidate } else { candidate + 1 }, true)
    } else {
        (max_value.ceil().max(1.0) as u64, false)
    };

    Ok(EClassResult {
        k,
        max_l: max_value,
        argmax_theta,
        m_of_k,
        near_integer,
        below_supported_k: k < 9,
        sandwich_lo: None,
        sandwich_hi: None,
    })
}

/// Grid certificate for membership of the family in E.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Membership {
    pub m: u64,
    pub k: u64,
    pub member: bool,
    /// Smallest normalized defect `H(fg) exp((k^2+m) s)` found.
    pub min_defect: f64,
    /// Angle of `min_defect`; a witness when `member` is false.
    pub theta: f64,
}

/// Check `H(fg) >= 0` on a grid of `(0, pi)` (guard zones skipped, where the
/// defect is positive anyway), refining around the worst grid point.
///
/// Thresholds apply to the normalized defect `1 - exp(den (L - m))`, which
/// has the sign of `H(fg)`: at least `-1e-12` means member, below `-1e-9`
/// gives a witness, and anything in between is inconclusive.
pub fn membership_certificate(m: u64, k: u64, grid: usize) -> Result<Membership, EClassError> {
    if m < 1 || k < 2 {
        return Err(EClassError::BadParams { m, k });
    }
    let grid = grid.max(2);
    let eps = default_exclusion(k);
    let points: Vec<f64> = (0..grid).map(|i| PI * (i as f64 + 0.5) / grid as f64).collect();
    let defect = |t: f64| {
        if in_guard_zone(k, t, eps) {
            f64::INFINITY
        } else {
            h_family_normalized(m, k, t)
        }
    };
    let values = eval_grid(&points, defect);
    let negated: Vec<f64> = values.iter().map(|v| -v).collect();
    let (worst, worst_neg) = argmax(&negated).ok_or(EClassError::BadScan("empty grid"))?;
    let lo = if worst == 0 { 0.0 } else { points[worst - 1] };
    let hi = if worst + 1 == grid { PI } else { points[worst + 1] };
    let refined = golden_max(|t| -defect(t), lo, hi, 1e-13);
    let (theta, min_defect) =
        if refined.value > worst_neg { (refined.x, -refined.value) } else { (points[worst], -worst_neg) };

    if min_defect >= MEMBER_FLOOR {
        Ok(Membership { m, k, member: true, min_defect, theta })
    } else if min_defect < WITNESS_CEILING {
        Ok(Membership { m, k, member: false, min_defect, theta })
    } else {
        Err(EClassError::Inconclusive { min: min_defect, theta })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Lemma23 {
    pub psi: f64,
    /// `-ln(1 - sin^2 psi) - sin^2 psi`.
    pub lhs: f64,
    /// `psi^4 / 2`.
    pub rhs: f64,
    pub holds: bool,
}

impl Lemma23 {
    pub fn margin(&self) -> f64 {
        self.lhs - self.rhs
    }
}

/// `-ln(1 - sin^2 psi) - sin^2 psi >= psi^4 / 2` for `0 <= psi <= 1/(2 sqrt 2)`.
pub fn lemma23_check(psi: f64) -> Lemma23 {
    let lhs = l_denominator(2.0 * psi);
    let rhs = 0.5 * psi.powi(4);
    // The true margin is psi^8/60 near 0, far below one ulp of rhs, so allow
    // a few ulps of rounding in the two evaluations.
    Lemma23 { psi, lhs, rhs, holds: lhs >= rhs * (1.0 - 8.0 * f64::EPSILON) }
}

/// Pointwise and maximum-level comparison of `L/k^4` with `D(k theta/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SandwichReport {
    pub k: u64,
    pub grid_points: usize,
    /// `L/k^4 <= D(z)` at every grid point.
    pub upper_holds: bool,
    pub upper_violation: Option<f64>,
    /// `L/k^4 >= D(z) / (1 + 8/k^2)` at every grid point.
    pub lower_holds: bool,
    pub lower_violation: Option<f64>,
    /// `L/k^4 >= 2/((1+8/k^2) z^2) + 2 ln cos^2 z / z^4`, the form that the
    /// two term-by-term estimates actually give.
    pub termwise_lower_holds: bool,
    pub termwise_lower_violation: Option<f64>,
    pub max_scaled: f64,
    pub enclosure_lo: f64,
    pub enclosure_hi: f64,
    /// `max L / k^4` in `[alpha_lo/(1+8/k^2), alpha_hi]` (with `1e-9` slack).
    pub max_in_enclosure: bool,
}

/// Compare `L/k^4` with the `D`-based bounds on a grid of `(pi/k, 2pi/k]` and
/// check `max L / k^4` against the enclosure of `alpha`.
pub fn sandwich_check(k: u64, alpha: &Interval, grid: usize, max: &EClassResult) -> SandwichReport {
    let kf = k as f64;
    let k4 = kf.powi(4);
    let shrink = 1.0 + 8.0 / (kf * kf);
    let step = PI / kf;
    let eps = default_exclusion(k);
    let mut report = SandwichReport {
        k,
        grid_points: grid,
        upper_holds: true,
        upper_violation: None,
        lower_holds: true,
        lower_violation: None,
        termwise_lower_holds: true,
        termwise_lower_violation: None,
        max_scaled: max.max_l / k4,
        enclosure_lo: alpha.lo / shrink,
        enclosure_hi: alpha.hi,
        max_in_enclosure: false,
    };
    for i in 1..=grid {
        let theta = step + step * i as f64 / grid as f64;
        if in_guard_zone(k, theta, eps) {
            continue;
        }
        let scaled = l_value_guarded(k, theta, eps) / k4;
        let z = 0.5 * kf * theta;
        let d = d_value(z);
        // relative slack for rounding in both evaluations
        let tol = 1e-12 * (1.0 + d.abs());
        if scaled > d + tol && report.upper_holds {
            report.upper_holds = false;
            report.upper_violation = Some(theta);
        }
        if scaled < d / shrink - tol && report.lower_holds {
            report.lower_holds = false;
            report.lower_violation = Some(theta);
        }
        let z2 = z * z;
        let termwise = 2.0 / (shrink * z2) + 2.0 * ln_cos2(z) / (z2 * z2);
        if scaled < termwise - 1e-12 * (1.0 + termwise.abs()) && report.termwise_lower_holds {
            report.termwise_lower_holds = false;
            report.termwise_lower_violation = Some(theta);
        }
    }
    report.max_in_enclosure =
        report.enclosure_lo - 1e-9 <= report.max_scaled && report.max_scaled <= report.enclosure_hi + 1e-9;
    report
}

/// Grid maxima of `L` on `((2t+3)pi/k, (2t+5)pi/k)` and on
/// `((2t+1)pi/k, (2t+2)pi/k)`; the second should be larger.
pub fn domination_check(k: u64, t: u64, grid: usize) -> (f64, f64) {
    let step = PI / k as f64;
    let grid_max = |a: f64, b: f64| {
        (1..grid)
            .map(|i| l_value(k, a + (b - a) * i as f64 / grid as f64))
            .fold(f64::NEG_INFINITY, f64::max)
    };
    let far = grid_max((2 * t + 3) as f64 * step, (2 * t + 5) as f64 * step);
    let near = grid_max((2 * t + 1) as f64 * step, (2 * t + 2) as f64 * step);
    (far, near)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certmax::certified_alpha;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn variance_examples() {
        assert_eq!(variance(&VarianceInput::HalfOnePlusZPow(12)), q(3, 1));
        assert_eq!(variance(&VarianceInput::HalfOnePlusZk(5)), q(25, 4));
        let z = VarianceInput::polynomial(vec![q(0, 1), q(1, 1)]).unwrap();
        assert_eq!(variance(&z), q(0, 1));
    }

    #[test]
    fn variance_of_expanded_family_matches_tags() {
        // ((1+z)/2)^m expanded: a_i = C(m,i)/2^m
        for m in 1..=12u64 {
            let coeffs: Vec<BigRational> = crate::exactpoly::binomial_row(m)
                .into_iter()
                .map(|c| BigRational::new(BigInt::from(c), BigInt::from(1u64 << m)))
                .collect();
            let f = VarianceInput::polynomial(coeffs).unwrap();
            assert_eq!(variance(&f), variance(&VarianceInput::HalfOnePlusZPow(m)));
        }
        for k in 2..=9usize {
            let mut coeffs = vec![q(0, 1); k + 1];
            coeffs[0] = q(1, 2);
            coeffs[k] = q(1, 2);
            let g = VarianceInput::polynomial(coeffs).unwrap();
            assert_eq!(variance(&g), variance(&VarianceInput::HalfOnePlusZk(k as u64)));
        }
    }

    #[test]
    fn variance_rejects_unnormalized() {
        assert!(matches!(
            VarianceInput::polynomial(vec![q(1, 1), q(1, 1)]),
            Err(EClassError::NotNormalized(_))
        ));
        let f = VarianceInput::normalized(vec![q(1, 1), q(1, 1)]).unwrap();
        assert_eq!(variance(&f), q(1, 4));
        assert_eq!(VarianceInput::normalized(vec![q(1, 1), q(-1, 1)]), Err(EClassError::ZeroAtOne));
    }

    #[test]
    fn h_family_examples() {
        assert_eq!(h_family(10, 4, 0.0), 0.0);
        for k in [3u64, 5, 9] {
            let m = 50;
            let theta = PI / k as f64;
            let kf = k as f64;
            let want = (-(kf * kf + m as f64) * half_sin2(theta)).exp();
            assert!((h_family(m, k, theta) - want).abs() < 1e-15);
            assert!(h_family(m, k, theta) > 0.0);
        }
    }

    #[test]
    fn normalized_defect_has_sign_of_raw() {
        for &(m, k) in &[(30u64, 4u64), (300, 6), (2000, 9)] {
            for i in 1..200 {
                let theta = PI * i as f64 / 200.0;
                let raw = h_family(m, k, theta);
                let scaled = h_family_normalized(m, k, theta);
                let back = scaled * (-((k * k + m) as f64) * half_sin2(theta)).exp();
                if raw.abs() > 1e-300 {
                    assert!((raw - back).abs() <= 1e-9 * raw.abs() + 1e-300, "m={m} k={k} theta={theta}");
                }
            }
        }
    }

    #[test]
    fn product_identity_examples() {
        let half = ComplexPoly::normalized(vec![Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)]).unwrap();
        assert!(h_product_identity_residual(&half, &half, PI / 3.0) <= 1e-12);
        let mut f = half.clone();
        for _ in 0..2 {
            f = f.mul(&half);
        }
        let mut g = vec![Complex64::new(0.0, 0.0); 5];
        g[0] = Complex64::new(1.0, 0.0);
        g[4] = Complex64::new(1.0, 0.0);
        let g = ComplexPoly::normalized(g).unwrap();
        assert!(h_product_identity_residual(&f, &g, 0.7) <= 1e-12);
        assert!(f.mul(&g).defect(0.0).abs() < 1e-15);
        assert!(f.defect(0.0).abs() < 1e-15 && g.defect(0.0).abs() < 1e-15);
    }

    #[test]
    fn denominator_series_matches_direct_form() {
        for i in 1..100 {
            let theta = 1.2 * i as f64 / 100.0;
            let s = half_sin2(theta);
            let direct = -(-s).ln_1p() - s;
            assert!((l_denominator(theta) - direct).abs() <= 1e-9 * direct, "theta={theta}");
        }
        assert!(l_denominator(1e-4) > 0.0);
    }

    #[test]
    fn l_is_m_plus_n() {
        for k in [9u64, 13, 20] {
            for i in 1..500 {
                let theta = PI * i as f64 / 500.0 + 1e-3;
                let l = l_value(k, theta);
                let (m, n) = (m_value(k, theta), n_value(k, theta));
                if l.is_finite() && n.is_finite() {
                    assert!((l - (m + n)).abs() <= 1e-10 * l.abs().max(1.0), "k={k} theta={theta}");
                    let unweighted = l_value_unweighted(k, theta);
                    assert!((unweighted - (m + n)).abs() > 1e-6 * l.abs().max(1.0));
                }
            }
        }
    }

    #[test]
    fn l_is_negative_below_pi_over_k() {
        for k in [2u64, 5, 9, 16] {
            for i in 1..1000 {
                let theta = PI / k as f64 * i as f64 / 1000.0;
                assert!(l_value(k, theta) < 0.0, "k={k} theta={theta}");
            }
        }
    }

    #[test]
    fn l_has_no_reflection_symmetry_about_half_pi() {
        // L(theta) and L(pi - theta) use sin^2(theta/2) and cos^2(theta/2)
        // respectively, so they differ.
        let (a, b) = (l_value(9, 0.5), l_value(9, PI - 0.5));
        assert!((a - b).abs() > 1.0, "{a} vs {b}");
    }

    #[test]
    fn l_small_angle_limit() {
        // series: L -> -(2k^2 + k^4)/3 as theta -> 0
        for k in [9u64, 20, 30] {
            let kf = k as f64;
            let limit = -(2.0 * kf * kf + kf.powi(4)) / 3.0;
            for theta in [1e-3, 1e-4] {
                let l = l_value(k, theta);
                assert!(l < 0.0);
                assert!((l - limit).abs() < 2e-2 * limit.abs(), "k={k} theta={theta} L={l} limit={limit}");
            }
        }
    }

    #[test]
    fn guard_zones() {
        assert!(in_guard_zone(9, PI / 9.0, 1e-9));
        assert!(in_guard_zone(9, 3.0 * PI / 9.0 + 1e-12, 1e-9));
        assert!(!in_guard_zone(9, 2.0 * PI / 9.0, 1e-9));
        assert_eq!(l_value(9, PI / 9.0), f64::NEG_INFINITY);
        assert_eq!(n_value(9, PI / 9.0), f64::NEG_INFINITY);
    }

    #[test]
    fn m_decreasing_and_n_nonpositive() {
        let k = 11;
        let mut prev = f64::INFINITY;
        for i in 1..2000 {
            let theta = PI / 2.0 * i as f64 / 2000.0;
            let m = m_value(k, theta);
            assert!(m < prev);
            prev = m;
        }
        // leading order 8k^2/theta^2 near zero
        let m = m_value(k, 0.01);
        let lead = 2.0 * (k * k) as f64 / half_sin2(0.01);
        assert!((m / lead - 1.0).abs() < 1e-3);
        for i in 1..997 {
            let theta = PI * i as f64 / 997.0;
            assert!(n_value(k, theta) < 0.0);
        }
        assert!(n_value(k, 2.0 * PI / k as f64).abs() < 1e-20);
    }

    #[test]
    fn max_l_for_k9() {
        let r = max_l(&ThetaScan::new(9)).unwrap();
        // 40-digit mpmath value: 2064.934451864474
        assert!((r.max_l - 2064.934_451_864_474).abs() < 1e-7, "{}", r.max_l);
        assert_eq!(r.m_of_k, 2065);
        assert!(!r.near_integer);
        assert!(PI / 9.0 < r.argmax_theta && r.argmax_theta <= 2.0 * PI / 9.0);
        assert!((r.argmax_theta - 0.493_480_936_575_791_1).abs() < 1e-7);
        assert!((1929..=2119).contains(&r.m_of_k));
    }

    #[test]
    fn max_l_below_supported_k_still_runs() {
        let r = max_l(&ThetaScan::new(8).with_grid(20_000)).unwrap();
        assert!(r.below_supported_k);
        assert!((r.max_l - 1280.240_479_492_498_5).abs() < 1e-6);
    }

    #[test]
    fn scan_validation() {
        assert!(matches!(max_l(&ThetaScan::new(9).with_grid(10)), Err(EClassError::BadScan(_))));
        assert!(matches!(max_l(&ThetaScan::new(9).with_tol(0.0)), Err(EClassError::BadScan(_))));
    }

    #[test]
    fn membership_examples() {
        let r = max_l(&ThetaScan::new(9)).unwrap();
        let at = membership_certificate(r.m_of_k, 9, DEFAULT_GRID).unwrap();
        assert!(at.member);
        let below = membership_certificate(r.m_of_k - 1, 9, DEFAULT_GRID).unwrap();
        assert!(!below.member);
        assert!((below.theta - r.argmax_theta).abs() < 1e-4);
        assert!(h_family(r.m_of_k, 9, r.argmax_theta) >= -1e-12);
        assert!(membership_certificate(9u64.pow(5), 9, DEFAULT_GRID).unwrap().member);
        assert_eq!(membership_certificate(0, 9, 100), Err(EClassError::BadParams { m: 0, k: 9 }));
    }

    #[test]
    fn lemma23_examples() {
        let zero = lemma23_check(0.0);
        assert!(zero.holds && zero.margin() == 0.0);
        let edge = lemma23_check(1.0 / (2.0 * 2f64.sqrt()));
        assert!(edge.holds && edge.margin() > 0.0);
        assert!(lemma23_check(0.2).holds);
    }

    #[test]
    fn sandwich_examples() {
        let alpha = certified_alpha(1e-9).unwrap().value_enclosure;
        for k in [9u64, 30] {
            let r = max_l(&ThetaScan::new(k)).unwrap();
            let s = sandwich_check(k, &alpha, 10_000, &r);
            assert!(s.upper_holds, "k={k}");
            assert!(s.termwise_lower_holds, "k={k}");
            assert!(s.max_in_enclosure, "k={k}");
            // the displayed lower bound fails just right of pi/k, where the
            // logarithm dominates
            assert!(!s.lower_holds);
            let v = s.lower_violation.unwrap();
            assert!(v < 1.2 * PI / k as f64);
            let width = s.enclosure_hi - s.enclosure_lo;
            assert!(width <= alpha.hi * 8.0 / (k * k) as f64 + 1e-8);
        }
        let r = max_l(&ThetaScan::new(8).with_grid(20_000)).unwrap();
        let s = sandwich_check(8, &alpha, 10_000, &r);
        assert!(s.termwise_lower_holds && !s.lower_holds);
    }

    #[test]
    fn domination_examples() {
        for k in [12u64, 20] {
            let mut t = 0;
            while 2 * t + 5 <= k / 2 {
                let (far, near) = domination_check(k, t, 4000);
                assert!(far < near, "k={k} t={t}");
                t += 1;
            }
        }
    }
}
