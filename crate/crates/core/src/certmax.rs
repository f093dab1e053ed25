//! Enclosure of `alpha = max D` on `(pi/2, pi)`, where
//! `D(z) = 2/z^2 + 2 ln(cos^2 z)/z^4`.
//!
//! `D'(z) = -(4/z^5) p(z)` with `p(z) = z^2 + z tan z + 2 ln cos^2 z`, and `p`
//! is increasing on the interval, so the sign of `p` brackets the unique
//! critical point by bisection. Once the bracket sits in a region where `D`
//! is concave, the two tangent lines at its ends give an upper bound on the
//! maximum and sampled values give a lower bound.
//!
//! The arithmetic is plain `f64`. The bounds carry a fixed `1e-12` slack on
//! each side; this is not interval arithmetic.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;
use thiserror::Error;

use crate::eclass::{membership_certificate, EClassError, Membership};
use crate::search::bisect_sign;

/// Inset from both ends of `(pi/2, pi)` used by the bracketing step.
pub const ENDPOINT_INSET: f64 = 1e-6;
/// Slack added to the upper bound and subtracted from the lower bound.
pub const SLACK: f64 = 1e-12;
/// Value reported for `alpha` to four decimals.
pub const REPORTED_ALPHA: f64 = 0.3229;
/// Accuracy quoted alongside the reported value.
pub const REPORTED_ACCURACY: f64 = 5e-4;

const LOCAL_GRID: usize = 64;
const FD_STEP: f64 = 1e-4;

#[derive(Debug, Error, PartialEq)]
pub enum CertError {
    #[error("bracket endpoints have signs p({lo}) = {p_lo}, p({hi}) = {p_hi}; expected (-, +)")]
    BracketFailure { lo: f64, hi: f64, p_lo: f64, p_hi: f64 },
    #[error("tangent bound preconditions fail at [{x1}, {x2}]: {reason}")]
    PreconditionViolation { x1: f64, x2: f64, reason: &'static str },
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
    #[error("sampled value {sample} exceeds the upper bound {upper}")]
    Unsound { sample: f64, upper: f64 },
    #[error("theorem bounds need k >= 9, got {0}")]
    KTooSmall(u64),
    #[error(transparent)]
    Membership(#[from] EClassError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "interval [{lo}, {hi}] is reversed");
        Self { lo, hi }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }
}

/// `ln(cos^2 z)` without cancellation at either end.
pub(crate) fn ln_cos2(z: f64) -> f64 {
    let s = z.sin();
    let s2 = s * s;
    if s2 < 0.5 {
        (-s2).ln_1p()
    } else {
        2.0 * z.cos().abs().ln()
    }
}

/// `D(z)`; `-inf` where `cos z = 0` and outside `(pi/2, pi]`.
pub fn d_value(z: f64) -> f64 {
    if !(z > FRAC_PI_2 && z <= PI) {
        return f64::NEG_INFINITY;
    }
    let z2 = z * z;
    2.0 * (1.0 / z2 + ln_cos2(z) / (z2 * z2))
}

/// `p(z) = z^2 + z tan z + 2 ln cos^2 z`; `-inf` at and left of `pi/2`.
pub fn p_value(z: f64) -> f64 {
    if !(z > FRAC_PI_2 && z <= PI) {
        return f64::NEG_INFINITY;
    }
    z * z + z * z.tan() + 2.0 * ln_cos2(z)
}

/// `D'(z) = -(4/z^5) p(z)`.
pub fn d_prime(z: f64) -> f64 {
    -4.0 / z.powi(5) * p_value(z)
}

fn second_difference<F: Fn(f64) -> f64>(q: &F, x: f64) -> f64 {
    (q(x + FD_STEP) - 2.0 * q(x) + q(x - FD_STEP)) / (FD_STEP * FD_STEP)
}

/// Tangent-intersection bound for a concave `q` on `[x1, x2]`: the tangent
/// lines at `x1` and `x2` meet at
/// `x* = (q(x2) - q(x1) + q'(x1) x1 - q'(x2) x2) / (q'(x1) - q'(x2))`
/// and `q(x1) + q'(x1)(x* - x1)` dominates `q` on the interval.
///
/// Concavity is sampled with central second differences at both ends and the
/// midpoint.
pub fn tangent_upper_bound<Q, DQ>(q: Q, dq: DQ, x1: f64, x2: f64) -> Result<f64, CertError>
where
    Q: Fn(f64) -> f64,
    DQ: Fn(f64) -> f64,
{
    if !(x1 < x2) {
        return Err(CertError::PreconditionViolation { x1, x2, reason: "need x1 < x2" });
    }
    let (d1, d2) = (dq(x1), dq(x2));
    if !(d1 > 0.0) {
        return Err(CertError::PreconditionViolation { x1, x2, reason: "q'(x1) must be positive" });
    }
    if !(d2 < 0.0) {
        return Err(CertError::PreconditionViolation { x1, x2, reason: "q'(x2) must be negative" });
    }
    for x in [x1, 0.5 * (x1 + x2), x2] {
        if !(second_difference(&q, x) < 0.0) {
            return Err(CertError::PreconditionViolation { x1, x2, reason: "q'' is not negative" });
        }
    }
    let (q1, q2) = (q(x1), q(x2));
    let cross = (q2 - q1 + d1 * x1 - d2 * x2) / (d1 - d2);
    Ok(q1 + d1 * (cross - x1))
}

/// The tangent bound applied to `D`, using the closed-form derivative.
pub fn d_tangent_upper_bound(x1: f64, x2: f64) -> Result<f64, CertError> {
    tangent_upper_bound(d_value, d_prime, x1, x2)
}

fn initial_bracket() -> Result<(f64, f64), CertError> {
    let lo = FRAC_PI_2 + ENDPOINT_INSET;
    let hi = PI - ENDPOINT_INSET;
    let (p_lo, p_hi) = (p_value(lo), p_value(hi));
    if !(p_lo < 0.0 && p_hi > 0.0) {
        return Err(CertError::BracketFailure { lo, hi, p_lo, p_hi });
    }
    Ok((lo, hi))
}

/// Bracket of width `<= tol` around the unique zero of `p`, i.e. the critical
/// point of `D`. The ends satisfy `p(lo) < 0 <= p(hi)`.
pub fn bracket_critical(tol: f64) -> Result<Interval, CertError> {
    if !(tol > 0.0) {
        return Err(CertError::BadTolerance(tol));
    }
    let (lo, hi) = initial_bracket()?;
    let (lo, hi, _) = bisect_sign(p_value, lo, hi, tol);
    Ok(Interval::new(lo, hi))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CertifiedMax {
    /// Contains the critical point of `D`.
    pub crit_bracket: Interval,
    /// Contains `alpha`.
    pub value_enclosure: Interval,
    /// Evaluations of `D`, `D'` or `p`.
    pub evaluations: usize,
}

impl CertifiedMax {
    /// Whether the four-decimal value `0.3229` lies inside the enclosure.
    pub fn contains_reported_value(&self) -> bool {
        self.value_enclosure.contains(REPORTED_ALPHA)
    }

    /// Whether `0.3229` is within its quoted accuracy `5e-4` of the enclosure.
    pub fn consistent_with_reported_accuracy(&self) -> bool {
        let e = &self.value_enclosure;
        REPORTED_ALPHA >= e.lo - REPORTED_ACCURACY && REPORTED_ALPHA <= e.hi + REPORTED_ACCURACY
    }
}

/// Enclose `alpha` to width `tol`.
///
/// Bisects the critical-point bracket until both the bracket and the value
/// enclosure are narrower than `tol`. The lower end is the largest sampled
/// value of `D` in the bracket (ends plus a 64-point grid), the upper end is
/// the tangent bound; both are padded by [`SLACK`].
pub fn certified_alpha(tol: f64) -> Result<CertifiedMax, CertError> {
    if !(tol > 0.0) {
        return Err(CertError::BadTolerance(tol));
    }
    let (mut lo, mut hi) = initial_bracket()?;
    let mut evaluations = 2;
    let mut best = None;
    for _ in 0..200 {
        if let Ok(upper) = d_tangent_upper_bound(lo, hi) {
            evaluations += 10;
            let sampled = (0..=LOCAL_GRID)
                .map(|i| d_value(lo + (hi - lo) * i as f64 / LOCAL_GRID as f64))
                .fold(f64::NEG_INFINITY, f64::max);
            evaluations += LOCAL_GRID + 1;
            if sampled > upper + SLACK {
                return Err(CertError::Unsound { sample: sampled, upper });
            }
            let enclosure = Interval::new(sampled - SLACK, upper + SLACK);
            best = Some(CertifiedMax { crit_bracket: Interval::new(lo, hi), value_enclosure: enclosure, evaluations });
            if enclosure.width() <= tol && hi - lo <= tol {
                break;
            }
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        evaluations += 1;
        if p_value(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut out = best.ok_or(CertError::PreconditionViolation { x1: lo, x2: hi, reason: "no concave bracket found" })?;
    out.evaluations = evaluations;
    Ok(out)
}

/// How the enclosure of `alpha` classifies an exponent `N` for a given `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundClass {
    /// `N >= alpha_hi k^4`.
    MemberByBound,
    /// `N < alpha_lo k^4 / (1 + 8/k^2)`.
    NonmemberByBound,
    Gap,
}

pub fn theorem21_bounds(k: u64, n: u64, alpha: &CertifiedMax) -> Result<BoundClass, CertError> {
    if k < 9 {
        return Err(CertError::KTooSmall(k));
    }
    let k4 = (k as f64).powi(4);
    let shrink = 1.0 + 8.0 / (k as f64 * k as f64);
    let n = n as f64;
    Ok(if n >= alpha.value_enclosure.hi * k4 {
        BoundClass::MemberByBound
    } else if n < alpha.value_enclosure.lo * k4 / shrink {
        BoundClass::NonmemberByBound
    } else {
        BoundClass::Gap
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Theorem21Verdict {
    pub k: u64,
    pub n: u64,
    pub class: BoundClass,
    pub certificate: Membership,
    /// False only if a bound-based class disagrees with the direct certificate.
    pub consistent: bool,
}

/// Classify `N` and confirm (or, in the gap, decide) with a direct grid
/// certificate.
pub fn theorem21_verdict(k: u64, n: u64, alpha: &CertifiedMax, grid: usize) -> Result<Theorem21Verdict, CertError> {
    let class = theorem21_bounds(k, n, alpha)?;
    let certificate = membership_certificate(n, k, grid)?;
    let consistent = match class {
        BoundClass::MemberByBound => certificate.member,
        BoundClass::NonmemberByBound => !certificate.member,
        BoundClass::Gap => true,
    };
    Ok(Theorem21Verdict { k, n, class, certificate, consistent })
}
