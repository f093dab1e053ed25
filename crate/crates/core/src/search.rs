//! One-dimensional search helpers shared by `eclass` and `certmax`.

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Result of a golden-section search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Peak {
    pub x: f64,
    pub value: f64,
    pub evaluations: usize,
}

/// Golden-section maximization of a unimodal `f` on `[lo, hi]`, stopping when
/// the bracket is narrower than `tol`. The returned point is the best one
/// evaluated, so `value >= f(lo).max(f(hi))` is not guaranteed but
/// `value == f(x)` is.
pub fn golden_max<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> Peak {
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut evaluations = 2;
    while hi - lo > tol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        }
        evaluations += 1;
        if x1 >= x2 {
            break;
        }
    }
    let (x, value) = if f1 >= f2 { (x1, f1) } else { (x2, f2) };
    Peak { x, value, evaluations }
}

/// Bisection on the sign of `f`, assuming `f(lo) < 0 < f(hi)`.
/// Returns a bracket `(a, b)` with `f(a) < 0 <= f(b)` and `b - a <= tol`
/// (or as narrow as f64 allows), and the number of evaluations.
pub fn bisect_sign<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64, usize) {
    let mut evaluations = 0;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        evaluations += 1;
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi, evaluations)
}

/// Index and value of the largest entry; earliest index wins ties, NaN is skipped.
pub fn argmax(values: &[f64]) -> Option<(usize, f64)> {
    let mut best: Option<(usize, f64)> = None;
    for (i, &v) in values.iter().enumerate() {
        if v.is_nan() {
            continue;
        }
        if best.is_none_or(|(_, b)| v > b) {
            best = Some((i, v));
        }
    }
    best
}
