use num_bigint::BigUint;
use num_traits::Zero;
use proptest::prelude::*;

use unimodal_lab::eclass::{default_exclusion, in_guard_zone, l_value, m_value, n_value};
use unimodal_lab::exactpoly::{
    binomial, expand_family, is_strongly_unimodal, is_unimodal, one_plus_x_pow, poly_mul, CoeffSeq, FamilyParams,
};

fn family_params() -> impl Strategy<Value = (u64, u64)> {
    (2u64..=16).prop_flat_map(|k| (1u64..=64, Just(k)))
}

proptest! {
    #[test]
    fn family_matches_convolution((m, k) in family_params()) {
        let p = expand_family(FamilyParams::new(m, k).unwrap());
        let mut xk = vec![0u64; k as usize + 1];
        xk[0] = 1;
        xk[k as usize] += 1;
        let q = poly_mul(&one_plus_x_pow(m), &CoeffSeq::from_u64s(&xk));
        prop_assert_eq!(p, q);
    }

    #[test]
    fn family_is_palindromic_with_known_sum((m, k) in family_params()) {
        let p = expand_family(FamilyParams::new(m, k).unwrap());
        let c = p.coeffs();
        prop_assert_eq!(c.len() as u64, m + k + 1);
        for i in 0..c.len() {
            prop_assert_eq!(&c[i], &c[c.len() - 1 - i]);
        }
        prop_assert_eq!(p.sum(), BigUint::from(2u8) << m as usize);
    }

    #[test]
    fn pascal_rule(n in 1u64..200, j in 1i64..200) {
        prop_assert_eq!(binomial(n, j), binomial(n - 1, j) + binomial(n - 1, j - 1));
    }

    #[test]
    fn strong_implies_unimodal(v in prop::collection::vec(0u64..50, 1..12)) {
        let s = CoeffSeq::from_u64s(&v);
        if is_strongly_unimodal(&s).holds {
            prop_assert!(is_unimodal(&s).holds);
        }
    }

    #[test]
    fn unimodal_witness_is_a_dip(v in prop::collection::vec(0u64..20, 1..12)) {
        let s = CoeffSeq::from_u64s(&v);
        let verdict = is_unimodal(&s);
        match verdict.witness {
            None => prop_assert!(verdict.holds),
            Some((i, j)) => {
                prop_assert!(!verdict.holds);
                prop_assert_eq!(j, i + 1);
                prop_assert!(s.get(i as i64) < s.get(j as i64));
            }
        }
    }

    #[test]
    fn product_of_log_concave_is_log_concave(
        a in prop::collection::vec(1u64..30, 1..6),
        b in prop::collection::vec(1u64..30, 1..6),
    ) {
        let (a, b) = (CoeffSeq::from_u64s(&a), CoeffSeq::from_u64s(&b));
        if is_strongly_unimodal(&a).holds && is_strongly_unimodal(&b).holds {
            prop_assert!(is_strongly_unimodal(&poly_mul(&a, &b)).holds);
        }
    }

    #[test]
    fn l_splits_into_m_plus_n(k in 9u64..40, frac in 0.001f64..0.999) {
        let theta = std::f64::consts::PI * frac;
        prop_assume!(!in_guard_zone(k, theta, default_exclusion(k)));
        let (l, m, n) = (l_value(k, theta), m_value(k, theta), n_value(k, theta));
        prop_assert!((l - (m + n)).abs() <= 1e-10 * l.abs().max(m.abs()));
    }
}

#[test]
fn zero_sequence_is_trivially_unimodal() {
    let z = CoeffSeq::from_u64s(&[0, 0]);
    assert!(z.coeffs().iter().all(|c| c.is_zero()));
    assert!(is_unimodal(&z).holds);
}
