//! Property tests over the public API.

use aqp_core::center::{structure_function_closed, structure_function_series};
use aqp_core::modes::{poisson_bracket, BracketFamily, ModePolynomial};
use aqp_core::rmatrix::{r_matrix, tau, Pauli, Space};
use aqp_core::sampling::near_forbidden;
use aqp_core::{Complex64 as C64, ModularParams, ToleranceConfig};
use proptest::prelude::*;

fn params() -> ModularParams {
    ModularParams::new(C64::new(0.3, 0.0), C64::new(-0.5, 0.0), &ToleranceConfig::default()).unwrap()
}

fn point(r: f64, t: f64) -> C64 {
    C64::from_polar(r, t)
}

fn polynomial() -> impl Strategy<Value = ModePolynomial<C64>> {
    let term = (prop::collection::vec(-5i64..=5, 1..=2), -1.0f64..1.0, -1.0f64..1.0)
        .prop_map(|(m, re, im)| (m.into_iter().map(|n| 2 * n).collect::<Vec<_>>(), C64::new(re, im)));
    prop::collection::vec(term, 1..=3).prop_map(|t| ModePolynomial::from_terms(t).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn r_unitarity(r in 1.02f64..1.3, t in 0.0f64..6.28) {
        let (m, cfg) = (params(), ToleranceConfig::default());
        let x = point(r, t);
        prop_assume!(!near_forbidden(x, &m));
        let prod = r_matrix(x, &m, &cfg).unwrap() * r_matrix(x.inv(), &m, &cfg).unwrap();
        prop_assert!(prod.distance(&aqp_core::TensorMatrix::identity()) < 1e-9);
    }

    #[test]
    fn r_sign_flip(r in 1.02f64..1.3, t in 0.0f64..6.28) {
        let (m, cfg) = (params(), ToleranceConfig::default());
        let x = point(r, t);
        prop_assume!(!near_forbidden(x, &m));
        let lhs = r_matrix(-x, &m, &cfg).unwrap();
        let rhs = -r_matrix(x, &m, &cfg).unwrap().sigma_conjugate(Pauli::Z, Space::One);
        prop_assert!(lhs.distance(&rhs) < 1e-9);
    }

    #[test]
    fn tau_period(r in 0.5f64..2.0, t in 0.0f64..6.28) {
        let (m, cfg) = (params(), ToleranceConfig::default());
        let x = point(r, t);
        prop_assume!(!near_forbidden(x, &m) && !near_forbidden(x * m.q(), &m));
        let a = tau(x, &m, &cfg).unwrap();
        let b = tau(x * m.q() * m.q(), &m, &cfg).unwrap();
        prop_assert!((a - b).norm() <= 1e-10 * a.norm().max(1.0));
    }

    #[test]
    fn structure_function_odd_and_routes_agree(r in 1.05f64..1.9, t in 0.0f64..6.28) {
        let (m, cfg) = (params(), ToleranceConfig::default());
        let x = point(r, t);
        prop_assume!(!near_forbidden(x, &m));
        let f = structure_function_closed(x, &m, &cfg).unwrap();
        let g = structure_function_closed(x.inv(), &m, &cfg).unwrap();
        let s = structure_function_series(x, &m, &cfg).unwrap();
        let scale = f.norm().max(1.0);
        prop_assert!((f + g).norm() < 1e-9 * scale);
        prop_assert!((f - s).norm() < 1e-9 * scale);
    }

    #[test]
    fn bracket_exactly_antisymmetric(a in polynomial(), b in polynomial(), k in 0u32..3) {
        let fam = BracketFamily::new(k, C64::new(0.5, 0.0), 6, 40).unwrap();
        let ab = poisson_bracket(&a, &b, &fam).unwrap();
        let ba = poisson_bracket(&b, &a, &fam).unwrap();
        prop_assert!((&ab + &ba).is_zero());
        prop_assert!(ab.all_indices_even());
    }
}
