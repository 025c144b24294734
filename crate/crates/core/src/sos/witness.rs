use num_complex::Complex64;

use crate::algebra::LaurentPoly;

/// `|z - λ|² - ε²` written out in monomials: negative exactly on the open
/// ε-disc about `λ`.
pub fn sumk_witness(lambda: Complex64, epsilon: f64) -> LaurentPoly {
    LaurentPoly::from_triples([
        (1, 1, Complex64::new(1.0, 0.0)),
        (1, 0, -lambda.conj()),
        (0, 1, -lambda),
        (0, 0, Complex64::new(lambda.norm_sqr() - epsilon * epsilon, 0.0)),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c64;
    use proptest::prelude::*;

    #[test]
    fn documented_values() {
        let p = sumk_witness(c64(0.0, 0.0), 1.0);
        assert_eq!(p, LaurentPoly::from_triples([(1, 1, c64(1.0, 0.0)), (0, 0, c64(-1.0, 0.0))]));
        assert_eq!(p.eval(c64(0.0, 0.0)).unwrap(), c64(-1.0, 0.0));
        let v = sumk_witness(c64(2.0, 0.0), 0.5).eval(c64(2.0, 0.0)).unwrap();
        assert!((v - c64(-0.25, 0.0)).norm() < 1e-12);
        let v = sumk_witness(c64(0.0, 1.0), 1.0).eval(c64(2.0, 1.0)).unwrap();
        assert!((v - c64(3.0, 0.0)).norm() < 1e-12);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]
        #[test]
        fn matches_distance_formula(
            lr in -3.0f64..3.0, li in -3.0f64..3.0, eps in 0.01f64..2.0,
            zr in -4.0f64..4.0, zi in -4.0f64..4.0,
        ) {
            let lambda = c64(lr, li);
            let z = c64(zr, zi);
            let p = sumk_witness(lambda, eps);
            prop_assert!(p.is_hermitian(0.0));
            let expect = (z - lambda).norm_sqr() - eps * eps;
            let got = p.eval(z).unwrap();
            prop_assert!((got.re - expect).abs() <= 1e-10 * (1.0 + expect.abs()));
            prop_assert!(got.im.abs() <= 1e-10 * (1.0 + expect.abs()));
        }
    }
}
