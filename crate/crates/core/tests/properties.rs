use num_complex::Complex64;
use proptest::prelude::*;

use semimoment::algebra::{LaurentPoly, MonomialIndex, TrigPoly, ZkIndex};
use semimoment::linalg::CMatrix;
use semimoment::moments::{
    certificate_positivity_check, kernel_psd_check, measure_moments, riesz_apply, AtomicMeasure, Measure,
};
use semimoment::operator::{
    bram_system, certificate_to_coefficients, dilation_block_check, subnormal_block_check, OperatorTuple,
};
use semimoment::sos::SquareList;
use semimoment::PSD_TOL;

fn complex() -> impl Strategy<Value = Complex64> {
    (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(re, im)| Complex64::new(re, im))
}

fn atoms() -> impl Strategy<Value = AtomicMeasure> {
    prop::collection::vec((complex(), 0.1..1.0f64), 1..5).prop_map(|a| AtomicMeasure::new(a).unwrap())
}

fn laurent(max_deg: i64) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((0..=max_deg, 0..=max_deg, complex()), 1..5).prop_map(LaurentPoly::from_triples)
}

fn box_truncation(d: i64) -> Vec<MonomialIndex> {
    (0..=d).flat_map(|m| (0..=d).map(move |n| MonomialIndex::new(m, n))).collect()
}

fn unitary(seed: &[Complex64], d: usize) -> CMatrix {
    CMatrix::from_iterator(d, d, seed.iter().copied()).qr().q()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn riesz_matches_atomic_integral(mu in atoms(), p in laurent(3)) {
        let data = measure_moments(&Measure::Atomic(mu.clone()), box_truncation(3)).unwrap();
        let direct: Complex64 = mu.atoms.iter().map(|a| p.eval(a.point).unwrap() * a.weight).sum();
        prop_assert!((riesz_apply(&data, &p).unwrap() - direct).norm() < 1e-10);
    }

    #[test]
    fn genuine_moments_pass_kernel_and_certificates(mu in atoms(), qs in prop::collection::vec(laurent(2), 1..3)) {
        let data = measure_moments(&Measure::Atomic(mu), box_truncation(4)).unwrap();
        let section: Vec<MonomialIndex> = (0..=2).flat_map(|m| (0..=2 - m).map(move |n| MonomialIndex::new(m, n))).collect();
        prop_assert!(kernel_psd_check(&data, &section, PSD_TOL).unwrap().pass);
        let squares = SquareList::new(qs).unwrap();
        prop_assert!(certificate_positivity_check(&data, &squares, 1e-10).unwrap().pass);
    }

    #[test]
    fn commuting_unitaries_satisfy_square_certificates(
        seed in prop::collection::vec(complex(), 9),
        phases in prop::collection::vec(prop::collection::vec(0.0..6.3f64, 3), 2),
        entries in prop::collection::vec((0..3i64, complex()), 2..8),
    ) {
        let u = unitary(&seed, 3);
        let tuple = OperatorTuple::new(
            phases
                .iter()
                .map(|p| &u * CMatrix::from_diagonal(&nalgebra::DVector::from_fn(3, |i, _| Complex64::from_polar(1.0, p[i]))) * u.adjoint())
                .collect(),
        )
        .unwrap();
        let mut q = vec![vec![TrigPoly::zero(); 2]; 2];
        for (n, (a, c)) in entries.into_iter().enumerate() {
            let cell = &mut q[n % 2][(n / 2) % 2];
            *cell = &*cell + &TrigPoly::monomial(ZkIndex(vec![a, a]), c);
        }
        let sys = certificate_to_coefficients(&q).unwrap();
        prop_assert!(dilation_block_check(&tuple, &sys, PSD_TOL).unwrap().pass);
    }

    #[test]
    fn normal_matrices_pass_bram_systems(seed in prop::collection::vec(complex(), 9), eig in prop::collection::vec(complex(), 3), n in 1..=3usize) {
        let u = unitary(&seed, 3);
        let normal = &u * CMatrix::from_diagonal(&nalgebra::DVector::from_vec(eig)) * u.adjoint();
        prop_assert!(subnormal_block_check(&normal, &bram_system(n), PSD_TOL).unwrap().pass);
    }
}

#[test]
fn shift_fails_bram_system() {
    let mut s = CMatrix::zeros(3, 3);
    s[(1, 0)] = Complex64::new(1.0, 0.0);
    s[(2, 1)] = Complex64::new(1.0, 0.0);
    assert!(!subnormal_block_check(&s, &bram_system(1), PSD_TOL).unwrap().pass);
}
