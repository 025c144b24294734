use num_complex::Complex64;

use super::SosError;
use crate::algebra::{TrigPoly, ZkIndex};

const ABERTH_ITERS: usize = 200;
const ABERTH_RESTARTS: usize = 4;

fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// All roots of `Σ coeffs[j] z^j` by Aberth–Ehrlich simultaneous iteration.
///
/// The leading coefficient must be nonzero. Stagnating runs restart from
/// rotated, slightly rescaled initial circles; the best run is returned.
pub fn aberth_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>, SosError> {
    let degree = coeffs.len().saturating_sub(1);
    if degree == 0 {
        return Ok(Vec::new());
    }
    let lead = coeffs[degree];
    if lead.norm() == 0.0 {
        return Err(SosError::RootFindingFailed);
    }
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    // Fujiwara-style bound, used as the initial circle radius.
    let radius = (0..degree)
        .map(|j| monic[j].norm().powf(1.0 / (degree - j) as f64))
        .fold(0.0, f64::max)
        .max(1e-3);
    let centre = -monic[degree - 1] / degree as f64;

    let mut best: Option<(f64, Vec<Complex64>)> = None;
    for attempt in 0..ABERTH_RESTARTS {
        let r0 = radius * (1.0 + 0.13 * attempt as f64);
        let offset = 0.4 + 0.77 * attempt as f64;
        let mut roots: Vec<Complex64> = (0..degree)
            .map(|k| centre + Complex64::from_polar(r0, std::f64::consts::TAU * k as f64 / degree as f64 + offset))
            .collect();
        let mut last_step = f64::INFINITY;
        for _ in 0..ABERTH_ITERS {
            let mut max_step = 0.0f64;
            for k in 0..degree {
                let (p, dp) = horner(&monic, roots[k]);
                if p.norm() == 0.0 {
                    continue;
                }
                let ratio = p / dp;
                let repulsion: Complex64 =
                    (0..degree).filter(|&j| j != k).map(|j| (roots[k] - roots[j]).inv()).sum();
                let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
                if step.is_finite() {
                    roots[k] -= step;
                    max_step = max_step.max(step.norm() / roots[k].norm().max(1.0));
                }
            }
            last_step = max_step;
            if max_step <= 1e-15 {
                break;
            }
        }
        let residual: f64 = roots.iter().map(|&z| horner(&monic, z).0.norm() / z.norm().max(1.0).powi(degree as i32)).sum();
        if roots.iter().all(|z| z.is_finite()) && best.as_ref().is_none_or(|(r, _)| residual < *r) {
            best = Some((residual, roots));
        }
        if last_step <= 1e-12 {
            break;
        }
    }
    best.map(|(_, r)| r).ok_or(SosError::RootFindingFailed)
}

/// Factors a univariate trigonometric polynomial `p >= 0` on the circle as
/// `p = |q|²` with `q` analytic and without zeros in the open unit disc.
///
/// `p` must be Hermitian (real on the circle) and `>= -tol` on a uniform
/// grid of `4 deg + 1` points.
pub fn fejer_riesz(p: &TrigPoly, tol: f64) -> Result<TrigPoly, SosError> {
    if let Some(dim) = p.dim() {
        if dim != 1 {
            return Err(SosError::UnsupportedDimension { dim });
        }
    }
    if !p.is_hermitian(tol.max(1e-12 * p.conorm())) {
        return Err(SosError::NotRealOnCircle);
    }
    let degree = p.degree_1d();
    if degree == 0 {
        let c = p.coeff(&ZkIndex(vec![0])).re;
        if c < -tol {
            return Err(SosError::DegreeZeroNegative { value: c });
        }
        return Ok(TrigPoly::univariate(0, &[Complex64::new(c.max(0.0).sqrt(), 0.0)]));
    }
    let grid = 4 * degree as usize + 1;
    for g in 0..grid {
        let t = std::f64::consts::TAU * g as f64 / grid as f64;
        let v = p.eval_angle(t).re;
        if v < -tol {
            return Err(SosError::NotNonnegativeOnCircle { point: Complex64::from_polar(1.0, t), value: v });
        }
    }

    // z^d p(z) as an ordinary polynomial of degree 2d; its roots pair as (r, 1/conj r).
    let algebraic: Vec<Complex64> = (-degree..=degree).map(|k| p.coeff(&ZkIndex(vec![k]))).collect();
    let mut roots = aberth_roots(&algebraic)?;
    roots.sort_by(|a, b| b.norm().total_cmp(&a.norm()));
    let outer = &roots[..degree as usize];

    let mut q = vec![Complex64::new(1.0, 0.0)];
    for &r in outer {
        let mut next = vec![Complex64::new(0.0, 0.0); q.len() + 1];
        for (j, &c) in q.iter().enumerate() {
            next[j + 1] += c;
            next[j] -= c * r;
        }
        q = next;
    }
    let monic = TrigPoly::univariate(0, &q);

    // Least-squares scale on a dense grid: p ≈ s² |monic|².
    let samples = 16 * degree as usize + 16;
    let (mut num, mut den) = (0.0, 0.0);
    for g in 0..samples {
        let t = std::f64::consts::TAU * g as f64 / samples as f64;
        let w = monic.eval_angle(t).norm_sqr();
        num += p.eval_angle(t).re * w;
        den += w * w;
    }
    let scale = if den > 0.0 { (num / den).max(0.0).sqrt() } else { 0.0 };
    // Normalise the phase so the lowest coefficient is real and positive.
    let phase = q[0].conj() / q[0].norm().max(f64::MIN_POSITIVE);
    Ok(monic.scale(phase * scale))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c64;
    use proptest::prelude::*;

    fn sup_error(p: &TrigPoly, q: &TrigPoly) -> f64 {
        (0..2000)
            .map(|g| {
                let t = std::f64::consts::TAU * g as f64 / 2000.0;
                (q.eval_angle(t).norm_sqr() - p.eval_angle(t).re).abs()
            })
            .fold(0.0, f64::max)
    }

    #[test]
    fn double_root_on_circle() {
        let p = TrigPoly::univariate(-1, &[c64(1.0, 0.0), c64(2.0, 0.0), c64(1.0, 0.0)]);
        let q = fejer_riesz(&p, 1e-9).unwrap();
        assert!((&q - &TrigPoly::univariate(0, &[c64(1.0, 0.0), c64(1.0, 0.0)])).conorm() < 1e-6);
        assert!(sup_error(&p, &q) < 1e-6);
    }

    #[test]
    fn constant() {
        let q = fejer_riesz(&TrigPoly::univariate(0, &[c64(1.0, 0.0)]), 1e-9).unwrap();
        assert_eq!(q, TrigPoly::univariate(0, &[c64(1.0, 0.0)]));
        assert_eq!(
            fejer_riesz(&TrigPoly::univariate(0, &[c64(-2.0, 0.0)]), 1e-9),
            Err(SosError::DegreeZeroNegative { value: -2.0 })
        );
    }

    #[test]
    fn outer_factor_is_returned() {
        // 5 + 2z + 2/z = |2 + z|² on the circle.
        let p = TrigPoly::univariate(-1, &[c64(2.0, 0.0), c64(5.0, 0.0), c64(2.0, 0.0)]);
        let q = fejer_riesz(&p, 1e-9).unwrap();
        let expect = TrigPoly::univariate(0, &[c64(2.0, 0.0), c64(1.0, 0.0)]);
        assert!((&q - &expect).conorm() < 1e-10, "{q:?}");
    }

    #[test]
    fn rejects_negative_and_complex_inputs() {
        let p = TrigPoly::univariate(-1, &[c64(1.0, 0.0), c64(0.5, 0.0), c64(1.0, 0.0)]);
        assert!(matches!(fejer_riesz(&p, 1e-9), Err(SosError::NotNonnegativeOnCircle { .. })));
        let p = TrigPoly::univariate(0, &[c64(1.0, 0.0), c64(1.0, 0.0)]);
        assert_eq!(fejer_riesz(&p, 1e-9), Err(SosError::NotRealOnCircle));
        let p = TrigPoly::trig(2, [(vec![0, 0], c64(1.0, 0.0))]).unwrap();
        assert_eq!(fejer_riesz(&p, 1e-9), Err(SosError::UnsupportedDimension { dim: 2 }));
    }

    #[test]
    fn aberth_finds_roots_of_unity() {
        // z^5 - 1
        let mut c = vec![c64(0.0, 0.0); 6];
        c[0] = c64(-1.0, 0.0);
        c[5] = c64(1.0, 0.0);
        let roots = aberth_roots(&c).unwrap();
        for r in roots {
            assert!((r.powu(5) - c64(1.0, 0.0)).norm() < 1e-12);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn recovers_random_squares(coeffs in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..=9)) {
            let q = TrigPoly::univariate(0, &coeffs.iter().map(|&(a, b)| c64(a, b)).collect::<Vec<_>>());
            prop_assume!(!q.is_zero());
            let p = q.mod_squared();
            let r = fejer_riesz(&p, 1e-9).unwrap();
            prop_assert!(r.is_analytic());
            prop_assert!(sup_error(&p, &r) <= 1e-6 * p.conorm().max(1.0));
        }
    }
}
