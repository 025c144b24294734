//! Moment systems that satisfy some of the positivity conditions and
//! violate others.

use num_complex::Complex64;

use super::data::MomentData;
use super::measure::{measure_moments, AtomicMeasure, Measure, RadialDensityMeasure};
use super::MomentsError;
use crate::algebra::{IndexClass, LaurentPoly, MonomialIndex};

/// Moments of `|z|^{-2} dV` on the unit disc, `c_{m,n} = δ_{m,n} π / m`.
///
/// The data is positive on every section that avoids `(0, 0)`, yet the
/// measure has infinite mass, so no finite extension to `(0, 0)` exists.
pub fn gen_dziury(truncation: impl IntoIterator<Item = MonomialIndex>) -> Result<MomentData<MonomialIndex>, MomentsError> {
    let truncation: Vec<MonomialIndex> = truncation.into_iter().collect();
    if truncation.contains(&MonomialIndex::ZERO) {
        return Err(MomentsError::ZeroIndexPresent);
    }
    measure_moments(&Measure::RadialDensity(RadialDensityMeasure { power: -2, radius: 1.0 }), truncation)
}

/// `c_{m,n} = 1` if `m + n = 2k`, else `0`, on `T ⊆ {m, n >= k}`.
///
/// Every certificate evaluates like a point mass at the origin seen through
/// `|z|^{2k}`, while `c_{k,k} = 1` together with `c_{l,l} = 0` rules out a
/// representing measure.
pub fn gen_kael(
    k: i64,
    l: i64,
    truncation: impl IntoIterator<Item = MonomialIndex>,
) -> Result<(MomentData<MonomialIndex>, String), MomentsError> {
    if !(1 <= k && k < l) {
        return Err(MomentsError::BoundsViolated { reason: format!("need 1 <= k < l, got k = {k}, l = {l}") });
    }
    let truncation: Vec<MonomialIndex> = truncation.into_iter().collect();
    for required in [MonomialIndex::new(k, k), MonomialIndex::new(l, l)] {
        if !truncation.contains(&required) {
            return Err(MomentsError::BoundsViolated { reason: format!("truncation lacks {required:?}") });
        }
    }
    if let Some(bad) = truncation.iter().find(|i| i.m < k || i.n < k) {
        return Err(MomentsError::BoundsViolated { reason: format!("{bad:?} has an exponent below k = {k}") });
    }
    let data = MomentData::from_fn(IndexClass::N, truncation, |i| {
        Complex64::new(if i.m + i.n == 2 * k { 1.0 } else { 0.0 }, 0.0)
    });
    let explanation = format!(
        "a representing measure would have c({k},{k}) = ∫|z|^{} dμ = 1, so it has mass off the origin \
         and c({l},{l}) = ∫|z|^{} dμ > 0, contradicting c({l},{l}) = 0; \
         the Riesz functional acts as p ↦ p({k},{k}), so sums of squares still evaluate >= 0",
        2 * k,
        2 * l
    );
    Ok((data, explanation))
}

/// The diagonal up to `l` together with `(k, l)` and `(l, k)`.
pub fn annulus_truncation(k: i64, l: i64) -> Vec<MonomialIndex> {
    let mut t: Vec<MonomialIndex> = (0..=l).map(|m| MonomialIndex::new(m, m)).collect();
    t.push(MonomialIndex::new(k, l));
    t.push(MonomialIndex::new(l, k));
    t.sort();
    t
}

/// Atomic data concentrated where `|z^j - λ| < ε`, with the witness
/// `|z|^{2k} (|z^j - λ|² - ε²)` whose Riesz value is negative.
pub fn gen_annulus(
    lambda: Complex64,
    epsilon: f64,
    j: i64,
    k: i64,
    atoms: &AtomicMeasure,
) -> Result<(MomentData<MonomialIndex>, LaurentPoly), MomentsError> {
    if lambda.norm() == 0.0 || !(epsilon > 0.0) || j < 1 || k < 0 {
        return Err(MomentsError::BoundsViolated {
            reason: format!("need λ != 0, ε > 0, j >= 1, k >= 0; got λ = {lambda}, ε = {epsilon}, j = {j}, k = {k}"),
        });
    }
    atoms.validate()?;
    for a in &atoms.atoms {
        let distance = (a.point.powi(j as i32) - lambda).norm();
        if a.point.norm() == 0.0 || !(distance < epsilon) {
            return Err(MomentsError::AtomOutsideRegion { point: a.point, distance });
        }
    }
    let l = k + j;
    let data = measure_moments(&Measure::Atomic(atoms.clone()), annulus_truncation(k, l))?;
    let witness = LaurentPoly::from_triples([
        (l, l, Complex64::new(1.0, 0.0)),
        (l, k, -lambda.conj()),
        (k, l, -lambda),
        (k, k, Complex64::new(lambda.norm_sqr() - epsilon * epsilon, 0.0)),
    ]);
    Ok((data, witness))
}

/// The section `{(k, 0), (l, 0)}`, whose kernel is `[[c_kk, c_kl], [c_lk, c_ll]]`.
pub fn pair_section(k: i64, l: i64) -> Vec<MonomialIndex> {
    vec![MonomialIndex::new(k, 0), MonomialIndex::new(l, 0)]
}

#[derive(Clone, Debug, PartialEq)]
pub struct SymmetryBreak {
    pub data: MomentData<MonomialIndex>,
    pub section: Vec<MonomialIndex>,
}

/// Replaces `c_{k,l}` by `sqrt(c_kk c_ll + 1)` (and `c_{l,k}` by its
/// conjugate), which makes the 2×2 minor on `pair_section(k, l)` equal `-1`.
pub fn gen_symmetry_break(data: &MomentData<MonomialIndex>, k: i64, l: i64) -> Result<SymmetryBreak, MomentsError> {
    if k == l {
        return Err(MomentsError::BoundsViolated { reason: "k and l must differ".into() });
    }
    let ckk = data.require(&MonomialIndex::new(k, k))?;
    let cll = data.require(&MonomialIndex::new(l, l))?;
    if ckk.im != 0.0 || cll.im != 0.0 || ckk.re < 0.0 || cll.re < 0.0 {
        return Err(MomentsError::BoundsViolated { reason: format!("diagonal values {ckk}, {cll} must be real and >= 0") });
    }
    let value = Complex64::new((ckk.re * cll.re + 1.0).sqrt(), 0.0);
    let mut out = data.clone();
    out.system.insert(MonomialIndex::new(k, l), value);
    out.system.insert(MonomialIndex::new(l, k), value.conj());
    Ok(SymmetryBreak { data: out, section: pair_section(k, l) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::symmetrize;
    use crate::linalg::c64;
    use crate::moments::{kernel_psd_check, riesz_apply};
    use std::f64::consts::PI;

    fn idx(m: i64, n: i64) -> MonomialIndex {
        MonomialIndex::new(m, n)
    }

    #[test]
    fn dziury_values() {
        let data = gen_dziury([idx(1, 1), idx(2, 1), idx(3, 3)]).unwrap();
        assert!((data.get(&idx(1, 1)).unwrap().re - PI).abs() < 1e-14);
        assert_eq!(data.get(&idx(2, 1)).unwrap(), c64(0.0, 0.0));
        assert!((data.get(&idx(3, 3)).unwrap().re - PI / 3.0).abs() < 1e-14);
        assert_eq!(gen_dziury([idx(0, 0)]), Err(MomentsError::ZeroIndexPresent));
    }

    #[test]
    fn dziury_sections_avoiding_origin_are_positive() {
        let t: Vec<MonomialIndex> = (1..=6).flat_map(|m| (1..=6).map(move |n| idx(m, n))).collect();
        let data = gen_dziury(t).unwrap();
        let section = [idx(1, 0), idx(2, 0), idx(3, 0), idx(2, 1)];
        assert!(kernel_psd_check(&data, &section, 1e-8).unwrap().pass);
    }

    #[test]
    fn kael_values() {
        let t = [idx(1, 1), idx(2, 2), idx(1, 2), idx(2, 1)];
        let (data, text) = gen_kael(1, 2, t).unwrap();
        assert_eq!(data.get(&idx(1, 1)).unwrap(), c64(1.0, 0.0));
        assert_eq!(data.get(&idx(2, 2)).unwrap(), c64(0.0, 0.0));
        assert_eq!(data.get(&idx(1, 2)).unwrap(), c64(0.0, 0.0));
        assert!(!text.is_empty());
        assert!(matches!(gen_kael(1, 2, [idx(1, 1)]), Err(MomentsError::BoundsViolated { .. })));
        assert!(matches!(gen_kael(1, 2, [idx(1, 1), idx(2, 2), idx(0, 3)]), Err(MomentsError::BoundsViolated { .. })));
        assert!(matches!(gen_kael(2, 2, [idx(2, 2)]), Err(MomentsError::BoundsViolated { .. })));
    }

    #[test]
    fn annulus_example() {
        let atoms = AtomicMeasure::new([(c64(1.0, 0.0), 1.0)]).unwrap();
        let (data, witness) = gen_annulus(c64(1.0, 0.0), 0.5, 1, 1, &atoms).unwrap();
        assert!((riesz_apply(&data, &witness).unwrap() - c64(-0.25, 0.0)).norm() < 1e-12);
        let far = AtomicMeasure::new([(c64(5.0, 0.0), 1.0)]).unwrap();
        assert!(matches!(gen_annulus(c64(1.0, 0.0), 0.5, 1, 1, &far), Err(MomentsError::AtomOutsideRegion { .. })));
    }

    #[test]
    fn symmetry_break_examples() {
        let t: Vec<MonomialIndex> = (0..=2).flat_map(|m| (0..=2).map(move |n| idx(m, n))).collect();
        let point = MomentData::from_fn(IndexClass::N, t.clone(), |_| c64(1.0, 0.0));
        let broken = gen_symmetry_break(&point, 0, 1).unwrap();
        assert!((broken.data.get(&idx(0, 1)).unwrap().re - 2f64.sqrt()).abs() < 1e-15);
        let check = kernel_psd_check(&broken.data, &broken.section, 1e-8).unwrap();
        assert!(!check.pass);
        assert!((check.minor.unwrap().determinant + 1.0).abs() < 1e-12);
        assert_eq!(symmetrize(&broken.data.system).unwrap(), broken.data.system);

        let zero = MomentData::from_fn(IndexClass::N, t, |_| c64(0.0, 0.0));
        let broken = gen_symmetry_break(&zero, 0, 2).unwrap();
        assert_eq!(broken.data.get(&idx(0, 2)).unwrap(), c64(1.0, 0.0));
        let check = kernel_psd_check(&broken.data, &broken.section, 1e-8).unwrap();
        assert!((check.minor.unwrap().determinant + 1.0).abs() < 1e-12);
    }
}
