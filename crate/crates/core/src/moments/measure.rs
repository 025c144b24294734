use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::data::MomentData;
use super::MomentsError;
use crate::algebra::{IndexClass, MonomialIndex, ZkIndex};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub point: Complex64,
    pub weight: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct AtomicMeasure {
    pub atoms: Vec<Atom>,
}

impl AtomicMeasure {
    pub fn new(atoms: impl IntoIterator<Item = (Complex64, f64)>) -> Result<Self, MomentsError> {
        let m = AtomicMeasure { atoms: atoms.into_iter().map(|(point, weight)| Atom { point, weight }).collect() };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<(), MomentsError> {
        match self.atoms.iter().find(|a| !(a.weight > 0.0) || !a.point.is_finite()) {
            Some(a) => Err(MomentsError::InvalidMeasure { reason: format!("atom at {} has weight {}", a.point, a.weight) }),
            None => Ok(()),
        }
    }

    fn moment(&self, idx: MonomialIndex) -> Result<Complex64, MomentsError> {
        let mut acc = Complex64::new(0.0, 0.0);
        for a in &self.atoms {
            if a.point.norm() == 0.0 {
                if idx.m < 0 || idx.n < 0 {
                    return Err(MomentsError::NonSummableMoment { index: idx });
                }
                if idx.m == 0 && idx.n == 0 {
                    acc += a.weight;
                }
                continue;
            }
            let (r, t) = a.point.to_polar();
            acc += Complex64::from_polar(a.weight * r.powi((idx.m + idx.n) as i32), t * (idx.m - idx.n) as f64);
        }
        Ok(acc)
    }
}

/// A finite radial profile placed on a ray `{ρ e^{it}}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Ray {
    pub angle: f64,
    /// Pairs `(ρ, weight)`.
    pub radial: Vec<(f64, f64)>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RayMeasure {
    pub rays: Vec<Ray>,
}

impl RayMeasure {
    pub fn validate(&self) -> Result<(), MomentsError> {
        for ray in &self.rays {
            if !(0.0..TAU).contains(&ray.angle) {
                return Err(MomentsError::InvalidMeasure { reason: format!("ray angle {} outside [0, 2π)", ray.angle) });
            }
            if let Some(&(rho, w)) = ray.radial.iter().find(|(rho, w)| !(*rho >= 0.0) || !(*w > 0.0)) {
                return Err(MomentsError::InvalidMeasure { reason: format!("radial atom ({rho}, {w})") });
            }
        }
        Ok(())
    }

    fn moment(&self, idx: MonomialIndex) -> Result<Complex64, MomentsError> {
        let mut acc = Complex64::new(0.0, 0.0);
        for ray in &self.rays {
            let phase = Complex64::from_polar(1.0, ray.angle * (idx.m - idx.n) as f64);
            for &(rho, w) in &ray.radial {
                let radial = if rho == 0.0 {
                    if idx.m < 0 || idx.n < 0 {
                        return Err(MomentsError::NonSummableMoment { index: idx });
                    }
                    if idx.m + idx.n == 0 { 1.0 } else { 0.0 }
                } else {
                    rho.powi((idx.m + idx.n) as i32)
                };
                acc += phase * (w * radial);
            }
        }
        Ok(acc)
    }
}

/// `dμ = |z|^p 1_{|z| <= R} dV`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadialDensityMeasure {
    pub power: i64,
    pub radius: f64,
}

impl RadialDensityMeasure {
    fn moment(&self, idx: MonomialIndex) -> Result<Complex64, MomentsError> {
        // ∫ r^{m+n+p} e^{i(m-n)θ} r dr dθ
        let exponent = idx.m + idx.n + self.power + 2;
        if exponent <= 0 {
            return Err(MomentsError::NonSummableMoment { index: idx });
        }
        if idx.m != idx.n {
            return Ok(Complex64::new(0.0, 0.0));
        }
        Ok(Complex64::new(2.0 * PI * self.radius.powi(exponent as i32) / exponent as f64, 0.0))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Measure {
    Atomic(AtomicMeasure),
    Ray(RayMeasure),
    RadialDensity(RadialDensityMeasure),
}

impl Measure {
    pub fn validate(&self) -> Result<(), MomentsError> {
        match self {
            Measure::Atomic(a) => a.validate(),
            Measure::Ray(r) => r.validate(),
            Measure::RadialDensity(d) if !(d.radius > 0.0) => {
                Err(MomentsError::InvalidMeasure { reason: format!("radius {}", d.radius) })
            }
            Measure::RadialDensity(_) => Ok(()),
        }
    }

    pub fn moment(&self, idx: MonomialIndex) -> Result<Complex64, MomentsError> {
        match self {
            Measure::Atomic(a) => a.moment(idx),
            Measure::Ray(r) => r.moment(idx),
            Measure::RadialDensity(d) => d.moment(idx),
        }
    }
}

/// Closed-form moments `∫ z^m conj(z)^n dμ` on `T`.
pub fn measure_moments(
    measure: &Measure,
    truncation: impl IntoIterator<Item = MonomialIndex>,
) -> Result<MomentData<MonomialIndex>, MomentsError> {
    measure.validate()?;
    let truncation: Vec<MonomialIndex> = truncation.into_iter().collect();
    let values = truncation.iter().map(|&idx| Ok((idx, measure.moment(idx)?))).collect::<Result<_, MomentsError>>()?;
    Ok(MomentData::new(MomentData::infer_class(truncation), crate::algebra::CoefficientSystem::new(values)))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TorusAtom {
    pub angles: Vec<f64>,
    pub weight: f64,
}

/// Atomic measure on the torus `T^k`, points given by their angles.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TorusMeasure {
    pub kappa: usize,
    pub atoms: Vec<TorusAtom>,
}

/// `c_α = ∫ z^α dμ` on the torus.
pub fn torus_moments(
    measure: &TorusMeasure,
    truncation: impl IntoIterator<Item = ZkIndex>,
) -> Result<MomentData<ZkIndex>, MomentsError> {
    if let Some(a) = measure.atoms.iter().find(|a| a.angles.len() != measure.kappa || !(a.weight > 0.0)) {
        return Err(MomentsError::InvalidMeasure { reason: format!("torus atom {:?} with weight {}", a.angles, a.weight) });
    }
    let mut values = std::collections::BTreeMap::new();
    for alpha in truncation {
        if alpha.dim() != measure.kappa {
            return Err(MomentsError::BoundsViolated {
                reason: format!("index {:?} in a dimension-{} problem", alpha.0, measure.kappa),
            });
        }
        let c = measure
            .atoms
            .iter()
            .map(|a| {
                let phase: f64 = alpha.0.iter().zip(&a.angles).map(|(&k, t)| k as f64 * t).sum();
                Complex64::from_polar(a.weight, phase)
            })
            .sum();
        values.insert(alpha, c);
    }
    Ok(MomentData::new(IndexClass::Zk(measure.kappa), crate::algebra::CoefficientSystem::new(values)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c64;

    fn idx(m: i64, n: i64) -> MonomialIndex {
        MonomialIndex::new(m, n)
    }

    /// Midpoint rule in polar coordinates for `∫ |z|^{2m} |z|^p` over the unit disc.
    fn polar_quadrature(m: i64, p: i64) -> f64 {
        let steps = 200_000;
        let h = 1.0 / steps as f64;
        (0..steps).map(|i| {
            let r = (i as f64 + 0.5) * h;
            r.powi((2 * m + p) as i32) * r * h
        }).sum::<f64>() * TAU
    }

    #[test]
    fn radial_density_examples() {
        let mu = Measure::RadialDensity(RadialDensityMeasure { power: -2, radius: 1.0 });
        let data = measure_moments(&mu, [idx(3, 3), idx(2, 1)]).unwrap();
        assert!((data.get(&idx(3, 3)).unwrap().re - PI / 3.0).abs() < 1e-14);
        assert!((data.get(&idx(3, 3)).unwrap().re - polar_quadrature(3, -2)).abs() < 1e-8);
        assert_eq!(data.get(&idx(2, 1)).unwrap(), c64(0.0, 0.0));
        assert_eq!(
            measure_moments(&mu, [idx(0, 0)]).unwrap_err(),
            MomentsError::NonSummableMoment { index: idx(0, 0) }
        );
    }

    #[test]
    fn unit_atom_has_unit_moments() {
        let mu = Measure::Atomic(AtomicMeasure::new([(c64(1.0, 0.0), 1.0)]).unwrap());
        let data = measure_moments(&mu, (-2..=3).flat_map(|m| (-2..=3).map(move |n| idx(m, n)))).unwrap();
        assert!(data.system.iter().all(|(_, c)| (c - c64(1.0, 0.0)).norm() < 1e-15));
        assert_eq!(data.semigroup, IndexClass::ZZ);
    }

    #[test]
    fn atomic_matches_direct_sum() {
        let atoms = [(c64(0.3, -1.2), 0.7), (c64(-2.0, 0.5), 1.3), (c64(0.0, 0.0), 0.4)];
        let mu = Measure::Atomic(AtomicMeasure::new(atoms).unwrap());
        for m in 0..4 {
            for n in 0..4 {
                let expect: Complex64 = atoms.iter().map(|(z, w)| z.powi(m) * z.conj().powi(n) * w).sum();
                let got = mu.moment(idx(m as i64, n as i64)).unwrap();
                assert!((got - expect).norm() <= 1e-12 * expect.norm().max(1.0));
            }
        }
        assert!(matches!(mu.moment(idx(-1, 2)), Err(MomentsError::NonSummableMoment { .. })));
    }

    #[test]
    fn ray_moments() {
        let mu = Measure::Ray(RayMeasure { rays: vec![Ray { angle: PI / 2.0, radial: vec![(2.0, 0.5), (0.0, 1.0)] }] });
        // 0.5 * 2^3 * i^{2-1} plus nothing from the origin
        assert!((mu.moment(idx(2, 1)).unwrap() - c64(0.0, 4.0)).norm() < 1e-12);
        assert!((mu.moment(idx(0, 0)).unwrap() - c64(1.5, 0.0)).norm() < 1e-12);
        let bad = Measure::Ray(RayMeasure { rays: vec![Ray { angle: 7.0, radial: vec![] }] });
        assert!(measure_moments(&bad, [idx(0, 0)]).is_err());
    }

    #[test]
    fn torus_point_mass() {
        let mu = TorusMeasure { kappa: 2, atoms: vec![TorusAtom { angles: vec![0.0, 0.0], weight: 1.0 }] };
        let data = torus_moments(&mu, [ZkIndex(vec![1, -1]), ZkIndex(vec![0, 2])]).unwrap();
        assert!(data.system.iter().all(|(_, c)| *c == c64(1.0, 0.0)));
    }

    #[test]
    fn json_tagging() {
        let mu = Measure::RadialDensity(RadialDensityMeasure { power: -2, radius: 1.0 });
        assert_eq!(serde_json::to_string(&mu).unwrap(), r#"{"type":"radial_density","power":-2,"radius":1.0}"#);
        let text = r#"{"type":"atomic","atoms":[{"point":[1.0,0.0],"weight":1.0}]}"#;
        let back: Measure = serde_json::from_str(text).unwrap();
        assert_eq!(back, Measure::Atomic(AtomicMeasure::new([(c64(1.0, 0.0), 1.0)]).unwrap()));
    }
}
