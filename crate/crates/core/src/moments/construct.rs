use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::data::MomentData;
use super::measure::{AtomicMeasure, Ray, RayMeasure};
use super::MomentsError;
use crate::algebra::{LaurentPoly, MonomialIndex};
use crate::linalg::{psd_verdict, CMatrix};

/// A measure without mass at the origin together with a point mass `a`
/// attached to the `(k, k)` coefficient.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HaviPair {
    pub mu: AtomicMeasure,
    pub a: f64,
    pub k: i64,
}

/// Splits `ν` into `μ = |z|^{-2k} ν` off the origin and `a = ν({0})`.
pub fn havi_construct(nu: &AtomicMeasure, k: i64) -> Result<HaviPair, MomentsError> {
    if k < 0 {
        return Err(MomentsError::BoundsViolated { reason: format!("k = {k} is negative") });
    }
    nu.validate()?;
    let mut a = 0.0;
    let mut mu = AtomicMeasure::default();
    for atom in &nu.atoms {
        let r = atom.point.norm();
        if r == 0.0 {
            a += atom.weight;
        } else {
            mu.atoms.push(super::measure::Atom { point: atom.point, weight: atom.weight * r.powi(-2 * k as i32) });
        }
    }
    Ok(HaviPair { mu, a, k })
}

fn below_shift(k: i64, indices: impl Iterator<Item = MonomialIndex>) -> Result<(), MomentsError> {
    let indices: Vec<MonomialIndex> = indices.filter(|i| i.m < k || i.n < k).collect();
    if indices.is_empty() {
        Ok(())
    } else {
        Err(MomentsError::SupportBelowShift { indices, k })
    }
}

fn havi_moment(pair: &HaviPair, idx: MonomialIndex) -> Complex64 {
    let atoms: Complex64 = pair
        .mu
        .atoms
        .iter()
        .map(|a| {
            let (r, t) = a.point.to_polar();
            Complex64::from_polar(a.weight * r.powi((idx.m + idx.n) as i32), t * (idx.m - idx.n) as f64)
        })
        .sum();
    let point = if idx.m + idx.n == 2 * pair.k { pair.a } else { 0.0 };
    atoms + point
}

/// `Λ(p) = ∫ p dμ + a p_{k,k}` for `p` supported in `{m, n >= k}`.
pub fn havi_riesz(pair: &HaviPair, p: &LaurentPoly) -> Result<Complex64, MomentsError> {
    below_shift(pair.k, p.support().copied())?;
    Ok(p.iter().map(|(idx, c)| c * havi_moment(pair, *idx)).sum())
}

/// Moments `c_{m,n} = ∫ z^m conj(z)^n dμ + a δ_{0, m+n-2k}` on `T`.
pub fn havi_moments(
    pair: &HaviPair,
    truncation: impl IntoIterator<Item = MonomialIndex>,
) -> Result<MomentData<MonomialIndex>, MomentsError> {
    let truncation: Vec<MonomialIndex> = truncation.into_iter().collect();
    below_shift(pair.k, truncation.iter().copied())?;
    let class = MomentData::infer_class(truncation.iter().copied());
    Ok(MomentData::from_fn(class, truncation, |idx| havi_moment(pair, *idx)))
}

/// Angles `t1, t2 ∈ [0, 2π)` with `(e^{i t1} + e^{i t2}) / 2 = θ`.
pub fn theta_split(theta: Complex64) -> Result<(f64, f64), MomentsError> {
    let modulus = theta.norm();
    if modulus > 1.0 + 1e-12 {
        return Err(MomentsError::ModulusExceedsOne { modulus });
    }
    let psi = if modulus == 0.0 { 0.0 } else { theta.arg() };
    let phi = modulus.min(1.0).acos();
    Ok(((psi + phi).rem_euclid(TAU), (psi - phi).rem_euclid(TAU)))
}

/// Two rays at angles `t1 / j`, `t2 / j` (`j = l - k`), each carrying half
/// of the radial measure `ν`, so that the diagonal moments are those of `ν`
/// and the `(k, l)` moment equals `c_kl`.
pub fn lambda2new_construct(nu: &[(f64, f64)], c_kl: Complex64, k: i64, l: i64) -> Result<RayMeasure, MomentsError> {
    if k < 0 || l <= k {
        return Err(MomentsError::BoundsViolated { reason: format!("need 0 <= k < l, got k = {k}, l = {l}") });
    }
    if let Some(&(rho, w)) = nu.iter().find(|(rho, w)| !(*rho >= 0.0) || !(*w > 0.0)) {
        return Err(MomentsError::InvalidMeasure { reason: format!("radial atom ({rho}, {w})") });
    }
    let j = (l - k) as f64;
    let bound: f64 = nu.iter().map(|&(rho, w)| w * radial_power(rho, k + l)).sum();
    let value = c_kl.norm();
    if value > bound * (1.0 + 1e-12) {
        return Err(MomentsError::InequalityViolated { value, bound });
    }
    let theta = if bound > 0.0 { c_kl / bound } else { Complex64::new(0.0, 0.0) };
    let (t1, t2) = theta_split(theta.conj())?;
    let half: Vec<(f64, f64)> = nu.iter().map(|&(rho, w)| (rho, w / 2.0)).collect();
    Ok(RayMeasure {
        rays: vec![Ray { angle: t1 / j, radial: half.clone() }, Ray { angle: t2 / j, radial: half }],
    })
}

fn radial_power(rho: f64, e: i64) -> f64 {
    if e == 0 {
        1.0
    } else {
        rho.powi(e as i32)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StieltjesReport {
    pub sequence: Vec<f64>,
    /// `(passes, min eigenvalue)` of `[s_{i+j}]_{i,j<=N}`.
    pub hankel0: (bool, f64),
    /// `(passes, min eigenvalue)` of `[s_{i+j+1}]_{i,j<=N}`.
    pub hankel1: (bool, f64),
}

fn hankel(seq: &[f64], shift: usize, n: usize) -> CMatrix {
    CMatrix::from_fn(n + 1, n + 1, |i, j| Complex64::new(seq[i + j + shift], 0.0))
}

/// Diagonal sequence `s_m = c_{m,m}` for `m <= 2N + 1` and both Hankel sections.
pub fn stieltjes_diagonal(data: &MomentData<MonomialIndex>, n: usize, tol: f64) -> Result<StieltjesReport, MomentsError> {
    let sequence = (0..=2 * n as i64 + 1)
        .map(|m| data.require(&MonomialIndex::new(m, m)).map(|c| c.re))
        .collect::<Result<Vec<f64>, _>>()?;
    let (p0, e0, _) = psd_verdict(&hankel(&sequence, 0, n), tol);
    let (p1, e1, _) = psd_verdict(&hankel(&sequence, 1, n), tol);
    Ok(StieltjesReport { sequence, hankel0: (p0, e0), hankel1: (p1, e1) })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ConditionB {
    Pass { stieltjes: StieltjesReport },
    /// `c_{l,k}` differs from `conj(c_{k,l})`.
    FailSymmetry { c_kl: Complex64, c_lk: Complex64 },
    /// `|c_{k,l}|` exceeds `c_{k+κ,k+κ}`.
    FailBound { modulus: f64, bound: f64 },
    FailStieltjes { stieltjes: StieltjesReport },
}

impl ConditionB {
    pub fn passed(&self) -> bool {
        matches!(self, ConditionB::Pass { .. })
    }
}

/// Checks the symmetry, the modulus bound and the Stieltjes sections in turn.
pub fn lambda2_condition_b(
    data: &MomentData<MonomialIndex>,
    k: i64,
    l: i64,
    n: usize,
    tol: f64,
) -> Result<ConditionB, MomentsError> {
    let gap = l - k;
    if gap.rem_euclid(2) != 0 {
        return Err(MomentsError::OddGap { gap });
    }
    let c_kl = data.require(&MonomialIndex::new(k, l))?;
    let c_lk = data.require(&MonomialIndex::new(l, k))?;
    let mid = k + gap / 2;
    let bound = data.require(&MonomialIndex::new(mid, mid))?.re;
    let stieltjes = stieltjes_diagonal(data, n, tol)?;
    if (c_lk - c_kl.conj()).norm() > tol {
        return Ok(ConditionB::FailSymmetry { c_kl, c_lk });
    }
    if c_kl.norm() > bound + tol {
        return Ok(ConditionB::FailBound { modulus: c_kl.norm(), bound });
    }
    if !(stieltjes.hankel0.0 && stieltjes.hankel1.0) {
        return Ok(ConditionB::FailStieltjes { stieltjes });
    }
    Ok(ConditionB::Pass { stieltjes })
}
