use nalgebra::DMatrix;
use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::index::MonomialIndex;
use super::AlgebraError;

const CHARACTER_TOL: f64 = 1e-12;

/// Angle of a point, either an exact rational multiple of a full turn or an
/// angle that is never a root of unity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Rotation {
    /// Angle `2π p / q` with `0 <= p < q`, `gcd(p, q) = 1`.
    Rational { p: u64, q: u64 },
    /// Angle in radians, treated as an irrational multiple of `2π`.
    Irrational { angle: f64 },
}

impl Rotation {
    /// Reduces `p / q` to lowest terms with `p` taken modulo `q`.
    pub fn rational(p: i64, q: u64) -> Rotation {
        assert!(q > 0, "rotation denominator must be positive");
        let p = p.rem_euclid(q as i64) as u64;
        let g = p.gcd(&q);
        Rotation::Rational { p: p / g, q: q / g }
    }

    pub fn angle(&self) -> f64 {
        match *self {
            Rotation::Rational { p, q } => std::f64::consts::TAU * p as f64 / q as f64,
            Rotation::Irrational { angle } => angle,
        }
    }
}

/// A point of `C` given by an exact modulus and an exact rotation class.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExactPoint {
    pub modulus: f64,
    pub rotation: Rotation,
}

impl ExactPoint {
    pub fn new(modulus: f64, rotation: Rotation) -> Self {
        assert!(modulus >= 0.0, "modulus must be nonnegative");
        let rotation = match rotation {
            Rotation::Rational { p, q } => Rotation::rational(p as i64, q),
            r => r,
        };
        ExactPoint { modulus, rotation }
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::from_polar(self.modulus, self.rotation.angle())
    }
}

/// Whether the point set separates the points of `Z+ x Z+`, i.e. the maps
/// `(m, n) ↦ z^m conj(z)^n` restricted to `points` are pairwise distinct.
///
/// Holds iff (i) some point has modulus outside `{0, 1}` and (ii) the unit
/// directions of the nonzero points are not all `κ`-th roots of unity for a
/// single `κ >= 1`. With exact rotations (ii) fails exactly when every
/// nonzero point has a rational rotation (take `κ` = lcm of denominators).
pub fn separates_points_n(points: &[ExactPoint]) -> bool {
    let off_circle = points.iter().any(|p| p.modulus != 0.0 && p.modulus != 1.0);
    let all_roots_of_unity = points
        .iter()
        .filter(|p| p.modulus != 0.0)
        .all(|p| matches!(p.rotation, Rotation::Rational { .. }));
    off_circle && !all_roots_of_unity
}

/// Common `κ` for which every nonzero point's direction is a `κ`-th root of
/// unity, if one exists.
pub fn common_root_order(points: &[ExactPoint]) -> Option<u64> {
    points
        .iter()
        .filter(|p| p.modulus != 0.0)
        .try_fold(1u64, |acc, p| match p.rotation {
            Rotation::Rational { q, .. } => Some(acc.lcm(&q)),
            Rotation::Irrational { .. } => None,
        })
}

/// Character of `N+` evaluated at `(z, w)` in `Ω ∪ ({0} x T)`.
pub fn char_eval_nplus(s: MonomialIndex, z: Complex64, w: Complex64) -> Result<Complex64, AlgebraError> {
    if s.m + s.n < 0 {
        return Err(AlgebraError::NotInNPlus { m: s.m, n: s.n });
    }
    if (w.norm() - 1.0).abs() > CHARACTER_TOL {
        return Err(AlgebraError::InvalidCharacterPoint { z, w, reason: "|w| != 1".into() });
    }
    if z != Complex64::new(0.0, 0.0) {
        let expected = z / z.conj();
        if (expected - w).norm() > CHARACTER_TOL {
            return Err(AlgebraError::InvalidCharacterPoint { z, w, reason: "w != z / conj(z)".into() });
        }
        let (r, theta) = z.to_polar();
        return Ok(Complex64::from_polar(r.powi((s.m + s.n) as i32), theta * (s.m - s.n) as f64));
    }
    if s.m + s.n > 0 {
        Ok(Complex64::new(0.0, 0.0))
    } else {
        Ok(w.powi(s.m as i32))
    }
}

/// Whether the monomials indexed by `truncation` are linearly independent
/// on `points`, via the numerical rank of the evaluation matrix.
///
/// Singular values at or below `tol * σ_max` count as zero.
pub fn is_determining_sample(
    truncation: &[MonomialIndex],
    points: &[Complex64],
    tol: f64,
) -> Result<bool, AlgebraError> {
    if points.len() < truncation.len() {
        return Err(AlgebraError::InsufficientSamplePoints { points: points.len(), monomials: truncation.len() });
    }
    if truncation.is_empty() {
        return Ok(true);
    }
    let mut entries = Vec::with_capacity(points.len() * truncation.len());
    for &z in points {
        for idx in truncation {
            let v = if z == Complex64::new(0.0, 0.0) {
                if idx.m < 0 || idx.n < 0 {
                    return Err(AlgebraError::EvalAtZeroWithNegativePower { m: idx.m, n: idx.n });
                }
                if idx.m == 0 && idx.n == 0 {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            } else {
                let (r, theta) = z.to_polar();
                Complex64::from_polar(r.powi((idx.m + idx.n) as i32), theta * (idx.m - idx.n) as f64)
            };
            entries.push(v);
        }
    }
    let matrix = DMatrix::from_row_slice(points.len(), truncation.len(), &entries);
    let sv = matrix.singular_values();
    let sigma_max = sv.iter().copied().fold(0.0, f64::max);
    if sigma_max == 0.0 {
        return Ok(false);
    }
    let rank = sv.iter().filter(|&&s| s > tol * sigma_max).count();
    Ok(rank == truncation.len())
}
