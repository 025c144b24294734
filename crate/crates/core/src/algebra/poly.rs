use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::index::{IndexClass, MonomialIndex, StarIndex, ZkIndex};
use super::AlgebraError;

/// Coefficients below `PRUNE_REL * conorm` are dropped after arithmetic.
pub const PRUNE_REL: f64 = 1e-14;

/// Sparse polynomial over the index set `K` of a *-semigroup.
///
/// Zero coefficients are never stored; the zero polynomial is the empty map.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<K: StarIndex> {
    coeffs: BTreeMap<K, Complex64>,
}

/// `C_T(z, conj z)`: Laurent polynomials in `z` and `conj(z)`.
pub type LaurentPoly = Poly<MonomialIndex>;

/// Trigonometric polynomials on the torus `T^k`.
pub type TrigPoly = Poly<ZkIndex>;

impl<K: StarIndex> Default for Poly<K> {
    fn default() -> Self {
        Poly { coeffs: BTreeMap::new() }
    }
}

impl<K: StarIndex> Poly<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(index: K, coeff: Complex64) -> Self {
        Self::from_terms([(index, coeff)])
    }

    /// Sums repeated indices, then prunes.
    pub fn from_terms(terms: impl IntoIterator<Item = (K, Complex64)>) -> Self {
        let mut coeffs = BTreeMap::new();
        for (k, c) in terms {
            *coeffs.entry(k).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        let mut p = Poly { coeffs };
        p.prune();
        p
    }

    fn prune(&mut self) {
        let cut = PRUNE_REL * self.conorm();
        self.coeffs.retain(|_, c| {
            let a = c.norm();
            a != 0.0 && a >= cut
        });
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, index: &K) -> Complex64 {
        self.coeffs.get(index).copied().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &BTreeMap<K, Complex64> {
        &self.coeffs
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Complex64)> {
        self.coeffs.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &K> {
        self.coeffs.keys()
    }

    /// `p*`: the coefficient at `s` becomes `conj(a_{s*})`.
    pub fn involution(&self) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(|(k, c)| (k.star(), c.conj())).collect(),
        }
    }

    /// `q q*`, which evaluates to `|q|²`.
    pub fn mod_squared(&self) -> Self {
        self * &self.involution()
    }

    /// Largest coefficient modulus, zero for the zero polynomial.
    pub fn conorm(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        (self - &self.involution()).conorm() <= tol
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(k, c)| (k.clone(), c * s)))
    }

    /// Every stored index lies in the square cone of the index type.
    pub fn in_square_cone(&self) -> bool {
        self.coeffs.keys().all(StarIndex::in_square_cone)
    }
}

impl LaurentPoly {
    /// Builds from `(m, n, coefficient)` triples.
    pub fn from_triples(terms: impl IntoIterator<Item = (i64, i64, Complex64)>) -> Self {
        Self::from_terms(terms.into_iter().map(|(m, n, c)| (MonomialIndex::new(m, n), c)))
    }

    /// `p(z, conj z) = Σ a_{m,n} z^m conj(z)^n`.
    pub fn eval(&self, z: Complex64) -> Result<Complex64, AlgebraError> {
        if z == Complex64::new(0.0, 0.0) {
            let mut acc = Complex64::new(0.0, 0.0);
            for (idx, c) in &self.coeffs {
                if idx.m < 0 || idx.n < 0 {
                    return Err(AlgebraError::EvalAtZeroWithNegativePower { m: idx.m, n: idx.n });
                }
                if idx.m == 0 && idx.n == 0 {
                    acc += c;
                }
            }
            return Ok(acc);
        }
        let (r, theta) = z.to_polar();
        Ok(self
            .coeffs
            .iter()
            .map(|(idx, c)| c * Complex64::from_polar(r.powi((idx.m + idx.n) as i32), theta * (idx.m - idx.n) as f64))
            .sum())
    }

    /// Real part of `eval` for Hermitian polynomials at a nonzero point.
    pub fn eval_real(&self, z: Complex64) -> f64 {
        self.eval(z).map(|v| v.re).unwrap_or(f64::NAN)
    }

    pub fn support_in(&self, class: IndexClass) -> bool {
        self.coeffs.keys().all(|k| class.contains(k))
    }
}

impl TrigPoly {
    /// Builds a `dim`-variate trigonometric polynomial, checking exponent lengths.
    pub fn trig(dim: usize, terms: impl IntoIterator<Item = (Vec<i64>, Complex64)>) -> Result<Self, AlgebraError> {
        let mut out = Vec::new();
        for (alpha, c) in terms {
            if alpha.len() != dim {
                return Err(AlgebraError::DimensionMismatch { expected: dim, found: alpha.len() });
            }
            out.push((ZkIndex(alpha), c));
        }
        Ok(Self::from_terms(out))
    }

    /// Univariate helper: coefficients of `z^{lo}, z^{lo+1}, ...`.
    pub fn univariate(lo: i64, coeffs: &[Complex64]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(k, &c)| (ZkIndex(vec![lo + k as i64]), c)))
    }

    /// Dimension read off the stored exponents; `None` for the zero polynomial.
    pub fn dim(&self) -> Option<usize> {
        self.coeffs.keys().next().map(ZkIndex::dim)
    }

    /// Evaluation at a point of `(C_*)^k`, typically the torus.
    pub fn eval_at(&self, z: &[Complex64]) -> Complex64 {
        self.coeffs
            .iter()
            .map(|(alpha, c)| {
                assert_eq!(alpha.dim(), z.len(), "point dimension mismatch");
                alpha.0.iter().zip(z).fold(*c, |acc, (&a, &zi)| acc * zi.powi(a as i32))
            })
            .sum()
    }

    /// Univariate evaluation at `e^{it}`.
    pub fn eval_angle(&self, t: f64) -> Complex64 {
        self.eval_at(&[Complex64::from_polar(1.0, t)])
    }

    /// Analytic: every exponent in `Z+^k`.
    pub fn is_analytic(&self) -> bool {
        self.in_square_cone()
    }

    /// Largest `|α_1|` in the univariate case.
    pub fn degree_1d(&self) -> i64 {
        self.coeffs.keys().map(|a| a.0[0].abs()).max().unwrap_or(0)
    }
}

impl<K: StarIndex> Add for &Poly<K> {
    type Output = Poly<K>;
    fn add(self, rhs: &Poly<K>) -> Poly<K> {
        Poly::from_terms(self.coeffs.iter().chain(rhs.coeffs.iter()).map(|(k, c)| (k.clone(), *c)))
    }
}

impl<K: StarIndex> Sub for &Poly<K> {
    type Output = Poly<K>;
    fn sub(self, rhs: &Poly<K>) -> Poly<K> {
        Poly::from_terms(
            self.coeffs
                .iter()
                .map(|(k, c)| (k.clone(), *c))
                .chain(rhs.coeffs.iter().map(|(k, c)| (k.clone(), -c))),
        )
    }
}

impl<K: StarIndex> Mul for &Poly<K> {
    type Output = Poly<K>;
    fn mul(self, rhs: &Poly<K>) -> Poly<K> {
        Poly::from_terms(
            self.coeffs
                .iter()
                .flat_map(|(a, ca)| rhs.coeffs.iter().map(move |(b, cb)| (a.combine(b), ca * cb))),
        )
    }
}

impl<K: StarIndex> Neg for &Poly<K> {
    type Output = Poly<K>;
    fn neg(self) -> Poly<K> {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

impl<K: StarIndex> std::iter::Sum for Poly<K> {
    fn sum<I: Iterator<Item = Poly<K>>>(iter: I) -> Self {
        Poly::from_terms(iter.flat_map(|p| p.coeffs.into_iter()))
    }
}

impl<K: StarIndex + Serialize> Serialize for Poly<K> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<(&K, [f64; 2])> = self.coeffs.iter().map(|(k, c)| (k, [c.re, c.im])).collect();
        terms.serialize(s)
    }
}

impl<'de, K: StarIndex + Deserialize<'de>> Deserialize<'de> for Poly<K> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let terms: Vec<(K, [f64; 2])> = Vec::deserialize(d)?;
        Ok(Poly::from_terms(terms.into_iter().map(|(k, [re, im])| (k, Complex64::new(re, im)))))
    }
}
