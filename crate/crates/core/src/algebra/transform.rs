//! Exact change of variables between real planar moments `∫ x^k y^l dμ` and
//! complex moments `∫ z^m conj(z)^n dμ`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::dyadic::{basis_tables, DyadicGaussian, DyadicTable};
use super::index::MonomialIndex;
use super::AlgebraError;

/// Exact Gaussian rational `re + i im`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GaussRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRational { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        GaussRational { re, im: BigRational::zero() }
    }

    /// `(re_num + i im_num) / den` from machine integers.
    pub fn from_ratio(re_num: i64, im_num: i64, den: i64) -> Self {
        GaussRational {
            re: BigRational::new(re_num.into(), den.into()),
            im: BigRational::new(im_num.into(), den.into()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn to_complex(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.re.to_f64().unwrap_or(f64::NAN), self.im.to_f64().unwrap_or(f64::NAN))
    }

    fn add_scaled(&mut self, d: &DyadicGaussian, x: &GaussRational) {
        let den = BigRational::from_integer(BigInt::from(1) << d.exp2);
        let dr = BigRational::from_integer(d.re_num.into()) / &den;
        let di = BigRational::from_integer(d.im_num.into()) / &den;
        self.re += &dr * &x.re - &di * &x.im;
        self.im += &dr * &x.im + &di * &x.re;
    }
}

impl fmt::Display for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i", self.re, self.im)
    }
}

impl Serialize for GaussRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.re.to_string(), self.im.to_string()].serialize(s)
    }
}

impl<'de> Deserialize<'de> for GaussRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [re, im] = <[String; 2]>::deserialize(d)?;
        let parse = |s: &str| BigRational::from_str(s.trim()).map_err(serde::de::Error::custom);
        Ok(GaussRational { re: parse(&re)?, im: parse(&im)? })
    }
}

/// Exact moment values keyed by exponent pair.
pub type ExactSystem = BTreeMap<MonomialIndex, GaussRational>;

fn triangle(degree: u32) -> impl Iterator<Item = MonomialIndex> {
    let d = degree as i64;
    (0..=d).flat_map(move |m| (0..=d - m).map(move |n| MonomialIndex::new(m, n)))
}

fn apply_tables(
    input: &ExactSystem,
    degree: u32,
    pick: impl Fn(u32, u32) -> DyadicTable,
) -> Result<ExactSystem, Vec<MonomialIndex>> {
    let missing: Vec<MonomialIndex> = triangle(degree).filter(|k| !input.contains_key(k)).collect();
    if !missing.is_empty() {
        return Err(missing);
    }
    Ok(triangle(degree)
        .map(|mn| {
            let mut acc = GaussRational::default();
            for (kl, coeff) in pick(mn.m as u32, mn.n as u32) {
                acc.add_scaled(&coeff, &input[&kl]);
            }
            (mn, acc)
        })
        .collect())
}

/// `c_{m,n} = Σ α^{m,n}_{k,l} a_{k,l}` for all `m + n <= degree`.
///
/// Only `a_{k,l}` with `k + l = m + n` contribute, so the input must cover
/// the triangle `k + l <= degree`; extra entries are ignored.
pub fn real_to_complex_moments(a: &ExactSystem, degree: u32) -> Result<ExactSystem, AlgebraError> {
    apply_tables(a, degree, |m, n| basis_tables(m, n).0)
        .map_err(|missing| AlgebraError::MissingRealMoment { missing })
}

/// Inverse transform `a_{m,n} = Σ β^{m,n}_{k,l} c_{k,l}`.
pub fn complex_to_real_moments(c: &ExactSystem, degree: u32) -> Result<ExactSystem, AlgebraError> {
    apply_tables(c, degree, |m, n| basis_tables(m, n).1)
        .map_err(|missing| AlgebraError::MissingComplexMoment { missing })
}
