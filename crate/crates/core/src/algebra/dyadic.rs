use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg};

use serde::{Deserialize, Serialize};

use super::index::MonomialIndex;

/// Exact Gaussian dyadic number `(re_num + i im_num) / 2^exp2`, kept in
/// lowest terms (`exp2 > 0` implies some numerator is odd).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DyadicGaussian {
    pub re_num: i64,
    pub im_num: i64,
    pub exp2: u32,
}

pub type DyadicTable = BTreeMap<MonomialIndex, DyadicGaussian>;

impl DyadicGaussian {
    pub const ZERO: DyadicGaussian = DyadicGaussian { re_num: 0, im_num: 0, exp2: 0 };
    pub const ONE: DyadicGaussian = DyadicGaussian { re_num: 1, im_num: 0, exp2: 0 };
    pub const I: DyadicGaussian = DyadicGaussian { re_num: 0, im_num: 1, exp2: 0 };

    pub fn new(re_num: i64, im_num: i64, exp2: u32) -> Self {
        Self::reduce(re_num as i128, im_num as i128, exp2)
    }

    pub fn integer(n: i64) -> Self {
        Self::new(n, 0, 0)
    }

    fn reduce(mut re: i128, mut im: i128, mut exp2: u32) -> Self {
        if re == 0 && im == 0 {
            return Self::ZERO;
        }
        while exp2 > 0 && re % 2 == 0 && im % 2 == 0 {
            re /= 2;
            im /= 2;
            exp2 -= 1;
        }
        DyadicGaussian {
            re_num: re.try_into().expect("dyadic numerator overflow"),
            im_num: im.try_into().expect("dyadic numerator overflow"),
            exp2,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re_num == 0 && self.im_num == 0
    }

    pub fn conj(&self) -> Self {
        DyadicGaussian { im_num: -self.im_num, ..*self }
    }

    /// Halves the value exactly.
    pub fn half(&self) -> Self {
        Self::reduce(self.re_num as i128, self.im_num as i128, self.exp2 + 1)
    }

    pub fn to_complex(&self) -> num_complex::Complex64 {
        let d = (self.exp2 as f64).exp2();
        num_complex::Complex64::new(self.re_num as f64 / d, self.im_num as f64 / d)
    }
}

impl Default for DyadicGaussian {
    fn default() -> Self {
        Self::ZERO
    }
}

impl fmt::Debug for DyadicGaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}i)/2^{}", self.re_num, self.im_num, self.exp2)
    }
}

impl Add for DyadicGaussian {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let e = self.exp2.max(rhs.exp2);
        let ls = e - self.exp2;
        let rs = e - rhs.exp2;
        let re = ((self.re_num as i128) << ls) + ((rhs.re_num as i128) << rs);
        let im = ((self.im_num as i128) << ls) + ((rhs.im_num as i128) << rs);
        Self::reduce(re, im, e)
    }
}

impl Neg for DyadicGaussian {
    type Output = Self;
    fn neg(self) -> Self {
        DyadicGaussian { re_num: -self.re_num, im_num: -self.im_num, exp2: self.exp2 }
    }
}

impl Mul for DyadicGaussian {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let (a, b) = (self.re_num as i128, self.im_num as i128);
        let (c, d) = (rhs.re_num as i128, rhs.im_num as i128);
        Self::reduce(a * c - b * d, a * d + b * c, self.exp2 + rhs.exp2)
    }
}

impl std::iter::Sum for DyadicGaussian {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, |a, b| a + b)
    }
}

fn multiply_tables(a: &DyadicTable, b: &DyadicTable) -> DyadicTable {
    let mut out = DyadicTable::new();
    for (ka, ca) in a {
        for (kb, cb) in b {
            let key = MonomialIndex::new(ka.m + kb.m, ka.n + kb.n);
            let entry = out.entry(key).or_default();
            *entry = *entry + *ca * *cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn power_product(first: &DyadicTable, m: u32, second: &DyadicTable, n: u32) -> DyadicTable {
    let mut acc = DyadicTable::from([(MonomialIndex::ZERO, DyadicGaussian::ONE)]);
    for _ in 0..m {
        acc = multiply_tables(&acc, first);
    }
    for _ in 0..n {
        acc = multiply_tables(&acc, second);
    }
    acc
}

/// Exact coefficient tables of the two basis changes between `x^k y^l` and
/// `z^k conj(z)^l`:
///
/// - `alpha`: `(x + iy)^m (x - iy)^n = Σ alpha_{k,l} x^k y^l`,
/// - `beta`: `((z + conj z)/2)^m ((z - conj z)/(2i))^n = Σ beta_{k,l} z^k conj(z)^l`.
///
/// Both tables are supported on `k + l = m + n`.
pub fn basis_tables(m: u32, n: u32) -> (DyadicTable, DyadicTable) {
    let x_plus_iy = DyadicTable::from([
        (MonomialIndex::new(1, 0), DyadicGaussian::ONE),
        (MonomialIndex::new(0, 1), DyadicGaussian::I),
    ]);
    let x_minus_iy = DyadicTable::from([
        (MonomialIndex::new(1, 0), DyadicGaussian::ONE),
        (MonomialIndex::new(0, 1), -DyadicGaussian::I),
    ]);
    let real_part = DyadicTable::from([
        (MonomialIndex::new(1, 0), DyadicGaussian::ONE.half()),
        (MonomialIndex::new(0, 1), DyadicGaussian::ONE.half()),
    ]);
    // (z - conj z) / (2i) = -i z / 2 + i conj(z) / 2
    let imag_part = DyadicTable::from([
        (MonomialIndex::new(1, 0), (-DyadicGaussian::I).half()),
        (MonomialIndex::new(0, 1), DyadicGaussian::I.half()),
    ]);
    (power_product(&x_plus_iy, m, &x_minus_iy, n), power_product(&real_part, m, &imag_part, n))
}

/// Both compositions `Σ α^{m,n}_{i,j} β^{i,j}_{k,l}` and
/// `Σ β^{m,n}_{i,j} α^{i,j}_{k,l}` for every `(k, l)`, zero entries omitted.
pub fn composition_tables(m: u32, n: u32) -> (DyadicTable, DyadicTable) {
    let (alpha_mn, beta_mn) = basis_tables(m, n);
    let mut ab = DyadicTable::new();
    let mut ba = DyadicTable::new();
    for ij in alpha_mn.keys().chain(beta_mn.keys()).collect::<std::collections::BTreeSet<_>>() {
        let (alpha_ij, beta_ij) = basis_tables(ij.m as u32, ij.n as u32);
        if let Some(a) = alpha_mn.get(ij) {
            for (kl, b) in &beta_ij {
                let e = ab.entry(*kl).or_default();
                *e = *e + *a * *b;
            }
        }
        if let Some(b) = beta_mn.get(ij) {
            for (kl, a) in &alpha_ij {
                let e = ba.entry(*kl).or_default();
                *e = *e + *b * *a;
            }
        }
    }
    ab.retain(|_, v| !v.is_zero());
    ba.retain(|_, v| !v.is_zero());
    (ab, ba)
}

/// Entry `(k, l)` of [`composition_tables`]; each equals `δ_{m,k} δ_{n,l}`.
pub fn table_composition(m: u32, n: u32, k: u32, l: u32) -> (DyadicGaussian, DyadicGaussian) {
    let (ab, ba) = composition_tables(m, n);
    let target = MonomialIndex::new(k as i64, l as i64);
    (ab.get(&target).copied().unwrap_or_default(), ba.get(&target).copied().unwrap_or_default())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn key(m: i64, n: i64) -> MonomialIndex {
        MonomialIndex::new(m, n)
    }

    #[test]
    fn lowest_terms() {
        assert_eq!(DyadicGaussian::new(4, 2, 3), DyadicGaussian { re_num: 2, im_num: 1, exp2: 2 });
        assert_eq!(DyadicGaussian::new(0, 0, 5), DyadicGaussian::ZERO);
        let q = DyadicGaussian::new(1, 0, 2);
        assert_eq!(q + q + q + q, DyadicGaussian::ONE);
    }

    #[test]
    fn table_examples() {
        let (alpha, beta) = basis_tables(1, 1);
        assert_eq!(alpha, DyadicTable::from([(key(2, 0), DyadicGaussian::ONE), (key(0, 2), DyadicGaussian::ONE)]));
        assert_eq!(
            beta,
            DyadicTable::from([(key(2, 0), DyadicGaussian::new(0, -1, 2)), (key(0, 2), DyadicGaussian::new(0, 1, 2))])
        );
        let (alpha, beta) = basis_tables(0, 0);
        assert_eq!(alpha, DyadicTable::from([(key(0, 0), DyadicGaussian::ONE)]));
        assert_eq!(beta, alpha);
    }

    #[test]
    fn tables_match_numeric_expansion() {
        let (x, y) = (0.7, -1.1);
        let z = num_complex::Complex64::new(x, y);
        for m in 0..4u32 {
            for n in 0..4u32 {
                let (alpha, beta) = basis_tables(m, n);
                let lhs = z.powu(m) * z.conj().powu(n);
                let rhs: num_complex::Complex64 =
                    alpha.iter().map(|(k, c)| c.to_complex() * x.powi(k.m as i32) * y.powi(k.n as i32)).sum();
                assert!((lhs - rhs).norm() < 1e-12);
                let lhs = num_complex::Complex64::new(x.powi(m as i32) * y.powi(n as i32), 0.0);
                let rhs: num_complex::Complex64 =
                    beta.iter().map(|(k, c)| c.to_complex() * z.powi(k.m as i32) * z.conj().powi(k.n as i32)).sum();
                assert!((lhs - rhs).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn composition_is_kronecker_delta_small() {
        for m in 0..3 {
            for n in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        let (ab, ba) = table_composition(m, n, k, l);
                        let delta = if (m, n) == (k, l) { DyadicGaussian::ONE } else { DyadicGaussian::ZERO };
                        assert_eq!(ab, delta);
                        assert_eq!(ba, delta);
                    }
                }
            }
        }
    }

    #[test]
    fn json_schema() {
        let s = serde_json::to_string(&DyadicGaussian::new(0, -1, 2)).unwrap();
        assert_eq!(s, r#"{"re_num":0,"im_num":-1,"exp2":2}"#);
    }
}
