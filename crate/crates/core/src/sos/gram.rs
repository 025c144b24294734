use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::SosError;
use crate::algebra::{Poly, StarIndex};
use crate::linalg::{hermitian_eigen, max_asymmetry, CMatrix};

const HERMITIAN_TOL: f64 = 1e-12;

/// Monomial basis `v` and Hermitian `G` with `p = Σ_{k,j} G_{k,j} v_k conj(v_j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GramCertificate<K: StarIndex> {
    basis: Vec<K>,
    gram: CMatrix,
}

impl<K: StarIndex> GramCertificate<K> {
    pub fn new(basis: Vec<K>, gram: CMatrix) -> Result<Self, SosError> {
        if gram.nrows() != basis.len() || gram.ncols() != basis.len() {
            return Err(SosError::GramShape { rows: gram.nrows(), cols: gram.ncols(), basis: basis.len() });
        }
        let mut seen = basis.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != basis.len() {
            return Err(SosError::DuplicateBasis);
        }
        let asymmetry = max_asymmetry(&gram);
        if asymmetry > HERMITIAN_TOL {
            return Err(SosError::GramNotHermitian { asymmetry });
        }
        Ok(GramCertificate { basis, gram })
    }

    pub fn basis(&self) -> &[K] {
        &self.basis
    }

    pub fn gram(&self) -> &CMatrix {
        &self.gram
    }

    pub fn min_eigenvalue(&self) -> f64 {
        hermitian_eigen(&self.gram).min()
    }
}

/// Finite list of squares `q_j` in the square cone (`N+` or analytic).
#[derive(Clone, Debug, PartialEq)]
pub struct SquareList<K: StarIndex> {
    squares: Vec<Poly<K>>,
}

impl<K: StarIndex> SquareList<K> {
    pub fn new(squares: Vec<Poly<K>>) -> Result<Self, SosError> {
        if let Some(position) = squares.iter().position(|q| !q.in_square_cone()) {
            return Err(SosError::SquareOutsideCone { position });
        }
        Ok(SquareList { squares })
    }

    pub fn squares(&self) -> &[Poly<K>] {
        &self.squares
    }

    /// `Σ |q_j|²` as a polynomial.
    pub fn sum_of_squares(&self) -> Poly<K> {
        self.squares.iter().map(Poly::mod_squared).sum()
    }
}

/// Expands `Σ_{k,j} G_{k,j} v_k conj(v_j)`.
pub fn expand_certificate<K: StarIndex>(cert: &GramCertificate<K>) -> Poly<K> {
    let b = &cert.basis;
    Poly::from_terms((0..b.len()).flat_map(|k| {
        (0..b.len()).map(move |j| (b[k].combine(&b[j].star()), cert.gram[(k, j)]))
    }))
}

/// `G = Σ c_j c_j*` where `c_j` is the coefficient vector of `q_j`. The basis
/// lists indices in order of first appearance.
pub fn squares_to_gram<K: StarIndex>(list: &SquareList<K>) -> GramCertificate<K> {
    let mut basis: Vec<K> = Vec::new();
    let mut position: BTreeMap<K, usize> = BTreeMap::new();
    for q in &list.squares {
        for k in q.support() {
            if !position.contains_key(k) {
                position.insert(k.clone(), basis.len());
                basis.push(k.clone());
            }
        }
    }
    let n = basis.len();
    let mut gram = CMatrix::zeros(n, n);
    for q in &list.squares {
        let c: Vec<(usize, Complex64)> = q.iter().map(|(k, v)| (position[k], *v)).collect();
        for &(r, a) in &c {
            for &(s, b) in &c {
                gram[(r, s)] += a * b.conj();
            }
        }
    }
    GramCertificate { basis, gram }
}

/// Factors `G = Σ λ_j u_j u_j*` and returns `q_j = sqrt(λ_j) Σ_k u_{k,j} v_k`.
/// Eigenvalues in `[-clip_tol, 0)` are clipped to zero.
pub fn gram_to_squares<K: StarIndex>(cert: &GramCertificate<K>, clip_tol: f64) -> Result<SquareList<K>, SosError> {
    let eig = hermitian_eigen(&cert.gram);
    if eig.min() < -clip_tol {
        return Err(SosError::NotPositiveSemidefinite { min_eigenvalue: eig.min() });
    }
    let floor = f64::EPSILON * cert.basis.len() as f64 * eig.max().abs().max(1.0);
    let squares = eig
        .values
        .iter()
        .enumerate()
        .filter(|(_, &lam)| lam > floor)
        .map(|(j, &lam)| {
            let s = lam.sqrt();
            Poly::from_terms(cert.basis.iter().enumerate().map(|(k, idx)| (idx.clone(), eig.vectors[(k, j)] * s)))
        })
        .filter(|q| !q.is_zero())
        .collect();
    Ok(SquareList { squares })
}

#[derive(Serialize, Deserialize)]
struct GramRepr<K> {
    basis: Vec<K>,
    gram: Vec<Vec<[f64; 2]>>,
}

impl<K: StarIndex + Serialize> Serialize for GramCertificate<K> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let n = self.basis.len();
        GramRepr {
            basis: self.basis.clone(),
            gram: (0..n).map(|r| (0..n).map(|c| [self.gram[(r, c)].re, self.gram[(r, c)].im]).collect()).collect(),
        }
        .serialize(s)
    }
}

impl<'de, K: StarIndex + Deserialize<'de>> Deserialize<'de> for GramCertificate<K> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = GramRepr::<K>::deserialize(d)?;
        let n = repr.basis.len();
        if repr.gram.len() != n || repr.gram.iter().any(|row| row.len() != n) {
            return Err(serde::de::Error::custom("gram must be a square matrix matching the basis"));
        }
        let gram = CMatrix::from_fn(n, n, |r, c| Complex64::new(repr.gram[r][c][0], repr.gram[r][c][1]));
        GramCertificate::new(repr.basis, gram).map_err(serde::de::Error::custom)
    }
}

impl<K: StarIndex + Serialize> Serialize for SquareList<K> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.squares.serialize(s)
    }
}

impl<'de, K: StarIndex + Deserialize<'de>> Deserialize<'de> for SquareList<K> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let squares = Vec::<Poly<K>>::deserialize(d)?;
        SquareList::new(squares).map_err(serde::de::Error::custom)
    }
}
