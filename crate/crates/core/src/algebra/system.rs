use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::index::{MonomialIndex, StarIndex};
use super::AlgebraError;

const SYMMETRY_TOL: f64 = 1e-12;

/// Values `{c_s}` on a finite truncation `T`; the truncation is the key set.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientSystem<K: StarIndex> {
    values: BTreeMap<K, Complex64>,
}

impl<K: StarIndex> Default for CoefficientSystem<K> {
    fn default() -> Self {
        CoefficientSystem { values: BTreeMap::new() }
    }
}

impl<K: StarIndex> CoefficientSystem<K> {
    pub fn new(values: BTreeMap<K, Complex64>) -> Self {
        CoefficientSystem { values }
    }

    pub fn from_fn(truncation: impl IntoIterator<Item = K>, f: impl Fn(&K) -> Complex64) -> Self {
        CoefficientSystem { values: truncation.into_iter().map(|k| { let v = f(&k); (k, v) }).collect() }
    }

    pub fn get(&self, index: &K) -> Option<Complex64> {
        self.values.get(index).copied()
    }

    pub fn contains(&self, index: &K) -> bool {
        self.values.contains_key(index)
    }

    pub fn truncation(&self) -> impl Iterator<Item = &K> {
        self.values.keys()
    }

    pub fn values(&self) -> &BTreeMap<K, Complex64> {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Complex64)> {
        self.values.iter()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn insert(&mut self, index: K, value: Complex64) -> Option<Complex64> {
        self.values.insert(index, value)
    }

    pub fn remove(&mut self, index: &K) -> Option<Complex64> {
        self.values.remove(index)
    }

    /// Extension to `T ∪ T*` by `c_{s*} = conj(c_s)`; on a conflict the
    /// offending pair `(s, s*)` is returned.
    pub fn symmetrized(&self) -> Result<Self, (K, K)> {
        symmetrize_generic(self)
    }

    /// Whether `T = T*`.
    pub fn is_symmetric_set(&self) -> bool {
        self.values.keys().all(|k| self.values.contains_key(&k.star()))
    }
}

/// Symmetrization `c♮` on `T ∪ T*`.
///
/// Requires `c_s = conj(c_{s*})` on `T ∩ T*`; the reflected values are
/// `c♮_{s*} = conj(c_s)`. Symmetric inputs come back unchanged.
pub fn symmetrize(sys: &CoefficientSystem<MonomialIndex>) -> Result<CoefficientSystem<MonomialIndex>, AlgebraError> {
    symmetrize_generic(sys).map_err(|(index, partner)| AlgebraError::NotSymmetrizable { index, partner })
}

fn symmetrize_generic<K: StarIndex>(sys: &CoefficientSystem<K>) -> Result<CoefficientSystem<K>, (K, K)> {
    let mut out = sys.values.clone();
    for (k, c) in &sys.values {
        let ks = k.star();
        match sys.values.get(&ks) {
            Some(partner) => {
                if (c - partner.conj()).norm() > SYMMETRY_TOL {
                    return Err((k.clone(), ks));
                }
            }
            None => {
                out.insert(ks, c.conj());
            }
        }
    }
    Ok(CoefficientSystem { values: out })
}

#[derive(Serialize, Deserialize)]
struct SystemRepr<K> {
    truncation: Vec<K>,
    values: Vec<(K, [f64; 2])>,
}

impl<K: StarIndex + Serialize> Serialize for CoefficientSystem<K> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SystemRepr {
            truncation: self.values.keys().cloned().collect(),
            values: self.values.iter().map(|(k, c)| (k.clone(), [c.re, c.im])).collect(),
        }
        .serialize(s)
    }
}

impl<'de, K: StarIndex + Deserialize<'de>> Deserialize<'de> for CoefficientSystem<K> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = SystemRepr::<K>::deserialize(d)?;
        let values: BTreeMap<K, Complex64> =
            repr.values.into_iter().map(|(k, [re, im])| (k, Complex64::new(re, im))).collect();
        let declared: BTreeSet<K> = repr.truncation.into_iter().collect();
        if !declared.iter().eq(values.keys()) {
            return Err(serde::de::Error::custom(AlgebraError::TruncationMismatch));
        }
        Ok(CoefficientSystem { values })
    }
}
