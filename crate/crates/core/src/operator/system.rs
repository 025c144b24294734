use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::OperatorError;
use crate::algebra::StarIndex;

/// Finitely supported coefficients `a_α^{i,j}` with block indices
/// `i, j ∈ 1..=m`.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorCoefficientSystem<K: StarIndex> {
    m: usize,
    coefficients: BTreeMap<(K, usize, usize), Complex64>,
}

impl<K: StarIndex> OperatorCoefficientSystem<K> {
    pub fn new(m: usize) -> Self {
        OperatorCoefficientSystem { m, coefficients: BTreeMap::new() }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Adds `value` to `a_α^{i,j}`.
    pub fn add(&mut self, alpha: K, i: usize, j: usize, value: Complex64) -> Result<(), OperatorError> {
        for index in [i, j] {
            if index == 0 || index > self.m {
                return Err(OperatorError::BlockIndex { index, m: self.m });
            }
        }
        let slot = self.coefficients.entry((alpha, i, j)).or_default();
        *slot += value;
        Ok(())
    }

    pub fn get(&self, alpha: &K, i: usize, j: usize) -> Complex64 {
        self.coefficients.get(&(alpha.clone(), i, j)).copied().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, usize, usize, Complex64)> {
        self.coefficients.iter().map(|((a, i, j), c)| (a, *i, *j, *c))
    }

    pub fn scale(&self, t: f64) -> Self {
        OperatorCoefficientSystem {
            m: self.m,
            coefficients: self.coefficients.iter().map(|(k, c)| (k.clone(), c * t)).collect(),
        }
    }

    /// `a_{α*}^{j,i} = conj(a_α^{i,j})` for every entry.
    pub fn is_hermitian_valued(&self, tol: f64) -> bool {
        self.coefficients.iter().all(|((a, i, j), c)| (self.get(&a.star(), *j, *i) - c.conj()).norm() <= tol)
    }
}

#[derive(Serialize, Deserialize)]
struct Entry<K> {
    alpha: K,
    i: usize,
    j: usize,
    value: [f64; 2],
}

impl<K: StarIndex + Serialize> Serialize for OperatorCoefficientSystem<K> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let entries: Vec<Entry<K>> =
            self.iter().map(|(a, i, j, c)| Entry { alpha: a.clone(), i, j, value: [c.re, c.im] }).collect();
        entries.serialize(s)
    }
}

impl<'de, K: StarIndex + Deserialize<'de>> Deserialize<'de> for OperatorCoefficientSystem<K> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let entries = Vec::<Entry<K>>::deserialize(d)?;
        let m = entries.iter().map(|e| e.i.max(e.j)).max().unwrap_or(0);
        let mut sys = OperatorCoefficientSystem::new(m);
        for e in entries {
            sys.add(e.alpha, e.i, e.j, Complex64::new(e.value[0], e.value[1])).map_err(serde::de::Error::custom)?;
        }
        Ok(sys)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ZkIndex;
    use crate::linalg::c64;

    #[test]
    fn json_roundtrip() {
        let mut sys = OperatorCoefficientSystem::new(2);
        sys.add(ZkIndex(vec![1]), 1, 2, c64(1.0, 0.0)).unwrap();
        sys.add(ZkIndex(vec![-1]), 2, 1, c64(1.0, 0.0)).unwrap();
        let text = serde_json::to_string(&sys).unwrap();
        assert_eq!(text, r#"[{"alpha":[-1],"i":2,"j":1,"value":[1.0,0.0]},{"alpha":[1],"i":1,"j":2,"value":[1.0,0.0]}]"#);
        assert_eq!(serde_json::from_str::<OperatorCoefficientSystem<ZkIndex>>(&text).unwrap(), sys);
        assert!(sys.is_hermitian_valued(0.0));
        assert!(serde_json::from_str::<OperatorCoefficientSystem<ZkIndex>>(r#"[{"alpha":[0],"i":0,"j":1,"value":[1.0,0.0]}]"#).is_err());
    }

    #[test]
    fn block_indices_are_checked() {
        let mut sys = OperatorCoefficientSystem::<ZkIndex>::new(1);
        assert_eq!(sys.add(ZkIndex(vec![0]), 1, 2, c64(1.0, 0.0)), Err(OperatorError::BlockIndex { index: 2, m: 1 }));
    }
}
