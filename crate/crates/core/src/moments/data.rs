use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::MomentsError;
use crate::algebra::{CoefficientSystem, IndexClass, MonomialIndex, Poly, StarIndex, ZkIndex};

/// Moment data `{c_s : s in T}` over an ambient index class.
///
/// Hypotheses such as `T = T*` or diagonal inclusion are checked by the
/// operations that need them.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentData<K: StarIndex> {
    pub semigroup: IndexClass,
    pub system: CoefficientSystem<K>,
}

impl<K: StarIndex> MomentData<K> {
    pub fn new(semigroup: IndexClass, system: CoefficientSystem<K>) -> Self {
        MomentData { semigroup, system }
    }

    pub fn from_fn(semigroup: IndexClass, truncation: impl IntoIterator<Item = K>, f: impl Fn(&K) -> Complex64) -> Self {
        MomentData { semigroup, system: CoefficientSystem::from_fn(truncation, f) }
    }

    pub fn get(&self, index: &K) -> Option<Complex64> {
        self.system.get(index)
    }

    pub fn require(&self, index: &K) -> Result<Complex64, MomentsError> {
        self.system.get(index).ok_or_else(|| MomentsError::MissingMoment { index: index.coords() })
    }

    pub fn kappa(&self) -> usize {
        match self.semigroup {
            IndexClass::Zk(k) => k,
            _ => 1,
        }
    }
}

impl MomentData<MonomialIndex> {
    /// Smallest standard class containing every index of `T`.
    pub fn infer_class(truncation: impl IntoIterator<Item = MonomialIndex>) -> IndexClass {
        let mut class = IndexClass::N;
        for idx in truncation {
            if !IndexClass::NPlus.contains(&idx) {
                return IndexClass::ZZ;
            }
            if !IndexClass::N.contains(&idx) {
                class = IndexClass::NPlus;
            }
        }
        class
    }
}

/// The Riesz functional `Λ(p) = Σ p_s c_s`.
pub fn riesz_apply<K: StarIndex>(data: &MomentData<K>, p: &Poly<K>) -> Result<Complex64, MomentsError> {
    let missing: Vec<Vec<i64>> = p.support().filter(|s| !data.system.contains(s)).map(StarIndex::coords).collect();
    if !missing.is_empty() {
        return Err(MomentsError::SupportNotCovered { missing });
    }
    Ok(p.iter().map(|(s, c)| c * data.system.get(s).unwrap_or_default()).sum())
}

#[derive(Serialize, Deserialize)]
struct DataRepr<S> {
    semigroup: String,
    kappa: usize,
    #[serde(flatten)]
    system: S,
}

fn class_from_name(name: &str, kappa: usize) -> Option<IndexClass> {
    Some(match name {
        "N" => IndexClass::N,
        "NPlus" => IndexClass::NPlus,
        "ZZ" => IndexClass::ZZ,
        "Zk" => IndexClass::Zk(kappa),
        "Diagonal" => IndexClass::Diagonal,
        _ => return None,
    })
}

impl<K: StarIndex + Serialize> Serialize for MomentData<K> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        DataRepr { semigroup: self.semigroup.name().to_string(), kappa: self.kappa(), system: &self.system }.serialize(s)
    }
}

fn check_membership<K, E: serde::de::Error>(
    semigroup: IndexClass,
    system: &CoefficientSystem<K>,
    contains: impl Fn(&K) -> bool,
) -> Result<(), E>
where
    K: StarIndex,
{
    match system.truncation().find(|k| !contains(k)) {
        Some(bad) => Err(E::custom(format!("index {:?} is not in {}", bad.coords(), semigroup.name()))),
        None => Ok(()),
    }
}

impl<'de> Deserialize<'de> for MomentData<MonomialIndex> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = DataRepr::<CoefficientSystem<MonomialIndex>>::deserialize(d)?;
        let semigroup = class_from_name(&repr.semigroup, repr.kappa)
            .ok_or_else(|| serde::de::Error::custom(format!("unknown semigroup {:?}", repr.semigroup)))?;
        check_membership(semigroup, &repr.system, |k| semigroup.contains(k))?;
        Ok(MomentData { semigroup, system: repr.system })
    }
}

impl<'de> Deserialize<'de> for MomentData<ZkIndex> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = DataRepr::<CoefficientSystem<ZkIndex>>::deserialize(d)?;
        let semigroup = class_from_name(&repr.semigroup, repr.kappa)
            .ok_or_else(|| serde::de::Error::custom(format!("unknown semigroup {:?}", repr.semigroup)))?;
        check_membership(semigroup, &repr.system, |k| semigroup.contains_multi(k))?;
        Ok(MomentData { semigroup, system: repr.system })
    }
}
