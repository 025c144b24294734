use std::fmt::{self, Debug};

use serde::{Deserialize, Serialize};

/// Index set of a commutative *-semigroup.
///
/// `combine` is the semigroup operation and `star` the involution. Polynomial
/// multiplication adds indices and the polynomial involution conjugates the
/// coefficient at `star(index)`.
pub trait StarIndex: Clone + Ord + Debug + Send + Sync {
    fn combine(&self, other: &Self) -> Self;
    fn star(&self) -> Self;
    /// Membership in the cone of "analytic" square roots: `N+` for the
    /// planar indices, `Z+^k` for multi-indices.
    fn in_square_cone(&self) -> bool;
    fn is_identity(&self) -> bool;
    /// Plain integer coordinates, used in reports and error payloads.
    fn coords(&self) -> Vec<i64>;
}

/// Exponent pair of the monomial `z^m conj(z)^n`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct MonomialIndex {
    pub m: i64,
    pub n: i64,
}

impl MonomialIndex {
    pub const ZERO: MonomialIndex = MonomialIndex { m: 0, n: 0 };

    pub const fn new(m: i64, n: i64) -> Self {
        MonomialIndex { m, n }
    }

    pub fn degree(&self) -> i64 {
        self.m + self.n
    }

    pub fn is_diagonal(&self) -> bool {
        self.m == self.n
    }
}

impl From<[i64; 2]> for MonomialIndex {
    fn from([m, n]: [i64; 2]) -> Self {
        MonomialIndex { m, n }
    }
}

impl From<MonomialIndex> for [i64; 2] {
    fn from(i: MonomialIndex) -> Self {
        [i.m, i.n]
    }
}

impl From<(i64, i64)> for MonomialIndex {
    fn from((m, n): (i64, i64)) -> Self {
        MonomialIndex { m, n }
    }
}

impl Debug for MonomialIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.m, self.n)
    }
}

impl StarIndex for MonomialIndex {
    fn combine(&self, other: &Self) -> Self {
        MonomialIndex::new(self.m + other.m, self.n + other.n)
    }

    fn star(&self) -> Self {
        MonomialIndex::new(self.n, self.m)
    }

    fn in_square_cone(&self) -> bool {
        self.m + self.n >= 0
    }

    fn is_identity(&self) -> bool {
        self.m == 0 && self.n == 0
    }

    fn coords(&self) -> Vec<i64> {
        vec![self.m, self.n]
    }
}

/// Multi-index in `Z^k` with involution `α* = -α`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ZkIndex(pub Vec<i64>);

impl ZkIndex {
    pub fn zero(dim: usize) -> Self {
        ZkIndex(vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// `α - β`, the trigonometric kernel index.
    pub fn minus(&self, other: &Self) -> Self {
        self.combine(&other.star())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&a| a >= 0)
    }

    pub fn is_nonpositive(&self) -> bool {
        self.0.iter().all(|&a| a <= 0)
    }
}

impl From<Vec<i64>> for ZkIndex {
    fn from(v: Vec<i64>) -> Self {
        ZkIndex(v)
    }
}

impl Debug for ZkIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl StarIndex for ZkIndex {
    fn combine(&self, other: &Self) -> Self {
        assert_eq!(self.0.len(), other.0.len(), "multi-index dimensions differ");
        ZkIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn star(&self) -> Self {
        ZkIndex(self.0.iter().map(|a| -a).collect())
    }

    fn in_square_cone(&self) -> bool {
        self.is_nonnegative()
    }

    fn is_identity(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    fn coords(&self) -> Vec<i64> {
        self.0.clone()
    }
}

/// The index classes that occur as truncation ambient sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum IndexClass {
    /// `Z+ x Z+`.
    N,
    /// `{(m, n) in Z x Z : m + n >= 0}`.
    NPlus,
    /// `Z x Z`, the two-sided problem.
    ZZ,
    /// `Z^k`; planar indices are identified with `Z^2`.
    Zk(usize),
    /// `{(n, n) : n in Z+}`.
    Diagonal,
}

impl IndexClass {
    pub fn contains(&self, idx: &MonomialIndex) -> bool {
        match self {
            IndexClass::N => idx.m >= 0 && idx.n >= 0,
            IndexClass::NPlus => idx.m + idx.n >= 0,
            IndexClass::ZZ => true,
            IndexClass::Zk(k) => *k == 2,
            IndexClass::Diagonal => idx.m == idx.n && idx.m >= 0,
        }
    }

    pub fn contains_multi(&self, idx: &ZkIndex) -> bool {
        match self {
            IndexClass::Zk(k) => idx.dim() == *k,
            _ if idx.dim() == 2 => self.contains(&MonomialIndex::new(idx.0[0], idx.0[1])),
            _ => false,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            IndexClass::N => "N",
            IndexClass::NPlus => "NPlus",
            IndexClass::ZZ => "ZZ",
            IndexClass::Zk(_) => "Zk",
            IndexClass::Diagonal => "Diagonal",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_inclusions() {
        let samples: Vec<MonomialIndex> = (-3..=3).flat_map(|m| (-3..=3).map(move |n| MonomialIndex::new(m, n))).collect();
        for s in &samples {
            if IndexClass::Diagonal.contains(s) {
                assert!(IndexClass::N.contains(s));
            }
            if IndexClass::N.contains(s) {
                assert!(IndexClass::NPlus.contains(s));
            }
            if IndexClass::NPlus.contains(s) {
                assert!(IndexClass::ZZ.contains(s));
            }
        }
        assert!(IndexClass::NPlus.contains(&MonomialIndex::new(2, -1)));
        assert!(!IndexClass::NPlus.contains(&MonomialIndex::new(-1, 0)));
    }

    #[test]
    fn star_is_an_involution() {
        let a = MonomialIndex::new(3, -1);
        assert_eq!(a.star().star(), a);
        let b = ZkIndex(vec![1, -2, 0]);
        assert_eq!(b.star().star(), b);
        assert_eq!(b.minus(&b), ZkIndex::zero(3));
    }

    #[test]
    fn serde_shape() {
        let s = serde_json::to_string(&MonomialIndex::new(2, -1)).unwrap();
        assert_eq!(s, "[2,-1]");
        let z: ZkIndex = serde_json::from_str("[1,0,-3]").unwrap();
        assert_eq!(z, ZkIndex(vec![1, 0, -3]));
    }
}
