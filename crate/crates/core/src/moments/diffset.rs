use std::collections::BTreeSet;

use serde::Serialize;

use crate::algebra::{StarIndex, ZkIndex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum DiffSetResult {
    Found { lambda: Vec<ZkIndex> },
    NotFound { bound: i64 },
}

/// `Λ - Λ` as a set.
pub fn difference_set(lambda: &[ZkIndex]) -> BTreeSet<ZkIndex> {
    lambda.iter().flat_map(|a| lambda.iter().map(move |b| a.minus(b))).collect()
}

fn box_points(dim: usize, bound: i64) -> Vec<ZkIndex> {
    let mut points = vec![Vec::new()];
    for _ in 0..dim {
        points = points.into_iter().flat_map(|p| (0..=bound).map(move |x| [p.clone(), vec![x]].concat())).collect();
    }
    points.into_iter().map(ZkIndex).collect()
}

struct Search<'a> {
    target: &'a BTreeSet<ZkIndex>,
    candidates: Vec<ZkIndex>,
    max_size: usize,
    chosen: Vec<ZkIndex>,
}

impl Search<'_> {
    fn run(&mut self, start: usize) -> bool {
        if difference_set(&self.chosen) == *self.target {
            return true;
        }
        if self.chosen.len() >= self.max_size {
            return false;
        }
        for c in start..self.candidates.len() {
            let p = &self.candidates[c];
            if self.chosen.iter().all(|q| self.target.contains(&p.minus(q))) {
                self.chosen.push(p.clone());
                if self.run(c + 1) {
                    return true;
                }
                self.chosen.pop();
            }
        }
        false
    }
}

/// Exhaustive search for `Λ ⊆ [0, B]^k` with `Λ - Λ = T`.
///
/// Any finite `Λ` can be translated so that each coordinate has minimum
/// zero, so for large enough `B` a `NotFound` answer is conclusive.
pub fn is_difference_set(target: &[ZkIndex], bound: i64) -> DiffSetResult {
    let not_found = DiffSetResult::NotFound { bound };
    let Some(dim) = target.first().map(ZkIndex::dim) else {
        return not_found;
    };
    let set: BTreeSet<ZkIndex> = target.iter().cloned().collect();
    if bound < 0 || set.iter().any(|t| t.dim() != dim || !set.contains(&t.star())) || !set.contains(&ZkIndex::zero(dim)) {
        return not_found;
    }
    let mut search = Search { target: &set, candidates: box_points(dim, bound), max_size: set.len(), chosen: Vec::new() };
    if search.run(0) {
        DiffSetResult::Found { lambda: search.chosen }
    } else {
        not_found
    }
}

/// Staircase in `Z^2`: from the origin, runs of length `j` to the right and
/// then up, for `j = 1..=d`, passing through the diagonal points
/// `(j(j+1)/2, j(j+1)/2)`.
pub fn quadrant_lambda(depth: i64) -> Vec<ZkIndex> {
    let (mut x, mut y) = (0, 0);
    let mut points = vec![ZkIndex(vec![0, 0])];
    for run in 1..=depth.max(0) {
        for _ in 0..run {
            x += 1;
            points.push(ZkIndex(vec![x, y]));
        }
        for _ in 0..run {
            y += 1;
            points.push(ZkIndex(vec![x, y]));
        }
    }
    points
}

/// `(Z+^2 ∪ Z-^2) ∩ [-d, d]^2`.
pub fn quadrant_target(depth: i64) -> BTreeSet<ZkIndex> {
    (-depth..=depth)
        .flat_map(|a| (-depth..=depth).map(move |b| ZkIndex(vec![a, b])))
        .filter(|p| p.is_nonnegative() || p.is_nonpositive())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(values: &[i64]) -> Vec<ZkIndex> {
        values.iter().map(|&v| ZkIndex(vec![v])).collect()
    }

    fn in_box(set: &BTreeSet<ZkIndex>, depth: i64) -> BTreeSet<ZkIndex> {
        set.iter().filter(|p| p.0.iter().all(|c| c.abs() <= depth)).cloned().collect()
    }

    #[test]
    fn one_dimensional_examples() {
        assert_eq!(is_difference_set(&line(&[0, 1, -1]), 3), DiffSetResult::Found { lambda: line(&[0, 1]) });
        let t = line(&[0, 1, -1, 2, -2, 3, -3]);
        match is_difference_set(&t, 3) {
            DiffSetResult::Found { lambda } => {
                assert_eq!(difference_set(&lambda), t.iter().cloned().collect());
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(is_difference_set(&line(&[0, 2, -2, 3, -3]), 3), DiffSetResult::NotFound { bound: 3 });
        assert_eq!(is_difference_set(&line(&[0, 1]), 3), DiffSetResult::NotFound { bound: 3 });
    }

    #[test]
    fn two_dimensional_search() {
        let t: Vec<ZkIndex> = [[0, 0], [1, 0], [-1, 0], [0, 1], [0, -1], [1, -1], [-1, 1]]
            .iter()
            .map(|p| ZkIndex(p.to_vec()))
            .collect();
        match is_difference_set(&t, 2) {
            DiffSetResult::Found { lambda } => assert_eq!(difference_set(&lambda), t.iter().cloned().collect()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn staircase_covers_the_quadrants() {
        for d in 1..=6 {
            let lambda = quadrant_lambda(d);
            assert_eq!(in_box(&difference_set(&lambda), d), quadrant_target(d), "depth {d}");
        }
        let lambda = quadrant_lambda(3);
        assert!(lambda.contains(&ZkIndex(vec![3, 3])));
        assert!(lambda.contains(&ZkIndex(vec![1, 1])));
        assert!(!difference_set(&lambda).contains(&ZkIndex(vec![1, -1])));
    }
}
