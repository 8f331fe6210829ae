//! Fixtures shared by the criterion benchmarks in `benches/`.

use awbi_core::IndexSet;

/// Generator sets of growing size and interval count at arity `n`.
pub fn build_sets(n: usize) -> Vec<IndexSet> {
    let candidates: [&[usize]; 4] = [&[1, 2], &[1, 3], &[1, 2, 4], &[1, 3, 5, 7]];
    candidates
        .iter()
        .filter(|e| e.iter().all(|&x| x <= n))
        .map(|e| IndexSet::new(n, e).expect("fits"))
        .collect()
}

/// Pairs satisfying the standard relation, used for relation-check timing.
pub fn star_pairs() -> Vec<(IndexSet, IndexSet)> {
    let s = |n: usize, e: &[usize]| IndexSet::new(n, e).expect("fits");
    vec![
        (s(3, &[1, 2]), s(3, &[2, 3])),
        (s(4, &[1, 2, 4]), s(4, &[2, 3])),
        (s(5, &[1, 2, 4, 5]), s(5, &[2, 4])),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_fit() {
        assert_eq!(build_sets(7).len(), 4);
        assert_eq!(build_sets(3).len(), 2);
        assert!(star_pairs().iter().all(|(a, b)| a.n() == b.n()));
    }
}
