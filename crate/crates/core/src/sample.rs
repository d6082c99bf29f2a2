//! Random point sets for tests and benchmarks.

use rand::seq::IndexedRandom;
use rand::Rng;

use crate::field::Field;
use crate::points::PointSet;

/// Draw `count` points whose coordinates come uniformly from `pool`, then
/// drop duplicates. Small pools give many shared projections and therefore
/// nontrivial decompositions.
pub fn random_points<F: Field, R: Rng + ?Sized>(
    k: &F,
    rng: &mut R,
    n: usize,
    count: usize,
    pool: &[i64],
) -> PointSet<F::Elem> {
    assert!(!pool.is_empty(), "coordinate pool must be nonempty");
    let points = (0..count).map(|_| {
        (0..n)
            .map(|_| k.from_i64(*pool.choose(rng).expect("nonempty pool")))
            .collect()
    });
    PointSet::from_iter_dedup(n, points)
}

/// `size` distinct integers drawn from `lo..=hi`, sorted.
pub fn random_pool<R: Rng + ?Sized>(rng: &mut R, size: usize, lo: i64, hi: i64) -> Vec<i64> {
    let span = (hi - lo + 1) as usize;
    let mut pool: Vec<i64> = rand::seq::index::sample(rng, span, size.min(span))
        .into_iter()
        .map(|i| lo + i as i64)
        .collect();
    pool.sort_unstable();
    pool
}
