//! Deterministic reductions.
//!
//! Floating-point sums depend on bracketing, so the bracketing is pinned: a
//! balanced binary tree split at the midpoint of the index range, with leaf
//! runs folded left-to-right. The tree shape depends only on the length, so
//! the result is bit-identical whether the halves run on one thread or many.
//! The `parallel` feature routes the two halves through `rayon::join`; the
//! sequential fallback recurses in the same order.

use crate::numerics::ReductionOrder;

/// Below this many leaves a node is folded sequentially instead of split.
const LEAF_RUN: usize = 64;

/// Reduce `map(i)` over `0..len` under the given ordering policy.
///
/// `Sequential` is a plain left fold on one thread. `FixedTree` is the
/// deterministic balanced reduction described at module level.
pub fn map_reduce<T, I, M, C>(len: usize, order: ReductionOrder, identity: &I, map: &M, combine: &C) -> T
where
    T: Send,
    I: Fn() -> T + Sync,
    M: Fn(usize) -> T + Sync,
    C: Fn(T, T) -> T + Sync,
{
    match order {
        ReductionOrder::Sequential => leaf(0, len, identity, map, combine),
        ReductionOrder::FixedTree => tree(0, len, identity, map, combine),
    }
}

fn leaf<T, I, M, C>(start: usize, end: usize, identity: &I, map: &M, combine: &C) -> T
where
    I: Fn() -> T,
    M: Fn(usize) -> T,
    C: Fn(T, T) -> T,
{
    let mut acc = identity();
    for i in start..end {
        acc = combine(acc, map(i));
    }
    acc
}

#[cfg(feature = "parallel")]
fn tree<T, I, M, C>(start: usize, end: usize, identity: &I, map: &M, combine: &C) -> T
where
    T: Send,
    I: Fn() -> T + Sync,
    M: Fn(usize) -> T + Sync,
    C: Fn(T, T) -> T + Sync,
{
    if end - start <= LEAF_RUN {
        return leaf(start, end, identity, map, combine);
    }
    let mid = start + (end - start) / 2;
    let (left, right) = rayon::join(
        || tree(start, mid, identity, map, combine),
        || tree(mid, end, identity, map, combine),
    );
    combine(left, right)
}

#[cfg(not(feature = "parallel"))]
fn tree<T, I, M, C>(start: usize, end: usize, identity: &I, map: &M, combine: &C) -> T
where
    T: Send,
    I: Fn() -> T + Sync,
    M: Fn(usize) -> T + Sync,
    C: Fn(T, T) -> T + Sync,
{
    if end - start <= LEAF_RUN {
        return leaf(start, end, identity, map, combine);
    }
    let mid = start + (end - start) / 2;
    let left = tree(start, mid, identity, map, combine);
    let right = tree(mid, end, identity, map, combine);
    combine(left, right)
}
