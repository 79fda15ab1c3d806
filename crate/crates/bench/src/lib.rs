//! Shared inputs for the benchmarks.

use hfk_core::knot_db;
use hfk_core::{CompanionData, IntegerMatrix};

/// Companion data of every bundled knot, in key order.
pub fn bundled_companions() -> Vec<CompanionData> {
    knot_db::bundled_keys()
        .iter()
        .map(|key| knot_db::load(key).and_then(|r| r.companion()).expect("bundled knot"))
        .collect()
}

/// Dense square matrix with entries in `[-9, 9]` from a linear congruential
/// stream, so runs are comparable across machines.
pub fn dense_matrix(n: usize, seed: u64) -> IntegerMatrix {
    let mut state = seed;
    let data = (0..n * n)
        .map(|_| {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((state >> 33) % 19) as i64 - 9
        })
        .collect();
    IntegerMatrix::from_vec(n, n, data).expect("square data")
}
