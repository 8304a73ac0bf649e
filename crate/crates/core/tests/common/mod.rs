//! Shared fixtures for the integration tests.
#![allow(dead_code)]

use qrev_core::{GaussianRational, JordanBlock, JordanSpec};

/// Eigenvalue pool of the exhaustive sweeps.
pub const POOL: [&str; 9] = ["1", "-1", "2", "1/2", "-2", "-1/2", "i", "3/5+4/5i", "1+i"];

pub fn pool() -> Vec<GaussianRational> {
    POOL.iter().map(|s| s.parse().unwrap()).collect()
}

/// Every Jordan spec with eigenvalues from `values` and total size in
/// `1..=max_n`, each multiset listed once.
pub fn all_specs(values: &[GaussianRational], max_n: usize) -> Vec<JordanSpec> {
    // Items (value index, size) in a fixed order; choose a non-decreasing
    // sequence of items so each multiset appears exactly once.
    let items: Vec<(usize, usize)> = (0..values.len())
        .flat_map(|v| (1..=max_n).map(move |s| (v, s)))
        .collect();
    let mut out = Vec::new();
    let mut stack = Vec::new();
    fn go(
        items: &[(usize, usize)],
        start: usize,
        room: usize,
        stack: &mut Vec<usize>,
        values: &[GaussianRational],
        out: &mut Vec<JordanSpec>,
    ) {
        if !stack.is_empty() {
            let blocks = stack
                .iter()
                .map(|&k| JordanBlock::new(values[items[k].0].clone(), items[k].1))
                .collect();
            out.push(JordanSpec::new(blocks).unwrap());
        }
        for k in start..items.len() {
            if items[k].1 <= room {
                stack.push(k);
                go(items, k, room - items[k].1, stack, values, out);
                stack.pop();
            }
        }
    }
    go(&items, 0, max_n, &mut stack, values, &mut out);
    out
}

pub fn c(s: &str) -> GaussianRational {
    s.parse().unwrap()
}
