//! Integer partitions, kept in two synchronized notations:
//!
//! - parts `(n1, n2, ..., nr)` with `n1 >= n2 >= ... >= nr >= 1`;
//! - exponent form `[d1^t1, ..., ds^ts]` with `d1 > ... > ds` and `ti >= 1`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PartitionData {
    parts: Vec<usize>,
    exponents: Vec<(usize, usize)>,
}

impl PartitionData {
    /// Accepts the parts in any order; zero parts are rejected.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Parse("a partition needs at least one part".into()));
        }
        if parts.contains(&0) {
            return Err(Error::Parse("partition parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let exponents = exponent_form(&parts);
        Ok(PartitionData { parts, exponents })
    }

    /// Builds from `[(d, t_d), ...]`; the `d` must be distinct and all `t_d >= 1`.
    pub fn from_exponents(exponents: &[(usize, usize)]) -> Result<Self> {
        let mut ds: Vec<usize> = exponents.iter().map(|&(d, _)| d).collect();
        ds.sort_unstable();
        ds.dedup();
        if ds.len() != exponents.len() {
            return Err(Error::Parse("repeated part in exponent form".into()));
        }
        if exponents.iter().any(|&(_, t)| t == 0) {
            return Err(Error::Parse("exponents must be at least 1".into()));
        }
        let parts = exponents
            .iter()
            .flat_map(|&(d, t)| std::iter::repeat_n(d, t))
            .collect();
        PartitionData::new(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `(d_i, t_{d_i})` with `d_i` strictly decreasing.
    pub fn exponents(&self) -> &[(usize, usize)] {
        &self.exponents
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn largest(&self) -> usize {
        self.parts[0]
    }

    /// Conjugate partition, computed by the counting rule
    /// `m_j = #{i : n_i >= j}` and cross-checked against the closed form in
    /// exponent notation.
    pub fn conjugate(&self) -> PartitionData {
        let counted = conjugate_by_counting(&self.parts);
        let closed = conjugate_by_exponents(&self.exponents);
        assert_eq!(
            counted, closed,
            "conjugate partition routes disagree for {self}"
        );
        PartitionData::new(counted).expect("conjugate of a valid partition is valid")
    }

    pub fn weyr_structure(&self) -> WeyrStructure {
        WeyrStructure {
            sizes: self.conjugate().parts,
        }
    }

    pub fn exponent_string(&self) -> String {
        let items: Vec<String> = self
            .exponents
            .iter()
            .map(|(d, t)| format!("{d}^{t}"))
            .collect();
        format!("[{}]", items.join(","))
    }
}

fn exponent_form(sorted_parts: &[usize]) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = Vec::new();
    for &p in sorted_parts {
        match out.last_mut() {
            Some((d, t)) if *d == p => *t += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

fn conjugate_by_counting(parts: &[usize]) -> Vec<usize> {
    let largest = parts.iter().copied().max().unwrap_or(0);
    (1..=largest)
        .map(|j| parts.iter().filter(|&&p| p >= j).count())
        .collect()
}

/// For `[d1^t1, ..., ds^ts]` the conjugate is
/// `[(t1+...+ts)^ds, (t1+...+t_{s-1})^(d_{s-1}-ds), ..., t1^(d1-d2)]`.
fn conjugate_by_exponents(exponents: &[(usize, usize)]) -> Vec<usize> {
    let s = exponents.len();
    let mut out = Vec::new();
    // Walk from the smallest part upward; the running count of parts >= d_k
    // is t_1 + ... + t_k.
    for k in (0..s).rev() {
        let count: usize = exponents[..=k].iter().map(|&(_, t)| t).sum();
        let next_d = if k + 1 < s { exponents[k + 1].0 } else { 0 };
        let reps = exponents[k].0 - next_d;
        out.extend(std::iter::repeat_n(count, reps));
    }
    out
}

impl fmt::Display for PartitionData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.parts)
    }
}

fn write_tuple(f: &mut fmt::Formatter<'_>, xs: &[usize]) -> fmt::Result {
    let items: Vec<String> = xs.iter().map(ToString::to_string).collect();
    write!(f, "({})", items.join(","))
}

impl FromStr for PartitionData {
    type Err = Error;

    /// `"3,2,2"`, `"(3,2,2)"` or `"[3^2,1^1]"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid partition {s:?}"));
        if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let exps = inner
                .split(',')
                .map(|item| {
                    let (d, t) = item.trim().split_once('^').unwrap_or((item.trim(), "1"));
                    Ok((
                        d.trim().parse::<usize>().map_err(|_| bad())?,
                        t.trim().parse::<usize>().map_err(|_| bad())?,
                    ))
                })
                .collect::<Result<Vec<_>>>()?;
            return PartitionData::from_exponents(&exps);
        }
        let inner = s
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(s);
        let parts = inner
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        PartitionData::new(parts)
    }
}

/// Diagonal block sizes `(n1, ..., nr)` of a basic Weyr matrix.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WeyrStructure {
    sizes: Vec<usize>,
}

impl WeyrStructure {
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() || sizes.contains(&0) {
            return Err(Error::Parse("Weyr structure needs positive sizes".into()));
        }
        if sizes.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse("Weyr structure must be non-increasing".into()));
        }
        Ok(WeyrStructure { sizes })
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn total(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// Offsets of each diagonal block.
    pub fn offsets(&self) -> Vec<usize> {
        self.sizes
            .iter()
            .scan(0, |acc, &s| {
                let start = *acc;
                *acc += s;
                Some(start)
            })
            .collect()
    }

    /// Jordan block sizes, i.e. the conjugate partition.
    pub fn jordan_partition(&self) -> PartitionData {
        PartitionData::new(self.sizes.clone())
            .expect("Weyr sizes form a partition")
            .conjugate()
    }
}

impl fmt::Display for WeyrStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.sizes)
    }
}

/// All partitions of `n`, in reverse lexicographic order.
pub fn all_partitions(n: usize) -> Vec<PartitionData> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut raw = Vec::new();
    go(n, n, &mut Vec::new(), &mut raw);
    raw.into_iter()
        .map(|p| PartitionData::new(p).expect("generated partitions are valid"))
        .collect()
}
