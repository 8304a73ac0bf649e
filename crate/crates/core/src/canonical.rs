//! Jordan specifications and the Jordan/Weyr canonical matrices.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::{CMatrix, QMatrix};
use crate::partition::{PartitionData, WeyrStructure};
use crate::scalar::{int, GaussianRational};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct JordanBlock {
    pub eigenvalue: GaussianRational,
    pub size: usize,
}

impl JordanBlock {
    pub fn new(eigenvalue: GaussianRational, size: usize) -> Self {
        JordanBlock { eigenvalue, size }
    }
}

impl fmt::Display for JordanBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "J({},{})", self.eigenvalue, self.size)
    }
}

/// Multiset of Jordan blocks describing a conjugacy class in `GL(n, ℍ)`.
///
/// Eigenvalues are stored as class representatives (non-negative imaginary
/// part) and blocks are kept sorted by `(re, im, size descending)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct JordanSpec {
    blocks: Vec<JordanBlock>,
}

impl JordanSpec {
    pub fn new(blocks: Vec<JordanBlock>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::Spec("a Jordan spec needs at least one block".into()));
        }
        let mut blocks: Vec<JordanBlock> = blocks
            .into_iter()
            .map(|b| {
                if b.size == 0 {
                    Err(Error::Spec("Jordan blocks must have positive size".into()))
                } else if b.eigenvalue.is_zero() {
                    Err(Error::Spec("zero eigenvalue: the matrix is not invertible".into()))
                } else {
                    Ok(JordanBlock::new(b.eigenvalue.class_rep(), b.size))
                }
            })
            .collect::<Result<_>>()?;
        blocks.sort_by(|x, y| {
            (&x.eigenvalue.re, &x.eigenvalue.im, std::cmp::Reverse(x.size)).cmp(&(
                &y.eigenvalue.re,
                &y.eigenvalue.im,
                std::cmp::Reverse(y.size),
            ))
        });
        Ok(JordanSpec { blocks })
    }

    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, usize)>) -> Result<Self> {
        let blocks = pairs
            .into_iter()
            .map(|(z, size)| Ok(JordanBlock::new(z.parse()?, size)))
            .collect::<Result<_>>()?;
        JordanSpec::new(blocks)
    }

    pub fn blocks(&self) -> &[JordanBlock] {
        &self.blocks
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.size).sum()
    }

    /// Starting row of each block in [`JordanSpec::complex_matrix`].
    pub fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.blocks
            .iter()
            .map(|b| {
                let start = acc;
                acc += b.size;
                start
            })
            .collect()
    }

    pub fn complex_matrix(&self) -> CMatrix {
        let blocks: Vec<CMatrix> = self
            .blocks
            .iter()
            .map(|b| jordan_block(&b.eigenvalue, b.size))
            .collect();
        CMatrix::direct_sum(&blocks)
    }

    pub fn matrix(&self) -> QMatrix {
        self.complex_matrix().to_quaternion()
    }

    /// Distinct eigenvalue classes with their Jordan partitions.
    pub fn classes(&self) -> Vec<(GaussianRational, PartitionData)> {
        let mut by_class: BTreeMap<&GaussianRational, Vec<usize>> = BTreeMap::new();
        for b in &self.blocks {
            by_class.entry(&b.eigenvalue).or_default().push(b.size);
        }
        by_class
            .into_iter()
            .map(|(z, sizes)| {
                (
                    z.clone(),
                    PartitionData::new(sizes).expect("block sizes are positive"),
                )
            })
            .collect()
    }

    /// Reads the spec off a complex matrix that is already in Jordan form
    /// (upper bidiagonal, superdiagonal entries in {0, 1}, constant diagonal
    /// along each block).
    pub fn from_jordan_matrix(a: &QMatrix) -> Option<JordanSpec> {
        let c = a.to_complex()?;
        if !c.is_square() || c.rows() == 0 {
            return None;
        }
        let n = c.rows();
        for r in 0..n {
            for col in 0..n {
                let ok = col == r
                    || (col == r + 1 && (c[(r, col)].is_zero() || c[(r, col)].is_one()))
                    || c[(r, col)].is_zero();
                if !ok {
                    return None;
                }
            }
        }
        let mut blocks = Vec::new();
        let mut start = 0;
        for r in 0..n {
            let ends = r + 1 == n || c[(r, r + 1)].is_zero();
            if !ends && c[(r, r)] != c[(r + 1, r + 1)] {
                return None;
            }
            if ends {
                blocks.push(JordanBlock::new(c[(start, start)].clone(), r + 1 - start));
                start = r + 1;
            }
        }
        JordanSpec::new(blocks).ok()
    }
}

impl fmt::Display for JordanSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self
            .blocks
            .iter()
            .map(|b| format!("({},{})", b.eigenvalue, b.size))
            .collect();
        write!(f, "[{}]", items.join(","))
    }
}

impl FromStr for JordanSpec {
    type Err = Error;

    /// `"[(i,5)]"`, `"[(2,1),(1/2,1)]"`, `"[(3/5+4/5·i,1)]"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("invalid Jordan spec {s:?}: {why}"));
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| bad("expected [(λ,size),...]"))?;
        let mut blocks = Vec::new();
        let mut rest = inner.trim();
        while !rest.is_empty() {
            let body_start = rest.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
            let close = body_start.find(')').ok_or_else(|| bad("unclosed '('"))?;
            let body = &body_start[..close];
            let (z, size) = body.rsplit_once(',').ok_or_else(|| bad("expected (λ,size)"))?;
            let size = size
                .trim()
                .parse::<usize>()
                .map_err(|_| bad("block size must be a positive integer"))?;
            blocks.push(JordanBlock::new(z.parse()?, size));
            rest = body_start[close + 1..].trim_start();
            rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
        }
        JordanSpec::new(blocks)
    }
}

/// `J(λ, n)`: `λ` on the diagonal, ones on the superdiagonal.
pub fn jordan_block(lambda: &GaussianRational, n: usize) -> CMatrix {
    CMatrix::from_fn(n, n, |r, c| {
        if r == c {
            lambda.clone()
        } else if c == r + 1 {
            GaussianRational::one()
        } else {
            GaussianRational::zero()
        }
    })
}

/// Basic Weyr matrix: `λ I_{n_i}` on the diagonal blocks, `[I; 0]` of shape
/// `n_i × n_{i+1}` on the first block superdiagonal.
pub fn basic_weyr_matrix(lambda: &GaussianRational, w: &WeyrStructure) -> CMatrix {
    let n = w.total();
    let offsets = w.offsets();
    let mut out = CMatrix::scalar(n, lambda);
    for i in 0..w.sizes().len().saturating_sub(1) {
        let next = w.sizes()[i + 1];
        for t in 0..next {
            out[(offsets[i] + t, offsets[i + 1] + t)] = GaussianRational::one();
        }
    }
    out
}

/// Basis permutation taking the Jordan layout of a single eigenvalue class
/// (chains longest first, each chain bottom-up) to the level-major Weyr
/// layout of the conjugate partition. `perm[jordan_index] = weyr_index`.
pub fn jordan_to_weyr_order(p: &PartitionData) -> Vec<usize> {
    let w = p.weyr_structure();
    let level_offsets = w.offsets();
    let mut perm = Vec::with_capacity(p.total());
    for (chain, &len) in p.parts().iter().enumerate() {
        // Chains are sorted longest first, so chain `chain` is slot `chain`
        // on every level it reaches.
        for level in 0..len {
            perm.push(level_offsets[level] + chain);
        }
    }
    perm
}

/// Permutation matrix `P` with `P · J · P⁻¹ = W`, where `J` is the Jordan
/// form for the partition `p` and `W` the basic Weyr matrix of its conjugate.
pub fn jordan_weyr_permutation(p: &PartitionData) -> CMatrix {
    let perm = jordan_to_weyr_order(p);
    let n = perm.len();
    CMatrix::from_fn(n, n, |r, c| {
        if perm[c] == r {
            GaussianRational::one()
        } else {
            GaussianRational::zero()
        }
    })
}

/// Jordan form of one eigenvalue class, blocks longest first.
pub fn single_class_jordan(lambda: &GaussianRational, p: &PartitionData) -> CMatrix {
    let blocks: Vec<CMatrix> = p.parts().iter().map(|&s| jordan_block(lambda, s)).collect();
    CMatrix::direct_sum(&blocks)
}

/// Pseudo-random member of the centralizer of any basic Weyr matrix with
/// structure `w`. Entries are small Gaussian integers drawn from a ChaCha
/// stream seeded with `seed`.
///
/// The matrix is block upper triangular with
/// `K[i][j] = [[K[i+1][j+1], *], [0, *]]` for `i <= j < r`; the last block
/// column and the bottom-right block are unconstrained.
pub fn weyr_centralizer_sample(w: &WeyrStructure, seed: u64) -> CMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = || {
        GaussianRational::new(
            int(rng.random_range(-4..=4)),
            int(rng.random_range(-4..=4)),
        )
    };
    let sizes = w.sizes();
    let r = sizes.len();
    let offsets = w.offsets();
    let n = w.total();
    let mut k = CMatrix::zeros(n, n);
    for i in (0..r).rev() {
        for j in i..r {
            let (ni, nj) = (sizes[i], sizes[j]);
            let (ri, cj) = (offsets[i], offsets[j]);
            if j + 1 == r {
                for a in 0..ni {
                    for b in 0..nj {
                        k[(ri + a, cj + b)] = draw();
                    }
                }
                continue;
            }
            let (ni1, nj1) = (sizes[i + 1], sizes[j + 1]);
            let (ri1, cj1) = (offsets[i + 1], offsets[j + 1]);
            for a in 0..ni {
                for b in 0..nj {
                    k[(ri + a, cj + b)] = if a < ni1 && b < nj1 {
                        k[(ri1 + a, cj1 + b)].clone()
                    } else if a >= ni1 && b < nj1 {
                        GaussianRational::zero()
                    } else {
                        draw()
                    };
                }
            }
        }
    }
    k
}
