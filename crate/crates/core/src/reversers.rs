//! Explicit reversing matrices.
//!
//! Everything here is built over the Gaussian rationals (plus the quaternion
//! `j`), and every returned [`Certificate`] has been checked exactly: the
//! residual `g A - T(A) g` is zero, the claimed flavor holds, and
//! `det Φ(g) = 1`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};

use crate::canonical::{jordan_block, JordanSpec};
use crate::classify::{self, BlockGroup};
use crate::error::{Error, Result};
use crate::matrix::{
    complex_det, conjugacy_residual, is_involution, is_skew_involution, qdet, CMatrix, QMatrix,
};
use crate::partition::PartitionData;
use crate::scalar::{GaussianRational, Quaternion, Rational};

/// What `g A g⁻¹` should equal.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Target {
    Inverse,
    NegInverse,
}

impl Target {
    pub fn apply(self, a: &QMatrix) -> Result<QMatrix> {
        let inv = a.inverse()?;
        Ok(match self {
            Target::Inverse => inv,
            Target::NegInverse => inv.neg(),
        })
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Target::Inverse => "inverse",
            Target::NegInverse => "neg-inverse",
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The algebraic type claimed for a conjugator `g`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Flavor {
    /// `g² = I`
    Involution,
    /// `g² = -I`
    SkewInvolution,
    /// no constraint beyond invertibility
    General,
}

impl Flavor {
    pub fn as_str(self) -> &'static str {
        match self {
            Flavor::Involution => "involution",
            Flavor::SkewInvolution => "skew-involution",
            Flavor::General => "general",
        }
    }

    pub fn holds_for(self, g: &QMatrix) -> bool {
        match self {
            Flavor::Involution => is_involution(g),
            Flavor::SkewInvolution => is_skew_involution(g),
            Flavor::General => qdet(g).is_ok_and(|d| !d.is_zero()),
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Flavor requested from [`assemble_reverser`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum FlavorRequest {
    Any,
    Involution,
    SkewInvolution,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Checks {
    pub residual_zero: bool,
    pub flavor_verified: bool,
    pub det_one: bool,
}

impl Checks {
    pub fn all_pass(&self) -> bool {
        self.residual_zero && self.flavor_verified && self.det_one
    }

    /// Recomputes every check from scratch.
    pub fn compute(a: &QMatrix, g: &QMatrix, target: Target, flavor: Flavor) -> Result<Checks> {
        if !a.is_square() || g.rows() != a.rows() || g.cols() != a.cols() {
            return Err(Error::Shape(format!(
                "certificate is {}x{} but the matrix is {}x{}",
                g.rows(),
                g.cols(),
                a.rows(),
                a.cols()
            )));
        }
        let det = qdet(g)?;
        let residual_zero = if det.is_zero() {
            false
        } else {
            conjugacy_residual(g, a, &target.apply(a)?)?.is_zero()
        };
        Ok(Checks {
            residual_zero,
            flavor_verified: flavor.holds_for(g),
            det_one: det.is_one(),
        })
    }
}

/// A conjugator `g` with `g A g⁻¹ = A⁻¹` (or `-A⁻¹`) for some `A`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Certificate {
    pub g: QMatrix,
    pub target: Target,
    pub flavor: Flavor,
    pub checks: Checks,
}

impl Certificate {
    /// Builds a certificate for `a`, failing unless every check passes.
    pub fn new(a: &QMatrix, g: QMatrix, target: Target, flavor: Flavor) -> Result<Certificate> {
        let checks = Checks::compute(a, &g, target, flavor)?;
        if !checks.all_pass() {
            return Err(Error::Verification(format!(
                "constructed {flavor} for target {target} failed its checks: {checks:?}"
            )));
        }
        Ok(Certificate {
            g,
            target,
            flavor,
            checks,
        })
    }
}

fn unit_imag() -> GaussianRational {
    GaussianRational::i()
}

fn j_scalar() -> Quaternion {
    Quaternion::j()
}

/// `Ω(λ, n)`: upper triangular, `x[n][n] = 1`, zero last column above the
/// diagonal, and `x[i][j] = -λ⁻¹ x[i+1][j] - λ⁻² x[i+1][j+1]` for
/// `i <= j < n` (1-based), filled from the bottom row up.
pub fn omega(lambda: &GaussianRational, n: usize) -> Result<CMatrix> {
    if n == 0 {
        return Err(Error::Domain("Ω needs n >= 1".into()));
    }
    let inv = lambda.inv()?;
    let neg_inv = -&inv;
    let neg_inv_sq = -(&inv * &inv);
    let mut x = CMatrix::zeros(n, n);
    x[(n - 1, n - 1)] = GaussianRational::one();
    for i in (0..n - 1).rev() {
        for j in i..n - 1 {
            x[(i, j)] = &(&neg_inv * &x[(i + 1, j)]) + &(&neg_inv_sq * &x[(i + 1, j + 1)]);
        }
    }
    Ok(x)
}

fn signed(sign_exp: usize, z: GaussianRational) -> GaussianRational {
    if sign_exp % 2 == 0 {
        z
    } else {
        -z
    }
}

fn binom(n: usize, k: usize) -> Rational {
    if k > n {
        return Rational::zero();
    }
    Rational::from_integer(binomial(BigInt::from(n), BigInt::from(k)))
}

/// Reverser of the basic Weyr matrix of a unit-modulus class `α` whose
/// Jordan partition is `p`.
///
/// Blocked `d1 × d1` along the Weyr structure, block `(i, j)` is a scalar
/// multiple of `I_{n_i × n_j}`:
///
/// - `(-1)^(d1-i) α^(-2(d1-i))` on the diagonal;
/// - `(-1)^(d1-i) C(d1-i-1, j-i) α^(-(2 d1 - i - j))` for `i < j < d1`;
/// - zero in the last block column above the diagonal and below it.
///
/// `τ = Ω_W · j` then satisfies `τ W τ⁻¹ = W⁻¹` for `W` the basic Weyr matrix.
pub fn omega_weyr(alpha: &GaussianRational, p: &PartitionData) -> Result<CMatrix> {
    if !alpha.is_unit_modulus() {
        return Err(Error::Domain(format!("|{alpha}| must equal 1 exactly")));
    }
    let a_inv = alpha.inv()?;
    let w = p.weyr_structure();
    let sizes = w.sizes();
    let offsets = w.offsets();
    let d1 = sizes.len();
    let mut out = CMatrix::zeros(w.total(), w.total());
    for i in 1..=d1 {
        for j in i..=d1 {
            let coeff = if j == i {
                signed(d1 - i, a_inv.pow(2 * (d1 - i) as u32))
            } else if j == d1 {
                continue;
            } else {
                let c = binom(d1 - i - 1, j - i);
                signed(d1 - i, a_inv.pow((2 * d1 - i - j) as u32).scale(&c))
            };
            if coeff.is_zero() {
                continue;
            }
            // I_{n_i × n_j} with n_i >= n_j: identity on the top n_j rows.
            for t in 0..sizes[j - 1] {
                out[(offsets[i - 1] + t, offsets[j - 1] + t)] = coeff.clone();
            }
        }
    }
    Ok(out)
}

/// The four Jordan shapes with a tabulated reversing element.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum BlockShape {
    /// `J(μ, n)` with `μ = ±1`.
    Unipotent { mu: GaussianRational, n: usize },
    /// `J(λ, n) ⊕ J(λ⁻¹, n)` with `im λ >= 0`, `|λ| ≠ 1`.
    InversePair { lambda: GaussianRational, n: usize },
    /// `J(α, n)` with `im α > 0`, `|α| = 1`.
    UnitBlock { alpha: GaussianRational, n: usize },
    /// `J(α, n) ⊕ J(α, n)` with `im α > 0`, `|α| = 1`.
    UnitPair { alpha: GaussianRational, n: usize },
}

impl BlockShape {
    fn validate(&self) -> Result<()> {
        let ok = match self {
            BlockShape::Unipotent { mu, .. } => {
                mu.is_real() && mu.is_unit_modulus()
            }
            BlockShape::InversePair { lambda, .. } => {
                !lambda.is_zero() && !lambda.im.is_negative_rational() && !lambda.is_unit_modulus()
            }
            BlockShape::UnitBlock { alpha, .. } | BlockShape::UnitPair { alpha, .. } => {
                alpha.im.is_positive_rational() && alpha.is_unit_modulus()
            }
        };
        let n = self.n();
        if !ok || n == 0 {
            return Err(Error::Spec(format!("{self:?} is not a tabulated shape")));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        match self {
            BlockShape::Unipotent { n, .. }
            | BlockShape::InversePair { n, .. }
            | BlockShape::UnitBlock { n, .. }
            | BlockShape::UnitPair { n, .. } => *n,
        }
    }

    /// The matrix `A` of the row (with `λ⁻¹` taken literally, not as a
    /// class representative).
    pub fn matrix(&self) -> Result<QMatrix> {
        self.validate()?;
        let m = match self {
            BlockShape::Unipotent { mu, n } => jordan_block(mu, *n),
            BlockShape::InversePair { lambda, n } => {
                CMatrix::direct_sum(&[jordan_block(lambda, *n), jordan_block(&lambda.inv()?, *n)])
            }
            BlockShape::UnitBlock { alpha, n } => jordan_block(alpha, *n),
            BlockShape::UnitPair { alpha, n } => {
                CMatrix::direct_sum(&[jordan_block(alpha, *n), jordan_block(alpha, *n)])
            }
        };
        Ok(m.to_quaternion())
    }
}

trait SignExt {
    fn is_negative_rational(&self) -> bool;
    fn is_positive_rational(&self) -> bool;
}

impl SignExt for Rational {
    fn is_negative_rational(&self) -> bool {
        *self < Rational::zero()
    }
    fn is_positive_rational(&self) -> bool {
        *self > Rational::zero()
    }
}

/// The tabulated reversing element for `shape`, with `A` and its certificate.
pub fn block_reverser(shape: &BlockShape) -> Result<(QMatrix, Certificate)> {
    let a = shape.matrix()?;
    let (g, flavor) = match shape {
        BlockShape::Unipotent { mu, n } => (omega(mu, *n)?.to_quaternion(), Flavor::Involution),
        BlockShape::InversePair { lambda, n } => {
            let om = omega(lambda, *n)?;
            (
                CMatrix::antidiagonal(&om, &om.inverse()?).to_quaternion(),
                Flavor::Involution,
            )
        }
        BlockShape::UnitBlock { alpha, n } => (
            omega(alpha, *n)?.to_quaternion().scale_right(&j_scalar()),
            Flavor::SkewInvolution,
        ),
        BlockShape::UnitPair { alpha, n } => {
            let x = omega(alpha, *n)?.to_quaternion().scale_right(&j_scalar());
            (QMatrix::antidiagonal(&x, &x.inverse()?), Flavor::Involution)
        }
    };
    let cert = Certificate::new(&a, g, Target::Inverse, flavor)?;
    Ok((a, cert))
}

/// `g = Ω(α, n) · j`, a skew-involution reversing `J(α, n)` for `|α| = 1`.
pub fn skew_reverser_unit_block(alpha: &GaussianRational, n: usize) -> Result<Certificate> {
    if !alpha.is_unit_modulus() {
        return Err(Error::Domain(format!("|{alpha}| must equal 1 exactly")));
    }
    if alpha.im.is_negative_rational() {
        return Err(Error::Domain(format!("{alpha} must have non-negative imaginary part")));
    }
    let g = omega(alpha, n)?.to_quaternion().scale_right(&j_scalar());
    let a = jordan_block(alpha, n).to_quaternion();
    Certificate::new(&a, g, Target::Inverse, Flavor::SkewInvolution)
}

/// `g = [[0, Ω(λ,n)], [-Ω(λ⁻¹,n), 0]]`, a skew-involution reversing
/// `J(λ, n) ⊕ J(λ⁻¹, n)` for `|λ| ≠ 1`.
pub fn skew_reverser_pair(lambda: &GaussianRational, n: usize) -> Result<Certificate> {
    if lambda.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if lambda.is_unit_modulus() {
        return Err(Error::Spec(format!(
            "|{lambda}| = 1: use the single-block reverser instead"
        )));
    }
    let lambda_inv = lambda.inv()?;
    let g = CMatrix::antidiagonal(&omega(lambda, n)?, &omega(&lambda_inv, n)?.neg()).to_quaternion();
    let a = CMatrix::direct_sum(&[jordan_block(lambda, n), jordan_block(&lambda_inv, n)]).to_quaternion();
    Certificate::new(&a, g, Target::Inverse, Flavor::SkewInvolution)
}

/// `P` with `P M P⁻¹ = J(μ, n)`, built from the Jordan chain of `e_n`:
/// `P⁻¹` has columns `(M-μ)^{n-1} e_n, ..., (M-μ) e_n, e_n`.
pub fn single_block_conjugator(m: &CMatrix, mu: &GaussianRational) -> Result<CMatrix> {
    if !m.is_square() || m.rows() == 0 {
        return Err(Error::Shape("single_block_conjugator needs a nonempty square matrix".into()));
    }
    let n = m.rows();
    let nil = m.checked_sub(&CMatrix::scalar(n, mu))?;
    let mut chain = CMatrix::zeros(n, n);
    let mut v = CMatrix::zeros(n, 1);
    v[(n - 1, 0)] = GaussianRational::one();
    for col in (0..n).rev() {
        chain.set_block(0, col, &v);
        v = nil.checked_mul(&v)?;
    }
    let not_single = || Error::NotSingleBlock(mu.to_string());
    if !v.is_zero() || complex_det(&chain)?.is_zero() {
        return Err(not_single());
    }
    let p = chain.inverse()?;
    if (&(&p * m) * &chain) != jordan_block(mu, n) {
        return Err(not_single());
    }
    Ok(p)
}

/// Involution `g = [[0, Q], [Q⁻¹, 0]]` with `Q J(-λ⁻¹, n) Q⁻¹ = -J(λ, n)⁻¹`;
/// it conjugates `J(λ, n) ⊕ J(-λ⁻¹, n)` to minus its inverse.
pub fn neg_reverser_pair(lambda: &GaussianRational, n: usize) -> Result<Certificate> {
    let partner = -lambda.inv()?;
    if partner.class_rep() == lambda.class_rep() {
        return Err(Error::Spec(format!(
            "{lambda} lies in the class of i: use neg_reverser_iota"
        )));
    }
    let j_lambda = jordan_block(lambda, n);
    let target_block = j_lambda.inverse()?.neg();
    let p = single_block_conjugator(&target_block, &partner)?;
    let q = p.inverse()?;
    let g = CMatrix::antidiagonal(&q, &p).to_quaternion();
    let a = CMatrix::direct_sum(&[j_lambda, jordan_block(&partner, n)]).to_quaternion();
    Certificate::new(&a, g, Target::NegInverse, Flavor::Involution)
}

/// Upper triangular `x` with `x[n][n] = 1`, zero last column above the
/// diagonal, and `x[i][j] = i·x[i+1][j] - x[i+1][j+1]`.
pub fn iota_by_recurrence(n: usize) -> CMatrix {
    let mut x = CMatrix::zeros(n, n);
    x[(n - 1, n - 1)] = GaussianRational::one();
    let i = unit_imag();
    for r in (0..n - 1).rev() {
        for c in r..n - 1 {
            x[(r, c)] = &(&i * &x[(r + 1, c)]) - &x[(r + 1, c + 1)];
        }
    }
    x
}

/// Closed form `(-1)^(n-i) C(n-i-1, j-i) (-i)^(j-i)` (1-based, `j < n`),
/// `(-1)^(n-i)` on the diagonal.
pub fn iota_closed_form(n: usize) -> CMatrix {
    let minus_i = -unit_imag();
    CMatrix::from_fn(n, n, |r, c| {
        let (i, j) = (r + 1, c + 1);
        if j < i || (j == n && i != n) {
            GaussianRational::zero()
        } else if i == j {
            signed(n - i, GaussianRational::one())
        } else {
            signed(n - i, minus_i.pow((j - i) as u32).scale(&binom(n - i - 1, j - i)))
        }
    })
}

/// Involution `g` with `g J(i, n) g⁻¹ = -J(i, n)⁻¹`.
pub fn neg_reverser_iota(n: usize) -> Result<Certificate> {
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    let g = iota_by_recurrence(n);
    let closed = iota_closed_form(n);
    if g != closed {
        return Err(Error::Verification(format!(
            "recurrence and closed form disagree for n = {n}"
        )));
    }
    let a = jordan_block(&unit_imag(), n).to_quaternion();
    Certificate::new(&a, g.to_quaternion(), Target::NegInverse, Flavor::Involution)
}

/// `diag(I_n, j I_n)`: conjugating by it replaces the second block by its
/// entrywise complex conjugate.
fn conj_second_half(n: usize) -> QMatrix {
    let mut d = QMatrix::identity(2 * n);
    for t in n..2 * n {
        d[(t, t)] = j_scalar();
    }
    d
}

/// Local conjugator for one group of blocks, acting on the direct sum of the
/// group's blocks in the listed order.
fn local_reverser(
    spec: &JordanSpec,
    group: &BlockGroup,
    target: Target,
    flavor: Flavor,
) -> Result<QMatrix> {
    let blocks = spec.blocks();
    match (target, group) {
        (Target::Inverse, BlockGroup::Single(idx)) => {
            let b = &blocks[*idx];
            match flavor {
                Flavor::SkewInvolution => Ok(skew_reverser_unit_block(&b.eigenvalue, b.size)?.g),
                _ => {
                    let (_, cert) = block_reverser(&BlockShape::Unipotent {
                        mu: b.eigenvalue.clone(),
                        n: b.size,
                    })?;
                    Ok(cert.g)
                }
            }
        }
        (Target::Inverse, BlockGroup::Pair(first, _)) => {
            let b = &blocks[*first];
            let (lambda, n) = (&b.eigenvalue, b.size);
            if lambda.is_unit_modulus() {
                let (_, cert) = block_reverser(&BlockShape::UnitPair {
                    alpha: lambda.clone(),
                    n,
                })?;
                return Ok(cert.g);
            }
            // The partner block carries the representative conj(λ⁻¹); move
            // it to λ⁻¹ with diag(I, jI), reverse there, and move back.
            let literal = match flavor {
                Flavor::SkewInvolution => skew_reverser_pair(lambda, n)?.g,
                _ => {
                    block_reverser(&BlockShape::InversePair {
                        lambda: lambda.clone(),
                        n,
                    })?
                    .1
                    .g
                }
            };
            if lambda.is_real() {
                return Ok(literal);
            }
            let d = conj_second_half(n);
            Ok(&(&d.inverse()? * &literal) * &d)
        }
        (Target::NegInverse, BlockGroup::Single(idx)) => Ok(neg_reverser_iota(blocks[*idx].size)?.g),
        (Target::NegInverse, BlockGroup::Pair(first, _)) => {
            let b = &blocks[*first];
            Ok(neg_reverser_pair(&b.eigenvalue, b.size)?.g)
        }
    }
}

/// Reverser for a whole Jordan spec, assembled block by block from the
/// pairing the classifier produced.
///
/// `FlavorRequest::Any` yields an involution whenever one exists and a
/// skew-involution otherwise. A skew-involution with target `-A⁻¹` is
/// `i · h` for the involution `h`, which works because every such `h` here
/// is complex and commutes with the scalar `i`.
pub fn assemble_reverser(spec: &JordanSpec, target: Target, request: FlavorRequest) -> Result<Certificate> {
    let (groups, flavor) = match target {
        Target::Inverse => {
            let reversible = classify::inverse_pairing(spec)
                .map_err(|b| Error::not_constructible(classify::describe_inverse_obstruction(spec, b)))?;
            match request {
                FlavorRequest::SkewInvolution => (reversible, Flavor::SkewInvolution),
                FlavorRequest::Involution => {
                    let strong = classify::strong_pairing(spec).map_err(|b| {
                        Error::not_constructible(classify::describe_strong_obstruction(spec, b))
                    })?;
                    (strong, Flavor::Involution)
                }
                FlavorRequest::Any => match classify::strong_pairing(spec) {
                    Ok(strong) => (strong, Flavor::Involution),
                    Err(_) => (reversible, Flavor::SkewInvolution),
                },
            }
        }
        Target::NegInverse => {
            let groups = classify::neg_pairing(spec)
                .map_err(|b| Error::not_constructible(classify::describe_neg_obstruction(spec, b)))?;
            let flavor = match request {
                FlavorRequest::SkewInvolution => Flavor::SkewInvolution,
                _ => Flavor::Involution,
            };
            (groups, flavor)
        }
    };

    let n = spec.dim();
    let offsets = spec.offsets();
    let mut g = QMatrix::zeros(n, n);
    let local_flavor = if target == Target::NegInverse { Flavor::Involution } else { flavor };
    for group in &groups {
        let local = local_reverser(spec, group, target, local_flavor)?;
        let positions: Vec<usize> = group
            .members()
            .iter()
            .flat_map(|&idx| offsets[idx]..offsets[idx] + spec.blocks()[idx].size)
            .collect();
        for (lr, &gr) in positions.iter().enumerate() {
            for (lc, &gc) in positions.iter().enumerate() {
                g[(gr, gc)] = local[(lr, lc)].clone();
            }
        }
    }
    if target == Target::NegInverse && flavor == Flavor::SkewInvolution {
        g = g.scale_left(&Quaternion::i());
    }
    Certificate::new(&spec.matrix(), g, target, flavor)
}
