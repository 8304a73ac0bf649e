//! Floating-point recovery of Jordan data.
//!
//! The spectrum of the complex adjoint `Φ(A)` is computed with a dense
//! complex Schur decomposition, clustered, paired into conjugate classes,
//! snapped to exact values where possible, and each class's Weyr structure is
//! read off the rank profile of `(Φ(A) - λ)^k`.
//!
//! Every tolerance here is an implementation choice; the exact layer never
//! sees a float.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::canonical::{JordanBlock, JordanSpec};
use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::partition::WeyrStructure;
use crate::scalar::{GaussianRational, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct NumericConfig {
    /// Singular values below `rank_tol · σ_max` count as zero.
    pub rank_tol: f64,
    /// Minimum single-linkage radius for grouping eigenvalues; the radius
    /// used grows with the expected spread of defective eigenvalues.
    pub eig_cluster_tol: f64,
    /// Snapping distance to an exact candidate.
    pub unit_tol: f64,
    /// Exact values tried first when snapping (class representatives).
    pub candidates: Vec<GaussianRational>,
    /// After the candidates, real and imaginary parts are snapped to the
    /// nearest fraction with at most this denominator (0 disables).
    pub max_denominator: u64,
}

impl Default for NumericConfig {
    fn default() -> Self {
        NumericConfig {
            rank_tol: 1e-9,
            eig_cluster_tol: 1e-8,
            unit_tol: 1e-8,
            candidates: vec![
                GaussianRational::from_ints(1, 0),
                GaussianRational::from_ints(-1, 0),
                GaussianRational::i(),
            ],
            max_denominator: 64,
        }
    }
}

impl NumericConfig {
    pub fn validate(&self) -> Result<()> {
        let ok = [self.rank_tol, self.eig_cluster_tol, self.unit_tol]
            .iter()
            .all(|t| t.is_finite() && *t >= 0.0);
        if ok {
            Ok(())
        } else {
            Err(Error::Domain("tolerances must be finite and non-negative".into()))
        }
    }
}

/// Dense `n × n` quaternion matrix with `f64` components `[a, b, c, d]`.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatQMatrix {
    n: usize,
    data: Vec<[f64; 4]>,
}

impl FloatQMatrix {
    pub fn new(n: usize, data: Vec<[f64; 4]>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::Shape(format!("expected {} entries, got {}", n * n, data.len())));
        }
        if data.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::Domain("matrix entries must be finite".into()));
        }
        Ok(FloatQMatrix { n, data })
    }

    pub fn from_rows(rows: Vec<Vec<[f64; 4]>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Shape("float matrix must be square".into()));
        }
        FloatQMatrix::new(n, rows.into_iter().flatten().collect())
    }

    pub fn from_exact(a: &QMatrix) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::Shape("float matrix must be square".into()));
        }
        FloatQMatrix::new(a.rows(), a.entries().iter().map(|q| q.to_f64()).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> [f64; 4] {
        self.data[r * self.n + c]
    }

    pub fn to_rows(&self) -> Vec<Vec<[f64; 4]>> {
        self.data.chunks(self.n.max(1)).map(|r| r.to_vec()).collect()
    }

    /// `Φ(A) = [[A1, A2], [-conj A2, conj A1]]` for `A = A1 + A2 j`.
    pub fn phi(&self) -> DMatrix<Complex64> {
        let n = self.n;
        DMatrix::from_fn(2 * n, 2 * n, |r, c| {
            let [a, b, cc, d] = self.get(r % n, c % n);
            let z1 = Complex64::new(a, b);
            let z2 = Complex64::new(cc, d);
            match (r < n, c < n) {
                (true, true) => z1,
                (true, false) => z2,
                (false, true) => -z2.conj(),
                (false, false) => z1.conj(),
            }
        })
    }
}

/// One eigenvalue class of `Φ(A)`: centroid with `im >= 0` and the number of
/// quaternionic eigenvalues (half the count in `Φ(A)` of the class).
#[derive(Clone, Debug, PartialEq)]
pub struct EigenClass {
    pub centroid: Complex64,
    pub multiplicity: usize,
}

fn singular_values(m: &DMatrix<Complex64>) -> Vec<f64> {
    let mut s: Vec<f64> = m.clone().singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

fn spectrum(phi: &DMatrix<Complex64>) -> Result<Vec<Complex64>> {
    let schur = phi.clone().schur();
    let (_, t) = schur.unpack();
    Ok((0..t.nrows()).map(|k| t[(k, k)]).collect())
}

/// Merge radius for a cluster standing for `k` eigenvalues: a Jordan block
/// of size `k` perturbed by `δ` spreads over a circle of radius about
/// `δ^(1/k)`. `δ = eig_cluster_tol · ‖Φ‖_F`, and no quaternionic block is
/// larger than `n`, so `k` is capped there.
struct Radius {
    delta: f64,
    n: usize,
}

impl Radius {
    fn new(phi: &DMatrix<Complex64>, n: usize, cfg: &NumericConfig) -> Self {
        let scale = phi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt().max(1.0);
        let delta = (cfg.eig_cluster_tol * scale).max(f64::EPSILON * scale);
        Radius { delta, n }
    }

    fn for_size(&self, k: usize) -> f64 {
        let k = k.clamp(1, self.n.max(1));
        3.0 * self.delta.powf(1.0 / k as f64)
    }
}

fn single_linkage(points: &[Complex64], members: &[usize], radius: f64) -> Vec<Vec<usize>> {
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut assigned = vec![false; members.len()];
    for seed in 0..members.len() {
        if assigned[seed] {
            continue;
        }
        assigned[seed] = true;
        let mut group = vec![members[seed]];
        let mut frontier = vec![seed];
        while let Some(cur) = frontier.pop() {
            for next in 0..members.len() {
                if !assigned[next] && (points[members[cur]] - points[members[next]]).norm() <= radius {
                    assigned[next] = true;
                    group.push(members[next]);
                    frontier.push(next);
                }
            }
        }
        groups.push(group);
    }
    groups
}

fn centroid(points: &[Complex64], members: &[usize]) -> Complex64 {
    members.iter().map(|&k| points[k]).sum::<Complex64>() / members.len() as f64
}

/// Single linkage at the radius of the largest block that could be present,
/// then any group spreading wider than its own size allows is re-clustered
/// with that smaller size bound.
fn cluster_refined(points: &[Complex64], members: &[usize], max_block: usize, radius: &Radius) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for group in single_linkage(points, members, radius.for_size(max_block)) {
        let c = centroid(points, &group);
        let spread = group.iter().map(|&k| (points[k] - c).norm()).fold(0.0, f64::max);
        let bound = group.len().min(max_block);
        if bound < max_block && spread > radius.for_size(bound) {
            out.extend(cluster_refined(points, &group, bound, radius));
        } else {
            out.push(group);
        }
    }
    out
}

fn cluster(points: &[Complex64], radius: &Radius) -> Vec<(Complex64, usize)> {
    let all: Vec<usize> = (0..points.len()).collect();
    let mut clusters: Vec<(Complex64, usize)> = cluster_refined(points, &all, radius.n, radius)
        .iter()
        .map(|g| (centroid(points, g), g.len()))
        .collect();
    clusters.sort_by(|x, y| x.0.re.total_cmp(&y.0.re).then(x.0.im.total_cmp(&y.0.im)));
    clusters
}

/// Clustered eigenvalue classes of `Φ(A)`, sorted by (re, im).
pub fn phi_eigenvalues(a: &FloatQMatrix, cfg: &NumericConfig) -> Result<Vec<EigenClass>> {
    cfg.validate()?;
    if a.n() == 0 {
        return Ok(Vec::new());
    }
    let phi = a.phi();
    let eigs = spectrum(&phi)?;
    let radius = Radius::new(&phi, a.n(), cfg);
    let clusters = cluster(&eigs, &radius);

    let mut used = vec![false; clusters.len()];
    let mut out = Vec::new();
    for (idx, &(c, count)) in clusters.iter().enumerate() {
        if used[idx] {
            continue;
        }
        used[idx] = true;
        let r = radius.for_size(count);
        if c.im.abs() <= r {
            if count % 2 != 0 {
                return Err(Error::Pairing(format!(
                    "real cluster near {:.6} has odd size {count}",
                    c.re
                )));
            }
            out.push(EigenClass {
                centroid: Complex64::new(c.re, 0.0),
                multiplicity: count / 2,
            });
            continue;
        }
        let tol = r * (1.0 + c.norm());
        let partner = (0..clusters.len())
            .filter(|&k| !used[k] && clusters[k].1 == count)
            .min_by(|&x, &y| {
                let dx = (clusters[x].0 - c.conj()).norm();
                let dy = (clusters[y].0 - c.conj()).norm();
                dx.total_cmp(&dy)
            })
            .filter(|&k| (clusters[k].0 - c.conj()).norm() <= tol);
        let Some(k) = partner else {
            return Err(Error::Pairing(format!(
                "no conjugate partner for eigenvalue cluster near {:.6}{:+.6}i",
                c.re, c.im
            )));
        };
        used[k] = true;
        let rep = (c + clusters[k].0.conj()) / 2.0;
        out.push(EigenClass {
            centroid: Complex64::new(rep.re, rep.im.abs()),
            multiplicity: count,
        });
    }
    out.sort_by(|x, y| {
        x.centroid
            .re
            .total_cmp(&y.centroid.re)
            .then(x.centroid.im.total_cmp(&y.centroid.im))
    });
    Ok(out)
}

fn shifted(phi: &DMatrix<Complex64>, lambda: Complex64) -> DMatrix<Complex64> {
    let n = phi.nrows();
    phi - DMatrix::from_diagonal_element(n, n, lambda)
}

/// Rank drops `rank(N^{k-1}) - rank(N^k)` of `N = Φ(A) - λ`, by the
/// staircase reduction: split off the numerical kernel of `N` with an SVD,
/// compress `N` onto the complement, and repeat. All steps share one
/// threshold, `rank_tol · max(σ_max(N), 1)`, so tiny powers of a nearly
/// nilpotent `N` never rescale it.
fn rank_drops(phi: &DMatrix<Complex64>, lambda: Complex64, limit: usize, rank_tol: f64) -> Vec<usize> {
    let mut m = shifted(phi, lambda);
    let threshold = rank_tol * singular_values(&m).first().copied().unwrap_or(0.0).max(1.0);
    let mut drops = Vec::new();
    for _ in 0..limit {
        let size = m.nrows();
        if size == 0 {
            break;
        }
        let svd = m.clone().svd(false, true);
        let v_t = svd.v_t.expect("requested right singular vectors");
        let keep: Vec<usize> = (0..size).filter(|&k| svd.singular_values[k] > threshold).collect();
        let nullity = size - keep.len();
        if nullity == 0 {
            break;
        }
        drops.push(nullity);
        // Rows of v_t are right singular vectors (conjugated); their adjoints
        // span the complement of the kernel.
        let basis = DMatrix::from_fn(size, keep.len(), |r, c| v_t[(keep[c], r)].conj());
        m = basis.adjoint() * &m * &basis;
    }
    drops
}

fn weyr_from_phi(
    phi: &DMatrix<Complex64>,
    lambda: Complex64,
    limit: usize,
    rank_tol: f64,
) -> Result<WeyrStructure> {
    let at = rank_drops(phi, lambda, limit, rank_tol);
    // A real λ already sees both copies of each block in Φ.
    let at_conj = if lambda.im == 0.0 { Vec::new() } else { rank_drops(phi, lambda.conj(), limit, rank_tol) };
    let len = at.len().max(at_conj.len());
    let mut sizes = Vec::with_capacity(len);
    for k in 0..len {
        let total = at.get(k).copied().unwrap_or(0) + at_conj.get(k).copied().unwrap_or(0);
        if total % 2 != 0 {
            return Err(Error::RankProfile(format!(
                "odd combined rank drop {total} at power {} for {lambda:.6}",
                k + 1
            )));
        }
        sizes.push(total / 2);
    }
    if sizes.is_empty() {
        return Err(Error::RankProfile(format!("{lambda:.6} is not an eigenvalue")));
    }
    if sizes.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::RankProfile(format!(
            "non-monotone rank drops {sizes:?} for {lambda:.6}"
        )));
    }
    WeyrStructure::new(sizes).map_err(|e| Error::RankProfile(e.to_string()))
}

/// Weyr structure of the class of `λ` in `A`.
pub fn weyr_structure_numeric(a: &FloatQMatrix, lambda: Complex64, cfg: &NumericConfig) -> Result<WeyrStructure> {
    cfg.validate()?;
    weyr_from_phi(&a.phi(), lambda, 2 * a.n(), cfg.rank_tol)
}

/// How one eigenvalue class was turned into an exact value.
#[derive(Clone, Debug, PartialEq)]
pub struct SnapRecord {
    pub observed: Complex64,
    pub value: GaussianRational,
    pub snapped: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NumericRecovery {
    pub spec: JordanSpec,
    pub snaps: Vec<SnapRecord>,
    /// Some eigenvalue could not be snapped; classification is advisory.
    pub approximate: bool,
}

/// Best fraction `p/q` with `q <= max_den`, by continued fractions.
fn nearest_fraction(x: f64, max_den: u64) -> Option<(i64, u64)> {
    if !x.is_finite() || max_den == 0 {
        return None;
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut rest = x;
    for _ in 0..64 {
        let a = rest.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i128;
        let (h2, k2) = (ai * h1 + h0, ai * k1 + k0);
        if k2 > max_den as i128 {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = rest - a;
        if frac.abs() < 1e-15 {
            break;
        }
        rest = 1.0 / frac;
    }
    if k1 == 0 {
        return None;
    }
    Some((h1.to_i64()?, k1 as u64))
}

fn fraction_within(x: f64, cfg: &NumericConfig) -> Option<Rational> {
    let (p, q) = nearest_fraction(x, cfg.max_denominator)?;
    let value = p as f64 / q as f64;
    ((value - x).abs() <= cfg.unit_tol).then(|| Rational::new(BigInt::from(p), BigInt::from(q)))
}

/// Rational with denominator `10^9` closest to `x`.
fn decimal_rational(x: f64) -> Rational {
    let scale = 1_000_000_000i64;
    let numer = (x * scale as f64).round() as i64;
    Rational::new(BigInt::from(numer), BigInt::from(scale))
}

fn snap(observed: Complex64, cfg: &NumericConfig) -> SnapRecord {
    let near_candidate = cfg
        .candidates
        .iter()
        .map(GaussianRational::class_rep)
        .map(|c| {
            let d = (c.to_c64() - observed).norm();
            (d, c)
        })
        .filter(|(d, _)| *d <= cfg.unit_tol)
        .min_by(|x, y| x.0.total_cmp(&y.0));
    if let Some((_, value)) = near_candidate {
        return SnapRecord { observed, value, snapped: true };
    }
    let re = fraction_within(observed.re, cfg);
    let im = if observed.im == 0.0 { Some(Rational::zero()) } else { fraction_within(observed.im, cfg) };
    if let (Some(re), Some(im)) = (re, im) {
        let value = GaussianRational::new(re, im);
        if (value.to_c64() - observed).norm() <= cfg.unit_tol {
            return SnapRecord { observed, value, snapped: true };
        }
    }
    SnapRecord {
        observed,
        value: GaussianRational::new(decimal_rational(observed.re), decimal_rational(observed.im)),
        snapped: false,
    }
}

/// Recovers the Jordan spec of `A` from floating-point data.
pub fn jordan_spec_numeric(a: &FloatQMatrix, cfg: &NumericConfig) -> Result<NumericRecovery> {
    cfg.validate()?;
    if a.n() == 0 {
        return Err(Error::Shape("empty matrix".into()));
    }
    let phi = a.phi();
    let s = singular_values(&phi);
    if s.last().copied().unwrap_or(0.0) <= cfg.rank_tol * s[0] {
        return Err(Error::Singular);
    }
    let classes = phi_eigenvalues(a, cfg)?;
    let mut blocks = Vec::new();
    let mut snaps = Vec::new();
    for class in classes {
        let record = snap(class.centroid, cfg);
        let at = if record.snapped { record.value.to_c64() } else { class.centroid };
        let weyr = weyr_from_phi(&phi, at, 2 * class.multiplicity, cfg.rank_tol)?;
        if weyr.total() != class.multiplicity {
            return Err(Error::RankProfile(format!(
                "rank profile at {at:.6} accounts for {} of {} eigenvalues",
                weyr.total(),
                class.multiplicity
            )));
        }
        for &size in weyr.jordan_partition().parts() {
            blocks.push(JordanBlock::new(record.value.clone(), size));
        }
        snaps.push(record);
    }
    let approximate = snaps.iter().any(|r| !r.snapped);
    let spec = JordanSpec::new(blocks)?;
    Ok(NumericRecovery { spec, snaps, approximate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::jordan_block;
    use crate::scalar::Quaternion;

    fn c(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    fn diag(values: &[[f64; 4]]) -> FloatQMatrix {
        let n = values.len();
        let mut data = vec![[0.0; 4]; n * n];
        for (k, v) in values.iter().enumerate() {
            data[k * n + k] = *v;
        }
        FloatQMatrix::new(n, data).unwrap()
    }

    #[test]
    fn eigenvalue_classes() {
        let cfg = NumericConfig::default();
        let e = phi_eigenvalues(&diag(&[[0.0, 1.0, 0.0, 0.0]]), &cfg).unwrap();
        assert_eq!(e.len(), 1);
        assert!((e[0].centroid - Complex64::new(0.0, 1.0)).norm() < 1e-12);

        let e = phi_eigenvalues(&diag(&[[2.0, 0.0, 0.0, 0.0], [0.5, 0.0, 0.0, 0.0]]), &cfg).unwrap();
        assert_eq!(e.len(), 2);
        assert!((e[0].centroid.re - 0.5).abs() < 1e-12 && (e[1].centroid.re - 2.0).abs() < 1e-12);

        // [j] = [i]
        let e = phi_eigenvalues(&diag(&[[0.0, 0.0, 1.0, 0.0]]), &cfg).unwrap();
        assert!((e[0].centroid - Complex64::new(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn weyr_structures() {
        let cfg = NumericConfig::default();
        let a = FloatQMatrix::from_exact(&jordan_block(&c("2"), 2).to_quaternion()).unwrap();
        let w = weyr_structure_numeric(&a, Complex64::new(2.0, 0.0), &cfg).unwrap();
        assert_eq!(w.sizes(), &[1, 1]);
        assert_eq!(w.jordan_partition().parts(), &[2]);

        let a = diag(&[[2.0, 0.0, 0.0, 0.0]; 3]);
        let w = weyr_structure_numeric(&a, Complex64::new(2.0, 0.0), &cfg).unwrap();
        assert_eq!(w.sizes(), &[3]);
    }

    #[test]
    fn conjugated_iota_block() {
        let s = QMatrix::from_rows(vec![
            vec![Quaternion::from_ints(1, 0, 1, 0), Quaternion::from_ints(0, 1, 0, 0), Quaternion::from_ints(0, 0, 0, 0)],
            vec![Quaternion::from_ints(0, 0, 0, 1), Quaternion::from_ints(2, 0, 0, 0), Quaternion::from_ints(1, 0, 0, 0)],
            vec![Quaternion::from_ints(0, 0, 0, 0), Quaternion::from_ints(1, -1, 0, 0), Quaternion::from_ints(1, 0, 0, 0)],
        ])
        .unwrap();
        let j = jordan_block(&c("i"), 3).to_quaternion();
        let a = &(&s * &j) * &s.inverse().unwrap();
        let rec = jordan_spec_numeric(&FloatQMatrix::from_exact(&a).unwrap(), &NumericConfig::default()).unwrap();
        assert_eq!(rec.spec.to_string(), "[(i,3)]");
        assert!(!rec.approximate);
    }

    #[test]
    fn noisy_unipotent_snaps() {
        let mut a = FloatQMatrix::from_exact(&jordan_block(&c("1"), 3).to_quaternion()).unwrap();
        a.data[6][0] += 1e-12;
        a.data[1][2] -= 1e-12;
        let rec = jordan_spec_numeric(&a, &NumericConfig::default()).unwrap();
        assert_eq!(rec.spec.to_string(), "[(1,3)]");
    }

    #[test]
    fn diagonal_and_rotation() {
        let cfg = NumericConfig::default();
        let rec = jordan_spec_numeric(&diag(&[[2.0, 0.0, 0.0, 0.0], [0.5, 0.0, 0.0, 0.0]]), &cfg).unwrap();
        assert_eq!(rec.spec.to_string(), "[(1/2,1),(2,1)]");
        let rec = jordan_spec_numeric(&diag(&[[0.6, -0.8, 0.0, 0.0]]), &cfg).unwrap();
        assert_eq!(rec.spec.to_string(), "[(3/5+4/5i,1)]");
    }

    #[test]
    fn unsnappable_values_are_flagged() {
        let cfg = NumericConfig { max_denominator: 0, candidates: vec![], ..NumericConfig::default() };
        let rec = jordan_spec_numeric(&diag(&[[std::f64::consts::PI, 0.0, 0.0, 0.0]]), &cfg).unwrap();
        assert!(rec.approximate);
        assert!(!rec.snaps[0].snapped);
    }

    #[test]
    fn singular_input_is_rejected() {
        let a = diag(&[[1.0, 0.0, 0.0, 0.0], [0.0; 4]]);
        assert_eq!(jordan_spec_numeric(&a, &NumericConfig::default()), Err(Error::Singular));
    }

    #[test]
    fn fractions() {
        assert_eq!(nearest_fraction(0.6, 64), Some((3, 5)));
        assert_eq!(nearest_fraction(-0.5, 64), Some((-1, 2)));
        assert_eq!(nearest_fraction(2.0, 64), Some((2, 1)));
        assert_eq!(nearest_fraction(1.0 / 3.0, 64), Some((1, 3)));
    }
}
