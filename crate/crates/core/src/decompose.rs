//! Factorizations `A = s1 · s2` read off a verified certificate.

use crate::error::{Error, Result};
use crate::matrix::{is_involution, is_skew_involution, QMatrix};
use crate::reversers::{Certificate, Checks, Flavor, Target};

/// `s² = +I` or `s² = -I`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum SquareSign {
    PlusI,
    MinusI,
}

impl SquareSign {
    pub fn as_str(self) -> &'static str {
        match self {
            SquareSign::PlusI => "+I",
            SquareSign::MinusI => "-I",
        }
    }

    fn holds_for(self, s: &QMatrix) -> bool {
        match self {
            SquareSign::PlusI => is_involution(s),
            SquareSign::MinusI => is_skew_involution(s),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Factorization {
    pub s1: QMatrix,
    pub s2: QMatrix,
    pub s1_square: SquareSign,
    pub s2_square: SquareSign,
}

impl Factorization {
    /// Re-checks `s1 s2 = A` and both squares exactly.
    pub fn verify(&self, a: &QMatrix) -> bool {
        self.s1.checked_mul(&self.s2).is_ok_and(|p| &p == a)
            && self.s1_square.holds_for(&self.s1)
            && self.s2_square.holds_for(&self.s2)
    }

    fn checked(self, a: &QMatrix) -> Result<Self> {
        if self.verify(a) {
            Ok(self)
        } else {
            Err(Error::Verification("factorization identities do not hold".into()))
        }
    }
}

fn require(a: &QMatrix, cert: &Certificate, target: Target, flavor: Flavor) -> Result<()> {
    if cert.target != target || cert.flavor != flavor {
        return Err(Error::Flavor(format!(
            "need a {flavor} certificate for target {target}, got {} for {}",
            cert.flavor, cert.target
        )));
    }
    let checks = Checks::compute(a, &cert.g, cert.target, cert.flavor)?;
    if !checks.all_pass() {
        return Err(Error::Verification(format!("{checks:?}")));
    }
    Ok(())
}

/// `s1 = g`, `s2 = g A`, both involutions.
pub fn product_two_involutions(a: &QMatrix, cert: &Certificate) -> Result<Factorization> {
    require(a, cert, Target::Inverse, Flavor::Involution)?;
    Factorization {
        s1: cert.g.clone(),
        s2: cert.g.checked_mul(a)?,
        s1_square: SquareSign::PlusI,
        s2_square: SquareSign::PlusI,
    }
    .checked(a)
}

/// `s1 = -g`, `s2 = g A`; `(gA)² = gAg⁻¹ g² A = -I`.
pub fn product_two_skew_involutions(a: &QMatrix, cert: &Certificate) -> Result<Factorization> {
    require(a, cert, Target::Inverse, Flavor::SkewInvolution)?;
    Factorization {
        s1: cert.g.neg(),
        s2: cert.g.checked_mul(a)?,
        s1_square: SquareSign::MinusI,
        s2_square: SquareSign::MinusI,
    }
    .checked(a)
}

/// `A = (-h⁻¹ A⁻¹) · h` for an involution `h` with `h A h⁻¹ = -A⁻¹`.
pub fn product_involution_skew(a: &QMatrix, cert: &Certificate) -> Result<Factorization> {
    require(a, cert, Target::NegInverse, Flavor::Involution)?;
    // h⁻¹ = h
    let s1 = cert.g.checked_mul(&a.inverse()?)?.neg();
    Factorization {
        s1,
        s2: cert.g.clone(),
        s1_square: SquareSign::MinusI,
        s2_square: SquareSign::PlusI,
    }
    .checked(a)
}

/// Factorization matching the certificate's (target, flavor).
pub fn factorize(a: &QMatrix, cert: &Certificate) -> Result<Factorization> {
    match (cert.target, cert.flavor) {
        (Target::Inverse, Flavor::Involution) => product_two_involutions(a, cert),
        (Target::Inverse, Flavor::SkewInvolution) => product_two_skew_involutions(a, cert),
        (Target::NegInverse, Flavor::Involution) => product_involution_skew(a, cert),
        (t, f) => Err(Error::Flavor(format!("no factorization for a {f} certificate with target {t}"))),
    }
}

/// Result of re-checking a certificate from scratch.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VerificationReport {
    pub checks: Checks,
    pub accepted: bool,
    /// Set when the check could not be carried out (shape mismatch, singular g).
    pub problem: Option<String>,
}

/// Recomputes residual, flavor and determinant; never errors.
pub fn verify_certificate(a: &QMatrix, cert: &Certificate) -> VerificationReport {
    match Checks::compute(a, &cert.g, cert.target, cert.flavor) {
        Ok(checks) => VerificationReport {
            accepted: checks.all_pass(),
            checks,
            problem: None,
        },
        Err(e) => VerificationReport {
            checks: Checks {
                residual_zero: false,
                flavor_verified: false,
                det_one: false,
            },
            accepted: false,
            problem: Some(e.to_string()),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::{jordan_block, JordanSpec};
    use crate::matrix::CMatrix;
    use crate::reversers::{
        assemble_reverser, neg_reverser_iota, omega, skew_reverser_unit_block, FlavorRequest,
    };
    use crate::scalar::{GaussianRational, Quaternion};

    fn c(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    fn cm(rows: &[&[&str]]) -> QMatrix {
        CMatrix::from_rows(rows.iter().map(|r| r.iter().map(|s| c(s)).collect()).collect())
            .unwrap()
            .to_quaternion()
    }

    #[test]
    fn two_involutions_unipotent() {
        let a = jordan_block(&c("1"), 2).to_quaternion();
        let g = omega(&c("1"), 2).unwrap().to_quaternion();
        let cert = Certificate::new(&a, g, Target::Inverse, Flavor::Involution).unwrap();
        let f = product_two_involutions(&a, &cert).unwrap();
        assert_eq!(f.s1, cm(&[&["-1", "0"], &["0", "1"]]));
        assert_eq!(f.s2, cm(&[&["-1", "-1"], &["0", "1"]]));
    }

    #[test]
    fn two_involutions_identity_and_diagonal() {
        let a = QMatrix::identity(2);
        let cert = Certificate::new(&a, QMatrix::identity(2), Target::Inverse, Flavor::Involution).unwrap();
        let f = product_two_involutions(&a, &cert).unwrap();
        assert!(f.s1.is_identity() && f.s2.is_identity());

        let a = cm(&[&["2", "0"], &["0", "1/2"]]);
        let g = cm(&[&["0", "1"], &["1", "0"]]);
        let cert = Certificate::new(&a, g, Target::Inverse, Flavor::Involution).unwrap();
        assert!(product_two_involutions(&a, &cert).unwrap().verify(&a));
    }

    #[test]
    fn skew_factorizations() {
        let a = QMatrix::scalar(1, &Quaternion::i());
        let cert = skew_reverser_unit_block(&c("i"), 1).unwrap();
        let f = product_two_skew_involutions(&a, &cert).unwrap();
        assert_eq!(f.s1, QMatrix::scalar(1, &-Quaternion::j()));
        assert_eq!(f.s2, QMatrix::scalar(1, &-Quaternion::k()));

        let a = jordan_block(&c("1"), 2).to_quaternion();
        let cert = skew_reverser_unit_block(&c("1"), 2).unwrap();
        assert!(product_two_skew_involutions(&a, &cert).unwrap().verify(&a));

        let alpha = c("3/5+4/5i");
        let a = jordan_block(&alpha, 3).to_quaternion();
        let cert = skew_reverser_unit_block(&alpha, 3).unwrap();
        assert!(product_two_skew_involutions(&a, &cert).unwrap().verify(&a));
        assert!(matches!(product_two_involutions(&a, &cert), Err(Error::Flavor(_))));
    }

    #[test]
    fn involution_times_skew() {
        let a = QMatrix::scalar(1, &Quaternion::i());
        let cert = neg_reverser_iota(1).unwrap();
        let f = product_involution_skew(&a, &cert).unwrap();
        assert_eq!(f.s1, a);
        assert!(f.s2.is_identity());

        let a = jordan_block(&c("i"), 5).to_quaternion();
        let cert = neg_reverser_iota(5).unwrap();
        assert!(product_involution_skew(&a, &cert).unwrap().verify(&a));

        let a = cm(&[&["1", "0"], &["0", "-1"]]);
        let h = cm(&[&["0", "1"], &["1", "0"]]);
        let cert = Certificate::new(&a, h, Target::NegInverse, Flavor::Involution).unwrap();
        let f = product_involution_skew(&a, &cert).unwrap();
        assert_eq!((f.s1_square, f.s2_square), (SquareSign::MinusI, SquareSign::PlusI));
    }

    #[test]
    fn verification_reports() {
        let s: JordanSpec = "[(i,5)]".parse().unwrap();
        let a = s.matrix();
        let cert = assemble_reverser(&s, Target::NegInverse, FlavorRequest::Involution).unwrap();
        assert!(verify_certificate(&a, &cert).accepted);

        let mut tampered = cert.clone();
        tampered.g[(0, 1)] = Quaternion::from_ints(7, 0, 0, 0);
        let report = verify_certificate(&a, &tampered);
        assert!(!report.accepted && !report.checks.residual_zero);

        let wrong_shape = Certificate {
            g: QMatrix::identity(2),
            ..cert
        };
        let report = verify_certificate(&a, &wrong_shape);
        assert!(!report.accepted && report.problem.is_some());
    }
}
