//! JSON wire formats.
//!
//! Exact values travel as strings (`"3/5"`), so nothing is rounded on the
//! way through. Quaternion entries are `[a, b, c, d]` for `a + bi + cj + dk`.

use serde::{Deserialize, Serialize};

use crate::canonical::{JordanBlock, JordanSpec};
use crate::classify::Classification;
use crate::decompose::{Factorization, SquareSign, VerificationReport};
use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::numeric::{FloatQMatrix, NumericRecovery};
use crate::reversers::{Certificate, Checks, Flavor, Target};
use crate::scalar::{format_rational, parse_rational, GaussianRational, Quaternion};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QMatrixJson {
    pub n: usize,
    pub m: usize,
    pub entries: Vec<Vec<[String; 4]>>,
}

impl From<&QMatrix> for QMatrixJson {
    fn from(a: &QMatrix) -> Self {
        QMatrixJson {
            n: a.rows(),
            m: a.cols(),
            entries: a
                .to_rows()
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|q| [&q.a, &q.b, &q.c, &q.d].map(format_rational))
                        .collect()
                })
                .collect(),
        }
    }
}

impl TryFrom<QMatrixJson> for QMatrix {
    type Error = Error;

    fn try_from(j: QMatrixJson) -> Result<QMatrix> {
        if j.entries.len() != j.n || j.entries.iter().any(|r| r.len() != j.m) {
            return Err(Error::Parse(format!("entries do not form a {}x{} matrix", j.n, j.m)));
        }
        let rows = j
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|[a, b, c, d]| {
                        Ok(Quaternion::new(
                            parse_rational(a)?,
                            parse_rational(b)?,
                            parse_rational(c)?,
                            parse_rational(d)?,
                        ))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        if j.n == 0 {
            return Ok(QMatrix::zeros(0, j.m));
        }
        QMatrix::from_rows(rows)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockJson {
    pub re: String,
    pub im: String,
    pub size: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JordanSpecJson {
    pub blocks: Vec<BlockJson>,
}

impl From<&JordanSpec> for JordanSpecJson {
    fn from(s: &JordanSpec) -> Self {
        JordanSpecJson {
            blocks: s
                .blocks()
                .iter()
                .map(|b| BlockJson {
                    re: format_rational(&b.eigenvalue.re),
                    im: format_rational(&b.eigenvalue.im),
                    size: b.size,
                })
                .collect(),
        }
    }
}

impl TryFrom<JordanSpecJson> for JordanSpec {
    type Error = Error;

    fn try_from(j: JordanSpecJson) -> Result<JordanSpec> {
        let blocks = j
            .blocks
            .iter()
            .map(|b| {
                let z = GaussianRational::new(parse_rational(&b.re)?, parse_rational(&b.im)?);
                Ok(JordanBlock::new(z, b.size))
            })
            .collect::<Result<Vec<_>>>()?;
        JordanSpec::new(blocks)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChecksJson {
    pub residual_zero: bool,
    pub flavor_verified: bool,
    pub det_one: bool,
}

impl From<Checks> for ChecksJson {
    fn from(c: Checks) -> Self {
        ChecksJson {
            residual_zero: c.residual_zero,
            flavor_verified: c.flavor_verified,
            det_one: c.det_one,
        }
    }
}

impl From<ChecksJson> for Checks {
    fn from(c: ChecksJson) -> Self {
        Checks {
            residual_zero: c.residual_zero,
            flavor_verified: c.flavor_verified,
            det_one: c.det_one,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub target: String,
    pub flavor: String,
    pub g: QMatrixJson,
    pub checks: ChecksJson,
}

pub fn parse_target(s: &str) -> Result<Target> {
    match s {
        "inverse" => Ok(Target::Inverse),
        "neg-inverse" => Ok(Target::NegInverse),
        _ => Err(Error::Parse(format!("unknown target {s:?}"))),
    }
}

pub fn parse_flavor(s: &str) -> Result<Flavor> {
    match s {
        "involution" => Ok(Flavor::Involution),
        "skew-involution" => Ok(Flavor::SkewInvolution),
        "general" => Ok(Flavor::General),
        _ => Err(Error::Parse(format!("unknown flavor {s:?}"))),
    }
}

impl From<&Certificate> for CertificateJson {
    fn from(c: &Certificate) -> Self {
        CertificateJson {
            target: c.target.as_str().into(),
            flavor: c.flavor.as_str().into(),
            g: (&c.g).into(),
            checks: c.checks.into(),
        }
    }
}

/// The stored checks are carried over as-is; re-verify before trusting them.
impl TryFrom<CertificateJson> for Certificate {
    type Error = Error;

    fn try_from(j: CertificateJson) -> Result<Certificate> {
        Ok(Certificate {
            target: parse_target(&j.target)?,
            flavor: parse_flavor(&j.flavor)?,
            g: j.g.try_into()?,
            checks: j.checks.into(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FactorizationJson {
    pub s1: QMatrixJson,
    pub s2: QMatrixJson,
    pub s1_square: String,
    pub s2_square: String,
}

impl From<&Factorization> for FactorizationJson {
    fn from(f: &Factorization) -> Self {
        FactorizationJson {
            s1: (&f.s1).into(),
            s2: (&f.s2).into(),
            s1_square: f.s1_square.as_str().into(),
            s2_square: f.s2_square.as_str().into(),
        }
    }
}

fn parse_square(s: &str) -> Result<SquareSign> {
    match s {
        "+I" => Ok(SquareSign::PlusI),
        "-I" => Ok(SquareSign::MinusI),
        _ => Err(Error::Parse(format!("unknown square {s:?}"))),
    }
}

impl TryFrom<FactorizationJson> for Factorization {
    type Error = Error;

    fn try_from(j: FactorizationJson) -> Result<Factorization> {
        Ok(Factorization {
            s1: j.s1.try_into()?,
            s2: j.s2.try_into()?,
            s1_square: parse_square(&j.s1_square)?,
            s2_square: parse_square(&j.s2_square)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FloatMatrixJson {
    pub n: usize,
    pub entries: Vec<Vec<[f64; 4]>>,
}

impl From<&FloatQMatrix> for FloatMatrixJson {
    fn from(a: &FloatQMatrix) -> Self {
        FloatMatrixJson {
            n: a.n(),
            entries: a.to_rows(),
        }
    }
}

impl TryFrom<FloatMatrixJson> for FloatQMatrix {
    type Error = Error;

    fn try_from(j: FloatMatrixJson) -> Result<FloatQMatrix> {
        if j.entries.len() != j.n {
            return Err(Error::Parse(format!("expected {} rows", j.n)));
        }
        FloatQMatrix::from_rows(j.entries)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassificationJson {
    pub spec: JordanSpecJson,
    pub reversible: bool,
    pub strongly_reversible: bool,
    pub neg_reversible: bool,
    pub psl_reversible: bool,
    pub psl_strongly_reversible: bool,
    pub witness_pairing: Vec<String>,
    /// Present only for numerically recovered specs.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub approximate: Option<bool>,
}

impl ClassificationJson {
    pub fn new(spec: &JordanSpec, c: &Classification, recovery: Option<&NumericRecovery>) -> Self {
        ClassificationJson {
            spec: spec.into(),
            reversible: c.reversible,
            strongly_reversible: c.strongly_reversible,
            neg_reversible: c.neg_reversible,
            psl_reversible: c.psl_reversible,
            psl_strongly_reversible: c.psl_strongly_reversible,
            witness_pairing: c.witness_pairing.clone(),
            approximate: recovery.map(|r| r.approximate),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationJson {
    pub accepted: bool,
    pub checks: ChecksJson,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub problem: Option<String>,
}

impl From<&VerificationReport> for VerificationJson {
    fn from(r: &VerificationReport) -> Self {
        VerificationJson {
            accepted: r.accepted,
            checks: r.checks.into(),
            problem: r.problem.clone(),
        }
    }
}

fn from_json<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn to_json_string<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("wire types always serialize")
}

pub fn parse_qmatrix(text: &str) -> Result<QMatrix> {
    from_json::<QMatrixJson>(text)?.try_into()
}

pub fn parse_float_matrix(text: &str) -> Result<FloatQMatrix> {
    from_json::<FloatMatrixJson>(text)?.try_into()
}

/// JSON (`{"blocks": [...]}`) or the tuple text `[(i,5),(2,1)]`.
pub fn parse_jordan_spec(text: &str) -> Result<JordanSpec> {
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        from_json::<JordanSpecJson>(trimmed)?.try_into()
    } else {
        trimmed.parse()
    }
}

pub fn parse_certificate(text: &str) -> Result<Certificate> {
    from_json::<CertificateJson>(text)?.try_into()
}

pub fn parse_factorization(text: &str) -> Result<Factorization> {
    from_json::<FactorizationJson>(text)?.try_into()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reversers::{assemble_reverser, FlavorRequest};

    #[test]
    fn qmatrix_round_trip() {
        let a = QMatrix::from_rows(vec![
            vec![Quaternion::from_ints(1, -1, 0, 2), Quaternion::from_ints(0, 0, 0, 0)],
            vec![Quaternion::new(crate::scalar::rat(3, 5), crate::scalar::rat(-4, 5), crate::scalar::int(0), crate::scalar::int(1)), Quaternion::from_ints(1, 0, 0, 0)],
        ])
        .unwrap();
        let text = to_json_string(&QMatrixJson::from(&a));
        assert!(text.contains("\"3/5\""));
        assert_eq!(parse_qmatrix(&text).unwrap(), a);
    }

    #[test]
    fn spec_round_trip() {
        let s: JordanSpec = "[(3/5+4/5i,2),(-2,1)]".parse().unwrap();
        let text = to_json_string(&JordanSpecJson::from(&s));
        assert_eq!(parse_jordan_spec(&text).unwrap(), s);
        assert_eq!(parse_jordan_spec("[(i,1)]").unwrap().to_string(), "[(i,1)]");
        assert!(parse_jordan_spec("{\"blocks\": 3}").is_err());
    }

    #[test]
    fn certificate_round_trip() {
        let s: JordanSpec = "[(i,3)]".parse().unwrap();
        let cert = assemble_reverser(&s, Target::NegInverse, FlavorRequest::Involution).unwrap();
        let text = to_json_string(&CertificateJson::from(&cert));
        assert!(text.contains("\"neg-inverse\""));
        assert_eq!(parse_certificate(&text).unwrap(), cert);
    }

    #[test]
    fn malformed_inputs() {
        assert!(parse_qmatrix("{").is_err());
        assert!(parse_qmatrix(r#"{"n":1,"m":1,"entries":[[["1","0","0"]]]}"#).is_err());
        assert!(parse_qmatrix(r#"{"n":2,"m":1,"entries":[[["1","0","0","0"]]]}"#).is_err());
        assert!(parse_float_matrix(r#"{"n":1,"entries":[[[1.0,0.0,0.0,0.0]]]}"#).is_ok());
    }
}
