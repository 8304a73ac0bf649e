//! Classifier and constructors agree on an exhaustive sweep of small specs.

mod common;

use common::{all_specs, c};
use qrev_core::classify::{classify_psl, is_neg_reversible, is_reversible, is_strongly_reversible};
use qrev_core::decompose::{factorize, verify_certificate};
use qrev_core::reversers::{assemble_reverser, FlavorRequest};
use qrev_core::{Error, Flavor, GaussianRational, JordanSpec, Target};

fn sweep_pool() -> Vec<GaussianRational> {
    // Both members of the conjugate pair 3/5 ± 4/5 i and (1-i)/2 normalize to
    // their upper-half-plane representatives.
    ["1", "-1", "2", "-2", "1/2", "-1/2", "i", "3/5+4/5i", "3/5-4/5i", "1+i", "1/2-1/2i"]
        .iter()
        .map(|s| c(s))
        .collect()
}

fn specs() -> Vec<JordanSpec> {
    let mut v = all_specs(&sweep_pool(), 4);
    v.sort_by_key(|s| s.to_string());
    v.dedup();
    v
}

#[test]
fn certificates_exist_exactly_when_classified() {
    for spec in specs() {
        let a = spec.matrix();
        let cases = [
            (Target::Inverse, FlavorRequest::SkewInvolution, is_reversible(&spec).is_some()),
            (Target::Inverse, FlavorRequest::Involution, is_strongly_reversible(&spec)),
            (Target::NegInverse, FlavorRequest::Involution, is_neg_reversible(&spec).is_some()),
            (Target::NegInverse, FlavorRequest::SkewInvolution, is_neg_reversible(&spec).is_some()),
        ];
        for (target, request, expected) in cases {
            match assemble_reverser(&spec, target, request) {
                Ok(cert) => {
                    assert!(expected, "{spec} {target:?} {request:?}: unexpected certificate");
                    assert!(verify_certificate(&a, &cert).accepted, "{spec}");
                }
                Err(Error::NotConstructible { .. }) => {
                    assert!(!expected, "{spec} {target:?} {request:?}: refused")
                }
                Err(e) => panic!("{spec}: {e}"),
            }
        }
    }
}

#[test]
fn any_flavor_prefers_involutions() {
    for spec in specs().into_iter().filter(|s| is_reversible(s).is_some()) {
        let cert = assemble_reverser(&spec, Target::Inverse, FlavorRequest::Any).unwrap();
        let want = if is_strongly_reversible(&spec) { Flavor::Involution } else { Flavor::SkewInvolution };
        assert_eq!(cert.flavor, want, "{spec}");
        assert!(factorize(&spec.matrix(), &cert).unwrap().verify(&spec.matrix()));
    }
}

#[test]
fn classification_invariants() {
    for spec in specs() {
        let cls = classify_psl(&spec);
        assert!(!cls.strongly_reversible || cls.reversible, "{spec}");
        assert_eq!(cls.psl_reversible, cls.reversible || cls.neg_reversible, "{spec}");
        assert_eq!(cls.psl_strongly_reversible, cls.psl_reversible, "{spec}");
        assert!(!cls.witness_pairing.is_empty());
    }
}

#[test]
fn conjugate_inputs_classify_identically() {
    let upper: JordanSpec = "[(3/5+4/5i,2),(1+i,1),(1/2+1/2i,1)]".parse().unwrap();
    let lower: JordanSpec = "[(3/5-4/5i,2),(1-i,1),(1/2-1/2i,1)]".parse().unwrap();
    assert_eq!(upper, lower);
    assert_eq!(classify_psl(&upper), classify_psl(&lower));
}
