//! Numeric recovery of conjugated exact specs.

mod common;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::pool;
use qrev_core::matrix::qdet;
use qrev_core::numeric::{jordan_spec_numeric, FloatQMatrix, NumericConfig};
use qrev_core::{Error, JordanBlock, JordanSpec, QMatrix, Quaternion};

fn random_spec(rng: &mut ChaCha8Rng, max_n: usize) -> JordanSpec {
    let values = pool();
    let mut rest = rng.random_range(1..=max_n);
    let mut blocks = Vec::new();
    while rest > 0 {
        let size = rng.random_range(1..=rest);
        blocks.push(JordanBlock::new(values[rng.random_range(0..values.len())].clone(), size));
        rest -= size;
    }
    JordanSpec::new(blocks).unwrap()
}

fn conjugator(rng: &mut ChaCha8Rng, n: usize) -> QMatrix {
    loop {
        let s = QMatrix::from_fn(n, n, |_, _| {
            let mut r = || rng.random_range(-3i64..=3);
            Quaternion::from_ints(r(), r(), r(), r())
        });
        if qdet(&s).unwrap().is_zero() {
            continue;
        }
        let sv = FloatQMatrix::from_exact(&s).unwrap().phi().singular_values();
        if sv.max() / sv.min() <= 200.0 {
            return s;
        }
    }
}

#[test]
fn recovers_specs_up_to_six() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let cfg = NumericConfig::default();
    for trial in 0..150 {
        let spec = random_spec(&mut rng, 6);
        let s = conjugator(&mut rng, spec.dim());
        let a = &(&s * &spec.matrix()) * &s.inverse().unwrap();
        let rec = jordan_spec_numeric(&FloatQMatrix::from_exact(&a).unwrap(), &cfg)
            .unwrap_or_else(|e| panic!("trial {trial} {spec}: {e}"));
        assert_eq!(rec.spec, spec, "trial {trial}");
        assert!(!rec.approximate);
    }
}

#[test]
fn eigenvalue_pairs_are_conjugate_symmetric() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..30 {
        let spec = random_spec(&mut rng, 4);
        let a = FloatQMatrix::from_exact(&spec.matrix()).unwrap();
        let classes = qrev_core::numeric::phi_eigenvalues(&a, &NumericConfig::default()).unwrap();
        assert!(classes.iter().all(|c| c.centroid.im >= 0.0));
        let total: usize = classes.iter().map(|c| c.multiplicity).sum();
        assert_eq!(total, spec.dim());
    }
}

#[test]
fn negative_tolerances_are_rejected() {
    let cfg = NumericConfig { rank_tol: -1.0, ..NumericConfig::default() };
    let a = FloatQMatrix::from_exact(&QMatrix::identity(2)).unwrap();
    assert!(matches!(jordan_spec_numeric(&a, &cfg), Err(Error::Domain(_))));
}
