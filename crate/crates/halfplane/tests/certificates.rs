//! Certificate-level integration checks that tie the criterion suprema to
//! the empirical operator-norm lower bounds from the kernel family.

use std::f64::consts::PI;

use halfplane::criteria::{boundedness_certificate, CertVerdict};
use halfplane::gallery;
use halfplane::search::SearchOptions;
use halfplane::{OperatorKind, QuadConfig, SearchRegion};

#[test]
fn exp_iz_jg_certificate_carries_the_extremal_lower_bound() {
    let g = gallery::symbol("exp_iz").unwrap();
    let cert = boundedness_certificate(
        OperatorKind::Jg,
        &g,
        &SearchRegion::default_region(),
        &QuadConfig::default(),
        &SearchOptions::default(),
    )
    .unwrap();

    assert_eq!(cert.verdict, CertVerdict::Bounded);
    let m1 = 0.5f64.sqrt() * (-0.5f64).exp();
    assert!((cert.criterion.value - m1).abs() < 1e-3);

    // testing against f_w at the criterion argmax extracts at least
    // M1/(4 sqrt(pi) ||f_w||); allow 10% slack on the measured side
    let floor = m1 / (4.0 * PI.sqrt() * 0.5f64.sqrt());
    assert!(
        cert.lower_bound >= 0.9 * floor,
        "lower bound {} vs floor {floor}",
        cert.lower_bound
    );
    assert!(cert.ratio.is_some());

    // hypothesis evidence: exp_iz is a bounded symbol with finite Bloch
    // seminorm over the region
    assert!(!cert.sup_abs_g.divergent);
    assert!((cert.sup_abs_g.value - 1.0).abs() < 1e-6);
    assert!(!cert.bloch_seminorm_g.divergent);
}

#[test]
fn exp_isqrtz_jg_certificate_is_bounded_with_boundary_criterion() {
    let g = gallery::symbol("exp_isqrtz").unwrap();
    let cert = boundedness_certificate(
        OperatorKind::Jg,
        &g,
        &SearchRegion::default_region(),
        &QuadConfig::default(),
        &SearchOptions::default(),
    )
    .unwrap();
    assert_eq!(cert.verdict, CertVerdict::Bounded);
    assert!((cert.criterion.value - 0.5).abs() < 5e-3);
    assert!(cert.criterion.boundary);
}
