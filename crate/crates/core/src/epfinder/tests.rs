use super::*;
use crate::spectra::cardano_spectrum;

fn params(eps: f64, t: f64, lambda: f64, gamma: f64, u: f64) -> DimerParams {
    DimerParams::new(eps, t, lambda, gamma, u).unwrap()
}

fn lambda_scan(gamma: f64, u: f64) -> ScanReport {
    scan_eps(
        &params(0.5, 1.0, 0.0, gamma, u),
        EpAxis::Lambda,
        (0.0, 2.0),
        DEFAULT_COARSE_STEPS,
        DEFAULT_TOL,
    )
    .unwrap()
}

fn values(report: &ScanReport) -> Vec<f64> {
    report.eps.iter().map(|ep| ep.value).collect()
}

#[test]
fn discriminant_examples() {
    // K = 4 (t = 1, γ = λ = 0, U = 0).
    let unbroken = reduced_cubic(&params(0.5, 1.0, 0.0, 0.0, 0.0));
    assert_eq!(cubic_discriminant(&unbroken), 256.0);
    // K = −4: λ² + γ² − t² = 1.
    let broken = reduced_cubic(&params(0.5, 1.0, 2f64.sqrt(), 0.0, 0.0));
    assert!((cubic_discriminant(&broken) + 256.0).abs() < 1e-10);
}

#[test]
fn discriminant_flips_at_the_hermitian_ep() {
    for u in [-3.0, -1.0, 1.0, 2.0, 4.0] {
        let critical = (1.0f64 + u * u / 16.0).sqrt();
        let below = reduced_cubic(&params(0.5, 1.0, critical - 1e-6, 0.0, u));
        let above = reduced_cubic(&params(0.5, 1.0, critical + 1e-6, 0.0, u));
        assert!(
            below.discriminant() > 0.0 && above.discriminant() < 0.0,
            "U = {u}"
        );
    }
}

#[test]
fn noninteracting_ep_at_hopping_scale() {
    let report = lambda_scan(0.0, 0.0);
    assert_eq!(report.eps.len(), 1);
    let ep = report.eps[0];
    assert!((ep.value - 1.0).abs() < 1e-9);
    assert!(ep.bracket.1 - ep.bracket.0 <= DEFAULT_TOL);
    assert_eq!(ep.kind, EpKind::SelfGenerated);
    assert_eq!(ep.axis, EpAxis::Lambda);
}

#[test]
fn interacting_ep_moves_out() {
    let report = lambda_scan(0.0, 2.0);
    assert_eq!(report.eps.len(), 1);
    assert!((report.eps[0].value - 1.118034).abs() < 1e-6);
    assert!((report.eps[0].value - 1.25f64.sqrt()).abs() < 1e-9);
    assert_eq!(report.eps[0].kind, EpKind::SelfGenerated);
    // Δ = K²(U² + 4K) touches zero at K = 0 without changing sign.
    assert_eq!(report.tangencies.len(), 1);
    assert!((report.tangencies[0].value - 1.0).abs() < 1e-6);
}

#[test]
fn closed_form_agreement_without_gain_loss() {
    for u in [-4.0, -2.0, 0.0, 2.0, 4.0] {
        let report = lambda_scan(0.0, u);
        assert_eq!(report.eps.len(), 1, "U = {u}");
        let expected = (1.0f64 + u * u / 16.0).sqrt();
        assert!(
            (report.eps[0].value - expected).abs() < 10.0 * DEFAULT_TOL,
            "U = {u}"
        );
    }
}

#[test]
fn three_eps_with_gain_loss() {
    let report = lambda_scan(0.1, 2.0);
    let eps = values(&report);
    assert_eq!(eps.len(), 3, "{eps:?}");
    let kinds: Vec<EpKind> = report.eps.iter().map(|ep| ep.kind).collect();
    assert_eq!(
        kinds,
        [
            EpKind::SelfGenerated,
            EpKind::InteractionGenerated,
            EpKind::InteractionGenerated
        ]
    );
    let fixed = params(0.5, 1.0, 0.0, 0.1, 2.0);
    let delta = |x: f64| reduced_cubic(&fixed.with_lambda(x).unwrap()).discriminant();
    // Broken on (λe1, λe2) and above λe3.
    for (x, broken) in [
        (0.5 * eps[0], false),
        (0.5 * (eps[0] + eps[1]), true),
        (0.5 * (eps[1] + eps[2]), false),
        (0.5 * (eps[2] + 2.0), true),
    ] {
        assert_eq!(delta(x) < 0.0, broken, "λ = {x}");
    }
    for ep in &report.eps {
        assert!(delta(ep.value).abs() < DISCRIMINANT_TOL);
        let (lo, hi) = ep.bracket;
        assert!(delta(lo) * delta(hi) < 0.0);
        assert!(hi - lo <= DEFAULT_TOL);
    }
}

#[test]
fn eps_come_in_plus_minus_pairs() {
    let fixed = params(0.5, 1.0, 0.0, 0.1, 2.0);
    let pos = locate_eps(
        &fixed,
        EpAxis::Lambda,
        (0.0, 2.0),
        DEFAULT_COARSE_STEPS,
        DEFAULT_TOL,
    )
    .unwrap();
    let neg = locate_eps(
        &fixed,
        EpAxis::Lambda,
        (-2.0, 0.0),
        DEFAULT_COARSE_STEPS,
        DEFAULT_TOL,
    )
    .unwrap();
    assert_eq!(pos.eps.len(), neg.eps.len());
    for (p, n) in pos.eps.iter().zip(neg.eps.iter().rev()) {
        assert!(
            (p.value + n.value).abs() < DEFAULT_TOL,
            "{} vs {}",
            p.value,
            n.value
        );
    }
}

#[test]
fn only_the_quadratic_ep_survives_at_zero_interaction() {
    for gamma in [0.1, 0.2, 0.5] {
        let report = lambda_scan(gamma, 0.0);
        assert_eq!(report.eps.len(), 1, "γ = {gamma}");
        let expected = (1.0f64 - gamma * gamma).sqrt();
        assert!((report.eps[0].value - expected).abs() < 1e-9, "γ = {gamma}");
    }
}

#[test]
fn gamma_boundary_hits_unity_without_interaction() {
    let located = locate_eps(
        &params(0.5, 1.0, 0.0, 0.0, 0.0),
        EpAxis::Gamma,
        (0.0, 3.0),
        DEFAULT_COARSE_STEPS,
        DEFAULT_TOL,
    )
    .unwrap();
    assert_eq!(located.eps.len(), 1);
    assert!((located.eps[0].value - 1.0).abs() < 1e-9);
}

#[test]
fn discriminant_sign_matches_spectrum() {
    for (gamma, u) in [(0.0, 0.0), (0.0, 2.0), (0.1, 2.0), (0.2, 4.0), (0.3, -1.5)] {
        let fixed = params(0.5, 1.0, 0.0, gamma, u);
        for i in 0..=400 {
            let p = fixed.with_lambda(2.0 * i as f64 / 400.0).unwrap();
            let delta = reduced_cubic(&p).discriminant();
            if delta.abs() < 1e-6 {
                // Too close to an EP for |Im E| to clear 1e-9.
                continue;
            }
            let complex = cardano_spectrum(&p).has_complex_pair(1e-9);
            assert_eq!(
                delta < 0.0,
                complex,
                "γ = {gamma}, U = {u}, λ = {}",
                p.lambda()
            );
        }
    }
}

#[test]
fn self_generated_tags_survive_halving_u() {
    for gamma in [0.1, 0.2] {
        for u in [1.0, 2.0, 3.0, 4.0] {
            let full = lambda_scan(gamma, u);
            let half = lambda_scan(gamma, u / 2.0);
            for ep in full
                .eps
                .iter()
                .filter(|ep| ep.kind == EpKind::SelfGenerated)
            {
                let partner = half
                    .eps
                    .iter()
                    .min_by(|a, b| {
                        (a.value - ep.value)
                            .abs()
                            .total_cmp(&(b.value - ep.value).abs())
                    })
                    .expect("a self-generated EP persists at smaller U");
                assert_eq!(partner.kind, EpKind::SelfGenerated, "γ = {gamma}, U = {u}");
            }
        }
    }
}

#[test]
fn endpoint_on_an_ep_widens_the_scan() {
    let report = scan_eps(
        &params(0.5, 1.0, 0.0, 0.0, 0.0),
        EpAxis::Lambda,
        (0.0, 1.0),
        100,
        DEFAULT_TOL,
    )
    .unwrap();
    assert!(report.widened);
    assert!(report.range.1 > 1.0);
    assert_eq!(values(&report), [1.0]);
}

#[test]
fn ep_pair_inside_one_coarse_cell_is_found() {
    let fixed = params(0.5, 1.0, 0.0, 0.1, 2.0);
    let fine = locate_eps(
        &fixed,
        EpAxis::Lambda,
        (0.0, 2.0),
        DEFAULT_COARSE_STEPS,
        DEFAULT_TOL,
    )
    .unwrap();
    // λe2 ≈ 1.086 and λe3 ≈ 1.123 share the cell (1.05, 1.15).
    let coarse = locate_eps(&fixed, EpAxis::Lambda, (0.05, 2.05), 20, DEFAULT_TOL).unwrap();
    assert_eq!(coarse.eps.len(), 3);
    for (a, b) in fine.eps.iter().zip(&coarse.eps) {
        assert!((a.value - b.value).abs() < 1e-9);
    }
}

#[test]
fn invalid_requests_are_rejected() {
    let fixed = params(0.5, 1.0, 0.0, 0.0, 0.0);
    for (range, steps, tol) in [
        ((1.0, 1.0), 10, 1e-9),
        ((0.0, f64::NAN), 10, 1e-9),
        ((0.0, 1.0), 1, 1e-9),
        ((0.0, 1.0), 10, 0.0),
    ] {
        assert!(matches!(
            locate_eps(&fixed, EpAxis::Lambda, range, steps, tol),
            Err(Error::InvalidScan(_))
        ));
    }
    assert!("mu".parse::<EpAxis>().is_err());
    assert_eq!("gamma".parse::<EpAxis>().unwrap(), EpAxis::Gamma);
}

#[test]
fn alignment_keeps_order_and_drops_far_entries() {
    assert_eq!(
        align(&[0.0, 1.0, 2.0], &[0.01, 2.02], 0.1),
        [(0, 0), (2, 1)]
    );
    assert_eq!(align(&[0.5], &[0.0, 1.0, 0.55], 0.2), [(0, 2)]);
    assert!(align(&[], &[1.0], 0.1).is_empty());
}

#[test]
fn hermitian_boundary_is_one_even_branch() {
    let curves = trace_boundary(
        &params(0.5, 1.0, 0.0, 0.0, 0.0),
        BoundaryPlane::LambdaU,
        (-4.0, 4.0),
        17,
        (0.0, 3.0),
        DEFAULT_TOL,
    )
    .unwrap();
    assert_eq!(curves.len(), 1);
    let points = &curves[0].points;
    assert_eq!(points.len(), 17);
    for (&(u, x), &(u_mirror, x_mirror)) in points.iter().zip(points.iter().rev()) {
        assert_eq!(u, -u_mirror);
        assert_eq!(x, x_mirror);
        assert!((x - (1.0 + u * u / 16.0).sqrt()).abs() < 1e-8);
    }
}

#[test]
fn gain_loss_boundary_has_born_branches() {
    let curves = trace_boundary(
        &params(0.5, 1.0, 0.0, 0.1, 0.0),
        BoundaryPlane::LambdaU,
        (0.0, 6.0),
        13,
        (0.0, 2.0),
        DEFAULT_TOL,
    )
    .unwrap();
    assert_eq!(curves.len(), 3, "{curves:?}");
    assert_eq!(curves[0].points.len(), 13);
    assert_eq!(curves[0].points[0].0, 0.0);
    for curve in &curves[1..] {
        assert!(curve.points[0].0 > 0.0, "born at finite U");
        assert_eq!(curve.points.last().unwrap().0, 6.0);
    }
    for (i, curve) in curves.iter().enumerate() {
        assert_eq!(curve.branch, i);
        assert!(curve.points.windows(2).all(|w| w[0].0 < w[1].0));
    }
    assert!(curves[1].points[0].1 < curves[2].points[0].1);
}

#[test]
fn steep_gamma_boundary_stays_one_branch() {
    // γe falls from √(t²−λ²) at U = 0 to ≈ 0.75 by |U| = 0.1.
    let curves = trace_boundary(
        &params(0.5, 1.0, 0.5, 0.0, 0.0),
        BoundaryPlane::GammaU,
        (-4.0, 4.0),
        81,
        (0.0, 3.0),
        DEFAULT_TOL,
    )
    .unwrap();
    assert_eq!(curves.len(), 1, "{curves:?}");
    assert_eq!(curves[0].points.len(), 81);
    assert!((curves[0].points[40].1 - 0.75f64.sqrt()).abs() < 1e-9);
}
