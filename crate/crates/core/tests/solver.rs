mod common;

use common::*;
use horoslab::solver::{dome_candidates, floating_spheres, tube_for_slab, CandidateKind, DomeSide};
use horoslab::{FamilyParams, Regime, SlabSpec};

/// Height ratio of the two upward tangencies of an H = 1 profile, found by
/// sign scan and Gauss–Legendre λ.
fn h1_ratio_oracle(a: f64) -> Option<f64> {
    let fp = FamilyParams::new(Regime::EqualOne, 1.0, a).ok()?;
    let ups: Vec<f64> =
        tangency_scan(&fp, -3.0, 3.0, 3000).into_iter().filter(|&s| fp.jet(s).vertical_rate() > 0.0).collect();
    if ups.len() != 2 {
        return None;
    }
    let (_, z0) = point_oracle(&fp, 0.0, ups[0]);
    let (_, z1) = point_oracle(&fp, 0.0, ups[1]);
    Some(z1 / z0)
}

#[test]
fn h1_tubes_match_dense_scan() {
    let slab = SlabSpec::new(1.0, 2.0).unwrap();
    let n = 10_000;
    let mut crossings = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for i in 1..n {
        let a = -0.25 + 0.25 * i as f64 / n as f64;
        match h1_ratio_oracle(a) {
            Some(r) => {
                if let Some((pa, pr)) = prev {
                    if (pr - 2.0).signum() != (r - 2.0).signum() {
                        crossings.push(0.5 * (pa + a));
                    }
                }
                prev = Some((a, r));
            }
            None => prev = None,
        }
    }
    let tubes = tube_for_slab(Regime::EqualOne, 1.0, &slab, 1e-11);
    assert_eq!(tubes.len(), crossings.len());
    for (t, a_scan) in tubes.iter().zip(&crossings) {
        let CandidateKind::Tube { params, heights, .. } = t.kind else { panic!() };
        assert!((params.a() - a_scan).abs() <= 0.25 / n as f64, "{} vs {a_scan}", params.a());
        assert!((heights.0 - 1.0).abs() <= 1e-8 && (heights.1 - 2.0).abs() <= 1e-8);
    }
    // frozen: the single match found on the dense scan
    assert_eq!(crossings.len(), 1);
    let CandidateKind::Tube { params, .. } = tubes[0].kind else { panic!() };
    assert!((params.a() - (-0.208634)).abs() < 1e-6);
}

#[test]
fn candidates_are_invariant_under_slab_rescaling() {
    let base = SlabSpec::new(1.0, 2.0).unwrap();
    let big = base.scaled(3.5).unwrap();
    for (regime, h) in [(Regime::EqualOne, 1.0), (Regime::SubOne, 0.5), (Regime::SuperOne, 1.2)] {
        let a = tube_for_slab(regime, h, &base, 1e-11);
        let b = tube_for_slab(regime, h, &big, 1e-11);
        assert_eq!(a.len(), b.len());
        assert!(!a.is_empty());
        for (x, y) in a.iter().zip(&b) {
            assert!((x.free_area - y.free_area).abs() <= 1e-8 * x.free_area);
            assert!((x.volume - y.volume).abs() <= 1e-8 * x.volume);
            assert!((y.homothety / x.homothety - 3.5).abs() <= 1e-8);
        }
    }
    let (d0, d1) = (dome_candidates(&base, 16), dome_candidates(&big, 16));
    for (x, y) in d0.iter().zip(&d1) {
        assert!((x.free_area - y.free_area).abs() <= 1e-8 * x.free_area);
        assert!((x.volume - y.volume).abs() <= 1e-8 * x.volume);
    }
}

#[test]
fn domes_stay_in_the_slab() {
    let slab = SlabSpec::new(1.0, 2.0).unwrap();
    for d in dome_candidates(&slab, 64) {
        let CandidateKind::Dome { side, radius_ratio, .. } = d.kind else { panic!() };
        match side {
            DomeSide::Lower => assert!(1.0 + radius_ratio <= 2.0 + 1e-12),
            DomeSide::Upper => assert!(2.0 - 2.0 * radius_ratio >= 1.0 - 1e-12),
        }
        assert!(d.free_area > 0.0 && d.volume > 0.0);
    }
}

#[test]
fn sphere_area_is_volume_derivative() {
    let slab = SlabSpec::new(1.0, 4.0).unwrap();
    let spheres = floating_spheres(&slab, 2048);
    for w in spheres.windows(3).step_by(64) {
        let rho = |c: &horoslab::solver::Candidate| match c.kind {
            CandidateKind::FloatingSphere { rho, .. } => rho,
            _ => unreachable!(),
        };
        let dv = (w[2].volume - w[0].volume) / (rho(&w[2]) - rho(&w[0]));
        assert!((dv - w[1].free_area).abs() <= 1e-4 * w[1].free_area.max(1e-2));
    }
}
