use horoslab::measure::{volume_contour, MeridianContour};
use horoslab::tangency::{admissible_tangencies, algebraic_roots, discriminant, Window};
use horoslab::{FamilyParams, Quadrature, Regime};
use proptest::prelude::*;

fn any_family() -> impl Strategy<Value = FamilyParams> {
    prop_oneof![
        (-0.499..3.0f64).prop_map(|a| FamilyParams::new(Regime::EqualOne, 1.0, a).unwrap()),
        (0.0..0.99f64, -30.0..3.0f64).prop_map(|(h, a)| FamilyParams::new(Regime::SubOne, h, a).unwrap()),
        (1.01..8.0f64, 0.0..1.0f64, -0.5..3.0f64).prop_map(|(h, t, a): (f64, f64, f64)| {
            let a_min = horoslab::profile::super_one_a_min(h);
            // a ∈ (a_min, 0) half the time, positive otherwise
            let a = if a < 0.0 { a_min + (0.0 - a_min) * (0.001 + 0.998 * t) } else { a };
            FamilyParams::new(Regime::SuperOne, h, a).unwrap()
        }),
    ]
}

fn admissible_family() -> impl Strategy<Value = FamilyParams> {
    prop_oneof![
        (-0.2499..-1e-3f64).prop_map(|a| FamilyParams::new(Regime::EqualOne, 1.0, a).unwrap()),
        (0.05..0.95f64, 0.001..0.999f64)
            .prop_map(|(h, t)| FamilyParams::new(Regime::SubOne, h, -0.25 / h * t).unwrap()),
        (1.05..6.0f64, 0.001..0.999f64)
            .prop_map(|(h, t)| FamilyParams::new(Regime::SuperOne, h, -0.25 / h * t).unwrap()),
    ]
}

fn window_for(fp: &FamilyParams) -> Window {
    match fp.period() {
        Some(p) => Window::new(-p, 2.0 * p).unwrap(),
        None => Window::new(-20.0, 20.0).unwrap(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn roots_exist_iff_discriminant_nonnegative(fp in any_family()) {
        let roots = algebraic_roots(&fp, window_for(&fp));
        prop_assert_eq!(roots.is_empty(), discriminant(&fp) < 0.0, "H={} a={}", fp.h(), fp.a());
    }

    #[test]
    fn ode_holds_along_profiles(fp in any_family(), s in -3.0..3.0f64) {
        let scale = 1.0 + fp.u_squared(s).powi(2) + fp.u_squared_rate(s).powi(2);
        prop_assert!(horoslab::ode_residual(&fp, s) <= 1e-9 * scale);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn tangencies_are_vertical(fp in admissible_family()) {
        for t in admissible_tangencies(&fp, window_for(&fp)).unwrap() {
            let lambda = horoslab::lambda_of_s(&fp, t.s, 1e-12).unwrap();
            let p = fp.jet(t.s).at_lambda(lambda);
            prop_assert!(p.dx_ds.abs() <= 1e-8 * p.z.max(1.0));
            prop_assert!(p.dz_ds.abs() >= 1e-6);
            let angle = p.dz_ds.abs().atan2(p.dx_ds.abs());
            prop_assert!((angle - std::f64::consts::FRAC_PI_2).abs() <= 1e-6);
            prop_assert!((p.z - t.height).abs() <= 1e-9 * p.z);
        }
    }

    #[test]
    fn onduloid_tangencies_repeat_each_period(fp in admissible_family(), start in -2.0..2.0f64) {
        if let Some(p) = fp.period() {
            let w = Window::new(start, start + p).unwrap();
            let shifted = Window::new(start + p, start + 2.0 * p).unwrap();
            let a: Vec<f64> = admissible_tangencies(&fp, w).unwrap().iter().map(|t| t.s + p).collect();
            let b: Vec<f64> = admissible_tangencies(&fp, shifted).unwrap().iter().map(|t| t.s).collect();
            // ignore roots within merge distance of the window edges
            let keep = |s: &&f64| (**s - start - p).abs() > 1e-8 && (**s - start - 2.0 * p).abs() > 1e-8;
            let a: Vec<&f64> = a.iter().filter(keep).collect();
            let b: Vec<&f64> = b.iter().filter(keep).collect();
            prop_assert_eq!(a.len(), b.len());
            for (x, y) in a.iter().zip(&b) {
                prop_assert!((**x - **y).abs() <= 1e-9 * x.abs().max(1.0));
            }
        }
    }

    #[test]
    fn measures_are_homothety_invariant(fp in admissible_family(), k in 0.05..20.0f64) {
        let ts = admissible_tangencies(&fp, window_for(&fp)).unwrap();
        let ups: Vec<_> = ts.iter().filter(|t| t.direction == horoslab::Direction::Up).collect();
        prop_assume!(ups.len() >= 2);
        let q = Quadrature::default();
        let c = MeridianContour::tube(fp, ups[0].s, ups[1].s, 0.0, &q).unwrap();
        let scaled = c.scaled(k).unwrap();
        let (v0, v1) = (volume_contour(&c, 1e-12).unwrap(), volume_contour(&scaled, 1e-12).unwrap());
        let (a0, a1) = (c.free_area(1e-12).unwrap(), scaled.free_area(1e-12).unwrap());
        prop_assert!((v0 - v1).abs() <= 1e-8 * v0.max(1e-3));
        prop_assert!((a0 - a1).abs() <= 1e-8 * a0);
    }
}
