use monogenic::bessel::{bessel_j, BesselOrder};
use monogenic::cli::parse_point_list;
use monogenic::gridfile::{encode_grid, parse_grid, Encoding};
use monogenic::kernels::{
    chi, kernel_s_closed, kernel_s_integral, KernelKind, Sign, StripGeometry,
};
use monogenic::radial::{radial_integral, Channels, RadialProfile};
use monogenic::spectral::{
    dft, dirac_residual, hardy_split, idft, plancherel_check, propagate_slice, GridFunction,
};
use monogenic::{Multivector, ParaVector};
use num_complex::Complex64;
use proptest::prelude::*;

fn multivector(m: usize) -> impl Strategy<Value = Multivector> {
    prop::collection::vec((-2.0..2.0f64, -2.0..2.0f64), 1 << m).prop_map(move |c| {
        let c: Vec<Complex64> = c
            .into_iter()
            .map(|(re, im)| Complex64::new(re, im))
            .collect();
        Multivector::from_coeffs(m, &c).unwrap()
    })
}

fn triple() -> impl Strategy<Value = (Multivector, Multivector, Multivector)> {
    (1usize..=4).prop_flat_map(|m| (multivector(m), multivector(m), multivector(m)))
}

fn paravector(m: usize, x0: f64, spread: f64) -> impl Strategy<Value = ParaVector> {
    (-x0..x0, prop::collection::vec(-spread..spread, m))
        .prop_map(|(x0, v)| ParaVector::new(x0, &v).unwrap())
}

fn grid(m: usize, n: usize) -> impl Strategy<Value = GridFunction> {
    prop::collection::vec(multivector(m), n.pow(m as u32)).prop_map(move |samples| {
        GridFunction::new(
            m,
            vec![n; m],
            vec![0.5; m],
            vec![-(n as f64) / 4.0; m],
            samples,
        )
        .unwrap()
    })
}

fn small_grid() -> impl Strategy<Value = GridFunction> {
    prop_oneof![grid(1, 16), grid(2, 8), grid(3, 4)]
}

fn grid_pair() -> impl Strategy<Value = (GridFunction, GridFunction)> {
    prop_oneof![
        (grid(1, 16), grid(1, 16)),
        (grid(2, 8), grid(2, 8)),
        (grid(3, 4), grid(3, 4))
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_is_associative((a, b, c) in triple()) {
        let scale = a.norm() * b.norm() * c.norm() + 1.0;
        prop_assert!(((a * b) * c - a * (b * c)).norm() <= 1e-13 * scale);
    }

    #[test]
    fn conjugation_is_an_anti_involution((a, b, _c) in triple()) {
        prop_assert_eq!(a.conjugate().conjugate(), a);
        let scale = a.norm() * b.norm() + 1.0;
        prop_assert!(((a * b).conjugate() - b.conjugate() * a.conjugate()).norm() <= 1e-13 * scale);
    }

    #[test]
    fn scalar_part_is_cyclic((a, b, _c) in triple()) {
        let scale = a.norm() * b.norm() + 1.0;
        prop_assert!(((a * b).scalar_part() - (b * a).scalar_part()).norm() <= 1e-13 * scale);
    }

    #[test]
    fn paravector_times_conjugate_is_norm_squared(
        x in (1usize..=4).prop_flat_map(|m| paravector(m, 5.0, 5.0))
    ) {
        let p = x.to_multivector() * x.conjugate().to_multivector();
        let n2 = x.norm() * x.norm();
        prop_assert!((p.scalar_part().re - n2).abs() <= 1e-13 * (1.0 + n2));
        prop_assert!(p.non_scalar_part().norm() <= 1e-13 * (1.0 + n2));
        prop_assert!(p.max_imaginary() == 0.0);
    }

    #[test]
    fn bessel_recurrence(twice_k in 1i32..=14, t in 0.1f64..50.0) {
        let k = twice_k as f64 / 2.0;
        let lo = bessel_j(BesselOrder::from_twice(twice_k - 2).unwrap(), t).unwrap();
        let mid = bessel_j(BesselOrder::from_twice(twice_k).unwrap(), t).unwrap();
        let hi = bessel_j(BesselOrder::from_twice(twice_k + 2).unwrap(), t).unwrap();
        let scale = 1.0f64.max(2.0 * k / t * mid.abs());
        prop_assert!((lo + hi - 2.0 * k / t * mid).abs() <= 1e-10 * scale);
    }

    #[test]
    fn bessel_envelope(twice_k in -1i32..=16, t in 100.0f64..1000.0) {
        let j = bessel_j(BesselOrder::from_twice(twice_k).unwrap(), t).unwrap();
        prop_assert!(j.abs() * t.sqrt() <= 1.0);
    }

    #[test]
    fn chi_projections(xi in (1usize..=4).prop_flat_map(|m| prop::collection::vec(-30.0f64..30.0, m))) {
        prop_assume!(xi.iter().map(|c| c * c).sum::<f64>() > 1e-6);
        let m = xi.len();
        let p = chi(Sign::Plus, &xi).unwrap();
        let q = chi(Sign::Minus, &xi).unwrap();
        prop_assert!((p * q).norm() <= 1e-14);
        prop_assert!((p * p - p).norm() <= 1e-14);
        prop_assert!((q * q - q).norm() <= 1e-14);
        prop_assert!((p + q - Multivector::one(m).unwrap()).norm() <= 1e-14);
    }

    #[test]
    fn kernels_are_paravector_valued(
        (w, x) in (1usize..=4).prop_flat_map(|m| (paravector(m, 0.8, 3.0), paravector(m, 0.8, 3.0))),
        pick in 0usize..7,
    ) {
        let g = StripGeometry::new(w.dim(), 1.0).unwrap();
        let v = KernelKind::ALL[pick].evaluate(&g, &w, &x, 1e-10).unwrap().value;
        prop_assert!(v.non_paravector_magnitude() <= 1e-12);
        prop_assert!(v.max_imaginary() <= 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn radial_vector_channel_vanishes_on_axis(m in 1usize..=4, z0 in -1.5f64..1.5, pick in 0usize..3) {
        let profile = [
            RadialProfile::Ball { radius: std::f64::consts::PI },
            RadialProfile::ExpDecay { rate: 2.0 },
            RadialProfile::BergmanWeight { a: 1.0 },
        ][pick];
        let est = radial_integral(m, &profile, Channels::BOTH, z0, 0.0, 1e-10).unwrap();
        prop_assert_eq!(est.pair.v, 0.0);
    }

    #[test]
    fn radial_error_estimate_is_honest(m in 2usize..=3, z0 in -1.5f64..1.5, u in 0.0f64..6.0, pick in 0usize..3) {
        let profile = [
            RadialProfile::Ball { radius: std::f64::consts::PI },
            RadialProfile::ExpDecay { rate: 2.0 },
            RadialProfile::BergmanWeight { a: 1.0 },
        ][pick];
        let coarse = radial_integral(m, &profile, Channels::BOTH, z0, u, 1e-8).unwrap();
        let fine = radial_integral(m, &profile, Channels::BOTH, z0, u, 5e-9).unwrap();
        let change = (coarse.pair.s - fine.pair.s).abs().max((coarse.pair.v - fine.pair.v).abs());
        prop_assert!(change <= coarse.abs_error + 1e-15, "change {change:e} vs estimate {:e}", coarse.abs_error);
    }

    #[test]
    fn szego_integral_matches_closed_form(
        (w, x) in (2usize..=3).prop_flat_map(|m| (paravector(m, 0.9, 2.5), paravector(m, 0.9, 2.5)))
    ) {
        let g = StripGeometry::new(w.dim(), 1.0).unwrap();
        let closed = kernel_s_closed(&g, &w, &x).unwrap();
        let integral = kernel_s_integral(&g, &w, &x, 1e-13).unwrap().value;
        prop_assert!((closed - integral).norm() <= 1e-8 * closed.norm());
    }

    #[test]
    fn kernel_sections_are_monogenic(
        (w, x) in (2usize..=3).prop_flat_map(|m| (paravector(m, 0.4, 1.5), paravector(m, 0.4, 1.0))),
        pick in 0usize..7,
    ) {
        let kind = KernelKind::ALL[pick];
        let g = StripGeometry::new(w.dim(), 1.0).unwrap();
        let field = |p: &ParaVector| Ok(kind.evaluate(&g, p, &x, 1e-14)?.value);
        let coarse = dirac_residual(field, &w, 1e-2).unwrap();
        let fine = dirac_residual(field, &w, 5e-3).unwrap();
        let ratio = coarse / fine;
        prop_assert!((3.8..=4.2).contains(&ratio), "{} ratio {ratio}", kind.label());
    }

    #[test]
    fn hardy_split_is_a_projection_pair(f in small_grid()) {
        let scale = f.max_norm();
        let (p, q) = hardy_split(&f);
        prop_assert!(p.zip_with(&q, |a, b| a + b).unwrap().max_difference(&f).unwrap() <= 1e-12 * scale);
        let (pp, pq) = hardy_split(&p);
        let (qp, qq) = hardy_split(&q);
        prop_assert!(pp.max_difference(&p).unwrap() <= 1e-12 * scale);
        prop_assert!(qq.max_difference(&q).unwrap() <= 1e-12 * scale);
        prop_assert!(pq.max_norm() <= 1e-12 * scale);
        prop_assert!(qp.max_norm() <= 1e-12 * scale);
    }

    #[test]
    fn plancherel_and_round_trip((f, g) in grid_pair()) {
        prop_assert!(plancherel_check(&f, &g).unwrap() <= 1e-10);
        prop_assert!(idft(&dft(&f)).max_difference(&f).unwrap() <= 1e-13 * f.max_norm());
    }

    #[test]
    fn slice_propagation_semigroup(f in small_grid(), x0 in -0.45f64..0.45, y0 in -0.45f64..0.45) {
        let g = StripGeometry::new(f.m, 1.0).unwrap();
        let direct = propagate_slice(&f, x0 + y0, &g).unwrap();
        let stepped = propagate_slice(&propagate_slice(&f, y0, &g).unwrap(), x0, &g).unwrap();
        prop_assert!(stepped.max_difference(&direct).unwrap() <= 1e-10 * direct.max_norm());
    }

    #[test]
    fn grid_files_round_trip(f in small_grid(), binary in any::<bool>()) {
        let enc = if binary { Encoding::F64le } else { Encoding::Json };
        prop_assert_eq!(parse_grid(&encode_grid(&f, enc).unwrap()).unwrap(), f);
    }

    #[test]
    fn point_lists_round_trip(points in (1usize..=4).prop_flat_map(|m| prop::collection::vec(paravector(m, 1e3, 1e3), 0..6))) {
        let m = points.first().map_or(2, |p| p.dim());
        let text: String = points
            .iter()
            .map(|p| p.components().iter().map(|c| format!("{c:?}")).collect::<Vec<_>>().join(", ") + "\n")
            .collect();
        prop_assert_eq!(parse_point_list(&text, m).unwrap(), points);
    }
}
