//! Discrete Fekete problems: energies, the analytic three-point solution,
//! four-point families, separation constants and support membership.

use riesz_sphere::equilibrium::{critical_t, AxialPointField, Pole};
use riesz_sphere::error::Error;
use riesz_sphere::fekete::{
    classify_four_point, discrete_energy, fekete_in_extended_support, four_point_best,
    four_point_family_energy, hyper_singular_bound, hyper_singular_g, kappa, minimize_fekete,
    monotonicity_check, separation_constant, three_point_intercept, Configuration,
    ConvexAxialField, ExternalFieldSpec, FamilyKind, FeketeOptions, FourPointFamily,
    SignedMeasureSpec,
};
use riesz_sphere::sphere_core::RieszParameter;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}

fn s_param(s: f64) -> RieszParameter {
    RieszParameter::riesz(2, s).unwrap()
}

fn quick_opts(multistarts: usize) -> FeketeOptions {
    FeketeOptions { multistarts, ..FeketeOptions::default() }
}

/// Regular tetrahedron with its apex at the south pole (ring at +1/3).
fn tetrahedron() -> Configuration {
    let r = (8.0f64 / 9.0).sqrt();
    let t = 1.0 / 3.0;
    let mut pts = vec![vec![0.0, 0.0, -1.0]];
    for k in 0..3 {
        let th = 2.0 * std::f64::consts::PI * k as f64 / 3.0;
        pts.push(vec![r * th.cos(), r * th.sin(), t]);
    }
    Configuration::new(pts).unwrap()
}

fn square(t: f64) -> Configuration {
    let r = (1.0 - t * t).sqrt();
    Configuration::new(vec![
        vec![r, 0.0, t],
        vec![-r, 0.0, t],
        vec![0.0, r, t],
        vec![0.0, -r, t],
    ])
    .unwrap()
}

fn two_pairs(t: f64, tau: f64) -> Configuration {
    let rt = (1.0 - t * t).sqrt();
    let rtau = (1.0 - tau * tau).sqrt();
    Configuration::new(vec![
        vec![rt, 0.0, t],
        vec![-rt, 0.0, t],
        vec![0.0, rtau, tau],
        vec![0.0, -rtau, tau],
    ])
    .unwrap()
}

// ---- configurations and fields -------------------------------------------

#[test]
fn configuration_guards() {
    // Not unit.
    assert!(matches!(
        Configuration::new(vec![vec![0.0, 0.0, 1.1], vec![0.0, 0.0, -1.0]]),
        Err(Error::Domain(_))
    ));
    // Coincident points.
    assert!(matches!(
        Configuration::new(vec![vec![0.0, 0.0, 1.0], vec![0.0, 0.0, 1.0]]),
        Err(Error::Domain(_))
    ));
    // Too few points / too small ambient space.
    assert!(matches!(Configuration::new(vec![vec![0.0, 0.0, 1.0]]), Err(Error::Domain(_))));
    assert!(matches!(
        Configuration::new(vec![vec![1.0, 0.0], vec![-1.0, 0.0]]),
        Err(Error::Domain(_))
    ));
    // Mixed dimensions.
    assert!(matches!(
        Configuration::new(vec![vec![0.0, 0.0, 1.0], vec![1.0, 0.0, 0.0, 0.0]]),
        Err(Error::Domain(_))
    ));

    let tet = tetrahedron();
    assert_eq!(tet.n(), 4);
    assert_eq!(tet.ambient(), 3);
    assert_eq!(tet.dim(), 2);
    // All six pairwise distances equal the tetrahedron edge.
    let edge = (8.0f64 / 3.0).sqrt();
    for j in 0..4 {
        for k in 0..4 {
            if j != k {
                assert!((tet.dist(j, k) - edge).abs() < 1e-14);
            }
        }
    }
    assert!((tet.delta() - edge).abs() < 1e-14);
    let alts = tet.altitudes();
    assert_eq!(alts[0], -1.0);
    assert!((alts[1] - 1.0 / 3.0).abs() < 1e-15);
}

#[test]
fn external_field_guards_and_evaluation() {
    let p = s_param(1.0);
    // Sources strictly inside the sphere are rejected.
    assert!(matches!(
        ExternalFieldSpec::terms(vec![(1.0, vec![0.0, 0.0, 0.5])]),
        Err(Error::Domain(_))
    ));
    assert!(matches!(
        ExternalFieldSpec::terms(vec![(f64::NAN, vec![0.0, 0.0, 2.0])]),
        Err(Error::Domain(_))
    ));

    // A single axial term evaluates to q/|x - Rp|.
    let q = ExternalFieldSpec::terms(vec![(-5.0, vec![0.0, 0.0, 2.0])]).unwrap();
    let x = [0.6, 0.0, 0.8];
    let rho = (0.36f64 + 1.44).sqrt();
    assert!(close(q.eval(&x, &p).unwrap(), -5.0 / rho, 1e-15));

    // Evaluation at a source point is an error, not infinity.
    let on_sphere = ExternalFieldSpec::terms(vec![(1.0, vec![0.0, 0.0, 1.0])]).unwrap();
    assert!(matches!(on_sphere.eval(&[0.0, 0.0, 1.0], &p), Err(Error::Domain(_))));

    // The axial wrapper matches the equivalent term field.
    let axial = AxialPointField::new(p, -5.0, 2.0, Pole::North).unwrap();
    let wrapped = ExternalFieldSpec::from_axial(&axial, 3);
    for u in [-0.9f64, 0.0, 0.7] {
        let pt = [(1.0 - u * u).sqrt(), 0.0, u];
        let direct = -5.0 / (4.0f64 - 4.0 * u + 1.0).sqrt();
        assert!(close(wrapped.eval(&pt, &p).unwrap(), direct, 1e-14));
    }

    // Opaque altitude field reads the last coordinate.
    let alt = ExternalFieldSpec::altitude(|u| 3.0 * u * u);
    assert!(close(alt.eval(&[0.0, 1.0, 0.0], &p).unwrap(), 0.0, 1e-15));
    assert!(close(alt.eval(&[0.6, 0.0, -0.8], &p).unwrap(), 3.0 * 0.64, 1e-15));
}

#[test]
fn discrete_energy_values() {
    let p = s_param(1.0);
    let none = ExternalFieldSpec::none();

    // Antipodal pair: two ordered pairs at distance 2.
    let pair =
        Configuration::new(vec![vec![0.0, 0.0, 1.0], vec![0.0, 0.0, -1.0]]).unwrap();
    assert!(close(discrete_energy(&pair, &none, &p).unwrap(), 1.0, 1e-15));

    // Equatorial square: 8 ordered side pairs at sqrt(2), 4 diagonal at 2.
    let sq = discrete_energy(&square(0.0), &none, &p).unwrap();
    assert!(close(sq, 7.656_854_249_492_380_2, 1e-14));
    assert!(close(sq, 4.0 * 2.0f64.sqrt() + 2.0, 1e-14));

    // Regular tetrahedron: 12 ordered pairs at edge sqrt(8/3).
    let tet = discrete_energy(&tetrahedron(), &none, &p).unwrap();
    assert!(close(tet, 7.348_469_228_349_534_3, 1e-14));
    assert!(close(tet, 12.0 * (3.0f64 / 8.0).sqrt(), 1e-14));

    // Logarithmic kernel: antipodal pair gives -2 ln 2.
    let logp = RieszParameter::logarithmic(2).unwrap();
    assert!(close(
        discrete_energy(&pair, &none, &logp).unwrap(),
        -2.0 * 2.0f64.ln(),
        1e-15
    ));

    // Field terms enter as 2(n-1) sum Q(x_j).
    let field = ExternalFieldSpec::terms(vec![(0.5, vec![0.0, 0.0, 2.0])]).unwrap();
    let with_field = discrete_energy(&pair, &field, &p).unwrap();
    assert!(close(with_field, 1.0 + 2.0 * 0.5 * (1.0 + 1.0 / 3.0), 1e-14));

    // A configuration point sitting on a source is an error.
    let source_on_sphere = ExternalFieldSpec::terms(vec![(1.0, vec![0.0, 0.0, 1.0])]).unwrap();
    assert!(matches!(
        discrete_energy(&pair, &source_on_sphere, &p),
        Err(Error::Domain(_))
    ));
}

#[test]
fn energy_invariant_under_orthogonal_maps() {
    // Rotate the configuration together with the field sources; distances
    // are preserved, so the energy must agree to roundoff.
    let p = s_param(1.5);
    let rot = |x: &[f64]| -> Vec<f64> {
        let (a, b) = (0.7f64, 0.3f64);
        // Givens rotations in the (0,2) and (1,2) planes.
        let y = [
            a.cos() * x[0] + a.sin() * x[2],
            x[1],
            -a.sin() * x[0] + a.cos() * x[2],
        ];
        vec![y[0], b.cos() * y[1] + b.sin() * y[2], -b.sin() * y[1] + b.cos() * y[2]]
    };
    let field = ExternalFieldSpec::terms(vec![
        (0.7, vec![0.0, 0.0, 2.0]),
        (-0.3, vec![1.2, 0.0, 0.9]),
    ])
    .unwrap();
    let tet = tetrahedron();
    let e0 = discrete_energy(&tet, &field, &p).unwrap();

    let rot_pts: Vec<Vec<f64>> = tet.points().iter().map(|x| rot(x)).collect();
    let rot_field = ExternalFieldSpec::terms(vec![
        (0.7, rot(&[0.0, 0.0, 2.0])),
        (-0.3, rot(&[1.2, 0.0, 0.9])),
    ])
    .unwrap();
    let e1 = discrete_energy(&Configuration::new(rot_pts).unwrap(), &rot_field, &p).unwrap();
    assert!((e0 - e1).abs() <= 1e-12 * e0.abs());
}

// ---- optimizer -------------------------------------------------------------

#[test]
fn minimizer_small_configurations() {
    let p = s_param(1.0);
    let none = ExternalFieldSpec::none();

    // n = 2: the antipodal pair.
    let r2 = minimize_fekete(2, &none, &p, &quick_opts(6)).unwrap();
    assert!(r2.converged);
    assert!((r2.configuration.delta() - 2.0).abs() < 1e-9);
    assert!(close(r2.energy, 1.0, 1e-12));

    // n = 4: the regular tetrahedron.
    let r4 = minimize_fekete(4, &none, &p, &quick_opts(12)).unwrap();
    assert!(close(r4.energy, 7.348_469_228_349_534_3, 1e-9));
    assert!((r4.configuration.delta() - (8.0f64 / 3.0).sqrt()).abs() < 1e-6);

    // n = 6: the octahedron, energy 12 sqrt(2) + 3.
    let r6 = minimize_fekete(6, &none, &p, &quick_opts(12)).unwrap();
    assert!(close(r6.energy, 12.0 * 2.0f64.sqrt() + 3.0, 1e-8));

    // Logarithmic pair.
    let logp = RieszParameter::logarithmic(2).unwrap();
    let rl = minimize_fekete(2, &none, &logp, &quick_opts(6)).unwrap();
    assert!((rl.configuration.delta() - 2.0).abs() < 1e-9);
    assert!(close(rl.energy, -2.0 * 2.0f64.ln(), 1e-12));

    // Determinism: identical options reproduce the energy bit for bit.
    let again = minimize_fekete(4, &none, &p, &quick_opts(12)).unwrap();
    assert_eq!(r4.energy.to_bits(), again.energy.to_bits());

    assert!(matches!(minimize_fekete(1, &none, &p, &quick_opts(4)), Err(Error::Domain(_))));

    // JSON shape.
    let v = r4.to_json(&p, &none);
    for key in ["d", "s", "field", "points", "energy", "delta"] {
        assert!(v.get(key).is_some(), "missing key {key}");
    }
}

// ---- analytic three-point solution ----------------------------------------

#[test]
fn three_point_intercept_values() {
    // q = 1/2 from R = 1 gives t0 = -1/3 for every s: both sides of the
    // intercept equation reduce to s (8/3)^{-s/2-1}.
    for s in [0.5, 1.0, 2.0] {
        let f = ConvexAxialField::point_charge(0.5, s).unwrap();
        let sol = three_point_intercept(&f, &s_param(s), 1.0).unwrap();
        assert!((sol.t0 + 1.0 / 3.0).abs() <= 1e-10, "s={s}: t0={}", sol.t0);
        assert!(sol.residual <= 1e-12);
    }

    // Frozen reference point.
    let f = ConvexAxialField::point_charge(1.0, 1.0).unwrap();
    let sol = three_point_intercept(&f, &s_param(1.0), 2.0).unwrap();
    assert!((sol.t0 - (-0.350_993_806_424_215_5)).abs() <= 1e-12);
    assert!(close(sol.energy, 8.441_414_154_083_760, 1e-13));
    assert!(sol.residual <= 1e-12);
    // Energy recomputed from the returned altitude.
    let w = 1.0 - 2.0 * 2.0 * sol.t0 + 4.0;
    let direct = 6.0 * (3.0 * (1.0 - sol.t0 * sol.t0)).powf(-0.5) + 12.0 * f.value(w);
    assert!(close(sol.energy, direct, 1e-14));

    // Vanishing charge: the triangle returns to the equator.
    let weak = ConvexAxialField::point_charge(1e-12, 1.0).unwrap();
    let sol0 = three_point_intercept(&weak, &s_param(1.0), 2.0).unwrap();
    assert!(sol0.t0.abs() <= 1e-9);

    // General convex decreasing field through the closure API.
    let gauss = ConvexAxialField::new(|w| (-w).exp(), |w| -(-w).exp());
    let sg = three_point_intercept(&gauss, &s_param(1.0), 1.5).unwrap();
    assert!(sg.t0 > -1.0 && sg.t0 < 0.0);
    assert!(sg.residual <= 1e-12);

    // Guards.
    assert!(matches!(ConvexAxialField::point_charge(0.0, 1.0), Err(Error::Domain(_))));
    assert!(matches!(ConvexAxialField::point_charge(-1.0, 1.0), Err(Error::Domain(_))));
    assert!(matches!(ConvexAxialField::point_charge(1.0, -1.0), Err(Error::Domain(_))));
    let f = ConvexAxialField::point_charge(1.0, 1.0).unwrap();
    assert!(matches!(three_point_intercept(&f, &s_param(1.0), 0.5), Err(Error::Domain(_))));
    let logp = RieszParameter::logarithmic(2).unwrap();
    assert!(matches!(three_point_intercept(&f, &logp, 2.0), Err(Error::Domain(_))));
}

#[test]
fn three_point_matches_optimizer() {
    // Cross-validате the analytic intercept against the unconstrained
    // 3-point minimizer: equilateral triangle perpendicular to the axis at
    // altitude t0.
    let p = s_param(1.0);
    let f = ConvexAxialField::point_charge(1.0, 1.0).unwrap();
    let sol = three_point_intercept(&f, &p, 2.0).unwrap();

    let field = ExternalFieldSpec::terms(vec![(1.0, vec![0.0, 0.0, 2.0])]).unwrap();
    let run = minimize_fekete(3, &field, &p, &quick_opts(12)).unwrap();
    assert!(close(run.energy, sol.energy, 1e-9));
    for u in run.configuration.altitudes() {
        assert!((u - sol.t0).abs() <= 1e-6, "altitude {u} vs t0 {}", sol.t0);
    }
    // Equilateral: all pairwise distances agree.
    let d01 = run.configuration.dist(0, 1);
    for (j, k) in [(0, 2), (1, 2)] {
        assert!((run.configuration.dist(j, k) - d01).abs() <= 1e-8);
    }

    // q = 1/2 at R = 1: triangle plus source forms a regular tetrahedron,
    // so the weighted 3-point energy equals the tetrahedron energy.
    let half = ConvexAxialField::point_charge(0.5, 1.0).unwrap();
    let tet = three_point_intercept(&half, &p, 1.0).unwrap();
    assert!(close(tet.energy, 7.348_469_228_349_534_3, 1e-12));
}

// ---- four-point families ----------------------------------------------------

#[test]
fn four_point_family_matches_direct_energy() {
    // Each family formula must reproduce the discrete weighted energy of an
    // explicitly constructed configuration under the same point charge.
    let cases = [(1.0, 2.0, 1.0), (1.0 / 3.0, 1.5, 2.5), (2.0, 1.2, 0.5)];
    for &(q, big_r, s) in &cases {
        let p = s_param(s);
        let field = ExternalFieldSpec::terms(vec![(q, vec![0.0, 0.0, big_r])]).unwrap();

        // A: south apex plus ring.
        for t in [-0.5f64, 0.1, 0.6] {
            let mut pts = vec![vec![0.0, 0.0, -1.0]];
            let r = (1.0 - t * t).sqrt();
            for k in 0..3 {
                let th = 2.0 * std::f64::consts::PI * k as f64 / 3.0;
                pts.push(vec![r * th.cos(), r * th.sin(), t]);
            }
            let config = Configuration::new(pts).unwrap();
            let direct = discrete_energy(&config, &field, &p).unwrap();
            let fam =
                four_point_family_energy(&FourPointFamily::APyramid13 { t }, q, big_r, &p)
                    .unwrap();
            assert!(close(fam, direct, 1e-12), "A family at t={t}, s={s}");
        }

        // B: two orthogonal pairs.
        for (t, tau) in [(0.2, -0.5), (-0.3, -0.3), (0.0, 0.65)] {
            let direct = discrete_energy(&two_pairs(t, tau), &field, &p).unwrap();
            let fam = four_point_family_energy(
                &FourPointFamily::BPairs22 { t, tau },
                q,
                big_r,
                &p,
            )
            .unwrap();
            assert!(close(fam, direct, 1e-12), "B family at ({t},{tau}), s={s}");
        }

        // C: horizontal square.
        for t in [-0.6, 0.0, 0.4] {
            let direct = discrete_energy(&square(t), &field, &p).unwrap();
            let fam = four_point_family_energy(&FourPointFamily::CSquare04 { t }, q, big_r, &p)
                .unwrap();
            assert!(close(fam, direct, 1e-12), "C family at t={t}, s={s}");
        }
    }
}

#[test]
fn four_point_family_identities() {
    // Merged planes: f22(t, t) = f04(t) identically.
    for &(q, big_r, s) in &[(1.0, 2.0, 1.0), (0.5, 1.1, 2.0), (3.0, 4.0, 0.7)] {
        let p = s_param(s);
        for i in 0..19 {
            let t = -0.9 + 0.1 * i as f64;
            let b =
                four_point_family_energy(&FourPointFamily::BPairs22 { t, tau: t }, q, big_r, &p)
                    .unwrap();
            let c =
                four_point_family_energy(&FourPointFamily::CSquare04 { t }, q, big_r, &p)
                    .unwrap();
            assert!((b - c).abs() <= 1e-12 * c.abs(), "t={t} s={s}: {b} vs {c}");
        }
    }

    // Field-free square is optimal on the equator with energy 4 sqrt(2) + 2.
    let p = s_param(1.0);
    let e0 =
        four_point_family_energy(&FourPointFamily::CSquare04 { t: 0.0 }, 0.0, 2.0, &p).unwrap();
    assert!(close(e0, 4.0 * 2.0f64.sqrt() + 2.0, 1e-14));
    for t in [-0.3, 0.25] {
        let e =
            four_point_family_energy(&FourPointFamily::CSquare04 { t }, 0.0, 2.0, &p).unwrap();
        assert!(e > e0);
    }

    // South apex with ring at +1/3 and charge 1/2 on the sphere: the ring
    // and the source form a regular tetrahedron, apex interactions added.
    let fam = four_point_family_energy(
        &FourPointFamily::APyramid13 { t: 1.0 / 3.0 },
        0.5,
        1.0,
        &p,
    )
    .unwrap();
    let field = ExternalFieldSpec::terms(vec![(0.5, vec![0.0, 0.0, 1.0])]).unwrap();
    let direct = discrete_energy(&tetrahedron(), &field, &p).unwrap();
    assert!(close(fam, direct, 1e-13));

    // Altitude guards.
    assert!(matches!(
        four_point_family_energy(&FourPointFamily::APyramid13 { t: 1.0 }, 1.0, 2.0, &p),
        Err(Error::Domain(_))
    ));
    assert!(matches!(
        four_point_family_energy(
            &FourPointFamily::BPairs22 { t: 0.0, tau: -1.0 },
            1.0,
            2.0,
            &p
        ),
        Err(Error::Domain(_))
    ));
    assert!(matches!(
        four_point_family_energy(&FourPointFamily::CSquare04 { t: 0.0 }, 1.0, 0.9, &p),
        Err(Error::Domain(_))
    ));
}

#[test]
fn classify_four_point_clusters() {
    assert_eq!(classify_four_point(&tetrahedron()), Some(FamilyKind::A));
    assert_eq!(classify_four_point(&square(-0.2)), Some(FamilyKind::C));
    assert_eq!(classify_four_point(&two_pairs(0.3, -0.4)), Some(FamilyKind::B));
    // Four distinct altitudes match no family.
    let scattered = Configuration::new(vec![
        vec![(1.0f64 - 0.64).sqrt(), 0.0, -0.8],
        vec![0.0, (1.0f64 - 0.09).sqrt(), -0.3],
        vec![-(1.0f64 - 0.04).sqrt(), 0.0, 0.2],
        vec![0.0, -(1.0f64 - 0.49).sqrt(), 0.7],
    ])
    .unwrap();
    assert_eq!(classify_four_point(&scattered), None);
    // Wrong size.
    let pair = Configuration::new(vec![vec![0.0, 0.0, 1.0], vec![0.0, 0.0, -1.0]]).unwrap();
    assert_eq!(classify_four_point(&pair), None);
}

#[test]
fn four_point_winner_weak_charge() {
    // q = 1/3: the pyramid family A wins at every sampled distance, and at
    // R = 1 its ring sits exactly on the equator (triangular bi-pyramid
    // with the source).
    let p = s_param(1.0);
    for big_r in [1.0, 1.1, 1.5, 2.5] {
        let best = four_point_best(1.0 / 3.0, big_r, &p, &quick_opts(12)).unwrap();
        assert_eq!(best.winner, FamilyKind::A, "R={big_r}");
        assert!(!best.mismatch, "R={big_r}: families beaten by {}", best.family_gap);
        // The unconstrained optimum never exceeds any family optimum.
        assert!(best.unconstrained_energy <= best.e_a + 1e-9);
        assert!(best.unconstrained_energy <= best.e_b + 1e-9);
        assert!(best.unconstrained_energy <= best.e_c + 1e-9);
        assert!(best.family_gap.abs() <= 1e-6);
        if big_r == 1.0 {
            // Abscissa accuracy at a flat quadratic minimum is sqrt(eps).
            assert!(best.t_a.abs() <= 1e-6, "bi-pyramid ring altitude {}", best.t_a);
        }
    }
}

#[test]
fn four_point_winner_strong_charge_transitions() {
    // q = 1: the winner moves C -> B -> A as the source recedes.
    let p = s_param(1.0);
    let expect = [(1.005, FamilyKind::C), (1.755, FamilyKind::B), (2.48, FamilyKind::A)];
    for &(big_r, kind) in &expect {
        let best = four_point_best(1.0, big_r, &p, &quick_opts(12)).unwrap();
        assert_eq!(best.winner, kind, "R={big_r}: got {:?}", best.winner);
        assert!(!best.mismatch, "R={big_r}");
        assert_eq!(best.unconstrained_kind, Some(kind), "R={big_r}");
    }

    // Guards.
    assert!(matches!(four_point_best(0.0, 2.0, &p, &quick_opts(4)), Err(Error::Domain(_))));
    assert!(matches!(four_point_best(1.0, 0.5, &p, &quick_opts(4)), Err(Error::Domain(_))));
}

// ---- separation constants ---------------------------------------------------

#[test]
fn separation_constant_values() {
    let p = s_param(1.0);

    // Field-free: c_sigma = 1, K = sqrt(2).
    let b0 = separation_constant(&SignedMeasureSpec::zero(), &p).unwrap();
    assert!(close(b0.constant, 2.0f64.sqrt(), 1e-15));
    assert!(close(b0.c_sigma, 1.0, 1e-15));
    assert!(close(b0.n_threshold, 1.0, 1e-15));

    // Unit positive mass: c_sigma = 2, K = 1.
    let b1 = separation_constant(&SignedMeasureSpec::new(1.0, 0.0, 2.0).unwrap(), &p).unwrap();
    assert!(close(b1.constant, 1.0, 1e-15));
    assert!(close(b1.c_sigma, 2.0, 1e-15));
    assert!(close(b1.n_threshold, 3.0, 1e-15));

    // Unit negative mass at r = 2: c = 1 + (3/1 - 1) = 3, K = sqrt(2/3).
    let b2 = separation_constant(&SignedMeasureSpec::new(0.0, 1.0, 2.0).unwrap(), &p).unwrap();
    assert!(close(b2.c_sigma, 3.0, 1e-14));
    assert!(close(b2.constant, (2.0f64 / 3.0).sqrt(), 1e-14));

    // Logarithmic branch: sigma = 0 gives K = 2 (= kappa_2); with masses
    // the distance factor is ((r+1)/(r-1))^2.
    let logp = RieszParameter::logarithmic(2).unwrap();
    let bl = separation_constant(&SignedMeasureSpec::zero(), &logp).unwrap();
    assert!(close(bl.constant, 2.0, 1e-15));
    let blm =
        separation_constant(&SignedMeasureSpec::new(0.5, 0.25, 3.0).unwrap(), &logp).unwrap();
    assert!(close(blm.c_sigma, 2.25, 1e-14));
    assert!(close(blm.constant, 4.0 / 3.0, 1e-14));
    assert!(close(blm.n_threshold, 3.5, 1e-14));

    // At s = d-2 with sigma = 0 the constant collapses to kappa_d.
    let p31 = RieszParameter::riesz(3, 1.0).unwrap();
    let b31 = separation_constant(&SignedMeasureSpec::zero(), &p31).unwrap();
    assert!((b31.constant - kappa(3).unwrap()).abs() <= 1e-14);

    // Guards: s out of [d-2, d), admissibility violation, log with d != 2.
    assert!(matches!(
        separation_constant(&SignedMeasureSpec::zero(), &s_param(2.0)),
        Err(Error::Domain(_))
    ));
    assert!(matches!(
        separation_constant(&SignedMeasureSpec::zero(), &RieszParameter::riesz(4, 1.0).unwrap()),
        Err(Error::Domain(_))
    ));
    // Distant negative mass drives c_sigma below 1/2.
    let far = SignedMeasureSpec::new(0.0, 1.0, 100.0).unwrap();
    assert!(matches!(separation_constant(&far, &p), Err(Error::Domain(_))));
    assert!(matches!(
        separation_constant(&SignedMeasureSpec::zero(), &RieszParameter::logarithmic(3).unwrap()),
        Err(Error::Domain(_))
    ));

    // Spec guards.
    assert!(SignedMeasureSpec::new(-1.0, 0.0, 2.0).is_err());
    assert!(SignedMeasureSpec::new(0.0, -1.0, 2.0).is_err());
    assert!(SignedMeasureSpec::new(0.0, 0.0, 1.0).is_err());
    let z = SignedMeasureSpec::zero();
    assert_eq!(z.plus_mass(), 0.0);
    assert_eq!(z.minus_mass(), 0.0);
}

#[test]
fn kappa_values() {
    assert!((kappa(2).unwrap() - 2.0).abs() <= 1e-14);
    assert!((kappa(3).unwrap() - (1.5 * std::f64::consts::PI).powf(1.0 / 3.0)).abs() <= 1e-14);
    assert!((kappa(3).unwrap() - 1.676_539_193_219_743_7).abs() <= 1e-14);
    assert!((kappa(4).unwrap() - 2.0 / 3.0f64.powf(0.25)).abs() <= 1e-14);
    assert!((kappa(4).unwrap() - 1.519_671_371_303_185_1).abs() <= 1e-14);
    assert!(matches!(kappa(1), Err(Error::Domain(_))));
}

#[test]
fn hyper_singular_bound_values() {
    // d=2, s=4: the curvature coefficient vanishes, so g(n) = 2^{1/4} for
    // every n at q = 0 and the bound at n = 100 is 3^{1/4}/10.
    let p24 = RieszParameter::riesz(2, 4.0).unwrap();
    let g100 = hyper_singular_g(100, 0.0, 2.0, &p24).unwrap();
    assert!((g100 - 2.0f64.powf(0.25)).abs() <= 1e-14);
    let bound = hyper_singular_bound(100, 0.0, 2.0, &p24).unwrap();
    assert!((bound - 3.0f64.powf(0.25) / 10.0).abs() <= 1e-14);
    assert!(close(bound, 0.131_607_401_295_249_25, 1e-14));

    // Charge terms, against scalar arithmetic with U_4(2) = 1/9.
    let grep = hyper_singular_g(100, 1.0, 2.0, &p24).unwrap();
    assert!(close(grep, (0.5f64 + 0.02 / 9.0).powf(-0.25), 1e-12));
    let gattr = hyper_singular_g(100, -1.0, 2.0, &p24).unwrap();
    assert!(close(gattr, (0.5f64 + 0.02 * (1.0 / 9.0 + 1.0)).powf(-0.25), 1e-12));

    // g is nondecreasing in n at q = 0 and approaches (s-d)^{1/s}.
    let p25 = RieszParameter::riesz(2, 5.0).unwrap();
    let mut prev = 0.0;
    for n in [2u64, 3, 5, 10, 100, 1000, 10_000] {
        let g = hyper_singular_g(n, 0.0, 2.0, &p25).unwrap();
        assert!(g >= prev, "g({n}) = {g} decreased");
        prev = g;
    }
    let glim = hyper_singular_g(100_000_000, 0.0, 2.0, &p25).unwrap();
    assert!((glim - 3.0f64.powf(0.2)).abs() <= 1e-6);

    // Range guards.
    assert!(matches!(hyper_singular_bound(100, 0.0, 2.0, &s_param(1.0)), Err(Error::Domain(_))));
    assert!(matches!(
        hyper_singular_bound(100, 0.0, 2.0, &RieszParameter::riesz(2, 2.0).unwrap()),
        Err(Error::Domain(_))
    ));
    assert!(matches!(hyper_singular_g(1, 0.0, 2.0, &p24), Err(Error::Domain(_))));
    assert!(matches!(hyper_singular_g(100, 0.0, 1.0, &p24), Err(Error::Domain(_))));
}

// ---- monotonicity and support membership ------------------------------------

#[test]
fn energy_monotonicity_sequence() {
    let p = s_param(1.0);
    let none = ExternalFieldSpec::none();
    let mut energies = Vec::new();
    for n in 2..=6 {
        let run = minimize_fekete(n, &none, &p, &quick_opts(8)).unwrap();
        energies.push((n as u64, run.energy));
    }
    assert!(monotonicity_check(&energies));

    // Single entries and non-consecutive n are vacuously monotone.
    assert!(monotonicity_check(&[(5, 20.0)]));
    assert!(monotonicity_check(&[(2, 1.0), (5, 100.0)]));

    // Swapping two adjacent energies breaks the normalized monotonicity.
    let mut corrupted = energies.clone();
    let (e3, e4) = (corrupted[1].1, corrupted[2].1);
    corrupted[1].1 = e4;
    corrupted[2].1 = e3;
    assert!(!monotonicity_check(&corrupted));
}

#[test]
fn fekete_points_lie_in_extended_support() {
    let p = s_param(1.0);
    let axial = AxialPointField::new(p, -5.0, 2.0, Pole::South).unwrap();
    let res = critical_t(&axial).unwrap();

    // Computed 50-point minimizer: all points stay inside the critical cap
    // (up to discretization) and pass the extended-support inequality.
    let field = ExternalFieldSpec::from_axial(&axial, 3);
    let run = minimize_fekete(50, &field, &p, &quick_opts(10)).unwrap();
    let report = fekete_in_extended_support(&run.configuration, &res).unwrap();
    assert!(report.pass, "entries: {:?}", report.entries);
    assert_eq!(report.entries.len(), 50);
    let t_c = res.t_c();
    for entry in &report.entries {
        assert!(entry.altitude <= t_c + 0.1, "altitude {} far above t_c", entry.altitude);
    }

    // A point parked at the north pole violates the inequality.
    let bad = Configuration::new(vec![
        vec![0.0, 0.0, 1.0],
        vec![(1.0f64 - 0.81).sqrt(), 0.0, -0.9],
        vec![0.0, (1.0f64 - 0.64).sqrt(), -0.8],
    ])
    .unwrap();
    let bad_report = fekete_in_extended_support(&bad, &res).unwrap();
    assert!(!bad_report.pass);
    assert!(!bad_report.entries[0].pass);
    assert!(bad_report.entries[1].pass && bad_report.entries[2].pass);

    // Field-free problem: the whole sphere is the extended support.
    let free = AxialPointField::new(p, 0.0, 2.0, Pole::South).unwrap();
    let res0 = critical_t(&free).unwrap();
    let trivial = fekete_in_extended_support(&tetrahedron(), &res0).unwrap();
    assert!(trivial.pass);

    // Dimension mismatch.
    let high = Configuration::new(vec![
        vec![0.0, 0.0, 0.0, 1.0],
        vec![0.0, 0.0, 0.0, -1.0],
    ])
    .unwrap();
    assert!(matches!(fekete_in_extended_support(&high, &res), Err(Error::Domain(_))));
}
