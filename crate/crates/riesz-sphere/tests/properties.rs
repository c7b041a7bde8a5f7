//! Randomized invariants: special-function identities, measure mass
//! normalization, density symmetries, energy invariances, and the sphere
//! maximum principle.

use proptest::prelude::*;
use riesz_sphere::equilibrium::{
    cap_signed_equilibrium, critical_t, signed_eq_sphere, AxialPointField, Pole,
};
use riesz_sphere::fekete::{
    discrete_energy, minimize_fekete, three_point_intercept, Configuration, ConvexAxialField,
    ExternalFieldSpec, FeketeOptions,
};
use riesz_sphere::quad::jacobi_on_interval;
use riesz_sphere::specfun::{
    beta_fn, gamma_fn, hyp2f1, hyp2f1_regularized, inc_beta_regularized, pochhammer,
};
use riesz_sphere::sphere_core::{axial_potential, cap_area, RieszParameter};

// ---- special functions -------------------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// (a)_{n+1} = (a)_n (a+n), evaluated away from the zeros.
    #[test]
    fn pochhammer_recurrence(a in -5.0f64..5.0, n in 0u32..12) {
        let lhs = pochhammer(a, n + 1);
        let rhs = pochhammer(a, n) * (a + f64::from(n));
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs().max(1.0));
    }

    /// I(x; a, b) + I(1-x; b, a) = 1.
    #[test]
    fn incomplete_beta_symmetry(
        x in 0.01f64..0.99,
        a in 0.2f64..5.0,
        b in 0.2f64..5.0,
    ) {
        let lhs = inc_beta_regularized(x, a, b).unwrap()
            + inc_beta_regularized(1.0 - x, b, a).unwrap();
        prop_assert!((lhs - 1.0).abs() <= 1e-11, "sum = {lhs}");
    }

    /// Regularized and plain 2F1 agree up to Gamma(c) for c > 0.
    #[test]
    fn regularized_matches_plain(
        a in 0.1f64..3.0,
        b in 0.1f64..2.0,
        c in 0.3f64..4.0,
        z in -0.8f64..0.9,
    ) {
        let plain = hyp2f1(a, b, c, z).unwrap();
        let reg = hyp2f1_regularized(a, b, c, z).unwrap();
        let want = plain / gamma_fn(c).unwrap();
        prop_assert!(
            (reg - want).abs() <= 1e-11 * want.abs().max(1.0),
            "regularized {reg} vs plain/Gamma {want}"
        );
    }

    /// Series evaluation against the Euler integral representation.
    #[test]
    fn hyp2f1_euler_integral(
        a in 0.2f64..3.0,
        b in 0.2f64..2.5,
        extra in 0.2f64..2.0,
        z in 0.0f64..0.9,
    ) {
        let c = b + extra;
        let (xs, ws) = jacobi_on_interval(80, c - b - 1.0, b - 1.0, 0.0, 1.0).unwrap();
        let mut acc = 0.0;
        for (x, w) in xs.iter().zip(&ws) {
            acc += w * (1.0 - z * x).powf(-a);
        }
        let pref = gamma_fn(c).unwrap() / (gamma_fn(b).unwrap() * gamma_fn(c - b).unwrap());
        let integral = pref * acc;
        let series = hyp2f1(a, b, c, z).unwrap();
        prop_assert!(
            (series - integral).abs() <= 1e-9 * integral.abs().max(1.0),
            "({a},{b},{c},{z}): series {series} vs integral {integral}"
        );
    }

    /// B(a, b) = Gamma(a)Gamma(b)/Gamma(a+b).
    #[test]
    fn beta_gamma_consistency(a in 0.1f64..6.0, b in 0.1f64..6.0) {
        let lhs = beta_fn(a, b).unwrap();
        let rhs = gamma_fn(a).unwrap() * gamma_fn(b).unwrap() / gamma_fn(a + b).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-11 * rhs.abs());
    }
}

// ---- sphere geometry ---------------------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// A cap of Euclidean radius r and its complement tile the sphere.
    #[test]
    fn cap_area_complement(d in 2u32..=5, r in 0.05f64..1.95) {
        let a = cap_area(d, r).unwrap();
        let b = cap_area(d, (4.0 - r * r).sqrt()).unwrap();
        prop_assert!((a + b - 1.0).abs() <= 1e-10, "areas {a} + {b}");
    }
}

// ---- signed equilibria ---------------------------------------------------------

/// Sphere parameters with s drawn from the classical range (d-2, d).
fn classical() -> impl Strategy<Value = (u32, f64)> {
    (2u32..=4).prop_flat_map(|d| {
        let lo = (d as f64 - 2.0).max(0.0) + 0.15;
        let hi = d as f64 - 0.15;
        (Just(d), lo..hi)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// Signed sphere equilibria integrate to unit mass, and their densities
    /// are strictly monotone in the altitude with the charge's sign.
    #[test]
    fn signed_sphere_mass_and_monotonicity(
        (d, s) in classical(),
        q in -8.0f64..8.0,
        big_r in 1.1f64..5.0,
    ) {
        prop_assume!(q.abs() > 0.05);
        let p = RieszParameter::riesz(d, s).unwrap();
        let f = AxialPointField::new(p, q, big_r, Pole::South).unwrap();
        let eq = signed_eq_sphere(&f).unwrap();
        let mass = eq.mass().unwrap();
        prop_assert!((mass - 1.0).abs() <= 1e-8, "mass {mass}");

        // Attractive charge piles mass toward the near (south) pole, so the
        // density decreases in u; repulsive charge reverses the monotony.
        let mut prev = eq.density(-1.0);
        for i in 1..=40 {
            let u = -1.0 + 2.0 * i as f64 / 40.0;
            let cur = eq.density(u);
            if q < 0.0 {
                prop_assert!(cur < prev, "q<0 but density rose at u={u}");
            } else {
                prop_assert!(cur > prev, "q>0 but density fell at u={u}");
            }
            prev = cur;
        }
    }

    /// Opposite mirror charges: eta_a'(u) + eta_b'(-u) = 2.
    #[test]
    fn signed_sphere_complement_symmetry(
        (d, s) in classical(),
        q in 0.1f64..6.0,
        big_r in 1.05f64..4.0,
    ) {
        let p = RieszParameter::riesz(d, s).unwrap();
        let a = AxialPointField::new(p, q, big_r, Pole::North).unwrap();
        let b = AxialPointField::new(p, -q, big_r, Pole::South).unwrap();
        let eq_a = signed_eq_sphere(&a).unwrap();
        let eq_b = signed_eq_sphere(&b).unwrap();
        for i in 0..=20 {
            let u = -1.0 + 2.0 * i as f64 / 20.0;
            let sum = eq_a.density(u) + eq_b.density(-u);
            prop_assert!((sum - 2.0).abs() <= 1e-9, "sum at u={u}: {sum}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Every cap equilibrium measure is normalized to unit mass.
    #[test]
    fn cap_measures_have_unit_mass(
        d in 2u32..=3,
        frac in 0.1f64..0.9,
        q in -8.0f64..-0.1,
        big_r in 1.2f64..4.0,
        t in -0.9f64..0.8,
    ) {
        let lo = (d as f64 - 2.0).max(0.0) + 0.2;
        let s = lo + frac * (d as f64 - 0.2 - lo);
        let p = RieszParameter::riesz(d, s).unwrap();
        let f = AxialPointField::new(p, q, big_r, Pole::South).unwrap();
        let eq = cap_signed_equilibrium(&f, t).unwrap();
        let mass = eq.mass().unwrap();
        prop_assert!((mass - 1.0).abs() <= 1e-8, "cap mass {mass} at (d={d},s={s},t={t})");
    }
}

// ---- discrete energies ---------------------------------------------------------

/// Rotation by three Givens angles applied to points and field sources.
fn rotate(x: &[f64], angles: (f64, f64, f64)) -> Vec<f64> {
    let (a, b, c) = angles;
    let mut y = [x[0], x[1], x[2]];
    let r01 = [a.cos() * y[0] - a.sin() * y[1], a.sin() * y[0] + a.cos() * y[1], y[2]];
    y = r01;
    let r02 = [b.cos() * y[0] + b.sin() * y[2], y[1], -b.sin() * y[0] + b.cos() * y[2]];
    y = r02;
    vec![y[0], c.cos() * y[1] - c.sin() * y[2], c.sin() * y[1] + c.cos() * y[2]]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// Discrete energy is invariant when configuration and sources rotate
    /// together.
    #[test]
    fn discrete_energy_orthogonal_invariance(
        raw in prop::collection::vec(prop::array::uniform3(-1.0f64..1.0), 3..6),
        angles in (0.0f64..6.28, 0.0f64..6.28, 0.0f64..6.28),
        s in 0.3f64..2.5,
        charge in -2.0f64..2.0,
    ) {
        // Normalize the raw points onto the sphere; skip degenerate draws.
        let mut pts = Vec::new();
        for r in &raw {
            let n = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
            prop_assume!(n > 1e-3);
            pts.push(vec![r[0] / n, r[1] / n, r[2] / n]);
        }
        let config = match Configuration::new(pts.clone()) {
            Ok(c) => c,
            Err(_) => return Ok(()), // coincident draw
        };
        let p = RieszParameter::riesz(2, s).unwrap();
        let field = ExternalFieldSpec::terms(vec![(charge, vec![0.0, 0.0, 2.0])]).unwrap();
        let e0 = discrete_energy(&config, &field, &p).unwrap();

        let rot_pts: Vec<Vec<f64>> = pts.iter().map(|x| rotate(x, angles)).collect();
        let rot_field = ExternalFieldSpec::terms(vec![(
            charge,
            rotate(&[0.0, 0.0, 2.0], angles),
        )])
        .unwrap();
        let config_r = Configuration::new(rot_pts).unwrap();
        let e1 = discrete_energy(&config_r, &rot_field, &p).unwrap();
        prop_assert!((e0 - e1).abs() <= 1e-12 * e0.abs().max(1.0), "{e0} vs {e1}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    /// The unconstrained 3-point minimizer is an equilateral triangle at the
    /// analytic intercept altitude, across the parameter space.
    #[test]
    fn three_point_optimum_is_equilateral(
        s in 0.4f64..2.4,
        q in 0.15f64..2.0,
        big_r in 1.0f64..3.0,
    ) {
        let p = RieszParameter::riesz(2, s).unwrap();
        let f = ConvexAxialField::point_charge(q, s).unwrap();
        let sol = three_point_intercept(&f, &p, big_r).unwrap();
        prop_assert!(sol.residual <= 1e-12);
        prop_assert!(sol.t0 > -1.0 && sol.t0 < 0.0);

        let field = ExternalFieldSpec::terms(vec![(q, vec![0.0, 0.0, big_r])]).unwrap();
        let opts = FeketeOptions { multistarts: 6, ..FeketeOptions::default() };
        let run = minimize_fekete(3, &field, &p, &opts).unwrap();
        prop_assert!(
            (run.energy - sol.energy).abs() <= 1e-7 * sol.energy.abs().max(1.0),
            "energy {} vs analytic {}", run.energy, sol.energy
        );
        for u in run.configuration.altitudes() {
            prop_assert!((u - sol.t0).abs() <= 1e-5, "altitude {u} vs {}", sol.t0);
        }
        // Soft kernels (small s) leave the landscape flat: a 1e-10 gradient
        // norm pins the geometry only to ~1e-7.
        let d01 = run.configuration.dist(0, 1);
        for (j, k) in [(0usize, 2usize), (1, 2)] {
            prop_assert!((run.configuration.dist(j, k) - d01).abs() <= 1e-6);
        }
    }
}

// ---- maximum principle ----------------------------------------------------------

/// For positive equilibrium measures with d-2 <= s < d, the sphere-wide
/// maximum of the bare potential equals its maximum over the support.
#[test]
fn positive_measure_max_principle() {
    let cases = [
        (2u32, 1.0, -5.0, 2.0), // critical cap of the reference field
        (3u32, 1.5, -2.0, 1.5),
    ];
    for &(d, s, q, big_r) in &cases {
        let p = RieszParameter::riesz(d, s).unwrap();
        let f = AxialPointField::new(p, q, big_r, Pole::South).unwrap();
        let res = critical_t(&f).unwrap();
        assert!(res.measure().is_positive());
        let t_c = res.t_c();

        // One shared sample: the sphere-wide maximum must be attained on
        // the in-support subset (U rises steeply toward the near pole, so
        // separate grids would just measure their offset).
        let potential = |xi: f64| axial_potential(&p, res.measure().density(), xi, None).unwrap();
        let mut support_max = f64::NEG_INFINITY;
        let mut sphere_max = f64::NEG_INFINITY;
        for i in 0..2000 {
            let xi = -1.0 + 2.0 * (i as f64 + 0.5) / 2000.0;
            let u_pot = potential(xi);
            sphere_max = sphere_max.max(u_pot);
            if xi <= t_c {
                support_max = support_max.max(u_pot);
            }
        }
        assert!(
            sphere_max <= support_max + 1e-5,
            "(d={d},s={s}): sphere max {sphere_max} exceeds support max {support_max}"
        );
    }
}
