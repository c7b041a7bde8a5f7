//! Signed and positive equilibria under an axial external point charge.
//!
//! The external field is Q(x) = q |x − b|^{−s} with b = ±R·p on the polar
//! axis, R > 1.  Internally every computation uses the canonical frame of
//! a charge below the south pole (b = −R p with p the north pole), where
//! a point at altitude u = x·p has |x − b|² = R² + 2Ru + 1; north-pole
//! fields are the reflection u → −u.  Cap quantities are expressed in the
//! p-axis altitude v = x·p with the cap Σ_t = {v ≤ t}, so their formulas
//! are identical for both poles; only conversions to extrinsic
//! coordinates depend on the orientation.
//!
//! * Whole sphere: the signed equilibrium has the closed-form density
//!   η′(u) = 1 + qU/W − q(R²−1)^{d−s} / (W (R²+2Ru+1)^{d−s/2}) and
//!   constant Φ_s(1) = W + qU, where U = U_s^{σ_d}(b) and W = W_s(𝕊^d).
//! * Caps, d−2 < s < d: the density carries the boundary factor
//!   (t−u)^{(s−d)/2} against two regularized-₂F₁ components; the cap
//!   constant Φ_s(t) follows from unit mass, which is linear in Φ.
//! * The critical intercept t_c is the unique root of
//!   Φ_s(t) = q (R−1)^{d−s} / (R²+2Rt+1)^{d/2}; at t_c the signed cap
//!   equilibrium is the positive extremal measure.
//! * The limiting exponent s = d−2 (d ≥ 3) replaces the boundary blow-up
//!   by a point charge q̄_t on the boundary circle; q̄_t = 0 recovers the
//!   critical cap.

use crate::error::{Error, Result};
use crate::roots::brent;
use crate::sphere_core::{axis_uniform_potential, sphere_energy, AxialDensity, RieszParameter};
use crate::specfun::{hyp2f1_regularized, inc_beta_regularized};
use serde_json::json;

/// Which pole the external charge sits beyond.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Pole {
    North,
    South,
}

impl std::fmt::Display for Pole {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Pole::North => write!(f, "north"),
            Pole::South => write!(f, "south"),
        }
    }
}

/// Axial point-charge field Q(x) = q|x − b|^{−s}, b = ±R·(north pole).
///
/// R ≥ 1 at construction (R = 1 only for discrete problems with the
/// source on the sphere); equilibrium operations require R > 1.  q = 0 is
/// admitted and degenerates to the field-free problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxialPointField {
    p: RieszParameter,
    q: f64,
    big_r: f64,
    pole: Pole,
}

impl AxialPointField {
    pub fn new(p: RieszParameter, q: f64, big_r: f64, pole: Pole) -> Result<Self> {
        if !q.is_finite() {
            return Err(Error::domain(format!("field charge q = {q} must be finite")));
        }
        if !(big_r >= 1.0 && big_r.is_finite()) {
            return Err(Error::domain(format!("field distance R = {big_r} must be >= 1")));
        }
        Ok(Self { p, q, big_r, pole })
    }

    pub fn param(&self) -> &RieszParameter {
        &self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn big_r(&self) -> f64 {
        self.big_r
    }

    pub fn pole(&self) -> Pole {
        self.pole
    }

    /// Altitude seen from the canonical (south-source) frame.
    fn canonical_u(&self, u: f64) -> f64 {
        match self.pole {
            Pole::South => u,
            Pole::North => -u,
        }
    }

    /// p-axis altitude v = x·p (p pointing away from the source) of a
    /// point with north-axis altitude u; cap quantities like
    /// [`CapEquilibrium::t`] live on this axis.
    pub fn p_axis_altitude(&self, u: f64) -> f64 {
        self.canonical_u(u)
    }

    /// Squared distance from the sphere point at north-axis altitude u to
    /// the source.
    pub fn source_dist_sq(&self, u: f64) -> f64 {
        let uc = self.canonical_u(u);
        self.big_r * self.big_r + 2.0 * self.big_r * uc + 1.0
    }

    /// Field value Q at north-axis altitude u.
    pub fn field_at(&self, u: f64) -> Result<f64> {
        let d2 = self.source_dist_sq(u);
        match self.p.s() {
            Some(s) => Ok(self.q * d2.powf(-s / 2.0)),
            None => Ok(-0.5 * self.q * d2.ln()),
        }
    }

    /// Source position in ℝ^{ambient} with the polar axis last.
    pub fn source_point(&self, ambient: usize) -> Vec<f64> {
        let mut v = vec![0.0; ambient];
        v[ambient - 1] = match self.pole {
            Pole::North => self.big_r,
            Pole::South => -self.big_r,
        };
        v
    }

    fn require_r_gt1(&self) -> Result<()> {
        if self.big_r <= 1.0 {
            return Err(Error::domain(format!(
                "equilibrium operations need R > 1, got R = {}",
                self.big_r
            )));
        }
        Ok(())
    }

    /// s restricted to the cap range d−2 < s < d.
    fn require_cap_range(&self) -> Result<f64> {
        let s = self.p.require_classical()?;
        if s <= self.p.df() - 2.0 {
            return Err(Error::domain(format!(
                "cap equilibria need d-2 < s < d, got s = {s}, d = {}",
                self.p.d()
            )));
        }
        Ok(s)
    }
}

/// Signed s-equilibrium of the whole sphere under an axial field.
pub struct SphereSignedEquilibrium {
    field: AxialPointField,
    constant: f64,
    w: f64,
    u_pot: f64,
}

impl SphereSignedEquilibrium {
    pub fn field(&self) -> &AxialPointField {
        &self.field
    }

    /// The constant weighted potential Φ_s(1) = W_s + q U_s^{σ_d}(b).
    pub fn constant(&self) -> f64 {
        self.constant
    }

    /// Density η′ at north-axis altitude u (relative to dσ_d).
    pub fn density(&self, u: f64) -> f64 {
        let s = self.field.p.s().expect("riesz kernel");
        let d = self.field.p.df();
        let q = self.field.q;
        let rr = self.field.big_r;
        let dist2 = self.field.source_dist_sq(u);
        1.0 + q * self.u_pot / self.w
            - q * (rr * rr - 1.0).powf(d - s) / (self.w * dist2.powf(d - s / 2.0))
    }

    /// The density as an integrable axial object (canonical p-axis; the
    /// whole sphere is reflection-symmetric so orientation is immaterial
    /// for mass, but the profile uses north-axis altitudes).
    pub fn density_axial(&self) -> Result<AxialDensity> {
        let copy = Self {
            field: self.field,
            constant: self.constant,
            w: self.w,
            u_pot: self.u_pot,
        };
        AxialDensity::new(self.field.p.d(), move |u| copy.density(u), 0.0, 1.0)
    }

    pub fn mass(&self) -> Result<f64> {
        self.density_axial()?.mass()
    }
}

/// Signed equilibrium of the whole sphere: density and constant in closed
/// form.  Requires 0 < s < d and R > 1.
pub fn signed_eq_sphere(field: &AxialPointField) -> Result<SphereSignedEquilibrium> {
    let s = field.p.require_classical()?;
    field.require_r_gt1()?;
    let w = sphere_energy(&field.p)?;
    let u_pot = axis_uniform_potential(field.p.df(), s, field.big_r)?;
    Ok(SphereSignedEquilibrium {
        field: *field,
        constant: w + field.q * u_pot,
        w,
        u_pot,
    })
}

/// Gonchar-type criterion: does the extremal (positive) measure cover the
/// whole sphere?  Stated for attractive fields q < 0 (q = 0 is trivially
/// true); repulsive fields should use [`critical_t`] directly.
pub fn support_is_full_sphere(field: &AxialPointField) -> Result<bool> {
    let s = field.p.require_classical()?;
    field.require_r_gt1()?;
    if field.q > 0.0 {
        return Err(Error::domain(
            "support_is_full_sphere: criterion applies to q < 0; use critical_t for q > 0",
        ));
    }
    if field.q == 0.0 {
        return Ok(true);
    }
    let d = field.p.df();
    let rr = field.big_r;
    let w = sphere_energy(&field.p)?;
    let u_pot = axis_uniform_potential(d, s, rr)?;
    let rhs = (rr - 1.0).powf(d - s) / (rr + 1.0).powf(d) - u_pot;
    Ok(w / field.q <= rhs)
}

/// The negative charge q₋ at axis distance R balancing a positive charge
/// q₊ at the same distance on the opposite side, so that the two signed
/// sphere equilibria have equal density at the pole far from each charge:
/// q₋ = q₊ (L − A)/(L − B), L = (R²−1)^{s/2} U_s^{σ_d}(R),
/// A = ((R+1)/(R−1))^{d−s/2}, B = A^{−1}.
pub fn balance_charge(p: &RieszParameter, big_r: f64, q_plus: f64) -> Result<f64> {
    let s = p.require_classical()?;
    if !(big_r > 1.0) {
        return Err(Error::domain(format!("balance_charge: R = {big_r} must exceed 1")));
    }
    if !(q_plus > 0.0) {
        return Err(Error::domain(format!("balance_charge: q_plus = {q_plus} must be positive")));
    }
    let d = p.df();
    let u_pot = axis_uniform_potential(d, s, big_r)?;
    let l = (big_r * big_r - 1.0).powf(s / 2.0) * u_pot;
    let a = ((big_r + 1.0) / (big_r - 1.0)).powf(d - s / 2.0);
    let b = 1.0 / a;
    let q_minus = q_plus * (l - a) / (l - b);
    if !(q_minus < 0.0) {
        return Err(Error::no_solution(format!(
            "balance_charge: relation gives q_minus = {q_minus} >= 0"
        )));
    }
    Ok(q_minus)
}

/// The distance R₋ at which a negative axial charge balances a positive
/// one at distance R₊ (equal boundary densities, independent of the
/// charges): solves
/// −U(R₋) + (R₋−1)^{d−s}/(R₋+1)^d = U(R₊) − (R₊+1)^{d−s}/(R₊−1)^d.
///
/// `NoSolution` is a legitimate outcome (the left side is bounded).
pub fn balance_distance(p: &RieszParameter, r_plus: f64) -> Result<f64> {
    let s = p.require_classical()?;
    if !(r_plus > 1.0) {
        return Err(Error::domain(format!("balance_distance: R+ = {r_plus} must exceed 1")));
    }
    let d = p.df();
    let rhs = axis_uniform_potential(d, s, r_plus)?
        - (r_plus + 1.0).powf(d - s) / (r_plus - 1.0).powf(d);
    let f = |r: f64| -> Result<f64> {
        Ok(-axis_uniform_potential(d, s, r)? + (r - 1.0).powf(d - s) / (r + 1.0).powf(d) - rhs)
    };
    // Geometric scan of (1, 1e9] for a bracket.
    let grid: Vec<f64> = (0..=240)
        .map(|i| 1.0 + 10f64.powf(-8.0 + 17.0 * i as f64 / 240.0))
        .collect();
    let mut prev: Option<(f64, f64)> = None;
    for &r in &grid {
        let v = f(r)?;
        if let Some((r0, v0)) = prev {
            if v0 == 0.0 {
                return Ok(r0);
            }
            if v0 * v < 0.0 {
                return brent(f, r0, r, 1e-13, 200);
            }
        }
        prev = Some((r, v));
    }
    Err(Error::no_solution(format!(
        "balance_distance: no R- > 1 matches R+ = {r_plus} (boundary equation has no crossing)"
    )))
}

/// Shared pieces of the cap-equilibrium formulas in canonical p-axis
/// coordinates; all fields but the closures are plain numbers so the
/// struct is freely copyable into density closures.
#[derive(Debug, Clone, Copy)]
struct CapParts {
    df: f64,
    t: f64,
    /// c = 1 + (s−d)/2, the regularized-₂F₁ third parameter, in (0,1).
    c: f64,
    /// Boundary exponent α = c − 1 = (s−d)/2.
    alpha: f64,
    /// (1/W_s)·Γ(d/2)/Γ(d−s/2).
    pref: f64,
    /// q-component factor (R−1)^{d−s}/r_t^d, r_t² = R²+2Rt+1.
    cb: f64,
    /// Hypergeometric argument ratio (R+1)²/r_t².
    x2fac: f64,
}

impl CapParts {
    fn new(field: &AxialPointField, t: f64) -> Result<Self> {
        let s = field.require_cap_range()?;
        field.require_r_gt1()?;
        if !(t > -1.0 && t < 1.0) {
            return Err(Error::domain(format!("cap intercept t = {t} outside (-1, 1)")));
        }
        let df = field.p.df();
        let w = sphere_energy(&field.p)?;
        let c = 1.0 + (s - df) / 2.0;
        let pref = crate::specfun::gamma_fn(df / 2.0)? / (w * crate::specfun::gamma_fn(df - s / 2.0)?);
        let big_r = field.big_r;
        let rt2 = big_r * big_r + 2.0 * big_r * t + 1.0;
        Ok(Self {
            df,
            t,
            c,
            alpha: c - 1.0,
            pref,
            cb: (big_r - 1.0).powf(df - s) / rt2.powf(df / 2.0),
            x2fac: (big_r + 1.0) * (big_r + 1.0) / rt2,
        })
    }

    /// Smooth part of the σ_d-balayage component (the (t−u)^{α} factor is
    /// carried by the AxialDensity weight).
    fn a_smooth(&self, u: f64) -> f64 {
        let x1 = (self.t - u) / (1.0 - u);
        let f = hyp2f1_regularized(1.0, self.df / 2.0, self.c, x1).unwrap_or(f64::NAN);
        self.pref
            * ((1.0 - self.t) / (1.0 - u)).powf(self.df / 2.0)
            * (1.0 - self.t).powf(1.0 - self.c)
            * f
    }

    /// Smooth part of the point-charge balayage component.
    fn b_smooth(&self, u: f64) -> f64 {
        let x1 = (self.t - u) / (1.0 - u);
        let x2 = (self.x2fac * x1).min(1.0);
        let f = hyp2f1_regularized(1.0, self.df / 2.0, self.c, x2).unwrap_or(f64::NAN);
        self.pref
            * ((1.0 - self.t) / (1.0 - u)).powf(self.df / 2.0)
            * (1.0 - self.t).powf(1.0 - self.c)
            * f
    }
}

/// Cap constant Φ_s(t) for t ∈ (−1, 1], from unit mass of the cap signed
/// equilibrium (linear in Φ); Φ_s(1) = W_s + q U_s^{σ_d}(b).
pub fn phi_of_t(field: &AxialPointField, t: f64) -> Result<f64> {
    if t == 1.0 {
        let s = field.p.require_classical()?;
        field.require_r_gt1()?;
        let w = sphere_energy(&field.p)?;
        let u_pot = axis_uniform_potential(field.p.df(), s, field.big_r)?;
        return Ok(w + field.q * u_pot);
    }
    let parts = CapParts::new(field, t)?;
    let d = field.p.d();
    let pa = parts;
    let dens_a = AxialDensity::new(d, move |u| pa.a_smooth(u), parts.alpha, t)?;
    let pb = parts;
    let dens_b = AxialDensity::new(d, move |u| pb.b_smooth(u), parts.alpha, t)?;
    let i_a = dens_a.mass()?;
    let i_b = parts.cb * dens_b.mass()?;
    if !(i_a > 0.0) {
        return Err(Error::numeric(format!(
            "phi_of_t: non-positive balayage mass I_A = {i_a} at t = {t}"
        )));
    }
    Ok((1.0 + field.q * i_b) / i_a)
}

/// Signed equilibrium of the cap Σ_t = {x·p ≤ t}, d−2 < s < d.
pub struct CapEquilibrium {
    field: AxialPointField,
    t: f64,
    phi: f64,
    density: AxialDensity,
    boundary_charge: Option<f64>,
    is_positive: bool,
}

impl CapEquilibrium {
    pub fn field(&self) -> &AxialPointField {
        &self.field
    }

    /// Cap intercept in the p-axis altitude v = x·p (cap is {v ≤ t}).
    pub fn t(&self) -> f64 {
        self.t
    }

    /// The cap constant Φ_s(t), the value of U + Q on Σ_t.
    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn density(&self) -> &AxialDensity {
        &self.density
    }

    /// Density value at p-axis altitude v.
    pub fn density_value(&self, v: f64) -> f64 {
        self.density.value(v)
    }

    /// Boundary ring charge q̄_t, present only at the limiting exponent
    /// s = d−2.
    pub fn boundary_charge(&self) -> Option<f64> {
        self.boundary_charge
    }

    pub fn is_positive(&self) -> bool {
        self.is_positive
    }

    /// Total mass: density integral plus the boundary atom.
    pub fn mass(&self) -> Result<f64> {
        Ok(self.density.mass()? + self.boundary_charge.unwrap_or(0.0))
    }

    /// JSON object {d, s, q, R, pole, t, phi, F, boundary_charge,
    /// density_samples}; `F` is filled by `ExtremalResult`.
    pub fn to_json(&self) -> serde_json::Value {
        self.json_with_f(serde_json::Value::Null)
    }

    fn json_with_f(&self, f: serde_json::Value) -> serde_json::Value {
        let n = 101;
        let samples: Vec<serde_json::Value> = (0..n)
            .map(|i| {
                let v = -1.0 + (self.t + 1.0) * (i as f64 + 0.5) / n as f64;
                json!([v, self.density_value(v)])
            })
            .collect();
        json!({
            "d": self.field.p.d(),
            "s": self.field.p.s(),
            "q": self.field.q,
            "R": self.field.big_r,
            "pole": self.field.pole.to_string(),
            "t": self.t,
            "phi": self.phi,
            "F": f,
            "boundary_charge": self.boundary_charge,
            "density_samples": samples,
        })
    }
}

/// Cap signed equilibrium for d−2 < s < d: density with boundary exponent
/// (s−d)/2 at u = t, constant from [`phi_of_t`], mass checked to 1e−8.
pub fn cap_signed_equilibrium(field: &AxialPointField, t: f64) -> Result<CapEquilibrium> {
    let parts = CapParts::new(field, t)?;
    let phi = phi_of_t(field, t)?;
    let d = field.p.d();
    let q = field.q;
    let pc = parts;
    let g = move |u: f64| phi * pc.a_smooth(u) - q * pc.cb * pc.b_smooth(u);
    let density = AxialDensity::new(d, g, parts.alpha, t)?;
    let mass = density.mass()?;
    if (mass - 1.0).abs() > 1e-8 {
        return Err(Error::numeric(format!(
            "cap_signed_equilibrium: mass {mass} deviates from 1 by {:.3e}",
            (mass - 1.0).abs()
        )));
    }
    // Positivity per the boundary criterion Φ ≥ q(R−1)^{d−s}/r_t^d, with a
    // grid check of the smooth factor as a safety net.
    let comparator = phi - q * parts.cb;
    let mut grid_min = f64::INFINITY;
    for i in 0..400 {
        let u = -1.0 + (t + 1.0) * (i as f64 + 0.5) / 400.0;
        grid_min = grid_min.min(g(u));
    }
    let scale = phi.abs().max(1.0);
    let is_positive = comparator >= -1e-12 * scale && grid_min >= -1e-9 * scale;
    Ok(CapEquilibrium {
        field: *field,
        t,
        phi,
        density,
        boundary_charge: None,
        is_positive,
    })
}

/// Weighted potential U^{η_t} + Q of a cap equilibrium at p-axis altitude
/// ξ: Φ_s(t) on the cap; off the cap the closed form
/// Φ + (q/ρ^s) I(x_in; (d−s)/2, s/2) − Φ I(y; (d−s)/2, s/2) with
/// y = (ξ−t)/(1+ξ), x_in = y·(R−1)²/r_t², ρ² = R²+2Rξ+1.
pub fn weighted_potential(eq: &CapEquilibrium, xi: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&xi) {
        return Err(Error::domain(format!("weighted_potential: xi = {xi} outside [-1, 1]")));
    }
    if xi <= eq.t {
        return Ok(eq.phi);
    }
    let p = eq.field.param();
    let s = p.require_classical()?;
    let d = p.df();
    let q = eq.field.q();
    let rr = eq.field.big_r();
    let rt2 = rr * rr + 2.0 * rr * eq.t + 1.0;
    let rho2 = rr * rr + 2.0 * rr * xi + 1.0;
    let y = (xi - eq.t) / (1.0 + xi);
    let x_in = y * (rr - 1.0) * (rr - 1.0) / rt2;
    let a = (d - s) / 2.0;
    let b = s / 2.0;
    let i1 = inc_beta_regularized(x_in.clamp(0.0, 1.0), a, b)?;
    let i2 = inc_beta_regularized(y.clamp(0.0, 1.0), a, b)?;
    Ok(eq.phi + q * rho2.powf(-s / 2.0) * i1 - eq.phi * i2)
}

/// Extremal (positive equilibrium) measure: critical cap intercept t_c,
/// the measure itself, and the Frostman constant F = Φ_s(t_c).
pub struct ExtremalResult {
    field: AxialPointField,
    t_c: f64,
    measure: CapEquilibrium,
    f_const: f64,
}

impl ExtremalResult {
    pub fn field(&self) -> &AxialPointField {
        &self.field
    }

    pub fn t_c(&self) -> f64 {
        self.t_c
    }

    pub fn measure(&self) -> &CapEquilibrium {
        &self.measure
    }

    /// Frostman constant F_{Q,s}.
    pub fn f_const(&self) -> f64 {
        self.f_const
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = self.measure.json_with_f(json!(self.f_const));
        v["t"] = json!(self.t_c);
        v
    }
}

/// Critical-cap criterion residual Φ_s(t) − q(R−1)^{d−s}/r_t^d.
fn criticality(field: &AxialPointField, t: f64) -> Result<f64> {
    let s = field.p.s().expect("riesz");
    let d = field.p.df();
    let rr = field.big_r;
    let rt2 = rr * rr + 2.0 * rr * t + 1.0;
    Ok(phi_of_t(field, t)? - field.q * (rr - 1.0).powf(d - s) / rt2.powf(d / 2.0))
}

/// Extremal measure via the critical intercept: the unique root in
/// (−1, 1) of Φ_s(t) = q(R−1)^{d−s}/(R²+2Rt+1)^{d/2}, or t_c = 1 (full
/// sphere) when there is no root.  Requires d−2 < s < d.
pub fn critical_t(field: &AxialPointField) -> Result<ExtremalResult> {
    field.require_cap_range()?;
    field.require_r_gt1()?;
    if field.q == 0.0 {
        return full_sphere_result(field);
    }
    // Scan for sign changes of the criticality residual.  The upper scan
    // limit stays short of the closed sphere: for t nearer to 1 the
    // density develops a boundary layer of width 1−t that the fixed
    // quadrature cannot resolve; that last sliver is covered by the exact
    // t = 1 value below.
    let n = 64;
    let lo = -1.0 + 1e-6;
    let hi = 1.0 - 5e-3;
    let mut brackets = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for i in 0..=n {
        let t = lo + (hi - lo) * i as f64 / n as f64;
        let v = criticality(field, t)?;
        if let Some((t0, v0)) = prev {
            if v0 == 0.0 || v0 * v < 0.0 {
                brackets.push((t0, t));
            }
        }
        prev = Some((t, v));
    }
    // Top sliver (hi, 1]: criticality at t = 1 is exact, and equals the
    // Gonchar full-support expression W + qU − q(R−1)^{d−s}/(R+1)^d.
    let v_hi = prev.expect("scan is nonempty").1;
    let v_one = criticality(field, 1.0)?;
    if brackets.is_empty() && (v_hi == 0.0 || v_hi * v_one < 0.0) {
        brackets.push((hi, 1.0));
    }
    match brackets.len() {
        0 => {
            // No root: by the uniqueness theorem the equilibrium is the
            // full sphere; cross-check via the Gonchar criterion for q<0.
            if field.q < 0.0 && !support_is_full_sphere(field)? {
                return Err(Error::numeric(
                    "critical_t: scan found no root but the Gonchar criterion \
                     demands a restricted support",
                ));
            }
            full_sphere_result(field)
        }
        1 => {
            let (a, b) = brackets[0];
            let t_c = brent(|t| criticality(field, t), a, b, 1e-12, 200)?;
            let measure = cap_signed_equilibrium(field, t_c)?;
            if !measure.is_positive() {
                return Err(Error::numeric(format!(
                    "critical_t: measure at t_c = {t_c} failed the positivity check"
                )));
            }
            let f_const = measure.phi();
            Ok(ExtremalResult { field: *field, t_c, measure, f_const })
        }
        k => Err(Error::numeric(format!(
            "critical_t: {k} sign changes found; expected at most one (diagnostic)"
        ))),
    }
}

/// Full-sphere extremal result (t_c = 1) wrapping the signed sphere
/// equilibrium.
fn full_sphere_result(field: &AxialPointField) -> Result<ExtremalResult> {
    let eq = signed_eq_sphere(field)?;
    let phi = eq.constant();
    let density = eq.density_axial()?;
    let mass = density.mass()?;
    if (mass - 1.0).abs() > 1e-8 {
        return Err(Error::numeric(format!(
            "critical_t: full-sphere mass {mass} deviates from 1"
        )));
    }
    let mut grid_min = f64::INFINITY;
    for i in 0..400 {
        let u = -1.0 + 2.0 * (i as f64 + 0.5) / 400.0;
        grid_min = grid_min.min(eq.density(u));
    }
    let measure = CapEquilibrium {
        field: *field,
        t: 1.0,
        phi,
        density,
        boundary_charge: None,
        is_positive: grid_min >= -1e-9 * phi.abs().max(1.0),
    };
    Ok(ExtremalResult { field: *field, t_c: 1.0, measure, f_const: phi })
}

/// Limiting cap equilibrium at s = d−2 (d ≥ 3): bounded density
/// η̄′(u) = Φ̄/W − (q/W)(R²−1)²/(R²+2Ru+1)^{d/2+1} plus a boundary ring
/// charge q̄_t = ((1−t)/2)(1−t²)^{d/2−1} [Φ̄ − q(R−1)²/r_t^d], with Φ̄
/// fixed by unit total mass.
pub fn limiting_cap_equilibrium(field: &AxialPointField, t: f64) -> Result<CapEquilibrium> {
    let d = field.p.d();
    let df = field.p.df();
    let s = field.p.require_s()?;
    if d < 3 || (s - (df - 2.0)).abs() > 1e-12 {
        return Err(Error::domain(format!(
            "limiting_cap_equilibrium: requires s = d-2 with d >= 3 (got d = {d}, s = {s})"
        )));
    }
    field.require_r_gt1()?;
    if !(t > -1.0 && t < 1.0) {
        return Err(Error::domain(format!("cap intercept t = {t} outside (-1, 1)")));
    }
    let w = sphere_energy(&field.p)?;
    let q = field.q;
    let rr = field.big_r;
    let beta = df / 2.0 - 1.0;
    let rt2 = rr * rr + 2.0 * rr * t + 1.0;
    let c_t = 0.5 * (1.0 - t) * (1.0 - t * t).powf(beta);
    let atom_factor = (rr - 1.0) * (rr - 1.0) / rt2.powf(df / 2.0);

    // Altitude moments over [−1, t] against γ_d (1−u²)^β du.
    let unit = AxialDensity::new(d, |_| 1.0, 0.0, t)?;
    let j0 = unit.mass()?;
    let kernel_m = AxialDensity::new(
        d,
        move |u| (rr * rr + 2.0 * rr * u + 1.0).powf(-df / 2.0 - 1.0),
        0.0,
        t,
    )?;
    let j1 = kernel_m.mass()?;

    let k_a = j0 / w;
    let k_b = q / w * (rr * rr - 1.0) * (rr * rr - 1.0) * j1;
    let phi_bar = (1.0 + k_b + c_t * q * atom_factor) / (k_a + c_t);
    let q_bar = c_t * (phi_bar - q * atom_factor);

    let g = move |u: f64| {
        phi_bar / w
            - q / w * (rr * rr - 1.0) * (rr * rr - 1.0)
                * (rr * rr + 2.0 * rr * u + 1.0).powf(-df / 2.0 - 1.0)
    };
    let density = AxialDensity::new(d, g, 0.0, t)?;
    let mass = density.mass()? + q_bar;
    if (mass - 1.0).abs() > 1e-8 {
        return Err(Error::numeric(format!(
            "limiting_cap_equilibrium: total mass {mass} deviates from 1"
        )));
    }
    let mut grid_min = f64::INFINITY;
    for i in 0..400 {
        let u = -1.0 + (t + 1.0) * (i as f64 + 0.5) / 400.0;
        grid_min = grid_min.min(g(u));
    }
    let scale = phi_bar.abs().max(1.0);
    let is_positive = grid_min >= -1e-9 * scale && q_bar >= -1e-9 * scale;
    Ok(CapEquilibrium {
        field: *field,
        t,
        phi: phi_bar,
        density,
        boundary_charge: Some(q_bar),
        is_positive,
    })
}

/// Frostman verification report for an extremal result.
#[derive(Debug, Clone, serde::Serialize)]
pub struct VariationalReport {
    /// max |U+Q−F| over support samples.
    pub support_max_abs_dev: f64,
    /// min (U+Q−F) over off-support samples (nonnegative when the
    /// variational inequality holds).
    pub off_support_min_margin: f64,
    /// Minimum sampled density value (diagnoses signed "measures").
    pub density_min: f64,
    pub pass: bool,
}

/// Check the variational (Frostman) inequalities on an altitude grid:
/// |U+Q−F| ≤ 1e−5 on the support and U+Q−F ≥ −1e−5 off it.
pub fn verify_variational(result: &ExtremalResult, grid: &[f64]) -> Result<VariationalReport> {
    let eq = result.measure();
    let f = result.f_const();
    let mut support_dev: f64 = 0.0;
    let mut off_margin = f64::INFINITY;
    let mut density_min = f64::INFINITY;
    for &xi in grid {
        if xi.abs() > 1.0 {
            continue;
        }
        let w = weighted_potential(eq, xi)?;
        if xi <= eq.t() {
            support_dev = support_dev.max((w - f).abs());
            density_min = density_min.min(eq.density_value(xi));
        } else {
            off_margin = off_margin.min(w - f);
        }
    }
    if off_margin == f64::INFINITY {
        off_margin = 0.0;
    }
    if density_min == f64::INFINITY {
        density_min = 0.0;
    }
    let scale = f.abs().max(1.0);
    let pass = support_dev <= 1e-5 * scale && off_margin >= -1e-5 * scale;
    Ok(VariationalReport {
        support_max_abs_dev: support_dev,
        off_support_min_margin: off_margin,
        density_min,
        pass,
    })
}

/// Assemble an extremal-like result from a cap equilibrium at an
/// arbitrary intercept (for perturbation studies; F is taken as the cap's
/// own Φ).
pub fn extremal_at(field: &AxialPointField, t: f64) -> Result<ExtremalResult> {
    let measure = if t >= 1.0 {
        return full_sphere_result(field);
    } else {
        cap_signed_equilibrium(field, t)?
    };
    let f_const = measure.phi();
    Ok(ExtremalResult { field: *field, t_c: t, measure, f_const })
}
