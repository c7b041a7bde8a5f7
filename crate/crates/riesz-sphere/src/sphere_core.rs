//! Kernel constants, cap geometry, and potentials of axially symmetric
//! measures on 𝕊^d ⊂ ℝ^{d+1}.
//!
//! Normalizations: σ_d is the uniform probability measure; its altitude
//! marginal is γ_d (1−u²)^{d/2−1} du with γ_d = Γ((d+1)/2)/(√π Γ(d/2)).
//! W_s(𝕊^d) denotes the Riesz s-energy of σ_d, finite for 0 < s < d.
//!
//! The on-sphere potential of an axial measure is reduced by the
//! Funk–Hecke mechanism to a single altitude integral against the
//! longitude kernel
//!   K_s(ξ,u) = (A+B)^{−s/2} ₂F₁(s/2, (d−1)/2; d−1; 2B/(A+B)),
//!   A = 2−2ξu, B = 2√((1−ξ²)(1−u²)),
//! which is the longitude average of |x−y|^{−s} over the circle at
//! altitude u seen from a point at altitude ξ.  K_s is singular (or, at
//! s = d−1, logarithmically singular) on the diagonal u = ξ; interior
//! evaluations subtract the density value at ξ and integrate the
//! remainder over geometrically graded panels, adding back
//! density(ξ)·[W_s − (complement integral)] which is exact by rotation
//! invariance of the uniform potential.

use crate::error::{Error, Result};
use crate::quad::{integrate_graded, jacobi_on_interval};
use crate::specfun::{beta_fn, gamma_fn, hyp2f1, inc_beta_regularized};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Interaction kernel: Riesz |x−y|^{−s} or logarithmic log(1/|x−y|).
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub enum KernelKind {
    Riesz(f64),
    Logarithmic,
}

/// Dimension d of the sphere together with the kernel.
///
/// The logarithmic kind is only meaningful with d = 2 in equilibrium
/// operations; range requirements on s (classical 0 < s < d versus
/// hyper-singular s > d) are enforced by each operation.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct RieszParameter {
    d: u32,
    kind: KernelKind,
}

impl RieszParameter {
    pub fn riesz(d: u32, s: f64) -> Result<Self> {
        if d < 2 {
            return Err(Error::domain(format!("dimension d = {d} must be >= 2")));
        }
        if !(s > 0.0 && s.is_finite()) {
            return Err(Error::domain(format!("Riesz exponent s = {s} must be positive")));
        }
        Ok(Self { d, kind: KernelKind::Riesz(s) })
    }

    pub fn logarithmic(d: u32) -> Result<Self> {
        if d < 2 {
            return Err(Error::domain(format!("dimension d = {d} must be >= 2")));
        }
        Ok(Self { d, kind: KernelKind::Logarithmic })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn df(&self) -> f64 {
        f64::from(self.d)
    }

    pub fn kind(&self) -> KernelKind {
        self.kind
    }

    pub fn s(&self) -> Option<f64> {
        match self.kind {
            KernelKind::Riesz(s) => Some(s),
            KernelKind::Logarithmic => None,
        }
    }

    pub fn is_logarithmic(&self) -> bool {
        matches!(self.kind, KernelKind::Logarithmic)
    }

    pub(crate) fn require_s(&self) -> Result<f64> {
        self.s()
            .ok_or_else(|| Error::domain("operation requires a Riesz kernel, got logarithmic"))
    }

    /// s restricted to the classical range 0 < s < d.
    pub(crate) fn require_classical(&self) -> Result<f64> {
        let s = self.require_s()?;
        if s >= self.df() {
            return Err(Error::domain(format!(
                "s = {s} outside the classical range (0, d) for d = {}",
                self.d
            )));
        }
        Ok(s)
    }

    /// s restricted to the hyper-singular range s > d.
    pub(crate) fn require_hyper(&self) -> Result<f64> {
        let s = self.require_s()?;
        if s <= self.df() {
            return Err(Error::domain(format!(
                "s = {s} not in the hyper-singular range s > d = {}",
                self.d
            )));
        }
        Ok(s)
    }
}

/// Spherical-cap parameter: altitude intercept t, equivalently the
/// Euclidean radius ρ with ρ² = 2(1−t) of the cap about the opposite pole.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct CapParam {
    t: f64,
}

impl CapParam {
    pub fn from_t(t: f64) -> Result<Self> {
        if !((-1.0..=1.0).contains(&t)) {
            return Err(Error::domain(format!("cap intercept t = {t} outside [-1, 1]")));
        }
        Ok(Self { t })
    }

    pub fn from_rho(rho: f64) -> Result<Self> {
        if !((0.0..=2.0).contains(&rho)) {
            return Err(Error::domain(format!("cap radius rho = {rho} outside [0, 2]")));
        }
        Ok(Self { t: 1.0 - rho * rho / 2.0 })
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn rho(&self) -> f64 {
        (2.0 * (1.0 - self.t)).sqrt()
    }
}

/// γ_d = Γ((d+1)/2) / (√π Γ(d/2)), the altitude-marginal normalizer.
pub fn gamma_d(d: u32) -> f64 {
    let df = f64::from(d);
    statrs::function::gamma::gamma((df + 1.0) / 2.0)
        / (std::f64::consts::PI.sqrt() * statrs::function::gamma::gamma(df / 2.0))
}

/// Riesz s-energy W_s(𝕊^d) of the uniform measure, 0 < s < d.
///
/// The logarithmic kind returns the conventional stand-in 1 used by the
/// separation bound.
pub fn sphere_energy(p: &RieszParameter) -> Result<f64> {
    match p.kind() {
        KernelKind::Logarithmic => Ok(1.0),
        KernelKind::Riesz(_) => {
            let s = p.require_classical()?;
            let d = p.df();
            let num = 2.0_f64.powf(d - 1.0 - s)
                * gamma_fn((d + 1.0) / 2.0)?
                * gamma_fn((d - s) / 2.0)?;
            Ok(num / (std::f64::consts::PI.sqrt() * gamma_fn(d - s / 2.0)?))
        }
    }
}

/// Potential of σ_d at an axis point of distance R from the centre:
/// U_s^{σ_d} = (R+1)^{−s} ₂F₁(s/2, d/2; d; 4R/(R+1)²).
///
/// Valid for any s > 0 when R > 1 (the hypergeometric argument stays
/// below 1); R = 1 is admitted only for s < d, where Gauss summation
/// applies.  Used internally also in the hyper-singular range.
pub(crate) fn axis_uniform_potential(d: f64, s: f64, big_r: f64) -> Result<f64> {
    if big_r < 1.0 {
        return Err(Error::domain(format!("axis distance R = {big_r} must be >= 1")));
    }
    let z = 4.0 * big_r / ((big_r + 1.0) * (big_r + 1.0));
    Ok((big_r + 1.0).powf(-s) * hyp2f1(s / 2.0, d / 2.0, d, z.min(1.0))?)
}

/// Exterior potential of the uniform measure, classical range, R > 1.
pub fn uniform_potential_exterior(p: &RieszParameter, big_r: f64) -> Result<f64> {
    let s = p.require_classical()?;
    if !(big_r > 1.0) {
        return Err(Error::domain(format!(
            "uniform_potential_exterior: R = {big_r} must exceed 1"
        )));
    }
    axis_uniform_potential(p.df(), s, big_r)
}

/// Normalized area of a spherical cap of Euclidean radius r ∈ (0, 2]:
/// σ_d(C(x,r)) = γ_d ∫_{1−r²/2}^{1} (1−t²)^{d/2−1} dt
///             = γ_d 2^{d−1} B(d/2, d/2) I_{r²/4}(d/2, d/2).
pub fn cap_area(d: u32, r: f64) -> Result<f64> {
    if !(r > 0.0 && r <= 2.0) {
        return Err(Error::domain(format!("cap radius r = {r} outside (0, 2]")));
    }
    if d < 2 {
        return Err(Error::domain(format!("dimension d = {d} must be >= 2")));
    }
    let df = f64::from(d);
    let half = df / 2.0;
    let x = r * r / 4.0;
    Ok(gamma_d(d)
        * 2.0_f64.powf(df - 1.0)
        * beta_fn(half, half)?
        * inc_beta_regularized(x.min(1.0), half, half)?)
}

/// Riesz potential of the uniform measure restricted to the complement of
/// a cap of radius r, evaluated at the cap centre:
/// ∫_{𝕊^d∖C(x,r)} |x−y|^{−s} dσ_d(y)
///   = (γ_d/d) r^{d−s} (1−r²/4)^{d/2} ₂F₁(d−s/2, 1; 1+d/2; 1−r²/4).
///
/// Valid for all s > 0 with s ≠ d, on r ∈ (0, 2).
pub fn deleted_cap_integral(p: &RieszParameter, r: f64) -> Result<f64> {
    let s = p.require_s()?;
    let d = p.df();
    if s == d {
        return Err(Error::domain(format!("deleted_cap_integral: s = d = {s} excluded")));
    }
    if !(r > 0.0 && r < 2.0) {
        return Err(Error::domain(format!("deleted_cap_integral: r = {r} outside (0, 2)")));
    }
    let x = 1.0 - r * r / 4.0;
    let f = hyp2f1(d - s / 2.0, 1.0, 1.0 + d / 2.0, x)?;
    Ok(gamma_d(p.d()) / d * r.powf(d - s) * x.powf(d / 2.0) * f)
}

/// Coefficient β_{s,d} in the hyper-singular deleted-cap remainder bound,
/// defined for s > d by the three-case formula
///   0                      for d <  s ≤ 2d,
///   (s/2−d)/((s−d)(s−d−2)) for 2d < s < 2d+2,
///   (s/2−d)/(d(d+2))       for s ≥ 2d+2.
pub fn remainder_coeff(p: &RieszParameter) -> Result<f64> {
    let s = p.require_hyper()?;
    let d = p.df();
    if s <= 2.0 * d {
        Ok(0.0)
    } else if s < 2.0 * d + 2.0 {
        Ok((s / 2.0 - d) / ((s - d) * (s - d - 2.0)))
    } else {
        Ok((s / 2.0 - d) / (d * (d + 2.0)))
    }
}

/// Longitude kernel K_s(ξ, u): the average of |x−y|^{−s} over the circle
/// of altitude u, seen from an on-sphere point of altitude ξ.
///
/// Both altitudes in [−1, 1], d ≥ 2.  Singular at u = ξ unless s < d−1;
/// errors there (and at coincident poles) rather than returning ∞.
pub fn longitude_kernel(d: u32, s: f64, xi: f64, u: f64) -> Result<f64> {
    if d < 2 {
        return Err(Error::domain("longitude_kernel: need d >= 2"));
    }
    if xi.abs() > 1.0 || u.abs() > 1.0 {
        return Err(Error::domain(format!(
            "longitude_kernel: altitudes ({xi}, {u}) outside [-1, 1]"
        )));
    }
    let df = f64::from(d);
    let a = 2.0 - 2.0 * xi * u;
    let b2 = (1.0 - xi * xi) * (1.0 - u * u);
    let b = if b2 > 0.0 { 2.0 * b2.sqrt() } else { 0.0 };
    if a + b < 1e-300 {
        return Err(Error::domain("longitude_kernel: coincident points"));
    }
    if b == 0.0 {
        return Ok(a.powf(-s / 2.0));
    }
    let z = (2.0 * b / (a + b)).min(1.0);
    if z == 1.0 && s >= df - 1.0 {
        return Err(Error::domain(
            "longitude_kernel: divergent on the diagonal for s >= d-1",
        ));
    }
    Ok((a + b).powf(-s / 2.0) * hyp2f1(s / 2.0, (df - 1.0) / 2.0, df - 1.0, z)?)
}

type RuleKey = (usize, u64, u64, u64, u64);

/// Process-wide memo of Gauss–Jacobi rules keyed by size, exponents and
/// interval bits; rules are deterministic, so sharing is sound.
fn cached_jacobi_rule(
    n: usize,
    alpha: f64,
    beta: f64,
    lo: f64,
    hi: f64,
) -> Result<Arc<(Vec<f64>, Vec<f64>)>> {
    static CACHE: OnceLock<Mutex<HashMap<RuleKey, Arc<(Vec<f64>, Vec<f64>)>>>> = OnceLock::new();
    let key = (n, alpha.to_bits(), beta.to_bits(), lo.to_bits(), hi.to_bits());
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(rule) = cache.lock().unwrap().get(&key) {
        return Ok(rule.clone());
    }
    let rule = Arc::new(jacobi_on_interval(n, alpha, beta, lo, hi)?);
    cache.lock().unwrap().insert(key, rule.clone());
    Ok(rule)
}

/// Axially symmetric density g(u)(t_max−u)^α on the altitude interval
/// [−1, t_max], integrated against dσ_d, i.e. against
/// γ_d (t_max−u)^α (1−u²)^{d/2−1} du after the weight split.
///
/// α ∈ (−1, 0] is the boundary exponent at u = t_max (α = (s−d)/2 for cap
/// equilibria, 0 for smooth densities); g itself must be smooth on the
/// closed support.  The constructor builds the Gauss–Jacobi mass rules so
/// that evaluation methods are read-only and thread-safe.
pub struct AxialDensity {
    g: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    alpha: f64,
    t_max: f64,
    d: u32,
    base_rule: (Vec<f64>, Vec<f64>),
    fine_rule: (Vec<f64>, Vec<f64>),
}

impl std::fmt::Debug for AxialDensity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AxialDensity")
            .field("alpha", &self.alpha)
            .field("t_max", &self.t_max)
            .field("d", &self.d)
            .finish_non_exhaustive()
    }
}

const MASS_N: usize = 96;
const MASS_N_FINE: usize = 144;

/// Rule integrating h(u) against γ_d (t−u)^α (1−u²)^{d/2−1} du on [−1, t];
/// the (1−u)^{d/2−1} factor moves into the weight exponent when t = 1.
fn density_rule(d: u32, alpha: f64, t_max: f64, n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let beta = f64::from(d) / 2.0 - 1.0;
    let gd = gamma_d(d);
    if t_max < 1.0 {
        let rule = cached_jacobi_rule(n, alpha, beta, -1.0, t_max)?;
        let (xs, ws) = rule.as_ref();
        Ok((
            xs.clone(),
            xs.iter()
                .zip(ws)
                .map(|(x, w)| w * gd * (1.0 - x).powf(beta))
                .collect(),
        ))
    } else {
        let rule = cached_jacobi_rule(n, alpha + beta, beta, -1.0, 1.0)?;
        let (xs, ws) = rule.as_ref();
        Ok((xs.clone(), ws.iter().map(|w| w * gd).collect()))
    }
}

impl AxialDensity {
    pub fn new(
        d: u32,
        g: impl Fn(f64) -> f64 + Send + Sync + 'static,
        alpha: f64,
        t_max: f64,
    ) -> Result<Self> {
        if d < 2 {
            return Err(Error::domain(format!("AxialDensity: dimension d = {d} must be >= 2")));
        }
        if !(alpha > -1.0 && alpha <= 0.0) {
            return Err(Error::domain(format!(
                "AxialDensity: boundary exponent alpha = {alpha} outside (-1, 0]"
            )));
        }
        if !(t_max > -1.0 && t_max <= 1.0) {
            return Err(Error::domain(format!(
                "AxialDensity: t_max = {t_max} outside (-1, 1]"
            )));
        }
        let base_rule = density_rule(d, alpha, t_max, MASS_N)?;
        let fine_rule = density_rule(d, alpha, t_max, MASS_N_FINE)?;
        Ok(Self { g: Arc::new(g), alpha, t_max, d, base_rule, fine_rule })
    }

    /// The field-free density of σ_d itself: g ≡ 1 on the whole sphere.
    pub fn uniform(d: u32) -> Result<Self> {
        Self::new(d, |_| 1.0, 0.0, 1.0)
    }

    pub fn zero(d: u32) -> Result<Self> {
        Self::new(d, |_| 0.0, 0.0, 1.0)
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    /// Smooth coefficient g(u) without the boundary factor.
    pub fn coefficient(&self, u: f64) -> f64 {
        (self.g)(u)
    }

    /// Full density value g(u)(t_max−u)^α; zero outside the support and
    /// unbounded at u → t_max when α < 0.
    pub fn value(&self, u: f64) -> f64 {
        if !(-1.0..=self.t_max).contains(&u) {
            return 0.0;
        }
        if self.alpha == 0.0 {
            (self.g)(u)
        } else {
            (self.g)(u) * (self.t_max - u).powf(self.alpha)
        }
    }

    /// ∫ g(u) f(u) dρ where dρ is the full weighted measure; `fine`
    /// selects the refined rule for convergence checks.
    pub(crate) fn integrate_against<F: FnMut(f64) -> f64>(&self, mut f: F, fine: bool) -> f64 {
        let (xs, ws) = if fine { &self.fine_rule } else { &self.base_rule };
        let mut acc = 0.0;
        for (x, w) in xs.iter().zip(ws) {
            acc += w * (self.g)(*x) * f(*x);
        }
        acc
    }

    /// Total mass ∫ density dσ_d with a two-rule convergence check.
    ///
    /// Sources close to the sphere put a boundary layer of width ~(R−1)²
    /// into g near u = −1; when the default rules disagree the check is
    /// retried with denser rules before reporting failure.
    pub fn mass(&self) -> Result<f64> {
        let m1 = self.integrate_against(|_| 1.0, false);
        let m2 = self.integrate_against(|_| 1.0, true);
        if (m1 - m2).abs() <= 1e-9 * m2.abs().max(1.0) {
            return Ok(m2);
        }
        let mut last = (m1, m2);
        for n in [3 * MASS_N, 9 * MASS_N] {
            let coarse = density_rule(self.d, self.alpha, self.t_max, n)?;
            let fine = density_rule(self.d, self.alpha, self.t_max, n * 3 / 2)?;
            let eval = |rule: &(Vec<f64>, Vec<f64>)| -> f64 {
                rule.0.iter().zip(&rule.1).map(|(x, w)| w * (self.g)(*x)).sum()
            };
            let mc = eval(&coarse);
            let mf = eval(&fine);
            if (mc - mf).abs() <= 1e-9 * mf.abs().max(1.0) {
                return Ok(mf);
            }
            last = (mc, mf);
        }
        Err(Error::numeric(format!(
            "axial mass quadrature not converged: {} vs {} (residual {:.3e})",
            last.0,
            last.1,
            (last.0 - last.1).abs()
        )))
    }
}

/// Potential U_s of an axially symmetric measure, evaluated on the sphere
/// at altitude ξ, or (with `exterior_r = Some(R)`, R > 1) at the axis
/// point R·p on the north side, in which case ξ is ignored.
///
/// Relative accuracy target: 1e−7 away from the support boundary, 1e−5
/// within 1e−3 of it; a failed internal convergence check reports a
/// `Numeric` error carrying the residual.
pub fn axial_potential(
    p: &RieszParameter,
    density: &AxialDensity,
    xi: f64,
    exterior_r: Option<f64>,
) -> Result<f64> {
    let s = p.require_s()?;
    if p.d() != density.d() {
        return Err(Error::domain(format!(
            "axial_potential: dimension mismatch (parameter d = {}, density d = {})",
            p.d(),
            density.d()
        )));
    }
    if let Some(big_r) = exterior_r {
        if !(big_r > 1.0) {
            return Err(Error::domain(format!(
                "axial_potential: exterior distance R = {big_r} must exceed 1"
            )));
        }
        let kernel = |u: f64| (big_r * big_r + 1.0 - 2.0 * big_r * u).powf(-s / 2.0);
        let v1 = density.integrate_against(kernel, false);
        let v2 = density.integrate_against(kernel, true);
        let tol = 1e-9 * v2.abs().max(1e-6);
        if (v1 - v2).abs() > tol {
            return Err(Error::numeric(format!(
                "axial_potential: exterior quadrature residual {:.3e} exceeds tolerance",
                (v1 - v2).abs()
            )));
        }
        return Ok(v2);
    }
    if xi.abs() > 1.0 {
        return Err(Error::domain(format!(
            "axial_potential: on-sphere altitude xi = {xi} outside [-1, 1]"
        )));
    }
    p.require_classical()?;
    let v1 = on_sphere_potential(p, density, xi, false)?;
    let v2 = on_sphere_potential(p, density, xi, true)?;
    let near_boundary = (xi - density.t_max()).abs() < 1e-3;
    let tol = if near_boundary { 2e-6 } else { 2e-8 };
    let resid = (v1 - v2).abs();
    if resid > tol * v2.abs().max(1e-4) {
        return Err(Error::numeric(format!(
            "axial_potential: on-sphere quadrature residual {resid:.3e} exceeds \
             tolerance at xi = {xi}"
        )));
    }
    Ok(v2)
}

/// One resolution level of the on-sphere evaluation.
fn on_sphere_potential(
    p: &RieszParameter,
    density: &AxialDensity,
    xi: f64,
    fine: bool,
) -> Result<f64> {
    let d = p.d();
    let df = p.df();
    let s = p.require_s()?;
    let beta = df / 2.0 - 1.0;
    let t = density.t_max();
    let alpha = density.alpha();
    let gd = gamma_d(d);
    let (n, levels, pts) = if fine { (144, 48, 20) } else { (96, 42, 16) };

    // Off the support: the kernel is smooth over [−1, t].  Evaluations
    // within a hair of the boundary are nudged inside instead.
    let nudge = 1e-9 * (1.0 + t.abs());
    if xi > t + nudge {
        let mut bad = Ok(());
        let v = density.integrate_against(
            |u| match longitude_kernel(d, s, xi, u) {
                Ok(k) => k,
                Err(e) => {
                    bad = Err(e);
                    f64::NAN
                }
            },
            fine,
        );
        bad?;
        return Ok(v);
    }

    // South pole: kernel reduces to (2+2u)^{−s/2}, folded into the bottom
    // Jacobi exponent.
    if xi <= -1.0 + 1e-14 {
        let (top, fold_top) = if t < 1.0 { (alpha, true) } else { (alpha + beta, false) };
        let rule = cached_jacobi_rule(n, top, beta - s / 2.0, -1.0, t)?;
        let (xs, ws) = rule.as_ref();
        let mut acc = 0.0;
        for (x, w) in xs.iter().zip(ws) {
            let mut f = gd * density.coefficient(*x) * 2.0_f64.powf(-s / 2.0);
            if fold_top {
                f *= (1.0 - x).powf(beta);
            }
            acc += w * f;
        }
        return Ok(acc);
    }

    // Interior (or boundary, nudged inward): singularity subtraction.
    let xi = if t - xi < nudge { t - nudge } else { xi };
    let dxi = density.value(xi);

    // S(ξ) = W_s − γ_d ∫_t^1 K (1−u²)^β du (zero complement when t = 1).
    let w_s = sphere_energy(p)?;
    let tail = if t >= 1.0 {
        0.0
    } else {
        let rule = cached_jacobi_rule(n, beta, 0.0, t, 1.0)?;
        let (xs, ws) = rule.as_ref();
        let mut acc = 0.0;
        for (x, w) in xs.iter().zip(ws) {
            acc += w * gd * longitude_kernel(d, s, xi, *x)? * (1.0 + x).powf(beta);
        }
        acc
    };

    // Subtracted core over [−1, t], singularity of K at u = ξ handled by
    // graded panels, endpoint weights by Jacobi rules.
    let kernel = |u: f64| longitude_kernel(d, s, xi, u).unwrap_or(f64::NAN);
    // In the innermost graded panels (1−z) underflows and the kernel
    // saturates; the subtracted integrand tends to 0 there (the density
    // difference vanishes faster than K diverges for s < d), so use that
    // limit instead of poisoning the sum.
    let diff = |u: f64| {
        let dv = density.value(u) - dxi;
        if dv == 0.0 {
            return 0.0;
        }
        match longitude_kernel(d, s, xi, u) {
            Ok(k) => dv * k * (1.0 - u * u).powf(beta),
            Err(_) if (u - xi).abs() < 1e-7 * (1.0 + xi.abs()) => 0.0,
            Err(_) => f64::NAN,
        }
    };

    let m1 = 0.5 * (xi - 1.0);
    let m3 = 0.5 * (xi + t);
    let mut core = 0.0;

    // [−1, m1]: bottom weight (1+u)^β.
    {
        let rule = cached_jacobi_rule(n, 0.0, beta, -1.0, m1)?;
        let (xs, ws) = rule.as_ref();
        for (x, w) in xs.iter().zip(ws) {
            core += w * (density.value(*x) - dxi) * kernel(*x) * (1.0 - x).powf(beta);
        }
    }
    // [m1, ξ] and [ξ, m3]: graded toward ξ.
    core += integrate_graded(diff, m1, xi, false, levels, pts);
    core += integrate_graded(diff, xi, m3, true, levels, pts);
    // [m3, t]: density part with its (t−u)^α weight, minus the subtracted
    // constant with a plain (or (1−u)^β-weighted, when t = 1) rule.
    {
        let (top, fold_top) = if t < 1.0 { (alpha, true) } else { (alpha + beta, false) };
        let rule = cached_jacobi_rule(n, top, 0.0, m3, t)?;
        let (xs, ws) = rule.as_ref();
        for (x, w) in xs.iter().zip(ws) {
            let mut f = density.coefficient(*x) * kernel(*x) * (1.0 + x).powf(beta);
            if fold_top {
                f *= (1.0 - x).powf(beta);
            }
            core += w * f;
        }
        let rule2 = cached_jacobi_rule(n, if t < 1.0 { 0.0 } else { beta }, 0.0, m3, t)?;
        let (xs2, ws2) = rule2.as_ref();
        for (x, w) in xs2.iter().zip(ws2) {
            let mut f = dxi * kernel(*x) * (1.0 + x).powf(beta);
            if t < 1.0 {
                f *= (1.0 - x).powf(beta);
            }
            core -= w * f;
        }
    }
    let core = gd * core;
    if !core.is_finite() || !tail.is_finite() {
        return Err(Error::numeric(format!(
            "axial_potential: non-finite intermediate at xi = {xi}"
        )));
    }
    Ok(core + dxi * (w_s - tail))
}
