//! Scalar special functions: Gamma, Pochhammer, the Gauss hypergeometric
//! function ₂F₁ on z ≤ 1, its regularized form, and the regularized
//! incomplete Beta function.
//!
//! ₂F₁ evaluation strategy, chosen by argument:
//! * terminating series when a or b is a non-positive integer (any z ≤ 1);
//! * Gauss's summation at z = 1 (requires c − a − b > 0);
//! * Pfaff transformation for z < 0, mapping into (0, 1);
//! * direct power series for 0 ≤ z ≤ 0.9 (positive-parameter cases of
//!   interest have single-sign terms, so no cancellation);
//! * connection formulas in w = 1 − z for 0.9 < z < 1: the two-series
//!   form when c − a − b is not an integer, and the digamma–logarithm
//!   series when c − a − b ∈ ℤ (with one Euler transformation first when
//!   that integer is negative).  When c − a − b is within 1e−3 of an
//!   integer without being one, the direct series is used regardless of z
//!   to avoid the ill-conditioned connection coefficients.

use crate::error::{Error, Result};

/// Arguments of ₂F₁(a, b; c; z); the crate only evaluates real z ≤ 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hyp2F1Args {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub z: f64,
}

impl Hyp2F1Args {
    pub fn eval(&self) -> Result<f64> {
        hyp2f1(self.a, self.b, self.c, self.z)
    }
}

const SERIES_CUT: f64 = 0.9;
const INT_TOL: f64 = 1e-8;
const NEAR_INT_FALLBACK: f64 = 1e-3;
const MAX_TERMS: usize = 20_000_000;

/// True when x is a non-positive integer to within 1e-12.
fn is_nonpos_int(x: f64) -> bool {
    x < 0.5 && (x - x.round()).abs() < 1e-12 && x.round() <= 0.0
}

/// Gamma function with an explicit pole error at non-positive integers.
///
/// Arguments below 1/2 go through the reflection formula so that the
/// Lanczos evaluation only ever sees arguments bounded away from the poles.
pub fn gamma_fn(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::domain(format!("gamma: non-finite argument {x}")));
    }
    if is_nonpos_int(x) {
        return Err(Error::domain(format!(
            "gamma: pole at non-positive integer {x}"
        )));
    }
    if x >= 0.5 {
        Ok(statrs::function::gamma::gamma(x))
    } else {
        let s = (std::f64::consts::PI * x).sin();
        Ok(std::f64::consts::PI / (s * statrs::function::gamma::gamma(1.0 - x)))
    }
}

/// 1/Γ(x), returning 0 at the poles (entire function).
fn recip_gamma(x: f64) -> f64 {
    if is_nonpos_int(x) {
        0.0
    } else if x >= 0.5 {
        1.0 / statrs::function::gamma::gamma(x)
    } else {
        (std::f64::consts::PI * x).sin() * statrs::function::gamma::gamma(1.0 - x)
            / std::f64::consts::PI
    }
}

fn digamma(x: f64) -> f64 {
    statrs::function::gamma::digamma(x)
}

/// Pochhammer rising factorial (a)_n = a (a+1) ⋯ (a+n−1), (a)_0 = 1.
pub fn pochhammer(a: f64, n: u32) -> f64 {
    let mut p = 1.0;
    for k in 0..n {
        p *= a + k as f64;
    }
    p
}

fn factorial(n: u32) -> f64 {
    let mut p = 1.0;
    for k in 2..=n {
        p *= k as f64;
    }
    p
}

/// Gauss hypergeometric function ₂F₁(a, b; c; z) for real z ≤ 1.
///
/// Errors: `Domain` for z > 1, for non-positive-integer c (use
/// [`hyp2f1_regularized`]), and at z = 1 when c − a − b ≤ 0 (divergent);
/// `Numeric` if a series fails to converge within the term budget.
pub fn hyp2f1(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    if !(a.is_finite() && b.is_finite() && c.is_finite() && z.is_finite()) {
        return Err(Error::domain("hyp2f1: non-finite argument"));
    }
    if z > 1.0 {
        return Err(Error::domain(format!("hyp2f1: z = {z} > 1 unsupported")));
    }
    // Terminating series: valid for every z <= 1, including z = 1.
    if is_nonpos_int(a) || is_nonpos_int(b) {
        return polynomial_2f1(a, b, c, z);
    }
    if is_nonpos_int(c) {
        return Err(Error::domain(format!(
            "hyp2f1: pole at c = {c}; use hyp2f1_regularized"
        )));
    }
    if z == 1.0 {
        let m = c - a - b;
        if m <= 0.0 {
            return Err(Error::domain(format!(
                "hyp2f1: divergent at z = 1 since c - a - b = {m} <= 0"
            )));
        }
        return gauss_summation(a, b, c);
    }
    if z == 0.0 {
        return Ok(1.0);
    }
    if z < 0.0 {
        // Pfaff: F(a,b;c;z) = (1-z)^{-a} F(a, c-b; c; z/(z-1)), mapping into (0,1).
        let w = z / (z - 1.0);
        return Ok((1.0 - z).powf(-a) * hyp2f1(a, c - b, c, w)?);
    }
    if z <= SERIES_CUT {
        return series_2f1(a, b, c, z);
    }
    let m = c - a - b;
    let m_round = m.round();
    if (m - m_round).abs() < INT_TOL && m_round.abs() < 1e6 {
        near_one_integer(a, b, c, z, m_round as i64)
    } else if (m - m_round).abs() < NEAR_INT_FALLBACK {
        // Connection coefficients blow up like 1/(m - round(m)); the raw
        // series still converges for z < 1, just slowly.
        series_2f1(a, b, c, z)
    } else {
        near_one_generic(a, b, c, z, m)
    }
}

/// Regularized function F̃ = ₂F₁(a, b; c; z)/Γ(c), entire in c.
///
/// At c = −m (m ≥ 0) the limit
/// F̃ = ((a)_{m+1} (b)_{m+1} / (m+1)!) z^{m+1} ₂F₁(a+m+1, b+m+1; m+2; z)
/// is used; elsewhere it is the plain quotient.
pub fn hyp2f1_regularized(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    if !(a.is_finite() && b.is_finite() && c.is_finite() && z.is_finite()) {
        return Err(Error::domain("hyp2f1_regularized: non-finite argument"));
    }
    if z > 1.0 {
        return Err(Error::domain(format!(
            "hyp2f1_regularized: z = {z} > 1 unsupported"
        )));
    }
    if is_nonpos_int(c) {
        let m = (-c.round()) as u32;
        let coeff = pochhammer(a, m + 1) * pochhammer(b, m + 1) / factorial(m + 1);
        if coeff == 0.0 {
            return Ok(0.0);
        }
        let f = hyp2f1(a + m as f64 + 1.0, b + m as f64 + 1.0, m as f64 + 2.0, z)?;
        return Ok(coeff * z.powi(m as i32 + 1) * f);
    }
    Ok(hyp2f1(a, b, c, z)? / gamma_fn(c)?)
}

/// Regularized incomplete Beta function I_x(a, b).
pub fn inc_beta_regularized(x: f64, a: f64, b: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::domain(format!(
            "inc_beta_regularized: x = {x} outside [0,1]"
        )));
    }
    if !(a > 0.0 && b > 0.0) {
        return Err(Error::domain(format!(
            "inc_beta_regularized: need a, b > 0, got a = {a}, b = {b}"
        )));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x == 1.0 {
        return Ok(1.0);
    }
    Ok(statrs::function::beta::beta_reg(a, b, x))
}

/// Complete Beta function B(a, b) for a, b > 0.
pub fn beta_fn(a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0) {
        return Err(Error::domain(format!(
            "beta_fn: need a, b > 0, got a = {a}, b = {b}"
        )));
    }
    Ok(statrs::function::beta::beta(a, b))
}

/// Terminating series when a or b is a non-positive integer.
fn polynomial_2f1(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    let na = if is_nonpos_int(a) { (-a.round()) as i64 } else { i64::MAX };
    let nb = if is_nonpos_int(b) { (-b.round()) as i64 } else { i64::MAX };
    let n = na.min(nb);
    let mut sum = 0.0;
    let mut t = 1.0;
    for k in 0..=n {
        sum += t;
        if k == n {
            break;
        }
        let kf = k as f64;
        let cf = c + kf;
        if cf.abs() < 1e-12 {
            // A genuine pole of (c)_k inside the truncation range.
            return Err(Error::domain(format!(
                "hyp2f1: (c)_k vanishes before the series terminates (c = {c})"
            )));
        }
        t *= (a + kf) * (b + kf) * z / (cf * (kf + 1.0));
    }
    Ok(sum)
}

/// Gauss's theorem: F(a,b;c;1) = Γ(c)Γ(c−a−b) / (Γ(c−a)Γ(c−b)).
fn gauss_summation(a: f64, b: f64, c: f64) -> Result<f64> {
    let num = gamma_fn(c)? * gamma_fn(c - a - b)?;
    Ok(num * recip_gamma(c - a) * recip_gamma(c - b))
}

/// Direct power series, for 0 < z ≤ 0.9 or as a near-integer fallback.
fn series_2f1(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    let mut sum = 1.0;
    let mut t = 1.0;
    let mut below = 0u32;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        let cf = c + kf;
        if cf.abs() < 1e-12 {
            return Err(Error::domain(format!(
                "hyp2f1: series hits pole of (c)_k at c = {c}, k = {k}"
            )));
        }
        t *= (a + kf) * (b + kf) * z / (cf * (kf + 1.0));
        sum += t;
        if t.abs() <= 1e-17 * sum.abs().max(1e-300) {
            below += 1;
            if below >= 2 {
                return Ok(sum);
            }
        } else {
            below = 0;
        }
    }
    Err(Error::numeric(format!(
        "hyp2f1: series failed to converge (a={a}, b={b}, c={c}, z={z}); last term {t:.3e}"
    )))
}

/// Connection formula in w = 1 − z for non-integer m = c − a − b.
fn near_one_generic(a: f64, b: f64, c: f64, z: f64, m: f64) -> Result<f64> {
    let w = 1.0 - z;
    let gc = gamma_fn(c)?;
    let p1 = gc * gamma_fn(m)? * recip_gamma(c - a) * recip_gamma(c - b);
    let p2 = gc * gamma_fn(-m)? * recip_gamma(a) * recip_gamma(b) * w.powf(m);
    let f1 = if p1 == 0.0 { 0.0 } else { series_2f1(a, b, a + b - c + 1.0, w)? };
    let f2 = if p2 == 0.0 { 0.0 } else { series_2f1(c - a, c - b, m + 1.0, w)? };
    Ok(p1 * f1 + p2 * f2)
}

/// Digamma–logarithm series for integer m = c − a − b; negative m is first
/// reduced by the Euler transformation F = (1−z)^m F(c−a, c−b; c; z).
fn near_one_integer(a: f64, b: f64, c: f64, z: f64, m: i64) -> Result<f64> {
    let w = 1.0 - z;
    if m < 0 {
        return Ok(w.powi(m as i32) * hyp2f1(c - a, c - b, c, z)?);
    }
    let mu = m as u32;
    let mf = m as f64;
    let lw = w.ln();
    let gc = gamma_fn(c)?;

    // Finite part: Γ(m)Γ(c)/(Γ(a+m)Γ(b+m)) Σ_{k<m} (a)_k (b)_k / (k! (1−m)_k) w^k.
    let mut finite = 0.0;
    if m >= 1 {
        let pref = gamma_fn(mf)? * gc * recip_gamma(a + mf) * recip_gamma(b + mf);
        let mut t = 1.0;
        for k in 0..mu {
            finite += t;
            if k + 1 < mu {
                let kf = k as f64;
                t *= (a + kf) * (b + kf) * w / ((kf + 1.0) * (1.0 - mf + kf));
            }
        }
        finite *= pref;
    }

    // Logarithmic part: −(−1)^m Γ(c)/(Γ(a)Γ(b)) w^m
    //   Σ_k (a+m)_k (b+m)_k / (k!(k+m)!) w^k [ln w − ψ(k+1) − ψ(k+m+1) + ψ(a+m+k) + ψ(b+m+k)].
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    let pref2 = sign * gc * recip_gamma(a) * recip_gamma(b) * w.powi(m as i32);
    let mut sum2 = 0.0;
    if pref2 != 0.0 {
        let mut t = 1.0 / factorial(mu);
        let mut d1 = digamma(1.0);
        let mut d2 = digamma(mf + 1.0);
        let mut d3 = digamma(a + mf);
        let mut d4 = digamma(b + mf);
        let mut converged = false;
        for k in 0..MAX_TERMS {
            let kf = k as f64;
            let bracket = lw - d1 - d2 + d3 + d4;
            let term = t * bracket;
            sum2 += term;
            if term.abs() <= 1e-17 * sum2.abs().max(1e-300) && k > 3 {
                converged = true;
                break;
            }
            t *= (a + mf + kf) * (b + mf + kf) * w / ((kf + 1.0) * (kf + 1.0 + mf));
            d1 += 1.0 / (kf + 1.0);
            d2 += 1.0 / (kf + mf + 1.0);
            d3 += 1.0 / (a + mf + kf);
            d4 += 1.0 / (b + mf + kf);
        }
        if !converged {
            return Err(Error::numeric(format!(
                "hyp2f1: logarithmic connection series failed to converge \
                 (a={a}, b={b}, c={c}, z={z})"
            )));
        }
    }
    Ok(finite - pref2 * sum2)
}
