//! Gaussian quadrature rules: Gauss–Legendre (Newton iteration on the
//! three-term recurrence) and Gauss–Jacobi for the weight
//! (1−x)^α (1+x)^β via the Golub–Welsch eigenvalue method.
//!
//! Both rules are produced on [−1, 1]; affine mappings carry a Jacobi rule
//! onto [a, b] with weight (b−u)^α (u−a)^β including the Jacobian power
//! ((b−a)/2)^{α+β+1}.  A geometric panel subdivision is provided for
//! composite rules graded toward an endpoint singularity.

use crate::error::{Error, Result};
use crate::specfun::beta_fn;
use nalgebra::{DMatrix, SymmetricEigen};

/// Nodes and weights of the n-point Gauss–Legendre rule on [−1, 1].
///
/// Nodes are ascending; the rule integrates polynomials of degree 2n−1
/// exactly.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "gauss_legendre: need n >= 1");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..(n + 1) / 2 {
        // Tricomi-style initial guess, then Newton on P_n.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_pd(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                let (p2, d2) = legendre_pd(n, x);
                dp = d2;
                x -= p2 / d2;
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        weights[i] = w;
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        let (_, d) = legendre_pd(n, 0.0);
        nodes[n / 2] = 0.0;
        weights[n / 2] = 2.0 / (d * d);
    }
    (nodes, weights)
}

/// Legendre polynomial P_n and its derivative at x.
fn legendre_pd(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Nodes and weights of the n-point Gauss–Jacobi rule on [−1, 1] for the
/// weight (1−x)^α (1+x)^β, α, β > −1.  Nodes ascending.
pub fn gauss_jacobi(n: usize, alpha: f64, beta: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    if n == 0 {
        return Err(Error::domain("gauss_jacobi: need n >= 1"));
    }
    if !(alpha > -1.0 && beta > -1.0) {
        return Err(Error::domain(format!(
            "gauss_jacobi: weight exponents must exceed -1 (alpha = {alpha}, beta = {beta})"
        )));
    }
    let ab = alpha + beta;
    // Diagonal a_k and squared off-diagonal b_k^2 of the Jacobi matrix.
    let mut diag = vec![0.0; n];
    let mut off = vec![0.0; n.saturating_sub(1)];
    diag[0] = (beta - alpha) / (ab + 2.0);
    for (k, d) in diag.iter_mut().enumerate().skip(1) {
        let kf = k as f64;
        let den = (2.0 * kf + ab) * (2.0 * kf + ab + 2.0);
        *d = (beta * beta - alpha * alpha) / den;
    }
    if n > 1 {
        off[0] = (4.0 * (1.0 + alpha) * (1.0 + beta) / ((ab + 2.0).powi(2) * (ab + 3.0))).sqrt();
        for (km1, o) in off.iter_mut().enumerate().skip(1) {
            let kf = (km1 + 1) as f64;
            let num = 4.0 * kf * (kf + alpha) * (kf + beta) * (kf + ab);
            let den = (2.0 * kf + ab).powi(2) * (2.0 * kf + ab + 1.0) * (2.0 * kf + ab - 1.0);
            *o = (num / den).sqrt();
        }
    }
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = diag[i];
        if i + 1 < n {
            m[(i, i + 1)] = off[i];
            m[(i + 1, i)] = off[i];
        }
    }
    let eig = SymmetricEigen::new(m);
    let mu0 = 2.0_f64.powf(ab + 1.0) * beta_fn(alpha + 1.0, beta + 1.0)?;
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|j| {
            let v = eig.eigenvectors[(0, j)];
            (eig.eigenvalues[j], mu0 * v * v)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(pairs.into_iter().unzip())
}

/// n-point Gauss–Jacobi rule on [lo, hi] for the weight
/// (hi−u)^α (u−lo)^β, with the Jacobian folded into the weights.
pub fn jacobi_on_interval(
    n: usize,
    alpha: f64,
    beta: f64,
    lo: f64,
    hi: f64,
) -> Result<(Vec<f64>, Vec<f64>)> {
    if !(hi > lo) {
        return Err(Error::domain(format!(
            "jacobi_on_interval: empty interval [{lo}, {hi}]"
        )));
    }
    let (xs, ws) = gauss_jacobi(n, alpha, beta)?;
    let half = 0.5 * (hi - lo);
    let mid = 0.5 * (hi + lo);
    let jac = half.powf(alpha + beta + 1.0);
    Ok((
        xs.iter().map(|x| mid + half * x).collect(),
        ws.iter().map(|w| w * jac).collect(),
    ))
}

/// n-point Gauss–Legendre rule on [lo, hi].
pub fn legendre_on_interval(n: usize, lo: f64, hi: f64) -> (Vec<f64>, Vec<f64>) {
    let (xs, ws) = gauss_legendre(n);
    let half = 0.5 * (hi - lo);
    let mid = 0.5 * (hi + lo);
    (
        xs.iter().map(|x| mid + half * x).collect(),
        ws.iter().map(|w| w * half).collect(),
    )
}

/// Geometrically graded subdivision of [lo, hi] with panels shrinking
/// toward one endpoint; the innermost panel touches it.  Panels are
/// returned outermost first.
pub fn graded_panels(lo: f64, hi: f64, toward_lo: bool, levels: usize) -> Vec<(f64, f64)> {
    let len = hi - lo;
    let mut panels = Vec::with_capacity(levels + 1);
    let mut frac = 1.0;
    for _ in 0..levels {
        let next = frac * 0.5;
        if toward_lo {
            panels.push((lo + next * len, lo + frac * len));
        } else {
            panels.push((hi - frac * len, hi - next * len));
        }
        frac = next;
    }
    if toward_lo {
        panels.push((lo, lo + frac * len));
    } else {
        panels.push((hi - frac * len, hi));
    }
    panels
}

/// Composite Gauss–Legendre integration over graded panels, for
/// integrands smooth away from the graded endpoint.
pub fn integrate_graded<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    toward_lo: bool,
    levels: usize,
    pts: usize,
) -> f64 {
    let mut total = 0.0;
    for (a, b) in graded_panels(lo, hi, toward_lo, levels) {
        let (xs, ws) = legendre_on_interval(pts, a, b);
        let mut acc = 0.0;
        for (x, w) in xs.iter().zip(&ws) {
            acc += w * f(*x);
        }
        total += acc;
    }
    total
}
