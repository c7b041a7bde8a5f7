//! Independent collocation solver for the cap equilibrium problem at
//! d = 2, s = 1, used as a cross-check oracle for the closed-form
//! densities and constants.
//!
//! The equilibrium condition on the cap Σ_t = {v ≤ t} is
//!     ∫ K(ξ, u) dμ(u) + Q(ξ) = Φ   for ξ ∈ [−1, t],  μ(Σ_t) = 1,
//! with the circle-average kernel K.  Substituting u = t − (1+t)w²
//! absorbs the (t−u)^{−1/2} edge singularity of the density into a smooth
//! unknown g̃(w) with dμ = g̃(w) dw, w ∈ [0, 1].  The solver discretizes
//! g̃ by piecewise-linear interpolation on an even grid, collocates at
//! staggered points (never coinciding with grid nodes), appends the mass
//! constraint, and solves the square linear system by LU.  Nothing here
//! shares code with the closed-form implementation beyond basic
//! arithmetic.

#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};

/// Number of density nodes (and of collocation points).
pub const M: usize = 200;

/// Arithmetic–geometric mean; both arguments positive.
fn agm(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..80 {
        let an = 0.5 * (a + b);
        let bn = (a * b).sqrt();
        if (an - bn).abs() <= 1e-16 * an {
            return an;
        }
        a = an;
        b = bn;
    }
    0.5 * (a + b)
}

/// Circle-average Riesz kernel on S² at s = 1:
/// K(ξ, u) = (1/2π) ∫ |x−y|^{−1} dφ = 1/agm(√(A−B), √(A+B)),
/// A = 2 − 2ξu, B = 2√((1−ξ²)(1−u²)); log-singular at u = ξ.
pub fn kernel_s2_s1(xi: f64, u: f64) -> f64 {
    let a = 2.0 - 2.0 * xi * u;
    let b2 = (1.0 - xi * xi) * (1.0 - u * u);
    let b = if b2 > 0.0 { 2.0 * b2.sqrt() } else { 0.0 };
    let lo = (a - b).max(1e-280);
    1.0 / agm(lo.sqrt(), (a + b).sqrt())
}

/// Gauss–Legendre nodes/weights on [-1, 1] (Newton on Legendre P_n).
fn gl_rule(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut xs = vec![0.0; n];
    let mut ws = vec![0.0; n];
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let mut p0 = 1.0;
        let mut p1 = x;
        for k in 2..=n {
            let kf = k as f64;
            let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
            p0 = p1;
            p1 = p2;
        }
        let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
        xs[i] = x;
        ws[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (xs, ws)
}

/// Solution of the collocation system: g̃ at the w-nodes plus the
/// equilibrium constant.
pub struct CollocationSolution {
    pub t: f64,
    pub q: f64,
    pub big_r: f64,
    pub w_nodes: Vec<f64>,
    pub g_tilde: Vec<f64>,
    pub phi: f64,
}

impl CollocationSolution {
    /// Altitude of the w-node.
    pub fn altitude(&self, j: usize) -> f64 {
        self.t - (1.0 + self.t) * self.w_nodes[j] * self.w_nodes[j]
    }

    /// Equilibrium density with respect to σ₂ at node j ≥ 1, recovered
    /// from dμ = g̃ dw = (1/2)·density(u) du.
    pub fn sigma_density(&self, j: usize) -> f64 {
        let w = self.w_nodes[j];
        self.g_tilde[j] / (0.5 * 2.0 * (1.0 + self.t) * w)
    }

    /// Trapezoid integral of f(u)·dμ over the cap.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        let h = 1.0 / (M as f64 - 1.0);
        let mut acc = 0.0;
        for j in 0..M {
            let m = if j == 0 || j == M - 1 { 0.5 * h } else { h };
            acc += m * self.g_tilde[j] * f(self.altitude(j));
        }
        acc
    }
}

/// Solve the cap equilibrium on [−1, t] for the axial field
/// Q(ξ) = q (R² + 2Rξ + 1)^{−1/2} by collocation (d = 2, s = 1).
pub fn solve_cap_collocation(t: f64, q: f64, big_r: f64) -> CollocationSolution {
    assert!(t > -1.0 && t < 1.0);
    let m = M;
    let h = 1.0 / (m as f64 - 1.0);
    let w_nodes: Vec<f64> = (0..m).map(|j| j as f64 * h).collect();
    let u_of = |w: f64| t - (1.0 + t) * w * w;

    let (gx, gw) = gl_rule(12);
    let (sx, sw) = gl_rule(8);

    // System: rows 0..m are collocation equations, row m is the mass
    // constraint; columns 0..m are g̃ nodes, column m is Φ.
    let mut a = DMatrix::<f64>::zeros(m + 1, m + 1);
    let mut rhs = DVector::<f64>::zeros(m + 1);

    for i in 0..m {
        let w_star = (i as f64 + 0.5) / m as f64;
        let xi = u_of(w_star);
        // Accumulate ∫ φ_j(w) K(ξ_i, u(w)) dw cell by cell.
        let mut add_segment = |a: &mut DMatrix<f64>, j: usize, lo: f64, hi: f64, graded_to: Option<f64>| {
            let cell_lo = w_nodes[j];
            let cell_h = h;
            let mut quad = |x0: f64, x1: f64, xs: &[f64], ws: &[f64]| {
                let half = 0.5 * (x1 - x0);
                let mid = 0.5 * (x1 + x0);
                for (x, wq) in xs.iter().zip(ws) {
                    let w = mid + half * x;
                    let k = kernel_s2_s1(xi, u_of(w));
                    let lam = (w - cell_lo) / cell_h;
                    a[(i, j)] += half * wq * k * (1.0 - lam);
                    a[(i, j + 1)] += half * wq * k * lam;
                }
            };
            match graded_to {
                None => quad(lo, hi, &gx, &gw),
                Some(ws_pt) => {
                    // Geometric panels shrinking toward ws_pt (an endpoint).
                    let toward_hi = (ws_pt - hi).abs() < (ws_pt - lo).abs();
                    let levels = 34;
                    let mut frac = 1.0f64;
                    for _ in 0..levels {
                        let next = 0.5 * frac;
                        let (p0, p1) = if toward_hi {
                            (hi - frac * (hi - lo), hi - next * (hi - lo))
                        } else {
                            (lo + next * (hi - lo), lo + frac * (hi - lo))
                        };
                        quad(p0, p1, &sx, &sw);
                        frac = next;
                    }
                    let (p0, p1) = if toward_hi {
                        (hi - frac * (hi - lo), hi)
                    } else {
                        (lo, lo + frac * (hi - lo))
                    };
                    quad(p0, p1, &sx, &sw);
                }
            }
        };
        for j in 0..m - 1 {
            let lo = w_nodes[j];
            let hi = w_nodes[j + 1];
            if w_star > lo && w_star < hi {
                add_segment(&mut a, j, lo, w_star, Some(w_star));
                add_segment(&mut a, j, w_star, hi, Some(w_star));
            } else {
                add_segment(&mut a, j, lo, hi, None);
            }
        }
        a[(i, m)] = -1.0;
        let dist2 = big_r * big_r + 2.0 * big_r * xi + 1.0;
        rhs[i] = -q / dist2.sqrt();
    }
    // Mass row: trapezoid weights.
    for j in 0..m {
        a[(m, j)] = if j == 0 || j == m - 1 { 0.5 * h } else { h };
    }
    rhs[m] = 1.0;

    let lu = a.lu();
    let sol = lu.solve(&rhs).expect("collocation system singular");
    CollocationSolution {
        t,
        q,
        big_r,
        w_nodes,
        g_tilde: sol.rows(0, m).iter().copied().collect(),
        phi: sol[m],
    }
}

/// Field-free variant (q = 0): the cap Robin constant and measure.
pub fn solve_cap_field_free(t: f64) -> CollocationSolution {
    solve_cap_collocation(t, 0.0, 2.0)
}
