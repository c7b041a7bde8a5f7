//! Projected-gradient minimization on products of unit spheres.
//!
//! Points live flattened in ℝ^{n·ambient}; each block of `ambient`
//! coordinates is kept on the unit sphere by renormalizing after every
//! step.  Steps follow the tangential (Riemannian) gradient with a
//! Barzilai–Borwein initial step length and Armijo backtracking; stalls
//! below the gradient tolerance trigger a small random tangent kick to
//! escape saddle configurations.  Multistart aggregation is deterministic
//! for a fixed seed regardless of the parallel schedule.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub(crate) struct OptimizeOptions {
    pub multistarts: usize,
    pub max_iters: usize,
    pub grad_tol: f64,
    pub seed: u64,
}

impl Default for OptimizeOptions {
    fn default() -> Self {
        Self { multistarts: 64, max_iters: 4000, grad_tol: 1e-10, seed: 0x52_49_45_53 }
    }
}

pub(crate) struct LocalRun {
    pub points: Vec<f64>,
    pub energy: f64,
    pub grad_norm: f64,
    pub converged: bool,
}

fn normalize_block(x: &mut [f64]) {
    let n = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if n > 0.0 {
        for v in x.iter_mut() {
            *v /= n;
        }
    }
}

fn normalize_all(x: &mut [f64], ambient: usize) {
    for block in x.chunks_mut(ambient) {
        normalize_block(block);
    }
}

/// Remove the radial component of g per point block.
fn project_tangent(x: &[f64], g: &mut [f64], ambient: usize) {
    for (xb, gb) in x.chunks(ambient).zip(g.chunks_mut(ambient)) {
        let dot: f64 = xb.iter().zip(gb.iter()).map(|(a, b)| a * b).sum();
        for (gi, xi) in gb.iter_mut().zip(xb.iter()) {
            *gi -= dot * xi;
        }
    }
}

fn retract(x: &[f64], g: &[f64], step: f64, ambient: usize) -> Vec<f64> {
    let mut y: Vec<f64> = x.iter().zip(g.iter()).map(|(a, b)| a - step * b).collect();
    normalize_all(&mut y, ambient);
    y
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|a| a * a).sum::<f64>().sqrt()
}

fn gaussian<R: Rng>(rng: &mut R) -> f64 {
    let u1: f64 = 1.0 - rng.gen::<f64>();
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

pub(crate) fn random_config<R: Rng>(rng: &mut R, ambient: usize, n: usize) -> Vec<f64> {
    let mut x = vec![0.0; n * ambient];
    for v in x.iter_mut() {
        *v = gaussian(rng);
    }
    normalize_all(&mut x, ambient);
    x
}

fn kick<R: Rng>(x: &mut [f64], ambient: usize, scale: f64, rng: &mut R) {
    for v in x.iter_mut() {
        *v += scale * gaussian(rng);
    }
    normalize_all(x, ambient);
}

fn descend<F, G>(
    ambient: usize,
    x0: Vec<f64>,
    f: &F,
    grad: &G,
    opts: &OptimizeOptions,
    rng: &mut ChaCha8Rng,
) -> LocalRun
where
    F: Fn(&[f64]) -> f64,
    G: Fn(&[f64]) -> Vec<f64>,
{
    let mut x = x0;
    let mut e = f(&x);
    let mut best_x = x.clone();
    let mut best_e = e;
    let mut prev: Option<(Vec<f64>, Vec<f64>)> = None;
    let mut kicks = 0usize;
    for _ in 0..opts.max_iters {
        let mut g = grad(&x);
        project_tangent(&x, &mut g, ambient);
        let gnorm = norm(&g);
        if !gnorm.is_finite() {
            break;
        }
        if gnorm <= opts.grad_tol {
            // Gradient has stalled; try a tangent kick in case this is a
            // saddle, otherwise accept convergence.
            if kicks < 3 {
                kicks += 1;
                kick(&mut x, ambient, 1e-6, rng);
                e = f(&x);
                prev = None;
                continue;
            }
            break;
        }
        let mut step = match &prev {
            Some((xp, gp)) => {
                let mut sy = 0.0;
                let mut ss = 0.0;
                for i in 0..x.len() {
                    let si = x[i] - xp[i];
                    let yi = g[i] - gp[i];
                    sy += si * yi;
                    ss += si * si;
                }
                if sy.abs() > 1e-300 {
                    (ss / sy).abs().clamp(1e-14, 1e3)
                } else {
                    1e-2 / gnorm.max(1.0)
                }
            }
            None => 1e-2 / gnorm.max(1.0),
        };
        let gsq = gnorm * gnorm;
        let mut accepted = false;
        for _ in 0..60 {
            let xn = retract(&x, &g, step, ambient);
            let en = f(&xn);
            if en.is_finite() && en <= e - 1e-4 * step * gsq {
                prev = Some((std::mem::replace(&mut x, xn), g.clone()));
                e = en;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if accepted {
            if e < best_e {
                best_e = e;
                best_x = x.clone();
            }
        } else if kicks < 3 {
            kicks += 1;
            kick(&mut x, ambient, 1e-6, rng);
            e = f(&x);
            prev = None;
        } else {
            break;
        }
    }
    if best_e < e {
        x = best_x;
        e = best_e;
    }
    let mut g = grad(&x);
    project_tangent(&x, &mut g, ambient);
    let gnorm = norm(&g);
    LocalRun { points: x, energy: e, grad_norm: gnorm, converged: gnorm <= opts.grad_tol }
}

fn sorted_altitudes(x: &[f64], ambient: usize) -> Vec<f64> {
    let mut alts: Vec<f64> = x.chunks(ambient).map(|b| b[ambient - 1]).collect();
    alts.sort_by(f64::total_cmp);
    alts
}

/// Best local run over structured starts plus seeded random starts.
pub(crate) fn multistart_minimize<F, G>(
    ambient: usize,
    n: usize,
    f: &F,
    grad: &G,
    structured: &[Vec<f64>],
    opts: &OptimizeOptions,
) -> LocalRun
where
    F: Fn(&[f64]) -> f64 + Sync,
    G: Fn(&[f64]) -> Vec<f64> + Sync,
{
    let total = opts.multistarts.max(structured.len()).max(1);
    let starts: Vec<Vec<f64>> = (0..total)
        .map(|i| {
            if i < structured.len() {
                let mut x = structured[i].clone();
                normalize_all(&mut x, ambient);
                x
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(i as u64));
                random_config(&mut rng, ambient, n)
            }
        })
        .collect();
    let mut runs: Vec<LocalRun> = starts
        .into_par_iter()
        .enumerate()
        .map(|(i, x0)| {
            let mut rng = ChaCha8Rng::seed_from_u64(
                opts.seed ^ 0x9e37_79b9_7f4a_7c15u64.wrapping_mul(i as u64 + 1),
            );
            descend(ambient, x0, f, grad, opts, &mut rng)
        })
        .collect();
    runs.sort_by(|a, b| {
        a.energy.total_cmp(&b.energy).then_with(|| {
            let ka = sorted_altitudes(&a.points, ambient);
            let kb = sorted_altitudes(&b.points, ambient);
            for (x, y) in ka.iter().zip(kb.iter()) {
                match x.total_cmp(y) {
                    std::cmp::Ordering::Equal => continue,
                    o => return o,
                }
            }
            std::cmp::Ordering::Equal
        })
    });
    runs.into_iter().next().expect("at least one start")
}
