//! Riesz external-field equilibria on the unit sphere 𝕊^d ⊂ ℝ^{d+1}.
//!
//! The crate computes, for the Riesz kernel |x−y|^{−s} (and the logarithmic
//! kernel log 1/|x−y| where noted) perturbed by an axial point charge q at
//! distance R > 1 from the centre:
//!
//! * signed equilibria on the whole sphere and on spherical caps
//!   Σ_t = {x : x·p ≤ t}, including their densities, the cap constant
//!   Φ_s(t), and the critical intercept t_c at which the cap signed
//!   equilibrium becomes the positive extremal measure;
//! * the weighted potential U + Q of those measures, both in closed form
//!   and by direct quadrature against the axial density;
//! * separation bounds for minimal-energy (Fekete) configurations and the
//!   exact three- and four-point external-field problems, together with a
//!   multistart projected-gradient optimizer for small n.
//!
//! Everything is axially symmetric: measures are described by a density in
//! the altitude u = x·p against dσ_d = γ_d (1−u²)^{d/2−1} du, where γ_d is
//! the normalizing constant of the projected uniform measure.
//!
//! Modules build bottom-up: [`specfun`] (Gamma, Pochhammer, Gauss 2F1,
//! regularized incomplete Beta), [`quad`] (Gauss–Legendre and Gauss–Jacobi
//! rules), [`sphere_core`] (kernel constants, uniform potentials, cap
//! geometry, axial quadrature potentials), [`equilibrium`] (signed and
//! extremal equilibria), and [`fekete`] (discrete problems and separation
//! constants).

pub mod error;
pub mod specfun;
pub mod quad;
pub(crate) mod roots;
pub mod sphere_core;
pub mod equilibrium;
pub mod fekete;
pub(crate) mod optimize;

pub use error::{Error, Result};
pub use sphere_core::{AxialDensity, KernelKind, RieszParameter};
pub use equilibrium::{
    AxialPointField, CapEquilibrium, ExtremalResult, Pole, SphereSignedEquilibrium,
};
pub use fekete::{Configuration, ExternalFieldSpec, FourPointFamily};
