//! Computable boundary geometry for Szegő and Bergman projection kernels.
//!
//! The library turns the closed-form ingredients of kernel asymptotics on
//! non-degenerate model hypersurfaces into concrete, testable objects:
//!
//! * [`surface`] / [`levi`] — defining functions, exact second-order jets,
//!   contact form, Levi form, signature, and the conditions Y(q)/Z(q);
//! * [`forms`] — exterior algebra on (0,q)-forms over an orthonormal
//!   coframe: wedge/interior operators, projections, anticommutators;
//! * [`phase`] — quadratic jets of the Szegő and Bergman kernel phases in
//!   normal coordinates, plus the leading symbol operators at the diagonal;
//! * [`heat`] — the diagonalized heat-method model: exact model phase,
//!   Hamilton–Jacobi residual, polynomial flow, degeneracy spectra;
//! * [`kernels`] — Laplace moments, singularity expansions
//!   `F·(−i(φ+i0))^{−k} + G·log(−i(φ+i0))`, oscillatory quadrature, and the
//!   stationary-phase composition check;
//! * [`oracles`] — independent brute-force ground truths (unit-ball Bergman
//!   kernel by monomial series, finite-difference Levi brackets,
//!   asymptotics-vs-exact comparison drivers);
//! * [`verify`] — the end-to-end check suites shared by the CLI and the
//!   acceptance tests.
//!
//! Real coordinates are ordered `x₁..x_{2n}` with `z_j = x_{2j−1} + i·x_{2j}`.
//! Hermitian metrics `g = Σ g_{jk} dz_j ⊗ dz̄_k` act on real tangent vectors
//! through their standard real form, so coordinate fields satisfy
//! `(∂/∂x_j | ∂/∂x_k) = 2δ_{jk}` when `g` is euclidean.

pub mod error;
pub mod forms;
pub mod heat;
pub mod jet;
pub mod kernels;
pub mod levi;
pub mod linalg;
pub mod oracles;
pub mod phase;
pub mod surface;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64;
