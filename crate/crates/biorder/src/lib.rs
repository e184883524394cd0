//! Bi-order fractional derivatives with two orders (α, β) ∈ (0,1)².
//!
//! The central object is the weakly singular convolution kernel
//!
//! ```text
//! k(y) = y^(−α) · E_β(−λ y^σ),      λ = β/(1−β),  σ = α + β,
//! ```
//!
//! where `E_β` is the one-parameter Mittag-Leffler function. Two derivative
//! variants are built on it:
//!
//! * **AC** — convolve the *derivative* of `f` with the kernel (Caputo-style;
//!   annihilates constants),
//! * **AR** — convolve `f` itself, then differentiate the result
//!   (Riemann-Liouville-style).
//!
//! The crate is organized in four layers:
//!
//! * [`special_functions`] — gamma, Mittag-Leffler, the bi-order kernel and
//!   its exact primitive, and the generalized Wright series ₂Ψ₁.
//! * [`operators`] — discrete AC/AR derivatives on uniform grids via product
//!   integration with exact kernel-primitive weights, in one and two
//!   variables, left- and right-sided.
//! * [`transforms`] — Laplace and Sumudu machinery: damped quadrature as
//!   ground truth, truncated series formulas as asymptotics.
//! * [`oracle`] — an independent validation layer (adaptive quadrature for
//!   weakly singular integrals, closed-form series derivatives) plus a
//!   self-test suite that exercises every invariant.
//!
//! All operations are pure functions of their inputs and safe to call from
//! any number of threads.

pub mod operators;
pub mod oracle;
pub mod special_functions;
pub mod transforms;

pub use operators::{Grid, OperatorOutput, SampledFunction, SampledFunction2d, Scheme, Variant};
pub use special_functions::{BiOrder, SeriesTruncation, SeriesValue, TruncationMode};
