//! Exact exponent calculus for k-plane maximal operator bounds.
//!
//! A bound on the δ-plate maximal operator ℳ^k_δ over the Grassmannian
//! G(d,k) is a tuple of Lebesgue exponents (p, q) together with a δ-loss
//! exponent α, asserting ‖ℳ^k_δ f‖_{L^q(G(d,k))} ≲ δ^{−α/p} ‖f‖_{L^p(ℝ^d)}.
//! This crate manipulates such bounds in exact rational arithmetic: Kakeya
//! seeds at k = 1, the x-ray recursion step, the L^∞-interpolation step, the
//! L² cancellation step, and the pipelines that chain them into closed-form
//! exponent families and Hausdorff dimension estimates for (d,k) sets.
//!
//! Everything here is pure and deterministic; floating point appears only in
//! the critical plane dimension root `kcrit`, which is a real number.
//!
//! The crate is `no_std` (with `alloc`) so the calculus can be embedded
//! anywhere; IO, serialization, and numerics live in the companion crate.

#![no_std]

extern crate alloc;

pub mod bound;
pub mod dimension;
pub mod error;
pub mod kcrit;
pub mod pipeline;
pub mod rat;
pub mod seed;
pub mod step;
pub mod trace;

pub use bound::{BoundSpec, Exponent, Operator};
pub use dimension::{hausdorff_bound, hausdorff_bound_via_pipelines, DimSeed};
pub use error::EngineError;
pub use kcrit::{bourgain_regime, k_at_most_kcrit, kcrit, KcritKind};
pub use pipeline::{closed_form, derive_pipeline, ClosedForm, PipelineName};
pub use rat::Rat;
pub use seed::{seed_bound, SeedKind};
pub use step::{conjugate_exponent, interp_step, l2_step, q_restrict, xray_step};
pub use trace::{DerivationTrace, RuleName, StepInput, TraceStep};
