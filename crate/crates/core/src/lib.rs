//! Weighted Hurwitz zeta series: exact Bernoulli/Euler machinery, an
//! Euler-Maclaurin zeta evaluator, closed forms for
//! `Z±(s, a, x) = sum_{k>=1} (±1)^k (k + x)^a zeta(s, k + x)`, brute-force
//! oracles for every series involved, and the limit formula that singles out
//! the eventually monotone or convex solutions of `Δf = Q(x) zeta(s, x)`.

pub mod bohr_mollerup;
pub mod cli;
pub mod closed_form;
pub mod error;
pub mod exact_poly;
pub mod oracle;
pub mod verify;
pub mod zeta_core;

pub use error::{Result, ZetaError};
pub use zeta_core::{ComplexValue, EvalParams, SeriesResult};
