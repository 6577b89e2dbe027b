//! Exact arithmetic for the modular function field of Gamma_0(N).
//!
//! This crate computes, for a level `N`, generators of the modular function
//! field A_0(N), a plane model `F_N(X,Y) = 0` of the modular curve X_0(N),
//! and a representation of the modular invariant `J` in terms of those
//! generators. Everything is done in exact arithmetic: rational numbers,
//! the cyclotomic field Q(zeta_N), and truncated Laurent series over both.
//!
//! Module map:
//! - [`exact`]: rationals and the cyclotomic field Q(zeta_N)
//! - [`series`]: truncated Laurent series over an abstract coefficient ring
//! - [`modcurve`]: cusps of Gamma_1(N)/Gamma_0(N), orders, widths, genus
//! - [`weier`]: Weierstrass p-difference expansions, W_a quotients, traces
//! - [`relations`]: bivariate polynomials, the minimal equation, relation
//!   rows, the Cramer solve for H_i, and polynomial reduction in K(P)
//! - [`jrep`]: the modular invariant, cusp killers, and J = P_N / prod G^m
//! - [`search`]: generator search (pole orders g+1 .. 2g+1 at the cusp P)
//! - [`pipeline`]: orchestration, precision management, paper regression data

pub mod error;
pub mod exact;
pub mod jrep;
pub mod modcurve;
pub mod pipeline;
pub mod relations;
pub mod search;
pub mod series;
pub mod weier;

pub use error::{Error, Result};
