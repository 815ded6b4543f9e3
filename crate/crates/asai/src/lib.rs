//! Asai L-functions of Bianchi eigenforms, computed and cross-validated.
//!
//! The crate is organised around the explicit objects that enter the
//! construction of the p-adic Asai L-function of an ordinary Bianchi
//! eigenform:
//!
//! * exact arithmetic substrate: imaginary quadratic fields, Dirichlet
//!   characters with cyclotomic values, Gauss sums ([`quadfield`],
//!   [`cyclotomic`], [`dirichlet`], [`numfield`]);
//! * Hecke eigenvalue data for Bianchi forms, base change from elliptic
//!   eigenforms, p-stabilisation ([`hecke`]);
//! * the imprimitive and primitive Asai L-series, local Euler factors by
//!   tensor induction and by rational reconstruction ([`lseries`]);
//! * real-analytic Eisenstein series with certified analytic continuation
//!   and c-smoothed combinations ([`eisenstein`]);
//! * symmetric-power modules and the Clebsch-Gordan injection with its
//!   transpose-contraction identity ([`symtensor`]);
//! * the Iwasawa-algebra measure layer: ordinary projectors, measures from
//!   U_p-compatible towers, moments, smoothing factors ([`padic`],
//!   [`iwasawa`]);
//! * the archimedean constant kernel: combinatorial coefficients, Gamma
//!   kernels, the Bessel-Mellin identity and closed-form constants
//!   ([`kernel`]);
//! * p-adic interpolation factors and the predicted interpolation record
//!   ([`interp`]).
//!
//! Every module cross-checks its formulas against independent oracles; the
//! [`selftest`] module bundles these checks into the acceptance suite that
//! `asai selftest` and `tests/acceptance.rs` run.
//!
//! Run `cargo run --example <name>` for a tour; each example exercises one
//! capability end to end.

pub mod error;
pub mod poly;

pub mod cyclotomic;
pub mod dirichlet;
pub mod numfield;
pub mod quadfield;

pub mod hecke;
pub mod lseries;
pub mod recurrence;

pub mod bessel;
pub mod complex;
pub mod gamma;
pub mod quadrature;

pub mod eisenstein;
pub mod symtensor;

pub mod iwasawa;
pub mod padic;

pub mod interp;
pub mod kernel;

pub mod selftest;

pub use error::{AsaiError, Result};
