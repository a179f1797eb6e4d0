//! Bicomplex Vekua equations on the unit disk.
//!
//! * [`bicomplex`]: the algebra `B` in four-real and idempotent form.
//! * [`funcrep`]: polynomial and closure representations of `D → B`.
//! * [`calculus`]: `∂`, `∂̄`, Theodorescu transforms, Poisson extension.
//! * [`vekua`]: similarity and fixed-point solvers, decoupling.
//! * [`decomp`]: polyanalytic, meta-analytic and HOIV representations.
//! * [`hardy`]: circle integrals, Hardy profiles and boundary diagnostics.
//! * [`suites`]: deterministic invariant suites behind `bivek check`.

pub mod bicomplex;
pub mod calculus;
pub mod cli;
pub mod decomp;
pub mod error;
pub mod funcrep;
pub mod hardy;
pub mod random;
pub mod suites;
pub mod vekua;

pub use bicomplex::{Bicomplex, ConjKind};
pub use error::{Error, Result};
pub use funcrep::{BiPoly, CPoly, ClosureFn, DiskFunction, Func};
