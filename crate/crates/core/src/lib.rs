//! Schur algebras, strict polynomial functors and symmetric-group modules over
//! prime fields, with the Schur functor, its two adjoints, and a verifier that
//! certifies isomorphisms between the resulting modules.

pub mod error;
pub mod adjoints;
pub mod combin;
pub mod ff;
pub mod modules;
pub mod polyfun;
pub mod schur;
pub mod store;
pub mod symgrp;

pub use error::{Error, Result};
