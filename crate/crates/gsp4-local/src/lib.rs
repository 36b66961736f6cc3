//! Exact local computations for GL2 and GSp4 over a formal prime `ell`.

pub mod besselzeta;
pub mod branching;
pub mod gl2local;
pub mod gsp4local;
pub mod normrel;
pub mod padic;
pub mod symcore;
