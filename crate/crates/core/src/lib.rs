//! Exact computations for Coxeter realizations of quantized enveloping algebras,
//! their Whittaker models, deformed q-Toda operators and Steinberg cross-sections.

pub mod crosssec;
pub mod error;
pub mod linalg;
mod poly;
pub mod qarith;
pub mod rational;
pub mod rootsys;
pub mod scalar;
pub mod toda;
pub mod uqalg;

pub use error::{Error, Result};
pub use linalg::{Field, Matrix, QMatrix};
pub use rational::Rational;
pub use rootsys::{build_root_system, CoxeterContext, RootSystemData, Series};
pub use scalar::LaurentScalar;
