//! Exact construction, real-root isolation, complex-root bounds and a
//! verification harness for polynomial families derived from the k-step
//! Fibonacci characteristic polynomial.

pub mod complexroots;
pub mod error;
pub mod families;
pub mod poly;
pub mod rational;
pub mod realroots;
pub mod theorems;

pub use error::{Error, Result};
pub use families::{Family, FamilySpec};
pub use poly::ExactPoly;
pub use rational::Rational;
pub use realroots::{IsolatingInterval, RootIsolator, RootRecord};
