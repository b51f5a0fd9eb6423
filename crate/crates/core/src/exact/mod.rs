pub mod cyclotomic;
pub mod formal;
pub mod interval;
pub mod rational;
pub mod scalar;
pub mod trig;

pub use cyclotomic::CyclotomicReal;
pub use formal::{FormalScalar, Witness};
pub use interval::Interval;
pub use rational::Rational;
pub use scalar::{Backend, Scalar};
pub use trig::{delta, sin_squared};
