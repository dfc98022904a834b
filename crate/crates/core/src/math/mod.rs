//! Exact-arithmetic substrate.

pub mod combinat;
pub mod cumulants;
pub mod hypergeom;
pub mod laurent;
pub mod linalg;
pub mod poly;
pub mod rational;

pub use combinat::{compositions, narayana, Composition};
pub use cumulants::{cumulants_from_moments, moments_from_cumulants};
pub use hypergeom::{hyp3f2_terminating, trace_mean_identity_sides, transformation_sides};
pub use laurent::LaurentSeries;
pub use linalg::{linear_solve_exact, RationalMatrix};
pub use poly::RationalPolynomial;
pub use rational::{pochhammer, Rational};
