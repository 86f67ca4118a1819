//! Theta operators in t = lambda^{-1}, their duals and the moment transform.

pub mod frobenius;
pub mod moments;
pub mod parametrization;
pub mod poly;
pub mod ratfunc;
pub mod theta;

pub use frobenius::{frobenius_basis, solve_nonhomogeneous, taylor_basis, LogSolution};
pub use moments::{
    laurent_plus, moment_rhs, Endpoint, EndpointData, LaurentPlus, MomentCase, MomentRhs,
};
pub use poly::Poly;
pub use ratfunc::{RatFunc, SymRatFunc};
pub use theta::{l2, l2_tilde, l3, l3_tilde, l4, ln, ThetaOp};
