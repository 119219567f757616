//! Deciding solvability of equations in finite terms.
//!
//! * [`algebra`]: exact polynomials over Q(i), the expression parser, resultants, certified roots.
//! * [`perm`]: permutation groups, stabilizer chains, derived series, k-solvability.
//! * [`monodromy`]: monodromy of algebraic functions by numerical analytic continuation.
//! * [`puiseux`]: Newton polygons and Puiseux expansions.
//! * [`solvability`]: radical and k-radical verdicts, radical towers, Ritt decomposition.
//! * [`differential`]: D-polynomials, generalized Riccati equations, rational witnesses,
//!   Liouville-form integration of rational functions.
//! * [`fuchsian`]: monodromy of Fuchsian systems and simultaneous triangularization.

#![allow(
    clippy::needless_range_loop,
    clippy::result_large_err,
    clippy::suspicious_arithmetic_impl,
    clippy::neg_cmp_op_on_partial_ord
)]

pub mod algebra;
pub mod differential;
pub mod fuchsian;
pub mod monodromy;
pub mod perm;
pub mod puiseux;
pub mod solvability;
