//! Computation with the Dyck shift and the heterochaos baker maps.
//!
//! * [`dyck`]: the bracket monoid, heights, and the linear-time test for
//!   periodic points.
//! * [`enumeration`]: pruned enumeration of periodic points and their exact
//!   closed-form counts.
//! * [`krieger`]: the collapse/decoration maps and exact cylinder masses of
//!   the two measures of maximal entropy.
//! * [`measures`]: empirical distributions of periodic points compared with
//!   those measures.
//! * [`baker`]: exact periodic orbits of the piecewise-affine baker maps.
//! * [`oracle`]: brute-force and Monte Carlo reference implementations.
//! * [`report`], [`verify`], [`cli`]: file formats, packaged checks, and the
//!   command-line front end.

pub mod baker;
pub mod cli;
pub mod dyck;
pub mod enumeration;
pub mod error;
pub mod krieger;
pub mod measures;
pub mod oracle;
pub mod rational;
pub mod report;
pub mod verify;
pub mod word;

pub use dyck::{h_value, is_periodic_point, periodic_class, reduce, PeriodClass, ReducedForm};
pub use error::{Error, Result};
pub use word::{Alphabet, Bracket, Symbol, Word};
