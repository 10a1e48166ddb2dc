//! Exact generating-function engine for pattern-restricted alternating
//! permutations, with a brute-force enumeration oracle and a verification
//! harness that compares every catalogued closed form coefficient-by-
//! coefficient against the oracle.
//!
//! All arithmetic is exact (arbitrary-precision rationals); there is no
//! floating point anywhere in the crate.

pub mod biseries;
pub mod cheb;
pub mod cli;
pub mod oracle;
pub mod pattern;
pub mod perm;
pub mod formulas;
pub mod harness;
pub mod series;
pub mod stats;
