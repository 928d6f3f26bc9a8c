//! Approximation schemes for the Closest String and Closest Substring
//! problems under Hamming distance, with exhaustive oracles to check them.
//!
//! The string algorithm fixes the positions where a few inputs agree, then
//! optimizes the rest by LP relaxation and rounding ([`lp_round`]). The
//! substring algorithms add a search over windows, either exhaustively for
//! small radii or guided by a random sample of positions.

pub mod alphabet;
pub mod closest_string;
pub mod closest_substring;
pub mod error;
pub mod exact;
pub mod instance;
pub mod io;
pub mod lp_round;
pub mod positions;
pub mod seed;
pub mod seq;

pub use alphabet::Alphabet;
pub use error::{Error, Result};
pub use instance::{
    cost_string, cost_substring, rho0_diagnostic, CenterSolution, StringInstance, SubstringInstance,
};
pub use positions::PositionSet;
pub use seq::{agreement_positions, compose, hamming, restrict, Seq};
