//! Simulator and numerical verifier for the symmetric K-user cyclic
//! Z-interference channel with noiseless feedback.
//!
//! The crate has two halves. The linear deterministic half runs the
//! feedback coding schemes bit by bit ([`schemes`]) on the level-shift
//! channel model ([`channel`]) and evaluates every closed-form capacity
//! and bound expression in exact rationals ([`capacity`]). The Gaussian
//! half ([`gaussian`]) evaluates the bound expressions, the per-regime
//! rate allocations with their decodability constraints, and certifies
//! that upper and lower bounds stay within a constant number of bits of
//! each other. [`sweep`] produces plot-ready tables over parameter grids
//! and [`verify`] runs the whole claim list end to end.

pub mod capacity;
pub mod channel;
pub mod gaussian;
pub mod schemes;
pub mod sweep;
pub mod verify;

pub use capacity::{Alpha, RegimeLabel};
pub use channel::{ChannelError, ChannelUse, LdConfig, LevelWord};
pub use gaussian::{BoundSet, GapReport, GaussianPoint, RegimeAllocation};
pub use schemes::{MessageBank, SchemeError, SchemeKind, SchemeResult, SchemeRun};
