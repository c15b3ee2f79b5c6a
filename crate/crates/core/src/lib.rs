//! Generalized Turán counts on planar host graphs.
//!
//! Graph plumbing ([`graph`], [`graph6`], [`canon`], [`planarity`]), exact
//! counting ([`cycles`], [`counting`]), structural parameters ([`params`]),
//! lower-bound constructions ([`constructions`]), exhaustive search
//! ([`search`]) and the claim registry behind `verify` ([`claims`]).

pub mod bitset;
pub mod canon;
pub mod claims;
pub mod constructions;
pub mod counting;
pub mod cycles;
pub mod graph;
pub mod graph6;
pub mod names;
pub mod params;
pub mod planarity;
pub mod search;
pub mod table;

pub use counting::Pattern;
pub use cycles::ForbiddenFamily;
pub use graph::Graph;
