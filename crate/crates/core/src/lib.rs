//! Finitely generated monoids as semimetric spaces.
//!
//! Monoids come from complete rewriting systems, transformations,
//! multiplication tables or direct products ([`monoid`]). Their Cayley and
//! Schützenberger graphs are explored in radius-bounded balls ([`cayley`])
//! whose distances are certified up to a horizon. On top of that sit Green's
//! relations and Schützenberger groups ([`green`]), finite semimetric spaces
//! and quasi-isometry checks ([`geometry`]), and growth and ends estimates
//! ([`asymptotics`]).

pub mod asymptotics;
pub mod cayley;
pub mod cli;
pub mod desc;
pub mod geometry;
pub mod green;
pub mod monoid;
pub mod rational;
pub mod rewrite;

pub use rational::{Dist, Q};
