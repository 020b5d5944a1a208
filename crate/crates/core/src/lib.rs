//! Optimal linear index codes for side-information graphs whose complements
//! are circular perfect, together with exact desk-scale oracles for the
//! surrounding bounds.
//!
//! The pieces fit together as follows. [`params`] computes the circular
//! chromatic number of the complement graph and a witnessing `(k, d)`
//! circular coloring; [`construction`] turns that coloring into a rate `k/d`
//! linear code; [`params::circular_clique_number`] of the complement is a
//! matching lower bound whenever the complement is circular perfect.
//! [`confusion`] and [`search`] provide independent brute-force bounds, and
//! [`ng`] checks product and sum bounds for complementary pairs.

pub(crate) mod clique;
pub mod confusion;
pub mod construction;
pub mod error;
pub mod gf;
pub mod graphs;
pub mod index_code;
pub mod limits;
pub mod ng;
pub mod params;
pub mod rational;
pub mod search;

pub use confusion::{ConfusionBound, ConfusionGraph};
pub use construction::ConstructionPlan;
pub use error::{Error, Result};
pub use gf::{GFMatrix, PrimeField};
pub use graphs::SideInfoGraph;
pub use index_code::LinearIndexCode;
pub use params::{CircularColoring, ParamReport};
pub use rational::Rational;
