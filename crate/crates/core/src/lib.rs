//! Number-on-the-forehead protocol laboratory.
//!
//! The [`model`] module holds the blackboard simulator and the point, star and
//! closure vocabulary. [`protocols`] builds concrete protocols, [`search`]
//! computes extremal star-free sets, [`rs`] covers the graph dictionary and
//! [`bounds`] the lower-bound machinery.

pub mod bounds;
pub mod error;
pub mod group;
pub mod model;
pub mod protocols;
pub mod rs;
pub mod search;

pub use error::{Error, Result};
pub use group::AbelianGroup;
pub use model::*;
