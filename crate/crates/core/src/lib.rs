//! Finite G-sets, exponential diagrams, biset functors, bispans and Tambara functors.

pub mod biset;
pub mod bispan;
pub mod error;
pub mod exponential;
pub mod group;
pub mod gset;
pub mod laws;
pub mod report;
pub mod ring;
pub mod tambara;

pub use biset::{Biset, UComposite, Verify};
pub use error::{Error, Result};
pub use exponential::{dependent_product, is_exponential_diagram, ExponentialDiagram, Pentagon};
pub use group::{Group, Subgroup};
pub use gset::{pullback, GMap, GSet, Universe};
pub use report::{Check, Report};
pub use ring::TabRing;
