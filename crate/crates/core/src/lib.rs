//! Hall algebras of finite-field quiver representations and of their
//! derived categories, stability conditions and wall-crossing identities.

pub mod error;
pub mod a2;
pub mod abelian;
pub mod catalog;
pub mod derived;
pub mod field;
pub mod hall;
pub mod phase;
pub mod quiver;
pub mod rep;
pub mod report;

pub use error::{Error, Result};
pub use catalog::{CatalogEntry, IndecId, IndecompCatalog, ModuleClass};
pub use field::{Mat, PrimeField, Subspace};
pub use quiver::{DimVector, Quiver, QuiverPreset};
pub use rep::{Morphism, Representation, SubRep};
pub use derived::{DHallElement, DerivedClass, DerivedHall, StabilityCondition, TruncationProfile};
pub use phase::{Charge, PhasePoint, PhaseValue};
pub use report::{Report, Status};
