//! Exact graph-morphism counting and everything a hom-count query algorithm
//! needs at desk scale: isomorphism-free enumeration, the six morphism
//! kinds over big integers, exact rational linear algebra, expressive-graph
//! induction, counterexample forges, adaptive query strategies, and
//! right-hom algorithms. No floating point anywhere.

pub mod adaptive;
pub mod canon;
pub mod color;
pub mod count;
pub mod enumerate;
pub mod error;
pub mod expressive;
pub mod forge;
pub mod graph;
pub mod graph6;
pub mod linalg;
pub mod planar;
pub mod righthom;
pub mod verify;

pub use canon::{canonical_form, is_isomorphic, CanonicalForm};
pub use count::{aut, count, count_vector, CountKind, CountValue, CountVector, Orientation};
pub use error::{HomError, Result};
pub use graph::{Graph, NamedKind};
