//! The bounded derived category of `mod-A`: complexes, cones, projective
//! resolutions, derived Hom groups with composition, and the standard
//! t-structure.
//!
//! Degrees are cohomological. `X[1]` moves terms to lower degrees and
//! multiplies the differentials by `-1`.

mod complex;
mod hom;
mod resolution;
mod triangle;

pub use complex::{cone, truncate_std, Cohomology, Cone, Cx, CxMap, CxSum, StdTruncation};
pub use hom::{
    class_from_components, derived_hom, derived_hom_dims, identity_class, roof_class, DClass,
    DerivedHom, HomComplex,
};
pub use resolution::Resolution;
pub use triangle::{ses_to_triangle, triangle_to_ses, ShortExact, Triangle};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DerivedError {
    #[error("component in degree {0} has the wrong shape")]
    ComponentShape(i64),
    #[error("component in degree {0} is not a module homomorphism")]
    NotNatural(i64),
    #[error("maps do not commute with the differentials in degree {0}")]
    NotChainMap(i64),
    #[error("sequence is not short exact: {0}")]
    NotExact(String),
}
