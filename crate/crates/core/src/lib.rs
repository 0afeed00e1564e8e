//! Auslander-Reiten theory for finite-dimensional comodules over path
//! coalgebras.
//!
//! Comodules are presented as nilpotent quiver representations over a
//! [`coalg::Window`], a finite-dimensional subcoalgebra spanned by the paths
//! of bounded length in a finite subquiver. On top of the exact linear
//! algebra in [`linalg`] the crate computes homomorphisms, socles,
//! decompositions, injective copresentations, both transposes, `DTr`,
//! extension groups, almost split sequences, AR quivers, and towers of these
//! over growing windows.
//!
//! Everything is generic over a [`Scalar`] field; the aliases below fix the
//! default prime field.

pub mod artheory;
pub mod coalg;
pub mod error;
pub mod field;
pub mod homology;
pub mod linalg;
pub mod poly;
pub mod repcat;
pub mod text;
pub mod towers;

pub use error::{ArsError, Result};
pub use field::{FieldSpec, Fp, Rational, Scalar};

/// The default prime field.
pub type F32003 = Fp<32003>;

pub type Mat = linalg::Mat<F32003>;
pub type Rep = repcat::Rep<F32003>;
pub type RepMap = repcat::RepMap<F32003>;
pub type ShortExact = repcat::ShortExact<F32003>;
