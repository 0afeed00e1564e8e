//! Path coalgebras cut down to finite windows, and their dual algebras.
//!
//! Conventions used throughout the crate:
//!
//! * paths are written left to right, `a1*a2` traverses `a1` first;
//! * comultiplication is deconcatenation into `(prefix, suffix)`;
//! * a right comodule is a representation with maps along the arrows, so the
//!   arrow `a: u -> v` carries a `dim(v) x dim(u)` matrix;
//! * the injective hull of the simple at `v` has basis the paths ending at
//!   `v`; the opposite-side injective at `v` has basis the paths starting
//!   at `v`.

pub mod dualalg;
pub mod quiver;
pub mod window;

pub use dualalg::{star_injective, DualAlg, Idem, InjectiveSum, Side};
pub use quiver::{Arrow, Quiver};
pub use window::{Path, PathSpan, Window, WindowRef};
