//! Injective copresentations, projective presentations, the two transposes,
//! the translates and first extension groups.

mod ext;
mod injective;
mod pathmatrix;
mod projective;
mod translate;

pub use ext::{ext1, ext1_dim_injective, Ext1};
pub use injective::{
    injective_hull, is_injective, min_inj_copres, transpose_comodule, InjectiveCopresentation,
    InjectiveHull,
};
pub use pathmatrix::{injective_sum, projective_sum, PathMatrix};
pub use projective::{
    is_projective, min_proj_pres, projective_cover, top, transpose_module, ProjectiveCover,
    ProjectivePresentation,
};
pub use translate::{dtr, dtr_routes, trd, trd_routes, Routes};
