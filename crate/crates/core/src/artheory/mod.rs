//! Almost split sequences, their certification against test sets, and AR
//! quiver knitting.

mod ass;
mod certify;
mod knit;

pub use ass::{almost_split_sequence, AssCertificate, AssSummary};
pub use certify::{
    dualize_sequence, is_left_almost_split, is_right_almost_split, Direction, Verdict, Witness,
};
pub use knit::{knit, knit_with_cap, ArQuiver, ArQuiverSummary, NODE_CAP};
