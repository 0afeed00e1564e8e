use serde::Serialize;

use crate::error::{ArsError, Result};
use crate::field::Scalar;
use crate::homology::{ext1, is_projective, trd};
use crate::repcat::{decompose, end_algebra, Rep, RepMap, ShortExact};

/// An almost split sequence ending at `C` together with the data that
/// certifies it.
#[derive(Clone, Debug)]
pub struct AssCertificate<S> {
    pub sequence: ShortExact<S>,
    pub end_dim: usize,
    pub radical_dim: usize,
    pub ext_dim: usize,
    /// Dimension of the classes killed by `rad End(C)`.
    pub socle_dim: usize,
    /// Coordinates of the chosen class in `Ext¹(C, A)`.
    pub class: Vec<S>,
    /// Representative `Ω -> A` of the class.
    pub representative: RepMap<S>,
}

/// Dimension data of a certificate, for reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AssSummary {
    pub left: Vec<usize>,
    pub middle: Vec<usize>,
    pub right: Vec<usize>,
    pub end_dim: usize,
    pub radical_dim: usize,
    pub ext_dim: usize,
    pub socle_dim: usize,
}

impl<S: Scalar> AssCertificate<S> {
    pub fn summary(&self) -> AssSummary {
        AssSummary {
            left: self.sequence.a().dims().to_vec(),
            middle: self.sequence.b().dims().to_vec(),
            right: self.sequence.c().dims().to_vec(),
            end_dim: self.end_dim,
            radical_dim: self.radical_dim,
            ext_dim: self.ext_dim,
            socle_dim: self.socle_dim,
        }
    }
}

/// The almost split sequence `0 -> τC -> B -> C -> 0`, realized from a
/// nonzero extension class annihilated by the radical of `End(C)`.
pub fn almost_split_sequence<S: Scalar>(c: &Rep<S>) -> Result<AssCertificate<S>> {
    if c.is_zero() || !decompose(c)?.is_indecomposable() {
        return Err(ArsError::Decomposable(format!("{:?}", c.dims())));
    }
    if is_projective(c)? {
        return Err(ArsError::Projective(format!("{:?}", c.dims())));
    }
    let a = trd(c)?;
    let ext = ext1(c, &a)?;
    let end = end_algebra(c)?;
    let socle = ext.socle(&end)?;
    if socle.cols() == 0 {
        return Err(ArsError::Internal(
            "Ext¹(C, τC) has no class killed by rad End(C)".into(),
        ));
    }
    let class = socle.column(0);
    for r in end.radical() {
        let moved = ext.end_action(r)?;
        let image = &moved * &crate::linalg::Mat::column_vector(class.clone());
        if !image.is_zero() {
            return Err(ArsError::Internal("radical does not annihilate the class".into()));
        }
    }
    let sequence = ext.realize(&class)?;
    if sequence.is_split()? {
        return Err(ArsError::Internal("realized sequence splits".into()));
    }
    Ok(AssCertificate {
        representative: ext.representative(&class)?,
        sequence,
        end_dim: end.dim(),
        radical_dim: end.radical_dim(),
        ext_dim: ext.dim(),
        socle_dim: socle.cols(),
        class,
    })
}
