//! The Auslander-Reiten translates, each computed along two independent
//! routes that must agree up to isomorphism.

use crate::error::{ArsError, Result};
use crate::field::Scalar;
use crate::repcat::{dualize, is_iso, Rep};

use super::injective::{dual_transpose_comodule, transpose_comodule};
use super::projective::transpose_module;

/// Both computations of a translate.
#[derive(Clone, Debug)]
pub struct Routes<S> {
    pub comodule: Rep<S>,
    pub module: Rep<S>,
}

impl<S: Scalar> Routes<S> {
    fn agree(self, op: &'static str) -> Result<Rep<S>> {
        if is_iso(&self.comodule, &self.module)? {
            Ok(self.comodule)
        } else {
            Err(ArsError::RouteMismatch {
                op,
                detail: format!("{:?} vs {:?}", self.comodule.dims(), self.module.dims()),
            })
        }
    }
}

/// `D Tr` on comodules and `tr D` on modules: the inverse translate.
pub fn dtr_routes<S: Scalar>(c: &Rep<S>) -> Result<Routes<S>> {
    let w = c.window();
    Ok(Routes {
        comodule: dual_transpose_comodule(c)?,
        module: transpose_module(&dualize(c))?.rewindow(w)?,
    })
}

/// `Tr D` on comodules and `D tr` on modules: the translate.
pub fn trd_routes<S: Scalar>(c: &Rep<S>) -> Result<Routes<S>> {
    let w = c.window();
    Ok(Routes {
        comodule: transpose_comodule(&dualize(c))?.rewindow(w)?,
        module: dualize(&transpose_module(c)?).rewindow(w)?,
    })
}

/// The inverse translate, checked along both routes.
pub fn dtr<S: Scalar>(c: &Rep<S>) -> Result<Rep<S>> {
    dtr_routes(c)?.agree("dtr")
}

/// The translate, checked along both routes.
pub fn trd<S: Scalar>(c: &Rep<S>) -> Result<Rep<S>> {
    trd_routes(c)?.agree("trd")
}
