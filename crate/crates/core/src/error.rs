use thiserror::Error;

use crate::{CatalogError, CompositionError, ProfileError, ReconcileError, SynthError};

/// Crate-wide error, one variant per module.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Composition(#[from] CompositionError),
    #[error(transparent)]
    Profile(#[from] ProfileError),
    #[error(transparent)]
    Synth(#[from] SynthError),
    #[error(transparent)]
    Reconcile(#[from] ReconcileError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
