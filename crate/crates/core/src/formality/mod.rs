//! Feynman graph sums built from a contraction kernel, the Taylor family
//! they define, the open-closed extension, and exact verifiers for the
//! identities relating them.

mod commute;
mod eval;
mod instances;
mod kernel;
mod mce;
mod oc;
mod taylor;
mod verify;

use thiserror::Error;

use crate::bd::BdError;
use crate::graded::KernelError;
use crate::graphs::GraphError;

pub use commute::{
    certify_bdr, certify_kil, verify_commutation, verify_commutation_unchecked, BdrCertificate,
    CommutationReport, KilCertificate,
};
pub use eval::{eval_graph, guard_stats, DecoratedGraph, EvalOptions, GuardStats};
pub use instances::{
    kil_instance, random_bvinf_instance, random_kernel, random_key_lemma_instance,
    random_open_sector, BvinfInstance, KeyLemmaInstance, KilInstance,
};
pub use kernel::{ContractionKernel, KernelEntry};
pub use mce::{gauge_exp, mce_residual};
pub use oc::{split_union, OcMorphism};
pub use taylor::{labeled_sum, profile_classes, taylor_k, KTaylor};
pub use verify::{
    lemma_easy_sides, verify_bvinf, verify_key_lemma, verify_lemma_easy, IdentityReport,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormalityError {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Bd(#[from] BdError),
    #[error("vertex {vertex} has valency {valency} but its input has {letters} letters")]
    ValencyMismatch {
        vertex: usize,
        valency: usize,
        letters: usize,
    },
    #[error("vertex {vertex} has defect {defect} but its input carries γ^{gamma}")]
    DefectMismatch {
        vertex: usize,
        defect: u32,
        gamma: u32,
    },
    #[error("expected {expected} inputs, got {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("kernel is not graded symmetric on ({0}, {1})")]
    KernelNotSymmetric(String, String),
    #[error("kernel entry ({0}, {1}) lies outside total degree {2}")]
    KernelSupport(String, String, i64),
    #[error("indices must satisfy 1 ≤ i ≠ j ≤ m")]
    BadIndices,
    #[error("missing or failed certificate: {0}")]
    Certificate(String),
    #[error("derivation images mix parities")]
    DerivationParity,
    #[error("derivation does not truncate within {0} steps")]
    NonTruncating(usize),
    #[error("spaces share letter names or differ from the instance")]
    SpaceMismatch,
}
