use serde::{Deserialize, Serialize};

use super::{ContractionKernel, FormalityError, KTaylor, OcMorphism};
use crate::bd::{check_bd_axioms, tensor_bd, AxiomReport, BDPresentation, TruncationWindow};
use crate::exec::Exec;
use crate::linfty::{check_morphism_relation, dgla_to_coderivation, MorphismWindow};
use crate::report::{all_passed, CheckResult};

/// Result of checking that `K` is an L∞ morphism from the closed algebra to
/// its trivialization (same differential, zero bracket).
#[derive(Clone, Debug)]
pub struct KilCertificate {
    closed: BDPresentation,
    kernel: ContractionKernel,
    pub results: Vec<CheckResult>,
}

impl KilCertificate {
    pub fn passed(&self) -> bool {
        all_passed(&self.results)
    }

    pub fn covers(&self, closed: &BDPresentation, kernel: &ContractionKernel) -> bool {
        self.closed == *closed && self.kernel == *kernel
    }
}

pub fn certify_kil(
    closed: &BDPresentation,
    kernel: &ContractionKernel,
    window: MorphismWindow,
    exec: Exec,
) -> Result<KilCertificate, FormalityError> {
    if closed.space() != kernel.space() {
        return Err(FormalityError::SpaceMismatch);
    }
    let trivial = closed.trivialized();
    let results = check_morphism_relation(
        &KTaylor::new(kernel.clone()),
        &dgla_to_coderivation(closed),
        &dgla_to_coderivation(&trivial),
        window,
        exec,
    );
    Ok(KilCertificate {
        closed: closed.clone(),
        kernel: kernel.clone(),
        results,
    })
}

/// BD axioms of the open algebra inside a window.
#[derive(Clone, Debug)]
pub struct BdrCertificate {
    open: BDPresentation,
    pub report: AxiomReport,
}

impl BdrCertificate {
    pub fn passed(&self) -> bool {
        self.report.all_passed()
    }

    pub fn covers(&self, open: &BDPresentation) -> bool {
        self.open == *open
    }
}

pub fn certify_bdr(open: &BDPresentation, window: TruncationWindow, exec: Exec) -> BdrCertificate {
    BdrCertificate {
        open: open.clone(),
        report: check_bd_axioms(open, window, exec),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommutationReport {
    pub window: MorphismWindow,
    pub arities: Vec<CheckResult>,
}

impl CommutationReport {
    pub fn passed(&self) -> bool {
        all_passed(&self.arities)
    }

    /// Smallest arity at which the relation fails.
    pub fn first_failure(&self) -> Option<usize> {
        self.arities.iter().position(|r| !r.passed).map(|k| k + 1)
    }
}

/// Check that the open-closed family is an L∞ morphism from `closed ⊗ W` to
/// `trivial(closed) ⊗ W`, without asking for certificates.
pub fn verify_commutation_unchecked(
    closed: &BDPresentation,
    kernel: &ContractionKernel,
    open: &BDPresentation,
    window: MorphismWindow,
    exec: Exec,
) -> Result<CommutationReport, FormalityError> {
    if closed.space() != kernel.space() {
        return Err(FormalityError::SpaceMismatch);
    }
    let source = tensor_bd(closed, open)?;
    let target = tensor_bd(&closed.trivialized(), open)?;
    let f = OcMorphism::new(kernel.clone(), open.space())?;
    if f.union() != source.space() {
        return Err(FormalityError::SpaceMismatch);
    }
    let arities = check_morphism_relation(
        &f,
        &dgla_to_coderivation(&source),
        &dgla_to_coderivation(&target),
        window,
        exec,
    );
    Ok(CommutationReport { window, arities })
}

/// As [`verify_commutation_unchecked`], but refuses to run unless both
/// certificates cover this instance and passed.
pub fn verify_commutation(
    closed: &BDPresentation,
    kernel: &ContractionKernel,
    open: &BDPresentation,
    kil: Option<&KilCertificate>,
    bdr: Option<&BdrCertificate>,
    window: MorphismWindow,
    exec: Exec,
) -> Result<CommutationReport, FormalityError> {
    match kil {
        None => {
            return Err(FormalityError::Certificate(
                "closed-sector morphism certificate absent".into(),
            ))
        }
        Some(c) if !c.covers(closed, kernel) => {
            return Err(FormalityError::Certificate(
                "closed-sector certificate is for another instance".into(),
            ))
        }
        Some(c) if !c.passed() => {
            return Err(FormalityError::Certificate(
                "closed-sector certificate failed".into(),
            ))
        }
        _ => {}
    }
    match bdr {
        None => {
            return Err(FormalityError::Certificate(
                "open-sector axiom certificate absent".into(),
            ))
        }
        Some(c) if !c.covers(open) => {
            return Err(FormalityError::Certificate(
                "open-sector certificate is for another instance".into(),
            ))
        }
        Some(c) if !c.passed() => {
            return Err(FormalityError::Certificate(
                "open-sector certificate failed".into(),
            ))
        }
        _ => {}
    }
    verify_commutation_unchecked(closed, kernel, open, window, exec)
}
