//! Declarative instance files.

use std::collections::BTreeMap;

use ocformal::bd::{
    free_closed_sector, BDPresentation, FreeBVRepr, PresentationRepr, TruncationWindow,
};
use ocformal::formality::{ContractionKernel, KernelEntry};
use ocformal::graded::{sym_canonicalize, GradedSpace, Grading, Monomial};
use ocformal::graphs::DefectMode;
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub schema_version: u32,
    pub config: Config,
    #[serde(default)]
    pub spaces: BTreeMap<String, GradedSpace>,
    #[serde(default)]
    pub kernels: BTreeMap<String, KernelSpec>,
    #[serde(default)]
    pub presentations: BTreeMap<String, PresentationSpec>,
    #[serde(default)]
    pub monomials: BTreeMap<String, MonomialSpec>,
    #[serde(default)]
    pub campaigns: Vec<Campaign>,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub d: i64,
    pub window: WindowSpec,
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowSpec {
    pub max_word: usize,
    pub max_gamma: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelSpec {
    pub space: String,
    #[serde(default)]
    pub entries: Vec<KernelEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum PresentationSpec {
    /// Free closed sector from `d₁`, `b₁` and a pairing.
    Free(FreeBVRepr),
    /// Generators, their differentials and the bracket on generators.
    General(PresentationRepr),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonomialSpec {
    pub space: String,
    pub word: Vec<String>,
    #[serde(default)]
    pub gamma: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Campaign {
    GtBijection {
        id: String,
        g_max: u32,
        n_max: u32,
        m_max: usize,
        k_max: usize,
        half_edge_max: usize,
        #[serde(default)]
        modes: Option<Vec<DefectModeSpec>>,
    },
    BdAxioms {
        id: String,
        #[serde(default)]
        presentations: Vec<String>,
        #[serde(default)]
        random: Option<usize>,
    },
    Linfty {
        id: String,
        presentation: String,
        #[serde(default)]
        kernel: Option<String>,
        max_arity: usize,
        max_letters: usize,
        #[serde(default)]
        max_gamma: u32,
    },
    Bvinf {
        id: String,
        #[serde(default)]
        cases: Vec<BvinfCase>,
        #[serde(default)]
        random: Option<usize>,
    },
    KeyLemma {
        id: String,
        #[serde(default)]
        cases: Vec<KeyLemmaCase>,
        #[serde(default)]
        random: Option<usize>,
    },
    Commutation {
        id: String,
        #[serde(default)]
        cases: Vec<CommutationCase>,
        #[serde(default)]
        random: Option<usize>,
        max_letters: usize,
        #[serde(default)]
        max_gamma: u32,
    },
}

impl Campaign {
    pub fn kind(&self) -> &'static str {
        match self {
            Campaign::GtBijection { .. } => "gt-bijection",
            Campaign::BdAxioms { .. } => "bd-axioms",
            Campaign::Linfty { .. } => "linfty",
            Campaign::Bvinf { .. } => "bvinf",
            Campaign::KeyLemma { .. } => "key-lemma",
            Campaign::Commutation { .. } => "commutation",
        }
    }

    pub fn id(&self) -> &str {
        match self {
            Campaign::GtBijection { id, .. }
            | Campaign::BdAxioms { id, .. }
            | Campaign::Linfty { id, .. }
            | Campaign::Bvinf { id, .. }
            | Campaign::KeyLemma { id, .. }
            | Campaign::Commutation { id, .. } => id,
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DefectModeSpec {
    KeepOnFirst,
    Redistribute,
}

impl From<DefectModeSpec> for DefectMode {
    fn from(m: DefectModeSpec) -> Self {
        match m {
            DefectModeSpec::KeepOnFirst => DefectMode::KeepOnFirst,
            DefectModeSpec::Redistribute => DefectMode::Redistribute,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BvinfCase {
    pub kernel: String,
    pub inputs: Vec<String>,
    pub i: usize,
    pub j: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KeyLemmaCase {
    pub kernel: String,
    pub open: String,
    /// Inputs as monomials of the union space, written `H` letters first.
    pub inputs: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CommutationCase {
    pub closed: String,
    pub kernel: String,
    pub open: String,
    /// Earn the closed and open certificates before checking.
    #[serde(default = "yes")]
    pub certify: bool,
}

fn yes() -> bool {
    true
}

/// An instance file with every reference resolved.
pub struct Resolved {
    pub file: InstanceFile,
    pub grading: Grading,
    pub window: TruncationWindow,
    pub seed: u64,
}

impl Resolved {
    pub fn new(
        file: InstanceFile,
        seed: Option<u64>,
        words: Option<usize>,
        gamma: Option<u32>,
    ) -> Result<Self, CliError> {
        if file.schema_version != SCHEMA_VERSION {
            return Err(CliError::Input(format!(
                "schema_version {} is not supported (expected {SCHEMA_VERSION})",
                file.schema_version
            )));
        }
        let window = TruncationWindow::new(
            words.unwrap_or(file.config.window.max_word),
            gamma.unwrap_or(file.config.window.max_gamma),
        )
        .map_err(|e| CliError::Input(e.to_string()))?;
        let r = Resolved {
            grading: Grading::new(file.config.d),
            seed: seed.unwrap_or(file.config.seed),
            window,
            file,
        };
        // resolve everything once so bad references fail before any campaign runs
        for name in r.file.kernels.keys() {
            r.kernel(name)?;
        }
        for name in r.file.presentations.keys() {
            r.presentation(name)?;
        }
        for name in r.file.monomials.keys() {
            r.monomial(name)?;
        }
        Ok(r)
    }

    pub fn space(&self, name: &str) -> Result<&GradedSpace, CliError> {
        self.file
            .spaces
            .get(name)
            .ok_or_else(|| CliError::Input(format!("unknown space `{name}`")))
    }

    pub fn kernel(&self, name: &str) -> Result<ContractionKernel, CliError> {
        let spec = self
            .file
            .kernels
            .get(name)
            .ok_or_else(|| CliError::Input(format!("unknown kernel `{name}`")))?;
        let space = self.space(&spec.space)?.clone();
        ContractionKernel::from_entries(space, self.grading, &spec.entries)
            .map_err(|e| CliError::Input(format!("kernel `{name}`: {e}")))
    }

    pub fn presentation(&self, name: &str) -> Result<BDPresentation, CliError> {
        let spec = self
            .file
            .presentations
            .get(name)
            .ok_or_else(|| CliError::Input(format!("unknown presentation `{name}`")))?;
        let built = match spec {
            PresentationSpec::Free(repr) => repr
                .build(self.grading)
                .and_then(|data| free_closed_sector(&data, self.window)),
            PresentationSpec::General(repr) => repr.build(self.grading, self.window),
        };
        built.map_err(|e| CliError::Input(format!("presentation `{name}`: {e}")))
    }

    pub fn monomial(&self, name: &str) -> Result<(String, Monomial), CliError> {
        let spec = self
            .file
            .monomials
            .get(name)
            .ok_or_else(|| CliError::Input(format!("unknown monomial `{name}`")))?;
        let space = self.space(&spec.space)?;
        Ok((
            spec.space.clone(),
            parse_monomial(space, &spec.word, spec.gamma)?,
        ))
    }
}

pub fn parse_monomial(
    space: &GradedSpace,
    word: &[String],
    gamma: u32,
) -> Result<Monomial, CliError> {
    let letters = word
        .iter()
        .map(|n| space.letter(n))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::Input(e.to_string()))?;
    let (w, _) = sym_canonicalize(&letters, space)
        .ok_or_else(|| CliError::Input(format!("word {word:?} repeats an odd letter")))?;
    Ok(Monomial::new(w, gamma))
}
