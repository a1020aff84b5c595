use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::FormalityError;
use crate::bd::BDPresentation;
use crate::graded::{int, parse_scalar, sign_of, GradedSpace, Grading, Letter, Scalar};

/// Graded symmetric even pairing `H(a, b) = (−1)^{|a||b|} H(b, a)` supported
/// on `|a| + |b| = 6 − 2d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionKernel {
    space: GradedSpace,
    grading: Grading,
    /// Both orders stored.
    entries: BTreeMap<(Letter, Letter), Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelEntry {
    pub left: String,
    pub right: String,
    pub coeff: String,
}

impl ContractionKernel {
    /// Entries may be given in either order; the reversed entry is filled in.
    pub fn new(
        space: GradedSpace,
        grading: Grading,
        entries: &[(Letter, Letter, Scalar)],
    ) -> Result<Self, FormalityError> {
        let mut map = BTreeMap::new();
        let support = grading.kernel_support();
        for (a, b, c) in entries {
            if c.is_zero() {
                continue;
            }
            let (na, nb) = (space.name(*a).to_string(), space.name(*b).to_string());
            if space.degree(*a) + space.degree(*b) != support {
                return Err(FormalityError::KernelSupport(na, nb, support));
            }
            let both_odd = space.is_odd(*a) && space.is_odd(*b);
            if a == b && both_odd {
                return Err(FormalityError::KernelNotSymmetric(na, nb));
            }
            let rev = if both_odd { -c.clone() } else { c.clone() };
            for (key, val) in [((*a, *b), c.clone()), ((*b, *a), rev)] {
                match map.get(&key) {
                    Some(prev) if *prev != val => {
                        return Err(FormalityError::KernelNotSymmetric(na, nb))
                    }
                    _ => {
                        map.insert(key, val);
                    }
                }
            }
        }
        Ok(ContractionKernel {
            space,
            grading,
            entries: map,
        })
    }

    pub fn zero(space: GradedSpace, grading: Grading) -> Self {
        ContractionKernel {
            space,
            grading,
            entries: BTreeMap::new(),
        }
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    pub fn get(&self, a: Letter, b: Letter) -> Option<&Scalar> {
        self.entries.get(&(a, b))
    }

    pub fn value(&self, a: Letter, b: Letter) -> Scalar {
        self.entries
            .get(&(a, b))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &BTreeMap<(Letter, Letter), Scalar> {
        &self.entries
    }

    /// Same kernel read on a larger space containing this one.
    pub fn reindexed(&self, target: &GradedSpace) -> Result<ContractionKernel, FormalityError> {
        let emb = self.space.embedding_into(target)?;
        Ok(ContractionKernel {
            space: target.clone(),
            grading: self.grading,
            entries: self
                .entries
                .iter()
                .map(|(&(a, b), c)| ((emb[a.0 as usize], emb[b.0 as usize]), c.clone()))
                .collect(),
        })
    }

    /// Replace the kernel entries by a new symmetric set on the same space.
    pub fn with_entries(
        &self,
        entries: &[(Letter, Letter, Scalar)],
    ) -> Result<ContractionKernel, FormalityError> {
        ContractionKernel::new(self.space.clone(), self.grading, entries)
    }

    pub fn to_entries(&self) -> Vec<KernelEntry> {
        self.entries
            .iter()
            .filter(|((a, b), _)| a <= b)
            .map(|((a, b), c)| KernelEntry {
                left: self.space.name(*a).to_string(),
                right: self.space.name(*b).to_string(),
                coeff: c.to_string(),
            })
            .collect()
    }

    pub fn from_entries(
        space: GradedSpace,
        grading: Grading,
        entries: &[KernelEntry],
    ) -> Result<Self, FormalityError> {
        let triples = entries
            .iter()
            .map(|e| {
                Ok((
                    space.letter(&e.left)?,
                    space.letter(&e.right)?,
                    parse_scalar(&e.coeff)?,
                ))
            })
            .collect::<Result<Vec<_>, FormalityError>>()?;
        ContractionKernel::new(space, grading, &triples)
    }
}

impl ContractionKernel {
    /// Pairs `(a, b)` where `H(δa, b) + (−1)^{|a|} H(a, δb) ≠ 0`, with `δ`
    /// the linear part of the closed differential on generators.
    pub fn chain_violations(&self, closed: &BDPresentation) -> Vec<(Letter, Letter)> {
        let space = &self.space;
        let delta = |l: Letter| -> Vec<(Letter, Scalar)> {
            closed
                .generator_differential(l)
                .terms()
                .filter(|(m, _)| m.gamma == 0 && m.word.len() == 1)
                .map(|(m, c)| (m.word.letters()[0], c.clone()))
                .collect()
        };
        let mut out = Vec::new();
        for a in space.letters() {
            for b in space.letters() {
                let mut v = Scalar::zero();
                for (t, c) in delta(a) {
                    v += c * self.value(t, b);
                }
                let s = int(sign_of(space.is_odd(a)));
                for (t, c) in delta(b) {
                    v += c * &s * self.value(a, t);
                }
                if !v.is_zero() {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Admissible pairs `a ≤ b` for this grading.
    pub fn admissible_pairs(&self) -> Vec<(Letter, Letter)> {
        let space = &self.space;
        let support = self.grading.kernel_support();
        let mut out = Vec::new();
        for a in space.letters() {
            for b in space.letters() {
                if a <= b
                    && space.degree(a) + space.degree(b) == support
                    && !(a == b && space.is_odd(a))
                {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// This kernel plus `coeff` on the pair `(a, b)` and its mirror.
    pub fn with_added(
        &self,
        a: Letter,
        b: Letter,
        coeff: Scalar,
    ) -> Result<ContractionKernel, FormalityError> {
        let mut entries: Vec<(Letter, Letter, Scalar)> = self
            .entries
            .iter()
            .filter(|((x, y), _)| x <= y && (*x, *y) != (a.min(b), a.max(b)))
            .map(|(&(x, y), c)| (x, y, c.clone()))
            .collect();
        let (lo, hi) = (a.min(b), a.max(b));
        let mut v = self.value(lo, hi);
        v += if lo == a {
            coeff
        } else if self.space.is_odd(a) && self.space.is_odd(b) {
            -coeff
        } else {
            coeff
        };
        entries.push((lo, hi, v));
        ContractionKernel::new(self.space.clone(), self.grading, &entries)
    }
}
