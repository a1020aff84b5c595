use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::KernelError;

/// Index of a basis letter inside its [`GradedSpace`].
///
/// Letters are numbered in the global letter order (degree, then name), so
/// comparing two `Letter`s of the same space compares them in that order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Letter(pub u16);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LetterSpec {
    pub name: String,
    pub degree: i64,
}

impl LetterSpec {
    pub fn new(name: impl Into<String>, degree: i64) -> Self {
        LetterSpec {
            name: name.into(),
            degree,
        }
    }
}

/// A finite graded vector space given by named, graded basis letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSpace {
    letters: Vec<LetterSpec>,
    index: HashMap<String, Letter>,
}

impl GradedSpace {
    pub fn new(mut letters: Vec<LetterSpec>) -> Result<Self, KernelError> {
        if letters.len() > u16::MAX as usize {
            return Err(KernelError::TooManyLetters(letters.len()));
        }
        letters.sort_by(|a, b| (a.degree, &a.name).cmp(&(b.degree, &b.name)));
        let mut index = HashMap::with_capacity(letters.len());
        for (i, l) in letters.iter().enumerate() {
            if l.name.is_empty() {
                return Err(KernelError::EmptyName);
            }
            if index.insert(l.name.clone(), Letter(i as u16)).is_some() {
                return Err(KernelError::DuplicateLetter(l.name.clone()));
            }
        }
        Ok(GradedSpace { letters, index })
    }

    pub fn from_pairs<S: AsRef<str>>(pairs: &[(S, i64)]) -> Result<Self, KernelError> {
        Self::new(
            pairs
                .iter()
                .map(|(n, d)| LetterSpec::new(n.as_ref(), *d))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.letters.len()).map(|i| Letter(i as u16))
    }

    pub fn specs(&self) -> &[LetterSpec] {
        &self.letters
    }

    pub fn degree(&self, l: Letter) -> i64 {
        self.letters[l.0 as usize].degree
    }

    pub fn is_odd(&self, l: Letter) -> bool {
        self.degree(l).rem_euclid(2) == 1
    }

    pub fn name(&self, l: Letter) -> &str {
        &self.letters[l.0 as usize].name
    }

    pub fn letter(&self, name: &str) -> Result<Letter, KernelError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| KernelError::UnknownLetter(name.to_string()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    /// Position of every letter of `self` inside `target`.
    pub fn embedding_into(&self, target: &GradedSpace) -> Result<Vec<Letter>, KernelError> {
        self.letters
            .iter()
            .map(|spec| {
                let l = target.letter(&spec.name)?;
                if target.degree(l) != spec.degree {
                    return Err(KernelError::DegreeMismatch(spec.name.clone()));
                }
                Ok(l)
            })
            .collect()
    }

    /// Disjoint union of two spaces; letter names must not collide.
    pub fn disjoint_union(&self, other: &GradedSpace) -> Result<GradedSpace, KernelError> {
        let mut all = self.letters.clone();
        all.extend(other.letters.iter().cloned());
        GradedSpace::new(all)
    }
}

impl fmt::Display for GradedSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|l| format!("{}:{}", l.name, l.degree))
            .collect();
        write!(f, "<{}>", parts.join(", "))
    }
}

impl Serialize for GradedSpace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.letters.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GradedSpace {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let letters = Vec::<LetterSpec>::deserialize(d)?;
        GradedSpace::new(letters).map_err(serde::de::Error::custom)
    }
}

/// Degree conventions derived from the Calabi-Yau dimension `d`.
///
/// All letter degrees are stored unshifted; the constants below are the only
/// place the shifts enter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Grading {
    pub d: i64,
}

impl Grading {
    pub fn new(d: i64) -> Self {
        Grading { d }
    }

    /// Degree of the formal variable γ, `6 - 2d`. Always even.
    pub fn gamma_degree(&self) -> i64 {
        6 - 2 * self.d
    }

    /// Degree `r = 2d - 5` of the bracket. Always odd.
    pub fn twist(&self) -> i64 {
        2 * self.d - 5
    }

    /// Total degree on which a contraction kernel may be nonzero.
    pub fn kernel_support(&self) -> i64 {
        6 - 2 * self.d
    }

    /// Total degree on which a closed-sector Poisson pairing may be nonzero.
    pub fn pairing_support(&self) -> i64 {
        5 - 2 * self.d
    }

    /// Offset added to unshifted degrees in the induced dg Lie algebra.
    pub fn lie_offset(&self) -> i64 {
        self.twist()
    }
}
