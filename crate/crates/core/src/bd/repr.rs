use serde::{Deserialize, Serialize};

use super::{BDPresentation, BdError, FreeBVData, TruncationWindow};
use crate::graded::{parse_scalar, Element, ElementRepr, GradedSpace, Grading, Letter, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinearEntry {
    pub from: String,
    pub to: String,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairingEntry {
    pub left: String,
    pub right: String,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DifferentialEntry {
    pub letter: String,
    pub image: ElementRepr,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub left: String,
    pub right: String,
    pub value: ElementRepr,
}

/// Sparse JSON form of [`FreeBVData`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FreeBVRepr {
    pub letters: GradedSpace,
    #[serde(default)]
    pub d1: Vec<LinearEntry>,
    #[serde(default)]
    pub b1: Vec<LinearEntry>,
    #[serde(default)]
    pub omega: Vec<PairingEntry>,
}

/// Sparse JSON form of [`BDPresentation`]. Bracket entries are completed by
/// shifted antisymmetry unless the reversed pair is listed too.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationRepr {
    pub letters: GradedSpace,
    #[serde(default)]
    pub differential: Vec<DifferentialEntry>,
    #[serde(default)]
    pub bracket: Vec<BracketEntry>,
}

fn triple(
    space: &GradedSpace,
    a: &str,
    b: &str,
    c: &str,
) -> Result<(Letter, Letter, Scalar), BdError> {
    Ok((space.letter(a)?, space.letter(b)?, parse_scalar(c)?))
}

impl FreeBVRepr {
    pub fn build(&self, grading: Grading) -> Result<FreeBVData, BdError> {
        let s = &self.letters;
        let lin = |v: &[LinearEntry]| -> Result<Vec<_>, BdError> {
            v.iter()
                .map(|e| triple(s, &e.from, &e.to, &e.coeff))
                .collect()
        };
        let omega: Vec<_> = self
            .omega
            .iter()
            .map(|e| triple(s, &e.left, &e.right, &e.coeff))
            .collect::<Result<_, _>>()?;
        FreeBVData::new(s.clone(), grading, &lin(&self.d1)?, &lin(&self.b1)?, &omega)
    }

    pub fn from_data(data: &FreeBVData) -> Self {
        let s = data.space();
        let lin = |maps: &[std::collections::BTreeMap<Letter, Scalar>]| -> Vec<LinearEntry> {
            maps.iter()
                .enumerate()
                .flat_map(|(i, m)| {
                    m.iter().map(move |(t, c)| LinearEntry {
                        from: s.name(Letter(i as u16)).to_string(),
                        to: s.name(*t).to_string(),
                        coeff: c.to_string(),
                    })
                })
                .collect()
        };
        FreeBVRepr {
            letters: s.clone(),
            d1: lin(data.d1_entries()),
            b1: lin(data.b1_entries()),
            omega: data
                .omega_entries()
                .iter()
                .filter(|((a, b), _)| a <= b)
                .map(|((a, b), c)| PairingEntry {
                    left: s.name(*a).to_string(),
                    right: s.name(*b).to_string(),
                    coeff: c.to_string(),
                })
                .collect(),
        }
    }
}

impl PresentationRepr {
    pub fn build(
        &self,
        grading: Grading,
        window: TruncationWindow,
    ) -> Result<BDPresentation, BdError> {
        let s = &self.letters;
        let mut differential = vec![Element::zero(); s.len()];
        for e in &self.differential {
            let l = s.letter(&e.letter)?;
            differential[l.0 as usize].add_assign(&Element::from_repr(&e.image, s)?);
        }
        let bracket: Vec<(Letter, Letter, Element)> = self
            .bracket
            .iter()
            .map(|e| {
                Ok((
                    s.letter(&e.left)?,
                    s.letter(&e.right)?,
                    Element::from_repr(&e.value, s)?,
                ))
            })
            .collect::<Result<_, BdError>>()?;
        BDPresentation::symmetric(s.clone(), grading, differential, &bracket, window)
    }

    pub fn from_presentation(p: &BDPresentation) -> Self {
        let s = p.space();
        PresentationRepr {
            letters: s.clone(),
            differential: s
                .letters()
                .filter(|&l| !p.generator_differential(l).is_zero())
                .map(|l| DifferentialEntry {
                    letter: s.name(l).to_string(),
                    image: p.generator_differential(l).to_repr(s),
                })
                .collect(),
            bracket: p
                .bracket_entries()
                .iter()
                .map(|((a, b), v)| BracketEntry {
                    left: s.name(*a).to_string(),
                    right: s.name(*b).to_string(),
                    value: v.to_repr(s),
                })
                .collect(),
        }
    }
}
