//! Twisted Beilinson-Drinfeld algebras given by finite presentations.
//!
//! The product is always the free graded symmetric product. The differential
//! and bracket are specified on generators and extended to words: the
//! bracket by the Leibniz rule in both slots, the differential by the BD
//! relation
//!
//! `D(u·v) = Du·v + (−1)^{|u|} u·Dv + (−1)^{|u|} γ {u, v}`.
//!
//! The bracket `{a, b}` stored here is antisymmetric for the degrees shifted
//! by the twist `r`: `{a, b} = −(−1)^{(|a|+r)(|b|+r)} {b, a}`.

mod axioms;
mod dgla;
mod free;
mod repr;
mod tensor;

use std::collections::BTreeMap;

use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graded::{
    int, Element, GradedSpace, Grading, KernelError, Letter, Monomial, Scalar, SymWord,
};

pub use axioms::{check_bd_axioms, AxiomReport, AxiomResult};
pub use dgla::{induced_dgla, DglaView};
pub use free::{free_closed_sector, FreeBVData};
pub use repr::{
    BracketEntry, DifferentialEntry, FreeBVRepr, LinearEntry, PairingEntry, PresentationRepr,
};
pub use tensor::{tensor_bd, tensor_bracket_literal};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BdError {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error("{what} has degree {found}, expected {expected}")]
    DegreeViolation {
        what: String,
        expected: i64,
        found: i64,
    },
    #[error("pairing is not graded symmetric on ({0}, {1})")]
    NotSymmetric(String, String),
    #[error("pairing entry ({0}, {1}) lies outside total degree {2}")]
    SupportViolation(String, String, i64),
    #[error("linear differential does not square to zero on `{0}`")]
    NotSquareZero(String),
    #[error("pairing is not a chain map for the linear differential at ({0}, {1})")]
    NotChainMap(String, String),
    #[error("twist mismatch: {0} vs {1}")]
    TwistMismatch(i64, i64),
    #[error("truncation window must have both bounds at least 1")]
    BadWindow,
    #[error("linear map image of `{0}` must be a combination of single letters")]
    NotLinear(String),
}

/// Caps on word length and γ-exponent for exhaustive checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TruncationWindow {
    pub max_word: usize,
    pub max_gamma: u32,
}

impl TruncationWindow {
    pub fn new(max_word: usize, max_gamma: u32) -> Result<Self, BdError> {
        if max_word == 0 || max_gamma == 0 {
            return Err(BdError::BadWindow);
        }
        Ok(TruncationWindow {
            max_word,
            max_gamma,
        })
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        m.word.len() <= self.max_word && m.gamma <= self.max_gamma
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BDPresentation {
    space: GradedSpace,
    grading: Grading,
    /// Image of each generator under the differential, by letter index.
    differential: Vec<Element>,
    /// Ordered generator pairs with nonzero bracket.
    bracket: BTreeMap<(Letter, Letter), Element>,
    window: TruncationWindow,
}

impl BDPresentation {
    /// Build a presentation from generator data. Bracket entries are used
    /// exactly as given; use [`BDPresentation::symmetric`] to fill in the
    /// reversed pairs.
    pub fn new(
        space: GradedSpace,
        grading: Grading,
        differential: Vec<Element>,
        bracket: BTreeMap<(Letter, Letter), Element>,
        window: TruncationWindow,
    ) -> Result<Self, BdError> {
        if differential.len() != space.len() {
            return Err(KernelError::LengthMismatch {
                left: differential.len(),
                right: space.len(),
            }
            .into());
        }
        for l in space.letters() {
            let want = space.degree(l) + 1;
            for found in differential[l.0 as usize].degrees(&space, grading) {
                if found != want {
                    return Err(BdError::DegreeViolation {
                        what: format!("D({})", space.name(l)),
                        expected: want,
                        found,
                    });
                }
            }
        }
        let mut clean = BTreeMap::new();
        for ((a, b), v) in bracket {
            let want = space.degree(a) + space.degree(b) + grading.twist();
            for found in v.degrees(&space, grading) {
                if found != want {
                    return Err(BdError::DegreeViolation {
                        what: format!("{{{}, {}}}", space.name(a), space.name(b)),
                        expected: want,
                        found,
                    });
                }
            }
            if !v.is_zero() {
                clean.insert((a, b), v);
            }
        }
        Ok(BDPresentation {
            space,
            grading,
            differential,
            bracket: clean,
            window,
        })
    }

    /// Like [`BDPresentation::new`], completing each given bracket entry
    /// `{a, b}` with `{b, a} = −(−1)^{(|a|+r)(|b|+r)} {a, b}`.
    pub fn symmetric(
        space: GradedSpace,
        grading: Grading,
        differential: Vec<Element>,
        bracket: &[(Letter, Letter, Element)],
        window: TruncationWindow,
    ) -> Result<Self, BdError> {
        let r = grading.twist();
        let mut map: BTreeMap<(Letter, Letter), Element> = BTreeMap::new();
        for (a, b, v) in bracket {
            let flip = ((space.degree(*a) + r) * (space.degree(*b) + r)).rem_euclid(2) == 0;
            let rev = if flip { v.neg() } else { v.clone() };
            for (key, val) in [((*a, *b), v.clone()), ((*b, *a), rev)] {
                if let Some(prev) = map.get(&key) {
                    if *prev != val {
                        return Err(BdError::NotSymmetric(
                            space.name(key.0).to_string(),
                            space.name(key.1).to_string(),
                        ));
                    }
                }
                map.insert(key, val);
            }
        }
        BDPresentation::new(space, grading, differential, map, window)
    }

    /// Zero differential and bracket on `space`.
    pub fn zero(space: GradedSpace, grading: Grading, window: TruncationWindow) -> Self {
        let n = space.len();
        BDPresentation {
            space,
            grading,
            differential: vec![Element::zero(); n],
            bracket: BTreeMap::new(),
            window,
        }
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    pub fn twist(&self) -> i64 {
        self.grading.twist()
    }

    pub fn window(&self) -> TruncationWindow {
        self.window
    }

    pub fn with_window(mut self, window: TruncationWindow) -> Self {
        self.window = window;
        self
    }

    pub fn generator_differential(&self, l: Letter) -> &Element {
        &self.differential[l.0 as usize]
    }

    pub fn bracket_entries(&self) -> &BTreeMap<(Letter, Letter), Element> {
        &self.bracket
    }

    /// Same product and differential on generators, zero bracket.
    pub fn trivialized(&self) -> BDPresentation {
        BDPresentation {
            bracket: BTreeMap::new(),
            ..self.clone()
        }
    }

    /// Multiply one stored ordered bracket entry by −1. The result is
    /// generally not a BD algebra; used to exercise the axiom checks.
    pub fn with_flipped_entry(&self, a: Letter, b: Letter) -> BDPresentation {
        let mut out = self.clone();
        if let Some(v) = out.bracket.get_mut(&(a, b)) {
            *v = v.neg();
        }
        out
    }

    fn word_element(&self, letters: &[Letter]) -> Element {
        Element::from_letters(letters, 0, Scalar::one(), &self.space)
    }

    fn letter_bracket(&self, a: Letter, b: Letter) -> Element {
        self.bracket.get(&(a, b)).cloned().unwrap_or_default()
    }

    fn parity(&self, letters: &[Letter]) -> bool {
        letters.iter().filter(|&&l| self.space.is_odd(l)).count() % 2 == 1
    }

    /// `{a, b₁⋯b_m}` by the Leibniz rule in the second slot.
    fn bracket_letter_word(&self, a: Letter, v: &[Letter]) -> Element {
        let r_odd = self.grading.twist().rem_euclid(2) == 1;
        let a_shift_odd = self.space.is_odd(a) ^ r_odd;
        let mut out = Element::zero();
        let mut passed_odd = false;
        for (j, &b) in v.iter().enumerate() {
            let inner = self.letter_bracket(a, b);
            if !inner.is_zero() {
                let term = self
                    .word_element(&v[..j])
                    .mul(&inner, &self.space)
                    .mul(&self.word_element(&v[j + 1..]), &self.space);
                if a_shift_odd && passed_odd {
                    out.sub_assign(&term);
                } else {
                    out.add_assign(&term);
                }
            }
            passed_odd ^= self.space.is_odd(b);
        }
        out
    }

    /// `{u, v}` on words by the Leibniz rule in the first slot.
    pub fn bracket_words(&self, u: &SymWord, v: &SymWord) -> Element {
        if u.is_empty() || v.is_empty() {
            return Element::zero();
        }
        let r_odd = self.grading.twist().rem_euclid(2) == 1;
        let v_shift_odd = v.is_odd(&self.space) ^ r_odd;
        let us = u.letters();
        let mut out = Element::zero();
        for i in 0..us.len() {
            let inner = self.bracket_letter_word(us[i], v.letters());
            if inner.is_zero() {
                continue;
            }
            let term = self
                .word_element(&us[..i])
                .mul(&inner, &self.space)
                .mul(&self.word_element(&us[i + 1..]), &self.space);
            if v_shift_odd && self.parity(&us[i + 1..]) {
                out.sub_assign(&term);
            } else {
                out.add_assign(&term);
            }
        }
        out
    }

    /// Differential of a word via the BD relation, peeling letters off the
    /// right.
    pub fn differential_word(&self, w: &SymWord) -> Element {
        let ls = w.letters();
        if ls.is_empty() {
            return Element::zero();
        }
        let mut acc = self.differential[ls[0].0 as usize].clone();
        for k in 1..ls.len() {
            let prefix = SymWord::from_sorted(&ls[..k]);
            let last = ls[k];
            let prefix_el = self.word_element(&ls[..k]);
            let mut next = acc.mul(&Element::letter(last), &self.space);
            let mut tail = prefix_el.mul(&self.differential[last.0 as usize], &self.space);
            tail.add_assign(
                &self
                    .bracket_words(&prefix, &SymWord::letter(last))
                    .times_gamma(1),
            );
            if self.parity(&ls[..k]) {
                next.sub_assign(&tail);
            } else {
                next.add_assign(&tail);
            }
            acc = next;
        }
        acc
    }

    pub fn differential(&self, x: &Element) -> Element {
        let mut out = Element::zero();
        for (m, c) in x.terms() {
            out.add_scaled(&self.differential_word(&m.word).times_gamma(m.gamma), c);
        }
        out
    }

    pub fn bracket(&self, x: &Element, y: &Element) -> Element {
        let mut out = Element::zero();
        for (m1, c1) in x.terms() {
            for (m2, c2) in y.terms() {
                let b = self.bracket_words(&m1.word, &m2.word);
                if !b.is_zero() {
                    out.add_scaled(&b.times_gamma(m1.gamma + m2.gamma), &(c1 * c2));
                }
            }
        }
        out
    }

    pub fn product(&self, x: &Element, y: &Element) -> Element {
        x.mul(y, &self.space)
    }

    /// `(−1)^{|x|}` for a homogeneous element (parity of its first term).
    pub fn parity_sign(&self, x: &Element) -> Scalar {
        let odd = x.terms().next().is_some_and(|(m, _)| m.is_odd(&self.space));
        int(if odd { -1 } else { 1 })
    }
}
