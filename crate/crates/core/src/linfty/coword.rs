use std::collections::BTreeMap;

use num_traits::Zero;

use crate::graded::{int, koszul_sign_of_sequence, ordered_splits, GradedSpace, Monomial, Scalar};

/// A word in the symmetric coalgebra: basis monomials of the algebra in
/// canonical (sorted) order.
pub type CoWord = Vec<Monomial>;

/// Sort monomials into canonical order. Returns `None` when an odd monomial
/// repeats, else the sorted word and the Koszul sign.
pub fn canonical_coword(ms: &[Monomial], space: &GradedSpace) -> Option<(CoWord, i8)> {
    let mut idx: Vec<usize> = (0..ms.len()).collect();
    idx.sort_by(|&a, &b| ms[a].cmp(&ms[b]).then(a.cmp(&b)));
    for w in idx.windows(2) {
        if ms[w[0]] == ms[w[1]] && ms[w[0]].is_odd(space) {
            return None;
        }
    }
    let sign = koszul_sign_of_sequence(&idx, |i| ms[i].is_odd(space));
    Some((idx.iter().map(|&i| ms[i].clone()).collect(), sign))
}

/// Linear combination of coalgebra words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoElement {
    terms: BTreeMap<CoWord, Scalar>,
}

impl CoElement {
    pub fn zero() -> Self {
        CoElement::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CoWord, &Scalar)> {
        self.terms.iter()
    }

    /// Add `coeff` times the (unsorted) word `ms`.
    pub fn add_word(&mut self, ms: &[Monomial], coeff: Scalar, space: &GradedSpace) {
        if coeff.is_zero() {
            return;
        }
        if let Some((w, sign)) = canonical_coword(ms, space) {
            let slot = self.terms.entry(w.clone()).or_insert_with(Scalar::zero);
            *slot += coeff * int(sign.into());
            if slot.is_zero() {
                self.terms.remove(&w);
            }
        }
    }

    /// Length-one words from an algebra element.
    pub fn from_element(x: &crate::graded::Element) -> Self {
        CoElement {
            terms: x
                .terms()
                .map(|(m, c)| (vec![m.clone()], c.clone()))
                .collect(),
        }
    }

    pub fn add_assign(&mut self, other: &CoElement, space: &GradedSpace) {
        for (w, c) in &other.terms {
            self.add_word(w, c.clone(), space);
        }
    }

    pub fn scaled(&self, f: &Scalar) -> CoElement {
        if f.is_zero() {
            return CoElement::zero();
        }
        CoElement {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * f)).collect(),
        }
    }

    /// Symmetric product.
    pub fn mul(&self, other: &CoElement, space: &GradedSpace) -> CoElement {
        let mut out = CoElement::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let joined: Vec<Monomial> = w1.iter().chain(w2).cloned().collect();
                out.add_word(&joined, c1 * c2, space);
            }
        }
        out
    }

    /// Reduced comultiplication: ordered splits into two nonempty subwords.
    pub fn comultiply(&self, space: &GradedSpace) -> CoTensor {
        let mut out = CoTensor::default();
        for (w, c) in &self.terms {
            for (left, right) in ordered_splits(w.len()) {
                let order: Vec<usize> = left.iter().chain(&right).copied().collect();
                let sign = koszul_sign_of_sequence(&order, |i| w[i].is_odd(space));
                let l: CoWord = left.iter().map(|&i| w[i].clone()).collect();
                let r: CoWord = right.iter().map(|&i| w[i].clone()).collect();
                out.add(l, r, c * int(sign.into()));
            }
        }
        out
    }
}

/// Linear combination of pairs of coalgebra words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoTensor {
    terms: BTreeMap<(CoWord, CoWord), Scalar>,
}

impl CoTensor {
    pub fn add(&mut self, left: CoWord, right: CoWord, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        let key = (left, right);
        let slot = self.terms.entry(key.clone()).or_insert_with(Scalar::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// `x ⊗ y` for coalgebra elements.
    pub fn add_product(&mut self, x: &CoElement, y: &CoElement, coeff: &Scalar) {
        for (w1, c1) in x.terms() {
            for (w2, c2) in y.terms() {
                self.add(w1.clone(), w2.clone(), c1 * c2 * coeff);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}
