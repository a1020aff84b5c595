use std::collections::BTreeMap;

use num_traits::Zero;

use super::{BDPresentation, BdError, TruncationWindow};
use crate::graded::{
    int, koszul_sign_of_sequence, Element, GradedSpace, Grading, Letter, Monomial, Scalar, SymWord,
};

/// Generating data of a free closed sector: a linear differential `d₁ + b₁`
/// on the generators and a graded symmetric pairing `ω`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeBVData {
    space: GradedSpace,
    grading: Grading,
    d1: Vec<BTreeMap<Letter, Scalar>>,
    b1: Vec<BTreeMap<Letter, Scalar>>,
    /// Both orders stored.
    omega: BTreeMap<(Letter, Letter), Scalar>,
}

fn linear_map(
    space: &GradedSpace,
    entries: &[(Letter, Letter, Scalar)],
    what: &str,
) -> Result<Vec<BTreeMap<Letter, Scalar>>, BdError> {
    let mut out = vec![BTreeMap::new(); space.len()];
    for (from, to, c) in entries {
        if space.degree(*to) != space.degree(*from) + 1 {
            return Err(BdError::DegreeViolation {
                what: format!("{what}({}) ∋ {}", space.name(*from), space.name(*to)),
                expected: space.degree(*from) + 1,
                found: space.degree(*to),
            });
        }
        let slot: &mut BTreeMap<Letter, Scalar> = &mut out[from.0 as usize];
        let v = slot.entry(*to).or_insert_with(Scalar::zero);
        *v += c;
        if v.is_zero() {
            slot.remove(to);
        }
    }
    Ok(out)
}

impl FreeBVData {
    /// Validates degrees, `(d₁ + b₁)² = 0`, graded symmetry and support of
    /// `ω`, and that `ω` is a chain map. Pairing entries may be given in
    /// either order; the reversed entry is filled in.
    pub fn new(
        space: GradedSpace,
        grading: Grading,
        d1: &[(Letter, Letter, Scalar)],
        b1: &[(Letter, Letter, Scalar)],
        omega: &[(Letter, Letter, Scalar)],
    ) -> Result<Self, BdError> {
        let d1 = linear_map(&space, d1, "d1")?;
        let b1 = linear_map(&space, b1, "b1")?;
        let mut pairing: BTreeMap<(Letter, Letter), Scalar> = BTreeMap::new();
        let support = grading.pairing_support();
        for (a, b, c) in omega {
            if c.is_zero() {
                continue;
            }
            let (na, nb) = (space.name(*a).to_string(), space.name(*b).to_string());
            if space.degree(*a) + space.degree(*b) != support {
                return Err(BdError::SupportViolation(na, nb, support));
            }
            let sign = int(if space.is_odd(*a) && space.is_odd(*b) {
                -1
            } else {
                1
            });
            for (key, val) in [((*a, *b), c.clone()), ((*b, *a), c * &sign)] {
                match pairing.get(&key) {
                    Some(prev) if *prev != val => return Err(BdError::NotSymmetric(na, nb)),
                    _ => {
                        pairing.insert(key, val);
                    }
                }
            }
        }
        let data = FreeBVData {
            space,
            grading,
            d1,
            b1,
            omega: pairing,
        };
        for l in data.space.letters() {
            let twice = data.delta_linear(&data.delta_linear(&Element::letter(l)));
            if !twice.is_zero() {
                return Err(BdError::NotSquareZero(data.space.name(l).to_string()));
            }
        }
        for a in data.space.letters() {
            for b in data.space.letters() {
                if !data.chain_defect(a, b).is_zero() {
                    return Err(BdError::NotChainMap(
                        data.space.name(a).to_string(),
                        data.space.name(b).to_string(),
                    ));
                }
            }
        }
        Ok(data)
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    pub fn omega(&self, a: Letter, b: Letter) -> Scalar {
        self.omega
            .get(&(a, b))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn omega_entries(&self) -> &BTreeMap<(Letter, Letter), Scalar> {
        &self.omega
    }

    pub fn d1_entries(&self) -> &[BTreeMap<Letter, Scalar>] {
        &self.d1
    }

    pub fn b1_entries(&self) -> &[BTreeMap<Letter, Scalar>] {
        &self.b1
    }

    /// `(d₁ + b₁)(l)` as a linear combination of letters.
    pub fn delta_letter(&self, l: Letter) -> Element {
        let mut out = Element::zero();
        for map in [&self.d1[l.0 as usize], &self.b1[l.0 as usize]] {
            for (t, c) in map {
                out.add_term(Monomial::letter(*t), c.clone());
            }
        }
        out
    }

    /// `ω(δa, b) + (−1)^{|a|} ω(a, δb)`.
    fn chain_defect(&self, a: Letter, b: Letter) -> Scalar {
        let mut s = Scalar::zero();
        for (m, c) in self.delta_letter(a).terms() {
            s += c * self.omega(m.word.letters()[0], b);
        }
        let sign = int(if self.space.is_odd(a) { -1 } else { 1 });
        for (m, c) in self.delta_letter(b).terms() {
            s += &sign * c * self.omega(a, m.word.letters()[0]);
        }
        s
    }

    /// Derivation extension of `d₁ + b₁` to words; commutes with γ.
    pub fn delta_linear(&self, x: &Element) -> Element {
        let mut out = Element::zero();
        for (m, c) in x.terms() {
            let ls = m.word.letters();
            let mut passed_odd = false;
            for i in 0..ls.len() {
                let left = Element::from_letters(&ls[..i], m.gamma, c.clone(), &self.space);
                let right = Element::from_letters(
                    &ls[i + 1..],
                    0,
                    Scalar::from_integer(1.into()),
                    &self.space,
                );
                let term = left
                    .mul(&self.delta_letter(ls[i]), &self.space)
                    .mul(&right, &self.space);
                if passed_odd {
                    out.sub_assign(&term);
                } else {
                    out.add_assign(&term);
                }
                passed_odd ^= self.space.is_odd(ls[i]);
            }
        }
        out
    }

    /// Second-order contraction `Δ_c(x₁⋯x_n) = Σ_{i<j} ε ω(x_i, x_j) ⋯` where
    /// `ε` is the Koszul sign of moving `x_i, x_j` to the front.
    pub fn contraction(&self, x: &Element) -> Element {
        let mut out = Element::zero();
        for (m, c) in x.terms() {
            let ls = m.word.letters();
            for i in 0..ls.len() {
                for j in i + 1..ls.len() {
                    let w = self.omega(ls[i], ls[j]);
                    if w.is_zero() {
                        continue;
                    }
                    let mut order = vec![i, j];
                    order.extend((0..ls.len()).filter(|&k| k != i && k != j));
                    let sign = koszul_sign_of_sequence(&order, |k| self.space.is_odd(ls[k]));
                    let rest: Vec<Letter> = order[2..].iter().map(|&k| ls[k]).collect();
                    let coeff = c * w * int(sign.into());
                    out.add_term(Monomial::new(SymWord::from_sorted(&rest), m.gamma), coeff);
                }
            }
        }
        out
    }

    /// `d₁ + b₁` extended as a derivation, plus `γ Δ_c`.
    pub fn total_differential(&self, x: &Element) -> Element {
        self.delta_linear(x)
            .plus(&self.contraction(x).times_gamma(1))
    }
}

/// The free BD algebra on `data`: generators map to `(d₁ + b₁)(l)` and the
/// bracket on generators is `{a, b} = (−1)^{|a|} ω(a, b)`.
pub fn free_closed_sector(
    data: &FreeBVData,
    window: TruncationWindow,
) -> Result<BDPresentation, BdError> {
    let differential: Vec<Element> = data.space.letters().map(|l| data.delta_letter(l)).collect();
    let mut bracket = BTreeMap::new();
    for (&(a, b), w) in &data.omega {
        let sign = int(if data.space.is_odd(a) { -1 } else { 1 });
        bracket.insert((a, b), Element::scalar(w * sign));
    }
    BDPresentation::new(
        data.space.clone(),
        data.grading,
        differential,
        bracket,
        window,
    )
}
