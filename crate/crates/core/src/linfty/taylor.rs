use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::coword::{canonical_coword, CoElement, CoWord};
use crate::graded::{
    int, koszul_sign_of_sequence, set_partitions, Element, ElementRepr, GradedSpace, KernelError,
    Monomial, Scalar,
};

/// Taylor coefficients `F_n : Sym^n(source) → target` of degree 0.
pub trait TaylorMorphism: Sync {
    fn source(&self) -> &GradedSpace;
    fn target(&self) -> &GradedSpace;
    /// `F_n` on one canonical coalgebra word (`n ≥ 1`).
    fn coefficient(&self, inputs: &[Monomial]) -> Element;
}

/// Multilinear extension of the coefficients to arbitrary elements.
pub fn apply_taylor<F: TaylorMorphism + ?Sized>(f: &F, args: &[Element]) -> Element {
    let space = f.source();
    let mut words: BTreeMap<CoWord, Scalar> = BTreeMap::new();
    let mut current: Vec<Monomial> = Vec::with_capacity(args.len());
    fn rec(
        k: usize,
        args: &[Element],
        coeff: Scalar,
        current: &mut Vec<Monomial>,
        space: &GradedSpace,
        words: &mut BTreeMap<CoWord, Scalar>,
    ) {
        if k == args.len() {
            if let Some((w, sign)) = canonical_coword(current, space) {
                *words.entry(w).or_insert_with(Scalar::zero) += coeff * int(sign.into());
            }
            return;
        }
        for (m, c) in args[k].terms() {
            current.push(m.clone());
            rec(k + 1, args, &coeff * c, current, space, words);
            current.pop();
        }
    }
    rec(0, args, Scalar::one(), &mut current, space, &mut words);
    let mut out = Element::zero();
    for (w, c) in words {
        if !c.is_zero() {
            out.add_scaled(&f.coefficient(&w), &c);
        }
    }
    out
}

/// Value of the coalgebra morphism on one word: the sum over set partitions
/// into blocks of the signed product of `F` on each block.
pub fn extend_taylor<F: TaylorMorphism + ?Sized>(f: &F, word: &[Monomial]) -> CoElement {
    let space = f.source();
    let Some((w, sign)) = canonical_coword(word, space) else {
        return CoElement::zero();
    };
    let mut out = CoElement::zero();
    for blocks in set_partitions(w.len()) {
        let order: Vec<usize> = blocks.iter().flatten().copied().collect();
        let s = koszul_sign_of_sequence(&order, |i| w[i].is_odd(space)) * sign;
        let mut prod: Option<CoElement> = None;
        for b in &blocks {
            let block: Vec<Monomial> = b.iter().map(|&i| w[i].clone()).collect();
            let value = CoElement::from_element(&f.coefficient(&block));
            prod = Some(match prod {
                None => value,
                Some(p) => p.mul(&value, f.target()),
            });
        }
        if let Some(p) = prod {
            out.add_assign(&p.scaled(&int(s.into())), f.target());
        }
    }
    out
}

/// Taylor family given by a closure.
pub struct FnTaylor<G> {
    pub source: GradedSpace,
    pub target: GradedSpace,
    pub f: G,
}

impl<G: Fn(&[Monomial]) -> Element + Sync> TaylorMorphism for FnTaylor<G> {
    fn source(&self) -> &GradedSpace {
        &self.source
    }

    fn target(&self) -> &GradedSpace {
        &self.target
    }

    fn coefficient(&self, inputs: &[Monomial]) -> Element {
        (self.f)(inputs)
    }
}

/// Taylor family stored as a finite table; absent words map to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TabulatedTaylor {
    pub source: GradedSpace,
    pub target: GradedSpace,
    pub table: BTreeMap<CoWord, Element>,
}

impl TabulatedTaylor {
    pub fn tabulate<F: TaylorMorphism + ?Sized>(f: &F, inputs: &[CoWord]) -> Self {
        let table = inputs
            .iter()
            .filter_map(|w| {
                let v = f.coefficient(w);
                (!v.is_zero()).then(|| (w.clone(), v))
            })
            .collect();
        TabulatedTaylor {
            source: f.source().clone(),
            target: f.target().clone(),
            table,
        }
    }

    pub fn to_entries(&self) -> Vec<TaylorEntry> {
        self.table
            .iter()
            .map(|(w, v)| TaylorEntry {
                arity: w.len(),
                inputs: w
                    .iter()
                    .map(|m| MonomialRepr {
                        word: m
                            .word
                            .letters()
                            .iter()
                            .map(|&l| self.source.name(l).to_string())
                            .collect(),
                        gamma: m.gamma,
                    })
                    .collect(),
                value: v.to_repr(&self.target),
            })
            .collect()
    }

    pub fn from_entries(
        source: GradedSpace,
        target: GradedSpace,
        entries: &[TaylorEntry],
    ) -> Result<Self, KernelError> {
        let mut table = BTreeMap::new();
        for e in entries {
            if e.arity != e.inputs.len() {
                return Err(KernelError::LengthMismatch {
                    left: e.arity,
                    right: e.inputs.len(),
                });
            }
            let mut ms = Vec::new();
            for m in &e.inputs {
                let letters = m
                    .word
                    .iter()
                    .map(|n| source.letter(n))
                    .collect::<Result<Vec<_>, _>>()?;
                let el = Element::from_letters(&letters, m.gamma, Scalar::one(), &source);
                let Some((mono, c)) = el.terms().next() else {
                    continue;
                };
                // fold the reordering sign into the value
                ms.push((mono.clone(), c.clone()));
            }
            if ms.len() != e.inputs.len() {
                continue;
            }
            let sign: Scalar = ms.iter().map(|(_, c)| c.clone()).product();
            let monos: Vec<Monomial> = ms.into_iter().map(|(m, _)| m).collect();
            let Some((w, s)) = canonical_coword(&monos, &source) else {
                continue;
            };
            let value = Element::from_repr(&e.value, &target)?.scaled(&(sign * int(s.into())));
            table.insert(w, value);
        }
        Ok(TabulatedTaylor {
            source,
            target,
            table,
        })
    }
}

impl TaylorMorphism for TabulatedTaylor {
    fn source(&self) -> &GradedSpace {
        &self.source
    }

    fn target(&self) -> &GradedSpace {
        &self.target
    }

    fn coefficient(&self, inputs: &[Monomial]) -> Element {
        self.table.get(inputs).cloned().unwrap_or_default()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonomialRepr {
    pub word: Vec<String>,
    pub gamma: u32,
}

/// One sparse entry `(arity, inputs) → value` of a Taylor family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaylorEntry {
    pub arity: usize,
    pub inputs: Vec<MonomialRepr>,
    pub value: ElementRepr,
}
