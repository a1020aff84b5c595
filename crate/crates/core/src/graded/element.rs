use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{int, sym_canonicalize, GradedSpace, Grading, KernelError, Letter, Scalar, SymWord};

/// A basis element of `Sym(V)⟦γ⟧`: a symmetric word times a power of γ.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub word: SymWord,
    pub gamma: u32,
}

impl Monomial {
    pub fn new(word: SymWord, gamma: u32) -> Self {
        Monomial { word, gamma }
    }

    pub fn unit() -> Self {
        Monomial::default()
    }

    pub fn letter(l: Letter) -> Self {
        Monomial::new(SymWord::letter(l), 0)
    }

    pub fn degree(&self, space: &GradedSpace, grading: Grading) -> i64 {
        self.word.degree(space) + self.gamma as i64 * grading.gamma_degree()
    }

    /// Parity of the monomial. γ has even degree, so only the word counts.
    pub fn is_odd(&self, space: &GradedSpace) -> bool {
        self.word.is_odd(space)
    }

    pub fn mul(&self, other: &Monomial, space: &GradedSpace) -> Option<(Monomial, i8)> {
        let (word, sign) = self.word.mul(&other.word, space)?;
        Some((Monomial::new(word, self.gamma + other.gamma), sign))
    }
}

/// Exact rational linear combination of monomials. Zero coefficients are
/// never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Element {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn unit() -> Self {
        Element::monomial(Monomial::unit(), Scalar::one())
    }

    pub fn monomial(m: Monomial, coeff: Scalar) -> Self {
        let mut e = Element::zero();
        e.add_term(m, coeff);
        e
    }

    pub fn letter(l: Letter) -> Self {
        Element::monomial(Monomial::letter(l), Scalar::one())
    }

    pub fn scalar(c: Scalar) -> Self {
        Element::monomial(Monomial::unit(), c)
    }

    /// Element from an arbitrary letter sequence, canonicalized with its sign.
    pub fn from_letters(
        letters: &[Letter],
        gamma: u32,
        coeff: Scalar,
        space: &GradedSpace,
    ) -> Self {
        match sym_canonicalize(letters, space) {
            Some((word, sign)) => {
                Element::monomial(Monomial::new(word, gamma), coeff * int(sign.into()))
            }
            None => Element::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, m: Monomial, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Element, factor: &Scalar) {
        if factor.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c * factor);
        }
    }

    pub fn add_assign(&mut self, other: &Element) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn sub_assign(&mut self, other: &Element) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }

    pub fn scaled(&self, factor: &Scalar) -> Element {
        if factor.is_zero() {
            return Element::zero();
        }
        Element {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * factor))
                .collect(),
        }
    }

    pub fn neg(&self) -> Element {
        self.scaled(&-Scalar::one())
    }

    pub fn sub(&self, other: &Element) -> Element {
        let mut out = self.clone();
        out.sub_assign(other);
        out
    }

    pub fn plus(&self, other: &Element) -> Element {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    /// Product in the graded symmetric algebra, `self · other`.
    pub fn mul(&self, other: &Element, space: &GradedSpace) -> Element {
        let mut out = Element::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if let Some((m, sign)) = m1.mul(m2, space) {
                    out.add_term(m, c1 * c2 * int(sign.into()));
                }
            }
        }
        out
    }

    pub fn times_gamma(&self, k: u32) -> Element {
        Element {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial::new(m.word.clone(), m.gamma + k), c.clone()))
                .collect(),
        }
    }

    /// Keep exactly the terms with word length `n` and γ-exponent `g`.
    pub fn project_gn(&self, g: u32, n: usize) -> Element {
        self.filter(|m| m.gamma == g && m.word.len() == n)
    }

    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Element {
        Element {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Every `(g, n)` bidegree with a nonzero projection.
    pub fn bidegrees(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> =
            self.terms.keys().map(|m| (m.gamma, m.word.len())).collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn max_word_len(&self) -> usize {
        self.terms.keys().map(|m| m.word.len()).max().unwrap_or(0)
    }

    pub fn max_gamma(&self) -> u32 {
        self.terms.keys().map(|m| m.gamma).max().unwrap_or(0)
    }

    /// Distinct total degrees of the terms.
    pub fn degrees(&self, space: &GradedSpace, grading: Grading) -> Vec<i64> {
        let mut out: Vec<i64> = self
            .terms
            .keys()
            .map(|m| m.degree(space, grading))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Rewrite letters through `map` into another space, re-canonicalizing.
    pub fn reindex(&self, map: &[Letter], target: &GradedSpace) -> Element {
        let mut out = Element::zero();
        for (m, c) in &self.terms {
            let letters: Vec<Letter> = m.word.letters().iter().map(|l| map[l.0 as usize]).collect();
            if let Some((word, sign)) = sym_canonicalize(&letters, target) {
                out.add_term(Monomial::new(word, m.gamma), c * int(sign.into()));
            }
        }
        out
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, Scalar> {
        self.terms
    }

    pub fn display<'a>(&'a self, space: &'a GradedSpace) -> impl fmt::Display + 'a {
        ElementDisplay(self, space)
    }

    pub fn to_repr(&self, space: &GradedSpace) -> ElementRepr {
        ElementRepr {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermRepr {
                    word: m
                        .word
                        .letters()
                        .iter()
                        .map(|&l| space.name(l).to_string())
                        .collect(),
                    gamma: m.gamma,
                    coeff: c.to_string(),
                })
                .collect(),
        }
    }

    pub fn from_repr(repr: &ElementRepr, space: &GradedSpace) -> Result<Element, KernelError> {
        let mut out = Element::zero();
        for t in &repr.terms {
            let letters = t
                .word
                .iter()
                .map(|n| space.letter(n))
                .collect::<Result<Vec<_>, _>>()?;
            let coeff = parse_scalar(&t.coeff)?;
            out.add_assign(&Element::from_letters(&letters, t.gamma, coeff, space));
        }
        Ok(out)
    }
}

impl FromIterator<(Monomial, Scalar)> for Element {
    fn from_iter<T: IntoIterator<Item = (Monomial, Scalar)>>(iter: T) -> Self {
        let mut e = Element::zero();
        for (m, c) in iter {
            e.add_term(m, c);
        }
        e
    }
}

pub fn parse_scalar(s: &str) -> Result<Scalar, KernelError> {
    let t = s.trim();
    if t.ends_with("/0") {
        return Err(KernelError::BadScalar(s.to_string()));
    }
    Scalar::from_str(t).map_err(|_| KernelError::BadScalar(s.to_string()))
}

struct ElementDisplay<'a>(&'a Element, &'a GradedSpace);

impl fmt::Display for ElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.0.terms.iter().enumerate() {
            let neg = c.is_negative();
            if k > 0 {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            } else if neg {
                write!(f, "-")?;
            }
            write!(f, "{}*{}", c.abs(), m.word.display(self.1))?;
            if m.gamma > 0 {
                write!(f, "*g^{}", m.gamma)?;
            }
        }
        Ok(())
    }
}

/// JSON form of an [`Element`]: letters by name, coefficients as `"p/q"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementRepr {
    pub terms: Vec<TermRepr>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermRepr {
    pub word: Vec<String>,
    #[serde(default)]
    pub gamma: u32,
    pub coeff: String,
}
