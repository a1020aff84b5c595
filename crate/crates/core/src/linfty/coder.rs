use crate::bd::BDPresentation;
use crate::graded::{Element, GradedSpace};

/// A coderivation of degree +1 given by its Taylor coefficients. Only
/// arities 1 and 2 may be nonzero.
pub trait Coderivation: Sync {
    fn space(&self) -> &GradedSpace;
    fn q1(&self, x: &Element) -> Element;
    fn q2(&self, x: &Element, y: &Element) -> Element;

    fn q(&self, args: &[Element]) -> Element {
        match args {
            [x] => self.q1(x),
            [x, y] => self.q2(x, y),
            _ => Element::zero(),
        }
    }
}

/// `Q₁ = D`, `Q₂(x, y) = (−1)^{|x|}{x, y}`.
#[derive(Clone, Copy, Debug)]
pub struct DglaCoderivation<'a> {
    algebra: &'a BDPresentation,
}

pub fn dgla_to_coderivation(algebra: &BDPresentation) -> DglaCoderivation<'_> {
    DglaCoderivation { algebra }
}

impl DglaCoderivation<'_> {
    pub fn algebra(&self) -> &BDPresentation {
        self.algebra
    }
}

impl Coderivation for DglaCoderivation<'_> {
    fn space(&self) -> &GradedSpace {
        self.algebra.space()
    }

    fn q1(&self, x: &Element) -> Element {
        self.algebra.differential(x)
    }

    fn q2(&self, x: &Element, y: &Element) -> Element {
        // bilinear, so split x into homogeneous parity parts
        let mut out = Element::zero();
        for (m, c) in x.terms() {
            let single = Element::monomial(m.clone(), c.clone());
            let b = self.algebra.bracket(&single, y);
            if m.is_odd(self.algebra.space()) {
                out.sub_assign(&b);
            } else {
                out.add_assign(&b);
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct ZeroCoderivation {
    pub space: GradedSpace,
}

impl Coderivation for ZeroCoderivation {
    fn space(&self) -> &GradedSpace {
        &self.space
    }

    fn q1(&self, _: &Element) -> Element {
        Element::zero()
    }

    fn q2(&self, _: &Element, _: &Element) -> Element {
        Element::zero()
    }
}
