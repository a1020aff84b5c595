use super::BDPresentation;
use crate::graded::{int, Element, Monomial};

/// A BD algebra with its product forgotten, read as a dg Lie algebra whose
/// degrees are shifted by the twist.
#[derive(Clone, Copy, Debug)]
pub struct DglaView<'a> {
    algebra: &'a BDPresentation,
}

pub fn induced_dgla(a: &BDPresentation) -> DglaView<'_> {
    DglaView { algebra: a }
}

impl<'a> DglaView<'a> {
    pub fn algebra(&self) -> &'a BDPresentation {
        self.algebra
    }

    /// Degree in the Lie view: `|x| + r`.
    pub fn degree(&self, m: &Monomial) -> i64 {
        m.degree(self.algebra.space(), self.algebra.grading()) + self.algebra.twist()
    }

    pub fn bracket_degree(&self) -> i64 {
        // |{x,y}| + r − (|x| + r) − (|y| + r)
        0
    }

    pub fn differential_degree(&self) -> i64 {
        1
    }

    pub fn differential(&self, x: &Element) -> Element {
        self.algebra.differential(x)
    }

    /// Lie bracket, graded antisymmetric in the shifted degrees.
    pub fn bracket(&self, x: &Element, y: &Element) -> Element {
        self.algebra.bracket(x, y)
    }

    /// Symmetric form `(−1)^{|x|}{x, y}` used as the binary operation on
    /// the symmetric coalgebra.
    pub fn symmetric_bracket(&self, x: &Element, y: &Element) -> Element {
        self.algebra
            .bracket(x, y)
            .scaled(&self.algebra.parity_sign(x))
    }

    fn shifted_odd(&self, x: &Element) -> bool {
        x.terms()
            .next()
            .is_some_and(|(m, _)| self.degree(m).rem_euclid(2) == 1)
    }

    fn odd(&self, x: &Element) -> bool {
        x.terms()
            .next()
            .is_some_and(|(m, _)| m.is_odd(self.algebra.space()))
    }

    /// `[x,[y,z]] − [[x,y],z] − (−1)^{‖x‖‖y‖}[y,[x,z]]` with shifted degrees.
    pub fn jacobi_defect_shifted(&self, x: &Element, y: &Element, z: &Element) -> Element {
        let mut out = self.bracket(x, &self.bracket(y, z));
        out.sub_assign(&self.bracket(&self.bracket(x, y), z));
        let s = int(if self.shifted_odd(x) && self.shifted_odd(y) {
            -1
        } else {
            1
        });
        out.sub_assign(&self.bracket(y, &self.bracket(x, z)).scaled(&s));
        out
    }

    /// The same identity for the symmetric bracket `L = (−1)^{|x|}{x, y}`,
    /// with unshifted parities:
    /// `L(x,L(y,z)) + (−1)^{|x|} L(L(x,y),z) − (−1)^{‖x‖‖y‖} L(y,L(x,z))`.
    pub fn jacobi_defect_unshifted(&self, x: &Element, y: &Element, z: &Element) -> Element {
        let l = |p: &Element, q: &Element| self.symmetric_bracket(p, q);
        let mut out = l(x, &l(y, z));
        let sx = int(if self.odd(x) { -1 } else { 1 });
        out.add_assign(&l(&l(x, y), z).scaled(&sx));
        let s = int(if self.shifted_odd(x) && self.shifted_odd(y) {
            -1
        } else {
            1
        });
        out.sub_assign(&l(y, &l(x, z)).scaled(&s));
        out
    }
}
