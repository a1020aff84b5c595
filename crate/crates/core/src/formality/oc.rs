use num_traits::One;

use super::{taylor_k, ContractionKernel, EvalOptions, FormalityError};
use crate::graded::{
    int, koszul_sign_of_sequence, Element, GradedSpace, Letter, Monomial, Scalar, SymWord,
};
use crate::linfty::TaylorMorphism;

/// `F_n(X_1 ⊙ ⋯ ⊙ X_n) = ε · K_n(x_1 ⊙ ⋯ ⊙ x_n) · y_1⋯y_n` on the union of
/// the closed space `H` and the open space `W`, where `X_k = x_k y_k` with
/// `x_k` built from `H` (and carrying the γ-power) and `y_k` from `W`, and
/// `ε` is the Koszul sign of moving every `x` to the left of every `y`.
#[derive(Clone, Debug)]
pub struct OcMorphism {
    closed: GradedSpace,
    open: GradedSpace,
    union: GradedSpace,
    /// For each union letter: `Ok(h)` if it comes from `H`, `Err(w)` otherwise.
    origin: Vec<Result<Letter, Letter>>,
    emb_closed: Vec<Letter>,
    emb_open: Vec<Letter>,
    kernel: ContractionKernel,
    pub opts: EvalOptions,
}

impl OcMorphism {
    pub fn new(kernel: ContractionKernel, open: &GradedSpace) -> Result<Self, FormalityError> {
        let closed = kernel.space().clone();
        let union = closed
            .disjoint_union(open)
            .map_err(|_| FormalityError::SpaceMismatch)?;
        let emb_closed = closed.embedding_into(&union)?;
        let emb_open = open.embedding_into(&union)?;
        let mut origin = vec![Ok(Letter(0)); union.len()];
        for (i, &u) in emb_closed.iter().enumerate() {
            origin[u.0 as usize] = Ok(Letter(i as u16));
        }
        for (i, &u) in emb_open.iter().enumerate() {
            origin[u.0 as usize] = Err(Letter(i as u16));
        }
        Ok(OcMorphism {
            closed,
            open: open.clone(),
            union,
            origin,
            emb_closed,
            emb_open,
            kernel,
            opts: EvalOptions::default(),
        })
    }

    pub fn union(&self) -> &GradedSpace {
        &self.union
    }

    pub fn closed(&self) -> &GradedSpace {
        &self.closed
    }

    pub fn open(&self) -> &GradedSpace {
        &self.open
    }

    pub fn kernel(&self) -> &ContractionKernel {
        &self.kernel
    }

    pub fn emb_closed(&self) -> &[Letter] {
        &self.emb_closed
    }

    pub fn emb_open(&self) -> &[Letter] {
        &self.emb_open
    }

    /// Write a union monomial as `sign · x · y`.
    pub fn split(&self, m: &Monomial) -> (i8, Monomial, Monomial) {
        split_union(m, &self.origin, &self.union)
    }

    /// `F_n` on inputs already split into closed and open parts.
    pub fn on_split(&self, parts: &[(Monomial, Monomial)]) -> Element {
        let n = parts.len();
        let odd: Vec<bool> = parts
            .iter()
            .flat_map(|(x, y)| [x.is_odd(&self.closed), y.is_odd(&self.open)])
            .collect();
        let order: Vec<usize> = (0..n)
            .map(|k| 2 * k)
            .chain((0..n).map(|k| 2 * k + 1))
            .collect();
        let sign = koszul_sign_of_sequence(&order, |p| odd[p]);
        let xs: Vec<Monomial> = parts.iter().map(|p| p.0.clone()).collect();
        let k = taylor_k(&xs, &self.kernel, self.opts);
        if k.is_zero() {
            return k;
        }
        let mut y = Element::unit();
        for (_, w) in parts {
            y = y.mul(&Element::monomial(w.clone(), Scalar::one()), &self.open);
        }
        let k = k.reindex(&self.emb_closed, &self.union);
        let y = y.reindex(&self.emb_open, &self.union);
        k.mul(&y, &self.union).scaled(&int(sign.into()))
    }
}

/// Split a monomial of `H ⊔ W` into its `H` part (with the γ-power) and its
/// `W` part, returning the Koszul sign of moving the `H` letters first.
pub fn split_union(
    m: &Monomial,
    origin: &[Result<Letter, Letter>],
    union: &GradedSpace,
) -> (i8, Monomial, Monomial) {
    let letters = m.word.letters();
    let (mut hs, mut ws, mut hpos, mut wpos) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for (p, l) in letters.iter().enumerate() {
        match origin[l.0 as usize] {
            Ok(h) => {
                hs.push(h);
                hpos.push(p);
            }
            Err(w) => {
                ws.push(w);
                wpos.push(p);
            }
        }
    }
    let order: Vec<usize> = hpos.into_iter().chain(wpos).collect();
    let sign = koszul_sign_of_sequence(&order, |p| union.is_odd(letters[p]));
    // the union order restricts to the order of each part
    (
        sign,
        Monomial::new(SymWord::from_sorted(&hs), m.gamma),
        Monomial::new(SymWord::from_sorted(&ws), 0),
    )
}

impl TaylorMorphism for OcMorphism {
    fn source(&self) -> &GradedSpace {
        &self.union
    }

    fn target(&self) -> &GradedSpace {
        &self.union
    }

    fn coefficient(&self, inputs: &[Monomial]) -> Element {
        let mut sign = 1i8;
        let parts: Vec<(Monomial, Monomial)> = inputs
            .iter()
            .map(|m| {
                let (s, x, y) = self.split(m);
                sign *= s;
                (x, y)
            })
            .collect();
        self.on_split(&parts).scaled(&int(sign.into()))
    }
}
