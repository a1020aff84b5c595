use num_traits::One;
use serde::{Deserialize, Serialize};

use super::{taylor_k, ContractionKernel, EvalOptions, FormalityError, OcMorphism};
use crate::bd::{tensor_bd, BDPresentation};
use crate::graded::{
    int, koszul_sign_of_sequence, ordered_splits, sign_of, Element, ElementRepr, GradedSpace,
    Monomial, Scalar,
};
use crate::linfty::{apply_taylor, dgla_to_coderivation, Coderivation, TaylorMorphism};

/// Both sides of an identity evaluated on one input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub name: String,
    pub lhs: Element,
    pub rhs: Element,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityRepr {
    pub name: String,
    pub passed: bool,
    pub lhs: ElementRepr,
    pub rhs: ElementRepr,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.lhs == self.rhs
    }

    pub fn difference(&self) -> Element {
        self.lhs.sub(&self.rhs)
    }

    pub fn to_repr(&self, space: &GradedSpace) -> IdentityRepr {
        IdentityRepr {
            name: self.name.clone(),
            passed: self.passed(),
            lhs: self.lhs.to_repr(space),
            rhs: self.rhs.to_repr(space),
        }
    }
}

fn mono(m: &Monomial) -> Element {
    Element::monomial(m.clone(), Scalar::one())
}

fn order_sign(order: &[usize], odd: &[bool]) -> Scalar {
    int(koszul_sign_of_sequence(order, |p| odd[p]).into())
}

fn pick(xs: &[Monomial], ix: &[usize]) -> Vec<Monomial> {
    ix.iter().map(|&k| xs[k].clone()).collect()
}

/// The quantum master relation of the graph family at positions `i ≠ j`
/// (0-based):
///
/// `ε K_{m−1}(x_i x_j ⊙ rest) = γ K_m(x) + Σ_{L₁∋i, L₂∋j} ε K(x_{L₁}) · K(x_{L₂})`.
pub fn verify_bvinf(
    kernel: &ContractionKernel,
    xs: &[Monomial],
    i: usize,
    j: usize,
    opts: EvalOptions,
) -> Result<IdentityReport, FormalityError> {
    let m = xs.len();
    if i == j || i >= m || j >= m {
        return Err(FormalityError::BadIndices);
    }
    let space = kernel.space();
    let odd: Vec<bool> = xs.iter().map(|x| x.is_odd(space)).collect();
    let rest: Vec<usize> = (0..m).filter(|&k| k != i && k != j).collect();

    let mut lhs = Element::zero();
    if let Some((prod, s)) = xs[i].mul(&xs[j], space) {
        let mut args = vec![prod];
        args.extend(pick(xs, &rest));
        let order: Vec<usize> = [i, j].into_iter().chain(rest.iter().copied()).collect();
        lhs = taylor_k(&args, kernel, opts).scaled(&(order_sign(&order, &odd) * int(s.into())));
    }

    let mut rhs = taylor_k(xs, kernel, opts).times_gamma(1);
    for (l1, l2) in ordered_splits(m) {
        if !l1.contains(&i) || !l2.contains(&j) {
            continue;
        }
        let k1 = taylor_k(&pick(xs, &l1), kernel, opts);
        if k1.is_zero() {
            continue;
        }
        let k2 = taylor_k(&pick(xs, &l2), kernel, opts);
        let order: Vec<usize> = l1.iter().chain(&l2).copied().collect();
        rhs.add_scaled(&k1.mul(&k2, space), &order_sign(&order, &odd));
    }
    Ok(IdentityReport {
        name: format!("bvinf[m={m},i={i},j={j}]"),
        lhs,
        rhs,
    })
}

fn product(ys: &[Monomial], space: &GradedSpace) -> Element {
    ys.iter()
        .fold(Element::unit(), |acc, y| acc.mul(&mono(y), space))
}

/// Splitting a bracket of two products over their factors:
///
/// `ε(L₁,L₂) (−1)^{Σ_{L₁}|y|} {Π_{L₁} y, Π_{L₂} y}
///   = Σ_{i∈L₁, j∈L₂} ε(i,j,rest) (−1)^{|y_i|} {y_i, y_j} · Π_rest y`.
pub fn lemma_easy_sides(w: &BDPresentation, ys: &[Monomial], l1: &[usize]) -> (Element, Element) {
    let space = w.space();
    let m = ys.len();
    let l2: Vec<usize> = (0..m).filter(|k| !l1.contains(k)).collect();
    let odd: Vec<bool> = ys.iter().map(|y| y.is_odd(space)).collect();
    let parity: bool = l1.iter().filter(|&&k| odd[k]).count() % 2 == 1;

    let order: Vec<usize> = l1.iter().chain(&l2).copied().collect();
    let lhs = w
        .bracket(
            &product(&pick(ys, l1), space),
            &product(&pick(ys, &l2), space),
        )
        .scaled(&(order_sign(&order, &odd) * int(sign_of(parity))));

    let mut rhs = Element::zero();
    for &i in l1 {
        for &j in &l2 {
            let rest: Vec<usize> = (0..m).filter(|&k| k != i && k != j).collect();
            let order: Vec<usize> = [i, j].into_iter().chain(rest.iter().copied()).collect();
            let b = w.bracket(&mono(&ys[i]), &mono(&ys[j]));
            let term = b.mul(&product(&pick(ys, &rest), space), space);
            rhs.add_scaled(&term, &(order_sign(&order, &odd) * int(sign_of(odd[i]))));
        }
    }
    (lhs, rhs)
}

pub fn verify_lemma_easy(w: &BDPresentation, ys: &[Monomial], l1: &[usize]) -> IdentityReport {
    let (lhs, rhs) = lemma_easy_sides(w, ys, l1);
    IdentityReport {
        name: format!("lemma_easy[m={},L1={l1:?}]", ys.len()),
        lhs,
        rhs,
    }
}

/// The second-order part of `D_W` on a product:
/// `D(y₁⋯y_m) − Σ_i (−1)^{|y_{<i}|} y₁⋯D(y_i)⋯y_m`.
fn second_order(w: &BDPresentation, ys: &[Monomial]) -> Element {
    let space = w.space();
    let mut out = w.differential(&product(ys, space));
    let mut parity = false;
    for i in 0..ys.len() {
        let left = product(&ys[..i], space);
        let right = product(&ys[i + 1..], space);
        let term = left
            .mul(&w.differential(&mono(&ys[i])), space)
            .mul(&right, space);
        out.add_scaled(&term, &int(-sign_of(parity)));
        parity ^= ys[i].is_odd(space);
    }
    out
}

/// Compatibility of the open-closed family with the bracket of the open
/// algebra, on one coalgebra word `X_1 ⊙ ⋯ ⊙ X_m` of `H ⊔ W`:
///
/// `Σ_{i≠j} ε F_{m−1}(B(X_i, X_j) ⊙ rest)
///   = Σ_{L₁,L₂} ε B(F(X_{L₁}), F(X_{L₂})) + 2 ε' K_m(x) · c(y)`,
///
/// where `B` is the symmetric bracket of `W` extended to `H ⊔ W`, and `c(y)`
/// is the second-order part of `D_W` on `y_1⋯y_m`.
pub fn verify_key_lemma(
    oc: &OcMorphism,
    w: &BDPresentation,
    xs: &[Monomial],
) -> Result<IdentityReport, FormalityError> {
    if w.space() != oc.open() {
        return Err(FormalityError::SpaceMismatch);
    }
    let closed = BDPresentation::zero(oc.closed().clone(), w.grading(), w.window());
    let t = tensor_bd(&closed, w)?;
    let q = dgla_to_coderivation(&t);
    let union = oc.union();
    let m = xs.len();
    let odd: Vec<bool> = xs.iter().map(|x| x.is_odd(union)).collect();

    let mut lhs = Element::zero();
    for i in 0..m {
        for j in 0..m {
            if i == j {
                continue;
            }
            let b = q.q2(&mono(&xs[i]), &mono(&xs[j]));
            if b.is_zero() {
                continue;
            }
            let rest: Vec<usize> = (0..m).filter(|&k| k != i && k != j).collect();
            let order: Vec<usize> = [i, j].into_iter().chain(rest.iter().copied()).collect();
            let mut args = vec![b];
            args.extend(rest.iter().map(|&k| mono(&xs[k])));
            lhs.add_scaled(&apply_taylor(oc, &args), &order_sign(&order, &odd));
        }
    }

    let mut rhs = Element::zero();
    for (l1, l2) in ordered_splits(m) {
        let f1 = oc.coefficient(&pick(xs, &l1));
        if f1.is_zero() {
            continue;
        }
        let f2 = oc.coefficient(&pick(xs, &l2));
        let order: Vec<usize> = l1.iter().chain(&l2).copied().collect();
        rhs.add_scaled(&q.q2(&f1, &f2), &order_sign(&order, &odd));
    }

    let mut sign = 1i64;
    let mut parts = Vec::with_capacity(m);
    for x in xs {
        let (s, h, y) = oc.split(x);
        sign *= i64::from(s);
        parts.push((h, y));
    }
    let pieces_odd: Vec<bool> = parts
        .iter()
        .flat_map(|(h, y)| [h.is_odd(oc.closed()), y.is_odd(oc.open())])
        .collect();
    let order: Vec<usize> = (0..m)
        .map(|k| 2 * k)
        .chain((0..m).map(|k| 2 * k + 1))
        .collect();
    sign *= i64::from(koszul_sign_of_sequence(&order, |p| pieces_odd[p]));
    let x_parity = parts.iter().filter(|(h, _)| h.is_odd(oc.closed())).count() % 2 == 1;
    sign *= sign_of(x_parity);
    let hs: Vec<Monomial> = parts.iter().map(|p| p.0.clone()).collect();
    let ys: Vec<Monomial> = parts.iter().map(|p| p.1.clone()).collect();
    let k = taylor_k(&hs, oc.kernel(), oc.opts);
    if !k.is_zero() {
        let c = second_order(w, &ys);
        let term = k
            .reindex(oc.emb_closed(), union)
            .mul(&c.reindex(oc.emb_open(), union), union);
        rhs.add_scaled(&term, &int(2 * sign));
    }
    Ok(IdentityReport {
        name: format!("key_lemma[m={m}]"),
        lhs,
        rhs,
    })
}
