use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::coder::Coderivation;
use super::coword::CoWord;
use super::taylor::{apply_taylor, TaylorMorphism};
use crate::exec::Exec;
use crate::graded::{
    int, koszul_sign_of_sequence, ordered_splits, sym_words, Element, GradedSpace, Monomial, Scalar,
};
use crate::report::{run_check, CheckResult};

/// Which coalgebra words a checker visits: up to `max_arity` basis
/// monomials whose letters and γ-exponents add up to at most `max_letters`
/// and `max_gamma`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismWindow {
    pub max_arity: usize,
    pub max_letters: usize,
    pub max_gamma: u32,
    /// Whether the empty word (the unit) may appear as an input.
    pub include_unit: bool,
}

/// Canonical coalgebra words inside the window, grouped by arity and
/// sorted.
pub fn morphism_inputs(space: &GradedSpace, w: MorphismWindow) -> Vec<CoWord> {
    let min_len = if w.include_unit { 0 } else { 1 };
    let mut monos: Vec<Monomial> = Vec::new();
    for g in 0..=w.max_gamma {
        for word in sym_words(space, min_len, w.max_letters) {
            monos.push(Monomial::new(word, g));
        }
    }
    monos.sort();
    let mut out = Vec::new();
    for arity in 1..=w.max_arity {
        let mut cur: Vec<usize> = Vec::new();
        #[allow(clippy::too_many_arguments)]
        fn rec(
            start: usize,
            arity: usize,
            letters: usize,
            gamma: u32,
            monos: &[Monomial],
            w: &MorphismWindow,
            space: &GradedSpace,
            cur: &mut Vec<usize>,
            out: &mut Vec<CoWord>,
        ) {
            if cur.len() == arity {
                out.push(cur.iter().map(|&i| monos[i].clone()).collect());
                return;
            }
            for i in start..monos.len() {
                let m = &monos[i];
                let (nl, ng) = (letters + m.word.len(), gamma + m.gamma);
                if nl > w.max_letters || ng > w.max_gamma {
                    continue;
                }
                if cur.last() == Some(&i) && m.is_odd(space) {
                    continue;
                }
                cur.push(i);
                rec(i, arity, nl, ng, monos, w, space, cur, out);
                cur.pop();
            }
        }
        rec(0, arity, 0, 0, &monos, &w, space, &mut cur, &mut out);
    }
    out
}

fn mono_el(m: &Monomial) -> Element {
    Element::monomial(m.clone(), int(1))
}

fn sign_of_order(order: &[usize], w: &[Monomial], space: &GradedSpace) -> Scalar {
    int(koszul_sign_of_sequence(order, |i| w[i].is_odd(space)).into())
}

pub(crate) fn show_coword(w: &[Monomial], space: &GradedSpace) -> String {
    let parts: Vec<String> = w
        .iter()
        .map(|m| {
            let word = m.word.display(space).to_string();
            if m.gamma == 0 {
                word
            } else {
                format!("γ^{}·{}", m.gamma, word)
            }
        })
        .collect();
    format!("[{}]", parts.join(" ⊙ "))
}

/// `Σ_{I ⊔ J, I ≠ ∅} ε(I,J) Q_{|J|+1}(Q_{|I|}(x_I) ⊙ x_J)` on one word.
pub fn square_zero_component<Q: Coderivation + ?Sized>(q: &Q, w: &[Monomial]) -> Element {
    let space = q.space();
    let n = w.len();
    let mut out = Element::zero();
    for mask in 1u64..(1u64 << n) {
        let i: Vec<usize> = (0..n).filter(|b| mask >> b & 1 == 1).collect();
        let j: Vec<usize> = (0..n).filter(|b| mask >> b & 1 == 0).collect();
        if i.len() > 2 || j.len() > 1 {
            continue;
        }
        let inner_args: Vec<Element> = i.iter().map(|&k| mono_el(&w[k])).collect();
        let inner = q.q(&inner_args);
        if inner.is_zero() {
            continue;
        }
        let mut outer_args = vec![inner];
        outer_args.extend(j.iter().map(|&k| mono_el(&w[k])));
        let order: Vec<usize> = i.iter().chain(&j).copied().collect();
        out.add_scaled(&q.q(&outer_args), &sign_of_order(&order, w, space));
    }
    out
}

/// Evaluate the componentwise `Q² = 0` relation at every arity in the window.
pub fn square_zero_check<Q: Coderivation + ?Sized>(
    q: &Q,
    window: MorphismWindow,
    exec: Exec,
) -> Vec<CheckResult> {
    let inputs = morphism_inputs(q.space(), window);
    (1..=window.max_arity)
        .map(|arity| {
            let words: Vec<&CoWord> = inputs.iter().filter(|w| w.len() == arity).collect();
            run_check(&format!("arity_{arity}"), &words, exec, |w| {
                let v = square_zero_component(q, w);
                (!v.is_zero())
                    .then(|| format!("{} ↦ {}", show_coword(w, q.space()), v.display(q.space())))
            })
        })
        .collect()
}

/// Both sides of the dgla-morphism relation at one word.
pub fn morphism_sides<F, Q, Q2>(f: &F, q: &Q, q_target: &Q2, w: &[Monomial]) -> (Element, Element)
where
    F: TaylorMorphism + ?Sized,
    Q: Coderivation + ?Sized,
    Q2: Coderivation + ?Sized,
{
    let space = f.source();
    let n = w.len();
    let half = BigRational::new(1.into(), 2.into());

    let mut lhs = q_target.q1(&f.coefficient(w));
    for (i, j) in ordered_splits(n) {
        let fi = f.coefficient(&i.iter().map(|&k| w[k].clone()).collect::<Vec<_>>());
        if fi.is_zero() {
            continue;
        }
        let fj = f.coefficient(&j.iter().map(|&k| w[k].clone()).collect::<Vec<_>>());
        let order: Vec<usize> = i.iter().chain(&j).copied().collect();
        let s = sign_of_order(&order, w, space) * &half;
        lhs.add_scaled(&q_target.q2(&fi, &fj), &s);
    }

    let mut rhs = Element::zero();
    for i in 0..n {
        let dx = q.q1(&mono_el(&w[i]));
        if dx.is_zero() {
            continue;
        }
        let mut order = vec![i];
        order.extend((0..n).filter(|&k| k != i));
        let mut args = vec![dx];
        args.extend(order[1..].iter().map(|&k| mono_el(&w[k])));
        rhs.add_scaled(&apply_taylor(f, &args), &sign_of_order(&order, w, space));
    }
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let b = q.q2(&mono_el(&w[i]), &mono_el(&w[j]));
            if b.is_zero() {
                continue;
            }
            let mut order = vec![i, j];
            order.extend((0..n).filter(|&k| k != i && k != j));
            let mut args = vec![b];
            args.extend(order[2..].iter().map(|&k| mono_el(&w[k])));
            let s = sign_of_order(&order, w, space) * &half;
            rhs.add_scaled(&apply_taylor(f, &args), &s);
        }
    }
    (lhs, rhs)
}

/// Check that the Taylor family `f` is an L∞ morphism between the
/// coderivations `q` (source) and `q_target`, arity by arity.
pub fn check_morphism_relation<F, Q, Q2>(
    f: &F,
    q: &Q,
    q_target: &Q2,
    window: MorphismWindow,
    exec: Exec,
) -> Vec<CheckResult>
where
    F: TaylorMorphism + ?Sized,
    Q: Coderivation + ?Sized,
    Q2: Coderivation + ?Sized,
{
    let inputs = morphism_inputs(f.source(), window);
    (1..=window.max_arity)
        .map(|arity| {
            let words: Vec<&CoWord> = inputs.iter().filter(|w| w.len() == arity).collect();
            run_check(&format!("arity_{arity}"), &words, exec, |w| {
                let (lhs, rhs) = morphism_sides(f, q, q_target, w);
                (lhs != rhs).then(|| {
                    format!(
                        "{}: lhs {} vs rhs {}",
                        show_coword(w, f.source()),
                        lhs.display(f.target()),
                        rhs.display(f.target())
                    )
                })
            })
        })
        .collect()
}
