use serde::{Deserialize, Serialize};

use super::{BDPresentation, TruncationWindow};
use crate::exec::Exec;
use crate::graded::{int, sym_words, Element, Scalar, SymWord};
use crate::report::{run_check, CheckResult};

pub type AxiomResult = CheckResult;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub window: TruncationWindow,
    pub axioms: Vec<AxiomResult>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.axioms.iter().all(|a| a.passed)
    }

    pub fn get(&self, name: &str) -> Option<&AxiomResult> {
        self.axioms.iter().find(|a| a.name == name)
    }
}

fn sign(odd: bool) -> Scalar {
    int(if odd { -1 } else { 1 })
}

/// Check the BD axioms on every basis word (γ-exponent 0) with at most
/// `window.max_word` letters in total. All operations commute with γ, so
/// this covers every monomial in the window.
pub fn check_bd_axioms(a: &BDPresentation, window: TruncationWindow, exec: Exec) -> AxiomReport {
    let space = a.space();
    let n = window.max_word;
    let r = a.twist();
    let words = sym_words(space, 1, n);
    let el = |w: &SymWord| Element::from_letters(w.letters(), 0, int(1), space);
    let show = |w: &SymWord| w.display(space).to_string();
    let odd = |w: &SymWord| w.is_odd(space);
    let shifted_odd = |w: &SymWord| (w.degree(space) + r).rem_euclid(2) == 1;

    let pairs: Vec<(SymWord, SymWord)> = words
        .iter()
        .flat_map(|u| {
            words
                .iter()
                .filter(move |v| u.len() + v.len() <= n)
                .map(move |v| (u.clone(), v.clone()))
        })
        .collect();
    let triples: Vec<(SymWord, SymWord, SymWord)> = pairs
        .iter()
        .flat_map(|(u, v)| {
            words
                .iter()
                .filter(move |w| u.len() + v.len() + w.len() <= n)
                .map(move |w| (u.clone(), v.clone(), w.clone()))
        })
        .collect();

    let mut axioms = Vec::new();
    axioms.push(run_check("d_squared", &words, exec, |w| {
        let dd = a.differential(&a.differential(&el(w)));
        (!dd.is_zero()).then(|| format!("D²({}) = {}", show(w), dd.display(space)))
    }));
    axioms.push(run_check("bd_relation", &pairs, exec, |(u, v)| {
        let (eu, ev) = (el(u), el(v));
        let lhs = a.differential(&a.product(&eu, &ev));
        let s = sign(odd(u));
        let mut rhs = a.product(&a.differential(&eu), &ev);
        let mut tail = a.product(&eu, &a.differential(&ev));
        tail.add_assign(&a.bracket(&eu, &ev).times_gamma(1));
        rhs.add_scaled(&tail, &s);
        (lhs != rhs).then(|| {
            format!(
                "u={}, v={}: D(uv) = {} but rhs = {}",
                show(u),
                show(v),
                lhs.display(space),
                rhs.display(space)
            )
        })
    }));
    axioms.push(run_check("bracket_symmetry", &pairs, exec, |(u, v)| {
        let lhs = a.bracket(&el(u), &el(v));
        let mut rhs = a.bracket(&el(v), &el(u));
        if !(shifted_odd(u) && shifted_odd(v)) {
            rhs = rhs.neg();
        }
        (lhs != rhs).then(|| {
            format!(
                "u={}, v={}: {{u,v}} = {}",
                show(u),
                show(v),
                lhs.display(space)
            )
        })
    }));
    axioms.push(run_check("leibniz", &triples, exec, |(u, v, w)| {
        let (eu, ev, ew) = (el(u), el(v), el(w));
        let lhs = a.bracket(&eu, &a.product(&ev, &ew));
        let mut rhs = a.product(&a.bracket(&eu, &ev), &ew);
        let s = sign(shifted_odd(u) && odd(v));
        rhs.add_scaled(&a.product(&ev, &a.bracket(&eu, &ew)), &s);
        (lhs != rhs).then(|| format!("u={}, v={}, w={}", show(u), show(v), show(w)))
    }));
    axioms.push(run_check("jacobi", &triples, exec, |(u, v, w)| {
        let (eu, ev, ew) = (el(u), el(v), el(w));
        let lhs = a.bracket(&eu, &a.bracket(&ev, &ew));
        let mut rhs = a.bracket(&a.bracket(&eu, &ev), &ew);
        let s = sign(shifted_odd(u) && shifted_odd(v));
        rhs.add_scaled(&a.bracket(&ev, &a.bracket(&eu, &ew)), &s);
        (lhs != rhs).then(|| format!("u={}, v={}, w={}", show(u), show(v), show(w)))
    }));
    AxiomReport { window, axioms }
}
