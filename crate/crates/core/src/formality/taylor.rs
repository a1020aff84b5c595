use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::One;

use super::{eval_graph, ContractionKernel, DecoratedGraph, EvalOptions};
use crate::graded::{int, Element, GradedSpace, Monomial, Scalar};
use crate::graphs::{enumerate_labeled, enumerate_profile, GraphClass};
use crate::linfty::TaylorMorphism;

type ProfileKey = (Vec<usize>, Vec<u32>);

fn cache() -> &'static Mutex<HashMap<ProfileKey, Arc<Vec<GraphClass>>>> {
    static CACHE: OnceLock<Mutex<HashMap<ProfileKey, Arc<Vec<GraphClass>>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Connected classes with the given (valency, defect) per vertex, memoized.
pub fn profile_classes(valencies: &[usize], defects: &[u32]) -> Arc<Vec<GraphClass>> {
    let key = (valencies.to_vec(), defects.to_vec());
    if let Some(hit) = cache().lock().expect("profile cache poisoned").get(&key) {
        return hit.clone();
    }
    let classes = Arc::new(enumerate_profile(valencies, defects, false));
    cache()
        .lock()
        .expect("profile cache poisoned")
        .entry(key)
        .or_insert(classes)
        .clone()
}

fn profile(inputs: &[Monomial]) -> (Vec<usize>, Vec<u32>) {
    (
        inputs.iter().map(|x| x.word.len()).collect(),
        inputs.iter().map(|x| x.gamma).collect(),
    )
}

/// `K_m(x_1 ⊙ ⋯ ⊙ x_m)`: the sum over connected graphs whose vertex `i`
/// carries `x_i`, each weighted by `1/|Aut|`. Classes are summed in
/// canonical order, so the result is deterministic.
pub fn taylor_k(inputs: &[Monomial], kernel: &ContractionKernel, opts: EvalOptions) -> Element {
    if inputs.is_empty() {
        return Element::zero();
    }
    let (vals, defs) = profile(inputs);
    let mut out = Element::zero();
    for class in profile_classes(&vals, &defs).iter() {
        let d = DecoratedGraph::new(class.graph.clone(), inputs.to_vec())
            .expect("profile matches inputs");
        let w = eval_graph(&d, kernel, opts);
        out.add_scaled(&w, &Scalar::new(One::one(), class.aut.into()));
    }
    out
}

/// Sum over every labeled graph of the profile, divided by the number of
/// half-edge relabelings `Π valency!`. Agrees with [`taylor_k`] when the
/// automorphism weights are right.
pub fn labeled_sum(inputs: &[Monomial], kernel: &ContractionKernel, opts: EvalOptions) -> Element {
    let (vals, defs) = profile(inputs);
    let mut out = Element::zero();
    for g in enumerate_labeled(&vals, &defs) {
        let d = DecoratedGraph::new(g, inputs.to_vec()).expect("profile matches inputs");
        out.add_assign(&eval_graph(&d, kernel, opts));
    }
    let relabel = vals.iter().fold(Scalar::one(), |acc, &n| {
        acc * (1..=n as i64).fold(Scalar::one(), |a, k| a * int(k))
    });
    out.scaled(&(Scalar::one() / relabel))
}

/// The family `K` as a Taylor morphism of the closed algebra to itself.
#[derive(Clone, Debug)]
pub struct KTaylor {
    pub kernel: ContractionKernel,
    pub opts: EvalOptions,
}

impl KTaylor {
    pub fn new(kernel: ContractionKernel) -> Self {
        KTaylor {
            kernel,
            opts: EvalOptions::default(),
        }
    }
}

impl TaylorMorphism for KTaylor {
    fn source(&self) -> &GradedSpace {
        self.kernel.space()
    }

    fn target(&self) -> &GradedSpace {
        self.kernel.space()
    }

    fn coefficient(&self, inputs: &[Monomial]) -> Element {
        taylor_k(inputs, &self.kernel, self.opts)
    }
}
