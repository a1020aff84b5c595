use std::sync::atomic::{AtomicU64, Ordering};

use num_traits::One;
use serde::{Deserialize, Serialize};

use super::{ContractionKernel, FormalityError};
use crate::graded::{
    int, koszul_sign_of_sequence, sym_canonicalize, Element, Letter, Monomial, Scalar,
};
use crate::graphs::{HalfEdge, MarkedGraph};

static GUARDED_CALLS: AtomicU64 = AtomicU64::new(0);
static GUARD_FAILURES: AtomicU64 = AtomicU64::new(0);

/// Process-wide counters of guarded evaluations.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GuardStats {
    pub calls: u64,
    pub failures: u64,
}

pub fn guard_stats() -> GuardStats {
    GuardStats {
        calls: GUARDED_CALLS.load(Ordering::Relaxed),
        failures: GUARD_FAILURES.load(Ordering::Relaxed),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalOptions {
    /// Check the degree count and re-evaluate with the edges reversed.
    pub guards: bool,
    /// Panic on a guard failure instead of only counting it.
    pub strict: bool,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            guards: true,
            strict: cfg!(debug_assertions),
        }
    }
}

impl EvalOptions {
    pub fn unguarded() -> Self {
        EvalOptions {
            guards: false,
            strict: false,
        }
    }
}

/// A graph whose vertex `i` carries `inputs[i]`: word length equal to the
/// valency and γ-exponent equal to the defect.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecoratedGraph {
    graph: MarkedGraph,
    inputs: Vec<Monomial>,
}

impl DecoratedGraph {
    pub fn new(graph: MarkedGraph, inputs: Vec<Monomial>) -> Result<Self, FormalityError> {
        if inputs.len() != graph.vertex_count() {
            return Err(FormalityError::ArityMismatch {
                expected: graph.vertex_count(),
                found: inputs.len(),
            });
        }
        for (v, x) in inputs.iter().enumerate() {
            if x.word.len() != graph.valency(v) {
                return Err(FormalityError::ValencyMismatch {
                    vertex: v,
                    valency: graph.valency(v),
                    letters: x.word.len(),
                });
            }
            if x.gamma != graph.defect(v) {
                return Err(FormalityError::DefectMismatch {
                    vertex: v,
                    defect: graph.defect(v),
                    gamma: x.gamma,
                });
            }
        }
        Ok(DecoratedGraph { graph, inputs })
    }

    pub fn graph(&self) -> &MarkedGraph {
        &self.graph
    }

    pub fn inputs(&self) -> &[Monomial] {
        &self.inputs
    }
}

struct Layout<'a> {
    letters: Vec<Letter>,
    odd: Vec<bool>,
    /// First global position of each vertex.
    offset: Vec<usize>,
    valency: Vec<usize>,
    /// Owning vertex of each half-edge of an edge, in edge order.
    edges: Vec<(usize, usize)>,
    kernel: &'a ContractionKernel,
}

fn layout<'a>(
    d: &DecoratedGraph,
    edges: &[(HalfEdge, HalfEdge)],
    kernel: &'a ContractionKernel,
) -> Layout<'a> {
    let owners = d.graph.owners();
    let space = kernel.space();
    let mut letters = Vec::new();
    let mut offset = Vec::new();
    for x in &d.inputs {
        offset.push(letters.len());
        letters.extend_from_slice(x.word.letters());
    }
    let odd = letters.iter().map(|&l| space.is_odd(l)).collect();
    Layout {
        letters,
        odd,
        offset,
        valency: (0..d.graph.vertex_count())
            .map(|v| d.graph.valency(v))
            .collect(),
        edges: edges.iter().map(|(a, b)| (owners[a], owners[b])).collect(),
        kernel,
    }
}

fn contract(lay: &Layout, edge_betti: u32) -> Element {
    let mut used = vec![false; lay.letters.len()];
    let mut seq: Vec<usize> = Vec::with_capacity(lay.letters.len());
    let mut out = Element::zero();
    fn rec(
        k: usize,
        lay: &Layout,
        used: &mut [bool],
        seq: &mut Vec<usize>,
        weight: Scalar,
        gamma: u32,
        out: &mut Element,
    ) {
        if k == lay.edges.len() {
            let rest: Vec<usize> = (0..lay.letters.len()).filter(|&p| !used[p]).collect();
            let leftover: Vec<Letter> = rest.iter().map(|&p| lay.letters[p]).collect();
            let Some((word, s2)) = sym_canonicalize(&leftover, lay.kernel.space()) else {
                return;
            };
            let order: Vec<usize> = seq.iter().chain(rest.iter()).copied().collect();
            let s1 = koszul_sign_of_sequence(&order, |p| lay.odd[p]);
            out.add_term(Monomial::new(word, gamma), weight * int((s1 * s2).into()));
            return;
        }
        let (u, v) = lay.edges[k];
        for p in lay.offset[u]..lay.offset[u] + lay.valency[u] {
            if used[p] {
                continue;
            }
            used[p] = true;
            for q in lay.offset[v]..lay.offset[v] + lay.valency[v] {
                if used[q] {
                    continue;
                }
                let Some(h) = lay.kernel.get(lay.letters[p], lay.letters[q]) else {
                    continue;
                };
                used[q] = true;
                seq.push(p);
                seq.push(q);
                rec(k + 1, lay, used, seq, &weight * h, gamma, out);
                seq.truncate(seq.len() - 2);
                used[q] = false;
            }
            used[p] = false;
        }
    }
    rec(
        0,
        lay,
        &mut used,
        &mut seq,
        Scalar::one(),
        edge_betti,
        &mut out,
    );
    out
}

fn factorial(n: usize) -> Scalar {
    (1..=n as i64).fold(Scalar::one(), |acc, k| acc * int(k))
}

fn evaluate(
    d: &DecoratedGraph,
    edges: &[(HalfEdge, HalfEdge)],
    kernel: &ContractionKernel,
) -> Element {
    let betti = d.graph.betti().expect("decorated graphs are connected");
    let lay = layout(d, edges, kernel);
    let raw = contract(&lay, betti);
    let mut leaves = vec![0usize; d.graph.vertex_count()];
    let owners = d.graph.owners();
    for h in d.graph.leaves() {
        leaves[owners[&h]] += 1;
    }
    let factor = leaves
        .iter()
        .fold(Scalar::one(), |acc, &n| acc * factorial(n));
    raw.scaled(&factor)
}

/// Weight of one decorated graph: every letter on an edge half-edge is
/// contracted with its partner through the kernel, the remaining letters
/// multiply into the output word, and the result carries γ^{betti}.
///
/// Letters are assigned to half-edges in every possible way; the leaves of
/// a vertex all give the same term, so only edge half-edges are enumerated
/// and the leaf orderings enter as a factorial.
pub fn eval_graph(d: &DecoratedGraph, kernel: &ContractionKernel, opts: EvalOptions) -> Element {
    let out = evaluate(d, d.graph.edges(), kernel);
    if opts.guards {
        GUARDED_CALLS.fetch_add(1, Ordering::Relaxed);
        if let Some(msg) = guard(d, kernel, &out) {
            GUARD_FAILURES.fetch_add(1, Ordering::Relaxed);
            if opts.strict {
                panic!("graph evaluation guard failed: {msg}");
            }
        }
    }
    out
}

fn guard(d: &DecoratedGraph, kernel: &ContractionKernel, out: &Element) -> Option<String> {
    let space = kernel.space();
    let grading = kernel.grading();
    let shift = grading.gamma_degree();
    let m = d.inputs.len() as i64;
    let input_degree: i64 = d.inputs.iter().map(|x| x.degree(space, grading)).sum();
    let expected = input_degree - (m - 1) * shift;
    for (mono, _) in out.terms() {
        let deg = mono.degree(space, grading);
        if deg != expected {
            return Some(format!("output degree {deg}, expected {expected}"));
        }
    }
    let reversed: Vec<(HalfEdge, HalfEdge)> =
        d.graph.edges().iter().rev().map(|&(a, b)| (b, a)).collect();
    if evaluate(d, &reversed, kernel) != *out {
        return Some("value depends on the edge order".to_string());
    }
    None
}
