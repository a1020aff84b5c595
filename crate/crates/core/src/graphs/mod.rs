//! Connected marked graphs with loop defects.
//!
//! Vertices carry a fixed marking (their index), so two marked graphs are
//! isomorphic exactly when they agree on defects, leaf counts and the number
//! of edges joining every pair of vertices (self-loops included). The
//! canonical form encodes that data; no search over vertex relabelings is
//! ever needed.

mod bijection;
mod enumerate;
mod split;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use bijection::{sweep_gt, verify_gt_bijection, GtLimits, GtReport};
pub use enumerate::{enumerate_graphs, enumerate_labeled, enumerate_profile, GraphClass};
pub use split::{
    partitions_mod_equiv, psi, psi_inv, split_vertex, split_vertex_with_defects, AElement,
    CElement, DefectMode, PartitionClass, PsiImage, SplitResult,
};

pub type HalfEdge = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph has no vertices")]
    NoVertices,
    #[error("half-edge {0} listed more than once")]
    DuplicateHalfEdge(HalfEdge),
    #[error("edge uses unknown or reused half-edge {0}")]
    BadEdge(HalfEdge),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("infeasible profile: {0}")]
    InfeasibleProfile(String),
    #[error("vertex index {0} out of range")]
    VertexOutOfRange(usize),
    #[error("invalid split: {0}")]
    BadSplit(String),
    #[error("partition sizes {k1}+{k2} do not match valency {valency}")]
    SizeMismatch {
        k1: usize,
        k2: usize,
        valency: usize,
    },
    #[error("malformed element: {0}")]
    Malformed(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Vertex {
    pub defect: u32,
    pub half_edges: Vec<HalfEdge>,
}

/// A marked multigraph with leaves. Vertex `i` carries mark `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MarkedGraph {
    vertices: Vec<Vertex>,
    edges: Vec<(HalfEdge, HalfEdge)>,
}

impl MarkedGraph {
    /// Validates the half-edge structure. Connectivity is not required here;
    /// see [`MarkedGraph::is_connected`].
    pub fn new(
        vertices: Vec<Vertex>,
        edges: Vec<(HalfEdge, HalfEdge)>,
    ) -> Result<Self, GraphError> {
        if vertices.is_empty() {
            return Err(GraphError::NoVertices);
        }
        let mut owner = BTreeSet::new();
        for v in &vertices {
            for &h in &v.half_edges {
                if !owner.insert(h) {
                    return Err(GraphError::DuplicateHalfEdge(h));
                }
            }
        }
        let mut used = BTreeSet::new();
        for &(a, b) in &edges {
            for h in [a, b] {
                if !owner.contains(&h) || !used.insert(h) {
                    return Err(GraphError::BadEdge(h));
                }
            }
        }
        Ok(MarkedGraph { vertices, edges })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(HalfEdge, HalfEdge)] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn valency(&self, v: usize) -> usize {
        self.vertices[v].half_edges.len()
    }

    pub fn defect(&self, v: usize) -> u32 {
        self.vertices[v].defect
    }

    pub fn half_edge_count(&self) -> usize {
        self.vertices.iter().map(|v| v.half_edges.len()).sum()
    }

    /// Vertex index owning each half-edge.
    pub fn owners(&self) -> BTreeMap<HalfEdge, usize> {
        let mut out = BTreeMap::new();
        for (i, v) in self.vertices.iter().enumerate() {
            for &h in &v.half_edges {
                out.insert(h, i);
            }
        }
        out
    }

    /// Half-edges not used by any edge, in vertex order.
    pub fn leaves(&self) -> Vec<HalfEdge> {
        let used: BTreeSet<HalfEdge> = self.edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        self.vertices
            .iter()
            .flat_map(|v| v.half_edges.iter().copied())
            .filter(|h| !used.contains(h))
            .collect()
    }

    pub fn leaf_count(&self) -> usize {
        self.half_edge_count() - 2 * self.edges.len()
    }

    /// Connected components as sorted vertex index lists, ordered by their
    /// smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let owners = self.owners();
        let m = self.vertices.len();
        let mut parent: Vec<usize> = (0..m).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut c = x;
            while p[c] != r {
                let next = p[c];
                p[c] = r;
                c = next;
            }
            r
        }
        for &(a, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, owners[&a]), find(&mut parent, owners[&b]));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..m {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v);
        }
        groups.into_values().collect()
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Σ defects + |e| − |v| + 1.
    pub fn betti(&self) -> Result<u32, GraphError> {
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        let defects: u32 = self.vertices.iter().map(|v| v.defect).sum();
        Ok(defects + self.edges.len() as u32 + 1 - self.vertices.len() as u32)
    }

    /// Every vertex satisfies 2g(v) − 2 + |h_v| > 0.
    pub fn is_stable(&self) -> bool {
        self.vertices
            .iter()
            .all(|v| 2 * v.defect as i64 - 2 + v.half_edges.len() as i64 > 0)
    }

    pub fn shape(&self) -> GraphShape {
        let owners = self.owners();
        let m = self.vertices.len();
        let mut shape = GraphShape {
            defects: self.vertices.iter().map(|v| v.defect).collect(),
            leaves: vec![0; m],
            mult: vec![0; m * (m + 1) / 2],
        };
        for &(a, b) in &self.edges {
            let (u, v) = (owners[&a], owners[&b]);
            shape.mult[tri_index(m, u.min(v), u.max(v))] += 1;
        }
        let used: BTreeSet<HalfEdge> = self.edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        for (i, v) in self.vertices.iter().enumerate() {
            shape.leaves[i] = v.half_edges.iter().filter(|h| !used.contains(h)).count() as u32;
        }
        shape
    }

    /// Swap the marks of vertices `a` and `b`.
    pub fn relabel_swap(&self, a: usize, b: usize) -> Result<MarkedGraph, GraphError> {
        let m = self.vertices.len();
        for x in [a, b] {
            if x >= m {
                return Err(GraphError::VertexOutOfRange(x));
            }
        }
        let mut out = self.clone();
        out.vertices.swap(a, b);
        Ok(out)
    }
}

/// Index of the unordered vertex pair `(i, j)`, `i <= j`, in the packed
/// upper triangle of an `m × m` matrix.
fn tri_index(m: usize, i: usize, j: usize) -> usize {
    debug_assert!(i <= j && j < m);
    i * m - i * (i + 1) / 2 + j
}

/// Isomorphism invariant of a marked graph: defects, leaf counts and edge
/// multiplicities between every pair of marked vertices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GraphShape {
    pub defects: Vec<u32>,
    pub leaves: Vec<u32>,
    /// Packed upper triangle; the diagonal counts self-loops.
    pub mult: Vec<u32>,
}

impl GraphShape {
    pub fn vertex_count(&self) -> usize {
        self.defects.len()
    }

    pub fn multiplicity(&self, i: usize, j: usize) -> u32 {
        self.mult[tri_index(self.vertex_count(), i.min(j), i.max(j))]
    }

    /// Representative graph: vertex `i` lists its self-loop halves first,
    /// then edges to higher and lower vertices by index, then leaves.
    pub fn to_graph(&self) -> MarkedGraph {
        let m = self.vertex_count();
        let mut next: HalfEdge = 0;
        let mut vertices: Vec<Vertex> = self
            .defects
            .iter()
            .map(|&d| Vertex {
                defect: d,
                half_edges: Vec::new(),
            })
            .collect();
        let mut edges = Vec::new();
        for i in 0..m {
            for j in i..m {
                for _ in 0..self.multiplicity(i, j) {
                    let (a, b) = (next, next + 1);
                    next += 2;
                    vertices[i].half_edges.push(a);
                    vertices[j].half_edges.push(b);
                    edges.push((a, b));
                }
            }
        }
        for (i, v) in vertices.iter_mut().enumerate() {
            v.half_edges.sort_unstable();
            for _ in 0..self.leaves[i] {
                v.half_edges.push(next);
                next += 1;
            }
        }
        MarkedGraph { vertices, edges }
    }

    pub fn encode(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(2 + 4 * (self.defects.len() * 2 + self.mult.len()));
        out.extend_from_slice(&(self.vertex_count() as u16).to_be_bytes());
        for x in self.defects.iter().chain(&self.leaves).chain(&self.mult) {
            out.extend_from_slice(&(*x as u16).to_be_bytes());
        }
        out
    }
}

/// Byte string equal for two graphs iff they are marked-isomorphic.
pub fn canonical_form(g: &MarkedGraph) -> Vec<u8> {
    g.shape().encode()
}

fn factorial(n: u32) -> u64 {
    (1..=n as u64).product()
}

/// Order of the group of half-edge permutations fixing every vertex and
/// preserving the edge pairing, computed from the shape.
pub fn aut_order(g: &MarkedGraph) -> u64 {
    let s = g.shape();
    let m = s.vertex_count();
    let mut order: u64 = s.leaves.iter().map(|&l| factorial(l)).product();
    for i in 0..m {
        for j in i..m {
            let k = s.multiplicity(i, j);
            order *= factorial(k);
            if i == j {
                order *= 1u64 << k;
            }
        }
    }
    order
}

/// Automorphism count by brute force over all vertex-preserving half-edge
/// permutations. Exponential; intended for graphs with few half-edges.
pub fn aut_order_brute(g: &MarkedGraph) -> u64 {
    use crate::graded::permutations;
    let per_vertex: Vec<Vec<Vec<usize>>> = g
        .vertices
        .iter()
        .map(|v| permutations(v.half_edges.len()))
        .collect();
    let edge_set: BTreeSet<(HalfEdge, HalfEdge)> =
        g.edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    let mut count = 0u64;
    let mut choice = vec![0usize; g.vertices.len()];
    loop {
        let mut image = BTreeMap::new();
        for (vi, v) in g.vertices.iter().enumerate() {
            let p = &per_vertex[vi][choice[vi]];
            for (k, &h) in v.half_edges.iter().enumerate() {
                image.insert(h, v.half_edges[p[k]]);
            }
        }
        let preserved = g.edges.iter().all(|&(a, b)| {
            let (x, y) = (image[&a], image[&b]);
            edge_set.contains(&(x.min(y), x.max(y)))
        });
        if preserved {
            count += 1;
        }
        // odometer
        let mut k = 0;
        loop {
            if k == choice.len() {
                return count;
            }
            choice[k] += 1;
            if choice[k] < per_vertex[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}
