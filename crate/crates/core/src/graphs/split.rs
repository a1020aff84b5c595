use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{canonical_form, GraphError, HalfEdge, MarkedGraph, Vertex};

/// How the defect of the split vertex is shared between its two halves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DefectMode {
    /// The I-vertex keeps the whole defect, the new vertex gets 0.
    KeepOnFirst,
    /// Every split `a + b = g(v₁)` is a separate element.
    Redistribute,
}

/// A pair of marked graphs with the label sets they occupy. `first_labels`
/// contains vertex 0 and `second_labels` contains the last vertex; labels
/// are 0-based and each list is increasing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CElement {
    pub first: MarkedGraph,
    pub first_labels: Vec<usize>,
    pub second: MarkedGraph,
    pub second_labels: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SplitResult {
    Connected(MarkedGraph),
    Disconnected(CElement),
}

/// Images of ψ are split results: connected ones lie in B, pairs in C.
pub type PsiImage = SplitResult;

impl SplitResult {
    /// Isomorphism-invariant key; componentwise in the disconnected case.
    pub fn key(&self) -> Vec<u8> {
        match self {
            SplitResult::Connected(g) => {
                let mut out = vec![0u8];
                out.extend(canonical_form(g));
                out
            }
            SplitResult::Disconnected(c) => {
                let mut out = vec![1u8, c.first_labels.len() as u8];
                out.extend(c.first_labels.iter().map(|&l| l as u8));
                out.extend(canonical_form(&c.first));
                out.extend(canonical_form(&c.second));
                out
            }
        }
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            SplitResult::Connected(g) => g.vertex_count(),
            SplitResult::Disconnected(c) => c.first.vertex_count() + c.second.vertex_count(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionClass {
    pub i: Vec<HalfEdge>,
    pub j: Vec<HalfEdge>,
    pub defects: (u32, u32),
    /// Key of the split result; equal keys mean equivalent partitions.
    #[serde(skip)]
    pub key: Vec<u8>,
}

/// An element of A: a graph class together with a partition class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AElement {
    pub graph: MarkedGraph,
    pub partition: PartitionClass,
}

impl AElement {
    pub fn key(&self) -> Vec<u8> {
        let mut out = canonical_form(&self.graph);
        out.extend(&self.partition.key);
        out
    }
}

/// Split vertex 0 into an I-vertex (kept at index 0, defect `defects.0`)
/// and a new last vertex carrying J (defect `defects.1`).
pub fn split_vertex_with_defects(
    g: &MarkedGraph,
    i: &[HalfEdge],
    j: &[HalfEdge],
    defects: (u32, u32),
) -> Result<SplitResult, GraphError> {
    if i.is_empty() || j.is_empty() {
        return Err(GraphError::BadSplit("empty part".into()));
    }
    let h1: BTreeSet<HalfEdge> = g.vertices[0].half_edges.iter().copied().collect();
    let si: BTreeSet<HalfEdge> = i.iter().copied().collect();
    let sj: BTreeSet<HalfEdge> = j.iter().copied().collect();
    if si.len() != i.len() || sj.len() != j.len() || !si.is_disjoint(&sj) {
        return Err(GraphError::BadSplit("parts overlap or repeat".into()));
    }
    if si.union(&sj).copied().collect::<BTreeSet<_>>() != h1 {
        return Err(GraphError::BadSplit("parts do not cover vertex 1".into()));
    }
    if defects.0 + defects.1 != g.vertices[0].defect {
        return Err(GraphError::BadSplit("defect split does not add up".into()));
    }
    let keep = |set: &BTreeSet<HalfEdge>| -> Vec<HalfEdge> {
        g.vertices[0]
            .half_edges
            .iter()
            .copied()
            .filter(|h| set.contains(h))
            .collect()
    };
    let mut vertices = g.vertices.clone();
    vertices[0] = Vertex {
        defect: defects.0,
        half_edges: keep(&si),
    };
    vertices.push(Vertex {
        defect: defects.1,
        half_edges: keep(&sj),
    });
    let whole = MarkedGraph {
        vertices,
        edges: g.edges.clone(),
    };
    let comps = whole.components();
    match comps.len() {
        1 => Ok(SplitResult::Connected(whole)),
        2 => {
            let last = whole.vertices.len() - 1;
            debug_assert!(comps[0].contains(&0) && comps[1].contains(&last));
            let first = restrict(&whole, &comps[0]);
            let second = restrict(&whole, &comps[1]);
            Ok(SplitResult::Disconnected(CElement {
                first,
                first_labels: comps[0].clone(),
                second,
                second_labels: comps[1].clone(),
            }))
        }
        _ => Err(GraphError::Disconnected),
    }
}

/// [`split_vertex_with_defects`] with the whole defect kept on the I-vertex.
pub fn split_vertex(
    g: &MarkedGraph,
    i: &[HalfEdge],
    j: &[HalfEdge],
) -> Result<SplitResult, GraphError> {
    split_vertex_with_defects(g, i, j, (g.vertices[0].defect, 0))
}

fn restrict(g: &MarkedGraph, labels: &[usize]) -> MarkedGraph {
    let vertices: Vec<Vertex> = labels.iter().map(|&l| g.vertices[l].clone()).collect();
    let owned: BTreeSet<HalfEdge> = vertices
        .iter()
        .flat_map(|v| v.half_edges.iter().copied())
        .collect();
    let edges = g
        .edges
        .iter()
        .copied()
        .filter(|(a, _)| owned.contains(a))
        .collect();
    MarkedGraph { vertices, edges }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            if n - x < k - cur.len() {
                break;
            }
            cur.push(x);
            rec(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

pub(crate) fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    combinations(items.len(), k)
        .into_iter()
        .map(|c| c.into_iter().map(|x| items[x]).collect())
        .collect()
}

/// One representative `(I, J)` per equivalence class of partitions of the
/// half-edges of vertex 0 with `|I| = k1`, `|J| = k2`, sorted by key.
pub fn partitions_mod_equiv(
    g: &MarkedGraph,
    k1: usize,
    k2: usize,
    mode: DefectMode,
) -> Result<Vec<PartitionClass>, GraphError> {
    let h1 = &g.vertices[0].half_edges;
    if k1 + k2 != h1.len() || k1 == 0 || k2 == 0 {
        return Err(GraphError::SizeMismatch {
            k1,
            k2,
            valency: h1.len(),
        });
    }
    let total = g.vertices[0].defect;
    let defect_splits: Vec<(u32, u32)> = match mode {
        DefectMode::KeepOnFirst => vec![(total, 0)],
        DefectMode::Redistribute => (0..=total).map(|a| (a, total - a)).collect(),
    };
    let mut classes: BTreeMap<Vec<u8>, PartitionClass> = BTreeMap::new();
    for pick in combinations(h1.len(), k1) {
        let i: Vec<HalfEdge> = pick.iter().map(|&p| h1[p]).collect();
        let j: Vec<HalfEdge> = (0..h1.len())
            .filter(|p| !pick.contains(p))
            .map(|p| h1[p])
            .collect();
        for &defects in &defect_splits {
            let key = split_vertex_with_defects(g, &i, &j, defects)?.key();
            classes
                .entry(key.clone())
                .or_insert_with(|| PartitionClass {
                    i: i.clone(),
                    j: j.clone(),
                    defects,
                    key,
                });
        }
    }
    Ok(classes.into_values().collect())
}

/// ψ: split vertex 0 along the partition.
pub fn psi(g: &MarkedGraph, part: &PartitionClass) -> Result<PsiImage, GraphError> {
    split_vertex_with_defects(g, &part.i, &part.j, part.defects)
}

/// ψ⁻¹: identify vertex 0 with the last vertex.
pub fn psi_inv(image: &PsiImage) -> Result<AElement, GraphError> {
    let whole = match image {
        SplitResult::Connected(g) => g.clone(),
        SplitResult::Disconnected(c) => assemble(c)?,
    };
    let m = whole.vertices.len();
    if m < 2 {
        return Err(GraphError::Malformed("need at least two vertices".into()));
    }
    let first = whole.vertices[0].clone();
    let last = whole.vertices[m - 1].clone();
    if first.half_edges.is_empty() || last.half_edges.is_empty() {
        return Err(GraphError::Malformed(
            "merged vertices must carry half-edges".into(),
        ));
    }
    let mut vertices: Vec<Vertex> = whole.vertices[..m - 1].to_vec();
    vertices[0] = Vertex {
        defect: first.defect + last.defect,
        half_edges: first
            .half_edges
            .iter()
            .chain(&last.half_edges)
            .copied()
            .collect(),
    };
    let graph = MarkedGraph {
        vertices,
        edges: whole.edges,
    };
    if !graph.is_connected() {
        return Err(GraphError::Malformed("merged graph is disconnected".into()));
    }
    let defects = (first.defect, last.defect);
    let key =
        split_vertex_with_defects(&graph, &first.half_edges, &last.half_edges, defects)?.key();
    Ok(AElement {
        graph,
        partition: PartitionClass {
            i: first.half_edges,
            j: last.half_edges,
            defects,
            key,
        },
    })
}

fn assemble(c: &CElement) -> Result<MarkedGraph, GraphError> {
    let m = c.first_labels.len() + c.second_labels.len();
    if c.first_labels.len() != c.first.vertex_count()
        || c.second_labels.len() != c.second.vertex_count()
    {
        return Err(GraphError::Malformed(
            "label count differs from vertex count".into(),
        ));
    }
    let all: BTreeSet<usize> = c
        .first_labels
        .iter()
        .chain(&c.second_labels)
        .copied()
        .collect();
    if all != (0..m).collect() {
        return Err(GraphError::Malformed(
            "labels do not partition the marks".into(),
        ));
    }
    if !c.first_labels.contains(&0) || !c.second_labels.contains(&(m - 1)) {
        return Err(GraphError::Malformed(
            "first mark must lie in L1 and last in L2".into(),
        ));
    }
    for w in [&c.first_labels, &c.second_labels] {
        if w.windows(2).any(|p| p[0] >= p[1]) {
            return Err(GraphError::Malformed("labels must increase".into()));
        }
    }
    if !c.first.is_connected() || !c.second.is_connected() {
        return Err(GraphError::Malformed("components must be connected".into()));
    }
    let offset = c
        .first
        .vertices
        .iter()
        .flat_map(|v| v.half_edges.iter().copied())
        .max()
        .map_or(0, |h| h + 1);
    let mut slots: Vec<Option<Vertex>> = vec![None; m];
    for (k, &l) in c.first_labels.iter().enumerate() {
        slots[l] = Some(c.first.vertices[k].clone());
    }
    for (k, &l) in c.second_labels.iter().enumerate() {
        let v = &c.second.vertices[k];
        slots[l] = Some(Vertex {
            defect: v.defect,
            half_edges: v.half_edges.iter().map(|h| h + offset).collect(),
        });
    }
    let edges = c
        .first
        .edges
        .iter()
        .copied()
        .chain(
            c.second
                .edges
                .iter()
                .map(|&(a, b)| (a + offset, b + offset)),
        )
        .collect();
    Ok(MarkedGraph {
        vertices: slots
            .into_iter()
            .map(|v| v.expect("labels cover all marks"))
            .collect(),
        edges,
    })
}
