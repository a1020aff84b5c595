use serde::{Deserialize, Serialize};

use super::{aut_order, canonical_form, GraphError, GraphShape, HalfEdge, MarkedGraph, Vertex};

/// An isomorphism class with a representative and cached invariants.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphClass {
    #[serde(with = "hex_bytes")]
    pub canonical: Vec<u8>,
    pub aut: u64,
    pub betti: u32,
    pub graph: MarkedGraph,
}

impl GraphClass {
    pub fn from_graph(graph: MarkedGraph) -> Result<Self, GraphError> {
        let betti = graph.betti()?;
        Ok(GraphClass {
            canonical: canonical_form(&graph),
            aut: aut_order(&graph),
            betti,
            graph,
        })
    }
}

mod hex_bytes {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(bytes: &[u8], s: S) -> Result<S::Ok, S::Error> {
        let text: String = bytes.iter().map(|b| format!("{b:02x}")).collect();
        s.serialize_str(&text)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<u8>, D::Error> {
        let text = String::deserialize(d)?;
        if text.len() % 2 != 0 {
            return Err(D::Error::custom("odd hex length"));
        }
        (0..text.len())
            .step_by(2)
            .map(|i| u8::from_str_radix(&text[i..i + 2], 16).map_err(D::Error::custom))
            .collect()
    }
}

fn shape_connected(shape: &GraphShape) -> bool {
    let m = shape.vertex_count();
    let mut seen = vec![false; m];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for (v, s) in seen.iter_mut().enumerate() {
            if !*s && u != v && shape.multiplicity(u, v) > 0 {
                *s = true;
                stack.push(v);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

fn finish(mut shapes: Vec<GraphShape>, stable_only: bool) -> Vec<GraphClass> {
    shapes.retain(shape_connected);
    let mut out: Vec<GraphClass> = shapes
        .into_iter()
        .map(|s| GraphClass::from_graph(s.to_graph()).expect("connected by construction"))
        .filter(|c| !stable_only || c.graph.is_stable())
        .collect();
    out.sort_by(|a, b| a.canonical.cmp(&b.canonical));
    out.dedup_by(|a, b| a.canonical == b.canonical);
    out
}

/// Connected classes whose vertex `i` has exactly `valencies[i]` half-edges
/// and defect `defects[i]`. Every split of the half-edges into self-loops,
/// edges and leaves is produced once.
pub fn enumerate_profile(
    valencies: &[usize],
    defects: &[u32],
    stable_only: bool,
) -> Vec<GraphClass> {
    let m = valencies.len();
    if m == 0 {
        return Vec::new();
    }
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (i..m).map(move |j| (i, j))).collect();
    let mut shapes = Vec::new();
    let mut mult = vec![0u32; pairs.len()];
    let mut cap: Vec<usize> = valencies.to_vec();
    fn rec(
        k: usize,
        pairs: &[(usize, usize)],
        mult: &mut [u32],
        cap: &mut [usize],
        defects: &[u32],
        out: &mut Vec<GraphShape>,
    ) {
        if k == pairs.len() {
            out.push(GraphShape {
                defects: defects.to_vec(),
                leaves: cap.iter().map(|&c| c as u32).collect(),
                mult: mult.to_vec(),
            });
            return;
        }
        let (i, j) = pairs[k];
        let max = if i == j {
            cap[i] / 2
        } else {
            cap[i].min(cap[j])
        };
        for t in 0..=max {
            if i == j {
                cap[i] -= 2 * t;
            } else {
                cap[i] -= t;
                cap[j] -= t;
            }
            mult[k] = t as u32;
            rec(k + 1, pairs, mult, cap, defects, out);
            if i == j {
                cap[i] += 2 * t;
            } else {
                cap[i] += t;
                cap[j] += t;
            }
        }
        mult[k] = 0;
    }
    rec(0, &pairs, &mut mult, &mut cap, defects, &mut shapes);
    finish(shapes, stable_only)
}

fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 {
            vec![Vec::new()]
        } else {
            Vec::new()
        };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// All connected marked graphs with betti number `g`, `n` leaves and `m`
/// vertices up to marked isomorphism, sorted by canonical form. A profile
/// fixes each vertex's (valency, defect).
pub fn enumerate_graphs(
    g: u32,
    n: u32,
    m: usize,
    profile: Option<&[(usize, u32)]>,
    stable_only: bool,
) -> Result<Vec<GraphClass>, GraphError> {
    if m == 0 {
        return Err(GraphError::NoVertices);
    }
    if let Some(p) = profile {
        if p.len() != m {
            return Err(GraphError::InfeasibleProfile(format!(
                "profile has {} entries for {m} vertices",
                p.len()
            )));
        }
        let total: usize = p.iter().map(|x| x.0).sum();
        if total < n as usize || !(total - n as usize).is_multiple_of(2) {
            return Err(GraphError::InfeasibleProfile(format!(
                "valency sum {total} and {n} leaves leave an unpairable remainder"
            )));
        }
        let vals: Vec<usize> = p.iter().map(|x| x.0).collect();
        let defs: Vec<u32> = p.iter().map(|x| x.1).collect();
        let mut out = enumerate_profile(&vals, &defs, stable_only);
        out.retain(|c| c.betti == g && c.graph.leaf_count() == n as usize);
        return Ok(out);
    }
    let slots = m * (m + 1) / 2;
    let mut shapes = Vec::new();
    for total_defect in 0..=g {
        // betti = D + e − m + 1
        let edges = g - total_defect + m as u32 - 1;
        let defect_splits = compositions(total_defect, m);
        let edge_splits = compositions(edges, slots);
        let leaf_splits = compositions(n, m);
        for d in &defect_splits {
            for e in &edge_splits {
                for l in &leaf_splits {
                    shapes.push(GraphShape {
                        defects: d.clone(),
                        leaves: l.clone(),
                        mult: e.clone(),
                    });
                }
            }
        }
    }
    Ok(finish(shapes, stable_only))
}

/// Every connected labeled graph on the given vertices: vertex `i` owns
/// half-edges numbered consecutively, and every partial perfect matching of
/// all half-edges is listed (no quotient by symmetry).
pub fn enumerate_labeled(valencies: &[usize], defects: &[u32]) -> Vec<MarkedGraph> {
    let mut next: HalfEdge = 0;
    let vertices: Vec<Vertex> = valencies
        .iter()
        .zip(defects)
        .map(|(&k, &d)| {
            let hs: Vec<HalfEdge> = (next..next + k as HalfEdge).collect();
            next += k as HalfEdge;
            Vertex {
                defect: d,
                half_edges: hs,
            }
        })
        .collect();
    let total = next as usize;
    let mut out = Vec::new();
    let mut used = vec![false; total];
    let mut edges = Vec::new();
    fn rec(
        start: usize,
        used: &mut [bool],
        edges: &mut Vec<(HalfEdge, HalfEdge)>,
        vertices: &[Vertex],
        out: &mut Vec<MarkedGraph>,
    ) {
        let Some(a) = (start..used.len()).find(|&h| !used[h]) else {
            let g = MarkedGraph {
                vertices: vertices.to_vec(),
                edges: edges.clone(),
            };
            if g.is_connected() {
                out.push(g);
            }
            return;
        };
        // a is a leaf
        used[a] = true;
        rec(a + 1, used, edges, vertices, out);
        for b in a + 1..used.len() {
            if !used[b] {
                used[b] = true;
                edges.push((a as HalfEdge, b as HalfEdge));
                rec(a + 1, used, edges, vertices, out);
                edges.pop();
                used[b] = false;
            }
        }
        used[a] = false;
    }
    rec(0, &mut used, &mut edges, &vertices, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_counts() {
        assert_eq!(enumerate_graphs(0, 2, 1, None, false).unwrap().len(), 1);
        assert_eq!(enumerate_graphs(1, 0, 1, None, false).unwrap().len(), 2);
        assert_eq!(enumerate_graphs(0, 0, 2, None, false).unwrap().len(), 1);
    }

    #[test]
    fn infeasible_profile() {
        assert!(matches!(
            enumerate_graphs(0, 0, 1, Some(&[(3, 0)]), false),
            Err(GraphError::InfeasibleProfile(_))
        ));
        assert!(enumerate_graphs(0, 0, 2, Some(&[(1, 0)]), false).is_err());
    }

    #[test]
    fn stable_filter() {
        // defect-1 bare vertex and the plain self-loop both have 2g − 2 + |h| = 0
        assert_eq!(enumerate_graphs(1, 0, 1, None, false).unwrap().len(), 2);
        assert_eq!(enumerate_graphs(1, 0, 1, None, true).unwrap().len(), 0);
        assert_eq!(enumerate_graphs(1, 1, 1, None, true).unwrap().len(), 2);
    }

    #[test]
    fn labeled_count_small() {
        // two half-edges on one vertex: leaf pair, or one self-loop
        assert_eq!(enumerate_labeled(&[2], &[0]).len(), 2);
        // two vertices with one half-edge each must be joined
        assert_eq!(enumerate_labeled(&[1, 1], &[0, 0]).len(), 1);
    }
}
