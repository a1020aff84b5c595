use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::split::subsets;
use super::{
    enumerate_graphs, partitions_mod_equiv, psi, psi_inv, AElement, CElement, DefectMode,
    GraphError, PsiImage, SplitResult,
};
use crate::exec::Exec;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GtReport {
    pub g: u32,
    pub n: u32,
    pub k1: usize,
    pub k2: usize,
    pub m: usize,
    pub mode: DefectMode,
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub injective: bool,
    pub image_matches: bool,
    pub round_trip: bool,
    pub counterexample: Option<String>,
}

impl GtReport {
    pub fn holds(&self) -> bool {
        self.a == self.b + self.c && self.injective && self.image_matches && self.round_trip
    }
}

/// Elements of A: graphs with `m − 1` vertices whose first vertex has
/// valency `k1 + k2`, paired with a partition class.
pub fn a_set(
    g: u32,
    n: u32,
    k1: usize,
    k2: usize,
    m: usize,
    mode: DefectMode,
) -> Result<Vec<AElement>, GraphError> {
    let mut out = Vec::new();
    for class in enumerate_graphs(g, n, m - 1, None, false)? {
        if class.graph.valency(0) != k1 + k2 {
            continue;
        }
        for partition in partitions_mod_equiv(&class.graph, k1, k2, mode)? {
            out.push(AElement {
                graph: class.graph.clone(),
                partition,
            });
        }
    }
    Ok(out)
}

fn last_ok(valency: usize, defect: u32, k2: usize, mode: DefectMode) -> bool {
    valency == k2 && (mode == DefectMode::Redistribute || defect == 0)
}

/// Connected graphs on `m` vertices with betti `g − 1`, first valency `k1`
/// and last valency `k2`.
pub fn b_set(
    g: u32,
    n: u32,
    k1: usize,
    k2: usize,
    m: usize,
    mode: DefectMode,
) -> Result<Vec<PsiImage>, GraphError> {
    if g == 0 || m < 2 {
        return Ok(Vec::new());
    }
    Ok(enumerate_graphs(g - 1, n, m, None, false)?
        .into_iter()
        .filter(|c| {
            c.graph.valency(0) == k1
                && last_ok(c.graph.valency(m - 1), c.graph.defect(m - 1), k2, mode)
        })
        .map(|c| SplitResult::Connected(c.graph))
        .collect())
}

/// Pairs of graphs with label sets `L1 ∋ first`, `L2 ∋ last`, betti and
/// leaves adding up to `g` and `n`.
pub fn c_set(
    g: u32,
    n: u32,
    k1: usize,
    k2: usize,
    m: usize,
    mode: DefectMode,
) -> Result<Vec<PsiImage>, GraphError> {
    let mut out = Vec::new();
    if m < 2 {
        return Ok(out);
    }
    let middle: Vec<usize> = (1..m - 1).collect();
    let mut cache: BTreeMap<(u32, u32, usize), Vec<super::GraphClass>> = BTreeMap::new();
    let mut classes = |g: u32, n: u32, m: usize| -> Result<Vec<super::GraphClass>, GraphError> {
        if let Some(v) = cache.get(&(g, n, m)) {
            return Ok(v.clone());
        }
        let v = enumerate_graphs(g, n, m, None, false)?;
        cache.insert((g, n, m), v.clone());
        Ok(v)
    };
    for m1 in 1..m {
        let m2 = m - m1;
        for extra in subsets(&middle, m1 - 1) {
            let mut l1 = vec![0];
            l1.extend(&extra);
            let l2: Vec<usize> = (0..m).filter(|x| !l1.contains(x)).collect();
            for g1 in 0..=g {
                for n1 in 0..=n {
                    let firsts: Vec<_> = classes(g1, n1, m1)?
                        .into_iter()
                        .filter(|c| c.graph.valency(0) == k1)
                        .collect();
                    if firsts.is_empty() {
                        continue;
                    }
                    let seconds: Vec<_> = classes(g - g1, n - n1, m2)?
                        .into_iter()
                        .filter(|c| {
                            last_ok(c.graph.valency(m2 - 1), c.graph.defect(m2 - 1), k2, mode)
                        })
                        .collect();
                    for a in &firsts {
                        for b in &seconds {
                            out.push(SplitResult::Disconnected(CElement {
                                first: a.graph.clone(),
                                first_labels: l1.clone(),
                                second: b.graph.clone(),
                                second_labels: l2.clone(),
                            }));
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Enumerate A and B ∪ C for one parameter cell and compare them through ψ.
/// `m` is the vertex count on the B ∪ C side.
pub fn verify_gt_bijection(
    g: u32,
    n: u32,
    k1: usize,
    k2: usize,
    m: usize,
    mode: DefectMode,
) -> Result<GtReport, GraphError> {
    if m < 2 || k1 == 0 || k2 == 0 {
        return Err(GraphError::InfeasibleProfile(
            "need m ≥ 2 and k1, k2 ≥ 1".into(),
        ));
    }
    let a = a_set(g, n, k1, k2, m, mode)?;
    let b = b_set(g, n, k1, k2, m, mode)?;
    let c = c_set(g, n, k1, k2, m, mode)?;
    let mut report = GtReport {
        g,
        n,
        k1,
        k2,
        m,
        mode,
        a: a.len(),
        b: b.len(),
        c: c.len(),
        injective: true,
        image_matches: true,
        round_trip: true,
        counterexample: None,
    };
    let note = |r: &mut GtReport, msg: String| {
        if r.counterexample.is_none() {
            r.counterexample = Some(msg);
        }
    };

    let mut image: BTreeMap<Vec<u8>, usize> = BTreeMap::new();
    for (idx, el) in a.iter().enumerate() {
        let img = psi(&el.graph, &el.partition)?;
        if let Some(prev) = image.insert(img.key(), idx) {
            report.injective = false;
            note(
                &mut report,
                format!("A elements {prev} and {idx} share an image"),
            );
        }
        match psi_inv(&img) {
            Ok(back) if back.key() == el.key() => {}
            _ => {
                report.round_trip = false;
                note(
                    &mut report,
                    format!("psi_inv(psi(A[{idx}])) differs from A[{idx}]"),
                );
            }
        }
    }
    let mut target: BTreeMap<Vec<u8>, usize> = BTreeMap::new();
    for (idx, el) in b.iter().chain(&c).enumerate() {
        if target.insert(el.key(), idx).is_some() {
            report.image_matches = false;
            note(&mut report, format!("B ∪ C element {idx} listed twice"));
        }
        match psi_inv(el).and_then(|back| psi(&back.graph, &back.partition)) {
            Ok(again) if again.key() == el.key() => {}
            _ => {
                report.round_trip = false;
                note(&mut report, format!("psi(psi_inv(BC[{idx}])) differs"));
            }
        }
    }
    if image.keys().ne(target.keys()) {
        report.image_matches = false;
        let missing = target.keys().find(|k| !image.contains_key(*k));
        let extra = image.keys().find(|k| !target.contains_key(*k));
        note(
            &mut report,
            format!("image mismatch: missing {missing:?}, extra {extra:?}"),
        );
    }
    Ok(report)
}

/// Parameter window for an exhaustive sweep of bijection cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GtLimits {
    pub g_max: u32,
    pub n_max: u32,
    pub m_max: usize,
    pub k_max: usize,
    /// Skip cells whose A-side graphs could exceed this many half-edges.
    pub half_edge_max: usize,
}

impl GtLimits {
    pub fn cells(&self) -> Vec<(u32, u32, usize, usize, usize)> {
        let mut out = Vec::new();
        for g in 0..=self.g_max {
            for n in 0..=self.n_max {
                for m in 2..=self.m_max {
                    // A graphs have m − 1 vertices, hence at most g + m − 2 edges
                    let half_edges = 2 * (g as usize + m - 2) + n as usize;
                    if half_edges > self.half_edge_max {
                        continue;
                    }
                    for k1 in 1..=self.k_max {
                        for k2 in 1..=self.k_max {
                            out.push((g, n, k1, k2, m));
                        }
                    }
                }
            }
        }
        out
    }
}

pub fn sweep_gt(
    limits: GtLimits,
    mode: DefectMode,
    exec: Exec,
) -> Result<Vec<GtReport>, GraphError> {
    exec.map(&limits.cells(), |&(g, n, k1, k2, m)| {
        verify_gt_bijection(g, n, k1, k2, m, mode)
    })
    .into_iter()
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_cell() {
        let r = verify_gt_bijection(0, 2, 1, 1, 2, DefectMode::KeepOnFirst).unwrap();
        assert_eq!((r.a, r.b, r.c), (1, 0, 1));
        assert!(r.holds());
    }

    #[test]
    fn infeasible_cell_is_empty() {
        let r = verify_gt_bijection(0, 1, 3, 3, 2, DefectMode::KeepOnFirst).unwrap();
        assert_eq!((r.a, r.b + r.c), (0, 0));
        assert!(r.holds());
    }
}
