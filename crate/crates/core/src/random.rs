//! Seeded generators for small instances.

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bd::{BdError, FreeBVData};
use crate::graded::{int, GradedSpace, Grading, Letter, LetterSpec, Scalar};
use crate::linalg::nullspace;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small_nonzero(rng: &mut ChaCha8Rng) -> Scalar {
    let v: i64 = *[-2, -1, 1, 2, 3].choose(rng).expect("nonempty");
    int(v)
}

/// A space with letters `{prefix}0..` of degrees drawn from `lo..=hi`.
pub fn random_space(
    rng: &mut ChaCha8Rng,
    prefix: &str,
    count: usize,
    lo: i64,
    hi: i64,
) -> GradedSpace {
    let specs = (0..count)
        .map(|i| LetterSpec::new(format!("{prefix}{i}"), rng.gen_range(lo..=hi)))
        .collect();
    GradedSpace::new(specs).expect("distinct generated names")
}

/// Linear map `δ` sending disjoint source letters to target letters one
/// degree up; `δ² = 0` because targets are never sources.
pub fn random_square_zero(
    rng: &mut ChaCha8Rng,
    space: &GradedSpace,
    density: f64,
) -> Vec<(Letter, Letter, Scalar)> {
    let mut used = vec![false; space.len()];
    let mut out = Vec::new();
    let mut order: Vec<Letter> = space.letters().collect();
    order.shuffle(rng);
    for &u in &order {
        if used[u.0 as usize] || !rng.gen_bool(density) {
            continue;
        }
        let targets: Vec<Letter> = space
            .letters()
            .filter(|&v| !used[v.0 as usize] && v != u && space.degree(v) == space.degree(u) + 1)
            .collect();
        if let Some(&v) = targets.choose(rng) {
            used[u.0 as usize] = true;
            used[v.0 as usize] = true;
            out.push((u, v, small_nonzero(rng)));
        }
    }
    out
}

/// Basis of graded symmetric pairings `P(b, a) = (−1)^{|a||b|} P(a, b)`
/// supported in total degree `support` with
/// `P(δa, b) + (−1)^{|a|} P(a, δb) = 0`. Each basis vector lists one entry
/// per unordered pair.
pub fn chain_pairings(
    space: &GradedSpace,
    delta: &[(Letter, Letter, Scalar)],
    support: i64,
) -> Vec<Vec<(Letter, Letter, Scalar)>> {
    let mut vars: Vec<(Letter, Letter)> = Vec::new();
    for a in space.letters() {
        for b in space.letters() {
            if a <= b
                && space.degree(a) + space.degree(b) == support
                && !(a == b && space.is_odd(a))
            {
                vars.push((a, b));
            }
        }
    }
    let index: BTreeMap<(Letter, Letter), usize> =
        vars.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    // P(a, b) as (variable, sign)
    let entry = |a: Letter, b: Letter| -> Option<(usize, Scalar)> {
        if a <= b {
            index.get(&(a, b)).map(|&i| (i, int(1)))
        } else {
            let s = if space.is_odd(a) && space.is_odd(b) {
                -1
            } else {
                1
            };
            index.get(&(b, a)).map(|&i| (i, int(s)))
        }
    };
    let mut image: BTreeMap<Letter, Vec<(Letter, Scalar)>> = BTreeMap::new();
    for (u, v, c) in delta {
        image.entry(*u).or_default().push((*v, c.clone()));
    }
    let mut rows = Vec::new();
    for x in space.letters() {
        for y in space.letters() {
            if space.degree(x) + space.degree(y) + 1 != support {
                continue;
            }
            let mut row = vec![Scalar::zero(); vars.len()];
            for (t, c) in image.get(&x).into_iter().flatten() {
                if let Some((i, s)) = entry(*t, y) {
                    row[i] += c * s;
                }
            }
            let sx = int(if space.is_odd(x) { -1 } else { 1 });
            for (t, c) in image.get(&y).into_iter().flatten() {
                if let Some((i, s)) = entry(x, *t) {
                    row[i] += c * s * &sx;
                }
            }
            if row.iter().any(|v| !v.is_zero()) {
                rows.push(row);
            }
        }
    }
    nullspace(&rows, vars.len())
        .into_iter()
        .map(|v| {
            vars.iter()
                .zip(v)
                .filter(|(_, c)| !c.is_zero())
                .map(|(&(a, b), c)| (a, b, c))
                .collect()
        })
        .collect()
}

/// Random integer combination of a pairing basis.
pub fn random_combination(
    rng: &mut ChaCha8Rng,
    basis: &[Vec<(Letter, Letter, Scalar)>],
) -> Vec<(Letter, Letter, Scalar)> {
    let mut acc: BTreeMap<(Letter, Letter), Scalar> = BTreeMap::new();
    for vec in basis {
        let f = int(rng.gen_range(-2..=2));
        if f.is_zero() {
            continue;
        }
        for (a, b, c) in vec {
            *acc.entry((*a, *b)).or_insert_with(Scalar::zero) += c * &f;
        }
    }
    acc.into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((a, b), c)| (a, b, c))
        .collect()
}

/// Parameters for [`random_free_bv`].
#[derive(Clone, Copy, Debug)]
pub struct FreeBVShape {
    pub letters: usize,
    pub degree_lo: i64,
    pub degree_hi: i64,
    /// Probability that a letter becomes the source of a `δ` arrow.
    pub delta_density: f64,
}

impl Default for FreeBVShape {
    fn default() -> Self {
        FreeBVShape {
            letters: 4,
            degree_lo: -2,
            degree_hi: 1,
            delta_density: 0.5,
        }
    }
}

/// Random free closed-sector data with a chain-map pairing. Half of the
/// arrows of `δ` are assigned to `b₁`, the rest to `d₁`.
pub fn random_free_bv(
    seed: u64,
    grading: Grading,
    prefix: &str,
    shape: FreeBVShape,
) -> Result<FreeBVData, BdError> {
    let mut r = rng(seed);
    let space = random_space(
        &mut r,
        prefix,
        shape.letters,
        shape.degree_lo,
        shape.degree_hi,
    );
    let delta = random_square_zero(&mut r, &space, shape.delta_density);
    let basis = chain_pairings(&space, &delta, grading.pairing_support());
    let omega = random_combination(&mut r, &basis);
    let (mut d1, mut b1) = (Vec::new(), Vec::new());
    for e in delta {
        if r.gen_bool(0.5) {
            b1.push(e);
        } else {
            d1.push(e);
        }
    }
    FreeBVData::new(space, grading, &d1, &b1, &omega)
}
