use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use num_traits::One;

use super::{split_union, taylor_k, ContractionKernel, EvalOptions, FormalityError};
use crate::bd::{free_closed_sector, BDPresentation, FreeBVData, TruncationWindow};
use crate::graded::{
    int, sym_canonicalize, Element, GradedSpace, Grading, Letter, Monomial, Scalar,
};
use crate::random::{
    chain_pairings, random_combination, random_free_bv, random_space, random_square_zero, rng,
    FreeBVShape,
};
use crate::samples::sl2_sector;

/// Sparse random kernel: each admissible pair is switched on with
/// probability `density`.
pub fn random_kernel(
    r: &mut ChaCha8Rng,
    space: &GradedSpace,
    grading: Grading,
    density: f64,
) -> ContractionKernel {
    let support = grading.kernel_support();
    let mut entries = Vec::new();
    for a in space.letters() {
        for b in space.letters() {
            if a > b || space.degree(a) + space.degree(b) != support || (a == b && space.is_odd(a))
            {
                continue;
            }
            if r.gen_bool(density) {
                let v = *[-2i64, -1, 1, 2, 3].choose(r).expect("nonempty");
                entries.push((a, b, int(v)));
            }
        }
    }
    ContractionKernel::new(space.clone(), grading, &entries)
        .expect("entries respect symmetry and support")
}

fn random_monomial(
    r: &mut ChaCha8Rng,
    space: &GradedSpace,
    len: usize,
    gamma: u32,
) -> Option<Monomial> {
    let letters: Vec<Letter> = (0..len)
        .map(|_| Letter(r.gen_range(0..space.len()) as u16))
        .collect();
    sym_canonicalize(&letters, space).map(|(w, _)| Monomial::new(w, gamma))
}

#[derive(Clone, Debug)]
pub struct BvinfInstance {
    pub kernel: ContractionKernel,
    pub inputs: Vec<Monomial>,
    pub i: usize,
    pub j: usize,
}

/// At most four letters of mixed parity, `m ≤ 3` inputs of at most three
/// letters each, and a sparse kernel that is nonzero.
pub fn random_bvinf_instance(seed: u64) -> BvinfInstance {
    let mut r = rng(seed);
    let grading = Grading::new(3);
    loop {
        let count = r.gen_range(2..=4);
        let space = random_space(&mut r, "x", count, -2, 2);
        let kernel = random_kernel(&mut r, &space, grading, 0.7);
        if kernel.is_zero() {
            continue;
        }
        let m = r.gen_range(2..=3);
        let inputs: Option<Vec<Monomial>> = (0..m)
            .map(|_| {
                let len = r.gen_range(1..=3);
                let gamma = r.gen_range(0..=1);
                random_monomial(&mut r, &space, len, gamma)
            })
            .collect();
        let Some(inputs) = inputs else { continue };
        let i = r.gen_range(0..m);
        let j = (i + r.gen_range(1..m)) % m;
        return BvinfInstance {
            kernel,
            inputs,
            i,
            j,
        };
    }
}

/// A small BD algebra with at most `max_letters` generators: either a free
/// closed sector with a random chain pairing or the sl₂ sector.
pub fn random_open_sector(
    seed: u64,
    grading: Grading,
    max_letters: usize,
    window: TruncationWindow,
) -> Result<BDPresentation, FormalityError> {
    let mut r = rng(seed);
    if max_letters >= 3 && r.gen_bool(0.25) {
        return Ok(sl2_sector(grading, ["wE", "wF", "wH"], window)?);
    }
    let shape = FreeBVShape {
        letters: r.gen_range(2..=max_letters.max(2)),
        ..FreeBVShape::default()
    };
    let data = random_free_bv(r.gen(), grading, "w", shape)?;
    Ok(free_closed_sector(&data, window)?)
}

#[derive(Clone, Debug)]
pub struct KeyLemmaInstance {
    pub kernel: ContractionKernel,
    pub open: BDPresentation,
    pub inputs: Vec<Monomial>,
}

/// Closed space of up to four letters with a random kernel, an open BD
/// algebra of at most six letters with a nonzero bracket, and two or three
/// inputs that each contain an open letter.
pub fn random_key_lemma_instance(
    seed: u64,
    window: TruncationWindow,
) -> Result<KeyLemmaInstance, FormalityError> {
    let mut r = rng(seed);
    let grading = Grading::new(3);
    let open = loop {
        let open = random_open_sector(r.gen(), grading, 6, window)?;
        if !open.bracket_entries().is_empty() {
            break open;
        }
    };
    loop {
        let count = r.gen_range(2..=4);
        let closed = random_space(&mut r, "h", count, -2, 2);
        let kernel = random_kernel(&mut r, &closed, grading, 0.7);
        if kernel.is_zero() {
            continue;
        }
        let union = closed.disjoint_union(open.space())?;
        let emb_h = closed.embedding_into(&union)?;
        let emb_w = open.space().embedding_into(&union)?;
        let origin: Vec<Result<Letter, Letter>> = {
            let mut o = vec![Ok(Letter(0)); union.len()];
            for (i, &u) in emb_h.iter().enumerate() {
                o[u.0 as usize] = Ok(Letter(i as u16));
            }
            for (i, &u) in emb_w.iter().enumerate() {
                o[u.0 as usize] = Err(Letter(i as u16));
            }
            o
        };
        // prefer inputs on which both the graph sum and some open bracket are nonzero
        let mut best = None;
        for _ in 0..32 {
            let m = r.gen_range(2..=3);
            let mut inputs = Vec::with_capacity(m);
            while inputs.len() < m {
                let (nh, nw) = (r.gen_range(0..=2), r.gen_range(1..=2));
                let mut letters: Vec<Letter> = (0..nh)
                    .map(|_| emb_h[r.gen_range(0..closed.len())])
                    .collect();
                letters.extend((0..nw).map(|_| emb_w[r.gen_range(0..open.space().len())]));
                if let Some((w, _)) = sym_canonicalize(&letters, &union) {
                    inputs.push(Monomial::new(w, r.gen_range(0..=1)));
                }
            }
            let parts: Vec<(Monomial, Monomial)> = inputs
                .iter()
                .map(|x| {
                    let (_, h, y) = split_union(x, &origin, &union);
                    (h, y)
                })
                .collect();
            let hs: Vec<Monomial> = parts.iter().map(|p| p.0.clone()).collect();
            let linked = !taylor_k(&hs, &kernel, EvalOptions::unguarded()).is_zero();
            let bracketed = parts.iter().enumerate().any(|(i, (_, a))| {
                parts[i + 1..].iter().any(|(_, b)| {
                    let one = |m: &Monomial| Element::monomial(m.clone(), Scalar::one());
                    !open.bracket(&one(a), &one(b)).is_zero()
                })
            });
            if linked && bracketed {
                best = Some(inputs);
                break;
            }
            best.get_or_insert(inputs);
        }
        let inputs = best.expect("at least one draw");
        return Ok(KeyLemmaInstance {
            kernel,
            open,
            inputs,
        });
    }
}

#[derive(Clone, Debug)]
pub struct KilInstance {
    pub closed: BDPresentation,
    pub kernel: ContractionKernel,
}

/// Closed sector with zero bracket and nonzero differential, with a nonzero
/// kernel that is a chain map for that differential. The chain condition
/// is required to cut down the space of admissible kernels.
pub fn kil_instance(seed: u64, window: TruncationWindow) -> Result<KilInstance, FormalityError> {
    let mut r = rng(seed);
    let grading = Grading::new(3);
    loop {
        let count = r.gen_range(3..=4);
        let space = random_space(&mut r, "h", count, -1, 1);
        let delta = random_square_zero(&mut r, &space, 0.8);
        if delta.is_empty() {
            continue;
        }
        let basis = chain_pairings(&space, &delta, grading.kernel_support());
        let free = ContractionKernel::zero(space.clone(), grading)
            .admissible_pairs()
            .len();
        if basis.len() >= free {
            // the chain condition would not constrain the kernel
            continue;
        }
        let entries = random_combination(&mut r, &basis);
        if entries.is_empty() {
            continue;
        }
        let data = FreeBVData::new(space.clone(), grading, &delta, &[], &[])?;
        let closed = free_closed_sector(&data, window)?;
        let kernel = ContractionKernel::new(space, grading, &entries)?;
        return Ok(KilInstance { closed, kernel });
    }
}
