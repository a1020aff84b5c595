use num_traits::One;
use ocformal::bd::*;
use ocformal::exec::Exec;
use ocformal::formality::*;
use ocformal::graded::*;
use ocformal::graphs::{enumerate_labeled, HalfEdge, MarkedGraph, Vertex};
use ocformal::linfty::MorphismWindow;
use ocformal::random::{random_free_bv, rng, FreeBVShape};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn d3() -> Grading {
    Grading::new(3)
}

fn window() -> TruncationWindow {
    TruncationWindow::new(6, 2).unwrap()
}

fn mono(space: &GradedSpace, names: &[&str], gamma: u32) -> Monomial {
    let ls: Vec<Letter> = names.iter().map(|n| space.letter(n).unwrap()).collect();
    let (w, _) = sym_canonicalize(&ls, space).unwrap();
    Monomial::new(w, gamma)
}

fn el(space: &GradedSpace, names: &[&str], gamma: u32, c: i64) -> Element {
    let ls: Vec<Letter> = names.iter().map(|n| space.letter(n).unwrap()).collect();
    Element::from_letters(&ls, gamma, int(c), space)
}

fn graph(vals: &[usize], defects: &[u32], edges: &[(HalfEdge, HalfEdge)]) -> MarkedGraph {
    let mut next = 0;
    let vertices = vals
        .iter()
        .zip(defects)
        .map(|(&n, &g)| {
            let hs = (next..next + n as u32).collect();
            next += n as u32;
            Vertex {
                defect: g,
                half_edges: hs,
            }
        })
        .collect();
    MarkedGraph::new(vertices, edges.to_vec()).unwrap()
}

/// Literal evaluation: every signed ordering of every vertex word, letters
/// placed on half-edges in vertex order, edges contracted one at a time by
/// moving both letters to the front.
fn eval_oracle(g: &MarkedGraph, inputs: &[Monomial], h: &ContractionKernel) -> Element {
    let space = h.space();
    let orderings: Vec<Vec<TensorWord>> = inputs
        .iter()
        .map(|x| desymmetrize(&x.word, space))
        .collect();
    let half_order: Vec<HalfEdge> = g
        .vertices()
        .iter()
        .flat_map(|v| v.half_edges.clone())
        .collect();
    let betti = g.betti().unwrap();
    let mut out = Element::zero();
    let mut pick = vec![0usize; inputs.len()];
    loop {
        let mut letters: Vec<(HalfEdge, Letter)> = Vec::new();
        let mut coeff = Scalar::one();
        for (v, &k) in pick.iter().enumerate() {
            coeff *= &orderings[v][k].coeff;
            letters.extend(orderings[v][k].letters.iter().map(|&l| (0, l)));
        }
        for (slot, he) in letters.iter_mut().zip(&half_order) {
            slot.0 = *he;
        }
        for &(a, b) in g.edges() {
            for target in [a, b] {
                let pos = letters.iter().position(|s| s.0 == target).unwrap();
                let passed = letters[..pos].iter().filter(|s| space.is_odd(s.1)).count();
                if space.is_odd(letters[pos].1) && passed % 2 == 1 {
                    coeff = -coeff;
                }
                let item = letters.remove(pos);
                letters.insert(0, item);
            }
            let (lb, la) = (letters.remove(0), letters.remove(0));
            coeff *= h.value(lb.1, la.1);
        }
        let rest: Vec<Letter> = letters.iter().map(|s| s.1).collect();
        out.add_assign(&Element::from_letters(&rest, betti, coeff, space));
        // next combination
        let mut v = 0;
        while v < pick.len() {
            pick[v] += 1;
            if pick[v] < orderings[v].len() {
                break;
            }
            pick[v] = 0;
            v += 1;
        }
        if v == pick.len() {
            return out;
        }
    }
}

fn example_space() -> (GradedSpace, ContractionKernel) {
    let s = GradedSpace::from_pairs(&[("a", 0), ("b", 0), ("p", 1), ("q", -1)]).unwrap();
    let l = |n: &str| s.letter(n).unwrap();
    let h = ContractionKernel::new(
        s.clone(),
        d3(),
        &[
            (l("a"), l("b"), int(1)),
            (l("a"), l("a"), int(2)),
            (l("p"), l("q"), int(3)),
        ],
    )
    .unwrap();
    (s, h)
}

#[test]
fn kernel_validation() {
    let (s, h) = example_space();
    let l = |n: &str| s.letter(n).unwrap();
    assert_eq!(h.value(l("q"), l("p")), int(-3));
    assert_eq!(h.value(l("b"), l("a")), int(1));
    assert!(matches!(
        ContractionKernel::new(s.clone(), d3(), &[(l("a"), l("p"), int(1))]),
        Err(FormalityError::KernelSupport(..))
    ));
    assert!(matches!(
        ContractionKernel::new(
            s.clone(),
            d3(),
            &[(l("p"), l("q"), int(1)), (l("q"), l("p"), int(1))]
        ),
        Err(FormalityError::KernelNotSymmetric(..))
    ));
    let back = ContractionKernel::from_entries(s.clone(), d3(), &h.to_entries()).unwrap();
    assert_eq!(back, h);
}

#[test]
fn eval_examples() {
    let (s, h) = example_space();
    let opts = EvalOptions::default();
    // single vertex, single leaf: the input itself
    let x = mono(&s, &["p"], 2);
    let d = DecoratedGraph::new(graph(&[1], &[2], &[]), vec![x.clone()]).unwrap();
    assert_eq!(
        eval_graph(&d, &h, opts),
        Element::monomial(x, Scalar::one())
    );
    // with three leaves every ordering of the word contributes once
    let x = mono(&s, &["a", "p", "q"], 1);
    let d = DecoratedGraph::new(graph(&[3], &[1], &[]), vec![x.clone()]).unwrap();
    assert_eq!(eval_graph(&d, &h, opts), Element::monomial(x, int(6)));
    // two letters joined by an edge
    let d = DecoratedGraph::new(
        graph(&[1, 1], &[0, 0], &[(0, 1)]),
        vec![mono(&s, &["p"], 0), mono(&s, &["q"], 0)],
    )
    .unwrap();
    assert_eq!(eval_graph(&d, &h, opts), Element::scalar(int(3)));
    // self-loop on an even word of two letters
    let d =
        DecoratedGraph::new(graph(&[2], &[0], &[(0, 1)]), vec![mono(&s, &["a", "b"], 0)]).unwrap();
    assert_eq!(eval_graph(&d, &h, opts), el(&s, &[], 1, 2));
    // self-loop with a spectator leaf
    let d = DecoratedGraph::new(
        graph(&[3], &[0], &[(0, 1)]),
        vec![mono(&s, &["a", "b", "p"], 0)],
    )
    .unwrap();
    // pairs (a,b) twice and (a,a) never, leaving p
    assert_eq!(eval_graph(&d, &h, opts), el(&s, &["p"], 1, 2));
}

#[test]
fn eval_rejects_mismatched_decorations() {
    let (s, _) = example_space();
    let g = graph(&[2], &[1], &[]);
    assert!(matches!(
        DecoratedGraph::new(g.clone(), vec![mono(&s, &["a"], 1)]),
        Err(FormalityError::ValencyMismatch { .. })
    ));
    assert!(matches!(
        DecoratedGraph::new(g.clone(), vec![mono(&s, &["a", "b"], 0)]),
        Err(FormalityError::DefectMismatch { .. })
    ));
    assert!(matches!(
        DecoratedGraph::new(g, vec![]),
        Err(FormalityError::ArityMismatch { .. })
    ));
}

fn random_inputs(
    r: &mut rand_chacha::ChaCha8Rng,
    space: &GradedSpace,
    vals: &[usize],
    defects: &[u32],
) -> Option<Vec<Monomial>> {
    vals.iter()
        .zip(defects)
        .map(|(&n, &g)| {
            let ls: Vec<Letter> = (0..n)
                .map(|_| Letter(r.gen_range(0..space.len()) as u16))
                .collect();
            sym_canonicalize(&ls, space).map(|(w, _)| Monomial::new(w, g))
        })
        .collect()
}

#[test]
fn eval_matches_literal_desymmetrization() {
    let mut r = rng(11);
    let mut nonzero = 0;
    for _ in 0..150 {
        let count = r.gen_range(2..=4);
        let space = ocformal::random::random_space(&mut r, "x", count, -2, 2);
        let h = random_kernel(&mut r, &space, d3(), 0.8);
        let m = r.gen_range(1..=3);
        let vals: Vec<usize> = (0..m).map(|_| r.gen_range(1..=3)).collect();
        let defects: Vec<u32> = (0..m).map(|_| r.gen_range(0..=1)).collect();
        let Some(inputs) = random_inputs(&mut r, &space, &vals, &defects) else {
            continue;
        };
        let labeled = enumerate_labeled(&vals, &defects);
        for g in labeled.choose_multiple(&mut r, 4) {
            let d = DecoratedGraph::new(g.clone(), inputs.clone()).unwrap();
            let fast = eval_graph(&d, &h, EvalOptions::default());
            assert_eq!(fast, eval_oracle(g, &inputs, &h));
            nonzero += usize::from(!fast.is_zero());
        }
    }
    assert!(nonzero > 50, "only {nonzero} nonzero evaluations");
}

#[test]
fn eval_ignores_edge_order_and_orientation() {
    let mut r = rng(5);
    for _ in 0..100 {
        let count = r.gen_range(2..=4);
        let space = ocformal::random::random_space(&mut r, "x", count, -2, 2);
        let h = random_kernel(&mut r, &space, d3(), 0.8);
        let vals: Vec<usize> = (0..r.gen_range(1..=3))
            .map(|_| r.gen_range(1..=3))
            .collect();
        let defects = vec![0; vals.len()];
        let Some(inputs) = random_inputs(&mut r, &space, &vals, &defects) else {
            continue;
        };
        for g in enumerate_labeled(&vals, &defects).choose_multiple(&mut r, 3) {
            let base = eval_graph(
                &DecoratedGraph::new(g.clone(), inputs.clone()).unwrap(),
                &h,
                EvalOptions::default(),
            );
            let mut edges = g.edges().to_vec();
            edges.shuffle(&mut r);
            for e in edges.iter_mut() {
                if r.gen_bool(0.5) {
                    *e = (e.1, e.0);
                }
            }
            let moved = MarkedGraph::new(g.vertices().to_vec(), edges).unwrap();
            let d = DecoratedGraph::new(moved, inputs.clone()).unwrap();
            assert_eq!(eval_graph(&d, &h, EvalOptions::default()), base);
        }
    }
}

#[test]
fn guards_count_calls_without_failures() {
    let (s, h) = example_space();
    let before = guard_stats();
    taylor_k(
        &[mono(&s, &["a", "b"], 0), mono(&s, &["a"], 1)],
        &h,
        EvalOptions::default(),
    );
    let after = guard_stats();
    assert!(after.calls > before.calls);
    assert_eq!(after.failures, 0);
    let calls = guard_stats().calls;
    taylor_k(&[mono(&s, &["a", "b"], 0)], &h, EvalOptions::unguarded());
    // other tests may run concurrently, so only the failure count is exact
    assert!(guard_stats().calls >= calls);
    assert_eq!(guard_stats().failures, 0);
}

#[test]
fn taylor_examples() {
    let (s, h) = example_space();
    let zero = ContractionKernel::zero(s.clone(), d3());
    let opts = EvalOptions::default();
    let x = mono(&s, &["a", "p"], 1);
    assert_eq!(
        taylor_k(std::slice::from_ref(&x), &zero, opts),
        Element::monomial(x.clone(), Scalar::one())
    );
    assert!(taylor_k(&[x.clone(), mono(&s, &["b"], 0)], &zero, opts).is_zero());
    assert_eq!(
        taylor_k(&[mono(&s, &["p"], 0), mono(&s, &["q"], 0)], &h, opts),
        Element::scalar(int(3))
    );
    // K_1(ab) = ab + H(a,b)γ from the leaf pair and the self-loop
    assert_eq!(
        taylor_k(&[mono(&s, &["a", "b"], 0)], &h, opts),
        el(&s, &["a", "b"], 0, 1).plus(&el(&s, &[], 1, 1))
    );
    // K_1(aa) = aa + H(a,a)γ: the self-loop sees two assignments, |Aut| = 2
    assert_eq!(
        taylor_k(&[mono(&s, &["a", "a"], 0)], &h, opts),
        el(&s, &["a", "a"], 0, 1).plus(&el(&s, &[], 1, 2))
    );
}

#[test]
fn taylor_is_graded_symmetric_and_gamma_linear() {
    let mut r = rng(17);
    for _ in 0..60 {
        let count = r.gen_range(2..=4);
        let space = ocformal::random::random_space(&mut r, "x", count, -2, 2);
        let h = random_kernel(&mut r, &space, d3(), 0.8);
        let m = r.gen_range(2..=3);
        let vals: Vec<usize> = (0..m).map(|_| r.gen_range(1..=2)).collect();
        let defects: Vec<u32> = (0..m).map(|_| r.gen_range(0..=1)).collect();
        let Some(xs) = random_inputs(&mut r, &space, &vals, &defects) else {
            continue;
        };
        let opts = EvalOptions::default();
        let base = taylor_k(&xs, &h, opts);
        let mut swapped = xs.clone();
        swapped.swap(0, 1);
        let s = if xs[0].is_odd(&space) && xs[1].is_odd(&space) {
            -1
        } else {
            1
        };
        assert_eq!(taylor_k(&swapped, &h, opts), base.scaled(&int(s)));
        let mut raised = xs.clone();
        raised[m - 1].gamma += 1;
        assert_eq!(taylor_k(&raised, &h, opts), base.times_gamma(1));
    }
}

#[test]
fn class_sum_matches_labeled_sum() {
    let mut r = rng(23);
    let mut checked = 0;
    while checked < 80 {
        let count = r.gen_range(2..=4);
        let space = ocformal::random::random_space(&mut r, "x", count, -2, 2);
        let h = random_kernel(&mut r, &space, d3(), 0.8);
        let m = r.gen_range(1..=3);
        let vals: Vec<usize> = (0..m).map(|_| r.gen_range(0..=3)).collect();
        if vals.iter().sum::<usize>() > 6 {
            continue;
        }
        let defects: Vec<u32> = (0..m).map(|_| r.gen_range(0..=1)).collect();
        let Some(xs) = random_inputs(&mut r, &space, &vals, &defects) else {
            continue;
        };
        let opts = EvalOptions::default();
        assert_eq!(
            taylor_k(&xs, &h, opts),
            labeled_sum(&xs, &h, opts),
            "profile {vals:?}"
        );
        checked += 1;
    }
}

#[test]
fn oc_sign_example() {
    let hs = GradedSpace::from_pairs(&[("x1", 1), ("x2", -1)]).unwrap();
    let ws = GradedSpace::from_pairs(&[("y1", 1), ("y2", 0)]).unwrap();
    let l = |n: &str| hs.letter(n).unwrap();
    let h = ContractionKernel::new(hs.clone(), d3(), &[(l("x1"), l("x2"), int(1))]).unwrap();
    let f = OcMorphism::new(h, &ws).unwrap();
    let out = f.on_split(&[
        (mono(&hs, &["x1"], 0), mono(&ws, &["y1"], 0)),
        (mono(&hs, &["x2"], 0), mono(&ws, &["y2"], 0)),
    ]);
    // moving x2 past y1 costs a sign; K_2(x1, x2) = H(x1, x2) = 1
    assert_eq!(out, el(f.union(), &["y1", "y2"], 0, -1));
    // through the union: x1·y1 and x2·y2 are already split in place
    let u = f.union();
    let x1y1 = mono(u, &["x1", "y1"], 0);
    let (s, _, _) = f.split(&x1y1);
    use ocformal::linfty::TaylorMorphism;
    let via = f.coefficient(&[x1y1, mono(u, &["x2", "y2"], 0)]);
    assert_eq!(via, out.scaled(&int(s.into())));
}

#[test]
fn bvinf_examples() {
    let (s, h) = example_space();
    let opts = EvalOptions::default();
    let zero = ContractionKernel::zero(s.clone(), d3());
    let xs = [
        mono(&s, &["a"], 0),
        mono(&s, &["p"], 0),
        mono(&s, &["b", "q"], 1),
    ];
    for (i, j) in [(0, 1), (2, 0), (1, 2)] {
        assert!(verify_bvinf(&zero, &xs, i, j, opts).unwrap().passed());
    }
    // m = 2: self-loop on the left, connecting edge on the right
    let rep = verify_bvinf(&h, &[mono(&s, &["a"], 0), mono(&s, &["b"], 0)], 0, 1, opts).unwrap();
    assert!(rep.passed());
    assert_eq!(rep.lhs, el(&s, &["a", "b"], 0, 1).plus(&el(&s, &[], 1, 1)));
    assert_eq!(
        verify_bvinf(&h, &xs, 1, 1, opts).unwrap_err(),
        FormalityError::BadIndices
    );
    assert_eq!(
        verify_bvinf(&h, &xs, 0, 3, opts).unwrap_err(),
        FormalityError::BadIndices
    );
}

#[test]
fn bvinf_random_instances() {
    let mut nonzero = 0;
    for seed in 0..120 {
        let inst = random_bvinf_instance(seed);
        let rep = verify_bvinf(
            &inst.kernel,
            &inst.inputs,
            inst.i,
            inst.j,
            EvalOptions::default(),
        )
        .unwrap();
        assert!(
            rep.passed(),
            "seed {seed}: {}",
            rep.difference().display(inst.kernel.space())
        );
        nonzero += usize::from(!rep.lhs.is_zero());
    }
    assert!(nonzero > 40);
}

#[test]
fn bvinf_detects_a_wrong_weight() {
    // doubling only the connected part of K_2 breaks the relation
    let (s, h) = example_space();
    let opts = EvalOptions::default();
    let (x, y) = (mono(&s, &["a"], 0), mono(&s, &["b"], 0));
    let rep = verify_bvinf(&h, &[x.clone(), y.clone()], 0, 1, opts).unwrap();
    let wrong = rep.rhs.plus(&taylor_k(&[x, y], &h, opts).times_gamma(1));
    assert_ne!(rep.lhs, wrong);
}

fn open_sector(seed: u64) -> BDPresentation {
    random_open_sector(seed, d3(), 6, window()).unwrap()
}

#[test]
fn lemma_easy_on_random_sectors() {
    let mut r = rng(31);
    let mut nonzero = 0;
    for seed in 0..200 {
        let w = open_sector(seed);
        if w.bracket_entries().is_empty() {
            continue;
        }
        let space = w.space().clone();
        let m = r.gen_range(2..=4);
        let vals: Vec<usize> = (0..m).map(|_| r.gen_range(1..=2)).collect();
        let Some(ys) = random_inputs(&mut r, &space, &vals, &vec![0; m]) else {
            continue;
        };
        let l1: Vec<usize> = (0..m).filter(|_| r.gen_bool(0.5)).collect();
        if l1.is_empty() || l1.len() == m {
            continue;
        }
        let rep = verify_lemma_easy(&w, &ys, &l1);
        assert!(
            rep.passed(),
            "seed {seed}: {}",
            rep.difference().display(&space)
        );
        nonzero += usize::from(!rep.lhs.is_zero());
    }
    assert!(nonzero > 5);
}

#[test]
fn key_lemma_zero_bracket_gives_zero() {
    let data = random_free_bv(
        3,
        d3(),
        "w",
        FreeBVShape {
            letters: 4,
            ..FreeBVShape::default()
        },
    )
    .unwrap();
    let w = free_closed_sector(&data, window()).unwrap().trivialized();
    let (_, h) = example_space();
    let f = OcMorphism::new(h, w.space()).unwrap();
    let u = f.union().clone();
    let names: Vec<String> = w.space().specs().iter().map(|s| s.name.clone()).collect();
    let xs = vec![
        mono(&u, &["a", names[0].as_str()], 0),
        mono(&u, &["b", names[1].as_str()], 0),
    ];
    let rep = verify_key_lemma(&f, &w, &xs).unwrap();
    assert!(rep.lhs.is_zero() && rep.rhs.is_zero());
}

#[test]
fn key_lemma_random_instances() {
    let mut nonzero = 0;
    for seed in 0..60 {
        let inst = random_key_lemma_instance(seed, window()).unwrap();
        let f = OcMorphism::new(inst.kernel.clone(), inst.open.space()).unwrap();
        let rep = verify_key_lemma(&f, &inst.open, &inst.inputs).unwrap();
        assert!(
            rep.passed(),
            "seed {seed}: {}",
            rep.difference().display(f.union())
        );
        nonzero += usize::from(!rep.lhs.is_zero());
    }
    assert!(nonzero > 20, "only {nonzero} nontrivial instances");
}

fn small_morphism_window() -> MorphismWindow {
    MorphismWindow {
        max_arity: 3,
        max_letters: 3,
        max_gamma: 1,
        include_unit: false,
    }
}

#[test]
fn commutation_needs_certificates() {
    let k = kil_instance(1, window()).unwrap();
    let w = open_sector(2);
    let mw = small_morphism_window();
    let err =
        verify_commutation(&k.closed, &k.kernel, &w, None, None, mw, Exec::Parallel).unwrap_err();
    assert!(matches!(err, FormalityError::Certificate(_)));
    let kil = certify_kil(&k.closed, &k.kernel, mw, Exec::Parallel).unwrap();
    let bdr = certify_bdr(&w, TruncationWindow::new(3, 1).unwrap(), Exec::Parallel);
    assert!(kil.passed() && bdr.passed());
    let other = kil_instance(2, window()).unwrap();
    assert!(verify_commutation(
        &other.closed,
        &other.kernel,
        &w,
        Some(&kil),
        Some(&bdr),
        mw,
        Exec::Parallel
    )
    .is_err());
    let rep = verify_commutation(
        &k.closed,
        &k.kernel,
        &w,
        Some(&kil),
        Some(&bdr),
        mw,
        Exec::Parallel,
    )
    .unwrap();
    assert!(rep.passed());
    assert_eq!(rep.first_failure(), None);
}

#[test]
fn broken_chain_kernel_fails_at_arity_one() {
    let mw = small_morphism_window();
    for seed in 0..4 {
        let k = kil_instance(seed, window()).unwrap();
        assert!(k.kernel.chain_violations(&k.closed).is_empty());
        let bad = k
            .kernel
            .admissible_pairs()
            .into_iter()
            .map(|(a, b)| k.kernel.with_added(a, b, int(1)).unwrap())
            .find(|h| !h.chain_violations(&k.closed).is_empty())
            .expect("some pair breaks the chain condition");
        let kil = certify_kil(&k.closed, &bad, mw, Exec::Parallel).unwrap();
        assert!(!kil.passed());
        let w = open_sector(seed + 100);
        let rep = verify_commutation_unchecked(&k.closed, &bad, &w, mw, Exec::Parallel).unwrap();
        assert_eq!(rep.first_failure(), Some(1));
    }
}

#[test]
fn certified_instances_commute() {
    let mw = small_morphism_window();
    for seed in 0..4 {
        let k = kil_instance(seed, window()).unwrap();
        let w = open_sector(seed + 200);
        let kil = certify_kil(&k.closed, &k.kernel, mw, Exec::Parallel).unwrap();
        let bdr = certify_bdr(&w, TruncationWindow::new(3, 1).unwrap(), Exec::Parallel);
        let f = OcMorphism::new(k.kernel.clone(), w.space()).unwrap();
        let u = f.union().clone();
        let mut r = rng(seed);
        let key_ok = (0..10).all(|_| {
            let xs: Vec<Monomial> = (0..r.gen_range(2..=3))
                .map(|_| Monomial::letter(Letter(r.gen_range(0..u.len()) as u16)))
                .collect();
            verify_key_lemma(&f, &w, &xs).unwrap().passed()
        });
        if kil.passed() && bdr.passed() && key_ok {
            let rep = verify_commutation(
                &k.closed,
                &k.kernel,
                &w,
                Some(&kil),
                Some(&bdr),
                mw,
                Exec::Parallel,
            )
            .unwrap();
            assert!(rep.passed(), "{:?}", rep.arities);
        }
    }
}

#[test]
fn mce_examples() {
    let a = ocformal::samples::small_closed_sector(window()).unwrap();
    assert!(mce_residual(&a, &Element::zero(), None).is_zero());
    let e = a.space().letter("e").unwrap();
    let abelian = a.trivialized();
    assert!(mce_residual(&abelian, &Element::letter(e), None).is_zero());
    let extra = |s: &Element| s.times_gamma(1);
    let s = Element::letter(e);
    assert_eq!(mce_residual(&abelian, &s, Some(&extra)), s.times_gamma(1));
}

#[test]
fn mce_matches_term_by_term_expansion() {
    let mut r = rng(41);
    for seed in 0..30 {
        let data = random_free_bv(seed, d3(), "c", FreeBVShape::default()).unwrap();
        let a = free_closed_sector(&data, window()).unwrap();
        let space = data.space().clone();
        let mut s = Element::zero();
        for _ in 0..3 {
            let len = r.gen_range(1..=2);
            let ls: Vec<Letter> = (0..len)
                .map(|_| Letter(r.gen_range(0..space.len()) as u16))
                .collect();
            s.add_assign(&Element::from_letters(
                &ls,
                r.gen_range(0..=1),
                int(r.gen_range(-2..=2)),
                &space,
            ));
        }
        // {u, v} = (−1)^{|u|} (Δ(uv) − Δ(u)v − (−1)^{|u|} uΔ(v)) on monomials
        let mut bracket = Element::zero();
        for (m1, c1) in s.terms() {
            for (m2, c2) in s.terms() {
                let u = Element::monomial(m1.clone(), c1.clone());
                let v = Element::monomial(m2.clone(), c2.clone());
                let su = int(sign_of(m1.is_odd(&space)));
                let mut t = data.contraction(&u.mul(&v, &space));
                t.sub_assign(&data.contraction(&u).mul(&v, &space));
                t.sub_assign(&u.mul(&data.contraction(&v), &space).scaled(&su));
                bracket.add_assign(&t.scaled(&su));
            }
        }
        let expected = data.total_differential(&s).plus(&bracket);
        assert_eq!(mce_residual(&a, &s, None), expected);
    }
}

/// Letters `a, a2` of degree 0 and `c, c2` of degree −1 in dimension 3,
/// `ω(a, c) = ω(a2, c2) = 1`, and the derivation `a2 ↦ γa`, `c ↦ −γc2`.
fn gauge_setup() -> (BDPresentation, Vec<Element>) {
    let space = GradedSpace::from_pairs(&[("a", 0), ("a2", 0), ("c", -1), ("c2", -1)]).unwrap();
    let l = |n: &str| space.letter(n).unwrap();
    let data = FreeBVData::new(
        space.clone(),
        d3(),
        &[],
        &[],
        &[(l("a"), l("c"), int(1)), (l("a2"), l("c2"), int(1))],
    )
    .unwrap();
    let a = free_closed_sector(&data, window()).unwrap();
    let mut images = vec![Element::zero(); space.len()];
    images[l("a2").0 as usize] = el(&space, &["a"], 1, 1);
    images[l("c").0 as usize] = el(&space, &["c2"], 1, -1);
    (a, images)
}

#[test]
fn gauge_examples() {
    let (a, images) = gauge_setup();
    let space = a.space().clone();
    let s = el(&space, &["a2", "c"], 0, 1).plus(&el(&space, &["a"], 0, 3));
    let zero = vec![Element::zero(); space.len()];
    assert_eq!(gauge_exp(&space, &zero, &s, window()).unwrap(), s);
    // D² = 0 on single letters
    let x = el(&space, &["a2"], 0, 1);
    assert_eq!(
        gauge_exp(&space, &images, &x, window()).unwrap(),
        x.plus(&el(&space, &["a"], 1, 1))
    );
    // identity on a letter never truncates
    let mut id = vec![Element::zero(); space.len()];
    id[0] = Element::letter(Letter(0));
    assert!(matches!(
        gauge_exp(&space, &id, &Element::letter(Letter(0)), window()),
        Err(FormalityError::NonTruncating(_))
    ));
}

#[test]
fn gauge_commutes_with_bracket() {
    let (a, images) = gauge_setup();
    let space = a.space().clone();
    let mut r = rng(3);
    for _ in 0..20 {
        let mut s = Element::zero();
        for _ in 0..3 {
            let ls: Vec<Letter> = (0..r.gen_range(1..=2))
                .map(|_| Letter(r.gen_range(0..4)))
                .collect();
            s.add_assign(&Element::from_letters(
                &ls,
                0,
                int(r.gen_range(-2..=2)),
                &space,
            ));
        }
        let w = TruncationWindow::new(4, 3).unwrap();
        let gs = gauge_exp(&space, &images, &s, w).unwrap();
        let lhs = gauge_exp(&space, &images, &a.bracket(&s, &s), w).unwrap();
        let rhs = a.bracket(&gs, &gs).filter(|m| w.contains(m));
        assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn bvinf_holds_for_any_seed(seed in any::<u64>()) {
        let inst = random_bvinf_instance(seed);
        let rep = verify_bvinf(&inst.kernel, &inst.inputs, inst.i, inst.j, EvalOptions::default()).unwrap();
        prop_assert!(rep.passed());
    }

    #[test]
    fn key_lemma_holds_for_any_seed(seed in any::<u64>()) {
        let inst = random_key_lemma_instance(seed, window()).unwrap();
        let f = OcMorphism::new(inst.kernel.clone(), inst.open.space()).unwrap();
        prop_assert!(verify_key_lemma(&f, &inst.open, &inst.inputs).unwrap().passed());
    }
}
