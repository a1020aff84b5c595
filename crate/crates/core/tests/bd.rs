use ocformal::bd::*;
use ocformal::exec::Exec;
use ocformal::graded::*;
use ocformal::random::{random_free_bv, FreeBVShape};
use ocformal::samples::{sl2_sector, small_closed_data, small_closed_sector};
use proptest::prelude::*;

fn window(n: usize) -> TruncationWindow {
    TruncationWindow::new(n, 2).unwrap()
}

fn word(space: &GradedSpace, names: &[&str]) -> Element {
    let ls: Vec<Letter> = names.iter().map(|n| space.letter(n).unwrap()).collect();
    Element::from_letters(&ls, 0, int(1), space)
}

#[test]
fn zero_data_gives_zero_operations() {
    let g = Grading::new(3);
    let space = GradedSpace::from_pairs(&[("a", 0), ("c", -1)]).unwrap();
    let data = FreeBVData::new(space.clone(), g, &[], &[], &[]).unwrap();
    let p = free_closed_sector(&data, window(3)).unwrap();
    let ac = word(&space, &["a", "c"]);
    assert!(p.differential(&ac).is_zero());
    assert!(p
        .bracket(&word(&space, &["a"]), &word(&space, &["c"]))
        .is_zero());
    assert!(check_bd_axioms(&p, window(3), Exec::Sequential).all_passed());
}

#[test]
fn linear_differential_only_is_a_derivation() {
    let g = Grading::new(3);
    let space = GradedSpace::from_pairs(&[("a", 0), ("b", 1)]).unwrap();
    let (a, b) = (space.letter("a").unwrap(), space.letter("b").unwrap());
    let data = FreeBVData::new(space.clone(), g, &[(a, b, int(1))], &[], &[]).unwrap();
    let p = free_closed_sector(&data, window(3)).unwrap();
    // D(a·a) = 2 a·b
    let got = p.differential(&word(&space, &["a", "a"]));
    assert_eq!(got, word(&space, &["a", "b"]).scaled(&int(2)));
    assert!(p.bracket_entries().is_empty());
}

#[test]
fn single_pair_example() {
    // one odd and one even letter paired to 1; degrees sum to 5 − 2d = −1
    let g = Grading::new(3);
    let space = GradedSpace::from_pairs(&[("p", -1), ("q", 0)]).unwrap();
    let (p, q) = (space.letter("p").unwrap(), space.letter("q").unwrap());
    let data = FreeBVData::new(space.clone(), g, &[], &[], &[(p, q, int(1))]).unwrap();
    let alg = free_closed_sector(&data, window(3)).unwrap();
    let dgla = induced_dgla(&alg);
    let (ep, eq) = (word(&space, &["p"]), word(&space, &["q"]));
    assert_eq!(dgla.symmetric_bracket(&ep, &eq), Element::unit());
    let pq = word(&space, &["p", "q"]);
    assert_eq!(data.contraction(&pq), Element::unit());
    assert_eq!(alg.differential(&pq), Element::unit().times_gamma(1));
}

#[test]
fn rejects_invalid_data() {
    let g = Grading::new(3);
    let space = GradedSpace::from_pairs(&[("a", 0), ("b", 0)]).unwrap();
    let (a, b) = (space.letter("a").unwrap(), space.letter("b").unwrap());
    assert!(matches!(
        FreeBVData::new(space.clone(), g, &[], &[], &[(a, b, int(1))]),
        Err(BdError::SupportViolation(..))
    ));
    assert!(matches!(
        FreeBVData::new(space.clone(), g, &[(a, b, int(1))], &[], &[]),
        Err(BdError::DegreeViolation { .. })
    ));
    // δa = c while ω(c, x) ≠ 0 and ω(a, δx) = 0
    let space2 = GradedSpace::from_pairs(&[("a", -2), ("c", -1), ("x", 0)]).unwrap();
    let (a2, c2, x2) = (
        space2.letter("a").unwrap(),
        space2.letter("c").unwrap(),
        space2.letter("x").unwrap(),
    );
    assert!(matches!(
        FreeBVData::new(space2, g, &[(a2, c2, int(1))], &[], &[(c2, x2, int(1))]),
        Err(BdError::NotChainMap(..))
    ));
}

#[test]
fn random_free_sectors_pass_axioms() {
    for d in [2, 3, 4] {
        for seed in 0..6 {
            let data = random_free_bv(seed, Grading::new(d), "x", FreeBVShape::default()).unwrap();
            let p = free_closed_sector(&data, window(3)).unwrap();
            let report = check_bd_axioms(&p, window(3), Exec::Parallel);
            assert!(report.all_passed(), "d={d} seed={seed}: {report:?}");
        }
    }
}

#[test]
fn sampled_pairings_are_nontrivial_somewhere() {
    let mut nonzero = 0;
    for seed in 0..20 {
        let data = random_free_bv(seed, Grading::new(3), "x", FreeBVShape::default()).unwrap();
        if !data.omega_entries().is_empty() {
            nonzero += 1;
        }
    }
    assert!(nonzero >= 5, "only {nonzero} nonzero pairings");
}

#[test]
fn differential_splits_into_linear_part_and_contraction() {
    for seed in 0..8 {
        let data = random_free_bv(seed, Grading::new(3), "x", FreeBVShape::default()).unwrap();
        let p = free_closed_sector(&data, window(4)).unwrap();
        for w in sym_words(data.space(), 0, 4) {
            let x = Element::from_letters(w.letters(), 1, int(1), data.space());
            assert_eq!(
                p.differential(&x),
                data.total_differential(&x),
                "seed {seed}, word {}",
                w.display(data.space())
            );
            // Δ² = 0 and [δ, Δ] = 0
            assert!(data.contraction(&data.contraction(&x)).is_zero());
            let c1 = data.delta_linear(&data.contraction(&x));
            let c2 = data.contraction(&data.delta_linear(&x));
            assert_eq!(c1.plus(&c2), Element::zero());
        }
    }
}

#[test]
fn flipped_bracket_entry_is_located() {
    let p = small_closed_sector(window(3)).unwrap();
    let s = p.space();
    let (a, c) = (s.letter("a").unwrap(), s.letter("c").unwrap());
    let bad = p.with_flipped_entry(a, c);
    let report = check_bd_axioms(&bad, window(3), Exec::Sequential);
    let rel = report.get("bd_relation").unwrap();
    assert!(!rel.passed);
    assert!(rel.counterexample.as_ref().unwrap().contains("u="));
    assert!(!report.get("bracket_symmetry").unwrap().passed);
    assert!(check_bd_axioms(&p, window(3), Exec::Sequential).all_passed());
}

#[test]
fn sl2_sector_is_bd() {
    for d in [2, 3] {
        let p = sl2_sector(Grading::new(d), ["e", "f", "h"], window(3)).unwrap();
        assert!(check_bd_axioms(&p, window(3), Exec::Parallel).all_passed());
        let s = p.space();
        // D(e·f) = (−1)^{|e|} γ {e, f} = −γ h for odd e
        let ef = word(s, &["e", "f"]);
        assert_eq!(p.differential(&ef), word(s, &["h"]).times_gamma(1).neg());
    }
}

#[test]
fn tensor_product_passes_axioms_and_matches_literal_bracket() {
    let g = Grading::new(3);
    for seed in 0..4 {
        let a = free_closed_sector(
            &random_free_bv(
                seed,
                g,
                "x",
                FreeBVShape {
                    letters: 3,
                    ..Default::default()
                },
            )
            .unwrap(),
            window(3),
        )
        .unwrap();
        let b = sl2_sector(g, ["e", "f", "h"], window(3)).unwrap();
        let t = tensor_bd(&a, &b).unwrap();
        assert!(check_bd_axioms(&t, window(3), Exec::Parallel).all_passed());
        let ea = a.space().embedding_into(t.space()).unwrap();
        let eb = b.space().embedding_into(t.space()).unwrap();
        let aw = sym_words(a.space(), 0, 2);
        let bw = sym_words(b.space(), 0, 2);
        for a1 in &aw {
            for b1 in &bw {
                for a2 in &aw {
                    for b2 in &bw {
                        let mk = |w: &SymWord, s: &GradedSpace| {
                            Element::from_letters(w.letters(), 0, int(1), s)
                        };
                        let (x1, y1, x2, y2) = (
                            mk(a1, a.space()),
                            mk(b1, b.space()),
                            mk(a2, a.space()),
                            mk(b2, b.space()),
                        );
                        let left = x1
                            .reindex(&ea, t.space())
                            .mul(&y1.reindex(&eb, t.space()), t.space());
                        let right = x2
                            .reindex(&ea, t.space())
                            .mul(&y2.reindex(&eb, t.space()), t.space());
                        let direct = t.bracket(&left, &right);
                        let literal =
                            tensor_bracket_literal(&a, &b, &t, (&x1, &y1), (&x2, &y2)).unwrap();
                        assert_eq!(direct, literal);
                    }
                }
            }
        }
    }
}

#[test]
fn tensor_of_zero_brackets_is_zero() {
    let g = Grading::new(3);
    let a = BDPresentation::zero(
        GradedSpace::from_pairs(&[("a", 0), ("b", -1)]).unwrap(),
        g,
        window(3),
    );
    let b = BDPresentation::zero(
        GradedSpace::from_pairs(&[("u", 1), ("v", -2)]).unwrap(),
        g,
        window(3),
    );
    let t = tensor_bd(&a, &b).unwrap();
    for u in sym_words(t.space(), 1, 2) {
        for v in sym_words(t.space(), 1, 2) {
            assert!(t.bracket_words(&u, &v).is_zero());
        }
    }
}

#[test]
fn tensor_sign_exponents() {
    // exponents |a₂|(|b₁|+r) and |b₁|(|a₂|+r)
    let r = Grading::new(3).twist();
    let e = |a2: i64, b1: i64| ((a2 * (b1 + r)).rem_euclid(2), (b1 * (a2 + r)).rem_euclid(2));
    assert_eq!(e(0, 0), (0, 0));
    assert_eq!(e(1, 1), (0, 0));
}

#[test]
fn tensor_rejects_twist_mismatch() {
    let a = BDPresentation::zero(
        GradedSpace::from_pairs(&[("a", 0)]).unwrap(),
        Grading::new(3),
        window(2),
    );
    let b = BDPresentation::zero(
        GradedSpace::from_pairs(&[("b", 0)]).unwrap(),
        Grading::new(4),
        window(2),
    );
    assert!(matches!(
        tensor_bd(&a, &b),
        Err(BdError::TwistMismatch(1, 3))
    ));
}

#[test]
fn tensor_is_associative() {
    let g = Grading::new(3);
    let x = small_closed_sector(window(2)).unwrap();
    let y = sl2_sector(g, ["E", "F", "H"], window(2)).unwrap();
    let z = free_closed_sector(
        &random_free_bv(
            5,
            g,
            "z",
            FreeBVShape {
                letters: 2,
                ..Default::default()
            },
        )
        .unwrap(),
        window(2),
    )
    .unwrap();
    let left = tensor_bd(&tensor_bd(&x, &y).unwrap(), &z).unwrap();
    let right = tensor_bd(&x, &tensor_bd(&y, &z).unwrap()).unwrap();
    assert_eq!(left, right);
}

#[test]
fn induced_dgla_degrees_and_jacobi() {
    let p = sl2_sector(Grading::new(3), ["e", "f", "h"], window(3)).unwrap();
    let v = induced_dgla(&p);
    assert_eq!(v.bracket_degree(), 0);
    assert_eq!(v.differential_degree(), 1);
    let s = p.space();
    let e = word(s, &["e"]);
    let f = word(s, &["f"]);
    let h = word(s, &["h"]);
    let m = Monomial::letter(s.letter("e").unwrap());
    assert_eq!(v.degree(&m), 0);
    // bracket of two degree-0 elements in the Lie view stays in degree 0
    let ef = v.bracket(&e, &f);
    for (mono, _) in ef.terms() {
        assert_eq!(v.degree(mono), 0);
    }
    let words: Vec<Element> = sym_words(s, 1, 2)
        .iter()
        .map(|w| Element::from_letters(w.letters(), 0, int(1), s))
        .collect();
    for x in &words {
        for y in &words {
            for z in [&e, &f, &h] {
                assert!(v.jacobi_defect_shifted(x, y, z).is_zero());
                assert!(v.jacobi_defect_unshifted(x, y, z).is_zero());
            }
        }
    }
}

#[test]
fn operations_respect_gamma_filtration() {
    let data = small_closed_data().unwrap();
    let p = free_closed_sector(&data, window(3)).unwrap();
    for k in 0..3 {
        for w in sym_words(p.space(), 0, 3) {
            let x = Element::from_letters(w.letters(), k, int(1), p.space());
            assert!(p
                .differential(&x)
                .terms()
                .all(|(m, _)| m.gamma >= k && m.gamma <= k + 1));
            for v in sym_words(p.space(), 0, 2) {
                let y = Element::from_letters(v.letters(), 0, int(1), p.space());
                assert!(p.bracket(&x, &y).terms().all(|(m, _)| m.gamma >= k));
            }
        }
    }
}

#[test]
fn json_round_trips() {
    let g = Grading::new(3);
    let data = random_free_bv(3, g, "x", FreeBVShape::default()).unwrap();
    let repr = FreeBVRepr::from_data(&data);
    let text = serde_json::to_string(&repr).unwrap();
    let back: FreeBVRepr = serde_json::from_str(&text).unwrap();
    assert_eq!(back.build(g).unwrap(), data);

    let p = sl2_sector(g, ["e", "f", "h"], window(3)).unwrap();
    let repr = PresentationRepr::from_presentation(&p);
    let text = serde_json::to_string(&repr).unwrap();
    let back: PresentationRepr = serde_json::from_str(&text).unwrap();
    assert_eq!(back.build(g, window(3)).unwrap(), p);
    assert!(serde_json::from_str::<PresentationRepr>(r#"{"letters":[],"extra":1}"#).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn random_sectors_square_to_zero(seed in any::<u64>(), d in 1i64..=4) {
        let data = random_free_bv(seed, Grading::new(d), "x", FreeBVShape { letters: 4, degree_lo: -3, degree_hi: 2, delta_density: 0.6 }).unwrap();
        let p = free_closed_sector(&data, window(3)).unwrap();
        for w in sym_words(p.space(), 1, 3) {
            let x = Element::from_letters(w.letters(), 0, int(1), p.space());
            prop_assert!(p.differential(&p.differential(&x)).is_zero());
        }
    }
}
