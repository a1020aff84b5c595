use super::{BDPresentation, BdError, TruncationWindow};
use crate::graded::{int, Element};

/// Tensor product over the shared γ: generators are the disjoint union,
/// cross brackets vanish, and the differential is `d_A ⊗ 1 + 1 ⊗ d_B`.
pub fn tensor_bd(a: &BDPresentation, b: &BDPresentation) -> Result<BDPresentation, BdError> {
    if a.twist() != b.twist() {
        return Err(BdError::TwistMismatch(a.twist(), b.twist()));
    }
    let space = a.space().disjoint_union(b.space())?;
    let ea = a.space().embedding_into(&space)?;
    let eb = b.space().embedding_into(&space)?;
    let mut differential = vec![Element::zero(); space.len()];
    let mut bracket = std::collections::BTreeMap::new();
    for (part, emb) in [(a, &ea), (b, &eb)] {
        for l in part.space().letters() {
            differential[emb[l.0 as usize].0 as usize] =
                part.generator_differential(l).reindex(emb, &space);
        }
        for (&(x, y), v) in part.bracket_entries() {
            bracket.insert(
                (emb[x.0 as usize], emb[y.0 as usize]),
                v.reindex(emb, &space),
            );
        }
    }
    let window = TruncationWindow {
        max_word: a.window().max_word.max(b.window().max_word),
        max_gamma: a.window().max_gamma.max(b.window().max_gamma),
    };
    BDPresentation::new(space, a.grading(), differential, bracket, window)
}

/// Bracket of `a₁⊗b₁` with `a₂⊗b₂` written out factorwise:
///
/// `(−1)^{|a₂|(|b₁|+r)} a₁a₂ ⊗ {b₁,b₂} + (−1)^{|b₁|(|a₂|+r)} {a₁,a₂} ⊗ b₁b₂`,
///
/// with `x ⊗ y` read as the product `x·y` inside `t = tensor_bd(a, b)`.
/// Arguments must be homogeneous.
pub fn tensor_bracket_literal(
    a: &BDPresentation,
    b: &BDPresentation,
    t: &BDPresentation,
    (a1, b1): (&Element, &Element),
    (a2, b2): (&Element, &Element),
) -> Result<Element, BdError> {
    let ea = a.space().embedding_into(t.space())?;
    let eb = b.space().embedding_into(t.space())?;
    let r = a.twist();
    let deg = |x: &Element, p: &BDPresentation| -> i64 {
        x.degrees(p.space(), p.grading())
            .first()
            .copied()
            .unwrap_or(0)
    };
    let (da2, db1) = (deg(a2, a), deg(b1, b));
    let s1 = int(if (da2 * (db1 + r)).rem_euclid(2) == 1 {
        -1
    } else {
        1
    });
    let s2 = int(if (db1 * (da2 + r)).rem_euclid(2) == 1 {
        -1
    } else {
        1
    });
    let first = a
        .product(a1, a2)
        .reindex(&ea, t.space())
        .mul(&b.bracket(b1, b2).reindex(&eb, t.space()), t.space());
    let second = a
        .bracket(a1, a2)
        .reindex(&ea, t.space())
        .mul(&b.product(b1, b2).reindex(&eb, t.space()), t.space());
    Ok(first.scaled(&s1).plus(&second.scaled(&s2)))
}
