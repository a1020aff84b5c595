//! Small fixed instances.

use crate::bd::{free_closed_sector, BDPresentation, BdError, FreeBVData, TruncationWindow};
use crate::graded::{int, Element, GradedSpace, Grading, LetterSpec, Monomial};

/// Three odd letters `e, f, h` in degree `−r` with the sl₂ bracket
/// `{e,f} = h, {h,e} = 2e, {h,f} = −2f`. The differential on generators is
/// zero; on words it is γ times the Chevalley-Eilenberg boundary.
pub fn sl2_sector(
    grading: Grading,
    names: [&str; 3],
    window: TruncationWindow,
) -> Result<BDPresentation, BdError> {
    let deg = -grading.twist();
    let space = GradedSpace::new(names.iter().map(|n| LetterSpec::new(*n, deg)).collect())?;
    let [e, f, h] = names.map(|n| space.letter(n).expect("just inserted"));
    let lin = |l, c: i64| Element::monomial(Monomial::letter(l), int(c));
    let bracket = vec![(e, f, lin(h, 1)), (h, e, lin(e, 2)), (h, f, lin(f, -2))];
    BDPresentation::symmetric(
        space.clone(),
        grading,
        vec![Element::zero(); 3],
        &bracket,
        window,
    )
}

/// Letters `a(0), b(1), c(−1), e(0)` with `δa = b`, `δc = e` in dimension 3
/// and the pairing `ω(a, c) = 1`, `ω(b, c)` absent. Degrees fit the pairing
/// support `5 − 2d = −1`.
pub fn small_closed_data() -> Result<FreeBVData, BdError> {
    let grading = Grading::new(3);
    let space = GradedSpace::from_pairs(&[("a", 0), ("b", 1), ("c", -1), ("e", 0)])?;
    let l = |n: &str| space.letter(n).expect("present");
    let (a, b, c, e) = (l("a"), l("b"), l("c"), l("e"));
    // chain condition at (a, c): ω(b, c) + ω(a, e) = 0; both lie outside the support
    FreeBVData::new(
        space.clone(),
        grading,
        &[(a, b, int(1)), (c, e, int(1))],
        &[],
        &[(a, c, int(1))],
    )
}

pub fn small_closed_sector(window: TruncationWindow) -> Result<BDPresentation, BdError> {
    free_closed_sector(&small_closed_data()?, window)
}
