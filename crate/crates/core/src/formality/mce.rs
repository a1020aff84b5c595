use num_traits::One;

use super::FormalityError;
use crate::bd::{BDPresentation, TruncationWindow};
use crate::graded::{int, sign_of, Element, GradedSpace, Monomial, Scalar};

/// `D(S) + {S, S} + extra(S)`; zero exactly when `S` solves the master
/// equation, with `extra` carrying any additional terms.
pub fn mce_residual(
    a: &BDPresentation,
    s: &Element,
    extra: Option<&dyn Fn(&Element) -> Element>,
) -> Element {
    let mut out = a.differential(s);
    out.add_assign(&a.bracket(s, s));
    if let Some(f) = extra {
        out.add_assign(&f(s));
    }
    out
}

fn derivation_parity(space: &GradedSpace, images: &[Element]) -> Result<bool, FormalityError> {
    let mut parity = None;
    for (l, img) in space.letters().zip(images) {
        for (m, _) in img.terms() {
            let p = m.word.is_odd(space) != space.is_odd(l);
            match parity {
                None => parity = Some(p),
                Some(q) if q != p => return Err(FormalityError::DerivationParity),
                _ => {}
            }
        }
    }
    Ok(parity.unwrap_or(false))
}

/// γ-linear derivation of the product with the given images of generators.
fn apply_derivation(space: &GradedSpace, images: &[Element], odd: bool, x: &Element) -> Element {
    let mut out = Element::zero();
    for (m, c) in x.terms() {
        let letters = m.word.letters();
        let mut parity = false;
        for (i, &l) in letters.iter().enumerate() {
            let img = &images[l.0 as usize];
            if !img.is_zero() {
                let left = Element::from_letters(&letters[..i], m.gamma, Scalar::one(), space);
                let right = Element::from_letters(&letters[i + 1..], 0, Scalar::one(), space);
                let term = left.mul(img, space).mul(&right, space);
                out.add_scaled(&term, &(c * int(sign_of(odd && parity))));
            }
            parity ^= space.is_odd(l);
        }
    }
    out
}

/// `exp(D)(S) = Σ_k D^k(S)/k!` for the derivation `D` given on generators,
/// truncated to `window`. Fails if the powers of `D` do not die out inside
/// the window, which happens when `D` does not raise word length or γ.
pub fn gauge_exp(
    space: &GradedSpace,
    images: &[Element],
    s: &Element,
    window: TruncationWindow,
) -> Result<Element, FormalityError> {
    if images.len() != space.len() {
        return Err(FormalityError::ArityMismatch {
            expected: space.len(),
            found: images.len(),
        });
    }
    let odd = derivation_parity(space, images)?;
    let keep = |m: &Monomial| window.contains(m);
    let bound = window.max_word + window.max_gamma as usize + 1;
    let mut out = s.filter(keep);
    let mut power = out.clone();
    let mut fact = Scalar::one();
    for k in 1..=bound + 1 {
        power = apply_derivation(space, images, odd, &power).filter(keep);
        if power.is_zero() {
            return Ok(out);
        }
        if k > bound {
            break;
        }
        fact *= int(k as i64);
        out.add_scaled(&power, &(Scalar::one() / &fact));
    }
    Err(FormalityError::NonTruncating(bound))
}
