//! Symmetric coalgebras over a BD algebra, coderivations from dgla data, and
//! coalgebra morphisms given by Taylor coefficients.
//!
//! The coalgebra is cogenerated by the algebra shifted by the even amount
//! `6 − 2d`, so coalgebra parity equals algebra parity and the shift never
//! contributes a sign.

mod check;
mod coder;
mod coword;
mod taylor;

pub use check::{
    check_morphism_relation, morphism_inputs, morphism_sides, square_zero_check,
    square_zero_component, MorphismWindow,
};
pub use coder::{dgla_to_coderivation, Coderivation, DglaCoderivation, ZeroCoderivation};
pub use coword::{canonical_coword, CoElement, CoTensor, CoWord};
pub use taylor::{
    apply_taylor, extend_taylor, FnTaylor, MonomialRepr, TabulatedTaylor, TaylorEntry,
    TaylorMorphism,
};
