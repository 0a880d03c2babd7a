//! Seeded random elements for property tests and presentation sampling.

use rand::Rng;

use super::series::Series;
use super::{FieldDescriptor, FieldElement};

/// A random element. Laurent values are generic series of valuation in
/// [-2, 2] known to the full field precision; zero turns up with
/// probability about 1/16.
pub fn random_element<R: Rng + ?Sized>(desc: FieldDescriptor, rng: &mut R) -> FieldElement {
    let q = desc.coefficients().size() as u16;
    match desc.precision() {
        None => desc.constant(rng.gen_range(0..q)),
        Some(prec) => {
            if rng.gen_range(0..16) == 0 {
                return desc.zero();
            }
            let val = rng.gen_range(-2..=2);
            let mut coeffs: Vec<u16> = (0..prec).map(|_| rng.gen_range(0..q)).collect();
            coeffs[0] = rng.gen_range(1..q);
            let abs = val + prec as i64;
            FieldElement::from_series(desc, Series::from_inexact(val, coeffs, abs, prec as i64))
        }
    }
}

/// A random exact Laurent polynomial with valuation in `[min_val, max_val]`
/// and `terms` coefficients (a uniform element on finite fields). Zero is
/// allowed.
pub fn random_polynomial<R: Rng + ?Sized>(
    desc: FieldDescriptor,
    min_val: i64,
    max_val: i64,
    terms: usize,
    rng: &mut R,
) -> FieldElement {
    let q = desc.coefficients().size() as u16;
    if desc.is_finite() {
        return desc.constant(rng.gen_range(0..q));
    }
    let val = rng.gen_range(min_val..=max_val);
    let coeffs: Vec<u16> = (0..terms).map(|_| rng.gen_range(0..q)).collect();
    desc.polynomial(val, &coeffs)
}
