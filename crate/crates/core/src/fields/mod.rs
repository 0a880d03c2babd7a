//! Exact arithmetic in GF(2^k) and in truncated Laurent-series fields
//! GF(2^k)((t)).
//!
//! Every element carries its [`FieldDescriptor`]. Laurent elements are either
//! exact Laurent polynomials or series known modulo some power of `t`;
//! arithmetic propagates the smaller precision and never invents digits.
//! Equality (`==`) on Laurent elements means "equal to the known precision".

mod artin_schreier;
pub mod gf2k;
mod sample;
pub(crate) mod series;
mod text;
mod window;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use thiserror::Error;

pub use artin_schreier::{residue_and_trace, AsSolution, Obstruction};
pub use gf2k::{Gf2k, MAX_DEGREE};
pub use sample::{random_element, random_polynomial};
pub use window::{enumerate_elements, Window, DEFAULT_WINDOW_LIMIT};

use series::Series;

/// Default relative precision of Laurent fields.
pub const DEFAULT_PRECISION: u32 = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("exponent outside the precision window: {0}")]
    PrecisionOverflow(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("field descriptor mismatch: {0} vs {1}")]
    DescriptorMismatch(FieldDescriptor, FieldDescriptor),
    #[error("precision loss: {0}")]
    PrecisionLoss(String),
    #[error("window of {size} candidates exceeds the limit {limit}")]
    WindowTooLarge { size: u128, limit: u64 },
    #[error("unsupported extension degree {0} (1..=8)")]
    UnsupportedDegree(u32),
}

/// Which field an element lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldDescriptor {
    /// GF(2^k).
    Finite { k: u8 },
    /// GF(2^k)((t)) with relative precision `prec`.
    Laurent { k: u8, prec: u32 },
}

impl FieldDescriptor {
    pub fn finite(k: u8) -> Result<Self, FieldError> {
        check_degree(k)?;
        Ok(FieldDescriptor::Finite { k })
    }

    pub fn laurent(k: u8, prec: u32) -> Result<Self, FieldError> {
        check_degree(k)?;
        if prec == 0 {
            return Err(FieldError::Syntax("precision must be at least 1".into()));
        }
        Ok(FieldDescriptor::Laurent { k, prec })
    }

    pub fn degree(self) -> u8 {
        match self {
            FieldDescriptor::Finite { k } | FieldDescriptor::Laurent { k, .. } => k,
        }
    }

    pub fn coefficients(self) -> Gf2k {
        Gf2k::new(self.degree())
    }

    pub fn is_finite(self) -> bool {
        matches!(self, FieldDescriptor::Finite { .. })
    }

    pub fn precision(self) -> Option<u32> {
        match self {
            FieldDescriptor::Finite { .. } => None,
            FieldDescriptor::Laurent { prec, .. } => Some(prec),
        }
    }

    /// Same field with another precision; identity on finite fields.
    pub fn with_precision(self, prec: u32) -> Self {
        match self {
            FieldDescriptor::Finite { .. } => self,
            FieldDescriptor::Laurent { k, .. } => FieldDescriptor::Laurent { k, prec },
        }
    }

    pub(crate) fn cap(self) -> i64 {
        self.precision().map_or(i64::MAX, i64::from)
    }

    pub fn zero(self) -> FieldElement {
        FieldElement {
            desc: self,
            repr: match self {
                FieldDescriptor::Finite { .. } => Repr::Finite(0),
                FieldDescriptor::Laurent { .. } => Repr::Series(Series::zero()),
            },
        }
    }

    pub fn one(self) -> FieldElement {
        self.constant(1)
    }

    /// The coefficient-field element with bit pattern `c` (in the `w` basis).
    pub fn constant(self, c: u16) -> FieldElement {
        assert!(
            (c as usize) < self.coefficients().size(),
            "constant out of range"
        );
        FieldElement {
            desc: self,
            repr: match self {
                FieldDescriptor::Finite { .. } => Repr::Finite(c),
                FieldDescriptor::Laurent { .. } => Repr::Series(Series::monomial(c, 0)),
            },
        }
    }

    /// The generator `w` of the coefficient field (`k >= 2`).
    pub fn generator(self) -> FieldElement {
        assert!(self.degree() >= 2, "GF(2) has no generator w");
        self.constant(0b10)
    }

    /// `c * t^n`; Laurent fields only.
    pub fn monomial(self, c: u16, n: i64) -> FieldElement {
        assert!(!self.is_finite(), "t is not an element of a finite field");
        FieldElement {
            desc: self,
            repr: Repr::Series(Series::monomial(c, n)),
        }
    }

    /// The uniformizer `t`; Laurent fields only.
    pub fn t(self) -> FieldElement {
        self.monomial(1, 1)
    }

    /// Exact Laurent polynomial `sum coeffs[i] t^(val+i)`.
    pub fn polynomial(self, val: i64, coeffs: &[u16]) -> FieldElement {
        assert!(!self.is_finite(), "polynomials in t need a Laurent field");
        FieldElement {
            desc: self,
            repr: Repr::Series(Series::from_exact(val, coeffs.to_vec(), self.cap())),
        }
    }

    /// The fixed trace-one coefficient used as the non-trivial class of
    /// GF(2^k)/℘(GF(2^k)).
    pub fn trace_one(self) -> FieldElement {
        self.constant(self.coefficients().trace_one())
    }

    pub fn parse(self, text: &str) -> Result<FieldElement, FieldError> {
        text::parse_element(self, text)
    }
}

fn check_degree(k: u8) -> Result<(), FieldError> {
    if (1..=MAX_DEGREE).contains(&k) {
        Ok(())
    } else {
        Err(FieldError::UnsupportedDegree(k as u32))
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FieldDescriptor::Finite { k } => write!(f, "gf({})", 1u32 << k),
            FieldDescriptor::Laurent { k, prec } => {
                write!(f, "laurent(gf({}),prec={})", 1u32 << k, prec)
            }
        }
    }
}

impl FromStr for FieldDescriptor {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        text::parse_descriptor(s)
    }
}

#[derive(Clone, Debug)]
enum Repr {
    Finite(u16),
    Series(Series),
}

/// An element of GF(2^k) or GF(2^k)((t)).
#[derive(Clone, Debug)]
pub struct FieldElement {
    desc: FieldDescriptor,
    repr: Repr,
}

impl FieldElement {
    pub fn descriptor(&self) -> FieldDescriptor {
        self.desc
    }

    pub(crate) fn from_series(desc: FieldDescriptor, s: Series) -> Self {
        debug_assert!(!desc.is_finite());
        FieldElement {
            desc,
            repr: Repr::Series(s),
        }
    }

    pub(crate) fn from_bits(desc: FieldDescriptor, c: u16) -> Self {
        desc.constant(c)
    }

    pub(crate) fn series(&self) -> Option<&Series> {
        match &self.repr {
            Repr::Series(s) => Some(s),
            Repr::Finite(_) => None,
        }
    }

    pub(crate) fn finite_bits(&self) -> Option<u16> {
        match self.repr {
            Repr::Finite(c) => Some(c),
            Repr::Series(_) => None,
        }
    }

    /// Zero, or zero to the known precision.
    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Finite(c) => *c == 0,
            Repr::Series(s) => s.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        (self + &self.desc.one()).is_zero()
    }

    /// True for finite-field elements and exact Laurent polynomials.
    pub fn is_exact(&self) -> bool {
        match &self.repr {
            Repr::Finite(_) => true,
            Repr::Series(s) => s.is_exact(),
        }
    }

    /// Valuation at `t`: 0 for nonzero finite-field elements, `None` for zero.
    pub fn valuation(&self) -> Option<i64> {
        match &self.repr {
            Repr::Finite(c) => (*c != 0).then_some(0),
            Repr::Series(s) => s.valuation(),
        }
    }

    /// The power of `t` modulo which this value is known (`None` = exact).
    pub fn absolute_precision(&self) -> Option<i64> {
        match &self.repr {
            Repr::Finite(_) => None,
            Repr::Series(s) => s.abs,
        }
    }

    /// Coefficient of `t^n` as a coefficient-field bit pattern.
    pub fn coefficient(&self, n: i64) -> Result<u16, FieldError> {
        match &self.repr {
            Repr::Finite(c) => Ok(if n == 0 { *c } else { 0 }),
            Repr::Series(s) => s.coeff(n).ok_or_else(|| {
                FieldError::PrecisionLoss(format!("coefficient of t^{n} is not known"))
            }),
        }
    }

    fn check(&self, other: &FieldElement) -> Result<(), FieldError> {
        if self.desc == other.desc {
            Ok(())
        } else {
            Err(FieldError::DescriptorMismatch(self.desc, other.desc))
        }
    }

    fn gf(&self) -> Gf2k {
        self.desc.coefficients()
    }

    pub fn try_add(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(other)?;
        let repr = match (&self.repr, &other.repr) {
            (Repr::Finite(a), Repr::Finite(b)) => Repr::Finite(a ^ b),
            (Repr::Series(a), Repr::Series(b)) => Repr::Series(a.add(b, self.desc.cap())),
            _ => unreachable!("descriptor checked"),
        };
        Ok(FieldElement {
            desc: self.desc,
            repr,
        })
    }

    pub fn try_mul(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(other)?;
        Ok(self.mul_rel(other, self.desc.cap()))
    }

    /// Product keeping up to `rel` significant terms, which may exceed the
    /// field precision when both factors are exact.
    pub(crate) fn mul_rel(&self, other: &FieldElement, rel: i64) -> FieldElement {
        let repr = match (&self.repr, &other.repr) {
            (Repr::Finite(a), Repr::Finite(b)) => Repr::Finite(self.gf().mul(*a, *b)),
            (Repr::Series(a), Repr::Series(b)) => Repr::Series(a.mul_rel(b, self.gf(), rel)),
            _ => unreachable!("descriptor checked"),
        };
        FieldElement {
            desc: self.desc,
            repr,
        }
    }

    pub fn square(&self) -> FieldElement {
        let repr = match &self.repr {
            Repr::Finite(a) => Repr::Finite(self.gf().square(*a)),
            Repr::Series(s) => Repr::Series(s.square(self.gf(), self.desc.cap())),
        };
        FieldElement {
            desc: self.desc,
            repr,
        }
    }

    pub fn inv(&self) -> Result<FieldElement, FieldError> {
        self.inv_rel(self.desc.cap())
    }

    pub(crate) fn inv_rel(&self, rel: i64) -> Result<FieldElement, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let repr = match &self.repr {
            Repr::Finite(a) => Repr::Finite(self.gf().inv(*a)),
            Repr::Series(s) => Repr::Series(s.inv_rel(self.gf(), rel)),
        };
        Ok(FieldElement {
            desc: self.desc,
            repr,
        })
    }

    pub fn try_div(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(other)?;
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, n: u64) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.desc.one();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = base.square();
            n >>= 1;
        }
        acc
    }

    /// Whether the element lies in (F*)^2 ∪ {0} (to the known precision).
    pub fn is_square(&self) -> bool {
        self.sqrt().is_some()
    }

    /// The unique square root, if the element is a square.
    pub fn sqrt(&self) -> Option<FieldElement> {
        let repr = match &self.repr {
            Repr::Finite(a) => Repr::Finite(self.gf().sqrt(*a)),
            Repr::Series(s) => Repr::Series(s.sqrt(self.gf())?),
        };
        Some(FieldElement {
            desc: self.desc,
            repr,
        })
    }

    /// The Artin–Schreier map `x^2 + x`.
    pub fn wp(&self) -> FieldElement {
        &self.square() + self
    }

    /// Formal derivative d/dt; zero on finite fields.
    pub fn derivative(&self) -> FieldElement {
        match &self.repr {
            Repr::Finite(_) => self.desc.zero(),
            Repr::Series(s) => FieldElement::from_series(self.desc, s.derivative(self.desc.cap())),
        }
    }

    /// Drop every term of even exponent. Those terms form a square, so the
    /// result agrees with `self` modulo `F^2`. Zero on finite fields.
    pub fn odd_part(&self) -> FieldElement {
        match &self.repr {
            Repr::Finite(_) => self.desc.zero(),
            Repr::Series(s) => {
                let coeffs = (s.val..s.val + s.coeffs.len() as i64)
                    .map(|n| if n % 2 == 0 { 0 } else { s.coeff_known(n) })
                    .collect();
                let odd = match s.abs {
                    None => Series::from_exact(s.val, coeffs, self.desc.cap()),
                    Some(abs) => Series::from_inexact(s.val, coeffs, abs, self.desc.cap()),
                };
                FieldElement::from_series(self.desc, odd)
            }
        }
    }

    /// Absolute trace to GF(2) of a finite-field element, or of the constant
    /// coefficient of a Laurent element.
    pub fn constant_trace(&self) -> Result<u8, FieldError> {
        Ok(self.gf().trace(self.coefficient(0)?))
    }

    /// Equality to the known precision.
    pub fn eq_to_precision(&self, other: &FieldElement) -> bool {
        self.desc == other.desc && (self + other).is_zero()
    }

    /// Forget everything at or beyond `t^abs`.
    pub fn truncate(&self, abs: i64) -> FieldElement {
        match &self.repr {
            Repr::Finite(_) => self.clone(),
            Repr::Series(s) => {
                FieldElement::from_series(self.desc, s.truncate_to(abs, self.desc.cap()))
            }
        }
    }

    /// Solve `x^2 + x = self`.
    pub fn artin_schreier_solve(&self) -> Result<AsSolution, FieldError> {
        artin_schreier::solve(self)
    }

    /// Whether `self = x^2 + x` for some `x`, without computing `x`.
    pub fn is_wp_image(&self) -> Result<bool, FieldError> {
        artin_schreier::in_image(self)
    }

    /// Canonical representative of the class of `self` in F/℘(F).
    pub fn artin_schreier_reduce(&self) -> Result<FieldElement, FieldError> {
        artin_schreier::reduce(self).map(|(r, _)| r)
    }
}

/// One root of `a x^2 + b x + c = 0`, if any. The other root, when `a != 0`,
/// is the returned one plus `b / a`.
pub fn quadratic_root(
    a: &FieldElement,
    b: &FieldElement,
    c: &FieldElement,
) -> Result<Option<FieldElement>, FieldError> {
    a.check(b)?;
    a.check(c)?;
    if a.is_zero() {
        if b.is_zero() {
            return Ok(c.is_zero().then(|| a.desc.zero()));
        }
        return Ok(Some(c.try_div(b)?));
    }
    if b.is_zero() {
        return Ok(c.try_div(a)?.sqrt());
    }
    // x = (b/a) s with s^2 + s = c a / b^2
    let scale = b.try_div(a)?;
    let rhs = quotient_to_constant_term(&(c * a), &b.square())?;
    match rhs.artin_schreier_solve()? {
        AsSolution::Root(s) => Ok(Some(&scale * &s)),
        AsSolution::NoSolution(_) => Ok(None),
    }
}

/// `n / d`, widening the working precision when both are exact so that the
/// constant term of the quotient is known.
pub(crate) fn quotient_to_constant_term(
    n: &FieldElement,
    d: &FieldElement,
) -> Result<FieldElement, FieldError> {
    let cap = n.desc.cap();
    let q = n * &d.inv()?;
    match q.absolute_precision() {
        Some(abs) if abs < 1 && n.is_exact() && d.is_exact() => {
            let rel = cap + (1 - abs);
            Ok(n.mul_rel(&d.inv_rel(rel)?, rel))
        }
        _ => Ok(q),
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.eq_to_precision(other)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::format_element(self))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl<'a> $trait<&'a FieldElement> for &'a FieldElement {
            type Output = FieldElement;

            /// Panics on a descriptor mismatch; use the `try_` form to recover.
            fn $method(self, rhs: &'a FieldElement) -> FieldElement {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }

        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;

            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_add);
forward_binop!(Mul, mul, try_mul);

impl Neg for &FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        self.clone()
    }
}
