//! The symbols `[a,b)` and `((a,b))` as Brauer classes of order at most two.
//!
//! Over GF(2^k) every quaternion algebra splits. Over GF(2^k)((t)) the class
//! is read off the residue pairing `Tr Res(a · db/b)`; `((a,b))` is reduced
//! to `[ab, b)` after removing squares from both slots.

use std::fmt;

use thiserror::Error;

use crate::fields::{residue_and_trace, FieldDescriptor, FieldElement, FieldError};
use crate::quaternion::{Kind, Presentation};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SymbolError {
    #[error("[a,b) requires b != 0 (the convention [a,0) = 0 was not requested)")]
    ZeroSecondSlot,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// How an invariant was decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    /// Finite field: every quaternion algebra splits.
    Wedderburn,
    /// Residue pairing over a Laurent field.
    Residue,
    /// Isotropy search.
    Search,
    /// The conventions `[a,0) = ((a,0)) = ((0,b)) = 0`.
    Convention,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Wedderburn => "wedderburn",
            Method::Residue => "residue",
            Method::Search => "search",
            Method::Convention => "convention",
        })
    }
}

/// A symbol together with its class bit (0 = split).
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolValue {
    pub kind: Kind,
    pub a: FieldElement,
    pub b: FieldElement,
    pub invariant: u8,
    pub method: Method,
}

impl SymbolValue {
    pub fn descriptor(&self) -> FieldDescriptor {
        self.a.descriptor()
    }

    pub fn is_split(&self) -> bool {
        self.invariant == 0
    }
}

impl fmt::Display for SymbolValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            Kind::As => write!(f, "[{}, {})", self.a, self.b),
            Kind::Bil => write!(f, "(({}, {}))", self.a, self.b),
        }
    }
}

/// Evaluate a symbol. With `convention`, `[a,0)` is the zero class;
/// otherwise it is an error. `((a,0))` and `((0,b))` are always zero.
pub fn symbol_value(
    kind: Kind,
    a: &FieldElement,
    b: &FieldElement,
    convention: bool,
) -> Result<SymbolValue, SymbolError> {
    let desc = a.descriptor();
    if b.descriptor() != desc {
        return Err(FieldError::DescriptorMismatch(desc, b.descriptor()).into());
    }
    let value = |invariant, method| SymbolValue {
        kind,
        a: a.clone(),
        b: b.clone(),
        invariant,
        method,
    };
    if b.is_zero() {
        if kind == Kind::As && !convention {
            return Err(SymbolError::ZeroSecondSlot);
        }
        return Ok(value(0, Method::Convention));
    }
    if kind == Kind::Bil && a.is_zero() {
        return Ok(value(0, Method::Convention));
    }
    if desc.is_finite() {
        return Ok(value(0, Method::Wedderburn));
    }
    match kind {
        Kind::As => {
            let rep = a.artin_schreier_reduce()?;
            Ok(value(residue_and_trace(&rep, b)?, Method::Residue))
        }
        Kind::Bil => {
            // ((a,b)) only sees a and b modulo squares; dropping the even
            // terms first keeps more digits of ab
            let (a, b) = (a.odd_part(), b.odd_part());
            if (a.is_zero() && a.is_exact()) || (b.is_zero() && b.is_exact()) {
                return Ok(value(0, Method::Residue));
            }
            let rep = (&a * &b).artin_schreier_reduce()?;
            Ok(value(residue_and_trace(&rep, &b)?, Method::Residue))
        }
    }
}

/// The class bit of `[a,b)` or `((a,b))`; 0 means split.
pub fn symbol_invariant(kind: Kind, a: &FieldElement, b: &FieldElement) -> Result<u8, SymbolError> {
    Ok(symbol_value(kind, a, b, false)?.invariant)
}

/// The class of a presentation.
pub fn presentation_value(p: &Presentation) -> Result<SymbolValue, SymbolError> {
    symbol_value(p.kind(), p.a(), p.b(), false)
}

/// `((a,b)) = [ab, b)` for `b != 0`; the zero class for `b = 0`.
pub fn bil_to_as(a: &FieldElement, b: &FieldElement) -> Result<SymbolValue, SymbolError> {
    symbol_value(Kind::As, &(a * b), b, true)
}

/// Equality of Brauer classes. Over the supported fields the class bit
/// classifies quaternion classes completely.
pub fn class_equal(s1: &SymbolValue, s2: &SymbolValue) -> Result<bool, SymbolError> {
    if s1.descriptor() != s2.descriptor() {
        return Err(FieldError::DescriptorMismatch(s1.descriptor(), s2.descriptor()).into());
    }
    Ok(s1.invariant == s2.invariant)
}
