//! Finite enumeration windows that drive the brute-force searches.

use super::{FieldDescriptor, FieldElement, FieldError};

/// Default cap on the number of candidates a search may enumerate.
pub const DEFAULT_WINDOW_LIMIT: u64 = 1 << 26;

/// A finite slice of a field.
///
/// Finite fields are always enumerated exhaustively. For Laurent fields the
/// window holds `0` and every `t^v (c_0 + c_1 t + ... + c_{n-1} t^{n-1})`
/// with `c_0 != 0`, `min_val <= v <= max_val` and `n = coeffs`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub min_val: i64,
    pub max_val: i64,
    pub coeffs: u32,
    /// Upper bound on candidates; exceeding it is `WindowTooLarge`.
    pub limit: u64,
}

impl Window {
    pub fn new(min_val: i64, max_val: i64, coeffs: u32) -> Self {
        Window {
            min_val,
            max_val,
            coeffs,
            limit: DEFAULT_WINDOW_LIMIT,
        }
    }

    /// Valuations in [-2, 2], coefficient degree at most 3.
    pub fn standard() -> Self {
        Window::new(-2, 2, 4)
    }

    /// A window holding only zero.
    pub fn empty() -> Self {
        Window::new(0, -1, 0)
    }

    pub fn with_limit(mut self, limit: u64) -> Self {
        self.limit = limit;
        self
    }

    /// Number of elements (including zero) the window holds in `desc`.
    pub fn size(&self, desc: FieldDescriptor) -> u128 {
        let q = desc.coefficients().size() as u128;
        if desc.is_finite() {
            return q;
        }
        if self.max_val < self.min_val || self.coeffs == 0 {
            return 1;
        }
        let vals = (self.max_val - self.min_val + 1) as u128;
        1 + vals * (q - 1) * q.saturating_pow(self.coeffs - 1)
    }

    /// Reject a search of `count` candidates above the limit.
    pub fn check(&self, count: u128) -> Result<(), FieldError> {
        if count > self.limit as u128 {
            Err(FieldError::WindowTooLarge {
                size: count,
                limit: self.limit,
            })
        } else {
            Ok(())
        }
    }

    /// The normalized elements used for projective searches: `1`-led units of
    /// valuation zero (all of them for Laurent fields, just `1` for finite).
    pub(crate) fn normalized(&self, desc: FieldDescriptor) -> Vec<FieldElement> {
        if desc.is_finite() || self.coeffs == 0 {
            return vec![desc.one()];
        }
        let q = desc.coefficients().size() as u64;
        let tails = q.pow(self.coeffs - 1);
        (0..tails)
            .map(|tail| desc.polynomial(0, &digits(1, tail, q, self.coeffs)))
            .collect()
    }
}

fn digits(lead: u16, mut tail: u64, q: u64, len: u32) -> Vec<u16> {
    let mut out = vec![0u16; len as usize];
    out[0] = lead;
    // last coefficient varies fastest
    for slot in out.iter_mut().skip(1).rev() {
        *slot = (tail % q) as u16;
        tail /= q;
    }
    out
}

/// Every element of the window, in a fixed order: `0` first, then by
/// valuation, leading coefficient, and the remaining coefficients
/// lexicographically. Finite fields come out as `0, 1, w, w+1, ...`.
pub fn enumerate_elements(
    desc: FieldDescriptor,
    window: &Window,
) -> Result<impl Iterator<Item = FieldElement>, FieldError> {
    let size = window.size(desc);
    window.check(size)?;
    let q = desc.coefficients().size() as u64;
    let items: Box<dyn Iterator<Item = FieldElement>> = if desc.is_finite() {
        Box::new((0..q as u16).map(move |c| desc.constant(c)))
    } else if size == 1 {
        Box::new(std::iter::once(desc.zero()))
    } else {
        let w = *window;
        let tails = q.pow(w.coeffs - 1);
        Box::new(
            std::iter::once(desc.zero()).chain((w.min_val..=w.max_val).flat_map(move |v| {
                (1..q as u16).flat_map(move |lead| {
                    (0..tails).map(move |tail| desc.polynomial(v, &digits(lead, tail, q, w.coeffs)))
                })
            })),
        )
    };
    Ok(items)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finite_fields_enumerate_in_bit_order() {
        let d = FieldDescriptor::finite(2).unwrap();
        let all: Vec<String> = enumerate_elements(d, &Window::standard())
            .unwrap()
            .map(|x| x.to_string())
            .collect();
        assert_eq!(all, ["0", "1", "w", "w+1"]);
        let g8 = FieldDescriptor::finite(3).unwrap();
        assert_eq!(
            enumerate_elements(g8, &Window::standard()).unwrap().count(),
            8
        );
    }

    #[test]
    fn laurent_window_count_has_no_duplicates() {
        let d = FieldDescriptor::laurent(1, 16).unwrap();
        let w = Window::new(-1, 1, 3);
        let all: Vec<FieldElement> = enumerate_elements(d, &w).unwrap().collect();
        // brute count: zero plus 3 valuations * 2^2 tails
        assert_eq!(all.len(), 13);
        assert_eq!(all.len() as u128, w.size(d));
        for (i, x) in all.iter().enumerate() {
            for y in &all[i + 1..] {
                assert!(x != y, "duplicate {x}");
            }
        }
    }

    #[test]
    fn oversized_windows_are_rejected() {
        let d = FieldDescriptor::laurent(2, 16).unwrap();
        let w = Window::new(-5, 5, 8).with_limit(1000);
        assert!(matches!(
            enumerate_elements(d, &w),
            Err(FieldError::WindowTooLarge { .. })
        ));
    }

    #[test]
    fn empty_window_is_zero_only() {
        let d = FieldDescriptor::laurent(1, 16).unwrap();
        let all: Vec<_> = enumerate_elements(d, &Window::empty()).unwrap().collect();
        assert_eq!(all.len(), 1);
        assert!(all[0].is_zero());
    }
}
