//! Truncated Laurent series over GF(2^k) with capped relative precision.
//!
//! A [`Series`] is either exact (a Laurent polynomial, every coefficient past
//! the stored ones is zero) or known modulo `t^abs`. Inexact values never
//! claim more than `cap` significant terms; exact values longer than `cap`
//! are demoted to inexact ones.

use super::gf2k::Gf2k;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Series {
    /// Index of `coeffs[0]`; equals `abs` for an inexact zero, 0 for exact zero.
    pub val: i64,
    /// Leading entry nonzero. Exact: trailing entry nonzero.
    /// Inexact: `val + coeffs.len() == abs`.
    pub coeffs: Vec<u16>,
    /// `None` for exact values, `Some(n)` for values known modulo `t^n`.
    pub abs: Option<i64>,
}

fn min_abs(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => Some(x.min(y)),
    }
}

impl Series {
    pub fn zero() -> Self {
        Series {
            val: 0,
            coeffs: Vec::new(),
            abs: None,
        }
    }

    pub fn big_o(abs: i64) -> Self {
        Series {
            val: abs,
            coeffs: Vec::new(),
            abs: Some(abs),
        }
    }

    pub fn monomial(c: u16, n: i64) -> Self {
        if c == 0 {
            return Series::zero();
        }
        Series {
            val: n,
            coeffs: vec![c],
            abs: None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.abs.is_none()
    }

    /// Valuation of a nonzero value (the lowest known nonzero index).
    pub fn valuation(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.val)
    }

    /// Number of significant terms; `None` for exact values.
    pub fn relative(&self) -> Option<i64> {
        self.abs.map(|a| a - self.val)
    }

    /// Coefficient of `t^n`, or `None` when `n` is beyond the known precision.
    pub fn coeff(&self, n: i64) -> Option<u16> {
        if let Some(a) = self.abs {
            if n >= a {
                return None;
            }
        }
        if n < self.val {
            return Some(0);
        }
        Some(
            self.coeffs
                .get((n - self.val) as usize)
                .copied()
                .unwrap_or(0),
        )
    }

    /// Coefficient of `t^n` for `n` inside the known range.
    #[inline]
    pub fn coeff_known(&self, n: i64) -> u16 {
        self.coeff_unchecked(n)
    }

    #[inline]
    fn coeff_unchecked(&self, n: i64) -> u16 {
        if n < self.val {
            return 0;
        }
        self.coeffs
            .get((n - self.val) as usize)
            .copied()
            .unwrap_or(0)
    }

    /// Build from a dense coefficient run starting at `val`.
    pub fn from_exact(val: i64, mut coeffs: Vec<u16>, cap: i64) -> Self {
        let lead = match coeffs.iter().position(|&c| c != 0) {
            Some(p) => p,
            None => return Series::zero(),
        };
        coeffs.drain(..lead);
        let val = val + lead as i64;
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        if coeffs.len() as i64 > cap {
            coeffs.truncate(cap as usize);
            return Series {
                val,
                coeffs,
                abs: Some(val + cap),
            };
        }
        Series {
            val,
            coeffs,
            abs: None,
        }
    }

    /// Build from coefficients covering `[val, abs)`.
    pub fn from_inexact(val: i64, mut coeffs: Vec<u16>, abs: i64, cap: i64) -> Self {
        coeffs.truncate((abs - val).max(0) as usize);
        let lead = match coeffs.iter().position(|&c| c != 0) {
            Some(p) => p,
            None => return Series::big_o(abs),
        };
        coeffs.drain(..lead);
        let val = val + lead as i64;
        let abs = abs.min(val.saturating_add(cap));
        coeffs.resize((abs - val) as usize, 0);
        Series {
            val,
            coeffs,
            abs: Some(abs),
        }
    }

    pub fn add(&self, other: &Series, cap: i64) -> Series {
        if self.is_zero() && self.is_exact() {
            return other.clone().recap(cap);
        }
        if other.is_zero() && other.is_exact() {
            return self.clone().recap(cap);
        }
        let abs = min_abs(self.abs, other.abs);
        let lo = match (self.valuation(), other.valuation()) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (None, None) => return Series::big_o(abs.expect("inexact zero")),
        };
        let hi = match abs {
            Some(a) => a,
            None => {
                let end = |s: &Series| s.val + s.coeffs.len() as i64;
                end(self).max(end(other))
            }
        };
        if hi <= lo {
            return Series::big_o(hi);
        }
        let coeffs: Vec<u16> = (lo..hi)
            .map(|n| self.coeff_unchecked(n) ^ other.coeff_unchecked(n))
            .collect();
        match abs {
            None => Series::from_exact(lo, coeffs, cap),
            Some(a) => Series::from_inexact(lo, coeffs, a, cap),
        }
    }

    fn recap(self, cap: i64) -> Series {
        match self.abs {
            None if self.coeffs.len() as i64 > cap => {
                Series::from_exact(self.val, self.coeffs, cap)
            }
            Some(a) if !self.is_zero() && a - self.val > cap => {
                Series::from_inexact(self.val, self.coeffs, a, cap)
            }
            _ => self,
        }
    }

    /// Product keeping at most `rel` significant terms when inexact.
    pub fn mul_rel(&self, other: &Series, f: Gf2k, rel: i64) -> Series {
        match (self.is_zero(), other.is_zero()) {
            (true, _) if self.is_exact() => return Series::zero(),
            (_, true) if other.is_exact() => return Series::zero(),
            (true, true) => return Series::big_o(self.val + other.val),
            (true, false) => return Series::big_o(self.val + other.val),
            (false, true) => return Series::big_o(self.val + other.val),
            _ => {}
        }
        let val = self.val + other.val;
        let lim = match (self.relative(), other.relative()) {
            (None, None) => None,
            (Some(r), None) | (None, Some(r)) => Some(r.min(rel)),
            (Some(r), Some(s)) => Some(r.min(s).min(rel)),
        };
        let full = self.coeffs.len() + other.coeffs.len() - 1;
        let len = match lim {
            None => full,
            Some(r) => full.min(r as usize),
        };
        let mut out = vec![0u16; len];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 || i >= len {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate().take(len - i) {
                if b != 0 {
                    out[i + j] ^= f.mul(a, b);
                }
            }
        }
        match lim {
            None => Series::from_exact(val, out, rel),
            Some(r) => Series::from_inexact(val, out, val + r, rel),
        }
    }

    /// Square; doubles the absolute precision (Frobenius).
    pub fn square(&self, f: Gf2k, cap: i64) -> Series {
        if self.is_zero() {
            return match self.abs {
                None => Series::zero(),
                Some(a) => Series::big_o(2 * a),
            };
        }
        let mut out = vec![0u16; 2 * self.coeffs.len()];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[2 * i] = f.square(c);
        }
        match self.abs {
            None => Series::from_exact(2 * self.val, out, cap),
            Some(a) => Series::from_inexact(2 * self.val, out, 2 * a, cap),
        }
    }

    /// Inverse with at most `rel` significant terms. `self` must be nonzero.
    pub fn inv_rel(&self, f: Gf2k, rel: i64) -> Series {
        assert!(!self.is_zero(), "inverse of zero series");
        if self.is_exact() && self.coeffs.len() == 1 {
            return Series::monomial(f.inv(self.coeffs[0]), -self.val);
        }
        let r = match self.relative() {
            None => rel,
            Some(s) => s.min(rel),
        } as usize;
        let c0inv = f.inv(self.coeffs[0]);
        let mut out = vec![0u16; r];
        out[0] = c0inv;
        for n in 1..r {
            let mut acc = 0u16;
            for i in 1..=n.min(self.coeffs.len() - 1) {
                acc ^= f.mul(self.coeffs[i], out[n - i]);
            }
            out[n] = f.mul(acc, c0inv);
        }
        Series::from_inexact(-self.val, out, -self.val + r as i64, rel)
    }

    /// Square root when every odd-index known coefficient vanishes.
    pub fn sqrt(&self, f: Gf2k) -> Option<Series> {
        if self.is_zero() {
            return Some(match self.abs {
                None => Series::zero(),
                Some(a) => Series::big_o(a.div_euclid(2) + a.rem_euclid(2)),
            });
        }
        if self.val.rem_euclid(2) != 0 {
            return None;
        }
        let abs_known = self.abs;
        let mut out = Vec::with_capacity(self.coeffs.len() / 2 + 1);
        for (i, &c) in self.coeffs.iter().enumerate() {
            if i % 2 == 1 {
                if c != 0 {
                    return None;
                }
            } else {
                out.push(f.sqrt(c));
            }
        }
        let val = self.val / 2;
        Some(match abs_known {
            None => Series::from_exact(val, out, i64::MAX),
            Some(a) => {
                let half = a.div_euclid(2) + a.rem_euclid(2);
                out.resize((half - val) as usize, 0);
                Series::from_inexact(val, out, half, i64::MAX)
            }
        })
    }

    /// Formal derivative d/dt.
    pub fn derivative(&self, cap: i64) -> Series {
        if self.is_zero() {
            return match self.abs {
                None => Series::zero(),
                Some(a) => Series::big_o(a - 1),
            };
        }
        let out: Vec<u16> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| {
                if (self.val + i as i64).rem_euclid(2) == 1 {
                    c
                } else {
                    0
                }
            })
            .collect();
        // coefficient of t^(n-1) is n * c_n; the leading term drops if val is even
        let lead = if self.val.rem_euclid(2) == 1 {
            self.coeffs[0]
        } else {
            0
        };
        let mut all = Vec::with_capacity(out.len() + 1);
        all.push(lead);
        all.extend(out);
        match self.abs {
            None => Series::from_exact(self.val - 1, all, cap),
            Some(a) => Series::from_inexact(self.val - 1, all, a - 1, cap),
        }
    }

    /// Drop everything at or beyond `t^abs`.
    pub fn truncate_to(&self, abs: i64, cap: i64) -> Series {
        if let Some(a) = self.abs {
            if a <= abs {
                return self.clone();
            }
        }
        if self.is_zero() {
            return Series::big_o(abs);
        }
        let coeffs: Vec<u16> = (self.val..abs).map(|n| self.coeff_unchecked(n)).collect();
        Series::from_inexact(self.val, coeffs, abs, cap)
    }
}
