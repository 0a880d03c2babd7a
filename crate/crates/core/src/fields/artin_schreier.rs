//! The Artin–Schreier map ℘(x) = x^2 + x: solving, reduction modulo ℘(F),
//! and the residue pairing used to detect non-trivial classes.

use super::series::Series;
use super::{FieldDescriptor, FieldElement, FieldError};

/// Why `x^2 + x = a` has no solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Obstruction {
    /// A pole of odd order survives pole reduction.
    OddPole,
    /// The constant term has trace one over GF(2).
    Trace,
}

#[derive(Clone, Debug, PartialEq)]
pub enum AsSolution {
    Root(FieldElement),
    NoSolution(Obstruction),
}

impl AsSolution {
    pub fn root(self) -> Option<FieldElement> {
        match self {
            AsSolution::Root(x) => Some(x),
            AsSolution::NoSolution(_) => None,
        }
    }
}

pub(super) fn solve(a: &FieldElement) -> Result<AsSolution, FieldError> {
    let (rep, x) = reduce(a)?;
    if rep.is_zero() {
        return Ok(AsSolution::Root(x));
    }
    let odd_pole = match rep.valuation() {
        Some(v) => v < 0,
        None => false,
    };
    Ok(AsSolution::NoSolution(if odd_pole {
        Obstruction::OddPole
    } else {
        Obstruction::Trace
    }))
}

/// Returns `(rep, x)` with `a = rep + ℘(x)`; `rep` is the canonical
/// representative: odd-order poles plus `0` or the fixed trace-one constant.
pub(super) fn reduce(a: &FieldElement) -> Result<(FieldElement, FieldElement), FieldError> {
    let desc = a.descriptor();
    let gf = desc.coefficients();
    if let Some(c) = a.finite_bits() {
        return Ok(if gf.trace(c) == 0 {
            (
                desc.zero(),
                desc.constant(gf.artin_schreier_root(c).unwrap()),
            )
        } else {
            let tau = gf.trace_one();
            (
                desc.constant(tau),
                desc.constant(gf.artin_schreier_root(c ^ tau).unwrap()),
            )
        });
    }
    let s = a.series().expect("Laurent element");
    let cap = desc.precision().unwrap() as i64;
    if let Some(abs) = s.abs {
        if abs < 1 {
            return Err(FieldError::PrecisionLoss(format!(
                "℘-reduction needs the constant term; known only modulo t^{abs}"
            )));
        }
    }
    if s.is_zero() {
        let x = match s.abs {
            None => Series::zero(),
            Some(abs) => Series::big_o(abs),
        };
        return Ok((desc.zero(), FieldElement::from_series(desc, x)));
    }

    // nonpositive part: indices val..=0
    let lo = s.val.min(0);
    let mut work: Vec<u16> = (lo..=0).map(|n| s.coeff(n).unwrap()).collect();
    let idx = |n: i64| (n - lo) as usize;
    let mut x_low = vec![0u16; work.len()];
    for n in lo..0 {
        let c = work[idx(n)];
        if c != 0 && n % 2 == 0 {
            let m = n / 2;
            let r = gf.sqrt(c);
            work[idx(n)] = 0;
            work[idx(m)] ^= r;
            x_low[idx(m)] ^= r;
        }
    }
    let c0 = work[idx(0)];
    let (rep0, x0) = if gf.trace(c0) == 0 {
        (0, gf.artin_schreier_root(c0).unwrap())
    } else {
        let tau = gf.trace_one();
        (tau, gf.artin_schreier_root(c0 ^ tau).unwrap())
    };
    work[idx(0)] = rep0;
    x_low[idx(0)] = x0;
    let rep = Series::from_exact(lo, work, i64::MAX);
    let x_low = Series::from_exact(lo, x_low, i64::MAX);

    // positive part: y^2 + y = p with y_n = p_n + y_{n/2}^2 (n even)
    let (limit, exact_end) = match s.abs {
        Some(abs) => (abs, None),
        None => {
            let end = s.val + s.coeffs.len() as i64;
            let vp = (1..end).find(|&n| s.coeff(n) != Some(0)).unwrap_or(end);
            let vx = x_low.valuation().map_or(vp, |v| v.min(vp));
            ((vx + cap).max(end), Some(end - 1))
        }
    };
    let mut y = vec![0u16; limit.max(1) as usize];
    for n in 1..limit {
        let mut c = s.coeff(n).unwrap_or(0);
        if n % 2 == 0 {
            c ^= gf.square(y[(n / 2) as usize]);
        }
        y[n as usize] = c;
    }
    let y = match exact_end {
        Some(d) if d >= 1 => {
            // y is a polynomial iff y_m = 0 for d/2 < m <= d
            let finite = ((d / 2 + 1)..=d).all(|m| y[m as usize] == 0);
            if finite {
                y.truncate((d + 1) as usize);
                Series::from_exact(0, y, i64::MAX)
            } else {
                Series::from_inexact(0, y, limit, i64::MAX)
            }
        }
        Some(_) => Series::zero(),
        None => Series::from_inexact(0, y, limit, i64::MAX),
    };
    let x = x_low.add(&y, cap);
    if rep.coeffs.len() as i64 > cap {
        return Err(FieldError::PrecisionLoss(
            "canonical representative exceeds the field precision".into(),
        ));
    }
    Ok((
        FieldElement::from_series(desc, rep),
        FieldElement::from_series(desc, x),
    ))
}

/// Whether `a` lies in ℘(F). Only the pole part and the constant term are
/// inspected; positive-valuation terms are always in the image.
pub(super) fn in_image(a: &FieldElement) -> Result<bool, FieldError> {
    let gf = a.descriptor().coefficients();
    if let Some(c) = a.finite_bits() {
        return Ok(gf.trace(c) == 0);
    }
    let s = a.series().expect("Laurent element");
    if let Some(abs) = s.abs {
        if abs < 1 {
            return Err(FieldError::PrecisionLoss(format!(
                "℘-membership needs the constant term; known only modulo t^{abs}"
            )));
        }
    }
    if s.is_zero() || s.val > 0 {
        return Ok(true);
    }
    let lo = s.val;
    let mut work: Vec<u16> = (lo..=0).map(|n| s.coeff_known(n)).collect();
    for n in lo..0 {
        let c = work[(n - lo) as usize];
        if c == 0 {
            continue;
        }
        if n % 2 != 0 {
            return Ok(false);
        }
        work[(n / 2 - lo) as usize] ^= gf.sqrt(c);
    }
    Ok(gf.trace(work[(-lo) as usize]) == 0)
}

/// `Tr_{GF(2^k)/GF(2)}` of the `t^{-1}` coefficient of `a * (db/dt) / b`.
///
/// Over a finite field the differential vanishes and the pairing is 0.
pub fn residue_and_trace(a: &FieldElement, b: &FieldElement) -> Result<u8, FieldError> {
    if a.descriptor() != b.descriptor() {
        return Err(FieldError::DescriptorMismatch(
            a.descriptor(),
            b.descriptor(),
        ));
    }
    if b.is_zero() {
        return Err(FieldError::DivisionByZero);
    }
    let desc: FieldDescriptor = a.descriptor();
    if desc.is_finite() || a.is_zero() {
        return Ok(0);
    }
    let cap = desc.precision().unwrap() as i64;
    let db = b.derivative();
    if db.is_zero() && db.is_exact() {
        return Ok(0);
    }
    let va = a.valuation().unwrap();
    let mut rel = cap;
    loop {
        let inv_b = b.inv_rel(rel)?;
        let w = db.mul_rel(&inv_b, rel);
        let gf = desc.coefficients();
        let (sa, sw) = (a.series().unwrap(), w.series().unwrap());
        let vw = match sw.valuation() {
            Some(v) => v,
            None => match sw.abs {
                None => return Ok(0),
                Some(abs) if abs + va > -1 => return Ok(0),
                Some(_) => {
                    return Err(FieldError::PrecisionLoss(
                        "logarithmic derivative too imprecise".into(),
                    ))
                }
            },
        };
        // coefficient of t^-1 in a * w = sum over i of a_i w_{-1-i}
        let needed_w = -1 - va;
        if let Some(abs) = sw.abs {
            if abs <= needed_w {
                if b.is_exact() && db.is_exact() && rel < cap + 4096 {
                    rel += needed_w - abs + 1;
                    continue;
                }
                return Err(FieldError::PrecisionLoss(format!(
                    "residue needs d(log b) modulo t^{}",
                    needed_w + 1
                )));
            }
        }
        let mut acc = 0u16;
        for i in va..=(-1 - vw) {
            let ai = sa.coeff(i).ok_or_else(|| {
                FieldError::PrecisionLoss(format!("residue needs a modulo t^{}", i + 1))
            })?;
            if ai != 0 {
                acc ^= gf.mul(ai, sw.coeff(-1 - i).unwrap());
            }
        }
        return Ok(gf.trace(acc));
    }
}
