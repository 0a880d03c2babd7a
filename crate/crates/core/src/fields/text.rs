//! Element and descriptor text formats.
//!
//! Elements are sums of terms `c*t^n` where `c` is a polynomial in the
//! coefficient-field generator `w`; `O(t^n)` marks a truncated series.
//! Printing produces the canonical form, which parses back to an equal value.

use super::series::Series;
use super::{FieldDescriptor, FieldElement, FieldError, DEFAULT_PRECISION};

const MAX_EXPONENT: i64 = 1 << 20;

pub(super) fn parse_descriptor(text: &str) -> Result<FieldDescriptor, FieldError> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || FieldError::Syntax(format!("bad field descriptor `{text}`"));
    if let Some(inner) = compact
        .strip_prefix("laurent(")
        .and_then(|s| s.strip_suffix(')'))
    {
        let (gf, prec) = match inner.split_once(",prec=") {
            Some((gf, p)) => (gf, p.parse::<u32>().map_err(|_| bad())?),
            None => (inner, DEFAULT_PRECISION),
        };
        let k = parse_gf(gf).ok_or_else(bad)?;
        return FieldDescriptor::laurent(k, prec);
    }
    let k = parse_gf(&compact).ok_or_else(bad)?;
    FieldDescriptor::finite(k)
}

fn parse_gf(s: &str) -> Option<u8> {
    let inner = s.strip_prefix("gf(")?.strip_suffix(')')?;
    if let Some(exp) = inner.strip_prefix("2^") {
        return exp.parse::<u8>().ok();
    }
    let size = inner.parse::<u32>().ok()?;
    if size < 2 || !size.is_power_of_two() {
        return None;
    }
    Some(size.trailing_zeros() as u8)
}

pub(super) fn parse_element(desc: FieldDescriptor, text: &str) -> Result<FieldElement, FieldError> {
    // evaluate without the precision cap, then check the result fits
    let wide = desc.with_precision(u32::MAX);
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        desc: wide,
    };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    match value.series() {
        None => Ok(FieldElement::from_bits(desc, value.finite_bits().unwrap())),
        Some(s) => {
            let prec = desc.precision().unwrap() as i64;
            let span = match s.abs {
                None => s.coeffs.len() as i64,
                Some(_) if s.is_zero() => 0,
                Some(a) => a - s.val,
            };
            if span > prec {
                return Err(FieldError::PrecisionOverflow(format!(
                    "`{text}` spans {span} terms, field precision is {prec}"
                )));
            }
            Ok(FieldElement::from_series(desc, s.clone()))
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    desc: FieldDescriptor,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> FieldError {
        FieldError::Syntax(format!("{msg} at offset {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<FieldElement, FieldError> {
        let mut acc = self.term()?;
        while matches!(self.peek(), Some(b'+') | Some(b'-')) {
            self.pos += 1;
            let rhs = self.term()?;
            acc = &acc + &rhs;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<FieldElement, FieldError> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            let rhs = self.factor()?;
            acc = &acc * &rhs;
        }
        Ok(acc)
    }

    fn integer(&mut self) -> Result<i64, FieldError> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.src.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let n: i64 = s.parse().map_err(|_| self.error("expected an integer"))?;
        if n.abs() > MAX_EXPONENT {
            return Err(FieldError::PrecisionOverflow(format!("exponent {n}")));
        }
        Ok(n)
    }

    fn exponent(&mut self) -> Result<i64, FieldError> {
        if self.eat(b'^') {
            if self.eat(b'(') {
                let n = self.integer()?;
                if !self.eat(b')') {
                    return Err(self.error("expected `)`"));
                }
                return Ok(n);
            }
            self.integer()
        } else {
            Ok(1)
        }
    }

    fn factor(&mut self) -> Result<FieldElement, FieldError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(v)
            }
            Some(b'w') => {
                self.pos += 1;
                if self.desc.degree() < 2 {
                    return Err(self.error("`w` is not defined over GF(2)"));
                }
                let n = self.exponent()?;
                if n < 0 {
                    return Ok(self.desc.generator().inv()?.pow(n.unsigned_abs()));
                }
                Ok(self.desc.generator().pow(n as u64))
            }
            Some(b't') => {
                self.pos += 1;
                if self.desc.is_finite() {
                    return Err(self.error("`t` is not an element of a finite field"));
                }
                let n = self.exponent()?;
                Ok(self.desc.monomial(1, n))
            }
            Some(b'O') => {
                self.pos += 1;
                if self.desc.is_finite() {
                    return Err(self.error("`O(...)` needs a Laurent field"));
                }
                if !self.eat(b'(') || self.peek() != Some(b't') {
                    return Err(self.error("expected `O(t^n)`"));
                }
                self.pos += 1;
                let n = self.exponent()?;
                if !self.eat(b')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(FieldElement::from_series(self.desc, Series::big_o(n)))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(if n % 2 == 0 {
                    self.desc.zero()
                } else {
                    self.desc.one()
                })
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

/// A coefficient-field element as a polynomial in `w`, highest power first.
fn format_coefficient(c: u16) -> String {
    if c == 0 {
        return "0".into();
    }
    let mut parts = Vec::new();
    for bit in (0..16).rev() {
        if (c >> bit) & 1 == 1 {
            parts.push(match bit {
                0 => "1".to_string(),
                1 => "w".to_string(),
                _ => format!("w^{bit}"),
            });
        }
    }
    parts.join("+")
}

fn format_power(n: i64) -> String {
    if n == 1 {
        "t".into()
    } else {
        format!("t^{n}")
    }
}

pub(super) fn format_element(x: &FieldElement) -> String {
    let s = match x.series() {
        None => return format_coefficient(x.finite_bits().unwrap()),
        Some(s) => s,
    };
    let mut terms = Vec::new();
    for (i, &c) in s.coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let n = s.val + i as i64;
        terms.push(if n == 0 {
            format_coefficient(c)
        } else if c == 1 {
            format_power(n)
        } else if c.is_power_of_two() {
            format!("{}*{}", format_coefficient(c), format_power(n))
        } else {
            format!("({})*{}", format_coefficient(c), format_power(n))
        });
    }
    if let Some(a) = s.abs {
        terms.push(format!("O({})", format_power(a)));
    }
    if terms.is_empty() {
        return "0".into();
    }
    terms.join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptors_round_trip() {
        for text in [
            "gf(2)",
            "gf(4)",
            "gf(256)",
            "laurent(gf(2),prec=16)",
            "laurent(gf(8),prec=32)",
        ] {
            let d: FieldDescriptor = text.parse().unwrap();
            assert_eq!(d.to_string(), text);
        }
        let d: FieldDescriptor = "laurent( gf(2^2) )".parse().unwrap();
        assert_eq!(d, FieldDescriptor::laurent(2, DEFAULT_PRECISION).unwrap());
        assert!("gf(6)".parse::<FieldDescriptor>().is_err());
        assert!("gf(512)".parse::<FieldDescriptor>().is_err());
    }

    #[test]
    fn parse_gf4_literal() {
        let d = FieldDescriptor::finite(2).unwrap();
        let x = d.parse("w+1").unwrap();
        assert_eq!(x.finite_bits(), Some(0b11));
        assert_eq!(x.to_string(), "w+1");
        // w^2 reduces to w + 1
        assert_eq!(d.parse("w^2").unwrap(), x);
    }

    #[test]
    fn parse_laurent_literal() {
        let d = FieldDescriptor::laurent(1, 16).unwrap();
        let x = d.parse("t^-1 + 1 + t^2").unwrap();
        assert_eq!(x.valuation(), Some(-1));
        let s = x.series().unwrap();
        assert_eq!(s.coeffs, vec![1, 1, 0, 1]);
        assert!(x.is_exact());
        assert_eq!(x.to_string(), "t^-1 + 1 + t^2");
    }

    #[test]
    fn generator_rejected_over_gf2() {
        let d = FieldDescriptor::finite(1).unwrap();
        assert!(matches!(d.parse("w"), Err(FieldError::Syntax(_))));
        let l = FieldDescriptor::laurent(1, 8).unwrap();
        assert!(matches!(l.parse("w*t"), Err(FieldError::Syntax(_))));
    }

    #[test]
    fn syntax_errors() {
        let d = FieldDescriptor::laurent(2, 8).unwrap();
        for bad in ["", "t^", "(w", "w + + 1", "x", "t^1.5", "O(w)"] {
            assert!(matches!(d.parse(bad), Err(FieldError::Syntax(_))), "{bad}");
        }
        assert!(matches!(
            FieldDescriptor::finite(3).unwrap().parse("t"),
            Err(FieldError::Syntax(_))
        ));
    }

    #[test]
    fn precision_overflow() {
        let d = FieldDescriptor::laurent(1, 4).unwrap();
        assert!(d.parse("1 + t^3").is_ok());
        assert!(matches!(
            d.parse("1 + t^4"),
            Err(FieldError::PrecisionOverflow(_))
        ));
        assert!(matches!(
            d.parse("t^99999999"),
            Err(FieldError::PrecisionOverflow(_))
        ));
    }

    #[test]
    fn inexact_values_round_trip() {
        let d = FieldDescriptor::laurent(2, 8).unwrap();
        let x = d.parse("1 + w*t").unwrap().inv().unwrap();
        let text = x.to_string();
        assert!(text.ends_with("O(t^8)"), "{text}");
        let back = d.parse(&text).unwrap();
        assert_eq!(back.to_string(), text);
        assert_eq!(d.parse("O(t^3)").unwrap().to_string(), "O(t^3)");
    }

    #[test]
    fn coefficient_formatting() {
        let d = FieldDescriptor::laurent(3, 8).unwrap();
        let x = d.parse("(w^2+1)*t^-2 + w*t + w^2").unwrap();
        assert_eq!(x.to_string(), "(w^2+1)*t^-2 + w^2 + w*t");
    }
}
