//! Text form of polynomials, e.g. `t^6+t^4+t^2+t+1`.
//!
//! Terms run from highest to lowest degree, joined by `+`. A coefficient equal
//! to 1 is omitted (except on the constant term). Other coefficients are a
//! decimal integer over a prime field or the bracketed coefficient vector
//! `[c0,c1,...]` (constant term first) over a non-prime field, followed by `*`
//! when a power of `t` follows: `2*t^3`, `t^6+t^2+t+[0,1]`. The zero
//! polynomial is `0`.

use std::fmt;

use super::UPoly;
use crate::error::{Error, Result};
use crate::ffield::{FElt, FieldDesc};

fn format_coeff(field: &FieldDesc, c: FElt) -> String {
    if field.degree() == 1 {
        c.value().to_string()
    } else {
        let parts: Vec<String> = field.coeffs(c).iter().map(|d| d.to_string()).collect();
        format!("[{}]", parts.join(","))
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let field = self.field();
        let mut first = true;
        for (k, &c) in self.coeffs().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            let is_one = c == field.one();
            match (k, is_one) {
                (0, true) => write!(f, "1")?,
                (0, false) => write!(f, "{}", format_coeff(field, c))?,
                (_, false) => write!(f, "{}*", format_coeff(field, c))?,
                (_, true) => {}
            }
            match k {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        Ok(())
    }
}

fn bad(s: &str, why: &str) -> Error {
    Error::domain(format!("cannot parse polynomial term '{s}': {why}"))
}

fn parse_coeff(field: &FieldDesc, s: &str) -> Result<FElt> {
    if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
        let digits = inner
            .split(',')
            .map(|d| d.trim().parse::<u64>().map_err(|_| bad(s, "bad vector entry")))
            .collect::<Result<Vec<_>>>()?;
        field.from_coeffs(&digits)
    } else {
        let v: u64 = s.parse().map_err(|_| bad(s, "bad coefficient"))?;
        if v >= field.characteristic() {
            return Err(bad(s, "coefficient not reduced"));
        }
        Ok(field.from_int(v as i64))
    }
}

impl UPoly {
    /// Parses the text form produced by `Display`.
    pub fn parse(field: &FieldDesc, text: &str) -> Result<UPoly> {
        let text: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if text == "0" {
            return Ok(UPoly::zero(field));
        }
        let mut coeffs: Vec<FElt> = Vec::new();
        // split on '+' outside brackets
        let mut terms = Vec::new();
        let mut depth = 0;
        let mut start = 0;
        for (i, ch) in text.char_indices() {
            match ch {
                '[' => depth += 1,
                ']' => depth -= 1,
                '+' if depth == 0 => {
                    terms.push(&text[start..i]);
                    start = i + 1;
                }
                _ => {}
            }
        }
        terms.push(&text[start..]);
        for term in terms {
            if term.is_empty() {
                return Err(bad(term, "empty term"));
            }
            let (coeff, power) = match term.find('t') {
                None => (parse_coeff(field, term)?, 0usize),
                Some(pos) => {
                    let head = &term[..pos];
                    let coeff = if head.is_empty() {
                        field.one()
                    } else {
                        let head = head.strip_suffix('*').ok_or_else(|| bad(term, "missing '*'"))?;
                        parse_coeff(field, head)?
                    };
                    let tail = &term[pos + 1..];
                    let power = if tail.is_empty() {
                        1
                    } else {
                        tail.strip_prefix('^')
                            .and_then(|e| e.parse::<usize>().ok())
                            .ok_or_else(|| bad(term, "bad exponent"))?
                    };
                    (coeff, power)
                }
            };
            if coeffs.len() <= power {
                coeffs.resize(power + 1, field.zero());
            }
            coeffs[power] = field.add(coeffs[power], coeff);
        }
        UPoly::new(field, coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::make_field;
    use proptest::prelude::*;

    #[test]
    fn formats() {
        let f2 = make_field(2, 1).unwrap();
        let p = UPoly::from_values(&f2, &[1, 1, 1, 0, 1, 0, 1]);
        assert_eq!(p.to_string(), "t^6+t^4+t^2+t+1");
        assert_eq!(UPoly::zero(&f2).to_string(), "0");
        let f4 = make_field(2, 2).unwrap();
        let p = UPoly::from_values(&f4, &[2, 1, 1, 0, 0, 0, 1]);
        assert_eq!(p.to_string(), "t^6+t^2+t+[0,1]");
        let p = UPoly::from_values(&f4, &[1, 3]);
        assert_eq!(p.to_string(), "[1,1]*t+1");
        let f5 = make_field(5, 1).unwrap();
        assert_eq!(UPoly::from_values(&f5, &[4, 0, 2]).to_string(), "2*t^2+4");
    }

    #[test]
    fn parse_errors() {
        let f2 = make_field(2, 1).unwrap();
        assert!(UPoly::parse(&f2, "t^").is_err());
        assert!(UPoly::parse(&f2, "2*t").is_err());
        assert!(UPoly::parse(&f2, "t+").is_err());
        assert!(UPoly::parse(&f2, "[1,0]").is_err());
        assert_eq!(
            UPoly::parse(&f2, "t^6 + t + 1").unwrap(),
            UPoly::from_values(&f2, &[1, 1, 0, 0, 0, 0, 1])
        );
    }

    proptest! {
        #[test]
        fn display_parse_roundtrip(
            key in prop::sample::select(vec![(2u64, 1u32), (2, 2), (2, 3), (3, 1), (3, 2), (7, 1)]),
            raw in prop::collection::vec(any::<u64>(), 0..9),
        ) {
            let f = make_field(key.0, key.1).unwrap();
            let values: Vec<u64> = raw.iter().map(|v| v % f.order()).collect();
            let p = UPoly::from_values(&f, &values);
            prop_assert_eq!(UPoly::parse(&f, &p.to_string()).unwrap(), p);
        }
    }
}
