//! Class expressions: `D`, `-D`, `3D-E`, `-(D+2E)`, `2*e1`, `0`.

use std::iter::Peekable;
use std::str::Chars;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{json::VectorJson, LatticeVector};
use crate::error::{Error, Result};

/// Parses a class expression into coordinates with respect to `labels`.
pub fn parse_class(expr: &str, labels: &[String]) -> Result<LatticeVector> {
    let compact: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(parse_err(expr, "empty class expression"));
    }
    let mut p = Parser { input: expr, chars: compact.chars().peekable(), labels };
    let v = p.sum()?;
    if let Some(c) = p.chars.next() {
        return Err(parse_err(expr, &format!("unexpected `{c}`")));
    }
    Ok(v)
}

/// Parses a vector given as a JSON integer array, a JSON label map, or a class expression.
pub fn parse_vector(text: &str, labels: &[String]) -> Result<LatticeVector> {
    let t = text.trim();
    if t.starts_with('[') || t.starts_with('{') {
        let json: VectorJson =
            serde_json::from_str(t).map_err(|e| parse_err(text, &e.to_string()))?;
        json.resolve(labels)
    } else {
        parse_class(t, labels)
    }
}

/// Formats a vector as a class expression, e.g. `3D-E`; the zero vector is `0`.
pub fn format_class(v: &LatticeVector, labels: &[String]) -> String {
    let mut out = String::new();
    for (c, label) in v.coords().iter().zip(labels) {
        if c.is_zero() {
            continue;
        }
        if c.is_negative() {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        let a = c.abs();
        if !a.is_one() {
            out.push_str(&a.to_string());
        }
        out.push_str(label);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn parse_err(input: &str, reason: &str) -> Error {
    Error::Parse { input: input.to_string(), reason: reason.to_string() }
}

struct Parser<'a> {
    input: &'a str,
    chars: Peekable<Chars<'a>>,
    labels: &'a [String],
}

impl Parser<'_> {
    fn sum(&mut self) -> Result<LatticeVector> {
        let mut acc = LatticeVector::zero(self.labels.len());
        let mut first = true;
        loop {
            let negative = match self.chars.peek() {
                Some('+') => {
                    self.chars.next();
                    false
                }
                Some('-') => {
                    self.chars.next();
                    true
                }
                _ if first => false,
                _ => return Ok(acc),
            };
            first = false;
            let t = self.term()?;
            acc = if negative { &acc - &t } else { &acc + &t };
        }
    }

    fn term(&mut self) -> Result<LatticeVector> {
        let mut digits = String::new();
        while let Some(c) = self.chars.peek().copied().filter(char::is_ascii_digit) {
            digits.push(c);
            self.chars.next();
        }
        let coeff: Option<BigInt> = if digits.is_empty() { None } else { Some(digits.parse().expect("ascii digits")) };
        if coeff.is_some() && self.chars.peek() == Some(&'*') {
            self.chars.next();
        }
        match (coeff, self.chars.peek()) {
            (Some(k), Some(c)) if c.is_alphabetic() || *c == '(' => Ok(self.factor()?.scale(&k)),
            (Some(k), _) => {
                // a bare integer is only meaningful as zero
                if k.is_zero() {
                    Ok(LatticeVector::zero(self.labels.len()))
                } else {
                    Err(parse_err(self.input, "bare nonzero integer is not a class"))
                }
            }
            (None, _) => self.factor(),
        }
    }

    fn factor(&mut self) -> Result<LatticeVector> {
        match self.chars.peek() {
            Some('(') => {
                self.chars.next();
                let v = self.sum()?;
                if self.chars.next() != Some(')') {
                    return Err(parse_err(self.input, "missing `)`"));
                }
                Ok(v)
            }
            Some(c) if c.is_alphabetic() => {
                let mut name = String::new();
                while let Some(c) = self.chars.peek().copied().filter(|c| c.is_alphanumeric() || *c == '_') {
                    name.push(c);
                    self.chars.next();
                }
                let idx = self.labels.iter().position(|l| *l == name).ok_or(Error::UnknownLabel(name))?;
                Ok(LatticeVector::basis(self.labels.len(), idx))
            }
            Some(c) => Err(parse_err(self.input, &format!("unexpected `{c}`"))),
            None => Err(parse_err(self.input, "unexpected end of expression")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn de() -> Vec<String> {
        vec!["D".into(), "E".into()]
    }

    #[test]
    fn parses_expressions() {
        let l = de();
        assert_eq!(parse_class("D", &l).unwrap(), LatticeVector::from_i64(&[1, 0]));
        assert_eq!(parse_class("-D", &l).unwrap(), LatticeVector::from_i64(&[-1, 0]));
        assert_eq!(parse_class("D + E", &l).unwrap(), LatticeVector::from_i64(&[1, 1]));
        assert_eq!(parse_class("-(D+2E)", &l).unwrap(), LatticeVector::from_i64(&[-1, -2]));
        assert_eq!(parse_class("3D-E", &l).unwrap(), LatticeVector::from_i64(&[3, -1]));
        assert_eq!(parse_class("2*(D-E)+E", &l).unwrap(), LatticeVector::from_i64(&[2, -1]));
        assert_eq!(parse_class("0", &l).unwrap(), LatticeVector::from_i64(&[0, 0]));
    }

    #[test]
    fn rejects_bad_expressions() {
        let l = de();
        assert_eq!(parse_class("F", &l), Err(Error::UnknownLabel("F".into())));
        assert!(parse_class("D+", &l).is_err());
        assert!(parse_class("(D", &l).is_err());
        assert!(parse_class("3", &l).is_err());
        assert!(parse_class("", &l).is_err());
    }

    #[test]
    fn formats_classes() {
        let l = de();
        assert_eq!(format_class(&LatticeVector::from_i64(&[3, -1]), &l), "3D-E");
        assert_eq!(format_class(&LatticeVector::from_i64(&[-1, -2]), &l), "-D-2E");
        assert_eq!(format_class(&LatticeVector::from_i64(&[0, 0]), &l), "0");
        assert_eq!(format_class(&LatticeVector::from_i64(&[0, 1]), &l), "E");
    }

    #[test]
    fn vector_literals() {
        let l = de();
        assert_eq!(parse_vector("[1, -2]", &l).unwrap(), LatticeVector::from_i64(&[1, -2]));
        assert_eq!(parse_vector(r#"{"D": 1, "E": -2}"#, &l).unwrap(), LatticeVector::from_i64(&[1, -2]));
        assert_eq!(parse_vector("D-2E", &l).unwrap(), LatticeVector::from_i64(&[1, -2]));
    }
}
