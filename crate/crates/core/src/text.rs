//! Plain-text syntax for algebra elements and module vectors.
//!
//! The grammar accepted by [`parse_element`]:
//!
//! ```text
//! expr     := sign* term (("+" | "-") sign* term)*
//! term     := factor ("*" factor)*
//! factor   := rational | "(" sign* rational ")" | generator power?
//! power    := "^" "-"? digits
//! rational := digits ("/" digits)?
//! generator := "q" | "f" | "p" | "e" | "h" | "z"
//! ```
//!
//! Whitespace may appear between any two tokens.  Factors multiply in the
//! order written and the result is normalized, so the input does not have
//! to be in normal form: `"p*q"` parses to the element printed back as
//! `"q*p + z"`.
//!
//! [`print_element`] is the inverse presentation: terms in descending
//! graded-lexicographic order, exponents as `q^2` / `q^-1`, and signs
//! folded into the ` + ` / ` - ` separators.  Parsing a printed element
//! always reproduces it exactly.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::element::{AlgebraElement, LocalizationMode};
use crate::error::{Error, Result};
use crate::generator::Generator;
use crate::module::ModuleVector;
use crate::scalar::Scalar;

/// Parse an element of `U` (or of the localization selected by `mode`).
pub fn parse_element(input: &str, mode: LocalizationMode) -> Result<AlgebraElement> {
    let mut p = Parser {
        src: input.as_bytes(),
        pos: 0,
        mode,
    };
    let out = p.parse_expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    mode: LocalizationMode,
}

impl<'a> Parser<'a> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            position: self.pos,
            message: message.into(),
        }
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

    /// Consume `b` if it is the next non-space byte.
    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    /// `sign*` — any run of `+` / `-`, collapsed to a single sign.
    fn parse_signs(&mut self) -> Scalar {
        let mut sign = Scalar::one();
        loop {
            if self.eat(b'-') {
                sign = -sign;
            } else if self.eat(b'+') {
                // no-op
            } else {
                return sign;
            }
        }
    }

    fn parse_expr(&mut self) -> Result<AlgebraElement> {
        let mut acc = AlgebraElement::zero(self.mode);
        let mut first = true;
        loop {
            if !first {
                match self.peek() {
                    Some(b'+') | Some(b'-') => {}
                    None => return Ok(acc),
                    Some(_) => return Err(self.error("expected '+', '-', or end of input")),
                }
            }
            let sign = self.parse_signs();
            let term = self.parse_term()?;
            acc = acc + term.scale(&sign);
            first = false;
        }
    }

    fn parse_term(&mut self) -> Result<AlgebraElement> {
        let mut coeff = Scalar::one();
        let mut word: Vec<(Generator, i64)> = Vec::new();
        loop {
            self.parse_factor(&mut coeff, &mut word)?;
            if !self.eat(b'*') {
                break;
            }
        }
        let mut out = AlgebraElement::one(self.mode);
        for (g, e) in word {
            let power = AlgebraElement::generator_power(g, e, self.mode)?;
            out = out.multiply(&power).expect("modes agree by construction");
        }
        Ok(out.scale(&coeff))
    }

    fn parse_factor(
        &mut self,
        coeff: &mut Scalar,
        word: &mut Vec<(Generator, i64)>,
    ) -> Result<()> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let sign = self.parse_signs();
                let value = self.parse_rational()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                *coeff *= sign * value;
                Ok(())
            }
            Some(b) if b.is_ascii_digit() => {
                let value = self.parse_rational()?;
                *coeff *= value;
                Ok(())
            }
            Some(b) => match Generator::from_symbol(b as char) {
                Some(g) => {
                    self.pos += 1;
                    let exponent = self.parse_power()?;
                    word.push((g, exponent));
                    Ok(())
                }
                None => Err(self.error(format!(
                    "expected a number, '(', or a generator (one of q f p e h z), found '{}'",
                    b as char
                ))),
            },
            None => Err(self.error("expected a factor, found end of input")),
        }
    }

    /// Optional `^` exponent; bare generators have exponent 1.
    fn parse_power(&mut self) -> Result<i64> {
        if !self.eat(b'^') {
            return Ok(1);
        }
        let negative = self.eat(b'-');
        let digits = self.parse_digits("exponent")?;
        let magnitude: i64 = digits
            .parse()
            .map_err(|_| self.error("exponent out of range"))?;
        Ok(if negative { -magnitude } else { magnitude })
    }

    fn parse_rational(&mut self) -> Result<Scalar> {
        let numerator = self.parse_digits("number")?;
        let text = if self.eat(b'/') {
            let denominator = self.parse_digits("denominator")?;
            if denominator.bytes().all(|b| b == b'0') {
                return Err(self.error("denominator must be non-zero"));
            }
            format!("{numerator}/{denominator}")
        } else {
            numerator
        };
        text.parse()
            .map_err(|_| self.error("malformed number"))
    }

    fn parse_digits(&mut self, what: &str) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error(format!("expected digits of a {what}")));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos])
            .expect("digits are ASCII")
            .to_string())
    }
}

/// Render an element in the same syntax [`parse_element`] accepts.
///
/// Terms are emitted in descending graded-lexicographic monomial order;
/// the zero element prints as `"0"`.
pub fn print_element(a: &AlgebraElement) -> String {
    if a.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (mono, coeff) in a.terms().rev() {
        let negative = coeff.is_negative();
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let magnitude = coeff.abs();
        let factors: Vec<String> = mono
            .to_word()
            .into_iter()
            .map(|(g, e)| {
                if e == 1 {
                    g.symbol().to_string()
                } else {
                    format!("{}^{}", g.symbol(), e)
                }
            })
            .collect();
        if factors.is_empty() {
            out.push_str(&magnitude.to_string());
        } else {
            if !magnitude.is_one() {
                out.push_str(&magnitude.to_string());
                out.push('*');
            }
            out.push_str(&factors.join("*"));
        }
    }
    out
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_element(self))
    }
}

impl Serialize for AlgebraElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&print_element(self))
    }
}

/// Render a module vector as `c·v(i,j)` terms joined with signed
/// separators, in ascending index order; coefficients are always explicit
/// (including `1`), and the zero vector prints as `"0"`.
pub fn format_module_vector(v: &ModuleVector) -> String {
    if v.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, coeff) in v.terms() {
        let negative = coeff.is_negative();
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        out.push_str(&format!("{}·v({},{})", coeff.abs(), idx.i, idx.j));
    }
    out
}

impl fmt::Display for ModuleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_module_vector(self))
    }
}

impl Serialize for ModuleVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&format_module_vector(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::BasisIndex;
    use LocalizationMode::{AtQ, None as Plain};

    fn parsed(s: &str) -> AlgebraElement {
        parse_element(s, Plain).unwrap()
    }

    #[test]
    fn parses_and_normalizes_products() {
        // p·q = q·p + z.
        assert_eq!(print_element(&parsed("p*q")), "q*p + z");
        // The defining relation collapses to zero.
        assert_eq!(print_element(&parsed("p*q - q*p - z")), "0");
    }

    #[test]
    fn parses_coefficients_in_all_positions() {
        assert_eq!(print_element(&parsed("2*q*3")), "6*q");
        assert_eq!(print_element(&parsed("1/2*h")), "1/2*h");
        assert_eq!(print_element(&parsed("(-1/2)*h")), "-1/2*h");
        assert_eq!(print_element(&parsed("q*(-2)*f")), "-2*q*f");
        assert_eq!(print_element(&parsed("7")), "7");
        assert_eq!(print_element(&parsed("- 3 + 3")), "0");
    }

    #[test]
    fn parses_exponents() {
        assert_eq!(print_element(&parsed("q^3")), "q^3");
        assert_eq!(print_element(&parsed("q^2*q")), "q^3");
        let localized = parse_element("q^-2 * e", AtQ).unwrap();
        assert_eq!(print_element(&localized), "q^-2*e");
    }

    #[test]
    fn repeated_generators_collapse() {
        assert_eq!(print_element(&parsed("q*p*q")), "q^2*p + q*z");
    }

    #[test]
    fn sign_runs_collapse() {
        assert_eq!(print_element(&parsed("--q")), "q");
        assert_eq!(print_element(&parsed("-+-+q - -q")), "2*q");
    }

    #[test]
    fn print_orders_terms_descending() {
        let a = parsed("z + q + h + q*p + 1");
        assert_eq!(print_element(&a), "q*p + q + h + z + 1");
    }

    #[test]
    fn print_handles_unit_and_negative_coefficients() {
        assert_eq!(print_element(&parsed("0*q")), "0");
        assert_eq!(print_element(&parsed("-q - 1")), "-q - 1");
        assert_eq!(print_element(&parsed("h - 2*e")), "-2*e + h");
    }

    #[test]
    fn localized_inverse_identities_print_in_normal_form() {
        let pq = parse_element("p * q^-1", AtQ).unwrap();
        assert_eq!(print_element(&pq), "q^-1*p - q^-2*z");
        let eq = parse_element("e * q^-1", AtQ).unwrap();
        assert_eq!(print_element(&eq), "q^-1*e - q^-2*p + q^-3*z");
    }

    #[test]
    fn negative_exponent_needs_localization() {
        let err = parse_element("q^-1", Plain).unwrap_err();
        assert!(matches!(err, Error::IllegalNegativeExponent { .. }));
        let err = parse_element("f^-1", AtQ).unwrap_err();
        assert!(matches!(
            err,
            Error::IllegalNegativeExponent {
                generator: Generator::F,
                ..
            }
        ));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_element("q + ", Plain).unwrap_err() {
            Error::Syntax { position, .. } => assert_eq!(position, 4),
            other => panic!("unexpected error {other:?}"),
        }
        match parse_element("q ** p", Plain).unwrap_err() {
            Error::Syntax { position, .. } => assert_eq!(position, 3),
            other => panic!("unexpected error {other:?}"),
        }
        match parse_element("x", Plain).unwrap_err() {
            Error::Syntax { position, message } => {
                assert_eq!(position, 0);
                assert!(message.contains("generator"));
            }
            other => panic!("unexpected error {other:?}"),
        }
        match parse_element("q^", Plain).unwrap_err() {
            Error::Syntax { position, .. } => assert_eq!(position, 2),
            other => panic!("unexpected error {other:?}"),
        }
        match parse_element("1/0", Plain).unwrap_err() {
            Error::Syntax { position, .. } => assert_eq!(position, 3),
            other => panic!("unexpected error {other:?}"),
        }
        assert!(matches!(
            parse_element("", Plain).unwrap_err(),
            Error::Syntax { .. }
        ));
    }

    #[test]
    fn print_parse_round_trip_on_samples() {
        let samples = [
            "q*p + z",
            "-2*e + h - 1",
            "1/2*q^2*f*p - 3*h^2 + z",
            "q^4",
            "0",
        ];
        for s in samples {
            let a = parsed(s);
            assert_eq!(print_element(&parse_element(&print_element(&a), Plain).unwrap()), print_element(&a));
        }
    }

    #[test]
    fn module_vector_formatting() {
        assert_eq!(format_module_vector(&ModuleVector::zero()), "0");
        let v = ModuleVector::from_terms([
            (BasisIndex::new(-1, 0), Scalar::new(1, 2)),
            (BasisIndex::new(2, 1), Scalar::new(-3, 1)),
            (BasisIndex::new(0, 0), Scalar::one()),
        ]);
        assert_eq!(
            format_module_vector(&v),
            "1/2·v(-1,0) + 1·v(0,0) - 3·v(2,1)"
        );
    }

    #[test]
    fn element_serializes_as_its_text_form() {
        let a = parsed("p*q");
        assert_eq!(serde_json::to_string(&a).unwrap(), "\"q*p + z\"");
    }
}
