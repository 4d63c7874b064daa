//! Ket-expression parser.
//!
//! ```text
//! expr   := [sign] term { sign term }
//! term   := [ coeff [ "*" ] ] ket
//! ket    := "|" bit+ ">"
//! coeff  := number [ "i" ] | "i" | "(" [sign] number [ "i" ] [ sign [ number ] "i" ] ")"
//! number := int | int "/" int | decimal
//! ```
//!
//! Whitespace between tokens is ignored. Integer and `p/q` literals keep the
//! state exact; a decimal literal anywhere makes the whole state float.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::numkit::exact::GaussRational;
use crate::numkit::C64;
use crate::scalar::Scalar;
use crate::tensor::{StateVector, TensorError};

/// Widest ket accepted; `2^MAX_QUBITS` amplitudes are allocated.
pub const MAX_QUBITS: usize = 24;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KetError {
    #[error("syntax error at position {position}: expected {expected}, found {found}")]
    Syntax { position: usize, expected: String, found: String },
    #[error("ket at position {position} has {found} qubits, expected {expected}")]
    InconsistentWidth { position: usize, expected: usize, found: usize },
    #[error("kets wider than {MAX_QUBITS} qubits are not supported")]
    TooWide,
    #[error("the expression is the zero state")]
    ZeroState,
    #[error("unknown state {0:?}; run `slocckit catalog` for the list")]
    UnknownName(String),
    #[error("{name} takes {expected} parameter(s), got {found}")]
    WrongParameterCount { name: String, expected: usize, found: usize },
    #[error("invalid parameter for {name}: {reason}")]
    InvalidParameter { name: String, reason: String },
    #[error(transparent)]
    State(#[from] TensorError),
}

/// Parsed but not yet evaluated expression: `(coefficient, basis label)` terms
/// in source order.
#[derive(Debug, Clone, PartialEq)]
pub struct KetExpression {
    pub terms: Vec<(Scalar, String)>,
}

impl KetExpression {
    pub fn num_qubits(&self) -> usize {
        self.terms.first().map_or(0, |(_, l)| l.len())
    }

    /// Merges duplicate labels and builds the state vector.
    pub fn evaluate(&self) -> Result<StateVector, KetError> {
        let n = self.num_qubits();
        let mut merged: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (c, label) in &self.terms {
            let idx = usize::from_str_radix(label, 2).expect("validated bit string");
            let entry = merged.entry(idx).or_insert_with(Scalar::zero);
            *entry = &*entry + c;
        }
        let mut amps = vec![Scalar::zero(); 1 << n];
        let mut exact = true;
        for (idx, c) in merged {
            exact &= c.is_exact();
            amps[idx] = c;
        }
        if !exact {
            amps = amps.iter().map(|s| Scalar::float(s.value())).collect();
        }
        StateVector::new(n, amps).map_err(|e| match e {
            TensorError::ZeroState => KetError::ZeroState,
            other => KetError::State(other),
        })
    }
}

pub fn parse_expression(text: &str) -> Result<KetExpression, KetError> {
    let mut p = Parser::new(text);
    let expr = p.expression()?;
    Ok(expr)
}

/// Parses and evaluates a ket expression.
pub fn parse_state(text: &str) -> Result<StateVector, KetError> {
    parse_expression(text)?.evaluate()
}

/// Parses a single coefficient literal such as `3`, `-1/2`, `(1+2i)` or `i`.
pub fn parse_scalar(text: &str) -> Result<Scalar, KetError> {
    let mut p = Parser::new(text);
    p.skip_ws();
    let negative = p.sign_opt();
    let value = p.coeff()?;
    p.skip_ws();
    p.expect_end()?;
    Ok(if negative { -&value } else { value })
}

/// Renders a state as an expression that [`parse_state`] reads back to the same
/// amplitudes (exactly for exact states, bit-for-bit for float states).
pub fn render(state: &StateVector) -> String {
    let n = state.num_qubits();
    let mut out = String::new();
    for i in 0..state.amplitudes().len() {
        let a = state.amplitude(i);
        if a.is_zero() {
            continue;
        }
        if !out.is_empty() {
            out.push_str(" + ");
        }
        out.push_str(&format!("{a}|{i:0n$b}>"));
    }
    out
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    width: Option<usize>,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0, width: None }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn error<T>(&self, expected: &str) -> Result<T, KetError> {
        let found = match self.peek() {
            Some(c) => format!("{c:?}"),
            None => "end of input".to_string(),
        };
        Err(KetError::Syntax { position: self.pos, expected: expected.to_string(), found })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect_end(&self) -> Result<(), KetError> {
        if self.peek().is_some() {
            return self.error("end of input");
        }
        Ok(())
    }

    /// Consumes an optional `+`/`-`; returns true for `-`.
    fn sign_opt(&mut self) -> bool {
        if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        }
    }

    fn expression(&mut self) -> Result<KetExpression, KetError> {
        let mut terms = Vec::new();
        self.skip_ws();
        if self.peek().is_none() {
            return self.error("a term");
        }
        let mut negative = self.sign_opt();
        loop {
            self.skip_ws();
            let (c, label) = self.term()?;
            terms.push((if negative { -&c } else { c }, label));
            self.skip_ws();
            match self.peek() {
                None => break,
                Some('+') => {
                    self.bump();
                    negative = false;
                }
                Some('-') => {
                    self.bump();
                    negative = true;
                }
                Some(_) => return self.error("'+', '-' or end of input"),
            }
        }
        Ok(KetExpression { terms })
    }

    fn term(&mut self) -> Result<(Scalar, String), KetError> {
        let coeff = if self.peek() == Some('|') {
            Scalar::one()
        } else {
            let c = self.coeff()?;
            self.skip_ws();
            if self.eat('*') {
                self.skip_ws();
            }
            c
        };
        self.skip_ws();
        let label = self.ket()?;
        Ok((coeff, label))
    }

    fn ket(&mut self) -> Result<String, KetError> {
        let start = self.pos;
        if !self.eat('|') {
            return self.error("'|'");
        }
        let mut bits = String::new();
        while let Some(c @ ('0' | '1')) = self.peek() {
            bits.push(c);
            self.bump();
        }
        if bits.is_empty() {
            return self.error("'0' or '1'");
        }
        if !self.eat('>') {
            return self.error("'0', '1' or '>'");
        }
        if bits.len() > MAX_QUBITS {
            return Err(KetError::TooWide);
        }
        match self.width {
            None => self.width = Some(bits.len()),
            Some(w) if w != bits.len() => {
                return Err(KetError::InconsistentWidth { position: start, expected: w, found: bits.len() })
            }
            _ => {}
        }
        Ok(bits)
    }

    fn coeff(&mut self) -> Result<Scalar, KetError> {
        match self.peek() {
            Some('(') => {
                self.bump();
                self.skip_ws();
                let negative = self.sign_opt();
                self.skip_ws();
                let first = self.real_or_imag()?;
                let mut value = if negative { -&first } else { first };
                self.skip_ws();
                if let Some(sign @ ('+' | '-')) = self.peek() {
                    self.bump();
                    self.skip_ws();
                    let second = if self.eat('i') {
                        Scalar::one()
                    } else {
                        let x = self.number()?;
                        self.skip_ws();
                        if !self.eat('i') {
                            return self.error("'i'");
                        }
                        x
                    };
                    let imag = &second * &Scalar::i();
                    value = if sign == '-' { &value - &imag } else { &value + &imag };
                    self.skip_ws();
                }
                if !self.eat(')') {
                    return self.error("')'");
                }
                Ok(value)
            }
            _ => self.real_or_imag(),
        }
    }

    /// `number`, `number i`, or a bare `i`.
    fn real_or_imag(&mut self) -> Result<Scalar, KetError> {
        if self.eat('i') {
            return Ok(Scalar::i());
        }
        let x = self.number()?;
        let save = self.pos;
        self.skip_ws();
        if self.eat('i') {
            Ok(&x * &Scalar::i())
        } else {
            self.pos = save;
            Ok(x)
        }
    }

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        &self.src[start..self.pos]
    }

    fn number(&mut self) -> Result<Scalar, KetError> {
        let start = self.pos;
        let int = self.digits();
        if int.is_empty() {
            return self.error("a number");
        }
        let mut decimal = false;
        if self.peek() == Some('.') {
            self.bump();
            decimal = true;
            self.digits();
        }
        if matches!(self.peek(), Some('e' | 'E')) {
            let save = self.pos;
            self.bump();
            if matches!(self.peek(), Some('+' | '-')) {
                self.bump();
            }
            if self.digits().is_empty() {
                self.pos = save;
            } else {
                decimal = true;
            }
        }
        if decimal {
            let text = &self.src[start..self.pos];
            let x: f64 = text.parse().map_err(|_| KetError::Syntax {
                position: start,
                expected: "a decimal number".into(),
                found: format!("{text:?}"),
            })?;
            return Ok(Scalar::float(C64::new(x, 0.0)));
        }
        let numer: BigInt = int.parse().expect("digit run");
        let save = self.pos;
        self.skip_ws();
        if self.eat('/') {
            self.skip_ws();
            let den_pos = self.pos;
            let den = self.digits();
            if den.is_empty() {
                return self.error("a denominator");
            }
            let denom: BigInt = den.parse().expect("digit run");
            if denom.is_zero() {
                return Err(KetError::Syntax {
                    position: den_pos,
                    expected: "a nonzero denominator".into(),
                    found: "0".into(),
                });
            }
            return Ok(Scalar::exact(GaussRational::new(BigRational::new(numer, denom), BigRational::zero())));
        }
        self.pos = save;
        Ok(Scalar::exact(GaussRational::new(BigRational::from_integer(numer), BigRational::zero())))
    }
}

/// Parser entry for catalog argument lists: reads one signed coefficient.
pub(crate) fn parse_argument(text: &str) -> Result<Scalar, KetError> {
    parse_scalar(text)
}

impl fmt::Display for KetExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (c, l)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}|{l}>")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkit::exact::{gq, gq_frac};

    #[test]
    fn ghz_amplitudes() {
        let s = parse_state("|0000> + |1111>").unwrap();
        assert!(s.is_exact());
        let e = s.exact_amplitudes().unwrap();
        assert_eq!(e[0], gq(1, 0));
        assert_eq!(e[15], gq(1, 0));
        assert_eq!(e.iter().filter(|z| !z.is_zero()).count(), 2);
    }

    #[test]
    fn cancellation_is_zero_state() {
        assert_eq!(parse_state("|00> - |00>"), Err(KetError::ZeroState));
    }

    #[test]
    fn gaussian_coefficient() {
        let s = parse_state("(1+2i)|01> + |10>").unwrap();
        let e = s.exact_amplitudes().unwrap();
        assert_eq!(e[1], gq(1, 2));
        assert_eq!(e[2], gq(1, 0));
    }

    #[test]
    fn coefficient_forms() {
        let s = parse_state("-1/2 |00> + 3i*|01> - i|10> + (2 - 1/3i)|11>").unwrap();
        let e = s.exact_amplitudes().unwrap();
        assert_eq!(e[0], gq_frac(-1, 2, 0, 1));
        assert_eq!(e[1], gq(0, 3));
        assert_eq!(e[2], gq(0, -1));
        assert_eq!(e[3], gq_frac(2, 1, -1, 3));
    }

    #[test]
    fn decimals_drop_exactness() {
        let s = parse_state("0.5|0> + |1>").unwrap();
        assert!(!s.is_exact());
        assert_eq!(s.amplitudes()[0], C64::new(0.5, 0.0));
    }

    #[test]
    fn errors_carry_positions() {
        match parse_state("|00> + |0>") {
            Err(KetError::InconsistentWidth { position, expected: 2, found: 1 }) => assert_eq!(position, 7),
            other => panic!("unexpected {other:?}"),
        }
        match parse_state("|00> + ") {
            Err(KetError::Syntax { position, .. }) => assert_eq!(position, 7),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_state("|02>"), Err(KetError::Syntax { .. })));
        assert!(matches!(parse_state("1/0|0>"), Err(KetError::Syntax { .. })));
        assert!(matches!(parse_state(""), Err(KetError::Syntax { .. })));
    }

    #[test]
    fn render_round_trip() {
        let s = parse_state("(1/2-3i)|0011> - 7|1100> + i|1111>").unwrap();
        assert_eq!(parse_state(&render(&s)).unwrap(), s);
        let f = parse_state("0.1|01> + (2.5e-5-3.25i)|10>").unwrap();
        assert_eq!(parse_state(&render(&f)).unwrap(), f);
    }

    #[test]
    fn standalone_scalars() {
        assert_eq!(parse_scalar("-1/2").unwrap(), Scalar::ratio(-1, 2));
        assert_eq!(parse_scalar("(1+i)").unwrap(), Scalar::int(1, 1));
        assert!(parse_scalar("1+").is_err());
    }
}
