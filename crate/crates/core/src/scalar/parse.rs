//! The exact-expression grammar shared by the CLI and the JSON schemas:
//! integers, `+ - * /`, parentheses, `sqrt(<expr>)`, and the variables
//! `t`, `t1`..`t9`. Whitespace-insensitive; errors carry byte positions.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{adjoin_sqrt_formal, ExactScalar, RatFunc, ScalarError, TowerField};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: Vec<String>,
}

/// Parse an expression into an exact scalar.
///
/// Expressions mixing `sqrt` and variables are rejected: square roots live
/// in quadratic towers, variables in rational function fields.
pub fn parse_scalar(input: &str) -> Result<ExactScalar, ScalarError> {
    let vars = scan_vars(input);
    let mut p = Parser {
        src: input.as_bytes(),
        pos: 0,
        vars,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(ScalarError::Parse {
            pos: p.pos,
            msg: "unexpected trailing input".into(),
        });
    }
    Ok(v.simplify())
}

fn scan_vars(input: &str) -> Vec<String> {
    let mut vars = Vec::new();
    let bytes = input.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] == b't' {
            // not part of "sqrt"
            let prev_alpha = i > 0 && bytes[i - 1].is_ascii_alphabetic();
            if !prev_alpha {
                let mut name = String::from("t");
                if i + 1 < bytes.len() && bytes[i + 1].is_ascii_digit() {
                    name.push(bytes[i + 1] as char);
                }
                if !vars.contains(&name) {
                    vars.push(name);
                }
            }
        }
        i += 1;
    }
    vars.sort();
    vars
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, msg: &str) -> ScalarError {
        ScalarError::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn expr(&mut self) -> Result<ExactScalar, ScalarError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = acc.add(&rhs)?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = acc.sub(&rhs)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<ExactScalar, ScalarError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    acc = acc.mul(&rhs)?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    acc = acc.div(&rhs)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<ExactScalar, ScalarError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.factor()?.neg())
            }
            Some(b'+') => {
                self.pos += 1;
                self.factor()
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b's') => self.sqrt(),
            Some(b't') => self.variable(),
            Some(c) if c.is_ascii_digit() => self.number(),
            Some(_) => Err(self.err("expected a number, variable, sqrt or '('")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn sqrt(&mut self) -> Result<ExactScalar, ScalarError> {
        self.skip_ws();
        if !self.src[self.pos..].starts_with(b"sqrt") {
            return Err(self.err("expected 'sqrt'"));
        }
        self.pos += 4;
        if self.peek() != Some(b'(') {
            return Err(self.err("expected '(' after sqrt"));
        }
        self.pos += 1;
        let inner = self.expr()?;
        if self.peek() != Some(b')') {
            return Err(self.err("expected ')'"));
        }
        self.pos += 1;
        let field = match &inner {
            ExactScalar::Tower(t) => t.field().clone(),
            ExactScalar::Rat(_) => TowerField::rationals(),
            ExactScalar::Fun(_) => {
                return Err(self.err("sqrt over a function field is not supported"))
            }
        };
        let adj = adjoin_sqrt_formal(&field, &inner)?;
        Ok(ExactScalar::Tower(adj.root).simplify())
    }

    fn variable(&mut self) -> Result<ExactScalar, ScalarError> {
        self.skip_ws();
        self.pos += 1; // consume 't'
        let mut name = String::from("t");
        if let Some(&c) = self.src.get(self.pos) {
            if c.is_ascii_digit() {
                name.push(c as char);
                self.pos += 1;
            }
        }
        RatFunc::var_in(self.vars.clone(), &name)
            .map(ExactScalar::Fun)
            .ok_or_else(|| self.err("unknown variable"))
    }

    fn number(&mut self) -> Result<ExactScalar, ScalarError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let n: BigInt = text.parse().map_err(|_| self.err("invalid integer"))?;
        let r = BigRational::from_integer(n);
        if self.vars.is_empty() {
            Ok(ExactScalar::Rat(r))
        } else {
            // keep constants rational; promotion happens on demand
            Ok(ExactScalar::Rat(r))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_expressions() {
        assert_eq!(parse_scalar("1/3 + 1/6").unwrap(), ExactScalar::from_ratio(1, 2));
        assert_eq!(
            parse_scalar(" ( 2 - 5 ) * 4 ").unwrap(),
            ExactScalar::from_int(-12)
        );
    }

    #[test]
    fn sqrt_expressions() {
        let x = parse_scalar("sqrt(2)*sqrt(2)").unwrap();
        assert_eq!(x, ExactScalar::from_int(2));
        let y = parse_scalar("sqrt(3)/2 + 1/2").unwrap();
        let z = y.mul(&ExactScalar::from_int(2)).unwrap();
        let w = z.sub(&ExactScalar::one()).unwrap();
        assert_eq!(w.mul(&w).unwrap(), ExactScalar::from_int(3));
    }

    #[test]
    fn nested_sqrt() {
        // sqrt(8) collapses into the sqrt(2) tower
        let x = parse_scalar("sqrt(8) - 2*sqrt(2)").unwrap();
        assert!(x.is_zero());
    }

    #[test]
    fn function_field() {
        let x = parse_scalar("(t2 - 1)/(t - 1)").unwrap();
        // no simplification across different variables
        assert!(matches!(x, ExactScalar::Fun(_)));
        let y = parse_scalar("(t*t - 1)/(t - 1)").unwrap();
        let expected = parse_scalar("t + 1").unwrap();
        assert_eq!(y, expected);
    }

    #[test]
    fn error_positions() {
        let err = parse_scalar("1 + ");
        assert!(matches!(err, Err(ScalarError::Parse { .. })));
        let err = parse_scalar("sqrt(t)");
        assert!(matches!(err, Err(ScalarError::Parse { .. })));
    }
}
