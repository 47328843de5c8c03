//! Recursive-descent parser for the integrand language.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' power)?        -- right-associative, no sign
//! primary := number | ident | ident '(' expr (',' expr)* ')' | '(' expr ')'
//! ```
//!
//! `p/q` written without whitespace between two integer literals is a single
//! rational literal, so `2^1/2` is `2^(1/2)`.

use num_bigint::BigInt;
use num_traits::Zero;

use super::ast::{BinOp, Constant, Expr, Func};
use crate::error::{Error, Result};
use crate::exact::Q;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Q),
    Ident(String),
    Op(char),
    LParen,
    RParen,
    Comma,
}

fn syntax(offset: usize, message: impl Into<String>) -> Error {
    Error::Syntax { offset, message: message.into() }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        if c.is_ascii_digit() || (c == '.' && bytes.get(i + 1).is_some_and(|b| b.is_ascii_digit())) {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let int_part = &text[start..i];
            if i < bytes.len() && bytes[i] == b'.' {
                i += 1;
                let frac_start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let frac = &text[frac_start..i];
                let digits = format!("{int_part}{frac}");
                let numer: BigInt = digits.parse().map_err(|_| syntax(start, "bad decimal literal"))?;
                let denom = BigInt::from(10).pow(frac.len() as u32);
                out.push((start, Tok::Num(Q::new(numer, denom))));
                continue;
            }
            let numer: BigInt = int_part.parse().map_err(|_| syntax(start, "bad integer literal"))?;
            // rational literal `p/q`
            if i + 1 < bytes.len() && bytes[i] == b'/' && bytes[i + 1].is_ascii_digit() {
                let den_start = i + 1;
                let mut j = den_start;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                if j < bytes.len() && bytes[j] == b'.' {
                    return Err(syntax(den_start, "rational literal denominator must be an integer"));
                }
                let denom: BigInt = text[den_start..j].parse().map_err(|_| syntax(den_start, "bad denominator"))?;
                if denom.is_zero() {
                    return Err(syntax(den_start, "zero denominator in rational literal"));
                }
                out.push((start, Tok::Num(Q::new(numer, denom))));
                i = j;
                continue;
            }
            out.push((start, Tok::Num(Q::from_integer(numer))));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(text[start..i].to_string())));
            continue;
        }
        let tok = match c {
            '+' | '-' | '*' | '/' | '^' => Tok::Op(c),
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            _ => return Err(syntax(start, format!("unexpected character `{c}`"))),
        };
        out.push((start, tok));
        i += c.len_utf8();
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        let offset = self.offset();
        match self.bump() {
            Some(t) if t == want => Ok(()),
            _ => Err(syntax(offset, format!("expected {what}"))),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        while let Some(Tok::Op(op @ ('+' | '-'))) = self.peek().cloned() {
            self.bump();
            let rhs = self.term()?;
            let op = if op == '+' { BinOp::Add } else { BinOp::Sub };
            lhs = Expr::binary(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while let Some(Tok::Op(op @ ('*' | '/'))) = self.peek().cloned() {
            self.bump();
            let rhs = self.unary()?;
            let op = if op == '*' { BinOp::Mul } else { BinOp::Div };
            lhs = Expr::binary(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if let Some(Tok::Op('-')) = self.peek() {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.primary()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.bump();
            if let Some(Tok::Op('-' | '+')) = self.peek() {
                return Err(syntax(self.offset(), "signed exponent requires parentheses, e.g. x^(-2)"));
            }
            let exponent = self.power()?;
            return Ok(Expr::binary(BinOp::Pow, base, exponent));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr> {
        let offset = self.offset();
        match self.bump() {
            Some(Tok::Num(x)) => Ok(Expr::Num(x)),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Some(Tok::Ident(name)) => {
                if let Some(Tok::LParen) = self.peek() {
                    let func = Func::from_name(&name).ok_or_else(|| Error::UnknownIdentifier(name.clone()))?;
                    self.bump();
                    let mut args = vec![self.expr()?];
                    while let Some(Tok::Comma) = self.peek() {
                        self.bump();
                        args.push(self.expr()?);
                    }
                    self.expect(Tok::RParen, "`)` after arguments")?;
                    if args.len() != func.arity() {
                        return Err(syntax(
                            offset,
                            format!("`{}` takes {} argument(s), got {}", func.name(), func.arity(), args.len()),
                        ));
                    }
                    return Ok(Expr::Call(func, args));
                }
                Ok(match name.as_str() {
                    "pi" => Expr::Const(Constant::Pi),
                    "e" => Expr::Const(Constant::E),
                    "i" => Expr::Const(Constant::I),
                    _ => Expr::Var(name),
                })
            }
            Some(_) => Err(syntax(offset, "expected a number, identifier or `(`")),
            None => Err(syntax(offset, "unexpected end of input")),
        }
    }
}

/// Parses an expression in the integrand language.
pub fn parse(text: &str) -> Result<Expr> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, end: text.len() };
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(syntax(p.offset(), "unexpected trailing input"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    #[test]
    fn sinc_shape() {
        let e = parse("sin(x)/x").unwrap();
        assert_eq!(e, Expr::binary(BinOp::Div, Expr::call(Func::Sin, Expr::var("x")), Expr::var("x")));
    }

    #[test]
    fn heaviside_of_sum() {
        let e = parse("H(1-x-y)").unwrap();
        let inner = Expr::binary(BinOp::Sub, Expr::binary(BinOp::Sub, Expr::int(1), Expr::var("x")), Expr::var("y"));
        assert_eq!(e, Expr::call(Func::H, inner));
    }

    #[test]
    fn signed_exponent_is_rejected() {
        match parse("x^-2") {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("expected syntax error, got {other:?}"),
        }
        assert!(parse("x^(-2)").is_ok());
    }

    #[test]
    fn unknown_function() {
        assert_eq!(parse("foo(x)"), Err(Error::UnknownIdentifier("foo".into())));
    }

    #[test]
    fn precedence_and_associativity() {
        // -x^2 = -(x^2); 2^3^2 = 2^(3^2)
        assert_eq!(parse("-x^2").unwrap(), Expr::Neg(Box::new(Expr::binary(BinOp::Pow, Expr::var("x"), Expr::int(2)))));
        assert_eq!(
            parse("2^3^2").unwrap(),
            Expr::binary(BinOp::Pow, Expr::int(2), Expr::binary(BinOp::Pow, Expr::int(3), Expr::int(2)))
        );
        assert_eq!(
            parse("a-b-c").unwrap(),
            Expr::binary(BinOp::Sub, Expr::binary(BinOp::Sub, Expr::var("a"), Expr::var("b")), Expr::var("c"))
        );
    }

    #[test]
    fn literals() {
        assert_eq!(parse("3/4").unwrap(), Expr::Num(q(3, 4)));
        assert_eq!(parse("0.25").unwrap(), Expr::Num(q(1, 4)));
        assert_eq!(parse("3 / 4").unwrap(), Expr::binary(BinOp::Div, Expr::int(3), Expr::int(4)));
        assert!(matches!(parse("1/0"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn arity_is_checked() {
        assert!(parse("hzeta(2, 1)").is_ok());
        assert!(matches!(parse("hzeta(2)"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn trailing_garbage() {
        assert!(matches!(parse("x)"), Err(Error::Syntax { offset: 1, .. })));
        assert!(matches!(parse("sin(x"), Err(Error::Syntax { .. })));
    }
}
