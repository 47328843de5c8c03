use std::fmt;

use crate::exact::{format_q, Q};
use num_traits::Signed;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Constant {
    Pi,
    E,
    I,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Sin,
    Cos,
    Exp,
    Log,
    Sqrt,
    Gamma,
    Zeta,
    Hzeta,
    /// Heaviside step.
    H,
}

impl Func {
    pub fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "exp" => Func::Exp,
            "log" => Func::Log,
            "sqrt" => Func::Sqrt,
            "gamma" => Func::Gamma,
            "zeta" => Func::Zeta,
            "hzeta" => Func::Hzeta,
            "H" => Func::H,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
            Func::Gamma => "gamma",
            Func::Zeta => "zeta",
            Func::Hzeta => "hzeta",
            Func::H => "H",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Func::Hzeta => 2,
            _ => 1,
        }
    }
}

/// Integrand expression tree.
///
/// Numeric literals are exact non-negative rationals; negation is always an
/// explicit [`Expr::Neg`] node.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(Q),
    Const(Constant),
    Var(String),
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Vec<Expr>),
}

impl Expr {
    pub fn num(x: Q) -> Expr {
        if x.is_negative() {
            Expr::Neg(Box::new(Expr::Num(-x)))
        } else {
            Expr::Num(x)
        }
    }

    pub fn int(n: i64) -> Expr {
        Expr::num(crate::exact::qi(n))
    }

    pub fn var(name: &str) -> Expr {
        Expr::Var(name.to_string())
    }

    pub fn call(f: Func, arg: Expr) -> Expr {
        Expr::Call(f, vec![arg])
    }

    pub fn binary(op: BinOp, lhs: Expr, rhs: Expr) -> Expr {
        Expr::Binary(op, Box::new(lhs), Box::new(rhs))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Expr::Num(x) if x == &Q::from_integer(0.into()))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Expr::Num(x) if x == &Q::from_integer(1.into()))
    }

    /// True when `var` occurs anywhere in the tree.
    pub fn depends_on(&self, var: &str) -> bool {
        match self {
            Expr::Var(v) => v == var,
            Expr::Num(_) | Expr::Const(_) => false,
            Expr::Neg(e) => e.depends_on(var),
            Expr::Binary(_, a, b) => a.depends_on(var) || b.depends_on(var),
            Expr::Call(_, args) => args.iter().any(|a| a.depends_on(var)),
        }
    }

    /// Free variables in first-occurrence order.
    pub fn free_vars(&self) -> Vec<String> {
        fn walk(e: &Expr, out: &mut Vec<String>) {
            match e {
                Expr::Var(v) if !out.contains(v) => out.push(v.clone()),
                Expr::Var(_) | Expr::Num(_) | Expr::Const(_) => {}
                Expr::Neg(a) => walk(a, out),
                Expr::Binary(_, a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
                Expr::Call(_, args) => args.iter().for_each(|a| walk(a, out)),
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Binary(BinOp::Add | BinOp::Sub, ..) => 1,
            Expr::Binary(BinOp::Mul | BinOp::Div, ..) => 2,
            Expr::Neg(_) => 3,
            Expr::Binary(BinOp::Pow, ..) => 4,
            _ => 5,
        }
    }
}

// Smart constructors that fold the trivial identities; `diff` leans on these
// to keep derivative trees readable.
impl std::ops::Add for Expr {
    type Output = Expr;
    fn add(self, rhs: Expr) -> Expr {
        if self.is_zero() {
            rhs
        } else if rhs.is_zero() {
            self
        } else {
            Expr::binary(BinOp::Add, self, rhs)
        }
    }
}

impl std::ops::Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        if rhs.is_zero() {
            self
        } else if self.is_zero() {
            -rhs
        } else {
            Expr::binary(BinOp::Sub, self, rhs)
        }
    }
}

impl std::ops::Mul for Expr {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        if self.is_zero() || rhs.is_zero() {
            Expr::int(0)
        } else if self.is_one() {
            rhs
        } else if rhs.is_one() {
            self
        } else {
            Expr::binary(BinOp::Mul, self, rhs)
        }
    }
}

impl std::ops::Div for Expr {
    type Output = Expr;
    fn div(self, rhs: Expr) -> Expr {
        if self.is_zero() {
            Expr::int(0)
        } else if rhs.is_one() {
            self
        } else {
            Expr::binary(BinOp::Div, self, rhs)
        }
    }
}

impl std::ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        match self {
            e if e.is_zero() => e,
            Expr::Neg(inner) => *inner,
            e => Expr::Neg(Box::new(e)),
        }
    }
}

impl fmt::Display for Constant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Constant::Pi => "pi",
            Constant::E => "e",
            Constant::I => "i",
        })
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(x) => f.write_str(&format_q(x)),
            Expr::Const(c) => write!(f, "{c}"),
            Expr::Var(v) => f.write_str(v),
            Expr::Neg(inner) => {
                if inner.precedence() < 3 {
                    write!(f, "-({inner})")
                } else {
                    write!(f, "-{inner}")
                }
            }
            Expr::Binary(op, lhs, rhs) => {
                let prec = self.precedence();
                let (left_paren, right_paren) = match op {
                    BinOp::Pow => (lhs.precedence() <= prec, rhs.precedence() < prec),
                    _ => (lhs.precedence() < prec, rhs.precedence() <= prec),
                };
                let wrap = |e: &Expr, paren: bool| {
                    if paren {
                        format!("({e})")
                    } else {
                        e.to_string()
                    }
                };
                // ` / ` keeps `1 / 2` from lexing as a rational literal.
                let sym = match op {
                    BinOp::Add => " + ",
                    BinOp::Sub => " - ",
                    BinOp::Mul => "*",
                    BinOp::Div => " / ",
                    BinOp::Pow => "^",
                };
                write!(f, "{}{}{}", wrap(lhs, left_paren), sym, wrap(rhs, right_paren))
            }
            Expr::Call(func, args) => {
                let args: Vec<String> = args.iter().map(|a| a.to_string()).collect();
                write!(f, "{}({})", func.name(), args.join(", "))
            }
        }
    }
}
