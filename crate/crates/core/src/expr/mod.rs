//! A small expression language for integrands typed on the command line.
//!
//! ```text
//! expr    = term { ("+" | "-") term }
//! term    = unary { ("*" | "/" | ".*" | "./") unary }
//! unary   = ("-" | "+") unary | power
//! power   = primary [ ("^" | ".^") unary ]
//! primary = number | "pi" | "e" | var | call | "(" expr ")"
//! var     = "x" | "x" digits
//! call    = name "(" expr { "," expr } ")" | "prod(x)"
//! ```
//!
//! `x` alone names the only coordinate of a one-dimensional problem;
//! `x1 .. xd` index coordinates from one.

mod parse;

use std::fmt;

use thiserror::Error;

pub use parse::parse;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExprError {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown identifier '{name}' at position {pos}")]
    Unknown { pos: usize, name: String },
    #[error("{name} takes {expected} argument(s), got {got} at position {pos}")]
    Arity {
        pos: usize,
        name: String,
        expected: usize,
        got: usize,
    },
    #[error("variable x{index} at position {pos} exceeds dimension {dim}")]
    Dimension { pos: usize, index: usize, dim: usize },
    #[error("points have dimension {got}, expression expects {expected}")]
    Mismatch { expected: usize, got: usize },
}

impl From<ExprError> for crate::Error {
    fn from(e: ExprError) -> Self {
        crate::Error::Config(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Exp,
    Log,
    Sqrt,
    Abs,
    Normcdf,
    Max,
    Min,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
            Func::Abs => "abs",
            Func::Normcdf => "normcdf",
            Func::Max => "max",
            Func::Min => "min",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Func::Max | Func::Min => 2,
            _ => 1,
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        [
            Func::Sin,
            Func::Cos,
            Func::Tan,
            Func::Exp,
            Func::Log,
            Func::Sqrt,
            Func::Abs,
            Func::Normcdf,
            Func::Max,
            Func::Min,
        ]
        .into_iter()
        .find(|f| f.name() == name)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    Num(f64),
    /// Zero-based coordinate index.
    Var(usize),
    Neg(Box<Node>),
    Bin(BinOp, Box<Node>, Box<Node>),
    Call(Func, Vec<Node>),
    /// Product of all coordinates.
    Prod,
}

impl Node {
    pub fn eval(&self, x: &[f64]) -> f64 {
        match self {
            Node::Num(v) => *v,
            Node::Var(i) => x[*i],
            Node::Neg(a) => -a.eval(x),
            Node::Bin(op, a, b) => {
                let (a, b) = (a.eval(x), b.eval(x));
                match op {
                    BinOp::Add => a + b,
                    BinOp::Sub => a - b,
                    BinOp::Mul => a * b,
                    BinOp::Div => a / b,
                    BinOp::Pow => a.powf(b),
                }
            }
            Node::Call(f, args) => {
                let a = args[0].eval(x);
                match f {
                    Func::Sin => a.sin(),
                    Func::Cos => a.cos(),
                    Func::Tan => a.tan(),
                    Func::Exp => a.exp(),
                    Func::Log => a.ln(),
                    Func::Sqrt => a.sqrt(),
                    Func::Abs => a.abs(),
                    Func::Normcdf => crate::normal::norm_cdf(a),
                    Func::Max => a.max(args[1].eval(x)),
                    Func::Min => a.min(args[1].eval(x)),
                }
            }
            Node::Prod => x.iter().product(),
        }
    }

    fn max_var(&self) -> Option<usize> {
        match self {
            Node::Num(_) | Node::Prod => None,
            Node::Var(i) => Some(*i),
            Node::Neg(a) => a.max_var(),
            Node::Bin(_, a, b) => a.max_var().max(b.max_var()),
            Node::Call(_, args) => args.iter().filter_map(Node::max_var).max(),
        }
    }
}

impl fmt::Display for Node {
    /// Fully parenthesized canonical form.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Num(v) if v.is_sign_negative() => write!(f, "(-{:?})", -v),
            Node::Num(v) => write!(f, "{v:?}"),
            Node::Var(i) => write!(f, "x{}", i + 1),
            Node::Neg(a) => write!(f, "(-{a})"),
            Node::Bin(op, a, b) => {
                let s = match op {
                    BinOp::Add => "+",
                    BinOp::Sub => "-",
                    BinOp::Mul => "*",
                    BinOp::Div => "/",
                    BinOp::Pow => "^",
                };
                write!(f, "({a} {s} {b})")
            }
            Node::Call(func, args) => {
                write!(f, "{}(", func.name())?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
            Node::Prod => write!(f, "prod(x)"),
        }
    }
}

/// A parsed expression over `dim` coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Expr {
    pub root: Node,
    pub dim: usize,
}

impl Expr {
    pub fn new(root: Node, dim: usize) -> Result<Expr, ExprError> {
        if let Some(i) = root.max_var() {
            if i >= dim {
                return Err(ExprError::Dimension {
                    pos: 0,
                    index: i + 1,
                    dim,
                });
            }
        }
        Ok(Expr { root, dim })
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.root.eval(x)
    }

    /// Row-wise evaluation of a row-major `n x d` array.
    pub fn eval_batch(&self, points: &[f64], d: usize) -> Result<Vec<f64>, ExprError> {
        if d != self.dim || (d > 0 && points.len() % d != 0) {
            return Err(ExprError::Mismatch {
                expected: self.dim,
                got: d,
            });
        }
        Ok(points.chunks_exact(d).map(|row| self.root.eval(row)).collect())
    }

    pub fn render(&self) -> String {
        self.root.to_string()
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.root.fmt(f)
    }
}

pub fn eval_batch(e: &Expr, points: &[f64], d: usize) -> Result<Vec<f64>, ExprError> {
    e.eval_batch(points, d)
}
