//! A small infix expression language evaluated with second-order jets.
//!
//! Grammar, loosest binding first: `+ -`, `* /`, unary `-`, `^`. Function
//! calls take a single argument. The exponent of `^` must be a constant
//! expression; integer exponents are expanded by repeated multiplication.
//! The identifier `pi` is a constant unless declared as a variable.

mod jet;
mod parse;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

pub use jet::Jet2;

/// Jets carry at most two independent variables.
pub const MAX_VARIABLES: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Sinh,
    Cosh,
    Exp,
    Log,
    Sqrt,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "tan" => Func::Tan,
            "sinh" => Func::Sinh,
            "cosh" => Func::Cosh,
            "exp" => Func::Exp,
            "log" | "ln" => Func::Log,
            "sqrt" => Func::Sqrt,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum NodeKind {
    Const(f64),
    /// Index into the declared variable list.
    Var(usize),
    Neg(Box<Node>),
    Call(Func, Box<Node>),
    Binary(BinOp, Box<Node>, Box<Node>),
    Pow(Box<Node>, f64),
}

/// AST node. Equality is structural and ignores source offsets.
#[derive(Debug, Clone)]
pub struct Node {
    pub kind: NodeKind,
    /// Byte offset of the token that produced this node.
    pub offset: usize,
}

impl PartialEq for Node {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("empty expression")]
    Empty,
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown identifier \"{name}\" at offset {offset}")]
    UnknownIdentifier { name: String, offset: usize },
    #[error("unknown function \"{name}\" at offset {offset}")]
    UnknownFunction { name: String, offset: usize },
    #[error("exponent at offset {offset} must be a constant")]
    NonConstantExponent { offset: usize },
    #[error("at most {MAX_VARIABLES} variables are supported, got {0}")]
    TooManyVariables(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DomainKind {
    DivisionByZero,
    LogNonPositive,
    SqrtNonPositive,
    PowNonPositiveBase,
}

impl fmt::Display for DomainKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DomainKind::DivisionByZero => "division by zero",
            DomainKind::LogNonPositive => "log of non-positive value",
            DomainKind::SqrtNonPositive => "sqrt of non-positive value",
            DomainKind::PowNonPositiveBase => "non-integer power of non-positive base",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("{kind} at offset {offset} (argument {value})")]
    Domain {
        kind: DomainKind,
        offset: usize,
        value: f64,
    },
    #[error("expected {expected} variable values, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("variable \"{0}\" is not bound")]
    Unbound(String),
}

/// A parsed expression together with its declared variables.
#[derive(Debug, Clone, PartialEq)]
pub struct Expr {
    root: Node,
    vars: Vec<String>,
    source: String,
}

impl Expr {
    pub fn parse(source: &str, variables: &[&str]) -> Result<Expr, ParseError> {
        if variables.len() > MAX_VARIABLES {
            return Err(ParseError::TooManyVariables(variables.len()));
        }
        let root = parse::parse(source, variables)?;
        Ok(Expr {
            root,
            vars: variables.iter().map(|s| s.to_string()).collect(),
            source: source.to_string(),
        })
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    /// The text this expression was parsed from.
    pub fn source(&self) -> &str {
        &self.source
    }

    /// Structural equality of the trees, ignoring source text and offsets.
    pub fn same_tree(&self, other: &Expr) -> bool {
        self.root == other.root && self.vars == other.vars
    }

    /// Evaluates value and partials. `point` lists the variable values in
    /// declaration order; the first seeds the `u` slots, the second `v`.
    pub fn eval_jet(&self, point: &[f64]) -> Result<Jet2, EvalError> {
        if point.len() != self.vars.len() {
            return Err(EvalError::Arity {
                expected: self.vars.len(),
                got: point.len(),
            });
        }
        let seeds: Vec<Jet2> = point
            .iter()
            .enumerate()
            .map(|(i, &x)| if i == 0 { Jet2::var_u(x) } else { Jet2::var_v(x) })
            .collect();
        eval_node(&self.root, &seeds)
    }

    pub fn eval_jet_named(&self, bindings: &BTreeMap<String, f64>) -> Result<Jet2, EvalError> {
        let point = self
            .vars
            .iter()
            .map(|v| bindings.get(v).copied().ok_or_else(|| EvalError::Unbound(v.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        self.eval_jet(&point)
    }

    /// Plain value; same domain checks as [`Expr::eval_jet`].
    pub fn eval(&self, point: &[f64]) -> Result<f64, EvalError> {
        self.eval_jet(point).map(|j| j.val)
    }
}

impl fmt::Display for Expr {
    /// Fully parenthesized form that reparses to the same tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_node(f, &self.root, &self.vars)
    }
}

fn write_number(f: &mut fmt::Formatter<'_>, x: f64) -> fmt::Result {
    if x < 0.0 {
        write!(f, "(-{:?})", -x)
    } else {
        write!(f, "{x:?}")
    }
}

fn write_node(f: &mut fmt::Formatter<'_>, node: &Node, vars: &[String]) -> fmt::Result {
    match &node.kind {
        NodeKind::Const(c) => write_number(f, *c),
        NodeKind::Var(i) => f.write_str(&vars[*i]),
        NodeKind::Neg(a) => {
            f.write_str("(-")?;
            write_node(f, a, vars)?;
            f.write_str(")")
        }
        NodeKind::Call(func, a) => {
            write!(f, "{}(", func.name())?;
            write_node(f, a, vars)?;
            f.write_str(")")
        }
        NodeKind::Binary(op, a, b) => {
            f.write_str("(")?;
            write_node(f, a, vars)?;
            write!(f, " {} ", op.symbol())?;
            write_node(f, b, vars)?;
            f.write_str(")")
        }
        NodeKind::Pow(a, p) => {
            f.write_str("(")?;
            write_node(f, a, vars)?;
            f.write_str("^")?;
            write_number(f, *p)?;
            f.write_str(")")
        }
    }
}

fn domain(kind: DomainKind, node: &Node, value: f64) -> EvalError {
    EvalError::Domain {
        kind,
        offset: node.offset,
        value,
    }
}

fn eval_node(node: &Node, seeds: &[Jet2]) -> Result<Jet2, EvalError> {
    Ok(match &node.kind {
        NodeKind::Const(c) => Jet2::constant(*c),
        NodeKind::Var(i) => seeds[*i],
        NodeKind::Neg(a) => -eval_node(a, seeds)?,
        NodeKind::Call(func, a) => {
            let x = eval_node(a, seeds)?;
            match func {
                Func::Sin => x.sin(),
                Func::Cos => x.cos(),
                Func::Tan => x.tan(),
                Func::Sinh => x.sinh(),
                Func::Cosh => x.cosh(),
                Func::Exp => x.exp(),
                Func::Log => {
                    if !(x.val > 0.0) {
                        return Err(domain(DomainKind::LogNonPositive, node, x.val));
                    }
                    x.ln()
                }
                Func::Sqrt => {
                    if !(x.val > 0.0) {
                        return Err(domain(DomainKind::SqrtNonPositive, node, x.val));
                    }
                    x.sqrt()
                }
            }
        }
        NodeKind::Binary(op, a, b) => {
            let x = eval_node(a, seeds)?;
            let y = eval_node(b, seeds)?;
            match op {
                BinOp::Add => x + y,
                BinOp::Sub => x - y,
                BinOp::Mul => x * y,
                BinOp::Div => {
                    if y.val == 0.0 {
                        return Err(domain(DomainKind::DivisionByZero, node, y.val));
                    }
                    x / y
                }
            }
        }
        NodeKind::Pow(a, p) => {
            let x = eval_node(a, seeds)?;
            if p.fract() == 0.0 && p.abs() <= i32::MAX as f64 {
                let n = *p as i64;
                if n < 0 && x.val == 0.0 {
                    return Err(domain(DomainKind::DivisionByZero, node, x.val));
                }
                x.powi(n)
            } else {
                if !(x.val > 0.0) {
                    return Err(domain(DomainKind::PowNonPositiveBase, node, x.val));
                }
                x.powf(*p)
            }
        }
    })
}
