//! Program terms: trees over 0-ary symbols (variables, constants, omegas,
//! call results) and functional symbols (primitive operations and the
//! `elm`/`fld`/`val` memory access heads).

use crate::value::Value;
use std::fmt;

/// A 0-ary symbol.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Symbol {
    Var(String),
    /// Artificial variable carrying the previous value of a scalar.
    Prime(String),
    Const(Value),
    /// An indefinite value; every introduction gets a fresh id.
    Omega(u32),
    /// The result of a function call, tagged by its call site.
    CallResult { func: String, site: u32 },
}

impl Symbol {
    pub fn is_omega(&self) -> bool {
        matches!(self, Symbol::Omega(_))
    }

    pub fn as_const(&self) -> Option<&Value> {
        match self {
            Symbol::Const(v) => Some(v),
            _ => None,
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Var(n) => write!(f, "{n}"),
            Symbol::Prime(n) => write!(f, "{n}'"),
            Symbol::Const(v) => write!(f, "{v}"),
            Symbol::Omega(i) => write!(f, "ω{i}"),
            Symbol::CallResult { func, site } => write!(f, "{func}@{site}"),
        }
    }
}

/// A functional symbol.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Op {
    Add,
    Sub,
    Mul,
    Div,
    Mod,
    Neg,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    And,
    Or,
    Not,
    Odd,
    /// Array element access `elm(a, i)`.
    Elm,
    /// Record field access `fld(r, name)`.
    Fld,
    /// Reference dereference.
    Val,
}

impl Op {
    pub fn arity(self) -> usize {
        match self {
            Op::Neg | Op::Not | Op::Odd | Op::Val => 1,
            _ => 2,
        }
    }

    pub fn commutative(self) -> bool {
        matches!(self, Op::Add | Op::Mul | Op::Eq | Op::Ne | Op::And | Op::Or)
    }

    pub fn name(self) -> &'static str {
        match self {
            Op::Add => "+",
            Op::Sub => "-",
            Op::Mul => "*",
            Op::Div => "div",
            Op::Mod => "mod",
            Op::Neg => "neg",
            Op::Eq => "=",
            Op::Ne => "#",
            Op::Lt => "<",
            Op::Le => "<=",
            Op::Gt => ">",
            Op::Ge => ">=",
            Op::And => "and",
            Op::Or => "or",
            Op::Not => "not",
            Op::Odd => "odd",
            Op::Elm => "elm",
            Op::Fld => "fld",
            Op::Val => "val",
        }
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Term {
    Leaf(Symbol),
    App(Op, Vec<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Leaf(Symbol::Var(name.to_string()))
    }

    pub fn int(n: i64) -> Term {
        Term::Leaf(Symbol::Const(Value::Int(n)))
    }

    pub fn boolean(b: bool) -> Term {
        Term::Leaf(Symbol::Const(Value::Bool(b)))
    }

    pub fn app(op: Op, args: Vec<Term>) -> Term {
        debug_assert_eq!(op.arity(), args.len());
        Term::App(op, args)
    }

    pub fn height(&self) -> usize {
        match self {
            Term::Leaf(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::height).max().unwrap_or(0),
        }
    }

    /// True when the term mentions an omega, prime, or call-result symbol,
    /// i.e. an artifact of the analysis rather than a source expression.
    pub fn mentions_artificial(&self) -> bool {
        match self {
            Term::Leaf(s) => !matches!(s, Symbol::Var(_) | Symbol::Const(_)),
            Term::App(_, args) => args.iter().any(Term::mentions_artificial),
        }
    }

    pub fn contains(&self, other: &Term) -> bool {
        if self == other {
            return true;
        }
        match self {
            Term::Leaf(_) => false,
            Term::App(_, args) => args.iter().any(|a| a.contains(other)),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Leaf(s) => write!(f, "{s}"),
            Term::App(op, args) => match op {
                Op::Elm => write!(f, "{}[{}]", args[0], args[1]),
                Op::Fld => write!(f, "{}.{}", args[0], args[1]),
                Op::Val => write!(f, "{}^", args[0]),
                Op::Neg => write!(f, "-({})", args[0]),
                Op::Not | Op::Odd => write!(f, "{}({})", op.name(), args[0]),
                _ => write!(f, "({} {} {})", args[0], op.name(), args[1]),
            },
        }
    }
}
