//! Constant values: scalars, constant compositions (arrays, records) and
//! record field names.

use std::fmt;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Value {
    Int(i64),
    Bool(bool),
    Char(char),
    /// Constant array: low index bound plus elements, `{1,2,3}`.
    Array(i64, Vec<Value>),
    /// Constant record: field name/value pairs in declaration order.
    Record(Vec<(String, Value)>),
    /// A record field name used as the second argument of `fld`.
    Field(String),
}

impl Value {
    pub fn as_int(&self) -> Option<i64> {
        match self {
            Value::Int(n) => Some(*n),
            _ => None,
        }
    }

    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Value::Bool(b) => Some(*b),
            _ => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(n) => write!(f, "{n}"),
            Value::Bool(b) => write!(f, "{}", if *b { "true" } else { "false" }),
            Value::Char(c) => write!(f, "'{c}'"),
            Value::Array(_, elems) => {
                write!(f, "{{")?;
                for (i, e) in elems.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{e}")?;
                }
                write!(f, "}}")
            }
            Value::Record(fields) => {
                write!(f, "(")?;
                for (i, (n, v)) in fields.iter().enumerate() {
                    if i > 0 {
                        write!(f, ";")?;
                    }
                    write!(f, "{n}:{v}")?;
                }
                write!(f, ")")
            }
            Value::Field(n) => write!(f, "{n}"),
        }
    }
}
