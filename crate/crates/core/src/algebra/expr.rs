use std::fmt;

use num_traits::One;

use super::scalar::{self, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symbol {
    /// Annihilation operator `a`.
    A,
    /// Creation operator `a†`, written `ad`.
    Ad,
    /// Position `(a + a†)/2`.
    Q,
    /// Momentum `(a − a†)/2i`.
    P,
    /// Identity operator.
    Id,
}

impl Symbol {
    pub fn name(self) -> &'static str {
        match self {
            Symbol::A => "a",
            Symbol::Ad => "ad",
            Symbol::Q => "q",
            Symbol::P => "p",
            Symbol::Id => "id",
        }
    }
}

/// Operator expression tree. Constant subexpressions are folded by the
/// smart constructors, so a scalar never appears as the only kind of child
/// of an operator node.
#[derive(Debug, Clone, PartialEq)]
pub enum ExprNode {
    Scalar(Scalar),
    Symbol(Symbol),
    Add(Box<ExprNode>, Box<ExprNode>),
    Sub(Box<ExprNode>, Box<ExprNode>),
    Mul(Box<ExprNode>, Box<ExprNode>),
    Neg(Box<ExprNode>),
    Pow(Box<ExprNode>, u32),
}

impl ExprNode {
    pub fn scalar(z: Scalar) -> Self {
        ExprNode::Scalar(z)
    }

    pub fn symbol(s: Symbol) -> Self {
        ExprNode::Symbol(s)
    }

    pub fn add(l: ExprNode, r: ExprNode) -> Self {
        match (l, r) {
            (ExprNode::Scalar(x), ExprNode::Scalar(y)) => ExprNode::Scalar(x + y),
            (l, r) => ExprNode::Add(Box::new(l), Box::new(r)),
        }
    }

    pub fn sub(l: ExprNode, r: ExprNode) -> Self {
        match (l, r) {
            (ExprNode::Scalar(x), ExprNode::Scalar(y)) => ExprNode::Scalar(x - y),
            (l, r) => ExprNode::Sub(Box::new(l), Box::new(r)),
        }
    }

    pub fn mul(l: ExprNode, r: ExprNode) -> Self {
        match (l, r) {
            (ExprNode::Scalar(x), ExprNode::Scalar(y)) => ExprNode::Scalar(x * y),
            (l, r) => ExprNode::Mul(Box::new(l), Box::new(r)),
        }
    }

    pub fn neg(x: ExprNode) -> Self {
        match x {
            ExprNode::Scalar(z) => ExprNode::Scalar(-z),
            x => ExprNode::Neg(Box::new(x)),
        }
    }

    pub fn pow(x: ExprNode, n: u32) -> Self {
        match x {
            ExprNode::Scalar(z) => {
                let mut acc = Scalar::one();
                for _ in 0..n {
                    acc *= z.clone();
                }
                ExprNode::Scalar(acc)
            }
            x => ExprNode::Pow(Box::new(x), n),
        }
    }

    /// Upper bound on the polynomial degree in `a, a†`.
    pub fn degree_bound(&self) -> u64 {
        match self {
            ExprNode::Scalar(_) => 0,
            ExprNode::Symbol(Symbol::Id) => 0,
            ExprNode::Symbol(_) => 1,
            ExprNode::Add(l, r) | ExprNode::Sub(l, r) => l.degree_bound().max(r.degree_bound()),
            ExprNode::Mul(l, r) => l.degree_bound().saturating_add(r.degree_bound()),
            ExprNode::Neg(x) => x.degree_bound(),
            ExprNode::Pow(x, n) => x.degree_bound().saturating_mul(u64::from(*n)),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            ExprNode::Add(..) | ExprNode::Sub(..) => 1,
            ExprNode::Mul(..) => 2,
            ExprNode::Neg(_) => 3,
            ExprNode::Pow(..) => 4,
            ExprNode::Scalar(_) | ExprNode::Symbol(_) => 5,
        }
    }

    fn write_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if let ExprNode::Scalar(z) = self {
            // Non-atomic scalars are bracketed whenever they are an operand.
            return if min > 1 && !scalar::is_atomic(z) {
                write!(f, "({})", scalar::format_scalar(z))
            } else {
                write!(f, "{}", scalar::format_scalar(z))
            };
        }
        let wrap = self.precedence() < min;
        if wrap {
            f.write_str("(")?;
        }
        match self {
            ExprNode::Scalar(_) => unreachable!(),
            ExprNode::Symbol(s) => f.write_str(s.name())?,
            ExprNode::Add(l, r) => {
                l.write_prec(f, 1)?;
                f.write_str(" + ")?;
                r.write_prec(f, 2)?;
            }
            ExprNode::Sub(l, r) => {
                l.write_prec(f, 1)?;
                f.write_str(" - ")?;
                r.write_prec(f, 2)?;
            }
            ExprNode::Mul(l, r) => {
                l.write_prec(f, 2)?;
                f.write_str("*")?;
                r.write_prec(f, 3)?;
            }
            ExprNode::Neg(x) => {
                f.write_str("-")?;
                x.write_prec(f, 3)?;
            }
            ExprNode::Pow(x, n) => {
                x.write_prec(f, 5)?;
                write!(f, "^{n}")?;
            }
        }
        if wrap {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for ExprNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_prec(f, 0)
    }
}
