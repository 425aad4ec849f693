use std::collections::BTreeSet;
use std::fmt;

/// Propositional formula over named atoms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Xor(Box<Formula>, Box<Formula>),
}

/// Binary connectives, ordered by binding strength.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Or,
    Xor,
    And,
}

impl BinOp {
    pub(crate) fn precedence(self) -> u8 {
        match self {
            BinOp::Or => 1,
            BinOp::Xor => 2,
            BinOp::And => 3,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Or => "|",
            BinOp::Xor => "^",
            BinOp::And => "&",
        }
    }

    pub fn apply(self, a: bool, b: bool) -> bool {
        match self {
            BinOp::Or => a || b,
            BinOp::Xor => a != b,
            BinOp::And => a && b,
        }
    }
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn xor(a: Formula, b: Formula) -> Self {
        Formula::Xor(Box::new(a), Box::new(b))
    }

    pub fn binary(op: BinOp, a: Formula, b: Formula) -> Self {
        match op {
            BinOp::Or => Self::or(a, b),
            BinOp::Xor => Self::xor(a, b),
            BinOp::And => Self::and(a, b),
        }
    }

    /// Splits a binary node into its connective and operands.
    pub fn as_binary(&self) -> Option<(BinOp, &Formula, &Formula)> {
        match self {
            Formula::And(a, b) => Some((BinOp::And, a, b)),
            Formula::Or(a, b) => Some((BinOp::Or, a, b)),
            Formula::Xor(a, b) => Some((BinOp::Xor, a, b)),
            _ => None,
        }
    }

    /// Atom names in sorted order, without repetition.
    pub fn atoms(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            Formula::Atom(a) => {
                out.insert(a);
            }
            Formula::Not(f) => f.collect_atoms(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Xor(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    /// Height of the tree; a lone atom has depth 1.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) => 1,
            Formula::Not(f) => 1 + f.depth(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Xor(a, b) => {
                1 + a.depth().max(b.depth())
            }
        }
    }

    /// Classical two-valued evaluation under an atom assignment.
    pub fn eval_classical<F>(&self, value: &F) -> bool
    where
        F: Fn(&str) -> bool,
    {
        match self {
            Formula::Atom(a) => value(a),
            Formula::Not(f) => !f.eval_classical(value),
            _ => {
                let (op, a, b) = self.as_binary().expect("binary node");
                op.apply(a.eval_classical(value), b.eval_classical(value))
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Atom(_) | Formula::Not(_) => 4,
            _ => self.as_binary().map(|(op, _, _)| op.precedence()).unwrap(),
        }
    }
}

/// Prints with the minimal parentheses needed to reparse to the same tree.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(a) => write!(f, "{a}"),
            Formula::Not(inner) => {
                if inner.precedence() < 4 {
                    write!(f, "~({inner})")
                } else {
                    write!(f, "~{inner}")
                }
            }
            _ => {
                let (op, a, b) = self.as_binary().unwrap();
                let p = op.precedence();
                if a.precedence() < p {
                    write!(f, "({a})")?;
                } else {
                    write!(f, "{a}")?;
                }
                write!(f, " {} ", op.symbol())?;
                // left-associative: an equal-precedence right operand needs parens
                if b.precedence() <= p {
                    write!(f, "({b})")
                } else {
                    write!(f, "{b}")
                }
            }
        }
    }
}
