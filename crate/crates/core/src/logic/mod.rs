//! Formula language: syntax tree, parser, atom bindings and compilation to
//! projectors.

mod ast;
mod binding;
mod compile;
mod parser;

pub use ast::{BinOp, Formula};
pub use binding::{bind, Binding, BoundFormula};
pub use compile::{compile, find_noncommuting, Compiled};
pub use parser::{parse, MAX_DEPTH, MAX_INPUT_BYTES};

pub(crate) use compile::apply;
