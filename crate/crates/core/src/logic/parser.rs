//! Recursive-descent parser for the formula surface syntax.
//!
//! ```text
//! formula := xor ( ('|' | OR) xor )*
//! xor     := and ( ('^' | XOR) and )*
//! and     := unary ( ('&' | AND) unary )*
//! unary   := ('~' | '!') unary | primary
//! primary := ident | '(' formula ')'
//! ident   := [A-Za-z_][A-Za-z0-9_+-]*
//! ```
//!
//! Keyword aliases are case-insensitive and cannot be used as atom names.

use super::ast::{BinOp, Formula};
use crate::error::{ParseError, SyntaxError};

pub const MAX_INPUT_BYTES: usize = 64 * 1024;
pub const MAX_DEPTH: usize = 64;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Not,
    Op(BinOp),
    LParen,
    RParen,
    Invalid(char),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier {s:?}"),
            Tok::Not => "'~'".into(),
            Tok::Op(op) => format!("'{}'", op.symbol()),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Invalid(c) => format!("{c:?}"),
            Tok::End => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '+' | '-')
}

fn lex(text: &str) -> Vec<Spanned> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1, 1);
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        let mut advance = |c: char| {
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        };
        if c.is_whitespace() {
            chars.next();
            advance(c);
            continue;
        }
        let tok = if is_ident_start(c) {
            let mut word = String::new();
            while let Some(&c) = chars.peek() {
                if !is_ident_continue(c) {
                    break;
                }
                word.push(c);
                chars.next();
                advance(c);
            }
            match word.to_ascii_uppercase().as_str() {
                "AND" => Tok::Op(BinOp::And),
                "OR" => Tok::Op(BinOp::Or),
                "XOR" => Tok::Op(BinOp::Xor),
                _ => Tok::Ident(word),
            }
        } else {
            chars.next();
            advance(c);
            match c {
                '~' | '!' => Tok::Not,
                '&' => Tok::Op(BinOp::And),
                '|' => Tok::Op(BinOp::Or),
                '^' => Tok::Op(BinOp::Xor),
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                other => Tok::Invalid(other),
            }
        };
        out.push(Spanned {
            tok,
            line: l,
            column: col,
        });
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        column,
    });
    out
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    nesting: usize,
}

const OPERAND: &[&str] = &["identifier", "'('", "'~'"];
const OPERATORS: &[&str] = &["'&'", "'^'", "'|'"];

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        let t = self.peek();
        SyntaxError {
            line: t.line,
            column: t.column,
            found: t.tok.describe(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
        .into()
    }

    fn enter(&mut self) -> Result<(), ParseError> {
        self.nesting += 1;
        if self.nesting > MAX_DEPTH {
            let t = self.peek();
            return Err(ParseError::TooDeep {
                limit: MAX_DEPTH,
                line: t.line,
                column: t.column,
            });
        }
        Ok(())
    }

    fn binary(&mut self, op: BinOp) -> Result<Formula, ParseError> {
        let mut lhs = self.operand(op)?;
        while self.peek().tok == Tok::Op(op) {
            self.bump();
            let rhs = self.operand(op)?;
            lhs = Formula::binary(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn operand(&mut self, op: BinOp) -> Result<Formula, ParseError> {
        match op {
            BinOp::Or => self.binary(BinOp::Xor),
            BinOp::Xor => self.binary(BinOp::And),
            BinOp::And => self.unary(),
        }
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().tok.clone() {
            Tok::Not => {
                self.bump();
                self.enter()?;
                let inner = self.unary()?;
                self.nesting -= 1;
                Ok(Formula::not(inner))
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(Formula::Atom(name))
            }
            Tok::LParen => {
                self.bump();
                self.enter()?;
                let inner = self.binary(BinOp::Or)?;
                if self.peek().tok != Tok::RParen {
                    let mut expected = OPERATORS.to_vec();
                    expected.push("')'");
                    return Err(self.error(&expected));
                }
                self.bump();
                self.nesting -= 1;
                Ok(inner)
            }
            _ => Err(self.error(OPERAND)),
        }
    }
}

/// Parses `text` into a formula tree of depth at most [`MAX_DEPTH`].
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    if text.len() > MAX_INPUT_BYTES {
        return Err(ParseError::TooLong {
            len: text.len(),
            limit: MAX_INPUT_BYTES,
        });
    }
    let mut p = Parser {
        toks: lex(text),
        pos: 0,
        nesting: 0,
    };
    let f = p.binary(BinOp::Or)?;
    if p.peek().tok != Tok::End {
        let mut expected = OPERATORS.to_vec();
        expected.push("end of input");
        return Err(p.error(&expected));
    }
    if f.depth() > MAX_DEPTH {
        return Err(ParseError::TooDeep {
            limit: MAX_DEPTH,
            line: 1,
            column: 1,
        });
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(name: &str) -> Formula {
        Formula::atom(name)
    }

    fn syntax(text: &str) -> SyntaxError {
        match parse(text) {
            Err(ParseError::Syntax(e)) => e,
            other => panic!("{text:?} -> {other:?}"),
        }
    }

    #[test]
    fn literal_formulas() {
        assert_eq!(parse("X+ ^ X-").unwrap(), Formula::xor(a("X+"), a("X-")));
        assert_eq!(
            parse("~(A & B)").unwrap(),
            Formula::not(Formula::and(a("A"), a("B")))
        );
        assert_eq!(
            parse("X+ & ~X+").unwrap(),
            Formula::and(a("X+"), Formula::not(a("X+")))
        );
        assert_eq!(
            parse("Z+ & (X+ | ~X+)").unwrap(),
            Formula::and(a("Z+"), Formula::or(a("X+"), Formula::not(a("X+"))))
        );
    }

    #[test]
    fn precedence_and_associativity() {
        // ~ > & > ^ > |
        assert_eq!(
            parse("A | B ^ C & ~D").unwrap(),
            Formula::or(
                a("A"),
                Formula::xor(a("B"), Formula::and(a("C"), Formula::not(a("D"))))
            )
        );
        assert_eq!(
            parse("A & B & C").unwrap(),
            Formula::and(Formula::and(a("A"), a("B")), a("C"))
        );
        assert_eq!(
            parse("A ^ B ^ C").unwrap(),
            Formula::xor(Formula::xor(a("A"), a("B")), a("C"))
        );
    }

    #[test]
    fn aliases() {
        assert_eq!(
            parse("!a and b Or c xor d").unwrap(),
            parse("~a & b | c ^ d").unwrap()
        );
        // an operator character after an atom is part of the name
        assert_eq!(parse("X+-").unwrap(), a("X+-"));
        assert_eq!(parse("ANDY").unwrap(), a("ANDY"));
    }

    #[test]
    fn malformed_input_reports_position() {
        let e = syntax("A & | B");
        assert_eq!((e.line, e.column), (1, 5));
        assert_eq!(e.found, "'|'");
        assert!(e.expected.contains(&"identifier".to_string()));

        let e = syntax("(A & B");
        assert_eq!((e.line, e.column), (1, 7));
        assert!(e.expected.contains(&"')'".to_string()));

        let e = syntax("A\n  B");
        assert_eq!((e.line, e.column), (2, 3));
        assert!(e.expected.contains(&"end of input".to_string()));

        let e = syntax("A $ B");
        assert_eq!(e.column, 3);
        assert_eq!(syntax("").found, "end of input");
        assert_eq!(syntax("+A").column, 1);
    }

    #[test]
    fn limits() {
        let deep = format!("{}A{}", "(".repeat(70), ")".repeat(70));
        assert!(matches!(parse(&deep), Err(ParseError::TooDeep { .. })));
        let chain = vec!["A"; 80].join(" & ");
        assert!(matches!(parse(&chain), Err(ParseError::TooDeep { .. })));
        let ok = vec!["A"; 64].join(" & ");
        assert!(parse(&ok).is_ok());
        let long = "A".repeat(MAX_INPUT_BYTES + 1);
        assert!(matches!(parse(&long), Err(ParseError::TooLong { .. })));
    }
}
