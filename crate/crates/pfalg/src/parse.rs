//! Text syntax for terms, equations and quasiequations.
//!
//! ```text
//! term  := '0' | "1'" | IDENT | 'd(' term ')' | 'a(' term ')' | 'r(' term ')'
//!        | 'fix(' term ')' | term '^' | term ';' term | term '.' term
//!        | term '+' term | '(' term ')'
//! IDENT := [a-z][a-zA-Z0-9_]*
//! ```
//!
//! Precedence, tightest first: postfix `^`, then `;`, `.`, `+`; binary
//! operators associate to the left. An equation is `term '=' term`; a
//! quasiequation is `eq ('&' eq)* '=>' eq`.

use thiserror::Error;

use crate::sig::Op;
use crate::term::{Equation, Quasiequation, Term};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("unexpected character `{0}` at byte {1}")]
    UnexpectedChar(char, usize),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("expected {expected} but found `{found}` at byte {at}")]
    Unexpected {
        expected: &'static str,
        found: String,
        at: usize,
    },
    #[error("trailing input `{0}` at byte {1}")]
    TrailingInput(String, usize),
    #[error("`=>` may appear at most once")]
    MultipleImplications,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    UnaryOp(Op), // d( a( r( fix(  — consumed together with the open paren
    Zero,
    Identity,
    Semi,
    Dot,
    Plus,
    Caret,
    LParen,
    RParen,
    Eq,
    Amp,
    Implies,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    toks: Vec<(Tok, usize)>,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let mut lx = Lexer {
        src: src.as_bytes(),
        pos: 0,
        toks: Vec::new(),
    };
    while lx.pos < lx.src.len() {
        let at = lx.pos;
        let c = lx.src[lx.pos] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => lx.pos += 1,
            ';' => lx.push1(Tok::Semi),
            '.' => lx.push1(Tok::Dot),
            '+' => lx.push1(Tok::Plus),
            '^' => lx.push1(Tok::Caret),
            '(' => lx.push1(Tok::LParen),
            ')' => lx.push1(Tok::RParen),
            '&' => lx.push1(Tok::Amp),
            '=' => {
                if lx.src.get(lx.pos + 1) == Some(&b'>') {
                    lx.toks.push((Tok::Implies, at));
                    lx.pos += 2;
                } else {
                    lx.push1(Tok::Eq);
                }
            }
            '0' => lx.push1(Tok::Zero),
            '1' => {
                if lx.src.get(lx.pos + 1) == Some(&b'\'') {
                    lx.toks.push((Tok::Identity, at));
                    lx.pos += 2;
                } else {
                    return Err(ParseError::UnexpectedChar('1', at));
                }
            }
            'a'..='z' => {
                let start = lx.pos;
                lx.pos += 1;
                while lx.pos < lx.src.len() {
                    let d = lx.src[lx.pos] as char;
                    if d.is_ascii_alphanumeric() || d == '_' {
                        lx.pos += 1;
                    } else {
                        break;
                    }
                }
                let word = std::str::from_utf8(&lx.src[start..lx.pos])
                    .unwrap()
                    .to_string();
                // `d`, `a`, `r`, `fix` immediately followed by `(` are unary
                // operators; otherwise the word is a variable.
                let unary = match word.as_str() {
                    "d" => Some(Op::Dom),
                    "a" => Some(Op::AntiDom),
                    "r" => Some(Op::Range),
                    "fix" => Some(Op::Fixset),
                    _ => None,
                };
                match unary {
                    Some(op) if lx.src.get(lx.pos) == Some(&b'(') => {
                        lx.pos += 1;
                        lx.toks.push((Tok::UnaryOp(op), start));
                    }
                    _ => lx.toks.push((Tok::Ident(word), start)),
                }
            }
            other => return Err(ParseError::UnexpectedChar(other, at)),
        }
    }
    Ok(lx.toks)
}

impl<'a> Lexer<'a> {
    fn push1(&mut self, t: Tok) {
        self.toks.push((t, self.pos));
        self.pos += 1;
    }
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn at(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|(_, a)| *a)
            .unwrap_or(usize::MAX)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &'static str) -> Result<(), ParseError> {
        match self.bump() {
            Some(t) if t == want => Ok(()),
            Some(t) => Err(ParseError::Unexpected {
                expected: what,
                found: format!("{:?}", t),
                at: self.toks[self.pos - 1].1,
            }),
            None => Err(ParseError::UnexpectedEnd),
        }
    }

    // plus := meet ('+' meet)*
    fn term(&mut self) -> Result<Term, ParseError> {
        let mut t = self.meet()?;
        while self.peek() == Some(&Tok::Plus) {
            self.bump();
            let r = self.meet()?;
            t = Term::prefunion(t, r);
        }
        Ok(t)
    }

    // meet := comp ('.' comp)*
    fn meet(&mut self) -> Result<Term, ParseError> {
        let mut t = self.comp()?;
        while self.peek() == Some(&Tok::Dot) {
            self.bump();
            let r = self.comp()?;
            t = Term::meet(t, r);
        }
        Ok(t)
    }

    // comp := postfix (';' postfix)*
    fn comp(&mut self) -> Result<Term, ParseError> {
        let mut t = self.postfix()?;
        while self.peek() == Some(&Tok::Semi) {
            self.bump();
            let r = self.postfix()?;
            t = Term::compose(t, r);
        }
        Ok(t)
    }

    // postfix := atom '^'*
    fn postfix(&mut self) -> Result<Term, ParseError> {
        let mut t = self.atom()?;
        while self.peek() == Some(&Tok::Caret) {
            self.bump();
            t = Term::maxiter(t);
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        match self.bump() {
            Some(Tok::Zero) => Ok(Term::Zero),
            Some(Tok::Identity) => Ok(Term::Identity),
            Some(Tok::Ident(name)) => Ok(Term::Var(name)),
            Some(Tok::UnaryOp(op)) => {
                let inner = self.term()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Term::Unary(op, Box::new(inner)))
            }
            Some(Tok::LParen) => {
                let inner = self.term()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Some(t) => Err(ParseError::Unexpected {
                expected: "a term",
                found: format!("{:?}", t),
                at: self.toks[self.pos - 1].1,
            }),
            None => Err(ParseError::UnexpectedEnd),
        }
    }

    fn equation(&mut self) -> Result<Equation, ParseError> {
        let lhs = self.term()?;
        self.expect(Tok::Eq, "`=`")?;
        let rhs = self.term()?;
        Ok(Equation::new(lhs, rhs))
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.pos < self.toks.len() {
            Err(ParseError::TrailingInput(
                format!("{:?}", self.toks[self.pos].0),
                self.at(),
            ))
        } else {
            Ok(())
        }
    }
}

pub fn parse_term(src: &str) -> Result<Term, ParseError> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
    };
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

pub fn parse_equation(src: &str) -> Result<Equation, ParseError> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
    };
    let eq = p.equation()?;
    p.finish()?;
    Ok(eq)
}

/// Parse `eq ('&' eq)* '=>' eq`, or a bare equation.
pub fn parse_quasiequation(src: &str) -> Result<Quasiequation, ParseError> {
    if src.matches("=>").count() > 1 {
        return Err(ParseError::MultipleImplications);
    }
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
    };
    let mut eqs = vec![p.equation()?];
    loop {
        match p.peek() {
            Some(Tok::Amp) => {
                p.bump();
                eqs.push(p.equation()?);
            }
            Some(Tok::Implies) => {
                p.bump();
                let conclusion = p.equation()?;
                p.finish()?;
                return Ok(Quasiequation {
                    premises: eqs,
                    conclusion,
                    domain_sorted: Vec::new(),
                });
            }
            _ => break,
        }
    }
    p.finish()?;
    if eqs.len() > 1 {
        return Err(ParseError::Unexpected {
            expected: "`=>` after premises",
            found: "end of input".to_string(),
            at: usize::MAX,
        });
    }
    Ok(Quasiequation::equation(eqs.pop().unwrap()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_terms() {
        assert_eq!(parse_term("x").unwrap(), Term::var("x"));
        assert_eq!(parse_term("0").unwrap(), Term::Zero);
        assert_eq!(parse_term("1'").unwrap(), Term::Identity);
        assert_eq!(
            parse_term("d(x);y").unwrap(),
            Term::compose(Term::dom(Term::var("x")), Term::var("y"))
        );
    }

    #[test]
    fn bare_op_names_are_variables() {
        assert_eq!(parse_term("d").unwrap(), Term::var("d"));
        assert_eq!(parse_term("fix").unwrap(), Term::var("fix"));
        assert_eq!(
            parse_term("d(d);a").unwrap(),
            Term::compose(Term::dom(Term::var("d")), Term::var("a"))
        );
    }

    #[test]
    fn precedence_and_associativity() {
        // `;` binds tighter than `.`, which binds tighter than `+`
        assert_eq!(
            parse_term("x;y . z+w").unwrap(),
            Term::prefunion(
                Term::meet(
                    Term::compose(Term::var("x"), Term::var("y")),
                    Term::var("z")
                ),
                Term::var("w")
            )
        );
        // left associativity
        assert_eq!(
            parse_term("x;y;z").unwrap(),
            Term::compose(
                Term::compose(Term::var("x"), Term::var("y")),
                Term::var("z")
            )
        );
        // postfix binds tightest
        assert_eq!(
            parse_term("x;y^").unwrap(),
            Term::compose(Term::var("x"), Term::maxiter(Term::var("y")))
        );
    }

    #[test]
    fn equations_and_quasiequations() {
        let eq = parse_equation("d(x);x = x").unwrap();
        assert_eq!(eq.lhs.length(), 4);
        let q = parse_quasiequation("x;y = x;z => r(x);y = r(x);z").unwrap();
        assert_eq!(q.premises.len(), 1);
        let q = parse_quasiequation("d(x);x = x").unwrap();
        assert!(q.is_equation());
        assert!(parse_quasiequation("x = y & y = z").is_err());
    }

    #[test]
    fn error_reporting() {
        assert!(matches!(parse_term("x;"), Err(ParseError::UnexpectedEnd)));
        assert!(matches!(
            parse_term("x)"),
            Err(ParseError::TrailingInput(..))
        ));
        assert!(matches!(
            parse_term("X"),
            Err(ParseError::UnexpectedChar('X', 0))
        ));
        assert!(matches!(
            parse_term("1"),
            Err(ParseError::UnexpectedChar('1', 0))
        ));
    }
}
