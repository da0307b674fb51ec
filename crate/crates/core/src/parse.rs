//! Text syntax for terms and formulas.
//!
//! ```text
//! formula := term ("<=" | ">=" | "=") term
//! term    := word ("+" word)*
//! word    := factor ("*"? factor)*
//! factor  := (ident | "(" word ")") ("^" positive-int)?
//! ```
//!
//! Identifiers are maximal runs of `[A-Za-z0-9_]` starting with a letter or
//! underscore, so `xy` is one variable and `x*y` or `x y` is a product.
//! `≈`, `⪯` and `⪰` are accepted as synonyms for `=`, `<=` and `>=`.

use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::term::{Formula, Identity, Inequality, Term, TermError, VarTable, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("empty term")]
    EmptyTerm,
}

impl From<TermError> for ParseError {
    fn from(_: TermError) -> Self {
        ParseError::EmptyTerm
    }
}

struct Parser<'s, 'v> {
    src: &'s str,
    pos: usize,
    vars: &'v mut VarTable,
}

impl<'s, 'v> Parser<'s, 'v> {
    fn new(src: &'s str, vars: &'v mut VarTable) -> Self {
        Parser { src, pos: 0, vars }
    }

    fn err<T>(&self, msg: &str) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.src.len()
    }

    fn starts_factor(&mut self) -> bool {
        self.skip_ws();
        matches!(self.peek(), Some(c) if c == '(' || c == '_' || c.is_ascii_alphabetic())
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        self.skip_ws();
        if self.at_end() {
            return Err(ParseError::EmptyTerm);
        }
        let mut words = alloc::vec![self.word()?];
        while self.eat("+") {
            words.push(self.word()?);
        }
        Ok(Term::from_words(words)?)
    }

    fn word(&mut self) -> Result<Word, ParseError> {
        if !self.starts_factor() {
            return self.err("expected a variable or '('");
        }
        let mut w = self.factor()?;
        loop {
            if self.eat("*") {
                if !self.starts_factor() {
                    return self.err("expected a factor after '*'");
                }
                w = w.mul(&self.factor()?);
            } else if self.starts_factor() {
                w = w.mul(&self.factor()?);
            } else {
                return Ok(w);
            }
        }
    }

    fn factor(&mut self) -> Result<Word, ParseError> {
        self.skip_ws();
        let base = if self.eat("(") {
            let w = self.word()?;
            if !self.eat(")") {
                return self.err("expected ')'");
            }
            w
        } else {
            let start = self.pos;
            while let Some(c) = self.peek() {
                if c == '_' || c.is_ascii_alphanumeric() {
                    self.pos += 1;
                } else {
                    break;
                }
            }
            if start == self.pos {
                return self.err("expected an identifier");
            }
            Word::var(self.vars.intern(&self.src[start..self.pos]))
        };
        if self.eat("^") {
            self.skip_ws();
            let start = self.pos;
            while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                self.pos += 1;
            }
            let digits = &self.src[start..self.pos];
            match digits.parse::<u32>() {
                Ok(e) if e > 0 => Ok(base.pow(e)),
                _ => {
                    self.pos = start;
                    self.err("expected a positive integer exponent")
                }
            }
        } else {
            Ok(base)
        }
    }
}

pub fn parse_term(text: &str, vars: &mut VarTable) -> Result<Term, ParseError> {
    let mut p = Parser::new(text, vars);
    let t = p.term()?;
    if !p.at_end() {
        return p.err("unexpected trailing input");
    }
    Ok(t)
}

pub fn parse_word(text: &str, vars: &mut VarTable) -> Result<Word, ParseError> {
    let mut p = Parser::new(text, vars);
    if p.at_end() {
        return p.err("expected a word");
    }
    let w = p.word()?;
    if !p.at_end() {
        return p.err("unexpected trailing input");
    }
    Ok(w)
}

#[derive(Clone, Copy)]
enum Relation {
    Eq,
    Leq,
    Geq,
}

const RELATIONS: &[(&str, Relation)] = &[
    ("<=", Relation::Leq),
    (">=", Relation::Geq),
    ("≈", Relation::Eq),
    ("⪯", Relation::Leq),
    ("⪰", Relation::Geq),
    ("=", Relation::Eq),
];

/// Parses `u <= v`, `u >= v` or `u = v`. An inequality whose smaller side is a
/// single word becomes an [`Inequality`]; otherwise it is stored as the
/// identity `v ≈ v + u`.
pub fn parse_formula(text: &str, vars: &mut VarTable) -> Result<Formula, ParseError> {
    let mut p = Parser::new(text, vars);
    let lhs = p.term()?;
    p.skip_ws();
    let rel = RELATIONS.iter().find(|(tok, _)| p.src[p.pos..].starts_with(tok));
    let Some(&(tok, rel)) = rel else {
        return p.err("expected '<=', '>=' or '='");
    };
    p.pos += tok.len();
    let rhs = p.term()?;
    if !p.at_end() {
        return p.err("unexpected trailing input");
    }
    let (small, big) = match rel {
        Relation::Eq => return Ok(Formula::Identity(Identity::new(lhs, rhs))),
        Relation::Leq => (lhs, rhs),
        Relation::Geq => (rhs, lhs),
    };
    if small.len() == 1 {
        let q = small.into_words().pop().expect("one word");
        Ok(Formula::Inequality(Inequality::new(q, big)))
    } else {
        Ok(Formula::Identity(Identity::new(big.clone(), big.add(&small))))
    }
}

/// Canonical text of a term.
pub fn format_term(t: &Term, vars: &VarTable) -> String {
    alloc::format!("{}", t.display(vars))
}

pub fn format_word(w: &Word, vars: &VarTable) -> String {
    alloc::format!("{}", w.display(vars))
}

pub fn format_formula(f: &Formula, vars: &VarTable) -> String {
    alloc::format!("{}", f.display(vars))
}

/// Comma-separated words, used for flat-semiring generator lists.
pub fn parse_word_list(text: &str, vars: &mut VarTable) -> Result<Vec<Word>, ParseError> {
    text.split(',').map(|part| parse_word(part, vars)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::Word;

    #[test]
    fn parses_u1() {
        let mut vars = VarTable::new();
        let t = parse_term("x1*x2 + x2*x3 + x3*x1", &mut vars).unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(format_term(&t, &vars), "x1*x2 + x1*x3 + x2*x3");
    }

    #[test]
    fn exponents_and_dedup() {
        let mut vars = VarTable::new();
        let t = parse_term("x^2", &mut vars).unwrap();
        let x = vars.get("x").unwrap();
        assert_eq!(t, Term::word(Word::power(x, 2).unwrap()));
        let d = parse_term("x + x", &mut vars).unwrap();
        assert_eq!(d, Term::var(x));
    }

    #[test]
    fn implicit_products_and_groups() {
        let mut vars = VarTable::new();
        let a = parse_term("x y x", &mut vars).unwrap();
        let b = parse_term("x^2*y", &mut vars).unwrap();
        assert_eq!(a, b);
        let c = parse_term("(x*y)^2", &mut vars).unwrap();
        assert_eq!(format_term(&c, &vars), "x^2*y^2");
    }

    #[test]
    fn errors_carry_positions() {
        let mut vars = VarTable::new();
        assert_eq!(parse_term("  ", &mut vars), Err(ParseError::EmptyTerm));
        match parse_term("x + ", &mut vars) {
            Err(ParseError::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_term("x^0", &mut vars),
            Err(ParseError::Syntax { pos: 2, .. })
        ));
        assert!(parse_term("x * + y", &mut vars).is_err());
        assert!(parse_term("(x", &mut vars).is_err());
    }

    #[test]
    fn formulas() {
        let mut vars = VarTable::new();
        let f = parse_formula("x1*x4 <= x1*x2 + x2*x3 + x3*x4", &mut vars).unwrap();
        assert!(matches!(f, Formula::Inequality(ref q) if q.rhs.len() == 3));
        let g = parse_formula("x^2 = x + x*y", &mut vars).unwrap();
        assert!(matches!(g, Formula::Identity(_)));
        let h = parse_formula("x + x*y ⪰ x^2", &mut vars).unwrap();
        assert!(matches!(h, Formula::Inequality(ref q) if q.lhs.degree() == 2));
        let m = parse_formula("x + y <= z", &mut vars).unwrap();
        assert_eq!(format_formula(&m, &vars), "z = x + y + z");
        assert!(parse_formula("x y", &mut vars).is_err());
    }
}
