//! Surface-syntax parser for formulas and terms.
//!
//! The grammar is ASCII throughout. Binary connectives take an optional
//! flavor marker attached directly to the operator (`->i`, `\/c`); which
//! markers are admissible, and what a bare operator means, depends on the
//! dialect. Precedence from loosest to tightest: `->` (right associative),
//! `\/`, `/\` (left associative), `~`, postfix `^c`. A quantifier body
//! extends to the right as far as possible.
//!
//! Flavor resolution per dialect:
//! in NE a bare `/\` and `forall` are the neutral connectives, disjunction,
//! implication and the existential must be flavored, and `foralli` is an
//! alias of the neutral `forall`; in NE_K every connective is flavored and
//! the bare `/\`/`forall` are aliases of the intuitionistic ones; in ECI,
//! NJ and NK only bare connectives exist. Atom suffixes `_c`/`_i` select
//! the atom flavor (unsuffixed atoms are intuitionistic); the classical
//! label `^c` is ECI-only.

use crate::syntax::{BinOp, Flavor, Formula, QuantOp, SystemId, Term};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at column {col}: {msg}")]
    Syntax { col: usize, msg: String },
    #[error("dialect error at column {col}: {msg}")]
    Dialect { col: usize, msg: String },
}

fn syntax_err<T>(col: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError::Syntax {
        col,
        msg: msg.into(),
    })
}

fn dialect_err<T>(col: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError::Dialect {
        col,
        msg: msg.into(),
    })
}

/// Surface marker attached to an operator token: bare, `i`, or `c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Marker {
    Bare,
    I,
    C,
}

impl Marker {
    fn describe(self) -> &'static str {
        match self {
            Marker::Bare => "",
            Marker::I => "i",
            Marker::C => "c",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Param(String),
    Bin(BinOp, Marker),
    Tilde,
    CMark,
    LParen,
    RParen,
    Dot,
    Comma,
}

#[derive(Debug, Clone)]
struct Lexed {
    tok: Tok,
    /// 1-based column of the token's first character.
    col: usize,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic()
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn lex(text: &str) -> Result<Vec<Lexed>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let col = i + 1;
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
            }
            '(' => {
                toks.push(Lexed {
                    tok: Tok::LParen,
                    col,
                });
                i += 1;
            }
            ')' => {
                toks.push(Lexed {
                    tok: Tok::RParen,
                    col,
                });
                i += 1;
            }
            '.' => {
                toks.push(Lexed { tok: Tok::Dot, col });
                i += 1;
            }
            ',' => {
                toks.push(Lexed {
                    tok: Tok::Comma,
                    col,
                });
                i += 1;
            }
            '~' => {
                toks.push(Lexed {
                    tok: Tok::Tilde,
                    col,
                });
                i += 1;
            }
            '^' => {
                if chars.get(i + 1) == Some(&'c')
                    && chars.get(i + 2).map_or(true, |c| !is_ident_char(*c))
                {
                    toks.push(Lexed {
                        tok: Tok::CMark,
                        col,
                    });
                    i += 2;
                } else {
                    return syntax_err(col, "expected `^c`");
                }
            }
            '\'' => {
                let start = i + 1;
                let mut j = start;
                while j < chars.len() && is_ident_char(chars[j]) {
                    j += 1;
                }
                if j == start || !is_ident_start(chars[start]) {
                    return syntax_err(col, "expected parameter name after `'`");
                }
                toks.push(Lexed {
                    tok: Tok::Param(chars[start..j].iter().collect()),
                    col,
                });
                i = j;
            }
            '/' => {
                if chars.get(i + 1) == Some(&'\\') {
                    let (marker, len) = read_marker(&chars, i + 2);
                    toks.push(Lexed {
                        tok: Tok::Bin(BinOp::And, marker),
                        col,
                    });
                    i += 2 + len;
                } else {
                    return syntax_err(col, "expected `/\\`");
                }
            }
            '\\' => {
                if chars.get(i + 1) == Some(&'/') {
                    let (marker, len) = read_marker(&chars, i + 2);
                    toks.push(Lexed {
                        tok: Tok::Bin(BinOp::Or, marker),
                        col,
                    });
                    i += 2 + len;
                } else {
                    return syntax_err(col, "expected `\\/`");
                }
            }
            '-' => {
                if chars.get(i + 1) == Some(&'>') {
                    let (marker, len) = read_marker(&chars, i + 2);
                    toks.push(Lexed {
                        tok: Tok::Bin(BinOp::Imp, marker),
                        col,
                    });
                    i += 2 + len;
                } else {
                    return syntax_err(col, "expected `->`");
                }
            }
            c if is_ident_start(c) => {
                let mut j = i;
                while j < chars.len() && is_ident_char(chars[j]) {
                    j += 1;
                }
                toks.push(Lexed {
                    tok: Tok::Ident(chars[i..j].iter().collect()),
                    col,
                });
                i = j;
            }
            other => return syntax_err(col, format!("unexpected character `{other}`")),
        }
    }
    Ok(toks)
}

/// Reads an optional `i`/`c` flavor marker directly after an operator. The
/// marker attaches only when it is not the start of a longer identifier, so
/// `p -> q` and `p -> ic` keep their meaning.
fn read_marker(chars: &[char], at: usize) -> (Marker, usize) {
    match chars.get(at) {
        Some('i') if chars.get(at + 1).map_or(true, |c| !is_ident_char(*c)) => (Marker::I, 1),
        Some('c') if chars.get(at + 1).map_or(true, |c| !is_ident_char(*c)) => (Marker::C, 1),
        _ => (Marker::Bare, 0),
    }
}

struct Parser {
    toks: Vec<Lexed>,
    pos: usize,
    system: SystemId,
    end_col: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|l| &l.tok)
    }

    fn col(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|l| l.col)
            .unwrap_or(self.end_col)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|l| l.tok.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: &Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(want) {
            self.pos += 1;
            Ok(())
        } else {
            syntax_err(self.col(), format!("expected {what}"))
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        self.imp()
    }

    fn imp(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if let Some(Tok::Bin(BinOp::Imp, m)) = self.peek() {
            let m = *m;
            let col = self.col();
            self.pos += 1;
            let flavor = self.bin_flavor(BinOp::Imp, m, col)?;
            let rhs = self.imp()?;
            return Ok(Formula::imp(flavor, lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.and()?;
        while let Some(Tok::Bin(BinOp::Or, m)) = self.peek() {
            let m = *m;
            let col = self.col();
            self.pos += 1;
            let flavor = self.bin_flavor(BinOp::Or, m, col)?;
            let rhs = self.and()?;
            acc = Formula::or(flavor, acc, rhs);
        }
        Ok(acc)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.unary()?;
        while let Some(Tok::Bin(BinOp::And, m)) = self.peek() {
            let m = *m;
            let col = self.col();
            self.pos += 1;
            let flavor = self.bin_flavor(BinOp::And, m, col)?;
            let rhs = self.unary()?;
            acc = Formula::and(flavor, acc, rhs);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(Tok::Tilde) => {
                self.pos += 1;
                let body = self.unary()?;
                Ok(Formula::neg(self.system.neg_flavor(), body))
            }
            Some(Tok::Ident(id)) if quant_of(id).is_some() => {
                let (op, marker) = quant_of(id).unwrap();
                let col = self.col();
                self.pos += 1;
                let flavor = self.quant_flavor(op, marker, col)?;
                let var = match self.bump() {
                    Some(Tok::Ident(v)) if quant_of(&v).is_none() && v != "bot" => v,
                    _ => return syntax_err(self.col(), "expected bound variable name"),
                };
                self.expect(&Tok::Dot, "`.` after bound variable")?;
                let body = self.imp()?;
                Ok(Formula::quant(op, flavor, &var, body))
            }
            _ => self.postfix(),
        }
    }

    fn postfix(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.primary()?;
        while self.peek() == Some(&Tok::CMark) {
            let col = self.col();
            self.pos += 1;
            if !self.system.clabel_allowed() {
                return dialect_err(
                    col,
                    format!("classical label ^c is not in the {} grammar", self.system),
                );
            }
            acc = Formula::clabel(acc);
        }
        Ok(acc)
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        let col = self.col();
        match self.bump() {
            Some(Tok::LParen) => {
                let f = self.imp()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(f)
            }
            Some(Tok::Ident(id)) => {
                if id == "bot" {
                    return Ok(Formula::Bot);
                }
                if quant_of(&id).is_some() {
                    return syntax_err(col, format!("quantifier `{id}` cannot start an operand here"));
                }
                let (pred, flavor) = self.atom_name(&id, col)?;
                let args = if self.peek() == Some(&Tok::LParen) {
                    self.pos += 1;
                    let mut args = vec![self.term()?];
                    while self.peek() == Some(&Tok::Comma) {
                        self.pos += 1;
                        args.push(self.term()?);
                    }
                    self.expect(&Tok::RParen, "`)` after atom arguments")?;
                    args
                } else {
                    Vec::new()
                };
                Ok(Formula::atom_args(&pred, flavor, args))
            }
            Some(other) => syntax_err(col, format!("unexpected token {other:?}")),
            None => syntax_err(col, "unexpected end of input"),
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let col = self.col();
        match self.bump() {
            Some(Tok::Param(p)) => Ok(Term::Param(p)),
            Some(Tok::Ident(id)) => {
                if id == "bot" || quant_of(&id).is_some() {
                    return syntax_err(col, format!("`{id}` is reserved and cannot be a term"));
                }
                if self.peek() == Some(&Tok::LParen) {
                    self.pos += 1;
                    let mut args = Vec::new();
                    if self.peek() != Some(&Tok::RParen) {
                        args.push(self.term()?);
                        while self.peek() == Some(&Tok::Comma) {
                            self.pos += 1;
                            args.push(self.term()?);
                        }
                    }
                    self.expect(&Tok::RParen, "`)` after function arguments")?;
                    Ok(Term::App(id, args))
                } else {
                    Ok(Term::Var(id))
                }
            }
            _ => syntax_err(col, "expected a term"),
        }
    }

    /// Splits a trailing `_c`/`_i` flavor suffix off an atom name.
    fn atom_name(&self, id: &str, col: usize) -> Result<(String, Flavor), ParseError> {
        let (pred, flavor) = if let Some(stem) = id.strip_suffix("_c") {
            if stem.is_empty() {
                (id.to_string(), Flavor::Int)
            } else {
                (stem.to_string(), Flavor::Cls)
            }
        } else if let Some(stem) = id.strip_suffix("_i") {
            if stem.is_empty() {
                (id.to_string(), Flavor::Int)
            } else {
                (stem.to_string(), Flavor::Int)
            }
        } else {
            (id.to_string(), Flavor::Int)
        };
        if !self.system.allowed_atom_flavors().contains(&flavor) {
            return dialect_err(
                col,
                format!(
                    "classical atom `{id}` is not in the {} grammar (use the ^c label in eci)",
                    self.system
                ),
            );
        }
        Ok((pred, flavor))
    }

    fn bin_flavor(&self, op: BinOp, m: Marker, col: usize) -> Result<Flavor, ParseError> {
        let tok = format!("{}{}", bare_token(op), m.describe());
        let flavor = match m {
            Marker::Bare => match (self.system, op) {
                (SystemId::Ne, BinOp::And) => Flavor::Neutral,
                (SystemId::Nek, BinOp::And) => Flavor::Int,
                (SystemId::Ne | SystemId::Nek, _) => {
                    return dialect_err(
                        col,
                        format!(
                            "bare `{tok}` is not in the {} grammar; write `{tok}i` or `{tok}c`",
                            self.system
                        ),
                    )
                }
                (_, _) => Flavor::Neutral,
            },
            Marker::I => match (self.system, op) {
                (SystemId::Ne, BinOp::And) => {
                    return dialect_err(col, "`/\\i` is not in the ne grammar; conjunction is `/\\`")
                }
                (SystemId::Ne | SystemId::Nek, _) => Flavor::Int,
                (_, _) => {
                    return dialect_err(
                        col,
                        format!("flavored `{tok}` is not in the {} grammar", self.system),
                    )
                }
            },
            Marker::C => match (self.system, op) {
                (SystemId::Ne, BinOp::And) => {
                    return dialect_err(col, "`/\\c` is not in the ne grammar (nek has it)")
                }
                (SystemId::Ne | SystemId::Nek, _) => Flavor::Cls,
                (_, _) => {
                    return dialect_err(
                        col,
                        format!("flavored `{tok}` is not in the {} grammar", self.system),
                    )
                }
            },
        };
        Ok(flavor)
    }

    fn quant_flavor(&self, op: QuantOp, m: Marker, col: usize) -> Result<Flavor, ParseError> {
        let tok = format!("{}{}", bare_quant_token(op), m.describe());
        let flavor = match m {
            Marker::Bare => match (self.system, op) {
                (SystemId::Ne, QuantOp::Forall) => Flavor::Neutral,
                (SystemId::Nek, QuantOp::Forall) => Flavor::Int,
                (SystemId::Ne | SystemId::Nek, QuantOp::Exists) => {
                    return dialect_err(
                        col,
                        format!(
                            "bare `exists` is not in the {} grammar; write `existsi` or `existsc`",
                            self.system
                        ),
                    )
                }
                (_, _) => Flavor::Neutral,
            },
            Marker::I => match (self.system, op) {
                (SystemId::Ne, QuantOp::Forall) => Flavor::Neutral,
                (SystemId::Nek, QuantOp::Forall) => Flavor::Int,
                (SystemId::Ne | SystemId::Nek, QuantOp::Exists) => Flavor::Int,
                (_, _) => {
                    return dialect_err(
                        col,
                        format!("flavored `{tok}` is not in the {} grammar", self.system),
                    )
                }
            },
            Marker::C => match (self.system, op) {
                (SystemId::Ne, QuantOp::Forall) => {
                    return dialect_err(col, "`forallc` is not in the ne grammar (nek has it)")
                }
                (SystemId::Nek, QuantOp::Forall) => Flavor::Cls,
                (SystemId::Ne | SystemId::Nek, QuantOp::Exists) => Flavor::Cls,
                (_, _) => {
                    return dialect_err(
                        col,
                        format!("flavored `{tok}` is not in the {} grammar", self.system),
                    )
                }
            },
        };
        Ok(flavor)
    }
}

fn bare_token(op: BinOp) -> &'static str {
    match op {
        BinOp::And => "/\\",
        BinOp::Or => "\\/",
        BinOp::Imp => "->",
    }
}

fn bare_quant_token(op: QuantOp) -> &'static str {
    match op {
        QuantOp::Forall => "forall",
        QuantOp::Exists => "exists",
    }
}

fn quant_of(id: &str) -> Option<(QuantOp, Marker)> {
    match id {
        "forall" => Some((QuantOp::Forall, Marker::Bare)),
        "foralli" => Some((QuantOp::Forall, Marker::I)),
        "forallc" => Some((QuantOp::Forall, Marker::C)),
        "exists" => Some((QuantOp::Exists, Marker::Bare)),
        "existsi" => Some((QuantOp::Exists, Marker::I)),
        "existsc" => Some((QuantOp::Exists, Marker::C)),
        _ => None,
    }
}

/// Parses a formula in the given dialect. The result is always well-formed
/// in that dialect; constructs outside the dialect's grammar are reported
/// as dialect errors with the offending column.
pub fn parse_formula(text: &str, system: SystemId) -> Result<Formula, ParseError> {
    let toks = lex(text)?;
    let end_col = text.chars().count() + 1;
    let mut p = Parser {
        toks,
        pos: 0,
        system,
        end_col,
    };
    let f = p.formula()?;
    if p.pos != p.toks.len() {
        return syntax_err(p.col(), "trailing input after formula");
    }
    Ok(f)
}

/// Parses a bare term (for rule witnesses): `x`, `'a`, `f(x, 'a)`, `c()`.
pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    let toks = lex(text)?;
    let end_col = text.chars().count() + 1;
    let mut p = Parser {
        toks,
        pos: 0,
        system: SystemId::Nj,
        end_col,
    };
    let t = p.term()?;
    if p.pos != p.toks.len() {
        return syntax_err(p.col(), "trailing input after term");
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{alpha_eq, well_formed};

    fn p_int() -> Formula {
        Formula::atom("p", Flavor::Int)
    }

    #[test]
    fn parses_flavored_connectives_in_ne() {
        let f = parse_formula("p ->i (q \\/c r)", SystemId::Ne).unwrap();
        assert_eq!(
            f,
            Formula::imp(
                Flavor::Int,
                p_int(),
                Formula::or(
                    Flavor::Cls,
                    Formula::atom("q", Flavor::Int),
                    Formula::atom("r", Flavor::Int)
                )
            )
        );
    }

    #[test]
    fn parses_classical_label_in_eci() {
        let f = parse_formula("(p /\\ q)^c", SystemId::Eci).unwrap();
        assert_eq!(
            f,
            Formula::clabel(Formula::and(
                Flavor::Neutral,
                p_int(),
                Formula::atom("q", Flavor::Int)
            ))
        );
    }

    #[test]
    fn rejects_flavored_arrow_in_eci() {
        let e = parse_formula("p ->c q", SystemId::Eci).unwrap_err();
        assert!(matches!(e, ParseError::Dialect { .. }));
        let e = parse_formula("p ->i q", SystemId::Nj).unwrap_err();
        assert!(matches!(e, ParseError::Dialect { .. }));
    }

    #[test]
    fn rejects_bare_arrow_in_ne() {
        let e = parse_formula("p -> q", SystemId::Ne).unwrap_err();
        assert!(matches!(e, ParseError::Dialect { .. }));
        let e = parse_formula("p \\/ q", SystemId::Nek).unwrap_err();
        assert!(matches!(e, ParseError::Dialect { .. }));
    }

    #[test]
    fn bare_and_and_forall_alias_per_dialect() {
        let f = parse_formula("p /\\ q", SystemId::Ne).unwrap();
        assert!(matches!(f, Formula::Bin { flavor: Flavor::Neutral, .. }));
        let f = parse_formula("p /\\ q", SystemId::Nek).unwrap();
        assert!(matches!(f, Formula::Bin { flavor: Flavor::Int, .. }));
        let f = parse_formula("forall x. P(x)", SystemId::Nek).unwrap();
        assert!(matches!(f, Formula::Quant { flavor: Flavor::Int, .. }));
        let f = parse_formula("foralli x. P(x)", SystemId::Ne).unwrap();
        assert!(matches!(f, Formula::Quant { flavor: Flavor::Neutral, .. }));
    }

    #[test]
    fn negation_flavor_tracks_dialect() {
        let f = parse_formula("~p", SystemId::Ne).unwrap();
        assert_eq!(f, Formula::neg(Flavor::Int, p_int()));
        let f = parse_formula("~p", SystemId::Eci).unwrap();
        assert_eq!(f, Formula::neg(Flavor::Neutral, p_int()));
    }

    #[test]
    fn atom_suffixes() {
        let f = parse_formula("p_c", SystemId::Ne).unwrap();
        assert_eq!(f, Formula::atom("p", Flavor::Cls));
        let f = parse_formula("P_i(x)", SystemId::Ne).unwrap();
        assert_eq!(
            f,
            Formula::atom_args("P", Flavor::Int, vec![Term::var("x")])
        );
        let e = parse_formula("p_c", SystemId::Eci).unwrap_err();
        assert!(matches!(e, ParseError::Dialect { .. }));
        // A lone `p` is intuitionistic everywhere.
        let f = parse_formula("p", SystemId::Nek).unwrap();
        assert_eq!(f, p_int());
    }

    #[test]
    fn quantifier_body_extends_right() {
        let f = parse_formula("forall x. P(x) ->i q", SystemId::Ne).unwrap();
        match &f {
            Formula::Quant { body, .. } => {
                assert!(matches!(**body, Formula::Bin { op: BinOp::Imp, .. }))
            }
            other => panic!("expected quantifier at root, got {other:?}"),
        }
        let g = parse_formula("(forall x. P(x)) ->i q", SystemId::Ne).unwrap();
        assert!(matches!(g, Formula::Bin { op: BinOp::Imp, .. }));
    }

    #[test]
    fn precedence_and_associativity() {
        let f = parse_formula("p ->i q ->i r", SystemId::Ne).unwrap();
        // Right associative: p ->i (q ->i r).
        match &f {
            Formula::Bin { op: BinOp::Imp, lhs, .. } => assert_eq!(**lhs, p_int()),
            other => panic!("expected implication, got {other:?}"),
        }
        let g = parse_formula("p \\/ q \\/ r", SystemId::Nj).unwrap();
        // Left associative: (p \/ q) \/ r.
        match &g {
            Formula::Bin { op: BinOp::Or, rhs, .. } => {
                assert_eq!(**rhs, Formula::atom("r", Flavor::Int))
            }
            other => panic!("expected disjunction, got {other:?}"),
        }
        let h = parse_formula("~p /\\ q", SystemId::Nj).unwrap();
        assert!(matches!(h, Formula::Bin { op: BinOp::And, .. }));
    }

    #[test]
    fn doubly_labeled_atom_collapses_at_parse() {
        let f = parse_formula("p^c^c", SystemId::Eci).unwrap();
        assert_eq!(f, Formula::clabel(p_int()));
        let g = parse_formula("((p /\\ q)^c)^c", SystemId::Eci).unwrap();
        assert_eq!(g.clabel_count(), 2);
    }

    #[test]
    fn label_outside_eci_is_dialect_error() {
        for s in [SystemId::Ne, SystemId::Nek, SystemId::Nj, SystemId::Nk] {
            let e = parse_formula("p^c", s).unwrap_err();
            assert!(matches!(e, ParseError::Dialect { .. }), "{s}: {e:?}");
        }
    }

    #[test]
    fn marker_only_attaches_when_detached_from_idents() {
        // `->i` with an identifier glued on is a bare arrow followed by
        // that identifier.
        let f = parse_formula("p -> iq", SystemId::Nj).unwrap();
        match &f {
            Formula::Bin { op: BinOp::Imp, rhs, .. } => {
                assert_eq!(**rhs, Formula::atom("iq", Flavor::Int))
            }
            other => panic!("expected implication, got {other:?}"),
        }
    }

    #[test]
    fn terms_parse_params_and_functions() {
        let t = parse_term("f(x, 'a)").unwrap();
        assert_eq!(
            t,
            Term::App("f".into(), vec![Term::var("x"), Term::param("a")])
        );
        let c = parse_term("c()").unwrap();
        assert_eq!(c, Term::cnst("c"));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let e = parse_formula("p ->", SystemId::Nj).unwrap_err();
        match e {
            ParseError::Syntax { col, .. } => assert_eq!(col, 5),
            other => panic!("expected syntax error, got {other:?}"),
        }
        let e = parse_formula("p @ q", SystemId::Nj).unwrap_err();
        match e {
            ParseError::Syntax { col, .. } => assert_eq!(col, 3),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn parse_results_are_well_formed() {
        let cases = [
            ("p ->i (q \\/c r)", SystemId::Ne),
            ("p /\\c q", SystemId::Nek),
            ("(p \\/ q)^c -> ~p^c", SystemId::Eci),
            ("forallc x. existsi y. P_c(x, y)", SystemId::Nek),
        ];
        for (text, system) in cases {
            let f = parse_formula(text, system).unwrap();
            assert!(
                well_formed(system, &f).is_empty(),
                "{text} in {system} parsed to ill-formed {f}"
            );
        }
    }

    #[test]
    fn print_parse_round_trip_spec_examples() {
        let examples = [
            ("~p", SystemId::Ne),
            ("forallc x. P(x)", SystemId::Nek),
            ("(bot)^c", SystemId::Eci),
            ("~(p /\\ q)^c", SystemId::Eci),
            ("p \\/i q ->i p /\\ q", SystemId::Ne),
            ("existsc x. (P(x) ->c forall y. Q(x, y))", SystemId::Nek),
        ];
        for (text, system) in examples {
            let f = parse_formula(text, system).unwrap();
            let printed = f.to_string();
            let again = parse_formula(&printed, system).unwrap();
            assert!(
                alpha_eq(&f, &again),
                "{text} printed as {printed} which reparsed differently"
            );
        }
    }
}
