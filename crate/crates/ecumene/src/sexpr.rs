//! Proof files: s-expression serialization and the corpus header line.
//!
//! A proof file holds one node:
//!
//! ```text
//! node := (hyp <label> "<formula>")
//!       | (<rule> "<conclusion>" [:d <label>...] [:eigen <ident>] [:wit "<term>"] <node>...)
//! ```
//!
//! Comments run from `;` to end of line. Corpus files open with a header
//! comment naming the system, the expected verdict, and the judgment:
//!
//! ```text
//! ;; system: eci expect: ok judgment: "{(p)^c} |- ~~p"
//! ```

use crate::kernel::{Judgment, Proof, RuleId};
use crate::parse::{parse_formula, parse_term, ParseError};
use crate::syntax::{Formula, SystemId};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SexprError {
    #[error("proof syntax: {0}")]
    Syntax(String),
    #[error("unknown rule `{0}`")]
    UnknownRule(String),
    #[error("{0}")]
    Formula(#[from] ParseError),
    #[error("header: {0}")]
    Header(String),
}

fn err<T>(msg: impl Into<String>) -> Result<T, SexprError> {
    Err(SexprError::Syntax(msg.into()))
}

// ---------------------------------------------------------------------------
// Tokenizer
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    LParen,
    RParen,
    Str(String),
    Word(String),
}

fn tokenize(text: &str) -> Result<Vec<Tok>, SexprError> {
    let mut toks = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ';' => {
                for d in chars.by_ref() {
                    if d == '\n' {
                        break;
                    }
                }
            }
            '(' => {
                chars.next();
                toks.push(Tok::LParen);
            }
            ')' => {
                chars.next();
                toks.push(Tok::RParen);
            }
            '"' => {
                chars.next();
                let mut s = String::new();
                loop {
                    match chars.next() {
                        Some('"') => break,
                        Some(d) => s.push(d),
                        None => return err("unterminated string"),
                    }
                }
                toks.push(Tok::Str(s));
            }
            c if c.is_whitespace() => {
                chars.next();
            }
            _ => {
                let mut w = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_whitespace() || d == '(' || d == ')' || d == '"' || d == ';' {
                        break;
                    }
                    w.push(d);
                    chars.next();
                }
                toks.push(Tok::Word(w));
            }
        }
    }
    Ok(toks)
}

// ---------------------------------------------------------------------------
// Proof parsing
// ---------------------------------------------------------------------------

struct Cursor {
    toks: Vec<Tok>,
    pos: usize,
}

impl Cursor {
    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }
}

/// Parses one proof node, formulas read in the given system's dialect.
pub fn parse_proof(text: &str, system: SystemId) -> Result<Proof, SexprError> {
    let toks = tokenize(text)?;
    let mut cur = Cursor { toks, pos: 0 };
    let p = parse_node(&mut cur, system)?;
    match cur.next() {
        None => Ok(p),
        Some(t) => err(format!("trailing input after proof: {t:?}")),
    }
}

fn parse_node(cur: &mut Cursor, system: SystemId) -> Result<Proof, SexprError> {
    match cur.next() {
        Some(Tok::LParen) => {}
        other => return err(format!("expected `(`, found {other:?}")),
    }
    let head = match cur.next() {
        Some(Tok::Word(w)) => w,
        other => return err(format!("expected rule name, found {other:?}")),
    };
    if head == "hyp" {
        let label = match cur.next() {
            Some(Tok::Word(w)) => w
                .parse::<u32>()
                .map_err(|_| SexprError::Syntax(format!("bad label `{w}`")))?,
            other => return err(format!("expected label, found {other:?}")),
        };
        if label == 0 {
            return err("hypothesis labels are positive");
        }
        let formula = parse_quoted_formula(cur, system)?;
        match cur.next() {
            Some(Tok::RParen) => Ok(Proof::hyp(label, formula)),
            other => err(format!("expected `)`, found {other:?}")),
        }
    } else {
        let rule = RuleId::from_name(&head).ok_or(SexprError::UnknownRule(head))?;
        let conclusion = parse_quoted_formula(cur, system)?;
        let mut discharges = Vec::new();
        let mut eigen = None;
        let mut witness = None;
        let mut premises = Vec::new();
        loop {
            match cur.peek() {
                Some(Tok::RParen) => {
                    cur.next();
                    break;
                }
                Some(Tok::LParen) => premises.push(parse_node(cur, system)?),
                Some(Tok::Word(w)) if w == ":d" => {
                    cur.next();
                    let mut any = false;
                    while let Some(Tok::Word(w)) = cur.peek() {
                        match w.parse::<u32>() {
                            Ok(l) => {
                                discharges.push(l);
                                any = true;
                                cur.next();
                            }
                            Err(_) => break,
                        }
                    }
                    if !any {
                        return err("`:d` needs at least one label");
                    }
                }
                Some(Tok::Word(w)) if w == ":eigen" => {
                    cur.next();
                    match cur.next() {
                        Some(Tok::Word(a)) => eigen = Some(a),
                        other => return err(format!("expected identifier, found {other:?}")),
                    }
                }
                Some(Tok::Word(w)) if w == ":wit" => {
                    cur.next();
                    match cur.next() {
                        Some(Tok::Str(s)) => witness = Some(parse_term(&s)?),
                        other => return err(format!("expected quoted term, found {other:?}")),
                    }
                }
                other => return err(format!("unexpected token {other:?}")),
            }
        }
        Ok(Proof::Infer {
            rule,
            conclusion,
            discharges,
            eigen,
            witness,
            premises,
        })
    }
}

fn parse_quoted_formula(cur: &mut Cursor, system: SystemId) -> Result<Formula, SexprError> {
    match cur.next() {
        Some(Tok::Str(s)) => Ok(parse_formula(&s, system)?),
        other => err(format!("expected quoted formula, found {other:?}")),
    }
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

/// Renders a proof as an indented s-expression that [`parse_proof`] reads
/// back.
pub fn print_proof(p: &Proof) -> String {
    let mut out = String::new();
    print_node(p, 0, &mut out);
    out.push('\n');
    out
}

fn print_node(p: &Proof, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match p {
        Proof::Hyp { label, formula } => {
            out.push_str(&format!("{pad}(hyp {label} \"{formula}\")"));
        }
        Proof::Infer {
            rule,
            conclusion,
            discharges,
            eigen,
            witness,
            premises,
        } => {
            out.push_str(&format!("{pad}({} \"{conclusion}\"", rule.name()));
            if !discharges.is_empty() {
                out.push_str(" :d");
                for l in discharges {
                    out.push_str(&format!(" {l}"));
                }
            }
            if let Some(a) = eigen {
                out.push_str(&format!(" :eigen {a}"));
            }
            if let Some(t) = witness {
                out.push_str(&format!(" :wit \"{t}\""));
            }
            for q in premises {
                out.push('\n');
                print_node(q, indent + 1, out);
            }
            out.push(')');
        }
    }
}

// ---------------------------------------------------------------------------
// Judgments and corpus headers
// ---------------------------------------------------------------------------

/// Parses `{A, B} |- C` (context braces mandatory, `{}` for empty).
pub fn parse_judgment(text: &str, system: SystemId) -> Result<Judgment, SexprError> {
    let s = text.trim();
    let Some(rest) = s.strip_prefix('{') else {
        return Err(SexprError::Header(format!(
            "judgment `{s}` must open with `{{`"
        )));
    };
    let Some(close) = rest.find('}') else {
        return Err(SexprError::Header(format!("judgment `{s}` has no `}}`")));
    };
    let ctx_src = &rest[..close];
    let tail = rest[close + 1..].trim_start();
    let Some(goal_src) = tail.strip_prefix("|-") else {
        return Err(SexprError::Header(format!(
            "judgment `{s}` is missing `|-`"
        )));
    };
    let mut context = Vec::new();
    for part in split_top_commas(ctx_src) {
        let part = part.trim();
        if !part.is_empty() {
            context.push(parse_formula(part, system)?);
        }
    }
    let conclusion = parse_formula(goal_src.trim(), system)?;
    Ok(Judgment::new(context, conclusion))
}

/// Splits on commas at parenthesis depth zero (atom argument lists keep
/// their commas).
fn split_top_commas(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

/// A corpus file's expectations.
#[derive(Debug, Clone, PartialEq)]
pub struct Header {
    pub system: SystemId,
    pub expect_ok: bool,
    pub judgment: Judgment,
}

/// Reads the `;; system: <s> expect: {ok|fail} judgment: "<j>"` line.
pub fn parse_header(text: &str) -> Result<Header, SexprError> {
    let line = text
        .lines()
        .map(str::trim)
        .find(|l| l.starts_with(";;"))
        .ok_or_else(|| SexprError::Header("no `;;` header line".to_string()))?;
    let body = line.trim_start_matches(';').trim();
    let rest = body
        .strip_prefix("system:")
        .ok_or_else(|| SexprError::Header(format!("`{line}` lacks `system:`")))?
        .trim_start();
    let (sys_word, rest) = rest
        .split_once(char::is_whitespace)
        .ok_or_else(|| SexprError::Header("header ends after system name".to_string()))?;
    let system = SystemId::from_name(sys_word)
        .ok_or_else(|| SexprError::Header(format!("unknown system `{sys_word}`")))?;
    let rest = rest
        .trim_start()
        .strip_prefix("expect:")
        .ok_or_else(|| SexprError::Header(format!("`{line}` lacks `expect:`")))?
        .trim_start();
    let (verdict, rest) = rest
        .split_once(char::is_whitespace)
        .ok_or_else(|| SexprError::Header("header ends after verdict".to_string()))?;
    let expect_ok = match verdict {
        "ok" => true,
        "fail" => false,
        other => {
            return Err(SexprError::Header(format!(
                "expect must be ok or fail, got `{other}`"
            )))
        }
    };
    let rest = rest
        .trim_start()
        .strip_prefix("judgment:")
        .ok_or_else(|| SexprError::Header(format!("`{line}` lacks `judgment:`")))?
        .trim_start();
    let j_src = rest
        .strip_prefix('"')
        .and_then(|r| r.strip_suffix('"'))
        .ok_or_else(|| SexprError::Header("judgment must be double-quoted".to_string()))?;
    let judgment = parse_judgment(j_src, system)?;
    Ok(Header {
        system,
        expect_ok,
        judgment,
    })
}

/// Parses a full corpus file: the header, then the proof in the header's
/// system.
pub fn parse_corpus_file(text: &str) -> Result<(Header, Proof), SexprError> {
    let header = parse_header(text)?;
    let proof = parse_proof(text, header.system)?;
    Ok((header, proof))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::check;
    use crate::syntax::Term;

    #[test]
    fn hypothesis_round_trips() {
        let p = Proof::hyp(3, parse_formula("p /\\ q", SystemId::Nj).unwrap());
        let text = print_proof(&p);
        assert_eq!(parse_proof(&text, SystemId::Nj).unwrap(), p);
    }

    #[test]
    fn inference_with_annotations_round_trips() {
        let sys = SystemId::Ne;
        let body = parse_formula("P(x)", sys).unwrap();
        let p = Proof::infer_d(
            RuleId::imp_i_intro,
            parse_formula("P(c()) ->i P(c())", sys).unwrap(),
            vec![1],
            vec![Proof::hyp(1, parse_formula("P(c())", sys).unwrap())],
        );
        let text = print_proof(&p);
        assert_eq!(parse_proof(&text, sys).unwrap(), p);

        let q = Proof::infer_wit(
            RuleId::ex_i_intro,
            Formula::quant(crate::syntax::QuantOp::Exists, crate::syntax::Flavor::Int, "x", body),
            Term::cnst("c"),
            vec![Proof::hyp(1, parse_formula("P(c())", sys).unwrap())],
        );
        let text = print_proof(&q);
        assert_eq!(parse_proof(&text, sys).unwrap(), q);
    }

    #[test]
    fn vacuous_discharge_round_trips() {
        let sys = SystemId::Nj;
        let p = Proof::infer_d(
            RuleId::imp_intro,
            parse_formula("q -> p", sys).unwrap(),
            vec![0],
            vec![Proof::hyp(1, parse_formula("p", sys).unwrap())],
        );
        let text = print_proof(&p);
        let back = parse_proof(&text, sys).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn comments_are_skipped() {
        let text = r#"
;; a remark
(hyp 1 "p") ; trailing note
"#;
        let p = parse_proof(text, SystemId::Nj).unwrap();
        assert_eq!(p, Proof::hyp(1, parse_formula("p", SystemId::Nj).unwrap()));
    }

    #[test]
    fn malformed_inputs_are_rejected
    () {
        assert!(parse_proof("(hyp 0 \"p\")", SystemId::Nj).is_err());
        assert!(parse_proof("(frobnicate \"p\")", SystemId::Nj).is_err());
        assert!(parse_proof("(hyp 1 \"p\") (hyp 2 \"q\")", SystemId::Nj).is_err());
        assert!(parse_proof("(hyp 1 \"p\"", SystemId::Nj).is_err());
        assert!(parse_proof("(imp_intro \"p -> p\" :d", SystemId::Nj).is_err());
    }

    #[test]
    fn judgments_parse_back() {
        let j = parse_judgment("{p, q} |- p /\\ q", SystemId::Nj).unwrap();
        assert_eq!(j.context.len(), 2);
        assert_eq!(j.to_string(), "{p, q} |- p /\\ q");
        let empty = parse_judgment("{} |- p -> p", SystemId::Nj).unwrap();
        assert!(empty.context.is_empty());
        // atom arguments keep their commas
        let fo = parse_judgment("{P(x, y)} |- P(x, y)", SystemId::Nj).unwrap();
        assert_eq!(fo.context.len(), 1);
        assert!(parse_judgment("p |- q", SystemId::Nj).is_err());
        assert!(parse_judgment("{p} p", SystemId::Nj).is_err());
    }

    #[test]
    fn headers_parse() {
        let text = ";; system: eci expect: ok judgment: \"{(p)^c} |- ~~p\"\n(hyp 1 \"p\")\n";
        let h = parse_header(text).unwrap();
        assert_eq!(h.system, SystemId::Eci);
        assert!(h.expect_ok);
        assert_eq!(h.judgment.to_string(), "{p^c} |- ~~p");

        assert!(parse_header("(hyp 1 \"p\")").is_err());
        assert!(parse_header(";; system: zz expect: ok judgment: \"{} |- p\"").is_err());
        assert!(parse_header(";; system: nj expect: maybe judgment: \"{} |- p\"").is_err());
    }

    #[test]
    fn corpus_files_check_end_to_end() {
        let text = r#";; system: nj expect: ok judgment: "{} |- p -> p"
(imp_intro "p -> p" :d 1
  (hyp 1 "p"))
"#;
        let (h, p) = parse_corpus_file(text).unwrap();
        let report = check(h.system, &p);
        assert!(report.is_ok());
        assert_eq!(*report.judgment().unwrap(), h.judgment);
    }

    #[test]
    fn printed_proofs_parse_for_every_construction() {
        let sys = SystemId::Nek;
        let c = parse_formula("p /\\c q", sys).unwrap();
        let p = crate::transform::star_embed(sys, &c).unwrap();
        let text = print_proof(&p);
        let back = parse_proof(&text, sys).unwrap();
        assert_eq!(back, p);
        assert!(check(sys, &back).is_ok());
    }
}
