//! Formulas and terms for the five proof systems.
//!
//! A single [`Formula`] type covers every dialect. Connectives carry a
//! [`Flavor`]: `Int` and `Cls` mark the intuitionistic and classical copies
//! used by the ecumenical systems, while `Neutral` marks the shared
//! connectives (conjunction and the universal quantifier in NE, and every
//! connective in ECI, NJ and NK). Which flavors are admissible where is the
//! business of [`well_formed`]; the type itself is permissive.
//!
//! Negation is not a constructor. `~A` is sugar for `A -> bot` in the
//! implication flavor the dialect uses for negation: intuitionistic in NE and
//! NE_K, neutral everywhere else.

use std::collections::BTreeSet;
use std::fmt;

/// First-order terms.
///
/// Variables and parameters live in disjoint namespaces: variables are the
/// bindable names quantifiers capture, parameters are the free names
/// eigenvariable rules introduce. In the surface syntax a parameter is
/// written with a leading apostrophe (`'a`), a bare identifier is a
/// variable, and `f(t1,...,tn)` is an application (`c()` for a constant).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    Param(String),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(name: &str) -> Self {
        Term::Var(name.to_string())
    }

    pub fn param(name: &str) -> Self {
        Term::Param(name.to_string())
    }

    pub fn cnst(name: &str) -> Self {
        Term::App(name.to_string(), Vec::new())
    }

    fn collect_objects(&self, vars: &mut BTreeSet<String>, params: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                vars.insert(v.clone());
            }
            Term::Param(p) => {
                params.insert(p.clone());
            }
            Term::App(_, args) => {
                for a in args {
                    a.collect_objects(vars, params);
                }
            }
        }
    }

    /// Replaces every occurrence of the variable `x` by `t`.
    fn subst_var(&self, x: &str, t: &Term) -> Term {
        match self {
            Term::Var(v) if v == x => t.clone(),
            Term::Var(_) | Term::Param(_) => self.clone(),
            Term::App(f, args) => {
                Term::App(f.clone(), args.iter().map(|a| a.subst_var(x, t)).collect())
            }
        }
    }

    /// Renames variable occurrences, used for canonical bound-variable names.
    fn rename_var(&self, from: &str, to: &str) -> Term {
        self.subst_var(from, &Term::Var(to.to_string()))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::Param(p) => write!(f, "'{p}"),
            Term::App(name, args) => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Connective flavor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flavor {
    Int,
    Cls,
    Neutral,
}

/// Binary connective family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    And,
    Or,
    Imp,
}

/// Quantifier family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuantOp {
    Forall,
    Exists,
}

/// Formulas, shared by every dialect.
///
/// `CLabel` is the classical label of ECI, written `A^c`. Atoms carry a
/// flavor of their own (`Int` or `Cls`, never `Neutral`); in ECI a classical
/// atom is a labeled intuitionistic atom rather than a `Cls`-flavored one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom {
        pred: String,
        flavor: Flavor,
        args: Vec<Term>,
    },
    Bot,
    Bin {
        op: BinOp,
        flavor: Flavor,
        lhs: Box<Formula>,
        rhs: Box<Formula>,
    },
    Quant {
        op: QuantOp,
        flavor: Flavor,
        var: String,
        body: Box<Formula>,
    },
    CLabel(Box<Formula>),
}

impl Formula {
    pub fn atom(pred: &str, flavor: Flavor) -> Self {
        Formula::Atom {
            pred: pred.to_string(),
            flavor,
            args: Vec::new(),
        }
    }

    pub fn atom_args(pred: &str, flavor: Flavor, args: Vec<Term>) -> Self {
        Formula::Atom {
            pred: pred.to_string(),
            flavor,
            args,
        }
    }

    pub fn bin(op: BinOp, flavor: Flavor, lhs: Formula, rhs: Formula) -> Self {
        Formula::Bin {
            op,
            flavor,
            lhs: Box::new(lhs),
            rhs: Box::new(rhs),
        }
    }

    pub fn and(flavor: Flavor, lhs: Formula, rhs: Formula) -> Self {
        Self::bin(BinOp::And, flavor, lhs, rhs)
    }

    pub fn or(flavor: Flavor, lhs: Formula, rhs: Formula) -> Self {
        Self::bin(BinOp::Or, flavor, lhs, rhs)
    }

    pub fn imp(flavor: Flavor, lhs: Formula, rhs: Formula) -> Self {
        Self::bin(BinOp::Imp, flavor, lhs, rhs)
    }

    /// Negation sugar: `A -> bot` in the given implication flavor.
    pub fn neg(flavor: Flavor, f: Formula) -> Self {
        Self::imp(flavor, f, Formula::Bot)
    }

    pub fn quant(op: QuantOp, flavor: Flavor, var: &str, body: Formula) -> Self {
        Formula::Quant {
            op,
            flavor,
            var: var.to_string(),
            body: Box::new(body),
        }
    }

    pub fn forall(flavor: Flavor, var: &str, body: Formula) -> Self {
        Self::quant(QuantOp::Forall, flavor, var, body)
    }

    pub fn exists(flavor: Flavor, var: &str, body: Formula) -> Self {
        Self::quant(QuantOp::Exists, flavor, var, body)
    }

    /// Wraps a formula in the classical label, collapsing the label on
    /// atoms (a labeled atom is already as classical as it gets).
    pub fn clabel(f: Formula) -> Self {
        if let Formula::CLabel(inner) = &f {
            if matches!(**inner, Formula::Atom { .. }) {
                return f;
            }
        }
        Formula::CLabel(Box::new(f))
    }

    /// If the formula is a negation in the given flavor, returns the negand.
    pub fn strip_neg(&self, flavor: Flavor) -> Option<&Formula> {
        match self {
            Formula::Bin {
                op: BinOp::Imp,
                flavor: fl,
                lhs,
                rhs,
            } if *fl == flavor && **rhs == Formula::Bot => Some(lhs),
            _ => None,
        }
    }

    /// Number of connective nodes (binary connectives, quantifiers and
    /// classical labels); atoms and `bot` are leaves.
    pub fn connective_count(&self) -> usize {
        match self {
            Formula::Atom { .. } | Formula::Bot => 0,
            Formula::Bin { lhs, rhs, .. } => 1 + lhs.connective_count() + rhs.connective_count(),
            Formula::Quant { body, .. } => 1 + body.connective_count(),
            Formula::CLabel(inner) => 1 + inner.connective_count(),
        }
    }

    /// Number of classical labels in the formula.
    pub fn clabel_count(&self) -> usize {
        match self {
            Formula::Atom { .. } | Formula::Bot => 0,
            Formula::Bin { lhs, rhs, .. } => lhs.clabel_count() + rhs.clabel_count(),
            Formula::Quant { body, .. } => body.clabel_count(),
            Formula::CLabel(inner) => 1 + inner.clabel_count(),
        }
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::Atom { .. } | Formula::Bot => true,
            Formula::Bin { lhs, rhs, .. } => lhs.is_quantifier_free() && rhs.is_quantifier_free(),
            Formula::Quant { .. } => false,
            Formula::CLabel(inner) => inner.is_quantifier_free(),
        }
    }

    pub fn has_universal(&self) -> bool {
        match self {
            Formula::Atom { .. } | Formula::Bot => false,
            Formula::Bin { lhs, rhs, .. } => lhs.has_universal() || rhs.has_universal(),
            Formula::Quant { op, body, .. } => *op == QuantOp::Forall || body.has_universal(),
            Formula::CLabel(inner) => inner.has_universal(),
        }
    }
}

/// The five supported proof systems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SystemId {
    Ne,
    Nek,
    Eci,
    Nj,
    Nk,
}

impl SystemId {
    pub const ALL: [SystemId; 5] = [
        SystemId::Ne,
        SystemId::Nek,
        SystemId::Eci,
        SystemId::Nj,
        SystemId::Nk,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SystemId::Ne => "ne",
            SystemId::Nek => "nek",
            SystemId::Eci => "eci",
            SystemId::Nj => "nj",
            SystemId::Nk => "nk",
        }
    }

    pub fn from_name(s: &str) -> Option<SystemId> {
        match s {
            "ne" => Some(SystemId::Ne),
            "nek" | "ne_k" => Some(SystemId::Nek),
            "eci" => Some(SystemId::Eci),
            "nj" => Some(SystemId::Nj),
            "nk" => Some(SystemId::Nk),
            _ => None,
        }
    }

    /// Implication flavor that negation abbreviates in this dialect.
    pub fn neg_flavor(self) -> Flavor {
        match self {
            SystemId::Ne | SystemId::Nek => Flavor::Int,
            SystemId::Eci | SystemId::Nj | SystemId::Nk => Flavor::Neutral,
        }
    }

    /// Flavor a bare binary connective token denotes in this dialect.
    pub fn base_flavor(self) -> Flavor {
        match self {
            SystemId::Ne => Flavor::Neutral,
            SystemId::Nek => Flavor::Int,
            SystemId::Eci | SystemId::Nj | SystemId::Nk => Flavor::Neutral,
        }
    }

    pub fn allowed_bin_flavors(self, op: BinOp) -> &'static [Flavor] {
        match (self, op) {
            (SystemId::Ne, BinOp::And) => &[Flavor::Neutral],
            (SystemId::Ne, _) => &[Flavor::Int, Flavor::Cls],
            (SystemId::Nek, _) => &[Flavor::Int, Flavor::Cls],
            (SystemId::Eci | SystemId::Nj | SystemId::Nk, _) => &[Flavor::Neutral],
        }
    }

    pub fn allowed_quant_flavors(self, op: QuantOp) -> &'static [Flavor] {
        match (self, op) {
            (SystemId::Ne, QuantOp::Forall) => &[Flavor::Neutral],
            (SystemId::Ne, QuantOp::Exists) => &[Flavor::Int, Flavor::Cls],
            (SystemId::Nek, _) => &[Flavor::Int, Flavor::Cls],
            (SystemId::Eci | SystemId::Nj | SystemId::Nk, _) => &[Flavor::Neutral],
        }
    }

    pub fn allowed_atom_flavors(self) -> &'static [Flavor] {
        match self {
            SystemId::Ne | SystemId::Nek => &[Flavor::Int, Flavor::Cls],
            SystemId::Eci | SystemId::Nj | SystemId::Nk => &[Flavor::Int],
        }
    }

    pub fn clabel_allowed(self) -> bool {
        matches!(self, SystemId::Eci)
    }
}

impl fmt::Display for SystemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A well-formedness violation: where in the formula, and what rule broke.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Path from the root, e.g. `root.lhs.body`.
    pub path: String,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

/// Checks a formula against a dialect's grammar. Returns every violation,
/// empty when the formula is well-formed.
pub fn well_formed(system: SystemId, f: &Formula) -> Vec<Violation> {
    let mut out = Vec::new();
    wf_walk(system, f, "root", &mut out);
    out
}

fn wf_walk(system: SystemId, f: &Formula, path: &str, out: &mut Vec<Violation>) {
    match f {
        Formula::Bot => {}
        Formula::Atom { pred, flavor, args } => {
            if !system.allowed_atom_flavors().contains(flavor) {
                out.push(Violation {
                    path: path.to_string(),
                    message: format!(
                        "atom {pred} has {flavor:?} flavor, not admitted in {system}"
                    ),
                });
            }
            if *flavor == Flavor::Neutral {
                out.push(Violation {
                    path: path.to_string(),
                    message: format!("atom {pred} has neutral flavor; atoms are Int or Cls"),
                });
            }
            let _ = args;
        }
        Formula::Bin {
            op,
            flavor,
            lhs,
            rhs,
        } => {
            if !system.allowed_bin_flavors(*op).contains(flavor) {
                out.push(Violation {
                    path: path.to_string(),
                    message: format!("{op:?} with {flavor:?} flavor is not in the {system} grammar"),
                });
            }
            wf_walk(system, lhs, &format!("{path}.lhs"), out);
            wf_walk(system, rhs, &format!("{path}.rhs"), out);
        }
        Formula::Quant {
            op, flavor, body, ..
        } => {
            if !system.allowed_quant_flavors(*op).contains(flavor) {
                out.push(Violation {
                    path: path.to_string(),
                    message: format!("{op:?} with {flavor:?} flavor is not in the {system} grammar"),
                });
            }
            wf_walk(system, body, &format!("{path}.body"), out);
        }
        Formula::CLabel(inner) => {
            if !system.clabel_allowed() {
                out.push(Violation {
                    path: path.to_string(),
                    message: format!("classical label ^c is not in the {system} grammar"),
                });
            }
            wf_walk(system, inner, &format!("{path}.labeled"), out);
        }
    }
}

/// Free variables and parameters of a formula.
pub fn free_objects(f: &Formula) -> (BTreeSet<String>, BTreeSet<String>) {
    let mut vars = BTreeSet::new();
    let mut params = BTreeSet::new();
    free_walk(f, &mut Vec::new(), &mut vars, &mut params);
    (vars, params)
}

fn free_walk(
    f: &Formula,
    bound: &mut Vec<String>,
    vars: &mut BTreeSet<String>,
    params: &mut BTreeSet<String>,
) {
    match f {
        Formula::Bot => {}
        Formula::Atom { args, .. } => {
            let mut tv = BTreeSet::new();
            for a in args {
                a.collect_objects(&mut tv, params);
            }
            for v in tv {
                if !bound.iter().any(|b| *b == v) {
                    vars.insert(v);
                }
            }
        }
        Formula::Bin { lhs, rhs, .. } => {
            free_walk(lhs, bound, vars, params);
            free_walk(rhs, bound, vars, params);
        }
        Formula::Quant { var, body, .. } => {
            bound.push(var.clone());
            free_walk(body, bound, vars, params);
            bound.pop();
        }
        Formula::CLabel(inner) => free_walk(inner, bound, vars, params),
    }
}

/// Parameters occurring anywhere in the formula.
pub fn params_of(f: &Formula) -> BTreeSet<String> {
    free_objects(f).1
}

fn term_vars(t: &Term) -> BTreeSet<String> {
    let mut vars = BTreeSet::new();
    let mut params = BTreeSet::new();
    t.collect_objects(&mut vars, &mut params);
    vars
}

/// Capture-avoiding substitution of term `t` for free occurrences of the
/// variable `x`. Bound variables are renamed when they would capture a
/// variable of `t`.
pub fn substitute(f: &Formula, x: &str, t: &Term) -> Formula {
    let tvars = term_vars(t);
    subst_walk(f, x, t, &tvars)
}

fn subst_walk(f: &Formula, x: &str, t: &Term, tvars: &BTreeSet<String>) -> Formula {
    match f {
        Formula::Bot => Formula::Bot,
        Formula::Atom { pred, flavor, args } => Formula::Atom {
            pred: pred.clone(),
            flavor: *flavor,
            args: args.iter().map(|a| a.subst_var(x, t)).collect(),
        },
        Formula::Bin {
            op,
            flavor,
            lhs,
            rhs,
        } => Formula::Bin {
            op: *op,
            flavor: *flavor,
            lhs: Box::new(subst_walk(lhs, x, t, tvars)),
            rhs: Box::new(subst_walk(rhs, x, t, tvars)),
        },
        Formula::Quant {
            op,
            flavor,
            var,
            body,
        } => {
            if var == x {
                // x is shadowed here; nothing to substitute below.
                f.clone()
            } else if tvars.contains(var) {
                // The binder would capture a variable of t: rename it first.
                let (free_here, _) = free_objects(body);
                let fresh = fresh_var(var, |cand| {
                    cand != x && !tvars.contains(cand) && !free_here.contains(cand)
                });
                let renamed = rename_bound(body, var, &fresh);
                Formula::Quant {
                    op: *op,
                    flavor: *flavor,
                    var: fresh,
                    body: Box::new(subst_walk(&renamed, x, t, tvars)),
                }
            } else {
                Formula::Quant {
                    op: *op,
                    flavor: *flavor,
                    var: var.clone(),
                    body: Box::new(subst_walk(body, x, t, tvars)),
                }
            }
        }
        Formula::CLabel(inner) => Formula::CLabel(Box::new(subst_walk(inner, x, t, tvars))),
    }
}

fn fresh_var(base: &str, ok: impl Fn(&str) -> bool) -> String {
    let stem: String = base
        .trim_end_matches(|c: char| c.is_ascii_digit())
        .to_string();
    let stem = if stem.is_empty() { "v".to_string() } else { stem };
    for i in 1.. {
        let cand = format!("{stem}{i}");
        if ok(&cand) {
            return cand;
        }
    }
    unreachable!()
}

/// Renames free occurrences of variable `from` to `to` (used only with a
/// fresh `to`, so no capture check is needed).
fn rename_bound(f: &Formula, from: &str, to: &str) -> Formula {
    match f {
        Formula::Bot => Formula::Bot,
        Formula::Atom { pred, flavor, args } => Formula::Atom {
            pred: pred.clone(),
            flavor: *flavor,
            args: args.iter().map(|a| a.rename_var(from, to)).collect(),
        },
        Formula::Bin {
            op,
            flavor,
            lhs,
            rhs,
        } => Formula::Bin {
            op: *op,
            flavor: *flavor,
            lhs: Box::new(rename_bound(lhs, from, to)),
            rhs: Box::new(rename_bound(rhs, from, to)),
        },
        Formula::Quant {
            op,
            flavor,
            var,
            body,
        } => {
            if var == from {
                f.clone()
            } else {
                Formula::Quant {
                    op: *op,
                    flavor: *flavor,
                    var: var.clone(),
                    body: Box::new(rename_bound(body, from, to)),
                }
            }
        }
        Formula::CLabel(inner) => Formula::CLabel(Box::new(rename_bound(inner, from, to))),
    }
}

/// Canonical form with bound variables renumbered in traversal order.
/// Two formulas are alpha-equivalent exactly when their canonical forms are
/// structurally equal. The canonical names start with `#`, which the surface
/// grammar cannot produce, so they never collide with free variables.
pub fn canon(f: &Formula) -> Formula {
    let mut counter = 0;
    canon_walk(f, &mut Vec::new(), &mut counter)
}

fn canon_walk(f: &Formula, env: &mut Vec<(String, String)>, counter: &mut usize) -> Formula {
    match f {
        Formula::Bot => Formula::Bot,
        Formula::Atom { pred, flavor, args } => Formula::Atom {
            pred: pred.clone(),
            flavor: *flavor,
            args: args.iter().map(|a| canon_term(a, env)).collect(),
        },
        Formula::Bin {
            op,
            flavor,
            lhs,
            rhs,
        } => Formula::Bin {
            op: *op,
            flavor: *flavor,
            lhs: Box::new(canon_walk(lhs, env, counter)),
            rhs: Box::new(canon_walk(rhs, env, counter)),
        },
        Formula::Quant {
            op,
            flavor,
            var,
            body,
        } => {
            let canon_name = format!("#{counter}");
            *counter += 1;
            env.push((var.clone(), canon_name.clone()));
            let body = canon_walk(body, env, counter);
            env.pop();
            Formula::Quant {
                op: *op,
                flavor: *flavor,
                var: canon_name,
                body: Box::new(body),
            }
        }
        Formula::CLabel(inner) => Formula::CLabel(Box::new(canon_walk(inner, env, counter))),
    }
}

fn canon_term(t: &Term, env: &[(String, String)]) -> Term {
    match t {
        Term::Var(v) => {
            // Innermost binding wins.
            for (from, to) in env.iter().rev() {
                if from == v {
                    return Term::Var(to.clone());
                }
            }
            t.clone()
        }
        Term::Param(_) => t.clone(),
        Term::App(f, args) => Term::App(
            f.clone(),
            args.iter().map(|a| canon_term(a, env)).collect(),
        ),
    }
}

/// Alpha-equivalence: equality up to renaming of bound variables.
pub fn alpha_eq(a: &Formula, b: &Formula) -> bool {
    a == b || canon(a) == canon(b)
}

// Printing. The flavor of each node determines its surface token, so a
// formula prints the same way in every dialect it is well-formed in:
// `/\` is neutral and `/\i` intuitionistic conjunction, `forall` neutral
// and `foralli` intuitionistic universal, a Cls atom prints with the `_c`
// suffix, an Int atom prints bare. Both negation flavors print as `~`.
//
// Precedence, loosest to tightest: `->` (right associative), `\/`, `/\`
// (both left associative), `~`, postfix `^c`. A quantifier body extends as
// far right as possible, so quantifiers print bare only in tail position.

fn bin_token(op: BinOp, flavor: Flavor) -> &'static str {
    match (op, flavor) {
        (BinOp::And, Flavor::Neutral) => "/\\",
        (BinOp::And, Flavor::Int) => "/\\i",
        (BinOp::And, Flavor::Cls) => "/\\c",
        (BinOp::Or, Flavor::Neutral) => "\\/",
        (BinOp::Or, Flavor::Int) => "\\/i",
        (BinOp::Or, Flavor::Cls) => "\\/c",
        (BinOp::Imp, Flavor::Neutral) => "->",
        (BinOp::Imp, Flavor::Int) => "->i",
        (BinOp::Imp, Flavor::Cls) => "->c",
    }
}

fn quant_token(op: QuantOp, flavor: Flavor) -> &'static str {
    match (op, flavor) {
        (QuantOp::Forall, Flavor::Neutral) => "forall",
        (QuantOp::Forall, Flavor::Int) => "foralli",
        (QuantOp::Forall, Flavor::Cls) => "forallc",
        (QuantOp::Exists, Flavor::Neutral) => "exists",
        (QuantOp::Exists, Flavor::Int) => "existsi",
        (QuantOp::Exists, Flavor::Cls) => "existsc",
    }
}

const LVL_IMP: u8 = 1;
const LVL_OR: u8 = 2;
const LVL_AND: u8 = 3;
const LVL_UNARY: u8 = 4;

fn fmt_formula(f: &Formula, out: &mut String, min_level: u8, tail: bool) {
    // Negation sugar first: print `A -> bot` as `~A` for both flavors a
    // dialect can use for negation.
    if let Formula::Bin {
        op: BinOp::Imp,
        flavor,
        lhs,
        rhs,
    } = f
    {
        if **rhs == Formula::Bot && matches!(flavor, Flavor::Int | Flavor::Neutral) {
            if min_level > LVL_UNARY {
                out.push('(');
                out.push('~');
                fmt_formula(lhs, out, LVL_UNARY, true);
                out.push(')');
            } else {
                out.push('~');
                fmt_formula(lhs, out, LVL_UNARY, tail);
            }
            return;
        }
    }
    match f {
        Formula::Bot => out.push_str("bot"),
        Formula::Atom { pred, flavor, args } => {
            out.push_str(pred);
            if *flavor == Flavor::Cls {
                out.push_str("_c");
            }
            if !args.is_empty() {
                out.push('(');
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    out.push_str(&a.to_string());
                }
                out.push(')');
            }
        }
        Formula::Bin {
            op,
            flavor,
            lhs,
            rhs,
        } => {
            let level = match op {
                BinOp::Imp => LVL_IMP,
                BinOp::Or => LVL_OR,
                BinOp::And => LVL_AND,
            };
            let parens = min_level > level;
            if parens {
                out.push('(');
            }
            let inner_tail = if parens { true } else { tail };
            match op {
                BinOp::Imp => {
                    // Right associative.
                    fmt_formula(lhs, out, level + 1, false);
                    out.push(' ');
                    out.push_str(bin_token(*op, *flavor));
                    out.push(' ');
                    fmt_formula(rhs, out, level, inner_tail);
                }
                BinOp::Or | BinOp::And => {
                    // Left associative.
                    fmt_formula(lhs, out, level, false);
                    out.push(' ');
                    out.push_str(bin_token(*op, *flavor));
                    out.push(' ');
                    fmt_formula(rhs, out, level + 1, inner_tail);
                }
            }
            if parens {
                out.push(')');
            }
        }
        Formula::Quant {
            op,
            flavor,
            var,
            body,
        } => {
            // A quantifier swallows everything to its right, so it prints
            // bare only where nothing follows it.
            let bare = tail && min_level <= LVL_UNARY;
            if !bare {
                out.push('(');
            }
            out.push_str(quant_token(*op, *flavor));
            out.push(' ');
            out.push_str(var);
            out.push_str(". ");
            fmt_formula(body, out, LVL_IMP, true);
            if !bare {
                out.push(')');
            }
        }
        Formula::CLabel(inner) => {
            match &**inner {
                Formula::Atom { .. } => {
                    fmt_formula(inner, out, LVL_UNARY + 2, true);
                }
                _ => {
                    out.push('(');
                    fmt_formula(inner, out, LVL_IMP, true);
                    out.push(')');
                }
            }
            out.push_str("^c");
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        fmt_formula(self, &mut s, LVL_IMP, true);
        f.write_str(&s)
    }
}

/// Renders a formula in the dialect's concrete syntax. Printing is
/// flavor-driven and dialect-independent; the parameter documents intent
/// and keeps the call sites honest about which grammar the output obeys.
pub fn print_formula(_system: SystemId, f: &Formula) -> String {
    f.to_string()
}
