//! Decision procedures for the propositional fragments.
//!
//! Classical validity goes by truth tables, intuitionistic provability by a
//! terminating contraction-free sequent search (G4ip style) over an interned
//! formula arena with per-query memoization. ECI and universal-free NE_K
//! sequents are decided by reduction: labels become double negations, flavors
//! become labels, and the intuitionistic decider finishes the job.

use crate::syntax::{well_formed, BinOp, Formula, SystemId};
use crate::translate::{self, TranslateError};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("too many atoms for truth tables: {count} (max {max})")]
    TooManyAtoms { count: usize, max: usize },
    #[error("first-order input: {0}")]
    FirstOrder(String),
    #[error("formula is not well-formed in {system}: {violation}")]
    Dialect { system: SystemId, violation: String },
    #[error("enumeration bound exceeded: {given} (max {max})")]
    BoundExceeded { given: usize, max: usize },
    #[error("no atoms to enumerate over")]
    NoAtoms,
}

impl From<TranslateError> for OracleError {
    fn from(e: TranslateError) -> Self {
        match e {
            TranslateError::Universal => OracleError::FirstOrder("universal quantifier".into()),
            TranslateError::Dialect { system, violation } => {
                OracleError::Dialect { system, violation }
            }
            TranslateError::NotClassical(f) => OracleError::Dialect {
                system: SystemId::Nek,
                violation: format!("`{f}` is not classical"),
            },
        }
    }
}

/// A context of hypotheses together with a goal, all propositional.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sequent {
    pub context: Vec<Formula>,
    pub goal: Formula,
}

impl Sequent {
    pub fn new(context: Vec<Formula>, goal: Formula) -> Self {
        Sequent { context, goal }
    }

    pub fn goal_only(goal: Formula) -> Self {
        Sequent {
            context: Vec::new(),
            goal,
        }
    }

    fn formulas(&self) -> impl Iterator<Item = &Formula> {
        self.context.iter().chain(std::iter::once(&self.goal))
    }
}

/// Outcome of a decision query. For classical queries that fail, the
/// countermodel lists one falsifying assignment in first-seen atom order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub provable: bool,
    pub countermodel: Option<Vec<(String, bool)>>,
}

impl Verdict {
    fn yes() -> Self {
        Verdict {
            provable: true,
            countermodel: None,
        }
    }

    fn no(countermodel: Option<Vec<(String, bool)>>) -> Self {
        Verdict {
            provable: false,
            countermodel,
        }
    }
}

// ---------------------------------------------------------------------------
// Interned propositional formulas
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Node {
    Bot,
    Atom(u16),
    Bin(BinOp, u32, u32),
}

#[derive(Default)]
struct Arena {
    nodes: Vec<Node>,
    ids: HashMap<Node, u32>,
    atom_names: Vec<String>,
    atom_ids: HashMap<String, u16>,
}

impl Arena {
    fn intern(&mut self, n: Node) -> u32 {
        if let Some(&id) = self.ids.get(&n) {
            return id;
        }
        let id = self.nodes.len() as u32;
        self.nodes.push(n);
        self.ids.insert(n, id);
        id
    }

    fn atom(&mut self, name: &str) -> u16 {
        if let Some(&id) = self.atom_ids.get(name) {
            return id;
        }
        let id = self.atom_names.len() as u16;
        self.atom_names.push(name.to_string());
        self.atom_ids.insert(name.to_string(), id);
        id
    }

    fn node(&self, id: u32) -> Node {
        self.nodes[id as usize]
    }

    fn imp(&mut self, a: u32, b: u32) -> u32 {
        self.intern(Node::Bin(BinOp::Imp, a, b))
    }

    /// Flavors are erased here: by the time a formula reaches the core
    /// deciders it is plain propositional syntax, and atom identity is the
    /// predicate name with its argument spine printed.
    fn of_formula(&mut self, f: &Formula) -> Result<u32, OracleError> {
        match f {
            Formula::Bot => Ok(self.intern(Node::Bot)),
            Formula::Atom { .. } => {
                let a = self.atom(&f.to_string());
                Ok(self.intern(Node::Atom(a)))
            }
            Formula::Bin { op, lhs, rhs, .. } => {
                let l = self.of_formula(lhs)?;
                let r = self.of_formula(rhs)?;
                Ok(self.intern(Node::Bin(*op, l, r)))
            }
            Formula::Quant { .. } => Err(OracleError::FirstOrder(f.to_string())),
            Formula::CLabel(_) => Err(OracleError::Dialect {
                system: SystemId::Nj,
                violation: format!("classical label in propositional input `{f}`"),
            }),
        }
    }
}

// ---------------------------------------------------------------------------
// Classical truth tables
// ---------------------------------------------------------------------------

const MAX_TT_ATOMS: usize = 16;

fn tt_eval(arena: &Arena, id: u32, mask: u32) -> bool {
    match arena.node(id) {
        Node::Bot => false,
        Node::Atom(a) => mask & (1 << a) != 0,
        Node::Bin(BinOp::And, l, r) => tt_eval(arena, l, mask) && tt_eval(arena, r, mask),
        Node::Bin(BinOp::Or, l, r) => tt_eval(arena, l, mask) || tt_eval(arena, r, mask),
        Node::Bin(BinOp::Imp, l, r) => !tt_eval(arena, l, mask) || tt_eval(arena, r, mask),
    }
}

fn require_propositional(system: SystemId, s: &Sequent) -> Result<(), OracleError> {
    for f in s.formulas() {
        if let Some(v) = well_formed(system, f).into_iter().next() {
            return Err(OracleError::Dialect {
                system,
                violation: v.to_string(),
            });
        }
        if !f.is_quantifier_free() {
            return Err(OracleError::FirstOrder(f.to_string()));
        }
    }
    Ok(())
}

/// Classical validity of `context |= goal` by truth tables over at most 16
/// atoms. A failed sequent comes back with one countermodel.
pub fn cpl_valid(s: &Sequent) -> Result<Verdict, OracleError> {
    require_propositional(SystemId::Nj, s)?;
    let mut arena = Arena::default();
    let ctx: Vec<u32> = s
        .context
        .iter()
        .map(|f| arena.of_formula(f))
        .collect::<Result<_, _>>()?;
    let goal = arena.of_formula(&s.goal)?;
    let n = arena.atom_names.len();
    if n > MAX_TT_ATOMS {
        return Err(OracleError::TooManyAtoms {
            count: n,
            max: MAX_TT_ATOMS,
        });
    }
    for mask in 0u32..(1u32 << n) {
        if ctx.iter().all(|&f| tt_eval(&arena, f, mask)) && !tt_eval(&arena, goal, mask) {
            let assignment = arena
                .atom_names
                .iter()
                .enumerate()
                .map(|(i, name)| (name.clone(), mask & (1 << i) != 0))
                .collect();
            return Ok(Verdict::no(Some(assignment)));
        }
    }
    Ok(Verdict::yes())
}

// ---------------------------------------------------------------------------
// Intuitionistic provability: contraction-free sequent search
// ---------------------------------------------------------------------------

struct Prover {
    arena: Arena,
    memo: HashMap<(Vec<u32>, u32), bool>,
}

impl Prover {
    fn new(arena: Arena) -> Self {
        Prover {
            arena,
            memo: HashMap::new(),
        }
    }

    /// One sequent step. The calculus is the contraction-free one: the four
    /// antecedent implication rules discriminate on the antecedent of the
    /// principal implication, every rule consumes its principal formula, and
    /// the only backtracking is over right-disjunct choice and which nested
    /// implication to attack. Falsum counts as an atom, so `bot -> B`
    /// hypotheses simply sit inert.
    fn prove(&mut self, ctx: Vec<u32>, goal: u32) -> bool {
        let mut ctx = ctx;
        let mut goal = goal;
        // Invertible, non-branching phase.
        'outer: loop {
            if let Node::Bin(BinOp::Imp, a, b) = self.arena.node(goal) {
                ctx.push(a);
                goal = b;
                continue;
            }
            for i in 0..ctx.len() {
                match self.arena.node(ctx[i]) {
                    Node::Bot => return true,
                    Node::Bin(BinOp::And, a, b) => {
                        ctx.swap_remove(i);
                        ctx.push(a);
                        ctx.push(b);
                        continue 'outer;
                    }
                    Node::Bin(BinOp::Imp, p, b) => match self.arena.node(p) {
                        Node::Atom(_) | Node::Bot if ctx.contains(&p) => {
                            ctx.swap_remove(i);
                            ctx.push(b);
                            continue 'outer;
                        }
                        Node::Bin(BinOp::And, c, d) => {
                            ctx.swap_remove(i);
                            let inner = self.arena.imp(d, b);
                            let outer = self.arena.imp(c, inner);
                            ctx.push(outer);
                            continue 'outer;
                        }
                        Node::Bin(BinOp::Or, c, d) => {
                            ctx.swap_remove(i);
                            let l = self.arena.imp(c, b);
                            let r = self.arena.imp(d, b);
                            ctx.push(l);
                            ctx.push(r);
                            continue 'outer;
                        }
                        _ => {}
                    },
                    _ => {}
                }
            }
            break;
        }
        if ctx.contains(&goal) {
            return true;
        }
        ctx.sort_unstable();
        ctx.dedup();
        let key = (ctx.clone(), goal);
        if let Some(&r) = self.memo.get(&key) {
            return r;
        }
        // Invertible branching: split a hypothesis disjunction, then a goal
        // conjunction.
        let result = if let Some(i) = ctx
            .iter()
            .position(|&f| matches!(self.arena.node(f), Node::Bin(BinOp::Or, _, _)))
        {
            let Node::Bin(BinOp::Or, a, b) = self.arena.node(ctx[i]) else {
                unreachable!()
            };
            let mut rest = ctx.clone();
            rest.remove(i);
            let mut left = rest.clone();
            left.push(a);
            let mut right = rest;
            right.push(b);
            self.prove(left, goal) && self.prove(right, goal)
        } else if let Node::Bin(BinOp::And, a, b) = self.arena.node(goal) {
            self.prove(ctx.clone(), a) && self.prove(ctx.clone(), b)
        } else {
            // Non-invertible choices.
            let mut found = false;
            if let Node::Bin(BinOp::Or, a, b) = self.arena.node(goal) {
                found = self.prove(ctx.clone(), a) || self.prove(ctx.clone(), b);
            }
            if !found {
                for i in 0..ctx.len() {
                    if let Node::Bin(BinOp::Imp, p, b) = self.arena.node(ctx[i]) {
                        if let Node::Bin(BinOp::Imp, _, d) = self.arena.node(p) {
                            let mut rest = ctx.clone();
                            rest.remove(i);
                            let mut major = rest.clone();
                            let db = self.arena.imp(d, b);
                            major.push(db);
                            if self.prove(major, p) {
                                let mut minor = rest;
                                minor.push(b);
                                if self.prove(minor, goal) {
                                    found = true;
                                    break;
                                }
                            }
                        }
                    }
                }
            }
            found
        };
        self.memo.insert(key, result);
        result
    }
}

/// Intuitionistic provability of a propositional sequent. Deterministic and
/// terminating; the memo table lives for a single query.
pub fn ipl_provable(s: &Sequent) -> Result<Verdict, OracleError> {
    require_propositional(SystemId::Nj, s)?;
    let mut arena = Arena::default();
    let ctx: Vec<u32> = s
        .context
        .iter()
        .map(|f| arena.of_formula(f))
        .collect::<Result<_, _>>()?;
    let goal = arena.of_formula(&s.goal)?;
    let mut prover = Prover::new(arena);
    if prover.prove(ctx, goal) {
        Ok(Verdict::yes())
    } else {
        Ok(Verdict::no(None))
    }
}

/// Provability for propositional ECI sequents, decided by reading the
/// classical label as double negation and handing the result to the
/// intuitionistic search.
pub fn eci_provable(s: &Sequent) -> Result<Verdict, OracleError> {
    require_propositional(SystemId::Eci, s)?;
    let context = s
        .context
        .iter()
        .map(translate::t_eci)
        .collect::<Result<Vec<_>, _>>()?;
    let goal = translate::t_eci(&s.goal)?;
    ipl_provable(&Sequent::new(context, goal))
}

/// Provability for quantifier-free NE_K sequents: flavors peel into labels,
/// then the ECI decider takes over.
pub fn nek_provable(s: &Sequent) -> Result<Verdict, OracleError> {
    require_propositional(SystemId::Nek, s)?;
    let context = s
        .context
        .iter()
        .map(translate::untranslate_nek)
        .collect::<Result<Vec<_>, _>>()?;
    let goal = translate::untranslate_nek(&s.goal)?;
    eci_provable(&Sequent::new(context, goal))
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration
// ---------------------------------------------------------------------------

const MAX_ENUM_CONNECTIVES: usize = 8;

/// Lazy, duplicate-free stream of all quantifier-free formulas of the given
/// dialect over the given atoms, in deterministic order: by connective
/// count, then by operator, flavor, and operand recursion. Classical labels
/// participate in ECI; flavored atoms participate in NE and NE_K.
pub fn enumerate_formulas(
    atoms: &[String],
    max_connectives: usize,
    dialect: SystemId,
) -> Result<FormulaStream, OracleError> {
    if atoms.is_empty() {
        return Err(OracleError::NoAtoms);
    }
    if max_connectives > MAX_ENUM_CONNECTIVES {
        return Err(OracleError::BoundExceeded {
            given: max_connectives,
            max: MAX_ENUM_CONNECTIVES,
        });
    }
    Ok(FormulaStream {
        dialect,
        atoms: atoms.to_vec(),
        max: max_connectives,
        levels: Vec::new(),
        level: 0,
        idx: 0,
    })
}

pub struct FormulaStream {
    dialect: SystemId,
    atoms: Vec<String>,
    max: usize,
    levels: Vec<Vec<Formula>>,
    level: usize,
    idx: usize,
}

impl FormulaStream {
    fn compute_level(&mut self, n: usize) {
        let mut out = Vec::new();
        if n == 0 {
            for name in &self.atoms {
                for &fl in self.dialect.allowed_atom_flavors() {
                    out.push(Formula::Atom {
                        pred: name.clone(),
                        flavor: fl,
                        args: Vec::new(),
                    });
                }
            }
            out.push(Formula::Bot);
        } else {
            for op in [BinOp::And, BinOp::Or, BinOp::Imp] {
                for &fl in self.dialect.allowed_bin_flavors(op) {
                    for i in 0..n {
                        for li in 0..self.levels[i].len() {
                            for ri in 0..self.levels[n - 1 - i].len() {
                                out.push(Formula::Bin {
                                    op,
                                    flavor: fl,
                                    lhs: Box::new(self.levels[i][li].clone()),
                                    rhs: Box::new(self.levels[n - 1 - i][ri].clone()),
                                });
                            }
                        }
                    }
                }
            }
            if self.dialect.clabel_allowed() {
                for g in &self.levels[n - 1] {
                    let w = Formula::clabel(g.clone());
                    // the label collapses on already-labeled atoms; skip those
                    // to keep the stream duplicate-free
                    if w.connective_count() == n {
                        out.push(w);
                    }
                }
            }
        }
        self.levels.push(out);
    }
}

impl Iterator for FormulaStream {
    type Item = Formula;

    fn next(&mut self) -> Option<Formula> {
        loop {
            if self.level > self.max {
                return None;
            }
            if self.levels.len() <= self.level {
                let n = self.levels.len();
                self.compute_level(n);
                continue;
            }
            if self.idx < self.levels[self.level].len() {
                let item = self.levels[self.level][self.idx].clone();
                self.idx += 1;
                return Some(item);
            }
            self.level += 1;
            self.idx = 0;
        }
    }
}
