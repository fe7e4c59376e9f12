//! Proof-producing constructions.
//!
//! Every operation here emits an explicit natural-deduction tree that the
//! kernel can re-check: embeddings of classically flavored operators into
//! their intuitionistic counterparts under double negation, the label
//! introduction/elimination derivations, whole-proof translations between
//! the labeled calculus and the flavored one, and the universal-quantifier
//! constructions. Trees are fully explicit; where a schematic subproof is
//! used more than once it is copied, with discharge labels freshened per
//! copy so the result stays kernel-valid.

use crate::kernel::{check, CheckReport, Proof, RuleId};
use crate::syntax::{
    params_of, substitute, well_formed, Flavor, Formula, QuantOp, SystemId, Term,
};
use std::collections::{BTreeSet, HashMap};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("formula is not well-formed in {system}: {violation}")]
    Dialect { system: SystemId, violation: String },
    #[error("main connective of `{0}` is not classical")]
    RootNotClassical(String),
    #[error("classical universal at the root of `{0}`: no double-negation image")]
    RootUniversal(String),
    #[error("input proof fails to check: {0}")]
    BadProof(String),
    #[error("universal quantifier in input: {0}")]
    Universal(String),
    #[error("proof does not match the required pattern: {0}")]
    PatternNotMatched(String),
    #[error("judgment mismatch: {0}")]
    JudgmentMismatch(String),
}

/// Which direction of the label/negation commutation to emit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Fwd,
    Bwd,
}

/// Which of the two classical-universal elimination forms to emit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NegForallTarget {
    ExistsC,
    NegForallI,
}

fn require_wf(system: SystemId, f: &Formula) -> Result<(), TransformError> {
    match well_formed(system, f).into_iter().next() {
        None => Ok(()),
        Some(v) => Err(TransformError::Dialect {
            system,
            violation: v.to_string(),
        }),
    }
}

fn require_checked(system: SystemId, p: &Proof) -> Result<crate::kernel::Judgment, TransformError> {
    match check(system, p) {
        CheckReport::Ok(j) => Ok(j),
        fail => Err(TransformError::BadProof(fail.to_string())),
    }
}

// ---------------------------------------------------------------------------
// Label and parameter bookkeeping
// ---------------------------------------------------------------------------

struct Labeler {
    next: u32,
}

impl Labeler {
    fn above(proofs: &[&Proof]) -> Labeler {
        let mut max = 0;
        for p in proofs {
            for l in p.labels_used() {
                max = max.max(l);
            }
        }
        Labeler { next: max + 1 }
    }

    fn fresh(&mut self) -> u32 {
        let l = self.next;
        self.next += 1;
        l
    }
}

fn visit_formulas<'a>(p: &'a Proof, out: &mut Vec<&'a Formula>) {
    match p {
        Proof::Hyp { formula, .. } => out.push(formula),
        Proof::Infer {
            conclusion,
            premises,
            ..
        } => {
            out.push(conclusion);
            for q in premises {
                visit_formulas(q, out);
            }
        }
    }
}

fn proof_params(p: &Proof) -> BTreeSet<String> {
    let mut formulas = Vec::new();
    visit_formulas(p, &mut formulas);
    let mut out = BTreeSet::new();
    for f in formulas {
        out.extend(params_of(f));
    }
    fn walk_terms(p: &Proof, out: &mut BTreeSet<String>) {
        if let Proof::Infer {
            witness, premises, ..
        } = p
        {
            if let Some(t) = witness {
                term_params(t, out);
            }
            for q in premises {
                walk_terms(q, out);
            }
        }
    }
    walk_terms(p, &mut out);
    out
}

fn term_params(t: &Term, out: &mut BTreeSet<String>) {
    match t {
        Term::Var(_) => {}
        Term::Param(p) => {
            out.insert(p.clone());
        }
        Term::App(_, args) => {
            for a in args {
                term_params(a, out);
            }
        }
    }
}

fn fresh_param(used: &mut BTreeSet<String>) -> String {
    for i in 0.. {
        let cand = if i < 26 {
            ((b'a' + i as u8) as char).to_string()
        } else {
            format!("a{}", i - 25)
        };
        if !used.contains(&cand) {
            used.insert(cand.clone());
            return cand;
        }
    }
    unreachable!()
}

pub(crate) fn rename_labels(p: &Proof, map: &HashMap<u32, u32>) -> Proof {
    match p {
        Proof::Hyp { label, formula } => Proof::Hyp {
            label: map.get(label).copied().unwrap_or(*label),
            formula: formula.clone(),
        },
        Proof::Infer {
            rule,
            conclusion,
            discharges,
            eigen,
            witness,
            premises,
        } => Proof::Infer {
            rule: *rule,
            conclusion: conclusion.clone(),
            discharges: discharges
                .iter()
                .map(|l| {
                    if *l == 0 {
                        0
                    } else {
                        map.get(l).copied().unwrap_or(*l)
                    }
                })
                .collect(),
            eigen: eigen.clone(),
            witness: witness.clone(),
            premises: premises.iter().map(|q| rename_labels(q, map)).collect(),
        },
    }
}

/// Every nonzero label in the tree, hypothesis and discharge alike, mapped
/// to a fresh one. Used to make a whole input proof disjoint from the labels
/// a construction is about to allocate.
fn relabel_fresh(p: &Proof, lb: &mut Labeler) -> Proof {
    let mut map = HashMap::new();
    for l in p.labels_used() {
        if l != 0 {
            map.insert(l, lb.fresh());
        }
    }
    rename_labels(p, &map)
}

pub(crate) fn bound_labels(p: &Proof, out: &mut BTreeSet<u32>) {
    if let Proof::Infer {
        discharges,
        premises,
        ..
    } = p
    {
        for l in discharges {
            if *l != 0 {
                out.insert(*l);
            }
        }
        for q in premises {
            bound_labels(q, out);
        }
    }
}

/// Freshens only labels discharged *within* the tree, leaving open
/// hypothesis labels alone. This is what makes a copied subproof coexist
/// with the original: internal discharges must not collide, while shared
/// open hypotheses must keep their labels so one outer discharge closes
/// every copy.
fn relabel_bound_fresh(p: &Proof, lb: &mut Labeler) -> Proof {
    let mut bound = BTreeSet::new();
    bound_labels(p, &mut bound);
    let map: HashMap<u32, u32> = bound.into_iter().map(|l| (l, lb.fresh())).collect();
    rename_labels(p, &map)
}

/// Replaces every leaf carrying `label` by a copy of `template`, each copy
/// with its internal discharges freshened.
fn graft(p: &Proof, label: u32, template: &Proof, lb: &mut Labeler) -> Proof {
    match p {
        Proof::Hyp { label: l, .. } if *l == label && label != 0 => {
            relabel_bound_fresh(template, lb)
        }
        Proof::Hyp { .. } => p.clone(),
        Proof::Infer {
            rule,
            conclusion,
            discharges,
            eigen,
            witness,
            premises,
        } => Proof::Infer {
            rule: *rule,
            conclusion: conclusion.clone(),
            discharges: discharges.clone(),
            eigen: eigen.clone(),
            witness: witness.clone(),
            premises: premises
                .iter()
                .map(|q| graft(q, label, template, lb))
                .collect(),
        },
    }
}

/// Replaces every *open* leaf whose formula is alpha-equal to `f`. Leaves
/// whose labels are discharged somewhere in the tree are internal and stay.
fn graft_by_formula(p: &Proof, f: &Formula, template: &Proof, lb: &mut Labeler) -> Proof {
    let mut bound = BTreeSet::new();
    bound_labels(p, &mut bound);
    fn go(
        p: &Proof,
        f: &Formula,
        template: &Proof,
        bound: &BTreeSet<u32>,
        lb: &mut Labeler,
    ) -> Proof {
        match p {
            Proof::Hyp { label, formula }
                if !bound.contains(label) && crate::syntax::alpha_eq(formula, f) =>
            {
                relabel_bound_fresh(template, lb)
            }
            Proof::Hyp { .. } => p.clone(),
            Proof::Infer {
                rule,
                conclusion,
                discharges,
                eigen,
                witness,
                premises,
            } => Proof::Infer {
                rule: *rule,
                conclusion: conclusion.clone(),
                discharges: discharges.clone(),
                eigen: eigen.clone(),
                witness: witness.clone(),
                premises: premises
                    .iter()
                    .map(|q| go(q, f, template, bound, lb))
                    .collect(),
            },
        }
    }
    go(p, f, template, &bound, lb)
}

fn has_leaf(p: &Proof, label: u32) -> bool {
    match p {
        Proof::Hyp { label: l, .. } => *l == label,
        Proof::Infer { premises, .. } => premises.iter().any(|q| has_leaf(q, label)),
    }
}

// ---------------------------------------------------------------------------
// Formula shorthands
// ---------------------------------------------------------------------------

fn negi(f: Formula) -> Formula {
    Formula::neg(Flavor::Int, f)
}

fn negn(f: Formula) -> Formula {
    Formula::neg(Flavor::Neutral, f)
}

fn label(f: Formula) -> Formula {
    // deliberately not the collapsing constructor: the derivations here wrap
    // a label around an arbitrary formula, including an already-labeled atom
    Formula::CLabel(Box::new(f))
}

/// Universal-quantifier flavor used inside the classical existential and
/// universal rule patterns: neutral in NE, intuitionistic in NE_K.
fn ufl(system: SystemId) -> Flavor {
    match system {
        SystemId::Ne => Flavor::Neutral,
        _ => Flavor::Int,
    }
}

// ---------------------------------------------------------------------------
// Double-negation embeddings for classical roots
// ---------------------------------------------------------------------------

/// From `c` with a classically flavored root, a proof of `{c} |- ~~star(c)`.
/// The classical universal is rejected: it has no such embedding.
pub fn glivenko1_internal(system: SystemId, c: &Formula) -> Result<Proof, TransformError> {
    require_wf(system, c)?;
    match c {
        Formula::Quant {
            op: QuantOp::Forall,
            flavor: Flavor::Cls,
            ..
        } => Err(TransformError::RootUniversal(c.to_string())),
        Formula::Bin {
            op,
            flavor: Flavor::Cls,
            lhs,
            rhs,
        } => Ok(match op {
            crate::syntax::BinOp::Or => g1_or(lhs, rhs),
            crate::syntax::BinOp::Imp => g1_imp(lhs, rhs),
            crate::syntax::BinOp::And => g1_and(lhs, rhs),
        }),
        Formula::Quant {
            op: QuantOp::Exists,
            flavor: Flavor::Cls,
            var,
            body,
        } => Ok(g1_exists(system, var, body)),
        Formula::Atom {
            flavor: Flavor::Cls,
            ..
        } => Ok(g1_atom(c)),
        other => Err(TransformError::RootNotClassical(other.to_string())),
    }
}

fn g1_or(a: &Formula, b: &Formula) -> Proof {
    let c = Formula::or(Flavor::Cls, a.clone(), b.clone());
    let star = Formula::or(Flavor::Int, a.clone(), b.clone());
    let nstar = negi(star.clone());
    let d_na = Proof::infer_d(
        RuleId::imp_i_intro,
        negi(a.clone()),
        vec![1],
        vec![Proof::infer(
            RuleId::imp_i_elim,
            Formula::Bot,
            vec![
                Proof::hyp(3, nstar.clone()),
                Proof::infer(
                    RuleId::or_i_intro_1,
                    star.clone(),
                    vec![Proof::hyp(1, a.clone())],
                ),
            ],
        )],
    );
    let d_nb = Proof::infer_d(
        RuleId::imp_i_intro,
        negi(b.clone()),
        vec![2],
        vec![Proof::infer(
            RuleId::imp_i_elim,
            Formula::Bot,
            vec![
                Proof::hyp(3, nstar.clone()),
                Proof::infer(
                    RuleId::or_i_intro_2,
                    star.clone(),
                    vec![Proof::hyp(2, b.clone())],
                ),
            ],
        )],
    );
    Proof::infer_d(
        RuleId::imp_i_intro,
        negi(nstar),
        vec![3],
        vec![Proof::infer(
            RuleId::or_c_elim,
            Formula::Bot,
            vec![Proof::hyp(4, c), d_na, d_nb],
        )],
    )
}

fn g1_imp(a: &Formula, b: &Formula) -> Proof {
    let c = Formula::imp(Flavor::Cls, a.clone(), b.clone());
    let star = Formula::imp(Flavor::Int, a.clone(), b.clone());
    let nstar = negi(star.clone());
    // from B alone, star vacuously; hence from ~star, ~B
    let d_nb = Proof::infer_d(
        RuleId::imp_i_intro,
        negi(b.clone()),
        vec![1],
        vec![Proof::infer(
            RuleId::imp_i_elim,
            Formula::Bot,
            vec![
                Proof::hyp(3, nstar.clone()),
                Proof::infer_d(
                    RuleId::imp_i_intro,
                    star.clone(),
                    vec![0],
                    vec![Proof::hyp(1, b.clone())],
                ),
            ],
        )],
    );
    // from A and the classical implication, bot; so star by ex falso
    let e = Proof::infer_d(
        RuleId::imp_i_intro,
        star.clone(),
        vec![2],
        vec![Proof::infer(
            RuleId::bot_elim,
            b.clone(),
            vec![Proof::infer(
                RuleId::imp_c_elim,
                Formula::Bot,
                vec![Proof::hyp(5, c), Proof::hyp(2, a.clone()), d_nb],
            )],
        )],
    );
    Proof::infer_d(
        RuleId::imp_i_intro,
        negi(nstar.clone()),
        vec![3],
        vec![Proof::infer(
            RuleId::imp_i_elim,
            Formula::Bot,
            vec![Proof::hyp(3, nstar), e],
        )],
    )
}

fn g1_and(a: &Formula, b: &Formula) -> Proof {
    let c = Formula::and(Flavor::Cls, a.clone(), b.clone());
    let star = Formula::and(Flavor::Int, a.clone(), b.clone());
    let nstar = negi(star.clone());
    let inner = Proof::infer(
        RuleId::imp_i_elim,
        Formula::Bot,
        vec![
            Proof::hyp(3, nstar.clone()),
            Proof::infer(
                RuleId::and_intro,
                star.clone(),
                vec![Proof::hyp(1, a.clone()), Proof::hyp(2, b.clone())],
            ),
        ],
    );
    let na = Proof::infer_d(RuleId::imp_i_intro, negi(a.clone()), vec![1], vec![inner]);
    let e1 = Proof::infer(
        RuleId::and_c_elim_1,
        Formula::Bot,
        vec![Proof::hyp(4, c.clone()), na],
    );
    let nb = Proof::infer_d(RuleId::imp_i_intro, negi(b.clone()), vec![2], vec![e1]);
    let e2 = Proof::infer(RuleId::and_c_elim_2, Formula::Bot, vec![Proof::hyp(4, c), nb]);
    Proof::infer_d(RuleId::imp_i_intro, negi(nstar), vec![3], vec![e2])
}

fn g1_exists(system: SystemId, var: &str, body: &Formula) -> Proof {
    let c = Formula::quant(QuantOp::Exists, Flavor::Cls, var, body.clone());
    let star = Formula::quant(QuantOp::Exists, Flavor::Int, var, body.clone());
    let nstar = negi(star.clone());
    let mut used = params_of(body);
    let p = fresh_param(&mut used);
    let inst = substitute(body, var, &Term::param(&p));
    let all_neg = Formula::quant(QuantOp::Forall, ufl(system), var, negi(body.clone()));
    let d_all = Proof::infer_eigen(
        RuleId::all_intro,
        all_neg,
        vec![],
        &p,
        vec![Proof::infer_d(
            RuleId::imp_i_intro,
            negi(inst.clone()),
            vec![1],
            vec![Proof::infer(
                RuleId::imp_i_elim,
                Formula::Bot,
                vec![
                    Proof::hyp(2, nstar.clone()),
                    Proof::infer_wit(
                        RuleId::ex_i_intro,
                        star.clone(),
                        Term::param(&p),
                        vec![Proof::hyp(1, inst)],
                    ),
                ],
            )],
        )],
    );
    Proof::infer_d(
        RuleId::imp_i_intro,
        negi(nstar),
        vec![2],
        vec![Proof::infer(
            RuleId::ex_c_elim,
            Formula::Bot,
            vec![Proof::hyp(5, c), d_all],
        )],
    )
}

fn g1_atom(c: &Formula) -> Proof {
    let star = crate::translate::star(c).expect("classical atom");
    let nstar = negi(star);
    Proof::infer_d(
        RuleId::imp_i_intro,
        negi(nstar.clone()),
        vec![1],
        vec![Proof::infer(
            RuleId::atom_c_elim,
            Formula::Bot,
            vec![Proof::hyp(2, c.clone()), Proof::hyp(1, nstar)],
        )],
    )
}

/// From `c` with a classically flavored root, a proof of `{star(c)} |- c`.
/// Unlike [`glivenko1_internal`], the classical universal is accepted: the
/// intuitionistic universal does imply it. The open hypothesis is labeled 5
/// in every case.
pub fn star_embed(system: SystemId, c: &Formula) -> Result<Proof, TransformError> {
    require_wf(system, c)?;
    match c {
        Formula::Bin {
            op,
            flavor: Flavor::Cls,
            lhs,
            rhs,
        } => Ok(match op {
            crate::syntax::BinOp::Or => se_or(lhs, rhs),
            crate::syntax::BinOp::Imp => se_imp(lhs, rhs),
            crate::syntax::BinOp::And => se_and(lhs, rhs),
        }),
        Formula::Quant {
            op: QuantOp::Exists,
            flavor: Flavor::Cls,
            var,
            body,
        } => Ok(se_exists(system, var, body)),
        Formula::Quant {
            op: QuantOp::Forall,
            flavor: Flavor::Cls,
            var,
            body,
        } => Ok(se_forall(var, body)),
        Formula::Atom {
            flavor: Flavor::Cls,
            ..
        } => Ok(se_atom(c)),
        other => Err(TransformError::RootNotClassical(other.to_string())),
    }
}

fn se_or(a: &Formula, b: &Formula) -> Proof {
    let c = Formula::or(Flavor::Cls, a.clone(), b.clone());
    let star = Formula::or(Flavor::Int, a.clone(), b.clone());
    let case_a = Proof::infer(
        RuleId::imp_i_elim,
        Formula::Bot,
        vec![
            Proof::hyp(3, negi(a.clone())),
            Proof::hyp(1, a.clone()),
        ],
    );
    let case_b = Proof::infer(
        RuleId::imp_i_elim,
        Formula::Bot,
        vec![
            Proof::hyp(4, negi(b.clone())),
            Proof::hyp(2, b.clone()),
        ],
    );
    Proof::infer_d(
        RuleId::or_c_intro,
        c,
        vec![3, 4],
        vec![Proof::infer_d(
            RuleId::or_i_elim,
            Formula::Bot,
            vec![1, 2],
            vec![Proof::hyp(5, star), case_a, case_b],
        )],
    )
}

fn se_imp(a: &Formula, b: &Formula) -> Proof {
    let c = Formula::imp(Flavor::Cls, a.clone(), b.clone());
    let star = Formula::imp(Flavor::Int, a.clone(), b.clone());
    Proof::infer_d(
        RuleId::imp_c_intro,
        c,
        vec![1, 2],
        vec![Proof::infer(
            RuleId::imp_i_elim,
            Formula::Bot,
            vec![
                Proof::hyp(2, negi(b.clone())),
                Proof::infer(
                    RuleId::imp_i_elim,
                    b.clone(),
                    vec![Proof::hyp(5, star), Proof::hyp(1, a.clone())],
                ),
            ],
        )],
    )
}

fn se_and(a: &Formula, b: &Formula) -> Proof {
    let c = Formula::and(Flavor::Cls, a.clone(), b.clone());
    let star = Formula::and(Flavor::Int, a.clone(), b.clone());
    let left = Proof::infer(
        RuleId::imp_i_elim,
        Formula::Bot,
        vec![
            Proof::hyp(1, negi(a.clone())),
            Proof::infer(RuleId::and_elim_1, a.clone(), vec![Proof::hyp(5, star.clone())]),
        ],
    );
    let right = Proof::infer(
        RuleId::imp_i_elim,
        Formula::Bot,
        vec![
            Proof::hyp(2, negi(b.clone())),
            Proof::infer(RuleId::and_elim_2, b.clone(), vec![Proof::hyp(5, star)]),
        ],
    );
    Proof::infer_d(RuleId::and_c_intro, c, vec![1, 2], vec![left, right])
}

fn se_exists(system: SystemId, var: &str, body: &Formula) -> Proof {
    let c = Formula::quant(QuantOp::Exists, Flavor::Cls, var, body.clone());
    let star = Formula::quant(QuantOp::Exists, Flavor::Int, var, body.clone());
    let all_neg = Formula::quant(QuantOp::Forall, ufl(system), var, negi(body.clone()));
    let mut used = params_of(body);
    let p = fresh_param(&mut used);
    let inst = substitute(body, var, &Term::param(&p));
    let minor = Proof::infer(
        RuleId::imp_i_elim,
        Formula::Bot,
        vec![
            Proof::infer_wit(
                RuleId::all_elim,
                negi(inst.clone()),
                Term::param(&p),
                vec![Proof::hyp(1, all_neg)],
            ),
            Proof::hyp(2, inst),
        ],
    );
    Proof::infer_d(
        RuleId::ex_c_intro,
        c,
        vec![1],
        vec![Proof::infer_eigen(
            RuleId::ex_i_elim,
            Formula::Bot,
            vec![2],
            &p,
            vec![Proof::hyp(5, star), minor],
        )],
    )
}

fn se_forall(var: &str, body: &Formula) -> Proof {
    let c = Formula::quant(QuantOp::Forall, Flavor::Cls, var, body.clone());
    let star = Formula::quant(QuantOp::Forall, Flavor::Int, var, body.clone());
    let ex_neg = Formula::quant(QuantOp::Exists, Flavor::Int, var, negi(body.clone()));
    let mut used = params_of(body);
    let p = fresh_param(&mut used);
    let inst = substitute(body, var, &Term::param(&p));
    let minor = Proof::infer(
        RuleId::imp_i_elim,
        Formula::Bot,
        vec![
            Proof::hyp(2, negi(inst.clone())),
            Proof::infer_wit(
                RuleId::all_elim,
                inst,
                Term::param(&p),
                vec![Proof::hyp(5, star)],
            ),
        ],
    );
    Proof::infer_d(
        RuleId::all_c_intro,
        c,
        vec![1],
        vec![Proof::infer_eigen(
            RuleId::ex_i_elim,
            Formula::Bot,
            vec![2],
            &p,
            vec![Proof::hyp(1, ex_neg), minor],
        )],
    )
}

fn se_atom(c: &Formula) -> Proof {
    let star = crate::translate::star(c).expect("classical atom");
    Proof::infer_d(
        RuleId::atom_c_intro,
        c.clone(),
        vec![1],
        vec![Proof::infer(
            RuleId::imp_i_elim,
            Formula::Bot,
            vec![Proof::hyp(1, negi(star.clone())), Proof::hyp(5, star)],
        )],
    )
}

/// From `c` with a classically flavored root, a proof of `{~c} |- ~star(c)`,
/// by contraposing [`star_embed`] — except for the classical universal,
/// which gets its own direct tree (its positive embedding only runs the
/// other way).
pub fn glivenko2_internal(system: SystemId, c: &Formula) -> Result<Proof, TransformError> {
    require_wf(system, c)?;
    if let Formula::Quant {
        op: QuantOp::Forall,
        flavor: Flavor::Cls,
        var,
        body,
    } = c
    {
        return Ok(neg_forallc_to_neg_foralli(var, body));
    }
    let se = star_embed(system, c)?;
    let star = crate::translate::star(c).expect("checked classical root");
    Ok(Proof::infer_d(
        RuleId::imp_i_intro,
        negi(star),
        vec![5],
        vec![Proof::infer(
            RuleId::imp_i_elim,
            Formula::Bot,
            vec![Proof::hyp(6, negi(c.clone())), se],
        )],
    ))
}

// ---------------------------------------------------------------------------
// The classical universal: elimination forms
// ---------------------------------------------------------------------------

fn neg_forallc_to_existsc(var: &str, body: &Formula) -> Proof {
    let all_c = Formula::quant(QuantOp::Forall, Flavor::Cls, var, body.clone());
    let na = negi(body.clone());
    let ex_na = Formula::quant(QuantOp::Exists, Flavor::Int, var, na.clone());
    let ex_c_na = Formula::quant(QuantOp::Exists, Flavor::Cls, var, na.clone());
    let all_nna = Formula::quant(QuantOp::Forall, Flavor::Int, var, negi(na.clone()));
    let mut used = params_of(body);
    let p = fresh_param(&mut used);
    let na_p = substitute(&na, var, &Term::param(&p));
    let inner = Proof::infer(
        RuleId::imp_i_elim,
        Formula::Bot,
        vec![
            Proof::infer_wit(
                RuleId::all_elim,
                negi(na_p.clone()),
                Term::param(&p),
                vec![Proof::hyp(3, all_nna)],
            ),
            Proof::hyp(1, na_p),
        ],
    );
    let all_c_proof = Proof::infer_d(
        RuleId::all_c_intro,
        all_c.clone(),
        vec![2],
        vec![Proof::infer_eigen(
            RuleId::ex_i_elim,
            Formula::Bot,
            vec![1],
            &p,
            vec![Proof::hyp(2, ex_na), inner],
        )],
    );
    Proof::infer_d(
        RuleId::ex_c_intro,
        ex_c_na,
        vec![3],
        vec![Proof::infer(
            RuleId::imp_i_elim,
            Formula::Bot,
            vec![Proof::hyp(4, negi(all_c)), all_c_proof],
        )],
    )
}

fn neg_forallc_to_neg_foralli(var: &str, body: &Formula) -> Proof {
    let all_c = Formula::quant(QuantOp::Forall, Flavor::Cls, var, body.clone());
    let all_i = Formula::quant(QuantOp::Forall, Flavor::Int, var, body.clone());
    let ex_na = Formula::quant(QuantOp::Exists, Flavor::Int, var, negi(body.clone()));
    let mut used = params_of(body);
    let p = fresh_param(&mut used);
    let a_p = substitute(body, var, &Term::param(&p));
    let inner = Proof::infer(
        RuleId::imp_i_elim,
        Formula::Bot,
        vec![
            Proof::hyp(1, negi(a_p.clone())),
            Proof::infer_wit(
                RuleId::all_elim,
                a_p,
                Term::param(&p),
                vec![Proof::hyp(3, all_i.clone())],
            ),
        ],
    );
    let all_c_proof = Proof::infer_d(
        RuleId::all_c_intro,
        all_c.clone(),
        vec![2],
        vec![Proof::infer_eigen(
            RuleId::ex_i_elim,
            Formula::Bot,
            vec![1],
            &p,
            vec![Proof::hyp(2, ex_na), inner],
        )],
    );
    Proof::infer_d(
        RuleId::imp_i_intro,
        negi(all_i),
        vec![3],
        vec![Proof::infer(
            RuleId::imp_i_elim,
            Formula::Bot,
            vec![Proof::hyp(4, negi(all_c)), all_c_proof],
        )],
    )
}

/// The two derivations eliminating a refuted classical universal: into a
/// classical existential of the negation, or into the negated
/// intuitionistic universal.
pub fn neg_forallc_elim(
    a_body: &Formula,
    x: &str,
    target: NegForallTarget,
) -> Result<Proof, TransformError> {
    require_wf(SystemId::Nek, a_body)?;
    Ok(match target {
        NegForallTarget::ExistsC => neg_forallc_to_existsc(x, a_body),
        NegForallTarget::NegForallI => neg_forallc_to_neg_foralli(x, a_body),
    })
}

// ---------------------------------------------------------------------------
// Label derivations
// ---------------------------------------------------------------------------

/// `{a^c} |- ~~a`.
pub fn eci_label_to_dn(a: &Formula) -> Result<Proof, TransformError> {
    require_wf(SystemId::Eci, a)?;
    Ok(Proof::infer_d(
        RuleId::imp_intro,
        negn(negn(a.clone())),
        vec![1],
        vec![Proof::infer(
            RuleId::e_c,
            Formula::Bot,
            vec![
                Proof::hyp(2, label(a.clone())),
                Proof::hyp(1, negn(a.clone())),
            ],
        )],
    ))
}

/// `{~~a} |- a^c`.
pub fn eci_dn_to_label(a: &Formula) -> Result<Proof, TransformError> {
    require_wf(SystemId::Eci, a)?;
    Ok(Proof::infer_d(
        RuleId::i_c,
        label(a.clone()),
        vec![1],
        vec![Proof::infer(
            RuleId::imp_elim,
            Formula::Bot,
            vec![
                Proof::hyp(2, negn(negn(a.clone()))),
                Proof::hyp(1, negn(a.clone())),
            ],
        )],
    ))
}

/// `{(~a)^c} |- ~a`: the label comes off a negation with no residue,
/// composing the label unfolding with triple-negation collapse.
pub fn eci_glivenko2(a: &Formula) -> Result<Proof, TransformError> {
    require_wf(SystemId::Eci, a)?;
    let na = negn(a.clone());
    let t1 = Proof::infer_d(
        RuleId::imp_intro,
        negn(negn(na.clone())),
        vec![1],
        vec![Proof::infer(
            RuleId::e_c,
            Formula::Bot,
            vec![
                Proof::hyp(2, label(na.clone())),
                Proof::hyp(1, negn(na.clone())),
            ],
        )],
    );
    let d_nn = Proof::infer_d(
        RuleId::imp_intro,
        negn(na.clone()),
        vec![4],
        vec![Proof::infer(
            RuleId::imp_elim,
            Formula::Bot,
            vec![Proof::hyp(4, na.clone()), Proof::hyp(3, a.clone())],
        )],
    );
    Ok(Proof::infer_d(
        RuleId::imp_intro,
        na,
        vec![3],
        vec![Proof::infer(RuleId::imp_elim, Formula::Bot, vec![t1, d_nn])],
    ))
}

/// The commutation of label and negation: fwd is `{(~a)^c} |- ~(a^c)`,
/// bwd is `{~(a^c)} |- (~a)^c`.
pub fn eci_neg_label_comm(a: &Formula, direction: Direction) -> Result<Proof, TransformError> {
    require_wf(SystemId::Eci, a)?;
    match direction {
        Direction::Fwd => {
            let g = eci_glivenko2(a)?;
            Ok(Proof::infer_d(
                RuleId::imp_intro,
                negn(label(a.clone())),
                vec![5],
                vec![Proof::infer(
                    RuleId::e_c,
                    Formula::Bot,
                    vec![Proof::hyp(5, label(a.clone())), g],
                )],
            ))
        }
        Direction::Bwd => {
            let na = negn(a.clone());
            let d = Proof::infer_d(
                RuleId::i_c,
                label(a.clone()),
                vec![2],
                vec![Proof::infer(
                    RuleId::imp_elim,
                    Formula::Bot,
                    vec![
                        Proof::hyp(1, negn(na.clone())),
                        Proof::hyp(2, na.clone()),
                    ],
                )],
            );
            Ok(Proof::infer_d(
                RuleId::i_c,
                label(na),
                vec![1],
                vec![Proof::infer(
                    RuleId::imp_elim,
                    Formula::Bot,
                    vec![Proof::hyp(3, negn(label(a.clone()))), d],
                )],
            ))
        }
    }
}

/// The modus-ponens classicalization: given a refutation using `~A` and a
/// proof of `A -> B`, produce `B^c`. Every open `~A` leaf of the refutation
/// is replaced by a derivation of `~A` from `[A]` and `[~B]` through the
/// implication, and the new hypotheses are closed by `i_c`.
pub fn mp_classicalize(refutation: &Proof, imp: &Proof) -> Result<Proof, TransformError> {
    let j1 = require_checked(SystemId::Eci, refutation)?;
    let j2 = require_checked(SystemId::Eci, imp)?;
    if j1.conclusion != Formula::Bot {
        return Err(TransformError::JudgmentMismatch(format!(
            "refutation concludes `{}`, not bot",
            j1.conclusion
        )));
    }
    let (a, b) = match &j2.conclusion {
        Formula::Bin {
            op: crate::syntax::BinOp::Imp,
            flavor: Flavor::Neutral,
            lhs,
            rhs,
        } => ((**lhs).clone(), (**rhs).clone()),
        other => {
            return Err(TransformError::PatternNotMatched(format!(
                "second proof concludes `{other}`, not an implication"
            )))
        }
    };
    let na = negn(a.clone());
    if !j1.context.iter().any(|f| crate::syntax::alpha_eq(f, &na)) {
        return Err(TransformError::JudgmentMismatch(format!(
            "refutation context {j1} does not contain `{na}`"
        )));
    }
    let mut lb = Labeler::above(&[refutation, imp]);
    let host = relabel_fresh(refutation, &mut lb);
    let la = lb.fresh();
    let lnb = lb.fresh();
    let nb = negn(b.clone());
    let d = Proof::infer_d(
        RuleId::imp_intro,
        na.clone(),
        vec![la],
        vec![Proof::infer(
            RuleId::imp_elim,
            Formula::Bot,
            vec![
                Proof::hyp(lnb, nb),
                Proof::infer(
                    RuleId::imp_elim,
                    b.clone(),
                    vec![imp.clone(), Proof::hyp(la, a)],
                ),
            ],
        )],
    );
    let grafted = graft_by_formula(&host, &na, &d, &mut lb);
    Ok(Proof::infer_d(
        RuleId::i_c,
        label(b),
        vec![lnb],
        vec![grafted],
    ))
}

// ---------------------------------------------------------------------------
// Classical universal: introductions and instantiations
// ---------------------------------------------------------------------------

/// From a refutation of the intuitionistic universal, its classical cousin:
/// open `~forall_i x A` leaves are rebuilt from `[exists_i x ~A]`, which the
/// final `all_c_intro` discharges.
pub fn nek_forallc_from_refutation(
    a_body: &Formula,
    x: &str,
    refutation: &Proof,
) -> Result<Proof, TransformError> {
    require_wf(SystemId::Nek, a_body)?;
    let j = require_checked(SystemId::Nek, refutation)?;
    if j.conclusion != Formula::Bot {
        return Err(TransformError::JudgmentMismatch(format!(
            "refutation concludes `{}`, not bot",
            j.conclusion
        )));
    }
    let all_i = Formula::quant(QuantOp::Forall, Flavor::Int, x, a_body.clone());
    let n_all = negi(all_i.clone());
    if !j.context.iter().any(|f| crate::syntax::alpha_eq(f, &n_all)) {
        return Err(TransformError::JudgmentMismatch(format!(
            "refutation context {j} does not contain `{n_all}`"
        )));
    }
    let mut lb = Labeler::above(&[refutation]);
    let host = relabel_fresh(refutation, &mut lb);
    let l_ex = lb.fresh();
    let l1 = lb.fresh();
    let l2 = lb.fresh();
    let mut used = proof_params(refutation);
    used.extend(params_of(a_body));
    let p = fresh_param(&mut used);
    let ex_na = Formula::quant(QuantOp::Exists, Flavor::Int, x, negi(a_body.clone()));
    let a_p = substitute(a_body, x, &Term::param(&p));
    let inner = Proof::infer(
        RuleId::imp_i_elim,
        Formula::Bot,
        vec![
            Proof::hyp(l1, negi(a_p.clone())),
            Proof::infer_wit(
                RuleId::all_elim,
                a_p,
                Term::param(&p),
                vec![Proof::hyp(l2, all_i)],
            ),
        ],
    );
    let d = Proof::infer_d(
        RuleId::imp_i_intro,
        n_all.clone(),
        vec![l2],
        vec![Proof::infer_eigen(
            RuleId::ex_i_elim,
            Formula::Bot,
            vec![l1],
            &p,
            vec![Proof::hyp(l_ex, ex_na), inner],
        )],
    );
    let grafted = graft_by_formula(&host, &n_all, &d, &mut lb);
    Ok(Proof::infer_d(
        RuleId::all_c_intro,
        Formula::quant(QuantOp::Forall, Flavor::Cls, x, a_body.clone()),
        vec![l_ex],
        vec![grafted],
    ))
}

/// From a proof of `(forall x A)^c`, a proof of `~~A(t/x)`.
pub fn eci_forall_label_instantiate(p: &Proof, t: &Term) -> Result<Proof, TransformError> {
    let j = require_checked(SystemId::Eci, p)?;
    let (x, body) = match &j.conclusion {
        Formula::CLabel(inner) => match &**inner {
            Formula::Quant {
                op: QuantOp::Forall,
                flavor: Flavor::Neutral,
                var,
                body,
            } => (var.clone(), (**body).clone()),
            other => {
                return Err(TransformError::PatternNotMatched(format!(
                    "conclusion labels `{other}`, not a universal"
                )))
            }
        },
        other => {
            return Err(TransformError::PatternNotMatched(format!(
                "conclusion `{other}` is not labeled"
            )))
        }
    };
    let mut lb = Labeler::above(&[p]);
    let l1 = lb.fresh();
    let l2 = lb.fresh();
    let all_f = Formula::quant(QuantOp::Forall, Flavor::Neutral, &x, body.clone());
    let a_t = substitute(&body, &x, t);
    let na_t = negn(a_t.clone());
    let inner = Proof::infer(
        RuleId::imp_elim,
        Formula::Bot,
        vec![
            Proof::hyp(l2, na_t.clone()),
            Proof::infer_wit(RuleId::all_elim, a_t, t.clone(), vec![Proof::hyp(l1, all_f.clone())]),
        ],
    );
    let d_nall = Proof::infer_d(RuleId::imp_intro, negn(all_f), vec![l1], vec![inner]);
    Ok(Proof::infer_d(
        RuleId::imp_intro,
        negn(na_t),
        vec![l2],
        vec![Proof::infer(
            RuleId::e_c,
            Formula::Bot,
            vec![p.clone(), d_nall],
        )],
    ))
}

/// Contracts the introduction-then-elimination detour on the classical
/// universal: each `exists_i x ~A` leaf the introduction discharged is
/// rebuilt from a `~A(t/x)` hypothesis, which the new root discharges.
pub fn forallc_detour_reduce(p: &Proof) -> Result<Proof, TransformError> {
    require_checked(SystemId::Nek, p)?;
    let (witness, inner) = match p {
        Proof::Infer {
            rule: RuleId::all_c_elim,
            witness: Some(t),
            premises,
            ..
        } => (t.clone(), &premises[0]),
        _ => {
            return Err(TransformError::PatternNotMatched(
                "root is not a witness elimination of a classical universal".to_string(),
            ))
        }
    };
    let (l, x, body, pi) = match inner {
        Proof::Infer {
            rule: RuleId::all_c_intro,
            conclusion:
                Formula::Quant {
                    op: QuantOp::Forall,
                    flavor: Flavor::Cls,
                    var,
                    body,
                },
            discharges,
            premises,
            ..
        } => (discharges[0], var.clone(), (**body).clone(), &premises[0]),
        _ => {
            return Err(TransformError::PatternNotMatched(
                "premise is not an introduction of a classical universal".to_string(),
            ))
        }
    };
    let mut lb = Labeler::above(&[p]);
    let n = lb.fresh();
    let a_t = substitute(&body, &x, &witness);
    let na_t = negi(a_t.clone());
    let ex_na = Formula::quant(QuantOp::Exists, Flavor::Int, &x, negi(body));
    let template = Proof::infer_wit(
        RuleId::ex_i_intro,
        ex_na,
        witness,
        vec![Proof::hyp(n, na_t.clone())],
    );
    let grafted = graft(pi, l, &template, &mut lb);
    Ok(Proof::infer_d(
        RuleId::imp_i_intro,
        negi(na_t),
        vec![n],
        vec![grafted],
    ))
}

// ---------------------------------------------------------------------------
// Whole-proof translation: labeled calculus -> flavored calculus
// ---------------------------------------------------------------------------

fn forall_free(p: &Proof) -> Result<(), TransformError> {
    let mut formulas = Vec::new();
    visit_formulas(p, &mut formulas);
    for f in formulas {
        if f.has_universal() {
            return Err(TransformError::Universal(f.to_string()));
        }
    }
    Ok(())
}

struct EciToNek {
    lb: Labeler,
    params: BTreeSet<String>,
}

/// Translates a checked, universal-free ECI proof into an NE_K proof of the
/// flavored image of its judgment. Rules of the shared fragment map one to
/// one; label introductions become the classical introduction for the root
/// of the labeled formula, with bridge subproofs converting the new
/// discharged hypotheses into the old ones; label eliminations dually.
pub fn eci_to_nek(p: &Proof) -> Result<Proof, TransformError> {
    require_checked(SystemId::Eci, p)?;
    forall_free(p)?;
    let mut tr = EciToNek {
        lb: Labeler::above(&[p]),
        params: proof_params(p),
    };
    tr.go(p)
}

impl EciToNek {
    fn t(&self, f: &Formula) -> Result<Formula, TransformError> {
        crate::translate::t_nek(f).map_err(|e| TransformError::Universal(e.to_string()))
    }

    fn go(&mut self, p: &Proof) -> Result<Proof, TransformError> {
        let Proof::Infer {
            rule,
            conclusion,
            discharges,
            eigen,
            witness,
            premises,
        } = p
        else {
            let Proof::Hyp { label, formula } = p else {
                unreachable!()
            };
            return Ok(Proof::hyp(*label, self.t(formula)?));
        };
        use RuleId::*;
        let mapped = match rule {
            and_intro => Some(and_intro),
            and_elim_1 => Some(and_elim_1),
            and_elim_2 => Some(and_elim_2),
            bot_elim => Some(bot_elim),
            imp_intro => Some(imp_i_intro),
            imp_elim => Some(imp_i_elim),
            or_intro_1 => Some(or_i_intro_1),
            or_intro_2 => Some(or_i_intro_2),
            or_elim => Some(or_i_elim),
            ex_intro => Some(ex_i_intro),
            ex_elim => Some(ex_i_elim),
            _ => None,
        };
        if let Some(target) = mapped {
            let prems = premises
                .iter()
                .map(|q| self.go(q))
                .collect::<Result<Vec<_>, _>>()?;
            return Ok(Proof::Infer {
                rule: target,
                conclusion: self.t(conclusion)?,
                discharges: discharges.clone(),
                eigen: eigen.clone(),
                witness: witness.clone(),
                premises: prems,
            });
        }
        match rule {
            i_c => self.label_intro(conclusion, discharges[0], &premises[0]),
            e_c => self.label_elim(&premises[0], &premises[1]),
            _ => Err(TransformError::Universal(format!(
                "rule {rule} has no universal-free image"
            ))),
        }
    }

    /// The label introduction: conclusion is `(X)^c` with premise bot
    /// discharging `[~X]^l`. `t = t_nek(X)` is what the translated leaves
    /// negate; `cls = t_nek((X)^c)` is what must be concluded.
    fn label_intro(
        &mut self,
        conclusion: &Formula,
        l: u32,
        premise: &Proof,
    ) -> Result<Proof, TransformError> {
        let Formula::CLabel(x_orig) = conclusion else {
            unreachable!("checked i_c concludes a labeled formula")
        };
        let t = self.t(x_orig)?;
        let cls = self.t(conclusion)?;
        let prem = self.go(premise)?;
        use crate::syntax::BinOp::*;
        match &cls {
            Formula::Bot => {
                // conclusion bot from leaves [~bot]^l: the trivial negation
                // closes them
                let m = self.lb.fresh();
                let d = Proof::infer_d(
                    RuleId::imp_i_intro,
                    negi(Formula::Bot),
                    vec![m],
                    vec![Proof::hyp(m, Formula::Bot)],
                );
                Ok(graft(&prem, l, &d, &mut self.lb))
            }
            Formula::Atom { .. } => {
                let star = crate::translate::star(&cls).expect("classical atom");
                if t == cls {
                    // nested label: leaves carry ~P_c, bridge through the
                    // classical atom rules
                    let fa = self.lb.fresh();
                    let m = self.lb.fresh();
                    let d = Proof::infer_d(
                        RuleId::imp_i_intro,
                        negi(cls.clone()),
                        vec![m],
                        vec![Proof::infer(
                            RuleId::atom_c_elim,
                            Formula::Bot,
                            vec![Proof::hyp(m, cls.clone()), Proof::hyp(fa, negi(star))],
                        )],
                    );
                    let grafted = graft(&prem, l, &d, &mut self.lb);
                    Ok(Proof::infer_d(
                        RuleId::atom_c_intro,
                        cls,
                        vec![fa],
                        vec![grafted],
                    ))
                } else {
                    // leaves already carry ~P_i, exactly the slot shape
                    Ok(Proof::infer_d(RuleId::atom_c_intro, cls, vec![l], vec![prem]))
                }
            }
            Formula::Bin { op: And, lhs, rhs, .. } => {
                let (a, b) = ((**lhs).clone(), (**rhs).clone());
                let fa = self.lb.fresh();
                let fb = self.lb.fresh();
                let d_a = self.neg_pair_bridge(&t, &a, fa, true)?;
                let d_b = self.neg_pair_bridge(&t, &b, fb, false)?;
                let prem2 = relabel_bound_fresh(&prem, &mut self.lb);
                let left = graft(&prem, l, &d_a, &mut self.lb);
                let right = graft(&prem2, l, &d_b, &mut self.lb);
                Ok(Proof::infer_d(
                    RuleId::and_c_intro,
                    cls,
                    vec![fa, fb],
                    vec![left, right],
                ))
            }
            Formula::Bin { op: Or, lhs, rhs, .. } => {
                let (a, b) = ((**lhs).clone(), (**rhs).clone());
                let fa = self.lb.fresh();
                let fb = self.lb.fresh();
                let m = self.lb.fresh();
                let refute = match &t {
                    Formula::Bin {
                        flavor: Flavor::Int,
                        ..
                    } => {
                        let u = self.lb.fresh();
                        let v = self.lb.fresh();
                        Proof::infer_d(
                            RuleId::or_i_elim,
                            Formula::Bot,
                            vec![u, v],
                            vec![
                                Proof::hyp(m, t.clone()),
                                Proof::infer(
                                    RuleId::imp_i_elim,
                                    Formula::Bot,
                                    vec![Proof::hyp(fa, negi(a.clone())), Proof::hyp(u, a.clone())],
                                ),
                                Proof::infer(
                                    RuleId::imp_i_elim,
                                    Formula::Bot,
                                    vec![Proof::hyp(fb, negi(b.clone())), Proof::hyp(v, b.clone())],
                                ),
                            ],
                        )
                    }
                    _ => Proof::infer(
                        RuleId::or_c_elim,
                        Formula::Bot,
                        vec![
                            Proof::hyp(m, t.clone()),
                            Proof::hyp(fa, negi(a.clone())),
                            Proof::hyp(fb, negi(b.clone())),
                        ],
                    ),
                };
                let d = Proof::infer_d(RuleId::imp_i_intro, negi(t.clone()), vec![m], vec![refute]);
                let grafted = graft(&prem, l, &d, &mut self.lb);
                Ok(Proof::infer_d(
                    RuleId::or_c_intro,
                    cls,
                    vec![fa, fb],
                    vec![grafted],
                ))
            }
            Formula::Bin { op: Imp, lhs, rhs, .. } => {
                let (a, b) = ((**lhs).clone(), (**rhs).clone());
                let fa = self.lb.fresh();
                let fb = self.lb.fresh();
                let m = self.lb.fresh();
                let refute = match &t {
                    Formula::Bin {
                        flavor: Flavor::Int,
                        ..
                    } => Proof::infer(
                        RuleId::imp_i_elim,
                        Formula::Bot,
                        vec![
                            Proof::hyp(fb, negi(b.clone())),
                            Proof::infer(
                                RuleId::imp_i_elim,
                                b.clone(),
                                vec![Proof::hyp(m, t.clone()), Proof::hyp(fa, a.clone())],
                            ),
                        ],
                    ),
                    _ => Proof::infer(
                        RuleId::imp_c_elim,
                        Formula::Bot,
                        vec![
                            Proof::hyp(m, t.clone()),
                            Proof::hyp(fa, a.clone()),
                            Proof::hyp(fb, negi(b.clone())),
                        ],
                    ),
                };
                let d = Proof::infer_d(RuleId::imp_i_intro, negi(t.clone()), vec![m], vec![refute]);
                let grafted = graft(&prem, l, &d, &mut self.lb);
                Ok(Proof::infer_d(
                    RuleId::imp_c_intro,
                    cls,
                    vec![fa, fb],
                    vec![grafted],
                ))
            }
            Formula::Quant {
                op: QuantOp::Exists,
                var,
                body,
                ..
            } => {
                let (x, a) = (var.clone(), (**body).clone());
                let all_na = Formula::quant(QuantOp::Forall, Flavor::Int, &x, negi(a.clone()));
                let fa = self.lb.fresh();
                let m = self.lb.fresh();
                let refute = match &t {
                    Formula::Quant {
                        flavor: Flavor::Int,
                        ..
                    } => {
                        let u = self.lb.fresh();
                        let e = fresh_param(&mut self.params);
                        let a_e = substitute(&a, &x, &Term::param(&e));
                        Proof::infer_eigen(
                            RuleId::ex_i_elim,
                            Formula::Bot,
                            vec![u],
                            &e,
                            vec![
                                Proof::hyp(m, t.clone()),
                                Proof::infer(
                                    RuleId::imp_i_elim,
                                    Formula::Bot,
                                    vec![
                                        Proof::infer_wit(
                                            RuleId::all_elim,
                                            negi(a_e.clone()),
                                            Term::param(&e),
                                            vec![Proof::hyp(fa, all_na.clone())],
                                        ),
                                        Proof::hyp(u, a_e),
                                    ],
                                ),
                            ],
                        )
                    }
                    _ => Proof::infer(
                        RuleId::ex_c_elim,
                        Formula::Bot,
                        vec![Proof::hyp(m, t.clone()), Proof::hyp(fa, all_na.clone())],
                    ),
                };
                let d = Proof::infer_d(RuleId::imp_i_intro, negi(t.clone()), vec![m], vec![refute]);
                let grafted = graft(&prem, l, &d, &mut self.lb);
                Ok(Proof::infer_d(
                    RuleId::ex_c_intro,
                    cls,
                    vec![fa],
                    vec![grafted],
                ))
            }
            _ => unreachable!("flavored image of a label is classical"),
        }
    }

    /// Bridge for the conjunction introduction: from `[~side]^f`, derive
    /// `~t` where `t` is the translated labeled formula (intuitionistic or
    /// classical conjunction).
    fn neg_pair_bridge(
        &mut self,
        t: &Formula,
        side: &Formula,
        f_label: u32,
        first: bool,
    ) -> Result<Proof, TransformError> {
        let m = self.lb.fresh();
        let refute = match t {
            Formula::Bin {
                flavor: Flavor::Int,
                ..
            } => {
                let elim = if first {
                    RuleId::and_elim_1
                } else {
                    RuleId::and_elim_2
                };
                Proof::infer(
                    RuleId::imp_i_elim,
                    Formula::Bot,
                    vec![
                        Proof::hyp(f_label, negi(side.clone())),
                        Proof::infer(elim, side.clone(), vec![Proof::hyp(m, t.clone())]),
                    ],
                )
            }
            _ => {
                let elim = if first {
                    RuleId::and_c_elim_1
                } else {
                    RuleId::and_c_elim_2
                };
                Proof::infer(
                    elim,
                    Formula::Bot,
                    vec![Proof::hyp(m, t.clone()), Proof::hyp(f_label, negi(side.clone()))],
                )
            }
        };
        Ok(Proof::infer_d(
            RuleId::imp_i_intro,
            negi(t.clone()),
            vec![m],
            vec![refute],
        ))
    }

    /// The label elimination: premises `(X)^c` and `~X`, conclusion bot.
    fn label_elim(&mut self, major: &Proof, minor: &Proof) -> Result<Proof, TransformError> {
        let Formula::CLabel(x_orig) = major.conclusion() else {
            unreachable!("checked e_c major premise is labeled")
        };
        let t = self.t(x_orig)?;
        let cls = self.t(major.conclusion())?;
        let t1 = self.go(major)?;
        let t2 = self.go(minor)?;
        if t == cls {
            // nested label or bot: the premises already fit together
            return Ok(Proof::infer(RuleId::imp_i_elim, Formula::Bot, vec![t2, t1]));
        }
        use crate::syntax::BinOp::*;
        match &cls {
            Formula::Atom { .. } => Ok(Proof::infer(
                RuleId::atom_c_elim,
                Formula::Bot,
                vec![t1, t2],
            )),
            Formula::Bin { op: And, lhs, rhs, .. } => {
                let (a, b) = ((**lhs).clone(), (**rhs).clone());
                let u = self.lb.fresh();
                let v = self.lb.fresh();
                let inner = Proof::infer(
                    RuleId::imp_i_elim,
                    Formula::Bot,
                    vec![
                        t2,
                        Proof::infer(
                            RuleId::and_intro,
                            t.clone(),
                            vec![Proof::hyp(u, a.clone()), Proof::hyp(v, b.clone())],
                        ),
                    ],
                );
                let na = Proof::infer_d(RuleId::imp_i_intro, negi(a), vec![u], vec![inner]);
                let t1_copy = relabel_bound_fresh(&t1, &mut self.lb);
                let e1 = Proof::infer(RuleId::and_c_elim_1, Formula::Bot, vec![t1_copy, na]);
                let nb = Proof::infer_d(RuleId::imp_i_intro, negi(b), vec![v], vec![e1]);
                Ok(Proof::infer(
                    RuleId::and_c_elim_2,
                    Formula::Bot,
                    vec![t1, nb],
                ))
            }
            Formula::Bin { op: Or, lhs, rhs, .. } => {
                let (a, b) = ((**lhs).clone(), (**rhs).clone());
                let u = self.lb.fresh();
                let v = self.lb.fresh();
                let t2_copy = relabel_bound_fresh(&t2, &mut self.lb);
                let na = Proof::infer_d(
                    RuleId::imp_i_intro,
                    negi(a.clone()),
                    vec![u],
                    vec![Proof::infer(
                        RuleId::imp_i_elim,
                        Formula::Bot,
                        vec![
                            t2,
                            Proof::infer(
                                RuleId::or_i_intro_1,
                                t.clone(),
                                vec![Proof::hyp(u, a.clone())],
                            ),
                        ],
                    )],
                );
                let nb = Proof::infer_d(
                    RuleId::imp_i_intro,
                    negi(b.clone()),
                    vec![v],
                    vec![Proof::infer(
                        RuleId::imp_i_elim,
                        Formula::Bot,
                        vec![
                            t2_copy,
                            Proof::infer(
                                RuleId::or_i_intro_2,
                                t.clone(),
                                vec![Proof::hyp(v, b.clone())],
                            ),
                        ],
                    )],
                );
                Ok(Proof::infer(
                    RuleId::or_c_elim,
                    Formula::Bot,
                    vec![t1, na, nb],
                ))
            }
            Formula::Bin { op: Imp, lhs, rhs, .. } => {
                let (a, b) = ((**lhs).clone(), (**rhs).clone());
                let u = self.lb.fresh();
                let v = self.lb.fresh();
                let t2_copy = relabel_bound_fresh(&t2, &mut self.lb);
                let nb = Proof::infer_d(
                    RuleId::imp_i_intro,
                    negi(b.clone()),
                    vec![v],
                    vec![Proof::infer(
                        RuleId::imp_i_elim,
                        Formula::Bot,
                        vec![
                            t2_copy,
                            Proof::infer_d(
                                RuleId::imp_i_intro,
                                t.clone(),
                                vec![0],
                                vec![Proof::hyp(v, b.clone())],
                            ),
                        ],
                    )],
                );
                let e = Proof::infer_d(
                    RuleId::imp_i_intro,
                    t.clone(),
                    vec![u],
                    vec![Proof::infer(
                        RuleId::bot_elim,
                        b,
                        vec![Proof::infer(
                            RuleId::imp_c_elim,
                            Formula::Bot,
                            vec![t1, Proof::hyp(u, a), nb],
                        )],
                    )],
                );
                Ok(Proof::infer(RuleId::imp_i_elim, Formula::Bot, vec![t2, e]))
            }
            Formula::Quant {
                op: QuantOp::Exists,
                var,
                body,
                ..
            } => {
                let (x, a) = (var.clone(), (**body).clone());
                let u = self.lb.fresh();
                let e = fresh_param(&mut self.params);
                let a_e = substitute(&a, &x, &Term::param(&e));
                let all_na = Formula::quant(QuantOp::Forall, Flavor::Int, &x, negi(a));
                let d_all = Proof::infer_eigen(
                    RuleId::all_intro,
                    all_na,
                    vec![],
                    &e,
                    vec![Proof::infer_d(
                        RuleId::imp_i_intro,
                        negi(a_e.clone()),
                        vec![u],
                        vec![Proof::infer(
                            RuleId::imp_i_elim,
                            Formula::Bot,
                            vec![
                                t2,
                                Proof::infer_wit(
                                    RuleId::ex_i_intro,
                                    t.clone(),
                                    Term::param(&e),
                                    vec![Proof::hyp(u, a_e)],
                                ),
                            ],
                        )],
                    )],
                );
                Ok(Proof::infer(
                    RuleId::ex_c_elim,
                    Formula::Bot,
                    vec![t1, d_all],
                ))
            }
            _ => unreachable!("flavored image of a label is classical"),
        }
    }
}

// ---------------------------------------------------------------------------
// Whole-proof translation: flavored calculus -> labeled calculus
// ---------------------------------------------------------------------------

struct NekToEci {
    lb: Labeler,
}

/// Translates a checked, universal-free NE_K proof into an ECI proof of the
/// label image of its judgment: the inverse direction of [`eci_to_nek`].
/// Classical rules unfold into label manipulations; since the classical
/// existential rules mention the universal quantifier in their discharged
/// hypotheses, the universal-free precondition rules them out along with
/// the universal rules themselves.
pub fn nek_to_eci(p: &Proof) -> Result<Proof, TransformError> {
    require_checked(SystemId::Nek, p)?;
    forall_free(p)?;
    let mut tr = NekToEci {
        lb: Labeler::above(&[p]),
    };
    tr.go(p)
}

impl NekToEci {
    fn u(&self, f: &Formula) -> Result<Formula, TransformError> {
        crate::translate::untranslate_nek(f).map_err(|e| TransformError::Universal(e.to_string()))
    }

    fn go(&mut self, p: &Proof) -> Result<Proof, TransformError> {
        let Proof::Infer {
            rule,
            conclusion,
            discharges,
            eigen,
            witness,
            premises,
        } = p
        else {
            let Proof::Hyp { label, formula } = p else {
                unreachable!()
            };
            return Ok(Proof::hyp(*label, self.u(formula)?));
        };
        use RuleId::*;
        let mapped = match rule {
            and_intro => Some(and_intro),
            and_elim_1 => Some(and_elim_1),
            and_elim_2 => Some(and_elim_2),
            bot_elim => Some(bot_elim),
            imp_i_intro => Some(imp_intro),
            imp_i_elim => Some(imp_elim),
            or_i_intro_1 => Some(or_intro_1),
            or_i_intro_2 => Some(or_intro_2),
            or_i_elim => Some(or_elim),
            ex_i_intro => Some(ex_intro),
            ex_i_elim => Some(ex_elim),
            _ => None,
        };
        if let Some(target) = mapped {
            let prems = premises
                .iter()
                .map(|q| self.go(q))
                .collect::<Result<Vec<_>, _>>()?;
            return Ok(Proof::Infer {
                rule: target,
                conclusion: self.u(conclusion)?,
                discharges: discharges.clone(),
                eigen: eigen.clone(),
                witness: witness.clone(),
                premises: prems,
            });
        }
        match rule {
            atom_c_intro => {
                let prem = self.go(&premises[0])?;
                Ok(Proof::infer_d(
                    i_c,
                    self.u(conclusion)?,
                    vec![discharges[0]],
                    vec![prem],
                ))
            }
            atom_c_elim => {
                let t1 = self.go(&premises[0])?;
                let t2 = self.go(&premises[1])?;
                Ok(Proof::infer(e_c, Formula::Bot, vec![t1, t2]))
            }
            and_c_intro => self.and_intro_case(conclusion, discharges, premises),
            and_c_elim_1 | and_c_elim_2 => {
                self.and_elim_case(*rule == and_c_elim_1, premises)
            }
            or_c_intro => self.or_intro_case(conclusion, discharges, &premises[0]),
            or_c_elim => self.or_elim_case(premises),
            imp_c_intro => self.imp_intro_case(conclusion, discharges, &premises[0]),
            imp_c_elim => self.imp_elim_case(premises),
            _ => Err(TransformError::Universal(format!(
                "rule {rule} has no universal-free image"
            ))),
        }
    }

    /// Unlabeled image of the two sides of a classical binary conclusion.
    fn sides(&self, conclusion: &Formula) -> Result<(Formula, Formula, Formula), TransformError> {
        let labeled = self.u(conclusion)?;
        let Formula::CLabel(body) = &labeled else {
            unreachable!("classical conclusion unlabels to a labeled formula")
        };
        let Formula::Bin { lhs, rhs, .. } = &**body else {
            unreachable!("binary classical conclusion")
        };
        Ok(((**lhs).clone(), (**rhs).clone(), (**body).clone()))
    }

    fn and_intro_case(
        &mut self,
        conclusion: &Formula,
        discharges: &[u32],
        premises: &[Proof],
    ) -> Result<Proof, TransformError> {
        let (a, b, body) = self.sides(conclusion)?;
        let (l1, l2) = (discharges[0], discharges[1]);
        let prem1 = self.go(&premises[0])?;
        let prem2 = self.go(&premises[1])?;
        let a_lab = self.lb.fresh();
        let b_lab = self.lb.fresh();
        let c_lab = self.lb.fresh();
        let d_a = Proof::infer_d(
            RuleId::imp_intro,
            negn(a.clone()),
            vec![b_lab],
            vec![Proof::infer(
                RuleId::imp_elim,
                Formula::Bot,
                vec![
                    Proof::hyp(a_lab, negn(body.clone())),
                    Proof::infer(
                        RuleId::and_intro,
                        body.clone(),
                        vec![Proof::hyp(b_lab, a.clone()), Proof::hyp(c_lab, b.clone())],
                    ),
                ],
            )],
        );
        let e1 = graft(&prem1, l1, &d_a, &mut self.lb);
        let f_b = Proof::infer_d(RuleId::imp_intro, negn(b.clone()), vec![c_lab], vec![e1]);
        let e2 = if l2 != 0 && has_leaf(&prem2, l2) {
            graft(&prem2, l2, &f_b, &mut self.lb)
        } else {
            // no leaf to rebuild: thread the second premise through by
            // ex falso so its hypotheses stay in the judgment
            Proof::infer(
                RuleId::imp_elim,
                Formula::Bot,
                vec![f_b, Proof::infer(RuleId::bot_elim, b.clone(), vec![prem2])],
            )
        };
        Ok(Proof::infer_d(
            RuleId::i_c,
            label(body),
            vec![a_lab],
            vec![e2],
        ))
    }

    fn and_elim_case(&mut self, first: bool, premises: &[Proof]) -> Result<Proof, TransformError> {
        let t1 = self.go(&premises[0])?;
        let t2 = self.go(&premises[1])?;
        let Formula::CLabel(body) = t1.conclusion() else {
            unreachable!("classical conjunction unlabels to a labeled formula")
        };
        let body = (**body).clone();
        let Formula::Bin { lhs, rhs, .. } = &body else {
            unreachable!()
        };
        let side = if first {
            (**lhs).clone()
        } else {
            (**rhs).clone()
        };
        let elim = if first {
            RuleId::and_elim_1
        } else {
            RuleId::and_elim_2
        };
        let m = self.lb.fresh();
        let d = Proof::infer_d(
            RuleId::imp_intro,
            negn(body.clone()),
            vec![m],
            vec![Proof::infer(
                RuleId::imp_elim,
                Formula::Bot,
                vec![t2, Proof::infer(elim, side, vec![Proof::hyp(m, body)])],
            )],
        );
        Ok(Proof::infer(RuleId::e_c, Formula::Bot, vec![t1, d]))
    }

    fn or_intro_case(
        &mut self,
        conclusion: &Formula,
        discharges: &[u32],
        premise: &Proof,
    ) -> Result<Proof, TransformError> {
        let (a, b, body) = self.sides(conclusion)?;
        let (l1, l2) = (discharges[0], discharges[1]);
        let prem = self.go(premise)?;
        let b_lab = self.lb.fresh();
        let u = self.lb.fresh();
        let v = self.lb.fresh();
        let d_na = Proof::infer_d(
            RuleId::imp_intro,
            negn(a.clone()),
            vec![u],
            vec![Proof::infer(
                RuleId::imp_elim,
                Formula::Bot,
                vec![
                    Proof::hyp(b_lab, negn(body.clone())),
                    Proof::infer(RuleId::or_intro_1, body.clone(), vec![Proof::hyp(u, a)]),
                ],
            )],
        );
        let d_nb = Proof::infer_d(
            RuleId::imp_intro,
            negn(b.clone()),
            vec![v],
            vec![Proof::infer(
                RuleId::imp_elim,
                Formula::Bot,
                vec![
                    Proof::hyp(b_lab, negn(body.clone())),
                    Proof::infer(RuleId::or_intro_2, body.clone(), vec![Proof::hyp(v, b)]),
                ],
            )],
        );
        let grafted = graft(
            &graft(&prem, l1, &d_na, &mut self.lb),
            l2,
            &d_nb,
            &mut self.lb,
        );
        Ok(Proof::infer_d(
            RuleId::i_c,
            label(body),
            vec![b_lab],
            vec![grafted],
        ))
    }

    fn or_elim_case(&mut self, premises: &[Proof]) -> Result<Proof, TransformError> {
        let t1 = self.go(&premises[0])?;
        let t2 = self.go(&premises[1])?;
        let t3 = self.go(&premises[2])?;
        let Formula::CLabel(body) = t1.conclusion() else {
            unreachable!()
        };
        let body = (**body).clone();
        let Formula::Bin { lhs, rhs, .. } = &body else {
            unreachable!()
        };
        let (a, b) = ((**lhs).clone(), (**rhs).clone());
        let m = self.lb.fresh();
        let u = self.lb.fresh();
        let v = self.lb.fresh();
        let d = Proof::infer_d(
            RuleId::imp_intro,
            negn(body.clone()),
            vec![m],
            vec![Proof::infer_d(
                RuleId::or_elim,
                Formula::Bot,
                vec![u, v],
                vec![
                    Proof::hyp(m, body),
                    Proof::infer(RuleId::imp_elim, Formula::Bot, vec![t2, Proof::hyp(u, a)]),
                    Proof::infer(RuleId::imp_elim, Formula::Bot, vec![t3, Proof::hyp(v, b)]),
                ],
            )],
        );
        Ok(Proof::infer(RuleId::e_c, Formula::Bot, vec![t1, d]))
    }

    fn imp_intro_case(
        &mut self,
        conclusion: &Formula,
        discharges: &[u32],
        premise: &Proof,
    ) -> Result<Proof, TransformError> {
        let (a, b, body) = self.sides(conclusion)?;
        let (l1, l2) = (discharges[0], discharges[1]);
        let prem = self.go(premise)?;
        let b_lab = self.lb.fresh();
        let u = self.lb.fresh();
        let v = self.lb.fresh();
        let w = self.lb.fresh();
        // from ~(A -> B) and B, bot: so ~B
        let d_nb = Proof::infer_d(
            RuleId::imp_intro,
            negn(b.clone()),
            vec![v],
            vec![Proof::infer(
                RuleId::imp_elim,
                Formula::Bot,
                vec![
                    Proof::hyp(b_lab, negn(body.clone())),
                    Proof::infer_d(
                        RuleId::imp_intro,
                        body.clone(),
                        vec![0],
                        vec![Proof::hyp(v, b.clone())],
                    ),
                ],
            )],
        );
        // from ~(A -> B), double negation of A via ex falso
        let d_nna = Proof::infer_d(
            RuleId::imp_intro,
            negn(negn(a.clone())),
            vec![u],
            vec![Proof::infer(
                RuleId::imp_elim,
                Formula::Bot,
                vec![
                    Proof::hyp(b_lab, negn(body.clone())),
                    Proof::infer_d(
                        RuleId::imp_intro,
                        body.clone(),
                        vec![w],
                        vec![Proof::infer(
                            RuleId::bot_elim,
                            b.clone(),
                            vec![Proof::infer(
                                RuleId::imp_elim,
                                Formula::Bot,
                                vec![Proof::hyp(u, negn(a.clone())), Proof::hyp(w, a.clone())],
                            )],
                        )],
                    ),
                ],
            )],
        );
        let e1 = graft(&prem, l2, &d_nb, &mut self.lb);
        let f = Proof::infer_d(RuleId::imp_intro, negn(a), vec![l1], vec![e1]);
        Ok(Proof::infer_d(
            RuleId::i_c,
            label(body),
            vec![b_lab],
            vec![Proof::infer(
                RuleId::imp_elim,
                Formula::Bot,
                vec![d_nna, f],
            )],
        ))
    }

    fn imp_elim_case(&mut self, premises: &[Proof]) -> Result<Proof, TransformError> {
        let t1 = self.go(&premises[0])?;
        let t2 = self.go(&premises[1])?;
        let t3 = self.go(&premises[2])?;
        let Formula::CLabel(body) = t1.conclusion() else {
            unreachable!()
        };
        let body = (**body).clone();
        let Formula::Bin { rhs, .. } = &body else {
            unreachable!()
        };
        let b = (**rhs).clone();
        let m = self.lb.fresh();
        let d = Proof::infer_d(
            RuleId::imp_intro,
            negn(body.clone()),
            vec![m],
            vec![Proof::infer(
                RuleId::imp_elim,
                Formula::Bot,
                vec![
                    t3,
                    Proof::infer(RuleId::imp_elim, b, vec![Proof::hyp(m, body), t2]),
                ],
            )],
        );
        Ok(Proof::infer(RuleId::e_c, Formula::Bot, vec![t1, d]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{check, open_assumptions, Judgment};
    use crate::parse::parse_formula;
    use crate::syntax::alpha_eq;

    fn f(s: &str, sys: SystemId) -> Formula {
        parse_formula(s, sys).unwrap()
    }

    fn assert_proves(system: SystemId, p: &Proof, ctx: &[&str], goal: &str) {
        let report = check(system, p);
        let j = report
            .judgment()
            .unwrap_or_else(|| panic!("{system}: {report}"))
            .clone();
        let want = Judgment::new(
            ctx.iter().map(|s| f(s, system)).collect(),
            f(goal, system),
        );
        assert_eq!(j, want, "{system}: got {j}");
    }

    #[test]
    fn classical_or_embeds_under_double_negation() {
        let p = glivenko1_internal(SystemId::Ne, &f("p \\/c q", SystemId::Ne)).unwrap();
        assert_proves(SystemId::Ne, &p, &["p \\/c q"], "~~(p \\/i q)");
        let opens = open_assumptions(&p);
        assert_eq!(opens.len(), 1);
        assert!(alpha_eq(&opens[0], &f("p \\/c q", SystemId::Ne)));
    }

    #[test]
    fn classical_imp_embeds_under_double_negation() {
        let p = glivenko1_internal(SystemId::Ne, &f("p ->c q", SystemId::Ne)).unwrap();
        assert_proves(SystemId::Ne, &p, &["p ->c q"], "~~(p ->i q)");
        let p2 = glivenko1_internal(SystemId::Nek, &f("p ->c q", SystemId::Nek)).unwrap();
        assert_proves(SystemId::Nek, &p2, &["p ->c q"], "~~(p ->i q)");
    }

    #[test]
    fn classical_exists_embeds_under_double_negation() {
        let p = glivenko1_internal(
            SystemId::Ne,
            &f("existsc x. P(x, 'a)", SystemId::Ne),
        )
        .unwrap();
        assert_proves(
            SystemId::Ne,
            &p,
            &["existsc x. P(x, 'a)"],
            "~~existsi x. P(x, 'a)",
        );
        let p2 = glivenko1_internal(SystemId::Nek, &f("existsc x. P(x)", SystemId::Nek)).unwrap();
        assert_proves(SystemId::Nek, &p2, &["existsc x. P(x)"], "~~existsi x. P(x)");
    }

    #[test]
    fn classical_and_embeds_under_double_negation() {
        let p = glivenko1_internal(SystemId::Nek, &f("p /\\c q", SystemId::Nek)).unwrap();
        assert_proves(SystemId::Nek, &p, &["p /\\c q"], "~~(p /\\ q)");
    }

    #[test]
    fn classical_atom_embeds_under_double_negation() {
        for sys in [SystemId::Ne, SystemId::Nek] {
            let p = glivenko1_internal(sys, &f("p_c", sys)).unwrap();
            assert_proves(sys, &p, &["p_c"], "~~p");
        }
    }

    #[test]
    fn classical_universal_has_no_embedding() {
        let r = glivenko1_internal(SystemId::Nek, &f("forallc x. P(x)", SystemId::Nek));
        assert!(matches!(r, Err(TransformError::RootUniversal(_))));
        let r2 = glivenko1_internal(SystemId::Ne, &f("p \\/i q", SystemId::Ne));
        assert!(matches!(r2, Err(TransformError::RootNotClassical(_))));
        let r3 = glivenko1_internal(SystemId::Ne, &f("p", SystemId::Ne));
        assert!(matches!(r3, Err(TransformError::RootNotClassical(_))));
    }

    #[test]
    fn intuitionistic_roots_embed_into_classical_ones() {
        let cases: &[(SystemId, &str, &str)] = &[
            (SystemId::Ne, "p \\/c q", "p \\/i q"),
            (SystemId::Ne, "p ->c q", "p ->i q"),
            (SystemId::Ne, "existsc x. P(x)", "existsi x. P(x)"),
            (SystemId::Ne, "p_c", "p"),
            (SystemId::Nek, "p /\\c q", "p /\\ q"),
            (SystemId::Nek, "forallc x. P(x)", "foralli x. P(x)"),
            (SystemId::Nek, "p \\/c q", "p \\/i q"),
        ];
        for (sys, c, star) in cases {
            let p = star_embed(*sys, &f(c, *sys)).unwrap();
            assert_proves(*sys, &p, &[star], c);
        }
    }

    #[test]
    fn negated_classical_roots_contrapose() {
        let cases: &[(SystemId, &str, &str)] = &[
            (SystemId::Nek, "p /\\c q", "~(p /\\ q)"),
            (SystemId::Ne, "p \\/c q", "~(p \\/i q)"),
            (SystemId::Ne, "existsc x. P(x)", "~existsi x. P(x)"),
            (SystemId::Nek, "forallc x. P(x)", "~foralli x. P(x)"),
        ];
        for (sys, c, ngoal) in cases {
            let p = glivenko2_internal(*sys, &f(c, *sys)).unwrap();
            let nc = format!("~({c})");
            assert_proves(*sys, &p, &[&nc], ngoal);
        }
    }

    #[test]
    fn refuted_classical_universal_eliminates() {
        let body = f("P(x)", SystemId::Nek);
        let p = neg_forallc_elim(&body, "x", NegForallTarget::ExistsC).unwrap();
        assert_proves(
            SystemId::Nek,
            &p,
            &["~forallc x. P(x)"],
            "existsc x. ~P(x)",
        );
        let q = neg_forallc_elim(&body, "x", NegForallTarget::NegForallI).unwrap();
        assert_proves(
            SystemId::Nek,
            &q,
            &["~forallc x. P(x)"],
            "~foralli x. P(x)",
        );
    }

    #[test]
    fn label_unfolds_to_double_negation() {
        let cases = ["p", "bot", "forall x. P(x)", "p /\\ q"];
        for a in cases {
            let p = eci_label_to_dn(&f(a, SystemId::Eci)).unwrap();
            assert_proves(
                SystemId::Eci,
                &p,
                &[&format!("({a})^c")],
                &format!("~~({a})"),
            );
        }
    }

    #[test]
    fn double_negation_folds_to_label() {
        let cases = ["p", "~q", "p /\\ q"];
        for a in cases {
            let p = eci_dn_to_label(&f(a, SystemId::Eci)).unwrap();
            assert_proves(
                SystemId::Eci,
                &p,
                &[&format!("~~({a})")],
                &format!("({a})^c"),
            );
        }
    }

    #[test]
    fn labeled_negation_sheds_its_label() {
        for a in ["p", "bot", "p \\/ q"] {
            let p = eci_glivenko2(&f(a, SystemId::Eci)).unwrap();
            assert_proves(
                SystemId::Eci,
                &p,
                &[&format!("(~({a}))^c")],
                &format!("~({a})"),
            );
        }
    }

    #[test]
    fn label_commutes_with_negation() {
        for a in ["p", "bot"] {
            let fwd = eci_neg_label_comm(&f(a, SystemId::Eci), Direction::Fwd).unwrap();
            assert_proves(
                SystemId::Eci,
                &fwd,
                &[&format!("(~({a}))^c")],
                &format!("~(({a})^c)"),
            );
            let bwd = eci_neg_label_comm(&f(a, SystemId::Eci), Direction::Bwd).unwrap();
            assert_proves(
                SystemId::Eci,
                &bwd,
                &[&format!("~(({a})^c)")],
                &format!("(~({a}))^c"),
            );
        }
    }

    #[test]
    fn modus_ponens_classicalizes() {
        // refutation of {p, ~p}; implication p -> p
        let refutation = Proof::infer(
            RuleId::imp_elim,
            Formula::Bot,
            vec![
                Proof::hyp(1, f("~p", SystemId::Eci)),
                Proof::hyp(2, f("p", SystemId::Eci)),
            ],
        );
        let imp = Proof::infer_d(
            RuleId::imp_intro,
            f("p -> p", SystemId::Eci),
            vec![1],
            vec![Proof::hyp(1, f("p", SystemId::Eci))],
        );
        let p = mp_classicalize(&refutation, &imp).unwrap();
        assert_proves(SystemId::Eci, &p, &["p"], "p^c");

        let not_imp = Proof::hyp(1, f("p", SystemId::Eci));
        assert!(matches!(
            mp_classicalize(&refutation, &not_imp),
            Err(TransformError::PatternNotMatched(_))
        ));
        // refutation that never uses ~p
        let no_na = Proof::infer(
            RuleId::imp_elim,
            Formula::Bot,
            vec![
                Proof::hyp(1, f("~q", SystemId::Eci)),
                Proof::hyp(2, f("q", SystemId::Eci)),
            ],
        );
        assert!(matches!(
            mp_classicalize(&no_na, &imp),
            Err(TransformError::JudgmentMismatch(_))
        ));
    }

    #[test]
    fn classical_universal_from_refutation() {
        let body = f("P(x)", SystemId::Nek);
        let refutation = Proof::infer(
            RuleId::imp_i_elim,
            Formula::Bot,
            vec![
                Proof::hyp(1, f("~foralli x. P(x)", SystemId::Nek)),
                Proof::hyp(2, f("foralli x. P(x)", SystemId::Nek)),
            ],
        );
        let p = nek_forallc_from_refutation(&body, "x", &refutation).unwrap();
        assert_proves(SystemId::Nek, &p, &["foralli x. P(x)"], "forallc x. P(x)");

        let not_bot = Proof::hyp(1, f("p", SystemId::Nek));
        assert!(matches!(
            nek_forallc_from_refutation(&body, "x", &not_bot),
            Err(TransformError::JudgmentMismatch(_))
        ));
        let wrong_ctx = Proof::infer(
            RuleId::imp_i_elim,
            Formula::Bot,
            vec![
                Proof::hyp(1, f("~q", SystemId::Nek)),
                Proof::hyp(2, f("q", SystemId::Nek)),
            ],
        );
        assert!(matches!(
            nek_forallc_from_refutation(&body, "x", &wrong_ctx),
            Err(TransformError::JudgmentMismatch(_))
        ));
    }

    #[test]
    fn labeled_universal_instantiates() {
        let p = eci_dn_to_label(&f("forall x. P(x)", SystemId::Eci)).unwrap();
        let out = eci_forall_label_instantiate(&p, &Term::param("a")).unwrap();
        assert_proves(
            SystemId::Eci,
            &out,
            &["~~forall x. P(x)"],
            "~~P('a)",
        );
        // capture: substituting y into a body binding y forces a rename
        let cap = eci_dn_to_label(&f("forall x. exists y. Q(x, y)", SystemId::Eci)).unwrap();
        let out2 = eci_forall_label_instantiate(&cap, &Term::var("y")).unwrap();
        assert!(check(SystemId::Eci, &out2).is_ok());

        let not_universal = eci_dn_to_label(&f("p", SystemId::Eci)).unwrap();
        assert!(matches!(
            eci_forall_label_instantiate(&not_universal, &Term::param("a")),
            Err(TransformError::PatternNotMatched(_))
        ));
    }

    fn detour(pi: Proof, discharge: u32) -> Proof {
        // all_c_elim with witness c() over all_c_intro over pi
        Proof::infer_wit(
            RuleId::all_c_elim,
            f("~~P(c())", SystemId::Nek),
            Term::cnst("c"),
            vec![Proof::infer_d(
                RuleId::all_c_intro,
                f("forallc x. P(x)", SystemId::Nek),
                vec![discharge],
                vec![pi],
            )],
        )
    }

    #[test]
    fn universal_detour_reduces() {
        // one discharged leaf: node count is preserved, judgment survives
        let pi = Proof::infer(
            RuleId::imp_i_elim,
            Formula::Bot,
            vec![
                Proof::hyp(9, f("~existsi x. ~P(x)", SystemId::Nek)),
                Proof::hyp(1, f("existsi x. ~P(x)", SystemId::Nek)),
            ],
        );
        let p = detour(pi, 1);
        assert!(check(SystemId::Nek, &p).is_ok());
        let before = p.node_count();
        let reduced = forallc_detour_reduce(&p).unwrap();
        assert_proves(
            SystemId::Nek,
            &reduced,
            &["~existsi x. ~P(x)"],
            "~~P(c())",
        );
        assert_eq!(reduced.node_count(), before);

        // vacuous discharge: strictly smaller
        let pi0 = Proof::infer(
            RuleId::imp_i_elim,
            Formula::Bot,
            vec![
                Proof::hyp(9, f("~q", SystemId::Nek)),
                Proof::hyp(8, f("q", SystemId::Nek)),
            ],
        );
        let p0 = detour(pi0, 0);
        assert!(check(SystemId::Nek, &p0).is_ok());
        let before0 = p0.node_count();
        let reduced0 = forallc_detour_reduce(&p0).unwrap();
        assert_proves(SystemId::Nek, &reduced0, &["~q", "q"], "~~P(c())");
        assert!(reduced0.node_count() < before0);

        // no detour to reduce
        let no_detour = Proof::infer_wit(
            RuleId::all_c_elim,
            f("~~P(c())", SystemId::Nek),
            Term::cnst("c"),
            vec![Proof::hyp(1, f("forallc x. P(x)", SystemId::Nek))],
        );
        assert!(matches!(
            forallc_detour_reduce(&no_detour),
            Err(TransformError::PatternNotMatched(_))
        ));
    }

    #[test]
    fn label_proofs_translate_to_flavored_proofs() {
        // label intro over a conjunction
        let p = eci_dn_to_label(&f("p /\\ q", SystemId::Eci)).unwrap();
        let out = eci_to_nek(&p).unwrap();
        assert_proves(SystemId::Nek, &out, &["~~(p /\\ q)"], "p /\\c q");
        // label elim: the unfolding proof has one
        let q = eci_label_to_dn(&f("p \\/ q", SystemId::Eci)).unwrap();
        let out2 = eci_to_nek(&q).unwrap();
        assert_proves(SystemId::Nek, &out2, &["p \\/c q"], "~~(p \\/i q)");
        // implications and atoms
        let r = eci_label_to_dn(&f("p -> q", SystemId::Eci)).unwrap();
        let out3 = eci_to_nek(&r).unwrap();
        assert_proves(SystemId::Nek, &out3, &["p ->c q"], "~~(p ->i q)");
        let s = eci_dn_to_label(&f("p", SystemId::Eci)).unwrap();
        let out4 = eci_to_nek(&s).unwrap();
        assert_proves(SystemId::Nek, &out4, &["~~p"], "p_c");
        // existentials
        let t = eci_dn_to_label(&f("exists x. P(x)", SystemId::Eci)).unwrap();
        let out5 = eci_to_nek(&t).unwrap();
        assert_proves(SystemId::Nek, &out5, &["~~existsi x. P(x)"], "existsc x. P(x)");
    }

    #[test]
    fn nested_labels_translate() {
        let p = eci_dn_to_label(&f("p^c", SystemId::Eci)).unwrap();
        let out = eci_to_nek(&p).unwrap();
        assert_proves(SystemId::Nek, &out, &["~~p_c"], "p_c");
        let q = eci_label_to_dn(&f("(p /\\ q)^c", SystemId::Eci)).unwrap();
        let out2 = eci_to_nek(&q).unwrap();
        assert_proves(SystemId::Nek, &out2, &["p /\\c q"], "~~(p /\\c q)");
    }

    #[test]
    fn shared_fragment_translates_one_to_one() {
        let p = Proof::infer_d(
            RuleId::imp_intro,
            f("p -> (p \\/ q)", SystemId::Eci),
            vec![1],
            vec![Proof::infer(
                RuleId::or_intro_1,
                f("p \\/ q", SystemId::Eci),
                vec![Proof::hyp(1, f("p", SystemId::Eci))],
            )],
        );
        let out = eci_to_nek(&p).unwrap();
        assert_proves(SystemId::Nek, &out, &[], "p ->i (p \\/i q)");
        assert_eq!(out.node_count(), p.node_count());
        let back = nek_to_eci(&out).unwrap();
        assert_proves(SystemId::Eci, &back, &[], "p -> (p \\/ q)");
    }

    #[test]
    fn flavored_proofs_translate_to_label_proofs() {
        // the conjunction embedding carries and_c_intro
        let p = star_embed(SystemId::Nek, &f("p /\\c q", SystemId::Nek)).unwrap();
        let out = nek_to_eci(&p).unwrap();
        assert_proves(SystemId::Eci, &out, &["p /\\ q"], "(p /\\ q)^c");
        // the conjunction unfolding carries and_c_elim
        let q = glivenko1_internal(SystemId::Nek, &f("p /\\c q", SystemId::Nek)).unwrap();
        let out2 = nek_to_eci(&q).unwrap();
        assert_proves(SystemId::Eci, &out2, &["(p /\\ q)^c"], "~~(p /\\ q)");
        // or and imp, both directions
        let r = star_embed(SystemId::Nek, &f("p \\/c q", SystemId::Nek)).unwrap();
        let out3 = nek_to_eci(&r).unwrap();
        assert_proves(SystemId::Eci, &out3, &["p \\/ q"], "(p \\/ q)^c");
        let s = glivenko1_internal(SystemId::Nek, &f("p \\/c q", SystemId::Nek)).unwrap();
        let out4 = nek_to_eci(&s).unwrap();
        assert_proves(SystemId::Eci, &out4, &["(p \\/ q)^c"], "~~(p \\/ q)");
        let t = star_embed(SystemId::Nek, &f("p ->c q", SystemId::Nek)).unwrap();
        let out5 = nek_to_eci(&t).unwrap();
        assert_proves(SystemId::Eci, &out5, &["p -> q"], "(p -> q)^c");
        let u = glivenko1_internal(SystemId::Nek, &f("p ->c q", SystemId::Nek)).unwrap();
        let out6 = nek_to_eci(&u).unwrap();
        assert_proves(SystemId::Eci, &out6, &["(p -> q)^c"], "~~(p -> q)");
        // classical atoms
        let v = star_embed(SystemId::Nek, &f("p_c", SystemId::Nek)).unwrap();
        let out7 = nek_to_eci(&v).unwrap();
        assert_proves(SystemId::Eci, &out7, &["p"], "p^c");
    }

    #[test]
    fn round_trip_preserves_judgments() {
        let proofs = vec![
            eci_dn_to_label(&f("p /\\ q", SystemId::Eci)).unwrap(),
            eci_label_to_dn(&f("p -> q", SystemId::Eci)).unwrap(),
            eci_dn_to_label(&f("p", SystemId::Eci)).unwrap(),
            eci_glivenko2(&f("p \\/ q", SystemId::Eci)).unwrap(),
        ];
        for p in proofs {
            let j = check(SystemId::Eci, &p).judgment().unwrap().clone();
            let round = nek_to_eci(&eci_to_nek(&p).unwrap()).unwrap();
            let j2 = check(SystemId::Eci, &round).judgment().unwrap().clone();
            assert_eq!(j, j2);
        }
    }

    #[test]
    fn universal_quantifiers_block_the_translations() {
        let p = eci_dn_to_label(&f("forall x. P(x)", SystemId::Eci)).unwrap();
        assert!(matches!(
            eci_to_nek(&p),
            Err(TransformError::Universal(_))
        ));
        let q = star_embed(SystemId::Nek, &f("forallc x. P(x)", SystemId::Nek)).unwrap();
        assert!(matches!(nek_to_eci(&q), Err(TransformError::Universal(_))));
    }
}
