//! Seeded random generators for formulas and checked proofs.
//!
//! Everything here is driven by a caller-supplied ChaCha stream so sweeps
//! are reproducible. The proof generators work forward: they grow a pool of
//! kernel-valid derivations and combine them, relabeling hypotheses freshly
//! at every use so no discharge scopes ever collide.

use crate::kernel::{Proof, RuleId};
use crate::syntax::{BinOp, Flavor, Formula, QuantOp, SystemId, Term};
use crate::transform::{bound_labels, rename_labels};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

/// Propositional leaf pool: nullary atoms by name.
pub fn prop_leaves(names: &[&str]) -> Vec<(String, Vec<Term>)> {
    names.iter().map(|n| (n.to_string(), Vec::new())).collect()
}

fn leaf(rng: &mut ChaCha8Rng, system: SystemId, leaves: &[(String, Vec<Term>)]) -> Formula {
    if rng.gen_bool(0.12) {
        return Formula::Bot;
    }
    let (name, args) = &leaves[rng.gen_range(0..leaves.len())];
    let flavors = system.allowed_atom_flavors();
    let flavor = flavors[rng.gen_range(0..flavors.len())];
    Formula::atom_args(name, flavor, args.clone())
}

/// A uniformly sized random formula in the given dialect's propositional
/// vocabulary (binary connectives, the label where the dialect has it,
/// atoms from `leaves`, bot). `connectives` is consumed exactly.
pub fn random_formula(
    rng: &mut ChaCha8Rng,
    system: SystemId,
    leaves: &[(String, Vec<Term>)],
    connectives: usize,
) -> Formula {
    assert!(!leaves.is_empty(), "leaf pool must be nonempty");
    if connectives == 0 {
        return leaf(rng, system, leaves);
    }
    // collect the dialect's binary vocabulary, plus the label if present
    let mut ops: Vec<Option<(BinOp, Flavor)>> = Vec::new();
    for op in [BinOp::And, BinOp::Or, BinOp::Imp] {
        for fl in system.allowed_bin_flavors(op) {
            ops.push(Some((op, *fl)));
        }
    }
    if system.clabel_allowed() {
        ops.push(None);
        ops.push(None); // labels get double weight so they show up
    }
    match ops[rng.gen_range(0..ops.len())] {
        Some((op, fl)) => {
            let left = rng.gen_range(0..connectives);
            let l = random_formula(rng, system, leaves, left);
            let r = random_formula(rng, system, leaves, connectives - 1 - left);
            Formula::bin(op, fl, l, r)
        }
        None => Formula::CLabel(Box::new(random_formula(
            rng,
            system,
            leaves,
            connectives - 1,
        ))),
    }
}

/// A random labeled-dialect formula in which no label sits on bot or on
/// another label: the fragment on which flavoring and unflavoring are
/// mutually inverse.
pub fn random_label_safe_formula(
    rng: &mut ChaCha8Rng,
    leaves: &[(String, Vec<Term>)],
    connectives: usize,
) -> Formula {
    assert!(!leaves.is_empty());
    if connectives == 0 {
        return leaf(rng, SystemId::Eci, leaves);
    }
    match rng.gen_range(0..4u8) {
        0..=2 => {
            let op = [BinOp::And, BinOp::Or, BinOp::Imp][rng.gen_range(0..3)];
            let left = rng.gen_range(0..connectives);
            let l = random_label_safe_formula(rng, leaves, left);
            let r = random_label_safe_formula(rng, leaves, connectives - 1 - left);
            Formula::bin(op, Flavor::Neutral, l, r)
        }
        _ => {
            let inner = random_label_safe_formula(rng, leaves, connectives - 1);
            match inner {
                Formula::Bot | Formula::CLabel(_) => inner,
                other => Formula::CLabel(Box::new(other)),
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Forward-chaining proof generators
// ---------------------------------------------------------------------------

struct ProofGen<'a> {
    rng: &'a mut ChaCha8Rng,
    system: SystemId,
    leaves: Vec<(String, Vec<Term>)>,
    next_label: u32,
    pool: Vec<Proof>,
}

impl<'a> ProofGen<'a> {
    fn fresh(&mut self) -> u32 {
        let l = self.next_label;
        self.next_label += 1;
        l
    }

    /// Clone a pool member with every hypothesis class relabeled, so two
    /// uses never share an assumption class and discharges stay disjoint.
    fn take(&mut self, i: usize) -> Proof {
        let p = self.pool[i].clone();
        let mut labels: BTreeSet<u32> = p.labels_used().into_iter().collect();
        labels.remove(&0);
        let map = labels
            .into_iter()
            .map(|l| (l, self.fresh()))
            .collect::<std::collections::HashMap<_, _>>();
        rename_labels(&p, &map)
    }

    fn pick(&mut self) -> Proof {
        let i = self.rng.gen_range(0..self.pool.len());
        self.take(i)
    }

    fn small_formula(&mut self) -> Formula {
        let n = self.rng.gen_range(0..=2);
        random_formula(self.rng, self.system, &self.leaves, n)
    }

    fn neg(&self, f: Formula) -> Formula {
        Formula::neg(self.system.neg_flavor(), f)
    }

    /// Open hypothesis classes of a pool candidate: leaf (label, formula)
    /// pairs whose labels are not discharged inside it.
    fn open_leaves(p: &Proof) -> Vec<(u32, Formula)> {
        let mut bound = BTreeSet::new();
        bound_labels(p, &mut bound);
        let mut out = Vec::new();
        fn walk(p: &Proof, bound: &BTreeSet<u32>, out: &mut Vec<(u32, Formula)>) {
            match p {
                Proof::Hyp { label, formula } => {
                    if !bound.contains(label) && !out.iter().any(|(l, _)| l == label) {
                        out.push((*label, formula.clone()));
                    }
                }
                Proof::Infer { premises, .. } => {
                    for q in premises {
                        walk(q, bound, out);
                    }
                }
            }
        }
        walk(p, &bound, &mut out);
        out
    }

    /// One refutation: bot from a pool conclusion and a fresh negated
    /// hypothesis (or a pool member already concluding bot).
    fn refutation(&mut self) -> Proof {
        if let Some(i) = (0..self.pool.len()).find(|i| {
            *self.pool[*i].conclusion() == Formula::Bot && self.rng.gen_bool(0.5)
        }) {
            return self.take(i);
        }
        let p = self.pick();
        if *p.conclusion() == Formula::Bot {
            return p;
        }
        let (ielim, _) = self.imp_rules();
        let n = self.neg(p.conclusion().clone());
        let l = self.fresh();
        Proof::infer(ielim, Formula::Bot, vec![Proof::hyp(l, n), p])
    }

    fn imp_rules(&self) -> (RuleId, RuleId) {
        match self.system {
            SystemId::Eci => (RuleId::imp_elim, RuleId::imp_intro),
            _ => (RuleId::imp_i_elim, RuleId::imp_i_intro),
        }
    }

    fn step(&mut self) {
        let (ielim, iintro) = self.imp_rules();
        let base = self.system.base_flavor();
        let roll = self.rng.gen_range(0..if self.system == SystemId::Eci { 10 } else { 13 });
        let next = match roll {
            0 => {
                let p1 = self.pick();
                let p2 = self.pick();
                let c = Formula::and(
                    base,
                    p1.conclusion().clone(),
                    p2.conclusion().clone(),
                );
                Proof::infer(RuleId::and_intro, c, vec![p1, p2])
            }
            1 => {
                // eliminate a conjunction if the pool has one
                match (0..self.pool.len())
                    .find(|i| matches!(self.pool[*i].conclusion(), Formula::Bin { op: BinOp::And, flavor, .. } if *flavor == base))
                {
                    Some(i) => {
                        let p = self.take(i);
                        let Formula::Bin { lhs, rhs, .. } = p.conclusion().clone() else {
                            unreachable!()
                        };
                        if self.rng.gen_bool(0.5) {
                            Proof::infer(RuleId::and_elim_1, *lhs, vec![p])
                        } else {
                            Proof::infer(RuleId::and_elim_2, *rhs, vec![p])
                        }
                    }
                    None => return,
                }
            }
            2 => {
                // implication introduction, discharging an open leaf when
                // there is one, vacuously otherwise
                let p = self.pick();
                let opens = Self::open_leaves(&p);
                if opens.is_empty() || self.rng.gen_bool(0.2) {
                    let a = self.small_formula();
                    let c = Formula::imp(self.imp_flavor(), a, p.conclusion().clone());
                    Proof::infer_d(iintro, c, vec![0], vec![p])
                } else {
                    let (l, a) = opens[self.rng.gen_range(0..opens.len())].clone();
                    let c = Formula::imp(self.imp_flavor(), a, p.conclusion().clone());
                    Proof::infer_d(iintro, c, vec![l], vec![p])
                }
            }
            3 => {
                // modus ponens against a fresh hypothesis of matching shape
                let p = self.pick();
                let b = self.small_formula();
                let imp = Formula::imp(self.imp_flavor(), p.conclusion().clone(), b.clone());
                let l = self.fresh();
                Proof::infer(ielim, b, vec![Proof::hyp(l, imp), p])
            }
            4 => {
                let p = self.pick();
                let b = self.small_formula();
                let (rule, c) = if self.rng.gen_bool(0.5) {
                    (
                        self.or_intro(true),
                        Formula::or(self.imp_flavor(), p.conclusion().clone(), b),
                    )
                } else {
                    (
                        self.or_intro(false),
                        Formula::or(self.imp_flavor(), b, p.conclusion().clone()),
                    )
                };
                Proof::infer(rule, c, vec![p])
            }
            5 => {
                // case split on a disjunction, rebuilding it in each arm
                let fl = self.imp_flavor();
                match (0..self.pool.len())
                    .find(|i| matches!(self.pool[*i].conclusion(), Formula::Bin { op: BinOp::Or, flavor, .. } if *flavor == fl))
                {
                    Some(i) => {
                        let p = self.take(i);
                        let c = p.conclusion().clone();
                        let Formula::Bin { lhs, rhs, .. } = &c else {
                            unreachable!()
                        };
                        let (l1, l2) = (self.fresh(), self.fresh());
                        let m1 = Proof::infer(
                            self.or_intro(true),
                            c.clone(),
                            vec![Proof::hyp(l1, (**lhs).clone())],
                        );
                        let m2 = Proof::infer(
                            self.or_intro(false),
                            c.clone(),
                            vec![Proof::hyp(l2, (**rhs).clone())],
                        );
                        Proof::infer_d(self.or_elim(), c, vec![l1, l2], vec![p, m1, m2])
                    }
                    None => return,
                }
            }
            6 => {
                // anything from bot
                let p = self.refutation();
                let c = self.small_formula();
                Proof::infer(RuleId::bot_elim, c, vec![p])
            }
            7 => {
                // existential introduction with a vacuous bound variable
                let p = self.pick();
                let c = Formula::quant(
                    QuantOp::Exists,
                    self.imp_flavor(),
                    "x",
                    p.conclusion().clone(),
                );
                Proof::infer_wit(self.ex_intro(), c, Term::cnst("c"), vec![p])
            }
            8 => {
                // eliminate a vacuous existential back out
                let fl = self.imp_flavor();
                match (0..self.pool.len()).find(|i| {
                    matches!(self.pool[*i].conclusion(),
                        Formula::Quant { op: QuantOp::Exists, flavor, var, body }
                        if *flavor == fl && !crate::syntax::free_objects(body).0.contains(var))
                }) {
                    Some(i) => {
                        let p = self.take(i);
                        let Formula::Quant { body, .. } = p.conclusion().clone() else {
                            unreachable!()
                        };
                        let l = self.fresh();
                        Proof::infer_eigen(
                            self.ex_elim(),
                            (*body).clone(),
                            vec![l],
                            "w",
                            vec![p, Proof::hyp(l, (*body).clone())],
                        )
                    }
                    None => return,
                }
            }
            9 => {
                // classicalize: labeled dialect gets i_c/e_c, flavored one
                // gets the classical atom pair
                if self.system == SystemId::Eci {
                    if self.rng.gen_bool(0.5) {
                        let p = self.pick();
                        let x = p.conclusion().clone();
                        let l = self.fresh();
                        let refute = Proof::infer(
                            RuleId::imp_elim,
                            Formula::Bot,
                            vec![Proof::hyp(l, self.neg(x.clone())), p],
                        );
                        Proof::infer_d(
                            RuleId::i_c,
                            Formula::CLabel(Box::new(x)),
                            vec![l],
                            vec![refute],
                        )
                    } else {
                        let p = self.pick();
                        let x = p.conclusion().clone();
                        let major = match &x {
                            Formula::CLabel(_) => p,
                            _ => {
                                let l = self.fresh();
                                let refute = Proof::infer(
                                    RuleId::imp_elim,
                                    Formula::Bot,
                                    vec![Proof::hyp(l, self.neg(x.clone())), p],
                                );
                                Proof::infer_d(
                                    RuleId::i_c,
                                    Formula::CLabel(Box::new(x.clone())),
                                    vec![l],
                                    vec![refute],
                                )
                            }
                        };
                        let Formula::CLabel(inner) = major.conclusion().clone() else {
                            unreachable!()
                        };
                        let l2 = self.fresh();
                        Proof::infer(
                            RuleId::e_c,
                            Formula::Bot,
                            vec![major, Proof::hyp(l2, self.neg((*inner).clone()))],
                        )
                    }
                } else {
                    let (name, args) = self.leaves[self.rng.gen_range(0..self.leaves.len())].clone();
                    let pi = Formula::atom_args(&name, Flavor::Int, args.clone());
                    let pc = Formula::atom_args(&name, Flavor::Cls, args);
                    let (l1, l2) = (self.fresh(), self.fresh());
                    let refute = Proof::infer(
                        RuleId::imp_i_elim,
                        Formula::Bot,
                        vec![Proof::hyp(l1, self.neg(pi.clone())), Proof::hyp(l2, pi)],
                    );
                    Proof::infer_d(RuleId::atom_c_intro, pc, vec![l1], vec![refute])
                }
            }
            10 => {
                // classical conjunction from two refutations
                let (a, b) = (self.small_formula(), self.small_formula());
                let (f1, f2) = (self.fresh(), self.fresh());
                let (g1, g2) = (self.fresh(), self.fresh());
                let r1 = Proof::infer(
                    RuleId::imp_i_elim,
                    Formula::Bot,
                    vec![Proof::hyp(f1, self.neg(a.clone())), Proof::hyp(g1, a.clone())],
                );
                let r2 = Proof::infer(
                    RuleId::imp_i_elim,
                    Formula::Bot,
                    vec![Proof::hyp(f2, self.neg(b.clone())), Proof::hyp(g2, b.clone())],
                );
                Proof::infer_d(
                    RuleId::and_c_intro,
                    Formula::and(Flavor::Cls, a, b),
                    vec![f1, f2],
                    vec![r1, r2],
                )
            }
            11 => {
                // classical implication out of a two-hypothesis refutation
                let (a, b) = (self.small_formula(), self.small_formula());
                let (f1, f2, g) = (self.fresh(), self.fresh(), self.fresh());
                let refute = Proof::infer(
                    RuleId::imp_i_elim,
                    Formula::Bot,
                    vec![
                        Proof::hyp(f2, self.neg(b.clone())),
                        Proof::infer(
                            RuleId::bot_elim,
                            b.clone(),
                            vec![Proof::infer(
                                RuleId::imp_i_elim,
                                Formula::Bot,
                                vec![Proof::hyp(g, self.neg(a.clone())), Proof::hyp(f1, a.clone())],
                            )],
                        ),
                    ],
                );
                Proof::infer_d(
                    RuleId::imp_c_intro,
                    Formula::imp(Flavor::Cls, a, b),
                    vec![f1, f2],
                    vec![refute],
                )
            }
            _ => {
                // eliminate a classical conjunction or implication
                match (0..self.pool.len()).find(|i| {
                    matches!(self.pool[*i].conclusion(),
                        Formula::Bin { flavor: Flavor::Cls, op, .. } if *op != BinOp::Or)
                }) {
                    Some(i) => {
                        let p = self.take(i);
                        let Formula::Bin { op, lhs, rhs, .. } = p.conclusion().clone() else {
                            unreachable!()
                        };
                        match op {
                            BinOp::And => {
                                let l = self.fresh();
                                let (rule, side) = if self.rng.gen_bool(0.5) {
                                    (RuleId::and_c_elim_1, *lhs)
                                } else {
                                    (RuleId::and_c_elim_2, *rhs)
                                };
                                Proof::infer(
                                    rule,
                                    Formula::Bot,
                                    vec![p, Proof::hyp(l, self.neg(side))],
                                )
                            }
                            _ => {
                                let (l1, l2) = (self.fresh(), self.fresh());
                                Proof::infer(
                                    RuleId::imp_c_elim,
                                    Formula::Bot,
                                    vec![
                                        p,
                                        Proof::hyp(l1, (*lhs).clone()),
                                        Proof::hyp(l2, self.neg((*rhs).clone())),
                                    ],
                                )
                            }
                        }
                    }
                    None => return,
                }
            }
        };
        self.pool.push(next);
    }

    fn imp_flavor(&self) -> Flavor {
        match self.system {
            SystemId::Eci => Flavor::Neutral,
            _ => Flavor::Int,
        }
    }

    fn or_intro(&self, first: bool) -> RuleId {
        match (self.system, first) {
            (SystemId::Eci, true) => RuleId::or_intro_1,
            (SystemId::Eci, false) => RuleId::or_intro_2,
            (_, true) => RuleId::or_i_intro_1,
            (_, false) => RuleId::or_i_intro_2,
        }
    }

    fn or_elim(&self) -> RuleId {
        match self.system {
            SystemId::Eci => RuleId::or_elim,
            _ => RuleId::or_i_elim,
        }
    }

    fn ex_intro(&self) -> RuleId {
        match self.system {
            SystemId::Eci => RuleId::ex_intro,
            _ => RuleId::ex_i_intro,
        }
    }

    fn ex_elim(&self) -> RuleId {
        match self.system {
            SystemId::Eci => RuleId::ex_elim,
            _ => RuleId::ex_i_elim,
        }
    }
}

fn run_gen(rng: &mut ChaCha8Rng, system: SystemId, steps: usize) -> Proof {
    let leaves = prop_leaves(&["p", "q", "r"]);
    let mut g = ProofGen {
        rng,
        system,
        leaves,
        next_label: 1,
        pool: Vec::new(),
    };
    for _ in 0..3 {
        let f = g.small_formula();
        let l = g.fresh();
        g.pool.push(Proof::hyp(l, f));
    }
    for _ in 0..steps {
        g.step();
    }
    let i = g.rng.gen_range(0..g.pool.len());
    g.pool.swap_remove(i)
}

/// A random universal-free proof in the labeled dialect. Always checks.
pub fn random_eci_proof(rng: &mut ChaCha8Rng, steps: usize) -> Proof {
    run_gen(rng, SystemId::Eci, steps)
}

/// A random universal-free proof in the fully flavored dialect. Always
/// checks.
pub fn random_nek_proof(rng: &mut ChaCha8Rng, steps: usize) -> Proof {
    run_gen(rng, SystemId::Nek, steps)
}

/// A detour on the classical universal: an introduction with a vacuous
/// discharge immediately eliminated with a ground witness. Reducing it
/// strictly shrinks the tree.
pub fn random_forallc_detour(rng: &mut ChaCha8Rng, steps: usize) -> Proof {
    let body_leaves = vec![
        ("P".to_string(), vec![Term::var("x")]),
        ("q".to_string(), Vec::new()),
    ];
    let n = rng.gen_range(0..=2);
    let body = random_formula(rng, SystemId::Nek, &body_leaves, n);
    // a propositional refutation, independent of the quantified statement
    let refutation = {
        let p = random_nek_proof(rng, steps);
        if *p.conclusion() == Formula::Bot {
            p
        } else {
            let max = p.labels_used().into_iter().max().unwrap_or(0);
            let neg = Formula::neg(Flavor::Int, p.conclusion().clone());
            Proof::infer(
                RuleId::imp_i_elim,
                Formula::Bot,
                vec![Proof::hyp(max + 1, neg), p],
            )
        }
    };
    let max = refutation.labels_used().into_iter().max().unwrap_or(0);
    let all_c = Formula::quant(QuantOp::Forall, Flavor::Cls, "x", body.clone());
    let intro = Proof::infer_d(RuleId::all_c_intro, all_c, vec![max + 1], vec![refutation]);
    let witness = if rng.gen_bool(0.5) {
        Term::cnst("c")
    } else {
        Term::param("d")
    };
    let inst = crate::syntax::substitute(&body, "x", &witness);
    Proof::infer_wit(
        RuleId::all_c_elim,
        Formula::neg(Flavor::Int, Formula::neg(Flavor::Int, inst)),
        witness,
        vec![intro],
    )
}
