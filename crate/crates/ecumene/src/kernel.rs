//! The trusted proof checker.
//!
//! A [`Proof`] is a tree of inferences over [`Formula`]s. [`check`] walks it
//! once in depth-first order and verifies, at every node, that the rule is
//! part of the system's table, that the conclusion is well-formed in the
//! dialect, that the premises' stated conclusions instantiate the rule
//! schema, that discharge bookkeeping is consistent, and that eigenvariable
//! side conditions hold. The first violated condition, in traversal order,
//! is the reported failure.
//!
//! Discharge bookkeeping: each inference carries one label per discharge
//! slot of its rule (0 marks a vacuous slot). A nonzero label may be used by
//! at most one slot in the whole tree, every hypothesis leaf carrying it
//! must sit above the slot's premise, and its formula must be the slot's
//! schema instance. Vacuous and multiple discharge are both permitted.

use crate::syntax::{
    alpha_eq, canon, params_of, substitute, well_formed, BinOp, Flavor, Formula, QuantOp,
    SystemId, Term,
};
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::OnceLock;

/// Proof trees. `Hyp` leaves are labeled assumptions; `Infer` nodes apply a
/// rule and state their conclusion explicitly, so checking never needs
/// inference.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Proof {
    Hyp {
        label: u32,
        formula: Formula,
    },
    Infer {
        rule: RuleId,
        conclusion: Formula,
        discharges: Vec<u32>,
        eigen: Option<String>,
        witness: Option<Term>,
        premises: Vec<Proof>,
    },
}

impl Proof {
    pub fn hyp(label: u32, formula: Formula) -> Proof {
        Proof::Hyp { label, formula }
    }

    pub fn infer(rule: RuleId, conclusion: Formula, premises: Vec<Proof>) -> Proof {
        Proof::Infer {
            rule,
            conclusion,
            discharges: Vec::new(),
            eigen: None,
            witness: None,
            premises,
        }
    }

    pub fn infer_d(
        rule: RuleId,
        conclusion: Formula,
        discharges: Vec<u32>,
        premises: Vec<Proof>,
    ) -> Proof {
        Proof::Infer {
            rule,
            conclusion,
            discharges,
            eigen: None,
            witness: None,
            premises,
        }
    }

    pub fn infer_eigen(
        rule: RuleId,
        conclusion: Formula,
        discharges: Vec<u32>,
        eigen: &str,
        premises: Vec<Proof>,
    ) -> Proof {
        Proof::Infer {
            rule,
            conclusion,
            discharges,
            eigen: Some(eigen.to_string()),
            witness: None,
            premises,
        }
    }

    pub fn infer_wit(
        rule: RuleId,
        conclusion: Formula,
        witness: Term,
        premises: Vec<Proof>,
    ) -> Proof {
        Proof::Infer {
            rule,
            conclusion,
            discharges: Vec::new(),
            eigen: None,
            witness: Some(witness),
            premises,
        }
    }

    /// The formula this subtree claims to prove.
    pub fn conclusion(&self) -> &Formula {
        match self {
            Proof::Hyp { formula, .. } => formula,
            Proof::Infer { conclusion, .. } => conclusion,
        }
    }

    pub fn premises(&self) -> &[Proof] {
        match self {
            Proof::Hyp { .. } => &[],
            Proof::Infer { premises, .. } => premises,
        }
    }

    pub fn node_count(&self) -> usize {
        1 + self.premises().iter().map(Proof::node_count).sum::<usize>()
    }

    /// Every discharge label used (nonzero) anywhere in the tree.
    pub fn labels_used(&self) -> HashSet<u32> {
        let mut out = HashSet::new();
        self.collect_labels(&mut out);
        out
    }

    fn collect_labels(&self, out: &mut HashSet<u32>) {
        match self {
            Proof::Hyp { label, .. } => {
                if *label != 0 {
                    out.insert(*label);
                }
            }
            Proof::Infer {
                discharges,
                premises,
                ..
            } => {
                for l in discharges {
                    if *l != 0 {
                        out.insert(*l);
                    }
                }
                for p in premises {
                    p.collect_labels(out);
                }
            }
        }
    }
}

/// Rule identifiers across all five systems. `rule_table` decides which
/// subset a given system admits, and with which connective flavors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[allow(non_camel_case_types)]
pub enum RuleId {
    // Neutral core (NE, NE_K with intuitionistic flavor, NJ, NK, ECI).
    and_intro,
    and_elim_1,
    and_elim_2,
    bot_elim,
    all_intro,
    all_elim,
    // Intuitionistic flavor (NE, NE_K).
    imp_i_intro,
    imp_i_elim,
    or_i_intro_1,
    or_i_intro_2,
    or_i_elim,
    ex_i_intro,
    ex_i_elim,
    // Classical flavor (NE, NE_K).
    imp_c_intro,
    imp_c_elim,
    or_c_intro,
    or_c_elim,
    ex_c_intro,
    ex_c_elim,
    atom_c_intro,
    atom_c_elim,
    // NE_K only.
    and_c_intro,
    and_c_elim_1,
    and_c_elim_2,
    all_c_intro,
    all_c_elim,
    // ECI only.
    i_c,
    e_c,
    // Single-flavor systems (ECI, NJ, NK).
    imp_intro,
    imp_elim,
    or_intro_1,
    or_intro_2,
    or_elim,
    ex_intro,
    ex_elim,
    // NK only.
    raa,
}

impl RuleId {
    pub fn name(self) -> &'static str {
        use RuleId::*;
        match self {
            and_intro => "and_intro",
            and_elim_1 => "and_elim_1",
            and_elim_2 => "and_elim_2",
            bot_elim => "bot_elim",
            all_intro => "all_intro",
            all_elim => "all_elim",
            imp_i_intro => "imp_i_intro",
            imp_i_elim => "imp_i_elim",
            or_i_intro_1 => "or_i_intro_1",
            or_i_intro_2 => "or_i_intro_2",
            or_i_elim => "or_i_elim",
            ex_i_intro => "ex_i_intro",
            ex_i_elim => "ex_i_elim",
            imp_c_intro => "imp_c_intro",
            imp_c_elim => "imp_c_elim",
            or_c_intro => "or_c_intro",
            or_c_elim => "or_c_elim",
            ex_c_intro => "ex_c_intro",
            ex_c_elim => "ex_c_elim",
            atom_c_intro => "atom_c_intro",
            atom_c_elim => "atom_c_elim",
            and_c_intro => "and_c_intro",
            and_c_elim_1 => "and_c_elim_1",
            and_c_elim_2 => "and_c_elim_2",
            all_c_intro => "all_c_intro",
            all_c_elim => "all_c_elim",
            i_c => "i_c",
            e_c => "e_c",
            imp_intro => "imp_intro",
            imp_elim => "imp_elim",
            or_intro_1 => "or_intro_1",
            or_intro_2 => "or_intro_2",
            or_elim => "or_elim",
            ex_intro => "ex_intro",
            ex_elim => "ex_elim",
            raa => "raa",
        }
    }

    pub fn from_name(s: &str) -> Option<RuleId> {
        use RuleId::*;
        Some(match s {
            "and_intro" => and_intro,
            "and_elim_1" => and_elim_1,
            "and_elim_2" => and_elim_2,
            "bot_elim" => bot_elim,
            "all_intro" => all_intro,
            "all_elim" => all_elim,
            "imp_i_intro" => imp_i_intro,
            "imp_i_elim" => imp_i_elim,
            "or_i_intro_1" => or_i_intro_1,
            "or_i_intro_2" => or_i_intro_2,
            "or_i_elim" => or_i_elim,
            "ex_i_intro" => ex_i_intro,
            "ex_i_elim" => ex_i_elim,
            "imp_c_intro" => imp_c_intro,
            "imp_c_elim" => imp_c_elim,
            "or_c_intro" => or_c_intro,
            "or_c_elim" => or_c_elim,
            "ex_c_intro" => ex_c_intro,
            "ex_c_elim" => ex_c_elim,
            "atom_c_intro" => atom_c_intro,
            "atom_c_elim" => atom_c_elim,
            "and_c_intro" => and_c_intro,
            "and_c_elim_1" => and_c_elim_1,
            "and_c_elim_2" => and_c_elim_2,
            "all_c_intro" => all_c_intro,
            "all_c_elim" => all_c_elim,
            "i_c" => i_c,
            "e_c" => e_c,
            "imp_intro" => imp_intro,
            "imp_elim" => imp_elim,
            "or_intro_1" => or_intro_1,
            "or_intro_2" => or_intro_2,
            "or_elim" => or_elim,
            "ex_intro" => ex_intro,
            "ex_elim" => ex_elim,
            "raa" => raa,
            _ => return None,
        })
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Formula patterns over metavariables, the language rule schemas are
/// written in. `Meta` stands for a whole formula, `AtomMeta` for an atom's
/// predicate and arguments (with the flavor fixed by the pattern), and a
/// quantifier pattern binds an abstraction metavariable: the pair of bound
/// variable and body. `Inst` is the instance of a bound abstraction at the
/// node's witness term or eigenvariable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Pat {
    Meta(u8),
    Bot,
    Bin(BinOp, Flavor, Box<Pat>, Box<Pat>),
    Quant(QuantOp, Flavor, QBody),
    Inst(u8, InstKind),
    AtomMeta(u8, Flavor),
    CLabelPat(Box<Pat>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QBody {
    /// Body is the abstraction itself.
    Abs(u8),
    /// Body is the negation (in the given flavor) of the abstraction.
    NegAbs(u8, Flavor),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InstKind {
    Witness,
    Eigen,
}

/// Side condition attached to a schema.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    None,
    Eigen,
    Witness,
}

/// A discharge slot: hypotheses of the given pattern may be closed above
/// the given premise.
#[derive(Debug, Clone)]
pub struct Slot {
    pub premise: usize,
    pub pat: Pat,
}

#[derive(Debug, Clone)]
pub struct RuleSchema {
    pub id: RuleId,
    pub premises: Vec<Pat>,
    pub slots: Vec<Slot>,
    pub conclusion: Pat,
    pub side: Side,
    /// Match the conclusion before the premises (introduction rules whose
    /// premise or slot patterns mention abstractions only the conclusion
    /// can bind).
    conclusion_first: bool,
}

fn m(k: u8) -> Pat {
    Pat::Meta(k)
}

fn bin(op: BinOp, fl: Flavor, a: Pat, b: Pat) -> Pat {
    Pat::Bin(op, fl, Box::new(a), Box::new(b))
}

fn negp(fl: Flavor, p: Pat) -> Pat {
    bin(BinOp::Imp, fl, p, Pat::Bot)
}

fn quant(op: QuantOp, fl: Flavor, body: QBody) -> Pat {
    Pat::Quant(op, fl, body)
}

struct Schema6 {
    and_fl: Flavor,
    all_fl: Flavor,
}

fn neutral_six(f: Schema6) -> Vec<RuleSchema> {
    use RuleId::*;
    vec![
        RuleSchema {
            id: and_intro,
            premises: vec![m(0), m(1)],
            slots: vec![],
            conclusion: bin(BinOp::And, f.and_fl, m(0), m(1)),
            side: Side::None,
            conclusion_first: true,
        },
        RuleSchema {
            id: and_elim_1,
            premises: vec![bin(BinOp::And, f.and_fl, m(0), m(1))],
            slots: vec![],
            conclusion: m(0),
            side: Side::None,
            conclusion_first: false,
        },
        RuleSchema {
            id: and_elim_2,
            premises: vec![bin(BinOp::And, f.and_fl, m(0), m(1))],
            slots: vec![],
            conclusion: m(1),
            side: Side::None,
            conclusion_first: false,
        },
        RuleSchema {
            id: bot_elim,
            premises: vec![Pat::Bot],
            slots: vec![],
            conclusion: m(0),
            side: Side::None,
            conclusion_first: false,
        },
        RuleSchema {
            id: all_intro,
            premises: vec![Pat::Inst(0, InstKind::Eigen)],
            slots: vec![],
            conclusion: quant(QuantOp::Forall, f.all_fl, QBody::Abs(0)),
            side: Side::Eigen,
            conclusion_first: true,
        },
        RuleSchema {
            id: all_elim,
            premises: vec![quant(QuantOp::Forall, f.all_fl, QBody::Abs(0))],
            slots: vec![],
            conclusion: Pat::Inst(0, InstKind::Witness),
            side: Side::Witness,
            conclusion_first: false,
        },
    ]
}

struct Schema7 {
    ids: [RuleId; 7],
    imp_fl: Flavor,
    or_fl: Flavor,
    ex_fl: Flavor,
}

fn flavored_seven(f: Schema7) -> Vec<RuleSchema> {
    let [id_imp_intro, id_imp_elim, id_or_intro_1, id_or_intro_2, id_or_elim, id_ex_intro, id_ex_elim] =
        f.ids;
    vec![
        RuleSchema {
            id: id_imp_intro,
            premises: vec![m(1)],
            slots: vec![Slot {
                premise: 0,
                pat: m(0),
            }],
            conclusion: bin(BinOp::Imp, f.imp_fl, m(0), m(1)),
            side: Side::None,
            conclusion_first: true,
        },
        RuleSchema {
            id: id_imp_elim,
            premises: vec![bin(BinOp::Imp, f.imp_fl, m(0), m(1)), m(0)],
            slots: vec![],
            conclusion: m(1),
            side: Side::None,
            conclusion_first: false,
        },
        RuleSchema {
            id: id_or_intro_1,
            premises: vec![m(0)],
            slots: vec![],
            conclusion: bin(BinOp::Or, f.or_fl, m(0), m(1)),
            side: Side::None,
            conclusion_first: true,
        },
        RuleSchema {
            id: id_or_intro_2,
            premises: vec![m(1)],
            slots: vec![],
            conclusion: bin(BinOp::Or, f.or_fl, m(0), m(1)),
            side: Side::None,
            conclusion_first: true,
        },
        RuleSchema {
            id: id_or_elim,
            premises: vec![bin(BinOp::Or, f.or_fl, m(0), m(1)), m(2), m(2)],
            slots: vec![
                Slot {
                    premise: 1,
                    pat: m(0),
                },
                Slot {
                    premise: 2,
                    pat: m(1),
                },
            ],
            conclusion: m(2),
            side: Side::None,
            conclusion_first: false,
        },
        RuleSchema {
            id: id_ex_intro,
            premises: vec![Pat::Inst(0, InstKind::Witness)],
            slots: vec![],
            conclusion: quant(QuantOp::Exists, f.ex_fl, QBody::Abs(0)),
            side: Side::Witness,
            conclusion_first: true,
        },
        RuleSchema {
            id: id_ex_elim,
            premises: vec![quant(QuantOp::Exists, f.ex_fl, QBody::Abs(0)), m(1)],
            slots: vec![Slot {
                premise: 1,
                pat: Pat::Inst(0, InstKind::Eigen),
            }],
            conclusion: m(1),
            side: Side::Eigen,
            conclusion_first: false,
        },
    ]
}

/// The eight classical rules shared by NE and NE_K. `all_fl` is the flavor
/// of the universal quantifier appearing inside the classical existential
/// rules (neutral in NE, intuitionistic in NE_K); negation is
/// intuitionistic in both.
fn classical_eight(all_fl: Flavor) -> Vec<RuleSchema> {
    use RuleId::*;
    let nf = Flavor::Int;
    vec![
        RuleSchema {
            id: imp_c_intro,
            premises: vec![Pat::Bot],
            slots: vec![
                Slot {
                    premise: 0,
                    pat: m(0),
                },
                Slot {
                    premise: 0,
                    pat: negp(nf, m(1)),
                },
            ],
            conclusion: bin(BinOp::Imp, Flavor::Cls, m(0), m(1)),
            side: Side::None,
            conclusion_first: true,
        },
        RuleSchema {
            id: imp_c_elim,
            premises: vec![
                bin(BinOp::Imp, Flavor::Cls, m(0), m(1)),
                m(0),
                negp(nf, m(1)),
            ],
            slots: vec![],
            conclusion: Pat::Bot,
            side: Side::None,
            conclusion_first: false,
        },
        RuleSchema {
            id: or_c_intro,
            premises: vec![Pat::Bot],
            slots: vec![
                Slot {
                    premise: 0,
                    pat: negp(nf, m(0)),
                },
                Slot {
                    premise: 0,
                    pat: negp(nf, m(1)),
                },
            ],
            conclusion: bin(BinOp::Or, Flavor::Cls, m(0), m(1)),
            side: Side::None,
            conclusion_first: true,
        },
        RuleSchema {
            id: or_c_elim,
            premises: vec![
                bin(BinOp::Or, Flavor::Cls, m(0), m(1)),
                negp(nf, m(0)),
                negp(nf, m(1)),
            ],
            slots: vec![],
            conclusion: Pat::Bot,
            side: Side::None,
            conclusion_first: false,
        },
        RuleSchema {
            id: ex_c_intro,
            premises: vec![Pat::Bot],
            slots: vec![Slot {
                premise: 0,
                pat: quant(QuantOp::Forall, all_fl, QBody::NegAbs(0, nf)),
            }],
            conclusion: quant(QuantOp::Exists, Flavor::Cls, QBody::Abs(0)),
            side: Side::None,
            conclusion_first: true,
        },
        RuleSchema {
            id: ex_c_elim,
            premises: vec![
                quant(QuantOp::Exists, Flavor::Cls, QBody::Abs(0)),
                quant(QuantOp::Forall, all_fl, QBody::NegAbs(0, nf)),
            ],
            slots: vec![],
            conclusion: Pat::Bot,
            side: Side::None,
            conclusion_first: false,
        },
        RuleSchema {
            id: atom_c_intro,
            premises: vec![Pat::Bot],
            slots: vec![Slot {
                premise: 0,
                pat: negp(nf, Pat::AtomMeta(0, Flavor::Int)),
            }],
            conclusion: Pat::AtomMeta(0, Flavor::Cls),
            side: Side::None,
            conclusion_first: true,
        },
        RuleSchema {
            id: atom_c_elim,
            premises: vec![
                Pat::AtomMeta(0, Flavor::Cls),
                negp(nf, Pat::AtomMeta(0, Flavor::Int)),
            ],
            slots: vec![],
            conclusion: Pat::Bot,
            side: Side::None,
            conclusion_first: false,
        },
    ]
}

fn nek_extra_five() -> Vec<RuleSchema> {
    use RuleId::*;
    let nf = Flavor::Int;
    vec![
        RuleSchema {
            id: and_c_intro,
            premises: vec![Pat::Bot, Pat::Bot],
            slots: vec![
                Slot {
                    premise: 0,
                    pat: negp(nf, m(0)),
                },
                Slot {
                    premise: 1,
                    pat: negp(nf, m(1)),
                },
            ],
            conclusion: bin(BinOp::And, Flavor::Cls, m(0), m(1)),
            side: Side::None,
            conclusion_first: true,
        },
        RuleSchema {
            id: and_c_elim_1,
            premises: vec![bin(BinOp::And, Flavor::Cls, m(0), m(1)), negp(nf, m(0))],
            slots: vec![],
            conclusion: Pat::Bot,
            side: Side::None,
            conclusion_first: false,
        },
        RuleSchema {
            id: and_c_elim_2,
            premises: vec![bin(BinOp::And, Flavor::Cls, m(0), m(1)), negp(nf, m(1))],
            slots: vec![],
            conclusion: Pat::Bot,
            side: Side::None,
            conclusion_first: false,
        },
        RuleSchema {
            id: all_c_intro,
            premises: vec![Pat::Bot],
            slots: vec![Slot {
                premise: 0,
                pat: quant(QuantOp::Exists, Flavor::Int, QBody::NegAbs(0, nf)),
            }],
            conclusion: quant(QuantOp::Forall, Flavor::Cls, QBody::Abs(0)),
            side: Side::None,
            conclusion_first: true,
        },
        RuleSchema {
            id: all_c_elim,
            premises: vec![quant(QuantOp::Forall, Flavor::Cls, QBody::Abs(0))],
            slots: vec![],
            conclusion: negp(nf, negp(nf, Pat::Inst(0, InstKind::Witness))),
            side: Side::Witness,
            conclusion_first: false,
        },
    ]
}

fn eci_extra_two() -> Vec<RuleSchema> {
    use RuleId::*;
    let nf = Flavor::Neutral;
    vec![
        RuleSchema {
            id: i_c,
            premises: vec![Pat::Bot],
            slots: vec![Slot {
                premise: 0,
                pat: negp(nf, m(0)),
            }],
            conclusion: Pat::CLabelPat(Box::new(m(0))),
            side: Side::None,
            conclusion_first: true,
        },
        RuleSchema {
            id: e_c,
            premises: vec![Pat::CLabelPat(Box::new(m(0))), negp(nf, m(0))],
            slots: vec![],
            conclusion: Pat::Bot,
            side: Side::None,
            conclusion_first: false,
        },
    ]
}

fn raa_schema() -> RuleSchema {
    RuleSchema {
        id: RuleId::raa,
        premises: vec![Pat::Bot],
        slots: vec![Slot {
            premise: 0,
            pat: negp(Flavor::Neutral, m(0)),
        }],
        conclusion: m(0),
        side: Side::None,
        conclusion_first: true,
    }
}

fn build_table(system: SystemId) -> Vec<RuleSchema> {
    use RuleId::*;
    let single_flavor_seven = || {
        flavored_seven(Schema7 {
            ids: [
                imp_intro, imp_elim, or_intro_1, or_intro_2, or_elim, ex_intro, ex_elim,
            ],
            imp_fl: Flavor::Neutral,
            or_fl: Flavor::Neutral,
            ex_fl: Flavor::Neutral,
        })
    };
    match system {
        SystemId::Ne => {
            let mut t = neutral_six(Schema6 {
                and_fl: Flavor::Neutral,
                all_fl: Flavor::Neutral,
            });
            t.extend(flavored_seven(Schema7 {
                ids: [
                    imp_i_intro,
                    imp_i_elim,
                    or_i_intro_1,
                    or_i_intro_2,
                    or_i_elim,
                    ex_i_intro,
                    ex_i_elim,
                ],
                imp_fl: Flavor::Int,
                or_fl: Flavor::Int,
                ex_fl: Flavor::Int,
            }));
            t.extend(classical_eight(Flavor::Neutral));
            t
        }
        SystemId::Nek => {
            let mut t = neutral_six(Schema6 {
                and_fl: Flavor::Int,
                all_fl: Flavor::Int,
            });
            t.extend(flavored_seven(Schema7 {
                ids: [
                    imp_i_intro,
                    imp_i_elim,
                    or_i_intro_1,
                    or_i_intro_2,
                    or_i_elim,
                    ex_i_intro,
                    ex_i_elim,
                ],
                imp_fl: Flavor::Int,
                or_fl: Flavor::Int,
                ex_fl: Flavor::Int,
            }));
            t.extend(classical_eight(Flavor::Int));
            t.extend(nek_extra_five());
            t
        }
        SystemId::Eci => {
            let mut t = neutral_six(Schema6 {
                and_fl: Flavor::Neutral,
                all_fl: Flavor::Neutral,
            });
            t.extend(single_flavor_seven());
            t.extend(eci_extra_two());
            t
        }
        SystemId::Nj => {
            let mut t = neutral_six(Schema6 {
                and_fl: Flavor::Neutral,
                all_fl: Flavor::Neutral,
            });
            t.extend(single_flavor_seven());
            t
        }
        SystemId::Nk => {
            let mut t = build_table(SystemId::Nj);
            t.push(raa_schema());
            t
        }
    }
}

/// The normative rule table of a system.
pub fn rule_table(system: SystemId) -> &'static [RuleSchema] {
    static TABLES: OnceLock<HashMap<SystemId, Vec<RuleSchema>>> = OnceLock::new();
    let tables = TABLES.get_or_init(|| {
        SystemId::ALL
            .iter()
            .map(|s| (*s, build_table(*s)))
            .collect()
    });
    &tables[&system]
}

fn schema_of(system: SystemId, id: RuleId) -> Option<&'static RuleSchema> {
    rule_table(system).iter().find(|s| s.id == id)
}

/// A proved sequent: open assumptions (collapsed up to alpha-equivalence,
/// deterministically ordered) and conclusion.
#[derive(Debug, Clone, Eq)]
pub struct Judgment {
    pub context: Vec<Formula>,
    pub conclusion: Formula,
}

impl Judgment {
    /// Builds a judgment, deduplicating the context by alpha-equivalence
    /// class and ordering it canonically.
    pub fn new(context: Vec<Formula>, conclusion: Formula) -> Judgment {
        let mut seen: Vec<(String, Formula)> = Vec::new();
        for f in context {
            let key = canon(&f).to_string();
            if !seen.iter().any(|(k, _)| *k == key) {
                seen.push((key, f));
            }
        }
        seen.sort_by(|(a, _), (b, _)| a.cmp(b));
        Judgment {
            context: seen.into_iter().map(|(_, f)| f).collect(),
            conclusion,
        }
    }

    fn canon_key(&self) -> (Vec<String>, String) {
        let mut ctx: Vec<String> = self.context.iter().map(|f| canon(f).to_string()).collect();
        ctx.sort();
        ctx.dedup();
        (ctx, canon(&self.conclusion).to_string())
    }
}

impl PartialEq for Judgment {
    fn eq(&self, other: &Self) -> bool {
        self.canon_key() == other.canon_key()
    }
}

impl fmt::Display for Judgment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, a) in self.context.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "}} |- {}", self.conclusion)
    }
}

/// Checker verdict: the judgment proved, or the first violation in
/// depth-first order (node path as `root.<premise index>...`).
#[derive(Debug, Clone, PartialEq)]
pub enum CheckReport {
    Ok(Judgment),
    Fail { path: String, reason: String },
}

impl CheckReport {
    pub fn is_ok(&self) -> bool {
        matches!(self, CheckReport::Ok(_))
    }

    pub fn judgment(&self) -> Option<&Judgment> {
        match self {
            CheckReport::Ok(j) => Some(j),
            CheckReport::Fail { .. } => None,
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckReport::Ok(j) => write!(f, "OK: {j}"),
            CheckReport::Fail { path, reason } => write!(f, "FAIL at {path}: {reason}"),
        }
    }
}

#[derive(Default)]
struct Bindings {
    formulas: HashMap<u8, Formula>,
    abs: HashMap<u8, (String, Formula)>,
    atoms: HashMap<u8, (String, Vec<Term>)>,
}

impl Bindings {
    fn abs_key(var: &str, body: &Formula) -> Formula {
        canon(&Formula::exists(Flavor::Neutral, var, body.clone()))
    }
}

struct MatchCtx<'a> {
    eigen: Option<&'a str>,
    witness: Option<&'a Term>,
}

fn match_pat(pat: &Pat, f: &Formula, b: &mut Bindings, ctx: &MatchCtx) -> bool {
    match pat {
        Pat::Meta(k) => {
            if let Some(prev) = b.formulas.get(k) {
                alpha_eq(prev, f)
            } else {
                b.formulas.insert(*k, f.clone());
                true
            }
        }
        Pat::Bot => *f == Formula::Bot,
        Pat::Bin(op, fl, pa, pb) => match f {
            Formula::Bin {
                op: fop,
                flavor,
                lhs,
                rhs,
            } => {
                fop == op
                    && flavor == fl
                    && match_pat(pa, lhs, b, ctx)
                    && match_pat(pb, rhs, b, ctx)
            }
            _ => false,
        },
        Pat::Quant(op, fl, qb) => match f {
            Formula::Quant {
                op: fop,
                flavor,
                var,
                body,
            } if fop == op && flavor == fl => match qb {
                QBody::Abs(k) => match_abs(*k, var, body, b),
                QBody::NegAbs(k, nf) => match body.strip_neg(*nf) {
                    Some(inner) => match_abs(*k, var, inner, b),
                    None => false,
                },
            },
            _ => false,
        },
        Pat::Inst(k, kind) => {
            let Some((var, body)) = b.abs.get(k) else {
                return false;
            };
            let term = match kind {
                InstKind::Witness => match ctx.witness {
                    Some(t) => t.clone(),
                    None => return false,
                },
                InstKind::Eigen => match ctx.eigen {
                    Some(a) => Term::param(a),
                    None => return false,
                },
            };
            alpha_eq(&substitute(body, var, &term), f)
        }
        Pat::AtomMeta(k, fl) => match f {
            Formula::Atom { pred, flavor, args } if flavor == fl => {
                if let Some((p, a)) = b.atoms.get(k) {
                    p == pred && a == args
                } else {
                    b.atoms.insert(*k, (pred.clone(), args.clone()));
                    true
                }
            }
            _ => false,
        },
        Pat::CLabelPat(inner) => match f {
            Formula::CLabel(body) => match_pat(inner, body, b, ctx),
            _ => false,
        },
    }
}

fn match_abs(k: u8, var: &str, body: &Formula, b: &mut Bindings) -> bool {
    if let Some((pvar, pbody)) = b.abs.get(&k) {
        Bindings::abs_key(pvar, pbody) == Bindings::abs_key(var, body)
    } else {
        b.abs.insert(k, (var.to_string(), body.clone()));
        true
    }
}

fn instantiate(pat: &Pat, b: &Bindings, ctx: &MatchCtx) -> Option<Formula> {
    match pat {
        Pat::Meta(k) => b.formulas.get(k).cloned(),
        Pat::Bot => Some(Formula::Bot),
        Pat::Bin(op, fl, pa, pb) => Some(Formula::Bin {
            op: *op,
            flavor: *fl,
            lhs: Box::new(instantiate(pa, b, ctx)?),
            rhs: Box::new(instantiate(pb, b, ctx)?),
        }),
        Pat::Quant(op, fl, qb) => {
            let (k, negate) = match qb {
                QBody::Abs(k) => (*k, None),
                QBody::NegAbs(k, nf) => (*k, Some(*nf)),
            };
            let (var, body) = b.abs.get(&k)?;
            let body = match negate {
                Some(nf) => Formula::neg(nf, body.clone()),
                None => body.clone(),
            };
            Some(Formula::Quant {
                op: *op,
                flavor: *fl,
                var: var.clone(),
                body: Box::new(body),
            })
        }
        Pat::Inst(k, kind) => {
            let (var, body) = b.abs.get(k)?;
            let term = match kind {
                InstKind::Witness => ctx.witness?.clone(),
                InstKind::Eigen => Term::param(ctx.eigen?),
            };
            Some(substitute(body, var, &term))
        }
        Pat::AtomMeta(k, fl) => {
            let (pred, args) = b.atoms.get(k)?;
            Some(Formula::Atom {
                pred: pred.clone(),
                flavor: *fl,
                args: args.clone(),
            })
        }
        Pat::CLabelPat(inner) => Some(Formula::CLabel(Box::new(instantiate(inner, b, ctx)?))),
    }
}

struct ScopeEntry {
    label: u32,
    formula: Formula,
}

struct Checker {
    system: SystemId,
    /// Labels discharged anywhere in the tree (prepass).
    dischargers: HashSet<u32>,
    /// Labels whose discharging node the walk has already visited.
    seen: HashSet<u32>,
    open: Vec<Formula>,
}

struct Failure {
    path: String,
    reason: String,
}

fn fail<T>(path: &str, reason: impl Into<String>) -> Result<T, Failure> {
    Err(Failure {
        path: path.to_string(),
        reason: reason.into(),
    })
}

/// Checks a proof against a system. See the module docs for the exact
/// conditions; the verdict carries the proved judgment or the first
/// violation in depth-first order.
pub fn check(system: SystemId, p: &Proof) -> CheckReport {
    let mut dischargers = HashSet::new();
    collect_dischargers(p, &mut dischargers);
    let mut checker = Checker {
        system,
        dischargers,
        seen: HashSet::new(),
        open: Vec::new(),
    };
    let mut env = Vec::new();
    match walk(p, "root", &mut env, &mut checker) {
        Ok(()) => CheckReport::Ok(Judgment::new(checker.open, p.conclusion().clone())),
        Err(Failure { path, reason }) => CheckReport::Fail { path, reason },
    }
}

fn collect_dischargers(p: &Proof, out: &mut HashSet<u32>) {
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
            collect_dischargers(q, out);
        }
    }
}

fn walk(
    p: &Proof,
    path: &str,
    env: &mut Vec<ScopeEntry>,
    checker: &mut Checker,
) -> Result<(), Failure> {
    match p {
        Proof::Hyp { label, formula } => {
            if *label == 0 {
                return fail(path, "hypothesis labels must be positive");
            }
            if let Some(v) = well_formed(checker.system, formula).into_iter().next() {
                return fail(
                    path,
                    format!("hypothesis is not well-formed in {}: {v}", checker.system),
                );
            }
            if let Some(entry) = env.iter().rev().find(|e| e.label == *label) {
                if !alpha_eq(formula, &entry.formula) {
                    return fail(
                        path,
                        format!(
                            "hypothesis {label} is `{formula}` but its discharge closes `{}`",
                            entry.formula
                        ),
                    );
                }
                // Discharged; not an open assumption.
            } else if checker.dischargers.contains(label) {
                return fail(
                    path,
                    format!("hypothesis {label} occurs outside the scope of its discharge"),
                );
            } else {
                checker.open.push(formula.clone());
            }
            Ok(())
        }
        Proof::Infer {
            rule,
            conclusion,
            discharges,
            eigen,
            witness,
            premises,
        } => {
            let Some(schema) = schema_of(checker.system, *rule) else {
                return fail(
                    path,
                    format!("rule {rule} is not part of {}", checker.system),
                );
            };
            if let Some(v) = well_formed(checker.system, conclusion).into_iter().next() {
                return fail(
                    path,
                    format!("conclusion is not well-formed in {}: {v}", checker.system),
                );
            }
            if premises.len() != schema.premises.len() {
                return fail(
                    path,
                    format!(
                        "{rule} takes {} premises, found {}",
                        schema.premises.len(),
                        premises.len()
                    ),
                );
            }
            if discharges.len() != schema.slots.len() {
                return fail(
                    path,
                    format!(
                        "{rule} has {} discharge slots, found {} labels",
                        schema.slots.len(),
                        discharges.len()
                    ),
                );
            }
            match (schema.side, eigen.is_some(), witness.is_some()) {
                (Side::Eigen, true, false) | (Side::Witness, false, true) | (Side::None, false, false) => {}
                (Side::Eigen, _, _) => {
                    return fail(path, format!("{rule} needs an eigenvariable and no witness"))
                }
                (Side::Witness, _, _) => {
                    return fail(path, format!("{rule} needs a witness term and no eigenvariable"))
                }
                (Side::None, _, _) => {
                    return fail(
                        path,
                        format!("{rule} takes neither eigenvariable nor witness"),
                    )
                }
            }
            for l in discharges.iter().filter(|l| **l != 0) {
                if !checker.seen.insert(*l) {
                    return fail(
                        path,
                        format!("discharge label {l} is already used by another slot"),
                    );
                }
            }

            // Match the schema against the premises' stated conclusions.
            let ctx = MatchCtx {
                eigen: eigen.as_deref(),
                witness: witness.as_ref(),
            };
            let mut binds = Bindings::default();
            let conclusion_step = |b: &mut Bindings| -> Result<(), Failure> {
                if !match_pat(&schema.conclusion, conclusion, b, &ctx) {
                    return fail(
                        path,
                        format!("conclusion `{conclusion}` does not fit the {rule} schema"),
                    );
                }
                Ok(())
            };
            let premise_step = |b: &mut Bindings| -> Result<(), Failure> {
                for (i, (pat, prem)) in schema.premises.iter().zip(premises).enumerate() {
                    if !match_pat(pat, prem.conclusion(), b, &ctx) {
                        return fail(
                            path,
                            format!(
                                "premise {} `{}` does not fit the {rule} schema",
                                i + 1,
                                prem.conclusion()
                            ),
                        );
                    }
                }
                Ok(())
            };
            if schema.conclusion_first {
                conclusion_step(&mut binds)?;
                premise_step(&mut binds)?;
            } else {
                premise_step(&mut binds)?;
                conclusion_step(&mut binds)?;
            }

            // Instantiate the discharge slots.
            let mut slot_instances = Vec::with_capacity(schema.slots.len());
            for slot in &schema.slots {
                match instantiate(&slot.pat, &binds, &ctx) {
                    Some(f) => slot_instances.push(f),
                    None => return fail(path, format!("{rule} slot pattern failed to instantiate")),
                }
            }

            // Eigenvariable freshness.
            if schema.side == Side::Eigen {
                let a = eigen.as_deref().unwrap();
                if params_of(conclusion).contains(a) {
                    return fail(
                        path,
                        format!("eigenvariable '{a} occurs in the conclusion `{conclusion}`"),
                    );
                }
                if premises.len() == 1 {
                    // Universal introduction: fresh for every open
                    // assumption of the premise.
                    for open in open_assumptions(&premises[0]) {
                        if params_of(&open).contains(a) {
                            return fail(
                                path,
                                format!(
                                    "eigenvariable '{a} occurs in the open assumption `{open}`"
                                ),
                            );
                        }
                    }
                } else {
                    // Existential elimination: fresh for the existential
                    // premise and for the minor premise's open assumptions
                    // other than the discharged instances.
                    if params_of(premises[0].conclusion()).contains(a) {
                        return fail(
                            path,
                            format!(
                                "eigenvariable '{a} occurs in the existential premise `{}`",
                                premises[0].conclusion()
                            ),
                        );
                    }
                    let exempt = discharges[0];
                    for open in open_assumptions_except(&premises[1], exempt) {
                        if params_of(&open).contains(a) {
                            return fail(
                                path,
                                format!(
                                    "eigenvariable '{a} occurs in the open assumption `{open}`"
                                ),
                            );
                        }
                    }
                }
            }

            // Recurse, with this node's slots in scope over their premises.
            for (i, prem) in premises.iter().enumerate() {
                let before = env.len();
                for (slot, (label, inst)) in schema
                    .slots
                    .iter()
                    .zip(discharges.iter().zip(&slot_instances))
                {
                    if slot.premise == i && *label != 0 {
                        env.push(ScopeEntry {
                            label: *label,
                            formula: inst.clone(),
                        });
                    }
                }
                let child_path = format!("{path}.{i}");
                let r = walk(prem, &child_path, env, checker);
                env.truncate(before);
                r?;
            }
            Ok(())
        }
    }
}

/// Formulas of hypothesis leaves not discharged by any rule inside `p`
/// (a multiset; duplicates preserved).
pub fn open_assumptions(p: &Proof) -> Vec<Formula> {
    open_assumptions_except(p, 0)
}

/// Same, but leaves carrying `exempt` (when nonzero) are skipped even if
/// undischarged; used for the existential-elimination freshness check,
/// where the discharged instances are exempt by the rule.
fn open_assumptions_except(p: &Proof, exempt: u32) -> Vec<Formula> {
    let mut out = Vec::new();
    let mut scope: Vec<u32> = Vec::new();
    open_walk(p, &mut scope, exempt, &mut out);
    out
}

fn open_walk(p: &Proof, scope: &mut Vec<u32>, exempt: u32, out: &mut Vec<Formula>) {
    match p {
        Proof::Hyp { label, formula } => {
            let discharged_here = *label != 0 && scope.contains(label);
            let exempted = *label != 0 && *label == exempt;
            if !discharged_here && !exempted {
                out.push(formula.clone());
            }
        }
        Proof::Infer {
            rule,
            discharges,
            premises,
            ..
        } => {
            // Slot-to-premise attachment mirrors the schema; fall back to
            // premise 0 when the rule is unknown to every table (harmless:
            // the checker rejects such nodes anyway).
            let slots: Vec<usize> = SystemId::ALL
                .iter()
                .find_map(|s| schema_of(*s, *rule))
                .map(|sch| sch.slots.iter().map(|sl| sl.premise).collect())
                .unwrap_or_default();
            for (i, prem) in premises.iter().enumerate() {
                let before = scope.len();
                for (slot_idx, label) in discharges.iter().enumerate() {
                    if *label != 0 && slots.get(slot_idx) == Some(&i) {
                        scope.push(*label);
                    }
                }
                open_walk(prem, scope, exempt, out);
                scope.truncate(before);
            }
        }
    }
}
