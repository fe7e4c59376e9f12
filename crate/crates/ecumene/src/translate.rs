//! Formula-to-formula maps between the dialects.
//!
//! `t_eci` renders the classical label as double negation, landing in plain
//! intuitionistic syntax. `t_nek` renders labeled formulas as classically
//! flavored ones (and is partial: no universal quantifiers), with
//! `untranslate_nek` as its right inverse. `star` swaps a classical root
//! connective for its intuitionistic counterpart. `nek_to_ipl` chains
//! `untranslate_nek` and `t_eci`, the provability-preserving embedding the
//! decision procedures ride on.

use crate::syntax::{well_formed, Flavor, Formula, QuantOp, SystemId};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error("formula is not well-formed in {system}: {violation}")]
    Dialect { system: SystemId, violation: String },
    #[error("universal quantifiers are outside this map's domain")]
    Universal,
    #[error("main connective of `{0}` is not classical")]
    NotClassical(String),
}

fn require_wf(system: SystemId, f: &Formula) -> Result<(), TranslateError> {
    match well_formed(system, f).into_iter().next() {
        None => Ok(()),
        Some(v) => Err(TranslateError::Dialect {
            system,
            violation: v.to_string(),
        }),
    }
}

/// Double-negation reading of the classical label: `(A)^c` becomes
/// `~~A`, homomorphically everywhere else. Total on ECI; the output is
/// label-free and well-formed in NJ.
pub fn t_eci(f: &Formula) -> Result<Formula, TranslateError> {
    require_wf(SystemId::Eci, f)?;
    Ok(t_eci_rec(f))
}

fn t_eci_rec(f: &Formula) -> Formula {
    match f {
        Formula::Atom { .. } | Formula::Bot => f.clone(),
        Formula::Bin {
            op,
            flavor,
            lhs,
            rhs,
        } => Formula::Bin {
            op: *op,
            flavor: *flavor,
            lhs: Box::new(t_eci_rec(lhs)),
            rhs: Box::new(t_eci_rec(rhs)),
        },
        Formula::Quant {
            op,
            flavor,
            var,
            body,
        } => Formula::Quant {
            op: *op,
            flavor: *flavor,
            var: var.clone(),
            body: Box::new(t_eci_rec(body)),
        },
        Formula::CLabel(inner) => Formula::neg(
            Flavor::Neutral,
            Formula::neg(Flavor::Neutral, t_eci_rec(inner)),
        ),
    }
}

/// Flavor reading of the classical label: `(A * B)^c` becomes
/// `t[A] *_c t[B]`, unlabeled connectives turn intuitionistic, labeled
/// atoms turn classical. Defined only on universal-quantifier-free ECI
/// formulas; nested labels collapse outermost-first.
pub fn t_nek(f: &Formula) -> Result<Formula, TranslateError> {
    require_wf(SystemId::Eci, f)?;
    t_nek_rec(f)
}

fn t_nek_rec(f: &Formula) -> Result<Formula, TranslateError> {
    match f {
        Formula::Atom { .. } | Formula::Bot => Ok(f.clone()),
        Formula::Bin { op, lhs, rhs, .. } => Ok(Formula::Bin {
            op: *op,
            flavor: Flavor::Int,
            lhs: Box::new(t_nek_rec(lhs)?),
            rhs: Box::new(t_nek_rec(rhs)?),
        }),
        Formula::Quant {
            op: QuantOp::Exists,
            var,
            body,
            ..
        } => Ok(Formula::Quant {
            op: QuantOp::Exists,
            flavor: Flavor::Int,
            var: var.clone(),
            body: Box::new(t_nek_rec(body)?),
        }),
        Formula::Quant {
            op: QuantOp::Forall,
            ..
        } => Err(TranslateError::Universal),
        Formula::CLabel(inner) => t_nek_label(inner),
    }
}

fn t_nek_label(f: &Formula) -> Result<Formula, TranslateError> {
    match f {
        Formula::Atom { pred, args, .. } => Ok(Formula::Atom {
            pred: pred.clone(),
            flavor: Flavor::Cls,
            args: args.clone(),
        }),
        Formula::Bot => Ok(Formula::Bot),
        Formula::Bin { op, lhs, rhs, .. } => Ok(Formula::Bin {
            op: *op,
            flavor: Flavor::Cls,
            lhs: Box::new(t_nek_rec(lhs)?),
            rhs: Box::new(t_nek_rec(rhs)?),
        }),
        Formula::Quant {
            op: QuantOp::Exists,
            var,
            body,
            ..
        } => Ok(Formula::Quant {
            op: QuantOp::Exists,
            flavor: Flavor::Cls,
            var: var.clone(),
            body: Box::new(t_nek_rec(body)?),
        }),
        Formula::Quant {
            op: QuantOp::Forall,
            ..
        } => Err(TranslateError::Universal),
        Formula::CLabel(inner) => t_nek_label(inner),
    }
}

/// Right inverse of [`t_nek`]: classical flavor peels off into a label,
/// intuitionistic flavor into the neutral connective. Defined only on
/// universal-quantifier-free NE_K formulas.
pub fn untranslate_nek(f: &Formula) -> Result<Formula, TranslateError> {
    require_wf(SystemId::Nek, f)?;
    untranslate_rec(f)
}

fn untranslate_rec(f: &Formula) -> Result<Formula, TranslateError> {
    match f {
        Formula::Bot => Ok(Formula::Bot),
        Formula::Atom {
            pred,
            flavor,
            args,
        } => {
            let atom = Formula::Atom {
                pred: pred.clone(),
                flavor: Flavor::Int,
                args: args.clone(),
            };
            Ok(match flavor {
                Flavor::Cls => Formula::CLabel(Box::new(atom)),
                _ => atom,
            })
        }
        Formula::Bin {
            op,
            flavor,
            lhs,
            rhs,
        } => {
            let body = Formula::Bin {
                op: *op,
                flavor: Flavor::Neutral,
                lhs: Box::new(untranslate_rec(lhs)?),
                rhs: Box::new(untranslate_rec(rhs)?),
            };
            Ok(match flavor {
                Flavor::Cls => Formula::CLabel(Box::new(body)),
                _ => body,
            })
        }
        Formula::Quant {
            op: QuantOp::Exists,
            flavor,
            var,
            body,
        } => {
            let body = Formula::Quant {
                op: QuantOp::Exists,
                flavor: Flavor::Neutral,
                var: var.clone(),
                body: Box::new(untranslate_rec(body)?),
            };
            Ok(match flavor {
                Flavor::Cls => Formula::CLabel(Box::new(body)),
                _ => body,
            })
        }
        Formula::Quant {
            op: QuantOp::Forall,
            ..
        } => Err(TranslateError::Universal),
        Formula::CLabel(_) => Err(TranslateError::Dialect {
            system: SystemId::Nek,
            violation: "classical label in NE_K input".to_string(),
        }),
    }
}

/// Swaps the root classical operator for its intuitionistic counterpart,
/// leaving every subformula untouched. Errors unless the root is
/// classically flavored (a classical atom counts).
pub fn star(f: &Formula) -> Result<Formula, TranslateError> {
    match f {
        Formula::Atom {
            pred,
            flavor: Flavor::Cls,
            args,
        } => Ok(Formula::Atom {
            pred: pred.clone(),
            flavor: Flavor::Int,
            args: args.clone(),
        }),
        Formula::Bin {
            op,
            flavor: Flavor::Cls,
            lhs,
            rhs,
        } => Ok(Formula::Bin {
            op: *op,
            flavor: Flavor::Int,
            lhs: lhs.clone(),
            rhs: rhs.clone(),
        }),
        Formula::Quant {
            op,
            flavor: Flavor::Cls,
            var,
            body,
        } => Ok(Formula::Quant {
            op: *op,
            flavor: Flavor::Int,
            var: var.clone(),
            body: body.clone(),
        }),
        other => Err(TranslateError::NotClassical(other.to_string())),
    }
}

/// The embedding the oracle uses for NE_K sequents: peel flavors into
/// labels, then read labels as double negation.
pub fn nek_to_ipl(f: &Formula) -> Result<Formula, TranslateError> {
    t_eci(&untranslate_nek(f)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_formula;
    use crate::syntax::alpha_eq;

    fn eci(s: &str) -> Formula {
        parse_formula(s, SystemId::Eci).unwrap()
    }

    fn nek(s: &str) -> Formula {
        parse_formula(s, SystemId::Nek).unwrap()
    }

    #[test]
    fn t_eci_unfolds_labels_to_double_negation() {
        assert_eq!(t_eci(&eci("(p /\\ q)^c")).unwrap(), eci("~~(p /\\ q)"));
        assert_eq!(t_eci(&eci("p")).unwrap(), eci("p"));
        assert_eq!(
            t_eci(&eci("(p^c -> q)^c")).unwrap(),
            eci("~~(~~p -> q)")
        );
    }

    #[test]
    fn t_eci_extends_through_quantifiers() {
        assert_eq!(
            t_eci(&eci("(exists x. P(x))^c")).unwrap(),
            eci("~~exists x. P(x)")
        );
        assert_eq!(
            t_eci(&eci("(forall x. P(x))^c")).unwrap(),
            eci("~~forall x. P(x)")
        );
    }

    #[test]
    fn t_eci_output_is_label_free_and_adds_one_connective_per_label() {
        for s in ["(p \\/ q^c)^c", "((p -> q)^c /\\ bot)^c", "p^c^c -> q"] {
            let f = eci(s);
            let out = t_eci(&f).unwrap();
            assert_eq!(out.clabel_count(), 0, "{s}");
            assert_eq!(
                out.connective_count(),
                f.connective_count() + f.clabel_count(),
                "{s}"
            );
            assert!(well_formed(SystemId::Nj, &out).is_empty(), "{s}");
        }
    }

    #[test]
    fn t_nek_flavors_labels() {
        assert_eq!(t_nek(&eci("(exists x. P(x))^c")).unwrap(), nek("existsc x. P(x)"));
        assert_eq!(t_nek(&eci("(bot)^c")).unwrap(), Formula::Bot);
        assert_eq!(t_nek(&eci("(p /\\ q)^c")).unwrap(), nek("p /\\c q"));
        assert_eq!(t_nek(&eci("p -> q^c")).unwrap(), nek("p ->i q_c"));
        assert_eq!(t_nek(&eci("(forall x. P(x))^c")), Err(TranslateError::Universal));
    }

    #[test]
    fn t_nek_collapses_nested_labels_outermost_first() {
        assert_eq!(t_nek(&eci("((p \\/ q)^c)^c")).unwrap(), nek("p \\/c q"));
        assert_eq!(
            t_nek(&eci("((p^c -> q)^c)^c")).unwrap(),
            nek("p_c ->c q")
        );
    }

    #[test]
    fn untranslate_peels_flavors_into_labels() {
        assert_eq!(untranslate_nek(&nek("p /\\c q")).unwrap(), eci("(p /\\ q)^c"));
        assert_eq!(untranslate_nek(&nek("existsi x. P(x)")).unwrap(), eci("exists x. P(x)"));
        assert_eq!(untranslate_nek(&nek("p_c")).unwrap(), eci("p^c"));
        assert_eq!(
            untranslate_nek(&nek("forallc x. P(x)")),
            Err(TranslateError::Universal)
        );
        assert_eq!(
            untranslate_nek(&nek("foralli x. P(x)")),
            Err(TranslateError::Universal)
        );
    }

    #[test]
    fn t_nek_inverts_untranslate() {
        for s in [
            "p /\\c q",
            "p_c ->c (q \\/i r_c)",
            "existsc x. (P(x) ->i bot)",
            "bot ->i p_c",
            "(p \\/c q) /\\i (p ->c bot)",
        ] {
            let f = nek(s);
            let round = t_nek(&untranslate_nek(&f).unwrap()).unwrap();
            assert_eq!(round, f, "{s}");
        }
    }

    #[test]
    fn untranslate_inverts_t_nek_without_nesting() {
        for s in ["(p /\\ q)^c", "p^c -> q", "exists x. (P(x))^c", "p \\/ q"] {
            let f = eci(s);
            let round = untranslate_nek(&t_nek(&f).unwrap()).unwrap();
            assert!(alpha_eq(&round, &f), "{s}: {round}");
        }
    }

    #[test]
    fn star_swaps_only_the_root() {
        let f = nek("(p ->c q) \\/c (p /\\c q)");
        let g = star(&f).unwrap();
        assert_eq!(g, nek("(p ->c q) \\/i (p /\\c q)"));
        assert_eq!(star(&nek("existsc x. P(x)")).unwrap(), nek("existsi x. P(x)"));
        assert_eq!(star(&nek("p_c")).unwrap(), nek("p"));
        assert_eq!(
            star(&nek("forallc x. P(x)")).unwrap(),
            nek("foralli x. P(x)")
        );
        assert!(matches!(
            star(&nek("p /\\i q")),
            Err(TranslateError::NotClassical(_))
        ));
    }

    #[test]
    fn nek_to_ipl_composes_the_maps() {
        assert_eq!(nek_to_ipl(&nek("p /\\c q")).unwrap(), eci("~~(p /\\ q)"));
        assert_eq!(nek_to_ipl(&nek("p_c")).unwrap(), eci("~~p"));
        assert_eq!(nek_to_ipl(&nek("p ->i q")).unwrap(), eci("p -> q"));
    }

    #[test]
    fn translations_reject_wrong_dialect() {
        let classical = nek("p /\\c q");
        assert!(matches!(
            t_eci(&classical),
            Err(TranslateError::Dialect { .. })
        ));
        let labeled = eci("p^c");
        assert!(matches!(
            untranslate_nek(&labeled),
            Err(TranslateError::Dialect { .. })
        ));
    }
}
