//! The release gate. Each test is one acceptance criterion, self-timed
//! against its budget, printing a single summary line on success (visible
//! with --nocapture) and failing loudly otherwise.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ecumene::gen;
use ecumene::kernel::{check, CheckReport, Judgment, Proof, RuleId};
use ecumene::oracle::{self, Sequent};
use ecumene::parse::parse_formula;
use ecumene::sexpr::{parse_corpus_file, Header};
use ecumene::syntax::{BinOp, Flavor, Formula, QuantOp, SystemId, Term};
use ecumene::transform;
use ecumene::translate;

const CORPUS_DIR: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../corpus");

fn corpus_files() -> Vec<(String, Header, Proof)> {
    let mut out = Vec::new();
    for entry in std::fs::read_dir(CORPUS_DIR).expect("corpus directory") {
        let path = entry.unwrap().path();
        if path.extension().is_none_or(|e| e != "proof") {
            continue;
        }
        let name = path.file_name().unwrap().to_string_lossy().into_owned();
        let text = std::fs::read_to_string(&path).unwrap();
        let (header, proof) =
            parse_corpus_file(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        out.push((name, header, proof));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

fn within(budget_s: u64, elapsed: Duration, label: &str) {
    assert!(
        elapsed < Duration::from_secs(budget_s),
        "{label} exceeded its {budget_s}s budget: {elapsed:?}"
    );
}

fn negi(f: Formula) -> Formula {
    Formula::bin(BinOp::Imp, Flavor::Int, f, Formula::Bot)
}

fn negn(f: Formula) -> Formula {
    Formula::bin(BinOp::Imp, Flavor::Neutral, f, Formula::Bot)
}

fn ok_judgment(sys: SystemId, p: &Proof) -> Judgment {
    match check(sys, p) {
        CheckReport::Ok(j) => j,
        CheckReport::Fail { path, reason } => panic!("{sys}: fail at {path}: {reason}"),
    }
}

// --------------------------------------------------------------------------
// criterion 1: corpus fidelity and mutation robustness
// --------------------------------------------------------------------------

const ALL_RULES: [RuleId; 36] = [
    RuleId::and_intro,
    RuleId::and_elim_1,
    RuleId::and_elim_2,
    RuleId::bot_elim,
    RuleId::all_intro,
    RuleId::all_elim,
    RuleId::imp_i_intro,
    RuleId::imp_i_elim,
    RuleId::or_i_intro_1,
    RuleId::or_i_intro_2,
    RuleId::or_i_elim,
    RuleId::ex_i_intro,
    RuleId::ex_i_elim,
    RuleId::imp_c_intro,
    RuleId::imp_c_elim,
    RuleId::or_c_intro,
    RuleId::or_c_elim,
    RuleId::ex_c_intro,
    RuleId::ex_c_elim,
    RuleId::atom_c_intro,
    RuleId::atom_c_elim,
    RuleId::and_c_intro,
    RuleId::and_c_elim_1,
    RuleId::and_c_elim_2,
    RuleId::all_c_intro,
    RuleId::all_c_elim,
    RuleId::i_c,
    RuleId::e_c,
    RuleId::imp_intro,
    RuleId::imp_elim,
    RuleId::or_intro_1,
    RuleId::or_intro_2,
    RuleId::or_elim,
    RuleId::ex_intro,
    RuleId::ex_elim,
    RuleId::raa,
];

fn walk_nodes<'a>(p: &'a Proof, out: &mut Vec<&'a Proof>) {
    out.push(p);
    if let Proof::Infer { premises, .. } = p {
        for q in premises {
            walk_nodes(q, out);
        }
    }
}

fn mutate_at(p: &mut Proof, idx: &mut usize, target: usize, op: &mut dyn FnMut(&mut Proof)) {
    if *idx == target {
        op(p);
    }
    *idx += 1;
    if let Proof::Infer { premises, .. } = p {
        for q in premises {
            mutate_at(q, idx, target, op);
        }
    }
}

fn flavor_slots(f: &Formula) -> usize {
    match f {
        Formula::Bot => 0,
        Formula::Atom { .. } => 1,
        Formula::Bin { lhs, rhs, .. } => 1 + flavor_slots(lhs) + flavor_slots(rhs),
        Formula::Quant { body, .. } => 1 + flavor_slots(body),
        Formula::CLabel(inner) => flavor_slots(inner),
    }
}

fn rotate(fl: Flavor) -> Flavor {
    match fl {
        Flavor::Int => Flavor::Cls,
        Flavor::Cls => Flavor::Int,
        Flavor::Neutral => Flavor::Int,
    }
}

fn rotate_flavor(f: &Formula, idx: &mut usize, target: usize) -> Formula {
    match f {
        Formula::Bot => f.clone(),
        Formula::Atom { pred, flavor, args } => {
            let fl = if *idx == target { rotate(*flavor) } else { *flavor };
            *idx += 1;
            Formula::Atom {
                pred: pred.clone(),
                flavor: fl,
                args: args.clone(),
            }
        }
        Formula::Bin {
            op,
            flavor,
            lhs,
            rhs,
        } => {
            let fl = if *idx == target { rotate(*flavor) } else { *flavor };
            *idx += 1;
            Formula::Bin {
                op: *op,
                flavor: fl,
                lhs: Box::new(rotate_flavor(lhs, idx, target)),
                rhs: Box::new(rotate_flavor(rhs, idx, target)),
            }
        }
        Formula::Quant {
            op,
            flavor,
            var,
            body,
        } => {
            let fl = if *idx == target { rotate(*flavor) } else { *flavor };
            *idx += 1;
            Formula::Quant {
                op: *op,
                flavor: fl,
                var: var.clone(),
                body: Box::new(rotate_flavor(body, idx, target)),
            }
        }
        Formula::CLabel(inner) => Formula::CLabel(Box::new(rotate_flavor(inner, idx, target))),
    }
}

/// One random single-node edit: a rule swap, a flavor flip inside one node's
/// formula, or a discharge-label rewrite. Falls back across kinds when the
/// chosen one has no site in this proof.
fn random_mutation(rng: &mut ChaCha8Rng, p: &Proof) -> Proof {
    let mut nodes = Vec::new();
    walk_nodes(p, &mut nodes);
    for attempt in 0..10 {
        let kind = (rng.gen_range(0..3u8) + attempt) % 3;
        match kind {
            0 => {
                let sites: Vec<usize> = nodes
                    .iter()
                    .enumerate()
                    .filter(|(_, n)| matches!(n, Proof::Infer { .. }))
                    .map(|(i, _)| i)
                    .collect();
                if sites.is_empty() {
                    continue;
                }
                let site = sites[rng.gen_range(0..sites.len())];
                let new_rule = ALL_RULES[rng.gen_range(0..ALL_RULES.len())];
                let mut out = p.clone();
                let mut idx = 0;
                mutate_at(&mut out, &mut idx, site, &mut |n| {
                    if let Proof::Infer { rule, .. } = n {
                        if *rule != new_rule {
                            *rule = new_rule;
                        } else {
                            *rule = RuleId::raa; // any different one
                        }
                    }
                });
                if out != *p {
                    return out;
                }
            }
            1 => {
                let sites: Vec<(usize, usize)> = nodes
                    .iter()
                    .enumerate()
                    .filter_map(|(i, n)| {
                        let slots = flavor_slots(n.conclusion());
                        (slots > 0).then_some((i, slots))
                    })
                    .collect();
                if sites.is_empty() {
                    continue;
                }
                let (site, slots) = sites[rng.gen_range(0..sites.len())];
                let slot = rng.gen_range(0..slots);
                let mut out = p.clone();
                let mut idx = 0;
                mutate_at(&mut out, &mut idx, site, &mut |n| {
                    let mut fidx = 0;
                    match n {
                        Proof::Hyp { formula, .. } => {
                            *formula = rotate_flavor(formula, &mut fidx, slot)
                        }
                        Proof::Infer { conclusion, .. } => {
                            *conclusion = rotate_flavor(conclusion, &mut fidx, slot)
                        }
                    }
                });
                if out != *p {
                    return out;
                }
            }
            _ => {
                let sites: Vec<usize> = nodes
                    .iter()
                    .enumerate()
                    .filter(|(_, n)| {
                        matches!(n, Proof::Infer { discharges, .. }
                            if discharges.iter().any(|&d| d != 0))
                    })
                    .map(|(i, _)| i)
                    .collect();
                if sites.is_empty() {
                    continue;
                }
                let site = sites[rng.gen_range(0..sites.len())];
                let mut out = p.clone();
                let mut idx = 0;
                mutate_at(&mut out, &mut idx, site, &mut |n| {
                    if let Proof::Infer { discharges, .. } = n {
                        if let Some(slot) = discharges.iter_mut().find(|d| **d != 0) {
                            *slot += 97;
                        }
                    }
                });
                if out != *p {
                    return out;
                }
            }
        }
    }
    panic!("no mutation site found");
}

#[test]
fn criterion_1_corpus_fidelity() {
    let t0 = Instant::now();
    let files = corpus_files();
    let positives: Vec<_> = files.iter().filter(|(_, h, _)| h.expect_ok).collect();
    let negatives: Vec<_> = files.iter().filter(|(_, h, _)| !h.expect_ok).collect();
    assert!(
        positives.len() >= 16,
        "need at least 16 positive corpus files, have {}",
        positives.len()
    );
    assert_eq!(negatives.len(), 2, "expected exactly two negative files");

    for (name, header, proof) in &positives {
        let j = ok_judgment(header.system, proof);
        assert_eq!(j, header.judgment, "{name}: judgment drifted from header");
    }
    for (name, header, proof) in &negatives {
        assert!(
            !check(header.system, proof).is_ok(),
            "{name}: expected rejection"
        );
    }

    let mut rng = ChaCha8Rng::seed_from_u64(1001);
    let mut mutants = 0usize;
    for (name, header, proof) in &positives {
        for _ in 0..5 {
            let mutant = random_mutation(&mut rng, proof);
            let rejected = match check(header.system, &mutant) {
                CheckReport::Ok(j) => j != header.judgment,
                CheckReport::Fail { .. } => true,
            };
            assert!(rejected, "{name}: a mutant survived with the same judgment");
            mutants += 1;
        }
    }

    let elapsed = t0.elapsed();
    within(5, elapsed, "criterion 1");
    println!(
        "criterion 1 (corpus fidelity): PASS - {} positives, {} negatives, {mutants} mutants all rejected, {elapsed:?} < 5s",
        positives.len(),
        negatives.len()
    );
}

// --------------------------------------------------------------------------
// criterion 2: classical validity forces intuitionistic double negation
// --------------------------------------------------------------------------

#[test]
fn criterion_2_double_negation_sweep() {
    let t0 = Instant::now();
    let atoms = vec!["p".to_string(), "q".to_string()];
    let mut tautologies = 0usize;
    let mut total = 0usize;
    let mut run = |a: Formula| {
        total += 1;
        if oracle::cpl_valid(&Sequent::goal_only(a.clone())).unwrap().provable {
            tautologies += 1;
            let dn = negn(negn(a.clone()));
            assert!(
                oracle::ipl_provable(&Sequent::goal_only(dn)).unwrap().provable,
                "classically valid but double negation not provable: {a}"
            );
        }
    };
    for a in oracle::enumerate_formulas(&atoms, 4, SystemId::Nj).unwrap() {
        run(a);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2002);
    let lv = gen::prop_leaves(&["p", "q", "r"]);
    for _ in 0..1000 {
        let n = rng.gen_range(0..=12);
        run(gen::random_formula(&mut rng, SystemId::Nj, &lv, n));
    }
    let elapsed = t0.elapsed();
    within(60, elapsed, "criterion 2");
    println!(
        "criterion 2 (double-negation sweep): PASS - {tautologies} valid of {total} formulas, zero exceptions, {elapsed:?} < 60s"
    );
}

// --------------------------------------------------------------------------
// criterion 3: on negations the two logics prove the same theorems
// --------------------------------------------------------------------------

#[test]
fn criterion_3_negative_fragment_sweep() {
    let t0 = Instant::now();
    let atoms = vec!["p".to_string(), "q".to_string()];
    let mut agreements = 0usize;
    let mut run = |a: Formula| {
        let cpl = oracle::cpl_valid(&Sequent::goal_only(a.clone())).unwrap().provable;
        let ipl = oracle::ipl_provable(&Sequent::goal_only(a.clone()))
            .unwrap()
            .provable;
        assert_eq!(cpl, ipl, "the logics disagree on the negation {a}");
        agreements += 1;
    };
    for a in oracle::enumerate_formulas(&atoms, 4, SystemId::Nj).unwrap() {
        let negation = matches!(
            &a,
            Formula::Bin {
                op: BinOp::Imp,
                rhs,
                ..
            } if **rhs == Formula::Bot
        );
        if negation {
            run(a);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3003);
    let lv = gen::prop_leaves(&["p", "q", "r"]);
    for _ in 0..1000 {
        let n = rng.gen_range(0..=11);
        run(negn(gen::random_formula(&mut rng, SystemId::Nj, &lv, n)));
    }
    let elapsed = t0.elapsed();
    within(60, elapsed, "criterion 3");
    println!(
        "criterion 3 (negative-fragment sweep): PASS - {agreements} negations agree, {elapsed:?} < 60s"
    );
}

// --------------------------------------------------------------------------
// criterion 4: the three internal constructions are total per classical root
// --------------------------------------------------------------------------

#[derive(Clone, Copy)]
enum Root {
    Or,
    Imp,
    And,
    Exists,
    Atom,
}

fn formula_with_root(rng: &mut ChaCha8Rng, sys: SystemId, root: Root) -> Formula {
    let lv = {
        let mut lv = gen::prop_leaves(&["p", "q"]);
        lv.push(("P".to_string(), vec![Term::var("x")]));
        lv
    };
    let arm = |rng: &mut ChaCha8Rng| {
        let n = rng.gen_range(0..4);
        gen::random_formula(rng, sys, &lv, n)
    };
    match root {
        Root::Or => {
            let (l, r) = (arm(rng), arm(rng));
            Formula::bin(BinOp::Or, Flavor::Cls, l, r)
        }
        Root::Imp => {
            let (l, r) = (arm(rng), arm(rng));
            Formula::bin(BinOp::Imp, Flavor::Cls, l, r)
        }
        Root::And => {
            let (l, r) = (arm(rng), arm(rng));
            Formula::bin(BinOp::And, Flavor::Cls, l, r)
        }
        Root::Exists => {
            let body = arm(rng);
            Formula::exists(Flavor::Cls, "x", body)
        }
        Root::Atom => Formula::atom_args("R", Flavor::Cls, vec![Term::var("x")]),
    }
}

#[test]
fn criterion_4_classical_root_constructions() {
    let t0 = Instant::now();
    let cases: [(SystemId, &[Root]); 2] = [
        (SystemId::Ne, &[Root::Or, Root::Imp, Root::Exists]),
        (
            SystemId::Nek,
            &[Root::Or, Root::Imp, Root::Exists, Root::And, Root::Atom],
        ),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(4004);
    let mut built = 0usize;
    for (sys, roots) in cases {
        for &root in roots {
            for _ in 0..200 {
                let c = formula_with_root(&mut rng, sys, root);
                let star = translate::star(&c).unwrap();

                let g1 = transform::glivenko1_internal(sys, &c).unwrap();
                assert_eq!(
                    ok_judgment(sys, &g1),
                    Judgment::new(vec![c.clone()], negi(negi(star.clone()))),
                    "double-negation construction drifted on {c}"
                );
                let se = transform::star_embed(sys, &c).unwrap();
                assert_eq!(
                    ok_judgment(sys, &se),
                    Judgment::new(vec![star.clone()], c.clone()),
                    "embedding construction drifted on {c}"
                );
                let g2 = transform::glivenko2_internal(sys, &c).unwrap();
                assert_eq!(
                    ok_judgment(sys, &g2),
                    Judgment::new(vec![negi(c.clone())], negi(star.clone())),
                    "contraposed construction drifted on {c}"
                );
                built += 3;
            }
        }
    }
    // the classical universal has no double-negation image
    let forallc = Formula::Quant {
        op: QuantOp::Forall,
        flavor: Flavor::Cls,
        var: "x".to_string(),
        body: Box::new(Formula::atom_args("P", Flavor::Int, vec![Term::var("x")])),
    };
    assert!(matches!(
        transform::glivenko1_internal(SystemId::Nek, &forallc),
        Err(transform::TransformError::RootUniversal(_))
    ));
    let elapsed = t0.elapsed();
    within(30, elapsed, "criterion 4");
    println!(
        "criterion 4 (classical-root constructions): PASS - {built} proofs checked, universal root rejected, {elapsed:?} < 30s"
    );
}

// --------------------------------------------------------------------------
// criterion 5: the label and double negation are interderivable
// --------------------------------------------------------------------------

#[test]
fn criterion_5_label_double_negation_equivalence() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5005);
    let lv = gen::prop_leaves(&["p", "q", "r"]);
    for _ in 0..200 {
        let n = rng.gen_range(0..=8);
        let a = gen::random_formula(&mut rng, SystemId::Eci, &lv, n);
        let labeled = Formula::CLabel(Box::new(a.clone()));

        let fwd = transform::eci_label_to_dn(&a).unwrap();
        let fwd_j = Judgment::new(vec![labeled.clone()], negn(negn(a.clone())));
        assert_eq!(ok_judgment(SystemId::Eci, &fwd), fwd_j);

        let bwd = transform::eci_dn_to_label(&a).unwrap();
        let bwd_j = Judgment::new(vec![negn(negn(a.clone()))], labeled.clone());
        assert_eq!(ok_judgment(SystemId::Eci, &bwd), bwd_j);

        let g2 = transform::eci_glivenko2(&a).unwrap();
        let g2_j = Judgment::new(
            vec![Formula::CLabel(Box::new(negn(a.clone())))],
            negn(a.clone()),
        );
        assert_eq!(ok_judgment(SystemId::Eci, &g2), g2_j);

        // the decision procedure agrees with all three kernel-checked claims
        for j in [&fwd_j, &bwd_j, &g2_j] {
            let s = Sequent::new(j.context.clone(), j.conclusion.clone());
            assert!(
                oracle::eci_provable(&s).unwrap().provable,
                "oracle denies {j}"
            );
        }
    }
    let elapsed = t0.elapsed();
    within(30, elapsed, "criterion 5");
    println!(
        "criterion 5 (label/double-negation equivalence): PASS - 200 formulas, kernel and oracle agree, {elapsed:?} < 30s"
    );
}

// --------------------------------------------------------------------------
// criterion 6: whole-proof translation between the labeled and flavored
// calculi, with judgment endpoints mapped exactly
// --------------------------------------------------------------------------

fn forall_free_formula(f: &Formula) -> bool {
    match f {
        Formula::Atom { .. } | Formula::Bot => true,
        Formula::Bin { lhs, rhs, .. } => forall_free_formula(lhs) && forall_free_formula(rhs),
        Formula::Quant { op, body, .. } => *op != QuantOp::Forall && forall_free_formula(body),
        Formula::CLabel(inner) => forall_free_formula(inner),
    }
}

fn forall_free_proof(p: &Proof) -> bool {
    let mut nodes = Vec::new();
    walk_nodes(p, &mut nodes);
    nodes.iter().all(|n| forall_free_formula(n.conclusion()))
}

/// No label directly on bot or on another label: the fragment where
/// flavoring and unflavoring cancel exactly.
fn label_safe(f: &Formula) -> bool {
    match f {
        Formula::Atom { .. } | Formula::Bot => true,
        Formula::Bin { lhs, rhs, .. } => label_safe(lhs) && label_safe(rhs),
        Formula::Quant { body, .. } => label_safe(body),
        Formula::CLabel(inner) => {
            !matches!(**inner, Formula::Bot | Formula::CLabel(_)) && label_safe(inner)
        }
    }
}

fn map_judgment(
    j: &Judgment,
    f: impl Fn(&Formula) -> Result<Formula, translate::TranslateError>,
) -> Judgment {
    Judgment::new(
        j.context.iter().map(|g| f(g).unwrap()).collect(),
        f(&j.conclusion).unwrap(),
    )
}

#[test]
fn criterion_6_labeled_flavored_round_trip() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6006);

    // bundled corpus first: every forall-free file crosses the bridge
    let mut corpus_crossed = 0usize;
    for (name, header, proof) in corpus_files() {
        if !header.expect_ok || !forall_free_proof(&proof) {
            continue;
        }
        match header.system {
            SystemId::Eci => {
                let q = transform::eci_to_nek(&proof).unwrap();
                let expect = map_judgment(&header.judgment, translate::t_nek);
                assert_eq!(ok_judgment(SystemId::Nek, &q), expect, "{name}");
                corpus_crossed += 1;
            }
            SystemId::Nek => {
                let q = transform::nek_to_eci(&proof).unwrap();
                let expect = map_judgment(&header.judgment, translate::untranslate_nek);
                assert_eq!(ok_judgment(SystemId::Eci, &q), expect, "{name}");
                corpus_crossed += 1;
            }
            _ => {}
        }
    }
    assert!(corpus_crossed >= 8, "only {corpus_crossed} corpus crossings");

    // labeled-to-flavored on generated proofs; the reverse trip must land on
    // the original judgment whenever the image stays quantifier-compatible
    // and the judgment is label-safe
    let mut round_trips = 0usize;
    for _ in 0..100 {
        let p = gen::random_eci_proof(&mut rng, 6);
        let j = ok_judgment(SystemId::Eci, &p);
        let q = transform::eci_to_nek(&p).unwrap();
        assert_eq!(
            ok_judgment(SystemId::Nek, &q),
            map_judgment(&j, translate::t_nek)
        );
        let safe = j
            .context
            .iter()
            .chain(std::iter::once(&j.conclusion))
            .all(label_safe);
        if safe && forall_free_proof(&q) {
            let back = transform::nek_to_eci(&q).unwrap();
            assert_eq!(ok_judgment(SystemId::Eci, &back), j, "round trip drifted");
            round_trips += 1;
        }
    }
    assert!(round_trips >= 50, "only {round_trips} exact round trips");

    // flavored-to-labeled on generated proofs; this direction always returns
    for _ in 0..100 {
        let p = gen::random_nek_proof(&mut rng, 6);
        let j = ok_judgment(SystemId::Nek, &p);
        let q = transform::nek_to_eci(&p).unwrap();
        assert_eq!(
            ok_judgment(SystemId::Eci, &q),
            map_judgment(&j, translate::untranslate_nek)
        );
        let back = transform::eci_to_nek(&q).unwrap();
        assert_eq!(ok_judgment(SystemId::Nek, &back), j, "round trip drifted");
    }

    let elapsed = t0.elapsed();
    within(60, elapsed, "criterion 6");
    println!(
        "criterion 6 (labeled/flavored round trip): PASS - {corpus_crossed} corpus + 200 generated proofs, {round_trips} exact reverse trips, {elapsed:?} < 60s"
    );
}

// --------------------------------------------------------------------------
// criterion 7: non-derivability certificates
// --------------------------------------------------------------------------

#[test]
fn criterion_7_non_derivability_certificates() {
    let t0 = Instant::now();
    let nek = |s: &str| parse_formula(s, SystemId::Nek).unwrap();
    let eci = |s: &str| parse_formula(s, SystemId::Eci).unwrap();

    let cases_nek = [
        (vec![nek("p /\\c p")], nek("p"), false),
        (vec![nek("p"), nek("p ->c q")], nek("q"), false),
        (vec![nek("p /\\c p")], nek("~~p"), true),
    ];
    for (ctx, goal, want) in cases_nek {
        let s = Sequent::new(ctx.clone(), goal.clone());
        let got = oracle::nek_provable(&s).unwrap().provable;
        assert_eq!(got, want, "wrong verdict for {ctx:?} |- {goal}");
    }
    let cases_eci = [
        (vec![eci("(bot)^c")], eci("bot")),
        (vec![eci("bot")], eci("(bot)^c")),
    ];
    for (ctx, goal) in cases_eci {
        let s = Sequent::new(ctx.clone(), goal.clone());
        assert!(
            oracle::eci_provable(&s).unwrap().provable,
            "expected provable: {ctx:?} |- {goal}"
        );
    }
    let elapsed = t0.elapsed();
    within(1, elapsed, "criterion 7");
    println!(
        "criterion 7 (non-derivability certificates): PASS - five exact verdicts, {elapsed:?} < 1s"
    );
}

// --------------------------------------------------------------------------
// criterion 8: the universal detour reduction is sound and shrinking
// --------------------------------------------------------------------------

#[test]
fn criterion_8_universal_detour_reduction() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(8008);
    for i in 0..50 {
        let steps = (i % 4) + 1;
        let p = gen::random_forallc_detour(&mut rng, steps);
        let before = ok_judgment(SystemId::Nek, &p);
        let reduced = transform::forallc_detour_reduce(&p).unwrap();
        let after = ok_judgment(SystemId::Nek, &reduced);
        assert_eq!(before, after, "reduction changed the judgment");
        assert!(
            reduced.node_count() < p.node_count(),
            "reduction failed to shrink: {} -> {}",
            p.node_count(),
            reduced.node_count()
        );
    }
    let elapsed = t0.elapsed();
    within(5, elapsed, "criterion 8");
    println!(
        "criterion 8 (universal detour reduction): PASS - 50 detours reduced, judgments preserved, {elapsed:?} < 5s"
    );
}
