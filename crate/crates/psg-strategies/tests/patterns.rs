use std::sync::Arc;

use psg_goaltype::{Env, EnvVal};
use psg_kernel::{parse_goal, parse_term};
use psg_psgraph::{Bundle, EvalState, Mode, RunOutcome};
use psg_strategies::patterns::{instantiate, PATTERNS};
use psg_strategies::StrategyError;

fn run(b: Bundle, goal: &str, var: &str, term: &str) -> RunOutcome {
    let mut env = Env::new();
    env.insert(var.into(), EnvVal::T(parse_term(term).unwrap()));
    let mut st = EvalState::init(Arc::new(b), parse_goal(goal).unwrap(), env, Mode::Automatic).unwrap();
    st.run()
}

fn open_goals(out: &RunOutcome) -> Vec<String> {
    match out {
        RunOutcome::Open(ps) => ps.iter().map(|p| p.goal.to_string()).collect(),
        other => panic!("expected open goals, got {other:?}"),
    }
}

#[test]
fn lemma_then1_closes_both_branches() {
    let src = psg_strategies::load("patterns").unwrap();
    let b = instantiate(&src, "LEMMA_THEN1", &[("config_tac", "concl_in_asms_tac"), ("config_thm_tac", "concl_in_asms_tac")]).unwrap();
    assert_eq!(b.doc().graphs.keys().collect::<Vec<_>>(), ["LEMMA_THEN1", "lemma_then1"]);
    match run(b, "A, B |- A", "?g", "B") {
        RunOutcome::Proved(th) => assert_eq!(th.concl().to_string(), "A"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn case_thenlist_routes_by_hypothesis() {
    let src = psg_strategies::load("patterns").unwrap();
    let b = instantiate(&src, "CASE_THENLIST", &[("config_tac1", "concl_in_asms_tac"), ("config_tac2", "all_tac")]).unwrap();
    assert_eq!(open_goals(&run(b, "|- A", "?case", "A")), ["~A |- A"]);
}

#[test]
fn drop_asm_after_a_lemma() {
    let src = psg_strategies::load("patterns").unwrap();
    let b = instantiate(&src, "DROP_ASM", &[("config_thm_tac", "lemma_tac")]).unwrap();
    let mut goals = open_goals(&run(b, "A, B |- A", "?hyp", "B"));
    goals.sort();
    assert_eq!(goals, ["A |- A", "A |- B"]);
}

#[test]
fn instantiation_errors() {
    let src = psg_strategies::load("patterns").unwrap();
    assert!(matches!(
        instantiate(&src, "LEMMA_THEN1", &[("config_tac", "all_tac")]),
        Err(StrategyError::MissingReplacement(t)) if t == "config_thm_tac"
    ));
    assert!(matches!(instantiate(&src, "LEMMA_THEN1", &[("conj_tac", "all_tac")]), Err(StrategyError::NotPlaceholder(_))));
    assert!(matches!(instantiate(&src, "NOPE", &[]), Err(StrategyError::UnknownPattern(_))));
    // graphs of other patterns do not leak into the instance
    for p in PATTERNS {
        let repl: Vec<(&str, &str)> = psg_tactics::PLACEHOLDERS.iter().map(|k| (*k, "all_tac")).collect();
        let b = instantiate(&src, p, &repl).unwrap();
        assert_eq!(b.doc().graphs.len(), 2, "{p}");
    }
}

#[test]
fn input_wire_needs_the_term() {
    let src = psg_strategies::load("patterns").unwrap();
    let b = instantiate(&src, "CASE_THENLIST", &[("config_tac1", "all_tac"), ("config_tac2", "all_tac")]).unwrap();
    let mut st = EvalState::init(Arc::new(b), parse_goal("|- A").unwrap(), Env::new(), Mode::Automatic).unwrap();
    match st.run() {
        RunOutcome::Failed(m) => assert!(m.starts_with("Fail to match any input of graph CASE_THENLIST"), "{m}"),
        other => panic!("{other:?}"),
    }
    assert_eq!(st.steps(), 0);
}
