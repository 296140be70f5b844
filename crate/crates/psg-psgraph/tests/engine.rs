mod support;

use std::sync::Arc;

use proptest::prelude::*;
use psg_goaltype::{Env, EnvVal};
use psg_kernel::{parse_goal, parse_term, Label};
use psg_psgraph::{to_jsonl, Bundle, EvalState, Mode, RunOutcome, Status, StepOutcome, Tag};
use psg_tactics::{label_text, Registry};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use support::gen::{random_goal, random_graph};

fn reg() -> Arc<Registry> {
    Arc::new(Registry::standard())
}

fn bundle(v: serde_json::Value) -> Arc<Bundle> {
    Arc::new(Bundle::load_str(&v.to_string(), reg()).unwrap())
}

fn start(b: &Arc<Bundle>, goal: &str, mode: Mode) -> EvalState {
    EvalState::init(b.clone(), parse_goal(goal).unwrap(), Env::new(), mode).unwrap()
}

fn demo() -> Arc<Bundle> {
    bundle(json!({
        "main": "demo",
        "graphs": {"demo": {"inputs": 1, "outputs": 1,
            "nodes": [{"id": "all", "kind": "atomic", "tactic": "forall_tac"},
                      {"id": "conj", "kind": "atomic", "tactic": "conj_tac"}],
            "wires": [{"id": "w0", "src": "in:0", "dst": "all", "goaltype": "c(forall)"},
                      {"id": "w1", "src": "all", "dst": "conj", "goaltype": "c(conj)"},
                      {"id": "w2", "src": "conj", "dst": "out:0"}]}}
    }))
}

fn labels(st: &EvalState) -> Vec<String> {
    st.goals().iter().map(|(_, t, _)| label_text(&t.pname)).collect()
}

#[test]
fn forall_then_conj_walkthrough() {
    let b = demo();
    let mut st = start(&b, "|- !a. (a => a) /\\ (B => B)", Mode::Automatic);
    assert_eq!(st.goals()[0].1.wire, "w0");
    st.step().unwrap();
    assert_eq!(st.goals()[0].1.wire, "w1");
    st.step().unwrap();
    assert_eq!(*st.status(), Status::Done);
    let goals: Vec<String> = st.goals().iter().map(|(_, _, p)| p.goal.to_string()).collect();
    assert_eq!(goals, ["|- a => a", "|- B => B"]);
    assert!(st.goals().iter().all(|(_, t, _)| t.wire == "w2"));
    assert!(matches!(st.run(), RunOutcome::Open(gs) if gs.len() == 2));
}

#[test]
fn init_failure_on_unmatched_input() {
    let b = demo();
    let st = start(&b, "|- A", Mode::Automatic);
    assert!(matches!(st.status(), Status::Failed(_)));
    let ev = st.log();
    assert_eq!(ev[0].tag, Tag::GOALTYPE);
    assert_eq!(ev[1].tag, Tag::FAILURE);
}

#[test]
fn two_inputs_two_branches_in_wire_order() {
    let b = bundle(json!({
        "main": "m",
        "graphs": {"m": {"inputs": 2, "outputs": 2, "nodes": [],
            "wires": [{"id": "a", "src": "in:0", "dst": "out:0", "goaltype": "c(conj)"},
                      {"id": "b", "src": "in:1", "dst": "out:1"}]}}
    }));
    let mut st = start(&b, "|- A /\\ B", Mode::Automatic);
    assert_eq!(st.last_branches().len(), 2);
    assert_eq!(st.goals()[0].1.wire, "a");
    st.backtrack().unwrap();
    assert_eq!(st.goals()[0].1.wire, "b");
    assert!(st.backtrack().is_err());
}

fn conj_imp() -> Arc<Bundle> {
    bundle(json!({
        "main": "top",
        "graphs": {
            "top": {"inputs": 1, "outputs": 1,
                "nodes": [{"id": "ci", "kind": "graph", "graph": "conj_imp"}],
                "wires": [{"id": "t0", "src": "in:0", "dst": "ci"},
                          {"id": "t1", "src": "ci", "dst": "out:0", "goaltype": "has_hyp(concl)"}]},
            "conj_imp": {"inputs": 1, "outputs": 2,
                "nodes": [{"id": "conj", "kind": "atomic", "tactic": "conj_tac"},
                          {"id": "imp", "kind": "atomic", "tactic": "strip_imp_concl_tac"}],
                "wires": [{"id": "n0", "src": "in:0", "dst": "conj"},
                          {"id": "n1", "src": "conj", "dst": "imp", "goaltype": "c(implies)"},
                          {"id": "n2", "src": "conj", "dst": "out:0", "goaltype": "!c(implies)"},
                          {"id": "n3", "src": "imp", "dst": "out:1"}]}}
    }))
}

#[test]
fn nested_graph_tactic() {
    let b = conj_imp();
    let mut st = start(&b, "B |- B /\\ (A => A)", Mode::Automatic);
    let mut rules = vec![];
    while *st.status() == Status::Running {
        match st.step().unwrap() {
            StepOutcome::Moved { rule, .. } => rules.push(rule),
            o => panic!("{o:?}"),
        }
        st.check_conservation().unwrap();
    }
    assert_eq!(rules, ["graph", "atomic", "atomic", "exit"]);
    let goals: Vec<String> = st.goals().iter().map(|(_, _, p)| p.goal.to_string()).collect();
    assert_eq!(goals, ["B |- B", "B, A |- A"]);
    assert!(st.goals().iter().all(|(d, t, _)| *d == 0 && t.wire == "t1"));
}

#[test]
fn step_over_runs_a_graph_tactic_as_one_unit() {
    let b = conj_imp();
    let mut st = start(&b, "B |- B /\\ (A => A)", Mode::Interactive);
    st.step_over().unwrap();
    assert_eq!(st.steps(), 4);
    assert_eq!(st.frames().len(), 1);
    assert_eq!(*st.status(), Status::Done);
}

#[test]
fn graph_tactic_scopes_environment() {
    let b = bundle(json!({
        "main": "top",
        "graphs": {
            "top": {"inputs": 1, "outputs": 1,
                "nodes": [{"id": "g", "kind": "graph", "graph": "inner", "args": ["?a"]}],
                "wires": [{"id": "t0", "src": "in:0", "dst": "g"}, {"id": "t1", "src": "g", "dst": "out:0"}]},
            "inner": {"inputs": 1, "outputs": 1,
                "nodes": [{"id": "b1", "kind": "atomic", "tactic": "ENV_all_asms", "args": ["?a"]},
                          {"id": "b2", "kind": "atomic", "tactic": "ENV_all_asms", "args": ["?c"]}],
                "wires": [{"id": "i0", "src": "in:0", "dst": "b1"}, {"id": "i1", "src": "b1", "dst": "b2"},
                          {"id": "i2", "src": "b2", "dst": "out:0"}]}}
    }));
    let mut env = Env::new();
    env.insert("?a".into(), EnvVal::T(parse_term("C").unwrap()));
    env.insert("?b".into(), EnvVal::T(parse_term("D").unwrap()));
    let mut st = EvalState::init(b, parse_goal("A, B |- A").unwrap(), env, Mode::Automatic).unwrap();
    st.step().unwrap();
    let inner = st.pnode(&Label::root()).unwrap().env.clone();
    assert_eq!(inner.keys().collect::<Vec<_>>(), ["?a"]);
    st.run();
    let env = &st.pnode(&Label::root()).unwrap().env;
    assert_eq!(env.keys().collect::<Vec<_>>(), ["?a", "?b"]);
    assert_eq!(env["?a"].to_string(), "[A, B]");
    assert_eq!(env["?b"].to_string(), "D");
}

#[test]
fn identity_branch_count_matches_satisfying_wires() {
    let b = bundle(json!({
        "main": "m",
        "graphs": {"m": {"inputs": 1, "outputs": 4,
            "nodes": [{"id": "i", "kind": "identity"}],
            "wires": [{"id": "w", "src": "in:0", "dst": "i"},
                      {"id": "a", "src": "i", "dst": "out:0", "goaltype": "c(conj)"},
                      {"id": "b", "src": "i", "dst": "out:1", "goaltype": "c(disj)"},
                      {"id": "c", "src": "i", "dst": "out:2"},
                      {"id": "d", "src": "i", "dst": "out:3", "goaltype": "!c(disj)"}]}}
    }));
    for (goal, n) in [("|- A /\\ B", 3), ("|- A \\/ B", 2), ("|- A", 2)] {
        let mut st = start(&b, goal, Mode::Automatic);
        assert_eq!(st.step().unwrap(), StepOutcome::Moved { rule: "identity", branches: n }, "{goal}");
    }
}

#[test]
fn atomic_branch_count_is_a_product() {
    let b = bundle(json!({
        "main": "m",
        "graphs": {"m": {"inputs": 1, "outputs": 3,
            "nodes": [{"id": "c", "kind": "atomic", "tactic": "conj_tac"}],
            "wires": [{"id": "w", "src": "in:0", "dst": "c"},
                      {"id": "x", "src": "c", "dst": "out:0"},
                      {"id": "y", "src": "c", "dst": "out:1", "goaltype": "c(implies)"},
                      {"id": "z", "src": "c", "dst": "out:2", "goaltype": "c(conj)"}]}}
    }));
    // A => A fits x and y, B /\ C fits x and z, D fits x only
    for (goal, n) in [("|- (A => A) /\\ (B /\\ C)", 4), ("|- (A => A) /\\ D", 2), ("|- D /\\ D", 1)] {
        let mut st = start(&b, goal, Mode::Automatic);
        assert_eq!(st.step().unwrap(), StepOutcome::Moved { rule: "atomic", branches: n }, "{goal}");
    }
}

#[test]
fn unmatched_subgoal_fails_the_step() {
    let b = bundle(json!({
        "main": "m",
        "graphs": {"m": {"inputs": 1, "outputs": 1,
            "nodes": [{"id": "c", "kind": "atomic", "tactic": "conj_tac"}],
            "wires": [{"id": "w", "src": "in:0", "dst": "c"},
                      {"id": "x", "src": "c", "dst": "out:0", "goaltype": "c(implies)"}]}}
    }));
    let mut st = start(&b, "|- (A => A) /\\ B", Mode::Automatic);
    assert_eq!(st.step().unwrap(), StepOutcome::Failed);
    let last = st.log().last().unwrap();
    assert_eq!(last.tag, Tag::FAILURE);
    assert!(last.text.starts_with("Fail to match any output wire of c for goal node: [Goal 2 : |- B]"), "{}", last.text);
    assert!(st.step().is_err());
}

#[test]
fn tactic_failure_backtracks() {
    // the first branch leads into fail_tac, the second proves the goal
    let b = bundle(json!({
        "main": "m",
        "graphs": {"m": {"inputs": 1, "outputs": 0,
            "nodes": [{"id": "i", "kind": "identity"},
                      {"id": "bad", "kind": "atomic", "tactic": "fail_tac"},
                      {"id": "t", "kind": "atomic", "tactic": "t_tac"}],
            "wires": [{"id": "w", "src": "in:0", "dst": "i"},
                      {"id": "a", "src": "i", "dst": "bad"},
                      {"id": "b", "src": "i", "dst": "t"}]}}
    }));
    let mut st = start(&b, "|- T", Mode::Automatic);
    assert!(matches!(st.run(), RunOutcome::Proved(th) if th.concl().to_string() == "T"));
    assert_eq!(st.backtracks(), 1);
}

#[test]
fn choose_and_its_errors() {
    let b = bundle(json!({
        "main": "m",
        "graphs": {"m": {"inputs": 1, "outputs": 2,
            "nodes": [{"id": "i", "kind": "identity"}],
            "wires": [{"id": "w", "src": "in:0", "dst": "i"},
                      {"id": "a", "src": "i", "dst": "out:0"},
                      {"id": "b", "src": "i", "dst": "out:1"}]}}
    }));
    let mut st = start(&b, "|- A", Mode::Interactive);
    assert!(st.choose(2).is_err());
    st.step().unwrap();
    assert_eq!(st.goals()[0].1.wire, "a");
    st.choose(2).unwrap();
    assert_eq!(st.goals()[0].1.wire, "b");
    assert!(st.choose(3).is_err());
}

#[test]
fn breakpoints_park_in_debug_and_step_over_in_interactive() {
    let b = demo();
    let mut st = start(&b, "|- !a. (a => a) /\\ (B => B)", Mode::Debug);
    assert!(st.toggle_breakpoint("w1").unwrap());
    st.step().unwrap();
    assert_eq!(*st.status(), Status::Parked);
    assert!(st.terminated(Mode::Debug));
    assert!(!st.terminated(Mode::Automatic));
    assert!(st.step().is_err());

    assert!(matches!(st.run(), RunOutcome::Parked));
    assert_eq!(st.mode(), Mode::Interactive);
    let before = (st.plan().opengs.clone(), st.plan().gstate.open_labels());
    assert_eq!(st.step().unwrap(), StepOutcome::Moved { rule: "breakpoint", branches: 1 });
    assert_eq!(st.goals()[0].1.wire, "w1#bp");
    let after = (st.plan().opengs.clone(), st.plan().gstate.open_labels());
    assert_eq!(format!("{:?}", before), format!("{:?}", after));
    assert_eq!(st.step().unwrap(), StepOutcome::Moved { rule: "atomic", branches: 1 });
    assert_eq!(*st.status(), Status::Done);
}

#[test]
fn removing_a_breakpoint_moves_goals_back() {
    let b = demo();
    let mut st = start(&b, "|- !a. (a => a) /\\ (B => B)", Mode::Interactive);
    st.toggle_breakpoint("w1").unwrap();
    st.step().unwrap();
    st.step().unwrap();
    assert_eq!(st.goals()[0].1.wire, "w1#bp");
    assert!(!st.toggle_breakpoint("w1").unwrap());
    assert_eq!(st.goals()[0].1.wire, "w1");
    assert_eq!(st.bundle().doc(), b.doc());
    st.check_conservation().unwrap();
}

#[test]
fn mode_switch_reevaluates_termination() {
    let b = demo();
    let mut st = start(&b, "|- !a. (a => a) /\\ (B => B)", Mode::Interactive);
    st.toggle_breakpoint("w1").unwrap();
    st.step().unwrap();
    assert_eq!(*st.status(), Status::Running);
    st.set_mode(Mode::Debug);
    assert_eq!(*st.status(), Status::Parked);
    st.set_mode(Mode::Automatic);
    assert!(matches!(st.run(), RunOutcome::Open(_)));
}

#[test]
fn goal_behind_another_goal_is_at_rest() {
    let b = bundle(json!({
        "main": "m",
        "graphs": {"m": {"inputs": 1, "outputs": 1,
            "nodes": [{"id": "c", "kind": "atomic", "tactic": "conj_tac"},
                      {"id": "t", "kind": "atomic", "tactic": "all_tac"}],
            "wires": [{"id": "w", "src": "in:0", "dst": "c"},
                      {"id": "x", "src": "c", "dst": "t"},
                      {"id": "y", "src": "t", "dst": "out:0"}]}}
    }));
    let mut st = start(&b, "|- A /\\ B", Mode::Interactive);
    st.step().unwrap();
    assert_eq!(labels(&st), ["1", "2"]);
    assert!(!st.terminated(Mode::Automatic));
    st.step().unwrap();
    // goal 2 waits behind nobody now, goal 1.1 is on the output
    assert!(!st.terminated(Mode::Automatic));
    st.step().unwrap();
    assert!(st.terminated(Mode::Automatic));
}

#[test]
fn lemma_logging_shape() {
    let b = bundle(json!({
        "main": "m",
        "graphs": {"m": {"inputs": 1, "outputs": 2,
            "nodes": [{"id": "l", "kind": "atomic", "tactic": "lemma_tac", "args": ["?g"]}],
            "wires": [{"id": "w", "src": "in:0", "dst": "l"},
                      {"id": "a", "src": "l", "dst": "out:0", "goaltype": "is_goal(?g)"},
                      {"id": "b", "src": "l", "dst": "out:1", "goaltype": "!is_goal(?g)"}]}}
    }));
    let mut env = Env::new();
    env.insert("?g".into(), EnvVal::T(parse_term("B").unwrap()));
    let mut st = EvalState::init(b, parse_goal("A |- C").unwrap(), env, Mode::Automatic).unwrap();
    st.step().unwrap();
    let ev: Vec<_> = st.log().iter().filter(|e| e.step == 1).collect();
    let tags: Vec<Tag> = ev.iter().map(|e| e.tag).collect();
    use Tag::*;
    assert_eq!(
        tags,
        [ENV_DATA, GOAL, GOALTYPE, SUCCESS, GOALTYPE, FAILURE, GOALTYPE, FAILURE, GOALTYPE, SUCCESS, EVAL]
    );
    assert_eq!(ev[0].text, "?g: B");
    assert_eq!(ev[1].text, "Open goals\n   [Goal 1] A |- B\n   [Goal 2] A, B |- C");
    assert_eq!(ev[2].text, "evaluating is_goal(?g) with pnode 1 env ?g => B");
    assert_eq!(ev[4].text, "evaluating !is_goal(?g) with pnode 1 env ?g => B");
    assert_eq!(ev[10].text, "Branch(goals on the output edges): | 1 | 2 |");
    let only = psg_psgraph::filter(st.log(), &[GOALTYPE]);
    assert!(only.iter().all(|e| e.tag == GOALTYPE));
    assert_eq!(only.len(), 4 + st.log().iter().filter(|e| e.step == 0 && e.tag == GOALTYPE).count());
}

fn trace(b: &Arc<Bundle>, goal: &str) -> String {
    let mut st = start(b, goal, Mode::Automatic);
    st.run();
    to_jsonl(st.log())
}

#[test]
fn runs_are_deterministic() {
    let b = conj_imp();
    let t1 = trace(&b, "B |- B /\\ (A => A)");
    assert_eq!(t1, trace(&b, "B |- B /\\ (A => A)"));
    assert!(t1.lines().count() > 10);
}

#[test]
fn nesting_limit() {
    let b = bundle(json!({
        "main": "r",
        "graphs": {"r": {"inputs": 1, "outputs": 1,
            "nodes": [{"id": "g", "kind": "graph", "graph": "r"}],
            "wires": [{"id": "w", "src": "in:0", "dst": "g"}, {"id": "o", "src": "g", "dst": "out:0"}]}}
    }));
    let mut st = start(&b, "|- A", Mode::Automatic);
    st.max_frames = 8;
    match st.run() {
        RunOutcome::Failed(m) => assert!(m.contains("nesting limit of 8"), "{m}"),
        o => panic!("{o:?}"),
    }
}

#[test]
fn conservation_fuzz() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut steps = 0;
    let mut graphs = 0;
    while steps < 1500 {
        let main = random_graph(&mut rng, true);
        let sub = random_graph(&mut rng, false);
        let doc = json!({"main": "main", "graphs": {"main": main, "sub": sub}});
        let Ok(b) = Bundle::load_str(&doc.to_string(), reg()) else { continue };
        let b = Arc::new(b);
        graphs += 1;
        for mode in [Mode::Automatic, Mode::Debug] {
            let goal = random_goal(&mut rng);
            let mut st = EvalState::init(b.clone(), parse_goal(&goal).unwrap(), Env::new(), mode).unwrap();
            st.check_conservation().unwrap();
            for _ in 0..40 {
                if *st.status() == Status::Parked {
                    st.set_mode(Mode::Interactive);
                }
                if *st.status() != Status::Running {
                    break;
                }
                st.step().unwrap();
                steps += 1;
                if let Err(e) = st.check_conservation() {
                    panic!("{e}\n{doc}\n{goal}");
                }
            }
        }
    }
    assert!(graphs > 10);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn breakpoint_crossing_is_neutral(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let goal = random_goal(&mut rng);
        let b = bundle(json!({
            "main": "m",
            "graphs": {"m": {"inputs": 1, "outputs": 1,
                "nodes": [{"id": "e", "kind": "atomic", "tactic": "ENV_all_asms", "args": ["?h"]}],
                "wires": [{"id": "w", "src": "in:0", "dst": "e"}, {"id": "o", "src": "e", "dst": "out:0"}]}}
        }));
        let mut st = start(&b, &goal, Mode::Interactive);
        st.toggle_breakpoint("o").unwrap();
        st.step().unwrap();
        let before = format!("{:?}", st.plan());
        prop_assert_eq!(st.step().unwrap(), StepOutcome::Moved { rule: "breakpoint", branches: 1 });
        prop_assert_eq!(before, format!("{:?}", st.plan()));
    }

    #[test]
    fn automatic_termination_implies_debug_termination(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let doc = json!({"main": "main", "graphs": {"main": random_graph(&mut rng, false)}});
        if let Ok(b) = Bundle::load_str(&doc.to_string(), reg()) {
            let mut st = EvalState::init(Arc::new(b), parse_goal(&random_goal(&mut rng)).unwrap(), Env::new(), Mode::Interactive).unwrap();
            for _ in 0..20 {
                if st.terminated(Mode::Automatic) {
                    prop_assert!(st.terminated(Mode::Debug));
                }
                let parked = st.goals().iter().any(|(_, t, _)| {
                    let w = st.bundle().main_graph().wire(&t.wire).unwrap();
                    w.dst.node().is_some_and(|n| st.bundle().main_graph().nodes[n] == psg_psgraph::NodeKind::Breakpoint)
                });
                if st.terminated(Mode::Debug) && !st.terminated(Mode::Automatic) {
                    prop_assert!(parked);
                }
                if *st.status() != Status::Running || st.step().is_err() {
                    break;
                }
            }
        }
    }
}
