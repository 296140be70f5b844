use std::sync::Arc;

use psg_goaltype::{Env, EnvVal};
use psg_kernel::{parse_goal, parse_term};
use psg_psgraph::{to_jsonl, EvalState, Mode, RunOutcome, Tag};
use psg_strategies::taut;

fn start(name: &str, goal: &str, env: Env) -> EvalState {
    let b = Arc::new(psg_strategies::load(name).unwrap());
    EvalState::init(b, parse_goal(goal).unwrap(), env, Mode::Automatic).unwrap()
}

#[test]
fn lemma_log_event_shape() {
    let mut env = Env::new();
    env.insert("?g".into(), EnvVal::T(parse_term("B").unwrap()));
    let mut st = start("lemma_log", "A |- C", env);
    st.step().unwrap();
    let ev: Vec<_> = st.log().iter().filter(|e| e.step == 1).collect();
    use Tag::*;
    assert_eq!(
        ev.iter().map(|e| e.tag).collect::<Vec<_>>(),
        [ENV_DATA, GOAL, GOALTYPE, SUCCESS, GOALTYPE, FAILURE, GOALTYPE, FAILURE, GOALTYPE, SUCCESS, EVAL]
    );
    assert_eq!(ev[10].text, "Branch(goals on the output edges): | 1 | 2 |");
    assert_eq!(ev[0].to_string(), "> ENV_DATA : ?g: B");
    assert_eq!(ev[3].to_string(), "> SUCCESS");
}

#[test]
fn demo_fixture() {
    let mut st = start("demo", "|- !a. (a => a) /\\ (B => B)", Env::new());
    match st.run() {
        RunOutcome::Open(gs) => {
            let gs: Vec<String> = gs.iter().map(|p| p.goal.to_string()).collect();
            assert_eq!(gs, ["|- a => a", "|- B => B"]);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn traces_are_byte_identical() {
    let once = || {
        let mut st = start("taut_final", "|- ((A => B) => A) => A", Env::new());
        st.run();
        to_jsonl(st.log())
    };
    let a = once();
    assert!(a.len() > 1000);
    assert_eq!(a, once());
}

#[test]
fn proved_fixtures_give_the_goal() {
    for v in taut::VERSIONS {
        let b = Arc::new(psg_strategies::load(v).unwrap());
        let g = parse_goal("|- A /\\ B => B /\\ A").unwrap();
        let th = taut::prove(b, g.clone()).unwrap().unwrap();
        assert!(th.concl().aconv(&g.concl), "{v}");
        assert!(th.hyps().is_empty());
    }
}
