use std::io::{BufRead, BufReader, Write};
use std::net::TcpStream;
use std::sync::{mpsc, Arc};

use psg_service::{serve_lines, serve_tcp, Service, Snapshot};
use serde_json::{json, Value};

struct Client {
    svc: Service,
}

impl Client {
    fn new() -> Client {
        Client { svc: Service::new() }
    }

    /// Send a request; returns the reply and the snapshot event, if any.
    fn send(&self, req: Value) -> (Value, Option<Snapshot>) {
        let mut out = self.svc.handle(&req);
        assert!(out.len() <= 2);
        let snap = (out.len() == 2).then(|| {
            let ev = out.pop().unwrap();
            assert_eq!(ev["event"], "snapshot");
            serde_json::from_value(ev["snapshot"].clone()).unwrap()
        });
        (out.pop().unwrap(), snap)
    }

    fn ok(&self, req: Value) -> (Value, Option<Snapshot>) {
        let (r, s) = self.send(req.clone());
        assert_eq!(r["ok"], true, "{req} -> {r}");
        (r, s)
    }

    fn err(&self, req: Value) -> String {
        let (r, s) = self.send(req.clone());
        assert_eq!(r["ok"], false, "{req} -> {r}");
        assert!(s.is_none());
        r["err"].as_str().unwrap().to_string()
    }

    fn snapshot(&self, sid: &str) -> Snapshot {
        let (r, _) = self.ok(json!({"cmd": "get_snapshot", "session": sid}));
        serde_json::from_value(r["result"]["snapshot"].clone()).unwrap()
    }
}

fn open(c: &Client, fixture: &str) -> String {
    let (r, s) = c.ok(json!({"v": "psg/1", "cmd": "load_graph", "fixture": fixture}));
    assert_eq!(r["v"], "psg/1");
    assert!(!s.unwrap().initialised);
    r["session"].as_str().unwrap().to_string()
}

#[test]
fn init_puts_the_goal_on_the_input_wire() {
    let c = Client::new();
    let s = open(&c, "taut_final");
    let (_, snap) = c.ok(json!({"cmd": "init", "session": s, "goal": "|- A /\\ B => B /\\ A", "mode": "debug"}));
    let snap = snap.unwrap();
    assert_eq!(snap.mode, psg_psgraph::Mode::Debug);
    assert_eq!(snap.path, ["simple_taut"]);
    assert_eq!(snap.goals.len(), 1);
    assert_eq!(snap.goals[0].concl, "A /\\ B => B /\\ A");
    let w = snap.graph.wires.iter().find(|w| w.id == snap.goals[0].wire).unwrap();
    assert_eq!(w.src, "in:0");
    assert_eq!(w.goals, ["root"]);
}

#[test]
fn step_after_termination_is_refused() {
    let c = Client::new();
    let s = open(&c, "demo");
    c.ok(json!({"cmd": "init", "session": s, "goal": "|- !a. (a => a) /\\ (B => B)"}));
    let (r, _) = c.ok(json!({"cmd": "run", "session": s}));
    assert_eq!(r["result"]["outcome"], "open");
    assert_eq!(c.err(json!({"cmd": "step", "session": s})), "invalid-in-mode");
    assert!(c.snapshot(&s).terminated);
}

#[test]
fn breakpoint_then_debug_run_parks() {
    let c = Client::new();
    let s = open(&c, "demo");
    let (r, snap) = c.ok(json!({"cmd": "toggle_breakpoint", "session": s, "wire": "mid"}));
    assert_eq!(r["result"]["on"], true);
    assert_eq!(snap.unwrap().breakpoints, ["demo/mid"]);
    c.ok(json!({"cmd": "init", "session": s, "goal": "|- !a. (a => a) /\\ (B => B)", "mode": "debug"}));
    let (r, snap) = c.ok(json!({"cmd": "run", "session": s}));
    assert_eq!(r["result"]["outcome"], "parked");
    let snap = snap.unwrap();
    assert!(snap.terminated);
    assert!(snap.parked);
    assert_eq!(snap.goals.len(), 1);
    assert_eq!(snap.goals[0].wire, "mid");
    // interactive stepping crosses the breakpoint
    let (r, snap) = c.ok(json!({"cmd": "step", "session": s}));
    assert_eq!(r["result"]["outcome"], "moved");
    assert_eq!(snap.unwrap().goals[0].wire, "mid#bp");
}

#[test]
fn snapshot_round_trip() {
    let c = Client::new();
    let s = open(&c, "taut_final");
    c.ok(json!({"cmd": "init", "session": s, "goal": "|- A => A /\\ A", "mode": "interactive"}));
    let (_, ev) = c.ok(json!({"cmd": "step", "session": s}));
    let a = c.snapshot(&s);
    assert_eq!(ev.unwrap(), a);
    assert_eq!(a, c.snapshot(&s));
    let text = serde_json::to_string(&a).unwrap();
    assert_eq!(serde_json::from_str::<Snapshot>(&text).unwrap(), a);
}

#[test]
fn error_codes() {
    let c = Client::new();
    assert_eq!(c.err(json!({"cmd": "step", "session": "nope"})), "unknown-session");
    assert_eq!(c.err(json!({"cmd": "dance", "session": "nope"})), "bad-request");
    assert_eq!(c.err(json!({"cmd": "step"})), "bad-request");
    assert_eq!(c.err(json!({"v": "psg/0", "cmd": "step", "session": "x"})), "bad-request");
    assert_eq!(c.err(json!({"cmd": "load_graph", "fixture": "nope"})), "parse");
    let s = open(&c, "demo");
    assert_eq!(c.err(json!({"cmd": "step", "session": s})), "invalid-in-mode");
    assert_eq!(c.err(json!({"cmd": "init", "session": s, "goal": "|- A /\\"})), "parse");
    assert_eq!(c.err(json!({"cmd": "init", "session": s, "goal": "|- A", "mode": "fast"})), "parse");
    assert_eq!(c.err(json!({"cmd": "toggle_breakpoint", "session": s, "wire": "nowhere"})), "graph");
    c.ok(json!({"cmd": "init", "session": s, "goal": "|- A /\\ B", "mode": "interactive"}));
    let edit = json!({"op": "set_goaltype", "graph": "demo", "wire": "out", "goaltype": "any"});
    assert_eq!(c.err(json!({"cmd": "edit_graph", "session": s, "edit": edit})), "edit-while-running");
    assert_eq!(c.err(json!({"cmd": "choose_branch", "session": s, "k": 2})), "invalid-in-mode");
    assert_eq!(c.err(json!({"cmd": "set_log_filter", "session": s, "tags": "NOISE"})), "parse");
    let lines = c.svc.handle_line("{not json");
    assert_eq!(serde_json::from_str::<Value>(&lines[0]).unwrap()["err"], "bad-request");
}

#[test]
fn build_a_graph_by_edits() {
    let c = Client::new();
    let empty = json!({"main": "m", "graphs": {"m": {"inputs": 1, "outputs": 1}}});
    let (r, _) = c.ok(json!({"cmd": "load_graph", "session": "ed", "bundle": empty}));
    assert_eq!(r["session"], "ed");
    let edits = [
        json!({"op": "add_node", "graph": "m", "node": {"id": "c", "kind": "atomic", "tactic": "conj_tac"}}),
        json!({"op": "add_wire", "graph": "m", "wire": {"id": "w0", "src": "in:0", "dst": "c"}}),
        json!({"op": "add_wire", "graph": "m", "wire": {"id": "w1", "src": "c", "dst": "out:0"}}),
        json!({"op": "set_goaltype", "graph": "m", "wire": "w0", "goaltype": "c(conj)"}),
    ];
    for e in edits {
        c.ok(json!({"cmd": "edit_graph", "session": "ed", "edit": e}));
    }
    let bad = json!({"op": "add_wire", "graph": "m", "wire": {"id": "w2", "src": "c", "dst": "out:0", "goaltype": "c("}});
    assert_eq!(c.err(json!({"cmd": "edit_graph", "session": "ed", "edit": bad})), "graph");
    c.ok(json!({"cmd": "init", "session": "ed", "goal": "|- A /\\ B"}));
    let (r, _) = c.ok(json!({"cmd": "run", "session": "ed"}));
    assert_eq!(r["result"]["goals"], json!(["|- A", "|- B"]));
    // reset allows editing again
    c.ok(json!({"cmd": "reset", "session": "ed"}));
    c.ok(json!({"cmd": "edit_graph", "session": "ed", "edit": {"op": "delete", "graph": "m", "id": "w1"}}));
    assert_eq!(c.err(json!({"cmd": "init", "session": "ed", "goal": "|- A /\\ B"})), "graph");
}

#[test]
fn sessions_are_isolated_and_closable() {
    let c = Client::new();
    let a = open(&c, "demo");
    let b = open(&c, "demo");
    assert_ne!(a, b);
    c.ok(json!({"cmd": "init", "session": a, "goal": "|- !a. a /\\ a", "mode": "interactive"}));
    c.ok(json!({"cmd": "step", "session": a}));
    assert_eq!(c.snapshot(&a).steps, 1);
    assert!(!c.snapshot(&b).initialised);
    let (_, ev) = c.ok(json!({"cmd": "close", "session": a}));
    assert!(ev.is_none());
    assert_eq!(c.svc.session_ids(), [b.clone()]);
    assert_eq!(c.err(json!({"cmd": "get_snapshot", "session": a})), "unknown-session");
}

#[test]
fn log_filter_and_env_and_choices() {
    let c = Client::new();
    let s = open(&c, "lemma_log");
    c.ok(json!({"cmd": "set_log_filter", "session": s, "tags": "GOALTYPE"}));
    c.ok(json!({"cmd": "init", "session": s, "goal": "A |- C", "env": {"g": "B"}, "mode": "interactive"}));
    let (_, snap) = c.ok(json!({"cmd": "step", "session": s}));
    let snap = snap.unwrap();
    assert!(snap.log.iter().all(|e| e.tag == psg_psgraph::Tag::GOALTYPE));
    assert!(snap.goals.iter().all(|g| g.env["?g"] == "B"));
    assert_eq!(snap.branches.len(), 1);
    c.ok(json!({"cmd": "choose_branch", "session": s, "k": 1}));
    c.ok(json!({"cmd": "set_log_filter", "session": s, "tags": ""}));
    assert!(c.snapshot(&s).log.iter().any(|e| e.tag == psg_psgraph::Tag::ENV_DATA));
}

#[test]
fn unsubscribed_sessions_get_no_events() {
    let c = Client::new();
    let (r, ev) = c.ok(json!({"cmd": "load_graph", "fixture": "demo", "subscribe": false}));
    assert!(ev.is_none());
    let s = r["session"].as_str().unwrap();
    let (_, ev) = c.ok(json!({"cmd": "init", "session": s, "goal": "|- A"}));
    assert!(ev.is_none());
}

#[test]
fn stdio_transport() {
    let svc = Service::new();
    let input = concat!(
        "{\"id\": 1, \"cmd\": \"load_graph\", \"session\": \"t\", \"fixture\": \"demo\", \"subscribe\": false}\n",
        "\n",
        "{\"id\": 2, \"cmd\": \"init\", \"session\": \"t\", \"goal\": \"|- !a. a /\\\\ a\"}\n",
        "{\"id\": 3, \"cmd\": \"run\", \"session\": \"t\"}\n",
    );
    let mut out = Vec::new();
    serve_lines(&svc, input.as_bytes(), &mut out).unwrap();
    let replies: Vec<Value> = String::from_utf8(out).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(replies.len(), 3);
    assert_eq!(replies[2]["id"], 3);
    assert_eq!(replies[2]["result"]["goals"], json!(["|- a", "|- a"]));
}

#[test]
fn tcp_transport() {
    let svc = Arc::new(Service::new());
    let (tx, rx) = mpsc::channel();
    std::thread::spawn(move || serve_tcp("127.0.0.1:0", svc, move |a| tx.send(a).unwrap()));
    let addr = rx.recv().unwrap();
    let mut conn = TcpStream::connect(addr).unwrap();
    let mut reader = BufReader::new(conn.try_clone().unwrap());
    writeln!(conn, "{}", json!({"cmd": "load_graph", "session": "net", "fixture": "demo"})).unwrap();
    let mut line = String::new();
    reader.read_line(&mut line).unwrap();
    assert_eq!(serde_json::from_str::<Value>(&line).unwrap()["ok"], true);
    line.clear();
    reader.read_line(&mut line).unwrap();
    assert_eq!(serde_json::from_str::<Value>(&line).unwrap()["event"], "snapshot");
}
