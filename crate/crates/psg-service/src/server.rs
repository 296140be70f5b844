//! Request dispatch and the line transports.

use std::collections::BTreeMap;
use std::io::{self, BufRead, BufReader, Write};
use std::net::{TcpListener, ToSocketAddrs};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};

use serde_json::{json, Map, Value};

use crate::session::{load_bundle, Command, Session};
use crate::{Result, ServiceError, VERSION};

/// Sessions shared by every connection. Each session has its own lock, so
/// work on one never waits for another.
#[derive(Default)]
pub struct Service {
    sessions: Mutex<BTreeMap<String, Arc<Mutex<Session>>>>,
    counter: AtomicUsize,
}

fn envelope(id: &Option<Value>, session: Option<&str>) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("v".into(), json!(VERSION));
    if let Some(id) = id {
        m.insert("id".into(), id.clone());
    }
    if let Some(s) = session {
        m.insert("session".into(), json!(s));
    }
    m
}

impl Service {
    pub fn new() -> Service {
        Service::default()
    }

    pub fn session_ids(&self) -> Vec<String> {
        self.sessions.lock().expect("sessions lock").keys().cloned().collect()
    }

    fn session(&self, id: &str) -> Result<Arc<Mutex<Session>>> {
        self.sessions.lock().expect("sessions lock").get(id).cloned().ok_or_else(|| ServiceError::UnknownSession(id.into()))
    }

    fn fresh_id(&self) -> String {
        let sessions = self.sessions.lock().expect("sessions lock");
        loop {
            let id = format!("s{}", self.counter.fetch_add(1, Ordering::Relaxed) + 1);
            if !sessions.contains_key(&id) {
                return id;
            }
        }
    }

    /// Handle one request; the reply comes first, followed by any snapshot event.
    pub fn handle(&self, req: &Value) -> Vec<Value> {
        let id = req.get("id").cloned();
        let sid = req.get("session").and_then(Value::as_str).map(str::to_string);
        match self.dispatch(req, sid.clone()) {
            Ok((sid, result, event)) => {
                let mut reply = envelope(&id, Some(&sid));
                reply.insert("ok".into(), json!(true));
                reply.insert("result".into(), result);
                let mut out = vec![Value::Object(reply)];
                if let Some(snap) = event {
                    let mut ev = envelope(&None, Some(&sid));
                    ev.insert("event".into(), json!("snapshot"));
                    ev.insert("snapshot".into(), snap);
                    out.push(Value::Object(ev));
                }
                out
            }
            Err(e) => {
                let mut reply = envelope(&id, sid.as_deref());
                reply.insert("ok".into(), json!(false));
                reply.insert("err".into(), json!(e.code()));
                reply.insert("msg".into(), json!(e.to_string()));
                vec![Value::Object(reply)]
            }
        }
    }

    fn dispatch(&self, req: &Value, sid: Option<String>) -> Result<(String, Value, Option<Value>)> {
        let Value::Object(obj) = req else {
            return Err(ServiceError::BadRequest("a request is a JSON object".into()));
        };
        if let Some(v) = obj.get("v") {
            if v != VERSION {
                return Err(ServiceError::BadRequest(format!("unsupported protocol version {v}")));
            }
        }
        let mut body = obj.clone();
        for k in ["v", "id", "session"] {
            body.remove(k);
        }
        let cmd: Command =
            serde_json::from_value(Value::Object(body)).map_err(|e| ServiceError::BadRequest(e.to_string()))?;

        // load_graph may open a session; close removes one
        if let Command::LoadGraph { fixture, bundle, path, subscribe } = &cmd {
            let existing = sid.as_deref().and_then(|s| self.session(s).ok());
            if existing.is_none() {
                let b = load_bundle(fixture.as_deref(), bundle.as_ref(), path.as_deref())?;
                let sid = sid.unwrap_or_else(|| self.fresh_id());
                let s = Session::new(sid.clone(), b, subscribe.unwrap_or(true));
                let result = json!({"main": s.bundle.main()});
                let snap = s.subscribed.then(|| json!(s.snapshot()));
                self.sessions.lock().expect("sessions lock").insert(sid.clone(), Arc::new(Mutex::new(s)));
                return Ok((sid, result, snap));
            }
        }
        let sid = sid.ok_or_else(|| ServiceError::BadRequest("missing `session`".into()))?;
        let handle = self.session(&sid)?;
        if let Command::Close = cmd {
            self.sessions.lock().expect("sessions lock").remove(&sid);
            return Ok((sid, json!({}), None));
        }
        let mut s = handle.lock().expect("session lock");
        let changes = cmd.changes_state();
        let result = s.apply(cmd)?;
        let snap = (changes && s.subscribed).then(|| json!(s.snapshot()));
        Ok((sid, result, snap))
    }

    /// Handle one protocol line, returning the lines to send back.
    pub fn handle_line(&self, line: &str) -> Vec<String> {
        let out = match serde_json::from_str::<Value>(line) {
            Ok(req) => self.handle(&req),
            Err(e) => {
                let mut reply = envelope(&None, None);
                reply.insert("ok".into(), json!(false));
                reply.insert("err".into(), json!("bad-request"));
                reply.insert("msg".into(), json!(format!("invalid JSON: {e}")));
                vec![Value::Object(reply)]
            }
        };
        out.into_iter().map(|v| v.to_string()).collect()
    }
}

/// Serve requests from `input` until end of input; blank lines are ignored.
pub fn serve_lines(service: &Service, input: impl BufRead, mut output: impl Write) -> io::Result<()> {
    for line in input.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        for l in service.handle_line(&line) {
            writeln!(output, "{l}")?;
        }
        output.flush()?;
    }
    Ok(())
}

/// Accept connections forever, one thread per connection.
pub fn serve_tcp(addr: impl ToSocketAddrs, service: Arc<Service>, ready: impl FnOnce(std::net::SocketAddr)) -> io::Result<()> {
    let listener = TcpListener::bind(addr)?;
    ready(listener.local_addr()?);
    for conn in listener.incoming() {
        let conn = conn?;
        let service = service.clone();
        std::thread::spawn(move || {
            let reader = BufReader::new(conn.try_clone()?);
            serve_lines(&service, reader, conn)
        });
    }
    Ok(())
}
