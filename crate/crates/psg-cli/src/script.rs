//! Debugger commands for `psg step`.

use std::io::Write;

use psg_psgraph::{filter, parse_tags, EvalState, StepOutcome};
use psg_tactics::label_text;

use crate::Result;

pub const COMMANDS: &str = "step, step-over, branches, choose K, bt, goals, env PNAME, log [TAGS], quit";

fn report(out: &mut dyn Write, st: &EvalState, r: psg_psgraph::Result<StepOutcome>) -> std::io::Result<bool> {
    match r {
        Ok(StepOutcome::Moved { rule, branches }) => {
            writeln!(out, "step {}: {rule}, {branches} branch(es)", st.steps())?;
            Ok(true)
        }
        Ok(StepOutcome::Backtracked) => {
            writeln!(out, "step {}: failed, backtracked", st.steps())?;
            Ok(true)
        }
        Ok(StepOutcome::Failed) => {
            writeln!(out, "step {}: failed, no alternative left", st.steps())?;
            Ok(true)
        }
        Err(e) => {
            writeln!(out, "error: {e}")?;
            Ok(false)
        }
    }
}

/// Split a script into commands at newlines and `;`; `#` starts a comment.
pub fn commands(script: &str) -> Vec<String> {
    script
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(|l| l.split(';'))
        .map(|c| c.trim().to_string())
        .filter(|c| !c.is_empty())
        .collect()
}

/// Run each command against `st`, printing its output. Returns how many
/// commands failed; execution continues after a failure.
pub fn run_script(st: &mut EvalState, script: &str, out: &mut dyn Write) -> Result<usize> {
    let mut errors = 0;
    for cmd in commands(script) {
        writeln!(out, "> {cmd}")?;
        let mut words = cmd.split_whitespace();
        let verb = words.next().unwrap_or("");
        let rest: Vec<&str> = words.collect();
        let ok = match (verb, rest.as_slice()) {
            ("step", []) => {
                let r = st.step();
                report(out, st, r)?
            }
            ("step-over", []) => {
                let r = st.step_over();
                report(out, st, r)?
            }
            ("branches", []) => {
                for (i, b) in st.last_branches().iter().enumerate() {
                    writeln!(out, "{}: {b}", i + 1)?;
                }
                true
            }
            ("choose", [k]) => match k.parse::<usize>().map_err(|e| e.to_string()).and_then(|k| st.choose(k).map_err(|e| e.to_string())) {
                Ok(()) => {
                    writeln!(out, "chose branch {k}")?;
                    true
                }
                Err(e) => {
                    writeln!(out, "error: {e}")?;
                    false
                }
            },
            ("bt", []) => match st.backtrack() {
                Ok(()) => {
                    writeln!(out, "backtracked")?;
                    true
                }
                Err(e) => {
                    writeln!(out, "error: {e}")?;
                    false
                }
            },
            ("goals", []) => {
                let goals = st.goals();
                if goals.is_empty() {
                    writeln!(out, "no open goals")?;
                }
                for (d, t, p) in goals {
                    writeln!(out, "{p} on {}/{}", st.frames()[d].graph, t.wire)?;
                }
                true
            }
            ("env", [pname]) => match st.goals().into_iter().find(|(_, _, p)| label_text(&p.pname) == *pname) {
                Some((_, _, p)) => {
                    if p.env.is_empty() {
                        writeln!(out, "(empty)")?;
                    }
                    for (k, v) in &p.env {
                        writeln!(out, "{k} = {v}")?;
                    }
                    true
                }
                None => {
                    writeln!(out, "error: no open goal {pname}")?;
                    false
                }
            },
            ("log", tags) => match parse_tags(&tags.join(",")) {
                Ok(tags) => {
                    for e in filter(st.log(), &tags) {
                        writeln!(out, "{e}")?;
                    }
                    true
                }
                Err(e) => {
                    writeln!(out, "error: {e}")?;
                    false
                }
            },
            ("quit", []) => break,
            _ => {
                writeln!(out, "error: unknown command `{cmd}` (commands: {COMMANDS})")?;
                false
            }
        };
        if !ok {
            errors += 1;
        }
    }
    Ok(errors)
}
