//! The `psg` command: check, run and step proof strategies, or serve them
//! over the `psg/1` protocol.

pub mod script;

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use psg_goaltype::{Env, EnvVal};
use psg_kernel::{parse_goal, parse_term};
use psg_psgraph::{filter, parse_tags, to_jsonl, Bundle, EvalState, Mode, RunOutcome, Tag};
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failed(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Failed(_) => EXIT_FAILED,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> CliError {
        CliError::Internal(e.to_string())
    }
}

type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "psg", version, about = "Proof-strategy graphs: check, run, step and serve")]
pub struct Cli {
    /// List the registered tactics, environment tactics and conversions
    #[arg(long, global = true)]
    pub list_tactics: bool,
    /// List the atomic goal types and the goal-type definitions in scope
    #[arg(long, global = true)]
    pub list_goaltypes: bool,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a strategy file
    Check {
        #[arg(long, value_name = "FILE")]
        graph: Option<String>,
        #[arg(value_name = "FILE", conflicts_with = "graph")]
        file: Option<String>,
    },
    /// Evaluate a strategy on a goal
    Run(RunArgs),
    /// Step through an evaluation with a script read from --script or stdin
    Step {
        #[command(flatten)]
        run: RunArgs,
        /// script file; commands are separated by newlines or `;`
        #[arg(long, value_name = "FILE", conflicts_with = "exec")]
        script: Option<PathBuf>,
        /// script given inline
        #[arg(short = 'e', long = "exec", value_name = "SCRIPT")]
        exec: Option<String>,
    },
    /// Serve the psg/1 protocol on stdio or a local TCP socket
    Serve {
        #[arg(long, default_value = "127.0.0.1:7878")]
        addr: String,
        #[arg(long)]
        stdio: bool,
    },
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// strategy file, or the name of a shipped strategy
    #[arg(long, value_name = "FILE")]
    pub graph: String,
    /// goal, `hyps |- concl`
    #[arg(long)]
    pub goal: String,
    #[arg(long, default_value = "auto", value_parser = parse_mode)]
    pub mode: Mode,
    /// wire (`graph/wire` or a bare id) to put a breakpoint on
    #[arg(long = "break", value_name = "WIRE")]
    pub breaks: Vec<String>,
    /// print log events with these tags (comma separated, empty for all)
    #[arg(long, value_name = "TAGS")]
    pub log: Option<String>,
    /// write the full log as JSON lines
    #[arg(long, value_name = "FILE")]
    pub trace: Option<PathBuf>,
    #[arg(long, default_value_t = psg_psgraph::eval::DEFAULT_MAX_STEPS, value_parser = parse_steps)]
    pub max_steps: usize,
    /// initial environment entry `?var=term`
    #[arg(long = "env", value_name = "?VAR=TERM")]
    pub env: Vec<String>,
}

fn parse_steps(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

fn parse_mode(s: &str) -> std::result::Result<Mode, String> {
    s.parse()
}

/// A strategy file, or a shipped strategy when no such file exists.
pub fn load_graph(spec: &str) -> Result<Bundle> {
    let path = Path::new(spec);
    if !path.exists() {
        if psg_strategies::source(spec).is_some() {
            return psg_strategies::load(spec).map_err(|e| CliError::Failed(e.to_string()));
        }
        return Err(CliError::Usage(format!("{spec}: no such file or shipped strategy")));
    }
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{spec}: {e}")))?;
    Bundle::load_str(&text, psg_strategies::registry()).map_err(|e| CliError::Failed(format!("{spec}: {e}")))
}

fn parse_env(entries: &[String]) -> Result<Env> {
    let mut env = Env::new();
    for e in entries {
        let (k, v) = e.split_once('=').ok_or_else(|| CliError::Usage(format!("--env `{e}`: expected ?var=term")))?;
        let k = k.trim();
        let k = if k.starts_with('?') { k.to_string() } else { format!("?{k}") };
        let t = parse_term(v).map_err(|err| CliError::Usage(format!("--env `{e}`: {err}")))?;
        env.insert(k, EnvVal::T(t));
    }
    Ok(env)
}

fn parse_log(tags: &Option<String>) -> Result<Option<Vec<Tag>>> {
    tags.as_deref().map(|s| parse_tags(s).map_err(CliError::Usage)).transpose()
}

/// Bundle with breakpoints applied and the initial state.
pub fn start(args: &RunArgs) -> Result<EvalState> {
    let mut b = load_graph(&args.graph)?;
    for w in &args.breaks {
        let (nb, _) = b.toggle_breakpoint(w).map_err(|e| CliError::Usage(format!("--break {w}: {e}")))?;
        b = nb;
    }
    let goal = parse_goal(&args.goal).map_err(|e| CliError::Usage(format!("--goal: {e}")))?;
    let env = parse_env(&args.env)?;
    let mut st = EvalState::init(Arc::new(b), goal, env, args.mode).map_err(|e| CliError::Failed(e.to_string()))?;
    st.max_steps = args.max_steps;
    Ok(st)
}

fn write_trace(st: &EvalState, path: &Option<PathBuf>) -> Result<()> {
    if let Some(p) = path {
        std::fs::write(p, to_jsonl(st.log())).map_err(|e| CliError::Internal(format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

fn print_log(out: &mut dyn Write, st: &EvalState, tags: &[Tag]) -> io::Result<()> {
    for e in filter(st.log(), tags) {
        writeln!(out, "{e}")?;
    }
    Ok(())
}

/// `check`: exit 0 when the file loads and validates.
pub fn cmd_check(spec: &str, out: &mut dyn Write) -> Result<i32> {
    let b = load_graph(spec)?;
    let defs = b.defs().rules.iter().map(|r| r.name.as_str()).collect::<std::collections::BTreeSet<_>>().len();
    let wires: usize = b.graphs().map(|g| g.wires.len()).sum();
    writeln!(out, "ok: {spec}")?;
    writeln!(out, "  main graph: {}", b.main())?;
    writeln!(out, "  graphs: {} ({} wires)", b.doc().graphs.len(), wires)?;
    writeln!(out, "  goal types defined: {defs}")?;
    Ok(EXIT_OK)
}

/// `run`: evaluate to the end and report.
pub fn cmd_run(args: &RunArgs, out: &mut dyn Write) -> Result<i32> {
    let tags = parse_log(&args.log)?;
    let mut st = start(args)?;
    let outcome = st.run();
    if let Some(tags) = &tags {
        print_log(out, &st, tags)?;
    }
    write_trace(&st, &args.trace)?;
    let code = match &outcome {
        RunOutcome::Proved(th) => {
            writeln!(out, "result: proved")?;
            writeln!(out, "theorem: {th}")?;
            EXIT_OK
        }
        RunOutcome::Open(gs) => {
            writeln!(out, "result: failed (open goals remain)")?;
            for g in gs {
                writeln!(out, "open: {g}")?;
            }
            EXIT_FAILED
        }
        RunOutcome::Failed(m) => {
            writeln!(out, "result: failed")?;
            writeln!(out, "reason: {m}")?;
            EXIT_FAILED
        }
        RunOutcome::Parked | RunOutcome::Paused => {
            writeln!(out, "result: stopped at a breakpoint")?;
            for (_, t, p) in st.goals() {
                writeln!(out, "waiting: {p} on {}", t.wire)?;
            }
            EXIT_FAILED
        }
        RunOutcome::Budget => {
            writeln!(out, "result: budget exhausted after {} steps", st.steps())?;
            EXIT_FAILED
        }
    };
    writeln!(out, "steps: {}", st.steps())?;
    writeln!(out, "branches explored: {}", st.backtracks() + 1)?;
    Ok(code)
}

/// `step`: run a script of debugger commands.
pub fn cmd_step(args: &RunArgs, script: &str, out: &mut dyn Write) -> Result<i32> {
    let tags = parse_log(&args.log)?;
    let mut st = start(args)?;
    let errors = script::run_script(&mut st, script, out)?;
    if let Some(tags) = &tags {
        print_log(out, &st, tags)?;
    }
    write_trace(&st, &args.trace)?;
    Ok(if errors == 0 { EXIT_OK } else { EXIT_FAILED })
}

fn list_tactics(out: &mut dyn Write) -> io::Result<()> {
    write!(out, "{}", psg_strategies::registry().listing())?;
    writeln!(out, "placeholders (replaced when a pattern is instantiated): {}", psg_tactics::PLACEHOLDERS.join(", "))
}

fn list_goaltypes(out: &mut dyn Write, bundle: Option<&Bundle>) -> io::Result<()> {
    writeln!(out, "atomic goal types:")?;
    for a in psg_strategies::registry().atoms().names() {
        match a.arity {
            Some(n) => writeln!(out, "  {}/{n}", a.name)?,
            None => writeln!(out, "  {}/*", a.name)?,
        }
    }
    writeln!(out, "library definitions:")?;
    for line in psg_goaltype::library::LIBRARY.lines().filter(|l| !l.trim().is_empty()) {
        writeln!(out, "  {line}")?;
    }
    if let Some(b) = bundle {
        writeln!(out, "definitions of {}:", b.main())?;
        for line in b.doc().goaltypes.lines().filter(|l| !l.trim().is_empty()) {
            writeln!(out, "  {line}")?;
        }
    }
    Ok(())
}

fn read_script(script: &Option<PathBuf>, exec: &Option<String>) -> Result<String> {
    match (script, exec) {
        (_, Some(s)) => Ok(s.clone()),
        (Some(p), None) => std::fs::read_to_string(p).map_err(|e| CliError::Usage(format!("{}: {e}", p.display()))),
        (None, None) => Ok(io::read_to_string(io::stdin())?),
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    let graph = match &cli.command {
        Some(Command::Run(a)) | Some(Command::Step { run: a, .. }) => Some(a.graph.clone()),
        Some(Command::Check { graph, file }) => graph.clone().or(file.clone()),
        _ => None,
    };
    if cli.list_tactics || cli.list_goaltypes {
        if cli.list_tactics {
            list_tactics(out)?;
        }
        if cli.list_goaltypes {
            let b = graph.as_deref().map(load_graph).transpose()?;
            list_goaltypes(out, b.as_ref())?;
        }
        if cli.command.is_none() {
            return Ok(EXIT_OK);
        }
    }
    match cli.command {
        None => Err(CliError::Usage("no command given (check, run, step or serve); see --help".into())),
        Some(Command::Check { .. }) => {
            let spec = graph.ok_or_else(|| CliError::Usage("check needs a strategy file".into()))?;
            cmd_check(&spec, out)
        }
        Some(Command::Run(a)) => cmd_run(&a, out),
        Some(Command::Step { run, script, exec }) => {
            let text = read_script(&script, &exec)?;
            cmd_step(&run, &text, out)
        }
        Some(Command::Serve { addr, stdio }) => {
            let svc = psg_service::Service::new();
            if stdio {
                psg_service::serve_lines(&svc, io::stdin().lock(), io::stdout().lock())?;
            } else {
                psg_service::serve_tcp(addr, Arc::new(svc), |a| eprintln!("psg/1 listening on {a}"))?;
            }
            Ok(EXIT_OK)
        }
    }
}

/// Parse arguments and run; returns the process exit code.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
