//! Batch interface over the `corings` library: loads a JSON instance, runs
//! one command and prints a JSON (or plain text) report.

pub mod commands;
pub mod instance;
pub mod report;

use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use instance::{FieldSpec, Instance, LoadError};

/// Process exit codes.
pub mod exit {
    /// A verdict was reached, positive or negative.
    pub const DECIDED: i32 = 0;
    pub const PRECONDITION: i32 = 2;
    /// The answer rests on a bounded or sampled search.
    pub const UNDECIDED: i32 = 3;
    pub const USAGE: i32 = 64;
    pub const DATA: i32 = 65;
    pub const INTERNAL: i32 = 70;
}

#[derive(Parser, Debug)]
#[command(name = "corings", version, about = "Exact decision procedures for corings, entwinings and C-rings")]
pub struct Cli {
    /// Instance file (JSON).
    pub instance: String,
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Reinterpret every scalar over this field: `Q` or `F<p>`.
    #[arg(long, global = true)]
    pub field_override: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Candidate budget for exhaustive searches.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Random restarts for the Frobenius search over `Q`.
    #[arg(long, global = true, default_value_t = 20)]
    pub retries: usize,
    /// Report file; for `build`, the extended instance goes here instead.
    #[arg(long, global = true)]
    pub output: Option<String>,
    #[arg(long, global = true, conflicts_with = "text")]
    pub json: bool,
    #[arg(long, global = true)]
    pub text: bool,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Load and validate every object.
    Validate,
    #[command(subcommand)]
    Build(Build),
    #[command(subcommand)]
    Check(Check),
    #[command(subcommand)]
    Find(Find),
    /// Turn a right-linear section of a comodule epimorphism into a colinear one.
    SplitEpi {
        #[arg(long)]
        coring: String,
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
        #[arg(long)]
        map: String,
        #[arg(long)]
        section: String,
    },
    /// Every check on every coring and C-ring of the instance.
    Report,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Build {
    Canonical {
        #[arg(long)]
        ext: String,
        #[arg(long)]
        name: Option<String>,
    },
    FromEntwining {
        #[arg(long)]
        entwining: String,
        #[arg(long)]
        name: Option<String>,
    },
    FromWeak {
        #[arg(long)]
        entwining: String,
        #[arg(long)]
        name: Option<String>,
    },
    FromPrecoring {
        #[arg(long)]
        entwining: String,
        #[arg(long)]
        name: Option<String>,
    },
    Schneider {
        #[arg(long)]
        comodule_algebra: String,
        #[arg(long)]
        name: Option<String>,
    },
    CringEntwining {
        #[arg(long)]
        entwining: String,
        #[arg(long)]
        name: Option<String>,
    },
    CringSurjection {
        #[arg(long)]
        morphism: String,
        #[arg(long)]
        name: Option<String>,
    },
    /// The quotient coalgebra by the invariants coideal of a character.
    CringQuotient {
        #[arg(long)]
        cring: String,
        #[arg(long)]
        character: String,
        #[arg(long)]
        name: Option<String>,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum Check {
    SeparableInduction {
        #[arg(long)]
        coring: String,
    },
    Coseparable {
        #[arg(long)]
        coring: String,
    },
    Frobenius {
        #[arg(long)]
        coring: String,
        /// Decide small rational cases on a finite grid instead of sampling.
        #[arg(long)]
        symbolic_det: bool,
    },
    Galois {
        #[arg(long)]
        coring: String,
        #[arg(long)]
        grouplike: String,
    },
    Equivalence {
        #[arg(long)]
        coring: String,
        #[arg(long)]
        grouplike: String,
        /// Number of seeded modules added to the test family.
        #[arg(long, default_value_t = 3)]
        size: usize,
    },
    DualSeparableInduction {
        #[arg(long)]
        cring: String,
    },
    DualSeparableForgetful {
        #[arg(long)]
        cring: String,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum Find {
    Grouplikes {
        #[arg(long)]
        coring: String,
    },
    /// `C^A`, the elements commuting with the algebra.
    Invariants {
        #[arg(long)]
        coring: String,
    },
    Coinvariants {
        #[arg(long)]
        coring: String,
        #[arg(long)]
        grouplike: String,
    },
    DualRing {
        #[arg(long)]
        coring: String,
    },
}

/// A command that could not produce a verdict.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub kind: &'static str,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: exit::USAGE,
            kind: "usage",
            message: message.into(),
        }
    }

    pub fn precondition(message: impl Into<String>) -> Failure {
        Failure {
            code: exit::PRECONDITION,
            kind: "precondition",
            message: message.into(),
        }
    }
}

impl From<corings::Error> for Failure {
    fn from(e: corings::Error) -> Failure {
        let (code, kind) = match e {
            corings::Error::Precondition(_) => (exit::PRECONDITION, "precondition"),
            corings::Error::Malformed(_) => (exit::USAGE, "usage"),
            corings::Error::Internal(_) => (exit::INTERNAL, "internal"),
        };
        Failure {
            code,
            kind,
            message: e.to_string(),
        }
    }
}

impl From<LoadError> for Failure {
    fn from(e: LoadError) -> Failure {
        Failure {
            code: exit::DATA,
            kind: "instance",
            message: e.to_string(),
        }
    }
}

/// What a command produced.
pub struct Done {
    pub result: Value,
    /// The verdict rests on a bounded or sampled search.
    pub undecided: bool,
    /// `build` commands return the extended instance.
    pub extended: Option<Instance>,
}

impl Done {
    pub fn decided(result: Value) -> Done {
        Done {
            result,
            undecided: false,
            extended: None,
        }
    }
}

/// A finished run: exit code and what goes to each stream.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    /// The report body, without timing.
    pub body: Option<Value>,
    pub stdout: String,
    pub stderr: String,
    /// `(path, contents)` to write.
    pub files: Vec<(String, String)>,
}

pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::DECIDED };
            let rendered = e.render().to_string();
            let (stdout, stderr) = if e.use_stderr() { (String::new(), rendered) } else { (rendered, String::new()) };
            return Outcome {
                code,
                body: None,
                stdout,
                stderr,
                files: Vec::new(),
            };
        }
    };
    let echo: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    execute(&cli, echo)
}

fn execute(cli: &Cli, echo: Vec<String>) -> Outcome {
    let start = Instant::now();
    let g = &cli.global;
    let mut body = serde_json::Map::new();
    body.insert("command".into(), json!(echo));
    body.insert("seed".into(), json!(g.seed));

    let outcome = load_and_run(cli, &mut body);
    let (code, extended) = match outcome {
        Ok(done) => {
            body.insert("result".into(), done.result);
            body.insert("undecided".into(), json!(done.undecided));
            let code = if done.undecided { exit::UNDECIDED } else { exit::DECIDED };
            (code, done.extended)
        }
        Err(f) => {
            body.insert("error".into(), json!({ "kind": f.kind, "message": f.message }));
            (f.code, None)
        }
    };
    let body = Value::Object(body);
    let elapsed_ms = start.elapsed().as_millis() as u64;
    let rendered = if g.text {
        let mut t = report::render_text(&body);
        t.push_str(&format!("elapsed_ms: {elapsed_ms}\n"));
        t
    } else {
        let mut t = serde_json::to_string_pretty(&json!({ "body": body, "elapsed_ms": elapsed_ms })).expect("reports serialize");
        t.push('\n');
        t
    };
    let mut files = Vec::new();
    let mut stdout = String::new();
    match (&g.output, extended) {
        (Some(path), Some(inst)) => {
            files.push((path.clone(), inst.to_document().to_json() + "\n"));
            stdout = rendered;
        }
        (Some(path), None) if code != exit::USAGE && code != exit::DATA => files.push((path.clone(), rendered)),
        _ => stdout = rendered,
    }
    let stderr = match body.get("error") {
        Some(e) => format!("error: {}\n", e["message"].as_str().unwrap_or_default()),
        None => String::new(),
    };
    Outcome {
        code,
        body: Some(body),
        stdout,
        stderr,
        files,
    }
}

fn load_and_run(cli: &Cli, body: &mut serde_json::Map<String, Value>) -> Result<Done, Failure> {
    let g = &cli.global;
    let field = match &g.field_override {
        Some(s) => Some(FieldSpec::parse(s).map_err(Failure::usage)?),
        None => None,
    };
    let bytes = std::fs::read(&cli.instance).map_err(|e| Failure {
        code: exit::USAGE,
        kind: "usage",
        message: format!("cannot read {}: {e}", cli.instance),
    })?;
    body.insert("instance_digest".into(), json!(report::digest(&bytes)));
    let text = String::from_utf8_lossy(&bytes);
    let mut doc = instance::Document::parse(&text)?;
    if let Some(f) = field {
        doc.field = f;
    }
    let inst = match Instance::build(&doc) {
        Ok(inst) => inst,
        Err(LoadError::Axiom { at, report }) if matches!(cli.command, Command::Validate) => {
            return Ok(Done::decided(json!({
                "valid": false,
                "object": at,
                "validation": report::validation(&report),
            })));
        }
        Err(e) => return Err(e.into()),
    };
    commands::dispatch(&cli.command, g, inst)
}

/// Runs the binary's logic and performs its side effects.
pub fn main_with_args<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let out = run(args);
    for (path, contents) in &out.files {
        if let Err(e) = std::fs::write(path, contents) {
            eprintln!("error: cannot write {path}: {e}");
            return exit::INTERNAL;
        }
    }
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.code
}
