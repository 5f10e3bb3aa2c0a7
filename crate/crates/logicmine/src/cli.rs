//! The `logicmine` command line.
//!
//! Exit codes: 0 success, 1 usage error, 2 unreadable or malformed input,
//! 3 no model found. Output goes to `-o` when given, standard output
//! otherwise; diagnostics go to standard error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use logicmine_core::dynamics::{solve, SolveConfig, DEFAULT_MAX_SWEEPS};
use logicmine_core::hebb::{learn, EventTable, LearningRates};
use logicmine_core::logic::{enumerate_models, DEFAULT_MAX_ENUM_ATOMS};
use logicmine_core::mine::{mine, rule_confidence, MineConfig};
use logicmine_core::translate::compile;
use logicmine_core::Representation;

use crate::error::FormatError;
use crate::events_csv::{read_events, write_events};
use crate::program_text::{format_clause, parse_program};
use crate::rules_text::{read_rules, sorted_rules, write_rules, RulesFile};
use crate::synapse_text::write_synapses;

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_FORMAT: u8 = 2;
pub const EXIT_NO_MODEL: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "logicmine", version, about = "Horn clauses on a third-order Hopfield network")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    Binary,
    Bipolar,
}

impl From<Variant> for Representation {
    fn from(v: Variant) -> Self {
        match v {
            Variant::Binary => Representation::Binary,
            Variant::Bipolar => Representation::Bipolar,
        }
    }
}

fn parse_rates(text: &str) -> Result<LearningRates, String> {
    let parts = text
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    let [a1, a2, a3] = parts[..] else {
        return Err(format!("expected three rates a1,a2,a3, got {}", parts.len()));
    };
    LearningRates::new(a1, a2, a3).map_err(|e| e.to_string())
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compile a program into synapses.
    Compile {
        program: PathBuf,
        #[arg(long, value_enum, default_value = "bipolar")]
        variant: Variant,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Search for models by relaxing the compiled network.
    Solve {
        program: PathBuf,
        #[arg(long, value_enum, default_value = "bipolar")]
        variant: Variant,
        #[arg(long, default_value_t = 64)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_SWEEPS)]
        max_sweeps: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Learn synapses from an events file.
    Learn {
        events: PathBuf,
        #[arg(long, value_parser = parse_rates, default_value = "1,1,0.5")]
        rates: LearningRates,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Learn synapses and read clauses back out of them.
    Mine {
        events: PathBuf,
        #[arg(long, value_parser = parse_rates, default_value = "1,1,0.5")]
        rates: LearningRates,
        #[arg(long, default_value_t = 0.5)]
        theta: f64,
        #[arg(long)]
        min_confidence: Option<f64>,
        #[arg(long)]
        emit_denials: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write every model of a program as an events file.
    Generate {
        program: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Report support and confidence of mined rules on an events file.
    Verify {
        rules: PathBuf,
        events: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Format(String),
    NoModel(String),
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Core(logicmine_core::Error::InvalidConfig(msg)) => Failure::Usage(msg.into()),
            other => Failure::Format(other.to_string()),
        }
    }
}

impl From<logicmine_core::Error> for Failure {
    fn from(e: logicmine_core::Error) -> Self {
        FormatError::from(e).into()
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Format(format!("{}: {e}", path.display())))
}

fn in_file(path: &Path, e: FormatError) -> Failure {
    match Failure::from(e) {
        Failure::Format(msg) => Failure::Format(format!("{}: {msg}", path.display())),
        other => other,
    }
}

fn load_events(path: &Path) -> Result<EventTable, Failure> {
    let file = fs::File::open(path).map_err(|e| Failure::Format(format!("{}: {e}", path.display())))?;
    read_events(file).map_err(|e| in_file(path, e))
}

fn events_text(ev: &EventTable) -> Result<String, Failure> {
    let mut buf = Vec::new();
    write_events(&mut buf, ev)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}

fn emit(output: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<(), Failure> {
    let result = match output {
        Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => stdout.write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    result.map_err(Failure::Format)
}

fn execute(command: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Compile {
            program,
            variant,
            output,
        } => {
            let p = parse_program(&read_text(&program)?).map_err(|e| in_file(&program, e))?;
            let s = compile(&p, variant.into())?;
            emit(output.as_deref(), &write_synapses(p.atoms(), &s), stdout)
        }
        Command::Solve {
            program,
            variant,
            restarts,
            seed,
            max_sweeps,
            output,
        } => {
            let p = parse_program(&read_text(&program)?).map_err(|e| in_file(&program, e))?;
            let cfg = SolveConfig {
                representation: variant.into(),
                restarts,
                seed,
                max_sweeps,
            };
            let outcome = solve(&p, &cfg)?;
            let st = outcome.stats;
            // diagnostics only; a failed write to stderr is not worth an error
            let _ = writeln!(
                stderr,
                "restarts={} successes={} stable={} distinct_models={}",
                st.restarts, st.successes, st.stable, st.distinct_models
            );
            if outcome.models.is_empty() {
                return Err(Failure::NoModel(format!(
                    "no model found in {restarts} restarts"
                )));
            }
            let ev = EventTable::from_models(p.atoms().clone(), &outcome.models)?;
            emit(output.as_deref(), &events_text(&ev)?, stdout)
        }
        Command::Learn {
            events,
            rates,
            output,
        } => {
            let ev = load_events(&events)?;
            let s = learn(&ev, &rates)?;
            emit(output.as_deref(), &write_synapses(ev.atoms(), &s), stdout)
        }
        Command::Mine {
            events,
            rates,
            theta,
            min_confidence,
            emit_denials,
            output,
        } => {
            let cfg = MineConfig {
                rates,
                theta,
                min_confidence,
                emit_denials,
            };
            cfg.validate()?;
            let ev = load_events(&events)?;
            let report = mine(&ev, &cfg)?;
            let text = write_rules(ev.atoms(), &RulesFile::from_report(&report));
            emit(output.as_deref(), &text, stdout)
        }
        Command::Generate { program, output } => {
            let p = parse_program(&read_text(&program)?).map_err(|e| in_file(&program, e))?;
            let models = enumerate_models(&p, DEFAULT_MAX_ENUM_ATOMS)?;
            if models.is_empty() {
                return Err(Failure::NoModel("program has no model".into()));
            }
            let ev = EventTable::from_models(p.atoms().clone(), &models)?;
            emit(output.as_deref(), &events_text(&ev)?, stdout)
        }
        Command::Verify {
            rules,
            events,
            output,
        } => {
            let ev = load_events(&events)?;
            let file = read_rules(ev.atoms(), &read_text(&rules)?).map_err(|e| in_file(&rules, e))?;
            let mut text = String::new();
            for rule in sorted_rules(ev.atoms(), &file.rules) {
                let stats = rule_confidence(&rule.clause, &ev)?;
                text.push_str(&format!(
                    "{}\tsupport={}\tconfidence={}\n",
                    format_clause(ev.atoms(), &rule.clause),
                    stats.support,
                    stats.confidence
                ));
            }
            emit(output.as_deref(), &text, stdout)
        }
    }
}

/// Runs the command line with `args` (program name first) and returns the
/// process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let (code, message) = match execute(cli.command, stdout, stderr) {
        Ok(()) => (EXIT_OK, None),
        Err(Failure::Usage(m)) => (EXIT_USAGE, Some(m)),
        Err(Failure::Format(m)) => (EXIT_FORMAT, Some(m)),
        Err(Failure::NoModel(m)) => (EXIT_NO_MODEL, Some(m)),
    };
    if let Some(m) = message {
        let _ = writeln!(stderr, "logicmine: {m}");
    }
    let _ = stdout.flush();
    code
}
