mod cache;
mod input;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::{env, fs};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};
use webskein::invariants::k_invariant;
use webskein::linkdiag::{parse_json, parse_pd, periodic_cover, Coloring, Diagram};
use webskein::periodicity::{
    check_factor_congruence_with, check_mirror_congruence, Invariant, Verdict,
};
use webskein::web::SliceWeb;
use webskein::{engine_by_name, relcheck, Engine, Error, LPoly, Result};

use cache::CachedEngine;
use input::DiagramArgs;

const EXIT_ERROR: u8 = 1;
const EXIT_IRREDUCIBLE: u8 = 2;
const EXIT_OBSTRUCTED: u8 = 3;

#[derive(Parser)]
#[command(
    name = "webskein",
    version,
    about = "Quantum sl(n) link invariants from webs"
)]
struct Cli {
    /// Evaluation engine: oracle, rewrite, rewrite-with-fallback or both.
    #[arg(long, global = true, default_value = "both")]
    engine: String,
    /// Value cache file. Defaults to $WEBSKEIN_CACHE when set.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum, Default)]
enum InvariantArg {
    #[default]
    K,
    P,
}

impl From<InvariantArg> for Invariant {
    fn from(a: InvariantArg) -> Self {
        match a {
            InvariantArg::K => Invariant::K,
            InvariantArg::P => Invariant::P,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate K_n (or P_n) of a diagram.
    Eval {
        #[command(flatten)]
        diagram: DiagramArgs,
        #[arg(long, default_value_t = 2)]
        n: u32,
        #[arg(long, value_enum, default_value_t)]
        invariant: InvariantArg,
        /// Evaluate every line of a file (JSON or PD text), one result per line.
        #[arg(long, conflicts_with_all = ["pd", "json", "braid"])]
        corpus: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Verify the web relations for every parameter tuple at `n`.
    Relcheck {
        #[arg(long, default_value_t = 2)]
        n: u32,
        /// Largest rectangle width `l` (default: no cap).
        #[arg(long)]
        max_l: Option<u32>,
        /// Largest accepted `n`.
        #[arg(long, default_value_t = 5)]
        max_n: u32,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Factor-link congruence test, followed by the mirror test on the same
    /// link.
    PeriodicCheck {
        /// Tangle whose p-fold closure is tested against its own closure.
        #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["pd", "json", "braid"])]
        tangle: Option<String>,
        #[command(flatten)]
        link: DiagramArgs,
        #[arg(long)]
        factor_pd: Option<String>,
        #[arg(long)]
        factor_json: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        factor_braid: Option<String>,
        #[arg(long)]
        factor_strands: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        factor_coloring: Vec<u32>,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 2)]
        n: u32,
        #[arg(long, value_enum, default_value_t)]
        invariant: InvariantArg,
    },
    /// Mirror congruence test modulo (p, q^p - 1).
    MirrorCheck {
        #[command(flatten)]
        diagram: DiagramArgs,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 2)]
        n: u32,
    },
    /// Evaluate a closed web given in the web JSON format (`-` for stdin).
    WebEval {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        n: u32,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

/// The selected engine, optionally behind the persistent cache.
struct Session {
    plain: Option<Box<dyn Engine>>,
    cached: Option<CachedEngine>,
}

impl Session {
    fn new(name: &str, cache: Option<PathBuf>) -> Result<Self> {
        let inner = engine_by_name(name)?;
        let path = cache.or_else(|| env::var_os("WEBSKEIN_CACHE").map(PathBuf::from));
        Ok(match path {
            Some(p) => Session {
                plain: None,
                cached: Some(CachedEngine::open(inner, &p)),
            },
            None => Session {
                plain: Some(inner),
                cached: None,
            },
        })
    }

    fn engine(&self) -> &dyn Engine {
        match (&self.cached, &self.plain) {
            (Some(c), _) => c,
            (None, Some(e)) => e.as_ref(),
            (None, None) => unreachable!("session has an engine"),
        }
    }

    fn close(&self) {
        if let Some(c) = &self.cached {
            if let Err(e) = c.save() {
                eprintln!("warning: could not write cache: {e}");
            }
        }
    }
}

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::Irreducible => EXIT_IRREDUCIBLE,
        _ => EXIT_ERROR,
    }
}

fn invariant_value(
    d: &Diagram,
    mu: &Coloring,
    n: u32,
    inv: InvariantArg,
    engine: &dyn Engine,
) -> Result<LPoly> {
    let mu = match inv {
        InvariantArg::K => mu.clone(),
        InvariantArg::P => Coloring::uniform(d.components().len(), 1),
    };
    k_invariant(d, &mu, n, engine)
}

fn eval_report(value: &LPoly, inv: InvariantArg, n: u32, mu: &Coloring) -> Value {
    json!({
        "invariant": match inv { InvariantArg::K => "K_n", InvariantArg::P => "P_n" },
        "n": n,
        "coloring": mu.0,
        "value": value,
        "text": value.to_string(),
    })
}

fn parse_line(line: &str) -> Result<Diagram> {
    if line.trim_start().starts_with('{') {
        parse_json(line)
    } else {
        parse_pd(line)
    }
}

fn run_corpus(path: &PathBuf, n: u32, inv: InvariantArg, engine: &dyn Engine) -> Result<u8> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
    let results: Vec<Result<Value>> = lines
        .par_iter()
        .map(|line| {
            let d = parse_line(line)?;
            let mu = d.coloring();
            let v = invariant_value(&d, &mu, n, inv, engine)?;
            Ok(eval_report(&v, inv, n, &mu))
        })
        .collect();
    let mut code = 0;
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Ok(v) => println!("{v}"),
            Err(e) => {
                println!("{}", json!({"line": i + 1, "error": e.to_string()}));
                code = code.max(exit_for(&e));
            }
        }
    }
    Ok(code)
}

fn verdict_line(test: &str, v: &Verdict) -> (String, u8) {
    let mut j = v.to_json();
    j["test"] = json!(test);
    let code = if v.is_consistent() {
        0
    } else {
        EXIT_OBSTRUCTED
    };
    (j.to_string(), code)
}

fn read_web(file: &PathBuf) -> Result<SliceWeb> {
    let mut text = String::new();
    let read = if file.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        fs::read_to_string(file).map(|t| text = t)
    };
    read.map_err(|e| Error::Parse(format!("{}: {e}", file.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))
}

fn run(cli: Cli) -> Result<u8> {
    let session = Session::new(&cli.engine, cli.cache)?;
    let engine = session.engine();
    let code = match cli.command {
        Command::Eval {
            diagram,
            n,
            invariant,
            corpus,
            format,
        } => {
            if let Some(path) = corpus {
                run_corpus(&path, n, invariant, engine)?
            } else {
                let (d, mu) = diagram.colored()?;
                let v = invariant_value(&d, &mu, n, invariant, engine)?;
                if format == Format::Json {
                    println!("{}", eval_report(&v, invariant, n, &mu));
                } else {
                    println!("{v}");
                }
                0
            }
        }
        Command::Relcheck {
            n,
            max_l,
            max_n,
            format,
        } => {
            if n < 1 || n > max_n {
                return Err(Error::InvalidParameter(format!("n must be in 1..={max_n}")));
            }
            let rep = relcheck::run(n, max_l.unwrap_or(n))?;
            if format == Format::Json {
                println!(
                    "{}",
                    serde_json::to_string(&rep).expect("report serializes")
                );
            } else {
                for r in &rep.relations {
                    println!("{}: {} passed, {} failed", r.relation, r.passed, r.failed);
                }
            }
            if rep.all_passed() {
                0
            } else {
                EXIT_ERROR
            }
        }
        Command::PeriodicCheck {
            tangle,
            link,
            factor_pd,
            factor_json,
            factor_braid,
            factor_strands,
            factor_coloring,
            p,
            n,
            invariant,
        } => {
            let (l, mu, lbar, mubar) = if let Some(word) = tangle {
                let t = input::tangle(&word, link.strands, link.color, &link.coloring)?;
                let cover = periodic_cover(&t, p as usize)?;
                let factor = t.closure()?;
                let (mu, mubar) = (cover.coloring(), factor.coloring());
                (cover, mu, factor, mubar)
            } else {
                let (l, mu) = link.colored()?;
                let factor = DiagramArgs {
                    pd: factor_pd,
                    json: factor_json,
                    braid: factor_braid,
                    strands: factor_strands,
                    color: None,
                    coloring: factor_coloring,
                };
                let (lbar, mubar) = factor.colored()?;
                (l, mu, lbar, mubar)
            };
            let factor = check_factor_congruence_with(
                &l,
                &mu,
                &lbar,
                &mubar,
                p,
                n,
                invariant.into(),
                engine,
            )?;
            let mirror = check_mirror_congruence(&l, &mu, p, n, engine)?;
            let mut code = 0;
            for (name, v) in [("factor", &factor), ("mirror", &mirror)] {
                let (line, c) = verdict_line(name, v);
                println!("{line}");
                code = code.max(c);
            }
            code
        }
        Command::MirrorCheck { diagram, p, n } => {
            let (d, mu) = diagram.colored()?;
            let v = check_mirror_congruence(&d, &mu, p, n, engine)?;
            let (line, code) = verdict_line("mirror", &v);
            println!("{line}");
            code
        }
        Command::WebEval { file, n, format } => {
            let w = read_web(&file)?;
            w.validate(n)?;
            let v = if w.has_crossings() {
                engine.eval_diagram(&w, n)?
            } else {
                engine.eval(&w, n)?
            };
            if format == Format::Json {
                println!("{}", json!({"n": n, "value": v, "text": v.to_string()}));
            } else {
                println!("{v}");
            }
            0
        }
    };
    session.close();
    Ok(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}
