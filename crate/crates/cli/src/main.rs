mod cache;
mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use gelfand::group::DEFAULT_MAX_GROUP_SIZE;
use gelfand::model::Action;
use gelfand::{Error, GroupParams};

use cache::Cache;
use output::{render, Format};

#[derive(Parser)]
#[command(name = "gelfand", version, about = "Gelfand models of projective reflection groups G(r,p,q,n)")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    /// Cache directory.
    #[arg(long, env = "GELFAND_CACHE_DIR", global = true)]
    cache_dir: Option<PathBuf>,
    /// Recompute and do not touch the cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Refuse to enumerate groups larger than this.
    #[arg(long, default_value_t = DEFAULT_MAX_GROUP_SIZE as u64, global = true)]
    max_group_size: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Include wall-clock timings in reports; bypasses the cache.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct ParamArgs {
    r: u32,
    p: u32,
    q: u32,
    n: usize,
}

impl ParamArgs {
    fn params(self) -> gelfand::Result<GroupParams> {
        GroupParams::new(self.r, self.p, self.q, self.n)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ActionArg {
    Apr,
    Modgrn,
    Main,
}

impl From<ActionArg> for Action {
    fn from(a: ActionArg) -> Self {
        match a {
            ActionArg::Apr => Action::Apr,
            ActionArg::Modgrn => Action::Modgrn,
            ActionArg::Main => Action::Main,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// List the elements (or conjugacy classes) of G(r,p,q,n).
    Enumerate {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        classes: bool,
    },
    /// Count and list the absolute involutions.
    Involutions {
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Decide whether the group is involutory.
    Classify {
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Model dimension from the multitableaux count.
    Dimension {
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Exact character of the model, per conjugacy class.
    Character {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value = "main")]
        action: ActionArg,
    },
    /// Robinson-Schensted image of one element.
    Rsk {
        #[command(flatten)]
        params: ParamArgs,
        /// Window notation, e.g. "[(1,2),(0,1)]".
        #[arg(long)]
        element: String,
    },
    /// Run the full model verification.
    Verify {
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Check the necessary conditions of the symmetric-submodule conjecture on G(r,p,n).
    Conjecture { r: u32, p: u32, n: usize },
    /// The worked example in G(3,9): character value 54 two ways.
    #[command(name = "example-g39")]
    ExampleG39,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidParams(_)
        | Error::Parse(_)
        | Error::InvalidElement(_)
        | Error::NotMember { .. }
        | Error::Precondition(_) => 2,
        Error::SizeBound { .. } => 3,
        _ => 1,
    }
}

/// Subcommand name, canonical arguments for the cache key, and the computation.
fn plan(cli: &Cli) -> gelfand::Result<(&'static str, Value, Box<dyn FnOnce() -> gelfand::Result<Value> + '_>)> {
    let bound = cli.max_group_size as u128;
    let timings = cli.timings;
    Ok(match &cli.command {
        Command::Enumerate { params, classes } => {
            let pr = params.params()?;
            let classes = *classes;
            ("enumerate", json!([pr.as_array(), classes]), Box::new(move || commands::enumerate_cmd(pr, classes, bound)))
        }
        Command::Involutions { params } => {
            let pr = params.params()?;
            ("involutions", json!([pr.as_array()]), Box::new(move || commands::involutions_cmd(pr, bound)))
        }
        Command::Classify { params } => {
            let pr = params.params()?;
            ("classify", json!([pr.as_array()]), Box::new(move || Ok(commands::classify_cmd(pr))))
        }
        Command::Dimension { params } => {
            let pr = params.params()?;
            ("dimension", json!([pr.as_array()]), Box::new(move || Ok(commands::dimension_cmd(pr))))
        }
        Command::Character { params, action } => {
            let pr = params.params()?;
            let action: Action = (*action).into();
            (
                "character",
                json!([pr.as_array(), action.to_string()]),
                Box::new(move || commands::character_cmd(pr, action, bound)),
            )
        }
        Command::Rsk { params, element } => {
            let pr = params.params()?;
            ("rsk", json!([pr.as_array(), element]), Box::new(move || commands::rsk_cmd(pr, element)))
        }
        Command::Verify { params } => {
            let pr = params.params()?;
            ("verify", json!([pr.as_array()]), Box::new(move || commands::verify_cmd(pr, bound, timings)))
        }
        Command::Conjecture { r, p, n } => {
            let (r, p, n) = (*r, *p, *n);
            GroupParams::reflection(r, p, n)?;
            ("conjecture", json!([r, p, n]), Box::new(move || commands::conjecture_cmd(r, p, n, bound, timings)))
        }
        Command::ExampleG39 => ("example-g39", json!([]), Box::new(commands::example_g39)),
    })
}

fn failed(v: &Value) -> bool {
    v.get("passed").and_then(Value::as_bool) == Some(false)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let (name, args, compute) = match plan(&cli) {
        Ok(x) => x,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let cache = (!cli.no_cache && !cli.timings)
        .then(|| Cache::new(cli.cache_dir.clone().unwrap_or_else(Cache::default_dir)));
    let key = Cache::key(name, &args.to_string());
    let cached: Option<Value> = cache
        .as_ref()
        .and_then(|c| c.get(&key))
        .and_then(|s| serde_json::from_str(&s).ok());
    let value = match cached {
        Some(v) => v,
        None => match compute() {
            Ok(v) => {
                if let Some(c) = &cache {
                    if let Err(e) = c.put(&key, &v.to_string()) {
                        eprintln!("warning: could not write cache entry: {e}");
                    }
                }
                v
            }
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(exit_code(&e));
            }
        },
    };
    print!("{}", render(&value, cli.format));
    if failed(&value) {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
