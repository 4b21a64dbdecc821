//! Command line frontend: `lff learn` runs the engine on task files,
//! `lff bench` synthesizes benchmark tasks and writes result tables.
//!
//! Exit codes: 0 on success, 1 for usage errors, 2 for task or parse
//! errors.

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use lff_core::bench::{
    gen_list_task, gen_trains_task, run_suite, trains_ground_truth, BenchConfig, ExampleCounts,
    TaskSpec, LIST_TASKS,
};
use lff_core::constraint::MatchMode;
use lff_core::engine::{run, write_trace_csv, EngineConfig, Mode, StopReason, Threshold};
use lff_core::parse::{parse_bias, parse_bk, parse_examples, print_hypothesis, validate_task};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

#[derive(Parser)]
#[command(
    name = "lff",
    version,
    about = "Inductive program synthesis from examples, tolerant of label noise"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Learn a program from bias, background knowledge, and example files.
    Learn(LearnArgs),
    /// Generate benchmark tasks, run the engine, and write a CSV table.
    Bench(BenchArgs),
}

#[derive(Args)]
struct LearnArgs {
    /// Bias file: head/body declarations, bounds, types, directions.
    #[arg(long, value_name = "FILE")]
    bias: PathBuf,
    /// Background knowledge file: ground facts and builtin directives.
    #[arg(long, value_name = "FILE")]
    bk: PathBuf,
    /// Examples file: pos(...) and neg(...) atoms.
    #[arg(long, value_name = "FILE")]
    exs: PathBuf,
    #[command(flatten)]
    engine: EngineArgs,
    /// Write a per-program search trace CSV here.
    #[arg(long, value_name = "FILE")]
    trace: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Task name: trains1, trains2, or a list task (member, last, len,
    /// evens, threesame, sorted, addhead, droplast, finddup).
    #[arg(long, value_name = "NAME")]
    task: String,
    /// Fraction of training labels to flip, e.g. 0.1 or 1/10.
    #[arg(long, value_name = "R", default_value = "0")]
    noise: String,
    /// Number of trials; trial i uses seed + i.
    #[arg(long, value_name = "N", default_value_t = 1)]
    trials: u64,
    /// Base random seed.
    #[arg(long, value_name = "N", default_value_t = 0)]
    seed: u64,
    /// Output CSV path.
    #[arg(long, value_name = "F.csv")]
    out: PathBuf,
    #[command(flatten)]
    engine: EngineArgs,
}

#[derive(Args)]
struct EngineArgs {
    /// Search mode.
    #[arg(long, value_enum, default_value_t = ModeArg::Normal)]
    mode: ModeArg,
    /// Noise threshold for outcome relaxation, e.g. 0.1 or 1/10.
    #[arg(long = "t", value_name = "R", default_value = "0")]
    threshold: String,
    /// Return the best program seen when no full solution is found.
    #[arg(long)]
    anytime: bool,
    /// Disable the relaxed constraint path.
    #[arg(long = "no-minimal")]
    no_minimal: bool,
    /// Disable the score-triggered sound constraint path.
    #[arg(long = "no-sound")]
    no_sound: bool,
    /// Disable the size-floor constraint path.
    #[arg(long = "no-size")]
    no_size: bool,
    /// Match constraints by exact program identity instead of
    /// subsumption.
    #[arg(long = "syntactic-constraints")]
    syntactic_constraints: bool,
    /// Stop after testing this many programs.
    #[arg(long = "max-programs", value_name = "N")]
    max_programs: Option<usize>,
    /// Wall-clock limit for one engine run, in seconds.
    #[arg(long, value_name = "SECS")]
    timeout: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Normal,
    Noisy,
    Enumerate,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Normal => Mode::Normal,
            ModeArg::Noisy => Mode::Noisy,
            ModeArg::Enumerate => Mode::Enumerate,
        }
    }
}

enum CliError {
    /// Bad flag values or combinations: exit code 1.
    Usage(String),
    /// Unreadable or unparseable task inputs, or I/O failures: exit 2.
    Task(String),
}

impl EngineArgs {
    fn to_config(&self) -> Result<EngineConfig, CliError> {
        let threshold = Threshold::parse(&self.threshold)
            .map_err(|e| CliError::Usage(format!("invalid --t value: {e}")))?;
        Ok(EngineConfig {
            mode: self.mode.into(),
            threshold,
            enable_minimal: !self.no_minimal,
            enable_sound: !self.no_sound,
            enable_size: !self.no_size,
            anytime: self.anytime,
            match_mode: if self.syntactic_constraints {
                MatchMode::Syntactic
            } else {
                MatchMode::Semantic
            },
            eval_limits: Default::default(),
        })
    }

    /// Label for CSV rows: the mode plus any ablation suffixes.
    fn label(&self) -> String {
        let mut label = match self.mode {
            ModeArg::Normal => "normal",
            ModeArg::Noisy => "noisy",
            ModeArg::Enumerate => "enumerate",
        }
        .to_string();
        if self.no_minimal {
            label.push_str("-no-minimal");
        }
        if self.no_sound {
            label.push_str("-no-sound");
        }
        if self.no_size {
            label.push_str("-no-size");
        }
        label
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.cmd {
        Cmd::Learn(args) => learn(&args),
        Cmd::Bench(args) => bench(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Task(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_input(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Task(format!("cannot read {}: {e}", path.display())))
}

fn learn(args: &LearnArgs) -> Result<(), CliError> {
    let cfg = args.engine.to_config()?;

    let bias_text = read_input(&args.bias)?;
    let (bias, mut bounds) = parse_bias(&bias_text)
        .map_err(|e| CliError::Task(format!("{}: {e}", args.bias.display())))?;
    let bk_text = read_input(&args.bk)?;
    let bk =
        parse_bk(&bk_text).map_err(|e| CliError::Task(format!("{}: {e}", args.bk.display())))?;
    let exs_text = read_input(&args.exs)?;
    let examples = parse_examples(&exs_text)
        .map_err(|e| CliError::Task(format!("{}: {e}", args.exs.display())))?;
    validate_task(&bias, &examples, &bk).map_err(|e| CliError::Task(e.to_string()))?;

    if let Some(n) = args.engine.max_programs {
        bounds.max_programs = Some(n);
    }
    if let Some(secs) = args.engine.timeout {
        bounds.wall_timeout = Some(Duration::from_secs(secs));
    }

    let res = run(&bias, &bounds, &bk, &examples, &cfg);

    match &res.returned {
        Some(h) => {
            if res.is_solution {
                println!("solution:");
            } else {
                println!("best program:");
            }
            println!("{}", print_hypothesis(h));
            if let Some(s) = &res.best_score {
                println!(
                    "score: tp={}/{} tn={}/{} s_acc={} s_mdl={} size={}",
                    s.outcome.tp,
                    examples.pos.len(),
                    s.outcome.tn,
                    examples.neg.len(),
                    s.s_acc,
                    s.s_mdl,
                    s.size
                );
            }
        }
        None => println!("no program returned"),
    }
    let stop = match res.stop_reason {
        StopReason::Solution => "solution found",
        StopReason::SpaceExhausted => "space exhausted",
        StopReason::ProgramBudget => "program budget reached",
        StopReason::Timeout => "timeout",
    };
    println!("programs tested: {}", res.programs_tested);
    println!("constraints: {}", res.constraints_added);
    println!("stopped: {stop}");
    println!("time: {:.3}s", res.wall_time.as_secs_f64());

    if let Some(path) = &args.trace {
        let file = fs::File::create(path)
            .map_err(|e| CliError::Task(format!("cannot write {}: {e}", path.display())))?;
        write_trace_csv(&res.trace, file)
            .map_err(|e| CliError::Task(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn bench(args: &BenchArgs) -> Result<(), CliError> {
    let mut cfg = args.engine.to_config()?;
    cfg.anytime = args.engine.anytime || matches!(args.engine.mode, ModeArg::Normal);
    let noise = Threshold::parse(&args.noise)
        .map_err(|e| CliError::Usage(format!("invalid --noise value: {e}")))?;
    if args.trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }

    let mut tasks: Vec<TaskSpec> = Vec::new();
    for trial in 0..args.trials {
        let seed = args.seed + trial;
        let task = match args.task.as_str() {
            "trains1" | "trains2" => {
                let which = if args.task == "trains1" { 1 } else { 2 };
                gen_trains_task(
                    &args.task,
                    &trains_ground_truth(which),
                    ExampleCounts::new(50, 50, 200, 200),
                    noise,
                    seed,
                )
            }
            name if LIST_TASKS.contains(&name) => {
                gen_list_task(name, ExampleCounts::new(20, 20, 1000, 1000), noise, seed)
            }
            other => Err(format!(
                "unknown task {other}; expected trains1, trains2, or one of {}",
                LIST_TASKS.join(", ")
            )),
        }
        .map_err(CliError::Task)?;
        tasks.push(apply_bounds(task, &args.engine));
    }

    let configs = vec![BenchConfig::new(&args.engine.label(), cfg)];
    let file = fs::File::create(&args.out)
        .map_err(|e| CliError::Task(format!("cannot write {}: {e}", args.out.display())))?;
    let records = run_suite(&tasks, &configs, file)
        .map_err(|e| CliError::Task(format!("cannot write {}: {e}", args.out.display())))?;

    for rec in &records {
        println!(
            "{} {} noise={} seed={}: accuracy={:.4} programs={} time={:.2}s",
            rec.task,
            rec.config,
            rec.noise,
            rec.seed,
            rec.accuracy,
            rec.programs,
            rec.time_s
        );
    }
    println!("wrote {}", args.out.display());
    Ok(())
}

fn apply_bounds(mut task: TaskSpec, engine: &EngineArgs) -> TaskSpec {
    if let Some(n) = engine.max_programs {
        task.bounds.max_programs = Some(n);
    }
    if let Some(secs) = engine.timeout {
        task.bounds.wall_timeout = Some(Duration::from_secs(secs));
    }
    task
}
