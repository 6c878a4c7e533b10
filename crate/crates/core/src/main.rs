use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use rtm2v::cantor::{format_quad_word, Quad};
use rtm2v::orbit::{self, BasinCounts};
use rtm2v::render::{render_svg, RenderOptions};
use rtm2v::transducer::{self, IdentityCheck, Transducer};
use rtm2v::turing::{self, CodeStyle, CompileError, EncodingScheme, Mode, ReversibilityError, TuringMachine};
use rtm2v::{gen, DyadicPoint, PatternPair, Rect, Word};

#[derive(Parser)]
#[command(name = "rtm2v", version, about = "Reversible Turing machines, the group 2V, and transducers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Turing machine checks, compilation and stepping.
    #[command(subcommand)]
    Tm(TmCommand),
    /// Elements of 2V given as numbered pattern pairs.
    #[command(name = "2v", subcommand)]
    TwoV(TwoVCommand),
    /// Asynchronous transducers.
    #[command(subcommand)]
    Transducer(TransducerCommand),
    /// Orbits of dyadic points.
    #[command(subcommand)]
    Orbit(OrbitCommand),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Complete,
    Halting,
}

#[derive(Clone, Copy, ValueEnum)]
enum CodesArg {
    Comb,
    ExampleStyle,
}

#[derive(Args)]
struct SchemeArgs {
    #[arg(long, value_enum, default_value = "complete")]
    mode: ModeArg,
    #[arg(long, value_enum, default_value = "example-style")]
    codes: CodesArg,
    /// Explicit state codes, comma separated (overrides --codes).
    #[arg(long, value_delimiter = ',')]
    state_codes: Option<Vec<String>>,
    /// Explicit symbol codes, comma separated; the blank comes first.
    #[arg(long, value_delimiter = ',')]
    symbol_codes: Option<Vec<String>>,
}

#[derive(Args)]
struct Output {
    /// Write to this file instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum TmCommand {
    /// Report determinism, reversibility and completeness.
    Check {
        machine: PathBuf,
        /// Do not require completeness.
        #[arg(long)]
        allow_halting: bool,
    },
    /// Compile a machine into an element of 2V.
    Compile {
        machine: PathBuf,
        #[command(flatten)]
        scheme: SchemeArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Run a configuration forward.
    Step {
        machine: PathBuf,
        /// Configuration literal, e.g. `s1 | -1:a2, 1:a3`.
        #[arg(long)]
        config: String,
        #[arg(long, default_value_t = 1)]
        steps: usize,
        /// Step backwards instead.
        #[arg(long)]
        back: bool,
    },
    /// Print the dyadic point encoding a configuration.
    Encode {
        machine: PathBuf,
        #[arg(long)]
        config: String,
        #[command(flatten)]
        scheme: SchemeArgs,
    },
}

#[derive(Subcommand)]
enum TwoVCommand {
    /// `f` then `g`.
    Compose {
        f: PathBuf,
        g: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Swap domain and range in every pair.
    Invert {
        f: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Search for the order among the first `--max` powers.
    Order {
        f: PathBuf,
        #[arg(long)]
        max: u64,
    },
    /// Apply to a point literal such as `(101, -)`.
    Apply { f: PathBuf, point: String },
    /// Exit 0 iff the elements are equal.
    Equal { f: PathBuf, g: PathBuf },
    /// Two-panel SVG of the numbered pattern pair.
    Render {
        f: PathBuf,
        /// Shade the regions R(0,0) and R(1,0).
        #[arg(long)]
        halting: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Check that domains and ranges are dyadic subdivisions.
    Validate { f: PathBuf },
    /// Merge sibling pairs.
    Reduce {
        f: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// A random element.
    Random {
        #[arg(long, default_value_t = 6)]
        pieces: usize,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Subcommand)]
enum TransducerCommand {
    /// Compile an element into a transducer over {00,01,10,11}.
    FromElement {
        f: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Run on a space-separated input word; `-` is the empty word.
    Run {
        t: PathBuf,
        input: String,
        /// Print the output as an interleaved point.
        #[arg(long)]
        decode: bool,
    },
    /// `t1` then `t2`.
    Compose {
        t1: PathBuf,
        t2: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Nondegeneracy verdict, optionally a bounded identity check.
    Check {
        t: PathBuf,
        #[arg(long)]
        identity_depth: Option<usize>,
    },
    /// Graphviz export.
    Dot {
        t: PathBuf,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args)]
struct Budget {
    /// Maximum number of applications of the element.
    #[arg(long)]
    budget: usize,
}

#[derive(Subcommand)]
enum OrbitCommand {
    /// Iterate from a point until a cycle closes or the budget runs out.
    Trace {
        f: PathBuf,
        #[arg(long)]
        start: String,
        #[command(flatten)]
        budget: Budget,
    },
    /// Does the orbit reach a rectangle?
    Hit {
        f: PathBuf,
        #[arg(long)]
        start: String,
        #[arg(long)]
        rect: String,
        #[command(flatten)]
        budget: Budget,
        #[arg(long)]
        trace: bool,
    },
    /// Does the orbit converge to a point?
    Converge {
        f: PathBuf,
        #[arg(long)]
        start: String,
        #[arg(long)]
        to: String,
        #[command(flatten)]
        budget: Budget,
        #[arg(long)]
        trace: bool,
    },
    /// Classify sample points by membership in the basin of `--to`.
    Basin {
        f: PathBuf,
        #[arg(long)]
        to: String,
        #[command(flatten)]
        budget: Budget,
        /// Sample every point whose coordinates have at most this many bits.
        #[arg(long, default_value_t = 3)]
        heads: usize,
        /// Read sample points from a file, one literal per line.
        #[arg(long)]
        samples: Option<PathBuf>,
        /// Restrict samples to a rectangle.
        #[arg(long)]
        within: Option<String>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

enum Failure {
    /// The answer was "no" or a check failed: exit 1.
    Violation(String),
    /// Bad input: exit 2.
    Input(String),
}

type Outcome = Result<ExitCode, Failure>;

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn parse_file<T>(path: &Path) -> Result<T, Failure>
where
    T: std::str::FromStr,
    T::Err: std::fmt::Display,
{
    read(path)?
        .parse()
        .map_err(|e: T::Err| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_element(path: &Path) -> Result<PatternPair, Failure> {
    let f: PatternPair = parse_file(path)?;
    f.validate()
        .map_err(|e| Failure::Input(format!("{}: invalid element: {e}", path.display())))?;
    Ok(f)
}

fn parse_point(s: &str) -> Result<DyadicPoint, Failure> {
    s.parse().map_err(input)
}

fn emit(out: &Output, text: &str) -> Result<(), Failure> {
    match &out.output {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(input)
        }
    }
}

fn success() -> Outcome {
    Ok(ExitCode::SUCCESS)
}

fn verdict(holds: bool) -> Outcome {
    Ok(if holds { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn scheme_for(machine: &TuringMachine, args: &SchemeArgs) -> Result<EncodingScheme, Failure> {
    let mode = match args.mode {
        ModeArg::Complete => Mode::Complete,
        ModeArg::Halting => Mode::Halting,
    };
    let style = match args.codes {
        CodesArg::Comb => CodeStyle::Comb,
        CodesArg::ExampleStyle => CodeStyle::ExampleStyle,
    };
    let words = |list: &[String]| list.iter().map(|w| w.trim().parse::<Word>()).collect::<Result<Vec<_>, _>>();
    let default = turing::default_scheme(machine, mode, style).map_err(input);
    match (&args.state_codes, &args.symbol_codes) {
        (None, None) => default,
        (states, symbols) => {
            let base = default.ok();
            let states = match states {
                Some(list) => words(list).map_err(input)?,
                None => base.as_ref().ok_or_else(|| Failure::Input("state codes required".into()))?.state_codes().words().to_vec(),
            };
            let symbols = match symbols {
                Some(list) => words(list).map_err(input)?,
                None => base.as_ref().ok_or_else(|| Failure::Input("symbol codes required".into()))?.symbol_codes().words().to_vec(),
            };
            EncodingScheme::new(machine, states, symbols, mode).map_err(input)
        }
    }
}

fn pair_list(machine: &TuringMachine, pairs: &[(usize, usize)]) -> String {
    pairs
        .iter()
        .map(|&(s, a)| format!("({},{})", machine.states()[s], machine.symbols()[a]))
        .collect::<Vec<_>>()
        .join(" ")
}

fn tm(cmd: TmCommand) -> Outcome {
    match cmd {
        TmCommand::Check { machine, allow_halting } => {
            let m: TuringMachine = parse_file(&machine)?;
            let mut parts = Vec::new();
            let mut ok = true;
            match m.check_deterministic() {
                Ok(()) => parts.push("deterministic ✓".to_string()),
                Err(c) => {
                    ok = false;
                    parts.push(format!(
                        "deterministic ✗ conflict: {} / {}",
                        m.describe(&c.first),
                        m.describe(&c.second)
                    ));
                }
            }
            match m.check_reversible() {
                Ok(()) => parts.push("reversible ✓".to_string()),
                Err(ReversibilityError::NotDeterministic(_)) => {
                    ok = false;
                    parts.push("reversible ✗ (not deterministic)".to_string());
                }
                Err(ReversibilityError::Collision(c)) => {
                    ok = false;
                    parts.push(format!(
                        "reversible ✗ collision: {} / {}",
                        m.describe(&c.first),
                        m.describe(&c.second)
                    ));
                }
            }
            match m.check_complete() {
                Ok(()) => parts.push("complete ✓".to_string()),
                Err(pairs) => {
                    ok &= allow_halting;
                    parts.push(format!("complete ✗ halting pairs: {}", pair_list(&m, &pairs)));
                }
            }
            println!("{}", parts.join(" "));
            verdict(ok)
        }
        TmCommand::Compile { machine, scheme, out } => {
            let m: TuringMachine = parse_file(&machine)?;
            let scheme = scheme_for(&m, &scheme)?;
            let f = turing::compile(&m, &scheme).map_err(|e| match e {
                CompileError::Incomplete(pairs) => {
                    Failure::Violation(format!("machine is not complete; halting pairs: {}", pair_list(&m, &pairs)))
                }
                CompileError::NotDeterministic(c) | CompileError::NotReversible(c) => Failure::Violation(format!(
                    "{e}: {} / {}",
                    m.describe(&c.first),
                    m.describe(&c.second)
                )),
                other => Failure::Violation(other.to_string()),
            })?;
            emit(&out, &f.to_string())?;
            success()
        }
        TmCommand::Step {
            machine,
            config,
            steps,
            back,
        } => {
            let m: TuringMachine = parse_file(&machine)?;
            let mut c = m.parse_config(&config).map_err(input)?;
            println!("0: {}", m.format_config(&c));
            for k in 1..=steps {
                let next = if back { m.step_back(&c) } else { m.step(&c) };
                match next {
                    Some(n) => c = n,
                    None => {
                        println!("{}", if back { "no predecessor" } else { "halted" });
                        return success();
                    }
                }
                println!("{k}: {}", m.format_config(&c));
            }
            success()
        }
        TmCommand::Encode { machine, config, scheme } => {
            let m: TuringMachine = parse_file(&machine)?;
            let scheme = scheme_for(&m, &scheme)?;
            let c = m.parse_config(&config).map_err(input)?;
            println!("{}", scheme.encode_config(&c));
            success()
        }
    }
}

fn twov(cmd: TwoVCommand) -> Outcome {
    match cmd {
        TwoVCommand::Compose { f, g, out } => {
            let (f, g) = (load_element(&f)?, load_element(&g)?);
            emit(&out, &f.compose(&g).to_string())?;
            success()
        }
        TwoVCommand::Invert { f, out } => {
            emit(&out, &load_element(&f)?.invert().to_string())?;
            success()
        }
        TwoVCommand::Order { f, max } => {
            println!("{}", load_element(&f)?.order_bounded(max));
            success()
        }
        TwoVCommand::Apply { f, point } => {
            let f = load_element(&f)?;
            let p = parse_point(&point)?;
            println!("{}", f.apply(&p).map_err(input)?);
            success()
        }
        TwoVCommand::Equal { f, g } => {
            let equal = load_element(&f)?.equals(&load_element(&g)?);
            println!("{}", if equal { "equal" } else { "not equal" });
            verdict(equal)
        }
        TwoVCommand::Render { f, halting, out } => {
            emit(&out, &render_svg(&load_element(&f)?, RenderOptions { halting }))?;
            success()
        }
        TwoVCommand::Validate { f } => {
            let f: PatternPair = parse_file(&f)?;
            match f.validate() {
                Ok(()) => {
                    println!("valid ({} pairs)", f.len());
                    success()
                }
                Err(report) => Err(Failure::Violation(format!("invalid: {report}"))),
            }
        }
        TwoVCommand::Reduce { f, out } => {
            emit(&out, &load_element(&f)?.reduce().to_string())?;
            success()
        }
        TwoVCommand::Random { pieces, seed, out } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            emit(&out, &gen::random_element(&mut rng, pieces.max(1)).to_string())?;
            success()
        }
    }
}

fn transducer_cmd(cmd: TransducerCommand) -> Outcome {
    match cmd {
        TransducerCommand::FromElement { f, out } => {
            emit(&out, &transducer::from_element(&load_element(&f)?).to_string())?;
            success()
        }
        TransducerCommand::Run { t, input: word, decode } => {
            let t: Transducer = parse_file(&t)?;
            let names: Vec<&str> = word.split_whitespace().filter(|s| *s != "-").collect();
            let (out, end) = t.run_names(&names).map_err(input)?;
            if decode {
                let quads = out
                    .iter()
                    .map(|s| s.parse::<Quad>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(input)?;
                let (a, b) = transducer::pi_decode(&quads);
                println!("{}", format_quad_word(&quads));
                println!("({a}, {b})");
            } else if out.is_empty() {
                println!("-");
            } else {
                println!("{}", out.join(" "));
            }
            println!("end state {end}");
            success()
        }
        TransducerCommand::Compose { t1, t2, out } => {
            let (t1, t2): (Transducer, Transducer) = (parse_file(&t1)?, parse_file(&t2)?);
            let t = transducer::compose_transducers(&t1, &t2).map_err(input)?;
            emit(&out, &t.to_string())?;
            success()
        }
        TransducerCommand::Check { t, identity_depth } => {
            let t: Transducer = parse_file(&t)?;
            let nondegenerate = match t.check_nondegenerate() {
                Ok(()) => {
                    println!("nondegenerate");
                    true
                }
                Err(cycle) => {
                    println!("degenerate, {cycle}");
                    false
                }
            };
            let mut identity = true;
            if let Some(depth) = identity_depth {
                match t.bounded_identity_check(depth) {
                    IdentityCheck::ConsistentWithIdentity { depth } => {
                        println!("consistent with identity up to depth {depth} (not a proof)");
                    }
                    IdentityCheck::Counterexample { input, output } => {
                        identity = false;
                        println!(
                            "not the identity: input {} gives {}",
                            t.format_word(&input),
                            t.format_word(&output)
                        );
                    }
                }
            }
            verdict(nondegenerate && identity)
        }
        TransducerCommand::Dot { t, out } => {
            let t: Transducer = parse_file(&t)?;
            emit(&out, &t.to_dot())?;
            success()
        }
    }
}

fn orbit_cmd(cmd: OrbitCommand) -> Outcome {
    match cmd {
        OrbitCommand::Trace { f, start, budget } => {
            let f = load_element(&f)?;
            let t = orbit::iterate(&f, &parse_point(&start)?, budget.budget);
            print!("{}", t.export());
            success()
        }
        OrbitCommand::Hit {
            f,
            start,
            rect,
            budget,
            trace,
        } => {
            let f = load_element(&f)?;
            let r: Rect = rect.parse().map_err(input)?;
            let (t, v) = orbit::hit_trace(&f, &parse_point(&start)?, &r, budget.budget);
            if trace {
                print!("{}", t.export());
            }
            println!("{v}");
            success()
        }
        OrbitCommand::Converge {
            f,
            start,
            to,
            budget,
            trace,
        } => {
            let f = load_element(&f)?;
            let (t, v) = orbit::convergence_trace(&f, &parse_point(&start)?, &parse_point(&to)?, budget.budget);
            if trace {
                print!("{}", t.export());
            }
            println!("{v}");
            success()
        }
        OrbitCommand::Basin {
            f,
            to,
            budget,
            heads,
            samples,
            within,
            jobs,
        } => {
            let f = load_element(&f)?;
            let q = parse_point(&to)?;
            let mut points = match samples {
                Some(path) => read(&path)?
                    .lines()
                    .map(str::trim)
                    .filter(|l| !l.is_empty() && !l.starts_with('#'))
                    .map(parse_point)
                    .collect::<Result<Vec<_>, _>>()?,
                None => orbit::points_up_to(heads),
            };
            if let Some(r) = within {
                let r: Rect = r.parse().map_err(input)?;
                points.retain(|p| r.contains_point(p));
            }
            let classes = orbit::basin_sample_parallel(&f, &q, &points, budget.budget, jobs);
            for (p, c) in points.iter().zip(&classes) {
                println!("{p}: {c}");
            }
            println!("{}", BasinCounts::tally(&classes));
            success()
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Tm(c) => tm(c),
        Command::TwoV(c) => twov(c),
        Command::Transducer(c) => transducer_cmd(c),
        Command::Orbit(c) => orbit_cmd(c),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Violation(msg)) => {
            eprintln!("rtm2v: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("rtm2v: error: {msg}");
            ExitCode::from(2)
        }
    }
}
