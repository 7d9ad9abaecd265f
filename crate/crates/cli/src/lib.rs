//! Command-line front end for the `tailgame` library.
//!
//! [`run`] parses arguments, executes one subcommand and returns the
//! process exit code: 0 on success, 1 on invalid input, 2 when an
//! equilibrium decision is indeterminate.

pub mod document;
pub mod output;

use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use tailgame::construct::{self, TruncatedAtomSequence};
use tailgame::dist::{compare_expectation, compare_usual_stochastic, tail_compare, tweakable_compare};
use tailgame::mc::{summary_csv_row, SUMMARY_CSV_HEADER};
use tailgame::moments::{
    completely_monotonic_violation, interval_condition_violation, nonneg_differences_violation,
};
use tailgame::pareto::sweep_csv;
use tailgame::scalar::{format_f64, int, log10_abs, parse_rational, rat};
use tailgame::*;

use document::{load_distribution, load_game, load_sequence, load_truncated, parse_list, Game};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_INDETERMINATE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "tailgame", version, about = "Equilibria of games with distribution-valued payoffs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct InputArg {
    /// Game document (JSON).
    #[arg(long)]
    input: PathBuf,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Nash equilibria of a bimatrix game.
    Solve {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, value_enum, default_value = "support-enum")]
        method: Method,
    },
    /// Fictitious play trace as CSV.
    Fp {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        rounds: usize,
        /// Draw the opening pure strategies from this seed instead of (0, 0).
        #[arg(long)]
        seed: Option<u64>,
        /// Print every k-th round (the last round is always printed).
        #[arg(long, default_value_t = 1)]
        every: usize,
    },
    /// Equilibria of a vector game under the reflected-lexicographic order.
    RlexDecide {
        #[command(flatten)]
        input: InputArg,
    },
    /// Equilibria of a distribution game under the tail order.
    TailDecide {
        #[command(flatten)]
        input: InputArg,
    },
    /// Compare two distributions.
    Compare {
        #[arg(long, value_enum)]
        order: Order,
        #[arg(long)]
        p1: PathBuf,
        #[arg(long)]
        p2: PathBuf,
        /// Partition points a,x2,...,b (needed for --order tweak).
        #[arg(long)]
        partition: Option<String>,
    },
    /// Turn a distribution game into a vector game of negated segment expectations.
    Segment {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        partition: String,
    },
    /// Pareto-Nash equilibria of a vector game for fixed weights.
    Pareto {
        #[command(flatten)]
        input: InputArg,
        /// Weights of both players, e.g. "1,1,2;0,0,1".
        #[arg(long)]
        weights: String,
    },
    /// Solve the scalarized game for random weight pairs; CSV output.
    Sweep {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Monte Carlo estimates of equilibrium existence; CSV summary.
    Mc {
        #[arg(value_enum)]
        kind: McKind,
        #[command(flatten)]
        args: McArgs,
    },
    /// Counterexample generators.
    Construct {
        #[command(subcommand)]
        kind: ConstructKind,
    },
    /// Check a finite sequence against a moment condition.
    Momcheck {
        #[arg(long)]
        seq: PathBuf,
        #[arg(long, value_enum)]
        condition: Condition,
        #[arg(long)]
        b: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Method {
    SupportEnum,
    Pure,
    Dominant,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Order {
    Exp,
    St,
    Tail,
    Tweak,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum McKind {
    Pure,
    Rlex,
}

#[derive(Debug, Args)]
struct McArgs {
    #[arg(long = "m")]
    m: usize,
    #[arg(long = "n")]
    n: usize,
    #[arg(long, default_value_t = 2)]
    dim: usize,
    #[arg(long)]
    zero_sum: bool,
    #[arg(long)]
    trials: usize,
    #[arg(long)]
    seed: u64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Condition {
    Cm,
    Nonneg,
    Interval,
}

#[derive(Debug, Subcommand)]
enum ConstructKind {
    /// Atoms 2 - c^{-k} with masses (c-1)c^{-k}.
    Geom {
        #[arg(long)]
        c: String,
        #[arg(long)]
        n: usize,
        /// Second parameter for a cdf alternation check.
        #[arg(long)]
        against: Option<String>,
        #[arg(long, default_value_t = 5)]
        upto: usize,
    },
    /// Shift atoms right while keeping the cdfs alternating.
    Shift {
        /// Truncated atom sequence (JSON); defaults to s_k = 2 - 1/(k+1), f(s_k) = 2^-k.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Number of shifted terms for the default input.
        #[arg(long, default_value_t = 6)]
        n: usize,
    },
    /// Two atom sequences on [a, b] whose moments alternate.
    AltMoments {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        n: usize,
        /// First atom of x (default a).
        #[arg(long)]
        x1: Option<String>,
        /// First atom of y (default a).
        #[arg(long)]
        y1: Option<String>,
        #[arg(long, default_value_t = construct::DEFAULT_K_CAP)]
        k_cap: u32,
        /// Also write k,log10_lower,log10_upper rows to this file.
        #[arg(long)]
        bounds_csv: Option<PathBuf>,
    },
}

/// Run the command line `args` (program name first). Output goes to `out`,
/// diagnostics to `err`.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
        Err(e) => {
            let text = e.to_string();
            let line = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("invalid arguments");
            let _ = writeln!(err, "{}", line.trim());
            return EXIT_ERROR;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", format!("{e:#}").replace('\n', " "));
            EXIT_ERROR
        }
    }
}

fn print_json(out: &mut dyn Write, v: &Value) -> Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(v)?)?;
    Ok(())
}

fn expect_bimatrix(g: Game, path: &Path) -> Result<BimatrixGame<Rational>> {
    match g {
        Game::Bimatrix(g) => Ok(g),
        other => bail!("{} holds a {} game, expected bimatrix", path.display(), other.kind()),
    }
}

fn expect_vector(g: Game, path: &Path) -> Result<VectorBimatrixGame<Rational>> {
    match g {
        Game::Vector(g) => Ok(g),
        Game::Bimatrix(g) => {
            let cells = |m: &Matrix<Rational>| m.map(|v| vec![v.clone()]);
            Ok(VectorBimatrixGame::new(cells(&g.a), cells(&g.b))?)
        }
        other => bail!("{} holds a {} game, expected vector", path.display(), other.kind()),
    }
}

fn expect_distribution(g: Game, path: &Path) -> Result<DistributionBimatrixGame<Rational>> {
    match g {
        Game::Distribution(g) => Ok(g),
        other => bail!("{} holds a {} game, expected distribution", path.display(), other.kind()),
    }
}

fn parse_partition(text: &str) -> Result<Partition<Rational>> {
    Partition::new(parse_list(text).context("invalid --partition")?).context("invalid --partition")
}

fn parse_number(text: &str, flag: &str) -> Result<Rational> {
    parse_rational(text).with_context(|| format!("invalid --{flag}"))
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Solve { input, method } => {
            let g = expect_bimatrix(load_game(&input.input)?, &input.input)?;
            let value = if g.zero_sum { Some(zero_sum_value(&g)?) } else { None };
            let (name, outcome) = match method {
                Method::SupportEnum => ("support-enum", support_enumeration(&g)),
                Method::Pure => {
                    let equilibria = pure_equilibria(&g)
                        .into_iter()
                        .map(|(i, j)| EquilibriumReport::new(&g, MixedProfile::pure(i, j, g.rows(), g.cols())))
                        .collect();
                    ("pure", SolveOutcome { equilibria, degenerate: false })
                }
                Method::Dominant => {
                    let equilibria = dominant_solution(&g)
                        .map(|(i, j)| EquilibriumReport::new(&g, MixedProfile::pure(i, j, g.rows(), g.cols())))
                        .into_iter()
                        .collect();
                    ("dominant", SolveOutcome { equilibria, degenerate: false })
                }
            };
            let mut v = output::solve_outcome_json(name, &outcome, value.as_ref());
            if !matches!(method, Method::SupportEnum) {
                v["degenerate"] = Value::Null;
            }
            print_json(out, &v)?;
            Ok(EXIT_OK)
        }
        Command::Fp { input, rounds, seed, every } => {
            if rounds == 0 || every == 0 {
                bail!("--rounds and --every must be positive");
            }
            let g = expect_bimatrix(load_game(&input.input)?, &input.input)?;
            let mut header = vec!["round".to_string()];
            header.extend((1..=g.rows()).map(|i| format!("x_{i}")));
            header.extend((1..=g.cols()).map(|j| format!("y_{j}")));
            header.push("u1".into());
            writeln!(out, "{}", header.join(","))?;
            for step in FictitiousPlay::new(&g, seed).take(rounds) {
                if step.round % every != 0 && step.round != rounds {
                    continue;
                }
                let mut fields = vec![step.round.to_string()];
                fields.extend(step.x.iter().chain(&step.y).map(|v| format_f64(*v)));
                fields.push(format_f64(step.u1));
                writeln!(out, "{}", fields.join(","))?;
            }
            Ok(EXIT_OK)
        }
        Command::RlexDecide { input } => {
            let g = expect_vector(load_game(&input.input)?, &input.input)?;
            decision_output(&decide_rlex_equilibria(&g), out)
        }
        Command::TailDecide { input } => {
            let g = expect_distribution(load_game(&input.input)?, &input.input)?;
            decision_output(&decide_tail_equilibria(&g)?, out)
        }
        Command::Compare { order, p1, p2, partition } => {
            let (d1, d2) = (load_distribution(&p1)?, load_distribution(&p2)?);
            let result = match order {
                Order::Exp => compare_expectation(&d1, &d2),
                Order::St => compare_usual_stochastic(&d1, &d2),
                Order::Tail => tail_compare(&d1, &d2)?,
                Order::Tweak => {
                    let text = partition.ok_or_else(|| anyhow!("--order tweak needs --partition"))?;
                    tweakable_compare(&d1, &d2, &parse_partition(&text)?)?
                }
            };
            writeln!(out, "{result}")?;
            Ok(EXIT_OK)
        }
        Command::Segment { input, partition } => {
            let g = expect_distribution(load_game(&input.input)?, &input.input)?;
            let (vg, outside) = pareto::segment_game(&g, &parse_partition(&partition)?)?;
            if !outside.is_empty() {
                let list: Vec<String> = outside.iter().map(scalar::format_rational).collect();
                writeln!(err, "warning: atoms outside the partition were skipped: {}", list.join(", "))?;
            }
            print_json(out, &document::game_json(&Game::Vector(vg)))?;
            Ok(EXIT_OK)
        }
        Command::Pareto { input, weights } => {
            let g = expect_vector(load_game(&input.input)?, &input.input)?;
            let (w1, w2) = weights.split_once(';').ok_or_else(|| anyhow!("--weights must look like \"w1;w2\""))?;
            let w1 = WeightVector::new(parse_list(w1)?).context("invalid weights for player 1")?;
            let w2 = WeightVector::new(parse_list(w2)?).context("invalid weights for player 2")?;
            let outcome = pareto_nash(&g, &w1, &w2)?;
            print_json(out, &output::solve_outcome_json("pareto", &outcome, None))?;
            Ok(EXIT_OK)
        }
        Command::Sweep { input, samples, seed } => {
            let g = expect_vector(load_game(&input.input)?, &input.input)?;
            let to_f64 = |m: &Matrix<Vec<Rational>>| m.map(|v| v.iter().map(Scalar::to_f64).collect::<Vec<f64>>());
            let fg = VectorBimatrixGame::new(to_f64(&g.a), to_f64(&g.b))?;
            write!(out, "{}", sweep_csv(&weight_sweep(&fg, samples, seed), fg.rows(), fg.cols()))?;
            Ok(EXIT_OK)
        }
        Command::Mc { kind, args } => {
            let McArgs { m, n, dim, zero_sum, trials, seed } = args;
            match kind {
                McKind::Pure => {
                    let s = estimate_pure_probability(m, n, zero_sum, trials, seed)?;
                    writeln!(out, "{SUMMARY_CSV_HEADER}")?;
                    writeln!(out, "{}", summary_csv_row(m, n, 1, zero_sum, seed, &s, 0, 0))?;
                }
                McKind::Rlex => {
                    let r = estimate_rlex_probability(m, n, dim, zero_sum, trials, seed)?;
                    writeln!(out, "{SUMMARY_CSV_HEADER}")?;
                    writeln!(
                        out,
                        "{}",
                        summary_csv_row(m, n, dim, zero_sum, seed, &r.rlex, r.nonpure_found, r.indeterminate)
                    )?;
                    writeln!(
                        err,
                        "pure top-coordinate equilibria: hits={} estimate={} ci95={}",
                        r.pure_top.hits,
                        format_f64(r.pure_top.estimate),
                        format_f64(r.pure_top.ci95_halfwidth)
                    )?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Construct { kind } => construct_command(kind, out),
        Command::Momcheck { seq, condition, b } => {
            let s = FiniteSequence::new(load_sequence(&seq)?)?;
            let (name, violation) = match condition {
                Condition::Cm => ("cm", completely_monotonic_violation(&s)),
                Condition::Nonneg => ("nonneg", nonneg_differences_violation(&s)),
                Condition::Interval => {
                    let b = b.ok_or_else(|| anyhow!("--condition interval needs --b"))?;
                    ("interval", interval_condition_violation(&s, &parse_number(&b, "b")?))
                }
            };
            let violation = violation.map(|(n, k)| json!({ "n": n, "k": k }));
            print_json(out, &json!({ "condition": name, "holds": violation.is_none(), "violation": violation }))?;
            Ok(EXIT_OK)
        }
    }
}

fn decision_output(d: &RlexDecision<Rational>, out: &mut dyn Write) -> Result<i32> {
    print_json(out, &output::rlex_decision_json(d))?;
    Ok(if d.status == RlexStatus::Indeterminate { EXIT_INDETERMINATE } else { EXIT_OK })
}

fn default_shift_input(n: usize) -> Result<TruncatedAtomSequence> {
    if n == 0 {
        bail!("--n must be positive");
    }
    let count = n as i64 + 1;
    let atoms = (1..=count).map(|k| int(2) - rat(1, k + 1)).collect();
    let masses = (1..=count as u32).map(|k| int(2).power(k).recip()).collect();
    Ok(TruncatedAtomSequence::new(atoms, masses, int(2).power(count as u32).recip(), int(2))?)
}

fn construct_command(kind: ConstructKind, out: &mut dyn Write) -> Result<i32> {
    let v = match kind {
        ConstructKind::Geom { c, n, against, upto } => {
            let c = parse_number(&c, "c")?;
            let seq = geometric_tail_family(&c, n)?;
            let mut v = json!({ "c": document::rational_json(&c), "sequence": document::truncated_json(&seq) });
            if let Some(other) = against {
                let c2 = parse_number(&other, "against")?;
                let seq2 = geometric_tail_family(&c2, n)?;
                let holds = verify_cdf_alternation(&seq, &seq2, upto)? && verify_cdf_alternation(&seq2, &seq, upto)?;
                v["cdf_alternation"] = json!({ "against": document::rational_json(&c2), "upto": upto, "holds": holds });
            }
            v
        }
        ConstructKind::Shift { input, n } => {
            let seq = match input {
                Some(path) => load_truncated(&path)?,
                None => default_shift_input(n)?,
            };
            let mut v = output::shift_json(&shift_construction(&seq)?);
            v["input"] = document::truncated_json(&seq);
            v
        }
        ConstructKind::AltMoments { a, b, n, x1, y1, k_cap, bounds_csv } => {
            let (a, b) = (parse_number(&a, "a")?, parse_number(&b, "b")?);
            let x1 = x1.map(|t| parse_number(&t, "x1")).transpose()?.unwrap_or_else(|| a.clone());
            let y1 = y1.map(|t| parse_number(&t, "y1")).transpose()?.unwrap_or_else(|| a.clone());
            let (x, y, cert) = alternating_moment_pair(&a, &b, n, &x1, &y1, k_cap)?;
            if let Some(path) = bounds_csv {
                let mut csv = String::from("k,log10_lower,log10_upper\n");
                for (k, (lower, upper)) in cert.k_indices.iter().zip(&cert.bound_checks) {
                    csv.push_str(&format!("{k},{},{}\n", format_f64(log10_abs(lower)), format_f64(log10_abs(upper))));
                }
                std::fs::write(&path, csv).with_context(|| format!("cannot write {}", path.display()))?;
            }
            json!({
                "x": document::truncated_json(&x),
                "y": document::truncated_json(&y),
                "certificate": output::certificate_json(&cert),
                "verified": verify_alternation_certificate(&x, &y, &cert),
            })
        }
    };
    print_json(out, &v)?;
    Ok(EXIT_OK)
}
