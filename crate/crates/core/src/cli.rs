//! `satposet` command line: one binary, subcommands sharing family and poset
//! parsing. Machine-readable output goes to stdout, summaries to stderr.
//!
//! Exit codes: 0 success, 1 a check or verification failed (its report is
//! still printed), 2 usage error, 3 internal contract violation.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::embedding::find_induced_copy;
use crate::error::{Error, Result};
use crate::hasse::emit_hasse;
use crate::model::{
    antichain, butterfly, chain, complete_bipartite_poset, n_poset, GroundSet, PosetSpec, SetFamily,
    SubsetMask,
};
use crate::saturation::{
    butterfly_construction, greedy_saturate, k2k_seed, kkk_seed, n_construction, saturation_report,
    saturation_report_fail_fast, CandidateOrder,
};
use crate::solver::{exact_sat_star, upper_bound_via_random_greedy};
use crate::suite::{render_table, run_suite, SuiteConfig};
use crate::theorems::{lemma1_check, verify_prop4_with, verify_theorem2, verify_theorem3};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CONTRACT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "satposet", version, about = "Induced poset saturation in the Boolean lattice")]
struct Cli {
    /// Worker threads for saturation checks and the solver.
    #[arg(long, global = true, env = "SATPOSET_THREADS")]
    threads: Option<usize>,

    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
    Text,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Construction {
    Butterfly,
    N,
    K2k,
    Kkk,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Theorem {
    Lemma1,
    T2,
    T3,
    P4,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Suite {
    Paper,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Order {
    Canonical,
    Random,
}

#[derive(Debug, Args)]
struct FamilyInput {
    /// Family file ('-' for stdin).
    #[arg(long = "in")]
    input: PathBuf,
    /// Ground set size; inferred from the largest element when omitted.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Emit one of the explicit saturated families or seeds.
    Construct {
        #[arg(long, value_enum)]
        family: Construction,
        #[arg(long)]
        n: usize,
        /// Parameter k for k2k and kkk.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Freeness and saturation report.
    Check {
        /// butterfly | n | k2k:K | kkk:K | chain:K | antichain:K | path to JSON.
        #[arg(long)]
        poset: String,
        #[command(flatten)]
        family: FamilyInput,
        /// Stop at the first unsaturated set.
        #[arg(long)]
        fail_fast: bool,
    },
    /// Find an induced copy.
    Embed {
        #[arg(long)]
        poset: String,
        #[command(flatten)]
        family: FamilyInput,
        /// A member that must be one of the images, e.g. "{1,2}".
        #[arg(long)]
        required: Option<String>,
    },
    /// Greedily complete a free seed to a saturated family.
    Greedy {
        #[arg(long)]
        poset: String,
        /// Seed family file; the empty family over [n] when omitted.
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value = "canonical")]
        order: Order,
        #[arg(long, default_value_t = 1)]
        rng_seed: u64,
    },
    /// Run a lower-bound verifier, or the full battery with --suite paper.
    Verify {
        #[arg(value_enum, required_unless_present = "suite")]
        theorem: Option<Theorem>,
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, conflicts_with = "theorem")]
        suite: Option<Suite>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Random instances per battery in the suite.
        #[arg(long, default_value_t = 60)]
        instances: usize,
        /// P4 only: also check the per-member difference property.
        #[arg(long)]
        strong: bool,
    },
    /// Exact sat* (exhaustive for n <= 4, budgeted beyond) or a randomized
    /// greedy upper bound.
    Solve {
        #[arg(long)]
        poset: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 10_000)]
        budget_ms: u64,
        /// Run randomized greedy with this many trials instead.
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = 1)]
        rng_seed: u64,
    },
    /// Hasse diagram of a family as DOT.
    Hasse {
        #[command(flatten)]
        family: FamilyInput,
    },
}

/// Resolve a poset selector.
pub fn resolve_poset(sel: &str) -> Result<PosetSpec> {
    let param = |s: &str| -> Result<usize> {
        s.parse()
            .map_err(|_| Error::usage(format!("bad poset parameter in {sel:?}")))
    };
    match sel.split_once(':') {
        None if sel.eq_ignore_ascii_case("butterfly") || sel == "B" => Ok(butterfly()),
        None if sel.eq_ignore_ascii_case("n") => Ok(n_poset()),
        Some(("k2k", k)) => complete_bipartite_poset(param(k)?, 2),
        Some(("kkk", k)) => {
            let k = param(k)?;
            complete_bipartite_poset(k, k)
        }
        Some(("chain", k)) => Ok(chain(param(k)?)),
        Some(("antichain", k)) => Ok(antichain(param(k)?)),
        _ => {
            let path = Path::new(sel);
            if !path.exists() {
                return Err(Error::usage(format!(
                    "unknown poset {sel:?}: expected butterfly, n, k2k:K, kkk:K, chain:K, antichain:K or a JSON file"
                )));
            }
            PosetSpec::from_json(&std::fs::read_to_string(path)?)
        }
    }
}

fn read_family(path: &Path, n: Option<usize>) -> Result<SetFamily> {
    let text = if path == Path::new("-") {
        std::io::read_to_string(std::io::stdin())?
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Error::usage(format!("cannot read {}: {e}", path.display())))?
    };
    let ground = n.map(GroundSet::new).transpose()?;
    SetFamily::parse(&text, ground)
}

fn family_json(f: &SetFamily) -> serde_json::Value {
    serde_json::json!(f.iter().map(|m| m.elements()).collect::<Vec<_>>())
}

fn emit_family(out: &mut dyn Write, f: &SetFamily, format: Option<Format>) -> Result<()> {
    match format {
        Some(Format::Json) => writeln!(out, "{}", family_json(f))?,
        _ => write!(out, "{}", f.to_text())?,
    }
    Ok(())
}

fn emit_json(out: &mut dyn Write, v: &serde_json::Value) -> Result<()> {
    writeln!(out, "{}", serde_json::to_string(v).expect("json values serialize"))?;
    Ok(())
}

fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let format = cli.format;
    match cli.command {
        Command::Construct { family, n, k } => {
            let need_k = || k.ok_or_else(|| Error::usage("--k is required for this family"));
            let f = match family {
                Construction::Butterfly => butterfly_construction(n)?,
                Construction::N => n_construction(n)?,
                Construction::K2k => k2k_seed(n, need_k()?)?,
                Construction::Kkk => kkk_seed(n, need_k()?)?,
            };
            writeln!(err, "{} sets over [{n}]", f.len())?;
            emit_family(out, &f, format)?;
            Ok(EXIT_OK)
        }
        Command::Check {
            poset,
            family,
            fail_fast,
        } => {
            let q = resolve_poset(&poset)?;
            let f = read_family(&family.input, family.n)?;
            let report = if fail_fast {
                saturation_report_fail_fast(&f, &q)
            } else {
                saturation_report(&f, &q)
            };
            match format {
                Some(Format::Text) | Some(Format::Tsv) => {
                    writeln!(out, "free\t{}", report.free)?;
                    writeln!(out, "saturated\t{}", report.saturated)?;
                    for s in &report.unsaturated {
                        writeln!(out, "unsaturated\t{s}")?;
                    }
                }
                _ => emit_json(out, &report.to_json())?,
            }
            writeln!(
                err,
                "{}: {} sets, free={}, saturated={}, {} unsaturated",
                q.name(),
                f.len(),
                report.free,
                report.saturated,
                report.unsaturated.len()
            )?;
            Ok(if report.saturated { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Embed {
            poset,
            family,
            required,
        } => {
            let q = resolve_poset(&poset)?;
            let f = read_family(&family.input, family.n)?;
            let required = match required {
                None => None,
                Some(text) => {
                    let one = SetFamily::parse(&text, Some(f.ground()))?;
                    match one.members() {
                        [m] => Some(*m),
                        _ => return Err(Error::usage(format!("--required must name one set, got {text:?}"))),
                    }
                }
            };
            match find_induced_copy(&f, &q, required)? {
                Some(w) => emit_json(out, &w.to_json())?,
                None => writeln!(out, "none")?,
            }
            Ok(EXIT_OK)
        }
        Command::Greedy {
            poset,
            input,
            n,
            order,
            rng_seed,
        } => {
            let q = resolve_poset(&poset)?;
            let seed = match (input, n) {
                (Some(path), n) => read_family(&path, n)?,
                (None, Some(n)) => SetFamily::empty(GroundSet::new(n)?),
                (None, None) => return Err(Error::usage("greedy needs --in or --n")),
            };
            let order = match order {
                Order::Canonical => CandidateOrder::Canonical,
                Order::Random => {
                    use rand::seq::SliceRandom;
                    use rand::SeedableRng;
                    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(rng_seed);
                    let mut all: Vec<SubsetMask> = seed.ground().all_subsets();
                    all.shuffle(&mut rng);
                    CandidateOrder::Explicit(all)
                }
            };
            let f = greedy_saturate(&seed, &q, &order)?;
            writeln!(err, "{} -> {} sets", seed.len(), f.len())?;
            emit_family(out, &f, format)?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            theorem,
            input,
            n,
            suite,
            seed,
            instances,
            strong,
        } => {
            if suite.is_some() {
                let results = run_suite(&SuiteConfig {
                    seed,
                    random_instances: instances,
                })?;
                match format {
                    Some(Format::Json) => emit_json(out, &serde_json::to_value(&results).expect("serializable"))?,
                    _ => write!(out, "{}", render_table(&results))?,
                }
                let failed = results.iter().filter(|r| !r.passed).count();
                writeln!(err, "{} criteria, {failed} failed", results.len())?;
                return Ok(if failed == 0 { EXIT_OK } else { EXIT_FAILED });
            }
            let theorem = theorem.ok_or_else(|| Error::usage("name a theorem or pass --suite paper"))?;
            let path = input.ok_or_else(|| Error::usage("verify needs --in"))?;
            let f = read_family(&path, n)?;
            let report = match theorem {
                Theorem::Lemma1 => lemma1_check(&f),
                Theorem::T2 => verify_theorem2(&f),
                Theorem::T3 => verify_theorem3(&f),
                Theorem::P4 => verify_prop4_with(&f, strong),
            };
            match format {
                Some(Format::Tsv) => write!(out, "{}", report.chevrons_tsv())?,
                Some(Format::Text) => {
                    writeln!(
                        out,
                        "{} n={} k={} size={} bound={} hypotheses={} passed={}",
                        report.theorem.code(),
                        report.n,
                        report.k,
                        report.size,
                        report.bound,
                        report.hypotheses_hold,
                        report.passed
                    )?;
                    for note in &report.notes {
                        writeln!(out, "note: {note}")?;
                    }
                }
                _ => emit_json(out, &report.to_json())?,
            }
            for note in &report.notes {
                writeln!(err, "{note}")?;
            }
            // A chevron search that finds nothing on a family that passed the
            // saturation gate means the saturation promise itself broke.
            if let Some(crate::theorems::Counterexample::NoChevron { detail, .. }) = &report.counterexample {
                writeln!(err, "{detail}")?;
                return Ok(EXIT_CONTRACT);
            }
            Ok(if report.passed { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Solve {
            poset,
            n,
            budget_ms,
            trials,
            rng_seed,
        } => {
            let q = resolve_poset(&poset)?;
            let result = match trials {
                Some(t) => upper_bound_via_random_greedy(n, &q, t, rng_seed, &[])?,
                None => exact_sat_star(n, &q, Duration::from_millis(budget_ms))?,
            };
            if !saturation_report(&result.certificate, &q).saturated {
                return Err(Error::contract("solver certificate is not saturated"));
            }
            emit_json(out, &result.to_json())?;
            writeln!(
                err,
                "sat*({n},{}) {} {}",
                q.name(),
                if result.exact { "=" } else { "<=" },
                result.value
            )?;
            Ok(EXIT_OK)
        }
        Command::Hasse { family } => {
            let f = read_family(&family.input, family.n)?;
            write!(out, "{}", emit_hasse(&f))?;
            Ok(EXIT_OK)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Contract(_) => EXIT_CONTRACT,
        _ => EXIT_USAGE,
    }
}

/// Parse `args` (including the program name) and run, returning the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads.unwrap_or(0))
        .build()
    {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "cannot start thread pool: {e}");
            return EXIT_USAGE;
        }
    };
    // Output is buffered so the command can run on the pool's threads.
    let (mut obuf, mut ebuf) = (Vec::new(), Vec::new());
    let result = pool.install(|| execute(cli, &mut obuf, &mut ebuf));
    let _ = out.write_all(&obuf);
    let _ = err.write_all(&ebuf);
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "{e}");
            exit_code(&e)
        }
    }
}
