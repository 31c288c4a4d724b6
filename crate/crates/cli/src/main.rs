use std::fmt;
use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tcube::codec::{
    decode_well_order, emit_config, emit_schedule, encode_well_order, parse_config,
    parse_schedule, WellOrderPrefix,
};
use tcube::config::{solved_config, window_clusters, PresentedConfiguration};
use tcube::evaluate::{evaluate, ClusterVerdict, Query, Verdict};
use tcube::geometry::{Axis, BasicTwist, CubeVariant, Edges, ExtIndex, Parity};
use tcube::group::subgroup_order;
use tcube::oracle::window_diff;
use tcube::schedule::Schedule;
use tcube::solver::generators::three_cycle_generators;
use tcube::solver::tables::{tables_report, CaseTable};
use tcube::solver::{solve_countable_edgeless, solve_edged_by_repetition};

#[derive(Parser)]
#[command(name = "tcube", version, about = "Infinitary Rubik's cube engine")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum ParityArg {
    Odd,
    Even,
}

#[derive(Args, Clone, Copy)]
struct VariantArgs {
    #[arg(long, value_enum, default_value = "odd")]
    variant: ParityArg,
    #[arg(long, conflicts_with = "edgeless")]
    edged: bool,
    #[arg(long)]
    edgeless: bool,
}

impl VariantArgs {
    fn get(self) -> CubeVariant {
        CubeVariant {
            parity: match self.variant {
                ParityArg::Odd => Parity::Odd,
                ParityArg::Even => Parity::Even,
            },
            edges: if self.edged {
                Edges::Edged
            } else {
                Edges::Edgeless
            },
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Apply a schedule document (or a random finite scramble) to the solved cube
    Scramble {
        schedule: Option<String>,
        #[command(flatten)]
        variant: VariantArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        depth: usize,
        #[arg(long, default_value_t = 5)]
        max_index: u64,
        /// Print the generated schedule instead of the configuration
        #[arg(long)]
        emit_schedule: bool,
    },
    /// Apply a schedule to a configuration
    Apply { schedule: String, config: String },
    /// Solve a configuration
    Solve {
        config: String,
        /// Target configuration (default: solved)
        #[arg(long)]
        target: Option<String>,
        /// For the edged cube: the twist-finite schedule that produced the configuration
        #[arg(long)]
        scramble: Option<String>,
        /// Print a verification report to stderr
        #[arg(long)]
        report: bool,
    },
    /// Re-evaluate a schedule and compare with the expected outcome
    Verify {
        schedule: String,
        config: String,
        /// Expected result (default: solved)
        #[arg(long)]
        expect: Option<String>,
        /// Also check every cluster with coordinates up to this bound
        #[arg(long, default_value_t = 12)]
        window: u64,
    },
    /// Print the case tables of the base 3-cycle sequence
    Tables,
    /// Order of the group generated by the 24 three-cycles
    GensCheck,
    /// Encode a well-order prefix into a configuration
    EncodeOrder {
        #[arg(required = true)]
        indices: Vec<u64>,
        #[command(flatten)]
        variant: VariantArgs,
        #[arg(long)]
        emit_schedule: bool,
    },
    /// Decode the order of the given indices from a configuration
    Decode {
        config: String,
        #[arg(required = true)]
        indices: Vec<u64>,
    },
    /// Compare presented evaluation with the finite surrogate on random scrambles
    OracleDiff {
        #[arg(long, default_value_t = 20)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        window: u64,
        #[arg(long, default_value_t = 30)]
        length: usize,
        #[command(flatten)]
        variant: VariantArgs,
    },
}

struct CliError {
    kind: &'static str,
    msg: String,
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "error: {}: {}", self.kind, self.msg)
    }
}

fn fail(kind: &'static str, msg: impl fmt::Display) -> CliError {
    CliError {
        kind,
        msg: msg.to_string(),
    }
}

macro_rules! from_err {
    ($t:ty, $kind:literal) => {
        impl From<$t> for CliError {
            fn from(e: $t) -> CliError {
                fail($kind, e)
            }
        }
    };
}

from_err!(std::io::Error, "io");
from_err!(tcube::codec::CodecError, "codec");
from_err!(tcube::schedule::ScheduleError, "schedule");
from_err!(tcube::config::ConfigError, "config");
from_err!(tcube::solver::SolverError, "solver");
from_err!(tcube::group::PermError, "group");
from_err!(tcube::oracle::OracleError, "oracle");

fn read(path: &str) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| fail("io", format!("{path}: {e}")))
}

fn load_config(path: &str) -> Result<PresentedConfiguration, CliError> {
    Ok(parse_config(&read(path)?)?)
}

fn load_schedule(path: &str) -> Result<Schedule, CliError> {
    Ok(parse_schedule(&read(path)?)?)
}

fn random_twists(rng: &mut ChaCha8Rng, v: CubeVariant, len: usize, max_index: u64) -> Vec<BasicTwist> {
    let mut layers = vec![ExtIndex::NegInf, ExtIndex::PosInf];
    if v.is_odd() {
        layers.push(ExtIndex::Zero);
    }
    for i in 1..=max_index {
        layers.push(ExtIndex::Pos(i));
        layers.push(ExtIndex::Neg(i));
    }
    (0..len)
        .map(|_| {
            let axis = Axis::ALL[rng.gen_range(0..3)];
            let layer = layers[rng.gen_range(0..layers.len())];
            BasicTwist::new(axis, layer, rng.gen_range(1..=3))
        })
        .collect()
}

fn verdict_lines(v: &Verdict) -> String {
    let mut out = String::new();
    let mut line = |what: String, cv: &ClusterVerdict| match cv {
        ClusterVerdict::Converged(c) => out.push_str(&format!("{what} converged {}\n", c.letters())),
        ClusterVerdict::Diverged { coloring, unstable } => out.push_str(&format!(
            "{what} diverged {} unstable {:?}\n",
            coloring.letters(),
            unstable
        )),
    };
    for (k, cv) in &v.classes {
        line(format!("entry {k}"), cv);
    }
    if let Some(c) = &v.center {
        line("center".into(), c);
    }
    for (id, cv) in &v.clusters {
        line(format!("cluster {id}"), cv);
    }
    out
}

/// Checks `s` against `expected` at class level and on every cluster with
/// coordinates up to `window`; returns the report lines.
fn check(
    s: &Schedule,
    cfg: &PresentedConfiguration,
    expected: &PresentedConfiguration,
    window: u64,
) -> Result<(bool, String), CliError> {
    let mut report = String::new();
    let classes = evaluate(s, cfg, &Query::AllClasses)?;
    let converged = classes.all_converged();
    report.push_str(&format!("classes converged: {converged}\n"));
    let mut ok = converged;
    if let Some(out) = &classes.config {
        let ids = window_clusters(cfg.variant, window);
        let mut bad = 0;
        for &id in &ids {
            if out.cluster_coloring_at(id)? != expected.cluster_coloring_at(id)? {
                bad += 1;
            }
        }
        report.push_str(&format!("classes match expected on {} window clusters: {}\n", ids.len(), bad == 0));
        ok &= bad == 0;
    }
    let ids = window_clusters(cfg.variant, window);
    let direct = evaluate(s, cfg, &Query::Clusters(ids.clone()))?;
    let mut bad = 0;
    for (id, cv) in &direct.clusters {
        if !cv.is_converged() || *cv.coloring() != expected.cluster_coloring_at(*id)? {
            bad += 1;
        }
    }
    report.push_str(&format!(
        "clusters up to {window}: {} of {} converged to expected\n",
        ids.len() - bad,
        ids.len()
    ));
    ok &= bad == 0;
    report.push_str(&format!("length: {}\n", s.ordinal_length()));
    report.push_str(if ok { "VERIFIED\n" } else { "MISMATCH\n" });
    Ok((ok, report))
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.cmd {
        Cmd::Scramble {
            schedule,
            variant,
            seed,
            depth,
            max_index,
            emit_schedule: emit_sched,
        } => {
            let v = variant.get();
            let s = match schedule {
                Some(p) => load_schedule(&p)?,
                None => {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    Schedule::from_twists(&random_twists(&mut rng, v, depth, max_index))
                }
            };
            if emit_sched {
                return Ok(emit_schedule(&s));
            }
            let verdict = evaluate(&s, &solved_config(v), &Query::AllClasses)?;
            match verdict.config {
                Some(c) => Ok(emit_config(&c)),
                None => Err(fail("evaluate", "the scramble does not converge")),
            }
        }
        Cmd::Apply { schedule, config } => {
            let s = load_schedule(&schedule)?;
            let cfg = load_config(&config)?;
            let verdict = evaluate(&s, &cfg, &Query::AllClasses)?;
            Ok(match &verdict.config {
                Some(c) => emit_config(c),
                None => verdict_lines(&verdict),
            })
        }
        Cmd::Solve {
            config,
            target,
            scramble,
            report,
        } => {
            let cfg = load_config(&config)?;
            let tgt = match target {
                Some(p) => load_config(&p)?,
                None => solved_config(cfg.variant),
            };
            let s = if cfg.variant.is_edged() {
                let p = scramble.ok_or_else(|| {
                    fail("usage", "the edged cube is solved from its scramble (--scramble)")
                })?;
                solve_edged_by_repetition(&load_schedule(&p)?, cfg.variant)?.schedule
            } else {
                solve_countable_edgeless(&cfg, &tgt)?
            };
            if report {
                let (_, r) = check(&s, &cfg, &tgt, 12)?;
                eprint!("{r}");
            }
            Ok(emit_schedule(&s))
        }
        Cmd::Verify {
            schedule,
            config,
            expect,
            window,
        } => {
            let s = load_schedule(&schedule)?;
            let cfg = load_config(&config)?;
            let exp = match expect {
                Some(p) => load_config(&p)?,
                None => solved_config(cfg.variant),
            };
            let (ok, r) = check(&s, &cfg, &exp, window)?;
            if ok {
                Ok(r)
            } else {
                print!("{r}");
                Err(fail("verify", "schedule does not reach the expected configuration"))
            }
        }
        Cmd::Tables => {
            let mut out = String::new();
            let rows = tables_report();
            for (table, title) in [
                (CaseTable::OffDiagonal, "alpha != beta"),
                (CaseTable::Diagonal, "alpha = beta"),
            ] {
                out.push_str(&format!("# {title}\n"));
                for r in rows.iter().filter(|r| r.table == table) {
                    out.push_str(&format!("{r}\n"));
                    if let Some((e, red)) = r.printed {
                        out.push_str(&format!("       printed as {e} / {red}\n"));
                    }
                }
            }
            let bad = rows.iter().filter(|r| !r.matches()).count();
            out.push_str(&format!("{} rows, {bad} mismatches\n", rows.len()));
            if bad > 0 {
                print!("{out}");
                return Err(fail("tables", format!("{bad} rows disagree")));
            }
            Ok(out)
        }
        Cmd::GensCheck => {
            let perms: Vec<_> = three_cycle_generators().iter().map(|g| g.perm.clone()).collect();
            let order = subgroup_order(&perms)?.to_string();
            let half_factorial: u128 = (1..=24u128).product::<u128>() / 2;
            let verdict = if order == half_factorial.to_string() {
                "MATCH"
            } else {
                "MISMATCH"
            };
            Ok(format!("{order}\n{verdict}\n"))
        }
        Cmd::EncodeOrder {
            indices,
            variant,
            emit_schedule: emit_sched,
        } => {
            let p = WellOrderPrefix::new(indices)?;
            let (s, cfg) = encode_well_order(&p, variant.get())?;
            Ok(if emit_sched {
                emit_schedule(&s)
            } else {
                emit_config(&cfg)
            })
        }
        Cmd::Decode { config, indices } => {
            let cfg = load_config(&config)?;
            let order = decode_well_order(&cfg, &indices)?;
            Ok(format!(
                "{}\n",
                order.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(" ")
            ))
        }
        Cmd::OracleDiff {
            n,
            seed,
            window,
            length,
            variant,
        } => {
            let v = variant.get();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut out = String::new();
            let mut total_bad = 0;
            for i in 0..n {
                let len = rng.gen_range(0..=length);
                let seq = random_twists(&mut rng, v, len, window);
                let d = window_diff(&solved_config(v), &seq, window)?;
                total_bad += d.mismatches.len();
                out.push_str(&format!(
                    "case {i}: {} twists, {} cells, {} mismatches\n",
                    seq.len(),
                    d.cells,
                    d.mismatches.len()
                ));
            }
            out.push_str(&format!("{}\n", if total_bad == 0 { "AGREE" } else { "DISAGREE" }));
            if total_bad > 0 {
                print!("{out}");
                return Err(fail("oracle", format!("{total_bad} cells disagree")));
            }
            Ok(out)
        }
    }
}

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{e}");
            if e.kind == "usage" {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
