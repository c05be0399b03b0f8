//! `piperfect`: weighted Hamming metrics, perfect-code constructions and
//! their verification from the command line.

mod report;

use std::fs;
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use piperfect::construct::{code_from_family, family_build};
use piperfect::hamming::Variant;
use piperfect::metric::{pi_distance, pi_weight, sphere_enumerate, sphere_size};
use piperfect::perfect::{
    verify_exhaustive_with, verify_structural, ExhaustiveOptions, PerfectnessReport, Witness,
    DEFAULT_MAX_SCAN_N,
};
use piperfect::spectrum::{
    fourier, pi_weight_enumerator, recover_distribution, support_characterization,
    DistributionTable,
};
use piperfect::weightsearch::{
    ext_hamming_2perfect_feasibility, ext_hamming_2perfect_pi, ext_hamming_3perfect_pi,
    hamming_2perfect_pi, max_hamming_x1, nagell_solutions, WeightAssignment,
};
use piperfect::{BitWord, ExplicitCode, LinearCode, TwoValuedProfile, WeightVector};

use report::{columns, render_json, render_table, InputDigest, Outcome, Status};

#[derive(Parser)]
#[command(name = "piperfect", version, about = "Perfect codes under weighted Hamming metrics")]
struct Cli {
    #[arg(long, value_enum, default_value = "table", global = true)]
    format: Format,
    /// Worker threads for exhaustive verification.
    #[arg(long, default_value_t = 1, global = true)]
    jobs: usize,
    /// Report wall time.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Exhaustive,
    Structural,
}

#[derive(Subcommand)]
enum Command {
    /// pi-weight of a word.
    Weight {
        /// Weight vector: a file, or a comma-separated list.
        #[arg(long)]
        pi: String,
        word: String,
    },
    /// pi-distance between two words.
    Distance {
        #[arg(long)]
        pi: String,
        x: String,
        y: String,
    },
    /// Size of a pi-sphere, by composition; optionally its members.
    Sphere {
        #[arg(long)]
        pi: String,
        #[arg(long)]
        radius: u64,
        /// Center (defaults to the zero word).
        #[arg(long)]
        center: Option<String>,
        /// List the members.
        #[arg(long)]
        list: bool,
    },
    /// Check that the pi-spheres around a code partition the space.
    Verify {
        #[arg(long)]
        code: String,
        #[arg(long)]
        pi: String,
        #[arg(long)]
        radius: u64,
        #[arg(long, value_enum, default_value = "exhaustive")]
        method: MethodArg,
    },
    /// Weights making the Hamming code H_m 2-perfect.
    HammingPi {
        #[arg(long)]
        m: u32,
        /// Number of weight-1 positions (default: the largest admissible).
        #[arg(long)]
        x1: Option<usize>,
        /// Positions forced into X1, comma-separated.
        #[arg(long, value_delimiter = ',')]
        seed: Option<Vec<usize>>,
    },
    /// Weights making the extended Hamming code 2- or 3-perfect.
    ExtHammingPi {
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(2..=3))]
        radius: u64,
        #[arg(long)]
        x1: Option<usize>,
    },
    /// Solutions of x^2 + 7 = 2^n.
    Nagell {
        #[arg(long)]
        limit: u32,
    },
    /// Build a family parity-check matrix and its 2-perfect code.
    Construct {
        #[arg(long)]
        t: u32,
        #[arg(long)]
        m: usize,
        /// Head column values (top row least significant), comma-separated.
        #[arg(long, value_delimiter = ',')]
        seed: Option<Vec<u64>>,
    },
    /// Character sums and weight distributions of a code.
    Spectrum(SpectrumArgs),
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("mode").required(true).multiple(true).args(["fourier", "recover", "enumerator"]))]
struct SpectrumArgs {
    #[arg(long)]
    code: String,
    /// Number of weight-1 positions (the first m).
    #[arg(long)]
    m: usize,
    #[arg(long)]
    fourier: bool,
    #[arg(long, requires = "head")]
    recover: bool,
    /// a_{0,0}, ..., a_{m,0}, comma-separated.
    #[arg(long, value_delimiter = ',')]
    head: Option<Vec<u64>>,
    #[arg(long)]
    enumerator: bool,
}

struct Ctx {
    digest: InputDigest,
    opts: ExhaustiveOptions,
}

impl Ctx {
    fn read(&mut self, path: &str) -> anyhow::Result<String> {
        let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
        self.digest.update(path, text.as_bytes());
        Ok(text)
    }

    /// A weight vector given inline or as a file.
    fn pi(&mut self, arg: &str) -> anyhow::Result<WeightVector> {
        let text = if Path::new(arg).is_file() {
            self.read(arg)?
        } else {
            arg.to_string()
        };
        Ok(text.parse()?)
    }

    fn code(&mut self, path: &str) -> anyhow::Result<ExplicitCode> {
        Ok(self.read(path)?.parse()?)
    }
}

fn word(s: &str) -> anyhow::Result<BitWord> {
    Ok(s.parse()?)
}

fn max_scan_n() -> anyhow::Result<usize> {
    match std::env::var("PIPERFECT_MAX_N") {
        Ok(v) => v
            .trim()
            .parse()
            .with_context(|| format!("PIPERFECT_MAX_N = {v:?} is not a number")),
        Err(_) => Ok(DEFAULT_MAX_SCAN_N),
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("value serializes")
}

fn ok(result: Value, table: String) -> Outcome {
    Outcome {
        status: Status::Ok,
        result,
        table,
    }
}

fn witness_line(w: &Witness) -> String {
    match w {
        Witness::Uncovered { vector } => format!("uncovered vector {vector}"),
        Witness::DoubleCovered { vector, centers } => {
            format!("vector {vector} covered by {} and {}", centers[0], centers[1])
        }
        Witness::Partition { codeword, x, y } => format!("codeword {codeword} = {x} + {y}"),
        Witness::PackingMismatch { sphere_size, cosets } => {
            format!("sphere size {sphere_size} but {cosets} cosets")
        }
    }
}

fn verdict_outcome(report: &PerfectnessReport, mut result: Value, mut table: String) -> Outcome {
    result["verification"] = to_value(report);
    table.push_str(&format!(
        "verified: {} ({:?}, radius {})\n",
        report.is_perfect(),
        report.method,
        report.radius
    ));
    if let Some(w) = &report.witness {
        table.push_str(&format!("witness: {}\n", witness_line(w)));
    }
    Outcome {
        status: if report.is_perfect() {
            Status::Ok
        } else {
            Status::VerificationFailed
        },
        result,
        table,
    }
}

fn assignment_outcome(a: &WeightAssignment, opts: &ExhaustiveOptions) -> anyhow::Result<Outcome> {
    let report = a.verify(opts)?;
    let packing = a.packing_identity_holds()?;
    let result = json!({
        "assignment": a.trace(report.is_perfect()),
        "pi": a.pi,
        "notes": a.notes,
        "packing_identity": packing,
    });
    let list = |v: &[usize]| {
        v.iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(",")
    };
    let variant = match a.variant {
        Variant::Standard => "H",
        Variant::Extended => "H~",
    };
    let rows = vec![
        vec!["code".into(), format!("{variant}_{}", a.m)],
        vec!["radius".into(), a.radius.to_string()],
        vec!["X1".into(), list(&a.x1)],
        vec!["X2".into(), list(&a.x2)],
        vec!["X3".into(), list(&a.x3)],
        vec!["Y".into(), list(&a.high)],
        vec!["pi".into(), a.pi.to_string()],
        vec!["packing identity".into(), packing.to_string()],
    ];
    Ok(verdict_outcome(&report, result, columns(&rows)))
}

fn run(cmd: &Command, ctx: &mut Ctx) -> anyhow::Result<Outcome> {
    match cmd {
        Command::Weight { pi, word: w } => {
            let pi = ctx.pi(pi)?;
            let w = word(w)?;
            let value = pi_weight(&w, &pi)?;
            Ok(ok(
                json!({ "word": w, "pi_weight": value }),
                format!("w_pi({w}) = {value}\n"),
            ))
        }
        Command::Distance { pi, x, y } => {
            let pi = ctx.pi(pi)?;
            let (x, y) = (word(x)?, word(y)?);
            let d = pi_distance(&x, &y, &pi)?;
            Ok(ok(
                json!({ "x": x, "y": y, "distance": d }),
                format!("d_pi({x}, {y}) = {d}\n"),
            ))
        }
        Command::Sphere {
            pi,
            radius,
            center,
            list,
        } => {
            let pi = ctx.pi(pi)?;
            let center = match center {
                Some(c) => word(c)?,
                None => BitWord::zero(pi.len())?,
            };
            let breakdown = sphere_size(&pi, *radius);
            let mut result = json!({ "center": center, "sphere": breakdown });
            let mut rows = vec![vec!["classes taken".to_string(), "pi-weight".into(), "count".into()]];
            for c in &breakdown.compositions {
                let parts: Vec<String> = c.parts.iter().map(|(w, k)| format!("{k}x{w}")).collect();
                let parts = if parts.is_empty() { "-".into() } else { parts.join(" ") };
                rows.push(vec![parts, c.pi_weight.to_string(), c.count.to_string()]);
            }
            let mut table = columns(&rows);
            table.push_str(&format!("|S(x; {radius})| = {}\n", breakdown.total));
            if *list {
                let members = sphere_enumerate(&center, *radius, &pi)?;
                for m in &members {
                    table.push_str(&format!("{m}\n"));
                }
                result["members"] = to_value(&members);
            }
            Ok(ok(result, table))
        }
        Command::Verify {
            code,
            pi,
            radius,
            method,
        } => {
            let code = ctx.code(code)?;
            let pi = ctx.pi(pi)?;
            let report = match method {
                MethodArg::Exhaustive => verify_exhaustive_with(&code, &pi, *radius, &ctx.opts)?,
                MethodArg::Structural => {
                    let linear = LinearCode::from_codewords(&code)?;
                    verify_structural(&linear, &pi, *radius)?
                }
            };
            let result = json!({ "n": code.len(), "size": code.size() });
            let table = format!("code: {} words of length {}\n", code.size(), code.len());
            Ok(verdict_outcome(&report, result, table))
        }
        Command::HammingPi { m, x1, seed } => {
            let x1 = x1.unwrap_or_else(|| max_hamming_x1(*m));
            let a = hamming_2perfect_pi(*m, x1, seed.as_deref())?;
            assignment_outcome(&a, &ctx.opts)
        }
        Command::ExtHammingPi { m, radius, x1 } => {
            if *radius == 3 {
                let a = ext_hamming_3perfect_pi(*m, x1.unwrap_or(1))?;
                return assignment_outcome(&a, &ctx.opts);
            }
            let verdict = ext_hamming_2perfect_feasibility(*m)?;
            let forced = verdict.x1.map(|v| v as usize);
            if !verdict.feasible || x1.is_some_and(|k| Some(k) != forced) {
                let reason = to_value(&verdict.reason);
                let mut table = format!(
                    "H~_{m} admits no 2-perfect weights: {}\n",
                    reason.as_str().unwrap_or_default()
                );
                if verdict.feasible {
                    table = format!("x1 is forced to {} for m = {m}\n", forced.unwrap_or(0));
                }
                return Ok(Outcome {
                    status: Status::Infeasible,
                    result: json!({ "feasibility": verdict }),
                    table,
                });
            }
            let a = ext_hamming_2perfect_pi(*m)?;
            let mut out = assignment_outcome(&a, &ctx.opts)?;
            out.result["feasibility"] = to_value(&verdict);
            Ok(out)
        }
        Command::Nagell { limit } => {
            let sols = nagell_solutions(*limit)?;
            let mut rows = vec![vec!["x".to_string(), "n".into()]];
            rows.extend(sols.iter().map(|(x, n)| vec![x.to_string(), n.to_string()]));
            let pairs: Vec<Value> = sols.iter().map(|(x, n)| json!({ "x": x, "n": n })).collect();
            Ok(ok(json!({ "limit": limit, "solutions": pairs }), columns(&rows)))
        }
        Command::Construct { t, m, seed } => {
            let f = family_build(*t, *m, seed.as_deref())?;
            let (linear, pi) = code_from_family(&f);
            let words = linear.enumerate_codewords()?;
            let report = verify_exhaustive_with(&words, &pi, 2, &ctx.opts)?;
            let result = json!({
                "matrix": f.to_json(),
                "rows": f.matrix().to_string().lines().collect::<Vec<_>>(),
                "pi": pi,
                "codewords": words.words().collect::<Vec<_>>(),
            });
            let table = format!(
                "t = {t}, m = {m}, n = {}\npi = {pi}\nparity check:\n{}codewords ({}):\n{}",
                f.profile().n(),
                f.matrix(),
                words.size(),
                words
            );
            let mut out = verdict_outcome(&report, result, table);
            out.result["verified"] = json!(report.is_perfect());
            Ok(out)
        }
        Command::Spectrum(args) => spectrum(args, ctx),
    }
}

fn spectrum(args: &SpectrumArgs, ctx: &mut Ctx) -> anyhow::Result<Outcome> {
    let code = ctx.code(&args.code)?;
    let profile = TwoValuedProfile::new(code.len(), args.m)?;
    let mut result = json!({ "n": profile.n(), "m": profile.m(), "t": profile.t() });
    let mut table = format!("n = {}, m = {}, t = {}\n", profile.n(), profile.m(), profile.t());
    if args.fourier {
        let f = fourier(&code)?;
        let grouped = f.grouped(&profile)?;
        let support = support_characterization(&code, &profile)?;
        let mut rows = vec![vec!["k".to_string(), "|d & ~M|".into(), "members".into(), "nonzero".into(), "sum".into()]];
        for c in &grouped.classes {
            rows.push(vec![
                c.k.to_string(),
                c.complement_weight.map_or("-".into(), |w| w.to_string()),
                c.members.to_string(),
                c.nonzero.to_string(),
                c.sum.to_string(),
            ]);
        }
        table.push_str(&format!("A_0 = {}\n", grouped.a0));
        table.push_str(&columns(&rows));
        table.push_str(&format!("nonzero outside the classes: {}\n", grouped.outside_nonzero));
        table.push_str(&format!("support characterization: {}\n", support.holds));
        result["grouped"] = to_value(&grouped);
        result["support"] = to_value(&support);
    }
    if args.recover {
        let head = args.head.as_deref().ok_or_else(|| anyhow!("--recover needs --head"))?;
        let r = recover_distribution(head, &profile)?;
        let direct = DistributionTable::from_code(&code, &profile)?;
        let matches = direct == r.table;
        table.push_str(&format!(
            "grouped sums x_k: {}\n",
            r.grouped_sums.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")
        ));
        table.push_str("a_ij (rows i, columns j):\n");
        table.push_str(&r.table.to_csv());
        table.push_str(&format!("matches direct count: {matches}\n"));
        result["recovery"] = to_value(&r);
        result["csv"] = json!(r.table.to_csv());
        result["matches_direct_count"] = json!(matches);
    }
    if args.enumerator {
        let e = pi_weight_enumerator(&code, &profile.weights())?;
        let terms: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(w, &c)| match (w, c) {
                (0, _) => c.to_string(),
                (_, 1) => format!("x^{w}"),
                _ => format!("{c}x^{w}"),
            })
            .collect();
        table.push_str(&format!("pi-weight enumerator: {}\n", terms.join(" + ")));
        result["enumerator"] = to_value(&e);
    }
    Ok(ok(result, table))
}

fn error_outcome(err: &anyhow::Error) -> Outcome {
    let status = match err.downcast_ref::<piperfect::Error>() {
        Some(e) if e.is_infeasible() => Status::Infeasible,
        _ => Status::Error,
    };
    Outcome {
        status,
        result: json!({ "error": format!("{err:#}") }),
        table: format!("error: {err:#}\n"),
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = Cli::parse();
    let start = Instant::now();
    let command: Vec<String> = argv.iter().skip(1).cloned().collect();
    let mut digest = InputDigest::default();
    for a in &command {
        digest.update("arg", a.as_bytes());
    }
    let mut ctx = Ctx {
        digest,
        opts: ExhaustiveOptions {
            max_n: DEFAULT_MAX_SCAN_N,
            jobs: cli.jobs.max(1),
        },
    };
    let outcome = max_scan_n()
        .and_then(|max_n| {
            ctx.opts.max_n = max_n;
            run(&cli.command, &mut ctx)
        })
        .unwrap_or_else(|e| error_outcome(&e));
    let wall = cli.timing.then(|| start.elapsed().as_secs_f64() * 1e3);
    match cli.format {
        Format::Json => print!("{}", render_json(&command, ctx.digest.finish(), &outcome, wall)),
        Format::Table => {
            let text = render_table(&outcome, wall);
            if outcome.status == Status::Error {
                eprint!("{text}");
            } else {
                print!("{text}");
            }
        }
    }
    ExitCode::from(outcome.status.exit_code())
}
