//! Command-line front end. `run` takes the argument list and output streams
//! so the binary and the tests share one entry point.

pub mod plot;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use shadowgeom::harness::{
    default_corpus, extremizer_search, fmt_sig, parse_bodies, run_suite, BodySpec, Report, SearchConfig, Status,
    SuiteConfig,
};
use shadowgeom::positions::{position_solver, PositionConfig};
use shadowgeom::quermass::{mean_width, p_k, quermassintegral, vrad};
use shadowgeom::sampling::RngSeed;
use shadowgeom::{GeomError, Result};

#[derive(Debug, Parser)]
#[command(name = "shadowgeom", version, about = "Shadows, quermassintegrals and positions of convex polytopes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the bodies of a corpus.
    Bodies {
        #[command(flatten)]
        corpus: CorpusArgs,
        /// Write the body specs as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute one quantity of one body.
    Compute {
        #[command(flatten)]
        body: BodyArgs,
        /// volume, surface, inradius, circumradius, mean-width, vrad,
        /// quermass(p), partial or pk(k).
        #[arg(long)]
        quantity: String,
        #[command(flatten)]
        common: Common,
    },
    /// Put a body in a classical position.
    Position {
        #[command(flatten)]
        body: BodyArgs,
        /// min-surface, isotropic, john, lowner or min-mean-width.
        #[arg(long)]
        kind: String,
        #[command(flatten)]
        common: Common,
        /// Write the full result as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the check suite.
    Verify {
        #[command(flatten)]
        corpus: CorpusArgs,
        /// Check ids, comma separated; all when omitted.
        #[arg(long, value_delimiter = ',')]
        ids: Vec<String>,
        #[command(flatten)]
        common: Common,
        /// Relative slack allowed on every bound.
        #[arg(long, default_value_t = 0.05)]
        tol: f64,
        /// Worker threads.
        #[arg(long)]
        jobs: Option<usize>,
        /// JSON report; the CSV goes next to it.
        #[arg(long)]
        out: Option<PathBuf>,
        /// CSV path, overriding the default next to --out.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Evolutionary search for near-extremal bodies.
    Search {
        #[arg(long)]
        id: String,
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(long, default_value_t = 200)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Directions per candidate evaluation.
        #[arg(long, default_value_t = 2000)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Plot ratio against dimension from a verify report.
    Plot {
        /// A JSON report written by verify.
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Restrict to these check ids.
        #[arg(long, value_delimiter = ',')]
        ids: Vec<String>,
    },
}

#[derive(Debug, Args)]
struct CorpusArgs {
    /// Dimensions, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "3")]
    dim: Vec<usize>,
    /// `default` or a JSON body file.
    #[arg(long, default_value = "default")]
    corpus: String,
}

#[derive(Debug, Args)]
struct BodyArgs {
    /// A constructor such as `cube` or `random-hull(12,3)`, or a JSON body file.
    #[arg(long)]
    body: String,
    #[arg(long, default_value_t = 3)]
    dim: usize,
}

#[derive(Debug, Args)]
struct Common {
    #[arg(long, default_value_t = 20_000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// Exit codes: 0 success, 1 a check failed, 2 usage or I/O error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind::{DisplayHelp, DisplayVersion};
            let text = e.render().to_string();
            return if matches!(e.kind(), DisplayHelp | DisplayVersion) {
                let _ = write!(out, "{text}");
                0
            } else {
                let _ = write!(err, "{text}");
                2
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn corpus(args: &CorpusArgs) -> Result<Vec<BodySpec>> {
    if args.corpus == "default" {
        Ok(args.dim.iter().flat_map(|&n| default_corpus(n)).collect())
    } else {
        parse_bodies(&std::fs::read_to_string(&args.corpus)?)
    }
}

fn body_spec(args: &BodyArgs) -> Result<BodySpec> {
    if Path::new(&args.body).is_file() {
        let specs = parse_bodies(&std::fs::read_to_string(&args.body)?)?;
        return specs.into_iter().next().ok_or(GeomError::EmptyInput);
    }
    Ok(BodySpec::named(&args.body, args.dim))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    Ok(std::fs::write(path, text)?)
}

fn io(r: std::io::Result<()>) -> Result<()> {
    Ok(r?)
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Bodies { corpus: c, out: path } => {
            let specs = corpus(&c)?;
            io(writeln!(out, "{:<24} {:>3} {:>8} {:>8} {:>15} {:>15}", "body", "n", "vertices", "facets", "volume", "surface"))?;
            for spec in &specs {
                let b = spec.build()?;
                io(writeln!(
                    out,
                    "{:<24} {:>3} {:>8} {:>8} {:>15} {:>15}",
                    b.name,
                    b.dim(),
                    b.poly.vertices().len(),
                    b.poly.facets().len(),
                    fmt_sig(b.poly.volume()),
                    fmt_sig(b.poly.surface_area())
                ))?;
            }
            if let Some(path) = path {
                write_file(&path, &(serde_json::to_string_pretty(&specs)? + "\n"))?;
            }
            Ok(0)
        }
        Command::Compute { body, quantity, common } => {
            let b = body_spec(&body)?.build()?;
            let line = compute(&b.poly, &quantity, &common)?;
            io(writeln!(out, "{line}"))?;
            Ok(0)
        }
        Command::Position { body, kind, common, out: path } => {
            let b = body_spec(&body)?.build()?;
            let solver = position_solver(&kind)?;
            let cfg = PositionConfig { seed: RngSeed::new(common.seed, 0), ..PositionConfig::default() };
            let pos = solver.solve(&b.poly, &cfg)?;
            let r = &pos.result;
            io(writeln!(out, "kind {}", r.kind))?;
            io(writeln!(out, "converged {}", r.converged))?;
            io(writeln!(out, "iterations {}", r.iterations))?;
            io(writeln!(out, "residual {}", fmt_sig(r.residual)))?;
            io(writeln!(out, "objective {}", fmt_sig(r.objective)))?;
            if let Some(p) = pos.parameter {
                io(writeln!(out, "parameter {}", fmt_sig(p)))?;
            }
            io(writeln!(out, "transform"))?;
            for row in &r.transform {
                let cells: Vec<String> = row.iter().map(|x| fmt_sig(*x)).collect();
                io(writeln!(out, "  {}", cells.join(" ")))?;
            }
            let shift: Vec<String> = r.translation.iter().map(|x| fmt_sig(*x)).collect();
            io(writeln!(out, "translation {}", shift.join(" ")))?;
            if let Some(path) = path {
                let v = serde_json::json!({ "result": r, "ellipsoid": pos.ellipsoid, "parameter": pos.parameter });
                write_file(&path, &(serde_json::to_string_pretty(&v)? + "\n"))?;
            }
            Ok(0)
        }
        Command::Verify { corpus: c, ids, common, tol, jobs, out: path, csv } => {
            let specs = corpus(&c)?;
            let cfg = SuiteConfig { tol, seed: common.seed, jobs, ..SuiteConfig::default() }.with_samples(common.samples);
            let report = run_suite(&specs, &ids, &cfg)?;
            summary(&report, out)?;
            if let Some(path) = &path {
                write_file(path, &report.to_json()?)?;
            }
            if let Some(csv_path) = csv.or_else(|| path.as_ref().map(|p| p.with_extension("csv"))) {
                write_file(&csv_path, &report.to_csv())?;
            }
            let bad = report.count(Status::Fail) + report.count(Status::Error);
            Ok(if bad > 0 { 1 } else { 0 })
        }
        Command::Search { id, family, dim, budget, seed, samples, out: path } => {
            let cfg = SearchConfig { budget, seed, samples, ..SearchConfig::new(&id, &family, dim) };
            let trace = extremizer_search(&cfg)?;
            for step in &trace.improvements {
                io(writeln!(out, "evaluation {:>5}  ratio {}", step.evaluation, fmt_sig(step.ratio)))?;
            }
            io(writeln!(out, "best {} ({} rejected of {})", fmt_sig(trace.best.ratio), trace.rejected, trace.evaluations))?;
            if trace.reported.value != trace.best.ratio {
                io(writeln!(out, "{}: {}", trace.reported.label, fmt_sig(trace.reported.value)))?;
            }
            if let Some(path) = path {
                write_file(&path, &(serde_json::to_string_pretty(&trace)? + "\n"))?;
            }
            Ok(0)
        }
        Command::Plot { input, out: path, ids } => {
            let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&input)?)?;
            let svg = plot::ratio_plot(&report, &ids)?;
            write_file(&path, &svg)?;
            Ok(0)
        }
    }
}

fn estimate_line(mean: f64, stderr: f64) -> String {
    format!("{} +- {}", fmt_sig(mean), fmt_sig(stderr))
}

fn arg_of(q: &str, name: &str) -> Option<Result<usize>> {
    let inner = q.strip_prefix(name)?.strip_prefix('(')?.strip_suffix(')')?;
    Some(inner.trim().parse().map_err(|_| GeomError::Parse(format!("bad argument in '{q}'"))))
}

fn compute(p: &shadowgeom::polytope::Polytope, q: &str, c: &Common) -> Result<String> {
    let seed = RngSeed::new(c.seed, 0);
    let line = match q {
        "volume" => fmt_sig(p.volume()),
        "surface" => fmt_sig(p.surface_area()),
        "inradius" => fmt_sig(p.inradius()?.0),
        "circumradius" => fmt_sig(p.circumradius()),
        "vrad" => fmt_sig(vrad(p)),
        "mean-width" => {
            let e = mean_width(p, c.samples, seed)?;
            estimate_line(e.mean, e.stderr)
        }
        "partial" => fmt_sig(shadowgeom::positions::minimal_surface_position(p, 1e-6, 500)?.1),
        _ => {
            if let Some(order) = arg_of(q, "quermass") {
                let e = quermassintegral(p, order?, c.samples, seed)?;
                estimate_line(e.mean, e.stderr)
            } else if let Some(k) = arg_of(q, "pk") {
                let e = p_k(p, k?, c.samples, seed)?;
                estimate_line(e.mean, e.stderr)
            } else {
                return Err(GeomError::Parse(format!(
                    "unknown quantity '{q}' (known: volume, surface, inradius, circumradius, mean-width, vrad, quermass(p), partial, pk(k))"
                )));
            }
        }
    };
    Ok(line)
}

fn summary(report: &Report, out: &mut dyn Write) -> Result<()> {
    io(writeln!(out, "{:<12} {:<24} {:>2} {:>15} {:>15} {:>12}  status", "id", "body", "n", "lhs", "rhs", "ratio"))?;
    for r in &report.results {
        let side = |s: &Option<shadowgeom::harness::Side>| s.map(|s| fmt_sig(s.value)).unwrap_or_default();
        io(writeln!(
            out,
            "{:<12} {:<24} {:>2} {:>15} {:>15} {:>12}  {}",
            r.id,
            r.body,
            r.n,
            side(&r.lhs),
            side(&r.rhs),
            r.ratio.map(fmt_sig).unwrap_or_default(),
            r.status.as_str()
        ))?;
    }
    let counts: Vec<String> = [Status::Pass, Status::Skipped, Status::Inconclusive, Status::Fail, Status::Error]
        .iter()
        .map(|s| format!("{} {}", report.count(*s), s.as_str()))
        .collect();
    io(writeln!(out, "{}", counts.join(", ")))
}
