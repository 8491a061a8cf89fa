//! The `germlab` command line. [`run`] is the whole program minus process
//! plumbing, so it can be driven from tests.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::analysis::{
    continuity_verdict, converge_check, default_battery, neighborhood_member, nonconvergence_witness,
    norm_profile, ultradist_triangle, ContinuityVerdict, FuncSample, NodeValue, SigmaChoice, TestResult,
};
use crate::dsl::{format_germ_file, parse_germ_file, parse_net_file, parse_sample_csv, values_csv, DslError, Env};
use crate::germ::{validate, Germ, GridWindow, SeqGerm};
use crate::order::{
    arch_class_compare, canonical_eq, compare_germwise, frechet_triage, ArchKind, CompareMode, OrderVerdict,
};
use crate::rat::Rat;
use crate::DEFAULT_HORIZON;

#[derive(Parser, Debug)]
#[command(name = "germlab", version, about = "Exact computations with function germs at 0")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Csv,
    Lines,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Auto,
    Certified,
    Horizon,
}

#[derive(clap::Args, Debug)]
struct Window {
    /// Last grid index inspected
    #[arg(long, default_value_t = DEFAULT_HORIZON)]
    horizon: u64,
    /// First grid index inspected (default: latest germ start)
    #[arg(long)]
    start: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Print grid values of a germ
    Eval {
        file: PathBuf,
        name: String,
        /// Index range `a..b`, inclusive
        #[arg(long)]
        range: Option<String>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Run the validation scan
    Validate {
        file: PathBuf,
        name: String,
        #[command(flatten)]
        window: Window,
    },
    /// Germ order of two germs
    Compare {
        file: PathBuf,
        lhs: String,
        rhs: String,
        #[command(flatten)]
        window: Window,
        #[arg(long, value_enum, default_value = "horizon")]
        mode: Mode,
    },
    /// Canonical equality check
    Eq {
        file: PathBuf,
        lhs: String,
        rhs: String,
        #[command(flatten)]
        window: Window,
    },
    /// Archimedean class comparison
    Class {
        file: PathBuf,
        lhs: String,
        rhs: String,
        #[command(flatten)]
        window: Window,
        /// Cap of the ladder 1, 2, 4, ...
        #[arg(long, default_value_t = 1024)]
        nmax: u64,
    },
    /// Free-ultrafilter triage of the value sequences
    Triage {
        file: PathBuf,
        lhs: String,
        rhs: String,
        #[arg(long, default_value_t = 1000)]
        prefix: u64,
    },
    /// Print a germ file in canonical form
    Format { file: PathBuf },
    /// Net convergence against the battery of a net file
    Converge {
        net: PathBuf,
        #[arg(long, default_value_t = DEFAULT_HORIZON)]
        horizon: u64,
    },
    /// Norm profile of a sample CSV
    Norm {
        sample: PathBuf,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Battery continuity test of a sample CSV
    Continuity {
        sample: PathBuf,
        #[arg(long, default_value_t = 1)]
        from: u64,
        /// Last ball index (default: up to 8, limited by the sample resolution)
        #[arg(long)]
        to: Option<u64>,
        /// Battery degrees d in K(j) = j^d
        #[arg(long, default_value_t = 3)]
        degrees: u32,
        /// Battery multiples c in K(j) = c*2^j
        #[arg(long, default_value_t = 2)]
        multiples: u32,
    },
    /// Germwise neighborhood membership Λ(g) < test
    Member {
        file: PathBuf,
        germ: String,
        test: String,
        #[command(flatten)]
        window: Window,
    },
    /// Strong triangle inequality for three germs
    Triangle {
        file: PathBuf,
        f: String,
        g: String,
        h: String,
        #[command(flatten)]
        window: Window,
        #[arg(long, default_value_t = 1024)]
        nmax: u64,
    },
    /// Diagonal witness below a list of germs
    Witness {
        file: PathBuf,
        names: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_HORIZON)]
        horizon: u64,
        #[arg(long)]
        range: Option<String>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
}

/// Runs one invocation. Exit codes: 0 verdict computed, 1 semantic or
/// validation error, 2 parse or usage error.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.cmd, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                DslError::Parse(_) => 2,
                _ => 1,
            }
        }
    }
}

type Out<'a> = &'a mut dyn Write;

fn read(path: &Path) -> Result<String, DslError> {
    fs::read_to_string(path).map_err(|e| DslError::Io(format!("{}: {e}", path.display())))
}

fn load_env(path: &Path, horizon: u64) -> Result<Env, DslError> {
    Ok(Env::new(parse_germ_file(&read(path)?)?, horizon))
}

fn window_for(germs: &[&Germ], w: &Window) -> Result<GridWindow, DslError> {
    let from = w.start.unwrap_or_else(|| germs.iter().map(|g| g.start()).max().unwrap_or(1));
    Ok(GridWindow::new(from.max(1), w.horizon)?)
}

fn parse_range(text: Option<&str>, start: u64) -> Result<(u64, u64), DslError> {
    let Some(t) = text else { return Ok((start, start + 9)) };
    let bad = || DslError::Germ(crate::GermError::Invalid(format!("range must look like a..b, got `{t}`")));
    let (a, b) = t.split_once("..").ok_or_else(bad)?;
    let a: u64 = a.trim().parse().map_err(|_| bad())?;
    let b: u64 = b.trim().parse().map_err(|_| bad())?;
    GridWindow::new(a, b)?;
    Ok((a, b))
}

fn write_values(out: Out, rows: &[(u64, Rat)], format: Format) -> std::io::Result<()> {
    match format {
        Format::Csv => out.write_all(values_csv(rows).as_bytes()),
        Format::Lines => {
            for (j, v) in rows {
                writeln!(out, "j={j} value={v}")?;
            }
            Ok(())
        }
    }
}

fn verdict_line(v: &OrderVerdict, lhs: &str, rhs: &str) -> String {
    format!(
        "VERDICT kind={} witness={} horizon={} lhs={lhs} rhs={rhs}",
        v.kind, v.witness_index, v.horizon
    )
}

fn class_fields(k: ArchKind) -> String {
    match k {
        ArchKind::SameClass(n) => format!("kind=SAME_CLASS n={n}"),
        other => format!("kind={}", other.name()),
    }
}

fn io(e: std::io::Error) -> DslError {
    DslError::Io(e.to_string())
}

fn dispatch(cmd: Cmd, out: Out) -> Result<i32, DslError> {
    match cmd {
        Cmd::Eval { file, name, range, format } => {
            let g = load_env(&file, DEFAULT_HORIZON)?.get(&name)?;
            let (a, b) = parse_range(range.as_deref(), g.start())?;
            let rows = (a..=b).map(|j| Ok((j, g.value(j)?))).collect::<Result<Vec<_>, crate::GermError>>()?;
            write_values(out, &rows, format).map_err(io)?;
            Ok(0)
        }
        Cmd::Validate { file, name, window } => {
            let g = load_env(&file, window.horizon)?.get(&name)?;
            let w = window_for(&[&g], &window)?;
            let r = validate(&g, &w);
            for c in &r.checks {
                let result = c.first_violation.map_or("PASS".to_string(), |j| format!("FAIL({j})"));
                writeln!(out, "CHECK name={} required={} result={result}", c.name, c.required).map_err(io)?;
            }
            writeln!(
                out,
                "VALIDATION valid={} tier={} first_violation={} limit={} window={}..{} germ={name}",
                r.is_valid(),
                r.tier.map_or("NONE", |t| t.name()),
                r.first_violation.map_or("none".to_string(), |j| j.to_string()),
                if r.limit_verified { "verified" } else { "unverified" },
                w.from(),
                w.to()
            )
            .map_err(io)?;
            Ok(if r.is_valid() { 0 } else { 1 })
        }
        Cmd::Compare { file, lhs, rhs, window, mode } => {
            let mut env = load_env(&file, window.horizon)?;
            let (a, b) = (env.get(&lhs)?, env.get(&rhs)?);
            let w = window_for(&[&a, &b], &window)?;
            let mode = match mode {
                Mode::Auto => CompareMode::Auto,
                Mode::Certified => CompareMode::CertifiedOnly,
                Mode::Horizon => CompareMode::HorizonOnly,
            };
            let v = compare_germwise(&a, &b, &w, mode)?;
            writeln!(out, "{}", verdict_line(&v, &lhs, &rhs)).map_err(io)?;
            Ok(0)
        }
        Cmd::Eq { file, lhs, rhs, window } => {
            let mut env = load_env(&file, window.horizon)?;
            let (a, b) = (env.get(&lhs)?, env.get(&rhs)?);
            let w = window_for(&[&a, &b], &window)?;
            let v = canonical_eq(&a, &b, &w)?;
            writeln!(out, "{}", verdict_line(&v, &lhs, &rhs)).map_err(io)?;
            Ok(0)
        }
        Cmd::Class { file, lhs, rhs, window, nmax } => {
            let mut env = load_env(&file, window.horizon)?;
            let (a, b) = (env.get(&lhs)?, env.get(&rhs)?);
            let w = window_for(&[&a, &b], &window)?;
            let v = arch_class_compare(&a, &b, &w, nmax)?;
            writeln!(
                out,
                "CLASS {} n_cap={} horizon={} lhs={lhs} rhs={rhs}",
                class_fields(v.kind),
                v.n_cap,
                v.horizon
            )
            .map_err(io)?;
            Ok(0)
        }
        Cmd::Triage { file, lhs, rhs, prefix } => {
            let mut env = load_env(&file, DEFAULT_HORIZON)?;
            let seq = |g: Germ| SeqGerm::from_fn(g.start(), "germ values", move |i| g.value(i));
            let (a, b) = (seq(env.get(&lhs)?), seq(env.get(&rhs)?));
            let v = frechet_triage(&a, &b, prefix)?;
            writeln!(
                out,
                "TRIAGE kind={} cofinite_from={} less={} equal={} greater={} prefix={}..{} lhs={lhs} rhs={rhs}",
                v.kind.name(),
                v.cofinite_from.map_or("none".to_string(), |j| j.to_string()),
                v.evidence.less,
                v.evidence.equal,
                v.evidence.greater,
                v.prefix_from,
                v.prefix_to
            )
            .map_err(io)?;
            Ok(0)
        }
        Cmd::Format { file } => {
            let defs = parse_germ_file(&read(&file)?)?;
            out.write_all(format_germ_file(&defs).as_bytes()).map_err(io)?;
            Ok(0)
        }
        Cmd::Converge { net, horizon } => {
            let text = read(&net)?;
            let nf = parse_net_file(&text)?;
            let dir = net.parent().map(Path::to_path_buf).unwrap_or_default();
            let mut defs = match &nf.include {
                Some(p) => parse_germ_file(&read(&dir.join(p))?)?,
                None => Vec::new(),
            };
            defs.extend(nf.definitions.iter().cloned());
            let mut env = Env::new(defs, horizon);
            let spec = nf.build(&mut env, |p| parse_sample_csv(&read(&dir.join(p))?))?;
            let report = converge_check(&spec, horizon)?;
            for t in &report.tests {
                match &t.result {
                    TestResult::Converges { d0, j1 } => writeln!(
                        out,
                        "TEST name={} verdict=CONVERGES d0={d0} j1={j1} horizon={horizon}",
                        t.test
                    ),
                    TestResult::Fails { failing, failing_index } => writeln!(
                        out,
                        "TEST name={} verdict=FAILS failing={} failing_index={failing_index} horizon={horizon}",
                        t.test,
                        failing.iter().map(|(n, _)| n.as_str()).collect::<Vec<_>>().join(",")
                    ),
                }
                .map_err(io)?;
            }
            writeln!(
                out,
                "OVERALL verdict={} tests={} horizon={horizon}",
                if report.converges() { "CONVERGES" } else { "FAILS" },
                report.tests.len()
            )
            .map_err(io)?;
            Ok(0)
        }
        Cmd::Norm { sample, format } => {
            let s = parse_sample_csv(&read(&sample)?)?;
            let p = norm_profile(&s);
            let rows = p.window.indices().map(|j| Ok((j, p.value(j)?))).collect::<Result<Vec<_>, crate::GermError>>()?;
            if let Format::Lines = format {
                let upto = p.nonzero_upto.map_or("none".to_string(), |j| j.to_string());
                writeln!(out, "NORM zero_germ={} nonzero_upto={upto}", p.is_zero()).map_err(io)?;
            }
            write_values(out, &rows, format).map_err(io)?;
            Ok(0)
        }
        Cmd::Continuity { sample, from, to, degrees, multiples } => {
            let s = parse_sample_csv(&read(&sample)?)?;
            let battery = default_battery(degrees, multiples);
            let to = match to {
                Some(t) => t,
                None => resolved_upto(&battery, s.j_to(), from)?,
            };
            let w = GridWindow::new(from, to)?;
            let label = |i: usize| battery[i].closed_tail().map_or("custom".to_string(), |p| p.to_string());
            let line = match continuity_verdict(&s, &battery, &w)? {
                ContinuityVerdict::ContinuousAtHorizon { choices } => {
                    let picks: Vec<String> = choices
                        .iter()
                        .map(|(r, c)| match c {
                            SigmaChoice::Battery(i) => format!("{}:{}", label(*r), label(*i)),
                            SigmaChoice::HalfRho => format!("{}:half", label(*r)),
                        })
                        .collect();
                    format!("CONTINUITY kind=CONTINUOUS_AT_HORIZON sigma={}", picks.join(";"))
                }
                ContinuityVerdict::DiscontinuousWitness { rho, floor } => {
                    format!("CONTINUITY kind=DISCONTINUOUS_WITNESS rho={} floor={floor}", label(rho))
                }
                ContinuityVerdict::Inconclusive { rho } => {
                    format!("CONTINUITY kind=INCONCLUSIVE rho={}", label(rho))
                }
            };
            writeln!(out, "{line} window={}..{}", w.from(), w.to()).map_err(io)?;
            Ok(0)
        }
        Cmd::Member { file, germ, test, window } => {
            let mut env = load_env(&file, window.horizon)?;
            let (g, t) = (env.get(&germ)?, env.get(&test)?);
            let w = window_for(&[&g, &t], &window)?;
            let v = neighborhood_member(&NodeValue::Germ(g), &t, &w)?;
            writeln!(out, "{} member={}", verdict_line(&v, &germ, &test), v.is_lt()).map_err(io)?;
            Ok(0)
        }
        Cmd::Triangle { file, f, g, h, window, nmax } => {
            let mut env = load_env(&file, window.horizon)?;
            let (a, b, c) = (env.get(&f)?, env.get(&g)?, env.get(&h)?);
            let w = window_for(&[&a, &b, &c], &window)?;
            let v = ultradist_triangle(&a, &b, &c, &w, nmax)?;
            writeln!(
                out,
                "TRIANGLE kind={} fh_fg={} fh_gh={} fg_gh={} horizon={} f={f} g={g} h={h}",
                v.kind.name(),
                v.vs_fg.name(),
                v.vs_gh.name(),
                v.fg_vs_gh.name(),
                v.horizon
            )
            .map_err(io)?;
            Ok(0)
        }
        Cmd::Witness { file, names, horizon, range, format } => {
            let mut env = load_env(&file, horizon)?;
            let seq = names.iter().map(|n| env.get(n)).collect::<Result<Vec<_>, _>>()?;
            let p = nonconvergence_witness(&seq, horizon)?;
            let (a, b) = parse_range(range.as_deref(), p.start())?;
            let rows = (a..=b).map(|j| Ok((j, p.value(j)?))).collect::<Result<Vec<_>, crate::GermError>>()?;
            write_values(out, &rows, format).map_err(io)?;
            Ok(0)
        }
    }
}

/// Largest `t <= 8` (at least `from`) with `2*K(t) <= j_to` for every
/// battery code, so that the halved radii stay resolved by the sample.
fn resolved_upto(battery: &[crate::germ::PlGerm], j_to: u64, from: u64) -> Result<u64, DslError> {
    let mut t = from;
    while t < 8 {
        let next = t + 1;
        let mut ok = true;
        for p in battery {
            if p.code(next)? * 2 > j_to.into() {
                ok = false;
            }
        }
        if !ok {
            break;
        }
        t = next;
    }
    Ok(t)
}

/// Builds a sample from a CSV file; exposed for the bindings.
pub fn read_sample(path: &Path) -> Result<FuncSample, DslError> {
    parse_sample_csv(&read(path)?)
}
