//! Command-line front end: verify identities, dump spectra and term
//! tables, sweep one Fenchel-Nielsen coordinate, and run the self-test
//! battery.
//!
//! Exit codes: 0 on success, 1 when a verification or self-test fails,
//! 2 on usage and domain errors (with a one-line message on stderr).

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};
use torus_identities::identities::{evaluate, term_table, IdentityKind, IdentityReport};
use torus_identities::moduli::{FenchelNielsen, TraceTriple};
use torus_identities::selftest;
use torus_identities::spectrum::enumerate;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

/// Largest grid a sweep will evaluate.
const MAX_SWEEP_POINTS: usize = 1_000_000;

#[derive(Parser, Debug)]
#[command(
    name = "torus-identities",
    version,
    about = "Dilogarithm identities on one-holed tori"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sum an identity up to a length cutoff and compare with its target.
    Verify {
        #[arg(long)]
        identity: IdentityKind,
        #[command(flatten)]
        point: PointArgs,
        #[arg(long)]
        cutoff: f64,
        #[arg(long, default_value_t = 1e-4)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Simple closed geodesics up to a length cutoff.
    Spectrum {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long)]
        cutoff: f64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Per-geodesic summands with running partial sums.
    Terms {
        #[arg(long)]
        identity: IdentityKind,
        #[command(flatten)]
        point: PointArgs,
        #[arg(long)]
        cutoff: f64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Evaluate an identity over a grid in one Fenchel-Nielsen coordinate.
    Sweep {
        #[arg(long)]
        identity: IdentityKind,
        /// `name=start:stop:step` with name one of b, t, k.
        #[arg(long, value_name = "NAME=START:STOP:STEP")]
        vary: String,
        /// `b,t,k` with `_` in the varied slot.
        #[arg(long = "fn", value_name = "B,T,K")]
        fenchel_nielsen: String,
        #[arg(long)]
        cutoff: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Run the numerical self-check battery.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct PointArgs {
    /// Trace triple `x,y,z`.
    #[arg(long, value_name = "X,Y,Z")]
    traces: Option<String>,
    /// Fenchel-Nielsen coordinates `b,t,k`.
    #[arg(long = "fn", value_name = "B,T,K")]
    fenchel_nielsen: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// Usage or domain error; becomes exit code 2.
#[derive(Debug)]
struct UsageError(String);

impl<E: std::error::Error> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type Outcome = std::result::Result<u8, UsageError>;

/// Parse `args` (program name first), run the command, and return the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
        Err(e) => {
            // clap spreads its message over several lines before the usage block
            let text = e.render().to_string();
            let message = text.split("\nUsage:").next().unwrap_or("");
            let line = message.split_whitespace().collect::<Vec<_>>().join(" ");
            let _ = writeln!(err, "{line}");
            return EXIT_USAGE;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            let _ = writeln!(err, "error: {}", msg.replace('\n', " "));
            EXIT_USAGE
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Verify {
            identity,
            point,
            cutoff,
            tol,
            format,
        } => {
            let point = point.resolve()?;
            check_cutoff(cutoff)?;
            if !(tol >= 0.0) {
                return Err(UsageError(format!("--tol {tol} must be >= 0")));
            }
            let report = evaluate(identity, &point, cutoff)?;
            let passed = report.defect.abs() <= tol;
            match format {
                Format::Json => {
                    let mut v = serde_json::to_value(&report)?;
                    v["tolerance"] = json!(tol);
                    v["passed"] = json!(passed);
                    write_json(out, &v)?;
                }
                Format::Csv => write_verify_csv(out, &report, tol, passed)?,
            }
            Ok(if passed { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Spectrum {
            point,
            cutoff,
            format,
        } => {
            let point = point.resolve()?;
            check_cutoff(cutoff)?;
            let records = enumerate(&point, cutoff)?;
            match format {
                Format::Json => {
                    let rows: Vec<Value> = records
                        .iter()
                        .map(|r| json!({"p": r.slope.p, "q": r.slope.q, "trace": r.trace, "length": r.length}))
                        .collect();
                    write_json(out, &Value::Array(rows))?;
                }
                Format::Csv => {
                    writeln!(out, "p,q,trace,length")?;
                    for r in &records {
                        writeln!(
                            out,
                            "{},{},{},{}",
                            r.slope.p,
                            r.slope.q,
                            num(r.trace),
                            num(r.length)
                        )?;
                    }
                }
            }
            Ok(EXIT_OK)
        }
        Command::Terms {
            identity,
            point,
            cutoff,
            format,
        } => {
            let point = point.resolve()?;
            check_cutoff(cutoff)?;
            let rows = term_table(identity, &point, cutoff)?;
            match format {
                Format::Json => {
                    let rows: Vec<Value> = rows
                        .iter()
                        .map(|r| {
                            json!({
                                "p": r.slope.p,
                                "q": r.slope.q,
                                "length": r.length,
                                "term": r.term,
                                "partial_sum": r.partial_sum,
                            })
                        })
                        .collect();
                    write_json(out, &Value::Array(rows))?;
                }
                Format::Csv => {
                    writeln!(out, "p,q,length,term,partial_sum")?;
                    for r in &rows {
                        writeln!(
                            out,
                            "{},{},{},{},{}",
                            r.slope.p,
                            r.slope.q,
                            num(r.length),
                            num(r.term),
                            num(r.partial_sum)
                        )?;
                    }
                }
            }
            Ok(EXIT_OK)
        }
        Command::Sweep {
            identity,
            vary,
            fenchel_nielsen,
            cutoff,
            out: path,
            format,
        } => {
            check_cutoff(cutoff)?;
            let sweep = Sweep::parse(&vary, &fenchel_nielsen)?;
            let rows = sweep.evaluate(identity, cutoff)?;
            match path {
                Some(path) => {
                    let file = File::create(&path)
                        .map_err(|e| UsageError(format!("cannot write {}: {e}", path.display())))?;
                    let mut w = BufWriter::new(file);
                    write_sweep(&mut w, sweep.name, &rows, format)?;
                    w.flush()?;
                }
                None => write_sweep(out, sweep.name, &rows, format)?,
            }
            Ok(EXIT_OK)
        }
        Command::Selftest { seed } => {
            let checks = selftest::run(seed)?;
            write_json(out, &serde_json::to_value(&checks)?)?;
            Ok(if checks.iter().all(|c| c.passed) {
                EXIT_OK
            } else {
                EXIT_FAILED
            })
        }
    }
}

impl PointArgs {
    fn resolve(&self) -> std::result::Result<TraceTriple, UsageError> {
        match (&self.traces, &self.fenchel_nielsen) {
            (Some(s), None) => {
                let [x, y, z] = parse_three("--traces", s)?;
                Ok(TraceTriple::new(x, y, z)?)
            }
            (None, Some(s)) => {
                let [b, t, k] = parse_three("--fn", s)?;
                Ok(FenchelNielsen::new(b, t, k)?.trace_triple()?)
            }
            _ => Err(UsageError("give exactly one of --traces and --fn".into())),
        }
    }
}

fn split_three<'a>(flag: &str, s: &'a str) -> std::result::Result<[&'a str; 3], UsageError> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    <[&str; 3]>::try_from(parts).map_err(|_| {
        UsageError(format!(
            "{flag} needs three comma-separated values, got '{s}'"
        ))
    })
}

fn parse_number(flag: &str, s: &str) -> std::result::Result<f64, UsageError> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(UsageError(format!("malformed number '{s}' in {flag}"))),
    }
}

fn parse_three(flag: &str, s: &str) -> std::result::Result<[f64; 3], UsageError> {
    let [a, b, c] = split_three(flag, s)?;
    Ok([
        parse_number(flag, a)?,
        parse_number(flag, b)?,
        parse_number(flag, c)?,
    ])
}

fn check_cutoff(cutoff: f64) -> std::result::Result<(), UsageError> {
    if cutoff.is_finite() && cutoff > 0.0 {
        Ok(())
    } else {
        Err(UsageError(format!(
            "--cutoff {cutoff} must be finite and > 0"
        )))
    }
}

/// CSV number: 17 significant digits.
fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn write_json(out: &mut dyn Write, v: &Value) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, v)?;
    writeln!(out)
}

fn write_verify_csv(
    out: &mut dyn Write,
    r: &IdentityReport,
    tol: f64,
    passed: bool,
) -> std::io::Result<()> {
    writeln!(
        out,
        "identity,x,y,z,k,cutoff,term_count,partial_sum,target,defect,tail_estimate,tolerance,passed"
    )?;
    let p = |key: &str| num(r.parameters.get(key).copied().unwrap_or(f64::NAN));
    writeln!(
        out,
        "{},{},{},{},{},{},{},{},{},{},{},{},{}",
        r.kind,
        p("x"),
        p("y"),
        p("z"),
        p("k"),
        num(r.cutoff),
        r.term_count,
        num(r.partial_sum),
        num(r.target),
        num(r.defect),
        num(r.tail_estimate),
        num(tol),
        passed
    )
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Sweep {
    name: &'static str,
    slot: usize,
    fixed: [f64; 3],
    start: f64,
    step: f64,
    count: usize,
}

impl Sweep {
    fn parse(vary: &str, fenchel_nielsen: &str) -> std::result::Result<Self, UsageError> {
        let (name, range) = vary.split_once('=').ok_or_else(|| {
            UsageError(format!("--vary needs name=start:stop:step, got '{vary}'"))
        })?;
        let (name, slot) = match name.trim() {
            "b" => ("b", 0),
            "t" => ("t", 1),
            "k" => ("k", 2),
            other => {
                return Err(UsageError(format!(
                    "--vary can only vary b, t or k, not '{other}'"
                )))
            }
        };
        let bounds: Vec<&str> = range.split(':').map(str::trim).collect();
        let [start, stop, step] = <[&str; 3]>::try_from(bounds)
            .map_err(|_| UsageError(format!("--vary needs start:stop:step, got '{range}'")))?;
        let (start, stop, step) = (
            parse_number("--vary", start)?,
            parse_number("--vary", stop)?,
            parse_number("--vary", step)?,
        );
        if !(step > 0.0) || stop < start {
            return Err(UsageError(format!(
                "--vary needs step > 0 and stop >= start, got {start}:{stop}:{step}"
            )));
        }
        // tolerate rounding in (stop - start) / step so 0.1:4:0.1 ends at 4
        let span = (stop - start) / step;
        let count = (span + 1e-9 * span.max(1.0)).floor() + 1.0;
        if count > MAX_SWEEP_POINTS as f64 {
            return Err(UsageError(format!(
                "--vary grid has {count} points, limit {MAX_SWEEP_POINTS}"
            )));
        }

        let parts = split_three("--fn", fenchel_nielsen)?;
        let mut fixed = [0.0; 3];
        for (i, part) in parts.iter().enumerate() {
            match (i == slot, *part == "_") {
                (true, true) => {}
                (true, false) => {
                    return Err(UsageError(format!(
                        "--fn must have '_' in the {name} slot being varied, got '{part}'"
                    )))
                }
                (false, true) => {
                    return Err(UsageError(format!(
                        "--fn has '_' in a slot other than {name}"
                    )))
                }
                (false, false) => fixed[i] = parse_number("--fn", part)?,
            }
        }
        Ok(Sweep {
            name,
            slot,
            fixed,
            start,
            step,
            count: count as usize,
        })
    }

    fn values(&self) -> impl IndexedParallelIterator<Item = f64> + '_ {
        (0..self.count)
            .into_par_iter()
            .map(move |i| self.start + i as f64 * self.step)
    }

    fn evaluate(
        &self,
        kind: IdentityKind,
        cutoff: f64,
    ) -> std::result::Result<Vec<(f64, IdentityReport)>, UsageError> {
        // collect keeps grid order whatever order the points finish in
        self.values()
            .map(|v| {
                let mut c = self.fixed;
                c[self.slot] = v;
                let point = FenchelNielsen::new(c[0], c[1], c[2])?.trace_triple()?;
                Ok((v, evaluate(kind, &point, cutoff)?))
            })
            .collect()
    }
}

fn write_sweep(
    out: &mut dyn Write,
    name: &str,
    rows: &[(f64, IdentityReport)],
    format: Format,
) -> std::io::Result<()> {
    match format {
        Format::Csv => {
            writeln!(
                out,
                "param_name,param_value,cutoff,term_count,partial_sum,defect,tail_estimate"
            )?;
            for (v, r) in rows {
                writeln!(
                    out,
                    "{name},{},{},{},{},{},{}",
                    num(*v),
                    num(r.cutoff),
                    r.term_count,
                    num(r.partial_sum),
                    num(r.defect),
                    num(r.tail_estimate)
                )?;
            }
            Ok(())
        }
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|(v, r)| {
                    json!({
                        "param_name": name,
                        "param_value": v,
                        "cutoff": r.cutoff,
                        "term_count": r.term_count,
                        "partial_sum": r.partial_sum,
                        "defect": r.defect,
                        "tail_estimate": r.tail_estimate,
                    })
                })
                .collect();
            write_json(out, &Value::Array(rows))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sweep(vary: &str, fnc: &str) -> std::result::Result<Sweep, UsageError> {
        Sweep::parse(vary, fnc)
    }

    #[test]
    fn grid_count_includes_stop() {
        assert_eq!(sweep("k=0.1:4:0.1", "1,0.5,_").unwrap().count, 40);
        assert_eq!(sweep("k=0:1:0.3", "1,0.5,_").unwrap().count, 4);
        assert_eq!(sweep("b=1:1:0.5", "_,0,1").unwrap().count, 1);
    }

    #[test]
    fn sweep_slots() {
        let s = sweep("t=0:1:0.5", "1.5,_,2").unwrap();
        assert_eq!((s.slot, s.fixed), (1, [1.5, 0.0, 2.0]));
        assert!(sweep("k=0:1:0.5", "1,_,2").is_err());
        assert!(sweep("k=0:1:0.5", "1,0,2").is_err());
        assert!(sweep("x=0:1:0.5", "1,0,_").is_err());
        assert!(sweep("k=1:0:0.5", "1,0,_").is_err());
        assert!(sweep("k=0:1:0", "1,0,_").is_err());
        assert!(sweep("k=0:1", "1,0,_").is_err());
    }

    #[test]
    fn number_parsing() {
        assert_eq!(parse_three("--traces", " 3, 3,3 ").unwrap(), [3.0; 3]);
        assert!(parse_three("--traces", "3,3").is_err());
        assert!(parse_three("--traces", "3,3,x").is_err());
        assert!(parse_three("--traces", "3,3,inf").is_err());
    }

    #[test]
    fn csv_numbers_have_seventeen_digits() {
        assert_eq!(num(0.1), "1.0000000000000001e-1");
        assert_eq!(num(0.1).parse::<f64>().unwrap(), 0.1);
    }

    fn run_args(args: &[&str]) -> (u8, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut argv = vec!["torus-identities"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn errors_are_one_line() {
        for args in [
            &["verify"][..],
            &[
                "verify",
                "--identity",
                "thm99",
                "--traces",
                "3,3,3",
                "--cutoff",
                "5",
            ],
            &[
                "verify",
                "--identity",
                "thm12",
                "--traces",
                "3,3,3",
                "--fn",
                "1,0,0",
                "--cutoff",
                "5",
            ],
            &[
                "verify",
                "--identity",
                "thm11",
                "--traces",
                "3,3,3",
                "--cutoff",
                "5",
            ],
            &["spectrum", "--traces", "1,1,1", "--cutoff", "5"],
            &["spectrum", "--traces", "3,3,3", "--cutoff", "-1"],
            &["bogus"],
        ] {
            let (code, out, err) = run_args(args);
            assert_eq!(code, EXIT_USAGE, "{args:?}");
            assert!(out.is_empty());
            assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
        }
    }

    #[test]
    fn verify_failure_exit() {
        let (code, out, _) = run_args(&[
            "verify",
            "--identity",
            "thm12",
            "--traces",
            "3,3,3",
            "--cutoff",
            "3",
            "--tol",
            "1e-6",
        ]);
        assert_eq!(code, EXIT_FAILED);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["passed"], json!(false));
    }

    #[test]
    fn help_is_success() {
        let (code, out, _) = run_args(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("verify"));
    }
}
