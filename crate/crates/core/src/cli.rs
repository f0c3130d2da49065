//! Command-line front end. Output is deterministic for a given command line
//! and input: CSV numbers use 17 significant digits, JSON numbers use the
//! shortest representation that round-trips.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::clifford::{blade_label, check_dim, Multivector, ParaVector};
use crate::error::{Error, Result};
use crate::gridfile::{read_grid, write_grid, Encoding};
use crate::kernels::{KernelEvalReport, KernelKind, Method, StripGeometry};
use crate::spectral::{ball_support, dft, hardy_split, propagate_slice, pw_extend_many};
use crate::verify::{run_all, run_suite, Suite, VerifyConfig, DEFAULT_SEED};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_TOL: f64 = 1e-10;
pub const TOL_ENV: &str = "MONOGENIC_TOL";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Report thresholds used by `decompose`.
pub const RECOMBINATION_LIMIT: f64 = 1e-12;
pub const PYTHAGORAS_LIMIT: f64 = 1e-10;

#[derive(Parser, Debug)]
#[command(
    name = "monogenic",
    version,
    about = "Reproducing kernels and Hardy decompositions for monogenic functions"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    pub format: Format,
    /// Write the table or report here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MethodChoice {
    Radial,
    Oracle,
    Closed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EncodingChoice {
    Json,
    F64le,
}

impl From<EncodingChoice> for Encoding {
    fn from(e: EncodingChoice) -> Self {
        match e {
            EncodingChoice::Json => Encoding::Json,
            EncodingChoice::F64le => Encoding::F64le,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate a kernel K(w, x̄) at a list of points w.
    Kernel(KernelArgs),
    /// Split a grid into Hardy components and propagate slices.
    Decompose(DecomposeArgs),
    /// Evaluate the monogenic extension of band-limited grid data.
    Extend(ExtendArgs),
    /// Run numerical verification suites.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct PointArgs {
    /// Point as comma-separated x0,x1,...,xm. Repeatable.
    #[arg(long = "point", allow_hyphen_values = true)]
    pub points: Vec<String>,
    /// File with one comma-separated point per line; `#` starts a comment.
    #[arg(long = "points")]
    pub points_file: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct KernelArgs {
    /// Kernel: P, S, S+, S-, B, B+ or B-.
    #[arg(long = "type", short = 't')]
    pub kind: String,
    #[arg(long)]
    pub m: usize,
    /// Strip half-width.
    #[arg(long, default_value_t = 1.0)]
    pub a: f64,
    /// Second argument x of K(w, x̄); the origin when omitted.
    #[arg(long, allow_hyphen_values = true)]
    pub source: Option<String>,
    #[command(flatten)]
    pub points: PointArgs,
    /// Absolute tolerance; defaults to $MONOGENIC_TOL or 1e-10.
    #[arg(long, env = TOL_ENV)]
    pub tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = MethodChoice::Radial)]
    pub method: MethodChoice,
}

#[derive(Args, Debug)]
pub struct DecomposeArgs {
    /// Input grid file.
    #[arg(long)]
    pub input: PathBuf,
    /// Strip half-width.
    #[arg(long)]
    pub a: f64,
    /// Slice heights to propagate to. Repeatable.
    #[arg(long = "x0", allow_hyphen_values = true)]
    pub x0: Vec<f64>,
    /// Directory for the output grids.
    #[arg(long)]
    pub out_dir: PathBuf,
    #[arg(long, value_enum, default_value_t = EncodingChoice::Json)]
    pub encoding: EncodingChoice,
}

#[derive(Args, Debug)]
pub struct ExtendArgs {
    /// Input grid file.
    #[arg(long)]
    pub input: PathBuf,
    /// Radius of the frequency ball carrying the spectrum.
    #[arg(long)]
    pub radius: f64,
    #[command(flatten)]
    pub points: PointArgs,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Suite name or `all`.
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

/// Parses a point list: one point per line, components separated by commas,
/// blank lines and `#` comments ignored.
pub fn parse_point_list(text: &str, m: usize) -> Result<Vec<ParaVector>> {
    check_dim(m)?;
    let mut points = Vec::new();
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let content = line.split('#').next().unwrap_or("");
        if !content.trim().is_empty() {
            points.push(parse_point_at(content, m, offset)?);
        }
        offset += line.len();
    }
    Ok(points)
}

/// Parses one point; `base` is the byte offset of `text` in its source.
pub fn parse_point_at(text: &str, m: usize, base: usize) -> Result<ParaVector> {
    let mut components = Vec::with_capacity(m + 1);
    let mut start = 0;
    for field in text.split(',') {
        let lead = field.len() - field.trim_start().len();
        let trimmed = field.trim();
        let value: f64 = trimmed.parse().map_err(|_| Error::Parse {
            offset: base + start + lead,
            message: format!("expected a number, found '{trimmed}'"),
        })?;
        if !value.is_finite() {
            return Err(Error::Parse {
                offset: base + start + lead,
                message: format!("component '{trimmed}' is not finite"),
            });
        }
        components.push(value);
        start += field.len() + 1;
    }
    if components.len() != m + 1 {
        return Err(Error::Parse {
            offset: base,
            message: format!(
                "point needs {} components (x0,...,x{m}), found {}",
                m + 1,
                components.len()
            ),
        });
    }
    ParaVector::from_components(&components)
}

fn collect_points(args: &PointArgs, m: usize) -> Result<Vec<ParaVector>> {
    let mut points = args
        .points
        .iter()
        .map(|p| parse_point_at(p, m, 0))
        .collect::<Result<Vec<_>>>()?;
    if let Some(path) = &args.points_file {
        let text =
            fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        points.extend(parse_point_list(&text, m)?);
    }
    Ok(points)
}

fn resolve_tol(tol: Option<f64>) -> Result<f64> {
    let tol = tol.unwrap_or(DEFAULT_TOL);
    if tol > 0.0 && tol.is_finite() {
        Ok(tol)
    } else {
        Err(Error::InvalidParameter(format!(
            "tolerance must be positive, found {tol}"
        )))
    }
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn point_columns(m: usize) -> Vec<String> {
    (0..=m).map(|j| format!("x{j}")).collect()
}

#[derive(Serialize)]
struct KernelRow {
    point: Vec<f64>,
    scalar: Option<f64>,
    vector: Option<Vec<f64>>,
    abs_error: Option<f64>,
    method: Option<String>,
    error: Option<String>,
}

fn evaluate_row(
    kind: KernelKind,
    g: &StripGeometry,
    w: &ParaVector,
    x: &ParaVector,
    tol: f64,
    method: MethodChoice,
) -> Result<KernelEvalReport> {
    match method {
        MethodChoice::Radial => kind.evaluate(g, w, x, tol),
        MethodChoice::Oracle => kind.evaluate_oracle(g, w, x).map(|(r, _)| r),
        MethodChoice::Closed => match kind.evaluate_closed(g, w, x) {
            Some(v) => Ok(KernelEvalReport {
                value: v?,
                abs_error_estimate: 0.0,
                method: Method::ClosedForm,
            }),
            None => Err(Error::InvalidParameter(format!(
                "kernel {} has no closed form",
                kind.label()
            ))),
        },
    }
}

/// Output text and exit status of one command.
pub struct Outcome {
    pub text: String,
    pub status: i32,
}

fn cmd_kernel(args: &KernelArgs, format: Format) -> Result<Outcome> {
    let kind: KernelKind = args.kind.parse()?;
    let m = args.m;
    let g = StripGeometry::new(m, args.a)?;
    let tol = resolve_tol(args.tol)?;
    let source = match &args.source {
        Some(s) => parse_point_at(s, m, 0)?,
        None => ParaVector::origin(m)?,
    };
    let points = collect_points(&args.points, m)?;
    let rows: Vec<KernelRow> = points
        .par_iter()
        .map(|w| {
            let point = w.components();
            match evaluate_row(kind, &g, w, &source, tol, args.method) {
                Ok(r) => KernelRow {
                    point,
                    scalar: Some(r.value.scalar_part().re),
                    vector: Some((1..=m).map(|j| r.value.vector_coeff(j).re).collect()),
                    abs_error: Some(r.abs_error_estimate),
                    method: Some(r.method.to_string()),
                    error: None,
                },
                Err(e) => KernelRow {
                    point,
                    scalar: None,
                    vector: None,
                    abs_error: None,
                    method: None,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect();
    let status = if !rows.is_empty() && rows.iter().all(|r| r.error.is_some()) {
        EXIT_FAILURE
    } else {
        EXIT_OK
    };
    let text = match format {
        Format::Json => json_text(&json!({
            "schema": "monogenic-kernel",
            "schema_version": SCHEMA_VERSION,
            "kernel": kind.label(),
            "m": m,
            "a": args.a,
            "tol": tol,
            "method": args.method,
            "source": source.components(),
            "rows": rows,
        })),
        Format::Csv => {
            let mut out = format!(
                "# monogenic-kernel v{SCHEMA_VERSION} kernel={} m={m} a={} tol={} method={:?} source={}\n",
                kind.label(),
                num(args.a),
                num(tol),
                args.method,
                source.components().iter().map(|c| num(*c)).collect::<Vec<_>>().join(";"),
            );
            let mut header = point_columns(m);
            header.push("scalar".into());
            header.extend((1..=m).map(|j| format!("e{j}")));
            header.extend(["abs_error", "method", "error"].map(String::from));
            out.push_str(&header.join(","));
            out.push('\n');
            for r in &rows {
                let mut cells: Vec<String> = r.point.iter().map(|c| num(*c)).collect();
                cells.push(r.scalar.map(num).unwrap_or_default());
                match &r.vector {
                    Some(v) => cells.extend(v.iter().map(|c| num(*c))),
                    None => cells.extend((0..m).map(|_| String::new())),
                }
                cells.push(r.abs_error.map(num).unwrap_or_default());
                cells.push(r.method.clone().unwrap_or_default());
                cells.push(csv_escape(r.error.as_deref().unwrap_or("")));
                out.push_str(&cells.join(","));
                out.push('\n');
            }
            out
        }
    };
    Ok(Outcome { text, status })
}

fn json_text(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("values are serialisable");
    s.push('\n');
    s
}

fn cmd_decompose(args: &DecomposeArgs, format: Format) -> Result<Outcome> {
    let f = read_grid(&args.input)?;
    let g = StripGeometry::new(f.m, args.a)?;
    let encoding: Encoding = args.encoding.into();
    let ext = match encoding {
        Encoding::Json => "json",
        Encoding::F64le => "bin",
    };
    // every slice is computed before anything is written
    let slices = args
        .x0
        .iter()
        .map(|&x0| propagate_slice(&f, x0, &g))
        .collect::<Result<Vec<_>>>()?;
    let (plus, minus) = hardy_split(&f);
    let recombined = plus.zip_with(&minus, |p, q| p + q)?;
    let scale = f.max_norm();
    let recombination = if scale == 0.0 {
        0.0
    } else {
        recombined.max_difference(&f)? / scale
    };
    let total = f.norm_sqr();
    let gap = (total - plus.norm_sqr() - minus.norm_sqr()).abs();
    let pythagoras = if total == 0.0 { gap } else { gap / total };

    fs::create_dir_all(&args.out_dir)
        .map_err(|e| Error::Io(format!("{}: {e}", args.out_dir.display())))?;
    let mut files = vec![format!("f_plus.{ext}"), format!("f_minus.{ext}")];
    write_grid(&args.out_dir.join(&files[0]), &plus, encoding)?;
    write_grid(&args.out_dir.join(&files[1]), &minus, encoding)?;
    for (i, s) in slices.iter().enumerate() {
        let name = format!("slice_{i}.{ext}");
        write_grid(&args.out_dir.join(&name), s, encoding)?;
        files.push(name);
    }
    let pass = recombination <= RECOMBINATION_LIMIT && pythagoras <= PYTHAGORAS_LIMIT;
    let text = match format {
        Format::Json => json_text(&json!({
            "schema": "monogenic-decompose",
            "schema_version": SCHEMA_VERSION,
            "m": f.m,
            "a": args.a,
            "x0": args.x0,
            "files": files,
            "recombination_residual": recombination,
            "recombination_limit": RECOMBINATION_LIMIT,
            "pythagoras_residual": pythagoras,
            "pythagoras_limit": PYTHAGORAS_LIMIT,
            "pass": pass,
        })),
        Format::Csv => {
            let mut out = format!(
                "# monogenic-decompose v{SCHEMA_VERSION} m={} a={}\n",
                f.m,
                num(args.a)
            );
            out.push_str("quantity,value,limit,pass\n");
            let _ = writeln!(
                out,
                "recombination_residual,{},{},{}",
                num(recombination),
                num(RECOMBINATION_LIMIT),
                recombination <= RECOMBINATION_LIMIT
            );
            let _ = writeln!(
                out,
                "pythagoras_residual,{},{},{}",
                num(pythagoras),
                num(PYTHAGORAS_LIMIT),
                pythagoras <= PYTHAGORAS_LIMIT
            );
            for (i, x0) in args.x0.iter().enumerate() {
                let _ = writeln!(out, "slice_{i}.{ext},{},,", num(*x0));
            }
            out
        }
    };
    Ok(Outcome {
        text,
        status: if pass { EXIT_OK } else { EXIT_FAILURE },
    })
}

fn cmd_extend(args: &ExtendArgs, format: Format) -> Result<Outcome> {
    let f = read_grid(&args.input)?;
    let m = f.m;
    let spec = dft(&f);
    let support = ball_support(&spec, args.radius);
    let points = collect_points(&args.points, m)?;
    let values = pw_extend_many(&spec, args.radius, &points)?;
    let blades: Vec<String> = (0..1usize << m).map(blade_label).collect();
    let text = match format {
        Format::Json => {
            let rows: Vec<_> = points
                .iter()
                .zip(&values)
                .map(|(p, v)| json!({ "point": p.components(), "value": coefficient_pairs(v) }))
                .collect();
            json_text(&json!({
                "schema": "monogenic-extend",
                "schema_version": SCHEMA_VERSION,
                "m": m,
                "radius": args.radius,
                "outside_mass": support.margin,
                "blade_order": blades,
                "rows": rows,
            }))
        }
        Format::Csv => {
            let mut out = format!(
                "# monogenic-extend v{SCHEMA_VERSION} m={m} radius={} outside_mass={}\n",
                num(args.radius),
                num(support.margin)
            );
            let mut header = point_columns(m);
            for b in &blades {
                header.push(format!("{b}_re"));
                header.push(format!("{b}_im"));
            }
            out.push_str(&header.join(","));
            out.push('\n');
            for (p, v) in points.iter().zip(&values) {
                let mut cells: Vec<String> = p.components().iter().map(|c| num(*c)).collect();
                for c in v.coeffs() {
                    cells.push(num(c.re));
                    cells.push(num(c.im));
                }
                out.push_str(&cells.join(","));
                out.push('\n');
            }
            out
        }
    };
    Ok(Outcome {
        text,
        status: EXIT_OK,
    })
}

fn coefficient_pairs(v: &Multivector) -> Vec<[f64; 2]> {
    v.coeffs().iter().map(|c| [c.re, c.im]).collect()
}

fn cmd_verify(args: &VerifyArgs, format: Format) -> Result<Outcome> {
    let config = VerifyConfig { seed: args.seed };
    let reports = if args.suite == "all" {
        run_all(&config)
    } else {
        vec![run_suite(args.suite.parse::<Suite>()?, &config)]
    };
    let pass = reports.iter().all(|r| r.pass);
    let text = match format {
        Format::Json => {
            let suites: Vec<_> = reports
                .iter()
                .map(|r| json!({ "suite": r.suite, "pass": r.pass, "checks": r.checks }))
                .collect();
            json_text(&json!({
                "schema": "monogenic-verify",
                "schema_version": SCHEMA_VERSION,
                "seed": args.seed,
                "pass": pass,
                "suites": suites,
            }))
        }
        Format::Csv => {
            let mut out = format!("# monogenic-verify v{SCHEMA_VERSION} seed={}\n", args.seed);
            out.push_str("suite,check,pass,metric,threshold,detail\n");
            for r in &reports {
                for c in &r.checks {
                    let _ = writeln!(
                        out,
                        "{},{},{},{},{},{}",
                        r.suite,
                        csv_escape(&c.name),
                        c.pass,
                        num(c.metric),
                        num(c.threshold),
                        csv_escape(&c.detail)
                    );
                }
            }
            out
        }
    };
    Ok(Outcome {
        text,
        status: if pass { EXIT_OK } else { EXIT_FAILURE },
    })
}

pub fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Kernel(a) => cmd_kernel(a, cli.format),
        Command::Decompose(a) => cmd_decompose(a, cli.format),
        Command::Extend(a) => cmd_extend(a, cli.format),
        Command::Verify(a) => cmd_verify(a, cli.format),
    }
}

fn emit(text: &str, output: Option<&Path>, stdout: &mut dyn Write) -> Result<()> {
    match output {
        Some(path) => {
            fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
        }
        None => stdout.write_all(text.as_bytes()).map_err(Error::from),
    }
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(&cli).and_then(|o| emit(&o.text, cli.output.as_deref(), stdout).map(|_| o.status))
    {
        Ok(status) => status,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("monogenic").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    fn first_value(csv: &str, column: &str) -> f64 {
        let mut lines = csv.lines().filter(|l| !l.starts_with('#'));
        let header: Vec<&str> = lines.next().unwrap().split(',').collect();
        let row: Vec<&str> = lines.next().unwrap().split(',').collect();
        let i = header.iter().position(|h| *h == column).unwrap();
        row[i].parse().unwrap()
    }

    #[test]
    fn point_lists() {
        let pts = parse_point_list("# header\n0, 1, 2\n\n 0.5,-1,3 # trailing\n", 2).unwrap();
        assert_eq!(pts.len(), 2);
        assert_eq!(pts[1].components(), vec![0.5, -1.0, 3.0]);
        assert!(parse_point_list("", 3).unwrap().is_empty());
        match parse_point_list("0,0,0\n1,x,2\n", 2) {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 8),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_point_list("0,0\n", 2),
            Err(Error::Parse { offset: 0, .. })
        ));
        assert!(matches!(
            parse_point_list("0,inf,0\n", 2),
            Err(Error::Parse { offset: 2, .. })
        ));
        assert!(parse_point_list("0\n", 0).is_err());
    }

    #[test]
    fn szego_at_origin() {
        let (code, out, _) = run_capture(&[
            "kernel", "--type", "S", "--m", "2", "--a", "1", "--point", "0,0,0",
        ]);
        assert_eq!(code, 0);
        assert!(out.starts_with("# monogenic-kernel v1"));
        assert!((first_value(&out, "scalar") - 1.0 / (8.0 * PI)).abs() < 1e-12);
    }

    #[test]
    fn strip_violation_is_a_row_error() {
        let (code, out, _) =
            run_capture(&["kernel", "--type", "S", "--m", "2", "--point", "2.5,0,0"]);
        assert_eq!(code, EXIT_FAILURE);
        assert!(out.contains("strip condition violated"));
        let (code, _, _) = run_capture(&[
            "kernel", "--type", "S", "--m", "2", "--point", "2.5,0,0", "--point", "0,0,0",
        ]);
        assert_eq!(code, EXIT_OK);
    }

    #[test]
    fn empty_point_list() {
        let (code, out, _) = run_capture(&["kernel", "--type", "B", "--m", "2"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 2);
        let (code, out, _) =
            run_capture(&["--format", "json", "kernel", "--type", "B", "--m", "2"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["rows"].as_array().unwrap().len(), 0);
        assert_eq!(v["schema_version"], 1);
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(
            run_capture(&["kernel", "--type", "Q", "--m", "2"]).0,
            EXIT_USAGE
        );
        assert_eq!(
            run_capture(&["kernel", "--type", "S", "--m", "7"]).0,
            EXIT_USAGE
        );
        assert_eq!(
            run_capture(&["kernel", "--type", "S", "--m", "2", "--tol", "-1"]).0,
            EXIT_USAGE
        );
        assert_eq!(
            run_capture(&["kernel", "--type", "S", "--m", "2", "--point", "0,0"]).0,
            EXIT_USAGE
        );
        assert_eq!(run_capture(&["bogus"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["verify", "--suite", "nope"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn output_is_deterministic() {
        let args = [
            "kernel",
            "--type",
            "B",
            "--m",
            "3",
            "--point",
            "0.1,0.2,-0.3,0.4",
            "--point",
            "-0.5,1,2,3",
        ];
        let (_, a, _) = run_capture(&args);
        let (_, b, _) = run_capture(&args);
        assert_eq!(a, b);
        let row = a.lines().nth(2).unwrap();
        // 17 significant digits
        assert!(row
            .split(',')
            .next()
            .unwrap()
            .contains("1.0000000000000001e-1"));
    }

    #[test]
    fn closed_method_matches_radial() {
        let base = [
            "kernel",
            "--type",
            "S-",
            "--m",
            "2",
            "--a",
            "0.5",
            "--point",
            "0.2,0.3,-0.1",
        ];
        let (_, radial, _) = run_capture(&base);
        let mut closed = base.to_vec();
        closed.extend(["--method", "closed"]);
        let (code, closed, _) = run_capture(&closed);
        assert_eq!(code, 0);
        assert!((first_value(&radial, "scalar") - first_value(&closed, "scalar")).abs() < 1e-9);
        let (code, _, _) = run_capture(&[
            "kernel", "--type", "B", "--m", "2", "--point", "0,0,0", "--method", "closed",
        ]);
        assert_eq!(code, EXIT_FAILURE);
    }
}
