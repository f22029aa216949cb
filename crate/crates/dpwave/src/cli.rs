//! Command-line front end: datasets for the region, the period function,
//! spectra, fixed-period curves, Stokes checks and certificates.
//!
//! Every command returns a [`Dataset`]; the binary only parses flags, writes the
//! dataset and maps errors to exit codes.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Result, WaveError};
use crate::periodfn::{a_grid, find_a0, period, period_d_da};
use crate::spectral::{count_negative, default_lambda_grid, eig_sweep_with, spectral_profile, CROSSING_TOL};
use crate::stability::trace_curve;
use crate::stokes::{validate, DEFAULT_EPSILONS};
use crate::wavecore::{region_boundaries, WaveParams};

/// Version of the column layouts and the JSON document shape.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "dpwave", version, about = "Smooth periodic Degasperis-Procesi waves: region, period, spectrum, stability")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Wave speed.
    #[arg(long, global = true, default_value_t = 1.0)]
    pub c: f64,
    /// Integration constant `a`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub a: Option<f64>,
    /// Integration constant `b`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub b: Option<f64>,
    /// Period for `curve` and `stokes` [default: pi].
    #[arg(long = "L", global = true)]
    pub period: Option<f64>,
    /// Resolution: boundary points (region, default 200), a-grid (period, 64),
    /// b-grid (a0, 40), lambda points (spectrum, 200), curve samples (curve, 64).
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Bisection tolerance for eigenvalue zero crossings in lambda (spectrum).
    #[arg(long, global = true, default_value_t = CROSSING_TOL)]
    pub tol: f64,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Also write a gnuplot script reading the CSV written to `--out`.
    #[arg(long, global = true)]
    pub plot_script: Option<PathBuf>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Boundaries of the existence region and the critical curve a0(b).
    Region,
    /// Period L(a, b) and dL/da on an a-grid at fixed b.
    Period,
    /// The critical curve a0(b) on b in (-2c^2/9, 0).
    A0,
    /// Lowest five eigenvalue branches of the Schrodinger family and the counts.
    Spectrum,
    /// Fixed-period curve with M, F, F/M^3, det S and verdicts.
    Curve,
    /// Small-amplitude expansion against the fixed-period curve.
    Stokes,
    /// Exact polynomial certificates.
    Certify {
        /// Claims to run (C1..C9); all when absent.
        #[arg(long = "claim")]
        claims: Vec<String>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Region => "region",
            Self::Period => "period",
            Self::A0 => "a0",
            Self::Spectrum => "spectrum",
            Self::Curve => "curve",
            Self::Stokes => "stokes",
            Self::Certify { .. } => "certify",
        }
    }
}

/// One table cell.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(v) if v.is_finite() => format!("{v:.16e}"),
            Cell::Num(_) => "nan".into(),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(v) if v.is_finite() => json!(v),
            Cell::Num(_) => Value::Null,
            Cell::Int(v) => json!(v),
            Cell::Text(s) => json!(s),
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Num(v) => Some(*v),
            Cell::Int(v) => Some(*v as f64),
            Cell::Text(_) => None,
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.into())
    }
}

/// A table plus metadata; the metadata only appears in JSON.
#[derive(Debug, Clone)]
pub struct Dataset {
    pub command: String,
    pub params: BTreeMap<String, Value>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub meta: BTreeMap<String, Value>,
}

impl Dataset {
    fn new(command: &str, columns: &[&str]) -> Self {
        Self {
            command: command.into(),
            params: BTreeMap::new(),
            columns: columns.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
            meta: BTreeMap::new(),
        }
    }

    fn param(mut self, k: &str, v: impl Serialize) -> Self {
        self.params.insert(k.into(), json!(v));
        self
    }

    fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<&Cell>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| &r[i]).collect())
    }

    /// Numeric column; non-numeric cells become NaN.
    pub fn numbers(&self, name: &str) -> Option<Vec<f64>> {
        Some(self.column(name)?.into_iter().map(|c| c.as_f64().unwrap_or(f64::NAN)).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut s = self.columns.join(",");
        s.push('\n');
        for r in &self.rows {
            let line: Vec<String> = r.iter().map(Cell::csv).collect();
            s.push_str(&line.join(","));
            s.push('\n');
        }
        s
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self.rows.iter().map(|r| Value::Array(r.iter().map(Cell::json).collect())).collect();
        let doc = json!({
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "params": self.params,
            "columns": self.columns,
            "rows": rows,
            "meta": self.meta,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("dataset serializes");
        s.push('\n');
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}

fn interior(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * (i as f64 + 0.5) / n as f64).collect()
}

/// Boundaries `a_-(b)`, `a_+(b)`, the segment `a = 0` and the critical curve `a0(b)`.
pub fn cmd_region(c: f64, resolution: usize) -> Result<Dataset> {
    if resolution < 50 {
        return Err(WaveError::InvalidArgument(format!("resolution {resolution} must be at least 50")));
    }
    let mut ds = Dataset::new("region", &["series", "b", "a"]).param("c", c).param("n", resolution);
    let c2 = c * c;
    for b in interior(-c2, c2 / 8.0, resolution) {
        ds.push(vec!["a_minus".into(), b.into(), region_boundaries(c, b)?.a_high.into()]);
    }
    for b in interior(0.0, c2 / 8.0, resolution) {
        ds.push(vec!["a_plus".into(), b.into(), region_boundaries(c, b)?.a_low.into()]);
    }
    for b in interior(-c2, 0.0, resolution) {
        ds.push(vec!["a_zero".into(), b.into(), 0.0.into()]);
    }
    let (curve, unresolved) = a0_curve(c, resolution / 4)?;
    for (b, a0) in curve {
        ds.push(vec!["a0".into(), b.into(), a0.into()]);
    }
    ds.meta.insert("a0_unresolved_b".into(), json!(unresolved));
    ds.meta.insert("a_critical".into(), json!(crate::wavecore::a_critical(c)));
    Ok(ds)
}

/// `(b, a0)` pairs and the `b` values where `a0` is too close to 0 to resolve.
type A0Curve = (Vec<(f64, f64)>, Vec<f64>);

fn a0_curve(c: f64, n: usize) -> Result<A0Curve> {
    let bs = interior(-2.0 * c * c / 9.0, 0.0, n);
    let found: Vec<Option<f64>> = bs.par_iter().map(|&b| find_a0(c, b)).collect::<Result<_>>()?;
    let mut curve = Vec::new();
    let mut unresolved = Vec::new();
    for (b, a) in bs.into_iter().zip(found) {
        match a {
            Some(a) => curve.push((b, a)),
            None => unresolved.push(b),
        }
    }
    Ok((curve, unresolved))
}

/// `L(a, b)` and `dL/da` on an interior a-grid at fixed `b`.
pub fn cmd_period(c: f64, b: f64, n: usize) -> Result<Dataset> {
    if n < 2 {
        return Err(WaveError::InvalidArgument("need at least two grid points".into()));
    }
    let grid = a_grid(c, b, n, 1e-3)?;
    let rows: Vec<Vec<Cell>> = grid
        .par_iter()
        .map(|&a| {
            let p = WaveParams::new(c, a, b)?;
            let (d, e) = period_d_da(&p)?;
            Ok(vec![a.into(), period(&p)?.into(), d.into(), e.into()])
        })
        .collect::<Result<_>>()?;
    let mut ds = Dataset::new("period", &["a", "L", "dL_da", "dL_da_err"]).param("c", c).param("b", b).param("n", n);
    ds.rows = rows;
    ds.meta.insert("a0".into(), json!(find_a0(c, b)?));
    Ok(ds)
}

/// The critical curve on an interior grid of `b`.
pub fn cmd_a0(c: f64, n: usize) -> Result<Dataset> {
    if n < 2 {
        return Err(WaveError::InvalidArgument("need at least two grid points".into()));
    }
    let mut ds = Dataset::new("a0", &["b", "a0", "L"]).param("c", c).param("n", n);
    let (curve, unresolved) = a0_curve(c, n)?;
    for (b, a0) in curve {
        ds.push(vec![b.into(), a0.into(), period(&WaveParams::new(c, a0, b)?)?.into()]);
    }
    ds.meta.insert("a0_unresolved_b".into(), json!(unresolved));
    Ok(ds)
}

/// Five lowest branches of `K(lambda)` and the negative-eigenvalue counts.
pub fn cmd_spectrum(c: f64, a: f64, b: f64, points: usize, xtol: f64) -> Result<Dataset> {
    if points < 3 {
        return Err(WaveError::InvalidArgument("need at least three lambda points".into()));
    }
    let prof = spectral_profile(&WaveParams::new(c, a, b)?)?;
    let m = 5;
    let sweep = eig_sweep_with(&prof, m, Some(default_lambda_grid(&prof, points)), xtol)?;
    let report = count_negative(&prof)?;
    let mut ds = Dataset::new("spectrum", &["lambda", "mu1", "mu2", "mu3", "mu4", "mu5"])
        .param("c", c)
        .param("a", a)
        .param("b", b)
        .param("n", points)
        .param("tol", xtol);
    for (l, br) in sweep.lambda_grid.iter().zip(&sweep.branches) {
        let mut row = vec![Cell::Num(*l)];
        row.extend(br.iter().map(|&v| Cell::Num(v)));
        ds.push(row);
    }
    ds.meta.insert("grid_points".into(), json!(prof.len()));
    ds.meta.insert("lambda0".into(), json!(sweep.lambda0));
    ds.meta.insert("crossings".into(), json!(sweep.crossings));
    ds.meta.insert("crossings_extrapolated".into(), json!(sweep.crossings_extrapolated));
    ds.meta.insert("monotone".into(), json!(sweep.monotone));
    ds.meta.insert("report".into(), json!(report));
    Ok(ds)
}

/// Fixed-period curve.
pub fn cmd_curve(c: f64, period_target: f64, n: usize) -> Result<Dataset> {
    let curve = trace_curve(c, period_target, n)?;
    let mut ds = Dataset::new(
        "curve",
        &["a", "b", "M", "F", "F_over_M3", "detS", "verdict", "dB_da", "n0", "z0", "n_L", "z_L"],
    )
    .param("c", c)
    .param("L", period_target)
    .param("n", n);
    for s in &curve.samples {
        let (n0, z0) = s.projection.map_or((Cell::Text("".into()), Cell::Text("".into())), |p| (p.n0.into(), p.z0.into()));
        let (nl, zl) = s.spectral.map_or((Cell::Text("".into()), Cell::Text("".into())), |(n, z)| (n.into(), z.into()));
        ds.push(vec![
            s.a.into(),
            s.b.into(),
            s.mass.into(),
            s.f_integral.into(),
            s.ratio.into(),
            s.det_s().into(),
            s.verdict.as_str().into(),
            s.db_da.into(),
            n0,
            z0,
            nl,
            zl,
        ]);
    }
    ds.meta.insert("a_L".into(), json!(curve.a_l));
    ds.meta.insert("slope_sign_change".into(), json!(curve.slope_sign_change));
    ds.meta.insert("ratio_strictly_decreasing".into(), json!(curve.ratio_strictly_decreasing()));
    ds.meta.insert("mass_strictly_increasing".into(), json!(curve.mass_strictly_increasing()));
    Ok(ds)
}

/// Stokes comparison at `1 - a/a_L = 1e-2 .. 1e-5`.
pub fn cmd_stokes(c: f64, period_target: f64) -> Result<Dataset> {
    let r = validate(c, period_target, &DEFAULT_EPSILONS)?;
    let mut ds = Dataset::new(
        "stokes",
        &["epsilon", "a", "b", "A", "alpha", "alpha_pred", "M", "M_pred", "F_over_M3", "F_over_M3_pred", "dev_M", "dev_F_over_M3"],
    )
    .param("c", c)
    .param("L", period_target);
    for s in &r.samples {
        ds.push(vec![
            s.epsilon.into(),
            s.a.into(),
            s.b.into(),
            s.amplitude.into(),
            s.alpha.into(),
            s.predicted.alpha.into(),
            s.mass.into(),
            s.predicted.mass.into(),
            s.ratio.into(),
            s.predicted.ratio.into(),
            s.dev_mass.into(),
            s.dev_ratio.into(),
        ]);
    }
    for (k, v) in [
        ("phi2", r.phi2),
        ("eta", r.eta),
        ("a_L", r.a_l),
        ("ratio_slope", r.ratio_slope),
        ("ratio_slope_expected", r.ratio_slope_expected),
        ("alpha_slope", r.alpha_slope),
        ("alpha_slope_expected", r.alpha_slope_expected),
        ("mass_slope", r.mass_slope),
        ("mass_slope_expected", r.mass_slope_expected),
    ] {
        ds.meta.insert(k.into(), json!(v));
    }
    ds.meta.insert("mass_decay".into(), json!(r.mass_decay));
    ds.meta.insert("ratio_decay".into(), json!(r.ratio_decay));
    Ok(ds)
}

/// Certificates for the requested claims (all when empty).
pub fn cmd_certify(claims: &[String]) -> Result<Dataset> {
    use exactalg::ClaimId;
    let ids: Vec<ClaimId> = if claims.is_empty() {
        ClaimId::ALL.to_vec()
    } else {
        claims
            .iter()
            .map(|s| s.parse::<ClaimId>().map_err(|e| WaveError::InvalidArgument(e.to_string())))
            .collect::<Result<_>>()?
    };
    let certs: Vec<exactalg::Certificate> = ids
        .par_iter()
        .map(|&id| exactalg::certify(id).map_err(|e| WaveError::NonConvergence(format!("{id}: {e}"))))
        .collect::<Result<_>>()?;
    let mut ds = Dataset::new("certify", &["claim", "status", "failed_check", "description"]);
    for c in &certs {
        let status = serde_json::to_value(c.status).expect("status serializes");
        ds.push(vec![
            c.claim_id.to_string().as_str().into(),
            status.as_str().unwrap_or_default().into(),
            c.failed_check.as_deref().unwrap_or("").into(),
            c.claim_id.description().into(),
        ]);
    }
    ds.meta.insert("certificates".into(), json!(certs));
    Ok(ds)
}

/// Gnuplot commands for the dataset written to `data`.
pub fn plot_script(ds: &Dataset, data: &Path) -> Option<String> {
    let f = data.display();
    let mut s = String::new();
    let _ = writeln!(s, "set datafile separator ','\nset key autotitle columnhead\nset grid");
    match ds.command.as_str() {
        "region" => {
            let _ = writeln!(s, "set xlabel 'b'\nset ylabel 'a'");
            let _ = writeln!(
                s,
                "plot for [k in \"a_minus a_plus a_zero a0\"] '{f}' using 2:(strcol(1) eq k ? $3 : 1/0) with lines title k"
            );
        }
        "period" => {
            let _ = writeln!(s, "set xlabel 'a'\nset ylabel 'L'\nplot '{f}' using 1:2 with linespoints");
        }
        "a0" => {
            let _ = writeln!(s, "set xlabel 'b'\nset ylabel 'a0'\nplot '{f}' using 1:2 with linespoints");
        }
        "spectrum" => {
            let _ = writeln!(s, "set xlabel 'lambda'\nset ylabel 'mu'\nset xzeroaxis\nset yzeroaxis");
            let _ = writeln!(s, "plot for [k=2:6] '{f}' using 1:k with lines");
        }
        "curve" => {
            let _ = writeln!(s, "set multiplot layout 1,3\nset xlabel 'a'");
            let _ = writeln!(s, "plot '{f}' using 1:2 with linespoints");
            let _ = writeln!(s, "plot '{f}' using 1:5 with linespoints");
            let _ = writeln!(s, "plot '{f}' using 1:3 with linespoints\nunset multiplot");
        }
        "stokes" => {
            let _ = writeln!(s, "set logscale xy\nset xlabel '1 - a/a_L'\nset ylabel 'relative deviation'");
            let _ = writeln!(s, "plot '{f}' using 1:11 with linespoints, '' using 1:12 with linespoints");
        }
        _ => return None,
    }
    Some(s)
}

/// Run one parsed command.
pub fn execute(cfg: &RunConfig) -> Result<Dataset> {
    let c = cfg.c;
    let need = |v: Option<f64>, name: &str| v.ok_or_else(|| WaveError::InvalidArgument(format!("--{name} is required")));
    let period_target = cfg.period.unwrap_or(std::f64::consts::PI);
    if !(c > 0.0 && c.is_finite()) {
        return Err(WaveError::InvalidArgument(format!("--c must be positive, got {c}")));
    }
    match &cfg.command {
        Command::Region => cmd_region(c, cfg.n.unwrap_or(200)),
        Command::Period => cmd_period(c, need(cfg.b, "b")?, cfg.n.unwrap_or(64)),
        Command::A0 => cmd_a0(c, cfg.n.unwrap_or(40)),
        Command::Spectrum => cmd_spectrum(c, need(cfg.a, "a")?, need(cfg.b, "b")?, cfg.n.unwrap_or(200), cfg.tol),
        Command::Curve => cmd_curve(c, period_target, cfg.n.unwrap_or(64)),
        Command::Stokes => cmd_stokes(c, period_target),
        Command::Certify { claims } => cmd_certify(claims),
    }
}

fn error_kind(e: &WaveError) -> &'static str {
    match e {
        WaveError::OutOfRange(_) => "out-of-range",
        WaveError::Degenerate(_) => "degenerate",
        WaveError::NonConvergence(_) => "non-convergence",
        WaveError::StencilOutsideRegion => "stencil-outside-region",
        WaveError::SignPatternUnexpected(_) => "sign-pattern-unexpected",
        WaveError::LambdaTooLarge { .. } => "lambda-too-large",
        WaveError::MethodDisagreement(_) => "method-disagreement",
        WaveError::ToleranceAmbiguous { .. } => "tolerance-ambiguous",
        WaveError::NoRoot(_) => "no-root",
        WaveError::NearCriticalB { .. } => "near-critical-b",
        WaveError::OutOfEnergyRange { .. } => "out-of-energy-range",
        WaveError::InvalidArgument(_) => "invalid-argument",
    }
}

/// Machine-readable error record written to standard error on failure.
pub fn error_record(command: &str, e: &WaveError) -> String {
    json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "error": { "kind": error_kind(e), "message": e.to_string() },
    })
    .to_string()
}

/// Parse, run and write; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let name = cfg.command.name();
    if cfg.plot_script.is_some() && (cfg.out.is_none() || cfg.format != Format::Csv) {
        eprintln!("{}", error_record(name, &WaveError::InvalidArgument("--plot-script needs --out and --format csv".into())));
        return 2;
    }
    let ds = match execute(&cfg) {
        Ok(ds) => ds,
        Err(e) => {
            eprintln!("{}", error_record(name, &e));
            return if matches!(e, WaveError::InvalidArgument(_)) { 2 } else { 1 };
        }
    };
    let text = ds.render(cfg.format);
    let written = match &cfg.out {
        Some(p) => std::fs::write(p, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("{}", json!({"schema_version": SCHEMA_VERSION, "command": name, "error": {"kind": "io", "message": e.to_string()}}));
        return 1;
    }
    if let (Some(script), Some(out)) = (&cfg.plot_script, &cfg.out) {
        let Some(body) = plot_script(&ds, out) else {
            eprintln!("{}", error_record(name, &WaveError::InvalidArgument(format!("no plot for {name}"))));
            return 2;
        };
        if let Err(e) = std::fs::write(script, body) {
            eprintln!("{}", json!({"schema_version": SCHEMA_VERSION, "command": name, "error": {"kind": "io", "message": e.to_string()}}));
            return 1;
        }
    }
    0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_has_seventeen_digits() {
        assert_eq!(Cell::Num(0.1).csv(), "1.0000000000000001e-1");
        assert_eq!(Cell::Num(1.0 / 16.0).csv(), "6.2500000000000000e-2");
    }

    #[test]
    fn csv_quotes_commas() {
        assert_eq!(Cell::Text("a,b".into()).csv(), "\"a,b\"");
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run(["dpwave", "nonsense"]), 2);
        assert_eq!(run(["dpwave", "region", "--n", "10"]), 2);
        assert_eq!(run(["dpwave", "period"]), 2);
    }

    #[test]
    fn computational_failure_exits_one() {
        // outside the region
        assert_eq!(run(["dpwave", "spectrum", "--a", "0.2", "--b", "0"]), 1);
    }
}
