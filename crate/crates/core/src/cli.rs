//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage or malformed input, 2 computation
//! failure, 3 partial failure (some VPT orders failed).

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{BigRational, GaussRational, Poly};
use crate::bender_wu::{ground_state_series, EnergyCoefficients, WaveCorrectionTable};
use crate::convergence::{fit_convergence, fit_convergence_even, regressor, relative_deviation, ConvergenceFit};
use crate::effective_potential::{loop_coefficients_from, veff_series, EffectivePotentialSeries, LoopExpansion};
use crate::error::{Error, Result};
use crate::vpt::{
    naive_b0_from, veff_optimize, Criticality, NaiveConfig, NaiveRule, TrickSeries, TrickedVeff, VeffConfig, VptSolution,
    B0_REFERENCE,
};

/// Environment variable that sets the cache directory.
pub const CACHE_ENV: &str = "CUBIC_VPT_CACHE_DIR";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAILURE: i32 = 2;
pub const EXIT_PARTIAL: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    PrettyTable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Naive,
    Veff,
}

/// Candidate selection for the plain variant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RuleArg {
    SmallestExtremum,
    Flattest,
    SmallestAny,
}

impl From<RuleArg> for NaiveRule {
    fn from(r: RuleArg) -> Self {
        match r {
            RuleArg::SmallestExtremum => NaiveRule::SmallestExtremum,
            RuleArg::Flattest => NaiveRule::Flattest,
            RuleArg::SmallestAny => NaiveRule::SmallestAny,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bracket(pub f64, pub f64);

fn parse_bracket(s: &str) -> std::result::Result<Bracket, String> {
    let (a, b) = s.split_once(',').ok_or("expected LO,HI")?;
    let lo: f64 = a.trim().parse().map_err(|e| format!("{e}"))?;
    let hi: f64 = b.trim().parse().map_err(|e| format!("{e}"))?;
    if !(lo > 0.0 && lo < hi) {
        return Err("need 0 < LO < HI".into());
    }
    Ok(Bracket(lo, hi))
}

#[derive(Debug, Parser)]
#[command(name = "cubic-vpt", version, about = "Perturbation series and variational resummation for p²/2 + ω²x²/2 + igx³")]
pub struct Cli {
    /// Output format; defaults to pretty-table, json for `fit`, csv for `plotdata`.
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
    /// Directory for the JSON series cache; no caching when unset.
    #[arg(long, env = CACHE_ENV, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Digits after the decimal point in pretty tables.
    #[arg(long, default_value_t = 9, global = true)]
    pub digits: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact ground-state coefficients ε_1 … ε_K.
    Series {
        #[arg(short = 'k', long, value_parser = clap::value_parser!(u32).range(1..))]
        order: u32,
    },
    /// Effective-potential coefficients V_k(X) or loop coefficients r_l.
    Veff {
        #[arg(short = 'k', long, value_parser = clap::value_parser!(u32).range(1..), conflicts_with = "loops", required_unless_present = "loops")]
        order: Option<u32>,
        #[arg(short = 'l', long, value_parser = clap::value_parser!(u32).range(1..))]
        loops: Option<u32>,
    },
    /// Strong-coupling coefficient b0 for N = 1 … max-order.
    Vpt {
        #[arg(long, value_enum, default_value_t = VariantArg::Veff)]
        variant: VariantArg,
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u32).range(1..))]
        max_order: u32,
        /// Root tolerance (plain: relative interval width; veff: gradient norm).
        #[arg(long)]
        tol: Option<f64>,
        /// Range of the variational frequency as LO,HI (plain: search bracket; veff: seed range).
        #[arg(long, value_parser = parse_bracket)]
        bracket: Option<Bracket>,
        /// Candidate selection for the plain variant.
        #[arg(long, value_enum, default_value_t = RuleArg::SmallestExtremum)]
        rule: RuleArg,
    },
    /// Fit ln(deviation) = a N^{3/5} + c to a `vpt` CSV (`-` for stdin).
    Fit { input: PathBuf },
    /// Points (N^{3/5}, ln deviation) from a `vpt` CSV (`-` for stdin).
    Plotdata { input: PathBuf },
}

/// Parse `args` (program name first) and run; returns the exit code.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, out, err),
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            }
        }
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cache = Cache::new(cli.cache_dir.clone());
    let result = match &cli.command {
        Command::Series { order } => cmd_series(&cache, *order as usize, cli.format.unwrap_or(Format::PrettyTable), out),
        Command::Veff { order, loops } => cmd_veff(&cache, *order, *loops, cli.format.unwrap_or(Format::PrettyTable), out),
        Command::Vpt { variant, max_order, tol, bracket, rule } => {
            let opts = VptOptions { variant: *variant, max_order: *max_order as usize, tol: *tol, bracket: *bracket, rule: (*rule).into() };
            cmd_vpt(&cache, &opts, cli.format.unwrap_or(Format::PrettyTable), cli.digits, out)
        }
        Command::Fit { input } => cmd_fit(input, cli.format.unwrap_or(Format::Json), cli.digits, out),
        Command::Plotdata { input } => cmd_plotdata(input, cli.format.unwrap_or(Format::Csv), out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::InvalidArgument(_) | Error::Parse { .. } | Error::Io(_) => EXIT_USAGE,
                _ => EXIT_FAILURE,
            }
        }
    }
}

fn float(x: f64) -> String {
    format!("{x:.16e}")
}

fn cmd_series(cache: &Cache, order: usize, format: Format, out: &mut dyn Write) -> Result<i32> {
    let (_, eps) = cache.series(order)?;
    match format {
        Format::PrettyTable => {
            writeln!(out, "k  eps_k")?;
            for k in 1..=order {
                writeln!(out, "{k}  {}", eps.get(k))?;
            }
        }
        Format::Csv => {
            writeln!(out, "k,eps")?;
            for k in 1..=order {
                writeln!(out, "{k},{}", eps.get(k))?;
            }
        }
        Format::Json => {
            let rows: Vec<Value> = (1..=order).map(|k| json!({"k": k, "eps": eps.get(k).to_string()})).collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&json!({"order": order, "eps": rows}))?)?;
        }
    }
    Ok(EXIT_OK)
}

fn loops_from_cache(cache: &Cache, loops: usize) -> Result<LoopExpansion> {
    let need = (2 * (loops - 1)).max(1);
    loop_coefficients_from(&cache.veff(need)?, loops)
}

fn cmd_veff(cache: &Cache, order: Option<u32>, loops: Option<u32>, format: Format, out: &mut dyn Write) -> Result<i32> {
    if let Some(l) = loops {
        let l = l as usize;
        let r = loops_from_cache(cache, l)?;
        match format {
            Format::PrettyTable => {
                writeln!(out, "l  r_l  term")?;
                for i in 1..=l {
                    writeln!(out, "{i}  {}  {}", GaussRational::real(r.get(i)), r.template(i))?;
                }
            }
            Format::Csv => {
                writeln!(out, "l,r,term")?;
                for i in 1..=l {
                    writeln!(out, "{i},{},{}", GaussRational::real(r.get(i)), r.template(i))?;
                }
            }
            Format::Json => {
                let rows: Vec<Value> = (1..=l)
                    .map(|i| json!({"l": i, "r": GaussRational::real(r.get(i)).to_string(), "term": r.template(i)}))
                    .collect();
                writeln!(out, "{}", serde_json::to_string_pretty(&json!({"loops": l, "r": rows}))?)?;
            }
        }
        return Ok(EXIT_OK);
    }
    let order = order.ok_or_else(|| Error::InvalidArgument("give --order or --loops".into()))? as usize;
    let series = cache.veff(order)?;
    match format {
        Format::PrettyTable => {
            writeln!(out, "k  V_k(X)")?;
            for k in 1..=order {
                writeln!(out, "{k}  {}", series.get(k))?;
            }
        }
        Format::Csv => {
            writeln!(out, "k,j,coefficient")?;
            for k in 1..=order {
                for (j, c) in series.get(k).coeffs().iter().enumerate() {
                    writeln!(out, "{k},{j},{c}")?;
                }
            }
        }
        Format::Json => {
            let rows: Vec<Value> = (1..=order)
                .map(|k| {
                    let c: Vec<String> = series.get(k).coeffs().iter().map(|c| c.to_string()).collect();
                    json!({"k": k, "coefficients": c})
                })
                .collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&json!({"order": order, "V": rows}))?)?;
        }
    }
    Ok(EXIT_OK)
}

struct VptOptions {
    variant: VariantArg,
    max_order: usize,
    tol: Option<f64>,
    bracket: Option<Bracket>,
    rule: NaiveRule,
}

fn run_vpt(cache: &Cache, opts: &VptOptions) -> Result<Vec<(usize, Result<VptSolution>)>> {
    let n = opts.max_order;
    match opts.variant {
        VariantArg::Naive => {
            let mut cfg = NaiveConfig { rule: opts.rule, ..NaiveConfig::default() };
            if let Some(t) = opts.tol {
                cfg.tol = t;
            }
            if let Some(Bracket(lo, hi)) = opts.bracket {
                cfg.bracket = (lo, hi);
            }
            let (_, eps) = cache.series(2 * n)?;
            Ok((1..=n)
                .map(|k| (k, TrickSeries::from_energy(&eps, k).and_then(|t| naive_b0_from(&t, &cfg))))
                .collect())
        }
        VariantArg::Veff => {
            let mut cfg = VeffConfig::default();
            if let Some(t) = opts.tol {
                cfg.tol = t;
            }
            if let Some(Bracket(lo, hi)) = opts.bracket {
                cfg.omega_range = (lo, hi);
            }
            let loops = loops_from_cache(cache, n)?;
            Ok((1..=n)
                .map(|k| (k, TrickedVeff::new(&loops, k, 1.0, 0.0, 1.0).and_then(|v| veff_optimize(&v, &cfg))))
                .collect())
        }
    }
}

fn cmd_vpt(cache: &Cache, opts: &VptOptions, format: Format, digits: usize, out: &mut dyn Write) -> Result<i32> {
    let rows = run_vpt(cache, opts)?;
    let failed = rows.iter().filter(|r| r.1.is_err()).count();
    match format {
        Format::PrettyTable => {
            writeln!(out, "N  b0  deviation  Omega  y  kind")?;
            for (n, r) in &rows {
                match r {
                    Ok(s) => {
                        let kind = match s.criticality {
                            Criticality::Extremum => "extremum",
                            Criticality::TurningPoint => "turning-point",
                        };
                        let y = s.y.map_or("-".to_string(), |y| format!("{y:.digits$}"));
                        writeln!(
                            out,
                            "{n}  {:.digits$}  {:.3e}  {:.digits$}  {y}  {kind}",
                            s.b0,
                            s.relative_deviation(),
                            s.omega_var
                        )?;
                    }
                    Err(e) => writeln!(out, "{n}  failed: {e}")?,
                }
            }
        }
        Format::Csv => {
            writeln!(out, "N,b0,deviation,regressor,status")?;
            for (n, r) in &rows {
                match r {
                    Ok(s) => writeln!(out, "{n},{},{},{},ok", float(s.b0), float(s.relative_deviation()), float(regressor(*n)))?,
                    Err(_) => writeln!(out, "{n},,,{},failed", float(regressor(*n)))?,
                }
            }
        }
        Format::Json => {
            let recs: Vec<Value> = rows
                .iter()
                .map(|(n, r)| match r {
                    Ok(s) => {
                        let mut v = serde_json::to_value(s).expect("plain data");
                        v["deviation"] = json!(s.relative_deviation());
                        v
                    }
                    Err(e) => json!({"N": n, "error": e.to_string()}),
                })
                .collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&recs)?)?;
        }
    }
    Ok(match failed {
        0 => EXIT_OK,
        f if f == rows.len() => EXIT_FAILURE,
        _ => EXIT_PARTIAL,
    })
}

#[derive(Debug, Deserialize)]
struct PointRow {
    #[serde(rename = "N")]
    n: usize,
    #[serde(default)]
    b0: Option<f64>,
    #[serde(default)]
    deviation: Option<f64>,
    #[serde(default)]
    status: Option<String>,
}

fn read_input(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(fs::read_to_string(path)?)
    }
}

/// `(N, deviation)` pairs from a `vpt` CSV; rows marked failed are skipped.
///
/// A row without a deviation but with `b0` gets it from the reference value.
pub fn parse_points(text: &str) -> Result<Vec<(usize, f64)>> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let mut pts = Vec::new();
    for rec in rdr.deserialize::<PointRow>() {
        let rec = rec.map_err(|e| Error::Parse {
            line: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        if rec.status.as_deref() == Some("failed") {
            continue;
        }
        let d = match (rec.deviation, rec.b0) {
            (Some(d), _) => d,
            (None, Some(b)) => relative_deviation(b, B0_REFERENCE)?,
            (None, None) => {
                return Err(Error::Parse { line: 0, message: format!("row N = {} has neither deviation nor b0", rec.n) })
            }
        };
        pts.push((rec.n, d));
    }
    Ok(pts)
}

fn fit_json(f: &ConvergenceFit) -> Value {
    json!({
        "slope": f.slope,
        "slope_stderr": f.slope_stderr,
        "intercept": f.intercept,
        "intercept_stderr": f.intercept_stderr,
        "points": f.points.len(),
    })
}

fn cmd_fit(input: &Path, format: Format, digits: usize, out: &mut dyn Write) -> Result<i32> {
    let pts = parse_points(&read_input(input)?)?;
    let all = fit_convergence(&pts)?;
    let even = fit_convergence_even(&pts).ok();
    match format {
        Format::Json => {
            let v = json!({"fit": fit_json(&all), "even_only": even.as_ref().map(fit_json)});
            writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
        }
        Format::Csv => {
            writeln!(out, "set,slope,slope_stderr,intercept,intercept_stderr,points")?;
            for (name, f) in std::iter::once(("all", &all)).chain(even.iter().map(|f| ("even", f))) {
                writeln!(
                    out,
                    "{name},{},{},{},{},{}",
                    float(f.slope),
                    float(f.slope_stderr),
                    float(f.intercept),
                    float(f.intercept_stderr),
                    f.points.len()
                )?;
            }
        }
        Format::PrettyTable => {
            for (name, f) in std::iter::once(("all", &all)).chain(even.iter().map(|f| ("even", f))) {
                writeln!(
                    out,
                    "{name}  slope {:.digits$} ± {:.digits$}  intercept {:.digits$} ± {:.digits$}  ({} points)",
                    f.slope,
                    f.slope_stderr,
                    f.intercept,
                    f.intercept_stderr,
                    f.points.len()
                )?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_plotdata(input: &Path, format: Format, out: &mut dyn Write) -> Result<i32> {
    let mut pts = parse_points(&read_input(input)?)?;
    pts.sort_by_key(|p| p.0);
    if let Some(&(n, d)) = pts.iter().find(|p| !(p.1 > 0.0)) {
        return Err(Error::Domain(format!("deviation at N = {n} is {d}, log undefined")));
    }
    match format {
        Format::Json => {
            let rows: Vec<Value> = pts.iter().map(|&(n, d)| json!({"N": n, "x": regressor(n), "ln_deviation": d.ln()})).collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&rows)?)?;
        }
        _ => {
            writeln!(out, "N,x,ln_deviation")?;
            for &(n, d) in &pts {
                writeln!(out, "{n},{},{}", float(regressor(n)), float(d.ln()))?;
            }
        }
    }
    Ok(EXIT_OK)
}

// Cache. Fractions are stored as decimal-string [numerator, denominator].

#[derive(Debug, Serialize, Deserialize, PartialEq)]
struct WireGauss {
    re: [String; 2],
    im: [String; 2],
}

fn wire_q(q: &BigRational) -> [String; 2] {
    [q.numer().to_string(), q.denom().to_string()]
}

fn unwire_q(w: &[String; 2]) -> Result<BigRational> {
    let parse = |s: &str| BigInt::from_str(s).map_err(|e| Error::Parse { line: 0, message: format!("bad integer {s:?}: {e}") });
    let (n, d) = (parse(&w[0])?, parse(&w[1])?);
    if d == BigInt::from(0) {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRational::new(n, d))
}

fn wire(g: &GaussRational) -> WireGauss {
    WireGauss { re: wire_q(&g.re), im: wire_q(&g.im) }
}

fn unwire(w: &WireGauss) -> Result<GaussRational> {
    Ok(GaussRational::new(unwire_q(&w.re)?, unwire_q(&w.im)?))
}

const CACHE_VERSION: u32 = 1;
const SERIES_FILE: &str = "bender_wu.json";
const VEFF_FILE: &str = "effective_potential.json";

#[derive(Debug, Serialize, Deserialize)]
struct SeriesFile {
    version: u32,
    order: usize,
    eps: Vec<WireGauss>,
    wave: Vec<Vec<WireGauss>>,
}

#[derive(Debug, Serialize, Deserialize)]
struct VeffFile {
    version: u32,
    order: usize,
    v: Vec<Vec<WireGauss>>,
}

pub fn encode_series(table: &WaveCorrectionTable, eps: &EnergyCoefficients) -> Result<String> {
    let f = SeriesFile {
        version: CACHE_VERSION,
        order: eps.order(),
        eps: eps.as_slice().iter().map(wire).collect(),
        wave: (1..=table.order()).map(|k| table.row(k).iter().map(wire).collect()).collect(),
    };
    Ok(serde_json::to_string(&f)?)
}

pub fn decode_series(text: &str) -> Result<(WaveCorrectionTable, EnergyCoefficients)> {
    let f: SeriesFile = serde_json::from_str(text)?;
    if f.version != CACHE_VERSION || f.eps.len() != f.order || f.wave.len() != f.order {
        return Err(Error::Parse { line: 0, message: "inconsistent series cache".into() });
    }
    let eps = f.eps.iter().map(unwire).collect::<Result<Vec<_>>>()?;
    let rows = f.wave.iter().map(|r| r.iter().map(unwire).collect()).collect::<Result<Vec<_>>>()?;
    Ok((WaveCorrectionTable::from_rows(rows)?, EnergyCoefficients::from_vec(eps)))
}

pub fn encode_veff(series: &EffectivePotentialSeries) -> Result<String> {
    let f = VeffFile {
        version: CACHE_VERSION,
        order: series.order(),
        v: series.as_slice().iter().map(|p| p.coeffs().iter().map(wire).collect()).collect(),
    };
    Ok(serde_json::to_string(&f)?)
}

pub fn decode_veff(text: &str) -> Result<EffectivePotentialSeries> {
    let f: VeffFile = serde_json::from_str(text)?;
    if f.version != CACHE_VERSION || f.v.len() != f.order {
        return Err(Error::Parse { line: 0, message: "inconsistent effective-potential cache".into() });
    }
    let v = f
        .v
        .iter()
        .map(|p| Ok(Poly::from_coeffs(p.iter().map(unwire).collect::<Result<Vec<_>>>()?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(EffectivePotentialSeries::from_vec(v))
}

/// JSON cache for the exact recursions. A cached table of higher order
/// serves any lower order; an unreadable or too short file is recomputed
/// and replaced.
#[derive(Clone, Debug)]
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Cache { dir }
    }

    fn read(&self, name: &str) -> Option<String> {
        fs::read_to_string(self.dir.as_ref()?.join(name)).ok()
    }

    fn write(&self, name: &str, text: &str) -> Result<()> {
        let Some(dir) = &self.dir else { return Ok(()) };
        fs::create_dir_all(dir)?;
        let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
        fs::write(&tmp, text)?;
        fs::rename(&tmp, dir.join(name))?;
        Ok(())
    }

    pub fn series(&self, order: usize) -> Result<(WaveCorrectionTable, EnergyCoefficients)> {
        if let Some((table, eps)) = self.read(SERIES_FILE).and_then(|t| decode_series(&t).ok()) {
            if eps.order() >= order && order >= 1 {
                let rows = (1..=order).map(|k| table.row(k).to_vec()).collect();
                return Ok((WaveCorrectionTable::from_rows(rows)?, EnergyCoefficients::from_vec(eps.as_slice()[..order].to_vec())));
            }
        }
        let (table, eps) = ground_state_series(order)?;
        self.write(SERIES_FILE, &encode_series(&table, &eps)?)?;
        Ok((table, eps))
    }

    pub fn veff(&self, order: usize) -> Result<EffectivePotentialSeries> {
        if let Some(s) = self.read(VEFF_FILE).and_then(|t| decode_veff(&t).ok()) {
            if s.order() >= order && order >= 1 {
                return Ok(EffectivePotentialSeries::from_vec(s.as_slice()[..order].to_vec()));
            }
        }
        let (_, s) = veff_series(order)?;
        self.write(VEFF_FILE, &encode_veff(&s)?)?;
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use proptest::prelude::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = main_with_args(std::iter::once("cubic-vpt").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_args(&["series", "--order", "0"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["series"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["veff"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["veff", "-k", "2", "-l", "3"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["vpt", "--bracket", "3,1"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn series_rows() {
        let (code, out, _) = run_args(&["series", "-k", "10", "--format", "pretty-table"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().last().unwrap(), "10  2944491879/8192");
        assert_eq!(run_args(&["series", "--order", "1"]).1.lines().last().unwrap(), "1  0");
    }

    #[test]
    fn points_parsing() {
        let pts = parse_points("N,b0,deviation,regressor,status\n1,0.7,0.5,1,ok\n2,,,1.5,failed\n3,0.76,0.01,2,ok\n").unwrap();
        assert_eq!(pts, vec![(1, 0.5), (3, 0.01)]);
        let pts = parse_points("N,b0\n1,0.762851773\n").unwrap();
        assert_eq!(pts, vec![(1, 0.0)]);
        match parse_points("N,deviation\n1,0.5\n2,abc\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn cache_reuses_longer_tables() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(Some(dir.path().to_path_buf()));
        let (t8, e8) = cache.series(8).unwrap();
        let (t5, e5) = cache.series(5).unwrap();
        assert_eq!(e5.as_slice(), &e8.as_slice()[..5]);
        assert_eq!(t5.row(5), t8.row(5));
        let (t12, _) = cache.series(12).unwrap();
        assert_eq!(t12.order(), 12);
        assert_eq!(decode_series(&fs::read_to_string(dir.path().join(SERIES_FILE)).unwrap()).unwrap().1.order(), 12);

        fs::write(dir.path().join(VEFF_FILE), "not json").unwrap();
        assert_eq!(cache.veff(3).unwrap(), veff_series(3).unwrap().1);
    }

    #[test]
    fn series_round_trip() {
        let (t, e) = ground_state_series(20).unwrap();
        let (t2, e2) = decode_series(&encode_series(&t, &e).unwrap()).unwrap();
        assert_eq!((t, e), (t2, e2));
        let (_, v) = veff_series(8).unwrap();
        assert_eq!(decode_veff(&encode_veff(&v).unwrap()).unwrap(), v);
    }

    fn gauss() -> impl Strategy<Value = GaussRational> {
        (any::<i64>(), 1i64..i64::MAX, any::<i64>(), 1i64..i64::MAX)
            .prop_map(|(a, b, c, d)| GaussRational::new(rat(a, b), rat(c, d)))
    }

    proptest! {
        #[test]
        fn wire_round_trip(gs in prop::collection::vec(gauss(), 0..12)) {
            let v = EffectivePotentialSeries::from_vec(vec![Poly::from_coeffs(gs.clone())]);
            prop_assert_eq!(decode_veff(&encode_veff(&v).unwrap()).unwrap(), v);
            for g in &gs {
                prop_assert_eq!(&unwire(&wire(g)).unwrap(), g);
            }
        }
    }
}
