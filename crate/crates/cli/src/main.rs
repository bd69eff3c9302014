use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use heightlab::arith::format_rational;
use heightlab::binform::{
    absolute_invariants, act, igusa, minimal_height_form, moduli_height_g2, transvectant, MinimizeBudget,
};
use heightlab::fuzz::{run_fuzz, FuzzConfig};
use heightlab::g2curve::{
    census_height1, minimize_curve, AutomorphismConfig, CensusConfig, G2Curve, MinimizeConfig,
};
use heightlab::json::{census_csv, census_jsonl, rationals_from_json, record_to_json};
use heightlab::parse::{parse_poly, parse_rational_list};
use heightlab::polyheight::{affine_height, mahler_measure, projective_height};
use heightlab::projheight::normalize;
use heightlab::{Form, Gl2Q, Rat};
use serde::Deserialize;

#[derive(Parser, Debug)]
#[command(name = "heightlab", version, about = "Heights of points, polynomials, binary forms and genus-2 curves over Q")]
struct Cli {
    /// JSON file with default settings; HEIGHTLAB_* variables override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Heights of points and polynomials.
    #[command(subcommand)]
    Height(HeightCmd),
    /// Binary forms: action, transvectants, invariants, minimization.
    #[command(subcommand)]
    Forms(FormsCmd),
    /// Genus-2 curves with coefficients in {-1, 0, 1}.
    Census(CensusArgs),
    /// Randomized checks of every inequality and identity.
    Fuzz(FuzzArgs),
}

#[derive(Subcommand, Debug)]
enum HeightCmd {
    /// Height of a projective point, e.g. `2,4,6` or `[1, "1/2"]`.
    Point {
        #[arg(allow_hyphen_values = true)]
        coords: String,
    },
    /// Affine or projective height of a polynomial.
    Poly {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        #[arg(long, conflicts_with = "projective")]
        affine: bool,
        #[arg(long)]
        projective: bool,
    },
    /// Mahler measure of a univariate polynomial.
    Mahler {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
}

#[derive(Subcommand, Debug)]
enum FormsCmd {
    /// `f(aX + bZ, cX + dZ)`.
    Act {
        #[arg(allow_hyphen_values = true)]
        form: String,
        /// Entries `a,b,c,d`.
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
    },
    /// The r-th transvectant `(f, g)_r`.
    Transvectant {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(long)]
        r: usize,
    },
    /// Igusa invariants J2, J4, J6, J10 of a sextic.
    Igusa {
        #[arg(allow_hyphen_values = true)]
        form: String,
        /// Print i1, i2, i3 instead.
        #[arg(long)]
        absolute: bool,
    },
    /// Height of the moduli point of a sextic.
    ModuliHeight {
        #[arg(allow_hyphen_values = true)]
        form: String,
    },
    /// Lowest-height model of the curve `y^2 = f` over Q.
    Minimize {
        #[arg(allow_hyphen_values = true)]
        form: String,
        /// Ignore twists: search the whole isomorphism class over the
        /// algebraic closure among integral models.
        #[arg(long)]
        closure: bool,
    },
}

#[derive(Args, Debug)]
struct CensusArgs {
    /// Coefficient height; only 1 is supported.
    #[arg(long, default_value_t = 1)]
    height: u64,
    /// Print class counts by automorphism group order.
    #[arg(long)]
    stats: bool,
    /// Print the largest moduli height and the class attaining it.
    #[arg(long)]
    max_moduli_height: bool,
    /// Write census.jsonl and census.csv into this directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Format for standard output when no other output is requested.
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args, Debug)]
struct FuzzArgs {
    #[arg(long)]
    iterations: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also fail on counterexamples to constants known to be too small.
    #[arg(long)]
    strict: bool,
    /// Comma-separated property names.
    #[arg(long, value_delimiter = ',')]
    only: Vec<String>,
}

#[derive(Clone, Copy, Debug, Default, Deserialize, PartialEq, ValueEnum)]
#[serde(rename_all = "lowercase")]
enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    search_bound: Option<i64>,
    tolerance: Option<f64>,
    precision_bits: Option<u32>,
    enumeration_budget: Option<u128>,
    threads: Option<usize>,
    format: Option<Format>,
    fuzz_iterations: Option<u64>,
}

#[derive(Debug, Clone)]
struct Config {
    search_bound: i64,
    tolerance: f64,
    precision_bits: u32,
    enumeration_budget: u128,
    threads: Option<usize>,
    format: Format,
    fuzz_iterations: u64,
}

impl Default for Config {
    fn default() -> Self {
        let aut = AutomorphismConfig::default();
        Config {
            search_bound: heightlab::g2curve::DEFAULT_SEARCH_BOUND,
            tolerance: aut.tolerance,
            precision_bits: aut.precision_bits,
            enumeration_budget: MinimizeConfig::default().max_candidates,
            threads: None,
            format: Format::Json,
            fuzz_iterations: FuzzConfig::default().iterations,
        }
    }
}

fn env_var<T: std::str::FromStr>(name: &str) -> Result<Option<T>>
where
    T::Err: std::fmt::Display,
{
    match std::env::var(format!("HEIGHTLAB_{name}")) {
        Ok(s) => s.trim().parse().map(Some).map_err(|e| anyhow::anyhow!("HEIGHTLAB_{name}={s:?}: {e}")),
        Err(_) => Ok(None),
    }
}

impl Config {
    fn load(path: Option<&Path>) -> Result<Self> {
        let file: FileConfig = match path {
            Some(p) => {
                let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
                serde_json::from_str(&text).with_context(|| format!("parsing {}", p.display()))?
            }
            None => FileConfig::default(),
        };
        let mut c = Config::default();
        macro_rules! layer {
            ($field:ident, $env:literal) => {
                if let Some(v) = file.$field {
                    c.$field = v.into();
                }
                if let Some(v) = env_var($env)? {
                    c.$field = v;
                }
            };
        }
        layer!(search_bound, "SEARCH_BOUND");
        layer!(tolerance, "TOLERANCE");
        layer!(precision_bits, "PRECISION_BITS");
        layer!(enumeration_budget, "ENUMERATION_BUDGET");
        layer!(fuzz_iterations, "FUZZ_ITERATIONS");
        c.threads = file.threads;
        if let Some(t) = env_var("THREADS")? {
            c.threads = Some(t);
        }
        c.format = file.format.unwrap_or_default();
        if let Ok(f) = std::env::var("HEIGHTLAB_FORMAT") {
            c.format = Format::from_str(&f, true).map_err(|e| anyhow::anyhow!("HEIGHTLAB_FORMAT: {e}"))?;
        }
        if c.search_bound <= 0 || c.precision_bits == 0 || c.enumeration_budget == 0 || c.threads == Some(0) {
            bail!("configuration bounds must be positive");
        }
        if c.tolerance.is_nan() || c.tolerance <= 0.0 {
            bail!("tolerance must be positive");
        }
        Ok(c)
    }

    fn automorphism(&self) -> AutomorphismConfig {
        AutomorphismConfig { precision_bits: self.precision_bits, tolerance: self.tolerance }
    }
}

/// `0,1,-1/2` or a JSON array such as `[0, 1, "-1/2"]`.
fn read_rationals(s: &str) -> Result<Vec<Rat>> {
    let t = s.trim();
    let v = if t.starts_with('[') {
        let json: serde_json::Value = serde_json::from_str(t).context("invalid JSON array")?;
        rationals_from_json(&json)?
    } else {
        parse_rational_list(t)?
    };
    if v.is_empty() {
        bail!("empty coefficient list");
    }
    Ok(v)
}

/// Coefficient list `a0,...,ad` (coefficient of `X^i Z^(d-i)` first) or an
/// inline polynomial in `X` and `Z`.
fn read_form(s: &str) -> Result<Form> {
    if s.chars().any(|c| c.is_ascii_alphabetic()) {
        Ok(Form::parse(s, None)?)
    } else {
        Ok(Form::new(read_rationals(s)?)?)
    }
}

fn coeff_list(v: &[Rat]) -> String {
    format!("[{}]", v.iter().map(format_rational).collect::<Vec<_>>().join(","))
}

/// Shortest round-trip decimal, always with a fractional part.
fn format_float(x: f64) -> String {
    let s = format!("{x}");
    if s.contains(['.', 'e', 'N', 'i']) {
        s
    } else {
        format!("{s}.0")
    }
}

fn cmd_height(cmd: HeightCmd) -> Result<String> {
    Ok(match cmd {
        HeightCmd::Point { coords } => normalize(&read_rationals(&coords)?)?.height().to_string(),
        HeightCmd::Poly { poly, affine, .. } => {
            let f = parse_poly(&poly)?;
            let h = if affine { affine_height(&f)? } else { projective_height(&f)? };
            format_rational(&h)
        }
        HeightCmd::Mahler { poly } => {
            format_float(mahler_measure(&parse_poly(&poly)?, heightlab::roots::DEFAULT_TOLERANCE)?)
        }
    })
}

fn cmd_forms(cmd: FormsCmd, cfg: &Config) -> Result<String> {
    Ok(match cmd {
        FormsCmd::Act { form, matrix } => {
            let e = read_rationals(&matrix)?;
            let [a, b, c, d]: [Rat; 4] = e.try_into().map_err(|_| anyhow::anyhow!("--matrix needs 4 entries"))?;
            let g = act(&read_form(&form)?, &Gl2Q::new(a, b, c, d)?);
            coeff_list(g.coeffs())
        }
        FormsCmd::Transvectant { f, g, r } => transvectant(&read_form(&f)?, &read_form(&g)?, r)?.to_string(),
        FormsCmd::Igusa { form, absolute } => {
            let j = igusa(&read_form(&form)?)?;
            if absolute {
                match absolute_invariants(&j) {
                    Some(a) => format!(
                        "i1 = {}\ni2 = {}\ni3 = {}",
                        format_rational(&a.i1),
                        format_rational(&a.i2),
                        format_rational(&a.i3)
                    ),
                    None => bail!("J2 = 0: absolute invariants are undefined (class key {})", heightlab::binform::canonical_key(&j)),
                }
            } else {
                let [j2, j4, j6, j10] = j.as_array();
                format!(
                    "J2 = {}\nJ4 = {}\nJ6 = {}\nJ10 = {}",
                    format_rational(&j2),
                    format_rational(&j4),
                    format_rational(&j6),
                    format_rational(&j10)
                )
            }
        }
        FormsCmd::ModuliHeight { form } => moduli_height_g2(&read_form(&form)?)?.to_string(),
        FormsCmd::Minimize { form, closure } => {
            let f = read_form(&form)?;
            if closure {
                let budget = MinimizeBudget { max_candidates: cfg.enumeration_budget, ..Default::default() };
                let m = minimal_height_form(&f, &budget)?;
                format!("{}\nheight {}", coeff_list(m.form.coeffs()), m.height)
            } else {
                let mc = MinimizeConfig {
                    search_bound: cfg.search_bound,
                    max_candidates: cfg.enumeration_budget,
                    automorphism: cfg.automorphism(),
                    ..Default::default()
                };
                record_to_json(&minimize_curve(&G2Curve::from_form(f)?, &mc)?)
            }
        }
    })
}

fn cmd_census(args: CensusArgs, cfg: &Config) -> Result<String> {
    if args.height != 1 {
        bail!("only --height 1 is supported");
    }
    let census = census_height1(&CensusConfig { search_bound: cfg.search_bound, automorphism: cfg.automorphism() })?;
    let mut out = Vec::new();
    if let Some(dir) = &args.out {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for (name, body) in [("census.jsonl", census_jsonl(&census)), ("census.csv", census_csv(&census))] {
            let p = dir.join(name);
            std::fs::write(&p, body).with_context(|| format!("writing {}", p.display()))?;
        }
    }
    if args.stats {
        let s = census.stats();
        out.push(s.to_string());
        out.push(format!("classes over Q: {}; genus-2 tuples: {}", s.q_classes, census.genus2_tuples));
    }
    if args.max_moduli_height {
        let best = census.max_moduli_height().expect("census is nonempty");
        let id = census.classes.iter().position(|c| std::ptr::eq(c, best)).expect("member") + 1;
        out.push(format!("{} (class #{id}, {})", best.moduli_height, coeff_list(&best.representative)));
    }
    if out.is_empty() && args.out.is_none() {
        let body = match args.format.unwrap_or(cfg.format) {
            Format::Json => census_jsonl(&census),
            Format::Csv => census_csv(&census),
        };
        return Ok(body.trim_end().to_string());
    }
    Ok(out.join("\n"))
}

fn cmd_fuzz(args: FuzzArgs, cfg: &Config) -> Result<(String, bool)> {
    let fc = FuzzConfig {
        iterations: args.iterations.unwrap_or(cfg.fuzz_iterations),
        seed: args.seed,
        strict: args.strict,
        only: args.only,
    };
    if let Some(bad) = fc.only.iter().find(|o| !heightlab::fuzz::PROPERTIES.iter().any(|(n, _)| n == o)) {
        bail!("unknown property {bad:?}");
    }
    let report = run_fuzz(&fc);
    Ok((report.to_string(), report.passed()))
}

fn run(cli: Cli) -> Result<bool> {
    let cfg = Config::load(cli.config.as_deref())?;
    if let Some(n) = cfg.threads {
        // ignore the error if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let (text, ok) = match cli.command {
        Command::Height(c) => (cmd_height(c)?, true),
        Command::Forms(c) => (cmd_forms(c, &cfg)?, true),
        Command::Census(a) => (cmd_census(a, &cfg)?, true),
        Command::Fuzz(a) => cmd_fuzz(a, &cfg)?,
    };
    if !text.is_empty() {
        let mut out = std::io::stdout().lock();
        match writeln!(out, "{text}") {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => return Err(e.into()),
            _ => {}
        }
    }
    Ok(ok)
}

fn main() -> std::process::ExitCode {
    match run(Cli::parse()) {
        Ok(true) => std::process::ExitCode::SUCCESS,
        Ok(false) => std::process::ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::ExitCode::FAILURE
        }
    }
}
