use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use polycond::conditioning::{condition_curve, curve_from_root_conditions, root_conditions, weighted_condition};
use polycond::io::{render, Format, RenderSpec};
use polycond::pseudozeros::{indicator, perturbed_value, witness_perturbation, Region, WeightVector};
use polycond::scalar::set_default_precision;
use polycond::scenarios::{self, NamedPolynomial, ScaleTarget, ScenarioOptions, ScenarioReport, Stat, FIBONACCI_DEGREES};
use polycond::{ComplexScalar, Error, Number, Polynomial, Precision, Scalar};

#[derive(Parser, Debug)]
#[command(name = "polycond", version, about = "Condition numbers and pseudozeros of polynomials")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Working precision in decimal digits for float computations
    #[arg(long, global = true)]
    precision: Option<u32>,
    /// Samples per condition curve
    #[arg(long, global = true, default_value_t = 2001)]
    samples: usize,
    /// Pseudozero grid as <nx>x<ny>
    #[arg(long, global = true, value_parser = parse_grid, default_value = "512x512")]
    grid: (usize, usize),
    /// Pseudozero levels, comma separated and descending
    #[arg(long, global = true, value_delimiter = ',')]
    levels: Option<Vec<f64>>,
    /// Complex rectangle <re0,re1,im0,im1>
    #[arg(long, global = true, value_parser = parse_region, allow_hyphen_values = true)]
    region: Option<Region>,
    /// Output path; standard output when absent
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_parser = Format::from_str, default_value = "csv")]
    format: Format,
    /// Degrees for the Runge experiments, comma separated
    #[arg(long, global = true, value_delimiter = ',')]
    degrees: Option<Vec<usize>>,
    /// Seed for randomized checks
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Runge interpolant on equispaced nodes
    RungeEqui,
    /// Runge interpolant on Chebyshev extreme points
    RungeCheb,
    /// Wilkinson polynomial W_N on [0, N]
    Wilkinson {
        #[arg(long, default_value_t = 20)]
        n: usize,
    },
    /// W_N with roots moved into (-1, 1), (0, 2) or (0, 1)
    WilkinsonScaled {
        #[arg(long, default_value_t = 20)]
        n: usize,
        #[arg(long, value_parser = ScaleTarget::from_str, default_value = "symmetric")]
        target: ScaleTarget,
    },
    /// Roots clustered at 0 and at 1
    Second {
        #[arg(long, default_value_t = 20)]
        n: usize,
        /// Skip the pseudozero fields
        #[arg(long)]
        no_fields: bool,
    },
    /// Pseudozero field of a named polynomial
    Pseudozeros {
        /// wilkinson<N>, c<N> or s<N>
        #[arg(long, value_parser = NamedPolynomial::from_str, default_value = "wilkinson20")]
        poly: NamedPolynomial,
    },
    /// B(x) on an interval and root conditions of a monic polynomial
    Condition {
        #[command(flatten)]
        source: Source,
        /// Interval <a,b>; defaults to the span of the roots
        #[arg(long, value_parser = parse_scalar, value_delimiter = ',', allow_hyphen_values = true)]
        interval: Option<Vec<Scalar>>,
    },
    /// Minimal perturbation making z a root
    Witness {
        #[command(flatten)]
        source: Source,
        /// Point such as 3-1.5i; random points in the region when absent
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        z: Option<ComplexScalar>,
        /// Number of random points
        #[arg(long, default_value_t = 200)]
        count: usize,
    },
}

#[derive(Args, Debug)]
struct Source {
    /// wilkinson<N>, c<N> or s<N>
    #[arg(long, value_parser = NamedPolynomial::from_str, conflicts_with = "roots")]
    poly: Option<NamedPolynomial>,
    /// Exact roots, comma separated (7, -3/5, 2^-10, 1.25e-3)
    #[arg(long, value_parser = parse_scalar, value_delimiter = ',', allow_hyphen_values = true)]
    roots: Option<Vec<Scalar>>,
}

impl Source {
    fn polynomial(&self) -> polycond::Result<(String, Polynomial)> {
        match (&self.poly, &self.roots) {
            (Some(p), _) => Ok((p.label(), p.polynomial()?)),
            (None, Some(r)) => Ok(("p".to_string(), Polynomial::from_roots_monomial(r)?)),
            (None, None) => Err(Error::Argument("give --poly or --roots".into())),
        }
    }
}

fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(['x', 'X']).ok_or("expected <nx>x<ny>")?;
    let a = a.parse().map_err(|_| format!("bad nx {a:?}"))?;
    let b = b.parse().map_err(|_| format!("bad ny {b:?}"))?;
    Ok((a, b))
}

fn parse_region(s: &str) -> Result<Region, String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse().map_err(|_| format!("bad bound {t:?}")))
        .collect::<Result<_, _>>()?;
    let [a, b, c, d] = v[..] else {
        return Err("expected <re0,re1,im0,im1>".into());
    };
    Region::new(a, b, c, d).map_err(|e| e.to_string())
}

fn parse_scalar(s: &str) -> Result<Scalar, String> {
    Scalar::from_str(s.trim()).map_err(|e| e.to_string())
}

/// `a`, `bi`, `a+bi` or `a-bi` with exact decimal parts.
fn parse_complex(s: &str) -> Result<ComplexScalar, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let part = |p: &str| Scalar::from_str(p).map_err(|e| e.to_string());
    let Some(body) = t.strip_suffix(['i', 'j']) else {
        return Ok(ComplexScalar::real(part(&t)?));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E' | b'^'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        other => other.strip_prefix('+').unwrap_or(other),
    };
    Ok(ComplexScalar::new(part(re)?, part(im)?))
}

fn options(g: &Global) -> ScenarioOptions {
    ScenarioOptions {
        samples: g.samples,
        precision: g.precision.map(Precision::digits),
        grid: g.grid,
        levels: g.levels.clone(),
        region: g.region,
        fields: true,
    }
}

fn condition_report(label: &str, p: &Polynomial, interval: Option<Vec<Scalar>>, samples: usize) -> polycond::Result<ScenarioReport> {
    let roots = p.roots().unwrap_or_default();
    let (a, b) = match interval {
        Some(v) => match <[Scalar; 2]>::try_from(v) {
            Ok([a, b]) => (a, b),
            Err(_) => return Err(Error::Argument("--interval takes <a,b>".into())),
        },
        None => {
            let lo = roots.iter().min_by(|x, y| x.partial_cmp(y).expect("real roots")).cloned();
            let hi = roots.iter().max_by(|x, y| x.partial_cmp(y).expect("real roots")).cloned();
            match (lo, hi) {
                (Some(lo), Some(hi)) if lo < hi => (lo, hi),
                (Some(r), _) => (&r - &Scalar::one(), &r + &Scalar::one()),
                _ => (Scalar::from_int(-1), Scalar::one()),
            }
        }
    };
    let mut report = ScenarioReport::new(format!("condition {label}"));
    let curve = condition_curve(p, &a, &b, samples, format!("{label} B"))?;
    if let Some((i, v)) = curve.argmax() {
        report.summary.insert("max_log10_B".into(), Stat::Real(v));
        report.summary.insert("argmax_B".into(), Stat::number(curve.abscissae[i].to_f64()));
    }
    report.curves.push(curve);
    let rc = root_conditions(p)?;
    for (absolute, key) in [(false, "A"), (true, "A_abs")] {
        let c = curve_from_root_conditions(&rc, absolute, format!("{label} {key}"))?;
        if let Some((i, v)) = c.argmax() {
            report.summary.insert(format!("max_log10_{key}"), Stat::Real(v));
            report.summary.insert(format!("argmax_root_{key}"), Stat::number(c.abscissae[i].to_f64()));
        }
        report.curves.push(c);
    }
    Ok(report)
}

fn witness_report(
    label: &str,
    p: &Polynomial,
    z: Option<ComplexScalar>,
    count: usize,
    region: Region,
    seed: u64,
    precision: Precision,
) -> polycond::Result<ScenarioReport> {
    let w = WeightVector::moduli(p)?;
    let points = match z {
        Some(z) => vec![z],
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count)
                .map(|_| {
                    let re = rng.gen_range(region.re_min..=region.re_max);
                    let im = rng.gen_range(region.im_min..=region.im_max);
                    ComplexScalar::from_f64(re, im, precision)
                })
                .collect()
        }
    };
    let mut report = ScenarioReport::new(format!("witness {label}"));
    let mut worst_residual = f64::NEG_INFINITY;
    let mut worst_ratio_error = f64::NEG_INFINITY;
    for z in &points {
        let ind = indicator(p, z, &w, Some(precision))?;
        let d = witness_perturbation(p, z, &w, Some(precision))?;
        let b = weighted_condition(p.basis(), w.as_slice(), z, precision);
        let residual = (&perturbed_value(p, &d, z)?.modulus(precision) / &b).log10_abs_or_neg_inf();
        worst_residual = worst_residual.max(residual);
        let ratio = d
            .iter()
            .zip(w.as_slice())
            .filter(|(_, wk)| !wk.is_zero())
            .map(|(dk, wk)| &dk.modulus(precision) / wk)
            .fold(Scalar::zero(), |m, r| if r > m { r } else { m });
        if !ind.is_zero() {
            let err = (&(&ratio - &ind) / &ind).log10_abs_or_neg_inf();
            worst_ratio_error = worst_ratio_error.max(err);
        }
        if points.len() == 1 {
            report.summary.insert("indicator".into(), Stat::Real(ind.to_f64()));
            report.summary.insert("log10_indicator".into(), Stat::Real(ind.log10_abs_or_neg_inf()));
            for (k, dk) in d.iter().enumerate() {
                let (re, im) = dk.to_f64_pair();
                report
                    .summary
                    .insert(format!("delta_c{k:03}"), Stat::Text(format!("{re:e}{im:+e}i")));
            }
        }
    }
    report.summary.insert("points".into(), Stat::Int(points.len() as i64));
    report.summary.insert("max_log10_residual".into(), Stat::Real(worst_residual));
    report
        .summary
        .insert("max_log10_ratio_error".into(), Stat::Real(worst_ratio_error));
    report.summary.insert("precision".into(), Stat::Int(precision.get() as i64));
    Ok(report)
}

fn execute(cli: Cli) -> polycond::Result<ScenarioReport> {
    let g = &cli.global;
    if let Some(d) = g.precision {
        if d == 0 {
            return Err(Error::Argument("precision must be positive".into()));
        }
        set_default_precision(Precision::digits(d));
    }
    let opts = options(g);
    let degrees = g.degrees.clone().unwrap_or_else(|| FIBONACCI_DEGREES.to_vec());
    match cli.command {
        Command::RungeEqui => scenarios::runge_equispaced(&degrees, &opts),
        Command::RungeCheb => scenarios::runge_chebyshev(&degrees, &opts),
        Command::Wilkinson { n } => scenarios::wilkinson_first(n, &opts),
        Command::WilkinsonScaled { n, target } => scenarios::wilkinson_scaled(n, target, &opts),
        Command::Second { n, no_fields } => scenarios::wilkinson_second_n(
            n,
            &ScenarioOptions {
                fields: !no_fields,
                ..opts
            },
        ),
        Command::Pseudozeros { poly } => scenarios::pseudozeros(poly, &opts),
        Command::Condition { source, interval } => {
            let (label, p) = source.polynomial()?;
            condition_report(&label, &p, interval, g.samples)
        }
        Command::Witness { source, z, count } => {
            let (label, p) = source.polynomial()?;
            let region = match (g.region, source.poly) {
                (Some(r), _) => r,
                (None, Some(named)) => named.default_region(),
                (None, None) => Region::new(-2.0, 2.0, -2.0, 2.0)?,
            };
            let prec = opts.precision.unwrap_or_else(polycond::scalar::default_precision);
            witness_report(&label, &p, z, count, region, g.seed, prec)
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Precision(_) => 3,
        Error::Io(_) => 1,
        _ => 2,
    }
}

pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let format = cli.global.format;
    let out = cli.global.out.clone();
    let result = execute(cli).and_then(|report| {
        let text = render(&report, format, &RenderSpec::default())?;
        match out {
            Some(path) => std::fs::write(path, text)?,
            None => std::io::stdout().lock().write_all(text.as_bytes())?,
        }
        Ok(())
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("polycond: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
