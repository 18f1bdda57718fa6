//! Ready-made experiments: Runge interpolants on two node families, the
//! Wilkinson polynomial and its rescalings, and the clustered-root pair
//! `C_N`, `S_N`.
//!
//! Every summary entry is recomputed from the curves and fields carried by
//! the same report.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::conditioning::{condition_curve, curve_from_root_conditions, root_conditions, ConditionCurve};
use crate::error::{Error, Result};
use crate::nodes::NodeSet;
use crate::polynomial::{runge_function, Polynomial};
use crate::pseudozeros::{pseudozero_field, FieldSpec, PseudozeroField, Region};
use crate::scalar::{default_precision, Precision, Scalar};

/// Fibonacci degrees 5 through 89.
pub const FIBONACCI_DEGREES: [usize; 7] = [5, 8, 13, 21, 34, 55, 89];

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Stat {
    Int(i64),
    Real(f64),
    Text(String),
}

impl Stat {
    /// Integral values become `Int` so they print without a fraction.
    pub fn number(x: f64) -> Stat {
        if x.is_finite() && x.fract() == 0.0 && x.abs() < 9.0e15 {
            Stat::Int(x as i64)
        } else {
            Stat::Real(x)
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Stat::Int(i) => Some(*i as f64),
            Stat::Real(x) => Some(*x),
            Stat::Text(_) => None,
        }
    }
}

impl fmt::Display for Stat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stat::Int(i) => write!(f, "{i}"),
            Stat::Real(x) => write!(f, "{x}"),
            Stat::Text(s) => f.write_str(s),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScenarioReport {
    pub name: String,
    pub curves: Vec<ConditionCurve>,
    pub fields: Vec<PseudozeroField>,
    pub summary: BTreeMap<String, Stat>,
}

impl ScenarioReport {
    pub fn new(name: impl Into<String>) -> Self {
        ScenarioReport {
            name: name.into(),
            curves: Vec::new(),
            fields: Vec::new(),
            summary: BTreeMap::new(),
        }
    }

    pub fn curve(&self, label: &str) -> Option<&ConditionCurve> {
        self.curves.iter().find(|c| c.label == label)
    }

    pub fn field(&self, label: &str) -> Option<&PseudozeroField> {
        self.fields.iter().find(|f| f.label == label)
    }

    pub fn stat(&self, key: &str) -> Option<f64> {
        self.summary.get(key).and_then(Stat::as_f64)
    }

    fn put(&mut self, key: impl Into<String>, value: Stat) {
        self.summary.insert(key.into(), value);
    }

    /// Adds a curve with `max_log10_<key>` and `argmax_<key>` entries.
    fn push_curve(&mut self, curve: ConditionCurve, key: &str) {
        if let Some((i, v)) = curve.argmax() {
            self.put(format!("max_log10_{key}"), Stat::Real(v));
            self.put(format!("argmax_{key}"), Stat::number(curve.abscissae[i].to_f64()));
        }
        self.curves.push(curve);
    }
}

#[derive(Clone, Debug)]
pub struct ScenarioOptions {
    pub samples: usize,
    /// Digits for float work; `None` uses the global default.
    pub precision: Option<Precision>,
    pub grid: (usize, usize),
    pub levels: Option<Vec<f64>>,
    pub region: Option<Region>,
    /// Skip pseudozero grids in scenarios that would otherwise compute them.
    pub fields: bool,
}

impl Default for ScenarioOptions {
    fn default() -> Self {
        ScenarioOptions {
            samples: 2001,
            precision: None,
            grid: (512, 512),
            levels: None,
            region: None,
            fields: true,
        }
    }
}

impl ScenarioOptions {
    fn precision(&self) -> Precision {
        self.precision.unwrap_or_else(default_precision)
    }
}

/// `W_N = prod_{k=1}^N (x - k)`, expanded exactly.
pub fn wilkinson(n: usize) -> Result<Polynomial> {
    let roots: Vec<Scalar> = (1..=n as i64).map(Scalar::from_int).collect();
    Polynomial::from_roots_monomial(&roots)
}

/// `C_N = prod_{k=1}^N (x - 2^-k)`.
pub fn clustered_at_zero(n: usize) -> Result<Polynomial> {
    let roots: Vec<Scalar> = (1..=n as i64).map(|k| Scalar::pow2(-k)).collect();
    Polynomial::from_roots_monomial(&roots)
}

/// `S_N = prod_{k=1}^N (x - (1 - 2^-k))`.
pub fn clustered_at_one(n: usize) -> Result<Polynomial> {
    let roots: Vec<Scalar> = (1..=n as i64)
        .map(|k| &Scalar::one() - &Scalar::pow2(-k))
        .collect();
    Polynomial::from_roots_monomial(&roots)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScaleTarget {
    /// Roots `-1 + 2k/(N+1)` in `(-1, 1)`.
    Symmetric,
    /// Roots `2 - 2k/(N+1)` in `(0, 2)`.
    ZeroTwo,
    /// Roots `k/(N+1)` in `(0, 1)`.
    ZeroOne,
}

impl ScaleTarget {
    pub fn name(self) -> &'static str {
        match self {
            ScaleTarget::Symmetric => "symmetric",
            ScaleTarget::ZeroTwo => "zero-two",
            ScaleTarget::ZeroOne => "zero-one",
        }
    }

    pub fn interval(self) -> (Scalar, Scalar) {
        match self {
            ScaleTarget::Symmetric => (Scalar::from_int(-1), Scalar::one()),
            ScaleTarget::ZeroTwo => (Scalar::zero(), Scalar::from_int(2)),
            ScaleTarget::ZeroOne => (Scalar::zero(), Scalar::one()),
        }
    }

    pub fn roots(self, n: usize) -> Vec<Scalar> {
        let d = n as i64 + 1;
        (1..=n as i64)
            .map(|k| match self {
                ScaleTarget::Symmetric => Scalar::ratio(2 * k - d, d),
                ScaleTarget::ZeroTwo => Scalar::ratio(2 * (d - k), d),
                ScaleTarget::ZeroOne => Scalar::ratio(k, d),
            })
            .collect()
    }
}

impl FromStr for ScaleTarget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "symmetric" => Ok(ScaleTarget::Symmetric),
            "zero-two" => Ok(ScaleTarget::ZeroTwo),
            "zero-one" => Ok(ScaleTarget::ZeroOne),
            _ => Err(Error::Argument(format!(
                "unknown target {s:?}; expected symmetric, zero-two or zero-one"
            ))),
        }
    }
}

/// Half-width of the widest sample window centred at the sample nearest 0
/// on which `B < 2`.
fn small_halfwidth(curve: &ConditionCurve) -> f64 {
    let xs: Vec<f64> = curve.abscissae.iter().map(Scalar::to_f64).collect();
    let Some(c) = (0..xs.len()).min_by(|&a, &b| xs[a].abs().total_cmp(&xs[b].abs())) else {
        return 0.0;
    };
    let small = |i: usize| curve.values_log10[i] < 2f64.log10();
    if !small(c) {
        return 0.0;
    }
    let mut r = 0;
    while c > r && c + r + 1 < xs.len() && small(c - r - 1) && small(c + r + 1) {
        r += 1;
    }
    0.5 * (xs[c + r] - xs[c - r])
}

fn runge(degrees: &[usize], opts: &ScenarioOptions, chebyshev: bool) -> Result<ScenarioReport> {
    let (name, family) = if chebyshev {
        ("runge-cheb", "chebyshev")
    } else {
        ("runge-equi", "equispaced")
    };
    if degrees.is_empty() || degrees.contains(&0) {
        return Err(Error::Argument("degrees must be at least 1".into()));
    }
    let (a, b) = (Scalar::from_int(-1), Scalar::one());
    let mut report = ScenarioReport::new(name);
    let mut overall = f64::NEG_INFINITY;
    for &n in degrees {
        let nodes = if chebyshev {
            NodeSet::chebyshev(n, opts.precision())?
        } else {
            NodeSet::equispaced(n, &a, &b)?
        };
        let p = Polynomial::interpolate_fn(nodes, runge_function)?;
        let curve = condition_curve(&p, &a, &b, opts.samples, format!("{family} n={n}"))?;
        report.put(format!("small_halfwidth_n{n}"), Stat::Real(small_halfwidth(&curve)));
        let key = format!("B_n{n}");
        overall = overall.max(curve.max_log10().unwrap_or(f64::NEG_INFINITY));
        report.push_curve(curve, &key);
    }
    report.put("max_log10_B", Stat::Real(overall));
    Ok(report)
}

/// `B(x)` on `[-1, 1]` for the Runge interpolant on `n + 1` equispaced nodes,
/// in exact arithmetic.
pub fn runge_equispaced(degrees: &[usize], opts: &ScenarioOptions) -> Result<ScenarioReport> {
    runge(degrees, opts, false)
}

/// Same as [`runge_equispaced`] on Chebyshev extreme points.
pub fn runge_chebyshev(degrees: &[usize], opts: &ScenarioOptions) -> Result<ScenarioReport> {
    runge(degrees, opts, true)
}

/// Adds the `B` curve on `[a, b]` and both root-condition curves of `p`
/// under `prefix`.
fn add_polynomial(
    report: &mut ScenarioReport,
    p: &Polynomial,
    (a, b): (&Scalar, &Scalar),
    prefix: &str,
    opts: &ScenarioOptions,
) -> Result<()> {
    let key = |s: &str| {
        if prefix.is_empty() {
            s.to_string()
        } else {
            format!("{prefix}_{s}")
        }
    };
    let label = |s: &str| {
        if prefix.is_empty() {
            s.to_string()
        } else {
            format!("{prefix} {s}")
        }
    };
    report.push_curve(condition_curve(p, a, b, opts.samples, label("B"))?, &key("B"));
    let rc = root_conditions(p)?;
    let mixed = curve_from_root_conditions(&rc, false, label("A"))?;
    if let Some((i, _)) = mixed.argmax() {
        report.put(key("argmax_root"), Stat::number(mixed.abscissae[i].to_f64()));
    }
    report.push_curve(mixed, &key("A"));
    report.push_curve(curve_from_root_conditions(&rc, true, label("A_abs"))?, &key("A_abs"));
    Ok(())
}

/// `W_N` on `[0, N]`: `B` curve and `A(r)` at every root, all exact.
pub fn wilkinson_first(n: usize, opts: &ScenarioOptions) -> Result<ScenarioReport> {
    if n < 2 {
        return Err(Error::Argument("N must be at least 2".into()));
    }
    let p = wilkinson(n)?;
    let mut report = ScenarioReport::new(format!("wilkinson N={n}"));
    add_polynomial(&mut report, &p, (&Scalar::zero(), &Scalar::from_int(n as i64)), "", opts)?;
    Ok(report)
}

/// `W_N` with its roots moved affinely into the target interval, alongside the
/// unscaled `W_N` as reference.
pub fn wilkinson_scaled(n: usize, target: ScaleTarget, opts: &ScenarioOptions) -> Result<ScenarioReport> {
    if n < 2 {
        return Err(Error::Argument("N must be at least 2".into()));
    }
    let p = Polynomial::from_roots_monomial(&target.roots(n))?;
    let (a, b) = target.interval();
    let mut report = ScenarioReport::new(format!("wilkinson-scaled N={n} {}", target.name()));
    let zeros = p.coeffs().iter().filter(|c| c.is_zero()).count();
    report.put("zero_coefficients", Stat::Int(zeros as i64));
    add_polynomial(&mut report, &p, (&a, &b), "", opts)?;

    let w = wilkinson(n)?;
    add_polynomial(&mut report, &w, (&Scalar::zero(), &Scalar::from_int(n as i64)), "reference", opts)?;
    for key in ["B", "A", "A_abs"] {
        if let (Some(r), Some(s)) = (
            report.stat(&format!("max_log10_reference_{key}")),
            report.stat(&format!("max_log10_{key}")),
        ) {
            report.put(format!("gap_log10_{key}"), Stat::Real(r - s));
        }
    }
    Ok(report)
}

/// Named polynomials with pseudozero defaults.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedPolynomial {
    Wilkinson(usize),
    ClusteredAtZero(usize),
    ClusteredAtOne(usize),
}

impl NamedPolynomial {
    pub fn polynomial(self) -> Result<Polynomial> {
        match self {
            NamedPolynomial::Wilkinson(n) => wilkinson(n),
            NamedPolynomial::ClusteredAtZero(n) => clustered_at_zero(n),
            NamedPolynomial::ClusteredAtOne(n) => clustered_at_one(n),
        }
    }

    pub fn label(self) -> String {
        match self {
            NamedPolynomial::Wilkinson(n) => format!("W{n}"),
            NamedPolynomial::ClusteredAtZero(n) => format!("C{n}"),
            NamedPolynomial::ClusteredAtOne(n) => format!("S{n}"),
        }
    }

    pub fn default_region(self) -> Region {
        let r = match self {
            NamedPolynomial::Wilkinson(n) => (-1.0, n as f64 + 5.0, -8.0, 8.0),
            NamedPolynomial::ClusteredAtZero(_) => (-0.5, 1.1, -0.8, 0.8),
            NamedPolynomial::ClusteredAtOne(_) => (-2.0, 5.0, -3.5, 3.5),
        };
        Region::new(r.0, r.1, r.2, r.3).expect("valid default region")
    }

    pub fn default_levels(self) -> Vec<f64> {
        match self {
            NamedPolynomial::Wilkinson(_) => vec![1e-14, 1e-18],
            NamedPolynomial::ClusteredAtZero(_) => vec![1e-1, 1e-2, 1e-3, 1e-4, 1e-6, 1e-8],
            NamedPolynomial::ClusteredAtOne(_) => vec![1e-4, 1e-6, 1e-8, 1e-10, 1e-15],
        }
    }

    pub fn field(self, opts: &ScenarioOptions) -> Result<PseudozeroField> {
        let p = self.polynomial()?;
        let mut spec = FieldSpec::new(
            opts.region.unwrap_or_else(|| self.default_region()),
            opts.grid.0,
            opts.grid.1,
            opts.levels.clone().unwrap_or_else(|| self.default_levels()),
        );
        spec.precision = opts.precision;
        pseudozero_field(&p, &spec, self.label())
    }
}

impl FromStr for NamedPolynomial {
    type Err = Error;

    /// `wilkinson<N>`, `c<N>` or `s<N>`, e.g. `wilkinson20`.
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        let split = lower
            .find(|c: char| c.is_ascii_digit())
            .ok_or_else(|| Error::Argument(format!("polynomial {s:?} lacks a degree")))?;
        let (head, digits) = lower.split_at(split);
        let n: usize = digits
            .parse()
            .map_err(|_| Error::Argument(format!("bad degree in {s:?}")))?;
        if n == 0 {
            return Err(Error::Argument("degree must be positive".into()));
        }
        match head {
            "wilkinson" | "w" => Ok(NamedPolynomial::Wilkinson(n)),
            "c" => Ok(NamedPolynomial::ClusteredAtZero(n)),
            "s" => Ok(NamedPolynomial::ClusteredAtOne(n)),
            _ => Err(Error::Argument(format!(
                "unknown polynomial {s:?}; expected wilkinson<N>, c<N> or s<N>"
            ))),
        }
    }
}

/// Pseudozero field of one named polynomial.
pub fn pseudozeros(poly: NamedPolynomial, opts: &ScenarioOptions) -> Result<ScenarioReport> {
    let field = poly.field(opts)?;
    let mut report = ScenarioReport::new(format!("pseudozeros {}", poly.label()));
    add_field_stats(&mut report, &field);
    report.fields.push(field);
    Ok(report)
}

fn add_field_stats(report: &mut ScenarioReport, field: &PseudozeroField) {
    let l = &field.label;
    for level in &field.levels {
        let inside = field.mask(*level).iter().filter(|b| **b).count();
        report.put(format!("{l}_inside_{level:e}"), Stat::Int(inside as i64));
    }
    let interior = field.interior_mask.iter().filter(|b| **b).count();
    report.put(format!("{l}_interior_points"), Stat::Int(interior as i64));
}

/// `C_N` and `S_N` with `N = 20`: monomial and Lagrange (nodes `k/20`)
/// conditioning on `[0, 1]`, plus pseudozero fields.
pub fn wilkinson_second(opts: &ScenarioOptions) -> Result<ScenarioReport> {
    wilkinson_second_n(20, opts)
}

pub fn wilkinson_second_n(n: usize, opts: &ScenarioOptions) -> Result<ScenarioReport> {
    if n < 2 {
        return Err(Error::Argument("N must be at least 2".into()));
    }
    let (zero, one) = (Scalar::zero(), Scalar::one());
    let mut report = ScenarioReport::new(format!("second N={n}"));
    let nodes = NodeSet::equispaced(n, &zero, &one)?;
    for named in [NamedPolynomial::ClusteredAtZero(n), NamedPolynomial::ClusteredAtOne(n)] {
        let p = named.polynomial()?;
        let tag = named.label();
        if let [.., c, _] = p.coeffs() {
            report.put(format!("{tag}_coeff_{}", n - 1), Stat::Text(c.to_string()));
        }
        add_polynomial(&mut report, &p, (&zero, &one), &tag, opts)?;
        let roots = p.roots().expect("built from roots").to_vec();
        let lagrange = Polynomial::interpolate_fn(nodes.clone(), |x| p.eval(x))?.with_roots(roots)?;
        add_polynomial(&mut report, &lagrange, (&zero, &one), &format!("{tag}_lagrange"), opts)?;
        if opts.fields {
            let field = named.field(&ScenarioOptions {
                levels: None,
                region: None,
                ..opts.clone()
            })?;
            add_field_stats(&mut report, &field);
            report.fields.push(field);
        }
    }
    Ok(report)
}
