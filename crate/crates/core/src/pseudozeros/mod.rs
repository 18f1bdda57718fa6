//! Weighted pseudozero sets.
//!
//! `z` is a root of some `sum (c_k + dc_k) phi_k` with `|dc_k| <= w_k eps`
//! exactly when `|p(z)| <= eps B_w(z)`, where `B_w(z) = sum w_k |phi_k(z)|`.
//! The ratio `|p(z)| / B_w(z)` is the indicator sampled on grids here.

mod contour;

pub use contour::{march, GridPolyline};

use rayon::prelude::*;
use serde::Serialize;

use crate::conditioning::weighted_condition;
use crate::error::{Error, Result};
use crate::polynomial::Polynomial;
use crate::scalar::{default_precision, ComplexScalar, Number, Precision, Scalar};

/// Nonnegative coefficient weights, not all zero.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightVector(Vec<Scalar>);

impl WeightVector {
    pub fn new(weights: Vec<Scalar>) -> Result<Self> {
        if weights.iter().any(|w| w.signum() < 0) {
            return Err(Error::Argument("weights must be nonnegative".into()));
        }
        if weights.iter().all(Scalar::is_zero) {
            return Err(Error::DegenerateWeights);
        }
        Ok(WeightVector(weights))
    }

    /// The usual choice `w_k = |c_k|`.
    pub fn moduli(p: &Polynomial) -> Result<Self> {
        WeightVector::new(p.coeffs().iter().map(Scalar::abs).collect())
    }

    pub fn as_slice(&self) -> &[Scalar] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn rounded(&self, precision: Precision) -> WeightVector {
        WeightVector(self.0.iter().map(|w| w.to_float(precision)).collect())
    }
}

fn check_weights(p: &Polynomial, w: &WeightVector) -> Result<()> {
    if w.len() != p.coeffs().len() {
        return Err(Error::Argument(format!(
            "{} weights for {} coefficients",
            w.len(),
            p.coeffs().len()
        )));
    }
    Ok(())
}

fn resolve_precision(p: &Polynomial, z: &ComplexScalar, precision: Option<Precision>) -> Precision {
    precision
        .or_else(|| p.precision().max(Number::precision(z)))
        .unwrap_or_else(default_precision)
}

/// `|p(z)| / B_w(z)`. Exact when `p`, `w` and a real `z` are all exact.
pub fn indicator(p: &Polynomial, z: &ComplexScalar, w: &WeightVector, precision: Option<Precision>) -> Result<Scalar> {
    check_weights(p, w)?;
    let prec = resolve_precision(p, z, precision);
    let b = weighted_condition(p.basis(), w.as_slice(), z, prec);
    if b.is_zero() {
        return Err(Error::DegenerateWeights);
    }
    let value = p.eval(z).modulus(prec);
    Ok(&value / &b)
}

/// The minimal perturbation making `z` an exact root:
/// `dc_k = -p(z) w_k conj(phi_k) / (|phi_k| B_w(z))`, zero where `phi_k(z) = 0`.
pub fn witness_perturbation(
    p: &Polynomial,
    z: &ComplexScalar,
    w: &WeightVector,
    precision: Option<Precision>,
) -> Result<Vec<ComplexScalar>> {
    check_weights(p, w)?;
    let prec = resolve_precision(p, z, precision);
    let phi = p.basis().values(z);
    let moduli: Vec<Scalar> = phi.iter().map(|f| f.modulus(prec)).collect();
    let b = w
        .as_slice()
        .iter()
        .zip(&moduli)
        .fold(Scalar::zero(), |acc, (wk, m)| &acc + &(wk * m));
    if b.is_zero() {
        return Err(Error::DegenerateWeights);
    }
    let minus_pz = p.eval(z).neg();
    let zero = ComplexScalar::real(Scalar::zero());
    Ok(phi
        .iter()
        .zip(&moduli)
        .zip(w.as_slice())
        .map(|((f, m), wk)| {
            if m.is_zero() || wk.is_zero() {
                zero.clone()
            } else {
                minus_pz.mul(&f.conj()).scale(&(wk / &(m * &b)))
            }
        })
        .collect())
}

/// `(p + dp)(z) = sum (c_k + dc_k) phi_k(z)`.
pub fn perturbed_value(p: &Polynomial, deltas: &[ComplexScalar], z: &ComplexScalar) -> Result<ComplexScalar> {
    if deltas.len() != p.coeffs().len() {
        return Err(Error::Argument("one perturbation per coefficient required".into()));
    }
    Ok(p.basis()
        .values(z)
        .iter()
        .zip(p.coeffs())
        .zip(deltas)
        .fold(ComplexScalar::real(Scalar::zero()), |acc, ((f, c), d)| {
            acc.add(&d.add(&ComplexScalar::from_scalar(c)).mul(f))
        }))
}

/// Digits needed to resolve `min_level` against coefficients as large as
/// `max |c_k|`, with 20 guard digits and a floor of 60.
pub fn pseudozero_precision(p: &Polynomial, min_level: f64) -> Precision {
    let cmax = p
        .coeffs()
        .iter()
        .filter(|c| !c.is_zero())
        .map(Scalar::log10_abs_or_neg_inf)
        .fold(0.0_f64, f64::max);
    let need = 20.0 + (-min_level.log10()).ceil().max(0.0) + cmax.ceil();
    Precision::digits((need as u32).max(60))
}

/// Axis-aligned rectangle in the complex plane.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Region {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl Region {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Result<Self> {
        let ok = [re_min, re_max, im_min, im_max].iter().all(|v| v.is_finite());
        if !ok || re_min >= re_max || im_min >= im_max {
            return Err(Error::Argument(format!(
                "invalid region [{re_min}, {re_max}] x [{im_min}, {im_max}]"
            )));
        }
        Ok(Region {
            re_min,
            re_max,
            im_min,
            im_max,
        })
    }

    pub fn contains(&self, re: f64, im: f64) -> bool {
        (self.re_min..=self.re_max).contains(&re) && (self.im_min..=self.im_max).contains(&im)
    }
}

/// Coordinate `t` (fractional grid index) on an axis of `n` points.
/// Symmetric about the centre, so a region symmetric about the real axis
/// yields exactly conjugate grid rows.
fn axis(min: f64, max: f64, n: usize, t: f64) -> f64 {
    let center = 0.5 * (min + max);
    let half = 0.5 * (max - min);
    let m = (n - 1) as f64;
    center + half * (2.0 * t - m) / m
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelContours {
    pub level: f64,
    /// Polylines as `(re, im)` vertices.
    pub polylines: Vec<Vec<(f64, f64)>>,
}

/// `log10` indicator samples on a grid, with contours per level.
#[derive(Clone, Debug, Serialize)]
pub struct PseudozeroField {
    pub label: String,
    pub region: Region,
    pub nx: usize,
    pub ny: usize,
    pub precision_digits: u32,
    /// Row-major, row `j` at the `j`-th imaginary coordinate.
    #[serde(serialize_with = "crate::io::json::log_values")]
    pub values_log10: Vec<f64>,
    /// Descending.
    pub levels: Vec<f64>,
    pub contours: Vec<LevelContours>,
    /// Grid points with indicator at or below the smallest level.
    pub interior_mask: Vec<bool>,
}

impl PseudozeroField {
    pub fn re(&self, i: usize) -> f64 {
        axis(self.region.re_min, self.region.re_max, self.nx, i as f64)
    }

    pub fn im(&self, j: usize) -> f64 {
        axis(self.region.im_min, self.region.im_max, self.ny, j as f64)
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values_log10[j * self.nx + i]
    }

    /// Grid points with indicator `<= level`.
    pub fn mask(&self, level: f64) -> Vec<bool> {
        let l = level.log10();
        self.values_log10.iter().map(|v| *v <= l).collect()
    }
}

/// Grid and level request for [`pseudozero_field`].
#[derive(Clone, Debug)]
pub struct FieldSpec {
    pub region: Region,
    pub nx: usize,
    pub ny: usize,
    pub levels: Vec<f64>,
    pub weights: Option<WeightVector>,
    pub precision: Option<Precision>,
}

impl FieldSpec {
    pub fn new(region: Region, nx: usize, ny: usize, levels: Vec<f64>) -> Self {
        FieldSpec {
            region,
            nx,
            ny,
            levels,
            weights: None,
            precision: None,
        }
    }
}

pub fn pseudozero_field(p: &Polynomial, spec: &FieldSpec, label: impl Into<String>) -> Result<PseudozeroField> {
    let FieldSpec {
        region,
        nx,
        ny,
        ref levels,
        ..
    } = *spec;
    if nx < 16 || ny < 16 {
        return Err(Error::Argument(format!("grid {nx}x{ny} is below 16x16")));
    }
    if levels.is_empty() || levels.iter().any(|l| !(l.is_finite() && *l > 0.0)) {
        return Err(Error::Argument("levels must be positive and finite".into()));
    }
    if levels.windows(2).any(|w| w[0] <= w[1]) {
        return Err(Error::Argument("levels must be strictly descending".into()));
    }
    let min_level = *levels.last().expect("nonempty");
    let prec = spec
        .precision
        .unwrap_or_else(|| pseudozero_precision(p, min_level));
    let floor = -(prec.get() as f64) + 10.0;
    if min_level.log10() < floor {
        return Err(Error::Precision(format!(
            "level {min_level:e} is below 1e{floor} at {} digits; raise --precision to at least {}",
            prec.get(),
            (10.0 - min_level.log10()).ceil()
        )));
    }
    let weights = match &spec.weights {
        Some(w) => {
            check_weights(p, w)?;
            w.clone()
        }
        None => WeightVector::moduli(p)?,
    };

    let rp = p.rounded(prec);
    let rw = weights.rounded(prec);
    let sample = |re: f64, im: f64| -> f64 {
        let z = ComplexScalar::new(
            Scalar::from_f64_exact(re).expect("finite").to_float(prec),
            Scalar::from_f64_exact(im).expect("finite").to_float(prec),
        );
        match indicator(&rp, &z, &rw, Some(prec)) {
            Ok(v) => v.log10_abs_or_neg_inf(),
            Err(_) => f64::INFINITY,
        }
    };

    let values: Vec<f64> = (0..nx * ny)
        .into_par_iter()
        .map(|k| {
            let (i, j) = (k % nx, k / nx);
            sample(
                axis(region.re_min, region.re_max, nx, i as f64),
                axis(region.im_min, region.im_max, ny, j as f64),
            )
        })
        .collect();

    let to_plane = |(x, y): (f64, f64)| {
        (
            axis(region.re_min, region.re_max, nx, x),
            axis(region.im_min, region.im_max, ny, y),
        )
    };
    let contours = levels
        .iter()
        .map(|&level| {
            let l = level.log10();
            let polylines = march(&values, nx, ny, l, |i, j| {
                sample(
                    axis(region.re_min, region.re_max, nx, i as f64 + 0.5),
                    axis(region.im_min, region.im_max, ny, j as f64 + 0.5),
                )
            })
            .into_iter()
            .map(|line| line.into_iter().map(to_plane).collect())
            .collect();
            LevelContours { level, polylines }
        })
        .collect();

    let lmin = min_level.log10();
    let interior_mask = values.iter().map(|v| *v <= lmin).collect();
    Ok(PseudozeroField {
        label: label.into(),
        region,
        nx,
        ny,
        precision_digits: prec.get(),
        values_log10: values,
        levels: levels.clone(),
        contours,
        interior_mask,
    })
}
