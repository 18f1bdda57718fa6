//! Condition numbers for evaluation and rootfinding.
//!
//! Under relative coefficient perturbations `c_k -> c_k (1 + delta_k)` with
//! `|delta_k| <= eps`, the evaluation error is bounded by `B(x) eps` where
//! `B(x) = sum_k |c_k| |phi_k(x)|`. A simple root `r` moves by at most
//! `B(r) eps / |p'(r)|` to first order. Zero coefficients are never
//! perturbed.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::basis::{BasisSpec, LagrangeBasis};
use crate::error::{Error, Result};
use crate::nodes::NodeSet;
use crate::polynomial::{horner, Polynomial};
use crate::scalar::{default_precision, Number, Precision, Scalar};

/// Sampled `log10` values of a condition measure.
#[derive(Clone, Debug, Serialize)]
pub struct ConditionCurve {
    pub label: String,
    #[serde(serialize_with = "crate::io::json::scalars_as_f64")]
    pub abscissae: Vec<Scalar>,
    /// `-inf` marks an exactly zero value.
    #[serde(serialize_with = "crate::io::json::log_values")]
    pub values_log10: Vec<f64>,
}

impl ConditionCurve {
    pub fn new(label: impl Into<String>, abscissae: Vec<Scalar>, values_log10: Vec<f64>) -> Result<Self> {
        if abscissae.len() != values_log10.len() {
            return Err(Error::Argument("abscissae and values differ in length".into()));
        }
        if abscissae.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Argument("abscissae must be strictly increasing".into()));
        }
        if values_log10.iter().any(|v| v.is_nan() || *v == f64::INFINITY) {
            return Err(Error::Argument("log10 values must be finite or -inf".into()));
        }
        Ok(ConditionCurve {
            label: label.into(),
            abscissae,
            values_log10,
        })
    }

    pub fn len(&self) -> usize {
        self.abscissae.len()
    }

    pub fn is_empty(&self) -> bool {
        self.abscissae.is_empty()
    }

    /// Index and value of the largest sample (first one on ties).
    pub fn argmax(&self) -> Option<(usize, f64)> {
        self.values_log10
            .iter()
            .copied()
            .enumerate()
            .fold(None, |best, (i, v)| match best {
                Some((_, b)) if b >= v => best,
                _ => Some((i, v)),
            })
    }

    pub fn max_log10(&self) -> Option<f64> {
        self.argmax().map(|(_, v)| v)
    }

    pub fn min_log10(&self) -> Option<f64> {
        self.values_log10.iter().copied().reduce(f64::min)
    }
}

/// Relative coefficient perturbation `c_k (1 + delta_k)`, `|delta_k| <= eps`.
#[derive(Clone, Debug)]
pub struct PerturbationModel {
    epsilon: Scalar,
    deltas: Option<Vec<Scalar>>,
}

impl PerturbationModel {
    pub fn new(epsilon: Scalar) -> Result<Self> {
        if epsilon.signum() < 0 {
            return Err(Error::Argument("epsilon must be nonnegative".into()));
        }
        Ok(PerturbationModel {
            epsilon,
            deltas: None,
        })
    }

    pub fn with_deltas(epsilon: Scalar, deltas: Vec<Scalar>) -> Result<Self> {
        let mut m = PerturbationModel::new(epsilon)?;
        if let Some((k, d)) = deltas.iter().enumerate().find(|(_, d)| d.abs() > m.epsilon) {
            return Err(Error::ModelViolation(format!(
                "|delta_{k}| = {} exceeds epsilon = {}",
                d.abs(),
                m.epsilon
            )));
        }
        m.deltas = Some(deltas);
        Ok(m)
    }

    /// The sign pattern that makes the triangle inequality tight at `x`.
    pub fn worst_case(p: &Polynomial, x: &Scalar, epsilon: Scalar) -> Result<Self> {
        let phi = p.basis().values(x);
        let deltas = p
            .coeffs()
            .iter()
            .zip(&phi)
            .map(|(c, f)| &epsilon * &Scalar::from_int((c * f).signum() as i64))
            .collect();
        PerturbationModel::with_deltas(epsilon, deltas)
    }

    pub fn epsilon(&self) -> &Scalar {
        &self.epsilon
    }

    /// Deltas with entries for zero coefficients pinned to zero.
    pub fn effective_deltas(&self, coeffs: &[Scalar]) -> Option<Vec<Scalar>> {
        let d = self.deltas.as_ref()?;
        Some(
            d.iter()
                .zip(coeffs)
                .map(|(d, c)| if c.is_zero() { Scalar::zero() } else { d.clone() })
                .collect(),
        )
    }
}

/// `B(x) = sum_k |c_k| |phi_k(x)|`; exact for rational inputs.
pub fn condition_b<T: Number>(p: &Polynomial, x: &T) -> Scalar {
    let w: Vec<Scalar> = p.coeffs().iter().map(Scalar::abs).collect();
    weighted_condition(p.basis(), &w, x, working_precision(p, x))
}

pub(crate) fn working_precision<T: Number>(p: &Polynomial, x: &T) -> Precision {
    p.precision().max(x.precision()).unwrap_or_else(default_precision)
}

/// `sum_k w_k |phi_k(z)|` for nonnegative weights.
pub fn weighted_condition<T: Number>(basis: &BasisSpec, weights: &[Scalar], x: &T, precision: Precision) -> Scalar {
    match basis {
        BasisSpec::Monomial { .. } => horner(weights, &x.modulus(precision)),
        BasisSpec::Lagrange(l) => {
            if let Some(q) = x.as_real_exact() {
                if let Some(kernel) = ExactLagrangeKernel::new(l, weights) {
                    return Scalar::Exact(kernel.eval(&q));
                }
            }
            if let Some(j) = l.collision(x) {
                return weights[j].clone();
            }
            let dist: Vec<Scalar> = l
                .nodes()
                .nodes()
                .iter()
                .map(|xj| x.sub(&T::from_scalar(xj)).modulus(precision))
                .collect();
            let node_poly = dist.iter().skip(1).fold(dist[0].clone(), |a, d| &a * d);
            let sum = weights
                .iter()
                .zip(l.weights())
                .zip(&dist)
                .filter(|((w, _), _)| !w.is_zero())
                .fold(Scalar::zero(), |acc, ((w, bw), d)| {
                    &acc + &(&(w * &bw.abs()) / d)
                });
            &node_poly * &sum
        }
        BasisSpec::Bernstein { .. } => basis
            .values(x)
            .iter()
            .zip(weights)
            .fold(Scalar::zero(), |acc, (phi, w)| &acc + &(w * &phi.modulus(precision))),
    }
}

/// Integer-only evaluation of `sum_k w_k |l_k(x)|` for rational nodes,
/// weights and `x`.
///
/// With nodes `u_k / v` over a common denominator, `x = p / q` and
/// `d_j = |p v - q u_j|`, the sum equals `S / (D (q v)^n)` where
/// `w_k |bw_k| = A_k / D` and `S = sum_k A_k prod_{j != k} d_j`.
pub(crate) struct ExactLagrangeKernel {
    v: BigInt,
    u: Vec<BigInt>,
    d: BigInt,
    a: Vec<BigInt>,
    weights: Vec<BigRational>,
}

impl ExactLagrangeKernel {
    pub(crate) fn new(l: &LagrangeBasis, weights: &[Scalar]) -> Option<Self> {
        let nodes: Vec<&BigRational> = l.nodes().nodes().iter().map(Scalar::as_exact).collect::<Option<_>>()?;
        let weights: Vec<BigRational> = weights.iter().map(|w| w.as_exact().cloned()).collect::<Option<_>>()?;
        let terms: Vec<BigRational> = weights
            .iter()
            .zip(l.weights())
            .map(|(w, bw)| bw.as_exact().map(|bw| w * bw.abs()))
            .collect::<Option<_>>()?;
        let v = nodes.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let u = nodes.iter().map(|x| x.numer() * (&v / x.denom())).collect();
        let d = terms.iter().fold(BigInt::one(), |acc, t| acc.lcm(t.denom()));
        let a = terms.iter().map(|t| t.numer() * (&d / t.denom())).collect();
        Some(ExactLagrangeKernel { v, u, d, a, weights })
    }

    pub(crate) fn eval(&self, x: &BigRational) -> BigRational {
        let (p, q) = (x.numer(), x.denom());
        let pv = p * &self.v;
        let dist: Vec<BigInt> = self.u.iter().map(|u| (&pv - q * u).abs()).collect();
        if let Some(j) = dist.iter().position(Zero::is_zero) {
            return self.weights[j].clone();
        }
        let n = dist.len();
        let mut prefix = Vec::with_capacity(n + 1);
        prefix.push(BigInt::one());
        for dj in &dist {
            let next = prefix.last().expect("seeded") * dj;
            prefix.push(next);
        }
        let mut suffix = BigInt::one();
        let mut sum = BigInt::zero();
        for k in (0..n).rev() {
            if !self.a[k].is_zero() {
                sum += &self.a[k] * &prefix[k] * &suffix;
            }
            suffix *= &dist[k];
        }
        let qv = q * &self.v;
        let den = &self.d * num_traits::pow(qv, n - 1);
        BigRational::new(sum, den)
    }
}

/// Exact `Delta p(x) = sum_k c_k delta_k phi_k(x)` for the model's deltas.
pub fn perturbed_eval_delta(p: &Polynomial, x: &Scalar, model: &PerturbationModel) -> Result<Scalar> {
    let deltas = model
        .effective_deltas(p.coeffs())
        .ok_or_else(|| Error::ModelViolation("model carries no deltas".into()))?;
    if deltas.len() != p.coeffs().len() {
        return Err(Error::ModelViolation(format!(
            "{} deltas for {} coefficients",
            deltas.len(),
            p.coeffs().len()
        )));
    }
    let phi = p.basis().values(x);
    Ok(p.coeffs()
        .iter()
        .zip(&deltas)
        .zip(&phi)
        .fold(Scalar::zero(), |acc, ((c, d), f)| &acc + &(&(c * d) * f)))
}

/// Input condition `|x f'(x) / f(x)|`.
pub fn evaluation_condition_c(f_value: &Scalar, f_deriv: &Scalar, x: &Scalar) -> Result<Scalar> {
    if f_value.is_zero() {
        return Err(Error::Domain("input condition is undefined at a zero of f".into()));
    }
    Ok((&(x * f_deriv) / f_value).abs())
}

/// Root sensitivity measures at a simple root.
#[derive(Clone, Debug)]
pub struct RootCondition {
    pub root: Scalar,
    /// `B(r)`
    pub b: Scalar,
    /// `p'(r)`
    pub derivative: Scalar,
    /// `B(r) / |p'(r)|`, the absolute first-order bound on `|Delta r| / eps`.
    pub absolute: Scalar,
    /// `A(r) = |r B(r) / p'(r)|`; zero at `r = 0`.
    pub mixed: Scalar,
}

/// Conditioning of the root `r` of `p`.
pub fn root_condition(p: &Polynomial, r: &Scalar) -> Result<RootCondition> {
    if let Some(roots) = p.roots() {
        if !roots.iter().any(|s| s == r) {
            return Err(Error::Argument(format!("{r} is not a stored root")));
        }
    }
    let derivative = p.derivative_eval(r)?;
    root_condition_with_derivative(p, r, derivative)
}

/// Same as [`root_condition`], with `p'(r)` supplied by the caller, for
/// bases where the derivative comes from another representation.
pub fn root_condition_with_derivative(p: &Polynomial, r: &Scalar, derivative: Scalar) -> Result<RootCondition> {
    if derivative.is_negligible() {
        return Err(Error::Singularity(format!("p'({r}) = 0, multiple root")));
    }
    let b = condition_b(p, r);
    let absolute = &b / &derivative.abs();
    let mixed = &absolute * &r.abs();
    Ok(RootCondition {
        root: r.clone(),
        b,
        derivative,
        absolute,
        mixed,
    })
}

/// Conditions of all retained roots, sorted by root.
pub fn root_conditions(p: &Polynomial) -> Result<Vec<RootCondition>> {
    let mut roots = p
        .roots()
        .ok_or_else(|| Error::Argument("polynomial carries no root list".into()))?
        .to_vec();
    roots.sort_by(|a, b| a.partial_cmp(b).expect("comparable roots"));
    roots
        .par_iter()
        .map(|r| root_condition(p, r))
        .collect()
}

/// Lebesgue function `sum_k |l_k(x)|` of a node set.
pub fn lebesgue_function<T: Number>(nodes: &NodeSet, x: &T) -> Result<Scalar> {
    let basis = BasisSpec::lagrange(nodes.clone())?;
    let ones = vec![Scalar::one(); nodes.len()];
    let prec = nodes.precision().max(x.precision()).unwrap_or_else(default_precision);
    Ok(weighted_condition(&basis, &ones, x, prec))
}

/// `(B(x), L(x) max_k |c_k|)` for a Lagrange-form polynomial; the first never
/// exceeds the second.
pub fn lebesgue_bound<T: Number>(p: &Polynomial, x: &T) -> Result<(Scalar, Scalar)> {
    let BasisSpec::Lagrange(l) = p.basis() else {
        return Err(Error::UnsupportedBasis(p.basis().kind()));
    };
    let b = condition_b(p, x);
    let cmax = Scalar::max_of(p.coeffs().iter().map(Scalar::abs).collect::<Vec<_>>().iter())
        .unwrap_or_else(Scalar::zero);
    Ok((b, &lebesgue_function(l.nodes(), x)? * &cmax))
}

/// `samples` equispaced exact points `a + (b - a) i / (samples - 1)`.
pub fn sample_points(a: &Scalar, b: &Scalar, samples: usize) -> Result<Vec<Scalar>> {
    if samples < 2 {
        return Err(Error::Argument("a curve needs at least 2 samples".into()));
    }
    if a >= b {
        return Err(Error::Argument(format!("empty interval [{a}, {b}]")));
    }
    let width = b - a;
    let m = (samples - 1) as i64;
    Ok((0..samples)
        .map(|i| a + &(&width * &Scalar::ratio(i as i64, m)))
        .collect())
}

/// `log10 B(x)` on `samples` equispaced points of `[a, b]`. Exact when `p` is
/// exact; otherwise the sample points are rounded to `p`'s precision.
pub fn condition_curve(p: &Polynomial, a: &Scalar, b: &Scalar, samples: usize, label: impl Into<String>) -> Result<ConditionCurve> {
    let xs = sample_points(a, b, samples)?;
    let prec = p.precision();
    let kernel = match p.basis() {
        BasisSpec::Lagrange(l) if prec.is_none() => {
            let w: Vec<Scalar> = p.coeffs().iter().map(Scalar::abs).collect();
            ExactLagrangeKernel::new(l, &w)
        }
        _ => None,
    };
    let values: Vec<f64> = xs
        .par_iter()
        .map(|x| match (&kernel, x.as_exact()) {
            (Some(k), Some(q)) => Scalar::Exact(k.eval(q)).log10_abs_or_neg_inf(),
            _ => condition_b(p, &x.promote(prec)).log10_abs_or_neg_inf(),
        })
        .collect();
    ConditionCurve::new(label, xs, values)
}

/// `log10 A(r)` (or `log10 B(r)/|p'(r)|` when `absolute`) over the retained roots.
pub fn root_condition_curve(p: &Polynomial, absolute: bool, label: impl Into<String>) -> Result<ConditionCurve> {
    let rc = root_conditions(p)?;
    curve_from_root_conditions(&rc, absolute, label)
}

pub fn curve_from_root_conditions(rc: &[RootCondition], absolute: bool, label: impl Into<String>) -> Result<ConditionCurve> {
    let xs = rc.iter().map(|c| c.root.clone()).collect();
    let vals = rc
        .iter()
        .map(|c| if absolute { &c.absolute } else { &c.mixed }.log10_abs_or_neg_inf())
        .collect();
    ConditionCurve::new(label, xs, vals)
}
