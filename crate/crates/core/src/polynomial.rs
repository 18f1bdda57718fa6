//! Polynomials as coefficient vectors in a declared basis.

use crate::basis::{BasisSpec, LagrangeBasis};
use crate::error::{Error, Result};
use crate::nodes::NodeSet;
use crate::scalar::{Number, Precision, Scalar};

/// `p(x) = sum_k c_k phi_k(x)`.
///
/// When built from a root list, the exact roots are kept alongside the
/// expanded coefficients and drive derivative evaluation.
#[derive(Clone, Debug)]
pub struct Polynomial {
    basis: BasisSpec,
    coeffs: Vec<Scalar>,
    roots: Option<Vec<Scalar>>,
}

impl Polynomial {
    pub fn new(basis: BasisSpec, coeffs: Vec<Scalar>) -> Result<Self> {
        if coeffs.len() != basis.size() {
            return Err(Error::Argument(format!(
                "{} coefficients for a {} basis of size {}",
                coeffs.len(),
                basis.kind(),
                basis.size()
            )));
        }
        Ok(Polynomial {
            basis,
            coeffs,
            roots: None,
        })
    }

    /// Monomial coefficients from the given coefficient list, lowest degree first.
    pub fn monomial(coeffs: Vec<Scalar>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Argument("polynomial needs at least one coefficient".into()));
        }
        Polynomial::new(BasisSpec::monomial(coeffs.len() - 1), coeffs)
    }

    /// Monic `prod (x - r_k)` expanded by iterated convolution (Vieta), in
    /// exact arithmetic for rational roots.
    pub fn from_roots_monomial(roots: &[Scalar]) -> Result<Self> {
        if roots.is_empty() {
            return Err(Error::Argument("root list is empty".into()));
        }
        let mut c = vec![Scalar::one()];
        for r in roots {
            let mut next = vec![Scalar::zero(); c.len() + 1];
            for (i, ci) in c.iter().enumerate() {
                next[i + 1] = &next[i + 1] + ci;
                next[i] = &next[i] - &(r * ci);
            }
            c = next;
        }
        Ok(Polynomial {
            basis: BasisSpec::monomial(roots.len()),
            coeffs: c,
            roots: Some(roots.to_vec()),
        })
    }

    /// Lagrange form on `nodes`: the coefficients are the values themselves.
    pub fn interpolate_lagrange(nodes: NodeSet, values: Vec<Scalar>) -> Result<Self> {
        if values.len() != nodes.len() {
            return Err(Error::Argument(format!(
                "{} values for {} nodes",
                values.len(),
                nodes.len()
            )));
        }
        Polynomial::new(BasisSpec::lagrange(nodes)?, values)
    }

    /// Lagrange form of `f` sampled at `nodes`.
    pub fn interpolate_fn(nodes: NodeSet, f: impl Fn(&Scalar) -> Scalar) -> Result<Self> {
        let values = nodes.nodes().iter().map(f).collect();
        Polynomial::interpolate_lagrange(nodes, values)
    }

    /// Attaches a known root list. In the exact regime each root must
    /// evaluate to exactly zero.
    pub fn with_roots(mut self, roots: Vec<Scalar>) -> Result<Self> {
        if roots.len() + 1 != self.basis.size() && !matches!(self.basis, BasisSpec::Lagrange(_)) {
            return Err(Error::Argument("root count does not match the degree".into()));
        }
        for r in &roots {
            let v = self.eval(r);
            if v.is_exact() && !v.is_zero() {
                return Err(Error::Argument(format!("{r} is not a root")));
            }
        }
        self.roots = Some(roots);
        Ok(self)
    }

    pub fn basis(&self) -> &BasisSpec {
        &self.basis
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn roots(&self) -> Option<&[Scalar]> {
        self.roots.as_deref()
    }

    /// Highest float precision among coefficients and basis data.
    pub fn precision(&self) -> Option<Precision> {
        self.coeffs
            .iter()
            .filter_map(Scalar::precision)
            .chain(self.basis.precision())
            .max()
    }

    pub fn is_exact(&self) -> bool {
        self.precision().is_none()
    }

    /// Same polynomial with coefficients rounded to `precision`. Basis and
    /// retained roots are untouched.
    pub fn rounded(&self, precision: Precision) -> Polynomial {
        Polynomial {
            basis: self.basis.clone(),
            coeffs: self.coeffs.iter().map(|c| c.to_float(precision)).collect(),
            roots: self.roots.clone(),
        }
    }

    /// Coefficients scaled by `1 + delta_k`.
    pub fn perturbed(&self, deltas: &[Scalar]) -> Result<Polynomial> {
        if deltas.len() != self.coeffs.len() {
            return Err(Error::Argument("one delta per coefficient required".into()));
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(deltas)
            .map(|(c, d)| c * &(&Scalar::one() + d))
            .collect();
        Polynomial::new(self.basis.clone(), coeffs)
    }

    /// `p(x)`: Horner for monomial, second barycentric form for Lagrange,
    /// de Casteljau for Bernstein.
    pub fn eval<T: Number>(&self, x: &T) -> T {
        match &self.basis {
            BasisSpec::Monomial { .. } => horner(&self.coeffs, x),
            BasisSpec::Lagrange(l) => barycentric_eval(l, &self.coeffs, x),
            BasisSpec::Bernstein { a, b, .. } => {
                let t = x.sub(&T::from_scalar(a)).div(&T::from_scalar(&(b - a)));
                de_casteljau(&self.coeffs, &t)
            }
        }
    }

    /// `prod (x - r_k)` when the roots are retained.
    pub fn eval_product_form<T: Number>(&self, x: &T) -> Option<T> {
        let roots = self.roots.as_ref()?;
        Some(product_form(roots, x))
    }

    /// `p'(x)`.
    ///
    /// Retained roots take precedence: at a root `r_i` this is the exact
    /// product `prod_{j != i} (r_i - r_j)`, elsewhere `p(x) sum 1/(x - r_j)`.
    /// Otherwise monomial and Bernstein forms differentiate their
    /// coefficients; the Lagrange form is unsupported.
    pub fn derivative_eval<T: Number>(&self, x: &T) -> Result<T> {
        if let Some(roots) = &self.roots {
            return Ok(root_form_derivative(roots, x));
        }
        match &self.basis {
            BasisSpec::Monomial { .. } => Ok(self.derivative_eval_expanded(x)),
            BasisSpec::Lagrange(_) => Err(Error::UnsupportedBasis("Lagrange")),
            BasisSpec::Bernstein { degree, a, b } => {
                if *degree == 0 {
                    return Ok(T::from_scalar(&Scalar::zero()));
                }
                let scale = &Scalar::from_int(*degree as i64) / &(b - a);
                let diffs: Vec<Scalar> = self
                    .coeffs
                    .windows(2)
                    .map(|w| &(&w[1] - &w[0]) * &scale)
                    .collect();
                let t = x.sub(&T::from_scalar(a)).div(&T::from_scalar(&(b - a)));
                Ok(de_casteljau(&diffs, &t))
            }
        }
    }

    /// Horner on the differentiated monomial coefficients, ignoring any
    /// retained roots. Panics for non-monomial bases.
    pub fn derivative_eval_expanded<T: Number>(&self, x: &T) -> T {
        assert!(matches!(self.basis, BasisSpec::Monomial { .. }));
        let d: Vec<Scalar> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * &Scalar::from_int(k as i64))
            .collect();
        if d.is_empty() {
            return T::from_scalar(&Scalar::zero());
        }
        horner(&d, x)
    }
}

pub(crate) fn horner<T: Number>(coeffs: &[Scalar], x: &T) -> T {
    let mut it = coeffs.iter().rev();
    let mut acc = T::from_scalar(it.next().expect("nonempty coefficients"));
    for c in it {
        acc = acc.mul(x).add(&T::from_scalar(c));
    }
    acc
}

fn barycentric_eval<T: Number>(l: &LagrangeBasis, values: &[Scalar], x: &T) -> T {
    if let Some(j) = l.collision(x) {
        return T::from_scalar(&values[j]);
    }
    let mut num = T::from_scalar(&Scalar::zero());
    let mut den = num.clone();
    for ((xj, wj), yj) in l.nodes().nodes().iter().zip(l.weights()).zip(values) {
        let t = T::from_scalar(wj).div(&x.sub(&T::from_scalar(xj)));
        num = num.add(&t.scale(yj));
        den = den.add(&t);
    }
    num.div(&den)
}

fn de_casteljau<T: Number>(coeffs: &[Scalar], t: &T) -> T {
    let one = T::from_scalar(&Scalar::one());
    let s = one.sub(t);
    let mut b: Vec<T> = coeffs.iter().map(T::from_scalar).collect();
    for r in 1..b.len() {
        for i in 0..b.len() - r {
            b[i] = b[i].mul(&s).add(&b[i + 1].mul(t));
        }
    }
    b.swap_remove(0)
}

fn product_form<T: Number>(roots: &[Scalar], x: &T) -> T {
    roots.iter().fold(T::from_scalar(&Scalar::one()), |acc, r| {
        acc.mul(&x.sub(&T::from_scalar(r)))
    })
}

fn root_form_derivative<T: Number>(roots: &[Scalar], x: &T) -> T {
    let diffs: Vec<T> = roots.iter().map(|r| x.sub(&T::from_scalar(r))).collect();
    if let Some(i) = diffs.iter().position(Number::is_zero) {
        return diffs
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .fold(T::from_scalar(&Scalar::one()), |acc, (_, d)| acc.mul(d));
    }
    // sum_i prod_{j != i} (x - r_j), division-free
    let n = diffs.len();
    let mut prefix = vec![T::from_scalar(&Scalar::one()); n + 1];
    for i in 0..n {
        prefix[i + 1] = prefix[i].mul(&diffs[i]);
    }
    let mut suffix = T::from_scalar(&Scalar::one());
    let mut sum = T::from_scalar(&Scalar::zero());
    for i in (0..n).rev() {
        sum = sum.add(&prefix[i].mul(&suffix));
        suffix = suffix.mul(&diffs[i]);
    }
    sum
}

/// `f(x) = 1 / (1 + 25 x^2)`.
pub fn runge_function<T: Number>(x: &T) -> T {
    let one = T::from_scalar(&Scalar::one());
    one.div(&one.add(&x.mul(x).scale(&Scalar::from_int(25))))
}
