//! Pointwise evaluation of the monomial, Lagrange and Bernstein bases.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::nodes::{check_distinct, NodeSet};
use crate::scalar::{Number, Precision, Scalar};

/// Lagrange basis on a node set, with barycentric weights cached.
#[derive(Clone, Debug)]
pub struct LagrangeBasis {
    nodes: NodeSet,
    weights: Vec<Scalar>,
}

impl LagrangeBasis {
    pub fn new(nodes: NodeSet) -> Result<Self> {
        let weights = barycentric_weights(nodes.nodes())?;
        Ok(LagrangeBasis { nodes, weights })
    }

    pub fn nodes(&self) -> &NodeSet {
        &self.nodes
    }

    pub fn weights(&self) -> &[Scalar] {
        &self.weights
    }

    /// Index of the node `x` collides with, if any.
    pub fn collision<T: Number>(&self, x: &T) -> Option<usize> {
        self.nodes
            .nodes()
            .iter()
            .position(|xj| x.sub(&T::from_scalar(xj)).is_negligible())
    }
}

#[derive(Clone, Debug)]
pub enum BasisSpec {
    Monomial { degree: usize },
    Lagrange(LagrangeBasis),
    /// Bernstein polynomials of degree `degree`, pulled back from `[a, b]` to `[0, 1]`.
    Bernstein { degree: usize, a: Scalar, b: Scalar },
}

impl BasisSpec {
    pub fn monomial(degree: usize) -> Self {
        BasisSpec::Monomial { degree }
    }

    pub fn lagrange(nodes: NodeSet) -> Result<Self> {
        Ok(BasisSpec::Lagrange(LagrangeBasis::new(nodes)?))
    }

    pub fn bernstein(degree: usize, a: Scalar, b: Scalar) -> Result<Self> {
        if a >= b {
            return Err(Error::Argument(format!("empty Bernstein interval [{a}, {b}]")));
        }
        Ok(BasisSpec::Bernstein { degree, a, b })
    }

    pub fn kind(&self) -> &'static str {
        match self {
            BasisSpec::Monomial { .. } => "monomial",
            BasisSpec::Lagrange(_) => "Lagrange",
            BasisSpec::Bernstein { .. } => "Bernstein",
        }
    }

    /// Number of basis functions.
    pub fn size(&self) -> usize {
        match self {
            BasisSpec::Monomial { degree } | BasisSpec::Bernstein { degree, .. } => degree + 1,
            BasisSpec::Lagrange(l) => l.nodes.len(),
        }
    }

    /// Float precision carried by the basis itself (Chebyshev nodes, float interval ends).
    pub fn precision(&self) -> Option<Precision> {
        match self {
            BasisSpec::Monomial { .. } => None,
            BasisSpec::Lagrange(l) => l.nodes.precision(),
            BasisSpec::Bernstein { a, b, .. } => a.precision().max(b.precision()),
        }
    }

    /// All basis functions `phi_0(x), ..., phi_n(x)`.
    pub fn values<T: Number>(&self, x: &T) -> Vec<T> {
        match self {
            BasisSpec::Monomial { degree } => {
                let mut out = Vec::with_capacity(degree + 1);
                let mut acc = T::from_scalar(&Scalar::one());
                for _ in 0..=*degree {
                    out.push(acc.clone());
                    acc = acc.mul(x);
                }
                out
            }
            BasisSpec::Lagrange(l) => lagrange_values(l, x),
            BasisSpec::Bernstein { degree, a, b } => {
                let t = x.sub(&T::from_scalar(a)).div(&T::from_scalar(&(b - a)));
                bernstein_values(*degree, &t)
            }
        }
    }
}

fn lagrange_values<T: Number>(l: &LagrangeBasis, x: &T) -> Vec<T> {
    let n = l.nodes.len();
    let zero = T::from_scalar(&Scalar::zero());
    if let Some(j) = l.collision(x) {
        let mut out = vec![zero; n];
        out[j] = T::from_scalar(&Scalar::one());
        return out;
    }
    let diffs: Vec<T> = l
        .nodes
        .nodes()
        .iter()
        .map(|xj| x.sub(&T::from_scalar(xj)))
        .collect();
    let node_poly = diffs
        .iter()
        .skip(1)
        .fold(diffs[0].clone(), |acc, d| acc.mul(d));
    diffs
        .iter()
        .zip(&l.weights)
        .map(|(d, w)| node_poly.scale(w).div(d))
        .collect()
}

fn bernstein_values<T: Number>(n: usize, t: &T) -> Vec<T> {
    let one = T::from_scalar(&Scalar::one());
    let s = one.sub(t);
    let mut tp = Vec::with_capacity(n + 1);
    let mut sp = Vec::with_capacity(n + 1);
    let (mut a, mut b) = (one.clone(), one);
    for _ in 0..=n {
        tp.push(a.clone());
        sp.push(b.clone());
        a = a.mul(t);
        b = b.mul(&s);
    }
    (0..=n)
        .map(|k| tp[k].mul(&sp[n - k]).scale(&binomial(n, k)))
        .collect()
}

pub(crate) fn binomial(n: usize, k: usize) -> Scalar {
    let mut c = BigInt::from(1);
    for i in 0..k {
        c = c * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Scalar::from_bigint(c)
}

/// `w_k = 1 / prod_{j != k} (x_k - x_j)`; exact for rational nodes.
pub fn barycentric_weights(nodes: &[Scalar]) -> Result<Vec<Scalar>> {
    check_distinct(nodes)?;
    Ok((0..nodes.len())
        .map(|k| {
            let prod = nodes
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .fold(Scalar::one(), |acc, (_, xj)| &acc * &(&nodes[k] - xj));
            &Scalar::one() / &prod
        })
        .collect())
}

/// `l_k(x)` straight from the product definition, without barycentric weights.
pub fn lagrange_basis_value<T: Number>(nodes: &NodeSet, k: usize, x: &T) -> Result<T> {
    let xs = nodes.nodes();
    if k >= xs.len() {
        return Err(Error::IndexOutOfRange {
            index: k,
            size: xs.len(),
        });
    }
    let mut num = T::from_scalar(&Scalar::one());
    let mut den = Scalar::one();
    for (j, xj) in xs.iter().enumerate() {
        if j != k {
            num = num.mul(&x.sub(&T::from_scalar(xj)));
            den = &den * &(&xs[k] - xj);
        }
    }
    Ok(num.div(&T::from_scalar(&den)))
}

/// `B_{k,n}(x) = C(n,k) x^k (1-x)^(n-k)` on `[0, 1]`.
pub fn bernstein_basis_value<T: Number>(n: usize, k: usize, x: &T) -> Result<T> {
    if k > n {
        return Err(Error::IndexOutOfRange {
            index: k,
            size: n + 1,
        });
    }
    let one = T::from_scalar(&Scalar::one());
    let s = one.sub(x);
    let mut v = one;
    for _ in 0..k {
        v = v.mul(x);
    }
    for _ in k..n {
        v = v.mul(&s);
    }
    Ok(v.scale(&binomial(n, k)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three_nodes() -> NodeSet {
        NodeSet::equispaced(2, &Scalar::from_int(-1), &Scalar::one()).unwrap()
    }

    #[test]
    fn weights_of_three_nodes() {
        let w = barycentric_weights(three_nodes().nodes()).unwrap();
        assert_eq!(w, vec![Scalar::ratio(1, 2), Scalar::from_int(-1), Scalar::ratio(1, 2)]);
    }

    #[test]
    fn weights_single_node_and_duplicates() {
        assert_eq!(barycentric_weights(&[Scalar::zero()]).unwrap(), vec![Scalar::one()]);
        let dup = [Scalar::one(), Scalar::zero(), Scalar::one()];
        assert!(matches!(barycentric_weights(&dup), Err(Error::DegenerateInput(_))));
    }

    #[test]
    fn equispaced_weights_alternate() {
        let s = NodeSet::equispaced(9, &Scalar::zero(), &Scalar::from_int(3)).unwrap();
        let w = barycentric_weights(s.nodes()).unwrap();
        for pair in w.windows(2) {
            assert_eq!(pair[0].signum(), -pair[1].signum());
        }
    }

    #[test]
    fn lagrange_middle_at_half() {
        let v = lagrange_basis_value(&three_nodes(), 1, &Scalar::ratio(1, 2)).unwrap();
        assert_eq!(v, Scalar::ratio(3, 4));
    }

    #[test]
    fn lagrange_cardinal_property() {
        let nodes = NodeSet::equispaced(6, &Scalar::from_int(-2), &Scalar::from_int(5)).unwrap();
        let basis = BasisSpec::lagrange(nodes.clone()).unwrap();
        for (j, xj) in nodes.nodes().iter().enumerate() {
            let vals = basis.values(xj);
            for (k, v) in vals.iter().enumerate() {
                assert_eq!(*v, if j == k { Scalar::one() } else { Scalar::zero() });
                assert_eq!(lagrange_basis_value(&nodes, k, xj).unwrap(), *v);
            }
        }
    }

    #[test]
    fn lagrange_index_out_of_range() {
        let err = lagrange_basis_value(&three_nodes(), 3, &Scalar::zero()).unwrap_err();
        assert!(matches!(err, Error::IndexOutOfRange { index: 3, size: 3 }));
    }

    #[test]
    fn bernstein_values() {
        assert_eq!(bernstein_basis_value(5, 0, &Scalar::zero()).unwrap(), Scalar::one());
        assert_eq!(
            bernstein_basis_value(2, 1, &Scalar::ratio(1, 2)).unwrap(),
            Scalar::ratio(1, 2)
        );
        assert!(bernstein_basis_value(2, 3, &Scalar::zero()).is_err());
    }

    #[test]
    fn bernstein_interval_pullback() {
        let b = BasisSpec::bernstein(3, Scalar::from_int(2), Scalar::from_int(4)).unwrap();
        let on_interval = b.values(&Scalar::ratio(5, 2));
        let unit = BasisSpec::bernstein(3, Scalar::zero(), Scalar::one()).unwrap();
        assert_eq!(on_interval, unit.values(&Scalar::ratio(1, 4)));
        for (k, v) in on_interval.iter().enumerate() {
            assert_eq!(*v, bernstein_basis_value(3, k, &Scalar::ratio(1, 4)).unwrap());
        }
    }

    #[test]
    fn sizes() {
        assert_eq!(BasisSpec::monomial(4).size(), 5);
        assert_eq!(BasisSpec::lagrange(three_nodes()).unwrap().size(), 3);
        assert_eq!(
            BasisSpec::bernstein(7, Scalar::zero(), Scalar::one()).unwrap().size(),
            8
        );
    }
}
