//! Interpolation node families.

use crate::error::{Error, Result};
use crate::scalar::{Float, Precision, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub enum NodeProvenance {
    /// `a + (b - a) k / n`, stored increasing.
    Equispaced { a: Scalar, b: Scalar },
    /// `cos(pi k / n)`, stored decreasing from 1 to -1.
    ChebyshevExtreme,
    Custom,
}

/// An ordered list of pairwise-distinct nodes.
///
/// Consumers must not assume any ordering; check [`NodeSet::provenance`].
#[derive(Clone, Debug)]
pub struct NodeSet {
    nodes: Vec<Scalar>,
    provenance: NodeProvenance,
}

impl NodeSet {
    /// `n + 1` exact nodes `a + (b - a) k / n`, `k = 0..=n`.
    pub fn equispaced(n: usize, a: &Scalar, b: &Scalar) -> Result<Self> {
        if n == 0 {
            return Err(Error::Argument("equispaced nodes need degree n >= 1".into()));
        }
        if a >= b {
            return Err(Error::Argument(format!("empty interval [{a}, {b}]")));
        }
        let width = b - a;
        let nodes = (0..=n)
            .map(|k| a + &(&width * &Scalar::ratio(k as i64, n as i64)))
            .collect();
        Ok(NodeSet {
            nodes,
            provenance: NodeProvenance::Equispaced {
                a: a.clone(),
                b: b.clone(),
            },
        })
    }

    /// Chebyshev extreme points `cos(pi k / n)`, computed at twice `precision`.
    ///
    /// The endpoints and the middle node (even `n`) are exact values, and
    /// `x_{n-k} = -x_k` holds bit for bit.
    pub fn chebyshev(n: usize, precision: Precision) -> Result<Self> {
        if n == 0 {
            return Err(Error::Argument("Chebyshev nodes need degree n >= 1".into()));
        }
        let p = precision.doubled();
        let pi = Float::pi(p);
        let nf = Float::from_f64(n as f64, p);
        let mut nodes = vec![Scalar::Float(Float::zero(p)); n + 1];
        for k in 0..=n / 2 {
            let x = if k == 0 {
                Float::from_f64(1.0, p)
            } else if 2 * k == n {
                Float::zero(p)
            } else {
                pi.mul(&Float::from_f64(k as f64, p)).div(&nf).cos()
            };
            nodes[n - k] = Scalar::Float(x.neg());
            nodes[k] = Scalar::Float(x);
        }
        Ok(NodeSet {
            nodes,
            provenance: NodeProvenance::ChebyshevExtreme,
        })
    }

    /// Arbitrary nodes; rejects exact duplicates and big-float nodes closer
    /// than `10^-(precision-2)`.
    pub fn custom(nodes: Vec<Scalar>) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::Argument("node set is empty".into()));
        }
        check_distinct(&nodes)?;
        Ok(NodeSet {
            nodes,
            provenance: NodeProvenance::Custom,
        })
    }

    pub fn nodes(&self) -> &[Scalar] {
        &self.nodes
    }

    pub fn provenance(&self) -> &NodeProvenance {
        &self.provenance
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Interpolation degree, `len - 1`.
    pub fn degree(&self) -> usize {
        self.nodes.len() - 1
    }

    /// Highest float precision among the nodes; `None` when all are exact.
    pub fn precision(&self) -> Option<Precision> {
        self.nodes.iter().filter_map(Scalar::precision).max()
    }
}

pub(crate) fn check_distinct(nodes: &[Scalar]) -> Result<()> {
    for i in 0..nodes.len() {
        for j in i + 1..nodes.len() {
            if (&nodes[i] - &nodes[j]).is_negligible() {
                return Err(Error::DegenerateInput(format!(
                    "nodes {i} and {j} coincide ({})",
                    nodes[i]
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Precision {
        Precision::digits(30)
    }

    #[test]
    fn equispaced_small_cases() {
        let s = NodeSet::equispaced(2, &Scalar::from_int(-1), &Scalar::one()).unwrap();
        assert_eq!(s.nodes(), &[Scalar::from_int(-1), Scalar::zero(), Scalar::one()]);

        let s = NodeSet::equispaced(5, &Scalar::from_int(-1), &Scalar::one()).unwrap();
        let want = [(-1, 1), (-3, 5), (-1, 5), (1, 5), (3, 5), (1, 1)]
            .map(|(n, d)| Scalar::ratio(n, d));
        assert_eq!(s.nodes(), &want);
        assert!(s.nodes().iter().all(Scalar::is_exact));

        let s = NodeSet::equispaced(20, &Scalar::zero(), &Scalar::one()).unwrap();
        assert_eq!(s.len(), 21);
        assert_eq!(s.nodes()[7], Scalar::ratio(7, 20));
        assert_eq!(s.nodes()[20], Scalar::one());
    }

    #[test]
    fn equispaced_rejects_bad_arguments() {
        let (a, b) = (Scalar::zero(), Scalar::one());
        assert!(matches!(NodeSet::equispaced(0, &a, &b), Err(Error::Argument(_))));
        assert!(matches!(NodeSet::equispaced(3, &b, &a), Err(Error::Argument(_))));
        assert!(matches!(NodeSet::equispaced(3, &a, &a), Err(Error::Argument(_))));
    }

    #[test]
    fn chebyshev_closed_forms() {
        let s = NodeSet::chebyshev(2, p()).unwrap();
        assert_eq!(s.nodes(), &[Scalar::one(), Scalar::zero(), Scalar::from_int(-1)]);

        let s = NodeSet::chebyshev(4, p()).unwrap();
        let half_sqrt2 = Scalar::ratio(1, 2).sqrt(p().doubled()).unwrap();
        let err = (&s.nodes()[1] - &half_sqrt2).abs();
        assert!(err.log10_abs().unwrap() < -58.0);
        assert_eq!(s.nodes()[3], -&s.nodes()[1]);
        assert_eq!(s.nodes()[2], Scalar::zero());
    }

    #[test]
    fn chebyshev_is_symmetric_and_decreasing() {
        for n in [1, 3, 7, 10, 89] {
            let s = NodeSet::chebyshev(n, p()).unwrap();
            assert_eq!(s.nodes()[0], Scalar::one());
            assert_eq!(s.nodes()[n], Scalar::from_int(-1));
            for k in 0..=n {
                assert_eq!(s.nodes()[n - k], -&s.nodes()[k]);
            }
            assert!(s.nodes().windows(2).all(|w| w[0] > w[1]));
            assert_eq!(s.precision(), Some(p().doubled()));
        }
    }

    #[test]
    fn chebyshev_rejects_degree_zero() {
        assert!(NodeSet::chebyshev(0, p()).is_err());
    }

    #[test]
    fn custom_rejects_duplicates() {
        let dup = vec![Scalar::one(), Scalar::ratio(2, 2)];
        assert!(matches!(NodeSet::custom(dup), Err(Error::DegenerateInput(_))));

        let q = Precision::digits(20);
        let close = vec![
            Scalar::one().to_float(q),
            (&Scalar::one() + &Scalar::pow2(-80)).to_float(q),
        ];
        assert!(matches!(NodeSet::custom(close), Err(Error::DegenerateInput(_))));
    }
}
