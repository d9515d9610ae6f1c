use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::datum::{RootDatum, Q};
use super::point::TorusPoint;
use super::types::Weight;
use crate::error::{Error, Result};
use crate::numeric::tree_sum;

/// Value of a character at a torus point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CharacterValue {
    pub value: Complex64,
    /// Exact phase `lambda(xi)` mod 1 when the value is a single root of unity.
    #[serde(skip)]
    pub phase_exact: Option<Q>,
}

/// Relative threshold below which the Weyl denominator is treated as zero.
pub const SINGULAR_THRESHOLD: f64 = 1e-8;

impl RootDatum {
    /// Alternating sums `sum_w sign(w) e^{w v}(t)` for several `v` at once.
    fn alternating_sums(&self, shifted: &[Weight], xi: &TorusPoint) -> Vec<Complex64> {
        let wg = self.weyl_group();
        let n = self.rank();
        let roots = xi.unit_roots();
        let mut z = vec![0i64; n];
        let mut partial: Vec<Vec<Complex64>> = vec![Vec::with_capacity(wg.order()); shifted.len()];
        for idx in 0..wg.order() {
            // <w v, xi> = <v, M_w^T y>
            wg.apply_transpose(idx, xi.pairings(), &mut z);
            let sign = wg.sign(idx) as f64;
            for (acc, v) in partial.iter_mut().zip(shifted) {
                let k: i64 = v.0.iter().zip(&z).map(|(&a, &b)| a as i64 * b).sum();
                acc.push(roots.get(k) * sign);
            }
        }
        partial.into_iter().map(tree_sum).collect()
    }

    /// `sum_w sign(w) e^{w rho}(t)`.
    pub fn weyl_denominator(&self, xi: &TorusPoint) -> Complex64 {
        self.alternating_sums(std::slice::from_ref(self.rho()), xi)[0]
    }

    fn check_point(&self, xi: &TorusPoint) -> Result<()> {
        if xi.rank() != self.rank() {
            return Err(Error::RankMismatch {
                weight: vec![],
                expected: self.rank(),
                got: xi.rank(),
            });
        }
        Ok(())
    }

    /// Weyl character formula evaluated at `t = exp(2 pi i xi)`.
    pub fn character_value(&self, lambda: &Weight, xi: &TorusPoint) -> Result<CharacterValue> {
        self.check_dominant(lambda)?;
        self.check_point(xi)?;
        let values = self.weyl_quotients(std::slice::from_ref(lambda), xi)?;
        Ok(CharacterValue {
            value: values[0],
            phase_exact: lambda.is_zero().then(|| Q::from_integer(0)),
        })
    }

    /// Several Weyl quotients at one point, sharing the Weyl-group pass.
    pub(crate) fn weyl_quotients(&self, lambdas: &[Weight], xi: &TorusPoint) -> Result<Vec<Complex64>> {
        let mut shifted: Vec<Weight> = lambdas.iter().map(|l| l.add(self.rho())).collect();
        shifted.push(self.rho().clone());
        let sums = self.alternating_sums(&shifted, xi);
        let den = *sums.last().unwrap();
        let order = self.weyl_group().order() as f64;
        if den.norm() < SINGULAR_THRESHOLD * order {
            return Err(Error::SingularPoint {
                magnitude: den.norm(),
            });
        }
        Ok(sums[..lambdas.len()].iter().map(|s| s / den).collect())
    }

    /// `sum_mu mult(mu) e^mu(t)` over the weights of `V(lambda)`.
    pub fn character_value_by_weights(&self, lambda: &Weight, xi: &TorusPoint) -> Result<CharacterValue> {
        self.check_dominant(lambda)?;
        self.check_point(xi)?;
        Ok(CharacterValue {
            value: self.weight_sum(lambda, xi),
            phase_exact: lambda.is_zero().then(|| Q::from_integer(0)),
        })
    }

    pub(crate) fn weight_sum(&self, lambda: &Weight, xi: &TorusPoint) -> Complex64 {
        let ch = self.dominant_character(lambda);
        tree_sum(
            ch.all_weights(self)
                .iter()
                .map(|(mu, m)| xi.eval(mu) * *m as f64),
        )
    }

    /// `prod_{alpha > 0} |e^alpha(t) - 1|^2`, i.e. the product over all roots
    /// of `e^alpha(t) - 1`.
    pub fn delta(&self, xi: &TorusPoint) -> f64 {
        self.positive_roots()
            .iter()
            .map(|r| (xi.eval(&r.weight) - 1.0).norm_sqr())
            .product()
    }

    /// Characters of all `lambdas` at `xi`, each by whichever route is cheaper:
    /// the weight sum when `dim V(lambda) <= |W|`, else the Weyl quotient.
    /// Falls back to the weight sum when `xi` is singular.
    pub(crate) fn character_row(&self, lambdas: &[Weight], xi: &TorusPoint) -> Vec<Complex64> {
        let order = self.weyl_group().order() as u64;
        let mut out = vec![Complex64::new(0.0, 0.0); lambdas.len()];
        let mut heavy = Vec::new();
        for (k, l) in lambdas.iter().enumerate() {
            if self.weyl_dimension(l).expect("dominant weight") <= order {
                out[k] = self.weight_sum(l, xi);
            } else {
                heavy.push(k);
            }
        }
        if !heavy.is_empty() {
            let ws: Vec<Weight> = heavy.iter().map(|&k| lambdas[k].clone()).collect();
            match self.weyl_quotients(&ws, xi) {
                Ok(vals) => {
                    for (&k, v) in heavy.iter().zip(vals) {
                        out[k] = v;
                    }
                }
                Err(_) => {
                    for &k in &heavy {
                        out[k] = self.weight_sum(&lambdas[k], xi);
                    }
                }
            }
        }
        out
    }
}
