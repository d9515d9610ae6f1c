use std::collections::BTreeMap;

use super::datum::RootDatum;
use super::types::Weight;
use crate::error::Result;

impl RootDatum {
    /// Reflects `v` (already shifted by rho) into the dominant chamber.
    /// Returns `None` on a wall, otherwise the unshifted dominant weight and
    /// the sign of the reflecting element.
    pub(crate) fn dot_to_dominant(&self, v: &Weight) -> Option<(Weight, i64)> {
        let (dom, steps) = self.to_dominant(v);
        if dom.0.iter().any(|&c| c == 0) {
            return None;
        }
        let sign = if steps % 2 == 0 { 1 } else { -1 };
        Some((dom.sub(self.rho()), sign))
    }

    /// Klimyk's rule: `V(lambda) (x) X` for a virtual module `X` given by its
    /// full weight list. Returns signed multiplicities with zeros removed.
    pub(crate) fn klimyk<'a, I>(&self, lambda: &Weight, weights: I) -> BTreeMap<Weight, i64>
    where
        I: IntoIterator<Item = (&'a Weight, i64)>,
    {
        let shifted = lambda.add(self.rho());
        let mut out: BTreeMap<Weight, i64> = BTreeMap::new();
        for (nu, m) in weights {
            if let Some((eta, sign)) = self.dot_to_dominant(&shifted.add(nu)) {
                *out.entry(eta).or_insert(0) += sign * m;
            }
        }
        out.retain(|_, m| *m != 0);
        out
    }

    /// Decomposition of `V(lambda) (x) V(mu)` into irreducibles.
    pub fn tensor_multiplicities(&self, lambda: &Weight, mu: &Weight) -> Result<BTreeMap<Weight, u64>> {
        self.check_dominant(lambda)?;
        self.check_dominant(mu)?;
        let (big, small) = if self.weyl_dimension(lambda)? >= self.weyl_dimension(mu)? {
            (lambda, mu)
        } else {
            (mu, lambda)
        };
        let ch = self.dominant_character(small);
        let signed = self.klimyk(big, ch.all_weights(self).iter().map(|(w, m)| (w, *m as i64)));
        Ok(signed
            .into_iter()
            .map(|(w, m)| {
                assert!(m > 0, "negative tensor multiplicity");
                (w, m as u64)
            })
            .collect())
    }
}
