use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::sync::{Arc, OnceLock};

use super::datum::RootDatum;
use super::types::Weight;
use crate::error::Result;

/// Weight multiplicities of one irreducible module, kept per dominant weight
/// with the full list expanded lazily over Weyl orbits.
#[derive(Debug)]
pub struct DominantCharacter {
    /// Dominant weights with multiplicities, highest first.
    pub dominant: Vec<(Weight, u64)>,
    all: OnceLock<Vec<(Weight, u64)>>,
}

impl DominantCharacter {
    pub fn all_weights(&self, rd: &RootDatum) -> &[(Weight, u64)] {
        self.all.get_or_init(|| {
            let mut out = Vec::new();
            for (mu, m) in &self.dominant {
                out.extend(rd.orbit(mu).into_iter().map(|v| (v, *m)));
            }
            out
        })
    }
}

impl RootDatum {
    /// Dominant weights below `lambda` in the dominance order, highest first.
    fn dominant_weights_below(&self, lambda: &Weight) -> Vec<Weight> {
        let mut seen: HashSet<Weight> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(lambda.clone());
        queue.push_back(lambda.clone());
        while let Some(mu) = queue.pop_front() {
            for r in self.positive_roots() {
                let nu = mu.sub(&r.weight);
                if nu.is_dominant() && !seen.contains(&nu) {
                    seen.insert(nu.clone());
                    queue.push_back(nu);
                }
            }
        }
        let mut out: Vec<Weight> = seen.into_iter().collect();
        out.sort_by(|a, b| self.height(b).cmp(&self.height(a)).then_with(|| b.cmp(a)));
        out
    }

    fn freudenthal(&self, lambda: &Weight) -> Vec<(Weight, u64)> {
        let dominant = self.dominant_weights_below(lambda);
        let shifted = lambda.add(self.rho());
        let top = self.inner_scaled(&shifted, &shifted) as i128;
        let mut mult: HashMap<Weight, u64> = HashMap::with_capacity(dominant.len());
        let universe: HashSet<&Weight> = dominant.iter().collect();
        let mut out = Vec::with_capacity(dominant.len());
        for mu in &dominant {
            let m = if mu == lambda {
                1
            } else {
                let mut num: i128 = 0;
                for r in self.positive_roots() {
                    let mut k = 1;
                    loop {
                        let v = mu.add(&r.weight.scale(k));
                        let (dom, _) = self.to_dominant(&v);
                        if !universe.contains(&dom) {
                            break;
                        }
                        let mv = mult[&dom] as i128;
                        num += mv * self.inner_scaled(&v, &r.weight) as i128;
                        k += 1;
                    }
                }
                let ms = mu.add(self.rho());
                let den = top - self.inner_scaled(&ms, &ms) as i128;
                debug_assert!(den > 0 && (2 * num) % den == 0);
                (2 * num / den) as u64
            };
            mult.insert(mu.clone(), m);
            if m > 0 {
                out.push((mu.clone(), m));
            }
        }
        out
    }

    pub(crate) fn dominant_character(&self, lambda: &Weight) -> Arc<DominantCharacter> {
        if let Some(c) = self.dominant_chars.read().unwrap().get(lambda) {
            return c.clone();
        }
        let computed = Arc::new(DominantCharacter {
            dominant: self.freudenthal(lambda),
            all: OnceLock::new(),
        });
        self.dominant_chars
            .write()
            .unwrap()
            .entry(lambda.clone())
            .or_insert(computed)
            .clone()
    }

    /// Multiplicities of the dominant weights of `V(lambda)`.
    pub fn dominant_weight_multiplicities(&self, lambda: &Weight) -> Result<BTreeMap<Weight, u64>> {
        self.check_dominant(lambda)?;
        Ok(self.dominant_character(lambda).dominant.iter().cloned().collect())
    }

    /// Multiplicities of every weight of `V(lambda)`.
    pub fn weight_multiplicities(&self, lambda: &Weight) -> Result<BTreeMap<Weight, u64>> {
        self.check_dominant(lambda)?;
        let ch = self.dominant_character(lambda);
        Ok(ch.all_weights(self).iter().cloned().collect())
    }
}
