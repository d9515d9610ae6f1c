use num_integer::Integer;
use num_traits::Zero;
use std::fmt;
use std::sync::Arc;

use super::datum::{RootDatum, Q};
use super::types::Weight;
use crate::numeric::UnitRoots;

/// A point `t = exp(2 pi i xi)` of the maximal torus with `xi` rational.
///
/// Stored through its pairings with the fundamental weights,
/// `<omega_i, xi> = num[i] / den`, reduced modulo 1. Since every weight is an
/// integer combination of fundamental weights, `lambda(xi)` is then exact.
#[derive(Clone)]
pub struct TorusPoint {
    num: Vec<i64>,
    den: i64,
    roots: Arc<UnitRoots>,
}

impl TorusPoint {
    pub fn from_pairings(num: Vec<i64>, den: i64) -> Self {
        assert!(den != 0);
        let (mut num, mut den) = (num, den);
        if den < 0 {
            den = -den;
            num.iter_mut().for_each(|x| *x = -*x);
        }
        let g = num.iter().fold(den, |g, &x| g.gcd(&x));
        let den = den / g;
        let num = num.into_iter().map(|x| (x / g).rem_euclid(den)).collect();
        TorusPoint {
            num,
            den,
            roots: Arc::new(UnitRoots::new(den)),
        }
    }

    /// `xi = sum_j x_j omega_j^vee` in fundamental-coweight coordinates.
    pub fn from_coweight_coords(rd: &RootDatum, x: &[Q]) -> Self {
        let n = rd.rank();
        assert_eq!(x.len(), n);
        let inv = rd.cartan_inverse();
        // <omega_i, omega_j^vee> = (A^{-1})_{ji}
        let y: Vec<Q> = (0..n)
            .map(|i| (0..n).map(|j| inv[j][i] * x[j]).fold(Q::zero(), |a, b| a + b))
            .collect();
        Self::from_rationals(&y)
    }

    pub(crate) fn from_rationals(y: &[Q]) -> Self {
        let den = y.iter().fold(1i64, |acc, q| acc.lcm(q.denom()));
        let num = y.iter().map(|q| (q * den).to_integer()).collect();
        Self::from_pairings(num, den)
    }

    pub fn rank(&self) -> usize {
        self.num.len()
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn pairings(&self) -> &[i64] {
        &self.num
    }

    /// Numerator of `lambda(xi)` over `den`, reduced into `0..den`.
    pub fn pairing_num(&self, w: &[i32]) -> i64 {
        let mut acc = 0i64;
        for (&a, &y) in w.iter().zip(&self.num) {
            acc = (acc + a as i64 * y).rem_euclid(self.den);
        }
        acc
    }

    pub fn pairing(&self, w: &Weight) -> Q {
        Q::new(self.pairing_num(&w.0), self.den)
    }

    /// `<alpha_j, xi>` for each simple root: the fundamental-coweight coordinates mod 1.
    pub fn coweight_coords(&self, rd: &RootDatum) -> Vec<Q> {
        (0..rd.rank())
            .map(|j| self.pairing(&rd.simple_root(j)))
            .collect()
    }

    /// `exp(2 pi i k / den)`.
    pub fn phase(&self, k: i64) -> num_complex::Complex64 {
        self.roots.get(k)
    }

    pub(crate) fn unit_roots(&self) -> &UnitRoots {
        &self.roots
    }

    /// `e^{lambda}(t)`.
    pub fn eval(&self, w: &Weight) -> num_complex::Complex64 {
        self.phase(self.pairing_num(&w.0))
    }

    /// No root is integral on `xi`. For simply connected groups this is
    /// equivalent to a trivial stabilizer in the Weyl group.
    pub fn is_regular(&self, rd: &RootDatum) -> bool {
        rd.positive_roots()
            .iter()
            .all(|r| self.pairing_num(&r.weight.0) != 0)
    }

    /// The point `w xi` for the Weyl element with index `idx`.
    pub fn transform(&self, rd: &RootDatum, idx: usize) -> TorusPoint {
        let wg = rd.weyl_group();
        let inv = wg.inverse(idx);
        let mut out = vec![0i64; self.rank()];
        wg.apply_transpose(inv, &self.num, &mut out);
        TorusPoint::from_pairings(out, self.den)
    }
}

impl PartialEq for TorusPoint {
    fn eq(&self, other: &Self) -> bool {
        self.den == other.den && self.num == other.num
    }
}

impl Eq for TorusPoint {}

impl std::hash::Hash for TorusPoint {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl fmt::Debug for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TorusPoint({:?}/{})", self.num, self.den)
    }
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .num
            .iter()
            .map(|&n| Q::new(n, self.den).to_string())
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::LieType;

    #[test]
    fn coweight_roundtrip() {
        let rd = RootDatum::new(LieType::C, 3).unwrap();
        let x = vec![Q::new(1, 7), Q::new(2, 7), Q::new(3, 7)];
        let p = TorusPoint::from_coweight_coords(&rd, &x);
        assert_eq!(p.coweight_coords(&rd), x);
    }

    #[test]
    fn regularity_matches_stabilizer_brute_force() {
        let rd = RootDatum::new(LieType::G, 2).unwrap();
        let w = rd.weyl_group();
        for a in 0..12 {
            for b in 0..12 {
                let p = TorusPoint::from_pairings(vec![a, b], 12);
                let stabilized = (1..w.order()).any(|idx| p.transform(&rd, idx) == p);
                assert_eq!(p.is_regular(&rd), !stabilized, "{p:?}");
            }
        }
    }
}
