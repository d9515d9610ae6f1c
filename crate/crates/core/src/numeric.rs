//! Floating-point helpers shared by the character and Verlinde sums.

use num_complex::Complex64;
use std::f64::consts::TAU;

/// Deterministic pairwise summation over a stream.
///
/// Partial sums are merged like a binary counter, so the association
/// order depends only on the number of terms, never on how they were
/// produced.
pub fn tree_sum<I>(terms: I) -> Complex64
where
    I: IntoIterator<Item = Complex64>,
{
    let mut stack: Vec<(u32, Complex64)> = Vec::with_capacity(48);
    for term in terms {
        let mut level = 0;
        let mut acc = term;
        while let Some(&(top_level, top)) = stack.last() {
            if top_level != level {
                break;
            }
            stack.pop();
            acc = top + acc;
            level += 1;
        }
        stack.push((level, acc));
    }
    stack
        .into_iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, (_, s)| s + acc)
}

/// Table of `exp(2 pi i k / den)` for `k` in `0..den`.
#[derive(Debug, Clone)]
pub struct UnitRoots {
    den: i64,
    table: Option<Vec<Complex64>>,
}

const TABLE_LIMIT: i64 = 1 << 20;

impl UnitRoots {
    pub fn new(den: i64) -> Self {
        assert!(den > 0);
        let table = (den <= TABLE_LIMIT).then(|| (0..den).map(|k| Self::direct(k, den)).collect());
        Self { den, table }
    }

    fn direct(k: i64, den: i64) -> Complex64 {
        let angle = TAU * (k as f64) / (den as f64);
        Complex64::new(angle.cos(), angle.sin())
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    /// `exp(2 pi i k / den)`, with `k` reduced exactly first.
    pub fn get(&self, k: i64) -> Complex64 {
        let k = k.rem_euclid(self.den);
        match &self.table {
            Some(t) => t[k as usize],
            None => Self::direct(k, self.den),
        }
    }
}

/// Round half away from zero.
pub fn round_half_away(x: f64) -> f64 {
    x.round()
}
