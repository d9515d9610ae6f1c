//! Verlinde-type dimension formulas: twisted three-point numbers, fusion
//! coefficients, the classical formula, the general formula for covers with
//! paired ramification, and the factorization recursion.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::alcove::{enumerate_sigma_c, AlcoveEnumeration};
use crate::error::{Error, Result};
use crate::lie::{LieType, RootDatum, TorusPoint, Weight};
use crate::numeric::{round_half_away, tree_sum};
use crate::twist::{TwistData, TwistKind, WeightSet};

pub const DEFAULT_TOLERANCE: f64 = 1e-5;
const IMAG_TOLERANCE: f64 = 1e-7;

/// A floating evaluation rounded to the integer it represents.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DimensionResult {
    pub value: u64,
    pub raw: Complex64,
    pub residual: f64,
}

/// Rounds `raw.re` to the nearest integer, failing when the residual or
/// the imaginary part exceeds the tolerance.
fn round_checked(raw: Complex64, context: &str, tolerance: f64, allow_negative: bool) -> Result<(f64, f64)> {
    let rounded = round_half_away(raw.re);
    let residual = (raw.re - rounded).abs();
    let bad_sign = rounded < 0.0 && !allow_negative;
    if residual > tolerance || raw.im.abs() > IMAG_TOLERANCE.max(tolerance) || bad_sign {
        return Err(Error::NonIntegral {
            context: context.to_string(),
            re: raw.re,
            im: raw.im,
            residual,
            tolerance,
        });
    }
    Ok((rounded, residual))
}

impl DimensionResult {
    /// Rounds `raw`, failing if it is not close to a non-negative integer.
    pub fn from_raw(raw: Complex64, context: &str, tolerance: f64) -> Result<Self> {
        let (rounded, residual) = round_checked(raw, context, tolerance, false)?;
        Ok(DimensionResult {
            value: rounded as u64,
            raw,
            residual,
        })
    }

    pub fn exact(value: u64) -> Self {
        DimensionResult {
            value,
            raw: Complex64::new(value as f64, 0.0),
            residual: 0.0,
        }
    }
}

/// A twisted fusion coefficient. Beyond level one these are traces of the
/// automorphism on spaces of conformal blocks and may be negative.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FusionResult {
    pub value: i64,
    pub raw: Complex64,
    pub residual: f64,
}

impl FusionResult {
    /// Rounds `raw`, failing if it is not close to an integer.
    pub fn from_raw(raw: Complex64, context: &str, tolerance: f64) -> Result<Self> {
        let (rounded, residual) = round_checked(raw, context, tolerance, true)?;
        Ok(FusionResult {
            value: rounded as i64,
            raw,
            residual,
        })
    }
}

/// Everything the sums over `Sigma_c` need for one `(twist, level)`:
/// the alphabets, the points, both character tables and the weights
/// `Delta_sigma`, `Delta` at each point.
#[derive(Debug)]
pub struct VerlindeData {
    twist: Arc<TwistData>,
    /// For the `(A_2n, 2)` row this is the order-4 companion.
    working: Arc<TwistData>,
    level: u32,
    alphabet: WeightSet,
    working_alphabet: WeightSet,
    ambient_alphabet: WeightSet,
    enumeration: AlcoveEnumeration,
    fixed_chars: Vec<Vec<Complex64>>,
    delta_sigma: Vec<f64>,
    /// Ambient characters and `Delta` at the lifted points, built on first use.
    ambient: OnceLock<AmbientTable>,
}

#[derive(Debug)]
struct AmbientTable {
    chars: Vec<Vec<Complex64>>,
    delta: Vec<f64>,
}

type CacheKey = (LieType, usize, TwistKind, u32);

fn cache() -> &'static Mutex<HashMap<CacheKey, Arc<VerlindeData>>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Arc<VerlindeData>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl VerlindeData {
    /// Shared, cached data for `(twist, c)`.
    pub fn get(twist: &Arc<TwistData>, c: u32) -> Arc<VerlindeData> {
        let amb = twist.ambient();
        let key = (amb.lie_type(), amb.rank(), twist.kind(), c);
        if let Some(d) = cache().lock().unwrap().get(&key) {
            return d.clone();
        }
        let data = Arc::new(VerlindeData::build(twist.clone(), c));
        cache().lock().unwrap().entry(key).or_insert(data).clone()
    }

    fn build(twist: Arc<TwistData>, c: u32) -> Self {
        let working = twist.companion().cloned().unwrap_or_else(|| twist.clone());
        let alphabet = twist.weight_alphabet(c);
        let working_alphabet = working.weight_alphabet(c);
        let amb = working.ambient().clone();
        let ambient_alphabet = if working.is_identity() {
            working_alphabet.clone()
        } else {
            TwistData::new(amb.clone(), TwistKind::Identity)
                .expect("identity is always legal")
                .weight_alphabet(c)
        };
        let enumeration = enumerate_sigma_c(&working, c);
        let fixed = working.fixed().clone();
        let rows: Vec<(Vec<Complex64>, f64)> = enumeration
            .points
            .par_iter()
            .map(|p| (fixed.character_row(&working_alphabet.members, p), fixed.delta(p)))
            .collect();
        let (fixed_chars, delta_sigma) = rows.into_iter().unzip();
        VerlindeData {
            twist,
            working,
            level: c,
            alphabet,
            working_alphabet,
            ambient_alphabet,
            enumeration,
            fixed_chars,
            delta_sigma,
            ambient: OnceLock::new(),
        }
    }

    fn ambient_table(&self) -> &AmbientTable {
        self.ambient.get_or_init(|| {
            if self.working.is_identity() {
                return AmbientTable {
                    chars: self.fixed_chars.clone(),
                    delta: self.delta_sigma.clone(),
                };
            }
            let amb = self.working.ambient();
            let rows: Vec<(Vec<Complex64>, f64)> = self
                .enumeration
                .points
                .par_iter()
                .map(|p| {
                    let lifted = self.working.lift_point(p);
                    (amb.character_row(&self.ambient_alphabet.members, &lifted), amb.delta(&lifted))
                })
                .collect();
            let (chars, delta) = rows.into_iter().unzip();
            AmbientTable { chars, delta }
        })
    }

    pub fn twist(&self) -> &Arc<TwistData> {
        &self.twist
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// `D_{c,sigma}` in the coordinates of the twist's own fixed algebra.
    pub fn alphabet(&self) -> &WeightSet {
        &self.alphabet
    }

    /// `D_c` of the ambient algebra.
    pub fn ambient_alphabet(&self) -> &WeightSet {
        &self.ambient_alphabet
    }

    pub fn points(&self) -> &[TorusPoint] {
        &self.enumeration.points
    }

    pub fn order_t(&self) -> u128 {
        self.enumeration.order_t
    }

    pub fn order_tsigma(&self) -> u128 {
        self.enumeration.order_tsigma
    }

    pub fn delta_sigma(&self) -> &[f64] {
        &self.delta_sigma
    }

    pub fn delta(&self) -> &[f64] {
        &self.ambient_table().delta
    }

    /// Index into the working alphabet of a fixed weight given in the
    /// twist's own coordinates.
    fn fixed_index(&self, slot: &str, w: &Weight) -> Result<usize> {
        self.twist.fixed().check_rank(w)?;
        let not_in = || Error::WeightNotInAlphabet {
            slot: slot.to_string(),
            weight: w.0.clone(),
            level: self.level,
        };
        if !self.alphabet.contains(w) {
            return Err(not_in());
        }
        let w = if self.twist.is_a2n_diagram() {
            self.twist.a2n_inverse_bijection(self.level, w).ok_or_else(not_in)?
        } else {
            w.clone()
        };
        self.working_alphabet.index_of(&w).ok_or_else(not_in)
    }

    fn ambient_index(&self, slot: &str, w: &Weight) -> Result<usize> {
        self.twist.ambient().check_rank(w)?;
        self.ambient_alphabet.index_of(w).ok_or_else(|| Error::WeightNotInAlphabet {
            slot: slot.to_string(),
            weight: w.0.clone(),
            level: self.level,
        })
    }

    /// `chi_lambda(t)` of the fixed algebra at point `p`.
    pub fn fixed_character(&self, p: usize, lambda: &Weight) -> Result<Complex64> {
        Ok(self.fixed_chars[p][self.fixed_index("fixed", lambda)?])
    }

    /// `chi_nu` of the ambient algebra at the lifted point `p`.
    pub fn ambient_character(&self, p: usize, nu: &Weight) -> Result<Complex64> {
        Ok(self.ambient_table().chars[p][self.ambient_index("ambient", nu)?])
    }

    fn sum_points<F>(&self, term: F) -> Complex64
    where
        F: Fn(usize) -> Complex64 + Sync + Send,
    {
        let terms: Vec<Complex64> = (0..self.points().len()).into_par_iter().map(term).collect();
        tree_sum(terms)
    }

    /// Raw three-point sum `(1/|T^sigma|) sum chi_l chi_m chi_n Delta_sigma`
    /// over working-alphabet indices.
    fn three_point_raw(&self, l: usize, m: usize, n: usize) -> Complex64 {
        let amb = self.ambient_table();
        let s = self.sum_points(|p| {
            self.fixed_chars[p][l] * self.fixed_chars[p][m] * amb.chars[p][n] * self.delta_sigma[p]
        });
        s / self.order_tsigma() as f64
    }

    pub fn three_point(&self, lambda: &Weight, mu: &Weight, nu: &Weight) -> Result<DimensionResult> {
        let l = self.fixed_index("lambda", lambda)?;
        let m = self.fixed_index("mu", mu)?;
        let n = self.ambient_index("nu", nu)?;
        DimensionResult::from_raw(self.three_point_raw(l, m, n), "three-point", DEFAULT_TOLERANCE)
    }

    pub(crate) fn three_point_unrounded(&self, lambda: &Weight, mu: &Weight, nu: &Weight) -> Result<Complex64> {
        let l = self.fixed_index("lambda", lambda)?;
        let m = self.fixed_index("mu", mu)?;
        let n = self.ambient_index("nu", nu)?;
        Ok(self.three_point_raw(l, m, n))
    }

    /// Fusion coefficient `c^eta_{lambda mu}` of the twisted fusion ring.
    pub fn fusion_unrounded(&self, lambda: &Weight, mu: &Weight, eta: &Weight) -> Result<Complex64> {
        let l = self.fixed_index("lambda", lambda)?;
        let m = self.fixed_index("mu", mu)?;
        let e = self.fixed_index("eta", eta)?;
        let e_star = if self.working.is_identity() {
            let fixed = self.working.fixed();
            self.working_alphabet
                .index_of(&fixed.dual(&self.working_alphabet.members[e]))
                .expect("alphabet is closed under duality")
        } else {
            e
        };
        let s = self.sum_points(|p| {
            self.fixed_chars[p][l] * self.fixed_chars[p][m] * self.fixed_chars[p][e_star] * self.delta_sigma[p]
        });
        Ok(s / self.order_tsigma() as f64)
    }

    pub fn fusion(&self, lambda: &Weight, mu: &Weight, eta: &Weight) -> Result<FusionResult> {
        FusionResult::from_raw(self.fusion_unrounded(lambda, mu, eta)?, "fusion coefficient", DEFAULT_TOLERANCE)
    }

    /// Classical Verlinde sum on the ambient algebra with no stability check.
    /// Only valid on the identity data.
    pub(crate) fn classical_unrounded(&self, genus: u32, weights: &[Weight]) -> Result<Complex64> {
        debug_assert!(self.working.is_identity());
        let idx = weights
            .iter()
            .enumerate()
            .map(|(k, w)| self.ambient_index(&format!("weights[{k}]"), w))
            .collect::<Result<Vec<_>>>()?;
        let t = self.order_t() as f64;
        let e = 1 - genus as i32;
        let amb = self.ambient_table();
        let s = self.sum_points(|p| {
            let chi: Complex64 = idx.iter().map(|&i| amb.chars[p][i]).product();
            chi * amb.delta[p].powi(e)
        });
        Ok(s * t.powi(-e))
    }

    /// General formula: `sum (|T|/Delta)^{g-1+a} (Delta_sigma/|T^sigma|)^a chi...`.
    pub(crate) fn general_unrounded(&self, genus_bar: u32, lambda_dagger: &[Weight], mu: &[Weight]) -> Result<Complex64> {
        let a = lambda_dagger.len() / 2;
        let li = lambda_dagger
            .iter()
            .enumerate()
            .map(|(k, w)| self.fixed_index(&format!("lambda_dagger[{k}]"), w))
            .collect::<Result<Vec<_>>>()?;
        let mi = mu
            .iter()
            .enumerate()
            .map(|(k, w)| self.ambient_index(&format!("mu[{k}]"), w))
            .collect::<Result<Vec<_>>>()?;
        let t = self.order_t() as f64;
        let ts = self.order_tsigma() as f64;
        let e = genus_bar as i32 - 1 + a as i32;
        let amb = self.ambient_table();
        let s = self.sum_points(|p| {
            let mut chi = Complex64::new(1.0, 0.0);
            for &i in &li {
                chi *= self.fixed_chars[p][i];
            }
            for &j in &mi {
                chi *= amb.chars[p][j];
            }
            chi * (t / amb.delta[p]).powi(e) * (self.delta_sigma[p] / ts).powi(a as i32)
        });
        Ok(s)
    }
}

fn identity_data(rd: &Arc<RootDatum>, c: u32) -> Arc<VerlindeData> {
    let tw = Arc::new(TwistData::new(rd.clone(), TwistKind::Identity).expect("identity is always legal"));
    VerlindeData::get(&tw, c)
}

/// Classical Verlinde number `|T_c|^{g-1} sum chi(t) Delta(t)^{1-g}`.
pub fn classical_verlinde(rd: &Arc<RootDatum>, c: u32, genus: u32, weights: &[Weight]) -> Result<DimensionResult> {
    if genus == 0 && weights.len() < 3 {
        return Err(Error::UnstableInput(format!(
            "genus 0 needs at least 3 weights, got {}",
            weights.len()
        )));
    }
    let raw = identity_data(rd, c).classical_unrounded(genus, weights)?;
    DimensionResult::from_raw(raw, "classical Verlinde", DEFAULT_TOLERANCE)
}

/// `N(sigma; lambda, mu, nu)` for one twisted pair and one untwisted point.
pub fn twisted_three_point(
    tw: &Arc<TwistData>,
    c: u32,
    lambda: &Weight,
    mu: &Weight,
    nu: &Weight,
) -> Result<DimensionResult> {
    VerlindeData::get(tw, c).three_point(lambda, mu, nu)
}

pub fn fusion_coefficient(
    tw: &Arc<TwistData>,
    c: u32,
    lambda: &Weight,
    mu: &Weight,
    eta: &Weight,
) -> Result<FusionResult> {
    VerlindeData::get(tw, c).fusion(lambda, mu, eta)
}

/// Input to the global formulas.
#[derive(Clone, Debug)]
pub struct CurveRequest {
    pub twist: Arc<TwistData>,
    pub level: u32,
    pub genus_bar: u32,
    /// `2a` weights of the fixed algebra, consecutive pairs sharing a point orbit.
    pub lambda_dagger: Vec<Weight>,
    /// `b` weights of the ambient algebra at unramified points.
    pub mu: Vec<Weight>,
}

impl CurveRequest {
    pub fn pairs(&self) -> usize {
        self.lambda_dagger.len() / 2
    }

    fn validate(&self) -> Result<()> {
        if self.lambda_dagger.len() % 2 != 0 {
            return Err(Error::UnstableInput(format!(
                "ramified weights come in pairs, got {}",
                self.lambda_dagger.len()
            )));
        }
        let a = self.pairs();
        let b = self.mu.len();
        // Two ramified points on P^1 with nothing else is a legitimate
        // cover (z -> z^m), so (g, a, b) = (0, 1, 0) is allowed.
        if self.genus_bar == 0 && 2 * a + b < 3 && !(a == 1 && b == 0) {
            return Err(Error::UnstableInput(format!(
                "genus 0 needs 2a + b >= 3, got a = {a}, b = {b}"
            )));
        }
        if a > 0 && self.twist.is_identity() {
            // Pairs of untwisted points are just more untwisted points.
            for w in &self.lambda_dagger {
                self.twist.ambient().check_rank(w)?;
            }
        }
        Ok(())
    }
}

/// Dimension for a cover with `a` ramified pairs and `b` unramified points.
pub fn general_dimension(req: &CurveRequest) -> Result<DimensionResult> {
    let raw = general_unrounded(req)?;
    DimensionResult::from_raw(raw, "general formula", DEFAULT_TOLERANCE)
}

pub(crate) fn general_unrounded(req: &CurveRequest) -> Result<Complex64> {
    req.validate()?;
    if req.pairs() == 0 {
        return identity_data(req.twist.ambient(), req.level).classical_unrounded(req.genus_bar, &req.mu);
    }
    VerlindeData::get(&req.twist, req.level).general_unrounded(req.genus_bar, &req.lambda_dagger, &req.mu)
}

/// The same dimension by cutting the curve along each ramified pair.
pub fn factorized_dimension(req: &CurveRequest) -> Result<DimensionResult> {
    factorized_with_tolerance(req, DEFAULT_TOLERANCE)
}

pub(crate) fn factorized_with_tolerance(req: &CurveRequest, tolerance: f64) -> Result<DimensionResult> {
    req.validate()?;
    let amb = req.twist.ambient();
    let classical = identity_data(amb, req.level);
    if req.pairs() == 0 {
        let raw = classical.classical_unrounded(req.genus_bar, &req.mu)?;
        return DimensionResult::from_raw(raw, "classical Verlinde", tolerance);
    }
    let data = VerlindeData::get(&req.twist, req.level);
    let dc = data.ambient_alphabet().members.clone();
    let mut worst = 0.0f64;
    // Three-point numbers for each pair against every nu in D_c.
    let mut pair_rows: Vec<Vec<u64>> = Vec::new();
    for k in 0..req.pairs() {
        let (l1, l2) = (&req.lambda_dagger[2 * k], &req.lambda_dagger[2 * k + 1]);
        let mut row = Vec::with_capacity(dc.len());
        for nu in &dc {
            let raw = data.three_point_unrounded(l1, l2, nu)?;
            let r = DimensionResult::from_raw(raw, "three-point", tolerance)?;
            worst = worst.max(r.residual);
            row.push(r.value);
        }
        pair_rows.push(row);
    }
    let mut total: u64 = 0;
    let mut choice = vec![0usize; req.pairs()];
    loop {
        let coeff: u64 = choice.iter().enumerate().map(|(k, &i)| pair_rows[k][i]).product();
        if coeff != 0 {
            let mut weights = req.mu.clone();
            weights.extend(choice.iter().map(|&i| amb.dual(&dc[i])));
            let raw = classical.classical_unrounded(req.genus_bar, &weights)?;
            let r = DimensionResult::from_raw(raw, "classical Verlinde", tolerance)?;
            worst = worst.max(r.residual);
            total += coeff * r.value;
        }
        // Next tuple in D_c^a.
        let mut k = 0;
        while k < choice.len() {
            choice[k] += 1;
            if choice[k] < dc.len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
        if k == choice.len() {
            break;
        }
    }
    Ok(DimensionResult {
        value: total,
        raw: Complex64::new(total as f64, 0.0),
        residual: worst,
    })
}

/// Genus of a `Gamma`-cover from the Riemann-Hurwitz formula
/// `2g - 2 = |Gamma|(2 gbar - 2) + sum (|Gamma|/|Gamma_i|)(|Gamma_i| - 1)`.
pub fn riemann_hurwitz_genus(order: u64, genus_bar: u64, stabilizers: &[u64]) -> Result<u64> {
    if order == 0 {
        return Err(Error::InconsistentRamification("group order must be positive".into()));
    }
    let mut twice = order as i128 * (2 * genus_bar as i128 - 2);
    for &s in stabilizers {
        if s == 0 || order % s != 0 {
            return Err(Error::InconsistentRamification(format!(
                "stabilizer order {s} does not divide {order}"
            )));
        }
        twice += (order / s) as i128 * (s as i128 - 1);
    }
    if twice % 2 != 0 {
        return Err(Error::InconsistentRamification(format!("2g - 2 = {twice} is odd")));
    }
    let g = twice / 2 + 1;
    if g < 0 {
        return Err(Error::InconsistentRamification(format!("negative genus {g}")));
    }
    Ok(g as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::build_root_datum;
    use crate::twist::build_twist;

    fn w(v: &[i32]) -> Weight {
        Weight(v.to_vec())
    }

    #[test]
    fn sl2_three_point() {
        let a1 = build_root_datum(LieType::A, 1).unwrap();
        let v = |ws: &[i32]| {
            let ws: Vec<Weight> = ws.iter().map(|&x| w(&[x])).collect();
            classical_verlinde(&a1, 1, 0, &ws).unwrap().value
        };
        assert_eq!(v(&[1, 1, 0]), 1);
        assert_eq!(v(&[1, 1, 1]), 0);
        assert_eq!(v(&[0, 0, 0]), 1);
    }

    #[test]
    fn genus_one_counts_alphabet() {
        let a1 = build_root_datum(LieType::A, 1).unwrap();
        for c in 1..=4 {
            assert_eq!(classical_verlinde(&a1, c, 1, &[]).unwrap().value, c as u64 + 1);
        }
    }

    #[test]
    fn unstable_inputs() {
        let a1 = build_root_datum(LieType::A, 1).unwrap();
        assert!(matches!(
            classical_verlinde(&a1, 1, 0, &[w(&[0])]),
            Err(Error::UnstableInput(_))
        ));
        assert!(matches!(
            classical_verlinde(&a1, 1, 0, &[w(&[2]), w(&[0]), w(&[0])]),
            Err(Error::WeightNotInAlphabet { .. })
        ));
    }

    #[test]
    fn twisted_vacuum_and_delta() {
        let tw = Arc::new(build_twist(LieType::A, 3, TwistKind::Diagram2).unwrap());
        let d = VerlindeData::get(&tw, 1);
        let zero_f = w(&[0, 0]);
        let zero_a = w(&[0, 0, 0]);
        assert_eq!(d.three_point(&zero_f, &zero_f, &zero_a).unwrap().value, 1);
        for l in d.alphabet().members.clone() {
            for m in d.alphabet().members.clone() {
                let v = d.three_point(&l, &m, &zero_a).unwrap().value;
                assert_eq!(v, (l == m) as u64, "{l} {m}");
            }
        }
    }

    #[test]
    fn riemann_hurwitz_cases() {
        assert_eq!(riemann_hurwitz_genus(2, 0, &[2, 2]).unwrap(), 0);
        assert_eq!(riemann_hurwitz_genus(1, 3, &[]).unwrap(), 3);
        assert_eq!(riemann_hurwitz_genus(3, 0, &[3, 3, 3]).unwrap(), 1);
        assert!(riemann_hurwitz_genus(2, 0, &[2]).is_err());
        assert!(riemann_hurwitz_genus(4, 0, &[3]).is_err());
        assert!(riemann_hurwitz_genus(2, 0, &[]).is_err());
    }
}
