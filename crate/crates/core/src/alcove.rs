//! Finite torus combinatorics: lattice orders, the regular point set
//! `Sigma_c` and folding into the fundamental alcove under the star action.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::lattice::cokernel_order;
use crate::lie::{RootDatum, TorusPoint, Weight};
use crate::twist::{TwistData, TwistKind};

type Q = num_rational::Ratio<i64>;

/// The points of `Sigma_c` together with the torus orders.
#[derive(Clone, Debug)]
pub struct AlcoveEnumeration {
    pub level: u32,
    /// Points on the fixed Cartan, one per member of the alphabet.
    pub points: Vec<TorusPoint>,
    pub order_t: u128,
    pub order_tsigma: u128,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FoldStatus {
    Interior,
    Wall,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldResult {
    pub status: FoldStatus,
    pub weight: Option<Weight>,
    pub sign: Option<i32>,
    /// Number of reflections used; equals the length of the folding element.
    pub length: usize,
    pub length_parity: u8,
}

fn index(generators: &[Weight], rank: usize, scale: i64) -> u128 {
    let m: Vec<Vec<i128>> = (0..rank)
        .map(|i| generators.iter().map(|g| g.0[i] as i128 * scale as i128).collect())
        .collect();
    cokernel_order(&m).expect("lattice has full rank")
}

/// `(|T_c|, |T_c^sigma|)`: the orders `|P / (c+h) Q_lg|` for the ambient
/// algebra and `|P_sigma / (c+h) M|` for the fixed one.
pub fn lattice_orders(tw: &TwistData, c: u32) -> (u128, u128) {
    if let Some(std4) = tw.companion() {
        return lattice_orders(std4, c);
    }
    let k = tw.shifted_level(c);
    let amb = tw.ambient();
    let long: Vec<Weight> = amb
        .positive_roots()
        .iter()
        .filter(|r| r.long)
        .map(|r| r.weight.clone())
        .collect();
    let order_t = index(&long, amb.rank(), k);
    let order_ts = index(tw.lattice_m(), tw.fixed().rank(), k);
    (order_t, order_ts)
}

/// `nu^{-1}(v) / k` on the torus of `rd`, with the form scaled by `scale`.
fn point_from_weight(rd: &RootDatum, v: &Weight, scale: i64, k: i64) -> TorusPoint {
    let g = rd.normalized_form();
    let y: Vec<Q> = (0..rd.rank())
        .map(|i| {
            (0..rd.rank())
                .map(|j| g[i][j] * v.0[j] as i64)
                .fold(Q::zero(), |a, b| a + b)
                * scale
                / k
        })
        .collect();
    TorusPoint::from_rationals(&y)
}

/// Enumerates `Sigma_c`, a set of representatives of `T_c^{sigma,reg} / W^sigma`.
pub fn enumerate_sigma_c(tw: &TwistData, c: u32) -> AlcoveEnumeration {
    if let Some(std4) = tw.companion() {
        return enumerate_sigma_c(std4, c);
    }
    let (order_t, order_tsigma) = lattice_orders(tw, c);
    let k = tw.shifted_level(c);
    let fixed = tw.fixed();
    let points = match tw.kind() {
        TwistKind::Identity => tw
            .weight_alphabet(c)
            .iter()
            .map(|l| point_from_weight(fixed, &l.add(fixed.rho()), 1, k))
            .collect(),
        TwistKind::Standard4 => tw
            .weight_alphabet(c)
            .iter()
            .map(|l| point_from_weight(fixed, &l.add(fixed.rho()), 2, k))
            .collect(),
        TwistKind::Diagram2 | TwistKind::Diagram3 => {
            // (rho^vee + lambda^vee) / k over dominant coweights with
            // <theta_l, lambda^vee> <= c.
            let theta = &fixed.highest_root().root_coords;
            let mut coweights = Vec::new();
            let mut cur = vec![0i32; fixed.rank()];
            bounded(theta, c as i64, 0, &mut cur, &mut coweights);
            coweights.sort();
            coweights
                .iter()
                .map(|lc| {
                    let x: Vec<Q> = lc.iter().map(|&v| Q::new(v as i64 + 1, k)).collect();
                    TorusPoint::from_coweight_coords(fixed, &x)
                })
                .collect()
        }
    };
    AlcoveEnumeration {
        level: c,
        points,
        order_t,
        order_tsigma,
    }
}

fn bounded(coef: &[i32], budget: i64, i: usize, cur: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
    if i == coef.len() {
        out.push(cur.clone());
        return;
    }
    let mut k = 0;
    while k * coef[i] as i64 <= budget {
        cur[i] = k as i32;
        bounded(coef, budget - k * coef[i] as i64, i + 1, cur, out);
        k += 1;
    }
    cur[i] = 0;
}

/// Folds `eta` into the level-`c` alcove under `W^sigma` and translations
/// by `(c+h) M`, acting by `w * eta = w(eta + rho_sigma) - rho_sigma`.
pub fn fold_to_alcove(tw: &TwistData, c: u32, eta: &Weight) -> FoldResult {
    if let Some(std4) = tw.companion() {
        return fold_to_alcove(std4, c, eta);
    }
    let fixed = tw.fixed();
    let k = tw.shifted_level(c);
    let theta = tw.theta_sigma();
    let mut x = eta.add(fixed.rho());
    let guard = 10 * (tw.level_of(&x).unsigned_abs() as usize + x.0.iter().map(|v| v.unsigned_abs() as usize).sum::<usize>() + 10) * k as usize;
    let mut steps = 0usize;
    loop {
        assert!(steps <= guard, "folding {eta} did not terminate");
        if let Some(i) = x.0.iter().position(|&v| v < 0) {
            fixed.reflect_in_place(&mut x.0, i);
            steps += 1;
            continue;
        }
        let level = tw.level_of(&x);
        if level > k {
            // Affine reflection in the hyperplane (x, theta^vee) = k.
            x = x.sub(&theta.scale((level - k) as i32));
            steps += 1;
            continue;
        }
        break;
    }
    let parity = (steps % 2) as u8;
    if x.0.iter().any(|&v| v == 0) || tw.level_of(&x) == k {
        return FoldResult {
            status: FoldStatus::Wall,
            weight: None,
            sign: None,
            length: steps,
            length_parity: parity,
        };
    }
    FoldResult {
        status: FoldStatus::Interior,
        weight: Some(x.sub(fixed.rho())),
        sign: Some(if parity == 0 { 1 } else { -1 }),
        length: steps,
        length_parity: parity,
    }
}
