//! Diagram and standard automorphisms, their fixed subalgebras, weight
//! restriction and the twisted weight alphabets.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lie::{Coweight, LieType, RootDatum, TorusPoint, Weight};

/// Automorphism class acting on the ambient algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TwistKind {
    Identity,
    Diagram2,
    Diagram3,
    Standard4,
}

impl TwistKind {
    pub fn order(self) -> u32 {
        match self {
            TwistKind::Identity => 1,
            TwistKind::Diagram2 => 2,
            TwistKind::Diagram3 => 3,
            TwistKind::Standard4 => 4,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            TwistKind::Identity => "identity",
            TwistKind::Diagram2 => "diagram2",
            TwistKind::Diagram3 => "diagram3",
            TwistKind::Standard4 => "standard4",
        }
    }

    /// From a `(kind, order)` pair as written in requests. `standard` of
    /// order 2 or 3 is the diagram automorphism itself.
    pub fn from_parts(kind: &str, order: u32) -> Option<Self> {
        match (kind, order) {
            ("identity", 1) => Some(TwistKind::Identity),
            ("diagram" | "standard" | "diagram2", 2) => Some(TwistKind::Diagram2),
            ("diagram" | "standard" | "diagram3", 3) => Some(TwistKind::Diagram3),
            ("standard" | "standard4", 4) => Some(TwistKind::Standard4),
            _ => None,
        }
    }
}

impl fmt::Display for TwistKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Level-`c` alphabet of dominant weights, lexicographically ordered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSet {
    pub level: u32,
    pub members: Vec<Weight>,
}

impl WeightSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, w: &Weight) -> bool {
        self.members.binary_search(w).is_ok()
    }

    pub fn index_of(&self, w: &Weight) -> Option<usize> {
        self.members.binary_search(w).ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Weight> {
        self.members.iter()
    }
}

/// Fixed-point data of an automorphism `sigma` of the ambient algebra.
#[derive(Debug)]
pub struct TwistData {
    ambient: Arc<RootDatum>,
    kind: TwistKind,
    fixed: Arc<RootDatum>,
    /// `restriction[J][i] = <omega_i, H_J>` for the simple coroots `H_J` of
    /// the fixed algebra.
    restriction: Vec<Vec<i32>>,
    /// Generators of the lattice `M` in fixed weight coordinates.
    lattice_m: Vec<Weight>,
    theta_sigma: Weight,
    /// `theta_sigma^vee` on the simple coroots of the fixed algebra.
    theta_check: Vec<i32>,
    a0: u32,
    /// For `(A_2n, 2)`: the order-4 standard automorphism with the same
    /// fixed Cartan, whose data the twisted sums are transported through.
    companion: Option<Arc<TwistData>>,
}

fn illegal(ambient: &RootDatum, kind: TwistKind) -> Error {
    Error::IllegalPair {
        lie_type: ambient.name(),
        kind: kind.tag().to_string(),
    }
}

/// Orbits of ambient nodes giving each fixed simple coroot, the fixed type
/// and rank, and a per-node multiplier on the coroot.
type Folding = (Vec<Vec<usize>>, LieType, usize, Vec<i32>);

fn folding(ambient: &RootDatum, kind: TwistKind) -> Result<Folding> {
    let r = ambient.rank();
    let t = ambient.lie_type();
    let f = match (t, kind) {
        (LieType::A, TwistKind::Diagram2) if r >= 2 && r % 2 == 1 => {
            let n = (r + 1) / 2;
            let orbits = (0..n).map(|j| dedup(vec![j, r - 1 - j])).collect();
            (orbits, LieType::C, n, vec![1; n])
        }
        (LieType::A, TwistKind::Diagram2 | TwistKind::Standard4) if r % 2 == 0 => {
            let n = r / 2;
            let orbits = (0..n).map(|j| vec![j, r - 1 - j]).collect();
            if kind == TwistKind::Standard4 {
                (orbits, LieType::C, n, vec![1; n])
            } else {
                let mut mult = vec![1; n];
                mult[n - 1] = 2;
                (orbits, LieType::B, n, mult)
            }
        }
        (LieType::D, TwistKind::Diagram2) => {
            let n = r - 1;
            let mut orbits: Vec<Vec<usize>> = (0..n - 1).map(|j| vec![j]).collect();
            orbits.push(vec![n - 1, n]);
            (orbits, LieType::B, n, vec![1; n])
        }
        (LieType::D, TwistKind::Diagram3) if r == 4 => {
            (vec![vec![0, 2, 3], vec![1]], LieType::G, 2, vec![1; 2])
        }
        (LieType::E, TwistKind::Diagram2) if r == 6 => (
            vec![vec![1], vec![3], vec![2, 4], vec![0, 5]],
            LieType::F,
            4,
            vec![1; 4],
        ),
        _ => return Err(illegal(ambient, kind)),
    };
    Ok(f)
}

fn dedup(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v.dedup();
    v
}

impl TwistData {
    /// Fixed-point data for `kind` acting on `ambient`.
    pub fn new(ambient: Arc<RootDatum>, kind: TwistKind) -> Result<Self> {
        if kind == TwistKind::Identity {
            let theta = ambient.highest_root().clone();
            let long: Vec<Weight> = ambient
                .positive_roots()
                .iter()
                .filter(|r| r.long)
                .map(|r| r.weight.clone())
                .collect();
            let n = ambient.rank();
            return Ok(TwistData {
                restriction: (0..n).map(|i| Weight::fundamental(n, i).0).collect(),
                fixed: ambient.clone(),
                ambient,
                kind,
                lattice_m: long,
                theta_sigma: theta.weight,
                theta_check: theta.coroot_coords,
                a0: 1,
                companion: None,
            });
        }
        let (orbits, fixed_type, fixed_rank, mult) = folding(&ambient, kind)?;
        let fixed = Arc::new(RootDatum::build(fixed_type, fixed_rank));
        let r = ambient.rank();
        let restriction: Vec<Vec<i32>> = orbits
            .iter()
            .zip(&mult)
            .map(|(orb, &k)| (0..r).map(|i| if orb.contains(&i) { k } else { 0 }).collect())
            .collect();
        let simple_roots: Vec<Weight> = (0..fixed.rank()).map(|j| fixed.simple_root(j)).collect();

        let (theta_sigma, theta_check, lattice_m, a0, companion) = match kind {
            TwistKind::Standard4 => {
                let th = fixed.highest_root();
                assert!(th.weight.0.iter().all(|c| c % 2 == 0));
                let half = Weight(th.weight.0.iter().map(|c| c / 2).collect());
                let check = th.coroot_coords.iter().map(|c| 2 * c).collect();
                let m = (0..fixed.rank()).map(|i| Weight::fundamental(fixed.rank(), i)).collect();
                (half, check, m, 2, None)
            }
            _ => {
                let th = fixed.highest_short_root();
                let companion = if ambient.lie_type() == LieType::A && r % 2 == 0 {
                    Some(Arc::new(TwistData::new(ambient.clone(), TwistKind::Standard4)?))
                } else {
                    None
                };
                (th.weight.clone(), th.coroot_coords.clone(), simple_roots, 1, companion)
            }
        };
        Ok(TwistData {
            ambient,
            kind,
            fixed,
            restriction,
            lattice_m,
            theta_sigma,
            theta_check,
            a0,
            companion,
        })
    }

    pub fn ambient(&self) -> &Arc<RootDatum> {
        &self.ambient
    }

    pub fn fixed(&self) -> &Arc<RootDatum> {
        &self.fixed
    }

    pub fn kind(&self) -> TwistKind {
        self.kind
    }

    pub fn is_identity(&self) -> bool {
        self.kind == TwistKind::Identity
    }

    /// The non-standard order-2 automorphism of `A_2n`.
    pub fn is_a2n_diagram(&self) -> bool {
        self.companion.is_some()
    }

    pub fn companion(&self) -> Option<&Arc<TwistData>> {
        self.companion.as_ref()
    }

    pub fn restriction_matrix(&self) -> &[Vec<i32>] {
        &self.restriction
    }

    pub fn lattice_m(&self) -> &[Weight] {
        &self.lattice_m
    }

    pub fn theta_sigma(&self) -> &Weight {
        &self.theta_sigma
    }

    /// `theta_sigma^vee` in fundamental-coweight coordinates.
    pub fn theta_check_sigma(&self) -> Coweight {
        let a = self.fixed.cartan_matrix();
        let n = self.fixed.rank();
        Coweight(
            (0..n)
                .map(|j| (0..n).map(|i| self.theta_check[i] * a[i][j]).sum())
                .collect(),
        )
    }

    /// Coefficients of `theta_sigma^vee` on the simple coroots.
    pub fn theta_check_coroot_coords(&self) -> &[i32] {
        &self.theta_check
    }

    pub fn a0(&self) -> u32 {
        self.a0
    }

    /// `c + h^vee` of the ambient algebra.
    pub fn shifted_level(&self, c: u32) -> i64 {
        c as i64 + self.ambient.dual_coxeter() as i64
    }

    /// `(lambda, theta_sigma^vee)`.
    pub fn level_of(&self, w: &Weight) -> i64 {
        w.0.iter()
            .zip(&self.theta_check)
            .map(|(&a, &b)| a as i64 * b as i64)
            .sum()
    }

    /// Restriction of an ambient weight to the fixed Cartan.
    pub fn restrict(&self, w: &Weight) -> Weight {
        Weight(
            self.restriction
                .iter()
                .map(|row| row.iter().zip(&w.0).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }

    /// A fixed-Cartan point viewed in the ambient torus.
    pub fn lift_point(&self, xi: &TorusPoint) -> TorusPoint {
        let r = self.ambient.rank();
        let y = xi.pairings();
        let num = (0..r)
            .map(|i| {
                self.restriction
                    .iter()
                    .zip(y)
                    .map(|(row, &yj)| row[i] as i64 * yj)
                    .sum()
            })
            .collect();
        TorusPoint::from_pairings(num, xi.den())
    }

    /// The alphabet `D_{c,sigma}` (for the identity, `D_c`).
    pub fn weight_alphabet(&self, c: u32) -> WeightSet {
        if let Some(std4) = &self.companion {
            let mut members: Vec<Weight> = std4
                .weight_alphabet(c)
                .members
                .iter()
                .map(|w| bijection_formula(c, w))
                .collect();
            members.sort();
            return WeightSet { level: c, members };
        }
        let mut members = Vec::new();
        let mut cur = vec![0i32; self.fixed.rank()];
        enumerate_bounded(&self.theta_check, c as i64, 0, &mut cur, &mut members);
        members.sort();
        WeightSet { level: c, members }
    }

    pub(crate) fn check_in_alphabet(&self, slot: &str, c: u32, alphabet: &WeightSet, w: &Weight) -> Result<()> {
        self.fixed.check_rank(w)?;
        if !alphabet.contains(w) {
            return Err(Error::WeightNotInAlphabet {
                slot: slot.to_string(),
                weight: w.0.clone(),
                level: c,
            });
        }
        Ok(())
    }

    /// Restriction of `V(nu)` to the fixed subalgebra, as multiplicities of
    /// irreducible constituents.
    pub fn branch_to_fixed(&self, nu: &Weight) -> Result<BTreeMap<Weight, u64>> {
        self.ambient.check_dominant(nu)?;
        if self.is_identity() {
            return Ok([(nu.clone(), 1)].into());
        }
        // The restricted character is W^sigma-invariant: keep dominant weights only.
        let mut restricted: BTreeMap<Weight, i64> = BTreeMap::new();
        for (mu, m) in self.ambient.weight_multiplicities(nu)? {
            let r = self.restrict(&mu);
            if r.is_dominant() {
                *restricted.entry(r).or_insert(0) += m as i64;
            }
        }
        let fixed = &self.fixed;
        let mut out = BTreeMap::new();
        loop {
            let top = restricted
                .iter()
                .filter(|(_, &m)| m != 0)
                .max_by(|a, b| fixed.height(a.0).cmp(&fixed.height(b.0)).then_with(|| a.0.cmp(b.0)))
                .map(|(w, &m)| (w.clone(), m));
            let Some((eta, m)) = top else { break };
            assert!(m > 0, "negative multiplicity while branching {nu}");
            for (w, k) in fixed.dominant_weight_multiplicities(&eta)? {
                *restricted.entry(w).or_insert(0) -= m * k as i64;
            }
            out.insert(eta, m as u64);
        }
        Ok(out)
    }

    /// The weight bijection `D_{c,sigma}(C_n) -> D_{c,tau}(B_n)` for `A_2n`.
    pub fn a2n_weight_bijection(&self, c: u32, lambda: &Weight) -> Result<Weight> {
        let std4 = match (self.kind, &self.companion) {
            (TwistKind::Standard4, _) => self,
            (_, Some(s)) => s.as_ref(),
            _ => return Err(illegal(&self.ambient, self.kind)),
        };
        std4.fixed.check_rank(lambda)?;
        if !std4.weight_alphabet(c).contains(lambda) {
            return Err(Error::NotInAlphabet {
                weight: lambda.0.clone(),
                level: c,
            });
        }
        Ok(bijection_formula(c, lambda))
    }

    /// Inverse of the bijection, for weights of the `B_n` alphabet.
    pub(crate) fn a2n_inverse_bijection(&self, c: u32, b: &Weight) -> Option<Weight> {
        let n = b.rank();
        let last = b.0[n - 1] - c as i32;
        if last < 0 || last % 2 != 0 {
            return None;
        }
        let mut a = b.0.clone();
        a[n - 1] = last / 2;
        Some(Weight(a))
    }
}

/// `sum a_i lambda_i^C -> sum_{i<n} a_i lambda_i^B + (2 a_n + c) lambda_n^B`,
/// with no membership check.
pub fn bijection_formula(c: u32, lambda: &Weight) -> Weight {
    let mut b = lambda.0.clone();
    let n = b.len();
    b[n - 1] = 2 * b[n - 1] + c as i32;
    Weight(b)
}

fn enumerate_bounded(coef: &[i32], budget: i64, i: usize, cur: &mut Vec<i32>, out: &mut Vec<Weight>) {
    if i == coef.len() {
        out.push(Weight(cur.clone()));
        return;
    }
    let step = coef[i] as i64;
    let mut k = 0;
    while k * step <= budget {
        cur[i] = k as i32;
        enumerate_bounded(coef, budget - k * step, i + 1, cur, out);
        k += 1;
    }
    cur[i] = 0;
}

/// Convenience constructor from a type, rank and kind.
pub fn build_twist(lie_type: LieType, rank: usize, kind: TwistKind) -> Result<TwistData> {
    let ambient = crate::lie::build_root_datum(lie_type, rank)?;
    TwistData::new(ambient, kind)
}
