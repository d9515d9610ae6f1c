use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::{Arc, OnceLock, RwLock};

use super::freudenthal::DominantCharacter;
use super::types::{LieType, Weight};
use super::weyl::WeylGroup;
use crate::error::{Error, Result};

pub(crate) type Q = Ratio<i64>;

/// A positive root with its coordinates in the three bases we need.
#[derive(Clone, Debug)]
pub struct PositiveRoot {
    /// Coefficients on the simple roots.
    pub root_coords: Vec<i32>,
    /// Coordinates in the fundamental-weight basis.
    pub weight: Weight,
    /// Coefficients of the coroot on the simple coroots.
    pub coroot_coords: Vec<i32>,
    pub height: i32,
    pub long: bool,
}

/// Simple root system with its normalized invariant form (long roots have
/// squared length 2), positive roots and a lazily enumerated Weyl group.
///
/// Cartan convention: `cartan[i][j] = <alpha_j, alpha_i^vee>`, so the j-th
/// column is the simple root `alpha_j` in fundamental-weight coordinates.
#[derive(Debug)]
pub struct RootDatum {
    lie_type: LieType,
    rank: usize,
    cartan: Vec<Vec<i32>>,
    half_lengths: Vec<Q>,
    cartan_inv: Vec<Vec<Q>>,
    form: Vec<Vec<Q>>,
    form_int: Vec<Vec<i64>>,
    form_den: i64,
    positive_roots: Vec<PositiveRoot>,
    rho: Weight,
    dual_coxeter: u32,
    highest_root: usize,
    highest_short_root: usize,
    height_functional: Vec<i64>,
    weyl: OnceLock<WeylGroup>,
    pub(super) dominant_chars: RwLock<HashMap<Weight, Arc<DominantCharacter>>>,
}

/// The (type, rank) pairs accepted by the public constructor.
pub(crate) fn is_supported(lie_type: LieType, rank: usize) -> bool {
    match lie_type {
        LieType::A => (1..=8).contains(&rank),
        LieType::B => (2..=5).contains(&rank),
        LieType::C => (2..=4).contains(&rank),
        LieType::D => (3..=6).contains(&rank),
        LieType::E => rank == 6,
        LieType::F => rank == 4,
        LieType::G => rank == 2,
    }
}

fn gram_matrix(lie_type: LieType, rank: usize) -> Vec<Vec<Q>> {
    let two = Q::from_integer(2);
    let one = Q::one();
    let mut diag = vec![two; rank];
    let edges: Vec<(usize, usize)>;
    let chain = |n: usize| (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect::<Vec<_>>();
    match lie_type {
        LieType::A => edges = chain(rank),
        LieType::B => {
            edges = chain(rank);
            diag[rank - 1] = one;
        }
        LieType::C => {
            edges = chain(rank);
            for d in diag.iter_mut().take(rank - 1) {
                *d = one;
            }
        }
        LieType::D => {
            let mut e = chain(rank - 1);
            e.push((rank - 3, rank - 1));
            edges = e;
        }
        LieType::E => edges = vec![(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)],
        LieType::F => {
            edges = chain(4);
            diag[2] = one;
            diag[3] = one;
        }
        LieType::G => {
            edges = chain(2);
            diag[0] = Q::new(2, 3);
        }
    }
    let mut gram = vec![vec![Q::zero(); rank]; rank];
    for i in 0..rank {
        gram[i][i] = diag[i];
    }
    // Joined nodes pair to minus half the longer squared length.
    for (i, j) in edges {
        let v = -std::cmp::max(diag[i], diag[j]) / 2;
        gram[i][j] = v;
        gram[j][i] = v;
    }
    gram
}

pub(crate) fn invert(m: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m.to_vec();
    let mut inv: Vec<Vec<Q>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("matrix is singular");
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col];
        for j in 0..n {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                for j in 0..n {
                    let t = a[col][j];
                    a[r][j] -= f * t;
                    let t = inv[col][j];
                    inv[r][j] -= f * t;
                }
            }
        }
    }
    inv
}

impl RootDatum {
    /// Builds one of the supported root systems.
    pub fn new(lie_type: LieType, rank: usize) -> Result<Self> {
        if !is_supported(lie_type, rank) {
            return Err(Error::UnsupportedType {
                lie_type: lie_type.to_string(),
                rank,
            });
        }
        Ok(Self::build(lie_type, rank))
    }

    /// Any finite-type diagram of the families above; used for fixed
    /// subalgebras such as `B_5` or `C_1 = A_1`.
    pub(crate) fn build(lie_type: LieType, rank: usize) -> Self {
        let (lie_type, rank) = match (lie_type, rank) {
            (LieType::B | LieType::C, 1) => (LieType::A, 1),
            other => other,
        };
        let gram = gram_matrix(lie_type, rank);
        let half_lengths: Vec<Q> = (0..rank).map(|i| gram[i][i] / 2).collect();
        let cartan: Vec<Vec<i32>> = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| {
                        let v = gram[i][j] * 2 / gram[i][i];
                        assert!(v.is_integer(), "non-integral Cartan entry");
                        v.to_integer() as i32
                    })
                    .collect()
            })
            .collect();
        let cartan_q: Vec<Vec<Q>> = cartan
            .iter()
            .map(|row| row.iter().map(|&x| Q::from_integer(x as i64)).collect())
            .collect();
        let cartan_inv = invert(&cartan_q);
        // (omega_i, omega_j) = (A^{-1})_{ji} d_j
        let form: Vec<Vec<Q>> = (0..rank)
            .map(|i| (0..rank).map(|j| cartan_inv[j][i] * half_lengths[j]).collect())
            .collect();
        let form_den = form
            .iter()
            .flatten()
            .fold(1i64, |acc, q| acc.lcm(q.denom()));
        let form_int: Vec<Vec<i64>> = form
            .iter()
            .map(|row| row.iter().map(|q| (q * form_den).to_integer()).collect())
            .collect();

        let positive_roots = positive_roots(&cartan, &gram, &half_lengths);
        let highest_root = (0..positive_roots.len())
            .max_by_key(|&k| positive_roots[k].height)
            .unwrap();
        let highest_short_root = (0..positive_roots.len())
            .filter(|&k| !positive_roots[k].long)
            .max_by_key(|&k| positive_roots[k].height)
            .unwrap_or(highest_root);
        let dual_coxeter = 1 + positive_roots[highest_root]
            .coroot_coords
            .iter()
            .map(|&c| c as u32)
            .sum::<u32>();
        let mut height_functional = vec![0i64; rank];
        for r in &positive_roots {
            for (h, &c) in height_functional.iter_mut().zip(&r.coroot_coords) {
                *h += c as i64;
            }
        }

        RootDatum {
            lie_type,
            rank,
            cartan,
            half_lengths,
            cartan_inv,
            form,
            form_int,
            form_den,
            positive_roots,
            rho: Weight(vec![1; rank]),
            dual_coxeter,
            highest_root,
            highest_short_root,
            height_functional,
            weyl: OnceLock::new(),
            dominant_chars: RwLock::new(HashMap::new()),
        }
    }

    pub fn lie_type(&self) -> LieType {
        self.lie_type
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.lie_type, self.rank)
    }

    pub fn cartan_matrix(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    pub fn is_simply_laced(&self) -> bool {
        self.positive_roots.iter().all(|r| r.long)
    }

    /// `(alpha_i, alpha_i) / 2` under the normalized form.
    pub fn half_length(&self, i: usize) -> Q {
        self.half_lengths[i]
    }

    pub fn cartan_inverse(&self) -> &[Vec<Q>] {
        &self.cartan_inv
    }

    /// Normalized invariant form on the fundamental-weight basis.
    pub fn normalized_form(&self) -> &[Vec<Q>] {
        &self.form
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    pub fn dual_coxeter(&self) -> u32 {
        self.dual_coxeter
    }

    pub fn positive_roots(&self) -> &[PositiveRoot] {
        &self.positive_roots
    }

    pub fn highest_root(&self) -> &PositiveRoot {
        &self.positive_roots[self.highest_root]
    }

    pub fn highest_short_root(&self) -> &PositiveRoot {
        &self.positive_roots[self.highest_short_root]
    }

    pub fn simple_root(&self, j: usize) -> Weight {
        Weight((0..self.rank).map(|i| self.cartan[i][j]).collect())
    }

    pub fn weyl_group(&self) -> &WeylGroup {
        self.weyl.get_or_init(|| WeylGroup::enumerate(self))
    }

    pub(crate) fn check_rank(&self, w: &Weight) -> Result<()> {
        if w.rank() != self.rank {
            return Err(Error::RankMismatch {
                weight: w.0.clone(),
                expected: self.rank,
                got: w.rank(),
            });
        }
        Ok(())
    }

    pub(crate) fn check_dominant(&self, w: &Weight) -> Result<()> {
        self.check_rank(w)?;
        if !w.is_dominant() {
            return Err(Error::NonDominant(w.0.clone()));
        }
        Ok(())
    }

    /// Normalized form value `(a, b)`.
    pub fn inner(&self, a: &Weight, b: &Weight) -> Q {
        Q::new(self.inner_scaled(a, b), self.form_den)
    }

    /// `(a, b)` multiplied by a fixed common denominator; exact integer.
    pub(crate) fn inner_scaled(&self, a: &Weight, b: &Weight) -> i64 {
        let mut acc = 0i64;
        for i in 0..self.rank {
            if a.0[i] == 0 {
                continue;
            }
            let row: i64 = (0..self.rank)
                .map(|j| self.form_int[i][j] * b.0[j] as i64)
                .sum();
            acc += a.0[i] as i64 * row;
        }
        acc
    }

    /// Coefficients of a weight on the simple roots (rational in general).
    pub fn root_coordinates(&self, w: &Weight) -> Vec<Q> {
        (0..self.rank)
            .map(|i| {
                (0..self.rank)
                    .map(|j| self.cartan_inv[i][j] * w.0[j] as i64)
                    .sum()
            })
            .collect()
    }

    /// Pairing of a weight with the coroot of a positive root.
    pub fn pair_coroot(&self, w: &Weight, root: &PositiveRoot) -> i64 {
        w.0.iter()
            .zip(&root.coroot_coords)
            .map(|(&a, &b)| a as i64 * b as i64)
            .sum()
    }

    /// Linear functional `<w, 2 rho^vee>`, strictly positive on positive roots.
    pub fn height(&self, w: &Weight) -> i64 {
        w.0.iter()
            .zip(&self.height_functional)
            .map(|(&a, &b)| a as i64 * b)
            .sum()
    }

    pub(crate) fn reflect_in_place(&self, v: &mut [i32], i: usize) {
        let c = v[i];
        if c != 0 {
            for (k, x) in v.iter_mut().enumerate() {
                *x -= c * self.cartan[k][i];
            }
        }
    }

    pub fn reflect(&self, w: &Weight, i: usize) -> Weight {
        let mut v = w.0.clone();
        self.reflect_in_place(&mut v, i);
        Weight(v)
    }

    /// Moves `w` into the dominant chamber by simple reflections.
    /// Returns the dominant representative and the number of reflections used.
    pub fn to_dominant(&self, w: &Weight) -> (Weight, usize) {
        let mut v = w.0.clone();
        let mut steps = 0;
        while let Some(i) = v.iter().position(|&c| c < 0) {
            self.reflect_in_place(&mut v, i);
            steps += 1;
        }
        (Weight(v), steps)
    }

    /// Highest weight of the dual representation, `-w_0 lambda`.
    pub fn dual(&self, w: &Weight) -> Weight {
        self.to_dominant(&w.neg()).0
    }

    /// Weyl orbit of a weight.
    pub fn orbit(&self, w: &Weight) -> Vec<Weight> {
        let start = self.to_dominant(w).0;
        let mut seen: HashSet<Weight> = HashSet::new();
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        seen.insert(start.clone());
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            for i in 0..self.rank {
                if v.0[i] > 0 {
                    let r = self.reflect(&v, i);
                    if seen.insert(r.clone()) {
                        queue.push_back(r);
                    }
                }
            }
            out.push(v);
        }
        out
    }

    /// Product over positive roots of `<lambda + rho, a^vee> / <rho, a^vee>`.
    pub fn weyl_dimension(&self, w: &Weight) -> Result<u64> {
        self.check_dominant(w)?;
        let shifted = w.add(&self.rho);
        let mut acc = Ratio::<i128>::one();
        for r in &self.positive_roots {
            let num = self.pair_coroot(&shifted, r) as i128;
            let den = self.pair_coroot(&self.rho, r) as i128;
            acc *= Ratio::new(num, den);
        }
        debug_assert!(acc.is_integer() && acc.is_positive());
        Ok(acc.to_integer() as u64)
    }
}

fn positive_roots(cartan: &[Vec<i32>], gram: &[Vec<Q>], half: &[Q]) -> Vec<PositiveRoot> {
    let rank = cartan.len();
    let mut set: HashSet<Vec<i32>> = HashSet::new();
    let mut all: Vec<Vec<i32>> = Vec::new();
    let mut layer: Vec<Vec<i32>> = (0..rank)
        .map(|i| {
            let mut v = vec![0; rank];
            v[i] = 1;
            v
        })
        .collect();
    for v in &layer {
        set.insert(v.clone());
    }
    while !layer.is_empty() {
        all.extend(layer.iter().cloned());
        let mut next = Vec::new();
        for beta in &layer {
            for i in 0..rank {
                // alpha_i-string through beta: p - q = <beta, alpha_i^vee>
                let mut p = 0;
                loop {
                    let mut g = beta.clone();
                    g[i] -= p + 1;
                    if set.contains(&g) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i32 = (0..rank).map(|j| beta[j] * cartan[i][j]).sum();
                if p - pairing > 0 {
                    let mut g = beta.clone();
                    g[i] += 1;
                    if set.insert(g.clone()) {
                        next.push(g);
                    }
                }
            }
        }
        layer = next;
    }

    let max_half = half.iter().copied().max().unwrap();
    all.into_iter()
        .map(|b| {
            let mut norm = Q::zero();
            for i in 0..rank {
                for j in 0..rank {
                    norm += gram[i][j] * (b[i] as i64 * b[j] as i64);
                }
            }
            let half_len = norm / 2;
            let weight = Weight(
                (0..rank)
                    .map(|k| (0..rank).map(|j| b[j] * cartan[k][j]).sum())
                    .collect(),
            );
            let coroot_coords = (0..rank)
                .map(|i| {
                    let c = half[i] * b[i] as i64 / half_len;
                    assert!(c.is_integer());
                    c.to_integer() as i32
                })
                .collect();
            PositiveRoot {
                height: b.iter().sum(),
                long: half_len == max_half,
                root_coords: b,
                weight,
                coroot_coords,
            }
        })
        .collect()
}
