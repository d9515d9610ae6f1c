//! Shared fixtures and independent oracles for the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;
use verlinde_core::lie::{build_root_datum, LieType, RootDatum, TorusPoint, Weight};
use verlinde_core::twist::{build_twist, TwistData, TwistKind};

pub fn w(v: &[i32]) -> Weight {
    Weight(v.to_vec())
}

/// Every (type, rank) the library accepts.
pub fn supported_algebras() -> Vec<(LieType, usize)> {
    let mut out = Vec::new();
    out.extend((1..=8).map(|n| (LieType::A, n)));
    out.extend((2..=5).map(|n| (LieType::B, n)));
    out.extend((2..=4).map(|n| (LieType::C, n)));
    out.extend((3..=6).map(|n| (LieType::D, n)));
    out.extend([(LieType::E, 6), (LieType::F, 4), (LieType::G, 2)]);
    out
}

pub fn datum(t: LieType, n: usize) -> Arc<RootDatum> {
    build_root_datum(t, n).unwrap()
}

pub fn twist(t: LieType, n: usize, k: TwistKind) -> Arc<TwistData> {
    Arc::new(build_twist(t, n, k).unwrap())
}

/// Every non-identity twist at every supported rank.
pub fn twisted_rows() -> Vec<(LieType, usize, TwistKind)> {
    let mut out = Vec::new();
    out.extend([3, 5, 7].map(|n| (LieType::A, n, TwistKind::Diagram2)));
    out.extend([2, 4, 6, 8].map(|n| (LieType::A, n, TwistKind::Standard4)));
    out.extend([2, 4, 6, 8].map(|n| (LieType::A, n, TwistKind::Diagram2)));
    out.extend((3..=6).map(|n| (LieType::D, n, TwistKind::Diagram2)));
    out.push((LieType::D, 4, TwistKind::Diagram3));
    out.push((LieType::E, 6, TwistKind::Diagram2));
    out
}

/// One small representative of each of the six twisted rows.
pub fn small_rows() -> Vec<(LieType, usize, TwistKind)> {
    vec![
        (LieType::A, 3, TwistKind::Diagram2),
        (LieType::A, 4, TwistKind::Standard4),
        (LieType::A, 4, TwistKind::Diagram2),
        (LieType::D, 4, TwistKind::Diagram2),
        (LieType::D, 4, TwistKind::Diagram3),
        (LieType::E, 6, TwistKind::Diagram2),
    ]
}

/// Dominant weights with coordinate sum at most `budget`.
pub fn dominant_up_to(rank: usize, budget: i32) -> Vec<Weight> {
    fn go(rank: usize, budget: i32, cur: &mut Vec<i32>, out: &mut Vec<Weight>) {
        if cur.len() == rank {
            out.push(Weight(cur.clone()));
            return;
        }
        for k in 0..=budget {
            cur.push(k);
            go(rank, budget - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(rank, budget, &mut Vec::new(), &mut out);
    out
}

/// A random point of finite order at which no root is trivial, with the
/// Weyl denominator at least `1e-6 |W|` so both character routes are well
/// conditioned.
pub fn random_regular_point<R: Rng>(rd: &RootDatum, rng: &mut R) -> TorusPoint {
    let floor = 1e-6 * rd.weyl_group().order() as f64;
    loop {
        let den = rng.gen_range(7..=61);
        let num = (0..rd.rank()).map(|_| rng.gen_range(0..den)).collect();
        let p = TorusPoint::from_pairings(num, den);
        if p.is_regular(rd) && rd.weyl_denominator(&p).norm() >= floor {
            return p;
        }
    }
}

// ---------------------------------------------------------------------------
// Root system oracle built from a bare Cartan matrix.

/// Facts about a root system derived directly from its Cartan matrix
/// `A_ij = <alpha_j, alpha_i^vee>` by closing the simple roots under the
/// simple reflections.
pub struct CartanFacts {
    pub positive_roots: Vec<Vec<i64>>,
    pub dual_coxeter: i64,
    pub coxeter: i64,
}

pub fn cartan_facts(a: &[Vec<i32>]) -> CartanFacts {
    let n = a.len();
    // Symmetrizer: d_i A_ij = d_j A_ji, found by walking the Dynkin diagram.
    let mut d = vec![0f64; n];
    d[0] = 1.0;
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..n {
            for j in 0..n {
                if i != j && a[i][j] != 0 && d[i] != 0.0 && d[j] == 0.0 {
                    d[j] = d[i] * a[i][j] as f64 / a[j][i] as f64;
                    changed = true;
                }
            }
        }
    }
    let mut roots: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| (i == j) as i64).collect())
        .collect();
    let mut k = 0;
    while k < roots.len() {
        let beta = roots[k].clone();
        for i in 0..n {
            // s_i beta = beta - <beta, alpha_i^vee> alpha_i
            let pair: i64 = (0..n).map(|j| beta[j] * a[i][j] as i64).sum();
            let mut r = beta.clone();
            r[i] -= pair;
            if r.iter().all(|&x| x >= 0) && r.iter().any(|&x| x > 0) && !roots.contains(&r) {
                roots.push(r);
            }
        }
        k += 1;
    }
    let theta = roots
        .iter()
        .max_by_key(|r| r.iter().sum::<i64>())
        .unwrap()
        .clone();
    // |alpha_i|^2 is proportional to d_i; coroot coefficients m_i |alpha_i|^2 / |theta|^2.
    let len2 = |r: &[i64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                s += r[i] as f64 * r[j] as f64 * d[i] * a[i][j] as f64;
            }
        }
        s
    };
    let lt = len2(&theta);
    let dual: f64 = (0..n).map(|i| theta[i] as f64 * 2.0 * d[i] / lt).sum();
    CartanFacts {
        coxeter: 1 + theta.iter().sum::<i64>(),
        dual_coxeter: 1 + dual.round() as i64,
        positive_roots: roots,
    }
}

/// Textbook `(|Phi^+|, |W|, h^vee)`.
pub fn textbook(t: LieType, n: usize) -> (usize, usize, u32) {
    let fact = |k: usize| (1..=k).product::<usize>();
    match t {
        LieType::A => (n * (n + 1) / 2, fact(n + 1), n as u32 + 1),
        LieType::B => (n * n, (1 << n) * fact(n), 2 * n as u32 - 1),
        LieType::C => (n * n, (1 << n) * fact(n), n as u32 + 1),
        LieType::D => (n * (n - 1), (1 << (n - 1)) * fact(n), 2 * n as u32 - 2),
        LieType::E => (36, 51840, 12),
        LieType::F => (24, 1152, 9),
        LieType::G => (6, 12, 4),
    }
}

// ---------------------------------------------------------------------------
// Semistandard tableaux for type A.

/// Weight multiplicities of the `A_n` representation with highest weight
/// `lambda`, by counting semistandard tableaux of the matching shape.
pub fn ssyt_multiplicities(lambda: &Weight) -> BTreeMap<Weight, u64> {
    let n = lambda.rank();
    let entries = n + 1;
    // Partition: row k has sum_{i >= k} lambda_i boxes.
    let shape: Vec<usize> = (0..n)
        .map(|k| lambda.0[k..].iter().map(|&x| x as usize).sum())
        .filter(|&r| r > 0)
        .collect();
    let cells: Vec<(usize, usize)> = shape
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
        .collect();
    let mut grid: Vec<Vec<usize>> = shape.iter().map(|&l| vec![0; l]).collect();
    let mut out = BTreeMap::new();
    fill(&cells, 0, &mut grid, entries, &mut out);
    out
}

fn fill(
    cells: &[(usize, usize)],
    k: usize,
    grid: &mut Vec<Vec<usize>>,
    entries: usize,
    out: &mut BTreeMap<Weight, u64>,
) {
    if k == cells.len() {
        let mut content = vec![0i32; entries + 1];
        for row in grid.iter() {
            for &e in row {
                content[e] += 1;
            }
        }
        let wt = Weight((1..entries).map(|i| content[i] - content[i + 1]).collect());
        *out.entry(wt).or_insert(0) += 1;
        return;
    }
    let (r, c) = cells[k];
    let lo_row = if c > 0 { grid[r][c - 1] } else { 1 };
    let lo_col = if r > 0 { grid[r - 1][c] + 1 } else { 1 };
    for e in lo_row.max(lo_col)..=entries {
        grid[r][c] = e;
        fill(cells, k + 1, grid, entries, out);
    }
    grid[r][c] = 0;
}

// ---------------------------------------------------------------------------
// sl2 fusion rules.

/// `N_{ab}^c` for `sl2` at level `k`, labels being twice the spin.
pub fn sl2_fusion(k: u32, a: u32, b: u32, c: u32) -> u64 {
    if a > k || b > k || c > k || (a + b + c) % 2 != 0 {
        return 0;
    }
    let ok = a.abs_diff(b) <= c && c <= a + b && a + b + c <= 2 * k;
    ok as u64
}

/// Conformal block dimension for `sl2` at level `k` on a genus `g` curve
/// with the given labels, by gluing fusion matrices: `(N_1 ... N_m H^g)_{00}`
/// with handle operator `H = sum_a N_a N_a`.
pub fn sl2_verlinde(k: u32, g: u32, labels: &[u32]) -> u64 {
    let size = k as usize + 1;
    let nmat = |a: u32| -> Vec<Vec<u64>> {
        (0..size)
            .map(|x| (0..size).map(|y| sl2_fusion(k, a, x as u32, y as u32)).collect())
            .collect()
    };
    let mul = |p: &Vec<Vec<u64>>, q: &Vec<Vec<u64>>| -> Vec<Vec<u64>> {
        (0..size)
            .map(|i| (0..size).map(|j| (0..size).map(|l| p[i][l] * q[l][j]).sum()).collect())
            .collect()
    };
    let mut acc: Vec<Vec<u64>> = (0..size).map(|i| (0..size).map(|j| (i == j) as u64).collect()).collect();
    for &l in labels {
        acc = mul(&acc, &nmat(l));
    }
    let mut handle = vec![vec![0u64; size]; size];
    for a in 0..=k {
        let na = nmat(a);
        let sq = mul(&na, &na);
        for i in 0..size {
            for j in 0..size {
                handle[i][j] += sq[i][j];
            }
        }
    }
    for _ in 0..g {
        acc = mul(&acc, &handle);
    }
    acc[0][0]
}
