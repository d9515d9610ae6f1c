use std::collections::HashMap;

use super::datum::RootDatum;
use super::types::Weight;

const MAX_RANK: usize = 8;

/// Every element of a finite Weyl group, stored as an integer matrix acting
/// on fundamental-weight coordinates (`w(v) = M v`).
///
/// Elements are listed in breadth-first order from the identity, so index 0
/// is the identity and lengths are non-decreasing.
#[derive(Debug)]
pub struct WeylGroup {
    rank: usize,
    matrices: Vec<i8>,
    lengths: Vec<u8>,
    longest: usize,
}

impl WeylGroup {
    pub(crate) fn enumerate(rd: &RootDatum) -> Self {
        let n = rd.rank();
        assert!(n <= MAX_RANK);
        let cartan = rd.cartan_matrix();
        let key = |m: &[i8]| {
            // M rho: a regular weight has a free orbit, so this is injective.
            let mut k = [0i32; MAX_RANK];
            for (r, slot) in k.iter_mut().enumerate().take(n) {
                *slot = m[r * n..(r + 1) * n].iter().map(|&x| x as i32).sum();
            }
            k
        };
        let mut identity = vec![0i8; n * n];
        for i in 0..n {
            identity[i * n + i] = 1;
        }
        let mut seen: HashMap<[i32; MAX_RANK], ()> = HashMap::new();
        seen.insert(key(&identity), ());
        let mut matrices = identity;
        let mut lengths = vec![0u8];
        let mut frontier = 0usize;
        while frontier < lengths.len() {
            let len = lengths[frontier];
            let cur: Vec<i8> = matrices[frontier * n * n..(frontier + 1) * n * n].to_vec();
            for i in 0..n {
                // S_i = I - alpha_i e_i^T, left-multiplied.
                let mut next = cur.clone();
                for r in 0..n {
                    let a = cartan[r][i];
                    if a != 0 {
                        for c in 0..n {
                            let v = next[r * n + c] as i32 - a * cur[i * n + c] as i32;
                            next[r * n + c] = i8::try_from(v).expect("Weyl matrix entry overflow");
                        }
                    }
                }
                if seen.insert(key(&next), ()).is_none() {
                    matrices.extend_from_slice(&next);
                    lengths.push(len + 1);
                }
            }
            frontier += 1;
        }
        let longest = lengths.len() - 1;
        WeylGroup {
            rank: n,
            matrices,
            lengths,
            longest,
        }
    }

    pub fn order(&self) -> usize {
        self.lengths.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn matrix(&self, idx: usize) -> &[i8] {
        let n = self.rank;
        &self.matrices[idx * n * n..(idx + 1) * n * n]
    }

    pub fn length(&self, idx: usize) -> usize {
        self.lengths[idx] as usize
    }

    pub fn sign(&self, idx: usize) -> i32 {
        if self.lengths[idx] % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn longest_element(&self) -> usize {
        self.longest
    }

    pub fn apply(&self, idx: usize, w: &Weight) -> Weight {
        let n = self.rank;
        let m = self.matrix(idx);
        Weight(
            (0..n)
                .map(|r| (0..n).map(|c| m[r * n + c] as i32 * w.0[c]).sum())
                .collect(),
        )
    }

    /// `M^T y`: the coordinates of `w^{-1}` applied to a torus point given
    /// by its pairings with the fundamental weights.
    pub(crate) fn apply_transpose(&self, idx: usize, y: &[i64], out: &mut [i64]) {
        let n = self.rank;
        let m = self.matrix(idx);
        for (c, o) in out.iter_mut().enumerate().take(n) {
            *o = (0..n).map(|r| m[r * n + c] as i64 * y[r]).sum();
        }
    }

    /// Index of the inverse element.
    pub fn inverse(&self, idx: usize) -> usize {
        let n = self.rank;
        let m = self.matrix(idx);
        // Find the element whose matrix is the inverse by its action on rho:
        // w^{-1} rho is the unique weight v with M v = rho.
        let target: Vec<i32> = vec![1; n];
        (0..self.order())
            .find(|&j| {
                let mj = self.matrix(j);
                (0..n).all(|r| {
                    (0..n)
                        .map(|k| {
                            m[r * n + k] as i32
                                * (0..n).map(|c| mj[k * n + c] as i32).sum::<i32>()
                        })
                        .sum::<i32>()
                        == target[r]
                })
            })
            .expect("group is closed under inverses")
    }
}
