//! Smith normal form over the integers, used for lattice quotient orders.

/// Invariant factors `d_1 | d_2 | ...` of an integer matrix (rows need not
/// equal columns). Zero factors are included for rank deficiency.
pub fn smith_invariants(matrix: &[Vec<i128>]) -> Vec<i128> {
    let rows = matrix.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = matrix[0].len();
    let mut a: Vec<Vec<i128>> = matrix.to_vec();
    let mut out = Vec::new();
    for t in 0..rows.min(cols) {
        // Pick the smallest nonzero entry of the remaining block as pivot.
        let pivot = (t..rows)
            .flat_map(|r| (t..cols).map(move |c| (r, c)))
            .filter(|&(r, c)| a[r][c] != 0)
            .min_by_key(|&(r, c)| a[r][c].abs());
        let Some((pr, pc)) = pivot else {
            out.extend(std::iter::repeat(0).take(rows.min(cols) - t));
            break;
        };
        a.swap(t, pr);
        for row in a.iter_mut() {
            row.swap(t, pc);
        }
        loop {
            let mut dirty = false;
            for r in t + 1..rows {
                let q = a[r][t] / a[t][t];
                if q != 0 {
                    for c in t..cols {
                        a[r][c] -= q * a[t][c];
                    }
                }
                if a[r][t] != 0 {
                    dirty = true;
                }
            }
            for c in t + 1..cols {
                let q = a[t][c] / a[t][t];
                if q != 0 {
                    for r in t..rows {
                        a[r][c] -= q * a[r][t];
                    }
                }
                if a[t][c] != 0 {
                    dirty = true;
                }
            }
            if !dirty {
                // Enforce divisibility against the rest of the block.
                let bad = (t + 1..rows)
                    .flat_map(|r| (t + 1..cols).map(move |c| (r, c)))
                    .find(|&(r, c)| a[r][c] % a[t][t] != 0);
                match bad {
                    None => break,
                    Some((r, _)) => {
                        for c in t..cols {
                            a[t][c] += a[r][c];
                        }
                        continue;
                    }
                }
            }
            // Move the smallest nonzero entry of row/column t to the pivot.
            let mut best = (t, t);
            for r in t..rows {
                if a[r][t] != 0 && a[r][t].abs() < a[best.0][best.1].abs() {
                    best = (r, t);
                }
            }
            for c in t..cols {
                if a[t][c] != 0 && a[t][c].abs() < a[best.0][best.1].abs() {
                    best = (t, c);
                }
            }
            a.swap(t, best.0);
            for row in a.iter_mut() {
                row.swap(t, best.1);
            }
        }
        out.push(a[t][t].abs());
    }
    out
}

/// Order of the cokernel `Z^rows / (column span)`, or `None` if infinite.
pub fn cokernel_order(matrix: &[Vec<i128>]) -> Option<u128> {
    let rows = matrix.len();
    let inv = smith_invariants(matrix);
    if inv.len() < rows || inv.iter().any(|&d| d == 0) {
        return None;
    }
    Some(inv.iter().map(|&d| d as u128).product())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn det(m: &[Vec<i128>]) -> i128 {
        let n = m.len();
        if n == 1 {
            return m[0][0];
        }
        (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det(&minor)
            })
            .sum()
    }

    #[test]
    fn diagonal_example() {
        let m = vec![vec![2, 0], vec![0, 3]];
        assert_eq!(smith_invariants(&m), vec![1, 6]);
    }

    #[test]
    fn rectangular_generators() {
        // (2,0) and (-2,2) and (0,2): index 4.
        let m = vec![vec![2, -2, 0], vec![0, 2, 2]];
        assert_eq!(cokernel_order(&m), Some(4));
    }

    #[test]
    fn singular_has_no_order() {
        let m = vec![vec![1, 2], vec![2, 4]];
        assert_eq!(cokernel_order(&m), None);
    }

    proptest! {
        #[test]
        fn order_is_abs_det(entries in proptest::collection::vec(-6i128..=6, 9)) {
            let m: Vec<Vec<i128>> = entries.chunks(3).map(|c| c.to_vec()).collect();
            let d = det(&m).abs();
            let inv = smith_invariants(&m);
            for w in inv.windows(2) {
                if w[0] != 0 {
                    prop_assert_eq!(w[1] % w[0], 0);
                }
            }
            match cokernel_order(&m) {
                Some(o) => prop_assert_eq!(o as i128, d),
                None => prop_assert_eq!(d, 0),
            }
        }
    }
}
