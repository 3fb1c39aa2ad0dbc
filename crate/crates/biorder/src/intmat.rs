//! Exact integer matrix routines: fraction-free determinant, rank, and
//! membership of a vector in the lattice spanned by a set of rows. All
//! arithmetic is over `i128` with checked operations.

fn checked_mul(a: i128, b: i128) -> i128 {
    a.checked_mul(b).expect("integer overflow in matrix arithmetic")
}

/// Determinant of a square matrix by Bareiss fraction-free elimination.
/// All intermediate divisions are exact.
pub fn determinant(mat: &[Vec<i128>]) -> i128 {
    let n = mat.len();
    if n == 0 {
        return 1;
    }
    for row in mat {
        assert_eq!(row.len(), n, "determinant requires a square matrix");
    }
    let mut m: Vec<Vec<i128>> = mat.to_vec();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&i| m[i][k] != 0) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = checked_mul(m[i][j], m[k][k]) - checked_mul(m[i][k], m[k][j]);
                debug_assert_eq!(num % prev, 0);
                m[i][j] = num / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// Row echelon form over the integers using Euclidean row combinations only,
/// so the row lattice is preserved exactly. Returns the nonzero rows with
/// positive pivots, pivot columns strictly increasing.
pub fn lattice_echelon(rows: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let mut m: Vec<Vec<i128>> = rows.iter().filter(|r| r.iter().any(|&x| x != 0)).cloned().collect();
    if m.is_empty() {
        return m;
    }
    let ncols = m[0].len();
    let mut r = 0;
    for c in 0..ncols {
        // Euclidean sweep: leave at most one nonzero entry in column c among
        // rows r.. by repeated quotient-remainder combinations.
        loop {
            let mut nz: Vec<usize> = (r..m.len()).filter(|&i| m[i][c] != 0).collect();
            if nz.len() <= 1 {
                break;
            }
            nz.sort_by_key(|&i| m[i][c].unsigned_abs());
            let (small, big) = (nz[0], nz[1]);
            let q = m[big][c] / m[small][c];
            for j in 0..ncols {
                m[big][j] -= checked_mul(q, m[small][j]);
            }
        }
        if let Some(i) = (r..m.len()).find(|&i| m[i][c] != 0) {
            m.swap(r, i);
            if m[r][c] < 0 {
                for x in m[r].iter_mut() {
                    *x = -*x;
                }
            }
            r += 1;
        }
    }
    m.truncate(r);
    m
}

/// Rank of the row space.
pub fn rank(rows: &[Vec<i128>]) -> usize {
    lattice_echelon(rows).len()
}

/// Whether `v` lies in the lattice spanned by the given echelon rows
/// (as produced by [`lattice_echelon`]).
pub fn in_lattice(echelon: &[Vec<i128>], v: &[i128]) -> bool {
    let mut v = v.to_vec();
    for row in echelon {
        let c = row.iter().position(|&x| x != 0).expect("echelon rows are nonzero");
        if v[c] != 0 {
            if v[c] % row[c] != 0 {
                return false;
            }
            let q = v[c] / row[c];
            for j in 0..v.len() {
                v[j] -= checked_mul(q, row[j]);
            }
        }
    }
    v.iter().all(|&x| x == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_small_cases() {
        assert_eq!(determinant(&[vec![5]]), 5);
        assert_eq!(determinant(&[vec![1, 2], vec![3, 4]]), -2);
        assert_eq!(
            determinant(&[vec![2, 0, 1], vec![1, 1, 0], vec![0, 3, 1]]),
            5
        );
        assert_eq!(determinant(&[vec![1, 1], vec![2, 2]]), 0);
        // Zero leading pivot forces a swap.
        assert_eq!(determinant(&[vec![0, 1], vec![1, 0]]), -1);
    }

    #[test]
    fn rank_counts_independent_rows() {
        assert_eq!(rank(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(rank(&[vec![1, 0], vec![0, 1], vec![1, 1]]), 2);
        assert_eq!(rank(&[vec![0, 0]]), 0);
    }

    #[test]
    fn lattice_membership() {
        // Lattice spanned by (2, 0) and (0, 3).
        let e = lattice_echelon(&[vec![2, 0], vec![0, 3]]);
        assert!(in_lattice(&e, &[4, 3]));
        assert!(!in_lattice(&e, &[1, 0]));
        assert!(!in_lattice(&e, &[2, 2]));
        assert!(in_lattice(&e, &[0, 0]));
        // Lattice spanned by (1, 1) only.
        let e = lattice_echelon(&[vec![1, 1]]);
        assert!(in_lattice(&e, &[5, 5]));
        assert!(!in_lattice(&e, &[5, 4]));
        // The empty lattice contains only zero.
        let e = lattice_echelon(&[vec![0, 0]]);
        assert!(in_lattice(&e, &[0, 0]));
        assert!(!in_lattice(&e, &[0, 1]));
    }
}
