//! Exact linear algebra over Q(i).

use num_traits::{One, Zero};

use super::rational::GaussianRational;

/// Dense matrix stored by rows.
pub type Matrix = Vec<Vec<GaussianRational>>;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().unwrap();
        for k in c..cols {
            m[r][k] = &m[r][k] * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in c..cols {
                    let t = &f * &m[r][k];
                    m[i][k] -= &t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the right nullspace of `m` (with `cols` columns).
pub fn nullspace(m: &Matrix, cols: usize) -> Vec<Vec<GaussianRational>> {
    let mut a = m.clone();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![GaussianRational::zero(); cols];
            v[f] = GaussianRational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -&a[r][f];
            }
            v
        })
        .collect()
}

/// Solve `m v = rhs`; `None` when inconsistent. Free variables are set to zero.
pub fn solve(m: &Matrix, rhs: &[GaussianRational]) -> Option<Vec<GaussianRational>> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut a: Matrix = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = rref(&mut a);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut v = vec![GaussianRational::zero(); cols];
    for (r, &p) in pivots.iter().enumerate() {
        v[p] = a[r][cols].clone();
    }
    Some(v)
}

/// Determinant of a square matrix by Gaussian elimination.
pub fn determinant(m: &Matrix) -> GaussianRational {
    let n = m.len();
    let mut a = m.clone();
    let mut det = GaussianRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return GaussianRational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det = &det * &a[c][c];
        let inv = a[c][c].inv().unwrap();
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] * &inv;
            for k in c..n {
                let v = &a[c][k] * &f;
                a[r][k] -= &v;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    #[test]
    fn solve_and_nullspace() {
        let m = vec![vec![g(1), g(2), g(3)], vec![g(2), g(4), g(7)]];
        let v = solve(&m, &[g(1), g(3)]).unwrap();
        for (row, b) in m.iter().zip([g(1), g(3)]) {
            let s = row.iter().zip(&v).fold(g(0), |acc, (a, x)| &acc + &(a * x));
            assert_eq!(s, b);
        }
        let ns = nullspace(&m, 3);
        assert_eq!(ns, vec![vec![g(-2), g(1), g(0)]]);
        assert!(solve(&vec![vec![g(1)], vec![g(1)]], &[g(1), g(2)]).is_none());
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&vec![vec![g(0), g(1)], vec![g(1), g(0)]]), g(-1));
        let m = vec![vec![g(2), g(0), g(1)], vec![g(1), g(3), g(2)], vec![g(1), g(1), g(2)]];
        assert_eq!(determinant(&m), g(6));
        assert_eq!(determinant(&vec![vec![g(1), g(2)], vec![g(2), g(4)]]), g(0));
    }
}
