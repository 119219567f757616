//! Simultaneous triangularization by repeated common-eigenvector deflation.
//!
//! A vector is an eigenvector of every generator exactly when it is one of every element of
//! the Lie algebra they generate, so the search runs on the generators. Each level picks a
//! non-scalar generator, walks its eigenvalue clusters, shrinks the eigenspace to its largest
//! subspace invariant under all generators and recurses there; a vector found this way is
//! split off by a unitary change of basis and the quotient is treated the same way.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde_json::{json, Value};

use super::{matrix_json, FuchsianError};

/// Largest accepted dimension.
pub const MAX_DIMENSION: usize = 12;
/// Relative distance below which eigenvalues are merged into one cluster.
pub const CLUSTER_TOL: f64 = 1e-8;
/// Singular values within this factor above a rank threshold mark the decision as borderline.
const BORDERLINE: f64 = 100.0;
/// Rank decisions use this fraction of the tolerance; acceptance of an eigenvector uses half.
const NULL_FRACTION: f64 = 0.1;

/// Unitary basis in which every matrix is upper triangular.
#[derive(Clone, Debug)]
pub struct Triangularization {
    /// Columns form the new basis.
    pub basis: DMatrix<Complex64>,
    /// `basis^-1 M_i basis` for each input matrix.
    pub conjugated: Vec<DMatrix<Complex64>>,
    /// Largest below-diagonal entry relative to the norm of its matrix.
    pub max_below_diagonal: f64,
}

/// Subquotient on which the matrices share no eigenvector.
#[derive(Clone, Debug)]
pub struct Obstruction {
    /// Orthonormal basis of the complement of the common flag found so far.
    pub subspace: DMatrix<Complex64>,
    /// Induced action of each input matrix on the subquotient.
    pub quotient: Vec<DMatrix<Complex64>>,
    /// Two generators that already have no common eigenvector there, when such a pair exists.
    pub pair: Option<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub enum TriangularOutcome {
    Yes(Triangularization),
    No(Obstruction),
}

#[derive(Clone, Debug)]
pub struct TriangularReport {
    pub outcome: TriangularOutcome,
    /// A rank or clustering decision fell close to its threshold.
    pub ambiguous: bool,
}

impl TriangularReport {
    pub fn is_yes(&self) -> bool {
        matches!(self.outcome, TriangularOutcome::Yes(_))
    }

    pub fn to_json(&self) -> Value {
        match &self.outcome {
            TriangularOutcome::Yes(t) => json!({
                "triangularizable": true,
                "ambiguous": self.ambiguous,
                "basis": matrix_json(&t.basis),
                "max_below_diagonal": t.max_below_diagonal,
            }),
            TriangularOutcome::No(o) => json!({
                "triangularizable": false,
                "ambiguous": self.ambiguous,
                "witness_dimension": o.subspace.ncols(),
                "witness_subspace": matrix_json(&o.subspace),
                "witness_pair": o.pair.map(|(a, b)| vec![a, b]),
            }),
        }
    }
}

struct Search {
    mats: Vec<DMatrix<Complex64>>,
    tol: f64,
    ambiguous: bool,
}

/// Right singular vectors of `m` for singular values at most `threshold`, as columns.
fn null_space(m: &DMatrix<Complex64>, threshold: f64, ambiguous: &mut bool) -> DMatrix<Complex64> {
    let cols = m.ncols();
    let padded = if m.nrows() < cols {
        let mut p = DMatrix::<Complex64>::zeros(cols, cols);
        p.view_mut((0, 0), (m.nrows(), cols)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(false, true);
    let vt = svd.v_t.expect("requested");
    let mut picked = Vec::new();
    for (k, &s) in svd.singular_values.iter().enumerate() {
        if s <= threshold {
            picked.push(vt.row(k).adjoint());
        } else if s <= BORDERLINE * threshold {
            *ambiguous = true;
        }
    }
    if picked.is_empty() {
        DMatrix::zeros(cols, 0)
    } else {
        DMatrix::from_columns(&picked)
    }
}

fn eigenvalues(m: &DMatrix<Complex64>) -> Vec<Complex64> {
    let t = m.clone().schur().unpack().1;
    (0..t.nrows()).map(|k| t[(k, k)]).collect()
}

/// Single-linkage clusters; returns (mean, members).
fn clusters(values: &[Complex64], radius: f64) -> Vec<(Complex64, Vec<Complex64>)> {
    let mut groups: Vec<Vec<Complex64>> = Vec::new();
    for &v in values {
        let hits: Vec<usize> =
            (0..groups.len()).filter(|&g| groups[g].iter().any(|w| (w - v).norm() <= radius)).collect();
        let mut merged = vec![v];
        for &g in hits.iter().rev() {
            merged.extend(groups.remove(g));
        }
        groups.push(merged);
    }
    groups.into_iter().map(|g| (g.iter().sum::<Complex64>() / g.len() as f64, g)).collect()
}

impl Search {
    fn threshold(&self) -> f64 {
        NULL_FRACTION * self.tol
    }

    /// Largest subspace of span(`w`) mapped into itself by every matrix in `c`.
    fn largest_invariant(&mut self, c: &[DMatrix<Complex64>], mut w: DMatrix<Complex64>) -> DMatrix<Complex64> {
        loop {
            let e = w.ncols();
            if e == 0 {
                return w;
            }
            let d = w.nrows();
            let proj = DMatrix::<Complex64>::identity(d, d) - &w * w.adjoint();
            let mut stacked = DMatrix::<Complex64>::zeros(d * c.len(), e);
            for (i, m) in c.iter().enumerate() {
                stacked.view_mut((i * d, 0), (d, e)).copy_from(&(&proj * m * &w));
            }
            let k = null_space(&stacked, self.threshold(), &mut self.ambiguous);
            if k.ncols() == e {
                return w;
            }
            w = &w * k;
        }
    }

    /// A common eigenvector of `c` inside span(`q`), an invariant subspace with orthonormal basis.
    fn common_eigenvector(&mut self, c: &[DMatrix<Complex64>], q: &DMatrix<Complex64>) -> Option<DVector<Complex64>> {
        let e = q.ncols();
        if e == 1 || c.is_empty() {
            return Some(q.column(0).into_owned());
        }
        let r: Vec<DMatrix<Complex64>> = c.iter().map(|m| q.adjoint() * m * q).collect();
        let id = DMatrix::<Complex64>::identity(e, e);
        let pivot = r.iter().position(|m| {
            let mean = m.trace() / e as f64;
            (m - &id * mean).norm() > self.threshold()
        });
        let Some(j) = pivot else {
            return Some(q.column(0).into_owned());
        };
        let radius = CLUSTER_TOL * r[j].norm().max(1.0);
        for (mean, members) in clusters(&eigenvalues(&r[j]), radius) {
            let mut candidates = vec![mean];
            let mut k = null_space(&(&r[j] - &id * mean), self.threshold(), &mut self.ambiguous);
            if k.ncols() == 0 && members.len() > 1 {
                // merging may have hidden distinct eigenvalues
                self.ambiguous = true;
                candidates = members;
                k = DMatrix::zeros(e, 0);
            }
            for lambda in candidates {
                if k.ncols() == 0 {
                    k = null_space(&(&r[j] - &id * lambda), self.threshold(), &mut self.ambiguous);
                }
                if k.ncols() > 0 && k.ncols() < e {
                    let w = self.largest_invariant(c, q * &k);
                    if w.ncols() > 0 && w.ncols() < e {
                        if let Some(v) = self.common_eigenvector(c, &w) {
                            return Some(v);
                        }
                    }
                }
                k = DMatrix::zeros(e, 0);
            }
        }
        None
    }

    fn is_eigenvector(&self, c: &[DMatrix<Complex64>], v: &DVector<Complex64>) -> bool {
        c.iter().all(|m| {
            let mv = m * v;
            let lambda = v.dotc(&mv);
            (mv - v * lambda).norm() <= 0.5 * self.tol
        })
    }
}

/// Unitary matrix whose first column is the unit vector `v`.
fn complete_basis(v: &DVector<Complex64>) -> DMatrix<Complex64> {
    let d = v.len();
    let mut a = DMatrix::<Complex64>::zeros(d, d + 1);
    a.set_column(0, v);
    for k in 0..d {
        a[(k, k + 1)] = Complex64::new(1.0, 0.0);
    }
    let q = a.qr().q();
    let mut q = q.columns(0, d).into_owned();
    // restore the phase of the first column
    let phase = q.column(0).dotc(v);
    let phase = phase / phase.norm();
    let first = q.column(0) * phase;
    q.set_column(0, &first);
    q
}

/// Whether `mats` are simultaneously upper triangular in some basis, with tolerance `tol`
/// relative to each matrix norm.
pub fn simultaneous_triangularizable(mats: &[DMatrix<Complex64>], tol: f64) -> Result<TriangularReport, FuchsianError> {
    let Some(first) = mats.first() else {
        return Err(FuchsianError::NoMatrices);
    };
    let n = first.nrows();
    for (index, m) in mats.iter().enumerate() {
        if m.nrows() != n || m.ncols() != n {
            return Err(FuchsianError::DimensionMismatch { index, rows: m.nrows(), cols: m.ncols(), expected: n });
        }
    }
    if n > MAX_DIMENSION {
        return Err(FuchsianError::TooLarge { dimension: n, max: MAX_DIMENSION });
    }
    // scale to unit norm; zero matrices are triangular in every basis
    let active: Vec<usize> = (0..mats.len()).filter(|&i| mats[i].norm() > 0.0).collect();
    let scaled: Vec<DMatrix<Complex64>> =
        active.iter().map(|&i| &mats[i] / Complex64::new(mats[i].norm(), 0.0)).collect();
    let mut search = Search { mats: scaled, tol, ambiguous: false };

    let mut basis = DMatrix::<Complex64>::identity(n, n);
    let mut current = search.mats.clone();
    for level in 0..n {
        let d = n - level;
        let id = DMatrix::<Complex64>::identity(d, d);
        let found = search
            .common_eigenvector(&current, &id)
            .map(|v| v.normalize())
            .filter(|v| search.is_eigenvector(&current, v));
        let Some(v) = found else {
            let pair = witness_pair(&mut search, &current);
            let subspace = basis.columns(level, d).into_owned();
            let quotient = mats.iter().map(|m| subspace.adjoint() * m * &subspace).collect();
            let outcome = TriangularOutcome::No(Obstruction {
                subspace,
                quotient,
                pair: pair.map(|(a, b)| (active[a], active[b])),
            });
            return Ok(TriangularReport { outcome, ambiguous: search.ambiguous });
        };
        let q = complete_basis(&v);
        let block = basis.columns(level, d) * &q;
        basis.columns_mut(level, d).copy_from(&block);
        current = current.iter().map(|m| (q.adjoint() * m * &q).view((1, 1), (d - 1, d - 1)).into_owned()).collect();
    }
    let conjugated: Vec<DMatrix<Complex64>> = mats.iter().map(|m| basis.adjoint() * m * &basis).collect();
    let mut worst = 0.0f64;
    for (m, t) in mats.iter().zip(&conjugated) {
        let norm = m.norm();
        if norm == 0.0 {
            continue;
        }
        for i in 0..n {
            for j in 0..i {
                worst = worst.max(t[(i, j)].norm() / norm);
            }
        }
    }
    let outcome = TriangularOutcome::Yes(Triangularization { basis, conjugated, max_below_diagonal: worst });
    Ok(TriangularReport { outcome, ambiguous: search.ambiguous })
}

fn witness_pair(search: &mut Search, current: &[DMatrix<Complex64>]) -> Option<(usize, usize)> {
    let d = current.first()?.nrows();
    let id = DMatrix::<Complex64>::identity(d, d);
    for a in 0..current.len() {
        for b in a + 1..current.len() {
            let pair = [current[a].clone(), current[b].clone()];
            if search.common_eigenvector(&pair, &id).is_none() {
                return Some((a, b));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[f64]]) -> DMatrix<Complex64> {
        let n = rows.len();
        DMatrix::from_fn(n, n, |i, j| Complex64::new(rows[i][j], 0.0))
    }

    #[test]
    fn single_matrix_is_schur() {
        let a = m(&[&[1.0, 2.0, 0.0], &[-3.0, 0.5, 1.0], &[0.0, 4.0, -2.0]]);
        let r = simultaneous_triangularizable(&[a], 1e-8).unwrap();
        let TriangularOutcome::Yes(t) = r.outcome else { panic!("expected yes") };
        assert!(t.max_below_diagonal <= 1e-8);
        let u = &t.basis;
        assert!((u.adjoint() * u - DMatrix::identity(3, 3)).norm() < 1e-12);
    }

    #[test]
    fn upper_pair_keeps_identity_flag() {
        let e = m(&[&[0.0, 1.0], &[0.0, 0.0]]);
        let h = m(&[&[1.0, 0.0], &[0.0, -1.0]]);
        let r = simultaneous_triangularizable(&[e, h], 1e-8).unwrap();
        let TriangularOutcome::Yes(t) = r.outcome else { panic!("expected yes") };
        assert!(t.max_below_diagonal <= 1e-12);
        // the first basis vector spans the common eigenline e_1
        assert!(t.basis[(1, 0)].norm() < 1e-12);
    }

    #[test]
    fn sl2_pair_has_no_common_eigenvector() {
        let e = m(&[&[0.0, 1.0], &[0.0, 0.0]]);
        let f = m(&[&[0.0, 0.0], &[1.0, 0.0]]);
        let r = simultaneous_triangularizable(&[e, f], 1e-8).unwrap();
        let TriangularOutcome::No(o) = r.outcome else { panic!("expected no") };
        assert_eq!(o.subspace.ncols(), 2);
        assert_eq!(o.pair, Some((0, 1)));
    }

    #[test]
    fn zero_and_scalar_matrices() {
        let z = DMatrix::<Complex64>::zeros(3, 3);
        let s = DMatrix::<Complex64>::identity(3, 3) * Complex64::new(2.0, 1.0);
        assert!(simultaneous_triangularizable(&[z, s], 1e-8).unwrap().is_yes());
    }

    #[test]
    fn rejects_bad_input() {
        let a = DMatrix::<Complex64>::zeros(2, 2);
        let b = DMatrix::<Complex64>::zeros(3, 3);
        assert!(matches!(
            simultaneous_triangularizable(&[a, b], 1e-8),
            Err(FuchsianError::DimensionMismatch { index: 1, .. })
        ));
        let big = DMatrix::<Complex64>::zeros(13, 13);
        assert!(matches!(simultaneous_triangularizable(&[big], 1e-8), Err(FuchsianError::TooLarge { .. })));
        assert!(matches!(simultaneous_triangularizable(&[], 1e-8), Err(FuchsianError::NoMatrices)));
    }

    #[test]
    fn block_obstruction_after_deflation() {
        // common eigenvector e_1, then an sl2 pair on the quotient
        let a = m(&[&[1.0, 1.0, 0.0], &[0.0, 0.0, 1.0], &[0.0, 0.0, 0.0]]);
        let b = m(&[&[2.0, 0.0, 1.0], &[0.0, 0.0, 0.0], &[0.0, 1.0, 0.0]]);
        let r = simultaneous_triangularizable(&[a, b], 1e-8).unwrap();
        let TriangularOutcome::No(o) = r.outcome else { panic!("expected no") };
        assert_eq!(o.subspace.ncols(), 2);
    }
}
