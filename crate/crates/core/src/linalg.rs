//! Thin helpers over `nalgebra` for the small dense complex matrices used
//! throughout the crate.

use nalgebra::{DMatrix, DVector, Schur};
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// Eigenvalues of a square matrix, read off the diagonal of its complex Schur form.
pub fn eigenvalues(m: &CMatrix) -> Vec<Complex64> {
    let n = m.nrows();
    if n == 0 {
        return Vec::new();
    }
    let (_, t) = Schur::new(m.clone()).unpack();
    (0..n).map(|i| t[(i, i)]).collect()
}

/// Singular values in descending order.
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let mut s: Vec<f64> = m.clone().svd(false, false).singular_values.iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

pub fn spectral_norm(m: &CMatrix) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}

/// Orthonormal basis (as columns) of the right null space of `m`.
///
/// A singular value counts as zero when it is at most `abs_tol`. Short wide
/// matrices are padded with zero rows so that the full right singular basis
/// is available.
pub fn null_space(m: &CMatrix, abs_tol: f64) -> CMatrix {
    let (rows, cols) = m.shape();
    if cols == 0 {
        return CMatrix::zeros(0, 0);
    }
    let padded = if rows < cols {
        let mut p = CMatrix::zeros(cols, cols);
        p.view_mut((0, 0), (rows, cols)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("requested v_t");
    let null: Vec<CVector> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s <= abs_tol)
        .map(|(i, _)| v_t.row(i).adjoint().into_owned())
        .collect();
    if null.is_empty() {
        CMatrix::zeros(cols, 0)
    } else {
        CMatrix::from_columns(&null)
    }
}

/// Numerical rank with singular values compared against `rel_tol * σ_max`.
pub fn rank(m: &CMatrix, rel_tol: f64) -> usize {
    let s = singular_values(m);
    match s.first() {
        Some(&top) if top > 0.0 => s.iter().filter(|&&x| x > rel_tol * top).count(),
        _ => 0,
    }
}

pub fn max_abs(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn max_abs_matrix(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Inverse by partial-pivoting LU. nalgebra's `try_inverse` switches to
/// cofactor formulas up to 4×4, which lose several digits on moderately
/// conditioned inputs.
pub fn inverse(m: &CMatrix) -> Option<CMatrix> {
    m.clone().lu().try_inverse()
}

/// Complex conjugate transpose.
pub fn adjoint(m: &CMatrix) -> CMatrix {
    m.adjoint()
}

/// Splits sorted eigenvalues into groups by single linkage at distance `tau`.
///
/// Returns the groups together with the largest intra-group diameter and the
/// smallest distance between points of different groups.
pub fn cluster(values: &[Complex64], tau: f64) -> (Vec<Vec<Complex64>>, f64, f64) {
    let n = values.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        let mut c = i;
        while p[c] != r {
            let next = p[c];
            p[c] = r;
            c = next;
        }
        r
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if (values[i] - values[j]).norm() <= tau {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let mut roots: Vec<usize> = Vec::new();
    let mut groups: Vec<Vec<Complex64>> = Vec::new();
    let mut label = vec![0usize; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        let g = match roots.iter().position(|&x| x == r) {
            Some(g) => g,
            None => {
                roots.push(r);
                groups.push(Vec::new());
                roots.len() - 1
            }
        };
        label[i] = g;
        groups[g].push(values[i]);
    }
    let mut diameter: f64 = 0.0;
    let mut gap = f64::INFINITY;
    for i in 0..n {
        for j in (i + 1)..n {
            let d = (values[i] - values[j]).norm();
            if label[i] == label[j] {
                diameter = diameter.max(d);
            } else {
                gap = gap.min(d);
            }
        }
    }
    (groups, diameter, gap)
}
