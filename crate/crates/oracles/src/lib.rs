//! Slow, independent reference computations for tests.
//!
//! None of these reuse the production algorithms: characters come from
//! Newton's method on the defining polynomial system, the radical from the
//! trace form, conjugacy classes from union-find over all conjugations, and
//! the abelian transform from explicit exponential sums.

use gelfand::algebra::Algebra;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

type C = Complex64;

/// Equations `Σ_k c[i][j][k] v_k − v_i v_j` for `i ≤ j`, then `Σ_i u_i v_i − 1`.
fn residual(a: &Algebra, v: &[C]) -> DVector<C> {
    let n = a.dim();
    let mut f = Vec::with_capacity(n * (n + 1) / 2 + 1);
    for i in 0..n {
        for j in i..n {
            let lin: C = (0..n).map(|k| a.structure_constant(i, j, k) * v[k]).sum();
            f.push(lin - v[i] * v[j]);
        }
    }
    let u = a.unit().as_slice();
    f.push((0..n).map(|i| u[i] * v[i]).sum::<C>() - C::new(1.0, 0.0));
    DVector::from_vec(f)
}

fn jacobian(a: &Algebra, v: &[C]) -> DMatrix<C> {
    let n = a.dim();
    let rows = n * (n + 1) / 2 + 1;
    let mut jm = DMatrix::zeros(rows, n);
    let mut r = 0;
    for i in 0..n {
        for j in i..n {
            for k in 0..n {
                jm[(r, k)] = a.structure_constant(i, j, k);
            }
            jm[(r, i)] -= v[j];
            jm[(r, j)] -= v[i];
            r += 1;
        }
    }
    for (k, u) in a.unit().as_slice().iter().enumerate() {
        jm[(r, k)] = *u;
    }
    jm
}

fn inf_norm(v: &DVector<C>) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Gauss–Newton from one start; `None` if it does not reach a root.
pub fn newton_from(a: &Algebra, start: &[C]) -> Option<Vec<C>> {
    let scale = 1.0
        + (0..a.dim().pow(3))
            .map(|t| {
                let n = a.dim();
                a.structure_constant(t / (n * n), (t / n) % n, t % n).norm()
            })
            .fold(0.0, f64::max);
    // near a multiple root the iterates wander at rounding level, so keep the best one
    let mut v = start.to_vec();
    let mut best = (f64::INFINITY, v.clone());
    for _ in 0..400 {
        let f = residual(a, &v);
        let r = inf_norm(&f);
        if r < best.0 {
            best = (r, v.clone());
        }
        if r == 0.0 {
            break;
        }
        let svd = jacobian(a, &v).svd(true, true);
        let step = svd.solve(&(-f), 1e-300).ok()?;
        let size = inf_norm(&step);
        for (x, d) in v.iter_mut().zip(step.iter()) {
            *x += d;
        }
        let vmax = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if !vmax.is_finite() || vmax > 1e6 {
            return None;
        }
        if size <= 1e-17 * (1.0 + vmax) {
            break;
        }
    }
    let r = inf_norm(&residual(a, &v));
    if r < best.0 {
        best = (r, v);
    }
    let vmax = best.1.iter().map(|z| z.norm()).fold(0.0, f64::max);
    (best.0 <= 1e-12 * scale * (1.0 + vmax).powi(2)).then_some(best.1)
}

/// Default start grid per coordinate: real parts in `{−3, −1.5, 0, 1.5, 3}`,
/// imaginary parts in `{−1.5, 0, 1.5}`.
pub fn default_grid() -> Vec<C> {
    let mut g = Vec::new();
    for re in [-3.0, -1.5, 0.0, 1.5, 3.0] {
        for im in [-1.5, 0.0, 1.5] {
            g.push(C::new(re, im));
        }
    }
    g
}

/// All characters of a small algebra (dimension ≤ 3 is practical), as
/// value vectors, deduplicated at `dedup`.
pub fn newton_characters(a: &Algebra, grid: &[C], dedup: f64) -> Vec<Vec<C>> {
    let n = a.dim();
    let total = grid.len().pow(n as u32);
    let mut found: Vec<Vec<C>> = Vec::new();
    for mut idx in 0..total {
        let start: Vec<C> = (0..n)
            .map(|_| {
                let g = grid[idx % grid.len()];
                idx /= grid.len();
                g
            })
            .collect();
        if let Some(v) = newton_from(a, &start) {
            if !found.iter().any(|w| dist(w, &v) <= dedup) {
                found.push(v);
            }
        }
    }
    found
}

pub fn dist(x: &[C], y: &[C]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
}

/// Worst distance of a one-to-one matching between two families, or `None`
/// if the sizes differ or no match exists within `tol`.
pub fn match_sets(xs: &[Vec<C>], ys: &[Vec<C>], tol: f64) -> Option<f64> {
    if xs.len() != ys.len() {
        return None;
    }
    let mut used = vec![false; ys.len()];
    let mut worst: f64 = 0.0;
    for x in xs {
        let (j, d) = ys
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, y)| (j, dist(x, y)))
            .min_by(|p, q| p.1.total_cmp(&q.1))?;
        if d > tol {
            return None;
        }
        used[j] = true;
        worst = worst.max(d);
    }
    Some(worst)
}

/// Radical dimension from the trace form `τ(x, y) = tr L_{xy}`, whose kernel
/// is the radical in characteristic zero.
pub fn trace_form_radical_dim(a: &Algebra) -> usize {
    let n = a.dim();
    let tr: Vec<C> = (0..n).map(|k| (0..n).map(|m| a.structure_constant(k, m, m)).sum()).collect();
    let t = DMatrix::from_fn(n, n, |i, j| (0..n).map(|k| a.structure_constant(i, j, k) * tr[k]).sum::<C>());
    let sv = t.singular_values();
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    let rank = sv.iter().filter(|&&s| s > 1e-9 * smax.max(1.0)).count();
    n - rank
}

/// Conjugacy classes by merging `g` with `x g x⁻¹` for every pair, sorted
/// by smallest member.
pub fn brute_force_classes(table: &[Vec<usize>], identity: usize) -> Vec<Vec<usize>> {
    let n = table.len();
    let inv: Vec<usize> = (0..n).map(|x| (0..n).find(|&y| table[x][y] == identity).expect("inverse")).collect();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for x in 0..n {
        for g in 0..n {
            let h = table[table[x][g]][inv[x]];
            let (a, b) = (find(&mut parent, g), find(&mut parent, h));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for g in 0..n {
        let r = find(&mut parent, g);
        match classes.iter_mut().find(|c| find(&mut parent, c[0]) == r) {
            Some(c) => c.push(g),
            None => classes.push(vec![g]),
        }
    }
    classes
}

/// `(Σ_a x_a e^{2πi k a / n})_k`, the transform of `x` on `ℤ_n` under the
/// character `δ_1 ↦ e^{2πi k/n}`.
pub fn exponential_sum_dft(x: &[C]) -> Vec<C> {
    let n = x.len();
    (0..n)
        .map(|k| {
            x.iter()
                .enumerate()
                .map(|(a, xa)| xa * C::from_polar(1.0, std::f64::consts::TAU * (k * a) as f64 / n as f64))
                .sum()
        })
        .collect()
}
