//! Commutative adjoint-closed algebras of operators on a finite-dimensional
//! inner-product space.
//!
//! The inner product is `⟨v, w⟩ = wᴴ G v` for a Hermitian positive-definite
//! Gram matrix `G`, so the adjoint of `T` is `G⁻¹ Tᴴ G`.

use nalgebra::SymmetricEigen;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{from_pair, Algebra, AlgebraError, Element, Pair, RawAlgebra};
use crate::involution::{Involution, InvolutionError};
use crate::linalg::{self, CMatrix, ZERO};
use crate::spectrum::{self, CharacterOptions, CharacterSpace, SpectrumError};
use crate::tolerance::RANK_REL_TOL;

/// Relative commutator tolerance for generators and their adjoints.
const COMMUTE_TOL: f64 = 1e-8;
/// Residual allowed when re-expanding products in the operator basis.
const CLOSURE_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OperatorError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("gram matrix is not Hermitian positive definite: {0}")]
    BadGram(String),
    #[error("operators {0} and {1} do not commute (commutator norm {2:e})")]
    NotCommutative(usize, usize, f64),
    #[error("closure produced {0} basis operators, more than d² = {1}")]
    ClosureOverflow(usize, usize),
    #[error("closure residual {0:e} exceeds {CLOSURE_TOL:e}")]
    ClosureResidual(f64),
    #[error("operator is not self-adjoint (residual {0:e})")]
    SelfAdjointnessViolated(f64),
    #[error("property violated ({clause}): {detail}")]
    PropertyViolated { clause: &'static str, detail: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Involution(#[from] InvolutionError),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
}

/// Operator-model input file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawOperatorModel {
    pub dim: usize,
    pub gram: Vec<Vec<Pair>>,
    pub generators: Vec<Vec<Vec<Pair>>>,
}

pub fn matrix_from_pairs(rows: &[Vec<Pair>], d: usize) -> Result<CMatrix, OperatorError> {
    if rows.len() != d || rows.iter().any(|r| r.len() != d) {
        return Err(OperatorError::ShapeMismatch(format!("expected a {d}×{d} matrix")));
    }
    Ok(CMatrix::from_fn(d, d, |r, c| from_pair(&rows[r][c])))
}

#[derive(Clone, Debug)]
pub struct InnerProductSpace {
    gram: CMatrix,
    gram_inv: CMatrix,
    condition: f64,
}

impl InnerProductSpace {
    pub fn new(gram: CMatrix) -> Result<Self, OperatorError> {
        let (d, c) = gram.shape();
        if d == 0 || d != c {
            return Err(OperatorError::ShapeMismatch(format!("gram matrix is {d}×{c}")));
        }
        let scale = linalg::max_abs_matrix(&gram).max(1.0);
        let asym = linalg::max_abs_matrix(&(&gram - gram.adjoint()));
        if asym > 1e-12 * scale {
            return Err(OperatorError::BadGram(format!("asymmetry {asym:e}")));
        }
        let herm = (&gram + gram.adjoint()) * Complex64::new(0.5, 0.0);
        let eig = SymmetricEigen::new(herm.clone()).eigenvalues;
        let lo = eig.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = eig.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if !lo.is_finite() || !hi.is_finite() || lo <= 1e-10 * hi {
            return Err(OperatorError::BadGram(format!("smallest eigenvalue {lo:e} vs largest {hi:e}")));
        }
        let gram_inv =
            herm.clone().cholesky().map(|ch| ch.inverse()).ok_or_else(|| OperatorError::BadGram("singular".into()))?;
        Ok(InnerProductSpace { gram: herm, gram_inv, condition: hi / lo })
    }

    /// The standard inner product on ℂ^d.
    pub fn euclidean(d: usize) -> Self {
        Self::new(CMatrix::identity(d, d)).expect("identity is a valid gram matrix")
    }

    pub fn dim(&self) -> usize {
        self.gram.nrows()
    }

    pub fn gram(&self) -> &CMatrix {
        &self.gram
    }

    /// Spectral condition number of `G`.
    pub fn condition(&self) -> f64 {
        self.condition
    }

    /// `⟨v, w⟩ = wᴴ G v`.
    pub fn inner(&self, v: &linalg::CVector, w: &linalg::CVector) -> Complex64 {
        (w.adjoint() * &self.gram * v)[(0, 0)]
    }

    fn check(&self, t: &CMatrix) -> Result<(), OperatorError> {
        let d = self.dim();
        if t.shape() != (d, d) {
            return Err(OperatorError::ShapeMismatch(format!(
                "operator is {}×{}, space has dimension {d}",
                t.nrows(),
                t.ncols()
            )));
        }
        Ok(())
    }
}

/// `T* = G⁻¹ Tᴴ G`, the unique map with `⟨Tv, w⟩ = ⟨v, T*w⟩`.
pub fn adjoint(space: &InnerProductSpace, t: &CMatrix) -> Result<CMatrix, OperatorError> {
    space.check(t)?;
    Ok(&space.gram_inv * t.adjoint() * &space.gram)
}

/// `max_{ij} |⟨T e_i, e_j⟩ − ⟨e_i, T* e_j⟩|`.
pub fn adjoint_identity_residual(space: &InnerProductSpace, t: &CMatrix, t_star: &CMatrix) -> f64 {
    // ⟨T e_i, e_j⟩ = (G T)_{ji},  ⟨e_i, T* e_j⟩ = (T*ᴴ G)_{ji}
    linalg::max_abs_matrix(&(&space.gram * t - t_star.adjoint() * &space.gram))
}

/// Tolerance scale `‖T‖ ‖G‖ ‖G⁻¹‖` for the adjoint identity.
pub fn adjoint_residual_scale(space: &InnerProductSpace, t: &CMatrix) -> f64 {
    linalg::spectral_norm(t) * linalg::spectral_norm(&space.gram) * linalg::spectral_norm(&space.gram_inv)
}

#[derive(Clone, Debug)]
pub struct OperatorAlgebra {
    space: InnerProductSpace,
    generators: Vec<CMatrix>,
    basis_ops: Vec<CMatrix>,
    algebra: Algebra,
    involution: Involution,
    closure_residual: f64,
}

impl OperatorAlgebra {
    pub fn space(&self) -> &InnerProductSpace {
        &self.space
    }

    pub fn generators(&self) -> &[CMatrix] {
        &self.generators
    }

    /// Basis operators; the first is the identity.
    pub fn basis_ops(&self) -> &[CMatrix] {
        &self.basis_ops
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn involution(&self) -> &Involution {
        &self.involution
    }

    pub fn closure_residual(&self) -> f64 {
        self.closure_residual
    }

    pub fn dim(&self) -> usize {
        self.basis_ops.len()
    }

    /// Operator with the given coordinates in the basis.
    pub fn operator(&self, x: &Element) -> CMatrix {
        let d = self.space.dim();
        let mut t = CMatrix::zeros(d, d);
        for (b, c) in self.basis_ops.iter().zip(x.as_slice()) {
            t += b * *c;
        }
        t
    }

    /// Coordinates of an operator in the span of the basis.
    pub fn coordinates(&self, t: &CMatrix) -> Element {
        let d = self.space.dim() as f64;
        Element::new(self.basis_ops.iter().map(|b| frob(b, t) / d).collect())
    }
}

/// Frobenius inner product `tr(Aᴴ B)`.
fn frob(a: &CMatrix, b: &CMatrix) -> Complex64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

/// Unital algebra generated by `generators` and their adjoints.
///
/// The basis starts with the identity; later elements are Frobenius-orthogonal
/// to all earlier ones and share its Frobenius norm `√d`, so the structure
/// constants are plain projections.
pub fn generate_star_subalgebra(
    space: &InnerProductSpace,
    generators: &[CMatrix],
) -> Result<OperatorAlgebra, OperatorError> {
    let d = space.dim();
    for g in generators {
        space.check(g)?;
    }
    let mut family: Vec<CMatrix> = generators.to_vec();
    for g in generators {
        family.push(adjoint(space, g)?);
    }
    for i in 0..family.len() {
        for j in (i + 1)..family.len() {
            let (x, y) = (&family[i], &family[j]);
            let comm = (x * y - y * x).norm();
            if comm > COMMUTE_TOL * x.norm() * y.norm() {
                return Err(OperatorError::NotCommutative(i, j, comm));
            }
        }
    }

    let target_norm = (d as f64).sqrt();
    let mut basis: Vec<CMatrix> = vec![CMatrix::identity(d, d)];
    let mut next = 0;
    while next < basis.len() {
        let current = basis[next].clone();
        next += 1;
        for x in &family {
            let cand = x * &current;
            let cn = cand.norm();
            if cn == 0.0 {
                continue;
            }
            let mut r = cand / Complex64::new(cn, 0.0);
            // two passes of Gram–Schmidt
            for _ in 0..2 {
                for b in &basis {
                    let coef = frob(b, &r) / (d as f64);
                    r -= b * coef;
                }
            }
            let rn = r.norm();
            // unit-norm candidate: rn is its smallest singular value against the basis
            if rn > RANK_REL_TOL {
                basis.push(r * Complex64::new(target_norm / rn, 0.0));
                if basis.len() > d * d {
                    return Err(OperatorError::ClosureOverflow(basis.len(), d * d));
                }
            }
        }
    }

    let n = basis.len();
    let mut c = vec![ZERO; n * n * n];
    let mut closure_residual: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            let p = &basis[i] * &basis[j];
            let mut recon = CMatrix::zeros(d, d);
            for k in 0..n {
                let coef = frob(&basis[k], &p) / (d as f64);
                c[(i * n + j) * n + k] = coef;
                c[(j * n + i) * n + k] = coef;
                recon += &basis[k] * coef;
            }
            let res = (&recon - &p).norm() / p.norm().max(1.0);
            closure_residual = closure_residual.max(res);
        }
    }
    let mut unit = vec![ZERO; n];
    unit[0] = linalg::ONE;
    let raw = RawAlgebra::from_flat(n, &c, &unit);

    let mut star_action = CMatrix::zeros(n, n);
    for i in 0..n {
        let a = adjoint(space, &basis[i])?;
        let mut recon = CMatrix::zeros(d, d);
        for k in 0..n {
            let coef = frob(&basis[k], &a) / (d as f64);
            star_action[(k, i)] = coef;
            recon += &basis[k] * coef;
        }
        closure_residual = closure_residual.max((&recon - &a).norm() / a.norm().max(1.0));
    }
    if closure_residual > CLOSURE_TOL {
        return Err(OperatorError::ClosureResidual(closure_residual));
    }
    let algebra = Algebra::validate(&raw)?;
    let involution = Involution::new(&algebra, star_action)?;
    Ok(OperatorAlgebra {
        space: space.clone(),
        generators: generators.to_vec(),
        basis_ops: basis,
        algebra,
        involution,
        closure_residual,
    })
}

/// Outcome of checking `T = T*, T² ≈ 0 ⟹ T ≈ 0`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SelfAdjointNilpotentReport {
    pub t_norm: f64,
    pub t2_norm: f64,
    pub hypothesis_met: bool,
    /// `κ(G)^{3/4} √ε`: how large `‖T‖₂` may be when `‖T²‖₂ ≤ ε`.
    pub bound: f64,
    pub pass: bool,
}

/// For self-adjoint `T`, `‖Tv‖² = ⟨T²v, v⟩` forces `‖T‖_G² = ‖T²‖_G`;
/// converting to Euclidean norms costs a factor `κ(G)^{3/4}`.
pub fn check_selfadjoint_nilpotent(
    space: &InnerProductSpace,
    t: &CMatrix,
    eps: f64,
) -> Result<SelfAdjointNilpotentReport, OperatorError> {
    let ts = adjoint(space, t)?;
    let t_norm = linalg::spectral_norm(t);
    let sa = linalg::spectral_norm(&(&ts - t));
    if sa > 1e-8 * t_norm {
        return Err(OperatorError::SelfAdjointnessViolated(sa));
    }
    let t2_norm = linalg::spectral_norm(&(t * t));
    let hypothesis_met = t2_norm <= eps;
    let bound = space.condition.powf(0.75) * eps.sqrt();
    let pass = !hypothesis_met || t_norm <= bound * (1.0 + 1e-9);
    Ok(SelfAdjointNilpotentReport { t_norm, t2_norm, hypothesis_met, bound, pass })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IsomorphismReport {
    pub dim: usize,
    pub characters: usize,
    pub radical_dim: usize,
    /// `max |φ(T*) − conj φ(T)|` over characters and basis operators.
    pub star_residual: f64,
    /// `max |Im φ(T)|` over characters and self-adjoint parts of basis operators.
    pub real_residual: f64,
    /// Largest scaled adjoint-identity residual over basis operators.
    pub adjoint_residual: f64,
    pub pass: bool,
}

/// Verifies that the Gelfand transform of the embedded algebra is an
/// isomorphism taking the adjoint to complex conjugation.
pub fn verify_gelfand_isomorphism(opalg: &OperatorAlgebra, seed: u64) -> Result<IsomorphismReport, OperatorError> {
    let a = &opalg.algebra;
    let m: CharacterSpace = spectrum::characters_with(a, CharacterOptions { seed, ..Default::default() })?;
    let rad = spectrum::radical(a, &m)?;
    let n = a.dim();
    if rad.dim() != 0 {
        return Err(OperatorError::PropertyViolated {
            clause: "radical",
            detail: format!("radical has dimension {}", rad.dim()),
        });
    }
    if m.len() != n {
        return Err(OperatorError::PropertyViolated {
            clause: "count",
            detail: format!("{} characters on a {n}-dimensional algebra", m.len()),
        });
    }
    let eps = 1e-8;
    let mut star_residual: f64 = 0.0;
    let mut real_residual: f64 = 0.0;
    let mut adjoint_res: f64 = 0.0;
    for (i, b) in opalg.basis_ops.iter().enumerate() {
        let bs = adjoint(&opalg.space, b)?;
        adjoint_res = adjoint_res
            .max(adjoint_identity_residual(&opalg.space, b, &bs) / adjoint_residual_scale(&opalg.space, b).max(1.0));
        let x = a.basis(i);
        let xs = crate::involution::star(a, &opalg.involution, &x)?;
        let (p1, p2) = crate::involution::selfadjoint_parts(a, &opalg.involution, &x)?;
        for ch in m.characters() {
            star_residual = star_residual.max((ch.eval(&xs) - ch.eval(&x).conj()).norm());
            real_residual = real_residual.max(ch.eval(&p1).im.abs()).max(ch.eval(&p2).im.abs());
        }
    }
    if star_residual > eps {
        return Err(OperatorError::PropertyViolated {
            clause: "star",
            detail: format!("|φ(T*) − conj φ(T)| = {star_residual:e}"),
        });
    }
    if real_residual > eps {
        return Err(OperatorError::PropertyViolated {
            clause: "real",
            detail: format!("|Im φ(T)| = {real_residual:e} on a self-adjoint T"),
        });
    }
    Ok(IsomorphismReport {
        dim: n,
        characters: m.len(),
        radical_dim: 0,
        star_residual,
        real_residual,
        adjoint_residual: adjoint_res,
        pass: true,
    })
}
