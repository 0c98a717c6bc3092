//! Conjugate-linear involutions `x ↦ x*`.
//!
//! An involution is stored by the matrix `S` whose column `i` holds the
//! coordinates of `b_i*`; then `x* = S · conj(x)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{from_pair, to_pair, Algebra, AlgebraError, Element, Pair};
use crate::linalg::{self, CMatrix, ONE};
use crate::spectrum::{self, Character, CharacterSpace, SpectrumError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InvolutionError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("not involutive: ‖S·conj(S) − I‖ = {0:e}")]
    NotInvolutive(f64),
    #[error("not multiplicative at ({i}, {j}): residual {residual:e}")]
    NotMultiplicative { i: usize, j: usize, residual: f64 },
    #[error("identity not fixed: ‖e* − e‖ = {0:e}")]
    NotUnital(f64),
    #[error("conjugate character failed certification (residual {0:e})")]
    CertificationFailed(f64),
    #[error("property violated: {0}")]
    PropertyViolated(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
}

/// Involution data as attached to an algebra file under `"involution"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawInvolution {
    pub action: Vec<Vec<Pair>>,
}

/// A certified involution on a specific algebra.
#[derive(Clone, Debug)]
pub struct Involution {
    action: CMatrix,
    residual: f64,
}

impl Involution {
    pub fn new(a: &Algebra, action: CMatrix) -> Result<Self, InvolutionError> {
        let n = a.dim();
        if action.shape() != (n, n) {
            return Err(InvolutionError::ShapeMismatch(format!(
                "action is {}×{}, expected {n}×{n}",
                action.nrows(),
                action.ncols()
            )));
        }
        let eps = a.eps_char();
        let involutive = linalg::max_abs_matrix(&(&action * action.map(|z| z.conj()) - CMatrix::identity(n, n)));
        if involutive > eps {
            return Err(InvolutionError::NotInvolutive(involutive));
        }
        let s = Involution { action, residual: 0.0 };
        let unital = (&s.apply(a.unit()) - a.unit()).max_norm();
        if unital > eps {
            return Err(InvolutionError::NotUnital(unital));
        }
        let mut multiplicative: f64 = 0.0;
        for i in 0..n {
            let si = s.image_of_basis(i);
            for j in i..n {
                let sj = s.image_of_basis(j);
                let lhs = s.apply(&Element::new(a.basis_product(i, j).to_vec()));
                let rhs = a.mul_unchecked(&si, &sj);
                let r = (&lhs - &rhs).max_norm();
                if r > eps {
                    return Err(InvolutionError::NotMultiplicative { i, j, residual: r });
                }
                multiplicative = multiplicative.max(r);
            }
        }
        Ok(Involution { residual: involutive.max(unital).max(multiplicative), ..s })
    }

    pub fn from_raw(a: &Algebra, raw: &RawInvolution) -> Result<Self, InvolutionError> {
        let n = a.dim();
        if raw.action.len() != n || raw.action.iter().any(|r| r.len() != n) {
            return Err(InvolutionError::ShapeMismatch(format!("action must be {n}×{n}")));
        }
        let m = CMatrix::from_fn(n, n, |r, c| from_pair(&raw.action[r][c]));
        Self::new(a, m)
    }

    /// Basis permutation `b_i* = b_{perm[i]}`.
    pub fn from_permutation(a: &Algebra, perm: &[usize]) -> Result<Self, InvolutionError> {
        let n = a.dim();
        if perm.len() != n || perm.iter().any(|&p| p >= n) {
            return Err(InvolutionError::ShapeMismatch("permutation has wrong length or range".into()));
        }
        let mut m = CMatrix::zeros(n, n);
        for (i, &p) in perm.iter().enumerate() {
            m[(p, i)] = ONE;
        }
        Self::new(a, m)
    }

    /// `b_i* = b_i` for every basis vector.
    pub fn identity_on_basis(a: &Algebra) -> Result<Self, InvolutionError> {
        Self::new(a, CMatrix::identity(a.dim(), a.dim()))
    }

    pub fn action(&self) -> &CMatrix {
        &self.action
    }

    /// Largest residual seen during certification.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    pub fn to_raw(&self) -> RawInvolution {
        RawInvolution { action: self.action.row_iter().map(|r| r.iter().copied().map(to_pair).collect()).collect() }
    }

    fn apply(&self, x: &Element) -> Element {
        Element::from_vector(&self.action * x.coeffs().map(|z| z.conj()))
    }

    fn image_of_basis(&self, i: usize) -> Element {
        Element::from_vector(self.action.column(i).into_owned())
    }
}

pub fn star(a: &Algebra, s: &Involution, x: &Element) -> Result<Element, InvolutionError> {
    a.check_element(x)?;
    if s.action.nrows() != a.dim() {
        return Err(AlgebraError::DimensionMismatch { expected: a.dim(), found: s.action.nrows() }.into());
    }
    Ok(s.apply(x))
}

#[derive(Clone, Debug)]
pub struct ConjugateCharacter {
    pub character: Character,
    /// Whether the result coincides with the input within `δ_sep`.
    pub equal: bool,
    pub residual: f64,
}

/// `ψ(x) = conj(φ(x*))`, certified as a character.
pub fn conjugate_character(
    a: &Algebra,
    s: &Involution,
    phi: &Character,
) -> Result<ConjugateCharacter, InvolutionError> {
    let n = a.dim();
    if phi.values().len() != n {
        return Err(AlgebraError::DimensionMismatch { expected: n, found: phi.values().len() }.into());
    }
    // ψ(b_i) = conj(Σ_k S_ki φ(b_k))
    let values: Vec<Complex64> = (0..n)
        .map(|i| s.action.column(i).iter().zip(phi.values()).map(|(sk, vk)| sk * vk).sum::<Complex64>().conj())
        .collect();
    let psi = Character::from_values(values);
    let residual = psi.certify(a).map_err(InvolutionError::CertificationFailed)?;
    let threshold = a.tolerances().separation(phi.max_abs().max(psi.max_abs()));
    let equal = phi.distance(&psi) <= threshold;
    Ok(ConjugateCharacter { character: psi, equal, residual })
}

/// `(x₁, x₂)` with `x = x₁ + i x₂` and both parts self-adjoint.
pub fn selfadjoint_parts(a: &Algebra, s: &Involution, x: &Element) -> Result<(Element, Element), InvolutionError> {
    let xs = star(a, s, x)?;
    let half = Complex64::new(0.5, 0.0);
    let x1 = (x + &xs).scale(half);
    // (x − x*)/(2i) = −i (x − x*)/2
    let x2 = (x - &xs).scale(Complex64::new(0.0, -0.5));
    Ok((x1, x2))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpanReport {
    pub radical_dim: usize,
    pub worst_residual: f64,
    pub pass: bool,
}

/// For each radical basis vector `x`, checks that both self-adjoint parts
/// of `x` are again annihilated by every character.
pub fn radical_selfadjoint_span_check(
    a: &Algebra,
    s: &Involution,
    m: &CharacterSpace,
) -> Result<SpanReport, InvolutionError> {
    let rad = spectrum::radical(a, m)?;
    let eps = a.eps_char();
    let mut worst: f64 = 0.0;
    for x in rad.vectors() {
        let (x1, x2) = selfadjoint_parts(a, s, &x)?;
        for part in [&x1, &x2] {
            let fixed = (&star(a, s, part)? - part).max_norm();
            let t = spectrum::gelfand_transform(a, m, part)?;
            let r = linalg::max_abs(&t).max(fixed);
            if r > eps {
                return Err(InvolutionError::PropertyViolated(format!(
                    "self-adjoint part {:?} of a radical vector has residual {r:e}",
                    part.as_slice()
                )));
            }
            worst = worst.max(r);
        }
    }
    Ok(SpanReport { radical_dim: rad.dim(), worst_residual: worst, pass: true })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::builtin::*;
    use crate::linalg::{I, ZERO};
    use crate::spectrum::characters;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn star_fixes_unit_and_is_conjugate_linear() {
        let a = Algebra::validate(&quadratic(ONE)).unwrap();
        let s = Involution::identity_on_basis(&a).unwrap();
        assert_eq!(star(&a, &s, a.unit()).unwrap(), a.unit().clone());
        let x = Element::new(vec![c(1.0, 2.0), c(-0.5, 0.25)]);
        let lam = c(0.3, -1.7);
        assert_eq!(star(&a, &s, &x.scale(lam)).unwrap(), star(&a, &s, &x).unwrap().scale(lam.conj()));
    }

    #[test]
    fn swap_involution_on_product_algebra() {
        // ℂ×ℂ with (a, b)* = (conj b, conj a)
        let a = Algebra::validate(&diagonal(2)).unwrap();
        let s = Involution::from_permutation(&a, &[1, 0]).unwrap();
        let m = characters(&a).unwrap();
        let first = Character::from_values(vec![ONE, ZERO]);
        let idx = m.position(&first).unwrap();
        let cc = conjugate_character(&a, &s, &m.characters()[idx]).unwrap();
        assert!(!cc.equal);
        assert_eq!(cc.character.values(), &[ZERO, ONE]);
    }

    #[test]
    fn non_involutive_and_non_multiplicative_are_rejected() {
        let a = Algebra::validate(&quadratic(ONE)).unwrap();
        let bad = CMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, c(2.0, 0.0)]);
        assert!(matches!(Involution::new(&a, bad), Err(InvolutionError::NotInvolutive(_))));
        // t* = i t: S conj(S) = diag(1, i·(−i)) = I but (t t)* = e ≠ (i t)(i t) = −e.
        let m = CMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, I]);
        assert!(matches!(Involution::new(&a, m), Err(InvolutionError::NotMultiplicative { .. })));
        let wrong_unit = CMatrix::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO]);
        assert!(matches!(Involution::new(&a, wrong_unit), Err(InvolutionError::NotUnital(_))));
    }

    #[test]
    fn selfadjoint_part_examples() {
        let a = Algebra::validate(&quadratic(ONE)).unwrap();
        let s = Involution::identity_on_basis(&a).unwrap();
        let y = Element::new(vec![c(0.5, 0.0), c(-2.0, 0.0)]);
        let (x1, x2) = selfadjoint_parts(&a, &s, &y).unwrap();
        assert_eq!(x1, y);
        assert_eq!(x2, Element::zero(2));
        let (x1, x2) = selfadjoint_parts(&a, &s, &y.scale(I)).unwrap();
        assert_eq!(x1, Element::zero(2));
        assert_eq!(x2, y);
    }

    #[test]
    fn dual_number_radical_span() {
        let d = Algebra::validate(&dual_numbers()).unwrap();
        let m = characters(&d).unwrap();
        let fix = Involution::identity_on_basis(&d).unwrap();
        let r = radical_selfadjoint_span_check(&d, &fix, &m).unwrap();
        assert_eq!(r.radical_dim, 1);
        assert!(r.pass);
        let neg = Involution::new(&d, CMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE])).unwrap();
        let (x1, x2) = selfadjoint_parts(&d, &neg, &d.basis(1)).unwrap();
        assert_eq!(x1, Element::zero(2));
        // (ε − (−ε))/(2i) = −iε, fixed by the involution since conj(−i)·(−1) = −i.
        assert_eq!(x2, Element::new(vec![ZERO, -I]));
        assert_eq!(star(&d, &neg, &x2).unwrap(), x2);
        assert!(radical_selfadjoint_span_check(&d, &neg, &m).unwrap().pass);
    }

    #[test]
    fn raw_round_trip() {
        let a = Algebra::validate(&quadratic(ONE)).unwrap();
        let s = Involution::identity_on_basis(&a).unwrap();
        let back = Involution::from_raw(&a, &s.to_raw()).unwrap();
        assert_eq!(back.action(), s.action());
    }
}
