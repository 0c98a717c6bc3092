//! Commutative unital algebras given by structure constants.
//!
//! An algebra of dimension `n` is a tensor `c[i][j][k]` with
//! `b_i · b_j = Σ_k c[i][j][k] b_k` together with the coordinates of its
//! identity element. [`Algebra::validate`] is the only way to obtain an
//! [`Algebra`], so every value of that type has passed the commutativity,
//! associativity and unit checks.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{max_abs, CMatrix, CVector, ONE, ZERO};
use crate::tolerance::Tolerances;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("structure constants are not commutative at ({i}, {j}, {k}): asymmetry {asymmetry:e}")]
    NotCommutative { i: usize, j: usize, k: usize, asymmetry: f64 },
    #[error("structure constants are not associative at ({i}, {j}, {l}): residual {residual:e}")]
    NotAssociative { i: usize, j: usize, l: usize, residual: f64 },
    #[error("unit vector is not a multiplicative identity: {0}")]
    BadUnit(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// A complex number as it appears in the JSON file formats.
pub type Pair = [f64; 2];

pub fn to_pair(z: Complex64) -> Pair {
    [z.re, z.im]
}

pub fn from_pair(p: &Pair) -> Complex64 {
    Complex64::new(p[0], p[1])
}

/// Unvalidated algebra data, in the layout of the algebra input file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RawAlgebra {
    pub dim: usize,
    pub unit: Vec<Pair>,
    pub structure_constants: Vec<Vec<Vec<Pair>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis_names: Option<Vec<String>>,
}

impl RawAlgebra {
    /// Builds raw data from a flat row-major `n×n×n` tensor and a unit vector.
    pub fn from_flat(dim: usize, c: &[Complex64], unit: &[Complex64]) -> Self {
        let structure_constants = (0..dim)
            .map(|i| (0..dim).map(|j| (0..dim).map(|k| to_pair(c[(i * dim + j) * dim + k])).collect()).collect())
            .collect();
        RawAlgebra { dim, unit: unit.iter().copied().map(to_pair).collect(), structure_constants, basis_names: None }
    }

    pub fn with_names(mut self, names: &[&str]) -> Self {
        self.basis_names = Some(names.iter().map(|s| s.to_string()).collect());
        self
    }
}

/// Largest residuals seen while validating an algebra.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct Certificate {
    pub max_asymmetry: f64,
    pub max_assoc_residual: f64,
    pub max_unit_residual: f64,
}

/// Coordinates of an algebra element in the algebra's basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Element(CVector);

impl Element {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        Element(CVector::from_vec(coeffs))
    }

    pub fn from_vector(v: CVector) -> Self {
        Element(v)
    }

    pub fn zero(n: usize) -> Self {
        Element(CVector::zeros(n))
    }

    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = CVector::zeros(n);
        v[i] = ONE;
        Element(v)
    }

    pub fn from_real(values: &[f64]) -> Self {
        Element::new(values.iter().map(|&r| Complex64::new(r, 0.0)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeffs(&self) -> &CVector {
        &self.0
    }

    pub fn as_slice(&self) -> &[Complex64] {
        self.0.as_slice()
    }

    pub fn into_vector(self) -> CVector {
        self.0
    }

    pub fn scale(&self, s: Complex64) -> Element {
        Element(&self.0 * s)
    }

    /// Largest coefficient modulus.
    pub fn max_norm(&self) -> f64 {
        max_abs(self.0.as_slice())
    }

    /// Sum of coefficient moduli.
    pub fn l1_norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).sum()
    }

    pub fn conj(&self) -> Element {
        Element(self.0.map(|z| z.conj()))
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        Element(&self.0 + &rhs.0)
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        Element(&self.0 - &rhs.0)
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element(-&self.0)
    }
}

impl Mul<Complex64> for &Element {
    type Output = Element;
    fn mul(self, rhs: Complex64) -> Element {
        self.scale(rhs)
    }
}

/// A validated finite-dimensional commutative unital algebra over ℂ.
#[derive(Clone, Debug)]
pub struct Algebra {
    dim: usize,
    c: Vec<Complex64>,
    unit: Element,
    basis_names: Option<Vec<String>>,
    certificate: Certificate,
    tol: Tolerances,
    max_abs_c: f64,
}

impl Algebra {
    pub fn validate(raw: &RawAlgebra) -> Result<Algebra, AlgebraError> {
        Self::validate_with(raw, Tolerances::default())
    }

    pub fn validate_with(raw: &RawAlgebra, tol: Tolerances) -> Result<Algebra, AlgebraError> {
        let n = raw.dim;
        if n == 0 {
            return Err(AlgebraError::ShapeMismatch("dim must be at least 1".into()));
        }
        if raw.unit.len() != n {
            return Err(AlgebraError::ShapeMismatch(format!("unit has length {}, expected {n}", raw.unit.len())));
        }
        if let Some(names) = &raw.basis_names {
            if names.len() != n {
                return Err(AlgebraError::ShapeMismatch(format!(
                    "basis_names has length {}, expected {n}",
                    names.len()
                )));
            }
        }
        let sc = &raw.structure_constants;
        if sc.len() != n || sc.iter().any(|m| m.len() != n || m.iter().any(|r| r.len() != n)) {
            return Err(AlgebraError::ShapeMismatch(format!("structure_constants must be {n}×{n}×{n}")));
        }
        let mut c = vec![ZERO; n * n * n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let z = from_pair(&sc[i][j][k]);
                    if !z.re.is_finite() || !z.im.is_finite() {
                        return Err(AlgebraError::ShapeMismatch(format!(
                            "non-finite structure constant at ({i}, {j}, {k})"
                        )));
                    }
                    c[(i * n + j) * n + k] = z;
                }
            }
        }
        let unit: Vec<Complex64> = raw.unit.iter().map(from_pair).collect();
        if unit.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(AlgebraError::BadUnit("non-finite unit coordinates".into()));
        }

        // Commutativity: reject real asymmetry, symmetrize rounding noise.
        let mut max_asymmetry: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let a = (c[(i * n + j) * n + k] - c[(j * n + i) * n + k]).norm();
                    if a > tol.max_asymmetry {
                        return Err(AlgebraError::NotCommutative { i, j, k, asymmetry: a });
                    }
                    max_asymmetry = max_asymmetry.max(a);
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                for k in 0..n {
                    let s = (c[(i * n + j) * n + k] + c[(j * n + i) * n + k]) * 0.5;
                    c[(i * n + j) * n + k] = s;
                    c[(j * n + i) * n + k] = s;
                }
            }
        }

        let max_abs_c = max_abs(&c);
        let mut alg = Algebra {
            dim: n,
            c,
            unit: Element::new(unit),
            basis_names: raw.basis_names.clone(),
            certificate: Certificate::default(),
            tol,
            max_abs_c,
        };
        let eps = alg.eps_assoc();

        if alg.unit.max_norm() == 0.0 {
            return Err(AlgebraError::BadUnit("unit vector is zero".into()));
        }
        let mut max_unit_residual: f64 = 0.0;
        for i in 0..n {
            let bi = Element::basis(n, i);
            let prod = alg.mul_unchecked(&alg.unit, &bi);
            let r = (&prod - &bi).max_norm();
            max_unit_residual = max_unit_residual.max(r);
            if r > eps {
                return Err(AlgebraError::BadUnit(format!("e·b_{i} differs from b_{i} by {r:e} (tolerance {eps:e})")));
            }
        }

        // Associativity on all basis triples:
        // (b_i b_j) b_l = Σ_m c_ijm b_m b_l and b_i (b_j b_l) = Σ_m c_jlm b_i b_m.
        let mut max_assoc_residual: f64 = 0.0;
        let mut left = vec![ZERO; n];
        let mut right = vec![ZERO; n];
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    left.fill(ZERO);
                    right.fill(ZERO);
                    for m in 0..n {
                        let (p, q) = (alg.c[(i * n + j) * n + m], alg.c[(j * n + l) * n + m]);
                        if p != ZERO {
                            for (o, c) in left.iter_mut().zip(alg.basis_product(m, l)) {
                                *o += p * c;
                            }
                        }
                        if q != ZERO {
                            for (o, c) in right.iter_mut().zip(alg.basis_product(i, m)) {
                                *o += q * c;
                            }
                        }
                    }
                    let r = left.iter().zip(&right).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
                    max_assoc_residual = max_assoc_residual.max(r);
                    if r > eps {
                        return Err(AlgebraError::NotAssociative { i, j, l, residual: r });
                    }
                }
            }
        }
        alg.certificate = Certificate { max_asymmetry, max_assoc_residual, max_unit_residual };
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Complex64 {
        self.c[(i * self.dim + j) * self.dim + k]
    }

    /// Coordinates of `b_i b_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[Complex64] {
        let n = self.dim;
        &self.c[(i * n + j) * n..(i * n + j + 1) * n]
    }

    pub fn unit(&self) -> &Element {
        &self.unit
    }

    pub fn basis(&self, i: usize) -> Element {
        Element::basis(self.dim, i)
    }

    pub fn basis_names(&self) -> Option<&[String]> {
        self.basis_names.as_deref()
    }

    pub fn certificate(&self) -> &Certificate {
        &self.certificate
    }

    pub fn tolerances(&self) -> &Tolerances {
        &self.tol
    }

    /// `max |c[i][j][k]|`.
    pub fn max_abs_c(&self) -> f64 {
        self.max_abs_c
    }

    pub fn eps_assoc(&self) -> f64 {
        self.tol.assoc(self.max_abs_c)
    }

    pub fn eps_char(&self) -> f64 {
        self.tol.character(self.max_abs_c)
    }

    /// Index `i` with `unit = b_i` exactly, if the identity is a basis vector.
    pub fn unit_basis_index(&self) -> Option<usize> {
        let u = self.unit.as_slice();
        let i = u.iter().position(|z| *z == ONE)?;
        u.iter().enumerate().all(|(k, z)| k == i || *z == ZERO).then_some(i)
    }

    pub fn to_raw(&self) -> RawAlgebra {
        let mut raw = RawAlgebra::from_flat(self.dim, &self.c, self.unit.as_slice());
        raw.basis_names = self.basis_names.clone();
        raw
    }

    pub fn check_element(&self, x: &Element) -> Result<(), AlgebraError> {
        if x.len() != self.dim {
            return Err(AlgebraError::DimensionMismatch { expected: self.dim, found: x.len() });
        }
        Ok(())
    }

    /// Product of two elements, `Σ_{ij} x_i y_j c[i][j][·]`.
    ///
    /// The sum runs over unordered pairs `{i, j}`, so `multiply(x, y)` and
    /// `multiply(y, x)` agree bit for bit.
    pub fn multiply(&self, x: &Element, y: &Element) -> Result<Element, AlgebraError> {
        self.check_element(x)?;
        self.check_element(y)?;
        Ok(self.mul_unchecked(x, y))
    }

    pub(crate) fn mul_unchecked(&self, x: &Element, y: &Element) -> Element {
        let n = self.dim;
        let (xs, ys) = (x.as_slice(), y.as_slice());
        let mut out = vec![ZERO; n];
        for i in 0..n {
            for j in i..n {
                let w = if i == j { xs[i] * ys[i] } else { xs[i] * ys[j] + xs[j] * ys[i] };
                if w == ZERO {
                    continue;
                }
                for (o, c) in out.iter_mut().zip(self.basis_product(i, j)) {
                    *o += w * c;
                }
            }
        }
        Element::new(out)
    }

    /// Matrix of `y ↦ x·y`; column `j` holds the coordinates of `x·b_j`.
    pub fn left_regular(&self, x: &Element) -> Result<CMatrix, AlgebraError> {
        self.check_element(x)?;
        Ok(self.left_regular_unchecked(x))
    }

    pub(crate) fn left_regular_unchecked(&self, x: &Element) -> CMatrix {
        let n = self.dim;
        let xs = x.as_slice();
        let mut l = CMatrix::zeros(n, n);
        for (i, &xi) in xs.iter().enumerate() {
            if xi == ZERO {
                continue;
            }
            for j in 0..n {
                for (k, c) in self.basis_product(i, j).iter().enumerate() {
                    l[(k, j)] += xi * c;
                }
            }
        }
        l
    }

    /// `L_{b_i}` for every basis vector.
    pub fn regular_basis(&self) -> Vec<CMatrix> {
        (0..self.dim).map(|i| self.left_regular_unchecked(&self.basis(i))).collect()
    }

    /// `x^m`, computed as `L_x^m · e` by repeated squaring; `x^0 = e`.
    pub fn power(&self, x: &Element, m: u32) -> Result<Element, AlgebraError> {
        self.check_element(x)?;
        let n = self.dim;
        let mut base = self.left_regular_unchecked(x);
        let mut acc = CMatrix::identity(n, n);
        let mut e = m;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(Element::from_vector(acc * self.unit.coeffs()))
    }
}

/// Small named algebras used by tests, examples and the built-in corpus.
pub mod builtin {
    use super::*;

    /// ℂ[t]/(t^k) in the monomial basis `1, t, …, t^{k−1}`.
    pub fn truncated_polynomial(k: usize) -> RawAlgebra {
        assert!(k >= 1);
        let mut c = vec![ZERO; k * k * k];
        for i in 0..k {
            for j in 0..k {
                if i + j < k {
                    c[(i * k + j) * k + i + j] = ONE;
                }
            }
        }
        let names: Vec<String> = (0..k)
            .map(|i| match i {
                0 => "e".to_string(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            })
            .collect();
        let mut raw = RawAlgebra::from_flat(k, &c, Element::basis(k, 0).as_slice());
        raw.basis_names = Some(names);
        raw
    }

    /// Dual numbers ℂ[ε]/(ε²) in the basis `e, ε`.
    pub fn dual_numbers() -> RawAlgebra {
        truncated_polynomial(2).with_names(&["e", "eps"])
    }

    /// ℂ[t]/(t² − a) in the basis `e, t`.
    pub fn quadratic(a: Complex64) -> RawAlgebra {
        let mut c = vec![ZERO; 8];
        c[0] = ONE; // e·e = e
        c[3] = ONE; // e·t = t
        c[5] = ONE; // t·e = t
        c[6] = a; // t·t = a e
        RawAlgebra::from_flat(2, &c, &[ONE, ZERO]).with_names(&["e", "t"])
    }

    /// ℂ^n with coordinatewise product and idempotent basis.
    pub fn diagonal(n: usize) -> RawAlgebra {
        let mut c = vec![ZERO; n * n * n];
        for i in 0..n {
            c[(i * n + i) * n + i] = ONE;
        }
        RawAlgebra::from_flat(n, &c, &vec![ONE; n])
    }
}
