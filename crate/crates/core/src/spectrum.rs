//! Characters, the Gelfand transform and the nilpotent radical.
//!
//! A character `φ` is stored by its values `φ(b_i)` on the basis. Characters
//! are exactly the common left eigenvectors of the regular representation
//! normalized by `φ(e) = 1`, since `φ(x·y) = φ(x)φ(y)` reads
//! `φ ∘ L_x = φ(x) φ`. [`characters`] finds them from a seeded generic
//! element, splits degenerate eigenspaces by restricting the remaining
//! `L_{b_i}`, and certifies every candidate before returning it.

use std::cmp::Ordering;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, Element};
use crate::linalg::{self, CMatrix, ONE, ZERO};
use crate::tolerance::{Tolerances, RANK_REL_TOL};

pub const DEFAULT_SEED: u64 = 0x5EED;
pub const DEFAULT_RETRIES: usize = 8;

/// Single-linkage radii for eigenvalues of a generic element scaled to unit
/// norm, tried in order until one gives well-separated clusters. Large
/// group algebras crowd the unit disk, so the coarse radius alone fails often.
const CLUSTER_RADII: [f64; 3] = [2e-2, 5e-3, 1.25e-3];
/// Clusters must be this many diameters apart to be trusted.
const CLUSTER_GAP_FACTOR: f64 = 4.0;
/// Singular values of `h − μ` at or below this (with `‖h‖ = 1`) span the eigenspace.
const EIGENSPACE_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectrumError {
    #[error("character certification failed after {attempts} attempts (worst residual {worst_residual:e})")]
    CertificationFailed { attempts: usize, worst_residual: f64 },
    #[error("characters are not distinct: distance {distance:e} below {threshold:e}")]
    NotDistinct { distance: f64, threshold: f64 },
    #[error("character index {0} is not a member of the subset")]
    NotMember(usize),
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("construction residual {residual:e} exceeds tolerance {tolerance:e}")]
    ResidualTooLarge { residual: f64, tolerance: f64 },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A homomorphism `φ: 𝒜 → ℂ`, stored by its values on the basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Character {
    values: Vec<Complex64>,
}

impl Character {
    /// Wraps a value vector without certifying it.
    pub fn from_values(values: Vec<Complex64>) -> Self {
        Character { values }
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn eval(&self, x: &Element) -> Complex64 {
        self.values.iter().zip(x.as_slice()).map(|(v, c)| v * c).sum()
    }

    /// `(|φ(e) − 1|, max_ij |φ(b_i b_j) − φ(b_i)φ(b_j)|)`.
    pub fn residuals(&self, a: &Algebra) -> (f64, f64) {
        let n = a.dim();
        let v = &self.values;
        let unit = (self.eval(a.unit()) - ONE).norm();
        let mut mult: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                let lhs: Complex64 = a.basis_product(i, j).iter().zip(v).map(|(c, vk)| c * vk).sum();
                mult = mult.max((lhs - v[i] * v[j]).norm());
            }
        }
        (unit, mult)
    }

    /// Worst residual if the character invariants hold within `ε_char`.
    pub fn certify(&self, a: &Algebra) -> Result<f64, f64> {
        if self.values.len() != a.dim() {
            return Err(f64::INFINITY);
        }
        let (u, m) = self.residuals(a);
        let worst = u.max(m);
        if worst.is_finite() && worst <= a.eps_char() {
            Ok(worst)
        } else {
            Err(worst)
        }
    }

    pub fn distance(&self, other: &Character) -> f64 {
        self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        linalg::max_abs(&self.values)
    }
}

/// The set ℳ of all characters of an algebra, in canonical order.
#[derive(Clone, Debug)]
pub struct CharacterSpace {
    dim: usize,
    characters: Vec<Character>,
    worst_residual: f64,
    attempts: usize,
    seed: u64,
    tol: Tolerances,
}

impl CharacterSpace {
    /// Certifies a user-supplied list of characters against `a`.
    pub fn from_characters(a: &Algebra, characters: Vec<Character>) -> Result<Self, SpectrumError> {
        let mut worst: f64 = 0.0;
        for ch in &characters {
            worst = worst
                .max(ch.certify(a).map_err(|r| SpectrumError::CertificationFailed { attempts: 0, worst_residual: r })?);
        }
        let characters = canonicalize(a, characters);
        Ok(CharacterSpace {
            dim: a.dim(),
            characters,
            worst_residual: worst,
            attempts: 0,
            seed: 0,
            tol: *a.tolerances(),
        })
    }

    pub fn len(&self) -> usize {
        self.characters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.characters.is_empty()
    }

    pub fn characters(&self) -> &[Character] {
        &self.characters
    }

    pub fn get(&self, i: usize) -> Option<&Character> {
        self.characters.get(i)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Worst unit/multiplicativity residual over all certified characters.
    pub fn worst_residual(&self) -> f64 {
        self.worst_residual
    }

    /// Generic elements tried before certification succeeded.
    pub fn attempts(&self) -> usize {
        self.attempts
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// `|ℳ| × n` matrix whose rows are the character value vectors.
    pub fn matrix(&self) -> CMatrix {
        CMatrix::from_fn(self.characters.len(), self.dim, |r, c| self.characters[r].values[c])
    }

    /// Index of the character within `δ_sep` of `ch`, if any.
    pub fn position(&self, ch: &Character) -> Option<usize> {
        self.characters.iter().position(|c| c.distance(ch) <= self.tol.separation(c.max_abs().max(ch.max_abs())))
    }

    fn check_algebra(&self, a: &Algebra) -> Result<(), SpectrumError> {
        if a.dim() != self.dim {
            return Err(AlgebraError::DimensionMismatch { expected: self.dim, found: a.dim() }.into());
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct CharacterOptions {
    pub seed: u64,
    pub retries: usize,
}

impl Default for CharacterOptions {
    fn default() -> Self {
        CharacterOptions { seed: DEFAULT_SEED, retries: DEFAULT_RETRIES }
    }
}

/// All characters of `a`, with the default seed and retry budget.
pub fn characters(a: &Algebra) -> Result<CharacterSpace, SpectrumError> {
    characters_with(a, CharacterOptions::default())
}

pub fn characters_with(a: &Algebra, opts: CharacterOptions) -> Result<CharacterSpace, SpectrumError> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let ops: Vec<CMatrix> = a.regular_basis().into_iter().map(|l| l.transpose()).collect();
    let mut worst_failure: f64 = 0.0;
    for attempt in 1..=opts.retries + 1 {
        let mut found = Vec::new();
        match split(a, &ops, &mut rng, 0, &mut found) {
            Ok(()) => {
                let mut worst: f64 = 0.0;
                let mut chars = Vec::with_capacity(found.len());
                for values in found {
                    let ch = Character::from_values(values);
                    match ch.certify(a) {
                        Ok(r) => worst = worst.max(r),
                        Err(r) => {
                            worst_failure = worst_failure.max(r);
                            chars.clear();
                            break;
                        }
                    }
                    chars.push(ch);
                }
                if chars.is_empty() {
                    continue;
                }
                let characters = canonicalize(a, chars);
                assert!(
                    characters.len() <= a.dim(),
                    "found {} characters on a {}-dimensional algebra",
                    characters.len(),
                    a.dim()
                );
                return Ok(CharacterSpace {
                    dim: a.dim(),
                    characters,
                    worst_residual: worst,
                    attempts: attempt,
                    seed: opts.seed,
                    tol: *a.tolerances(),
                });
            }
            Err(r) => worst_failure = worst_failure.max(r),
        }
    }
    Err(SpectrumError::CertificationFailed { attempts: opts.retries + 1, worst_residual: worst_failure })
}

fn random_coefficient(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

/// Splits the joint left eigenspaces of `ops` (the transposed regular
/// representation, possibly restricted to an invariant subspace) and pushes
/// one value vector per character found. `Err` carries a residual for the
/// failure report and asks the caller to retry with fresh randomness.
fn split(
    a: &Algebra,
    ops: &[CMatrix],
    rng: &mut ChaCha8Rng,
    depth: usize,
    out: &mut Vec<Vec<Complex64>>,
) -> Result<(), f64> {
    let k = ops[0].nrows();
    let mut h = CMatrix::zeros(k, k);
    for op in ops {
        h += op * random_coefficient(rng);
    }
    let scale = linalg::spectral_norm(&h);
    if !scale.is_finite() || scale <= 0.0 {
        return Err(f64::INFINITY);
    }
    h /= Complex64::new(scale, 0.0);

    let eig = linalg::eigenvalues(&h);
    let groups = CLUSTER_RADII
        .iter()
        .map(|&tau| linalg::cluster(&eig, tau))
        .find(|(groups, diameter, gap)| groups.len() == 1 || *gap >= CLUSTER_GAP_FACTOR * diameter.max(1e-3))
        .map(|(groups, _, _)| groups)
        .ok_or(f64::INFINITY)?;
    for group in groups {
        let mu = group.iter().sum::<Complex64>() / group.len() as f64;
        let shifted = &h - CMatrix::identity(k, k) * mu;
        let w = linalg::null_space(&shifted, EIGENSPACE_TOL);
        let kw = w.ncols();
        if kw == 0 {
            return Err(f64::INFINITY);
        }
        let w_adj = w.adjoint();
        let restricted: Vec<CMatrix> = ops.iter().map(|op| &w_adj * op * &w).collect();
        // Each restricted operator has the single eigenvalue φ(b_i) on this
        // eigenspace, so its normalized trace is exact even when defective.
        let values: Vec<Complex64> = restricted.iter().map(|m| m.trace() / kw as f64).collect();
        let candidate = Character::from_values(values);
        match candidate.certify(a) {
            Ok(_) => out.push(candidate.values),
            Err(r) => {
                if kw > 1 && depth < a.dim() {
                    split(a, &restricted, rng, depth + 1, out)?;
                } else {
                    return Err(r);
                }
            }
        }
    }
    Ok(())
}

/// Quantized key for a reproducible total order on value vectors.
fn order_key(v: &[Complex64], quantum: f64) -> Vec<i64> {
    v.iter().flat_map(|z| [(z.re / quantum).round() as i64, (z.im / quantum).round() as i64]).collect()
}

/// Deduplicates within `δ_sep` and sorts lexicographically by `(Re, Im)`.
fn canonicalize(a: &Algebra, chars: Vec<Character>) -> Vec<Character> {
    let mut unique: Vec<Character> = Vec::with_capacity(chars.len());
    for ch in chars {
        let dup = unique.iter().any(|u| {
            let t = a.tolerances().separation(u.max_abs().max(ch.max_abs()));
            u.distance(&ch) <= t
        });
        if !dup {
            unique.push(ch);
        }
    }
    let quantum = a.tolerances().sep_base;
    unique.sort_by(|x, y| {
        order_key(&x.values, quantum).cmp(&order_key(&y.values, quantum)).then_with(|| lex_total(&x.values, &y.values))
    });
    unique
}

fn lex_total(x: &[Complex64], y: &[Complex64]) -> Ordering {
    for (a, b) in x.iter().zip(y) {
        let o = a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im));
        if o != Ordering::Equal {
            return o;
        }
    }
    Ordering::Equal
}

/// Values `(φ(x))_{φ ∈ ℳ}` in the order of `m`.
pub fn gelfand_transform(a: &Algebra, m: &CharacterSpace, x: &Element) -> Result<Vec<Complex64>, SpectrumError> {
    m.check_algebra(a)?;
    a.check_element(x)?;
    Ok(m.characters.iter().map(|ch| ch.eval(x)).collect())
}

/// Orthonormal basis of the kernel of the Gelfand transform.
#[derive(Clone, Debug)]
pub struct RadicalSubspace {
    basis: CMatrix,
}

impl RadicalSubspace {
    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    /// `n × r` matrix with orthonormal columns.
    pub fn basis_matrix(&self) -> &CMatrix {
        &self.basis
    }

    pub fn vectors(&self) -> Vec<Element> {
        self.basis.column_iter().map(|c| Element::from_vector(c.into_owned())).collect()
    }

    /// Distance from `x` to the radical, measured after orthogonal projection.
    pub fn distance(&self, x: &Element) -> f64 {
        let v = x.coeffs();
        if self.dim() == 0 {
            return v.norm();
        }
        let proj = &self.basis * (self.basis.adjoint() * v);
        (v - proj).norm()
    }
}

/// Null space of the character matrix.
pub fn radical(a: &Algebra, m: &CharacterSpace) -> Result<RadicalSubspace, SpectrumError> {
    m.check_algebra(a)?;
    let cm = m.matrix();
    let top = linalg::spectral_norm(&cm);
    Ok(RadicalSubspace { basis: linalg::null_space(&cm, RANK_REL_TOL * top) })
}

/// Outcome of a nilpotency test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Nilpotency {
    pub nilpotent: bool,
    /// Smallest `m ≤ n` with `x^m = 0` when nilpotent.
    pub exponent: Option<u32>,
}

/// Tests `x^m = 0` for `m = 1, …, n`; `n = dim` suffices by Cayley–Hamilton.
pub fn is_nilpotent(a: &Algebra, x: &Element) -> Result<Nilpotency, SpectrumError> {
    a.check_element(x)?;
    let reg = linalg::spectral_norm(&a.left_regular_unchecked(x));
    let unit_scale = a.unit().max_norm().max(1.0);
    let mut p = x.clone();
    for m in 1..=a.dim() {
        if m > 1 {
            p = a.mul_unchecked(&p, x);
        }
        if p.max_norm() <= a.tolerances().nilpotent(reg, m) * unit_scale {
            return Ok(Nilpotency { nilpotent: true, exponent: Some(m as u32) });
        }
    }
    Ok(Nilpotency { nilpotent: false, exponent: None })
}

/// Tolerance under which a transform value counts as zero for `x`.
pub fn transform_zero_tolerance(a: &Algebra, x: &Element) -> f64 {
    1e-7 * linalg::spectral_norm(&a.left_regular_unchecked(x)).max(f64::MIN_POSITIVE)
}

/// `y` with `φ(y) = 1` and `ψ(y) = 0`, built from the basis vector on which
/// `φ` and `ψ` differ most.
pub fn separating_element(
    a: &Algebra,
    m: &CharacterSpace,
    phi: &Character,
    psi: &Character,
) -> Result<Element, SpectrumError> {
    m.check_algebra(a)?;
    let distance = phi.distance(psi);
    let threshold = a.tolerances().separation(phi.max_abs().max(psi.max_abs()));
    if distance < threshold {
        return Err(SpectrumError::NotDistinct { distance, threshold });
    }
    let n = a.dim();
    let mut best = 0;
    let mut best_gap = -1.0;
    for i in 0..n {
        let g = (phi.values[i] - psi.values[i]).norm();
        if g > best_gap {
            best_gap = g;
            best = i;
        }
    }
    let denom = phi.values[best] - psi.values[best];
    let shifted = &a.basis(best) - &a.unit().scale(psi.values[best]);
    let y = shifted.scale(ONE / denom);
    let residual = (phi.eval(&y) - ONE).norm().max(psi.eval(&y).norm());
    let tolerance = a.eps_char();
    if residual > tolerance {
        return Err(SpectrumError::ResidualTooLarge { residual, tolerance });
    }
    Ok(y)
}

/// `z` with `φ(z) = 1` and `ψ(z) = 0` for the other members `ψ` of `subset`:
/// the product of the separating elements `y_{φ,ψ}`.
///
/// `subset` and `member` index into `m`.
pub fn indicator_element(
    a: &Algebra,
    m: &CharacterSpace,
    subset: &[usize],
    member: usize,
) -> Result<Element, SpectrumError> {
    m.check_algebra(a)?;
    if !subset.contains(&member) {
        return Err(SpectrumError::NotMember(member));
    }
    let fetch = |i: usize| m.get(i).ok_or(SpectrumError::NotMember(i));
    for (p, &i) in subset.iter().enumerate() {
        for &j in &subset[p + 1..] {
            let (x, y) = (fetch(i)?, fetch(j)?);
            let distance = x.distance(y);
            let threshold = a.tolerances().separation(x.max_abs().max(y.max_abs()));
            if distance < threshold {
                return Err(SpectrumError::NotDistinct { distance, threshold });
            }
        }
    }
    let phi = fetch(member)?;
    let mut z = a.unit().clone();
    for &j in subset.iter().filter(|&&j| j != member) {
        let y = separating_element(a, m, phi, fetch(j)?)?;
        z = a.mul_unchecked(&z, &y);
    }
    let tolerance = subset.len() as f64 * a.eps_char();
    let residual = indicator_residual(m, subset, member, &z);
    if residual > tolerance {
        return Err(SpectrumError::ResidualTooLarge { residual, tolerance });
    }
    Ok(z)
}

/// `max(|φ(z) − 1|, max_{ψ ≠ φ} |ψ(z)|)` over the subset.
pub fn indicator_residual(m: &CharacterSpace, subset: &[usize], member: usize, z: &Element) -> f64 {
    subset
        .iter()
        .map(|&j| {
            let v = m.characters[j].eval(z);
            if j == member {
                (v - ONE).norm()
            } else {
                v.norm()
            }
        })
        .fold(0.0, f64::max)
}

/// `w = Σ_φ f(φ) z_φ`, so that `φ(w) = f(φ)` for every character.
pub fn interpolate(a: &Algebra, m: &CharacterSpace, f: &[Complex64]) -> Result<Element, SpectrumError> {
    m.check_algebra(a)?;
    if f.len() != m.len() {
        return Err(SpectrumError::LengthMismatch { expected: m.len(), found: f.len() });
    }
    let all: Vec<usize> = (0..m.len()).collect();
    let mut w = Element::zero(a.dim());
    for (i, &fi) in f.iter().enumerate() {
        if fi == ZERO {
            continue;
        }
        let z = indicator_element(a, m, &all, i)?;
        w = &w + &z.scale(fi);
    }
    let residual = gelfand_transform(a, m, &w)?.iter().zip(f).map(|(t, v)| (t - v).norm()).fold(0.0, f64::max);
    let tolerance = (m.len() * m.len()) as f64 * a.eps_char() * (1.0 + linalg::max_abs(f));
    if residual > tolerance {
        return Err(SpectrumError::ResidualTooLarge { residual, tolerance });
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::builtin::*;
    use crate::algebra::RawAlgebra;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn alg(raw: RawAlgebra) -> Algebra {
        Algebra::validate(&raw).unwrap()
    }

    fn close(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).norm() <= tol)
    }

    #[test]
    fn quadratic_has_two_characters() {
        let a = alg(quadratic(ONE));
        let m = characters(&a).unwrap();
        assert_eq!(m.len(), 2);
        // Lexicographic order: φ(t) = −1 first.
        assert!(close(m.characters()[0].values(), &[ONE, -ONE], 1e-12));
        assert!(close(m.characters()[1].values(), &[ONE, ONE], 1e-12));
    }

    #[test]
    fn dual_numbers_have_one_character() {
        let a = alg(dual_numbers());
        let m = characters(&a).unwrap();
        assert_eq!(m.len(), 1);
        assert!(close(m.characters()[0].values(), &[ONE, ZERO], 1e-12));
    }

    #[test]
    fn truncated_cubic_and_sextic() {
        for k in [3, 4, 6] {
            let a = alg(truncated_polynomial(k));
            let m = characters(&a).unwrap();
            assert_eq!(m.len(), 1, "k = {k}");
            let r = radical(&a, &m).unwrap();
            assert_eq!(r.dim(), k - 1);
        }
    }

    #[test]
    fn transform_examples() {
        let a = alg(quadratic(ONE));
        let m = characters(&a).unwrap();
        let te = gelfand_transform(&a, &m, a.unit()).unwrap();
        assert!(close(&te, &[ONE, ONE], 1e-12));
        let tt = gelfand_transform(&a, &m, &a.basis(1)).unwrap();
        assert!(close(&tt, &[-ONE, ONE], 1e-12));
        let d = alg(dual_numbers());
        let md = characters(&d).unwrap();
        assert!(close(&gelfand_transform(&d, &md, &d.basis(1)).unwrap(), &[ZERO], 1e-12));
        assert!(gelfand_transform(&d, &md, &Element::zero(3)).is_err());
    }

    #[test]
    fn radical_examples() {
        let a = alg(quadratic(ONE));
        assert_eq!(radical(&a, &characters(&a).unwrap()).unwrap().dim(), 0);
        let d = alg(dual_numbers());
        let r = radical(&d, &characters(&d).unwrap()).unwrap();
        assert_eq!(r.dim(), 1);
        assert!(r.distance(&d.basis(1)) < 1e-12);
        let t3 = alg(truncated_polynomial(3));
        let r3 = radical(&t3, &characters(&t3).unwrap()).unwrap();
        assert_eq!(r3.dim(), 2);
        assert!(r3.distance(&t3.basis(1)) < 1e-12);
        assert!(r3.distance(&t3.basis(2)) < 1e-12);
        assert!(r3.distance(t3.unit()) > 0.9);
    }

    #[test]
    fn nilpotency_examples() {
        let d = alg(dual_numbers());
        assert_eq!(is_nilpotent(&d, &d.basis(1)).unwrap(), Nilpotency { nilpotent: true, exponent: Some(2) });
        assert!(!is_nilpotent(&d, d.unit()).unwrap().nilpotent);
        let t3 = alg(truncated_polynomial(3));
        let x = Element::new(vec![ZERO, ONE, ONE]);
        assert_eq!(is_nilpotent(&t3, &x).unwrap().exponent, Some(3));
        assert_eq!(is_nilpotent(&t3, &Element::zero(3)).unwrap().exponent, Some(1));
    }

    #[test]
    fn separating_element_examples() {
        let a = alg(quadratic(ONE));
        let m = characters(&a).unwrap();
        let (minus, plus) = (&m.characters()[0], &m.characters()[1]);
        let y = separating_element(&a, &m, plus, minus).unwrap();
        assert!(close(y.as_slice(), &[c(0.5, 0.0), c(0.5, 0.0)], 1e-15));
        let y = separating_element(&a, &m, minus, plus).unwrap();
        assert!(close(y.as_slice(), &[c(0.5, 0.0), c(-0.5, 0.0)], 1e-15));
        assert!(matches!(separating_element(&a, &m, plus, plus), Err(SpectrumError::NotDistinct { .. })));
    }

    #[test]
    fn indicator_of_singleton_is_unit() {
        let a = alg(quadratic(ONE));
        let m = characters(&a).unwrap();
        assert_eq!(indicator_element(&a, &m, &[1], 1).unwrap(), a.unit().clone());
        assert!(matches!(indicator_element(&a, &m, &[0], 1), Err(SpectrumError::NotMember(1))));
    }

    #[test]
    fn interpolation_examples() {
        let a = alg(quadratic(ONE));
        let m = characters(&a).unwrap();
        let w = interpolate(&a, &m, &[-ONE, ONE]).unwrap();
        assert!(close(w.as_slice(), &[ZERO, ONE], 1e-15));
        let w = interpolate(&a, &m, &[ONE, ONE]).unwrap();
        assert!(close(w.as_slice(), &[ONE, ZERO], 1e-15));
        assert_eq!(interpolate(&a, &m, &[ZERO, ZERO]).unwrap(), Element::zero(2));
        assert!(matches!(interpolate(&a, &m, &[ONE]), Err(SpectrumError::LengthMismatch { expected: 2, found: 1 })));
        let d = alg(dual_numbers());
        let md = characters(&d).unwrap();
        let w = interpolate(&d, &md, &[ONE]).unwrap();
        let r = radical(&d, &md).unwrap();
        assert!(r.distance(&(&w - d.unit())) < 1e-12);
    }

    #[test]
    fn same_seed_same_bits() {
        let a = alg(diagonal(5));
        let m1 = characters(&a).unwrap();
        let m2 = characters(&a).unwrap();
        assert_eq!(m1.characters(), m2.characters());
        assert_eq!(m1.len(), 5);
    }

    #[test]
    fn from_characters_rejects_non_characters() {
        let a = alg(quadratic(ONE));
        let bad = Character::from_values(vec![ONE, c(0.5, 0.0)]);
        assert!(CharacterSpace::from_characters(&a, vec![bad]).is_err());
    }
}
