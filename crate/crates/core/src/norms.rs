//! Submultiplicative algebra norms and the contraction `|φ(x)| ≤ ‖x‖`.
//!
//! Three families are available, each certified at construction to satisfy
//! `‖e‖ = 1`:
//!
//! * the spectral norm of the left regular representation `‖L_x‖₂`;
//! * the sup norm of the Gelfand transform, `max_φ |φ(x)|` (a seminorm when
//!   the radical is nonzero);
//! * a weighted ℓ¹ norm `Σ w_i |x_i|`, admissible when
//!   `w_i w_j ≥ Σ_k |c[i][j][k]| w_k` for every basis pair.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, Element};
use crate::exec::Exec;
use crate::linalg;
use crate::spectrum::{CharacterSpace, SpectrumError, DEFAULT_SEED};
use crate::tolerance::CONTRACTION_SLACK;

/// Relative slack on the weighted-ℓ¹ basis-pair certificate and on `‖e‖ = 1`.
const WEIGHT_SLACK: f64 = 1e-12;

pub const DEFAULT_SAMPLES: usize = 1000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NormError {
    #[error("invalid norm: {0}")]
    InvalidNorm(String),
    #[error("contraction violated: |φ(x)|/‖x‖ = {ratio} for character {character}")]
    ContractionViolated { ratio: f64, character: usize, witness: Vec<Complex64> },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NormKind {
    RegularOperatorNorm,
    SupOnCharacters,
    UserWeightedL1,
}

impl NormKind {
    pub const ALL: [NormKind; 3] = [NormKind::RegularOperatorNorm, NormKind::SupOnCharacters, NormKind::UserWeightedL1];

    pub fn name(self) -> &'static str {
        match self {
            NormKind::RegularOperatorNorm => "regular-operator-norm",
            NormKind::SupOnCharacters => "sup-on-characters",
            NormKind::UserWeightedL1 => "user-weighted-l1",
        }
    }
}

#[derive(Clone, Debug)]
pub enum AlgebraNorm {
    RegularOperator,
    SupOnCharacters(CharacterSpace),
    WeightedL1(Vec<f64>),
}

impl AlgebraNorm {
    pub fn regular_operator() -> Self {
        AlgebraNorm::RegularOperator
    }

    pub fn sup_on_characters(a: &Algebra, m: &CharacterSpace) -> Result<Self, NormError> {
        if m.dim() != a.dim() {
            return Err(AlgebraError::DimensionMismatch { expected: a.dim(), found: m.dim() }.into());
        }
        Ok(AlgebraNorm::SupOnCharacters(m.clone()))
    }

    /// Weighted ℓ¹ norm; checks positivity, the basis-pair certificate and `‖e‖ = 1`.
    pub fn weighted_l1(a: &Algebra, weights: Vec<f64>) -> Result<Self, NormError> {
        let n = a.dim();
        if weights.len() != n {
            return Err(NormError::InvalidNorm(format!("expected {n} weights, found {}", weights.len())));
        }
        if let Some(i) = weights.iter().position(|w| !w.is_finite() || *w <= 0.0) {
            return Err(NormError::InvalidNorm(format!("weight {i} is not a positive finite number")));
        }
        for i in 0..n {
            for j in i..n {
                let rhs: f64 = a.basis_product(i, j).iter().zip(&weights).map(|(c, w)| c.norm() * w).sum();
                let lhs = weights[i] * weights[j];
                if lhs < rhs * (1.0 - WEIGHT_SLACK) {
                    return Err(NormError::InvalidNorm(format!(
                        "w_{i} w_{j} = {lhs} < Σ_k |c[{i}][{j}][k]| w_k = {rhs}"
                    )));
                }
            }
        }
        let unit_norm: f64 = a.unit().as_slice().iter().zip(&weights).map(|(u, w)| u.norm() * w).sum();
        if (unit_norm - 1.0).abs() > WEIGHT_SLACK {
            return Err(NormError::InvalidNorm(format!("‖e‖ = {unit_norm}, expected 1")));
        }
        Ok(AlgebraNorm::WeightedL1(weights))
    }

    /// Weighted ℓ¹ norm with weight 1 on the identity basis vector and a
    /// common weight `W` on the others, `W` being the smallest value passing
    /// the basis-pair certificate.
    pub fn auto_weighted_l1(a: &Algebra) -> Result<Self, NormError> {
        let u = a
            .unit_basis_index()
            .ok_or_else(|| NormError::InvalidNorm("automatic weights need the identity to be a basis vector".into()))?;
        let n = a.dim();
        let mut w: f64 = 1.0;
        for i in (0..n).filter(|&i| i != u) {
            for j in (i..n).filter(|&j| j != u) {
                let p = a.basis_product(i, j);
                let s: f64 = p.iter().enumerate().filter(|(k, _)| *k != u).map(|(_, c)| c.norm()).sum();
                let c0 = p[u].norm();
                // W² ≥ c0 + W s
                w = w.max(0.5 * (s + (s * s + 4.0 * c0).sqrt()));
            }
        }
        let mut weights = vec![w; n];
        weights[u] = 1.0;
        Self::weighted_l1(a, weights)
    }

    /// Builds the norm of the given kind with default parameters.
    pub fn of_kind(kind: NormKind, a: &Algebra, m: &CharacterSpace) -> Result<Self, NormError> {
        match kind {
            NormKind::RegularOperatorNorm => Ok(Self::regular_operator()),
            NormKind::SupOnCharacters => Self::sup_on_characters(a, m),
            NormKind::UserWeightedL1 => Self::auto_weighted_l1(a),
        }
    }

    pub fn kind(&self) -> NormKind {
        match self {
            AlgebraNorm::RegularOperator => NormKind::RegularOperatorNorm,
            AlgebraNorm::SupOnCharacters(_) => NormKind::SupOnCharacters,
            AlgebraNorm::WeightedL1(_) => NormKind::UserWeightedL1,
        }
    }

    pub fn norm(&self, a: &Algebra, x: &Element) -> Result<f64, NormError> {
        a.check_element(x)?;
        Ok(match self {
            AlgebraNorm::RegularOperator => linalg::spectral_norm(&a.left_regular(x)?),
            AlgebraNorm::SupOnCharacters(m) => sup_abs(m, x),
            AlgebraNorm::WeightedL1(w) => x.as_slice().iter().zip(w).map(|(z, wi)| z.norm() * wi).sum(),
        })
    }
}

fn sup_abs(m: &CharacterSpace, x: &Element) -> f64 {
    m.characters().iter().map(|ch| ch.eval(x).norm()).fold(0.0, f64::max)
}

/// Uniform samples in the complex unit square, drawn sequentially.
pub fn sample_elements(n: usize, count: usize, seed: u64) -> Vec<Element> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            Element::new(
                (0..n).map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect(),
            )
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ContractionReport {
    pub norm: NormKind,
    pub worst_contraction_ratio: f64,
    pub samples: usize,
    pub seed: u64,
}

/// Checks `|φ(x)| ≤ ‖x‖ (1 + 1e-9)` for every character and seeded sample.
pub fn verify_contraction(
    a: &Algebra,
    norm: &AlgebraNorm,
    m: &CharacterSpace,
    samples: usize,
    seed: u64,
) -> Result<ContractionReport, NormError> {
    verify_contraction_with(a, norm, m, samples, seed, Exec::default())
}

pub fn verify_contraction_with(
    a: &Algebra,
    norm: &AlgebraNorm,
    m: &CharacterSpace,
    samples: usize,
    seed: u64,
    exec: Exec,
) -> Result<ContractionReport, NormError> {
    let xs = sample_elements(a.dim(), samples, seed);
    let per_sample = exec.try_map(&xs, |x| -> Result<f64, NormError> {
        let nx = norm.norm(a, x)?;
        let mut worst: f64 = 0.0;
        for (idx, ch) in m.characters().iter().enumerate() {
            let v = ch.eval(x).norm();
            let ratio = if v == 0.0 { 0.0 } else { v / nx };
            if ratio.is_nan() || ratio > 1.0 + CONTRACTION_SLACK {
                return Err(NormError::ContractionViolated { ratio, character: idx, witness: x.as_slice().to_vec() });
            }
            worst = worst.max(ratio);
        }
        Ok(worst)
    })?;
    Ok(ContractionReport {
        norm: norm.kind(),
        worst_contraction_ratio: per_sample.into_iter().fold(0.0, f64::max),
        samples,
        seed,
    })
}

/// `sup_x max_φ |φ(x)| / ‖x‖` over `x = e` and the default 1000 seeded samples.
pub fn homomorphism_norm(a: &Algebra, norm: &AlgebraNorm, m: &CharacterSpace) -> Result<f64, NormError> {
    homomorphism_norm_with(a, norm, m, DEFAULT_SAMPLES, DEFAULT_SEED, Exec::default())
}

pub fn homomorphism_norm_with(
    a: &Algebra,
    norm: &AlgebraNorm,
    m: &CharacterSpace,
    samples: usize,
    seed: u64,
    exec: Exec,
) -> Result<f64, NormError> {
    let mut xs = vec![a.unit().clone()];
    xs.extend(sample_elements(a.dim(), samples, seed));
    let ratios = exec.try_map(&xs, |x| -> Result<Option<f64>, NormError> {
        let nx = norm.norm(a, x)?;
        if nx == 0.0 {
            return Ok(None);
        }
        Ok(Some(sup_abs(m, x) / nx))
    })?;
    Ok(ratios.into_iter().flatten().fold(0.0, f64::max))
}

/// Worst `‖xy‖ / (‖x‖‖y‖)` over seeded sample pairs (pairs with a zero factor are skipped).
pub fn submultiplicativity_ratio(
    a: &Algebra,
    norm: &AlgebraNorm,
    pairs: usize,
    seed: u64,
    exec: Exec,
) -> Result<f64, NormError> {
    let xs = sample_elements(a.dim(), 2 * pairs, seed);
    let idx: Vec<usize> = (0..pairs).collect();
    let ratios = exec.try_map(&idx, |&p| -> Result<f64, NormError> {
        let (x, y) = (&xs[2 * p], &xs[2 * p + 1]);
        let (nx, ny) = (norm.norm(a, x)?, norm.norm(a, y)?);
        let nxy = norm.norm(a, &a.multiply(x, y)?)?;
        Ok(if nx * ny == 0.0 { 0.0 } else { nxy / (nx * ny) })
    })?;
    Ok(ratios.into_iter().fold(0.0, f64::max))
}
