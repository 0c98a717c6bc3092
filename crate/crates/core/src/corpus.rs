//! Built-in test corpus and seeded random generators.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{builtin, Algebra, AlgebraError, RawAlgebra};
use crate::group::{self, builtin as groups, FiniteAbelianGroup, GroupError};
use crate::involution::{Involution, InvolutionError};
use crate::linalg::{self, CMatrix, ONE, ZERO};
use crate::operator::{self, InnerProductSpace, OperatorAlgebra, OperatorError};

/// Random operator algebras included in the fixed corpus.
pub const CORPUS_OPERATOR_ALGEBRAS: usize = 4;

#[derive(Clone, Debug)]
pub struct CorpusItem {
    pub name: String,
    pub algebra: Algebra,
    pub involution: Option<Involution>,
    /// Group order for group and center algebras.
    pub group_order: Option<usize>,
    pub operator: Option<OperatorAlgebra>,
}

impl CorpusItem {
    fn plain(name: &str, raw: RawAlgebra) -> Self {
        let algebra = Algebra::validate(&raw).expect("built-in algebra certifies");
        let involution = Some(Involution::identity_on_basis(&algebra).expect("real structure constants"));
        CorpusItem { name: name.to_string(), algebra, involution, group_order: None, operator: None }
    }
}

/// Invariant factors of the abelian groups in the corpus.
pub const ABELIAN_GROUPS: [&[usize]; 7] = [&[2], &[3], &[4], &[6], &[2, 2], &[2, 3], &[8]];

pub fn abelian_name(factors: &[usize]) -> String {
    factors.iter().map(|m| format!("Z{m}")).collect::<Vec<_>>().join("x")
}

/// The fixed corpus, in report order.
pub fn builtin_corpus(seed: u64) -> Result<Vec<CorpusItem>, CorpusError> {
    let mut items = vec![
        CorpusItem::plain("dual-numbers", builtin::dual_numbers()),
        CorpusItem::plain("C[t]/(t^2-1)", builtin::quadratic(ONE)),
        CorpusItem::plain("C[t]/(t^2+1)", builtin::quadratic(-ONE)),
        CorpusItem::plain("C[t]/(t^3)", builtin::truncated_polynomial(3)),
    ];
    for factors in ABELIAN_GROUPS {
        let g = FiniteAbelianGroup::new(factors.to_vec())?;
        let (algebra, star) = group::abelian_group_algebra(&g)?;
        items.push(CorpusItem {
            name: format!("group-algebra {}", abelian_name(factors)),
            algebra,
            involution: Some(star),
            group_order: Some(g.order()),
            operator: None,
        });
    }
    for (name, g) in [("S3", groups::s3()), ("D4", groups::d4()), ("Q8", groups::q8())] {
        let (algebra, star, _) = group::center_algebra(&g)?;
        items.push(CorpusItem {
            name: format!("center {name}"),
            algebra,
            involution: Some(star),
            group_order: Some(g.order()),
            operator: None,
        });
    }
    for (i, opalg) in random_operator_algebras(CORPUS_OPERATOR_ALGEBRAS, seed)?.into_iter().enumerate() {
        items.push(CorpusItem {
            name: format!("operator-algebra #{i} (d={})", opalg.space().dim()),
            algebra: opalg.algebra().clone(),
            involution: Some(opalg.involution().clone()),
            group_order: None,
            operator: Some(opalg),
        });
    }
    Ok(items)
}

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Involution(#[from] InvolutionError),
    #[error(transparent)]
    Operator(#[from] OperatorError),
}

fn random_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

/// Monomial algebra spanned by an order ideal of exponent vectors; products
/// leaving the ideal vanish. The first monomial must be the constant.
fn monomial_algebra(monomials: &[Vec<usize>]) -> (usize, Vec<Complex64>) {
    let n = monomials.len();
    let mut c = vec![ZERO; n * n * n];
    for i in 0..n {
        for j in 0..n {
            let sum: Vec<usize> = monomials[i].iter().zip(&monomials[j]).map(|(a, b)| a + b).collect();
            if let Some(k) = monomials.iter().position(|m| *m == sum) {
                c[(i * n + j) * n + k] = ONE;
            }
        }
    }
    (n, c)
}

/// Local factors: `ℂ`, `ℂ[t]/(t^k)` for `k = 2, 3, 4`, `ℂ[x,y]/(x,y)²`, `ℂ[x,y]/(x²,y²)`.
fn local_factor(kind: usize) -> (usize, Vec<Complex64>) {
    match kind {
        0 => monomial_algebra(&[vec![0]]),
        1..=3 => monomial_algebra(&(0..=kind).map(|e| vec![e]).collect::<Vec<_>>()),
        4 => monomial_algebra(&[vec![0, 0], vec![1, 0], vec![0, 1]]),
        _ => monomial_algebra(&[vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]),
    }
}

fn local_dim(kind: usize) -> usize {
    match kind {
        0 => 1,
        1..=3 => kind + 1,
        4 => 3,
        _ => 4,
    }
}

/// Direct product of the given factors, each in its monomial basis.
fn product_algebra(factors: &[(usize, Vec<Complex64>)]) -> RawAlgebra {
    let n: usize = factors.iter().map(|f| f.0).sum();
    let mut c = vec![ZERO; n * n * n];
    let mut unit = vec![ZERO; n];
    let mut off = 0;
    for (m, cf) in factors {
        for i in 0..*m {
            for j in 0..*m {
                for k in 0..*m {
                    c[((off + i) * n + off + j) * n + off + k] = cf[(i * m + j) * m + k];
                }
            }
        }
        unit[off] = ONE;
        off += m;
    }
    RawAlgebra::from_flat(n, &c, &unit)
}

/// Re-expresses `raw` in the basis whose `i`-th vector is column `i` of `p`.
pub fn change_basis(raw: &RawAlgebra, p: &CMatrix) -> Option<RawAlgebra> {
    let n = raw.dim;
    let pinv = linalg::inverse(p)?;
    let c = |i: usize, j: usize, k: usize| crate::algebra::from_pair(&raw.structure_constants[i][j][k]);
    // product of new basis vectors i, j in old coordinates
    let mut out = vec![ZERO; n * n * n];
    for i in 0..n {
        for j in 0..n {
            let mut old = linalg::CVector::zeros(n);
            for a in 0..n {
                for b in 0..n {
                    let w = p[(a, i)] * p[(b, j)];
                    if w == ZERO {
                        continue;
                    }
                    for k in 0..n {
                        old[k] += w * c(a, b, k);
                    }
                }
            }
            let new = &pinv * old;
            for k in 0..n {
                out[(i * n + j) * n + k] = new[k];
            }
        }
    }
    // symmetrize exactly: the two evaluation orders differ in rounding
    for i in 0..n {
        for j in (i + 1)..n {
            for k in 0..n {
                let avg = (out[(i * n + j) * n + k] + out[(j * n + i) * n + k]) * 0.5;
                out[(i * n + j) * n + k] = avg;
                out[(j * n + i) * n + k] = avg;
            }
        }
    }
    let unit_old = linalg::CVector::from_iterator(n, raw.unit.iter().map(crate::algebra::from_pair));
    let unit = &pinv * unit_old;
    Some(RawAlgebra::from_flat(n, &out, unit.as_slice()))
}

/// A random certified algebra of dimension at most 6, along with its
/// number of local factors (which is its number of characters).
#[derive(Clone, Debug)]
pub struct RandomAlgebra {
    pub algebra: Algebra,
    pub local_factors: usize,
    /// Sum over factors of their dimension minus one.
    pub radical_dim: usize,
}

pub fn random_algebra(rng: &mut ChaCha8Rng) -> RandomAlgebra {
    loop {
        let target = rng.random_range(1..=6usize);
        let mut kinds = Vec::new();
        let mut dim = 0;
        while dim < target {
            let kind = rng.random_range(0..6usize);
            if dim + local_dim(kind) > target {
                continue;
            }
            dim += local_dim(kind);
            kinds.push(kind);
        }
        let factors: Vec<_> = kinds.iter().map(|&k| local_factor(k)).collect();
        let raw = product_algebra(&factors);
        let p = CMatrix::from_fn(dim, dim, |i, j| {
            let z = random_complex(rng) * 0.4;
            if i == j {
                z + ONE
            } else {
                z
            }
        });
        let sv = linalg::singular_values(&p);
        if sv[dim - 1] < 0.2 * sv[0] {
            continue;
        }
        let Some(changed) = change_basis(&raw, &p) else { continue };
        if let Ok(algebra) = Algebra::validate(&changed) {
            return RandomAlgebra { algebra, local_factors: kinds.len(), radical_dim: dim - kinds.len() };
        }
    }
}

pub fn random_algebras(count: usize, seed: u64) -> Vec<RandomAlgebra> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_algebra(&mut rng)).collect()
}

/// Haar-like unitary from the QR factorization of a complex Gaussian-ish matrix.
fn random_unitary(d: usize, rng: &mut ChaCha8Rng) -> CMatrix {
    let m = CMatrix::from_fn(d, d, |_, _| random_complex(rng));
    m.qr().q()
}

/// Hermitian positive definite Gram matrix with condition number at most `max_cond`.
pub fn random_gram(d: usize, max_cond: f64, rng: &mut ChaCha8Rng) -> CMatrix {
    let q = random_unitary(d, rng);
    let diag = CMatrix::from_diagonal(&linalg::CVector::from_fn(d, |i, _| {
        let t: f64 = if i == 0 {
            0.0
        } else if i == 1 && d > 1 {
            1.0
        } else {
            rng.random_range(0.0..1.0)
        };
        Complex64::new(max_cond.powf(t), 0.0)
    }));
    let g = &q * diag * q.adjoint();
    // exact Hermitian symmetry
    (&g + g.adjoint()) * Complex64::new(0.5, 0.0)
}

/// Hermitian square root of a positive definite matrix.
fn hermitian_sqrt(g: &CMatrix) -> CMatrix {
    let d = g.nrows();
    // embed as a real symmetric 2d×2d matrix to reuse the real eigensolver
    let mut r = DMatrix::<f64>::zeros(2 * d, 2 * d);
    for i in 0..d {
        for j in 0..d {
            let z = g[(i, j)];
            r[(i, j)] = z.re;
            r[(i + d, j + d)] = z.re;
            r[(i, j + d)] = -z.im;
            r[(i + d, j)] = z.im;
        }
    }
    let eig = SymmetricEigen::new(r);
    let sq = eig.eigenvalues.map(f64::sqrt);
    let root = &eig.eigenvectors * DMatrix::from_diagonal(&sq) * eig.eigenvectors.transpose();
    CMatrix::from_fn(d, d, |i, j| Complex64::new(root[(i, j)], root[(i + d, j)]))
}

/// `count` seeded `*`-algebras generated by one or two commuting operators
/// that are normal for a random Gram matrix with condition number ≤ 10³.
pub fn random_operator_algebras(count: usize, seed: u64) -> Result<Vec<OperatorAlgebra>, OperatorError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_operator_algebra(&mut rng)).collect()
}

pub fn random_operator_algebra(rng: &mut ChaCha8Rng) -> Result<OperatorAlgebra, OperatorError> {
    let d = rng.random_range(1..=6usize);
    let gram = random_gram(d, 1e3, rng);
    let space = InnerProductSpace::new(gram.clone())?;
    let r = hermitian_sqrt(&gram);
    let r_inv = linalg::inverse(&r).ok_or(OperatorError::BadGram("singular square root".into()))?;
    let u = random_unitary(d, rng);
    let distinct = rng.random_range(d.saturating_sub(2).max(1)..=d);
    // eigenvalues on well separated rays so the closure is well conditioned
    let phase0: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    let values: Vec<Complex64> = (0..distinct)
        .map(|k| {
            let radius = rng.random_range(0.5..1.5);
            let angle = phase0 + std::f64::consts::TAU * (k as f64 + rng.random_range(-0.15..0.15)) / distinct as f64;
            Complex64::from_polar(radius, angle)
        })
        .collect();
    // every value used at least once
    let labels: Vec<usize> = (0..d).map(|i| if i < distinct { i } else { rng.random_range(0..distinct) }).collect();
    let generators = rng.random_range(1..=2usize);
    let mut ops = Vec::with_capacity(generators);
    for g in 0..generators {
        let diag = linalg::CVector::from_fn(d, |i, _| {
            if g == 0 {
                values[labels[i]]
            } else {
                // a function of the labels, so the generated algebra is unchanged in size
                Complex64::new(labels[i] as f64, 0.0)
            }
        });
        let t = &r_inv * &u * CMatrix::from_diagonal(&diag) * u.adjoint() * &r;
        ops.push(t);
    }
    operator::generate_star_subalgebra(&space, &ops)
}
