//! Convolution algebras of finite groups.
//!
//! Abelian groups are given by invariant factors and yield the full group
//! algebra with `f*(a) = conj(f(−a))`. Arbitrary groups are given by a
//! Cayley table and yield the center of the group algebra, spanned by the
//! conjugacy class sums.

use std::collections::BTreeSet;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, RawAlgebra};
use crate::involution::{Involution, InvolutionError};
use crate::linalg::{ONE, ZERO};
use crate::spectrum::{self, CharacterOptions, CharacterSpace, SpectrumError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GroupError {
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("found {found} characters, expected {expected}")]
    CountMismatch { expected: usize, found: usize },
    #[error("character value {value} on element {element} is not a root of unity of order {order}")]
    NotRootOfUnity { element: usize, order: usize, value: Complex64 },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Involution(#[from] InvolutionError),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
}

/// Group input file: either `{"abelian": [m1, ...]}` or `{"cayley": [[...]], "identity": k}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum GroupInput {
    Abelian { abelian: Vec<usize> },
    General { cayley: Vec<Vec<usize>>, identity: usize },
}

/// `ℤ_{m₁} × … × ℤ_{m_r}`; element tuples are indexed in mixed radix with
/// the last factor varying fastest, so index 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAbelianGroup {
    factors: Vec<usize>,
}

impl FiniteAbelianGroup {
    pub fn new(factors: Vec<usize>) -> Result<Self, GroupError> {
        if let Some(m) = factors.iter().find(|&&m| m < 2) {
            return Err(GroupError::InvalidGroup(format!("invariant factor {m} is below 2")));
        }
        Ok(FiniteAbelianGroup { factors })
    }

    pub fn cyclic(n: usize) -> Result<Self, GroupError> {
        if n == 1 {
            Self::new(vec![])
        } else {
            Self::new(vec![n])
        }
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.factors.iter().product()
    }

    pub fn tuple(&self, mut index: usize) -> Vec<usize> {
        let mut t = vec![0; self.factors.len()];
        for (slot, &m) in t.iter_mut().zip(&self.factors).rev() {
            *slot = index % m;
            index /= m;
        }
        t
    }

    pub fn index(&self, tuple: &[usize]) -> usize {
        tuple.iter().zip(&self.factors).fold(0, |acc, (&a, &m)| acc * m + a % m)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (ta, tb) = (self.tuple(a), self.tuple(b));
        let sum: Vec<usize> = ta.iter().zip(&tb).zip(&self.factors).map(|((x, y), m)| (x + y) % m).collect();
        self.index(&sum)
    }

    pub fn neg(&self, a: usize) -> usize {
        let t: Vec<usize> = self.tuple(a).iter().zip(&self.factors).map(|(x, m)| (m - x) % m).collect();
        self.index(&t)
    }

    /// Order of the element `a`.
    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.add(x, a);
            k += 1;
        }
        k
    }

    /// The same group as a Cayley table.
    pub fn to_finite_group(&self) -> FiniteGroup {
        let n = self.order();
        let table = (0..n).map(|a| (0..n).map(|b| self.add(a, b)).collect()).collect();
        FiniteGroup { table, identity: 0 }
    }
}

/// A finite group given by its Cayley table, `table[a][b] = a·b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
}

impl FiniteGroup {
    pub fn new(table: Vec<Vec<usize>>, identity: usize) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::InvalidGroup("empty table".into()));
        }
        if identity >= n {
            return Err(GroupError::InvalidGroup(format!("identity index {identity} out of range")));
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::InvalidGroup(format!("row {a} has length {}", row.len())));
            }
            let set: BTreeSet<usize> = row.iter().copied().collect();
            if set.len() != n || row.iter().any(|&x| x >= n) {
                return Err(GroupError::InvalidGroup(format!("row {a} is not a permutation")));
            }
        }
        for b in 0..n {
            let set: BTreeSet<usize> = table.iter().map(|row| row[b]).collect();
            if set.len() != n {
                return Err(GroupError::InvalidGroup(format!("column {b} is not a permutation")));
            }
        }
        for (a, row) in table.iter().enumerate() {
            if table[identity][a] != a || row[identity] != a {
                return Err(GroupError::InvalidGroup(format!("identity fails on element {a}")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(GroupError::InvalidGroup(format!("associativity fails on ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let g = FiniteGroup { table, identity };
        for a in 0..n {
            let inv = g.inverse(a);
            if g.table[inv][a] != identity {
                return Err(GroupError::InvalidGroup(format!("element {a} has no two-sided inverse")));
            }
        }
        Ok(g)
    }

    pub fn from_input(input: &GroupInput) -> Result<Self, GroupError> {
        match input {
            GroupInput::Abelian { abelian } => Ok(FiniteAbelianGroup::new(abelian.clone())?.to_finite_group()),
            GroupInput::General { cayley, identity } => Self::new(cayley.clone(), *identity),
        }
    }

    /// Closes a set of permutations under composition, sorted so that the
    /// identity permutation comes first.
    pub fn from_permutations(generators: &[Vec<usize>]) -> Result<Self, GroupError> {
        let deg = generators.first().map_or(0, |g| g.len());
        let id: Vec<usize> = (0..deg).collect();
        let mut elems: BTreeSet<Vec<usize>> = BTreeSet::from([id]);
        let mut frontier: Vec<Vec<usize>> = elems.iter().cloned().collect();
        while let Some(p) = frontier.pop() {
            for g in generators {
                let q: Vec<usize> = (0..deg).map(|i| g[p[i]]).collect();
                if elems.insert(q.clone()) {
                    frontier.push(q);
                }
            }
        }
        let list: Vec<Vec<usize>> = elems.into_iter().collect();
        let pos = |p: &Vec<usize>| list.binary_search(p).expect("closed set");
        let table = list
            .iter()
            .map(|a| {
                list.iter()
                    .map(|b| {
                        // (a·b)(i) = a(b(i))
                        let ab: Vec<usize> = (0..deg).map(|i| a[b[i]]).collect();
                        pos(&ab)
                    })
                    .collect()
            })
            .collect();
        Self::new(table, 0)
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.table[a].iter().position(|&x| x == self.identity).expect("latin square row contains identity")
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.table[a][b] == self.table[b][a]))
    }
}

pub mod builtin {
    use super::*;

    /// Symmetric group on three letters.
    pub fn s3() -> FiniteGroup {
        FiniteGroup::from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]]).expect("S3")
    }

    /// Symmetries of a square acting on its vertices.
    pub fn d4() -> FiniteGroup {
        FiniteGroup::from_permutations(&[vec![1, 2, 3, 0], vec![0, 3, 2, 1]]).expect("D4")
    }

    /// Quaternion group `{±1, ±i, ±j, ±k}`, index order `1, −1, i, −i, j, −j, k, −k`.
    pub fn q8() -> FiniteGroup {
        // unit quaternions as (sign, axis) with axis 0 = 1, 1 = i, 2 = j, 3 = k
        let decode = |x: usize| (if x.is_multiple_of(2) { 1i32 } else { -1 }, x / 2);
        let encode = |sign: i32, axis: usize| axis * 2 + usize::from(sign < 0);
        // axis products: (sign, axis) of e_a e_b
        let prod = |a: usize, b: usize| -> (i32, usize) {
            match (a, b) {
                (0, x) | (x, 0) => (1, x),
                (x, y) if x == y => (-1, 0),
                (1, 2) => (1, 3),
                (2, 1) => (-1, 3),
                (2, 3) => (1, 1),
                (3, 2) => (-1, 1),
                (3, 1) => (1, 2),
                (1, 3) => (-1, 2),
                _ => unreachable!(),
            }
        };
        let table = (0..8)
            .map(|x| {
                (0..8)
                    .map(|y| {
                        let ((sx, ax), (sy, ay)) = (decode(x), decode(y));
                        let (s, a) = prod(ax, ay);
                        encode(sx * sy * s, a)
                    })
                    .collect()
            })
            .collect();
        FiniteGroup::new(table, 0).expect("Q8")
    }
}

/// Conjugacy classes, each sorted, ordered by smallest member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjugacyClassPartition {
    pub classes: Vec<Vec<usize>>,
}

impl ConjugacyClassPartition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    /// Index of the class containing `g`.
    pub fn class_of(&self, g: usize) -> usize {
        self.classes.iter().position(|c| c.binary_search(&g).is_ok()).expect("partition covers the group")
    }
}

/// Orbits of `g ↦ h g h⁻¹`, by full enumeration.
pub fn conjugacy_classes(g: &FiniteGroup) -> ConjugacyClassPartition {
    let n = g.order();
    let mut seen = vec![false; n];
    let mut classes = Vec::new();
    for x in 0..n {
        if seen[x] {
            continue;
        }
        let orbit: BTreeSet<usize> = (0..n).map(|h| g.mul(g.mul(h, x), g.inverse(h))).collect();
        for &y in &orbit {
            seen[y] = true;
        }
        classes.push(orbit.into_iter().collect());
    }
    ConjugacyClassPartition { classes }
}

/// `(f * g)(a) = Σ_b f(b) g(a − b)`.
pub fn convolve(g: &FiniteAbelianGroup, f: &[Complex64], h: &[Complex64]) -> Result<Vec<Complex64>, GroupError> {
    let n = g.order();
    for v in [f, h] {
        if v.len() != n {
            return Err(GroupError::LengthMismatch { expected: n, found: v.len() });
        }
    }
    Ok((0..n).map(|a| (0..n).map(|b| f[b] * h[g.add(a, g.neg(b))]).sum()).collect())
}

/// Group algebra with basis `δ_a`, `δ_a * δ_b = δ_{a+b}`, unit `δ_0` and
/// `δ_a* = δ_{−a}`.
pub fn abelian_group_algebra(g: &FiniteAbelianGroup) -> Result<(Algebra, Involution), GroupError> {
    let n = g.order();
    let mut c = vec![ZERO; n * n * n];
    for a in 0..n {
        for b in 0..n {
            c[(a * n + b) * n + g.add(a, b)] = ONE;
        }
    }
    let mut unit = vec![ZERO; n];
    unit[0] = ONE;
    let mut raw = RawAlgebra::from_flat(n, &c, &unit);
    raw.basis_names = Some(
        (0..n)
            .map(|a| {
                let t = g.tuple(a);
                format!("d[{}]", t.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            })
            .collect(),
    );
    let alg = Algebra::validate(&raw)?;
    let perm: Vec<usize> = (0..n).map(|a| g.neg(a)).collect();
    let star = Involution::from_permutation(&alg, &perm)?;
    Ok((alg, star))
}

#[derive(Clone, Debug)]
pub struct AbelianCharacters {
    pub algebra: Algebra,
    pub involution: Involution,
    pub characters: CharacterSpace,
    /// `max |1 − |φ(δ_a)||` over characters and elements.
    pub worst_modulus_residual: f64,
    /// `max |φ(δ_a)^{ord a} − 1|`.
    pub worst_order_residual: f64,
}

/// Characters of the group algebra, checked to number `|G|` and to take
/// root-of-unity values.
pub fn abelian_characters(g: &FiniteAbelianGroup, seed: u64) -> Result<AbelianCharacters, GroupError> {
    let (algebra, involution) = abelian_group_algebra(g)?;
    let characters = spectrum::characters_with(&algebra, CharacterOptions { seed, ..Default::default() })?;
    let n = g.order();
    if characters.len() != n {
        return Err(GroupError::CountMismatch { expected: n, found: characters.len() });
    }
    let eps = algebra.eps_char();
    let orders: Vec<usize> = (0..n).map(|a| g.element_order(a)).collect();
    let mut worst_modulus: f64 = 0.0;
    let mut worst_order: f64 = 0.0;
    for ch in characters.characters() {
        for (a, &v) in ch.values().iter().enumerate() {
            let m = (1.0 - v.norm()).abs();
            let o = (v.powu(orders[a] as u32) - ONE).norm();
            if m > eps || o > eps {
                return Err(GroupError::NotRootOfUnity { element: a, order: orders[a], value: v });
            }
            worst_modulus = worst_modulus.max(m);
            worst_order = worst_order.max(o);
        }
    }
    Ok(AbelianCharacters {
        algebra,
        involution,
        characters,
        worst_modulus_residual: worst_modulus,
        worst_order_residual: worst_order,
    })
}

/// Center of the group algebra in the basis of class sums.
pub fn center_algebra(g: &FiniteGroup) -> Result<(Algebra, Involution, ConjugacyClassPartition), GroupError> {
    let classes = conjugacy_classes(g);
    let k = classes.len();
    let n = g.order();
    let class_of: Vec<usize> = (0..n).map(|x| classes.class_of(x)).collect();
    let mut c = vec![ZERO; k * k * k];
    for i in 0..k {
        for j in 0..k {
            // class sum product as a function on G
            let mut counts = vec![0usize; n];
            for &x in &classes.classes[i] {
                for &y in &classes.classes[j] {
                    counts[g.mul(x, y)] += 1;
                }
            }
            for (l, class) in classes.classes.iter().enumerate() {
                let v = counts[class[0]];
                if class.iter().any(|&z| counts[z] != v) {
                    return Err(GroupError::InvalidGroup(format!(
                        "product of class sums {i} and {j} is not constant on class {l}"
                    )));
                }
                c[(i * k + j) * k + l] = Complex64::new(v as f64, 0.0);
            }
        }
    }
    let id_class = class_of[g.identity()];
    let mut unit = vec![ZERO; k];
    unit[id_class] = ONE;
    let mut raw = RawAlgebra::from_flat(k, &c, &unit);
    raw.basis_names = Some(classes.classes.iter().map(|cl| format!("C{}", cl[0])).collect());
    let alg = Algebra::validate(&raw)?;
    let perm: Vec<usize> = classes.classes.iter().map(|cl| class_of[g.inverse(cl[0])]).collect();
    let star = Involution::from_permutation(&alg, &perm)?;
    Ok((alg, star, classes))
}
