//! Randomized invariants over generated algebras, groups and operators.

use gelfand::algebra::{Algebra, Element};
use gelfand::corpus::{self, random_algebras};
use gelfand::group::{self, FiniteAbelianGroup, FiniteGroup};
use gelfand::involution::{self, Involution};
use gelfand::linalg::{self, CMatrix};
use gelfand::norms::{self, AlgebraNorm};
use gelfand::operator::{self, InnerProductSpace};
use gelfand::spectrum::{self, CharacterOptions};
use gelfand::tolerance::CONTRACTION_SLACK;
use gelfand_oracles as oracle;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn algebra(seed: u64) -> corpus::RandomAlgebra {
    random_algebras(1, seed).pop().unwrap()
}

fn complex() -> impl Strategy<Value = Complex64> {
    (-2.0f64..2.0, -2.0f64..2.0).prop_map(|(re, im)| Complex64::new(re, im))
}

fn element(n: usize) -> impl Strategy<Value = Element> {
    proptest::collection::vec(complex(), n).prop_map(Element::new)
}

fn with_elements(k: usize) -> impl Strategy<Value = (u64, Vec<Element>)> {
    any::<u64>().prop_flat_map(move |seed| {
        let n = algebra(seed).algebra.dim();
        (Just(seed), proptest::collection::vec(element(n), k))
    })
}

fn star_group_algebra(factors: &[usize]) -> (Algebra, Involution) {
    group::abelian_group_algebra(&FiniteAbelianGroup::new(factors.to_vec()).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn multiplication_is_commutative_and_matches_left_regular((seed, xs) in with_elements(2)) {
        let a = algebra(seed).algebra;
        let (x, y) = (&xs[0], &xs[1]);
        let xy = a.multiply(x, y).unwrap();
        let yx = a.multiply(y, x).unwrap();
        prop_assert_eq!(xy.as_slice(), yx.as_slice());
        let via_l = a.left_regular(x).unwrap() * y.coeffs();
        let diff = linalg::max_abs((via_l - xy.coeffs()).as_slice());
        prop_assert!(diff <= 1e-13 * (1.0 + xy.max_norm()) * (1.0 + a.max_abs_c()));
    }

    #[test]
    fn character_count_and_radical_dimension(seed in any::<u64>()) {
        let r = algebra(seed);
        let m = spectrum::characters(&r.algebra).unwrap();
        prop_assert!(m.len() <= r.algebra.dim());
        prop_assert_eq!(m.len(), r.local_factors);
        let rad = spectrum::radical(&r.algebra, &m).unwrap();
        let rank = linalg::rank(&m.matrix(), 1e-9);
        prop_assert_eq!(rank + rad.dim(), r.algebra.dim());
        prop_assert_eq!(rad.dim(), r.radical_dim);
    }

    #[test]
    fn transform_is_multiplicative((seed, xs) in with_elements(2)) {
        let a = algebra(seed).algebra;
        let m = spectrum::characters(&a).unwrap();
        let xy = a.multiply(&xs[0], &xs[1]).unwrap();
        let tx = spectrum::gelfand_transform(&a, &m, &xs[0]).unwrap();
        let ty = spectrum::gelfand_transform(&a, &m, &xs[1]).unwrap();
        let txy = spectrum::gelfand_transform(&a, &m, &xy).unwrap();
        let scale = (1.0 + xs[0].l1_norm()) * (1.0 + xs[1].l1_norm()) * (1.0 + a.max_abs_c());
        for k in 0..m.len() {
            prop_assert!((txy[k] - tx[k] * ty[k]).norm() <= 1e-8 * scale);
        }
    }

    #[test]
    fn radical_elements_are_nilpotent_with_zero_transform(
        seed in any::<u64>(),
        coeffs in proptest::collection::vec(complex(), 6),
    ) {
        let a = algebra(seed).algebra;
        let m = spectrum::characters(&a).unwrap();
        let rad = spectrum::radical(&a, &m).unwrap();
        let mut x = Element::zero(a.dim());
        for (v, c) in rad.vectors().iter().zip(&coeffs) {
            x = &x + &v.scale(*c);
        }
        let t = spectrum::gelfand_transform(&a, &m, &x).unwrap();
        let zero = linalg::max_abs(&t) <= spectrum::transform_zero_tolerance(&a, &x);
        prop_assert!(zero);
        prop_assert!(spectrum::is_nilpotent(&a, &x).unwrap().nilpotent);
        // the unit is never nilpotent and never transforms to zero
        prop_assert!(!spectrum::is_nilpotent(&a, a.unit()).unwrap().nilpotent);
    }

    #[test]
    fn nilpotent_exactly_when_transform_vanishes((seed, xs) in with_elements(1)) {
        let a = algebra(seed).algebra;
        let m = spectrum::characters(&a).unwrap();
        let x = &xs[0];
        let t = spectrum::gelfand_transform(&a, &m, x).unwrap();
        let zero = linalg::max_abs(&t) <= spectrum::transform_zero_tolerance(&a, x);
        prop_assert_eq!(spectrum::is_nilpotent(&a, x).unwrap().nilpotent, zero);
    }

    #[test]
    fn characters_are_deterministic_for_a_seed(seed in any::<u64>(), char_seed in any::<u64>()) {
        let a = algebra(seed).algebra;
        let opts = CharacterOptions { seed: char_seed, ..Default::default() };
        let m1 = spectrum::characters_with(&a, opts).unwrap();
        let m2 = spectrum::characters_with(&a, opts).unwrap();
        prop_assert_eq!(m1.characters(), m2.characters());
    }

    #[test]
    fn regular_operator_norm_dominates_characters((seed, xs) in with_elements(4)) {
        let a = algebra(seed).algebra;
        let m = spectrum::characters(&a).unwrap();
        let norm = AlgebraNorm::regular_operator();
        for x in &xs {
            let nx = norm.norm(&a, x).unwrap();
            for ch in m.characters() {
                prop_assert!(ch.eval(x).norm() <= nx * (1.0 + CONTRACTION_SLACK));
            }
        }
        let report = norms::verify_contraction(&a, &norm, &m, 50, seed).unwrap();
        prop_assert!(report.worst_contraction_ratio <= 1.0 + CONTRACTION_SLACK);
    }

    #[test]
    fn group_algebra_involution_laws(
        idx in 0usize..corpus::ABELIAN_GROUPS.len(),
        coeffs in proptest::collection::vec(complex(), 8),
        w in complex(),
    ) {
        let factors = corpus::ABELIAN_GROUPS[idx];
        let (a, s) = star_group_algebra(factors);
        let n = a.dim();
        let x = Element::new(coeffs[..n].to_vec());
        let y = Element::new(coeffs.iter().rev().take(n).cloned().collect());
        let xs = involution::star(&a, &s, &x).unwrap();
        let back = involution::star(&a, &s, &xs).unwrap();
        prop_assert!(linalg::max_abs((back.coeffs() - x.coeffs()).as_slice()) <= 1e-12);
        // (wx + y)* = conj(w) x* + y*
        let lhs = involution::star(&a, &s, &(&x.scale(w) + &y)).unwrap();
        let rhs = &xs.scale(w.conj()) + &involution::star(&a, &s, &y).unwrap();
        prop_assert!(linalg::max_abs((lhs.coeffs() - rhs.coeffs()).as_slice()) <= 1e-12);
        let (x1, x2) = involution::selfadjoint_parts(&a, &s, &x).unwrap();
        let rebuilt = &x1 + &x2.scale(Complex64::new(0.0, 1.0));
        prop_assert!(linalg::max_abs((rebuilt.coeffs() - x.coeffs()).as_slice()) <= 1e-12);
        let m = spectrum::characters(&a).unwrap();
        for ch in m.characters() {
            let psi = involution::conjugate_character(&a, &s, ch).unwrap();
            prop_assert!(m.position(&psi.character).is_some());
            let twice = involution::conjugate_character(&a, &s, &psi.character).unwrap();
            prop_assert!(twice.character.distance(ch) <= 1e-9);
            for p in [&x1, &x2] {
                prop_assert!(ch.eval(p).im.abs() <= 1e-8 * (1.0 + p.l1_norm()));
            }
        }
    }

    #[test]
    fn adjoint_identity_and_reversal(seed in any::<u64>(), d in 1usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let space = InnerProductSpace::new(corpus::random_gram(d, 1e3, &mut rng)).unwrap();
        let mk = |k: u64| {
            CMatrix::from_fn(d, d, |i, j| {
                let t = (seed ^ k).wrapping_mul(6364136223846793005).wrapping_add((i * d + j) as u64);
                Complex64::new(((t >> 11) % 1000) as f64 / 500.0 - 1.0, ((t >> 31) % 1000) as f64 / 500.0 - 1.0)
            })
        };
        let (s, t) = (mk(1), mk(2));
        let ts = operator::adjoint(&space, &t).unwrap();
        let res = operator::adjoint_identity_residual(&space, &t, &ts);
        prop_assert!(res <= 1e-10 * operator::adjoint_residual_scale(&space, &t).max(1.0));
        let lhs = operator::adjoint(&space, &(&s * &t)).unwrap();
        let rhs = &ts * operator::adjoint(&space, &s).unwrap();
        let scale = linalg::spectral_norm(&s) * linalg::spectral_norm(&t) * space.condition();
        prop_assert!(linalg::max_abs_matrix(&(lhs - rhs)) <= 1e-10 * scale.max(1.0));
    }

    #[test]
    fn convolution_laws(
        idx in 0usize..corpus::ABELIAN_GROUPS.len(),
        coeffs in proptest::collection::vec(complex(), 24),
    ) {
        let g = FiniteAbelianGroup::new(corpus::ABELIAN_GROUPS[idx].to_vec()).unwrap();
        let n = g.order();
        let (f, h, k) = (&coeffs[..n], &coeffs[8..8 + n], &coeffs[16..16 + n]);
        let fh = group::convolve(&g, f, h).unwrap();
        let hf = group::convolve(&g, h, f).unwrap();
        prop_assert!(oracle::dist(&fh, &hf) <= 1e-12);
        let left = group::convolve(&g, &fh, k).unwrap();
        let right = group::convolve(&g, f, &group::convolve(&g, h, k).unwrap()).unwrap();
        prop_assert!(oracle::dist(&left, &right) <= 1e-10);
        let delta0 = Element::basis(n, 0);
        prop_assert!(oracle::dist(&group::convolve(&g, delta0.as_slice(), f).unwrap(), f) <= 1e-15);
        let (a, _) = group::abelian_group_algebra(&g).unwrap();
        let prod = a.multiply(&Element::new(f.to_vec()), &Element::new(h.to_vec())).unwrap();
        prop_assert!(oracle::dist(prod.as_slice(), &fh) <= 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn abelian_character_count_is_the_order(factors in proptest::collection::vec(2usize..=4, 0..=3), seed in any::<u64>()) {
        let g = FiniteAbelianGroup::new(factors).unwrap();
        let chars = group::abelian_characters(&g, seed).unwrap();
        prop_assert_eq!(chars.characters.len(), g.order());
        prop_assert!(chars.worst_modulus_residual <= 1e-9);
    }

    #[test]
    fn conjugacy_classes_of_permutation_groups(
        degree in 3usize..=5,
        keys in proptest::collection::vec(proptest::collection::vec(any::<u32>(), 5), 1..=2),
    ) {
        // permutations from sorting random keys
        let gens: Vec<Vec<usize>> = keys
            .iter()
            .map(|k| {
                let mut p: Vec<usize> = (0..degree).collect();
                p.sort_by_key(|&i| (k[i], i));
                p
            })
            .collect();
        let g = FiniteGroup::from_permutations(&gens).unwrap();
        let classes = group::conjugacy_classes(&g);
        prop_assert_eq!(&classes.classes, &oracle::brute_force_classes(g.table(), g.identity()));
        prop_assert_eq!(classes.sizes().iter().sum::<usize>(), g.order());
        let (a, _, _) = group::center_algebra(&g).unwrap();
        prop_assert_eq!(spectrum::characters(&a).unwrap().len(), classes.len());
    }

    #[test]
    fn newton_oracle_agrees_on_small_semisimple_algebras(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = loop {
            let r = corpus::random_algebra(&mut rng);
            if r.algebra.dim() <= 3 && r.radical_dim == 0 {
                break r;
            }
        };
        let m = spectrum::characters(&r.algebra).unwrap();
        let brute = oracle::newton_characters(&r.algebra, &oracle::default_grid(), 1e-6);
        let got: Vec<Vec<Complex64>> = m.characters().iter().map(|c| c.values().to_vec()).collect();
        prop_assert!(oracle::match_sets(&got, &brute, 1e-7).is_some(), "{} vs {}", got.len(), brute.len());
    }
}
