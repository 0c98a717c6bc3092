//! Property suites run by `verify-all` over the built-in corpus.
//!
//! Each suite maps its cases through [`Exec`] and keeps input order, so a
//! report is a pure function of the seed and tolerances.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{builtin, Algebra, Element};
use crate::corpus::{self, CorpusItem, ABELIAN_GROUPS};
use crate::exec::Exec;
use crate::group::{self, builtin as groups, FiniteAbelianGroup};
use crate::involution;
use crate::linalg::{self, ONE};
use crate::norms::{self, AlgebraNorm, NormKind};
use crate::operator;
use crate::spectrum::{self, CharacterOptions, CharacterSpace};
use crate::tolerance::{Tolerances, CONTRACTION_SLACK};

pub const RANDOM_ALGEBRAS: usize = 200;
pub const RANDOM_OPERATOR_ALGEBRAS: usize = 50;
pub const NILPOTENCY_SAMPLES: usize = 1000;
pub const HOMOMORPHISM_PAIRS: usize = 1000;
pub const INTERPOLATION_TARGETS: usize = 100;
pub const INVOLUTION_SAMPLES: usize = 1000;
pub const SUBMULT_PAIRS: usize = 200;

const INTERPOLATION_TOL: f64 = 1e-7;
const HOM_NORM_TOL: f64 = 1e-9;
const ROOT_MODULUS_TOL: f64 = 1e-9;
const ROOT_ORDER_TOL: f64 = 1e-8;
const DFT_TOL: f64 = 1e-8;
const OPERATOR_TOL: f64 = 1e-8;
const ADJOINT_TOL: f64 = 1e-9;
const STAR_STAR_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    pub tol: Tolerances,
    pub exec: Exec,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { seed: spectrum::DEFAULT_SEED, tol: Tolerances::default(), exec: Exec::Sequential }
    }
}

/// One checked case: an algebra, group or operator model.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseReport {
    pub item: String,
    pub pass: bool,
    pub worst_residual: f64,
    pub detail: String,
}

impl CaseReport {
    fn ok(item: &str, worst_residual: f64, detail: String) -> Self {
        CaseReport { item: item.to_string(), pass: true, worst_residual, detail }
    }

    fn fail(item: &str, detail: String) -> Self {
        CaseReport { item: item.to_string(), pass: false, worst_residual: f64::NAN, detail }
    }

    fn from_result(item: &str, r: Result<(f64, String), String>) -> Self {
        match r {
            Ok((w, d)) => Self::ok(item, w, d),
            Err(e) => Self::fail(item, e),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub pass: bool,
    pub cases: usize,
    pub failures: usize,
    pub worst_residual: f64,
    pub items: Vec<CaseReport>,
}

impl SuiteReport {
    fn new(name: &str, items: Vec<CaseReport>) -> Self {
        let failures = items.iter().filter(|c| !c.pass).count();
        let worst = items.iter().filter(|c| c.pass).map(|c| c.worst_residual).fold(0.0, f64::max);
        SuiteReport {
            name: name.to_string(),
            pass: failures == 0,
            cases: items.len(),
            failures,
            worst_residual: worst,
            items,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub version: String,
    pub command: String,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub pass: bool,
    pub worst_residual: f64,
    pub suites: Vec<SuiteReport>,
}

impl VerifyReport {
    pub fn suite(&self, name: &str) -> Option<&SuiteReport> {
        self.suites.iter().find(|s| s.name == name)
    }
}

/// Names of the suites, in report order.
pub const SUITES: [&str; 11] = [
    "algebra-core",
    "cardinality",
    "homomorphism",
    "abelian-characters",
    "radical-nilpotency",
    "separation-interpolation",
    "norms",
    "involution",
    "operator-model",
    "group-centers",
    "determinism",
];

/// A corpus item with its characters computed under the configured tolerances.
struct Prepared {
    item: CorpusItem,
    chars: Result<CharacterSpace, String>,
}

fn prepare(cfg: &VerifyConfig) -> Result<Vec<Prepared>, String> {
    let items = corpus::builtin_corpus(cfg.seed).map_err(|e| e.to_string())?;
    Ok(cfg.exec.map(&items, |it| {
        let mut item = it.clone();
        if cfg.tol != Tolerances::default() {
            match Algebra::validate_with(&item.algebra.to_raw(), cfg.tol) {
                Ok(a) => item.algebra = a,
                Err(e) => {
                    return Prepared { item, chars: Err(e.to_string()) };
                }
            }
        }
        let chars = spectrum::characters_with(&item.algebra, CharacterOptions { seed: cfg.seed, ..Default::default() })
            .map_err(|e| e.to_string());
        Prepared { item, chars }
    }))
}

pub fn verify_all(cfg: &VerifyConfig) -> VerifyReport {
    let suites = match prepare(cfg) {
        Ok(prepared) => vec![
            algebra_core(cfg, &prepared),
            cardinality(cfg, &prepared),
            homomorphism(cfg, &prepared),
            abelian_characters(cfg),
            radical_nilpotency(cfg, &prepared),
            separation_interpolation(cfg, &prepared),
            norms_suite(cfg, &prepared),
            involution_suite(cfg, &prepared),
            operator_model(cfg),
            group_centers(cfg),
            determinism(cfg, &prepared),
        ],
        Err(e) => vec![SuiteReport::new("corpus", vec![CaseReport::fail("built-in corpus", e)])],
    };
    let pass = suites.iter().all(|s| s.pass);
    let worst = suites.iter().map(|s| s.worst_residual).fold(0.0, f64::max);
    VerifyReport {
        version: env!("CARGO_PKG_VERSION").to_string(),
        command: "verify-all".to_string(),
        seed: cfg.seed,
        tolerances: cfg.tol,
        pass,
        worst_residual: worst,
        suites,
    }
}

fn with_chars(p: &Prepared) -> Result<&CharacterSpace, String> {
    p.chars.as_ref().map_err(|e| format!("characters: {e}"))
}

fn seed_for(cfg: &VerifyConfig, salt: u64) -> u64 {
    cfg.seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

fn algebra_core(cfg: &VerifyConfig, prepared: &[Prepared]) -> SuiteReport {
    let items = cfg.exec.map(prepared, |p| {
        let a = &p.item.algebra;
        let r = (|| -> Result<(f64, String), String> {
            let cert = a.certificate();
            let xs = norms::sample_elements(a.dim(), 200, seed_for(cfg, 1));
            let mut worst = cert.max_assoc_residual.max(cert.max_unit_residual);
            for pair in xs.chunks(2) {
                let (x, y) = (&pair[0], &pair[1]);
                let xy = a.multiply(x, y).map_err(|e| e.to_string())?;
                if xy != a.multiply(y, x).map_err(|e| e.to_string())? {
                    return Err("multiply is not symmetric in its arguments".into());
                }
                let via_l = Element::from_vector(a.left_regular(x).map_err(|e| e.to_string())? * y.coeffs());
                let scale = 1.0 + x.l1_norm() * y.l1_norm() * a.max_abs_c();
                let r = (&xy - &via_l).max_norm() / scale;
                if r > 1e-13 {
                    return Err(format!("multiply and L_x y differ by {r:e}"));
                }
                let ex = a.multiply(a.unit(), x).map_err(|e| e.to_string())?;
                let ru = (&ex - x).max_norm();
                if ru > a.eps_char() * (1.0 + x.max_norm()) {
                    return Err(format!("e·x − x = {ru:e}"));
                }
                worst = worst.max(r).max(ru);
            }
            Ok((worst, format!("dim {}", a.dim())))
        })();
        CaseReport::from_result(&p.item.name, r)
    });
    SuiteReport::new("algebra-core", items)
}

fn cardinality(cfg: &VerifyConfig, prepared: &[Prepared]) -> SuiteReport {
    let mut items = cfg.exec.map(prepared, |p| {
        let r = (|| -> Result<(f64, String), String> {
            let m = with_chars(p)?;
            let a = &p.item.algebra;
            let rad = spectrum::radical(a, m).map_err(|e| e.to_string())?;
            if m.len() > a.dim() {
                return Err(format!("{} characters on a {}-dimensional algebra", m.len(), a.dim()));
            }
            let rank = linalg::rank(&m.matrix(), crate::tolerance::RANK_REL_TOL);
            if rank + rad.dim() != a.dim() || rank != m.len() {
                return Err(format!("rank {rank} + radical {} != dim {}", rad.dim(), a.dim()));
            }
            Ok((m.worst_residual(), format!("|M| = {} <= dim = {}", m.len(), a.dim())))
        })();
        CaseReport::from_result(&p.item.name, r)
    });
    let randoms = corpus::random_algebras(RANDOM_ALGEBRAS, seed_for(cfg, 2));
    let results = cfg.exec.map(&randoms, |r| {
        spectrum::characters_with(&r.algebra, CharacterOptions { seed: cfg.seed, ..Default::default() })
            .map_err(|e| e.to_string())
            .and_then(|m| {
                if m.len() > r.algebra.dim() || m.len() != r.local_factors {
                    Err(format!("{} characters, dim {}, {} local factors", m.len(), r.algebra.dim(), r.local_factors))
                } else {
                    Ok(m.worst_residual())
                }
            })
    });
    let violations: Vec<String> =
        results.iter().enumerate().filter_map(|(i, r)| r.as_ref().err().map(|e| format!("#{i}: {e}"))).collect();
    let worst = results.iter().filter_map(|r| r.as_ref().ok()).fold(0.0f64, |w, &r| w.max(r));
    let name = format!("{RANDOM_ALGEBRAS} random algebras of dim <= 6");
    items.push(if violations.is_empty() {
        CaseReport::ok(&name, worst, "zero violations".into())
    } else {
        CaseReport::fail(&name, violations.join("; "))
    });
    SuiteReport::new("cardinality", items)
}

fn homomorphism(cfg: &VerifyConfig, prepared: &[Prepared]) -> SuiteReport {
    let items = cfg.exec.map(prepared, |p| {
        let r = (|| -> Result<(f64, String), String> {
            let m = with_chars(p)?;
            let a = &p.item.algebra;
            let xs = norms::sample_elements(a.dim(), 2 * HOMOMORPHISM_PAIRS, seed_for(cfg, 3));
            let mut worst: f64 = 0.0;
            for pair in xs.chunks(2) {
                let (x, y) = (&pair[0], &pair[1]);
                let xy = a.multiply(x, y).map_err(|e| e.to_string())?;
                let t = |z: &Element| spectrum::gelfand_transform(a, m, z).map_err(|e| e.to_string());
                let (txy, tx, ty) = (t(&xy)?, t(x)?, t(y)?);
                let err = txy.iter().zip(tx.iter().zip(&ty)).map(|(p, (u, v))| (p - u * v).norm()).fold(0.0, f64::max);
                let rel = err / ((1.0 + x.max_norm()) * (1.0 + y.max_norm()));
                if rel > 1e-7 {
                    return Err(format!("transform not multiplicative: {rel:e}"));
                }
                worst = worst.max(rel);
            }
            Ok((worst, format!("{HOMOMORPHISM_PAIRS} pairs")))
        })();
        CaseReport::from_result(&p.item.name, r)
    });
    SuiteReport::new("homomorphism", items)
}

/// `ω^{ka}` evaluated directly, rows indexed by `k`.
pub fn dft_matrix(n: usize) -> Vec<Vec<Complex64>> {
    (0..n)
        .map(|k| {
            (0..n)
                .map(|a| Complex64::from_polar(1.0, std::f64::consts::TAU * ((k * a) % n) as f64 / n as f64))
                .collect()
        })
        .collect()
}

/// Matches each character row to a distinct DFT row; returns the worst entrywise error.
pub fn match_rows(rows: &[Vec<Complex64>], oracle: &[Vec<Complex64>]) -> Option<f64> {
    let mut used = vec![false; oracle.len()];
    let mut worst: f64 = 0.0;
    for r in rows {
        let (best, err) = oracle
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .map(|(i, o)| (i, r.iter().zip(o).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)))
            .min_by(|a, b| a.1.total_cmp(&b.1))?;
        used[best] = true;
        worst = worst.max(err);
    }
    Some(worst)
}

fn abelian_characters(cfg: &VerifyConfig) -> SuiteReport {
    let groups_list: Vec<&[usize]> = ABELIAN_GROUPS.to_vec();
    let items = cfg.exec.map(&groups_list, |factors| {
        let name = corpus::abelian_name(factors);
        let r = (|| -> Result<(f64, String), String> {
            let g = FiniteAbelianGroup::new(factors.to_vec()).map_err(|e| e.to_string())?;
            let res = group::abelian_characters(&g, cfg.seed).map_err(|e| e.to_string())?;
            let m = &res.characters;
            if res.worst_modulus_residual > ROOT_MODULUS_TOL || res.worst_order_residual > ROOT_ORDER_TOL {
                return Err(format!(
                    "root-of-unity residuals {:e}, {:e}",
                    res.worst_modulus_residual, res.worst_order_residual
                ));
            }
            let mut worst = res.worst_modulus_residual.max(res.worst_order_residual);
            // dual group: pointwise products of characters are characters
            for x in m.characters() {
                for y in m.characters() {
                    let prod: Vec<Complex64> = x.values().iter().zip(y.values()).map(|(u, v)| u * v).collect();
                    let d = m
                        .characters()
                        .iter()
                        .map(|z| z.values().iter().zip(&prod).map(|(u, v)| (u - v).norm()).fold(0.0, f64::max))
                        .fold(f64::INFINITY, f64::min);
                    if d > res.algebra.tolerances().separation(2.0) {
                        return Err(format!("dual group not closed: distance {d:e}"));
                    }
                    worst = worst.max(d);
                }
            }
            let mut detail = format!("|M| = |G| = {}", g.order());
            if factors.len() == 1 {
                let rows: Vec<Vec<Complex64>> = m.characters().iter().map(|c| c.values().to_vec()).collect();
                let err = match_rows(&rows, &dft_matrix(g.order())).ok_or("row matching failed")?;
                if err > DFT_TOL {
                    return Err(format!("transform differs from the DFT by {err:e}"));
                }
                worst = worst.max(err);
                detail.push_str(", matches DFT");
            }
            Ok((worst, detail))
        })();
        CaseReport::from_result(&format!("group-algebra {name}"), r)
    });
    SuiteReport::new("abelian-characters", items)
}

fn radical_nilpotency(cfg: &VerifyConfig, prepared: &[Prepared]) -> SuiteReport {
    let mut items = Vec::new();
    for (name, raw, want_dim, want_exp) in [
        ("dual-numbers", builtin::dual_numbers(), 1usize, Some(2u32)),
        ("C[t]/(t^3)", builtin::truncated_polynomial(3), 2, Some(3)),
    ] {
        let r = (|| -> Result<(f64, String), String> {
            let a = Algebra::validate_with(&raw, cfg.tol).map_err(|e| e.to_string())?;
            let m = spectrum::characters_with(&a, CharacterOptions { seed: cfg.seed, ..Default::default() })
                .map_err(|e| e.to_string())?;
            let rad = spectrum::radical(&a, &m).map_err(|e| e.to_string())?;
            let nil = spectrum::is_nilpotent(&a, &a.basis(1)).map_err(|e| e.to_string())?;
            if rad.dim() != want_dim || nil.exponent != want_exp {
                return Err(format!("radical dim {}, exponent {:?}", rad.dim(), nil.exponent));
            }
            Ok((0.0, format!("radical dim {want_dim}, exponent of basis vector 1 = {}", want_exp.unwrap_or(0))))
        })();
        items.push(CaseReport::from_result(&format!("{name} fixture"), r));
    }
    items.extend(cfg.exec.map(prepared, |p| {
        let r = (|| -> Result<(f64, String), String> {
            let m = with_chars(p)?;
            let a = &p.item.algebra;
            let n = a.dim();
            let rad = spectrum::radical(a, m).map_err(|e| e.to_string())?;
            let vectors = rad.vectors();
            let mut worst: f64 = 0.0;
            for x in &vectors {
                let reg = linalg::spectral_norm(&a.left_regular(x).map_err(|e| e.to_string())?);
                let pw = a.power(x, n as u32).map_err(|e| e.to_string())?.max_norm();
                let tol = a.tolerances().nilpotent(reg, n) * a.unit().max_norm().max(1.0);
                if pw > tol {
                    return Err(format!("radical vector has |x^n| = {pw:e} > {tol:e}"));
                }
                worst = worst.max(pw);
            }
            // zero, then generic samples alternating with random radical combinations
            let mut rng = ChaCha8Rng::seed_from_u64(seed_for(cfg, 4));
            let generic = norms::sample_elements(n, NILPOTENCY_SAMPLES, seed_for(cfg, 5));
            let mut nilpotent_count = 0;
            for (s, g) in generic.iter().enumerate() {
                let x = if s == 0 {
                    Element::zero(n)
                } else if s % 2 == 1 && !vectors.is_empty() {
                    vectors.iter().fold(Element::zero(n), |acc, v| {
                        &acc + &v.scale(Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                    })
                } else {
                    g.clone()
                };
                let nil = spectrum::is_nilpotent(a, &x).map_err(|e| e.to_string())?;
                let t = spectrum::gelfand_transform(a, m, &x).map_err(|e| e.to_string())?;
                let zero = linalg::max_abs(&t) <= spectrum::transform_zero_tolerance(a, &x);
                if nil.nilpotent != zero {
                    return Err(format!("sample {s}: is_nilpotent = {}, transform zero = {zero}", nil.nilpotent));
                }
                if nil.nilpotent {
                    nilpotent_count += 1;
                    worst = worst.max(linalg::max_abs(&t));
                }
            }
            Ok((
                worst,
                format!("radical dim {}, {nilpotent_count}/{NILPOTENCY_SAMPLES} nilpotent samples agree", rad.dim()),
            ))
        })();
        CaseReport::from_result(&p.item.name, r)
    }));
    SuiteReport::new("radical-nilpotency", items)
}

fn separation_interpolation(cfg: &VerifyConfig, prepared: &[Prepared]) -> SuiteReport {
    let items = cfg.exec.map(prepared, |p| {
        let r = (|| -> Result<(f64, String), String> {
            let m = with_chars(p)?;
            let a = &p.item.algebra;
            let k = m.len();
            let mut worst: f64 = 0.0;
            // every subset containing each member, capped for large spectra
            let masks: Vec<u32> = (1u32..(1 << k)).take(512).collect();
            let mut checked = 0;
            for mask in masks {
                let subset: Vec<usize> = (0..k).filter(|i| mask & (1 << i) != 0).collect();
                for &member in &subset {
                    let z = spectrum::indicator_element(a, m, &subset, member).map_err(|e| e.to_string())?;
                    let res = spectrum::indicator_residual(m, &subset, member, &z);
                    if res > subset.len() as f64 * a.eps_char() {
                        return Err(format!("indicator residual {res:e}"));
                    }
                    worst = worst.max(res);
                    checked += 1;
                }
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed_for(cfg, 6));
            for _ in 0..INTERPOLATION_TARGETS {
                let f: Vec<Complex64> =
                    (0..k).map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
                let w = spectrum::interpolate(a, m, &f).map_err(|e| e.to_string())?;
                let t = spectrum::gelfand_transform(a, m, &w).map_err(|e| e.to_string())?;
                let err = t.iter().zip(&f).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
                if err > INTERPOLATION_TOL {
                    return Err(format!("interpolation error {err:e}"));
                }
                worst = worst.max(err);
            }
            Ok((worst, format!("{checked} indicators, {INTERPOLATION_TARGETS} interpolations")))
        })();
        CaseReport::from_result(&p.item.name, r)
    });
    SuiteReport::new("separation-interpolation", items)
}

fn norms_suite(cfg: &VerifyConfig, prepared: &[Prepared]) -> SuiteReport {
    let cases: Vec<(usize, NormKind)> =
        (0..prepared.len()).flat_map(|i| NormKind::ALL.into_iter().map(move |k| (i, k))).collect();
    let items = cfg.exec.map(&cases, |&(i, kind)| {
        let p = &prepared[i];
        let r = (|| -> Result<(f64, String), String> {
            let m = with_chars(p)?;
            let a = &p.item.algebra;
            let norm = AlgebraNorm::of_kind(kind, a, m).map_err(|e| e.to_string())?;
            let seed = seed_for(cfg, 7);
            let rep = norms::verify_contraction_with(a, &norm, m, norms::DEFAULT_SAMPLES, seed, Exec::Sequential)
                .map_err(|e| e.to_string())?;
            let h = norms::homomorphism_norm_with(a, &norm, m, norms::DEFAULT_SAMPLES, seed, Exec::Sequential)
                .map_err(|e| e.to_string())?;
            if (h - 1.0).abs() > HOM_NORM_TOL {
                return Err(format!("homomorphism norm {h}"));
            }
            let sub = norms::submultiplicativity_ratio(a, &norm, SUBMULT_PAIRS, seed_for(cfg, 8), Exec::Sequential)
                .map_err(|e| e.to_string())?;
            if sub > 1.0 + CONTRACTION_SLACK {
                return Err(format!("submultiplicativity ratio {sub}"));
            }
            Ok((
                (rep.worst_contraction_ratio - 1.0).max(0.0).max((h - 1.0).abs()),
                format!("worst ratio {:.12}, hom norm {:.12}", rep.worst_contraction_ratio, h),
            ))
        })();
        CaseReport::from_result(&format!("{} / {}", p.item.name, kind.name()), r)
    });
    SuiteReport::new("norms", items)
}

fn involution_suite(cfg: &VerifyConfig, prepared: &[Prepared]) -> SuiteReport {
    let items = cfg.exec.map(prepared, |p| {
        let r = (|| -> Result<(f64, String), String> {
            let m = with_chars(p)?;
            let a = &p.item.algebra;
            let s = p.item.involution.as_ref().ok_or("no involution")?;
            let e = |err: involution::InvolutionError| err.to_string();
            let xs = norms::sample_elements(a.dim(), INVOLUTION_SAMPLES, seed_for(cfg, 9));
            let mut worst: f64 = s.residual();
            for (i, x) in xs.iter().enumerate() {
                let xs_ = involution::star(a, s, x).map_err(e)?;
                let back = involution::star(a, s, &xs_).map_err(e)?;
                let r = (&back - x).max_norm() / x.max_norm().max(f64::MIN_POSITIVE);
                if r > STAR_STAR_TOL * (1.0 + linalg::max_abs_matrix(s.action())).powi(2) {
                    return Err(format!("star(star(x)) differs by {r:e}"));
                }
                let (x1, x2) = involution::selfadjoint_parts(a, s, x).map_err(e)?;
                let rec = (&(&x1 + &x2.scale(Complex64::new(0.0, 1.0))) - x).max_norm();
                if rec > 1e-14 * (1.0 + x.max_norm()) * (1.0 + linalg::max_abs_matrix(s.action())) {
                    return Err(format!("x1 + i x2 differs from x by {rec:e}"));
                }
                worst = worst.max(r).max(rec);
                if i % 2 == 1 {
                    let y = &xs[i - 1];
                    let lhs = involution::star(a, s, &a.multiply(x, y).map_err(|e| e.to_string())?).map_err(e)?;
                    let rhs = a.multiply(&xs_, &involution::star(a, s, y).map_err(e)?).map_err(|e| e.to_string())?;
                    let scale = (1.0 + x.max_norm()) * (1.0 + y.max_norm());
                    let r = (&lhs - &rhs).max_norm() / scale;
                    if r > a.eps_char() {
                        return Err(format!("star not multiplicative: {r:e}"));
                    }
                    worst = worst.max(r);
                }
            }
            let mut fixed = 0;
            for ch in m.characters() {
                let once = involution::conjugate_character(a, s, ch).map_err(e)?;
                let twice = involution::conjugate_character(a, s, &once.character).map_err(e)?;
                let d = twice.character.distance(ch);
                if d > a.tolerances().separation(ch.max_abs()) {
                    return Err(format!("conjugate character is not an involution: {d:e}"));
                }
                if m.position(&once.character).is_none() {
                    return Err("conjugate character is not in the spectrum".into());
                }
                fixed += usize::from(once.equal);
                worst = worst.max(d).max(once.residual);
            }
            let span = involution::radical_selfadjoint_span_check(a, s, m).map_err(e)?;
            worst = worst.max(span.worst_residual);
            Ok((worst, format!("{fixed}/{} characters fixed by conjugation", m.len())))
        })();
        CaseReport::from_result(&p.item.name, r)
    });
    SuiteReport::new("involution", items)
}

fn operator_model(cfg: &VerifyConfig) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed_for(cfg, 10));
    let algebras: Vec<_> = (0..RANDOM_OPERATOR_ALGEBRAS).map(|_| corpus::random_operator_algebra(&mut rng)).collect();
    let items = cfg.exec.map(&algebras, |opalg| {
        let r = (|| -> Result<(f64, String), String> {
            let opalg = opalg.as_ref().map_err(|e| e.to_string())?;
            let rep = operator::verify_gelfand_isomorphism(opalg, cfg.seed).map_err(|e| e.to_string())?;
            if rep.adjoint_residual > ADJOINT_TOL {
                return Err(format!("adjoint identity residual {:e}", rep.adjoint_residual));
            }
            if rep.star_residual > OPERATOR_TOL || rep.real_residual > OPERATOR_TOL {
                return Err(format!("star {:e}, real {:e}", rep.star_residual, rep.real_residual));
            }
            // self-adjoint parts of basis operators: T = T*, and T² small forces T small
            let a = opalg.algebra();
            for i in 0..a.dim() {
                let (x1, _) =
                    involution::selfadjoint_parts(a, opalg.involution(), &a.basis(i)).map_err(|e| e.to_string())?;
                let t = opalg.operator(&x1);
                let eps = 1e-8 * linalg::spectral_norm(&t).powi(2).max(1.0);
                let sn = operator::check_selfadjoint_nilpotent(opalg.space(), &t, eps).map_err(|e| e.to_string())?;
                if !sn.pass {
                    return Err(format!("self-adjoint T with ‖T²‖ = {:e} has ‖T‖ = {:e}", sn.t2_norm, sn.t_norm));
                }
            }
            Ok((
                rep.adjoint_residual.max(rep.star_residual).max(rep.real_residual).max(opalg.closure_residual()),
                format!("d = {}, dim = |M| = {}, radical 0", opalg.space().dim(), rep.dim),
            ))
        })();
        CaseReport::from_result("random operator algebra", r)
    });
    let items = items
        .into_iter()
        .enumerate()
        .map(|(i, mut c)| {
            c.item = format!("operator-algebra #{i}");
            c
        })
        .collect();
    SuiteReport::new("operator-model", items)
}

fn group_centers(cfg: &VerifyConfig) -> SuiteReport {
    let cases = [("S3", groups::s3(), 3usize), ("D4", groups::d4(), 5), ("Q8", groups::q8(), 5)];
    let items = cfg.exec.map(&cases, |(name, g, expected)| {
        let r = (|| -> Result<(f64, String), String> {
            let (a, _, classes) = group::center_algebra(g).map_err(|e| e.to_string())?;
            let m = spectrum::characters_with(&a, CharacterOptions { seed: cfg.seed, ..Default::default() })
                .map_err(|e| e.to_string())?;
            let rad = spectrum::radical(&a, &m).map_err(|e| e.to_string())?;
            if classes.len() != *expected || m.len() != *expected || rad.dim() != 0 {
                return Err(format!("{} classes, {} characters, radical {}", classes.len(), m.len(), rad.dim()));
            }
            Ok((m.worst_residual(), format!("{expected} classes, {expected} characters, sizes {:?}", classes.sizes())))
        })();
        CaseReport::from_result(&format!("center {name}"), r)
    });
    SuiteReport::new("group-centers", items)
}

/// Recomputes every character table with the other execution mode.
fn determinism(cfg: &VerifyConfig, prepared: &[Prepared]) -> SuiteReport {
    let other = if cfg.exec.is_parallel() { Exec::Sequential } else { Exec::Parallel };
    let again = other.map(prepared, |p| {
        spectrum::characters_with(&p.item.algebra, CharacterOptions { seed: cfg.seed, ..Default::default() })
            .map_err(|e| e.to_string())
    });
    let items = prepared
        .iter()
        .zip(again)
        .map(|(p, q)| {
            let same = match (&p.chars, &q) {
                (Ok(x), Ok(y)) => x.characters() == y.characters(),
                (Err(x), Err(y)) => x == y,
                _ => false,
            };
            if same {
                CaseReport::ok(&p.item.name, 0.0, "identical character ordering".into())
            } else {
                CaseReport::fail(&p.item.name, "character tables differ between runs".into())
            }
        })
        .collect();
    SuiteReport::new("determinism", items)
}

/// Unit-modulus test exposed for reuse by callers checking group data.
pub fn is_root_of_unity(z: Complex64, order: u32) -> bool {
    (z.norm() - 1.0).abs() <= ROOT_MODULUS_TOL && (z.powu(order) - ONE).norm() <= ROOT_ORDER_TOL
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dft_rows_match_themselves_under_permutation() {
        let f = dft_matrix(4);
        let mut rows = f.clone();
        rows.reverse();
        assert!(match_rows(&rows, &f).unwrap() < 1e-15);
        assert!(is_root_of_unity(f[1][1], 4));
    }
}
