//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::process::{Command, ExitCode};
use std::time::Instant;

use gelfand::algebra::{builtin, Algebra, Element};
use gelfand::corpus::{self, ABELIAN_GROUPS};
use gelfand::group::{self, builtin as groups, FiniteAbelianGroup};
use gelfand::norms::{self, AlgebraNorm, NormKind};
use gelfand::spectrum;
use gelfand::verify::{self, VerifyConfig, VerifyReport};
use gelfand::Exec;
use gelfand_oracles as oracle;
use num_complex::Complex64;

type Check = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Check + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn suite_ok(report: &VerifyReport, name: &str) -> Result<(), String> {
    let s = report.suite(name).ok_or_else(|| format!("suite {name} missing"))?;
    let failed: Vec<_> = s.items.iter().filter(|c| !c.pass).map(|c| format!("{}: {}", c.item, c.detail)).collect();
    ensure(s.pass, || format!("suite {name}: {}", failed.join("; ")))
}

fn rows(m: &gelfand::CharacterSpace) -> Vec<Vec<Complex64>> {
    m.characters().iter().map(|c| c.values().to_vec()).collect()
}

fn abelian_counts() -> Check {
    let mut worst: f64 = 0.0;
    for factors in ABELIAN_GROUPS {
        let g = FiniteAbelianGroup::new(factors.to_vec()).map_err(|e| e.to_string())?;
        let res = group::abelian_characters(&g, 0x5EED).map_err(|e| e.to_string())?;
        let m = &res.characters;
        ensure(m.len() == g.order(), || format!("{factors:?}: {} characters", m.len()))?;
        for ch in m.characters() {
            for (a, v) in ch.values().iter().enumerate() {
                let r = (v.powu(g.element_order(a) as u32) - 1.0).norm().max((v.norm() - 1.0).abs());
                ensure(r <= 1e-8, || format!("{factors:?}: value {v} is not a root of unity"))?;
                worst = worst.max(r);
            }
        }
        if let [n] = factors {
            let n = *n;
            let by_columns: Vec<Vec<Complex64>> =
                (0..n).map(|j| oracle::exponential_sum_dft(Element::basis(n, j).as_slice())).collect();
            let dft: Vec<Vec<Complex64>> = (0..n).map(|k| (0..n).map(|j| by_columns[j][k]).collect()).collect();
            let err = oracle::match_sets(&rows(m), &dft, 1e-8).ok_or_else(|| format!("Z{n}: no DFT row matching"))?;
            worst = worst.max(err);
        }
    }
    Ok(format!("7 groups, |M| = |G|, worst residual {worst:.1e}"))
}

fn cardinality(report: &VerifyReport) -> Check {
    let mut checked = 0;
    for item in corpus::builtin_corpus(0x5EED).map_err(|e| e.to_string())? {
        let m = spectrum::characters(&item.algebra).map_err(|e| format!("{}: {e}", item.name))?;
        ensure(m.len() <= item.algebra.dim(), || format!("{}: {} > dim", item.name, m.len()))?;
        checked += 1;
    }
    for r in corpus::random_algebras(200, 0xACCE) {
        let m = spectrum::characters(&r.algebra).map_err(|e| e.to_string())?;
        ensure(m.len() <= r.algebra.dim(), || format!("random algebra: {} > {}", m.len(), r.algebra.dim()))?;
        checked += 1;
    }
    suite_ok(report, "cardinality")?;
    Ok(format!("{checked} algebras, zero violations"))
}

fn radical_nilpotency(report: &VerifyReport) -> Check {
    let dual = Algebra::validate(&builtin::dual_numbers()).map_err(|e| e.to_string())?;
    let m = spectrum::characters(&dual).map_err(|e| e.to_string())?;
    let rad = spectrum::radical(&dual, &m).map_err(|e| e.to_string())?;
    let exp = spectrum::is_nilpotent(&dual, &dual.basis(1)).map_err(|e| e.to_string())?.exponent;
    ensure(rad.dim() == 1 && exp == Some(2), || format!("dual numbers: radical {} exponent {exp:?}", rad.dim()))?;
    let cubic = Algebra::validate(&builtin::truncated_polynomial(3)).map_err(|e| e.to_string())?;
    let m = spectrum::characters(&cubic).map_err(|e| e.to_string())?;
    let rad = spectrum::radical(&cubic, &m).map_err(|e| e.to_string())?;
    ensure(rad.dim() == 2, || format!("C[t]/(t^3): radical {}", rad.dim()))?;
    suite_ok(report, "radical-nilpotency")?;
    Ok("radical dims 1 and 2, exponent 2, 1000 samples per algebra agree".into())
}

fn separation(report: &VerifyReport) -> Check {
    suite_ok(report, "separation-interpolation")?;
    let worst = report.suite("separation-interpolation").map(|s| s.worst_residual).unwrap_or(f64::NAN);
    Ok(format!("indicators and 100 targets per algebra, worst {worst:.1e}"))
}

fn contraction(report: &VerifyReport) -> Check {
    let mut worst: f64 = 0.0;
    let mut cases = 0;
    for item in corpus::builtin_corpus(0x5EED).map_err(|e| e.to_string())? {
        let a = &item.algebra;
        let m = spectrum::characters(a).map_err(|e| e.to_string())?;
        for kind in NormKind::ALL {
            let norm = AlgebraNorm::of_kind(kind, a, &m).map_err(|e| format!("{}: {e}", item.name))?;
            let rep = norms::verify_contraction_with(a, &norm, &m, 1000, 0x5EED, Exec::Parallel)
                .map_err(|e| format!("{}: {e}", item.name))?;
            let hom =
                norms::homomorphism_norm_with(a, &norm, &m, 1000, 0x5EED, Exec::Parallel).map_err(|e| e.to_string())?;
            ensure(rep.worst_contraction_ratio <= 1.0 + 1e-9, || {
                format!("{}: ratio {}", item.name, rep.worst_contraction_ratio)
            })?;
            ensure((hom - 1.0).abs() <= 1e-9, || format!("{} {}: hom norm {hom}", item.name, kind.name()))?;
            worst = worst.max(rep.worst_contraction_ratio);
            cases += 1;
        }
    }
    suite_ok(report, "norms")?;
    Ok(format!("{cases} (algebra, norm) pairs, worst ratio 1 + {:.1e}, homomorphism norm 1", worst - 1.0))
}

fn operator_model(report: &VerifyReport) -> Check {
    suite_ok(report, "operator-model")?;
    let s = report.suite("operator-model").ok_or("operator-model missing")?;
    ensure(s.cases >= 50, || format!("only {} operator algebras", s.cases))?;
    Ok(format!("{} random operator algebras, worst {:.1e}", s.cases, s.worst_residual))
}

fn centers() -> Check {
    for (name, g, k) in [("S3", groups::s3(), 3), ("D4", groups::d4(), 5), ("Q8", groups::q8(), 5)] {
        let (a, _, classes) = group::center_algebra(&g).map_err(|e| e.to_string())?;
        let m = spectrum::characters(&a).map_err(|e| e.to_string())?;
        ensure(classes.len() == k && m.len() == k, || {
            format!("{name}: {} classes, {} characters", classes.len(), m.len())
        })?;
        ensure(classes.classes == oracle::brute_force_classes(g.table(), g.identity()), || {
            format!("{name}: class partition differs from brute force")
        })?;
    }
    Ok("S3 3/3, D4 5/5, Q8 5/5".into())
}

fn newton() -> Check {
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for item in corpus::builtin_corpus(0x5EED).map_err(|e| e.to_string())? {
        if item.algebra.dim() > 3 {
            continue;
        }
        let m = spectrum::characters(&item.algebra).map_err(|e| e.to_string())?;
        let brute = oracle::newton_characters(&item.algebra, &oracle::default_grid(), 1e-6);
        let err = oracle::match_sets(&rows(&m), &brute, 1e-7)
            .ok_or_else(|| format!("{}: {} characters vs {} from Newton", item.name, m.len(), brute.len()))?;
        worst = worst.max(err);
        count += 1;
    }
    Ok(format!("{count} algebras, worst distance {worst:.1e}"))
}

fn determinism() -> Check {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_gelfand"))
            .args(["verify-all", "--seed", "0x5EED"])
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    ensure(a.status.success() && b.status.success(), || format!("exit codes {:?} {:?}", a.status, b.status))?;
    ensure(a.stdout == b.stdout, || "reports differ".into())?;
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).map_err(|e| e.to_string())?;
    ensure(v["pass"] == true, || "verify-all did not pass".into())?;
    Ok(format!("{} identical bytes", a.stdout.len()))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let report = verify::verify_all(&VerifyConfig { exec: Exec::Parallel, ..Default::default() });
    let criteria: Vec<Criterion> = vec![
        ("abelian character counts", Box::new(abelian_counts)),
        ("cardinality bound", Box::new(|| cardinality(&report))),
        ("radical and nilpotency", Box::new(|| radical_nilpotency(&report))),
        ("separation and interpolation", Box::new(|| separation(&report))),
        ("contraction and homomorphism norm", Box::new(|| contraction(&report))),
        ("operator model", Box::new(|| operator_model(&report))),
        ("non-abelian centers", Box::new(centers)),
        ("Newton oracle equivalence", Box::new(newton)),
        ("determinism", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed in {:.1?}", criteria.len() - failed, criteria.len(), start.elapsed());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
