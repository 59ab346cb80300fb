//! One PASS/FAIL line per acceptance criterion. Exits non-zero if any fails.

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use isgcoh::cochain::Cochain;
use isgcoh::cohomology::{cocycles, cohomology, CochainSpace, EnumerationConfig, Subcomplex};
use isgcoh::correspondence::{
    check_injectivity, equivalence_from_cohomologous, roundtrip_extension,
    strongly_normalized_representatives, theorem_harness, HarnessConfig,
};
use isgcoh::cover::{build_extension_from_cocycle, check_action_laws, check_cover_laws, Mode};
use isgcoh::crossed::{check_crossed_module, check_extension, induced_tmodule, SamplerConfig};
use isgcoh::extraction::{canonical_cover_transversals, extract_cocycle, TransversalKind};
use isgcoh::fixtures;
use isgcoh::report::Report;
use isgcoh::tmodule::TModule;

type Outcome = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Outcome);

fn sampler() -> SamplerConfig {
    SamplerConfig {
        seed: 0,
        max_word_len: 3,
        samples: 10_000,
    }
}

fn enumeration() -> EnumerationConfig {
    EnumerationConfig::default()
}

fn fixtures_named() -> Vec<(&'static str, TModule)> {
    vec![
        ("z2", fixtures::z2_trivial_module()),
        ("chain2", fixtures::chain2_module()),
        ("z2xchain2", fixtures::z2_chain2_module()),
    ]
}

fn reps(m: &TModule) -> Result<Vec<Cochain>, String> {
    strongly_normalized_representatives(m, &enumeration()).map_err(|e| e.to_string())
}

fn require(report: &Report, what: &str) -> Result<usize, String> {
    if report.is_ok() {
        Ok(report.checks)
    } else {
        Err(format!(
            "{what}: {} of {} checks failed, first {:?}",
            report.failed,
            report.checks,
            report.violations.first()
        ))
    }
}

fn complex_property() -> Outcome {
    let mut checked = 0usize;
    for (name, m) in [
        ("z2", fixtures::z2_trivial_module()),
        ("chain2", fixtures::chain2_module()),
    ] {
        for n in 1..=2 {
            let space = CochainSpace::new(&m, n, Subcomplex::Full).map_err(|e| e.to_string())?;
            if space.size() > 1 << 16 {
                return Err(format!("{name}: |C^{n}| = {} exceeds 2^16", space.size()));
            }
            for f in space.members(&enumeration()).map_err(|e| e.to_string())? {
                let dd = m
                    .coboundary(&m.coboundary(&f).map_err(|e| e.to_string())?)
                    .map_err(|e| e.to_string())?;
                if !m.is_trivial(&dd) {
                    return Err(format!(
                        "{name}: δδ f nontrivial for {:?}",
                        m.render_cochain(&f)
                    ));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} cochains"))
}

fn cohomology_oracle() -> Outcome {
    let z2 = cohomology(
        &fixtures::z2_trivial_module(),
        3,
        Subcomplex::Full,
        &enumeration(),
    )
    .map_err(|e| e.to_string())?
    .order;
    let chain = cohomology(
        &fixtures::chain2_module(),
        3,
        Subcomplex::Full,
        &enumeration(),
    )
    .map_err(|e| e.to_string())?
    .order;
    if (z2, chain) == (2, 1) {
        Ok(format!("|H3(Z2)| = {z2}, |H3(chain2)| = {chain}"))
    } else {
        Err(format!(
            "|H3(Z2)| = {z2}, |H3(chain2)| = {chain}, expected 2 and 1"
        ))
    }
}

fn normalization() -> Outcome {
    let mut checked = 0usize;
    for (name, m) in fixtures_named() {
        let zs = cocycles(&m, 3, Subcomplex::OrderPreserving, &enumeration())
            .map_err(|e| e.to_string())?;
        for c in &zs {
            let (nc, d) = m.normalize_cocycle(c).map_err(|e| e.to_string())?;
            let quotient = m
                .mul_cochains(&nc, &m.inv_cochain(c))
                .map_err(|e| e.to_string())?;
            if !m.is_normalized(&nc)
                || !m.is_order_preserving(&nc)
                || m.coboundary(&d).map_err(|e| e.to_string())? != quotient
            {
                return Err(format!(
                    "{name}: normalize_cocycle fails on {:?}",
                    m.render_cochain(c)
                ));
            }
            checked += 1;
        }
        let full = if name == "z2xchain2" {
            Vec::new()
        } else {
            cocycles(&m, 3, Subcomplex::Full, &enumeration()).map_err(|e| e.to_string())?
        };
        for c in zs.iter().chain(&full) {
            let strong = m.is_strongly_normalized(c);
            let weak = m.is_normalized(c) && m.is_order_preserving(c);
            if strong != weak || m.is_normalized(c) != m.is_normalized_reduced(c) {
                return Err(format!(
                    "{name}: normalization criteria disagree on {:?}",
                    m.render_cochain(c)
                ));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} cocycles"))
}

fn cover_laws() -> Outcome {
    let mut checks = 0;
    for (name, m) in fixtures_named() {
        checks += require(&check_cover_laws(m.base(), &sampler()), name)?;
    }
    Ok(format!("{checks} checks"))
}

fn action_laws() -> Outcome {
    let (mut checks, mut evaluations) = (0, 0);
    for (name, m) in fixtures_named() {
        for c in reps(&m)? {
            let ext =
                build_extension_from_cocycle(&m, &c, Mode::Checked).map_err(|e| e.to_string())?;
            checks += require(&check_action_laws(&ext, &sampler()), name)?;
            // routes λ through the checked evaluator, which compares both forms
            checks += require(&check_crossed_module(&ext, &sampler()), name)?;
            let stats = ext.action().stats();
            if stats.lambda_evaluations == 0
                || stats.lambda_mismatches != 0
                || stats.invariant_failures != 0
            {
                return Err(format!("{name}: {stats:?}"));
            }
            evaluations += stats.lambda_evaluations;
        }
    }
    Ok(format!("{checks} checks, {evaluations} λ comparisons"))
}

fn extension_axioms() -> Outcome {
    let mut checks = 0;
    for (name, m) in fixtures_named() {
        for c in reps(&m)? {
            let ext =
                build_extension_from_cocycle(&m, &c, Mode::Fast).map_err(|e| e.to_string())?;
            checks += require(&check_crossed_module(&ext, &sampler()), name)?;
            checks += require(&check_extension(&ext, &sampler()), name)?;
            let induced = induced_tmodule(&ext, &sampler()).map_err(|e| e.to_string())?;
            if induced != m {
                return Err(format!("{name}: induced module differs from input"));
            }
        }
    }
    Ok(format!("{checks} checks"))
}

fn exact_round_trip() -> Outcome {
    let mut count = 0;
    for (name, m) in fixtures_named() {
        for c in reps(&m)? {
            let ext =
                build_extension_from_cocycle(&m, &c, Mode::Fast).map_err(|e| e.to_string())?;
            let tr = canonical_cover_transversals(&ext, TransversalKind::Plain)
                .map_err(|e| e.to_string())?;
            let extracted = extract_cocycle(&ext, &m, &tr).map_err(|e| e.to_string())?;
            if extracted != c {
                return Err(format!(
                    "{name}: extracted {:?} from {:?}",
                    m.render_cochain(&extracted),
                    m.render_cochain(&c)
                ));
            }
            count += 1;
        }
    }
    Ok(format!("{count} representatives"))
}

fn theorem() -> Outcome {
    let cfg = HarnessConfig {
        sampler: sampler(),
        enumeration: enumeration(),
        mode: Mode::Fast,
    };
    let mut classes = 0;
    for (name, m) in [
        ("z2", fixtures::z2_trivial_module()),
        ("z2xchain2", fixtures::z2_chain2_module()),
    ] {
        let reps = reps(&m)?;
        for c in &reps {
            let run = theorem_harness(&m, c, &cfg).map_err(|e| format!("{name}: {e}"))?;
            if !run.passed {
                let failed: Vec<_> = run
                    .stages
                    .iter()
                    .filter(|s| !s.passed)
                    .map(|s| s.stage.clone())
                    .collect();
                return Err(format!("{name}: stages {failed:?} failed"));
            }
        }
        require(
            &check_injectivity(&m, &reps, &cfg).map_err(|e| e.to_string())?,
            name,
        )?;
        classes += reps.len();
    }
    Ok(format!("{classes} classes"))
}

fn equivalence_witnesses() -> Outcome {
    let (mut pairs, mut checks) = (0, 0);
    for (name, m) in fixtures_named() {
        let ds: Vec<Cochain> = CochainSpace::new(&m, 2, Subcomplex::OrderPreserving)
            .and_then(|s| s.members(&enumeration()))
            .map_err(|e| e.to_string())?
            .into_iter()
            .filter(|d| m.is_order_preserving(d) && m.is_strongly_normalized(d))
            .collect();
        for c in reps(&m)? {
            // the trivial d and up to two with nontrivial coboundary
            let mut used = 0;
            for d in &ds {
                let b = m.coboundary(d).map_err(|e| e.to_string())?;
                if m.is_trivial(&b) && !m.is_trivial(d) {
                    continue;
                }
                let c_prime = m
                    .mul_cochains(&c, &m.inv_cochain(&b))
                    .map_err(|e| e.to_string())?;
                let w = equivalence_from_cohomologous(&m, &c, &c_prime, d, Mode::Fast)
                    .map_err(|e| format!("{name}: {e}"))?;
                checks += require(&w.check(&sampler()), name)?;
                pairs += 1;
                used += 1;
                if used == 3 {
                    break;
                }
            }
            let ext =
                build_extension_from_cocycle(&m, &c, Mode::Fast).map_err(|e| e.to_string())?;
            let tr = canonical_cover_transversals(&ext, TransversalKind::FInverse)
                .map_err(|e| e.to_string())?;
            let run = roundtrip_extension(&ext, &m, &tr, &sampler(), Mode::Fast)
                .map_err(|e| format!("{name}: {e}"))?;
            match run.stage("equivalence-witness") {
                Some(v) if v.passed && run.passed => checks += v.checks,
                _ => return Err(format!("{name}: roundtrip_extension did not pass")),
            }
            pairs += 1;
        }
    }
    Ok(format!("{pairs} witnesses, {checks} checks"))
}

fn determinism() -> Outcome {
    let data = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data");
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_isgcoh"))
            .arg("roundtrip")
            .arg("--semigroup")
            .arg(data.join("z2_chain2.json"))
            .arg("--module")
            .arg(data.join("z2_chain2_module.json"))
            .arg("--cocycle")
            .arg(data.join("z2_chain2_nontrivial.json"))
            .args(["--seed", "7", "--json"])
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    if !a.status.success() {
        return Err(format!(
            "exit {:?}: {}",
            a.status.code(),
            String::from_utf8_lossy(&a.stderr)
        ));
    }
    if a.stdout != b.stdout {
        return Err("outputs differ".into());
    }
    Ok(format!("{} identical bytes", a.stdout.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("complex property", 10, complex_property),
        ("cohomology oracle", 10, cohomology_oracle),
        ("normalization", 30, normalization),
        ("cover laws", 10, cover_laws),
        ("action identities", 60, action_laws),
        ("extension axioms", 60, extension_axioms),
        ("exact round trip", 10, exact_round_trip),
        ("theorem harness", 120, theorem),
        ("equivalence witnesses", 60, equivalence_witnesses),
        ("determinism", 60, determinism),
    ];
    let mut all = true;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(_) if elapsed > Duration::from_secs(*limit) => {
                Err(format!("took {elapsed:.2?}, limit {limit}s"))
            }
            other => other,
        };
        let (verdict, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        all &= outcome.is_ok();
        println!(
            "criterion {:>2} {verdict} {name} ({elapsed:.2?}): {detail}",
            i + 1
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
