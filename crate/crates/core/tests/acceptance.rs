//! End-to-end acceptance run: one PASS/FAIL line per criterion, non-zero
//! exit if any criterion fails.

use std::time::{Duration, Instant};

use gamma_series::catalog::{evaluate_constant, ConstantArgs, Method};
use gamma_series::digits::WordSpec;
use gamma_series::numerics::{self, ExactRational, FixedReal};
use gamma_series::oracles::{
    closed_form, constants, definition_sum, digamma, log_gamma, quadrature, somos_log_direct, IntegrandKind,
    QuadratureSpec,
};
use gamma_series::sequences::SeriesParams;
use gamma_series::series_engines::{sum_family, Execution, SeriesFamily, SumOptions};
use gamma_series::verify;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn q(n: i64, d: i64) -> ExactRational {
    ExactRational::fraction(n, d)
}

fn ensure(ok: bool, msg: String) -> Outcome {
    if ok {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn within_time(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    if t <= limit {
        Ok(())
    } else {
        Err(format!("took {t:?}, limit {limit:?}"))
    }
}

fn dist(x: &FixedReal, y: &FixedReal) -> f64 {
    let s = x.scale().max(y.scale());
    x.rescale(s).sub(&y.rescale(s)).abs().to_f64()
}

fn params(a: u64, b: u64, l: u32, z: ExactRational, base: u32) -> SeriesParams {
    SeriesParams::new(a, b, l, z, base).expect("valid parameters")
}

fn suite(report: verify::SuiteReport, start: Instant, limit: Duration) -> Outcome {
    within_time(start, limit)?;
    ensure(
        report.passed(),
        format!("{} checks, {} failures {:?}, {:?}", report.checks, report.failures.len(), report.failures, start.elapsed()),
    )
}

fn c1_kernels() -> Outcome {
    let start = Instant::now();
    suite(verify::kernels(2..=12, 200), start, Duration::from_secs(5))
}

fn c2_functional_equation() -> Outcome {
    let start = Instant::now();
    suite(verify::functional(500), start, Duration::from_secs(30))
}

fn c3_digit_equivalence() -> Outcome {
    let start = Instant::now();
    suite(verify::digit_equivalence(10_000), start, Duration::from_secs(30))
}

fn gamma_addison(execution: Execution) -> gamma_series::Result<(FixedReal, gamma_series::series_engines::ConvergenceReport)> {
    let p = params(1, 1, 0, ExactRational::one(), 2);
    sum_family(SeriesFamily::Addison, &p, 10_000, 30, &SumOptions { checkpoints: None, execution })
}

fn c4_gamma_addison() -> Outcome {
    let start = Instant::now();
    let (v, _) = gamma_addison(Execution::Parallel).map_err(|e| e.to_string())?;
    within_time(start, Duration::from_secs(10))?;
    let err = dist(&v, &constants::euler_gamma(30).unwrap());
    ensure(err <= 1e-7, format!("|error| = {err:.3e} (≤ 1e-7)"))
}

fn c5_gamma_vacca() -> Outcome {
    let p = params(1, 1, 0, ExactRational::one(), 2);
    let gamma = constants::euler_gamma(30).unwrap();
    let opts = SumOptions::with_checkpoints(vec![10_000]);
    let (v, report) = sum_family(SeriesFamily::Vacca, &p, 1_000_000, 30, &opts).map_err(|e| e.to_string())?;
    let err = dist(&v, &gamma);
    let vacca_1e4 = dist(&report.checkpoints[0].partial, &gamma);
    let (a, _) = gamma_addison(Execution::Parallel).map_err(|e| e.to_string())?;
    let addison_1e4 = dist(&a, &gamma);
    ensure(
        err <= 1e-4 && addison_1e4 < vacca_1e4,
        format!("N=1e6 error {err:.3e} (≤ 1e-4); at N=1e4 Addison {addison_1e4:.3e} < Vacca {vacca_1e4:.3e}"),
    )
}

fn catalog_error(name: &str, args: &ConstantArgs, n: u64, method: Method, reference: &FixedReal) -> Result<f64, String> {
    let ev = evaluate_constant(name, args, 2, n, 30, Some(method), &SumOptions::default()).map_err(|e| e.to_string())?;
    Ok(dist(&ev.value, reference))
}

fn c6_log4_over_pi() -> Outcome {
    let reference = constants::log2(35).mul_int(&2.into()).sub(&constants::log_pi(35).unwrap());
    let err = catalog_error("log4_over_pi", &ConstantArgs::default(), 100_000, Method::ADDISON, &reference)?;
    ensure(err <= 1e-7, format!("|error| = {err:.3e} (≤ 1e-7)"))
}

fn c7_word_constant() -> Outcome {
    let w = 35;
    let closed = log_gamma(&q(1, 1), w)
        .unwrap()
        .sub(&log_gamma(&q(3, 4), w).unwrap())
        .sub(&digamma(&q(3, 4), w).unwrap().mul_rational(&q(1, 4)));
    let via_word = closed_form::word_constant(&WordSpec::parse("11", 2).unwrap(), w).unwrap();
    if !closed.agrees_with(&via_word) {
        return Err("word closed form disagrees with log Γ(1) − log Γ(3/4) − ψ(3/4)/4".into());
    }
    let args = ConstantArgs { word: Some("11".into()), ..ConstantArgs::default() };
    let err = catalog_error("word_constant", &args, 1_000_000, Method::VACCA, &closed)?;
    ensure(err <= 1e-4, format!("|error| = {err:.3e} (≤ 1e-4)"))
}

fn c8_somos() -> Outcome {
    let direct = somos_log_direct(2, 200, 60).unwrap();
    if direct.error_f64() >= 1e-50 {
        return Err(format!("direct oracle error {:.3e} not below 1e-50", direct.error_f64()));
    }
    let args = ConstantArgs { t: Some(2), ..ConstantArgs::default() };
    let err = catalog_error("somos_t", &args, 1_000_000, Method::VACCA, &direct)?;
    ensure(err <= 1e-4, format!("|error| = {err:.3e} (≤ 1e-4)"))
}

fn c9_glaisher() -> Outcome {
    let quoted = FixedReal::from_decimal_literal(constants::GLAISHER_QUOTED, 8).unwrap();
    let stored = FixedReal::from_decimal_literal(constants::GLAISHER, 8).unwrap();
    if !quoted.agrees_with(&stored) {
        return Err("stored A disagrees with 1.28242712".into());
    }
    let checks = constants::validate_literals().map_err(|e| e.to_string())?;
    if let Some(bad) = checks.iter().find(|c| c.name == "glaisher" && !c.passed) {
        return Err(format!("A literal check failed: {}", bad.detail));
    }
    let reference = constants::log_glaisher(35).unwrap();
    let err = catalog_error("glaisher_logA", &ConstantArgs::default(), 1_000_000, Method::ADDISON, &reference)?;
    ensure(err <= 1e-4, format!("|error| = {err:.3e} (≤ 1e-4)"))
}

fn c10_catalan() -> Outcome {
    let w = 30;
    let g_over_pi = constants::catalan(w + 5).div(&constants::pi(w + 5)).unwrap();
    // literal check: γ_{2,1}(−1) by quadrature, γ′_{2,1}(−1) by its series
    let gamma = quadrature(&QuadratureSpec::new(
        IntegrandKind::DefinitionSingle,
        params(2, 1, 0, q(-1, 1), 2),
        13,
    ))
    .map_err(|e| e.to_string())?;
    let p = params(2, 1, 1, q(-1, 1), 2);
    let (gamma_prime, report) =
        sum_family(SeriesFamily::Addison, &p, 1_000_000, w, &SumOptions::default()).map_err(|e| e.to_string())?;
    let tail = report.last().unwrap().estimated_tail.to_f64();
    let combo = closed_form::catalan_combination(&gamma, &gamma_prime, w).unwrap();
    let literal_gap = dist(&combo, &g_over_pi);
    let allowed = tail + gamma.error_f64() + combo.error_f64();
    if literal_gap > allowed {
        return Err(format!("G literal check: gap {literal_gap:.3e} exceeds {allowed:.3e}"));
    }
    let err = catalog_error("catalan_over_pi", &ConstantArgs::default(), 1_000_000, Method::ADDISON, &g_over_pi)?;
    ensure(err <= 1e-3, format!("|error| = {err:.3e} (≤ 1e-3); literal combination gap {literal_gap:.3e}"))
}

fn c11_oracle_triangle() -> Outcome {
    let start = Instant::now();
    let sets = [
        (1, 1, q(1, 1)),
        (1, 1, q(-1, 1)),
        (2, 1, q(-1, 1)),
        (1, 2, q(1, 1)),
        (1, 1, q(1, 2)),
    ];
    let mut worst = 0f64;
    for (a, b, z) in sets {
        let p2 = params(a, b, 0, z.clone(), 2);
        let p3 = params(a, b, 0, z, 3);
        let values = [
            ("definition", definition_sum(&p2, 100_000, 12)),
            ("quadrature", quadrature(&QuadratureSpec::new(IntegrandKind::DefinitionSingle, p2.clone(), 10))),
            ("catalan B=2", quadrature(&QuadratureSpec::new(IntegrandKind::CatalanType, p2.clone(), 10))),
            ("catalan B=3", quadrature(&QuadratureSpec::new(IntegrandKind::CatalanType, p3, 10))),
        ];
        let mut ok = Vec::new();
        for (name, v) in values {
            ok.push((name, v.map_err(|e| format!("{name} for {p2}: {e}"))?));
        }
        for i in 0..ok.len() {
            for j in i + 1..ok.len() {
                let (x, y) = (&ok[i].1, &ok[j].1);
                let gap = dist(x, y);
                worst = worst.max(gap);
                if !x.agrees_with(y) {
                    return Err(format!("{} vs {} for {p2}: gap {gap:.3e}", ok[i].0, ok[j].0));
                }
            }
        }
    }
    within_time(start, Duration::from_secs(120))?;
    Ok(format!("largest pairwise gap {worst:.3e}, {:?}", start.elapsed()))
}

fn c12_gamma_21() -> Outcome {
    let v = quadrature(&QuadratureSpec::new(
        IntegrandKind::DefinitionSingle,
        params(2, 1, 0, q(-1, 1), 2),
        12,
    ))
    .map_err(|e| e.to_string())?;
    let err = dist(&v, &closed_form::gamma_21_minus1(30).unwrap());
    ensure(err <= 1e-8, format!("|error| = {err:.3e} (≤ 1e-8)"))
}

fn c13_special_functions() -> Outcome {
    let half_log_pi = constants::log_pi(30).unwrap().mul_rational(&q(1, 2));
    let e1 = dist(&log_gamma(&q(1, 2), 30).unwrap(), &half_log_pi);
    let e2 = dist(&digamma(&q(1, 1), 30).unwrap(), &constants::euler_gamma(30).unwrap().neg());
    if e1 > 1e-12 || e2 > 1e-12 {
        return Err(format!("log Γ(1/2) error {e1:.3e}, ψ(1) error {e2:.3e}"));
    }
    // log Γ(1/4) + log Γ(3/4) = log π − log sin(π/4) = log π + (1/2) log 2
    let lhs = log_gamma(&q(1, 4), 30).unwrap().add(&log_gamma(&q(3, 4), 30).unwrap());
    let rhs = constants::log_pi(32).unwrap().add(&constants::log2(32).mul_rational(&q(1, 2)));
    if !lhs.agrees_with(&rhs) {
        return Err(format!("reflection gap {:.3e}", dist(&lhs, &rhs)));
    }
    let mut runner = TestRunner::new(Config { cases: 100, ..Config::default() });
    let strategy = (1u64..2000, 1u64..100).prop_filter("x < 20", |(n, d)| n < &(20 * d));
    runner
        .run(&strategy, |(n, d)| {
            let x = ExactRational::fraction(n, d);
            let lhs = digamma(&(&x + ExactRational::one()), 25).unwrap();
            let rhs = digamma(&x, 25).unwrap().add(&numerics::fix_from_rational(&x.recip().unwrap(), 25));
            prop_assert!(lhs.agrees_with(&rhs), "ψ recurrence fails at {}", x);
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok(format!("log Γ(1/2) error {e1:.1e}, ψ(1) error {e2:.1e}, reflection and 100 recurrence cases hold"))
}

fn c14_parallel_determinism() -> Outcome {
    let par = gamma_addison(Execution::Parallel).map_err(|e| e.to_string())?;
    let seq = gamma_addison(Execution::Sequential).map_err(|e| e.to_string())?;
    ensure(
        par == seq && par.0.mantissa() == seq.0.mantissa(),
        format!("parallel mantissa {} vs sequential {}", par.0.mantissa(), seq.0.mantissa()),
    )
}

fn main() {
    let criteria: [Criterion; 14] = [
        ("1 kernel identities", c1_kernels),
        ("2 functional equation", c2_functional_equation),
        ("3 digit equivalence", c3_digit_equivalence),
        ("4 gamma via Addison, N=1e4", c4_gamma_addison),
        ("5 gamma via Vacca, N=1e6", c5_gamma_vacca),
        ("6 log(4/pi), N=1e5", c6_log4_over_pi),
        ("7 word constant 11, N=1e6", c7_word_constant),
        ("8 Somos t=2, N=1e6", c8_somos),
        ("9 Glaisher log A, N=1e6", c9_glaisher),
        ("10 Catalan G/pi, N=1e6", c10_catalan),
        ("11 oracle triangle", c11_oracle_triangle),
        ("12 gamma_{2,1}(-1) closed form", c12_gamma_21),
        ("13 special functions", c13_special_functions),
        ("14 parallel determinism", c14_parallel_determinism),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {name}: {detail} [{secs:.2}s]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail} [{secs:.2}s]");
            }
        }
    }
    println!("acceptance: {} of 14 criteria passed", 14 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
