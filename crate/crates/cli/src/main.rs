mod args;

use std::fmt::Write as _;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use gamma_series::catalog::{self, evaluate_constant, Evaluation};
use gamma_series::numerics::FixedReal;
use gamma_series::series_engines::{Execution, SumOptions};
use gamma_series::{verify, Error};

use args::{BenchArgs, Cli, Command, Common, ComputeArgs, OutputFormat, VerifyArgs};

const USAGE: u8 = 2;
const FAILURE: u8 = 1;

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidArgument(_) | Error::InvalidParams(_) | Error::UnknownName(_) | Error::Misaligned { .. } => USAGE,
            _ => FAILURE,
        };
        Failure { code, message: e.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (output, out_path, status) = match &cli.command {
        Command::Compute(a) => (compute(a), a.common.out.clone(), None),
        Command::Bench(a) => (bench(a), a.common.out.clone(), None),
        Command::Verify(a) => match verify_cmd(a) {
            Ok((text, ok)) => (Ok(text), None, Some(ok)),
            Err(e) => (Err(e), None, None),
        },
        Command::List => (Ok(list()), None, None),
    };
    match output {
        Ok(text) => {
            print!("{text}");
            if let Some(path) = out_path {
                if let Err(e) = std::fs::write(&path, &text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(FAILURE);
                }
            }
            match status {
                Some(false) => ExitCode::from(FAILURE),
                _ => ExitCode::SUCCESS,
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn options(common: &Common, checkpoints: Option<Vec<u64>>) -> SumOptions {
    SumOptions {
        checkpoints,
        execution: if common.sequential { Execution::Sequential } else { Execution::Parallel },
    }
}

fn decimal(x: &FixedReal, digits: u32) -> String {
    x.to_decimal_string(digits)
}

fn compute(a: &ComputeArgs) -> Result<String, Failure> {
    let c = &a.common;
    let ev = evaluate_constant(
        &c.constant,
        &c.constant_args(),
        c.base,
        a.terms,
        c.precision,
        a.method,
        &options(c, a.checkpoints.clone()),
    )?;
    Ok(match a.output {
        OutputFormat::Csv => compute_csv(&ev, c.precision),
        OutputFormat::Plain => compute_plain(&ev, c, a.terms),
    })
}

fn compute_csv(ev: &Evaluation, digits: u32) -> String {
    let mut s = String::from("terms,partial,est_tail,ref_error\n");
    for cp in &ev.report.checkpoints {
        let reference = cp.reference_error.as_ref().map(|e| decimal(e, digits)).unwrap_or_default();
        let _ = writeln!(
            s,
            "{},{},{},{}",
            cp.terms,
            decimal(&cp.partial, digits),
            decimal(&cp.estimated_tail, digits),
            reference
        );
    }
    s
}

fn compute_plain(ev: &Evaluation, c: &Common, terms: u64) -> String {
    let digits = c.precision;
    let last = ev.report.last().expect("at least one checkpoint");
    let mut s = String::new();
    let _ = writeln!(s, "constant:       {}", ev.name);
    let _ = writeln!(s, "method:         {} (base {}, {} terms)", ev.method, c.base, terms);
    let _ = writeln!(s, "value:          {}", decimal(&ev.value, digits));
    let _ = writeln!(s, "estimated tail: {:e}", last.estimated_tail.to_f64());
    let _ = writeln!(s, "rounding error: {:e}", ev.value.error_f64());
    if let (Some(r), Some(d)) = (&ev.reference, ev.deviation()) {
        let _ = writeln!(s, "reference:      {}", decimal(r, digits));
        let _ = writeln!(s, "deviation:      {:e}", d.to_f64());
    }
    s
}

fn bench(a: &BenchArgs) -> Result<String, Failure> {
    let c = &a.common;
    let args = c.constant_args();
    let reference = catalog::reference_value(&c.constant, &args, c.base, c.precision)?;
    let mut checkpoints = a.checkpoints.clone();
    checkpoints.sort_unstable();
    checkpoints.dedup();
    let mut s = String::from("method,terms,abs_error,est_tail,seconds\n");
    for &method in &a.methods {
        for &n in &checkpoints {
            let start = Instant::now();
            let ev = evaluate_constant(&c.constant, &args, c.base, n, c.precision, Some(method), &options(c, Some(vec![n])))?;
            let seconds = start.elapsed().as_secs_f64();
            let last = ev.report.last().expect("checkpoint");
            let error = ev.value.sub(&reference.rescale(ev.value.scale())).abs();
            let _ = writeln!(
                s,
                "{},{},{},{},{:.6}",
                method,
                n,
                decimal(&error, c.precision),
                decimal(&last.estimated_tail, c.precision),
                seconds
            );
        }
    }
    Ok(s)
}

fn verify_cmd(a: &VerifyArgs) -> Result<(String, bool), Failure> {
    let reports = verify::run(&a.suite)?;
    let mut s = String::new();
    let mut ok = true;
    for r in &reports {
        ok &= r.passed();
        let verdict = if r.passed() { "PASS" } else { "FAIL" };
        let _ = writeln!(s, "{verdict} {} ({} checks)", r.name, r.checks);
        for f in &r.failures {
            let _ = writeln!(s, "  {f}");
        }
    }
    Ok((s, ok))
}

fn list() -> String {
    let mut s = String::new();
    for e in catalog::list_constants() {
        let methods: Vec<&str> = e.methods.iter().map(|m| m.name()).collect();
        let args = if e.args.is_empty() { "-".to_string() } else { e.args.join(",") };
        let _ = writeln!(s, "{:24} args={:10} class={:13} methods={}  {}", e.name, args, e.class.to_string(), methods.join(","), e.description);
    }
    s
}
