//! Command-line driver: exact function-field zeta tables, number-field zeta
//! tables over (s, w) ranges, lattice invariants, oscillatory-integral scans,
//! the regularization report, and the aggregated `verify` suite.
//!
//! Exit codes: 0 success, 1 invariant/computation failure, 2 usage error.
//! Errors are reported as single `error: ...` lines on stderr. CSV output is
//! deterministic (17 significant digits, rows in input order).

use crate::checks;
use crate::error::{Error, Result};
use crate::ffzeta::{
    check_functional_equation, curve_elliptic, curve_p1, extract_p, load_curve_file, render_p,
    zeta_two_var, CurveData,
};
use crate::fielddata::{load_field_file, make_quadratic, make_rationals, NumberFieldData};
use crate::oscint::{alpha_k, c_integral};
use crate::zetanf::{ZetaEvalParams, ZetaEvaluator};
use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rayon::prelude::*;
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Parser, Debug)]
#[command(
    name = "arakzeta",
    version,
    about = "Two-variable zeta functions: exact for curves over finite fields, \
             numerical for number fields via theta integrals over the Arakelov class space"
)]
struct RunConfig {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum NfFunction {
    /// zeta_{X_k}(s, w): the raw continuation (poles at s = 0, w)
    ZetaXk,
    /// zeta(X_k, s, w): the normalized version equal to the completed
    /// Dedekind zeta at w = 1
    Zeta,
    /// L(H^1(X_k), s, w): the entire two-variable L-function
    LH1,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print P_i(u) of a curve and check the degree bounds and functional
    /// equation exactly
    Ffzeta {
        /// builtin:p1:<q> | builtin:ell:<q>:<N> | file:<path>
        #[arg(long)]
        curve: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate a two-variable zeta function over an (s, w) range as CSV
    Nfzeta {
        /// builtin:Q | builtin:quad:<m> | file:<path>
        #[arg(long)]
        field: String,
        /// real part range: <x> or <start>:<stop>:<count>
        #[arg(long)]
        s: String,
        #[arg(long, default_value = "0")]
        s_imag: String,
        #[arg(long)]
        w: String,
        #[arg(long, default_value = "0")]
        w_imag: String,
        #[arg(long, value_enum, default_value = "zeta-xk")]
        function: NfFunction,
        /// torus grid points per dimension
        #[arg(long, default_value_t = 256)]
        grid: usize,
        #[arg(long, default_value_t = 1e-10)]
        t_tol: f64,
        #[arg(long, default_value_t = 1e-10)]
        theta_tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lattice invariants a, b, nu over the class-space grid as CSV
    Invariants {
        #[arg(long)]
        field: String,
        #[arg(long, default_value_t = 256)]
        grid: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// C(s) and its normalized asymptotic ratio over a real s range as CSV
    Oscint {
        #[arg(long)]
        field: String,
        #[arg(long)]
        s: String,
        #[arg(long, default_value_t = 256)]
        grid: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the zeta-regularization check suite and print a report
    Regprod,
    /// Run every module's invariant checks; exit 0 iff all pass
    Verify {
        #[arg(long, default_value = "builtin:Q")]
        field: String,
        /// optional extra curve to include in the exact checks
        #[arg(long)]
        curve: Option<String>,
        #[arg(long, default_value_t = 128)]
        grid: usize,
    },
}

/// Entry point used by the binary; returns the process exit code.
pub fn run(args: &[String]) -> u8 {
    if let Ok(threads) = std::env::var("ARAKZETA_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
        }
    }
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            // clap renders help/version on stdout with exit 0
            if e.use_stderr() {
                eprintln!("error: usage: {}", e.kind());
                return 2;
            }
            let _ = e.print();
            return 0;
        }
    };
    match dispatch(config) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::InvalidInput(_) => 2,
                _ => 1,
            }
        }
    }
}

fn dispatch(config: RunConfig) -> Result<u8> {
    match config.command {
        Command::Ffzeta { curve, out } => cmd_ffzeta(&curve, out.as_deref()),
        Command::Nfzeta {
            field,
            s,
            s_imag,
            w,
            w_imag,
            function,
            grid,
            t_tol,
            theta_tol,
            out,
        } => cmd_nfzeta(
            &field,
            &s,
            &s_imag,
            &w,
            &w_imag,
            function,
            grid,
            t_tol,
            theta_tol,
            out.as_deref(),
        ),
        Command::Invariants { field, grid, out } => cmd_invariants(&field, grid, out.as_deref()),
        Command::Oscint { field, s, grid, out } => cmd_oscint(&field, &s, grid, out.as_deref()),
        Command::Regprod => cmd_regprod(),
        Command::Verify { field, curve, grid } => cmd_verify(&field, curve.as_deref(), grid),
    }
}

pub fn parse_field_spec(spec: &str) -> Result<NumberFieldData> {
    if let Some(rest) = spec.strip_prefix("builtin:") {
        if rest == "Q" {
            return Ok(make_rationals());
        }
        if let Some(m) = rest.strip_prefix("quad:") {
            let m: i64 = m
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad quadratic field spec {spec:?}")))?;
            return make_quadratic(m);
        }
        return Err(Error::InvalidInput(format!("unknown builtin field {rest:?}")));
    }
    if let Some(path) = spec.strip_prefix("file:") {
        return load_field_file(path);
    }
    Err(Error::InvalidInput(format!(
        "field spec {spec:?} is not builtin:Q, builtin:quad:<m> or file:<path>"
    )))
}

pub fn parse_curve_spec(spec: &str) -> Result<CurveData> {
    if let Some(rest) = spec.strip_prefix("builtin:") {
        if let Some(q) = rest.strip_prefix("p1:") {
            let q: u64 = q
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad curve spec {spec:?}")))?;
            return Ok(curve_p1(q));
        }
        if let Some(body) = rest.strip_prefix("ell:") {
            let parts: Vec<&str> = body.split(':').collect();
            if parts.len() != 2 {
                return Err(Error::InvalidInput(format!("bad elliptic spec {spec:?}")));
            }
            let q: u64 = parts[0]
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad curve spec {spec:?}")))?;
            let n: u64 = parts[1]
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad curve spec {spec:?}")))?;
            return Ok(curve_elliptic(q, n));
        }
        return Err(Error::InvalidInput(format!("unknown builtin curve {rest:?}")));
    }
    if let Some(path) = spec.strip_prefix("file:") {
        return load_curve_file(path);
    }
    Err(Error::InvalidInput(format!(
        "curve spec {spec:?} is not builtin:p1:<q>, builtin:ell:<q>:<N> or file:<path>"
    )))
}

/// `<x>` or `<start>:<stop>:<count>` (count >= 1, inclusive endpoints).
pub fn parse_range(spec: &str) -> Result<Vec<f64>> {
    let bad =
        || Error::InvalidInput(format!("bad range {spec:?}, want <x> or <start>:<stop>:<count>"));
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.len() {
        1 => Ok(vec![parts[0].trim().parse().map_err(|_| bad())?]),
        3 => {
            let start: f64 = parts[0].trim().parse().map_err(|_| bad())?;
            let stop: f64 = parts[1].trim().parse().map_err(|_| bad())?;
            let count: usize = parts[2].trim().parse().map_err(|_| bad())?;
            if count == 0 {
                return Err(bad());
            }
            if count == 1 {
                return Ok(vec![start]);
            }
            let step = (stop - start) / (count as f64 - 1.0);
            Ok((0..count).map(|i| start + step * i as f64).collect())
        }
        _ => Err(bad()),
    }
}

fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

fn write_output(out: Option<&Path>, content: &str) -> Result<()> {
    match out {
        None => {
            print!("{content}");
            std::io::stdout().flush().ok();
            Ok(())
        }
        Some(path) => std::fs::write(path, content)
            .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display()))),
    }
}

fn cmd_ffzeta(curve_spec: &str, out: Option<&Path>) -> Result<u8> {
    let curve = parse_curve_spec(curve_spec)?;
    let z = zeta_two_var(&curve)?;
    let p = extract_p(&z, curve.genus)?;
    let mut text = String::new();
    text.push_str(&format!(
        "curve: q = {}, genus = {}, h = {}\n",
        curve.q, curve.genus, curve.h
    ));
    text.push_str(&format!("P(T,u) = {}\n", render_p(&p)));
    for (i, pi) in p.iter().enumerate() {
        text.push_str(&format!("P_{i}(u) = {pi}\n"));
    }
    text.push_str("degree bounds: ok\n");
    match check_functional_equation(&z, curve.genus)? {
        None => text.push_str("functional equation: ok\n"),
        Some(i) => {
            text.push_str(&format!("functional equation: VIOLATED at index {i}\n"));
            write_output(out, &text)?;
            return Ok(1);
        }
    }
    write_output(out, &text)?;
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn cmd_nfzeta(
    field_spec: &str,
    s: &str,
    s_imag: &str,
    w: &str,
    w_imag: &str,
    function: NfFunction,
    grid: usize,
    t_tol: f64,
    theta_tol: f64,
    out: Option<&Path>,
) -> Result<u8> {
    let field = parse_field_spec(field_spec)?;
    let s_re = parse_range(s)?;
    let s_im = parse_range(s_imag)?;
    let w_re = parse_range(w)?;
    let w_im = parse_range(w_imag)?;
    let params = ZetaEvalParams::new(&field, grid, t_tol, theta_tol)?;
    let evaluator = ZetaEvaluator::new(&field, &params)?;
    let mut points = Vec::new();
    for &sr in &s_re {
        for &si in &s_im {
            for &wr in &w_re {
                for &wi in &w_im {
                    points.push((Complex64::new(sr, si), Complex64::new(wr, wi)));
                }
            }
        }
    }
    let rows: Vec<String> = points
        .par_iter()
        .map(|&(sv, wv)| {
            let result = match function {
                NfFunction::ZetaXk => evaluator.zeta_xk(sv, wv),
                NfFunction::Zeta => evaluator.zeta_normalized(sv, wv),
                NfFunction::LH1 => evaluator.l_h1(sv, wv),
            };
            match result {
                Ok(z) => format!(
                    "{},{},{},{},{},{},{}",
                    fmt17(sv.re),
                    fmt17(sv.im),
                    fmt17(wv.re),
                    fmt17(wv.im),
                    fmt17(z.value.re),
                    fmt17(z.value.im),
                    fmt17(z.est_error)
                ),
                Err(_) => format!(
                    "{},{},{},{},NaN,NaN,inf",
                    fmt17(sv.re),
                    fmt17(sv.im),
                    fmt17(wv.re),
                    fmt17(wv.im)
                ),
            }
        })
        .collect();
    let mut csv = String::from("s_re,s_im,w_re,w_im,value_re,value_im,est_error\n");
    for row in rows {
        csv.push_str(&row);
        csv.push('\n');
    }
    write_output(out, &csv)?;
    Ok(0)
}

fn cmd_invariants(field_spec: &str, grid: usize, out: Option<&Path>) -> Result<u8> {
    let field = parse_field_spec(field_spec)?;
    let grid = crate::classspace::build_grid(&field, grid)?;
    let r = field.unit_rank_r;
    let rows: Vec<String> = grid
        .points
        .par_iter()
        .map(|(p, _)| {
            let theta: Vec<String> = p.theta.iter().map(|&t| fmt17(t)).collect();
            let prefix = if r > 0 {
                format!("{},{}", p.class_index, theta.join(","))
            } else {
                format!("{}", p.class_index)
            };
            match crate::arakelov::invariants_abnu(&field, &p.divisor) {
                Ok(inv) => {
                    format!("{prefix},{},{},{}", fmt17(inv.a), fmt17(inv.b), inv.nu)
                }
                Err(_) => format!("{prefix},NaN,NaN,0"),
            }
        })
        .collect();
    let mut header = String::from("class_index");
    for i in 0..r {
        header.push_str(&format!(",theta_{i}"));
    }
    header.push_str(",a,b,nu\n");
    let mut csv = header;
    for row in rows {
        csv.push_str(&row);
        csv.push('\n');
    }
    write_output(out, &csv)?;
    Ok(0)
}

fn cmd_oscint(field_spec: &str, s: &str, grid: usize, out: Option<&Path>) -> Result<u8> {
    let field = parse_field_spec(field_spec)?;
    let grid = crate::classspace::build_grid(&field, grid)?;
    let s_values = parse_range(s)?;
    let n = field.degree_n as f64;
    let alpha = alpha_k(&field);
    let rows: Vec<String> = s_values
        .par_iter()
        .map(|&sv| match c_integral(&field, &grid, Complex64::new(sv, 0.0)) {
            Ok(c) => {
                let ratio = c.re * sv.powf(field.unit_rank_r as f64 / 2.0) * n.powf(sv)
                    / (field.mu_count as f64 * alpha);
                format!("{},{},{},{}", fmt17(sv), fmt17(c.re), fmt17(c.im), fmt17(ratio))
            }
            Err(_) => format!("{},NaN,NaN,NaN", fmt17(sv)),
        })
        .collect();
    let mut csv = String::from("s,c_re,c_im,ratio_to_asymptotic\n");
    for row in rows {
        csv.push_str(&row);
        csv.push('\n');
    }
    write_output(out, &csv)?;
    Ok(0)
}

fn cmd_regprod() -> Result<u8> {
    let results = checks::verify_regprod();
    let mut all_ok = true;
    for r in &results {
        let status = if r.passed { "ok  " } else { "FAIL" };
        println!("{status} {} — {}", r.name, r.detail);
        all_ok &= r.passed;
    }
    Ok(if all_ok { 0 } else { 1 })
}

fn cmd_verify(field_spec: &str, curve_spec: Option<&str>, grid: usize) -> Result<u8> {
    let field = parse_field_spec(field_spec)?;
    let curve = match curve_spec {
        Some(spec) => Some(parse_curve_spec(spec)?),
        None => None,
    };
    let mut results = checks::verify_field(&field, grid);
    results.extend(checks::verify_oscint_core());
    results.extend(checks::verify_regprod());
    results.extend(checks::verify_ffzeta(curve.as_ref()));
    let mut all_ok = true;
    for r in &results {
        let status = if r.passed { "ok  " } else { "FAIL" };
        println!("{status} {} — {}", r.name, r.detail);
        all_ok &= r.passed;
    }
    if all_ok {
        println!("verify: all {} checks passed", results.len());
        Ok(0)
    } else {
        println!("verify: FAILURES present");
        Ok(1)
    }
}
