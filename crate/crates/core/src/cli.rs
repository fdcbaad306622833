//! Command-line front end.
//!
//! Exit codes: 0 when every asserted check passes, 1 when an asserted
//! check fails or a computation cannot meet its tolerance, 2 on usage
//! errors (unknown command, malformed number, violated precondition).

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::genocchi::{genocchi_number, verify_theorem1};
use crate::numeric::{Precision, SeriesEstimate};
use crate::qcore::{q_number, QPoint};
use crate::qgenocchi::{evaluate, mod_q_genocchi_exact, mod_q_genocchi_poly, mod_q_genocchi_series, Engine, QGenocchiValue};
use crate::rational::{as_integer, Rational};
use crate::report::{all_passed, IdentityReport};
use crate::scalar::Scalar;
use crate::suite::{run_suite, verify_addition, write_csv, write_json, Suite};
use crate::symmetry::{
    audit_thm25, check_thm25_limit, probe_corollary_a2, verify_distribution, verify_remark1, verify_thm_qgenocchi,
    verify_thm_qgenocchi_numeric, verify_thm_qzeta, ExactnessWitness, Variant,
};
use crate::zeta::{euler_zeta, kim_zeta, lerch_phi, verify_e7, verify_e8, zeta_tilde, zeta_tilde_negative_exact, Order};

/// Environment variable that sets the default truncation target; `--eps`
/// takes precedence.
pub const EPS_ENV: &str = "QZETA_EPS";

#[derive(Debug, Parser)]
#[command(name = "qzeta", version, about = "q-Genocchi polynomials, q-Zeta type functions and their symmetry identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Table of Genocchi numbers G_0..G_N.
    Genocchi {
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check one identity and print its report.
    Verify(VerifyArgs),
    /// Run a suite of checks.
    Report {
        #[arg(long, default_value = "default", value_parser = parse_suite)]
        suite: Suite,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        eps: Option<f64>,
    },
    /// Evaluate a modified q-Genocchi polynomial.
    Qgenocchi {
        #[arg(long)]
        n: u32,
        #[arg(long, value_parser = parse_scalar)]
        q: Scalar,
        #[arg(long, value_parser = parse_scalar, default_value = "0")]
        x: Scalar,
        #[arg(long, value_enum)]
        mode: Option<EngineArg>,
        /// Print the polynomial in x instead of a value (exact q only).
        #[arg(long)]
        poly: bool,
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate a zeta-type function.
    Zeta {
        #[arg(long, value_enum)]
        kind: ZetaKind,
        #[arg(long, value_parser = parse_scalar, allow_hyphen_values = true)]
        s: Scalar,
        /// Imaginary part of s.
        #[arg(long, allow_hyphen_values = true)]
        s_im: Option<f64>,
        /// Shift x (the parameter a for lerch).
        #[arg(long, value_parser = parse_scalar, allow_hyphen_values = true)]
        x: Scalar,
        #[arg(long, value_parser = parse_scalar)]
        q: Option<Scalar>,
        #[arg(long, allow_hyphen_values = true)]
        z: Option<f64>,
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the q-number [lambda]_q.
    Qnum {
        #[arg(long, value_parser = parse_scalar, allow_hyphen_values = true)]
        lambda: Scalar,
        #[arg(long, value_parser = parse_scalar)]
        q: Scalar,
    },
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    identity: VerifyId,
    #[arg(long)]
    a: Option<u32>,
    #[arg(long)]
    b: Option<u32>,
    #[arg(long)]
    n: Option<u32>,
    /// Degree for thm-classical; defaults to --n.
    #[arg(long)]
    m: Option<u32>,
    /// Decade for the thm25 limit check, q = 1 - 10^(-k).
    #[arg(long)]
    k: Option<u32>,
    #[arg(long, value_parser = parse_scalar, allow_hyphen_values = true)]
    s: Option<Scalar>,
    #[arg(long, value_parser = parse_scalar)]
    q: Option<Scalar>,
    #[arg(long, value_parser = parse_scalar, allow_hyphen_values = true)]
    x: Option<Scalar>,
    #[arg(long, value_parser = parse_scalar, allow_hyphen_values = true)]
    y: Option<Scalar>,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long, value_parser = parse_variant)]
    variant: Option<Variant>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum VerifyId {
    ThmClassical,
    ThmQzeta,
    ThmQgenocchi,
    Remark1,
    CorollaryA2,
    Distribution,
    Thm25,
    E7,
    E8,
    Addition,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum EngineArg {
    Exact,
    Series,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum ZetaKind {
    Tilde,
    Kim,
    Euler,
    Lerch,
}

fn parse_scalar(s: &str) -> std::result::Result<Scalar, String> {
    Scalar::parse(s).map_err(|e| e.to_string())
}

fn parse_variant(s: &str) -> std::result::Result<Variant, String> {
    s.parse().map_err(|_| format!("unknown variant {s:?}"))
}

fn parse_suite(s: &str) -> std::result::Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn precision(flag: Option<f64>) -> Result<Precision> {
    let eps = match flag {
        Some(e) => Some(e),
        None => match std::env::var(EPS_ENV) {
            Ok(v) => Some(v.trim().parse().map_err(|_| Error::Parse(format!("{EPS_ENV}={v}")))?),
            Err(_) => None,
        },
    };
    match eps {
        Some(e) => Precision::with_eps(e),
        None => Ok(Precision::default()),
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Precision { .. } | Error::Io(_) => 1,
        _ => 2,
    }
}

/// Runs the command line with the process's standard streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// Runs the command line, writing regular output to `out` (unless `--out`
/// names a file) and diagnostics to `err`.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let text = e.to_string();
            let line = text.lines().next().unwrap_or("usage error");
            let _ = writeln!(err, "{line}");
            return 2;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn with_output<F>(path: Option<PathBuf>, out: &mut dyn Write, f: F) -> Result<()>
where
    F: FnOnce(&mut dyn Write) -> Result<()>,
{
    match path {
        Some(p) => {
            let file = File::create(&p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
            let mut w = BufWriter::new(file);
            f(&mut w)?;
            w.flush().map_err(|e| Error::Io(e.to_string()))
        }
        None => f(out),
    }
}

fn emit_json(path: Option<PathBuf>, out: &mut dyn Write, value: &impl Serialize) -> Result<()> {
    with_output(path, out, |w| {
        serde_json::to_writer_pretty(&mut *w, value).map_err(|e| Error::Io(e.to_string()))?;
        writeln!(w).map_err(|e| Error::Io(e.to_string()))
    })
}

fn emit_reports(reports: &[IdentityReport], format: Format, path: Option<PathBuf>, out: &mut dyn Write) -> Result<i32> {
    with_output(path, out, |w| match format {
        Format::Json => write_json(reports, w),
        Format::Csv => write_csv(reports, w),
    })?;
    Ok(if all_passed(reports) { 0 } else { 1 })
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Genocchi { max_n, format, out: path } => {
            let rows: Vec<(usize, Rational)> = (0..=max_n).map(|n| (n, genocchi_number(n))).collect();
            with_output(path, out, |w| match format {
                Format::Csv => {
                    let mut c = csv::Writer::from_writer(w);
                    let io = |e: csv::Error| Error::Io(e.to_string());
                    c.write_record(["n", "value"]).map_err(io)?;
                    for (n, v) in &rows {
                        c.write_record([n.to_string(), v.to_string()]).map_err(io)?;
                    }
                    c.flush().map_err(|e| Error::Io(e.to_string()))
                }
                Format::Json => {
                    let v: Vec<Value> = rows.iter().map(|(n, g)| json!({"n": n, "value": g.to_string()})).collect();
                    serde_json::to_writer_pretty(&mut *w, &v).map_err(|e| Error::Io(e.to_string()))?;
                    writeln!(w).map_err(|e| Error::Io(e.to_string()))
                }
            })?;
            Ok(0)
        }
        Command::Verify(args) => {
            let format = args.format;
            let path = args.out.clone();
            let reports = verify(args)?;
            emit_reports(&reports, format, path, out)
        }
        Command::Report { suite, out: path, format, eps } => {
            let reports = run_suite(suite, &precision(eps)?)?;
            emit_reports(&reports, format, path, out)
        }
        Command::Qgenocchi { n, q, x, mode, poly, eps, out: path } => {
            let prec = precision(eps)?;
            let qp = QPoint::from_scalar(&q)?;
            if poly {
                let qr = qp
                    .as_exact()
                    .ok_or_else(|| Error::Mode("--poly needs an exact rational q".into()))?;
                let p = mod_q_genocchi_poly(n, qr)?;
                let v = json!({"n": n, "q": qp, "poly": p, "display": p.to_string()});
                emit_json(path, out, &v)?;
                return Ok(0);
            }
            let value = match mode {
                None => evaluate(n, &qp, &x, &prec)?,
                Some(EngineArg::Exact) => {
                    let (qr, xr) = match (qp.as_exact(), x.as_exact()) {
                        (Some(qr), Some(xr)) => (qr, xr),
                        _ => return Err(Error::Mode("exact engine needs rational q and x".into())),
                    };
                    QGenocchiValue {
                        n,
                        q: qp.clone(),
                        x: x.clone(),
                        value: Scalar::Exact(mod_q_genocchi_exact(n, qr, xr)?),
                        engine: Engine::Exact,
                        terms: None,
                        bound: None,
                    }
                }
                Some(EngineArg::Series) => {
                    let est = mod_q_genocchi_series(n, qp.to_f64(), x.to_f64(), &prec)?;
                    QGenocchiValue {
                        n,
                        q: qp.clone(),
                        x: x.clone(),
                        value: Scalar::Float(est.value),
                        engine: Engine::Series,
                        terms: Some(est.terms),
                        bound: Some(est.bound),
                    }
                }
            };
            emit_json(path, out, &value)?;
            Ok(0)
        }
        Command::Zeta { kind, s, s_im, x, q, z, eps, out: path } => {
            let v = zeta(kind, &s, s_im, &x, q.as_ref(), z, &precision(eps)?)?;
            emit_json(path, out, &v)?;
            Ok(0)
        }
        Command::Qnum { lambda, q } => {
            let qp = QPoint::from_scalar(&q)?;
            let v = q_number(&lambda, &qp)?;
            writeln!(out, "{}", json!({"lambda": lambda, "q": qp, "value": v})).map_err(|e| Error::Io(e.to_string()))?;
            Ok(0)
        }
    }
}

fn need<T>(v: Option<T>, name: &str) -> Result<T> {
    v.ok_or_else(|| Error::Precondition(format!("--{name} is required")))
}

fn need_exact(v: Option<Scalar>, name: &str) -> Result<Rational> {
    match need(v, name)? {
        Scalar::Exact(r) => Ok(r),
        Scalar::Float(_) => Err(Error::Mode(format!("--{name} must be an exact rational such as 1/2"))),
    }
}

fn need_f64(v: Option<Scalar>, name: &str) -> Result<f64> {
    need(v, name).map(|s| s.to_f64())
}

fn verify(args: VerifyArgs) -> Result<Vec<IdentityReport>> {
    let prec = precision(args.eps)?;
    let a = args.a;
    let b = args.b;
    let report = match args.identity {
        VerifyId::ThmClassical => {
            let m = need(args.m.or(args.n), "m")?;
            verify_theorem1(need(a, "a")?, need(b, "b")?, m, &need_exact(args.x, "x")?)?
        }
        VerifyId::ThmQzeta => verify_thm_qzeta(
            need(a, "a")?,
            need(b, "b")?,
            need_f64(args.s, "s")?,
            need_f64(args.x, "x")?,
            need_f64(args.q, "q")?,
            &prec,
        )?,
        VerifyId::Remark1 => verify_remark1(
            need(a, "a")?,
            need_f64(args.s, "s")?,
            need_f64(args.x, "x")?,
            need_f64(args.q, "q")?,
            &prec,
        )?,
        VerifyId::CorollaryA2 => {
            probe_corollary_a2(need_f64(args.s, "s")?, need_f64(args.x, "x")?, need_f64(args.q, "q")?, &prec)?
        }
        VerifyId::ThmQgenocchi => {
            let (a, b, n) = (need(a, "a")?, need(b, "b")?, need(args.n, "n")?);
            let variant = args.variant.unwrap_or(Variant::Derived);
            let (q, x) = (need(args.q, "q")?, need(args.x, "x")?);
            let exact = match (&q, &x) {
                (Scalar::Exact(qr), Scalar::Exact(xr)) => ExactnessWitness::new(a, b, qr.clone(), xr.clone()).ok(),
                _ => None,
            };
            match exact {
                Some(w) => verify_thm_qgenocchi(&w, n, variant)?,
                None => verify_thm_qgenocchi_numeric(a, b, n, x.to_f64(), q.to_f64(), variant, &prec)?,
            }
        }
        VerifyId::Distribution => {
            let q = QPoint::from_scalar(&need(args.q, "q")?)?;
            verify_distribution(
                need(a, "a")?,
                need(args.n, "n")?,
                &need(args.x, "x")?,
                &q,
                args.variant.unwrap_or(Variant::Derived),
                &prec,
            )?
        }
        VerifyId::Thm25 => {
            let (a, b, n) = (need(a, "a")?, need(b, "b")?, need(args.n, "n")?);
            let x = need_exact(args.x, "x")?;
            match args.k {
                Some(k) => check_thm25_limit(a, b, n, &x, k)?,
                None => {
                    let w = ExactnessWitness::new(a, b, need_exact(args.q, "q")?, x)?;
                    audit_thm25(&w, n, args.variant.unwrap_or(Variant::Printed))?
                }
            }
        }
        VerifyId::E7 => verify_e7(need(args.n, "n")?, &need_exact(args.x, "x")?, &need_exact(args.q, "q")?)?,
        VerifyId::E8 => verify_e8(need_f64(args.s, "s")?, need_f64(args.x, "x")?, need_f64(args.q, "q")?, &prec)?,
        VerifyId::Addition => verify_addition(
            need(args.n, "n")?,
            &need_exact(args.q, "q")?,
            &need_exact(args.x, "x")?,
            &need_exact(args.y, "y")?,
        )?,
    };
    Ok(vec![report])
}

fn estimate_json<V: Into<Complex64>>(est: SeriesEstimate<V>, complex: bool) -> Value {
    let v: Complex64 = est.value.into();
    let mut out = json!({"engine": "series", "terms": est.terms, "bound": est.bound});
    if complex {
        out["value"] = json!(v.re);
        out["value_im"] = json!(v.im);
    } else {
        out["value"] = json!(v.re);
    }
    out
}

fn run_zeta<S: Order>(kind: ZetaKind, s: S, x: f64, q: Option<f64>, z: Option<f64>, prec: &Precision) -> Result<SeriesEstimate<S::Value>> {
    match kind {
        ZetaKind::Tilde => zeta_tilde(s, x, need(q, "q")?, prec),
        ZetaKind::Kim => kim_zeta(s, x, need(q, "q")?, prec),
        ZetaKind::Euler => euler_zeta(s, x, prec),
        ZetaKind::Lerch => lerch_phi(need(z, "z")?, s, x, prec),
    }
}

fn zeta(
    kind: ZetaKind,
    s: &Scalar,
    s_im: Option<f64>,
    x: &Scalar,
    q: Option<&Scalar>,
    z: Option<f64>,
    prec: &Precision,
) -> Result<Value> {
    let mut head = json!({"kind": kind, "s": s, "x": x});
    if let Some(im) = s_im {
        head["s_im"] = json!(im);
    }
    if let Some(q) = q {
        head["q"] = json!(QPoint::from_scalar(q)?);
    }
    if let Some(z) = z {
        head["z"] = json!(z);
    }
    let body = match (kind, s, x, q, s_im) {
        // exact route at non-positive integer s
        (ZetaKind::Tilde, Scalar::Exact(sr), Scalar::Exact(xr), Some(Scalar::Exact(qr)), None)
            if as_integer(sr).is_some_and(|k| k <= 0) =>
        {
            let n = u32::try_from(-as_integer(sr).unwrap_or(0)).map_err(|_| Error::Domain("s out of range".into()))?;
            let v = zeta_tilde_negative_exact(n, xr, qr)?;
            json!({"engine": "exact", "value": Scalar::Exact(v)})
        }
        _ => {
            let qf = q.map(Scalar::to_f64);
            match s_im {
                Some(im) => estimate_json(run_zeta(kind, Complex64::new(s.to_f64(), im), x.to_f64(), qf, z, prec)?, true),
                None => estimate_json(run_zeta(kind, s.to_f64(), x.to_f64(), qf, z, prec)?, false),
            }
        }
    };
    if let (Value::Object(h), Value::Object(b)) = (&mut head, body) {
        h.extend(b);
    }
    Ok(head)
}
