use std::fs::File;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use critpoly::arith::{props_rows, triangle, TriangleKind};
use critpoly::construct::{construct, mellin_closed, mellin_t_closed, p_beta, CriticalPolynomial, Form};
use critpoly::exact::rat::{fmt_rat, parse_rat, Rat};
use critpoly::quad::{mellin_rows, mellin_t_rows};
use critpoly::suites::{run_suite, SuiteOptions, SUITES};
use critpoly::verify::{certify_critical_line, critical_roots_f64, Certificate};
use critpoly::Error;

#[derive(Parser)]
#[command(name = "critpoly", version, about = "Construct, certify and verify critical polynomials")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Output::Text, global = true)]
    output: Output,
    /// Write to FILE instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<String>,
    #[arg(long, default_value_t = 1, global = true)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Gegenbauer,
    Beta,
    Chebyshev,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormArg {
    S41,
    S32,
    S21,
    Hyp,
    Recur,
}

impl From<FormArg> for Form {
    fn from(f: FormArg) -> Form {
        match f {
            FormArg::S41 => Form::S41,
            FormArg::S32 => Form::S32,
            FormArg::S21 => Form::S21,
            FormArg::Hyp => Form::Hyp,
            FormArg::Recur => Form::Recur,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    A,
    B,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MellinKindArg {
    Gegenbauer,
    T,
}

#[derive(Subcommand)]
enum Cmd {
    /// Construct a critical polynomial.
    Poly {
        #[arg(long, value_enum, default_value_t = FamilyArg::Gegenbauer)]
        family: FamilyArg,
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long)]
        beta: Option<String>,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        form: Option<FormArg>,
    },
    /// Certify that all zeros lie on Re s = 1/2 and list them.
    Roots {
        #[arg(long, value_enum, default_value_t = FamilyArg::Gegenbauer)]
        family: FamilyArg,
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long)]
        beta: Option<String>,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        form: Option<FormArg>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 10)]
        nmax: usize,
        /// Randomized trials per identity in the hyp3f2 suite.
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
    /// Mellin transforms: quadrature against the closed form.
    Mellin {
        #[arg(long, value_enum, default_value_t = MellinKindArg::Gegenbauer)]
        kind: MellinKindArg,
        #[arg(long)]
        lambda: Option<String>,
        /// A single index; otherwise 0..=nmax.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 10)]
        nmax: usize,
        /// Comma-separated real s values.
        #[arg(long, value_delimiter = ',', default_values_t = vec![0.5, 1.0, 2.0, 3.7])]
        s: Vec<f64>,
        /// Emit the closed-form descriptor instead of the comparison rows.
        #[arg(long)]
        closed: bool,
    },
    /// Odd-integer values 4C_{n-1}p_{2n}(s) and C_n p_{2n+1}(s).
    Props {
        #[arg(long, default_value_t = 12)]
        nmax: u64,
        #[arg(long, default_value_t = 40)]
        smax: u64,
    },
    /// Rows of the a- or b-triangle.
    Triangle {
        #[arg(long, value_enum)]
        kind: KindArg,
        /// A single row; otherwise rows up to kmax.
        #[arg(long)]
        k: Option<u64>,
        #[arg(long, default_value_t = 10)]
        kmax: u64,
    },
}

enum Failure {
    Usage(String),
    Check(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_)
            | Error::InvalidLambda(_)
            | Error::InvalidBeta(_)
            | Error::InvalidParameters(_)
            | Error::UndefinedIndex(_)
            | Error::ConvergenceMarginViolated(_) => Failure::Usage(e.to_string()),
            other => Failure::Check(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(io::Error::other(e))
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(io::Error::other(e))
    }
}

type Out = Box<dyn Write>;

fn open(out: &Option<String>) -> io::Result<Out> {
    Ok(match out {
        Some(p) => Box::new(File::create(p)?),
        None => Box::new(io::stdout().lock()),
    })
}

fn json<T: Serialize>(w: &mut Out, v: &T) -> Result<(), Failure> {
    serde_json::to_writer_pretty(&mut *w, v)?;
    writeln!(w)?;
    Ok(())
}

fn csv_rows<T: Serialize>(w: &mut Out, rows: &[T]) -> Result<(), Failure> {
    let mut c = csv::Writer::from_writer(&mut *w);
    for r in rows {
        c.serialize(r)?;
    }
    c.flush()?;
    Ok(())
}

fn rational(flag: &str, v: &Option<String>) -> Result<Option<Rat>, Failure> {
    v.as_ref()
        .map(|s| parse_rat(s).map_err(|_| Failure::Usage(format!("--{flag} expects an exact rational p or p/q, got {s:?}"))))
        .transpose()
}

fn build(
    family: FamilyArg,
    lambda: &Option<String>,
    beta: &Option<String>,
    n: usize,
    form: Option<FormArg>,
) -> Result<CriticalPolynomial, Failure> {
    let lambda = rational("lambda", lambda)?;
    let beta = rational("beta", beta)?;
    let usage = |m: &str| Err(Failure::Usage(m.to_string()));
    match family {
        FamilyArg::Gegenbauer => {
            let Some(l) = lambda else { return usage("--family gegenbauer needs --lambda") };
            if beta.is_some() {
                return usage("--beta only applies to --family beta");
            }
            let f: Form = form.map(Into::into).unwrap_or(Form::S41);
            if matches!(f, Form::S21 | Form::Recur) && l != Rat::from_integer(1.into()) {
                return usage("forms s21 and recur exist only at lambda = 1");
            }
            Ok(construct(n, &l, f)?)
        }
        FamilyArg::Chebyshev => {
            if beta.is_some() || lambda.as_ref().is_some_and(|l| *l != Rat::from_integer(1.into())) {
                return usage("--family chebyshev fixes lambda = 1 and takes no --beta");
            }
            let f: Form = form.map(Into::into).unwrap_or(Form::S21);
            Ok(construct(n, &Rat::from_integer(1.into()), f)?)
        }
        FamilyArg::Beta => {
            let Some(b) = beta else { return usage("--family beta needs --beta") };
            if lambda.is_some() || form.is_some_and(|f| f != FormArg::Hyp) {
                return usage("--family beta takes only --beta and --n");
            }
            Ok(p_beta(n, &b)?)
        }
    }
}

#[derive(Serialize)]
struct RootsOutput {
    certificate: Certificate,
    /// Zeros s = re + i·im.
    roots: Vec<Root>,
}

#[derive(Serialize)]
struct Root {
    re: f64,
    im: f64,
}

#[derive(Serialize)]
struct CoeffRow {
    power: usize,
    coefficient: String,
}

#[derive(Serialize)]
struct ClaimRow<'a> {
    suite: &'a str,
    claim: &'a str,
    checked: usize,
    failed: usize,
    max_residual: f64,
    passed: bool,
    first_failure: &'a str,
}

#[derive(Serialize)]
struct TriangleCsv {
    kind: String,
    k: u64,
    j: usize,
    entry: String,
}

fn run(cli: Cli) -> Result<bool, Failure> {
    let mut w = open(&cli.out)?;
    match cli.cmd {
        Cmd::Poly { family, lambda, beta, n, form } => {
            let p = build(family, &lambda, &beta, n, form)?;
            match cli.output {
                Output::Json => json(&mut w, &p)?,
                Output::Csv => {
                    let rows: Vec<CoeffRow> =
                        p.poly.coeffs().iter().enumerate().map(|(k, c)| CoeffRow { power: k, coefficient: fmt_rat(c) }).collect();
                    csv_rows(&mut w, &rows)?
                }
                Output::Text => writeln!(w, "{}\np(s) = {}", p.label(), p.poly)?,
            }
            Ok(true)
        }
        Cmd::Roots { family, lambda, beta, n, form } => {
            let p = build(family, &lambda, &beta, n, form)?;
            let certificate = certify_critical_line(&p)?;
            let mut roots: Vec<Root> = critical_roots_f64(&p.poly).into_iter().map(|t| Root { re: 0.5, im: t }).collect();
            roots.sort_by(|a, b| a.im.total_cmp(&b.im));
            let pass = certificate.pass;
            let out = RootsOutput { certificate, roots };
            match cli.output {
                Output::Json => json(&mut w, &out)?,
                Output::Csv => csv_rows(&mut w, &out.roots)?,
                Output::Text => {
                    let c = &out.certificate;
                    writeln!(
                        w,
                        "{}: degree {}, {} distinct zeros on Re s = 1/2, certificate {}",
                        p.label(),
                        c.degree,
                        c.distinct_real_roots,
                        if c.pass { "PASS" } else { "FAIL" }
                    )?;
                    for r in &out.roots {
                        writeln!(w, "  s = 1/2 {} {:.15}i", if r.im < 0.0 { "-" } else { "+" }, r.im.abs())?;
                    }
                }
            }
            Ok(pass)
        }
        Cmd::Verify { suite, nmax, trials } => {
            if !SUITES.contains(&suite.as_str()) {
                return Err(Failure::Usage(format!("unknown suite {suite:?}; expected one of {}", SUITES.join("|"))));
            }
            let report = run_suite(&suite, SuiteOptions { nmax, seed: cli.seed, trials })?;
            match cli.output {
                Output::Json => json(&mut w, &report)?,
                Output::Csv => {
                    let rows: Vec<ClaimRow> = report
                        .claims
                        .iter()
                        .map(|c| ClaimRow {
                            suite: &report.suite,
                            claim: &c.claim,
                            checked: c.checked,
                            failed: c.failed,
                            max_residual: c.max_residual,
                            passed: c.passed(),
                            first_failure: c.first_failure.as_deref().unwrap_or(""),
                        })
                        .collect();
                    csv_rows(&mut w, &rows)?
                }
                Output::Text => {
                    for c in &report.claims {
                        writeln!(w, "{} {} ({} checks)", if c.passed() { "PASS" } else { "FAIL" }, c.claim, c.checked)?;
                    }
                    writeln!(w, "suite {}: {}", report.suite, if report.passed { "PASS" } else { "FAIL" })?;
                }
            }
            if let Some(f) = report.first_failure() {
                eprintln!("first failure: {f}");
            }
            Ok(report.passed)
        }
        Cmd::Mellin { kind, lambda, n, nmax, s, closed } => {
            let lambda = rational("lambda", &lambda)?;
            let range: Vec<usize> = match n {
                Some(n) => vec![n],
                None => (0..=nmax).collect(),
            };
            if closed {
                let forms = range
                    .iter()
                    .map(|&k| match kind {
                        MellinKindArg::T => Ok(mellin_t_closed(k)),
                        MellinKindArg::Gegenbauer => {
                            let l = lambda.clone().ok_or_else(|| Failure::Usage("--kind gegenbauer needs --lambda".into()))?;
                            Ok(mellin_closed(k, &l)?)
                        }
                    })
                    .collect::<Result<Vec<_>, Failure>>()?;
                match cli.output {
                    Output::Text => {
                        for f in &forms {
                            writeln!(
                                w,
                                "n={}: {} * {:?} * ({}) * Gamma(s/2 + {})/Gamma(s/2 + {})",
                                f.n, f.constant, f.transcendental, f.factor, f.num_shift, f.den_shift
                            )?;
                        }
                    }
                    _ => json(&mut w, &forms)?,
                }
                return Ok(true);
            }
            let mut rows = match kind {
                MellinKindArg::T => mellin_t_rows(*range.last().unwrap(), &s)?,
                MellinKindArg::Gegenbauer => {
                    let l = lambda.ok_or_else(|| Failure::Usage("--kind gegenbauer needs --lambda".into()))?;
                    mellin_rows(*range.last().unwrap(), &l, &s)?
                }
            };
            rows.retain(|r| range.contains(&r.n));
            match cli.output {
                Output::Json => json(&mut w, &rows)?,
                Output::Csv => csv_rows(&mut w, &rows)?,
                Output::Text => {
                    for r in &rows {
                        writeln!(w, "n={} s={} quadrature={:.16e} closed={:.16e} rel_err={:.2e}", r.n, r.s, r.quadrature, r.closed_form, r.rel_err)?;
                    }
                }
            }
            Ok(true)
        }
        Cmd::Props { nmax, smax } => {
            let rows = props_rows(nmax, smax);
            match cli.output {
                Output::Json => json(&mut w, &rows)?,
                Output::Csv => csv_rows(&mut w, &rows)?,
                Output::Text => {
                    for r in &rows {
                        writeln!(w, "n={} s={} {} = {} = {}", r.n, r.s, r.which, r.value, r.factorization)?;
                    }
                }
            }
            let ok = rows.iter().all(|r| r.valuation_2 == "0");
            Ok(ok)
        }
        Cmd::Triangle { kind, k, kmax } => {
            let kind = match kind {
                KindArg::A => TriangleKind::A,
                KindArg::B => TriangleKind::B,
            };
            let first = if kind == TriangleKind::A { 1 } else { 0 };
            let ks: Vec<u64> = match k {
                Some(k) if k < first => return Err(Failure::Usage("the a-triangle starts at k = 1".into())),
                Some(k) => vec![k],
                None => (first..=kmax).collect(),
            };
            let rows: Vec<_> = ks.into_iter().map(|k| triangle(kind, k)).collect();
            match cli.output {
                Output::Json => json(&mut w, &rows)?,
                Output::Csv => {
                    let flat: Vec<TriangleCsv> = rows
                        .iter()
                        .flat_map(|r| {
                            r.entries.iter().enumerate().map(move |(j, e)| TriangleCsv {
                                kind: format!("{:?}", r.kind).to_lowercase(),
                                k: r.k,
                                j,
                                entry: e.to_string(),
                            })
                        })
                        .collect();
                    csv_rows(&mut w, &flat)?
                }
                Output::Text => {
                    for r in &rows {
                        let e: Vec<String> = r.entries.iter().map(|x| x.to_string()).collect();
                        writeln!(w, "{}", e.join(" "))?;
                    }
                }
            }
            Ok(true)
        }
    }
}

fn init_threads() -> Result<(), Failure> {
    if let Ok(v) = std::env::var("CRITPOLY_THREADS") {
        let n: usize = v.trim().parse().map_err(|_| Failure::Usage(format!("CRITPOLY_THREADS must be a positive integer, got {v:?}")))?;
        if n == 0 {
            return Err(Failure::Usage("CRITPOLY_THREADS must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| Failure::Usage(e.to_string()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match init_threads().and_then(|_| run(cli)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Check(m)) => {
            eprintln!("verification error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
