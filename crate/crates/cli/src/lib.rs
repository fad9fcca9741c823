//! Command dispatch for the `tmf-arith` binary.
//!
//! [`run`] parses an argument vector and returns the exit code together
//! with everything that should be printed. Exit codes: 0 success, 1 usage
//! error, 2 computation error, 3 negative mathematical verdict.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};

use tmf_arith::anss::E2Presentation;
use tmf_arith::elliptic::{self, WeierstrassCurve};
use tmf_arith::modforms::{monomial_name, MfPoly, TmfCertificate};
use tmf_arith::moonshine::{self, JPolynomial};
use tmf_arith::{qseries, IntPoly, PolySeries, QExpansion};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_COMPUTATION: i32 = 2;
pub const EXIT_NON_MEMBER: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "tmf-arith", version, about = "Exact modular-form, formal-group and E2-page arithmetic")]
struct Cli {
    /// Series precision: expansions are computed to O(q^N).
    #[arg(long, global = true, default_value_t = 50, value_parser = clap::value_parser!(i64).range(1..))]
    precision: i64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Presentation file replacing the built-in one for anss commands.
    #[arg(long, global = true)]
    presentation: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormName {
    C4,
    C6,
    Delta,
    J,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Builtin {
    P2,
    P3,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// q-expansion of c4, c6, Delta or j.
    Qexp { form: FormName },
    /// The polynomial j_n in j and its q-expansion.
    Jn { n: u32 },
    /// Weight-zero Hecke operator T_n applied to j - 744.
    Hecke { n: u64 },
    /// Image test for a form such as "c4^3 - 744*Delta".
    TmfMember { expression: String },
    /// Image test for Delta^n j_n.
    Witten { n: u32 },
    /// Checks c4^3 - 744 Delta = Delta (j - 744) and its membership.
    Prize,
    /// Compares c6/c4, -q j'/j and the values j_n(omega) up to q^N.
    GenfunCheck { n: u32 },
    /// b- and c-invariants and the discriminant of a Weierstrass curve.
    CurveInvariants {
        #[arg(num_args = 5, value_names = ["A1", "A2", "A3", "A4", "A6"], allow_negative_numbers = true)]
        coefficients: Vec<String>,
    },
    /// The p-series of a formal group law, by two independent routes.
    FglPseries {
        p: u32,
        /// Curve coefficients a1 a2 a3 a4 a6 (default: y^2 + a1 xy + a3 y = x^3
        /// for p = 2, y^2 = x^3 + a2 x^2 + a4 x otherwise).
        #[arg(long, num_args = 5, value_names = ["A1", "A2", "A3", "A4", "A6"], allow_negative_numbers = true)]
        curve: Option<Vec<String>>,
        /// Truncation degree in z (the q-series precision does not apply).
        #[arg(long, default_value_t = 30, value_parser = clap::value_parser!(u32).range(2..))]
        degree: u32,
    },
    /// Least multiples c Delta^k surviving the seeded differentials.
    AnssSurvivors {
        #[arg(value_name = "p2|p3")]
        which: Builtin,
        kmax: u32,
    },
}

/// What a command produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub text: String,
}

struct Report {
    code: i32,
    text: String,
    inputs: Value,
    result: Value,
    certificate: Option<Value>,
}

impl Report {
    fn ok(text: String, inputs: Value, result: Value) -> Self {
        Report {
            code: EXIT_OK,
            text,
            inputs,
            result,
            certificate: None,
        }
    }
}

type CmdResult = Result<Report, String>;

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return Output {
                code,
                text: e.render().to_string(),
            };
        }
    };
    let name = command_name(&cli.command);
    match dispatch(&cli) {
        Ok(report) => Output {
            code: report.code,
            text: match cli.format {
                Format::Text => ensure_newline(report.text),
                Format::Json => {
                    let mut doc = json!({
                        "command": name,
                        "inputs": report.inputs,
                        "result": report.result,
                    });
                    if let Some(c) = report.certificate {
                        doc["certificate"] = c;
                    }
                    ensure_newline(serde_json::to_string_pretty(&doc).expect("serializable"))
                }
            },
        },
        Err(message) => Output {
            code: EXIT_COMPUTATION,
            text: match cli.format {
                Format::Text => format!("error: {message}\n"),
                Format::Json => ensure_newline(
                    serde_json::to_string_pretty(&json!({"command": name, "error": message})).expect("serializable"),
                ),
            },
        },
    }
}

fn ensure_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Qexp { .. } => "qexp",
        Command::Jn { .. } => "jn",
        Command::Hecke { .. } => "hecke",
        Command::TmfMember { .. } => "tmf-member",
        Command::Witten { .. } => "witten",
        Command::Prize => "prize",
        Command::GenfunCheck { .. } => "genfun-check",
        Command::CurveInvariants { .. } => "curve-invariants",
        Command::FglPseries { .. } => "fgl-pseries",
        Command::AnssSurvivors { .. } => "anss-survivors",
    }
}

fn dispatch(cli: &Cli) -> CmdResult {
    let prec = cli.precision;
    match &cli.command {
        Command::Qexp { form } => qexp(*form, prec),
        Command::Jn { n } => jn(*n, prec),
        Command::Hecke { n } => hecke(*n, prec),
        Command::TmfMember { expression } => tmf_member(expression),
        Command::Witten { n } => witten(*n),
        Command::Prize => prize(prec),
        Command::GenfunCheck { n } => genfun(*n),
        Command::CurveInvariants { coefficients } => curve_invariants(coefficients),
        Command::FglPseries { p, curve, degree } => fgl_pseries(*p, curve.as_deref(), *degree),
        Command::AnssSurvivors { which, kmax } => survivors(*which, cli.presentation.as_ref(), *kmax),
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// JSON form of a q-expansion: dense coefficients from `start` to
/// `precision - 1`, as decimal strings.
pub fn series_json(f: &QExpansion, var: &str) -> Value {
    json!({
        "variable": var,
        "start": f.start(),
        "precision": f.precision(),
        "coefficients": f.iter().map(|(_, c)| c.to_string()).collect::<Vec<_>>(),
    })
}

/// Inverse of [`series_json`].
pub fn series_from_json(v: &Value) -> Option<QExpansion> {
    let start = v["start"].as_i64()?;
    let prec = v["precision"].as_i64()?;
    let coeffs = v["coefficients"]
        .as_array()?
        .iter()
        .map(|c| c.as_str()?.parse::<BigInt>().ok())
        .collect::<Option<Vec<_>>>()?;
    Some(QExpansion::new(start, coeffs, prec))
}

fn poly_series_json(f: &PolySeries) -> Value {
    json!({
        "variable": "z",
        "start": f.start(),
        "precision": f.precision(),
        "coefficients": f.iter().map(|(_, c)| c.to_string()).collect::<Vec<_>>(),
    })
}

fn certificate_json(cert: &TmfCertificate) -> Value {
    json!({
        "form": cert.form.to_string(),
        "member": cert.member,
        "verdicts": cert.verdicts.iter().map(|v| json!({
            "monomial": monomial_name(v.exponents),
            "coefficient": v.coefficient.to_string(),
            "required_divisor": v.required.to_string(),
            "quotient": v.quotient.as_ref().map(|q| q.to_string()),
        })).collect::<Vec<_>>(),
    })
}

fn verdict_code(member: bool) -> i32 {
    if member {
        EXIT_OK
    } else {
        EXIT_NON_MEMBER
    }
}

fn qexp(form: FormName, prec: i64) -> CmdResult {
    let (name, f) = match form {
        FormName::C4 => ("c4", qseries::c4(prec)),
        FormName::C6 => ("c6", qseries::c6(prec)),
        FormName::Delta => ("Delta", qseries::discriminant_qexp(prec)),
        FormName::J => ("j", qseries::j_qexp(prec)),
    };
    let f = f.map_err(err)?;
    Ok(Report::ok(
        format!("{name} = {}", f.display_in("q")),
        json!({"form": name, "precision": prec}),
        series_json(&f, "q"),
    ))
}

fn jpoly_json(p: &JPolynomial) -> Value {
    json!({
        "polynomial": p.to_string(),
        "coefficients": p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    })
}

fn jn(n: u32, prec: i64) -> CmdResult {
    let (p, f) = moonshine::faber_jn(n, prec).map_err(err)?;
    let mut result = jpoly_json(&p);
    result["qexp"] = series_json(&f, "q");
    Ok(Report::ok(
        format!("{p}\nj_{n} = {}", f.display_in("q")),
        json!({"n": n, "precision": prec}),
        result,
    ))
}

fn hecke(n: u64, prec: i64) -> CmdResult {
    if n == 0 {
        return Err("n must be at least 1".into());
    }
    let j1 = qseries::j1_qexp(prec.saturating_mul(n as i64)).map_err(err)?;
    let t = moonshine::hecke_weight0(&j1, n).map_err(err)?.truncate(prec);
    Ok(Report::ok(
        format!("T_{n}(j - 744) = {}", t.display_in("q")),
        json!({"n": n, "precision": prec}),
        series_json(&t, "q"),
    ))
}

fn membership(cert: TmfCertificate, inputs: Value, extra: Option<(String, Value)>) -> Report {
    let (prefix, mut result) = extra.unwrap_or_default();
    if result.is_null() {
        result = json!({});
    }
    result["form"] = json!(cert.form.to_string());
    result["member"] = json!(cert.member);
    let text = format!("{prefix}{cert}");
    Report {
        code: verdict_code(cert.member),
        text,
        inputs,
        result,
        certificate: Some(certificate_json(&cert)),
    }
}

fn tmf_member(expression: &str) -> CmdResult {
    let form = MfPoly::parse(expression).map_err(err)?;
    let cert = form.tmf_image_test().map_err(err)?;
    Ok(membership(cert, json!({"expression": expression}), None))
}

fn witten(n: u32) -> CmdResult {
    let (p, _) = moonshine::faber_jn(n, 1).map_err(err)?;
    let cert = moonshine::witten_generalized(n).map_err(err)?;
    let prefix = format!("j_{n} = {p}\nDelta^{n} j_{n}:\n");
    Ok(membership(cert, json!({"n": n}), Some((prefix, json!({"jn": jpoly_json(&p)})))))
}

fn prize(prec: i64) -> CmdResult {
    let form = MfPoly::parse("c4^3 - 744*Delta").map_err(err)?;
    let lhs = form.to_qexp(prec).map_err(err)?;
    let delta = qseries::discriminant_qexp(prec + 2).map_err(err)?;
    let j1 = qseries::j1_qexp(prec + 2).map_err(err)?;
    let rhs = (&delta * &j1).truncate(prec);
    let lhs = lhs.truncate(prec);
    let expansions_agree = lhs == rhs;
    let cert = form.tmf_image_test().map_err(err)?;
    let (a_hat, bott) = form.bo_constant_term().map_err(err)?;
    let holds = expansions_agree && cert.member;
    let mut text = String::new();
    let _ = writeln!(text, "c4^3 - 744*Delta = {}", lhs.display_in("q"));
    let _ = writeln!(text, "Delta*(j - 744)  = {}", rhs.display_in("q"));
    let _ = writeln!(text, "expansions agree: {expansions_agree}");
    let _ = writeln!(text, "744 = 31*24");
    let _ = writeln!(text, "bo constant term: {a_hat} (Bott power {bott})");
    let _ = write!(text, "{cert}");
    let mut result = json!({
        "expansions_agree": expansions_agree,
        "lhs": series_json(&lhs, "q"),
        "rhs": series_json(&rhs, "q"),
        "bo_constant_term": a_hat.to_string(),
        "bott_power": bott,
    });
    result["form"] = json!(cert.form.to_string());
    result["member"] = json!(cert.member);
    Ok(Report {
        code: verdict_code(holds),
        text,
        inputs: json!({"precision": prec}),
        result,
        certificate: Some(certificate_json(&cert)),
    })
}

fn genfun(n: u32) -> CmdResult {
    let report = moonshine::genfun_check(n).map_err(err)?;
    let mut text = String::new();
    let _ = writeln!(text, "c6/c4 = -q j'/j to O(q^{}): {}", n + 1, report.series_agree);
    let _ = writeln!(text, "global sign: {:+}", report.sign);
    let mut rows = Vec::new();
    for k in 1..=n {
        let c = report.ratio.coeff(k as i64).unwrap_or_default();
        let w = moonshine::jn_at_omega(k).map_err(err)?;
        let ok = c == &w * report.sign;
        let _ = writeln!(text, "n = {k:>3}  coefficient {c:>24}  j_n(omega) {w:>24}  {}", if ok { "ok" } else { "MISMATCH" });
        rows.push(json!({"n": k, "coefficient": c.to_string(), "jn_omega": w.to_string(), "agree": ok}));
    }
    let _ = write!(text, "verdict: {}", if report.passed() { "pass" } else { "fail" });
    Ok(Report {
        code: verdict_code(report.passed()),
        text,
        inputs: json!({"n": n}),
        result: json!({
            "series_agree": report.series_agree,
            "sign": report.sign,
            "passed": report.passed(),
            "rows": rows,
            "ratio": series_json(&report.ratio, "q"),
        }),
        certificate: None,
    })
}

fn parse_curve(coeffs: &[String]) -> Result<WeierstrassCurve, String> {
    let arr: [&str; 5] = [&coeffs[0], &coeffs[1], &coeffs[2], &coeffs[3], &coeffs[4]];
    WeierstrassCurve::parse(arr).map_err(err)
}

fn curve_invariants(coeffs: &[String]) -> CmdResult {
    let curve = parse_curve(coeffs)?;
    let inv = curve.invariants();
    let named: [(&str, &IntPoly); 7] = [
        ("b2", &inv.b2),
        ("b4", &inv.b4),
        ("b6", &inv.b6),
        ("b8", &inv.b8),
        ("c4", &inv.c4),
        ("c6", &inv.c6),
        ("Delta", &inv.delta),
    ];
    let mut text = String::new();
    let mut result = serde_json::Map::new();
    for (name, p) in named {
        let _ = writeln!(text, "{name} = {p}");
        result.insert(name.to_string(), json!(p.to_string()));
    }
    let c_identity = inv.c4.pow(3) - inv.c6.pow(2) == IntPoly::from_i64(1728) * inv.delta.clone();
    let b_identity = IntPoly::from_i64(4) * inv.b8.clone() == &inv.b2 * &inv.b6 - &inv.b4 * &inv.b4;
    let _ = writeln!(text, "c4^3 - c6^2 = 1728*Delta: {c_identity}");
    let _ = write!(text, "4*b8 = b2*b6 - b4^2: {b_identity}");
    let names = ["a1", "a2", "a3", "a4", "a6"];
    let inputs: serde_json::Map<String, Value> = names
        .iter()
        .zip(curve.coefficients())
        .map(|(n, a)| (n.to_string(), json!(a.to_string())))
        .collect();
    Ok(Report {
        code: EXIT_OK,
        text,
        inputs: Value::Object(inputs),
        result: Value::Object(result),
        certificate: Some(json!({"c_identity": c_identity, "b_identity": b_identity})),
    })
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn fgl_pseries(p: u32, curve: Option<&[String]>, degree: u32) -> CmdResult {
    if !is_prime(p) {
        return Err(format!("{p} is not prime"));
    }
    let curve = match curve {
        Some(c) => parse_curve(c)?,
        None if p == 2 => WeierstrassCurve::three_torsion_form(),
        None => WeierstrassCurve::two_torsion_form(),
    };
    let degree = degree.max(p + 1);
    let series = elliptic::p_series(&curve, p, degree).map_err(err)?;
    let modulus = BigInt::from(p);
    let leading = series.coeff(p as i64).unwrap_or_else(IntPoly::zero).reduce_mod(&modulus);
    let mut text = String::new();
    let _ = writeln!(text, "[{p}](z) to O(z^{}), both routes agree", series.precision());
    for (e, c) in series.terms() {
        let _ = writeln!(text, "  z^{e}: {c}");
    }
    let _ = write!(text, "z^{p} coefficient mod {p}: {leading}");
    let mut result = json!({
        "p_series": poly_series_json(&series),
        "routes_agree": true,
        "height_one_coefficient_mod_p": leading.to_string(),
    });
    let short = curve.a1.is_zero() && curve.a3.is_zero();
    if p > 2 && short {
        let hasse = curve.hasse_invariant(p).map_err(err)?.reduce_mod(&modulus);
        let unit = elliptic::unit_relating(&leading, &hasse, p);
        let _ = write!(text, "\nHasse invariant mod {p}: {hasse}");
        match unit {
            Some(u) => {
                let _ = write!(text, "\nz^{p} coefficient = {u} * Hasse invariant (mod {p})");
            }
            None => {
                let _ = write!(text, "\nz^{p} coefficient is not a unit multiple of the Hasse invariant");
            }
        }
        result["hasse_invariant_mod_p"] = json!(hasse.to_string());
        result["unit"] = json!(unit);
    }
    let names = ["a1", "a2", "a3", "a4", "a6"];
    let mut inputs = serde_json::Map::new();
    inputs.insert("p".into(), json!(p));
    inputs.insert("degree".into(), json!(degree));
    for (n, a) in names.iter().zip(curve.coefficients()) {
        inputs.insert(n.to_string(), json!(a.to_string()));
    }
    Ok(Report::ok(text, Value::Object(inputs), result))
}

fn survivors(which: Builtin, file: Option<&PathBuf>, kmax: u32) -> CmdResult {
    let pres = match file {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            E2Presentation::parse(&text).map_err(|e| format!("{}: {e}", path.display()))?
        }
        None => match which {
            Builtin::P2 => E2Presentation::tmf_p2(),
            Builtin::P3 => E2Presentation::tmf_p3(),
        },
    };
    let report = pres.survivor_table(kmax).map_err(err)?;
    let rows: Vec<Value> = report
        .rows
        .iter()
        .map(|row| {
            json!({
                "k": row.k,
                "multiplier": row.multiplier.as_ref().map(|m| m.to_string()),
                "last_page": row.last_page,
                "steps": row.steps.iter().map(|s| json!({
                    "page": s.page,
                    "multiplier_before": s.multiplier_before.to_string(),
                    "target": s.target.as_ref().map(|t| pres.display(t)),
                    "factor": s.factor.as_ref().map(|f| f.to_string()),
                })).collect::<Vec<_>>(),
            })
        })
        .collect();
    let inputs = json!({
        "presentation": match file {
            Some(p) => p.display().to_string(),
            None => format!("{which:?}").to_lowercase(),
        },
        "kmax": kmax,
    });
    Ok(Report::ok(
        report.render(&pres),
        inputs,
        json!({"prime": report.prime, "generator": report.generator, "rows": rows}),
    ))
}
