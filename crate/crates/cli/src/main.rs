use std::collections::HashMap;
use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use quadcong::bilinear::{translation_of, Isomorphism};
use quadcong::catalog::{self, normalize_params};
use quadcong::congruence::{
    check_translation, degenerate_locus, linearity_report, matrix_from_json, normal_data,
    parse_congruence, parse_congruence_unchecked, translation_map, verify_axioms, Type2Params,
};
use quadcong::gallery::{self, gallery_check};
use quadcong::orbit::{classify, equivalent, signature, Type1Params};
use quadcong::sections::{
    quadric_normalize, r_map_linear, r_map_quadratic, r_map_type1, r_map_type2, LinearRParams,
    QuadraticRParams, RMap,
};
use quadcong::{selftest, Error, GaussianRational as G};
use serde_json::{json, Value};

const DEFAULT_SEED: u64 = 20240601;

#[derive(Parser)]
#[command(
    name = "quadcong",
    version,
    about = "Exact checks for non-symmetric bilinear forms and quadratic congruences"
)]
struct Cli {
    /// Where to write the JSON result ("-" for standard output).
    #[arg(long, global = true, default_value = "-")]
    out: String,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Orbit case of an isomorphism of a 4-dimensional space.
    Classify {
        #[arg(long = "in", default_value = "-")]
        input: String,
    },
    /// Whether two isomorphisms are congruent.
    Equiv {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Build a congruence and print its equation.
    CongBuild {
        #[arg(long = "in", default_value = "-")]
        input: String,
    },
    /// Check the congruence axioms.
    CongVerify {
        #[arg(long = "in", default_value = "-")]
        input: String,
    },
    /// Translation map of a congruence with its defining checks.
    CongTranslate {
        #[arg(long = "in", default_value = "-")]
        input: String,
    },
    /// Points whose image quadric is degenerate.
    CongDegenerate {
        #[arg(long = "in", default_value = "-")]
        input: String,
    },
    /// Sum-of-squares normalization of a pencil member.
    QuadricNormalize {
        /// Comma separated coefficients α₀,…,α_{n−1}.
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
    },
    /// Explicit factorization of a congruence through a fixed conic.
    Rmap {
        #[arg(long = "type")]
        kind: String,
        /// Comma separated name=value pairs.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        params: String,
    },
    /// List the catalog of normal forms.
    CatalogList,
    /// Check one catalog entry, or all of them.
    CatalogCheck {
        label: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<String>,
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        params: String,
    },
    /// Check one worked example, or all of them.
    GalleryCheck {
        name: Option<String>,
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        params: String,
    },
    /// Run every suite of the library.
    Selftest,
}

enum Failure {
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<(Value, bool, String), Failure>;

fn read_source(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{path}: {e}")))
    }
}

fn read_json(path: &str) -> Result<Value, Failure> {
    let text = read_source(path)?;
    serde_json::from_str(&text).map_err(|e| {
        Failure::Input(format!(
            "malformed JSON in {path} at line {} column {}: {e}",
            e.line(),
            e.column()
        ))
    })
}

fn read_isomorphism(path: &str) -> Result<Isomorphism, Failure> {
    let v = read_json(path)?;
    let rows = match &v {
        Value::Array(_) => &v,
        Value::Object(o) => o
            .get("matrix")
            .ok_or_else(|| Failure::Input("missing \"matrix\"".into()))?,
        _ => {
            return Err(Failure::Input(
                "expected an object with \"matrix\" or an array of rows".into(),
            ))
        }
    };
    let rows: Vec<Vec<Value>> =
        serde_json::from_value(rows.clone()).map_err(|e| Failure::Input(format!("matrix: {e}")))?;
    let m = matrix_from_json(&rows)?;
    if let Some(dim) = v.get("dim").and_then(Value::as_u64) {
        if dim as usize != m.rows() || !m.is_square() {
            return Err(Failure::Input(format!(
                "declared dim {dim} but matrix is {}x{}",
                m.rows(),
                m.cols()
            )));
        }
    }
    Ok(Isomorphism::new(m)?)
}

fn scalar(s: &str) -> Result<G, Failure> {
    G::from_str(s.trim()).map_err(|e| Failure::Input(format!("{s:?}: {e}")))
}

fn parse_params(s: &str) -> Result<HashMap<String, G>, Failure> {
    let mut out = HashMap::new();
    for pair in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = pair
            .split_once('=')
            .ok_or_else(|| Failure::Input(format!("expected name=value, got {pair:?}")))?;
        out.insert(k.trim().to_string(), scalar(v)?);
    }
    Ok(out)
}

fn take(p: &HashMap<String, G>, name: &str) -> Result<G, Failure> {
    p.get(name)
        .cloned()
        .ok_or_else(|| Failure::Input(format!("missing parameter {name}")))
}

fn six(p: &HashMap<String, G>) -> [G; 6] {
    ["a", "b", "c", "d", "e", "f"].map(|k| p.get(k).cloned().unwrap_or_default())
}

fn run_classify(input: &str) -> Outcome {
    let phi = read_isomorphism(input)?;
    let label = classify(&phi)?;
    let sig = signature(&translation_of(&phi))?;
    let mut out = label.to_json();
    out["signature"] = sig.to_json();
    let summary = format!("case {}", label.case.name());
    Ok((out, true, summary))
}

fn run_equiv(a: &str, b: &str) -> Outcome {
    let (p, q) = (read_isomorphism(a)?, read_isomorphism(b)?);
    let eq = equivalent(&p, &q);
    Ok((
        json!({ "equivalent": eq }),
        true,
        format!("equivalent: {eq}"),
    ))
}

fn run_cong(verb: &Command, input: &str) -> Outcome {
    let v = read_json(input)?;
    let s = match verb {
        Command::CongVerify { .. } => parse_congruence_unchecked(&v)?,
        _ => parse_congruence(&v)?,
    };
    match verb {
        Command::CongBuild { .. } => Ok((
            s.to_json(),
            true,
            format!("built congruence of rank {}", s.phi_inv().rank()),
        )),
        Command::CongVerify { .. } => {
            let r = verify_axioms(&s);
            let summary = if r.all_pass() {
                "all axioms hold".into()
            } else {
                format!("failed: {}", r.failures().join(", "))
            };
            Ok((r.to_json(), r.all_pass(), summary))
        }
        Command::CongTranslate { .. } => {
            let t = translation_map(&s)?;
            let c = check_translation(&s, t.map.coords())?;
            let lin = linearity_report(&s)?;
            let nd = normal_data(&s)?;
            let out = json!({
                "method": t.method,
                "map": t.map.to_json(),
                "reduced": t.reduced.to_json(),
                "on_image_quadric": c.on_image_quadric,
                "equivariant": c.equivariant,
                "linear": lin.l_equals_h,
                "linearity_consistent": lin.consistent(),
                "normal_data": nd.to_json(),
            });
            let summary = format!(
                "{} ({}), checks {}",
                t.method,
                if lin.l_equals_h {
                    "linear"
                } else {
                    "quadratic"
                },
                if c.holds() { "hold" } else { "fail" }
            );
            Ok((out, c.holds() && lin.consistent(), summary))
        }
        Command::CongDegenerate { .. } => {
            let d = degenerate_locus(&s)?;
            let summary = if d.all_degenerate() {
                "every image quadric is degenerate".into()
            } else {
                format!("determinant {}", d.determinant)
            };
            Ok((d.to_json(), true, summary))
        }
        _ => unreachable!(),
    }
}

fn run_normalize(alpha: &str) -> Outcome {
    let a: Vec<G> = alpha.split(',').map(scalar).collect::<Result<_, _>>()?;
    let n = quadric_normalize(&a)?;
    let ok = n.verify(&a);
    let mut out = n.to_json();
    out["verified"] = json!(ok);
    Ok((
        out,
        ok,
        format!(
            "normalized with depth {}, identity {}",
            n.depth,
            if ok { "holds" } else { "fails" }
        ),
    ))
}

fn rmap_of(kind: &str, p: &HashMap<String, G>) -> Result<RMap, Failure> {
    Ok(match kind {
        "1" => r_map_type1(&quadcong::congruence::build_type1(&Type1Params::new(six(
            p,
        )))?)?,
        "2" => r_map_type2(&quadcong::congruence::build_type2(&Type2Params::new(six(
            p,
        )))?)?,
        "quadratic" => r_map_quadratic(&QuadraticRParams {
            alpha0: take(p, "alpha0")?,
            alpha1: take(p, "alpha1")?,
            beta0: take(p, "beta0")?,
            beta1: take(p, "beta1")?,
            e: p.get("e").cloned().unwrap_or_default(),
            f: p.get("f").cloned().unwrap_or_default(),
        })?,
        "linear" => r_map_linear(&LinearRParams {
            nu: take(p, "nu")?,
            alpha0: take(p, "alpha0")?,
            alpha1: take(p, "alpha1")?,
            w: take(p, "w")?,
        })?,
        other => {
            return Err(Failure::Input(format!(
                "unknown rmap type {other:?}, expected 1, 2, quadratic or linear"
            )))
        }
    })
}

fn run_rmap(kind: &str, params: &str) -> Outcome {
    let r = rmap_of(kind, &parse_params(params)?)?;
    let (rep, matches) = r.check()?;
    let mut out = r.to_json();
    out["pullback"] = rep.to_json();
    out["extraneous_matches"] = json!(matches);
    let ok = rep.ok && matches;
    Ok((
        out,
        ok,
        format!(
            "pullback {}, extraneous factor {}",
            if rep.ok { "holds" } else { "fails" },
            if matches { "as predicted" } else { "differs" }
        ),
    ))
}

fn run_catalog_check(
    label: Option<&str>,
    lambda: Option<&str>,
    mu: Option<&str>,
    params: &str,
) -> Outcome {
    let mut p = normalize_params(&parse_params(params)?);
    if let Some(l) = lambda {
        p.insert("l".into(), scalar(l)?);
    }
    if let Some(m) = mu {
        p.insert("m".into(), scalar(m)?);
    }
    for (k, v) in catalog::default_params() {
        p.entry(k).or_insert(v);
    }
    let labels: Vec<String> = match label {
        Some(l) => vec![l.to_string()],
        None => catalog::entries().iter().map(|e| e.label.clone()).collect(),
    };
    let reports = labels
        .iter()
        .map(|l| catalog::catalog_check(l, &p))
        .collect::<Result<Vec<_>, _>>()?;
    let failed: Vec<&str> = reports
        .iter()
        .filter(|r| !r.passes())
        .map(|r| r.label.as_str())
        .collect();
    let summary = format!(
        "{}/{} entries pass{}",
        reports.len() - failed.len(),
        reports.len(),
        if failed.is_empty() {
            String::new()
        } else {
            format!("; failing: {}", failed.join(", "))
        }
    );
    let out = match label {
        Some(_) => reports[0].to_json(),
        None => json!(reports.iter().map(|r| r.to_json()).collect::<Vec<_>>()),
    };
    Ok((out, failed.is_empty(), summary))
}

fn run_gallery(name: Option<&str>, params: &str) -> Outcome {
    let p = parse_params(params)?;
    let names: Vec<&str> = name.map_or_else(|| gallery::NAMES.to_vec(), |n| vec![n]);
    let reports = names
        .iter()
        .map(|n| gallery_check(n, &p))
        .collect::<Result<Vec<_>, _>>()?;
    let ok = reports.iter().all(|r| r.passes());
    let notes: Vec<String> = reports
        .iter()
        .map(|r| {
            format!(
                "{}: {} ({} recorded discrepancies)",
                r.name,
                if r.passes() { "pass" } else { "FAIL" },
                r.discrepancies().len()
            )
        })
        .collect();
    let out = match name {
        Some(_) => reports[0].to_json(),
        None => json!(reports.iter().map(|r| r.to_json()).collect::<Vec<_>>()),
    };
    Ok((out, ok, notes.join("\n")))
}

fn run_selftest(seed: u64) -> Outcome {
    let r = selftest::run(seed);
    let lines: Vec<String> = r
        .suites
        .iter()
        .map(|s| format!("{:<12} {}", s.name, if s.pass { "PASS" } else { "FAIL" }))
        .collect();
    Ok((r.to_json(), r.passes(), lines.join("\n")))
}

fn dispatch(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Classify { input } => run_classify(input),
        Command::Equiv { a, b } => run_equiv(a, b),
        c @ (Command::CongBuild { input }
        | Command::CongVerify { input }
        | Command::CongTranslate { input }
        | Command::CongDegenerate { input }) => run_cong(c, input),
        Command::QuadricNormalize { alpha } => run_normalize(alpha),
        Command::Rmap { kind, params } => run_rmap(kind, params),
        Command::CatalogList => {
            let list: Vec<Value> = catalog::entries().iter().map(|e| e.to_json()).collect();
            let n = list.len();
            Ok((json!(list), true, format!("{n} catalog entries")))
        }
        Command::CatalogCheck {
            label,
            lambda,
            mu,
            params,
        } => run_catalog_check(label.as_deref(), lambda.as_deref(), mu.as_deref(), params),
        Command::GalleryCheck { name, params } => run_gallery(name.as_deref(), params),
        Command::Selftest => run_selftest(cli.seed),
    }
}

fn write_out(path: &str, v: &Value) -> io::Result<()> {
    let text = serde_json::to_string_pretty(v)? + "\n";
    if path == "-" {
        io::stdout().write_all(text.as_bytes())
    } else {
        fs::write(path, text)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok((value, ok, summary)) => {
            if let Err(e) = write_out(&cli.out, &value) {
                eprintln!("error: cannot write {}: {e}", cli.out);
                return ExitCode::from(2);
            }
            eprintln!("{summary}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
