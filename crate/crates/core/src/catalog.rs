//! The orbit catalog (33 matrices `φ⁻¹` in the type-1/type-2 bases) and the
//! 13-case table of translations, both shipped as JSON data and checked
//! against the classifier.

use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use num_traits::Zero;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::bilinear::{translation_of, Isomorphism};
use crate::congruence::Type2Params;
use crate::error::{Error, Result};
use crate::expr::{eval_matrix, eval_scalar};
use crate::field::GaussianRational as G;
use crate::matrix::Matrix;
use crate::orbit::{classify, equivalent, signature, CaseId, CaseLabel, Type1Params};

const CATALOG_JSON: &str = include_str!("../data/catalog.json");
const CASES_JSON: &str = include_str!("../data/cases.json");

#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
pub struct CatalogEntry {
    pub label: String,
    #[serde(rename = "type")]
    pub realization_type: u8,
    pub case: String,
    /// Template of `φ⁻¹`, rows separated by `;`.
    pub phi_inv: String,
    /// Replacement template, used only if the verbatim one fails.
    #[serde(default)]
    pub correction: Option<String>,
}

impl CatalogEntry {
    pub fn expected_case(&self) -> CaseId {
        CaseId::parse(&self.case).expect("catalog headings are table cases")
    }

    /// Parameter names the template depends on.
    pub fn params(&self) -> &'static [&'static str] {
        match self.case.as_str() {
            "1.1" => &["l", "m"],
            "1.2" | "1.5" | "2.3" | "2.6" => &["l"],
            _ => &[],
        }
    }

    /// Nonvanishing conditions as (expression, readable form).
    pub fn constraints(&self) -> &'static [(&'static str, &'static str)] {
        match self.case.as_str() {
            "1.1" => &[
                ("l", "λ ≠ 0"),
                ("m", "μ ≠ 0"),
                ("l**2-1", "λ² ≠ 1"),
                ("m**2-1", "μ² ≠ 1"),
                ("l*m-1", "λμ ≠ 1"),
                ("l-m", "λ ≠ μ"),
            ],
            "1.2" | "2.3" | "2.6" => &[("l", "λ ≠ 0"), ("l**2-1", "λ² ≠ 1")],
            "1.5" => &[("l", "λ ≠ 0"), ("l-1", "λ ≠ 1"), ("l+1", "λ + 1 ≠ 0")],
            _ => &[],
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "label": self.label,
            "type": self.realization_type,
            "case": self.case,
            "params": self.params(),
            "constraints": self.constraints().iter().map(|c| c.1).collect::<Vec<_>>(),
            "phi_inv": self.phi_inv,
        })
    }
}

pub fn entries() -> &'static [CatalogEntry] {
    static CELL: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CELL.get_or_init(|| serde_json::from_str(CATALOG_JSON).expect("bundled catalog parses"))
}

pub fn entry(label: &str) -> Result<&'static CatalogEntry> {
    entries().iter().find(|e| e.label == label).ok_or_else(|| Error::UnknownLabel(label.to_string()))
}

/// Accepts `l`/`lambda`/`λ` and `m`/`mu`/`μ` as parameter names.
pub fn normalize_params(params: &HashMap<String, G>) -> HashMap<String, G> {
    params
        .iter()
        .map(|(k, v)| {
            let k = match k.as_str() {
                "lambda" | "λ" => "l",
                "mu" | "μ" => "m",
                other => other,
            };
            (k.to_string(), v.clone())
        })
        .collect()
}

fn check_constraints(list: &[(&str, &str)], env: &HashMap<String, G>) -> Result<()> {
    for (src, text) in list {
        if eval_scalar(src, env)?.is_zero() {
            return Err(Error::Constraint(text.to_string()));
        }
    }
    Ok(())
}

fn template_env(e: &CatalogEntry, params: &HashMap<String, G>) -> Result<HashMap<String, G>> {
    let env = normalize_params(params);
    for p in e.params() {
        if !env.contains_key(*p) {
            return Err(Error::Constraint(format!("missing parameter {p}")));
        }
    }
    check_constraints(e.constraints(), &env)?;
    Ok(env)
}

fn eval_template(src: &str, env: &HashMap<String, G>) -> Result<Matrix> {
    Matrix::from_rows(eval_matrix(src, env)?)
}

/// The matrix `φ⁻¹` of an entry at the given parameters.
pub fn instantiate_inverse(label: &str, params: &HashMap<String, G>) -> Result<Matrix> {
    let e = entry(label)?;
    eval_template(&e.phi_inv, &template_env(e, params)?)
}

/// `φ` for an entry: the inverse of the template.
pub fn instantiate(label: &str, params: &HashMap<String, G>) -> Result<Isomorphism> {
    Isomorphism::new(instantiate_inverse(label, params)?.inverse()?)
}

/// Which of the normalized type parameters `(a, …, f)` vanish.
pub fn zero_pattern(realization_type: u8, phi_inv: &Matrix) -> Result<[bool; 6]> {
    let v = match realization_type {
        1 => {
            let k = phi_inv.sym_part()[(0, 3)].clone();
            Type1Params::from_matrix(&phi_inv.scale(&k.inv()?))?.as_array()
        }
        2 => {
            let k = &phi_inv.sym_part()[(2, 2)] * &G::from_ratio(1, 2);
            Type2Params::from_matrix(&phi_inv.scale(&k.inv()?))?.as_array()
        }
        t => return Err(Error::Shape(format!("unknown realization type {t}"))),
    };
    Ok(v.map(|g| g.is_zero()))
}

#[derive(Clone, Debug)]
pub struct CatalogReport {
    pub label: String,
    pub realization_type: u8,
    pub expected_case: CaseId,
    pub classified: CaseLabel,
    pub rank: usize,
    pub case_matches: bool,
    /// Type 1 with rank 4, or type 2 with rank 3.
    pub rank_matches: bool,
    /// `φ⁻¹` is a scalar multiple of a matrix of the claimed type.
    pub shape_matches: bool,
    pub signature: Value,
    /// Result of the correction overlay, when the verbatim template failed.
    pub corrected: Option<Box<CatalogReport>>,
}

impl CatalogReport {
    pub fn passes(&self) -> bool {
        self.case_matches && self.rank_matches && self.shape_matches
    }

    /// Verbatim result, or the overlay result when one was applied.
    pub fn passes_with_corrections(&self) -> bool {
        self.passes() || self.corrected.as_ref().is_some_and(|c| c.passes())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "label": self.label,
            "type": self.realization_type,
            "expected_case": self.expected_case.name(),
            "classified": self.classified.to_json(),
            "rank": self.rank,
            "case_matches": self.case_matches,
            "rank_matches": self.rank_matches,
            "shape_matches": self.shape_matches,
            "pass": self.passes(),
            "signature": if self.passes() { Value::Null } else { self.signature.clone() },
            "corrected": self.corrected.as_ref().map(|c| c.to_json()),
        })
    }
}

fn check_matrix(label: &str, rtype: u8, expected: CaseId, phi_inv: &Matrix) -> Result<CatalogReport> {
    let phi = Isomorphism::new(phi_inv.inverse()?)?;
    let classified = classify(&phi)?;
    let rank = phi.sym_part().rank();
    let sig = signature(&translation_of(&phi))?;
    Ok(CatalogReport {
        label: label.to_string(),
        realization_type: rtype,
        expected_case: expected,
        case_matches: classified.case == expected,
        rank_matches: matches!((rtype, rank), (1, 4) | (2, 3)),
        shape_matches: zero_pattern(rtype, phi_inv).is_ok(),
        classified,
        rank,
        signature: sig.to_json(),
        corrected: None,
    })
}

/// Classify an instantiated entry and compare with its heading and type.
pub fn catalog_check(label: &str, params: &HashMap<String, G>) -> Result<CatalogReport> {
    let e = entry(label)?;
    check_entry(e, params)
}

/// As [`catalog_check`], for an entry that need not be bundled.
pub fn check_entry(e: &CatalogEntry, params: &HashMap<String, G>) -> Result<CatalogReport> {
    let env = template_env(e, params)?;
    let m = eval_template(&e.phi_inv, &env)?;
    let mut report = check_matrix(&e.label, e.realization_type, e.expected_case(), &m)?;
    if !report.passes() {
        if let Some(src) = &e.correction {
            let fixed = eval_template(src, &env)?;
            report.corrected = Some(Box::new(check_matrix(&e.label, e.realization_type, e.expected_case(), &fixed)?));
        }
    }
    Ok(report)
}

/// Copy of an entry with the sign of one entry of an antisymmetric pair flipped.
pub fn corrupted(e: &CatalogEntry) -> CatalogEntry {
    let mut rows: Vec<Vec<String>> =
        e.phi_inv.split(';').map(|r| r.split_whitespace().map(String::from).collect()).collect();
    let protected = |i: usize, j: usize| match e.realization_type {
        1 => (i, j) == (0, 3) || (i, j) == (3, 0),
        _ => false,
    };
    'outer: for i in 0..4 {
        for j in i + 1..4 {
            if rows[i][j] != "0" && !protected(i, j) {
                rows[i][j] = format!("-({})", rows[i][j]);
                break 'outer;
            }
        }
    }
    CatalogEntry {
        label: format!("{}~", e.label),
        phi_inv: rows.iter().map(|r| r.join(" ")).collect::<Vec<_>>().join("; "),
        correction: None,
        ..e.clone()
    }
}

/// The default parameters `λ = 2, μ = 3`.
pub fn default_params() -> HashMap<String, G> {
    HashMap::from([("l".to_string(), G::from(2)), ("m".to_string(), G::from(3))])
}

/// Within-heading comparison of two entries.
#[derive(Clone, Debug)]
pub struct PairComparison {
    pub first: String,
    pub second: String,
    /// Same `GL(W)` orbit, as expected under one heading.
    pub gl_equivalent: bool,
    /// The vanishing patterns of the normalized parameters differ.
    pub patterns_differ: bool,
}

/// Compare all pairs of entries under one heading.
pub fn heading_comparison(case: &str, params: &HashMap<String, G>) -> Result<Vec<PairComparison>> {
    let group: Vec<&CatalogEntry> = entries().iter().filter(|e| e.case == case).collect();
    let mut data = Vec::new();
    for e in &group {
        let m = instantiate_inverse(&e.label, params)?;
        let pattern = zero_pattern(e.realization_type, &m)?;
        data.push((e.label.clone(), Isomorphism::new(m.inverse()?)?, pattern));
    }
    let mut out = Vec::new();
    for i in 0..data.len() {
        for j in i + 1..data.len() {
            out.push(PairComparison {
                first: data[i].0.clone(),
                second: data[j].0.clone(),
                gl_equivalent: equivalent(&data[i].1, &data[j].1),
                patterns_differ: data[i].2 != data[j].2,
            });
        }
    }
    Ok(out)
}

// ---- the case table ----

#[derive(Clone, Debug, Deserialize)]
pub struct Stray {
    pub name: String,
    pub neutral: String,
    pub note: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct RankWhen {
    pub l: String,
    pub rank: usize,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Correction {
    pub phi: String,
    pub note: String,
}

/// One row of the case table: a translation `T` and a form `φ` with `T(φ) = T`.
#[derive(Clone, Debug, Deserialize)]
pub struct CaseDisplay {
    pub case: String,
    #[serde(rename = "T")]
    pub t: String,
    pub phi: String,
    pub params: BTreeMap<String, String>,
    pub constraints: Vec<String>,
    /// `None` when `φ` is antisymmetric and there is no quadric.
    pub rank: Option<usize>,
    #[serde(default)]
    pub stray: Option<Stray>,
    #[serde(default)]
    pub rank_when: Option<RankWhen>,
    #[serde(default)]
    pub correction: Option<Correction>,
}

impl CaseDisplay {
    pub fn case_id(&self) -> CaseId {
        CaseId::parse(&self.case).expect("table cases")
    }

    pub fn default_env(&self) -> Result<HashMap<String, G>> {
        self.params.iter().map(|(k, v)| Ok((k.clone(), eval_scalar(v, &HashMap::new())?))).collect()
    }

    pub fn listed_rank(&self, env: &HashMap<String, G>) -> Result<usize> {
        if let Some(w) = &self.rank_when {
            if env.get("l") == Some(&eval_scalar(&w.l, &HashMap::new())?) {
                return Ok(w.rank);
            }
        }
        Ok(self.rank.unwrap_or(0))
    }

    pub fn check_constraints(&self, env: &HashMap<String, G>) -> Result<()> {
        for c in &self.constraints {
            if eval_scalar(c, env)?.is_zero() {
                return Err(Error::Constraint(format!("{c} ≠ 0")));
            }
        }
        Ok(())
    }
}

pub fn case_displays() -> &'static [CaseDisplay] {
    static CELL: OnceLock<Vec<CaseDisplay>> = OnceLock::new();
    CELL.get_or_init(|| serde_json::from_str(CASES_JSON).expect("bundled case table parses"))
}

pub fn case_display(case: &str) -> Result<&'static CaseDisplay> {
    case_displays().iter().find(|c| c.case == case).ok_or_else(|| Error::UnknownLabel(case.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisplayCheck {
    pub t_matches: bool,
    pub rank: usize,
    pub rank_matches: bool,
}

impl DisplayCheck {
    pub fn passes(&self) -> bool {
        self.t_matches && self.rank_matches
    }

    fn to_json(&self) -> Value {
        json!({ "t_matches": self.t_matches, "rank": self.rank, "rank_matches": self.rank_matches })
    }
}

#[derive(Clone, Debug)]
pub struct CaseRow {
    pub case: String,
    pub listed_rank: usize,
    /// The displayed pair, with any stray factor at its neutral value.
    pub verbatim: DisplayCheck,
    pub classified: Option<CaseLabel>,
    /// Stray factor at the supplied (non-neutral) value, with its note.
    pub stray: Option<(DisplayCheck, String)>,
    /// Corrected display, evaluated only when the verbatim one fails.
    pub corrected: Option<(DisplayCheck, String)>,
}

impl CaseRow {
    pub fn passes(&self) -> bool {
        self.verbatim.passes()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "case": self.case,
            "listed_rank": self.listed_rank,
            "verbatim": self.verbatim.to_json(),
            "pass": self.passes(),
            "classified": self.classified.as_ref().map(|c| c.to_json()),
            "stray": self.stray.as_ref().map(|(c, n)| json!({"check": c.to_json(), "note": n})),
            "corrected": self.corrected.as_ref().map(|(c, n)| json!({"check": c.to_json(), "note": n})),
        })
    }
}

fn display_check(t_src: &str, phi_src: &str, env: &HashMap<String, G>, listed: usize) -> Result<(DisplayCheck, Isomorphism)> {
    let phi = Isomorphism::new(eval_template(phi_src, env)?)?;
    let t = eval_template(t_src, env)?;
    let rank = phi.sym_part().rank();
    Ok((DisplayCheck { t_matches: translation_of(&phi) == t, rank, rank_matches: rank == listed }, phi))
}

/// Check one row of the table; `overrides` replace the default parameters.
pub fn check_case(case: &str, overrides: &HashMap<String, G>) -> Result<CaseRow> {
    let d = case_display(case)?;
    let mut env = d.default_env()?;
    env.extend(normalize_params(overrides));
    d.check_constraints(&env)?;
    if eval_template(&d.t, &env).is_err_and(|e| matches!(e, Error::DivisionByZero)) {
        return Err(Error::Constraint("a displayed entry is undefined at these parameters".into()));
    }
    let listed = d.listed_rank(&env)?;
    let mut main_env = env.clone();
    if let Some(s) = &d.stray {
        main_env.insert(s.name.clone(), eval_scalar(&s.neutral, &HashMap::new())?);
    }
    let (verbatim, phi) = display_check(&d.t, &d.phi, &main_env, listed)?;
    let stray = match &d.stray {
        Some(s) if main_env.get(&s.name) != env.get(&s.name) => {
            Some((display_check(&d.t, &d.phi, &env, listed)?.0, s.note.clone()))
        }
        _ => None,
    };
    let corrected = match &d.correction {
        Some(c) if !verbatim.passes() => Some((display_check(&d.t, &c.phi, &main_env, listed)?.0, c.note.clone())),
        _ => None,
    };
    Ok(CaseRow {
        case: d.case.clone(),
        listed_rank: listed,
        verbatim,
        classified: classify(&phi).ok(),
        stray,
        corrected,
    })
}

pub fn case_table() -> Result<Vec<CaseRow>> {
    case_displays().iter().map(|d| check_case(&d.case, &HashMap::new())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::env_of;

    #[test]
    fn bundled_data_loads() {
        assert_eq!(entries().len(), 33);
        assert_eq!(entries().iter().filter(|e| e.realization_type == 1).count(), 25);
        assert_eq!(case_displays().len(), 13);
    }

    #[test]
    fn instantiate_examples() {
        let phi = instantiate("2.4a", &HashMap::new()).unwrap();
        assert_eq!(phi.matrix().inverse().unwrap(), Matrix::from_ints(&[
            &[0, 1, 0, 2],
            &[-1, 0, -2, 0],
            &[0, 0, 0, 1],
            &[0, 0, -1, 0],
        ]));
        let m = instantiate_inverse("1.1a", &default_params()).unwrap();
        for v in [G::from_ratio(2, 3), G::from_ratio(4, 3), G::from_ratio(1, 2), G::from_ratio(3, 2)] {
            assert!(m.to_rows().iter().flatten().any(|x| x == &v || x == &-&v), "{v}");
        }
        let err = instantiate("1.2a", &env_of(&[("lambda", G::from(1))])).unwrap_err();
        assert!(err.to_string().contains("λ² ≠ 1"));
        assert!(matches!(instantiate("9.9z", &HashMap::new()), Err(Error::UnknownLabel(_))));
    }
}
