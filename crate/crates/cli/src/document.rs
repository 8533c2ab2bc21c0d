//! Problem and report documents.
//!
//! Everything on disk is JSON. Coefficients are `"n"` or `"n/d"` strings,
//! coordinate indices are 1-based (tangent coordinates first), and objects
//! are printed with sorted keys so identical reports are identical bytes.

use std::collections::BTreeMap;

use mcgauge::exactpoly::{format_scalar, parse_scalar, Monomial, SpaceModel, SuperPoly};
use mcgauge::multivec::{LieAlgebraData, MultiVec};
use serde::{de::DeserializeOwned, Deserialize, Serialize};

use crate::CliError;

pub const FORMAT_VERSION: u32 = 1;

/// The pinned Schouten convention, repeated in every report.
pub const CONVENTION: &str =
    "[P,Q] = sum_i (-1)^(|P|-1) dP/dxi_i dQ/du_i - dP/du_i dQ/dxi_i; (1/2)<[pi,pi], df^dg^dh> = +Jac(f,g,h)";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDoc {
    pub p: usize,
    pub q: usize,
}

/// One monomial term: `c · u^even · ξ_odd[0] ξ_odd[1] ⋯`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub c: String,
    pub even: Vec<u32>,
    pub odd: Vec<usize>,
}

/// `[e_i, e_j] = c e_k` for `i < j`, 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieAlgebraDoc {
    pub dim: usize,
    pub brackets: Vec<(usize, usize, usize, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemDocument {
    pub space: SpaceDoc,
    pub jet_order: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x_cap: Option<u32>,
    #[serde(default)]
    pub multivectors: BTreeMap<String, Vec<TermDoc>>,
    /// Linear Poisson structure used as `gamma` when no `gamma` is given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lie_algebra: Option<LieAlgebraDoc>,
    /// Levels for the `cohomology` command.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub levels: Option<Vec<u32>>,
}

impl ProblemDocument {
    pub fn space_model(&self) -> Result<SpaceModel, CliError> {
        if self.space.q == 0 {
            return Err(CliError::Invalid("space.q must be at least 1".into()));
        }
        Ok(SpaceModel::new(self.space.p, self.space.q)?)
    }

    pub fn lie_algebra_data(&self) -> Result<Option<LieAlgebraData>, CliError> {
        let Some(doc) = &self.lie_algebra else { return Ok(None) };
        let mut brackets = Vec::with_capacity(doc.brackets.len());
        for (i, j, k, c) in &doc.brackets {
            let index = |n: usize| {
                n.checked_sub(1).filter(|&m| m < doc.dim).ok_or_else(|| {
                    CliError::Invalid(format!("lie_algebra index {n} outside 1..={}", doc.dim))
                })
            };
            brackets.push((index(*i)?, index(*j)?, index(*k)?, parse_scalar(c)?));
        }
        Ok(Some(LieAlgebraData::from_brackets(doc.dim, brackets)?))
    }

    /// Looks up a named multivector of the given degree.
    pub fn multivector(&self, role: &str, degree: usize, jet_order: u32) -> Result<Option<MultiVec>, CliError> {
        let Some(terms) = self.multivectors.get(role) else { return Ok(None) };
        let body = terms_to_poly(self.space_model()?, terms)?;
        if !body.is_zero() {
            match body.odd_degree() {
                Some(found) if found != degree => {
                    return Err(CliError::Invalid(format!("{role} has odd degree {found}, expected {degree}")));
                }
                Some(_) => {}
                None => return Err(CliError::Invalid(format!("{role} mixes terms of different odd degrees"))),
            }
        }
        Ok(Some(MultiVec::new(body, degree, jet_order)?))
    }
}

/// Builds a polynomial from 1-based terms. Repeated monomials add up.
pub fn terms_to_poly(space: SpaceModel, terms: &[TermDoc]) -> Result<SuperPoly, CliError> {
    let mut poly = SuperPoly::zero(space);
    for t in terms {
        if t.even.len() != space.dim() {
            return Err(CliError::Invalid(format!(
                "term has {} exponents, the space has {} coordinates",
                t.even.len(),
                space.dim()
            )));
        }
        let mut odd = Vec::with_capacity(t.odd.len());
        for &i in &t.odd {
            match i.checked_sub(1).filter(|&m| m < space.dim()) {
                Some(m) => odd.push(m),
                None => return Err(CliError::Invalid(format!("odd index {i} outside 1..={}", space.dim()))),
            }
        }
        let c = parse_scalar(&t.c)?;
        poly = &poly + &SuperPoly::term(space, c, &t.even, &odd)?;
    }
    Ok(poly)
}

/// Terms in the polynomial's canonical order, odd indices increasing.
pub fn poly_to_terms(poly: &SuperPoly) -> Vec<TermDoc> {
    poly.terms()
        .map(|(m, c): (&Monomial, _)| TermDoc {
            c: format_scalar(c),
            even: m.exps.to_vec(),
            odd: m.odd.iter().map(|i| i + 1).collect(),
        })
        .collect()
}

pub fn multivec_to_terms(w: &MultiVec) -> Vec<TermDoc> {
    poly_to_terms(w.body())
}

pub fn lie_algebra_doc(g: &LieAlgebraData) -> LieAlgebraDoc {
    LieAlgebraDoc {
        dim: g.dim(),
        brackets: g.brackets().into_iter().map(|(i, j, k, c)| (i + 1, j + 1, k + 1, format_scalar(&c))).collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToolInfo {
    pub name: String,
    pub version: String,
    pub format: u32,
}

impl ToolInfo {
    pub fn current() -> Self {
        ToolInfo { name: "mcgauge".into(), version: env!("CARGO_PKG_VERSION").into(), format: FORMAT_VERSION }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IterationDoc {
    pub level: u32,
    pub delta_norm: String,
    pub step_norm: String,
    pub distance: String,
    pub from_homotopy: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObstructionDoc {
    pub level: u32,
    pub degree: usize,
    pub power: u32,
    pub dimension: usize,
    pub cocycle: Vec<TermDoc>,
    pub cocycle_closed: bool,
    pub representatives: Vec<Vec<TermDoc>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolveDoc {
    pub gauge: Vec<TermDoc>,
    pub iterations: Vec<IterationDoc>,
    pub final_residual: Vec<TermDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<ObstructionDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrossCheckDoc {
    pub sign: i64,
    pub triples: usize,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckDoc {
    pub tangent: bool,
    pub maurer_cartan: bool,
    pub mc_defect: Vec<TermDoc>,
    pub jacobiator_first_jet_vanishes: bool,
    pub jacobiator_cross_check: CrossCheckDoc,
    /// `"extends"`, `"obstructed"` or `"not-applicable"`.
    pub order2_extension: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelDoc {
    pub level: u32,
    pub power: u32,
    pub x_cap: String,
    pub cochain_dims: Vec<usize>,
    pub cohomology_dims: Vec<usize>,
    pub euler_consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionDoc {
    pub target_order: u32,
    pub x_cap: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pi: Option<Vec<TermDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub obstructed_order: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub defect: Option<Vec<TermDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Vec<TermDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate_pairing: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDocument {
    pub tool: ToolInfo,
    pub convention: String,
    pub command: String,
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub check: Option<CheckDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cohomology: Option<Vec<LevelDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solve: Option<SolveDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extension: Option<ExtensionDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// Wall-clock milliseconds; only present with `--timing`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl ReportDocument {
    pub fn new(command: &str, status: &str) -> Self {
        ReportDocument {
            tool: ToolInfo::current(),
            convention: CONVENTION.into(),
            command: command.into(),
            status: status.into(),
            check: None,
            cohomology: None,
            solve: None,
            extension: None,
            error: None,
            timing_ms: None,
        }
    }
}

/// Pretty JSON with sorted object keys and a trailing newline.
pub fn print<T: Serialize>(doc: &T) -> String {
    // serde_json::Value keeps object keys in a BTreeMap, which sorts them.
    let value = serde_json::to_value(doc).expect("documents serialize");
    let mut out = serde_json::to_string_pretty(&value).expect("values serialize");
    out.push('\n');
    out
}

pub fn parse<T: DeserializeOwned>(text: &str) -> Result<T, CliError> {
    Ok(serde_json::from_str(text)?)
}
