//! Serializable views of core values. Elements are written as integer codes.

use std::collections::BTreeMap;

use permfield_core::families::{FamilyWitness, ParamValue};
use permfield_core::perm::{CheckReport, FailedCondition, Method};
use permfield_core::{Field, Poly};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDto {
    pub p: u32,
    pub n: u32,
    pub q: u32,
    /// Modulus coefficients over `F_p`, constant term first.
    pub modulus: Vec<u32>,
    pub generator: u32,
}

impl FieldDto {
    pub fn of(field: &Field) -> Self {
        let o = field.order();
        FieldDto { p: o.p(), n: o.n(), q: o.q(), modulus: field.modulus().to_vec(), generator: field.generator().code() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldRef {
    pub p: u32,
    pub n: u32,
}

impl FieldRef {
    pub fn of(field: &Field) -> Self {
        FieldRef { p: field.order().p(), n: field.order().n() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDto {
    pub degree: u64,
    pub coefficient: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyDto {
    pub field: FieldDto,
    pub terms: Vec<TermDto>,
}

impl PolyDto {
    pub fn of(f: &Poly) -> Self {
        PolyDto { field: FieldDto::of(f.field()), terms: terms_of(f) }
    }
}

fn terms_of(f: &Poly) -> Vec<TermDto> {
    f.terms().map(|(k, c)| TermDto { degree: k as u64, coefficient: c.code() }).collect()
}

pub fn method_tag(m: Method) -> &'static str {
    match m {
        Method::BruteForce => "brute-force",
        Method::Cyclotomic => "cyclotomic",
        Method::SubfieldNorm => "subfield-norm",
        Method::SubfieldNormPowerM => "subfield-norm-power-m",
        Method::SubfieldNormExpN => "subfield-norm-exp-n",
    }
}

pub fn failed_condition_tag(c: FailedCondition) -> &'static str {
    match c {
        FailedCondition::GcdCondition => "gcd-condition",
        FailedCondition::SubsetPermutation => "subset-permutation",
        FailedCondition::ShiftedPermutation => "shifted-permutation",
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReportDto {
    pub is_permutation: bool,
    pub method: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failed_condition: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<[u32; 2]>,
}

impl CheckReportDto {
    pub fn of(r: &CheckReport) -> Self {
        CheckReportDto {
            is_permutation: r.is_permutation,
            method: method_tag(r.method),
            failed_condition: r.failed_condition.map(failed_condition_tag),
            witness: r.witness.map(|(a, b)| [a.code(), b.code()]),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessDto {
    pub family: &'static str,
    pub field: FieldRef,
    pub params: BTreeMap<&'static str, u64>,
    pub poly: Vec<TermDto>,
    pub oracle_confirmed: bool,
}

impl WitnessDto {
    pub fn of(w: &FamilyWitness) -> Self {
        let params = w
            .params
            .named()
            .into_iter()
            .map(|(name, v)| match v {
                ParamValue::Elem(e) => (name, e.code() as u64),
                ParamValue::Int(k) => (name, k),
            })
            .collect();
        WitnessDto {
            family: w.family.tag(),
            field: FieldRef::of(&w.field),
            params,
            poly: w.terms.iter().map(|&(k, c)| TermDto { degree: k, coefficient: c.code() }).collect(),
            oracle_confirmed: w.oracle_confirmed,
        }
    }
}

/// `x^2 + x + 1` style rendering of a modulus over `F_p`.
pub fn modulus_text(modulus: &[u32]) -> String {
    let terms: Vec<(u64, u32)> = modulus.iter().enumerate().map(|(k, &c)| (k as u64, c)).collect();
    terms_text(&terms)
}

/// Renders sparse `(degree, code)` terms from the highest degree down.
pub fn terms_text(terms: &[(u64, u32)]) -> String {
    let mut sorted = terms.to_vec();
    sorted.sort_by(|a, b| b.0.cmp(&a.0));
    let mut parts = Vec::new();
    for (k, c) in sorted {
        if c == 0 {
            continue;
        }
        parts.push(match (k, c) {
            (0, c) => c.to_string(),
            (1, 1) => "x".to_string(),
            (1, c) => format!("{c}*x"),
            (k, 1) => format!("x^{k}"),
            (k, c) => format!("{c}*x^{k}"),
        });
    }
    if parts.is_empty() {
        return "0".to_string();
    }
    parts.join(" + ")
}
