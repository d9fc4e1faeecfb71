//! Input/output documents and pipeline orchestration for the `hypertoric`
//! binary.
//!
//! The input is a single JSON document: `normals` (n rows of d integers),
//! optional `offsets` (strings `"p/q"` or bare integers), and optional
//! `options` (`maxDegree`, `seed`). The output document carries the
//! validation report, weights, group table, ring presentation, Poincaré
//! coefficients, and Euler characteristic. Rationals are serialized in
//! lowest terms with positive denominator, `"p/q"`, or `"p"` when the
//! denominator is 1; identical input and seed yield byte-identical output.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use crate::arrangement::{self, ArrangementSpec};
use crate::groebner::{self, MonomialOrder, PoincarePolynomial};
use crate::oracle;
use crate::presentation::{self, Polynomial, RingPresentation};
use crate::stabilizers::StabilizerGroup;
use crate::{Error, Result};

pub const SCHEMA_VERSION: u64 = 1;

/// Parsed input document.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    #[serde(default, rename = "schemaVersion")]
    pub schema_version: Option<u64>,
    pub normals: Vec<Vec<i64>>,
    #[serde(default)]
    pub offsets: Option<Vec<OffsetValue>>,
    #[serde(default)]
    pub options: Option<InputOptions>,
}

/// An offset entry: a bare integer or a `"p/q"` string.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum OffsetValue {
    Int(i64),
    Text(String),
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputOptions {
    #[serde(default, rename = "maxDegree")]
    pub max_degree: Option<u64>,
    #[serde(default)]
    pub seed: Option<u64>,
}

/// Parse a rational in the wire format: `"p"` or `"p/q"`.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("invalid rational '{text}'"));
    match text.split_once('/') {
        None => {
            let p = BigInt::from_str(text.trim()).map_err(|_| bad())?;
            Ok(BigRational::from(p))
        }
        Some((num, den)) => {
            let p = BigInt::from_str(num.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(den.trim()).map_err(|_| bad())?;
            if q.is_zero_value() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
    }
}

trait IsZeroValue {
    fn is_zero_value(&self) -> bool;
}
impl IsZeroValue for BigInt {
    fn is_zero_value(&self) -> bool {
        use num_traits::Zero;
        self.is_zero()
    }
}

/// Render a rational in the wire format.
pub fn format_rational(x: &BigRational) -> String {
    if x.denom() == &BigInt::one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

impl InputDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: InputDocument =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if let Some(v) = doc.schema_version {
            if v != SCHEMA_VERSION {
                return Err(Error::Parse(format!(
                    "unsupported schemaVersion {v}, expected {SCHEMA_VERSION}"
                )));
            }
        }
        if doc.normals.is_empty() {
            return Err(Error::Parse("normals must be a nonempty matrix".into()));
        }
        let d = doc.normals[0].len();
        if d == 0 || doc.normals.iter().any(|row| row.len() != d) {
            return Err(Error::Parse(
                "normals must be rectangular with positive row length".into(),
            ));
        }
        if let Some(offsets) = &doc.offsets {
            if offsets.len() != doc.normals.len() {
                return Err(Error::Parse(format!(
                    "offsets length {} does not match normal count {}",
                    offsets.len(),
                    doc.normals.len()
                )));
            }
        }
        Ok(doc)
    }

    pub fn normals_bigint(&self) -> Vec<Vec<BigInt>> {
        self.normals
            .iter()
            .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    pub fn offsets_rational(&self) -> Result<Option<Vec<BigRational>>> {
        match &self.offsets {
            None => Ok(None),
            Some(vals) => {
                let mut out = Vec::with_capacity(vals.len());
                for v in vals {
                    out.push(match v {
                        OffsetValue::Int(x) => BigRational::from(BigInt::from(*x)),
                        OffsetValue::Text(s) => parse_rational(s)?,
                    });
                }
                Ok(Some(out))
            }
        }
    }
}

/// Flags controlling one pipeline run.
#[derive(Debug, Clone, Default)]
pub struct PipelineOptions {
    /// Replace non-simple provided offsets with a random simple affinization.
    /// Absent offsets are always affinized.
    pub affinize: bool,
    /// Run the oracle and compare against the Gröbner Poincaré polynomial.
    pub check_oracle: bool,
    /// Overrides the input document's seed.
    pub seed: Option<u64>,
    /// Overrides the input document's maxDegree.
    pub max_degree: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
struct ValidationSection {
    valid: bool,
    failures: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
struct GroupElementEntry {
    logweights: Vec<String>,
    fixed_indices: Vec<usize>,
    degree: u64,
}

#[derive(Debug, Clone, Serialize)]
struct GeneratorEntry {
    name: String,
    degree: u64,
}

#[derive(Debug, Clone, Serialize)]
struct TermEntry {
    coefficient: String,
    exponents: ExponentMap,
}

/// Exponents keyed by generator name, serialized in generator order.
#[derive(Debug, Clone)]
struct ExponentMap(Vec<(String, u32)>);

impl Serialize for ExponentMap {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (name, e) in &self.0 {
            map.serialize_entry(name, e)?;
        }
        map.end()
    }
}

#[derive(Debug, Clone, Serialize)]
struct RelationEntry {
    origin: &'static str,
    terms: Vec<TermEntry>,
}

#[derive(Debug, Clone, Serialize)]
struct PresentationSection {
    generators: Vec<GeneratorEntry>,
    relations: Vec<RelationEntry>,
}

/// Degree-to-dimension map serialized as an object with numerically ordered
/// decimal keys.
#[derive(Debug, Clone)]
struct PoincareMap(Vec<(u64, usize)>);

impl Serialize for PoincareMap {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (degree, dim) in &self.0 {
            map.serialize_entry(&degree.to_string(), dim)?;
        }
        map.end()
    }
}

/// The machine-readable result of a run.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct OutputDocument {
    schema_version: u64,
    validation: ValidationSection,
    offsets: Vec<String>,
    weights: Vec<Vec<String>>,
    group: Vec<GroupElementEntry>,
    presentation: PresentationSection,
    poincare: PoincareMap,
    euler_characteristic: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_agreement: Option<bool>,
}

impl OutputDocument {
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("document serializes");
        text.push('\n');
        text
    }

    pub fn euler_characteristic(&self) -> usize {
        self.euler_characteristic
    }

    pub fn poincare_coefficient(&self, degree: u64) -> usize {
        self.poincare
            .0
            .iter()
            .find(|(d, _)| *d == degree)
            .map(|(_, c)| *c)
            .unwrap_or(0)
    }

    pub fn group_order(&self) -> usize {
        self.group.len()
    }

    /// Human-readable report carrying the same numbers as the JSON.
    pub fn render_report(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "validation: {}\n",
            if self.validation.valid { "ok" } else { "FAILED" }
        ));
        for failure in &self.validation.failures {
            out.push_str(&format!("  failure: {failure}\n"));
        }
        out.push_str(&format!("offsets: ({})\n", self.offsets.join(", ")));
        out.push_str("weights:\n");
        for (i, lambda) in self.weights.iter().enumerate() {
            out.push_str(&format!("  lambda_{} = ({})\n", i + 1, lambda.join(", ")));
        }
        out.push_str(&format!("group: order {}\n", self.group.len()));
        for (i, t) in self.group.iter().enumerate() {
            let fixed: Vec<String> = t.fixed_indices.iter().map(|i| i.to_string()).collect();
            out.push_str(&format!(
                "  t{}: logweights ({}), fixed {{{}}}, degree {}\n",
                i + 1,
                t.logweights.join(", "),
                fixed.join(", "),
                t.degree
            ));
        }
        out.push_str("generators:");
        for g in &self.presentation.generators {
            out.push_str(&format!(" {} (deg {})", g.name, g.degree));
        }
        out.push('\n');
        out.push_str(&format!(
            "relations: {}\n",
            self.presentation.relations.len()
        ));
        for rel in &self.presentation.relations {
            out.push_str(&format!("  [{}] {}\n", rel.origin, render_terms(&rel.terms)));
        }
        let poincare_terms: Vec<(u64, usize)> = self.poincare.0.clone();
        out.push_str(&format!(
            "poincare: {}\n",
            PoincarePolynomial::from_pairs(&poincare_terms)
        ));
        out.push_str(&format!(
            "euler characteristic: {}\n",
            self.euler_characteristic
        ));
        if let Some(agree) = self.oracle_agreement {
            out.push_str(&format!(
                "oracle agreement: {}\n",
                if agree { "yes" } else { "NO" }
            ));
        }
        out
    }
}

fn render_terms(terms: &[TermEntry]) -> String {
    let mut out = String::new();
    for (i, term) in terms.iter().enumerate() {
        let mut factors: Vec<String> = Vec::new();
        for (name, e) in &term.exponents.0 {
            if *e == 1 {
                factors.push(name.clone());
            } else {
                factors.push(format!("{name}^{e}"));
            }
        }
        let monomial = if factors.is_empty() {
            "1".to_string()
        } else {
            factors.join("*")
        };
        let coeff = &term.coefficient;
        let (sign, magnitude) = match coeff.strip_prefix('-') {
            Some(rest) => ("-", rest.to_string()),
            None => ("+", coeff.clone()),
        };
        if i == 0 {
            if sign == "-" {
                out.push_str("- ");
            }
        } else {
            out.push_str(if sign == "-" { " - " } else { " + " });
        }
        if magnitude == "1" && !factors.is_empty() {
            out.push_str(&monomial);
        } else if factors.is_empty() {
            out.push_str(&magnitude);
        } else {
            out.push_str(&format!("{magnitude}*{monomial}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn relation_entry(
    origin: &'static str,
    poly: &Polynomial,
    pres: &RingPresentation,
    order: &MonomialOrder,
) -> RelationEntry {
    let mut terms: Vec<(&presentation::Monomial, &BigRational)> = poly.terms().collect();
    terms.sort_by(|(a, _), (b, _)| order.cmp(b, a));
    let entries = terms
        .into_iter()
        .map(|(m, c)| {
            let exps: Vec<(String, u32)> = (0..pres.num_generators())
                .filter(|&v| m.exp(v) > 0)
                .map(|v| (pres.generator_name(v), m.exp(v)))
                .collect();
            TermEntry {
                coefficient: format_rational(c),
                exponents: ExponentMap(exps),
            }
        })
        .collect();
    RelationEntry {
        origin,
        terms: entries,
    }
}

/// Everything the pipeline computed, for callers that want more than JSON.
#[derive(Debug)]
pub struct PipelineOutcome {
    pub document: OutputDocument,
    pub poincare: PoincarePolynomial,
}

/// Run the full pipeline on a parsed input document.
///
/// Order of stages: validation, affinization (when offsets are absent, or
/// when they are non-simple and `affinize` is set), simplicity check,
/// weights, group, presentation, Gröbner basis, Poincaré polynomial, and
/// optionally the oracle comparison.
pub fn run_pipeline(input: &InputDocument, opts: &PipelineOptions) -> Result<PipelineOutcome> {
    let normals = input.normals_bigint();
    let provided_offsets = input.offsets_rational()?;
    let doc_options = input.options.clone().unwrap_or_default();
    let seed = opts.seed.or(doc_options.seed).unwrap_or(0);
    let n = normals.len();
    let max_degree = opts
        .max_degree
        .or(doc_options.max_degree)
        .unwrap_or_else(|| oracle::default_max_degree(n));
    if !max_degree.is_multiple_of(2) {
        return Err(Error::Parse(format!(
            "maxDegree must be even, got {max_degree}"
        )));
    }

    // Validation does not depend on offsets.
    let zero_offsets = vec![BigRational::from(BigInt::from(0)); n];
    let probe = ArrangementSpec::new(normals.clone(), zero_offsets);
    let report = arrangement::validate(&probe);
    if !report.is_valid() {
        return Err(Error::Validation(report));
    }

    let spec = match provided_offsets {
        None => {
            let offsets = arrangement::random_simple_affinization(
                &normals,
                seed,
                arrangement::AFFINIZATION_RETRY_BUDGET,
            )?;
            ArrangementSpec::new(normals, offsets)
        }
        Some(offsets) => {
            let candidate = ArrangementSpec::new(normals.clone(), offsets);
            match arrangement::require_simple(&candidate) {
                Ok(()) => candidate,
                Err(err) => {
                    if opts.affinize {
                        let offsets = arrangement::random_simple_affinization(
                            &normals,
                            seed,
                            arrangement::AFFINIZATION_RETRY_BUDGET,
                        )?;
                        ArrangementSpec::new(normals, offsets)
                    } else {
                        return Err(err);
                    }
                }
            }
        }
    };

    let weights = arrangement::compute_weights(&spec);
    let group = crate::stabilizers::full_group(&spec)?;
    let pres = presentation::assemble_presentation(&spec, &group);
    let order = MonomialOrder::for_presentation(&pres);
    let relations: Vec<Polynomial> = pres.relations().iter().map(|r| r.poly.clone()).collect();
    let gb = groebner::buchberger(&relations, order.clone());
    let poincare = gb.poincare()?;

    let oracle_agreement = if opts.check_oracle {
        let oracle_result = oracle::oracle_poincare(&pres, max_degree);
        compare_poincare(&poincare, &oracle_result.polynomial, max_degree)?;
        Some(true)
    } else {
        None
    };

    let document = build_document(&spec, &report, &weights, &group, &pres, &order, &poincare, oracle_agreement);
    Ok(PipelineOutcome { document, poincare })
}

fn compare_poincare(
    groebner: &PoincarePolynomial,
    oracle: &PoincarePolynomial,
    max_degree: u64,
) -> Result<()> {
    let top = groebner
        .max_degree()
        .unwrap_or(0)
        .max(oracle.max_degree().unwrap_or(0))
        .max(max_degree);
    let mut degree = 0;
    while degree <= top {
        if groebner.coefficient(degree) != oracle.coefficient(degree) {
            return Err(Error::OracleMismatch {
                degree,
                groebner: groebner.coefficient(degree),
                oracle: oracle.coefficient(degree),
            });
        }
        degree += 2;
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn build_document(
    spec: &ArrangementSpec,
    report: &arrangement::ValidationReport,
    weights: &arrangement::WeightMatrix,
    group: &StabilizerGroup,
    pres: &RingPresentation,
    order: &MonomialOrder,
    poincare: &PoincarePolynomial,
    oracle_agreement: Option<bool>,
) -> OutputDocument {
    let validation = ValidationSection {
        valid: report.is_valid(),
        failures: report.failures.iter().map(|f| f.to_string()).collect(),
    };
    let offsets = spec.offsets().iter().map(format_rational).collect();
    let weights_out = weights
        .rows()
        .iter()
        .map(|lambda| lambda.iter().map(|x| x.to_string()).collect())
        .collect();
    let group_out = (0..group.order())
        .map(|t| GroupElementEntry {
            logweights: group
                .element(t)
                .logweights()
                .iter()
                .map(format_rational)
                .collect(),
            fixed_indices: group.fixed_set(t).iter().map(|&i| i + 1).collect(),
            degree: group.degree(t),
        })
        .collect();
    let degrees = pres.degrees();
    let generators = (0..pres.num_generators())
        .map(|v| GeneratorEntry {
            name: pres.generator_name(v),
            degree: degrees[v],
        })
        .collect();
    let relations = pres
        .relations()
        .iter()
        .map(|r| relation_entry(r.origin.tag(), &r.poly, pres, order))
        .collect();
    let poincare_pairs: Vec<(u64, usize)> = poincare
        .coefficients()
        .iter()
        .map(|(&d, &c)| (d, c))
        .collect();
    OutputDocument {
        schema_version: SCHEMA_VERSION,
        validation,
        offsets,
        weights: weights_out,
        group: group_out,
        presentation: PresentationSection {
            generators,
            relations,
        },
        poincare: PoincareMap(poincare_pairs),
        euler_characteristic: poincare.euler_characteristic(),
        oracle_agreement,
    }
}

/// Exit code for an error, mirroring the binary's contract: 64 parse error,
/// 65 validation failure, 66 non-simple arrangement, 70 oracle mismatch,
/// 71 finiteness failure, 1 anything else.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parse(_) => 64,
        Error::Validation(_) => 65,
        Error::NotSimple(_) => 66,
        Error::OracleMismatch { .. } => 70,
        Error::NotFinite(_) => 71,
        _ => 1,
    }
}

/// Convenience entry point: JSON text in, outcome out.
pub fn run_on_json(text: &str, opts: &PipelineOptions) -> Result<PipelineOutcome> {
    let doc = InputDocument::from_json(text)?;
    run_pipeline(&doc, opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    const ORBI_P2: &str = r#"{
        "normals": [[1, 0], [0, 1], [-2, -1]],
        "offsets": [0, 0, 1]
    }"#;

    #[test]
    fn parse_rational_wire_format() {
        assert_eq!(parse_rational("3").unwrap(), BigRational::from(BigInt::from(3)));
        assert_eq!(
            parse_rational("-1/2").unwrap(),
            BigRational::new(BigInt::from(-1), BigInt::from(2))
        );
        // Normalization: lowest terms, positive denominator.
        assert_eq!(format_rational(&parse_rational("2/-4").unwrap()), "-1/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn input_document_validation() {
        assert!(InputDocument::from_json(ORBI_P2).is_ok());
        assert!(InputDocument::from_json("{}").is_err());
        assert!(InputDocument::from_json(r#"{"normals": []}"#).is_err());
        assert!(InputDocument::from_json(r#"{"normals": [[1, 0], [1]]}"#).is_err());
        assert!(
            InputDocument::from_json(r#"{"normals": [[1], [2]], "offsets": [1]}"#).is_err()
        );
        assert!(InputDocument::from_json(
            r#"{"schemaVersion": 2, "normals": [[1], [2]]}"#
        )
        .is_err());
        assert!(InputDocument::from_json(
            r#"{"normals": [[1], [2]], "unknown": 1}"#
        )
        .is_err());
    }

    #[test]
    fn pipeline_on_fixture() {
        let outcome = run_on_json(ORBI_P2, &PipelineOptions::default()).unwrap();
        assert_eq!(outcome.document.euler_characteristic(), 4);
        assert_eq!(outcome.document.poincare_coefficient(0), 1);
        assert_eq!(outcome.document.poincare_coefficient(2), 1);
        assert_eq!(outcome.document.poincare_coefficient(4), 2);
        assert_eq!(outcome.document.group_order(), 2);
        let json = outcome.document.to_json();
        assert!(json.contains("\"eulerCharacteristic\": 4"));
        // Report and JSON carry the same numbers.
        let report = outcome.document.render_report();
        assert!(report.contains("poincare: 1 + t^2 + 2t^4"));
        assert!(report.contains("euler characteristic: 4"));
    }

    #[test]
    fn pipeline_is_deterministic() {
        let opts = PipelineOptions {
            check_oracle: true,
            ..Default::default()
        };
        let a = run_on_json(ORBI_P2, &opts).unwrap();
        let b = run_on_json(ORBI_P2, &opts).unwrap();
        assert_eq!(a.document.to_json(), b.document.to_json());
        assert_eq!(a.document.oracle_agreement, Some(true));
    }

    #[test]
    fn pipeline_rejects_non_simple_without_affinize() {
        let text = r#"{
            "normals": [[1, 0], [0, 1], [-1, -1], [-1, 1]],
            "offsets": [0, 0, 1, 1]
        }"#;
        let err = run_on_json(text, &PipelineOptions::default()).unwrap_err();
        assert_eq!(exit_code(&err), 66);

        let opts = PipelineOptions {
            affinize: true,
            ..Default::default()
        };
        let outcome = run_on_json(text, &opts).unwrap();
        assert_eq!(outcome.document.euler_characteristic(), 7);
    }

    #[test]
    fn pipeline_affinizes_absent_offsets() {
        let text = r#"{"normals": [[1, 0], [0, 1], [-2, -1]]}"#;
        let outcome = run_on_json(text, &PipelineOptions::default()).unwrap();
        assert_eq!(outcome.document.euler_characteristic(), 4);
    }

    #[test]
    fn pipeline_validation_failure_code() {
        let text = r#"{"normals": [[2, 0], [0, 2], [-1, -1]], "offsets": [0, 0, 1]}"#;
        let err = run_on_json(text, &PipelineOptions::default()).unwrap_err();
        assert_eq!(exit_code(&err), 65);
    }

    #[test]
    fn max_degree_must_be_even() {
        let opts = PipelineOptions {
            max_degree: Some(7),
            ..Default::default()
        };
        let err = run_on_json(ORBI_P2, &opts).unwrap_err();
        assert_eq!(exit_code(&err), 64);
    }
}
