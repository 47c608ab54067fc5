//! Machine-readable output. Every exact number is a `"p/q"` string.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use symvol_core::algebra::{to_decimal, Rational, Sparse, Variables};
use symvol_core::ribbon::{GraphClass, GraphJson};
use symvol_core::verify::VerifyReport;

pub const APPROX_DIGITS: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Volume,
    Intersections,
    Correlator,
    Graphs,
    VerifyReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    pub g: Option<u32>,
    pub n: Option<usize>,
    pub version: String,
}

impl Metadata {
    pub fn new(g: Option<u32>, n: Option<usize>) -> Self {
        Self { g, n, version: env!("CARGO_PKG_VERSION").to_string() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Payload {
    Volume(VolumePayload),
    Intersections(IntersectionPayload),
    Correlator(CorrelatorPayload),
    Graphs(GraphsPayload),
    VerifyReport(VerifyReport),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputDocument {
    pub kind: Kind,
    pub metadata: Metadata,
    pub payload: Payload,
}

/// A rational and, with `--approx`, its truncated decimal expansion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exact {
    pub value: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub approx: Option<String>,
}

impl Exact {
    pub fn new(x: &Rational, approx: bool) -> Self {
        Self { value: x.to_string(), approx: approx.then(|| to_decimal(x, APPROX_DIGITS)) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub exponents: Vec<u32>,
    pub coefficient: Exact,
}

/// Terms in print order plus the rendered text.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Series {
    pub arity: usize,
    pub text: String,
    pub terms: Vec<Term>,
}

impl Series {
    pub fn new<V: Variables>(s: &Sparse<V>, approx: bool) -> Self {
        let terms = s
            .sorted_terms()
            .into_iter()
            .map(|(e, c)| Term { exponents: e.clone(), coefficient: Exact::new(c, approx) })
            .collect();
        Self { arity: s.arity(), text: s.to_string(), terms }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evaluation {
    pub point: Vec<String>,
    pub value: Exact,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VolumePayload {
    pub method: String,
    pub polynomial: Option<Series>,
    pub evaluation: Option<Evaluation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionPayload {
    pub degrees: Vec<u32>,
    pub value: Exact,
    pub dimension_match: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrelatorPayload {
    pub paths: BTreeMap<String, Series>,
    /// Present only when more than one path was computed.
    pub matched: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphRecord {
    #[serde(flatten)]
    pub graph: GraphJson,
    pub aut: usize,
    pub class_aut: usize,
    pub class: usize,
    pub trivalent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphsPayload {
    pub trivalent_only: bool,
    pub classes: usize,
    pub records: Vec<GraphRecord>,
}

impl GraphsPayload {
    pub fn new(classes: &[GraphClass], trivalent_only: bool) -> Self {
        let mut records = Vec::new();
        for (i, class) in classes.iter().enumerate() {
            for l in &class.labelings {
                records.push(GraphRecord {
                    graph: GraphJson::from(&l.graph),
                    aut: l.aut_order,
                    class_aut: class.aut_order,
                    class: i + 1,
                    trivalent: l.graph.is_trivalent(),
                });
            }
        }
        Self { trivalent_only, classes: classes.len(), records }
    }
}

/// `c * X1^a * ...` with decimal coefficients, for `--approx` text output.
pub fn approx_text(series: &Series, factor: impl Fn(usize, u32) -> Option<String>) -> String {
    if series.terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, t) in series.terms.iter().enumerate() {
        let c = t.coefficient.approx.clone().unwrap_or_else(|| t.coefficient.value.clone());
        let (neg, mag) = match c.strip_prefix('-') {
            Some(m) => (true, m.to_string()),
            None => (false, c),
        };
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&mag);
        for (i, &d) in t.exponents.iter().enumerate() {
            if let Some(f) = factor(i, d) {
                out.push_str(" * ");
                out.push_str(&f);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use symvol_core::algebra::{rat, EvenPolynomial};

    #[test]
    fn documents_round_trip() {
        let v = EvenPolynomial::monomial(vec![1], rat(1, 48));
        let doc = OutputDocument {
            kind: Kind::Volume,
            metadata: Metadata::new(Some(1), Some(1)),
            payload: Payload::Volume(VolumePayload {
                method: "recursion".into(),
                polynomial: Some(Series::new(&v, true)),
                evaluation: Some(Evaluation { point: vec!["2".into()], value: Exact::new(&rat(1, 12), false) }),
            }),
        };
        let text = serde_json::to_string(&doc).unwrap();
        assert_eq!(serde_json::from_str::<OutputDocument>(&text).unwrap(), doc);
        assert!(text.contains("\"1/48\""));
        assert!(text.contains("\"kind\":\"volume\""));
    }

    #[test]
    fn approximations_are_marked_decimals() {
        let s = Series::new(&EvenPolynomial::monomial(vec![1], rat(1, 48)), true);
        let text = approx_text(&s, |i, d| (d > 0).then(|| format!("L{}^{}", i + 1, 2 * d)));
        assert!(text.starts_with("0.0208333"), "{text}");
        assert!(text.ends_with(" * L1^2"));
    }
}
