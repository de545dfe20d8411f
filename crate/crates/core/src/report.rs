//! Text and JSON renderings of a [`RetractReport`].

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use crate::domain::format_coeff;
use crate::lattice::IntMatrix;
use crate::poly::MixedPoly;
use crate::retract::{Certificates, ClassificationVerdict, Rationality, RetractReport, TrDeg, YKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}

/// Integers that fit in `i64` print as JSON numbers, larger ones as strings.
struct JsonInt<'a>(&'a BigInt);

impl Serialize for JsonInt<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

struct JsonMatrix<'a>(&'a IntMatrix);

impl Serialize for JsonMatrix<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let m = self.0;
        let mut seq = s.serialize_seq(Some(m.rows()))?;
        for i in 0..m.rows() {
            let row: Vec<JsonInt> = (0..m.cols()).map(|j| JsonInt(&m[(i, j)])).collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

#[derive(Serialize)]
struct DecompositionJson<'a> {
    #[serde(rename = "M")]
    m: JsonMatrix<'a>,
    #[serde(rename = "Y")]
    y: JsonMatrix<'a>,
    #[serde(rename = "T")]
    t: JsonMatrix<'a>,
    #[serde(rename = "detSign")]
    det_sign: i8,
}

#[derive(Serialize)]
struct QuotientJson {
    variables: Vec<String>,
    generators: Vec<String>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ReportJson<'a> {
    n: usize,
    d: usize,
    domain: String,
    variables: &'a [String],
    r: usize,
    trdeg: TrDeg,
    classification: ClassificationVerdict,
    rationality: Rationality,
    y_variables: Vec<String>,
    normalizers: Vec<String>,
    y_kinds: Vec<YKind>,
    decomposition: DecompositionJson<'a>,
    generators: Vec<String>,
    quotient: QuotientJson,
    certificates: &'a Certificates,
}

fn strings(ps: &[MixedPoly]) -> Vec<String> {
    ps.iter().map(ToString::to_string).collect()
}

fn render_json(report: &RetractReport) -> String {
    let ring = &report.ring;
    let dec = &report.decomposition;
    let quotient_variables = report
        .quotient_ring()
        .map(|q| q.names().to_vec())
        .unwrap_or_default();
    let json = ReportJson {
        n: ring.n(),
        d: ring.d(),
        domain: ring.domain().name(),
        variables: ring.names(),
        r: report.r,
        trdeg: report.trdeg,
        classification: report.classification,
        rationality: report.rationality,
        y_variables: report
            .y_variables
            .iter()
            .map(|y| y.monomial(ring).to_string())
            .collect(),
        normalizers: report
            .y_variables
            .iter()
            .map(|y| format_coeff(&y.normalizer))
            .collect(),
        y_kinds: report.y_variables.iter().map(|y| y.kind).collect(),
        decomposition: DecompositionJson {
            m: JsonMatrix(&dec.m),
            y: JsonMatrix(&dec.y),
            t: JsonMatrix(&dec.t),
            det_sign: dec.det_sign,
        },
        generators: strings(&report.generators),
        quotient: QuotientJson {
            variables: quotient_variables,
            generators: strings(&report.quotient_generators),
        },
        certificates: &report.certificates,
    };
    let mut out = serde_json::to_string_pretty(&json).expect("report serializes");
    out.push('\n');
    out
}

fn render_text(report: &RetractReport) -> String {
    let ring = &report.ring;
    let dec = &report.decomposition;
    let mut s = String::new();
    let _ = writeln!(s, "{}", ring.header());
    let _ = writeln!(s, "n = {}, d = {}, r = {}", ring.n(), ring.d(), report.r);
    let _ = writeln!(s, "trdeg = {}", report.trdeg);
    let _ = writeln!(s, "classification: {}", report.classification);
    let _ = writeln!(s, "rationality: {}", report.rationality);
    let _ = writeln!(s, "M = {}", dec.m);
    let _ = writeln!(s, "Y = {}", dec.y);
    let _ = writeln!(s, "T = {}", dec.t);
    let _ = writeln!(s, "det Y = {}", if dec.det_sign > 0 { "+1" } else { "-1" });
    let _ = writeln!(s, "y-variables:");
    for (i, y) in report.y_variables.iter().enumerate() {
        let mono = y.monomial(ring);
        match y.kind {
            YKind::Fixed => {
                let _ = writeln!(s, "  y{} = {}  fixed", i + 1, mono);
            }
            YKind::Killed => {
                let _ = writeln!(
                    s,
                    "  y{} = {}  killed, normalizer {}",
                    i + 1,
                    mono,
                    format_coeff(&y.normalizer)
                );
            }
        }
    }
    let _ = writeln!(s, "generators:");
    for g in &report.generators {
        let _ = writeln!(s, "  {g}");
    }
    if let Ok(q) = report.quotient_ring() {
        let _ = writeln!(s, "quotient {}:", q.header().trim_start_matches("ring "));
        for g in &report.quotient_generators {
            let _ = writeln!(s, "  {g}");
        }
    }
    let _ = writeln!(s, "certificates:");
    let certs = serde_json::to_value(&report.certificates).expect("certificates serialize");
    if let Some(map) = certs.as_object() {
        for (name, ok) in map {
            let _ = writeln!(
                s,
                "  {name}: {}",
                if ok.as_bool() == Some(true) { "ok" } else { "FAILED" }
            );
        }
    }
    s
}

pub fn render_report(report: &RetractReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Text => render_text(report),
        ReportFormat::Json => render_json(report),
    }
}
