//! Machine- and human-readable renderings of an invariant report. All big
//! integers are serialized as decimal strings, point indices are 1-based.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::characteristic::{FaceRecord, InvariantReport};
use crate::error::{Error, Result};
use crate::face::FaceKind;
use crate::gale::GaleSystem;
use crate::matrix::IntegerMatrix;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputInfo {
    pub role: String,
    pub n: usize,
    pub hash: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceDoc {
    pub id: String,
    pub dim: usize,
    pub kind: String,
    pub points: Vec<usize>,
    pub complement: Vec<usize>,
    pub vol: String,
    #[serde(rename = "mu_P")]
    pub mu_p: Option<String>,
    #[serde(rename = "i_P")]
    pub i_p: Option<String>,
    pub eu: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub input: InputInfo,
    pub faces: Vec<FaceDoc>,
    #[serde(rename = "V")]
    pub v: Vec<String>,
    pub delta: Vec<String>,
    pub degree: String,
    pub dual_degree: String,
    pub ed_degree: String,
    pub convention: String,
    pub version: String,
}

fn kind_str(kind: FaceKind) -> &'static str {
    match kind {
        FaceKind::FullPolytope => "polytope",
        FaceKind::Simplex => "simplex",
        FaceKind::RelevantLineFace => "relevant-line",
    }
}

fn one_based(idx: &[usize]) -> Vec<usize> {
    idx.iter().map(|i| i + 1).collect()
}

fn face_doc(f: &FaceRecord) -> FaceDoc {
    FaceDoc {
        id: f.id.clone(),
        dim: f.dim,
        kind: kind_str(f.kind).to_string(),
        points: one_based(&f.points),
        complement: one_based(&f.complement),
        vol: f.vol.to_string(),
        mu_p: f.mu.as_ref().map(|x| x.to_string()),
        i_p: f.index.as_ref().map(|x| x.to_string()),
        eu: f.eu.to_string(),
    }
}

/// Canonical text rendering of a matrix, used for input hashing.
pub fn matrix_sha256(m: &IntegerMatrix) -> String {
    let mut text = String::new();
    for r in 0..m.rows() {
        let row: Vec<String> = m.row(r).iter().map(|x| x.to_string()).collect();
        text.push_str(&row.join(" "));
        text.push('\n');
    }
    hex::encode(Sha256::digest(text.as_bytes()))
}

pub fn document(report: &InvariantReport, role: &str, input: &IntegerMatrix) -> ReportDocument {
    ReportDocument {
        input: InputInfo {
            role: role.to_string(),
            n: report.n,
            hash: matrix_sha256(input),
        },
        faces: report.faces.iter().map(face_doc).collect(),
        v: report.v.iter().map(|x| x.to_string()).collect(),
        delta: report.delta.iter().map(|x| x.to_string()).collect(),
        degree: report.degree.to_string(),
        dual_degree: report.dual_degree.to_string(),
        ed_degree: report.ed_degree.to_string(),
        convention: report.convention.as_str().to_string(),
        version: VERSION.to_string(),
    }
}

pub fn to_json(doc: &ReportDocument) -> String {
    serde_json::to_string_pretty(doc).expect("report serialization cannot fail")
}

pub fn from_json(text: &str) -> Result<ReportDocument> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid report JSON: {e}")))
}

/// Content digest of a report: everything except the input description and tool
/// version. Two pipelines computing the same invariants get the same digest.
pub fn digest(report: &InvariantReport) -> String {
    let faces: Vec<FaceDoc> = report.faces.iter().map(face_doc).collect();
    let v: Vec<String> = report.v.iter().map(|x| x.to_string()).collect();
    let delta: Vec<String> = report.delta.iter().map(|x| x.to_string()).collect();
    let payload = serde_json::to_string(&(
        &faces,
        &v,
        &delta,
        report.degree.to_string(),
        report.dual_degree.to_string(),
        report.ed_degree.to_string(),
        report.convention.as_str(),
    ))
    .expect("digest serialization cannot fail");
    hex::encode(Sha256::digest(payload.as_bytes()))
}

fn join_list(xs: &[String]) -> String {
    format!("({})", xs.join(", "))
}

/// Plain-text table in the style of the per-face invariant tables, followed
/// by the global invariants. When the Gale system is available, the rows of
/// `B` supported on each face are shown as well.
pub fn render_table(report: &InvariantReport, sys: Option<&GaleSystem>) -> String {
    let dash = "-".to_string();
    let mut header = vec![
        "face".to_string(),
        "dim".to_string(),
        "points".to_string(),
    ];
    if sys.is_some() {
        header.push("B_face".to_string());
    }
    header.extend(["Vol", "mu(P,f)", "i(P,f)", "Eu"].map(String::from));

    let mut rows: Vec<Vec<String>> = vec![header];
    for f in &report.faces {
        let mut row = vec![
            f.id.clone(),
            f.dim.to_string(),
            one_based(&f.points)
                .iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join(" "),
        ];
        if let Some(sys) = sys {
            let b_rows: Vec<String> = f
                .points
                .iter()
                .map(|&i| {
                    let (x, y) = sys.b_row(i);
                    format!("({x},{y})")
                })
                .collect();
            row.push(b_rows.join(" "));
        }
        row.push(f.vol.to_string());
        row.push(f.mu.as_ref().map_or(dash.clone(), |x| x.to_string()));
        row.push(f.index.as_ref().map_or(dash.clone(), |x| x.to_string()));
        row.push(f.eu.to_string());
        rows.push(row);
    }

    let ncols = rows[0].len();
    let widths: Vec<usize> = (0..ncols)
        .map(|c| rows.iter().map(|r| r[c].len()).max().unwrap())
        .collect();
    let mut out = String::new();
    for row in &rows {
        let line: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(c, cell)| format!("{:<width$}", cell, width = widths[c]))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }

    let v: Vec<String> = report.v.iter().map(|x| x.to_string()).collect();
    let delta: Vec<String> = report.delta.iter().map(|x| x.to_string()).collect();
    out.push('\n');
    out.push_str(&format!("V           = {}\n", join_list(&v)));
    out.push_str(&format!("delta       = {}\n", join_list(&delta)));
    out.push_str(&format!("degree      = {}\n", report.degree));
    out.push_str(&format!("dual degree = {}\n", report.dual_degree));
    out.push_str(&format!("ED degree   = {}\n", report.ed_degree));
    out.push_str(&format!("convention  = {}\n", report.convention.as_str()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characteristic::compute_report;
    use crate::fixtures::fixture_matrix;
    use crate::gale::gale_dual_from_a;
    use crate::oracle::full_pipeline_a;

    fn running() -> (GaleSystem, InvariantReport) {
        let a = fixture_matrix("running-example").unwrap();
        let sys = gale_dual_from_a(a).unwrap();
        let report = compute_report(&sys).unwrap();
        (sys, report)
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        let (sys, report) = running();
        let doc = document(&report, "A", sys.a());
        let text = to_json(&doc);
        let parsed = from_json(&text).unwrap();
        assert_eq!(doc, parsed);
        assert_eq!(text, to_json(&parsed));
    }

    #[test]
    fn table_and_json_contain_same_numbers() {
        let (sys, report) = running();
        let doc = document(&report, "A", sys.a());
        let table = render_table(&report, Some(&sys));
        assert!(table.contains("ED degree   = 50"));
        assert!(table.contains("(14, 24, 12)"));
        assert_eq!(doc.ed_degree, "50");
        for f in &doc.faces {
            assert!(table.contains(&f.id));
            assert!(table.contains(&f.vol));
        }
    }

    #[test]
    fn digests_agree_across_pipelines() {
        let a = fixture_matrix("running-example").unwrap();
        let from_a = full_pipeline_a(&a).unwrap();
        let (_, from_b) = running();
        assert_eq!(digest(&from_a), digest(&from_b));
    }

    #[test]
    fn mu_p_is_null_for_the_polytope() {
        let (sys, report) = running();
        let doc = document(&report, "A", sys.a());
        let p = doc.faces.iter().find(|f| f.id == "P").unwrap();
        assert_eq!(p.mu_p, None);
        assert_eq!(p.kind, "polytope");
        assert_eq!(p.points, vec![1, 2, 3, 4, 5]);
    }
}
