//! JSON output records. Big integers are serialized as decimal strings:
//! several table entries exceed 53-bit float precision and would be
//! corrupted by numeric JSON.

use serde::Serialize;

use klmat::kl::ConjectureReport;
use klmat::matroid::{braid_blocks_of_flat, Flat, MatroidSpec};
use klmat::{IntPoly, LaurentPoly};

#[derive(Serialize)]
pub struct OutputRecord {
    pub matroid: String,
    pub rank: usize,
    /// Kazhdan-Lusztig coefficients, constant term first, decimal strings.
    pub kl: Vec<String>,
    /// Characteristic polynomial coefficients, constant term first.
    pub char: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<ReportJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraJson>,
}

#[derive(Serialize)]
pub struct ReportJson {
    pub coefficients: Vec<String>,
    pub nonnegative: bool,
    pub log_concave: bool,
    pub no_internal_zeros: bool,
}

#[derive(Serialize)]
pub struct AlgebraJson {
    pub op: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expansion: Option<Vec<TermJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violations: Option<Vec<ViolationJson>>,
}

#[derive(Serialize)]
pub struct TermJson {
    pub flat: String,
    pub coeff: LaurentJson,
}

#[derive(Serialize)]
pub struct ViolationJson {
    pub f: String,
    pub g: String,
    pub h: String,
    pub coeff: LaurentJson,
}

#[derive(Serialize)]
pub struct LaurentJson {
    /// `(exponent, decimal coefficient)` pairs in ascending exponent order.
    pub terms: Vec<(i64, String)>,
    pub pretty: String,
}

pub fn poly_strings(p: &IntPoly) -> Vec<String> {
    p.coeffs().iter().map(|c| c.to_string()).collect()
}

pub fn laurent_json(p: &LaurentPoly) -> LaurentJson {
    LaurentJson {
        terms: p.terms().map(|(e, c)| (e, c.to_string())).collect(),
        pretty: p.to_string(),
    }
}

pub fn report_json(report: &ConjectureReport) -> ReportJson {
    ReportJson {
        coefficients: report.coefficients.iter().map(|c| c.to_string()).collect(),
        nonnegative: report.nonnegative,
        log_concave: report.log_concave,
        no_internal_zeros: report.no_internal_zeros,
    }
}

/// Human-readable flat name: a partition like `12|3|4` for braid matroids,
/// a comma-separated element list otherwise.
pub fn flat_name(spec: &MatroidSpec, flat: &Flat) -> String {
    if let MatroidSpec::Braid { n } = *spec {
        let blocks = braid_blocks_of_flat(n, flat);
        return blocks
            .iter()
            .map(|block| {
                block
                    .iter()
                    .map(|v| {
                        if n <= 9 {
                            (v + 1).to_string()
                        } else {
                            format!("{},", v + 1)
                        }
                    })
                    .collect::<String>()
                    .trim_end_matches(',')
                    .to_string()
            })
            .collect::<Vec<_>>()
            .join("|");
    }
    flat.elems()
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(",")
}
