//! The per-spec consistency suite behind `sectour verify` and the row
//! production for `sectour batch`.
//!
//! One run cross-checks every layer of the library on a single spec:
//! the closed-form cell-structure recursion against the pivot engine,
//! the dimension and depth formulas against enumeration, face-count
//! conservation of the matching, critical cells against independently
//! computed Betti numbers, normalization against homology, and the
//! chromatic bound against the exact chromatic number.

use serde::Serialize;
use sectour_core::{
    acyclic_complex_with_limit, betti_numbers, canonical_pivots, constructive_coloring,
    cs_recursive, depth_formula, dim_formula, morse_consistency, normalize, realize, root_arity,
    run_pivots, validate_coloring, verify_bound_with_limit, Dimension, Error, Result,
    SectionableSpec,
};

/// One named check with its outcome and a human-readable detail line.
#[derive(Clone, Debug, Serialize)]
pub struct CheckRow {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

/// Outcome of the full consistency suite on one spec.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    /// Canonical text of the verified spec.
    pub spec: String,
    /// Vertices of the realization.
    pub n: usize,
    /// Root arity parameter used by the chromatic bound.
    pub r: usize,
    /// Closed-form dimension of the acyclic complex.
    pub dim: i64,
    /// Closed-form depth (top critical dimension).
    pub depth: i64,
    /// Exact chromatic number, when the realization fits the search cap.
    pub chi: Option<usize>,
    /// Chromatic upper bound, when `chi` was computed.
    pub bound: Option<f64>,
    /// `bound − chi`, when `chi` was computed.
    pub slack: Option<f64>,
    /// Individual checks, in a fixed order.
    pub checks: Vec<CheckRow>,
    /// Conjunction of all check outcomes.
    pub pass: bool,
}

fn histogram_text<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).unwrap_or_else(|_| "<unprintable>".to_string())
}

/// Reduced Betti vectors compare up to trailing zeros: enumerations of
/// different top dimension pad with zero ranks.
fn trimmed(betti: &[i64]) -> &[i64] {
    let end = betti.iter().rposition(|&b| b != 0).map_or(0, |i| i + 1);
    &betti[..end]
}

/// Runs every consistency check on `spec`.
///
/// `enum_limit` caps the order of tournaments whose complexes are
/// enumerated; `chi_limit` caps the chromatic-number search (larger
/// realizations skip the bound check rather than fail). Errors are
/// reserved for inputs that cannot be processed at all — a check that
/// ran and disagreed is reported as a failing row instead.
pub fn verify_spec(
    spec: &SectionableSpec,
    enum_limit: usize,
    chi_limit: usize,
) -> Result<VerifyReport> {
    spec.validate()?;
    let dim = dim_formula(spec);
    let depth = depth_formula(spec);
    let tournament = realize(spec)?;
    let n = tournament.order();
    let family = acyclic_complex_with_limit(&tournament, enum_limit)?;
    let pivots = canonical_pivots(spec)?;
    let (matching, critical) = run_pivots(&tournament, &family, &pivots)?;
    let mut checks = Vec::new();

    let recursion = cs_recursive(spec);
    checks.push(CheckRow {
        name: "cell-structure recursion",
        pass: recursion == critical.histogram,
        detail: format!(
            "recursion {}, engine {}",
            histogram_text(&recursion),
            histogram_text(&critical.histogram)
        ),
    });

    let matched = 2 * matching.pairs().len();
    checks.push(CheckRow {
        name: "matching conservation",
        pass: matched + critical.cells.len() == family.len(),
        detail: format!(
            "{} faces = {} matched + {} critical",
            family.len(),
            matched,
            critical.cells.len()
        ),
    });

    let enumerated_dim = family.dimension();
    checks.push(CheckRow {
        name: "dimension formula",
        pass: enumerated_dim == Dimension::Dim(dim),
        detail: format!("closed form {dim}, enumerated {enumerated_dim}"),
    });

    let engine_depth = match critical.histogram.top_dimension() {
        Dimension::Dim(d) => d,
        Dimension::Empty => 0,
    };
    checks.push(CheckRow {
        name: "depth formula",
        pass: depth == engine_depth,
        detail: format!("closed form {depth}, engine {engine_depth}"),
    });

    let summary = betti_numbers(&family)?;
    let homology = morse_consistency(&critical, &summary)?;
    checks.push(CheckRow {
        name: "homology consistency",
        pass: homology.consistent,
        detail: format!(
            "betti {:?}, critical {:?}, exact {:?}",
            summary.betti, homology.cell_counts, homology.exact_match
        ),
    });

    let normal = normalize(spec);
    if normal == *spec {
        checks.push(CheckRow {
            name: "normalization",
            pass: true,
            detail: "spec is already normal".to_string(),
        });
    } else {
        let normal_family = acyclic_complex_with_limit(&realize(&normal)?, enum_limit)?;
        let normal_summary = betti_numbers(&normal_family)?;
        checks.push(CheckRow {
            name: "normalization",
            pass: trimmed(&normal_summary.betti) == trimmed(&summary.betti),
            detail: format!(
                "{} has betti {:?}, original {:?}",
                normal.canonical_text(),
                normal_summary.betti,
                summary.betti
            ),
        });
    }

    let (chi, bound, slack) = if n <= chi_limit {
        let report = verify_bound_with_limit(spec, chi_limit)?;
        checks.push(CheckRow {
            name: "chromatic bound",
            pass: report.pass,
            detail: format!(
                "chi {} against bound {:.6} (r = {}, dim = {})",
                report.chi, report.bound, report.r, report.dim
            ),
        });
        (Some(report.chi), Some(report.bound), Some(report.slack))
    } else {
        checks.push(CheckRow {
            name: "chromatic bound",
            pass: true,
            detail: format!(
                "skipped: {n} vertices exceed the search cap {chi_limit} (raise with --max-n)"
            ),
        });
        (None, None, None)
    };

    let coloring = constructive_coloring(spec)?;
    let valid = validate_coloring(&tournament, &coloring)?;
    checks.push(CheckRow {
        name: "constructive coloring",
        pass: valid,
        detail: format!("{} colors, classes acyclic: {valid}", coloring.color_count()),
    });

    let pass = checks.iter().all(|c| c.pass);
    Ok(VerifyReport {
        spec: spec.canonical_text(),
        n,
        r: root_arity(spec),
        dim,
        depth,
        chi,
        bound,
        slack,
        checks,
        pass,
    })
}

/// One line of `sectour batch` output. Every key is always present so
/// rows are schema-stable; fields that could not be computed are null.
#[derive(Clone, Debug, Serialize)]
pub struct BatchRow {
    pub spec: String,
    pub n: Option<usize>,
    pub r: Option<usize>,
    pub dim: Option<i64>,
    pub depth: Option<i64>,
    pub chi: Option<usize>,
    pub bound: Option<f64>,
    pub pass: bool,
    pub error: Option<String>,
}

impl BatchRow {
    pub fn from_report(report: &VerifyReport) -> Self {
        BatchRow {
            spec: report.spec.clone(),
            n: Some(report.n),
            r: Some(report.r),
            dim: Some(report.dim),
            depth: Some(report.depth),
            chi: report.chi,
            bound: report.bound,
            pass: report.pass,
            error: None,
        }
    }

    pub fn from_error(spec_text: &str, err: &Error) -> Self {
        BatchRow {
            spec: spec_text.to_string(),
            n: None,
            r: None,
            dim: None,
            depth: None,
            chi: None,
            bound: None,
            pass: false,
            error: Some(err.to_string()),
        }
    }

    /// Tab-separated rendering with `-` for absent fields, in the same
    /// column order as the JSON keys.
    pub fn tsv(&self) -> String {
        fn cell<T: std::fmt::Display>(v: &Option<T>) -> String {
            v.as_ref().map_or_else(|| "-".to_string(), |v| v.to_string())
        }
        [
            self.spec.clone(),
            cell(&self.n),
            cell(&self.r),
            cell(&self.dim),
            cell(&self.depth),
            cell(&self.chi),
            cell(&self.bound),
            self.pass.to_string(),
            cell(&self.error),
        ]
        .join("\t")
    }
}
