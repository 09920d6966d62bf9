//! JSON and text renderings of index reports. Every number is an exact
//! integer; rationals and polynomials are strings.

use gsv_core::index::{ClassicalIndex, Deformation, Goodness, IndexReport, TransformKind};
use gsv_core::sigform::SignatureResult;
use gsv_core::RatMatrix;
use serde::Serialize;

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct SignatureDoc {
    pub plus: usize,
    pub minus: usize,
    pub rank: usize,
}

impl From<&SignatureResult> for SignatureDoc {
    fn from(s: &SignatureResult) -> Self {
        SignatureDoc { plus: s.plus, minus: s.minus, rank: s.rank }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct TransformDoc {
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub permutation: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub draw: Option<usize>,
    pub matrix: Vec<Vec<String>>,
    pub attempts: usize,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct MinorDoc {
    pub columns: Vec<usize>,
    pub value: String,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct WitnessDoc {
    pub denominator: String,
    pub coefficients: Vec<String>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct GoodnessDoc {
    pub status: &'static str,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub minors: Vec<MinorDoc>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<Vec<WitnessDoc>>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct DeformationDoc {
    pub variables: Vec<String>,
    pub components: Vec<String>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct ComputeDoc {
    pub problem_hash: String,
    pub field: &'static str,
    pub transform: TransformDoc,
    #[serde(rename = "dim_B0")]
    pub dim_b0: usize,
    #[serde(rename = "dim_B0_mod_DF")]
    pub dim_b0_mod_df: usize,
    #[serde(rename = "dim_C0")]
    pub dim_c0: usize,
    pub index: i64,
    pub signature: Option<SignatureDoc>,
    pub c1: String,
    pub goodness: Option<GoodnessDoc>,
    pub deformation: Option<DeformationDoc>,
    pub seed: Option<u64>,
    pub version: &'static str,
    pub timing_ms: u64,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct MapDoc {
    pub problem_hash: String,
    pub field: &'static str,
    #[serde(rename = "dim_Q")]
    pub dim_q: usize,
    pub index: i64,
    pub signature: Option<SignatureDoc>,
    pub seed: Option<u64>,
    pub version: &'static str,
    pub timing_ms: u64,
}

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

fn matrix_doc(a: &RatMatrix) -> Vec<Vec<String>> {
    a.to_rows().iter().map(|r| r.iter().map(|v| v.to_string()).collect()).collect()
}

fn transform_doc(r: &IndexReport) -> TransformDoc {
    let n = &r.normalization;
    let (kind, permutation, draw) = match &n.kind {
        TransformKind::Identity => ("identity", None, None),
        TransformKind::Permutation(p) => ("permutation", Some(p.clone()), None),
        TransformKind::Random { draw, .. } => ("random", None, Some(*draw)),
    };
    TransformDoc { kind, permutation, draw, matrix: matrix_doc(&n.transform), attempts: n.attempts_used }
}

fn goodness_doc(g: &Goodness, vars: &[String]) -> GoodnessDoc {
    match g {
        Goodness::Unknown => GoodnessDoc { status: "unknown", minors: Vec::new(), witnesses: Vec::new() },
        Goodness::Satisfied(w) => GoodnessDoc {
            status: "satisfied",
            minors: w.minors.iter().map(|m| MinorDoc { columns: m.columns.clone(), value: m.value.to_string_with(vars) }).collect(),
            witnesses: w
                .entries
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|wt| WitnessDoc {
                            denominator: wt.denominator.to_string_with(vars),
                            coefficients: wt.coefficients.iter().map(|c| c.to_string_with(vars)).collect(),
                        })
                        .collect()
                })
                .collect(),
        },
    }
}

/// Parameter names `t1, …, tq`, prefixed with underscores until they do not
/// clash with the ring variables.
pub fn parameter_names(vars: &[String], q: usize) -> Vec<String> {
    let mut prefix = String::from("t");
    loop {
        let names: Vec<String> = (1..=q).map(|i| format!("{prefix}{i}")).collect();
        if names.iter().all(|n| !vars.contains(n)) {
            return names;
        }
        prefix.insert(0, '_');
    }
}

fn deformation_doc(d: &Deformation, vars: &[String]) -> DeformationDoc {
    let mut variables = vars.to_vec();
    variables.extend(parameter_names(vars, d.parameters));
    let components = d.components.iter().map(|c| c.to_string_with(&variables)).collect();
    DeformationDoc { variables, components }
}

pub fn compute_doc(r: &IndexReport, vars: &[String], problem_hash: String, seed: Option<u64>, timing_ms: u64) -> ComputeDoc {
    ComputeDoc {
        problem_hash,
        field: r.field.as_str(),
        transform: transform_doc(r),
        dim_b0: r.dim_b0,
        dim_b0_mod_df: r.dim_b0_mod_df,
        dim_c0: r.dim_c0,
        index: r.index,
        signature: r.signature.as_ref().map(SignatureDoc::from),
        c1: r.c1.to_string_with(vars),
        goodness: r.goodness.as_ref().map(|g| goodness_doc(g, vars)),
        deformation: r.deformation.as_ref().map(|d| deformation_doc(d, vars)),
        seed,
        version: VERSION,
        timing_ms,
    }
}

/// Human-readable lines for a compute report.
pub fn compute_text(doc: &ComputeDoc) -> String {
    let mut out = String::new();
    out += &format!("field:          {}\n", doc.field);
    let t = &doc.transform;
    let how = match (&t.permutation, t.draw) {
        (Some(p), _) => format!("permutation {p:?}"),
        (_, Some(d)) => format!("random draw {d}"),
        _ => "identity".to_string(),
    };
    out += &format!("coordinates:    {how} after {} attempt(s)\n", t.attempts);
    out += &format!("dim B0:         {}\n", doc.dim_b0);
    out += &format!("dim B0/(DF):    {}\n", doc.dim_b0_mod_df);
    out += &format!("dim C0:         {}\n", doc.dim_c0);
    out += &format!("c1:             {}\n", doc.c1);
    if let Some(s) = &doc.signature {
        out += &format!("signature:      {} (p+ = {}, p- = {}, rank {})\n", s.plus as i64 - s.minus as i64, s.plus, s.minus, s.rank);
    }
    out += &format!("index:          {}\n", doc.index);
    if let Some(g) = &doc.goodness {
        out += &format!("goodness:       {}\n", g.status);
    }
    if let Some(d) = &doc.deformation {
        out += &format!("deformation:    ({})\n", d.components.join(", "));
    }
    out
}

pub fn map_doc(c: Option<&ClassicalIndex>, dim_q: usize, index: i64, field: &'static str, problem_hash: String, seed: Option<u64>, timing_ms: u64) -> MapDoc {
    MapDoc { problem_hash, field, dim_q, index, signature: c.map(|c| SignatureDoc::from(&c.signature)), seed, version: VERSION, timing_ms }
}

pub fn map_text(doc: &MapDoc) -> String {
    let mut out = format!("mode:           {}\ndim Q:          {}\n", doc.field, doc.dim_q);
    if let Some(s) = &doc.signature {
        out += &format!("signature:      p+ = {}, p- = {}, rank {}\n", s.plus, s.minus, s.rank);
    }
    out += &format!("index:          {}\n", doc.index);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameter_names_avoid_clashes() {
        let vars: Vec<String> = ["x", "t1"].iter().map(|s| s.to_string()).collect();
        assert_eq!(parameter_names(&vars, 2), vec!["_t1", "_t2"]);
        assert_eq!(parameter_names(&vars[..1], 1), vec!["t1"]);
    }
}
