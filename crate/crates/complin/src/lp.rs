//! CPLEX LP file rendering. Output is deterministic: identical documents
//! produce byte-identical text.

use crate::instance::Sense;

#[derive(Clone, Debug, PartialEq)]
pub struct LpRow {
    pub name: String,
    pub terms: Vec<(String, f64)>,
    pub sense: Sense,
    pub rhs: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpBound {
    pub var: String,
    pub lo: f64,
    pub hi: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpDocument {
    pub comments: Vec<String>,
    /// Minimization terms; an empty list renders the conventional zero row
    /// on `placeholder_var`.
    pub objective: Vec<(String, f64)>,
    pub placeholder_var: String,
    pub rows: Vec<LpRow>,
    pub bounds: Vec<LpBound>,
    pub binaries: Vec<String>,
}

pub fn write_lp(doc: &LpDocument) -> String {
    let mut out = String::new();
    for comment in &doc.comments {
        out.push_str("\\ ");
        out.push_str(comment);
        out.push('\n');
    }
    out.push_str("Minimize\n obj: ");
    if doc.objective.is_empty() {
        out.push_str("0 ");
        out.push_str(&doc.placeholder_var);
    } else {
        push_terms(&mut out, &doc.objective);
    }
    out.push_str("\nSubject To\n");
    for row in &doc.rows {
        out.push(' ');
        out.push_str(&row.name);
        out.push_str(": ");
        push_terms(&mut out, &row.terms);
        out.push(' ');
        out.push_str(&row.sense.to_string());
        out.push(' ');
        out.push_str(&fmt_num(row.rhs));
        out.push('\n');
    }
    if !doc.bounds.is_empty() {
        out.push_str("Bounds\n");
        for b in &doc.bounds {
            out.push_str(&format!(" {} <= {} <= {}\n", fmt_num(b.lo), b.var, fmt_num(b.hi)));
        }
    }
    if !doc.binaries.is_empty() {
        out.push_str("Binary\n");
        for v in &doc.binaries {
            out.push(' ');
            out.push_str(v);
            out.push('\n');
        }
    }
    out.push_str("End\n");
    out
}

fn push_terms(out: &mut String, terms: &[(String, f64)]) {
    for (idx, (var, coeff)) in terms.iter().enumerate() {
        if idx == 0 {
            if *coeff < 0.0 {
                out.push_str("- ");
            }
        } else if *coeff < 0.0 {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let mag = coeff.abs();
        if mag != 1.0 {
            out.push_str(&fmt_num(mag));
            out.push(' ');
        }
        out.push_str(var);
    }
}

/// Minimal decimal form: integral values drop the point entirely.
fn fmt_num(v: f64) -> String {
    format!("{v}")
}
