//! Model emission: the compact equation system, the standard three-row
//! linearization, and size comparisons between the two.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::{BqpInstance, Pair, Sense};
use crate::linearize::{check_conditions, LinearizationPlan};
use crate::lp::{LpBound, LpDocument, LpRow};

#[derive(Clone, Debug, PartialEq)]
pub enum RowKind {
    /// Σ_{i ∈ A_k} x_i = 1.
    Assignment { set: usize },
    /// Σ_{i ∈ A_k} y_φ(i,j) = x_j for j ∈ B_k.
    Compact { set: usize, rhs_var: usize },
    /// y_ij ≤ x_i.
    StdUpperI { pair: Pair },
    /// y_ij ≤ x_j.
    StdUpperJ { pair: Pair },
    /// y_ij ≥ x_i + x_j - 1.
    StdLower { pair: Pair },
    /// Instance constraint re-emitted with products substituted by y.
    PassThrough { index: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModelRow {
    pub kind: RowKind,
    pub x_terms: Vec<(usize, f64)>,
    pub y_terms: Vec<(Pair, f64)>,
    pub sense: Sense,
    pub rhs: f64,
}

/// A fully linearized model over binary x and continuous y ∈ [0,1].
#[derive(Clone, Debug, PartialEq)]
pub struct LinearizedModel {
    pub n: usize,
    pub y_vars: Vec<Pair>,
    pub rows: Vec<ModelRow>,
    pub objective_x: BTreeMap<usize, f64>,
    pub objective_y: BTreeMap<Pair, f64>,
    /// Set when the model was emitted despite failing the covering
    /// conditions; carried into the LP file as a warning comment.
    pub watermark: bool,
}

impl LinearizedModel {
    /// Rows that encode products, excluding assignment and pass-through rows.
    pub fn linearization_row_count(&self) -> usize {
        self.rows
            .iter()
            .filter(|r| {
                !matches!(
                    r.kind,
                    RowKind::Assignment { .. } | RowKind::PassThrough { .. }
                )
            })
            .count()
    }

    pub fn to_lp(&self) -> LpDocument {
        let objective: Vec<(String, f64)> = self
            .objective_x
            .iter()
            .map(|(&i, &c)| (x_name(i), c))
            .chain(self.objective_y.iter().map(|(&p, &c)| (y_name(p), c)))
            .filter(|(_, c)| *c != 0.0)
            .collect();
        let rows = self
            .rows
            .iter()
            .map(|row| LpRow {
                name: row_name(&row.kind),
                terms: row
                    .y_terms
                    .iter()
                    .map(|(p, c)| (y_name(*p), *c))
                    .chain(row.x_terms.iter().map(|(i, c)| (x_name(*i), *c)))
                    .collect(),
                sense: row.sense,
                rhs: row.rhs,
            })
            .collect();
        LpDocument {
            comments: if self.watermark {
                vec![
                    "WARNING: plan violates the covering conditions; y values may deviate from the products"
                        .to_string(),
                ]
            } else {
                vec![]
            },
            objective,
            placeholder_var: x_name(1),
            rows,
            bounds: self
                .y_vars
                .iter()
                .map(|&p| LpBound {
                    var: y_name(p),
                    lo: 0.0,
                    hi: 1.0,
                })
                .collect(),
            binaries: (1..=self.n).map(x_name).collect(),
        }
    }

    pub fn to_lp_string(&self) -> String {
        crate::lp::write_lp(&self.to_lp())
    }
}

fn x_name(i: usize) -> String {
    format!("x{i}")
}

fn y_name(p: Pair) -> String {
    format!("y{}_{}", p.i(), p.j())
}

fn row_name(kind: &RowKind) -> String {
    match kind {
        RowKind::Assignment { set } => format!("a{set}"),
        RowKind::Compact { set, rhs_var } => format!("e{set}_{rhs_var}"),
        RowKind::StdUpperI { pair } => format!("s{}_{}a", pair.i(), pair.j()),
        RowKind::StdUpperJ { pair } => format!("s{}_{}b", pair.i(), pair.j()),
        RowKind::StdLower { pair } => format!("s{}_{}c", pair.i(), pair.j()),
        RowKind::PassThrough { index } => format!("c{}", index + 1),
    }
}

fn assignment_rows(inst: &BqpInstance) -> Vec<ModelRow> {
    inst.assignment_sets()
        .iter()
        .map(|(&k, a_k)| ModelRow {
            kind: RowKind::Assignment { set: k },
            x_terms: a_k.iter().map(|&i| (i, 1.0)).collect(),
            y_terms: vec![],
            sense: Sense::Eq,
            rhs: 1.0,
        })
        .collect()
}

fn pass_through_rows(inst: &BqpInstance) -> Vec<ModelRow> {
    inst.extra_constraints()
        .iter()
        .enumerate()
        .map(|(index, c)| ModelRow {
            kind: RowKind::PassThrough { index },
            x_terms: c.linear.iter().map(|(&i, &v)| (i, v)).collect(),
            y_terms: c.quadratic.iter().map(|(&p, &v)| (p, v)).collect(),
            sense: c.sense,
            rhs: c.rhs,
        })
        .collect()
}

/// Emits the equation model of a plan: one equality per (k, j ∈ B_k).
/// Plans failing the covering conditions are rejected unless `allow_unsafe`
/// is set, in which case the model is watermarked.
pub fn emit_compact(
    inst: &BqpInstance,
    plan: &LinearizationPlan,
    allow_unsafe: bool,
) -> Result<LinearizedModel> {
    let report = check_conditions(inst, plan);
    if !report.ok && !allow_unsafe {
        return Err(Error::InvalidPlan(
            "plan fails the covering conditions; refusing to emit an inconsistent model".into(),
        ));
    }
    let mut rows = assignment_rows(inst);
    for (&k, b_k) in plan.b_sets() {
        let Some(a_k) = inst.set(k) else { continue };
        for &j in b_k {
            let y_terms: Vec<(Pair, f64)> = a_k
                .iter()
                .map(|&i| Pair::new(i, j))
                .filter(|p| plan.contains_f(*p))
                .map(|p| (p, 1.0))
                .collect();
            rows.push(ModelRow {
                kind: RowKind::Compact { set: k, rhs_var: j },
                x_terms: vec![(j, -1.0)],
                y_terms,
                sense: Sense::Eq,
                rhs: 0.0,
            });
        }
    }
    rows.extend(pass_through_rows(inst));

    let mut y_vars: BTreeSet<Pair> = plan.f_sorted().into_iter().collect();
    y_vars.extend(inst.products().iter().copied());
    Ok(LinearizedModel {
        n: inst.n(),
        y_vars: y_vars.into_iter().collect(),
        rows,
        objective_x: inst.linear_objective().clone(),
        objective_y: inst.quadratic_objective().clone(),
        watermark: !report.ok,
    })
}

/// Emits the three-inequality model over E only.
pub fn emit_standard(inst: &BqpInstance) -> LinearizedModel {
    let pairs: BTreeSet<Pair> = inst.products().iter().copied().collect();
    let mut rows = assignment_rows(inst);
    for &p in &pairs {
        let (i, j) = (p.i(), p.j());
        rows.push(ModelRow {
            kind: RowKind::StdUpperI { pair: p },
            x_terms: vec![(i, -1.0)],
            y_terms: vec![(p, 1.0)],
            sense: Sense::Le,
            rhs: 0.0,
        });
        rows.push(ModelRow {
            kind: RowKind::StdUpperJ { pair: p },
            x_terms: vec![(j, -1.0)],
            y_terms: vec![(p, 1.0)],
            sense: Sense::Le,
            rhs: 0.0,
        });
        let lower_x = if i == j {
            vec![(i, -2.0)]
        } else {
            vec![(i, -1.0), (j, -1.0)]
        };
        rows.push(ModelRow {
            kind: RowKind::StdLower { pair: p },
            x_terms: lower_x,
            y_terms: vec![(p, 1.0)],
            sense: Sense::Ge,
            rhs: -1.0,
        });
    }
    rows.extend(pass_through_rows(inst));
    LinearizedModel {
        n: inst.n(),
        y_vars: pairs.into_iter().collect(),
        rows,
        objective_x: inst.linear_objective().clone(),
        objective_y: inst.quadratic_objective().clone(),
        watermark: false,
    }
}

/// Row and variable counts of the two linearizations side by side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SizeReport {
    pub n: usize,
    pub num_sets: usize,
    pub num_products: usize,
    pub num_f_pairs: usize,
    pub sum_b: usize,
    pub standard_rows: usize,
    pub compact_rows: usize,
    pub standard_vars: usize,
    pub compact_vars: usize,
}

pub fn size_report(inst: &BqpInstance, plan: &LinearizationPlan) -> SizeReport {
    SizeReport {
        n: inst.n(),
        num_sets: inst.assignment_sets().len(),
        num_products: inst.products().len(),
        num_f_pairs: plan.f_len(),
        sum_b: plan.sum_b(),
        standard_rows: 3 * inst.products().len(),
        compact_rows: plan.sum_b(),
        standard_vars: inst.products().len(),
        compact_vars: plan.f_len(),
    }
}

impl SizeReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let line = |out: &mut String, label: &str, value: usize| {
            out.push_str(&format!("{label:<22}{value:>8}\n"));
        };
        line(&mut out, "n", self.n);
        line(&mut out, "assignment sets", self.num_sets);
        line(&mut out, "products |E|", self.num_products);
        line(&mut out, "pairs |F|", self.num_f_pairs);
        line(&mut out, "sum |B_k|", self.sum_b);
        out.push_str(&format!("{:<22}{:>8}{:>8}\n", "", "rows", "vars"));
        out.push_str(&format!(
            "{:<22}{:>8}{:>8}\n",
            "standard", self.standard_rows, self.standard_vars
        ));
        out.push_str(&format!(
            "{:<22}{:>8}{:>8}\n",
            "compact", self.compact_rows, self.compact_vars
        ));
        out
    }
}
