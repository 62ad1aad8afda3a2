//! Semantic verification of linearization plans by exhaustive enumeration.
//!
//! For every x satisfying the assignment rows, the compact equations must
//! admit exactly one binary y, namely y_ij = x_i * x_j. The brute force
//! below enumerates all satisfying y per x and is the independent oracle
//! against which the cheaper propagation procedure is cross-checked.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::json;

use crate::instance::{BqpInstance, Pair};
use crate::linearize::{LinearizationPlan, PairOrigin};

pub const DEFAULT_CAP_X: usize = 4096;
pub const DEFAULT_CAP_Y: u64 = 1 << 20;

/// All x ∈ {0,1}^n with exactly one 1 per assignment set, in the order
/// induced by choosing each set's representative ascending, sets ascending.
/// `complete` is false iff the cap cut the enumeration short.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibleX {
    pub vectors: Vec<Vec<u8>>,
    pub complete: bool,
}

pub fn enumerate_feasible_x(inst: &BqpInstance, cap: usize) -> FeasibleX {
    let set_ids: Vec<usize> = inst.set_ids().collect();
    let mut state: Vec<Option<bool>> = vec![None; inst.n() + 1];
    let mut out = FeasibleX {
        vectors: Vec::new(),
        complete: true,
    };
    descend(inst, &set_ids, 0, &mut state, cap, &mut out);
    out
}

fn push_vector(inst: &BqpInstance, state: &[Option<bool>], cap: usize, out: &mut FeasibleX) {
    if out.vectors.len() >= cap {
        out.complete = false;
        return;
    }
    out.vectors.push(
        (1..=inst.n())
            .map(|i| state[i].unwrap_or(false) as u8)
            .collect(),
    );
}

fn descend(
    inst: &BqpInstance,
    set_ids: &[usize],
    depth: usize,
    state: &mut Vec<Option<bool>>,
    cap: usize,
    out: &mut FeasibleX,
) {
    if !out.complete {
        return;
    }
    let Some(&k) = set_ids.get(depth) else {
        // Variables outside every set are unconstrained: branch them last,
        // zero first.
        let free: Vec<usize> = (1..=inst.n()).filter(|&i| state[i].is_none()).collect();
        if free.is_empty() {
            push_vector(inst, state, cap, out);
            return;
        }
        for mask in 0..(1u64 << free.len().min(63)) {
            for (bit, &i) in free.iter().enumerate() {
                state[i] = Some(mask >> bit & 1 == 1);
            }
            push_vector(inst, state, cap, out);
            if !out.complete {
                break;
            }
        }
        for &i in &free {
            state[i] = None;
        }
        return;
    };
    let members: Vec<usize> = inst.set(k).expect("set id from instance").iter().copied().collect();
    for &one in &members {
        if state[one] == Some(false) {
            continue;
        }
        if members.iter().any(|&u| u != one && state[u] == Some(true)) {
            continue;
        }
        let saved: Vec<Option<bool>> = members.iter().map(|&u| state[u]).collect();
        state[one] = Some(true);
        for &u in &members {
            if u != one {
                state[u] = Some(false);
            }
        }
        descend(inst, set_ids, depth + 1, state, cap, out);
        for (&u, &s) in members.iter().zip(&saved) {
            state[u] = s;
        }
        if !out.complete {
            return;
        }
    }
}

/// Which of the three standard-linearization bounds a witness violates.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum BoundKind {
    /// y_ij = 1 while x_i = 0.
    UpperI,
    /// y_ij = 1 while x_j = 0.
    UpperJ,
    /// y_ij = 0 while x_i = x_j = 1.
    Lower,
}

impl std::fmt::Display for BoundKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            BoundKind::UpperI => "y <= x_i",
            BoundKind::UpperJ => "y <= x_j",
            BoundKind::Lower => "y >= x_i + x_j - 1",
        })
    }
}

/// A feasible x together with a binary y that satisfies every compact
/// equation of the plan yet differs from the products.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub x: Vec<u8>,
    pub y: BTreeMap<Pair, u8>,
    pub violated_pair: Pair,
    pub violated_bound: BoundKind,
}

impl Witness {
    pub fn to_json_value(&self) -> serde_json::Value {
        let y: BTreeMap<String, u8> = self
            .y
            .iter()
            .map(|(p, &v)| (format!("{},{}", p.i(), p.j()), v))
            .collect();
        json!({
            "x": self.x,
            "y": y,
            "pair": [self.violated_pair.i(), self.violated_pair.j()],
            "bound": self.violated_bound.to_string(),
        })
    }
}

#[derive(Clone, Debug)]
pub struct ConsistencyReport {
    pub consistent: bool,
    pub x_assignments_checked: usize,
    pub witness: Option<Witness>,
    /// False iff a cap cut enumeration short; a consistent=true verdict is a
    /// proof only when this is true.
    pub exhaustive: bool,
    /// Set when the product vector itself fails the plan's equations for
    /// some feasible x (only possible for hand-made plans whose F is not the
    /// image of the B sets).
    pub products_infeasible_x: Option<Vec<u8>>,
}

/// One compact equation: sum of the y-variables on the left, x_j on the right.
#[derive(Clone, Debug)]
pub struct CompactEquation {
    pub set: usize,
    pub rhs_var: usize,
    pub lhs: Vec<Pair>,
}

/// The equations of the plan: one per (k, j) with j ∈ B_k, summing
/// y_φ(i,j) over i ∈ A_k. Pairs missing from F are dropped from the sum,
/// which only happens for plans that violate the image identity.
pub fn compact_equations(inst: &BqpInstance, plan: &LinearizationPlan) -> Vec<CompactEquation> {
    let mut eqs = Vec::new();
    for (&k, b_k) in plan.b_sets() {
        let Some(a_k) = inst.set(k) else { continue };
        for &j in b_k {
            let lhs: Vec<Pair> = a_k
                .iter()
                .map(|&i| Pair::new(i, j))
                .filter(|p| plan.contains_f(*p))
                .collect();
            eqs.push(CompactEquation {
                set: k,
                rhs_var: j,
                lhs,
            });
        }
    }
    eqs
}

pub fn check_consistency(inst: &BqpInstance, plan: &LinearizationPlan) -> ConsistencyReport {
    check_consistency_with_caps(inst, plan, DEFAULT_CAP_X, DEFAULT_CAP_Y)
}

pub fn check_consistency_with_caps(
    inst: &BqpInstance,
    plan: &LinearizationPlan,
    cap_x: usize,
    cap_y: u64,
) -> ConsistencyReport {
    let feasible = enumerate_feasible_x(inst, cap_x);
    let mut xs = feasible.vectors;
    xs.sort();
    let eqs = compact_equations(inst, plan);
    let pairs = plan.f_sorted();

    let mut report = ConsistencyReport {
        consistent: true,
        x_assignments_checked: 0,
        witness: None,
        exhaustive: feasible.complete,
        products_infeasible_x: None,
    };

    for x in xs {
        let products: BTreeMap<Pair, u8> = pairs
            .iter()
            .map(|&p| (p, x[p.i() - 1] & x[p.j() - 1]))
            .collect();
        if !satisfies(&eqs, &products, &x) {
            report.consistent = false;
            report.products_infeasible_x = Some(x);
            return report;
        }

        // Any equation with right-hand side 0 forces its whole sum to 0;
        // this reduction is exact, so enumerating the remaining cube still
        // visits every solution.
        let mut zeroed: BTreeSet<Pair> = BTreeSet::new();
        for eq in &eqs {
            if x[eq.rhs_var - 1] == 0 {
                zeroed.extend(eq.lhs.iter().copied());
            }
        }
        let free: Vec<Pair> = pairs.iter().copied().filter(|p| !zeroed.contains(p)).collect();
        if free.len() >= 63 || (1u64 << free.len()) > cap_y {
            report.exhaustive = false;
            continue;
        }

        for mask in 0..(1u64 << free.len()) {
            let mut y: BTreeMap<Pair, u8> =
                pairs.iter().map(|&p| (p, 0)).collect();
            for (bit, &p) in free.iter().enumerate() {
                y.insert(p, (mask >> bit & 1) as u8);
            }
            if !satisfies(&eqs, &y, &x) {
                continue;
            }
            if y != products {
                let pair = *y
                    .iter()
                    .find(|(p, &v)| v != products[p])
                    .map(|(p, _)| p)
                    .expect("differing maps share a differing key");
                let bound = if y[&pair] == 1 {
                    if x[pair.i() - 1] == 0 {
                        BoundKind::UpperI
                    } else {
                        BoundKind::UpperJ
                    }
                } else {
                    BoundKind::Lower
                };
                report.consistent = false;
                report.witness = Some(Witness {
                    x,
                    y,
                    violated_pair: pair,
                    violated_bound: bound,
                });
                return report;
            }
        }
        report.x_assignments_checked += 1;
    }
    report
}

fn satisfies(eqs: &[CompactEquation], y: &BTreeMap<Pair, u8>, x: &[u8]) -> bool {
    eqs.iter().all(|eq| {
        let sum: u32 = eq.lhs.iter().map(|p| y[p] as u32).sum();
        sum == x[eq.rhs_var - 1] as u32
    })
}

/// Outcome of unit propagation on the compact equations for a fixed x.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Propagation {
    /// Every y-variable got a forced value.
    Forced(BTreeMap<Pair, u8>),
    /// No conflict, but some variables stayed undetermined: the plan's
    /// equations do not pin y down for this x.
    Stalled {
        fixed: BTreeMap<Pair, u8>,
        unfixed: Vec<Pair>,
    },
    /// A variable was forced to both values; impossible for plans that pass
    /// the covering conditions.
    Conflict { pair: Pair },
}

pub fn propagate_y(inst: &BqpInstance, plan: &LinearizationPlan, x: &[u8]) -> Propagation {
    let eqs = compact_equations(inst, plan);
    let mut value: BTreeMap<Pair, Option<u8>> =
        plan.f_sorted().into_iter().map(|p| (p, None)).collect();
    let mut changed = true;
    while changed {
        changed = false;
        for eq in &eqs {
            let rhs = x[eq.rhs_var - 1];
            if rhs == 0 {
                for p in &eq.lhs {
                    match value[p] {
                        Some(1) => return Propagation::Conflict { pair: *p },
                        Some(0) => {}
                        _ => {
                            value.insert(*p, Some(0));
                            changed = true;
                        }
                    }
                }
            } else {
                let undetermined: Vec<Pair> = eq
                    .lhs
                    .iter()
                    .copied()
                    .filter(|p| value[p].is_none())
                    .collect();
                let ones = eq.lhs.iter().filter(|p| value[p] == Some(1)).count();
                if ones > 1 {
                    return Propagation::Conflict { pair: eq.lhs[0] };
                }
                if ones == 1 {
                    for p in &undetermined {
                        value.insert(*p, Some(0));
                        changed = true;
                    }
                } else if undetermined.len() == 1 {
                    value.insert(undetermined[0], Some(1));
                    changed = true;
                } else if undetermined.is_empty() {
                    // Sum is 0 but the right-hand side demands 1.
                    let Some(first) = eq.lhs.first() else {
                        return Propagation::Conflict {
                            pair: Pair::new(eq.rhs_var, eq.rhs_var),
                        };
                    };
                    return Propagation::Conflict { pair: *first };
                }
            }
        }
    }
    let fixed: BTreeMap<Pair, u8> = value
        .iter()
        .filter_map(|(p, v)| v.map(|v| (*p, v)))
        .collect();
    let unfixed: Vec<Pair> = value
        .iter()
        .filter(|(_, v)| v.is_none())
        .map(|(p, _)| *p)
        .collect();
    if unfixed.is_empty() {
        Propagation::Forced(fixed)
    } else {
        Propagation::Stalled { fixed, unfixed }
    }
}

/// The original 2007 recipe: every B_k starts as a copy of A_k, each product
/// pair (i,j) not yet covered adds j to the smallest B_k whose A_k contains
/// i, and F is the image of all A_k x B_k products. No closure follows, so
/// the second covering condition can end up unmet.
pub fn liberti_plan(inst: &BqpInstance) -> LinearizationPlan {
    let mut b_sets: BTreeMap<usize, BTreeSet<usize>> = inst
        .assignment_sets()
        .iter()
        .map(|(&k, a_k)| (k, a_k.clone()))
        .collect();
    for pair in inst.products() {
        let (i, j) = (pair.i(), pair.j());
        let covered = inst
            .set_ids()
            .any(|k| inst.in_set(i, k) && b_sets[&k].contains(&j));
        if !covered {
            if let Some(k) = inst.set_ids().find(|&k| inst.in_set(i, k)) {
                b_sets.get_mut(&k).expect("set id exists").insert(j);
            }
        }
    }
    LinearizationPlan::from_sets(inst, b_sets)
}

/// True iff the pair entered F as a member of E.
pub fn is_product_pair(plan: &LinearizationPlan, pair: Pair) -> bool {
    matches!(plan.provenance().get(&pair), Some(PairOrigin::Product))
}
