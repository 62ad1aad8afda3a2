//! Construction of the multiplier sets B_k and the induced product set F,
//! together with the two covering conditions every emitted pair must satisfy.
//!
//! The closure is exact for pairwise disjoint assignment sets (each variable
//! has a unique containing set, so every extension is forced) and heuristic
//! otherwise, where a cheapest-extension rule picks the set to extend.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{BqpInstance, Pair};

/// How a pair first entered F.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum PairOrigin {
    /// Member of the instance's product set E.
    Product,
    /// Induced while processing `source`: the element added to B_`set`
    /// produced this pair.
    Induced { source: Pair, set: usize },
    /// Generated by multiplying assignment set `set` (no closure event).
    SetImage { set: usize },
}

/// The decision object of the linearization: the sets B_k and the product
/// variable support F.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearizationPlan {
    b_sets: BTreeMap<usize, BTreeSet<usize>>,
    f_order: Vec<Pair>,
    f_members: BTreeSet<Pair>,
    provenance: BTreeMap<Pair, PairOrigin>,
}

impl LinearizationPlan {
    /// Plan with an empty B_k for every given set index and empty F.
    pub fn empty(set_ids: impl IntoIterator<Item = usize>) -> LinearizationPlan {
        LinearizationPlan {
            b_sets: set_ids.into_iter().map(|k| (k, BTreeSet::new())).collect(),
            f_order: Vec::new(),
            f_members: BTreeSet::new(),
            provenance: BTreeMap::new(),
        }
    }

    /// Plan determined by explicit B_k sets: F is the image of all
    /// A_k x B_k products under the ordering map, united with E.
    pub fn from_sets(
        inst: &BqpInstance,
        b_sets: BTreeMap<usize, BTreeSet<usize>>,
    ) -> LinearizationPlan {
        let mut plan = LinearizationPlan {
            b_sets,
            f_order: Vec::new(),
            f_members: BTreeSet::new(),
            provenance: BTreeMap::new(),
        };
        for &pair in inst.products() {
            plan.push_f(pair, PairOrigin::Product);
        }
        for (&k, b_k) in &plan.b_sets.clone() {
            let Some(a_k) = inst.set(k) else { continue };
            for &j in b_k {
                for &i in a_k {
                    plan.push_f(Pair::new(i, j), PairOrigin::SetImage { set: k });
                }
            }
        }
        plan
    }

    pub fn b_sets(&self) -> &BTreeMap<usize, BTreeSet<usize>> {
        &self.b_sets
    }

    pub fn b_set(&self, k: usize) -> Option<&BTreeSet<usize>> {
        self.b_sets.get(&k)
    }

    /// Membership indicator b(i, k): is `i ∈ B_k`?
    pub fn in_b(&self, i: usize, k: usize) -> bool {
        self.b_sets.get(&k).is_some_and(|b| b.contains(&i))
    }

    pub fn add_to_b_set(&mut self, k: usize, i: usize) {
        self.b_sets.entry(k).or_default().insert(i);
    }

    /// Adds a pair to F unless already present; returns whether it was new.
    /// Only the first origin is retained.
    pub fn push_f(&mut self, pair: Pair, origin: PairOrigin) -> bool {
        if self.f_members.insert(pair) {
            self.f_order.push(pair);
            self.provenance.insert(pair, origin);
            true
        } else {
            false
        }
    }

    /// F in insertion order (product order first, then discovery order).
    pub fn f_pairs(&self) -> &[Pair] {
        &self.f_order
    }

    /// F in canonical ascending order.
    pub fn f_sorted(&self) -> Vec<Pair> {
        self.f_members.iter().copied().collect()
    }

    pub fn contains_f(&self, pair: Pair) -> bool {
        self.f_members.contains(&pair)
    }

    pub fn f_len(&self) -> usize {
        self.f_members.len()
    }

    pub fn sum_b(&self) -> usize {
        self.b_sets.values().map(|b| b.len()).sum()
    }

    /// Weighted plan size: `w_eqn * Σ|B_k| + w_var * |F|`.
    pub fn objective(&self, w_eqn: f64, w_var: f64) -> f64 {
        w_eqn * self.sum_b() as f64 + w_var * self.f_len() as f64
    }

    pub fn provenance(&self) -> &BTreeMap<Pair, PairOrigin> {
        &self.provenance
    }

    /// Checks all indices referenced by the plan against the instance.
    pub fn validate_against(&self, inst: &BqpInstance) -> Result<()> {
        for (&k, members) in &self.b_sets {
            if inst.set(k).is_none() {
                return Err(Error::InvalidPlan(format!("unknown assignment set {k}")));
            }
            for &i in members {
                if i < 1 || i > inst.n() {
                    return Err(Error::InvalidPlan(format!(
                        "B_{k} contains out-of-range index {i}"
                    )));
                }
            }
        }
        for pair in &self.f_order {
            if pair.i() < 1 || pair.j() > inst.n() {
                return Err(Error::InvalidPlan(format!("pair {pair} out of range")));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let file = PlanFile {
            b_sets: self
                .b_sets
                .iter()
                .map(|(&k, m)| (k, m.iter().copied().collect()))
                .collect(),
            f_set: self.f_members.iter().map(|p| (p.i(), p.j())).collect(),
        };
        serde_json::to_string_pretty(&file).expect("plan serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<LinearizationPlan> {
        let file: PlanFile = serde_json::from_str(text).map_err(|e| Error::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let mut plan = LinearizationPlan::empty(file.b_sets.keys().copied());
        for (k, members) in file.b_sets {
            for i in members {
                plan.add_to_b_set(k, i);
            }
        }
        for (i, j) in file.f_set {
            let pair = Pair::try_ordered(i, j)?;
            plan.f_members.insert(pair);
        }
        plan.f_order = plan.f_members.iter().copied().collect();
        Ok(plan)
    }
}

#[derive(Serialize, Deserialize)]
struct PlanFile {
    b_sets: BTreeMap<usize, Vec<usize>>,
    f_set: Vec<(usize, usize)>,
}

/// Which of the two covering conditions a pair fails.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Condition {
    /// Some k with `i ∈ A_k` and `j ∈ B_k` must exist.
    One,
    /// Some l with `j ∈ A_l` and `i ∈ B_l` must exist.
    Two,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionViolation {
    pub pair: Pair,
    pub condition: Condition,
}

/// Result of [`check_conditions`]: `ok` iff every pair of F satisfies both
/// conditions, E is covered by F, and F equals the image of the A_k x B_k
/// products.
#[derive(Clone, Debug, Serialize)]
pub struct ConditionReport {
    pub ok: bool,
    pub violations: Vec<ConditionViolation>,
    pub uncovered_products: Vec<Pair>,
    pub missing_image_pairs: Vec<Pair>,
    pub extra_pairs: Vec<Pair>,
}

/// Verifies, for each (i, j) in F, that some k has `i ∈ A_k, j ∈ B_k` and
/// some l has `j ∈ A_l, i ∈ B_l`, plus the set-level identities `E ⊆ F` and
/// `F = φ(∪ A_k × B_k)`.
pub fn check_conditions(inst: &BqpInstance, plan: &LinearizationPlan) -> ConditionReport {
    let mut violations = Vec::new();
    for pair in plan.f_sorted() {
        let (i, j) = (pair.i(), pair.j());
        let cond1 = inst
            .set_ids()
            .any(|k| inst.in_set(i, k) && plan.in_b(j, k));
        let cond2 = inst
            .set_ids()
            .any(|l| inst.in_set(j, l) && plan.in_b(i, l));
        if !cond1 {
            violations.push(ConditionViolation {
                pair,
                condition: Condition::One,
            });
        }
        if !cond2 {
            violations.push(ConditionViolation {
                pair,
                condition: Condition::Two,
            });
        }
    }

    let uncovered_products: Vec<Pair> = inst
        .products()
        .iter()
        .copied()
        .filter(|p| !plan.contains_f(*p))
        .collect();

    let mut image = BTreeSet::new();
    for (&k, b_k) in plan.b_sets() {
        let Some(a_k) = inst.set(k) else { continue };
        for &j in b_k {
            for &i in a_k {
                image.insert(Pair::new(i, j));
            }
        }
    }
    let f_set: BTreeSet<Pair> = plan.f_sorted().into_iter().collect();
    let missing_image_pairs: Vec<Pair> = image.difference(&f_set).copied().collect();
    let extra_pairs: Vec<Pair> = f_set.difference(&image).copied().collect();

    ConditionReport {
        ok: violations.is_empty()
            && uncovered_products.is_empty()
            && missing_image_pairs.is_empty()
            && extra_pairs.is_empty(),
        violations,
        uncovered_products,
        missing_image_pairs,
        extra_pairs,
    }
}

/// Number of product variables that would have to be created right now by
/// adding `i` to B_k: the members u of A_k for which no set l already
/// witnesses the pair {u, i} through its A_l x B_l products.
pub fn heuristic_cost(
    inst: &BqpInstance,
    plan: &LinearizationPlan,
    i: usize,
    k: usize,
) -> usize {
    let Some(a_k) = inst.set(k) else { return 0 };
    a_k.iter()
        .filter(|&&u| {
            !inst.set_ids().any(|l| {
                (inst.in_set(u, l) && plan.in_b(i, l)) || (inst.in_set(i, l) && plan.in_b(u, l))
            })
        })
        .count()
}

/// Picks the set whose assignment constraint will be multiplied by x_j so
/// that the pair (i, j) gains its first-coordinate condition. A candidate
/// that already contains j costs nothing and is taken outright; otherwise
/// the cheapest extension wins, ties to the smallest set index. Returns
/// `None` only if no assignment set contains `i`.
pub fn select_k_star(
    inst: &BqpInstance,
    plan: &LinearizationPlan,
    i: usize,
    j: usize,
) -> Option<usize> {
    let candidates: Vec<usize> = inst
        .set_ids()
        .filter(|&k| inst.in_set(i, k))
        .collect();
    if let Some(&k) = candidates.iter().find(|&&k| plan.in_b(j, k)) {
        return Some(k);
    }
    candidates
        .into_iter()
        .map(|k| (heuristic_cost(inst, plan, j, k), k))
        .min()
        .map(|(_, k)| k)
}

/// Mirror of [`select_k_star`] for the second-coordinate condition: a set l
/// with `j ∈ A_l` that will receive `i` in B_l.
pub fn select_l_star(
    inst: &BqpInstance,
    plan: &LinearizationPlan,
    i: usize,
    j: usize,
) -> Option<usize> {
    select_k_star(inst, plan, j, i)
}

/// Computes B_k and F by closure: seed F with E, then repeatedly give every
/// new pair its two conditions, collecting the pairs induced by each B_k
/// extension until a fixed point is reached. F grows monotonically and is
/// bounded by the n(n+1)/2 ordered pairs, so the loop terminates.
pub fn construct_sets(inst: &BqpInstance) -> Result<LinearizationPlan> {
    let uncovered = |i: usize| {
        Error::InvalidInstance(format!("variable {i} is not covered by any assignment set"))
    };
    let mut plan = LinearizationPlan::empty(inst.set_ids());
    let mut frontier: Vec<Pair> = Vec::new();
    for &pair in inst.products() {
        if plan.push_f(pair, PairOrigin::Product) {
            frontier.push(pair);
        }
    }
    while !frontier.is_empty() {
        let mut added = Vec::new();
        for &pair in &frontier {
            let (i, j) = (pair.i(), pair.j());
            let k_star = select_k_star(inst, &plan, i, j).ok_or_else(|| uncovered(i))?;
            if !plan.in_b(j, k_star) {
                plan.add_to_b_set(k_star, j);
                for &a in inst.set(k_star).expect("selected set exists") {
                    let induced = Pair::new(a, j);
                    if plan.push_f(
                        induced,
                        PairOrigin::Induced {
                            source: pair,
                            set: k_star,
                        },
                    ) {
                        added.push(induced);
                    }
                }
            }
            let l_star = select_l_star(inst, &plan, i, j).ok_or_else(|| uncovered(j))?;
            if !plan.in_b(i, l_star) {
                plan.add_to_b_set(l_star, i);
                for &a in inst.set(l_star).expect("selected set exists") {
                    let induced = Pair::new(a, i);
                    if plan.push_f(
                        induced,
                        PairOrigin::Induced {
                            source: pair,
                            set: l_star,
                        },
                    ) {
                        added.push(induced);
                    }
                }
            }
        }
        frontier = added;
    }
    Ok(plan)
}
