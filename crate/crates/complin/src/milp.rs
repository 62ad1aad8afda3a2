//! Size minimization of a linearization: choose the B_k memberships (binary
//! z_ik) so that every needed product variable (continuous f_ij) is covered
//! in both coordinates, minimizing w_eqn * Σ z + w_var * Σ f.
//!
//! At any fixed z the cheapest feasible f is the indicator of E together
//! with the image of the chosen memberships, so the search branches on z
//! only and derives f. In the disjoint case every covering choice is forced
//! and unit propagation solves the model at the root node.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::instance::{BqpInstance, Pair, Sense};
use crate::linearize::LinearizationPlan;

pub const DEFAULT_SOLVE_BUDGET: u64 = 2_000_000;
pub const DEFAULT_TU_SAMPLES: usize = 1000;
pub const DEFAULT_TU_SEED: u64 = 0;

/// Where a model row comes from: the E-fixing equalities, the two link
/// families tying f to z (ordered and swapped coordinate), and the two
/// covering-condition families.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum RowOrigin {
    Fix,
    LinkA,
    LinkB,
    CondOne,
    CondTwo,
}

/// One row; every coefficient is -1 or +1.
#[derive(Clone, Debug)]
pub struct MilpRow {
    pub origin: RowOrigin,
    pub f_terms: Vec<(Pair, i8)>,
    pub z_terms: Vec<((usize, usize), i8)>,
    pub sense: Sense,
    pub rhs: f64,
}

/// The covering MILP. Embeds the instance data needed to decode a z-vector
/// back into a plan.
#[derive(Clone, Debug)]
pub struct MilpModel {
    n: usize,
    assignment_sets: BTreeMap<usize, BTreeSet<usize>>,
    products: Vec<Pair>,
    /// All (i, k), i ascending then k: z_ik = 1 iff i ∈ B_k.
    pub z_vars: Vec<(usize, usize)>,
    /// All ordered pairs i ≤ j: f_ij = 1 iff (i,j) ∈ F.
    pub f_vars: Vec<Pair>,
    pub rows: Vec<MilpRow>,
    pub w_eqn: f64,
    pub w_var: f64,
}

pub fn build_min_milp(inst: &BqpInstance, w_eqn: f64, w_var: f64) -> MilpModel {
    let n = inst.n();
    let set_ids: Vec<usize> = inst.set_ids().collect();
    let z_vars: Vec<(usize, usize)> = (1..=n)
        .flat_map(|i| set_ids.iter().map(move |&k| (i, k)))
        .collect();
    let f_vars: Vec<Pair> = (1..=n)
        .flat_map(|i| (i..=n).map(move |j| Pair::new(i, j)))
        .collect();
    let mut rows = Vec::new();

    let product_set: BTreeSet<Pair> = inst.products().iter().copied().collect();
    for &p in &product_set {
        rows.push(MilpRow {
            origin: RowOrigin::Fix,
            f_terms: vec![(p, 1)],
            z_terms: vec![],
            sense: Sense::Eq,
            rhs: 1.0,
        });
    }

    for &k in &set_ids {
        for &i in inst.set(k).expect("set id from instance") {
            for j in 1..=n {
                let origin = if i <= j { RowOrigin::LinkA } else { RowOrigin::LinkB };
                rows.push(MilpRow {
                    origin,
                    f_terms: vec![(Pair::new(i, j), 1)],
                    z_terms: vec![((j, k), -1)],
                    sense: Sense::Ge,
                    rhs: 0.0,
                });
            }
        }
    }

    for &p in &f_vars {
        let cands1: Vec<((usize, usize), i8)> = set_ids
            .iter()
            .filter(|&&k| inst.in_set(p.i(), k))
            .map(|&k| ((p.j(), k), 1))
            .collect();
        rows.push(MilpRow {
            origin: RowOrigin::CondOne,
            f_terms: vec![(p, -1)],
            z_terms: cands1,
            sense: Sense::Ge,
            rhs: 0.0,
        });
    }
    for &p in &f_vars {
        let cands2: Vec<((usize, usize), i8)> = set_ids
            .iter()
            .filter(|&&k| inst.in_set(p.j(), k))
            .map(|&k| ((p.i(), k), 1))
            .collect();
        rows.push(MilpRow {
            origin: RowOrigin::CondTwo,
            f_terms: vec![(p, -1)],
            z_terms: cands2,
            sense: Sense::Ge,
            rhs: 0.0,
        });
    }

    MilpModel {
        n,
        assignment_sets: inst.assignment_sets().clone(),
        products: inst.products().to_vec(),
        z_vars,
        f_vars,
        rows,
        w_eqn,
        w_var,
    }
}

impl MilpModel {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn to_lp(&self) -> crate::lp::LpDocument {
        let z_name = |i: usize, k: usize| format!("z{i}_{k}");
        let f_name = |p: Pair| format!("f{}_{}", p.i(), p.j());
        let objective: Vec<(String, f64)> = self
            .z_vars
            .iter()
            .map(|&(i, k)| (z_name(i, k), self.w_eqn))
            .chain(self.f_vars.iter().map(|&p| (f_name(p), self.w_var)))
            .filter(|(_, c)| *c != 0.0)
            .collect();
        let placeholder_var = self
            .z_vars
            .first()
            .map(|&(i, k)| z_name(i, k))
            .or_else(|| self.f_vars.first().map(|&p| f_name(p)))
            .unwrap_or_else(|| "x1".to_string());
        let mut counts: BTreeMap<&'static str, usize> = BTreeMap::new();
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let prefix = match row.origin {
                    RowOrigin::Fix => "fix",
                    RowOrigin::LinkA => "la",
                    RowOrigin::LinkB => "lb",
                    RowOrigin::CondOne => "c1",
                    RowOrigin::CondTwo => "c2",
                };
                let id = counts.entry(prefix).or_insert(0);
                *id += 1;
                crate::lp::LpRow {
                    name: format!("{prefix}_{id}"),
                    terms: row
                        .f_terms
                        .iter()
                        .map(|&(p, c)| (f_name(p), c as f64))
                        .chain(row.z_terms.iter().map(|&((i, k), c)| (z_name(i, k), c as f64)))
                        .collect(),
                    sense: row.sense,
                    rhs: row.rhs,
                }
            })
            .collect();
        crate::lp::LpDocument {
            comments: vec![],
            objective,
            placeholder_var,
            rows,
            bounds: self
                .f_vars
                .iter()
                .map(|&p| crate::lp::LpBound {
                    var: f_name(p),
                    lo: 0.0,
                    hi: 1.0,
                })
                .collect(),
            binaries: self.z_vars.iter().map(|&(i, k)| z_name(i, k)).collect(),
        }
    }

    pub fn to_lp_string(&self) -> String {
        crate::lp::write_lp(&self.to_lp())
    }

    pub fn instance(&self) -> BqpInstance {
        BqpInstance::new(self.n, self.assignment_sets.clone(), self.products.clone())
    }

    pub fn decode(&self, ones: &BTreeSet<(usize, usize)>) -> LinearizationPlan {
        let mut b_sets: BTreeMap<usize, BTreeSet<usize>> = self
            .assignment_sets
            .keys()
            .map(|&k| (k, BTreeSet::new()))
            .collect();
        for &(i, k) in ones {
            b_sets.entry(k).or_default().insert(i);
        }
        LinearizationPlan::from_sets(&self.instance(), b_sets)
    }
}

#[derive(Clone, Debug)]
pub struct MilpSolution {
    pub plan: LinearizationPlan,
    pub objective_value: f64,
    pub optimal: bool,
    pub nodes_or_candidates_explored: u64,
}

struct Search<'a> {
    model: &'a MilpModel,
    /// Per pair, the z positions that can give it its first / second
    /// coordinate condition.
    cond1: BTreeMap<Pair, Vec<usize>>,
    cond2: BTreeMap<Pair, Vec<usize>>,
    /// Per z position, the pairs its activation adds to F.
    image: Vec<Vec<Pair>>,
    budget: u64,
    nodes: u64,
    aborted: bool,
    best_cost: f64,
    best_ones: BTreeSet<(usize, usize)>,
}

#[derive(Clone)]
struct Node {
    z: Vec<Option<bool>>,
    forced_f: BTreeSet<Pair>,
    ones: usize,
}

impl Search<'_> {
    fn cost(&self, node: &Node) -> f64 {
        self.model.w_eqn * node.ones as f64 + self.model.w_var * node.forced_f.len() as f64
    }

    fn set_one(&self, node: &mut Node, pos: usize) -> bool {
        match node.z[pos] {
            Some(true) => return true,
            Some(false) => return false,
            None => {}
        }
        node.z[pos] = Some(true);
        node.ones += 1;
        for &p in &self.image[pos] {
            node.forced_f.insert(p);
        }
        true
    }

    /// Forces every single-candidate condition; false means some forced pair
    /// has no remaining candidate.
    fn propagate(&self, node: &mut Node) -> bool {
        loop {
            let mut to_force: Vec<usize> = Vec::new();
            for &p in &node.forced_f {
                for cands in [&self.cond1[&p], &self.cond2[&p]] {
                    if cands.iter().any(|&zi| node.z[zi] == Some(true)) {
                        continue;
                    }
                    let free: Vec<usize> = cands
                        .iter()
                        .copied()
                        .filter(|&zi| node.z[zi].is_none())
                        .collect();
                    match free.len() {
                        0 => return false,
                        1 => to_force.push(free[0]),
                        _ => {}
                    }
                }
            }
            if to_force.is_empty() {
                return true;
            }
            for zi in to_force {
                if !self.set_one(node, zi) {
                    return false;
                }
            }
        }
    }

    fn dfs(&mut self, mut node: Node) {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.aborted = true;
            return;
        }
        if !self.propagate(&mut node) {
            return;
        }
        if self.cost(&node) >= self.best_cost {
            return;
        }
        let Some(pos) = node.z.iter().position(|v| v.is_none()) else {
            self.best_cost = self.cost(&node);
            self.best_ones = node
                .z
                .iter()
                .enumerate()
                .filter(|(_, v)| **v == Some(true))
                .map(|(i, _)| self.model.z_vars[i])
                .collect();
            return;
        };
        let mut zero = node.clone();
        zero.z[pos] = Some(false);
        self.dfs(zero);
        if self.aborted {
            return;
        }
        if self.set_one(&mut node, pos) {
            self.dfs(node);
        }
    }
}

pub fn solve_exact(model: &MilpModel, budget: u64) -> Result<MilpSolution> {
    let inst = model.instance();
    let zpos: BTreeMap<(usize, usize), usize> = model
        .z_vars
        .iter()
        .enumerate()
        .map(|(idx, &v)| (v, idx))
        .collect();
    let all_pairs: Vec<Pair> = model.f_vars.clone();
    let mut cond1 = BTreeMap::new();
    let mut cond2 = BTreeMap::new();
    for &p in &all_pairs {
        let c1: Vec<usize> = inst
            .set_ids()
            .filter(|&k| inst.in_set(p.i(), k))
            .map(|k| zpos[&(p.j(), k)])
            .collect();
        let c2: Vec<usize> = inst
            .set_ids()
            .filter(|&k| inst.in_set(p.j(), k))
            .map(|k| zpos[&(p.i(), k)])
            .collect();
        cond1.insert(p, c1);
        cond2.insert(p, c2);
    }
    let image: Vec<Vec<Pair>> = model
        .z_vars
        .iter()
        .map(|&(j, k)| {
            inst.set(k)
                .map(|a_k| a_k.iter().map(|&a| Pair::new(a, j)).collect())
                .unwrap_or_default()
        })
        .collect();

    // The all-ones vector is the canonical feasible fallback; if even it
    // violates a condition the model has no solution at all.
    let mut seed = Node {
        z: vec![Some(true); model.z_vars.len()],
        forced_f: model.products.iter().copied().collect(),
        ones: model.z_vars.len(),
    };
    for (pos, pairs) in image.iter().enumerate() {
        debug_assert!(seed.z[pos] == Some(true));
        seed.forced_f.extend(pairs.iter().copied());
    }
    for &p in &seed.forced_f {
        if cond1[&p].is_empty() || cond2[&p].is_empty() {
            return Err(Error::InvalidInstance(format!(
                "no feasible covering exists: pair {p} cannot satisfy both conditions"
            )));
        }
    }

    let mut search = Search {
        model,
        cond1,
        cond2,
        image,
        budget,
        nodes: 0,
        aborted: false,
        best_cost: model.w_eqn * seed.ones as f64 + model.w_var * seed.forced_f.len() as f64,
        best_ones: model.z_vars.iter().copied().collect(),
    };
    let root = Node {
        z: vec![None; model.z_vars.len()],
        forced_f: model.products.iter().copied().collect(),
        ones: 0,
    };
    search.dfs(root);

    let plan = model.decode(&search.best_ones);
    Ok(MilpSolution {
        objective_value: plan.objective(model.w_eqn, model.w_var),
        plan,
        optimal: !search.aborted,
        nodes_or_candidates_explored: search.nodes,
    })
}

/// Structural and sampled total-unimodularity evidence for the model's
/// inequality rows, viewed as the matrix [F Z] with the E-fixed f columns
/// removed.
#[derive(Clone, Debug)]
pub struct TuReport {
    pub structural_ok: bool,
    pub rows_checked: usize,
    pub sampled_determinants_ok: bool,
    pub counterexample: Option<String>,
}

pub fn check_tu_structure(model: &MilpModel) -> TuReport {
    check_tu_structure_with(model, DEFAULT_TU_SEED, DEFAULT_TU_SAMPLES)
}

pub fn check_tu_structure_with(model: &MilpModel, seed: u64, samples: usize) -> TuReport {
    let fixed: BTreeSet<Pair> = model.products.iter().copied().collect();
    let mut col_of: BTreeMap<(u8, usize, usize), usize> = BTreeMap::new();
    for &p in &model.f_vars {
        if !fixed.contains(&p) {
            let idx = col_of.len();
            col_of.insert((0, p.i(), p.j()), idx);
        }
    }
    for &(i, k) in &model.z_vars {
        let idx = col_of.len();
        col_of.insert((1, i, k), idx);
    }
    let ncols = col_of.len();

    let mut rows: Vec<Vec<(usize, i64)>> = Vec::new();
    let mut structural_ok = true;
    let mut counterexample = None;
    for row in &model.rows {
        if row.origin == RowOrigin::Fix {
            continue;
        }
        let mut entries: Vec<(usize, i64)> = Vec::new();
        for &(p, c) in &row.f_terms {
            if let Some(&col) = col_of.get(&(0, p.i(), p.j())) {
                entries.push((col, c as i64));
            }
        }
        for &((i, k), c) in &row.z_terms {
            if let Some(&col) = col_of.get(&(1, i, k)) {
                entries.push((col, c as i64));
            }
        }
        let sum: i64 = entries.iter().map(|(_, c)| c).sum();
        if entries.len() > 2 || (entries.len() == 2 && sum != 0) {
            if structural_ok {
                counterexample = Some(format!(
                    "row {:?} has {} nonzeros summing to {}",
                    row.origin,
                    entries.len(),
                    sum
                ));
            }
            structural_ok = false;
        }
        rows.push(entries);
    }
    let rows_checked = rows.len();

    let mut sampled_determinants_ok = true;
    if !rows.is_empty() && ncols > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let order = rng
                .gen_range(1..=6usize)
                .min(rows.len())
                .min(ncols);
            let row_idx = rand::seq::index::sample(&mut rng, rows.len(), order);
            let col_idx = rand::seq::index::sample(&mut rng, ncols, order);
            let col_pos: BTreeMap<usize, usize> = col_idx
                .iter()
                .enumerate()
                .map(|(pos, col)| (col, pos))
                .collect();
            let mut m = vec![vec![0i64; order]; order];
            for (r, ri) in row_idx.iter().enumerate() {
                for &(col, c) in &rows[ri] {
                    if let Some(&pos) = col_pos.get(&col) {
                        m[r][pos] = c;
                    }
                }
            }
            let det = det_bareiss(m);
            if det.abs() > 1 {
                sampled_determinants_ok = false;
                if counterexample.is_none() {
                    counterexample = Some(format!(
                        "submatrix rows {:?} cols {:?} has determinant {det}",
                        row_idx.iter().collect::<Vec<_>>(),
                        col_idx.iter().collect::<Vec<_>>()
                    ));
                }
                break;
            }
        }
    }

    TuReport {
        structural_ok,
        rows_checked,
        sampled_determinants_ok,
        counterexample,
    }
}

/// Fraction-free elimination; exact for integer matrices of this scale.
fn det_bareiss(mut m: Vec<Vec<i64>>) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1i64;
    let mut prev = 1i64;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let Some(swap) = (k + 1..n).find(|&r| m[r][k] != 0) else {
                return 0;
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linearize::{check_conditions, construct_sets};

    fn ex1() -> BqpInstance {
        BqpInstance::new(
            4,
            BTreeMap::from([(1, BTreeSet::from([1, 2])), (2, BTreeSet::from([3, 4]))]),
            vec![Pair::new(1, 3)],
        )
    }

    fn qap2() -> BqpInstance {
        BqpInstance::new(
            4,
            BTreeMap::from([
                (1, BTreeSet::from([1, 2])),
                (2, BTreeSet::from([3, 4])),
                (3, BTreeSet::from([1, 3])),
                (4, BTreeSet::from([2, 4])),
            ]),
            vec![Pair::new(1, 4)],
        )
    }

    /// Definition-level feasibility: F = E ∪ image(z), every pair of F has
    /// both covering conditions among the activated z.
    fn naive_optimum(inst: &BqpInstance, w_eqn: f64, w_var: f64) -> f64 {
        let zs: Vec<(usize, usize)> = (1..=inst.n())
            .flat_map(|i| inst.set_ids().map(move |k| (i, k)))
            .collect();
        let mut best = f64::INFINITY;
        for mask in 0u64..(1u64 << zs.len()) {
            let ones: BTreeSet<(usize, usize)> = zs
                .iter()
                .enumerate()
                .filter(|(idx, _)| mask >> idx & 1 == 1)
                .map(|(_, &v)| v)
                .collect();
            let mut f: BTreeSet<Pair> = inst.products().iter().copied().collect();
            for &(j, k) in &ones {
                for &a in inst.set(k).unwrap() {
                    f.insert(Pair::new(a, j));
                }
            }
            let feasible = f.iter().all(|p| {
                let c1 = inst
                    .set_ids()
                    .any(|k| inst.in_set(p.i(), k) && ones.contains(&(p.j(), k)));
                let c2 = inst
                    .set_ids()
                    .any(|k| inst.in_set(p.j(), k) && ones.contains(&(p.i(), k)));
                c1 && c2
            });
            if feasible {
                best = best.min(w_eqn * ones.len() as f64 + w_var * f.len() as f64);
            }
        }
        best
    }

    #[test]
    fn ex1_model_counts() {
        let model = build_min_milp(&ex1(), 1.0, 1.0);
        assert_eq!(model.z_vars.len(), 8);
        assert_eq!(model.f_vars.len(), 10);
        let count = |origin: RowOrigin| {
            model.rows.iter().filter(|r| r.origin == origin).count()
        };
        assert_eq!(count(RowOrigin::Fix), 1);
        assert_eq!(count(RowOrigin::LinkA) + count(RowOrigin::LinkB), 16);
        assert_eq!(count(RowOrigin::CondOne), 10);
        assert_eq!(count(RowOrigin::CondTwo), 10);
        for row in &model.rows {
            for &(_, c) in &row.f_terms {
                assert!(c == 1 || c == -1);
            }
            for &(_, c) in &row.z_terms {
                assert!(c == 1 || c == -1);
            }
        }
    }

    #[test]
    fn ex1_exact_solution_matches_closure() {
        let inst = ex1();
        let model = build_min_milp(&inst, 1.0, 1.0);
        let sol = solve_exact(&model, DEFAULT_SOLVE_BUDGET).unwrap();
        assert!(sol.optimal);
        assert_eq!(sol.objective_value, 8.0);
        let closure = construct_sets(&inst).unwrap();
        assert_eq!(sol.plan.b_sets(), closure.b_sets());
        assert_eq!(sol.plan.f_sorted(), closure.f_sorted());
    }

    #[test]
    fn exact_matches_naive_enumeration() {
        let inst = ex1();
        for (we, wv) in [(1.0, 1.0), (1.0, 0.0), (0.0, 1.0), (2.0, 3.0)] {
            let model = build_min_milp(&inst, we, wv);
            let sol = solve_exact(&model, DEFAULT_SOLVE_BUDGET).unwrap();
            assert!(sol.optimal);
            assert_eq!(sol.objective_value, naive_optimum(&inst, we, wv), "weights {we},{wv}");
        }
    }

    #[test]
    fn exact_matches_naive_enumeration_overlapping() {
        let inst = qap2();
        let model = build_min_milp(&inst, 1.0, 1.0);
        let sol = solve_exact(&model, DEFAULT_SOLVE_BUDGET).unwrap();
        assert!(sol.optimal);
        assert_eq!(sol.objective_value, naive_optimum(&inst, 1.0, 1.0));
        assert!(check_conditions(&inst, &sol.plan).ok);
    }

    #[test]
    fn empty_product_set_has_zero_optimum() {
        let inst = BqpInstance::new(
            4,
            BTreeMap::from([(1, BTreeSet::from([1, 2])), (2, BTreeSet::from([3, 4]))]),
            vec![],
        );
        let model = build_min_milp(&inst, 1.0, 1.0);
        let sol = solve_exact(&model, DEFAULT_SOLVE_BUDGET).unwrap();
        assert!(sol.optimal);
        assert_eq!(sol.objective_value, 0.0);
        assert_eq!(sol.plan.sum_b(), 0);
        assert_eq!(sol.plan.f_len(), 0);
    }

    #[test]
    fn diagonal_product_forces_membership() {
        let inst = BqpInstance::new(
            1,
            BTreeMap::from([(1, BTreeSet::from([1]))]),
            vec![Pair::new(1, 1)],
        );
        let model = build_min_milp(&inst, 1.0, 1.0);
        let sol = solve_exact(&model, DEFAULT_SOLVE_BUDGET).unwrap();
        assert!(sol.optimal);
        assert_eq!(sol.plan.b_set(1).unwrap(), &BTreeSet::from([1]));
        assert_eq!(sol.objective_value, 2.0);
    }

    #[test]
    fn budget_exhaustion_reports_nonoptimal_feasible() {
        let inst = ex1();
        let model = build_min_milp(&inst, 1.0, 1.0);
        let sol = solve_exact(&model, 0).unwrap();
        assert!(!sol.optimal);
        assert_eq!(sol.nodes_or_candidates_explored, 1);
        assert!(check_conditions(&inst, &sol.plan).ok);
        assert_eq!(sol.objective_value, 18.0);
    }

    #[test]
    fn infeasible_covering_is_an_error() {
        // Variable 3 is in no assignment set but appears in E.
        let inst = BqpInstance::new(
            3,
            BTreeMap::from([(1, BTreeSet::from([1, 2]))]),
            vec![Pair::new(1, 3)],
        );
        let model = build_min_milp(&inst, 1.0, 1.0);
        assert!(solve_exact(&model, DEFAULT_SOLVE_BUDGET).is_err());
    }

    #[test]
    fn tu_structure_disjoint_ok() {
        let model = build_min_milp(&ex1(), 1.0, 1.0);
        let report = check_tu_structure(&model);
        assert!(report.structural_ok, "{:?}", report.counterexample);
        assert!(report.sampled_determinants_ok);
        assert_eq!(report.rows_checked, 36);
    }

    #[test]
    fn tu_structure_overlapping_fails() {
        let model = build_min_milp(&qap2(), 1.0, 1.0);
        let report = check_tu_structure(&model);
        assert!(!report.structural_ok);
        assert!(report.counterexample.is_some());
    }

    #[test]
    fn tu_vacuous_without_rows() {
        let inst = BqpInstance::new(0, BTreeMap::new(), vec![]);
        let model = build_min_milp(&inst, 1.0, 1.0);
        let report = check_tu_structure(&model);
        assert!(report.structural_ok);
        assert!(report.sampled_determinants_ok);
        assert_eq!(report.rows_checked, 0);
    }

    #[test]
    fn bareiss_determinants() {
        assert_eq!(det_bareiss(vec![vec![1, 0], vec![0, 1]]), 1);
        assert_eq!(det_bareiss(vec![vec![1, 1], vec![1, -1]]), -2);
        assert_eq!(det_bareiss(vec![vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(det_bareiss(vec![vec![0, 0], vec![0, 1]]), 0);
        assert_eq!(
            det_bareiss(vec![
                vec![1, -1, 0],
                vec![0, 1, -1],
                vec![-1, 0, 1],
            ]),
            0
        );
        assert_eq!(
            det_bareiss(vec![
                vec![2, 0, 1],
                vec![1, 1, 0],
                vec![0, 3, 1],
            ]),
            5
        );
    }
}
