//! Instance data model: binary variables covered by assignment sets plus a
//! collection of product terms, with a JSON file format, validation and
//! trivial-product preprocessing.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An index pair (i, j) with `i <= j`, the canonical form of a product term.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pair {
    i: usize,
    j: usize,
}

impl Pair {
    /// Builds the canonical pair for `{i, j}`, swapping if necessary.
    pub fn new(i: usize, j: usize) -> Pair {
        if i <= j {
            Pair { i, j }
        } else {
            Pair { i: j, j: i }
        }
    }

    /// Accepts only already-ordered input; parse paths use this to reject
    /// files that store pairs backwards.
    pub fn try_ordered(i: usize, j: usize) -> Result<Pair> {
        if i <= j {
            Ok(Pair { i, j })
        } else {
            Err(Error::UnnormalizedPair { i, j })
        }
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn is_diagonal(&self) -> bool {
        self.i == self.j
    }

    /// The other endpoint, given one endpoint of the pair.
    pub fn partner(&self, endpoint: usize) -> usize {
        if endpoint == self.i {
            self.j
        } else {
            self.i
        }
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.i, self.j)
    }
}

impl fmt::Debug for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.i, self.j)
    }
}

impl Serialize for Pair {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        (self.i, self.j).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Pair {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Pair, D::Error> {
        let (i, j) = <(usize, usize)>::deserialize(deserializer)?;
        Pair::try_ordered(i, j).map_err(D::Error::custom)
    }
}

impl FromStr for Pair {
    type Err = Error;

    /// Parses the `"i,j"` key form used by quadratic coefficient maps.
    fn from_str(s: &str) -> Result<Pair> {
        let bad = || Error::BadKey {
            key: s.to_string(),
            expected: "\"i,j\" with positive integers",
        };
        let (a, b) = s.split_once(',').ok_or_else(bad)?;
        let i: usize = a.trim().parse().map_err(|_| bad())?;
        let j: usize = b.trim().parse().map_err(|_| bad())?;
        Pair::try_ordered(i, j)
    }
}

/// Canonical ordering map for a product term: returns (i, j) if `i <= j`,
/// else (j, i).
pub fn normalize_pair(i: usize, j: usize) -> Pair {
    Pair::new(i, j)
}

/// Constraint sense of a pass-through linear row.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sense {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "=")]
    Eq,
}

impl fmt::Display for Sense {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sense::Le => "<=",
            Sense::Ge => ">=",
            Sense::Eq => "=",
        })
    }
}

/// A pass-through constraint row: linear part over x, quadratic part over
/// product pairs, sense and right-hand side. Stored and re-emitted verbatim;
/// no interpretation happens beyond substituting y-variables for products.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinearConstraint {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub linear: BTreeMap<usize, f64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub quadratic: BTreeMap<Pair, f64>,
    pub sense: Sense,
    pub rhs: f64,
}

/// A binary quadratic program instance restricted to the structure this crate
/// handles: n binary variables, assignment sets A_k (exactly one member of
/// each set is 1), and an ordered set E of product pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct BqpInstance {
    n: usize,
    assignment_sets: BTreeMap<usize, BTreeSet<usize>>,
    products: Vec<Pair>,
    linear_objective: BTreeMap<usize, f64>,
    quadratic_objective: BTreeMap<Pair, f64>,
    extra_constraints: Vec<LinearConstraint>,
}

impl BqpInstance {
    /// Permissive constructor; use [`BqpInstance::validate`] to check the
    /// covering and range invariants.
    pub fn new(
        n: usize,
        assignment_sets: BTreeMap<usize, BTreeSet<usize>>,
        products: Vec<Pair>,
    ) -> BqpInstance {
        BqpInstance {
            n,
            assignment_sets,
            products,
            linear_objective: BTreeMap::new(),
            quadratic_objective: BTreeMap::new(),
            extra_constraints: Vec::new(),
        }
    }

    pub fn with_linear_objective(mut self, c: BTreeMap<usize, f64>) -> BqpInstance {
        self.linear_objective = c;
        self
    }

    pub fn with_quadratic_objective(mut self, b: BTreeMap<Pair, f64>) -> BqpInstance {
        self.quadratic_objective = b;
        self
    }

    pub fn with_extra_constraints(mut self, rows: Vec<LinearConstraint>) -> BqpInstance {
        self.extra_constraints = rows;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Assignment sets keyed by set index k.
    pub fn assignment_sets(&self) -> &BTreeMap<usize, BTreeSet<usize>> {
        &self.assignment_sets
    }

    pub fn set(&self, k: usize) -> Option<&BTreeSet<usize>> {
        self.assignment_sets.get(&k)
    }

    pub fn set_ids(&self) -> impl Iterator<Item = usize> + '_ {
        self.assignment_sets.keys().copied()
    }

    /// The ordered product set E.
    pub fn products(&self) -> &[Pair] {
        &self.products
    }

    pub fn has_product(&self, pair: Pair) -> bool {
        self.products.contains(&pair)
    }

    pub fn linear_objective(&self) -> &BTreeMap<usize, f64> {
        &self.linear_objective
    }

    pub fn quadratic_objective(&self) -> &BTreeMap<Pair, f64> {
        &self.quadratic_objective
    }

    pub fn extra_constraints(&self) -> &[LinearConstraint] {
        &self.extra_constraints
    }

    pub fn in_set(&self, i: usize, k: usize) -> bool {
        self.set(k).is_some_and(|a| a.contains(&i))
    }

    /// All set indices k with `i ∈ A_k`. Nonempty for every variable of a
    /// covering-valid instance; a singleton whenever the sets are disjoint.
    pub fn sets_containing(&self, i: usize) -> Result<BTreeSet<usize>> {
        if i < 1 || i > self.n {
            return Err(Error::IndexOutOfRange {
                what: "variable",
                index: i,
                n: self.n,
            });
        }
        Ok(self
            .assignment_sets
            .iter()
            .filter(|(_, members)| members.contains(&i))
            .map(|(&k, _)| k)
            .collect())
    }

    /// Checks the instance invariants and computes whether the assignment
    /// sets are pairwise disjoint. Violations are reported, never raised.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        if self.n == 0 {
            violations.push(Violation::new(
                ViolationCode::InvalidDimension,
                "n must be a positive integer".to_string(),
            ));
        }
        for (&k, members) in &self.assignment_sets {
            if members.is_empty() {
                violations.push(Violation::new(
                    ViolationCode::EmptyAssignmentSet,
                    format!("assignment set {k} is empty"),
                ));
            }
            for &i in members {
                if i < 1 || i > self.n {
                    violations.push(Violation::new(
                        ViolationCode::IndexOutOfRange,
                        format!("assignment set {k} contains out-of-range index {i}"),
                    ));
                }
            }
        }
        let covered: BTreeSet<usize> = self
            .assignment_sets
            .values()
            .flat_map(|m| m.iter().copied())
            .collect();
        for i in 1..=self.n {
            if !covered.contains(&i) {
                violations.push(Violation::new(
                    ViolationCode::UncoveredVariable,
                    format!("variable {i} uncovered by every assignment set"),
                ));
            }
        }
        let mut seen = BTreeSet::new();
        for &pair in &self.products {
            if pair.i() < 1 || pair.j() > self.n {
                violations.push(Violation::new(
                    ViolationCode::IndexOutOfRange,
                    format!("product {pair} out of range 1..={}", self.n),
                ));
            }
            if !seen.insert(pair) {
                violations.push(Violation::new(
                    ViolationCode::DuplicateProduct,
                    format!("duplicate product {pair}"),
                ));
            }
        }
        let is_disjoint = self.sets_pairwise_disjoint();
        ValidationReport {
            ok: violations.is_empty(),
            violations,
            is_disjoint,
        }
    }

    fn sets_pairwise_disjoint(&self) -> bool {
        let sets: Vec<&BTreeSet<usize>> = self.assignment_sets.values().collect();
        for (idx, a) in sets.iter().enumerate() {
            for b in &sets[idx + 1..] {
                if a.intersection(b).next().is_some() {
                    return false;
                }
            }
        }
        true
    }

    /// Removes products that are fixed by the assignment structure alone:
    /// a diagonal pair (i, i) stands for x_i since x is binary, and a pair of
    /// distinct variables sharing an assignment set is always 0. Coefficients
    /// are folded into the linear parts accordingly. Returns the reduced
    /// instance and the substitutions applied, in product order.
    pub fn preprocess_trivial(&self) -> (BqpInstance, Vec<Substitution>) {
        let mut log = Vec::new();
        for &pair in &self.products {
            if pair.is_diagonal() {
                log.push(Substitution {
                    pair,
                    replacement: Replacement::Variable(pair.i()),
                });
            } else if self
                .assignment_sets
                .values()
                .any(|a| a.contains(&pair.i()) && a.contains(&pair.j()))
            {
                log.push(Substitution {
                    pair,
                    replacement: Replacement::Zero,
                });
            }
        }
        if log.is_empty() {
            return (self.clone(), log);
        }

        let removed: BTreeMap<Pair, &Replacement> =
            log.iter().map(|s| (s.pair, &s.replacement)).collect();
        let mut reduced = self.clone();
        reduced.products.retain(|p| !removed.contains_key(p));
        for (&pair, replacement) in &removed {
            if let Some(coeff) = reduced.quadratic_objective.remove(&pair) {
                if let Replacement::Variable(i) = replacement {
                    *reduced.linear_objective.entry(*i).or_insert(0.0) += coeff;
                }
            }
        }
        for row in &mut reduced.extra_constraints {
            for (&pair, replacement) in &removed {
                if let Some(coeff) = row.quadratic.remove(&pair) {
                    if let Replacement::Variable(i) = replacement {
                        *row.linear.entry(*i).or_insert(0.0) += coeff;
                    }
                }
            }
        }
        (reduced, log)
    }

    /// Serializes to the canonical JSON instance format.
    pub fn to_json(&self) -> String {
        let file = InstanceFile::from_instance(self);
        serde_json::to_string_pretty(&file).expect("instance serialization cannot fail")
    }
}

/// Result of [`BqpInstance::validate`].
#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
    pub is_disjoint: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub code: ViolationCode,
    pub message: String,
}

impl Violation {
    fn new(code: ViolationCode, message: String) -> Violation {
        Violation { code, message }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationCode {
    InvalidDimension,
    EmptyAssignmentSet,
    IndexOutOfRange,
    UncoveredVariable,
    DuplicateProduct,
}

/// One record of the preprocessing log: which product was removed and what
/// it was replaced by.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Substitution {
    pub pair: Pair,
    pub replacement: Replacement,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Replacement {
    Variable(usize),
    Zero,
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.replacement {
            Replacement::Variable(i) => write!(f, "y{}_{} := x{}", self.pair.i(), self.pair.j(), i),
            Replacement::Zero => write!(f, "y{}_{} := 0", self.pair.i(), self.pair.j()),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct InstanceFile {
    n: usize,
    assignment_sets: BTreeMap<usize, Vec<usize>>,
    products: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    objective: Option<ObjectiveFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    constraints: Option<Vec<ConstraintFile>>,
}

#[derive(Serialize, Deserialize, Default)]
struct ObjectiveFile {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    linear: BTreeMap<usize, f64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    quadratic: BTreeMap<String, f64>,
}

#[derive(Serialize, Deserialize)]
struct ConstraintFile {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    linear: BTreeMap<usize, f64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    quadratic: BTreeMap<String, f64>,
    sense: Sense,
    rhs: f64,
}

impl InstanceFile {
    fn from_instance(inst: &BqpInstance) -> InstanceFile {
        let quad_keys = |m: &BTreeMap<Pair, f64>| {
            m.iter()
                .map(|(p, &v)| (format!("{},{}", p.i(), p.j()), v))
                .collect::<BTreeMap<String, f64>>()
        };
        let objective = if inst.linear_objective.is_empty() && inst.quadratic_objective.is_empty()
        {
            None
        } else {
            Some(ObjectiveFile {
                linear: inst.linear_objective.clone(),
                quadratic: quad_keys(&inst.quadratic_objective),
            })
        };
        let constraints = if inst.extra_constraints.is_empty() {
            None
        } else {
            Some(
                inst.extra_constraints
                    .iter()
                    .map(|c| ConstraintFile {
                        linear: c.linear.clone(),
                        quadratic: quad_keys(&c.quadratic),
                        sense: c.sense,
                        rhs: c.rhs,
                    })
                    .collect(),
            )
        };
        InstanceFile {
            n: inst.n,
            assignment_sets: inst
                .assignment_sets
                .iter()
                .map(|(&k, m)| (k, m.iter().copied().collect()))
                .collect(),
            products: inst.products.iter().map(|p| (p.i(), p.j())).collect(),
            objective,
            constraints,
        }
    }
}

/// Parses an instance from its JSON text form, rejecting malformed syntax,
/// out-of-range indices, unnormalized pairs and duplicate products.
pub fn parse_instance(text: &str) -> Result<BqpInstance> {
    let file: InstanceFile = serde_json::from_str(text).map_err(|e| Error::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if file.n == 0 {
        return Err(Error::InvalidInstance(
            "n must be a positive integer".to_string(),
        ));
    }
    let n = file.n;
    let check_var = |what: &'static str, i: usize| -> Result<usize> {
        if i < 1 || i > n {
            Err(Error::IndexOutOfRange { what, index: i, n })
        } else {
            Ok(i)
        }
    };

    let mut assignment_sets = BTreeMap::new();
    for (k, members) in file.assignment_sets {
        let mut set = BTreeSet::new();
        for i in members {
            set.insert(check_var("assignment set member", i)?);
        }
        assignment_sets.insert(k, set);
    }

    let mut products = Vec::new();
    let mut seen = BTreeSet::new();
    for (i, j) in file.products {
        check_var("product", i)?;
        check_var("product", j)?;
        let pair = Pair::try_ordered(i, j)?;
        if !seen.insert(pair) {
            return Err(Error::DuplicatePair { pair });
        }
        products.push(pair);
    }

    let parse_quad = |m: &BTreeMap<String, f64>, context: &'static str| -> Result<BTreeMap<Pair, f64>> {
        let mut out = BTreeMap::new();
        for (key, &coeff) in m {
            let pair: Pair = key.parse()?;
            check_var(context, pair.i())?;
            check_var(context, pair.j())?;
            if !seen.contains(&pair) {
                return Err(Error::UnknownPair { pair, context });
            }
            out.insert(pair, coeff);
        }
        Ok(out)
    };

    let mut inst = BqpInstance::new(n, assignment_sets, products);
    if let Some(objective) = file.objective {
        for &i in objective.linear.keys() {
            check_var("objective", i)?;
        }
        inst = inst
            .with_linear_objective(objective.linear.clone())
            .with_quadratic_objective(parse_quad(&objective.quadratic, "objective")?);
    }
    if let Some(constraints) = file.constraints {
        let mut rows = Vec::with_capacity(constraints.len());
        for c in constraints {
            for &i in c.linear.keys() {
                check_var("constraint", i)?;
            }
            rows.push(LinearConstraint {
                linear: c.linear.clone(),
                quadratic: parse_quad(&c.quadratic, "constraint")?,
                sense: c.sense,
                rhs: c.rhs,
            });
        }
        inst = inst.with_extra_constraints(rows);
    }
    Ok(inst)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn ex1() -> BqpInstance {
        BqpInstance::new(
            4,
            BTreeMap::from([
                (1, BTreeSet::from([1, 2])),
                (2, BTreeSet::from([3, 4])),
            ]),
            vec![Pair::new(1, 3)],
        )
    }

    pub(crate) fn qap2() -> BqpInstance {
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

    #[test]
    fn parse_minimal_ex1() {
        let text = r#"{
            "n": 4,
            "assignment_sets": {"1": [1, 2], "2": [3, 4]},
            "products": [[1, 3]]
        }"#;
        let inst = parse_instance(text).unwrap();
        assert_eq!(inst.n(), 4);
        assert_eq!(inst.assignment_sets().len(), 2);
        assert_eq!(inst.set(1).unwrap(), &BTreeSet::from([1, 2]));
        assert_eq!(inst.set(2).unwrap(), &BTreeSet::from([3, 4]));
        assert_eq!(inst.products(), &[Pair::new(1, 3)]);
        assert!(inst.linear_objective().is_empty());
        assert!(inst.quadratic_objective().is_empty());
        assert!(inst.extra_constraints().is_empty());
        assert_eq!(inst, ex1());
    }

    #[test]
    fn parse_rejects_unnormalized_pair() {
        let text = r#"{"n": 4, "assignment_sets": {"1": [1,2], "2": [3,4]}, "products": [[3, 1]]}"#;
        let err = parse_instance(text).unwrap_err();
        assert!(err.to_string().contains("not normalized"), "{err}");
    }

    #[test]
    fn parse_rejects_duplicate_pair() {
        let text =
            r#"{"n": 4, "assignment_sets": {"1": [1,2], "2": [3,4]}, "products": [[1,3],[1,3]]}"#;
        let err = parse_instance(text).unwrap_err();
        assert!(matches!(err, Error::DuplicatePair { .. }), "{err}");
    }

    #[test]
    fn parse_rejects_out_of_range() {
        let text = r#"{"n": 2, "assignment_sets": {"1": [1,2]}, "products": [[1, 5]]}"#;
        let err = parse_instance(text).unwrap_err();
        assert!(matches!(err, Error::IndexOutOfRange { .. }), "{err}");
    }

    #[test]
    fn parse_reports_syntax_position() {
        let err = parse_instance("{\n  \"n\": 4,,\n}").unwrap_err();
        match err {
            Error::Syntax { line, .. } => assert_eq!(line, 2),
            other => panic!("expected syntax error, got {other}"),
        }
    }

    #[test]
    fn parse_singleton_instance() {
        let inst =
            parse_instance(r#"{"n": 1, "assignment_sets": {"1": [1]}, "products": []}"#).unwrap();
        assert_eq!(inst.n(), 1);
        assert!(inst.products().is_empty());
        assert!(inst.validate().ok);
    }

    #[test]
    fn parse_objective_and_constraints() {
        let text = r#"{
            "n": 4,
            "assignment_sets": {"1": [1, 2], "2": [3, 4]},
            "products": [[1, 3]],
            "objective": {"linear": {"1": 1.5, "4": -2}, "quadratic": {"1,3": 3}},
            "constraints": [
                {"linear": {"2": 1}, "quadratic": {"1,3": -1}, "sense": "<=", "rhs": 0.5}
            ]
        }"#;
        let inst = parse_instance(text).unwrap();
        assert_eq!(inst.linear_objective()[&1], 1.5);
        assert_eq!(inst.quadratic_objective()[&Pair::new(1, 3)], 3.0);
        let row = &inst.extra_constraints()[0];
        assert_eq!(row.sense, Sense::Le);
        assert_eq!(row.rhs, 0.5);
        assert_eq!(row.quadratic[&Pair::new(1, 3)], -1.0);
    }

    #[test]
    fn parse_rejects_quadratic_key_outside_products() {
        let text = r#"{
            "n": 4,
            "assignment_sets": {"1": [1, 2], "2": [3, 4]},
            "products": [[1, 3]],
            "objective": {"quadratic": {"2,4": 1}}
        }"#;
        let err = parse_instance(text).unwrap_err();
        assert!(matches!(err, Error::UnknownPair { .. }), "{err}");
    }

    #[test]
    fn roundtrip_preserves_fields() {
        let text = r#"{
            "n": 4,
            "assignment_sets": {"1": [1, 2], "2": [3, 4]},
            "products": [[1, 3], [2, 4]],
            "objective": {"linear": {"2": -1}, "quadratic": {"2,4": 0.25}},
            "constraints": [{"linear": {"1": 1, "3": 1}, "sense": ">=", "rhs": 1}]
        }"#;
        let inst = parse_instance(text).unwrap();
        let again = parse_instance(&inst.to_json()).unwrap();
        assert_eq!(inst, again);
    }

    #[test]
    fn validate_ex1_ok_and_disjoint() {
        let report = ex1().validate();
        assert!(report.ok);
        assert!(report.is_disjoint);
    }

    #[test]
    fn validate_qap2_overlapping() {
        let report = qap2().validate();
        assert!(report.ok);
        assert!(!report.is_disjoint);
    }

    #[test]
    fn validate_flags_uncovered_variable() {
        let inst = BqpInstance::new(3, BTreeMap::from([(1, BTreeSet::from([1, 2]))]), vec![]);
        let report = inst.validate();
        assert!(!report.ok);
        assert!(report
            .violations
            .iter()
            .any(|v| v.code == ViolationCode::UncoveredVariable && v.message.contains("3")));
    }

    #[test]
    fn validate_flags_empty_set_and_range() {
        let inst = BqpInstance::new(
            2,
            BTreeMap::from([(1, BTreeSet::from([1, 2, 7])), (2, BTreeSet::new())]),
            vec![],
        );
        let report = inst.validate();
        assert!(!report.ok);
        let codes: Vec<ViolationCode> = report.violations.iter().map(|v| v.code).collect();
        assert!(codes.contains(&ViolationCode::EmptyAssignmentSet));
        assert!(codes.contains(&ViolationCode::IndexOutOfRange));
    }

    #[test]
    fn sets_containing_examples() {
        assert_eq!(ex1().sets_containing(1).unwrap(), BTreeSet::from([1]));
        assert_eq!(ex1().sets_containing(4).unwrap(), BTreeSet::from([2]));
        assert_eq!(qap2().sets_containing(1).unwrap(), BTreeSet::from([1, 3]));
        assert!(ex1().sets_containing(9).is_err());
    }

    #[test]
    fn disjoint_implies_unique_containing_set() {
        let inst = ex1();
        assert!(inst.validate().is_disjoint);
        for i in 1..=inst.n() {
            assert_eq!(inst.sets_containing(i).unwrap().len(), 1);
        }
    }

    #[test]
    fn normalize_pair_examples() {
        assert_eq!(normalize_pair(1, 3), Pair::new(1, 3));
        assert_eq!(normalize_pair(3, 1), Pair::new(1, 3));
        assert_eq!(normalize_pair(2, 2), Pair::new(2, 2));
    }

    #[test]
    fn preprocess_removes_diagonal() {
        let mut inst = BqpInstance::new(
            4,
            BTreeMap::from([(1, BTreeSet::from([1, 2])), (2, BTreeSet::from([3, 4]))]),
            vec![Pair::new(2, 2)],
        );
        inst = inst.with_quadratic_objective(BTreeMap::from([(Pair::new(2, 2), 3.0)]));
        let (reduced, log) = inst.preprocess_trivial();
        assert!(reduced.products().is_empty());
        assert_eq!(
            log,
            vec![Substitution {
                pair: Pair::new(2, 2),
                replacement: Replacement::Variable(2),
            }]
        );
        assert_eq!(reduced.linear_objective()[&2], 3.0);
        assert!(reduced.quadratic_objective().is_empty());
    }

    #[test]
    fn preprocess_removes_same_set_pair() {
        let inst = BqpInstance::new(
            4,
            BTreeMap::from([(1, BTreeSet::from([1, 2])), (2, BTreeSet::from([3, 4]))]),
            vec![Pair::new(1, 3), Pair::new(1, 2)],
        );
        let (reduced, log) = inst.preprocess_trivial();
        assert_eq!(reduced.products(), &[Pair::new(1, 3)]);
        assert_eq!(
            log,
            vec![Substitution {
                pair: Pair::new(1, 2),
                replacement: Replacement::Zero,
            }]
        );
    }

    #[test]
    fn preprocess_noop_on_ex1() {
        let (reduced, log) = ex1().preprocess_trivial();
        assert_eq!(reduced, ex1());
        assert!(log.is_empty());
    }

    #[test]
    fn preprocess_folds_constraint_coefficients() {
        let inst = BqpInstance::new(
            2,
            BTreeMap::from([(1, BTreeSet::from([1, 2]))]),
            vec![Pair::new(1, 1), Pair::new(1, 2)],
        )
        .with_extra_constraints(vec![LinearConstraint {
            linear: BTreeMap::from([(2, 1.0)]),
            quadratic: BTreeMap::from([(Pair::new(1, 1), 2.0), (Pair::new(1, 2), 5.0)]),
            sense: Sense::Ge,
            rhs: 1.0,
        }]);
        let (reduced, log) = inst.preprocess_trivial();
        assert_eq!(log.len(), 2);
        assert!(reduced.products().is_empty());
        let row = &reduced.extra_constraints()[0];
        assert!(row.quadratic.is_empty());
        assert_eq!(row.linear[&1], 2.0);
        assert_eq!(row.linear[&2], 1.0);
    }
}
