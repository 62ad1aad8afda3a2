//! Shared fixtures and seeded instance generators for the integration and
//! acceptance suites.
// Each test binary compiles this module separately and uses a different
// subset of it.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use complin::{BqpInstance, Pair};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

pub fn ex1() -> BqpInstance {
    BqpInstance::new(
        4,
        BTreeMap::from([(1, BTreeSet::from([1, 2])), (2, BTreeSet::from([3, 4]))]),
        vec![Pair::new(1, 3)],
    )
}

pub fn qap2() -> BqpInstance {
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

/// A_1 = {1..p}, A_2 = {p+1..p+q}, E = all cross pairs.
pub fn dense_cross(p: usize, q: usize) -> BqpInstance {
    let a1: BTreeSet<usize> = (1..=p).collect();
    let a2: BTreeSet<usize> = (p + 1..=p + q).collect();
    let products: Vec<Pair> = a1
        .iter()
        .flat_map(|&i| a2.iter().map(move |&j| Pair::new(i, j)))
        .collect();
    BqpInstance::new(
        p + q,
        BTreeMap::from([(1, a1), (2, a2)]),
        products,
    )
}

fn random_products(rng: &mut ChaCha8Rng, n: usize, max_e: usize) -> Vec<Pair> {
    let count = rng.gen_range(0..=max_e);
    let mut set = BTreeSet::new();
    for _ in 0..count {
        let i = rng.gen_range(1..=n);
        let j = rng.gen_range(1..=n);
        set.insert(Pair::new(i, j));
    }
    set.into_iter().collect()
}

/// Assignment sets partition 1..=n: |K| ≤ max_k sets of size ≥ min_size,
/// total ≤ max_n, members shuffled.
pub fn random_disjoint(
    rng: &mut ChaCha8Rng,
    max_n: usize,
    max_k: usize,
    min_size: usize,
    max_e: usize,
) -> BqpInstance {
    let max_k_feasible = (max_n / min_size).max(1).min(max_k);
    let k = rng.gen_range(1..=max_k_feasible);
    let mut sizes = vec![min_size; k];
    let budget = max_n - min_size * k;
    for _ in 0..rng.gen_range(0..=budget) {
        let slot = rng.gen_range(0..k);
        sizes[slot] += 1;
    }
    let n: usize = sizes.iter().sum();
    let mut vars: Vec<usize> = (1..=n).collect();
    vars.shuffle(rng);
    let mut sets = BTreeMap::new();
    let mut cursor = 0;
    for (idx, &size) in sizes.iter().enumerate() {
        let members: BTreeSet<usize> = vars[cursor..cursor + size].iter().copied().collect();
        sets.insert(idx + 1, members);
        cursor += size;
    }
    let products = random_products(rng, n, max_e);
    BqpInstance::new(n, sets, products)
}

/// The 200 disjoint instances the acceptance gate checks closure
/// correctness on: n <= 12, |K| <= 4, |A_k| >= 2, |E| <= 10.
pub fn corpus_disjoint_200() -> Vec<BqpInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    (0..200).map(|_| random_disjoint(&mut rng, 12, 4, 2, 10)).collect()
}

/// The 50 disjoint instances for the exact-solver and TU criteria;
/// rejection keeps |N|*|K| <= 24 so branch and bound stays cheap.
pub fn corpus_disjoint_50() -> Vec<BqpInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut out = Vec::with_capacity(50);
    while out.len() < 50 {
        let inst = random_disjoint(&mut rng, 12, 4, 1, 8);
        if inst.n() * inst.assignment_sets().len() <= 24 {
            out.push(inst);
        }
    }
    out
}

/// The 100 overlapping instances for the heuristic-validity criterion.
pub fn corpus_overlapping_100() -> Vec<BqpInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    (0..100).map(|_| random_overlapping(&mut rng, 10, 6)).collect()
}

/// Covering but not necessarily partitioning sets; at least one variable is
/// forced into two sets.
pub fn random_overlapping(rng: &mut ChaCha8Rng, max_n: usize, max_e: usize) -> BqpInstance {
    let n = rng.gen_range(4..=max_n);
    let k = rng.gen_range(2..=4);
    let mut sets: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for idx in 1..=k {
        let size = rng.gen_range(2..=n.min(4));
        let members: BTreeSet<usize> = rand::seq::index::sample(rng, n, size)
            .iter()
            .map(|v| v + 1)
            .collect();
        sets.insert(idx, members);
    }
    for v in 1..=n {
        if !sets.values().any(|s| s.contains(&v)) {
            let target = rng.gen_range(1..=k);
            sets.get_mut(&target).expect("set exists").insert(v);
        }
    }
    let disjoint = {
        let mut seen = BTreeSet::new();
        sets.values().flatten().all(|&v| seen.insert(v))
    };
    if disjoint {
        let v = rng.gen_range(1..=n);
        if let Some((_, members)) = sets.iter_mut().find(|(_, s)| !s.contains(&v)) {
            members.insert(v);
        }
    }
    let products = random_products(rng, n, max_e);
    BqpInstance::new(n, sets, products)
}
