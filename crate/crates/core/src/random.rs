//! Seeded random ideals for the property suites and the `random` command.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::monomial::{Monomial, SquareFreeIdeal, VariableTable};
use crate::reduce::{apply_rule, Certificate, RuleKind};
use crate::rees::IndexSequence;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Shape {
    General,
    Forest,
    OddCycle,
    EvenCycle,
}

impl Shape {
    pub fn parse(s: &str) -> Option<Shape> {
        match s {
            "general" => Some(Shape::General),
            "forest" => Some(Shape::Forest),
            "odd-cycle" => Some(Shape::OddCycle),
            "even-cycle" => Some(Shape::EvenCycle),
            _ => None,
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A square-free monomial in `nvars` variables, each present with
/// probability `density`.
pub fn random_monomial<R: Rng>(rng: &mut R, nvars: usize, density: f64) -> Monomial {
    let exps: Vec<u16> = (0..nvars).map(|_| u16::from(rng.random_bool(density))).collect();
    Monomial::from_exponents(&exps)
}

/// `n` generators over at most `max_vars` variables, redrawn until the set
/// is a minimal generating set.
pub fn random_general<R: Rng>(rng: &mut R, n: usize, max_vars: usize) -> SquareFreeIdeal {
    loop {
        let nvars = rng.random_range(n.min(max_vars).max(2)..=max_vars.max(2));
        let density = rng.random_range(0.25..0.6);
        let gens: Vec<Monomial> = (0..n).map(|_| random_monomial(rng, nvars, density)).collect();
        if let Ok(ideal) = SquareFreeIdeal::new(VariableTable::numbered("x", nvars), gens) {
            return ideal;
        }
    }
}

/// Generator graph given by `edges` on `n` vertices: each edge gets one or
/// two fresh shared variables, each vertex one or two private ones.
pub fn ideal_from_graph<R: Rng>(rng: &mut R, n: usize, edges: &[(usize, usize)]) -> SquareFreeIdeal {
    let mut support: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut next = 0;
    for &(a, b) in edges {
        for _ in 0..rng.random_range(1..=2) {
            support[a].push(next);
            support[b].push(next);
            next += 1;
        }
    }
    for s in support.iter_mut() {
        for _ in 0..rng.random_range(1..=2) {
            s.push(next);
            next += 1;
        }
    }
    let gens = support
        .iter()
        .map(|s| {
            let mut e = vec![0u16; next];
            for &v in s {
                e[v] = 1;
            }
            Monomial::from_exponents(&e)
        })
        .collect();
    SquareFreeIdeal::new(VariableTable::numbered("x", next), gens).expect("private variables keep it minimal")
}

/// Random forest on `n` vertices; each vertex attaches to an earlier one or
/// starts a new tree.
pub fn forest_edges<R: Rng>(rng: &mut R, n: usize) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for v in 1..n {
        if rng.random_bool(0.8) {
            edges.push((rng.random_range(0..v), v));
        }
    }
    shuffle_labels(rng, n, edges)
}

/// A cycle of length `c` with trees hung on it, `n` vertices in all.
pub fn unicyclic_edges<R: Rng>(rng: &mut R, n: usize, c: usize) -> Vec<(usize, usize)> {
    assert!(c >= 3 && c <= n);
    let mut edges: Vec<(usize, usize)> = (0..c).map(|i| (i, (i + 1) % c)).collect();
    for v in c..n {
        edges.push((rng.random_range(0..v), v));
    }
    shuffle_labels(rng, n, edges)
}

fn shuffle_labels<R: Rng>(rng: &mut R, n: usize, edges: Vec<(usize, usize)>) -> Vec<(usize, usize)> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    edges.into_iter().map(|(a, b)| (perm[a], perm[b])).collect()
}

/// One ideal of the given shape with `n` generators.
pub fn random_shaped<R: Rng>(rng: &mut R, shape: Shape, n: usize) -> SquareFreeIdeal {
    match shape {
        Shape::General => random_general(rng, n, 8),
        Shape::Forest => {
            let e = forest_edges(rng, n);
            ideal_from_graph(rng, n, &e)
        }
        Shape::OddCycle => {
            let n = n.max(3);
            let odd: Vec<usize> = (3..=n).step_by(2).collect();
            let c = odd[rng.random_range(0..odd.len())];
            let e = unicyclic_edges(rng, n, c);
            ideal_from_graph(rng, n, &e)
        }
        Shape::EvenCycle => {
            let n = n.max(4);
            let even: Vec<usize> = (4..=n).step_by(2).collect();
            let c = even[rng.random_range(0..even.len())];
            let e = unicyclic_edges(rng, n, c);
            ideal_from_graph(rng, n, &e)
        }
    }
}

/// `count` ideals from one seed, `n` drawn from `n_range` for each.
pub fn batch(
    seed: u64,
    shape: Shape,
    count: usize,
    n_range: std::ops::RangeInclusive<usize>,
) -> Vec<SquareFreeIdeal> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let n = r.random_range(n_range.clone());
            random_shaped(&mut r, shape, n)
        })
        .collect()
}

/// An ideal, a pair of sequences, and the certificate a rule produced for it.
#[derive(Debug, Clone)]
pub struct RuleInstance {
    pub ideal: SquareFreeIdeal,
    pub alpha: IndexSequence,
    pub beta: IndexSequence,
    pub cert: Certificate,
}

/// Length-`s` sorted sequence using every index of `idx` at least once.
fn spread<R: Rng>(rng: &mut R, idx: &[usize], s: usize) -> Vec<usize> {
    let mut v = idx.to_vec();
    while v.len() < s {
        v.push(idx[rng.random_range(0..idx.len())]);
    }
    v.sort_unstable();
    v
}

/// Disjoint random index sets of sizes `dx` and `dy` from `1..=n`.
fn disjoint_sets<R: Rng>(rng: &mut R, n: usize, dx: usize, dy: usize) -> (Vec<usize>, Vec<usize>) {
    let mut all: Vec<usize> = (1..=n).collect();
    all.shuffle(rng);
    (all[..dx].to_vec(), all[dx..dx + dy].to_vec())
}

fn random_graph_ideal<R: Rng>(rng: &mut R, n: usize, p: f64) -> SquareFreeIdeal {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.random_bool(p) {
                edges.push((a, b));
            }
        }
    }
    ideal_from_graph(rng, n, &edges)
}

/// A random pair shaped for `rule`, on an ideal shaped for `rule`.
fn propose<R: Rng>(rng: &mut R, rule: RuleKind, ideal: &SquareFreeIdeal) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = ideal.len();
    let pair = |rng: &mut R, dx: usize, dy: usize, s: usize| {
        let (x, y) = disjoint_sets(rng, n, dx, dy);
        (spread(rng, &x, s), spread(rng, &y, s))
    };
    Some(match rule {
        RuleKind::SharedIndex => {
            let s = rng.random_range(2..=4);
            let (mut a, mut b) = pair(rng, 1.max(n / 2).min(s), 1, s);
            b[0] = a[rng.random_range(0..a.len())];
            a.sort_unstable();
            b.sort_unstable();
            (a, b)
        }
        RuleKind::PowerFactor => {
            let m = rng.random_range(1..=2).min(n / 2);
            let l = rng.random_range(2..=3);
            let (a, b) = pair(rng, m, m, m);
            let rep = |v: &[usize]| {
                let mut r: Vec<usize> = v.iter().flat_map(|&i| std::iter::repeat_n(i, l)).collect();
                r.sort_unstable();
                r
            };
            (rep(&a), rep(&b))
        }
        RuleKind::ConstantRow => {
            let s = rng.random_range(2..=4);
            let dy = rng.random_range(1..=s.min(n - 1));
            let (a, b) = pair(rng, 1, dy, s);
            if rng.random_bool(0.5) {
                (a, b)
            } else {
                (b, a)
            }
        }
        RuleKind::TwoByTwo => {
            let s = rng.random_range(3..=5);
            pair(rng, 2, 2, s)
        }
        RuleKind::ThreeByTwo => {
            let s = rng.random_range(4..=5);
            let p = pair(rng, 3, 2, s);
            if rng.random_bool(0.5) {
                p
            } else {
                (p.1, p.0)
            }
        }
        RuleKind::OddCycleStep => {
            let mut v: Vec<usize> = (1..=n).collect();
            v.shuffle(rng);
            let cut = rng.random_range(1..n);
            let s = cut.max(n - cut) + rng.random_range(0..=1);
            (spread(rng, &v[..cut], s), spread(rng, &v[cut..], s))
        }
        RuleKind::BlockDisjoint | RuleKind::TreeLeaf => {
            let s = rng.random_range(2..=4);
            let dx = rng.random_range(1..=s.min(n - 1));
            let dy = rng.random_range(1..=s.min(n - dx));
            pair(rng, dx, dy, s)
        }
        RuleKind::Split => return None,
    })
}

fn ideal_for<R: Rng>(rng: &mut R, rule: RuleKind) -> SquareFreeIdeal {
    match rule {
        RuleKind::ThreeByTwo => random_general(rng, 5, 8),
        RuleKind::TwoByTwo => {
            let n = rng.random_range(4..=5);
            random_general(rng, n, 8)
        }
        RuleKind::TreeLeaf => {
            let n = rng.random_range(3..=6);
            let e = forest_edges(rng, n);
            ideal_from_graph(rng, n, &e)
        }
        RuleKind::OddCycleStep => {
            let n = if rng.random_bool(0.7) { 5 } else { 7 };
            let e = unicyclic_edges(rng, n, n);
            ideal_from_graph(rng, n, &e)
        }
        RuleKind::BlockDisjoint => {
            let n = rng.random_range(4..=6);
            random_graph_ideal(rng, n, 0.4)
        }
        _ => {
            let n = rng.random_range(3..=5);
            random_general(rng, n, 8)
        }
    }
}

/// Up to `count` instances where `rule` fires, drawn from `seed`; gives up
/// after `count * 200` proposals.
pub fn rule_instances(seed: u64, rule: RuleKind, count: usize) -> Vec<RuleInstance> {
    let mut r = rng(seed);
    let mut out = Vec::with_capacity(count);
    let mut tries = 0;
    while out.len() < count && tries < count * 200 {
        let ideal = ideal_for(&mut r, rule);
        for _ in 0..16 {
            tries += 1;
            let Some((a, b)) = propose(&mut r, rule, &ideal) else {
                return out;
            };
            if a == b {
                continue;
            }
            let alpha = IndexSequence::new(a).expect("sorted");
            let beta = IndexSequence::new(b).expect("sorted");
            if let Ok(cert) = apply_rule(&ideal, &alpha, &beta, rule) {
                out.push(RuleInstance {
                    ideal: ideal.clone(),
                    alpha,
                    beta,
                    cert,
                });
                if out.len() == count {
                    break;
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, classify_component, components, ComponentClass};

    #[test]
    fn seeds_are_deterministic() {
        assert_eq!(
            batch(7, Shape::General, 5, 2..=5),
            batch(7, Shape::General, 5, 2..=5)
        );
        assert_ne!(
            batch(7, Shape::General, 5, 2..=5),
            batch(8, Shape::General, 5, 2..=5)
        );
    }

    #[test]
    fn general_ideals_stay_small() {
        for ideal in batch(1, Shape::General, 50, 2..=5) {
            assert!(ideal.nvars() <= 8);
            assert!((2..=5).contains(&ideal.len()));
        }
    }

    #[test]
    fn shaped_ideals_have_the_requested_graph() {
        for ideal in batch(2, Shape::Forest, 30, 1..=7) {
            let g = build_graph(&ideal);
            for c in components(&g) {
                assert_eq!(classify_component(&g, &c), ComponentClass::Forest);
            }
        }
        for ideal in batch(3, Shape::OddCycle, 30, 3..=7) {
            let g = build_graph(&ideal);
            let classes: Vec<_> = components(&g).iter().map(|c| classify_component(&g, c)).collect();
            assert!(classes
                .iter()
                .any(|c| matches!(c, ComponentClass::UniqueOddCycle { .. })));
            assert!(classes.iter().all(|c| c.is_linear_type_shape()));
        }
        for ideal in batch(4, Shape::EvenCycle, 30, 4..=7) {
            let g = build_graph(&ideal);
            assert!(components(&g)
                .iter()
                .any(|c| matches!(classify_component(&g, c), ComponentClass::UniqueEvenCycle { .. })));
        }
    }
}
