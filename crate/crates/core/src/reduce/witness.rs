//! Separating variables that certify a Taylor binomial is not generated in
//! lower degree.

use serde::{Deserialize, Serialize};

use crate::graph::{build_graph, even_closed_walk, WalkWitness};
use crate::monomial::SquareFreeIdeal;
use crate::rees::IndexSequence;

/// `T_{α,β}` with `α = (a_1..a_s)` distinct and `β = (b1^{s-1}, b2)`.
/// `xvars[i]` divides every `f_{a_j}` (`j ≠ i`) and `f_{b1}` but neither
/// `f_{a_i}` nor `f_{b2}`; `zvars[i]` divides `f_{a_i}` and `f_{b2}` but no
/// other `f_{a_j}` and not `f_{b1}`. Variable indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrredundancyWitness {
    pub avec: Vec<usize>,
    pub b1: usize,
    pub b2: usize,
    pub xvars: Vec<usize>,
    pub zvars: Vec<usize>,
}

impl IrredundancyWitness {
    pub fn degree(&self) -> usize {
        self.avec.len()
    }

    pub fn alpha(&self) -> IndexSequence {
        IndexSequence::from_unsorted(self.avec.clone()).expect("nonempty")
    }

    pub fn beta(&self) -> IndexSequence {
        let mut b = vec![self.b1; self.degree() - 1];
        b.push(self.b2);
        IndexSequence::from_unsorted(b).expect("nonempty")
    }

    /// Re-checks every divisibility condition.
    pub fn check(&self, ideal: &SquareFreeIdeal) -> bool {
        let s = self.avec.len();
        if s == 0 || self.xvars.len() != s || self.zvars.len() != s || self.b1 == self.b2 {
            return false;
        }
        let all: Vec<usize> = self.avec.iter().copied().chain([self.b1, self.b2]).collect();
        if all.iter().any(|&i| i == 0 || i > ideal.len()) {
            return false;
        }
        let mut sorted = all.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != s + 2 {
            return false;
        }
        (0..s).all(|i| {
            self.xvars[i] < ideal.nvars()
                && self.zvars[i] < ideal.nvars()
                && x_ok(ideal, &self.avec, self.b1, self.b2, i, self.xvars[i])
                && z_ok(ideal, &self.avec, self.b1, self.b2, i, self.zvars[i])
        })
    }

    /// `y_{b1} → y_{a1} → y_{b1} → … → y_{b2} → y_{a_s} → y_{b1}` in the
    /// generator graph.
    pub fn closed_walk(&self, ideal: &SquareFreeIdeal) -> Option<WalkWitness> {
        even_closed_walk(&build_graph(ideal), self.b1, self.b2, &self.avec).ok()
    }

    pub fn render(&self, ideal: &SquareFreeIdeal) -> String {
        let names = |v: &[usize]| {
            v.iter()
                .map(|&i| ideal.vars().name(i).to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        format!(
            "alpha={} beta={} x=({}) z=({})",
            self.alpha(),
            self.beta(),
            names(&self.xvars),
            names(&self.zvars)
        )
    }
}

fn has(ideal: &SquareFreeIdeal, g: usize, var: usize) -> bool {
    ideal.gen(g).exponent(var) > 0
}

fn x_ok(ideal: &SquareFreeIdeal, avec: &[usize], b1: usize, b2: usize, i: usize, v: usize) -> bool {
    has(ideal, b1, v)
        && !has(ideal, b2, v)
        && !has(ideal, avec[i], v)
        && avec.iter().enumerate().all(|(j, &a)| j == i || has(ideal, a, v))
}

fn z_ok(ideal: &SquareFreeIdeal, avec: &[usize], b1: usize, b2: usize, i: usize, v: usize) -> bool {
    has(ideal, b2, v)
        && !has(ideal, b1, v)
        && has(ideal, avec[i], v)
        && avec.iter().enumerate().all(|(j, &a)| j == i || !has(ideal, a, v))
}

fn fit(ideal: &SquareFreeIdeal, avec: &[usize], b1: usize, b2: usize) -> Option<IrredundancyWitness> {
    let s = avec.len();
    let pick = |ok: &dyn Fn(usize, usize) -> bool| -> Option<Vec<usize>> {
        (0..s).map(|i| (0..ideal.nvars()).find(|&v| ok(i, v))).collect()
    };
    let xvars = pick(&|i, v| x_ok(ideal, avec, b1, b2, i, v))?;
    let zvars = pick(&|i, v| z_ok(ideal, avec, b1, b2, i, v))?;
    Some(IrredundancyWitness {
        avec: avec.to_vec(),
        b1,
        b2,
        xvars,
        zvars,
    })
}

/// Looks for the witness shape in `T_{α,β}` in either orientation.
pub fn irredundancy_witness(
    ideal: &SquareFreeIdeal,
    alpha: &IndexSequence,
    beta: &IndexSequence,
) -> Option<IrredundancyWitness> {
    let s = alpha.len();
    if s == 0 || beta.len() != s || alpha.shares_index_with(beta) {
        return None;
    }
    for (x, y) in [(alpha, beta), (beta, alpha)] {
        if x.distinct().len() != s {
            continue;
        }
        let runs = y.runs();
        let labelings: Vec<(usize, usize)> = match runs.as_slice() {
            [(p, 1), (q, 1)] if s == 2 => vec![(*p, *q), (*q, *p)],
            [(p, c), (q, 1)] if *c == s - 1 => vec![(*p, *q)],
            [(p, 1), (q, c)] if *c == s - 1 => vec![(*q, *p)],
            _ => continue,
        };
        for (b1, b2) in labelings {
            if let Some(w) = fit(ideal, x.entries(), b1, b2) {
                return Some(w);
            }
        }
    }
    None
}

/// Every witness of degree `s`, one per choice of `{a_i}`, `b1`, `b2`.
pub fn witnesses_of_degree(ideal: &SquareFreeIdeal, s: usize) -> Vec<IrredundancyWitness> {
    let n = ideal.len();
    let mut out = Vec::new();
    if s == 0 || s + 2 > n {
        return out;
    }
    for b1 in 1..=n {
        for b2 in 1..=n {
            if b1 == b2 {
                continue;
            }
            let rest: Vec<usize> = (1..=n).filter(|&i| i != b1 && i != b2).collect();
            for avec in combinations(&rest, s) {
                if let Some(w) = fit(ideal, &avec, b1, b2) {
                    out.push(w);
                }
            }
        }
    }
    out
}

fn combinations(v: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if v.len() < k {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (i, &x) in v.iter().enumerate() {
        for mut tail in combinations(&v[i + 1..], k - 1) {
            tail.insert(0, x);
            out.push(tail);
        }
    }
    out
}
