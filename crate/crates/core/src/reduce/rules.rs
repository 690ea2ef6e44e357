//! Reduction rules. Each proposes block partitions; every one is passed
//! through [`rule_split`], so a rule only fires when the gcd hypothesis holds.

use crate::graph::{induced_subgraph, is_cycle, GeneratorGraph};
use crate::monomial::{Monomial, SquareFreeIdeal};
use crate::rees::{product_unchecked, taylor_unchecked, IndexSequence};

use super::cert::{CertTerm, Certificate, RuleKind};
use super::split::{minus, multiplicity, repeat, rule_split, runs, sub_multisets, BlockPartition, RuleError};

/// Upper bound on hypothesis checks per rule and orientation.
const MAX_ATTEMPTS: usize = 4096;

type Blocks = Vec<(Vec<usize>, Vec<usize>)>;

/// Applies one rule to `T_{α,β}`.
pub fn apply_rule(
    ideal: &SquareFreeIdeal,
    alpha: &IndexSequence,
    beta: &IndexSequence,
    rule: RuleKind,
) -> Result<Certificate, RuleError> {
    if alpha.len() != beta.len() || alpha == beta || alpha.len() < 2 {
        return Err(RuleError::NotApplicable);
    }
    let pair = Pair { ideal, alpha, beta };
    match rule {
        RuleKind::SharedIndex => shared_index(&pair),
        RuleKind::PowerFactor => power_factor(&pair),
        RuleKind::ConstantRow => pair.first(RuleKind::ConstantRow, constant_row),
        RuleKind::BlockDisjoint => pair.first(RuleKind::BlockDisjoint, block_disjoint),
        RuleKind::TwoByTwo => two_by_two(&pair),
        RuleKind::ThreeByTwo => three_by_two(&pair),
        RuleKind::TreeLeaf => pair.first(RuleKind::TreeLeaf, tree_leaf),
        RuleKind::OddCycleStep => pair.first(RuleKind::OddCycleStep, odd_cycle_step),
        RuleKind::Split => Err(RuleError::NotApplicable),
    }
}

struct Pair<'a> {
    ideal: &'a SquareFreeIdeal,
    alpha: &'a IndexSequence,
    beta: &'a IndexSequence,
}

/// One orientation of the pair: `x` plays the role of `α`.
struct Side<'a> {
    ideal: &'a SquareFreeIdeal,
    x: &'a [usize],
    y: &'a [usize],
    graph: &'a GeneratorGraph,
}

impl Side<'_> {
    fn s(&self) -> usize {
        self.x.len()
    }

    fn f(&self, v: &[usize]) -> Monomial {
        product_unchecked(self.ideal, v)
    }

    fn in_x(&self, v: usize) -> bool {
        self.x.contains(&v)
    }

    fn in_y(&self, v: usize) -> bool {
        self.y.contains(&v) && !self.x.contains(&v)
    }

    fn coprime_to_y(&self, a: usize) -> bool {
        self.ideal.gen(a).is_coprime(&self.f(self.y))
    }

    /// `[(x − px, y − py), (px, py)]`, or the reverse order.
    fn peel(&self, px: Vec<usize>, py: Vec<usize>, peel_last: bool) -> Option<Blocks> {
        if px.is_empty() || px.len() >= self.s() || px.len() != py.len() {
            return None;
        }
        let rest = (minus(self.x, &px), minus(self.y, &py));
        Some(if peel_last {
            vec![rest, (px, py)]
        } else {
            vec![(px, py), rest]
        })
    }

    /// Peels `a^{l_a}` against every choice of `β' ⊆ y` when `f_a` is coprime to `f_y`.
    fn cross_isolated(&self, a: usize, out: &mut Vec<Blocks>) {
        let la = multiplicity(self.x, a);
        if la == 0 || la >= self.s() || !self.coprime_to_y(a) {
            return;
        }
        for bp in sub_multisets(self.y, la) {
            out.extend(self.peel(repeat(a, la), bp, true));
        }
    }
}

impl Pair<'_> {
    /// Runs `propose` in both orientations and returns the first partition
    /// that passes the gcd check.
    fn first(
        &self,
        rule: RuleKind,
        propose: fn(&Side<'_>, &mut Vec<Blocks>),
    ) -> Result<Certificate, RuleError> {
        let graph = induced_subgraph(self.ideal, self.alpha, self.beta);
        let mut err = RuleError::NotApplicable;
        for swapped in [false, true] {
            let (x, y) = self.oriented(swapped);
            let side = Side {
                ideal: self.ideal,
                x,
                y,
                graph: &graph,
            };
            let mut cands = Vec::new();
            propose(&side, &mut cands);
            match self.gate(cands, swapped, rule) {
                Ok(c) => return Ok(c),
                Err(e @ RuleError::HypothesisFails { .. }) => err = e,
                Err(_) => {}
            }
        }
        Err(err)
    }

    fn oriented(&self, swapped: bool) -> (&[usize], &[usize]) {
        if swapped {
            (self.beta.entries(), self.alpha.entries())
        } else {
            (self.alpha.entries(), self.beta.entries())
        }
    }

    /// Candidates are given as `(x-block, y-block)`.
    fn gate(&self, cands: Vec<Blocks>, swapped: bool, rule: RuleKind) -> Result<Certificate, RuleError> {
        let mut err = RuleError::NotApplicable;
        for blocks in cands.into_iter().take(MAX_ATTEMPTS) {
            let part = if swapped {
                BlockPartition::new(blocks.into_iter().map(|(x, y)| (y, x)).collect())
            } else {
                BlockPartition::new(blocks)
            };
            match rule_split(self.ideal, self.alpha, self.beta, &part, rule, swapped) {
                Ok(c) => return Ok(c),
                Err(e @ RuleError::HypothesisFails { .. }) => err = e,
                Err(_) => {}
            }
        }
        Err(err)
    }

    fn disjoint(&self) -> bool {
        !self.alpha.shares_index_with(self.beta)
    }
}

/// `T_{α,β} = T^c · T_{α−c, β−c}` for the common part `c`.
fn shared_index(p: &Pair<'_>) -> Result<Certificate, RuleError> {
    let (a, b) = (p.alpha.entries(), p.beta.entries());
    let mut common = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                common.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    if common.is_empty() {
        return Err(RuleError::NotApplicable);
    }
    let sa = IndexSequence::new(minus(a, &common)).expect("nonempty");
    let sb = IndexSequence::new(minus(b, &common)).expect("nonempty");
    Ok(Certificate {
        target: taylor_unchecked(p.ideal, p.alpha, p.beta),
        terms: vec![CertTerm {
            coef: p.ideal.one(),
            tfactor: common,
            sub: taylor_unchecked(p.ideal, &sa, &sb),
        }],
        rule: RuleKind::SharedIndex,
        swapped: false,
        cofactors: Vec::new(),
    })
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `α = α1^l`, `β = β1^l`: `T_{α,β} = Σ_i u^{l-1-i} v^i · T_{α1,β1}`
/// with `u = (f_β1/g1)·T^{α1}`, `v = (f_α1/g1)·T^{β1}`.
fn power_factor(p: &Pair<'_>) -> Result<Certificate, RuleError> {
    let ra = p.alpha.runs();
    let rb = p.beta.runs();
    let l = ra.iter().chain(&rb).fold(0, |g, &(_, c)| gcd(g, c));
    if l < 2 {
        return Err(RuleError::NotApplicable);
    }
    let shrink = |r: &[(usize, usize)]| {
        IndexSequence::from_runs(&r.iter().map(|&(i, c)| (i, c / l)).collect::<Vec<_>>()).expect("nonempty")
    };
    let (a1, b1) = (shrink(&ra), shrink(&rb));
    let sub = taylor_unchecked(p.ideal, &a1, &b1);
    let mut terms = Vec::with_capacity(l);
    for i in 0..l {
        let e_u = (l - 1 - i) as u32;
        let coef =
            &sub.lhs_coef.pow(e_u).expect("same ring") * &sub.rhs_coef.pow(i as u32).expect("same ring");
        let mut tfactor: Vec<usize> = std::iter::repeat_n(a1.entries(), l - 1 - i)
            .chain(std::iter::repeat_n(b1.entries(), i))
            .flatten()
            .copied()
            .collect();
        tfactor.sort_unstable();
        terms.push(CertTerm {
            coef,
            tfactor,
            sub: sub.clone(),
        });
    }
    Ok(Certificate {
        target: taylor_unchecked(p.ideal, p.alpha, p.beta),
        terms,
        rule: RuleKind::PowerFactor,
        swapped: false,
        cofactors: Vec::new(),
    })
}

/// `x = a^s`: peel `(a, b)` for each distinct `b` in `y`.
fn constant_row(side: &Side<'_>, out: &mut Vec<Blocks>) {
    if runs(side.x).len() != 1 {
        return;
    }
    let a = side.x[0];
    for (b, _) in runs(side.y) {
        out.extend(side.peel(vec![a], vec![b], true));
    }
}

/// Sub-blocks `A1 ⊆ x`, `B1 ⊆ y` with `f_{A1} ⊥ f_{B2}` and `f_{A2} ⊥ f_{B1}`,
/// then isolated vertices of `x`.
fn block_disjoint(side: &Side<'_>, out: &mut Vec<Blocks>) {
    let s = side.s();
    'outer: for l in 1..s {
        for a1 in sub_multisets(side.x, l) {
            let a2 = minus(side.x, &a1);
            let (fa1, fa2) = (side.f(&a1), side.f(&a2));
            for k in l..s {
                for b1 in sub_multisets(side.y, k) {
                    let b2 = minus(side.y, &b1);
                    if !fa1.is_coprime(&side.f(&b2)) || !fa2.is_coprime(&side.f(&b1)) {
                        continue;
                    }
                    if k == l {
                        out.push(vec![(a1.clone(), b1.clone()), (a2.clone(), b2)]);
                    } else {
                        for b1p in sub_multisets(&b1, l) {
                            let b1pp = minus(&b1, &b1p);
                            for a2p in sub_multisets(&a2, k - l) {
                                let a2pp = minus(&a2, &a2p);
                                out.push(vec![
                                    (a1.clone(), b1p.clone()),
                                    (a2p, b1pp.clone()),
                                    (a2pp, b2.clone()),
                                ]);
                            }
                        }
                    }
                    if out.len() >= MAX_ATTEMPTS {
                        break 'outer;
                    }
                }
            }
        }
    }
    for (a, _) in runs(side.x) {
        side.cross_isolated(a, out);
    }
}

/// Two distinct entries per side with unequal multiplicities on `y`.
fn two_by_two(p: &Pair<'_>) -> Result<Certificate, RuleError> {
    let s = p.alpha.len();
    let (ra, rb) = (p.alpha.runs(), p.beta.runs());
    if ra.len() != 2 || rb.len() != 2 || s < 3 || !p.disjoint() {
        return Err(RuleError::NotApplicable);
    }
    if ra.iter().chain(&rb).all(|&(_, c)| c == ra[0].1) {
        return power_factor(p).map(|c| Certificate {
            rule: RuleKind::TwoByTwo,
            ..c
        });
    }
    p.first(RuleKind::TwoByTwo, |side, out| {
        let (rx, ry) = (runs(side.x), runs(side.y));
        if ry[0].1 == ry[1].1 {
            return;
        }
        let b1 = if ry[0].1 > ry[1].1 { ry[0].0 } else { ry[1].0 };
        let top = rx.iter().map(|r| r.1).max().unwrap_or(0);
        for &(a1, c) in &rx {
            if c == top {
                out.extend(side.peel(vec![a1], vec![b1], true));
            }
        }
    })
}

/// Three distinct entries against two.
fn three_by_two(p: &Pair<'_>) -> Result<Certificate, RuleError> {
    let s = p.alpha.len();
    if s < 4 || !p.disjoint() {
        return Err(RuleError::NotApplicable);
    }
    let shape = |x: &IndexSequence, y: &IndexSequence| x.runs().len() == 3 && y.runs().len() == 2;
    if !shape(p.alpha, p.beta) && !shape(p.beta, p.alpha) {
        return Err(RuleError::NotApplicable);
    }
    let res = p.first(RuleKind::ThreeByTwo, |side, out| {
        let (rx, ry) = (runs(side.x), runs(side.y));
        if rx.len() != 3 || ry.len() != 2 {
            return;
        }
        for xs in permutations3(&rx) {
            let [(a1, l1), (a2, l2), (_, l3)] = xs;
            if !(l1 >= l2 && l2 >= l3) {
                continue;
            }
            for ys in [[ry[0], ry[1]], [ry[1], ry[0]]] {
                let [(b1, k1), (b2, k2)] = ys;
                if k1 < k2 {
                    continue;
                }
                if l1 + l2 > k1 {
                    let mut px = vec![a1, a2];
                    px.sort_unstable();
                    let mut py = vec![b1, b2];
                    py.sort_unstable();
                    out.extend(side.peel(px, py, true));
                } else if l1 > k2 {
                    out.extend(side.peel(vec![a1], vec![b1], true));
                }
            }
        }
    });
    if res.is_ok() {
        return res;
    }
    // remaining case: multiplicities (l, l, l) against (2l, l)
    let (rx, ry) = if shape(p.alpha, p.beta) {
        (p.alpha.runs(), p.beta.runs())
    } else {
        (p.beta.runs(), p.alpha.runs())
    };
    let l = rx[0].1;
    let mut ky: Vec<usize> = ry.iter().map(|r| r.1).collect();
    ky.sort_unstable();
    if rx.iter().all(|r| r.1 == l) && ky == [l, 2 * l] {
        if !s.is_multiple_of(3) {
            return Err(RuleError::InternalCase);
        }
        return power_factor(p).map(|c| Certificate {
            rule: RuleKind::ThreeByTwo,
            ..c
        });
    }
    res
}

fn permutations3<T: Copy>(v: &[T]) -> Vec<[T; 3]> {
    const P: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    P.iter().map(|p| [v[p[0]], v[p[1]], v[p[2]]]).collect()
}

/// A degree-1 vertex of the induced graph peels off with its neighbour.
fn tree_leaf(side: &Side<'_>, out: &mut Vec<Blocks>) {
    for (v, _) in runs(side.x) {
        if side.graph.degree(v) != 1 {
            continue;
        }
        let w = side.graph.neighbors(v)[0];
        if side.in_x(w) {
            side.cross_isolated(v, out);
        } else if side.in_y(w) {
            let l1 = multiplicity(side.x, v);
            let r1 = multiplicity(side.y, w);
            let p = l1.min(r1);
            out.extend(side.peel(repeat(v, p), repeat(w, p), true));
        }
    }
}

/// The induced graph is an odd cycle of length at least 5.
fn odd_cycle_step(side: &Side<'_>, out: &mut Vec<Blocks>) {
    let g = side.graph;
    if !is_cycle(g) || g.len() < 5 || g.len().is_multiple_of(2) {
        return;
    }
    let mul_x = |v| multiplicity(side.x, v);
    let mul_y = |v| multiplicity(side.y, v);
    for (a, _) in runs(side.x) {
        let nb = g.neighbors(a);
        if nb.iter().all(|&w| !side.in_y(w)) {
            side.cross_isolated(a, out);
            continue;
        }
        for (ap, b) in [(nb[0], nb[1]), (nb[1], nb[0])] {
            if !side.in_x(ap) || !side.in_y(b) {
                continue;
            }
            let (la, rb) = (mul_x(a), mul_y(b));
            if la >= rb {
                out.extend(side.peel(repeat(a, rb), repeat(b, rb), true));
                continue;
            }
            let other = g.neighbors(ap).into_iter().find(|&w| w != a).expect("cycle");
            if side.in_x(other) {
                side.cross_isolated(ap, out);
                continue;
            }
            let bp = other;
            let (lap, rbp) = (mul_x(ap), mul_y(bp));
            if lap >= rbp {
                out.extend(side.peel(repeat(ap, rbp), repeat(bp, rbp), true));
                continue;
            }
            let mut px = repeat(a, la);
            px.extend(repeat(ap, lap));
            px.sort_unstable();
            let mut py = repeat(b, la);
            py.extend(repeat(bp, lap));
            py.sort_unstable();
            out.extend(side.peel(px, py, true));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::demos;
    use crate::reduce::verify_certificate;

    fn seq(v: &[usize]) -> IndexSequence {
        IndexSequence::from_unsorted(v.to_vec()).unwrap()
    }

    fn fire(ideal: &SquareFreeIdeal, a: &[usize], b: &[usize], rule: RuleKind) -> Certificate {
        let c = apply_rule(ideal, &seq(a), &seq(b), rule).unwrap_or_else(|e| panic!("{rule}: {e}"));
        assert!(verify_certificate(ideal, &c), "{rule} certificate fails");
        c
    }

    #[test]
    fn shared_index_peels_the_common_part() {
        let ideal = demos::villarreal();
        let c = fire(&ideal, &[1, 1, 3], &[1, 2, 4], RuleKind::SharedIndex);
        assert_eq!(c.terms[0].tfactor, vec![1]);
        assert_eq!(c.terms[0].sub.degree(), 2);
    }

    #[test]
    fn power_factor_on_squares() {
        let ideal = demos::triangle();
        let c = fire(&ideal, &[1, 1], &[2, 2], RuleKind::PowerFactor);
        assert_eq!(c.terms.len(), 2);
        assert!(c.terms.iter().all(|t| t.sub.degree() == 1));
        assert_eq!(
            apply_rule(&ideal, &seq(&[1, 2]), &seq(&[3, 3]), RuleKind::PowerFactor),
            Err(RuleError::NotApplicable)
        );
    }

    #[test]
    fn constant_row_on_the_path() {
        let ideal = demos::path();
        let c = fire(&ideal, &[2, 2], &[1, 3], RuleKind::ConstantRow);
        assert!(c.max_sub_degree() < 2);
    }

    #[test]
    fn tree_leaf_on_the_path() {
        let ideal = demos::path();
        fire(&ideal, &[1, 3, 3], &[2, 2, 2], RuleKind::TreeLeaf);
    }

    #[test]
    fn odd_cycle_step_on_the_five_cycle() {
        let ideal = demos::five_cycle();
        // α = (1,3), β = (2,4,…) padded so the induced graph is the 5-cycle
        let c = fire(&ideal, &[1, 1, 3], &[2, 4, 5], RuleKind::OddCycleStep);
        assert!(c.max_sub_degree() < 3);
    }

    #[test]
    fn villarreal_degree_two_is_stuck_everywhere() {
        let ideal = demos::villarreal();
        for rule in RuleKind::PRIORITY {
            assert!(
                apply_rule(&ideal, &seq(&[1, 3]), &seq(&[2, 4]), rule).is_err(),
                "{rule} fired"
            );
        }
    }
}
