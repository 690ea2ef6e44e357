//! Membership of pure-difference binomials by monomial rewriting.
//!
//! Every rule `c1·T_α ↔ c2·T_β` built from a Taylor binomial preserves the
//! image of a monomial under `T_i ↦ f_i t`. The monomials reachable from `u`
//! therefore all lie in the finite fiber over the image of `u`: the
//! monomials `(M/f_γ)·T_γ` with `|γ| = s` and `f_γ | M`. Two of them differ
//! by one application of a layer-`j` rule (times a monomial) exactly when
//! their index multisets differ in `j` positions, so membership modulo
//! layers `1..=k` is connectivity in the fiber under moves of size `≤ k`.
//!
//! [`congruent`] is the generic search over an explicit rule list, bounded
//! by a total-degree cap. [`member_lower`] uses the fiber description
//! directly. Both return `No` only after exhausting the reachable set.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;
use thiserror::Error;

use crate::monomial::{Exps, Monomial, SquareFreeIdeal};
use crate::par;
use crate::rees::{taylor_layer, taylor_unchecked, IndexSequence, ReesBinomial, RtMonomial};

/// Cap slack above `deg(u)` for each retry.
pub const CAP_LADDER: [u32; 3] = [4, 8, 12];
pub const DEFAULT_MAX_STATES: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Total-degree slack: every intermediate monomial must have total
    /// degree at most `deg(u) + cap_slack`.
    pub cap_slack: u32,
    /// Visited-state budget; exceeding it yields `Unknown`.
    pub max_states: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            cap_slack: CAP_LADDER[0],
            max_states: DEFAULT_MAX_STATES,
        }
    }
}

impl Limits {
    pub fn with_slack(cap_slack: u32) -> Self {
        Limits {
            cap_slack,
            ..Limits::default()
        }
    }

    /// This rung followed by two escalations (`+4`, `+8` slack, doubled budget).
    pub fn ladder(self) -> [Limits; 3] {
        [
            self,
            Limits {
                cap_slack: self.cap_slack + 4,
                max_states: self.max_states * 2,
            },
            Limits {
                cap_slack: self.cap_slack + 8,
                max_states: self.max_states * 4,
            },
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("cap {cap} is below the total degree {degree} of the start monomial")]
    CapBelowDegree { cap: u32, degree: u32 },
    #[error("monomials live in different rings")]
    ShapeMismatch,
}

/// An unordered pair of monomials, applied in both directions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RewriteRule {
    pub left: RtMonomial,
    pub right: RtMonomial,
}

impl RewriteRule {
    pub fn from_binomial(b: &ReesBinomial, n: usize) -> Self {
        RewriteRule {
            left: b.lhs(n),
            right: b.rhs(n),
        }
    }

    pub fn degree(&self) -> u32 {
        self.left.t_degree()
    }
}

/// Rules for every Taylor binomial of T-degree `1..=k`.
pub fn layer_rules(ideal: &SquareFreeIdeal, k: usize) -> Vec<RewriteRule> {
    let n = ideal.len();
    (1..=k)
        .flat_map(|s| taylor_layer(ideal, s))
        .map(|b| RewriteRule::from_binomial(&b, n))
        .collect()
}

/// `from = multiplier·left`, `to = multiplier·right` (or the reverse when
/// `forward` is false).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteStep {
    pub from: RtMonomial,
    pub to: RtMonomial,
    pub rule: RewriteRule,
    pub multiplier: RtMonomial,
    pub forward: bool,
}

impl RewriteStep {
    pub fn is_valid(&self) -> bool {
        let (a, b) = if self.forward {
            (&self.rule.left, &self.rule.right)
        } else {
            (&self.rule.right, &self.rule.left)
        };
        self.multiplier.mul(a) == self.from && self.multiplier.mul(b) == self.to
    }

    pub fn reversed(&self) -> RewriteStep {
        RewriteStep {
            from: self.to.clone(),
            to: self.from.clone(),
            rule: self.rule.clone(),
            multiplier: self.multiplier.clone(),
            forward: !self.forward,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Yes(Vec<RewriteStep>),
    /// The reachable set was explored completely.
    No,
    /// A cap or budget cut the search short.
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VerdictKind {
    Yes,
    No,
    Unknown,
}

impl Verdict {
    pub fn kind(&self) -> VerdictKind {
        match self {
            Verdict::Yes(_) => VerdictKind::Yes,
            Verdict::No => VerdictKind::No,
            Verdict::Unknown => VerdictKind::Unknown,
        }
    }

    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes(_))
    }

    pub fn chain(&self) -> Option<&[RewriteStep]> {
        match self {
            Verdict::Yes(c) => Some(c),
            _ => None,
        }
    }
}

/// Checks that `chain` walks from `u` to `v` one valid step at a time.
pub fn replay(u: &RtMonomial, v: &RtMonomial, chain: &[RewriteStep]) -> bool {
    let mut cur = u;
    for step in chain {
        if &step.from != cur || !step.is_valid() {
            return false;
        }
        cur = &step.to;
    }
    cur == v
}

/// Every monomial obtained by one application of `rule` (either side) to `w`.
pub fn rewrite_step(w: &RtMonomial, rule: &RewriteRule) -> Vec<RtMonomial> {
    let mut out = Vec::new();
    for (side, other) in [(&rule.left, &rule.right), (&rule.right, &rule.left)] {
        if let Some(q) = w.try_div(side) {
            out.push(q.mul(other));
        }
    }
    out
}

type Parents<K> = HashMap<K, Option<(K, RewriteStep)>>;

fn trace<K: Clone + Eq + std::hash::Hash>(map: &Parents<K>, end: &K) -> Vec<RewriteStep> {
    let mut steps = Vec::new();
    let mut cur = end.clone();
    while let Some(Some((prev, step))) = map.get(&cur) {
        steps.push(step.clone());
        cur = prev.clone();
    }
    steps.reverse();
    steps
}

/// Joins the two half-paths at `meet`: the `u` side is stored forwards, the
/// `v` side must be reversed.
fn join<K: Clone + Eq + std::hash::Hash>(
    from_u: &Parents<K>,
    from_v: &Parents<K>,
    meet: &K,
) -> Vec<RewriteStep> {
    let mut chain = trace(from_u, meet);
    let tail = trace(from_v, meet);
    chain.extend(tail.iter().rev().map(RewriteStep::reversed));
    chain
}

/// Bidirectional breadth-first search over `rules` with total-degree `cap`.
pub fn congruent(
    ideal: &SquareFreeIdeal,
    rules: &[RewriteRule],
    u: &RtMonomial,
    v: &RtMonomial,
    cap: u32,
    max_states: usize,
) -> Result<Verdict, OracleError> {
    if u.xpart().nvars() != v.xpart().nvars() || u.tpart().len() != v.tpart().len() {
        return Err(OracleError::ShapeMismatch);
    }
    for w in [u, v] {
        let degree = w.total_degree(ideal);
        if cap < degree {
            return Err(OracleError::CapBelowDegree { cap, degree });
        }
    }
    if u == v {
        return Ok(Verdict::Yes(Vec::new()));
    }

    let mut maps: [Parents<RtMonomial>; 2] = [HashMap::new(), HashMap::new()];
    maps[0].insert(u.clone(), None);
    maps[1].insert(v.clone(), None);
    let mut frontiers = [vec![u.clone()], vec![v.clone()]];
    let mut pruned = false;

    loop {
        // expand the smaller frontier; ties go to the u side
        let side = if frontiers[0].len() <= frontiers[1].len() {
            0
        } else {
            1
        };
        if frontiers[side].is_empty() {
            return Ok(if pruned { Verdict::Unknown } else { Verdict::No });
        }
        let current = std::mem::take(&mut frontiers[side]);
        let mut next = Vec::new();
        for w in &current {
            for rule in rules {
                for (fwd, src, dst) in [(true, &rule.left, &rule.right), (false, &rule.right, &rule.left)] {
                    let Some(mult) = w.try_div(src) else { continue };
                    let w2 = mult.mul(dst);
                    if w2.total_degree(ideal) > cap {
                        pruned = true;
                        continue;
                    }
                    if maps[side].contains_key(&w2) {
                        continue;
                    }
                    let step = RewriteStep {
                        from: w.clone(),
                        to: w2.clone(),
                        rule: rule.clone(),
                        multiplier: mult,
                        forward: fwd,
                    };
                    maps[side].insert(w2.clone(), Some((w.clone(), step)));
                    if maps[1 - side].contains_key(&w2) {
                        let (mu, mv) = (&maps[0], &maps[1]);
                        return Ok(Verdict::Yes(join(mu, mv, &w2)));
                    }
                    next.push(w2);
                    if maps[0].len() + maps[1].len() > max_states {
                        return Ok(Verdict::Unknown);
                    }
                }
            }
        }
        frontiers[side] = next;
    }
}

/// The fiber over `image·t^s`: index multisets (as count vectors) `γ` with
/// `|γ| = s` and `f_γ | image`.
pub(crate) struct Fiber<'a> {
    ideal: &'a SquareFreeIdeal,
    image: Exps,
    s: usize,
}

impl<'a> Fiber<'a> {
    pub(crate) fn new(ideal: &'a SquareFreeIdeal, image: &Monomial, s: usize) -> Self {
        Fiber {
            ideal,
            image: image.exps.clone(),
            s,
        }
    }

    fn gen(&self, i: usize) -> &[u16] {
        &self.ideal.gens()[i].exps
    }

    /// `image / f_γ`; `None` if `f_γ` does not divide the image.
    pub(crate) fn cofactor(&self, t: &[u16]) -> Option<Exps> {
        let mut c = self.image.clone();
        for (i, &k) in t.iter().enumerate() {
            if k == 0 {
                continue;
            }
            for (slot, &g) in c.iter_mut().zip(self.gen(i)) {
                *slot = slot.checked_sub(g * k)?;
            }
        }
        Some(c)
    }

    pub(crate) fn monomial(&self, t: &Exps) -> RtMonomial {
        let c = self.cofactor(t).expect("node lies in the fiber");
        RtMonomial {
            x: Monomial { exps: c },
            t: t.clone(),
        }
    }

    /// All nodes, or `None` once more than `limit` have been produced.
    pub(crate) fn enumerate(&self, limit: usize) -> Option<Vec<Exps>> {
        let n = self.ideal.len();
        let mut out = Vec::new();
        let mut t: Exps = SmallVec::from_elem(0, n);
        let mut avail = self.image.clone();
        if self.enum_rec(0, self.s, &mut t, &mut avail, &mut out, limit) {
            Some(out)
        } else {
            None
        }
    }

    fn enum_rec(
        &self,
        i: usize,
        remaining: usize,
        t: &mut Exps,
        avail: &mut Exps,
        out: &mut Vec<Exps>,
        limit: usize,
    ) -> bool {
        if remaining == 0 {
            out.push(t.clone());
            return out.len() <= limit;
        }
        if i == t.len() {
            return true;
        }
        let g = self.gen(i);
        let mut used = 0usize;
        let mut ok = true;
        // larger multiplicities of lower indices first keeps output in
        // lexicographic order of the sorted sequences
        while used < remaining && fits(avail, g) {
            sub_assign(avail, g);
            used += 1;
        }
        loop {
            t[i] = used as u16;
            if !self.enum_rec(i + 1, remaining - used, t, avail, out, limit) {
                ok = false;
                break;
            }
            if used == 0 {
                break;
            }
            add_assign(avail, g);
            used -= 1;
        }
        for _ in 0..used {
            add_assign(avail, g);
        }
        t[i] = 0;
        ok
    }

    /// Nodes reachable from `t` by one move of size `1..=k`.
    pub(crate) fn neighbors(&self, t: &Exps, k: usize, out: &mut Vec<Exps>) {
        let Some(c) = self.cofactor(t) else { return };
        let n = t.len();
        let mut alpha: Exps = SmallVec::from_elem(0, n);
        self.alpha_rec(0, 0, k.min(self.s), t, &c, &mut alpha, out);
    }

    #[allow(clippy::too_many_arguments)]
    fn alpha_rec(
        &self,
        i: usize,
        size: usize,
        kmax: usize,
        t: &Exps,
        c: &Exps,
        alpha: &mut Exps,
        out: &mut Vec<Exps>,
    ) {
        if i == t.len() {
            if size == 0 {
                return;
            }
            let mut avail = c.clone();
            for (j, &a) in alpha.iter().enumerate() {
                for _ in 0..a {
                    add_assign(&mut avail, self.gen(j));
                }
            }
            let mut beta: Exps = SmallVec::from_elem(0, t.len());
            self.beta_rec(0, size, &mut avail, alpha, &mut beta, t, out);
            return;
        }
        let top = (t[i] as usize).min(kmax - size);
        for a in 0..=top {
            alpha[i] = a as u16;
            self.alpha_rec(i + 1, size + a, kmax, t, c, alpha, out);
        }
        alpha[i] = 0;
    }

    #[allow(clippy::too_many_arguments)]
    fn beta_rec(
        &self,
        i: usize,
        remaining: usize,
        avail: &mut Exps,
        alpha: &Exps,
        beta: &mut Exps,
        t: &Exps,
        out: &mut Vec<Exps>,
    ) {
        if remaining == 0 {
            let mut nt = t.clone();
            for j in 0..nt.len() {
                nt[j] = nt[j] - alpha[j] + beta[j];
            }
            out.push(nt);
            return;
        }
        if i == t.len() {
            return;
        }
        self.beta_rec(i + 1, remaining, avail, alpha, beta, t, out);
        if alpha[i] > 0 {
            return;
        }
        let g = self.gen(i);
        let mut used = 0;
        while used < remaining && fits(avail, g) {
            sub_assign(avail, g);
            used += 1;
            beta[i] = used as u16;
            self.beta_rec(i + 1, remaining - used, avail, alpha, beta, t, out);
        }
        for _ in 0..used {
            add_assign(avail, g);
        }
        beta[i] = 0;
    }

    /// The rewrite step taking node `a` to node `b`.
    fn step(&self, a: &Exps, b: &Exps) -> RewriteStep {
        let n = a.len();
        let mut alpha = Vec::new();
        let mut beta = Vec::new();
        let mut common: Exps = SmallVec::from_elem(0, n);
        for i in 0..n {
            common[i] = a[i].min(b[i]);
            alpha.extend(std::iter::repeat_n(i + 1, (a[i] - common[i]) as usize));
            beta.extend(std::iter::repeat_n(i + 1, (b[i] - common[i]) as usize));
        }
        let alpha = IndexSequence::new(alpha).expect("distinct nodes");
        let beta = IndexSequence::new(beta).expect("distinct nodes");
        let tb = taylor_unchecked(self.ideal, &alpha, &beta);
        let rule = RewriteRule::from_binomial(&tb, n);
        let from = self.monomial(a);
        let to = self.monomial(b);
        let x = from.x.quo(&tb.lhs_coef);
        RewriteStep {
            from,
            to,
            rule,
            multiplier: RtMonomial { x, t: common },
            forward: true,
        }
    }
}

fn fits(avail: &Exps, g: &[u16]) -> bool {
    avail.iter().zip(g).all(|(&a, &b)| a >= b)
}

fn sub_assign(avail: &mut Exps, g: &[u16]) {
    for (a, &b) in avail.iter_mut().zip(g) {
        *a -= b;
    }
}

fn add_assign(avail: &mut Exps, g: &[u16]) {
    for (a, &b) in avail.iter_mut().zip(g) {
        *a += b;
    }
}

/// Whether `u − v` lies in the ideal generated by all Taylor binomials of
/// T-degree at most `k`.
pub fn congruent_lower(
    ideal: &SquareFreeIdeal,
    u: &RtMonomial,
    v: &RtMonomial,
    k: usize,
    max_states: usize,
) -> Verdict {
    if u == v {
        return Verdict::Yes(Vec::new());
    }
    if u.t_degree() != v.t_degree() || u.image(ideal) != v.image(ideal) || k == 0 {
        return Verdict::No;
    }
    let image = u.image(ideal);
    let fiber = Fiber::new(ideal, &image, u.t_degree() as usize);

    let mut maps: [HashMap<Exps, Option<Exps>>; 2] = [HashMap::new(), HashMap::new()];
    maps[0].insert(u.t.clone(), None);
    maps[1].insert(v.t.clone(), None);
    let mut frontiers = [VecDeque::from([u.t.clone()]), VecDeque::from([v.t.clone()])];
    let mut buf = Vec::new();
    loop {
        let side = if frontiers[0].len() <= frontiers[1].len() {
            0
        } else {
            1
        };
        if frontiers[side].is_empty() {
            return Verdict::No;
        }
        let current = std::mem::take(&mut frontiers[side]);
        for node in current {
            buf.clear();
            fiber.neighbors(&node, k, &mut buf);
            buf.sort_unstable();
            buf.dedup();
            for nb in buf.drain(..) {
                if maps[side].contains_key(&nb) {
                    continue;
                }
                maps[side].insert(nb.clone(), Some(node.clone()));
                if maps[1 - side].contains_key(&nb) {
                    return Verdict::Yes(fiber_chain(&fiber, &maps[0], &maps[1], &nb));
                }
                frontiers[side].push_back(nb);
                if maps[0].len() + maps[1].len() > max_states {
                    return Verdict::Unknown;
                }
            }
        }
    }
}

fn fiber_chain(
    fiber: &Fiber<'_>,
    from_u: &HashMap<Exps, Option<Exps>>,
    from_v: &HashMap<Exps, Option<Exps>>,
    meet: &Exps,
) -> Vec<RewriteStep> {
    let mut path = vec![meet.clone()];
    let mut cur = meet;
    while let Some(Some(p)) = from_u.get(cur) {
        path.push(p.clone());
        cur = p;
    }
    path.reverse();
    let mut cur = meet;
    while let Some(Some(p)) = from_v.get(cur) {
        path.push(p.clone());
        cur = p;
    }
    path.windows(2).map(|w| fiber.step(&w[0], &w[1])).collect()
}

/// Is `b` in `S·(J_1 ∪ … ∪ J_k)`?
///
/// The cap in `limits` is checked but never binds here: rewriting
/// preserves the image, hence the total degree. Only the state budget can
/// produce `Unknown`.
pub fn member_lower(ideal: &SquareFreeIdeal, b: &ReesBinomial, k: usize, limits: &Limits) -> Verdict {
    let n = ideal.len();
    congruent_lower(ideal, &b.lhs(n), &b.rhs(n), k, limits.max_states)
}

/// [`member_lower`] retried up the ladder while the answer is `Unknown`.
pub fn member_lower_escalating(ideal: &SquareFreeIdeal, b: &ReesBinomial, k: usize, base: Limits) -> Verdict {
    let mut last = Verdict::Unknown;
    for limits in base.ladder() {
        last = member_lower(ideal, b, k, &limits);
        if last != Verdict::Unknown {
            break;
        }
    }
    last
}

/// `b` does not reduce modulo strictly lower layers and carries a non-unit
/// x-coefficient.
pub fn fiber_witness(ideal: &SquareFreeIdeal, b: &ReesBinomial, limits: &Limits) -> bool {
    let has_x = !b.lhs_coef.is_one() || !b.rhs_coef.is_one();
    has_x && !member_lower_escalating(ideal, b, b.degree().saturating_sub(1), *limits).is_yes()
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// Layer binomials grouped by the image of their leading term, in first
/// occurrence order.
fn group_by_image(ideal: &SquareFreeIdeal, layer: &[ReesBinomial]) -> Vec<(Monomial, Vec<usize>)> {
    let n = ideal.len();
    let mut index: HashMap<Monomial, usize> = HashMap::new();
    let mut groups: Vec<(Monomial, Vec<usize>)> = Vec::new();
    for (i, b) in layer.iter().enumerate() {
        let img = b.lhs(n).image(ideal);
        match index.get(&img) {
            Some(&g) => groups[g].1.push(i),
            None => {
                index.insert(img.clone(), groups.len());
                groups.push((img, vec![i]));
            }
        }
    }
    groups
}

/// Per-binomial verdicts for a whole layer modulo layers `1..=k`.
pub fn layer_verdicts(
    ideal: &SquareFreeIdeal,
    layer: &[ReesBinomial],
    k: usize,
    max_states: usize,
) -> Vec<VerdictKind> {
    let n = ideal.len();
    let groups = group_by_image(ideal, layer);
    let results = par::map(groups, |(img, members)| {
        let s = layer[members[0]].degree();
        let fiber = Fiber::new(ideal, &img, s);
        let kinds: Vec<VerdictKind> = match fiber.enumerate(max_states) {
            None => vec![VerdictKind::Unknown; members.len()],
            Some(nodes) => {
                let pos: HashMap<&Exps, usize> = nodes.iter().enumerate().map(|(i, t)| (t, i)).collect();
                let mut uf = UnionFind::new(nodes.len());
                let mut buf = Vec::new();
                for (i, t) in nodes.iter().enumerate() {
                    buf.clear();
                    fiber.neighbors(t, k, &mut buf);
                    for nb in &buf {
                        uf.union(i, pos[nb]);
                    }
                }
                members
                    .iter()
                    .map(|&m| {
                        let b = &layer[m];
                        let a = pos[&b.lhs(n).t];
                        let c = pos[&b.rhs(n).t];
                        if uf.find(a) == uf.find(c) {
                            VerdictKind::Yes
                        } else {
                            VerdictKind::No
                        }
                    })
                    .collect()
            }
        };
        (members, kinds)
    });
    let mut out = vec![VerdictKind::Unknown; layer.len()];
    for (members, kinds) in results {
        for (m, k) in members.into_iter().zip(kinds) {
            out[m] = k;
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalGenerators {
    /// In layer order, degree by degree.
    pub generators: Vec<ReesBinomial>,
    /// Fibers skipped because they exceeded the state budget.
    pub incomplete_fibers: usize,
}

/// A minimal generating set of `J` in T-degrees `1..=s_max`, chosen among
/// the Taylor binomials.
///
/// In each multidegree the quotient `J / m·J` is spanned by differences of
/// fiber nodes, and two nodes agree modulo `m·J` when they are linked by
/// steps with a non-unit multiplier (a shared `T_i` or a shared variable).
/// A layer binomial is kept when its endpoints are still in different
/// classes, after which the classes merge.
pub fn minimal_generators(ideal: &SquareFreeIdeal, s_max: usize, max_states: usize) -> MinimalGenerators {
    let n = ideal.len();
    let mut generators = Vec::new();
    let mut incomplete = 0;
    for s in 1..=s_max {
        let layer = taylor_layer(ideal, s);
        let groups = group_by_image(ideal, &layer);
        let picked = par::map(groups, |(img, members)| {
            let fiber = Fiber::new(ideal, &img, s);
            let nodes = fiber.enumerate(max_states)?;
            let cof: Vec<Exps> = nodes
                .iter()
                .map(|t| fiber.cofactor(t).expect("fiber node"))
                .collect();
            let pos: HashMap<&Exps, usize> = nodes.iter().enumerate().map(|(i, t)| (t, i)).collect();
            let mut uf = UnionFind::new(nodes.len());
            for i in 0..nodes.len() {
                for j in i + 1..nodes.len() {
                    let shares_t = nodes[i].iter().zip(&nodes[j]).any(|(&a, &b)| a > 0 && b > 0);
                    let shares_x = cof[i].iter().zip(&cof[j]).any(|(&a, &b)| a > 0 && b > 0);
                    if shares_t || shares_x {
                        uf.union(i, j);
                    }
                }
            }
            let mut keep = Vec::new();
            for &m in &members {
                let b = &layer[m];
                if uf.union(pos[&b.lhs(n).t], pos[&b.rhs(n).t]) {
                    keep.push(m);
                }
            }
            Some(keep)
        });
        let mut kept: Vec<usize> = Vec::new();
        for p in picked {
            match p {
                Some(k) => kept.extend(k),
                None => incomplete += 1,
            }
        }
        kept.sort_unstable();
        generators.extend(kept.into_iter().map(|m| layer[m].clone()));
    }
    MinimalGenerators {
        generators,
        incomplete_fibers: incomplete,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerTally {
    pub degree: usize,
    pub binomials: usize,
    pub reduce: usize,
    pub irreducible: usize,
    pub unknown: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RtReport {
    pub s_max: usize,
    pub layers: Vec<LayerTally>,
    /// Largest degree with a layer binomial certified (`No`) not to reduce
    /// modulo lower layers; 1 when nothing above layer 1 fails.
    pub certified_lower: usize,
    pub lower_witness: Option<ReesBinomial>,
    /// Largest degree with any binomial not shown to reduce (`No` or `Unknown`).
    pub candidate_lower: usize,
    /// Every layer in `(certified_lower, verified_upper_through]` reduces.
    pub verified_upper_through: usize,
    pub unknown_count: usize,
}

/// Layer-by-layer membership of each Taylor binomial of degree `s` modulo
/// layers `< s`, for `s` up to `s_max`.
pub fn relation_type_estimate(ideal: &SquareFreeIdeal, s_max: usize, limits: &Limits) -> RtReport {
    let mut layers = Vec::new();
    let mut certified_lower = 1;
    let mut candidate_lower = 1;
    let mut lower_witness = None;
    for s in 1..=s_max.max(1) {
        let layer = taylor_layer(ideal, s);
        let kinds = if s == 1 {
            vec![VerdictKind::No; layer.len()]
        } else {
            layer_verdicts(ideal, &layer, s - 1, limits.max_states)
        };
        let count = |k: VerdictKind| kinds.iter().filter(|&&x| x == k).count();
        let tally = LayerTally {
            degree: s,
            binomials: layer.len(),
            reduce: count(VerdictKind::Yes),
            irreducible: count(VerdictKind::No),
            unknown: count(VerdictKind::Unknown),
        };
        if tally.irreducible > 0 {
            certified_lower = s;
            lower_witness = kinds
                .iter()
                .position(|&k| k == VerdictKind::No)
                .map(|i| layer[i].clone());
        }
        if tally.irreducible + tally.unknown > 0 {
            candidate_lower = s;
        }
        layers.push(tally);
    }
    let s_max = s_max.max(1);
    let verified_upper_through = layers
        .iter()
        .filter(|t| t.degree > certified_lower)
        .find(|t| t.reduce != t.binomials)
        .map_or(s_max, |t| t.degree - 1);
    let unknown_count = layers.iter().map(|t| t.unknown).sum();
    RtReport {
        s_max,
        layers,
        certified_lower,
        lower_witness,
        candidate_lower,
        verified_upper_through,
        unknown_count,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::demos;
    use crate::rees::taylor_binomial;

    fn seq(v: &[usize]) -> IndexSequence {
        IndexSequence::new(v.to_vec()).unwrap()
    }

    #[test]
    fn rewrite_step_examples() {
        let v = demos::villarreal();
        let n = v.len();
        let rule = RewriteRule::from_binomial(&taylor_binomial(&v, &seq(&[3]), &seq(&[4])).unwrap(), n);
        let x3 = v.vars().monomial(&["x3"]).unwrap();
        let w = RtMonomial::from_parts(x3, &seq(&[1, 3]), n);
        let out = rewrite_step(&w, &rule);
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].render(&v), "x5*T1*T4");

        let t1 = RtMonomial::t_var(1, v.nvars(), n);
        let deg2 = RewriteRule::from_binomial(&taylor_binomial(&v, &seq(&[1, 3]), &seq(&[2, 4])).unwrap(), n);
        assert!(rewrite_step(&t1, &deg2).is_empty());

        let x2x3 = v.vars().monomial(&["x2", "x3"]).unwrap();
        let w = RtMonomial::from_parts(x2x3, &seq(&[2]), n);
        assert!(rewrite_step(&w, &rule).is_empty());
    }

    #[test]
    fn reflexive_and_cap_checked() {
        let v = demos::villarreal();
        let rules = layer_rules(&v, 1);
        let b = taylor_binomial(&v, &seq(&[1, 3]), &seq(&[2, 4])).unwrap();
        let u = b.lhs(4);
        assert_eq!(
            congruent(&v, &rules, &u, &u, 100, 1000).unwrap(),
            Verdict::Yes(vec![])
        );
        assert!(matches!(
            congruent(&v, &rules, &u, &b.rhs(4), 3, 1000),
            Err(OracleError::CapBelowDegree { .. })
        ));
    }

    #[test]
    fn villarreal_square_is_not_linear() {
        let v = demos::villarreal();
        let b = taylor_binomial(&v, &seq(&[1, 3]), &seq(&[2, 4])).unwrap();
        let (u, w) = (b.lhs(4), b.rhs(4));
        let rules = layer_rules(&v, 1);
        let cap = u.total_degree(&v) + 4;
        assert_eq!(congruent(&v, &rules, &u, &w, cap, 100_000).unwrap(), Verdict::No);
        assert_eq!(member_lower(&v, &b, 1, &Limits::default()), Verdict::No);
        assert!(member_lower(&v, &b, 2, &Limits::default()).is_yes());
    }

    #[test]
    fn shared_index_reduces() {
        let v = demos::villarreal();
        let b = taylor_binomial(&v, &seq(&[1, 2]), &seq(&[1, 4])).unwrap();
        let verdict = member_lower(&v, &b, 1, &Limits::default());
        let chain = verdict.chain().expect("reduces");
        assert!(replay(&b.lhs(4), &b.rhs(4), chain));
    }

    #[test]
    fn pentagon_degree_three() {
        let p = demos::pentagon();
        let b = taylor_binomial(&p, &seq(&[1, 1, 4]), &seq(&[2, 3, 5])).unwrap();
        let (u, w) = (b.lhs(5), b.rhs(5));
        let mut rules = layer_rules(&p, 2);
        let cap = u.total_degree(&p) + 4;
        assert!(!congruent(&p, &rules, &u, &w, cap, 1_000_000).unwrap().is_yes());
        rules.push(RewriteRule::from_binomial(&b, 5));
        let verdict = congruent(&p, &rules, &u, &w, cap, 1_000_000).unwrap();
        assert!(replay(&u, &w, verdict.chain().unwrap()));
        assert_eq!(member_lower(&p, &b, 2, &Limits::default()), Verdict::No);
        assert!(member_lower(&p, &b, 3, &Limits::default()).is_yes());
    }

    #[test]
    fn fiber_enumeration_matches_brute_force() {
        let p = demos::pentagon();
        for s in 1..=3 {
            for b in taylor_layer(&p, s) {
                let img = b.lhs(5).image(&p);
                let fiber = Fiber::new(&p, &img, s);
                let mut nodes = fiber.enumerate(usize::MAX).unwrap();
                nodes.sort();
                let mut brute: Vec<Exps> = crate::rees::enumerate_sequences(5, s)
                    .into_iter()
                    .map(|q| q.t_exponents(5))
                    .filter(|t| fiber.cofactor(t).is_some())
                    .collect();
                brute.sort();
                assert_eq!(nodes, brute);
            }
        }
    }

    #[test]
    fn fiber_route_agrees_with_rule_search() {
        for ideal in [
            demos::villarreal(),
            demos::pentagon(),
            demos::triangle(),
            demos::path(),
        ] {
            let n = ideal.len();
            for s in 2..=3 {
                let layer = taylor_layer(&ideal, s);
                for k in 1..s {
                    let rules = layer_rules(&ideal, k);
                    let fast = layer_verdicts(&ideal, &layer, k, DEFAULT_MAX_STATES);
                    for (b, kind) in layer.iter().zip(&fast) {
                        let (u, w) = (b.lhs(n), b.rhs(n));
                        let cap = u.total_degree(&ideal);
                        let slow = congruent(&ideal, &rules, &u, &w, cap, 1_000_000).unwrap();
                        assert_eq!(slow.kind(), *kind, "{b:?} k={k}");
                        let bfs = member_lower(&ideal, b, k, &Limits::default());
                        assert_eq!(bfs.kind(), *kind);
                        if let Some(chain) = bfs.chain() {
                            assert!(replay(&u, &w, chain));
                            assert!(chain.iter().all(|st| st.rule.degree() as usize <= k));
                        }
                        if let Some(chain) = slow.chain() {
                            assert!(replay(&u, &w, chain));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn symmetric_verdicts() {
        let p = demos::pentagon();
        for b in taylor_layer(&p, 2) {
            let a = member_lower(&p, &b, 1, &Limits::default());
            let c = member_lower(&p, &b.negate(), 1, &Limits::default());
            assert_eq!(a.kind(), c.kind());
        }
    }

    #[test]
    fn villarreal_minimal_generators() {
        let v = demos::villarreal();
        let mg = minimal_generators(&v, 3, DEFAULT_MAX_STATES);
        let rendered: Vec<String> = mg.generators.iter().map(|b| b.render(&v)).collect();
        assert_eq!(
            rendered,
            vec![
                "x4*x5*T1 - x1*x3*T2",
                "x6*x7*T1 - x1*x2*T4",
                "x6*x7*T2 - x2*x4*T3",
                "x3*T3 - x5*T4",
                "x4*T1*T3 - x1*T2*T4",
            ]
        );
        assert_eq!(mg.incomplete_fibers, 0);
    }

    #[test]
    fn relation_type_reports() {
        let v = demos::villarreal();
        let r = relation_type_estimate(&v, 3, &Limits::default());
        assert_eq!(r.certified_lower, 2);
        assert_eq!(r.verified_upper_through, 3);
        assert_eq!(r.unknown_count, 0);
        assert_eq!(r.lower_witness.unwrap().render(&v), "x4*T1*T3 - x1*T2*T4");

        let p = demos::pentagon();
        let r = relation_type_estimate(&p, 3, &Limits::default());
        assert_eq!((r.certified_lower, r.verified_upper_through), (3, 3));

        let principal = SquareFreeIdeal::from_names(&["x", "y"], &[&["x", "y"]]).unwrap();
        let r = relation_type_estimate(&principal, 3, &Limits::default());
        assert_eq!((r.certified_lower, r.verified_upper_through), (1, 3));

        let t = demos::triangle();
        let r = relation_type_estimate(&t, 3, &Limits::default());
        assert_eq!((r.certified_lower, r.verified_upper_through), (1, 3));
    }

    #[test]
    fn fiber_witness_flags() {
        let v = demos::villarreal();
        let b = taylor_binomial(&v, &seq(&[1, 3]), &seq(&[2, 4])).unwrap();
        assert!(fiber_witness(&v, &b, &Limits::default()));
        let t = demos::triangle();
        for b in taylor_layer(&t, 2) {
            assert!(!fiber_witness(&t, &b, &Limits::default()));
        }
    }
}
