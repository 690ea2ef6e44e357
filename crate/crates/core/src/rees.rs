//! Index sequences, the Taylor binomials `T_{α,β}` of a monomial ideal, their
//! degree layers, and exact arithmetic in `S = R[T1..Tn]`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;
use thiserror::Error;

use crate::monomial::{Exps, IdealError, Monomial, SquareFreeIdeal};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("an index sequence cannot be empty")]
    Empty,
    #[error("generator indices are 1-based; got 0")]
    ZeroIndex,
    #[error("sequence is not non-decreasing: {0:?}")]
    NotSorted(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BinomialError {
    #[error("sequences have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("alpha equals beta: the binomial is zero")]
    ZeroBinomial,
    #[error(transparent)]
    Ideal(#[from] IdealError),
}

/// A non-decreasing sequence of 1-based generator indices, i.e. a multiset.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct IndexSequence {
    entries: Vec<usize>,
}

impl IndexSequence {
    pub fn new(entries: Vec<usize>) -> Result<Self, SequenceError> {
        if entries.is_empty() {
            return Err(SequenceError::Empty);
        }
        if entries.contains(&0) {
            return Err(SequenceError::ZeroIndex);
        }
        if entries.windows(2).any(|w| w[0] > w[1]) {
            return Err(SequenceError::NotSorted(entries));
        }
        Ok(IndexSequence { entries })
    }

    pub fn from_unsorted(mut entries: Vec<usize>) -> Result<Self, SequenceError> {
        entries.sort_unstable();
        Self::new(entries)
    }

    /// From a run-length list `[(index, multiplicity), ...]`; runs with
    /// multiplicity 0 are skipped.
    pub fn from_runs(runs: &[(usize, usize)]) -> Result<Self, SequenceError> {
        let mut entries = Vec::new();
        for &(i, k) in runs {
            entries.extend(std::iter::repeat_n(i, k));
        }
        Self::from_unsorted(entries)
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Run-length view `(a_i, l_i)` with distinct `a_i` increasing.
    pub fn runs(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &e in &self.entries {
            match out.last_mut() {
                Some((i, k)) if *i == e => *k += 1,
                _ => out.push((e, 1)),
            }
        }
        out
    }

    pub fn distinct(&self) -> Vec<usize> {
        self.runs().into_iter().map(|(i, _)| i).collect()
    }

    pub fn multiplicity(&self, index: usize) -> usize {
        self.entries.iter().filter(|&&e| e == index).count()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.entries.binary_search(&index).is_ok()
    }

    pub fn shares_index_with(&self, other: &IndexSequence) -> bool {
        self.distinct().iter().any(|&i| other.contains(i))
    }

    pub fn is_constant(&self) -> bool {
        self.entries.first() == self.entries.last()
    }

    /// Exponent vector of `T_α` in `k[T1..Tn]`.
    pub fn t_exponents(&self, n: usize) -> Exps {
        let mut t: Exps = SmallVec::from_elem(0, n);
        for &e in &self.entries {
            t[e - 1] += 1;
        }
        t
    }

    pub fn render_t(&self) -> String {
        render_t_power(&self.runs())
    }
}

impl TryFrom<Vec<usize>> for IndexSequence {
    type Error = SequenceError;

    fn try_from(v: Vec<usize>) -> Result<Self, Self::Error> {
        IndexSequence::new(v)
    }
}

impl From<IndexSequence> for Vec<usize> {
    fn from(s: IndexSequence) -> Self {
        s.entries
    }
}

impl fmt::Debug for IndexSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, e) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for IndexSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

fn render_t_power(runs: &[(usize, usize)]) -> String {
    runs.iter()
        .filter(|(_, k)| *k > 0)
        .map(|&(i, k)| {
            if k == 1 {
                format!("T{i}")
            } else {
                format!("T{i}^{k}")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// All `C(n+s-1, s)` non-decreasing sequences of length `s` over `1..=n`,
/// in lexicographic order.
pub fn enumerate_sequences(n: usize, s: usize) -> Vec<IndexSequence> {
    let mut out = Vec::new();
    if n == 0 || s == 0 {
        return out;
    }
    let mut cur = vec![1usize; s];
    loop {
        out.push(IndexSequence { entries: cur.clone() });
        // rightmost position that can still grow
        let Some(pos) = (0..s).rev().find(|&p| cur[p] < n) else {
            break;
        };
        let v = cur[pos] + 1;
        for slot in cur.iter_mut().skip(pos) {
            *slot = v;
        }
    }
    out
}

/// `f_α = f_{i1} ⋯ f_{is}`.
pub fn product_of(ideal: &SquareFreeIdeal, seq: &IndexSequence) -> Result<Monomial, IdealError> {
    let mut m = ideal.one();
    for &i in seq.entries() {
        ideal.check_index(i)?;
        m = &m * ideal.gen(i);
    }
    Ok(m)
}

pub(crate) fn product_unchecked(ideal: &SquareFreeIdeal, entries: &[usize]) -> Monomial {
    let mut exps: Exps = SmallVec::from_elem(0, ideal.nvars());
    for &i in entries {
        for (e, &g) in exps.iter_mut().zip(ideal.gen(i).exps.iter()) {
            *e += g;
        }
    }
    Monomial { exps }
}

/// A monomial `x^a T^b` of `S = R[T1..Tn]`, stored densely.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RtMonomial {
    pub(crate) x: Monomial,
    pub(crate) t: Exps,
}

impl RtMonomial {
    pub fn new(x: Monomial, t: &[u16]) -> Self {
        RtMonomial {
            x,
            t: SmallVec::from_slice(t),
        }
    }

    pub fn from_parts(x: Monomial, seq: &IndexSequence, n: usize) -> Self {
        RtMonomial {
            x,
            t: seq.t_exponents(n),
        }
    }

    pub fn one(nvars: usize, n: usize) -> Self {
        RtMonomial {
            x: Monomial::one(nvars),
            t: SmallVec::from_elem(0, n),
        }
    }

    /// `T_i` alone.
    pub fn t_var(i: usize, nvars: usize, n: usize) -> Self {
        let mut m = Self::one(nvars, n);
        m.t[i - 1] = 1;
        m
    }

    pub fn xpart(&self) -> &Monomial {
        &self.x
    }

    pub fn tpart(&self) -> &[u16] {
        &self.t
    }

    pub fn t_degree(&self) -> u32 {
        self.t.iter().map(|&e| e as u32).sum()
    }

    /// The T-part as a sorted index multiset.
    pub fn t_entries(&self) -> Vec<usize> {
        let mut v = Vec::new();
        for (i, &e) in self.t.iter().enumerate() {
            v.extend(std::iter::repeat_n(i + 1, e as usize));
        }
        v
    }

    /// x-degree plus `Σ deg(f_i)·t_i`: the degree of the image under
    /// `T_i ↦ f_i`.
    pub fn total_degree(&self, ideal: &SquareFreeIdeal) -> u32 {
        self.x.degree()
            + self
                .t
                .iter()
                .enumerate()
                .map(|(i, &e)| e as u32 * ideal.gens()[i].degree())
                .sum::<u32>()
    }

    /// `x^a · f^b`, the image under `T_i ↦ f_i` (ignoring the `t` grading).
    pub fn image(&self, ideal: &SquareFreeIdeal) -> Monomial {
        let mut exps = self.x.exps.clone();
        for (i, &e) in self.t.iter().enumerate() {
            if e == 0 {
                continue;
            }
            for (slot, &g) in exps.iter_mut().zip(ideal.gens()[i].exps.iter()) {
                *slot += g * e;
            }
        }
        Monomial { exps }
    }

    pub fn is_one(&self) -> bool {
        self.x.is_one() && self.t.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &RtMonomial) -> bool {
        self.x.divides(&other.x)
            && self.t.len() == other.t.len()
            && self.t.iter().zip(other.t.iter()).all(|(&a, &b)| a <= b)
    }

    pub fn try_div(&self, divisor: &RtMonomial) -> Option<RtMonomial> {
        let x = self.x.try_div(&divisor.x)?;
        let mut t = self.t.clone();
        for (e, &d) in t.iter_mut().zip(divisor.t.iter()) {
            *e = e.checked_sub(d)?;
        }
        Some(RtMonomial { x, t })
    }

    pub fn mul(&self, other: &RtMonomial) -> RtMonomial {
        let x = &self.x * &other.x;
        let mut t = self.t.clone();
        for (e, &o) in t.iter_mut().zip(other.t.iter()) {
            *e += o;
        }
        RtMonomial { x, t }
    }

    pub fn render(&self, ideal: &SquareFreeIdeal) -> String {
        let mut parts = Vec::new();
        if !self.x.is_one() {
            parts.push(ideal.render(&self.x));
        }
        let runs: Vec<(usize, usize)> = self
            .t
            .iter()
            .enumerate()
            .map(|(i, &e)| (i + 1, e as usize))
            .collect();
        let t = render_t_power(&runs);
        if !t.is_empty() {
            parts.push(t);
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Debug for RtMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let runs: Vec<(usize, usize)> = self
            .t
            .iter()
            .enumerate()
            .map(|(i, &e)| (i + 1, e as usize))
            .collect();
        write!(f, "{:?}·{}", self.x, render_t_power(&runs))
    }
}

/// `lhs_coef·T_α − rhs_coef·T_β`. For Taylor binomials the coefficients are
/// `f_β/g` and `f_α/g` with `g = gcd(f_α, f_β)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ReesBinomial {
    pub alpha: IndexSequence,
    pub beta: IndexSequence,
    pub lhs_coef: Monomial,
    pub rhs_coef: Monomial,
}

impl ReesBinomial {
    /// A hand-entered binomial; nothing beyond shape is checked here, use
    /// [`substitute_check`] to audit it.
    pub fn from_parts(
        alpha: IndexSequence,
        beta: IndexSequence,
        lhs_coef: Monomial,
        rhs_coef: Monomial,
    ) -> Result<Self, BinomialError> {
        if alpha == beta && lhs_coef == rhs_coef {
            return Err(BinomialError::ZeroBinomial);
        }
        Ok(ReesBinomial {
            alpha,
            beta,
            lhs_coef,
            rhs_coef,
        })
    }

    /// T-degree of the first term. Taylor binomials are T-homogeneous.
    pub fn degree(&self) -> usize {
        self.alpha.len()
    }

    pub fn negate(&self) -> ReesBinomial {
        ReesBinomial {
            alpha: self.beta.clone(),
            beta: self.alpha.clone(),
            lhs_coef: self.rhs_coef.clone(),
            rhs_coef: self.lhs_coef.clone(),
        }
    }

    pub fn lhs(&self, n: usize) -> RtMonomial {
        RtMonomial::from_parts(self.lhs_coef.clone(), &self.alpha, n)
    }

    pub fn rhs(&self, n: usize) -> RtMonomial {
        RtMonomial::from_parts(self.rhs_coef.clone(), &self.beta, n)
    }

    pub fn expand(&self, n: usize) -> RtPolynomial {
        let mut p = RtPolynomial::zero();
        p.add_term(self.lhs(n), 1);
        p.add_term(self.rhs(n), -1);
        p
    }

    /// True when both coefficients are the unit monomial.
    pub fn is_pure(&self) -> bool {
        self.lhs_coef.is_one() && self.rhs_coef.is_one()
    }

    /// `x4*T1*T3 - x1*T2*T4`
    pub fn render(&self, ideal: &SquareFreeIdeal) -> String {
        let n = ideal.len();
        format!("{} - {}", self.lhs(n).render(ideal), self.rhs(n).render(ideal))
    }
}

impl fmt::Debug for ReesBinomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "T[{:?},{:?}] = {:?}·T{:?} - {:?}·T{:?}",
            self.alpha, self.beta, self.lhs_coef, self.alpha, self.rhs_coef, self.beta
        )
    }
}

/// `T_{α,β} = (f_β/g)·T_α − (f_α/g)·T_β`, `g = gcd(f_α, f_β)`.
pub fn taylor_binomial(
    ideal: &SquareFreeIdeal,
    alpha: &IndexSequence,
    beta: &IndexSequence,
) -> Result<ReesBinomial, BinomialError> {
    if alpha.len() != beta.len() {
        return Err(BinomialError::LengthMismatch(alpha.len(), beta.len()));
    }
    if alpha == beta {
        return Err(BinomialError::ZeroBinomial);
    }
    let fa = product_of(ideal, alpha)?;
    let fb = product_of(ideal, beta)?;
    Ok(taylor_from_products(alpha.clone(), beta.clone(), &fa, &fb))
}

pub(crate) fn taylor_from_products(
    alpha: IndexSequence,
    beta: IndexSequence,
    fa: &Monomial,
    fb: &Monomial,
) -> ReesBinomial {
    let g = fa.gcd_unchecked(fb);
    ReesBinomial {
        alpha,
        beta,
        lhs_coef: fb.quo(&g),
        rhs_coef: fa.quo(&g),
    }
}

/// Taylor binomial for sequences already known to be valid for `ideal`.
pub(crate) fn taylor_unchecked(
    ideal: &SquareFreeIdeal,
    alpha: &IndexSequence,
    beta: &IndexSequence,
) -> ReesBinomial {
    let fa = product_unchecked(ideal, alpha.entries());
    let fb = product_unchecked(ideal, beta.entries());
    taylor_from_products(alpha.clone(), beta.clone(), &fa, &fb)
}

#[derive(Debug, Clone, Copy, Default)]
pub struct LayerOptions {
    /// Drop pairs whose sequences share an index. Such binomials are
    /// `T_a` times a lower-degree binomial, so they never matter for
    /// generation; off by default so the oracle can confirm that itself.
    pub skip_shared_index: bool,
}

/// The layer `J_s`: one binomial per pair `α < β` (lexicographic).
pub fn taylor_layer(ideal: &SquareFreeIdeal, s: usize) -> Vec<ReesBinomial> {
    taylor_layer_with(ideal, s, LayerOptions::default())
}

pub fn taylor_layer_with(ideal: &SquareFreeIdeal, s: usize, opts: LayerOptions) -> Vec<ReesBinomial> {
    let seqs = enumerate_sequences(ideal.len(), s);
    let products: Vec<Monomial> = seqs
        .iter()
        .map(|q| product_unchecked(ideal, q.entries()))
        .collect();
    let mut out = Vec::new();
    for i in 0..seqs.len() {
        for j in i + 1..seqs.len() {
            if opts.skip_shared_index && seqs[i].shares_index_with(&seqs[j]) {
                continue;
            }
            out.push(taylor_from_products(
                seqs[i].clone(),
                seqs[j].clone(),
                &products[i],
                &products[j],
            ));
        }
    }
    out
}

/// Audits `lhs_coef·f_α = rhs_coef·f_β`, i.e. that the binomial maps to zero
/// under `T_i ↦ f_i t`.
pub fn substitute_check(ideal: &SquareFreeIdeal, b: &ReesBinomial) -> bool {
    if b.alpha.len() != b.beta.len() {
        return false;
    }
    let (Ok(fa), Ok(fb)) = (product_of(ideal, &b.alpha), product_of(ideal, &b.beta)) else {
        return false;
    };
    match (b.lhs_coef.mul(&fa), b.rhs_coef.mul(&fb)) {
        (Ok(l), Ok(r)) => l == r,
        _ => false,
    }
}

/// A polynomial of `S` with integer coefficients; zero coefficients are
/// never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct RtPolynomial {
    terms: BTreeMap<RtMonomial, i64>,
}

impl RtPolynomial {
    pub fn zero() -> Self {
        RtPolynomial::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&RtMonomial, i64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &RtMonomial) -> i64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: RtMonomial, c: i64) {
        if c == 0 {
            return;
        }
        let slot = self.terms.entry(m).or_insert(0);
        *slot += c;
        if *slot == 0 {
            let zero: Vec<RtMonomial> = self
                .terms
                .iter()
                .filter(|(_, &v)| v == 0)
                .map(|(k, _)| k.clone())
                .collect();
            for k in zero {
                self.terms.remove(&k);
            }
        }
    }

    pub fn add(&self, other: &RtPolynomial) -> RtPolynomial {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> RtPolynomial {
        RtPolynomial {
            terms: self.terms.iter().map(|(m, &c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale_by(&self, m: &RtMonomial) -> RtPolynomial {
        RtPolynomial {
            terms: self.terms.iter().map(|(k, &c)| (k.mul(m), c)).collect(),
        }
    }

    pub fn scale_int(&self, c: i64) -> RtPolynomial {
        if c == 0 {
            return RtPolynomial::zero();
        }
        RtPolynomial {
            terms: self.terms.iter().map(|(k, &v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn render(&self, ideal: &SquareFreeIdeal) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let sign = if *c < 0 { "-" } else { "+" };
            if k == 0 {
                if *c < 0 {
                    s.push('-');
                }
            } else {
                s.push_str(&format!(" {sign} "));
            }
            if c.abs() != 1 {
                s.push_str(&format!("{}*", c.abs()));
            }
            s.push_str(&m.render(ideal));
        }
        s
    }
}

impl fmt::Debug for RtPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}
