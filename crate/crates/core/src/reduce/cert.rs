use std::fmt;

use serde::{Deserialize, Serialize};

use crate::monomial::{Monomial, SquareFreeIdeal};
use crate::rees::{taylor_binomial, ReesBinomial, RtMonomial, RtPolynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleKind {
    SharedIndex,
    PowerFactor,
    ConstantRow,
    BlockDisjoint,
    TwoByTwo,
    ThreeByTwo,
    TreeLeaf,
    OddCycleStep,
    Split,
}

impl RuleKind {
    pub const PRIORITY: [RuleKind; 8] = [
        RuleKind::SharedIndex,
        RuleKind::PowerFactor,
        RuleKind::ConstantRow,
        RuleKind::BlockDisjoint,
        RuleKind::TwoByTwo,
        RuleKind::ThreeByTwo,
        RuleKind::TreeLeaf,
        RuleKind::OddCycleStep,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RuleKind::SharedIndex => "shared_index",
            RuleKind::PowerFactor => "power_factor",
            RuleKind::ConstantRow => "constant_row",
            RuleKind::BlockDisjoint => "block_disjoint",
            RuleKind::TwoByTwo => "two_by_two",
            RuleKind::ThreeByTwo => "three_by_two",
            RuleKind::TreeLeaf => "tree_leaf",
            RuleKind::OddCycleStep => "odd_cycle_step",
            RuleKind::Split => "split",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            RuleKind::SharedIndex => "a common index T_a factors out of both sides",
            RuleKind::PowerFactor => "a^l - b^l factors through a - b",
            RuleKind::ConstantRow => "one side is constant; peel one pair off",
            RuleKind::BlockDisjoint => "cross-coprime blocks split the pair",
            RuleKind::TwoByTwo => "two distinct entries per side; peel the majority pair",
            RuleKind::ThreeByTwo => "three against two distinct entries; case split on multiplicities",
            RuleKind::TreeLeaf => "a leaf of the induced graph peels off with its neighbour",
            RuleKind::OddCycleStep => "odd-cycle induced graph; peel along a path",
            RuleKind::Split => "telescoping split over an aligned block partition",
        }
    }
}

impl fmt::Display for RuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `coef · T^tfactor · sub`; `tfactor` is a sorted index multiset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertTerm {
    pub coef: Monomial,
    pub tfactor: Vec<usize>,
    pub sub: ReesBinomial,
}

/// `target = Σ terms`, checkable by expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub target: ReesBinomial,
    pub terms: Vec<CertTerm>,
    pub rule: RuleKind,
    /// The identity was built for `(β, α)` and every sub flipped back.
    pub swapped: bool,
    /// Per block, the cofactor `C_i` with `gcd(f_α, f_β)·C_i` equal to the
    /// product of the three gcds checked by the split. Empty for rules that
    /// do not go through a split.
    pub cofactors: Vec<Monomial>,
}

impl Certificate {
    pub fn provenance(&self) -> String {
        let orient = if self.swapped { " (roles swapped)" } else { "" };
        format!("{}: {}{}", self.rule.name(), self.rule.description(), orient)
    }

    pub fn max_sub_degree(&self) -> usize {
        self.terms.iter().map(|t| t.sub.degree()).max().unwrap_or(0)
    }

    pub fn render(&self, ideal: &SquareFreeIdeal) -> String {
        let mut parts = Vec::new();
        for t in &self.terms {
            let mut factor = Vec::new();
            if !t.coef.is_one() {
                factor.push(ideal.render(&t.coef));
            }
            if !t.tfactor.is_empty() {
                let m = RtMonomial::from_parts(
                    ideal.one(),
                    &crate::rees::IndexSequence::new(t.tfactor.clone()).expect("sorted"),
                    ideal.len(),
                );
                factor.push(m.render(ideal));
            }
            factor.push(format!("T[{},{}]", t.sub.alpha, t.sub.beta));
            parts.push(factor.join("*"));
        }
        format!(
            "T[{},{}] = {}",
            self.target.alpha,
            self.target.beta,
            parts.join(" + ")
        )
    }
}

/// Expands every term and compares with the target exactly. Also checks
/// that target and subs are the Taylor binomials of their sequences.
pub fn verify_certificate(ideal: &SquareFreeIdeal, cert: &Certificate) -> bool {
    let n = ideal.len();
    let genuine = |b: &ReesBinomial| taylor_binomial(ideal, &b.alpha, &b.beta).is_ok_and(|t| &t == b);
    if !genuine(&cert.target) || !cert.terms.iter().all(|t| genuine(&t.sub)) {
        return false;
    }
    let mut sum = RtPolynomial::zero();
    for t in &cert.terms {
        if t.coef.nvars() != ideal.nvars() || t.tfactor.iter().any(|&i| i == 0 || i > n) {
            return false;
        }
        let mut tpart = vec![0u16; n];
        for &i in &t.tfactor {
            tpart[i - 1] += 1;
        }
        let mult = RtMonomial::new(t.coef.clone(), &tpart);
        sum = sum.add(&t.sub.expand(n).scale_by(&mult));
    }
    sum == cert.target.expand(n)
}
