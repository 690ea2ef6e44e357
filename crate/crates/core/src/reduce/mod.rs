//! Rewriting Taylor binomials into lower-degree ones with checkable
//! certificates.

mod cert;
mod rules;
mod split;
mod witness;

use std::collections::HashMap;

use crate::monomial::SquareFreeIdeal;
use crate::rees::{IndexSequence, ReesBinomial};

pub use cert::{verify_certificate, CertTerm, Certificate, RuleKind};
pub use rules::apply_rule;
pub use split::{rule_split, split_gcds, BlockPartition, RuleError};
pub use witness::{irredundancy_witness, witnesses_of_degree, IrredundancyWitness};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reduction {
    /// `chain` lists certificates in preorder, root first. Leaves that no
    /// rule touches have degree at most `terminal_degree`.
    Reduced {
        chain: Vec<Certificate>,
        terminal_degree: usize,
    },
    /// No rule applies to the root.
    Stuck { witness: Option<IrredundancyWitness> },
}

impl Reduction {
    pub fn terminal_degree(&self) -> Option<usize> {
        match self {
            Reduction::Reduced { terminal_degree, .. } => Some(*terminal_degree),
            Reduction::Stuck { .. } => None,
        }
    }
}

#[derive(Clone)]
struct Node {
    cert: Option<Certificate>,
    terminal: usize,
}

struct Reducer<'a> {
    ideal: &'a SquareFreeIdeal,
    memo: HashMap<(IndexSequence, IndexSequence), Node>,
}

impl Reducer<'_> {
    fn solve(&mut self, alpha: &IndexSequence, beta: &IndexSequence) -> Node {
        let key = (alpha.clone(), beta.clone());
        if let Some(n) = self.memo.get(&key) {
            return n.clone();
        }
        let s = alpha.len();
        let mut best = Node {
            cert: None,
            terminal: s,
        };
        if s >= 2 {
            for rule in RuleKind::PRIORITY {
                let Ok(cert) = apply_rule(self.ideal, alpha, beta, rule) else {
                    continue;
                };
                let terminal = cert
                    .terms
                    .iter()
                    .map(|t| self.solve(&t.sub.alpha, &t.sub.beta).terminal)
                    .max()
                    .unwrap_or(1)
                    .max(1);
                if best.cert.is_none() || terminal < best.terminal {
                    best = Node {
                        cert: Some(cert),
                        terminal,
                    };
                }
                if best.terminal <= 1 {
                    break;
                }
            }
        }
        self.memo.insert(key, best.clone());
        best
    }

    fn flatten(&self, alpha: &IndexSequence, beta: &IndexSequence, out: &mut Vec<Certificate>) {
        let Some(cert) = self
            .memo
            .get(&(alpha.clone(), beta.clone()))
            .and_then(|n| n.cert.clone())
        else {
            return;
        };
        let mut seen = Vec::new();
        for t in &cert.terms {
            let key = (t.sub.alpha.clone(), t.sub.beta.clone());
            if !seen.contains(&key) {
                seen.push(key);
            }
        }
        out.push(cert);
        for (a, b) in seen {
            self.flatten(&a, &b, out);
        }
    }
}

/// Applies rules recursively, choosing per binomial the rule whose leaves
/// have the smallest maximal degree (first in priority order on ties).
pub fn reduce_to_normal(ideal: &SquareFreeIdeal, alpha: &IndexSequence, beta: &IndexSequence) -> Reduction {
    let mut r = Reducer {
        ideal,
        memo: HashMap::new(),
    };
    let root = r.solve(alpha, beta);
    if root.cert.is_none() {
        return Reduction::Stuck {
            witness: irredundancy_witness(ideal, alpha, beta),
        };
    }
    let mut chain = Vec::new();
    r.flatten(alpha, beta, &mut chain);
    Reduction::Reduced {
        chain,
        terminal_degree: root.terminal,
    }
}

/// [`reduce_to_normal`] on a binomial's sequences.
pub fn reduce_binomial(ideal: &SquareFreeIdeal, b: &ReesBinomial) -> Reduction {
    reduce_to_normal(ideal, &b.alpha, &b.beta)
}
