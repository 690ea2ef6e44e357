//! Verdicts on the relation type from the shape of the generator graph.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{build_graph, classify_component, components, ComponentClass, WalkWitness};
use crate::monomial::SquareFreeIdeal;
use crate::oracle::{relation_type_estimate, Limits, RtReport};
use crate::reduce::{witnesses_of_degree, IrredundancyWitness};
use crate::rees::{taylor_unchecked, ReesBinomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "bound", rename_all = "snake_case")]
pub enum RtVerdict {
    LinearType,
    RtAtMost(usize),
    Unknown,
}

impl RtVerdict {
    /// Largest degree a minimal generator may have; `None` when unknown.
    pub fn bound(self) -> Option<usize> {
        match self {
            RtVerdict::LinearType => Some(1),
            RtVerdict::RtAtMost(k) => Some(k),
            RtVerdict::Unknown => None,
        }
    }
}

impl fmt::Display for RtVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RtVerdict::LinearType => f.write_str("LinearType"),
            RtVerdict::RtAtMost(k) => write!(f, "RtAtMost({k})"),
            RtVerdict::Unknown => f.write_str("Unknown"),
        }
    }
}

/// A rule of the ladder together with the condition it found satisfied.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Justification {
    pub tag: String,
    pub condition: String,
}

impl Justification {
    fn new(tag: &str, condition: impl Into<String>) -> Self {
        Justification {
            tag: tag.to_string(),
            condition: condition.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonlinearWitness {
    pub binomial: ReesBinomial,
    pub witness: IrredundancyWitness,
    pub walk: WalkWitness,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentReport {
    pub vertices: Vec<usize>,
    pub class: ComponentClass,
}

#[derive(Debug, Clone)]
pub struct ClassificationReport {
    pub verdict: RtVerdict,
    pub justification: Vec<Justification>,
    pub component_classes: Vec<ComponentReport>,
    pub nonlinear_witnesses: Vec<NonlinearWitness>,
    /// Command that escalates the search when the verdict is `Unknown`.
    pub oracle_hook: Option<String>,
    pub oracle_crosscheck: Option<RtReport>,
}

impl ClassificationReport {
    /// Largest witness degree, i.e. a certified lower bound on the relation type.
    pub fn witnessed_lower(&self) -> usize {
        self.nonlinear_witnesses
            .iter()
            .map(|w| w.binomial.degree())
            .max()
            .unwrap_or(1)
    }
}

/// Irredundancy witnesses of degrees `2..=s_max`, one per binomial up to
/// sign, each with its closed walk.
pub fn nonlinear_witnesses(ideal: &SquareFreeIdeal, s_max: usize) -> Vec<NonlinearWitness> {
    let n = ideal.len();
    let degrees: Vec<usize> = (2..=s_max.min(n.saturating_sub(2))).collect();
    let found = crate::par::map(degrees, |s| witnesses_of_degree(ideal, s));
    let mut seen = std::collections::HashSet::new();
    found
        .into_iter()
        .flatten()
        .filter(|w| {
            let (a, b) = (w.alpha(), w.beta());
            seen.insert(if a < b { (a, b) } else { (b, a) })
        })
        .filter_map(|w| {
            let walk = w.closed_walk(ideal)?;
            let binomial = taylor_unchecked(ideal, &w.alpha(), &w.beta());
            Some(NonlinearWitness {
                binomial,
                witness: w,
                walk,
            })
        })
        .collect()
}

fn witness_search_space(n: usize, top: usize) -> String {
    if top < 2 {
        return format!("no admissible degree (n = {n})");
    }
    format!(
        "searched alpha = (a_1..a_s) distinct, beta = (b1^(s-1), b2), all indices distinct, s in 2..={top}"
    )
}

/// The decision ladder.
pub fn classify(ideal: &SquareFreeIdeal) -> ClassificationReport {
    let n = ideal.len();
    let g = build_graph(ideal);
    let comps = components(&g);
    let component_classes: Vec<ComponentReport> = comps
        .iter()
        .map(|c| ComponentReport {
            vertices: c.clone(),
            class: classify_component(&g, c),
        })
        .collect();
    let mut justification = Vec::new();
    let mut witnesses = Vec::new();
    let mut hook = None;

    let verdict = if component_classes.iter().all(|c| c.class.is_linear_type_shape()) {
        let shapes: Vec<&str> = component_classes.iter().map(|c| c.class.name()).collect();
        justification.push(Justification::new(
            "forest-or-odd-cycle",
            format!(
                "every component is a tree or has a unique odd cycle: [{}]",
                shapes.join(", ")
            ),
        ));
        RtVerdict::LinearType
    } else if n <= 5 {
        let bound = n.saturating_sub(2).max(1);
        justification.push(Justification::new(
            "at-most-five-generators",
            format!("n = {n} <= 5, so rt(I) <= max(n-2, 1) = {bound}"),
        ));
        witnesses = nonlinear_witnesses(ideal, n.saturating_sub(2));
        if witnesses.is_empty() {
            justification.push(Justification::new(
                "no-separating-witness",
                format!(
                    "n <= 5 and no irredundancy witness exists; {}",
                    witness_search_space(n, n.saturating_sub(2))
                ),
            ));
            RtVerdict::LinearType
        } else {
            RtVerdict::RtAtMost(bound)
        }
    } else if comps.iter().all(|c| c.len() <= 5) {
        let top = 3.min(n - 2);
        justification.push(Justification::new(
            "small-components",
            format!(
                "all {} components have at most 5 vertices, so rt(I) <= 3; {}",
                comps.len(),
                witness_search_space(n, top)
            ),
        ));
        witnesses = nonlinear_witnesses(ideal, top);
        RtVerdict::RtAtMost(3)
    } else {
        let big = comps.iter().map(Vec::len).max().unwrap_or(0);
        justification.push(Justification::new(
            "no-rule-applies",
            format!("n = {n} > 5 and a component has {big} vertices"),
        ));
        hook = Some(format!(
            "rees-kit rt <ideal-file> --s-max {} --cap 12",
            n.saturating_sub(1).clamp(1, 6)
        ));
        RtVerdict::Unknown
    };
    if !witnesses.is_empty() {
        let top = witnesses.iter().map(|w| w.binomial.degree()).max().unwrap_or(1);
        justification.push(Justification::new(
            "irredundancy-witness",
            format!(
                "{} witness(es); the largest has degree {top}, so rt(I) >= {top}",
                witnesses.len()
            ),
        ));
    }
    ClassificationReport {
        verdict,
        justification,
        component_classes,
        nonlinear_witnesses: witnesses,
        oracle_hook: hook,
        oracle_crosscheck: None,
    }
}

#[derive(Debug, Clone, Error)]
#[error("inconsistency: verdict {verdict} but {detail}")]
pub struct Inconsistency {
    pub verdict: RtVerdict,
    pub detail: String,
    pub report: Box<ClassificationReport>,
}

/// Runs the oracle up to `s_max` and checks it against the verdict and the
/// witnesses.
pub fn cross_validate(
    ideal: &SquareFreeIdeal,
    s_max: usize,
    limits: &Limits,
) -> Result<ClassificationReport, Inconsistency> {
    let mut report = classify(ideal);
    let rt = relation_type_estimate(ideal, s_max, limits);
    let mut problems = Vec::new();
    if let Some(bound) = report.verdict.bound() {
        if rt.certified_lower > bound {
            let w = rt
                .lower_witness
                .as_ref()
                .map(|b| b.render(ideal))
                .unwrap_or_default();
            problems.push(format!(
                "the oracle certifies a minimal generator of degree {} ({w})",
                rt.certified_lower
            ));
        }
        if report.witnessed_lower() > bound {
            problems.push(format!("a witness has degree {}", report.witnessed_lower()));
        }
    }
    for w in &report.nonlinear_witnesses {
        let s = w.binomial.degree();
        if s <= rt.s_max {
            if let Some(t) = rt.layers.get(s - 1) {
                if t.irreducible == 0 && t.unknown == 0 {
                    problems.push(format!(
                        "witness {} but the oracle reduces all of layer {s}",
                        w.binomial.render(ideal)
                    ));
                }
            }
        }
    }
    report.oracle_crosscheck = Some(rt);
    if problems.is_empty() {
        Ok(report)
    } else {
        Err(Inconsistency {
            verdict: report.verdict,
            detail: problems.join("; "),
            report: Box::new(report),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::demos;

    #[test]
    fn triangle_is_linear_type() {
        let r = cross_validate(&demos::triangle(), 3, &Limits::default()).unwrap();
        assert_eq!(r.verdict, RtVerdict::LinearType);
        assert!(r.nonlinear_witnesses.is_empty());
    }

    #[test]
    fn villarreal_bound_two() {
        let r = cross_validate(&demos::villarreal(), 3, &Limits::default()).unwrap();
        assert_eq!(r.verdict, RtVerdict::RtAtMost(2));
        assert!(matches!(
            r.component_classes[0].class,
            ComponentClass::UniqueEvenCycle { .. }
        ));
        assert_eq!(r.witnessed_lower(), 2);
        assert_eq!(r.oracle_crosscheck.unwrap().certified_lower, 2);
    }

    #[test]
    fn pentagon_bound_three() {
        let r = cross_validate(&demos::pentagon(), 3, &Limits::default()).unwrap();
        assert_eq!(r.verdict, RtVerdict::RtAtMost(3));
        assert!(r.nonlinear_witnesses.iter().any(|w| w.witness.avec == [2, 3, 5]
            && w.witness.b1 == 1
            && w.witness.b2 == 4
            && w.walk.length == 6));
        assert_eq!(r.oracle_crosscheck.unwrap().certified_lower, 3);
    }

    #[test]
    fn family_seven_is_unknown_with_hook() {
        let r = classify(&demos::family(7).unwrap().ideal);
        assert_eq!(r.verdict, RtVerdict::Unknown);
        assert!(r.oracle_hook.unwrap().contains("--s-max"));
    }
}
