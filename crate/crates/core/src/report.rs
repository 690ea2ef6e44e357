//! JSON form of a classification report.

use serde::{Deserialize, Serialize};

use crate::classify::{ClassificationReport, Justification, RtVerdict};
use crate::graph::{build_graph, ComponentClass};
use crate::monomial::SquareFreeIdeal;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub ideal: IdealJson,
    pub graph: GraphJson,
    pub verdict: RtVerdict,
    pub justification: Vec<Justification>,
    pub witnesses: Vec<WitnessJson>,
    pub oracle: Option<OracleJson>,
    pub versions: Versions,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealJson {
    pub vars: Vec<String>,
    pub gens: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub edges: Vec<(usize, usize)>,
    pub components: Vec<Vec<usize>>,
    pub classes: Vec<ComponentClass>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub alpha: Vec<usize>,
    pub beta: Vec<usize>,
    pub binomial: String,
    pub xvars: Vec<String>,
    pub zvars: Vec<String>,
    pub walk: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleJson {
    pub certified_lower: usize,
    pub verified_upper_through: usize,
    pub unknown_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Versions {
    pub format: u32,
}

impl ReportJson {
    pub fn build(ideal: &SquareFreeIdeal, report: &ClassificationReport) -> Self {
        let vars = ideal.vars();
        let name = |v: &usize| vars.name(*v).to_string();
        ReportJson {
            ideal: IdealJson {
                vars: vars.names().to_vec(),
                gens: ideal.gens().iter().map(|g| ideal.render(g)).collect(),
            },
            graph: GraphJson {
                edges: build_graph(ideal).edges(),
                components: report
                    .component_classes
                    .iter()
                    .map(|c| c.vertices.clone())
                    .collect(),
                classes: report.component_classes.iter().map(|c| c.class.clone()).collect(),
            },
            verdict: report.verdict,
            justification: report.justification.clone(),
            witnesses: report
                .nonlinear_witnesses
                .iter()
                .map(|w| WitnessJson {
                    alpha: w.binomial.alpha.entries().to_vec(),
                    beta: w.binomial.beta.entries().to_vec(),
                    binomial: w.binomial.render(ideal),
                    xvars: w.witness.xvars.iter().map(name).collect(),
                    zvars: w.witness.zvars.iter().map(name).collect(),
                    walk: w.walk.vertices.clone(),
                })
                .collect(),
            oracle: report.oracle_crosscheck.as_ref().map(|r| OracleJson {
                certified_lower: r.certified_lower,
                verified_upper_through: r.verified_upper_through,
                unknown_count: r.unknown_count,
            }),
            versions: Versions {
                format: FORMAT_VERSION,
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{classify, cross_validate};
    use crate::demos;
    use crate::oracle::Limits;

    #[test]
    fn json_round_trips_with_stable_keys() {
        let ideal = demos::pentagon();
        let r = cross_validate(&ideal, 3, &Limits::default()).unwrap();
        let j = ReportJson::build(&ideal, &r);
        let text = j.to_json();
        assert_eq!(ReportJson::from_json(&text).unwrap(), j);
        let keys = [
            "\"ideal\"",
            "\"graph\"",
            "\"verdict\"",
            "\"justification\"",
            "\"witnesses\"",
            "\"oracle\"",
            "\"versions\"",
        ];
        let pos: Vec<usize> = keys.iter().map(|k| text.find(k).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]));
        assert!(text.contains("\"format\": 1"));
    }

    #[test]
    fn villarreal_json_fields() {
        let ideal = demos::villarreal();
        let j = ReportJson::build(&ideal, &classify(&ideal));
        assert_eq!(j.verdict, RtVerdict::RtAtMost(2));
        assert_eq!(j.ideal.gens[0], "x1*x2*x3");
        assert!(j.oracle.is_none());
        assert!(matches!(
            j.graph.classes[0],
            ComponentClass::UniqueEvenCycle { .. }
        ));
    }
}
