use std::fmt::Write as _;
use std::path::Path;

use serde_json::{json, Value};

use rees_kit::classify::{classify as classify_ideal, cross_validate, ClassificationReport};
use rees_kit::demos;
use rees_kit::graph::{build_graph, to_dot};
use rees_kit::ideal_file::{parse_ideal, render_ideal};
use rees_kit::oracle::{
    fiber_witness, member_lower_escalating, minimal_generators, relation_type_estimate, Limits, RtReport,
    VerdictKind, CAP_LADDER,
};
use rees_kit::random::{random_shaped, rng, Shape};
use rees_kit::reduce::{irredundancy_witness, reduce_to_normal, Reduction};
use rees_kit::rees::{substitute_check, taylor_binomial, taylor_layer, IndexSequence, ReesBinomial};
use rees_kit::report::ReportJson;
use rees_kit::SquareFreeIdeal;

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Inconsistency { message: String, output: String },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Inconsistency { .. } => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) => f.write_str(m),
            CliError::Inconsistency { message, .. } => f.write_str(message),
        }
    }
}

fn input(msg: impl std::fmt::Display) -> CliError {
    CliError::Input(msg.to_string())
}

pub struct Settings {
    s_max: Option<usize>,
    limits: Limits,
    json: bool,
}

impl Settings {
    pub fn new(s_max: Option<usize>, cap: Option<u32>, json: bool) -> Result<Self, CliError> {
        if s_max == Some(0) {
            return Err(input("--s-max must be positive"));
        }
        if cap == Some(0) {
            return Err(input("--cap must be positive"));
        }
        Ok(Settings {
            s_max,
            limits: Limits::with_slack(cap.unwrap_or(CAP_LADDER[0])),
            json,
        })
    }

    fn s_max_for(&self, ideal: &SquareFreeIdeal) -> usize {
        self.s_max
            .unwrap_or_else(|| ideal.len().saturating_sub(1).clamp(1, 6))
    }
}

fn load(path: &Path) -> Result<SquareFreeIdeal, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    parse_ideal(&text).map_err(|e| input(format!("{}:{e}", path.display())))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value");
    s.push('\n');
    s
}

fn describe_ideal(ideal: &SquareFreeIdeal, out: &mut String) {
    let _ = writeln!(
        out,
        "ideal: {} generators in {} variables",
        ideal.len(),
        ideal.nvars()
    );
    for (i, g) in ideal.gens().iter().enumerate() {
        let _ = writeln!(out, "  f{} = {}", i + 1, ideal.render(g));
    }
}

fn render_report(ideal: &SquareFreeIdeal, r: &ClassificationReport, out: &mut String) {
    describe_ideal(ideal, out);
    let _ = writeln!(out, "components:");
    for c in &r.component_classes {
        let vs: Vec<String> = c.vertices.iter().map(|v| format!("y{v}")).collect();
        let _ = writeln!(out, "  {{{}}}: {}", vs.join(", "), c.class.name());
    }
    let _ = writeln!(out, "verdict: {}", r.verdict);
    let _ = writeln!(out, "justification:");
    for j in &r.justification {
        let _ = writeln!(out, "  [{}] {}", j.tag, j.condition);
    }
    if !r.nonlinear_witnesses.is_empty() {
        let _ = writeln!(out, "witnesses:");
        for w in &r.nonlinear_witnesses {
            let _ = writeln!(
                out,
                "  {}  {}\n    walk {} (length {})",
                w.binomial.render(ideal),
                w.witness.render(ideal),
                w.walk.render(),
                w.walk.length
            );
        }
    }
    if let Some(hook) = &r.oracle_hook {
        let _ = writeln!(out, "escalate with: {hook}");
    }
    if let Some(rt) = &r.oracle_crosscheck {
        let _ = writeln!(
            out,
            "oracle: certified lower {}, verified upper through {}, unknown {}",
            rt.certified_lower, rt.verified_upper_through, rt.unknown_count
        );
    }
}

pub fn classify(
    paths: &[std::path::PathBuf],
    oracle: bool,
    set: &Settings,
    dot: Option<&Path>,
) -> Result<String, CliError> {
    if dot.is_some() && paths.len() != 1 {
        return Err(input("--dot needs exactly one ideal file"));
    }
    let ideals = paths.iter().map(|p| load(p)).collect::<Result<Vec<_>, _>>()?;
    let results: Vec<Result<ClassificationReport, (String, Box<ClassificationReport>)>> =
        std::thread::scope(|sc| {
            let handles: Vec<_> = ideals
                .iter()
                .map(|ideal| {
                    sc.spawn(move || {
                        if oracle {
                            cross_validate(ideal, set.s_max_for(ideal), &set.limits)
                                .map_err(|e| (e.to_string(), e.report))
                        } else {
                            Ok(classify_ideal(ideal))
                        }
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("classifier thread"))
                .collect()
        });

    if let Some(p) = dot {
        std::fs::write(p, to_dot(&ideals[0], &build_graph(&ideals[0])))
            .map_err(|e| input(format!("{}: {e}", p.display())))?;
    }
    let mut out = String::new();
    let mut json_reports = Vec::new();
    let mut failure = None;
    for ((path, ideal), res) in paths.iter().zip(&ideals).zip(results) {
        let report = match res {
            Ok(r) => r,
            Err((msg, r)) => {
                failure.get_or_insert(format!("{}: {msg}", path.display()));
                *r
            }
        };
        if set.json {
            json_reports.push(ReportJson::build(ideal, &report));
        } else {
            if paths.len() > 1 {
                let _ = writeln!(out, "== {}", path.display());
            }
            render_report(ideal, &report, &mut out);
        }
    }
    if set.json {
        out = if json_reports.len() == 1 {
            json_reports[0].to_json()
        } else {
            serde_json::to_string_pretty(&json_reports).expect("reports serialize")
        };
        out.push('\n');
    }
    match failure {
        None => Ok(out),
        Some(message) => Err(CliError::Inconsistency { message, output: out }),
    }
}

fn binomial_json(ideal: &SquareFreeIdeal, b: &ReesBinomial) -> Value {
    json!({
        "alpha": b.alpha.entries(),
        "beta": b.beta.entries(),
        "binomial": b.render(ideal),
    })
}

pub fn taylor(path: &Path, degree: usize, json_out: bool) -> Result<String, CliError> {
    if degree == 0 {
        return Err(input("--degree must be positive"));
    }
    let ideal = load(path)?;
    let layer = taylor_layer(&ideal, degree);
    if json_out {
        let items: Vec<Value> = layer.iter().map(|b| binomial_json(&ideal, b)).collect();
        return Ok(pretty(&json!({ "degree": degree, "binomials": items })));
    }
    let mut out = String::new();
    for b in &layer {
        let _ = writeln!(out, "T[{},{}]  {}", b.alpha, b.beta, b.render(&ideal));
    }
    let _ = writeln!(out, "{} binomials in degree {degree}", layer.len());
    Ok(out)
}

fn parse_sequence(ideal: &SquareFreeIdeal, text: &str, flag: &str) -> Result<IndexSequence, CliError> {
    let entries = text
        .split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| input(format!("{flag}: expected comma-separated indices, got {text:?}")))?;
    for &i in &entries {
        ideal.check_index(i).map_err(|e| input(format!("{flag}: {e}")))?;
    }
    IndexSequence::from_unsorted(entries).map_err(|e| input(format!("{flag}: {e}")))
}

pub fn reduce(path: &Path, alpha: &str, beta: &str, json_out: bool) -> Result<String, CliError> {
    let ideal = load(path)?;
    let a = parse_sequence(&ideal, alpha, "--alpha")?;
    let b = parse_sequence(&ideal, beta, "--beta")?;
    let target = taylor_binomial(&ideal, &a, &b).map_err(input)?;
    let result = reduce_to_normal(&ideal, &a, &b);
    if json_out {
        let v = match &result {
            Reduction::Reduced {
                chain,
                terminal_degree,
            } => json!({
                "target": binomial_json(&ideal, &target),
                "outcome": "reduced",
                "terminal_degree": terminal_degree,
                "chain": chain.iter().map(|c| json!({
                    "rule": c.rule.name(),
                    "provenance": c.provenance(),
                    "swapped": c.swapped,
                    "identity": c.render(&ideal),
                    "cofactors": c.cofactors.iter().map(|m| ideal.render(m)).collect::<Vec<_>>(),
                    "terms": c.terms.iter().map(|t| json!({
                        "coef": ideal.render(&t.coef),
                        "tfactor": t.tfactor,
                        "sub": binomial_json(&ideal, &t.sub),
                    })).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
            }),
            Reduction::Stuck { witness } => json!({
                "target": binomial_json(&ideal, &target),
                "outcome": "stuck",
                "witness": witness.as_ref().map(|w| json!({
                    "avec": w.avec,
                    "b1": w.b1,
                    "b2": w.b2,
                    "xvars": w.xvars.iter().map(|&v| ideal.vars().name(v)).collect::<Vec<_>>(),
                    "zvars": w.zvars.iter().map(|&v| ideal.vars().name(v)).collect::<Vec<_>>(),
                    "walk": w.closed_walk(&ideal).map(|x| x.vertices),
                })),
            }),
        };
        return Ok(pretty(&v));
    }
    let mut out = String::new();
    let _ = writeln!(out, "T[{a},{b}] = {}", target.render(&ideal));
    match result {
        Reduction::Reduced {
            chain,
            terminal_degree,
        } => {
            let _ = writeln!(
                out,
                "reduced in {} step(s); leaves have degree <= {terminal_degree}",
                chain.len()
            );
            for (i, c) in chain.iter().enumerate() {
                let _ = writeln!(out, "{}. {}", i + 1, c.provenance());
                let _ = writeln!(out, "   {}", c.render(&ideal));
                let mut shown = Vec::new();
                for t in &c.terms {
                    if !shown.contains(&&t.sub) {
                        shown.push(&t.sub);
                        let _ = writeln!(
                            out,
                            "     T[{},{}] = {}",
                            t.sub.alpha,
                            t.sub.beta,
                            t.sub.render(&ideal)
                        );
                    }
                }
            }
        }
        Reduction::Stuck { witness } => {
            let _ = writeln!(out, "stuck: no rule applies");
            match witness {
                Some(w) => {
                    let _ = writeln!(
                        out,
                        "irredundancy witness: b1 = {}, b2 = {}, a = {:?}",
                        w.b1, w.b2, w.avec
                    );
                    let names = |v: &[usize]| {
                        v.iter()
                            .map(|&i| ideal.vars().name(i))
                            .collect::<Vec<_>>()
                            .join(", ")
                    };
                    let _ = writeln!(out, "  xvars: {}", names(&w.xvars));
                    let _ = writeln!(out, "  zvars: {}", names(&w.zvars));
                    if let Some(walk) = w.closed_walk(&ideal) {
                        let _ = writeln!(
                            out,
                            "  even closed walk: {} (length {})",
                            walk.render(),
                            walk.length
                        );
                    }
                }
                None => {
                    let _ = writeln!(out, "no witness of the separating shape");
                }
            }
        }
    }
    Ok(out)
}

fn rt_json(ideal: &SquareFreeIdeal, rt: &RtReport, mins: &[ReesBinomial], incomplete: usize) -> Value {
    json!({
        "s_max": rt.s_max,
        "layers": rt.layers,
        "certified_lower": rt.certified_lower,
        "lower_witness": rt.lower_witness.as_ref().map(|b| binomial_json(ideal, b)),
        "candidate_lower": rt.candidate_lower,
        "verified_upper_through": rt.verified_upper_through,
        "unknown_count": rt.unknown_count,
        "minimal_generators": mins.iter().map(|b| binomial_json(ideal, b)).collect::<Vec<_>>(),
        "incomplete_fibers": incomplete,
    })
}

fn rt_text(
    ideal: &SquareFreeIdeal,
    rt: &RtReport,
    mins: &[ReesBinomial],
    incomplete: usize,
    out: &mut String,
) {
    for t in &rt.layers {
        if t.degree == 1 {
            let _ = writeln!(out, "layer 1: {} binomials", t.binomials);
        } else {
            let _ = writeln!(
                out,
                "layer {}: {} binomials, {} reduce, {} irreducible, {} unknown",
                t.degree, t.binomials, t.reduce, t.irreducible, t.unknown
            );
        }
    }
    let w = rt
        .lower_witness
        .as_ref()
        .map(|b| format!(" ({})", b.render(ideal)))
        .unwrap_or_default();
    let _ = writeln!(out, "certified lower bound: {}{w}", rt.certified_lower);
    let _ = writeln!(out, "verified upper through: {}", rt.verified_upper_through);
    let _ = writeln!(out, "minimal generators ({}):", mins.len());
    for b in mins {
        let _ = writeln!(out, "  {}", b.render(ideal));
    }
    if incomplete > 0 {
        let _ = writeln!(out, "warning: {incomplete} fiber(s) exceeded the state budget");
    }
}

fn rt_of(ideal: &SquareFreeIdeal, s_max: usize, set: &Settings) -> String {
    let rt = relation_type_estimate(ideal, s_max, &set.limits);
    let mins = minimal_generators(ideal, s_max, set.limits.max_states);
    if set.json {
        pretty(&rt_json(ideal, &rt, &mins.generators, mins.incomplete_fibers))
    } else {
        let mut out = String::new();
        rt_text(ideal, &rt, &mins.generators, mins.incomplete_fibers, &mut out);
        out
    }
}

pub fn rt(path: &Path, set: &Settings) -> Result<String, CliError> {
    let ideal = load(path)?;
    Ok(rt_of(&ideal, set.s_max_for(&ideal), set))
}

fn kind_name(k: VerdictKind) -> &'static str {
    match k {
        VerdictKind::Yes => "Yes",
        VerdictKind::No => "No",
        VerdictKind::Unknown => "Unknown",
    }
}

pub fn demo(name: &str, n: usize, set: &Settings) -> Result<String, CliError> {
    let mut out = String::new();
    match name {
        "villarreal" => {
            let ideal = demos::villarreal();
            if set.json {
                let rt = relation_type_estimate(&ideal, 3, &set.limits);
                let mins = minimal_generators(&ideal, 3, set.limits.max_states);
                let report = ReportJson::build(&ideal, &classify_ideal(&ideal));
                return Ok(pretty(&json!({
                    "ideal": render_ideal(&ideal),
                    "classification": report,
                    "rt": rt_json(&ideal, &rt, &mins.generators, mins.incomplete_fibers),
                })));
            }
            render_report(&ideal, &classify_ideal(&ideal), &mut out);
            out.push_str(&rt_of(&ideal, 3, set));
        }
        "pentagon" => {
            let ideal = demos::pentagon();
            let a = IndexSequence::new(vec![2, 3, 5]).expect("sorted");
            let b = IndexSequence::new(vec![1, 1, 4]).expect("sorted");
            let target = taylor_binomial(&ideal, &a, &b).expect("valid pair");
            let w = irredundancy_witness(&ideal, &a, &b).ok_or_else(|| input("pentagon witness missing"))?;
            let walk = w
                .closed_walk(&ideal)
                .ok_or_else(|| input("pentagon walk missing"))?;
            let lower = member_lower_escalating(&ideal, &target, 2, set.limits).kind();
            let report = classify_ideal(&ideal);
            if set.json {
                return Ok(pretty(&json!({
                    "ideal": render_ideal(&ideal),
                    "binomial": binomial_json(&ideal, &target),
                    "witness": w,
                    "walk": walk.vertices,
                    "walk_length": walk.length,
                    "member_lower_k2": kind_name(lower),
                    "classification": ReportJson::build(&ideal, &report),
                })));
            }
            render_report(&ideal, &report, &mut out);
            let _ = writeln!(out, "T[{a},{b}] = {}", target.render(&ideal));
            let _ = writeln!(out, "  {}", w.render(&ideal));
            let _ = writeln!(
                out,
                "  even closed walk: {} (length {})",
                walk.render(),
                walk.length
            );
            let _ = writeln!(out, "  reduces modulo layers 1..2: {}", kind_name(lower));
        }
        "family" => {
            let fam = demos::family(n).map_err(input)?;
            let ideal = &fam.ideal;
            let k = 2 * n - 8;
            let limits = Limits {
                cap_slack: set.limits.cap_slack.max(8),
                ..set.limits
            };
            let f_ok = substitute_check(ideal, &fam.f);
            let g_ok = substitute_check(ideal, &fam.g);
            let printed_ok = fam.g_printed.audit(ideal);
            let f_lower = member_lower_escalating(ideal, &fam.f, k, limits).kind();
            let g_flag = fiber_witness(ideal, &fam.g, &limits);
            if set.json {
                return Ok(pretty(&json!({
                    "n": n,
                    "ideal": render_ideal(ideal),
                    "F": binomial_json(ideal, &fam.f),
                    "F_substitute_check": f_ok,
                    "F_reduces_below": { "k": k, "verdict": kind_name(f_lower) },
                    "G": binomial_json(ideal, &fam.g),
                    "G_substitute_check": g_ok,
                    "G_printed_audit": printed_ok,
                    "G_non_fiber_type_candidate": g_flag,
                })));
            }
            describe_ideal(ideal, &mut out);
            let _ = writeln!(out, "F = {}", fam.f.render(ideal));
            let _ = writeln!(out, "  substitute_check: {}", pass(f_ok));
            let consequence = if f_lower == VerdictKind::No {
                format!(", so rt(I) >= {}", 2 * n - 7)
            } else {
                String::new()
            };
            let _ = writeln!(
                out,
                "  reduces modulo layers 1..{k}: {}{consequence}",
                kind_name(f_lower)
            );
            let _ = writeln!(out, "G = {}", fam.g.render(ideal));
            let _ = writeln!(out, "  substitute_check: {}", pass(g_ok));
            let _ = writeln!(
                out,
                "  note: the commonly printed form {} fails the substitution audit ({}); G above uses adjusted exponents so that it is homogeneous",
                fam.g_printed.render(ideal),
                pass(printed_ok)
            );
            let _ = writeln!(
                out,
                "  non-fiber-type candidate (x-coefficients, not reducible in lower degree): {}",
                if g_flag { "yes" } else { "no" }
            );
        }
        other => return Err(input(format!("unknown demo {other:?}"))),
    }
    Ok(out)
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

pub fn random(shape: Shape, n: usize, vars: usize, seed: u64) -> Result<String, CliError> {
    if n == 0 {
        return Err(input("--n must be positive"));
    }
    let mut r = rng(seed);
    let ideal = match shape {
        Shape::General => {
            if vars < 2 || n > vars {
                return Err(input("general ideals need 2 <= --vars and --n <= --vars"));
            }
            rees_kit::random::random_general(&mut r, n, vars)
        }
        other => random_shaped(&mut r, other, n),
    };
    let label = match shape {
        Shape::General => "general",
        Shape::Forest => "forest",
        Shape::OddCycle => "odd-cycle",
        Shape::EvenCycle => "even-cycle",
    };
    Ok(format!(
        "# random {label} n={} seed={seed}\n{}",
        ideal.len(),
        render_ideal(&ideal)
    ))
}
