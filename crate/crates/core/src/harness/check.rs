use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use super::HarnessError;
use crate::graph::{EditKind, Graph, GraphEdit, TransformTrace, VertexSet};
use crate::machinery::{
    check_fact_t_dominating, check_fact_t_dset, check_fact_u_literal, claim_decompose, component_reduce, compute_u,
    independentize, peel_u_iterative, theorem_check, FactVerdict, IndependentizeOutcome, MachineryError, PeelPolicy,
    TraceDocument,
};
use crate::solvers::{gamma_exact, min_internal_edges_dset, DominationCertificate, SolveBudget, SolveError};
use crate::structure::{verify_lemma_disjoint, LemmaVerdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    Lemma,
    Claim,
    Independentize,
    FactULiteral,
    FactTDominating,
    FactTDset,
    Peel,
    Theorem,
    Reduce,
}

impl CheckKind {
    pub const NAMES: [&'static str; 9] = [
        "lemma",
        "claim",
        "independentize",
        "fact-u-literal",
        "fact-t-dominating",
        "fact-t-dset",
        "peel",
        "theorem",
        "reduce",
    ];
}

impl FromStr for CheckKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "lemma" => CheckKind::Lemma,
            "claim" => CheckKind::Claim,
            "independentize" => CheckKind::Independentize,
            "fact-u-literal" => CheckKind::FactULiteral,
            "fact-t-dominating" => CheckKind::FactTDominating,
            "fact-t-dset" => CheckKind::FactTDset,
            "peel" => CheckKind::Peel,
            "theorem" => CheckKind::Theorem,
            "reduce" => CheckKind::Reduce,
            other => {
                return Err(format!(
                    "unknown check {other:?}; expected one of {}",
                    Self::NAMES.join(", ")
                ))
            }
        })
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = [
            CheckKind::Lemma,
            CheckKind::Claim,
            CheckKind::Independentize,
            CheckKind::FactULiteral,
            CheckKind::FactTDominating,
            CheckKind::FactTDset,
            CheckKind::Peel,
            CheckKind::Theorem,
            CheckKind::Reduce,
        ]
        .iter()
        .position(|k| k == self)
        .expect("listed");
        f.write_str(Self::NAMES[i])
    }
}

#[derive(Clone, Debug)]
pub struct CheckRequest {
    pub kind: CheckKind,
    pub graph: Graph,
    /// The dominating set under test. Defaults to a d-set with fewest
    /// internal edges.
    pub x: Option<Vec<usize>>,
    /// The replacement set for the T-facts.
    pub s: Option<Vec<usize>>,
    /// Edges deleted at once by the literal U-probe. Defaults to all of U(X).
    pub u: Option<Vec<(usize, usize)>>,
    pub peel_policy: PeelPolicy,
    pub budget: SolveBudget,
}

impl CheckRequest {
    pub fn new(kind: CheckKind, graph: Graph) -> Self {
        CheckRequest {
            kind,
            graph,
            x: None,
            s: None,
            u: None,
            peel_policy: PeelPolicy::default(),
            budget: SolveBudget::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub kind: CheckKind,
    /// Short verdict word, e.g. `holds`, `violated`, `independent`, `stuck`.
    pub verdict: String,
    pub detail: Value,
}

impl CheckReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        format!(
            "check {}: {}\n{}",
            self.kind,
            self.verdict,
            serde_json::to_string_pretty(&self.detail).expect("detail serializes")
        )
    }
}

fn fact(verdict: &FactVerdict) -> &'static str {
    if verdict.holds() {
        "holds"
    } else {
        "violated"
    }
}

fn to_set(vs: &[usize]) -> VertexSet {
    vs.iter().copied().collect()
}

pub fn run_check(req: &CheckRequest) -> Result<CheckReport, HarnessError> {
    let g = &req.graph;
    let b = &req.budget;
    let x_cert = || -> Result<DominationCertificate, HarnessError> {
        Ok(match &req.x {
            Some(x) => DominationCertificate::dominating(g, x.iter().copied())?,
            None => min_internal_edges_dset(g, b)?,
        })
    };
    let s = || -> Result<VertexSet, HarnessError> {
        req.s
            .as_deref()
            .map(to_set)
            .ok_or_else(|| HarnessError::Usage("this check needs --s".into()))
    };
    let (verdict, detail) = match req.kind {
        CheckKind::Lemma => {
            let x = x_cert()?;
            let v = verify_lemma_disjoint(g, &x, b)?;
            let word = match v {
                LemmaVerdict::Holds { .. } => "holds",
                LemmaVerdict::Violated { .. } => "violated",
                LemmaVerdict::NotApplicable { .. } => "not_applicable",
            };
            (word.to_string(), json!({ "x": x.to_vec(), "result": v }))
        }
        CheckKind::Claim => {
            let x = x_cert()?;
            let d = claim_decompose(g, &x, req.peel_policy, b)?;
            let word = if d.claim_holds() { "claim_holds" } else { "claim_fails" };
            let components: Vec<Value> = d
                .components
                .iter()
                .map(|c| json!({ "vertices": c.vertices, "shape": c.shape, "y": c.y, "dominated": c.dominated, "gamma": c.gamma }))
                .collect();
            (
                word.to_string(),
                json!({
                    "x": x.to_vec(),
                    "peel_policy": d.policy,
                    "peeled": d.peel.deleted,
                    "t1": d.t1,
                    "t2": d.t2,
                    "t_prime": d.t_prime,
                    "y": d.y,
                    "components": components,
                    "y_dominates": d.y_dominates,
                    "accounting_ok": d.accounting_ok,
                    "max_degree_le_2": d.max_degree_le_2,
                    "gamma_reduced": d.gamma_reduced,
                    "gap": d.gap(),
                    "contract_violations": d.contract_violations,
                    "trace": TraceDocument::new(g, &d.trace, word),
                }),
            )
        }
        CheckKind::Independentize => {
            let x = x_cert()?;
            match independentize(g, &x)? {
                IndependentizeOutcome::Independent { cert, moves } => (
                    "independent".to_string(),
                    json!({ "x": x.to_vec(), "result": cert.to_vec(), "moves": moves }),
                ),
                IndependentizeOutcome::Stuck {
                    set,
                    edge,
                    witness,
                    moves,
                } => (
                    "stuck".to_string(),
                    json!({ "x": x.to_vec(), "set": set, "edge": edge, "witness": witness, "moves": moves }),
                ),
            }
        }
        CheckKind::FactULiteral => {
            let x = match &req.x {
                Some(_) => x_cert()?,
                None => gamma_exact(g, b)?,
            };
            let u: Vec<(usize, usize)> = match &req.u {
                Some(u) => u.iter().map(|&(a, c)| (a.min(c), a.max(c))).collect(),
                None => compute_u(g, x.set())?.edges.iter().map(|e| e.endpoints()).collect(),
            };
            let v = check_fact_u_literal(g, &x, &u, b)?;
            let mut trace = TransformTrace::default();
            for &(a, c) in &u {
                trace.push(GraphEdit::new(EditKind::DeleteEdge(a, c), "literal"));
            }
            (
                fact(&v).to_string(),
                json!({ "x": x.to_vec(), "u_subset": u, "result": v, "trace": TraceDocument::new(g, &trace, fact(&v)) }),
            )
        }
        CheckKind::FactTDominating => {
            let y = x_cert()?;
            let v = check_fact_t_dominating(g, y.set(), &s()?, b)?;
            (fact(&v).to_string(), json!({ "y": y.to_vec(), "s": s()?, "result": v }))
        }
        CheckKind::FactTDset => {
            let y = to_set(
                req.x
                    .as_deref()
                    .ok_or_else(|| HarnessError::Usage("this check needs --x".into()))?,
            );
            let v = check_fact_t_dset(g, &y, &s()?, b)?;
            (fact(&v).to_string(), json!({ "y": y, "s": s()?, "result": v }))
        }
        CheckKind::Peel => {
            let x = x_cert()?;
            let r = peel_u_iterative(g, x.set(), req.peel_policy)?;
            let word = if r.always_dominated() { "holds" } else { "violated" };
            (
                word.to_string(),
                json!({
                    "x": x.to_vec(),
                    "peel_policy": req.peel_policy,
                    "deleted": r.deleted,
                    "first_failure": r.first_failure,
                    "trace": TraceDocument::new(g, &r.trace, word),
                }),
            )
        }
        CheckKind::Theorem => {
            let v = theorem_check(g, b)?;
            let word = if v.holds() { "holds" } else { "violated" };
            (
                word.to_string(),
                json!({ "gamma": v.gamma.to_vec(), "i": v.i.to_vec(), "bound": v.bound, "branch": v.branch }),
            )
        }
        CheckKind::Reduce => {
            let y = to_set(
                req.x
                    .as_deref()
                    .ok_or_else(|| HarnessError::Usage("this check needs --x".into()))?,
            );
            let r = component_reduce(g, &y)?;
            let word = if r.all_steps_dominated() { "holds" } else { "violated" };
            (
                word.to_string(),
                json!({
                    "steps": r.steps,
                    "result_graph6": crate::graph::to_graph6(&r.graph),
                    "labels": r.labels,
                    "y": r.y,
                }),
            )
        }
    };
    Ok(CheckReport {
        kind: req.kind,
        verdict,
        detail,
    })
}

impl From<SolveError> for HarnessError {
    fn from(e: SolveError) -> Self {
        HarnessError::Machinery(MachineryError::Solve(e))
    }
}
