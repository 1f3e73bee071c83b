use serde_json::{json, Value};

use super::{Finding, PropertyId, RunConfig, SolverStats, Verdict};
use crate::graph::{Graph, VertexSet};
use crate::machinery::{
    check_fact_t_dominating_known, check_fact_t_dset, component_reduce, compute_t, compute_u, decompose_unchecked,
    independentize, peel_u_iterative, theorem_verdict, DecompositionResult, FactVerdict, IndependentizeOutcome,
    MachineryError, PeelPolicy, TraceDocument,
};
use crate::solvers::{
    brute_force_gamma, brute_force_i, enumerate_min_dsets_with_stats, gamma_exact_with_stats, i_exact_with_stats,
    min_internal_edge_subset, reed_bound, DominationCertificate, SolveBudget, SolveError, BRUTE_FORCE_MAX_VERTICES,
};
use crate::structure::{find_claw, find_double_star, has_adjacent_deg3_pair, verify_disjoint_unchecked, LemmaVerdict};

enum EvalError {
    Budget,
    Failed(String),
}

impl From<SolveError> for EvalError {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::BudgetExhausted { .. } => EvalError::Budget,
            other => EvalError::Failed(other.to_string()),
        }
    }
}

impl From<MachineryError> for EvalError {
    fn from(e: MachineryError) -> Self {
        match e {
            MachineryError::Solve(s) => s.into(),
            other => EvalError::Failed(other.to_string()),
        }
    }
}

type Eval = Result<(Verdict, Value), EvalError>;

fn na(reason: &str) -> Eval {
    Ok((Verdict::NotApplicable, json!({ "reason": reason })))
}

fn holds_if(ok: bool, cert: Value) -> Eval {
    Ok((if ok { Verdict::Holds } else { Verdict::Violated }, cert))
}

fn set_json(s: &VertexSet) -> Value {
    json!(s.iter().collect::<Vec<_>>())
}

/// Per-graph memo of the expensive solver results.
struct Ctx<'a> {
    g: &'a Graph,
    budget: SolveBudget,
    policy: PeelPolicy,
    nodes: u64,
    gamma: Option<DominationCertificate>,
    i: Option<DominationCertificate>,
    dsets: Option<Vec<DominationCertificate>>,
    decomps: Option<Vec<DecompositionResult>>,
}

impl Ctx<'_> {
    fn gamma(&mut self) -> Result<DominationCertificate, EvalError> {
        if self.gamma.is_none() {
            let (c, s) = gamma_exact_with_stats(self.g, &self.budget)?;
            self.nodes += s.nodes;
            self.gamma = Some(c);
        }
        Ok(self.gamma.clone().expect("just set"))
    }

    fn i(&mut self) -> Result<DominationCertificate, EvalError> {
        if self.i.is_none() {
            let (c, s) = i_exact_with_stats(self.g, &self.budget)?;
            self.nodes += s.nodes;
            self.i = Some(c);
        }
        Ok(self.i.clone().expect("just set"))
    }

    fn dsets(&mut self) -> Result<&[DominationCertificate], EvalError> {
        if self.dsets.is_none() {
            let (d, s) = enumerate_min_dsets_with_stats(self.g, &self.budget)?;
            self.nodes += s.nodes;
            self.dsets = Some(d);
        }
        Ok(self.dsets.as_deref().expect("just set"))
    }

    fn fewest_internal(&mut self) -> Result<Vec<DominationCertificate>, EvalError> {
        Ok(min_internal_edge_subset(self.dsets()?))
    }

    fn connected_cubic(&self) -> bool {
        self.g.is_cubic() && self.g.is_connected()
    }

    fn decomps(&mut self) -> Result<&[DecompositionResult], EvalError> {
        if self.decomps.is_none() {
            let xs = self.fewest_internal()?;
            let mut out = Vec::with_capacity(xs.len());
            for x in &xs {
                out.push(decompose_unchecked(self.g, x.set(), self.policy, &self.budget)?);
            }
            self.decomps = Some(out);
        }
        Ok(self.decomps.as_deref().expect("just set"))
    }

    /// γ = i under a structural precondition; the witness excludes the graph.
    fn equality_unless(&mut self, witness: Option<Value>) -> Eval {
        if let Some(w) = witness {
            return Ok((Verdict::NotApplicable, json!({ "witness": w })));
        }
        let (gamma, i) = (self.gamma()?, self.i()?);
        holds_if(
            gamma.size() == i.size(),
            json!({ "gamma": gamma.to_vec(), "i": i.to_vec() }),
        )
    }
}

fn evaluate(ctx: &mut Ctx, p: PropertyId) -> Eval {
    let g = ctx.g;
    match p {
        PropertyId::ReedBound => {
            if !ctx.connected_cubic() {
                return na("not a connected cubic graph");
            }
            let gamma = ctx.gamma()?;
            let bound = reed_bound(g.n());
            holds_if(
                gamma.size() <= bound,
                json!({ "gamma": gamma.to_vec(), "bound": bound, "verified": gamma.verify(g) }),
            )
        }
        PropertyId::GammaEqualsIAboveBound => {
            if !ctx.connected_cubic() {
                return na("not a connected cubic graph");
            }
            let v = theorem_verdict(g, ctx.gamma()?, ctx.i()?);
            holds_if(
                v.holds(),
                json!({ "gamma": v.gamma.to_vec(), "i": v.i.to_vec(), "bound": v.bound, "branch": v.branch }),
            )
        }
        PropertyId::ClawFreeEquality => {
            let w = find_claw(g).map(|w| json!(w));
            ctx.equality_unless(w)
        }
        PropertyId::DoubleStarFreeEquality => {
            let w = find_double_star(g).map(|w| json!(w));
            ctx.equality_unless(w)
        }
        PropertyId::Deg3PairFreeEquality => {
            let w = has_adjacent_deg3_pair(g).map(|w| json!(w));
            ctx.equality_unless(w)
        }
        PropertyId::DisjointNeighborhoods => {
            if g.max_degree() > 3 {
                return na("max degree above 3");
            }
            let xs = ctx.fewest_internal()?;
            let x0 = &xs[0];
            if x0.size() < 3 {
                return na("gamma below 3");
            }
            if x0.internal_edges() == 0 {
                return na("an independent d-set exists");
            }
            let dsets = ctx.dsets()?.to_vec();
            let mut inclusion_minimal = 0;
            for x in &xs {
                match verify_disjoint_unchecked(g, x, &dsets)? {
                    LemmaVerdict::Violated { v1, v2, w, shared } => {
                        return holds_if(
                            false,
                            json!({ "x": x.to_vec(), "v1": v1, "v2": v2, "w": w, "shared": shared }),
                        );
                    }
                    LemmaVerdict::Holds {
                        inclusion_minimal: m, ..
                    } => inclusion_minimal += usize::from(m),
                    LemmaVerdict::NotApplicable { reason } => return na(&reason),
                }
            }
            holds_if(
                true,
                json!({ "sets_checked": xs.len(), "inclusion_minimal": inclusion_minimal, "internal_edges": x0.internal_edges() }),
            )
        }
        PropertyId::ULiteralDeletion => {
            let dsets = ctx.dsets()?.to_vec();
            let mut checked = 0;
            for x in &dsets {
                let u = compute_u(g, x.set())?;
                let mut subsets: Vec<Vec<(usize, usize)>> = (0..g.n())
                    .map(|v| {
                        u.edges
                            .iter()
                            .map(|e| e.endpoints())
                            .filter(|&(a, b)| a == v || b == v)
                            .collect()
                    })
                    .filter(|s: &Vec<_>| s.len() >= 2)
                    .collect();
                subsets.push(u.edges.iter().map(|e| e.endpoints()).collect());
                for subset in subsets {
                    checked += 1;
                    let reduced = g.delete_edges(&subset).map_err(|e| EvalError::Failed(e.to_string()))?;
                    if let Some(vertex) = reduced.first_undominated(x.set()) {
                        let mut trace = crate::graph::TransformTrace::default();
                        for &(a, b) in &subset {
                            trace.push(crate::graph::GraphEdit::new(
                                crate::graph::EditKind::DeleteEdge(a, b),
                                "literal",
                            ));
                        }
                        return holds_if(
                            false,
                            json!({
                                "x": x.to_vec(),
                                "u_subset": subset,
                                "undominated": vertex,
                                "trace": TraceDocument::new(g, &trace, format!("vertex {vertex} undominated")),
                            }),
                        );
                    }
                }
            }
            holds_if(true, json!({ "sets_checked": dsets.len(), "subsets_checked": checked }))
        }
        PropertyId::PeelSafety => {
            let dsets = ctx.dsets()?.to_vec();
            let mut deletions = 0;
            for x in &dsets {
                let r = peel_u_iterative(g, x.set(), ctx.policy)?;
                if let Some(step) = r.first_failure {
                    return holds_if(
                        false,
                        json!({
                            "x": x.to_vec(),
                            "failed_after": step,
                            "trace": TraceDocument::new(g, &r.trace, "domination lost"),
                        }),
                    );
                }
                deletions += r.deleted.len();
            }
            holds_if(true, json!({ "sets_checked": dsets.len(), "deletions": deletions }))
        }
        PropertyId::ReplacementDominating => {
            let dsets = ctx.dsets()?.to_vec();
            let mut instances = 0;
            for x in &dsets {
                for s in replacement_choices(g, x.set())? {
                    instances += 1;
                    if let FactVerdict::Violated { violation } = check_fact_t_dominating_known(g, x.set(), &s)? {
                        return holds_if(
                            false,
                            json!({ "x": x.to_vec(), "s": set_json(&s), "violation": violation }),
                        );
                    }
                }
            }
            holds_if(true, json!({ "instances": instances }))
        }
        PropertyId::ReplacementMinimum => {
            let dsets = ctx.dsets()?.to_vec();
            let mut instances = 0;
            for x in &dsets {
                for s in replacement_choices(g, x.set())? {
                    match check_fact_t_dset(g, x.set(), &s, &ctx.budget) {
                        Err(MachineryError::Precondition(_)) => continue,
                        Err(e) => return Err(e.into()),
                        Ok(FactVerdict::Holds) => instances += 1,
                        Ok(FactVerdict::Violated { violation }) => {
                            return holds_if(
                                false,
                                json!({ "x": x.to_vec(), "s": set_json(&s), "violation": violation }),
                            );
                        }
                    }
                }
            }
            if instances == 0 {
                return na("no instance meets the precondition");
            }
            holds_if(true, json!({ "instances": instances }))
        }
        PropertyId::PathCycleDecomposition => {
            if !ctx.connected_cubic() {
                return na("not a connected cubic graph");
            }
            let mut summaries = Vec::new();
            let mut all = true;
            for d in ctx.decomps()? {
                let ok = d.claim_holds() && d.max_degree_le_2;
                summaries.push(json!({
                    "x": set_json(&d.x),
                    "y": set_json(&d.y),
                    "claim_holds": d.claim_holds(),
                    "max_degree_le_2": d.max_degree_le_2,
                    "gap": d.gap(),
                    "contract_violations": d.contract_violations,
                    "shapes": d.components.iter().map(|c| c.shape).collect::<Vec<_>>(),
                }));
                if !ok && all {
                    all = false;
                    summaries.push(json!({ "trace": TraceDocument::new(g, &d.trace, "not paths and cycles") }));
                }
            }
            holds_if(all, json!({ "decompositions": summaries }))
        }
        PropertyId::DecompositionAccounting => {
            if !ctx.connected_cubic() {
                return na("not a connected cubic graph");
            }
            let policy = ctx.policy;
            let decomps = ctx.decomps()?;
            for d in decomps {
                let replays = d.trace.replay(g).ok().as_ref() == Some(&d.reduced);
                if !(d.accounting_ok && d.y_dominates && replays) {
                    return holds_if(
                        false,
                        json!({
                            "x": set_json(&d.x),
                            "accounting_ok": d.accounting_ok,
                            "y_dominates": d.y_dominates,
                            "replays": replays,
                            "trace": TraceDocument::new(g, &d.trace, "accounting mismatch"),
                        }),
                    );
                }
            }
            holds_if(true, json!({ "decompositions": decomps.len(), "peel_policy": policy }))
        }
        PropertyId::ComponentReduction => {
            if !ctx.connected_cubic() {
                return na("not a connected cubic graph");
            }
            let mut steps = 0;
            let mut components = 0;
            for d in ctx.decomps()? {
                for c in d.components.iter().filter(|c| c.shape.is_path_like() && c.dominated) {
                    let vs: VertexSet = c.vertices.iter().copied().collect();
                    let (sub, old) = d
                        .reduced
                        .induced_subgraph(&vs)
                        .map_err(|e| EvalError::Failed(e.to_string()))?;
                    let y: VertexSet = (0..sub.n()).filter(|&i| c.y.contains(&old[i])).collect();
                    let r = component_reduce(&sub, &y)?;
                    components += 1;
                    steps += r.steps.len();
                    let ok = r.all_steps_dominated()
                        && r.steps.iter().all(|s| s.removed.len() == 3)
                        && r.graph.max_degree() <= 2
                        && r.graph.n() + 3 * r.steps.len() == sub.n();
                    if !ok {
                        return holds_if(
                            false,
                            json!({ "x": set_json(&d.x), "component": c.vertices, "steps": r.steps }),
                        );
                    }
                }
            }
            holds_if(true, json!({ "components": components, "steps": steps }))
        }
        PropertyId::Independentize => {
            let x = ctx.fewest_internal()?.remove(0);
            let double_star_free = find_double_star(g).is_none();
            match independentize(g, &x)? {
                IndependentizeOutcome::Independent { cert, moves } => {
                    let (gamma, i) = (ctx.gamma()?, ctx.i()?);
                    holds_if(
                        cert.size() == i.size() && i.size() == gamma.size(),
                        json!({ "x": x.to_vec(), "outcome": "independent", "result": cert.to_vec(), "moves": moves, "i": i.to_vec() }),
                    )
                }
                IndependentizeOutcome::Stuck {
                    set,
                    edge,
                    witness,
                    moves,
                } => {
                    let ok = !double_star_free && witness.is_some_and(|w| w.verify(g));
                    holds_if(
                        ok,
                        json!({ "x": x.to_vec(), "outcome": "stuck", "set": set_json(&set), "edge": edge, "witness": witness, "moves": moves }),
                    )
                }
            }
        }
        PropertyId::OracleAgreement => {
            if g.n() > BRUTE_FORCE_MAX_VERTICES {
                return na("too large for brute force");
            }
            let (gamma, i) = (ctx.gamma()?, ctx.i()?);
            let (bg, bi) = (brute_force_gamma(g)?, brute_force_i(g)?);
            holds_if(
                gamma.size() == bg.size() && i.size() == bi.size(),
                json!({ "gamma": gamma.to_vec(), "i": i.to_vec(), "brute_gamma": bg.to_vec(), "brute_i": bi.to_vec() }),
            )
        }
    }
}

/// Every singleton of `T(x)` and `T(x)` itself.
fn replacement_choices(g: &Graph, x: &VertexSet) -> Result<Vec<VertexSet>, EvalError> {
    let t = compute_t(g, x)?;
    let mut out: Vec<VertexSet> = t.members.iter().map(|&v| [v].into()).collect();
    if t.members.len() != 1 {
        out.push(t.members);
    }
    Ok(out)
}

/// Findings for one graph, which must already be in the labeling of `key`.
/// Properties run in sorted order so lazily shared work is attributed
/// deterministically.
pub fn evaluate_graph(g: &Graph, key: &str, config: &RunConfig, config_hash: &str) -> Vec<Finding> {
    let mut ctx = Ctx {
        g,
        budget: config.budget(),
        policy: config.peel_policy,
        nodes: 0,
        gamma: None,
        i: None,
        dsets: None,
        decomps: None,
    };
    config
        .sorted_properties()
        .into_iter()
        .map(|p| {
            let before = ctx.nodes;
            let (verdict, certificates, budget_exhausted) = match evaluate(&mut ctx, p) {
                Ok((v, c)) => (v, c, false),
                Err(EvalError::Budget) => (
                    Verdict::NotApplicable,
                    json!({ "reason": "solver budget exhausted" }),
                    true,
                ),
                Err(EvalError::Failed(msg)) => (Verdict::NotApplicable, json!({ "reason": msg }), false),
            };
            Finding {
                graph_key: key.to_string(),
                n: g.n(),
                property_id: p,
                verdict,
                certificates,
                solver_stats: SolverStats {
                    nodes: ctx.nodes - before,
                    budget_exhausted,
                },
                config_hash: config_hash.to_string(),
            }
        })
        .collect()
}
