use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use super::sweep::Summary;
use super::{Finding, PropertyId, Verdict};

/// Tables derived from a set of findings. Row order is deterministic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub summary_csv: String,
    /// One row per graph, one verdict column per property seen.
    pub graphs_csv: String,
    /// Histogram of `i - γ` over graphs where both are known.
    pub gap_csv: String,
    pub markdown: String,
    pub graph_rows: usize,
    pub violated: usize,
}

fn verdict_cell(v: Verdict) -> &'static str {
    match v {
        Verdict::Holds => "holds",
        Verdict::Violated => "VIOLATED",
        Verdict::NotApplicable => "n/a",
    }
}

fn set_len(f: &Finding, field: &str) -> Option<usize> {
    f.certificates.get(field)?.as_array().map(Vec::len)
}

pub fn render_report(findings: &[Finding]) -> Report {
    let summary = Summary::from_findings(findings);
    let props: BTreeSet<PropertyId> = findings.iter().map(|f| f.property_id).collect();

    struct Row {
        n: usize,
        gamma: Option<usize>,
        i: Option<usize>,
        verdicts: BTreeMap<PropertyId, Verdict>,
    }
    let mut rows: BTreeMap<&str, Row> = BTreeMap::new();
    for f in findings {
        let row = rows.entry(&f.graph_key).or_insert(Row {
            n: f.n,
            gamma: None,
            i: None,
            verdicts: BTreeMap::new(),
        });
        row.verdicts.insert(f.property_id, f.verdict);
        row.gamma = row.gamma.or(set_len(f, "gamma"));
        row.i = row.i.or(set_len(f, "i"));
    }
    let mut gaps: BTreeMap<usize, usize> = BTreeMap::new();
    for r in rows.values() {
        if let (Some(g), Some(i)) = (r.gamma, r.i) {
            *gaps.entry(i.saturating_sub(g)).or_default() += 1;
        }
    }
    let opt = |x: Option<usize>| x.map_or(String::new(), |v| v.to_string());

    let mut summary_csv = String::from("property,blocking,holds,violated,not_applicable\n");
    for (p, c) in &summary.per_property {
        let _ = writeln!(
            summary_csv,
            "{},{},{},{},{}",
            p,
            p.is_blocking(),
            c.holds,
            c.violated,
            c.not_applicable
        );
    }
    let mut graphs_csv = String::from("graph_key,n,gamma,i");
    for p in &props {
        let _ = write!(graphs_csv, ",{p}");
    }
    graphs_csv.push('\n');
    for (key, r) in &rows {
        let _ = write!(graphs_csv, "{key},{},{},{}", r.n, opt(r.gamma), opt(r.i));
        for p in &props {
            let _ = write!(graphs_csv, ",{}", r.verdicts.get(p).map_or("", |v| verdict_cell(*v)));
        }
        graphs_csv.push('\n');
    }
    let mut gap_csv = String::from("i_minus_gamma,graphs\n");
    for (gap, count) in &gaps {
        let _ = writeln!(gap_csv, "{gap},{count}");
    }

    let mut md = String::from("# Sweep report\n\n## Properties\n\n");
    md.push_str("| property | blocking | holds | violated | n/a |\n|---|---|---|---|---|\n");
    for (p, c) in &summary.per_property {
        let _ = writeln!(
            md,
            "| {p} | {} | {} | {} | {} |",
            if p.is_blocking() { "yes" } else { "no" },
            c.holds,
            c.violated,
            c.not_applicable
        );
    }
    md.push_str("\n## Graphs\n\n| graph | n | γ | i |");
    for p in &props {
        let _ = write!(md, " {p} |");
    }
    md.push_str("\n|---|---|---|---|");
    for _ in &props {
        md.push_str("---|");
    }
    md.push('\n');
    for (key, r) in &rows {
        let _ = write!(md, "| `{key}` | {} | {} | {} |", r.n, opt(r.gamma), opt(r.i));
        for p in &props {
            let _ = write!(md, " {} |", r.verdicts.get(p).map_or("", |v| verdict_cell(*v)));
        }
        md.push('\n');
    }
    md.push_str("\n## i - γ\n\n| i - γ | graphs |\n|---|---|\n");
    for (gap, count) in &gaps {
        let _ = writeln!(md, "| {gap} | {count} |");
    }
    let violated: Vec<&Finding> = findings.iter().filter(|f| f.verdict == Verdict::Violated).collect();
    if !violated.is_empty() {
        md.push_str("\n## Violated findings\n\n");
        for f in &violated {
            let _ = writeln!(
                md,
                "- **{}**{} on `{}`: `{}`",
                f.property_id,
                if f.property_id.is_blocking() { " (blocking)" } else { "" },
                f.graph_key,
                f.certificates
            );
        }
    }

    Report {
        summary_csv,
        graphs_csv,
        gap_csv,
        markdown: md,
        graph_rows: rows.len(),
        violated: violated.len(),
    }
}
