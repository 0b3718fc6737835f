use std::fmt::Write as _;
use std::io;

use serde::{Deserialize, Serialize};

use super::classify::Sign;
use super::graph::{DirectedSignedGraph, WeightedGraph};

/// One directed edge in the flat CSV export. `weight` is the undirected
/// weight between the two bowlers after summing both directions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeRow {
    pub from: String,
    pub to: String,
    pub metric: String,
    pub sign: String,
    pub p_greater: f64,
    pub p_two: f64,
    pub p_less: f64,
    pub weight: i32,
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Graphviz digraph with `+`/`-` edge labels.
pub fn directed_dot(g: &DirectedSignedGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph {} {{", quote(g.metric.as_str()));
    for v in &g.vertices {
        let _ = writeln!(out, "  {};", quote(v));
    }
    for e in g.edges.values() {
        let color = match e.sign {
            Sign::Positive => "darkgreen",
            Sign::Negative => "red",
        };
        let _ = writeln!(
            out,
            "  {} -> {} [label=\"{}\", color={}];",
            quote(&e.from),
            quote(&e.to),
            e.sign.symbol(),
            color
        );
    }
    out.push_str("}\n");
    out
}

/// Graphviz undirected graph with integer weight labels.
pub fn weighted_dot(g: &WeightedGraph) -> String {
    let mut out = String::from("graph weighted {\n");
    for v in g.names() {
        let _ = writeln!(out, "  {};", quote(v));
    }
    for (a, b, w) in g.edges() {
        let _ = writeln!(
            out,
            "  {} -- {} [label=\"{}\", weight={}];",
            quote(g.name(a)),
            quote(g.name(b)),
            w,
            w.abs()
        );
    }
    out.push_str("}\n");
    out
}

/// Flat rows for every directed edge, ordered by (from, to).
pub fn edge_rows(directed: &DirectedSignedGraph, weighted: &WeightedGraph) -> Vec<EdgeRow> {
    directed
        .edges
        .values()
        .map(|e| EdgeRow {
            from: e.from.clone(),
            to: e.to.clone(),
            metric: e.metric.as_str().to_string(),
            sign: e.sign.symbol().to_string(),
            p_greater: e.mw.p_greater,
            p_two: e.mw.p_two_sided,
            p_less: e.mw.p_less,
            weight: weighted.weight_between(&e.from, &e.to).unwrap_or(0),
        })
        .collect()
}

/// Writes rows as CSV with a header, even when there are no rows.
pub fn edges_csv<W: io::Write>(rows: &[EdgeRow], out: W) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(["from", "to", "metric", "sign", "p_greater", "p_two", "p_less", "weight"])?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
