//! CSV, JSON and DOT writers for the crate's result types.

use std::io::{self, Write};

use serde_json::{json, Map, Value};

use crate::baselines::OpsahlCoefficient;
use crate::graph::UnipartiteGraph;
use crate::hellinger::DistanceMatrix;
use crate::null_model::{DistanceMoments, NullModelParams};
use crate::scores::CentralityScores;

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

fn number(v: f64) -> Value {
    serde_json::Number::from_f64(v).map_or(Value::Null, Value::Number)
}

fn write_json<W: Write>(mut w: W, value: &Value) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)
}

/// `label,score` rows, best first, ties by label.
pub fn write_scores_csv<W: Write>(mut w: W, scores: &CentralityScores) -> io::Result<()> {
    writeln!(w, "label,score")?;
    for (label, v) in scores.ranked() {
        writeln!(w, "{},{v}", csv_field(label))?;
    }
    Ok(())
}

/// JSON object mapping labels to scores, best first.
pub fn write_scores_json<W: Write>(w: W, scores: &CentralityScores) -> io::Result<()> {
    let map: Map<String, Value> = scores.ranked().into_iter().map(|(l, v)| (l.to_owned(), number(v))).collect();
    write_json(w, &Value::Object(map))
}

/// One row per node in the first table's order, one column per metric.
/// Missing entries are left empty.
pub fn write_score_table_csv<W: Write>(mut w: W, tables: &[CentralityScores]) -> io::Result<()> {
    write!(w, "label")?;
    for t in tables {
        write!(w, ",{}", csv_field(t.metric()))?;
    }
    writeln!(w)?;
    let Some(first) = tables.first() else {
        return Ok(());
    };
    for label in first.labels() {
        write!(w, "{}", csv_field(label))?;
        for t in tables {
            match t.get(label) {
                Some(v) => write!(w, ",{v}")?,
                None => write!(w, ",")?,
            }
        }
        writeln!(w)?;
    }
    Ok(())
}

/// `{metric: {label: score}}` with labels in node order.
pub fn write_score_table_json<W: Write>(w: W, tables: &[CentralityScores]) -> io::Result<()> {
    let map: Map<String, Value> = tables
        .iter()
        .map(|t| {
            let inner: Map<String, Value> = t.iter().map(|(l, v)| (l.to_owned(), number(v))).collect();
            (t.metric().to_owned(), Value::Object(inner))
        })
        .collect();
    write_json(w, &Value::Object(map))
}

/// Square matrix with a label header row and column, 6 decimals.
pub fn write_matrix_csv<W: Write>(mut w: W, matrix: &DistanceMatrix) -> io::Result<()> {
    write!(w, "label")?;
    for l in matrix.labels() {
        write!(w, ",{}", csv_field(l))?;
    }
    writeln!(w)?;
    for (i, l) in matrix.labels().iter().enumerate() {
        write!(w, "{}", csv_field(l))?;
        for v in matrix.row(i) {
            write!(w, ",{v:.6}")?;
        }
        writeln!(w)?;
    }
    Ok(())
}

pub fn write_matrix_json<W: Write>(w: W, matrix: &DistanceMatrix) -> io::Result<()> {
    let rows: Vec<Value> = (0..matrix.len())
        .map(|i| Value::Array(matrix.row(i).into_iter().map(number).collect()))
        .collect();
    write_json(
        w,
        &json!({
            "side": matrix.side().to_string(),
            "mode": matrix.mode().to_string(),
            "labels": matrix.labels(),
            "distances": rows,
        }),
    )
}

fn dot_id(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Undirected DOT graph; every node is declared so isolated nodes show up.
pub fn write_dot<W: Write>(mut w: W, graph: &UnipartiteGraph, name: &str) -> io::Result<()> {
    writeln!(w, "graph {} {{", dot_id(name))?;
    for l in graph.labels() {
        writeln!(w, "  {};", dot_id(l))?;
    }
    let labels = graph.labels();
    for (u, v, weight) in graph.edges() {
        if graph.is_weighted() {
            writeln!(w, "  {} -- {} [weight={weight:.6}];", dot_id(&labels[u]), dot_id(&labels[v]))?;
        } else {
            writeln!(w, "  {} -- {};", dot_id(&labels[u]), dot_id(&labels[v]))?;
        }
    }
    writeln!(w, "}}")
}

/// `source,target[,weight]` rows with source before target in node order.
pub fn write_edge_list_csv<W: Write>(mut w: W, graph: &UnipartiteGraph) -> io::Result<()> {
    let labels = graph.labels();
    if graph.is_weighted() {
        writeln!(w, "source,target,weight")?;
    } else {
        writeln!(w, "source,target")?;
    }
    for (u, v, weight) in graph.edges() {
        write!(w, "{},{}", csv_field(&labels[u]), csv_field(&labels[v]))?;
        if graph.is_weighted() {
            write!(w, ",{weight:.6}")?;
        }
        writeln!(w)?;
    }
    Ok(())
}

pub fn write_edge_list_json<W: Write>(w: W, graph: &UnipartiteGraph) -> io::Result<()> {
    let labels = graph.labels();
    let edges: Vec<Value> = graph
        .edges()
        .into_iter()
        .map(|(u, v, weight)| {
            if graph.is_weighted() {
                json!({"source": labels[u], "target": labels[v], "weight": number(weight)})
            } else {
                json!({"source": labels[u], "target": labels[v]})
            }
        })
        .collect();
    write_json(w, &json!({"nodes": labels, "edges": edges}))
}

/// `k,rho` rows; undefined points leave `rho` empty.
pub fn write_sweep_csv<W: Write>(mut w: W, series: &[(usize, Option<f64>)]) -> io::Result<()> {
    writeln!(w, "k,rho")?;
    for &(k, rho) in series {
        match rho {
            Some(r) => writeln!(w, "{k},{r}")?,
            None => writeln!(w, "{k},")?,
        }
    }
    Ok(())
}

pub fn write_sweep_json<W: Write>(w: W, series: &[(usize, Option<f64>)]) -> io::Result<()> {
    let rows: Vec<Value> = series
        .iter()
        .map(|&(k, rho)| json!({"k": k, "rho": rho.map_or(Value::Null, number)}))
        .collect();
    write_json(w, &Value::Array(rows))
}

pub fn write_moments_json<W: Write>(
    w: W,
    params: &NullModelParams,
    moments: &DistanceMoments,
    threshold: Option<(f64, f64)>,
) -> io::Result<()> {
    let mut value = json!({
        "n1": params.n1,
        "n2": params.n2,
        "p": number(params.p),
        "k": params.k,
        "mean": number(moments.mean),
        "second_moment": number(moments.second_moment),
        "variance": number(moments.variance),
    });
    if let Some((sigmas, t)) = threshold {
        value["sigmas"] = number(sigmas);
        value["threshold"] = number(t);
    }
    write_json(w, &value)
}

pub fn write_opsahl_csv<W: Write>(mut w: W, c: &OpsahlCoefficient) -> io::Result<()> {
    writeln!(w, "metric,value,four_paths,closed")?;
    writeln!(w, "opsahl,{},{},{}", c.value, c.four_paths, c.closed)
}

pub fn write_opsahl_json<W: Write>(w: W, c: &OpsahlCoefficient) -> io::Result<()> {
    write_json(
        w,
        &json!({
            "metric": "opsahl",
            "value": number(c.value),
            "four_paths": c.four_paths,
            "closed": c.closed,
            "defined": c.is_defined(),
        }),
    )
}
