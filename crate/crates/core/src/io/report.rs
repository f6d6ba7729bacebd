use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::advisor::{SignalBlock, SmoothnessReport};
use crate::error::{Error, Result};

/// Renders any serializable value as indented JSON with keys in declaration
/// order and every float printed with 17 significant digits, so identical
/// inputs always give identical bytes and values parse back exactly.
pub fn render_json<T: Serialize>(value: &T) -> Result<String> {
    let value = serde_json::to_value(value)?;
    let mut out = String::new();
    emit(&value, 0, &mut out)?;
    out.push('\n');
    Ok(out)
}

fn indent(out: &mut String, level: usize) {
    for _ in 0..level {
        out.push_str("  ");
    }
}

fn emit(value: &Value, level: usize, out: &mut String) -> Result<()> {
    match value {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if n.is_f64() {
                let v = n.as_f64().expect("f64 number");
                write!(out, "{v:.16e}").unwrap();
            } else {
                write!(out, "{n}").unwrap();
            }
        }
        Value::String(s) => out.push_str(&serde_json::to_string(s)?),
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str("[]");
                return Ok(());
            }
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                indent(out, level + 1);
                emit(item, level + 1, out)?;
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            indent(out, level);
            out.push(']');
        }
        Value::Object(map) => {
            if map.is_empty() {
                out.push_str("{}");
                return Ok(());
            }
            out.push_str("{\n");
            for (i, (k, v)) in map.iter().enumerate() {
                indent(out, level + 1);
                out.push_str(&serde_json::to_string(k)?);
                out.push_str(": ");
                emit(v, level + 1, out)?;
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            indent(out, level);
            out.push('}');
        }
    }
    Ok(())
}

pub fn parse_report(text: &str) -> Result<SmoothnessReport> {
    let report: SmoothnessReport = serde_json::from_str(text)?;
    if report.schema_version != crate::advisor::SCHEMA_VERSION {
        return Err(Error::invalid(format!(
            "unsupported report schema_version {} (expected {})",
            report.schema_version,
            crate::advisor::SCHEMA_VERSION
        )));
    }
    Ok(report)
}

fn signal_row(out: &mut String, name: &str, b: &SignalBlock) {
    let stat = b
        .statistic
        .map_or_else(|| "inf".to_string(), |s| format!("{s:.4}"));
    writeln!(
        out,
        "| {name} | {:.4} | {:.4} | {stat} | {:.4} | {:.4} | {:.4} | {} |",
        b.ntv, b.nsv, b.p_two_sided, b.p_greater, b.p_less, b.smoothness_class
    )
    .unwrap();
}

/// Human-readable summary of a report.
pub fn render_markdown(r: &SmoothnessReport) -> String {
    let mut out = String::new();
    writeln!(out, "# Smoothness report: {}\n", r.dataset).unwrap();
    writeln!(
        out,
        "{} nodes, {} edges, {} features, {} classes. Operator `{}`, alpha = {}, row-normalized features: {}.\n",
        r.graph.num_nodes,
        r.graph.num_edges,
        r.graph.num_features,
        r.graph.num_classes,
        r.config.operator,
        r.config.alpha,
        if r.config.row_normalize { "yes" } else { "no" }
    )
    .unwrap();
    out.push_str("| signal | NTV | NSV | statistic | p (two-sided) | p (greater) | p (less) | class |\n");
    out.push_str("|---|---|---|---|---|---|---|---|\n");
    signal_row(&mut out, "features", &r.features);
    signal_row(&mut out, "labels", &r.labels);
    writeln!(
        out,
        "\nHomophily: edge {:.4}, node {:.4}, class {:.4}.\n",
        r.homophily.h_edge, r.homophily.h_node, r.homophily.h_class
    )
    .unwrap();
    writeln!(out, "**Verdict: {}**", r.verdict).unwrap();
    for (name, b) in [("features", &r.features), ("labels", &r.labels)] {
        if b.near_alpha_boundary {
            writeln!(
                out,
                "\nNote: the {name} two-sided p-value {:.4} is close to alpha.",
                b.p_two_sided
            )
            .unwrap();
        }
    }
    out
}
