//! JSON and DOT documents for an enumerated diagram. Both are
//! byte-deterministic for a given root.

use std::fmt::Write;

use serde::Serialize;

use crate::diagram::{RauzyDiagram, VertexId};
use crate::error::Result;
use crate::marking::{is_hyperelliptic_class, MarkingData};

#[derive(Serialize)]
struct VertexJson {
    top: Vec<u8>,
    bottom: Vec<u8>,
}

#[derive(Serialize)]
struct InvariantsJson {
    stratum: String,
    special_degree: u32,
    degrees: Vec<u32>,
    genus: u32,
    minus_inf: String,
    plus_inf: String,
    orbits: Vec<Vec<String>>,
    hyperelliptic: bool,
}

#[derive(Serialize)]
struct DiagramJson<'a> {
    alphabet: &'a [String],
    vertices: Vec<VertexJson>,
    t_succ: &'a [VertexId],
    b_succ: &'a [VertexId],
    root: VertexId,
    invariants: InvariantsJson,
}

pub fn export_json(diagram: &RauzyDiagram) -> Result<String> {
    let marking = MarkingData::new(&diagram.vertex(diagram.root()))?;
    let alphabet = diagram.alphabet();
    let tokens = |row: &[crate::Letter]| -> Vec<String> {
        row.iter().map(|&l| alphabet.token(l).to_owned()).collect()
    };
    let doc = DiagramJson {
        alphabet: alphabet.tokens(),
        vertices: (0..diagram.len() as VertexId)
            .map(|id| {
                let (top, bottom) = diagram.rows(id);
                VertexJson {
                    top: top.iter().map(|l| l.0).collect(),
                    bottom: bottom.iter().map(|l| l.0).collect(),
                }
            })
            .collect(),
        t_succ: diagram.t_succ(),
        b_succ: diagram.b_succ(),
        root: diagram.root(),
        invariants: InvariantsJson {
            stratum: marking.stratum_signature(),
            special_degree: marking.special_degree(),
            degrees: marking.degree_multiset(),
            genus: marking.genus,
            minus_inf: alphabet.token(marking.minus_inf).to_owned(),
            plus_inf: alphabet.token(marking.plus_inf).to_owned(),
            orbits: marking.orbits.iter().map(|o| tokens(o)).collect(),
            hyperelliptic: is_hyperelliptic_class(diagram),
        },
    };
    let mut out = serde_json::to_string(&doc).expect("diagram serializes");
    out.push('\n');
    Ok(out)
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn export_dot(diagram: &RauzyDiagram) -> String {
    let alphabet = diagram.alphabet();
    let row = |r: &[crate::Letter]| -> String {
        r.iter().map(|&l| escape(alphabet.token(l))).collect::<Vec<_>>().join(" ")
    };
    let mut out = String::new();
    out.push_str("digraph rauzy {\n");
    out.push_str("  node [shape=box, fontname=\"monospace\"];\n");
    for id in 0..diagram.len() as VertexId {
        let (top, bottom) = diagram.rows(id);
        writeln!(out, "  v{id} [label=\"{}\\n{}\"];", row(top), row(bottom)).unwrap();
    }
    for id in 0..diagram.len() as VertexId {
        let (t, b) = (diagram.t_succ()[id as usize], diagram.b_succ()[id as usize]);
        writeln!(out, "  v{id} -> v{t} [label=\"t\", color=\"red\"];").unwrap();
        writeln!(out, "  v{id} -> v{b} [label=\"b\", color=\"blue\"];").unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::DEFAULT_MAX_VERTICES;
    use crate::permutation::LabeledPermutation;

    fn class(text: &str) -> RauzyDiagram {
        let p = LabeledPermutation::parse(text, None).unwrap();
        RauzyDiagram::enumerate(&p, DEFAULT_MAX_VERTICES).unwrap()
    }

    #[test]
    fn torus_dot() {
        let dot = export_dot(&class("A B\nB A"));
        assert_eq!(
            dot,
            "digraph rauzy {\n  node [shape=box, fontname=\"monospace\"];\n  v0 [label=\"A B\\nB A\"];\n  v0 -> v0 [label=\"t\", color=\"red\"];\n  v0 -> v0 [label=\"b\", color=\"blue\"];\n}\n"
        );
    }

    #[test]
    fn json_schema_for_three_letters() {
        let d = class("A B C\nC B A");
        let v: serde_json::Value = serde_json::from_str(&export_json(&d).unwrap()).unwrap();
        let n = v["vertices"].as_array().unwrap().len();
        assert_eq!(n, d.len());
        for key in ["t_succ", "b_succ"] {
            let succ = v[key].as_array().unwrap();
            assert_eq!(succ.len(), n);
            assert!(succ.iter().all(|s| (s.as_u64().unwrap() as usize) < n));
        }
        assert_eq!(v["root"], 0);
        assert_eq!(v["alphabet"], serde_json::json!(["A", "B", "C"]));
        assert_eq!(v["invariants"]["genus"], 1);
        assert_eq!(v["invariants"]["hyperelliptic"], true);
    }

    #[test]
    fn quotes_in_tokens_are_escaped() {
        let dot = export_dot(&class("a\"x b\nb a\"x"));
        assert!(dot.contains("v0 [label=\"a\\\"x b\\nb a\\\"x\"];"));
    }
}
