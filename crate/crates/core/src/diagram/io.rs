//! Diagram files and Graphviz export.
//!
//! A diagram file holds the top word on its first line, then one
//! `offset relation dir` triple per line (`dir` is `1` or `-1`). Blank lines
//! and lines starting with `#` are ignored. Any valid factor order is
//! accepted; [`write_diagram`] always emits the rightmost decomposition.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::presentation::{Dir, Presentation};

use super::{AtomicFactor, Diagram};

pub fn parse_diagram(p: Arc<Presentation>, text: &str) -> Result<Diagram> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (_, top_line) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing top word".into(),
    })?;
    let top = p.word(top_line)?;
    let mut factors = Vec::new();
    for (line, l) in lines {
        let nums: Vec<&str> = l.split_whitespace().collect();
        let bad = || Error::Parse {
            line,
            message: format!("expected `offset relation dir`, found `{l}`"),
        };
        if nums.len() != 3 {
            return Err(bad());
        }
        let offset: usize = nums[0].parse().map_err(|_| bad())?;
        let relation: usize = nums[1].parse().map_err(|_| bad())?;
        let sign: i64 = nums[2].parse().map_err(|_| bad())?;
        let dir = Dir::from_sign(sign).ok_or_else(bad)?;
        factors.push(AtomicFactor::new(offset, relation, dir));
    }
    Diagram::from_factors(p, top, &factors)
}

pub fn write_diagram(d: &Diagram) -> String {
    let mut out = d.presentation().render_word(d.top());
    out.push('\n');
    for f in d.factors() {
        let _ = writeln!(out, "{} {} {}", f.offset, f.relation, f.dir.sign());
    }
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz rendering: one node per vertex, one labelled edge per diagram
/// edge, and one cluster per cell holding the vertices it created. Output
/// order follows vertex, edge and cell ids, so it is stable.
pub fn to_dot(d: &Diagram) -> String {
    let p = d.presentation();
    let cx = d.complex();
    let mut out = String::from("digraph diagram {\n  rankdir=LR;\n  node [shape=point];\n");
    let mut owner = vec![None; cx.vertex_count];
    for (c, cell) in cx.cells.iter().enumerate() {
        for &e in &cell.bottom[1..] {
            owner[cx.edges[e].tail] = Some(c);
        }
    }
    for (v, o) in owner.iter().enumerate() {
        if o.is_none() {
            let _ = writeln!(out, "  v{v};");
        }
    }
    for (c, cell) in cx.cells.iter().enumerate() {
        let rel = &p.relations()[cell.relation];
        let label = format!(
            "{} → {}",
            p.render_word(rel.source(cell.dir)),
            p.render_word(rel.target(cell.dir))
        );
        let _ = writeln!(out, "  subgraph cluster_c{c} {{");
        let _ = writeln!(out, "    label=\"c{c}: {}\";", escape(&label));
        let _ = writeln!(out, "    c{c} [shape=plaintext, label=\"{c}\"];");
        for (v, o) in owner.iter().enumerate() {
            if *o == Some(c) {
                let _ = writeln!(out, "    v{v};");
            }
        }
        out.push_str("  }\n");
    }
    for e in &cx.edges {
        let _ = writeln!(
            out,
            "  v{} -> v{} [label=\"{}\"];",
            e.tail,
            e.head,
            escape(p.letter_name(e.label))
        );
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::presets;

    #[test]
    fn file_round_trip() {
        let p = presets::f();
        let text = "x\n0 0 -1\n1 0 -1\n0 0 1\n0 0 1\n";
        let d = parse_diagram(p.clone(), text).unwrap();
        assert_eq!(d.cell_count(), 4);
        assert_eq!(parse_diagram(p, &write_diagram(&d)).unwrap(), d);
    }

    #[test]
    fn file_errors() {
        let p = presets::f();
        assert!(matches!(parse_diagram(p.clone(), "").unwrap_err(), Error::Parse { .. }));
        assert_eq!(
            parse_diagram(p.clone(), "x\n0 0 2").unwrap_err(),
            Error::Parse {
                line: 2,
                message: "expected `offset relation dir`, found `0 0 2`".into()
            }
        );
        assert!(matches!(
            parse_diagram(p, "x\n0 0 1").unwrap_err(),
            Error::FactorMismatch { .. }
        ));
    }

    #[test]
    fn dot_is_well_formed() {
        let d = parse_diagram(presets::f(), "x\n0 0 -1\n1 0 -1\n0 0 1\n0 0 1\n").unwrap();
        let dot = to_dot(&d);
        assert!(dot.starts_with("digraph diagram {"));
        assert_eq!(dot.matches("subgraph cluster_").count(), 4);
        assert_eq!(dot.matches(" -> ").count(), d.complex().edges.len());
        assert_eq!(dot, to_dot(&d));
    }
}
