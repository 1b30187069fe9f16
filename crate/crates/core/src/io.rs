//! Line-oriented text formats.
//!
//! Graph files: `v <id>` declares a vertex, `e <id1> <id2> [weight]` an
//! undirected edge (weight defaults to 1). Set files list one vertex id per
//! line. Function files hold `<id> <value>` pairs, where the value is a
//! decimal literal or `inf`. In all three, `#` starts a comment.

use std::fmt::Write as _;

use crate::convexity::{VertexFunction, VertexSet};
use crate::error::{Error, Result};
use crate::ext::Ext;
use crate::graph::Graph;
use crate::scalar::Scalar;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let body = line.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn at_line(line: usize) -> impl Fn(Error) -> Error {
    move |e| match e {
        e @ Error::Parse { .. } => e,
        other => Error::Parse {
            line,
            message: other.to_string(),
        },
    }
}

pub fn parse_graph<S: Scalar>(text: &str) -> Result<Graph<S>> {
    let mut g = Graph::new();
    for (line, tokens) in content_lines(text) {
        let err = |message: String| Error::Parse { line, message };
        match tokens.as_slice() {
            ["v", id] => {
                g.ensure_vertex(id);
            }
            ["e", a, b] => g.add_named_edge(a, b, S::one()).map_err(at_line(line))?,
            ["e", a, b, w] => {
                let w = S::parse_literal(w).ok_or_else(|| err(format!("bad weight `{w}`")))?;
                g.add_named_edge(a, b, w).map_err(at_line(line))?;
            }
            _ => return Err(err(format!("unrecognized line `{}`", tokens.join(" ")))),
        }
    }
    Ok(g)
}

pub fn write_graph<S: Scalar>(g: &Graph<S>) -> String {
    let mut out = String::new();
    for v in g.vertices() {
        writeln!(out, "v {}", g.name(v)).unwrap();
    }
    for (a, b, w) in g.edges() {
        if w.is_one() {
            writeln!(out, "e {} {}", g.name(a), g.name(b)).unwrap();
        } else {
            writeln!(out, "e {} {} {}", g.name(a), g.name(b), w).unwrap();
        }
    }
    out
}

pub fn parse_set<S: Scalar>(g: &Graph<S>, text: &str) -> Result<VertexSet> {
    let mut set = VertexSet::empty(g.len());
    for (line, tokens) in content_lines(text) {
        for id in tokens {
            set.insert(g.vertex(id).map_err(at_line(line))?);
        }
    }
    Ok(set)
}

pub fn write_set<S: Scalar>(g: &Graph<S>, set: &VertexSet) -> String {
    set.iter().map(|v| format!("{}\n", g.name(v))).collect()
}

pub fn parse_function<S: Scalar>(g: &Graph<S>, text: &str) -> Result<VertexFunction<S>> {
    let mut f = VertexFunction::undefined(g.len());
    for (line, tokens) in content_lines(text) {
        let err = |message: String| Error::Parse { line, message };
        let [id, value] = tokens.as_slice() else {
            return Err(err("expected `<id> <value>`".into()));
        };
        let v = g.vertex(id).map_err(at_line(line))?;
        if f.get(v).is_some() {
            return Err(err(format!("duplicate value for `{id}`")));
        }
        let value = Ext::parse(value).ok_or_else(|| err(format!("bad value `{value}`")))?;
        f.set(v, value);
    }
    Ok(f)
}

pub fn write_function<S: Scalar>(g: &Graph<S>, f: &VertexFunction<S>) -> String {
    g.vertices()
        .filter_map(|v| f.get(v).map(|val| format!("{} {}\n", g.name(v), val)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Vertex;

    const C4: &str = "# four-cycle\ne a x\ne x y\ne y z\ne z a  # closing edge\n";

    #[test]
    fn parses_c4() {
        let g: Graph<i64> = parse_graph(C4).unwrap();
        assert_eq!(g.len(), 4);
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g.name(Vertex(0)), "a");
    }

    #[test]
    fn weights_and_isolated_vertices() {
        let g: Graph<f64> = parse_graph("v lone\ne p q 0.5\n").unwrap();
        assert_eq!(g.len(), 3);
        assert_eq!(g.weight(g.vertex("p").unwrap(), g.vertex("q").unwrap()), Some(0.5));
        assert!(parse_graph::<i64>("e p q 0.5").is_err());
    }

    #[test]
    fn duplicate_edge_reports_line() {
        let err = parse_graph::<i64>("e a b\n\ne b a\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err:?}");
        assert!(parse_graph::<i64>("x y z").is_err());
    }

    #[test]
    fn graph_round_trip() {
        let g: Graph<f64> = parse_graph("v iso\ne a b 2.5\ne b c\n").unwrap();
        let back: Graph<f64> = parse_graph(&write_graph(&g)).unwrap();
        assert_eq!(write_graph(&back), write_graph(&g));
        assert_eq!(back.name(Vertex(0)), "iso");
    }

    #[test]
    fn function_file() {
        let g: Graph<i64> = parse_graph(C4).unwrap();
        let f = parse_function(&g, "a 0\nx 1\ny inf\n").unwrap();
        assert_eq!(f.get(g.vertex("y").unwrap()), Some(Ext::Inf));
        assert_eq!(f.get(g.vertex("z").unwrap()), None);
        let err = parse_function(&g, "a 0\nq 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert!(parse_function(&g, "a 0\na 1\n").is_err());
        assert_eq!(write_function(&g, &f), "a 0\nx 1\ny inf\n");
    }

    #[test]
    fn set_file() {
        let g: Graph<i64> = parse_graph(C4).unwrap();
        let s = parse_set(&g, "x\ny\n# comment\nz\n").unwrap();
        assert_eq!(s.len(), 3);
        assert!(parse_set(&g, "nope").is_err());
        assert_eq!(write_set(&g, &s), "x\ny\nz\n");
    }
}
