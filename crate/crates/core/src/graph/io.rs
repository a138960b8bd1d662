//! Text formats for graphs and graph structures.
//!
//! ```text
//! graph N | digraph N      header
//! e u v                    undirected edge
//! a u v                    arc
//! c v color                vertex color
//! layer i v1 v2 ...        members of layer i (0-based; may repeat)
//! order v1 ... vN          track order, smallest first
//! bag x v1 v2 ...          tree node x (1-based) and its bag
//! tedge x y                tree edge
//! ```

use std::fmt::Write;

use super::{Coloring, DiGraph, Graph, Layering, TrackLayout, TreeDecomposition, Vertex};
use crate::error::{ParseError, Result};
use crate::text::{at, lines, Line};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParsedGraph {
    Undirected(Graph),
    Directed(DiGraph),
}

pub fn parse_graph(text: &str) -> Result<ParsedGraph> {
    let mut it = lines(text);
    let head = it
        .next()
        .ok_or_else(|| ParseError::Structure("empty graph file".into()))?;
    head.expect_len(2)?;
    let n: usize = head.get(1)?;
    match head.keyword() {
        "graph" => {
            let mut g = Graph::new(n);
            for line in it {
                if line.keyword() != "e" {
                    return Err(line.err(format!("unexpected `{}` in graph", line.keyword())).into());
                }
                line.expect_len(3)?;
                g.add_edge(line.get(1)?, line.get(2)?).map_err(|e| at(&line, e))?;
            }
            Ok(ParsedGraph::Undirected(g))
        }
        "digraph" => {
            let mut g = DiGraph::new(n);
            for line in it {
                if line.keyword() != "a" {
                    return Err(line.err(format!("unexpected `{}` in digraph", line.keyword())).into());
                }
                line.expect_len(3)?;
                g.add_arc(line.get(1)?, line.get(2)?).map_err(|e| at(&line, e))?;
            }
            Ok(ParsedGraph::Directed(g))
        }
        other => Err(head.err(format!("expected `graph` or `digraph`, found `{other}`")).into()),
    }
}

pub fn parse_undirected(text: &str) -> Result<Graph> {
    match parse_graph(text)? {
        ParsedGraph::Undirected(g) => Ok(g),
        ParsedGraph::Directed(_) => Err(ParseError::Structure("expected an undirected graph".into()).into()),
    }
}

/// Accepts either kind; an undirected graph becomes its symmetric digraph.
pub fn parse_directed(text: &str) -> Result<DiGraph> {
    match parse_graph(text)? {
        ParsedGraph::Undirected(g) => Ok(DiGraph::symmetric(&g)),
        ParsedGraph::Directed(d) => Ok(d),
    }
}

pub fn write_graph(g: &Graph) -> String {
    let mut s = format!("graph {}\n", g.n());
    for (u, v) in g.edges() {
        writeln!(s, "e {u} {v}").unwrap();
    }
    s
}

pub fn write_digraph(g: &DiGraph) -> String {
    let mut s = format!("digraph {}\n", g.n());
    for (u, v) in g.arcs() {
        writeln!(s, "a {u} {v}").unwrap();
    }
    s
}

fn color_line(line: &Line<'_>, colors: &mut [usize]) -> Result<()> {
    line.expect_len(3)?;
    let v: Vertex = line.get(1)?;
    let c: usize = line.get(2)?;
    if v == 0 || v > colors.len() {
        return Err(line.err(format!("vertex {v} out of range")).into());
    }
    if c == 0 {
        return Err(line.err("colors start at 1").into());
    }
    if colors[v - 1] != 0 {
        return Err(line.err(format!("vertex {v} colored twice")).into());
    }
    colors[v - 1] = c;
    Ok(())
}

fn finish_coloring(colors: Vec<usize>) -> Result<Coloring> {
    if let Some(v) = colors.iter().position(|&c| c == 0) {
        return Err(ParseError::Structure(format!("vertex {} has no color", v + 1)).into());
    }
    Coloring::new(colors)
}

/// Coloring of an `n`-vertex graph from `c v color` lines.
pub fn parse_coloring(text: &str, n: usize) -> Result<Coloring> {
    let mut colors = vec![0; n];
    for line in lines(text) {
        match line.keyword() {
            "c" => color_line(&line, &mut colors)?,
            other => return Err(line.err(format!("unexpected `{other}` in coloring")).into()),
        }
    }
    finish_coloring(colors)
}

pub fn write_coloring(c: &Coloring) -> String {
    let mut s = String::new();
    for (i, col) in c.colors().iter().enumerate() {
        writeln!(s, "c {} {col}", i + 1).unwrap();
    }
    s
}

pub fn parse_layering(text: &str, g: &Graph) -> Result<Layering> {
    let mut layers: Vec<Vec<Vertex>> = Vec::new();
    for line in lines(text) {
        if line.keyword() != "layer" {
            return Err(line.err(format!("unexpected `{}` in layering", line.keyword())).into());
        }
        let i: usize = line.get(1)?;
        if layers.len() <= i {
            layers.resize(i + 1, Vec::new());
        }
        layers[i].extend(line.rest::<Vertex>(2)?);
    }
    Layering::new(g, layers)
}

pub fn write_layering(l: &Layering) -> String {
    let mut s = String::new();
    for (i, layer) in l.layers().iter().enumerate() {
        write!(s, "layer {i}").unwrap();
        for v in layer {
            write!(s, " {v}").unwrap();
        }
        s.push('\n');
    }
    s
}

pub fn parse_track_layout(text: &str, g: &Graph) -> Result<TrackLayout> {
    let mut colors = vec![0; g.n()];
    let mut order = None;
    for line in lines(text) {
        match line.keyword() {
            "c" => color_line(&line, &mut colors)?,
            "order" => {
                if order.is_some() {
                    return Err(line.err("second `order` line").into());
                }
                order = Some(line.rest::<Vertex>(1)?);
            }
            other => return Err(line.err(format!("unexpected `{other}` in track layout")).into()),
        }
    }
    let order = order.ok_or_else(|| ParseError::Structure("missing `order` line".into()))?;
    TrackLayout::new(g, finish_coloring(colors)?, order)
}

pub fn write_track_layout(t: &TrackLayout) -> String {
    let mut s = write_coloring(t.coloring());
    s.push_str("order");
    for v in t.order() {
        write!(s, " {v}").unwrap();
    }
    s.push('\n');
    s
}

pub fn parse_tree_decomposition(text: &str) -> Result<TreeDecomposition> {
    let mut bags: Vec<Option<Vec<Vertex>>> = Vec::new();
    let mut edges = Vec::new();
    for line in lines(text) {
        match line.keyword() {
            "bag" => {
                let x: usize = line.get(1)?;
                if x == 0 {
                    return Err(line.err("tree nodes start at 1").into());
                }
                if bags.len() < x {
                    bags.resize(x, None);
                }
                if bags[x - 1].is_some() {
                    return Err(line.err(format!("bag {x} given twice")).into());
                }
                bags[x - 1] = Some(line.rest(2)?);
            }
            "tedge" => {
                line.expect_len(3)?;
                edges.push((line.get(1)?, line.get(2)?));
            }
            other => return Err(line.err(format!("unexpected `{other}` in tree decomposition")).into()),
        }
    }
    let bags = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| ParseError::Structure(format!("bag {} missing", i + 1))))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    TreeDecomposition::new(bags, edges)
}

pub fn write_tree_decomposition(td: &TreeDecomposition) -> String {
    let mut s = String::new();
    for (i, bag) in td.bags().iter().enumerate() {
        write!(s, "bag {}", i + 1).unwrap();
        for v in bag {
            write!(s, " {v}").unwrap();
        }
        s.push('\n');
    }
    for (x, y) in td.tree_edges() {
        writeln!(s, "tedge {x} {y}").unwrap();
    }
    s
}
