//! Graph JSON and Graphviz DOT.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::chromo::{
    build_quotient, check_isomorphism, recover_code, ColoredMultigraph, Edge, Prechromotopology,
};
use crate::code::{Bitstring, LinearCode};
use crate::dashing::Dashing;
use crate::error::{Error, Result};
use crate::ranking::Ranking;

/// Colors 1, 2, 3, ... in DOT output; longer codes cycle through the list.
pub const PALETTE: [&str; 10] = [
    "green", "blue", "red", "orange", "purple", "brown", "cyan", "magenta", "gold", "gray",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub u: usize,
    pub v: usize,
    pub color: usize,
}

/// Serialized graph; field order is part of the format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub code_basis: Vec<String>,
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ranks: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dashes: Option<Vec<u8>>,
}

impl GraphJson {
    pub fn from_graph(
        a: &Prechromotopology,
        ranking: Option<&Ranking>,
        dashing: Option<&Dashing>,
    ) -> Self {
        GraphJson {
            n: a.n(),
            code_basis: a.code().basis().iter().map(ToString::to_string).collect(),
            vertices: a.vertices().iter().map(ToString::to_string).collect(),
            edges: a
                .edges()
                .iter()
                .map(|e| EdgeJson {
                    u: e.u,
                    v: e.v,
                    color: e.color,
                })
                .collect(),
            ranks: ranking.map(|r| r.heights().iter().map(|&h| h as i64).collect()),
            dashes: dashing.map(|d| d.to_bits().into_iter().map(u8::from).collect()),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_text(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    fn multigraph(&self) -> ColoredMultigraph {
        ColoredMultigraph {
            n: self.n,
            num_vertices: self.vertices.len(),
            edges: self
                .edges
                .iter()
                .map(|e| Edge {
                    u: e.u.min(e.v),
                    v: e.u.max(e.v),
                    color: e.color,
                })
                .collect(),
        }
    }

    /// Vertex map taken from the stored labels and code basis, if they
    /// describe the graph.
    fn map_by_labels(&self, g: &ColoredMultigraph) -> Option<(Prechromotopology, Vec<usize>)> {
        let basis: Vec<Bitstring> = self
            .code_basis
            .iter()
            .map(|s| s.parse())
            .collect::<Result<_>>()
            .ok()?;
        let code = LinearCode::span(self.n, &basis).ok()?;
        let a = build_quotient(self.n, &code).ok()?;
        let labels: Vec<Bitstring> = self
            .vertices
            .iter()
            .map(|s| s.parse().and_then(|b| code.reduce(&b)))
            .collect::<Result<_>>()
            .ok()?;
        let map = check_isomorphism(g, &labels, &a).ok()?;
        Some((a, map))
    }
}

/// A graph read from JSON, re-expressed in canonical vertex and edge order.
#[derive(Clone, Debug)]
pub struct LoadedGraph {
    pub graph: Prechromotopology,
    /// Canonical vertex of each vertex in the file.
    pub vertex_map: Vec<usize>,
    pub ranking: Option<Ranking>,
    pub dashing: Option<Dashing>,
}

/// Reads a graph, trusting its labels when they check out and otherwise
/// recovering the code from the edge structure alone.
pub fn load_graph(j: &GraphJson) -> Result<LoadedGraph> {
    let g = j.multigraph();
    g.involutions()?;
    let (graph, vertex_map) = match j.map_by_labels(&g) {
        Some(found) => found,
        None => {
            let rec = recover_code(&g)?;
            let a = build_quotient(rec.n, &rec.code)?;
            let map = check_isomorphism(&g, &rec.labels, &a)?;
            (a, map)
        }
    };
    if g.edges.len() != graph.edges().len() {
        return Err(Error::Consistency(format!(
            "file has {} edges, the quotient has {}",
            g.edges.len(),
            graph.edges().len()
        )));
    }
    let ranking = match &j.ranks {
        None => None,
        Some(ranks) => {
            if ranks.len() != j.vertices.len() {
                return Err(Error::DimensionMismatch {
                    expected: j.vertices.len(),
                    found: ranks.len(),
                });
            }
            let mut h = vec![0i64; ranks.len()];
            for (v, &r) in ranks.iter().enumerate() {
                h[vertex_map[v]] = r;
            }
            Some(Ranking::new(&graph, &h)?)
        }
    };
    let dashing = match &j.dashes {
        None => None,
        Some(dashes) => {
            if dashes.len() != j.edges.len() {
                return Err(Error::DimensionMismatch {
                    expected: j.edges.len(),
                    found: dashes.len(),
                });
            }
            let mut dashed = Vec::new();
            for (e, &bit) in g.edges.iter().zip(dashes) {
                match bit {
                    0 => {}
                    1 => dashed.push(graph.edge_at(e.color, vertex_map[e.u])),
                    other => return Err(Error::Parse(format!("dash value {other} is not 0 or 1"))),
                }
            }
            Some(Dashing::with_dashed(graph.edges().len(), &dashed))
        }
    };
    Ok(LoadedGraph {
        graph,
        vertex_map,
        ranking,
        dashing,
    })
}

pub fn color_name(color: usize) -> &'static str {
    PALETTE[(color - 1) % PALETTE.len()]
}

/// DOT text. With a ranking, edges point upwards and vertices of equal
/// height share a row, higher heights higher on the page.
pub fn to_dot(
    a: &Prechromotopology,
    ranking: Option<&Ranking>,
    dashing: Option<&Dashing>,
) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph adinkra {{");
    if ranking.is_some() {
        let _ = writeln!(out, "  rankdir=BT;");
    }
    let _ = writeln!(out, "  node [shape=circle];");
    for (v, label) in a.vertices().iter().enumerate() {
        let _ = writeln!(out, "  v{v} [label=\"{label}\"];");
    }
    if let Some(r) = ranking {
        for h in 0..=r.top() {
            let row: Vec<String> = (0..a.num_vertices())
                .filter(|&v| r.height(v) == h)
                .map(|v| format!("v{v}"))
                .collect();
            let _ = writeln!(out, "  {{ rank=same; {}; }}", row.join("; "));
        }
    }
    for (i, e) in a.edges().iter().enumerate() {
        let (tail, head) = match ranking {
            Some(r) if r.height(e.u) > r.height(e.v) => (e.v, e.u),
            _ => (e.u, e.v),
        };
        let mut attrs = format!("color={}", color_name(e.color));
        if dashing.is_some_and(|d| d.is_dashed(i)) {
            attrs.push_str(", style=dashed");
        }
        let _ = writeln!(out, "  v{tail} -- v{head} [{attrs}];");
    }
    let _ = writeln!(out, "}}");
    out
}
