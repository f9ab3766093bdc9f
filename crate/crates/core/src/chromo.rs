//! Prechromotopologies as quotients of the colored hypercube by a code.
//!
//! Vertices are cosets of the code, each labeled by its lexicographically
//! smallest member, and indexed in increasing order of the packed label
//! word (color 1 is the low bit). For the plain cube this makes a vertex
//! index equal to its label word.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::OnceLock;

use crate::code::{Bitstring, LinearCode};
use crate::dashing;
use crate::error::{Error, Result};
use crate::ranking::Ranking;

/// Largest `n - k` accepted by [`build_quotient`].
pub const MAX_VERTEX_BITS: usize = 20;

/// Largest vertex count for which an all-pairs distance table is built.
pub const MAX_DISTANCE_TABLE: usize = 1 << 12;

/// Largest edge count for which the graph-side dashability check runs.
pub const MAX_DASHING_EDGES: usize = 1 << 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    /// Colors run from 1 to n.
    pub color: usize,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// An edge-colored multigraph with commuting color involutions.
#[derive(Debug)]
pub struct Prechromotopology {
    n: usize,
    code: LinearCode,
    vertices: Vec<Bitstring>,
    index: HashMap<u64, usize>,
    /// `involutions[c - 1][v]` is `q_c(v)`.
    involutions: Vec<Vec<usize>>,
    edges: Vec<Edge>,
    /// `edge_at[c - 1][v]` is the index of the color-`c` edge at `v`.
    edge_at: Vec<Vec<usize>>,
    distances: OnceLock<Vec<u16>>,
}

impl Clone for Prechromotopology {
    fn clone(&self) -> Self {
        Prechromotopology {
            n: self.n,
            code: self.code.clone(),
            vertices: self.vertices.clone(),
            index: self.index.clone(),
            involutions: self.involutions.clone(),
            edges: self.edges.clone(),
            edge_at: self.edge_at.clone(),
            distances: OnceLock::new(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GraphClass {
    pub has_loop: bool,
    pub has_double_edge: bool,
    pub is_bipartite: bool,
    pub is_chromotopology: bool,
    pub is_adinkraizable: bool,
}

/// The hypercube `I_c^n`.
pub fn cube(n: usize) -> Result<Prechromotopology> {
    build_quotient(n, &LinearCode::trivial(n)?)
}

/// Builds the quotient of the colored `n`-cube by `code`.
pub fn build_quotient(n: usize, code: &LinearCode) -> Result<Prechromotopology> {
    if code.ambient_length() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: code.ambient_length(),
        });
    }
    let bits = n - code.dim();
    if bits > MAX_VERTEX_BITS {
        return Err(Error::Capacity {
            what: "quotient vertex bits (n - k)",
            requested: bits as u64,
            limit: MAX_VERTEX_BITS as u64,
        });
    }

    // Canonical coset labels are exactly the words with zeros at every
    // pivot column; enumerate them by spreading a counter over the free
    // columns.
    let pivot_mask: u64 = code.pivots().iter().fold(0, |m, &p| m | 1 << (p - 1));
    let free: Vec<usize> = (0..n).filter(|c| pivot_mask >> c & 1 == 0).collect();
    let mut words: Vec<u64> = (0..1u64 << bits)
        .map(|counter| {
            free.iter()
                .enumerate()
                .fold(0u64, |w, (j, &c)| w | ((counter >> j) & 1) << c)
        })
        .collect();
    words.sort_unstable();

    let vertices: Vec<Bitstring> = words
        .iter()
        .map(|&w| Bitstring::from_word(n, w))
        .collect::<Result<_>>()?;
    let index: HashMap<u64, usize> = words.iter().enumerate().map(|(i, &w)| (w, i)).collect();

    let involutions: Vec<Vec<usize>> = (1..=n)
        .map(|c| {
            words
                .iter()
                .map(|&w| index[&code.reduce_word(w ^ (1 << (c - 1)))])
                .collect()
        })
        .collect();

    Ok(assemble(n, code.clone(), vertices, index, involutions))
}

fn assemble(
    n: usize,
    code: LinearCode,
    vertices: Vec<Bitstring>,
    index: HashMap<u64, usize>,
    involutions: Vec<Vec<usize>>,
) -> Prechromotopology {
    let nv = vertices.len();
    let mut edges = Vec::new();
    let mut edge_at = vec![vec![usize::MAX; nv]; n];
    for c in 1..=n {
        for u in 0..nv {
            let v = involutions[c - 1][u];
            if u <= v {
                edge_at[c - 1][u] = edges.len();
                edge_at[c - 1][v] = edges.len();
                edges.push(Edge { u, v, color: c });
            }
        }
    }
    Prechromotopology {
        n,
        code,
        vertices,
        index,
        involutions,
        edges,
        edge_at,
        distances: OnceLock::new(),
    }
}

impl Prechromotopology {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn code(&self) -> &LinearCode {
        &self.code
    }

    pub fn k(&self) -> usize {
        self.code.dim()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Bitstring] {
        &self.vertices
    }

    pub fn label(&self, v: usize) -> Bitstring {
        self.vertices[v]
    }

    /// Vertex index of the coset containing `b`.
    pub fn vertex_of(&self, b: &Bitstring) -> Result<usize> {
        let canon = self.code.reduce(b)?;
        Ok(self.index[&canon.word()])
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// `q_color(v)`.
    pub fn q(&self, color: usize, v: usize) -> usize {
        self.involutions[color - 1][v]
    }

    /// Index of the color-`color` edge at `v`.
    pub fn edge_at(&self, color: usize, v: usize) -> usize {
        self.edge_at[color - 1][v]
    }

    /// Neighbors of `v` through non-loop edges, one entry per color.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (1..=self.n)
            .map(move |c| self.q(c, v))
            .filter(move |&w| w != v)
    }

    /// BFS distances from `src`; `u32::MAX` marks unreachable vertices.
    pub fn distances_from(&self, src: usize) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.num_vertices()];
        dist[src] = 0;
        let mut queue = VecDeque::from([src]);
        while let Some(x) = queue.pop_front() {
            for y in self.neighbors(x) {
                if dist[y] == u32::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// Graph distance, from a table built on first use.
    pub fn distance(&self, a: usize, b: usize) -> Result<u32> {
        let nv = self.num_vertices();
        if nv > MAX_DISTANCE_TABLE {
            return Err(Error::Capacity {
                what: "distance table (vertices)",
                requested: nv as u64,
                limit: MAX_DISTANCE_TABLE as u64,
            });
        }
        let table = self.distances.get_or_init(|| {
            let mut t = Vec::with_capacity(nv * nv);
            for s in 0..nv {
                t.extend(self.distances_from(s).into_iter().map(|d| d as u16));
            }
            t
        });
        Ok(table[a * nv + b] as u32)
    }

    /// Two-coloring of the vertices, side 0 containing vertex 0 (the coset
    /// of the zero word), or `None` when an odd cycle exists.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let nv = self.num_vertices();
        let mut side = vec![u8::MAX; nv];
        side[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for c in 1..=self.n {
                let y = self.q(c, x);
                if side[y] == u8::MAX {
                    side[y] = 1 - side[x];
                    queue.push_back(y);
                } else if side[y] == side[x] {
                    return None;
                }
            }
        }
        Some(side)
    }

    pub fn is_connected(&self) -> bool {
        self.distances_from(0).iter().all(|&d| d != u32::MAX)
    }

    pub fn has_loop(&self) -> bool {
        self.edges.iter().any(Edge::is_loop)
    }

    /// Two distinct colors joining the same pair of endpoints (two loops of
    /// different colors at one vertex included), i.e. `q_i(v) = q_j(v)`.
    pub fn has_double_edge(&self) -> bool {
        (0..self.num_vertices()).any(|v| {
            let mut seen = HashSet::new();
            (1..=self.n).any(|c| !seen.insert(self.q(c, v)))
        })
    }

    pub fn is_simple(&self) -> bool {
        !self.has_loop() && !self.has_double_edge()
    }

    /// Number of orbits of the `q_c`, summed over colors.
    pub fn orbit_edge_count(&self) -> usize {
        (1..=self.n)
            .map(|c| {
                (0..self.num_vertices())
                    .filter(|&v| v <= self.q(c, v))
                    .count()
            })
            .sum()
    }
}

/// Classifies `a` from its graph structure and from its code, and checks
/// the two agree.
pub fn classify_graph(a: &Prechromotopology) -> Result<GraphClass> {
    let has_loop = a.has_loop();
    let has_double_edge = a.has_double_edge();
    let is_bipartite = a.bipartition().is_some();
    let is_chromotopology = !has_loop && !has_double_edge && is_bipartite;
    let is_adinkraizable = is_chromotopology && {
        if a.edges().len() > MAX_DASHING_EDGES {
            return Err(Error::Capacity {
                what: "graph-side dashability check (edges)",
                requested: a.edges().len() as u64,
                limit: MAX_DASHING_EDGES as u64,
            });
        }
        dashing::find_odd_dashing_unchecked(a)?.is_some()
    };
    let graph = GraphClass {
        has_loop,
        has_double_edge,
        is_bipartite,
        is_chromotopology,
        is_adinkraizable,
    };

    let cc = a.code().classify()?;
    let from_code = GraphClass {
        has_loop: cc.has_weight1,
        has_double_edge: cc.has_weight2,
        is_bipartite: cc.is_even,
        is_chromotopology: cc.is_even && !cc.has_weight2,
        is_adinkraizable: cc.is_doubly_even,
    };
    if graph != from_code {
        return Err(Error::Consistency(format!(
            "graph structure {graph:?} disagrees with code classification {from_code:?}"
        )));
    }
    Ok(graph)
}

/// An edge-colored multigraph with no labels, as read from outside.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredMultigraph {
    pub n: usize,
    pub num_vertices: usize,
    pub edges: Vec<Edge>,
}

impl ColoredMultigraph {
    pub fn from_prechromotopology(a: &Prechromotopology) -> Self {
        ColoredMultigraph {
            n: a.n(),
            num_vertices: a.num_vertices(),
            edges: a.edges().to_vec(),
        }
    }

    /// The color involutions, checking each vertex meets each color once.
    pub fn involutions(&self) -> Result<Vec<Vec<usize>>> {
        let bad = |msg: String| Error::NotAPrechromotopology(msg);
        let mut q = vec![vec![usize::MAX; self.num_vertices]; self.n];
        for e in &self.edges {
            if e.color == 0 || e.color > self.n {
                return Err(bad(format!(
                    "edge color {} outside 1..={}",
                    e.color, self.n
                )));
            }
            if e.u >= self.num_vertices || e.v >= self.num_vertices {
                return Err(bad(format!(
                    "edge ({}, {}) references a missing vertex",
                    e.u, e.v
                )));
            }
            let ends: &[(usize, usize)] = if e.is_loop() {
                &[(e.u, e.u)]
            } else {
                &[(e.u, e.v), (e.v, e.u)]
            };
            for &(x, y) in ends {
                let slot = &mut q[e.color - 1][x];
                if *slot != usize::MAX {
                    return Err(bad(format!(
                        "vertex {x} has two edges of color {}",
                        e.color
                    )));
                }
                *slot = y;
            }
        }
        for (c, qc) in q.iter().enumerate() {
            if let Some(v) = qc.iter().position(|&y| y == usize::MAX) {
                return Err(bad(format!("vertex {v} has no edge of color {}", c + 1)));
            }
        }
        Ok(q)
    }
}

/// Recovered code and per-vertex coset labels of an abstract graph.
#[derive(Clone, Debug)]
pub struct RecoveredCode {
    pub n: usize,
    pub code: LinearCode,
    /// Coset label of each input vertex.
    pub labels: Vec<Bitstring>,
}

/// Recovers the code `L` with `g` isomorphic to `I_c^n / L`.
///
/// Vertex 0 is the base point; every vertex is labeled by a group word that
/// carries vertex 0 to it, and the stabilizer of vertex 0 is generated by
/// the words of closed walks found along the way.
pub fn recover_code(g: &ColoredMultigraph) -> Result<RecoveredCode> {
    let n = g.n;
    let nv = g.num_vertices;
    if nv == 0 {
        return Err(Error::NotAPrechromotopology("empty graph".into()));
    }
    let q = g.involutions()?;
    for i in 0..n {
        for j in (i + 1)..n {
            for v in 0..nv {
                if q[i][q[j][v]] != q[j][q[i][v]] {
                    return Err(Error::NotAPrechromotopology(format!(
                        "colors {} and {} do not commute at vertex {v}",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
    }

    let mut word = vec![u64::MAX; nv];
    word[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    let mut stabilizer = Vec::new();
    while let Some(x) = queue.pop_front() {
        for (c, qc) in q.iter().enumerate() {
            let y = qc[x];
            let w = word[x] ^ (1 << c);
            if word[y] == u64::MAX {
                word[y] = w;
                queue.push_back(y);
            } else if word[y] != w {
                stabilizer.push(Bitstring::from_word(n, word[y] ^ w)?);
            }
        }
    }
    if word.contains(&u64::MAX) {
        return Err(Error::NotAPrechromotopology("graph is disconnected".into()));
    }
    let code = LinearCode::span(n, &stabilizer)?;
    let labels: Vec<Bitstring> = word
        .iter()
        .map(|&w| Bitstring::from_word(n, code.reduce_word(w)))
        .collect::<Result<_>>()?;
    let distinct: HashSet<u64> = labels.iter().map(Bitstring::word).collect();
    if distinct.len() != nv || nv != 1usize << (n - code.dim()) {
        return Err(Error::NotAPrechromotopology(
            "vertex count does not match the recovered quotient".into(),
        ));
    }
    Ok(RecoveredCode { n, code, labels })
}

/// Checks that `labels` carries `g` onto `a` as an edge-colored graph,
/// returning the vertex map.
pub fn check_isomorphism(
    g: &ColoredMultigraph,
    labels: &[Bitstring],
    a: &Prechromotopology,
) -> Result<Vec<usize>> {
    if g.n != a.n() || g.num_vertices != a.num_vertices() || labels.len() != g.num_vertices {
        return Err(Error::Consistency("graph sizes differ".into()));
    }
    let map: Vec<usize> = labels
        .iter()
        .map(|b| a.vertex_of(b))
        .collect::<Result<_>>()?;
    let image: HashSet<usize> = map.iter().copied().collect();
    if image.len() != map.len() {
        return Err(Error::Consistency("labels are not distinct cosets".into()));
    }
    let q = g.involutions()?;
    for c in 1..=g.n {
        for v in 0..g.num_vertices {
            if map[q[c - 1][v]] != a.q(c, map[v]) {
                return Err(Error::Consistency(format!(
                    "color {c} edge at vertex {v} is not preserved"
                )));
            }
        }
    }
    Ok(map)
}

/// The two pieces left after deleting every edge of one color.
#[derive(Clone, Debug)]
pub struct DecompositionPieces {
    pub color: usize,
    /// Vertices whose labels have bit `color` equal to 0.
    pub low: Prechromotopology,
    /// Vertices whose labels have bit `color` equal to 1.
    pub high: Prechromotopology,
    /// `inc_low[x]` is the vertex of the host that piece vertex `x` came from.
    pub inc_low: Vec<usize>,
    pub inc_high: Vec<usize>,
}

impl DecompositionPieces {
    /// Recolors a piece color (from 1 to n - 1) to the host color.
    pub fn host_color(&self, piece_color: usize) -> usize {
        if piece_color < self.color {
            piece_color
        } else {
            piece_color + 1
        }
    }

    /// The bijection low -> high given by `q_color` on the host.
    pub fn q_bijection(&self, host: &Prechromotopology) -> Result<Vec<usize>> {
        let mut high_of_host = vec![usize::MAX; host.num_vertices()];
        for (x, &h) in self.inc_high.iter().enumerate() {
            high_of_host[h] = x;
        }
        self.inc_low
            .iter()
            .map(|&h| {
                let y = high_of_host[host.q(self.color, h)];
                if y == usize::MAX {
                    Err(Error::Consistency(
                        "q does not map low piece into high piece".into(),
                    ))
                } else {
                    Ok(y)
                }
            })
            .collect()
    }
}

/// Splits `a` along `color`, which must be zero in every codeword.
pub fn decompose(a: &Prechromotopology, color: usize) -> Result<DecompositionPieces> {
    let n = a.n();
    if color == 0 || color > n {
        return Err(Error::Precondition(format!(
            "color {color} outside 1..={n}"
        )));
    }
    if n < 2 {
        return Err(Error::Precondition(
            "cannot decompose a one-color graph".into(),
        ));
    }
    // Every codeword is a combination of basis rows, so the basis decides.
    if let Some(bad) = a.code().basis().iter().find(|b| b.bit(color)) {
        return Err(Error::NotDecomposable {
            color,
            codeword: bad.to_string(),
        });
    }
    let reduced: Vec<Bitstring> = a
        .code()
        .basis()
        .iter()
        .map(|b| b.delete(color))
        .collect::<Result<_>>()?;
    let piece_code = LinearCode::span(n - 1, &reduced)?;
    let low = build_quotient(n - 1, &piece_code)?;
    let high = build_quotient(n - 1, &piece_code)?;
    let inc = |piece: &Prechromotopology, bit: bool| -> Result<Vec<usize>> {
        piece
            .vertices()
            .iter()
            .map(|lbl| a.vertex_of(&lbl.insert(color, bit)?))
            .collect()
    };
    let inc_low = inc(&low, false)?;
    let inc_high = inc(&high, true)?;
    Ok(DecompositionPieces {
        color,
        low,
        high,
        inc_low,
        inc_high,
    })
}

/// The two valises of a bipartite graph: the first puts the side holding
/// vertex 0 (the bosons) at rank 0, the second puts it at rank 1.
pub fn valises(a: &Prechromotopology) -> Result<[Ranking; 2]> {
    let side = a.bipartition().ok_or(Error::NotBipartite)?;
    let bosons_low = Ranking::from_heights(side.iter().map(|&s| s as u32).collect());
    let bosons_high = Ranking::from_heights(side.iter().map(|&s| 1 - s as u32).collect());
    Ok([bosons_low, bosons_high])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(s: &str) -> Bitstring {
        s.parse().unwrap()
    }

    fn quotient(gens: &[&str]) -> Prechromotopology {
        let g: Vec<Bitstring> = gens.iter().map(|s| b(s)).collect();
        let code = LinearCode::span_of(&g).unwrap();
        build_quotient(code.ambient_length(), &code).unwrap()
    }

    fn check_structure(a: &Prechromotopology) {
        let nv = a.num_vertices();
        assert_eq!(nv, 1 << (a.n() - a.k()));
        assert!(a.is_connected());
        for c in 1..=a.n() {
            for v in 0..nv {
                assert_eq!(a.q(c, a.q(c, v)), v);
                let e = a.edges()[a.edge_at(c, v)];
                assert_eq!(e.color, c);
                assert!(e.u == v || e.v == v);
                for d in 1..=a.n() {
                    assert_eq!(a.q(c, a.q(d, v)), a.q(d, a.q(c, v)));
                }
            }
        }
        assert_eq!(a.edges().len(), a.orbit_edge_count());
    }

    #[test]
    fn k44_quotient() {
        let a = quotient(&["1111"]);
        check_structure(&a);
        assert_eq!(a.num_vertices(), 8);
        assert_eq!(a.edges().len(), 16);
        assert!(a.is_simple());
        let side = a.bipartition().unwrap();
        // complete bipartite: every vertex is adjacent to all 4 on the other side
        for v in 0..8 {
            let nb: HashSet<usize> = a.neighbors(v).collect();
            let other: HashSet<usize> = (0..8).filter(|&w| side[w] != side[v]).collect();
            assert_eq!(nb, other);
        }
        let class = classify_graph(&a).unwrap();
        assert!(class.is_adinkraizable && class.is_chromotopology);
    }

    #[test]
    fn cube_three() {
        let a = cube(3).unwrap();
        check_structure(&a);
        assert_eq!(a.num_vertices(), 8);
        assert_eq!(a.edges().len(), 12);
        for v in 0..8 {
            assert_eq!(a.label(v).word(), v as u64);
        }
        let class = classify_graph(&a).unwrap();
        assert!(class.is_chromotopology && class.is_adinkraizable);
    }

    #[test]
    fn loop_quotient() {
        let a = quotient(&["10"]);
        check_structure(&a);
        assert_eq!(a.vertices(), &[b("00"), b("01")]);
        let loops: Vec<_> = a.edges().iter().filter(|e| e.is_loop()).collect();
        assert_eq!(loops.len(), 2);
        assert!(loops.iter().all(|e| e.color == 1));
        let others: Vec<_> = a.edges().iter().filter(|e| !e.is_loop()).collect();
        assert_eq!(others.len(), 1);
        assert_eq!((others[0].u, others[0].v, others[0].color), (0, 1, 2));
        let class = classify_graph(&a).unwrap();
        assert!(class.has_loop && !class.is_bipartite && !class.is_chromotopology);
    }

    #[test]
    fn double_edge_quotient() {
        let a = quotient(&["11"]);
        check_structure(&a);
        let class = classify_graph(&a).unwrap();
        assert!(class.has_double_edge && class.is_bipartite && !class.is_chromotopology);
    }

    #[test]
    fn classify_agrees_for_all_small_codes() {
        for n in 1..=5 {
            for code in crate::code::all_codes(n).unwrap() {
                let a = build_quotient(n, &code).unwrap();
                check_structure(&a);
                classify_graph(&a).unwrap();
            }
        }
    }

    #[test]
    fn recover_examples() {
        let k44 = quotient(&["1111"]);
        let rec = recover_code(&ColoredMultigraph::from_prechromotopology(&k44)).unwrap();
        assert_eq!(rec.code, *k44.code());

        let sq = cube(2).unwrap();
        let rec = recover_code(&ColoredMultigraph::from_prechromotopology(&sq)).unwrap();
        assert_eq!(rec.code.dim(), 0);

        let lp = quotient(&["10"]);
        let rec = recover_code(&ColoredMultigraph::from_prechromotopology(&lp)).unwrap();
        assert_eq!(rec.code, *lp.code());
        check_isomorphism(
            &ColoredMultigraph::from_prechromotopology(&lp),
            &rec.labels,
            &lp,
        )
        .unwrap();
    }

    #[test]
    fn recover_is_inverse_of_build_for_all_codes() {
        for n in 1..=6 {
            for code in crate::code::all_codes(n).unwrap() {
                let a = build_quotient(n, &code).unwrap();
                let g = ColoredMultigraph::from_prechromotopology(&a);
                let rec = recover_code(&g).unwrap();
                assert_eq!(rec.code, code);
                let rebuilt = build_quotient(rec.n, &rec.code).unwrap();
                check_isomorphism(&g, &rec.labels, &rebuilt).unwrap();
            }
        }
    }

    #[test]
    fn recover_rejects_bad_graphs() {
        let two_lines = ColoredMultigraph {
            n: 1,
            num_vertices: 4,
            edges: vec![
                Edge {
                    u: 0,
                    v: 1,
                    color: 1,
                },
                Edge {
                    u: 2,
                    v: 3,
                    color: 1,
                },
            ],
        };
        assert!(matches!(
            recover_code(&two_lines),
            Err(Error::NotAPrechromotopology(_))
        ));

        // a hexagon with alternating colors: q1 q2 has order 3
        let hexagon = ColoredMultigraph {
            n: 2,
            num_vertices: 6,
            edges: (0..6)
                .map(|i| Edge {
                    u: i.min((i + 1) % 6),
                    v: i.max((i + 1) % 6),
                    color: 1 + i % 2,
                })
                .collect(),
        };
        assert!(matches!(
            recover_code(&hexagon),
            Err(Error::NotAPrechromotopology(_))
        ));
    }

    #[test]
    fn decompose_cube_three() {
        let a = cube(3).unwrap();
        let p = decompose(&a, 3).unwrap();
        assert_eq!(p.low.num_vertices(), 4);
        assert_eq!(p.low.code().dim(), 0);
        assert_eq!(p.high.code().dim(), 0);
        let mut all: Vec<usize> = p.inc_low.iter().chain(&p.inc_high).copied().collect();
        all.sort();
        assert_eq!(all, (0..8).collect::<Vec<_>>());
        for &v in &p.inc_low {
            assert!(!a.label(v).bit(3));
        }
        let low: HashSet<usize> = p.inc_low.iter().copied().collect();
        for e in a.edges() {
            if low.contains(&e.u) != low.contains(&e.v) {
                assert_eq!(e.color, 3);
            }
        }
    }

    #[test]
    fn decomposition_pieces_are_isomorphic_via_q() {
        for n in 2..=5 {
            for code in crate::code::all_codes(n).unwrap() {
                let a = build_quotient(n, &code).unwrap();
                for color in 1..=n {
                    let Ok(p) = decompose(&a, color) else {
                        assert!(code.basis().iter().any(|b| b.bit(color)));
                        continue;
                    };
                    let phi = p.q_bijection(&a).unwrap();
                    for pc in 1..n {
                        for x in 0..p.low.num_vertices() {
                            assert_eq!(phi[p.low.q(pc, x)], p.high.q(pc, phi[x]));
                            // piece edges are host edges of the recolored color
                            assert_eq!(
                                p.inc_low[p.low.q(pc, x)],
                                a.q(p.host_color(pc), p.inc_low[x])
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn every_color_decomposes_the_cube() {
        let a = cube(4).unwrap();
        for c in 1..=4 {
            decompose(&a, c).unwrap();
        }
    }

    #[test]
    fn k44_does_not_decompose() {
        let a = quotient(&["1111"]);
        assert!(matches!(
            decompose(&a, 1),
            Err(Error::NotDecomposable { color: 1, .. })
        ));
    }

    #[test]
    fn valise_examples() {
        let a = cube(3).unwrap();
        let [v0, v1] = valises(&a).unwrap();
        for v in 0..8 {
            let odd = a.label(v).weight() % 2;
            assert_eq!(v0.height(v), odd);
            assert_eq!(v1.height(v), 1 - odd);
        }
        let line = cube(1).unwrap();
        let [r0, r1] = valises(&line).unwrap();
        assert_eq!(r0.heights(), &[0, 1]);
        assert_eq!(r1.heights(), &[1, 0]);
        assert!(matches!(
            valises(&quotient(&["10"])),
            Err(Error::NotBipartite)
        ));
    }

    #[test]
    fn capacity_is_enforced() {
        let code = LinearCode::trivial(21).unwrap();
        assert!(matches!(
            build_quotient(21, &code),
            Err(Error::Capacity { .. })
        ));
    }
}
