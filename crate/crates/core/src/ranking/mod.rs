//! Rank functions on bipartite prechromotopologies.
//!
//! A ranking assigns each vertex a height so that every edge joins heights
//! differing by exactly one; heights are normalized to a minimum of zero.
//! Sinks are vertices whose neighbors all sit lower, sources the reverse.

mod family;
mod fast;
mod poset;

pub use family::{
    elevation_poset, rank_family_poset, rank_family_to_ideals, ElevationPoset, RankFamilyPoset,
};
pub use fast::{enumerate_rankings_fast, FastEnumeration, FastOptions, MAX_FAST_N};
pub use poset::{lattice_checks, order_ideal_lattice, IdealLattice, LatticeReport, Poset};

use std::collections::{HashMap, HashSet, VecDeque};

use crate::chromo::{valises, Prechromotopology};
use crate::error::{Error, Result};

/// Largest vertex count accepted by the flip-closure enumeration.
pub const ORACLE_MAX_VERTICES: usize = 16;

/// Normalized rank function.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ranking {
    h: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HookMode {
    /// Single sink at the vertex.
    Hooked,
    /// Single source at the vertex.
    Anchored,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlipDirection {
    Lower,
    Raise,
}

fn normalize(h: &[i64]) -> Vec<u32> {
    let min = h.iter().copied().min().unwrap_or(0);
    h.iter().map(|&x| (x - min) as u32).collect()
}

impl Ranking {
    /// Validates `heights` as a ranking of `a` and normalizes it.
    pub fn new(a: &Prechromotopology, heights: &[i64]) -> Result<Self> {
        if heights.len() != a.num_vertices() {
            return Err(Error::DimensionMismatch {
                expected: a.num_vertices(),
                found: heights.len(),
            });
        }
        for e in a.edges() {
            if (heights[e.u] - heights[e.v]).abs() != 1 {
                return Err(Error::Precondition(format!(
                    "edge ({}, {}) of color {} joins heights {} and {}",
                    e.u, e.v, e.color, heights[e.u], heights[e.v]
                )));
            }
        }
        Ok(Ranking {
            h: normalize(heights),
        })
    }

    /// Wraps already-normalized heights without checking edges.
    pub(crate) fn from_heights(h: Vec<u32>) -> Self {
        debug_assert!(h.is_empty() || h.iter().min() == Some(&0));
        Ranking { h }
    }

    pub fn heights(&self) -> &[u32] {
        &self.h
    }

    pub fn height(&self, v: usize) -> u32 {
        self.h[v]
    }

    /// Largest height (the poset height).
    pub fn top(&self) -> u32 {
        self.h.iter().copied().max().unwrap_or(0)
    }

    pub fn is_valise(&self) -> bool {
        self.top() <= 1
    }

    pub fn is_sink(&self, a: &Prechromotopology, v: usize) -> bool {
        a.neighbors(v).all(|w| self.h[w] < self.h[v])
    }

    pub fn is_source(&self, a: &Prechromotopology, v: usize) -> bool {
        a.neighbors(v).all(|w| self.h[w] > self.h[v])
    }

    pub fn sinks(&self, a: &Prechromotopology) -> Vec<usize> {
        (0..self.h.len()).filter(|&v| self.is_sink(a, v)).collect()
    }

    pub fn sources(&self, a: &Prechromotopology) -> Vec<usize> {
        (0..self.h.len())
            .filter(|&v| self.is_source(a, v))
            .collect()
    }

    /// Flips the ranking upside down.
    pub fn reversed(&self) -> Ranking {
        let top = self.top();
        Ranking {
            h: self.h.iter().map(|&x| top - x).collect(),
        }
    }

    /// The sink set together with the sink heights.
    pub fn sink_spec(&self, a: &Prechromotopology) -> SinkSpec {
        let sinks = self.sinks(a);
        let ranks = sinks.iter().map(|&s| self.h[s] as i64).collect();
        SinkSpec { sinks, ranks }
    }
}

/// Sinks with prescribed heights, the input to [`hanging_gardens`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SinkSpec {
    pub sinks: Vec<usize>,
    pub ranks: Vec<i64>,
}

impl SinkSpec {
    pub fn single(v: usize) -> Self {
        SinkSpec {
            sinks: vec![v],
            ranks: vec![0],
        }
    }

    /// Checks the parity and distance conditions against `a`.
    pub fn validate(&self, a: &Prechromotopology) -> Result<()> {
        if self.sinks.len() != self.ranks.len() {
            return Err(Error::DimensionMismatch {
                expected: self.sinks.len(),
                found: self.ranks.len(),
            });
        }
        if self.sinks.is_empty() {
            return Err(Error::Precondition("sink set is empty".into()));
        }
        let side = a.bipartition().ok_or(Error::NotBipartite)?;
        let mut seen = HashSet::new();
        for &s in &self.sinks {
            if s >= a.num_vertices() {
                return Err(Error::Precondition(format!("no vertex {s}")));
            }
            if !seen.insert(s) {
                return Err(Error::Precondition(format!("sink {s} listed twice")));
            }
        }
        let parity = |i: usize| (self.ranks[i] + side[self.sinks[i]] as i64).rem_euclid(2);
        if (1..self.sinks.len()).any(|i| parity(i) != parity(0)) {
            return Err(Error::Precondition(
                "sink heights do not alternate parity with the bipartition".into(),
            ));
        }
        for (i, &s) in self.sinks.iter().enumerate() {
            let dist = a.distances_from(s);
            for (j, &t) in self.sinks.iter().enumerate().skip(i + 1) {
                if (dist[t] as i64) < (self.ranks[i] - self.ranks[j]).abs() {
                    return Err(Error::Precondition(format!(
                        "sinks {s} and {t} are at distance {} but heights differ by {}",
                        dist[t],
                        (self.ranks[i] - self.ranks[j]).abs()
                    )));
                }
            }
        }
        Ok(())
    }
}

/// The unique ranking whose sinks are exactly `spec.sinks` at the given
/// relative heights: every vertex hangs as low as the pinned sinks allow,
/// `h(v) = max over s of (h_S(s) - D(v, s))`.
pub fn hanging_gardens(a: &Prechromotopology, spec: &SinkSpec) -> Result<Ranking> {
    spec.validate(a)?;
    if !a.is_connected() {
        return Err(Error::Precondition("graph is disconnected".into()));
    }
    let mut h = vec![i64::MIN; a.num_vertices()];
    for (&s, &rank) in spec.sinks.iter().zip(&spec.ranks) {
        for (v, d) in a.distances_from(s).into_iter().enumerate() {
            h[v] = h[v].max(rank - d as i64);
        }
    }
    let ranking = Ranking::new(a, &h)?;
    let mut got = ranking.sinks(a);
    let mut want = spec.sinks.clone();
    got.sort_unstable();
    want.sort_unstable();
    if got != want {
        return Err(Error::Precondition(format!(
            "hung ranking has sinks {got:?}, expected {want:?}"
        )));
    }
    let offset = ranking.height(spec.sinks[0]) as i64 - spec.ranks[0];
    for (&s, &rank) in spec.sinks.iter().zip(&spec.ranks) {
        if ranking.height(s) as i64 - rank != offset {
            return Err(Error::Consistency(format!(
                "sink {s} moved relative to the others"
            )));
        }
    }
    Ok(ranking)
}

/// The `v`-hooked (single sink) or `v`-anchored (single source) ranking.
pub fn hook(a: &Prechromotopology, v: usize, mode: HookMode) -> Result<Ranking> {
    let hooked = hanging_gardens(a, &SinkSpec::single(v))?;
    Ok(match mode {
        HookMode::Hooked => hooked,
        HookMode::Anchored => hooked.reversed(),
    })
}

/// Moves a sink down two levels or a source up two levels.
pub fn vertex_flip(
    a: &Prechromotopology,
    r: &Ranking,
    v: usize,
    dir: FlipDirection,
) -> Result<Ranking> {
    if v >= r.h.len() {
        return Err(Error::Precondition(format!("no vertex {v}")));
    }
    let mut h: Vec<i64> = r.h.iter().map(|&x| x as i64).collect();
    match dir {
        FlipDirection::Lower => {
            if !r.is_sink(a, v) {
                return Err(Error::FlipNotAllowed {
                    action: "lower",
                    vertex: v,
                    required: "sink",
                });
            }
            h[v] -= 2;
        }
        FlipDirection::Raise => {
            if !r.is_source(a, v) {
                return Err(Error::FlipNotAllowed {
                    action: "raise",
                    vertex: v,
                    required: "source",
                });
            }
            h[v] += 2;
        }
    }
    Ranking::new(a, &h)
}

/// All rankings reachable by single flips from `r`, tagged with the vertex
/// and direction.
pub fn flip_neighbors<'a>(
    a: &'a Prechromotopology,
    r: &Ranking,
) -> impl Iterator<Item = (usize, FlipDirection, Ranking)> + 'a {
    let r = r.clone();
    (0..a.num_vertices()).flat_map(move |v| {
        let mut out = Vec::new();
        for dir in [FlipDirection::Lower, FlipDirection::Raise] {
            if let Ok(next) = vertex_flip(a, &r, v, dir) {
                out.push((v, dir, next));
            }
        }
        out
    })
}

/// The rank family of `a` by breadth-first closure of a valise under all
/// legal flips. Results are sorted by height vector.
pub fn enumerate_rankings_oracle(a: &Prechromotopology) -> Result<Vec<Ranking>> {
    if a.num_vertices() > ORACLE_MAX_VERTICES {
        return Err(Error::Capacity {
            what: "flip-closure enumeration (vertices)",
            requested: a.num_vertices() as u64,
            limit: ORACLE_MAX_VERTICES as u64,
        });
    }
    let [start, _] = valises(a)?;
    let mut seen: HashMap<Ranking, ()> = HashMap::from([(start.clone(), ())]);
    let mut queue = VecDeque::from([start]);
    while let Some(r) = queue.pop_front() {
        for (_, _, next) in flip_neighbors(a, &r) {
            if !seen.contains_key(&next) {
                seen.insert(next.clone(), ());
                queue.push_back(next);
            }
        }
    }
    let mut out: Vec<Ranking> = seen.into_keys().collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chromo::cube;

    fn v(a: &Prechromotopology, s: &str) -> usize {
        a.vertex_of(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn weight_ranking_is_hooked_and_anchored() {
        let a = cube(3).unwrap();
        let top = v(&a, "111");
        let spec = SinkSpec {
            sinks: vec![top],
            ranks: vec![3],
        };
        let r = hanging_gardens(&a, &spec).unwrap();
        for x in 0..8 {
            assert_eq!(r.height(x), a.label(x).weight());
        }
        assert_eq!(hook(&a, top, HookMode::Hooked).unwrap(), r);
        assert_eq!(hook(&a, v(&a, "000"), HookMode::Anchored).unwrap(), r);
    }

    #[test]
    fn two_sink_garden() {
        // sinks 100 and 001, both at the top
        let a = cube(3).unwrap();
        let spec = SinkSpec {
            sinks: vec![v(&a, "100"), v(&a, "001")],
            ranks: vec![2, 2],
        };
        let r = hanging_gardens(&a, &spec).unwrap();
        assert_eq!(r.top(), 2);
        assert_eq!(r.height(v(&a, "000")), 1);
        assert_eq!(r.height(v(&a, "101")), 1);
        assert_eq!(r.height(v(&a, "010")), 0);
        assert_eq!(r.height(v(&a, "111")), 0);
        let mut sinks = r.sinks(&a);
        sinks.sort();
        assert_eq!(sinks, vec![v(&a, "100"), v(&a, "001")]);
    }

    #[test]
    fn single_sink_spec_always_works() {
        let a = cube(3).unwrap();
        for x in 0..8 {
            let r = hook(&a, x, HookMode::Hooked).unwrap();
            assert_eq!(r.sinks(&a), vec![x]);
            let r = hook(&a, x, HookMode::Anchored).unwrap();
            assert_eq!(r.sources(&a), vec![x]);
            assert_eq!(r, hook(&a, x, HookMode::Hooked).unwrap().reversed());
        }
    }

    #[test]
    fn bad_specs_are_rejected() {
        let a = cube(3).unwrap();
        // parity: 000 and 011 are on the same side but heights differ by 1
        let spec = SinkSpec {
            sinks: vec![v(&a, "000"), v(&a, "011")],
            ranks: vec![0, 1],
        };
        assert!(hanging_gardens(&a, &spec).is_err());
        // distance: 000 and 001 are adjacent but heights differ by 3
        let spec = SinkSpec {
            sinks: vec![v(&a, "000"), v(&a, "001")],
            ranks: vec![0, 3],
        };
        assert!(hanging_gardens(&a, &spec).is_err());
    }

    #[test]
    fn flip_examples() {
        let a = cube(2).unwrap();
        let top = v(&a, "11");
        let hooked = hook(&a, top, HookMode::Hooked).unwrap();
        let valise = vertex_flip(&a, &hooked, top, FlipDirection::Lower).unwrap();
        assert!(valise.is_valise());

        let back = vertex_flip(&a, &valise, top, FlipDirection::Raise).unwrap();
        assert_eq!(back, hooked);

        let err = vertex_flip(&a, &hooked, v(&a, "10"), FlipDirection::Lower).unwrap_err();
        assert!(matches!(err, Error::FlipNotAllowed { .. }));
    }

    #[test]
    fn oracle_counts() {
        assert_eq!(
            enumerate_rankings_oracle(&cube(1).unwrap()).unwrap().len(),
            2
        );
        assert_eq!(
            enumerate_rankings_oracle(&cube(2).unwrap()).unwrap().len(),
            6
        );
        assert_eq!(
            enumerate_rankings_oracle(&cube(3).unwrap()).unwrap().len(),
            38
        );
    }

    #[test]
    fn hanging_gardens_is_a_bijection_on_small_cubes() {
        for n in 2..=3 {
            let a = cube(n).unwrap();
            let all = enumerate_rankings_oracle(&a).unwrap();
            let mut specs = HashSet::new();
            for r in &all {
                let spec = r.sink_spec(&a);
                assert!(specs.insert(spec.clone()));
                assert_eq!(&hanging_gardens(&a, &spec).unwrap(), r);
            }
        }
    }

    #[test]
    fn greedy_lowering_reaches_the_hooked_ranking() {
        let a = cube(3).unwrap();
        for r in enumerate_rankings_oracle(&a).unwrap() {
            for pinned in 0..8 {
                let mut cur = r.clone();
                loop {
                    let next = cur
                        .sinks(&a)
                        .into_iter()
                        .find(|&s| s != pinned)
                        .map(|s| vertex_flip(&a, &cur, s, FlipDirection::Lower).unwrap());
                    match next {
                        Some(n) => cur = n,
                        None => break,
                    }
                }
                assert_eq!(cur, hook(&a, pinned, HookMode::Hooked).unwrap());
            }
        }
    }

    proptest::proptest! {
        #[test]
        fn random_flip_walks_stay_in_the_family(steps in proptest::collection::vec(0usize..64, 0..40)) {
            let a = cube(4).unwrap();
            let [mut cur, _] = valises(&a).unwrap();
            for s in steps {
                let moves: Vec<Ranking> = flip_neighbors(&a, &cur).map(|(_, _, r)| r).collect();
                cur = moves[s % moves.len()].clone();
                let h: Vec<i64> = cur.heights().iter().map(|&x| x as i64).collect();
                proptest::prop_assert_eq!(&Ranking::new(&a, &h).unwrap(), &cur);
                proptest::prop_assert_eq!(&hanging_gardens(&a, &cur.sink_spec(&a)).unwrap(), &cur);
            }
        }
    }
}
