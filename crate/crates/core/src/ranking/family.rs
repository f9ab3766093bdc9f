//! The rank family of a graph as a poset under single raises, and the
//! elevation poset whose order ideals it is isomorphic to.

use std::collections::{BTreeSet, HashMap, HashSet};

use super::{
    hook, vertex_flip, FlipDirection, HookMode, IdealLattice, Poset, Ranking, ORACLE_MAX_VERTICES,
};
use crate::chromo::Prechromotopology;
use crate::error::{Error, Result};
use crate::gf2::Gf2Vec;

/// Elements `(w, h)` for `w != v` and `1 <= h <= D(w, v)`.
#[derive(Clone, Debug)]
pub struct ElevationPoset {
    pub v: usize,
    pub elements: Vec<(usize, u32)>,
    pub poset: Poset,
}

impl ElevationPoset {
    pub fn index_of(&self, w: usize, h: u32) -> Option<usize> {
        self.elements.iter().position(|&e| e == (w, h))
    }

    /// Number of elements in each vertex's column, by vertex.
    pub fn column_sizes(&self) -> Vec<usize> {
        let n = self.elements.iter().map(|e| e.0 + 1).max().unwrap_or(0);
        let mut sizes = vec![0; n];
        for &(w, _) in &self.elements {
            sizes[w] += 1;
        }
        sizes
    }
}

/// The elevation poset of `a` at `v`. Along an edge `w1 -- w2` with
/// `w2` one step farther from `v`, `(w2, h) < (w1, h) < (w2, h + 1)`.
pub fn elevation_poset(a: &Prechromotopology, v: usize) -> Result<ElevationPoset> {
    if v >= a.num_vertices() {
        return Err(Error::Precondition(format!("no vertex {v}")));
    }
    if a.bipartition().is_none() {
        return Err(Error::NotBipartite);
    }
    let dist = a.distances_from(v);
    let mut elements = Vec::new();
    let mut index = HashMap::new();
    for w in (0..a.num_vertices()).filter(|&w| w != v) {
        for h in 1..=dist[w] {
            index.insert((w, h), elements.len());
            elements.push((w, h));
        }
    }
    let mut covers = Vec::new();
    for e in a.edges().iter().filter(|e| !e.is_loop()) {
        let (near, far) = if dist[e.u] < dist[e.v] {
            (e.u, e.v)
        } else {
            (e.v, e.u)
        };
        for h in 1..=dist[near] {
            let lo = index[&(far, h)];
            let mid = index[&(near, h)];
            let hi = index[&(far, h + 1)];
            covers.push((lo, mid));
            covers.push((mid, hi));
        }
    }
    let poset = Poset::new(elements.len(), covers, None)?;
    Ok(ElevationPoset { v, elements, poset })
}

/// Rankings of `a` ordered by raising sources other than `v`, from the
/// `v`-hooked ranking up to the `v`-anchored one. Rankings within one level
/// are sorted by height vector.
#[derive(Clone, Debug)]
pub struct RankFamilyPoset {
    pub v: usize,
    pub rankings: Vec<Ranking>,
    pub poset: Poset,
}

pub fn rank_family_poset(a: &Prechromotopology, v: usize) -> Result<RankFamilyPoset> {
    if a.num_vertices() > ORACLE_MAX_VERTICES {
        return Err(Error::Capacity {
            what: "rank family poset (vertices)",
            requested: a.num_vertices() as u64,
            limit: ORACLE_MAX_VERTICES as u64,
        });
    }
    let bottom = hook(a, v, HookMode::Hooked)?;
    let mut rankings = vec![bottom];
    let mut level_of = vec![0u32];
    let mut covers = Vec::new();
    let mut layer = 0..1;
    let mut level = 0;
    while !layer.is_empty() {
        level += 1;
        let mut raised = Vec::new();
        for i in layer.clone() {
            for w in rankings[i].sources(a).into_iter().filter(|&w| w != v) {
                raised.push((i, vertex_flip(a, &rankings[i], w, FlipDirection::Raise)?));
            }
        }
        let next: BTreeSet<Ranking> = raised.iter().map(|(_, r)| r.clone()).collect();
        let start = rankings.len();
        let index: HashMap<Ranking, usize> = next
            .iter()
            .enumerate()
            .map(|(j, r)| (r.clone(), start + j))
            .collect();
        rankings.extend(next);
        level_of.resize(rankings.len(), level);
        covers.extend(raised.iter().map(|(i, r)| (*i, index[r])));
        layer = start..rankings.len();
    }
    let anchored = hook(a, v, HookMode::Anchored)?;
    let has_up: HashSet<usize> = covers.iter().map(|&(x, _)| x).collect();
    let tops: Vec<usize> = (0..rankings.len())
        .filter(|i| !has_up.contains(i))
        .collect();
    if tops.len() != 1 || rankings[tops[0]] != anchored {
        return Err(Error::Consistency(format!(
            "raising from the {v}-hooked ranking ends at {} maximal rankings",
            tops.len()
        )));
    }
    let poset = Poset::new(rankings.len(), covers, Some(level_of))?;
    Ok(RankFamilyPoset { v, rankings, poset })
}

/// The explicit isomorphism from the rank family poset to the ideals of the
/// elevation poset: `w` contributes `(w, 1), ..., (w, h_w)` with
/// `h_w = (h(w) - h(v) + D(w, v)) / 2`. Returns the ideal index of each
/// ranking, after checking that the map is bijective and matches covers.
pub fn rank_family_to_ideals(
    a: &Prechromotopology,
    family: &RankFamilyPoset,
    elevation: &ElevationPoset,
    ideals: &IdealLattice,
) -> Result<Vec<usize>> {
    let v = family.v;
    if elevation.v != v {
        return Err(Error::Precondition(
            "posets are based at different vertices".into(),
        ));
    }
    let dist = a.distances_from(v);
    let lookup: HashMap<&Gf2Vec, usize> = ideals
        .ideals
        .iter()
        .enumerate()
        .map(|(i, s)| (s, i))
        .collect();
    let mut image = Vec::with_capacity(family.rankings.len());
    for r in &family.rankings {
        let mut ideal = Gf2Vec::zeros(elevation.elements.len());
        for (i, &(w, h)) in elevation.elements.iter().enumerate() {
            let twice = r.height(w) as i64 - r.height(v) as i64 + dist[w] as i64;
            if twice.rem_euclid(2) != 0 || twice < 0 || twice > 2 * dist[w] as i64 {
                return Err(Error::Consistency(format!(
                    "vertex {w} sits outside the band allowed by the hook at {v}"
                )));
            }
            ideal.set(i, h as i64 <= twice / 2);
        }
        let j = *lookup.get(&ideal).ok_or_else(|| {
            Error::Consistency("a ranking maps to a set that is not an order ideal".into())
        })?;
        image.push(j);
    }
    let distinct: HashSet<usize> = image.iter().copied().collect();
    if distinct.len() != image.len() || image.len() != ideals.ideals.len() {
        return Err(Error::Consistency(format!(
            "{} rankings map onto {} of {} ideals",
            image.len(),
            distinct.len(),
            ideals.ideals.len()
        )));
    }
    let ideal_covers: HashSet<(usize, usize)> = ideals.poset.covers().iter().copied().collect();
    let mapped: HashSet<(usize, usize)> = family
        .poset
        .covers()
        .iter()
        .map(|&(x, y)| (image[x], image[y]))
        .collect();
    if mapped != ideal_covers {
        return Err(Error::Consistency(
            "cover relations do not correspond".into(),
        ));
    }
    Ok(image)
}
