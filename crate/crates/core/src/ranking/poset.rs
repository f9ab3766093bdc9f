//! Finite posets given by their cover relations, order ideals, and lattice
//! tests.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf2::Gf2Vec;

/// Most ideals materialized by [`order_ideal_lattice`].
pub const MAX_IDEALS: usize = 1_000_000;

/// Largest poset handed to [`lattice_checks`].
pub const MAX_LATTICE_ELEMENTS: usize = 10_000;

/// Elements `0..len` with cover pairs `(lower, upper)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    len: usize,
    covers: Vec<(usize, usize)>,
    rank: Option<Vec<u32>>,
}

impl Poset {
    pub fn new(
        len: usize,
        mut covers: Vec<(usize, usize)>,
        rank: Option<Vec<u32>>,
    ) -> Result<Self> {
        if let Some(&(x, y)) = covers
            .iter()
            .find(|&&(x, y)| x >= len || y >= len || x == y)
        {
            return Err(Error::Precondition(format!("bad cover pair ({x}, {y})")));
        }
        if let Some(r) = &rank {
            if r.len() != len {
                return Err(Error::DimensionMismatch {
                    expected: len,
                    found: r.len(),
                });
            }
        }
        covers.sort_unstable();
        covers.dedup();
        let p = Poset { len, covers, rank };
        p.topological_order()?;
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Cover pairs `(lower, upper)`, sorted.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn rank(&self) -> Option<&[u32]> {
        self.rank.as_deref()
    }

    fn upper_covers(&self) -> Vec<Vec<usize>> {
        let mut up = vec![Vec::new(); self.len];
        for &(x, y) in &self.covers {
            up[x].push(y);
        }
        up
    }

    /// Elements ordered so that every cover goes forwards.
    pub fn topological_order(&self) -> Result<Vec<usize>> {
        let up = self.upper_covers();
        let mut indeg = vec![0usize; self.len];
        for &(_, y) in &self.covers {
            indeg[y] += 1;
        }
        let mut stack: Vec<usize> = (0..self.len).rev().filter(|&x| indeg[x] == 0).collect();
        let mut order = Vec::with_capacity(self.len);
        while let Some(x) = stack.pop() {
            order.push(x);
            for &y in up[x].iter().rev() {
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    stack.push(y);
                }
            }
        }
        if order.len() != self.len {
            return Err(Error::Precondition("cover relation has a cycle".into()));
        }
        Ok(order)
    }

    /// `up[x]` holds every `y >= x`.
    pub fn up_sets(&self) -> Result<Vec<Gf2Vec>> {
        let order = self.topological_order()?;
        let up = self.upper_covers();
        let mut sets = vec![Gf2Vec::zeros(self.len); self.len];
        for &x in order.iter().rev() {
            let mut s = Gf2Vec::zeros(self.len);
            s.set(x, true);
            for &y in &up[x] {
                s.or_assign(&sets[y]);
            }
            sets[x] = s;
        }
        Ok(sets)
    }

    /// `down[x]` holds every `y <= x`.
    pub fn down_sets(&self) -> Result<Vec<Gf2Vec>> {
        let up = self.up_sets()?;
        let mut down = vec![Gf2Vec::zeros(self.len); self.len];
        for (x, s) in up.iter().enumerate() {
            for y in s.ones_iter() {
                down[y].set(x, true);
            }
        }
        Ok(down)
    }

    pub fn leq(&self, x: usize, y: usize) -> Result<bool> {
        Ok(self.up_sets()?[x].get(y))
    }
}

/// The distributive lattice of order ideals of a poset.
#[derive(Clone, Debug)]
pub struct IdealLattice {
    /// Ideals as subsets of the base poset, in breadth-first order from the
    /// empty ideal.
    pub ideals: Vec<Gf2Vec>,
    /// Ordered by inclusion; covers add one element. Ranked by size.
    pub poset: Poset,
}

impl IdealLattice {
    pub fn index_of(&self, ideal: &Gf2Vec) -> Option<usize> {
        self.ideals.iter().position(|i| i == ideal)
    }
}

/// All order ideals of `p`, grown one minimal addable element at a time.
pub fn order_ideal_lattice(p: &Poset) -> Result<IdealLattice> {
    let mut below = vec![Vec::new(); p.len()];
    for &(x, y) in p.covers() {
        below[y].push(x);
    }
    let empty = Gf2Vec::zeros(p.len());
    let mut index = HashMap::from([(empty.clone(), 0usize)]);
    let mut ideals = vec![empty];
    let mut covers = Vec::new();
    let mut head = 0;
    while head < ideals.len() {
        let ideal = ideals[head].clone();
        for (x, lower) in below.iter().enumerate() {
            if ideal.get(x) || !lower.iter().all(|&y| ideal.get(y)) {
                continue;
            }
            let mut bigger = ideal.clone();
            bigger.set(x, true);
            let j = match index.get(&bigger) {
                Some(&j) => j,
                None => {
                    if ideals.len() >= MAX_IDEALS {
                        return Err(Error::Capacity {
                            what: "order ideals",
                            requested: ideals.len() as u64 + 1,
                            limit: MAX_IDEALS as u64,
                        });
                    }
                    index.insert(bigger.clone(), ideals.len());
                    ideals.push(bigger);
                    ideals.len() - 1
                }
            };
            covers.push((head, j));
        }
        head += 1;
    }
    let rank = ideals.iter().map(|i| i.count_ones() as u32).collect();
    let poset = Poset::new(ideals.len(), covers, Some(rank))?;
    Ok(IdealLattice { ideals, poset })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeReport {
    pub is_lattice: bool,
    pub is_distributive: bool,
}

/// Least element of a nonempty set whose members' up-sets are known, if any.
fn least(candidates: &Gf2Vec, up: &[Gf2Vec]) -> Option<usize> {
    let size = candidates.count_ones();
    candidates.ones_iter().find(|&z| up[z].count_ones() == size)
}

/// Whether all meets and joins exist and, if so, whether they distribute.
pub fn lattice_checks(p: &Poset) -> Result<LatticeReport> {
    if p.len() > MAX_LATTICE_ELEMENTS {
        return Err(Error::Capacity {
            what: "lattice check (elements)",
            requested: p.len() as u64,
            limit: MAX_LATTICE_ELEMENTS as u64,
        });
    }
    let n = p.len();
    let up = p.up_sets()?;
    let down = p.down_sets()?;
    let mut join = vec![0usize; n * n];
    let mut meet = vec![0usize; n * n];
    for x in 0..n {
        for y in x..n {
            let (Some(j), Some(m)) = (
                least(&up[x].and(&up[y]), &up),
                least(&down[x].and(&down[y]), &down),
            ) else {
                return Ok(LatticeReport {
                    is_lattice: false,
                    is_distributive: false,
                });
            };
            join[x * n + y] = j;
            join[y * n + x] = j;
            meet[x * n + y] = m;
            meet[y * n + x] = m;
        }
    }
    let j = |a: usize, b: usize| join[a * n + b];
    let m = |a: usize, b: usize| meet[a * n + b];
    let distributive = (0..n).into_par_iter().all(|x| {
        (0..n).all(|y| {
            (0..n).all(|z| {
                j(x, m(y, z)) == m(j(x, y), j(x, z)) && m(x, j(y, z)) == j(m(x, y), m(x, z))
            })
        })
    });
    Ok(LatticeReport {
        is_lattice: true,
        is_distributive: distributive,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> Poset {
        Poset::new(n, (1..n).map(|i| (i - 1, i)).collect(), None).unwrap()
    }

    #[test]
    fn diamond_is_a_lattice_but_not_distributive() {
        // bottom 0, atoms 1 2 3, top 4
        let m3 = Poset::new(
            5,
            vec![(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)],
            None,
        )
        .unwrap();
        let r = lattice_checks(&m3).unwrap();
        assert!(r.is_lattice);
        assert!(!r.is_distributive);
    }

    #[test]
    fn pentagon_is_not_distributive() {
        let n5 = Poset::new(5, vec![(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)], None).unwrap();
        let r = lattice_checks(&n5).unwrap();
        assert!(r.is_lattice && !r.is_distributive);
    }

    #[test]
    fn antichain_is_not_a_lattice() {
        let r = lattice_checks(&Poset::new(2, vec![], None).unwrap()).unwrap();
        assert!(!r.is_lattice);
    }

    #[test]
    fn cycles_are_rejected() {
        assert!(Poset::new(2, vec![(0, 1), (1, 0)], None).is_err());
    }

    #[test]
    fn ideals_of_a_chain_and_an_antichain() {
        let j = order_ideal_lattice(&chain(4)).unwrap();
        assert_eq!(j.ideals.len(), 5);
        let j = order_ideal_lattice(&Poset::new(3, vec![], None).unwrap()).unwrap();
        assert_eq!(j.ideals.len(), 8);
        assert_eq!(j.poset.covers().len(), 12);
        let r = lattice_checks(&j.poset).unwrap();
        assert!(r.is_lattice && r.is_distributive);
    }

    #[test]
    fn ideal_lattice_of_the_diamond_is_distributive() {
        let m3 = Poset::new(
            5,
            vec![(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)],
            None,
        )
        .unwrap();
        let j = order_ideal_lattice(&m3).unwrap();
        // empty, {0}, three sizes-2, three size-3, {0,1,2,3}, everything
        assert_eq!(j.ideals.len(), 10);
        let r = lattice_checks(&j.poset).unwrap();
        assert!(r.is_distributive);
    }

    #[test]
    fn leq_follows_covers() {
        let c = chain(3);
        assert!(c.leq(0, 2).unwrap());
        assert!(!c.leq(2, 0).unwrap());
    }
}
