//! Representation matrices of an adinkra and the superalgebra check.
//!
//! Basis order is all bosons (the bipartition side of vertex 0) then all
//! fermions, each block in vertex order. Entries carry a sign and a power of
//! the Hamiltonian `H`: along an edge, the lower vertex maps to the upper one
//! with no `H` and the upper maps to the lower with one `H`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::chromo::Prechromotopology;
use crate::dashing::{validate_dashing, Dashing, Parity};
use crate::error::{Error, Result};
use crate::ranking::Ranking;

/// A ranked, odd-dashed prechromotopology.
#[derive(Clone, Debug)]
pub struct Adinkra {
    graph: Prechromotopology,
    ranking: Ranking,
    dashing: Dashing,
}

impl Adinkra {
    pub fn new(graph: Prechromotopology, ranking: Ranking, dashing: Dashing) -> Result<Self> {
        let h: Vec<i64> = ranking.heights().iter().map(|&x| x as i64).collect();
        Ranking::new(&graph, &h)?;
        if !validate_dashing(&graph, &dashing, Parity::Odd)? {
            return Err(Error::Precondition("dashing is not odd".into()));
        }
        Ok(Adinkra {
            graph,
            ranking,
            dashing,
        })
    }

    pub fn graph(&self) -> &Prechromotopology {
        &self.graph
    }

    pub fn ranking(&self) -> &Ranking {
        &self.ranking
    }

    pub fn dashing(&self) -> &Dashing {
        &self.dashing
    }

    /// Same graph and dashing, different ranking.
    pub fn with_ranking(&self, ranking: Ranking) -> Result<Adinkra> {
        Adinkra::new(self.graph.clone(), ranking, self.dashing.clone())
    }

    pub fn with_dashing(&self, dashing: Dashing) -> Result<Adinkra> {
        Adinkra::new(self.graph.clone(), self.ranking.clone(), dashing)
    }
}

/// Vertices in basis order, and the basis position of each vertex.
pub fn basis_order(a: &Prechromotopology) -> Result<(Vec<usize>, Vec<usize>)> {
    let side = a.bipartition().ok_or(Error::NotBipartite)?;
    let order: Vec<usize> = (0..a.num_vertices())
        .filter(|&v| side[v] == 0)
        .chain((0..a.num_vertices()).filter(|&v| side[v] == 1))
        .collect();
    let mut pos = vec![0; order.len()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    Ok((order, pos))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub sign: i8,
    pub hpow: u8,
}

/// Sparse matrix with signed entries tagged by a power of `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMatrix {
    dim: usize,
    bosons: usize,
    entries: BTreeMap<(usize, usize), Entry>,
}

/// On-disk form: `{"dim": d, "entries": [[row, col, sign, hpow], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub dim: usize,
    pub entries: Vec<(usize, usize, i8, u8)>,
}

impl GradedMatrix {
    pub fn new(dim: usize, bosons: usize) -> Self {
        GradedMatrix {
            dim,
            bosons,
            entries: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Size of the boson block.
    pub fn bosons(&self) -> usize {
        self.bosons
    }

    pub fn set(&mut self, row: usize, col: usize, sign: i8, hpow: u8) {
        self.entries.insert((row, col), Entry { sign, hpow });
    }

    pub fn get(&self, row: usize, col: usize) -> Option<Entry> {
        self.entries.get(&(row, col)).copied()
    }

    /// Nonzero entries sorted by (row, col).
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), Entry)> + '_ {
        self.entries.iter().map(|(&k, &e)| (k, e))
    }

    /// Signs only, as a dense matrix.
    pub fn to_dense(&self) -> Vec<Vec<i32>> {
        let mut m = vec![vec![0; self.dim]; self.dim];
        for (&(r, c), e) in &self.entries {
            m[r][c] = e.sign as i32;
        }
        m
    }

    /// Same signs with every `H` power dropped.
    pub fn strip_hpow(&self) -> GradedMatrix {
        let mut out = self.clone();
        for e in out.entries.values_mut() {
            e.hpow = 0;
        }
        out
    }

    pub fn is_signed_permutation(&self) -> bool {
        let mut rows = vec![0; self.dim];
        let mut cols = vec![0; self.dim];
        for &(r, c) in self.entries.keys() {
            rows[r] += 1;
            cols[c] += 1;
        }
        rows.iter().chain(&cols).all(|&x| x == 1)
    }

    /// Whether every entry joins the boson block to the fermion block.
    pub fn is_block_off_diagonal(&self) -> bool {
        self.entries
            .keys()
            .all(|&(r, c)| (r < self.bosons) != (c < self.bosons))
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .map(|(&(r, c), e)| (r, c, e.sign, e.hpow))
                .collect(),
        }
    }

    pub fn from_json(m: &MatrixJson, bosons: usize) -> Result<Self> {
        let mut out = GradedMatrix::new(m.dim, bosons);
        for &(r, c, sign, hpow) in &m.entries {
            if r >= m.dim || c >= m.dim || sign.abs() != 1 || hpow > 1 {
                return Err(Error::Parse(format!(
                    "bad matrix entry [{r}, {c}, {sign}, {hpow}]"
                )));
            }
            out.set(r, c, sign, hpow);
        }
        Ok(out)
    }
}

fn matrices_by_color(a: &Adinkra, graded: bool) -> Result<Vec<GradedMatrix>> {
    let g = &a.graph;
    let (order, pos) = basis_order(g)?;
    let side = g.bipartition().ok_or(Error::NotBipartite)?;
    let bosons = side.iter().filter(|&&s| s == 0).count();
    let mut mats = vec![GradedMatrix::new(order.len(), bosons); g.n()];
    for (i, e) in g.edges().iter().enumerate() {
        if e.is_loop() {
            return Err(Error::Unsupported(
                "loops have no representation matrix".into(),
            ));
        }
        let sign = a.dashing.sign(i);
        let (lo, hi) = if a.ranking.height(e.u) < a.ranking.height(e.v) {
            (e.u, e.v)
        } else {
            (e.v, e.u)
        };
        let m = &mut mats[e.color - 1];
        m.set(pos[hi], pos[lo], sign, 0);
        m.set(pos[lo], pos[hi], sign, u8::from(graded));
    }
    Ok(mats)
}

/// `rho(Q_i)[u][v]` = sign of the color-`i` edge `{u, v}`, for a valise.
pub fn garden_matrices(a: &Adinkra) -> Result<Vec<GradedMatrix>> {
    if !a.ranking.is_valise() {
        return Err(Error::Precondition("ranking is not a valise".into()));
    }
    matrices_by_color(a, false)
}

/// Matrices with the `H` powers dictated by the ranking.
pub fn graded_matrices(a: &Adinkra) -> Result<Vec<GradedMatrix>> {
    matrices_by_color(a, true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgebraMode {
    /// `{Q_I, Q_J} = 2 delta_IJ H`, with `H` symbolic.
    Graded,
    /// `{Q_I, Q_J} = 2 delta_IJ`, `H` powers ignored.
    Clifford,
}

/// An entry of `{Q_I, Q_J}` that differs from the required value.
/// Polynomials are coefficient lists in `H`, lowest power first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraFailure {
    pub i: usize,
    pub j: usize,
    pub row: usize,
    pub col: usize,
    pub found: Vec<i64>,
    pub expected: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperalgebraReport {
    pub relations_hold: bool,
    pub failures: Vec<AlgebraFailure>,
}

type Poly = [i64; 3];

fn product_into(
    acc: &mut BTreeMap<(usize, usize), Poly>,
    a: &GradedMatrix,
    b: &GradedMatrix,
    mode: AlgebraMode,
) {
    let mut rows_of_b: BTreeMap<usize, Vec<(usize, Entry)>> = BTreeMap::new();
    for (&(r, c), &e) in &b.entries {
        rows_of_b.entry(r).or_default().push((c, e));
    }
    for (&(r, k), &ea) in &a.entries {
        for &(c, eb) in rows_of_b.get(&k).into_iter().flatten() {
            let p = match mode {
                AlgebraMode::Graded => (ea.hpow + eb.hpow) as usize,
                AlgebraMode::Clifford => 0,
            };
            acc.entry((r, c)).or_insert([0; 3])[p] += (ea.sign * eb.sign) as i64;
        }
    }
}

/// Checks every anticommutator `{Q_I, Q_J}` entry by entry.
pub fn verify_algebra(mats: &[GradedMatrix], mode: AlgebraMode) -> Result<SuperalgebraReport> {
    let dim = mats.first().map_or(0, |m| m.dim);
    if let Some(m) = mats.iter().find(|m| m.dim != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: m.dim,
        });
    }
    let diag: Poly = match mode {
        AlgebraMode::Graded => [0, 2, 0],
        AlgebraMode::Clifford => [2, 0, 0],
    };
    let mut failures = Vec::new();
    for i in 0..mats.len() {
        for j in i..mats.len() {
            let mut acc = BTreeMap::new();
            product_into(&mut acc, &mats[i], &mats[j], mode);
            product_into(&mut acc, &mats[j], &mats[i], mode);
            if i == j {
                for d in 0..dim {
                    acc.entry((d, d)).or_insert([0; 3]);
                }
            }
            for ((row, col), found) in acc {
                let expected = if i == j && row == col { diag } else { [0; 3] };
                if found != expected {
                    failures.push(AlgebraFailure {
                        i: i + 1,
                        j: j + 1,
                        row,
                        col,
                        found: found.to_vec(),
                        expected: expected.to_vec(),
                    });
                }
            }
        }
    }
    Ok(SuperalgebraReport {
        relations_hold: failures.is_empty(),
        failures,
    })
}

/// Trace of `rho(Q_1) ... rho(Q_N)` weighted `+1` on bosons and `-1` on
/// fermions, with `H` powers ignored.
pub fn supertrace(mats: &[GradedMatrix]) -> Result<i64> {
    let Some(first) = mats.first() else {
        return Ok(0);
    };
    let (dim, bosons) = (first.dim, first.bosons);
    if let Some(m) = mats.iter().find(|m| m.dim != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: m.dim,
        });
    }
    // row vectors e_r * product, one per basis vector
    let mut total = 0;
    for r in 0..dim {
        let mut vec: BTreeMap<usize, i64> = BTreeMap::from([(r, 1)]);
        for m in mats {
            let mut next = BTreeMap::new();
            for (&(row, col), e) in &m.entries {
                if let Some(&x) = vec.get(&row) {
                    *next.entry(col).or_insert(0) += x * e.sign as i64;
                }
            }
            vec = next;
        }
        let weight = if r < bosons { 1 } else { -1 };
        total += weight * vec.get(&r).copied().unwrap_or(0);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chromo::valises;
    use crate::chromo::{build_quotient, cube};
    use crate::code::all_codes;
    use crate::dashing::{find_odd_dashing, tests::reference_cube_dashing, vertex_switch};
    use crate::ranking::{enumerate_rankings_oracle, hook, HookMode};

    fn vtx(a: &Prechromotopology, s: &str) -> usize {
        a.vertex_of(&s.parse().unwrap()).unwrap()
    }

    /// The two-cube adinkra with its single dashed edge, color 2 between
    /// 10 and 11.
    fn square_adinkra() -> Adinkra {
        let a = cube(2).unwrap();
        let (x, y) = (vtx(&a, "10"), vtx(&a, "11"));
        let e = a
            .edges()
            .iter()
            .position(|e| e.color == 2 && (e.u, e.v) == (x.min(y), x.max(y)))
            .unwrap();
        let d = Dashing::with_dashed(a.edges().len(), &[e]);
        let [valise, _] = valises(&a).unwrap();
        Adinkra::new(a, valise, d).unwrap()
    }

    fn dense_mul(a: &[Vec<i32>], b: &[Vec<i32>]) -> Vec<Vec<i32>> {
        let n = a.len();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum())
                    .collect()
            })
            .collect()
    }

    fn dense_supertrace(mats: &[GradedMatrix]) -> i64 {
        let n = mats[0].dim();
        let mut p: Vec<Vec<i32>> = (0..n)
            .map(|i| (0..n).map(|j| (i == j) as i32).collect())
            .collect();
        for m in mats {
            p = dense_mul(&p, &m.to_dense());
        }
        (0..n)
            .map(|i| if i < mats[0].bosons() { p[i][i] } else { -p[i][i] } as i64)
            .sum()
    }

    #[test]
    fn basis_order_of_the_square() {
        let a = cube(2).unwrap();
        let (order, _) = basis_order(&a).unwrap();
        let labels: Vec<String> = order.iter().map(|&v| a.label(v).to_string()).collect();
        assert_eq!(labels, vec!["00", "11", "10", "01"]);
    }

    #[test]
    fn garden_matrices_of_the_square() {
        let mats = garden_matrices(&square_adinkra()).unwrap();
        assert_eq!(
            mats[0].to_dense(),
            vec![
                vec![0, 0, 1, 0],
                vec![0, 0, 0, 1],
                vec![1, 0, 0, 0],
                vec![0, 1, 0, 0]
            ]
        );
        assert_eq!(
            mats[1].to_dense(),
            vec![
                vec![0, 0, 0, 1],
                vec![0, 0, -1, 0],
                vec![0, -1, 0, 0],
                vec![1, 0, 0, 0]
            ]
        );
        for m in &mats {
            assert!(m.is_signed_permutation());
            assert!(m.is_block_off_diagonal());
        }
        assert!(
            verify_algebra(&mats, AlgebraMode::Clifford)
                .unwrap()
                .relations_hold
        );
        assert_eq!(supertrace(&mats).unwrap(), dense_supertrace(&mats));
        assert_eq!(supertrace(&mats).unwrap(), 0);
    }

    #[test]
    fn mutated_sign_is_located() {
        let mut mats = garden_matrices(&square_adinkra()).unwrap();
        mats[1].set(1, 2, 1, 0);
        let report = verify_algebra(&mats, AlgebraMode::Clifford).unwrap();
        assert!(!report.relations_hold);
        assert!(report.failures.iter().any(|f| (f.i, f.j) == (1, 2)));
    }

    #[test]
    fn single_involution() {
        let a = cube(1).unwrap();
        let d = Dashing::solid(1);
        let [valise, _] = valises(&a).unwrap();
        let ad = Adinkra::new(a, valise, d).unwrap();
        let mats = garden_matrices(&ad).unwrap();
        assert_eq!(mats[0].to_dense(), vec![vec![0, 1], vec![1, 0]]);
        assert!(
            verify_algebra(&mats, AlgebraMode::Clifford)
                .unwrap()
                .relations_hold
        );
        assert_eq!(supertrace(&mats).unwrap(), 0);
    }

    #[test]
    fn valise_hpow_pattern() {
        let ad = square_adinkra();
        let mats = graded_matrices(&ad).unwrap();
        let garden = garden_matrices(&ad).unwrap();
        for (m, g) in mats.iter().zip(&garden) {
            for ((r, c), e) in m.entries() {
                // bosons sit at the bottom, so fermion rows carry no H
                assert_eq!(e.hpow, u8::from(r < m.bosons()), "({r}, {c})");
            }
            assert_eq!(&m.strip_hpow(), g);
        }
        assert!(
            verify_algebra(&mats, AlgebraMode::Graded)
                .unwrap()
                .relations_hold
        );
    }

    #[test]
    fn reference_cube_adinkra_satisfies_the_algebra() {
        let a = cube(3).unwrap();
        let d = reference_cube_dashing(&a);
        let r = hook(&a, vtx(&a, "111"), HookMode::Hooked).unwrap();
        let ad = Adinkra::new(a, r, d).unwrap();
        let mats = graded_matrices(&ad).unwrap();
        assert!(
            verify_algebra(&mats, AlgebraMode::Graded)
                .unwrap()
                .relations_hold
        );
        for m in &mats {
            assert_eq!(m.entries().filter(|(_, e)| e.hpow == 1).count(), 4);
        }
        assert!(
            verify_algebra(
                &mats.iter().map(|m| m.strip_hpow()).collect::<Vec<_>>(),
                AlgebraMode::Clifford
            )
            .unwrap()
            .relations_hold
        );
    }

    #[test]
    fn every_small_adinkra_satisfies_the_algebra() {
        for n in 1..=4 {
            for l in all_codes(n).unwrap() {
                let a = build_quotient(n, &l).unwrap();
                let Some(d) = find_odd_dashing(&a).unwrap() else {
                    continue;
                };
                if a.bipartition().is_none() {
                    continue;
                }
                let rankings = if a.num_vertices() <= 8 {
                    enumerate_rankings_oracle(&a).unwrap()
                } else {
                    valises(&a).unwrap().to_vec()
                };
                for r in rankings {
                    let ad = Adinkra::new(a.clone(), r, d.clone()).unwrap();
                    let mats = graded_matrices(&ad).unwrap();
                    assert!(
                        verify_algebra(&mats, AlgebraMode::Graded)
                            .unwrap()
                            .relations_hold
                    );
                }
            }
        }
    }

    #[test]
    fn supertrace_needs_the_all_ones_word() {
        let l = crate::code::LinearCode::span_of(&["1111".parse().unwrap()]).unwrap();
        let a = build_quotient(4, &l).unwrap();
        let d = find_odd_dashing(&a).unwrap().unwrap();
        let [valise, _] = valises(&a).unwrap();
        let ad = Adinkra::new(a, valise, d).unwrap();
        let mats = garden_matrices(&ad).unwrap();
        let st = supertrace(&mats).unwrap();
        assert_eq!(st, dense_supertrace(&mats));
        assert_ne!(st, 0);
        let cube4 = cube(4).unwrap();
        let d = find_odd_dashing(&cube4).unwrap().unwrap();
        let [valise, _] = valises(&cube4).unwrap();
        let ad = Adinkra::new(cube4, valise, d).unwrap();
        assert_eq!(supertrace(&garden_matrices(&ad).unwrap()).unwrap(), 0);
    }

    #[test]
    fn switching_preserves_the_algebra_and_supertrace() {
        let l = crate::code::LinearCode::span_of(&["1111".parse().unwrap()]).unwrap();
        let a = build_quotient(4, &l).unwrap();
        let d = find_odd_dashing(&a).unwrap().unwrap();
        let [valise, _] = valises(&a).unwrap();
        let base = Adinkra::new(a.clone(), valise, d.clone()).unwrap();
        let st = supertrace(&garden_matrices(&base).unwrap()).unwrap();
        let mut cur = d;
        for v in [0, 3, 5, 3, 7] {
            cur = vertex_switch(&a, &cur, v).unwrap();
            let ad = base.with_dashing(cur.clone()).unwrap();
            let mats = garden_matrices(&ad).unwrap();
            assert!(
                verify_algebra(&mats, AlgebraMode::Clifford)
                    .unwrap()
                    .relations_hold
            );
            assert_eq!(supertrace(&mats).unwrap(), st);
        }
    }

    #[test]
    fn garden_blocks_are_transposes() {
        let l = crate::code::LinearCode::span_of(&["1111".parse().unwrap()]).unwrap();
        let a = build_quotient(4, &l).unwrap();
        let d = find_odd_dashing(&a).unwrap().unwrap();
        for valise in valises(&a).unwrap() {
            let ad = Adinkra::new(a.clone(), valise, d.clone()).unwrap();
            for m in garden_matrices(&ad).unwrap() {
                assert!(m.is_signed_permutation() && m.is_block_off_diagonal());
                for ((r, c), e) in m.entries() {
                    assert_eq!(m.get(c, r), Some(e));
                }
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let mats = garden_matrices(&square_adinkra()).unwrap();
        let j = mats[1].to_json();
        let text = serde_json::to_string(&j).unwrap();
        assert_eq!(
            text,
            r#"{"dim":4,"entries":[[0,3,1,0],[1,2,-1,0],[2,1,-1,0],[3,0,1,0]]}"#
        );
        let back: MatrixJson = serde_json::from_str(&text).unwrap();
        assert_eq!(GradedMatrix::from_json(&back, 2).unwrap(), mats[1]);
    }

    #[test]
    fn non_valise_is_rejected_for_garden_matrices() {
        let a = cube(2).unwrap();
        let d = find_odd_dashing(&a).unwrap().unwrap();
        let r = hook(&a, 0, HookMode::Hooked).unwrap();
        let ad = Adinkra::new(a, r, d).unwrap();
        assert!(garden_matrices(&ad).is_err());
    }
}
