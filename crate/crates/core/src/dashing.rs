//! Odd and even dashings as GF(2) linear systems, with switching classes
//! and the mod-2 homology of the square complex.
//!
//! The parity constraints come from the closed walks
//! `v -> q_i v -> q_j q_i v -> q_i q_j q_i v -> v`, one per orbit of each
//! color pair. An edge walked twice cancels, so loops and degenerate
//! squares need no special treatment.

use std::collections::HashSet;

use num_bigint::BigUint;

use crate::chromo::Prechromotopology;
use crate::error::{Error, Result};
use crate::gf2::{echelon_of, Gf2Matrix, Gf2Vec};

/// A dashing: bit `e` is set when edge `e` is dashed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dashing {
    values: Gf2Vec,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Odd,
    Even,
}

impl Dashing {
    /// The all-solid dashing.
    pub fn solid(num_edges: usize) -> Self {
        Dashing {
            values: Gf2Vec::zeros(num_edges),
        }
    }

    pub fn from_vec(values: Gf2Vec) -> Self {
        Dashing { values }
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        Dashing {
            values: Gf2Vec::from_bits(bits),
        }
    }

    /// Dashing with exactly the listed edges dashed.
    pub fn with_dashed(num_edges: usize, dashed: &[usize]) -> Self {
        Dashing {
            values: Gf2Vec::from_support(num_edges, dashed),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_dashed(&self, edge: usize) -> bool {
        self.values.get(edge)
    }

    /// `-1` for a dashed edge, `+1` for a solid one.
    pub fn sign(&self, edge: usize) -> i8 {
        if self.is_dashed(edge) {
            -1
        } else {
            1
        }
    }

    pub fn as_vec(&self) -> &Gf2Vec {
        &self.values
    }

    pub fn to_bits(&self) -> Vec<bool> {
        self.values.to_bits()
    }

    pub fn add(&self, other: &Dashing) -> Dashing {
        Dashing {
            values: self.values.xor(&other.values),
        }
    }
}

fn check_len(a: &Prechromotopology, d: &Dashing) -> Result<()> {
    if d.len() != a.edges().len() {
        return Err(Error::DimensionMismatch {
            expected: a.edges().len(),
            found: d.len(),
        });
    }
    Ok(())
}

/// Walk rows for every color pair, deduplicated, in first-seen order.
/// Double edges produce all-zero rows.
fn walk_rows(a: &Prechromotopology) -> Vec<Gf2Vec> {
    let ne = a.edges().len();
    let mut seen = HashSet::new();
    let mut rows = Vec::new();
    for i in 1..=a.n() {
        for j in (i + 1)..=a.n() {
            for v in 0..a.num_vertices() {
                let row = Gf2Vec::from_support(
                    ne,
                    &[
                        a.edge_at(i, v),
                        a.edge_at(j, a.q(i, v)),
                        a.edge_at(i, a.q(j, v)),
                        a.edge_at(j, v),
                    ],
                );
                if seen.insert(row.clone()) {
                    rows.push(row);
                }
            }
        }
    }
    rows
}

/// Parity constraint matrix: rows are 2-colored squares (possibly
/// degenerate), columns are edges.
pub fn constraint_system(a: &Prechromotopology) -> Result<Gf2Matrix> {
    if a.has_double_edge() {
        return Err(Error::NoOddDashing(
            "a double edge closes a degenerate square with an even number of dashes".into(),
        ));
    }
    Ok(Gf2Matrix::from_rows(a.edges().len(), walk_rows(a)))
}

/// Even dashings (a subspace) and one odd dashing (a coset), when present.
#[derive(Clone, Debug)]
pub struct DashingSpace {
    pub constraint_matrix: Gf2Matrix,
    pub even_basis: Vec<Gf2Vec>,
    pub odd_particular: Option<Dashing>,
}

impl DashingSpace {
    pub fn even_dim(&self) -> usize {
        self.even_basis.len()
    }

    /// Number of even dashings, which is also the number of odd ones when
    /// any odd dashing exists.
    pub fn even_count(&self) -> BigUint {
        BigUint::from(1u8) << self.even_dim()
    }

    pub fn odd_count(&self) -> BigUint {
        if self.odd_particular.is_some() {
            self.even_count()
        } else {
            BigUint::from(0u8)
        }
    }
}

/// Solves the parity system of `a`.
pub fn even_space(a: &Prechromotopology) -> Result<DashingSpace> {
    let m = constraint_system(a)?;
    let even_basis = m.nullspace();
    let odd_particular = m.solve(&Gf2Vec::ones(m.num_rows())).map(Dashing::from_vec);
    Ok(DashingSpace {
        constraint_matrix: m,
        even_basis,
        odd_particular,
    })
}

pub(crate) fn find_odd_dashing_unchecked(a: &Prechromotopology) -> Result<Option<Dashing>> {
    if a.has_double_edge() {
        return Ok(None);
    }
    let m = constraint_system(a)?;
    Ok(m.solve(&Gf2Vec::ones(m.num_rows())).map(Dashing::from_vec))
}

/// Some odd dashing of `a`, or `None` when there is none. The answer is
/// cross-checked against the dashing-code test on `a`'s code.
pub fn find_odd_dashing(a: &Prechromotopology) -> Result<Option<Dashing>> {
    let found = find_odd_dashing_unchecked(a)?;
    let dashing_code = a.code().classify()?.is_dashing_code;
    if found.is_some() != dashing_code {
        return Err(Error::Consistency(format!(
            "odd dashing {} but dashing-code test says {}",
            if found.is_some() {
                "found"
            } else {
                "not found"
            },
            dashing_code
        )));
    }
    Ok(found)
}

/// True when every 2-colored square of `a` carries the requested parity.
pub fn validate_dashing(a: &Prechromotopology, d: &Dashing, parity: Parity) -> Result<bool> {
    check_len(a, d)?;
    let want = parity == Parity::Odd;
    Ok(walk_rows(a).iter().all(|row| row.dot(d.as_vec()) == want))
}

/// `2^(2^(n-k) + k - 1)`, the number of odd (and of even) dashings of an
/// adinkraizable `(n, k)` chromotopology.
pub fn count_dashings(n: usize, k: usize) -> BigUint {
    assert!(k <= n, "code dimension exceeds length");
    let exponent = (BigUint::from(1u8) << (n - k)) + BigUint::from(k) - BigUint::from(1u8);
    let exponent: usize = exponent
        .try_into()
        .expect("dashing count exponent does not fit in usize");
    BigUint::from(1u8) << exponent
}

fn switch_vector(a: &Prechromotopology, v: usize) -> Gf2Vec {
    let support: Vec<usize> = (1..=a.n())
        .filter(|&c| a.q(c, v) != v)
        .map(|c| a.edge_at(c, v))
        .collect();
    Gf2Vec::from_support(a.edges().len(), &support)
}

/// Flips every non-loop edge at `v`.
pub fn vertex_switch(a: &Prechromotopology, d: &Dashing, v: usize) -> Result<Dashing> {
    check_len(a, d)?;
    if v >= a.num_vertices() {
        return Err(Error::Precondition(format!("no vertex {v}")));
    }
    Ok(Dashing {
        values: d.values.xor(&switch_vector(a, v)),
    })
}

fn require_simple(a: &Prechromotopology, what: &str) -> Result<()> {
    if !a.is_simple() {
        return Err(Error::Unsupported(format!("{what} needs a simple graph")));
    }
    Ok(())
}

/// Echelon basis of the span of all vertex-switch vectors.
pub fn switching_subspace(a: &Prechromotopology) -> Result<Vec<Gf2Vec>> {
    require_simple(a, "switching subspace")?;
    let rows = (0..a.num_vertices()).map(|v| switch_vector(a, v)).collect();
    Ok(echelon_of(rows).rows)
}

/// Largest edge count for which orbit representatives are produced.
pub const MAX_REPRESENTATIVE_EDGES: usize = 64;
/// Largest code dimension for which orbit representatives are produced.
pub const MAX_REPRESENTATIVE_DIM: usize = 10;

#[derive(Clone, Debug)]
pub struct LscReport {
    pub count: BigUint,
    pub even_dim: usize,
    pub switching_dim: usize,
    /// One odd dashing per labeled switching class: the lexicographically
    /// smallest vector of the class (edge 0 most significant), sorted.
    pub representatives: Option<Vec<Dashing>>,
}

/// Counts the labeled switching classes of odd dashings of `a`.
pub fn lsc_count(a: &Prechromotopology) -> Result<LscReport> {
    require_simple(a, "switching classes")?;
    let space = even_space(a)?;
    let Some(particular) = space.odd_particular.clone() else {
        return Err(Error::Precondition("graph has no odd dashing".into()));
    };
    let switching = echelon_of(switching_subspace(a)?);
    let even_dim = space.even_dim();
    let switching_dim = switching.dim();
    if even_dim < switching_dim {
        return Err(Error::Consistency(
            "switching subspace larger than even dashings".into(),
        ));
    }
    let count = BigUint::from(1u8) << (even_dim - switching_dim);

    let representatives = if a.edges().len() <= MAX_REPRESENTATIVE_EDGES
        && even_dim - switching_dim <= MAX_REPRESENTATIVE_DIM
    {
        // Reduction modulo the switching space is linear and lands on the
        // lex-smallest member of each class.
        let complement = echelon_of(
            space
                .even_basis
                .iter()
                .map(|b| switching.reduce(b))
                .collect(),
        );
        if complement.dim() != even_dim - switching_dim {
            return Err(Error::Consistency(
                "switching space not inside even space".into(),
            ));
        }
        let base = switching.reduce(particular.as_vec());
        let mut reps: Vec<Dashing> = (0..1u64 << complement.dim())
            .map(|mask| {
                let mut v = base.clone();
                for (i, row) in complement.rows.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        v.xor_assign(row);
                    }
                }
                Dashing::from_vec(switching.reduce(&v))
            })
            .collect();
        reps.sort_by(|x, y| x.as_vec().lex_cmp(y.as_vec()));
        Some(reps)
    } else {
        None
    };

    Ok(LscReport {
        count,
        even_dim,
        switching_dim,
        representatives,
    })
}

/// The mod-2 cellular chain complex `C_2 -> C_1 -> C_0` built from
/// cells of dimension at most two (squares use two colors).
#[derive(Clone, Debug)]
pub struct ChainComplex {
    /// `(|C_0|, |C_1|, |C_2|)`.
    pub dims: (usize, usize, usize),
    /// `|C_0| x |C_1|` boundary matrix.
    pub d1: Gf2Matrix,
    /// `|C_1| x |C_2|` boundary matrix.
    pub d2: Gf2Matrix,
    /// `(dim H_0, dim H_1)`.
    pub betti: (usize, usize),
}

pub fn homology(a: &Prechromotopology) -> Result<ChainComplex> {
    require_simple(a, "homology")?;
    let nv = a.num_vertices();
    let ne = a.edges().len();
    let squares = walk_rows(a);
    let nf = squares.len();

    let mut d1_rows: Vec<Gf2Vec> = (0..nv).map(|_| Gf2Vec::zeros(ne)).collect();
    for (e, edge) in a.edges().iter().enumerate() {
        d1_rows[edge.u].set(e, true);
        d1_rows[edge.v].set(e, true);
    }
    let d1 = Gf2Matrix::from_rows(ne, d1_rows);
    let mut d2_rows: Vec<Gf2Vec> = (0..ne).map(|_| Gf2Vec::zeros(nf)).collect();
    for (f, square) in squares.iter().enumerate() {
        for e in square.ones_iter() {
            d2_rows[e].set(f, true);
        }
    }
    let d2 = Gf2Matrix::from_rows(nf, d2_rows);

    let rank1 = d1.rank();
    let rank2 = d2.rank();
    Ok(ChainComplex {
        dims: (nv, ne, nf),
        betti: (nv - rank1, ne - rank1 - rank2),
        d1,
        d2,
    })
}
