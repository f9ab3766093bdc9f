//! Signed Clifford monomials `+-clif(b)`, where `clif(b)` multiplies the
//! generators `gamma_i` with `b_i = 1` in increasing order of `i`, and the
//! signed vertex maps a dashing induces on a graph.

use crate::chromo::Prechromotopology;
use crate::code::{Bitstring, LinearCode, MAX_MATERIALIZED_DIM};
use crate::dashing::{validate_dashing, Dashing, Parity};
use crate::error::{Error, Result};

/// Codes up to this dimension get an exhaustive closure check.
pub const EXHAUSTIVE_CLOSURE_DIM: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SignedMonomial {
    pub sign: i8,
    pub support: Bitstring,
}

impl SignedMonomial {
    /// `+clif(b)`.
    pub fn clif(support: Bitstring) -> Self {
        SignedMonomial { sign: 1, support }
    }

    pub fn identity(n: usize) -> Result<Self> {
        Ok(Self::clif(Bitstring::zero(n)?))
    }

    /// The generator `gamma_i`.
    pub fn gamma(n: usize, i: usize) -> Result<Self> {
        Ok(Self::clif(Bitstring::unit(n, i)?))
    }

    pub fn negated(self) -> Self {
        SignedMonomial {
            sign: -self.sign,
            support: self.support,
        }
    }
}

/// Number of transpositions needed to sort `clif(a) clif(b)`.
fn reorder_count(a: u64, b: u64) -> u32 {
    let mut t = 0;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        t += a.checked_shr(j + 1).unwrap_or(0).count_ones();
    }
    t
}

pub fn smul(a: &SignedMonomial, b: &SignedMonomial) -> Result<SignedMonomial> {
    let support = a.support.xor(&b.support)?;
    let flip = if reorder_count(a.support.word(), b.support.word()) % 2 == 1 {
        -1
    } else {
        1
    };
    Ok(SignedMonomial {
        sign: a.sign * b.sign * flip,
        support,
    })
}

/// Whether `clif(a)` and `clif(b)` commute: `a.b + wt(a) wt(b)` is even.
pub fn commutes(a: &Bitstring, b: &Bitstring) -> Result<bool> {
    let dot = a.dot(b)? as u32;
    Ok((dot + a.weight() * b.weight()).is_multiple_of(2))
}

/// Signs `s(v)` on a code making `{s(v) clif(v)}` a subgroup.
#[derive(Clone, Debug)]
pub struct SignFunction {
    code: LinearCode,
    /// Indexed by the mask of basis vectors combined.
    signs: Vec<i8>,
}

impl SignFunction {
    pub fn code(&self) -> &LinearCode {
        &self.code
    }

    /// `s(v)`, or `None` when `v` is not a codeword.
    pub fn sign(&self, v: &Bitstring) -> Option<i8> {
        let mask = self.mask_of(v)?;
        Some(self.signs[mask as usize])
    }

    fn mask_of(&self, v: &Bitstring) -> Option<u64> {
        if !self.code.contains(v).ok()? {
            return None;
        }
        // basis vectors are reduced, so the pivot bits pick the combination
        let mask = self
            .code
            .pivots()
            .iter()
            .enumerate()
            .filter(|&(_, &p)| v.bit(p))
            .fold(0u64, |m, (i, _)| m | (1 << i));
        Some(mask)
    }

    /// The subgroup `{s(v) clif(v)}` in basis-mask order.
    pub fn elements(&self) -> Vec<SignedMonomial> {
        self.signs
            .iter()
            .enumerate()
            .map(|(mask, &sign)| SignedMonomial {
                sign,
                support: self.code.combination(mask as u64),
            })
            .collect()
    }
}

/// Sets `s = +1` on the basis and extends multiplicatively. Returns `None`
/// when the result is not closed under multiplication, which happens exactly
/// for codes that are not dashing codes.
pub fn build_sign_function(code: &LinearCode) -> Result<Option<SignFunction>> {
    let k = code.dim();
    if k > MAX_MATERIALIZED_DIM {
        return Err(Error::Capacity {
            what: "sign function (code dimension)",
            requested: k as u64,
            limit: MAX_MATERIALIZED_DIM as u64,
        });
    }
    let n = code.ambient_length();
    let basis: Vec<SignedMonomial> = code
        .basis()
        .iter()
        .map(|&b| SignedMonomial::clif(b))
        .collect();
    let mut elems = vec![SignedMonomial::identity(n)?; 1 << k];
    for mask in 1..(1usize << k) {
        // factors in increasing basis order: the lower ones, then the top one
        let high = usize::BITS as usize - 1 - mask.leading_zeros() as usize;
        elems[mask] = smul(&elems[mask & !(1 << high)], &basis[high])?;
    }
    let sf = SignFunction {
        code: code.clone(),
        signs: elems.iter().map(|e| e.sign).collect(),
    };
    let closed = if k <= EXHAUSTIVE_CLOSURE_DIM {
        closure_holds(&elems)?
    } else {
        generators_close(&basis)?
    };
    Ok(closed.then_some(sf))
}

fn closure_holds(elems: &[SignedMonomial]) -> Result<bool> {
    for (i, a) in elems.iter().enumerate() {
        for (j, b) in elems.iter().enumerate() {
            if smul(a, b)? != elems[i ^ j] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Generators that pairwise commute and square to `+1` generate a group in
/// which distinct masks have distinct supports, so this suffices.
fn generators_close(basis: &[SignedMonomial]) -> Result<bool> {
    for (i, a) in basis.iter().enumerate() {
        if smul(a, a)?.sign != 1 {
            return Ok(false);
        }
        for b in &basis[i + 1..] {
            if smul(a, b)? != smul(b, a)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// For each color `i`, the map `v -> (sign of the color-i edge at v, q_i(v))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedOperatorSet {
    maps: Vec<Vec<(i8, usize)>>,
}

impl SignedOperatorSet {
    pub fn num_colors(&self) -> usize {
        self.maps.len()
    }

    /// Image of `v` under the signed map of `color`.
    pub fn apply(&self, color: usize, v: usize) -> (i8, usize) {
        self.maps[color - 1][v]
    }

    /// Image of `v` under `color_a` after `color_b`.
    pub fn compose(&self, color_a: usize, color_b: usize, v: usize) -> (i8, usize) {
        let (s1, w) = self.apply(color_b, v);
        let (s2, x) = self.apply(color_a, w);
        (s1 * s2, x)
    }
}

pub fn signed_operators(a: &Prechromotopology, d: &Dashing) -> Result<SignedOperatorSet> {
    if !validate_dashing(a, d, Parity::Odd)? {
        return Err(Error::Precondition("dashing is not odd".into()));
    }
    let maps: Vec<Vec<(i8, usize)>> = (1..=a.n())
        .map(|c| {
            (0..a.num_vertices())
                .map(|v| (d.sign(a.edge_at(c, v)), a.q(c, v)))
                .collect()
        })
        .collect();
    let ops = SignedOperatorSet { maps };
    for i in 1..=a.n() {
        for v in 0..a.num_vertices() {
            if ops.compose(i, i, v) != (1, v) {
                return Err(Error::Consistency(format!(
                    "signed map of color {i} does not square to the identity at vertex {v}"
                )));
            }
            for j in i + 1..=a.n() {
                let (s1, x1) = ops.compose(i, j, v);
                let (s2, x2) = ops.compose(j, i, v);
                if x1 != x2 || s1 != -s2 {
                    return Err(Error::Consistency(format!(
                        "colors {i} and {j} do not anticommute at vertex {v}"
                    )));
                }
            }
        }
    }
    Ok(ops)
}
