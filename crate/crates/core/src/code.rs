//! Bitstrings and binary linear codes.
//!
//! A bitstring `b_1 b_2 ... b_n` keeps `b_i` in bit `i - 1` of a machine
//! word, so the bit index of a coordinate is its color minus one. Text
//! forms always print `b_1` first, and "lexicographic" means comparing the
//! text forms.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gf2::{echelon_of, Gf2Vec};

/// Longest supported bitstring.
pub const MAX_LENGTH: usize = 64;

/// Largest code dimension whose codewords may be listed.
pub const MAX_MATERIALIZED_DIM: usize = 20;

/// Largest dimension for which `classify` scans every codeword pair.
const FULL_PAIR_SCAN_DIM: usize = 12;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Bitstring {
    len: u8,
    bits: u64,
}

impl Bitstring {
    fn mask(len: usize) -> u64 {
        if len == 64 {
            u64::MAX
        } else {
            (1u64 << len) - 1
        }
    }

    /// Builds a bitstring from its packed form (bit `i - 1` holds `b_i`).
    pub fn from_word(len: usize, word: u64) -> Result<Self> {
        if len == 0 || len > MAX_LENGTH {
            return Err(Error::Capacity {
                what: "bitstring length",
                requested: len as u64,
                limit: MAX_LENGTH as u64,
            });
        }
        if word & !Self::mask(len) != 0 {
            return Err(Error::DimensionMismatch {
                expected: len,
                found: 64 - word.leading_zeros() as usize,
            });
        }
        Ok(Bitstring {
            len: len as u8,
            bits: word,
        })
    }

    pub fn zero(len: usize) -> Result<Self> {
        Self::from_word(len, 0)
    }

    pub fn ones(len: usize) -> Result<Self> {
        Self::from_word(len, Self::mask(len.min(64)))
    }

    /// The unit vector `e_color`, colors counted from 1.
    pub fn unit(len: usize, color: usize) -> Result<Self> {
        if color == 0 || color > len {
            return Err(Error::Precondition(format!(
                "color {color} outside 1..={len}"
            )));
        }
        Self::from_word(len, 1 << (color - 1))
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn word(&self) -> u64 {
        self.bits
    }

    /// The bit `b_color`, colors counted from 1.
    pub fn bit(&self, color: usize) -> bool {
        debug_assert!(color >= 1 && color <= self.len());
        (self.bits >> (color - 1)) & 1 == 1
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn complement(&self) -> Bitstring {
        Bitstring {
            len: self.len,
            bits: !self.bits & Self::mask(self.len()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    fn check_len(&self, other: &Bitstring) -> Result<()> {
        if self.len != other.len {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(())
    }

    pub fn xor(&self, other: &Bitstring) -> Result<Bitstring> {
        self.check_len(other)?;
        Ok(Bitstring {
            len: self.len,
            bits: self.bits ^ other.bits,
        })
    }

    /// GF(2) dot product.
    pub fn dot(&self, other: &Bitstring) -> Result<bool> {
        self.check_len(other)?;
        Ok((self.bits & other.bits).count_ones() % 2 == 1)
    }

    /// Key whose numeric order is the lexicographic order of the text form.
    pub fn lex_key(&self) -> u64 {
        self.bits.reverse_bits() >> (64 - self.len())
    }

    /// Drops coordinate `color`, shifting later coordinates down.
    pub fn delete(&self, color: usize) -> Result<Bitstring> {
        if self.len() < 2 {
            return Err(Error::Precondition("cannot delete the only bit".into()));
        }
        let low = self.bits & ((1u64 << (color - 1)) - 1);
        let high = (self.bits >> color) << (color - 1);
        Bitstring::from_word(self.len() - 1, low | high)
    }

    /// Inserts `value` as the new coordinate `color`.
    pub fn insert(&self, color: usize, value: bool) -> Result<Bitstring> {
        let low = self.bits & ((1u64 << (color - 1)) - 1);
        let high = (self.bits >> (color - 1)) << color;
        Bitstring::from_word(self.len() + 1, low | high | ((value as u64) << (color - 1)))
    }

    pub(crate) fn to_gf2(self) -> Gf2Vec {
        Gf2Vec::from_word(self.len(), self.bits)
    }

    pub(crate) fn from_gf2(v: &Gf2Vec) -> Bitstring {
        let mut bits = 0u64;
        for i in v.ones_iter() {
            bits |= 1 << i;
        }
        Bitstring {
            len: v.len() as u8,
            bits,
        }
    }
}

impl Ord for Bitstring {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| self.lex_key().cmp(&other.lex_key()))
    }
}

impl PartialOrd for Bitstring {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Bitstring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in 1..=self.len() {
            f.write_str(if self.bit(c) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Bitstring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bitstring({self})")
    }
}

impl FromStr for Bitstring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut bits = 0u64;
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' if i < 64 => bits |= 1 << i,
                '1' => {}
                other => return Err(Error::Parse(format!("invalid bit character {other:?}"))),
            }
        }
        Bitstring::from_word(s.chars().count(), bits)
    }
}

/// A binary linear code, held as its reduced row-echelon basis.
///
/// The pivot of each basis row is its leftmost one (lowest color), rows are
/// sorted by pivot, and each pivot column is zero in every other row. Two
/// codes are equal exactly when their bases are.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LinearCode {
    n: usize,
    basis: Vec<Bitstring>,
}

/// Classification predicates of a code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct CodeClass {
    pub is_even: bool,
    pub is_doubly_even: bool,
    pub is_dashing_code: bool,
    pub has_weight1: bool,
    pub has_weight2: bool,
}

impl LinearCode {
    pub fn trivial(n: usize) -> Result<Self> {
        Bitstring::zero(n)?;
        Ok(LinearCode {
            n,
            basis: Vec::new(),
        })
    }

    /// The code generated by `generators`, all of length `n`.
    pub fn span(n: usize, generators: &[Bitstring]) -> Result<Self> {
        Bitstring::zero(n)?;
        for g in generators {
            if g.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: g.len(),
                });
            }
        }
        let ech = echelon_of(generators.iter().map(|g| g.to_gf2()).collect());
        let basis = ech.rows.iter().map(Bitstring::from_gf2).collect();
        Ok(LinearCode { n, basis })
    }

    /// Like [`LinearCode::span`], taking the length from the generators.
    pub fn span_of(generators: &[Bitstring]) -> Result<Self> {
        let n = generators
            .first()
            .ok_or_else(|| Error::Precondition("no generators to infer the length from".into()))?
            .len();
        Self::span(n, generators)
    }

    pub fn ambient_length(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Bitstring] {
        &self.basis
    }

    /// Pivot color of each basis row.
    pub fn pivots(&self) -> Vec<usize> {
        self.basis
            .iter()
            .map(|b| b.word().trailing_zeros() as usize + 1)
            .collect()
    }

    /// The codeword `sum of basis[i]` over the set bits `i` of `mask`.
    pub fn combination(&self, mask: u64) -> Bitstring {
        let mut bits = 0u64;
        for (i, b) in self.basis.iter().enumerate() {
            if (mask >> i) & 1 == 1 {
                bits ^= b.word();
            }
        }
        Bitstring {
            len: self.n as u8,
            bits,
        }
    }

    /// All `2^k` codewords, indexed by basis-combination mask.
    pub fn codewords(&self) -> Result<Vec<Bitstring>> {
        if self.dim() > MAX_MATERIALIZED_DIM {
            return Err(Error::Capacity {
                what: "codeword enumeration (code dimension)",
                requested: self.dim() as u64,
                limit: MAX_MATERIALIZED_DIM as u64,
            });
        }
        Ok((0..1u64 << self.dim())
            .map(|m| self.combination(m))
            .collect())
    }

    pub fn contains(&self, v: &Bitstring) -> Result<bool> {
        Ok(self.reduce(v)?.is_zero())
    }

    /// Reduces `v` modulo the code: the lexicographically smallest member
    /// of the coset `v + L`.
    pub fn reduce(&self, v: &Bitstring) -> Result<Bitstring> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: v.len(),
            });
        }
        Ok(Bitstring {
            len: self.n as u8,
            bits: self.reduce_word(v.word()),
        })
    }

    pub(crate) fn reduce_word(&self, mut w: u64) -> u64 {
        for b in &self.basis {
            let pivot = b.word() & b.word().wrapping_neg();
            if w & pivot != 0 {
                w ^= b.word();
            }
        }
        w
    }

    /// Classifies the code by scanning its codewords.
    pub fn classify(&self) -> Result<CodeClass> {
        let words = self.codewords()?;
        let mut class = CodeClass {
            is_even: true,
            is_doubly_even: true,
            is_dashing_code: true,
            has_weight1: false,
            has_weight2: false,
        };
        for w in &words {
            let wt = w.weight();
            class.is_even &= wt % 2 == 0;
            class.is_doubly_even &= wt % 4 == 0;
            class.is_dashing_code &= wt % 4 <= 1;
            class.has_weight1 |= wt == 1;
            class.has_weight2 |= wt == 2;
        }
        if class.is_dashing_code {
            class.is_dashing_code = if self.dim() <= FULL_PAIR_SCAN_DIM {
                all_pairs_commute(&words)
            } else {
                all_pairs_commute(&self.basis)
            };
        }
        Ok(class)
    }
}

/// `(a . b) + wt(a) wt(b) = 0 (mod 2)` for every pair drawn from `words`.
///
/// The form is bilinear (weight parity is additive), so checking a basis
/// is equivalent to checking the whole code.
fn all_pairs_commute(words: &[Bitstring]) -> bool {
    words.iter().enumerate().all(|(i, a)| {
        words[i..].iter().all(|b| {
            let dot = (a.word() & b.word()).count_ones();
            (dot + a.weight() * b.weight()) % 2 == 0
        })
    })
}

/// Every linear code of length `n`, in a deterministic order (by dimension,
/// then pivot set, then free entries).
pub fn all_codes(n: usize) -> Result<Vec<LinearCode>> {
    if n > 8 {
        return Err(Error::Capacity {
            what: "exhaustive code enumeration (length)",
            requested: n as u64,
            limit: 8,
        });
    }
    Bitstring::zero(n)?;
    let mut out = Vec::new();
    for k in 0..=n {
        for pivot_mask in 0u32..(1 << n) {
            if pivot_mask.count_ones() as usize != k {
                continue;
            }
            let pivots: Vec<usize> = (0..n).filter(|&c| (pivot_mask >> c) & 1 == 1).collect();
            // Free slots: for the row with pivot p, every non-pivot column after p.
            let slots: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(r, &p)| {
                    ((p + 1)..n)
                        .filter(move |&c| (pivot_mask >> c) & 1 == 0)
                        .map(move |c| (r, c))
                })
                .collect();
            for fill in 0u64..(1 << slots.len()) {
                let mut rows: Vec<u64> = pivots.iter().map(|&p| 1u64 << p).collect();
                for (s, &(r, c)) in slots.iter().enumerate() {
                    if (fill >> s) & 1 == 1 {
                        rows[r] |= 1 << c;
                    }
                }
                out.push(LinearCode {
                    n,
                    basis: rows
                        .into_iter()
                        .map(|w| Bitstring {
                            len: n as u8,
                            bits: w,
                        })
                        .collect(),
                });
            }
        }
    }
    Ok(out)
}

/// Parses a code file: one generator per line, `#` lines are comments.
pub fn parse_generators(text: &str) -> Result<Vec<Bitstring>> {
    let mut gens: Vec<Bitstring> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let b: Bitstring = line
            .parse()
            .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
        if let Some(first) = gens.first() {
            if first.len() != b.len() {
                return Err(Error::Parse(format!(
                    "line {}: length {} differs from {}",
                    lineno + 1,
                    b.len(),
                    first.len()
                )));
            }
        }
        gens.push(b);
    }
    Ok(gens)
}

/// Renders generators in the code file format.
pub fn format_generators(code: &LinearCode) -> String {
    let mut s = String::new();
    for b in code.basis() {
        s.push_str(&b.to_string());
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(s: &str) -> Bitstring {
        s.parse().unwrap()
    }

    fn code(gens: &[&str]) -> LinearCode {
        let g: Vec<Bitstring> = gens.iter().map(|s| b(s)).collect();
        LinearCode::span_of(&g).unwrap()
    }

    #[test]
    fn weight_examples() {
        assert_eq!(b("00101").weight(), 2);
        assert_eq!(b("0000").weight(), 0);
        assert_eq!(b("1111").weight(), 4);
    }

    #[test]
    fn complement_examples() {
        assert_eq!(b("00101").complement(), b("11010"));
        assert_eq!(b("0000").complement(), b("1111"));
        let x = b("1011001");
        assert_eq!(x.complement().complement(), x);
    }

    #[test]
    fn text_form_puts_color_one_first() {
        let x = b("100");
        assert!(x.bit(1));
        assert_eq!(x.word(), 1);
        assert_eq!(x.to_string(), "100");
        assert!(b("011") < b("100"));
    }

    #[test]
    fn span_examples() {
        let c = code(&["1111"]);
        assert_eq!(c.dim(), 1);
        assert_eq!(c.codewords().unwrap(), vec![b("0000"), b("1111")]);

        let t = LinearCode::span(3, &[]).unwrap();
        assert_eq!(t.dim(), 0);
        assert_eq!(t.codewords().unwrap(), vec![b("000")]);

        let c = code(&["110", "011", "101"]);
        assert_eq!(c.dim(), 2);
        let mut words = c.codewords().unwrap();
        words.sort();
        assert_eq!(words, vec![b("000"), b("011"), b("101"), b("110")]);
        assert_eq!(c.basis(), &[b("101"), b("011")]);
    }

    #[test]
    fn span_rejects_mixed_lengths() {
        let err = LinearCode::span_of(&[b("11"), b("101")]).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
    }

    #[test]
    fn classify_examples() {
        let c = code(&["1111"]).classify().unwrap();
        assert_eq!(
            c,
            CodeClass {
                is_even: true,
                is_doubly_even: true,
                is_dashing_code: true,
                has_weight1: false,
                has_weight2: false
            }
        );

        let c = code(&["10"]).classify().unwrap();
        assert!(!c.is_even);
        assert!(c.is_dashing_code);
        assert!(c.has_weight1);

        let c = LinearCode::trivial(5).unwrap().classify().unwrap();
        assert!(c.is_even && c.is_doubly_even && c.is_dashing_code);
        assert!(!c.has_weight1 && !c.has_weight2);

        assert!(!code(&["11"]).classify().unwrap().is_dashing_code);
    }

    #[test]
    fn reduce_is_lex_min_of_coset() {
        let c = code(&["1100", "0011"]);
        for w in 0..16u64 {
            let v = Bitstring::from_word(4, w).unwrap();
            let min = c
                .codewords()
                .unwrap()
                .iter()
                .map(|x| x.xor(&v).unwrap())
                .min()
                .unwrap();
            assert_eq!(c.reduce(&v).unwrap(), min);
        }
    }

    #[test]
    fn subspace_counts_match_gaussian_binomials() {
        // sum over k of [n choose k]_2
        let expected = [1usize, 2, 5, 16, 67, 374, 2825];
        for (n, &count) in expected.iter().enumerate().skip(1) {
            let codes = all_codes(n).unwrap();
            assert_eq!(codes.len(), count, "n = {n}");
            let set: std::collections::HashSet<_> = codes.iter().cloned().collect();
            assert_eq!(set.len(), count);
        }
    }

    #[test]
    fn codes_are_canonical_and_closed() {
        for c in all_codes(5).unwrap() {
            let words = c.codewords().unwrap();
            assert_eq!(words.len(), 1 << c.dim());
            assert!(words.contains(&Bitstring::zero(5).unwrap()));
            let respan = LinearCode::span(5, &words).unwrap();
            assert_eq!(respan, c);
            for x in &words {
                for y in &words {
                    assert!(c.contains(&x.xor(y).unwrap()).unwrap());
                }
            }
        }
    }

    #[test]
    fn doubly_even_implies_even_and_dashing() {
        for n in 1..=6 {
            for c in all_codes(n).unwrap() {
                let cl = c.classify().unwrap();
                if cl.is_doubly_even {
                    assert!(cl.is_even && cl.is_dashing_code, "{c:?}");
                }
            }
        }
    }

    #[test]
    fn basis_pair_scan_matches_full_scan() {
        for n in 1..=6 {
            for c in all_codes(n).unwrap() {
                let words = c.codewords().unwrap();
                assert_eq!(all_pairs_commute(&words), all_pairs_commute(c.basis()));
            }
        }
    }

    #[test]
    fn parse_code_file() {
        let gens = parse_generators("# K44\n1111\n\n").unwrap();
        assert_eq!(gens, vec![b("1111")]);
        assert!(parse_generators("11\n101\n").is_err());
        assert!(parse_generators("1a1\n").is_err());
    }

    #[test]
    fn insert_and_delete_bits() {
        let x = b("1011");
        assert_eq!(x.delete(2).unwrap(), b("111"));
        assert_eq!(x.delete(2).unwrap().insert(2, false).unwrap(), x);
        assert_eq!(b("00").insert(3, true).unwrap(), b("001"));
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn span_is_idempotent(n in 1usize..10, words in proptest::collection::vec(any::<u64>(), 0..6)) {
            let gens: Vec<Bitstring> = words
                .iter()
                .map(|w| Bitstring::from_word(n, w & ((1u64 << n) - 1)).unwrap())
                .collect();
            let c = LinearCode::span(n, &gens).unwrap();
            let again = LinearCode::span(n, &c.codewords().unwrap()).unwrap();
            prop_assert_eq!(&again, &c);
            prop_assert_eq!(c.codewords().unwrap().len(), 1usize << c.dim());
        }
    }
}
