//! Dense bit-packed linear algebra over GF(2).
//!
//! Vectors are packed 64 coordinates per word, coordinate `i` at bit
//! `i % 64` of word `i / 64`. Matrices are row lists; all elimination is
//! plain Gauss-Jordan on rows, which is plenty at the sizes this crate
//! deals with (a few thousand columns at most).

use std::fmt;

const WORD: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A vector in GF(2)^len.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf2Vec {
    len: usize,
    words: Vec<u64>,
}

impl Gf2Vec {
    pub fn zeros(len: usize) -> Self {
        Gf2Vec {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for i in 0..len {
            v.set(i, true);
        }
        v
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut v = Self::zeros(bits.len());
        for (i, b) in bits.into_iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    /// Vector with ones exactly at `support` (repeated indices cancel).
    pub fn from_support(len: usize, support: &[usize]) -> Self {
        let mut v = Self::zeros(len);
        for &i in support {
            v.flip(i);
        }
        v
    }

    /// Low `len` bits of `word` (len <= 64).
    pub fn from_word(len: usize, word: u64) -> Self {
        assert!(len <= WORD);
        let mut v = Self::zeros(len);
        if len > 0 {
            let mask = if len == WORD {
                u64::MAX
            } else {
                (1u64 << len) - 1
            };
            v.words[0] = word & mask;
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn xor_assign(&mut self, other: &Gf2Vec) {
        assert_eq!(self.len, other.len, "GF(2) vector length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn xor(&self, other: &Gf2Vec) -> Gf2Vec {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Componentwise OR, for use as a bit set.
    pub fn or_assign(&mut self, other: &Gf2Vec) {
        assert_eq!(self.len, other.len, "GF(2) vector length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    /// Componentwise AND, for use as a bit set.
    pub fn and(&self, other: &Gf2Vec) -> Gf2Vec {
        assert_eq!(self.len, other.len, "GF(2) vector length mismatch");
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & b)
            .collect();
        Gf2Vec {
            len: self.len,
            words,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &Gf2Vec) -> bool {
        assert_eq!(self.len, other.len, "GF(2) vector length mismatch");
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones % 2 == 1
    }

    /// Index of the lowest set coordinate.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    pub fn ones_iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * WORD + t)
                }
            })
        })
    }

    pub fn to_bits(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }

    /// Lexicographic comparison with coordinate 0 most significant.
    pub fn lex_cmp(&self, other: &Gf2Vec) -> std::cmp::Ordering {
        for i in 0..self.len.min(other.len) {
            match (self.get(i), other.get(i)) {
                (false, true) => return std::cmp::Ordering::Less,
                (true, false) => return std::cmp::Ordering::Greater,
                _ => {}
            }
        }
        self.len.cmp(&other.len)
    }
}

impl fmt::Debug for Gf2Vec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// A GF(2) matrix stored by rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2Matrix {
    cols: usize,
    rows: Vec<Gf2Vec>,
}

/// Result of a Gauss-Jordan reduction: the nonzero rows in reduced row
/// echelon form and the pivot column of each.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rows: Vec<Gf2Vec>,
    pub pivots: Vec<usize>,
}

impl Gf2Matrix {
    pub fn new(cols: usize) -> Self {
        Gf2Matrix {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<Gf2Vec>) -> Self {
        for r in &rows {
            assert_eq!(r.len(), cols, "row length does not match column count");
        }
        Gf2Matrix { cols, rows }
    }

    pub fn push_row(&mut self, row: Gf2Vec) {
        assert_eq!(
            row.len(),
            self.cols,
            "row length does not match column count"
        );
        self.rows.push(row);
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Gf2Vec] {
        &self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    /// Matrix-vector product `self * x`.
    pub fn mul_vec(&self, x: &Gf2Vec) -> Gf2Vec {
        Gf2Vec::from_bits(self.rows.iter().map(|r| r.dot(x)))
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Gf2Matrix) -> Gf2Matrix {
        assert_eq!(self.cols, other.num_rows(), "matrix dimension mismatch");
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc = Gf2Vec::zeros(other.cols);
                for k in r.ones_iter() {
                    acc.xor_assign(&other.rows[k]);
                }
                acc
            })
            .collect();
        Gf2Matrix {
            cols: other.cols,
            rows,
        }
    }

    pub fn transpose(&self) -> Gf2Matrix {
        let mut out: Vec<Gf2Vec> = (0..self.cols)
            .map(|_| Gf2Vec::zeros(self.rows.len()))
            .collect();
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.ones_iter() {
                out[c].set(r, true);
            }
        }
        Gf2Matrix {
            cols: self.rows.len(),
            rows: out,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Gf2Vec::is_zero)
    }

    pub fn echelon(&self) -> Echelon {
        echelon_of(self.rows.clone())
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of `{ x : self * x = 0 }`.
    pub fn nullspace(&self) -> Vec<Gf2Vec> {
        let ech = self.echelon();
        let mut is_pivot = vec![false; self.cols];
        for &p in &ech.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut x = Gf2Vec::zeros(self.cols);
                x.set(free, true);
                for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
                    if row.get(free) {
                        x.set(p, true);
                    }
                }
                x
            })
            .collect()
    }

    /// One solution of `self * x = rhs`, with free variables set to zero.
    pub fn solve(&self, rhs: &Gf2Vec) -> Option<Gf2Vec> {
        assert_eq!(
            rhs.len(),
            self.rows.len(),
            "right-hand side length mismatch"
        );
        // Augment each row with its right-hand side bit in the last column.
        let aug: Vec<Gf2Vec> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut v = Gf2Vec::zeros(self.cols + 1);
                for c in r.ones_iter() {
                    v.set(c, true);
                }
                v.set(self.cols, rhs.get(i));
                v
            })
            .collect();
        let ech = echelon_of(aug);
        if ech.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = Gf2Vec::zeros(self.cols);
        for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
            if row.get(self.cols) {
                x.set(p, true);
            }
        }
        Some(x)
    }
}

/// Gauss-Jordan elimination with the pivot of each row at its lowest
/// nonzero column. Returned rows are sorted by pivot.
pub fn echelon_of(mut rows: Vec<Gf2Vec>) -> Echelon {
    let cols = rows.first().map_or(0, Gf2Vec::len);
    let mut pivots = Vec::new();
    let mut top = 0;
    for c in 0..cols {
        let Some(found) = (top..rows.len()).find(|&r| rows[r].get(c)) else {
            continue;
        };
        rows.swap(top, found);
        let pivot_row = rows[top].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != top && row.get(c) {
                row.xor_assign(&pivot_row);
            }
        }
        pivots.push(c);
        top += 1;
        if top == rows.len() {
            break;
        }
    }
    rows.truncate(top);
    Echelon { rows, pivots }
}

impl Echelon {
    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    /// Reduce `v` modulo the row space. The result has zeros at every pivot
    /// column, which makes it the lexicographically smallest member of the
    /// coset `v + rowspace` (coordinate 0 most significant).
    pub fn reduce(&self, v: &Gf2Vec) -> Gf2Vec {
        let mut out = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if out.get(p) {
                out.xor_assign(row);
            }
        }
        out
    }

    pub fn contains(&self, v: &Gf2Vec) -> bool {
        self.reduce(v).is_zero()
    }
}
