//! Dense bit-packed linear algebra over GF(2).
//!
//! Rows are stored as runs of `u64` words, padded to a word boundary with the
//! padding bits kept at zero. Elimination works on a private copy; the row
//! updates for one pivot may run on the rayon pool, which cannot change the
//! result since every update is an independent XOR.

use std::fmt::Write as _;
use std::io::{self, BufRead, Write};
use std::ops::{Add, AddAssign};

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::signvec::PointCode;

const WORD: usize = 64;

/// Below this many words in the rows under a pivot, updates stay sequential.
const PAR_WORDS: usize = 1 << 14;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

/// A packed vector over GF(2).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_ones(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in ones {
            v.toggle(i);
        }
        v
    }

    pub fn random<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Self {
        let mut v = BitVec {
            len,
            words: (0..words_for(len)).map(|_| rng.gen()).collect(),
        };
        v.clear_padding();
        v
    }

    fn clear_padding(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        let bit = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= bit;
        } else {
            self.words[i / WORD] &= !bit;
        }
    }

    #[inline]
    pub fn toggle(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let tz = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * WORD + tz)
            })
        })
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &BitVec) -> bool {
        assert_eq!(self.len, other.len, "length mismatch");
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }
}

/// Dense row-major matrix over GF(2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        BitMatrix {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                if f(r, c) {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    pub fn from_rows(cols: usize, rows: &[BitVec]) -> Result<Self> {
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            m.row_mut(r).copy_from_slice(row.words());
        }
        Ok(m)
    }

    /// Builds the matrix whose column `j` is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[BitVec]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    found: col.len(),
                });
            }
            for r in col.iter_ones() {
                m.set(r, c, true);
            }
        }
        Ok(m)
    }

    pub fn random<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Self {
        let vecs: Vec<BitVec> = (0..rows).map(|_| BitVec::random(cols, rng)).collect();
        Self::from_rows(cols, &vecs).expect("rows have the declared width")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols, "entry ({r},{c}) out of range");
        self.data[r * self.stride + c / WORD] >> (c % WORD) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols, "entry ({r},{c}) out of range");
        let bit = 1u64 << (c % WORD);
        let w = &mut self.data[r * self.stride + c / WORD];
        if value {
            *w |= bit;
        } else {
            *w &= !bit;
        }
    }

    #[inline]
    pub fn toggle(&mut self, r: usize, c: usize) {
        assert!(r < self.rows && c < self.cols, "entry ({r},{c}) out of range");
        self.data[r * self.stride + c / WORD] ^= 1u64 << (c % WORD);
    }

    pub fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    fn row_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row(&self, r: usize) -> BitVec {
        BitVec {
            len: self.cols,
            words: self.row_words(r).to_vec(),
        }
    }

    pub fn column(&self, c: usize) -> BitVec {
        let mut v = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            if self.get(r, c) {
                v.set(r, true);
            }
        }
        v
    }

    pub fn column_weight(&self, c: usize) -> usize {
        (0..self.rows).filter(|&r| self.get(r, c)).count()
    }

    /// Simultaneous row and column permutation: entry `(i, j)` of the result
    /// is entry `(order[i], order[j])` of `self`.
    pub fn permuted(&self, order: &[usize]) -> Result<BitMatrix> {
        if self.rows != self.cols || order.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: order.len(),
            });
        }
        Ok(BitMatrix::from_fn(self.rows, self.cols, |i, j| self.get(order[i], order[j])))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.row(r).iter_ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    /// Matrix product `self * rhs`. Row `r` of the result is the XOR of the
    /// rows of `rhs` selected by row `r` of `self`, so sparse left factors
    /// are cheap.
    pub fn mul(&self, rhs: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut out = BitMatrix::zeros(self.rows, rhs.cols);
        let stride = out.stride;
        out.data.par_chunks_mut(stride.max(1)).enumerate().for_each(|(r, dst)| {
            for j in self.row(r).iter_ones() {
                for (d, s) in dst.iter_mut().zip(rhs.row_words(j)) {
                    *d ^= s;
                }
            }
        });
        Ok(out)
    }

    /// Matrix-vector product over GF(2).
    pub fn apply(&self, v: &BitVec) -> Result<BitVec> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        let mut out = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            let parity = self
                .row_words(r)
                .iter()
                .zip(v.words())
                .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones());
            if parity & 1 == 1 {
                out.set(r, true);
            }
        }
        Ok(out)
    }

    /// Rank over GF(2) by forward elimination on a working copy.
    pub fn rank(&self) -> usize {
        let mut work = self.data.clone();
        forward_eliminate(&mut work, self.rows, self.cols, self.stride).len()
    }

    /// `(rank, kernel dimension)` by rank-nullity.
    pub fn compose_rank_checks(&self) -> (usize, usize) {
        let rank = self.rank();
        (rank, self.cols - rank)
    }

    /// A basis of the right kernel `{x : self * x = 0}` from the reduced
    /// row echelon form.
    pub fn kernel_basis(&self) -> Vec<BitVec> {
        let mut work = self.data.clone();
        let pivots = forward_eliminate(&mut work, self.rows, self.cols, self.stride);
        let stride = self.stride;
        // Back substitution to reduced form.
        for (pr, &pc) in pivots.iter().enumerate().rev() {
            let (w, bit) = (pc / WORD, 1u64 << (pc % WORD));
            let (head, tail) = work.split_at_mut(pr * stride);
            let prow = &tail[..stride];
            for row in head.chunks_mut(stride) {
                if row[w] & bit != 0 {
                    for (a, b) in row[w..].iter_mut().zip(&prow[w..]) {
                        *a ^= b;
                    }
                }
            }
        }
        let mut is_pivot = vec![false; self.cols];
        for &pc in &pivots {
            is_pivot[pc] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = BitVec::zeros(self.cols);
                v.set(free, true);
                for (pr, &pc) in pivots.iter().enumerate() {
                    if work[pr * stride + free / WORD] >> (free % WORD) & 1 == 1 {
                        v.set(pc, true);
                    }
                }
                v
            })
            .collect()
    }

    /// Writes the dump format: a `gf2 rows cols` header, then one lowercase
    /// hex string per row. Hex digit `i` holds columns `4i..4i+4`, with
    /// column `4i` in the least significant bit of the digit.
    pub fn write_dump<W: Write>(&self, out: &mut W) -> io::Result<()> {
        writeln!(out, "gf2 {} {}", self.rows, self.cols)?;
        let digits = self.cols.div_ceil(4);
        let mut line = String::with_capacity(digits);
        for r in 0..self.rows {
            line.clear();
            let words = self.row_words(r);
            for d in 0..digits {
                let nibble = (words[d * 4 / WORD] >> ((d * 4) % WORD)) & 0xf;
                write!(line, "{nibble:x}").expect("writing to a String");
            }
            writeln!(out, "{line}")?;
        }
        Ok(())
    }

    pub fn to_dump_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_dump(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("dump is ASCII")
    }

    pub fn read_dump<R: BufRead>(input: R) -> Result<BitMatrix> {
        let mut lines = input.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty matrix dump".into()))?
            .map_err(|e| Error::Parse(e.to_string()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let (rows, cols) = match fields.as_slice() {
            ["gf2", r, c] => (
                r.parse::<usize>().map_err(|e| Error::Parse(e.to_string()))?,
                c.parse::<usize>().map_err(|e| Error::Parse(e.to_string()))?,
            ),
            _ => return Err(Error::Parse(format!("bad dump header {header:?}"))),
        };
        let digits = cols.div_ceil(4);
        let mut m = BitMatrix::zeros(rows, cols);
        for r in 0..rows {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("missing row {r}")))?
                .map_err(|e| Error::Parse(e.to_string()))?;
            let line = line.trim();
            if line.len() != digits {
                return Err(Error::Parse(format!("row {r} has {} hex digits, expected {digits}", line.len())));
            }
            for (d, ch) in line.chars().enumerate() {
                let nibble = ch
                    .to_digit(16)
                    .filter(|_| !ch.is_ascii_uppercase())
                    .ok_or_else(|| Error::Parse(format!("bad hex digit {ch:?} in row {r}")))?;
                for b in 0..4 {
                    let c = d * 4 + b;
                    if nibble >> b & 1 == 1 {
                        if c >= cols {
                            return Err(Error::Parse(format!("padding bit set in row {r}")));
                        }
                        m.set(r, c, true);
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn from_dump_str(s: &str) -> Result<BitMatrix> {
        Self::read_dump(s.as_bytes())
    }
}

/// Row-echelon elimination in place; returns the pivot column of each pivot
/// row, in order. Pivot choice is the first row with a bit in the current
/// column.
fn forward_eliminate(work: &mut [u64], rows: usize, cols: usize, stride: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    for col in 0..cols {
        let rank = pivots.len();
        if rank == rows {
            break;
        }
        let (w, bit) = (col / WORD, 1u64 << (col % WORD));
        let Some(p) = (rank..rows).find(|&r| work[r * stride + w] & bit != 0) else {
            continue;
        };
        if p != rank {
            let (a, b) = work.split_at_mut(p * stride);
            a[rank * stride..(rank + 1) * stride].swap_with_slice(&mut b[..stride]);
        }
        let (head, tail) = work.split_at_mut((rank + 1) * stride);
        let prow = &head[rank * stride + w..];
        let update = |row: &mut [u64]| {
            if row[w] & bit != 0 {
                for (a, b) in row[w..].iter_mut().zip(prow) {
                    *a ^= b;
                }
            }
        };
        if tail.len() >= PAR_WORDS {
            tail.par_chunks_mut(stride).for_each(update);
        } else {
            tail.chunks_mut(stride).for_each(update);
        }
        pivots.push(col);
    }
    pivots
}

/// An element of the chain group: a GF(2) vector indexed by point codes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Chain {
    k: u32,
    bits: BitVec,
}

impl Chain {
    pub fn zero(k: u32) -> Self {
        Chain {
            k,
            bits: BitVec::zeros(1usize << k),
        }
    }

    pub fn generator(p: PointCode) -> Self {
        let mut c = Self::zero(p.k());
        c.toggle(p);
        c
    }

    /// Sum of the given points; repeated points cancel.
    pub fn from_points(k: u32, points: impl IntoIterator<Item = PointCode>) -> Self {
        let mut c = Self::zero(k);
        for p in points {
            c.toggle(p);
        }
        c
    }

    /// Chain whose coefficient on mask `m` is bit `m` of `bits`.
    pub fn from_bitvec(k: u32, bits: BitVec) -> Result<Self> {
        if bits.len() != 1usize << k {
            return Err(Error::DimensionMismatch {
                expected: 1usize << k,
                found: bits.len(),
            });
        }
        Ok(Chain { k, bits })
    }

    /// Chain from a packed word; requires `2^k <= 64`.
    pub fn from_word(k: u32, word: u64) -> Self {
        assert!(k <= 6, "from_word needs 2^k <= 64");
        let len = 1usize << k;
        let mut bits = BitVec::zeros(len);
        bits.words[0] = if len == 64 { word } else { word & ((1u64 << len) - 1) };
        Chain { k, bits }
    }

    pub fn random<R: Rng + ?Sized>(k: u32, rng: &mut R) -> Self {
        Chain {
            k,
            bits: BitVec::random(1usize << k, rng),
        }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn bits(&self) -> &BitVec {
        &self.bits
    }

    pub fn into_bits(self) -> BitVec {
        self.bits
    }

    pub fn contains(&self, p: PointCode) -> bool {
        assert_eq!(p.k(), self.k, "point dimension mismatch");
        self.bits.get(p.index())
    }

    pub fn toggle(&mut self, p: PointCode) {
        assert_eq!(p.k(), self.k, "point dimension mismatch");
        self.bits.toggle(p.index());
    }

    pub fn is_zero(&self) -> bool {
        self.bits.is_zero()
    }

    pub fn weight(&self) -> usize {
        self.bits.count_ones()
    }

    pub fn points(&self) -> impl Iterator<Item = PointCode> + '_ {
        let k = self.k;
        self.bits
            .iter_ones()
            .map(move |m| PointCode::new_unchecked(k, m as u64))
    }
}

impl AddAssign<&Chain> for Chain {
    fn add_assign(&mut self, rhs: &Chain) {
        assert_eq!(self.k, rhs.k, "chain dimension mismatch");
        self.bits.xor_assign(&rhs.bits);
    }
}

impl Add<&Chain> for &Chain {
    type Output = Chain;

    fn add(self, rhs: &Chain) -> Chain {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Chain {
    type Output = Chain;

    fn add(mut self, rhs: Chain) -> Chain {
        self += &rhs;
        self
    }
}
