//! Floer homology with coefficients in the Novikov field `Λ = Z₂((e))`.
//!
//! Scalars are Laurent series `Σ a_j e^j` over GF(2) whose support is bounded
//! below. A scalar keeps a window of at most `P` coefficients starting at its
//! valuation. It is *exact* when every coefficient outside the window is known
//! to vanish, and otherwise carries an absolute order `A`: the coefficients of
//! `e^m` with `m >= A` are unknown. Arithmetic never invents coefficients past
//! the known order; when a sum cancels every known term of an inexact operand
//! the result is the indeterminate `O(e^A)`, not zero.

use std::cmp::Ordering;
use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::complex;
use crate::error::{Error, Result};
use crate::signvec::{Parity, PointCode};

pub const MAX_PRECISION: u32 = 64;

/// Largest `k` for the dense scalar matrix of `∂′`.
pub const MAX_NOVIKOV_K: u32 = 11;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NovikovScalar {
    valuation: i64,
    window: u64,
    order: Option<i64>,
    precision: u8,
}

fn check_precision(p: u32) -> Result<u8> {
    if p == 0 || p > MAX_PRECISION {
        return Err(Error::InvalidPrecision(p));
    }
    Ok(p as u8)
}

#[inline]
fn low_mask(bits: u32) -> u128 {
    if bits >= 128 {
        u128::MAX
    } else {
        (1u128 << bits) - 1
    }
}

/// Carry-less product of two windows.
#[inline]
fn clmul(a: u64, b: u64) -> u128 {
    let mut out = 0u128;
    let mut rest = a;
    while rest != 0 {
        let i = rest.trailing_zeros();
        out ^= (b as u128) << i;
        rest &= rest - 1;
    }
    out
}

#[inline]
fn min_order(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl NovikovScalar {
    pub fn zero(precision: u32) -> Result<Self> {
        Ok(Self::zero_p(check_precision(precision)?))
    }

    fn zero_p(p: u8) -> Self {
        NovikovScalar {
            valuation: 0,
            window: 0,
            order: None,
            precision: p,
        }
    }

    fn vanishing(order: i64, p: u8) -> Self {
        NovikovScalar {
            valuation: order,
            window: 0,
            order: Some(order),
            precision: p,
        }
    }

    /// The exact monomial `e^exponent`.
    pub fn monomial(exponent: i64, precision: u32) -> Result<Self> {
        let p = check_precision(precision)?;
        Ok(NovikovScalar {
            valuation: exponent,
            window: 1,
            order: None,
            precision: p,
        })
    }

    pub fn one(precision: u32) -> Result<Self> {
        Self::monomial(0, precision)
    }

    /// The finite sum `Σ e^j` over the given exponents (repeats cancel).
    /// Terms beyond the window are cut off and the result marked inexact.
    pub fn from_exponents(exponents: &[i64], precision: u32) -> Result<Self> {
        let p = check_precision(precision)?;
        let mut sorted: Vec<i64> = exponents.to_vec();
        sorted.sort_unstable();
        let mut terms: Vec<i64> = Vec::new();
        for e in sorted {
            if terms.last() == Some(&e) {
                terms.pop();
            } else {
                terms.push(e);
            }
        }
        let Some(&lo) = terms.first() else {
            return Ok(Self::zero_p(p));
        };
        let mut window = 0u64;
        let mut order = None;
        for &e in &terms {
            let d = e - lo;
            if d < p as i64 {
                window |= 1 << d;
            } else {
                order = Some(lo + p as i64);
            }
        }
        Ok(NovikovScalar {
            valuation: lo,
            window,
            order,
            precision: p,
        })
    }

    /// The series whose first `precision` coefficients starting at
    /// `valuation` are the bits of `window`, with everything later unknown.
    pub fn truncated(valuation: i64, window: u64, precision: u32) -> Result<Self> {
        let p = check_precision(precision)?;
        let order = Some(valuation + p as i64);
        Ok(Self::normalize(valuation, window as u128, order, false, p))
    }

    /// Brings a raw coefficient word (bit `i` ↔ `e^{lo+i}`) into canonical
    /// form: leading bit at position 0, at most `p` coefficients, nothing
    /// kept at or beyond the known order. `overflow` flags known nonzero
    /// terms above the word that were not included.
    fn normalize(lo: i64, mut bits: u128, order: Option<i64>, overflow: bool, p: u8) -> Self {
        if let Some(a) = order {
            let rel = a - lo;
            bits &= if rel <= 0 { 0 } else { low_mask(rel.min(128) as u32) };
        }
        if bits == 0 {
            return match order {
                None => {
                    debug_assert!(!overflow, "terms dropped while lower terms vanished");
                    Self::zero_p(p)
                }
                Some(a) => Self::vanishing(a, p),
            };
        }
        let tz = bits.trailing_zeros();
        let valuation = lo + tz as i64;
        bits >>= tz;
        let cap = valuation + p as i64;
        let truncated = bits >> p != 0 || overflow;
        let order = match (order, truncated) {
            (Some(a), _) => Some(a.min(cap)),
            (None, true) => Some(cap),
            (None, false) => None,
        };
        NovikovScalar {
            valuation,
            window: (bits & low_mask(p as u32)) as u64,
            order,
            precision: p,
        }
    }

    pub fn precision(&self) -> u32 {
        self.precision as u32
    }

    /// Lowest exponent with a nonzero coefficient, `None` for zero and for
    /// indeterminate values.
    pub fn valuation(&self) -> Option<i64> {
        (self.window != 0).then_some(self.valuation)
    }

    /// Exponent from which coefficients are unknown; `None` when exact.
    pub fn order(&self) -> Option<i64> {
        self.order
    }

    pub fn is_exact(&self) -> bool {
        self.order.is_none()
    }

    /// Exactly zero.
    pub fn is_zero(&self) -> bool {
        self.window == 0 && self.order.is_none()
    }

    /// Known to be nonzero: some coefficient inside the known range is set.
    pub fn is_nonzero(&self) -> bool {
        self.window != 0
    }

    /// Zero to within the known precision but not known to be zero.
    pub fn is_indeterminate(&self) -> bool {
        self.window == 0 && self.order.is_some()
    }

    /// Coefficient of `e^exponent`, `None` where unknown.
    pub fn coefficient(&self, exponent: i64) -> Option<bool> {
        if self.order.is_some_and(|a| exponent >= a) {
            return None;
        }
        if self.window == 0 {
            return Some(false);
        }
        let d = exponent - self.valuation;
        Some((0..64).contains(&d) && self.window >> d & 1 == 1)
    }

    /// Known nonzero exponents in increasing order.
    pub fn exponents(&self) -> Vec<i64> {
        (0..64)
            .filter(|&i| self.window >> i & 1 == 1)
            .map(|i| self.valuation + i)
            .collect()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let p = self.precision.min(rhs.precision);
        let order = min_order(self.order, rhs.order);
        let lo = match (self.window != 0, rhs.window != 0) {
            (true, true) => self.valuation.min(rhs.valuation),
            (true, false) => self.valuation,
            (false, true) => rhs.valuation,
            (false, false) => {
                return match order {
                    None => Self::zero_p(p),
                    Some(a) => Self::vanishing(a, p),
                }
            }
        };
        let mut bits = 0u128;
        let mut overflow = false;
        for x in [self, rhs] {
            if x.window != 0 {
                let d = x.valuation - lo;
                if d < 64 {
                    bits ^= (x.window as u128) << d;
                } else {
                    overflow = true;
                }
            }
        }
        Self::normalize(lo, bits, order, overflow, p)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let p = self.precision.min(rhs.precision);
        if self.is_zero() || rhs.is_zero() {
            return Self::zero_p(p);
        }
        // Lowest exponent each factor can contribute from.
        let floor = |x: &Self| if x.window != 0 { x.valuation } else { x.order.expect("indeterminate has an order") };
        if self.window == 0 || rhs.window == 0 {
            return Self::vanishing(floor(self) + floor(rhs), p);
        }
        let order = min_order(
            self.order.map(|a| a + rhs.valuation),
            rhs.order.map(|b| b + self.valuation),
        );
        Self::normalize(
            self.valuation + rhs.valuation,
            clmul(self.window, rhs.window),
            order,
            false,
            p,
        )
    }

    /// Multiplicative inverse by leading-term division followed by Newton
    /// refinement `x ← a·x²` (characteristic 2), which doubles the number of
    /// correct coefficients per step.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.window == 0 {
            return Err(Error::PrecisionExhausted("inverting a value indistinguishable from zero"));
        }
        let p = self.precision;
        if self.window == 1 && self.order.is_none() {
            return Ok(NovikovScalar {
                valuation: -self.valuation,
                window: 1,
                order: None,
                precision: p,
            });
        }
        let known = match self.order {
            Some(a) => (a - self.valuation).min(p as i64) as u32,
            None => p as u32,
        };
        let keep = low_mask(known) as u64;
        let unit = self.window & keep;
        let mut x: u64 = 1;
        let mut correct = 1;
        while correct < known {
            let sq = (clmul(x, x) as u64) & keep;
            x = (clmul(unit, sq) as u64) & keep;
            correct *= 2;
        }
        Ok(Self::normalize(
            -self.valuation,
            x as u128,
            Some(-self.valuation + known as i64),
            false,
            p,
        ))
    }

    /// Equal on every coefficient known for both operands.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.add(other).window == 0
    }

    /// Image under `Σ b_j e^j ↦ Σ b_j T^{2jc} e^{-j}` into the universal
    /// Novikov ring, as `(multiple of c in the T exponent, e exponent)`.
    pub fn universal_terms(&self) -> Vec<(i64, i64)> {
        self.exponents().into_iter().map(|j| (2 * j, -j)).collect()
    }

    pub fn format_universal(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts: Vec<String> = self
            .universal_terms()
            .into_iter()
            .map(|(t, e)| format!("T^{{{t}c}}e^{e}"))
            .collect();
        if let Some(a) = self.order {
            parts.push(format!("O(T^{{{}c}})", 2 * a));
        }
        parts.join("+")
    }

    /// Parses the sparse exponent form, e.g. `e^0+e^2`, `e^-1+O(e^3)`, `0`.
    pub fn parse(s: &str, precision: u32) -> Result<Self> {
        let p = check_precision(precision)?;
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero_p(p));
        }
        let mut exps = Vec::new();
        let mut order: Option<i64> = None;
        for term in s.split('+').map(str::trim) {
            let parse_exp = |t: &str| {
                t.parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad exponent in term {term:?}")))
            };
            if let Some(rest) = term.strip_prefix("O(e^").and_then(|r| r.strip_suffix(')')) {
                order = Some(parse_exp(rest)?);
            } else if let Some(rest) = term.strip_prefix("e^") {
                exps.push(parse_exp(rest)?);
            } else {
                return Err(Error::Parse(format!("unrecognised term {term:?}")));
            }
        }
        let base = Self::from_exponents(&exps, precision)?;
        Ok(match order {
            None => base,
            Some(a) => base.add(&Self::vanishing(a, p)),
        })
    }
}

impl fmt::Display for NovikovScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut parts: Vec<String> = self.exponents().iter().map(|j| format!("e^{j}")).collect();
        if let Some(a) = self.order {
            parts.push(format!("O(e^{a})"));
        }
        f.write_str(&parts.join("+"))
    }
}

impl Serialize for NovikovScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// The basis element `v_q = e^{-j}·[q, u_q]` together with its grading and
/// action. The action is stored as an integer multiple of the monotonicity
/// constant `c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GradedGenerator {
    pub point: PointCode,
    pub j_offset: i64,
    pub grading: i64,
    pub action: i64,
}

impl GradedGenerator {
    /// `e^s · self`: grading drops by `2s`, action by `2s·c`.
    pub fn shift(&self, s: i64) -> GradedGenerator {
        GradedGenerator {
            point: self.point,
            j_offset: self.j_offset - s,
            grading: self.grading - 2 * s,
            action: self.action - 2 * s,
        }
    }

    pub fn action_value(&self, c: f64) -> f64 {
        self.action as f64 * c
    }
}

/// Grading and action of `v_q`.
///
/// `u_q` is taken to be a strip from `[1:⋯:1]` to `q` of minimal Maslov index
/// `m` (the number of coordinate flips separating them), with energy `m·c`.
/// Writing `m = 2j` or `2j + 1`, `v_q = e^{-j}·[q, u_q]` has grading and
/// action `0` when `q` has an even number of `+1` coordinates, and grading
/// `-1`, action `-c` otherwise.
pub fn grade_and_action(q: PointCode) -> Result<GradedGenerator> {
    q.plus_one_count_parity()?;
    let m = q.distance_from_base() as i64;
    let j = m / 2;
    // gr([q,u_q]) = -m and A([q,u_q]) = -m·c; shifting by e^{-j} adds 2j to both.
    Ok(GradedGenerator {
        point: q,
        j_offset: j,
        grading: -m + 2 * j,
        action: -m + 2 * j,
    })
}

/// Dense matrix over `Λ`, row-major; column `c` holds `∂′` of basis vector `c`.
#[derive(Debug, Clone, PartialEq)]
pub struct NovikovMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<NovikovScalar>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PivotOrder {
    /// Among entries of minimal valuation, take the topmost row.
    First,
    /// Among entries of minimal valuation, take the bottom row.
    Last,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Entry {
    pub row: usize,
    pub col: usize,
    pub scalar: NovikovScalar,
}

impl NovikovMatrix {
    pub fn zeros(rows: usize, cols: usize, precision: u32) -> Result<Self> {
        let z = NovikovScalar::zero(precision)?;
        Ok(NovikovMatrix {
            rows,
            cols,
            entries: vec![z; rows * cols],
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &NovikovScalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: NovikovScalar) {
        self.entries[r * self.cols + c] = value;
    }

    /// Nonzero entries as `(row, col, scalar)` triples in row-major order.
    pub fn entries(&self) -> Vec<Entry> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.is_zero())
            .map(|(i, s)| Entry {
                row: i / self.cols,
                col: i % self.cols,
                scalar: *s,
            })
            .collect()
    }

    /// Rank by Gaussian elimination; the pivot in each column is an entry of
    /// minimal valuation.
    pub fn rank(&self, order: PivotOrder) -> Result<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut a = self.entries.clone();
        let mut rank = 0;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let mut best: Option<(i64, usize)> = None;
            let mut indeterminate = false;
            for r in rank..rows {
                let x = &a[r * cols + col];
                if let Some(v) = x.valuation() {
                    let better = match best {
                        None => true,
                        Some((bv, _)) => match v.cmp(&bv) {
                            Ordering::Less => true,
                            Ordering::Equal => order == PivotOrder::Last,
                            Ordering::Greater => false,
                        },
                    };
                    if better {
                        best = Some((v, r));
                    }
                } else if x.is_indeterminate() {
                    indeterminate = true;
                }
            }
            let Some((_, p)) = best else {
                if indeterminate {
                    return Err(Error::PrecisionExhausted("pivot column has no certified nonzero entry"));
                }
                continue;
            };
            if p != rank {
                for j in 0..cols {
                    a.swap(p * cols + j, rank * cols + j);
                }
            }
            let (head, tail) = a.split_at_mut((rank + 1) * cols);
            let pivot_row = &head[rank * cols..];
            let pivot_inv = pivot_row[col].inv()?;
            let zero = NovikovScalar::zero_p(pivot_row[col].precision);
            let eliminate = |row: &mut [NovikovScalar]| {
                let x = row[col];
                if x.is_zero() {
                    return;
                }
                let factor = x.mul(&pivot_inv);
                row[col] = zero;
                for j in col + 1..cols {
                    let y = &pivot_row[j];
                    if !y.is_zero() {
                        row[j] = row[j].add(&factor.mul(y));
                    }
                }
            };
            if tail.len() * cols >= 1 << 16 {
                tail.par_chunks_mut(cols).for_each(eliminate);
            } else {
                tail.chunks_mut(cols).for_each(eliminate);
            }
            rank += 1;
        }
        Ok(rank)
    }
}

fn check_odd_k(k: u32) -> Result<()> {
    if k.is_multiple_of(2) {
        return Err(Error::Obstruction {
            k,
            square_parity: (k + 1) % 2,
        });
    }
    if k > MAX_NOVIKOV_K {
        return Err(Error::Capacity { k, max: MAX_NOVIKOV_K });
    }
    Ok(())
}

/// Diagonal of the column scaling: `1` on generators of grading `0`, `e` on
/// generators of grading `-1`.
pub fn column_scaling(k: u32, precision: u32) -> Result<Vec<NovikovScalar>> {
    check_odd_k(k)?;
    PointCode::all(k)?
        .map(|q| {
            let exponent = match q.plus_one_count_parity()? {
                Parity::Even => 0,
                Parity::Odd => 1,
            };
            NovikovScalar::monomial(exponent, precision)
        })
        .collect()
}

/// Matrix of `∂′` in the basis `{v_q}` ordered by mask. Entries are
/// `n′(v_q, ·) ∈ {0, 1, e}`.
pub fn novikov_boundary_matrix(k: u32, precision: u32) -> Result<NovikovMatrix> {
    let scaling = column_scaling(k, precision)?;
    let n = 1usize << k;
    let mut m = NovikovMatrix::zeros(n, n, precision)?;
    for q in PointCode::all(k)? {
        for target in complex::boundary_image(q).points() {
            m.set(target.index(), q.index(), scaling[q.index()]);
        }
    }
    Ok(m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NovikovHomology {
    pub k: u32,
    pub precision: u32,
    pub rank: usize,
    pub gf2_rank: usize,
    pub hf_dim: usize,
}

/// `dim_Λ HF = 2^k − 2·rank_Λ ∂′`, cross-checked against the GF(2) rank.
pub fn hf_dimension_novikov(k: u32, precision: u32) -> Result<NovikovHomology> {
    let m = novikov_boundary_matrix(k, precision)?;
    let rank = m.rank(PivotOrder::First)?;
    let gf2_rank = complex::boundary_matrix(k)?.rank();
    if rank != gf2_rank {
        return Err(Error::RankMismatch { novikov: rank, gf2: gf2_rank });
    }
    Ok(NovikovHomology {
        k,
        precision,
        rank,
        gf2_rank,
        hf_dim: (1usize << k) - 2 * rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn s(text: &str, p: u32) -> NovikovScalar {
        NovikovScalar::parse(text, p).unwrap()
    }

    #[test]
    fn characteristic_two() {
        let a = s("e^0+e^1", 8);
        assert!(a.add(&a).is_zero());
    }

    #[test]
    fn inverse_of_one_plus_e() {
        let a = s("e^0+e^1", 4);
        let inv = a.inv().unwrap();
        assert_eq!(inv.exponents(), vec![0, 1, 2, 3]);
        assert_eq!(inv.order(), Some(4));
        // Oracle: multiply back and compare with 1 modulo e^4.
        let back = a.mul(&inv);
        assert_eq!(back.coefficient(0), Some(true));
        for j in 1..4 {
            assert_eq!(back.coefficient(j), Some(false));
        }
        assert!(back.agrees_with(&NovikovScalar::one(4).unwrap()));
    }

    #[test]
    fn monomials_multiply() {
        let a = NovikovScalar::monomial(3, 4).unwrap();
        let b = NovikovScalar::monomial(-5, 4).unwrap();
        assert_eq!(a.mul(&b), NovikovScalar::monomial(-2, 4).unwrap());
        assert_eq!(a.inv().unwrap(), NovikovScalar::monomial(-3, 4).unwrap());
        assert!(a.mul(&a.inv().unwrap()).is_exact());
    }

    #[test]
    fn zero_and_indeterminate() {
        let z = NovikovScalar::zero(4).unwrap();
        assert!(matches!(z.inv(), Err(Error::DivisionByZero)));
        let a = NovikovScalar::truncated(0, 0b11, 2).unwrap();
        let b = NovikovScalar::truncated(0, 0b11, 2).unwrap();
        let d = a.add(&b);
        assert!(d.is_indeterminate());
        assert_eq!(d.to_string(), "O(e^2)");
        assert!(matches!(d.inv(), Err(Error::PrecisionExhausted(_))));
        assert!(matches!(NovikovScalar::zero(0), Err(Error::InvalidPrecision(0))));
        assert!(matches!(NovikovScalar::zero(65), Err(Error::InvalidPrecision(65))));
    }

    #[test]
    fn window_truncation_marks_inexact() {
        let a = NovikovScalar::from_exponents(&[0, 10], 4).unwrap();
        assert_eq!(a.to_string(), "e^0+O(e^4)");
        let b = s("e^0+e^3", 4);
        assert!(b.is_exact());
        // (1 + e^3)^2 = 1 + e^6 no longer fits four slots.
        let sq = b.mul(&b);
        assert_eq!(sq.to_string(), "e^0+O(e^4)");
    }

    #[test]
    fn display_and_parse() {
        let a = s("e^-1+e^2", 8);
        assert_eq!(a.to_string(), "e^-1+e^2");
        assert_eq!(NovikovScalar::parse(&a.to_string(), 8).unwrap(), a);
        assert_eq!(s("0", 3).to_string(), "0");
        assert!(NovikovScalar::parse("x^2", 4).is_err());
        assert_eq!(serde_json::to_string(&a).unwrap(), "\"e^-1+e^2\"");
        assert_eq!(s("e^1", 4).format_universal(), "T^{2c}e^-1");
    }

    fn random_scalar<R: Rng>(rng: &mut R, p: u32) -> NovikovScalar {
        let window = rng.gen::<u64>() | 1;
        let window = if p == 64 { window } else { window & ((1 << p) - 1) };
        NovikovScalar::truncated(rng.gen_range(-6..6), window, p).unwrap()
    }

    #[test]
    fn field_axioms_within_precision() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..10_000 {
            let p = rng.gen_range(1..=16);
            let a = random_scalar(&mut rng, p);
            let b = random_scalar(&mut rng, p);
            let c = random_scalar(&mut rng, p);
            let one = NovikovScalar::one(p).unwrap();
            assert!(a.mul(&a.inv().unwrap()).agrees_with(&one), "a={a}");
            let lhs = a.mul(&b.add(&c));
            let rhs = a.mul(&b).add(&a.mul(&c));
            assert!(lhs.agrees_with(&rhs), "a={a} b={b} c={c}");
            assert_eq!(a.add(&b), b.add(&a));
            assert_eq!(a.mul(&b), b.mul(&a));
        }
    }

    #[test]
    fn grading_examples() {
        let q0 = PointCode::from_mask(3, 0).unwrap();
        let g = grade_and_action(q0).unwrap();
        assert_eq!((g.grading, g.action, g.j_offset), (0, 0, 0));
        let q1 = PointCode::from_mask(3, 0b001).unwrap();
        let g = grade_and_action(q1).unwrap();
        assert_eq!((g.grading, g.action), (-1, -1));
        assert_eq!(g.action_value(0.25), -0.25);
        assert!(grade_and_action(PointCode::from_mask(4, 0).unwrap()).is_err());
    }

    #[test]
    fn flip_neighbours_have_opposite_grading() {
        for k in [1u32, 3, 5, 7] {
            for q in PointCode::all(k).unwrap() {
                let g = grade_and_action(q).unwrap().grading;
                for i in 0..=k {
                    let h = grade_and_action(q.flip(i).unwrap()).unwrap().grading;
                    assert_ne!(g, h);
                }
            }
        }
    }

    #[test]
    fn degree_and_period_compatibility() {
        for q in PointCode::all(5).unwrap() {
            let v = grade_and_action(q).unwrap();
            for j in -3..=3 {
                let w = v.shift(j);
                assert_eq!(w.grading - v.grading, -2 * j);
                assert_eq!(w.action - v.action, -2 * j);
                assert_eq!(w.shift(-j), v);
            }
        }
    }

    #[test]
    fn matrix_columns_follow_scaling() {
        let m = novikov_boundary_matrix(3, 4).unwrap();
        let one = NovikovScalar::one(4).unwrap();
        let e = NovikovScalar::monomial(1, 4).unwrap();
        for r in [1usize, 2, 4, 7] {
            assert_eq!(m.get(r, 0), &one);
            // Mask 0b001 has three +1 coordinates.
        }
        for r in [0usize, 3, 5, 6] {
            assert_eq!(m.get(r, 1), &e);
        }
        assert_eq!(m.entries().len(), 8 * 4);
        assert!(novikov_boundary_matrix(4, 4).is_err());
    }

    #[test]
    fn entries_respect_grading_and_action() {
        for k in [1u32, 3, 5, 7] {
            let m = novikov_boundary_matrix(k, 4).unwrap();
            for entry in m.entries() {
                let source = grade_and_action(PointCode::from_mask(k, entry.col as u64).unwrap()).unwrap();
                let exps = entry.scalar.exponents();
                assert_eq!(exps.len(), 1);
                let target = grade_and_action(PointCode::from_mask(k, entry.row as u64).unwrap())
                    .unwrap()
                    .shift(exps[0]);
                assert_eq!(target.grading, source.grading - 1);
                assert!(source.action > target.action);
            }
        }
    }

    #[test]
    fn rank_matches_gf2_and_pivot_order() {
        for k in [1u32, 3, 5, 7] {
            for p in [1u32, 4] {
                let m = novikov_boundary_matrix(k, p).unwrap();
                let first = m.rank(PivotOrder::First).unwrap();
                let last = m.rank(PivotOrder::Last).unwrap();
                assert_eq!(first, last);
                assert_eq!(first, complex::boundary_matrix(k).unwrap().rank());
            }
        }
        assert_eq!(hf_dimension_novikov(3, 4).unwrap().hf_dim, 4);
        assert_eq!(hf_dimension_novikov(5, 4).unwrap().hf_dim, 8);
    }

    #[test]
    fn rank_with_series_entries() {
        // [[1, 1+e], [1+e, (1+e)^2]] has rank 1; [[1, e], [e, 1]] has rank 2.
        let p = 8;
        let one = NovikovScalar::one(p).unwrap();
        let a = s("e^0+e^1", p);
        let mut m = NovikovMatrix::zeros(2, 2, p).unwrap();
        m.set(0, 0, one);
        m.set(0, 1, a);
        m.set(1, 0, a);
        m.set(1, 1, a.mul(&a));
        assert_eq!(m.rank(PivotOrder::First).unwrap(), 1);
        let e = NovikovScalar::monomial(1, p).unwrap();
        m.set(0, 1, e);
        m.set(1, 0, e);
        m.set(1, 1, one);
        assert_eq!(m.rank(PivotOrder::Last).unwrap(), 2);
    }

    #[test]
    fn rank_reports_precision_exhaustion() {
        // The inverse of 1+e is an infinite series; with two slots the
        // residual of the second column is indeterminate.
        let p = 2;
        let a = s("e^0+e^1", p);
        let mut m = NovikovMatrix::zeros(2, 2, p).unwrap();
        m.set(0, 0, a);
        m.set(0, 1, NovikovScalar::one(p).unwrap());
        m.set(1, 0, NovikovScalar::one(p).unwrap());
        m.set(1, 1, a.inv().unwrap());
        assert!(matches!(m.rank(PivotOrder::First), Err(Error::PrecisionExhausted(_))));
    }
}
