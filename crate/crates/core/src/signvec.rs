//! Intersection points of real projective space and the Clifford torus.
//!
//! The two Lagrangians meet in the `2^k` points `[±1:⋯:±1]` of `CP^k`. Every
//! such point has a unique representative with leading coordinate `+1`, so a
//! point is stored as the `k`-bit mask of the tail coordinates equal to `-1`:
//! bit `i-1` of the mask is set exactly when coordinate `i` is `-1`.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported `k`; the mask must fit in a machine word.
pub const MAX_K: u32 = 63;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: u64) -> Self {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// A generator of the Floer chain group, in canonical form `[1:ε₁:⋯:ε_k]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointCode {
    k: u32,
    mask: u64,
}

fn check_k(k: u32) -> Result<()> {
    if k == 0 {
        return Err(Error::UnsupportedDimension {
            k,
            reason: "k must be positive",
        });
    }
    if k > MAX_K {
        return Err(Error::Capacity { k, max: MAX_K });
    }
    Ok(())
}

#[inline]
fn low_bits(k: u32) -> u64 {
    (1u64 << k) - 1
}

impl PointCode {
    pub fn from_mask(k: u32, mask: u64) -> Result<Self> {
        check_k(k)?;
        if mask > low_bits(k) {
            return Err(Error::IndexOutOfRange {
                index: mask as usize,
                max: low_bits(k) as usize,
            });
        }
        Ok(PointCode { k, mask })
    }

    /// Crate-internal constructor for masks already known to be in range.
    #[inline]
    pub(crate) fn new_unchecked(k: u32, mask: u64) -> Self {
        debug_assert!((1..=MAX_K).contains(&k) && mask <= low_bits(k));
        PointCode { k, mask }
    }

    /// Canonical code of the homogeneous point with the given `k+1` signs.
    ///
    /// If the leading sign is `-1` the whole vector is negated first.
    pub fn canonicalize(k: u32, signs: &[i8]) -> Result<Self> {
        check_k(k)?;
        if signs.len() != k as usize + 1 {
            return Err(Error::DimensionMismatch {
                expected: k as usize + 1,
                found: signs.len(),
            });
        }
        if let Some(&bad) = signs.iter().find(|&&s| s != 1 && s != -1) {
            return Err(Error::InvalidSign(bad as i64));
        }
        let lead = signs[0];
        let mask = signs[1..]
            .iter()
            .enumerate()
            .filter(|(_, &s)| s * lead == -1)
            .fold(0u64, |m, (i, _)| m | (1 << i));
        Ok(PointCode { k, mask })
    }

    /// All `2^k` codes in mask order.
    pub fn all(k: u32) -> Result<impl Iterator<Item = PointCode>> {
        check_k(k)?;
        Ok((0..=low_bits(k)).map(move |mask| PointCode { k, mask }))
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn index(&self) -> usize {
        self.mask as usize
    }

    /// Homogeneous signs of the canonical representative, leading `+1` first.
    pub fn signs(&self) -> Vec<i8> {
        std::iter::once(1)
            .chain((0..self.k).map(|i| if self.mask >> i & 1 == 1 { -1 } else { 1 }))
            .collect()
    }

    /// Negate homogeneous coordinate `i` and re-canonicalize.
    ///
    /// `i = 0` complements the whole mask; this is the involution `η`.
    pub fn flip(&self, i: u32) -> Result<PointCode> {
        if i > self.k {
            return Err(Error::IndexOutOfRange {
                index: i as usize,
                max: self.k as usize,
            });
        }
        Ok(self.flip_unchecked(i))
    }

    #[inline]
    pub(crate) fn flip_unchecked(&self, i: u32) -> PointCode {
        let mask = if i == 0 {
            !self.mask & low_bits(self.k)
        } else {
            self.mask ^ (1 << (i - 1))
        };
        PointCode { k: self.k, mask }
    }

    /// The involution `η`, negating every tail coordinate.
    pub fn eta(&self) -> PointCode {
        self.flip_unchecked(0)
    }

    /// Number of homogeneous coordinates equal to `+1` in the canonical
    /// representative. Only its parity is representative-independent, and
    /// only when `k` is odd.
    pub fn plus_one_count(&self) -> u32 {
        self.k + 1 - self.mask.count_ones()
    }

    pub fn plus_one_count_parity(&self) -> Result<Parity> {
        if self.k.is_multiple_of(2) {
            return Err(Error::UnsupportedDimension {
                k: self.k,
                reason: "+1-count parity depends on the representative when k is even",
            });
        }
        Ok(Parity::of(self.plus_one_count() as u64))
    }

    /// Fewest coordinate flips needed to reach this point from `[1:⋯:1]`.
    pub fn distance_from_base(&self) -> u32 {
        let minus = self.mask.count_ones();
        minus.min(self.k + 1 - minus)
    }
}

/// Tail coordinates as `+`/`-` characters, left to right.
impl fmt::Display for PointCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.k {
            f.write_str(if self.mask >> i & 1 == 1 { "-" } else { "+" })?;
        }
        Ok(())
    }
}

/// Parses the `+`/`-` tail string; `k` is the string length. The Unicode
/// minus sign is accepted as well as ASCII `-`.
impl FromStr for PointCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut mask = 0u64;
        let mut k = 0u32;
        for ch in s.chars() {
            match ch {
                '+' => {}
                '-' | '\u{2212}' => {
                    if k < 64 {
                        mask |= 1 << k;
                    }
                }
                other => return Err(Error::Parse(format!("unexpected character {other:?} in point code"))),
            }
            k += 1;
        }
        check_k(k)?;
        Ok(PointCode { k, mask })
    }
}

impl Serialize for PointCode {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_u64(self.mask)
    }
}
