//! The Floer chain complex `CF(RP^k, T^k)` over GF(2).
//!
//! The differential sends a generator to the sum of its `k+1` single-coordinate
//! flips. It splits as `∂ = ∂̃ + η`, where `∂̃` flips one tail coordinate and
//! `η` flips the leading one (equivalently, negates every tail coordinate).

use serde::Serialize;

use crate::disks;
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, Chain};
use crate::signvec::PointCode;

/// Largest `k` for which the dense `2^k × 2^k` matrix is built (128 MiB).
pub const MAX_MATRIX_K: u32 = 15;

fn check_matrix_k(k: u32) -> Result<()> {
    if k == 0 {
        return Err(Error::UnsupportedDimension {
            k,
            reason: "k must be positive",
        });
    }
    if k > MAX_MATRIX_K {
        return Err(Error::Capacity { k, max: MAX_MATRIX_K });
    }
    Ok(())
}

/// `∂̃(p)`: the sum of the `k` tail-coordinate flips.
pub fn boundary_tilde(p: PointCode) -> Chain {
    Chain::from_points(p.k(), (1..=p.k()).map(|i| p.flip_unchecked(i)))
}

/// `η(p)`: the leading-coordinate flip.
pub fn eta(p: PointCode) -> Chain {
    Chain::generator(p.eta())
}

/// `∂(p) = Σ_i flip(p, i)`. For `k = 1` the two flips coincide and cancel.
pub fn boundary_image(p: PointCode) -> Chain {
    Chain::from_points(p.k(), (0..=p.k()).map(|i| p.flip_unchecked(i)))
}

fn extend_linearly(x: &Chain, image: impl Fn(PointCode) -> Chain) -> Chain {
    let mut out = Chain::zero(x.k());
    for p in x.points() {
        out += &image(p);
    }
    out
}

/// `∂` applied to a chain.
pub fn boundary(x: &Chain) -> Chain {
    extend_linearly(x, boundary_image)
}

pub fn boundary_tilde_chain(x: &Chain) -> Chain {
    extend_linearly(x, boundary_tilde)
}

/// `η` applied to a chain.
pub fn eta_chain(x: &Chain) -> Chain {
    Chain::from_points(x.k(), x.points().map(|p| p.eta()))
}

/// The `2^k × 2^k` matrix of `∂`; column `p` is `∂(p)`.
pub fn boundary_matrix(k: u32) -> Result<BitMatrix> {
    check_matrix_k(k)?;
    let n = 1usize << k;
    let mut m = BitMatrix::zeros(n, n);
    for p in PointCode::all(k)? {
        for q in boundary_image(p).points() {
            m.toggle(q.index(), p.index());
        }
    }
    Ok(m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub k: u32,
    /// Maslov-2 disks on `RP^k` through a generator.
    pub phi_rp: u32,
    /// Maslov-2 disks on `T^k` through a generator.
    pub phi_t: u32,
    /// Whether `phi_rp + phi_t` vanishes mod 2.
    pub square_is_zero: bool,
    /// Whether the computed `∂²` equals `(phi_rp + phi_t mod 2) · Id`.
    pub square_matches: bool,
}

impl ObstructionReport {
    pub fn phi_total(&self) -> u32 {
        self.phi_rp + self.phi_t
    }
}

/// Maslov-2 disks with boundary on `RP^k` through an intersection point.
///
/// The minimal Maslov number of `RP^k` is `k+1`, so there are none for
/// `k >= 2`. For `k = 1`, `RP^1` is isotopic to `T^1` and has two.
pub fn maslov_two_disks_rp(k: u32) -> u32 {
    if k + 1 == 2 {
        2
    } else {
        0
    }
}

/// Disk-bubbling count `Φ_RP(p) + Φ_T(p)` together with a direct check that
/// `∂² = (Φ mod 2) · Id` as matrices.
pub fn obstruction(k: u32) -> Result<ObstructionReport> {
    check_matrix_k(k)?;
    let base = PointCode::new_unchecked(k, 0);
    let phi_rp = maslov_two_disks_rp(k);
    let phi_t = disks::maslov_two_disks_through(base)? as u32;
    let d = boundary_matrix(k)?;
    let square = d.mul(&d)?;
    let expected = if (phi_rp + phi_t) % 2 == 1 {
        BitMatrix::identity(d.rows())
    } else {
        BitMatrix::zeros(d.rows(), d.cols())
    };
    Ok(ObstructionReport {
        k,
        phi_rp,
        phi_t,
        square_is_zero: (phi_rp + phi_t).is_multiple_of(2),
        square_matches: square == expected,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HomologyReport {
    pub k: u32,
    pub rank: usize,
    pub hf_dim: usize,
}

/// `dim HF = 2^k − 2·rank ∂`, refused for even `k` where `∂² ≠ 0`.
pub fn homology(k: u32) -> Result<HomologyReport> {
    check_matrix_k(k)?;
    if k.is_multiple_of(2) {
        return Err(Error::Obstruction {
            k,
            square_parity: (k + 1) % 2,
        });
    }
    let rank = boundary_matrix(k)?.rank();
    Ok(HomologyReport {
        k,
        rank,
        hf_dim: (1usize << k) - 2 * rank,
    })
}

pub fn hf_dimension(k: u32) -> Result<usize> {
    homology(k).map(|h| h.hf_dim)
}
