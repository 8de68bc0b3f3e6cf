//! Inductive step from `CF(n)` to `CF(N)`, `N = n + 1`.
//!
//! `CF(n)` is the complex for `k = 2n − 1`. A generator of `CF(N)` is written
//! `(ε₁, ε₂, y)` with `y` a generator of `CF(n)`; in mask form `ε₁` and `ε₂`
//! are bits 0 and 1 and `y` occupies the higher bits. The projection `π`
//! drops the first two coordinates.

use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{self, boundary, boundary_tilde_chain, eta_chain};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec, Chain};
use crate::signvec::PointCode;

/// Number of tail coordinates of `CF(n)`.
pub fn tail_dim(n: u32) -> u32 {
    2 * n - 1
}

#[inline]
fn sign_bit(s: i8) -> u64 {
    if s < 0 {
        1
    } else {
        0
    }
}

/// `π`: delete the first two tail coordinates, summing mod 2.
pub fn project(x: &Chain) -> Result<Chain> {
    if x.k() < 3 || x.k().is_multiple_of(2) {
        return Err(Error::UnsupportedDimension {
            k: x.k(),
            reason: "projection needs a chain of CF(N), N >= 2",
        });
    }
    let k = x.k() - 2;
    Ok(Chain::from_points(
        k,
        x.points().map(|p| PointCode::new_unchecked(k, p.mask() >> 2)),
    ))
}

/// `(s1, s2, y)`: prefix every generator of `y` with the two given signs.
pub fn embed(s1: i8, s2: i8, y: &Chain) -> Chain {
    let k = y.k() + 2;
    let prefix = sign_bit(s1) | sign_bit(s2) << 1;
    Chain::from_points(
        k,
        y.points().map(|p| PointCode::new_unchecked(k, prefix | p.mask() << 2)),
    )
}

/// The part of `x` whose first two coordinates are `(s1, s2)`, with those
/// coordinates removed.
pub fn block(x: &Chain, s1: i8, s2: i8) -> Chain {
    let k = x.k() - 2;
    let prefix = sign_bit(s1) | sign_bit(s2) << 1;
    Chain::from_points(
        k,
        x.points()
            .filter(|p| p.mask() & 0b11 == prefix)
            .map(|p| PointCode::new_unchecked(k, p.mask() >> 2)),
    )
}

/// The data `(u, v, w, t)` of the normal form
/// `x = (1,1,u)+(−1,−1,u)+(−1,1,v)+(1,−1,v)+(1,1,w)+(−1,1,w)+(1,1,t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quadruple {
    pub u: Chain,
    pub v: Chain,
    pub w: Chain,
    pub t: Chain,
}

impl Quadruple {
    pub fn zero(k: u32) -> Self {
        Quadruple {
            u: Chain::zero(k),
            v: Chain::zero(k),
            w: Chain::zero(k),
            t: Chain::zero(k),
        }
    }

    fn k(&self) -> u32 {
        self.u.k()
    }

    /// The chain `x(u, v, w, t)` in `CF(N)`.
    pub fn rebuild(&self) -> Chain {
        let mut x = embed(1, 1, &self.u);
        x += &embed(-1, -1, &self.u);
        x += &embed(-1, 1, &self.v);
        x += &embed(1, -1, &self.v);
        x += &embed(1, 1, &self.w);
        x += &embed(-1, 1, &self.w);
        x += &embed(1, 1, &self.t);
        x
    }
}

/// Unique normal-form data of `x ∈ π⁻¹(Ker ∂_n)`.
///
/// Reading off the blocks: `u = x(−,−)`, `v = x(+,−)`, `w = x(−,+) + v`,
/// `t = x(+,+) + u + w`.
pub fn decompose(x: &Chain) -> Result<Quadruple> {
    let projected = project(x)?;
    if !boundary(&projected).is_zero() {
        return Err(Error::NotInPreimage);
    }
    let u = block(x, -1, -1);
    let v = block(x, 1, -1);
    let w = &block(x, -1, 1) + &v;
    let t = &(&block(x, 1, 1) + &u) + &w;
    let q = Quadruple { u, v, w, t };
    assert_eq!(&q.rebuild(), x, "normal form does not rebuild its input");
    assert!(boundary(&q.t).is_zero(), "t must be a cycle");
    Ok(q)
}

/// `∂v = w + t + ηw`, `∂u = w + ηt + ηw`, `∂w = 0`.
pub fn check_cycle_relations(q: &Quadruple) -> bool {
    let (u, v, w, t) = (&q.u, &q.v, &q.w, &q.t);
    let eta_w = eta_chain(w);
    let rel_v = &(w + t) + &eta_w;
    let rel_u = &(w + &eta_chain(t)) + &eta_w;
    boundary(v) == rel_v && boundary(u) == rel_u && boundary(w).is_zero()
}

/// The four block equations obtained by collecting the terms of `∂_N x`
/// that start with `(−1,1)`, `(1,−1)`, `(1,1)` and `(−1,−1)`.
pub fn check_block_relations(q: &Quadruple) -> bool {
    let (u, v, w, t) = (&q.u, &q.v, &q.w, &q.t);
    let sum = |terms: &[Chain]| {
        terms
            .iter()
            .fold(Chain::zero(q.k()), |acc, c| &acc + c)
    };
    let tw = boundary_tilde_chain(w);
    let tv = boundary_tilde_chain(v);
    let tu = boundary_tilde_chain(u);
    let (ew, ev, eu) = (eta_chain(w), eta_chain(v), eta_chain(u));
    let first = sum(&[tw.clone(), w.clone(), tv.clone(), ev.clone(), t.clone()]);
    let second = sum(&[ew.clone(), w.clone(), ev, tv, t.clone()]);
    let third = sum(&[w.clone(), tw, eu.clone(), tu.clone(), boundary_tilde_chain(t)]);
    let fourth = sum(&[w.clone(), ew, tu, eu, eta_chain(t)]);
    first.is_zero() && second.is_zero() && third.is_zero() && fourth.is_zero()
}

/// `α(u, v, w, t) = (∂ηu + ∂v, ∂ηu + w + t + ηw)`, defined on
/// `CF(n) ⊕ CF(n) ⊕ Ker ∂_n ⊕ Ker ∂_n`.
pub fn alpha(q: &Quadruple) -> Result<(Chain, Chain)> {
    if !boundary(&q.w).is_zero() {
        return Err(Error::Domain("w must satisfy dw = 0"));
    }
    if !boundary(&q.t).is_zero() {
        return Err(Error::Domain("t must satisfy dt = 0"));
    }
    Ok(alpha_unchecked(q))
}

fn alpha_unchecked(q: &Quadruple) -> (Chain, Chain) {
    let d_eta_u = boundary(&eta_chain(&q.u));
    let first = &d_eta_u + &boundary(&q.v);
    let second = &(&(&d_eta_u + &q.w) + &q.t) + &eta_chain(&q.w);
    (first, second)
}

/// Dimension ledger of the inductive step, every number from an
/// independent rank computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecursionReport {
    pub n: u32,
    #[serde(rename = "N")]
    pub big_n: u32,
    pub dim_cf_n: usize,
    pub dim_cf_big: usize,
    pub hf_n: usize,
    pub rank_alpha: usize,
    pub alpha_onto: bool,
    pub dim_ker_alpha: usize,
    /// `½ dim CF(N) + dim HF(n)`.
    pub predicted_ker_alpha: usize,
    pub dim_ker_boundary_big: usize,
    pub hf_big: usize,
    pub holds: bool,
}

/// Largest `n` accepted by [`recursion_check`] (`CF(N)` then has `k = 13`).
pub const MAX_RECURSION_N: u32 = 6;

pub fn recursion_check(n: u32) -> Result<RecursionReport> {
    if n == 0 || n > MAX_RECURSION_N {
        return Err(Error::UnsupportedDimension {
            k: n,
            reason: "recursion check needs 1 <= n <= 6",
        });
    }
    let kn = tail_dim(n);
    let k_big = tail_dim(n + 1);
    let dim_cf_n = 1usize << kn;
    let dim_cf_big = 1usize << k_big;

    let d_n = complex::boundary_matrix(kn)?;
    let rank_n = d_n.rank();
    let hf_n = dim_cf_n - 2 * rank_n;
    let ker_n = d_n.kernel_basis();

    // Columns of α: the standard basis in the u and v slots, a kernel basis
    // in the w and t slots. Rows: both output components stacked.
    let to_chain = |bits: &BitVec| Chain::from_bitvec(kn, bits.clone()).expect("kernel vector length");
    let gens: Vec<Chain> = PointCode::all(kn)?.map(Chain::generator).collect();
    let kers: Vec<Chain> = ker_n.iter().map(to_chain).collect();
    let mut domain = Vec::with_capacity(2 * gens.len() + 2 * kers.len());
    for g in &gens {
        domain.push(Quadruple { u: g.clone(), ..Quadruple::zero(kn) });
    }
    for g in &gens {
        domain.push(Quadruple { v: g.clone(), ..Quadruple::zero(kn) });
    }
    for b in &kers {
        domain.push(Quadruple { w: b.clone(), ..Quadruple::zero(kn) });
    }
    for b in &kers {
        domain.push(Quadruple { t: b.clone(), ..Quadruple::zero(kn) });
    }
    let columns: Vec<BitVec> = domain
        .par_iter()
        .map(|q| {
            let (a, b) = alpha_unchecked(q);
            BitVec::from_ones(
                2 * dim_cf_n,
                a.bits().iter_ones().chain(b.bits().iter_ones().map(|i| i + dim_cf_n)),
            )
        })
        .collect();
    let alpha_matrix = BitMatrix::from_columns(2 * dim_cf_n, &columns)?;
    let rank_alpha = alpha_matrix.rank();
    let dim_ker_alpha = domain.len() - rank_alpha;
    // Im ∂_n ⊕ Ker ∂_n has dimension rank_n + (dim_cf_n − rank_n).
    let alpha_onto = rank_alpha == dim_cf_n;

    let rank_big = complex::boundary_matrix(k_big)?.rank();
    let dim_ker_boundary_big = dim_cf_big - rank_big;
    let hf_big = dim_cf_big - 2 * rank_big;
    let predicted_ker_alpha = dim_cf_big / 2 + hf_n;

    Ok(RecursionReport {
        n,
        big_n: n + 1,
        dim_cf_n,
        dim_cf_big,
        hf_n,
        rank_alpha,
        alpha_onto,
        dim_ker_alpha,
        predicted_ker_alpha,
        dim_ker_boundary_big,
        hf_big,
        holds: alpha_onto
            && dim_ker_alpha == predicted_ker_alpha
            && dim_ker_boundary_big == dim_ker_alpha
            && hf_big == 2 * hf_n,
    })
}

/// Word-packed copy of the complex for `2^k <= 64`, used by the exhaustive
/// checks. Chains are `u64` masks over generator indices.
#[derive(Debug, Clone)]
pub struct SmallComplex {
    k: u32,
    boundary_gen: Vec<u64>,
    tilde_gen: Vec<u64>,
    eta_gen: Vec<u64>,
}

impl SmallComplex {
    pub fn new(k: u32) -> Result<Self> {
        if k == 0 || k > 6 {
            return Err(Error::UnsupportedDimension {
                k,
                reason: "packed complex needs 1 <= k <= 6",
            });
        }
        let word = |c: Chain| c.bits().words()[0];
        let points: Vec<PointCode> = PointCode::all(k)?.collect();
        Ok(SmallComplex {
            k,
            boundary_gen: points.iter().map(|&p| word(complex::boundary_image(p))).collect(),
            tilde_gen: points.iter().map(|&p| word(complex::boundary_tilde(p))).collect(),
            eta_gen: points.iter().map(|&p| word(complex::eta(p))).collect(),
        })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn chain_count(&self) -> u64 {
        1u64.checked_shl(1 << self.k).unwrap_or(0)
    }

    #[inline]
    fn apply(table: &[u64], mut x: u64) -> u64 {
        let mut out = 0;
        while x != 0 {
            out ^= table[x.trailing_zeros() as usize];
            x &= x - 1;
        }
        out
    }

    #[inline]
    pub fn boundary(&self, x: u64) -> u64 {
        Self::apply(&self.boundary_gen, x)
    }

    #[inline]
    pub fn tilde(&self, x: u64) -> u64 {
        Self::apply(&self.tilde_gen, x)
    }

    #[inline]
    pub fn eta(&self, x: u64) -> u64 {
        Self::apply(&self.eta_gen, x)
    }

    /// All cycles, by enumeration. Only for `2^k <= 16`.
    pub fn cycles(&self) -> Vec<u64> {
        assert!(self.k <= 4, "cycle enumeration needs 2^k <= 16");
        (0..self.chain_count()).filter(|&x| self.boundary(x) == 0).collect()
    }

    #[inline]
    pub fn alpha(&self, u: u64, v: u64, w: u64, t: u64) -> (u64, u64) {
        let d_eta_u = self.boundary(self.eta(u));
        (d_eta_u ^ self.boundary(v), d_eta_u ^ w ^ t ^ self.eta(w))
    }

    #[inline]
    pub fn relations(&self, u: u64, v: u64, w: u64, t: u64) -> bool {
        let ew = self.eta(w);
        self.boundary(v) == w ^ t ^ ew && self.boundary(u) == w ^ self.eta(t) ^ ew && self.boundary(w) == 0
    }
}

/// Outcome of the exhaustive comparison of `Ker α` with the solution set of
/// the cycle relations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AlphaKernelCheck {
    pub n: u32,
    pub domain_size: u64,
    pub kernel_size: u64,
    pub mismatches: u64,
}

/// Enumerates all of `CF(n)² ⊕ (Ker ∂_n)²` and compares `α = 0` with the
/// cycle relations pointwise. Feasible for `n <= 2`.
pub fn exhaustive_alpha_kernel(n: u32) -> Result<AlphaKernelCheck> {
    if n == 0 || n > 2 {
        return Err(Error::UnsupportedDimension {
            k: n,
            reason: "exhaustive alpha kernel check needs n <= 2",
        });
    }
    let c = SmallComplex::new(tail_dim(n))?;
    let cycles = c.cycles();
    let chains = c.chain_count();
    let (kernel_size, mismatches) = (0..chains)
        .into_par_iter()
        .map(|u| {
            let mut kernel = 0u64;
            let mut bad = 0u64;
            for v in 0..chains {
                for &w in &cycles {
                    for &t in &cycles {
                        let in_kernel = c.alpha(u, v, w, t) == (0, 0);
                        kernel += in_kernel as u64;
                        bad += (in_kernel != c.relations(u, v, w, t)) as u64;
                    }
                }
            }
            (kernel, bad)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    Ok(AlphaKernelCheck {
        n,
        domain_size: chains * chains * (cycles.len() as u64).pow(2),
        kernel_size,
        mismatches,
    })
}
