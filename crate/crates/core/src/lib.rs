//! Floer homology of real projective space and the Clifford torus in `CP^k`.
//!
//! Intersection points are sign vectors ([`signvec`]), chains are GF(2)
//! bitsets ([`gf2`]). [`complex`] builds the differential and its square,
//! [`induction`] checks the recursion relating dimensions `2n−1` and `2n+1`,
//! [`novikov`] redoes the computation over `Z₂((e))` with gradings and
//! actions, [`disks`] constructs the holomorphic disks and strips behind the
//! differential, and [`volume`] tabulates the resulting volume bounds.

pub mod complex;
pub mod disks;
pub mod error;
pub mod gf2;
pub mod induction;
pub mod novikov;
pub mod signvec;
pub mod volume;

pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVec, Chain};
pub use signvec::{Parity, PointCode};
