//! Holomorphic disks with boundary on the Clifford torus.
//!
//! Every such disk is `z ↦ [w_0(z):⋯:w_k(z)]` with each `w_i` a finite
//! Blaschke product, and its Maslov index is twice the total degree. The
//! module builds these disks, enumerates the isolated strips out of an
//! intersection point, measures Maslov indices by boundary winding and
//! integrates the Fubini–Study energy, normalized so a projective line has
//! area `π`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::signvec::PointCode;

/// Slack allowed on `|z| <= 1` for points computed on the unit circle.
const CIRCLE_SLACK: f64 = 1e-12;

/// Finite Blaschke product `e^{iθ} Π (z − α)/(1 − ᾱz)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlaschkeFactor {
    pub theta: f64,
    #[serde(serialize_with = "serialize_zeros")]
    pub zeros: Vec<Complex64>,
}

fn serialize_zeros<S: serde::Serializer>(zeros: &[Complex64], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(zeros.len()))?;
    for z in zeros {
        seq.serialize_element(&[z.re, z.im])?;
    }
    seq.end()
}

impl BlaschkeFactor {
    pub fn constant(theta: f64) -> Self {
        BlaschkeFactor { theta, zeros: Vec::new() }
    }

    /// The unit `±1`.
    pub fn sign(s: i8) -> Self {
        Self::constant(if s < 0 { PI } else { 0.0 })
    }

    /// `±z`.
    pub fn signed_z(s: i8) -> Self {
        BlaschkeFactor {
            theta: if s < 0 { PI } else { 0.0 },
            zeros: vec![Complex64::new(0.0, 0.0)],
        }
    }

    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    pub fn value(&self, z: Complex64) -> Complex64 {
        self.zeros
            .iter()
            .fold(Complex64::cis(self.theta), |acc, a| acc * (z - a) / (1.0 - a.conj() * z))
    }

    /// Value and derivative, the latter by the product rule.
    pub fn value_and_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut w = Complex64::cis(self.theta);
        let mut dw = Complex64::new(0.0, 0.0);
        for a in &self.zeros {
            let denom = 1.0 - a.conj() * z;
            let b = (z - a) / denom;
            let db = (1.0 - a.norm_sqr()) / (denom * denom);
            dw = dw * b + w * db;
            w *= b;
        }
        (w, dw)
    }
}

/// A holomorphic map `D² → CP^k` with boundary on `T^k`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlaschkeDisk {
    k: u32,
    coords: Vec<BlaschkeFactor>,
}

impl BlaschkeDisk {
    pub fn new(coords: Vec<BlaschkeFactor>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::UnsupportedDimension {
                k: coords.len().saturating_sub(1) as u32,
                reason: "a disk in CP^k needs k >= 1",
            });
        }
        for c in &coords {
            if let Some(a) = c.zeros.iter().find(|a| a.norm() >= 1.0) {
                return Err(Error::ZeroOutsideDisk(a.norm()));
            }
        }
        let shared = coords[0]
            .zeros
            .iter()
            .any(|a| coords[1..].iter().all(|c| c.zeros.iter().any(|b| (a - b).norm() < 1e-12)));
        if shared {
            return Err(Error::CommonZero);
        }
        Ok(BlaschkeDisk {
            k: coords.len() as u32 - 1,
            coords,
        })
    }

    /// The constant disk at `[1:⋯:1]`.
    pub fn constant(k: u32) -> Result<Self> {
        Self::new((0..=k).map(|_| BlaschkeFactor::constant(0.0)).collect())
    }

    /// `[z^d:1:⋯:1]`.
    pub fn power(k: u32, degree: usize) -> Result<Self> {
        let mut coords: Vec<_> = (0..=k).map(|_| BlaschkeFactor::constant(0.0)).collect();
        coords[0].zeros = vec![Complex64::new(0.0, 0.0); degree];
        Self::new(coords)
    }

    /// A disk with the given per-coordinate degrees, zeros drawn uniformly
    /// from the disk of radius `max_radius` and uniform phases.
    pub fn random<R: Rng>(degrees: &[usize], max_radius: f64, rng: &mut R) -> Result<Self> {
        if !(0.0..1.0).contains(&max_radius) {
            return Err(Error::ZeroOutsideDisk(max_radius));
        }
        let coords = degrees
            .iter()
            .map(|&d| BlaschkeFactor {
                theta: rng.gen_range(0.0..TAU),
                zeros: (0..d)
                    .map(|_| Complex64::from_polar(max_radius * rng.gen::<f64>().sqrt(), rng.gen_range(0.0..TAU)))
                    .collect(),
            })
            .collect();
        Self::new(coords)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn coordinates(&self) -> &[BlaschkeFactor] {
        &self.coords
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.coords.iter().map(BlaschkeFactor::degree).collect()
    }

    pub fn total_degree(&self) -> usize {
        self.coords.iter().map(BlaschkeFactor::degree).sum()
    }

    /// `2·Σμ_i`.
    pub fn maslov(&self) -> usize {
        2 * self.total_degree()
    }

    fn check_point(z: Complex64) -> Result<()> {
        let r = z.norm();
        if r > 1.0 + CIRCLE_SLACK || !r.is_finite() {
            return Err(Error::OutsideDisk(r));
        }
        Ok(())
    }

    /// Raw homogeneous coordinates `(w_0(z), …, w_k(z))`.
    pub fn raw(&self, z: Complex64) -> Result<Vec<Complex64>> {
        Self::check_point(z)?;
        Ok(self.coords.iter().map(|c| c.value(z)).collect())
    }

    /// Homogeneous coordinates scaled to unit Euclidean norm.
    pub fn evaluate(&self, z: Complex64) -> Result<Vec<Complex64>> {
        let mut w = self.raw(z)?;
        let norm = w.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        for c in &mut w {
            *c /= norm;
        }
        Ok(w)
    }

    /// The intersection point hit at `z`, if the image there is a real point
    /// `[±1:⋯:±1]`.
    pub fn point_at(&self, z: Complex64) -> Result<PointCode> {
        let w = self.raw(z)?;
        let lead = w[0];
        let signs = w
            .iter()
            .map(|c| {
                let ratio = c / lead;
                if (ratio.norm() - 1.0).abs() > 1e-9 || ratio.im.abs() > 1e-9 {
                    Err(Error::Domain("image is not an intersection point"))
                } else {
                    Ok(if ratio.re > 0.0 { 1 } else { -1 })
                }
            })
            .collect::<Result<Vec<i8>>>()?;
        PointCode::canonicalize(self.k, &signs)
    }

    /// Energy density `ω(∂_x u, ∂_y u)` at an interior point.
    fn energy_density(&self, z: Complex64) -> f64 {
        let mut norm_w = 0.0;
        let mut norm_dw = 0.0;
        let mut inner = Complex64::new(0.0, 0.0);
        for c in &self.coords {
            let (w, dw) = c.value_and_derivative(z);
            norm_w += w.norm_sqr();
            norm_dw += dw.norm_sqr();
            inner += dw * w.conj();
        }
        (norm_w * norm_dw - inner.norm_sqr()) / (norm_w * norm_w)
    }
}

/// The `k+1` isolated strips leaving `p`: strip `i` replaces homogeneous
/// coordinate `i` by `−ε_i z`. It passes through `p` at `z = −1` and through
/// `flip(p, i)` at `z = +1`; the strip itself is the upper half of the disk.
pub fn isolated_strips(p: PointCode) -> Vec<BlaschkeDisk> {
    let signs = p.signs();
    (0..signs.len())
        .map(|i| {
            let coords = signs
                .iter()
                .enumerate()
                .map(|(j, &s)| if j == i { BlaschkeFactor::signed_z(-s) } else { BlaschkeFactor::sign(s) })
                .collect();
            BlaschkeDisk::new(coords).expect("strip disks have a single zero")
        })
        .collect()
}

/// Start and end intersection points of a strip, at `z = −1` and `z = +1`.
pub fn strip_endpoints(d: &BlaschkeDisk) -> Result<(PointCode, PointCode)> {
    Ok((d.point_at(Complex64::new(-1.0, 0.0))?, d.point_at(Complex64::new(1.0, 0.0))?))
}

/// Number of Maslov-2 disks with boundary on `T^k` through `p`: the `k+1`
/// disks with coordinate `i` replaced by `ε_i z`, each checked to pass
/// through `p` at `z = 1` with Maslov index 2.
pub fn maslov_two_disks_through(p: PointCode) -> Result<usize> {
    let signs = p.signs();
    let one = Complex64::new(1.0, 0.0);
    let mut count = 0;
    for i in 0..signs.len() {
        let coords = signs
            .iter()
            .enumerate()
            .map(|(j, &s)| if j == i { BlaschkeFactor::signed_z(s) } else { BlaschkeFactor::sign(s) })
            .collect();
        let d = BlaschkeDisk::new(coords)?;
        if d.point_at(one)? != p || d.maslov() != 2 {
            return Err(Error::Domain("Maslov-2 disk misses its base point"));
        }
        count += 1;
    }
    Ok(count)
}

/// Most samples the winding computation will refine to.
pub const MAX_WINDING_SAMPLES: usize = 1 << 22;

/// Accumulated boundary argument and the largest single step.
fn total_argument(f: &BlaschkeFactor, samples: usize) -> (f64, f64) {
    let mut total = 0.0;
    let mut worst: f64 = 0.0;
    let mut prev = f.value(Complex64::new(1.0, 0.0));
    for j in 1..=samples {
        let cur = f.value(Complex64::cis(TAU * j as f64 / samples as f64));
        let step = (cur / prev).arg();
        worst = worst.max(step.abs());
        total += step;
        prev = cur;
    }
    (total, worst)
}

/// Maslov index from boundary winding: twice the summed winding numbers of
/// the coordinates around `|z| = 1`. Sampling doubles while some argument
/// step exceeds `π/2`.
pub fn winding_maslov(d: &BlaschkeDisk, samples: usize) -> Result<i64> {
    if samples < 64 {
        return Err(Error::Resolution { step: TAU, samples });
    }
    let mut windings = 0i64;
    for f in &d.coords {
        let mut n = samples;
        let total = loop {
            let (total, step) = total_argument(f, n);
            if step <= PI / 2.0 {
                break total;
            }
            if n >= MAX_WINDING_SAMPLES {
                if step >= PI {
                    return Err(Error::Resolution { step, samples: n });
                }
                break total;
            }
            n *= 2;
        };
        windings += (total / TAU).round() as i64;
    }
    Ok(2 * windings)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    FullDisk,
    UpperHalf,
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for m in 2..=n {
                let p2 = ((2 * m - 1) as f64 * x * p1 - (m - 1) as f64 * p0) / m as f64;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 0 { 1.0 } else if n == 1 { x } else { p1 };
            let pn1 = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * pn - pn1) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn quadrature(d: &BlaschkeDisk, region: Region, grid: usize) -> f64 {
    let (span, phi_nodes) = match region {
        Region::FullDisk => (TAU, 2 * grid),
        Region::UpperHalf => (PI, grid),
    };
    let (xr, wr) = gauss_legendre(grid);
    let (xp, wp) = gauss_legendre(phi_nodes);
    let rows: Vec<f64> = xr
        .par_iter()
        .zip(wr.par_iter())
        .map(|(&x, &w)| {
            let r = 0.5 * (x + 1.0);
            let inner: f64 = xp
                .iter()
                .zip(&wp)
                .map(|(&y, &v)| v * d.energy_density(Complex64::from_polar(r, 0.5 * span * (y + 1.0))))
                .sum();
            w * r * inner
        })
        .collect();
    rows.iter().sum::<f64>() * 0.5 * 0.5 * span
}

/// Fubini–Study energy over the chosen region, computed at `grid` and
/// `2·grid` radial nodes; the finer value is returned if the two agree to
/// a relative `1e-4`.
pub fn energy(d: &BlaschkeDisk, region: Region, grid: usize) -> Result<f64> {
    if grid < 16 {
        return Err(Error::Accuracy { change: f64::INFINITY, grid });
    }
    let coarse = quadrature(d, region, grid);
    let fine = quadrature(d, region, 2 * grid);
    let change = if fine == 0.0 { (fine - coarse).abs() } else { ((fine - coarse) / fine).abs() };
    if change > 1e-4 || !fine.is_finite() {
        return Err(Error::Accuracy { change, grid });
    }
    Ok(fine)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn constant_disk_is_base_point() {
        let d = BlaschkeDisk::constant(3).unwrap();
        let w = d.evaluate(c(0.3, -0.2)).unwrap();
        for x in &w {
            assert!((x - c(0.5, 0.0)).norm() < 1e-15);
        }
        assert_eq!(d.point_at(c(0.0, 0.0)).unwrap().mask(), 0);
    }

    #[test]
    fn evaluate_rejects_outside_points() {
        let d = BlaschkeDisk::constant(2).unwrap();
        assert!(matches!(d.evaluate(c(1.1, 0.0)), Err(Error::OutsideDisk(_))));
        assert!(d.evaluate(Complex64::cis(0.7)).is_ok());
    }

    #[test]
    fn invariants_enforced() {
        let bad = BlaschkeFactor {
            theta: 0.0,
            zeros: vec![c(1.0, 0.0)],
        };
        assert!(matches!(
            BlaschkeDisk::new(vec![bad, BlaschkeFactor::constant(0.0)]),
            Err(Error::ZeroOutsideDisk(_))
        ));
        let z = BlaschkeFactor::signed_z(1);
        assert!(matches!(BlaschkeDisk::new(vec![z.clone(), z]), Err(Error::CommonZero)));
    }

    #[test]
    fn leading_coordinate_minus_z() {
        let mut coords: Vec<_> = (0..4).map(|_| BlaschkeFactor::constant(0.0)).collect();
        coords[0] = BlaschkeFactor {
            theta: PI,
            zeros: vec![c(0.0, 0.0)],
        };
        let d = BlaschkeDisk::new(coords).unwrap();
        for j in 0..16 {
            let z = Complex64::cis(j as f64 * 0.4);
            let w = d.raw(z).unwrap();
            assert!((w[0] + z).norm() < 1e-15);
            assert!((w[0].norm() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn boundary_lies_on_torus() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let d = BlaschkeDisk::random(&[2, 1, 0, 3], 0.95, &mut rng).unwrap();
            let mut worst: f64 = 0.0;
            for j in 0..256 {
                let w = d.raw(Complex64::cis(TAU * j as f64 / 256.0)).unwrap();
                for x in &w {
                    worst = worst.max((x.norm() - w[0].norm()).abs());
                }
            }
            assert!(worst < 1e-12, "{worst}");
        }
    }

    #[test]
    fn derivative_matches_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let h = 1e-6;
        for _ in 0..200 {
            let d = BlaschkeDisk::random(&[3, 2], 0.8, &mut rng).unwrap();
            let z = Complex64::from_polar(0.7 * rng.gen::<f64>(), rng.gen_range(0.0..TAU));
            for f in d.coordinates() {
                let (_, dw) = f.value_and_derivative(z);
                let fd = (f.value(z + h) - f.value(z - h)) / (2.0 * h);
                assert!((dw - fd).norm() < 1e-6 * (1.0 + dw.norm()), "{dw} {fd}");
            }
        }
    }

    #[test]
    fn strips_from_base_point() {
        let p = PointCode::from_mask(3, 0).unwrap();
        let strips = isolated_strips(p);
        assert_eq!(strips.len(), 4);
        let (start, end) = strip_endpoints(&strips[1]).unwrap();
        assert_eq!(start, p);
        assert_eq!(end, p.flip(1).unwrap());
        assert!(strips.iter().all(|d| d.total_degree() == 1 && d.maslov() == 2));
    }

    #[test]
    fn strip_endpoints_reproduce_boundary() {
        for k in 1..=7 {
            for p in PointCode::all(k).unwrap() {
                let mut ends = crate::gf2::Chain::zero(k);
                for (i, d) in isolated_strips(p).iter().enumerate() {
                    let (start, end) = strip_endpoints(d).unwrap();
                    assert_eq!(start, p);
                    assert_eq!(end, p.flip(i as u32).unwrap());
                    ends.toggle(end);
                }
                assert_eq!(ends, complex::boundary_image(p));
            }
        }
    }

    #[test]
    fn maslov_two_counts() {
        for k in 1..=6 {
            for p in PointCode::all(k).unwrap() {
                assert_eq!(maslov_two_disks_through(p).unwrap(), k as usize + 1);
            }
        }
    }

    #[test]
    fn winding_examples() {
        assert_eq!(winding_maslov(&BlaschkeDisk::constant(3).unwrap(), 64).unwrap(), 0);
        assert_eq!(winding_maslov(&BlaschkeDisk::power(1, 1).unwrap(), 64).unwrap(), 2);
        assert!(winding_maslov(&BlaschkeDisk::power(1, 1).unwrap(), 10).is_err());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let d = BlaschkeDisk::random(&[2, 1, 0, 3], 0.9, &mut rng).unwrap();
        assert_eq!(winding_maslov(&d, 4096).unwrap(), 12);
    }

    #[test]
    fn winding_refines_near_boundary_zeros() {
        let f = BlaschkeFactor {
            theta: 0.0,
            zeros: vec![c(0.999, 0.0)],
        };
        let d = BlaschkeDisk::new(vec![f, BlaschkeFactor::constant(0.0)]).unwrap();
        assert_eq!(winding_maslov(&d, 64).unwrap(), 2);
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let (x, w) = gauss_legendre(8);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        // Exact for degree 15.
        let integral: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(14)).sum();
        assert!((integral - 2.0 / 15.0).abs() < 1e-14);
    }

    #[test]
    fn line_disk_energy() {
        let d = BlaschkeDisk::power(1, 1).unwrap();
        let e = energy(&d, Region::FullDisk, 32).unwrap();
        assert!((e - PI / 2.0).abs() < 1e-10, "{e}");
        for k in [2u32, 3, 5] {
            let e = energy(&BlaschkeDisk::power(k, 1).unwrap(), Region::FullDisk, 32).unwrap();
            assert!((e - PI / (k as f64 + 1.0)).abs() < 1e-10);
        }
    }

    #[test]
    fn degree_scales_energy() {
        let one = energy(&BlaschkeDisk::power(3, 1).unwrap(), Region::FullDisk, 32).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for degrees in [[2usize, 0, 0, 0], [1, 1, 0, 0], [0, 2, 1, 0]] {
            let d = BlaschkeDisk::random(&degrees, 0.6, &mut rng).unwrap();
            let e = energy(&d, Region::FullDisk, 48).unwrap();
            let expected = d.total_degree() as f64 * one;
            assert!(((e - expected) / expected).abs() < 1e-6, "{degrees:?}: {e} vs {expected}");
        }
    }

    #[test]
    fn coarse_grid_rejected() {
        assert!(matches!(
            energy(&BlaschkeDisk::power(1, 1).unwrap(), Region::FullDisk, 8),
            Err(Error::Accuracy { .. })
        ));
    }
}
