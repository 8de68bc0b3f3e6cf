//! Volumes of `RP^{2n-1}` and the Clifford torus `T^{2n-1}` in `CP^{2n-1}`,
//! and the intersection-count lower bound for Hamiltonian images of the torus.

use std::f64::consts::PI;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};

fn check_n(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("n must be at least 1"));
    }
    Ok(())
}

/// `vol(RP^{2n−1}) = π^n/(n−1)!`, accumulated as `π · Π_{m=1}^{n−1} π/m`.
pub fn vol_rp(n: u32) -> Result<f64> {
    check_n(n)?;
    Ok((1..n).fold(PI, |acc, m| acc * PI / m as f64))
}

/// `vol(T^{2n−1}) = (1/2π)(2π/√(2n))^{2n} = (2π)^{2n−1}/(2n)^n`.
pub fn vol_torus(n: u32) -> Result<f64> {
    check_n(n)?;
    let step = 2.0 * PI / (2 * n) as f64;
    let acc = (0..n).fold(1.0, |acc, _| acc * step);
    Ok((1..n).fold(acc, |acc, _| acc * 2.0 * PI))
}

/// `vol(T^{2n−1})/vol(RP^{2n−1})` from the two volumes.
pub fn ratio(n: u32) -> Result<f64> {
    Ok(vol_torus(n)? / vol_rp(n)?)
}

/// `(2π)^{n−1}(n−1)!/n^n`, accumulated as `(1/n) Π_{m=1}^{n−1} 2πm/n`.
pub fn ratio_closed_form(n: u32) -> Result<f64> {
    check_n(n)?;
    let nf = n as f64;
    Ok((1..n).fold(1.0 / nf, |acc, m| acc * 2.0 * PI * m as f64 / nf))
}

/// `2^n/(2n)`, the lower bound on `vol(φ(T^{2n−1}))/vol(RP^{2n−1})`.
pub fn crofton_bound(n: u32) -> Result<Ratio<u128>> {
    check_n(n)?;
    if n > 126 {
        return Err(Error::Capacity { k: n, max: 126 });
    }
    Ok(Ratio::new(1u128 << n, 2 * n as u128))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableRow {
    pub n: u32,
    pub ratio: f64,
    pub bound: f64,
    /// The bound as an exact fraction `p/q`.
    pub bound_exact: String,
    pub active: bool,
}

/// One row per `n = 1..=n_max`; a row is active when the bound reaches the
/// torus ratio.
pub fn comparison_table(n_max: u32) -> Result<Vec<TableRow>> {
    check_n(n_max)?;
    (1..=n_max)
        .map(|n| {
            let bound = crofton_bound(n)?;
            let r = ratio(n)?;
            let bound_f = *bound.numer() as f64 / *bound.denom() as f64;
            Ok(TableRow {
                n,
                ratio: r,
                bound: bound_f,
                bound_exact: format!("{}/{}", bound.numer(), bound.denom()),
                active: bound_f >= r,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn volume_examples() {
        assert_eq!(vol_rp(1).unwrap(), PI);
        assert!((vol_rp(2).unwrap() - PI * PI).abs() < 1e-14);
        assert!((vol_rp(3).unwrap() - PI.powi(3) / 2.0).abs() < 1e-13);
        assert_eq!(vol_torus(1).unwrap(), PI);
        assert!((vol_torus(2).unwrap() - PI.powi(3) / 2.0).abs() < 1e-13);
        assert!(vol_rp(0).is_err());
    }

    #[test]
    fn torus_matches_literal_formula() {
        for n in 1..=20u32 {
            let literal = (2.0 * PI / (2.0 * n as f64).sqrt()).powi(2 * n as i32) / (2.0 * PI);
            let v = vol_torus(n).unwrap();
            assert!(((v - literal) / literal).abs() < 1e-12, "n={n}");
        }
    }

    #[test]
    fn ratio_closed_form_agrees() {
        assert_eq!(ratio(1).unwrap(), 1.0);
        assert!((ratio(2).unwrap() - PI / 2.0).abs() < 1e-12);
        for n in 1..=20 {
            let a = ratio(n).unwrap();
            let b = ratio_closed_form(n).unwrap();
            assert!(((a - b) / b).abs() < 1e-12);
        }
    }

    #[test]
    fn bounds() {
        assert_eq!(crofton_bound(1).unwrap(), Ratio::from_integer(1));
        assert_eq!(crofton_bound(2).unwrap(), Ratio::from_integer(1));
        assert_eq!(crofton_bound(5).unwrap(), Ratio::new(16, 5));
    }

    #[test]
    fn only_first_row_active() {
        let table = comparison_table(10).unwrap();
        let active: Vec<u32> = table.iter().filter(|r| r.active).map(|r| r.n).collect();
        assert_eq!(active, vec![1]);
        assert_eq!(table[1].bound_exact, "1/1");
    }
}
