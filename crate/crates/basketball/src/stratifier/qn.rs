//! The family `zⁿ − n r e^{iθ} z + c + di` and its singular locus.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::poly::{critical_data, ComplexPoly, RootConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QnLocus {
    /// `c = (n−1) r^{n/(n−1)} cos(nθ/(n−1))`, free `d`.
    RSingular,
    /// `d = (n−1) r^{n/(n−1)} sin(nθ/(n−1))`, free `c`.
    ISingular,
}

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Domain(format!("the family needs n ≥ 2, got {n}")));
    }
    Ok(())
}

/// The polynomial on the chosen sheet of the singular locus; `free` is `d`
/// for the `R` sheet and `c` for the `I` sheet.
pub fn qn_stratum(n: usize, r: f64, theta: f64, free: f64, locus: QnLocus) -> Result<ComplexPoly> {
    check_n(n)?;
    if !(r > 0.0) {
        return Err(Error::Domain(format!("r must be positive, got {r}")));
    }
    let nf = n as f64;
    let amp = (nf - 1.0) * r.powf(nf / (nf - 1.0));
    let phase = nf * theta / (nf - 1.0);
    let constant = match locus {
        QnLocus::RSingular => Complex64::new(amp * phase.cos(), free),
        QnLocus::ISingular => Complex64::new(free, amp * phase.sin()),
    };
    Ok(family(n, r, theta, constant))
}

fn family(n: usize, r: f64, theta: f64, constant: Complex64) -> ComplexPoly {
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
    coeffs[n] = Complex64::new(1.0, 0.0);
    coeffs[1] = -Complex64::from_polar(n as f64 * r, theta);
    coeffs[0] += constant;
    ComplexPoly::new(coeffs)
}

/// Critical values of `zⁿ − n r e^{iθ} z`: `−(n−1) r^{n/(n−1)} e^{i(nθ + 2kπ)/(n−1)}`.
pub fn qn_critical_values(n: usize, r: f64, theta: f64) -> Result<Vec<Complex64>> {
    check_n(n)?;
    let nf = n as f64;
    let amp = (nf - 1.0) * r.powf(nf / (nf - 1.0));
    Ok((0..n - 1)
        .map(|k| -Complex64::from_polar(amp, (nf * theta + 2.0 * PI * k as f64) / (nf - 1.0)))
        .collect())
}

/// Compares the closed form with computed critical values at random `(r, θ)`,
/// to `1e−9` relative.
pub fn qn_critical_values_check(n: usize, samples: usize, seed: u64) -> Result<bool> {
    check_n(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let r = rng.gen_range(0.1..2.0);
        let theta = rng.gen_range(0.0..2.0 * PI * (n - 1) as f64);
        let f = family(n, r, theta, Complex64::new(0.0, 0.0));
        let cd = critical_data(&f, 1e-9, &RootConfig::default())?;
        let closed = qn_critical_values(n, r, theta)?;
        let scale = closed.iter().map(|v| v.norm()).fold(1.0, f64::max);
        let mut remaining = closed.clone();
        for v in &cd.critical_values {
            let Some(pos) = remaining.iter().position(|u| (u - v).norm() <= 1e-9 * scale) else {
                return Ok(false);
            };
            remaining.swap_remove(pos);
        }
        if !remaining.is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether two of the real parts `c_k` coincide on the ray `θ = jπ/n`.
pub fn qn_self_intersection(n: usize, j: usize) -> Result<bool> {
    let vals = qn_critical_values(n, 1.0, j as f64 * PI / n as f64)?;
    Ok((0..vals.len()).any(|a| (a + 1..vals.len()).any(|b| (vals[a].re - vals[b].re).abs() < 1e-9)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_wall() {
        let f = qn_stratum(3, 1.0, 0.0, 0.0, QnLocus::RSingular).unwrap();
        let expected = [2.0, -3.0, 0.0, 1.0];
        for (k, e) in expected.iter().enumerate() {
            assert!((f.coeff(k) - Complex64::new(*e, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn closed_form() {
        let v = qn_critical_values(3, 1.0, 0.0).unwrap();
        assert!((v[0] + 2.0).norm() < 1e-12 && (v[1] - 2.0).norm() < 1e-12);
        for n in 2..=8 {
            assert!(qn_critical_values_check(n, 20, n as u64).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn strata_are_singular() {
        for n in 2..=6 {
            for (locus, pick) in [(QnLocus::RSingular, 0), (QnLocus::ISingular, 1)] {
                let f = qn_stratum(n, 0.8, 1.1, 0.3, locus).unwrap();
                let cd = critical_data(&f, 1e-9, &RootConfig::default()).unwrap();
                let hit = cd.cluster_values.iter().any(|v| if pick == 0 { v.re.abs() } else { v.im.abs() } < 1e-9);
                assert!(hit, "n = {n}, {locus:?}");
            }
        }
    }

    #[test]
    fn self_intersection_rays() {
        let odd: Vec<bool> = (0..6).map(|j| qn_self_intersection(3, j).unwrap()).collect();
        assert_eq!(odd, vec![false, true, false, true, false, true]);
        for n in 4..=8 {
            assert!((0..2 * n).all(|j| qn_self_intersection(n, j).unwrap()));
        }
    }
}
