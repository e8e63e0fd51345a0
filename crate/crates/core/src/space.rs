//! The weighted Bergman space `A²_β` as a weighted `ℓ²` of Maclaurin
//! coefficients, with weight `w(n) = n!Γ(2+β)/Γ(n+2+β) = ‖zⁿ‖²`.
//!
//! `β = -1` is admitted and gives the Hardy space (all weights equal 1).

use std::sync::Arc;

use num_complex::Complex64;
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::series::{self, TruncatedSeries};

#[derive(Debug, Clone)]
pub struct SpaceParams {
    beta: f64,
    // filled at construction, read-only afterwards
    cache: Arc<[f64]>,
}

impl PartialEq for SpaceParams {
    fn eq(&self, other: &Self) -> bool {
        self.beta == other.beta
    }
}

impl SpaceParams {
    pub fn new(beta: f64) -> Result<Self> {
        Self::with_cache(beta, 0)
    }

    /// Precomputes `w(0..=max_degree)`.
    pub fn with_cache(beta: f64, max_degree: usize) -> Result<Self> {
        if !beta.is_finite() || beta < -1.0 {
            return Err(Error::InvalidBeta(beta));
        }
        let cache = (0..=max_degree).map(|n| compute_weight(beta, n)).collect();
        Ok(Self { beta, cache })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `2 + β` when it is a positive integer (`β ∈ {-1, 0, 1, …}`).
    pub fn integer_exponent(&self) -> Option<usize> {
        (self.beta.fract() == 0.0).then_some((self.beta + 2.0) as usize)
    }

    pub fn is_integer(&self) -> bool {
        self.integer_exponent().is_some()
    }

    pub fn weight(&self, n: usize) -> f64 {
        match self.cache.get(n) {
            Some(&w) => w,
            None => compute_weight(self.beta, n),
        }
    }

    pub fn weights(&self, degree: usize) -> Vec<f64> {
        (0..=degree).map(|n| self.weight(n)).collect()
    }

    pub fn inner_product(&self, f: &TruncatedSeries, g: &TruncatedSeries) -> Complex64 {
        let len = f.coeffs().len().min(g.coeffs().len());
        f.coeffs()[..len]
            .iter()
            .zip(&g.coeffs()[..len])
            .enumerate()
            .map(|(n, (a, b))| a * b.conj() * self.weight(n))
            .sum()
    }

    pub fn norm(&self, f: &TruncatedSeries) -> f64 {
        f.coeffs()
            .iter()
            .enumerate()
            .map(|(n, a)| a.norm_sqr() * self.weight(n))
            .sum::<f64>()
            .sqrt()
    }

    /// `K_α(z) = (1 - ᾱz)^{-(2+β)}`, coefficient `n` equal to `ᾱⁿ/w(n)`.
    pub fn kernel_series(&self, alpha: Complex64, degree: usize) -> Result<TruncatedSeries> {
        check_disk(alpha)?;
        Ok(series::binomial_expand(-alpha.conj(), -(2.0 + self.beta), degree))
    }

    /// Partial sums `S_N = Σ_{n ≤ N} 1/w(n)`, i.e. `Σ ‖K_0‖`-type growth of
    /// `Γ(n+2+β)/(Γ(2+β) n!)`. Entry `k` holds `S_k`.
    pub fn divergence_partial_sums(&self, n: usize) -> Vec<f64> {
        let mut acc = 0.0;
        (0..=n)
            .map(|k| {
                acc += 1.0 / self.weight(k);
                acc
            })
            .collect()
    }
}

/// Truncation degree for which the geometric kernel tail `|α|^D` drops below
/// `tol`.
pub fn suggested_kernel_degree(alpha: Complex64, tol: f64) -> usize {
    let r = alpha.norm();
    if r == 0.0 {
        return 0;
    }
    (tol.ln() / r.ln()).ceil().max(0.0) as usize
}

pub(crate) fn check_disk(alpha: Complex64) -> Result<()> {
    if alpha.norm() < 1.0 {
        Ok(())
    } else {
        Err(Error::ArgOutsideDisk(format!("alpha = {alpha}")))
    }
}

fn compute_weight(beta: f64, n: usize) -> f64 {
    if n == 0 {
        return 1.0;
    }
    if beta.fract() == 0.0 {
        // w(n) = 1 / C(n + β + 1, n)
        if let Some(b) = exact_binomial(n as u128 + (beta + 1.0) as u128, n as u128) {
            if b <= 1u128 << 53 {
                return 1.0 / b as f64;
            }
        }
    }
    let n = n as f64;
    (ln_gamma(n + 1.0) + ln_gamma(2.0 + beta) - ln_gamma(n + 2.0 + beta)).exp()
}

fn exact_binomial(top: u128, k: u128) -> Option<u128> {
    let k = k.min(top - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc·(top - i) is divisible by (i + 1)
        acc = acc.checked_mul(top - i)? / (i + 1);
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn weight_examples() {
        let a0 = SpaceParams::new(0.0).unwrap();
        assert_eq!(a0.weight(3), 0.25);
        let h2 = SpaceParams::new(-1.0).unwrap();
        assert!((0..50).all(|n| h2.weight(n) == 1.0));
        let a1 = SpaceParams::new(1.0).unwrap();
        assert_eq!(a1.weight(2), 1.0 / 6.0);
        assert_eq!(a0.weight(0), 1.0);
    }

    #[test]
    fn weights_decrease_for_beta_above_minus_one() {
        for beta in [-0.5, 0.0, 0.7, 2.0, 3.5] {
            let p = SpaceParams::new(beta).unwrap();
            let w = p.weights(200);
            assert!(w.windows(2).all(|x| x[1] < x[0] && x[1] > 0.0), "beta={beta}");
        }
    }

    #[test]
    fn non_integer_weight_by_gamma() {
        let p = SpaceParams::new(-0.5).unwrap();
        // w(1) = Γ(1.5)/Γ(2.5) = 1/1.5
        assert!((p.weight(1) - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn cached_and_uncached_agree() {
        let a = SpaceParams::with_cache(0.3, 64).unwrap();
        let b = SpaceParams::new(0.3).unwrap();
        assert!((0..80).all(|n| a.weight(n) == b.weight(n)));
    }

    #[test]
    fn invalid_beta() {
        assert_eq!(SpaceParams::new(-1.5), Err(Error::InvalidBeta(-1.5)));
    }

    #[test]
    fn monomials_orthogonal() {
        let p = SpaceParams::new(0.0).unwrap();
        let z2 = TruncatedSeries::monomial(2, 5);
        let z3 = TruncatedSeries::monomial(3, 5);
        assert_eq!(p.inner_product(&z2, &z3), c(0.0, 0.0));
        assert_eq!(p.inner_product(&z3, &z3), c(0.25, 0.0));
    }

    #[test]
    fn kernel_examples() {
        let p = SpaceParams::new(0.0).unwrap();
        let k0 = p.kernel_series(c(0.0, 0.0), 4).unwrap();
        assert_eq!(k0, TruncatedSeries::constant(c(1.0, 0.0), 4));
        // (n+1)ᾱⁿ at β = 0
        let k = p.kernel_series(c(0.5, 0.0), 3).unwrap();
        assert_eq!(k.coeff(1), c(1.0, 0.0));
        for beta in [-1.0, -0.5, 0.0, 1.5] {
            let p = SpaceParams::new(beta).unwrap();
            let k = p.kernel_series(c(0.3, 0.0), 16).unwrap();
            let z2 = TruncatedSeries::monomial(2, 16);
            assert!((p.inner_product(&z2, &k) - c(0.09, 0.0)).norm() < 1e-15);
        }
        assert!(matches!(
            p.kernel_series(c(0.0, 1.0), 3),
            Err(Error::ArgOutsideDisk(_))
        ));
    }

    #[test]
    fn divergence_examples() {
        let s = SpaceParams::new(0.0).unwrap().divergence_partial_sums(3);
        assert_eq!(s[3], 10.0);
        let s = SpaceParams::new(-1.0).unwrap().divergence_partial_sums(99);
        assert_eq!(s[99], 100.0);
    }

    #[test]
    fn suggested_degree() {
        let d = suggested_kernel_degree(c(0.5, 0.0), 1e-12);
        assert!(0.5f64.powi(d as i32) <= 1e-12);
        assert!(0.5f64.powi(d as i32 - 1) > 1e-12);
    }
}
