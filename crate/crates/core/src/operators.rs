//! Truncated matrices of composition and multiplication operators.
//!
//! Matrices are written in the orthonormal basis `e_n = zⁿ/√w(n)`, so the
//! coordinates of `f` are `f̂(n)·√w(n)` and the adjoint of an operator is the
//! conjugate transpose of its matrix. A `(D+1)×(D+1)` matrix is the
//! compression `P_D T P_D`; its top-left blocks are exact whenever the
//! entries only involve finitely many coefficients, which is the case for
//! every operator built here.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lft::Lft;
use crate::series::{self, TruncatedSeries};
use crate::space::{check_disk, SpaceParams};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    entries: DMatrix<Complex64>,
    beta: f64,
}

/// Symbol of a composition operator.
#[derive(Debug, Clone, Copy)]
pub enum Symbol<'a> {
    Lft(&'a Lft),
    Series(&'a TruncatedSeries),
}

impl<'a> From<&'a Lft> for Symbol<'a> {
    fn from(phi: &'a Lft) -> Self {
        Symbol::Lft(phi)
    }
}

impl<'a> From<&'a TruncatedSeries> for Symbol<'a> {
    fn from(f: &'a TruncatedSeries) -> Self {
        Symbol::Series(f)
    }
}

impl OperatorMatrix {
    pub fn from_entries(entries: DMatrix<Complex64>, beta: f64) -> Result<Self> {
        if !entries.is_square() {
            return Err(Error::DimMismatch {
                expected: entries.nrows(),
                got: entries.ncols(),
            });
        }
        Ok(Self { entries, beta })
    }

    pub fn identity(dim: usize, beta: f64) -> Self {
        Self {
            entries: DMatrix::identity(dim, dim),
            beta,
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    /// Truncation degree `D = dim - 1`.
    pub fn degree(&self) -> usize {
        self.dim() - 1
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn into_entries(self) -> DMatrix<Complex64> {
        self.entries
    }

    pub fn adjoint(&self) -> Self {
        Self {
            entries: self.entries.adjoint(),
            beta: self.beta,
        }
    }

    /// `self · other`, i.e. apply `other` first.
    pub fn then_after(&self, other: &OperatorMatrix) -> Result<Self> {
        check_dim(self.dim(), other.dim())?;
        Ok(Self {
            entries: &self.entries * &other.entries,
            beta: self.beta,
        })
    }

    pub fn apply(&self, x: &DVector<Complex64>) -> Result<DVector<Complex64>> {
        check_dim(self.dim(), x.len())?;
        Ok(&self.entries * x)
    }

    /// Applies the matrix to a series and returns the image as a series of
    /// degree `D`.
    pub fn apply_series(&self, params: &SpaceParams, f: &TruncatedSeries) -> TruncatedSeries {
        let x = coords(params, f, self.degree());
        from_coords(params, &(&self.entries * x))
    }

    pub fn top_left(&self, k: usize) -> DMatrix<Complex64> {
        let k = k.min(self.dim());
        self.entries.view((0, 0), (k, k)).into_owned()
    }
}

pub(crate) fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimMismatch { expected, got })
    }
}

/// Orthonormal coordinates `f̂(n)√w(n)` for `n ≤ degree`.
pub fn coords(params: &SpaceParams, f: &TruncatedSeries, degree: usize) -> DVector<Complex64> {
    DVector::from_iterator(
        degree + 1,
        (0..=degree).map(|n| f.coeff(n) * params.weight(n).sqrt()),
    )
}

pub fn from_coords(params: &SpaceParams, x: &DVector<Complex64>) -> TruncatedSeries {
    TruncatedSeries::from_vec_unchecked(
        x.iter()
            .enumerate()
            .map(|(n, &v)| v / params.weight(n).sqrt())
            .collect(),
    )
}

/// Matrix of `C_φ`: column `j` holds the coefficients of `φ^j`, rescaled
/// by `√w(n)/√w(j)`.
pub fn composition_matrix<'a>(
    symbol: impl Into<Symbol<'a>>,
    params: &SpaceParams,
    degree: usize,
) -> Result<OperatorMatrix> {
    let phi = match symbol.into() {
        Symbol::Lft(m) => m.to_series(degree)?,
        Symbol::Series(f) => {
            check_series_self_map(f)?;
            f.truncated(degree)
        }
    };
    let dim = degree + 1;
    let sqrt_w: Vec<f64> = params.weights(degree).iter().map(|w| w.sqrt()).collect();
    let mut entries = DMatrix::from_element(dim, dim, ZERO);
    let mut power = TruncatedSeries::constant(Complex64::new(1.0, 0.0), degree);
    for j in 0..dim {
        if j > 0 {
            power = series::mul(&power, &phi, degree);
        }
        for (n, &p) in power.coeffs().iter().enumerate() {
            entries[(n, j)] = p * (sqrt_w[n] / sqrt_w[j]);
        }
    }
    Ok(OperatorMatrix {
        entries,
        beta: params.beta(),
    })
}

/// Sampled sup-norm of a raw series symbol on `|z| = 1 - 1e-3`.
fn check_series_self_map(f: &TruncatedSeries) -> Result<()> {
    const SAMPLES: usize = 512;
    let r = 1.0 - 1e-3;
    let sup = (0..SAMPLES)
        .map(|k| {
            let z = Complex64::from_polar(r, 2.0 * std::f64::consts::PI * k as f64 / SAMPLES as f64);
            f.eval(z).norm()
        })
        .fold(0.0, f64::max);
    if sup < 1.0 {
        Ok(())
    } else {
        Err(Error::NotSelfMap(format!(
            "sampled sup-norm {sup:.6} on |z| = {r} is not below 1"
        )))
    }
}

/// Matrix of `M_ψ`: entry `(n, j) = ψ̂(n - j)·√w(n)/√w(j)`.
pub fn multiplication_matrix(
    psi: &TruncatedSeries,
    params: &SpaceParams,
    degree: usize,
) -> OperatorMatrix {
    let dim = degree + 1;
    let sqrt_w: Vec<f64> = params.weights(degree).iter().map(|w| w.sqrt()).collect();
    let entries = DMatrix::from_fn(dim, dim, |n, j| {
        if n < j {
            ZERO
        } else {
            psi.coeff(n - j) * (sqrt_w[n] / sqrt_w[j])
        }
    });
    OperatorMatrix {
        entries,
        beta: params.beta(),
    }
}

/// `(M_z^* f)^(n) = (n+1)/(n+2+β)·f̂(n+1)`, the closed form of
/// `Γ(n+2+β)(n+1)/Γ(n+3+β)`.
pub fn mzstar_apply(params: &SpaceParams, f: &TruncatedSeries) -> TruncatedSeries {
    let beta = params.beta();
    let deg = f.degree();
    let coeffs = (0..=deg)
        .map(|n| shift_factor(n + 1, beta) * f.coeff(n + 1))
        .collect();
    TruncatedSeries::from_vec_unchecked(coeffs)
}

// k/(k + 1 + β)
fn shift_factor(k: usize, beta: f64) -> f64 {
    let k = k as f64;
    k / (k + 1.0 + beta)
}

/// Image of `zⁿ` under `(M_z^*)^m`: `Some((c_{m,n}, n - m))`, or `None` for
/// the zero vector when `m > n`.
pub fn mzstar_power_monomial(params: &SpaceParams, m: usize, n: usize) -> Option<(f64, usize)> {
    if m > n {
        return None;
    }
    // c_{m,n} = Γ(2+n-m+β)n!/((n-m)!Γ(2+n+β)) = Π_{i<m} (n-i)/(n-i+1+β)
    let beta = params.beta();
    let c = (0..m).fold(1.0, |acc, i| acc * shift_factor(n - i, beta));
    Some((c, n - m))
}

/// Symbols in the factorisation `C_φ^* = M_g C_σ M_h^*` for
/// `φ = (az+b)/(cz+d)` normalised to `d = 1`:
/// `σ(z) = (āz - c̄)/(-b̄z + d̄)`, `g = (-b̄z + d̄)^{-(β+2)}`, `h = (cz + d)^{β+2}`.
#[derive(Debug, Clone, PartialEq)]
pub struct HurstFactors {
    pub g: TruncatedSeries,
    pub sigma: Lft,
    pub h: TruncatedSeries,
}

pub fn hurst_factors(phi: &Lft, params: &SpaceParams, degree: usize) -> Result<HurstFactors> {
    let phi = phi.normalized();
    let p = params.beta() + 2.0;
    let (a, b, c) = (phi.a(), phi.b(), phi.c());
    let one = Complex64::new(1.0, 0.0);
    let sigma = Lft::new(a.conj(), -c.conj(), -b.conj(), one)?;
    let g = series::binomial_expand(-b.conj(), -p, degree);
    let h = series::binomial_expand(c, p, degree);
    Ok(HurstFactors { g, sigma, h })
}

/// Frobenius norm of the top-left `block×block` part of
/// `C_φ^* - M_g C_σ M_h^*`, all matrices built at truncation `degree`.
pub fn verify_hurst(phi: &Lft, params: &SpaceParams, degree: usize, block: usize) -> Result<f64> {
    if block == 0 || 4 * block > degree + 1 {
        return Err(Error::InvalidParameter(format!(
            "block {block} must satisfy 0 < block <= (D+1)/4 with D = {degree}"
        )));
    }
    let factors = hurst_factors(phi, params, degree)?;
    let c_phi = composition_matrix(phi, params, degree)?;
    let m_g = multiplication_matrix(&factors.g, params, degree);
    let c_sigma = composition_matrix(&factors.sigma, params, degree)?;
    let m_h = multiplication_matrix(&factors.h, params, degree);
    let rhs = m_g.then_after(&c_sigma)?.then_after(&m_h.adjoint())?;
    let diff = c_phi.adjoint().top_left(block) - rhs.top_left(block);
    Ok(diff.norm())
}

/// Which power of `α` multiplies `(M_z^*)^k` in the finite adjoint formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdjointSign {
    /// `C(2+β, k)(-α)^k`, the adjoint of `M_{1/K_α} = Σ C(2+β,k)(-ᾱ M_z)^k`.
    Alpha,
    /// `C(2+β, k)(-ᾱ)^k`; does not reproduce the adjoint for non-real `α`.
    AlphaBar,
}

/// `C_{φ_α}^* f = Σ_{k ≤ 2+β} C(2+β,k)(-α)^k K_α·((M_z^*)^k f)∘φ_α`,
/// valid when `2 + β` is a positive integer.
pub fn adjoint_phi_alpha_apply(
    params: &SpaceParams,
    alpha: Complex64,
    f: &TruncatedSeries,
    degree: usize,
) -> Result<TruncatedSeries> {
    adjoint_phi_alpha_apply_with(params, alpha, f, degree, AdjointSign::Alpha)
}

pub fn adjoint_phi_alpha_apply_with(
    params: &SpaceParams,
    alpha: Complex64,
    f: &TruncatedSeries,
    degree: usize,
    sign: AdjointSign,
) -> Result<TruncatedSeries> {
    check_disk(alpha)?;
    let p = params
        .integer_exponent()
        .ok_or(Error::NonIntegerBeta(params.beta()))?;
    let base = match sign {
        AdjointSign::Alpha => -alpha,
        AdjointSign::AlphaBar => -alpha.conj(),
    };
    let phi_alpha = Lft::involution(alpha)?.to_series(degree)?;
    let kernel = params.kernel_series(alpha, degree)?;
    let mut lowered = f.truncated(degree);
    let mut combo = TruncatedSeries::zero(degree);
    let mut r = Complex64::new(1.0, 0.0);
    for k in 0..=p {
        if k > 0 {
            lowered = mzstar_apply(params, &lowered);
            r *= base;
        }
        let coeff = r * series::binomial(p as f64, k);
        combo = &combo + &lowered.scale(coeff);
    }
    let composed = series::compose(&combo, &phi_alpha, degree);
    Ok(series::mul(&kernel, &composed, degree))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn beta(b: f64) -> SpaceParams {
        SpaceParams::new(b).unwrap()
    }

    #[test]
    fn identity_symbol_gives_identity_matrix() {
        let m = composition_matrix(&Lft::identity(), &beta(0.5), 12).unwrap();
        assert_eq!(m.entries(), &DMatrix::identity(13, 13));
    }

    #[test]
    fn rotation_is_diagonal() {
        let lambda = Complex64::from_polar(1.0, 0.9);
        let m = composition_matrix(&Lft::rotation(lambda).unwrap(), &beta(1.0), 10).unwrap();
        let mut pow = c(1.0, 0.0);
        for n in 0..=10 {
            for j in 0..=10 {
                if n != j {
                    assert_eq!(m.entries()[(n, j)], c(0.0, 0.0));
                }
            }
            assert!((m.entries()[(n, n)] - pow).norm() < 1e-15);
            pow *= lambda;
        }
    }

    #[test]
    fn columns_are_rescaled_powers() {
        let p = beta(0.0);
        let phi = Lft::involution(c(0.5, 0.0)).unwrap();
        let m = composition_matrix(&phi, &p, 32).unwrap();
        let s = phi.to_series(32).unwrap();
        for j in [0usize, 1, 2, 5] {
            let pw = series::power(&s, j, 32);
            for n in 0..=32 {
                let expect = pw.coeff(n) * (p.weight(n) / p.weight(j)).sqrt();
                assert!((m.entries()[(n, j)] - expect).norm() < 1e-14);
            }
        }
        assert_eq!(m.entries()[(0, 0)], c(1.0, 0.0));
        // φ̂_α(0)·√w(0)/√w(1) = 0.5·√2
        assert!((m.entries()[(0, 1)] - c(0.5 * 2f64.sqrt(), 0.0)).norm() < 1e-15);
    }

    #[test]
    fn series_symbol_must_map_into_disk() {
        let big = TruncatedSeries::from_real(&[0.0, 1.5]).unwrap();
        assert!(matches!(
            composition_matrix(&big, &beta(0.0), 4),
            Err(Error::NotSelfMap(_))
        ));
        let ok = TruncatedSeries::from_real(&[0.1, 0.5, 0.2]).unwrap();
        assert!(composition_matrix(&ok, &beta(0.0), 4).is_ok());
    }

    #[test]
    fn multiplication_examples() {
        let p = beta(0.0);
        let one = TruncatedSeries::constant(c(1.0, 0.0), 0);
        assert_eq!(multiplication_matrix(&one, &p, 6).entries(), &DMatrix::identity(7, 7));
        let z = TruncatedSeries::identity(1);
        let mz = multiplication_matrix(&z, &p, 6);
        for n in 0..6 {
            let expect = ((n as f64 + 1.0) / (n as f64 + 2.0)).sqrt();
            assert!((mz.entries()[(n + 1, n)].re - expect).abs() < 1e-15);
        }
    }

    #[test]
    fn multiplication_matches_series_product() {
        let p = beta(1.5);
        let psi = TruncatedSeries::new(vec![c(1.0, 0.5), c(-0.2, 0.1), c(0.3, 0.0)]).unwrap();
        let f = TruncatedSeries::new(vec![c(0.5, 0.0), c(0.0, 1.0), c(2.0, -1.0), c(0.1, 0.1)]).unwrap();
        let m = multiplication_matrix(&psi, &p, 10);
        let got = m.apply_series(&p, &f);
        let expect = series::mul(&psi, &f, 10);
        assert!((&got - &expect).max_abs() < 1e-14);
    }

    #[test]
    fn one_over_kernel_as_polynomial_in_mz() {
        // M_{(1-ᾱz)^{2+β}} = Σ C(2+β,k)(-ᾱ M_z)^k
        let p = beta(1.0);
        let alpha = c(0.3, 0.4);
        let d = 12;
        let psi = series::binomial_expand(-alpha.conj(), 3.0, d);
        let direct = multiplication_matrix(&psi, &p, d);
        let mz = multiplication_matrix(&TruncatedSeries::identity(1), &p, d);
        let mut acc = DMatrix::from_element(d + 1, d + 1, c(0.0, 0.0));
        let mut pw = DMatrix::identity(d + 1, d + 1);
        for k in 0..=3 {
            acc += &pw * (series::binomial(3.0, k) * (-alpha.conj()).powu(k as u32));
            pw = mz.entries() * pw;
        }
        assert!((direct.entries() - acc).norm() < 1e-14);
    }

    #[test]
    fn mzstar_examples() {
        let p = beta(0.0);
        let one = TruncatedSeries::constant(c(1.0, 0.0), 3);
        assert_eq!(mzstar_apply(&p, &one).max_abs(), 0.0);
        let z2 = TruncatedSeries::monomial(2, 3);
        let img = mzstar_apply(&p, &z2);
        assert!((img.coeff(1) - c(2.0 / 3.0, 0.0)).norm() < 1e-16);
        assert_eq!(img.effective_len(), 2);
    }

    #[test]
    fn mzstar_is_adjoint_of_mz() {
        for b in [-1.0, -0.5, 0.0, 2.0] {
            let p = beta(b);
            let d = 20;
            let f = TruncatedSeries::new((0..=d).map(|k| c(1.0 / (k + 1) as f64, (k as f64).sin())).collect()).unwrap();
            let mz = multiplication_matrix(&TruncatedSeries::identity(1), &p, d);
            let oracle = mz.adjoint().apply_series(&p, &f);
            let got = mzstar_apply(&p, &f);
            assert!((&got - &oracle).max_abs() < 1e-12, "beta={b}");
        }
    }

    #[test]
    fn mzstar_power_examples() {
        let p = beta(0.0);
        assert_eq!(mzstar_power_monomial(&p, 0, 7), Some((1.0, 7)));
        let (c13, deg) = mzstar_power_monomial(&p, 1, 3).unwrap();
        assert_eq!(deg, 2);
        assert!((c13 - 0.75).abs() < 1e-16);
        assert_eq!(mzstar_power_monomial(&p, 5, 3), None);
    }

    #[test]
    fn mzstar_power_one_matches_single_application_exactly() {
        for b in [-1.0, 0.0, 0.5, 3.0] {
            let p = beta(b);
            for n in 1..30 {
                let (cm, deg) = mzstar_power_monomial(&p, 1, n).unwrap();
                let img = mzstar_apply(&p, &TruncatedSeries::monomial(n, n));
                assert_eq!(img.coeff(deg), c(cm, 0.0));
            }
        }
    }

    #[test]
    fn hurst_factors_of_rotation() {
        let lambda = Complex64::from_polar(1.0, 0.4);
        let f = hurst_factors(&Lft::rotation(lambda).unwrap(), &beta(0.0), 4).unwrap();
        assert_eq!(f.g, TruncatedSeries::constant(c(1.0, 0.0), 4));
        assert_eq!(f.h, TruncatedSeries::constant(c(1.0, 0.0), 4));
        let z = c(0.3, 0.1);
        assert!((f.sigma.apply(z) - lambda.conj() * z).norm() < 1e-16);
    }

    #[test]
    fn hurst_factors_of_involution_are_kernels() {
        let p = beta(1.0);
        let alpha = c(0.4, -0.2);
        let f = hurst_factors(&Lft::involution(alpha).unwrap(), &p, 16).unwrap();
        let k = p.kernel_series(alpha, 16).unwrap();
        assert!((&f.g - &k).max_abs() < 1e-15);
        let inv_k = series::binomial_expand(-alpha.conj(), 3.0, 16);
        assert!((&f.h - &inv_k).max_abs() < 1e-15);
        let z = c(0.1, 0.6);
        assert!((f.sigma.apply(z) - Lft::involution(alpha).unwrap().apply(z)).norm() < 1e-15);
    }

    #[test]
    fn hurst_sigma_of_psi() {
        let f = hurst_factors(&Lft::psi(c(0.5, 0.0)).unwrap(), &beta(0.0), 4).unwrap();
        let z = c(0.2, -0.3);
        assert!((f.sigma.apply(z) - (z * 0.5 + 0.5)).norm() < 1e-16);
    }

    #[test]
    fn hurst_residual_rotation_is_zero() {
        let r = verify_hurst(&Lft::rotation(Complex64::from_polar(1.0, 1.1)).unwrap(), &beta(0.0), 32, 8).unwrap();
        assert_eq!(r, 0.0);
    }

    #[test]
    fn hurst_residual_involution() {
        let r = verify_hurst(&Lft::involution(c(0.5, 0.0)).unwrap(), &beta(0.0), 128, 8).unwrap();
        assert!(r < 1e-8, "{r}");
    }

    #[test]
    fn factorisation_needs_the_adjoint() {
        // for λz the factors collapse to C_{λ̄z}, which is C_φ^* and not C_φ
        let p = beta(0.0);
        let phi = Lft::rotation(Complex64::from_polar(1.0, 0.9)).unwrap();
        let fct = hurst_factors(&phi, &p, 31).unwrap();
        let rhs = multiplication_matrix(&fct.g, &p, 31)
            .then_after(&composition_matrix(&fct.sigma, &p, 31).unwrap())
            .unwrap()
            .then_after(&multiplication_matrix(&fct.h, &p, 31).adjoint())
            .unwrap();
        let c_phi = composition_matrix(&phi, &p, 31).unwrap();
        assert!((c_phi.top_left(8) - rhs.top_left(8)).norm() > 1.0);
        assert!((c_phi.adjoint().top_left(8) - rhs.top_left(8)).norm() < 1e-14);
    }

    #[test]
    fn hurst_block_must_be_small() {
        assert!(matches!(
            verify_hurst(&Lft::identity(), &beta(0.0), 16, 8),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn adjoint_at_alpha_zero_is_reflection() {
        let p = beta(0.0);
        for n in 0..6 {
            let v = adjoint_phi_alpha_apply(&p, c(0.0, 0.0), &TruncatedSeries::monomial(n, 8), 8).unwrap();
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert_eq!(v, TruncatedSeries::monomial(n, 8).scale(c(sign, 0.0)));
        }
    }

    #[test]
    fn adjoint_maps_kernel_to_constant() {
        let p = beta(0.0);
        let alpha = c(0.5, 0.0);
        let d = 128;
        let k = p.kernel_series(alpha, d).unwrap();
        let img = adjoint_phi_alpha_apply(&p, alpha, &k, d).unwrap();
        let one = TruncatedSeries::constant(c(1.0, 0.0), d);
        // only the low block is free of truncation
        let low = (&img.truncated(16) - &one.truncated(16)).max_abs();
        assert!(low < 1e-8, "{low}");
    }

    #[test]
    fn adjoint_requires_integer_beta() {
        assert_eq!(
            adjoint_phi_alpha_apply(&beta(0.5), c(0.1, 0.0), &TruncatedSeries::monomial(1, 4), 4),
            Err(Error::NonIntegerBeta(0.5))
        );
    }
}
