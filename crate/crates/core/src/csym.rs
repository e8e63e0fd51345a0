//! Conjugations, complex-symmetry residuals and the Gram diagnostics of the
//! vectors `v_n = C_{φ_α}^* zⁿ`.
//!
//! An antilinear map `f ↦ U·conj(f)` (orthonormal coordinates) is a
//! conjugation exactly when `U` is unitary and symmetric. `T` is
//! `C`-symmetric when `U·conj(T) = T^H·U`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::lft::Lft;
use crate::operators::{self, check_dim, mzstar_power_monomial, OperatorMatrix};
use crate::series::{self, TruncatedSeries};
use crate::space::{check_disk, SpaceParams};

/// Frobenius tolerance for the unitary and symmetric invariants.
pub const CONJUGATION_TOL: f64 = 1e-10;
/// Relative residual above which a claimed eigenpair is rejected.
pub const EIGENVECTOR_TOL: f64 = 1e-8;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, PartialEq)]
pub struct ConjugationMatrix {
    u: DMatrix<Complex64>,
}

impl ConjugationMatrix {
    pub fn new(u: DMatrix<Complex64>) -> Result<Self> {
        if !u.is_square() {
            return Err(Error::DimMismatch {
                expected: u.nrows(),
                got: u.ncols(),
            });
        }
        let unitary = unitarity_defect(&u);
        let symmetric = symmetry_defect(&u);
        if unitary.is_nan() || symmetric.is_nan() || unitary >= CONJUGATION_TOL || symmetric >= CONJUGATION_TOL {
            return Err(Error::NotConjugation(format!(
                "‖UU^H - I‖ = {unitary:.3e}, ‖U - Uᵀ‖ = {symmetric:.3e}"
            )));
        }
        Ok(Self { u })
    }

    /// Plain coefficient conjugation `f ↦ conj(f)`.
    pub fn identity(dim: usize) -> Self {
        Self {
            u: DMatrix::identity(dim, dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.u.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.u
    }

    pub fn apply(&self, x: &DVector<Complex64>) -> DVector<Complex64> {
        &self.u * x.map(|z| z.conj())
    }

    pub fn unitarity_defect(&self) -> f64 {
        unitarity_defect(&self.u)
    }

    pub fn symmetry_defect(&self) -> f64 {
        symmetry_defect(&self.u)
    }
}

fn unitarity_defect(u: &DMatrix<Complex64>) -> f64 {
    let n = u.nrows();
    (u * u.adjoint() - DMatrix::<Complex64>::identity(n, n)).norm()
}

fn symmetry_defect(u: &DMatrix<Complex64>) -> f64 {
    (u - u.transpose()).norm()
}

/// `‖U·conj(T)·U^H - T^H‖_F`, the matrix form of `CTC = T^*`.
pub fn csym_residual(t: &OperatorMatrix, c: &ConjugationMatrix) -> Result<f64> {
    check_dim(t.dim(), c.dim())?;
    let u = c.matrix();
    let lhs = u * t.entries().map(|z| z.conj()) * u.adjoint();
    Ok((lhs - t.entries().adjoint()).norm())
}

/// `‖U·conj(T) - T^H·U‖_F`, the form `CT - T^*C`. Equal to
/// [`csym_residual`] for unitary `U`.
pub fn csym_commutator_residual(t: &OperatorMatrix, c: &ConjugationMatrix) -> Result<f64> {
    check_dim(t.dim(), c.dim())?;
    let u = c.matrix();
    Ok(commutator(t.entries(), u).norm())
}

fn commutator(t: &DMatrix<Complex64>, u: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    u * t.map(|z| z.conj()) - t.adjoint() * u
}

/// Largest `‖T^H(Cf) - λ̄Cf‖/‖Cf‖` over eigenpairs `(λ, f)` of `T`.
pub fn spectral_symmetry_check(
    t: &OperatorMatrix,
    c: &ConjugationMatrix,
    pairs: &[(Complex64, DVector<Complex64>)],
) -> Result<f64> {
    check_dim(t.dim(), c.dim())?;
    let th = t.entries().adjoint();
    let mut worst: f64 = 0.0;
    for (lambda, f) in pairs {
        check_dim(t.dim(), f.len())?;
        let residual = (t.entries() * f - f * *lambda).norm() / f.norm();
        if residual.is_nan() || residual >= EIGENVECTOR_TOL {
            return Err(Error::NotAnEigenvector {
                lambda: lambda.to_string(),
                residual,
            });
        }
        let cf = c.apply(f);
        let defect = (&th * &cf - &cf * lambda.conj()).norm() / cf.norm();
        worst = worst.max(defect);
    }
    Ok(worst)
}

/// `v_n = C_{φ_α}^* zⁿ` truncated at `degree`: the finite adjoint formula for
/// integer `2 + β`, the conjugate transpose of the truncated matrix otherwise.
pub fn v_vector(
    params: &SpaceParams,
    alpha: Complex64,
    n: usize,
    degree: usize,
) -> Result<TruncatedSeries> {
    check_disk(alpha)?;
    let zn = TruncatedSeries::monomial(n, degree);
    if params.is_integer() {
        operators::adjoint_phi_alpha_apply(params, alpha, &zn, degree)
    } else {
        v_vector_matrix(params, alpha, n, degree)
    }
}

/// Conjugate-transpose route for `v_n`, independent of the finite formula.
pub fn v_vector_matrix(
    params: &SpaceParams,
    alpha: Complex64,
    n: usize,
    degree: usize,
) -> Result<TruncatedSeries> {
    let c = operators::composition_matrix(&Lft::involution(alpha)?, params, degree)?;
    let zn = TruncatedSeries::monomial(n, degree);
    Ok(c.adjoint().apply_series(params, &zn))
}

/// `G[n][m] = ⟨v_n, v_m⟩` for `0 ≤ n, m ≤ n_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct GramTable {
    pub beta: f64,
    pub alpha: Complex64,
    entries: DMatrix<Complex64>,
}

impl GramTable {
    pub fn from_entries(beta: f64, alpha: Complex64, entries: DMatrix<Complex64>) -> Self {
        Self {
            beta,
            alpha,
            entries,
        }
    }

    /// Number of rows (`n_max + 1`).
    pub fn size(&self) -> usize {
        self.entries.nrows()
    }

    pub fn get(&self, n: usize, m: usize) -> Complex64 {
        self.entries[(n, m)]
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn hermitian_defect(&self) -> f64 {
        (&self.entries - self.entries.adjoint()).camax()
    }

    /// Largest `|G[n][m]|` with `|n - m| ≥ width`.
    pub fn max_out_of_band(&self, width: usize) -> f64 {
        self.band_max(|d| d >= width)
    }

    /// Largest `|G[n][m]|` with `|n - m| < width`.
    pub fn max_in_band(&self, width: usize) -> f64 {
        self.band_max(|d| d < width)
    }

    fn band_max(&self, keep: impl Fn(usize) -> bool) -> f64 {
        let k = self.size();
        let mut best: f64 = 0.0;
        for n in 0..k {
            for m in 0..k {
                if keep(n.abs_diff(m)) {
                    best = best.max(self.entries[(n, m)].norm());
                }
            }
        }
        best
    }
}

/// Where the conjugation sits in the double sum for `⟨v_n, v_m⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum GramConvention {
    /// `r_j·conj(r_k)·c_{k,m}`.
    ConjOnK,
    /// `conj(r_j)·r_k·c_{k,m}`.
    #[cfg_attr(not(test), allow(dead_code))]
    ConjOnJ,
}

/// Exact Gram table for integer `2 + β` from the finite double sum
/// `⟨v_n, v_m⟩ = (1-|α|²)^{-(2+β)} Σ_{j,k} r_j conj(r_k) c_{k,m} ⟨zⁿ, z^{m-k+j}⟩`
/// with `r_k = C(2+β, k)(-α)^k`. No truncation is involved.
pub fn gram_exact(params: &SpaceParams, alpha: Complex64, n_max: usize) -> Result<GramTable> {
    gram_exact_with(params, alpha, n_max, GramConvention::ConjOnK)
}

pub(crate) fn gram_exact_with(
    params: &SpaceParams,
    alpha: Complex64,
    n_max: usize,
    convention: GramConvention,
) -> Result<GramTable> {
    check_disk(alpha)?;
    let p = params
        .integer_exponent()
        .ok_or(Error::NonIntegerBeta(params.beta()))?;
    let r: Vec<Complex64> = (0..=p)
        .map(|k| (-alpha).powu(k as u32) * series::binomial(p as f64, k))
        .collect();
    let prefactor = (1.0 - alpha.norm_sqr()).powi(p as i32).recip();
    let size = n_max + 1;
    let mut entries = DMatrix::from_element(size, size, ZERO);
    for m in 0..size {
        for k in 0..=p.min(m) {
            let (ckm, _) = mzstar_power_monomial(params, k, m).expect("k <= m");
            for (j, rj) in r.iter().enumerate() {
                let n = m - k + j;
                if n >= size {
                    continue;
                }
                let coef = match convention {
                    GramConvention::ConjOnK => rj * r[k].conj(),
                    GramConvention::ConjOnJ => rj.conj() * r[k],
                };
                entries[(n, m)] += coef * (ckm * params.weight(n) * prefactor);
            }
        }
    }
    Ok(GramTable {
        beta: params.beta(),
        alpha,
        entries,
    })
}

/// Gram table from truncated `v_n` series (any `β`).
pub fn gram_truncated(
    params: &SpaceParams,
    alpha: Complex64,
    n_max: usize,
    degree: usize,
) -> Result<GramTable> {
    check_disk(alpha)?;
    let c = operators::composition_matrix(&Lft::involution(alpha)?, params, degree)?;
    // coordinates of v_n are √w(n)·(row n of C)^H
    let size = n_max + 1;
    let rows: Vec<DVector<Complex64>> = (0..size)
        .map(|n| {
            c.entries()
                .row(n)
                .adjoint()
                .map(|z| z * params.weight(n).sqrt())
        })
        .collect();
    let entries = DMatrix::from_fn(size, size, |n, m| rows[m].dotc(&rows[n]));
    Ok(GramTable {
        beta: params.beta(),
        alpha,
        entries,
    })
}

/// `⟨v_n, v_0⟩ = C(2+β, n)(-α)ⁿ w(n)/(1-|α|²)^{2+β}` for non-integer `β`.
pub fn gram_generalized_v0(params: &SpaceParams, alpha: Complex64, n: usize) -> Result<Complex64> {
    check_disk(alpha)?;
    if params.is_integer() {
        return Err(Error::IntegerBeta(params.beta()));
    }
    let p = params.beta() + 2.0;
    let value = (-alpha).powu(n as u32) * (series::binomial(p, n) * params.weight(n))
        / (1.0 - alpha.norm_sqr()).powf(p);
    Ok(value)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SubspaceReport {
    /// `max |⟨v_{kN}, v_{jN+3+β}⟩|` over `k, j < count`.
    pub max_cross: f64,
    /// Whether `N ≥ 2(3+β)`, the regime in which the cross block must vanish.
    pub guaranteed: bool,
    pub threshold: usize,
}

/// Cross inner products between the spanning sets of `V_0` and `V_{3+β}`
/// for an elliptic automorphism of order `order`.
pub fn subspace_orthogonality(
    params: &SpaceParams,
    alpha: Complex64,
    order: usize,
    count: usize,
) -> Result<SubspaceReport> {
    let p = params
        .integer_exponent()
        .ok_or(Error::NonIntegerBeta(params.beta()))?;
    if order == 0 || count == 0 {
        return Err(Error::InvalidParameter("order and count must be positive".into()));
    }
    let shift = p + 1;
    let n_max = (count - 1) * order + shift;
    let g = gram_exact(params, alpha, n_max)?;
    let mut max_cross: f64 = 0.0;
    for k in 0..count {
        for j in 0..count {
            max_cross = max_cross.max(g.get(k * order, j * order + shift).norm());
        }
    }
    Ok(SubspaceReport {
        max_cross,
        guaranteed: order >= 2 * shift,
        threshold: 2 * shift,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Witness {
    /// `α^{3+β}`.
    pub direct: Complex64,
    /// `⟨φ_α^{3+β}, K_0⟩` from truncated series.
    pub inner_product: Complex64,
    pub difference: f64,
}

/// The value `⟨φ_α^{3+β}, K_0⟩ = α^{3+β}`, which any conjugation with
/// `V_0 ⊥ V_{3+β}` would force to vanish.
pub fn obstruction_witness(params: &SpaceParams, alpha: Complex64) -> Result<Witness> {
    check_disk(alpha)?;
    let p = params
        .integer_exponent()
        .ok_or(Error::NonIntegerBeta(params.beta()))?;
    let exponent = p + 1;
    if alpha == ZERO {
        return Ok(Witness {
            direct: ZERO,
            inner_product: ZERO,
            difference: 0.0,
        });
    }
    let degree = exponent + 8;
    let direct = alpha.powu(exponent as u32);
    let phi = Lft::involution(alpha)?.to_series(degree)?;
    let pw = series::power(&phi, exponent, degree);
    let k0 = params.kernel_series(ZERO, degree)?;
    let inner_product = params.inner_product(&pw, &k0);
    Ok(Witness {
        direct,
        inner_product,
        difference: (direct - inner_product).norm(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    /// Best conjugation found.
    pub conjugation: ConjugationMatrix,
    /// Residual of the current iterate, starting with `U = I`.
    pub residuals: Vec<f64>,
    /// Running minimum of `residuals`.
    pub best_so_far: Vec<f64>,
}

impl SearchResult {
    pub fn best(&self) -> f64 {
        *self.best_so_far.last().expect("trace starts with the initial residual")
    }
}

/// Projected-gradient search over symmetric unitaries for a `U` minimising
/// `‖U·conj(T) - T^H·U‖_F`. Each step takes a gradient step from the current
/// `U`, symmetrises, and maps back to the nearest unitary by a symmetric
/// Newton polar iteration. Stalled steps are followed by a seeded random
/// symmetric perturbation. Only the best-so-far trace is monotone.
pub fn conjugation_search(t: &OperatorMatrix, iters: usize, seed: u64) -> SearchResult {
    let n = t.dim();
    let a = t.entries().map(|z| z.conj());
    let b = t.entries().adjoint();
    let objective = |u: &DMatrix<Complex64>| (u * &a - &b * u).norm();
    let lipschitz = (a.norm() + b.norm()).powi(2).max(f64::MIN_POSITIVE);
    let base_step = 1.0 / lipschitz;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut u = DMatrix::<Complex64>::identity(n, n);
    let mut r = objective(&u);
    let mut best = (u.clone(), r);
    let mut residuals = vec![r];
    let mut best_so_far = vec![r];
    let mut step = base_step;

    for _ in 0..iters {
        if best.1 >= 1e-14 {
            let res = &u * &a - &b * &u;
            let grad = &res * a.adjoint() - b.adjoint() * &res;
            let mut accepted = false;
            for _ in 0..30 {
                if let Some(cand) = project_symmetric_unitary(&(&u - &grad * Complex64::from(step))) {
                    let rc = objective(&cand);
                    if rc < r {
                        u = cand;
                        r = rc;
                        step *= 2.0;
                        accepted = true;
                        break;
                    }
                }
                step *= 0.5;
            }
            if !accepted {
                let kick = random_symmetric(n, &mut rng) * Complex64::from(0.1);
                if let Some(cand) = project_symmetric_unitary(&(&u + kick)) {
                    r = objective(&cand);
                    u = cand;
                }
                step = base_step;
            }
            if r < best.1 {
                best = (u.clone(), r);
            }
        }
        residuals.push(r);
        best_so_far.push(best.1);
    }

    SearchResult {
        conjugation: ConjugationMatrix { u: best.0 },
        residuals,
        best_so_far,
    }
}

fn random_symmetric(n: usize, rng: &mut ChaCha8Rng) -> DMatrix<Complex64> {
    let x = DMatrix::from_fn(n, n, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        Complex64::new(re, im)
    });
    (&x + x.transpose()) * Complex64::from(0.5 / (n as f64).sqrt())
}

/// Nearest symmetric unitary to `(M + Mᵀ)/2`, by the scaled Newton polar
/// iteration `X ← (γX + (γX)^{-H})/2`, which preserves symmetry. Returns
/// `None` when the symmetric part is numerically singular or the result
/// fails the conjugation invariants.
pub fn project_symmetric_unitary(m: &DMatrix<Complex64>) -> Option<DMatrix<Complex64>> {
    let sym = |x: &DMatrix<Complex64>| (x + x.transpose()) * Complex64::from(0.5);
    let mut x = sym(m);
    let n = x.nrows() as f64;
    for it in 0..100 {
        let inv = x.clone().try_inverse()?;
        let gamma = if it < 10 {
            (inv.norm() / x.norm()).sqrt()
        } else {
            1.0
        };
        if !gamma.is_finite() || gamma == 0.0 {
            return None;
        }
        let next = sym(&((&x * Complex64::from(gamma) + inv.adjoint() * Complex64::from(1.0 / gamma)) * Complex64::from(0.5)));
        let delta = (&next - &x).norm();
        x = next;
        if delta < 1e-15 * n.sqrt() && it >= 1 {
            break;
        }
    }
    (unitarity_defect(&x) < CONJUGATION_TOL && symmetry_defect(&x) < CONJUGATION_TOL).then_some(x)
}
