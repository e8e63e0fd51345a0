//! Orbits of disk self-maps, Denjoy–Wolff points, the Hurst eigenvectors
//! `(1 - z)^λ` of `C_σ`, and Gram diagnostics for operator orbits.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lft::{Lft, Location};
use crate::operators::{check_dim, coords, OperatorMatrix};
use crate::series::{self, TruncatedSeries};
use crate::space::{check_disk, SpaceParams};

/// Successive iterates closer than this count towards convergence.
pub const STEP_TOL: f64 = 1e-12;
/// Consecutive small steps needed to declare convergence.
pub const STEPS_TO_CONVERGE: usize = 5;
/// Relative singular-value cutoff for the numerical rank.
pub const RANK_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct OrbitReport {
    /// `z₀, φ(z₀), …`, including the starting point.
    pub iterates: Vec<Complex64>,
    pub converged: bool,
    pub limit: Option<Complex64>,
    /// Number of applications of `φ` performed.
    pub steps: usize,
}

/// Up to `n` iterates of `φ` from `z0`, stopping once converged.
pub fn iterate(phi: &Lft, z0: Complex64, n: usize) -> Result<OrbitReport> {
    check_disk(z0)?;
    let mut iterates = Vec::with_capacity(n.min(1 << 16) + 1);
    iterates.push(z0);
    let mut z = z0;
    let mut run = 0;
    for step in 1..=n {
        let next = phi.apply(z);
        if !next.is_finite() || next.norm() > 1.0 + 1e-9 {
            return Err(Error::EscapedDisk { step });
        }
        run = if (next - z).norm() < STEP_TOL { run + 1 } else { 0 };
        iterates.push(next);
        z = next;
        if run >= STEPS_TO_CONVERGE {
            return Ok(OrbitReport {
                iterates,
                converged: true,
                limit: Some(z),
                steps: step,
            });
        }
    }
    Ok(OrbitReport {
        iterates,
        converged: false,
        limit: None,
        steps: n,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DwRoute {
    InteriorFixedPoint,
    BoundaryAttracting,
    /// Elliptic automorphisms have no Denjoy–Wolff point; `omega` is the
    /// interior fixed point.
    EllipticNoDw,
}

impl DwRoute {
    pub fn as_str(&self) -> &'static str {
        match self {
            DwRoute::InteriorFixedPoint => "interior-fixed-point",
            DwRoute::BoundaryAttracting => "boundary-attracting",
            DwRoute::EllipticNoDw => "elliptic-no-DW",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DenjoyWolff {
    pub omega: Complex64,
    pub route: DwRoute,
}

pub fn denjoy_wolff(phi: &Lft) -> Result<DenjoyWolff> {
    if phi.is_identity() {
        return Err(Error::IdentityMap);
    }
    if !phi.is_self_map() {
        return Err(Error::NotSelfMap("Denjoy–Wolff point needs a self-map".into()));
    }
    let report = phi.fixed_points()?;
    let kind = phi.classify().kind;
    if let Some(alpha) = report.interior() {
        let route = if kind.is_elliptic() {
            DwRoute::EllipticNoDw
        } else {
            DwRoute::InteriorFixedPoint
        };
        return Ok(DenjoyWolff { omega: alpha, route });
    }
    let omega = report
        .points
        .iter()
        .filter(|p| p.location == Location::Boundary)
        .filter_map(|p| Some((p.point.finite()?, p.multiplier?.norm())))
        .min_by(|x, y| x.1.total_cmp(&y.1))
        .map(|(z, _)| z)
        .ok_or_else(|| Error::InvalidParameter(format!("{kind} map without a fixed point in the closed disk")))?;
    Ok(DenjoyWolff {
        omega,
        route: DwRoute::BoundaryAttracting,
    })
}

/// `‖C_σ f_λ - s^λ f_λ‖/‖f_λ‖` on degrees `≤ block` for `σ(z) = sz + 1 - s`
/// and `f_λ = (1 - z)^λ` truncated at `degree`. Coefficient `n` of `f∘σ` is
/// `Σ_j f̂(j) C(j, n) sⁿ (1-s)^{j-n}`, summed over `j ≤ degree`.
pub fn hurst_eigencheck(
    s: Complex64,
    lambda: f64,
    params: &SpaceParams,
    degree: usize,
    block: usize,
) -> Result<f64> {
    let r = s.norm();
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::InvalidParameter(format!("need 0 < |s| < 1, got s = {s}")));
    }
    if s.is_nan() || (Complex64::new(1.0, 0.0) - s).norm() >= 1.0 {
        return Err(Error::InvalidParameter(format!(
            "σ(0) = 1 - s must lie in the disk, got s = {s}"
        )));
    }
    let min = -(params.beta() + 2.0) / 2.0;
    if lambda.is_nan() || lambda <= min {
        return Err(Error::ExponentOutOfRange { lambda, min });
    }
    if block > degree {
        return Err(Error::InvalidParameter(format!(
            "block {block} exceeds truncation degree {degree}"
        )));
    }
    let f = series::binomial_expand(Complex64::new(-1.0, 0.0), lambda, degree);
    let fh = f.coeffs();
    let one_minus = Complex64::new(1.0, 0.0) - s;
    let eigenvalue = s.powf(lambda);
    let mut composed = Vec::with_capacity(block + 1);
    let mut sn = Complex64::new(1.0, 0.0);
    for n in 0..=block {
        // term_j = C(j, n) sⁿ (1-s)^{j-n}
        let mut term = sn;
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, &c) in fh.iter().enumerate().skip(n) {
            acc += c * term;
            term *= one_minus * ((j + 1) as f64 / (j + 1 - n) as f64);
        }
        composed.push(acc);
        sn *= s;
    }
    let diff = TruncatedSeries::new(
        composed
            .iter()
            .zip(fh)
            .map(|(cf, fv)| cf - eigenvalue * fv)
            .collect(),
    )?;
    let denom = params.norm(&f.truncated(block));
    Ok(params.norm(&diff) / denom)
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrbitGram {
    /// `G[i][j] = ⟨Tⁱf, Tʲf⟩`.
    pub gram: DMatrix<Complex64>,
    /// Descending.
    pub singular_values: Vec<f64>,
    pub rank: usize,
}

/// Gram matrix of `f, Tf, …, T^{n-1}f` and its numerical rank.
pub fn orbit_gram(
    t: &OperatorMatrix,
    params: &SpaceParams,
    f: &TruncatedSeries,
    n: usize,
) -> Result<OrbitGram> {
    if n == 0 || n > t.dim() {
        return Err(Error::DimMismatch {
            expected: t.dim(),
            got: n,
        });
    }
    check_dim(t.dim(), f.degree() + 1)?;
    let mut orbit: Vec<DVector<Complex64>> = Vec::with_capacity(n);
    orbit.push(coords(params, f, t.degree()));
    for k in 1..n {
        let next = t.entries() * &orbit[k - 1];
        orbit.push(next);
    }
    let gram = DMatrix::from_fn(n, n, |i, j| orbit[j].dotc(&orbit[i]));
    let mut singular_values: Vec<f64> = gram.clone().singular_values().iter().copied().collect();
    singular_values.sort_by(|a, b| b.total_cmp(a));
    let top = singular_values[0];
    let rank = if top == 0.0 {
        0
    } else {
        singular_values.iter().filter(|&&x| x > RANK_TOL * top).count()
    };
    Ok(OrbitGram {
        gram,
        singular_values,
        rank,
    })
}
