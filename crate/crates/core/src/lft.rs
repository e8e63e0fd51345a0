//! Linear fractional maps `z ↦ (az + b)/(cz + d)` and their classification
//! as self-maps of the unit disk.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::{self, TruncatedSeries};

/// Slack allowed in the self-map inequality, relative to the coefficient scale.
pub const SELF_MAP_SLACK: f64 = 1e-12;
/// Slack for the equality case of the self-map inequality (automorphisms).
pub const AUTOMORPHISM_SLACK: f64 = 1e-10;
/// Band around the unit circle inside which a point is labelled `Boundary`.
pub const BOUNDARY_TOL: f64 = 1e-9;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lft {
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
    self_map: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Location {
    Interior,
    Boundary,
    Exterior,
}

impl Location {
    pub fn of(z: Complex64) -> Self {
        let r = z.norm();
        if r < 1.0 - BOUNDARY_TOL {
            Location::Interior
        } else if (r - 1.0).abs() <= BOUNDARY_TOL {
            Location::Boundary
        } else {
            Location::Exterior
        }
    }
}

/// A fixed point in the extended plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Point {
    Finite(Complex64),
    Infinity,
}

impl Point {
    pub fn finite(&self) -> Option<Complex64> {
        match *self {
            Point::Finite(z) => Some(z),
            Point::Infinity => None,
        }
    }

    fn modulus(&self) -> f64 {
        match *self {
            Point::Finite(z) => z.norm(),
            Point::Infinity => f64::INFINITY,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedPoint {
    pub point: Point,
    pub location: Location,
    /// `φ′` at the point; `None` at infinity.
    pub multiplier: Option<Complex64>,
}

/// One or two fixed points, sorted by modulus (infinity last).
#[derive(Debug, Clone, PartialEq)]
pub struct FixedPointReport {
    pub points: Vec<FixedPoint>,
}

impl FixedPointReport {
    pub fn interior(&self) -> Option<Complex64> {
        self.points
            .iter()
            .find(|p| p.location == Location::Interior)
            .and_then(|p| p.point.finite())
    }

    pub fn boundary(&self) -> impl Iterator<Item = &FixedPoint> {
        self.points
            .iter()
            .filter(|p| p.location == Location::Boundary)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LftKind {
    Identity,
    /// Elliptic automorphism fixing the origin, i.e. `z ↦ λz`.
    RotationLikeElliptic,
    Elliptic,
    Parabolic,
    HyperbolicAutomorphism,
    HyperbolicNonautomorphism,
    Loxodromic,
}

impl LftKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            LftKind::Identity => "identity",
            LftKind::RotationLikeElliptic => "rotation-like-elliptic",
            LftKind::Elliptic => "elliptic",
            LftKind::Parabolic => "parabolic",
            LftKind::HyperbolicAutomorphism => "hyperbolic-automorphism",
            LftKind::HyperbolicNonautomorphism => "hyperbolic-nonautomorphism",
            LftKind::Loxodromic => "loxodromic",
        }
    }

    pub fn is_elliptic(&self) -> bool {
        matches!(self, LftKind::Elliptic | LftKind::RotationLikeElliptic)
    }
}

impl fmt::Display for LftKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LftClass {
    pub kind: LftKind,
    pub is_automorphism: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EllipticOrder {
    Finite(u64),
    /// No `N ≤ n_max` brings `λ^N` close enough to 1.
    InfiniteWithin(u64),
}

/// `s` together with the automorphism `Φ` such that `Φ∘φ∘Φ⁻¹ = ψ_s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperbolicNormalForm {
    pub s: Complex64,
    pub conjugator: Lft,
}

impl Lft {
    /// Validated self-map of the disk.
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self> {
        let m = Self::mobius(a, b, c, d)?;
        if !m.self_map {
            return Err(Error::NotSelfMap(format!(
                "|bd̄ - ac̄| + |ad - bc| = {:.6e} exceeds |d|² - |c|² = {:.6e}",
                m.self_map_lhs(),
                m.self_map_rhs()
            )));
        }
        Ok(m)
    }

    pub fn from_real(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        Self::new(a.into(), b.into(), c.into(), d.into())
    }

    /// Any non-degenerate Möbius map; `is_self_map` records whether it maps
    /// the disk into itself.
    pub fn mobius(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self> {
        let coeffs = [a, b, c, d];
        if coeffs.iter().any(|z| !z.is_finite()) {
            return Err(Error::InvalidParameter("non-finite coefficient".into()));
        }
        let scale = coeffs.iter().map(|z| z.norm_sqr()).sum::<f64>();
        let det = a * d - b * c;
        if scale == 0.0 || det.norm() <= 1e-14 * scale {
            return Err(Error::Degenerate);
        }
        let mut m = Self {
            a,
            b,
            c,
            d,
            self_map: false,
        };
        m.self_map = m.self_map_lhs() <= m.self_map_rhs() + SELF_MAP_SLACK * scale;
        Ok(m)
    }

    pub fn identity() -> Self {
        Self {
            a: ONE,
            b: ZERO,
            c: ZERO,
            d: ONE,
            self_map: true,
        }
    }

    /// `z ↦ λz`; a self-map when `|λ| ≤ 1`.
    pub fn rotation(lambda: Complex64) -> Result<Self> {
        Self::new(lambda, ZERO, ZERO, ONE)
    }

    /// The involutive automorphism `φ_α(z) = (α - z)/(1 - ᾱz)`.
    pub fn involution(alpha: Complex64) -> Result<Self> {
        if alpha.norm() >= 1.0 {
            return Err(Error::ArgOutsideDisk(format!("alpha = {alpha}")));
        }
        Self::new(-ONE, alpha, -alpha.conj(), ONE)
    }

    /// `φ_α∘(λφ_α)`: conjugate of `z ↦ λz` by `φ_α`, fixing `α`. Elliptic for
    /// `|λ| = 1`, a contraction about `α` for `0 < |λ| < 1`.
    pub fn conjugate_rotation(alpha: Complex64, lambda: Complex64) -> Result<Self> {
        let inv = Self::involution(alpha)?;
        let rot = Self::rotation(lambda)?;
        inv.compose(&rot.compose(&inv)?)
    }

    /// `ψ_s(z) = sz/(1 - (1 - s)z)`.
    pub fn psi(s: Complex64) -> Result<Self> {
        Self::new(s, ZERO, s - ONE, ONE)
    }

    pub fn coefficients(&self) -> [Complex64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }

    pub fn c(&self) -> Complex64 {
        self.c
    }

    pub fn d(&self) -> Complex64 {
        self.d
    }

    pub fn is_self_map(&self) -> bool {
        self.self_map
    }

    fn scale(&self) -> f64 {
        self.coefficients().iter().map(|z| z.norm_sqr()).sum()
    }

    fn self_map_lhs(&self) -> f64 {
        (self.b * self.d.conj() - self.a * self.c.conj()).norm() + self.det().norm()
    }

    fn self_map_rhs(&self) -> f64 {
        self.d.norm_sqr() - self.c.norm_sqr()
    }

    pub fn det(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    /// Same map with coefficients divided by `d` (so `d = 1`).
    pub fn normalized(&self) -> Self {
        let k = self.d.inv();
        Self {
            a: self.a * k,
            b: self.b * k,
            c: self.c * k,
            d: ONE,
            self_map: self.self_map,
        }
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        (self.a * z + self.b) / (self.c * z + self.d)
    }

    pub fn derivative(&self, z: Complex64) -> Complex64 {
        let den = self.c * z + self.d;
        self.det() / (den * den)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Lft) -> Result<Lft> {
        let a = self.a * other.a + self.b * other.c;
        let b = self.a * other.b + self.b * other.d;
        let c = self.c * other.a + self.d * other.c;
        let d = self.c * other.b + self.d * other.d;
        let k = [a, b, c, d].iter().map(|z| z.norm()).fold(0.0, f64::max);
        if k == 0.0 {
            return Err(Error::Degenerate);
        }
        let m = Self::mobius(a / k, b / k, c / k, d / k)?;
        Ok(if self.self_map && other.self_map {
            Lft { self_map: true, ..m }
        } else {
            m
        })
    }

    /// Möbius inverse. For a non-automorphism the result is not a self-map
    /// and is tagged as such.
    pub fn inverse(&self) -> Result<Lft> {
        Self::mobius(self.d, -self.b, -self.c, self.a)
    }

    pub fn is_identity(&self) -> bool {
        let tol = 1e-12 * self.scale().sqrt();
        self.b.norm() <= tol && self.c.norm() <= tol && (self.a - self.d).norm() <= tol
    }

    /// Equality case of the self-map inequality, cross-checked by
    /// `|φ(ζ)| = 1` at eight points of the unit circle.
    pub fn is_automorphism(&self) -> bool {
        if !self.self_map {
            return false;
        }
        let gap = (self.self_map_rhs() - self.self_map_lhs()).abs();
        if gap > AUTOMORPHISM_SLACK * self.scale() {
            return false;
        }
        (0..8).all(|k| {
            let zeta = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / 8.0);
            let w = self.c * zeta + self.d;
            if w.norm() == 0.0 {
                return false;
            }
            ((self.a * zeta + self.b).norm() / w.norm() - 1.0).abs() <= BOUNDARY_TOL
        })
    }

    /// Roots of `cz² + (d - a)z - b = 0` in the extended plane.
    pub fn fixed_points(&self) -> Result<FixedPointReport> {
        if self.is_identity() {
            return Err(Error::IdentityMap);
        }
        let tol = 1e-12 * self.scale().sqrt();
        let mut pts: Vec<Point> = Vec::with_capacity(2);
        if self.c.norm() <= tol {
            let lin = self.d - self.a;
            if lin.norm() > tol {
                pts.push(Point::Finite(self.b / lin));
            }
            pts.push(Point::Infinity);
        } else if self.b == ZERO {
            // z = 0 is a root; the other is exact as well
            let other = (self.a - self.d) / self.c;
            pts.push(Point::Finite(ZERO));
            if other.norm() > tol {
                pts.push(Point::Finite(other));
            }
        } else {
            let qa = self.c;
            let qb = self.d - self.a;
            let qc = -self.b;
            let disc = qb * qb - qa * qc * 4.0;
            let disc_scale = qb.norm_sqr() + 4.0 * qa.norm() * qc.norm();
            if disc.norm() <= 1e-14 * disc_scale || disc_scale == 0.0 {
                pts.push(Point::Finite(-qb / (qa * 2.0)));
            } else {
                let sq = disc.sqrt();
                // pick the sign that avoids cancellation
                let q = if (qb + sq).norm() >= (qb - sq).norm() {
                    -(qb + sq) / 2.0
                } else {
                    -(qb - sq) / 2.0
                };
                pts.push(Point::Finite(q / qa));
                pts.push(Point::Finite(qc / q));
            }
        }
        pts.sort_by(|p, q| p.modulus().total_cmp(&q.modulus()));
        let points = pts
            .into_iter()
            .map(|p| match p {
                Point::Finite(z) => FixedPoint {
                    point: p,
                    location: Location::of(z),
                    multiplier: Some(self.derivative(z)),
                },
                Point::Infinity => FixedPoint {
                    point: p,
                    location: Location::Exterior,
                    multiplier: None,
                },
            })
            .collect();
        Ok(FixedPointReport { points })
    }

    /// Classification by fixed-point location. Parabolic means a single
    /// (double) fixed point; a finite point paired with infinity counts as
    /// two fixed points.
    pub fn classify(&self) -> LftClass {
        let is_automorphism = self.is_automorphism();
        let report = match self.fixed_points() {
            Ok(r) => r,
            Err(_) => {
                return LftClass {
                    kind: LftKind::Identity,
                    is_automorphism: true,
                }
            }
        };
        use Location::*;
        let kind = match report.points.as_slice() {
            [_] => LftKind::Parabolic,
            [p, q] => match (p.location, q.location) {
                (Interior, Boundary) | (Boundary, Exterior) | (Exterior, Exterior) => {
                    LftKind::HyperbolicNonautomorphism
                }
                (Boundary, Boundary) if is_automorphism => LftKind::HyperbolicAutomorphism,
                (Boundary, Boundary) => LftKind::HyperbolicNonautomorphism,
                (Interior, _) if is_automorphism => {
                    let origin = p.point.finite().is_some_and(|z| z.norm() <= 1e-12);
                    if origin {
                        LftKind::RotationLikeElliptic
                    } else {
                        LftKind::Elliptic
                    }
                }
                (Interior, _) => LftKind::Loxodromic,
                // sorted by modulus, so the inner point is never further out
                _ => LftKind::HyperbolicNonautomorphism,
            },
            _ => unreachable!("one or two fixed points"),
        };
        LftClass {
            kind,
            is_automorphism,
        }
    }

    /// Conjugates a hyperbolic map with an interior fixed point `α` and a
    /// boundary fixed point `e^{iθ}` to `ψ_s` via `Φ = λ̄φ_α`,
    /// `λ = φ_α(e^{iθ})`.
    pub fn hyperbolic_normal_form(&self) -> Result<HyperbolicNormalForm> {
        let class = self.classify();
        if class.kind != LftKind::HyperbolicNonautomorphism {
            return Err(Error::NotHyperbolic(format!("map is {}", class.kind)));
        }
        let report = self.fixed_points()?;
        let alpha = report
            .interior()
            .ok_or_else(|| Error::NotHyperbolic("no interior fixed point".into()))?;
        let edge = report
            .boundary()
            .find_map(|p| p.point.finite())
            .ok_or_else(|| Error::NotHyperbolic("no boundary fixed point".into()))?;
        let inv = Self::involution(alpha)?;
        let lambda = inv.apply(edge);
        let lambda = lambda / lambda.norm();
        let conjugator = Self::rotation(lambda.conj())?.compose(&inv)?;
        let psi = conjugator
            .compose(self)?
            .compose(&conjugator.inverse()?)?;
        let s = (psi.c + psi.d) / psi.d;
        Ok(HyperbolicNormalForm { s, conjugator })
    }

    /// Maclaurin expansion of `(az + b)/(cz + d)`.
    pub fn to_series(&self, degree: usize) -> Result<TruncatedSeries> {
        if !self.self_map {
            return Err(Error::NotSelfMap("cannot expand a non-self-map".into()));
        }
        let recip = series::reciprocal_linear(self.c, self.d, degree)?;
        let num = TruncatedSeries::from_vec_unchecked(vec![self.b, self.a]);
        Ok(series::mul(&num, &recip, degree))
    }
}

/// Smallest `N ≤ n_max` with `|λ^N - 1| < 1e-9`.
pub fn elliptic_order(lambda: Complex64, n_max: u64) -> Result<EllipticOrder> {
    if (lambda.norm() - 1.0).abs() >= 1e-12 {
        return Err(Error::NotUnitary(lambda.norm()));
    }
    let mut pow = ONE;
    for n in 1..=n_max {
        pow *= lambda;
        if (pow - ONE).norm() < 1e-9 {
            return Ok(EllipticOrder::Finite(n));
        }
    }
    Ok(EllipticOrder::InfiniteWithin(n_max))
}
