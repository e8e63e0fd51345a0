//! Truncated Maclaurin series with complex coefficients.
//!
//! Every function in the crate is carried around as a dense coefficient
//! vector `f̂(0), …, f̂(D)`. The truncation degree is always passed
//! explicitly; operations never pick one on their own.

use std::ops::{Add, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<Complex64>,
}

impl TruncatedSeries {
    /// Builds a series from its coefficients. An empty vector is the zero
    /// series of degree 0.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if let Some(index) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        if coeffs.is_empty() {
            return Ok(Self::zero(0));
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub(crate) fn from_vec_unchecked(coeffs: Vec<Complex64>) -> Self {
        debug_assert!(!coeffs.is_empty());
        Self { coeffs }
    }

    pub fn zero(degree: usize) -> Self {
        Self {
            coeffs: vec![Complex64::new(0.0, 0.0); degree + 1],
        }
    }

    pub fn constant(c: Complex64, degree: usize) -> Self {
        let mut s = Self::zero(degree);
        s.coeffs[0] = c;
        s
    }

    /// `z^n` truncated at `degree` (the zero series when `n > degree`).
    pub fn monomial(n: usize, degree: usize) -> Self {
        let mut s = Self::zero(degree);
        if n <= degree {
            s.coeffs[n] = Complex64::new(1.0, 0.0);
        }
        s
    }

    /// The identity symbol `z`.
    pub fn identity(degree: usize) -> Self {
        Self::monomial(1, degree.max(1))
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// Coefficient `n`, zero past the stored degree.
    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs.get(n).copied().unwrap_or_default()
    }

    /// Number of coefficients up to and including the last nonzero one.
    pub fn effective_len(&self) -> usize {
        self.coeffs
            .iter()
            .rposition(|c| *c != Complex64::new(0.0, 0.0))
            .map_or(0, |i| i + 1)
    }

    /// Cuts or zero-pads to the given degree.
    pub fn truncated(&self, degree: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(degree + 1, Complex64::new(0.0, 0.0));
        Self { coeffs }
    }

    /// Evaluates the truncated polynomial at `z` (Horner).
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|&x| x * c).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    fn zip_with(&self, other: &Self, op: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self {
            coeffs: (0..len).map(|n| op(self.coeff(n), other.coeff(n))).collect(),
        }
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: Self) -> TruncatedSeries {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn sub(self, rhs: Self) -> TruncatedSeries {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn neg(self) -> TruncatedSeries {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

/// Cauchy product truncated at `degree`.
pub fn mul(f: &TruncatedSeries, g: &TruncatedSeries, degree: usize) -> TruncatedSeries {
    let zero = Complex64::new(0.0, 0.0);
    let mut out = vec![zero; degree + 1];
    let lf = f.effective_len().min(degree + 1);
    let lg = g.effective_len().min(degree + 1);
    for (i, &fi) in f.coeffs[..lf].iter().enumerate() {
        if fi == zero {
            continue;
        }
        let upper = lg.min(degree + 1 - i);
        for (o, &gj) in out[i..i + upper].iter_mut().zip(&g.coeffs[..upper]) {
            *o += fi * gj;
        }
    }
    TruncatedSeries { coeffs: out }
}

/// `f^k` truncated at `degree`, by repeated multiplication.
pub fn power(f: &TruncatedSeries, k: usize, degree: usize) -> TruncatedSeries {
    let mut acc = TruncatedSeries::constant(Complex64::new(1.0, 0.0), degree);
    for _ in 0..k {
        acc = mul(&acc, f, degree);
    }
    acc
}

/// Maclaurin coefficients of `f∘g` up to `degree`. `g(0)` may be nonzero;
/// the truncated polynomial `f` is evaluated at `g` by Horner's rule.
pub fn compose(f: &TruncatedSeries, g: &TruncatedSeries, degree: usize) -> TruncatedSeries {
    let lf = f.effective_len();
    let mut acc = TruncatedSeries::zero(degree);
    for &c in f.coeffs[..lf].iter().rev() {
        acc = mul(&acc, g, degree);
        acc.coeffs[0] += c;
    }
    acc
}

/// Expansion of `1/(cz + d)`: coefficient `n` is `(-c/d)^n / d`.
pub fn reciprocal_linear(c: Complex64, d: Complex64, degree: usize) -> Result<TruncatedSeries> {
    if d == Complex64::new(0.0, 0.0) {
        return Err(Error::DegenerateDenominator);
    }
    let ratio = -c / d;
    let mut term = d.inv();
    let coeffs = (0..=degree)
        .map(|_| {
            let t = term;
            term *= ratio;
            t
        })
        .collect();
    Ok(TruncatedSeries { coeffs })
}

/// Coefficients of `(1 + u z)^p` for a real exponent `p`, using the
/// recurrence `C(p, n) = C(p, n-1)·(p - n + 1)/n`. For a non-negative
/// integer `p` the recurrence hits an exact zero at `n = p + 1`.
pub fn binomial_expand(u: Complex64, p: f64, degree: usize) -> TruncatedSeries {
    let mut binom = 1.0_f64;
    let mut upow = Complex64::new(1.0, 0.0);
    let mut coeffs = Vec::with_capacity(degree + 1);
    for n in 0..=degree {
        if n > 0 {
            binom *= (p - (n as f64) + 1.0) / n as f64;
            upow *= u;
        }
        coeffs.push(upow * binom);
    }
    TruncatedSeries { coeffs }
}

/// Generalized binomial coefficient `C(p, n)` by the same product recurrence.
pub fn binomial(p: f64, n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * (p - k as f64 + 1.0) / k as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn real(xs: &[f64]) -> TruncatedSeries {
        TruncatedSeries::from_real(xs).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let p = mul(&real(&[1.0, 1.0]), &real(&[1.0, -1.0]), 2);
        assert_eq!(p, real(&[1.0, 0.0, -1.0]));
    }

    #[test]
    fn mul_by_one_is_identity() {
        let f = TruncatedSeries::new(vec![c(1.0, 2.0), c(-0.5, 0.25), c(3.0, 0.0)]).unwrap();
        let one = TruncatedSeries::constant(c(1.0, 0.0), 0);
        assert_eq!(mul(&f, &one, 2), f);
    }

    #[test]
    fn hand_convolution() {
        // direct double loop
        let f = [1.0, 2.0, 1.0];
        let g = [3.0, 1.0];
        let mut expect = [0.0; 4];
        for (i, fi) in f.iter().enumerate() {
            for (j, gj) in g.iter().enumerate() {
                expect[i + j] += fi * gj;
            }
        }
        assert_eq!(expect, [3.0, 7.0, 5.0, 1.0]);
        assert_eq!(mul(&real(&f), &real(&g), 3), real(&expect));
    }

    #[test]
    fn compose_examples() {
        let sq = real(&[0.0, 0.0, 1.0]);
        assert_eq!(compose(&sq, &real(&[1.0, 1.0]), 2), real(&[1.0, 2.0, 1.0]));

        let f = TruncatedSeries::new(vec![c(0.3, -1.0), c(2.0, 0.5), c(0.0, 1.0)]).unwrap();
        assert_eq!(compose(&f, &TruncatedSeries::identity(2), 2), f);

        let geo = real(&[1.0; 5]);
        let half = real(&[0.0, 0.5]);
        assert_eq!(
            compose(&geo, &half, 4),
            real(&[1.0, 0.5, 0.25, 0.125, 0.0625])
        );
    }

    #[test]
    fn reciprocal_linear_examples() {
        assert_eq!(
            reciprocal_linear(c(0.0, 0.0), c(2.0, 0.0), 3).unwrap(),
            real(&[0.5, 0.0, 0.0, 0.0])
        );
        assert_eq!(
            reciprocal_linear(c(1.0, 0.0), c(2.0, 0.0), 2).unwrap(),
            real(&[0.5, -0.25, 0.125])
        );
        assert_eq!(
            reciprocal_linear(c(-0.5, 0.0), c(1.0, 0.0), 1).unwrap(),
            real(&[1.0, 0.5])
        );
        assert_eq!(
            reciprocal_linear(c(1.0, 0.0), c(0.0, 0.0), 1),
            Err(Error::DegenerateDenominator)
        );
    }

    #[test]
    fn binomial_examples() {
        let b = binomial_expand(c(-0.5, 0.0), 2.0, 6);
        assert_eq!(b, real(&[1.0, -1.0, 0.25, 0.0, 0.0, 0.0, 0.0]));
        assert_eq!(binomial_expand(c(0.7, 0.2), 0.0, 3), real(&[1.0, 0.0, 0.0, 0.0]));
        assert_eq!(binomial_expand(c(-1.0, 0.0), 1.5, 2), real(&[1.0, -1.5, 0.375]));
    }

    #[test]
    fn non_finite_rejected() {
        assert_eq!(
            TruncatedSeries::new(vec![c(1.0, 0.0), c(f64::NAN, 0.0)]),
            Err(Error::NonFinite { index: 1 })
        );
    }

    #[test]
    fn eval_matches_sum() {
        let f = real(&[1.0, 2.0, 3.0]);
        let z = c(0.5, 0.5);
        assert_eq!(f.eval(z), c(1.0, 0.0) + z * 2.0 + z * z * 3.0);
    }
}
