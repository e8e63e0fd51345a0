//! C ABI over `bergman-csym`.
//!
//! Objects are opaque handles created by `*_new`-style constructors and
//! released with the matching `*_free`. Every fallible function returns a
//! [`BcStatus`]; on failure a message is available from
//! [`bc_last_error_message`]. Matrices are exchanged row-major as arrays of
//! [`BcComplex`].

use std::cell::RefCell;
use std::ffi::c_char;
use std::panic::{self, AssertUnwindSafe};
use std::ptr;

use bergman_csym::csym::{self, ConjugationMatrix};
use bergman_csym::{dynamics, operators, Complex64, Error, GramTable, Lft, LftKind, OperatorMatrix, SpaceParams};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NotSelfMap = 3,
    Degenerate = 4,
    OutsideDisk = 5,
    DimMismatch = 6,
    Numerical = 7,
    BufferTooSmall = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BcComplex {
    pub re: f64,
    pub im: f64,
}

impl From<BcComplex> for Complex64 {
    fn from(z: BcComplex) -> Self {
        Complex64::new(z.re, z.im)
    }
}

impl From<Complex64> for BcComplex {
    fn from(z: Complex64) -> Self {
        BcComplex { re: z.re, im: z.im }
    }
}

/// Classification codes returned by [`bc_lft_classify`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BcLftKind {
    Identity = 0,
    RotationLikeElliptic = 1,
    Elliptic = 2,
    Parabolic = 3,
    HyperbolicAutomorphism = 4,
    HyperbolicNonautomorphism = 5,
    Loxodromic = 6,
}

impl From<LftKind> for BcLftKind {
    fn from(k: LftKind) -> Self {
        match k {
            LftKind::Identity => BcLftKind::Identity,
            LftKind::RotationLikeElliptic => BcLftKind::RotationLikeElliptic,
            LftKind::Elliptic => BcLftKind::Elliptic,
            LftKind::Parabolic => BcLftKind::Parabolic,
            LftKind::HyperbolicAutomorphism => BcLftKind::HyperbolicAutomorphism,
            LftKind::HyperbolicNonautomorphism => BcLftKind::HyperbolicNonautomorphism,
            LftKind::Loxodromic => BcLftKind::Loxodromic,
        }
    }
}

/// Opaque linear fractional self-map.
pub struct BcLft(Lft);

/// Opaque truncated operator matrix.
pub struct BcOperator(OperatorMatrix);

/// Opaque Gram table.
pub struct BcGram(GramTable);

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> BcStatus {
    match e {
        Error::NotSelfMap(_) => BcStatus::NotSelfMap,
        Error::Degenerate | Error::DegenerateDenominator | Error::IdentityMap | Error::NotHyperbolic(_) => {
            BcStatus::Degenerate
        }
        Error::ArgOutsideDisk(_) => BcStatus::OutsideDisk,
        Error::DimMismatch { .. } => BcStatus::DimMismatch,
        Error::NotAnEigenvector { .. } | Error::EscapedDisk { .. } | Error::NotConjugation(_) => BcStatus::Numerical,
        _ => BcStatus::InvalidArgument,
    }
}

fn guard(f: impl FnOnce() -> Result<(), BcStatus>) -> BcStatus {
    match panic::catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BcStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic".into());
            BcStatus::Panic
        }
    }
}

trait OrStatus<T> {
    fn or_status(self) -> Result<T, BcStatus>;
}

impl<T> OrStatus<T> for bergman_csym::Result<T> {
    fn or_status(self) -> Result<T, BcStatus> {
        self.map_err(|e| {
            set_error(e.to_string());
            status_of(&e)
        })
    }
}

fn non_null<'a, T>(p: *const T) -> Result<&'a T, BcStatus> {
    // SAFETY: callers pass either null or a pointer obtained from this library
    unsafe { p.as_ref() }.ok_or_else(|| {
        set_error("null pointer argument".into());
        BcStatus::NullPointer
    })
}

fn write_out<T>(out: *mut T, value: T) -> Result<(), BcStatus> {
    if out.is_null() {
        set_error("null output pointer".into());
        return Err(BcStatus::NullPointer);
    }
    // SAFETY: checked non-null; the caller owns the storage
    unsafe { out.write(value) };
    Ok(())
}

fn params(beta: f64) -> Result<SpaceParams, BcStatus> {
    SpaceParams::new(beta).or_status()
}

/// Copies the last error message of this thread into `buf` (NUL-terminated,
/// truncated to `len - 1` bytes). Returns the full message length.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn bc_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            // SAFETY: buf has room for len bytes
            unsafe {
                ptr::copy_nonoverlapping(msg.as_ptr().cast::<c_char>(), buf, n);
                *buf.add(n) = 0;
            }
        }
        msg.len()
    })
}

/// `z ↦ (az + b)/(cz + d)`, validated as a self-map of the disk.
///
/// # Safety
/// `out` must be a valid pointer to storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn bc_lft_new(
    a: BcComplex,
    b: BcComplex,
    c: BcComplex,
    d: BcComplex,
    out: *mut *mut BcLft,
) -> BcStatus {
    guard(|| {
        let m = Lft::new(a.into(), b.into(), c.into(), d.into()).or_status()?;
        write_out(out, Box::into_raw(Box::new(BcLft(m))))
    })
}

/// `φ_α(z) = (α - z)/(1 - ᾱz)`.
///
/// # Safety
/// `out` must be a valid pointer to storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn bc_lft_involution(alpha: BcComplex, out: *mut *mut BcLft) -> BcStatus {
    guard(|| {
        let m = Lft::involution(alpha.into()).or_status()?;
        write_out(out, Box::into_raw(Box::new(BcLft(m))))
    })
}

/// `φ_α∘(λφ_α)`.
///
/// # Safety
/// `out` must be a valid pointer to storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn bc_lft_conjugate_rotation(
    alpha: BcComplex,
    lambda: BcComplex,
    out: *mut *mut BcLft,
) -> BcStatus {
    guard(|| {
        let m = Lft::conjugate_rotation(alpha.into(), lambda.into()).or_status()?;
        write_out(out, Box::into_raw(Box::new(BcLft(m))))
    })
}

/// # Safety
/// `lft` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bc_lft_free(lft: *mut BcLft) {
    if !lft.is_null() {
        // SAFETY: created by Box::into_raw in this library
        drop(unsafe { Box::from_raw(lft) });
    }
}

/// # Safety
/// `lft` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn bc_lft_apply(lft: *const BcLft, z: BcComplex, out: *mut BcComplex) -> BcStatus {
    guard(|| {
        let m = non_null(lft)?;
        write_out(out, m.0.apply(z.into()).into())
    })
}

/// # Safety
/// `lft` must be a live handle; output pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn bc_lft_classify(
    lft: *const BcLft,
    kind: *mut BcLftKind,
    is_automorphism: *mut bool,
) -> BcStatus {
    guard(|| {
        let class = non_null(lft)?.0.classify();
        write_out(kind, class.kind.into())?;
        write_out(is_automorphism, class.is_automorphism)
    })
}

/// Denjoy–Wolff point, or the interior fixed point for elliptic maps
/// (`*elliptic` is then set).
///
/// # Safety
/// `lft` must be a live handle; output pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn bc_lft_denjoy_wolff(
    lft: *const BcLft,
    omega: *mut BcComplex,
    elliptic: *mut bool,
) -> BcStatus {
    guard(|| {
        let dw = dynamics::denjoy_wolff(&non_null(lft)?.0).or_status()?;
        write_out(omega, dw.omega.into())?;
        write_out(elliptic, dw.route == dynamics::DwRoute::EllipticNoDw)
    })
}

/// `‖zⁿ‖²` in `A²_β`.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn bc_weight(beta: f64, n: usize, out: *mut f64) -> BcStatus {
    guard(|| write_out(out, params(beta)?.weight(n)))
}

/// Truncated `C_φ` of size `(degree+1)²` in the orthonormal basis.
///
/// # Safety
/// `lft` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn bc_composition_matrix(
    lft: *const BcLft,
    beta: f64,
    degree: usize,
    out: *mut *mut BcOperator,
) -> BcStatus {
    guard(|| {
        let m = non_null(lft)?;
        let op = operators::composition_matrix(&m.0, &params(beta)?, degree).or_status()?;
        write_out(out, Box::into_raw(Box::new(BcOperator(op))))
    })
}

/// Conjugate transpose as a new handle.
///
/// # Safety
/// `op` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn bc_operator_adjoint(op: *const BcOperator, out: *mut *mut BcOperator) -> BcStatus {
    guard(|| {
        let adj = non_null(op)?.0.adjoint();
        write_out(out, Box::into_raw(Box::new(BcOperator(adj))))
    })
}

/// # Safety
/// `op` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bc_operator_free(op: *mut BcOperator) {
    if !op.is_null() {
        // SAFETY: created by Box::into_raw in this library
        drop(unsafe { Box::from_raw(op) });
    }
}

/// Number of rows (= columns); 0 for a null handle.
///
/// # Safety
/// `op` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bc_operator_dim(op: *const BcOperator) -> usize {
    // SAFETY: null or live handle
    unsafe { op.as_ref() }.map_or(0, |o| o.0.dim())
}

/// Copies the entries row-major into `buf` of length `len ≥ dim²`.
///
/// # Safety
/// `op` must be a live handle; `buf` must point to `len` writable elements.
#[no_mangle]
pub unsafe extern "C" fn bc_operator_entries(op: *const BcOperator, buf: *mut BcComplex, len: usize) -> BcStatus {
    guard(|| {
        let m = non_null(op)?.0.entries();
        let n = m.nrows();
        if buf.is_null() {
            set_error("null output buffer".into());
            return Err(BcStatus::NullPointer);
        }
        if len < n * n {
            set_error(format!("buffer holds {len} entries, need {}", n * n));
            return Err(BcStatus::BufferTooSmall);
        }
        for i in 0..n {
            for j in 0..n {
                // SAFETY: i*n + j < n² ≤ len
                unsafe { buf.add(i * n + j).write(m[(i, j)].into()) };
            }
        }
        Ok(())
    })
}

/// `‖U·conj(T)·U^H - T^H‖_F` for the plain conjugation `U = I`.
///
/// # Safety
/// `op` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn bc_csym_residual_plain(op: *const BcOperator, out: *mut f64) -> BcStatus {
    guard(|| {
        let t = &non_null(op)?.0;
        let r = csym::csym_residual(t, &ConjugationMatrix::identity(t.dim())).or_status()?;
        write_out(out, r)
    })
}

/// Runs the seeded conjugation search and reports the best residual.
///
/// # Safety
/// `op` must be a live handle; `best` must be valid.
#[no_mangle]
pub unsafe extern "C" fn bc_conjugation_search(
    op: *const BcOperator,
    iters: usize,
    seed: u64,
    best: *mut f64,
) -> BcStatus {
    guard(|| {
        let res = csym::conjugation_search(&non_null(op)?.0, iters, seed);
        write_out(best, res.best())
    })
}

/// Exact Gram table `⟨v_n, v_m⟩`, `0 ≤ n, m ≤ n_max`, for integer `β`.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn bc_gram_exact(beta: f64, alpha: BcComplex, n_max: usize, out: *mut *mut BcGram) -> BcStatus {
    guard(|| {
        let g = csym::gram_exact(&params(beta)?, alpha.into(), n_max).or_status()?;
        write_out(out, Box::into_raw(Box::new(BcGram(g))))
    })
}

/// Gram table from `v_n` truncated at `degree` (any `β`).
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn bc_gram_truncated(
    beta: f64,
    alpha: BcComplex,
    n_max: usize,
    degree: usize,
    out: *mut *mut BcGram,
) -> BcStatus {
    guard(|| {
        let g = csym::gram_truncated(&params(beta)?, alpha.into(), n_max, degree).or_status()?;
        write_out(out, Box::into_raw(Box::new(BcGram(g))))
    })
}

/// # Safety
/// `gram` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bc_gram_free(gram: *mut BcGram) {
    if !gram.is_null() {
        // SAFETY: created by Box::into_raw in this library
        drop(unsafe { Box::from_raw(gram) });
    }
}

/// Number of rows (`n_max + 1`); 0 for a null handle.
///
/// # Safety
/// `gram` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bc_gram_size(gram: *const BcGram) -> usize {
    // SAFETY: null or live handle
    unsafe { gram.as_ref() }.map_or(0, |g| g.0.size())
}

/// # Safety
/// `gram` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn bc_gram_get(gram: *const BcGram, n: usize, m: usize, out: *mut BcComplex) -> BcStatus {
    guard(|| {
        let g = &non_null(gram)?.0;
        if n >= g.size() || m >= g.size() {
            set_error(format!("index ({n}, {m}) outside a table of size {}", g.size()));
            return Err(BcStatus::DimMismatch);
        }
        write_out(out, g.get(n, m).into())
    })
}

/// Largest `|G[n][m]|` with `|n - m| ≥ width`.
///
/// # Safety
/// `gram` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn bc_gram_max_out_of_band(gram: *const BcGram, width: usize, out: *mut f64) -> BcStatus {
    guard(|| write_out(out, non_null(gram)?.0.max_out_of_band(width)))
}

/// Block residual of `C_φ^* = M_g C_σ M_h^*` at truncation `degree`.
///
/// # Safety
/// `lft` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn bc_verify_hurst(
    lft: *const BcLft,
    beta: f64,
    degree: usize,
    block: usize,
    out: *mut f64,
) -> BcStatus {
    guard(|| {
        let r = operators::verify_hurst(&non_null(lft)?.0, &params(beta)?, degree, block).or_status()?;
        write_out(out, r)
    })
}

/// Relative residual of `C_σ(1-z)^λ = s^λ(1-z)^λ` on degrees `≤ block`.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn bc_hurst_eigencheck(
    s: BcComplex,
    lambda: f64,
    beta: f64,
    degree: usize,
    block: usize,
    out: *mut f64,
) -> BcStatus {
    guard(|| {
        let r = dynamics::hurst_eigencheck(s.into(), lambda, &params(beta)?, degree, block).or_status()?;
        write_out(out, r)
    })
}

/// Both routes to `⟨φ_α^{3+β}, K_0⟩` and their difference.
///
/// # Safety
/// Output pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn bc_obstruction_witness(
    beta: f64,
    alpha: BcComplex,
    direct: *mut BcComplex,
    inner_product: *mut BcComplex,
) -> BcStatus {
    guard(|| {
        let w = csym::obstruction_witness(&params(beta)?, alpha.into()).or_status()?;
        write_out(direct, w.direct.into())?;
        write_out(inner_product, w.inner_product.into())
    })
}
