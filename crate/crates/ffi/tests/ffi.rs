use std::ptr;

use bergman_csym_ffi::*;

fn c(re: f64, im: f64) -> BcComplex {
    BcComplex { re, im }
}

fn last_error() -> String {
    let mut buf = vec![0 as std::ffi::c_char; 256];
    unsafe { bc_last_error_message(buf.as_mut_ptr(), buf.len()) };
    let bytes: Vec<u8> = buf.iter().take_while(|&&b| b != 0).map(|&b| b as u8).collect();
    String::from_utf8(bytes).unwrap()
}

#[test]
fn lft_lifecycle_and_classification() {
    let mut m = ptr::null_mut();
    let st = unsafe { bc_lft_new(c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(2.0, 0.0), &mut m) };
    assert_eq!(st, BcStatus::Ok);
    let mut kind = BcLftKind::Identity;
    let mut auto = true;
    assert_eq!(unsafe { bc_lft_classify(m, &mut kind, &mut auto) }, BcStatus::Ok);
    assert_eq!(kind, BcLftKind::HyperbolicNonautomorphism);
    assert!(!auto);
    let mut w = c(0.0, 0.0);
    let mut elliptic = true;
    assert_eq!(unsafe { bc_lft_denjoy_wolff(m, &mut w, &mut elliptic) }, BcStatus::Ok);
    assert_eq!((w.re, w.im, elliptic), (1.0, 0.0, false));
    let mut z = c(0.0, 0.0);
    assert_eq!(unsafe { bc_lft_apply(m, c(0.0, 0.0), &mut z) }, BcStatus::Ok);
    assert_eq!(z, c(0.5, 0.0));
    unsafe { bc_lft_free(m) };
}

#[test]
fn errors_carry_codes_and_messages() {
    let mut m = ptr::null_mut();
    let st = unsafe { bc_lft_new(c(3.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), &mut m) };
    assert_eq!(st, BcStatus::NotSelfMap);
    assert!(m.is_null());
    assert!(last_error().contains("not a self-map"), "{}", last_error());

    let st = unsafe { bc_lft_involution(c(1.5, 0.0), &mut m) };
    assert_ne!(st, BcStatus::Ok);

    let mut kind = BcLftKind::Identity;
    let mut auto = false;
    assert_eq!(unsafe { bc_lft_classify(ptr::null(), &mut kind, &mut auto) }, BcStatus::NullPointer);

    let mut g = ptr::null_mut();
    assert_eq!(unsafe { bc_gram_exact(0.5, c(0.3, 0.0), 4, &mut g) }, BcStatus::InvalidArgument);
    let mut w = 0.0;
    assert_eq!(unsafe { bc_weight(-2.0, 1, &mut w) }, BcStatus::InvalidArgument);
    assert_eq!(unsafe { bc_weight(0.0, 1, ptr::null_mut()) }, BcStatus::NullPointer);
}

#[test]
fn free_accepts_null() {
    unsafe {
        bc_lft_free(ptr::null_mut());
        bc_operator_free(ptr::null_mut());
        bc_gram_free(ptr::null_mut());
        assert_eq!(bc_operator_dim(ptr::null()), 0);
        assert_eq!(bc_gram_size(ptr::null()), 0);
    }
}

#[test]
fn weights() {
    let mut w = 0.0;
    assert_eq!(unsafe { bc_weight(0.0, 3, &mut w) }, BcStatus::Ok);
    assert_eq!(w, 0.25);
    assert_eq!(unsafe { bc_weight(-1.0, 7, &mut w) }, BcStatus::Ok);
    assert_eq!(w, 1.0);
}

#[test]
fn rotation_matrix_is_diagonal_and_plainly_symmetric() {
    let lambda = c((0.4f64).cos(), (0.4f64).sin());
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { bc_lft_conjugate_rotation(c(0.0, 0.0), lambda, &mut m) }, BcStatus::Ok);
    let mut op = ptr::null_mut();
    assert_eq!(unsafe { bc_composition_matrix(m, 1.0, 5, &mut op) }, BcStatus::Ok);
    let n = unsafe { bc_operator_dim(op) };
    assert_eq!(n, 6);

    let mut small = vec![c(0.0, 0.0); n * n - 1];
    assert_eq!(unsafe { bc_operator_entries(op, small.as_mut_ptr(), small.len()) }, BcStatus::BufferTooSmall);

    let mut buf = vec![c(0.0, 0.0); n * n];
    assert_eq!(unsafe { bc_operator_entries(op, buf.as_mut_ptr(), buf.len()) }, BcStatus::Ok);
    for i in 0..n {
        for j in 0..n {
            let e = buf[i * n + j];
            if i != j {
                assert_eq!(e, c(0.0, 0.0));
            }
        }
    }
    let d = buf[n + 1];
    assert!((d.re - lambda.re).abs() < 1e-15 && (d.im - lambda.im).abs() < 1e-15);

    let mut r = f64::NAN;
    assert_eq!(unsafe { bc_csym_residual_plain(op, &mut r) }, BcStatus::Ok);
    assert!(r < 1e-14);
    unsafe {
        bc_operator_free(op);
        bc_lft_free(m);
    }
}

#[test]
fn adjoint_is_conjugate_transpose() {
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { bc_lft_involution(c(0.3, 0.2), &mut m) }, BcStatus::Ok);
    let mut op = ptr::null_mut();
    assert_eq!(unsafe { bc_composition_matrix(m, 0.0, 4, &mut op) }, BcStatus::Ok);
    let mut adj = ptr::null_mut();
    assert_eq!(unsafe { bc_operator_adjoint(op, &mut adj) }, BcStatus::Ok);
    let n = 5;
    let mut a = vec![c(0.0, 0.0); n * n];
    let mut b = vec![c(0.0, 0.0); n * n];
    unsafe {
        bc_operator_entries(op, a.as_mut_ptr(), a.len());
        bc_operator_entries(adj, b.as_mut_ptr(), b.len());
    }
    for i in 0..n {
        for j in 0..n {
            assert_eq!(b[i * n + j], c(a[j * n + i].re, -a[j * n + i].im));
        }
    }
    let mut best = f64::NAN;
    assert_eq!(unsafe { bc_conjugation_search(op, 30, 1, &mut best) }, BcStatus::Ok);
    let mut plain = f64::NAN;
    unsafe { bc_csym_residual_plain(op, &mut plain) };
    assert!(best <= plain);
    unsafe {
        bc_operator_free(adj);
        bc_operator_free(op);
        bc_lft_free(m);
    }
}

#[test]
fn gram_tables() {
    let alpha = c(0.4, 0.1);
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { bc_gram_exact(0.0, alpha, 12, &mut g) }, BcStatus::Ok);
    assert_eq!(unsafe { bc_gram_size(g) }, 13);
    let mut band = f64::NAN;
    assert_eq!(unsafe { bc_gram_max_out_of_band(g, 3, &mut band) }, BcStatus::Ok);
    assert!(band < 1e-12);
    let mut e = c(0.0, 0.0);
    assert_eq!(unsafe { bc_gram_get(g, 13, 0, &mut e) }, BcStatus::DimMismatch);
    assert_eq!(unsafe { bc_gram_get(g, 2, 0, &mut e) }, BcStatus::Ok);
    assert!(e.re.hypot(e.im) > 1e-3);

    let mut t = ptr::null_mut();
    assert_eq!(unsafe { bc_gram_truncated(0.0, alpha, 12, 200, &mut t) }, BcStatus::Ok);
    for n in 0..13 {
        for m in 0..13 {
            let (mut x, mut y) = (c(0.0, 0.0), c(0.0, 0.0));
            unsafe {
                bc_gram_get(g, n, m, &mut x);
                bc_gram_get(t, n, m, &mut y);
            }
            assert!((x.re - y.re).hypot(x.im - y.im) < 1e-9, "({n},{m})");
        }
    }
    unsafe {
        bc_gram_free(t);
        bc_gram_free(g);
    }
}

#[test]
fn hurst_eigen_and_witness() {
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { bc_lft_involution(c(0.5, 0.0), &mut m) }, BcStatus::Ok);
    let mut r = f64::NAN;
    assert_eq!(unsafe { bc_verify_hurst(m, 0.0, 63, 16, &mut r) }, BcStatus::Ok);
    assert!(r < 1e-10);
    assert_eq!(unsafe { bc_verify_hurst(m, 0.0, 63, 40, &mut r) }, BcStatus::InvalidArgument);
    unsafe { bc_lft_free(m) };

    assert_eq!(unsafe { bc_hurst_eigencheck(c(0.5, 0.0), 1.0, 0.0, 256, 32, &mut r) }, BcStatus::Ok);
    assert!(r < 1e-12);

    let (mut direct, mut inner) = (c(0.0, 0.0), c(0.0, 0.0));
    assert_eq!(unsafe { bc_obstruction_witness(0.0, c(0.5, 0.0), &mut direct, &mut inner) }, BcStatus::Ok);
    assert!((direct.re - 0.125).abs() < 1e-15);
    assert!((inner.re - direct.re).hypot(inner.im - direct.im) < 1e-10);
}

#[test]
fn header_declares_the_api() {
    let header = include_str!("../include/bergman_csym.h");
    for name in [
        "bc_lft_new",
        "bc_lft_free",
        "bc_composition_matrix",
        "bc_operator_entries",
        "bc_gram_exact",
        "bc_last_error_message",
        "BC_STATUS_OK",
        "BC_LFT_KIND_PARABOLIC",
    ] {
        assert!(header.contains(name), "missing {name}");
    }
}
