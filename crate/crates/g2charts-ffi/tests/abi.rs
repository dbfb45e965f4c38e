use std::ffi::{CStr, CString};
use std::ptr;

use g2charts_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

#[test]
fn basic_chart_round_trip() {
    unsafe {
        let mut n2 = ptr::null_mut();
        assert_eq!(g2_chart_basic(c("N2").as_ptr(), &mut n2), G2Status::Ok);
        assert_eq!(g2_chart_validate(n2), G2Status::Ok);
        let mut counts = G2Counts::default();
        assert_eq!(g2_chart_counts(n2, &mut counts), G2Status::Ok);
        assert_eq!((counts.n_i_plus, counts.n_i_minus, counts.n_ii_plus, counts.n_ii_minus), (28, 0, 1, 0));
        let text = g2_chart_print(n2);
        let mut back = ptr::null_mut();
        assert_eq!(g2_chart_parse(text, &mut back), G2Status::Ok);
        assert_eq!(CStr::from_ptr(g2_chart_print(back)), CStr::from_ptr(text));
        g2_string_free(text);
        g2_chart_free(back);
        g2_chart_free(n2);
    }
}

#[test]
fn system_to_chart_and_back() {
    unsafe {
        let mut w0 = ptr::null_mut();
        assert_eq!(g2_system_basic(c("W0").as_ptr(), &mut w0), G2Status::Ok);
        let mut chart = ptr::null_mut();
        assert_eq!(g2_system_to_chart(w0, &mut chart), G2Status::Ok);
        let mut sys = ptr::null_mut();
        assert_eq!(g2_chart_to_system(chart, &mut sys), G2Status::Ok);
        let mut counts = G2Counts::default();
        assert_eq!(g2_system_counts(sys, &mut counts), G2Status::Ok);
        assert_eq!(counts.n_i_plus, 20);
        g2_system_free(sys);
        g2_chart_free(chart);
        g2_system_free(w0);
    }
}

#[test]
fn moves_and_errors() {
    unsafe {
        let mut n0 = ptr::null_mut();
        assert_eq!(g2_chart_basic(c("N0").as_ptr(), &mut n0), G2Status::Ok);
        let mut with_hoop = ptr::null_mut();
        assert_eq!(g2_chart_apply_move(n0, c("hoop-insert region outer 2 L").as_ptr(), &mut with_hoop), G2Status::Ok);
        let mut out = ptr::null_mut();
        assert_eq!(g2_chart_apply_move(n0, c("hoop-remove edge e3").as_ptr(), &mut out), G2Status::MoveRefused);
        let msg = CStr::from_ptr(g2_last_error()).to_str().unwrap();
        assert!(msg.contains("not a hoop"), "{msg}");
        assert_eq!(g2_chart_apply_move(n0, c("bogus").as_ptr(), &mut out), G2Status::Parse);
        assert_eq!(g2_chart_basic(c("N9").as_ptr(), &mut out), G2Status::UnknownName);
        assert_eq!(g2_chart_validate(ptr::null()), G2Status::NullArgument);
        g2_chart_free(with_hoop);
        g2_chart_free(n0);
    }
}

#[test]
fn words_and_normal_form() {
    unsafe {
        let mut v = G2Verdict::Unknown;
        assert_eq!(g2_word_is_identity(c("z1 z3 z1' z3'").as_ptr(), &mut v), G2Status::Ok);
        assert_eq!(v, G2Verdict::Yes);
        assert_eq!(g2_word_is_identity(c("z1").as_ptr(), &mut v), G2Status::Ok);
        assert_eq!(v, G2Verdict::No);
        let mut nf = G2NormalForm::default();
        let f2 = G2Counts { n_i_plus: 28, n_i_minus: 0, n_ii_plus: 1, n_ii_minus: 0 };
        assert_eq!(g2_normal_form(f2, &mut nf), G2Status::Ok);
        assert_eq!((nf.energy, nf.c, nf.m0), (0, 1, 3));
        let sep = G2Counts { n_i_plus: 0, n_i_minus: 0, n_ii_plus: 1, n_ii_minus: 1 };
        assert_eq!(g2_normal_form(sep, &mut nf), G2Status::Ok);
        assert_eq!((nf.e, nf.m0), (1, -1));
        let bad = G2Counts { n_i_plus: 7, ..G2Counts::default() };
        assert_eq!(g2_normal_form(bad, &mut nf), G2Status::NotRealizable);
    }
}

#[test]
fn header_declares_every_entry_point() {
    let header = include_str!("../include/g2charts.h");
    let src = include_str!("../src/lib.rs");
    let names: Vec<&str> = src
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(names.len() >= 15);
    for n in names {
        assert!(header.contains(&format!("{n}(")), "{n} missing from header");
    }
}
