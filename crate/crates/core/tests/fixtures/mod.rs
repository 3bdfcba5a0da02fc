//! Reference values transcribed from the published N=4 run table and the
//! N=6 matrix listing. Amplitudes are written symbolically with `S = 1/√2`
//! and `H = 1/2`.

#![allow(dead_code)]

use std::f64::consts::FRAC_1_SQRT_2;

pub const S: f64 = FRAC_1_SQRT_2;
pub const H: f64 = 0.5;

pub struct TraceRow {
    pub input: &'static str,
    pub after_stage_1: [f64; 4],
    pub after_stage_2: [f64; 4],
    pub final_state: [f64; 4],
    pub result: bool,
}

const fn row(
    input: &'static str,
    after_stage_1: [f64; 4],
    after_stage_2: [f64; 4],
    final_state: [f64; 4],
    result: bool,
) -> TraceRow {
    TraceRow { input, after_stage_1, after_stage_2, final_state, result }
}

/// Every input of the N=4 algorithm: state after each stage, final state, result.
pub const N4_TRACE_TABLE: [TraceRow; 16] = [
    row("0000", [S, 0.0, S, 0.0], [H, H, H, H], [1.0, 0.0, 0.0, 0.0], true),
    row("0001", [S, 0.0, S, 0.0], [H, -H, H, -H], [0.0, 1.0, 0.0, 0.0], false),
    row("0010", [S, 0.0, S, 0.0], [-H, H, -H, H], [0.0, -1.0, 0.0, 0.0], false),
    row("0011", [S, 0.0, S, 0.0], [-H, -H, -H, -H], [-1.0, 0.0, 0.0, 0.0], true),
    row("0100", [S, 0.0, -S, 0.0], [H, H, -H, -H], [0.0, 0.0, 1.0, 0.0], false),
    row("0101", [S, 0.0, -S, 0.0], [H, -H, -H, H], [0.0, 0.0, 0.0, 1.0], false),
    row("0110", [S, 0.0, -S, 0.0], [-H, H, H, -H], [0.0, 0.0, 0.0, -1.0], false),
    row("0111", [S, 0.0, -S, 0.0], [-H, -H, H, H], [0.0, 0.0, -1.0, 0.0], false),
    row("1000", [-S, 0.0, S, 0.0], [-H, -H, H, H], [0.0, 0.0, -1.0, 0.0], false),
    row("1001", [-S, 0.0, S, 0.0], [-H, H, H, -H], [0.0, 0.0, 0.0, -1.0], false),
    row("1010", [-S, 0.0, S, 0.0], [H, -H, -H, H], [0.0, 0.0, 0.0, 1.0], false),
    row("1011", [-S, 0.0, S, 0.0], [H, H, -H, -H], [0.0, 0.0, 1.0, 0.0], false),
    row("1100", [-S, 0.0, -S, 0.0], [-H, -H, -H, -H], [-1.0, 0.0, 0.0, 0.0], true),
    row("1101", [-S, 0.0, -S, 0.0], [-H, H, -H, H], [0.0, -1.0, 0.0, 0.0], false),
    row("1110", [-S, 0.0, -S, 0.0], [H, -H, H, -H], [0.0, 1.0, 0.0, 0.0], false),
    row("1111", [-S, 0.0, -S, 0.0], [H, H, H, H], [1.0, 0.0, 0.0, 0.0], true),
];

/// Stage unitaries of the N=6 listing, row-major.
pub fn n6_u1() -> Vec<f64> {
    #[rustfmt::skip]
    let m = vec![
        S, 0.0, 0.0, 0.0, S, 0.0, 0.0, 0.0,
        0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0,
        0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0,
        0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0,
        S, 0.0, 0.0, 0.0, -S, 0.0, 0.0, 0.0,
        0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0,
        0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0,
        0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0,
    ];
    m
}

pub fn n6_u2() -> Vec<f64> {
    #[rustfmt::skip]
    let m = vec![
        S, 0.0, S, 0.0, 0.0, 0.0, 0.0, 0.0,
        0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0,
        S, 0.0, -S, 0.0, 0.0, 0.0, 0.0, 0.0,
        0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0,
        0.0, 0.0, 0.0, 0.0, S, 0.0, S, 0.0,
        0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0,
        0.0, 0.0, 0.0, 0.0, S, 0.0, -S, 0.0,
        0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0,
    ];
    m
}

pub fn n6_u3() -> Vec<f64> {
    #[rustfmt::skip]
    let m = vec![
        S, S, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0,
        S, -S, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0,
        0.0, 0.0, S, S, 0.0, 0.0, 0.0, 0.0,
        0.0, 0.0, S, -S, 0.0, 0.0, 0.0, 0.0,
        0.0, 0.0, 0.0, 0.0, S, S, 0.0, 0.0,
        0.0, 0.0, 0.0, 0.0, S, -S, 0.0, 0.0,
        0.0, 0.0, 0.0, 0.0, 0.0, 0.0, S, S,
        0.0, 0.0, 0.0, 0.0, 0.0, 0.0, S, -S,
    ];
    m
}

/// Query diagonals of the N=6 listing: `0` = fixed `+1`, `k` = `(-1)^{x_k}`.
pub const N6_Q1: [usize; 8] = [1, 0, 0, 0, 2, 0, 0, 0];
pub const N6_Q2: [usize; 8] = [3, 0, 4, 0, 3, 0, 4, 0];
pub const N6_Q3: [usize; 8] = [5, 6, 5, 6, 5, 6, 5, 6];

/// Sign pattern of the final transform as listed; every magnitude is 1/(2√2).
pub const N6_FINAL_LISTED_SIGNS: [&str; 8] = [
    "++++++++",
    "+-+-+-+-",
    "++--++--",
    "+--++--+",
    "++++--+-",
    "+-+--+-+",
    "++--++--",
    "+-+---++",
];

/// Rows of the listed final transform that disagree with `H⊗H⊗H`.
pub const N6_FINAL_ERRATA_ROWS: [usize; 3] = [4, 6, 7];

pub fn assert_close(actual: &[f64], expected: &[f64], tol: f64, what: &str) {
    assert_eq!(actual.len(), expected.len(), "{what}: length");
    for (i, (a, e)) in actual.iter().zip(expected).enumerate() {
        assert!((a - e).abs() <= tol, "{what}: entry {i} is {a}, expected {e}");
    }
}
