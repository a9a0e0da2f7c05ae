//! Bundled reference tables for the three- and four-party classifications,
//! used by the diff reports and the regression suite.

use crate::inequality::TIInequality;
use crate::scalar::parse_rational;
use crate::{ExactInequality, Rational};

const CLASSES_N3: &str = include_str!("../data/classes_n3.csv");
const CLASSES_N4: &str = include_str!("../data/classes_n4.csv");

/// One reference class row; the rational fields are exact, the quantum
/// columns are two-decimal reference values.
#[derive(Debug, Clone)]
pub struct GoldenRow {
    pub class: usize,
    pub beta_ns: Option<Rational>,
    pub beta_q: Option<f64>,
    pub beta_q_ti: Option<f64>,
    pub beta_c: Rational,
    pub inequality: ExactInequality,
}

fn parse_row_n3(line: &str) -> GoldenRow {
    let f: Vec<&str> = line.split(',').collect();
    assert_eq!(f.len(), 8, "bad row: {line}");
    let r = |s: &str| parse_rational(s).unwrap_or_else(|| panic!("bad rational {s}"));
    let beta_c = r(f[1]);
    let mut q = TIInequality::new(
        3,
        r(f[2]),
        r(f[3]),
        vec![r(f[4])],
        vec![r(f[5]), r(f[6])],
        vec![r(f[7])],
    )
    .unwrap();
    q.beta_c = Some(beta_c.clone());
    GoldenRow {
        class: f[0].parse().unwrap(),
        beta_ns: None,
        beta_q: None,
        beta_q_ti: None,
        beta_c,
        inequality: q,
    }
}

fn parse_row_n4(line: &str) -> GoldenRow {
    let f: Vec<&str> = line.split(',').collect();
    assert_eq!(f.len(), 14, "bad row: {line}");
    let r = |s: &str| parse_rational(s).unwrap_or_else(|| panic!("bad rational {s}"));
    let beta_c = r(f[4]);
    // columns: alpha, beta, gamma1, omega1, omega3, epsilon1, gamma2,
    // omega2, epsilon2
    let mut q = TIInequality::new(
        4,
        r(f[5]),
        r(f[6]),
        vec![r(f[7]), r(f[11])],
        vec![r(f[8]), r(f[12]), r(f[9])],
        vec![r(f[10]), r(f[13])],
    )
    .unwrap();
    q.beta_c = Some(beta_c.clone());
    GoldenRow {
        class: f[0].parse().unwrap(),
        beta_ns: Some(r(f[1])),
        beta_q: Some(f[2].parse().unwrap()),
        beta_q_ti: Some(f[3].parse().unwrap()),
        beta_c,
        inequality: q,
    }
}

pub fn table_n3() -> Vec<GoldenRow> {
    CLASSES_N3.lines().skip(1).filter(|l| !l.is_empty()).map(parse_row_n3).collect()
}

pub fn table_n4() -> Vec<GoldenRow> {
    CLASSES_N4.lines().skip(1).filter(|l| !l.is_empty()).map(parse_row_n4).collect()
}

/// n=4 classes with `beta_n = beta_c` (unviolable even without signalling).
pub const N4_TRIVIAL: std::ops::RangeInclusive<usize> = 1..=20;
/// n=4 classes with nonsignalling but no quantum advantage.
pub const N4_NO_QUANTUM: std::ops::RangeInclusive<usize> = 21..=24;
/// n=4 classes maximally violated with the same observables at every site.
pub const N4_TI_EQ_FREE: std::ops::RangeInclusive<usize> = 25..=63;
/// n=4 classes where site-identical measurements stop short of the free
/// optimum; local dimension above two helps.
pub const N4_HIGHER_DIM: std::ops::RangeInclusive<usize> = 64..=103;
/// classes whose best violation is already reached at local dimension <= 4
pub const N4_DMIN_LE4: &[usize] = &[64, 65, 73, 78, 81, 86, 91, 99, 100];
/// classes reaching it at local dimension <= 5
pub const N4_DMIN_LE5: &[usize] = &[70, 82];
