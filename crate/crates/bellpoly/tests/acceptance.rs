//! End-to-end acceptance checks. Each test prints one pass/fail line; the
//! heavy artifacts (vertex sets, facet lists, class tables, bound columns)
//! are computed once and shared. A global gate serializes the tests so the
//! pinned runtimes are measured without contention.

use bellpoly::bounds::{classical_bound, ns_bound};
use bellpoly::golden::{
    table_n3, table_n4, GoldenRow, N4_DMIN_LE4, N4_DMIN_LE5, N4_HIGHER_DIM, N4_NO_QUANTUM,
    N4_TI_EQ_FREE, N4_TRIVIAL,
};
use bellpoly::polytope::{facet_enum, polya_bound, ti_vertices, FacetList, VertexSet};
use bellpoly::quantum::{
    bell_operator, chsh_max, geometric_entanglement, max_violation, psi3, psi5, reduced_state,
    symmetric_overlap_scan, ti_mixed_state, violation_for_state, DensityMatrix, MeasurementAngles,
    Mode, PureState,
};
use bellpoly::report::{class_rows, match_golden, ClassRow};
use bellpoly::scalar::int;
use bellpoly::seesaw::{dmin_search, embed_dn, qubit_observables};
use bellpoly::strategy::DeterministicStrategy;
use bellpoly::symmetry::classify;
use bellpoly::{ExactInequality, FloatInequality, Rational, TIInequality};
use num_complex::Complex64;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::sync::{Mutex, OnceLock};
use std::time::{Duration, Instant};

static GATE: Mutex<()> = Mutex::new(());

fn gate() -> std::sync::MutexGuard<'static, ()> {
    GATE.lock().unwrap_or_else(|e| e.into_inner())
}

fn report(criterion: &str, ok: bool, detail: &str) {
    println!("criterion {criterion}: {} ({detail})", if ok { "pass" } else { "FAIL" });
    assert!(ok, "criterion {criterion}: {detail}");
}

struct Timed<T> {
    value: T,
    elapsed: Duration,
}

fn timed<T>(f: impl FnOnce() -> T) -> Timed<T> {
    let t = Instant::now();
    let value = f();
    Timed { value, elapsed: t.elapsed() }
}

fn vertices(n: usize) -> &'static Timed<VertexSet> {
    static CELL: [OnceLock<Timed<VertexSet>>; 3] = [OnceLock::new(), OnceLock::new(), OnceLock::new()];
    CELL[n - 3].get_or_init(|| timed(|| ti_vertices(n).unwrap()))
}

fn facets(n: usize) -> &'static Timed<FacetList> {
    static CELL: [OnceLock<Timed<FacetList>>; 3] = [OnceLock::new(), OnceLock::new(), OnceLock::new()];
    CELL[n - 3].get_or_init(|| timed(|| facet_enum(&vertices(n).value).unwrap()))
}

/// Class rows for the configuration that reproduces the reference tables
/// (n=3 plain, n=4 with the per-site relabeling extension), with exact
/// nonsignalling bounds attached; also records the slowest single bound.
fn rows_with_ns(n: usize) -> &'static (Vec<ClassRow>, Duration) {
    static CELL: [OnceLock<(Vec<ClassRow>, Duration)>; 2] = [OnceLock::new(), OnceLock::new()];
    CELL[n - 3].get_or_init(|| {
        let table = classify(&facets(n).value, n == 4);
        let mut rows = class_rows(&table);
        let mut slowest = Duration::ZERO;
        for row in &mut rows {
            let t = timed(|| ns_bound(&row.inequality).unwrap());
            assert!(t.value.verify(&row.inequality), "ns certificate failed");
            row.beta_ns = Some(t.value.beta_n);
            slowest = slowest.max(t.elapsed);
        }
        (rows, slowest)
    })
}

/// Quantum columns for the n=4 table: free and site-identical qubit
/// optimizations per class, with the slowest per-class time recorded.
fn rows_n4_quantum() -> &'static (Vec<ClassRow>, Duration) {
    static CELL: OnceLock<(Vec<ClassRow>, Duration)> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut rows = rows_with_ns(4).0.clone();
        let mut slowest = Duration::ZERO;
        for row in &mut rows {
            let t = timed(|| {
                let qf = row.inequality.to_float();
                let free = max_violation(&qf, Mode::Free, QUANTUM_STARTS, 1 ^ row.class as u64)
                    .unwrap();
                let ti = max_violation(
                    &qf,
                    Mode::TiRestricted,
                    QUANTUM_STARTS,
                    1 ^ (row.class as u64) << 16,
                )
                .unwrap();
                (free.beta, ti.beta)
            });
            row.beta_q = Some(t.value.0.max(t.value.1));
            row.beta_q_ti = Some(t.value.1);
            slowest = slowest.max(t.elapsed);
        }
        (rows, slowest)
    })
}

const QUANTUM_STARTS: usize = 50;

fn golden_n3_class6() -> GoldenRow {
    table_n3().into_iter().find(|r| r.class == 6).unwrap()
}

fn nn_n5() -> ExactInequality {
    let mut q = TIInequality::nearest_neighbour(5, int(-2), int(-6), int(-2), int(2), int(4), int(5))
        .unwrap();
    q.beta_c = Some(classical_bound(&q).unwrap().0);
    q
}

fn rational(v: i64) -> Rational {
    int(v)
}

fn frac(n: i64, d: i64) -> Rational {
    rational(n) / rational(d)
}

#[test]
fn criterion_01_polya_bounds() {
    let _g = gate();
    let t = timed(|| (polya_bound(3), polya_bound(4), polya_bound(5)));
    let ok = t.value == (24, 70, 208) && t.elapsed < Duration::from_millis(1);
    report("01 polya bounds", ok, &format!("{:?} in {:?}", t.value, t.elapsed));
}

#[test]
fn criterion_02_vertex_counts() {
    let _g = gate();
    let counts: Vec<usize> = [3, 4, 5].iter().map(|&n| vertices(n).value.len()).collect();
    let slow = [3, 4, 5].iter().map(|&n| vertices(n).elapsed).max().unwrap();
    // the two n=4 vertices onto which two distinct strategy necklaces
    // project; all other vertices come from a single necklace
    let vs4 = &vertices(4).value;
    let mut coincidences = Vec::new();
    let mut necklaces = 0usize;
    for (vi, ids) in vs4.provenance.iter().enumerate() {
        let mut orbits: BTreeSet<u64> = BTreeSet::new();
        for &id in ids {
            let mut s = DeterministicStrategy::from_id(4, id).unwrap();
            let mut rep = s.id();
            for _ in 0..4 {
                s = s.rotate();
                rep = rep.min(s.id());
            }
            orbits.insert(rep);
        }
        necklaces += orbits.len();
        if orbits.len() > 1 {
            coincidences.push((vi, orbits));
        }
    }
    let ok = counts == [24, 68, 208]
        && slow < Duration::from_secs(1)
        && necklaces == 70
        && coincidences.len() == 2;
    report(
        "02 vertex counts",
        ok,
        &format!(
            "counts {counts:?}, slowest {slow:?}, 70 necklaces onto 68 vertices, \
             coincidence pairs at vertices {:?}",
            coincidences.iter().map(|(vi, _)| *vi).collect::<Vec<_>>()
        ),
    );
}

#[test]
fn criterion_03_facet_counts() {
    let _g = gate();
    let counts: Vec<usize> = [3, 4, 5].iter().map(|&n| facets(n).value.facets.len()).collect();
    let times: Vec<Duration> = [3, 4, 5].iter().map(|&n| facets(n).elapsed).collect();
    let ok = counts == [38, 1038, 34484]
        && times[0] < Duration::from_secs(1)
        && times[1] < Duration::from_secs(30)
        && times[2] < Duration::from_secs(1800);
    report("03 facet counts", ok, &format!("counts {counts:?}, times {times:?}"));
}

#[test]
fn criterion_04_class_counts() {
    let _g = gate();
    // reference-table matching by canonical tuple with identical exact
    // classical bound
    let mut row_problems = Vec::new();
    for (n, golden, ext) in [(3usize, table_n3(), false), (4, table_n4(), true)] {
        let rows = &rows_with_ns(n).0;
        for g in &golden {
            match match_golden(rows, &g, ext) {
                None => row_problems.push(format!("n={n} class {} unmatched", g.class)),
                Some(row) => {
                    if row.inequality.beta_c.as_ref() != Some(&g.beta_c) {
                        row_problems.push(format!("n={n} class {} beta_c", g.class));
                    }
                }
            }
        }
    }
    let n3 = classify(&facets(3).value, false).classes.len();
    let n4 = classify(&facets(4).value, true).classes.len();
    let n5_plain = classify(&facets(5).value, false).classes.len();
    let n5_ext = classify(&facets(5).value, true).classes.len();
    // configuration recorded: n=3 plain, n=4 with the per-site relabeling
    // extension. No configuration of the documented symmetry group yields
    // the reference count 4198 at n=5: the full 16-element group gives 2462
    // classes and every proper subgroup has order at most 8, forcing at
    // least ceil(34484/8) = 4311 classes, so 4198 is unreachable either way.
    let ok = row_problems.is_empty() && n3 == 6 && n4 == 103 && (n5_plain == 4198 || n5_ext == 4198);
    report(
        "04 class counts",
        ok,
        &format!(
            "n3 {n3} (want 6), n4 {n4} with extension (want 103), n5 {n5_plain} plain / \
             {n5_ext} extended (want 4198), row mismatches: {row_problems:?}"
        ),
    );
}

#[test]
fn criterion_05_ns_bounds() {
    let _g = gate();
    let (rows4, slowest) = rows_with_ns(4);
    let golden = table_n4();
    let mut problems = Vec::new();
    for g in &golden {
        let Some(row) = match_golden(rows4, g, true) else {
            problems.push(format!("class {} unmatched", g.class));
            continue;
        };
        if g.beta_ns.is_some() && row.beta_ns != g.beta_ns {
            problems.push(format!("class {} beta_ns", g.class));
        }
        // every table row satisfies beta_c <= beta_n exactly
        if row.inequality.beta_c > row.beta_ns {
            problems.push(format!("class {} beta_c > beta_n", g.class));
        }
    }
    let computed: BTreeSet<Rational> = rows4.iter().filter_map(|r| r.beta_ns.clone()).collect();
    for want in [
        frac(44, 3),
        frac(116, 5),
        frac(56, 3),
        frac(500, 7),
        frac(268, 5),
        frac(96, 5),
        frac(124, 3),
    ] {
        if !computed.contains(&want) {
            problems.push(format!("missing beta_ns {want}"));
        }
    }
    let g6 = golden_n3_class6();
    let ns6 = ns_bound(&g6.inequality).unwrap();
    if ns6.beta_n != rational(13) || !ns6.verify(&g6.inequality) {
        problems.push("n3 class 6 beta_n != 13".into());
    }
    let ok = problems.is_empty() && *slowest < Duration::from_secs(5);
    report(
        "05 ns bounds",
        ok,
        &format!("103 exact bounds with certificates, slowest {slowest:?}, problems {problems:?}"),
    );
}

#[test]
fn criterion_06_classical_bounds() {
    let _g = gate();
    let mut problems = Vec::new();
    let mut slowest = Duration::ZERO;
    for (n, golden) in [(3usize, table_n3()), (4, table_n4())] {
        for g in &golden {
            let t = timed(|| classical_bound(&g.inequality).unwrap().0);
            slowest = slowest.max(t.elapsed);
            if t.value != g.beta_c {
                problems.push(format!("n={n} class {}", g.class));
            }
        }
    }
    let t = timed(|| classical_bound(&nn_n5()).unwrap().0);
    slowest = slowest.max(t.elapsed);
    if t.value != rational(35) {
        problems.push(format!("n5 nearest-neighbour beta_c {} != 35", t.value));
    }
    let ok = problems.is_empty() && slowest < Duration::from_secs(1);
    report(
        "06 classical bounds",
        ok,
        &format!("all exact, slowest {slowest:?}, problems {problems:?}"),
    );
}

#[test]
fn criterion_07_quantum_violations() {
    let _g = gate();
    let tol = 0.02;
    let (rows4, slowest) = rows_n4_quantum();
    let golden = table_n4();
    let mut problems = Vec::new();
    let bc = |row: &ClassRow| {
        let r = row.inequality.beta_c.clone().unwrap();
        r.numer().to_string().parse::<f64>().unwrap() / r.denom().to_string().parse::<f64>().unwrap()
    };
    for g in &golden {
        let Some(row) = match_golden(rows4, g, true) else {
            problems.push(format!("class {} unmatched", g.class));
            continue;
        };
        let (q, qt) = (row.beta_q.unwrap(), row.beta_q_ti.unwrap());
        if let Some(want) = g.beta_q {
            if (q - want).abs() > tol {
                problems.push(format!("class {} beta_q {q:.4} vs {want}", g.class));
            }
        }
        if let Some(want) = g.beta_q_ti {
            if (qt - want).abs() > tol {
                problems.push(format!("class {} beta_q_ti {qt:.4} vs {want}", g.class));
            }
        }
        let c = bc(row);
        if N4_TRIVIAL.contains(&g.class) && ((q - c).abs() > tol || (qt - c).abs() > tol) {
            problems.push(format!("class {} should not violate", g.class));
        }
        if N4_TI_EQ_FREE.contains(&g.class) && (q - qt).abs() > tol {
            problems.push(format!("class {} beta_q != beta_q_ti", g.class));
        }
        if (64..=69).contains(&g.class) && (qt - c).abs() > tol {
            problems.push(format!("class {} beta_q_ti != beta_c", g.class));
        }
        // sandwich invariant for every emitted row
        let bn = {
            let r = row.beta_ns.clone().unwrap();
            r.numer().to_string().parse::<f64>().unwrap()
                / r.denom().to_string().parse::<f64>().unwrap()
        };
        if !(c - tol <= qt && qt <= q + 1e-9 && q <= bn + tol) {
            problems.push(format!("class {} bound ordering", g.class));
        }
    }
    // three-party class 6 and the W state at its published angles
    let q6 = golden_n3_class6().inequality.to_float();
    let ti6 = max_violation(&q6, Mode::TiRestricted, 100, 3).unwrap().beta;
    if (ti6 - 10.02).abs() > 0.01 {
        problems.push(format!("n3 class 6 {ti6:.4} vs 10.02"));
    }
    let w = violation_for_state(
        &q6,
        &MeasurementAngles::uniform(3, 5.2556, 0.2285),
        &bellpoly::quantum::w_state(3),
    );
    if (w - 9.85).abs() > 0.01 {
        problems.push(format!("W state {w:.4} vs 9.85"));
    }
    // five-party nearest-neighbour example
    let q5 = nn_n5().to_float();
    let t5 = timed(|| {
        (
            max_violation(&q5, Mode::TiRestricted, 100, 5).unwrap().beta,
            max_violation(&q5, Mode::Free, 200, 5).unwrap().beta,
        )
    });
    if (t5.value.0 - 35.29).abs() > 0.02 {
        problems.push(format!("n5 TI {:.4} vs 35.29", t5.value.0));
    }
    if (t5.value.1 - 36.21).abs() > 0.02 {
        problems.push(format!("n5 free {:.4} vs 36.21", t5.value.1));
    }
    let slowest = (*slowest).max(t5.elapsed);
    let ok = problems.is_empty() && slowest < Duration::from_secs(120);
    report(
        "07 quantum violations",
        ok,
        &format!(
            "all rows within +-{tol} at {QUANTUM_STARTS} starts, slowest {slowest:?}, \
             problems {problems:?}"
        ),
    );
}

#[test]
fn criterion_08_no_quantum_advantage() {
    let _g = gate();
    let (rows4, _) = rows_with_ns(4);
    let golden = table_n4();
    let mut problems = Vec::new();
    for class in N4_NO_QUANTUM {
        let g = golden.iter().find(|r| r.class == class).unwrap();
        let row = match_golden(rows4, g, true).unwrap();
        let bc = row.inequality.beta_c.clone().unwrap();
        if row.beta_ns.clone().unwrap() <= bc {
            problems.push(format!("class {class} beta_n not above beta_c"));
        }
        let qf = row.inequality.to_float();
        let best = max_violation(&qf, Mode::Free, 500, 8).unwrap().beta;
        let bc_f = bc.numer().to_string().parse::<f64>().unwrap()
            / bc.denom().to_string().parse::<f64>().unwrap();
        if best > bc_f + 1e-6 {
            problems.push(format!("class {class} found beta {best:.8} above beta_c {bc_f}"));
        }
    }
    let ok = problems.is_empty();
    report(
        "08 no quantum advantage",
        ok,
        &format!("rows 21-24: 500 starts stay at beta_c while beta_n > beta_c; {problems:?}"),
    );
}

#[test]
fn criterion_09_ti_mixed_state() {
    let _g = gate();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst = 0.0f64;
    for trial in 0..100 {
        let n = if trial % 2 == 0 { 3 } else { 4 };
        let raw: Vec<Complex64> = (0..1usize << n)
            .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
            .collect();
        let (psi, _) = PureState::normalized(n, &raw);
        let coeff = |rng: &mut ChaCha8Rng| (rng.gen::<f64>() * 6.0 - 3.0).round();
        let q: FloatInequality = TIInequality::new(
            n,
            coeff(&mut rng),
            coeff(&mut rng),
            (0..n / 2).map(|_| coeff(&mut rng)).collect(),
            (0..n - 1).map(|_| coeff(&mut rng)).collect(),
            (0..n / 2).map(|_| coeff(&mut rng)).collect(),
        )
        .unwrap();
        let a = MeasurementAngles::uniform(
            n,
            rng.gen::<f64>() * std::f64::consts::TAU,
            rng.gen::<f64>() * std::f64::consts::TAU,
        );
        let b = bell_operator(&q, &a);
        let rho = ti_mixed_state(&psi);
        let d = b.nrows();
        let mut tr = 0.0;
        for i in 0..d {
            for j in 0..d {
                tr += (rho.mat[(i, j)] * b[(j, i)]).re;
            }
        }
        let pure = -violation_for_state(&q, &a, &psi);
        worst = worst.max((tr - pure).abs());
    }
    let ok = worst < 1e-10;
    report("09 ti mixed state", ok, &format!("100 random triples, worst gap {worst:.2e}"));
}

#[test]
fn criterion_10_embedding() {
    let _g = gate();
    let mut worst = 0.0f64;
    let q3 = golden_n3_class6().inequality.to_float();
    let r3 = max_violation(&q3, Mode::TiRestricted, 30, 13).unwrap();
    let e3 = embed_dn(&r3.state, &qubit_observables(&r3.angles)).unwrap();
    worst = worst.max(
        (violation_for_state(&q3, &r3.angles, &r3.state) - -e3.expectation(&q3)).abs(),
    );
    let g70 = table_n4().into_iter().find(|r| r.class == 70).unwrap();
    let q70 = g70.inequality.to_float();
    let r70 = max_violation(&q70, Mode::Free, 50, 1).unwrap();
    let e70 = embed_dn(&r70.state, &qubit_observables(&r70.angles)).unwrap();
    worst = worst.max(
        (violation_for_state(&q70, &r70.angles, &r70.state) - -e70.expectation(&q70)).abs(),
    );
    let ok = worst < 1e-10;
    report(
        "10 embedding",
        ok,
        &format!("violation preserved on n3 class 6 and n4 class 70, worst gap {worst:.2e}"),
    );
}

#[test]
fn criterion_11_seesaw_dimension_search() {
    let _g = gate();
    let golden = table_n4();
    let mut problems = Vec::new();
    let mut slowest = Duration::ZERO;
    for class in N4_HIGHER_DIM {
        let g = golden.iter().find(|r| r.class == class).unwrap();
        let q = g.inequality.to_float();
        let t = timed(|| {
            let free = max_violation(&q, Mode::Free, 50, 1).unwrap();
            (free.beta, dmin_search(&q, free.beta, 6, 20, 1).unwrap())
        });
        slowest = slowest.max(t.elapsed);
        let (beta_q, res) = t.value;
        match res.d_min {
            None => problems.push(format!(
                "class {class} never reached {beta_q:.4} (curve {:?})",
                res.curve
            )),
            Some(d) => {
                if N4_DMIN_LE4.contains(&class) && d > 4 {
                    problems.push(format!("class {class} needed d={d} > 4"));
                }
                if N4_DMIN_LE5.contains(&class) && d > 5 {
                    problems.push(format!("class {class} needed d={d} > 5"));
                }
            }
        }
    }
    let ok = problems.is_empty() && slowest < Duration::from_secs(600);
    report(
        "11 seesaw dimension search",
        ok,
        &format!("rows 64-103 within 1e-3 at D<=6, slowest {slowest:?}, problems {problems:?}"),
    );
}

#[test]
fn criterion_12_entanglement_and_locality() {
    let _g = gate();
    let mut problems = Vec::new();
    let eg3 = geometric_entanglement(&psi3(), false, 7);
    if (eg3 - 0.2726).abs() > 5e-4 {
        problems.push(format!("E_G(psi3) {eg3:.5} vs 0.2726"));
    }
    let eg5 = geometric_entanglement(&psi5(), false, 7);
    if (eg5 - 0.4980).abs() > 1e-3 {
        problems.push(format!("E_G(psi5) {eg5:.5} vs 0.4980"));
    }
    // diagnostic: the reference values track one minus the overlap itself
    // rather than one minus its square
    println!(
        "note: 1 - max overlap is {:.4} for psi3 and {:.4} for psi5 \
         (references 0.2726 and 0.4980)",
        1.0 - (1.0 - eg3).sqrt(),
        1.0 - (1.0 - eg5).sqrt()
    );
    // reported, not asserted: the brute-force scan over symmetric product
    // states disagrees with the published 1/3 for the three-party W state
    let w_overlap = symmetric_overlap_scan(&bellpoly::quantum::w_state(3), 400);
    println!(
        "note: W state geometric entanglement scan gives {:.4} (published 1/3 = 0.3333, \
         expected discrepancy value 5/9 = 0.5556)",
        1.0 - w_overlap
    );
    for (name, psi) in [("psi3", psi3()), ("psi5", psi5())] {
        let rho = ti_mixed_state(&psi);
        let n = psi.n;
        for i in 0..n {
            for j in i + 1..n {
                let red = reduced_state(&rho, &[i, j]).unwrap();
                let s = chsh_max(&red);
                if s > 2.0 + 1e-9 {
                    problems.push(format!("{name} pair ({i},{j}) chsh {s:.6}"));
                }
            }
        }
    }
    let bell_pair = {
        let amps = [
            Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
        ];
        DensityMatrix::from_pure(&PureState::normalized(2, &amps).0)
    };
    let tsirelson = chsh_max(&bell_pair);
    if (tsirelson - 2.0 * std::f64::consts::SQRT_2).abs() > 1e-9 {
        problems.push(format!("maximally entangled pair chsh {tsirelson:.9}"));
    }
    let ok = problems.is_empty();
    report(
        "12 entanglement and locality",
        ok,
        &format!(
            "E_G(psi3) {eg3:.4}, E_G(psi5) {eg5:.4}, all pair reductions CHSH-local, \
             problems {problems:?}"
        ),
    );
}

#[test]
fn criterion_13_property_suites() {
    let _g = gate();
    // compact re-runs of the standalone suites in tests/properties.rs
    let mut problems = Vec::new();
    // gradient vs finite differences
    {
        use bellpoly::quantum::{eigenvalue_gradient, lambda_min};
        let q = golden_n3_class6().inequality.to_float();
        let p = [0.3, 2.1];
        let a = MeasurementAngles::uniform(3, p[0], p[1]);
        let (_, psi) = lambda_min(&bell_operator(&q, &a));
        let grad = eigenvalue_gradient(&q, Mode::TiRestricted, &p, &psi);
        let h = 1e-6;
        for k in 0..2 {
            let mut pp = p;
            pp[k] += h;
            let (lp, _) = lambda_min(&bell_operator(&q, &MeasurementAngles::uniform(3, pp[0], pp[1])));
            pp[k] -= 2.0 * h;
            let (lm, _) = lambda_min(&bell_operator(&q, &MeasurementAngles::uniform(3, pp[0], pp[1])));
            if (grad[k] - (lp - lm) / (2.0 * h)).abs() > 1e-5 {
                problems.push(format!("gradient component {k}"));
            }
        }
    }
    // duality certificate, exact
    {
        let g6 = golden_n3_class6();
        let ns = ns_bound(&g6.inequality).unwrap();
        if !ns.verify(&g6.inequality) {
            problems.push("lp duality certificate".into());
        }
    }
    // facet tightness ranks, exact
    {
        use bellpoly::dd::integer_rank;
        use num_bigint::BigInt;
        let vs = &vertices(3).value;
        let fl = &facets(3).value;
        for f in &fl.facets {
            let rows: Vec<Vec<BigInt>> = f
                .tight
                .iter()
                .map(|&vi| {
                    let mut row = vec![BigInt::from(1)];
                    row.extend(vs.vertices[vi].components().iter().map(|&c| BigInt::from(c)));
                    row
                })
                .collect();
            if integer_rank(&rows) != fl.dim {
                problems.push("facet tightness rank".into());
                break;
            }
        }
    }
    // symmetry-orbit bound invariance, exact
    {
        use bellpoly::symmetry::{apply_symmetry, SymmetryElement};
        let g6 = golden_n3_class6();
        let bc = classical_bound(&g6.inequality).unwrap().0;
        for e in SymmetryElement::all() {
            let img = apply_symmetry(&g6.inequality, e);
            if classical_bound(&img).unwrap().0 != bc {
                problems.push("orbit bound invariance".into());
                break;
            }
        }
    }
    let ok = problems.is_empty();
    report(
        "13 property suites",
        ok,
        &format!(
            "gradient, duality, tightness and orbit checks pass here; the full suites \
             (including the brute-force facet oracle) run in the properties test target; \
             problems {problems:?}"
        ),
    );
}
