//! Standalone property suites: gradient consistency, LP duality, facet
//! tightness, symmetry invariance, and a brute-force facet oracle at n=3.

use bellpoly::bounds::{classical_bound, ns_bound};
use bellpoly::correlator::{ti_project, TICorrelatorVector};
use bellpoly::dd::integer_rank;
use bellpoly::polytope::{facet_enum, ti_vertices};
use bellpoly::quantum::{
    bell_operator, eigenvalue_gradient, lambda_min, MeasurementAngles, Mode,
};
use bellpoly::scalar::int;
use bellpoly::strategy::enumerate_strategies;
use bellpoly::symmetry::{apply_symmetry, orbit, SymmetryElement};
use bellpoly::{ExactInequality, Rational, TIInequality};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn n3_class6() -> ExactInequality {
    TIInequality::new(3, int(-1), int(-3), vec![int(-1)], vec![int(1), int(2)], vec![int(3)])
        .unwrap()
}

fn n4_class62() -> ExactInequality {
    TIInequality::new(
        4,
        int(-14),
        int(16),
        vec![int(-4), int(5)],
        vec![int(-8), int(-4), int(-8)],
        vec![int(4), int(2)],
    )
    .unwrap()
}

#[test]
fn hellmann_feynman_matches_finite_differences() {
    let h = 1e-6;
    for (q, mode, p) in [
        (n3_class6().to_float(), Mode::TiRestricted, vec![0.3, 2.1]),
        (n3_class6().to_float(), Mode::Free, vec![0.3, 2.1, 1.0, 0.2, 4.4, 5.9]),
        (
            n4_class62().to_float(),
            Mode::Free,
            vec![0.8, 1.9, 2.7, 0.1, 3.3, 5.1, 4.0, 2.2],
        ),
    ] {
        let angles = |pp: &[f64]| match mode {
            Mode::TiRestricted => MeasurementAngles::uniform(q.n, pp[0], pp[1]),
            Mode::Free => MeasurementAngles {
                phi: (0..q.n).map(|i| [pp[2 * i], pp[2 * i + 1]]).collect(),
            },
        };
        let (_, psi) = lambda_min(&bell_operator(&q, &angles(&p)));
        let g = eigenvalue_gradient(&q, mode, &p, &psi);
        for k in 0..p.len() {
            let mut pp = p.clone();
            pp[k] += h;
            let (lp, _) = lambda_min(&bell_operator(&q, &angles(&pp)));
            pp[k] -= 2.0 * h;
            let (lm, _) = lambda_min(&bell_operator(&q, &angles(&pp)));
            let fd = (lp - lm) / (2.0 * h);
            assert!(
                (g[k] - fd).abs() < 1e-5,
                "mode {mode:?} param {k}: {} vs {fd}",
                g[k]
            );
        }
    }
}

#[test]
fn lp_duality_certificates_exact() {
    for q in [n3_class6(), n4_class62()] {
        let mut q = q;
        q.beta_c = Some(classical_bound(&q).unwrap().0);
        let ns = ns_bound(&q).unwrap();
        assert!(ns.verify(&q), "certificate fails for n={}", q.n);
        // certificate entries are nonnegative and sum to the bound exactly
        let total: Rational = ns.certificate.iter().cloned().sum();
        assert_eq!(total, ns.beta_n);
        assert!(ns.certificate.iter().all(|c| !c.is_negative()));
    }
}

#[test]
fn facet_tightness_ranks_exact() {
    for n in [3, 4] {
        let vs = ti_vertices(n).unwrap();
        let fl = facet_enum(&vs).unwrap();
        for f in &fl.facets {
            // saturating vertices must affinely span a hyperplane: rank of
            // homogenized tight rows is exactly dim
            let rows: Vec<Vec<BigInt>> = f
                .tight
                .iter()
                .map(|&vi| {
                    let mut row = vec![BigInt::from(1)];
                    row.extend(
                        vs.vertices[vi].components().iter().map(|&c| BigInt::from(c)),
                    );
                    row
                })
                .collect();
            assert_eq!(integer_rank(&rows), fl.dim, "n={n}");
        }
    }
}

#[test]
fn symmetry_orbit_bound_invariance_exact() {
    for q in [n3_class6(), n4_class62()] {
        let (bc, _) = classical_bound(&q).unwrap();
        let mut with_bc = q.clone();
        with_bc.beta_c = Some(bc.clone());
        let bn = ns_bound(&with_bc).unwrap().beta_n;
        for g in SymmetryElement::all() {
            let mut img = apply_symmetry(&q, g);
            let (bci, _) = classical_bound(&img).unwrap();
            assert_eq!(bci, bc, "classical bound moved under {g:?}");
            img.beta_c = Some(bci);
            assert_eq!(ns_bound(&img).unwrap().beta_n, bn, "ns bound moved under {g:?}");
        }
    }
}

/// Exact nullspace vector of a rank-(cols-1) integer matrix.
fn nullspace_vector(rows: &[Vec<BigInt>]) -> Option<Vec<Rational>> {
    let cols = rows[0].len();
    let mut m: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect())
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].clone();
        for x in &mut m[r] {
            *x = x.clone() / inv.clone();
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for cc in 0..cols {
                    let sub = &f * &m[r][cc];
                    m[i][cc] = &m[i][cc] - sub;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    if r != cols - 1 {
        return None;
    }
    let free = (0..cols).find(|c| !pivot_cols.contains(c)).unwrap();
    let mut v = vec![Rational::zero(); cols];
    v[free] = Rational::from_integer(BigInt::from(1));
    for (rr, &pc) in pivot_cols.iter().enumerate() {
        v[pc] = -m[rr][free].clone();
    }
    Some(v)
}

/// Independent facet oracle: every hyperplane through dim affinely
/// independent vertices that supports the polytope, collected over all
/// vertex subsets of that size.
#[test]
fn brute_force_facet_oracle_n3() {
    let vs = ti_vertices(3).unwrap();
    let dim = TICorrelatorVector::dim(3);
    let points: Vec<Vec<BigInt>> = vs
        .vertices
        .iter()
        .map(|v| {
            let mut row = vec![BigInt::from(1)];
            row.extend(v.components().iter().map(|&c| BigInt::from(c)));
            row
        })
        .collect();
    let nv = points.len();
    let mut found: std::collections::BTreeSet<Vec<Rational>> = std::collections::BTreeSet::new();
    // choose dim = 8 of the 24 vertices; the hyperplane they span (if they
    // are affinely independent) is a facet iff all vertices sit on one side
    let mut idx: Vec<usize> = (0..dim).collect();
    loop {
        let rows: Vec<Vec<BigInt>> = idx.iter().map(|&i| points[i].clone()).collect();
        if let Some(normal) = nullspace_vector(&rows) {
            // value at the origin is normal[0]; orient so the polytope side
            // is nonnegative
            let values: Vec<Rational> = points
                .iter()
                .map(|p| {
                    p.iter()
                        .zip(&normal)
                        .map(|(a, b)| Rational::from_integer(a.clone()) * b)
                        .sum()
                })
                .collect();
            let pos = values.iter().any(|v| v.is_positive());
            let neg = values.iter().any(|v| v.is_negative());
            if !(pos && neg) {
                let oriented: Vec<Rational> =
                    if neg { normal.iter().map(|x| -x.clone()).collect() } else { normal };
                let coeffs: Vec<Rational> = oriented[1..].to_vec();
                let mut q = TIInequality::from_coefficients(3, &coeffs).unwrap().normalize();
                q.beta_c = Some(classical_bound(&q).unwrap().0);
                let mut key = vec![q.beta_c.clone().unwrap()];
                key.extend(q.coefficients());
                found.insert(key);
            }
        }
        // next combination
        let mut i = dim;
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            if idx[i] != i + nv - dim {
                idx[i] += 1;
                for j in i + 1..dim {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
        if idx[0] == nv - dim && (0..dim).all(|j| idx[j] == j + nv - dim) {
            break;
        }
    }
    let fl = facet_enum(&vs).unwrap();
    let listed: std::collections::BTreeSet<Vec<Rational>> = fl
        .facets
        .iter()
        .map(|f| {
            let mut key = vec![f.inequality.beta_c.clone().unwrap()];
            key.extend(f.inequality.coefficients());
            key
        })
        .collect();
    assert_eq!(found.len(), 38);
    assert_eq!(found, listed);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ti_projection_rotation_reflection_invariant(id in 0u64..4096) {
        let s = bellpoly::strategy::DeterministicStrategy::from_id(3, id % 64).unwrap();
        let _ = id;
        prop_assert_eq!(ti_project(&s.rotate()).components(), ti_project(&s).components());
        // reflection reverses the ring, so the mixed correlators swap
        // distance k with distance n - k while everything else is fixed
        let mut mirrored = ti_project(&s);
        mirrored.t01.reverse();
        prop_assert_eq!(ti_project(&s.reflect()).components(), mirrored.components());
    }

    #[test]
    fn orbit_members_share_classical_bound(seed in 0u64..200) {
        // small random integer inequalities at n=3
        let mut vals = [0i64; 6];
        let mut s = seed.wrapping_mul(6364136223846793005).wrapping_add(1);
        for v in &mut vals {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            *v = ((s >> 33) % 7) as i64 - 3;
        }
        let q = TIInequality::new(
            3,
            int(vals[0]),
            int(vals[1]),
            vec![int(vals[2])],
            vec![int(vals[3]), int(vals[4])],
            vec![int(vals[5])],
        ).unwrap();
        if !q.is_zero() {
            let (bc, _) = classical_bound(&q).unwrap();
            let base = q.normalize();
            let (bc_base, _) = classical_bound(&base).unwrap();
            for tuple in orbit(&base) {
                let img = TIInequality::from_coefficients(3, &tuple).unwrap();
                let (bci, _) = classical_bound(&img).unwrap();
                prop_assert_eq!(bci, bc_base.clone());
            }
            // normalization rescales the bound by the same factor as the
            // coefficients; both stay consistent on re-evaluation
            let strategies = enumerate_strategies(3).unwrap();
            for st in strategies.iter().take(8) {
                let v = ti_project(st);
                prop_assert!(q.evaluate(&v).unwrap() + bc.clone() >= int(0));
            }
        }
    }
}
