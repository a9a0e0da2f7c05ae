//! Exact classical and nonsignalling bounds.

use crate::correlator::{ti_project, FullCorrelatorVector};
use crate::error::{BellError, Result};
use crate::scalar::int;
use crate::simplex::solve_standard_form;
use crate::strategy::{enumerate_strategies, DeterministicStrategy};
use crate::{ExactInequality, Rational};
use num_traits::{One, Signed, Zero};
use serde::Serialize;

/// Bound summary for one inequality. The quantum entries are best-found
/// lower bounds filled in by the eigenvalue search; the rational entries are
/// exact.
#[derive(Debug, Clone)]
pub struct BoundsRecord {
    pub beta_c: Rational,
    pub beta_n: Rational,
    pub beta_q: Option<f64>,
    pub beta_q_ti: Option<f64>,
    /// strategy ID attaining the classical minimum
    pub classical_witness: u64,
    /// nonsignalling correlator vector attaining the NS minimum
    pub ns_witness: FullCorrelatorVector,
}

/// `beta_c = -min_s I(s)` over all deterministic strategies, with an argmin.
pub fn classical_bound(q: &ExactInequality) -> Result<(Rational, DeterministicStrategy)> {
    let mut best: Option<(Rational, DeterministicStrategy)> = None;
    for s in enumerate_strategies(q.n)? {
        let val = q.evaluate(&ti_project(&s))?;
        match &best {
            Some((b, _)) if *b <= val => {}
            _ => best = Some((val, s)),
        }
    }
    let (min, witness) = best.expect("nonempty strategy set");
    Ok((-min, witness))
}

/// One positivity constraint per observable choice `x` and outcome word `a`:
/// `1 + sum over nonempty subsets S of (prod_{i in S} a_i) v_{S,x} >= 0`.
/// Row-major order: x as an n-bit word (party 0 least significant), then a
/// likewise with bit 1 meaning outcome -1.
pub fn positivity_matrix(n: usize) -> Vec<Vec<Rational>> {
    let dim = FullCorrelatorVector::dim(n);
    let mut rows = Vec::with_capacity(1usize << (2 * n));
    for xw in 0..1usize << n {
        let obs: Vec<usize> = (0..n).map(|i| (xw >> i) & 1).collect();
        for aw in 0..1usize << n {
            let mut row = vec![Rational::zero(); dim];
            for k in 0..dim {
                let sel = FullCorrelatorVector::decode(n, k);
                let mut sign = 1i64;
                let mut matches = true;
                for (i, o) in sel.iter().enumerate() {
                    match o {
                        None => {}
                        Some(j) if *j == obs[i] => {
                            if (aw >> i) & 1 == 1 {
                                sign = -sign;
                            }
                        }
                        Some(_) => {
                            matches = false;
                            break;
                        }
                    }
                }
                if matches {
                    row[k] = int(sign);
                }
            }
            rows.push(row);
        }
    }
    rows
}

/// Exact NS optimum with an optimal correlator vector and a nonnegative
/// multiplier certificate over the positivity constraints.
#[derive(Debug, Clone, Serialize)]
pub struct NsBound {
    #[serde(serialize_with = "crate::scalar::serialize_rational")]
    pub beta_n: Rational,
    #[serde(skip)]
    pub witness: FullCorrelatorVector,
    #[serde(serialize_with = "crate::scalar::serialize_rationals")]
    pub certificate: Vec<Rational>,
}

impl NsBound {
    /// Exact recheck: the multipliers are nonnegative, reproduce the
    /// objective row by row, sum to `beta_n`, and the witness is feasible
    /// with objective value `-beta_n`.
    pub fn verify(&self, q: &ExactInequality) -> bool {
        let n = q.n;
        let m = positivity_matrix(n);
        if self.certificate.len() != m.len() {
            return false;
        }
        if self.certificate.iter().any(|y| y.is_negative()) {
            return false;
        }
        let f = q.full_objective();
        let dim = f.len();
        for j in 0..dim {
            let col: Rational = m.iter().zip(&self.certificate).map(|(r, y)| &r[j] * y).sum();
            if col != f[j] {
                return false;
            }
        }
        let total: Rational = self.certificate.iter().sum();
        if total != self.beta_n {
            return false;
        }
        let value: Rational = f.iter().zip(&self.witness.entries).map(|(c, v)| c * v).sum();
        if value != -self.beta_n.clone() {
            return false;
        }
        m.iter().all(|r| {
            let dot: Rational = r.iter().zip(&self.witness.entries).map(|(a, v)| a * v).sum();
            dot >= -Rational::one()
        })
    }
}

/// `beta_n = -min I(v)` over correlator vectors `v` with `M v >= -1`, via
/// the dual LP `min 1.y  s.t.  M^T y = f, y >= 0` in exact arithmetic; the
/// dual optimum equals `beta_n`, its solution is the certificate, and the
/// equality duals recover an optimal `v`.
pub fn ns_bound(q: &ExactInequality) -> Result<NsBound> {
    let n = q.n;
    if n > 5 {
        return Err(BellError::Size { n, min: 2, max: 5 });
    }
    let m = positivity_matrix(n);
    let f = q.full_objective();
    let dim = f.len();
    let nrows = m.len();
    let a: Vec<Vec<Rational>> = (0..dim)
        .map(|j| (0..nrows).map(|i| m[i][j].clone()).collect())
        .collect();
    let c = vec![Rational::one(); nrows];
    let sol = solve_standard_form(&a, &f, &c)?;
    let witness = FullCorrelatorVector {
        n,
        entries: sol.y.iter().map(|w| -w.clone()).collect(),
    };
    let out = NsBound {
        beta_n: sol.value,
        witness,
        certificate: sol.x,
    };
    if !out.verify(q) {
        return Err(BellError::Internal("NS certificate failed verification".into()));
    }
    Ok(out)
}

/// An inequality is trivial when even nonsignalling correlations cannot
/// violate it.
pub fn is_trivial(q: &ExactInequality) -> Result<bool> {
    let (bc, _) = classical_bound(q)?;
    let ns = ns_bound(q)?;
    Ok(bc == ns.beta_n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlator::full_correlators;
    use crate::inequality::TIInequality;
    use crate::scalar::rat;

    fn n3_class6() -> ExactInequality {
        TIInequality::new(3, int(-1), int(-3), vec![int(-1)], vec![int(1), int(2)], vec![int(3)])
            .unwrap()
    }

    #[test]
    fn classical_bound_examples() {
        let (bc, w) = classical_bound(&n3_class6()).unwrap();
        assert_eq!(bc, int(9));
        assert_eq!(n3_class6().evaluate(&ti_project(&w)).unwrap(), int(-9));

        let (z, _) = classical_bound(&TIInequality::zero(3)).unwrap();
        assert_eq!(z, int(0));

        let nn =
            TIInequality::nearest_neighbour(5, int(-2), int(-6), int(-2), int(2), int(4), int(5))
                .unwrap();
        let (bc5, _) = classical_bound(&nn).unwrap();
        assert_eq!(bc5, int(35));
    }

    #[test]
    fn positivity_rows_hold_on_strategies() {
        // every deterministic correlator vector satisfies every constraint;
        // each row value is even in [0, 2^n] scaled: 1 + sum in {0, 2^n}
        let n = 3;
        let m = positivity_matrix(n);
        assert_eq!(m.len(), 1 << (2 * n));
        for s in enumerate_strategies(n).unwrap() {
            let v = full_correlators(&s);
            for row in &m {
                let dot: Rational = row.iter().zip(&v.entries).map(|(a, e)| a * e).sum();
                assert!(dot >= -Rational::one());
            }
        }
    }

    #[test]
    fn zero_vector_feasible() {
        // the uniform box: every constraint reduces to 1 >= 0
        let m = positivity_matrix(3);
        for row in &m {
            let dot: Rational = row.iter().map(|_| Rational::zero()).sum();
            assert!(dot >= -Rational::one());
        }
    }

    #[test]
    fn ns_bound_n3_class6() {
        let ns = ns_bound(&n3_class6()).unwrap();
        assert_eq!(ns.beta_n, int(13));
        assert!(ns.verify(&n3_class6()));
    }

    #[test]
    fn triviality_split_n3() {
        // eps-only facet class: beta_n equals beta_c
        let q1 = TIInequality::new(3, int(0), int(0), vec![int(0)], vec![int(0), int(0)], vec![int(1)])
            .unwrap();
        assert!(is_trivial(&q1).unwrap());
        assert!(!is_trivial(&n3_class6()).unwrap());
    }

    #[test]
    fn chsh_like_fraction() {
        // sanity for fractional optima: scaled inequality keeps ratio
        let mut q = n3_class6();
        q.alpha = rat(-1, 2) * int(2);
        let ns = ns_bound(&q).unwrap();
        assert_eq!(ns.beta_n, int(13));
    }
}
