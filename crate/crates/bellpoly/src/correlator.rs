//! Correlator vectors and the projections mapping strategies onto them.

use crate::error::{BellError, Result};
use crate::scalar::int;
use crate::strategy::DeterministicStrategy;
use crate::Rational;

/// Translationally symmetrized one- and two-body correlator tuple.
///
/// Components are ordered as
/// `(S0, S1, T00^(1..K), T01^(1..n-1), T11^(1..K))` with `K = n/2` rounded
/// down; they are integer-valued on deterministic strategies.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TICorrelatorVector {
    pub n: usize,
    pub s0: i64,
    pub s1: i64,
    pub t00: Vec<i64>,
    pub t01: Vec<i64>,
    pub t11: Vec<i64>,
}

impl TICorrelatorVector {
    pub fn dim(n: usize) -> usize {
        n + 1 + 2 * (n / 2)
    }

    pub fn components(&self) -> Vec<i64> {
        let mut v = Vec::with_capacity(Self::dim(self.n));
        v.push(self.s0);
        v.push(self.s1);
        v.extend_from_slice(&self.t00);
        v.extend_from_slice(&self.t01);
        v.extend_from_slice(&self.t11);
        v
    }
}

/// `S_j = sum_m o_j^(m)`, `T_ij^(k) = sum_m o_i^(m) o_j^(m+k)`, indices mod n.
pub fn ti_project(s: &DeterministicStrategy) -> TICorrelatorVector {
    let n = s.n();
    let half = n / 2;
    let mut s0 = 0;
    let mut s1 = 0;
    for m in 0..n {
        s0 += s.outcome(m, 0);
        s1 += s.outcome(m, 1);
    }
    let pair_sum = |i: usize, j: usize, k: usize| -> i64 {
        (0..n).map(|m| s.outcome(m, i) * s.outcome((m + k) % n, j)).sum()
    };
    let t00 = (1..=half).map(|k| pair_sum(0, 0, k)).collect();
    let t11 = (1..=half).map(|k| pair_sum(1, 1, k)).collect();
    let t01 = (1..n).map(|k| pair_sum(0, 1, k)).collect();
    TICorrelatorVector {
        n,
        s0,
        s1,
        t00,
        t01,
        t11,
    }
}

/// All `3^n - 1` correlators of a correlation vector.
///
/// Entries are indexed by a ternary word over the parties, little-endian:
/// digit 0 = party absent, 1 = observable 0, 2 = observable 1; the index is
/// `sum_i digit_i 3^i` and the all-absent word (identity) is excluded, so
/// entry `k` of the storage corresponds to index `k + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct FullCorrelatorVector {
    pub n: usize,
    pub entries: Vec<Rational>,
}

impl FullCorrelatorVector {
    pub fn dim(n: usize) -> usize {
        3usize.pow(n as u32) - 1
    }

    /// Index of the correlator selecting observable `obs[i]` for the listed
    /// parties (None = absent).
    pub fn index(n: usize, obs: &[Option<usize>]) -> usize {
        assert_eq!(obs.len(), n);
        let mut idx = 0usize;
        let mut pow = 1usize;
        for o in obs {
            let digit = match o {
                None => 0,
                Some(0) => 1,
                Some(1) => 2,
                Some(j) => panic!("observable index {j} out of range"),
            };
            idx += digit * pow;
            pow *= 3;
        }
        idx
    }

    pub fn entry(&self, obs: &[Option<usize>]) -> &Rational {
        let idx = Self::index(self.n, obs);
        assert!(idx > 0, "identity correlator is excluded");
        &self.entries[idx - 1]
    }

    /// Decodes storage slot `k` back into a per-party observable selection.
    pub fn decode(n: usize, k: usize) -> Vec<Option<usize>> {
        let mut idx = k + 1;
        let mut obs = Vec::with_capacity(n);
        for _ in 0..n {
            obs.push(match idx % 3 {
                0 => None,
                1 => Some(0),
                _ => Some(1),
            });
            idx /= 3;
        }
        obs
    }
}

/// Every correlator factorizes into the per-party predetermined outcomes.
pub fn full_correlators(s: &DeterministicStrategy) -> FullCorrelatorVector {
    let n = s.n();
    let dim = FullCorrelatorVector::dim(n);
    let mut entries = Vec::with_capacity(dim);
    for k in 0..dim {
        let obs = FullCorrelatorVector::decode(n, k);
        let mut prod = 1i64;
        for (m, o) in obs.iter().enumerate() {
            if let Some(j) = o {
                prod *= s.outcome(m, *j);
            }
        }
        entries.push(int(prod));
    }
    FullCorrelatorVector { n, entries }
}

/// Nearest-neighbour restriction `(S0, S1, T00^(1), T01^(1), T01^(n-1), T11^(1))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NNCorrelatorVector {
    pub n: usize,
    pub components: [i64; 6],
}

pub fn nn_project(v: &TICorrelatorVector) -> Result<NNCorrelatorVector> {
    let n = v.n;
    if n < 3 {
        return Err(BellError::Size { n, min: 3, max: usize::MAX });
    }
    Ok(NNCorrelatorVector {
        n,
        components: [v.s0, v.s1, v.t00[0], v.t01[0], v.t01[n - 2], v.t11[0]],
    })
}
