//! Local deterministic strategies: the vertex generators of the two-body
//! local polytope.

use crate::error::{BellError, Result};

pub const MIN_PARTIES: usize = 2;
pub const MAX_PARTIES: usize = 12;

/// One predetermined ±1 outcome per observable per party.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DeterministicStrategy {
    n: usize,
    /// `(o0, o1)` per party, each entry +1 or -1.
    outcomes: Vec<(i8, i8)>,
}

impl DeterministicStrategy {
    pub fn new(outcomes: Vec<(i8, i8)>) -> Result<Self> {
        let n = outcomes.len();
        if !(MIN_PARTIES..=MAX_PARTIES).contains(&n) {
            return Err(BellError::Size {
                n,
                min: MIN_PARTIES,
                max: MAX_PARTIES,
            });
        }
        for &(a, b) in &outcomes {
            if (a != 1 && a != -1) || (b != 1 && b != -1) {
                return Err(BellError::BadInput(format!(
                    "outcomes must be ±1, got ({a}, {b})"
                )));
            }
        }
        Ok(Self { n, outcomes })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn outcomes(&self) -> &[(i8, i8)] {
        &self.outcomes
    }

    /// Outcome of observable `j` (0 or 1) at party `m` (0-based).
    #[inline]
    pub fn outcome(&self, m: usize, j: usize) -> i64 {
        let (o0, o1) = self.outcomes[m];
        (if j == 0 { o0 } else { o1 }) as i64
    }

    /// Strategy ID: big-endian binary encoding of the 2n outcome bits.
    ///
    /// The first party's pair occupies the most significant bits; within a
    /// pair the observable-0 bit precedes the observable-1 bit; +1 encodes
    /// as bit 0 and -1 as bit 1. IDs therefore run from 0 (all +1) to
    /// 2^(2n)-1 (all -1) and are stable across runs.
    pub fn id(&self) -> u64 {
        let mut id = 0u64;
        for &(o0, o1) in &self.outcomes {
            id = (id << 1) | u64::from(o0 == -1);
            id = (id << 1) | u64::from(o1 == -1);
        }
        id
    }

    pub fn from_id(n: usize, id: u64) -> Result<Self> {
        if !(MIN_PARTIES..=MAX_PARTIES).contains(&n) {
            return Err(BellError::Size {
                n,
                min: MIN_PARTIES,
                max: MAX_PARTIES,
            });
        }
        let mut outcomes = vec![(1i8, 1i8); n];
        for m in 0..n {
            let b0 = (id >> (2 * (n - m) - 1)) & 1;
            let b1 = (id >> (2 * (n - m) - 2)) & 1;
            outcomes[m] = (if b0 == 1 { -1 } else { 1 }, if b1 == 1 { -1 } else { 1 });
        }
        Self::new(outcomes)
    }

    /// Cyclic rotation by one: party m takes over party m-1's outcomes.
    pub fn rotate(&self) -> Self {
        let mut outcomes = self.outcomes.clone();
        outcomes.rotate_right(1);
        Self {
            n: self.n,
            outcomes,
        }
    }

    /// Party reflection i -> n + 1 - i.
    pub fn reflect(&self) -> Self {
        let mut outcomes = self.outcomes.clone();
        outcomes.reverse();
        Self {
            n: self.n,
            outcomes,
        }
    }
}

/// All 2^(2n) deterministic strategies in increasing ID order.
pub fn enumerate_strategies(n: usize) -> Result<Vec<DeterministicStrategy>> {
    if !(MIN_PARTIES..=MAX_PARTIES).contains(&n) {
        return Err(BellError::Size {
            n,
            min: MIN_PARTIES,
            max: MAX_PARTIES,
        });
    }
    let count = 1u64 << (2 * n);
    (0..count).map(|id| DeterministicStrategy::from_id(n, id)).collect()
}
