//! Relabeling symmetries acting on TI inequality coefficients, and the
//! grouping of facets into equivalence classes.

use crate::inequality::TIInequality;
use crate::polytope::FacetList;
use crate::{ExactInequality, Rational};
use std::collections::{BTreeMap, BTreeSet};

/// One element of the coefficient relabeling group.
///
/// `swap_observables` exchanges the roles of the two observables
/// (alpha <-> beta, gamma_k <-> eps_k, omega_k <-> omega_{n-k});
/// `flip0`/`flip1` rename the outcomes of one observable at every site
/// (negating the matching one-body term and all omega_k); `reflect`
/// reverses the party order (omega_k <-> omega_{n-k}). Cyclic party
/// renaming is the identity on TI coefficients.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SymmetryElement {
    pub swap_observables: bool,
    pub flip0: bool,
    pub flip1: bool,
    pub reflect: bool,
}

impl SymmetryElement {
    pub fn identity() -> Self {
        Self::default()
    }

    /// All 16 elements of the generated group.
    pub fn all() -> Vec<Self> {
        let mut out = Vec::with_capacity(16);
        for bits in 0..16u8 {
            out.push(Self {
                swap_observables: bits & 1 != 0,
                flip0: bits & 2 != 0,
                flip1: bits & 4 != 0,
                reflect: bits & 8 != 0,
            });
        }
        out
    }
}

/// Coefficient relabeling per the group element; the classical bound is
/// carried over unchanged (relabelings preserve the polytope).
pub fn apply_symmetry(q: &ExactInequality, g: SymmetryElement) -> ExactInequality {
    let mut out = q.clone();
    if g.swap_observables {
        std::mem::swap(&mut out.alpha, &mut out.beta);
        std::mem::swap(&mut out.gamma, &mut out.epsilon);
        out.omega.reverse();
    }
    if g.flip0 {
        out.alpha = -out.alpha;
        for w in &mut out.omega {
            *w = -w.clone();
        }
    }
    if g.flip1 {
        out.beta = -out.beta;
        for w in &mut out.omega {
            *w = -w.clone();
        }
    }
    if g.reflect {
        out.omega.reverse();
    }
    out
}

/// The orbit of the normalized coefficient tuple under the uniform
/// relabeling group (same relabeling at every site, plus reflection).
pub fn orbit(q: &ExactInequality) -> BTreeSet<Vec<Rational>> {
    let base = q.normalize();
    let mut seen: BTreeSet<Vec<Rational>> = BTreeSet::new();
    let mut frontier = vec![base.clone()];
    seen.insert(base.coefficients());
    while let Some(cur) = frontier.pop() {
        let images: Vec<ExactInequality> = vec![
            apply_symmetry(&cur, SymmetryElement { swap_observables: true, ..Default::default() }),
            apply_symmetry(&cur, SymmetryElement { flip0: true, ..Default::default() }),
            apply_symmetry(&cur, SymmetryElement { flip1: true, ..Default::default() }),
            apply_symmetry(&cur, SymmetryElement { reflect: true, ..Default::default() }),
        ];
        for img in images {
            if seen.insert(img.coefficients()) {
                frontier.push(img);
            }
        }
    }
    seen
}

/// One relabeling at a single site: optionally swap the two observables,
/// then flip the outcome sign of either (`sign[x]` applies to the original
/// observable `x`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SiteRelabel {
    pub swap: bool,
    pub sign: [i64; 2],
}

const SITE_OPS: [SiteRelabel; 8] = [
    SiteRelabel { swap: false, sign: [1, 1] },
    SiteRelabel { swap: false, sign: [1, -1] },
    SiteRelabel { swap: false, sign: [-1, 1] },
    SiteRelabel { swap: false, sign: [-1, -1] },
    SiteRelabel { swap: true, sign: [1, 1] },
    SiteRelabel { swap: true, sign: [1, -1] },
    SiteRelabel { swap: true, sign: [-1, 1] },
    SiteRelabel { swap: true, sign: [-1, -1] },
];

/// Integer coefficient view of a normalized inequality; `None` when any
/// coefficient is not an integer.
struct IntCoeffs {
    n: usize,
    one: [i64; 2],
    gamma: Vec<i64>,
    omega: Vec<i64>,
    epsilon: Vec<i64>,
}

impl IntCoeffs {
    fn of(q: &ExactInequality) -> Option<Self> {
        let to_i = |r: &Rational| -> Option<i64> {
            if r.is_integer() {
                i64::try_from(r.to_integer()).ok()
            } else {
                None
            }
        };
        Some(Self {
            n: q.n,
            one: [to_i(&q.alpha)?, to_i(&q.beta)?],
            gamma: q.gamma.iter().map(&to_i).collect::<Option<_>>()?,
            omega: q.omega.iter().map(&to_i).collect::<Option<_>>()?,
            epsilon: q.epsilon.iter().map(&to_i).collect::<Option<_>>()?,
        })
    }

    /// Ordered-pair coefficient at separation `s` (each unordered pair
    /// counted once); mirrors `TIInequality::pair_coefficient`.
    fn pair(&self, s: usize, x: usize, y: usize) -> i64 {
        let n = self.n;
        let k = s.min(n - s);
        let double = n % 2 == 0 && s * 2 == n;
        match (x, y) {
            (0, 0) => self.gamma[k - 1] * if double { 2 } else { 1 },
            (1, 1) => self.epsilon[k - 1] * if double { 2 } else { 1 },
            (0, 1) => self.omega[s - 1],
            (1, 0) => self.omega[n - s - 1],
            _ => unreachable!(),
        }
    }
}

/// Image of the inequality under per-site relabelings, provided the result
/// is again translationally invariant; `None` otherwise.
fn pattern_image(c: &IntCoeffs, ops: &[SiteRelabel]) -> Option<ExactInequality> {
    let n = c.n;
    // one-body terms must come out site-independent
    let mut one = [0i64; 2];
    for x in 0..2 {
        let xp = if ops[0].swap { 1 - x } else { x };
        one[xp] += ops[0].sign[x] * c.one[x];
    }
    for op in &ops[1..] {
        let mut here = [0i64; 2];
        for x in 0..2 {
            let xp = if op.swap { 1 - x } else { x };
            here[xp] += op.sign[x] * c.one[x];
        }
        if here != one {
            return None;
        }
    }
    // transformed pair blocks must depend on the separation only
    let mut by_sep: Vec<[[i64; 2]; 2]> = vec![[[0; 2]; 2]; n];
    for s in 1..n {
        for i in 0..=(n - 1 - s) {
            let j = i + s;
            let mut block = [[0i64; 2]; 2];
            for x in 0..2 {
                for y in 0..2 {
                    let xp = if ops[i].swap { 1 - x } else { x };
                    let yp = if ops[j].swap { 1 - y } else { y };
                    block[xp][yp] += ops[i].sign[x] * ops[j].sign[y] * c.pair(s, x, y);
                }
            }
            if i == 0 {
                by_sep[s] = block;
            } else if by_sep[s] != block {
                return None;
            }
        }
    }
    // cross-separation consistency and reconstruction
    let half = n / 2;
    let mut gamma = vec![0i64; half];
    let mut epsilon = vec![0i64; half];
    let mut omega = vec![0i64; n - 1];
    for s in 1..n {
        let p = &by_sep[s];
        let k = s.min(n - s);
        let opposite = &by_sep[n - s];
        if p[1][0] != opposite[0][1] || p[0][0] != opposite[0][0] || p[1][1] != opposite[1][1] {
            return None;
        }
        let scale = if n % 2 == 0 && s * 2 == n { 2 } else { 1 };
        if p[0][0] % scale != 0 || p[1][1] % scale != 0 {
            return None;
        }
        gamma[k - 1] = p[0][0] / scale;
        epsilon[k - 1] = p[1][1] / scale;
        omega[s - 1] = p[0][1];
    }
    let r = crate::scalar::int;
    TIInequality::new(
        n,
        r(one[0]),
        r(one[1]),
        gamma.iter().map(|&v| r(v)).collect(),
        omega.iter().map(|&v| r(v)).collect(),
        epsilon.iter().map(|&v| r(v)).collect(),
    )
    .ok()
}

/// Lexicographically smallest normalized coefficient tuple over the orbit.
///
/// Without the extension the group is the uniform relabelings plus
/// reflection. With it, per-site relabelings are also allowed whenever they
/// carry the inequality to another TI inequality (the relabeled functional
/// takes the original's value on each relabeled strategy, so facets map to
/// facets). Site 0 is pinned to the identity: any pattern factors into a
/// uniform relabeling, which the base orbit already covers, times one with
/// the identity at site 0.
pub fn canonical_form(q: &ExactInequality, with_extension: bool) -> ExactInequality {
    let base = q.normalize();
    let mut best = orbit(&base).into_iter().next().expect("orbit nonempty");
    if with_extension {
        if let Some(ints) = IntCoeffs::of(&base) {
            let n = base.n;
            let count = 8usize.pow((n - 1) as u32);
            let mut ops = vec![SITE_OPS[0]; n];
            for idx in 1..count {
                let mut t = idx;
                for slot in ops.iter_mut().skip(1) {
                    *slot = SITE_OPS[t % 8];
                    t /= 8;
                }
                if let Some(img) = pattern_image(&ints, &ops) {
                    let m = orbit(&img).into_iter().next().expect("orbit nonempty");
                    if m < best {
                        best = m;
                    }
                }
            }
        }
    }
    let mut out = TIInequality::from_coefficients(q.n, &best).expect("orbit tuple shape");
    out.beta_c = q.beta_c.clone();
    out
}

#[derive(Debug, Clone)]
pub struct ClassEntry {
    pub canonical: ExactInequality,
    /// facet-list indices belonging to the class
    pub members: Vec<usize>,
    pub orbit_size: usize,
}

#[derive(Debug, Clone)]
pub struct ClassTable {
    pub n: usize,
    pub with_extension: bool,
    pub classes: Vec<ClassEntry>,
}

/// Partitions the facet list by canonical form; classes are sorted by
/// (beta_c, canonical tuple), which fixes the class numbering.
pub fn classify(fl: &FacetList, with_extension: bool) -> ClassTable {
    // group under the uniform relabelings first; the per-site search only
    // needs one representative per preliminary group
    let mut pre: BTreeMap<Vec<Rational>, (ExactInequality, Vec<usize>)> = BTreeMap::new();
    for (i, f) in fl.facets.iter().enumerate() {
        let canon = canonical_form(&f.inequality, false);
        pre.entry(canon.coefficients()).or_insert_with(|| (canon, Vec::new())).1.push(i);
    }
    let mut groups: BTreeMap<(Option<Rational>, Vec<Rational>), (ExactInequality, Vec<usize>)> =
        BTreeMap::new();
    for (rep, members) in pre.into_values() {
        let canon = if with_extension { canonical_form(&rep, true) } else { rep };
        let key = (canon.beta_c.clone(), canon.coefficients());
        let entry = groups.entry(key).or_insert_with(|| (canon, Vec::new()));
        entry.1.extend(members);
    }
    for (_, members) in groups.values_mut() {
        members.sort_unstable();
    }
    let classes = groups
        .into_values()
        .map(|(canonical, members)| {
            let orbit_size = members.len();
            ClassEntry { canonical, members, orbit_size }
        })
        .collect();
    ClassTable { n: fl.n, with_extension, classes }
}
