//! The TI local polytope: vertex projection, exact facet enumeration, and
//! facet status in the larger two-body polytope.

use crate::correlator::{nn_project, ti_project, NNCorrelatorVector, TICorrelatorVector};
use crate::dd::{self, Ray};
use crate::error::{BellError, Result};
use crate::inequality::TIInequality;
use crate::strategy::{enumerate_strategies, DeterministicStrategy};
use crate::{ExactInequality, Rational};
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::BTreeMap;

/// Pólya upper bound on the number of TI-projected strategies:
/// `(1/n) * sum_{d|n} phi(d) 4^(n/d)`.
pub fn polya_bound(n: usize) -> u64 {
    assert!(n >= 1 && n <= 16);
    let phi = |mut x: u64| -> u64 {
        let mut res = x;
        let mut p = 2;
        while p * p <= x {
            if x % p == 0 {
                while x % p == 0 {
                    x /= p;
                }
                res -= res / p;
            }
            p += 1;
        }
        if x > 1 {
            res -= res / x;
        }
        res
    };
    let n64 = n as u64;
    let mut total = 0u64;
    for d in 1..=n64 {
        if n64 % d == 0 {
            total += phi(d) * 4u64.pow((n64 / d) as u32);
        }
    }
    total / n64
}

/// Deduplicated TI correlator vectors with the strategies producing each.
#[derive(Debug, Clone)]
pub struct VertexSet {
    pub n: usize,
    /// lexicographically sorted by components
    pub vertices: Vec<TICorrelatorVector>,
    /// strategy IDs mapping onto each vertex under the TI projection
    pub provenance: Vec<Vec<u64>>,
}

impl VertexSet {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Projects all 2^(2n) strategies through the TI map and deduplicates.
pub fn ti_vertices(n: usize) -> Result<VertexSet> {
    if !(3..=8).contains(&n) {
        return Err(BellError::Size { n, min: 3, max: 8 });
    }
    let mut map: BTreeMap<Vec<i64>, (TICorrelatorVector, Vec<u64>)> = BTreeMap::new();
    for s in enumerate_strategies(n)? {
        let v = ti_project(&s);
        map.entry(v.components())
            .or_insert_with(|| (v, Vec::new()))
            .1
            .push(s.id());
    }
    let mut vertices = Vec::with_capacity(map.len());
    let mut provenance = Vec::with_capacity(map.len());
    for (_, (v, ids)) in map {
        vertices.push(v);
        provenance.push(ids);
    }
    Ok(VertexSet { n, vertices, provenance })
}

/// One facet: a normalized inequality with exact classical bound, plus the
/// vertices saturating it.
#[derive(Debug, Clone)]
pub struct Facet {
    pub inequality: ExactInequality,
    pub tight: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct FacetList {
    pub n: usize,
    /// dimension of the enumerated polytope
    pub dim: usize,
    pub facets: Vec<Facet>,
}

fn ray_bits(ray: &Ray, count: usize) -> Vec<usize> {
    (0..count).filter(|&i| ray.tight[i / 64] >> (i % 64) & 1 == 1).collect()
}

fn rational_from_big(b: &BigInt) -> Rational {
    Rational::from_integer(b.clone())
}

fn run_dd(rows: Vec<Vec<BigInt>>, space_dim: usize) -> Result<Vec<Ray>> {
    let rays = dd::extreme_rays(&rows)?;
    for r in &rays {
        // a zero coefficient part would be the trivial inequality; the
        // origin is interior, so it must not appear
        if r.coords[1..].iter().all(|c| c.is_zero()) {
            return Err(BellError::Internal("trivial ray among extreme rays".into()));
        }
        // an extreme ray saturates constraints spanning all but its own
        // direction
        let tight = ray_bits(r, rows.len());
        let tight_rows: Vec<Vec<BigInt>> = tight.iter().map(|&i| rows[i].clone()).collect();
        if dd::integer_rank(&tight_rows) != space_dim - 1 {
            return Err(BellError::Internal("facet tightness rank check failed".into()));
        }
    }
    Ok(rays)
}

/// All facets of conv(vertices), exact, complete, and duplicate-free.
///
/// The n = 6 case (and beyond) is refused outright; it is intractable at
/// this vertex count with exact arithmetic.
pub fn facet_enum(vs: &VertexSet) -> Result<FacetList> {
    if vs.n >= 6 {
        return Err(BellError::Intractable);
    }
    let dim = TICorrelatorVector::dim(vs.n);
    let rows: Vec<Vec<BigInt>> = vs
        .vertices
        .iter()
        .map(|v| {
            let mut row = Vec::with_capacity(dim + 1);
            row.push(BigInt::from(1));
            row.extend(v.components().iter().map(|&c| BigInt::from(c)));
            row
        })
        .collect();
    let rays = run_dd(rows, dim + 1)?;

    let mut facets: Vec<Facet> = rays
        .iter()
        .map(|r| {
            let coeffs: Vec<Rational> = r.coords[1..].iter().map(rational_from_big).collect();
            let mut q = TIInequality::from_coefficients(vs.n, &coeffs)?.normalize();
            q.beta_c = Some(rational_from_big(&r.coords[0]));
            Ok(Facet {
                inequality: q,
                tight: ray_bits(r, vs.vertices.len()),
            })
        })
        .collect::<Result<_>>()?;
    facets.sort_by(|a, b| {
        a.inequality
            .coefficients()
            .cmp(&b.inequality.coefficients())
            .then_with(|| a.inequality.beta_c.cmp(&b.inequality.beta_c))
    });
    facets.dedup_by(|a, b| a.inequality == b.inequality);
    Ok(FacetList { n: vs.n, dim, facets })
}

/// Vertices of the polytope that lie on fewer than `dim` facets are interior
/// candidates; returns their indices (empty means every projected point is
/// extreme).
pub fn extremality_audit(vs: &VertexSet, fl: &FacetList) -> Vec<usize> {
    let mut counts = vec![0usize; vs.vertices.len()];
    for f in &fl.facets {
        for &v in &f.tight {
            counts[v] += 1;
        }
    }
    counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c < fl.dim)
        .map(|(i, _)| i)
        .collect()
}

/// The nearest-neighbour projected polytope and its facets.
#[derive(Debug, Clone)]
pub struct NnPolytope {
    pub n: usize,
    pub vertices: Vec<NNCorrelatorVector>,
    pub facet_list: FacetList,
}

/// Facets of the 6-dimensional nearest-neighbour projection.
pub fn facet_enum_nn(n: usize) -> Result<NnPolytope> {
    if n < 3 {
        return Err(BellError::Size { n, min: 3, max: usize::MAX });
    }
    if n > 8 {
        return Err(BellError::Size { n, min: 3, max: 8 });
    }
    let mut set: BTreeMap<[i64; 6], NNCorrelatorVector> = BTreeMap::new();
    for s in enumerate_strategies(n)? {
        let v = nn_project(&ti_project(&s))?;
        set.insert(v.components, v);
    }
    let vertices: Vec<NNCorrelatorVector> = set.into_values().collect();
    let rows: Vec<Vec<BigInt>> = vertices
        .iter()
        .map(|v| {
            let mut row = Vec::with_capacity(7);
            row.push(BigInt::from(1));
            row.extend(v.components.iter().map(|&c| BigInt::from(c)));
            row
        })
        .collect();
    let rays = run_dd(rows, 7)?;
    let mut facets: Vec<Facet> = rays
        .iter()
        .map(|r| {
            let c: Vec<Rational> = r.coords[1..].iter().map(rational_from_big).collect();
            let mut q = TIInequality::nearest_neighbour(
                n,
                c[0].clone(),
                c[1].clone(),
                c[2].clone(),
                c[3].clone(),
                c[4].clone(),
                c[5].clone(),
            )?
            .normalize();
            q.beta_c = Some(rational_from_big(&r.coords[0]));
            Ok(Facet {
                inequality: q,
                tight: ray_bits(r, vertices.len()),
            })
        })
        .collect::<Result<_>>()?;
    facets.sort_by(|a, b| a.inequality.coefficients().cmp(&b.inequality.coefficients()));
    facets.dedup_by(|a, b| a.inequality == b.inequality);
    Ok(NnPolytope {
        n,
        vertices,
        facet_list: FacetList { n, dim: 6, facets },
    })
}

/// One- and two-body correlator vector of a strategy in the unsymmetrized
/// polytope: 2n one-body entries then 4 entries per ordered site pair.
pub fn p2_vector(s: &DeterministicStrategy) -> Vec<i64> {
    let n = s.n();
    let mut v = Vec::with_capacity(2 * n * n);
    for i in 0..n {
        for x in 0..2 {
            v.push(s.outcome(i, x));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for x in 0..2 {
                for y in 0..2 {
                    v.push(s.outcome(i, x) * s.outcome(j, y));
                }
            }
        }
    }
    v
}

/// Tests whether the TI inequality, expanded to the full two-body form, is a
/// facet of the unsymmetrized two-body polytope: the strategies saturating
/// it must affinely span a hyperplane (rank 2n^2 over homogenized rows).
pub fn is_facet_of_p2(q: &ExactInequality) -> Result<bool> {
    let n = q.n;
    if n > 6 {
        return Err(BellError::Size { n, min: 3, max: 6 });
    }
    let beta_c = q.beta_c()?.clone();
    let full_dim = 2 * n * n;
    let mut saturating: Vec<Vec<BigInt>> = Vec::new();
    for s in enumerate_strategies(n)? {
        let val = q.evaluate(&ti_project(&s))? + &beta_c;
        if val.is_zero() {
            let mut row = Vec::with_capacity(full_dim + 1);
            row.push(BigInt::from(1));
            row.extend(p2_vector(&s).iter().map(|&c| BigInt::from(c)));
            saturating.push(row);
        }
    }
    Ok(dd::integer_rank(&saturating) == full_dim)
}
