//! Double description method: extreme rays of a pointed polyhedral cone
//! `{ x : A x >= 0 }` in exact integer arithmetic.
//!
//! Facet enumeration of a full-dimensional polytope conv(V) reduces to this:
//! take one constraint row `(1, v)` per vertex; the extreme rays `(b, a)` of
//! the resulting cone are exactly the facet inequalities `a . x + b >= 0`
//! (the trivial ray `(1, 0)` is not extreme when the origin is interior).

use crate::error::{BellError, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An extreme ray together with the set of constraints it saturates.
#[derive(Debug, Clone)]
pub struct Ray {
    pub coords: Vec<BigInt>,
    /// bit i set iff constraint i is tight on this ray (over all constraints)
    pub tight: Vec<u64>,
}

fn words(m: usize) -> usize {
    m.div_ceil(64)
}

fn bit_set(bits: &mut [u64], i: usize) {
    bits[i / 64] |= 1 << (i % 64);
}

fn bit_get(bits: &[u64], i: usize) -> bool {
    bits[i / 64] >> (i % 64) & 1 == 1
}

fn and_count(a: &[u64], b: &[u64], mask: &[u64]) -> u32 {
    a.iter()
        .zip(b)
        .zip(mask)
        .map(|((x, y), m)| (x & y & m).count_ones())
        .sum()
}

/// z := a & b & mask
fn and3(a: &[u64], b: &[u64], mask: &[u64], out: &mut [u64]) {
    for (((x, y), m), o) in a.iter().zip(b).zip(mask).zip(out.iter_mut()) {
        *o = x & y & m;
    }
}

fn subset(z: &[u64], t: &[u64]) -> bool {
    z.iter().zip(t).all(|(x, y)| x & !y == 0)
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let mut acc = BigInt::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}

fn normalize(v: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in v.iter() {
        g = g.gcd(x);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for x in v.iter_mut() {
        *x /= &g;
    }
}

fn tight_set(coords: &[BigInt], constraints: &[Vec<BigInt>]) -> Vec<u64> {
    let mut t = vec![0u64; words(constraints.len())];
    for (i, c) in constraints.iter().enumerate() {
        if dot(coords, c).is_zero() {
            bit_set(&mut t, i);
        }
    }
    t
}

/// Greedy row-echelon basis selection; returns indices of `dim` independent
/// rows in input order, or the achieved rank on failure.
fn independent_rows(constraints: &[Vec<BigInt>], dim: usize) -> std::result::Result<Vec<usize>, usize> {
    let mut echelon: Vec<Vec<BigRational>> = Vec::new();
    let mut picked = Vec::new();
    for (idx, row) in constraints.iter().enumerate() {
        let mut r: Vec<BigRational> = row.iter().map(|x| BigRational::from_integer(x.clone())).collect();
        for e in &echelon {
            let lead = e.iter().position(|x| !x.is_zero()).unwrap();
            if !r[lead].is_zero() {
                let f = &r[lead] / &e[lead];
                for j in 0..dim {
                    let sub = &f * &e[j];
                    r[j] -= sub;
                }
            }
        }
        if r.iter().any(|x| !x.is_zero()) {
            echelon.push(r);
            picked.push(idx);
            if picked.len() == dim {
                return Ok(picked);
            }
        }
    }
    Err(picked.len())
}

/// Exact rank of an integer matrix.
pub fn integer_rank(rows: &[Vec<BigInt>]) -> usize {
    let Some(dim) = rows.first().map(|r| r.len()) else {
        return 0;
    };
    let mut echelon: Vec<Vec<BigRational>> = Vec::new();
    for row in rows {
        let mut r: Vec<BigRational> =
            row.iter().map(|x| BigRational::from_integer(x.clone())).collect();
        for e in &echelon {
            let lead = e.iter().position(|x| !x.is_zero()).unwrap();
            if !r[lead].is_zero() {
                let f = &r[lead] / &e[lead];
                for j in 0..dim {
                    let sub = &f * &e[j];
                    r[j] -= sub;
                }
            }
        }
        if r.iter().any(|x| !x.is_zero()) {
            echelon.push(r);
            if echelon.len() == dim {
                break;
            }
        }
    }
    echelon.len()
}

/// Inverse of the square matrix given by `rows`, as integer columns with
/// cleared denominators (each column scaled independently, positive scale).
fn integer_inverse_columns(rows: &[&Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let dim = rows.len();
    let mut a: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let mut inv: Vec<Vec<BigRational>> = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..dim {
        let piv = (col..dim).find(|&r| !a[r][col].is_zero()).expect("singular basis");
        a.swap(col, piv);
        inv.swap(col, piv);
        let p = a[col][col].clone();
        for j in 0..dim {
            a[col][j] /= &p;
            inv[col][j] /= &p;
        }
        for r in 0..dim {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..dim {
                    let s = &f * &a[col][j];
                    a[r][j] -= s;
                    let s = &f * &inv[col][j];
                    inv[r][j] -= s;
                }
            }
        }
    }
    // column k of the inverse
    (0..dim)
        .map(|k| {
            let col: Vec<BigRational> = (0..dim).map(|i| inv[i][k].clone()).collect();
            let mut lcm = BigInt::one();
            for x in &col {
                lcm = lcm.lcm(x.denom());
            }
            let mut out: Vec<BigInt> = col.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
            normalize(&mut out);
            out
        })
        .collect()
}

/// Extreme rays of `{ x : constraints . x >= 0 }`.
///
/// Requires the constraint matrix to have full column rank (pointed cone);
/// otherwise reports the rank deficit. Constraints are inserted in the order
/// given.
pub fn extreme_rays(constraints: &[Vec<BigInt>]) -> Result<Vec<Ray>> {
    let m = constraints.len();
    let dim = constraints
        .first()
        .map(|c| c.len())
        .ok_or_else(|| BellError::BadInput("no constraints".into()))?;
    let basis = independent_rows(constraints, dim).map_err(|rank| BellError::Degenerate {
        expected: dim,
        deficit: dim - rank,
    })?;

    let basis_rows: Vec<&Vec<BigInt>> = basis.iter().map(|&i| &constraints[i]).collect();
    let mut rays: Vec<Ray> = integer_inverse_columns(&basis_rows)
        .into_iter()
        .map(|coords| {
            let tight = tight_set(&coords, constraints);
            Ray { coords, tight }
        })
        .collect();

    let nw = words(m);
    let mut processed = vec![0u64; nw];
    for &i in &basis {
        bit_set(&mut processed, i);
    }

    let mut z = vec![0u64; nw];
    for i in 0..m {
        if bit_get(&processed, i) {
            continue;
        }
        let a = &constraints[i];
        let dots: Vec<BigInt> = rays.iter().map(|r| dot(&r.coords, a)).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| dots[k].is_negative()).collect();
        if neg.is_empty() {
            bit_set(&mut processed, i);
            continue;
        }
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| dots[k].is_positive()).collect();

        // restricted tight sets of the current rays
        let restricted: Vec<Vec<u64>> = rays
            .iter()
            .map(|r| r.tight.iter().zip(&processed).map(|(t, p)| t & p).collect())
            .collect();

        let mut created: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &q in &neg {
                // necessary condition for adjacency
                if and_count(&rays[p].tight, &rays[q].tight, &processed) + 2 < dim as u32 {
                    continue;
                }
                and3(&rays[p].tight, &rays[q].tight, &processed, &mut z);
                let mut adjacent = true;
                for (k, r) in restricted.iter().enumerate() {
                    if k != p && k != q && subset(&z, r) {
                        adjacent = false;
                        break;
                    }
                }
                if !adjacent {
                    continue;
                }
                let dp = &dots[p];
                let dq = &dots[q];
                let mut coords: Vec<BigInt> = rays[p]
                    .coords
                    .iter()
                    .zip(&rays[q].coords)
                    .map(|(xp, xq)| dp * xq - dq * xp)
                    .collect();
                normalize(&mut coords);
                let tight = tight_set(&coords, constraints);
                created.push(Ray { coords, tight });
            }
        }

        let mut kept: Vec<Ray> = Vec::with_capacity(rays.len() - neg.len() + created.len());
        for (k, r) in rays.into_iter().enumerate() {
            if !dots[k].is_negative() {
                kept.push(r);
            }
        }
        kept.extend(created);
        rays = kept;
        bit_set(&mut processed, i);
    }

    // sanity: every ray satisfies every constraint
    for r in &rays {
        debug_assert!(constraints.iter().all(|c| !dot(&r.coords, c).is_negative()));
    }
    Ok(rays)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn square_facets() {
        // conv{(±1, ±1)}: 4 facets ±x <= 1, ±y <= 1
        let constraints: Vec<Vec<BigInt>> = [
            [1, 1, 1],
            [1, 1, -1],
            [1, -1, 1],
            [1, -1, -1],
        ]
        .iter()
        .map(|r| bi(r))
        .collect();
        let rays = extreme_rays(&constraints).unwrap();
        let mut got: Vec<Vec<i64>> = rays
            .iter()
            .map(|r| r.coords.iter().map(|x| i64::try_from(x).unwrap()).collect())
            .collect();
        got.sort();
        assert_eq!(got, vec![
            vec![1, -1, 0],
            vec![1, 0, -1],
            vec![1, 0, 1],
            vec![1, 1, 0],
        ]);
    }

    #[test]
    fn simplex_facets() {
        // conv{e1, e2, e3, -e1-e2-e3} in R^3 has 4 facets
        let constraints: Vec<Vec<BigInt>> = [
            [1, 1, 0, 0],
            [1, 0, 1, 0],
            [1, 0, 0, 1],
            [1, -1, -1, -1],
        ]
        .iter()
        .map(|r| bi(r))
        .collect();
        assert_eq!(extreme_rays(&constraints).unwrap().len(), 4);
    }

    #[test]
    fn degenerate_input_reported() {
        // all points on a line in R^2
        let constraints: Vec<Vec<BigInt>> =
            [[1, 0, 0], [1, 1, 0], [1, 2, 0]].iter().map(|r| bi(r)).collect();
        match extreme_rays(&constraints) {
            Err(BellError::Degenerate { expected: 3, deficit: 1 }) => {}
            other => panic!("expected degeneracy error, got {other:?}"),
        }
    }
}
