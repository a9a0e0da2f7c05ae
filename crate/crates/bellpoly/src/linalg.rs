//! Smallest-eigenpair solvers for Hermitian operators: dense for small
//! dimensions, Lanczos with full reorthogonalization above that.

use nalgebra::DMatrix;
use num_complex::Complex64;

/// A Hermitian linear operator given by its action on vectors.
pub trait HermitianOp {
    fn dim(&self) -> usize;
    fn apply(&self, x: &[Complex64], y: &mut [Complex64]);
}

impl HermitianOp for DMatrix<Complex64> {
    fn dim(&self) -> usize {
        self.nrows()
    }

    fn apply(&self, x: &[Complex64], y: &mut [Complex64]) {
        let n = self.nrows();
        for i in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..n {
                acc += self[(i, j)] * x[j];
            }
            y[i] = acc;
        }
    }
}

fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[Complex64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Materializes the operator and diagonalizes it densely.
pub fn dense_smallest(op: &dyn HermitianOp) -> (f64, Vec<Complex64>) {
    let n = op.dim();
    let mut mat = DMatrix::<Complex64>::zeros(n, n);
    let mut e = vec![Complex64::new(0.0, 0.0); n];
    let mut col = vec![Complex64::new(0.0, 0.0); n];
    for j in 0..n {
        e[j] = Complex64::new(1.0, 0.0);
        op.apply(&e, &mut col);
        e[j] = Complex64::new(0.0, 0.0);
        for i in 0..n {
            mat[(i, j)] = col[i];
        }
    }
    // enforce exact Hermiticity against roundoff before factorizing
    for i in 0..n {
        for j in 0..i {
            let avg = (mat[(i, j)] + mat[(j, i)].conj()) * 0.5;
            mat[(i, j)] = avg;
            mat[(j, i)] = avg.conj();
        }
        mat[(i, i)] = Complex64::new(mat[(i, i)].re, 0.0);
    }
    let eig = mat.symmetric_eigen();
    let mut best = 0;
    for k in 1..n {
        if eig.eigenvalues[k] < eig.eigenvalues[best] {
            best = k;
        }
    }
    let v: Vec<Complex64> = eig.eigenvectors.column(best).iter().cloned().collect();
    (eig.eigenvalues[best], v)
}

/// Lanczos iteration for the smallest eigenpair, fully reorthogonalized.
///
/// `start` seeds the Krylov space (normalized internally); convergence is
/// declared when the Ritz residual drops below `tol * max(1, |theta|)`.
pub fn lanczos_smallest(
    op: &dyn HermitianOp,
    start: &[Complex64],
    tol: f64,
    max_iter: usize,
) -> (f64, Vec<Complex64>) {
    let n = op.dim();
    assert_eq!(start.len(), n);
    let mut q: Vec<Vec<Complex64>> = Vec::new();
    let s0 = norm(start);
    assert!(s0 > 0.0, "zero start vector");
    q.push(start.iter().map(|x| x / s0).collect());

    let mut alpha: Vec<f64> = Vec::new();
    let mut beta: Vec<f64> = Vec::new();
    let mut w = vec![Complex64::new(0.0, 0.0); n];
    let cap = max_iter.min(n);

    let ritz = |alpha: &[f64], beta: &[f64]| -> (f64, Vec<f64>) {
        let m = alpha.len();
        let mut t = DMatrix::<f64>::zeros(m, m);
        for i in 0..m {
            t[(i, i)] = alpha[i];
            if i + 1 < m {
                t[(i, i + 1)] = beta[i];
                t[(i + 1, i)] = beta[i];
            }
        }
        let eig = t.symmetric_eigen();
        let mut best = 0;
        for k in 1..m {
            if eig.eigenvalues[k] < eig.eigenvalues[best] {
                best = k;
            }
        }
        (
            eig.eigenvalues[best],
            eig.eigenvectors.column(best).iter().cloned().collect(),
        )
    };

    let mut exhausted = false;
    for j in 0..cap {
        op.apply(&q[j], &mut w);
        let a = inner(&q[j], &w).re;
        alpha.push(a);
        for (x, y) in w.iter_mut().zip(&q[j]) {
            *x -= a * y;
        }
        if j > 0 {
            let b = beta[j - 1];
            for (x, y) in w.iter_mut().zip(&q[j - 1]) {
                *x -= b * y;
            }
        }
        for qi in &q {
            let c = inner(qi, &w);
            for (x, y) in w.iter_mut().zip(qi) {
                *x -= c * y;
            }
        }
        let b = norm(&w);
        if b < 1e-13 {
            exhausted = true;
            break;
        }
        beta.push(b);
        q.push(w.iter().map(|x| x / b).collect());

        if j >= 4 && (j % 5 == 0 || j + 1 == cap) {
            let (theta, s) = ritz(&alpha, &beta[..alpha.len() - 1]);
            let resid = b * s[alpha.len() - 1].abs();
            if resid < tol * theta.abs().max(1.0) {
                break;
            }
        }
    }

    let m = alpha.len();
    let blen = if exhausted { m.saturating_sub(1) } else { m - 1 };
    let (theta, s) = ritz(&alpha, &beta[..blen]);
    let mut v = vec![Complex64::new(0.0, 0.0); n];
    for (k, sk) in s.iter().enumerate() {
        for (x, y) in v.iter_mut().zip(&q[k]) {
            *x += sk * y;
        }
    }
    let nv = norm(&v);
    for x in v.iter_mut() {
        *x /= nv;
    }
    (theta, v)
}

/// Dense below 64 dimensions, Lanczos above.
pub fn smallest_eigenpair(op: &dyn HermitianOp, start: &[Complex64]) -> (f64, Vec<Complex64>) {
    if op.dim() <= 64 {
        dense_smallest(op)
    } else {
        lanczos_smallest(op, start, 1e-10, 400)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag_op(d: &[f64]) -> DMatrix<Complex64> {
        let n = d.len();
        DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                Complex64::new(d[i], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    #[test]
    fn dense_diagonal() {
        let m = diag_op(&[3.0, -2.0, 7.0, 0.5]);
        let (lam, v) = dense_smallest(&m);
        assert!((lam + 2.0).abs() < 1e-12);
        assert!((v[1].norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn lanczos_matches_dense() {
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let n = 120;
        let mut m = DMatrix::<Complex64>::zeros(n, n);
        for i in 0..n {
            for j in 0..=i {
                let re: f64 = rng.gen::<f64>() - 0.5;
                let im: f64 = if i == j { 0.0 } else { rng.gen::<f64>() - 0.5 };
                m[(i, j)] = Complex64::new(re, im);
                m[(j, i)] = Complex64::new(re, -im);
            }
        }
        let (dl, _) = dense_smallest(&m);
        let start: Vec<Complex64> =
            (0..n).map(|_| Complex64::new(rng.gen::<f64>() - 0.5, 0.0)).collect();
        let (ll, lv) = lanczos_smallest(&m, &start, 1e-10, 200);
        assert!((dl - ll).abs() < 1e-8, "dense {dl} vs lanczos {ll}");
        // residual check
        let mut w = vec![Complex64::new(0.0, 0.0); n];
        m.apply(&lv, &mut w);
        let resid: f64 = w
            .iter()
            .zip(&lv)
            .map(|(a, b)| (a - ll * b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        assert!(resid < 1e-7, "residual {resid}");
    }

    #[test]
    fn lanczos_small_krylov_exhaustion() {
        // rank-deficient spectrum: Krylov space collapses early
        let m = diag_op(&[1.0, 1.0, 1.0, 5.0]);
        let start: Vec<Complex64> =
            vec![Complex64::new(0.5, 0.0); 4];
        let (lam, _) = lanczos_smallest(&m, &start, 1e-10, 50);
        assert!((lam - 1.0).abs() < 1e-9);
    }
}
