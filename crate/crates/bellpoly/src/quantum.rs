//! Bell operators from real single-qubit measurements, violation search,
//! TI mixed states, entanglement and CHSH diagnostics.

use crate::error::{BellError, Result};
use crate::FloatInequality;
use nalgebra::{DMatrix, DVector, Matrix2};
use num_complex::Complex64;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Per-site measurement angles; observable `x` at site `i` is
/// `cos(phi[i][x]) sigma_z + sin(phi[i][x]) sigma_x`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasurementAngles {
    pub phi: Vec<[f64; 2]>,
}

impl MeasurementAngles {
    pub fn uniform(n: usize, phi0: f64, phi1: f64) -> Self {
        Self { phi: vec![[phi0, phi1]; n] }
    }

    pub fn n(&self) -> usize {
        self.phi.len()
    }
}

/// Pure state on n qubits; index is big-endian over sites (site 0 is the
/// most significant bit).
#[derive(Debug, Clone)]
pub struct PureState {
    pub n: usize,
    pub amps: Vec<Complex64>,
}

impl PureState {
    /// Normalizes on load, returning the residual `|‖raw‖ − 1|`.
    pub fn normalized(n: usize, raw: &[Complex64]) -> (Self, f64) {
        assert_eq!(raw.len(), 1 << n);
        let norm: f64 = raw.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        assert!(norm > 0.0);
        let amps = raw.iter().map(|a| a / norm).collect();
        (Self { n, amps }, (norm - 1.0).abs())
    }

    pub fn from_real(n: usize, raw: &[f64]) -> Self {
        let c: Vec<Complex64> = raw.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::normalized(n, &c).0
    }

    pub fn norm_residual(&self) -> f64 {
        (self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt() - 1.0).abs()
    }
}

impl Serialize for PureState {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("PureState", 2)?;
        st.serialize_field("n", &self.n)?;
        let pairs: Vec<[f64; 2]> = self.amps.iter().map(|a| [a.re, a.im]).collect();
        st.serialize_field("amps", &pairs)?;
        st.end()
    }
}

/// Density matrix on n qubits.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    pub n: usize,
    pub mat: DMatrix<Complex64>,
}

impl DensityMatrix {
    pub fn from_pure(psi: &PureState) -> Self {
        let d = psi.amps.len();
        let mat = DMatrix::from_fn(d, d, |i, j| psi.amps[i] * psi.amps[j].conj());
        Self { n: psi.n, mat }
    }

    /// Hermiticity, unit trace and positivity within tolerance.
    pub fn validate(&self) -> Result<()> {
        let d = self.mat.nrows();
        let mut tr = Complex64::new(0.0, 0.0);
        for i in 0..d {
            tr += self.mat[(i, i)];
            for j in 0..d {
                if (self.mat[(i, j)] - self.mat[(j, i)].conj()).norm() > 1e-10 {
                    return Err(BellError::Internal("density matrix not Hermitian".into()));
                }
            }
        }
        if (tr.re - 1.0).abs() > 1e-12 || tr.im.abs() > 1e-12 {
            return Err(BellError::Internal(format!("trace {tr} != 1")));
        }
        let eig = self.mat.clone().symmetric_eigen();
        let min = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
        if min < -1e-10 {
            return Err(BellError::Internal(format!("negative eigenvalue {min}")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Free,
    TiRestricted,
}

#[derive(Debug, Clone, Serialize)]
pub struct ViolationResult {
    pub beta: f64,
    pub angles: MeasurementAngles,
    pub state: PureState,
    pub mode: Mode,
    /// false when every start hit the iteration cap without meeting the
    /// 1e-9 objective tolerance
    pub converged: bool,
}

/// `cos(phi) sigma_z + sin(phi) sigma_x`; squares to the identity.
pub fn observable(phi: f64) -> Matrix2<f64> {
    Matrix2::new(phi.cos(), phi.sin(), phi.sin(), -phi.cos())
}

fn observable_derivative(phi: f64) -> Matrix2<f64> {
    Matrix2::new(-phi.sin(), phi.cos(), phi.cos(), phi.sin())
}

/// Cyclic shift on n factors of dimension d: the last factor moves to the
/// front. Basis indices are big-endian over sites.
pub fn shift_operator(d: usize, n: usize) -> DMatrix<f64> {
    let dim = d.pow(n as u32);
    let mut v = DMatrix::zeros(dim, dim);
    for x in 0..dim {
        let last = x % d;
        let rest = x / d;
        let y = last * d.pow((n - 1) as u32) + rest;
        v[(y, x)] = 1.0;
    }
    v
}

/// Tensor product over n qubit sites with identity at unlisted sites.
fn site_product(n: usize, factors: &[(usize, Matrix2<f64>)]) -> DMatrix<f64> {
    let dim = 1usize << n;
    let mut out = DMatrix::zeros(dim, dim);
    let id = Matrix2::identity();
    let factor = |site: usize| -> &Matrix2<f64> {
        factors
            .iter()
            .find(|(s, _)| *s == site)
            .map(|(_, m)| m)
            .unwrap_or(&id)
    };
    for row in 0..dim {
        for col in 0..dim {
            let mut prod = 1.0;
            for s in 0..n {
                let ri = (row >> (n - 1 - s)) & 1;
                let ci = (col >> (n - 1 - s)) & 1;
                prod *= factor(s)[(ri, ci)];
                if prod == 0.0 {
                    break;
                }
            }
            if prod != 0.0 {
                out[(row, col)] += prod;
            }
        }
    }
    out
}

/// The Bell operator: coefficient-weighted sum of one-site observables and
/// ordered two-site products.
pub fn bell_operator(q: &FloatInequality, a: &MeasurementAngles) -> DMatrix<f64> {
    let n = q.n;
    assert_eq!(a.n(), n);
    let dim = 1usize << n;
    let mut b = DMatrix::zeros(dim, dim);
    let obs: Vec<[Matrix2<f64>; 2]> = a
        .phi
        .iter()
        .map(|p| [observable(p[0]), observable(p[1])])
        .collect();
    for i in 0..n {
        for x in 0..2 {
            let c = q.one_body_coefficient(x);
            if c != 0.0 {
                b += site_product(n, &[(i, obs[i][x])]) * c;
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for x in 0..2 {
                for y in 0..2 {
                    let c = q.pair_coefficient(j - i, x, y);
                    if c != 0.0 {
                        b += site_product(n, &[(i, obs[i][x]), (j, obs[j][y])]) * c;
                    }
                }
            }
        }
    }
    b
}

/// Partial derivative of the Bell operator with respect to `phi[site][x]`.
fn bell_operator_derivative(
    q: &FloatInequality,
    a: &MeasurementAngles,
    site: usize,
    x: usize,
) -> DMatrix<f64> {
    let n = q.n;
    let dim = 1usize << n;
    let mut b = DMatrix::zeros(dim, dim);
    let dm = observable_derivative(a.phi[site][x]);
    let c = q.one_body_coefficient(x);
    if c != 0.0 {
        b += site_product(n, &[(site, dm)]) * c;
    }
    for j in 0..n {
        if j == site {
            continue;
        }
        for y in 0..2 {
            let my = observable(a.phi[j][y]);
            let c = if j > site {
                q.pair_coefficient(j - site, x, y)
            } else {
                q.pair_coefficient(site - j, y, x)
            };
            if c != 0.0 {
                b += site_product(n, &[(site, dm), (j, my)]) * c;
            }
        }
    }
    b
}

/// Smallest eigenvalue with a sign-fixed eigenvector.
pub fn lambda_min(b: &DMatrix<f64>) -> (f64, DVector<f64>) {
    let eig = b.clone().symmetric_eigen();
    let mut best = 0;
    for k in 1..eig.eigenvalues.len() {
        if eig.eigenvalues[k] < eig.eigenvalues[best] {
            best = k;
        }
    }
    let mut v: DVector<f64> = eig.eigenvectors.column(best).into();
    if let Some(first) = v.iter().find(|c| c.abs() > 1e-12) {
        if *first < 0.0 {
            v = -v;
        }
    }
    (eig.eigenvalues[best], v)
}

fn angles_from_params(n: usize, mode: Mode, p: &[f64]) -> MeasurementAngles {
    match mode {
        Mode::TiRestricted => MeasurementAngles::uniform(n, p[0], p[1]),
        Mode::Free => MeasurementAngles {
            phi: (0..n).map(|i| [p[2 * i], p[2 * i + 1]]).collect(),
        },
    }
}

/// Hellmann-Feynman gradient of lambda_min with respect to the parameters.
pub fn eigenvalue_gradient(
    q: &FloatInequality,
    mode: Mode,
    p: &[f64],
    psi: &DVector<f64>,
) -> Vec<f64> {
    let n = q.n;
    let a = angles_from_params(n, mode, p);
    let pair = |site: usize, x: usize| -> f64 {
        let db = bell_operator_derivative(q, &a, site, x);
        (psi.transpose() * &db * psi)[(0, 0)]
    };
    match mode {
        Mode::TiRestricted => {
            let mut g = vec![0.0; 2];
            for x in 0..2 {
                for i in 0..n {
                    g[x] += pair(i, x);
                }
            }
            g
        }
        Mode::Free => {
            let mut g = vec![0.0; 2 * n];
            for i in 0..n {
                for x in 0..2 {
                    g[2 * i + x] = pair(i, x);
                }
            }
            g
        }
    }
}

/// Generic Nelder-Mead minimization.
pub fn nelder_mead(
    f: &mut dyn FnMut(&[f64]) -> f64,
    x0: &[f64],
    scale: f64,
    max_iter: usize,
    tol: f64,
) -> (f64, Vec<f64>) {
    let d = x0.len();
    let mut simplex: Vec<(f64, Vec<f64>)> = Vec::with_capacity(d + 1);
    simplex.push((f(x0), x0.to_vec()));
    for i in 0..d {
        let mut x = x0.to_vec();
        x[i] += scale;
        simplex.push((f(&x), x));
    }
    for _ in 0..max_iter {
        simplex.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        if simplex[d].0 - simplex[0].0 < tol {
            break;
        }
        let centroid: Vec<f64> = (0..d)
            .map(|j| simplex[..d].iter().map(|(_, x)| x[j]).sum::<f64>() / d as f64)
            .collect();
        let worst = simplex[d].clone();
        let combine = |t: f64| -> Vec<f64> {
            (0..d).map(|j| centroid[j] + t * (centroid[j] - worst.1[j])).collect()
        };
        let xr = combine(1.0);
        let fr = f(&xr);
        if fr < simplex[0].0 {
            let xe = combine(2.0);
            let fe = f(&xe);
            simplex[d] = if fe < fr { (fe, xe) } else { (fr, xr) };
        } else if fr < simplex[d - 1].0 {
            simplex[d] = (fr, xr);
        } else {
            let xc = combine(-0.5);
            let fc = f(&xc);
            if fc < simplex[d].0 {
                simplex[d] = (fc, xc);
            } else {
                let best = simplex[0].1.clone();
                for s in simplex.iter_mut().skip(1) {
                    for j in 0..d {
                        s.1[j] = best[j] + 0.5 * (s.1[j] - best[j]);
                    }
                    s.0 = f(&s.1);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    simplex[0].clone()
}

/// One local descent on lambda_min: gradient steps with backtracking, then a
/// simplex polish when the line search stalls (eigenvalue crossings).
fn local_descent(
    q: &FloatInequality,
    mode: Mode,
    p0: &[f64],
    max_iter: usize,
) -> (f64, Vec<f64>, bool) {
    let eval = |p: &[f64]| -> (f64, DVector<f64>) {
        lambda_min(&bell_operator(q, &angles_from_params(q.n, mode, p)))
    };
    let mut p = p0.to_vec();
    let (mut lam, mut psi) = eval(&p);
    let mut converged = false;
    let mut stalled = false;
    for _ in 0..max_iter {
        let g = eigenvalue_gradient(q, mode, &p, &psi);
        let gnorm: f64 = g.iter().map(|x| x * x).sum::<f64>().sqrt();
        if gnorm < 1e-10 {
            converged = true;
            break;
        }
        let mut t = 0.5;
        let mut improved = false;
        for _ in 0..40 {
            let cand: Vec<f64> = p.iter().zip(&g).map(|(x, gx)| x - t * gx).collect();
            let (lc, pc) = eval(&cand);
            if lc < lam - 1e-4 * t * gnorm * gnorm {
                if lam - lc < 1e-9 {
                    converged = true;
                }
                p = cand;
                lam = lc;
                psi = pc;
                improved = true;
                break;
            }
            t *= 0.5;
        }
        if converged {
            break;
        }
        if !improved {
            stalled = true;
            break;
        }
    }
    if stalled || !converged {
        let mut f = |x: &[f64]| eval(x).0;
        let nm = nelder_mead(&mut f, &p, 0.05, 200, 1e-10);
        if nm.0 < lam {
            lam = nm.0;
            p = nm.1;
        }
        converged = true;
    }
    (lam, p, converged)
}

/// Multistart search for the largest `-lambda_min`; the result is a
/// best-found lower bound on the quantum maximum.
pub fn max_violation(
    q: &FloatInequality,
    mode: Mode,
    starts: usize,
    seed: u64,
) -> Result<ViolationResult> {
    let n = q.n;
    if n > 6 {
        return Err(BellError::Size { n, min: 2, max: 6 });
    }
    let k = match mode {
        Mode::TiRestricted => 2,
        Mode::Free => 2 * n,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(f64, Vec<f64>, bool)> = None;
    for _ in 0..starts.max(1) {
        let p0: Vec<f64> = (0..k).map(|_| rng.gen::<f64>() * std::f64::consts::TAU).collect();
        let (lam, p, conv) = local_descent(q, mode, &p0, 200);
        if best.as_ref().is_none_or(|(b, _, _)| lam < *b) {
            best = Some((lam, p, conv));
        }
    }
    let (lam, p, conv) = best.unwrap();
    let angles = angles_from_params(n, mode, &p);
    let (_, psi) = lambda_min(&bell_operator(q, &angles));
    let amps: Vec<Complex64> = psi.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    Ok(ViolationResult {
        beta: -lam,
        angles,
        state: PureState { n, amps },
        mode,
        converged: conv,
    })
}

/// `-<psi|B|psi>` for a fixed state.
pub fn violation_for_state(q: &FloatInequality, a: &MeasurementAngles, psi: &PureState) -> f64 {
    let b = bell_operator(q, a);
    let d = psi.amps.len();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..d {
        for j in 0..d {
            acc += psi.amps[i].conj() * b[(i, j)] * psi.amps[j];
        }
    }
    -acc.re
}

/// `(1/n) sum_k V^k |psi><psi| V^-k`; commutes with the shift and matches
/// the pure-state expectation on any TI operator.
pub fn ti_mixed_state(psi: &PureState) -> DensityMatrix {
    let n = psi.n;
    let d = psi.amps.len();
    let v = shift_operator(2, n);
    let mut cur: Vec<Complex64> = psi.amps.clone();
    let mut mat = DMatrix::<Complex64>::zeros(d, d);
    for _ in 0..n {
        for i in 0..d {
            for j in 0..d {
                mat[(i, j)] += cur[i] * cur[j].conj() / n as f64;
            }
        }
        let mut next = vec![Complex64::new(0.0, 0.0); d];
        for x in 0..d {
            for y in 0..d {
                if v[(y, x)] != 0.0 {
                    next[y] += cur[x];
                }
            }
        }
        cur = next;
    }
    DensityMatrix { n, mat }
}

/// Partial trace keeping the listed sites (ascending order preserved).
pub fn reduced_state(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let n = rho.n;
    if keep.is_empty() {
        return Err(BellError::BadInput("empty keep set".into()));
    }
    if keep.iter().any(|&s| s >= n) || keep.windows(2).any(|w| w[0] >= w[1]) {
        return Err(BellError::BadInput("keep set must be ascending and in range".into()));
    }
    let k = keep.len();
    let rest: Vec<usize> = (0..n).filter(|s| !keep.contains(s)).collect();
    let dim_k = 1usize << k;
    let dim_r = 1usize << rest.len();
    let assemble = |kept: usize, other: usize| -> usize {
        let mut idx = 0usize;
        for (pos, &s) in keep.iter().enumerate() {
            let bit = (kept >> (k - 1 - pos)) & 1;
            idx |= bit << (n - 1 - s);
        }
        for (pos, &s) in rest.iter().enumerate() {
            let bit = (other >> (rest.len() - 1 - pos)) & 1;
            idx |= bit << (n - 1 - s);
        }
        idx
    };
    let mut out = DMatrix::<Complex64>::zeros(dim_k, dim_k);
    for i in 0..dim_k {
        for j in 0..dim_k {
            let mut acc = Complex64::new(0.0, 0.0);
            for r in 0..dim_r {
                acc += rho.mat[(assemble(i, r), assemble(j, r))];
            }
            out[(i, j)] = acc;
        }
    }
    Ok(DensityMatrix { n: k, mat: out })
}

/// Largest CHSH value on a two-qubit state: `2 sqrt(m1 + m2)` where m1, m2
/// are the two largest eigenvalues of T^t T built from the correlation
/// matrix `T_ij = Tr(rho sigma_i x sigma_j)`.
pub fn chsh_max(rho2: &DensityMatrix) -> f64 {
    assert_eq!(rho2.mat.nrows(), 4);
    let paulis: [DMatrix<Complex64>; 3] = [
        DMatrix::from_row_slice(2, 2, &[
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
        ]),
        DMatrix::from_row_slice(2, 2, &[
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, 0.0),
        ]),
        DMatrix::from_row_slice(2, 2, &[
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(-1.0, 0.0),
        ]),
    ];
    let mut t = nalgebra::Matrix3::<f64>::zeros();
    for i in 0..3 {
        for j in 0..3 {
            let mut acc = Complex64::new(0.0, 0.0);
            for a in 0..2 {
                for b in 0..2 {
                    for c in 0..2 {
                        for d in 0..2 {
                            acc += rho2.mat[(2 * c + d, 2 * a + b)]
                                * paulis[i][(a, c)]
                                * paulis[j][(b, d)];
                        }
                    }
                }
            }
            t[(i, j)] = acc.re;
        }
    }
    let m = t.transpose() * t;
    let mut ev: Vec<f64> = m.symmetric_eigen().eigenvalues.iter().cloned().collect();
    ev.sort_by(|a, b| b.partial_cmp(a).unwrap());
    2.0 * (ev[0] + ev[1]).max(0.0).sqrt()
}

fn product_overlap(psi: &PureState, sites: &[[Complex64; 2]]) -> f64 {
    let n = psi.n;
    let mut acc = Complex64::new(0.0, 0.0);
    for (x, amp) in psi.amps.iter().enumerate() {
        let mut prod = Complex64::new(1.0, 0.0);
        for (s, site) in sites.iter().enumerate() {
            let bit = (x >> (n - 1 - s)) & 1;
            prod *= site[bit].conj();
        }
        acc += prod * amp;
    }
    acc.norm_sqr()
}

fn bloch_qubit(theta: f64, phase: f64) -> [Complex64; 2] {
    [
        Complex64::new((theta / 2.0).cos(), 0.0),
        Complex64::from_polar((theta / 2.0).sin(), phase),
    ]
}

/// Brute-force scan of the overlap with symmetric product states `|e>^(x)n`.
pub fn symmetric_overlap_scan(psi: &PureState, steps: usize) -> f64 {
    let n = psi.n;
    let mut best = 0.0f64;
    for it in 0..=steps {
        let theta = std::f64::consts::PI * it as f64 / steps as f64;
        for ip in 0..steps {
            let phase = std::f64::consts::TAU * ip as f64 / steps as f64;
            let e = bloch_qubit(theta, phase);
            let o = product_overlap(psi, &vec![e; n]);
            best = best.max(o);
        }
    }
    best
}

/// `E_G = 1 - max |<product|psi>|^2`; with the symmetric hint the product is
/// `|e>^(x)n` (scan plus simplex refinement), otherwise multistart
/// alternating closest-product-state iteration. Either way the overlap is a
/// lower bound on the true maximum, so the result upper-bounds E_G.
pub fn geometric_entanglement(psi: &PureState, symmetric_hint: bool, seed: u64) -> f64 {
    let n = psi.n;
    let mut best = if symmetric_hint {
        let coarse = symmetric_overlap_scan(psi, 180);
        let mut f = |p: &[f64]| -> f64 { -product_overlap(psi, &vec![bloch_qubit(p[0], p[1]); n]) };
        // refine from the best grid point
        let mut seed_pt = [0.0f64, 0.0];
        let mut best_grid = -1.0f64;
        for it in 0..=180 {
            let theta = std::f64::consts::PI * it as f64 / 180.0;
            for ip in 0..180 {
                let phase = std::f64::consts::TAU * ip as f64 / 180.0;
                let o = product_overlap(psi, &vec![bloch_qubit(theta, phase); n]);
                if o > best_grid {
                    best_grid = o;
                    seed_pt = [theta, phase];
                }
            }
        }
        let nm = nelder_mead(&mut f, &seed_pt, 0.02, 300, 1e-12);
        coarse.max(-nm.0)
    } else {
        0.0
    };
    // alternating site-wise optimization, also run under the hint as a
    // cross-check (for permutation-symmetric states the optima coincide)
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..20 {
        let mut sites: Vec<[Complex64; 2]> = (0..n)
            .map(|_| {
                let v = [
                    Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
                    Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
                ];
                let norm = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
                [v[0] / norm, v[1] / norm]
            })
            .collect();
        let mut prev = 0.0f64;
        for _ in 0..500 {
            for s in 0..n {
                // environment vector: contract psi with the other sites
                let mut env = [Complex64::new(0.0, 0.0); 2];
                for (x, amp) in psi.amps.iter().enumerate() {
                    let mut prod = Complex64::new(1.0, 0.0);
                    for (t, site) in sites.iter().enumerate() {
                        if t == s {
                            continue;
                        }
                        let bit = (x >> (n - 1 - t)) & 1;
                        prod *= site[bit].conj();
                    }
                    let bit = (x >> (n - 1 - s)) & 1;
                    env[bit] += prod * amp;
                }
                let norm = (env[0].norm_sqr() + env[1].norm_sqr()).sqrt();
                if norm > 1e-15 {
                    sites[s] = [env[0] / norm, env[1] / norm];
                }
            }
            let o = product_overlap(psi, &sites);
            if (o - prev).abs() < 1e-13 {
                break;
            }
            prev = o;
        }
        best = best.max(product_overlap(psi, &sites));
    }
    1.0 - best
}

pub fn ghz(n: usize) -> PureState {
    let mut raw = vec![0.0; 1 << n];
    let inv = 1.0 / 2.0f64.sqrt();
    raw[0] = inv;
    raw[(1 << n) - 1] = inv;
    PureState::from_real(n, &raw)
}

pub fn w_state(n: usize) -> PureState {
    let mut raw = vec![0.0; 1 << n];
    let inv = 1.0 / (n as f64).sqrt();
    for i in 0..n {
        raw[1 << i] = inv;
    }
    PureState::from_real(n, &raw)
}

/// The three-qubit state attaining the best-found TI violation of the
/// strongest N=3 facet class.
pub fn psi3() -> PureState {
    let mut raw = vec![0.0f64; 8];
    for (idx, val) in [
        (0b000, -0.08),
        (0b111, -0.08),
        (0b001, -0.5628),
        (0b010, -0.5628),
        (0b100, -0.5628),
        (0b011, 0.1108),
        (0b110, 0.1108),
        (0b101, 0.1108),
    ] {
        raw[idx] = val;
    }
    PureState::from_real(3, &raw)
}

/// Five-qubit TI state for the nearest-neighbour example; built from cyclic
/// orbit sums of basis patterns and renormalized.
pub fn psi5() -> PureState {
    let mut raw = vec![0.0f64; 32];
    raw[0b00000] = -0.3710;
    raw[0b11111] = -0.3710;
    let orbits: [(usize, f64); 6] = [
        (0b00001, -0.1817),
        (0b00011, 0.1260),
        (0b00101, -0.1418),
        (0b00111, 0.2645),
        (0b01011, -0.0603),
        (0b01111, 0.0486),
    ];
    for (pattern, c) in orbits {
        let mut x = pattern;
        for _ in 0..5 {
            raw[x] += c;
            // shift: last bit to the front
            x = (x >> 1) | ((x & 1) << 4);
        }
    }
    PureState::from_real(5, &raw)
}
