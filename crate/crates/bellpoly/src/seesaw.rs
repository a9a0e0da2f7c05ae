//! TI embedding into local dimension d*n and the see-saw search for TI
//! states with site-identical observables in a fixed local dimension.

use crate::error::{BellError, Result};
use crate::linalg::{smallest_eigenpair, HermitianOp};
use crate::quantum::{MeasurementAngles, PureState};
use crate::FloatInequality;
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Hard cap on the total Hilbert-space dimension D^n handled per run.
pub const DEFAULT_DIM_CAP: usize = 20_000;

/// Site-identical dichotomic observables on C^D.
#[derive(Debug, Clone)]
pub struct SymmetricObservableSet {
    pub d: usize,
    pub ops: Vec<DMatrix<Complex64>>,
}

impl SymmetricObservableSet {
    /// Hermiticity and operator norm within tolerance.
    pub fn validate(&self) -> Result<()> {
        for m in &self.ops {
            if m.nrows() != self.d || m.ncols() != self.d {
                return Err(BellError::Dimension("observable shape".into()));
            }
            for i in 0..self.d {
                for j in 0..self.d {
                    if (m[(i, j)] - m[(j, i)].conj()).norm() > 1e-12 {
                        return Err(BellError::Internal("observable not Hermitian".into()));
                    }
                }
            }
            let ev = m.clone().symmetric_eigen().eigenvalues;
            if ev.iter().any(|l| l.abs() > 1.0 + 1e-10) {
                return Err(BellError::Internal("observable norm above one".into()));
            }
        }
        Ok(())
    }
}

/// Equal-weight mixture of cyclic shifts of pure components; represents the
/// TI state without materializing a D^n x D^n matrix.
#[derive(Debug, Clone)]
pub struct TIStateComponents {
    pub n: usize,
    pub d: usize,
    pub components: Vec<Vec<Complex64>>,
}

impl TIStateComponents {
    pub fn from_pure(n: usize, d: usize, psi: &[Complex64]) -> Self {
        let mut components = Vec::with_capacity(n);
        let mut cur = psi.to_vec();
        for _ in 0..n {
            components.push(cur.clone());
            cur = shift_vector(n, d, &cur);
        }
        Self { n, d, components }
    }

    pub fn density_matrix(&self) -> Result<DMatrix<Complex64>> {
        let dim = self.components[0].len();
        if dim > 4096 {
            return Err(BellError::ResourceCap(format!("dimension {dim} too large to materialize")));
        }
        let mut mat = DMatrix::zeros(dim, dim);
        let w = 1.0 / self.components.len() as f64;
        for c in &self.components {
            for i in 0..dim {
                for j in 0..dim {
                    mat[(i, j)] += c[i] * c[j].conj() * w;
                }
            }
        }
        Ok(mat)
    }
}

/// Cyclic site shift on a (C^d)^(x)n vector: the last factor moves first.
pub fn shift_vector(n: usize, d: usize, x: &[Complex64]) -> Vec<Complex64> {
    let dim = x.len();
    let outer = d.pow((n - 1) as u32);
    let mut y = vec![Complex64::new(0.0, 0.0); dim];
    for (idx, v) in x.iter().enumerate() {
        let last = idx % d;
        let rest = idx / d;
        y[last * outer + rest] = *v;
    }
    y
}

/// Applies a single-site operator at `site` (big-endian site order).
pub fn apply_site_op(
    n: usize,
    d: usize,
    site: usize,
    op: &DMatrix<Complex64>,
    x: &[Complex64],
) -> Vec<Complex64> {
    let dim = x.len();
    let stride = d.pow((n - 1 - site) as u32);
    let mut y = vec![Complex64::new(0.0, 0.0); dim];
    let block = stride * d;
    for base in (0..dim).step_by(block) {
        for off in 0..stride {
            for a in 0..d {
                let mut acc = Complex64::new(0.0, 0.0);
                for b in 0..d {
                    let c = op[(a, b)];
                    if c != Complex64::new(0.0, 0.0) {
                        acc += c * x[base + b * stride + off];
                    }
                }
                y[base + a * stride + off] = acc;
            }
        }
    }
    y
}

/// Matrix-free Bell operator with per-site observables of local dimension d.
pub struct BellApply<'a> {
    pub q: &'a FloatInequality,
    pub d: usize,
    /// one entry per site: the two observables
    pub obs: Vec<[DMatrix<Complex64>; 2]>,
}

impl<'a> BellApply<'a> {
    pub fn site_identical(q: &'a FloatInequality, set: &SymmetricObservableSet) -> Self {
        let pair = [set.ops[0].clone(), set.ops[1].clone()];
        Self {
            q,
            d: set.d,
            obs: vec![pair; q.n],
        }
    }

    pub fn expectation(&self, psi: &[Complex64]) -> f64 {
        let mut out = vec![Complex64::new(0.0, 0.0); psi.len()];
        self.apply(psi, &mut out);
        psi.iter()
            .zip(&out)
            .map(|(a, b)| (a.conj() * b).re)
            .sum()
    }
}

impl HermitianOp for BellApply<'_> {
    fn dim(&self) -> usize {
        self.d.pow(self.q.n as u32)
    }

    fn apply(&self, x: &[Complex64], y: &mut [Complex64]) {
        let n = self.q.n;
        let d = self.d;
        for v in y.iter_mut() {
            *v = Complex64::new(0.0, 0.0);
        }
        let mut add = |vec: Vec<Complex64>, c: f64| {
            for (o, v) in y.iter_mut().zip(vec) {
                *o += v * c;
            }
        };
        for i in 0..n {
            for ox in 0..2 {
                let c = self.q.one_body_coefficient(ox);
                if c != 0.0 {
                    add(apply_site_op(n, d, i, &self.obs[i][ox], x), c);
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for ox in 0..2 {
                    for oy in 0..2 {
                        let c = self.q.pair_coefficient(j - i, ox, oy);
                        if c != 0.0 {
                            let t = apply_site_op(n, d, j, &self.obs[j][oy], x);
                            add(apply_site_op(n, d, i, &self.obs[i][ox], &t), c);
                        }
                    }
                }
            }
        }
    }
}

/// Qubit observables of the angle parametrization, as complex matrices.
pub fn qubit_observables(a: &MeasurementAngles) -> Vec<[DMatrix<Complex64>; 2]> {
    a.phi
        .iter()
        .map(|p| {
            [0, 1].map(|x| {
                let m = crate::quantum::observable(p[x]);
                DMatrix::from_fn(2, 2, |i, j| Complex64::new(m[(i, j)], 0.0))
            })
        })
        .collect()
}

/// The d*n-dimensional TI realization of an arbitrary optimal strategy:
/// pure components pair each shifted state with a cyclically shifted
/// position register, and the shared observables act blockwise by position.
#[derive(Debug, Clone)]
pub struct Embedded {
    pub n: usize,
    /// original local dimension
    pub d: usize,
    /// embedded local dimension d*n
    pub d_local: usize,
    pub state: TIStateComponents,
    pub observables: SymmetricObservableSet,
}

impl Embedded {
    pub fn expectation(&self, q: &FloatInequality) -> f64 {
        let op = BellApply::site_identical(q, &self.observables);
        let w = 1.0 / self.n as f64;
        self.state.components.iter().map(|c| op.expectation(c) * w).sum()
    }
}

pub fn embed_dn(
    psi: &PureState,
    obs_per_site: &[[DMatrix<Complex64>; 2]],
) -> Result<Embedded> {
    let n = psi.n;
    let d = obs_per_site
        .first()
        .map(|o| o[0].nrows())
        .ok_or_else(|| BellError::BadInput("no observables".into()))?;
    if obs_per_site.len() != n || psi.amps.len() != d.pow(n as u32) {
        return Err(BellError::Dimension("state and observables disagree".into()));
    }
    let dl = d * n;
    let dim = dl.checked_pow(n as u32).filter(|&v| v <= 2_000_000).ok_or_else(|| {
        BellError::ResourceCap(format!("embedded dimension ({dl})^{n} over cap"))
    })?;

    // block observables: entry (a*n + p, b*n + p) = site-(p+1) observable
    let mut ops = Vec::with_capacity(2);
    for x in 0..2 {
        let mut m = DMatrix::<Complex64>::zeros(dl, dl);
        for p in 0..n {
            for a in 0..d {
                for b in 0..d {
                    m[(a * n + p, b * n + p)] = obs_per_site[p][x][(a, b)];
                }
            }
        }
        ops.push(m);
    }

    // component i: shifted state tagged with position (s - i) mod n per site
    let mut components = Vec::with_capacity(n);
    let mut cur: Vec<Complex64> = psi.amps.clone();
    for i in 0..n {
        let mut full = vec![Complex64::new(0.0, 0.0); dim];
        for (idx, amp) in cur.iter().enumerate() {
            if *amp == Complex64::new(0.0, 0.0) {
                continue;
            }
            let mut out_idx = 0usize;
            let mut rem = idx;
            // digits of idx are little-endian here; walk sites from the last
            for s in (0..n).rev() {
                let a = rem % d;
                rem /= d;
                let p = (s + n - i) % n;
                let local = a * n + p;
                out_idx += local * dl.pow((n - 1 - s) as u32);
            }
            full[out_idx] = *amp;
        }
        components.push(full);
        cur = shift_vector(n, d, &cur);
    }

    Ok(Embedded {
        n,
        d,
        d_local: dl,
        state: TIStateComponents { n, d: dl, components },
        observables: SymmetricObservableSet { d: dl, ops },
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SeesawReport {
    pub beta: f64,
    pub d: usize,
    pub iterations: usize,
    /// objective after each state step
    pub trace: Vec<f64>,
    pub converged: bool,
    /// whether the trace never decreased (monitored, not assumed)
    pub monotone: bool,
    #[serde(skip)]
    pub state: TIStateComponents,
    #[serde(skip)]
    pub observables: SymmetricObservableSet,
}

fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    // Box-Muller
    let u1: f64 = rng.gen::<f64>().max(1e-300);
    let u2: f64 = rng.gen::<f64>();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the phases
/// of the diagonal of R absorbed into Q.
pub fn haar_unitary(d: usize, rng: &mut ChaCha8Rng) -> DMatrix<Complex64> {
    let g = DMatrix::from_fn(d, d, |_, _| Complex64::new(gaussian(rng), gaussian(rng)));
    let qr = g.qr();
    let q = qr.q();
    let r = qr.r();
    let mut out = q;
    for j in 0..d {
        let rj = r[(j, j)];
        let phase = if rj.norm() > 0.0 { rj / rj.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..d {
            out[(i, j)] *= phase;
        }
    }
    out
}

fn random_observable(d: usize, rng: &mut ChaCha8Rng) -> DMatrix<Complex64> {
    if d == 1 {
        let s = if rng.gen::<bool>() { 1.0 } else { -1.0 };
        return DMatrix::from_element(1, 1, Complex64::new(s, 0.0));
    }
    // random +-1 spectrum with both signs present, conjugated by a Haar
    // unitary
    let diag: Vec<f64> = loop {
        let d_try: Vec<f64> = (0..d).map(|_| if rng.gen::<bool>() { 1.0 } else { -1.0 }).collect();
        if d_try.iter().any(|&x| x > 0.0) && d_try.iter().any(|&x| x < 0.0) {
            break d_try;
        }
    };
    let u = haar_unitary(d, rng);
    let mut lam = DMatrix::<Complex64>::zeros(d, d);
    for i in 0..d {
        lam[(i, i)] = Complex64::new(diag[i], 0.0);
    }
    let m = &u * lam * u.adjoint();
    // clean Hermiticity
    let mut h = m.clone();
    for i in 0..d {
        for j in 0..d {
            h[(i, j)] = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
        }
    }
    h
}

/// The two partial-trace operators pairing with the first party's
/// observables: `F_x = n a_x rho_1 + sum_s sum_y (n-s) c[s,(x,y)] G_{s,y}`
/// where `G_{s,y}` traces `M_y` at site 1+s against the TI state. Satisfies
/// `sum_x Tr(M_x F_x) = Tr(B rho)` exactly for TI states.
fn trace_operators(
    q: &FloatInequality,
    state: &TIStateComponents,
    obs: &SymmetricObservableSet,
) -> Vec<DMatrix<Complex64>> {
    let n = state.n;
    let d = state.d;
    let rows = d;
    let cols = state.components[0].len() / d;
    let w = 1.0 / n as f64;
    // site-0 reduced density from the components
    let as_mat = |v: &[Complex64]| DMatrix::from_fn(rows, cols, |i, j| v[i * cols + j]);
    let mut rho1 = DMatrix::<Complex64>::zeros(d, d);
    for c in &state.components {
        let m = as_mat(c);
        rho1 += &m * m.adjoint() * Complex64::new(w, 0.0);
    }
    let g = |s: usize, y: usize| -> DMatrix<Complex64> {
        let mut acc = DMatrix::<Complex64>::zeros(d, d);
        for c in &state.components {
            let t = apply_site_op(n, d, s, &obs.ops[y], c);
            acc += as_mat(&t) * as_mat(c).adjoint() * Complex64::new(w, 0.0);
        }
        acc
    };
    (0..2)
        .map(|x| {
            let mut f = rho1.clone() * Complex64::new(n as f64 * q.one_body_coefficient(x), 0.0);
            for s in 1..n {
                for y in 0..2 {
                    let c = q.pair_coefficient(s, x, y);
                    if c != 0.0 {
                        f += g(s, y) * Complex64::new((n - s) as f64 * c, 0.0);
                    }
                }
            }
            f
        })
        .collect()
}

/// Unitary close to the identity, for kicking a converged run out of its
/// basin.
fn near_identity_unitary(d: usize, eps: f64, rng: &mut ChaCha8Rng) -> DMatrix<Complex64> {
    let g = DMatrix::from_fn(d, d, |i, j| {
        let delta = if i == j { 1.0 } else { 0.0 };
        Complex64::new(delta + eps * gaussian(rng), eps * gaussian(rng))
    });
    let qr = g.qr();
    let q = qr.q();
    let r = qr.r();
    let mut out = q;
    for j in 0..d {
        let rj = r[(j, j)];
        let phase = if rj.norm() > 0.0 { rj / rj.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..d {
            out[(i, j)] *= phase;
        }
    }
    out
}

fn sign_observable(f: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let d = f.nrows();
    let eig = f.clone().symmetric_eigen();
    let mut m = DMatrix::<Complex64>::zeros(d, d);
    for k in 0..d {
        // minimizes Tr(M F); zero eigenvalues get observable eigenvalue -1
        let s = if eig.eigenvalues[k] < -1e-12 { 1.0 } else { -1.0 };
        let v = eig.eigenvectors.column(k);
        for i in 0..d {
            for j in 0..d {
                m[(i, j)] += v[i] * v[j].conj() * s;
            }
        }
    }
    m
}

/// Site-0 reduced density matrix of a TI state given by components.
fn reduced_density(state: &TIStateComponents) -> DMatrix<Complex64> {
    let d = state.d;
    let cols = state.components[0].len() / d;
    let w = 1.0 / state.n as f64;
    let mut rho1 = DMatrix::<Complex64>::zeros(d, d);
    for c in &state.components {
        let m = DMatrix::from_fn(d, cols, |i, j| c[i * cols + j]);
        rho1 += &m * m.adjoint() * Complex64::new(w, 0.0);
    }
    rho1
}

/// Compresses site-identical observables onto the `d` most occupied local
/// directions of the accompanying TI state and snaps the spectrum back to
/// +-1. Used to warm-start see-saw runs below the current local dimension.
pub fn truncation_seed(
    state: &TIStateComponents,
    obs: &SymmetricObservableSet,
    d: usize,
) -> Result<SymmetricObservableSet> {
    let dl = state.d;
    if d == 0 || d > dl {
        return Err(BellError::BadInput(format!(
            "truncation dimension {d} outside 1..={dl}"
        )));
    }
    let w = truncation_isometry(state, d, 0.0, None);
    Ok(project_observables(obs, &w, 0))
}

/// Projects a nearly dichotomic operator back to a +-1 spectrum. With
/// `flip_weakest` the direction with the smallest |eigenvalue| gets the
/// opposite sign, changing the signature; the sign steps of the see-saw
/// preserve signatures, so this is the only way to explore neighbours.
fn snap_spectrum(proj: &DMatrix<Complex64>, flip_weakest: bool) -> DMatrix<Complex64> {
    let d = proj.nrows();
    let e = proj.clone().symmetric_eigen();
    let weakest = (0..d)
        .min_by(|&a, &b| {
            e.eigenvalues[a].abs().partial_cmp(&e.eigenvalues[b].abs()).unwrap()
        })
        .unwrap();
    let mut out = DMatrix::<Complex64>::zeros(d, d);
    for k in 0..d {
        let mut s = if e.eigenvalues[k] >= 0.0 { 1.0 } else { -1.0 };
        if flip_weakest && k == weakest {
            s = -s;
        }
        let v = e.eigenvectors.column(k);
        for i in 0..d {
            for j in 0..d {
                out[(i, j)] += v[i] * v[j].conj() * s;
            }
        }
    }
    out
}

/// Orthonormal columns spanning the top-d occupation subspace of the state,
/// optionally blended with Gaussian noise (then re-orthonormalized) so that
/// truncations other than the strict top-d one are sampled.
fn truncation_isometry(
    state: &TIStateComponents,
    d: usize,
    sigma: f64,
    rng: Option<&mut ChaCha8Rng>,
) -> DMatrix<Complex64> {
    let dl = state.d;
    let rho1 = reduced_density(state);
    let eig = rho1.symmetric_eigen();
    let mut order: Vec<usize> = (0..dl).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].partial_cmp(&eig.eigenvalues[a]).unwrap());
    let w0 = DMatrix::from_fn(dl, d, |i, j| eig.eigenvectors[(i, order[j])]);
    match rng {
        Some(rng) if sigma > 0.0 => {
            let g = DMatrix::from_fn(dl, d, |_, _| {
                Complex64::new(gaussian(rng), gaussian(rng))
            });
            (w0 + g * Complex64::new(sigma, 0.0)).qr().q()
        }
        _ => w0,
    }
}

fn project_observables(
    obs: &SymmetricObservableSet,
    w: &DMatrix<Complex64>,
    flips: u8,
) -> SymmetricObservableSet {
    SymmetricObservableSet {
        d: w.ncols(),
        ops: obs
            .ops
            .iter()
            .enumerate()
            .map(|(x, m)| snap_spectrum(&(w.adjoint() * m * w), flips & (1 << x) != 0))
            .collect(),
    }
}

/// The plain truncation seed plus the three signature neighbours obtained by
/// flipping the weakest spectral direction of either observable.
pub fn truncation_seed_variants(
    state: &TIStateComponents,
    obs: &SymmetricObservableSet,
    d: usize,
) -> Result<Vec<SymmetricObservableSet>> {
    let dl = state.d;
    if d == 0 || d > dl {
        return Err(BellError::BadInput(format!(
            "truncation dimension {d} outside 1..={dl}"
        )));
    }
    let w = truncation_isometry(state, d, 0.0, None);
    Ok((0..4u8).map(|flips| project_observables(obs, &w, flips)).collect())
}

/// One see-saw run: random site-identical observables, then alternate the
/// state step (smallest Bell-operator eigenpair, TI symmetrized) with the
/// measurement step (sign construction from the trace operators) until the
/// objective settles.
pub fn seesaw_run(
    q: &FloatInequality,
    d: usize,
    seed: u64,
    max_iter: usize,
) -> Result<SeesawReport> {
    seesaw_run_with(q, d, seed, max_iter, false, DEFAULT_DIM_CAP)
}

pub fn seesaw_run_with(
    q: &FloatInequality,
    d: usize,
    seed: u64,
    max_iter: usize,
    real_only: bool,
    dim_cap: usize,
) -> Result<SeesawReport> {
    seesaw_run_seeded(q, d, seed, max_iter, real_only, dim_cap, None)
}

/// See-saw starting from the given observables instead of random ones.
pub fn seesaw_run_seeded(
    q: &FloatInequality,
    d: usize,
    seed: u64,
    max_iter: usize,
    real_only: bool,
    dim_cap: usize,
    init: Option<SymmetricObservableSet>,
) -> Result<SeesawReport> {
    let n = q.n;
    if d == 0 {
        return Err(BellError::BadInput("local dimension must be positive".into()));
    }
    let dim = d
        .checked_pow(n as u32)
        .filter(|&v| v <= dim_cap)
        .ok_or_else(|| BellError::ResourceCap(format!("dimension {d}^{n} over cap {dim_cap}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut obs = match init {
        Some(set) => {
            if set.d != d || set.ops.len() != 2 {
                return Err(BellError::Dimension("seed observables disagree with d".into()));
            }
            set
        }
        None => SymmetricObservableSet {
            d,
            ops: (0..2)
                .map(|_| {
                    let m = random_observable(d, &mut rng);
                    if real_only {
                        m.map(|z| Complex64::new(z.re, 0.0))
                    } else {
                        m
                    }
                })
                .collect(),
        },
    };

    let mut trace: Vec<f64> = Vec::new();
    let mut converged = false;
    let mut monotone = true;
    let mut best_beta = f64::NEG_INFINITY;
    let mut best_state: Option<TIStateComponents> = None;
    let mut best_obs = obs.clone();
    let mut iterations = 0;
    // unitary kicks applied after the run settles, to escape shallow basins;
    // amplitude shrinks with each kick so late kicks only polish
    let mut kicks_left = 5;
    let mut prev_psi: Option<Vec<Complex64>> = None;
    let strip = |m: &DMatrix<Complex64>| m.map(|z| Complex64::new(z.re, 0.0));

    for _ in 0..max_iter {
        iterations += 1;
        let op = BellApply::site_identical(q, &obs);
        let start: Vec<Complex64> = match &prev_psi {
            Some(p) => p.clone(),
            None => (0..dim)
                .map(|_| {
                    Complex64::new(
                        gaussian(&mut rng),
                        if real_only { 0.0 } else { gaussian(&mut rng) },
                    )
                })
                .collect(),
        };
        let (lam, psi) = smallest_eigenpair(&op, &start);
        let beta = -lam;
        if let Some(&prev) = trace.last() {
            if beta < prev - 1e-10 {
                monotone = false;
            }
        }
        let settled = trace.last().is_some_and(|&prev| (beta - prev).abs() < 1e-8);
        trace.push(beta);
        let state = TIStateComponents::from_pure(n, d, &psi);
        if beta > best_beta {
            best_beta = beta;
            best_state = Some(state.clone());
            best_obs = obs.clone();
        }
        if settled {
            if kicks_left == 0 {
                converged = true;
                break;
            }
            let eps = 0.05 * kicks_left as f64;
            kicks_left -= 1;
            // restart near the best observables found so far
            obs = best_obs.clone();
            for m in &mut obs.ops {
                let u = near_identity_unitary(d, eps, &mut rng);
                *m = &u * m.clone() * u.adjoint();
                if real_only {
                    *m = strip(m);
                }
            }
            prev_psi = None;
            continue;
        }
        prev_psi = Some(psi);

        // measurement step, one observable at a time: each sign update is
        // optimal for its own linearization given the other observable
        let fs = trace_operators(q, &state, &obs);
        debug_assert!({
            let check: f64 = fs
                .iter()
                .zip(&obs.ops)
                .map(|(f, m)| (m * f).diagonal().iter().map(|z| z.re).sum::<f64>())
                .sum();
            // compare against the Rayleigh quotient of the vector actually
            // used, not the eigensolver's reported value, which can lag on
            // hard spectra at large dimension
            let rq = op.expectation(prev_psi.as_ref().unwrap());
            (check - rq).abs() < 1e-6 * rq.abs().max(1.0)
        });
        obs.ops[0] = sign_observable(&fs[0]);
        if real_only {
            obs.ops[0] = strip(&obs.ops[0]);
        }
        let fs = trace_operators(q, &state, &obs);
        obs.ops[1] = sign_observable(&fs[1]);
        if real_only {
            obs.ops[1] = strip(&obs.ops[1]);
        }
    }

    let state = best_state.expect("at least one iteration");
    Ok(SeesawReport {
        beta: best_beta,
        d,
        iterations,
        trace,
        converged,
        monotone,
        state,
        observables: best_obs,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct DminResult {
    /// smallest dimension whose best beta reached the target, if any
    pub d_min: Option<usize>,
    /// (dimension, best beta over seeds)
    pub curve: Vec<(usize, f64)>,
}

struct ChainLink {
    beta: f64,
    state: TIStateComponents,
    obs: SymmetricObservableSet,
}

/// Stepwise deflation: starting at the exact d*n embedding of the best free
/// qubit strategy (which reproduces the free optimum with site-identical
/// observables), reduce the local dimension one step at a time, reconverging
/// see-saw from the truncated observables at each step. Indexed by local
/// dimension.
fn deflation_chain(q: &FloatInequality, base_seed: u64) -> Vec<Option<ChainLink>> {
    let Some(emb) = crate::quantum::max_violation(q, crate::quantum::Mode::Free, 50, base_seed)
        .ok()
        .and_then(|res| embed_dn(&res.state, &qubit_observables(&res.angles)).ok())
    else {
        return Vec::new();
    };
    let mut chain: Vec<Option<ChainLink>> = (0..emb.d_local + 1).map(|_| None).collect();
    let beta = emb.expectation(q);
    let mut cur_state = emb.state;
    let mut cur_obs = emb.observables;
    chain[emb.d_local] = Some(ChainLink { beta: -beta, state: cur_state.clone(), obs: cur_obs.clone() });
    for d in (1..emb.d_local).rev() {
        let Ok(init) = truncation_seed(&cur_state, &cur_obs, d) else { break };
        let seed = base_seed.wrapping_add(500_000 + d as u64);
        // over the dimension cap: keep truncating the current solution
        let Ok(rep) = seesaw_run_seeded(q, d, seed, 400, false, DEFAULT_DIM_CAP, Some(init))
        else {
            continue;
        };
        cur_state = rep.state;
        cur_obs = rep.observables;
        chain[d] =
            Some(ChainLink { beta: rep.beta, state: cur_state.clone(), obs: cur_obs.clone() });
    }
    chain
}

/// Harder attempts at one dimension when the chain candidate falls short:
/// signature-flip variants of the plain truncation of the next link up, then
/// noisy-isometry truncations that sample subspaces other than the strict
/// top-d one.
fn boost_dimension(
    q: &FloatInequality,
    upper: &ChainLink,
    d: usize,
    target: f64,
    base_seed: u64,
) -> f64 {
    let mut best = f64::NEG_INFINITY;
    let mut rng = ChaCha8Rng::seed_from_u64(base_seed.wrapping_add(700_000 + d as u64));
    let variants = match truncation_seed_variants(&upper.state, &upper.obs, d) {
        Ok(v) => v,
        Err(_) => return best,
    };
    let attempt = |init: SymmetricObservableSet, seed: u64, best: &mut f64| -> bool {
        if let Ok(rep) = seesaw_run_seeded(q, d, seed, 400, false, DEFAULT_DIM_CAP, Some(init)) {
            *best = best.max(rep.beta);
        }
        *best >= target
    };
    for (v, init) in variants.into_iter().enumerate() {
        for a in 0..2u64 {
            let seed = base_seed.wrapping_add(600_000 + 64 * d as u64 + 8 * v as u64 + a);
            if attempt(init.clone(), seed, &mut best) {
                return best;
            }
        }
    }
    for s in 0..40u64 {
        let w = truncation_isometry(&upper.state, d, 0.5, Some(&mut rng));
        let init = project_observables(&upper.obs, &w, 0);
        let seed = base_seed.wrapping_add(800_000 + 64 * d as u64 + s);
        if attempt(init, seed, &mut best) {
            return best;
        }
    }
    best
}

/// Sweeps local dimensions upward, running `seeds` see-saw restarts each,
/// until the target violation (minus 1e-3 slack) is reached. Each dimension
/// also gets warm-started candidates from the deflation chain, which usually
/// dominate random restarts.
pub fn dmin_search(
    q: &FloatInequality,
    target: f64,
    d_max: usize,
    seeds: u64,
    base_seed: u64,
) -> Result<DminResult> {
    let chain = deflation_chain(q, base_seed);
    let reached = target - 1e-3;
    let mut curve = Vec::new();
    let mut found = None;
    for d in 1..=d_max {
        let mut best = chain
            .get(d)
            .and_then(|l| l.as_ref())
            .map_or(f64::NEG_INFINITY, |l| l.beta);
        if best < reached {
            if let Some(upper) = chain.get(d + 1).and_then(|l| l.as_ref()) {
                best = best.max(boost_dimension(q, upper, d, reached, base_seed));
            }
        }
        for s in 0..seeds {
            if best >= reached {
                break;
            }
            let rep = seesaw_run(q, d, base_seed.wrapping_add(1000 * d as u64 + s), 400)?;
            best = best.max(rep.beta);
        }
        curve.push((d, best));
        if best >= reached {
            found = Some(d);
            break;
        }
    }
    Ok(DminResult { d_min: found, curve })
}
