//! The TI two-body Bell inequality and its coefficient expansions.

use crate::correlator::{FullCorrelatorVector, TICorrelatorVector};
use crate::error::{BellError, Result};
use crate::scalar::{format_rational, parse_rational, rational_to_f64, Scalar};
use crate::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A translationally invariant two-body Bell inequality
/// `alpha S0 + beta S1 + sum_k (gamma_k T00^(k) + eps_k T11^(k))
///  + sum_k omega_k T01^(k) + beta_c >= 0`.
///
/// Internal coefficient order is `(alpha, beta, gamma_1.., omega_1.., eps_1..)`,
/// matching the component order of [`TICorrelatorVector`].
#[derive(Debug, Clone, PartialEq)]
pub struct TIInequality<T> {
    pub n: usize,
    pub alpha: T,
    pub beta: T,
    /// length n/2 (rounded down)
    pub gamma: Vec<T>,
    /// length n-1
    pub omega: Vec<T>,
    /// length n/2 (rounded down)
    pub epsilon: Vec<T>,
    /// classical bound, once computed
    pub beta_c: Option<T>,
}

impl<T: Scalar> TIInequality<T> {
    pub fn new(
        n: usize,
        alpha: T,
        beta: T,
        gamma: Vec<T>,
        omega: Vec<T>,
        epsilon: Vec<T>,
    ) -> Result<Self> {
        if gamma.len() != n / 2 || epsilon.len() != n / 2 || omega.len() != n - 1 {
            return Err(BellError::Dimension(format!(
                "coefficient lengths ({}, {}, {}) do not match n={}",
                gamma.len(),
                omega.len(),
                epsilon.len(),
                n
            )));
        }
        Ok(Self {
            n,
            alpha,
            beta,
            gamma,
            omega,
            epsilon,
            beta_c: None,
        })
    }

    pub fn zero(n: usize) -> Self {
        Self {
            n,
            alpha: T::zero(),
            beta: T::zero(),
            gamma: vec![T::zero(); n / 2],
            omega: vec![T::zero(); n - 1],
            epsilon: vec![T::zero(); n / 2],
            beta_c: None,
        }
    }

    /// Coefficients in internal order `(alpha, beta, gamma.., omega.., eps..)`.
    pub fn coefficients(&self) -> Vec<T> {
        let mut c = Vec::with_capacity(TICorrelatorVector::dim(self.n));
        c.push(self.alpha.clone());
        c.push(self.beta.clone());
        c.extend(self.gamma.iter().cloned());
        c.extend(self.omega.iter().cloned());
        c.extend(self.epsilon.iter().cloned());
        c
    }

    pub fn from_coefficients(n: usize, coeffs: &[T]) -> Result<Self> {
        let half = n / 2;
        if coeffs.len() != TICorrelatorVector::dim(n) {
            return Err(BellError::Dimension(format!(
                "expected {} coefficients for n={}, got {}",
                TICorrelatorVector::dim(n),
                n,
                coeffs.len()
            )));
        }
        Self::new(
            n,
            coeffs[0].clone(),
            coeffs[1].clone(),
            coeffs[2..2 + half].to_vec(),
            coeffs[2 + half..2 + half + n - 1].to_vec(),
            coeffs[2 + half + n - 1..].to_vec(),
        )
    }

    /// Nearest-neighbour pattern: only `gamma_1, omega_1, omega_{n-1}, eps_1`
    /// may be nonzero besides the one-body terms.
    pub fn nearest_neighbour(
        n: usize,
        alpha: T,
        beta: T,
        gamma: T,
        omega_near: T,
        omega_far: T,
        epsilon: T,
    ) -> Result<Self> {
        if n < 3 {
            return Err(BellError::Size { n, min: 3, max: usize::MAX });
        }
        let mut q = Self::zero(n);
        q.alpha = alpha;
        q.beta = beta;
        q.gamma[0] = gamma;
        q.omega[0] = omega_near;
        q.omega[n - 2] = omega_far;
        q.epsilon[0] = epsilon;
        Ok(q)
    }

    /// The Bell expression `I` on a TI correlator vector, exact in `T`.
    pub fn evaluate(&self, v: &TICorrelatorVector) -> Result<T> {
        if v.n != self.n {
            return Err(BellError::Dimension(format!(
                "inequality has n={}, vector has n={}",
                self.n, v.n
            )));
        }
        let mut acc = self.alpha.clone() * T::from_int(v.s0);
        acc += self.beta.clone() * T::from_int(v.s1);
        for (c, t) in self.gamma.iter().zip(&v.t00) {
            acc += c.clone() * T::from_int(*t);
        }
        for (c, t) in self.omega.iter().zip(&v.t01) {
            acc += c.clone() * T::from_int(*t);
        }
        for (c, t) in self.epsilon.iter().zip(&v.t11) {
            acc += c.clone() * T::from_int(*t);
        }
        Ok(acc)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients().iter().all(|c| c.is_zero())
    }

    /// Coefficient of the ordered-pair term `M_x^(i) M_y^(j)` for sites
    /// `i < j` at distance `s = j - i`.
    ///
    /// This expands the cyclic coefficient classes: gamma/epsilon classes
    /// cover distances `s` and `n - s` (with the `n/2` class counted twice
    /// for even n), omega_s sits on (0,1)-pairs at distance `s` and on
    /// (1,0)-pairs at distance `n - s`.
    pub fn pair_coefficient(&self, s: usize, x: usize, y: usize) -> T {
        let n = self.n;
        debug_assert!(s >= 1 && s < n);
        let same = |coeffs: &[T]| -> T {
            let k = s.min(n - s);
            let c = coeffs[k - 1].clone();
            if n % 2 == 0 && s * 2 == n {
                c.clone() + c
            } else {
                c
            }
        };
        match (x, y) {
            (0, 0) => same(&self.gamma),
            (1, 1) => same(&self.epsilon),
            (0, 1) => self.omega[s - 1].clone(),
            (1, 0) => self.omega[n - s - 1].clone(),
            _ => panic!("observable index out of range"),
        }
    }

    /// One-body coefficient of observable `x` at every site.
    pub fn one_body_coefficient(&self, x: usize) -> T {
        match x {
            0 => self.alpha.clone(),
            1 => self.beta.clone(),
            _ => panic!("observable index out of range"),
        }
    }

    /// Objective over the full correlator vector: nonzero only on one- and
    /// two-body slots. Indexing matches [`FullCorrelatorVector`].
    pub fn full_objective(&self) -> Vec<T> {
        let n = self.n;
        let mut f = vec![T::zero(); FullCorrelatorVector::dim(n)];
        let mut set = |obs: Vec<Option<usize>>, c: T| {
            let idx = FullCorrelatorVector::index(n, &obs);
            f[idx - 1] += c;
        };
        for i in 0..n {
            for x in 0..2 {
                let mut obs = vec![None; n];
                obs[i] = Some(x);
                set(obs, self.one_body_coefficient(x));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for x in 0..2 {
                    for y in 0..2 {
                        let mut obs = vec![None; n];
                        obs[i] = Some(x);
                        obs[j] = Some(y);
                        set(obs, self.pair_coefficient(j - i, x, y));
                    }
                }
            }
        }
        f
    }
}

impl TIInequality<Rational> {
    /// Clears denominators and divides by the collective gcd of the
    /// coefficients, so that the stored form is integer with gcd 1. The
    /// classical bound is rescaled by the same factor.
    pub fn normalize(&self) -> Self {
        let coeffs = self.coefficients();
        if coeffs.iter().all(|c| c.is_zero()) {
            return self.clone();
        }
        let mut lcm = BigInt::one();
        for c in &coeffs {
            lcm = lcm.lcm(c.denom());
        }
        let mut gcd = BigInt::zero();
        for c in &coeffs {
            let scaled = c.numer() * (&lcm / c.denom());
            gcd = gcd.gcd(&scaled);
        }
        let factor = Rational::new(lcm, gcd);
        let scale = |c: &Rational| c * &factor;
        let out = Self {
            n: self.n,
            alpha: scale(&self.alpha),
            beta: scale(&self.beta),
            gamma: self.gamma.iter().map(&scale).collect(),
            omega: self.omega.iter().map(&scale).collect(),
            epsilon: self.epsilon.iter().map(&scale).collect(),
            beta_c: self.beta_c.as_ref().map(&scale),
        };
        debug_assert!(out.coefficients().iter().all(|c| c.is_integer()));
        out
    }

    pub fn to_float(&self) -> TIInequality<f64> {
        TIInequality {
            n: self.n,
            alpha: rational_to_f64(&self.alpha),
            beta: rational_to_f64(&self.beta),
            gamma: self.gamma.iter().map(rational_to_f64).collect(),
            omega: self.omega.iter().map(rational_to_f64).collect(),
            epsilon: self.epsilon.iter().map(rational_to_f64).collect(),
            beta_c: self.beta_c.as_ref().map(rational_to_f64),
        }
    }

    pub fn beta_c(&self) -> Result<&Rational> {
        self.beta_c.as_ref().ok_or(BellError::MissingBound)
    }
}

// --- JSON wire format -------------------------------------------------------
//
// {"n": int, "alpha": rat, "beta": rat, "gamma": [rat], "omega": [rat],
//  "epsilon": [rat], "beta_c": rat|null}
// where rat is a JSON integer or a "p/q" string. Round-trips exactly.

fn rat_to_value(r: &Rational) -> serde_json::Value {
    use num_traits::ToPrimitive;
    if r.is_integer() {
        if let Some(i) = r.numer().to_i64() {
            return serde_json::Value::from(i);
        }
    }
    serde_json::Value::from(format_rational(r))
}

fn rat_from_value(v: &serde_json::Value) -> Option<Rational> {
    match v {
        serde_json::Value::Number(n) => {
            let i = n.as_i64()?;
            Some(Rational::from_integer(BigInt::from(i)))
        }
        serde_json::Value::String(s) => parse_rational(s),
        _ => None,
    }
}

impl Serialize for TIInequality<Rational> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(Some(7))?;
        map.serialize_entry("n", &self.n)?;
        map.serialize_entry("alpha", &rat_to_value(&self.alpha))?;
        map.serialize_entry("beta", &rat_to_value(&self.beta))?;
        let vals = |v: &[Rational]| -> Vec<serde_json::Value> { v.iter().map(rat_to_value).collect() };
        map.serialize_entry("gamma", &vals(&self.gamma))?;
        map.serialize_entry("omega", &vals(&self.omega))?;
        map.serialize_entry("epsilon", &vals(&self.epsilon))?;
        map.serialize_entry("beta_c", &self.beta_c.as_ref().map(|r| rat_to_value(r)))?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for TIInequality<Rational> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            n: usize,
            alpha: serde_json::Value,
            beta: serde_json::Value,
            gamma: Vec<serde_json::Value>,
            omega: Vec<serde_json::Value>,
            epsilon: Vec<serde_json::Value>,
            #[serde(default)]
            beta_c: Option<serde_json::Value>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let conv = |v: &serde_json::Value| {
            rat_from_value(v).ok_or_else(|| D::Error::custom(format!("bad rational: {v}")))
        };
        let list = |vs: &[serde_json::Value]| -> std::result::Result<Vec<Rational>, D::Error> {
            vs.iter().map(conv).collect()
        };
        let mut q = TIInequality::new(
            raw.n,
            conv(&raw.alpha)?,
            conv(&raw.beta)?,
            list(&raw.gamma)?,
            list(&raw.omega)?,
            list(&raw.epsilon)?,
        )
        .map_err(D::Error::custom)?;
        q.beta_c = match raw.beta_c {
            Some(serde_json::Value::Null) | None => None,
            Some(v) => Some(conv(&v)?),
        };
        Ok(q)
    }
}
