//! Nabla discrete Laplace transform `K_a f(z) = Σ_{t>a} (1-z)^{t-a-1} f(t)`
//! on the real segment `0 < z < 2`.
//!
//! The infinite sum is cut at a horizon chosen from an [`Envelope`] supplied
//! by the caller, so every numeric value comes with a bound on the neglected
//! tail (plus a rounding estimate).

use num_traits::Float;

use crate::error::{Error, Result};
use crate::nabla::{convolve, left_frac_sum_signal, nabla};
use crate::scalar::Real;
use crate::signal::Signal;

/// Growth bound `|f(a+m)| ≤ c (1+m)^p g^m` for `m ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Envelope {
    pub c: f64,
    pub p: f64,
    pub g: f64,
}

/// Largest horizon (in steps past the origin) the tail search will consider.
const HORIZON_SEARCH_LIMIT: u64 = 100_000_000;

impl Envelope {
    pub fn new(c: f64, p: f64, g: f64) -> Result<Self> {
        if !(c >= 0.0 && p >= 0.0 && g > 0.0) || !(c.is_finite() && p.is_finite() && g.is_finite()) {
            return Err(Error::Domain(format!("invalid envelope c={c}, p={p}, g={g}")));
        }
        Ok(Self { c, p, g })
    }

    pub fn constant(c: f64) -> Self {
        Self { c: c.abs(), p: 0.0, g: 1.0 }
    }

    pub fn bound(&self, m: u64) -> f64 {
        self.c * (1.0 + m as f64).powf(self.p) * self.g.powf(m as f64)
    }

    /// Envelope of `∇_a^{-ν} f`, `ν ≥ 0`: the sum is at most
    /// `max_{j≤m} |f(a+j)| kernel(m, ν+1)` and `kernel(m, ν+1) ≤ e^ν m^ν`.
    pub fn frac_sum(&self, nu: f64) -> Self {
        Self { c: self.c * nu.exp(), p: self.p + nu, g: self.g.max(1.0) }
    }

    /// Envelope of `∇f` for `m ≥ 2`, which is all the tail bounds use.
    pub fn nabla(&self) -> Self {
        Self { c: self.c * (1.0 + 1.0 / self.g.min(1.0)), ..*self }
    }

    /// Envelope of the convolution `f ∗ h`.
    pub fn convolved(&self, other: &Envelope) -> Self {
        let g = self.g.max(other.g);
        Self { c: self.c * other.c * g, p: self.p + other.p + 1.0, g }
    }

    /// Bound on `Σ_{m>n} r^{m-1} |f(a+m)|`, infinite when the terms do not
    /// decay geometrically from `n` on.
    pub fn tail_after(&self, r: f64, n: u64) -> f64 {
        if r == 0.0 {
            return if n >= 1 { 0.0 } else { self.bound(1) };
        }
        let rho = r * self.g;
        let s = ((n as f64 + 3.0) / (n as f64 + 2.0)).powf(self.p) * rho;
        if s >= 1.0 {
            return f64::INFINITY;
        }
        self.bound(n + 1) * r.powf(n as f64) / (1.0 - s)
    }

    /// Smallest `n ≥ 1` with `tail_after(r, n) < tol`.
    pub fn horizon(&self, r: f64, tol: f64) -> Result<u64> {
        if r * self.g >= 1.0 {
            return Err(Error::Domain(format!(
                "transform does not converge: |1-z| g = {} >= 1",
                r * self.g
            )));
        }
        let mut n = 1u64;
        while self.tail_after(r, n) >= tol {
            n = if n < 64 { n + 1 } else { n + n / 8 };
            if n > HORIZON_SEARCH_LIMIT {
                return Err(Error::Convergence { k_max: n as usize, tail_bound: self.tail_after(r, n) });
            }
        }
        // step back to the smallest admissible horizon after geometric jumps
        while n > 1 && self.tail_after(r, n - 1) < tol {
            n -= 1;
        }
        Ok(n)
    }
}

/// A transform value with its truncation bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformPoint<T> {
    pub z: T,
    pub value: T,
    pub terms_used: usize,
    pub tail_bound: T,
}

fn check_z<T: Real>(z: T) -> Result<f64> {
    if !(z > T::zero() && z < T::from_int(2)) {
        return Err(Error::Domain(format!("transform variable must satisfy |1 - z| < 1, got {z}")));
    }
    Ok(Float::abs(T::one() - z).to_real())
}

fn finite_transform<T: Real>(values: impl Iterator<Item = T>, z: T, n: usize, tail: f64) -> TransformPoint<T> {
    let x = T::one() - z;
    let mut w = T::one();
    let mut terms = Vec::with_capacity(n);
    for v in values.take(n) {
        terms.push(w * v);
        w = w * x;
    }
    let abs_sum = terms.iter().fold(T::zero(), |s, t| s + Float::abs(*t));
    let rounding = abs_sum * T::epsilon() * T::from_int(n as i64 + 1);
    TransformPoint { z, value: T::sum_seq(&terms), terms_used: n, tail_bound: T::from_real(tail) + rounding }
}

/// Numeric transform of `f(a+1), f(a+2), …` produced by a generator. The
/// horizon is the smallest one whose envelope tail is below `tol`.
pub fn numeric_transform<T: Real>(
    f: impl Fn(i64) -> T,
    a: i64,
    z: T,
    env: &Envelope,
    tol: f64,
    max_terms: usize,
) -> Result<TransformPoint<T>> {
    let r = check_z(z)?;
    let n = env.horizon(r, tol)?;
    if n > max_terms as u64 {
        return Err(Error::HorizonOverflow { available: a + max_terms as i64, needed: a + n as i64 });
    }
    Ok(finite_transform((1..=n as i64).map(|m| f(a + m)), z, n as usize, env.tail_after(r, n)))
}

/// Numeric transform of a stored signal, extended beyond its horizon only
/// through the envelope bound.
pub fn signal_transform<T: Real>(f: &Signal<T>, z: T, env: &Envelope, tol: f64) -> Result<TransformPoint<T>> {
    let r = check_z(z)?;
    let n = env.horizon(r, tol)?;
    let stored = (f.len() - 1) as u64;
    if n > stored {
        return Err(Error::HorizonOverflow { available: f.horizon(), needed: f.origin() + n as i64 });
    }
    Ok(finite_transform(f.values()[1..].iter().copied(), z, n as usize, env.tail_after(r, n)))
}

/// `K_a (t-a)^{(μ-1)} = Γ(μ)/z^μ`.
pub fn closed_monomial<T: Real>(mu: T, z: T) -> Result<T> {
    check_z(z)?;
    if mu <= T::zero() && Float::fract(mu) == T::zero() {
        return Err(Error::Pole(format!("Gamma has a pole at mu = {mu}")));
    }
    Ok(mu.gamma() / Float::powf(z, mu))
}

/// `K_a (t-a)^{(μ-1)} b^{-(t-a)} = b^{μ-1} Γ(μ) / (z+b-1)^μ`, `|1-z| < b`.
pub fn closed_exp_monomial<T: Real>(mu: T, base: T, z: T) -> Result<T> {
    if !(z > T::zero() && z < T::from_int(2)) {
        return Err(Error::Domain(format!("transform variable must lie in (0, 2), got {z}")));
    }
    if !(Float::abs(T::one() - z) < base) {
        return Err(Error::Domain(format!("need |1 - z| < b, got z = {z}, b = {base}")));
    }
    if mu <= T::zero() && Float::fract(mu) == T::zero() {
        return Err(Error::Pole(format!("Gamma has a pole at mu = {mu}")));
    }
    Ok(Float::powf(base, mu - T::one()) * mu.gamma() / Float::powf(z + base - T::one(), mu))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MlKind {
    /// `E_α(λ, t-a)`, transform `z^{α-1}/(z^α - λ)`.
    OneParameter,
    /// `E_{α,α}(λ, t-a)`, transform `1/(z^α - λ)`.
    AlphaAlpha,
}

pub fn closed_ml<T: Real>(alpha: T, lambda: T, kind: MlKind, z: T) -> Result<T> {
    check_z(z)?;
    if !(alpha > T::zero() && alpha <= T::one()) || !(Float::abs(lambda) < T::one()) {
        return Err(Error::Domain(format!("need 0 < alpha <= 1 and |lambda| < 1, got {alpha}, {lambda}")));
    }
    let za = Float::powf(z, alpha);
    if !(za > lambda) {
        return Err(Error::Pole(format!("z^alpha = {za} does not exceed lambda = {lambda}")));
    }
    Ok(match kind {
        MlKind::OneParameter => Float::powf(z, alpha - T::one()) / (za - lambda),
        MlKind::AlphaAlpha => T::one() / (za - lambda),
    })
}

/// Both sides of one transform rule at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct RuleCheck<T> {
    pub rule: &'static str,
    pub z: T,
    pub lhs: T,
    pub rhs: T,
    pub gap: T,
    pub tol: T,
}

impl<T: Real> RuleCheck<T> {
    fn new(rule: &'static str, z: T, lhs: T, rhs: T, tol: T) -> Self {
        Self { rule, z, lhs, rhs, gap: Float::abs(lhs - rhs), tol }
    }

    pub fn passed(&self) -> bool {
        self.gap <= self.tol
    }
}

/// A function on `ℕ_a` given by a generator and its growth envelope.
pub struct Transformable<'a, T> {
    pub origin: i64,
    pub f: &'a dyn Fn(i64) -> T,
    pub env: Envelope,
}

impl<T: Real> Transformable<'_, T> {
    fn sample(&self, n: u64) -> Result<Signal<T>> {
        Signal::from_fn(self.origin, self.origin + n as i64, |t| (self.f)(t))
    }
}

/// Checks the fractional-sum rule `K ∇^{-ν} f = z^{-ν} K f`, the difference
/// rule `K ∇f = z K f - f(a)` and the convolution rule `K(f∗h) = K f · K h`.
/// Transforms are truncated at `tol / 10` so the gaps measure the identities
/// rather than the truncation.
pub fn rule_checks<T: Real>(f: &Transformable<T>, h: &Transformable<T>, nu: T, z: T, tol: f64) -> Result<Vec<RuleCheck<T>>> {
    let r = check_z(z)?;
    if f.origin != h.origin {
        return Err(Error::OriginMismatch(f.origin, h.origin));
    }
    if !(nu > T::zero()) {
        return Err(Error::Domain(format!("fractional sum order must be positive, got {nu}")));
    }
    let inner = tol / 10.0;
    let env_sum = f.env.frac_sum(nu.to_real());
    let env_nabla = f.env.nabla();
    let env_conv = f.env.convolved(&h.env);
    let n = [f.env, h.env, env_sum, env_nabla, env_conv]
        .iter()
        .map(|e| e.horizon(r, inner))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .max()
        .unwrap_or(1);

    let fs = f.sample(n)?;
    let hs = h.sample(n)?;
    let kf = signal_transform(&fs, z, &f.env, inner)?.value;
    let kh = signal_transform(&hs, z, &h.env, inner)?.value;
    let k_sum = signal_transform(&left_frac_sum_signal(&fs, nu)?, z, &env_sum, inner)?.value;
    let d = nabla(&fs)?;
    let d_full = Signal::new(fs.origin(), std::iter::once(T::zero()).chain(d.values().iter().copied()).collect())?;
    let k_nabla = signal_transform(&d_full, z, &env_nabla, inner)?.value;
    let k_conv = signal_transform(&convolve(&fs, &hs)?, z, &env_conv, inner)?.value;
    let fa = fs.values()[0];
    let tol_t = T::from_real(tol);
    Ok(vec![
        RuleCheck::new("fractional sum", z, k_sum, Float::powf(z, -nu) * kf, tol_t),
        RuleCheck::new("nabla", z, k_nabla, z * kf - fa, tol_t),
        RuleCheck::new("convolution", z, k_conv, kf * kh, tol_t),
    ])
}
