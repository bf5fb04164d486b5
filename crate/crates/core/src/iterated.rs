//! Iterated AB fractional difference-sums `∇^{(-α,μ)}`.
//!
//! The operator of order `(α, μ)` is the binomial series
//! `Σ_k c_k ∇^{-kα} f` with `c_k = binom(μ,k) (1-α)^{μ-k} α^k B^{-μ}`, i.e.
//! `((1-α)/B + (α/B) ∇^{-α})^μ`. Positive `μ` iterates the AB sum, negative
//! `μ` the Riemann–Liouville AB difference; the series is finite for
//! `μ ∈ ℕ` and needs `α < 1/2` otherwise.
//!
//! Besides the operator series the crate computes the equivalent lag weights
//! from their generating function
//! `Σ_{n≥1} w^{n-1} W(n) = B^{-μ} (1-w)^{-αμ} (α + (1-α)(1-w)^α)^μ`,
//! a finite recurrence that needs no truncation and is exact in rational
//! arithmetic for integer `μ`. [`iterated_left`] falls back to it when the
//! operator series would lose accuracy to cancellation.
//!
//! On the grid `{a, …, b}` the value at `a` is `c_0 f(a)`: every fractional
//! sum of positive order is empty there. Right-side operators are the mirror
//! images under `t ↦ a + b - t`.

use num_traits::Float;

use crate::ab::{AbConfig, SeriesValue};
use crate::error::{Error, Result};
use crate::mittag_leffler::{Truncation, K_MIN};
use crate::nabla::{left_frac_sum_signal, left_weighted};
use crate::scalar::{Real, Scalar};
use crate::signal::Signal;
use crate::special_fn::{kernel, kernel_column};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// How an [`IterResult`] was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IterRoute {
    /// `μ = 0` or `α = 0`: a multiple of `f`.
    Trivial,
    /// Finite binomial sum, `μ ∈ ℕ`.
    Finite,
    /// Truncated operator series.
    Series,
    /// Lag weights from the generating function.
    GeneratingFunction,
    /// `α = 1`: `∇^{(-1,μ)} = ∇^{-μ}`, a fractional sum for `μ > 0` and a
    /// Riemann–Liouville difference for `μ < 0`.
    Convention,
}

/// Order `(α, μ)`: kernel order `α ∈ [0, 1]` and iteration exponent `μ`.
#[derive(Debug, Clone, PartialEq)]
pub struct IterOrder<T> {
    alpha: T,
    mu: T,
}

impl<T: Scalar> IterOrder<T> {
    /// Non-integer and negative integer exponents need `α < 1/2` (or the
    /// `α = 1` convention).
    pub fn new(alpha: T, mu: T) -> Result<Self> {
        if alpha < T::zero() || alpha > T::one() {
            return Err(Error::Domain(format!("alpha must lie in [0, 1], got {alpha:?}")));
        }
        if !mu.is_finite_value() {
            return Err(Error::Domain("iteration exponent must be finite".into()));
        }
        let finite_sum = matches!(mu.as_integer(), Some(n) if n >= 0);
        if !finite_sum && alpha >= T::ratio(1, 2) && alpha != T::one() {
            return Err(Error::Domain(format!(
                "exponent {mu:?} needs alpha < 1/2 for the series to converge, got {alpha:?}"
            )));
        }
        Ok(Self { alpha, mu })
    }

    pub fn alpha(&self) -> &T {
        &self.alpha
    }

    pub fn mu(&self) -> &T {
        &self.mu
    }

    fn natural(&self) -> Option<u64> {
        self.mu.as_integer().filter(|n| *n >= 0).map(|n| n as u64)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IterResult<T> {
    pub values: Signal<T>,
    pub k_used: usize,
    pub tail_bound: T,
    pub route: IterRoute,
}

fn check_alpha<T: Scalar>(ord: &IterOrder<T>, cfg: &AbConfig<T>) -> Result<()> {
    if ord.alpha() != cfg.alpha() {
        return Err(Error::AlphaMismatch(ord.alpha().to_real(), cfg.alpha().to_real()));
    }
    Ok(())
}

fn power<T: Scalar>(base: T, e: &T) -> Result<T> {
    base.try_pow(e)
        .filter(|v| v.is_finite_value())
        .ok_or_else(|| Error::Domain(format!("cannot raise {base:?} to {e:?} in this scalar type")))
}

/// `c_0 = ((1-α)/B)^μ`, the weight of `f(t)` itself.
pub fn origin_weight<T: Scalar>(ord: &IterOrder<T>, cfg: &AbConfig<T>) -> Result<T> {
    check_alpha(ord, cfg)?;
    if *ord.mu() == T::zero() {
        return Ok(T::one());
    }
    power((T::one() - ord.alpha().clone()) / cfg.b_value().clone(), ord.mu())
}

/// Finite binomial coefficients `c_0..=c_n` for `μ = n ∈ ℕ`.
fn finite_coefficients<T: Scalar>(alpha: &T, b: &T, n: u64) -> Vec<T> {
    let one_minus = T::one() - alpha.clone();
    let pow = |x: &T, e: u64| (0..e).fold(T::one(), |acc, _| acc * x.clone());
    let b_n = pow(b, n);
    let mut binom = T::one();
    (0..=n)
        .map(|k| {
            if k > 0 {
                binom = binom.clone() * T::from_int((n - k + 1) as i64) / T::from_int(k as i64);
            }
            binom.clone() * pow(&one_minus, n - k) * pow(alpha, k) / b_n.clone()
        })
        .collect()
}

fn finite_left<T: Scalar>(f: &Signal<T>, alpha: &T, b: &T, n: u64) -> Result<Signal<T>> {
    let coeffs = finite_coefficients(alpha, b, n);
    let mut acc = Signal::zeros(f.origin(), f.horizon())?;
    for (k, c) in coeffs.into_iter().enumerate() {
        if c == T::zero() {
            continue;
        }
        let s = left_frac_sum_signal(f, T::from_int(k as i64) * alpha.clone())?;
        acc = acc.combine(T::one(), &s, c)?;
    }
    Ok(acc)
}

/// Lag weights `W(1..=n_max)` of the operator (index 0 is lag 1), from the
/// generating function. The weight at lag 1 includes `c_0`.
pub fn lag_weights<T: Scalar>(ord: &IterOrder<T>, cfg: &AbConfig<T>, n_max: usize) -> Result<Vec<T>> {
    check_alpha(ord, cfg)?;
    let (alpha, mu) = (ord.alpha().clone(), ord.mu().clone());
    let scale = power(cfg.b_value().clone(), &-mu.clone())?;
    let one_minus = T::one() - alpha.clone();
    // (α + (1-α)(1-w)^α)^μ by the power recurrence n P_n = Σ ((μ+1)j - n) U_j P_{n-j}
    let u: Vec<T> = kernel_column(n_max, -alpha.clone())
        .into_iter()
        .map(|x| one_minus.clone() * x)
        .collect();
    let mut p = Vec::with_capacity(n_max);
    p.push(T::one());
    for n in 1..n_max {
        let terms: Vec<T> = (1..=n)
            .map(|j| {
                let w = (mu.clone() + T::one()) * T::from_int(j as i64) - T::from_int(n as i64);
                w * u[j].clone() * p[n - j].clone()
            })
            .collect();
        p.push(T::sum_seq(&terms) / T::from_int(n as i64));
    }
    let front = kernel_column(n_max, alpha * mu);
    Ok((0..n_max)
        .map(|m| {
            let terms: Vec<T> = (0..=m).map(|i| front[i].clone() * p[m - i].clone()).collect();
            scale.clone() * T::sum_seq(&terms)
        })
        .collect())
}

fn apply_lag_weights<T: Scalar>(f: &Signal<T>, c0: &T, w: &[T]) -> Result<Signal<T>> {
    let a = f.origin();
    Signal::from_fn(a, f.horizon(), |t| {
        if t == a {
            c0.clone() * f.values()[0].clone()
        } else {
            left_weighted(f, w, t)
        }
    })
}

/// `n`-fold backward difference, reading values below the origin as zero.
fn nabla_zero_extended<T: Scalar>(g: &Signal<T>, n: u64) -> Result<Signal<T>> {
    let mut v = g.values().to_vec();
    for _ in 0..n {
        for i in (0..v.len()).rev() {
            let prev = if i == 0 { T::zero() } else { v[i - 1].clone() };
            v[i] = v[i].clone() - prev;
        }
    }
    Signal::new(g.origin(), v)
}

fn mirrored<T: Scalar>(
    f: &Signal<T>,
    side: Side,
    op: impl FnOnce(&Signal<T>) -> Result<IterResult<T>>,
) -> Result<IterResult<T>> {
    match side {
        Side::Left => op(f),
        Side::Right => {
            let mut r = op(&f.reflect())?;
            r.values = r.values.reflect();
            Ok(r)
        }
    }
}

fn exact_left<T: Scalar>(f: &Signal<T>, ord: &IterOrder<T>, cfg: &AbConfig<T>) -> Result<IterResult<T>> {
    check_alpha(ord, cfg)?;
    f.require_len(2)?;
    let n = ord.mu().as_integer().ok_or_else(|| {
        Error::Domain(format!("exact evaluation needs an integer exponent, got {:?}", ord.mu()))
    })?;
    let alpha = ord.alpha().clone();
    let done = |values, k_used, route| Ok(IterResult { values, k_used, tail_bound: T::zero(), route });
    if n == 0 {
        return done(f.clone(), 0, IterRoute::Trivial);
    }
    if n > 0 {
        return done(finite_left(f, &alpha, cfg.b_value(), n as u64)?, n as usize, IterRoute::Finite);
    }
    if alpha == T::one() {
        return done(nabla_zero_extended(f, n.unsigned_abs())?, 0, IterRoute::Convention);
    }
    let w = lag_weights(ord, cfg, f.len())?;
    let c0 = origin_weight(ord, cfg)?;
    done(apply_lag_weights(f, &c0, &w)?, 0, IterRoute::GeneratingFunction)
}

/// Iterated operator for an integer exponent in any [`Scalar`], without
/// truncation: the binomial sum for `μ ≥ 0`, the lag weights for `μ < 0`.
pub fn iterated_exact<T: Scalar>(f: &Signal<T>, ord: &IterOrder<T>, cfg: &AbConfig<T>, side: Side) -> Result<Signal<T>> {
    Ok(mirrored(f, side, |g| exact_left(g, ord, cfg))?.values)
}

/// Geometric envelope shared by the operator series and the kernel form:
/// `|c_k| kernel(N, kα+1)` bounds `max_t |c_k ∇^{-kα} f(t)| / max|f|`, and for
/// `k > μ` consecutive envelopes shrink at least by the returned ratio.
fn envelope_ratio<T: Real>(alpha: T, mu: T, k: usize, n_lag: u64) -> T {
    let kt = T::from_int(k as i64);
    let coeff = Float::max(T::one(), (kt - mu) / (kt + T::one())) * alpha / (T::one() - alpha);
    let growth = Float::powi(T::one() + alpha / (kt * alpha + T::one()), n_lag.saturating_sub(1) as i32);
    coeff * growth
}

fn convention_left<T: Real>(f: &Signal<T>, mu: T) -> Result<Signal<T>> {
    if mu > T::zero() {
        return left_frac_sum_signal(f, mu);
    }
    let n = Float::ceil(-mu);
    let g = left_frac_sum_signal(f, n + mu)?;
    nabla_zero_extended(&g, n.to_real() as u64)
}

fn series_left<T: Real>(f: &Signal<T>, ord: &IterOrder<T>, cfg: &AbConfig<T>, trunc: &Truncation) -> Result<IterResult<T>> {
    let (alpha, mu) = (*ord.alpha(), *ord.mu());
    let c0 = origin_weight(ord, cfg)?;
    let q = alpha / (T::one() - alpha);
    let n_lag = (f.len() - 1) as u64;
    let f_max = f.max_abs();
    let tol = T::from_real(trunc.tol);

    let mut rows: Vec<Vec<T>> = f.values().iter().map(|v| vec![c0 * *v]).collect();
    let mut c = c0;
    let mut last = T::infinity();
    for k in 1..trunc.k_max {
        let kt = T::from_int(k as i64);
        c = c * (mu - kt + T::one()) / kt * q;
        let s = left_frac_sum_signal(f, kt * alpha)?;
        for (row, v) in rows.iter_mut().zip(s.values()) {
            row.push(c * *v);
        }
        if k < K_MIN || kt <= mu {
            continue;
        }
        let r = envelope_ratio(alpha, mu, k, n_lag);
        if r >= T::one() {
            continue;
        }
        last = Float::abs(c) * f_max * kernel(n_lag, kt * alpha + T::one()) * r / (T::one() - r);
        if last < tol {
            let rounding = rows
                .iter()
                .map(|row| row.iter().fold(T::zero(), |m, x| m + Float::abs(*x)))
                .fold(T::zero(), Float::max)
                * T::epsilon()
                * T::from_int(k as i64 + 2);
            let values = Signal::new(f.origin(), rows.iter().map(|row| T::sum_seq(row)).collect())?;
            return Ok(IterResult { values, k_used: k, tail_bound: last + rounding, route: IterRoute::Series });
        }
    }
    Err(Error::Convergence { k_max: trunc.k_max, tail_bound: last.to_real() })
}

fn weights_left<T: Real>(f: &Signal<T>, ord: &IterOrder<T>, cfg: &AbConfig<T>) -> Result<IterResult<T>> {
    let w = lag_weights(ord, cfg, f.len())?;
    let c0 = origin_weight(ord, cfg)?;
    let values = apply_lag_weights(f, &c0, &w)?;
    let mass = w.iter().fold(Float::abs(c0), |m, x| m + Float::abs(*x));
    let rounding = mass * f.max_abs() * T::epsilon() * T::from_int(2 * f.len() as i64);
    Ok(IterResult { values, k_used: 0, tail_bound: rounding, route: IterRoute::GeneratingFunction })
}

fn real_left<T: Real>(f: &Signal<T>, ord: &IterOrder<T>, cfg: &AbConfig<T>, trunc: &Truncation) -> Result<IterResult<T>> {
    check_alpha(ord, cfg)?;
    f.require_len(2)?;
    let (alpha, mu) = (*ord.alpha(), *ord.mu());
    let trivial = |values| Ok(IterResult { values, k_used: 0, tail_bound: T::zero(), route: IterRoute::Trivial });
    if mu == T::zero() {
        return trivial(f.clone());
    }
    if alpha == T::zero() {
        let c0 = origin_weight(ord, cfg)?;
        return trivial(f.map(|_, v| c0 * *v)?);
    }
    if let Some(n) = ord.natural() {
        let values = finite_left(f, &alpha, cfg.b_value(), n)?;
        return Ok(IterResult { values, k_used: n as usize, tail_bound: T::zero(), route: IterRoute::Finite });
    }
    if alpha == T::one() {
        let values = convention_left(f, mu)?;
        return Ok(IterResult { values, k_used: 0, tail_bound: T::zero(), route: IterRoute::Convention });
    }
    cfg.require_kernel_domain()?;
    let series = series_left(f, ord, cfg, trunc)?;
    if series.tail_bound < T::from_real(trunc.tol) {
        return Ok(series);
    }
    let weights = weights_left(f, ord, cfg)?;
    Ok(if weights.tail_bound < series.tail_bound { weights } else { series })
}

/// Left iterated operator `∇_a^{(-α,μ)} f` on the whole grid.
///
/// The series is truncated once the geometric envelope of the remaining terms
/// drops below `trunc.tol`. The reported `tail_bound` adds an estimate of the
/// rounding error; when that estimate exceeds the tolerance the result comes
/// from the lag weights instead.
pub fn iterated_left<T: Real>(f: &Signal<T>, ord: &IterOrder<T>, cfg: &AbConfig<T>, trunc: &Truncation) -> Result<IterResult<T>> {
    real_left(f, ord, cfg, trunc)
}

/// Right iterated operator `∇_b^{(-α,μ)} f`, built on right fractional sums.
pub fn iterated_right<T: Real>(f: &Signal<T>, ord: &IterOrder<T>, cfg: &AbConfig<T>, trunc: &Truncation) -> Result<IterResult<T>> {
    mirrored(f, Side::Right, |g| real_left(g, ord, cfg, trunc))
}

pub fn iterated<T: Real>(f: &Signal<T>, ord: &IterOrder<T>, cfg: &AbConfig<T>, trunc: &Truncation, side: Side) -> Result<IterResult<T>> {
    mirrored(f, side, |g| real_left(g, ord, cfg, trunc))
}

fn kernel_form_left<T: Real>(f: &Signal<T>, ord: &IterOrder<T>, cfg: &AbConfig<T>, trunc: &Truncation) -> Result<IterResult<T>> {
    check_alpha(ord, cfg)?;
    f.require_len(2)?;
    let (alpha, mu) = (*ord.alpha(), *ord.mu());
    let n_max = f.len() - 1;
    let c0 = origin_weight(ord, cfg)?;
    let mut lags: Vec<Vec<T>> = (0..n_max).map(|i| vec![if i == 0 { c0 } else { T::zero() }]).collect();
    let finite = ord.natural();
    if mu != T::zero() && alpha != T::zero() {
        if finite.is_none() {
            cfg.require_kernel_domain()?;
        }
    }
    let tol = T::from_real(trunc.tol);
    let f_max = f.max_abs();
    let q = if alpha < T::one() { alpha / (T::one() - alpha) } else { T::zero() };
    let mut c = c0;
    let mut k_used = 0;
    let mut tail = T::zero();
    let coeffs = finite.map(|n| finite_coefficients(&alpha, cfg.b_value(), n));
    let trivial = mu == T::zero() || alpha == T::zero();
    let mut k = 1;
    while !trivial {
        let kt = T::from_int(k as i64);
        match &coeffs {
            Some(cs) if k >= cs.len() => break,
            Some(cs) => c = cs[k],
            None => c = c * (mu - kt + T::one()) / kt * q,
        }
        for (lag, w) in lags.iter_mut().zip(kernel_column(n_max, kt * alpha)) {
            lag.push(c * w);
        }
        k_used = k;
        if coeffs.is_none() && k >= K_MIN && kt > mu {
            let r = envelope_ratio(alpha, mu, k, n_max as u64);
            if r < T::one() {
                tail = Float::abs(c) * f_max * kernel(n_max as u64, kt * alpha + T::one()) * r / (T::one() - r);
                if tail < tol {
                    break;
                }
            }
        }
        k += 1;
        if k >= trunc.k_max {
            return Err(Error::Convergence { k_max: trunc.k_max, tail_bound: tail.to_real() });
        }
    }
    let w: Vec<T> = lags.iter().map(|l| T::sum_seq(l)).collect();
    Ok(IterResult { values: apply_lag_weights(f, &c0, &w)?, k_used, tail_bound: tail, route: IterRoute::Series })
}

/// Kernel representation `Σ_s f(s) [c_0 δ(t - ρ(s)) + Σ_{k≥1} c_k kernel(t-s+1, kα)]`
/// with the lag weights summed term by term. Agrees with [`iterated`] for
/// `α < 1`, including the value `c_0 f(a)` at the origin of the side.
pub fn iterated_kernel_form<T: Real>(
    f: &Signal<T>,
    ord: &IterOrder<T>,
    cfg: &AbConfig<T>,
    trunc: &Truncation,
    side: Side,
) -> Result<IterResult<T>> {
    if *ord.alpha() == T::one() && *ord.mu() != T::zero() && ord.natural().is_none() {
        return Err(Error::Domain("the kernel form is not defined for alpha = 1".into()));
    }
    mirrored(f, side, |g| kernel_form_left(g, ord, cfg, trunc))
}

/// `∇^{(-α,μ)}` applied to `(t-a)^{(γ-1)}`, evaluated at `t - a = n` as
/// `Σ_k c_k Γ(γ) kernel(n, γ+kα)`. The right operator applied to
/// `(b-t)^{(γ-1)}` gives the same value at `b - t = n`.
pub fn monomial_image<T: Real>(ord: &IterOrder<T>, cfg: &AbConfig<T>, gamma: T, n: u64, trunc: &Truncation) -> Result<SeriesValue<T>> {
    check_alpha(ord, cfg)?;
    if !(gamma > T::zero()) {
        return Err(Error::Domain(format!("monomial exponent needs gamma > 0, got {gamma}")));
    }
    if n == 0 {
        return Err(Error::Domain("monomial image needs t - a >= 1".into()));
    }
    let (alpha, mu) = (*ord.alpha(), *ord.mu());
    let g = gamma.gamma();
    let exact = |value| Ok(SeriesValue { value, k_used: 0, tail_bound: T::zero() });
    if mu == T::zero() {
        return exact(g * kernel(n, gamma));
    }
    if alpha == T::zero() {
        return exact(origin_weight(ord, cfg)? * g * kernel(n, gamma));
    }
    if let Some(m) = ord.natural() {
        let terms: Vec<T> = finite_coefficients(&alpha, cfg.b_value(), m)
            .into_iter()
            .enumerate()
            .map(|(k, c)| c * g * kernel(n, gamma + T::from_int(k as i64) * alpha))
            .collect();
        return Ok(SeriesValue { value: T::sum_seq(&terms), k_used: m as usize, tail_bound: T::zero() });
    }
    if alpha == T::one() {
        return exact(g * kernel(n, gamma + mu));
    }
    cfg.require_kernel_domain()?;
    let q = alpha / (T::one() - alpha);
    let tol = T::from_real(trunc.tol);
    let mut c = origin_weight(ord, cfg)?;
    let mut terms = vec![c * g * kernel(n, gamma)];
    let mut last = T::infinity();
    for k in 1..trunc.k_max {
        let kt = T::from_int(k as i64);
        c = c * (mu - kt + T::one()) / kt * q;
        let term = c * g * kernel(n, gamma + kt * alpha);
        terms.push(term);
        if k < K_MIN || kt <= mu {
            continue;
        }
        let coeff = Float::max(T::one(), (kt - mu) / (kt + T::one())) * q;
        let r = coeff * Float::powi(T::one() + alpha / (gamma + kt * alpha), n.saturating_sub(1) as i32);
        if r < T::one() {
            last = Float::abs(term) * r / (T::one() - r);
            if last < tol {
                return Ok(SeriesValue { value: T::sum_seq(&terms), k_used: k, tail_bound: last });
            }
        }
    }
    Err(Error::Convergence { k_max: trunc.k_max, tail_bound: last.to_real() })
}

/// `sup`-norm bound of the operator on a grid with `n_max` lags.
fn operator_norm<T: Real>(ord: &IterOrder<T>, cfg: &AbConfig<T>, n_max: usize) -> Result<T> {
    let c0 = origin_weight(ord, cfg)?;
    if let Some(n) = ord.natural() {
        let alpha = *ord.alpha();
        let cs = finite_coefficients(&alpha, cfg.b_value(), n);
        return Ok(cs
            .iter()
            .enumerate()
            .map(|(k, c)| Float::abs(*c) * kernel(n_max as u64, T::from_int(k as i64) * alpha + T::one()))
            .fold(T::zero(), |s, x| s + x));
    }
    let w = lag_weights(ord, cfg, n_max)?;
    Ok(Float::max(Float::abs(c0), w.iter().fold(T::zero(), |m, x| m + Float::abs(*x))))
}

/// Applies `ord2`, then `ord1`. The tail bound of the inner result is
/// propagated through a sup-norm bound of the outer operator.
pub fn semigroup_compose<T: Real>(
    f: &Signal<T>,
    ord1: &IterOrder<T>,
    ord2: &IterOrder<T>,
    cfg: &AbConfig<T>,
    trunc: &Truncation,
    side: Side,
) -> Result<IterResult<T>> {
    if ord1.alpha() != ord2.alpha() {
        return Err(Error::AlphaMismatch(ord1.alpha().to_real(), ord2.alpha().to_real()));
    }
    let inner = iterated(f, ord2, cfg, trunc, side)?;
    let outer = iterated(&inner.values, ord1, cfg, trunc, side)?;
    let norm = if *ord1.alpha() == T::one() || *ord1.alpha() == T::zero() || *ord1.mu() == T::zero() {
        T::one()
    } else {
        operator_norm(ord1, cfg, f.len() - 1)?
    };
    Ok(IterResult {
        k_used: inner.k_used.max(outer.k_used),
        tail_bound: outer.tail_bound + norm * inner.tail_bound,
        values: outer.values,
        route: outer.route,
    })
}

/// `|Σ_{s=a+1}^{b-1} g(s) L f(s) - Σ_{s=a+1}^{b-1} f(s) R g(s)|` for the left
/// and right iterated operators `L`, `R` of the same order.
pub fn integration_by_parts_check<T: Real>(
    f: &Signal<T>,
    g: &Signal<T>,
    ord: &IterOrder<T>,
    cfg: &AbConfig<T>,
    trunc: &Truncation,
) -> Result<T> {
    f.require_same_grid(g)?;
    let lf = iterated_left(f, ord, cfg, trunc)?.values;
    let rg = iterated_right(g, ord, cfg, trunc)?.values;
    let n = f.len();
    let pairs = |x: &Signal<T>, y: &Signal<T>| -> T {
        let terms: Vec<T> = (1..n - 1).map(|i| x.values()[i] * y.values()[i]).collect();
        T::sum_seq(&terms)
    };
    Ok(Float::abs(pairs(g, &lf) - pairs(f, &rg)))
}

/// `((1-α)/B + (α/B) z^{-α})^μ` for real `z ∈ (0, 2)`.
pub fn laplace_symbol<T: Real>(ord: &IterOrder<T>, cfg: &AbConfig<T>, z: T) -> Result<T> {
    check_alpha(ord, cfg)?;
    if !(z > T::zero() && z < T::from_int(2)) {
        return Err(Error::Domain(format!("transform variable must lie in (0, 2), got {z}")));
    }
    let (alpha, mu, b) = (*ord.alpha(), *ord.mu(), *cfg.b_value());
    Ok(Float::powf((T::one() - alpha) / b + alpha / b * Float::powf(z, -alpha), mu))
}
