//! Classical nabla operators on grid signals: backward and forward
//! differences, left and right fractional sums, the Riemann–Liouville
//! fractional difference and the nabla convolution.

use num_traits::Float;

use crate::error::{Error, Result};
use crate::scalar::{Real, Scalar};
use crate::signal::Signal;
use crate::special_fn::{gen_binomial, kernel_column};

/// Order `μ > 0` of a fractional sum.
#[derive(Debug, Clone, PartialEq)]
pub struct FracOrder<T>(T);

impl<T: Scalar> FracOrder<T> {
    pub fn new(mu: T) -> Result<Self> {
        if !(mu > T::zero()) || !mu.is_finite_value() {
            return Err(Error::Domain(format!("fractional order must be positive, got {mu:?}")));
        }
        Ok(Self(mu))
    }

    pub fn get(&self) -> &T {
        &self.0
    }
}

/// Backward difference `∇f(t) = f(t) - f(t-1)` on `{a+1, ..., b}`.
pub fn nabla<T: Scalar>(f: &Signal<T>) -> Result<Signal<T>> {
    f.require_len(2)?;
    let v = f.values();
    Signal::new(
        f.origin() + 1,
        v.windows(2).map(|w| w[1].clone() - w[0].clone()).collect(),
    )
}

/// Forward difference `Δf(s) = f(s+1) - f(s)` on `{a, ..., b-1}`.
pub fn delta<T: Scalar>(f: &Signal<T>) -> Result<Signal<T>> {
    f.require_len(2)?;
    let v = f.values();
    Signal::new(
        f.origin(),
        v.windows(2).map(|w| w[1].clone() - w[0].clone()).collect(),
    )
}

/// `Σ_{s=a+1}^{t} w[t-s] f(s)`; `weights[0]` is the lag-one weight.
pub(crate) fn left_weighted<T: Scalar>(f: &Signal<T>, weights: &[T], t: i64) -> T {
    let a = f.origin();
    let vals = f.values();
    let terms: Vec<T> = ((a + 1)..=t)
        .map(|s| weights[(t - s) as usize].clone() * vals[(s - a) as usize].clone())
        .collect();
    T::sum_seq(&terms)
}

/// `Σ_{s=t}^{b-1} w[s-t] f(s)`.
pub(crate) fn right_weighted<T: Scalar>(f: &Signal<T>, weights: &[T], t: i64) -> T {
    let a = f.origin();
    let b = f.horizon();
    let vals = f.values();
    let terms: Vec<T> = (t..b)
        .map(|s| weights[(s - t) as usize].clone() * vals[(s - a) as usize].clone())
        .collect();
    T::sum_seq(&terms)
}

fn check_left_point<T: Scalar>(f: &Signal<T>, t: i64) -> Result<()> {
    if t < f.origin() + 1 || t > f.horizon() {
        return Err(Error::Range { t, lo: f.origin() + 1, hi: f.horizon() });
    }
    Ok(())
}

fn check_right_point<T: Scalar>(f: &Signal<T>, t: i64) -> Result<()> {
    if t < f.origin() || t > f.horizon() - 1 {
        return Err(Error::Range { t, lo: f.origin(), hi: f.horizon() - 1 });
    }
    Ok(())
}

/// Left nabla fractional sum `∇_a^{-μ} f(t)` for `a+1 ≤ t ≤ b`.
pub fn left_frac_sum<T: Scalar>(f: &Signal<T>, mu: &FracOrder<T>, t: i64) -> Result<T> {
    check_left_point(f, t)?;
    let w = kernel_column((t - f.origin()) as usize, mu.get().clone());
    Ok(left_weighted(f, &w, t))
}

/// Right nabla fractional sum `∇_b^{-μ} f(t)` for `a ≤ t ≤ b-1`.
pub fn right_frac_sum<T: Scalar>(f: &Signal<T>, mu: &FracOrder<T>, t: i64) -> Result<T> {
    check_right_point(f, t)?;
    let w = kernel_column((f.horizon() - t) as usize, mu.get().clone());
    Ok(right_weighted(f, &w, t))
}

/// Left fractional sum of order `ν ≥ 0` on the whole grid. At `t = a` the sum
/// is empty (zero); order zero is the identity, including at the origin.
pub fn left_frac_sum_signal<T: Scalar>(f: &Signal<T>, nu: T) -> Result<Signal<T>> {
    if nu == T::zero() {
        return Ok(f.clone());
    }
    if nu < T::zero() {
        return Err(Error::Domain(format!("fractional sum order must be nonnegative, got {nu:?}")));
    }
    let w = kernel_column(f.len(), nu);
    let a = f.origin();
    Signal::new(a, f.grid().map(|t| left_weighted(f, &w, t)).collect())
}

/// Right fractional sum of order `ν ≥ 0` on the whole grid (zero at `t = b`).
pub fn right_frac_sum_signal<T: Scalar>(f: &Signal<T>, nu: T) -> Result<Signal<T>> {
    if nu == T::zero() {
        return Ok(f.clone());
    }
    if nu < T::zero() {
        return Err(Error::Domain(format!("fractional sum order must be nonnegative, got {nu:?}")));
    }
    let w = kernel_column(f.len(), nu);
    Signal::new(f.origin(), f.grid().map(|t| right_weighted(f, &w, t)).collect())
}

fn ceil_order<T: Real>(mu: T) -> Result<(u64, T)> {
    if !(mu > T::zero()) || !Float::is_finite(mu) {
        return Err(Error::Domain(format!("difference order must be positive, got {mu}")));
    }
    let n = Float::ceil(mu);
    Ok((n.to_real() as u64, n - mu))
}

/// Riemann–Liouville nabla fractional difference `∇^n ∇_a^{-(n-μ)} f(t)`
/// with `n = ⌈μ⌉`, defined for `t - a ≥ n`.
pub fn rl_frac_diff_left<T: Real>(f: &Signal<T>, mu: T, t: i64) -> Result<T> {
    let (n, rest) = ceil_order(mu)?;
    let lo = f.origin() + n as i64;
    if t < lo || t > f.horizon() {
        return Err(Error::Range { t, lo, hi: f.horizon() });
    }
    let g = left_frac_sum_signal(f, rest)?;
    let terms: Vec<T> = (0..=n)
        .map(|j| {
            let sign = if j % 2 == 0 { T::one() } else { -T::one() };
            sign * gen_binomial(T::from_int(n as i64), j) * g.value(t - j as i64).unwrap()
        })
        .collect();
    Ok(T::sum_seq(&terms))
}

/// Right Riemann–Liouville difference `(-Δ)^n ∇_b^{-(n-μ)} f(t)`, `b - t ≥ n`.
pub fn rl_frac_diff_right<T: Real>(f: &Signal<T>, mu: T, t: i64) -> Result<T> {
    let (n, rest) = ceil_order(mu)?;
    let hi = f.horizon() - n as i64;
    if t < f.origin() || t > hi {
        return Err(Error::Range { t, lo: f.origin(), hi });
    }
    let g = right_frac_sum_signal(f, rest)?;
    let terms: Vec<T> = (0..=n)
        .map(|j| {
            let sign = if j % 2 == 0 { T::one() } else { -T::one() };
            sign * gen_binomial(T::from_int(n as i64), j) * g.value(t + j as i64).unwrap()
        })
        .collect();
    Ok(T::sum_seq(&terms))
}

/// Nabla convolution `(f∗g)(v) = Σ_{s=a+1}^{v} g(v - ρ(s) + a) f(s)`.
///
/// Both signals must share the origin; the result lives on the common grid
/// and is zero (empty sum) at `v = a`.
pub fn convolve<T: Scalar>(f: &Signal<T>, g: &Signal<T>) -> Result<Signal<T>> {
    if f.origin() != g.origin() {
        return Err(Error::OriginMismatch(f.origin(), g.origin()));
    }
    let a = f.origin();
    let b = f.horizon().min(g.horizon());
    let gv = g.values();
    // g(v - s + 1 + a) for s = a+1..=v is g at lag index v - s + 1
    let weights: Vec<T> = gv[1..].to_vec();
    Signal::from_fn(a, b, |v| {
        if v == a {
            T::zero()
        } else {
            left_weighted(f, &weights, v)
        }
    })
}
