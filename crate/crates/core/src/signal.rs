//! Real-valued functions tabulated on an integer grid `{a, a+1, ..., b}`.

use std::io::{Read, Write};
use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::scalar::{Real, Scalar};

/// A function on `{a, ..., b}` stored as a dense array.
///
/// Operators that produce a value on a sub-grid (`{a+1, ..., b}` for left
/// operators, `{a, ..., b-1}` for right ones) still return a full-grid signal;
/// the extra point carries the empty-sum value of the operator there.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal<T> {
    origin: i64,
    values: Vec<T>,
}

impl<T: Scalar> Signal<T> {
    pub fn new(origin: i64, values: Vec<T>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Length { needed: 1, got: 0 });
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite_value()) {
            return Err(Error::NonFinite(origin + i as i64));
        }
        Ok(Self { origin, values })
    }

    /// Tabulates `f` on `{a, ..., b}`.
    pub fn from_fn(a: i64, b: i64, mut f: impl FnMut(i64) -> T) -> Result<Self> {
        if b < a {
            return Err(Error::Domain(format!("empty grid {a}..={b}")));
        }
        Self::new(a, (a..=b).map(&mut f).collect())
    }

    pub fn constant(a: i64, b: i64, c: T) -> Result<Self> {
        Self::from_fn(a, b, |_| c.clone())
    }

    pub fn zeros(a: i64, b: i64) -> Result<Self> {
        Self::constant(a, b, T::zero())
    }

    pub fn origin(&self) -> i64 {
        self.origin
    }

    pub fn horizon(&self) -> i64 {
        self.origin + self.values.len() as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn grid(&self) -> RangeInclusive<i64> {
        self.origin..=self.horizon()
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    pub fn at(&self, t: i64) -> Option<&T> {
        if t < self.origin {
            return None;
        }
        self.values.get((t - self.origin) as usize)
    }

    pub fn value(&self, t: i64) -> Result<T> {
        self.at(t).cloned().ok_or(Error::Range {
            t,
            lo: self.origin,
            hi: self.horizon(),
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &T)> + '_ {
        let a = self.origin;
        self.values.iter().enumerate().map(move |(i, v)| (a + i as i64, v))
    }

    pub fn map(&self, mut f: impl FnMut(i64, &T) -> T) -> Result<Self> {
        Self::new(self.origin, self.iter().map(|(t, v)| f(t, v)).collect())
    }

    /// `t ↦ f(a + b - t)` on the same grid; swaps left and right operators.
    pub fn reflect(&self) -> Self {
        let mut values = self.values.clone();
        values.reverse();
        Self { origin: self.origin, values }
    }

    /// Pointwise linear combination `x f + y g` of signals on the same grid.
    pub fn combine(&self, x: T, other: &Self, y: T) -> Result<Self> {
        self.require_same_grid(other)?;
        Self::new(
            self.origin,
            self.values
                .iter()
                .zip(&other.values)
                .map(|(f, g)| x.clone() * f.clone() + y.clone() * g.clone())
                .collect(),
        )
    }

    pub fn require_same_grid(&self, other: &Self) -> Result<()> {
        if self.origin != other.origin || self.len() != other.len() {
            return Err(Error::GridMismatch(format!(
                "{}..={} vs {}..={}",
                self.origin,
                self.horizon(),
                other.origin,
                other.horizon()
            )));
        }
        Ok(())
    }

    pub(crate) fn require_len(&self, needed: usize) -> Result<()> {
        if self.len() < needed {
            return Err(Error::Length { needed, got: self.len() });
        }
        Ok(())
    }

    /// Largest absolute pointwise difference over `lo..=hi`.
    pub fn max_gap_on(&self, other: &Self, lo: i64, hi: i64) -> Result<T> {
        let mut worst = T::zero();
        for t in lo..=hi {
            let d = (self.value(t)? - other.value(t)?).magnitude();
            if d > worst {
                worst = d;
            }
        }
        Ok(worst)
    }

    pub fn max_abs(&self) -> T {
        self.values.iter().fold(T::zero(), |m, v| {
            let a = v.magnitude();
            if a > m {
                a
            } else {
                m
            }
        })
    }
}

impl<T: Real> Signal<T> {
    /// Reads the `t,value` CSV format. Rows must cover consecutive `t`.
    pub fn read_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let headers = rdr.headers()?.clone();
        if headers.len() != 2 || &headers[0] != "t" || &headers[1] != "value" {
            return Err(Error::Parse(format!(
                "expected header `t,value`, found `{}`",
                headers.iter().collect::<Vec<_>>().join(",")
            )));
        }
        let mut origin = None;
        let mut values = Vec::new();
        for (row, rec) in rdr.records().enumerate() {
            let rec = rec?;
            let t: i64 = rec[0]
                .parse()
                .map_err(|e| Error::Parse(format!("row {}: bad t `{}`: {e}", row + 1, &rec[0])))?;
            let v: f64 = rec[1]
                .parse()
                .map_err(|e| Error::Parse(format!("row {}: bad value `{}`: {e}", row + 1, &rec[1])))?;
            let a = *origin.get_or_insert(t);
            if t != a + values.len() as i64 {
                return Err(Error::Parse(format!(
                    "row {}: expected t = {}, found {t}",
                    row + 1,
                    a + values.len() as i64
                )));
            }
            values.push(T::from_real(v));
        }
        match origin {
            Some(a) => Self::new(a, values),
            None => Err(Error::Parse("no data rows".into())),
        }
    }

    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(writer);
        wtr.write_record(["t", "value"])?;
        for (t, v) in self.iter() {
            wtr.write_record([t.to_string(), v.to_string()])?;
        }
        wtr.flush()?;
        Ok(())
    }
}
