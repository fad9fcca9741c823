//! Truncated Laurent series with explicit precision.
//!
//! A [`TruncSeries`] stores the coefficients of `z^start, ..., z^(prec-1)`.
//! Everything at or above `prec` is unknown. Each operation computes the
//! precision its result is justified to and never pads beyond it.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use thiserror::Error;

use crate::ring::Ring;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("leading coefficient is not a unit")]
    NonUnitLeading,
    #[error("the series is zero to its precision")]
    ZeroSeries,
    #[error("series cannot be reverted: {0}")]
    NotReversible(&'static str),
    #[error("composition needs a power series composed with a series of positive valuation")]
    BadComposition,
    #[error("inexact division by {divisor} at exponent {exponent}")]
    InexactDivision { exponent: i64, divisor: BigInt },
    #[error("cannot integrate a series with a z^-1 term")]
    ResidueTerm,
}

/// A Laurent series `sum c_e z^e + O(z^prec)`.
#[derive(Clone, PartialEq)]
pub struct TruncSeries<R> {
    start: i64,
    coeffs: Vec<R>,
    prec: i64,
}

impl<R: Ring> TruncSeries<R> {
    /// Series with coefficients `coeffs[i]` at `z^(start + i)`, known up to
    /// `prec`. Missing coefficients below `prec` are zero; extra ones are
    /// dropped.
    pub fn new(start: i64, mut coeffs: Vec<R>, prec: i64) -> Self {
        let len = (prec - start).max(0) as usize;
        coeffs.truncate(len);
        coeffs.resize(len, R::zero());
        let mut s = TruncSeries {
            start: start.min(prec),
            coeffs,
            prec,
        };
        s.normalize();
        s
    }

    /// Series whose precision is exactly the end of the given coefficients.
    pub fn from_coeffs(start: i64, coeffs: Vec<R>) -> Self {
        let prec = start + coeffs.len() as i64;
        Self::new(start, coeffs, prec)
    }

    pub fn zero(prec: i64) -> Self {
        TruncSeries {
            start: prec,
            coeffs: Vec::new(),
            prec,
        }
    }

    pub fn one(prec: i64) -> Self {
        Self::monomial(R::one(), 0, prec)
    }

    /// `c z^e + O(z^prec)`.
    pub fn monomial(c: R, e: i64, prec: i64) -> Self {
        if e >= prec {
            return Self::zero(prec);
        }
        let mut coeffs = vec![R::zero(); (prec - e) as usize];
        coeffs[0] = c;
        Self::new(e, coeffs, prec)
    }

    /// The series variable `z + O(z^prec)`.
    pub fn var(prec: i64) -> Self {
        Self::monomial(R::one(), 1, prec)
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.start += lead as i64;
        }
    }

    /// Lowest exponent with a nonzero coefficient, or `None` for the zero
    /// series.
    pub fn valuation(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.start)
    }

    /// Exponent of the first stored coefficient (equals the precision for
    /// the zero series).
    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn precision(&self) -> i64 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `z^e`, or `None` when `e` is beyond the precision.
    pub fn coeff(&self, e: i64) -> Option<R> {
        if e >= self.prec {
            None
        } else if e < self.start {
            Some(R::zero())
        } else {
            Some(self.coeffs[(e - self.start) as usize].clone())
        }
    }

    fn coeff_ref(&self, e: i64) -> Option<&R> {
        if e < self.start || e >= self.prec {
            None
        } else {
            Some(&self.coeffs[(e - self.start) as usize])
        }
    }

    /// `(exponent, coefficient)` for every stored coefficient, zeros included.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &R)> {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, c)| (self.start + i as i64, c))
    }

    /// Nonzero terms only.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &R)> {
        self.iter().filter(|(_, c)| !c.is_zero())
    }

    /// Leading coefficient, if nonzero.
    pub fn leading(&self) -> Option<&R> {
        self.coeffs.first()
    }

    /// Forgets every coefficient at or above `prec`.
    pub fn truncate(&self, prec: i64) -> Self {
        if prec >= self.prec {
            return self.clone();
        }
        let keep = (prec - self.start).max(0) as usize;
        Self::new(self.start.min(prec), self.coeffs[..keep.min(self.coeffs.len())].to_vec(), prec)
    }

    /// Multiplication by `z^k`.
    pub fn shift(&self, k: i64) -> Self {
        TruncSeries {
            start: self.start + k,
            coeffs: self.coeffs.clone(),
            prec: self.prec + k,
        }
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::new(
            self.start,
            self.coeffs.iter().map(|a| a.mul_ref(c)).collect(),
            self.prec,
        )
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> TruncSeries<S> {
        TruncSeries::new(self.start, self.coeffs.iter().map(f).collect(), self.prec)
    }

    pub fn try_map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> Option<S>) -> Option<TruncSeries<S>> {
        let coeffs = self.coeffs.iter().map(f).collect::<Option<Vec<_>>>()?;
        Some(TruncSeries::new(self.start, coeffs, self.prec))
    }

    /// True when both series have the same coefficients below the smaller of
    /// their two precisions.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let prec = self.prec.min(other.prec);
        let lo = self.start.min(other.start);
        (lo..prec).all(|e| self.coeff(e) == other.coeff(e))
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        let prec = self.prec.min(other.prec);
        let start = self.start.min(other.start).min(prec);
        let mut coeffs = Vec::with_capacity((prec - start) as usize);
        for e in start..prec {
            let mut c = self.coeff_ref(e).cloned().unwrap_or_else(R::zero);
            if let Some(b) = other.coeff_ref(e) {
                if negate {
                    c.sub_assign_ref(b);
                } else {
                    c.add_assign_ref(b);
                }
            }
            coeffs.push(c);
        }
        Self::new(start, coeffs, prec)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        let start = self.start + other.start;
        let prec = (self.start + other.prec).min(other.start + self.prec);
        if prec <= start {
            return Self::zero(prec);
        }
        let len = (prec - start) as usize;
        let mut coeffs = vec![R::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                let prod = a.mul_ref(b);
                coeffs[i + j].add_assign_ref(&prod);
            }
        }
        Self::new(start, coeffs, prec)
    }

    pub fn pow(&self, mut n: u32) -> Self {
        if n == 0 {
            return Self::one((self.prec - self.start).max(0));
        }
        let mut result: Option<Self> = None;
        let mut base = self.clone();
        loop {
            if n & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => &r * &base,
                });
            }
            n >>= 1;
            if n == 0 {
                break;
            }
            base = &base * &base;
        }
        result.expect("n > 0")
    }

    /// Multiplicative inverse; the leading coefficient must be a unit.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let lead = self.leading().ok_or(SeriesError::ZeroSeries)?;
        let u = lead.inverse().ok_or(SeriesError::NonUnitLeading)?;
        let n = self.coeffs.len();
        let mut g: Vec<R> = Vec::with_capacity(n);
        g.push(u.clone());
        for k in 1..n {
            let mut acc = R::zero();
            for j in 1..=k {
                if self.coeffs[j].is_zero() {
                    continue;
                }
                acc.add_assign_ref(&self.coeffs[j].mul_ref(&g[k - j]));
            }
            g.push(-(acc.mul_ref(&u)));
        }
        Ok(Self::new(-self.start, g, -self.start + n as i64))
    }

    /// `self / other`, requiring a unit leading coefficient in `other`.
    pub fn div(&self, other: &Self) -> Result<Self, SeriesError> {
        Ok(self * &other.inverse()?)
    }

    /// Divides every coefficient by an integer, failing if any quotient is
    /// not in the ring.
    pub fn div_integer(&self, n: &BigInt) -> Result<Self, SeriesError> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (e, c) in self.iter() {
            coeffs.push(c.div_integer(n).ok_or_else(|| SeriesError::InexactDivision {
                exponent: e,
                divisor: n.clone(),
            })?);
        }
        Ok(Self::new(self.start, coeffs, self.prec))
    }

    /// `d/dz`.
    pub fn derivative(&self) -> Self {
        let coeffs: Vec<R> = self
            .iter()
            .map(|(e, c)| c.mul_ref(&R::from_i64(e)))
            .collect();
        Self::new(self.start - 1, coeffs, self.prec - 1)
    }

    /// `z d/dz`, which keeps exponents in place.
    pub fn euler_derivative(&self) -> Self {
        let coeffs: Vec<R> = self
            .iter()
            .map(|(e, c)| c.mul_ref(&R::from_i64(e)))
            .collect();
        Self::new(self.start, coeffs, self.prec)
    }

    /// Termwise antiderivative with zero constant of integration.
    pub fn integrate(&self) -> Result<Self, SeriesError> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (e, c) in self.iter() {
            if e == -1 {
                if !c.is_zero() {
                    return Err(SeriesError::ResidueTerm);
                }
                coeffs.push(R::zero());
                continue;
            }
            let d = BigInt::from(e + 1);
            coeffs.push(c.div_integer(&d).ok_or(SeriesError::InexactDivision {
                exponent: e + 1,
                divisor: d,
            })?);
        }
        Ok(Self::new(self.start + 1, coeffs, self.prec + 1))
    }

    /// `self(inner(z))`. `self` must be a power series and `inner` must have
    /// positive valuation.
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        if self.start < 0 && !self.is_zero() {
            return Err(SeriesError::BadComposition);
        }
        let v = match inner.valuation() {
            Some(v) if v >= 1 => v,
            Some(_) => return Err(SeriesError::BadComposition),
            None if inner.prec >= 1 => inner.prec,
            None => return Err(SeriesError::BadComposition),
        };
        // O(z^prec) in the outer series becomes O(z^(v * prec)).
        let target = v.saturating_mul(self.prec);
        let mut acc = Self::zero(target);
        for e in (0..self.prec).rev() {
            let c = self.coeff(e).unwrap_or_else(R::zero);
            acc = &acc * inner;
            acc = &acc + &Self::monomial(c, 0, target);
        }
        Ok(acc.truncate(target))
    }

    /// Compositional inverse of a series `a z + ...` with `a` a unit,
    /// computed by Lagrange inversion: `[z^n] g = (1/n) [z^(n-1)] (z/f)^n`.
    pub fn reversion(&self) -> Result<Self, SeriesError> {
        match self.valuation() {
            Some(1) => {}
            Some(_) | None => {
                return Err(SeriesError::NotReversible(
                    "needs zero constant term and nonzero linear term",
                ))
            }
        }
        if !self.coeffs[0].is_unit() {
            return Err(SeriesError::NotReversible("linear coefficient is not a unit"));
        }
        let n_max = self.prec;
        let h = self.shift(-1).inverse()?;
        let mut coeffs = Vec::with_capacity((n_max - 1).max(0) as usize);
        let mut hp = h.clone();
        for n in 1..n_max {
            let c = hp.coeff(n - 1).expect("within precision");
            let d = BigInt::from(n);
            coeffs.push(c.div_integer(&d).ok_or(SeriesError::InexactDivision {
                exponent: n,
                divisor: d,
            })?);
            hp = &hp * &h;
        }
        Ok(Self::new(1, coeffs, n_max))
    }

    /// Renders with the given variable name.
    pub fn display_in(&self, var: &str) -> String
    where
        R: fmt::Display,
    {
        let mut out = String::new();
        for (e, c) in self.terms() {
            let mut s = c.to_string();
            let compound = s.trim_start_matches('-').contains([' ', '+', '-', '*', '^']);
            let negative = !compound && s.starts_with('-');
            if negative {
                s.remove(0);
            }
            if compound {
                s = format!("({s})");
            }
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono = match e {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{e}"),
            };
            if mono.is_empty() {
                out.push_str(&s);
            } else if s == "1" {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{s}*{mono}"));
            }
        }
        if !out.is_empty() {
            out.push_str(" + ");
        }
        out.push_str(&format!("O({var}^{})", self.prec));
        out
    }
}

impl<R: Ring> fmt::Debug for TruncSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TruncSeries")
            .field("start", &self.start)
            .field("coeffs", &self.coeffs)
            .field("prec", &self.prec)
            .finish()
    }
}

impl<R: Ring + fmt::Display> fmt::Display for TruncSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("q"))
    }
}

impl<'a, R: Ring> Add<&'a TruncSeries<R>> for &'a TruncSeries<R> {
    type Output = TruncSeries<R>;
    fn add(self, rhs: &'a TruncSeries<R>) -> TruncSeries<R> {
        self.add_impl(rhs, false)
    }
}

impl<'a, R: Ring> Sub<&'a TruncSeries<R>> for &'a TruncSeries<R> {
    type Output = TruncSeries<R>;
    fn sub(self, rhs: &'a TruncSeries<R>) -> TruncSeries<R> {
        self.add_impl(rhs, true)
    }
}

impl<'a, R: Ring> Mul<&'a TruncSeries<R>> for &'a TruncSeries<R> {
    type Output = TruncSeries<R>;
    fn mul(self, rhs: &'a TruncSeries<R>) -> TruncSeries<R> {
        self.mul_impl(rhs)
    }
}

impl<R: Ring> Add for TruncSeries<R> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.add_impl(&rhs, false)
    }
}

impl<R: Ring> Sub for TruncSeries<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.add_impl(&rhs, true)
    }
}

impl<R: Ring> Mul for TruncSeries<R> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.mul_impl(&rhs)
    }
}

impl<R: Ring> Neg for TruncSeries<R> {
    type Output = Self;
    fn neg(self) -> Self {
        TruncSeries {
            start: self.start,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
            prec: self.prec,
        }
    }
}

impl<R: Ring> Neg for &TruncSeries<R> {
    type Output = TruncSeries<R>;
    fn neg(self) -> TruncSeries<R> {
        -self.clone()
    }
}
