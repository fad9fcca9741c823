//! Weight-zero Hecke operators, the polynomials `j_n`, and the forms
//! `Δ^n j_n` built from them.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::modforms::{ModFormError, MfPoly, TmfCertificate};
use crate::qseries::{self, QSeriesError};
use crate::series::SeriesError;
use crate::QExpansion;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoonshineError {
    #[error("index must be at least 1")]
    ZeroIndex,
    #[error("precision {have} is too small: {reason}")]
    InsufficientPrecision { have: i64, reason: &'static str },
    #[error(transparent)]
    QSeries(#[from] QSeriesError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    ModForm(#[from] ModFormError),
}

/// A polynomial `Σ α_k j^k` with integer coefficients, `α_0` first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JPolynomial {
    coeffs: Vec<BigInt>,
}

impl JPolynomial {
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigInt::zero());
        }
        JPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    /// The value at `j = 0`, i.e. at a primitive cube root of unity.
    pub fn constant_term(&self) -> &BigInt {
        &self.coeffs[0]
    }

    /// Substitutes a q-expansion for `j` (Horner).
    pub fn eval(&self, j: &QExpansion) -> QExpansion {
        // Constants are exact; give them room so they never cap the result.
        let room = j.precision().max(0) + 1;
        let mut iter = self.coeffs.iter().rev();
        let mut acc = QExpansion::monomial(iter.next().unwrap().clone(), 0, room);
        for c in iter {
            acc = &(&acc * j) + &QExpansion::monomial(c.clone(), 0, room);
        }
        acc
    }

    /// `Δ^n P(j)` for `n = deg P`, rewritten through `jΔ = c4^3`.
    pub fn times_delta_power(&self) -> MfPoly {
        let n = self.degree() as u32;
        let mut out = MfPoly::zero(12 * n);
        for (k, a) in self.coeffs.iter().enumerate() {
            let k = k as u32;
            out = &out + &MfPoly::monomial(a.clone(), (3 * k, 0, n - k));
        }
        out
    }
}

impl fmt::Display for JPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() && !(first && k == 0) {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let var = match k {
                0 => String::new(),
                1 => "j".to_string(),
                _ => format!("j^{k}"),
            };
            match (var.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{var}")?,
                (false, false) => write!(f, "{mag}*{var}")?,
            }
        }
        Ok(())
    }
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// The weight-zero Hecke operator, acting on coefficients by
/// `Σ_{ad=n} d Σ_{d | m} c(m) q^{am/d}` (no normalizing `1/n`, so that
/// `q^-1` goes to `q^-n`).
pub fn hecke_weight0(f: &QExpansion, n: u64) -> Result<QExpansion, MoonshineError> {
    if n == 0 {
        return Err(MoonshineError::ZeroIndex);
    }
    let prec = f.precision();
    let start = f.start();
    // For each (a, d) the first unknown input exponent divisible by d is
    // d * ceil(prec / d), which lands at a * ceil(prec / d).
    let out_prec = divisors(n)
        .into_iter()
        .map(|a| {
            let d = (n / a) as i64;
            a as i64 * Integer::div_ceil(&prec, &d)
        })
        .min()
        .unwrap();
    let out_start = start.min(0) * n as i64;
    if out_prec <= out_start {
        return Err(MoonshineError::InsufficientPrecision {
            have: prec,
            reason: "Hecke image would carry no coefficients",
        });
    }
    let mut coeffs = vec![BigInt::zero(); (out_prec - out_start) as usize];
    for a in divisors(n) {
        let d = n / a;
        let (a, d) = (a as i64, d as i64);
        for (m, c) in f.terms() {
            if m.rem_euclid(d) != 0 {
                continue;
            }
            let e = a * m / d;
            if e < out_prec {
                coeffs[(e - out_start) as usize] += c * d;
            }
        }
    }
    Ok(QExpansion::new(out_start, coeffs, out_prec))
}

/// The unique monic `P` of degree `n` with `P(j) = q^-n + O(q)`, together
/// with its expansion to `O(q^prec)`.
pub fn faber_jn(n: u32, prec: i64) -> Result<(JPolynomial, QExpansion), MoonshineError> {
    if prec < 1 {
        return Err(MoonshineError::InsufficientPrecision {
            have: prec,
            reason: "need at least O(q) to certify the shape",
        });
    }
    // j^n with j known to O(q^P) is known to O(q^{P+1-n}).
    let j = qseries::j_qexp(prec + n as i64)?;
    let mut powers = vec![QExpansion::one(prec), j.clone()];
    for m in 2..=n as usize {
        let next = &powers[m - 1] * &j;
        powers.push(next);
    }
    let powers: Vec<QExpansion> = powers.into_iter().map(|p| p.truncate(prec)).collect();
    let mut alpha = vec![BigInt::zero(); n as usize + 1];
    alpha[n as usize] = BigInt::one();
    let mut expansion = powers[n as usize].clone();
    for m in (0..n).rev() {
        let c = expansion.coeff(-(m as i64)).unwrap_or_default();
        if c.is_zero() {
            continue;
        }
        expansion = &expansion - &powers[m as usize].scale(&c);
        alpha[m as usize] -= c;
    }
    Ok((JPolynomial::from_coeffs(alpha), expansion))
}

/// `j_n(ω)`: the constant coefficient of the polynomial `j_n`.
pub fn jn_at_omega(n: u32) -> Result<BigInt, MoonshineError> {
    if n == 0 {
        return Err(MoonshineError::ZeroIndex);
    }
    Ok(faber_jn(n, 1)?.0.constant_term().clone())
}

/// Outcome of comparing `c6/c4`, `-q j'/j` and `Σ j_n(ω) q^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct GenfunReport {
    pub ratio: QExpansion,
    pub log_derivative: QExpansion,
    pub series_agree: bool,
    /// `+1` or `-1`, fixed by the `q^1` coefficient.
    pub sign: i32,
    /// Indices `n` where the `q^n` coefficient differs from `sign * j_n(ω)`.
    pub mismatches: Vec<(u32, BigInt, BigInt)>,
}

impl GenfunReport {
    pub fn passed(&self) -> bool {
        self.series_agree && self.mismatches.is_empty()
    }
}

/// Checks the generating function of `j_n(ω)` through `q^n_max`.
pub fn genfun_check(n_max: u32) -> Result<GenfunReport, MoonshineError> {
    if n_max == 0 {
        return Err(MoonshineError::ZeroIndex);
    }
    let prec = n_max as i64 + 1;
    let ratio = qseries::c6(prec)?.div(&qseries::c4(prec)?)?;
    let j = qseries::j_qexp(prec)?;
    let log_derivative = (-&j.euler_derivative().div(&j)?).truncate(prec);
    let series_agree = ratio == log_derivative;

    let omega: Vec<BigInt> = (1..=n_max).map(jn_at_omega).collect::<Result<_, _>>()?;
    let first = ratio.coeff(1).unwrap_or_default();
    let sign = if first == omega[0] { 1 } else { -1 };
    let mut mismatches = Vec::new();
    for (idx, w) in omega.into_iter().enumerate() {
        let n = idx as u32 + 1;
        let c = ratio.coeff(n as i64).unwrap_or_default();
        if c != &w * sign {
            mismatches.push((n, c, w));
        }
    }
    Ok(GenfunReport {
        ratio,
        log_derivative,
        series_agree,
        sign,
        mismatches,
    })
}

/// `Δ^n j_n` as a polynomial in `c4` and `Δ`.
pub fn witten_form(n: u32) -> Result<MfPoly, MoonshineError> {
    if n == 0 {
        return Err(MoonshineError::ZeroIndex);
    }
    Ok(faber_jn(n, 1)?.0.times_delta_power())
}

/// Runs the tmf image test on `Δ^n j_n`.
pub fn witten_generalized(n: u32) -> Result<TmfCertificate, MoonshineError> {
    Ok(witten_form(n)?.tmf_image_test()?)
}
