//! q-expansions of the classical level-one forms.
//!
//! Normalizations: `c4 = 1 + 240 Σ σ3(n) q^n`, `c6 = 1 - 504 Σ σ5(n) q^n`,
//! `Δ = (c4^3 - c6^2) / 1728 = q - 24 q^2 + ...` and `j = c4^3 / Δ`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::series::SeriesError;
use crate::QExpansion;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QSeriesError {
    #[error("divisor sums need n >= 1")]
    ZeroArgument,
    #[error("no Eisenstein series of weight {0} is provided (use 4 or 6)")]
    UnsupportedWeight(u32),
    #[error("precision must be at least 1")]
    PrecisionTooSmall,
    #[error("exactness failure: {0}")]
    Inexact(#[from] SeriesError),
}

/// `σ_k(n) = Σ_{d | n} d^k`.
pub fn sigma(k: u32, n: u64) -> Result<BigInt, QSeriesError> {
    if n == 0 {
        return Err(QSeriesError::ZeroArgument);
    }
    let mut total = BigInt::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            total += BigInt::from(d).pow(k);
            let e = n / d;
            if e != d {
                total += BigInt::from(e).pow(k);
            }
        }
        d += 1;
    }
    Ok(total)
}

fn check_precision(n: i64) -> Result<(), QSeriesError> {
    if n < 1 {
        Err(QSeriesError::PrecisionTooSmall)
    } else {
        Ok(())
    }
}

/// Normalized Eisenstein series of weight 4 or 6 to `O(q^n)`.
pub fn eisenstein(weight: u32, n: i64) -> Result<QExpansion, QSeriesError> {
    check_precision(n)?;
    let (factor, k) = match weight {
        4 => (BigInt::from(240), 3),
        6 => (BigInt::from(-504), 5),
        w => return Err(QSeriesError::UnsupportedWeight(w)),
    };
    let mut coeffs = Vec::with_capacity(n as usize);
    coeffs.push(BigInt::one());
    for m in 1..n as u64 {
        coeffs.push(&factor * sigma(k, m)?);
    }
    Ok(QExpansion::new(0, coeffs, n))
}

pub fn c4(n: i64) -> Result<QExpansion, QSeriesError> {
    eisenstein(4, n)
}

pub fn c6(n: i64) -> Result<QExpansion, QSeriesError> {
    eisenstein(6, n)
}

/// `Δ = (c4^3 - c6^2) / 1728`, with the division checked to be exact.
pub fn discriminant_qexp(n: i64) -> Result<QExpansion, QSeriesError> {
    check_precision(n)?;
    let a = c4(n)?;
    let b = c6(n)?;
    let diff = &a.pow(3) - &b.pow(2);
    Ok(diff.div_integer(&BigInt::from(1728))?)
}

/// `Δ = q Π_{m >= 1} (1 - q^m)^24`.
pub fn discriminant_eta_product(n: i64) -> Result<QExpansion, QSeriesError> {
    check_precision(n)?;
    // The product is needed to relative precision n - 1.
    let rel = n - 1;
    let mut prod = vec![BigInt::zero(); rel.max(0) as usize];
    if rel > 0 {
        prod[0] = BigInt::one();
    }
    for m in 1..rel.max(0) as usize {
        // multiply in place by (1 - q^m)
        for e in (m..prod.len()).rev() {
            let sub = prod[e - m].clone();
            prod[e] -= sub;
        }
    }
    let eta = QExpansion::new(0, prod, rel);
    Ok(eta.pow(24).shift(1))
}

/// `j = c4^3 / Δ = q^-1 + 744 + 196884 q + ...` to `O(q^n)`.
pub fn j_qexp(n: i64) -> Result<QExpansion, QSeriesError> {
    check_precision(n)?;
    // Dividing by Δ (valuation 1) costs two orders of precision.
    let work = n + 2;
    let num = c4(work)?.pow(3);
    let delta = discriminant_qexp(work)?;
    Ok(num.div(&delta)?.truncate(n))
}

/// `j - 744`, the normalized Hauptmodul.
pub fn j1_qexp(n: i64) -> Result<QExpansion, QSeriesError> {
    let j = j_qexp(n)?;
    Ok(&j - &QExpansion::monomial(BigInt::from(744), 0, n))
}
