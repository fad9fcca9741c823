//! The graded ring `Z[c4, c6, Δ] / (c6^2 - c4^3 + 1728 Δ)` of integral
//! level-one modular forms, and the divisibility test that cuts out the
//! image of the homotopy of tmf inside it.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::expr::{self, ExprError};
use crate::qseries::{self, QSeriesError};
use crate::{QExpansion, RatSeries, Rational};

/// Exponents `(i, j, k)` of the monomial `c4^i c6^j Δ^k`.
pub type Exponents = (u32, u32, u32);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModFormError {
    #[error(transparent)]
    Parse(#[from] ExprError),
    #[error("unknown symbol `{0}` (expected c4, c6 or Delta)")]
    UnknownSymbol(String),
    #[error("negative power of `{0}` is not a modular form")]
    NegativeExponent(String),
    #[error("expression is not homogeneous (weights {0} and {1} both occur)")]
    Inhomogeneous(u32, u32),
    #[error("there are no nonzero modular forms of weight {0}")]
    EmptyWeight(u32),
    #[error("q-expansion has a pole (valuation {0})")]
    Pole(i64),
    #[error("non-integral coefficient at q^{0}")]
    NonIntegral(i64),
    #[error("not a modular form of weight {weight}: nonzero remainder at q^{exponent}")]
    NonzeroRemainder { weight: u32, exponent: i64 },
    #[error("precision {have} is too small for weight {weight} (need at least {need})")]
    InsufficientPrecision { weight: u32, have: i64, need: i64 },
    #[error(transparent)]
    QSeries(#[from] QSeriesError),
}

pub fn monomial_weight((i, j, k): Exponents) -> u32 {
    4 * i + 6 * j + 12 * k
}

/// An integer polynomial in `c4`, `c6`, `Δ`.
///
/// `weight` is `Some(w)` when every term has weight `w`; the zero form of a
/// given weight keeps its tag. Sums of mixed weight carry `None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MfPoly {
    terms: BTreeMap<Exponents, BigInt>,
    weight: Option<u32>,
}

impl MfPoly {
    pub fn zero(weight: u32) -> Self {
        MfPoly {
            terms: BTreeMap::new(),
            weight: Some(weight),
        }
    }

    pub fn monomial(c: impl Into<BigInt>, e: Exponents) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        MfPoly {
            terms,
            weight: Some(monomial_weight(e)),
        }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, (0, 0, 0))
    }

    pub fn c4() -> Self {
        Self::monomial(1, (1, 0, 0))
    }

    pub fn c6() -> Self {
        Self::monomial(1, (0, 1, 0))
    }

    pub fn delta() -> Self {
        Self::monomial(1, (0, 0, 1))
    }

    /// Collects terms; the weight tag is inferred (`None` for an empty or
    /// mixed-weight input).
    pub fn from_terms<I: IntoIterator<Item = (Exponents, BigInt)>>(terms: I) -> Self {
        let mut map = BTreeMap::new();
        for (e, c) in terms {
            *map.entry(e).or_insert_with(BigInt::zero) += c;
        }
        map.retain(|_, c: &mut BigInt| !c.is_zero());
        let weight = infer_weight(&map);
        MfPoly { terms: map, weight }
    }

    /// Parses an expression in `c4`, `c6` and `Delta`, e.g.
    /// `c4^3 - 744*Delta`. Homogeneity is enforced.
    pub fn parse(text: &str) -> Result<Self, ModFormError> {
        let mut out = BTreeMap::new();
        for (c, factors) in expr::parse_polynomial(text)? {
            let mut e = (0u32, 0u32, 0u32);
            for (name, pow) in factors {
                if pow < 0 {
                    return Err(ModFormError::NegativeExponent(name));
                }
                let pow = pow as u32;
                match name.as_str() {
                    "c4" => e.0 += pow,
                    "c6" => e.1 += pow,
                    "Delta" | "delta" => e.2 += pow,
                    _ => return Err(ModFormError::UnknownSymbol(name)),
                }
            }
            *out.entry(e).or_insert_with(BigInt::zero) += c;
        }
        out.retain(|_, c: &mut BigInt| !c.is_zero());
        let p = MfPoly {
            weight: infer_weight(&out),
            terms: out,
        };
        p.check_homogeneous()?;
        Ok(p)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Exponents, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: Exponents) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn weight(&self) -> Option<u32> {
        self.weight
    }

    pub fn is_homogeneous(&self) -> bool {
        self.weight.is_some() || self.terms.is_empty()
    }

    fn check_homogeneous(&self) -> Result<(), ModFormError> {
        let mut seen: Option<u32> = None;
        for e in self.terms.keys() {
            let w = monomial_weight(*e);
            match seen {
                Some(v) if v != w => return Err(ModFormError::Inhomogeneous(v.min(w), v.max(w))),
                _ => seen = Some(w),
            }
        }
        Ok(())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v *= c;
        }
        out.terms.retain(|_, v| !v.is_zero());
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = MfPoly::constant(1);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Eliminates `c6^2` using `c6^2 = c4^3 - 1728 Δ`, so every term has
    /// `c6`-exponent at most one.
    pub fn normal_form(&self) -> Self {
        let mut out: BTreeMap<Exponents, BigInt> = BTreeMap::new();
        for (&(i, j, k), c) in &self.terms {
            let (m, r) = (j / 2, j % 2);
            // (c4^3 - 1728 Δ)^m = Σ_t binom(m, t) c4^{3(m-t)} (-1728 Δ)^t
            let mut binom = BigInt::one();
            for t in 0..=m {
                let term = &binom * BigInt::from(-1728).pow(t) * c;
                *out.entry((i + 3 * (m - t), r, k + t)).or_insert_with(BigInt::zero) += term;
                binom = binom * (m - t) / (t + 1);
            }
        }
        out.retain(|_, c| !c.is_zero());
        MfPoly {
            terms: out,
            weight: self.weight,
        }
    }

    pub fn is_normal(&self) -> bool {
        self.terms.keys().all(|&(_, j, _)| j <= 1)
    }

    /// q-expansion to `O(q^n)`.
    pub fn to_qexp(&self, n: i64) -> Result<QExpansion, ModFormError> {
        let mut cache = QexpCache::new(n)?;
        let mut acc = QExpansion::zero(n);
        for (&e, c) in &self.terms {
            acc = &acc + &cache.monomial(e).scale(c);
        }
        Ok(acc.truncate(n))
    }

    /// Decomposes an integral q-expansion of the given weight over the basis
    /// `c4^i c6^j Δ^k` with `j <= 1`.
    pub fn from_qexp(f: &QExpansion, weight: u32) -> Result<Self, ModFormError> {
        Self::from_rational_qexp(&f.map_coeffs(|c| Rational::from_integer(c.clone())), weight)
    }

    /// As [`MfPoly::from_qexp`], checking along the way that every
    /// coefficient that matters is integral.
    pub fn from_rational_qexp(f: &RatSeries, weight: u32) -> Result<Self, ModFormError> {
        let basis = basis(weight);
        if basis.is_empty() {
            return Err(ModFormError::EmptyWeight(weight));
        }
        let kmax = (weight / 12) as i64;
        if f.precision() <= kmax {
            return Err(ModFormError::InsufficientPrecision {
                weight,
                have: f.precision(),
                need: kmax + 1,
            });
        }
        if let Some(v) = f.valuation() {
            if v < 0 {
                return Err(ModFormError::Pole(v));
            }
        }
        for (e, c) in f.terms() {
            if !c.is_integer() {
                return Err(ModFormError::NonIntegral(e));
            }
        }
        let n = f.precision();
        let mut rem = f.map_coeffs(|c| c.to_integer());
        let mut cache = QexpCache::new(n)?;
        let mut out = MfPoly::zero(weight);
        for e in basis {
            let k = e.2 as i64;
            let c = rem.coeff(k).unwrap_or_default();
            if c.is_zero() {
                continue;
            }
            // Leading term of c4^i c6^j Δ^k is q^k with coefficient 1.
            rem = &rem - &cache.monomial(e).scale(&c);
            out.terms.insert(e, c);
        }
        if let Some(v) = rem.truncate(n).valuation() {
            return Err(ModFormError::NonzeroRemainder {
                weight,
                exponent: v,
            });
        }
        Ok(out)
    }

    /// Sum of the `Δ`-free coefficients, i.e. the constant term of the
    /// q-expansion, together with the weight.
    pub fn bo_constant_term(&self) -> Result<(BigInt, u32), ModFormError> {
        self.check_homogeneous()?;
        let a0 = self
            .terms
            .iter()
            .filter(|(e, _)| e.2 == 0)
            .fold(BigInt::zero(), |acc, (_, c)| acc + c);
        Ok((a0, self.weight.unwrap_or(0)))
    }

    /// Tests membership in the image of the homotopy of tmf.
    pub fn tmf_image_test(&self) -> Result<TmfCertificate, ModFormError> {
        self.check_homogeneous()?;
        let nf = self.normal_form();
        let verdicts: Vec<Verdict> = nf
            .terms
            .iter()
            .map(|(&e, c)| {
                let required = required_divisor(e);
                let (q, r) = c.div_rem(&required);
                Verdict {
                    exponents: e,
                    coefficient: c.clone(),
                    required,
                    quotient: r.is_zero().then_some(q),
                }
            })
            .collect();
        let member = verdicts.iter().all(|v| v.passes());
        Ok(TmfCertificate {
            form: nf,
            verdicts,
            member,
        })
    }
}

fn infer_weight(terms: &BTreeMap<Exponents, BigInt>) -> Option<u32> {
    let mut ws = terms.keys().map(|e| monomial_weight(*e));
    let first = ws.next()?;
    ws.all(|w| w == first).then_some(first)
}

/// Basis exponents of weight `w`, ordered by increasing `Δ`-power.
pub fn basis(weight: u32) -> Vec<Exponents> {
    if weight % 2 == 1 {
        return Vec::new();
    }
    (0..=weight / 12)
        .filter_map(|k| {
            let rest = weight - 12 * k;
            if rest.is_multiple_of(4) {
                Some((rest / 4, 0, k))
            } else if rest >= 6 {
                Some(((rest - 6) / 4, 1, k))
            } else {
                None
            }
        })
        .collect()
}

/// Divisor a coefficient of `c4^i c6^j Δ^k` must carry for the monomial to
/// lie in the image: 1 for `i > 0, j = 0`, 2 for `j = 1`, and
/// `24 / gcd(24, k)` for pure powers of `Δ`.
pub fn required_divisor((i, j, k): Exponents) -> BigInt {
    let d = if j == 1 {
        2
    } else if i > 0 || k == 0 {
        1
    } else {
        24 / 24u32.gcd(&k)
    };
    BigInt::from(d)
}

struct QexpCache {
    n: i64,
    c4: QExpansion,
    c6: QExpansion,
    delta: QExpansion,
    powers: BTreeMap<Exponents, QExpansion>,
}

impl QexpCache {
    fn new(n: i64) -> Result<Self, ModFormError> {
        let n = n.max(1);
        Ok(QexpCache {
            n,
            c4: qseries::c4(n)?,
            c6: qseries::c6(n)?,
            delta: qseries::discriminant_qexp(n)?,
            powers: BTreeMap::new(),
        })
    }

    fn monomial(&mut self, e: Exponents) -> QExpansion {
        if let Some(s) = self.powers.get(&e) {
            return s.clone();
        }
        let (i, j, k) = e;
        let mut s = QExpansion::one(self.n);
        for (base, pow) in [(&self.c4, i), (&self.c6, j), (&self.delta, k)] {
            if pow > 0 {
                s = &s * &base.pow(pow);
            }
        }
        let s = s.truncate(self.n);
        self.powers.insert(e, s.clone());
        s
    }
}

/// Per-monomial outcome of the image test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub exponents: Exponents,
    pub coefficient: BigInt,
    pub required: BigInt,
    /// `coefficient / required` when the division is exact.
    pub quotient: Option<BigInt>,
}

impl Verdict {
    pub fn passes(&self) -> bool {
        self.quotient.is_some()
    }
}

/// Witness for (non)membership: the normal-form decomposition and one
/// verdict per monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TmfCertificate {
    pub form: MfPoly,
    pub verdicts: Vec<Verdict>,
    pub member: bool,
}

impl TmfCertificate {
    pub fn failing(&self) -> impl Iterator<Item = &Verdict> {
        self.verdicts.iter().filter(|v| !v.passes())
    }
}

impl fmt::Display for TmfCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "form: {}", self.form)?;
        for v in &self.verdicts {
            let mono = monomial_name(v.exponents);
            match &v.quotient {
                Some(q) => writeln!(f, "  {mono}: coefficient {} = {} * {q}  ok", v.coefficient, v.required)?,
                None => writeln!(
                    f,
                    "  {mono}: coefficient {} not divisible by {}  FAIL",
                    v.coefficient, v.required
                )?,
            }
        }
        write!(f, "verdict: {}", if self.member { "member" } else { "non-member" })
    }
}

pub fn monomial_name((i, j, k): Exponents) -> String {
    let mut parts = Vec::new();
    for (name, e) in [("c4", i), ("c6", j), ("Delta", k)] {
        match e {
            0 => {}
            1 => parts.push(name.to_string()),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

impl fmt::Display for MfPoly {
    /// Terms by increasing `Δ`-power, e.g. `c4^3 - 744*Delta`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<&Exponents> = self.terms.keys().collect();
        keys.sort_by_key(|&&(i, j, k)| (k, std::cmp::Reverse((i, j))));
        for (n, e) in keys.into_iter().enumerate() {
            let c = &self.terms[e];
            let name = monomial_name(*e);
            let mag = c.abs();
            if n == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            if name == "1" {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{name}")?;
            } else {
                write!(f, "{mag}*{name}")?;
            }
        }
        Ok(())
    }
}

fn combine(a: &MfPoly, b: &MfPoly, sign: i32) -> MfPoly {
    let mut terms = a.terms.clone();
    for (e, c) in &b.terms {
        let slot = terms.entry(*e).or_insert_with(BigInt::zero);
        if sign < 0 {
            *slot -= c;
        } else {
            *slot += c;
        }
    }
    terms.retain(|_, c| !c.is_zero());
    let weight = match (a.weight, b.weight) {
        (Some(x), Some(y)) if x == y => Some(x),
        (Some(x), _) if b.terms.is_empty() => Some(x),
        (_, Some(y)) if a.terms.is_empty() => Some(y),
        _ => infer_weight(&terms),
    };
    MfPoly { terms, weight }
}

impl<'a> Add<&'a MfPoly> for &'a MfPoly {
    type Output = MfPoly;
    fn add(self, rhs: &MfPoly) -> MfPoly {
        combine(self, rhs, 1)
    }
}

impl<'a> Sub<&'a MfPoly> for &'a MfPoly {
    type Output = MfPoly;
    fn sub(self, rhs: &MfPoly) -> MfPoly {
        combine(self, rhs, -1)
    }
}

impl<'a> Mul<&'a MfPoly> for &'a MfPoly {
    type Output = MfPoly;
    fn mul(self, rhs: &MfPoly) -> MfPoly {
        let mut terms = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                let e = (a.0 + b.0, a.1 + b.1, a.2 + b.2);
                *terms.entry(e).or_insert_with(BigInt::zero) += x * y;
            }
        }
        terms.retain(|_, c: &mut BigInt| !c.is_zero());
        let weight = match (self.weight, rhs.weight) {
            (Some(x), Some(y)) => Some(x + y),
            _ => infer_weight(&terms),
        };
        MfPoly { terms, weight }
    }
}

impl Add for MfPoly {
    type Output = MfPoly;
    fn add(self, rhs: MfPoly) -> MfPoly {
        &self + &rhs
    }
}

impl Sub for MfPoly {
    type Output = MfPoly;
    fn sub(self, rhs: MfPoly) -> MfPoly {
        &self - &rhs
    }
}

impl Mul for MfPoly {
    type Output = MfPoly;
    fn mul(self, rhs: MfPoly) -> MfPoly {
        &self * &rhs
    }
}

impl Neg for MfPoly {
    type Output = MfPoly;
    fn neg(self) -> MfPoly {
        self.scale(&BigInt::from(-1))
    }
}
