//! Weierstrass curves over a polynomial ring and their formal group laws.
//!
//! Curves are written `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`. Near
//! the identity we use `z = -x/y`, `w = -1/y`, in which the curve reads
//! `w = z^3 + a1 z w + a2 z^2 w + a3 w^2 + a4 z w^2 + a6 w^3`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::expr::ExprError;
use crate::series::SeriesError;
use crate::{IntPoly, PolySeries, RatPoly, RatPolySeries, Rational};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EllipticError {
    #[error("degree {0} is too small (need at least 2)")]
    DegreeTooSmall(u32),
    #[error("w-series iteration did not stabilise after {0} passes")]
    NoConvergence(usize),
    #[error("the two p-series routes disagree at z^{0}")]
    RouteDisagreement(i64),
    #[error("non-integral coefficient at z^{0} after exponentiating")]
    DenominatorLeft(i64),
    #[error("curve is not of the form y^2 = cubic(x) (a1 and a3 must vanish)")]
    NotShortForm,
    #[error("{0} is not an odd prime")]
    BadPrime(u32),
    #[error("multiplier must be at least 1")]
    ZeroMultiplier,
    #[error(transparent)]
    Parse(#[from] ExprError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeierstrassCurve {
    pub a1: IntPoly,
    pub a2: IntPoly,
    pub a3: IntPoly,
    pub a4: IntPoly,
    pub a6: IntPoly,
}

/// `b2, b4, b6, b8, c4, c6, Δ` of a curve.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveInvariants {
    pub b2: IntPoly,
    pub b4: IntPoly,
    pub b6: IntPoly,
    pub b8: IntPoly,
    pub c4: IntPoly,
    pub c6: IntPoly,
    pub delta: IntPoly,
}

fn int(n: i64) -> IntPoly {
    IntPoly::from_i64(n)
}

impl WeierstrassCurve {
    pub fn new(a1: IntPoly, a2: IntPoly, a3: IntPoly, a4: IntPoly, a6: IntPoly) -> Self {
        WeierstrassCurve { a1, a2, a3, a4, a6 }
    }

    /// All five coefficients as independent symbols.
    pub fn generic() -> Self {
        let g = IntPoly::generators(&["a1", "a2", "a3", "a4", "a6"]);
        Self::new(g[0].clone(), g[1].clone(), g[2].clone(), g[3].clone(), g[4].clone())
    }

    /// `y^2 = x^3 + a2 x^2 + a4 x`.
    pub fn two_torsion_form() -> Self {
        let g = IntPoly::generators(&["a2", "a4"]);
        Self::new(int(0), g[0].clone(), int(0), g[1].clone(), int(0))
    }

    /// `y^2 + a1 xy + a3 y = x^3`.
    pub fn three_torsion_form() -> Self {
        let g = IntPoly::generators(&["a1", "a3"]);
        Self::new(g[0].clone(), int(0), g[1].clone(), int(0), int(0))
    }

    pub fn from_integers(a: [i64; 5]) -> Self {
        Self::new(int(a[0]), int(a[1]), int(a[2]), int(a[3]), int(a[4]))
    }

    /// Parses the five coefficients `a1 a2 a3 a4 a6` as polynomial
    /// expressions.
    pub fn parse(coeffs: [&str; 5]) -> Result<Self, EllipticError> {
        let p = |s: &str| IntPoly::parse(s);
        Ok(Self::new(p(coeffs[0])?, p(coeffs[1])?, p(coeffs[2])?, p(coeffs[3])?, p(coeffs[4])?))
    }

    pub fn coefficients(&self) -> [&IntPoly; 5] {
        [&self.a1, &self.a2, &self.a3, &self.a4, &self.a6]
    }

    pub fn invariants(&self) -> CurveInvariants {
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let b2 = a1 * a1 + int(4) * a2.clone();
        let b4 = int(2) * a4.clone() + a1 * a3;
        let b6 = a3 * a3 + int(4) * a6.clone();
        let b8 = &(a1 * a1) * a6 + int(4) * (a2 * a6) - &(a1 * a3) * a4 + &(a2 * a3) * a3 - a4 * a4;
        let c4 = &b2 * &b2 - int(24) * b4.clone();
        let c6 = -b2.pow(3) + int(36) * (&b2 * &b4) - int(216) * b6.clone();
        let delta = -(&(&b2 * &b2) * &b8) - int(8) * b4.pow(3) - int(27) * (&b6 * &b6)
            + int(9) * (&(&b2 * &b4) * &b6);
        CurveInvariants {
            b2,
            b4,
            b6,
            b8,
            c4,
            c6,
            delta,
        }
    }

    /// `w(z) = z^3 + ...` to `O(z^prec)`, by iterating the curve equation.
    pub fn w_series(&self, prec: i64) -> Result<PolySeries, EllipticError> {
        let z = PolySeries::var(prec);
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let z2 = &z * &z;
        let z3 = (&z2 * &z).truncate(prec);
        let lin = (&z.scale(a1) + &z2.scale(a2)).truncate(prec);
        let mut w = PolySeries::zero(prec);
        let cap = prec.max(0) as usize + 2;
        for _ in 0..cap {
            let ww = &w * &w;
            let next = &(&z3 + &(&lin * &w)) + &(&(&ww.scale(a3) + &(&z * &ww).scale(a4)) + &(&ww * &w).scale(a6));
            let next = next.truncate(prec);
            if next == w {
                return Ok(w);
            }
            w = next;
        }
        Err(EllipticError::NoConvergence(cap))
    }

    /// The invariant differential `ω = dx / (2y + a1 x + a3)` as a series in
    /// `z`, over the rationals.
    pub fn invariant_differential(&self, prec: i64) -> Result<RatPolySeries, EllipticError> {
        // With w = z^3 u: ω = (2u + z u') / (u (2 - a1 z - a3 z^3 u)) dz.
        let w = self.w_series(prec + 3)?;
        let u = to_rational(&w.shift(-3));
        let z = RatPolySeries::var(prec);
        let two = RatPoly::from_i64(2);
        let num = &u.scale(&two) + &(&z * &u.derivative());
        let a1 = to_rat_poly(&self.a1);
        let a3 = to_rat_poly(&self.a3);
        let inner = &(&RatPolySeries::monomial(two, 0, prec) - &z.scale(&a1))
            - &(&(&(&z * &z) * &z) * &u).scale(&a3);
        let omega = num.div(&(&u * &inner))?;
        Ok(omega.truncate(prec))
    }

    /// Formal logarithm `∫ ω` to `O(z^prec)`.
    pub fn formal_log(&self, prec: i64) -> Result<RatPolySeries, EllipticError> {
        Ok(self.invariant_differential(prec - 1)?.integrate()?)
    }

    /// `[n](z)` by `exp(n log z)` over the rationals; every denominator must
    /// cancel. Known to `O(z^(degree + 1))`.
    pub fn multiplication_series_log(&self, n: u32, degree: u32) -> Result<PolySeries, EllipticError> {
        if n == 0 {
            return Err(EllipticError::ZeroMultiplier);
        }
        let prec = degree as i64 + 1;
        let log = self.formal_log(prec)?;
        let exp = log.reversion()?;
        let scaled = log.scale(&RatPoly::from_i64(n as i64));
        let series = exp.compose(&scaled)?.truncate(prec);
        let mut coeffs = Vec::new();
        for e in series.start()..series.precision() {
            let c = series.coeff(e).unwrap_or_else(RatPoly::zero);
            let ic = c
                .try_map_coeffs(|q: &Rational| q.is_integer().then(|| q.to_integer()))
                .ok_or(EllipticError::DenominatorLeft(e))?;
            coeffs.push(ic);
        }
        Ok(PolySeries::new(series.start(), coeffs, series.precision()))
    }

    /// Hasse invariant for `y^2 = f(x)` and an odd prime `p`: the
    /// coefficient of `x^(p-1)` in `f^((p-1)/2)`, reduced mod `p`.
    pub fn hasse_invariant(&self, p: u32) -> Result<IntPoly, EllipticError> {
        if !self.a1.is_zero() || !self.a3.is_zero() {
            return Err(EllipticError::NotShortForm);
        }
        if p < 3 || !is_prime(p) {
            return Err(EllipticError::BadPrime(p));
        }
        // f(x) as a list of coefficients of x^0..x^3.
        let f = [self.a6.clone(), self.a4.clone(), self.a2.clone(), int(1)];
        let mut acc = vec![int(1)];
        for _ in 0..(p - 1) / 2 {
            let mut next = vec![int(0); acc.len() + 3];
            for (i, x) in acc.iter().enumerate() {
                for (j, y) in f.iter().enumerate() {
                    next[i + j] = next[i + j].clone() + x * y;
                }
            }
            acc = next;
        }
        let c = acc.get(p as usize - 1).cloned().unwrap_or_else(|| int(0));
        Ok(c.reduce_mod(&BigInt::from(p)))
    }

    /// The formal group law to total degree `degree`.
    pub fn formal_group_law(&self, degree: u32) -> Result<FormalGroupLaw, EllipticError> {
        FormalGroupLaw::new(self, degree)
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn to_rat_poly(p: &IntPoly) -> RatPoly {
    p.map_coeffs(|c| Rational::from_integer(c.clone()))
}

fn to_rational(s: &PolySeries) -> RatPolySeries {
    s.map_coeffs(to_rat_poly)
}

/// `F(z1, z2)` for a Weierstrass curve, truncated at total degree `degree`.
#[derive(Debug, Clone, PartialEq)]
pub struct FormalGroupLaw {
    degree: u32,
    /// Coefficient of `z1^i z2^j`, as a polynomial in the curve coefficients.
    coeffs: BTreeMap<(u32, u32), IntPoly>,
}

impl FormalGroupLaw {
    fn new(curve: &WeierstrassCurve, degree: u32) -> Result<Self, EllipticError> {
        if degree < 2 {
            return Err(EllipticError::DegreeTooSmall(degree));
        }
        let n = degree as i64;
        let w = curve.w_series(n + 2)?;
        let z1 = IntPoly::var("z1");
        let z2 = IntPoly::var("z2");
        let prec = n + 1;

        // Substitute z_i -> z_i t; everything below is a series in t.
        let mut lambda = Vec::new();
        let mut w1 = Vec::new();
        for k in 0..=n + 1 {
            let a = w.coeff(k).unwrap_or_else(IntPoly::zero);
            w1.push(&a * &z1.pow(k as u32));
            if k >= 1 {
                // (z2^k - z1^k) / (z2 - z1) = Σ z1^i z2^(k-1-i)
                let mut h = IntPoly::zero();
                for i in 0..k as u32 {
                    h = h + &z1.pow(i) * &z2.pow(k as u32 - 1 - i);
                }
                lambda.push(&a * &h);
            }
        }
        let lambda = PolySeries::new(0, lambda, prec);
        let w1 = PolySeries::new(0, w1, prec + 1);
        let t = PolySeries::var(prec + 1);
        let nu = &w1 - &(&lambda * &t).scale(&z1);

        let c = |p: &IntPoly| p.clone();
        let (a1, a2, a3, a4, a6) = (c(&curve.a1), c(&curve.a2), c(&curve.a3), c(&curve.a4), c(&curve.a6));
        let l2 = &lambda * &lambda;
        let l3 = &l2 * &lambda;
        let num = &(&(&lambda.scale(&a1) + &nu.scale(&a2)) + &l2.scale(&a3))
            + &(&(&lambda * &nu).scale(&(int(2) * a4.clone())) + &(&l2 * &nu).scale(&(int(3) * a6.clone())));
        let den = &(&(&PolySeries::one(prec) + &lambda.scale(&a2)) + &l2.scale(&a4)) + &l3.scale(&a6);
        let z_sum = (&t.scale(&z1) + &t.scale(&z2)).truncate(prec);
        let z3 = -&(&z_sum + &num.div(&den)?);
        let w3 = &(&lambda * &z3) + &nu;
        // Negation: (z, w) -> -z / (1 - a1 z - a3 w).
        let neg_den = &(&PolySeries::one(prec) - &z3.scale(&a1)) - &w3.scale(&a3);
        let f = (-&z3).div(&neg_den)?.truncate(prec);

        let mut coeffs = BTreeMap::new();
        for (k, poly) in f.terms() {
            let k = k as u32;
            for i in 0..=k {
                let c = poly.coefficient_in("z1", i).coefficient_in("z2", k - i).compact();
                if !c.is_zero() {
                    coeffs.insert((i, k - i), c);
                }
            }
        }
        Ok(FormalGroupLaw { degree, coeffs })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Coefficient of `z1^i z2^j`.
    pub fn coeff(&self, i: u32, j: u32) -> IntPoly {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_else(IntPoly::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &IntPoly)> {
        self.coeffs.iter().map(|(k, v)| (*k, v))
    }

    /// `F` as a single polynomial in `z1`, `z2` and the curve coefficients.
    pub fn as_poly(&self) -> IntPoly {
        let mut out = IntPoly::zero();
        for (&(i, j), c) in &self.coeffs {
            out = out + c.mul_monomial(&[("z1", i), ("z2", j)]);
        }
        out
    }

    /// `F(x, y)` for series of positive valuation.
    pub fn eval(&self, x: &PolySeries, y: &PolySeries) -> PolySeries {
        let prec = x.precision().min(y.precision()).min(self.degree as i64 + 1);
        let x = x.truncate(prec);
        let y = y.truncate(prec);
        let n = self.degree;
        let mut xpow = vec![PolySeries::one(prec)];
        for i in 1..=n as usize {
            let next = (&xpow[i - 1] * &x).truncate(prec);
            xpow.push(next);
        }
        // Horner in y over the polynomials Σ_i c_ij x^i.
        let mut acc = PolySeries::zero(prec);
        for j in (0..=n).rev() {
            let mut inner = PolySeries::zero(prec);
            for i in 0..=(n - j) {
                if let Some(c) = self.coeffs.get(&(i, j)) {
                    inner = &inner + &xpow[i as usize].scale(c);
                }
            }
            acc = (&(&acc * &y) + &inner).truncate(prec);
        }
        acc
    }

    /// `[n](z)` by repeated formal addition, known to `O(z^(degree + 1))`.
    pub fn multiplication_series(&self, n: u32) -> Result<PolySeries, EllipticError> {
        if n == 0 {
            return Err(EllipticError::ZeroMultiplier);
        }
        let z = PolySeries::var(self.degree as i64 + 1);
        let mut acc = z.clone();
        for _ in 1..n {
            acc = self.eval(&z, &acc);
        }
        Ok(acc)
    }
}

/// `[p](z)` computed by both routes; errors if they differ.
pub fn p_series(curve: &WeierstrassCurve, p: u32, degree: u32) -> Result<PolySeries, EllipticError> {
    let a = curve.formal_group_law(degree)?.multiplication_series(p)?;
    let b = curve.multiplication_series_log(p, degree)?;
    if a != b {
        let e = (a.start().min(b.start())..a.precision())
            .find(|&e| a.coeff(e) != b.coeff(e))
            .unwrap_or(a.precision());
        return Err(EllipticError::RouteDisagreement(e));
    }
    Ok(a)
}

/// Smallest `u` in `1..p` with `a ≡ u b (mod p)`, if any.
pub fn unit_relating(a: &IntPoly, b: &IntPoly, p: u32) -> Option<u32> {
    let m = BigInt::from(p);
    let a = a.reduce_mod(&m);
    (1..p).find(|&u| (b.scale(&BigInt::from(u))).reduce_mod(&m) == a)
}

/// The two candidate discriminants for `y^2 = x^3 + a2 x^2 + a4 x`: the
/// general formula, and `a2^2 b4^2 - 16 b4^3` with `b4 = 2 a4`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscriminantComparison {
    pub general: IntPoly,
    pub alternative: IntPoly,
    pub difference: IntPoly,
}

impl DiscriminantComparison {
    pub fn agree(&self) -> bool {
        self.difference.is_zero()
    }
}

pub fn two_torsion_discriminants() -> DiscriminantComparison {
    let curve = WeierstrassCurve::two_torsion_form();
    let inv = curve.invariants();
    let b4 = &inv.b4;
    let alternative = &(&curve.a2 * &curve.a2) * &(b4 * b4) - int(16) * b4.pow(3);
    let difference = inv.delta.clone() - alternative.clone();
    DiscriminantComparison {
        general: inv.delta,
        alternative,
        difference,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn poly(s: &str) -> IntPoly {
        IntPoly::parse(s).unwrap()
    }

    #[test]
    fn symbolic_identities() {
        let inv = WeierstrassCurve::generic().invariants();
        let lhs = inv.c4.pow(3) - inv.c6.pow(2);
        assert_eq!(lhs, int(1728) * inv.delta.clone());
        assert_eq!(int(4) * inv.b8.clone(), &inv.b2 * &inv.b6 - &inv.b4 * &inv.b4);
    }

    #[test]
    fn three_torsion_discriminant() {
        let inv = WeierstrassCurve::three_torsion_form().invariants();
        assert_eq!(inv.delta, poly("a1^3 a3^3 - 27 a3^4"));
        assert_eq!(inv.b4, poly("a1 a3"));
        assert_eq!(inv.b6, poly("a3^2"));
        assert_eq!(inv.delta, inv.b4.pow(3) - int(27) * inv.b6.pow(2));
        assert_eq!(inv.delta.to_string(), "a1^3*a3^3 - 27*a3^4");
    }

    #[test]
    fn two_torsion_discriminant() {
        let cmp = two_torsion_discriminants();
        assert_eq!(cmp.general, poly("16 a4^2 (a2^2 - 4 a4)"));
        assert_eq!(cmp.alternative, poly("4 a2^2 a4^2 - 128 a4^3"));
        assert!(!cmp.agree());
    }

    #[test]
    fn w_series_leading_terms() {
        let w = WeierstrassCurve::generic().w_series(6).unwrap();
        assert_eq!(w.coeff(3), Some(int(1)));
        assert_eq!(w.coeff(4), Some(poly("a1")));
        assert_eq!(w.coeff(5), Some(poly("a1^2 + a2")));
    }

    #[test]
    fn invariant_differential_leading_terms() {
        let om = WeierstrassCurve::generic().invariant_differential(3).unwrap();
        assert_eq!(om.coeff(0), Some(RatPoly::from_i64(1)));
        assert_eq!(om.coeff(1), Some(to_rat_poly(&poly("a1"))));
        assert_eq!(om.coeff(2), Some(to_rat_poly(&poly("a1^2 + a2"))));
    }

    #[test]
    fn low_degree_terms() {
        let f = WeierstrassCurve::generic().formal_group_law(3).unwrap();
        assert_eq!(f.coeff(1, 0), int(1));
        assert_eq!(f.coeff(0, 1), int(1));
        assert_eq!(f.coeff(1, 1), poly("-a1"));
        assert_eq!(f.coeff(2, 0), int(0));
        assert_eq!(f.coeff(2, 1), poly("-a2"));
        assert_eq!(f.coeff(1, 2), poly("-a2"));
        assert!(matches!(
            WeierstrassCurve::generic().formal_group_law(1),
            Err(EllipticError::DegreeTooSmall(1))
        ));
    }

    fn axioms_hold(f: &FormalGroupLaw) -> bool {
        let n = f.degree() as i64 + 1;
        let t = PolySeries::var(n);
        let x = t.scale(&IntPoly::var("z1"));
        let y = t.scale(&IntPoly::var("z2"));
        let z = t.scale(&IntPoly::var("z3"));
        let zero = PolySeries::zero(n);
        let unit = f.eval(&x, &zero) == x && f.eval(&zero, &y) == y;
        let comm = f.eval(&x, &y) == f.eval(&y, &x);
        let assoc = f.eval(&f.eval(&x, &y), &z) == f.eval(&x, &f.eval(&y, &z));
        unit && comm && assoc
    }

    #[test]
    fn axioms_symbolic() {
        let f = WeierstrassCurve::generic().formal_group_law(8).unwrap();
        assert!(axioms_hold(&f));
        for (i, j) in [(1, 0), (0, 1)] {
            assert_eq!(f.coeff(i, j), int(1));
        }
        for k in 2..=8 {
            assert!(f.coeff(k, 0).is_zero());
        }
        assert!(f.as_poly().num_terms() > 100);
    }

    #[test]
    fn axiom_check_rejects_perturbed_law() {
        let mut f = WeierstrassCurve::generic().formal_group_law(5).unwrap();
        for key in [(2, 1), (1, 2)] {
            let c = f.coeff(key.0, key.1) + int(1);
            f.coeffs.insert(key, c);
        }
        assert!(!axioms_hold(&f));
    }

    #[test]
    fn axioms_random_integer_curves() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let a: [i64; 5] = std::array::from_fn(|_| rng.gen_range(-6..=6));
            let f = WeierstrassCurve::from_integers(a).formal_group_law(15).unwrap();
            assert!(axioms_hold(&f), "curve {a:?}");
        }
    }

    #[test]
    fn small_multiples() {
        let curve = WeierstrassCurve::generic();
        let f = curve.formal_group_law(4).unwrap();
        let one = f.multiplication_series(1).unwrap();
        assert_eq!(one, PolySeries::var(5));
        let two = f.multiplication_series(2).unwrap();
        assert_eq!(two.coeff(1), Some(int(2)));
        assert_eq!(two.coeff(2), Some(poly("-a1")));
        assert_eq!(curve.multiplication_series_log(2, 4).unwrap(), two);
    }

    #[test]
    fn routes_agree_to_degree_30() {
        for curve in [WeierstrassCurve::two_torsion_form(), WeierstrassCurve::three_torsion_form()] {
            for p in [2, 3] {
                let s = p_series(&curve, p, 30).unwrap();
                assert_eq!(s.precision(), 31);
            }
        }
    }

    #[test]
    fn three_series_detects_a2() {
        let curve = WeierstrassCurve::two_torsion_form();
        let s = p_series(&curve, 3, 6).unwrap();
        let three = BigInt::from(3);
        assert_eq!(s.coeff(1), Some(int(3)));
        assert_eq!(s.coeff(2), Some(int(0)));
        let c3 = s.coeff(3).unwrap();
        assert_eq!(c3, poly("-8 a2"));
        let hasse = curve.hasse_invariant(3).unwrap();
        assert_eq!(hasse, poly("a2"));
        assert_eq!(c3.reduce_mod(&three), hasse);
        assert_eq!(unit_relating(&c3, &hasse, 3), Some(1));
    }

    #[test]
    fn hasse_examples() {
        let g = IntPoly::generators(&["a4"]);
        let no_a2 = WeierstrassCurve::new(int(0), int(0), int(0), g[0].clone(), int(0));
        assert!(no_a2.hasse_invariant(3).unwrap().is_zero());
        assert_eq!(no_a2.hasse_invariant(5).unwrap(), poly("2 a4"));
        assert_eq!(
            WeierstrassCurve::three_torsion_form().hasse_invariant(3),
            Err(EllipticError::NotShortForm)
        );
        assert_eq!(
            WeierstrassCurve::two_torsion_form().hasse_invariant(2),
            Err(EllipticError::BadPrime(2))
        );
    }

    #[test]
    fn hasse_matches_p_series_at_five() {
        let curve = WeierstrassCurve::two_torsion_form();
        let s = p_series(&curve, 5, 6).unwrap();
        let hasse = curve.hasse_invariant(5).unwrap();
        let five = BigInt::from(5);
        for e in 2..5 {
            assert!(s.coeff(e).unwrap().reduce_mod(&five).is_zero());
        }
        assert!(unit_relating(&s.coeff(5).unwrap(), &hasse, 5).is_some());
    }
}
