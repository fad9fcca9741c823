//! Sparse multivariate polynomials.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::expr::{self, ExprError};
use crate::ring::Ring;

/// Exponent vector, one entry per variable of the owning polynomial.
pub type Monomial = Vec<u32>;

/// A polynomial in named variables with coefficients in `R`.
///
/// Terms are kept in a sparse map from exponent vectors to nonzero
/// coefficients. Two polynomials over different variable lists can be
/// combined freely: the result lives over the union of both lists.
#[derive(Clone)]
pub struct MPoly<R> {
    vars: Arc<[String]>,
    terms: BTreeMap<Monomial, R>,
}

impl<R: Ring> MPoly<R> {
    /// The polynomial with no terms over the given variables.
    pub fn zero_in(vars: &[&str]) -> Self {
        MPoly {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    /// All variables of a ring as polynomials sharing one variable list.
    pub fn generators(vars: &[&str]) -> Vec<Self> {
        let shared: Arc<[String]> = vars.iter().map(|s| s.to_string()).collect();
        (0..vars.len())
            .map(|i| {
                let mut exps = vec![0; vars.len()];
                exps[i] = 1;
                MPoly {
                    vars: shared.clone(),
                    terms: BTreeMap::from([(exps, R::one())]),
                }
            })
            .collect()
    }

    pub fn var(name: &str) -> Self {
        MPoly {
            vars: Arc::from(vec![name.to_string()]),
            terms: BTreeMap::from([(vec![1], R::one())]),
        }
    }

    pub fn constant(c: R) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        MPoly {
            vars: Arc::from(Vec::<String>::new()),
            terms,
        }
    }

    pub fn from_i64(n: i64) -> Self {
        Self::constant(R::from_i64(n))
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs; like terms
    /// are combined and zero coefficients dropped.
    ///
    /// Panics if an exponent vector has the wrong length.
    pub fn from_terms<I>(vars: &[&str], terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, R)>,
    {
        let mut p = Self::zero_in(vars);
        for (m, c) in terms {
            assert_eq!(m.len(), vars.len(), "exponent vector length mismatch");
            p.add_term(m, c);
        }
        p
    }

    /// Parses an integer-coefficient expression such as `a1^3*a3^3 - 27*a3^4`.
    pub fn parse(text: &str) -> Result<Self, ExprError> {
        let terms = expr::parse_polynomial(text)?;
        let mut names: Vec<String> = Vec::new();
        for (_, factors) in &terms {
            for (name, _) in factors {
                if !names.contains(name) {
                    names.push(name.clone());
                }
            }
        }
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let mut p = Self::zero_in(&refs);
        for (coeff, factors) in terms {
            let mut m = vec![0u32; names.len()];
            for (name, e) in factors {
                if e < 0 {
                    return Err(ExprError::NegativeExponent(name));
                }
                let idx = names.iter().position(|n| *n == name).unwrap();
                m[idx] += e as u32;
            }
            p.add_term(m, R::from_integer(&coeff));
        }
        Ok(p)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &R)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.iter().all(|&e| e == 0))
    }

    pub fn constant_term(&self) -> R {
        self.terms
            .iter()
            .find(|(m, _)| m.iter().all(|&e| e == 0))
            .map(|(_, c)| c.clone())
            .unwrap_or_else(R::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn degree_in(&self, name: &str) -> u32 {
        match self.var_index(name) {
            Some(i) => self.terms.keys().map(|m| m[i]).max().unwrap_or(0),
            None => 0,
        }
    }

    /// Coefficient of a monomial given as `(name, exponent)` pairs; variables
    /// not mentioned must have exponent zero.
    pub fn coeff_of(&self, factors: &[(&str, u32)]) -> R {
        let mut m = vec![0u32; self.vars.len()];
        for &(name, e) in factors {
            match self.var_index(name) {
                Some(i) => m[i] = e,
                None if e == 0 => {}
                None => return R::zero(),
            }
        }
        self.terms.get(&m).cloned().unwrap_or_else(R::zero)
    }

    /// The coefficient of `name^k`, as a polynomial in the other variables.
    pub fn coefficient_in(&self, name: &str, k: u32) -> Self {
        let Some(i) = self.var_index(name) else {
            return if k == 0 { self.clone() } else { Self::zero_like(self) };
        };
        let mut out = Self::zero_like(self);
        for (m, c) in &self.terms {
            if m[i] == k {
                let mut m2 = m.clone();
                m2[i] = 0;
                out.terms.insert(m2, c.clone());
            }
        }
        out
    }

    fn zero_like(other: &Self) -> Self {
        MPoly {
            vars: other.vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    fn add_term(&mut self, m: Monomial, c: R) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                o.get_mut().add_assign_ref(&c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Re-expresses `self` over a variable list that contains all of its
    /// variables.
    fn widen(&self, vars: &Arc<[String]>) -> Self {
        if Arc::ptr_eq(&self.vars, vars) || *self.vars == **vars {
            return MPoly {
                vars: vars.clone(),
                terms: self.terms.clone(),
            };
        }
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v).expect("variable present"))
            .collect();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut m2 = vec![0u32; vars.len()];
                for (j, &e) in m.iter().enumerate() {
                    m2[map[j]] = e;
                }
                (m2, c.clone())
            })
            .collect();
        MPoly {
            vars: vars.clone(),
            terms,
        }
    }

    fn union_vars(a: &Arc<[String]>, b: &Arc<[String]>) -> Arc<[String]> {
        if Arc::ptr_eq(a, b) || a == b {
            return a.clone();
        }
        if b.iter().all(|v| a.contains(v)) {
            return a.clone();
        }
        if a.iter().all(|v| b.contains(v)) {
            return b.clone();
        }
        let mut out: Vec<String> = a.to_vec();
        for v in b.iter() {
            if !out.contains(v) {
                out.push(v.clone());
            }
        }
        Arc::from(out)
    }

    fn aligned<'a>(&'a self, other: &'a Self) -> (std::borrow::Cow<'a, Self>, std::borrow::Cow<'a, Self>) {
        use std::borrow::Cow;
        if Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars {
            return (Cow::Borrowed(self), Cow::Borrowed(other));
        }
        let vars = Self::union_vars(&self.vars, &other.vars);
        let a = if Arc::ptr_eq(&vars, &self.vars) {
            Cow::Borrowed(self)
        } else {
            Cow::Owned(self.widen(&vars))
        };
        let b = if Arc::ptr_eq(&vars, &other.vars) {
            Cow::Borrowed(other)
        } else {
            Cow::Owned(other.widen(&vars))
        };
        (a, b)
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &R) -> Self {
        let mut out = Self::zero_like(self);
        for (m, a) in &self.terms {
            let v = a.mul_ref(c);
            if !v.is_zero() {
                out.terms.insert(m.clone(), v);
            }
        }
        out
    }

    /// Multiplies by a single monomial given as `(name, exponent)` pairs.
    pub fn mul_monomial(&self, factors: &[(&str, u32)]) -> Self {
        let mut mono = Self::constant(R::one());
        for &(name, e) in factors {
            mono = mono * Self::var(name).pow(e);
        }
        self.mul_ref(&mono)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(R::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }

    /// Substitutes polynomials for variables. Variables without a
    /// replacement are kept.
    pub fn substitute(&self, replacements: &[(&str, Self)]) -> Self {
        let mut out = Self::zero_like(self);
        for (m, c) in &self.terms {
            let mut term = Self::constant(c.clone());
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = &self.vars[i];
                let factor = match replacements.iter().find(|(n, _)| n == name) {
                    Some((_, r)) => r.pow(e),
                    None => Self::var(name).pow(e),
                };
                term = term.mul_ref(&factor);
            }
            out = out + term;
        }
        out
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> MPoly<S> {
        self.try_map_coeffs(|c| Some(f(c))).expect("infallible map")
    }

    /// Applies `f` to each coefficient, failing if any call fails.
    pub fn try_map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> Option<S>) -> Option<MPoly<S>> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let v = f(c)?;
            if !v.is_zero() {
                terms.insert(m.clone(), v);
            }
        }
        Some(MPoly {
            vars: self.vars.clone(),
            terms,
        })
    }

    /// Drops variables that appear in no term.
    pub fn compact(&self) -> Self {
        let used: Vec<usize> = (0..self.vars.len())
            .filter(|&i| self.terms.keys().any(|m| m[i] > 0))
            .collect();
        if used.len() == self.vars.len() {
            return self.clone();
        }
        let vars: Arc<[String]> = used.iter().map(|&i| self.vars[i].clone()).collect();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (used.iter().map(|&i| m[i]).collect(), c.clone()))
            .collect();
        MPoly { vars, terms }
    }
}

impl MPoly<BigInt> {
    /// Reduces coefficients to their least non-negative residues mod `p`.
    pub fn reduce_mod(&self, p: &BigInt) -> Self {
        self.map_coeffs(|c| crate::ring::residue(c, p))
    }
}

impl<R: Ring> PartialEq for MPoly<R> {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.aligned(other);
        a.terms == b.terms
    }
}

impl<R: Ring> fmt::Debug for MPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly(")?;
        write_poly(f, self, |c| format!("{:?}", c))?;
        write!(f, ")")
    }
}

impl<R: Ring + fmt::Display> fmt::Display for MPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self, |c| c.to_string())
    }
}

fn write_poly<R: Ring>(
    f: &mut fmt::Formatter<'_>,
    p: &MPoly<R>,
    show: impl Fn(&R) -> String,
) -> fmt::Result {
    if p.terms.is_empty() {
        return write!(f, "0");
    }
    // Highest total degree first; ties broken by descending exponent vector.
    let mut terms: Vec<_> = p.terms.iter().collect();
    terms.sort_by(|(a, _), (b, _)| {
        let da: u32 = a.iter().sum();
        let db: u32 = b.iter().sum();
        db.cmp(&da).then_with(|| b.cmp(a))
    });
    for (idx, (m, c)) in terms.into_iter().enumerate() {
        let mut coeff = show(c);
        let negative = coeff.starts_with('-');
        if negative {
            coeff.remove(0);
        }
        if idx == 0 {
            if negative {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if negative { '-' } else { '+' })?;
        }
        let factors: Vec<String> = m
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    p.vars[i].clone()
                } else {
                    format!("{}^{}", p.vars[i], e)
                }
            })
            .collect();
        let unit = coeff == "1";
        let needs_parens = coeff.contains(['+', '-', ' ']);
        let coeff = if needs_parens { format!("({coeff})") } else { coeff };
        match (factors.is_empty(), unit) {
            (true, _) => write!(f, "{coeff}")?,
            (false, true) => write!(f, "{}", factors.join("*"))?,
            (false, false) => write!(f, "{}*{}", coeff, factors.join("*"))?,
        }
    }
    Ok(())
}

impl<R: Ring> Add for MPoly<R> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let vars = Self::union_vars(&self.vars, &rhs.vars);
        let mut out = if Arc::ptr_eq(&vars, &self.vars) { self } else { self.widen(&vars) };
        let rhs = if Arc::ptr_eq(&vars, &rhs.vars) { rhs } else { rhs.widen(&vars) };
        for (m, c) in rhs.terms {
            out.add_term(m, c);
        }
        out
    }
}

impl<R: Ring> Neg for MPoly<R> {
    type Output = Self;
    fn neg(self) -> Self {
        MPoly {
            vars: self.vars,
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl<R: Ring> Sub for MPoly<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<R: Ring> Mul for MPoly<R> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl<'a, R: Ring> Mul<&'a MPoly<R>> for &'a MPoly<R> {
    type Output = MPoly<R>;
    fn mul(self, rhs: &'a MPoly<R>) -> MPoly<R> {
        self.mul_ref(rhs)
    }
}

impl<R: Ring> Zero for MPoly<R> {
    fn zero() -> Self {
        MPoly {
            vars: Arc::from(Vec::<String>::new()),
            terms: BTreeMap::new(),
        }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<R: Ring> One for MPoly<R> {
    fn one() -> Self {
        Self::constant(R::one())
    }
}

impl<R: Ring> Ring for MPoly<R> {
    fn mul_ref(&self, rhs: &Self) -> Self {
        let (a, b) = self.aligned(rhs);
        let mut terms: BTreeMap<Monomial, R> = BTreeMap::new();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let m: Monomial = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                let c = ca.mul_ref(cb);
                match terms.entry(m) {
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(c);
                    }
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        o.get_mut().add_assign_ref(&c);
                    }
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        MPoly {
            vars: a.vars.clone(),
            terms,
        }
    }

    fn add_assign_ref(&mut self, rhs: &Self) {
        if Arc::ptr_eq(&self.vars, &rhs.vars) || self.vars == rhs.vars {
            for (m, c) in &rhs.terms {
                self.add_term(m.clone(), c.clone());
            }
        } else {
            let lhs = std::mem::replace(self, Self::zero());
            *self = lhs + rhs.clone();
        }
    }

    fn sub_assign_ref(&mut self, rhs: &Self) {
        if Arc::ptr_eq(&self.vars, &rhs.vars) || self.vars == rhs.vars {
            for (m, c) in &rhs.terms {
                self.add_term(m.clone(), -c.clone());
            }
        } else {
            let lhs = std::mem::replace(self, Self::zero());
            *self = lhs - rhs.clone();
        }
    }

    fn from_integer(n: &BigInt) -> Self {
        Self::constant(R::from_integer(n))
    }

    fn div_integer(&self, n: &BigInt) -> Option<Self> {
        self.try_map_coeffs(|c| c.div_integer(n))
    }

    fn inverse(&self) -> Option<Self> {
        if self.num_terms() == 1 && self.is_constant() {
            self.constant_term().inverse().map(Self::constant)
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Fp;
    use num_rational::BigRational;
    use proptest::prelude::*;

    type P = MPoly<BigInt>;

    fn p(s: &str) -> P {
        P::parse(s).unwrap()
    }

    #[test]
    fn parse_and_display() {
        let f = p("a1^3*a3^3 - 27*a3^4");
        assert_eq!(f.to_string(), "a1^3*a3^3 - 27*a3^4");
        assert_eq!(p("0").to_string(), "0");
        assert_eq!(p("-x + 1").to_string(), "-x + 1");
    }

    #[test]
    fn zero_coefficients_are_never_stored() {
        let f = p("x + y") - p("x");
        assert_eq!(f.num_terms(), 1);
        assert_eq!(f, p("y"));
        assert!((p("x") - p("x")).is_zero());
    }

    #[test]
    fn mixed_variable_lists_combine() {
        let f = p("x^2 + 1") * p("y - 1");
        assert_eq!(f, p("x^2*y - x^2 + y - 1"));
        assert_eq!(f.vars().len(), 2);
        assert_eq!(P::zero(), P::zero_in(&["a", "b"]));
    }

    #[test]
    fn substitution_and_coefficients() {
        let f = p("x^2*y + 3*x*y^2 + 5");
        assert_eq!(f.coefficient_in("x", 1), p("3*y^2"));
        assert_eq!(f.coeff_of(&[("x", 2), ("y", 1)]), BigInt::from(1));
        let g = f.substitute(&[("x", p("2")), ("y", p("z"))]);
        assert_eq!(g, p("4*z + 6*z^2 + 5"));
    }

    #[test]
    fn constant_units_invert() {
        assert_eq!(p("-1").inverse(), Some(p("-1")));
        assert!(p("2").inverse().is_none());
        assert!(p("x").inverse().is_none());
    }

    fn arb_poly() -> impl Strategy<Value = P> {
        prop::collection::vec(((0u32..3, 0u32..3, 0u32..3), -20i64..20), 0..6).prop_map(|ts| {
            P::from_terms(
                &["x", "y", "z"],
                ts.into_iter()
                    .map(|((a, b, c), k)| (vec![a, b, c], BigInt::from(k))),
            )
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
            prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
            prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
            prop_assert_eq!(a.clone() * b.clone(), b * a.clone());
            prop_assert!(a.terms().all(|(_, c)| !c.is_zero()));
        }

        #[test]
        fn reduction_mod_p_commutes(a in arb_poly(), b in arb_poly()) {
            let to3 = |q: &P| q.map_coeffs(Fp::<3>::from_integer);
            let to5 = |q: &P| q.map_coeffs(Fp::<5>::from_integer);
            prop_assert_eq!(to3(&(a.clone() * b.clone())), to3(&a) * to3(&b));
            prop_assert_eq!(to3(&(a.clone() + b.clone())), to3(&a) + to3(&b));
            prop_assert_eq!(to5(&(a.clone() - b.clone())), to5(&a) - to5(&b));
            prop_assert_eq!(to5(&(a.clone() * b.clone())), to5(&a) * to5(&b));
            let r7 = BigInt::from(7);
            prop_assert_eq!((a.clone() * b.clone()).reduce_mod(&r7), (a.reduce_mod(&r7) * b.reduce_mod(&r7)).reduce_mod(&r7));
        }

        #[test]
        fn rational_embedding_is_a_ring_map(a in arb_poly(), b in arb_poly()) {
            let q = |x: &P| x.map_coeffs(|c| BigRational::from_integer(c.clone()));
            prop_assert_eq!(q(&(a.clone() * b.clone())), q(&a) * q(&b));
        }
    }
}
