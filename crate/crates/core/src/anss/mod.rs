//! A small calculator for finitely presented bigraded commutative rings
//! with differentials, aimed at the E2-page of the descent spectral
//! sequence for tmf.
//!
//! A presentation lists generators with bidegree `(stem, filtration)` and
//! additive order, oriented relations, and differential seeds. Elements are
//! reduced by rewriting with the relations until nothing applies, then each
//! coefficient is reduced modulo the additive order of its monomial.

mod parse;
mod survivors;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::expr::{self, ExprError};

pub use survivors::{PageStep, SurvivorReport, SurvivorRow};

/// Built-in presentation of the E2-page at p = 2.
pub const TMF_P2: &str = include_str!("../../data/tmf-p2.e2");
/// Built-in presentation of the E2-page at p = 3.
pub const TMF_P3: &str = include_str!("../../data/tmf-p3.e2");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnssError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: unknown symbol `{name}`")]
    UnknownSymbol { line: usize, name: String },
    #[error("line {line}: relation is not homogeneous ({lhs:?} vs {rhs:?})")]
    InhomogeneousRule {
        line: usize,
        lhs: (i64, i64),
        rhs: (i64, i64),
    },
    #[error("line {line}: right-hand side is not smaller than the left in the monomial order")]
    NonTerminating { line: usize },
    #[error("line {line}: bad differential seed: {message}")]
    BadSeed { line: usize, message: String },
    #[error("presentation declares no prime")]
    MissingPrime,
    #[error("expression is not homogeneous")]
    InhomogeneousExpression,
    #[error("negative power of non-invertible generator `{0}`")]
    NegativePower(String),
    #[error("no differential seeds in the presentation")]
    MissingSeeds,
    #[error("transfer rule on page {page} does not apply: {coefficient} * {k} is not divisible by {divisor}")]
    TransferInapplicable {
        page: u32,
        coefficient: BigInt,
        k: i64,
        divisor: BigInt,
    },
    #[error("stem {stem} exceeds the bound {bound}")]
    StemBound { stem: i64, bound: i64 },
    #[error(transparent)]
    Expr(#[from] ExprError),
}

/// Exponent vector, one entry per generator in presentation order.
pub type Mono = Vec<i32>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub stem: i64,
    pub filtration: i64,
    /// Additive order; `None` means infinite.
    pub order: Option<u64>,
    pub invertible: bool,
}

/// An oriented relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rule {
    /// `lhs -> rhs`; an empty `rhs` kills the monomial.
    Rewrite { lhs: Mono, rhs: E2Class },
    /// `coefficient * monomial = 0`, and so for all its multiples.
    Torsion { coefficient: BigInt, monomial: Mono },
}

/// How a seed `d_r(s g) = t` extends to multiples `c g^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transfer {
    /// `d_r(g^k) = k g^(k-1) t`.
    Leibniz,
    /// `d_r(c g^k) = (ck/4) g^(k-1) t` when `4 | ck`.
    Quarter,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Seed {
    pub page: u32,
    /// Index of the source generator.
    pub generator: usize,
    /// Coefficient `s` of the source `s g`.
    pub coefficient: BigInt,
    pub target: E2Class,
    pub transfer: Transfer,
}

/// A sum of integer multiples of monomials.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct E2Class {
    terms: BTreeMap<Mono, BigInt>,
}

impl E2Class {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(c: impl Into<BigInt>, m: Mono) -> Self {
        let mut out = Self::zero();
        out.add_term(m, c.into());
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, m: Mono, c: BigInt) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero();
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(mono_mul(a, b), x * y);
            }
        }
        out
    }

    pub fn mul_mono(&self, m: &Mono) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            out.add_term(mono_mul(a, m), x.clone());
        }
        out
    }
}

fn mono_mul(a: &Mono, b: &Mono) -> Mono {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// A reduction step available on an element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Redex {
    /// Apply rewrite rule `rule` to the term with monomial `term`.
    Rewrite { term: Mono, rule: usize },
    /// Reduce the coefficient of `term` modulo its additive order.
    Reduce { term: Mono },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct E2Presentation {
    pub prime: u32,
    pub generators: Vec<Generator>,
    pub rules: Vec<Rule>,
    pub seeds: Vec<Seed>,
    /// Largest stem accepted by the survivor computation.
    pub stem_bound: i64,
}

impl E2Presentation {
    pub fn parse(text: &str) -> Result<Self, AnssError> {
        parse::parse_presentation(text)
    }

    pub fn tmf_p2() -> Self {
        Self::parse(TMF_P2).expect("built-in presentation parses")
    }

    pub fn tmf_p3() -> Self {
        Self::parse(TMF_P3).expect("built-in presentation parses")
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    /// Number of relations, counting generator orders as torsion relations.
    pub fn relation_count(&self) -> usize {
        self.rules.len() + self.generators.iter().filter(|g| g.order.is_some()).count()
    }

    pub fn one(&self) -> Mono {
        vec![0; self.generators.len()]
    }

    pub fn generator_mono(&self, idx: usize, e: i32) -> Mono {
        let mut m = self.one();
        m[idx] = e;
        m
    }

    pub fn bidegree(&self, m: &Mono) -> (i64, i64) {
        self.generators.iter().zip(m).fold((0, 0), |(s, f), (g, &e)| {
            (s + g.stem * e as i64, f + g.filtration * e as i64)
        })
    }

    /// Common bidegree of all terms, `None` for zero, or an error if mixed.
    pub fn class_bidegree(&self, x: &E2Class) -> Result<Option<(i64, i64)>, AnssError> {
        let mut seen = None;
        for m in x.terms.keys() {
            let b = self.bidegree(m);
            match seen {
                Some(s) if s != b => return Err(AnssError::InhomogeneousExpression),
                _ => seen = Some(b),
            }
        }
        Ok(seen)
    }

    /// Parses an expression in the generators, e.g. `kbar eta^3 Delta^-1`.
    pub fn parse_expr(&self, text: &str) -> Result<E2Class, AnssError> {
        let terms = expr::parse_polynomial(text)?;
        self.class_from_terms(terms, 1)
    }

    fn class_from_terms(&self, terms: expr::Terms, line: usize) -> Result<E2Class, AnssError> {
        let mut out = E2Class::zero();
        for (c, factors) in terms {
            let mut m = self.one();
            for (name, e) in factors {
                let idx = self.generator_index(&name).ok_or(AnssError::UnknownSymbol {
                    line,
                    name: name.clone(),
                })?;
                if e < 0 && !self.generators[idx].invertible {
                    return Err(AnssError::NegativePower(name));
                }
                m[idx] += e as i32;
            }
            out.add_term(m, c);
        }
        Ok(out)
    }

    /// Key for the monomial order: lex on the non-invertible exponents in
    /// generator order.
    fn order_key(&self, m: &Mono) -> Vec<i32> {
        self.generators
            .iter()
            .zip(m)
            .filter(|(g, _)| !g.invertible)
            .map(|(_, &e)| e)
            .collect()
    }

    fn divides(&self, d: &Mono, m: &Mono) -> bool {
        self.generators
            .iter()
            .zip(d.iter().zip(m))
            .all(|(g, (a, b))| g.invertible || a <= b)
    }

    /// Additive order of a monomial: the gcd of the orders of its
    /// generators and of every torsion relation dividing it.
    pub fn mono_order(&self, m: &Mono) -> Option<BigInt> {
        let mut acc: Option<BigInt> = None;
        let mut meet = |n: BigInt| {
            acc = Some(match acc.take() {
                Some(a) => a.gcd(&n),
                None => n,
            });
        };
        for (g, &e) in self.generators.iter().zip(m) {
            if let (Some(o), false) = (g.order, e == 0) {
                meet(BigInt::from(o));
            }
        }
        for rule in &self.rules {
            match rule {
                Rule::Torsion { coefficient, monomial } if self.divides(monomial, m) => meet(coefficient.clone()),
                Rule::Rewrite { lhs, rhs } if rhs.is_zero() && self.divides(lhs, m) => meet(BigInt::one()),
                _ => {}
            }
        }
        acc
    }

    /// All reduction steps available on `x`.
    pub fn redexes(&self, x: &E2Class) -> Vec<Redex> {
        let mut out = Vec::new();
        for (m, c) in &x.terms {
            for (i, rule) in self.rules.iter().enumerate() {
                if let Rule::Rewrite { lhs, .. } = rule {
                    if self.divides(lhs, m) {
                        out.push(Redex::Rewrite { term: m.clone(), rule: i });
                    }
                }
            }
            if let Some(o) = self.mono_order(m) {
                if c.is_negative() || c >= &o {
                    out.push(Redex::Reduce { term: m.clone() });
                }
            }
        }
        out
    }

    /// Applies one reduction step.
    pub fn apply(&self, x: &E2Class, redex: &Redex) -> E2Class {
        let mut out = x.clone();
        match redex {
            Redex::Rewrite { term, rule } => {
                let Rule::Rewrite { lhs, rhs } = &self.rules[*rule] else {
                    return out;
                };
                let c = out.terms.remove(term).unwrap_or_default();
                let quotient: Mono = term.iter().zip(lhs).map(|(a, b)| a - b).collect();
                for (m, v) in &rhs.terms {
                    out.add_term(mono_mul(m, &quotient), v * &c);
                }
            }
            Redex::Reduce { term } => {
                if let (Some(c), Some(o)) = (out.terms.get(term).cloned(), self.mono_order(term)) {
                    out.terms.remove(term);
                    out.add_term(term.clone(), c.mod_floor(&o));
                }
            }
        }
        out
    }

    /// Normal form, choosing among the available steps with `choose`
    /// (which receives the number of candidates and returns an index).
    pub fn normal_form_with(&self, x: &E2Class, mut choose: impl FnMut(usize) -> usize) -> E2Class {
        let mut cur = x.clone();
        loop {
            let redexes = self.redexes(&cur);
            if redexes.is_empty() {
                return cur;
            }
            let i = choose(redexes.len()).min(redexes.len() - 1);
            cur = self.apply(&cur, &redexes[i]);
        }
    }

    /// Normal form: rewrite everything, then reduce coefficients.
    pub fn normal_form(&self, x: &E2Class) -> Result<E2Class, AnssError> {
        self.class_bidegree(x)?;
        let mut cur = x.clone();
        loop {
            let mut next = E2Class::zero();
            let mut changed = false;
            for (m, c) in &cur.terms {
                match self.rules.iter().find_map(|r| match r {
                    Rule::Rewrite { lhs, rhs } if self.divides(lhs, m) => Some((lhs, rhs)),
                    _ => None,
                }) {
                    Some((lhs, rhs)) => {
                        changed = true;
                        let quotient: Mono = m.iter().zip(lhs).map(|(a, b)| a - b).collect();
                        for (r, v) in &rhs.terms {
                            next.add_term(mono_mul(r, &quotient), v * c);
                        }
                    }
                    None => next.add_term(m.clone(), c.clone()),
                }
            }
            cur = next;
            if !changed {
                break;
            }
        }
        let mut out = E2Class::zero();
        for (m, c) in cur.terms {
            let c = match self.mono_order(&m) {
                Some(o) => c.mod_floor(&o),
                None => c,
            };
            out.add_term(m, c);
        }
        Ok(out)
    }

    /// Least `m >= 1` with `m x = 0`, or `None` if there is none. `x` is
    /// normalised first.
    pub fn class_order(&self, x: &E2Class) -> Result<Option<BigInt>, AnssError> {
        let x = self.normal_form(x)?;
        let mut acc = BigInt::one();
        for (m, c) in &x.terms {
            match self.mono_order(m) {
                None => return Ok(None),
                Some(o) => {
                    let part = &o / o.gcd(c);
                    acc = acc.lcm(&part);
                }
            }
        }
        Ok(Some(acc))
    }

    /// `d_r` applied to `x` through the seeds on page `page`: each term
    /// `c g^k rest` goes to `(ck/s) g^(k-1) rest t`. Other generators are
    /// treated as cycles.
    pub fn differential(&self, page: u32, x: &E2Class) -> Result<E2Class, AnssError> {
        let mut out = E2Class::zero();
        for seed in self.seeds.iter().filter(|s| s.page == page) {
            let g = seed.generator;
            for (m, c) in &x.terms {
                let k = m[g] as i64;
                if k == 0 {
                    continue;
                }
                let ck = c * BigInt::from(k);
                let (q, r) = ck.div_rem(&seed.coefficient);
                if !r.is_zero() {
                    return Err(AnssError::TransferInapplicable {
                        page,
                        coefficient: c.clone(),
                        k,
                        divisor: seed.coefficient.clone(),
                    });
                }
                let mut rest = m.clone();
                rest[g] -= 1;
                out = out.add(&seed.target.mul_mono(&rest).scale(&q));
            }
        }
        self.normal_form(&out)
    }

    pub fn display(&self, x: &E2Class) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let mut keys: Vec<&Mono> = x.terms.keys().collect();
        keys.sort_by(|a, b| self.order_key(b).cmp(&self.order_key(a)).then(b.cmp(a)));
        let mut out = String::new();
        for (n, m) in keys.into_iter().enumerate() {
            let c = &x.terms[m];
            let name = self.mono_name(m);
            let mag = c.abs();
            if n == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            match (name.as_str(), mag.is_one()) {
                ("1", _) => out.push_str(&mag.to_string()),
                (_, true) => out.push_str(&name),
                (_, false) => out.push_str(&format!("{mag}*{name}")),
            }
        }
        out
    }

    pub fn mono_name(&self, m: &Mono) -> String {
        let parts: Vec<String> = self
            .generators
            .iter()
            .zip(m)
            .filter(|(_, &e)| e != 0)
            .map(|(g, &e)| if e == 1 { g.name.clone() } else { format!("{}^{}", g.name, e) })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let order = self.order.map_or("inf".to_string(), |o| o.to_string());
        write!(f, "{} ({}, {}) order {}", self.name, self.stem, self.filtration, order)?;
        if self.invertible {
            write!(f, " invertible")?;
        }
        Ok(())
    }
}
