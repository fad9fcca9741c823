//! Least multiples `c Delta^k` that survive every seeded differential.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::{AnssError, E2Class, E2Presentation, Seed};

/// One page of the survivor search for a fixed `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PageStep {
    pub page: u32,
    /// Multiplier `c` carried into this page.
    pub multiplier_before: BigInt,
    /// `d_r(c Delta^k)`, or `None` when the transfer rule does not apply.
    pub target: Option<E2Class>,
    /// Extra factor needed to make the class a `d_r`-cycle; `None` if no
    /// finite multiple works.
    pub factor: Option<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurvivorRow {
    pub k: u32,
    /// Least `c` with `c Delta^k` a permanent cycle for the seeded
    /// differentials, or `None` if it does not exist.
    pub multiplier: Option<BigInt>,
    pub steps: Vec<PageStep>,
    /// Last page that forced a factor above 1.
    pub last_page: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurvivorReport {
    pub prime: u32,
    pub generator: String,
    pub rows: Vec<SurvivorRow>,
}

impl SurvivorReport {
    pub fn multipliers(&self) -> Vec<Option<BigInt>> {
        self.rows.iter().map(|r| r.multiplier.clone()).collect()
    }

    /// Plain-text table, one row per `k`.
    pub fn render(&self, pres: &E2Presentation) -> String {
        let mut out = format!("p = {}, generator {}\n", self.prime, self.generator);
        for row in &self.rows {
            let mult = row.multiplier.as_ref().map_or("none".to_string(), |m| m.to_string());
            let _ = write!(out, "k = {:>3}  multiplier {:>5}", row.k, mult);
            for step in &row.steps {
                let target = step
                    .target
                    .as_ref()
                    .map_or("n/a".to_string(), |t| pres.display(t));
                let factor = step.factor.as_ref().map_or("none".to_string(), |f| f.to_string());
                let _ = write!(out, "  | d{}: {} (x{})", step.page, target, factor);
            }
            out.push('\n');
        }
        out
    }
}

impl E2Presentation {
    /// Survivor multipliers for `Delta^k`, `k = 1..=kmax`, where `Delta` is
    /// the generator the seeds act on.
    pub fn survivor_table(&self, kmax: u32) -> Result<SurvivorReport, AnssError> {
        let first = self.seeds.first().ok_or(AnssError::MissingSeeds)?;
        let g = first.generator;
        let stem = self.generators[g].stem * kmax as i64;
        if stem > self.stem_bound {
            return Err(AnssError::StemBound {
                stem,
                bound: self.stem_bound,
            });
        }
        let mut seeds: Vec<&Seed> = self.seeds.iter().filter(|s| s.generator == g).collect();
        seeds.sort_by_key(|s| s.page);
        let mut rows = Vec::new();
        for k in 1..=kmax {
            rows.push(self.survivor_row(&seeds, g, k)?);
        }
        Ok(SurvivorReport {
            prime: self.prime,
            generator: self.generators[g].name.clone(),
            rows,
        })
    }

    fn survivor_row(&self, seeds: &[&Seed], g: usize, k: u32) -> Result<SurvivorRow, AnssError> {
        let kk = BigInt::from(k);
        let mut c = BigInt::one();
        let mut steps = Vec::new();
        let mut last_page = None;
        let mut finite = true;
        for seed in seeds {
            let s = &seed.coefficient;
            // d_r(Delta^k) up to the scalar c k / s.
            let base = self.normal_form(&seed.target.mul_mono(&self.generator_mono(g, k as i32 - 1)))?;
            let ck = &c * &kk;
            let target = if ck.is_multiple_of(s) {
                Some(self.normal_form(&base.scale(&(&ck / s)))?)
            } else {
                None
            };
            let factor = match self.class_order(&base)? {
                None => None,
                Some(ord) => {
                    // Least m with s | m c k and ord | m c k / s.
                    let need = s * &ord;
                    Some(&need / need.gcd(&ck))
                }
            };
            steps.push(PageStep {
                page: seed.page,
                multiplier_before: c.clone(),
                target,
                factor: factor.clone(),
            });
            match factor {
                Some(m) => {
                    if !m.is_one() {
                        last_page = Some(seed.page);
                    }
                    c *= m;
                }
                None => {
                    finite = false;
                    break;
                }
            }
        }
        Ok(SurvivorRow {
            k,
            multiplier: finite.then_some(c),
            steps,
            last_page,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[u32]) -> Vec<Option<BigInt>> {
        v.iter().map(|&x| Some(BigInt::from(x))).collect()
    }

    #[test]
    fn p3_small() {
        let r = E2Presentation::tmf_p3().survivor_table(3).unwrap();
        assert_eq!(r.multipliers(), ints(&[3, 3, 1]));
        assert_eq!(r.rows[0].last_page, Some(5));
        assert_eq!(r.rows[2].last_page, None);
    }

    #[test]
    fn p3_period() {
        let r = E2Presentation::tmf_p3().survivor_table(24).unwrap();
        for row in &r.rows {
            let want = 3 / 3u32.gcd(&row.k);
            assert_eq!(row.multiplier, Some(BigInt::from(want)), "k = {}", row.k);
        }
    }

    #[test]
    fn p2_period() {
        let p = E2Presentation::tmf_p2();
        let r = p.survivor_table(24).unwrap();
        for row in &r.rows {
            let want = 8 / 8u32.gcd(&row.k);
            assert_eq!(row.multiplier, Some(BigInt::from(want)), "k = {}", row.k);
        }
        assert_eq!(r.multipliers()[..8], ints(&[8, 4, 8, 2, 8, 4, 8, 1])[..]);
        let d7 = r.rows[3].steps.iter().find(|s| s.page == 7).unwrap();
        assert_eq!(p.display(d7.target.as_ref().unwrap()), "kbar*eta^3*Delta^3");
        assert_eq!(r.rows[0].steps[1].multiplier_before, BigInt::from(4));
    }

    #[test]
    fn multipliers_divide_the_first() {
        for p in [E2Presentation::tmf_p2(), E2Presentation::tmf_p3()] {
            let r = p.survivor_table(24).unwrap();
            let c1 = r.rows[0].multiplier.clone().unwrap();
            for row in &r.rows {
                assert!(c1.is_multiple_of(row.multiplier.as_ref().unwrap()));
            }
        }
    }

    #[test]
    fn errors() {
        let p = E2Presentation::tmf_p2();
        assert_eq!(p.survivor_table(26), Err(AnssError::StemBound { stem: 624, bound: 600 }));
        let bare = E2Presentation::parse("prime 2\ngen x stem=1 filt=0 order=2\n").unwrap();
        assert_eq!(bare.survivor_table(1), Err(AnssError::MissingSeeds));
    }

    #[test]
    fn render_mentions_every_row() {
        let p = E2Presentation::tmf_p3();
        let text = p.survivor_table(3).unwrap().render(&p);
        assert_eq!(text.lines().count(), 4);
        assert!(text.contains("alpha*beta^2"));
    }
}
