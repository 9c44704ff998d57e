//! Seeded random instances. A `(seed, index)` pair always produces the same
//! instance.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::expansion::ExpansionTuple;
use crate::ideal::MonomialIdeal;
use crate::linquot::{find_linear_quotients_order, LinearQuotients};
use crate::monomial::{Monomial, RingDescriptor};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandomConfig {
    pub min_vars: usize,
    pub max_vars: usize,
    pub max_gens: usize,
    pub max_exponent: u32,
    /// Bound on the total degree of each generator.
    pub max_degree: u32,
    pub max_tuple: usize,
}

impl Default for RandomConfig {
    fn default() -> Self {
        Self {
            min_vars: 2,
            max_vars: 4,
            max_gens: 5,
            max_exponent: 3,
            max_degree: 3,
            max_tuple: 3,
        }
    }
}

pub struct InstanceGenerator {
    rng: ChaCha8Rng,
    config: RandomConfig,
}

impl InstanceGenerator {
    /// Generator for instance `index` of the run seeded by `seed`.
    pub fn new(seed: u64, index: u64, config: RandomConfig) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        Self { rng, config }
    }

    pub fn config(&self) -> &RandomConfig {
        &self.config
    }

    pub fn ring(&mut self) -> RingDescriptor {
        let n = self.rng.gen_range(self.config.min_vars..=self.config.max_vars);
        RingDescriptor::standard(n)
    }

    fn generator(&mut self, n: usize) -> Monomial {
        loop {
            let exps: Vec<u32> = (0..n).map(|_| self.rng.gen_range(0..=self.config.max_exponent)).collect();
            let d: u32 = exps.iter().sum();
            if d >= 1 && d <= self.config.max_degree {
                return Monomial::new(exps);
            }
        }
    }

    /// A nonzero proper ideal over `ring`.
    pub fn ideal_in(&mut self, ring: &RingDescriptor) -> MonomialIdeal {
        let k = self.rng.gen_range(1..=self.config.max_gens);
        let gens: Vec<Monomial> = (0..k).map(|_| self.generator(ring.nvars())).collect();
        MonomialIdeal::new(ring.clone(), gens).expect("same ring")
    }

    pub fn ideal(&mut self) -> MonomialIdeal {
        let ring = self.ring();
        self.ideal_in(&ring)
    }

    pub fn ideal_pair(&mut self) -> (MonomialIdeal, MonomialIdeal) {
        let ring = self.ring();
        (self.ideal_in(&ring), self.ideal_in(&ring))
    }

    pub fn tuple(&mut self, n: usize) -> ExpansionTuple {
        let entries = (0..n).map(|_| self.rng.gen_range(1..=self.config.max_tuple)).collect();
        ExpansionTuple::new(entries).expect("positive entries")
    }

    pub fn instance(&mut self) -> (MonomialIdeal, ExpansionTuple) {
        let i = self.ideal();
        let t = self.tuple(i.ring().nvars());
        (i, t)
    }

    /// Rejection-samples an ideal whose generators admit an ordering with
    /// linear quotients, optionally generated in a single degree.
    pub fn lq_ideal(&mut self, equigenerated: Option<u32>) -> (MonomialIdeal, LinearQuotients) {
        loop {
            let ring = self.ring();
            let i = match equigenerated {
                Some(d) => self.equigenerated_in(&ring, d),
                None => self.ideal_in(&ring),
            };
            if let Ok(Some(lq)) = find_linear_quotients_order(&i, self.config.max_gens.max(1)) {
                return (i, lq);
            }
        }
    }

    /// An ideal generated in degree `d` alone.
    pub fn equigenerated_in(&mut self, ring: &RingDescriptor, d: u32) -> MonomialIdeal {
        let n = ring.nvars();
        let k = self.rng.gen_range(1..=self.config.max_gens);
        let gens: Vec<Monomial> = (0..k)
            .map(|_| {
                let mut exps = vec![0u32; n];
                for _ in 0..d {
                    exps[self.rng.gen_range(0..n)] += 1;
                }
                Monomial::new(exps)
            })
            .collect();
        MonomialIdeal::new(ring.clone(), gens).expect("same ring")
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible() {
        let a = InstanceGenerator::new(7, 3, RandomConfig::default()).instance();
        let b = InstanceGenerator::new(7, 3, RandomConfig::default()).instance();
        assert_eq!(a, b);
        let c = InstanceGenerator::new(7, 4, RandomConfig::default()).instance();
        assert_ne!(a, c);
    }

    #[test]
    fn respects_bounds() {
        let cfg = RandomConfig::default();
        for k in 0..100 {
            let mut g = InstanceGenerator::new(1, k, cfg.clone());
            let (i, t) = g.instance();
            let n = i.ring().nvars();
            assert!((2..=4).contains(&n));
            assert!(!i.is_zero() && !i.is_unit());
            assert!(i.gens().len() <= 5);
            assert!(i.gens().iter().all(|u| u.total_degree() <= 3 && u.exponents().iter().all(|&e| e <= 3)));
            assert!(t.entries().iter().all(|&e| (1..=3).contains(&e)));
        }
    }

    #[test]
    fn lq_samples_have_linear_quotients() {
        let mut g = InstanceGenerator::new(5, 0, RandomConfig::default());
        for _ in 0..10 {
            let (i, lq) = g.lq_ideal(Some(2));
            assert!(i.gens().iter().all(|u| u.total_degree() == 2));
            assert_eq!(lq.order.len(), i.gens().len());
        }
    }
}
