//! Randomized genericity: a property that holds at a Zariski-generic point is
//! tested at random points over several random large primes.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::field::PrimeField;
use super::prime::random_prime;
use super::rng::SeededRng;
use crate::error::{Error, Result};

/// Stream reserved for drawing the primes of a run.
const PRIME_STREAM: u64 = 0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Genericity {
    pub prime_bits: u32,
    pub primes: usize,
    pub trials: usize,
    pub seed: u64,
}

impl Default for Genericity {
    fn default() -> Self {
        Self {
            prime_bits: 31,
            primes: 5,
            trials: 5,
            seed: 0,
        }
    }
}

impl Genericity {
    pub fn validate(&self) -> Result<()> {
        if self.primes == 0 {
            return Err(Error::Config("at least one prime is required".into()));
        }
        if self.trials == 0 {
            return Err(Error::Config("trials must be positive".into()));
        }
        if !(16..=62).contains(&self.prime_bits) {
            return Err(Error::Config(format!("prime_bits {} outside 16..=62", self.prime_bits)));
        }
        Ok(())
    }

    /// The run's primes: distinct, drawn in a fixed order from the seed.
    pub fn select_primes(&self) -> Result<Vec<u64>> {
        self.validate()?;
        let mut rng = SeededRng::new(self.seed, PRIME_STREAM);
        let mut out: Vec<u64> = Vec::with_capacity(self.primes);
        while out.len() < self.primes {
            let p = random_prime(self.prime_bits, &mut rng)?;
            if !out.contains(&p) {
                out.push(p);
            }
        }
        Ok(out)
    }

    /// Generator for work item `index` on the prime with position `prime_index`.
    pub fn rng_for(&self, purpose: u64, prime_index: usize) -> SeededRng {
        SeededRng::new(self.seed, purpose.wrapping_add(1)).derive(prime_index as u64)
    }
}

/// Runs `f` once per prime in parallel; results come back in prime order.
pub fn per_prime<T, F>(primes: &[u64], f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize, PrimeField) -> Result<T> + Sync,
{
    primes
        .par_iter()
        .enumerate()
        .map(|(i, &p)| f(i, PrimeField::new(p)?))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_are_deterministic_and_distinct() {
        let g = Genericity {
            primes: 6,
            ..Genericity::default()
        };
        let a = g.select_primes().unwrap();
        assert_eq!(a, g.select_primes().unwrap());
        let mut sorted = a.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), 6);
        assert!(a.iter().all(|&p| (1u64 << 30..1u64 << 31).contains(&p)));
        let other = Genericity { seed: 1, ..g }.select_primes().unwrap();
        assert_ne!(a, other);
    }

    #[test]
    fn per_prime_keeps_order() {
        let primes = Genericity::default().select_primes().unwrap();
        let back = per_prime(&primes, |i, f| Ok((i, f.modulus()))).unwrap();
        for (i, (j, p)) in back.into_iter().enumerate() {
            assert_eq!((i, p), (j, primes[i]));
        }
    }

    #[test]
    fn rejects_bad_config() {
        assert!(Genericity { primes: 0, ..Genericity::default() }.select_primes().is_err());
        assert!(Genericity { prime_bits: 8, ..Genericity::default() }.select_primes().is_err());
    }
}
