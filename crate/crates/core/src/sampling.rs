//! Quasi-random sample plans over domain boxes.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::consts::{BOX_SHRINK, DEFAULT_SAMPLES};

const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];
const DIGITS: usize = 40;

/// `count` Halton points in each box, optionally digit-scrambled by `seed`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplePlan {
    pub count: usize,
    pub seed: Option<u64>,
}

impl Default for SamplePlan {
    fn default() -> Self {
        SamplePlan {
            count: DEFAULT_SAMPLES,
            seed: None,
        }
    }
}

impl SamplePlan {
    pub fn new(count: usize) -> Self {
        SamplePlan { count, seed: None }
    }

    pub fn with_seed(mut self, seed: Option<u64>) -> Self {
        self.seed = seed;
        self
    }

    /// Points inside `domain` after trimming [`BOX_SHRINK`] of every side.
    pub fn points(&self, domain: &[(f64, f64)]) -> Vec<Vec<f64>> {
        let halton = Halton::new(domain.len(), self.seed);
        (0..self.count)
            .map(|k| {
                let u = halton.point(k as u64 + 1);
                domain
                    .iter()
                    .zip(u)
                    .map(|(&(lo, hi), ui)| {
                        let w = hi - lo;
                        let (a, b) = (lo + BOX_SHRINK * w, hi - BOX_SHRINK * w);
                        a + (b - a) * ui
                    })
                    .collect()
            })
            .collect()
    }
}

/// Radical-inverse sequence; with a seed every digit position of every base
/// gets its own random permutation fixing 0.
pub struct Halton {
    perms: Vec<Vec<Vec<u64>>>,
    dim: usize,
}

impl Halton {
    pub fn new(dim: usize, seed: Option<u64>) -> Halton {
        assert!(
            dim <= PRIMES.len(),
            "Halton sequence supports at most {} dimensions",
            PRIMES.len()
        );
        let perms = match seed {
            None => vec![],
            Some(s) => {
                let mut rng = ChaCha8Rng::seed_from_u64(s);
                PRIMES[..dim]
                    .iter()
                    .map(|&b| {
                        (0..DIGITS)
                            .map(|_| {
                                let mut p: Vec<u64> = (1..b).collect();
                                p.shuffle(&mut rng);
                                let mut full = vec![0];
                                full.extend(p);
                                full
                            })
                            .collect()
                    })
                    .collect()
            }
        };
        Halton { perms, dim }
    }

    pub fn point(&self, index: u64) -> Vec<f64> {
        (0..self.dim)
            .map(|d| self.radical_inverse(d, index))
            .collect()
    }

    fn radical_inverse(&self, d: usize, mut index: u64) -> f64 {
        let b = PRIMES[d];
        let inv = 1.0 / b as f64;
        let mut f = inv;
        let mut r = 0.0;
        let mut pos = 0;
        while index > 0 && pos < DIGITS {
            let mut digit = index % b;
            if !self.perms.is_empty() {
                digit = self.perms[d][pos][digit as usize];
            }
            r += digit as f64 * f;
            index /= b;
            f *= inv;
            pos += 1;
        }
        r
    }
}
