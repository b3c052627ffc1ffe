//! Exact points of nilpotent orbits and vanishing tests on them.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::RationalMatrix;
use crate::minors::{v_span_basis, MinorCombination, MinorEvaluator};
use crate::partition::Partition;

const MAX_ATTEMPTS: usize = 1000;
const ENTRY_BOUND: i64 = 5;

/// Block-diagonal upper-shift matrix with blocks of sizes `μ_1, …, μ_s`.
pub fn jordan_matrix(mu: &Partition) -> RationalMatrix {
    let mut m = RationalMatrix::zero(mu.n());
    let mut offset = 0;
    for &block in mu.parts() {
        for k in 0..block - 1 {
            m.set(offset + k, offset + k + 1, BigRational::one());
        }
        offset += block;
    }
    m
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitSample {
    pub matrix: RationalMatrix,
    pub jordan_type: Partition,
    pub seed: u64,
}

impl OrbitSample {
    /// Checks nilpotency and `dim ker(M^k) = μ^T_1 + … + μ^T_k`.
    pub fn verify(&self) -> Result<()> {
        let n = self.matrix.n();
        let conj = self.jordan_type.conjugate();
        let mut power = RationalMatrix::identity(n);
        let mut kernel = 0;
        for k in 1..=conj.len().max(1) {
            power = power.mul(&self.matrix);
            kernel += conj.part(k);
            if n - power.rank() != kernel {
                return Err(Error::Precondition(format!(
                    "sample for {} has wrong kernel dimension at power {k}",
                    self.jordan_type
                )));
            }
        }
        if !self.matrix.pow(n).is_zero() {
            return Err(Error::Precondition(format!(
                "sample for {} is not nilpotent",
                self.jordan_type
            )));
        }
        Ok(())
    }
}

/// `g · J_μ · g⁻¹` for a seeded random integer matrix `g` with entries in
/// `[−5, 5]`, redrawn until invertible.
pub fn sample_orbit(mu: &Partition, seed: u64) -> Result<OrbitSample> {
    let n = mu.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let jordan = jordan_matrix(mu);
    for _ in 0..MAX_ATTEMPTS {
        let mut g = RationalMatrix::zero(n);
        for r in 0..n {
            for c in 0..n {
                let v: i64 = rng.random_range(-ENTRY_BOUND..=ENTRY_BOUND);
                g.set(r, c, BigRational::from_integer(BigInt::from(v)));
            }
        }
        let Some(g_inv) = g.inverse() else {
            continue;
        };
        let sample = OrbitSample {
            matrix: g.mul(&jordan).mul(&g_inv),
            jordan_type: mu.clone(),
            seed,
        };
        sample.verify()?;
        return Ok(sample);
    }
    Err(Error::SamplingFailed(MAX_ATTEMPTS))
}

/// Seeds of the `count` samples drawn for a run with base seed `seed`.
pub fn sample_seeds(seed: u64, count: usize) -> impl Iterator<Item = u64> {
    (0..count as u64).map(move |k| seed.wrapping_add(k))
}

pub fn sample_orbits(mu: &Partition, count: usize, seed: u64) -> Result<Vec<OrbitSample>> {
    sample_seeds(seed, count)
        .map(|s| sample_orbit(mu, s))
        .collect()
}

/// A nonzero evaluation: basis element `element` at the sample drawn with `seed`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingWitness {
    pub element: usize,
    pub seed: u64,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingReport {
    pub partition: Partition,
    pub i: usize,
    pub p: usize,
    pub samples: usize,
    pub elements: usize,
    pub all_zero: bool,
    pub witness: Option<VanishingWitness>,
}

/// First `(element, sample)` where some combination is nonzero.
pub fn first_nonzero(
    combos: &[&MinorCombination],
    samples: &[OrbitSample],
) -> Option<VanishingWitness> {
    for sample in samples {
        let mut ev = MinorEvaluator::new(&sample.matrix);
        for (k, c) in combos.iter().enumerate() {
            let v = ev.evaluate(c);
            if !v.is_zero() {
                return Some(VanishingWitness {
                    element: k,
                    seed: sample.seed,
                    value: v.to_string(),
                });
            }
        }
    }
    None
}

/// Evaluates every element of a `V_{i,p}` basis (`t_p` when `i = 0`) on
/// `samples` orbit points of `μ`.
pub fn vanishing_check(
    mu: &Partition,
    i: usize,
    p: usize,
    samples: usize,
    seed: u64,
) -> Result<VanishingReport> {
    let n = mu.n();
    if samples == 0 {
        return Err(Error::Precondition("need at least one sample".into()));
    }
    let basis = v_span_basis(n, i, p)?;
    let combos: Vec<&MinorCombination> = basis.elements.iter().map(|e| &e.combination).collect();
    let points = sample_orbits(mu, samples, seed)?;
    let witness = first_nonzero(&combos, &points);
    Ok(VanishingReport {
        partition: mu.clone(),
        i,
        p,
        samples,
        elements: combos.len(),
        all_zero: witness.is_none(),
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::partitions_of;
    use crate::schedule::weyman_schedule;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn jordan_examples() {
        let j = jordan_matrix(&p("2,1"));
        let mut expected = RationalMatrix::zero(3);
        expected.set(0, 1, BigRational::one());
        assert_eq!(j, expected);
        assert!(jordan_matrix(&p("1^4")).is_zero());
        let shift = jordan_matrix(&p("4"));
        assert_eq!(shift.rank(), 3);
        assert!(shift.pow(4).is_zero());
        assert!(!shift.pow(3).is_zero());
    }

    #[test]
    fn sample_examples() {
        assert!(sample_orbit(&p("1^3"), 7).unwrap().matrix.is_zero());
        let s = sample_orbit(&p("2,1"), 11).unwrap();
        assert_eq!(s.matrix.rank(), 1);
        assert!(s.matrix.pow(2).is_zero());
        let s = sample_orbit(&p("3"), 3).unwrap();
        let ranks: Vec<usize> = (1..=3).map(|k| s.matrix.pow(k).rank()).collect();
        assert_eq!(ranks, vec![2, 1, 0]);
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = sample_orbit(&p("3,2,1"), 42).unwrap();
        let b = sample_orbit(&p("3,2,1"), 42).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.matrix, sample_orbit(&p("3,2,1"), 43).unwrap().matrix);
    }

    #[test]
    fn vanishing_examples() {
        let mu = p("2,1");
        assert!(vanishing_check(&mu, 1, 2, 10, 0).unwrap().all_zero);
        let r = vanishing_check(&mu, 1, 1, 10, 0).unwrap();
        assert!(!r.all_zero);
        assert!(r.witness.is_some());
        for q in 1..=3 {
            assert!(vanishing_check(&mu, 0, q, 5, 1).unwrap().all_zero);
        }
    }

    #[test]
    fn scheduled_generators_vanish_up_to_4() {
        for n in 1..=4 {
            for mu in partitions_of(n) {
                let points = sample_orbits(&mu, 4, 5).unwrap();
                for (i, q) in weyman_schedule(&mu).minor_pairs() {
                    let basis = v_span_basis(n, i, q).unwrap();
                    let combos: Vec<_> = basis.elements.iter().map(|e| &e.combination).collect();
                    assert!(
                        first_nonzero(&combos, &points).is_none(),
                        "{mu} i={i} p={q}"
                    );
                }
            }
        }
    }

    #[test]
    fn serde_round_trip() {
        let s = sample_orbit(&p("2,2"), 9).unwrap();
        let json = serde_json::to_string(&s).unwrap();
        let back: OrbitSample = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
    }
}
