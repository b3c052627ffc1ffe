//! Auxiliary partitions used to separate or absorb a candidate generator.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::schedule::{is_nonzero, main_condition};

/// A minimality witness `μ̃` for index `i`: every family `U_{j,μ(j)}` with
/// `j < i` vanishes on the orbit closure of `μ̃` while `U_{i,μ(i)}` does not.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalityWitness {
    pub partition: Partition,
    pub e: usize,
    pub f: usize,
}

/// Builds `(e+2)^f, (e+1)^(i−1−f), μ_i + 1, μ_{i+1}, …, μ_{s−1}, μ_s − 1` with
/// `μ(i−1) − 1 = e(i−1) + f`, `0 ≤ f ≤ i − 2`. A trailing zero part is dropped.
pub fn minimality_witness(mu: &Partition, i: usize) -> Result<MinimalityWitness> {
    if i < 2 {
        return Err(Error::Precondition(
            "minimality witness needs i >= 2".into(),
        ));
    }
    let n = mu.n();
    let mu_i = mu.mu_of(i)?;
    if !main_condition(mu, i)? {
        return Err(Error::Precondition(format!(
            "minimality condition fails at i = {i} for {mu}"
        )));
    }
    if !is_nonzero(n, i, mu_i) {
        return Err(Error::Precondition(format!(
            "U_{{{i},{mu_i}}} is zero for {mu}"
        )));
    }
    let s = mu.len();
    // Nonzero U_{i,μ(i)} forces i < s.
    debug_assert!(i < s);
    let prev = mu.mu_of(i - 1)?;
    let e = (prev - 1) / (i - 1);
    let f = prev - 1 - e * (i - 1);

    let mut parts = Vec::with_capacity(s);
    parts.extend(std::iter::repeat_n(e + 2, f));
    parts.extend(std::iter::repeat_n(e + 1, i - 1 - f));
    parts.push(mu.part(i) + 1);
    parts.extend((i + 1..s).map(|k| mu.part(k)));
    parts.push(mu.part(s) - 1);
    let partition = Partition::from_parts_dropping_zeros(parts)?;

    let witness = MinimalityWitness { partition, e, f };
    witness_postconditions(mu, i, &witness.partition)?;
    Ok(witness)
}

/// Checks `|μ̃| = |μ|`, `μ̃(j) ≤ μ(j)` for `j < i` and `μ̃(i) > μ(i)`.
pub fn witness_postconditions(mu: &Partition, i: usize, witness: &Partition) -> Result<()> {
    if witness.n() != mu.n() {
        return Err(Error::Precondition(format!(
            "witness {witness} has size {} != {}",
            witness.n(),
            mu.n()
        )));
    }
    if witness.len() < i {
        return Err(Error::Precondition(format!(
            "witness {witness} is shorter than {i}"
        )));
    }
    for j in 1..i {
        if witness.mu_of(j)? > mu.mu_of(j)? {
            return Err(Error::Precondition(format!(
                "witness {witness} exceeds {mu} at j = {j}"
            )));
        }
    }
    if witness.mu_of(i)? <= mu.mu_of(i)? {
        return Err(Error::Precondition(format!(
            "witness {witness} does not exceed {mu} at i = {i}"
        )));
    }
    Ok(())
}

/// The partition `(μ_1, …, μ_{i−1}, μ_i^r, f)` used when `U_{i,μ(i)}` is
/// redundant, with `n = μ_1 + … + μ_{i−1} + r·μ_i + f` and `0 ≤ f < μ_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RedundancyWitness {
    pub partition: Partition,
    pub r: usize,
    pub f: usize,
}

pub fn redundancy_witness(mu: &Partition, i: usize) -> Result<RedundancyWitness> {
    if i < 2 {
        return Err(Error::Precondition(
            "redundancy witness needs i >= 2".into(),
        ));
    }
    mu.mu_of(i)?;
    if main_condition(mu, i)? {
        return Err(Error::Precondition(format!(
            "minimality condition holds at i = {i} for {mu}"
        )));
    }
    let head: usize = mu.parts()[..i - 1].iter().sum();
    let rest = mu.n() - head;
    let a = mu.part(i);
    let (r, f) = (rest / a, rest % a);
    let mut parts = mu.parts()[..i - 1].to_vec();
    parts.extend(std::iter::repeat_n(a, r));
    if f > 0 {
        parts.push(f);
    }
    Ok(RedundancyWitness {
        partition: Partition::new(parts)?,
        r,
        f,
    })
}
