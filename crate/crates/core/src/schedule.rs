//! Generator schedules: which invariants `t_p` and which minor spaces
//! `U_{i,p}` generate the ideal of a nilpotent orbit closure.
//!
//! Two schedules are computed. [`weyman_schedule`] lists every nonzero
//! `U_{i,μ(i)}` together with the invariants `t_1 … t_{μ_1}`; it generates the
//! ideal but is not minimal in general. [`minimal_schedule`] keeps `U_{1,μ(1)}`
//! and, for `i ≥ 2`, only those `U_{i,μ(i)}` for which
//!
//! ```text
//! μ(i) < μ(i−1) + ⌊(μ(i−1) − 1) / (i − 1)⌋
//! ```
//!
//! holds.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::schur::udim;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorKind {
    Invariant,
    MinorSpace,
}

/// One generator family: the invariant `t_p` (`i = 0`) or the minor space
/// `U_{i,p}` spanned inside the `p × p` minors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GeneratorDescriptor {
    pub kind: GeneratorKind,
    pub i: usize,
    pub p: usize,
    pub degree: usize,
    pub dimension: usize,
}

impl GeneratorDescriptor {
    pub fn invariant(p: usize) -> Self {
        GeneratorDescriptor {
            kind: GeneratorKind::Invariant,
            i: 0,
            p,
            degree: p,
            dimension: 1,
        }
    }

    /// The minor space `U_{i,p}` in `n × n` matrices, or `None` when it is zero.
    pub fn minor_space(n: usize, i: usize, p: usize) -> Option<Self> {
        if i == 0 || !is_nonzero(n, i, p) {
            return None;
        }
        Some(GeneratorDescriptor {
            kind: GeneratorKind::MinorSpace,
            i,
            p,
            degree: p,
            dimension: udim(n, i) as usize,
        })
    }

    pub fn label(&self) -> String {
        format!("U_{{{},{}}}", self.i, self.p)
    }
}

/// `U_{i,p}` is nonzero iff `i ≤ min(p, n − p)`.
pub fn is_nonzero(n: usize, i: usize, p: usize) -> bool {
    p <= n && i <= p.min(n - p)
}

/// The minimality condition at index `i`. Always true at `i = 1`.
pub fn main_condition(mu: &Partition, i: usize) -> Result<bool> {
    let here = mu.mu_of(i)?;
    if i == 1 {
        return Ok(true);
    }
    let prev = mu.mu_of(i - 1)?;
    Ok(here < prev + (prev - 1) / (i - 1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Schedule {
    pub partition: Partition,
    /// Ambient matrix size. Equals `partition.n()` except for rank varieties.
    pub n: usize,
    /// Degrees `p` of the invariants `t_p`.
    pub invariants: Vec<usize>,
    pub minor_spaces: Vec<GeneratorDescriptor>,
}

impl Schedule {
    pub fn invariant_descriptors(&self) -> Vec<GeneratorDescriptor> {
        self.invariants
            .iter()
            .map(|&p| GeneratorDescriptor::invariant(p))
            .collect()
    }

    /// All descriptors, invariants first.
    pub fn descriptors(&self) -> Vec<GeneratorDescriptor> {
        let mut all = self.invariant_descriptors();
        all.extend(self.minor_spaces.iter().copied());
        all
    }

    pub fn contains_minor_space(&self, i: usize) -> bool {
        self.minor_spaces.iter().any(|d| d.i == i)
    }

    /// `(i, p)` pairs of the minor spaces.
    pub fn minor_pairs(&self) -> Vec<(usize, usize)> {
        self.minor_spaces.iter().map(|d| (d.i, d.p)).collect()
    }

    /// Comma-separated generator list, e.g. `U_{0,1},U_{0,2},U_{1,2}`.
    pub fn generator_list(&self) -> String {
        self.descriptors()
            .iter()
            .map(|d| d.label())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Total number of minimal generators (vector-space dimensions summed).
    pub fn generator_count(&self) -> usize {
        self.descriptors().iter().map(|d| d.dimension).sum()
    }

    /// Columns of the conjugate diagram that carry an arrow.
    pub fn arrow_columns(&self) -> Vec<usize> {
        self.minor_spaces.iter().map(|d| d.i).collect()
    }

    /// Text rendering of the Young diagram of `μ^T` (row `r` has `μ^T_r`
    /// boxes, so column `c` has `μ_c` boxes) with a `^` under column `i`
    /// whenever `U_{i,μ(i)}` is scheduled.
    pub fn render_diagram(&self) -> String {
        let mu = &self.partition;
        let arrows = self.arrow_columns();
        let width = mu.len();
        let mut lines = Vec::new();
        for r in 1..=mu.first() + 1 {
            let mut line = String::new();
            for c in 1..=width {
                let col_len = mu.part(c);
                let cell = if r <= col_len {
                    "[]"
                } else if r == col_len + 1 && arrows.contains(&c) {
                    " ^"
                } else {
                    "  "
                };
                line.push_str(cell);
            }
            let line = line.trim_end().to_string();
            if !line.is_empty() {
                lines.push(line);
            }
        }
        lines.join("\n")
    }
}

/// Every nonzero `U_{i,μ(i)}` plus the invariants `t_1 … t_{μ_1}`.
pub fn weyman_schedule(mu: &Partition) -> Schedule {
    let n = mu.n();
    let minor_spaces = mu
        .mu_values()
        .into_iter()
        .enumerate()
        .filter_map(|(k, p)| GeneratorDescriptor::minor_space(n, k + 1, p))
        .collect();
    Schedule {
        partition: mu.clone(),
        n,
        invariants: (1..=mu.first()).collect(),
        minor_spaces,
    }
}

/// The minimal generating set.
pub fn minimal_schedule(mu: &Partition) -> Schedule {
    let n = mu.n();
    let minor_spaces = scheduled_minor_spaces(mu, n);
    Schedule {
        partition: mu.clone(),
        n,
        invariants: (1..=mu.first()).collect(),
        minor_spaces,
    }
}

fn scheduled_minor_spaces(mu: &Partition, n: usize) -> Vec<GeneratorDescriptor> {
    let values = mu.mu_values();
    (1..=mu.len())
        .filter(|&i| main_condition(mu, i).expect("index in range"))
        .filter_map(|i| GeneratorDescriptor::minor_space(n, i, values[i - 1]))
        .collect()
}

/// Indices `i ≥ 2` (up to `l(μ)`) where the minimality condition fails, i.e.
/// the families dropped from the Weyman list as redundant, including those
/// whose space is already zero.
pub fn excluded_indices(mu: &Partition) -> Vec<usize> {
    (2..=mu.len())
        .filter(|&i| !main_condition(mu, i).expect("index in range"))
        .collect()
}

/// Schedule for the rank variety of a partition `μ` of `l ≤ n` inside
/// `n × n` matrices: invariants `t_p` for `n − l + 1 ≤ p ≤ n − l + μ_1` and the
/// minor spaces `U_{i,μ(i)}` passing the minimality condition, with `μ(i)`
/// taken unshifted and the zero test done in the ambient size `n`.
pub fn rank_variety_schedule(mu: &Partition, n: usize) -> Result<Schedule> {
    let l = mu.n();
    if l > n {
        return Err(Error::Precondition(format!(
            "partition of {l} does not fit in {n}x{n} matrices"
        )));
    }
    let shift = n - l;
    Ok(Schedule {
        partition: mu.clone(),
        n,
        invariants: (shift + 1..=shift + mu.first()).collect(),
        minor_spaces: scheduled_minor_spaces(mu, n),
    })
}
