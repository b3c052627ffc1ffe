//! Dimensions of the summands `U_{j,p}` and complement bases for them.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::EchelonBasis;
use crate::minors::{binomial, greedy_extend, v_family, VBasis, VElement};
use crate::polyring::Polynomial;
use crate::schedule::is_nonzero;

/// Dimension of `U_{j,p}` for any `p` with `j ≤ min(p, n − p)`.
pub fn udim(n: usize, j: usize) -> u64 {
    match j {
        0 => 1,
        _ if j > n / 2 => 0,
        _ => binomial(n, j).pow(2) - binomial(n, j - 1).pow(2),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UDimensionTable {
    pub n: usize,
    /// `dims[j] = udim(n, j)` for `j = 0..=n`.
    pub dims: Vec<u64>,
}

impl UDimensionTable {
    pub fn new(n: usize) -> Self {
        UDimensionTable {
            n,
            dims: (0..=n).map(|j| udim(n, j)).collect(),
        }
    }

    /// `Σ_{j ≤ m} d_j`.
    pub fn partial_sum(&self, m: usize) -> u64 {
        self.dims.iter().take(m + 1).sum()
    }
}

/// A basis of `V_{i−1,p}` followed by family elements completing it to a
/// basis of `V_{i,p}`.
#[derive(Clone, Debug)]
pub struct ComplementBasis {
    pub lower: VBasis,
    pub complement: Vec<VElement>,
}

impl ComplementBasis {
    pub fn complement_polynomials(&self) -> Vec<Polynomial> {
        let combos: Vec<_> = self.complement.iter().map(|e| &e.combination).collect();
        crate::minors::to_polynomials(&combos)
    }

    /// All elements, lower basis first.
    pub fn full_basis(&self) -> Vec<&VElement> {
        self.lower.elements.iter().chain(&self.complement).collect()
    }
}

/// Splits `V_{i,p}` as a `V_{i−1,p}` basis plus complement
/// representatives. When `U_{i,p}` is zero the complement is empty.
pub fn complement_split(n: usize, i: usize, p: usize) -> Result<ComplementBasis> {
    if p == 0 || p > n {
        return Err(Error::Precondition(format!(
            "minor size {p} outside 1..={n}"
        )));
    }
    let lower_i = i.saturating_sub(1);
    let mut echelon = EchelonBasis::<BigRational>::new();
    let lower = greedy_extend(&mut echelon, v_family(n, lower_i, p));
    let complement = if i >= 1 && is_nonzero(n, i, p) {
        greedy_extend(&mut echelon, v_family(n, i, p))
    } else {
        Vec::new()
    };
    Ok(ComplementBasis {
        lower: VBasis {
            n,
            i: lower_i,
            p,
            elements: lower,
        },
        complement,
    })
}

/// Representatives of `U_{i,p}`: elements of the `V_{i,p}` family spanning
/// it modulo `V_{i−1,p}`. Empty outside `1 ≤ i ≤ min(p, n − p)`.
pub fn u_complement_basis(n: usize, i: usize, p: usize) -> Vec<Polynomial> {
    if i == 0 || p == 0 || p > n || !is_nonzero(n, i, p) {
        return Vec::new();
    }
    complement_split(n, i, p)
        .map(|c| c.complement_polynomials())
        .unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minors::{v_family_rank, v_span_basis};

    #[test]
    fn udim_examples() {
        assert_eq!(udim(3, 1), 8);
        assert_eq!(udim(7, 0), 1);
        assert_eq!(udim(4, 2), 20);
        assert_eq!(udim(4, 3), 0);
        assert_eq!(udim(5, 2), 100 - 25);
    }

    #[test]
    fn telescoping_up_to_12() {
        for n in 0..=12 {
            let table = UDimensionTable::new(n);
            assert_eq!(table.dims[0], 1);
            for m in 0..=n / 2 {
                assert_eq!(table.partial_sum(m), binomial(n, m).pow(2), "n={n} m={m}");
            }
        }
    }

    #[test]
    fn rank_differences_match_udim() {
        for n in 1..=4 {
            for p in 1..=n {
                for i in 1..=n {
                    let diff =
                        v_family_rank(n, i, p).unwrap() - v_family_rank(n, i - 1, p).unwrap();
                    let expected = if i <= p.min(n - p) { udim(n, i) } else { 0 };
                    assert_eq!(diff as u64, expected, "n={n} i={i} p={p}");
                }
            }
        }
    }

    #[test]
    fn complement_examples() {
        assert_eq!(u_complement_basis(2, 1, 1).len(), 3);
        assert_eq!(u_complement_basis(4, 2, 2).len(), 20);
        assert_eq!(u_complement_basis(3, 1, 2).len(), 8);
        assert!(u_complement_basis(4, 2, 3).is_empty());
        assert!(u_complement_basis(3, 0, 2).is_empty());
    }

    #[test]
    fn complement_completes_basis() {
        for n in 2..=4 {
            for p in 1..=n {
                for i in 1..=p.min(n - p) {
                    let split = complement_split(n, i, p).unwrap();
                    let mut echelon = EchelonBasis::<BigRational>::new();
                    for e in split.full_basis() {
                        assert!(echelon.insert(0, &e.combination.coordinates()).is_some());
                    }
                    let m = i.min(p).min(n - p);
                    assert_eq!(echelon.rank() as u64, binomial(n, m).pow(2));
                    assert_eq!(split.lower.len(), v_span_basis(n, i - 1, p).unwrap().len());
                }
            }
        }
    }
}
