//! Integer partitions, their conjugates and the text syntax used on the
//! command line (`3,3,2,2,1,1,1,1,1` or the shorthand `3^2,2^2,1^5`).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A non-increasing sequence of positive integers. `n()` is the sum.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidPartition("no parts".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("zero part in {parts:?}")));
        }
        if !parts.windows(2).all(|w| w[0] >= w[1]) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} is not non-increasing"
            )));
        }
        Ok(Partition { parts })
    }

    /// Builds a partition after dropping zero parts. Used by constructions
    /// whose last part may reach zero.
    pub(crate) fn from_parts_dropping_zeros(mut parts: Vec<usize>) -> Result<Self> {
        parts.retain(|&p| p > 0);
        Partition::new(parts)
    }

    /// The single-row partition `(n)`.
    pub fn row(n: usize) -> Result<Self> {
        Partition::new(vec![n])
    }

    /// The single-column partition `(1^n)`.
    pub fn column(n: usize) -> Result<Self> {
        Partition::new(vec![1; n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The integer being partitioned.
    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts, `l(μ)`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The largest part.
    pub fn first(&self) -> usize {
        self.parts[0]
    }

    /// Part `i`, 1-based. Returns 0 past the end.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    /// The conjugate partition: `(μ^T)_i = #{j : μ_j ≥ i}`.
    pub fn conjugate(&self) -> Partition {
        let parts = (1..=self.first())
            .map(|i| self.parts.iter().filter(|&&p| p >= i).count())
            .collect();
        Partition { parts }
    }

    /// `μ(i) = μ_1 + … + μ_i − i + 1`, defined for `1 ≤ i ≤ l(μ)`.
    pub fn mu_of(&self, i: usize) -> Result<usize> {
        if i == 0 || i > self.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.len(),
            });
        }
        Ok(self.parts[..i].iter().sum::<usize>() + 1 - i)
    }

    /// `μ(i)` for every `i` in `1..=l(μ)`, as a vector indexed from 0.
    pub fn mu_values(&self) -> Vec<usize> {
        let mut acc = 0;
        self.parts
            .iter()
            .enumerate()
            .map(|(k, &p)| {
                acc += p;
                acc - k
            })
            .collect()
    }

    /// Whether all parts are equal.
    pub fn is_rectangle(&self) -> bool {
        self.parts.iter().all(|&p| p == self.parts[0])
    }

    /// Whether the partition has the form `(a, 1^b)`.
    pub fn is_hook(&self) -> bool {
        self.parts[1..].iter().all(|&p| p == 1)
    }

    /// Dominance order: `self ≤ other` iff every partial sum of `self` is at
    /// most the corresponding partial sum of `other` (equal totals assumed).
    pub fn dominated_by(&self, other: &Partition) -> bool {
        let len = self.len().max(other.len());
        let (mut a, mut b) = (0, 0);
        for i in 1..=len {
            a += self.part(i);
            b += other.part(i);
            if a > b {
                return false;
            }
        }
        true
    }

    /// Compact rendering with exponents for repeated parts, e.g. `3^2,2^2,1^5`.
    pub fn to_exponent_string(&self) -> String {
        let mut out = Vec::new();
        let mut k = 0;
        while k < self.parts.len() {
            let p = self.parts[k];
            let run = self.parts[k..].iter().take_while(|&&q| q == p).count();
            if run == 1 {
                out.push(p.to_string());
            } else {
                out.push(format!("{p}^{run}"));
            }
            k += run;
        }
        out.join(",")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        f.write_str(&s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let s = s
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(s);
        if s.is_empty() {
            return Err(Error::Parse("empty partition".into()));
        }
        let mut parts = Vec::new();
        for token in s.split(',') {
            let token = token.trim();
            let (base, exp) = match token.split_once('^') {
                Some((b, e)) => (b.trim(), e.trim()),
                None => (token, "1"),
            };
            let base: usize = base
                .parse()
                .map_err(|_| Error::Parse(format!("bad part {token:?}")))?;
            let exp: usize = exp
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in {token:?}")))?;
            if exp == 0 {
                return Err(Error::Parse(format!("zero exponent in {token:?}")));
            }
            parts.extend(std::iter::repeat_n(base, exp));
        }
        Partition::new(parts)
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

/// Iterator over all partitions of `n` in reverse lexicographic order,
/// starting with `(n)` and ending with `(1^n)`.
pub struct Partitions {
    next: Option<Vec<usize>>,
}

/// All partitions of `n` (none for `n = 0`).
pub fn partitions_of(n: usize) -> Partitions {
    Partitions {
        next: if n == 0 { None } else { Some(vec![n]) },
    }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.next.take()?;
        // Successor: find the last part > 1, decrement it, and refill the
        // remainder greedily with parts no larger than the decremented one.
        let mut parts = current.clone();
        let mut rest: usize = 0;
        while let Some(&1) = parts.last() {
            parts.pop();
            rest += 1;
        }
        if let Some(last) = parts.last_mut() {
            *last -= 1;
            let cap = *last;
            rest += 1;
            while rest > 0 {
                let take = rest.min(cap);
                parts.push(take);
                rest -= take;
            }
            self.next = Some(parts);
        }
        Some(Partition { parts: current })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(p("3,3,2,2,1,1,1,1,1").conjugate(), p("9,4,2"));
        assert_eq!(p("4,2,2,2,1,1,1,1,1").conjugate(), p("9,4,1,1"));
        assert_eq!(p("1^6").conjugate(), p("6"));
        assert_eq!(p("3^3,2,1^4").conjugate(), p("8,4,3"));
    }

    #[test]
    fn mu_of_examples() {
        let mu = p("4,2^3,1^5");
        assert_eq!(mu.mu_of(1).unwrap(), 4);
        assert_eq!(mu.mu_of(3).unwrap(), 6);
        assert_eq!(p("7").mu_of(1).unwrap(), 7);
        assert_eq!(mu.mu_values(), vec![4, 5, 6, 7, 7, 7, 7, 7, 7]);
        assert!(matches!(mu.mu_of(0), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(
            mu.mu_of(10),
            Err(Error::IndexOutOfRange { index: 10, len: 9 })
        ));
    }

    #[test]
    fn parse_syntax() {
        assert_eq!(p("3^2,2^2,1^5").parts(), &[3, 3, 2, 2, 1, 1, 1, 1, 1]);
        assert_eq!(p(" (2, 1) ").parts(), &[2, 1]);
        assert_eq!(p("3^2,2^2,1^5").to_exponent_string(), "3^2,2^2,1^5");
        assert_eq!(p("4,2,2,2,1").to_string(), "4,2,2,2,1");
        for bad in ["", "1,2", "3,0", "a", "2^0", "2^x", "3,,1", "-1"] {
            assert!(
                bad.parse::<Partition>().is_err(),
                "{bad:?} should not parse"
            );
        }
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (1..=12).map(|n| partitions_of(n).count()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]);
        let all: Vec<String> = partitions_of(4).map(|q| q.to_string()).collect();
        assert_eq!(all, vec!["4", "3,1", "2,2", "2,1,1", "1,1,1,1"]);
        assert_eq!(partitions_of(0).count(), 0);
    }

    #[test]
    fn dominance_and_shapes() {
        assert!(p("3,1").dominated_by(&p("4")));
        assert!(!p("4").dominated_by(&p("3,1")));
        assert!(p("2,2").dominated_by(&p("3,1")));
        assert!(p("2,2,2").is_rectangle());
        assert!(p("4,1,1").is_hook());
        assert!(!p("3,2").is_hook());
    }

    #[test]
    fn serde_shape() {
        let q = p("3,1");
        let json = serde_json::to_string(&q).unwrap();
        assert_eq!(json, "[3,1]");
        assert!(serde_json::from_str::<Partition>("[1,3]").is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_partition() -> impl Strategy<Value = Partition> {
            proptest::collection::vec(1usize..8, 1..10).prop_map(|mut v| {
                v.sort_unstable_by(|a, b| b.cmp(a));
                Partition::new(v).unwrap()
            })
        }

        proptest! {
            #[test]
            fn conjugate_is_involution(mu in arb_partition()) {
                let t = mu.conjugate();
                prop_assert_eq!(t.n(), mu.n());
                prop_assert_eq!(t.conjugate(), mu);
            }

            #[test]
            fn mu_values_non_decreasing(mu in arb_partition()) {
                let v = mu.mu_values();
                prop_assert!(v.windows(2).all(|w| w[0] <= w[1]));
                prop_assert_eq!(*v.last().unwrap(), mu.n() + 1 - mu.len());
            }

            #[test]
            fn text_round_trip(mu in arb_partition()) {
                prop_assert_eq!(mu.to_exponent_string().parse::<Partition>().unwrap(), mu.clone());
                prop_assert_eq!(mu.to_string().parse::<Partition>().unwrap(), mu);
            }
        }
    }
}
