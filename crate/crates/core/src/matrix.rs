//! Small dense exact matrices over the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An `n × n` matrix with exact rational entries, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    n: usize,
    entries: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zero(n: usize) -> Self {
        RationalMatrix {
            n,
            entries: vec![BigRational::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for k in 0..n {
            m.entries[k * n + k] = BigRational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Precondition(
                "matrix rows must all have length n".into(),
            ));
        }
        Ok(RationalMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&v| BigRational::from_integer(BigInt::from(v)))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry at 0-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> &BigRational {
        &self.entries[row * self.n + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: BigRational) {
        self.entries[row * self.n + col] = value;
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.n, other.n, "matrix size mismatch");
        let n = self.n;
        let mut out = Self::zero(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        out.entries[r * n + c] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, e: usize) -> RationalMatrix {
        let mut acc = Self::identity(self.n);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Rank by Gaussian elimination over Q.
    pub fn rank(&self) -> usize {
        let n = self.n;
        let mut rows: Vec<Vec<BigRational>> = (0..n)
            .map(|r| self.entries[r * n..(r + 1) * n].to_vec())
            .collect();
        let mut rank = 0;
        for col in 0..n {
            let Some(pivot) = (rank..n).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(rank, pivot);
            let inv = rows[rank][col].recip();
            let pivot_row: Vec<BigRational> = rows[rank].iter().map(|v| v * &inv).collect();
            for row in &mut rows[rank + 1..] {
                if row[col].is_zero() {
                    continue;
                }
                let factor = row[col].clone();
                for (v, pv) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *v -= &factor * pv;
                }
            }
            rows[rank] = pivot_row;
            rank += 1;
        }
        rank
    }

    /// Determinant of the submatrix on the given 0-based rows and columns.
    pub fn minor_value(&self, rows: &[usize], cols: &[usize]) -> BigRational {
        assert_eq!(rows.len(), cols.len(), "minor must be square");
        let k = rows.len();
        let mut a: Vec<Vec<BigRational>> = rows
            .iter()
            .map(|&r| cols.iter().map(|&c| self.get(r, c).clone()).collect())
            .collect();
        let mut det = BigRational::one();
        for col in 0..k {
            let Some(pivot) = (col..k).find(|&r| !a[r][col].is_zero()) else {
                return BigRational::zero();
            };
            if pivot != col {
                a.swap(col, pivot);
                det = -det;
            }
            let p = a[col][col].clone();
            det *= &p;
            let inv = p.recip();
            let (top, bottom) = a.split_at_mut(col + 1);
            let pivot_row = &top[col];
            for row in bottom {
                if row[col].is_zero() {
                    continue;
                }
                let factor = &row[col] * &inv;
                for (v, pv) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *v -= &factor * pv;
                }
            }
        }
        det
    }

    /// Inverse by Gauss-Jordan elimination, or `None` when singular.
    pub fn inverse(&self) -> Option<RationalMatrix> {
        let n = self.n;
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|r| {
                let mut row = self.entries[r * n..(r + 1) * n].to_vec();
                row.extend((0..n).map(|c| {
                    if c == r {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                }));
                row
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, pivot);
            let inv = a[col][col].recip();
            for v in a[col].iter_mut() {
                *v *= &inv;
            }
            let pivot_row = a[col].clone();
            for (r, row) in a.iter_mut().enumerate() {
                if r == col || row[col].is_zero() {
                    continue;
                }
                let factor = row[col].clone();
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    *v -= &factor * p;
                }
            }
        }
        let entries = a
            .into_iter()
            .flat_map(|row| row.into_iter().skip(n))
            .collect();
        Some(RationalMatrix { n, entries })
    }

    /// `(D, N)` with `N = D · self` integral and `D > 0` the lcm of the
    /// denominators.
    pub fn clear_denominators(&self) -> (BigInt, Vec<BigInt>) {
        let d = self
            .entries
            .iter()
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let scaled = self
            .entries
            .iter()
            .map(|v| v.numer() * (&d / v.denom()))
            .collect();
        (d, scaled)
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.n)
            .map(|r| (0..self.n).map(|c| self.get(r, c).to_string()).collect())
            .collect();
        write!(f, "{rows:?}")
    }
}

/// Rows of decimal rational strings (`"3"`, `"-7/2"`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SerializedMatrix(pub Vec<Vec<String>>);

impl From<&RationalMatrix> for SerializedMatrix {
    fn from(m: &RationalMatrix) -> Self {
        SerializedMatrix(
            (0..m.n)
                .map(|r| (0..m.n).map(|c| m.get(r, c).to_string()).collect())
                .collect(),
        )
    }
}

impl TryFrom<&SerializedMatrix> for RationalMatrix {
    type Error = Error;

    fn try_from(s: &SerializedMatrix) -> Result<Self> {
        let rows =
            s.0.iter()
                .map(|row| {
                    row.iter()
                        .map(|v| parse_rational(v))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
        RationalMatrix::from_rows(rows)
    }
}

impl Serialize for RationalMatrix {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        SerializedMatrix::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RationalMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let s = SerializedMatrix::deserialize(deserializer)?;
        RationalMatrix::try_from(&s).map_err(serde::de::Error::custom)
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a, b),
        None => (s, "1"),
    };
    let num: BigInt = num
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    let den: BigInt = den
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    if den.is_zero() || den.is_negative() {
        return Err(Error::Parse(format!("bad denominator in {s:?}")));
    }
    Ok(BigRational::new(num, den))
}
