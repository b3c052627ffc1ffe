//! Sparse row echelon forms over exact fields.
//!
//! [`EchelonBasis`] maintains a row echelon basis of a growing set of sparse
//! rows. Each basis row starts with its pivot, normalized to one, and no two
//! rows share a pivot column. Rows are inserted one at a time, which gives
//! the greedy "keep the row if it is independent of everything kept so far"
//! selection used throughout the crate. With history tracking enabled the
//! basis also remembers how each of its rows was derived from the inserted
//! rows, so a membership answer can be turned into explicit coefficients.
//!
//! The same code runs over `Q` ([`BigRational`]) and over `Z/p` ([`Fp`]).

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

/// Field operations needed by the elimination code.
pub trait Field: Clone + PartialEq + fmt::Debug {
    fn is_zero(&self) -> bool;
    /// The multiplicative identity of the field `self` lives in.
    fn one_like(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Inverse of a nonzero element.
    fn inv(&self) -> Self;
}

impl Field for BigRational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        self.recip()
    }
}

/// An element of `Z/p` for a prime `p < 2^32`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    pub fn new(value: u64, modulus: u64) -> Self {
        Fp {
            value: value % modulus,
            modulus,
        }
    }

    pub fn from_bigint(v: &BigInt, modulus: u64) -> Self {
        let r = v.mod_floor(&BigInt::from(modulus));
        Fp {
            value: r.to_u64().expect("reduced residue fits"),
            modulus,
        }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn pow(&self, mut e: u64) -> Fp {
        let mut base = *self;
        let mut acc = Fp {
            value: 1 % self.modulus,
            modulus: self.modulus,
        };
        while e > 0 {
            if e & 1 == 1 {
                acc = Field::mul(&acc, &base);
            }
            base = Field::mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl Field for Fp {
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn one_like(&self) -> Self {
        Fp {
            value: 1,
            modulus: self.modulus,
        }
    }
    fn add(&self, other: &Self) -> Self {
        Fp {
            value: (self.value + other.value) % self.modulus,
            modulus: self.modulus,
        }
    }
    fn sub(&self, other: &Self) -> Self {
        Fp {
            value: (self.value + self.modulus - other.value) % self.modulus,
            modulus: self.modulus,
        }
    }
    fn mul(&self, other: &Self) -> Self {
        Fp {
            value: self.value * other.value % self.modulus,
            modulus: self.modulus,
        }
    }
    fn neg(&self) -> Self {
        Fp {
            value: (self.modulus - self.value) % self.modulus,
            modulus: self.modulus,
        }
    }
    fn inv(&self) -> Self {
        assert!(self.value != 0, "inverse of zero");
        self.pow(self.modulus - 2)
    }
}

/// A sparse row: `(column, value)` pairs with strictly increasing columns and
/// no zero values.
pub type SparseRow<F> = Vec<(usize, F)>;

/// Builds a sparse row from unsorted entries, summing duplicates.
pub fn sparse_row<F: Field>(entries: impl IntoIterator<Item = (usize, F)>) -> SparseRow<F> {
    let mut acc: BTreeMap<usize, F> = BTreeMap::new();
    for (c, v) in entries {
        match acc.get_mut(&c) {
            Some(slot) => *slot = slot.add(&v),
            None => {
                acc.insert(c, v);
            }
        }
    }
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

pub fn dot<F: Field>(a: &[(usize, F)], b: &[(usize, F)]) -> Option<F> {
    let (mut i, mut j) = (0, 0);
    let mut acc: Option<F> = None;
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                let t = a[i].1.mul(&b[j].1);
                acc = Some(match acc {
                    Some(s) => s.add(&t),
                    None => t,
                });
                i += 1;
                j += 1;
            }
        }
    }
    acc
}

/// Result of reducing a row against a basis: `row = residual + Σ c_k·b_k`.
#[derive(Clone, Debug)]
pub struct Reduction<F> {
    pub residual: SparseRow<F>,
    /// `(basis index, coefficient)` in the order the basis rows were used.
    pub used: Vec<(usize, F)>,
}

impl<F: Field> Reduction<F> {
    pub fn is_member(&self) -> bool {
        self.residual.is_empty()
    }
}

#[derive(Clone, Debug)]
struct History<F> {
    /// `b_k = scale · (source row − Σ factor_j · b_j)`.
    used: Vec<(usize, F)>,
    scale: F,
}

#[derive(Clone, Debug)]
pub struct EchelonBasis<F> {
    rows: Vec<SparseRow<F>>,
    pivot_of: HashMap<usize, usize>,
    sources: Vec<usize>,
    history: Option<Vec<History<F>>>,
}

impl<F: Field> Default for EchelonBasis<F> {
    fn default() -> Self {
        Self::new()
    }
}

impl<F: Field> EchelonBasis<F> {
    pub fn new() -> Self {
        EchelonBasis {
            rows: Vec::new(),
            pivot_of: HashMap::new(),
            sources: Vec::new(),
            history: None,
        }
    }

    /// A basis that records how each row was derived, enabling [`Self::solve`].
    pub fn with_history() -> Self {
        EchelonBasis {
            history: Some(Vec::new()),
            ..Self::new()
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseRow<F>] {
        &self.rows
    }

    /// Source ids of the rows that were kept, in insertion order.
    pub fn sources(&self) -> &[usize] {
        &self.sources
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r[0].0)
    }

    pub fn reduce(&self, row: &[(usize, F)]) -> Reduction<F> {
        let mut work: BTreeMap<usize, F> = row.iter().cloned().collect();
        let mut used = Vec::new();
        let mut cursor = 0usize;
        while let Some((&c, _)) = work.range(cursor..).next() {
            cursor = c + 1;
            let Some(&k) = self.pivot_of.get(&c) else {
                continue;
            };
            let factor = work.remove(&c).expect("present");
            for (col, v) in &self.rows[k][1..] {
                let delta = factor.mul(v);
                match work.get_mut(col) {
                    Some(slot) => {
                        *slot = slot.sub(&delta);
                        if slot.is_zero() {
                            work.remove(col);
                        }
                    }
                    None => {
                        work.insert(*col, delta.neg());
                    }
                }
            }
            used.push((k, factor));
        }
        Reduction {
            residual: work.into_iter().collect(),
            used,
        }
    }

    pub fn contains(&self, row: &[(usize, F)]) -> bool {
        self.reduce(row).is_member()
    }

    /// Inserts `row` tagged with `source`. Returns the new basis index when
    /// the row is independent of the current basis.
    pub fn insert(&mut self, source: usize, row: &[(usize, F)]) -> Option<usize> {
        let Reduction { residual, used } = self.reduce(row);
        let (pivot_col, pivot) = residual.first()?.clone();
        let scale = pivot.inv();
        let normalized: SparseRow<F> = residual
            .into_iter()
            .map(|(c, v)| (c, v.mul(&scale)))
            .collect();
        let k = self.rows.len();
        self.rows.push(normalized);
        self.pivot_of.insert(pivot_col, k);
        self.sources.push(source);
        if let Some(h) = self.history.as_mut() {
            h.push(History { used, scale });
        }
        Some(k)
    }

    /// Writes `row` as a combination of inserted source rows, if it lies in
    /// the span. Requires a basis built with [`Self::with_history`].
    pub fn solve(&self, row: &[(usize, F)]) -> Option<Vec<(usize, F)>> {
        let history = self
            .history
            .as_ref()
            .expect("solve needs a basis with history");
        let reduction = self.reduce(row);
        if !reduction.is_member() {
            return None;
        }
        let mut alpha: BTreeMap<usize, F> = BTreeMap::new();
        for (k, c) in reduction.used {
            accumulate(&mut alpha, k, c);
        }
        let mut by_source: BTreeMap<usize, F> = BTreeMap::new();
        while let Some((k, a)) = alpha.pop_last() {
            if a.is_zero() {
                continue;
            }
            let h = &history[k];
            let w = a.mul(&h.scale);
            for (j, f) in &h.used {
                accumulate(&mut alpha, *j, w.mul(f).neg());
            }
            accumulate(&mut by_source, self.sources[k], w);
        }
        Some(
            by_source
                .into_iter()
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        )
    }

    /// A linear functional `y` with `y·b = 0` for every basis row and
    /// `y·row ≠ 0`, or `None` when `row` is in the span. `y` separates `row`
    /// from the span of everything inserted so far.
    pub fn separating_functional(&self, row: &[(usize, F)]) -> Option<SparseRow<F>> {
        let reduction = self.reduce(row);
        let (star, lead) = reduction.residual.first()?.clone();
        let mut y: HashMap<usize, F> = HashMap::new();
        y.insert(star, lead.one_like());
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_unstable_by_key(|&k| std::cmp::Reverse(self.rows[k][0].0));
        for k in order {
            let b = &self.rows[k];
            let mut s: Option<F> = None;
            for (c, v) in &b[1..] {
                if let Some(yc) = y.get(c) {
                    let t = v.mul(yc);
                    s = Some(match s {
                        Some(acc) => acc.add(&t),
                        None => t,
                    });
                }
            }
            if let Some(s) = s {
                if !s.is_zero() {
                    y.insert(b[0].0, s.neg());
                }
            }
        }
        let mut out: SparseRow<F> = y.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        out.sort_unstable_by_key(|(c, _)| *c);
        Some(out)
    }
}

fn accumulate<F: Field>(map: &mut BTreeMap<usize, F>, key: usize, value: F) {
    match map.get_mut(&key) {
        Some(slot) => *slot = slot.add(&value),
        None => {
            map.insert(key, value);
        }
    }
}

/// Exact rank of a set of integer rows.
pub fn rank_over_q(rows: &[SparseRow<BigInt>]) -> usize {
    let mut basis = EchelonBasis::<BigRational>::new();
    for (k, row) in rows.iter().enumerate() {
        basis.insert(k, &to_rational_row(row));
    }
    basis.rank()
}

pub fn to_rational_row(row: &[(usize, BigInt)]) -> SparseRow<BigRational> {
    row.iter()
        .map(|(c, v)| (*c, BigRational::from_integer(v.clone())))
        .collect()
}

pub fn to_modular_row(row: &[(usize, BigInt)], p: u64) -> SparseRow<Fp> {
    row.iter()
        .map(|(c, v)| (*c, Fp::from_bigint(v, p)))
        .filter(|(_, v)| !v.is_zero())
        .collect()
}

/// Clears denominators of a rational row, returning an integer row with
/// content one and the sign of the first entry kept.
pub fn integral_row(row: &[(usize, BigRational)]) -> SparseRow<BigInt> {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
    let ints: Vec<(usize, BigInt)> = row
        .iter()
        .map(|(c, v)| (*c, v.numer() * (&lcm / v.denom())))
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
    if g.is_zero() {
        return Vec::new();
    }
    let g = g.abs();
    ints.into_iter().map(|(c, v)| (c, v / &g)).collect()
}

/// Deterministic Miller–Rabin for 32-bit inputs.
pub fn is_prime_u32(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7] {
        let mut x = Fp::new(a, n).pow(d).value;
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = x * x % n;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// `count` distinct random primes in `[2^30, 2^31)`.
pub fn random_primes<R: Rng>(rng: &mut R, count: usize) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::with_capacity(count);
    while out.len() < count {
        let candidate = rng.random_range((1u64 << 30)..(1u64 << 31)) | 1;
        if is_prime_u32(candidate) && !out.contains(&candidate) {
            out.push(candidate);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    fn row(v: &[i64]) -> SparseRow<BigRational> {
        sparse_row(v.iter().enumerate().map(|(c, &x)| (c, q(x))))
    }

    #[test]
    fn rank_and_membership() {
        let mut b = EchelonBasis::<BigRational>::with_history();
        assert_eq!(b.insert(0, &row(&[1, 2, 0, 1])), Some(0));
        assert_eq!(b.insert(1, &row(&[2, 4, 0, 2])), None);
        assert_eq!(b.insert(2, &row(&[0, 1, 1, 0])), Some(1));
        assert_eq!(b.insert(3, &row(&[1, 3, 1, 1])), None);
        assert_eq!(b.rank(), 2);
        assert_eq!(b.sources(), &[0, 2]);

        let target = row(&[3, 7, 1, 3]);
        let combo = b.solve(&target).unwrap();
        assert_eq!(combo, vec![(0, q(3)), (2, q(1))]);
        assert!(b.separating_functional(&target).is_none());

        let outside = row(&[0, 0, 1, 1]);
        assert!(b.solve(&outside).is_none());
        let y = b.separating_functional(&outside).unwrap();
        for r in [row(&[1, 2, 0, 1]), row(&[0, 1, 1, 0])] {
            assert!(dot(&y, &r).is_none_or(|v| Field::is_zero(&v)));
        }
        assert!(!Field::is_zero(&dot(&y, &outside).unwrap()));
    }

    #[test]
    fn fp_arithmetic() {
        let p = 2_147_483_647u64;
        let a = Fp::new(123_456_789, p);
        assert_eq!(Field::mul(&a, &a.inv()).value(), 1);
        assert_eq!(Field::add(&a, &a.neg()).value(), 0);
        assert_eq!(Fp::from_bigint(&BigInt::from(-1), p).value(), p - 1);
    }

    #[test]
    fn primes() {
        assert!(is_prime_u32(2_147_483_647));
        assert!(!is_prime_u32(2_147_483_649));
        assert!(!is_prime_u32(1));
        assert!(is_prime_u32(13));
        let small: Vec<u64> = (0..60).filter(|&k| is_prime_u32(k)).collect();
        assert_eq!(
            small,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let ps = random_primes(&mut rng, 3);
        assert_eq!(ps.len(), 3);
        assert!(ps
            .iter()
            .all(|&p| ((1 << 30)..(1 << 31)).contains(&p) && is_prime_u32(p)));
    }

    #[test]
    fn integral_rows() {
        let r = vec![
            (1, BigRational::new(1.into(), 2.into())),
            (4, BigRational::new((-3).into(), 4.into())),
        ];
        assert_eq!(
            integral_row(&r),
            vec![(1, BigInt::from(2)), (4, BigInt::from(-3))]
        );
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn dense_rank(mut m: Vec<Vec<BigRational>>) -> usize {
            let cols = m.first().map_or(0, |r| r.len());
            let mut rank = 0;
            for c in 0..cols {
                let Some(p) = (rank..m.len()).find(|&r| !Zero::is_zero(&m[r][c])) else {
                    continue;
                };
                m.swap(rank, p);
                let piv = m[rank].clone();
                for row in &mut m[rank + 1..] {
                    let f = &row[c] / &piv[c];
                    for (v, pv) in row.iter_mut().zip(&piv) {
                        *v -= &f * pv;
                    }
                }
                rank += 1;
            }
            rank
        }

        proptest! {
            #[test]
            fn sparse_rank_matches_dense(rows in proptest::collection::vec(proptest::collection::vec(-2i64..=2, 6), 1..9)) {
                let dense: Vec<Vec<BigRational>> = rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect();
                let mut basis = EchelonBasis::<BigRational>::new();
                for (k, r) in rows.iter().enumerate() {
                    basis.insert(k, &row(r));
                }
                prop_assert_eq!(basis.rank(), dense_rank(dense));
            }

            #[test]
            fn solve_recombines(rows in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 5), 1..7),
                                coeffs in proptest::collection::vec(-3i64..=3, 7)) {
                let mut basis = EchelonBasis::<BigRational>::with_history();
                for (k, r) in rows.iter().enumerate() {
                    basis.insert(k, &row(r));
                }
                let target: Vec<i64> = (0..5).map(|c| rows.iter().zip(&coeffs).map(|(r, a)| r[c] * a).sum()).collect();
                let combo = basis.solve(&row(&target)).expect("in span");
                let rebuilt: Vec<BigRational> = (0..5)
                    .map(|c| combo.iter().map(|(s, a)| a * q(rows[*s][c])).fold(q(0), |x, y| x + y))
                    .collect();
                prop_assert_eq!(rebuilt, target.iter().map(|&v| q(v)).collect::<Vec<_>>());
            }
        }
    }
}
