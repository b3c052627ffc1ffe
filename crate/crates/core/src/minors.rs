//! Minors of the generic matrix and the sums of minors
//!
//! ```text
//! v(P, Q; p) = Σ_{|J| = p − i} (P, J | Q, J)
//! ```
//!
//! whose span is `V_{i,p} = U_{0,p} ⊕ … ⊕ U_{min(i, n−p),p}`.
//!
//! Linear algebra on these spaces is done in *minor coordinates*: a linear
//! combination of `p × p` minors is a sparse vector indexed by the sorted
//! pair `(I, J)`. Distinct minors of the generic matrix are linearly
//! independent polynomials (each has its own diagonal monomial), so ranks in
//! minor coordinates equal ranks of the expanded polynomials.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{EchelonBasis, SparseRow};
use crate::matrix::RationalMatrix;
use crate::polyring::{Monomial, Polynomial, Variable};

/// A square minor `(I | J)` with sorted, duplicate-free, 1-based indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MinorIndex {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl MinorIndex {
    pub fn new(n: usize, rows: Vec<usize>, cols: Vec<usize>) -> Result<Self> {
        if rows.is_empty() || rows.len() != cols.len() {
            return Err(Error::InvalidMinor(format!(
                "need |I| = |J| >= 1, got {rows:?} | {cols:?}"
            )));
        }
        for set in [&rows, &cols] {
            if !set.windows(2).all(|w| w[0] < w[1]) || set[0] == 0 || *set.last().unwrap() > n {
                return Err(Error::InvalidMinor(format!(
                    "{set:?} is not a sorted subset of 1..={n}"
                )));
            }
        }
        Ok(MinorIndex { rows, cols })
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    fn key(&self, n: usize) -> usize {
        (mask(&self.rows) << n) | mask(&self.cols)
    }

    fn from_key(n: usize, key: usize) -> Self {
        MinorIndex {
            rows: unmask(key >> n),
            cols: unmask(key & ((1 << n) - 1)),
        }
    }
}

fn mask(set: &[usize]) -> usize {
    set.iter().fold(0, |m, &k| m | (1 << (k - 1)))
}

fn unmask(m: usize) -> Vec<usize> {
    (0..usize::BITS as usize)
        .filter(|&b| m >> b & 1 == 1)
        .map(|b| b + 1)
        .collect()
}

/// Determinant of the submatrix with the given rows and columns, expanded
/// along rows with the lower cofactors memoized by column subset.
pub fn minor(n: usize, rows: &[usize], cols: &[usize]) -> Result<Polynomial> {
    let idx = MinorIndex::new(n, rows.to_vec(), cols.to_vec())?;
    Ok(expand_minor(n, &idx))
}

fn expand_minor(n: usize, idx: &MinorIndex) -> Polynomial {
    let r = idx.size();
    // memo[col_mask] = determinant of rows idx.rows[r - |mask| ..] on those columns
    let mut memo: HashMap<u32, BTreeMap<Monomial, BigInt>> = HashMap::new();
    memo.insert(0, BTreeMap::from([(Monomial::one(n), BigInt::from(1))]));
    let full = (1u32 << r) - 1;
    // Subsets by increasing size.
    let mut by_size: Vec<Vec<u32>> = vec![Vec::new(); r + 1];
    for m in 1..=full {
        by_size[m.count_ones() as usize].push(m);
    }
    for (size, masks) in by_size.iter().enumerate().skip(1) {
        let row = idx.rows[r - size];
        for &m in masks {
            let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
            let mut position = 0;
            for b in 0..r {
                if m >> b & 1 == 0 {
                    continue;
                }
                let var = Monomial::variable(
                    n,
                    Variable {
                        row,
                        col: idx.cols[b],
                    },
                );
                let negative = position % 2 == 1;
                for (mono, c) in &memo[&(m & !(1 << b))] {
                    let c = if negative { -c } else { c.clone() };
                    *acc.entry(mono.mul(&var)).or_default() += c;
                }
                position += 1;
            }
            memo.insert(m, acc);
        }
        if size >= 2 {
            memo.retain(|k, _| k.count_ones() as usize >= size);
        }
    }
    let mut terms = memo.remove(&full).expect("full subset");
    terms.retain(|_, c| *c != BigInt::from(0));
    Polynomial::from_sorted_unchecked(n, terms)
}

/// The invariant `t_p`: the sum of the principal `p × p` minors.
pub fn invariant_t(n: usize, p: usize) -> Result<Polynomial> {
    if p == 0 || p > n {
        return Err(Error::Precondition(format!(
            "invariant degree {p} outside 1..={n}"
        )));
    }
    Ok(MinorCombination::invariant(n, p).to_polynomial())
}

/// A linear combination of `p × p` minors with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorCombination {
    n: usize,
    p: usize,
    terms: BTreeMap<usize, i64>,
}

impl MinorCombination {
    pub fn zero(n: usize, p: usize) -> Self {
        MinorCombination {
            n,
            p,
            terms: BTreeMap::new(),
        }
    }

    /// `t_p` in minor coordinates.
    pub fn invariant(n: usize, p: usize) -> Self {
        let terms = subsets(n, p)
            .into_iter()
            .map(|s| {
                (
                    MinorIndex {
                        rows: s.clone(),
                        cols: s,
                    }
                    .key(n),
                    1,
                )
            })
            .collect();
        MinorCombination { n, p, terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `(minor, coefficient)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (MinorIndex, i64)> + '_ {
        self.terms
            .iter()
            .map(|(&k, &c)| (MinorIndex::from_key(self.n, k), c))
    }

    /// Coordinates over the minor basis.
    pub fn coordinates(&self) -> SparseRow<BigRational> {
        self.terms
            .iter()
            .map(|(&k, &c)| (k, BigRational::from_integer(c.into())))
            .collect()
    }

    pub fn neg(&self) -> Self {
        MinorCombination {
            n: self.n,
            p: self.p,
            terms: self.terms.iter().map(|(&k, &c)| (k, -c)).collect(),
        }
    }

    pub fn to_polynomial(&self) -> Polynomial {
        let minors: Vec<MinorIndex> = self.terms().map(|(m, _)| m).collect();
        let cache = expand_all(self.n, minors);
        self.assemble(&cache)
    }

    fn assemble(&self, cache: &HashMap<usize, Polynomial>) -> Polynomial {
        let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (k, c) in &self.terms {
            let c = BigInt::from(*c);
            for (m, v) in cache[k].terms() {
                *acc.entry(m.clone()).or_default() += v * &c;
            }
        }
        acc.retain(|_, v| *v != BigInt::from(0));
        Polynomial::from_sorted_unchecked(self.n, acc)
    }
}

fn expand_all(n: usize, minors: Vec<MinorIndex>) -> HashMap<usize, Polynomial> {
    let mut unique: Vec<MinorIndex> = minors;
    unique.sort();
    unique.dedup();
    unique
        .into_par_iter()
        .map(|m| (m.key(n), expand_minor(n, &m)))
        .collect()
}

/// Expands many combinations, sharing the minor expansions.
pub fn to_polynomials(combos: &[&MinorCombination]) -> Vec<Polynomial> {
    let Some(n) = combos.first().map(|c| c.n) else {
        return Vec::new();
    };
    let minors: Vec<MinorIndex> = combos
        .iter()
        .flat_map(|c| c.terms().map(|(m, _)| m))
        .collect();
    let cache = expand_all(n, minors);
    combos.par_iter().map(|c| c.assemble(&cache)).collect()
}

/// Evaluates minor combinations at a fixed matrix, caching each minor.
pub struct MinorEvaluator<'a> {
    matrix: &'a RationalMatrix,
    cache: HashMap<usize, BigRational>,
}

impl<'a> MinorEvaluator<'a> {
    pub fn new(matrix: &'a RationalMatrix) -> Self {
        MinorEvaluator {
            matrix,
            cache: HashMap::new(),
        }
    }

    pub fn evaluate(&mut self, combo: &MinorCombination) -> BigRational {
        assert_eq!(combo.n, self.matrix.n(), "evaluation point size mismatch");
        let mut total = BigRational::zero();
        for (&key, &c) in &combo.terms {
            let value = self.cache.entry(key).or_insert_with(|| {
                let idx = MinorIndex::from_key(combo.n, key);
                let rows: Vec<usize> = idx.rows.iter().map(|r| r - 1).collect();
                let cols: Vec<usize> = idx.cols.iter().map(|c| c - 1).collect();
                self.matrix.minor_value(&rows, &cols)
            });
            total += value.clone() * BigRational::from_integer(c.into());
        }
        total
    }
}

/// Sign of the permutation sorting `v`, or `None` if `v` has a repeat.
fn sort_sign(v: &mut [usize]) -> Option<i64> {
    let mut sign = 1;
    for a in 1..v.len() {
        let mut b = a;
        while b > 0 && v[b - 1] > v[b] {
            v.swap(b - 1, b);
            sign = -sign;
            b -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

fn check_indices(n: usize, set: &[usize]) -> Result<()> {
    if let Some(&bad) = set.iter().find(|&&k| k == 0 || k > n) {
        return Err(Error::InvalidMinor(format!("index {bad} outside 1..={n}")));
    }
    Ok(())
}

/// `v(P, Q; p)` in minor coordinates. Rows are ordered `P` then sorted `J`,
/// columns `Q` then sorted `J`, and each determinant is brought to sorted
/// form with the permutation signs applied. Repeated entries in `P` or `Q`
/// give zero.
pub fn v_combination(
    n: usize,
    p_rows: &[usize],
    q_cols: &[usize],
    p: usize,
) -> Result<MinorCombination> {
    let i = p_rows.len();
    if q_cols.len() != i {
        return Err(Error::InvalidMinor(format!(
            "|P| = {i} but |Q| = {}",
            q_cols.len()
        )));
    }
    if i > p || p > n || p == 0 {
        return Err(Error::Precondition(format!(
            "need 0 <= i <= p <= n, got i = {i}, p = {p}, n = {n}"
        )));
    }
    check_indices(n, p_rows)?;
    check_indices(n, q_cols)?;
    let mut out = MinorCombination::zero(n, p);
    let free: Vec<usize> = (1..=n)
        .filter(|k| !p_rows.contains(k) && !q_cols.contains(k))
        .collect();
    for j in choose(&free, p - i) {
        let mut rows: Vec<usize> = p_rows.iter().chain(&j).copied().collect();
        let mut cols: Vec<usize> = q_cols.iter().chain(&j).copied().collect();
        let (Some(sr), Some(sc)) = (sort_sign(&mut rows), sort_sign(&mut cols)) else {
            continue;
        };
        let key = MinorIndex { rows, cols }.key(n);
        let slot = out.terms.entry(key).or_insert(0);
        *slot += sr * sc;
        if *slot == 0 {
            out.terms.remove(&key);
        }
    }
    Ok(out)
}

pub fn v_element(n: usize, p_rows: &[usize], q_cols: &[usize], p: usize) -> Result<Polynomial> {
    Ok(v_combination(n, p_rows, q_cols, p)?.to_polynomial())
}

/// One spanning element of `V_{i,p}` with its labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VElement {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub combination: MinorCombination,
}

/// A basis of `V_{i,p}` drawn from the spanning family.
#[derive(Clone, Debug)]
pub struct VBasis {
    pub n: usize,
    pub i: usize,
    pub p: usize,
    pub elements: Vec<VElement>,
}

impl VBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn polynomials(&self) -> Vec<Polynomial> {
        let combos: Vec<&MinorCombination> = self.elements.iter().map(|e| &e.combination).collect();
        to_polynomials(&combos)
    }
}

/// The spanning family of `V_{i,p}` as `(P, Q)` pairs of strictly increasing
/// sequences, in lexicographic order. Reordering `P` or `Q` only changes the
/// sign of an element, so this family spans the same space as the one over
/// all ordered duplicate-free sequences, and a greedy pass over that larger
/// family in lexicographic order keeps exactly the elements kept here.
pub fn v_family(n: usize, i: usize, p: usize) -> impl Iterator<Item = VElement> {
    let i = i.min(p);
    let sets = subsets(n, i);
    let pairs: Vec<(Vec<usize>, Vec<usize>)> = sets
        .iter()
        .flat_map(|a| sets.iter().map(move |b| (a.clone(), b.clone())))
        .collect();
    pairs.into_iter().filter_map(move |(rows, cols)| {
        let combination = v_combination(n, &rows, &cols, p).expect("valid family index");
        (!combination.is_zero()).then_some(VElement {
            rows,
            cols,
            combination,
        })
    })
}

/// A maximal independent subset of the `V_{i,p}` spanning family, chosen
/// greedily in lexicographic `(P, Q)` order with exact rank updates. For
/// `i > p` the filtration has stabilized and `V_{p,p}` is returned.
pub fn v_span_basis(n: usize, i: usize, p: usize) -> Result<VBasis> {
    if p == 0 || p > n {
        return Err(Error::Precondition(format!(
            "minor size {p} outside 1..={n}"
        )));
    }
    let mut echelon = EchelonBasis::<BigRational>::new();
    let elements = greedy_extend(&mut echelon, v_family(n, i, p));
    Ok(VBasis { n, i, p, elements })
}

/// Inserts family elements into `echelon` in order, returning the ones that
/// were independent.
pub(crate) fn greedy_extend(
    echelon: &mut EchelonBasis<BigRational>,
    family: impl Iterator<Item = VElement>,
) -> Vec<VElement> {
    let mut kept = Vec::new();
    for (k, e) in family.enumerate() {
        if echelon.insert(k, &e.combination.coordinates()).is_some() {
            kept.push(e);
        }
    }
    kept
}

/// Rank of the whole `V_{i,p}` spanning family.
pub fn v_family_rank(n: usize, i: usize, p: usize) -> Result<usize> {
    Ok(v_span_basis(n, i, p)?.len())
}

/// Sorted `k`-subsets of `1..=n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    choose(&(1..=n).collect::<Vec<_>>(), k)
}

fn choose(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn rec(
        items: &[usize],
        k: usize,
        start: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for idx in start..items.len() {
            if items.len() - idx < k - cur.len() {
                break;
            }
            cur.push(items[idx]);
            rec(items, k, idx + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= items.len() {
        rec(items, k, 0, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, j| acc * (n - j) as u64 / (j + 1) as u64)
}
