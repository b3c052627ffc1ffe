//! Sparse homogeneous polynomials with integer coefficients in the `n²`
//! entries `x_{ij}` of a generic `n × n` matrix.
//!
//! Monomials are stored as dense exponent vectors over the variables sorted
//! by `(row, col)`. The canonical order is graded lexicographic with `x_{11}`
//! the largest variable; serialized terms are listed from the largest
//! monomial down.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::RationalMatrix;

/// The coordinate function `x_{row,col}`, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Variable {
    pub row: usize,
    pub col: usize,
}

impl Variable {
    pub fn new(n: usize, row: usize, col: usize) -> Result<Self> {
        if row == 0 || col == 0 || row > n || col > n {
            return Err(Error::Precondition(format!(
                "variable x_({row},{col}) outside 1..={n}"
            )));
        }
        Ok(Variable { row, col })
    }

    fn index(&self, n: usize) -> usize {
        (self.row - 1) * n + (self.col - 1)
    }
}

/// A monomial in `n²` variables. Ordered by total degree, then
/// lexicographically on the exponent vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    degree: u32,
    exps: Box<[u8]>,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial {
            degree: 0,
            exps: vec![0; n * n].into_boxed_slice(),
        }
    }

    pub fn variable(n: usize, v: Variable) -> Self {
        let mut m = Self::one(n);
        m.exps[v.index(n)] = 1;
        m.degree = 1;
        m
    }

    /// Builds a monomial from `(variable, exponent)` pairs; repeated
    /// variables accumulate.
    pub fn from_powers(n: usize, powers: &[(Variable, u32)]) -> Result<Self> {
        let mut m = Self::one(n);
        for &(v, e) in powers {
            Variable::new(n, v.row, v.col)?;
            let slot = &mut m.exps[v.index(n)];
            let total = u32::from(*slot) + e;
            *slot = u8::try_from(total)
                .map_err(|_| Error::Precondition("exponent exceeds 255".into()))?;
            m.degree += e;
        }
        Ok(m)
    }

    pub(crate) fn from_exponents(exps: Vec<u8>) -> Self {
        let degree = exps.iter().map(|&e| u32::from(e)).sum();
        Monomial {
            degree,
            exps: exps.into_boxed_slice(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree as usize
    }

    pub fn exponents(&self) -> &[u8] {
        &self.exps
    }

    /// Ambient matrix size.
    pub fn n(&self) -> usize {
        (self.exps.len() as f64).sqrt().round() as usize
    }

    /// Nonzero `(variable, exponent)` pairs in `(row, col)` order.
    pub fn powers(&self) -> impl Iterator<Item = (Variable, u32)> + '_ {
        let n = self.n();
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(move |(k, &e)| {
                (
                    Variable {
                        row: k / n + 1,
                        col: k % n + 1,
                    },
                    u32::from(e),
                )
            })
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        let exps = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| a + b)
            .collect::<Vec<u8>>();
        Monomial {
            degree: self.degree + other.degree,
            exps: exps.into_boxed_slice(),
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 0 {
            return f.write_str("1");
        }
        let mut first = true;
        for (v, e) in self.powers() {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "x{}_{}", v.row, v.col)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// All monomials of degree `d` in `n²` variables, in increasing canonical
/// order. There are `C(n² + d − 1, d)` of them.
pub fn monomials_of_degree(n: usize, d: usize) -> Vec<Monomial> {
    fn rec(vars: usize, pos: usize, left: usize, cur: &mut Vec<u8>, out: &mut Vec<Monomial>) {
        if pos + 1 == vars {
            cur[pos] = left as u8;
            out.push(Monomial::from_exponents(cur.clone()));
            cur[pos] = 0;
            return;
        }
        // Increasing order: small exponents on early variables first.
        for e in 0..=left {
            cur[pos] = e as u8;
            rec(vars, pos + 1, left - e, cur, out);
        }
        cur[pos] = 0;
    }
    let vars = n * n;
    let mut out = Vec::new();
    if vars == 0 {
        return out;
    }
    rec(vars, 0, d, &mut vec![0; vars], &mut out);
    out
}

/// A homogeneous polynomial with integer coefficients. The zero polynomial
/// has no degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    n: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero(n: usize) -> Self {
        Polynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, BigInt::one())
    }

    pub fn constant(n: usize, c: BigInt) -> Self {
        Self::term(n, Monomial::one(n), c)
    }

    pub fn variable(n: usize, row: usize, col: usize) -> Result<Self> {
        let v = Variable::new(n, row, col)?;
        Ok(Self::term(n, Monomial::variable(n, v), BigInt::one()))
    }

    pub fn term(n: usize, m: Monomial, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { n, terms }
    }

    /// Sums like terms and rejects inhomogeneous input.
    pub fn from_terms(
        n: usize,
        terms: impl IntoIterator<Item = (Monomial, BigInt)>,
    ) -> Result<Self> {
        let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (m, c) in terms {
            if m.exps.len() != n * n {
                return Err(Error::AmbientMismatch {
                    left: n,
                    right: m.n(),
                });
            }
            *acc.entry(m).or_insert_with(BigInt::zero) += c;
        }
        acc.retain(|_, c| !c.is_zero());
        let p = Polynomial { n, terms: acc };
        let mut degrees = p.terms.keys().map(Monomial::degree);
        if let Some(d) = degrees.next() {
            if degrees.any(|e| e != d) {
                return Err(Error::Inhomogeneous);
            }
        }
        Ok(p)
    }

    pub(crate) fn from_sorted_unchecked(n: usize, terms: BTreeMap<Monomial, BigInt>) -> Self {
        Polynomial { n, terms }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Common total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next().map(Monomial::degree)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing canonical order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The largest term in the canonical order.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.combine(other, true)
    }

    fn combine(&self, other: &Polynomial, negate: bool) -> Result<Polynomial> {
        if self.n != other.n {
            return Err(Error::AmbientMismatch {
                left: self.n,
                right: other.n,
            });
        }
        if let (Some(a), Some(b)) = (self.degree(), other.degree()) {
            if a != b {
                return Err(Error::DegreeMismatch { left: a, right: b });
            }
        }
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let slot = terms.entry(m.clone()).or_insert_with(BigInt::zero);
            if negate {
                *slot -= c;
            } else {
                *slot += c;
            }
            if slot.is_zero() {
                terms.remove(m);
            }
        }
        Ok(Polynomial { n: self.n, terms })
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Polynomial {
        if k.is_zero() {
            return Polynomial::zero(self.n);
        }
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        if self.n != other.n {
            return Err(Error::AmbientMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let mut terms: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                *terms.entry(m1.mul(m2)).or_insert_with(BigInt::zero) += c1 * c2;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(Polynomial { n: self.n, terms })
    }

    /// Product with a single monomial; no cancellation is possible.
    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    /// Exact value at a rational matrix.
    pub fn evaluate(&self, m: &RationalMatrix) -> BigRational {
        EvaluationPoint::new(m).evaluate(self)
    }

    /// Positive content-free multiple: coefficients divided by their gcd,
    /// sign chosen so the leading coefficient is positive.
    pub fn primitive(&self) -> Polynomial {
        use num_integer::Integer;
        let Some((_, lead)) = self.leading_term() else {
            return self.clone();
        };
        let g = self
            .terms
            .values()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let g = if lead.is_negative() { -g } else { g };
        Polynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c / &g))
                .collect(),
        }
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let sign = if c.is_negative() {
                "-"
            } else if k == 0 {
                ""
            } else {
                "+"
            };
            let abs = c.abs();
            if k > 0 {
                f.write_str(" ")?;
            }
            f.write_str(sign)?;
            if k > 0 {
                f.write_str(" ")?;
            }
            if m.degree == 0 {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

/// A matrix prepared for repeated evaluation. Entries are scaled to
/// integers once; a homogeneous polynomial of degree `d` then evaluates to
/// `f(N) / D^d`.
pub struct EvaluationPoint {
    n: usize,
    denominator: BigInt,
    scaled: Vec<BigInt>,
}

impl EvaluationPoint {
    pub fn new(m: &RationalMatrix) -> Self {
        let (denominator, scaled) = m.clear_denominators();
        EvaluationPoint {
            n: m.n(),
            denominator,
            scaled,
        }
    }

    /// `f(N)` where `N = D·M` is the integral rescaling of the matrix.
    pub fn evaluate_scaled(&self, f: &Polynomial) -> BigInt {
        assert_eq!(f.n, self.n, "evaluation point size mismatch");
        let mut total = BigInt::zero();
        for (m, c) in &f.terms {
            let mut t = c.clone();
            for (k, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let v = &self.scaled[k];
                if v.is_zero() {
                    t.set_zero();
                    break;
                }
                t *= num_traits::pow(v.clone(), e as usize);
            }
            total += t;
        }
        total
    }

    pub fn evaluate(&self, f: &Polynomial) -> BigRational {
        let num = self.evaluate_scaled(f);
        let d = f.degree().unwrap_or(0);
        BigRational::new(num, num_traits::pow(self.denominator.clone(), d))
    }

    pub fn vanishes(&self, f: &Polynomial) -> bool {
        self.evaluate_scaled(f).is_zero()
    }
}

/// One serialized term: decimal coefficient and `[row, col, exponent]`
/// triples sorted by `(row, col)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SerializedTerm {
    pub coeff: String,
    pub monomial: Vec<[usize; 3]>,
}

/// Wire form of a polynomial. Terms are listed from the largest monomial in
/// the canonical order down.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SerializedPolynomial {
    pub n: usize,
    pub degree: Option<usize>,
    pub terms: Vec<SerializedTerm>,
}

impl From<&Polynomial> for SerializedPolynomial {
    fn from(p: &Polynomial) -> Self {
        let terms = p
            .terms
            .iter()
            .rev()
            .map(|(m, c)| SerializedTerm {
                coeff: c.to_string(),
                monomial: m
                    .powers()
                    .map(|(v, e)| [v.row, v.col, e as usize])
                    .collect(),
            })
            .collect();
        SerializedPolynomial {
            n: p.n,
            degree: p.degree(),
            terms,
        }
    }
}

impl TryFrom<&SerializedPolynomial> for Polynomial {
    type Error = Error;

    fn try_from(s: &SerializedPolynomial) -> Result<Self> {
        let mut terms = Vec::with_capacity(s.terms.len());
        for t in &s.terms {
            let c: BigInt = t
                .coeff
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient {:?}", t.coeff)))?;
            let powers = t
                .monomial
                .iter()
                .map(|&[row, col, e]| {
                    let e =
                        u32::try_from(e).map_err(|_| Error::Parse("exponent too large".into()))?;
                    Ok((Variable::new(s.n, row, col)?, e))
                })
                .collect::<Result<Vec<_>>>()?;
            terms.push((Monomial::from_powers(s.n, &powers)?, c));
        }
        let p = Polynomial::from_terms(s.n, terms)?;
        if let (Some(d), Some(declared)) = (p.degree(), s.degree) {
            if d != declared {
                return Err(Error::DegreeMismatch {
                    left: declared,
                    right: d,
                });
            }
        }
        Ok(p)
    }
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        SerializedPolynomial::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let s = SerializedPolynomial::deserialize(deserializer)?;
        Polynomial::try_from(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, r: usize, c: usize) -> Polynomial {
        Polynomial::variable(n, r, c).unwrap()
    }

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn addition_examples() {
        let f = x(2, 1, 1).mul(&x(2, 2, 2)).unwrap();
        assert_eq!(f.add(&Polynomial::zero(2)).unwrap(), f);
        assert_eq!(Polynomial::zero(2).add(&f).unwrap(), f);
        assert!(x(2, 1, 1).add(&x(2, 1, 1).neg()).unwrap().is_zero());
        let g = f.add(&x(2, 1, 2).mul(&x(2, 2, 1)).unwrap()).unwrap();
        assert_eq!(g.len(), 2);
        assert_eq!(g.to_string(), "x1_1*x2_2 + x1_2*x2_1");
        assert!(matches!(
            x(2, 1, 1).add(&f),
            Err(Error::DegreeMismatch { left: 1, right: 2 })
        ));
        assert!(matches!(
            x(2, 1, 1).add(&x(3, 1, 1)),
            Err(Error::AmbientMismatch { .. })
        ));
    }

    #[test]
    fn multiplication_examples() {
        let f = x(2, 1, 2);
        assert_eq!(f.mul(&Polynomial::one(2)).unwrap(), f);
        let sq = x(2, 1, 1).mul(&x(2, 1, 1)).unwrap();
        assert_eq!(sq.to_string(), "x1_1^2");
        let a = x(2, 1, 1).add(&x(2, 2, 2)).unwrap();
        let b = x(2, 1, 1).sub(&x(2, 2, 2)).unwrap();
        let expected = sq.sub(&x(2, 2, 2).mul(&x(2, 2, 2)).unwrap()).unwrap();
        assert_eq!(a.mul(&b).unwrap(), expected);
        assert_eq!(expected.degree(), Some(2));
    }

    #[test]
    fn evaluation_examples() {
        let mut m = RationalMatrix::identity(3);
        m.set(0, 1, BigRational::new(5.into(), 7.into()));
        assert_eq!(
            x(3, 1, 2).evaluate(&m),
            BigRational::new(5.into(), 7.into())
        );
        let det2 = x(2, 1, 1)
            .mul(&x(2, 2, 2))
            .unwrap()
            .sub(&x(2, 1, 2).mul(&x(2, 2, 1)).unwrap())
            .unwrap();
        assert_eq!(det2.evaluate(&RationalMatrix::identity(2)), q(1));
        assert_eq!(
            Polynomial::constant(2, 7.into()).evaluate(&RationalMatrix::zero(2)),
            q(7)
        );
        assert_eq!(
            Polynomial::zero(2).evaluate(&RationalMatrix::identity(2)),
            q(0)
        );
    }

    #[test]
    fn inhomogeneous_rejected() {
        let terms = vec![
            (
                Monomial::variable(2, Variable { row: 1, col: 1 }),
                BigInt::one(),
            ),
            (Monomial::one(2), BigInt::one()),
        ];
        assert_eq!(Polynomial::from_terms(2, terms), Err(Error::Inhomogeneous));
    }

    #[test]
    fn monomial_enumeration() {
        let ms = monomials_of_degree(2, 3);
        assert_eq!(ms.len(), 20);
        assert!(ms.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(monomials_of_degree(3, 2).len(), 45);
        assert_eq!(monomials_of_degree(2, 0), vec![Monomial::one(2)]);
    }

    #[test]
    fn grlex_order() {
        let x11 = Monomial::variable(2, Variable { row: 1, col: 1 });
        let x12 = Monomial::variable(2, Variable { row: 1, col: 2 });
        let x22 = Monomial::variable(2, Variable { row: 2, col: 2 });
        assert!(x11 > x12 && x12 > x22);
        assert!(x22.mul(&x22) > x11);
        assert!(x11.mul(&x22) > x12.mul(&x12));
    }

    #[test]
    fn serialization_shape() {
        let f = x(2, 1, 1)
            .mul(&x(2, 2, 2))
            .unwrap()
            .sub(&x(2, 1, 2).mul(&x(2, 2, 1)).unwrap())
            .unwrap();
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(
            json,
            r#"{"n":2,"degree":2,"terms":[{"coeff":"1","monomial":[[1,1,1],[2,2,1]]},{"coeff":"-1","monomial":[[1,2,1],[2,1,1]]}]}"#
        );
        let back: Polynomial = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
        let bad = r#"{"n":2,"degree":2,"terms":[{"coeff":"1","monomial":[[3,1,1],[2,2,1]]}]}"#;
        assert!(serde_json::from_str::<Polynomial>(bad).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        const N: usize = 2;

        fn arb_poly(degree: usize) -> impl Strategy<Value = Polynomial> {
            let term = (proptest::collection::vec(0usize..N * N, degree), -6i64..=6);
            proptest::collection::vec(term, 0..5).prop_map(move |terms| {
                let terms = terms.into_iter().map(|(vars, c)| {
                    let mut exps = vec![0u8; N * N];
                    for v in vars {
                        exps[v] += 1;
                    }
                    (Monomial::from_exponents(exps), BigInt::from(c))
                });
                Polynomial::from_terms(N, terms).unwrap()
            })
        }

        fn arb_matrix() -> impl Strategy<Value = RationalMatrix> {
            proptest::collection::vec((-9i64..=9, 1i64..=5), N * N).prop_map(|v| {
                let rows = v
                    .chunks(N)
                    .map(|r| {
                        r.iter()
                            .map(|&(a, b)| BigRational::new(a.into(), b.into()))
                            .collect()
                    })
                    .collect();
                RationalMatrix::from_rows(rows).unwrap()
            })
        }

        proptest! {
            #[test]
            fn ring_axioms(f in arb_poly(2), g in arb_poly(1), h in arb_poly(1), k in arb_poly(2)) {
                prop_assert_eq!(f.add(&k).unwrap(), k.add(&f).unwrap());
                prop_assert_eq!(g.mul(&h).unwrap(), h.mul(&g).unwrap());
                prop_assert_eq!(f.mul(&g).unwrap().mul(&h).unwrap(), f.mul(&g.mul(&h).unwrap()).unwrap());
                prop_assert_eq!(
                    f.add(&k).unwrap().mul(&g).unwrap(),
                    f.mul(&g).unwrap().add(&k.mul(&g).unwrap()).unwrap()
                );
                prop_assert!(f.sub(&f).unwrap().is_zero());
            }

            #[test]
            fn evaluation_is_multiplicative(f in arb_poly(2), g in arb_poly(1), m in arb_matrix()) {
                let lhs = f.mul(&g).unwrap().evaluate(&m);
                prop_assert_eq!(lhs, f.evaluate(&m) * g.evaluate(&m));
            }

            #[test]
            fn serialization_round_trip(f in arb_poly(3)) {
                let s = serde_json::to_string(&f).unwrap();
                let back: Polynomial = serde_json::from_str(&s).unwrap();
                prop_assert_eq!(serde_json::to_string(&back).unwrap(), s);
                prop_assert_eq!(back, f);
            }
        }
    }
}
