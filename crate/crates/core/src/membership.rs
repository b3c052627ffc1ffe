//! Ideal membership for homogeneous polynomials, decided by linear algebra
//! in a single degree, and the checks built on it.
//!
//! For homogeneous `f` of degree `d` and homogeneous generators `g_k`,
//! `f ∈ ⟨g_1, …, g_r⟩` exactly when the coefficient vector of `f` lies in
//! the row span of all products `g_k · m` with `m` a monomial of degree
//! `d − deg g_k`. Every answer carries a certificate that can be checked
//! independently of the elimination that produced it:
//!
//! * `Member`: rational coefficients on the products `g_k · m`.
//! * `NonMember`: either a linear functional on degree-`d` coefficient
//!   vectors that kills every product and not `f`, or a matrix at which
//!   every generator vanishes and `f` does not.
//! * `ConsistentNonMember`: the primes at which `f` reduced to a nonzero
//!   residual. This is evidence, not proof.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{random_primes, to_modular_row, to_rational_row, EchelonBasis, Fp, SparseRow};
use crate::matrix::RationalMatrix;
use crate::minors::{binomial, to_polynomials, v_span_basis, MinorCombination};
use crate::orbit::{first_nonzero, sample_orbits, OrbitSample};
use crate::partition::Partition;
use crate::polyring::{monomials_of_degree, EvaluationPoint, Monomial, Polynomial, Variable};
use crate::schedule::{excluded_indices, main_condition, minimal_schedule, weyman_schedule};
use crate::schur::complement_split;
use crate::witness::minimality_witness;

/// Above this many nonzero entries `Auto` switches to modular elimination.
pub const EXACT_NONZERO_LIMIT: usize = 100_000;
pub const PRIME_COUNT: usize = 3;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MembershipMode {
    #[default]
    Auto,
    Exact,
    Modular,
}

impl fmt::Display for MembershipMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MembershipMode::Auto => "auto",
            MembershipMode::Exact => "exact",
            MembershipMode::Modular => "modular",
        })
    }
}

impl FromStr for MembershipMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(MembershipMode::Auto),
            "exact" => Ok(MembershipMode::Exact),
            "modular" => Ok(MembershipMode::Modular),
            other => Err(Error::Parse(format!("unknown mode {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MembershipStatus {
    Member,
    NonMember,
    ConsistentNonMember,
}

impl MembershipStatus {
    pub fn is_member(self) -> bool {
        self == MembershipStatus::Member
    }
}

/// `[row, col, exponent]` triples of a monomial.
pub fn monomial_triples(m: &Monomial) -> Vec<[usize; 3]> {
    m.powers()
        .map(|(v, e)| [v.row, v.col, e as usize])
        .collect()
}

pub fn monomial_from_triples(n: usize, triples: &[[usize; 3]]) -> Result<Monomial> {
    let powers = triples
        .iter()
        .map(|&[row, col, e]| {
            let e = u32::try_from(e).map_err(|_| Error::Parse("exponent too large".into()))?;
            Ok((Variable::new(n, row, col)?, e))
        })
        .collect::<Result<Vec<_>>>()?;
    Monomial::from_powers(n, &powers)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CombinationTerm {
    pub generator: usize,
    pub multiplier: Vec<[usize; 3]>,
    pub coefficient: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionalEntry {
    pub monomial: Vec<[usize; 3]>,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// `f = Σ coefficient · generator · multiplier`.
    Combination { terms: Vec<CombinationTerm> },
    /// `y` with `y(g · m) = 0` for every product in the graded piece and `y(f) ≠ 0`.
    Functional { entries: Vec<FunctionalEntry> },
    /// A matrix where every generator vanishes and `f` does not.
    EvaluationPoint {
        matrix: RationalMatrix,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        jordan_type: Option<Partition>,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        seed: Option<u64>,
    },
    /// Primes at which `f` is outside the reduced row span.
    Primes { primes: Vec<u64> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipVerdict {
    pub status: MembershipStatus,
    pub mode: MembershipMode,
    pub degree: usize,
    pub rows: usize,
    /// `C(n² + d − 1, d)`, the dimension of the degree-`d` piece.
    pub columns: u64,
    pub nonzeros: usize,
    pub certificate: Certificate,
}

/// Which generator and multiplier a row of the graded matrix came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowSource {
    pub generator: usize,
    pub multiplier: Monomial,
}

/// The degree-`d` piece of a homogeneous ideal as sparse integer rows.
/// Columns are the monomials occurring in some row, in canonical order.
#[derive(Clone, Debug)]
pub struct GradedCoefficientMatrix {
    n: usize,
    degree: usize,
    columns: Vec<Monomial>,
    column_of: HashMap<Monomial, usize>,
    rows: Vec<SparseRow<BigInt>>,
    sources: Vec<RowSource>,
}

impl GradedCoefficientMatrix {
    /// Rows `g · m` for every generator `g` of degree at most `degree`.
    /// Zero generators and generators of larger degree contribute nothing.
    pub fn build(n: usize, gens: &[Polynomial], degree: usize) -> Result<Self> {
        let mut sources = Vec::new();
        for (k, g) in gens.iter().enumerate() {
            if g.n() != n {
                return Err(Error::AmbientMismatch {
                    left: n,
                    right: g.n(),
                });
            }
            let Some(e) = g.degree() else {
                continue;
            };
            if e > degree {
                continue;
            }
            for m in monomials_of_degree(n, degree - e) {
                sources.push(RowSource {
                    generator: k,
                    multiplier: m,
                });
            }
        }
        let products: Vec<Polynomial> = sources
            .par_iter()
            .map(|s| gens[s.generator].mul_monomial(&s.multiplier))
            .collect();
        let used: BTreeSet<&Monomial> = products
            .iter()
            .flat_map(|p| p.terms().map(|(m, _)| m))
            .collect();
        let columns: Vec<Monomial> = used.into_iter().cloned().collect();
        let column_of: HashMap<Monomial, usize> = columns
            .iter()
            .enumerate()
            .map(|(k, m)| (m.clone(), k))
            .collect();
        let rows = products
            .par_iter()
            .map(|p| {
                let mut row: SparseRow<BigInt> =
                    p.terms().map(|(m, c)| (column_of[m], c.clone())).collect();
                row.sort_unstable_by_key(|(c, _)| *c);
                row
            })
            .collect();
        Ok(GradedCoefficientMatrix {
            n,
            degree,
            columns,
            column_of,
            rows,
            sources,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn rows(&self) -> &[SparseRow<BigInt>] {
        &self.rows
    }

    pub fn sources(&self) -> &[RowSource] {
        &self.sources
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    /// Monomials that occur in some row.
    pub fn used_columns(&self) -> &[Monomial] {
        &self.columns
    }

    pub fn column_count(&self) -> u64 {
        binomial(self.n * self.n + self.degree - 1, self.degree)
    }

    pub fn nonzeros(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// Coefficient vector of `f`. Monomials absent from every row get
    /// fresh column numbers past the used columns, listed in `extra`.
    fn encode(&self, f: &Polynomial) -> (SparseRow<BigInt>, Vec<Monomial>) {
        let mut extra = Vec::new();
        let mut row: SparseRow<BigInt> = f
            .terms()
            .map(|(m, c)| {
                let col = self.column_of.get(m).copied().unwrap_or_else(|| {
                    extra.push(m.clone());
                    self.columns.len() + extra.len() - 1
                });
                (col, c.clone())
            })
            .collect();
        row.sort_unstable_by_key(|(c, _)| *c);
        (row, extra)
    }

    fn monomial_at<'a>(&'a self, col: usize, extra: &'a [Monomial]) -> &'a Monomial {
        self.columns
            .get(col)
            .unwrap_or_else(|| &extra[col - self.columns.len()])
    }
}

/// A prepared degree-`d` membership test against a fixed generator list.
pub struct GradedOracle {
    matrix: GradedCoefficientMatrix,
    mode: MembershipMode,
    exact: Option<EchelonBasis<BigRational>>,
    modular: Vec<(u64, EchelonBasis<Fp>)>,
    lifted: Option<EchelonBasis<BigRational>>,
}

impl GradedOracle {
    pub fn new(
        n: usize,
        gens: &[Polynomial],
        degree: usize,
        mode: MembershipMode,
        seed: u64,
    ) -> Result<Self> {
        let matrix = GradedCoefficientMatrix::build(n, gens, degree)?;
        let mode = match mode {
            MembershipMode::Auto if matrix.nonzeros() <= EXACT_NONZERO_LIMIT => {
                MembershipMode::Exact
            }
            MembershipMode::Auto => MembershipMode::Modular,
            m => m,
        };
        let mut oracle = GradedOracle {
            matrix,
            mode,
            exact: None,
            modular: Vec::new(),
            lifted: None,
        };
        match mode {
            MembershipMode::Exact => {
                let mut basis = EchelonBasis::with_history();
                for (k, row) in oracle.matrix.rows.iter().enumerate() {
                    basis.insert(k, &to_rational_row(row));
                }
                oracle.exact = Some(basis);
            }
            _ => {
                let primes = random_primes(&mut ChaCha8Rng::seed_from_u64(seed), PRIME_COUNT);
                let rows = &oracle.matrix.rows;
                oracle.modular = primes
                    .into_par_iter()
                    .map(|p| {
                        let mut basis = EchelonBasis::new();
                        for (k, row) in rows.iter().enumerate() {
                            basis.insert(k, &to_modular_row(row, p));
                        }
                        (p, basis)
                    })
                    .collect();
                // Rows independent modulo a prime are independent over Q.
                let best = oracle
                    .modular
                    .iter()
                    .max_by_key(|(_, b)| b.rank())
                    .map(|(_, b)| b.sources().to_vec());
                let mut lifted = EchelonBasis::with_history();
                for k in best.unwrap_or_default() {
                    lifted.insert(k, &to_rational_row(&rows[k]));
                }
                oracle.lifted = Some(lifted);
            }
        }
        Ok(oracle)
    }

    pub fn matrix(&self) -> &GradedCoefficientMatrix {
        &self.matrix
    }

    /// The elimination actually used (`Auto` resolved).
    pub fn mode(&self) -> MembershipMode {
        self.mode
    }

    /// Rank of the graded piece (over Q, or the largest modular rank).
    pub fn rank(&self) -> usize {
        match &self.exact {
            Some(b) => b.rank(),
            None => self
                .modular
                .iter()
                .map(|(_, b)| b.rank())
                .max()
                .unwrap_or(0),
        }
    }

    pub fn decide(&self, f: &Polynomial) -> Result<MembershipVerdict> {
        if f.n() != self.matrix.n {
            return Err(Error::AmbientMismatch {
                left: self.matrix.n,
                right: f.n(),
            });
        }
        if let Some(d) = f.degree() {
            if d != self.matrix.degree {
                return Err(Error::DegreeMismatch {
                    left: self.matrix.degree,
                    right: d,
                });
            }
        }
        let (row, extra) = self.matrix.encode(f);
        let rational = to_rational_row(&row);
        let (status, certificate) = match (&self.exact, &self.lifted) {
            (Some(basis), _) => match basis.solve(&rational) {
                Some(solution) => (MembershipStatus::Member, self.combination(&solution)),
                None => {
                    let y = basis
                        .separating_functional(&rational)
                        .expect("row outside the span");
                    let entries = y
                        .into_iter()
                        .map(|(c, v)| FunctionalEntry {
                            monomial: monomial_triples(self.matrix.monomial_at(c, &extra)),
                            value: v.to_string(),
                        })
                        .collect();
                    (
                        MembershipStatus::NonMember,
                        Certificate::Functional { entries },
                    )
                }
            },
            (None, Some(lifted)) => {
                let outside: Vec<u64> = self
                    .modular
                    .iter()
                    .filter(|(p, b)| !b.contains(&to_modular_row(&row, *p)))
                    .map(|(p, _)| *p)
                    .collect();
                let solution = if outside.len() < self.modular.len() {
                    lifted.solve(&rational)
                } else {
                    None
                };
                match solution {
                    Some(solution) => (MembershipStatus::Member, self.combination(&solution)),
                    None => {
                        let primes = if outside.is_empty() {
                            self.modular.iter().map(|(p, _)| *p).collect()
                        } else {
                            outside
                        };
                        (
                            MembershipStatus::ConsistentNonMember,
                            Certificate::Primes { primes },
                        )
                    }
                }
            }
            (None, None) => unreachable!("oracle without a basis"),
        };
        Ok(MembershipVerdict {
            status,
            mode: self.mode,
            degree: self.matrix.degree,
            rows: self.matrix.row_count(),
            columns: self.matrix.column_count(),
            nonzeros: self.matrix.nonzeros(),
            certificate,
        })
    }

    fn combination(&self, solution: &[(usize, BigRational)]) -> Certificate {
        let terms = solution
            .iter()
            .map(|(k, c)| {
                let s = &self.matrix.sources[*k];
                CombinationTerm {
                    generator: s.generator,
                    multiplier: monomial_triples(&s.multiplier),
                    coefficient: c.to_string(),
                }
            })
            .collect();
        Certificate::Combination { terms }
    }
}

/// Decides `f ∈ ⟨gens⟩` in degree `deg f`. The zero polynomial is a member
/// with the empty combination.
pub fn ideal_contains(
    f: &Polynomial,
    gens: &[Polynomial],
    mode: MembershipMode,
    seed: u64,
) -> Result<MembershipVerdict> {
    let Some(d) = f.degree() else {
        return Ok(MembershipVerdict {
            status: MembershipStatus::Member,
            mode,
            degree: 0,
            rows: 0,
            columns: 0,
            nonzeros: 0,
            certificate: Certificate::Combination { terms: Vec::new() },
        });
    };
    GradedOracle::new(f.n(), gens, d, mode, seed)?.decide(f)
}

/// Re-checks a certificate from scratch. `Primes` certificates are re-run
/// modulo each listed prime; they support but do not prove non-membership.
pub fn verify_certificate(
    f: &Polynomial,
    gens: &[Polynomial],
    certificate: &Certificate,
) -> Result<bool> {
    let n = f.n();
    match certificate {
        Certificate::Combination { terms } => {
            let coeffs = terms
                .iter()
                .map(|t| crate::matrix::parse_rational(&t.coefficient))
                .collect::<Result<Vec<_>>>()?;
            let lcm = coeffs
                .iter()
                .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            let mut total = Polynomial::zero(n);
            for (t, c) in terms.iter().zip(&coeffs) {
                let g = gens.get(t.generator).ok_or(Error::IndexOutOfRange {
                    index: t.generator,
                    len: gens.len(),
                })?;
                let m = monomial_from_triples(n, &t.multiplier)?;
                let scale = c.numer() * (&lcm / c.denom());
                total = total.add(&g.mul_monomial(&m).scale(&scale))?;
            }
            Ok(total == f.scale(&lcm))
        }
        Certificate::Functional { entries } => {
            let Some(d) = f.degree() else {
                return Ok(false);
            };
            let mut y: HashMap<Monomial, BigRational> = HashMap::new();
            for e in entries {
                y.insert(
                    monomial_from_triples(n, &e.monomial)?,
                    crate::matrix::parse_rational(&e.value)?,
                );
            }
            let apply = |p: &Polynomial| -> BigRational {
                p.terms()
                    .filter_map(|(m, c)| y.get(m).map(|v| v * BigRational::from_integer(c.clone())))
                    .fold(BigRational::zero(), |acc, v| acc + v)
            };
            if apply(f).is_zero() {
                return Ok(false);
            }
            for g in gens {
                if g.n() != n {
                    return Err(Error::AmbientMismatch {
                        left: n,
                        right: g.n(),
                    });
                }
                let Some(e) = g.degree() else {
                    continue;
                };
                if e > d {
                    continue;
                }
                let killed = monomials_of_degree(n, d - e)
                    .par_iter()
                    .all(|m| apply(&g.mul_monomial(m)).is_zero());
                if !killed {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Certificate::EvaluationPoint { matrix, .. } => {
            if matrix.n() != n {
                return Err(Error::AmbientMismatch {
                    left: n,
                    right: matrix.n(),
                });
            }
            let point = EvaluationPoint::new(matrix);
            Ok(!point.vanishes(f) && gens.iter().all(|g| point.vanishes(g)))
        }
        Certificate::Primes { primes } => {
            let Some(d) = f.degree() else {
                return Ok(false);
            };
            let matrix = GradedCoefficientMatrix::build(n, gens, d)?;
            let (row, _) = matrix.encode(f);
            Ok(!primes.is_empty()
                && primes.iter().all(|&p| {
                    let mut basis = EchelonBasis::new();
                    for r in matrix.rows() {
                        basis.insert(0, &to_modular_row(r, p));
                    }
                    !basis.contains(&to_modular_row(&row, p))
                }))
        }
    }
}

/// Settings shared by the end-to-end checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub samples: usize,
    pub seed: u64,
    pub mode: MembershipMode,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            samples: 10,
            seed: 0,
            mode: MembershipMode::Auto,
        }
    }
}

/// A named family of generators in minor coordinates.
struct Family {
    label: String,
    elements: Vec<MinorCombination>,
}

impl Family {
    fn invariant(n: usize, p: usize) -> Self {
        Family {
            label: format!("t_{p}"),
            elements: vec![MinorCombination::invariant(n, p)],
        }
    }

    fn v_basis(n: usize, i: usize, p: usize) -> Result<Self> {
        let basis = v_span_basis(n, i, p)?;
        Ok(Family {
            label: format!("V_{{{i},{p}}}"),
            elements: basis.elements.into_iter().map(|e| e.combination).collect(),
        })
    }

    fn complement(n: usize, i: usize, p: usize) -> Result<Self> {
        let split = complement_split(n, i, p)?;
        Ok(Family {
            label: format!("U_{{{i},{p}}}"),
            elements: split
                .complement
                .into_iter()
                .map(|e| e.combination)
                .collect(),
        })
    }

    fn degree(&self) -> Option<usize> {
        self.elements.first().map(MinorCombination::degree)
    }
}

fn labels(families: &[Family]) -> Vec<String> {
    families.iter().map(|f| f.label.clone()).collect()
}

fn expand(families: &[Family], max_degree: usize) -> Vec<Polynomial> {
    let combos: Vec<&MinorCombination> = families
        .iter()
        .filter(|f| f.degree().is_some_and(|d| d <= max_degree))
        .flat_map(|f| f.elements.iter())
        .collect();
    to_polynomials(&combos)
}

/// A candidate that failed, with the verdict that says so.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailingCheck {
    pub candidate: usize,
    pub verdict: MembershipVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RedundancyReport {
    pub partition: Partition,
    pub i: usize,
    pub p: usize,
    /// Number of `U_{i,p}` representatives (`udim`, or 0 for a zero space).
    pub u_complement: usize,
    /// Number of `V_{i,p}` basis elements tested; they span the representatives.
    pub candidates: usize,
    pub generators: Vec<String>,
    pub rows: usize,
    pub columns: u64,
    pub members: usize,
    pub all_member: bool,
    pub certificates_verified: bool,
    pub failure: Option<FailingCheck>,
}

/// Checks that a basis of `V_{i,μ(i)}` (and hence `U_{i,μ(i)}`) lies in the
/// ideal generated by the invariants and the scheduled families with index
/// below `i`, for an index where the minimality condition fails.
pub fn verify_redundant(
    mu: &Partition,
    i: usize,
    options: &VerifyOptions,
) -> Result<RedundancyReport> {
    if i < 2 {
        return Err(Error::Precondition(
            "redundancy is only defined for i >= 2".into(),
        ));
    }
    let p = mu.mu_of(i)?;
    if main_condition(mu, i)? {
        return Err(Error::Precondition(format!(
            "U_{{{i},{p}}} is scheduled for {mu}, not redundant"
        )));
    }
    let n = mu.n();
    let mut families: Vec<Family> = (1..=mu.first()).map(|q| Family::invariant(n, q)).collect();
    for d in minimal_schedule(mu).minor_spaces.iter().filter(|d| d.i < i) {
        families.push(Family::v_basis(n, d.i, d.p)?);
    }
    let gens = expand(&families, p);
    let candidates = v_span_basis(n, i, p)?.polynomials();
    let u_complement = complement_split(n, i, p)?.complement.len();
    let oracle = GradedOracle::new(n, &gens, p, options.mode, options.seed)?;

    let verdicts: Vec<MembershipVerdict> = candidates
        .iter()
        .map(|f| oracle.decide(f))
        .collect::<Result<_>>()?;
    let verified = candidates
        .par_iter()
        .zip(&verdicts)
        .map(|(f, v)| verify_certificate(f, &gens, &v.certificate))
        .collect::<Result<Vec<bool>>>()?;
    let members = verdicts.iter().filter(|v| v.status.is_member()).count();
    let failure = verdicts
        .iter()
        .zip(&verified)
        .position(|(v, ok)| !v.status.is_member() || !ok)
        .map(|k| FailingCheck {
            candidate: k,
            verdict: verdicts[k].clone(),
        });
    Ok(RedundancyReport {
        partition: mu.clone(),
        i,
        p,
        u_complement,
        candidates: candidates.len(),
        generators: labels(&families),
        rows: oracle.matrix().row_count(),
        columns: oracle.matrix().column_count(),
        members,
        all_member: members == candidates.len(),
        certificates_verified: verified.iter().all(|&v| v),
        failure,
    })
}

/// Separation of a scheduled family from the families before it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationCheck {
    pub i: usize,
    pub p: usize,
    pub witness: Partition,
    pub earlier: Vec<String>,
    pub earlier_vanish: bool,
    pub candidates: usize,
    /// `NonMember` when some representative is nonzero at a sample where the
    /// earlier families vanish; `None` when no such sample was found.
    pub status: Option<MembershipStatus>,
    pub candidate: Option<usize>,
    pub certificate: Option<Certificate>,
    pub verified: bool,
}

/// Non-membership of `t_p` in the ideal of the other minimal generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantCheck {
    pub p: usize,
    pub generators: Vec<String>,
    pub status: MembershipStatus,
    pub mode: MembershipMode,
    pub rows: usize,
    pub columns: u64,
    pub verified: bool,
    pub failure: Option<MembershipVerdict>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalityReport {
    pub partition: Partition,
    pub n: usize,
    pub options: VerifyOptions,
    pub generators: Vec<String>,
    pub separations: Vec<SeparationCheck>,
    pub invariants: Vec<InvariantCheck>,
    pub redundancies: Vec<RedundancyReport>,
    pub pass: bool,
}

fn separation(
    mu: &Partition,
    i: usize,
    p: usize,
    options: &VerifyOptions,
) -> Result<SeparationCheck> {
    let n = mu.n();
    let witness = if i == 1 {
        Partition::row(n)?
    } else {
        minimality_witness(mu, i)?.partition
    };
    let mut earlier: Vec<Family> = (1..=mu.first()).map(|q| Family::invariant(n, q)).collect();
    for d in weyman_schedule(mu).minor_spaces.iter().filter(|d| d.i < i) {
        earlier.push(Family::v_basis(n, d.i, d.p)?);
    }
    let candidates = Family::complement(n, i, p)?;
    let samples: Vec<OrbitSample> = sample_orbits(&witness, options.samples, options.seed)?;

    let earlier_combos: Vec<&MinorCombination> =
        earlier.iter().flat_map(|f| f.elements.iter()).collect();
    let earlier_vanish = first_nonzero(&earlier_combos, &samples).is_none();
    let candidate_combos: Vec<&MinorCombination> = candidates.elements.iter().collect();
    let hit = if earlier_vanish {
        first_nonzero(&candidate_combos, &samples)
    } else {
        None
    };

    let mut check = SeparationCheck {
        i,
        p,
        witness: witness.clone(),
        earlier: labels(&earlier),
        earlier_vanish,
        candidates: candidate_combos.len(),
        status: None,
        candidate: None,
        certificate: None,
        verified: false,
    };
    if let Some(hit) = hit {
        let sample = samples
            .iter()
            .find(|s| s.seed == hit.seed)
            .expect("witness sample");
        let certificate = Certificate::EvaluationPoint {
            matrix: sample.matrix.clone(),
            jordan_type: Some(witness),
            seed: Some(sample.seed),
        };
        let gens = expand(&earlier, usize::MAX);
        let f = candidate_combos[hit.element].to_polynomial();
        check.verified = verify_certificate(&f, &gens, &certificate)?;
        check.status = Some(MembershipStatus::NonMember);
        check.candidate = Some(hit.element);
        check.certificate = Some(certificate);
    }
    Ok(check)
}

fn invariant_check(mu: &Partition, p: usize, options: &VerifyOptions) -> Result<InvariantCheck> {
    let n = mu.n();
    let mut others: Vec<Family> = (1..p).map(|q| Family::invariant(n, q)).collect();
    for d in minimal_schedule(mu)
        .minor_spaces
        .iter()
        .filter(|d| d.p <= p)
    {
        others.push(Family::complement(n, d.i, d.p)?);
    }
    let gens = expand(&others, p);
    let f = MinorCombination::invariant(n, p).to_polynomial();
    let oracle = GradedOracle::new(n, &gens, p, options.mode, options.seed)?;
    let verdict = oracle.decide(&f)?;
    let verified = verify_certificate(&f, &gens, &verdict.certificate)?;
    let failed = verdict.status.is_member() || !verified;
    Ok(InvariantCheck {
        p,
        generators: labels(&others),
        status: verdict.status,
        mode: verdict.mode,
        rows: verdict.rows,
        columns: verdict.columns,
        verified,
        failure: failed.then_some(verdict),
    })
}

/// End-to-end check of the minimal generating set of `J_μ`:
///
/// * each scheduled `U_{i,μ(i)}` is separated from the earlier families by
///   an orbit point of a witness partition (the row partition for `i = 1`);
/// * each invariant `t_p` is outside the ideal of the other generators;
/// * each excluded index passes [`verify_redundant`].
pub fn verify_minimal(mu: &Partition, options: &VerifyOptions) -> Result<MinimalityReport> {
    let schedule = minimal_schedule(mu);
    let separations = schedule
        .minor_spaces
        .iter()
        .map(|d| separation(mu, d.i, d.p, options))
        .collect::<Result<Vec<_>>>()?;
    let invariants = schedule
        .invariants
        .iter()
        .map(|&p| invariant_check(mu, p, options))
        .collect::<Result<Vec<_>>>()?;
    let redundancies = excluded_indices(mu)
        .into_iter()
        .map(|i| verify_redundant(mu, i, options))
        .collect::<Result<Vec<_>>>()?;
    let pass = separations
        .iter()
        .all(|s| s.status == Some(MembershipStatus::NonMember) && s.verified)
        && invariants
            .iter()
            .all(|c| !c.status.is_member() && c.verified)
        && redundancies
            .iter()
            .all(|r| r.all_member && r.certificates_verified);
    Ok(MinimalityReport {
        partition: mu.clone(),
        n: mu.n(),
        options: *options,
        generators: schedule.descriptors().iter().map(|d| d.label()).collect(),
        separations,
        invariants,
        redundancies,
        pass,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContainmentReport {
    pub n: usize,
    pub i: usize,
    pub p: usize,
    pub candidates: usize,
    pub members: usize,
    pub all_member: bool,
    pub certificates_verified: bool,
}

/// Checks `V_{i,p+1} ⊂ ⟨V_{i,p}⟩` element by element.
pub fn verify_filtration_step(
    n: usize,
    i: usize,
    p: usize,
    options: &VerifyOptions,
) -> Result<ContainmentReport> {
    if i == 0 || p == 0 || p + 1 > n {
        return Err(Error::Precondition(format!(
            "need i >= 1 and 1 <= p < n, got i = {i}, p = {p}, n = {n}"
        )));
    }
    let gens = v_span_basis(n, i, p)?.polynomials();
    let candidates = v_span_basis(n, i, p + 1)?.polynomials();
    let oracle = GradedOracle::new(n, &gens, p + 1, options.mode, options.seed)?;
    let verdicts: Vec<MembershipVerdict> = candidates
        .iter()
        .map(|f| oracle.decide(f))
        .collect::<Result<_>>()?;
    let verified = candidates
        .par_iter()
        .zip(&verdicts)
        .map(|(f, v)| verify_certificate(f, &gens, &v.certificate))
        .collect::<Result<Vec<bool>>>()?;
    let members = verdicts.iter().filter(|v| v.status.is_member()).count();
    Ok(ContainmentReport {
        n,
        i,
        p,
        candidates: candidates.len(),
        members,
        all_member: members == candidates.len(),
        certificates_verified: verified.iter().all(|&v| v),
    })
}
