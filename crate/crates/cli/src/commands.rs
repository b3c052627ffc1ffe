use std::fs;

use orbit_ideals::membership::EXACT_NONZERO_LIMIT;
use orbit_ideals::minors::binomial;
use orbit_ideals::orbit::VanishingWitness;
use orbit_ideals::schur::complement_split;
use orbit_ideals::{
    excluded_indices, ideal_contains, invariant_t, minimal_schedule, minimality_witness,
    rank_variety_schedule, redundancy_witness, v_span_basis, vanishing_check, verify_certificate,
    verify_minimal, weyman_schedule, GeneratorKind, MembershipVerdict, MinimalityReport, Partition,
    Polynomial, Schedule, UDimensionTable, VerifyOptions,
};
use serde::{Deserialize, Serialize};

use crate::{CliError, RunConfig};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyView {
    pub label: String,
    pub kind: GeneratorKind,
    pub i: usize,
    pub p: usize,
    pub degree: usize,
    pub dimension: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScheduleView {
    pub generators: String,
    pub families: Vec<FamilyView>,
    pub arrow_columns: Vec<usize>,
    pub generator_count: usize,
}

impl From<&Schedule> for ScheduleView {
    fn from(s: &Schedule) -> Self {
        ScheduleView {
            generators: s.generator_list(),
            families: s
                .descriptors()
                .iter()
                .map(|d| FamilyView {
                    label: d.label(),
                    kind: d.kind,
                    i: d.i,
                    p: d.p,
                    degree: d.degree,
                    dimension: d.dimension,
                })
                .collect(),
            arrow_columns: s.arrow_columns(),
            generator_count: s.generator_count(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankVarietyView {
    pub n: usize,
    pub schedule: ScheduleView,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScheduleReport {
    pub config: RunConfig,
    pub partition: String,
    pub n: usize,
    pub conjugate: Partition,
    pub mu_values: Vec<usize>,
    pub weyman: ScheduleView,
    pub minimal: ScheduleView,
    pub excluded: Vec<usize>,
    pub diagram: String,
    pub rank_variety: Option<RankVarietyView>,
}

pub fn cmd_schedule(config: &RunConfig) -> Result<ScheduleReport, CliError> {
    let mu = config.partition()?;
    let minimal = minimal_schedule(mu);
    let rank_variety = match config.n {
        Some(n) if n != mu.n() => Some(RankVarietyView {
            n,
            schedule: ScheduleView::from(&rank_variety_schedule(mu, n)?),
            note: "invariants shifted by n - |mu|; mu(i) taken unshifted; zero test in the ambient size".into(),
        }),
        _ => None,
    };
    Ok(ScheduleReport {
        config: config.clone(),
        partition: mu.to_exponent_string(),
        n: mu.n(),
        conjugate: mu.conjugate(),
        mu_values: mu.mu_values(),
        weyman: ScheduleView::from(&weyman_schedule(mu)),
        minimal: ScheduleView::from(&minimal),
        excluded: excluded_indices(mu),
        diagram: minimal.render_diagram(),
        rank_variety,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySummary {
    pub family: String,
    pub i: usize,
    pub p: usize,
    pub degree: usize,
    pub count: usize,
    /// For `V_{i,p}` families: how many of the trailing polynomials are the
    /// `U_{i,p}` representatives (the rest span `V_{i−1,p}`).
    pub u_complement: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorFamily {
    #[serde(flatten)]
    pub summary: FamilySummary,
    pub polynomials: Vec<Polynomial>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorsFile {
    pub partition: Partition,
    pub n: usize,
    pub families: Vec<GeneratorFamily>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorsReport {
    pub config: RunConfig,
    pub partition: String,
    pub n: usize,
    pub families: Vec<FamilySummary>,
    pub total: usize,
    pub file: Option<String>,
}

/// Polynomial families of the minimal schedule: each `t_p`, then for each
/// scheduled `U_{i,p}` a basis of `V_{i,p}` listed as a `V_{i−1,p}` basis
/// followed by the `U_{i,p}` representatives.
pub fn generator_families(mu: &Partition) -> Result<Vec<GeneratorFamily>, CliError> {
    let n = mu.n();
    let schedule = minimal_schedule(mu);
    let mut out = Vec::new();
    for &p in &schedule.invariants {
        out.push(GeneratorFamily {
            summary: FamilySummary {
                family: format!("t_{p}"),
                i: 0,
                p,
                degree: p,
                count: 1,
                u_complement: None,
            },
            polynomials: vec![invariant_t(n, p)?],
        });
    }
    for d in &schedule.minor_spaces {
        let split = complement_split(n, d.i, d.p)?;
        let combos: Vec<_> = split
            .full_basis()
            .into_iter()
            .map(|e| &e.combination)
            .collect();
        let polynomials = orbit_ideals::minors::to_polynomials(&combos);
        out.push(GeneratorFamily {
            summary: FamilySummary {
                family: format!("V_{{{},{}}}", d.i, d.p),
                i: d.i,
                p: d.p,
                degree: d.p,
                count: polynomials.len(),
                u_complement: Some(split.complement.len()),
            },
            polynomials,
        });
    }
    Ok(out)
}

fn file_tag(mu: &Partition) -> String {
    mu.to_exponent_string().replace(',', "_").replace('^', "e")
}

pub fn cmd_generators(config: &RunConfig) -> Result<GeneratorsReport, CliError> {
    let mu = config.partition()?;
    let n = mu.n();
    config.check_bound(n, || {
        let estimate: u64 = minimal_schedule(mu)
            .minor_spaces
            .iter()
            .map(|d| binomial(n, d.i.min(n - d.p)).pow(2))
            .sum();
        format!("about {estimate} polynomials of degree up to {n}")
    })?;
    let families = generator_families(mu)?;
    let file = match &config.workdir {
        Some(dir) => {
            let name = format!("generators-{}.json", file_tag(mu));
            let body = GeneratorsFile {
                partition: mu.clone(),
                n,
                families: families.clone(),
            };
            fs::create_dir_all(dir)?;
            fs::write(dir.join(&name), serde_json::to_string_pretty(&body)? + "\n")?;
            Some(name)
        }
        None => None,
    };
    let summaries: Vec<FamilySummary> = families.into_iter().map(|f| f.summary).collect();
    Ok(GeneratorsReport {
        config: config.clone(),
        partition: mu.to_exponent_string(),
        n,
        total: summaries.iter().map(|s| s.count).sum(),
        families: summaries,
        file,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankEntry {
    pub i: usize,
    pub p: usize,
    pub rank: usize,
    pub expected: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimsReport {
    pub config: RunConfig,
    pub n: usize,
    pub table: UDimensionTable,
    pub ranks: Vec<RankEntry>,
    pub consistent: bool,
}

/// The `U_{j,p}` dimension table and the rank of every `V_{i,p}` family
/// against `C(n, min(i, p, n − p))²`.
pub fn cmd_dims(config: &RunConfig) -> Result<DimsReport, CliError> {
    let n = match (config.n, &config.partition) {
        (Some(n), _) => n,
        (None, Some(mu)) => mu.n(),
        (None, None) => return Err(CliError::Usage("dims needs --n or --partition".into())),
    };
    if n == 0 {
        return Err(CliError::Usage("--n must be positive".into()));
    }
    config.check_bound(n, || format!("{} spanning families", n * (n + 1)))?;
    let mut ranks = Vec::new();
    for p in 1..=n {
        for i in 0..=n {
            let rank = v_span_basis(n, i, p)?.len();
            ranks.push(RankEntry {
                i,
                p,
                rank,
                expected: binomial(n, i.min(p).min(n - p)).pow(2),
            });
        }
    }
    Ok(DimsReport {
        config: config.clone(),
        n,
        table: UDimensionTable::new(n),
        consistent: ranks.iter().all(|r| r.rank as u64 == r.expected),
        ranks,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalityWitnessView {
    pub i: usize,
    pub p: usize,
    pub witness: Partition,
    pub conjugate: Partition,
    pub e: usize,
    pub f: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RedundancyWitnessView {
    pub i: usize,
    pub p: usize,
    pub witness: Partition,
    pub r: usize,
    pub f: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub config: RunConfig,
    pub partition: String,
    pub minimality: Vec<MinimalityWitnessView>,
    pub redundancy: Vec<RedundancyWitnessView>,
}

pub fn cmd_witness(config: &RunConfig) -> Result<WitnessReport, CliError> {
    let mu = config.partition()?;
    let mut minimality = Vec::new();
    for d in minimal_schedule(mu)
        .minor_spaces
        .iter()
        .filter(|d| d.i >= 2)
    {
        let w = minimality_witness(mu, d.i)?;
        minimality.push(MinimalityWitnessView {
            i: d.i,
            p: d.p,
            conjugate: w.partition.conjugate(),
            witness: w.partition,
            e: w.e,
            f: w.f,
        });
    }
    let mut redundancy = Vec::new();
    for i in excluded_indices(mu) {
        let w = redundancy_witness(mu, i)?;
        redundancy.push(RedundancyWitnessView {
            i,
            p: mu.mu_of(i)?,
            witness: w.partition,
            r: w.r,
            f: w.f,
        });
    }
    Ok(WitnessReport {
        config: config.clone(),
        partition: mu.to_exponent_string(),
        minimality,
        redundancy,
    })
}

/// Input of the `membership` subcommand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipInput {
    pub f: Polynomial,
    pub generators: Vec<Polynomial>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipReport {
    pub config: RunConfig,
    pub n: usize,
    pub generators: usize,
    pub verdict: MembershipVerdict,
    pub verified: bool,
}

pub fn cmd_membership(
    config: &RunConfig,
    input: &MembershipInput,
) -> Result<MembershipReport, CliError> {
    let n = input.f.n();
    config.check_bound(n, || {
        format!("exact limit is {EXACT_NONZERO_LIMIT} nonzeros")
    })?;
    let verdict = ideal_contains(&input.f, &input.generators, config.mode, config.seed)?;
    let verified = verify_certificate(&input.f, &input.generators, &verdict.certificate)?;
    Ok(MembershipReport {
        config: config.clone(),
        n,
        generators: input.generators.len(),
        verdict,
        verified,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum VerifySuite {
    Vanishing,
    Minimal,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VanishingKind {
    /// `t_p` on the orbit.
    Invariant,
    /// A generator family `V_{i,μ(i)}`.
    Generator,
    /// `V_{i,μ(i)−1}`, which must not vanish.
    Sharpness,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingCheck {
    pub kind: VanishingKind,
    pub i: usize,
    pub p: usize,
    pub elements: usize,
    pub expect_zero: bool,
    pub all_zero: bool,
    pub witness: Option<VanishingWitness>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingSuite {
    pub checks: Vec<VanishingCheck>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub config: RunConfig,
    pub suite: VerifySuite,
    pub partition: String,
    pub vanishing: Option<VanishingSuite>,
    pub minimal: Option<MinimalityReport>,
    pub pass: bool,
}

/// Vanishing of every generator family on the orbit and non-vanishing one
/// minor size below.
pub fn vanishing_suite(
    mu: &Partition,
    samples: usize,
    seed: u64,
) -> Result<VanishingSuite, CliError> {
    let mut plan: Vec<(VanishingKind, usize, usize, bool)> = (1..=mu.first())
        .map(|p| (VanishingKind::Invariant, 0, p, true))
        .collect();
    for (i, p) in weyman_schedule(mu).minor_pairs() {
        plan.push((VanishingKind::Generator, i, p, true));
    }
    for (k, &m) in mu.mu_values().iter().enumerate() {
        let i = k + 1;
        if m > i {
            plan.push((VanishingKind::Sharpness, i, m - 1, false));
        }
    }
    let mut checks = Vec::with_capacity(plan.len());
    for (kind, i, p, expect_zero) in plan {
        let r = vanishing_check(mu, i, p, samples, seed)?;
        checks.push(VanishingCheck {
            kind,
            i,
            p,
            elements: r.elements,
            expect_zero,
            all_zero: r.all_zero,
            witness: r.witness,
            pass: r.all_zero == expect_zero,
        });
    }
    Ok(VanishingSuite {
        pass: checks.iter().all(|c| c.pass),
        checks,
    })
}

pub fn cmd_verify(config: &RunConfig, suite: VerifySuite) -> Result<VerifyReport, CliError> {
    let mu = config.partition()?;
    let n = mu.n();
    if config.samples == 0 {
        return Err(CliError::Usage("--samples must be positive".into()));
    }
    config.check_bound(n, || {
        let d = mu.mu_values().into_iter().max().unwrap_or(1);
        format!("graded pieces up to {} columns", binomial(n * n + d - 1, d))
    })?;
    let options = VerifyOptions {
        samples: config.samples,
        seed: config.seed,
        mode: config.mode,
    };
    let vanishing = match suite {
        VerifySuite::Vanishing | VerifySuite::All => {
            Some(vanishing_suite(mu, config.samples, config.seed)?)
        }
        VerifySuite::Minimal => None,
    };
    let minimal = match suite {
        VerifySuite::Minimal | VerifySuite::All => Some(verify_minimal(mu, &options)?),
        VerifySuite::Vanishing => None,
    };
    let pass = vanishing.as_ref().is_none_or(|v| v.pass) && minimal.as_ref().is_none_or(|m| m.pass);
    Ok(VerifyReport {
        config: config.clone(),
        suite,
        partition: mu.to_exponent_string(),
        vanishing,
        minimal,
        pass,
    })
}
