use std::io::Write;
use std::time::{Duration, Instant};

use orbit_ideals::{
    excluded_indices, minimal_schedule, minimality_witness, partitions_of, vanishing_check,
    verify_filtration_step, verify_minimal, verify_redundant, weyman_schedule,
    witness::witness_postconditions, Certificate, MembershipStatus, Partition, VerifyOptions,
};
use orbit_ideals_cli::{cmd_schedule, cmd_verify, OutputFormat, Report, RunConfig, VerifySuite};

const SCHEDULE_LIMIT: Duration = Duration::from_secs(1);
const WITNESS_LIMIT: Duration = Duration::from_secs(10);
const DIMENSION_LIMIT: Duration = Duration::from_secs(5 * 60);
const VANISHING_LIMIT: Duration = Duration::from_secs(10 * 60);
const MEMBERSHIP_LIMIT: Duration = Duration::from_secs(5 * 60);
const SAMPLES: usize = 10;

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

fn conclude(criterion: u32, title: &str, ok: bool, elapsed: Duration, limit: Duration) {
    let within = elapsed <= limit;
    let line = format!(
        "criterion {criterion}: {} ({title}; {:.2?} of {:.0?})\n",
        if ok && within { "pass" } else { "fail" },
        elapsed,
        limit
    );
    std::io::stderr().write_all(line.as_bytes()).unwrap();
    assert!(ok, "criterion {criterion} failed: {title}");
    assert!(
        within,
        "criterion {criterion} over time: {elapsed:?} > {limit:?}"
    );
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let mut acc = 1u64;
    for j in 0..k {
        acc = acc * (n - j) as u64 / (j + 1) as u64;
    }
    acc
}

#[test]
fn criterion_1_schedules() {
    let start = Instant::now();
    let cases = [
        (
            "3^2,2^2,1^5",
            "U_{0,1},U_{0,2},U_{0,3},U_{1,3},U_{3,6},U_{5,7},U_{6,7},U_{7,7}",
        ),
        (
            "4,2^3,1^5",
            "U_{0,1},U_{0,2},U_{0,3},U_{0,4},U_{1,4},U_{2,5},U_{3,6},U_{5,7},U_{6,7},U_{7,7}",
        ),
    ];
    let mut ok = true;
    for (text, expected) in cases {
        let report = cmd_schedule(&RunConfig::for_partition(text).unwrap()).unwrap();
        ok &= report.minimal.generators == expected;
        ok &= minimal_schedule(&p(text)).generator_list() == expected;
    }
    conclude(
        1,
        "schedule reproduction",
        ok,
        start.elapsed(),
        SCHEDULE_LIMIT,
    );
}

#[test]
fn criterion_2_witnesses() {
    let start = Instant::now();
    let w = minimality_witness(&p("4,2,2,2,1^5"), 3).unwrap();
    let mut ok = w.partition == p("3,3,3,2,1,1,1,1") && w.partition.conjugate() == p("8,4,3");
    let mut checked = 0;
    for n in 1..=12 {
        for mu in partitions_of(n) {
            for d in minimal_schedule(&mu)
                .minor_spaces
                .iter()
                .filter(|d| d.i >= 2)
            {
                let w = minimality_witness(&mu, d.i);
                ok &= w.is_ok_and(|w| witness_postconditions(&mu, d.i, &w.partition).is_ok());
                checked += 1;
            }
        }
    }
    ok &= checked > 0;
    conclude(
        2,
        &format!("witnesses, {checked} postcondition checks"),
        ok,
        start.elapsed(),
        WITNESS_LIMIT,
    );
}

fn dimension_law(n: usize) -> bool {
    let mut ok = true;
    for i in 0..=n {
        for q in 1..=n {
            let rank = orbit_ideals::minors::v_family_rank(n, i, q).unwrap() as u64;
            let k = i.min(q).min(n - q);
            let expected = binomial(n, k).pow(2);
            if rank != expected {
                println!("  rank V_{{{i},{q}}} at n = {n}: {rank} != {expected}");
                ok = false;
            }
        }
    }
    ok
}

#[test]
fn criterion_3_dimension_law() {
    let start = Instant::now();
    let ok = (2..=5).all(dimension_law);
    conclude(
        3,
        "dimension law n = 2..5",
        ok,
        start.elapsed(),
        DIMENSION_LIMIT,
    );
}

fn vanishing(max_n: usize) -> (bool, usize) {
    let mut ok = true;
    let mut checks = 0;
    for n in 1..=max_n {
        for mu in partitions_of(n) {
            for q in 1..=mu.first() {
                ok &= vanishing_check(&mu, 0, q, SAMPLES, 0).unwrap().all_zero;
                checks += 1;
            }
            for (i, q) in weyman_schedule(&mu).minor_pairs() {
                ok &= vanishing_check(&mu, i, q, SAMPLES, 0).unwrap().all_zero;
                checks += 1;
            }
            for (k, &m) in mu.mu_values().iter().enumerate() {
                if m > k + 1 {
                    let r = vanishing_check(&mu, k + 1, m - 1, SAMPLES, 0).unwrap();
                    if r.all_zero {
                        println!("  V_{{{},{}}} vanishes on {mu}", k + 1, m - 1);
                    }
                    ok &= !r.all_zero;
                    checks += 1;
                }
            }
        }
    }
    (ok, checks)
}

#[test]
fn criterion_4_vanishing() {
    let start = Instant::now();
    let (ok, checks) = vanishing(6);
    conclude(
        4,
        &format!("vanishing and sharpness n <= 6, {checks} checks"),
        ok,
        start.elapsed(),
        VANISHING_LIMIT,
    );
}

#[test]
fn criterion_5_minimality() {
    let start = Instant::now();
    let options = VerifyOptions::default();
    let mut partitions: Vec<Partition> = (1..=4).flat_map(partitions_of).collect();
    partitions.extend(["3,1,1", "2,2,1", "2,1,1,1", "2,2,1,1", "3,2,1", "2,2,2"].map(p));
    let mut ok = true;
    let mut separations = 0;
    for mu in &partitions {
        let report = verify_minimal(mu, &options).unwrap();
        for s in &report.separations {
            let point_ok = matches!(s.certificate, Some(Certificate::EvaluationPoint { .. }))
                && s.status == Some(MembershipStatus::NonMember)
                && s.verified;
            if !point_ok {
                println!("  separation of U_{{{},{}}} failed for {mu}", s.i, s.p);
            }
            ok &= point_ok;
            separations += 1;
        }
        ok &= report.pass;
    }
    conclude(
        5,
        &format!(
            "minimality over {} partitions, {separations} separations",
            partitions.len()
        ),
        ok,
        start.elapsed(),
        MEMBERSHIP_LIMIT,
    );
}

#[test]
fn criterion_6_redundancy() {
    let start = Instant::now();
    let options = VerifyOptions::default();
    let r = verify_redundant(&p("2,2"), 2, &options).unwrap();
    let mut ok = r.p == 3
        && r.generators == ["t_1", "t_2", "V_{1,2}"]
        && r.candidates == 16
        && r.u_complement == 0
        && (r.rows, r.columns) == (408, 816)
        && r.all_member
        && r.certificates_verified;
    let mut steps = 0;
    for n in 1..=4 {
        for mu in partitions_of(n) {
            for i in excluded_indices(&mu) {
                let r = verify_redundant(&mu, i, &options).unwrap();
                ok &= r.all_member && r.certificates_verified;
                steps += 1;
            }
        }
    }
    conclude(
        6,
        &format!("redundancy, {steps} excluded indices"),
        ok,
        start.elapsed(),
        MEMBERSHIP_LIMIT,
    );
}

#[test]
fn criterion_7_filtration() {
    let start = Instant::now();
    let options = VerifyOptions::default();
    let first = verify_filtration_step(3, 1, 2, &options).unwrap();
    let mut ok = first.all_member && first.certificates_verified && first.candidates > 0;
    let mut steps = 0;
    for n in 2..=4 {
        for i in 1..=n {
            for q in 1..n {
                let r = verify_filtration_step(n, i, q, &options).unwrap();
                if !(r.all_member && r.certificates_verified) {
                    println!("  V_{{{i},{}}} not in <V_{{{i},{q}}}> at n = {n}", q + 1);
                    ok = false;
                }
                steps += 1;
            }
        }
    }
    conclude(
        7,
        &format!("filtration containment, {steps} steps"),
        ok,
        start.elapsed(),
        MEMBERSHIP_LIMIT,
    );
}

#[test]
fn criterion_8_determinism() {
    let start = Instant::now();
    let mut ok = true;
    for text in ["2,2", "2,1,1", "3,1,1"] {
        let config = RunConfig {
            output: OutputFormat::Json,
            max_n: 5,
            seed: 7,
            ..RunConfig::for_partition(text).unwrap()
        };
        let a = cmd_verify(&config, VerifySuite::All)
            .unwrap()
            .render(OutputFormat::Json)
            .unwrap();
        let b = cmd_verify(&config, VerifySuite::All)
            .unwrap()
            .render(OutputFormat::Json)
            .unwrap();
        ok &= a == b && !a.is_empty();
    }
    conclude(
        8,
        "byte-identical verify JSON",
        ok,
        start.elapsed(),
        MEMBERSHIP_LIMIT,
    );
}
