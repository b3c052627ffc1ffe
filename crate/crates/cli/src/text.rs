use std::fmt::Write;

use orbit_ideals::MembershipStatus;

use crate::commands::*;
use crate::Report;

fn join<T: ToString>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn status(s: Option<MembershipStatus>) -> String {
    s.map_or_else(|| "inconclusive".to_string(), |s| format!("{s:?}"))
}

impl Report for ScheduleReport {
    fn text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "partition: {} (n = {})", self.partition, self.n).unwrap();
        writeln!(out, "conjugate: {}", self.conjugate).unwrap();
        writeln!(out, "mu(i): {}", join(&self.mu_values)).unwrap();
        writeln!(out, "weyman: {}", self.weyman.generators).unwrap();
        writeln!(out, "minimal: {}", self.minimal.generators).unwrap();
        writeln!(out, "excluded: {}", join(&self.excluded)).unwrap();
        writeln!(out, "families:").unwrap();
        for f in &self.minimal.families {
            writeln!(
                out,
                "  {:<10} degree {:<3} dimension {}",
                f.label, f.degree, f.dimension
            )
            .unwrap();
        }
        writeln!(out, "generator count: {}", self.minimal.generator_count).unwrap();
        writeln!(out, "arrows: {}", join(&self.minimal.arrow_columns)).unwrap();
        writeln!(out, "diagram:").unwrap();
        writeln!(out, "{}", self.diagram).unwrap();
        if let Some(rv) = &self.rank_variety {
            writeln!(
                out,
                "rank variety in {}x{}: {}",
                rv.n, rv.n, rv.schedule.generators
            )
            .unwrap();
            writeln!(out, "  note: {}", rv.note).unwrap();
        }
        out
    }
}

impl Report for GeneratorsReport {
    fn text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "partition: {} (n = {})", self.partition, self.n).unwrap();
        for f in &self.families {
            let extra = f
                .u_complement
                .map(|u| format!(", {u} U-representatives"))
                .unwrap_or_default();
            writeln!(
                out,
                "  {:<10} degree {:<3} {} polynomials{extra}",
                f.family, f.degree, f.count
            )
            .unwrap();
        }
        writeln!(out, "total: {}", self.total).unwrap();
        if let Some(file) = &self.file {
            writeln!(out, "written: {file}").unwrap();
        }
        out
    }
}

impl Report for DimsReport {
    fn text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "n = {}", self.n).unwrap();
        writeln!(out, "udim: {}", join(&self.table.dims)).unwrap();
        for r in &self.ranks {
            writeln!(
                out,
                "  rank V_{{{},{}}} = {:<5} expected {:<5} {}",
                r.i,
                r.p,
                r.rank,
                r.expected,
                mark(r.rank as u64 == r.expected)
            )
            .unwrap();
        }
        writeln!(out, "consistent: {}", self.consistent).unwrap();
        out
    }

    fn passed(&self) -> bool {
        self.consistent
    }
}

impl Report for WitnessReport {
    fn text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "partition: {}", self.partition).unwrap();
        for w in &self.minimality {
            writeln!(
                out,
                "  minimality i={} p={}: {} (conjugate {}, e={}, f={})",
                w.i,
                w.p,
                w.witness.to_exponent_string(),
                w.conjugate,
                w.e,
                w.f
            )
            .unwrap();
        }
        for w in &self.redundancy {
            writeln!(
                out,
                "  redundancy i={} p={}: {} (r={}, f={})",
                w.i,
                w.p,
                w.witness.to_exponent_string(),
                w.r,
                w.f
            )
            .unwrap();
        }
        out
    }
}

impl Report for MembershipReport {
    fn text(&self) -> String {
        let v = &self.verdict;
        let mut out = String::new();
        writeln!(out, "status: {:?}", v.status).unwrap();
        writeln!(out, "mode: {}", v.mode).unwrap();
        writeln!(
            out,
            "degree: {}, rows: {}, columns: {}, nonzeros: {}",
            v.degree, v.rows, v.columns, v.nonzeros
        )
        .unwrap();
        writeln!(out, "certificate verified: {}", self.verified).unwrap();
        out
    }

    fn passed(&self) -> bool {
        self.verified
    }
}

impl Report for VerifyReport {
    fn text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "partition: {}", self.partition).unwrap();
        if let Some(v) = &self.vanishing {
            writeln!(out, "vanishing: {}", mark(v.pass)).unwrap();
            for c in &v.checks {
                let expect = if c.expect_zero { "zero" } else { "nonzero" };
                let family = match c.kind {
                    VanishingKind::Invariant => format!("t_{}", c.p),
                    _ => format!("V_{{{},{}}}", c.i, c.p),
                };
                write!(
                    out,
                    "  {:<10} {family} ({} elements) expect {expect}: {}",
                    format!("{:?}", c.kind),
                    c.elements,
                    mark(c.pass)
                )
                .unwrap();
                if let Some(w) = &c.witness {
                    write!(
                        out,
                        " (element {} at seed {} = {})",
                        w.element, w.seed, w.value
                    )
                    .unwrap();
                }
                out.push('\n');
            }
        }
        if let Some(m) = &self.minimal {
            writeln!(out, "minimal: {}", mark(m.pass)).unwrap();
            writeln!(out, "  generators: {}", m.generators.join(",")).unwrap();
            for s in &m.separations {
                writeln!(
                    out,
                    "  separate U_{{{},{}}} via {}: {} verified={} {}",
                    s.i,
                    s.p,
                    s.witness.to_exponent_string(),
                    status(s.status),
                    s.verified,
                    mark(s.status == Some(MembershipStatus::NonMember) && s.verified)
                )
                .unwrap();
            }
            for c in &m.invariants {
                writeln!(
                    out,
                    "  t_{} outside <{}>: {:?} ({} rows) verified={} {}",
                    c.p,
                    c.generators.join(","),
                    c.status,
                    c.rows,
                    c.verified,
                    mark(!c.status.is_member() && c.verified)
                )
                .unwrap();
            }
            for r in &m.redundancies {
                writeln!(
                    out,
                    "  redundant U_{{{},{}}} in <{}>: {}/{} members, {}x{} verified={} {}",
                    r.i,
                    r.p,
                    r.generators.join(","),
                    r.members,
                    r.candidates,
                    r.rows,
                    r.columns,
                    r.certificates_verified,
                    mark(r.all_member && r.certificates_verified)
                )
                .unwrap();
            }
        }
        writeln!(out, "result: {}", mark(self.pass)).unwrap();
        out
    }

    fn passed(&self) -> bool {
        self.pass
    }
}
