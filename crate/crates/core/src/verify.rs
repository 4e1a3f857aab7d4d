//! Recomputes the published tables and diffs them against [`crate::tables`].

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;

use crate::code::{
    build_code_2d, min_distance, CodeError, EngineChoice, MonomialProduct, ToricCode, UniFactor,
};
use crate::figures;
use crate::gf::{FieldSpec, Gf};
use crate::lattice::{lattice_points, minkowski_length, points, t0, PointSet};
use crate::tables::{Expected, ExpectedTable};

/// How much work `verify` may do.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Budget {
    /// About a minute in total.
    Quick,
    /// Up to half an hour.
    Full,
    /// Unbounded.
    Long,
}

impl Budget {
    /// Largest estimated cost (codeword coordinates touched) allowed per entry.
    fn work_limit(self) -> f64 {
        match self {
            Budget::Quick => 2e9,
            Budget::Full => 5e11,
            Budget::Long => f64::INFINITY,
        }
    }
}

impl FromStr for Budget {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "quick" => Ok(Budget::Quick),
            "full" => Ok(Budget::Full),
            "long" => Ok(Budget::Long),
            other => Err(format!("unknown budget {other:?} (expected quick, full or long)")),
        }
    }
}

impl fmt::Display for Budget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Budget::Quick => "quick",
            Budget::Full => "full",
            Budget::Long => "long",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Match,
    Mismatch,
    /// Over budget; not computed.
    Skipped,
    Error,
}

#[derive(Debug, Clone, Serialize)]
pub struct EntryReport {
    pub table: &'static str,
    pub instance: &'static str,
    pub q: u32,
    pub expected: i64,
    pub computed: Option<i64>,
    pub status: Status,
    pub engine: Option<String>,
    pub elapsed_ms: f64,
    pub citation: &'static str,
    pub note: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub budget: Budget,
    pub entries: Vec<EntryReport>,
    pub matched: usize,
    pub mismatched: usize,
    pub skipped: usize,
    pub errors: usize,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.mismatched == 0 && self.errors == 0
    }
}

/// What an entry computes, and roughly what it costs.
enum Job {
    Distance { code: ToricCode, choice: EngineChoice },
    Bound { polygon_points: PointSet, q: u64 },
    Length(ToricCode),
    Dimension(ToricCode),
    RecordWitness(ToricCode),
}

fn field_of(q: u32) -> Result<Arc<FieldSpec>, String> {
    let (p, h) = crate::cubics::prime_power(q).ok_or_else(|| format!("{q} is not a prime power"))?;
    FieldSpec::new(p as u64, h).map(Arc::new).map_err(|e| e.to_string())
}

/// Exhaustive search through `q = 13`, orbit representatives beyond.
fn table_engine(q: u32) -> EngineChoice {
    EngineChoice::Exhaustive { orbits: q > 13 }
}

fn job_for(table: &str, r: &Expected) -> Result<Job, String> {
    let field = field_of(r.q)?;
    let code = |s: &PointSet| build_code_2d(field.clone(), s).map_err(|e| e.to_string());
    let distance = |s: &PointSet| Ok(Job::Distance { code: code(s)?, choice: table_engine(r.q) });
    match (table, r.instance) {
        ("t0-vs-s", "S") => distance(&figures::figure3().points),
        ("t0-vs-s", "T0") => distance(&lattice_points(&t0())),
        ("figure2", "S") => distance(&figures::figure2().points),
        ("figure2", "bound") => {
            Ok(Job::Bound { polygon_points: lattice_points(&figures::figure2().polygon), q: r.q as u64 })
        }
        ("figure4", "S") => distance(&figures::figure4().points),
        ("figure4", "P") => distance(&lattice_points(&figures::figure4().polygon)),
        ("record-code", "n") => Ok(Job::Length(code(&figures::figure1().points)?)),
        ("record-code", "k") => Ok(Job::Dimension(code(&figures::figure1().points)?)),
        ("record-code", "witness") => Ok(Job::RecordWitness(code(&figures::figure1().points)?)),
        ("record-code", "d") => Ok(Job::Distance { code: code(&figures::figure1().points)?, choice: EngineChoice::Bz }),
        _ => Err(format!("no recipe for {table}/{}", r.instance)),
    }
}

/// Estimated coordinates touched.
fn job_cost(job: &Job) -> f64 {
    match job {
        Job::Distance { code, choice } => {
            let words = code.projective_count();
            let n = code.n() as f64;
            match choice {
                EngineChoice::Exhaustive { orbits: true } => {
                    words / (code.field().order() as f64).powi(code.m() as i32) * n
                }
                // information-set enumeration; far below the full count but
                // still the most expensive table entry
                EngineChoice::Bz => f64::INFINITY,
                _ => words * n,
            }
        }
        _ => 0.0,
    }
}

/// `x^4 y^3 (x - a1)(x - a2)(x - a3)` for the first distinct nonzero roots
/// with `a1 + a2 + a3 = 0`.
pub fn record_witness(code: &ToricCode) -> Result<Vec<Gf>, CodeError> {
    let f = code.field();
    let nz: Vec<Gf> = f.nonzero().collect();
    let mut roots = None;
    'search: for (i, &a) in nz.iter().enumerate() {
        for (j, &b) in nz.iter().enumerate().skip(i + 1) {
            for &c in &nz[j + 1..] {
                if f.add(f.add(a, b), c).is_zero() {
                    roots = Some([a, b, c]);
                    break 'search;
                }
            }
        }
    }
    let roots = roots.ok_or_else(|| CodeError::Inconsistent("no three distinct roots sum to zero".into()))?;
    code.reduce_exponents(&MonomialProduct {
        prefix: vec![4, 3],
        factors: roots.iter().map(|&r| UniFactor::linear(f, vec![1, 0], r)).collect(),
    })
}

fn run_job(job: &Job) -> Result<(i64, Option<String>), String> {
    match job {
        Job::Distance { code, choice } => {
            let d = min_distance(code, *choice).map_err(|e| e.to_string())?;
            Ok((d.d as i64, Some(d.engine.to_string())))
        }
        Job::Bound { polygon_points, q } => {
            let hull = crate::lattice::convex_hull(polygon_points).map_err(|e| e.to_string())?;
            let ml = minkowski_length(&hull).map_err(|e| e.to_string())?;
            Ok((ml.bounds(*q).applicable(ml.has_t0_summand), None))
        }
        Job::Length(code) => Ok((code.n() as i64, None)),
        Job::Dimension(code) => Ok((code.dimension() as i64, None)),
        Job::RecordWitness(code) => {
            let coeffs = record_witness(code).map_err(|e| e.to_string())?;
            Ok((code.evaluate(&coeffs).map_err(|e| e.to_string())?.weight as i64, None))
        }
    }
}

fn verify_entry(table: &'static str, r: &Expected, budget: Budget) -> EntryReport {
    let start = Instant::now();
    let mut entry = EntryReport {
        table,
        instance: r.instance,
        q: r.q,
        expected: r.value,
        computed: None,
        status: Status::Error,
        engine: None,
        elapsed_ms: 0.0,
        citation: r.citation,
        note: None,
    };
    match job_for(table, r) {
        Err(e) => entry.note = Some(e),
        Ok(job) if job_cost(&job) > budget.work_limit() => {
            entry.status = Status::Skipped;
            entry.note = Some(format!("over the {budget} budget"));
        }
        Ok(job) => match run_job(&job) {
            Ok((value, engine)) => {
                entry.computed = Some(value);
                entry.engine = engine;
                entry.status = if value == r.value { Status::Match } else { Status::Mismatch };
            }
            Err(e) => entry.note = Some(e),
        },
    }
    entry.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    entry
}

/// Recomputes every entry of `tables` the budget allows.
pub fn verify_tables(tables: &[ExpectedTable], budget: Budget) -> VerifyReport {
    let entries: Vec<EntryReport> = tables
        .iter()
        .flat_map(|t| t.records.iter().map(move |r| verify_entry(t.name, r, budget)))
        .collect();
    let count = |s: Status| entries.iter().filter(|e| e.status == s).count();
    VerifyReport {
        budget,
        matched: count(Status::Match),
        mismatched: count(Status::Mismatch),
        skipped: count(Status::Skipped),
        errors: count(Status::Error),
        entries,
    }
}

/// The exceptional-triangle vertices, for callers that want the code directly.
pub fn triangle_vertices() -> PointSet {
    points([(0, 0), (1, 2), (2, 1)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tables;

    #[test]
    fn budgets_parse() {
        assert_eq!("quick".parse::<Budget>().unwrap(), Budget::Quick);
        assert!("fast".parse::<Budget>().is_err());
        assert!(Budget::Quick < Budget::Long);
    }

    #[test]
    fn record_code_cheap_entries() {
        let report = verify_tables(&[tables::record_code()], Budget::Quick);
        assert_eq!((report.matched, report.skipped, report.mismatched), (3, 1, 0));
        let d = report.entries.iter().find(|e| e.instance == "d").unwrap();
        assert_eq!(d.status, Status::Skipped);
    }

    #[test]
    fn small_rows_match() {
        let mut t = tables::t0_vs_s();
        t.records.retain(|r| r.q <= 9);
        let report = verify_tables(&[t], Budget::Quick);
        assert!(report.ok(), "{report:?}");
        assert_eq!(report.matched, 8);
    }

    #[test]
    fn mismatch_is_reported() {
        let mut t = tables::t0_vs_s();
        t.records.truncate(1);
        t.records[0].value = 11;
        let report = verify_tables(&[t], Budget::Quick);
        assert_eq!(report.mismatched, 1);
        assert_eq!(report.entries[0].computed, Some(12));
        assert!(!report.ok());
    }
}
