use std::fmt::{self, Write as _};
use std::time::Instant;

use serde_json::{json, Value};

use gtc_core::code::{self, build_code, build_code_2d, predict_d_theorem, CodeError, EngineChoice, TheoremPrediction};
use gtc_core::cubics::{self, CubicError};
use gtc_core::figures::DocError;
use gtc_core::gf::is_prime;
use gtc_core::lattice::{lattice_points, minkowski_length, LatticeError};
use gtc_core::polyfact::{self, PolyError, UniFamily};
use gtc_core::{tables, verify, FieldSpec, GfError};

use crate::input::{self, element_string, polynomial_string};
use crate::{Command, CubicCheck, EngineArg};

#[derive(Debug)]
pub enum CliError {
    /// Exit code 2.
    BadInput(String),
    /// Exit code 3.
    Infeasible(String),
    /// A check failed; exit code 1.
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::BadInput(_) => 2,
            CliError::Infeasible(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::BadInput(m) => write!(f, "bad input: {m}"),
            CliError::Infeasible(m) => write!(f, "infeasible: {m}"),
            CliError::Failed(m) => write!(f, "check failed: {m}"),
        }
    }
}

impl From<GfError> for CliError {
    fn from(e: GfError) -> Self {
        CliError::BadInput(e.to_string())
    }
}

impl From<DocError> for CliError {
    fn from(e: DocError) -> Self {
        CliError::BadInput(e.to_string())
    }
}

impl From<LatticeError> for CliError {
    fn from(e: LatticeError) -> Self {
        CliError::BadInput(e.to_string())
    }
}

impl From<CodeError> for CliError {
    fn from(e: CodeError) -> Self {
        match e {
            CodeError::Infeasible { .. } | CodeError::TooLarge { .. } => CliError::Infeasible(e.to_string()),
            CodeError::Inconsistent(_) => CliError::Failed(e.to_string()),
            _ => CliError::BadInput(e.to_string()),
        }
    }
}

impl From<PolyError> for CliError {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::TooLarge { .. } => CliError::Infeasible(e.to_string()),
            _ => CliError::BadInput(e.to_string()),
        }
    }
}

impl From<CubicError> for CliError {
    fn from(e: CubicError) -> Self {
        match e {
            CubicError::TooLarge { .. } => CliError::Infeasible(e.to_string()),
            CubicError::Violation { .. } => CliError::Failed(e.to_string()),
            CubicError::Code(c) => c.into(),
            _ => CliError::BadInput(e.to_string()),
        }
    }
}

/// What a command prints, in both formats, and its exit code.
pub struct Outcome {
    pub json: Value,
    pub text: String,
    pub exit: u8,
}

impl Outcome {
    fn ok(json: Value, text: String) -> Self {
        Outcome { json, text, exit: 0 }
    }
}

fn field_of_order(q: u32) -> Result<FieldSpec, CliError> {
    let (p, h) = cubics::prime_power(q).ok_or_else(|| CliError::BadInput(format!("{q} is not a prime power")))?;
    Ok(FieldSpec::new(p as u64, h)?)
}

fn ms(start: Instant) -> f64 {
    (start.elapsed().as_secs_f64() * 1e4).round() / 10.0
}

pub fn run(command: Command) -> Result<Outcome, CliError> {
    match command {
        Command::Field { p, h, table } => cmd_field(p, h, table),
        Command::Code { source, field, engine, orbits, no_distance } => {
            let doc = input::load(&source)?;
            let field = input::field(&doc, &field)?;
            cmd_code(&doc, field, engine, orbits, no_distance)
        }
        Command::Minklen { source, q } => cmd_minklen(&input::load(&source)?, &q),
        Command::Bounds { source, q, compute } => cmd_bounds(&input::load(&source)?, &q, compute),
        Command::Census { p, h, ell, ks, orbits } => cmd_census(p, h, ell, &ks, orbits),
        Command::SplitPrimes { ell, ks, from, to } => cmd_split_primes(ell, &ks, from, to),
        Command::Cubics { q, check, quadratic } => cmd_cubics(q, check, quadratic),
        Command::Verify { tables, budget } => cmd_verify(&tables, budget),
    }
}

fn cmd_field(p: u64, h: u32, table: bool) -> Result<Outcome, CliError> {
    let field = FieldSpec::new(p, h)?;
    let d = field.descriptor();
    let mut text = format!(
        "GF({}) = GF({})[u]/({})\nalpha = {} (order {})\n",
        d.q,
        d.p,
        polynomial_string(&d.modulus, "u"),
        element_string(&field, d.alpha),
        field.order()
    );
    let mut json = json!({
        "p": d.p, "h": d.h, "q": d.q, "modulus": d.modulus, "alpha": d.alpha,
    });
    if table {
        let rows: Vec<Value> = field
            .nonzero()
            .map(|x| json!({"element": x.0, "log": field.dlog(x).expect("nonzero")}))
            .collect();
        for x in field.nonzero() {
            let _ = writeln!(text, "{:>12}  log {}", element_string(&field, x.0), field.dlog(x).expect("nonzero"));
        }
        json["table"] = Value::Array(rows);
    }
    Ok(Outcome::ok(json, text))
}

fn engine_choice(engine: EngineArg, orbits: bool) -> EngineChoice {
    match engine {
        EngineArg::Auto if orbits => EngineChoice::Exhaustive { orbits: true },
        EngineArg::Auto => EngineChoice::Auto,
        EngineArg::Exhaustive => EngineChoice::Exhaustive { orbits },
        EngineArg::Bz => EngineChoice::Bz,
    }
}

fn cmd_code(
    doc: &gtc_core::figures::InputDoc,
    field: FieldSpec,
    engine: EngineArg,
    orbits: bool,
    no_distance: bool,
) -> Result<Outcome, CliError> {
    let m = doc.m.unwrap_or(2);
    let exponents = doc.exponents()?;
    let q = field.q();
    let code = build_code(field, &exponents, m)?;
    let mut json = json!({"q": q, "m": m, "n": code.n(), "k": code.k(), "dimension": code.dimension()});
    let mut text = format!("q = {q}, m = {m}\nn = {}\nk = {}\n", code.n(), code.k());
    if !no_distance {
        let start = Instant::now();
        let d = code::min_distance(&code, engine_choice(engine, orbits))?;
        let elapsed = ms(start);
        let witness: Vec<Value> = code
            .exponents()
            .iter()
            .zip(&d.witness)
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| json!({"exponent": e, "coefficient": c.0}))
            .collect();
        let _ = writeln!(text, "d = {}\nengine = {}\nelapsed = {elapsed} ms\nvisited = {}", d.d, d.engine, d.visited);
        let terms: Vec<String> = code
            .exponents()
            .iter()
            .zip(&d.witness)
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| format!("{}*x^{e:?}", element_string(code.field(), c.0)))
            .collect();
        let _ = writeln!(text, "witness = {}", terms.join(" + "));
        json["d"] = json!(d.d);
        json["engine"] = json!(d.engine);
        json["elapsed_ms"] = json!(elapsed);
        json["visited"] = json!(d.visited);
        json["witness"] = Value::Array(witness);
    }
    Ok(Outcome::ok(json, text))
}

fn cmd_minklen(doc: &gtc_core::figures::InputDoc, qs: &[u64]) -> Result<Outcome, CliError> {
    let polygon = doc.polygon()?;
    let ml = minkowski_length(&polygon)?;
    let mut text = format!("P = {polygon}\nL(P) = {}\nT0 summand: {}\n", ml.length, ml.has_t0_summand);
    for (i, dec) in ml.decompositions.iter().enumerate() {
        let summands: Vec<String> = dec.summands.iter().map(|s| s.to_string()).collect();
        let placements: Vec<String> = dec.placements.iter().map(|p| p.to_string()).collect();
        let _ = writeln!(
            text,
            "decomposition {}: {} = {}, placements {}",
            i + 1,
            dec.sum,
            summands.join(" + "),
            placements.join(" ")
        );
    }
    let bounds: Vec<Value> = qs
        .iter()
        .map(|&q| {
            let b = ml.bounds(q);
            let applicable = b.applicable(ml.has_t0_summand);
            let _ = writeln!(text, "q = {q}: d >= {applicable}");
            json!({"q": q, "with_t0": b.with_t0, "without_t0": b.without_t0, "applicable": applicable})
        })
        .collect();
    let json = json!({
        "polygon": polygon.vertices(),
        "length": ml.length,
        "has_t0_summand": ml.has_t0_summand,
        "decompositions": ml.decompositions,
        "bounds": bounds,
    });
    Ok(Outcome::ok(json, text))
}

fn cmd_bounds(doc: &gtc_core::figures::InputDoc, qs: &[u32], compute: bool) -> Result<Outcome, CliError> {
    let polygon = doc.polygon()?;
    let points = match doc.points {
        Some(_) => doc.point_set()?,
        None => lattice_points(&polygon),
    };
    let ml = minkowski_length(&polygon)?;
    let mut text = format!("P = {polygon}, |S| = {}, L(P) = {}\n", points.len(), ml.length);
    let _ = writeln!(text, "{:>5} {:>10} {:>12} {:>10}", "q", "bound", "prediction", "d");
    let mut rows = Vec::new();
    for &q in qs {
        let bound = ml.bounds(q as u64).applicable(ml.has_t0_summand);
        let prediction = predict_d_theorem(&polygon, &points, q as u64);
        let d = if compute {
            let code = build_code_2d(field_of_order(q)?, &points)?;
            Some(code::min_distance(&code, EngineChoice::Auto)?.d)
        } else {
            None
        };
        let pred_text = match &prediction {
            TheoremPrediction::Asymptotic { d, .. } => format!("{d}*"),
            TheoremPrediction::Fails(_) => "-".into(),
        };
        let d_text = d.map_or("-".into(), |d| d.to_string());
        let _ = writeln!(text, "{q:>5} {bound:>10} {pred_text:>12} {d_text:>10}");
        let failure = match &prediction {
            TheoremPrediction::Fails(f) => Some(f.to_string()),
            _ => None,
        };
        rows.push(json!({
            "q": q,
            "bound": bound,
            "prediction": prediction.value(),
            "prediction_failure": failure,
            "d": d,
        }));
    }
    if let TheoremPrediction::Fails(f) = predict_d_theorem(&polygon, &points, 2) {
        let _ = writeln!(text, "no prediction: {f}");
    } else {
        let _ = writeln!(text, "* valid for sufficiently large characteristic only");
    }
    Ok(Outcome::ok(json!({"length": ml.length, "has_t0_summand": ml.has_t0_summand, "rows": rows}), text))
}

fn cmd_census(p: u64, h: u32, ell: u32, ks: &[u32], orbits: bool) -> Result<Outcome, CliError> {
    let field = FieldSpec::new(p, h)?;
    let family = UniFamily::new(&field, ell, ks)?;
    let report = polyfact::census(&family)?;
    let mut text = format!("family u^{ell} + t u^{ks:?} + t over GF({}): {} members\n", report.q, report.members);
    for (pattern, count) in &report.pattern_counts {
        let _ = writeln!(text, "  {pattern:<16} {count}");
    }
    let _ = writeln!(text, "split, distinct nonzero roots: {}", report.split_distinct_nonzero);
    let _ = writeln!(text, "  of which t_1 = 0: {}", report.split_distinct_nonzero_t1_zero);
    if let (Some(z), Some(zn)) = (report.discriminant_zero, report.discriminant_zero_all_t_nonzero) {
        let _ = writeln!(text, "discriminant zero: {z} (all t nonzero: {zn}), bound {}", report.discriminant_bound);
    }
    let _ = writeln!(
        text,
        "split ratio {:.4} vs {:.4} (tolerance {:.4})",
        report.split_ratio, report.split_expected, report.split_tolerance
    );
    let mut json = serde_json::to_value(&report).expect("report serializes");
    if orbits {
        let verdict = polyfact::orbit_divisibility_check(&family)?;
        let _ = writeln!(
            text,
            "scaling orbits: sizes {:?}, divisible by q-1: {}",
            verdict.orbit_sizes, verdict.divisible
        );
        json["orbits"] = serde_json::to_value(&verdict).expect("verdict serializes");
    }
    Ok(Outcome::ok(json, text))
}

fn cmd_split_primes(ell: u32, ks: &[u32], from: u64, to: u64) -> Result<Outcome, CliError> {
    if to > 1 << 16 {
        return Err(CliError::Infeasible(format!("primes up to {to} exceed the field range")));
    }
    let primes: Vec<u64> = (from..=to).filter(|&p| is_prime(p)).collect();
    let results = polyfact::split_existence_by_prime(ell, ks, &primes)?;
    let without: Vec<u64> = results.iter().filter(|(_, s)| !s).map(|&(p, _)| p).collect();
    let text = format!(
        "{} primes in [{from}, {to}]; no split member over GF(p) for p in {without:?}\n",
        primes.len()
    );
    Ok(Outcome::ok(json!({"from": from, "to": to, "primes": primes.len(), "without_split_member": without}), text))
}

fn cmd_cubics(q: u32, check: CubicCheck, quadratic: bool) -> Result<Outcome, CliError> {
    field_of_order(q)?;
    let wants = |c: CubicCheck| check == CubicCheck::All || check == c;
    let supersingular_case = q % 2 == 1 && q % 3 == 2;
    let mut json = json!({"q": q});
    let mut text = String::new();
    if wants(CubicCheck::Divby3) {
        let r = cubics::divby3_scan(q)?;
        let _ = writeln!(
            text,
            "3 | N_proj for all {} smooth members ({} singular); Hasse-Weil: {}",
            r.smooth_members, r.singular_members, r.hasse_weil
        );
        let _ = writeln!(text, "  N_proj histogram: {:?}", r.histogram);
        if let Some((m, n)) = r.max_torus {
            let _ = writeln!(text, "  most torus points: {n} at {m}");
        }
        json["divby3"] = serde_json::to_value(&r).expect("serializes");
    }
    if wants(CubicCheck::Supersingular) && (supersingular_case || check == CubicCheck::Supersingular) {
        let r = cubics::supersingular_check(q, quadratic)?;
        let _ = writeln!(
            text,
            "c = 0: {} smooth members, N_proj = q + 1: {}, over GF(q^2): {}, max N_tor = {}",
            r.members,
            r.base_count_ok,
            r.quadratic_count_ok.map_or("not checked".into(), |b| b.to_string()),
            r.max_torus
        );
        json["supersingular"] = serde_json::to_value(&r).expect("serializes");
    }
    if wants(CubicCheck::Predict) && (supersingular_case || check == CubicCheck::Predict) {
        let r = cubics::predict_d_t0(q)?;
        let _ = writeln!(text, "predicted d(C_T0) = {} (t = {})", r.d, r.t);
        json["prediction"] = serde_json::to_value(r).expect("serializes");
    }
    if wants(CubicCheck::T0s) {
        let r = cubics::theorem_t0s_check(q)?;
        let _ = writeln!(text, "d(C_S) = {}, d(C_T0) = {}, (q-1)^2 - (q-1) = {}", r.d_s, r.d_t0, r.s_bound);
        json["t0s"] = serde_json::to_value(&r).expect("serializes");
    }
    Ok(Outcome::ok(json, text))
}

fn cmd_verify(names: &[String], budget: verify::Budget) -> Result<Outcome, CliError> {
    let selected = if names.is_empty() || names.iter().any(|n| n == "all") {
        tables::all()
    } else {
        names
            .iter()
            .map(|n| tables::by_name(n).ok_or_else(|| CliError::BadInput(format!("unknown table {n:?}"))))
            .collect::<Result<Vec<_>, _>>()?
    };
    let report = verify::verify_tables(&selected, budget);
    let mut text = String::new();
    for e in &report.entries {
        let computed = e.computed.map_or("-".into(), |c| c.to_string());
        let mark = match e.status {
            verify::Status::Match => "ok",
            verify::Status::Mismatch => "MISMATCH",
            verify::Status::Skipped => "skipped",
            verify::Status::Error => "ERROR",
        };
        let _ = write!(
            text,
            "{:<12} {:<8} q={:<3} expected {:>4} computed {:>4}  {:<8} {:>9.1} ms",
            e.table, e.instance, e.q, e.expected, computed, mark, e.elapsed_ms
        );
        if e.status == verify::Status::Mismatch {
            let _ = write!(text, "  [{}]", e.citation);
        }
        if let Some(note) = &e.note {
            let _ = write!(text, "  ({note})");
        }
        text.push('\n');
    }
    let _ = writeln!(
        text,
        "{} matched, {} mismatched, {} skipped, {} errors",
        report.matched, report.mismatched, report.skipped, report.errors
    );
    let exit = if report.ok() { 0 } else { 1 };
    Ok(Outcome { json: serde_json::to_value(&report).expect("serializes"), text, exit })
}
