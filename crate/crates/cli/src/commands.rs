use std::fmt;

use num_bigint::BigUint;
use serde_json::{Map, Value};

use lhall_core::reversal::{dilation_points, dilation_violation};
use lhall_core::*;

type Result<T, E = Failure> = std::result::Result<T, E>;

use crate::args::{variant_name, Command, DeltaMethod, EhrhartMethod, MapOp, Property};
use crate::report::{flag, num, string_array, Report};

/// A run that could not produce a verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    Invalid(String),
    SizeCap(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Invalid(_) => 2,
            Failure::SizeCap(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Invalid(m) => write!(f, "invalid input: {m}"),
            Failure::SizeCap(m) => write!(f, "{m}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_size_cap() {
            Failure::SizeCap(e.to_string())
        } else {
            Failure::Invalid(e.to_string())
        }
    }
}

/// A finished report plus whether every check in it held.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Report,
    pub passed: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }
}

pub fn run(cmd: &Command) -> Result<Outcome> {
    let common = cmd.common();
    let s: Seq = common.seq.parse()?;
    let limits = Limits::with_max_points(common.max_points).parallel(common.parallel);
    match cmd {
        Command::Delta { method, .. } => delta(&s, *method, &limits),
        Command::Ehrhart { t, method, .. } => ehrhart(&s, *t, *method, &limits),
        Command::Enumerate { star, .. } => enumerate(&s, *star, &limits),
        Command::Map {
            op, input, q, t, ..
        } => map(&s, *op, input, q.as_deref(), *t),
        Command::Verify {
            property, t, order, ..
        } => verify(&s, *property, *t, *order, &limits),
    }
}

fn delta(s: &Seq, method: DeltaMethod, limits: &Limits) -> Result<Outcome> {
    let mut report = Report::new(s.entries(), "delta");
    report.method = Some(variant_name(&method));
    let methods: Vec<DeltaMethod> = match method {
        DeltaMethod::All if s.first() == 1 => {
            vec![DeltaMethod::Par, DeltaMethod::Des, DeltaMethod::Asc]
        }
        DeltaMethod::All => vec![DeltaMethod::Par, DeltaMethod::Des],
        m => vec![m],
    };
    let mut results = Vec::new();
    for m in methods {
        let d = match m {
            DeltaMethod::Par => delta_via_parallelepiped(s, limits)?,
            DeltaMethod::Des => delta_via_descents(s, limits)?,
            DeltaMethod::Asc => delta_via_ascents(s, limits)?,
            DeltaMethod::All => unreachable!(),
        };
        results.push((variant_name(&m), d));
    }
    let first = results[0].1.entries().to_vec();
    let agree = results.iter().all(|(_, d)| d.entries() == first.as_slice());
    let mut by_method = Map::new();
    for (name, d) in &results {
        by_method.insert(name.clone(), string_array(d.entries()));
        if d.entries() != first.as_slice() {
            let mut row = vec![name.clone()];
            row.extend(d.entries().iter().map(|e| e.to_string()));
            report.counterexamples.push(row);
        }
    }
    report.delta = Some(first.iter().map(|e| e.to_string()).collect());
    report.set("methods", by_method);
    report.set("agree", flag(agree));
    report.set("sum", num(results[0].1.sum()));
    report.set("volume", num(s.product()));
    Ok(Outcome {
        report,
        passed: agree,
    })
}

fn ehrhart(s: &Seq, t: u64, method: EhrhartMethod, limits: &Limits) -> Result<Outcome> {
    let mut report = Report::new(s.entries(), "ehrhart");
    report.method = Some(variant_name(&method));
    report.set("t", num(t));
    let direct = match method {
        EhrhartMethod::Direct | EhrhartMethod::Both => Some(ehrhart_direct(s, t, limits)?.count),
        EhrhartMethod::Delta => None,
    };
    let via_delta = match method {
        EhrhartMethod::Delta | EhrhartMethod::Both => {
            let d = delta_via_descents(s, limits)?;
            report.delta = Some(d.entries().iter().map(|e| e.to_string()).collect());
            Some(ehrhart_from_delta(&d, t).count)
        }
        EhrhartMethod::Direct => None,
    };
    let count = direct
        .clone()
        .or(via_delta.clone())
        .expect("one method ran");
    report.set("count", num(&count));
    if let Some(c) = &direct {
        report.set("direct", num(c));
    }
    if let Some(c) = &via_delta {
        report.set("from_delta", num(c));
    }
    let agree = match (&direct, &via_delta) {
        (Some(a), Some(b)) => a == b,
        _ => true,
    };
    if method == EhrhartMethod::Both {
        report.set("agree", flag(agree));
        if !agree {
            report.add_counterexample(&[t]);
        }
    }
    Ok(Outcome {
        report,
        passed: agree,
    })
}

fn enumerate(s: &Seq, star: bool, limits: &Limits) -> Result<Outcome> {
    let target = if star { s.star() } else { s.clone() };
    let set = enumerate_par(&target, limits)?;
    let mut report = Report::new(s.entries(), "enumerate");
    report.set("star", flag(star));
    report.set("count", num(set.len()));
    report.set("grading", string_array(&grade(&set)));
    let rows: Vec<Vec<String>> = set
        .points()
        .iter()
        .map(|p| {
            p.coords()
                .iter()
                .map(|c| c.to_string())
                .chain([p.level().to_string()])
                .collect()
        })
        .collect();
    report.set(
        "points",
        Value::Array(
            rows.iter()
                .map(|r| string_array(&r[..r.len() - 1]))
                .collect(),
        ),
    );
    report.set(
        "levels",
        Value::Array(rows.iter().map(|r| num(r.last().unwrap())).collect()),
    );
    report.points = Some(rows);
    Ok(Outcome {
        report,
        passed: true,
    })
}

fn parse_word(s: &Seq, text: &str) -> Result<Word> {
    Ok(Word::from_signed(s.clone(), &parse_int_list(text)?)?)
}

fn parse_point(s: &Seq, text: &str) -> Result<LatticePoint> {
    let coords = parse_int_list(text)?;
    if coords.len() != s.len() {
        return Err(Error::LengthMismatch {
            expected: s.len(),
            found: coords.len(),
        }
        .into());
    }
    Ok(LatticePoint::new(coords))
}

/// Rejects non-members with the violated inequality before any map runs.
fn require_par(s: &Seq, x: &LatticePoint) -> Result<()> {
    match par_violation(s, x)? {
        Some(reason) => Err(Error::NotInParallelepiped { reason }.into()),
        None => Ok(()),
    }
}

fn map(s: &Seq, op: MapOp, input: &str, q: Option<&str>, t: u64) -> Result<Outcome> {
    let mut report = Report::new(s.entries(), "map");
    report.method = Some(variant_name(&op));
    report.set("input", string_array(&parse_int_list(input)?));
    let q = q.map(|q| parse_word(s, q)).transpose()?;
    if let Some(q) = &q {
        if !matches!(op, MapOp::Rem | MapOp::RemInv | MapOp::RemBar | MapOp::Phi) {
            return Err(Failure::Invalid(format!(
                "--q is not accepted by {}",
                variant_name(&op)
            )));
        }
        report.set("q", string_array(q.digits()));
    }
    let output: Vec<String> = match op {
        MapOp::Rem | MapOp::RemBar => {
            let x = parse_point(s, input)?;
            require_par(s, &x)?;
            let w = match (op, &q) {
                (MapOp::Rem, None) => {
                    let f = kr(s, &x)?;
                    report.set("k", string_array(&f.k));
                    f.r
                }
                (MapOp::Rem, Some(q)) => rem_q(s, q, &x)?,
                (_, None) => rem_bar(s, &x)?,
                (_, Some(q)) => rem_bar_q(s, q, &x)?,
            };
            strs(w.digits())
        }
        MapOp::RemInv => {
            let r = parse_word(s, input)?;
            let x = match &q {
                None => rem_inv(s, &r)?,
                Some(q) => rem_q_inv(s, q, &r)?,
            };
            report.set("level", num(x.level()));
            strs(x.coords())
        }
        MapOp::Phi => {
            let r = parse_word(s, input)?;
            let z = match &q {
                None => phi(s, &r)?,
                Some(q) => phi_q(s, q, &r)?,
            };
            strs(z.digits())
        }
        MapOp::Gamma => {
            let x = parse_point(&s.star(), input)?;
            require_par(&s.star(), &x)?;
            let tr = gamma(s, &x)?;
            let mut trace = Map::new();
            trace.insert("remainder".into(), string_array(tr.remainder.digits()));
            trace.insert("projected".into(), string_array(tr.projected.digits()));
            trace.insert("phi".into(), string_array(tr.phi.digits()));
            trace.insert("reversed".into(), string_array(tr.reversed.digits()));
            trace.insert("padded".into(), string_array(tr.padded.digits()));
            report.set("trace", trace);
            report.set("source_level", num(tr.source_level));
            report.set("target_level", num(tr.target_level));
            strs(tr.target.coords())
        }
        MapOp::Prop64 => {
            if !s.is_lecture() {
                return Err(Error::NotLectureShape.into());
            }
            let x = parse_point(&s.star(), input)?;
            require_par(&s.star(), &x)?;
            let tr = prop64_map(s.len(), &x)?;
            let mut trace = Map::new();
            trace.insert("rem_bar".into(), string_array(tr.rem_bar.digits()));
            trace.insert("projected".into(), string_array(tr.projected.digits()));
            report.set("trace", trace);
            report.set("level", num(tr.level));
            report.set("projected_asc", num(tr.projected_asc));
            report.set("output_des", num(tr.output_des));
            strs(tr.output.digits())
        }
        MapOp::ReversalPoint => {
            let x = parse_point(s, input)?;
            if let Some(reason) = dilation_violation(s, t, &x)? {
                return Err(Error::NotInDilation { reason }.into());
            }
            report.set("t", num(t));
            strs(reversal_point_map(s, t, &x)?.coords())
        }
    };
    report.set(
        "output",
        Value::Array(output.into_iter().map(Value::String).collect()),
    );
    Ok(Outcome {
        report,
        passed: true,
    })
}

fn strs<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn verify(
    s: &Seq,
    property: Property,
    t: u64,
    order: Option<u64>,
    limits: &Limits,
) -> Result<Outcome> {
    let mut report = Report::new(s.entries(), "verify");
    report.method = Some(variant_name(&property));
    let batch = match property {
        Property::Bijection => verify_bijection(s, limits)?,
        Property::Grading => verify_grading(s, limits, &mut report)?,
        Property::Rev => {
            let words = check_rev_identity_all(s, limits)?;
            let points = check_gamma_all(s, limits)?;
            report.set("words_checked", num(words.checked));
            report.set("points_checked", num(points.checked));
            merge(words, points)
        }
        Property::Tilde => check_tilde_identity_all(s, limits)?,
        Property::S1 => verify_s1(s, limits)?,
        Property::Prop64 => {
            if !s.is_lecture() {
                return Err(Error::NotLectureShape.into());
            }
            check_prop64_all(s.len(), limits)?
        }
        Property::Volume => verify_volume(s, limits, &mut report)?,
        Property::Series => {
            let order = order.unwrap_or(s.len() as u64 + 4);
            report.set("T", num(order));
            let d = delta_via_descents(s, limits)?;
            report.delta = Some(strs(d.entries()));
            let ok = series_check_with(&d, order, limits)?;
            BatchReport {
                checked: order + 1,
                counterexamples: if ok { vec![] } else { vec![vec![order as i64]] },
            }
        }
        Property::ReversalDelta => verify_reversal_delta(s, t, limits, &mut report)?,
    };
    let passed = batch.passed();
    report.set("verdict", if passed { "pass" } else { "fail" });
    report.set("checked", num(batch.checked));
    for c in &batch.counterexamples {
        report.add_counterexample(c);
    }
    Ok(Outcome { report, passed })
}

fn merge(a: BatchReport, b: BatchReport) -> BatchReport {
    let mut counterexamples = a.counterexamples;
    counterexamples.extend(b.counterexamples);
    counterexamples.sort();
    BatchReport {
        checked: a.checked + b.checked,
        counterexamples,
    }
}

/// `REM_s` is a bijection `Par_s → Ψₙ` whose quotients are prefix descent counts.
fn verify_bijection(s: &Seq, limits: &Limits) -> Result<BatchReport> {
    let points = enumerate_par(s, limits)?.points();
    let mut bad = Vec::new();
    let mut images = Vec::with_capacity(points.len());
    for x in &points {
        let f = kr(s, x)?;
        let back = rem_inv(s, &f.r)?;
        let quotients_ok = (1..=s.len())
            .all(|i| s_des_before(s, f.r.digits(), i).map(|c| c as u64) == Ok(f.k[i - 1]));
        if back != *x || !quotients_ok {
            bad.push(x.coords().to_vec());
        }
        images.push(f.r.digits().to_vec());
    }
    images.sort();
    let words: Vec<Vec<u64>> = enumerate_words(s, limits)?
        .map(|w| w.digits().to_vec())
        .collect();
    if images != words {
        // Surjectivity failure: report the first word not hit.
        let missing = words.iter().find(|w| images.binary_search(w).is_err());
        bad.push(missing.map_or_else(Vec::new, |w| w.iter().map(|&d| d as i64).collect()));
    }
    bad.sort();
    Ok(BatchReport {
        checked: points.len() as u64,
        counterexamples: bad,
    })
}

/// Level of `x ∈ Par_{s*}` against `des_s` over `Ψₙ×⟨0⟩`; with `s_n = 1` also `Par_s` itself.
fn verify_grading(s: &Seq, limits: &Limits, report: &mut Report) -> Result<BatchReport> {
    let mut bad = Vec::new();
    let starred = grade_par(&s.star(), limits)?;
    let by_des = des_count_distribution(s, StatMode::SDes, true, limits)?;
    report.set("grading_starred", string_array(&starred));
    report.set("descents_starred", string_array(&by_des));
    level_mismatches(&starred, &by_des, &mut bad);
    let mut checked = 1;
    if s.last() == 1 {
        let plain = grade_par(s, limits)?;
        report.set("grading", string_array(&plain));
        level_mismatches(&plain, &starred, &mut bad);
        checked += 1;
    }
    bad.sort();
    Ok(BatchReport {
        checked,
        counterexamples: bad,
    })
}

/// Pushes `[level, a, b]` for every level where the two histograms differ.
fn level_mismatches(a: &[u64], b: &[u64], bad: &mut Vec<Vec<i64>>) {
    for i in 0..a.len().max(b.len()) {
        let (x, y) = (
            a.get(i).copied().unwrap_or(0),
            b.get(i).copied().unwrap_or(0),
        );
        if x != y {
            bad.push(vec![i as i64, x as i64, y as i64]);
        }
    }
}

fn verify_s1(s: &Seq, limits: &Limits) -> Result<BatchReport> {
    if s.first() != 1 {
        return Err(Error::RequiresFirstEntryOne { first: s.first() }.into());
    }
    let words = check_s1_identity_all(s, limits)?;
    let mut bad = Vec::new();
    let star = s.star();
    let points = enumerate_par(&star, limits)?.points();
    for x in &points {
        let z = rem_bar(&star, x)?.drop_last()?;
        if StatReport::weighted(s, z.digits())?.asc as i64 != x.level() {
            bad.push(x.coords().to_vec());
        }
    }
    let asc = delta_via_ascents(s, limits)?;
    if asc.entries() != delta_via_parallelepiped(s, limits)?.entries() {
        bad.push(
            asc.entries()
                .iter()
                .map(|e| i64::try_from(e).unwrap_or(i64::MAX))
                .collect(),
        );
    }
    Ok(merge(
        words,
        BatchReport {
            checked: points.len() as u64,
            counterexamples: bad,
        },
    ))
}

fn verify_volume(s: &Seq, limits: &Limits, report: &mut Report) -> Result<BatchReport> {
    let product = s.product();
    report.set("volume", num(&product));
    let mut routes = vec![
        delta_via_parallelepiped(s, limits)?,
        delta_via_descents(s, limits)?,
    ];
    if s.first() == 1 {
        routes.push(delta_via_ascents(s, limits)?);
    }
    let mut bad = Vec::new();
    for (i, d) in routes.iter().enumerate() {
        if d.sum() != product || d.entries()[0] != BigUint::from(1u8) {
            bad.push(vec![i as i64 + 1]);
        }
    }
    report.delta = Some(strs(routes[0].entries()));
    Ok(BatchReport {
        checked: routes.len() as u64,
        counterexamples: bad,
    })
}

/// `δ(s) = δ(reverse s)`, witnessed pointwise by `x ↦ reverse(t·s − x)` for `t ≤ max_t`.
fn verify_reversal_delta(
    s: &Seq,
    max_t: u64,
    limits: &Limits,
    report: &mut Report,
) -> Result<BatchReport> {
    let u = s.reverse();
    let d = delta_via_descents(s, limits)?;
    let du = delta_via_descents(&u, limits)?;
    report.delta = Some(strs(d.entries()));
    report.set("delta_reversed", string_array(du.entries()));
    report.set("t", num(max_t));
    let mut bad = Vec::new();
    if d.entries() != du.entries() {
        bad.push(
            d.entries()
                .iter()
                .map(|e| i64::try_from(e).unwrap_or(i64::MAX))
                .collect(),
        );
    }
    let mut checked = 1;
    for t in 0..=max_t {
        let src = dilation_points(s, t, limits)?;
        let mut img = src
            .iter()
            .map(|x| reversal_point_map(s, t, x))
            .collect::<lhall_core::Result<Vec<_>>>()?;
        img.sort();
        img.dedup();
        let tgt = dilation_points(&u, t, limits)?;
        checked += src.len() as u64;
        if img != tgt {
            bad.push(vec![t as i64]);
        }
    }
    Ok(BatchReport {
        checked,
        counterexamples: bad,
    })
}
