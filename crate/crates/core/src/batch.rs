//! Structured requests and reports for batch runs.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::fmt::Write;
use std::sync::Arc;
use std::time::Instant;

use crate::dims::{factorized_with_tolerance, general_unrounded, CurveRequest, DimensionResult, FusionResult, VerlindeData, DEFAULT_TOLERANCE};
use crate::error::{Error, Result, SchemaViolation};
use crate::kacwalton::kac_walton_dimension;
use crate::lie::{build_root_datum, LieType, Weight};
use crate::twist::{TwistData, TwistKind};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Computation {
    Classical,
    ThreePoint,
    FusionTable,
    General,
    Factorized,
    Crosscheck,
}

impl Computation {
    const ALL: [(&'static str, Computation); 6] = [
        ("classical", Computation::Classical),
        ("three_point", Computation::ThreePoint),
        ("fusion_table", Computation::FusionTable),
        ("general", Computation::General),
        ("factorized", Computation::Factorized),
        ("crosscheck", Computation::Crosscheck),
    ];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Table,
    Structured,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraSpec {
    #[serde(rename = "type")]
    pub lie_type: LieType,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwistSpec {
    pub kind: String,
    pub order: u32,
}

/// Weights attached to the request. `fixed` slots live on the fixed
/// subalgebra, `ambient` slots on the ambient algebra.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct WeightSlots {
    #[serde(default)]
    pub fixed: Vec<Weight>,
    #[serde(default)]
    pub ambient: Vec<Weight>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Options {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threads: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    #[serde(default)]
    pub timing: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Request {
    pub version: u32,
    pub algebra: AlgebraSpec,
    pub twist: TwistSpec,
    pub level: u32,
    pub computation: Computation,
    #[serde(default)]
    pub weights: WeightSlots,
    #[serde(default)]
    pub genus_bar: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairs: Option<u32>,
    #[serde(default)]
    pub options: Options,
}

impl Request {
    pub fn tolerance(&self) -> f64 {
        self.options.tolerance.unwrap_or(DEFAULT_TOLERANCE)
    }

    pub fn twist_kind(&self) -> TwistKind {
        TwistKind::from_parts(&self.twist.kind, self.twist.order).expect("validated on parse")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub inputs: WeightSlots,
    /// Signed because fusion coefficients can be negative.
    pub value: Option<i64>,
    pub residual: Option<f64>,
    /// Second pipeline's value, in crosscheck mode.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub check_value: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub agreement: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: u32,
    pub request: Request,
    pub pipelines: Vec<String>,
    pub results: Vec<ResultRow>,
    pub diagnostics: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

impl Report {
    /// True iff every row has a value within tolerance and no crosscheck
    /// disagreed.
    pub fn is_success(&self) -> bool {
        let tol = self.request.tolerance();
        self.results.iter().all(|r| {
            r.error.is_none()
                && r.value.is_some()
                && r.residual.is_none_or(|x| x <= tol)
                && r.agreement != Some(false)
        })
    }
}

struct Parser {
    violations: Vec<SchemaViolation>,
}

impl Parser {
    fn bad(&mut self, path: &str, message: impl Into<String>) {
        self.violations.push(SchemaViolation {
            path: path.to_string(),
            message: message.into(),
        });
    }

    fn uint(&mut self, v: Option<&Value>, path: &str, required: bool) -> Option<u64> {
        match v {
            None if required => {
                self.bad(path, "missing required field");
                None
            }
            None => None,
            Some(x) => match x.as_u64() {
                Some(n) => Some(n),
                None => {
                    self.bad(path, "expected a non-negative integer");
                    None
                }
            },
        }
    }

    fn weights(&mut self, v: Option<&Value>, path: &str) -> Vec<Weight> {
        let Some(v) = v else { return Vec::new() };
        let Some(arr) = v.as_array() else {
            self.bad(path, "expected an array of integer vectors");
            return Vec::new();
        };
        let mut out = Vec::new();
        for (i, w) in arr.iter().enumerate() {
            let p = format!("{path}[{i}]");
            match w.as_array() {
                Some(coords) => {
                    let mut ok = true;
                    let mut cs = Vec::new();
                    for (j, c) in coords.iter().enumerate() {
                        match c.as_i64().and_then(|x| i32::try_from(x).ok()) {
                            Some(x) => cs.push(x),
                            None => {
                                self.bad(&format!("{p}[{j}]"), "expected an integer");
                                ok = false;
                            }
                        }
                    }
                    if ok {
                        out.push(Weight(cs));
                    }
                }
                None => self.bad(&p, "expected an integer vector"),
            }
        }
        out
    }

    fn unknown_keys(&mut self, obj: &serde_json::Map<String, Value>, allowed: &[&str], prefix: &str) {
        for k in obj.keys() {
            if !allowed.contains(&k.as_str()) {
                let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                self.bad(&p, "unknown field");
            }
        }
    }
}

/// Parses and validates a request, reporting every violated constraint.
pub fn parse_request(text: &str) -> Result<Request> {
    let root: Value = serde_json::from_str(text).map_err(|e| {
        Error::Schema(vec![SchemaViolation {
            path: String::new(),
            message: format!("not valid JSON: {e}"),
        }])
    })?;
    let Some(obj) = root.as_object() else {
        return Err(Error::Schema(vec![SchemaViolation {
            path: String::new(),
            message: "expected an object".into(),
        }]));
    };
    let mut p = Parser { violations: Vec::new() };
    p.unknown_keys(
        obj,
        &["version", "algebra", "twist", "level", "computation", "weights", "genus_bar", "pairs", "options"],
        "",
    );

    if let Some(version) = p.uint(obj.get("version"), "version", true) {
        if version != SCHEMA_VERSION as u64 {
            p.bad("version", format!("unsupported version {version}, expected {SCHEMA_VERSION}"));
        }
    }

    let mut lie_type = None;
    let mut rank = None;
    match obj.get("algebra").and_then(Value::as_object) {
        None => p.bad("algebra", "missing required object"),
        Some(a) => {
            p.unknown_keys(a, &["type", "rank"], "algebra");
            match a.get("type").and_then(Value::as_str) {
                Some(s) => match s.parse::<LieType>() {
                    Ok(t) => lie_type = Some(t),
                    Err(_) => p.bad("algebra.type", format!("unknown type {s:?}")),
                },
                None => p.bad("algebra.type", "expected a string"),
            }
            rank = p.uint(a.get("rank"), "algebra.rank", true);
            if rank == Some(0) {
                p.bad("algebra.rank", "must be positive");
            }
        }
    }

    let mut twist = None;
    match obj.get("twist").and_then(Value::as_object) {
        None => p.bad("twist", "missing required object"),
        Some(t) => {
            p.unknown_keys(t, &["kind", "order"], "twist");
            let kind = t.get("kind").and_then(Value::as_str);
            if kind.is_none() {
                p.bad("twist.kind", "expected a string");
            }
            let order = match t.get("order") {
                None => kind.map(|k| match k {
                    "identity" => 1,
                    "diagram3" => 3,
                    "standard4" | "standard" => 4,
                    _ => 2,
                }),
                Some(_) => p.uint(t.get("order"), "twist.order", true),
            };
            if let (Some(k), Some(o)) = (kind, order) {
                if TwistKind::from_parts(k, o as u32).is_none() {
                    p.bad("twist", format!("no twist of kind {k:?} with order {o}"));
                } else {
                    twist = Some(TwistSpec {
                        kind: k.to_string(),
                        order: o as u32,
                    });
                }
            }
        }
    }

    let level = p.uint(obj.get("level"), "level", true);
    if level == Some(0) {
        p.bad("level", "must be at least 1");
    }

    let computation = match obj.get("computation").and_then(Value::as_str) {
        Some(s) => match Computation::ALL.iter().find(|(n, _)| *n == s) {
            Some((_, c)) => Some(*c),
            None => {
                p.bad("computation", format!("unknown computation {s:?}"));
                None
            }
        },
        None => {
            p.bad("computation", "missing required string");
            None
        }
    };

    let mut weights = WeightSlots::default();
    if let Some(w) = obj.get("weights") {
        match w.as_object() {
            Some(wo) => {
                p.unknown_keys(wo, &["fixed", "ambient"], "weights");
                weights.fixed = p.weights(wo.get("fixed"), "weights.fixed");
                weights.ambient = p.weights(wo.get("ambient"), "weights.ambient");
            }
            None => p.bad("weights", "expected an object"),
        }
    }

    let genus_bar = p.uint(obj.get("genus_bar"), "genus_bar", false).unwrap_or(0);
    let pairs = p.uint(obj.get("pairs"), "pairs", false);

    let mut options = Options::default();
    if let Some(o) = obj.get("options") {
        match o.as_object() {
            Some(oo) => {
                p.unknown_keys(oo, &["tolerance", "threads", "format", "timing"], "options");
                if let Some(t) = oo.get("tolerance") {
                    match t.as_f64() {
                        Some(x) if x > 0.0 => options.tolerance = Some(x),
                        _ => p.bad("options.tolerance", "expected a positive number"),
                    }
                }
                if let Some(n) = p.uint(oo.get("threads"), "options.threads", false) {
                    if n == 0 {
                        p.bad("options.threads", "must be positive");
                    }
                    options.threads = Some(n as usize);
                }
                match oo.get("format").map(|f| f.as_str()) {
                    None => {}
                    Some(Some("table")) => options.format = Some(Format::Table),
                    Some(Some("structured")) => options.format = Some(Format::Structured),
                    Some(_) => p.bad("options.format", "expected \"table\" or \"structured\""),
                }
                if let Some(t) = oo.get("timing") {
                    match t.as_bool() {
                        Some(b) => options.timing = b,
                        None => p.bad("options.timing", "expected a boolean"),
                    }
                }
            }
            None => p.bad("options", "expected an object"),
        }
    }

    if !p.violations.is_empty() {
        return Err(Error::Schema(p.violations));
    }
    let (lie_type, rank, twist, level, computation) = (
        lie_type.unwrap(),
        rank.unwrap() as usize,
        twist.unwrap(),
        level.unwrap() as u32,
        computation.unwrap(),
    );

    // Semantic checks that need the algebra.
    let tw = resolve_twist(lie_type, rank, &twist)?;
    let fixed_rank = tw.fixed().rank();
    for (i, w) in weights.fixed.iter().enumerate() {
        if w.rank() != fixed_rank {
            p.bad(
                &format!("weights.fixed[{i}]"),
                format!("expected {fixed_rank} coordinates of {}, got {}", tw.fixed().name(), w.rank()),
            );
        }
    }
    for (i, w) in weights.ambient.iter().enumerate() {
        if w.rank() != rank {
            p.bad(
                &format!("weights.ambient[{i}]"),
                format!("expected {rank} coordinates of {lie_type}{rank}, got {}", w.rank()),
            );
        }
    }
    match computation {
        Computation::ThreePoint | Computation::Crosscheck => {
            let (f, a) = (weights.fixed.len(), weights.ambient.len());
            if !((f == 0 && a == 0) || (f == 2 && a == 1)) {
                p.bad("weights", "expected fixed [lambda, mu] and ambient [nu], or no weights");
            }
        }
        Computation::FusionTable => {
            if !(weights.fixed.is_empty() || weights.fixed.len() == 3) || !weights.ambient.is_empty() {
                p.bad("weights", "expected fixed [lambda, mu, eta] or no weights");
            }
        }
        Computation::Classical => {
            if !weights.fixed.is_empty() {
                p.bad("weights.fixed", "classical requests take ambient weights only");
            }
        }
        Computation::General | Computation::Factorized => {
            if weights.fixed.len() % 2 != 0 {
                p.bad("weights.fixed", "ramified weights come in pairs");
            }
            if let Some(a) = pairs {
                if a as usize * 2 != weights.fixed.len() {
                    p.bad("pairs", format!("{a} pairs but {} fixed weights", weights.fixed.len()));
                }
            }
        }
    }
    if !p.violations.is_empty() {
        return Err(Error::Schema(p.violations));
    }
    Ok(Request {
        version: SCHEMA_VERSION,
        algebra: AlgebraSpec { lie_type, rank },
        twist,
        level,
        computation,
        weights,
        genus_bar: genus_bar as u32,
        pairs: pairs.map(|a| a as u32),
        options,
    })
}

fn resolve_twist(lie_type: LieType, rank: usize, spec: &TwistSpec) -> Result<Arc<TwistData>> {
    let amb = build_root_datum(lie_type, rank)?;
    let kind = TwistKind::from_parts(&spec.kind, spec.order).ok_or_else(|| {
        Error::UnsupportedCombination(format!("twist {} of order {}", spec.kind, spec.order))
    })?;
    // Only the order-4 automorphism of A_2n is standard; a "standard" of
    // order 2 on A_2n is not.
    if spec.kind == "standard" && lie_type == LieType::A && rank % 2 == 0 && kind == TwistKind::Diagram2 {
        return Err(Error::UnsupportedCombination(format!(
            "the order-2 automorphism of {lie_type}{rank} is not standard"
        )));
    }
    TwistData::new(amb, kind).map(Arc::new).map_err(|e| match e {
        Error::IllegalPair { lie_type, kind } => {
            Error::UnsupportedCombination(format!("twist {kind} is not defined on {lie_type}"))
        }
        other => other,
    })
}

fn row(inputs: WeightSlots) -> ResultRow {
    ResultRow {
        inputs,
        value: None,
        residual: None,
        check_value: None,
        agreement: None,
        error: None,
    }
}

fn fill(r: ResultRow, res: Result<DimensionResult>) -> ResultRow {
    fill_signed(r, res.map(|d| (d.value as i64, d.residual)))
}

fn fill_signed(mut r: ResultRow, res: Result<(i64, f64)>) -> ResultRow {
    match res {
        Ok((value, residual)) => {
            r.value = Some(value);
            r.residual = Some(residual);
        }
        Err(e) => r.error = Some(e.to_string()),
    }
    r
}

/// Runs a validated request. Per-row failures are recorded in the report.
pub fn run_request(req: &Request) -> Result<Report> {
    let threads = req.options.threads.unwrap_or(0);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::UnsupportedCombination(format!("thread pool: {e}")))?;
    pool.install(|| run_inner(req))
}

fn run_inner(req: &Request) -> Result<Report> {
    // Clocks are unavailable on some targets, so only read one on request.
    let start = req.options.timing.then(Instant::now);
    let tw = resolve_twist(req.algebra.lie_type, req.algebra.rank, &req.twist)?;
    let c = req.level;
    let tol = req.tolerance();
    let mut results = Vec::new();
    let mut diagnostics = Vec::new();
    let pipelines: Vec<String>;
    match req.computation {
        Computation::Classical => {
            pipelines = vec!["verlinde".into()];
            let amb = tw.ambient().clone();
            let id = Arc::new(TwistData::new(amb, TwistKind::Identity)?);
            let creq = CurveRequest {
                twist: id,
                level: c,
                genus_bar: req.genus_bar,
                lambda_dagger: vec![],
                mu: req.weights.ambient.clone(),
            };
            let res = if req.genus_bar == 0 && creq.mu.len() < 3 {
                Err(Error::UnstableInput(format!(
                    "genus 0 needs at least 3 weights, got {}",
                    creq.mu.len()
                )))
            } else {
                general_unrounded(&creq).and_then(|raw| DimensionResult::from_raw(raw, "classical Verlinde", tol))
            };
            results.push(fill(row(req.weights.clone()), res));
        }
        Computation::ThreePoint | Computation::Crosscheck => {
            let data = VerlindeData::get(&tw, c);
            let triples: Vec<(Weight, Weight, Weight)> = if req.weights.fixed.is_empty() {
                let d = &data.alphabet().members;
                let dc = &data.ambient_alphabet().members;
                d.iter()
                    .flat_map(|l| d.iter().flat_map(move |m| dc.iter().map(move |n| (l.clone(), m.clone(), n.clone()))))
                    .collect()
            } else {
                vec![(req.weights.fixed[0].clone(), req.weights.fixed[1].clone(), req.weights.ambient[0].clone())]
            };
            let cross = req.computation == Computation::Crosscheck;
            pipelines = if cross {
                vec!["verlinde".into(), "kac_walton".into()]
            } else {
                vec!["verlinde".into()]
            };
            if cross && tw.is_a2n_diagram() {
                return Err(Error::UnsupportedCombination(format!(
                    "crosscheck needs the alternating sum, which is not available for {} with {}",
                    tw.ambient().name(),
                    tw.kind()
                )));
            }
            for (l, m, n) in triples {
                let inputs = WeightSlots {
                    fixed: vec![l.clone(), m.clone()],
                    ambient: vec![n.clone()],
                };
                let res = data
                    .three_point_unrounded(&l, &m, &n)
                    .and_then(|raw| DimensionResult::from_raw(raw, "three-point", tol));
                let mut r = fill(row(inputs), res);
                if cross {
                    match kac_walton_dimension(&tw, c, &l, &m, &n) {
                        Ok((kw, _)) => {
                            r.check_value = Some(kw as i64);
                            r.agreement = Some(r.value == Some(kw as i64));
                        }
                        Err(e) => {
                            r.agreement = Some(false);
                            r.error.get_or_insert(e.to_string());
                        }
                    }
                }
                results.push(r);
            }
        }
        Computation::FusionTable => {
            pipelines = vec!["verlinde".into()];
            let data = VerlindeData::get(&tw, c);
            let triples: Vec<[Weight; 3]> = if req.weights.fixed.is_empty() {
                let d = &data.alphabet().members;
                d.iter()
                    .flat_map(|l| d.iter().flat_map(move |m| d.iter().map(move |e| [l.clone(), m.clone(), e.clone()])))
                    .collect()
            } else {
                vec![[req.weights.fixed[0].clone(), req.weights.fixed[1].clone(), req.weights.fixed[2].clone()]]
            };
            for [l, m, e] in triples {
                let res = data
                    .fusion_unrounded(&l, &m, &e)
                    .and_then(|raw| FusionResult::from_raw(raw, "fusion coefficient", tol))
                    .map(|f| (f.value, f.residual));
                let inputs = WeightSlots {
                    fixed: vec![l, m, e],
                    ambient: vec![],
                };
                results.push(fill_signed(row(inputs), res));
            }
        }
        Computation::General | Computation::Factorized => {
            let creq = CurveRequest {
                twist: tw.clone(),
                level: c,
                genus_bar: req.genus_bar,
                lambda_dagger: req.weights.fixed.clone(),
                mu: req.weights.ambient.clone(),
            };
            let res = if req.computation == Computation::General {
                pipelines = vec!["verlinde".into()];
                general_unrounded(&creq).and_then(|raw| DimensionResult::from_raw(raw, "general formula", tol))
            } else {
                pipelines = vec!["factorization".into()];
                factorized_with_tolerance(&creq, tol)
            };
            results.push(fill(row(req.weights.clone()), res));
        }
    }
    for r in &results {
        if let Some(e) = &r.error {
            diagnostics.push(format!("{}: {e}", describe_inputs(&r.inputs)));
        } else if r.agreement == Some(false) {
            diagnostics.push(format!(
                "{}: pipelines disagree ({:?} vs {:?})",
                describe_inputs(&r.inputs),
                r.value,
                r.check_value
            ));
        }
    }
    let timing = start.map(|s| Timing {
        elapsed_ms: s.elapsed().as_secs_f64() * 1e3,
    });
    Ok(Report {
        version: SCHEMA_VERSION,
        request: req.clone(),
        pipelines,
        results,
        diagnostics,
        timing,
    })
}

fn describe_inputs(w: &WeightSlots) -> String {
    let f: Vec<String> = w.fixed.iter().map(|x| x.to_string()).collect();
    let a: Vec<String> = w.ambient.iter().map(|x| x.to_string()).collect();
    format!("fixed [{}] ambient [{}]", f.join(" "), a.join(" "))
}

/// Renders a report as an aligned table or as JSON.
pub fn emit_report(rep: &Report, format: Format) -> String {
    match format {
        Format::Structured => serde_json::to_string_pretty(rep).expect("report serializes") + "\n",
        Format::Table => {
            let headers = ["fixed", "ambient", "value", "residual", "check", "agree"];
            let cells: Vec<[String; 6]> = rep
                .results
                .iter()
                .map(|r| {
                    let join = |ws: &[Weight]| ws.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(" ");
                    [
                        join(&r.inputs.fixed),
                        join(&r.inputs.ambient),
                        r.value.map_or_else(|| "-".into(), |v| v.to_string()),
                        r.residual.map_or_else(|| "-".into(), |v| format!("{v:.1e}")),
                        r.check_value.map_or_else(String::new, |v| v.to_string()),
                        r.agreement.map_or_else(String::new, |a| if a { "yes".into() } else { "NO".into() }),
                    ]
                })
                .collect();
            let mut width: Vec<usize> = headers.iter().map(|h| h.len()).collect();
            for row in &cells {
                for (w, c) in width.iter_mut().zip(row) {
                    *w = (*w).max(c.len());
                }
            }
            let mut out = String::new();
            let line = |out: &mut String, row: &[String]| {
                let parts: Vec<String> = row.iter().zip(&width).map(|(c, w)| format!("{c:<w$}")).collect();
                writeln!(out, "{}", parts.join("  ").trim_end()).unwrap();
            };
            line(&mut out, &headers.map(String::from));
            for row in &cells {
                line(&mut out, row);
            }
            for d in &rep.diagnostics {
                writeln!(out, "# {d}").unwrap();
            }
            out
        }
    }
}

/// Reads back a report emitted in the structured format.
pub fn parse_report(text: &str) -> Result<Report> {
    serde_json::from_str(text).map_err(|e| {
        Error::Schema(vec![SchemaViolation {
            path: String::new(),
            message: e.to_string(),
        }])
    })
}
