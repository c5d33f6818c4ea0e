//! Job payloads and dispatch. The CLI and the HTTP server both go through
//! [`run_job`], so they emit the same bytes for the same request.

use std::fmt;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use quivercat::builtin::{builtin_seed, dynkin};
use quivercat::derived::{AutoWord, DerivedCategory};
use quivercat::orbit::{
    build_orbit_model, cluster_category, cy_check, endo_quiver, enumerate_cluster_tilting, is_cluster_tilting,
    kronecker_rigidity_survey, mesh_hom, negative_ext_check, recognize_cluster_category, OrbitModel, RecognitionInput,
    TiltingCandidate, DEFAULT_ENUMERATION_CAP,
};
use quivercat::{find_acyclic, mutation_class, Error, Quiver, SearchLimits};

use crate::models;

pub const SCHEMA: &str = "v1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JobError {
    /// Malformed or unsatisfiable request.
    Validation(String),
    /// Unknown named model.
    NotFound(String),
    /// A computed identity failed; never valid output.
    Internal(String),
}

impl JobError {
    pub fn kind(&self) -> &'static str {
        match self {
            JobError::Validation(_) => "validation",
            JobError::NotFound(_) => "not-found",
            JobError::Internal(_) => "internal",
        }
    }

    pub fn message(&self) -> &str {
        match self {
            JobError::Validation(m) | JobError::NotFound(m) | JobError::Internal(m) => m,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "schema": SCHEMA, "error": self.kind(), "message": self.message() })
    }
}

impl fmt::Display for JobError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind(), self.message())
    }
}

impl std::error::Error for JobError {}

impl From<Error> for JobError {
    fn from(e: Error) -> Self {
        match e {
            Error::Inconsistent(_) | Error::MeshNotStabilizing(_) => JobError::Internal(e.to_string()),
            _ => JobError::Validation(e.to_string()),
        }
    }
}

pub type JobResult<T> = Result<T, JobError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum JobKind {
    Mutate,
    MutationClass,
    FindAcyclic,
    BuildModel,
    CyCheck,
    ClusterTilting,
    NegativeExt,
    EndoQuiver,
    Recognize,
    KroneckerSurvey,
    ArWindow,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobRequest {
    #[serde(default)]
    pub schema: Option<String>,
    pub kind: JobKind,
    pub payload: Value,
}

/// A quiver given inline or by name: `builtin:a5-preprojective`, `a6-alternating`, `d4`, ...
#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum QuiverSource {
    Inline(Quiver),
    Named(String),
}

impl<'de> Deserialize<'de> for QuiverSource {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        match Value::deserialize(de)? {
            Value::String(s) => Ok(QuiverSource::Named(s)),
            v @ Value::Object(_) => serde_json::from_value(v)
                .map(QuiverSource::Inline)
                .map_err(D::Error::custom),
            _ => Err(D::Error::custom("a quiver is an object or a builtin name")),
        }
    }
}

impl QuiverSource {
    pub fn resolve(&self) -> JobResult<Quiver> {
        match self {
            QuiverSource::Inline(q) => Ok(q.clone()),
            QuiverSource::Named(name) => named_quiver(name),
        }
    }
}

pub fn named_quiver(name: &str) -> JobResult<Quiver> {
    let bare = name.strip_prefix("builtin:").unwrap_or(name);
    if let Ok(q) = builtin_seed(bare) {
        return Ok(q);
    }
    let mut chars = bare.chars();
    let kind = chars.next();
    let rank = chars.as_str().parse::<usize>().ok();
    match (kind, rank) {
        (Some(k @ ('a' | 'd' | 'e')), Some(n)) if n <= 12 => dynkin(k, n).map_err(JobError::from),
        _ => Err(JobError::Validation(format!("unknown quiver {name:?}"))),
    }
}

/// A model by name, as a d-cluster category of a quiver, or as `D / F` for an explicit `F`.
#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum ModelSpec {
    Named(String),
    Cluster { quiver: QuiverSource, d: i64 },
    Orbit { quiver: QuiverSource, auto: AutoWord },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFields {
    name: Option<String>,
    quiver: Option<QuiverSource>,
    d: Option<i64>,
    auto: Option<AutoWord>,
}

impl<'de> Deserialize<'de> for ModelSpec {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let fields = match Value::deserialize(de)? {
            Value::String(s) => return Ok(ModelSpec::Named(s)),
            v @ Value::Object(_) => serde_json::from_value::<ModelFields>(v).map_err(D::Error::custom)?,
            _ => return Err(D::Error::custom("a model is a name or an object")),
        };
        match fields {
            ModelFields {
                name: Some(n),
                quiver: None,
                d: None,
                auto: None,
            } => Ok(ModelSpec::Named(n)),
            ModelFields {
                name: None,
                quiver: Some(quiver),
                d: Some(d),
                auto: None,
            } => Ok(ModelSpec::Cluster { quiver, d }),
            ModelFields {
                name: None,
                quiver: Some(quiver),
                d: None,
                auto: Some(auto),
            } => Ok(ModelSpec::Orbit { quiver, auto }),
            _ => Err(D::Error::custom(
                "a model needs exactly one of `name`, `quiver` + `d`, `quiver` + `auto`",
            )),
        }
    }
}

impl ModelSpec {
    pub fn resolve(&self) -> JobResult<Arc<OrbitModel>> {
        match self {
            ModelSpec::Named(name) => models::named_model(name),
            ModelSpec::Cluster { quiver, d } => Ok(Arc::new(cluster_category(&quiver.resolve()?, *d)?)),
            ModelSpec::Orbit { quiver, auto } => Ok(Arc::new(build_orbit_model(&quiver.resolve()?, *auto)?)),
        }
    }
}

/// Summand by index into the model's objects or by object name.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ObjectRef {
    Index(usize),
    Name(String),
}

fn resolve_summands(m: &OrbitModel, refs: &[ObjectRef]) -> JobResult<Vec<usize>> {
    refs.iter()
        .map(|r| match r {
            ObjectRef::Index(i) if *i < m.len() => Ok(*i),
            ObjectRef::Index(i) => Err(JobError::Validation(format!(
                "object {i} does not belong to this model"
            ))),
            ObjectRef::Name(n) => m
                .names()
                .iter()
                .position(|x| x == n)
                .ok_or_else(|| JobError::Validation(format!("no object named {n:?}"))),
        })
        .collect()
}

/// `summands` defaulting to the projective slice `pi H`.
fn summands_or_projectives(m: &OrbitModel, refs: &Option<Vec<ObjectRef>>) -> JobResult<Vec<usize>> {
    match refs {
        Some(r) => resolve_summands(m, r),
        None => Ok((0..m.quiver().len()).map(|v| m.projective(v)).collect()),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MutatePayload {
    pub quiver: QuiverSource,
    pub vertex: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchPayload {
    pub quiver: QuiverSource,
    pub max_depth: Option<usize>,
    pub max_nodes: Option<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CyPayload {
    pub model: ModelSpec,
    pub d: i64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClusterTiltingPayload {
    pub model: ModelSpec,
    pub d: i64,
    /// Omit to enumerate every cluster-tilting object.
    pub summands: Option<Vec<ObjectRef>>,
    pub cap: Option<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SummandsPayload {
    pub model: ModelSpec,
    pub d: i64,
    /// Defaults to the projectives.
    pub summands: Option<Vec<ObjectRef>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KroneckerPayload {
    pub depth: i64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArWindowPayload {
    pub quiver: QuiverSource,
    pub slices: usize,
}

fn parse<T: DeserializeOwned>(payload: Value) -> JobResult<T> {
    serde_json::from_value(payload).map_err(|e| JobError::Validation(format!("invalid payload: {e}")))
}

/// `value` with a `"schema": "v1"` field.
fn stamped<T: Serialize>(value: &T) -> JobResult<Value> {
    let v = serde_json::to_value(value).map_err(|e| JobError::Internal(e.to_string()))?;
    Ok(match v {
        Value::Object(fields) if !fields.contains_key("schema") => {
            let mut out = Map::new();
            out.insert("schema".into(), Value::String(SCHEMA.into()));
            out.extend(fields);
            Value::Object(out)
        }
        other => other,
    })
}

fn limits(max_depth: Option<usize>, max_nodes: Option<usize>) -> JobResult<SearchLimits> {
    let d = SearchLimits::default();
    Ok(SearchLimits::new(
        max_depth.unwrap_or(d.max_depth),
        max_nodes.unwrap_or(d.max_nodes),
    )?)
}

pub fn mutate(p: MutatePayload) -> JobResult<Value> {
    let q = p.quiver.resolve()?.mutate(p.vertex)?;
    stamped(&json!({
        "quiver": q,
        "admissible": q.validate().is_admissible(),
        "acyclic": q.is_acyclic(),
    }))
}

pub fn mutation_class_job(p: SearchPayload) -> JobResult<Value> {
    let class = mutation_class(&p.quiver.resolve()?, limits(p.max_depth, p.max_nodes)?)?;
    let acyclic = class.nodes.iter().filter(|n| n.canonical.quiver.is_acyclic()).count();
    stamped(&json!({
        "class_size": class.len(),
        "truncated": class.truncated,
        "acyclic_members": acyclic,
        "limits": class.limits,
        "members": class.nodes.iter().map(|n| json!({
            "quiver": n.canonical.quiver,
            "word": n.word,
        })).collect::<Vec<_>>(),
    }))
}

pub fn find_acyclic_job(p: SearchPayload) -> JobResult<Value> {
    let report = find_acyclic(&p.quiver.resolve()?, limits(p.max_depth, p.max_nodes)?)?;
    stamped(&report)
}

pub fn build_model(spec: &ModelSpec) -> JobResult<Value> {
    stamped(&spec.resolve()?.dump())
}

pub fn cy_check_job(p: CyPayload) -> JobResult<Value> {
    let m = p.model.resolve()?;
    stamped(&cy_check(m.as_ref(), p.d))
}

pub fn cluster_tilting_job(p: ClusterTiltingPayload) -> JobResult<Value> {
    let m = p.model.resolve()?;
    match &p.summands {
        Some(refs) => {
            let cand = TiltingCandidate::new(resolve_summands(&m, refs)?, p.d);
            let report = is_cluster_tilting(m.as_ref(), &cand)?;
            let mut v = stamped(&report)?;
            v["summands"] = json!(cand.summands);
            Ok(v)
        }
        None => {
            let found = enumerate_cluster_tilting(m.as_ref(), p.d, p.cap.unwrap_or(DEFAULT_ENUMERATION_CAP))?;
            stamped(&json!({
                "d": p.d,
                "count": found.len(),
                "candidates": found.iter().map(|c| json!({
                    "summands": c.summands,
                    "names": c.summands.iter().map(|&s| &m.names()[s]).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
            }))
        }
    }
}

pub fn negative_ext_job(p: SummandsPayload) -> JobResult<Value> {
    let m = p.model.resolve()?;
    let cand = TiltingCandidate::new(summands_or_projectives(&m, &p.summands)?, p.d);
    stamped(&negative_ext_check(m.as_ref(), &cand)?)
}

pub fn endo_quiver_job(p: SummandsPayload) -> JobResult<Value> {
    let m = p.model.resolve()?;
    let cand = TiltingCandidate::new(summands_or_projectives(&m, &p.summands)?, p.d);
    let mesh = mesh_hom(&m)?;
    if mesh.hom != m.hom_table() {
        return Err(JobError::Internal("mesh category disagrees with orbit sums".into()));
    }
    stamped(&endo_quiver(&m, &mesh, &cand)?)
}

pub fn recognize_job(input: RecognitionInput) -> JobResult<Value> {
    if let Some(s) = &input.schema {
        check_schema(s)?;
    }
    stamped(&recognize_cluster_category(&input)?)
}

pub fn kronecker_job(p: KroneckerPayload) -> JobResult<Value> {
    stamped(&kronecker_rigidity_survey(p.depth)?)
}

pub fn ar_window_job(p: ArWindowPayload) -> JobResult<Value> {
    let d = DerivedCategory::new(&p.quiver.resolve()?)?;
    let w = d.ar_window(p.slices)?;
    stamped(&json!({ "window": w, "dot": w.to_dot("ar_window") }))
}

fn check_schema(s: &str) -> JobResult<()> {
    if s == SCHEMA {
        Ok(())
    } else {
        Err(JobError::Validation(format!(
            "unsupported schema {s:?}, expected {SCHEMA:?}"
        )))
    }
}

pub fn run(kind: JobKind, payload: Value) -> JobResult<Value> {
    match kind {
        JobKind::Mutate => mutate(parse(payload)?),
        JobKind::MutationClass => mutation_class_job(parse(payload)?),
        JobKind::FindAcyclic => find_acyclic_job(parse(payload)?),
        JobKind::BuildModel => build_model(&parse(payload)?),
        JobKind::CyCheck => cy_check_job(parse(payload)?),
        JobKind::ClusterTilting => cluster_tilting_job(parse(payload)?),
        JobKind::NegativeExt => negative_ext_job(parse(payload)?),
        JobKind::EndoQuiver => endo_quiver_job(parse(payload)?),
        JobKind::Recognize => recognize_job(parse(payload)?),
        JobKind::KroneckerSurvey => kronecker_job(parse(payload)?),
        JobKind::ArWindow => ar_window_job(parse(payload)?),
    }
}

pub fn run_job(req: JobRequest) -> JobResult<Value> {
    if let Some(s) = &req.schema {
        check_schema(s)?;
    }
    run(req.kind, req.payload)
}

/// The wire form shared by the CLI and the server.
pub fn render(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("values always serialize");
    s.push('\n');
    s
}
