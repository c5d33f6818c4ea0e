//! Named models, built once per process.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use quivercat::builtin::{a_alternating, dynkin};
use quivercat::derived::AutoWord;
use quivercat::orbit::{build_orbit_model, cluster_category, OrbitModel};

use crate::jobs::{JobError, JobResult};

type Slot = Arc<OnceLock<JobResult<Arc<OrbitModel>>>>;

fn cache() -> &'static Mutex<HashMap<String, Slot>> {
    static CACHE: OnceLock<Mutex<HashMap<String, Slot>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `a6-tau4`, or `<type><rank>-cluster` with an optional `-d<d>` suffix
/// (`a3-cluster`, `d4-cluster-d3`).
pub fn named_model(name: &str) -> JobResult<Arc<OrbitModel>> {
    let slot = {
        let mut map = cache().lock().expect("model cache poisoned");
        map.entry(name.to_string()).or_default().clone()
    };
    slot.get_or_init(|| build_named(name).map(Arc::new)).clone()
}

fn build_named(name: &str) -> JobResult<OrbitModel> {
    if name == "a6-tau4" {
        return Ok(build_orbit_model(&a_alternating(6), AutoWord::new(-4, 0))?);
    }
    let unknown = || JobError::NotFound(format!("unknown model {name:?}"));
    let (ty, rest) = name.split_once("-cluster").ok_or_else(unknown)?;
    let d = match rest {
        "" => 2,
        r => r
            .strip_prefix("-d")
            .and_then(|x| x.parse::<i64>().ok())
            .ok_or_else(unknown)?,
    };
    let mut chars = ty.chars();
    let kind = chars
        .next()
        .filter(|k| matches!(k, 'a' | 'd' | 'e'))
        .ok_or_else(unknown)?;
    let rank: usize = chars.as_str().parse().map_err(|_| unknown())?;
    if !(1..=12).contains(&rank) || !(1..=12).contains(&d) {
        return Err(unknown());
    }
    let q = dynkin(kind, rank).map_err(|_| unknown())?;
    Ok(cluster_category(&q, d)?)
}
