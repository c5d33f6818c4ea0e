//! Breadth-first exploration of mutation classes up to isomorphism.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canonical::{canonical_form, CanonicalQuiver};
use crate::error::{Error, Result};
use crate::quiver::Quiver;

/// Frontier entries expanded per parallel batch.
const BATCH: usize = 2048;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchLimits {
    pub max_depth: usize,
    pub max_nodes: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_depth: 10,
            max_nodes: 100_000,
        }
    }
}

impl SearchLimits {
    pub fn new(max_depth: usize, max_nodes: usize) -> Result<Self> {
        if max_depth == 0 || max_nodes == 0 {
            return Err(Error::InvalidInput("search limits must be positive".into()));
        }
        Ok(SearchLimits { max_depth, max_nodes })
    }
}

/// One isomorphism class reached from the seed.
#[derive(Clone, Debug, Serialize)]
pub struct MutationNode {
    pub canonical: CanonicalQuiver,
    /// Vertices (in the seed's labeling) mutated from the seed, left to right.
    pub word: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MutationClass {
    pub nodes: Vec<MutationNode>,
    pub truncated: bool,
    pub limits: SearchLimits,
}

impl MutationClass {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AcyclicSearchStatus {
    Found,
    /// The whole class was enumerated and contains no acyclic quiver.
    Exhausted,
    /// A limit fired first; absence is only evidence.
    Truncated,
}

#[derive(Clone, Debug, Serialize)]
pub struct AcyclicSearchReport {
    pub found: bool,
    pub truncated: bool,
    pub status: AcyclicSearchStatus,
    pub verdict: String,
    pub witness_word: Option<Vec<usize>>,
    pub witness: Option<Quiver>,
    pub explored: usize,
    pub limits: SearchLimits,
}

struct Exploration {
    nodes: Vec<MutationNode>,
    truncated: bool,
    hit: Option<(Vec<usize>, Quiver)>,
}

/// Closure of `seed` under single mutations, deduplicated by canonical form.
pub fn mutation_class(seed: &Quiver, limits: SearchLimits) -> Result<MutationClass> {
    let ex = explore(seed, limits, |_| false)?;
    Ok(MutationClass {
        nodes: ex.nodes,
        truncated: ex.truncated,
        limits,
    })
}

/// Looks for an acyclic quiver mutation-equivalent to `seed`; returned words are shortest.
pub fn find_acyclic(seed: &Quiver, limits: SearchLimits) -> Result<AcyclicSearchReport> {
    let ex = explore(seed, limits, Quiver::is_acyclic)?;
    let (status, verdict) = match (&ex.hit, ex.truncated) {
        (Some((word, _)), _) => (
            AcyclicSearchStatus::Found,
            format!("acyclic quiver found at depth {}", word.len()),
        ),
        (None, false) => (
            AcyclicSearchStatus::Exhausted,
            format!(
                "bounded-search evidence: the mutation class was exhausted within the limits \
                 ({} quivers) and none of them is acyclic",
                ex.nodes.len()
            ),
        ),
        (None, true) => (
            AcyclicSearchStatus::Truncated,
            "bounded-search evidence: no acyclic quiver found before the search limits fired".into(),
        ),
    };
    let (witness_word, witness) = match ex.hit {
        Some((w, q)) => (Some(w), Some(q)),
        None => (None, None),
    };
    Ok(AcyclicSearchReport {
        found: witness.is_some(),
        truncated: ex.truncated && witness.is_none(),
        status,
        verdict,
        witness_word,
        witness,
        explored: ex.nodes.len(),
        limits,
    })
}

fn explore(seed: &Quiver, limits: SearchLimits, stop: impl Fn(&Quiver) -> bool) -> Result<Exploration> {
    seed.ensure_admissible()?;
    let root = canonical_form(seed)?;
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    seen.insert(root.key());
    let mut nodes = vec![MutationNode {
        canonical: root,
        word: Vec::new(),
    }];
    if stop(seed) {
        return Ok(Exploration {
            nodes,
            truncated: false,
            hit: Some((Vec::new(), seed.clone())),
        });
    }

    let n = seed.len();
    let mut frontier: Vec<(Quiver, Vec<usize>)> = vec![(seed.clone(), Vec::new())];
    let mut truncated = false;
    for depth in 0..=limits.max_depth {
        if frontier.is_empty() {
            break;
        }
        let mut next = Vec::new();
        for batch in frontier.chunks(BATCH) {
            let expanded: Vec<Result<(Quiver, Vec<usize>, CanonicalQuiver)>> = batch
                .par_iter()
                .flat_map_iter(|(q, word)| {
                    (0..n).filter(move |&k| word.last() != Some(&k)).map(move |k| {
                        let m = q.mutate(k)?;
                        let c = canonical_form(&m)?;
                        let mut w = word.clone();
                        w.push(k);
                        Ok((m, w, c))
                    })
                })
                .collect();
            for item in expanded {
                let (q, word, canonical) = item?;
                if seen.contains(&canonical.key()) {
                    continue;
                }
                if depth == limits.max_depth || nodes.len() >= limits.max_nodes {
                    truncated = true;
                    break;
                }
                seen.insert(canonical.key());
                nodes.push(MutationNode {
                    canonical,
                    word: word.clone(),
                });
                if stop(&q) {
                    return Ok(Exploration {
                        nodes,
                        truncated,
                        hit: Some((word, q)),
                    });
                }
                next.push((q, word));
            }
            if truncated {
                break;
            }
        }
        if truncated {
            break;
        }
        frontier = next;
    }
    Ok(Exploration {
        nodes,
        truncated,
        hit: None,
    })
}
