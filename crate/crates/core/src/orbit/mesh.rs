//! Hom spaces of the mesh category of the model's AR quiver.
//!
//! For a fixed source `x`, paths of length `l` ending at `y` modulo the mesh
//! ideal form a space `V_l(y)`. With `alpha: u -> y` running over the arrows
//! into `y` and `sigma(alpha): tau y -> u` its mesh partner,
//!
//! `V_{l+1}(y) = coker( V_{l-1}(tau y) -> (+)_alpha V_l(u), v -> (M_sigma(alpha) v)_alpha )`
//!
//! and the map `M_alpha: V_l(u) -> V_{l+1}(y)` is the quotient map on the
//! `alpha` block. The mesh relation is `sum_alpha alpha sigma(alpha) = 0`.
//! Levels are computed until one vanishes entirely; `rad^k` is the part of
//! length at least `k`. This uses only the translation quiver, never a
//! representation, so it is an independent check on the orbit sums.

use std::collections::HashMap;

use crate::derived::Zq;
use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::orbit::OrbitModel;

#[derive(Clone, Debug)]
pub(crate) struct Arrow {
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug)]
struct Incoming {
    arrow: usize,
    source: usize,
    sigma: usize,
}

/// Paths from one source, level by level.
#[derive(Clone, Debug)]
pub(crate) struct Levels {
    /// `dims[l][y] = dim V_l(y)`.
    pub dims: Vec<Vec<usize>>,
    /// `maps[l][arrow]`: `V_l(source) -> V_{l+1}(target)`, present when both sides are nonzero.
    pub maps: Vec<HashMap<usize, QMatrix>>,
}

impl Levels {
    pub fn hom(&self, y: usize) -> usize {
        self.dims.iter().map(|level| level[y]).sum()
    }

    pub fn map(&self, level: usize, arrow: usize) -> Option<&QMatrix> {
        self.maps.get(level).and_then(|m| m.get(&arrow))
    }
}

/// Mesh-category Hom table plus per-source path data for composition.
#[derive(Clone, Debug)]
pub struct MeshHom {
    pub hom: Vec<Vec<u32>>,
    pub(crate) arrows: Vec<Arrow>,
    pub(crate) into: Vec<Vec<usize>>,
    pub(crate) levels: Vec<Levels>,
}

impl MeshHom {
    /// `dim rad^k(x, y)`.
    pub fn radical_power(&self, x: usize, y: usize, k: usize) -> u32 {
        self.levels[x].dims.iter().skip(k).map(|level| level[y] as u32).sum()
    }

    /// Longest nonzero path length from `x`.
    pub fn depth(&self, x: usize) -> usize {
        self.levels[x].dims.len().saturating_sub(1)
    }
}

/// Arrows of the orbit translation quiver, their mesh partners, and `tau`.
struct Translation {
    arrows: Vec<Arrow>,
    incoming: Vec<Vec<Incoming>>,
    tau: Vec<usize>,
}

fn translation_quiver(m: &OrbitModel) -> Result<Translation> {
    let d = m.derived();
    let mut arrows = Vec::new();
    // arrow ids keyed by (source object, successor slot of its representative)
    let mut slot_ids: Vec<Vec<usize>> = Vec::with_capacity(m.len());
    let mut successors: Vec<Vec<Zq>> = Vec::with_capacity(m.len());
    for (i, &p) in m.coords().iter().enumerate() {
        let succ = d.zq_successors(p);
        let ids = succ
            .iter()
            .map(|&s| {
                arrows.push(Arrow {
                    source: i,
                    target: m.index_of_zq(s),
                });
                arrows.len() - 1
            })
            .collect();
        slot_ids.push(ids);
        successors.push(succ);
    }

    // the `copy`-th ZQ arrow from `from` to `to`, moved back into the fundamental domain
    let arrow_id = |from: Zq, to: Zq, copy: usize| -> Result<usize> {
        let (obj, power) = m.reduce(from);
        let to = m.apply_f(to, -power);
        successors[obj]
            .iter()
            .enumerate()
            .filter(|(_, &s)| s == to)
            .nth(copy)
            .map(|(slot, _)| slot_ids[obj][slot])
            .ok_or_else(|| Error::Inconsistent(format!("no arrow {from:?} -> {to:?} in the model")))
    };

    let mut incoming = Vec::with_capacity(m.len());
    let mut tau = Vec::with_capacity(m.len());
    for &y in m.coords() {
        let ty = Zq::new(y.c - 1, y.v);
        tau.push(m.index_of_zq(ty));
        let preds = d.zq_predecessors(y);
        let mut list = Vec::with_capacity(preds.len());
        for (k, &z) in preds.iter().enumerate() {
            let copy = preds[..k].iter().filter(|&&w| w == z).count();
            list.push(Incoming {
                arrow: arrow_id(z, y, copy)?,
                source: m.index_of_zq(z),
                sigma: arrow_id(ty, z, copy)?,
            });
        }
        incoming.push(list);
    }
    Ok(Translation { arrows, incoming, tau })
}

fn levels_from(t: &Translation, objects: usize, x: usize, cap: usize) -> Result<Levels> {
    let mut first = vec![0; objects];
    first[x] = 1;
    let mut dims = vec![first];
    let mut maps: Vec<HashMap<usize, QMatrix>> = Vec::new();
    loop {
        let l = dims.len() - 1;
        if l >= cap {
            return Err(Error::MeshNotStabilizing(cap));
        }
        let mut next = vec![0; objects];
        let mut level_maps = HashMap::new();
        for y in 0..objects {
            let inc = &t.incoming[y];
            let total: usize = inc.iter().map(|a| dims[l][a.source]).sum();
            if total == 0 {
                continue;
            }
            let quotient = if l == 0 {
                QMatrix::identity(total)
            } else {
                let ty = t.tau[y];
                let r = dims[l - 1][ty];
                let mut rel = QMatrix::zeros(total, r);
                let mut offset = 0;
                for a in inc {
                    let rows = dims[l][a.source];
                    if rows > 0 && r > 0 {
                        let block = maps[l - 1]
                            .get(&a.sigma)
                            .ok_or_else(|| Error::Inconsistent("missing mesh partner map".into()))?;
                        for i in 0..rows {
                            for j in 0..r {
                                rel[(offset + i, j)] = block[(i, j)].clone();
                            }
                        }
                    }
                    offset += rows;
                }
                rel.cokernel_map()
            };
            next[y] = quotient.rows();
            if next[y] == 0 {
                continue;
            }
            let mut offset = 0;
            for a in inc {
                let cols = dims[l][a.source];
                if cols > 0 {
                    level_maps.insert(a.arrow, quotient.column_block(offset, cols));
                }
                offset += cols;
            }
        }
        maps.push(level_maps);
        if next.iter().all(|&v| v == 0) {
            maps.pop();
            break;
        }
        dims.push(next);
    }
    Ok(Levels { dims, maps })
}

/// Hom table of the mesh category of `m`'s translation quiver.
pub fn mesh_hom(m: &OrbitModel) -> Result<MeshHom> {
    let t = translation_quiver(m)?;
    let cap = 8 * m.len() + 64;
    let levels = (0..m.len())
        .map(|x| levels_from(&t, m.len(), x, cap))
        .collect::<Result<Vec<_>>>()?;
    let hom = levels
        .iter()
        .map(|lv| (0..m.len()).map(|y| lv.hom(y) as u32).collect())
        .collect();
    let mut into = vec![Vec::new(); m.len()];
    for (id, a) in t.arrows.iter().enumerate() {
        into[a.target].push(id);
    }
    Ok(MeshHom {
        hom,
        arrows: t.arrows,
        into,
        levels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::a_linear;
    use crate::orbit::cluster_category;

    #[test]
    fn identity_contributes() {
        let m = cluster_category(&a_linear(3), 2).unwrap();
        let mesh = mesh_hom(&m).unwrap();
        for x in 0..m.len() {
            assert!(mesh.hom[x][x] >= 1);
            assert_eq!(mesh.levels[x].dims[0][x], 1);
        }
    }

    #[test]
    fn a2_agrees_with_orbit_sums() {
        let m = cluster_category(&a_linear(2), 2).unwrap();
        assert_eq!(mesh_hom(&m).unwrap().hom, m.hom_table());
    }

    #[test]
    fn radical_filtration_is_decreasing() {
        let m = cluster_category(&a_linear(3), 3).unwrap();
        let mesh = mesh_hom(&m).unwrap();
        for x in 0..m.len() {
            for y in 0..m.len() {
                let mut last = mesh.hom[x][y];
                for k in 1..=mesh.depth(x) + 1 {
                    let r = mesh.radical_power(x, y, k);
                    assert!(r <= last);
                    last = r;
                }
                assert_eq!(last, 0);
            }
        }
    }
}
