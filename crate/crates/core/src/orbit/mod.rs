//! Finite models of orbit categories `D / F` for `D` the derived category of
//! a Dynkin quiver and `F = tau^a S^b`.
//!
//! `F` acts on `ZQ` by `(c, v) -> (c + delta_v, pi(v))`. Along a cycle of
//! `pi` the total displacement `Delta` must be nonzero; the cycle then
//! contributes `|Delta|` orbits. Hom spaces are orbit sums
//! `Hom(X, Y) = sum_p Hom_D(X, F^p Y)`, evaluated until `F^p Y` has moved
//! past the degrees where a nonzero term is possible.

mod checks;
mod endo;
mod kronecker;
mod mesh;
mod recognize;

pub use checks::{
    cy_check, enumerate_cluster_tilting, is_cluster_tilting, is_rigid, negative_ext_check, CyReport, CyWitness,
    HomTable, NegativeExtReport, NegativeExtWitness, TiltingCandidate, TiltingReport, DEFAULT_ENUMERATION_CAP,
};
pub use endo::{endo_quiver, EndoQuiver};
pub use kronecker::{kronecker_rigidity_survey, KroneckerReport, KroneckerRow};
pub use mesh::{mesh_hom, MeshHom};
pub use recognize::{
    recognize_cluster_category, EquivalenceWitness, Hypothesis, Matching, RecognitionInput, RecognitionReport, TwoTerm,
};

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::derived::{AutoWord, DerivedCategory, DerivedObject, Zq};
use crate::error::{Error, Result};
use crate::hereditary::DimVector;
use crate::quiver::Quiver;

/// Largest fundamental domain a model may have.
pub const MODEL_OBJECT_CAP: usize = 5000;

/// Bound on the number of `F`-steps one orbit sum may take.
const ORBIT_SUM_CAP: usize = 100_000;

/// How `F` moves vertices of `ZQ`, with each `pi`-cycle reduced to a leader column.
#[derive(Clone, Debug)]
struct OrbitAction {
    /// `F (c, v) = (c + step[v].0, step[v].1)`.
    step: Vec<(i64, usize)>,
    /// `F^k (c, v) = (c + to_leader[v].1, leader[v])` with `k = to_leader[v].0`.
    leader: Vec<usize>,
    to_leader: Vec<(i64, i64)>,
    /// Signed displacement of `F^L` for the cycle through `v`, `L` its length.
    delta: Vec<i64>,
    cycle_len: Vec<usize>,
}

impl OrbitAction {
    fn new(derived: &DerivedCategory, auto: AutoWord) -> Result<Self> {
        let n = derived.quiver().len();
        let step: Vec<(i64, usize)> = (0..n)
            .map(|v| {
                let p = derived.auto_zq(auto, Zq::new(0, v));
                (p.c, p.v)
            })
            .collect();
        let mut leader = vec![usize::MAX; n];
        let mut to_leader = vec![(0, 0); n];
        let mut delta = vec![0; n];
        let mut cycle_len = vec![0; n];
        for start in 0..n {
            if leader[start] != usize::MAX {
                continue;
            }
            let mut cycle = vec![start];
            let mut v = step[start].1;
            while v != start {
                cycle.push(v);
                v = step[v].1;
            }
            let total: i64 = cycle.iter().map(|&u| step[u].0).sum();
            if total == 0 {
                return Err(Error::NotProperOrbitQuotient(format!(
                    "{auto:?} has infinite orbits through vertex {start} (fixes tau^-c P{start} up to translation)"
                )));
            }
            let lead = *cycle.iter().min().expect("nonempty");
            let len = cycle.len();
            let pos = cycle.iter().position(|&u| u == lead).expect("leader on cycle");
            // walk forward from each vertex to the leader, accumulating displacement
            for (idx, &u) in cycle.iter().enumerate() {
                let k = (pos + len - idx) % len;
                let mut off = 0;
                let mut w = u;
                for _ in 0..k {
                    off += step[w].0;
                    w = step[w].1;
                }
                leader[u] = lead;
                to_leader[u] = (k as i64, off);
                delta[u] = total;
                cycle_len[u] = len;
            }
        }
        Ok(OrbitAction {
            step,
            leader,
            to_leader,
            delta,
            cycle_len,
        })
    }

    fn key(&self, p: Zq) -> (usize, i64) {
        let (_, off) = self.to_leader[p.v];
        (self.leader[p.v], (p.c + off).rem_euclid(self.delta[p.v].abs()))
    }

    fn apply(&self, p: Zq) -> Zq {
        let (dc, v) = self.step[p.v];
        Zq::new(p.c + dc, v)
    }

    /// `p` with `F^p` undone: the unique preimage under `F` as a point map.
    fn apply_inv(&self, p: Zq) -> Zq {
        let v = (0..self.step.len())
            .find(|&u| self.step[u].1 == p.v)
            .expect("pi is a permutation");
        Zq::new(p.c - self.step[v].0, v)
    }

    /// `power` with `F^power (rep) = p`, given that both lie in one orbit.
    fn power_between(&self, rep: Zq, p: Zq) -> i64 {
        let (kp, offp) = self.to_leader[p.v];
        let (kr, offr) = self.to_leader[rep.v];
        let diff = (p.c + offp) - (rep.c + offr);
        let delta = self.delta[p.v];
        debug_assert_eq!(diff.rem_euclid(delta.abs()), 0);
        (diff / delta) * self.cycle_len[p.v] as i64 + kr - kp
    }

    fn orbit_count(&self) -> usize {
        let mut total = 0;
        for v in 0..self.step.len() {
            if self.leader[v] == v {
                total += self.delta[v].unsigned_abs() as usize;
            }
        }
        total
    }
}

/// Fundamental domain of `F` together with the complete Hom table of `D / F`.
#[derive(Clone, Debug)]
pub struct OrbitModel {
    derived: Arc<DerivedCategory>,
    auto: AutoWord,
    action: OrbitAction,
    objects: Vec<DerivedObject>,
    coords: Vec<Zq>,
    names: Vec<String>,
    hom: Vec<Vec<u32>>,
    suspension: Vec<usize>,
    desuspension: Vec<usize>,
    lookup: HashMap<(usize, i64), usize>,
}

pub fn build_orbit_model(q: &Quiver, auto: AutoWord) -> Result<OrbitModel> {
    OrbitModel::build(Arc::new(DerivedCategory::new(q)?), auto)
}

/// `C^{(d)}_Q`, the orbit category under `nu^{-1} S^d`.
pub fn cluster_category(q: &Quiver, d: i64) -> Result<OrbitModel> {
    if d < 1 {
        return Err(Error::InvalidInput(format!("CY dimension {d} must be positive")));
    }
    build_orbit_model(q, AutoWord::cluster(d))
}

impl OrbitModel {
    pub fn build(derived: Arc<DerivedCategory>, auto: AutoWord) -> Result<Self> {
        let action = OrbitAction::new(&derived, auto)?;
        let count = action.orbit_count();
        if count > MODEL_OBJECT_CAP {
            return Err(Error::ObjectCapExceeded {
                n: count,
                cap: MODEL_OBJECT_CAP,
            });
        }

        let n = derived.quiver().len();
        let mut reps: Vec<((i64, i64, usize), Zq)> = Vec::with_capacity(count);
        for lead in 0..n {
            if action.leader[lead] != lead {
                continue;
            }
            let period = action.delta[lead].abs();
            let cycle: Vec<usize> = (0..n).filter(|&u| action.leader[u] == lead).collect();
            for r in 0..period {
                // least nonnegative coordinate in each column, then least triple
                let best = cycle
                    .iter()
                    .map(|&u| {
                        let c = (r - action.to_leader[u].1).rem_euclid(period);
                        let p = Zq::new(c, u);
                        let x = derived.object_at(p);
                        let (slice, vertex) = derived.module_slice(x.root);
                        ((x.shift, slice, vertex), p)
                    })
                    .min()
                    .expect("cycle is nonempty");
                reps.push(best);
            }
        }
        reps.sort();
        let coords: Vec<Zq> = reps.into_iter().map(|(_, p)| p).collect();
        let objects: Vec<DerivedObject> = coords.iter().map(|&p| derived.object_at(p)).collect();
        let names = objects.iter().map(|&x| derived.name(x)).collect();
        let lookup: HashMap<(usize, i64), usize> =
            coords.iter().enumerate().map(|(i, &p)| (action.key(p), i)).collect();
        if lookup.len() != coords.len() {
            return Err(Error::Inconsistent("representatives of distinct orbits collide".into()));
        }

        let mut model = OrbitModel {
            derived,
            auto,
            action,
            objects,
            coords,
            names,
            hom: Vec::new(),
            suspension: Vec::new(),
            desuspension: Vec::new(),
            lookup,
        };
        model.suspension = (0..model.len())
            .map(|i| model.index_of_zq(model.derived.suspend_zq(model.coords[i], 1)))
            .collect();
        let mut desuspension = vec![0; model.len()];
        for (i, &j) in model.suspension.iter().enumerate() {
            desuspension[j] = i;
        }
        model.desuspension = desuspension;
        let mut hom = vec![vec![0; model.len()]; model.len()];
        for (x, row) in hom.iter_mut().enumerate() {
            for (y, entry) in row.iter_mut().enumerate() {
                *entry = model.orbit_sum(model.coords[x], model.coords[y])?;
            }
        }
        model.hom = hom;
        Ok(model)
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn derived(&self) -> &DerivedCategory {
        &self.derived
    }

    pub fn quiver(&self) -> &Quiver {
        self.derived.quiver()
    }

    pub fn auto(&self) -> AutoWord {
        self.auto
    }

    pub fn objects(&self) -> &[DerivedObject] {
        &self.objects
    }

    pub fn coords(&self) -> &[Zq] {
        &self.coords
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn hom_table(&self) -> &[Vec<u32>] {
        &self.hom
    }

    pub fn suspension(&self) -> &[usize] {
        &self.suspension
    }

    /// Index of the orbit through a point of `ZQ`.
    pub fn index_of_zq(&self, p: Zq) -> usize {
        self.lookup[&self.action.key(p)]
    }

    /// Index of the orbit of `x`.
    pub fn index_of(&self, x: DerivedObject) -> usize {
        self.index_of_zq(self.derived.zq(x))
    }

    /// Orbit index and the power `p` with `F^p (representative) = point`.
    pub fn reduce(&self, point: Zq) -> (usize, i64) {
        let i = self.index_of_zq(point);
        (i, self.action.power_between(self.coords[i], point))
    }

    /// `pi P_v`.
    pub fn projective(&self, v: usize) -> usize {
        self.index_of(DerivedObject {
            root: self.derived.projective(v),
            shift: 0,
        })
    }

    pub fn hom_c(&self, x: usize, y: usize) -> Result<u32> {
        for i in [x, y] {
            if i >= self.len() {
                return Err(Error::ForeignObject(i));
            }
        }
        Ok(self.hom[x][y])
    }

    pub fn apply_f(&self, p: Zq, power: i64) -> Zq {
        self.derived.auto_zq(self.auto.pow(power), p)
    }

    /// `sum_p Hom_D(x, F^p y)`, walking outwards from `p = 0` in both directions.
    fn orbit_sum(&self, x: Zq, y: Zq) -> Result<u32> {
        let d = &self.derived;
        let xo = d.object_at(x);
        let lo = xo.shift;
        let hi = xo.shift + 1;
        let stride = self.action.cycle_len[y.v].max(2);
        let delta = self.action.delta[y.v];
        let mut total = d.hom_d(xo, d.object_at(y));
        for dir in [1i64, -1] {
            // shifts grow along c in every column, so this side drifts up iff dir * delta > 0
            let upward = dir * delta > 0;
            let mut p = y;
            let mut far = 0;
            let mut steps = 0;
            while far < stride {
                p = if dir > 0 {
                    self.action.apply(p)
                } else {
                    self.action.apply_inv(p)
                };
                let obj = d.object_at(p);
                total += d.hom_d(xo, obj);
                let beyond = if upward { obj.shift > hi } else { obj.shift < lo };
                far = if beyond { far + 1 } else { 0 };
                steps += 1;
                if steps > ORBIT_SUM_CAP {
                    return Err(Error::Inconsistent("orbit sum did not terminate".into()));
                }
            }
        }
        Ok(total)
    }

    pub fn dump(&self) -> ModelDump {
        let d = &self.derived;
        let objects = self
            .objects
            .iter()
            .zip(&self.coords)
            .enumerate()
            .map(|(index, (&x, &zq))| {
                let (slice, vertex) = d.module_slice(x.root);
                ObjectEntry {
                    index,
                    name: self.names[index].clone(),
                    dims: d.roots()[x.root].clone(),
                    shift: x.shift,
                    slice,
                    vertex,
                    zq,
                }
            })
            .collect();
        ModelDump {
            schema: "v1",
            quiver: self.quiver().clone(),
            auto: self.auto,
            projectives: (0..self.quiver().len()).map(|v| self.projective(v)).collect(),
            objects,
            hom: self.hom.clone(),
            suspension: self.suspension.clone(),
        }
    }

    /// The AR quiver of the model: one vertex per object, arrows from `ZQ`.
    pub fn ar_quiver(&self) -> Quiver {
        let mut q = Quiver::empty(self.len());
        for (i, &p) in self.coords.iter().enumerate() {
            for s in self.derived.zq_successors(p) {
                q.add_arrows(i, self.index_of_zq(s), 1).expect("indices in range");
            }
        }
        // distinct objects have distinct names
        q.with_labels(self.names.clone()).expect("distinct object names")
    }

    pub fn ar_dot(&self, name: &str) -> String {
        self.ar_quiver().to_dot(name)
    }
}

impl HomTable for OrbitModel {
    fn len(&self) -> usize {
        self.objects.len()
    }

    fn hom(&self, x: usize, y: usize) -> u32 {
        self.hom[x][y]
    }

    fn suspend(&self, x: usize, times: i64) -> usize {
        let mut x = x;
        for _ in 0..times.max(0) {
            x = self.suspension[x];
        }
        for _ in 0..(-times).max(0) {
            x = self.desuspension[x];
        }
        x
    }

    fn name(&self, x: usize) -> String {
        self.names[x].clone()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ObjectEntry {
    pub index: usize,
    pub name: String,
    pub dims: DimVector,
    pub shift: i64,
    /// The module is `tau^{-slice} P_vertex`.
    pub slice: i64,
    pub vertex: usize,
    pub zq: Zq,
}

/// JSON form of a model.
#[derive(Clone, Debug, Serialize)]
pub struct ModelDump {
    pub schema: &'static str,
    pub quiver: Quiver,
    pub auto: AutoWord,
    pub projectives: Vec<usize>,
    pub objects: Vec<ObjectEntry>,
    pub hom: Vec<Vec<u32>>,
    pub suspension: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::{a_alternating, a_linear};

    #[test]
    fn small_cluster_categories() {
        assert_eq!(cluster_category(&a_linear(1), 2).unwrap().len(), 2);
        let a2 = cluster_category(&a_linear(2), 2).unwrap();
        assert_eq!(a2.len(), 5);
        let p1 = a2.projective(0);
        let p2 = a2.projective(1);
        assert_eq!(a2.hom_c(p1, p1).unwrap(), 1);
        // P2 is simple projective with a map into P1
        assert_eq!(a2.hom_c(p2, p1).unwrap(), 1);
        assert_eq!(a2.hom_c(p1, p2).unwrap(), 0);
        assert_eq!(a2.hom_c(p1, 7), Err(Error::ForeignObject(7)));
    }

    #[test]
    fn a6_fundamental_domain() {
        let m = build_orbit_model(&a_alternating(6), AutoWord::new(-4, 0)).unwrap();
        assert_eq!(m.len(), 24);
        assert_eq!(m.objects().iter().filter(|x| x.shift == 1).count(), 3);
        let same = build_orbit_model(&a_alternating(6), AutoWord::new(4, 0)).unwrap();
        assert_eq!(same.hom_table(), m.hom_table());
    }

    #[test]
    fn identity_is_not_proper() {
        assert!(matches!(
            build_orbit_model(&a_linear(3), AutoWord::new(0, 0)),
            Err(Error::NotProperOrbitQuotient(_))
        ));
        // S^2 = tau^{-4} on A3, so tau^4 S^2 acts trivially
        assert!(matches!(
            build_orbit_model(&a_linear(3), AutoWord::new(4, 2)),
            Err(Error::NotProperOrbitQuotient(_))
        ));
    }

    #[test]
    fn reduce_recovers_powers() {
        let m = cluster_category(&a_linear(3), 3).unwrap();
        for (i, &p) in m.coords().iter().enumerate() {
            for power in -4..=4 {
                assert_eq!(m.reduce(m.apply_f(p, power)), (i, power));
            }
        }
    }
}
