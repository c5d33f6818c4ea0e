//! Recognition of d-cluster categories from a finite Hom table.
//!
//! The table, the suspension and a candidate `T` are checked in a fixed
//! order: Calabi-Yau duality, cluster tilting, vanishing of negative
//! extensions between summands of `T`, and acyclicity of the quiver of
//! `End(T)`. When all hold, `C^{(d)}_Q` is built for the quiver `Q`
//! recovered from the table and an
//! object bijection matching Hom tables and suspensions is searched for, with
//! `T_a` sent to `pi P_a`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hereditary::{coxeter, is_positive_root};
use crate::linalg::{rat, QMatrix};
use crate::orbit::checks::{
    cy_check, is_cluster_tilting, negative_ext_check, CyReport, HomTable, NegativeExtReport, TiltingCandidate,
    TiltingReport,
};
use crate::orbit::{cluster_category, OrbitModel};
use crate::quiver::Quiver;

/// Bound on backtracking steps in the bijection search.
const MATCHING_STEP_CAP: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecognitionInput {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub objects: Vec<String>,
    pub hom: Vec<Vec<i64>>,
    pub suspension: Vec<usize>,
    pub candidate: TiltingCandidate,
    pub d: i64,
    /// Quiver of `End(T)` with arrows along irreducible maps, if known; used
    /// for the acyclicity hypothesis instead of the Hom-support test.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub endo_quiver: Option<Quiver>,
}

impl RecognitionInput {
    /// The table of a built model with the given summands.
    pub fn from_model(m: &OrbitModel, summands: Vec<usize>, d: i64) -> Self {
        RecognitionInput {
            schema: Some("v1".into()),
            objects: m.names().to_vec(),
            hom: m
                .hom_table()
                .iter()
                .map(|row| row.iter().map(|&h| h as i64).collect())
                .collect(),
            suspension: m.suspension().to_vec(),
            candidate: TiltingCandidate::new(summands, d),
            d,
            endo_quiver: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Hypothesis {
    CalabiYau,
    ClusterTilting,
    NegativeExtensions,
    Acyclicity,
    Equivalence,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Matching {
    pub input: usize,
    pub input_name: String,
    pub model: usize,
    pub model_name: String,
}

/// `Hom(T, X)` as a module over `End(T)` and its projective presentation
/// `T_1 -> T_0`, as multiplicity vectors over the summands.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoTerm {
    pub object: usize,
    pub name: String,
    pub module_dims: Vec<i64>,
    pub t0: Vec<i64>,
    pub t1: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceWitness {
    /// The quiver `Q` with `End(T)` = `kQ`, vertex `a` for summand `a`.
    pub quiver: Quiver,
    pub d: i64,
    pub matching: Vec<Matching>,
    pub hom_preserved: bool,
    pub suspension_preserved: bool,
    /// Objects in `T * ST`; the remaining ones need longer filtrations when `d > 2`.
    pub two_term: Vec<TwoTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecognitionReport {
    pub schema: &'static str,
    pub verdict: &'static str,
    pub d: i64,
    pub passed: Vec<Hypothesis>,
    pub failed: Option<Hypothesis>,
    pub reason: Option<String>,
    pub calabi_yau: Option<CyReport>,
    pub cluster_tilting: Option<TiltingReport>,
    pub negative_extensions: Option<NegativeExtReport>,
    /// Quiver of `End(T)`, arrows along irreducible maps.
    pub endo_quiver: Option<Quiver>,
    pub witness: Option<EquivalenceWitness>,
}

impl RecognitionReport {
    pub fn accepted(&self) -> bool {
        self.verdict == "accepted"
    }

    fn reject(&mut self, h: Hypothesis, reason: String) {
        self.verdict = "rejected";
        self.failed = Some(h);
        self.reason = Some(reason);
    }
}

struct InputTable {
    names: Vec<String>,
    hom: Vec<Vec<u32>>,
    suspension: Vec<usize>,
    desuspension: Vec<usize>,
}

impl HomTable for InputTable {
    fn len(&self) -> usize {
        self.names.len()
    }

    fn hom(&self, x: usize, y: usize) -> u32 {
        self.hom[x][y]
    }

    fn suspend(&self, x: usize, times: i64) -> usize {
        let table = if times >= 0 {
            &self.suspension
        } else {
            &self.desuspension
        };
        (0..times.unsigned_abs()).fold(x, |x, _| table[x])
    }

    fn name(&self, x: usize) -> String {
        self.names[x].clone()
    }
}

fn validate(input: &RecognitionInput) -> Result<InputTable> {
    let n = input.objects.len();
    if n == 0 {
        return Err(Error::InvalidInput("no objects".into()));
    }
    if input.hom.len() != n || input.hom.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidInput(format!("hom table must be {n} x {n}")));
    }
    let mut hom = vec![vec![0u32; n]; n];
    for (x, row) in input.hom.iter().enumerate() {
        for (y, &h) in row.iter().enumerate() {
            hom[x][y] =
                u32::try_from(h).map_err(|_| Error::InvalidInput(format!("hom[{x}][{y}] = {h} is not a dimension")))?;
        }
    }
    if input.suspension.len() != n {
        return Err(Error::InvalidInput(format!("suspension must have {n} entries")));
    }
    let mut desuspension = vec![usize::MAX; n];
    for (x, &y) in input.suspension.iter().enumerate() {
        if y >= n || desuspension[y] != usize::MAX {
            return Err(Error::InvalidInput("suspension is not a permutation".into()));
        }
        desuspension[y] = x;
    }
    if input.candidate.d != input.d {
        return Err(Error::InvalidInput(format!(
            "candidate is for d = {} but d = {}",
            input.candidate.d, input.d
        )));
    }
    input.candidate.validate(n)?;
    if input.candidate.summands.is_empty() {
        return Err(Error::InvalidInput("candidate has no summands".into()));
    }
    if let Some(q) = &input.endo_quiver {
        if q.len() != input.candidate.summands.len() {
            return Err(Error::InvalidInput(format!(
                "endo quiver has {} vertices for {} summands",
                q.len(),
                input.candidate.summands.len()
            )));
        }
    }
    Ok(InputTable {
        names: input.objects.clone(),
        hom,
        suspension: input.suspension.clone(),
        desuspension,
    })
}

/// Acyclic quiver whose path counts reproduce `hom(T_a, T_b)`, arrows along maps.
///
/// Requires `End(T_a) = k` and an acyclic Hom support; the number of arrows
/// `a -> b` is what remains of `hom(T_a, T_b)` after the paths through
/// earlier arrows from `a` are accounted for.
fn quiver_from_table(t: &InputTable, summands: &[usize]) -> std::result::Result<Quiver, String> {
    let k = summands.len();
    let h = |a: usize, b: usize| t.hom(summands[a], summands[b]) as i64;
    for a in 0..k {
        if h(a, a) != 1 {
            return Err(format!("End({}) has dimension {}", t.name(summands[a]), h(a, a)));
        }
    }
    let mut support = Quiver::empty(k);
    for a in 0..k {
        for b in 0..k {
            if a != b && h(a, b) > 0 {
                support.add_arrows(a, b, 1).expect("in range");
            }
        }
    }
    let order = support
        .topological_order()
        .ok_or_else(|| "Hom support between summands has an oriented cycle".to_string())?;
    let mut arr = vec![vec![0i64; k]; k];
    for a in 0..k {
        for &b in &order {
            if b == a {
                continue;
            }
            let through: i64 = (0..k).filter(|&c| c != b && c != a).map(|c| arr[a][c] * h(c, b)).sum();
            let count = h(a, b) - through;
            if count < 0 {
                return Err(format!(
                    "hom({}, {}) is smaller than the number of paths; End(T) is not hereditary",
                    t.name(summands[a]),
                    t.name(summands[b])
                ));
            }
            arr[a][b] = count;
        }
    }
    let mut q = Quiver::empty(k);
    for a in 0..k {
        for b in 0..k {
            if arr[a][b] > 0 {
                q.add_arrows(a, b, arr[a][b] as u32).expect("in range");
            }
        }
    }
    Ok(q.with_labels(summands.iter().map(|&s| t.name(s)).collect())
        .expect("distinct names"))
}

/// Searches for a bijection `input -> model` with `T_a -> pi P_a` commuting
/// with suspension and preserving every Hom dimension.
struct Matcher<'a> {
    input: &'a InputTable,
    model: &'a OrbitModel,
    phi: Vec<Option<usize>>,
    used: Vec<bool>,
    assigned: Vec<usize>,
    steps: usize,
}

impl Matcher<'_> {
    /// Assigns the whole suspension orbit of `x` along that of `y`; on
    /// failure nothing stays assigned.
    fn assign_orbit(&mut self, x: usize, y: usize) -> bool {
        let mark = self.assigned.len();
        let (mut xi, mut yi) = (x, y);
        loop {
            match self.phi[xi] {
                Some(z) if z == yi => {}
                Some(_) => return self.undo(mark),
                None => {
                    if self.used[yi] || !self.consistent(xi, yi) {
                        return self.undo(mark);
                    }
                    self.phi[xi] = Some(yi);
                    self.used[yi] = true;
                    self.assigned.push(xi);
                }
            }
            xi = self.input.suspension[xi];
            yi = self.model.suspension()[yi];
            match (xi == x, yi == y) {
                (true, true) => return true,
                (false, false) => {}
                _ => return self.undo(mark),
            }
        }
    }

    fn consistent(&self, x: usize, y: usize) -> bool {
        let m = self.model.hom_table();
        self.input.hom[x][x] == m[y][y]
            && self.assigned.iter().all(|&u| {
                let v = self.phi[u].expect("assigned");
                self.input.hom[x][u] == m[y][v] && self.input.hom[u][x] == m[v][y]
            })
    }

    fn undo(&mut self, mark: usize) -> bool {
        for x in self.assigned.drain(mark..) {
            let y = self.phi[x].take().expect("assigned");
            self.used[y] = false;
        }
        false
    }

    fn search(&mut self, candidates: &[Vec<usize>]) -> std::result::Result<bool, String> {
        let Some(x) = (0..self.phi.len()).find(|&x| self.phi[x].is_none()) else {
            return Ok(true);
        };
        for &y in &candidates[x] {
            self.steps += 1;
            if self.steps > MATCHING_STEP_CAP {
                return Err(format!("bijection search exceeded {MATCHING_STEP_CAP} steps"));
            }
            if self.used[y] {
                continue;
            }
            let mark = self.assigned.len();
            if self.assign_orbit(x, y) {
                if self.search(candidates)? {
                    return Ok(true);
                }
                self.undo(mark);
            }
        }
        Ok(false)
    }
}

fn signature<T: HomTable + ?Sized>(t: &T, summands: &[usize], x: usize, d: i64) -> Vec<u32> {
    let mut sig = Vec::new();
    for j in 0..=2 * d + 2 {
        let sx = t.suspend(x, j);
        for &a in summands {
            sig.push(t.hom(a, sx));
            sig.push(t.hom(sx, a));
        }
    }
    sig
}

fn two_term(t: &InputTable, summands: &[usize], q: &Quiver) -> std::result::Result<Vec<TwoTerm>, String> {
    let k = summands.len();
    let cartan = coxeter(q).map_err(|e| e.to_string())?.cartan;
    let h = QMatrix::from_columns(
        k,
        &(0..k)
            .map(|b| (0..k).map(|a| rat(cartan[a][b])).collect())
            .collect::<Vec<_>>(),
    );
    let h_inv = h.inverse().ok_or("Cartan matrix is singular")?;
    let mut out = Vec::new();
    for x in 0..t.len() {
        let dims: Vec<i64> = summands.iter().map(|&a| t.hom(a, x) as i64).collect();
        let (t0, t1) = if dims.iter().all(|&v| v == 0) {
            // X is in add S T exactly when Hom(T, S^{-1} X) sees a summand as itself
            let sx = t.suspend(x, -1);
            match summands.iter().position(|&a| a == sx) {
                Some(a) => {
                    let mut t1 = vec![0; k];
                    t1[a] = 1;
                    (vec![0; k], t1)
                }
                None => continue,
            }
        } else {
            if !is_positive_root(q, &dims).map_err(|e| e.to_string())? {
                return Err(format!(
                    "Hom(T, {}) has dimension vector {dims:?}, not a root",
                    t.name(x)
                ));
            }
            let p = h_inv.mul_vec(&dims.iter().map(|&v| rat(v)).collect::<Vec<_>>());
            let mut t0 = vec![0; k];
            let mut t1 = vec![0; k];
            for (a, v) in p.iter().enumerate() {
                if !v.is_integer() {
                    return Err(format!("presentation of {} is not integral", t.name(x)));
                }
                let v: i64 = v.to_integer().try_into().map_err(|_| "multiplicity overflow")?;
                if v > 0 {
                    t0[a] = v;
                } else {
                    t1[a] = -v;
                }
            }
            (t0, t1)
        };
        out.push(TwoTerm {
            object: x,
            name: t.name(x),
            module_dims: dims,
            t0,
            t1,
        });
    }
    Ok(out)
}

fn equivalence(
    t: &InputTable,
    summands: &[usize],
    q: &Quiver,
    d: i64,
) -> std::result::Result<EquivalenceWitness, String> {
    let model = cluster_category(&q.unlabeled(), d).map_err(|e| format!("cannot build C^({d})_Q: {e}"))?;
    if model.len() != t.len() {
        return Err(format!(
            "table has {} objects but C^({d})_Q has {}",
            t.len(),
            model.len()
        ));
    }
    let projectives: Vec<usize> = (0..summands.len()).map(|a| model.projective(a)).collect();
    let mut matcher = Matcher {
        input: t,
        model: &model,
        phi: vec![None; t.len()],
        used: vec![false; t.len()],
        assigned: Vec::new(),
        steps: 0,
    };
    for (a, &s) in summands.iter().enumerate() {
        if !matcher.assign_orbit(s, projectives[a]) {
            return Err(format!("{} cannot be matched with pi P{}", t.name(s), a + 1));
        }
    }
    let model_sigs: Vec<Vec<u32>> = (0..model.len())
        .map(|y| signature(&model, &projectives, y, d))
        .collect();
    let mut by_sig: HashMap<&[u32], Vec<usize>> = HashMap::new();
    for (y, sig) in model_sigs.iter().enumerate() {
        by_sig.entry(sig).or_default().push(y);
    }
    let candidates: Vec<Vec<usize>> = (0..t.len())
        .map(|x| {
            let sig = signature(t, summands, x, d);
            by_sig.get(sig.as_slice()).cloned().unwrap_or_default()
        })
        .collect();
    if !matcher.search(&candidates)? {
        return Err("no object bijection preserves Hom dimensions and suspension".into());
    }
    let phi: Vec<usize> = matcher.phi.iter().map(|p| p.expect("complete")).collect();
    let m = model.hom_table();
    let hom_preserved = (0..t.len()).all(|x| (0..t.len()).all(|y| t.hom[x][y] == m[phi[x]][phi[y]]));
    let suspension_preserved = (0..t.len()).all(|x| phi[t.suspension[x]] == model.suspension()[phi[x]]);
    if !hom_preserved || !suspension_preserved {
        return Err("bijection fails the final table comparison".into());
    }
    Ok(EquivalenceWitness {
        quiver: q.clone(),
        d,
        matching: phi
            .iter()
            .enumerate()
            .map(|(x, &y)| Matching {
                input: x,
                input_name: t.name(x),
                model: y,
                model_name: model.names()[y].clone(),
            })
            .collect(),
        hom_preserved,
        suspension_preserved,
        two_term: two_term(t, summands, q)?,
    })
}

/// Runs the hypothesis checks in order and, if all pass, the equivalence search.
pub fn recognize_cluster_category(input: &RecognitionInput) -> Result<RecognitionReport> {
    let t = validate(input)?;
    let d = input.d;
    let summands = &input.candidate.summands;
    let mut report = RecognitionReport {
        schema: "v1",
        verdict: "accepted",
        d,
        passed: Vec::new(),
        failed: None,
        reason: None,
        calabi_yau: None,
        cluster_tilting: None,
        negative_extensions: None,
        endo_quiver: None,
        witness: None,
    };

    let cy = cy_check(&t, d);
    let holds = cy.holds;
    let first = cy.counterexample.clone();
    report.calabi_yau = Some(cy);
    if !holds {
        let w = first.expect("failure has a witness");
        report.reject(
            Hypothesis::CalabiYau,
            format!(
                "dim Hom({}, {}) = {} but dim Hom({}, S^{d} {}) = {}",
                w.x_name, w.y_name, w.hom_xy, w.y_name, w.x_name, w.hom_y_sdx
            ),
        );
        return Ok(report);
    }
    report.passed.push(Hypothesis::CalabiYau);

    let tilting = is_cluster_tilting(&t, &input.candidate)?;
    let reason = tilting.reason.clone();
    let ok = tilting.cluster_tilting;
    report.cluster_tilting = Some(tilting);
    if !ok {
        report.reject(Hypothesis::ClusterTilting, reason.unwrap_or_default());
        return Ok(report);
    }
    report.passed.push(Hypothesis::ClusterTilting);

    let negative = negative_ext_check(&t, &input.candidate)?;
    let witness = negative.witness.clone();
    report.negative_extensions = Some(negative);
    if let Some(w) = witness {
        report.reject(
            Hypothesis::NegativeExtensions,
            format!("dim Hom({}, {}) = {}", w.from_name, w.to_name, w.dim),
        );
        return Ok(report);
    }
    report.passed.push(Hypothesis::NegativeExtensions);

    if let Some(q) = &input.endo_quiver {
        report.endo_quiver = Some(q.clone());
        if !q.is_acyclic() {
            report.reject(Hypothesis::Acyclicity, "quiver of End(T) has an oriented cycle".into());
            return Ok(report);
        }
    }
    let q = match quiver_from_table(&t, summands) {
        Ok(q) => q,
        Err(reason) => {
            report.reject(Hypothesis::Acyclicity, reason);
            return Ok(report);
        }
    };
    report.passed.push(Hypothesis::Acyclicity);
    if report.endo_quiver.is_none() {
        report.endo_quiver = Some(q.clone());
    }

    // End(T) = kQ^op for Q the morphism-direction quiver, and pi P_a has End = kQ_H^op
    match equivalence(&t, summands, &q.opposite(), d) {
        Ok(w) => {
            report.witness = Some(w);
            report.passed.push(Hypothesis::Equivalence);
        }
        Err(reason) => report.reject(Hypothesis::Equivalence, reason),
    }
    Ok(report)
}
