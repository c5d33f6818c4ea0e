//! Quivers as arrow-multiplicity matrices, and the mutation rule.
//!
//! Mutation uses the exchange matrix `b[i][j] = arrows[i][j] - arrows[j][i]`.
//! Mutating at `k` negates row and column `k` and updates every other entry by
//! `b[i][j] + sgn(b[i][k]) * max(0, b[i][k] * b[k][j])`; arrows are read back
//! as the positive parts.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A finite quiver. `arrows[i][j]` is the number of arrows `i -> j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    arrows: Vec<Vec<u32>>,
    labels: Option<Vec<String>>,
}

/// Loops and 2-cycles found by [`Quiver::validate`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AdmissibilityReport {
    pub loops: Vec<usize>,
    pub two_cycles: Vec<(usize, usize)>,
}

impl AdmissibilityReport {
    pub fn is_admissible(&self) -> bool {
        self.loops.is_empty() && self.two_cycles.is_empty()
    }
}

impl Quiver {
    /// Quiver with `n` vertices and no arrows.
    pub fn empty(n: usize) -> Self {
        Quiver {
            arrows: vec![vec![0; n]; n],
            labels: None,
        }
    }

    pub fn from_matrix(arrows: Vec<Vec<u32>>) -> Result<Self> {
        let n = arrows.len();
        if arrows.iter().any(|row| row.len() != n) {
            return Err(Error::ShapeMismatch("arrow matrix is not square".into()));
        }
        Ok(Quiver { arrows, labels: None })
    }

    /// Builds a quiver from `(source, target)` pairs; repeated pairs add multiplicity.
    pub fn from_arrows(n: usize, arrows: &[(usize, usize)]) -> Result<Self> {
        let mut q = Quiver::empty(n);
        for &(i, j) in arrows {
            q.add_arrows(i, j, 1)?;
        }
        Ok(q)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.len() {
            return Err(Error::InvalidInput(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.len()
            )));
        }
        let distinct: BTreeSet<&String> = labels.iter().collect();
        if distinct.len() != labels.len() {
            return Err(Error::InvalidInput("vertex labels are not distinct".into()));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn add_arrows(&mut self, i: usize, j: usize, mult: u32) -> Result<()> {
        let n = self.len();
        for v in [i, j] {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
        }
        self.arrows[i][j] += mult;
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn arrows(&self, i: usize, j: usize) -> u32 {
        self.arrows[i][j]
    }

    pub fn matrix(&self) -> &[Vec<u32>] {
        &self.arrows
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn arrow_count(&self) -> u32 {
        self.arrows.iter().flatten().sum()
    }

    /// Every arrow as `(source, target)`, parallel arrows repeated, in row-major order.
    pub fn arrow_list(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, row) in self.arrows.iter().enumerate() {
            for (j, &m) in row.iter().enumerate() {
                out.extend(std::iter::repeat((i, j)).take(m as usize));
            }
        }
        out
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.arrows[v].iter().all(|&m| m == 0)
    }

    pub fn is_source(&self, v: usize) -> bool {
        self.arrows.iter().all(|row| row[v] == 0)
    }

    pub fn validate(&self) -> AdmissibilityReport {
        let n = self.len();
        let mut report = AdmissibilityReport::default();
        for i in 0..n {
            if self.arrows[i][i] > 0 {
                report.loops.push(i);
            }
            for j in i + 1..n {
                if self.arrows[i][j] > 0 && self.arrows[j][i] > 0 {
                    report.two_cycles.push((i, j));
                }
            }
        }
        report
    }

    pub fn ensure_admissible(&self) -> Result<()> {
        let report = self.validate();
        if report.is_admissible() {
            Ok(())
        } else {
            Err(Error::Inadmissible(format!(
                "loops at {:?}, 2-cycles at {:?}",
                report.loops, report.two_cycles
            )))
        }
    }

    /// Skew-symmetric exchange matrix.
    pub fn exchange_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.len();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| i64::from(self.arrows[i][j]) - i64::from(self.arrows[j][i]))
                    .collect()
            })
            .collect()
    }

    pub fn mutate(&self, k: usize) -> Result<Quiver> {
        let n = self.len();
        if k >= n {
            return Err(Error::VertexOutOfRange { vertex: k, n });
        }
        self.ensure_admissible()?;
        let b = self.exchange_matrix();
        let mut arrows = vec![vec![0u32; n]; n];
        for i in 0..n {
            for j in 0..n {
                let entry = if i == k || j == k {
                    -b[i][j]
                } else {
                    let through = b[i][k] * b[k][j];
                    b[i][j] + b[i][k].signum() * through.max(0)
                };
                if entry > 0 {
                    arrows[i][j] = u32::try_from(entry)
                        .map_err(|_| Error::Inconsistent(format!("arrow multiplicity {entry} overflows")))?;
                }
            }
        }
        Ok(Quiver {
            arrows,
            labels: self.labels.clone(),
        })
    }

    /// Applies a sequence of mutations from left to right.
    pub fn mutate_word(&self, word: &[usize]) -> Result<Quiver> {
        word.iter().try_fold(self.clone(), |q, &k| q.mutate(k))
    }

    /// True iff there is no oriented cycle; a loop counts as a cycle.
    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Vertices ordered so that every arrow points forward, if possible.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.len();
        let mut indeg: Vec<u32> = (0..n).map(|j| (0..n).map(|i| self.arrows[i][j]).sum()).collect();
        let mut ready: BTreeSet<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop_first() {
            order.push(v);
            for w in 0..n {
                let m = self.arrows[v][w];
                if m > 0 {
                    indeg[w] -= m;
                    if indeg[w] == 0 {
                        ready.insert(w);
                    }
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    pub fn opposite(&self) -> Quiver {
        let n = self.len();
        let arrows = (0..n).map(|i| (0..n).map(|j| self.arrows[j][i]).collect()).collect();
        Quiver {
            arrows,
            labels: self.labels.clone(),
        }
    }

    /// Relabels vertices: vertex `v` of `self` becomes vertex `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Quiver {
        let n = self.len();
        assert_eq!(perm.len(), n, "permutation length");
        let mut arrows = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                arrows[perm[i]][perm[j]] = self.arrows[i][j];
            }
        }
        let labels = self.labels.as_ref().map(|l| {
            let mut out = vec![String::new(); n];
            for v in 0..n {
                out[perm[v]] = l[v].clone();
            }
            out
        });
        Quiver { arrows, labels }
    }

    /// Same arrows, labels dropped.
    pub fn unlabeled(&self) -> Quiver {
        Quiver {
            arrows: self.arrows.clone(),
            labels: None,
        }
    }

    /// Full subquiver on `vertices`, in the given order.
    pub fn full_subquiver(&self, vertices: &[usize]) -> Quiver {
        let arrows = vertices
            .iter()
            .map(|&i| vertices.iter().map(|&j| self.arrows[i][j]).collect())
            .collect();
        let labels = self
            .labels
            .as_ref()
            .map(|l| vertices.iter().map(|&v| l[v].clone()).collect());
        Quiver { arrows, labels }
    }

    /// Graphviz rendering with one edge line per arrow.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("digraph \"{name}\" {{\n");
        for v in 0..self.len() {
            let _ = writeln!(out, "  {v} [label=\"{}\"];", self.label(v));
        }
        for (i, j) in self.arrow_list() {
            let _ = writeln!(out, "  {i} -> {j};");
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Serialize, Deserialize)]
struct QuiverJson {
    vertices: Vec<String>,
    arrows: Vec<(usize, usize, u32)>,
}

impl Serialize for Quiver {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut arrows = Vec::new();
        for (i, row) in self.arrows.iter().enumerate() {
            for (j, &m) in row.iter().enumerate() {
                if m > 0 {
                    arrows.push((i, j, m));
                }
            }
        }
        QuiverJson {
            vertices: (0..self.len()).map(|v| self.label(v)).collect(),
            arrows,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Quiver {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = QuiverJson::deserialize(d)?;
        let n = raw.vertices.len();
        let mut q = Quiver::empty(n);
        for (i, j, m) in raw.arrows {
            q.add_arrows(i, j, m).map_err(D::Error::custom)?;
        }
        q.with_labels(raw.vertices).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn linear3() -> Quiver {
        Quiver::from_arrows(3, &[(0, 1), (1, 2)]).unwrap()
    }

    fn three_cycle() -> Quiver {
        Quiver::from_arrows(3, &[(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn two_cycle_is_reported() {
        let q = Quiver::from_arrows(2, &[(0, 1), (1, 0)]).unwrap();
        let report = q.validate();
        assert!(!report.is_admissible());
        assert_eq!(report.two_cycles, vec![(0, 1)]);
        assert!(q.mutate(0).is_err());
    }

    #[test]
    fn mutation_at_source_reverses() {
        let q = Quiver::from_arrows(2, &[(0, 1)]).unwrap();
        assert_eq!(q.mutate(0).unwrap(), Quiver::from_arrows(2, &[(1, 0)]).unwrap());
    }

    #[test]
    fn mutation_at_middle_of_linear_a3() {
        // b = [[0,1,0],[-1,0,1],[0,-1,0]]; at k=1 the (0,2) entry gains b01*b12 = 1.
        let expected = Quiver::from_arrows(3, &[(1, 0), (2, 1), (0, 2)]).unwrap();
        assert_eq!(linear3().mutate(1).unwrap(), expected);
    }

    #[test]
    fn mutation_of_three_cycle_cancels_composite() {
        // b01 = 1, b02 = -1; at k=0: b12 + sgn(b10)*max(0, b10*b02) = 1 + (-1)*1 = 0.
        let expected = Quiver::from_arrows(3, &[(1, 0), (0, 2)]).unwrap();
        assert_eq!(three_cycle().mutate(0).unwrap(), expected);
    }

    #[test]
    fn out_of_range_vertex() {
        assert_eq!(linear3().mutate(3), Err(Error::VertexOutOfRange { vertex: 3, n: 3 }));
    }

    #[test]
    fn acyclicity() {
        assert!(linear3().is_acyclic());
        assert!(!three_cycle().is_acyclic());
        let mut looped = Quiver::empty(1);
        looped.add_arrows(0, 0, 1).unwrap();
        assert!(!looped.is_acyclic());
    }

    #[test]
    fn json_round_trip_keeps_labels() {
        let q = Quiver::from_arrows(2, &[(0, 1), (0, 1)])
            .unwrap()
            .with_labels(vec!["a".into(), "b".into()])
            .unwrap();
        let s = serde_json::to_string(&q).unwrap();
        assert_eq!(s, r#"{"vertices":["a","b"],"arrows":[[0,1,2]]}"#);
        let back: Quiver = serde_json::from_str(&s).unwrap();
        assert_eq!(back, q);
    }

    #[test]
    fn duplicate_labels_rejected() {
        let r = Quiver::empty(2).with_labels(vec!["x".into(), "x".into()]);
        assert!(r.is_err());
    }

    #[test]
    fn dot_repeats_parallel_arrows() {
        let q = Quiver::from_arrows(2, &[(0, 1), (0, 1), (0, 1)]).unwrap();
        let dot = q.to_dot("K3");
        assert_eq!(dot.matches("0 -> 1;").count(), 3);
    }
}
