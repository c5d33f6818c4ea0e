//! The bounded derived category of a Dynkin quiver, object by object.
//!
//! Every indecomposable is a shifted module `(M, n)`. It also has a unique
//! coordinate `(c, v)` in the translation quiver `ZQ`, meaning
//! `tau^{-c} P_v`; `tau` moves one step left and the suspension acts as
//! `(c, v) -> (c + m, rho(v))` for per-vertex constants. All automorphisms
//! `tau^a S^b` are evaluated on coordinates.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hereditary::{coxeter, ext_dim, hom_dim, indecomposable_rep, path_counts, positive_roots, DimVector};
use crate::quiver::Quiver;

/// Point `tau^{-c} P_v` of `ZQ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Zq {
    pub c: i64,
    pub v: usize,
}

impl Zq {
    pub fn new(c: i64, v: usize) -> Self {
        Zq { c, v }
    }
}

/// Indecomposable `(M, n)`: module number `root` (an index into
/// [`DerivedCategory::roots`]) placed in degree `-n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DerivedObject {
    pub root: usize,
    pub shift: i64,
}

/// The automorphism `tau^tau S^shift`. The Serre functor is `nu = tau S`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AutoWord {
    pub tau: i64,
    pub shift: i64,
}

impl AutoWord {
    pub const TAU: AutoWord = AutoWord { tau: 1, shift: 0 };
    pub const SUSPENSION: AutoWord = AutoWord { tau: 0, shift: 1 };
    pub const SERRE: AutoWord = AutoWord { tau: 1, shift: 1 };

    pub fn new(tau: i64, shift: i64) -> Self {
        AutoWord { tau, shift }
    }

    /// `nu^{-1} S^d = tau^{-1} S^{d-1}`, the automorphism defining the d-cluster category.
    pub fn cluster(d: i64) -> Self {
        AutoWord { tau: -1, shift: d - 1 }
    }

    /// Composite `self . other` (the automorphisms commute).
    pub fn compose(self, other: AutoWord) -> Self {
        AutoWord {
            tau: self.tau + other.tau,
            shift: self.shift + other.shift,
        }
    }

    pub fn pow(self, p: i64) -> Self {
        AutoWord {
            tau: self.tau * p,
            shift: self.shift * p,
        }
    }

    pub fn inverse(self) -> Self {
        self.pow(-1)
    }
}

#[derive(Clone, Debug)]
pub struct DerivedCategory {
    quiver: Quiver,
    roots: Vec<DimVector>,
    hom: Vec<Vec<u32>>,
    ext: Vec<Vec<u32>>,
    projective: Vec<usize>,
    injective: Vec<usize>,
    tau: Vec<Option<usize>>,
    tau_inv: Vec<Option<usize>>,
    /// `columns[v][c]` is the module `tau^{-c} P_v`.
    columns: Vec<Vec<usize>>,
    module_coord: Vec<Zq>,
    /// `S (c, v) = (c + suspend[v].0, suspend[v].1)`.
    suspend: Vec<(i64, usize)>,
    desuspend: Vec<(i64, usize)>,
}

impl DerivedCategory {
    pub fn new(q: &Quiver) -> Result<Self> {
        let roots = positive_roots(q)?;
        let n = q.len();
        let index: HashMap<&DimVector, usize> = roots.iter().enumerate().map(|(i, r)| (r, i)).collect();
        let paths = path_counts(q)?;
        let find = |v: &DimVector| {
            index
                .get(v)
                .copied()
                .ok_or_else(|| Error::Inconsistent(format!("{v:?} is not a root")))
        };
        let projective: Vec<usize> = (0..n).map(|i| find(&paths[i])).collect::<Result<_>>()?;
        let injective: Vec<usize> = (0..n)
            .map(|i| find(&(0..n).map(|j| paths[j][i]).collect()))
            .collect::<Result<_>>()?;

        let euler = coxeter(q)?;
        let mut tau = vec![None; roots.len()];
        let mut tau_inv = vec![None; roots.len()];
        for (r, root) in roots.iter().enumerate() {
            if !projective.contains(&r) {
                let t = find(&euler.apply(root))?;
                tau[r] = Some(t);
                tau_inv[t] = Some(r);
            }
        }

        let mut columns = vec![Vec::new(); n];
        let mut module_coord = vec![Zq::new(0, 0); roots.len()];
        let mut desuspend = vec![(0, 0); n];
        let mut suspend = vec![(0, 0); n];
        for v in 0..n {
            let mut m = projective[v];
            loop {
                module_coord[m] = Zq::new(columns[v].len() as i64, v);
                columns[v].push(m);
                match tau_inv[m] {
                    Some(next) => m = next,
                    None => break,
                }
            }
            // tau^- (I_k, 0) = (P_k, 1): the column of P_v continues as that of S P_k
            let k = injective
                .iter()
                .position(|&i| i == m)
                .expect("orbit ends at an injective");
            suspend[k] = (columns[v].len() as i64, v);
            desuspend[v] = (-(columns[v].len() as i64), k);
        }
        if columns.iter().map(Vec::len).sum::<usize>() != roots.len() {
            return Err(Error::Inconsistent(
                "translation orbits do not cover all modules".into(),
            ));
        }

        let reps = roots
            .iter()
            .map(|r| indecomposable_rep(q, r))
            .collect::<Result<Vec<_>>>()?;
        let mut hom = vec![vec![0; roots.len()]; roots.len()];
        let mut ext = vec![vec![0; roots.len()]; roots.len()];
        for (a, ra) in reps.iter().enumerate() {
            for (b, rb) in reps.iter().enumerate() {
                hom[a][b] = hom_dim(q, ra, rb)? as u32;
                ext[a][b] = ext_dim(q, ra, rb)? as u32;
            }
        }

        Ok(DerivedCategory {
            quiver: q.clone(),
            roots,
            hom,
            ext,
            projective,
            injective,
            tau,
            tau_inv,
            columns,
            module_coord,
            suspend,
            desuspend,
        })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn roots(&self) -> &[DimVector] {
        &self.roots
    }

    pub fn root_index(&self, root: &[i64]) -> Option<usize> {
        self.roots.iter().position(|r| r == root)
    }

    pub fn projective(&self, v: usize) -> usize {
        self.projective[v]
    }

    pub fn injective(&self, v: usize) -> usize {
        self.injective[v]
    }

    pub fn module_hom(&self, a: usize, b: usize) -> u32 {
        self.hom[a][b]
    }

    pub fn module_ext(&self, a: usize, b: usize) -> u32 {
        self.ext[a][b]
    }

    /// `(slice, vertex)` of a module: it is `tau^{-slice} P_vertex`.
    pub fn module_slice(&self, root: usize) -> (i64, usize) {
        let z = self.module_coord[root];
        (z.c, z.v)
    }

    /// Length of the translation orbit of `P_v` inside the module category.
    pub fn column_len(&self, v: usize) -> usize {
        self.columns[v].len()
    }

    pub fn suspend_zq(&self, p: Zq, times: i64) -> Zq {
        let mut p = p;
        for _ in 0..times.max(0) {
            let (dc, v) = self.suspend[p.v];
            p = Zq::new(p.c + dc, v);
        }
        for _ in 0..(-times).max(0) {
            let (dc, v) = self.desuspend[p.v];
            p = Zq::new(p.c + dc, v);
        }
        p
    }

    pub fn auto_zq(&self, w: AutoWord, p: Zq) -> Zq {
        let s = self.suspend_zq(p, w.shift);
        Zq::new(s.c - w.tau, s.v)
    }

    pub fn zq(&self, x: DerivedObject) -> Zq {
        self.suspend_zq(self.module_coord[x.root], x.shift)
    }

    pub fn object_at(&self, p: Zq) -> DerivedObject {
        let mut p = p;
        let mut shift = 0;
        while p.c >= self.columns[p.v].len() as i64 {
            p = self.suspend_zq(p, -1);
            shift += 1;
        }
        while p.c < 0 {
            p = self.suspend_zq(p, 1);
            shift -= 1;
        }
        DerivedObject {
            root: self.columns[p.v][p.c as usize],
            shift,
        }
    }

    pub fn apply_auto(&self, w: AutoWord, x: DerivedObject) -> DerivedObject {
        self.object_at(self.auto_zq(w, self.zq(x)))
    }

    /// `tau` by the defining rule: module translate, or `tau (P_j, n) = (I_j, n - 1)`.
    pub fn tau_rule(&self, x: DerivedObject) -> DerivedObject {
        match self.tau[x.root] {
            Some(t) => DerivedObject {
                root: t,
                shift: x.shift,
            },
            None => {
                let j = self.projective.iter().position(|&p| p == x.root).expect("projective");
                DerivedObject {
                    root: self.injective[j],
                    shift: x.shift - 1,
                }
            }
        }
    }

    pub fn tau_inv_rule(&self, x: DerivedObject) -> DerivedObject {
        match self.tau_inv[x.root] {
            Some(t) => DerivedObject {
                root: t,
                shift: x.shift,
            },
            None => {
                let j = self.injective.iter().position(|&i| i == x.root).expect("injective");
                DerivedObject {
                    root: self.projective[j],
                    shift: x.shift + 1,
                }
            }
        }
    }

    /// `dim Hom(X, Y)`: Hom of modules in equal degree, Ext^1 one degree apart, else 0.
    pub fn hom_d(&self, x: DerivedObject, y: DerivedObject) -> u32 {
        match y.shift - x.shift {
            0 => self.hom[x.root][y.root],
            1 => self.ext[x.root][y.root],
            _ => 0,
        }
    }

    pub fn hom_zq(&self, x: Zq, y: Zq) -> u32 {
        self.hom_d(self.object_at(x), self.object_at(y))
    }

    /// Arrow targets out of `p` in `ZQ`, repeated by multiplicity.
    pub fn zq_successors(&self, p: Zq) -> Vec<Zq> {
        let q = &self.quiver;
        let mut out = Vec::new();
        for u in 0..q.len() {
            for _ in 0..q.arrows(u, p.v) {
                out.push(Zq::new(p.c, u));
            }
        }
        for w in 0..q.len() {
            for _ in 0..q.arrows(p.v, w) {
                out.push(Zq::new(p.c + 1, w));
            }
        }
        out
    }

    /// Arrow sources into `p` in `ZQ`, repeated by multiplicity; these are
    /// exactly the successors of `tau p`, in the same order.
    pub fn zq_predecessors(&self, p: Zq) -> Vec<Zq> {
        let q = &self.quiver;
        let mut out = Vec::new();
        for u in 0..q.len() {
            for _ in 0..q.arrows(u, p.v) {
                out.push(Zq::new(p.c - 1, u));
            }
        }
        for w in 0..q.len() {
            for _ in 0..q.arrows(p.v, w) {
                out.push(Zq::new(p.c, w));
            }
        }
        out
    }

    /// Short display name: `P2`, `I1[-1]`, `(0,1,1)[2]`.
    pub fn name(&self, x: DerivedObject) -> String {
        let base = if let Some(v) = self.projective.iter().position(|&p| p == x.root) {
            format!("P{}", self.quiver.label(v))
        } else if let Some(v) = self.injective.iter().position(|&i| i == x.root) {
            format!("I{}", self.quiver.label(v))
        } else {
            let parts: Vec<String> = self.roots[x.root].iter().map(i64::to_string).collect();
            format!("({})", parts.join(","))
        };
        if x.shift == 0 {
            base
        } else {
            format!("{base}[{}]", x.shift)
        }
    }

    /// The full translation subquiver of `ZQ` on the slices `0..slices`.
    pub fn ar_window(&self, slices: usize) -> Result<ArWindow> {
        if slices == 0 {
            return Err(Error::InvalidInput("an AR window needs at least one slice".into()));
        }
        let n = self.quiver.len();
        let mut vertices = Vec::with_capacity(slices * n);
        for c in 0..slices as i64 {
            for v in 0..n {
                let p = Zq::new(c, v);
                let object = self.object_at(p);
                vertices.push(ArVertex {
                    zq: p,
                    object,
                    name: self.name(object),
                    dims: self.roots[object.root].clone(),
                });
            }
        }
        let position: HashMap<Zq, usize> = vertices.iter().enumerate().map(|(i, x)| (x.zq, i)).collect();
        let mut arrows = Vec::new();
        for (i, x) in vertices.iter().enumerate() {
            for s in self.zq_successors(x.zq) {
                if let Some(&j) = position.get(&s) {
                    arrows.push((i, j));
                }
            }
        }
        let tau = vertices
            .iter()
            .map(|x| position.get(&Zq::new(x.zq.c - 1, x.zq.v)).copied())
            .collect();
        Ok(ArWindow { vertices, arrows, tau })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ArVertex {
    pub zq: Zq,
    pub object: DerivedObject,
    pub name: String,
    pub dims: DimVector,
}

/// A finite piece of the Auslander-Reiten quiver.
#[derive(Clone, Debug, Serialize)]
pub struct ArWindow {
    pub vertices: Vec<ArVertex>,
    pub arrows: Vec<(usize, usize)>,
    /// Index of the translate of each vertex, when it lies in the window.
    pub tau: Vec<Option<usize>>,
}

impl ArWindow {
    /// Graphviz text; vertices of one slice share a rank.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("digraph \"{name}\" {{\n  rankdir=LR;\n");
        for (i, x) in self.vertices.iter().enumerate() {
            let _ = writeln!(out, "  {i} [label=\"{}\"];", x.name);
        }
        let mut slices: Vec<i64> = self.vertices.iter().map(|x| x.zq.c).collect();
        slices.dedup();
        for c in slices {
            let members: Vec<String> = self
                .vertices
                .iter()
                .enumerate()
                .filter(|(_, x)| x.zq.c == c)
                .map(|(i, _)| i.to_string())
                .collect();
            let _ = writeln!(out, "  {{ rank=same; {}; }}", members.join("; "));
        }
        for &(i, j) in &self.arrows {
            let _ = writeln!(out, "  {i} -> {j};");
        }
        out.push_str("}\n");
        out
    }
}
