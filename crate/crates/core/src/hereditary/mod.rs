//! Module categories of path algebras of acyclic quivers.
//!
//! Conventions: a representation is covariant, so an arrow `a: i -> j`
//! carries a matrix `M_a` of shape `dims[j] x dims[i]`. The indecomposable
//! projective `P_i` has `dim P_i(j)` = number of paths `i -> j`, the
//! injective `I_i` has `dim I_i(j)` = number of paths `j -> i`.

mod rep;
mod transjective;

pub use rep::{ext_dim, hom_dim, indecomposable_rep, reflect_at_sink, reflect_at_source, Representation};
pub use transjective::{transjective_dim, transjective_hom_ext, TransjectiveObject, TRANSJECTIVE_MAX_STEPS};

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{rat, QMatrix};
use crate::quiver::Quiver;

/// Dimension vector indexed by vertices. Signed so Coxeter images can be
/// inspected before they are known to be positive.
pub type DimVector = Vec<i64>;

/// `paths[i][j]` = number of paths from `i` to `j`, trivial paths included.
pub fn path_counts(q: &Quiver) -> Result<Vec<Vec<i64>>> {
    let order = q.topological_order().ok_or(Error::Cyclic)?;
    let n = q.len();
    let mut paths = vec![vec![0i64; n]; n];
    for i in 0..n {
        paths[i][i] = 1;
        // walk targets in topological order so every predecessor is final
        for &j in &order {
            if paths[i][j] == 0 {
                continue;
            }
            for k in 0..n {
                let m = q.arrows(j, k) as i64;
                if m > 0 {
                    paths[i][k] = paths[i][k]
                        .checked_add(paths[i][j] * m)
                        .ok_or_else(|| Error::Inconsistent("path count overflow".into()))?;
                }
            }
        }
    }
    Ok(paths)
}

pub fn projective_dims(q: &Quiver, i: usize) -> Result<DimVector> {
    check_vertex(q, i)?;
    Ok(path_counts(q)?[i].clone())
}

pub fn injective_dims(q: &Quiver, i: usize) -> Result<DimVector> {
    check_vertex(q, i)?;
    Ok(path_counts(q)?.iter().map(|row| row[i]).collect())
}

/// `<d, e> = sum_i d_i e_i - sum_{a: i -> j} d_i e_j`.
pub fn euler_form(q: &Quiver, d: &[i64], e: &[i64]) -> Result<i64> {
    if !q.is_acyclic() {
        return Err(Error::Cyclic);
    }
    check_len(q, d)?;
    check_len(q, e)?;
    Ok(euler_raw(q, d, e))
}

pub(crate) fn euler_raw(q: &Quiver, d: &[i64], e: &[i64]) -> i64 {
    let n = q.len();
    let mut s: i64 = (0..n).map(|i| d[i] * e[i]).sum();
    for i in 0..n {
        for j in 0..n {
            s -= q.arrows(i, j) as i64 * d[i] * e[j];
        }
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerData {
    /// Column `i` is `dim P_i`.
    pub cartan: Vec<Vec<i64>>,
    /// `Phi = -C^T C^{-1}`; sends `dim P_i` to `-dim I_i`.
    pub coxeter: Vec<Vec<i64>>,
    pub coxeter_inv: Vec<Vec<i64>>,
}

impl EulerData {
    pub fn apply(&self, v: &[i64]) -> DimVector {
        mat_vec(&self.coxeter, v)
    }

    pub fn apply_inv(&self, v: &[i64]) -> DimVector {
        mat_vec(&self.coxeter_inv, v)
    }
}

pub fn coxeter(q: &Quiver) -> Result<EulerData> {
    let paths = path_counts(q)?;
    let n = q.len();
    let cartan: Vec<Vec<i64>> = (0..n).map(|j| (0..n).map(|i| paths[i][j]).collect()).collect();
    let c = QMatrix::from_i64(n, n, &cartan.concat());
    let c_inv = c
        .inverse()
        .ok_or_else(|| Error::Inconsistent("Cartan matrix is singular".into()))?;
    let ct = c.transpose();
    let phi = ct.mul(&c_inv);
    let phi_inv = c.mul(&c_inv.transpose());
    Ok(EulerData {
        cartan,
        coxeter: negated_integer(&phi)?,
        coxeter_inv: negated_integer(&phi_inv)?,
    })
}

fn negated_integer(m: &QMatrix) -> Result<Vec<Vec<i64>>> {
    (0..m.rows())
        .map(|r| {
            (0..m.cols())
                .map(|c| {
                    let x = &m[(r, c)];
                    if !x.is_integer() {
                        return Err(Error::Inconsistent("non-integral Coxeter entry".into()));
                    }
                    i64::try_from(-x.to_integer()).map_err(|_| Error::Inconsistent("Coxeter entry overflow".into()))
                })
                .collect()
        })
        .collect()
}

fn mat_vec(m: &[Vec<i64>], v: &[i64]) -> DimVector {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// Symmetrized adjacency: number of edges between `i` and `j` in the underlying graph.
pub(crate) fn edges(q: &Quiver, i: usize, j: usize) -> i64 {
    (q.arrows(i, j) + q.arrows(j, i)) as i64
}

/// True iff the Tits form is positive definite, i.e. every connected
/// component of the underlying graph is of type A, D or E.
pub fn is_dynkin(q: &Quiver) -> bool {
    let n = q.len();
    let mut m = QMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let v = if i == j {
                2 - 2 * q.arrows(i, i) as i64
            } else {
                -edges(q, i, j)
            };
            m[(i, j)] = rat(v);
        }
    }
    // symmetric Gaussian elimination; positive definite iff all pivots are positive
    for k in 0..n {
        if m[(k, k)] <= rat(0) {
            return false;
        }
        for r in k + 1..n {
            if m[(r, k)] == rat(0) {
                continue;
            }
            let f = &m[(r, k)] / &m[(k, k)];
            for c in k..n {
                let sub = &f * &m[(k, c)];
                m[(r, c)] -= sub;
            }
        }
    }
    true
}

/// Simple reflection `s_k` on the root lattice of the underlying graph.
pub fn reflect(q: &Quiver, k: usize, x: &[i64]) -> DimVector {
    let mut y = x.to_vec();
    let s: i64 = (0..q.len()).filter(|&j| j != k).map(|j| edges(q, k, j) * x[j]).sum();
    y[k] = s - x[k];
    y
}

/// All positive roots, sorted by height and then so that `e_0` precedes `e_1`.
pub fn positive_roots(q: &Quiver) -> Result<Vec<DimVector>> {
    if !is_dynkin(q) {
        return Err(Error::InfiniteType);
    }
    let n = q.len();
    let mut seen: BTreeSet<DimVector> = BTreeSet::new();
    let mut queue: VecDeque<DimVector> = VecDeque::new();
    for k in 0..n {
        let mut e = vec![0; n];
        e[k] = 1;
        seen.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(x) = queue.pop_front() {
        for k in 0..n {
            let y = reflect(q, k, &x);
            if y.iter().all(|&v| v >= 0) && !seen.contains(&y) {
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    let mut roots: Vec<DimVector> = seen.into_iter().collect();
    roots.sort_by_key(|r| (r.iter().sum::<i64>(), std::cmp::Reverse(r.clone())));
    Ok(roots)
}

pub fn is_positive_root(q: &Quiver, v: &[i64]) -> Result<bool> {
    Ok(positive_roots(q)?.iter().any(|r| r == v))
}

/// Dimension vector of `tau M`; `None` when `M` is projective.
pub fn tau_module(q: &Quiver, root: &[i64]) -> Result<Option<DimVector>> {
    let roots = positive_roots(q)?;
    if !roots.iter().any(|r| r == root) {
        return Err(Error::NotARoot(root.to_vec()));
    }
    let paths = path_counts(q)?;
    if paths.iter().any(|p| p.as_slice() == root) {
        return Ok(None);
    }
    Ok(Some(coxeter(q)?.apply(root)))
}

/// Dimension vector of `tau^- M`; `None` when `M` is injective.
pub fn tau_inv_module(q: &Quiver, root: &[i64]) -> Result<Option<DimVector>> {
    let roots = positive_roots(q)?;
    if !roots.iter().any(|r| r == root) {
        return Err(Error::NotARoot(root.to_vec()));
    }
    let n = q.len();
    let paths = path_counts(q)?;
    if (0..n).any(|i| (0..n).all(|j| paths[j][i] == root[j])) {
        return Ok(None);
    }
    Ok(Some(coxeter(q)?.apply_inv(root)))
}

fn check_vertex(q: &Quiver, v: usize) -> Result<()> {
    if v >= q.len() {
        return Err(Error::VertexOutOfRange { vertex: v, n: q.len() });
    }
    Ok(())
}

fn check_len(q: &Quiver, d: &[i64]) -> Result<()> {
    if d.len() != q.len() {
        return Err(Error::ShapeMismatch(format!(
            "dimension vector of length {} for {} vertices",
            d.len(),
            q.len()
        )));
    }
    Ok(())
}
