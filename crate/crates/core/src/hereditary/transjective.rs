//! Preprojective arithmetic for acyclic quivers of any representation type.
//!
//! An object `tau^{-a} P_i` is described by its vertex `i` and the number of
//! inverse translates `a`. Inside the preprojective component Hom and Ext
//! between such objects are determined by dimension vectors alone.

use serde::{Deserialize, Serialize};

use super::{coxeter, path_counts};
use crate::error::{Error, Result};
use crate::quiver::Quiver;

/// Largest `a` accepted for `tau^{-a} P_i`; dimension vectors grow
/// exponentially on wild quivers and stay well inside `i128` up to here.
pub const TRANSJECTIVE_MAX_STEPS: i64 = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TransjectiveObject {
    pub vertex: usize,
    /// Number of inverse Auslander-Reiten translates applied to `P_vertex`.
    pub steps: i64,
}

impl TransjectiveObject {
    pub fn new(vertex: usize, steps: i64) -> Self {
        TransjectiveObject { vertex, steps }
    }
}

/// Dimension vector of `tau^{-a} P_i`, checked to stay positive along the way.
pub fn transjective_dim(q: &Quiver, x: TransjectiveObject) -> Result<Vec<i128>> {
    if x.vertex >= q.len() {
        return Err(Error::VertexOutOfRange {
            vertex: x.vertex,
            n: q.len(),
        });
    }
    if !(0..=TRANSJECTIVE_MAX_STEPS).contains(&x.steps) {
        return Err(Error::OutsideTransjectiveRange(format!(
            "tau power {} not in 0..={TRANSJECTIVE_MAX_STEPS}",
            x.steps
        )));
    }
    let paths = path_counts(q)?;
    let phi_inv = coxeter(q)?.coxeter_inv;
    let mut v: Vec<i128> = paths[x.vertex].iter().map(|&d| d as i128).collect();
    for step in 1..=x.steps {
        v = phi_inv
            .iter()
            .map(|row| row.iter().zip(&v).map(|(&a, &b)| a as i128 * b).sum())
            .collect();
        if v.iter().any(|&d| d < 0) || v.iter().all(|&d| d == 0) {
            return Err(Error::OutsideTransjectiveRange(format!(
                "tau^-{step} P{} leaves the preprojective component",
                x.vertex
            )));
        }
    }
    Ok(v)
}

fn euler_wide(q: &Quiver, d: &[i128], e: &[i128]) -> i128 {
    let n = q.len();
    let mut s: i128 = (0..n).map(|i| d[i] * e[i]).sum();
    for i in 0..n {
        for j in 0..n {
            s -= q.arrows(i, j) as i128 * d[i] * e[j];
        }
    }
    s
}

/// `(dim Hom(X, Y), dim Ext^1(X, Y))` for preprojective `X`, `Y`.
///
/// When `X` sits in an earlier or equal slice, Ext vanishes and Hom is the
/// Euler form; otherwise Hom vanishes and Ext is minus the Euler form.
pub fn transjective_hom_ext(q: &Quiver, x: TransjectiveObject, y: TransjectiveObject) -> Result<(i128, i128)> {
    let dx = transjective_dim(q, x)?;
    let dy = transjective_dim(q, y)?;
    let chi = euler_wide(q, &dx, &dy);
    let (hom, ext) = if x.steps <= y.steps { (chi, 0) } else { (0, -chi) };
    if hom < 0 || ext < 0 {
        return Err(Error::Inconsistent(format!(
            "negative dimension from Euler form {chi} for {x:?}, {y:?}"
        )));
    }
    Ok((hom, ext))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::{a_linear, kronecker3};

    fn t(vertex: usize, steps: i64) -> TransjectiveObject {
        TransjectiveObject::new(vertex, steps)
    }

    #[test]
    fn kronecker_examples() {
        let q = kronecker3();
        assert_eq!(transjective_hom_ext(&q, t(1, 0), t(1, 0)).unwrap(), (1, 0));
        assert_eq!(transjective_hom_ext(&q, t(0, 0), t(0, 1)).unwrap(), (8, 0));
        assert_eq!(transjective_dim(&q, t(1, 1)).unwrap(), vec![3, 8]);
        assert_eq!(transjective_dim(&q, t(0, 1)).unwrap(), vec![8, 21]);
    }

    #[test]
    fn hom_from_projective_is_evaluation() {
        // Hom(P_i, M) = M_i gives an independent oracle for the slice rule
        let q = kronecker3();
        for b in 0..6 {
            for j in 0..2 {
                let dy = transjective_dim(&q, t(j, b)).unwrap();
                for i in 0..2 {
                    assert_eq!(transjective_hom_ext(&q, t(i, 0), t(j, b)).unwrap(), (dy[i], 0));
                }
            }
        }
    }

    #[test]
    fn ext_into_projective_matches_dual_hom() {
        // Ext(tau^- X, P) = D Hom(P, X) for X preprojective
        let q = kronecker3();
        for a in 0..6 {
            for i in 0..2 {
                let dx = transjective_dim(&q, t(i, a)).unwrap();
                for j in 0..2 {
                    let (hom, ext) = transjective_hom_ext(&q, t(i, a + 1), t(j, 0)).unwrap();
                    assert_eq!((hom, ext), (0, dx[j]));
                }
            }
        }
    }

    #[test]
    fn range_is_enforced() {
        let q = kronecker3();
        assert!(matches!(
            transjective_dim(&q, t(0, 21)),
            Err(Error::OutsideTransjectiveRange(_))
        ));
        assert!(matches!(
            transjective_dim(&q, t(0, -1)),
            Err(Error::OutsideTransjectiveRange(_))
        ));
        // Dynkin quivers leave the preprojective component quickly
        assert!(matches!(
            transjective_dim(&a_linear(2), t(1, 3)),
            Err(Error::OutsideTransjectiveRange(_))
        ));
    }

    #[test]
    fn twenty_steps_fit() {
        let v = transjective_dim(&kronecker3(), t(0, 20)).unwrap();
        assert!(v.iter().all(|&d| d > 0));
    }
}
