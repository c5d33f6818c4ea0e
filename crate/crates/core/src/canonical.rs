//! Canonical relabeling of quivers.
//!
//! Vertices are first split into classes by iterated color refinement
//! (loops, degrees, then neighborhood multisets). Canonical positions are
//! filled class by class in increasing color order, and within that
//! constraint the relabeling minimizing the "growing square" key is chosen:
//! for positions `k = 0, 1, ...` the key appends
//! `a[k][0], a[0][k], a[k][1], a[1][k], ..., a[k][k]`.
//! The search is exhaustive with prefix pruning and twin elimination, so
//! the result is exact; it is capped to keep factorial cases out.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quiver::Quiver;

pub const DEFAULT_CANONICAL_CAP: usize = 12;

/// A quiver in canonical position together with the relabeling that produced it.
#[derive(Clone, Debug, Serialize)]
pub struct CanonicalQuiver {
    pub quiver: Quiver,
    /// `witness[v]` is the canonical position of input vertex `v`.
    pub witness: Vec<usize>,
}

impl CanonicalQuiver {
    /// Flattened canonical arrow matrix; equal keys mean isomorphic quivers.
    pub fn key(&self) -> Vec<u32> {
        self.quiver.matrix().iter().flatten().copied().collect()
    }
}

impl PartialEq for CanonicalQuiver {
    fn eq(&self, other: &Self) -> bool {
        self.quiver.matrix() == other.quiver.matrix()
    }
}

impl Eq for CanonicalQuiver {}

pub fn canonical_form(q: &Quiver) -> Result<CanonicalQuiver> {
    canonical_form_capped(q, DEFAULT_CANONICAL_CAP)
}

pub fn canonical_form_capped(q: &Quiver, cap: usize) -> Result<CanonicalQuiver> {
    let n = q.len();
    if n > cap {
        return Err(Error::CanonicalCapExceeded { n, cap });
    }
    let a: Vec<u32> = q.matrix().iter().flatten().copied().collect();
    let colors = refine_colors(n, &a);
    let mut slots: Vec<usize> = colors.clone();
    slots.sort_unstable();
    let twins = twin_table(n, &a);

    let mut search = Search {
        n,
        a: &a,
        colors: &colors,
        slots: &slots,
        twins: &twins,
        placed: Vec::with_capacity(n),
        used: vec![false; n],
        key: Vec::with_capacity(n * n),
        best: None,
    };
    search.run();
    let (_, order) = search.best.expect("search always completes one labeling");

    let mut witness = vec![0; n];
    for (pos, &v) in order.iter().enumerate() {
        witness[v] = pos;
    }
    Ok(CanonicalQuiver {
        quiver: q.unlabeled().permuted(&witness),
        witness,
    })
}

pub fn is_isomorphic(q1: &Quiver, q2: &Quiver) -> Result<bool> {
    if q1.len() != q2.len() {
        // still enforce the cap so callers see consistent errors
        canonical_form(q1)?;
        canonical_form(q2)?;
        return Ok(false);
    }
    Ok(canonical_form(q1)? == canonical_form(q2)?)
}

fn refine_colors(n: usize, a: &[u32]) -> Vec<usize> {
    let at = |i: usize, j: usize| a[i * n + j];
    let initial: Vec<(u32, Vec<u32>, Vec<u32>)> = (0..n)
        .map(|v| {
            let mut outs: Vec<u32> = (0..n).filter(|&w| w != v).map(|w| at(v, w)).collect();
            let mut ins: Vec<u32> = (0..n).filter(|&w| w != v).map(|w| at(w, v)).collect();
            outs.sort_unstable();
            ins.sort_unstable();
            (at(v, v), outs, ins)
        })
        .collect();
    let mut colors = rank(&initial);
    loop {
        let keys: Vec<(usize, Vec<(usize, u32, u32)>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<(usize, u32, u32)> = (0..n)
                    .filter(|&w| w != v && (at(v, w) > 0 || at(w, v) > 0))
                    .map(|w| (colors[w], at(v, w), at(w, v)))
                    .collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let next = rank(&keys);
        let before = count_distinct(&colors);
        if count_distinct(&next) == before {
            return next;
        }
        colors = next;
    }
}

fn rank<K: Ord + Clone>(keys: &[K]) -> Vec<usize> {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    let index: BTreeMap<&K, usize> = sorted.iter().enumerate().map(|(i, k)| (k, i)).collect();
    keys.iter().map(|k| index[k]).collect()
}

fn count_distinct(colors: &[usize]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// `twins[u][v]`: swapping `u` and `v` is an automorphism.
fn twin_table(n: usize, a: &[u32]) -> Vec<Vec<bool>> {
    let at = |i: usize, j: usize| a[i * n + j];
    let mut t = vec![vec![false; n]; n];
    for u in 0..n {
        for v in u + 1..n {
            let same = at(u, u) == at(v, v)
                && at(u, v) == at(v, u)
                && (0..n)
                    .filter(|&w| w != u && w != v)
                    .all(|w| at(u, w) == at(v, w) && at(w, u) == at(w, v));
            t[u][v] = same;
            t[v][u] = same;
        }
    }
    t
}

struct Search<'a> {
    n: usize,
    a: &'a [u32],
    colors: &'a [usize],
    slots: &'a [usize],
    twins: &'a [Vec<bool>],
    placed: Vec<usize>,
    used: Vec<bool>,
    key: Vec<u32>,
    best: Option<(Vec<u32>, Vec<usize>)>,
}

impl Search<'_> {
    fn run(&mut self) {
        let k = self.placed.len();
        if k == self.n {
            self.best = Some((self.key.clone(), self.placed.clone()));
            return;
        }
        let color = self.slots[k];
        let candidates: Vec<usize> = (0..self.n)
            .filter(|&v| !self.used[v] && self.colors[v] == color)
            .collect();
        for (idx, &v) in candidates.iter().enumerate() {
            if candidates[..idx].iter().any(|&u| self.twins[u][v]) {
                continue;
            }
            let mark = self.key.len();
            for &p in &self.placed {
                self.key.push(self.a[v * self.n + p]);
                self.key.push(self.a[p * self.n + v]);
            }
            self.key.push(self.a[v * self.n + v]);

            // the best key may have changed inside a sibling subtree, so compare the whole prefix
            let pruned = match &self.best {
                Some((best, _)) => self.key[..] > best[..self.key.len()],
                None => false,
            };
            if !pruned {
                self.used[v] = true;
                self.placed.push(v);
                self.run();
                self.placed.pop();
                self.used[v] = false;
            }
            self.key.truncate(mark);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: usize, arrows: &[(usize, usize)]) -> Quiver {
        Quiver::from_arrows(n, arrows).unwrap()
    }

    #[test]
    fn reversed_a2_is_isomorphic() {
        assert!(is_isomorphic(&q(2, &[(0, 1)]), &q(2, &[(1, 0)])).unwrap());
    }

    #[test]
    fn reversed_linear_a3_is_isomorphic() {
        assert!(is_isomorphic(&q(3, &[(0, 1), (1, 2)]), &q(3, &[(1, 0), (2, 1)])).unwrap());
    }

    #[test]
    fn sink_in_middle_differs_from_linear() {
        assert!(!is_isomorphic(&q(3, &[(0, 1), (2, 1)]), &q(3, &[(0, 1), (1, 2)])).unwrap());
    }

    #[test]
    fn linear_and_cycle_differ() {
        assert!(!is_isomorphic(&q(3, &[(0, 1), (1, 2)]), &q(3, &[(0, 1), (1, 2), (2, 0)])).unwrap());
    }

    #[test]
    fn witness_reproduces_canonical_quiver() {
        let input = q(4, &[(3, 0), (0, 2), (2, 1), (1, 3), (3, 2)]);
        let c = canonical_form(&input).unwrap();
        assert_eq!(input.unlabeled().permuted(&c.witness), c.quiver);
    }

    #[test]
    fn cap_is_enforced() {
        let big = Quiver::empty(13);
        assert_eq!(
            canonical_form(&big).unwrap_err(),
            Error::CanonicalCapExceeded { n: 13, cap: 12 }
        );
    }

    #[test]
    fn highly_symmetric_quiver_is_fast() {
        // empty quiver on 12 vertices: twin pruning collapses the search
        let c = canonical_form(&Quiver::empty(12)).unwrap();
        assert_eq!(c.quiver.arrow_count(), 0);
    }
}
