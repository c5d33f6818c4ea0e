//! Table-level checks: Calabi-Yau duality, rigidity, cluster tilting and
//! vanishing of negative extensions. They only need Hom dimensions and the
//! suspension, so they run on built models and on user-supplied tables alike.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_ENUMERATION_CAP: usize = 40;

/// A finite Hom-dimension table with a suspension permutation.
pub trait HomTable {
    fn len(&self) -> usize;
    fn hom(&self, x: usize, y: usize) -> u32;
    /// `S^times x`.
    fn suspend(&self, x: usize, times: i64) -> usize;
    fn name(&self, x: usize) -> String;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TiltingCandidate {
    pub summands: Vec<usize>,
    pub d: i64,
}

impl TiltingCandidate {
    pub fn new(summands: Vec<usize>, d: i64) -> Self {
        TiltingCandidate { summands, d }
    }

    pub(crate) fn validate(&self, len: usize) -> Result<()> {
        if self.d < 2 {
            return Err(Error::InvalidInput(format!(
                "d = {} but cluster tilting needs d >= 2",
                self.d
            )));
        }
        let mut seen = vec![false; len];
        for &s in &self.summands {
            if s >= len {
                return Err(Error::ForeignObject(s));
            }
            if std::mem::replace(&mut seen[s], true) {
                return Err(Error::InvalidInput(format!("summand {s} repeated")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyWitness {
    pub x: usize,
    pub y: usize,
    pub x_name: String,
    pub y_name: String,
    /// `dim Hom(X, Y)`.
    pub hom_xy: u32,
    /// `dim Hom(Y, S^d X)`.
    pub hom_y_sdx: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyReport {
    pub d: i64,
    pub holds: bool,
    pub pairs_checked: usize,
    pub counterexample: Option<CyWitness>,
}

/// `dim Hom(X, Y) = dim Hom(Y, S^d X)` for all ordered pairs; reports the first failure.
pub fn cy_check<T: HomTable + ?Sized>(m: &T, d: i64) -> CyReport {
    let mut pairs_checked = 0;
    for x in 0..m.len() {
        let sdx = m.suspend(x, d);
        for y in 0..m.len() {
            pairs_checked += 1;
            let (a, b) = (m.hom(x, y), m.hom(y, sdx));
            if a != b {
                return CyReport {
                    d,
                    holds: false,
                    pairs_checked,
                    counterexample: Some(CyWitness {
                        x,
                        y,
                        x_name: m.name(x),
                        y_name: m.name(y),
                        hom_xy: a,
                        hom_y_sdx: b,
                    }),
                };
            }
        }
    }
    CyReport {
        d,
        holds: true,
        pairs_checked,
        counterexample: None,
    }
}

/// `Hom(X, S^i X) = 0` for `1 <= i <= d - 1`.
pub fn is_rigid<T: HomTable + ?Sized>(m: &T, x: usize, d: i64) -> Result<bool> {
    if x >= m.len() {
        return Err(Error::ForeignObject(x));
    }
    Ok((1..d).all(|i| m.hom(x, m.suspend(x, i)) == 0))
}

fn orthogonal<T: HomTable + ?Sized>(m: &T, x: usize, y: usize, d: i64) -> bool {
    (1..d).all(|j| m.hom(x, m.suspend(y, j)) == 0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TiltingReport {
    pub cluster_tilting: bool,
    pub reason: Option<String>,
    /// Offending object: a non-rigid summand pair, or an orthogonal non-summand.
    pub witness: Option<Vec<usize>>,
}

impl TiltingReport {
    fn fail(reason: String, witness: Vec<usize>) -> Self {
        TiltingReport {
            cluster_tilting: false,
            reason: Some(reason),
            witness: Some(witness),
        }
    }
}

/// Checks that the candidate is rigid and that every object with
/// `Hom(T, S^j X) = 0` for `1 <= j <= d - 1` is already a summand.
pub fn is_cluster_tilting<T: HomTable + ?Sized>(m: &T, t: &TiltingCandidate) -> Result<TiltingReport> {
    t.validate(m.len())?;
    let d = t.d;
    for &a in &t.summands {
        for &b in &t.summands {
            if let Some(j) = (1..d).find(|&j| m.hom(a, m.suspend(b, j)) != 0) {
                return Ok(TiltingReport::fail(
                    format!("not rigid: Hom({}, S^{j} {}) != 0", m.name(a), m.name(b)),
                    vec![a, b],
                ));
            }
        }
    }
    for x in 0..m.len() {
        if t.summands.contains(&x) {
            continue;
        }
        if t.summands.iter().all(|&a| orthogonal(m, a, x, d)) {
            return Ok(TiltingReport::fail(
                format!("not maximal: {} also orthogonal", m.name(x)),
                vec![x],
            ));
        }
    }
    Ok(TiltingReport {
        cluster_tilting: true,
        reason: None,
        witness: None,
    })
}

/// All d-cluster-tilting subsets, as maximal cliques of the compatibility
/// graph on rigid objects that pass [`is_cluster_tilting`]. Summands are
/// sorted and the list is in lexicographic order.
pub fn enumerate_cluster_tilting<T: HomTable + ?Sized>(m: &T, d: i64, cap: usize) -> Result<Vec<TiltingCandidate>> {
    if m.len() > cap {
        return Err(Error::ObjectCapExceeded { n: m.len(), cap });
    }
    if d < 2 {
        return Err(Error::InvalidInput(format!("d = {d} but cluster tilting needs d >= 2")));
    }
    let rigid: Vec<usize> = (0..m.len()).filter(|&x| is_rigid(m, x, d).expect("in range")).collect();
    let compatible = |x: usize, y: usize| orthogonal(m, x, y, d) && orthogonal(m, y, x, d);
    let mut cliques = Vec::new();
    bron_kerbosch(&mut Vec::new(), rigid, Vec::new(), &compatible, &mut cliques);
    let mut out = Vec::new();
    for mut c in cliques {
        c.sort_unstable();
        let cand = TiltingCandidate::new(c, d);
        if is_cluster_tilting(m, &cand)?.cluster_tilting {
            out.push(cand);
        }
    }
    out.sort_by(|a, b| a.summands.cmp(&b.summands));
    Ok(out)
}

fn bron_kerbosch(
    r: &mut Vec<usize>,
    p: Vec<usize>,
    x: Vec<usize>,
    adj: &dyn Fn(usize, usize) -> bool,
    out: &mut Vec<Vec<usize>>,
) {
    if p.is_empty() {
        if x.is_empty() {
            out.push(r.clone());
        }
        return;
    }
    let pivot = *p
        .iter()
        .chain(&x)
        .max_by_key(|&&u| p.iter().filter(|&&v| v != u && adj(u, v)).count())
        .expect("p is nonempty");
    let mut p = p;
    let mut x = x;
    let branch: Vec<usize> = p.iter().copied().filter(|&v| v == pivot || !adj(pivot, v)).collect();
    for v in branch {
        let np = p.iter().copied().filter(|&w| w != v && adj(v, w)).collect();
        let nx = x.iter().copied().filter(|&w| w != v && adj(v, w)).collect();
        r.push(v);
        bron_kerbosch(r, np, nx, adj, out);
        r.pop();
        p.retain(|&w| w != v);
        x.push(v);
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NegativeExtWitness {
    /// Summand `T_i`.
    pub from: usize,
    /// The object `S^{-j} T_k`.
    pub to: usize,
    pub summand: usize,
    pub j: i64,
    pub dim: u32,
    pub from_name: String,
    pub to_name: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NegativeExtReport {
    pub holds: bool,
    /// A self-extension `Hom(T_i, S^{-j} T_i)` when there is one, otherwise the first nonzero pair.
    pub witness: Option<NegativeExtWitness>,
    /// Every nonzero `Hom(T_i, S^{-j} T_k)`, ordered by `j`, then `i`, then `k`.
    pub nonzero: Vec<NegativeExtWitness>,
}

/// `Hom(T_i, S^{-j} T_k) = 0` for all summands and `1 <= j <= d - 2`.
pub fn negative_ext_check<T: HomTable + ?Sized>(m: &T, t: &TiltingCandidate) -> Result<NegativeExtReport> {
    t.validate(m.len())?;
    let mut nonzero = Vec::new();
    for j in 1..=t.d - 2 {
        for &a in &t.summands {
            for &b in &t.summands {
                let to = m.suspend(b, -j);
                let dim = m.hom(a, to);
                if dim != 0 {
                    nonzero.push(NegativeExtWitness {
                        from: a,
                        to,
                        summand: b,
                        j,
                        dim,
                        from_name: m.name(a),
                        to_name: format!("S^-{j} {}", m.name(b)),
                    });
                }
            }
        }
    }
    let witness = nonzero
        .iter()
        .find(|w| w.from == w.summand)
        .or(nonzero.first())
        .cloned();
    Ok(NegativeExtReport {
        holds: nonzero.is_empty(),
        witness,
        nonzero,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::{a_alternating, a_linear};
    use crate::derived::AutoWord;
    use crate::orbit::{build_orbit_model, cluster_category};

    #[test]
    fn cy_of_a2() {
        let m = cluster_category(&a_linear(2), 2).unwrap();
        let r = cy_check(&m, 2);
        assert!(r.holds);
        assert_eq!(r.pairs_checked, 25);
        assert!(!cy_check(&m, 3).holds);
        assert!(cy_check(&m, 3).counterexample.is_some());
    }

    #[test]
    fn rigidity() {
        let a1 = cluster_category(&a_linear(1), 2).unwrap();
        assert!(is_rigid(&a1, 0, 2).unwrap());
        let a2 = cluster_category(&a_linear(2), 2).unwrap();
        assert!(is_rigid(&a2, a2.projective(0), 2).unwrap());
        assert_eq!(is_rigid(&a2, 99, 2), Err(Error::ForeignObject(99)));
    }

    #[test]
    fn a2_tilting() {
        let m = cluster_category(&a_linear(2), 2).unwrap();
        let (p1, p2) = (m.projective(0), m.projective(1));
        let slice = TiltingCandidate::new(vec![p1, p2], 2);
        assert!(is_cluster_tilting(&m, &slice).unwrap().cluster_tilting);
        let half = is_cluster_tilting(&m, &TiltingCandidate::new(vec![p1], 2)).unwrap();
        assert!(!half.cluster_tilting);
        assert_eq!(half.reason.unwrap(), "not maximal: P2 also orthogonal");
        assert!(negative_ext_check(&m, &slice).unwrap().holds);
    }

    #[test]
    fn cluster_counts() {
        let counts: Vec<usize> = (1..=4)
            .map(|n| {
                let m = cluster_category(&a_linear(n), 2).unwrap();
                enumerate_cluster_tilting(&m, 2, DEFAULT_ENUMERATION_CAP).unwrap().len()
            })
            .collect();
        assert_eq!(counts, vec![2, 5, 14, 42]);
    }

    #[test]
    fn enumeration_cap() {
        let m = build_orbit_model(&a_alternating(6), AutoWord::new(-4, 0)).unwrap();
        assert_eq!(
            enumerate_cluster_tilting(&m, 3, 10),
            Err(Error::ObjectCapExceeded { n: 24, cap: 10 })
        );
    }
}
