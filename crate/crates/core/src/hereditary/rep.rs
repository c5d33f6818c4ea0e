use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{euler_raw, positive_roots, reflect, DimVector};
use crate::error::{Error, Result};
use crate::linalg::{integer_rank, QMatrix, Rational};
use crate::quiver::Quiver;

/// A representation: one vector space per vertex and one matrix per arrow.
///
/// `maps[(i, j)]` holds the `arrows(i, j)` parallel maps, each of shape
/// `dims[j] x dims[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    pub dims: Vec<usize>,
    pub maps: BTreeMap<(usize, usize), Vec<QMatrix>>,
}

impl Representation {
    pub fn zero(q: &Quiver) -> Self {
        let n = q.len();
        let mut maps = BTreeMap::new();
        for i in 0..n {
            for j in 0..n {
                let m = q.arrows(i, j) as usize;
                if m > 0 {
                    maps.insert((i, j), vec![QMatrix::zeros(0, 0); m]);
                }
            }
        }
        Representation { dims: vec![0; n], maps }
    }

    pub fn simple(q: &Quiver, k: usize) -> Self {
        let mut rep = Representation::zero(q);
        rep.dims[k] = 1;
        rep.reshape_zero();
        rep
    }

    pub fn dim_vector(&self) -> DimVector {
        self.dims.iter().map(|&d| d as i64).collect()
    }

    /// Checks that the maps match `q`'s arrows and `dims`.
    pub fn check(&self, q: &Quiver) -> Result<()> {
        let n = q.len();
        if self.dims.len() != n {
            return Err(Error::ShapeMismatch(format!(
                "representation on {} vertices for a quiver with {n}",
                self.dims.len()
            )));
        }
        for i in 0..n {
            for j in 0..n {
                let want = q.arrows(i, j) as usize;
                let have = self.maps.get(&(i, j)).map_or(0, Vec::len);
                if want != have {
                    return Err(Error::ShapeMismatch(format!(
                        "{have} maps for {want} arrows {i} -> {j}"
                    )));
                }
                for m in self.maps.get(&(i, j)).into_iter().flatten() {
                    if (m.rows(), m.cols()) != (self.dims[j], self.dims[i]) {
                        return Err(Error::ShapeMismatch(format!(
                            "map {i} -> {j} is {}x{}, expected {}x{}",
                            m.rows(),
                            m.cols(),
                            self.dims[j],
                            self.dims[i]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn reshape_zero(&mut self) {
        for (&(i, j), ms) in self.maps.iter_mut() {
            for m in ms.iter_mut() {
                *m = QMatrix::zeros(self.dims[j], self.dims[i]);
            }
        }
    }
}

/// Quiver with every arrow at `k` reversed.
fn reverse_at(q: &Quiver, k: usize) -> Quiver {
    let n = q.len();
    let mut m = q.matrix().to_vec();
    for j in 0..n {
        if j != k {
            m[k][j] = q.arrows(j, k);
            m[j][k] = q.arrows(k, j);
        }
    }
    let out = Quiver::from_matrix(m).expect("square");
    match q.labels() {
        Some(l) => out.with_labels(l.to_vec()).expect("labels already validated"),
        None => out,
    }
}

/// Reflection functor `S+` at a sink `k`: the new space is the kernel of the
/// sum of the incoming maps.
pub fn reflect_at_sink(q: &Quiver, rep: &Representation, k: usize) -> (Quiver, Representation) {
    let n = q.len();
    let incoming: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..q.arrows(i, k) as usize).map(move |t| (i, t)))
        .collect();
    let total: usize = incoming.iter().map(|&(i, _)| rep.dims[i]).sum();
    let mut stacked = QMatrix::zeros(rep.dims[k], total);
    let mut offset = 0;
    for &(i, t) in &incoming {
        let m = &rep.maps[&(i, k)][t];
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                stacked[(r, offset + c)] = m[(r, c)].clone();
            }
        }
        offset += rep.dims[i];
    }
    let kernel = stacked.kernel();
    let new_q = reverse_at(q, k);
    let mut out = Representation::zero(&new_q);
    out.dims = rep.dims.clone();
    out.dims[k] = kernel.cols();
    for (&(i, j), ms) in &rep.maps {
        if i != k && j != k {
            out.maps.insert((i, j), ms.clone());
        }
    }
    let mut offset = 0;
    for &(i, t) in &incoming {
        let block = kernel.row_block(offset, rep.dims[i]);
        out.maps.get_mut(&(k, i)).expect("reversed arrow")[t] = block;
        offset += rep.dims[i];
    }
    (new_q, out)
}

/// Reflection functor `S-` at a source `k`: the new space is the cokernel of
/// the stacked outgoing maps.
pub fn reflect_at_source(q: &Quiver, rep: &Representation, k: usize) -> (Quiver, Representation) {
    let n = q.len();
    let outgoing: Vec<(usize, usize)> = (0..n)
        .flat_map(|j| (0..q.arrows(k, j) as usize).map(move |t| (j, t)))
        .collect();
    let total: usize = outgoing.iter().map(|&(j, _)| rep.dims[j]).sum();
    let mut stacked = QMatrix::zeros(total, rep.dims[k]);
    let mut offset = 0;
    for &(j, t) in &outgoing {
        let m = &rep.maps[&(k, j)][t];
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                stacked[(offset + r, c)] = m[(r, c)].clone();
            }
        }
        offset += rep.dims[j];
    }
    let quotient = stacked.cokernel_map();
    let new_q = reverse_at(q, k);
    let mut out = Representation::zero(&new_q);
    out.dims = rep.dims.clone();
    out.dims[k] = quotient.rows();
    for (&(i, j), ms) in &rep.maps {
        if i != k && j != k {
            out.maps.insert((i, j), ms.clone());
        }
    }
    let mut offset = 0;
    for &(j, t) in &outgoing {
        let block = quotient.column_block(offset, rep.dims[j]);
        out.maps.get_mut(&(j, k)).expect("reversed arrow")[t] = block;
        offset += rep.dims[j];
    }
    (new_q, out)
}

/// The indecomposable representation with dimension vector `root`, built
/// with reflection functors from a simple.
pub fn indecomposable_rep(q: &Quiver, root: &[i64]) -> Result<Representation> {
    let roots = positive_roots(q)?;
    if !roots.iter().any(|r| r == root) {
        return Err(Error::NotARoot(root.to_vec()));
    }
    let n = q.len();
    let mut order = q.topological_order().ok_or(Error::Cyclic)?;
    order.reverse();

    let mut alpha: DimVector = root.to_vec();
    let mut current = q.clone();
    let mut reflected = Vec::new();
    let limit = 2 * n * (roots.len() + 1);
    let mut step = 0;
    let start = loop {
        let k = order[step % n];
        if alpha.iter().enumerate().all(|(v, &x)| x == i64::from(v == k)) {
            break k;
        }
        step += 1;
        if step > limit {
            return Err(Error::Inconsistent(format!(
                "reflection sequence for {root:?} did not end"
            )));
        }
        debug_assert!(current.is_sink(k));
        alpha = reflect(&current, k, &alpha);
        if alpha.iter().any(|&x| x < 0) {
            return Err(Error::Inconsistent(format!(
                "reflection left the positive cone for {root:?}"
            )));
        }
        reflected.push(k);
        current = reverse_at(&current, k);
    };

    let mut rep = Representation::simple(&current, start);
    for &k in reflected.iter().rev() {
        let (prev, r) = reflect_at_source(&current, &rep, k);
        current = prev;
        rep = r;
    }
    if rep.dim_vector() != root {
        return Err(Error::Inconsistent(format!(
            "reflection functors produced {:?} instead of {root:?}",
            rep.dims
        )));
    }
    if rep.dims.iter().all(|&d| d <= 1) {
        normalize_thin(&mut rep);
    }
    Ok(rep)
}

/// Rescales a thin representation so that every map on a spanning forest of
/// its support is `1`.
fn normalize_thin(rep: &mut Representation) {
    let n = rep.dims.len();
    let mut scale: Vec<Option<Rational>> = vec![None; n];
    for root in 0..n {
        if rep.dims[root] == 0 || scale[root].is_some() {
            continue;
        }
        scale[root] = Some(Rational::one());
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for (&(i, j), ms) in &rep.maps {
                let (other, forward) = if i == v {
                    (j, true)
                } else if j == v {
                    (i, false)
                } else {
                    continue;
                };
                if scale[other].is_some() || rep.dims[other] == 0 {
                    continue;
                }
                let Some(m) = ms.iter().find(|m| !m[(0, 0)].is_zero()) else {
                    continue;
                };
                let x = m[(0, 0)].clone();
                let sv = scale[v].clone().expect("visited");
                // new map = s_j * x / s_i must be 1
                scale[other] = Some(if forward { sv / x } else { sv * x });
                stack.push(other);
            }
        }
    }
    for (&(i, j), ms) in rep.maps.iter_mut() {
        if let (Some(si), Some(sj)) = (&scale[i], &scale[j]) {
            for m in ms.iter_mut() {
                let v = sj * &m[(0, 0)] / si;
                m[(0, 0)] = v;
            }
        }
    }
}

/// Dimension of `Hom(M, N)`: unknowns minus the rank of the intertwiner
/// system `f_j M_a - N_a f_i = 0`.
pub fn hom_dim(q: &Quiver, m: &Representation, n: &Representation) -> Result<usize> {
    m.check(q)?;
    n.check(q)?;
    let verts = q.len();
    let mut offset = vec![0; verts + 1];
    for v in 0..verts {
        offset[v + 1] = offset[v] + n.dims[v] * m.dims[v];
    }
    let unknowns = offset[verts];
    let var = |v: usize, r: usize, c: usize| offset[v] + r * m.dims[v] + c;

    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for (&(i, j), maps_m) in &m.maps {
        for (ma, na) in maps_m.iter().zip(&n.maps[&(i, j)]) {
            for r in 0..n.dims[j] {
                for c in 0..m.dims[i] {
                    let mut row = vec![Rational::zero(); unknowns];
                    for s in 0..m.dims[j] {
                        row[var(j, r, s)] += &ma[(s, c)];
                    }
                    for t in 0..n.dims[i] {
                        row[var(i, t, c)] -= &na[(r, t)];
                    }
                    if row.iter().any(|x| !x.is_zero()) {
                        rows.push(clear_denominators(&row));
                    }
                }
            }
        }
    }
    Ok(unknowns - integer_rank(rows))
}

fn clear_denominators(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| (x * &lcm).to_integer()).collect()
}

/// `dim Ext^1(M, N) = dim Hom(M, N) - <dim M, dim N>`.
pub fn ext_dim(q: &Quiver, m: &Representation, n: &Representation) -> Result<usize> {
    if !q.is_acyclic() {
        return Err(Error::Cyclic);
    }
    let hom = hom_dim(q, m, n)? as i64;
    let ext = hom - euler_raw(q, &m.dim_vector(), &n.dim_vector());
    usize::try_from(ext)
        .map_err(|_| Error::Inconsistent(format!("negative Ext dimension {ext} for {:?}, {:?}", m.dims, n.dims)))
}
