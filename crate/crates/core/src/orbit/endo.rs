//! Quiver of the endomorphism algebra of a basic object `T`, read off from
//! mesh composition: arrows `X -> Y` count `dim rad(X, Y) / rad^2(X, Y)`
//! inside `add T`.

use serde::Serialize;

use crate::error::Result;
use crate::linalg::{span_basis, Rational};
use crate::orbit::checks::TiltingCandidate;
use crate::orbit::mesh::MeshHom;
use crate::orbit::OrbitModel;
use crate::quiver::Quiver;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EndoQuiver {
    pub summands: Vec<usize>,
    pub names: Vec<String>,
    /// Arrows point along irreducible maps `X -> Y` of `add T`.
    pub quiver: Quiver,
    /// Arrows reversed: the Gabriel quiver of `End(T)` acting on the left of `Hom(T, -)`.
    pub opposite: Quiver,
    pub acyclic: bool,
}

type Space = Vec<Vec<Rational>>;

/// `dim rad_T^2(x, y)` for every `y`, with `rad_T^2` spanned by composites
/// of two radical maps through a summand of `T`.
fn rad_squared_from(mesh: &MeshHom, in_t: &[bool], x: usize) -> Vec<usize> {
    let levels = &mesh.levels[x];
    let objects = in_t.len();
    let depth = levels.dims.len();
    let mut out = vec![0; objects];
    // g[u]: paths of the current length into u that already met T at a positive position
    let mut g: Vec<Space> = vec![Vec::new(); objects];
    for l in 1..depth {
        let dims = &levels.dims[l];
        let mut next: Vec<Space> = vec![Vec::new(); objects];
        for y in 0..objects {
            if dims[y] == 0 {
                continue;
            }
            let mut through = Vec::new();
            for &a in &mesh.into[y] {
                let w = mesh.arrows[a].source;
                if g[w].is_empty() {
                    continue;
                }
                if let Some(m) = levels.map(l - 1, a) {
                    through.extend(g[w].iter().map(|v| m.mul_vec(v)));
                }
            }
            let through = span_basis(dims[y], &through);
            out[y] += through.len();
            next[y] = if in_t[y] {
                (0..dims[y])
                    .map(|i| {
                        let mut e = vec![Rational::default(); dims[y]];
                        e[i] = Rational::from_integer(1.into());
                        e
                    })
                    .collect()
            } else {
                through
            };
        }
        g = next;
    }
    out
}

/// Quiver of `End(T)` for `T` the direct sum of the candidate's summands,
/// vertices in summand order.
pub fn endo_quiver(m: &OrbitModel, mesh: &MeshHom, t: &TiltingCandidate) -> Result<EndoQuiver> {
    t.validate(m.len())?;
    let mut in_t = vec![false; m.len()];
    for &s in &t.summands {
        in_t[s] = true;
    }
    let k = t.summands.len();
    let mut q = Quiver::empty(k);
    for (i, &x) in t.summands.iter().enumerate() {
        let rad2 = rad_squared_from(mesh, &in_t, x);
        for (j, &y) in t.summands.iter().enumerate() {
            let rad = mesh.radical_power(x, y, 1) as usize;
            let irr = rad - rad2[y];
            if irr > 0 {
                q.add_arrows(i, j, irr as u32)?;
            }
        }
    }
    let names: Vec<String> = t.summands.iter().map(|&s| m.names()[s].clone()).collect();
    let quiver = q.with_labels(names.clone())?;
    Ok(EndoQuiver {
        summands: t.summands.clone(),
        opposite: quiver.opposite(),
        acyclic: quiver.is_acyclic(),
        names,
        quiver,
    })
}
