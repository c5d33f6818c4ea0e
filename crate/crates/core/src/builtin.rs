//! Named quivers: the preprojective seeds, the alternating A6 quiver, the
//! 3-Kronecker quiver and standard orientations of Dynkin diagrams.

use crate::error::{Error, Result};
use crate::quiver::Quiver;

pub const BUILTIN_SEEDS: [&str; 4] = ["a5-preprojective", "d4-preprojective", "a6-alternating", "kronecker3"];

/// Quiver of the canonical cluster-tilting subcategory for the preprojective
/// algebra of type A5 (10 vertices, 18 arrows).
pub fn a5_preprojective() -> Quiver {
    const ARROWS: [(usize, usize); 18] = [
        (1, 0),
        (0, 2),
        (2, 1),
        (3, 1),
        (1, 4),
        (4, 2),
        (2, 5),
        (4, 3),
        (6, 3),
        (3, 7),
        (5, 4),
        (7, 4),
        (4, 8),
        (8, 5),
        (5, 9),
        (7, 6),
        (8, 7),
        (9, 8),
    ];
    Quiver::from_arrows(10, &ARROWS).expect("static seed")
}

/// Same construction for type D4 (8 vertices, 13 arrows).
pub fn d4_preprojective() -> Quiver {
    const ARROWS: [(usize, usize); 13] = [
        (0, 1),
        (0, 2),
        (0, 3),
        (4, 0),
        (1, 4),
        (5, 1),
        (2, 4),
        (6, 2),
        (3, 4),
        (7, 3),
        (4, 5),
        (4, 6),
        (4, 7),
    ];
    Quiver::from_arrows(8, &ARROWS).expect("static seed")
}

/// A_n with alternating orientation: even (0-based) vertices are sinks.
///
/// For n = 6 this is `2->1, 2->3, 4->3, 4->5, 6->5` in 1-based labels,
/// which puts P1, P3, P5 on the left of the projective slice and P2, P4, P6
/// on the right.
pub fn a_alternating(n: usize) -> Quiver {
    let arrows: Vec<(usize, usize)> = (0..n.saturating_sub(1))
        .map(|i| if i % 2 == 0 { (i + 1, i) } else { (i, i + 1) })
        .collect();
    labeled(Quiver::from_arrows(n, &arrows).expect("in range"))
}

/// Generalized Kronecker quiver with three arrows `1 -> 2`.
pub fn kronecker3() -> Quiver {
    labeled(Quiver::from_arrows(2, &[(0, 1), (0, 1), (0, 1)]).expect("in range"))
}

/// A_n, linearly oriented `1 -> 2 -> ... -> n`.
pub fn a_linear(n: usize) -> Quiver {
    let arrows: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    labeled(Quiver::from_arrows(n, &arrows).expect("in range"))
}

/// D_n (n >= 4): a path `1 -> ... -> n-2` with two arms `n-2 -> n-1`, `n-2 -> n`.
pub fn d_standard(n: usize) -> Result<Quiver> {
    if n < 4 {
        return Err(Error::InvalidInput(format!("D_{n} needs n >= 4")));
    }
    let mut arrows: Vec<(usize, usize)> = (1..n - 2).map(|i| (i - 1, i)).collect();
    arrows.push((n - 3, n - 2));
    arrows.push((n - 3, n - 1));
    Ok(labeled(Quiver::from_arrows(n, &arrows)?))
}

/// E_n (n in 6..=8): a path of length n-1 with the branch attached at the third vertex.
pub fn e_standard(n: usize) -> Result<Quiver> {
    if !(6..=8).contains(&n) {
        return Err(Error::InvalidInput(format!("E_{n} needs 6 <= n <= 8")));
    }
    let mut arrows: Vec<(usize, usize)> = (1..n - 1).map(|i| (i - 1, i)).collect();
    arrows.push((2, n - 1));
    Ok(labeled(Quiver::from_arrows(n, &arrows)?))
}

/// Dynkin quiver by type letter and rank, e.g. `('a', 3)`.
pub fn dynkin(kind: char, n: usize) -> Result<Quiver> {
    match kind.to_ascii_lowercase() {
        'a' if n >= 1 => Ok(a_linear(n)),
        'd' => d_standard(n),
        'e' => e_standard(n),
        _ => Err(Error::InvalidInput(format!("unknown Dynkin type {kind}{n}"))),
    }
}

/// Every simply-laced Dynkin diagram of rank at most `max_rank`, one orientation each.
pub fn dynkin_up_to(max_rank: usize) -> Vec<(String, Quiver)> {
    let mut out = Vec::new();
    for n in 1..=max_rank {
        out.push((format!("A{n}"), a_linear(n)));
    }
    for n in 4..=max_rank {
        out.push((format!("D{n}"), d_standard(n).expect("n >= 4")));
    }
    for n in 6..=max_rank.min(8) {
        out.push((format!("E{n}"), e_standard(n).expect("6 <= n <= 8")));
    }
    out
}

pub fn builtin_seed(name: &str) -> Result<Quiver> {
    match name {
        "a5-preprojective" => Ok(a5_preprojective()),
        "d4-preprojective" => Ok(d4_preprojective()),
        "a6-alternating" => Ok(a_alternating(6)),
        "kronecker3" => Ok(kronecker3()),
        other => Err(Error::InvalidInput(format!("unknown builtin seed {other:?}"))),
    }
}

fn labeled(q: Quiver) -> Quiver {
    let labels = (1..=q.len()).map(|v| v.to_string()).collect();
    q.with_labels(labels).expect("distinct numeric labels")
}
