//! Acceptance suite: one PASS/FAIL line per criterion, exact arithmetic throughout.

use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use quivercat::builtin::{a5_preprojective, a_alternating, a_linear, d4_preprojective, dynkin_up_to};
use quivercat::derived::AutoWord;
use quivercat::orbit::{
    build_orbit_model, cluster_category, cy_check, endo_quiver, enumerate_cluster_tilting, is_cluster_tilting,
    kronecker_rigidity_survey, mesh_hom, negative_ext_check, recognize_cluster_category, HomTable, Hypothesis,
    OrbitModel, RecognitionInput, TiltingCandidate, DEFAULT_ENUMERATION_CAP,
};
use quivercat::{find_acyclic, mutation_class, Quiver, SearchLimits};

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn a6_model() -> Result<OrbitModel, String> {
    build_orbit_model(&a_alternating(6), AutoWord::new(-4, 0)).map_err(err)
}

fn projectives(m: &OrbitModel, n: usize) -> Vec<usize> {
    (0..n).map(|v| m.projective(v)).collect()
}

fn a6_example() -> Outcome {
    let m = a6_model()?;
    ensure!(m.len() == 24, "{} objects, expected 24", m.len());

    let d = m.derived();
    let f = m.auto();
    for &x in m.objects() {
        let lhs = d.apply_auto(f.pow(2), x);
        let rhs = d.apply_auto(AutoWord::new(-1, 2), x);
        ensure!(lhs == rhs, "F^2 {x:?} = {lhs:?} but tau^-1 S^2 gives {rhs:?}");
    }

    let cy = cy_check(&m, 3);
    ensure!(cy.holds && cy.pairs_checked == 576, "3-CY check: {cy:?}");

    let t = projectives(&m, 3);
    let cand = TiltingCandidate::new(t.clone(), 3);
    let tilting = is_cluster_tilting(&m, &cand).map_err(err)?;
    ensure!(
        tilting.cluster_tilting,
        "P1+P2+P3 not 3-cluster tilting: {:?}",
        tilting.reason
    );

    let p3 = t[2];
    let s_inv_p3 = m.suspend(p3, -1);
    ensure!(m.hom_c(p3, s_inv_p3).map_err(err)? == 1, "hom(P3, S^-1 P3) != 1");

    let mesh = mesh_hom(&m).map_err(err)?;
    let endo = endo_quiver(&m, &mesh, &cand).map_err(err)?;
    let full = m.ar_quiver().full_subquiver(&t);
    ensure!(
        endo.quiver == full,
        "endo quiver {:?} differs from the AR subquiver {:?}",
        endo.quiver,
        full
    );
    ensure!(
        endo.quiver.arrow_list() == vec![(0, 1), (2, 1)],
        "endo quiver arrows {:?}, expected P1 -> P2 <- P3",
        endo.quiver.arrow_list()
    );

    let neg = negative_ext_check(&m, &cand).map_err(err)?;
    let w = neg.witness.ok_or("negative extensions unexpectedly vanish")?;
    ensure!(
        w.from == p3 && w.to == s_inv_p3 && w.dim == 1,
        "negative-extension witness {} -> {} (dim {})",
        w.from_name,
        w.to_name,
        w.dim
    );

    let report = recognize_cluster_category(&RecognitionInput::from_model(&m, t, 3)).map_err(err)?;
    ensure!(
        report.failed == Some(Hypothesis::NegativeExtensions),
        "recognition outcome {:?}",
        report.failed
    );
    Ok(())
}

fn negative_ext_vanishing() -> Outcome {
    for (name, q) in dynkin_up_to(6) {
        for d in 2..=5 {
            let m = cluster_category(&q, d).map_err(err)?;
            let cand = TiltingCandidate::new(projectives(&m, q.len()), d);
            let neg = negative_ext_check(&m, &cand).map_err(err)?;
            ensure!(neg.holds, "{name}, d = {d}: {:?}", neg.witness);
            let cy = cy_check(&m, d);
            ensure!(cy.holds, "{name}, d = {d}: not {d}-CY, {:?}", cy.counterexample);
        }
    }
    Ok(())
}

fn dual_oracle() -> Outcome {
    let mut models = Vec::new();
    for n in 1..=6 {
        models.push((format!("C_A{n}"), cluster_category(&a_linear(n), 2).map_err(err)?));
    }
    models.push(("C^(3)_A3".into(), cluster_category(&a_linear(3), 3).map_err(err)?));
    models.push(("A6 / tau^4".into(), a6_model()?));
    for (name, m) in models {
        let mesh = mesh_hom(&m).map_err(err)?;
        for x in 0..m.len() {
            for y in 0..m.len() {
                let (a, b) = (m.hom_table()[x][y], mesh.hom[x][y]);
                ensure!(
                    a == b,
                    "{name}: hom({}, {}) orbit sum {a}, mesh {b}",
                    m.name(x),
                    m.name(y)
                );
            }
        }
    }
    Ok(())
}

fn recognition() -> Outcome {
    for (name, q) in dynkin_up_to(5) {
        for d in [2, 3] {
            let m = cluster_category(&q, d).map_err(err)?;
            let input = RecognitionInput::from_model(&m, projectives(&m, q.len()), d);
            let r = recognize_cluster_category(&input).map_err(err)?;
            ensure!(
                r.accepted(),
                "{name}, d = {d}: rejected at {:?}: {:?}",
                r.failed,
                r.reason
            );
            let w = r.witness.ok_or("accepted without a witness")?;
            ensure!(w.matching.len() == m.len(), "{name}: partial bijection");
            for x in 0..m.len() {
                for y in 0..m.len() {
                    let (fx, fy) = (w.matching[x].model, w.matching[y].model);
                    ensure!(
                        input.hom[x][y] == m.hom_table()[fx][fy] as i64,
                        "{name}, d = {d}: bijection does not preserve hom({x}, {y})"
                    );
                }
            }
        }
    }

    let m = cluster_category(&a_linear(3), 2).map_err(err)?;
    let mesh = mesh_hom(&m).map_err(err)?;
    let mut cyclic = None;
    for cand in enumerate_cluster_tilting(&m, 2, DEFAULT_ENUMERATION_CAP).map_err(err)? {
        let e = endo_quiver(&m, &mesh, &cand).map_err(err)?;
        if !e.acyclic {
            cyclic = Some((cand, e));
            break;
        }
    }
    let (cand, e) = cyclic.ok_or("no cluster-tilting object of C_A3 has a cyclic quiver")?;
    ensure!(e.quiver.arrow_count() == 3, "cyclic endo quiver {:?}", e.quiver);
    let mut input = RecognitionInput::from_model(&m, cand.summands, 2);
    input.endo_quiver = Some(e.quiver.clone());
    let r = recognize_cluster_category(&input).map_err(err)?;
    ensure!(
        r.failed == Some(Hypothesis::Acyclicity),
        "3-cycle object: {:?} {:?}",
        r.failed,
        r.reason
    );
    input.endo_quiver = None;
    let r = recognize_cluster_category(&input).map_err(err)?;
    ensure!(
        r.failed == Some(Hypothesis::Acyclicity),
        "3-cycle object from the table alone: {:?}",
        r.failed
    );
    Ok(())
}

fn random_admissible(rng: &mut StdRng) -> Quiver {
    let n = rng.gen_range(1..=7);
    let mut q = Quiver::empty(n);
    for i in 0..n {
        for j in i + 1..n {
            let mult = rng.gen_range(0..=2);
            if mult > 0 {
                let (a, b) = if rng.gen_bool(0.5) { (i, j) } else { (j, i) };
                q.add_arrows(a, b, mult).expect("in range");
            }
        }
    }
    q
}

/// Maximal sets of pairwise Ext-orthogonal rigid objects, by subset enumeration.
fn brute_force_clusters(m: &OrbitModel) -> usize {
    let n = m.len();
    let ext = |x: usize, y: usize| m.hom(x, m.suspend(y, 1)) != 0 || m.hom(y, m.suspend(x, 1)) != 0;
    let compatible = |set: u32| {
        (0..n)
            .filter(|&i| set >> i & 1 == 1)
            .all(|i| (0..n).filter(|&j| set >> j & 1 == 1).all(|j| !ext(i, j)))
    };
    (0u32..1 << n)
        .filter(|&s| compatible(s) && (0..n).all(|x| s >> x & 1 == 1 || !compatible(s | 1 << x)))
        .count()
}

fn mutation_suite() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for _ in 0..1000 {
        let q = random_admissible(&mut rng);
        let k = rng.gen_range(0..q.len());
        let back = q.mutate(k).and_then(|p| p.mutate(k)).map_err(err)?;
        ensure!(back == q, "mutation at {k} is not an involution on {q:?}");
    }

    let class = mutation_class(&a_linear(3), SearchLimits::default()).map_err(err)?;
    ensure!(
        class.len() == 4 && !class.truncated,
        "A3 class size {} (truncated {})",
        class.len(),
        class.truncated
    );

    let cycle = Quiver::from_arrows(3, &[(0, 1), (1, 2), (2, 0)]).map_err(err)?;
    let found = find_acyclic(&cycle, SearchLimits::default()).map_err(err)?;
    ensure!(
        found.witness_word.as_ref().map(Vec::len) == Some(1),
        "3-cycle witness {:?}",
        found.witness_word
    );

    let mut counts = Vec::new();
    for n in 1..=3 {
        let m = cluster_category(&a_linear(n), 2).map_err(err)?;
        let listed = enumerate_cluster_tilting(&m, 2, DEFAULT_ENUMERATION_CAP)
            .map_err(err)?
            .len();
        let brute = brute_force_clusters(&m);
        ensure!(listed == brute, "C_A{n}: enumeration {listed}, brute force {brute}");
        counts.push(listed);
    }
    ensure!(counts == [2, 5, 14], "cluster-tilting counts {counts:?}");
    Ok(())
}

fn preprojective_search() -> Outcome {
    let limits = SearchLimits::new(SearchLimits::default().max_depth, 100_000).map_err(err)?;
    for (name, seed) in [
        ("a5-preprojective", a5_preprojective()),
        ("d4-preprojective", d4_preprojective()),
    ] {
        let r = find_acyclic(&seed, limits).map_err(err)?;
        ensure!(!r.found, "{name}: acyclic quiver found via {:?}", r.witness_word);
        ensure!(
            r.verdict.starts_with("bounded-search evidence") && !r.verdict.contains("proof"),
            "{name}: verdict {:?}",
            r.verdict
        );
        println!("      {name}: {} quivers explored; {}", r.explored, r.verdict);
    }
    Ok(())
}

fn kronecker_survey() -> Outcome {
    let r = kronecker_rigidity_survey(10).map_err(err)?;
    ensure!(r.rows.len() == 22, "{} objects surveyed", r.rows.len());
    ensure!(r.all_rigid, "non-rigid object in the survey");
    let seq = &r.dims_sequence;
    ensure!(seq.len() == 20, "{} preprojectives", seq.len());
    ensure!(seq[0] == [0, 1] && seq[1] == [1, 3], "sequence starts {:?}", &seq[..2]);
    for w in seq.windows(3) {
        for i in 0..2 {
            ensure!(w[2][i] == 3 * w[1][i] - w[0][i], "recurrence fails at {w:?}");
        }
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, Duration, fn() -> Outcome); 7] = [
        (
            "A6 orbit category under tau^4: 24 objects, 3-CY, 3-cluster tilting, (-1)-extensions",
            Duration::from_secs(5),
            a6_example,
        ),
        (
            "negative extensions vanish and CY holds for C^(d)_Q, rank <= 6, d = 2..5",
            Duration::from_secs(10),
            negative_ext_vanishing,
        ),
        (
            "mesh category agrees with orbit sums (C_A1..C_A6, C^(3)_A3, A6 / tau^4)",
            Duration::from_secs(30),
            dual_oracle,
        ),
        (
            "recognition accepts (C^(d)_Q, pi H) for rank <= 5, d = 2, 3 and rejects a 3-cycle",
            Duration::from_secs(10),
            recognition,
        ),
        (
            "mutation involution, A3 class, 3-cycle witness, cluster counts 2/5/14",
            Duration::from_secs(5),
            mutation_suite,
        ),
        (
            "A5 and D4 preprojective seeds: bounded-search evidence, no acyclic quiver within 10^5 nodes",
            Duration::from_secs(60),
            preprojective_search,
        ),
        (
            "3-Kronecker transjective objects rigid to depth 10, x_(n+1) = 3 x_n - x_(n-1)",
            Duration::from_secs(5),
            kronecker_survey,
        ),
    ];
    let mut failures = 0;
    for (label, budget, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            if elapsed <= budget {
                Ok(())
            } else {
                Err(format!("took {elapsed:.2?}, budget {budget:?}"))
            }
        });
        match outcome {
            Ok(()) => println!("PASS {label} ({elapsed:.2?})"),
            Err(reason) => {
                failures += 1;
                println!("FAIL {label}: {reason}");
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
