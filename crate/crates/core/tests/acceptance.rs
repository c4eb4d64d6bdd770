//! Acceptance harness: one PASS/FAIL line per criterion.

use std::time::{Duration, Instant};

use modwzw::affine;
use modwzw::blocks;
use modwzw::boundary;
use modwzw::characters;
use modwzw::exact::q;
use modwzw::fusion;
use modwzw::liealg::{self, SimpleLieAlgebra, DEFAULT_WEYL_CAP};
use modwzw::modular::{self, CMat, ModularData, C64};
use modwzw::orbifold::{self, Orientation};
use modwzw::simplecurrent::{self, TheorySJ};
use modwzw::theory::{Theory, TheorySpec};

const MODULAR_TOL: f64 = 1e-8;
const INTEGER_TOL: f64 = 1e-6;
const Z_COMMUTATOR_TOL: f64 = 1e-9;
const CHARACTER_TOL: f64 = 1e-4;
const SUITE_BUDGET: Duration = Duration::from_secs(60);
const SWEEP_BUDGET: Duration = Duration::from_secs(600);

type Outcome = Result<String, String>;

fn alg(s: &str) -> SimpleLieAlgebra {
    SimpleLieAlgebra::new(s.parse().unwrap())
}

fn wzw(s: &str, k: i64) -> ModularData {
    affine::kac_peterson(&alg(s), k, DEFAULT_WEYL_CAP).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Every algebra of rank at most 3, plus the named rank-3 members.
const SUITE: &[&str] = &["A1", "A2", "B2", "C2", "G2", "A3", "B3", "C3", "D3"];
const MAX_LEVEL: i64 = 6;

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let (mut cases, mut worst_s, mut worst_n) = (0, 0.0f64, 0.0f64);
    for name in SUITE {
        for k in 0..=MAX_LEVEL {
            let md = affine::kac_peterson(&alg(name), k, DEFAULT_WEYL_CAP).map_err(err)?;
            let r = md.residuals();
            ensure(r.max() < MODULAR_TOL, || format!("{name}_k{k}: {r:?}"))?;
            let (_, rounding) = fusion::verlinde_with_report(&md, INTEGER_TOL).map_err(|e| format!("{name}_k{k}: {e}"))?;
            worst_s = worst_s.max(r.max());
            worst_n = worst_n.max(rounding.max_residual);
            cases += 1;
        }
    }
    let t = start.elapsed();
    ensure(t < SUITE_BUDGET, || format!("took {t:?}"))?;
    Ok(format!(
        "{cases} theories, max modular residual {worst_s:.1e}, max Verlinde rounding {worst_n:.1e}, {:.1}s",
        t.as_secs_f64()
    ))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut cases = 0;
    for name in SUITE {
        let a = alg(name);
        let center = liealg::center_group(&a);
        for k in 1..=MAX_LEVEL {
            let md = affine::kac_peterson(&a, k, DEFAULT_WEYL_CAP).map_err(err)?;
            let ring = fusion::verlinde(&md).map_err(err)?;
            let g = fusion::simple_currents(&md, &ring).map_err(err)?;
            let up_to = center.order().max(g.order() as i64);
            ensure(
                g.signature(up_to) == liealg::cyclic_signature(&center.factors, up_to),
                || format!("{name}_k{k}: currents {:?} vs center {:?}", g.orders, center.factors),
            )?;
            cases += 1;
        }
    }
    Ok(format!("{cases} theories, {:.1}s", start.elapsed().as_secs_f64()))
}

fn criterion_3() -> Outcome {
    let th = Theory::new(&TheorySpec::wzw("A1", 4).unwrap(), DEFAULT_WEYL_CAP).map_err(err)?;
    let ext = simplecurrent::extend(&th, None).map_err(err)?;
    let x = &ext.extended;
    let labels: Vec<String> = x.md.labels.iter().map(|l| l.to_string()).collect();
    ensure(labels == ["(0)", "[(2)|+]", "[(2)|-]"], || format!("classes {labels:?}"))?;
    let r = x.md.residuals();
    ensure(r.max() < MODULAR_TOL, || format!("S^xt residuals {r:?}"))?;
    let g = fusion::simple_currents(&x.md, &x.ring).map_err(err)?;
    ensure(g.order() == 3 && g.signature(3) == liealg::cyclic_signature(&[3], 3), || {
        format!("extended currents {:?}", g.orders)
    })?;
    // Known D-type invariant |chi_0 + chi_4|^2 + 2 |chi_2|^2.
    let want = [
        [1, 0, 0, 0, 1],
        [0, 0, 0, 0, 0],
        [0, 0, 2, 0, 0],
        [0, 0, 0, 0, 0],
        [1, 0, 0, 0, 1],
    ];
    ensure(ext.z.iter().zip(&want).all(|(a, b)| a[..] == b[..]), || format!("Z = {:?}", ext.z))?;
    let zm = CMat::from_fn(5, 5, |i, j| C64::new(ext.z[i][j] as f64, 0.0));
    let t = modular::diag(&th.md.t());
    let comm = modular::max_abs(&(&zm * &th.md.s - &th.md.s * &zm)).max(modular::max_abs(&(&zm * &t - &t * &zm)));
    ensure(comm < Z_COMMUTATOR_TOL, || format!("[Z, S], [Z, T] residual {comm:e}"))?;
    Ok(format!("3 classes, S^xt residual {:.1e}, [Z,S],[Z,T] residual {comm:.1e}", r.max()))
}

fn criterion_4() -> Outcome {
    let so3 = TheorySpec::so_odd_level_one(3).map_err(err)?;
    let spec = TheorySpec::Product(vec![so3.clone(), so3.clone(), so3]);
    let th = Theory::new(&spec, DEFAULT_WEYL_CAP).map_err(err)?;
    let sizes = [3, 3, 3];
    let gens = [
        modular::from_mixed_radix(&[2, 2, 0], &sizes),
        modular::from_mixed_radix(&[0, 2, 2], &sizes),
    ];
    let ext = simplecurrent::extend(&th, Some(&gens)).map_err(err)?;
    let fp = modular::from_mixed_radix(&[1, 1, 1], &sizes);
    let (s, u, d) = (
        ext.data.stabilizers[fp].len(),
        ext.data.central[fp].len(),
        ext.data.d[fp],
    );
    ensure(s == 4 && u == 1 && d == Some(2), || format!("|S| = {s}, |U| = {u}, d = {d:?}"))?;
    let (so9, level) = TheorySpec::so_odd_level_one(9).map_err(err)?.factors()[0];
    let target = affine::kac_peterson(&SimpleLieAlgebra::new(so9), level, DEFAULT_WEYL_CAP).map_err(err)?;
    let perm = modular::match_modular_data(&ext.extended.md, &target, MODULAR_TOL)
        .ok_or_else(|| format!("no label bijection with {}", target.name))?;
    let n = perm.len();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            worst = worst.max((ext.extended.md.s[(i, j)] - target.s[(perm[i], perm[j])]).norm());
        }
    }
    ensure(worst < MODULAR_TOL, || format!("entrywise S mismatch {worst:e}"))?;
    Ok(format!("|S| = 4, |U| = 1, d = 2; matches {} with max entry deviation {worst:.1e}", target.name))
}

/// The trace sweep of criteria 5 and 6.
fn sweep_theories() -> Vec<(&'static str, i64)> {
    let mut v: Vec<(&str, i64)> = (2..=8).map(|k| ("A1", k)).collect();
    v.extend((1..=4).map(|k| ("A2", k)));
    v
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let (mut lists, mut tuples) = (0usize, 0usize);
    for (name, k) in sweep_theories() {
        let th = Theory::new(&TheorySpec::wzw(name, k).unwrap(), DEFAULT_WEYL_CAP).map_err(err)?;
        let ring = fusion::verlinde(&th.md).map_err(err)?;
        let g = fusion::simple_currents(&th.md, &ring).map_err(err)?;
        let mut sj = TheorySJ::new(&th);
        let data = simplecurrent::orbit_data(&th.md, &g, &mut sj).map_err(err)?;
        for m in [3, 4] {
            for ins in blocks::insertion_multisets(th.md.len(), m) {
                let rep = blocks::trace_report(0, &ins, &th.md, &data, &mut sj).map_err(err)?;
                ensure(rep.identity_matches_rank, || format!("{name}_k{k} {ins:?}: identity trace != rank"))?;
                ensure(rep.dims_valid, || format!("{name}_k{k} {ins:?}: dims {:?}", rep.dims))?;
                ensure(rep.traces_integral, || format!("{name}_k{k} {ins:?}: traces {:?}", rep.traces))?;
                lists += 1;
                tuples += rep.tuples.len();
            }
        }
    }
    let t = start.elapsed();
    ensure(t < SWEEP_BUDGET, || format!("took {t:?}"))?;
    Ok(format!("{lists} insertion lists, {tuples} central tuples, {:.1}s", t.as_secs_f64()))
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let (mut lists, mut checks) = (0usize, 0usize);
    let mut phases: Vec<String> = Vec::new();
    for (name, k) in sweep_theories() {
        let th = Theory::new(&TheorySpec::wzw(name, k).unwrap(), DEFAULT_WEYL_CAP).map_err(err)?;
        let md = &th.md;
        let ring = fusion::verlinde(md).map_err(err)?;
        let g = fusion::simple_currents(md, &ring).map_err(err)?;
        let mut sj = TheorySJ::new(&th);
        let data = simplecurrent::orbit_data(md, &g, &mut sj).map_err(err)?;
        for m in [3, 4] {
            for ins in blocks::insertion_multisets(md.len(), m) {
                let (_, central) = blocks::admissible_tuples(&data, &ins);
                for t in &central {
                    for h in 0..g.order() {
                        let f = blocks::factorization_check(&ins, t, h, md, &data, &mut sj).map_err(err)?;
                        ensure(f.rank_difference == 0, || format!("{name}_k{k} {ins:?}: rank difference {}", f.rank_difference))?;
                        ensure(f.handle_residual < INTEGER_TOL, || {
                            format!("{name}_k{k} J{h}: handle matrix not scalar ({:e})", f.handle_residual)
                        })?;
                        ensure(f.trace_residual < INTEGER_TOL, || {
                            format!("{name}_k{k} {ins:?} t{t:?} J{h}: trace residual {:e}", f.trace_residual)
                        })?;
                        if f.handle_phase.0 < 0.0 {
                            let tag = format!("{name}_k{k}");
                            if !phases.contains(&tag) {
                                phases.push(tag);
                            }
                        }
                        checks += 1;
                    }
                }
                lists += 1;
            }
        }
    }
    Ok(format!(
        "{lists} insertion lists, {checks} (tuple, handle) identities, handle factor -1 on {phases:?}, {:.1}s",
        start.elapsed().as_secs_f64()
    ))
}

fn su2_inner(k: i64) -> Result<(ModularData, orbifold::OrbifoldInput), String> {
    let a = alg("A1");
    let md = affine::kac_peterson(&a, k, DEFAULT_WEYL_CAP).map_err(err)?;
    let input = orbifold::inner_orbifold_input(&a, k, &md, &[q(1)]).map_err(err)?;
    Ok((md, input))
}

fn criterion_7() -> Outcome {
    let mut parts = Vec::new();
    for k in [2, 4] {
        let (md, input) = su2_inner(k)?;
        for (i, &mu) in input.fixed.iter().enumerate() {
            let modwzw::modular::Label::Weight(w) = &md.labels[mu] else { unreachable!() };
            let want = C64::new(if w[0] % 2 == 0 { 1.0 } else { -1.0 }, 0.0);
            ensure((input.eta(i) - want).norm() < MODULAR_TOL, || format!("k{k}: eta on {w:?}"))?;
        }
        let orb = orbifold::assemble_orbifold(&input).map_err(err)?;
        let c = &orb.checks;
        ensure(c.residuals.max() < MODULAR_TOL, || format!("k{k}: {:?}", c.residuals))?;
        ensure(c.fusion_rounding < INTEGER_TOL, || format!("k{k}: Verlinde rounding {:e}", c.fusion_rounding))?;
        let s0 = c.s0_squared.as_ref().ok_or("S0 not square")?;
        ensure(s0.residual < MODULAR_TOL, || format!("k{k}: S0 S0 residual {:e}", s0.residual))?;
        ensure(c.p_matches_s0 == Some(true), || format!("k{k}: |P^2| differs from |S0 S0|"))?;
        parts.push(format!("k{k}: {} sectors, residual {:.1e}", orb.md.len(), c.residuals.max()));
    }
    Ok(parts.join("; "))
}

fn criterion_8() -> Outcome {
    let mut passing = [true, true];
    let mut triples = 0;
    for k in [2, 4] {
        let (_, input) = su2_inner(k)?;
        for (o, reports) in orbifold::conjecture2_sweep(&input, 3).map_err(err)? {
            let slot = match o {
                Orientation::FixedRow => 0,
                Orientation::TwistedRow => 1,
            };
            passing[slot] &= reports.iter().all(|r| r.integral);
            triples += reports.len();
        }
    }
    ensure(passing.iter().any(|&p| p), || "no orientation yields integral dimensions".into())?;
    Ok(format!(
        "{triples} (orientation, triple) cases; fixed-row {}, twisted-row {}",
        if passing[0] { "passes" } else { "fails" },
        if passing[1] { "passes" } else { "fails" }
    ))
}

fn criterion_9() -> Outcome {
    let mut trivial = 0;
    for (name, ks) in [("A1", 1..=4), ("A2", 1..=3), ("B2", 1..=2), ("G2", 1..=2)] {
        for k in ks {
            let md = wzw(name, k);
            let ring = fusion::verlinde(&md).map_err(err)?;
            let (a, dev) = boundary::trivial_group_algebra(&md, &ring).map_err(err)?;
            ensure(dev < MODULAR_TOL, || format!("{name}_k{k}: deviation from N {dev:e}"))?;
            ensure(a.integer_constants(MODULAR_TOL).is_some(), || format!("{name}_k{k}: non-integral constants"))?;
            trivial += 1;
        }
    }
    let mut parts = vec![format!("trivial group equals fusion ring on {trivial} theories")];
    for k in [2, 4] {
        let (_, input) = su2_inner(k)?;
        let orb = orbifold::assemble_orbifold(&input).map_err(err)?;
        let a = boundary::orbifold_classifying_algebra(&orb, None).map_err(err)?;
        let r = boundary::reflection_coefficients(&a).map_err(err)?;
        let rep = boundary::representation_residual(&a, &r).into_iter().fold(0.0, f64::max);
        let dec = boundary::automorphism_type_decomposition(&a).map_err(err)?;
        let tab = boundary::z2_table_check(&input, &orb, &a).map_err(err)?;
        for (what, v) in [
            ("S^ vs table", tab.s_hat_residual),
            ("structure constants vs table", tab.structure_residual),
            ("representations", rep),
            ("ideal orthogonality", dec.residual),
        ] {
            ensure(v < MODULAR_TOL, || format!("k{k}: {what} residual {v:e}"))?;
        }
        parts.push(format!(
            "k{k}: {} boundary labels, S^ residual {:.1e}, representation residual {rep:.1e}",
            a.len(),
            tab.s_hat_residual
        ));
    }
    Ok(parts.join("; "))
}

fn criterion_10() -> Outcome {
    let mut comparisons = 0;
    for (name, ks) in [("A3", 1..=4), ("A5", 1..=2), ("D4", 1..=2), ("D5", 1..=2)] {
        let a = alg(name);
        for k in ks {
            let md = affine::kac_peterson(&a, k, DEFAULT_WEYL_CAP).map_err(err)?;
            for desc in characters::current_foldings(&a, k, &md) {
                for c in characters::twining_validator(&a, k, &md, &desc, 6).map_err(err)? {
                    ensure(c.equal, || format!("{name}_k{k} {:?} on {:?}: {:?} vs {:?}", c.automorphism, c.weight, c.twining, c.orbit))?;
                    comparisons += 1;
                }
            }
        }
    }
    ensure(comparisons > 0, || "no foldings with fixed points".into())?;
    let mut worst: f64 = 0.0;
    let a = alg("A1");
    for k in 1..=4 {
        let md = wzw("A1", k);
        let chars = characters::wzw_characters(&a, k, &md, 40);
        let r = characters::numeric_modular_check(&md, &chars);
        ensure(r.max_residual < CHARACTER_TOL, || format!("A1_k{k}: residual {:e}", r.max_residual))?;
        worst = worst.max(r.max_residual);
    }
    let pts = [q(0), q(1), q(3)];
    for cw in [vec![vec![1], vec![-1]], vec![vec![1], vec![1], vec![-2]]] {
        let m = cw.len();
        let r = blocks::multishift_validate(&a, &cw, &pts[..m], 4).map_err(err)?;
        ensure(r.residual_is_zero, || format!("m = {m}: residual {}", r.max_residual))?;
    }
    Ok(format!(
        "{comparisons} twining/orbit comparisons equal to grade 6; character S-residual {worst:.1e}; multishift exact for m = 2, 3"
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("modular-data suite", criterion_1),
        ("simple currents and center", criterion_2),
        ("su(2) level 4 extension", criterion_3),
        ("so(3)^3 level 1 embedding", criterion_4),
        ("current-tuple trace integrality", criterion_5),
        ("factorization identities", criterion_6),
        ("Z2 orbifold suite", criterion_7),
        ("orbifold trace eigendimensions", criterion_8),
        ("boundary suite", criterion_9),
        ("character and multishift oracles", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
