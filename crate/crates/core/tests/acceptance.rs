//! Acceptance suite: one PASS/FAIL line per criterion. Exits non-zero if
//! any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use qutrit_sic::compat::{
    example_triple_kets, qutrit_triple_criterion, saturation_roots, witness_search, StateSet, WitnessSearchConfig,
    SATURATION_TOL,
};
use qutrit_sic::contextuality::{cabello_criterion, chromatic_number, hesse_mub_graph, OrthoGraph, ORTHOGONALITY_TOL};
use qutrit_sic::mub::{build_mub_set, covering_table, steiner_s9};
use qutrit_sic::purity::{
    collinear_in_grid, enumerate_min_entropy_pure_states, qbic_check_general, qbic_check_hesse,
    quadratic_purity_check, triple_product, TripleProductTable,
};
use qutrit_sic::qmath::{random, trace_product, DensityMatrix, Ket, Operator};
use qutrit_sic::sicgen::{hesse_sic, is_sic, reconstruct_from_probabilities, sic_probabilities, SicProbVector};
use qutrit_sic::wigner::{
    line_marginals, negativity, phase_point_operators, wigner_from_line_probs, wigner_from_sic_probabilities,
    wigner_of_density, STRIATION_TOL,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn sic_verification() -> Outcome {
    let check = is_sic(&hesse_sic(), 1e-12);
    ensure(check.max_residual < 1e-12, format!("max residual {:e}", check.max_residual))?;
    Ok(format!("max Gram residual {:e}", check.max_residual))
}

fn corrected_criterion() -> Outcome {
    let s = hesse_sic();
    let k = s.kets();
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for i in 0..9 {
        for j in i + 1..9 {
            for l in j + 1..9 {
                let v = qutrit_triple_criterion(&k[i], &k[j], &k[l], SATURATION_TOL).map_err(|e| e.to_string())?;
                let gap = (v.lhs10 - v.rhs10).abs();
                ensure(
                    v.is_incompatible() && v.saturated && gap < 1e-9,
                    format!("triple ({i},{j},{l}): {} gap {gap:e}", v.label()),
                )?;
                worst = worst.max(gap);
                count += 1;
            }
        }
    }
    ensure(count == 84, format!("{count} triples"))?;
    let [a, b, c] = example_triple_kets();
    let v = qutrit_triple_criterion(&a, &b, &c, SATURATION_TOL).map_err(|e| e.to_string())?;
    ensure(
        v.is_incompatible() && v.saturated && (v.lhs10 - v.rhs10).abs() < 1e-9,
        format!("example triple: {}", v.label()),
    )?;
    Ok(format!("84/84 Hesse triples and the example triple incompatible (saturated); max gap {worst:e}"))
}

fn saturation_cubic() -> Outcome {
    let roots = saturation_roots();
    let summary = format!("{roots:?}");
    ensure(roots.len() == 2, format!("roots {summary}"))?;
    ensure(
        (roots[0].value - 0.25).abs() < 1e-12 && roots[0].multiplicity == 1,
        format!("roots {summary}"),
    )?;
    ensure(
        (roots[1].value - 1.0).abs() < 1e-12 && roots[1].multiplicity == 2,
        format!("roots {summary}"),
    )?;
    Ok(format!("roots 0.25 (x1), 1.0 (x2): {summary}"))
}

fn mub_construction() -> Outcome {
    let m = build_mub_set(&hesse_sic()).map_err(|e| e.to_string())?;
    let states: Vec<_> = m.states().collect();
    ensure(states.len() == 12, "expected 12 states")?;
    let mut worst_within: f64 = 0.0;
    let mut worst_cross: f64 = 0.0;
    for st in &states {
        let ev = st.projector.eigenvalues();
        ensure(
            (ev[2] - 1.0).abs() < 1e-10 && ev[0].abs() < 1e-10 && ev[1].abs() < 1e-10,
            format!("{:?} not rank one: {ev:?}", st.triple),
        )?;
    }
    let steiner = steiner_s9();
    for a in &states {
        for b in &states {
            if a.triple == b.triple {
                continue;
            }
            let ov = trace_product(&a.projector, &b.projector).map_err(|e| e.to_string())?;
            if steiner.locate(a.triple).unwrap().0 == steiner.locate(b.triple).unwrap().0 {
                worst_within = worst_within.max(ov.abs());
            } else {
                worst_cross = worst_cross.max((ov - 1.0 / 3.0).abs());
            }
        }
    }
    ensure(worst_within < 1e-10, format!("within-basis residual {worst_within:e}"))?;
    ensure(worst_cross < 1e-10, format!("cross-basis residual {worst_cross:e}"))?;
    for k in 0..3 {
        let e = Ket::basis(3, k).unwrap().density();
        let hit = m
            .basis(2)
            .unwrap()
            .iter()
            .any(|st| st.projector.as_op().distance(&e).unwrap() < 1e-10);
        ensure(hit, format!("|{k}> missing from striation 2"))?;
    }
    Ok(format!(
        "12 rank-one projectors; within {worst_within:e}, cross {worst_cross:e}; striation 2 is computational"
    ))
}

fn covering_theorem() -> Outcome {
    let s = hesse_sic();
    let m = build_mub_set(&s).map_err(|e| e.to_string())?;
    let table = covering_table(&m, &s).map_err(|e| e.to_string())?;
    ensure(table.len() == 84, "expected 84 rows")?;
    for row in &table {
        ensure(!row.witnesses.is_empty(), format!("{:?} has no witness", row.triple))?;
    }
    let row = table.iter().find(|r| r.triple == [0, 1, 4]).unwrap();
    ensure(row.witnesses.contains(&4), format!("(0,1,4) witnesses {:?}", row.witnesses))?;
    Ok("84/84 triples witnessed by some basis; (0,1,4) by striation 4".into())
}

fn witness_search_criterion() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst: f64 = 0.0;
    let mut found = 0;
    let mut drawn = 0;
    while found < 50 {
        drawn += 1;
        let k: Vec<Ket> = (0..3).map(|_| random::ket(&mut rng, 3)).collect();
        let v = qutrit_triple_criterion(&k[0], &k[1], &k[2], SATURATION_TOL).map_err(|e| e.to_string())?;
        if !v.is_incompatible() {
            continue;
        }
        let states = StateSet::from_kets(&k).map_err(|e| e.to_string())?;
        let cfg = WitnessSearchConfig {
            restarts: 64,
            seed: found,
            ..Default::default()
        };
        let res = witness_search(&states, &cfg).map_err(|e| e.to_string())?;
        ensure(res.value < 1e-8, format!("incompatible triple {found}: value {:e}", res.value))?;
        worst = worst.max(res.value);
        found += 1;
    }
    let zero = Ket::basis(3, 0).unwrap();
    let states = StateSet::from_kets(&[zero.clone(), zero.clone(), zero]).map_err(|e| e.to_string())?;
    let cfg = WitnessSearchConfig {
        restarts: 64,
        ..Default::default()
    };
    let res = witness_search(&states, &cfg).map_err(|e| e.to_string())?;
    ensure(
        (res.value - 1.0 / 9.0).abs() < 1e-6,
        format!("{{|0>,|0>,|0>}} minimum {}", res.value),
    )?;
    Ok(format!(
        "50 incompatible triples ({drawn} drawn), worst value {worst:e}; {{|0>,|0>,|0>}} minimum {:.9}",
        res.value
    ))
}

fn purity_conditions() -> Outcome {
    let s = hesse_sic();
    let m = build_mub_set(&s).map_err(|e| e.to_string())?;
    let table = TripleProductTable::new(&s);
    let mut vectors: Vec<SicProbVector> = (0..9).map(|k| SicProbVector::sic_state(3, k).unwrap()).collect();
    vectors.extend(m.states().map(|st| st.probs.clone()));
    ensure(vectors.len() == 21, "expected 21 vectors")?;
    let mut worst: f64 = 0.0;
    for p in &vectors {
        let q = quadratic_purity_check(p, 1e-10);
        let g = qbic_check_general(p, &table, 1e-10).map_err(|e| e.to_string())?;
        let h = qbic_check_hesse(p, 1e-10).map_err(|e| e.to_string())?;
        ensure(q.passed && (q.value - 1.0 / 6.0).abs() < 1e-10, format!("quadratic {}", q.value))?;
        ensure(g.passed && (g.value - 5.0 / 32.0).abs() < 1e-10, format!("cubic {}", g.value))?;
        ensure(h.passed && h.value.abs() < 1e-10, format!("Hesse form {}", h.value))?;
        worst = worst.max(q.residual).max(g.residual).max(h.residual);
    }
    let bad = SicProbVector::with_zeros(3, &[0, 1, 3]).unwrap();
    let h = qbic_check_hesse(&bad, 1e-10).map_err(|e| e.to_string())?;
    ensure((h.value + 1.0 / 72.0).abs() < 1e-12, format!("(0,1,3) Hesse form {}", h.value))?;
    Ok(format!("21 vectors pass (worst residual {worst:e}); (0,1,3) gives {:.15}", h.value))
}

fn triple_products() -> Outcome {
    let s = hesse_sic();
    let (mut collinear, mut other) = (0, 0);
    for i in 0..9 {
        for j in i + 1..9 {
            for k in j + 1..9 {
                let v = triple_product(&s, i, j, k).map_err(|e| e.to_string())?;
                if collinear_in_grid(i, j, k).unwrap() {
                    ensure((v + 0.125).abs() < 1e-12, format!("({i},{j},{k}) = {v}"))?;
                    collinear += 1;
                } else {
                    ensure((v - 0.0625).abs() < 1e-12, format!("({i},{j},{k}) = {v}"))?;
                    other += 1;
                }
            }
        }
    }
    ensure(collinear == 12 && other == 72, format!("{collinear} collinear, {other} other"))?;
    Ok("12 collinear triples give -1/8, 72 non-collinear give 1/16".into())
}

fn min_entropy_enumeration() -> Outcome {
    let states = enumerate_min_entropy_pure_states(1e-10);
    let mut got: Vec<[usize; 3]> = states.iter().map(|s| s.triple).collect();
    let mut lines: Vec<[usize; 3]> = steiner_s9()
        .triples()
        .map(|mut t| {
            t.sort_unstable();
            t
        })
        .collect();
    got.sort_unstable();
    lines.sort_unstable();
    ensure(got == lines, format!("survivors {got:?}"))?;
    Ok("exactly the 12 line states survive out of 84 candidates".into())
}

fn wigner_criterion() -> Outcome {
    let s = hesse_sic();
    let a = phase_point_operators(&build_mub_set(&s).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let rho = random::density(&mut rng, 3);
        let direct = wigner_of_density(&rho, &a).map_err(|e| e.to_string())?;
        let via = wigner_from_sic_probabilities(&sic_probabilities(&rho, &s).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        for (x, y) in direct.values().iter().zip(via.values()) {
            worst = worst.max((x - y).abs());
        }
    }
    ensure(worst < 1e-10, format!("map disagreement {worst:e}"))?;

    for (k, ket) in s.kets().iter().enumerate() {
        let w = wigner_of_density(&ket.density(), &a).map_err(|e| e.to_string())?;
        for (i, v) in w.values().iter().enumerate() {
            let want = if i == k { -1.0 / 3.0 } else { 1.0 / 6.0 };
            ensure((v - want).abs() < 1e-10, format!("SIC state {k}: W({i}) = {v}"))?;
        }
        let n = negativity(&w);
        ensure((n - 1.0 / 3.0).abs() < 1e-10, format!("SIC state {k}: negativity {n}"))?;
    }

    let mut max_neg: f64 = 0.0;
    for _ in 0..1000 {
        let w = wigner_of_density(&random::ket(&mut rng, 3).density(), &a).map_err(|e| e.to_string())?;
        max_neg = max_neg.max(negativity(&w));
    }
    ensure(max_neg <= 1.0 / 3.0 + 1e-9, format!("negativity {max_neg}"))?;
    Ok(format!(
        "map agreement {worst:e} on 200 states; SIC Wigner (-1/3, 1/6 x8); max negativity over 1000 pure states {max_neg:.6}"
    ))
}

fn brute_force_chromatic(n: usize, edges: &[(usize, usize)]) -> usize {
    if n == 0 {
        return 0;
    }
    for k in 1..=n {
        let total = k.pow(n as u32);
        for code in 0..total {
            let colour = |v: usize| (code / k.pow(v as u32)) % k;
            if edges.iter().all(|&(u, v)| colour(u) != colour(v)) {
                return k;
            }
        }
    }
    n
}

fn contextuality_criterion() -> Outcome {
    let s = hesse_sic();
    let m = build_mub_set(&s).map_err(|e| e.to_string())?;
    let mut states: Vec<DensityMatrix> = s.states();
    states.extend(m.states().map(|st| st.projector.clone()));
    let mut oracle_edges = 0;
    for u in 0..21 {
        for v in u + 1..21 {
            let ov = (states[u].matrix() * states[v].matrix()).trace().re;
            if ov.abs() < 1e-9 {
                oracle_edges += 1;
            }
        }
    }
    let g = hesse_mub_graph(ORTHOGONALITY_TOL).map_err(|e| e.to_string())?;
    ensure(
        g.edge_count() == 48 && oracle_edges == 48,
        format!("{} edges, oracle {oracle_edges}", g.edge_count()),
    )?;
    let (chi, colouring) = chromatic_number(&g).map_err(|e| e.to_string())?;
    ensure(chi == 4 && colouring.is_proper(&g), format!("chromatic number {chi}"))?;
    let report = cabello_criterion(&g, 3).map_err(|e| e.to_string())?;
    ensure(report.holds, "criterion false for d = 3")?;

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for trial in 0..200 {
        let n = rng.random_range(1..=8);
        let p: f64 = rng.random_range(0.0..1.0);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.random_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        let g = OrthoGraph::unlabelled(n, &edges).map_err(|e| e.to_string())?;
        let (chi, c) = chromatic_number(&g).map_err(|e| e.to_string())?;
        let oracle = brute_force_chromatic(n, &edges);
        ensure(chi == oracle && c.is_proper(&g), format!("graph {trial}: {chi} vs oracle {oracle}"))?;
    }
    Ok("48 edges (oracle agrees), chromatic number 4, criterion holds for d = 3; 200/200 random graphs match brute force".into())
}

fn round_trips() -> Outcome {
    let s = hesse_sic();
    let a = phase_point_operators(&build_mub_set(&s).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let (mut worst_sic, mut worst_line): (f64, f64) = (0.0, 0.0);
    for i in 0..200 {
        let rho = if i % 2 == 0 {
            random::density(&mut rng, 3)
        } else {
            random::ket(&mut rng, 3).density()
        };
        let p = sic_probabilities(&rho, &s).map_err(|e| e.to_string())?;
        let back = reconstruct_from_probabilities(&p, &s).map_err(|e| e.to_string())?;
        let diff = (back.matrix() - rho.matrix()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        worst_sic = worst_sic.max(diff);

        let w = wigner_of_density(&rho, &a).map_err(|e| e.to_string())?;
        let w2 = wigner_from_line_probs(&line_marginals(&w), STRIATION_TOL).map_err(|e| e.to_string())?;
        for (x, y) in w.values().iter().zip(w2.values()) {
            worst_line = worst_line.max((x - y).abs());
        }
    }
    ensure(worst_sic < 1e-10, format!("SIC reconstruction error {worst_sic:e}"))?;
    ensure(worst_line < 1e-10, format!("line inversion error {worst_line:e}"))?;
    Ok(format!(
        "SIC reconstruction error {worst_sic:e}, line-marginal inversion error {worst_line:e} on 200 states"
    ))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("SIC verification", sic_verification),
        ("corrected compatibility criterion", corrected_criterion),
        ("saturation cubic", saturation_cubic),
        ("MUB construction", mub_construction),
        ("covering theorem", covering_theorem),
        ("witness search", witness_search_criterion),
        ("purity conditions", purity_conditions),
        ("triple products", triple_products),
        ("minimal-entropy enumeration", min_entropy_enumeration),
        ("Wigner function", wigner_criterion),
        ("contextuality", contextuality_criterion),
        ("round trips", round_trips),
    ];
    let start = Instant::now();
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  criterion {:>2} ({name}): {detail} [{secs:.2} s]", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL  criterion {:>2} ({name}): {detail} [{secs:.2} s]", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failures} failed in {:.1} s",
        criteria.len() - failures,
        start.elapsed().as_secs_f64()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
