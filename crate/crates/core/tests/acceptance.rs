//! Acceptance suite. Runs every criterion in sequence (timing criteria must
//! not overlap), prints one PASS/FAIL line per criterion and exits nonzero
//! if any failed.
//!
//! Run with `cargo test -p sssp-core --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::RngExt;
use sssp::bench::{run_bench, BenchPlan, Topology};
use sssp::generators::{
    generate_planar, generate_planar_instance, generate_random, rng_from_seed, PlanarConfig, Point, RandomConfig,
};
use sssp::graph::{GraphBuilder, Label};
use sssp::oracle::{heap_oracle_check, solver_agreement_check, OpTrace};
use sssp::solver::{get_path, solve, solve_target, Variant};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    ensure(elapsed < limit, || format!("{what} took {elapsed:?}, limit {limit:?}"))
}

/// 1. Five-vertex directed cycle with weight-10 arcs, solved from 0.
fn appendix_cycle() -> Outcome {
    let mut b = GraphBuilder::new(5);
    for u in 0..5 {
        b.add_arc(u, (u + 1) % 5, 10).map_err(|e| e.to_string())?;
    }
    let g = b.build();
    ensure(g.vertex_count() == 5 && g.arc_count() == 5, || "cycle shape".into())?;
    let expected: Vec<Label> = [0, 10, 20, 30, 40].map(|v| Label::finite(v).unwrap()).to_vec();
    let mut slowest = Duration::ZERO;
    for variant in Variant::ALL {
        let start = Instant::now();
        let r = solve(&g, 0, variant).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        slowest = slowest.max(elapsed);
        ensure(r.labels == expected, || format!("{variant}: labels {:?}", r.labels))?;
        ensure(get_path(&r.preds, 0, 4) == [0, 1, 2, 3, 4], || format!("{variant}: path to 4"))?;
        ensure(get_path(&r.preds, 0, 0).is_empty(), || format!("{variant}: path to 0"))?;
        within(elapsed, Duration::from_millis(1), variant.name())?;
    }
    Ok(format!("L = [0,10,20,30,40] for all variants, slowest {slowest:?}"))
}

/// 2. Four-way agreement with Bellman-Ford on random and planar graphs.
fn four_way_agreement() -> Outcome {
    let start = Instant::now();
    let probabilities = [0.05, 0.1, 0.5, 0.9];
    let mut rng = rng_from_seed(2024);
    let random_graphs = 1000;
    for i in 0..random_graphs {
        let n = rng.random_range(1..=40);
        let p = probabilities[i % probabilities.len()];
        let g = generate_random(&RandomConfig::new(n, p, 10_000 + i as u64)).map_err(|e| e.to_string())?;
        let s = rng.random_range(0..n);
        solver_agreement_check(&g, s).map_err(|e| format!("random graph {i} (n={n}, p={p}): {e}"))?;
    }
    let planar_graphs = 50;
    for i in 0..planar_graphs {
        let n = rng.random_range(3..=500);
        let g = generate_planar(&PlanarConfig::new(n, 20_000 + i)).map_err(|e| e.to_string())?;
        let s = rng.random_range(0..n);
        solver_agreement_check(&g, s).map_err(|e| format!("planar graph {i} (n={n}): {e}"))?;
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(60), "suite")?;
    Ok(format!("{random_graphs} random + {planar_graphs} planar graphs agree, {elapsed:.2?}"))
}

/// 3. Fibonacci heap against the sorted-multiset oracle.
fn heap_oracle() -> Outcome {
    let start = Instant::now();
    let traces = 100_000u64;
    let mut ops = 0;
    let mut skipped = 0;
    for seed in 0..traces {
        let universe = 8 + (seed % 121) as usize;
        let trace = OpTrace::random(seed, 200, universe);
        ops += trace.ops.len();
        let report = heap_oracle_check(&trace);
        skipped += report.skipped;
        if let Some(failure) = report.failure {
            return Err(format!("trace {seed}: {failure}"));
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(120), "suite")?;
    Ok(format!("{traces} traces, {ops} ops ({skipped} invalid ops skipped), {elapsed:.2?}"))
}

/// Circumcircle containment via the circumcentre, independent of the
/// triangulator's exact predicates.
fn strictly_inside_circumcircle(tri: [usize; 3], pts: &[Point], q: Point) -> bool {
    let [a, b, c] = tri.map(|i| pts[i]);
    let d = 2.0 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
    let a2 = a.x * a.x + a.y * a.y;
    let b2 = b.x * b.x + b.y * b.y;
    let c2 = c.x * c.x + c.y * c.y;
    let centre = Point::new(
        (a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d,
        (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d,
    );
    centre.distance(q) < centre.distance(a) * (1.0 - 1e-9)
}

/// 4. Planar generator: arc bound, symmetry, connectivity, empty circumcircles.
fn planar_generator() -> Outcome {
    let mut circle_checks = 0usize;
    for n in [100usize, 200, 1000, 10_000] {
        for seed in 0..10 {
            let inst = generate_planar_instance(&PlanarConfig::new(n, seed)).map_err(|e| e.to_string())?;
            let g = &inst.graph;
            let m = g.arc_count();
            ensure(m <= 6 * n - 12, || format!("n={n} seed={seed}: m={m} > 6n-12"))?;
            ensure(g.is_symmetric(), || format!("n={n} seed={seed}: not symmetric"))?;
            ensure(g.is_weakly_connected(), || format!("n={n} seed={seed}: disconnected"))?;
            if n <= 200 {
                for &tri in &inst.triangles {
                    for (k, &q) in inst.points.iter().enumerate() {
                        if !tri.contains(&k) {
                            circle_checks += 1;
                            ensure(!strictly_inside_circumcircle(tri, &inst.points, q), || {
                                format!("n={n} seed={seed}: point {k} inside circumcircle of {tri:?}")
                            })?;
                        }
                    }
                }
            }
        }
    }
    Ok(format!("40 graphs within 6n-12, symmetric, connected; {circle_checks} circumcircle checks"))
}

/// 5. Mean arc count of G(1000, 0.1) over 30 seeds.
fn random_generator() -> Outcome {
    let (n, p, seeds) = (1000usize, 0.1, 30);
    let pairs = (n * (n - 1)) as f64;
    let mean = (0..seeds)
        .map(|seed| {
            generate_random(&RandomConfig::new(n, p, seed))
                .map(|g| g.arc_count() as f64)
                .map_err(|e| e.to_string())
        })
        .sum::<Result<f64, String>>()?
        / seeds as f64;
    let expected = p * pairs;
    // standard error of the mean of `seeds` Binomial(pairs, p) draws
    let sigma = (pairs * p * (1.0 - p) / seeds as f64).sqrt();
    let deviation = (mean - expected).abs();
    ensure(deviation <= 3.0 * sigma, || {
        format!("mean {mean:.1} deviates {deviation:.1} from {expected} (3 sigma = {:.1})", 3.0 * sigma)
    })?;
    Ok(format!("mean m = {mean:.1}, expected {expected}, |dev| = {deviation:.1} <= {:.1}", 3.0 * sigma))
}

fn bench_means(plan: &BenchPlan) -> Result<Vec<(Variant, usize, f64)>, String> {
    let outcome = run_bench(plan).map_err(|e| e.to_string())?;
    ensure(outcome.skipped.is_empty(), || format!("skipped points: {:?}", outcome.skipped))?;
    Ok(sssp::bench::summarize(&outcome.records)
        .into_iter()
        .map(|s| (s.variant, s.n, s.mean))
        .collect())
}

fn lookup(means: &[(Variant, usize, f64)], variant: Variant, n: usize) -> Result<f64, String> {
    means
        .iter()
        .find(|(v, m, _)| *v == variant && *m == n)
        .map(|&(_, _, t)| t)
        .ok_or_else(|| format!("no records for {variant} at n={n}"))
}

/// 6. Basic vs binary heap on planar graphs at n = 10^4 and 10^5.
fn sparse_scaling() -> Outcome {
    let plan = BenchPlan {
        reps: 20,
        seed: 6,
        variants: vec![Variant::Basic, Variant::Heap],
        ..BenchPlan::new(Topology::Planar, vec![10_000, 100_000])
    };
    let means = bench_means(&plan)?;
    let ratio = |n| -> Result<f64, String> { Ok(lookup(&means, Variant::Basic, n)? / lookup(&means, Variant::Heap, n)?) };
    let (small, large) = (ratio(10_000)?, ratio(100_000)?);
    let summary = format!("basic/heap ratio {small:.2} at n=1e4, {large:.2} at n=1e5");
    ensure(large >= 5.0, || format!("{summary}; need >= 5 at n=1e5"))?;
    ensure(large > small, || format!("{summary}; ratio must grow"))?;
    Ok(summary)
}

/// 7. Fibonacci vs binary heap on dense random graphs.
fn dense_scaling() -> Outcome {
    let plan = BenchPlan {
        reps: 20,
        seed: 7,
        p: Some(0.9),
        variants: vec![Variant::Heap, Variant::Fib],
        ..BenchPlan::new(Topology::Random, vec![5000])
    };
    let means = bench_means(&plan)?;
    let heap = lookup(&means, Variant::Heap, 5000)?;
    let fib = lookup(&means, Variant::Fib, 5000)?;
    let ratio = fib / heap;
    let summary = format!("mean heap {heap:.4}s, fib {fib:.4}s, fib/heap {ratio:.2}");
    ensure((0.5..=2.0).contains(&ratio), || format!("{summary}; need within 2x"))?;
    Ok(summary)
}

/// 8. Binary heap on a million-vertex planar graph.
fn desk_scale() -> Outcome {
    let g = generate_planar(&PlanarConfig::new(1_000_000, 8)).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let r = solve(&g, 0, Variant::Heap).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(r.extractions == g.vertex_count(), || "not every vertex was reached".into())?;
    within(elapsed, Duration::from_secs(5), "heap solve")?;
    Ok(format!("n=1e6, m={} solved in {elapsed:.2?}", g.arc_count()))
}

/// 9. Early exit agrees with the full run on every target.
fn early_exit() -> Outcome {
    let mut rng = rng_from_seed(99);
    let mut queries = 0;
    for i in 0..200u64 {
        let n = rng.random_range(1..=40);
        let p = [0.05, 0.1, 0.3][(i % 3) as usize];
        let g = generate_random(&RandomConfig::new(n, p, 30_000 + i)).map_err(|e| e.to_string())?;
        let s = rng.random_range(0..n);
        for variant in Variant::ALL {
            let full = solve(&g, s, variant).map_err(|e| e.to_string())?;
            for t in 0..n {
                let partial = solve_target(&g, s, t, variant).map_err(|e| e.to_string())?;
                queries += 1;
                ensure(partial.labels[t] == full.labels[t], || {
                    format!("graph {i} {variant}: L({t}) {} vs full {}", partial.labels[t], full.labels[t])
                })?;
                ensure(partial.is_final(t), || format!("graph {i} {variant}: target {t} not final"))?;
                for u in (0..n).filter(|&u| partial.is_final(u)) {
                    ensure(partial.labels[u] == full.labels[u], || {
                        format!("graph {i} {variant}: settled vertex {u} differs")
                    })?;
                }
            }
        }
    }
    Ok(format!("{queries} target queries match full runs"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("1 cycle replication", appendix_cycle),
        ("2 four-way agreement + Bellman-Ford", four_way_agreement),
        ("3 Fibonacci heap oracle", heap_oracle),
        ("4 planar generator", planar_generator),
        ("5 random generator distribution", random_generator),
        ("6 sparse scaling (soft)", sparse_scaling),
        ("7 dense scaling (soft)", dense_scaling),
        ("8 desk-scale throughput (soft)", desk_scale),
        ("9 early exit", early_exit),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failures = 0;
    for (name, check) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        match check() {
            Ok(detail) => println!("PASS  {name}: {detail} [{:.1?}]", start.elapsed()),
            Err(detail) => {
                failures += 1;
                println!("FAIL  {name}: {detail} [{:.1?}]", start.elapsed());
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} criteria failed");
        ExitCode::FAILURE
    }
}
