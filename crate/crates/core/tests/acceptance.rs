//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the pass/fail lines are always printed.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use modgeom::configsets::{
    difference_stratum_counts, enumerate_difference_strata, rotation_correlation,
    rotation_correlation_cubes, third_moment_bound, PointSet,
};
use modgeom::fourier::{self, GridFunction};
use modgeom::geometry::{self, all_vectors, sphere_size, Vector};
use modgeom::harness::generate::subset_by_rank;
use modgeom::harness::{run_theorem_experiment, ExperimentConfig, ExperimentKind, SetSource};
use modgeom::orthogroup::{so2_elements, stabilizer_in, t2_classes};
use modgeom::ring::{exhaustive_roots, hensel_lift_root};
use modgeom::{Modulus, Polynomial};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn m(p: u64, l: u32) -> Modulus {
    Modulus::new(p, l).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, secs: u64) -> Result<(), String> {
    ensure(elapsed < Duration::from_secs(secs), || {
        format!("took {elapsed:.2?}, limit {secs} s")
    })
}

fn c1_stabilizers() -> Outcome {
    let start = Instant::now();
    let mut notes = Vec::new();
    for (p, l) in [(3, 1), (3, 2), (3, 3), (7, 1), (7, 2), (5, 1), (5, 2)] {
        let md = m(p, l);
        let group = so2_elements(md);
        let bound = md.pow_p(l - 1) as usize;
        let restricted = p % 4 == 1;
        let mut max = (0, None);
        for xi in all_vectors(md, 2).filter(|v| !v.is_zero()) {
            if restricted && xi.norm().is_zero() {
                continue;
            }
            let size = stabilizer_in(&group, &xi).len();
            ensure(size <= bound, || {
                format!("q={}: |Stab{xi}| = {size} > {bound}", md.q())
            })?;
            if size > max.0 {
                max = (size, Some(xi));
            }
        }
        if md.q() == 9 {
            let xi = max.1.unwrap();
            ensure(max.0 == 3 && xi.norm().is_zero(), || {
                format!(
                    "q=9 maximum {} at {xi}, expected 3 at a zero-norm point",
                    max.0
                )
            })?;
        }
        notes.push(format!("q={} max {}", md.q(), max.0));
    }
    within(start.elapsed(), 30)?;
    Ok(notes.join(", "))
}

fn c2_lines() -> Outcome {
    let start = Instant::now();
    for (p, l) in [(3, 2), (3, 3), (5, 2)] {
        let md = m(p, l);
        for n in 0..l {
            let k = l - n;
            let pts = geometry::enumerate_stratum(md, n).unwrap();
            let lambda = p.pow(2 * k) - p.pow(2 * (k - 1));
            ensure(pts.len() as u64 == lambda, || {
                format!("q={} |Λ_{n}| = {}", md.q(), pts.len())
            })?;
            let lines = geometry::lines_in_stratum(md, n).unwrap().len() as u64;
            ensure(lines == p.pow(k) + p.pow(k - 1), || {
                format!("q={} |L_{n}| = {lines}", md.q())
            })?;
            for v in &pts {
                let through = geometry::lines_through(v).unwrap().len() as u64;
                ensure(through == p.pow(n), || {
                    format!("q={}: {v} on {through} lines", md.q())
                })?;
            }
        }
    }
    within(start.elapsed(), 10)?;
    Ok("q = 9, 27, 25".into())
}

fn c3_group_size() -> Outcome {
    let mut notes = Vec::new();
    for (p, l) in [(3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 1), (7, 2)] {
        let md = m(p, l);
        let g = so2_elements(md).len() as u64;
        let s1 = sphere_size(md.elem(1), 2);
        let ratio = s1 as f64 / md.q() as f64;
        ensure(g == s1 && (0.5..=2.0).contains(&ratio), || {
            format!("q={}: |SO_2| = {g}, |S_1| = {s1}", md.q())
        })?;
        notes.push(format!("{}:{g}", md.q()));
    }
    Ok(format!("|SO_2| by q: {}", notes.join(" ")))
}

fn random_grid(rng: &mut ChaCha20Rng, md: Modulus, d: usize) -> GridFunction {
    GridFunction::from_fn(md, d, |_| {
        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    })
}

fn c4_fourier() -> Outcome {
    let mut rng = ChaCha20Rng::seed_from_u64(4);
    let (mut inv, mut planch, mut naive) = (0.0f64, 0.0f64, 0.0f64);
    for l in 1..=3 {
        for d in 1..=2 {
            let md = m(3, l);
            for _ in 0..100 {
                let f = random_grid(&mut rng, md, d);
                let scale = f.values().iter().map(|z| z.norm()).fold(0.0, f64::max);
                let fhat = fourier::forward(&f);
                inv = inv.max(fourier::inverse(&fhat).max_abs_diff(&f) / scale);
                planch = planch.max(fourier::plancherel_gap(&f) / fourier::plancherel_scale(&f));
                naive = naive.max(fourier::forward_naive(&f).max_abs_diff(&fhat));
                naive =
                    naive.max(fourier::inverse_naive(&fhat).max_abs_diff(&fourier::inverse(&fhat)));
            }
        }
    }
    ensure(inv <= 1e-9 && planch <= 1e-9 && naive <= 1e-10, || {
        format!("inversion {inv:e}, plancherel {planch:e}, naive {naive:e}")
    })?;
    Ok(format!(
        "inversion {inv:.1e}, plancherel {planch:.1e}, naive gap {naive:.1e}"
    ))
}

fn random_set(rng: &mut ChaCha20Rng, md: Modulus, max: usize) -> PointSet {
    let n = (md.q() * md.q()) as usize;
    let size = rng.random_range(1..=max);
    let pts = (0..size)
        .map(|_| Vector::from_index(md, 2, rng.random_range(0..n)))
        .collect();
    PointSet::from_points(md, 2, pts).unwrap()
}

fn c5_spectral() -> Outcome {
    let md = m(3, 2);
    let group = so2_elements(md);
    let mut rng = ChaCha20Rng::seed_from_u64(5);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let e = random_set(&mut rng, md, 12);
        let ehat = fourier::forward(&e.indicator());
        for theta in &group {
            let direct = fourier::forward(&rotation_correlation(&e, theta).unwrap().to_grid());
            worst = worst.max(fourier::correlation_spectrum(&ehat, theta).max_abs_diff(&direct));
        }
    }
    ensure(worst <= 1e-8, || format!("max gap {worst:e}"))?;
    Ok(format!(
        "max gap {worst:.1e} over 50 sets x 12 rotations x 81 xi"
    ))
}

fn chain_holds(e: &PointSet, group: &[modgeom::Rotation]) -> Result<(), String> {
    let mu2 = t2_classes(e).sum_squares();
    let nu3 = rotation_correlation_cubes(e, group).unwrap();
    ensure(mu2 <= nu3, || {
        format!("sum mu^2 = {mu2} > {nu3} for {:?}", e.points())
    })
}

fn c6_moments() -> Outcome {
    let mut rng = ChaCha20Rng::seed_from_u64(6);
    for _ in 0..1000 {
        let len = rng.random_range(1..=100);
        let n = rng.random_range(2..=4);
        let f: Vec<f64> = (0..len).map(|_| rng.random_range(0..50) as f64).collect();
        let b = third_moment_bound(&f, n).unwrap();
        ensure(b.holds(), || {
            format!("lhs {} > rhs {} (n={n})", b.lhs, b.rhs)
        })?;
        let c = vec![f[0]; len];
        let b = third_moment_bound(&c, n).unwrap();
        ensure(b.lhs == b.rhs, || {
            format!("constant: lhs {} != rhs {}", b.lhs, b.rhs)
        })?;
    }

    let md = m(3, 1);
    let group = so2_elements(md);
    let mut small = 0;
    for k in 0..=4 {
        let mut rank = 0;
        while let Some(idx) = subset_by_rank(9, k, rank) {
            let pts = idx
                .iter()
                .map(|&i| Vector::from_index(md, 2, i as usize))
                .collect();
            chain_holds(&PointSet::from_points(md, 2, pts).unwrap(), &group)?;
            small += 1;
            rank += 1;
        }
    }
    let md = m(3, 2);
    let group = so2_elements(md);
    for _ in 0..100 {
        chain_holds(&random_set(&mut rng, md, 30), &group)?;
    }
    Ok(format!(
        "1000 tables; chain on {small} subsets of Z_3^2 and 100 of Z_9^2"
    ))
}

fn c7_strata() -> Outcome {
    for (p, l) in [(3, 2), (3, 3), (5, 2)] {
        let md = m(p, l);
        let formula = difference_stratum_counts(md);
        let enumerated = enumerate_difference_strata(md);
        ensure(formula == enumerated, || {
            format!("q={}: {formula:?} vs {enumerated:?}", md.q())
        })?;
        ensure(formula.within_bound(), || {
            format!("q={}: r = {} too large", md.q(), formula.weighted)
        })?;
    }
    let r9 = difference_stratum_counts(m(3, 2));
    ensure(r9.weighted == 1944 && r9.bound == 4374, || {
        format!("q=9: {r9:?}")
    })?;
    Ok("q=9 r = 1944 <= 4374".into())
}

fn theorem(
    kind: ExperimentKind,
    p: u64,
    l: u32,
    source: SetSource,
    trials: u64,
    seed: u64,
) -> ExperimentConfig {
    ExperimentConfig {
        p,
        l,
        d: 2,
        kind,
        source,
        trials,
        seed,
    }
}

fn c8_t2() -> Outcome {
    let start = Instant::now();
    let r =
        run_theorem_experiment(&theorem(ExperimentKind::T2, 3, 1, SetSource::Full, 1, 0)).unwrap();
    let rec = &r.records[0];
    ensure(rec.set_size == 9 && rec.meets_threshold, || {
        format!("{rec:?}")
    })?;
    ensure(rec.bound == 14 && rec.pass, || format!("{rec:?}"))?;
    ensure(rec.statistic == 21, || {
        format!("|T_2(Z_3^2)| = {}, pinned 21", rec.statistic)
    })?;
    within(start.elapsed(), 5)?;
    Ok("|T_2(Z_3^2)| = 21 >= 14".into())
}

fn c9_v2() -> Outcome {
    let start = Instant::now();
    let cfg = theorem(
        ExperimentKind::V2,
        3,
        2,
        SetSource::Random { size: 47 },
        100,
        42,
    );
    let r = run_theorem_experiment(&cfg).unwrap();
    ensure(r.records.len() == 100, || "wrong trial count".into())?;
    ensure(
        r.records
            .iter()
            .all(|t| t.meets_threshold && t.pass && t.bound == 2),
        || format!("{:?}", r.records.iter().find(|t| !t.pass)),
    )?;
    within(start.elapsed(), 60)?;
    let agg = r.aggregate.unwrap();
    Ok(format!("min |V_2| = {} >= 2 over 100 trials", agg.min))
}

fn c10_dotprod() -> Outcome {
    let start = Instant::now();
    let cfg = theorem(
        ExperimentKind::DotProd,
        3,
        2,
        SetSource::AllSubsets { size: 7 },
        1,
        0,
    );
    let r = run_theorem_experiment(&cfg).unwrap();
    ensure(r.records.len() == 36, || {
        format!("{} trials", r.records.len())
    })?;
    ensure(
        r.all_pass && r.records.iter().all(|t| t.meets_threshold && t.bound == 5),
        || "a subset failed".into(),
    )?;
    let agg = r.aggregate.unwrap();
    ensure(agg.min == 9, || format!("min |Pi| = {}, pinned 9", agg.min))?;
    within(start.elapsed(), 10)?;
    Ok(format!(
        "min |Pi(AxA)| = {} >= 5, min ratio {}",
        agg.min, agg.min_ratio
    ))
}

fn c11_hensel() -> Outcome {
    let mut rng = ChaCha20Rng::seed_from_u64(11);
    let mut lifted = 0;
    for p in [3u64, 5, 7] {
        for l in [2, 3] {
            let md = m(p, l);
            let q = md.q() as i64;
            for _ in 0..200 {
                let f = Polynomial::new(vec![
                    rng.random_range(0..q),
                    rng.random_range(0..q),
                    rng.random_range(1..q),
                ]);
                let roots = exhaustive_roots(&f, md);
                let df = f.derivative();
                for r in 0..p as i64 {
                    if f.eval_mod(r, p) != 0 || df.eval_mod(r, p) == 0 {
                        continue;
                    }
                    let lift = hensel_lift_root(&f, r, md).map_err(|e| e.to_string())?;
                    let class: Vec<u64> = roots
                        .iter()
                        .copied()
                        .filter(|x| x % p == r as u64)
                        .collect();
                    ensure(class == [lift.value()], || {
                        format!(
                            "q={q} f={:?} r={r}: lift {lift}, roots {class:?}",
                            f.coefficients()
                        )
                    })?;
                    lifted += 1;
                }
            }
        }
    }
    Ok(format!("{lifted} simple roots lifted"))
}

fn strip_wall_time(json: &[u8]) -> String {
    String::from_utf8_lossy(json)
        .lines()
        .filter(|l| !l.trim_start().starts_with("\"wall_time_ms\""))
        .collect::<Vec<_>>()
        .join("\n")
}

fn c12_determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let runs: [&[&str]; 3] = [
        &[
            "experiment",
            "--kind",
            "v2",
            "--p",
            "3",
            "--l",
            "2",
            "--set",
            "random:47",
            "--trials",
            "20",
            "--seed",
            "7",
        ],
        &[
            "experiment",
            "--kind",
            "dotprod",
            "--p",
            "3",
            "--l",
            "2",
            "--set",
            "subsets:7",
            "--seed",
            "1",
        ],
        &["verify-lemmas", "--p", "3", "--l", "2"],
    ];
    for args in runs {
        let mut outputs = Vec::new();
        for i in 0..2 {
            let out = dir.path().join(format!("run{i}.json"));
            let status = Command::new(env!("CARGO_BIN_EXE_modgeom"))
                .args(args)
                .arg("--out")
                .arg(&out)
                .output()
                .map_err(|e| e.to_string())?;
            ensure(status.status.success(), || {
                format!("{args:?} exited with {}", status.status)
            })?;
            outputs.push(strip_wall_time(
                &std::fs::read(&out).map_err(|e| e.to_string())?,
            ));
        }
        ensure(outputs[0] == outputs[1], || {
            format!("{args:?} reports differ")
        })?;
    }
    Ok("v2, dotprod and lemma reports identical across runs".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("stabilizer bounds", c1_stabilizers),
        ("line structure", c2_lines),
        ("sphere and group size", c3_group_size),
        ("fourier identities", c4_fourier),
        ("spectral identity", c5_spectral),
        ("moment lemma and second-moment chain", c6_moments),
        ("difference stratum counts", c7_strata),
        ("T_2 at threshold", c8_t2),
        ("V_2 on random 47-sets", c9_v2),
        ("dot products of 7-subset products", c10_dotprod),
        ("hensel lifting", c11_hensel),
        ("CLI determinism", c12_determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let t = start.elapsed();
        match outcome {
            Ok(note) => println!("criterion {:>2} PASS  {name} ({note}) [{t:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{t:.2?}]", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
