//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p sdsc-harness --test acceptance`.

#![allow(clippy::approx_constant, clippy::type_complexity)]

use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sdsc_core::fixtures::{default_base, quality_cases, sensitivity_cases};
use sdsc_core::stats::{band_stats, synthetic_pairs, write_pairs, PairedSample};
use sdsc_core::{
    dice, dtw, finite_difference, grad_hybrid, grad_mae, grad_mse, grad_sdsc_loss, hybrid_loss,
    mae, mse, relative_error, sdsc, sdsc_loss, soft_dtw, DtwNormalization, HeavisideMode,
    LocalCost, LossConfig64, Signal, Signal64, StepPolicy,
};
use sdsc_harness::commands;
use sdsc_harness::config::{FixtureParams, StatsParams, StatsSource};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn near(what: &str, actual: f64, expected: f64, tol: f64) -> Result<(), String> {
    ensure((actual - expected).abs() <= tol, || {
        format!("{what}: {actual:.6} not within {tol:e} of {expected}")
    })
}

fn sig(v: Vec<f64>) -> Signal64 {
    Signal::new(v).expect("finite samples")
}

fn exact() -> HeavisideMode<f64> {
    HeavisideMode::Exact
}

fn table1() -> Outcome {
    let start = Instant::now();
    let base = default_base(1000, 1.0);
    let expected: &[(&str, f64, f64, Option<(f64, f64)>)] = &[
        ("Inverted", 0.0200, 0.1272, Some((0.0, 0.0))),
        ("0.5x Scaled", 0.1249, 0.3180, Some((0.6667, 1e-4))),
        ("2x Scaled", 0.4995, 0.6360, Some((0.6667, 1e-4))),
        ("Zero", 0.4995, 0.6360, Some((0.0, 0.0))),
        ("Noise Sample", f64::NAN, f64::NAN, None),
        ("Positive Shifted", 1.0, 1.0, Some((0.3887, 2e-3))),
        ("Negative Shifted", 1.0, 1.0, Some((0.3887, 2e-3))),
    ];
    let analytic = 4.0 / (4.0 + 2.0 * std::f64::consts::PI);
    let cases = quality_cases::<f64>(42);
    ensure(cases.len() == expected.len(), || "row count".into())?;
    for (case, &(label, m, a, s)) in cases.iter().zip(expected) {
        ensure(case.label == label, || format!("row {label} missing"))?;
        let (e, r) = case.build(&base).map_err(|x| x.to_string())?;
        let score = sdsc(&e, &r, exact(), 1e-8).unwrap();
        if let Some((value, tol)) = s {
            near(&format!("{label} MSE"), mse(&e, &r).unwrap(), m, 1e-3)?;
            near(&format!("{label} MAE"), mae(&e, &r).unwrap(), a, 1e-3)?;
            if tol == 0.0 {
                ensure(score == 0.0, || {
                    format!("{label} SDSC {score} is not exactly 0")
                })?;
            } else {
                near(&format!("{label} SDSC"), score, value, tol)?;
            }
        }
        if label.ends_with("Shifted") {
            near(&format!("{label} SDSC (analytic)"), score, analytic, 2e-3)?;
        }
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(1), || {
        format!("runtime {took:?}")
    })?;
    Ok(format!("7 rows in {took:?}"))
}

fn table2() -> Outcome {
    let base = default_base(1000, 1.0);
    let mse_norms = [
        ("Inverted", 0.0894),
        ("0.5x Scaled", 0.0223),
        ("2x Scaled", 0.0447),
        ("Zero", 0.0447),
        ("Shifted", 0.0632),
    ];
    let mut rows = 0;
    for case in sensitivity_cases::<f64>(42) {
        let (e, r) = case.build(&base).map_err(|x| x.to_string())?;
        let mae_norm = grad_mae(&e, &r).unwrap().l2_norm;
        near(&format!("{} MAE norm", case.label), mae_norm, 0.0316, 5e-4)?;
        if let Some(&(_, want)) = mse_norms.iter().find(|(l, _)| *l == case.label) {
            let got = grad_mse(&e, &r).unwrap().l2_norm;
            near(&format!("{} MSE norm", case.label), got, want, 5e-4)?;
        }
        rows += 1;
    }
    Ok(format!(
        "{rows} rows, MAE norm 1/sqrt(1000) = {:.5}",
        1000f64.sqrt().recip()
    ))
}

fn table3() -> Outcome {
    let base = default_base(1000, 1.0);
    let cases = sensitivity_cases::<f64>(42);
    let norm = |label: &str, alpha: f64| -> f64 {
        let case = cases.iter().find(|c| c.label == label).expect("case");
        let (e, r) = case.build(&base).unwrap();
        grad_sdsc_loss(&e, &r, &LossConfig64::sigmoid(alpha))
            .unwrap()
            .l2_norm
    };
    let alphas = [1.0, 10.0, 100.0];
    for alpha in alphas {
        let z = norm("Zero", alpha);
        ensure(z == 0.0, || format!("Zero row at alpha={alpha}: {z}"))?;
    }
    for (label, want) in [
        ("0.5x Scaled", [0.0289, 0.0437, 0.0436]),
        ("Inverted", [0.0091, 0.0082, 0.0047]),
    ] {
        for (alpha, w) in alphas.iter().zip(want) {
            near(
                &format!("{label} alpha={alpha}"),
                norm(label, *alpha),
                w,
                2e-3,
            )?;
        }
    }
    for label in ["0.5x Scaled", "2x Scaled"] {
        let [n1, n10, n100] = alphas.map(|a| norm(label, a));
        ensure((n10 - n100).abs() < (n1 - n100).abs(), || {
            format!("{label}: alpha=10 ({n10:.4}) not closer to alpha=100 ({n100:.4}) than alpha=1 ({n1:.4})")
        })?;
    }
    Ok("Zero, 0.5x, Inverted rows and the alpha=10 claim".into())
}

/// Candidate samples stay away from zero and from `|r| = |e|`.
fn random_pair(rng: &mut ChaCha8Rng, n: usize) -> (Signal64, Signal64) {
    const MARGIN: f64 = 0.05;
    let e: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
    let r = e
        .iter()
        .map(|&ei| loop {
            let ri: f64 = rng.random_range(-1.5..1.5);
            if ri.abs() > MARGIN && (ri.abs() - ei.abs()).abs() > MARGIN {
                break ri;
            }
        })
        .collect();
    (sig(e), sig(r))
}

fn gradcheck() -> Outcome {
    let start = Instant::now();
    let policy = StepPolicy::default();
    let mut worst = 0.0f64;
    let mut checks = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    for n in [8, 64, 1000] {
        for _ in 0..100 {
            let (e, r) = random_pair(&mut rng, n);
            let mut record = |name: &str, analytic: &[f64], numeric: Vec<f64>| {
                let err = relative_error(analytic, &numeric);
                worst = worst.max(err);
                checks += 1;
                ensure(err < 1e-5, || {
                    format!("{name} N={n}: relative error {err:e}")
                })
            };
            let fd = finite_difference(mse, &e, &r, policy).unwrap();
            record("mse", &grad_mse(&e, &r).unwrap().grad, fd)?;
            for alpha in [1.0, 10.0, 100.0] {
                let cfg = LossConfig64::sigmoid(alpha);
                let fd = finite_difference(|a, b| sdsc_loss(a, b, &cfg), &e, &r, policy).unwrap();
                record("sdsc_loss", &grad_sdsc_loss(&e, &r, &cfg).unwrap().grad, fd)?;
            }
            let cfg = LossConfig64::sigmoid(10.0).with_weights(0.3, 0.7);
            let fd = finite_difference(|a, b| Ok(hybrid_loss(a, b, &cfg)?.total), &e, &r, policy)
                .unwrap();
            record("hybrid", &grad_hybrid(&e, &r, &cfg).unwrap().grad, fd)?;
        }
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(30), || {
        format!("runtime {took:?}")
    })?;
    Ok(format!(
        "{checks} gradients, worst relative error {worst:.2e}, {took:?}"
    ))
}

/// Exhaustive minimum over all monotone warping paths.
fn dtw_enumerated(x: &[f64], y: &[f64], cost: LocalCost) -> f64 {
    fn go(x: &[f64], y: &[f64], i: usize, j: usize, cost: LocalCost) -> f64 {
        let here = cost.eval(x[i], y[j]);
        if i == 0 && j == 0 {
            return here;
        }
        let mut best = f64::INFINITY;
        if i > 0 {
            best = best.min(go(x, y, i - 1, j, cost));
        }
        if j > 0 {
            best = best.min(go(x, y, i, j - 1, cost));
        }
        if i > 0 && j > 0 {
            best = best.min(go(x, y, i - 1, j - 1, cost));
        }
        here + best
    }
    go(x, y, x.len() - 1, y.len() - 1, cost)
}

fn all_words(alphabet: &[f64], max_len: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<f64>> = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| {
                alphabet.iter().map(move |&a| {
                    let mut w = w.clone();
                    w.push(a);
                    w
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);

    for i in 0..10_000 {
        let n = rng.random_range(1..=32);
        let draw = |rng: &mut ChaCha8Rng| -> f64 {
            match rng.random_range(0..10) {
                0 => 0.0,
                1 => rng.random_range(-1e6..1e6),
                _ => rng.random_range(-5.0..5.0),
            }
        };
        let a = sig((0..n).map(|_| draw(&mut rng)).collect());
        let b = sig((0..n).map(|_| draw(&mut rng)).collect());
        let ab = sdsc(&a, &b, exact(), 1e-8).unwrap();
        let ba = sdsc(&b, &a, exact(), 1e-8).unwrap();
        ensure((0.0..=1.0).contains(&ab), || {
            format!("pair {i}: sdsc {ab} out of [0,1]")
        })?;
        ensure((ab - ba).abs() <= 1e-12, || {
            format!("pair {i}: asymmetry {:e}", ab - ba)
        })?;
    }

    for i in 0..50 {
        let n = rng.random_range(1..=64);
        let x: Vec<f64> = (0..n)
            .map(|_| loop {
                let v: f64 = rng.random_range(-3.0..3.0);
                if v != 0.0 {
                    break v;
                }
            })
            .collect();
        let c: f64 = 10f64.powf(rng.random_range(-2.0..2.0));
        let cx: Vec<f64> = x.iter().map(|v| c * v).collect();
        let got = sdsc(&sig(x), &sig(cx), exact(), 0.0).unwrap();
        let want = 2.0 * c.min(1.0) / (1.0 + c);
        near(&format!("scale law case {i} (c={c:.3})"), got, want, 1e-9)?;
    }

    for i in 0..1000 {
        let n = rng.random_range(1..=24);
        let a: Vec<bool> = (0..n).map(|_| rng.random_bool(0.5)).collect();
        let b: Vec<bool> = (0..n).map(|_| rng.random_bool(0.5)).collect();
        let ind = |m: &[bool]| sig(m.iter().map(|&x| if x { 1.0 } else { 0.0 }).collect());
        let d = dice(&a, &b).unwrap();
        let s = sdsc(&ind(&a), &ind(&b), exact(), 0.0).unwrap();
        ensure(d == s, || format!("mask pair {i}: dice {d} vs sdsc {s}"))?;
    }

    let mut worst_gap = 0.0f64;
    for i in 0..200 {
        let (n, m) = (rng.random_range(1..=8), rng.random_range(1..=8));
        let x = sig((0..n).map(|_| rng.random_range(-2.0..2.0)).collect());
        let y = sig((0..m).map(|_| rng.random_range(-2.0..2.0)).collect());
        let hard = dtw(&x, &y, LocalCost::Squared, DtwNormalization::None).unwrap();
        let soft = soft_dtw(&x, &y, 1.0).unwrap();
        ensure(soft <= hard, || {
            format!("pair {i}: soft_dtw {soft} > dtw {hard}")
        })?;
        let sharp = soft_dtw(&x, &y, 1e-3).unwrap();
        worst_gap = worst_gap.max((sharp - hard).abs());
        ensure((sharp - hard).abs() < 1e-2, || {
            format!(
                "pair {i}: |soft_dtw(1e-3) - dtw| = {:e}",
                (sharp - hard).abs()
            )
        })?;
    }

    let words = all_words(&[-1.0, 0.0, 1.0], 5);
    let mut pairs = 0;
    for x in &words {
        for y in &words {
            let (sx, sy) = (sig(x.clone()), sig(y.clone()));
            for cost in [LocalCost::Abs, LocalCost::Squared] {
                let got = dtw(&sx, &sy, cost, DtwNormalization::None).unwrap();
                let want = dtw_enumerated(x, y, cost);
                ensure(got == want, || {
                    format!("dtw {x:?} vs {y:?}: {got} != {want}")
                })?;
            }
            pairs += 1;
        }
    }
    Ok(format!(
        "10k bounded+symmetric, 50 scale laws, 1000 masks, 200 DTW pairs (gap {worst_gap:.1e}), {pairs} enumerated pairs"
    ))
}

fn sorted_quantile(v: &[f64], p: f64) -> f64 {
    let mut s = v.to_vec();
    s.sort_by(f64::total_cmp);
    let h = (s.len() - 1) as f64 * p;
    let lo = h.floor();
    let i = lo as usize;
    if i + 1 >= s.len() {
        s[i]
    } else {
        s[i] + (h - lo) * (s[i + 1] - s[i])
    }
}

fn stats_oracle() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("linear.csv");
    let linear: Vec<PairedSample<f64>> = (0..=200)
        .map(|i| {
            let m = 2.0 * i as f64 / 200.0;
            PairedSample::new(m, 1.0 - m / 2.0).unwrap()
        })
        .collect();
    let mut file = std::fs::File::create(&path).map_err(|e| e.to_string())?;
    write_pairs(&linear, &mut file).map_err(|e| e.to_string())?;
    drop(file);
    let report = commands::stats(&StatsParams {
        source: StatsSource::File { path },
        band_center: 1.0,
        band_eps: 0.5,
        bins: 20,
        seed: 0,
    })
    .map_err(|e| e.to_string())?;
    let r = report
        .num("pearson_r", "value")
        .ok_or("pearson_r row missing")?;
    near("pearson on exact linear relation", r, -1.0, 1e-12)?;

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for trial in 0..200 {
        let n = rng.random_range(2..=1000);
        let samples: Vec<PairedSample<f64>> = (0..n)
            .map(|_| {
                PairedSample::new(rng.random_range(0.0..3.0), rng.random_range(0.0..1.0)).unwrap()
            })
            .collect();
        let band = band_stats(&samples, 1.5, 10.0).map_err(|e| e.to_string())?;
        let values: Vec<f64> = samples.iter().map(|s| s.sdsc_value).collect();
        let (q1, q2, q3) = (
            sorted_quantile(&values, 0.25),
            sorted_quantile(&values, 0.5),
            sorted_quantile(&values, 0.75),
        );
        ensure(band.q1 == q1 && band.median == q2 && band.q3 == q3, || {
            format!("trial {trial} (n={n}): quantiles differ from sort oracle")
        })?;
        ensure(band.iqr == q3 - q1, || {
            format!("trial {trial}: IQR {} vs {}", band.iqr, q3 - q1)
        })?;
    }

    let mut worst = 0.0f64;
    for seed in 0..5 {
        let pairs = synthetic_pairs(10_000, -0.3, seed).map_err(|e| e.to_string())?;
        let xs: Vec<f64> = pairs.iter().map(|p| p.mse_value).collect();
        let ys: Vec<f64> = pairs.iter().map(|p| p.sdsc_value).collect();
        let r = sdsc_core::stats::pearson(&xs, &ys).map_err(|e| e.to_string())?;
        worst = worst.max((r + 0.3).abs());
        near(&format!("synthetic rho=-0.3 seed {seed}"), r, -0.3, 0.03)?;
    }
    Ok(format!(
        "linear r=-1, 200 quantile trials, synthetic worst deviation {worst:.4}"
    ))
}

fn run_cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_sdsc"))
        .args(args)
        .env_remove(sdsc_harness::OUT_DIR_ENV)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.code() == Some(0), || {
        format!(
            "{args:?} exited {:?}: {}",
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        )
    })?;
    Ok(out.stdout)
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let base = default_base(64, 1.0);
    let (e, r) = quality_cases::<f64>(3)[4]
        .build(&base)
        .map_err(|e| e.to_string())?;
    let (pe, pr) = (dir.path().join("e.csv"), dir.path().join("r.csv"));
    sdsc_core::io::save_csv(&e, &pe).map_err(|e| e.to_string())?;
    sdsc_core::io::save_csv(&r, &pr).map_err(|e| e.to_string())?;
    let (pe, pr) = (pe.to_str().unwrap(), pr.to_str().unwrap());

    let runs: Vec<Vec<&str>> = vec![
        vec!["table1"],
        vec!["sensitivity"],
        vec!["alpha-sweep"],
        vec!["stats", "--synthetic", "2000", "--seed", "5"],
        vec!["compare", pe, pr, "--gradients"],
    ];
    for args in &runs {
        let mut full = args.clone();
        full.extend(["--format", "csv"]);
        let a = run_cli(&full)?;
        let b = run_cli(&full)?;
        ensure(!a.is_empty() && a == b, || {
            format!("{args:?}: outputs differ")
        })?;
    }
    let p = FixtureParams::default();
    let one = commands::table1(&p).map_err(|e| e.to_string())?;
    let two = commands::table1(&p).map_err(|e| e.to_string())?;
    ensure(
        one.render(sdsc_harness::OutputFormat::Csv) == two.render(sdsc_harness::OutputFormat::Csv),
        || "in-process table1 differs".into(),
    )?;
    Ok(format!(
        "{} commands byte-identical across two runs",
        runs.len()
    ))
}

#[test]
fn primary_criteria() {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("Metric panel (table1)", table1),
        ("Gradient sensitivity", table2),
        ("Alpha sweep", table3),
        ("Gradcheck suite", gradcheck),
        ("Property suite", properties),
        ("Stats oracle", stats_oracle),
        ("Determinism", determinism),
    ];
    // Written to the raw handle so the lines appear without `--nocapture`.
    let mut log = std::io::stderr().lock();
    let mut failures = Vec::new();
    for (name, check) in criteria {
        match check() {
            Ok(detail) => writeln!(log, "PASS  {name}: {detail}").unwrap(),
            Err(why) => {
                writeln!(log, "FAIL  {name}: {why}").unwrap();
                failures.push(name);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
