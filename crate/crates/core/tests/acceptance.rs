//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use cointoss::analysis::{
    alice_objective, exact_alice_distribution, exact_distribution, exact_win_probability,
    kitaev_reference, monte_carlo, optimize_alice, phase_sweep, sensitivity_scan,
};
use cointoss::qstate::Bit;
use cointoss::seed::seeded_rng;
use cointoss::strategies::{
    coefficient_strategy, measure_and_pick_bob, optimal_alice, random_bob_strategy,
    AliceCoefficients, PhiMode, Scenario,
};
use rand::Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

const MC_TRIALS: u64 = 1_000_000;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn mc_check(scenario: &Scenario<f64>, target: Bit, seed: u64) -> Result<f64, String> {
    let exact = exact_distribution(scenario).map_err(|e| e.to_string())?;
    let mc = monte_carlo(scenario, target, MC_TRIALS, seed).map_err(|e| e.to_string())?;
    let mut worst = 0.0f64;
    for (freq, p) in [
        (mc.heads_frequency(), exact.heads),
        (mc.tails_frequency(), exact.tails),
        (mc.abort_frequency(), exact.abort),
    ] {
        let z = freq.z_score(p);
        ensure(z < 5.0, || {
            format!("frequency {} vs exact {p} is {z:.2} sigma", freq.value)
        })?;
        worst = worst.max(z);
    }
    Ok(worst)
}

fn honest() -> Check {
    let start = Instant::now();
    let d = exact_distribution(&Scenario::<f64>::Honest).map_err(|e| e.to_string())?;
    ensure(
        (d.heads - 0.5).abs() <= 1e-12 && (d.tails - 0.5).abs() <= 1e-12 && d.abort.abs() <= 1e-12,
        || format!("exact {d:?}"),
    )?;
    let z = mc_check(&Scenario::Honest, Bit::Zero, 1)?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(30), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "heads {} tails {} abort {}; 10^6 trials max |z| {z:.2}; {elapsed:.2?}",
        d.heads, d.tails, d.abort
    ))
}

fn optimal_alice_bias() -> Check {
    let mut notes = Vec::new();
    for target in Bit::BOTH {
        let scenario = Scenario::CheatingAlice(optimal_alice::<f64>(target));
        let r = exact_win_probability(&scenario, target).map_err(|e| e.to_string())?;
        ensure((r.p_win_exact - 0.75).abs() <= 1e-9, || {
            format!("target {target}: win {}", r.p_win_exact)
        })?;
        ensure((r.p_abort_exact - 1.0 / 6.0).abs() <= 1e-9, || {
            format!("target {target}: abort {}", r.p_abort_exact)
        })?;
        let z = mc_check(&scenario, target, 2 + target.as_u8() as u64)?;
        notes.push(format!(
            "target {target}: win {:.12} abort {:.12} max |z| {z:.2}",
            r.p_win_exact, r.p_abort_exact
        ));
    }
    Ok(notes.join("; "))
}

fn optimizer() -> Check {
    let start = Instant::now();
    let r = optimize_alice::<f64>(100, 1e-10).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let s = 1.0 / 6.0f64.sqrt();
    let expected = [(2.0f64 / 3.0).sqrt(), s, s, 0.0];
    let got = r.argmax.as_array();
    let swapped = [got[0], got[2], got[1], got[3]];
    let close = |a: [f64; 4]| a.iter().zip(&expected).all(|(x, y)| (x - y).abs() <= 1e-3);
    ensure((r.value - 0.75).abs() <= 1e-6, || {
        format!("value {}", r.value)
    })?;
    ensure(close(got) || close(swapped), || format!("argmax {got:?}"))?;
    ensure(elapsed < Duration::from_secs(60), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "value {:.12} at {got:.6?}; {} evaluations; {elapsed:.2?}",
        r.value, r.evaluations
    ))
}

fn oracle_equivalence() -> Check {
    let mut rng = seeded_rng(4);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let raw: [f64; 4] = std::array::from_fn(|_| rng.random::<f64>());
        let c = AliceCoefficients::normalize(raw).map_err(|e| e.to_string())?;
        let closed = alice_objective(&c).map_err(|e| e.to_string())?;
        let strategy = coefficient_strategy(&c, PhiMode::Aligned).map_err(|e| e.to_string())?;
        let simulated = exact_alice_distribution(&strategy)
            .map_err(|e| e.to_string())?
            .heads;
        let gap = (closed - simulated).abs();
        ensure(gap <= 1e-9, || {
            format!("{c:?}: objective {closed} vs simulated {simulated}")
        })?;
        worst = worst.max(gap);
    }
    Ok(format!("100 tuples, max gap {worst:.2e}"))
}

fn bob() -> Check {
    let mut notes = Vec::new();
    for target in Bit::BOTH {
        let scenario = Scenario::CheatingBob(measure_and_pick_bob::<f64>(target));
        let r = exact_win_probability(&scenario, target).map_err(|e| e.to_string())?;
        ensure((r.p_win_exact - 0.75).abs() <= 1e-9, || {
            format!("target {target}: win {}", r.p_win_exact)
        })?;
        ensure(r.p_abort_exact == 0.0, || {
            format!("target {target}: abort {}", r.p_abort_exact)
        })?;
        notes.push(format!("target {target} win {:.12}", r.p_win_exact));
    }
    let mut rng = seeded_rng(5);
    let mut best = 0.0f64;
    for i in 0..1000 {
        let strategy = random_bob_strategy::<f64, _>(&mut rng);
        let d = exact_distribution(&Scenario::CheatingBob(strategy)).map_err(|e| e.to_string())?;
        let p = d.heads.max(d.tails);
        ensure(p <= 0.75 + 1e-9, || {
            format!("random strategy {i} wins with {p}")
        })?;
        best = best.max(p);
    }
    Ok(format!(
        "{}, no aborts; 1000 random strategies, best {best:.9}",
        notes.join(", ")
    ))
}

fn sensitivity() -> Check {
    let points = sensitivity_scan::<f64>(50).map_err(|e| e.to_string())?;
    for p in &points {
        ensure(p.p_win <= 0.5 + 1e-6 || p.p_detect > 0.0, || {
            format!("t {}: win {} undetected", p.t, p.p_win)
        })?;
    }
    let series: Vec<String> = points
        .iter()
        .map(|p| format!("{:.6}", p.p_detect))
        .collect();
    let monotone = points
        .windows(2)
        .all(|w| w[1].p_detect >= w[0].p_detect - 1e-12);
    Ok(format!(
        "50 points, p_detect monotone: {monotone}\n    p_detect = [{}]",
        series.join(", ")
    ))
}

fn balance() -> Check {
    let pairs = [
        (
            "optimal-alice",
            Scenario::CheatingAlice(optimal_alice::<f64>(Bit::Zero)),
            Scenario::CheatingAlice(optimal_alice::<f64>(Bit::One)),
        ),
        (
            "measure-and-pick",
            Scenario::CheatingBob(measure_and_pick_bob::<f64>(Bit::Zero)),
            Scenario::CheatingBob(measure_and_pick_bob::<f64>(Bit::One)),
        ),
    ];
    let mut notes = Vec::new();
    for (name, zero, one) in pairs {
        let p0 = exact_win_probability(&zero, Bit::Zero)
            .map_err(|e| e.to_string())?
            .p_win_exact;
        let p1 = exact_win_probability(&one, Bit::One)
            .map_err(|e| e.to_string())?
            .p_win_exact;
        ensure((p0 - p1).abs() <= 1e-9, || format!("{name}: {p0} vs {p1}"))?;
        notes.push(format!("{name} eps = {:.12}", p0.max(p1) - 0.5));
    }
    notes.push(format!("reference {:.12}", kitaev_reference::<f64>()));
    Ok(notes.join(", "))
}

fn phases() -> Check {
    let c = AliceCoefficients::<f64>::optimal();
    let best = phase_sweep(&c, 1000, &mut seeded_rng(8)).map_err(|e| e.to_string())?;
    ensure(best <= 0.75 + 1e-9, || {
        format!("phase sweep reached {best}")
    })?;
    Ok(format!("1000 samples, best {best:.12}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("honest protocol is fair", honest),
        ("optimal alice wins 3/4", optimal_alice_bias),
        ("optimizer finds 3/4", optimizer),
        ("objective matches simulation", oracle_equivalence),
        ("bob bounded by 3/4", bob),
        ("cheating alice is detectable", sensitivity),
        ("protocol is balanced", balance),
        ("phases do not help alice", phases),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why}", i + 1);
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
