//! Acceptance gate. Prints one line per criterion and exits nonzero when
//! any of criteria 1 to 8 fails.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use hbch::evalcodes::{evaluation_code, hermitian_dual, min_distance_exhaustive, puncture, subfield_subcode};
use hbch::hermitian::{
    classic_bound, big_order, classify_case, is_hermitian_self_orthogonal, sharp_bound_bruteforce,
    sharp_bound_closed_form, CaseId,
};
use hbch::quantum::{homothetic_pipeline, PipelineConfig};
use hbch::{CosetSystem, DefiningSet, FieldTower, LinearCode, PointSet};

type Verdict = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:.1?}, limit {limit:?}"))
}

fn reference_run(cfg: PipelineConfig, n: usize, rank: usize, d: u64, limit: Duration) -> Verdict {
    let start = Instant::now();
    let r = homothetic_pipeline(&cfg).map_err(|e| e.to_string())?;
    within(start, limit)?;
    ensure(r.params.n == n, || format!("length {} != {n}", r.params.n))?;
    ensure(r.rank == rank, || format!("rank {} != {rank}", r.rank))?;
    ensure(r.gram_zero, || "Gram matrix is nonzero".into())?;
    ensure(r.params.d_designed == d, || format!("designed distance {} != {d}", r.params.d_designed))?;
    Ok(format!("{} rank={} next_rep={} ({:.1?})", r.params, r.rank, r.next_representative, start.elapsed()))
}

fn criterion_1() -> Verdict {
    reference_run(
        PipelineConfig::representatives(2, 5, 93, 2, &[1, 2, 3, 5, 6, 7], false),
        186,
        30,
        9,
        Duration::from_secs(30),
    )
}

fn criterion_2() -> Verdict {
    let a = reference_run(PipelineConfig::tau(5, 2, 48, 2, 7, false), 96, 14, 8, Duration::from_secs(10))?;
    let b = reference_run(PipelineConfig::tau(5, 2, 48, 2, 6, false), 96, 12, 7, Duration::from_secs(10))?;
    Ok(format!("{a}; {b}"))
}

fn criterion_3() -> Verdict {
    let r = reference_run(PipelineConfig::tau(8, 2, 91, 1, 9, false), 91, 18, 11, Duration::from_secs(10))?;
    Ok(r)
}

/// (q, s) with q^{2s} ≤ 2²⁴ from the sweep grid.
fn sweep_grid() -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    for q in [2u64, 3, 4, 5, 7, 8] {
        for s in [2u32, 3, 4, 5] {
            if big_order(q, s).unwrap() < 1 << 24 {
                out.push((q, s));
            }
        }
    }
    out
}

fn case_lengths(q: u64, s: u32, limit: u64) -> Vec<u64> {
    let order = big_order(q, s).unwrap();
    (2..=limit).filter(|&n| order.is_multiple_of(n as u128) && !classify_case(q, s, n).is_empty()).collect()
}

fn criterion_4() -> Verdict {
    let start = Instant::now();
    let mut checked = 0;
    let mut excluded = 0;
    let mut mismatches = Vec::new();
    for (q, s) in sweep_grid() {
        for n1 in case_lengths(q, s, 5000) {
            let brute = sharp_bound_bruteforce(q, s, n1).map_err(|e| e.to_string())?.l;
            for c in classify_case(q, s, n1) {
                if c.excluded {
                    excluded += 1;
                    continue;
                }
                let closed = sharp_bound_closed_form(&c).map_err(|e| e.to_string())?.l;
                checked += 1;
                if closed != brute {
                    mismatches.push(format!("q={q} s={s} n1={n1} case {} closed={closed} brute={brute}", c.case));
                }
            }
        }
    }
    within(start, Duration::from_secs(300))?;
    if mismatches.is_empty() {
        Ok(format!("{checked} rows agree ({excluded} excluded rows skipped)"))
    } else {
        Err(format!("{} of {checked} rows disagree: {}", mismatches.len(), mismatches.join("; ")))
    }
}

fn bch(tower: &Arc<FieldTower>, system: &Arc<CosetSystem>, tau: usize) -> LinearCode {
    let n1 = system.modulus() as u64;
    let points = PointSet::roots_of_unity(tower.clone(), n1).unwrap();
    let delta = DefiningSet::prefix(system.clone(), tau, false).unwrap();
    subfield_subcode(&evaluation_code(&points, &delta), tower).unwrap()
}

fn gram_ok(code: &LinearCode) -> bool {
    is_hermitian_self_orthogonal(code).unwrap().self_orthogonal
}

fn criterion_5() -> Verdict {
    let mut sets = 0;
    let mut failures = Vec::new();
    for (q, s) in sweep_grid() {
        if big_order(q, s).unwrap() >= 1 << 16 {
            continue;
        }
        let tower = Arc::new(FieldTower::new(q as u32, s).unwrap());
        for n1 in case_lengths(q, s, 800) {
            let system = Arc::new(CosetSystem::new(n1 as u32, q as u32).unwrap());
            for c in classify_case(q, s, n1).into_iter().filter(|c| !c.excluded) {
                let l = sharp_bound_closed_form(&c).unwrap().l;
                let reps = system.representatives();
                let tau = reps.iter().filter(|&&a| a != 0 && a as i64 <= l).count();
                if tau == 0 || tau == system.nonzero_count() {
                    continue;
                }
                sets += 1;
                let at = gram_ok(&bch(&tower, &system, tau));
                let next = gram_ok(&bch(&tower, &system, tau + 1));
                if !at || next {
                    let brute = sharp_bound_bruteforce(q, s, n1).unwrap().l;
                    let tb = reps.iter().filter(|&&a| a != 0 && a as i64 <= brute).count();
                    let brute_sharp = gram_ok(&bch(&tower, &system, tb)) && !gram_ok(&bch(&tower, &system, tb + 1));
                    failures.push(format!(
                        "q={q} s={s} n1={n1} case {} L={l}: a'={} {} / a'={} {} (brute-force L={brute} {})",
                        c.case,
                        reps[tau],
                        if at { "passes" } else { "FAILS" },
                        reps[tau + 1],
                        if next { "PASSES" } else { "fails" },
                        if brute_sharp { "is sharp" } else { "is not sharp" }
                    ));
                }
            }
        }
    }
    ensure(sets >= 10, || format!("only {sets} parameter sets"))?;
    if failures.is_empty() {
        Ok(format!("{sets} parameter sets sharp"))
    } else {
        Err(format!("{} of {sets} sets not sharp: {}", failures.len(), failures.join("; ")))
    }
}

fn criterion_6() -> Verdict {
    let mut tuples = 0;
    let mut failures = Vec::new();
    for (q, s) in [(2u32, 2u32), (2, 3), (3, 2), (2, 4), (4, 2)] {
        let tower = Arc::new(FieldTower::new(q, s).unwrap());
        let order = tower.big_mult_order();
        let full = Arc::new(CosetSystem::new(order as u32, q).unwrap());
        for n1 in (3..order).filter(|n| order.is_multiple_of(*n)) {
            let small = Arc::new(CosetSystem::new(n1 as u32, q).unwrap());
            for lambda in (2..=order / n1).filter(|l| !order.is_multiple_of(l * n1)).take(2) {
                let points = PointSet::homothetic(tower.clone(), n1, lambda).unwrap();
                for tau in 1..=full.nonzero_count().min(6) {
                    let delta = DefiningSet::prefix(full.clone(), tau, false).unwrap();
                    let reduced = delta.reduce_into(small.clone()).unwrap();
                    if reduced.includes_zero() {
                        break;
                    }
                    let u = PointSet::roots_of_unity(tower.clone(), n1).unwrap();
                    let first_block = subfield_subcode(&evaluation_code(&u, &reduced), &tower).unwrap();
                    if !gram_ok(&first_block) {
                        break;
                    }
                    let code = subfield_subcode(&evaluation_code(&points, &delta), &tower).unwrap();
                    let punctured = puncture(&code, 0..n1 as usize).unwrap();
                    tuples += 1;
                    if !gram_ok(&code) || !gram_ok(&punctured) {
                        failures.push(format!("q={q} s={s} n1={n1} lambda={lambda} tau={tau}"));
                    }
                }
            }
        }
    }
    ensure(tuples >= 20, || format!("only {tuples} tuples"))?;
    if failures.is_empty() {
        Ok(format!("{tuples} tuples, every homothetic code self-orthogonal"))
    } else {
        Err(format!("not self-orthogonal: {}", failures.join("; ")))
    }
}

fn criterion_7() -> Verdict {
    let (mut three, mut two) = (0, 0);
    let mut saw_reference = false;
    for (q, s) in sweep_grid() {
        for n1 in case_lengths(q, s, big_order(q, s).unwrap() as u64) {
            for c in classify_case(q, s, n1) {
                let classic = classic_bound(q, s, n1);
                let l = match sharp_bound_closed_form(&c) {
                    Ok(r) => r.l,
                    Err(_) => continue,
                };
                match c.case {
                    CaseId::Three if s % 2 == 1 => {
                        three += 1;
                        saw_reference |= (q, s, c.aux) == (2, 5, 1);
                        ensure(l > classic, || format!("case 3 q={q} s={s} n1={n1}: L={l} <= classic={classic}"))?;
                    }
                    CaseId::Two => {
                        two += 1;
                        ensure(l == classic, || format!("case 2 q={q} s={s} n1={n1}: L={l} != classic={classic}"))?;
                    }
                    _ => {}
                }
            }
        }
    }
    ensure(saw_reference, || "q=2, s=5, a=1 not swept".into())?;
    ensure(three > 0 && two > 0, || "empty comparison".into())?;
    Ok(format!("{three} case 3 rows strictly above, {two} case 2 rows equal"))
}

fn criterion_8() -> Verdict {
    let start = Instant::now();
    let tower = Arc::new(FieldTower::new(2, 2).unwrap());
    let system = Arc::new(CosetSystem::new(15, 2).unwrap());
    let l = sharp_bound_bruteforce(2, 2, 15).unwrap().l;
    let mut lines = Vec::new();
    let reps = system.representatives();
    for tau in (1..system.nonzero_count()).filter(|&t| reps[t] as i64 <= l) {
        let code = bch(&tower, &system, tau);
        ensure(gram_ok(&code), || format!("tau={tau} not self-orthogonal"))?;
        let dual = hermitian_dual(&code).unwrap();
        let d = min_distance_exhaustive(&dual, 20).map_err(|e| e.to_string())?;
        let designed = reps[tau + 1] as usize;
        ensure(d >= designed, || format!("tau={tau}: dual distance {d} < {designed}"))?;
        lines.push(format!("tau={tau} d={d}>={designed}"));
    }
    ensure(!lines.is_empty(), || "no admissible tau".into())?;
    within(start, Duration::from_secs(60))?;
    Ok(lines.join(", "))
}

fn main() -> ExitCode {
    let criteria: [(u32, fn() -> Verdict); 8] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
    ];
    let mut failed = 0;
    for (id, run) in criteria {
        match run() {
            Ok(detail) => println!("criterion {id}: PASS  {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {id}: FAIL  {why}");
            }
        }
    }
    println!(
        "criterion 9: NOT REPRODUCIBLE  true minimum distances of the large Hermitian duals \
         (e.g. dimension 73 over GF(64) behind [[91,55,>=11]]_8) are beyond exhaustive search, \
         and record status depends on an external code-table snapshot; covered by criteria 1-8"
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
