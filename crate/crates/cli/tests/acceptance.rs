//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
//!
//! Every check compares against something computed independently here (brute
//! force over permutations, direct cross-multiplication, closed forms), never
//! against the implementation's own second route alone.

use std::process::{Command, ExitCode};
use std::time::Instant;

use itertools::Itertools;
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use lhall_core::*;

type Result<T, E = String> = std::result::Result<T, E>;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("anti-lecture Ehrhart counts are (t+1)^n", anti_ehrhart),
        (
            "delta of lecture/anti-lecture is the Eulerian row",
            eulerian_delta,
        ),
        (
            "delta methods agree, sum to the volume, start at 1",
            delta_agreement,
        ),
        (
            "REM is a bijection with prefix-descent quotients",
            rem_bijection,
        ),
        (
            "Par_s and Par_{s*} have the same grading when s_n = 1",
            grading_equality,
        ),
        (
            "reversal identity and level-preserving Gamma",
            reversal_transfer,
        ),
        (
            "inversion-sequence bijection for lecture:n",
            inversion_sequence_bijection,
        ),
        (
            "Ehrhart series identity with negative control",
            series_identity,
        ),
        (
            "JSON output is identical with and without --parallel",
            determinism,
        ),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS criterion {}: {name} ({detail}; {secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lhall(args: &[&str]) -> Result<(i32, String), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_lhall"))
        .args(args)
        .env_remove("LHALL_MAX_POINTS")
        .output()
        .map_err(|e| format!("spawn failed: {e}"))?;
    let code = out.status.code().ok_or("killed by signal")?;
    Ok((code, String::from_utf8_lossy(&out.stdout).into_owned()))
}

fn lhall_json(args: &[&str]) -> Result<Value, String> {
    let (code, out) = lhall(args)?;
    ensure(code == 0, || format!("{args:?} exited {code}"))?;
    serde_json::from_str(&out).map_err(|e| format!("{args:?}: bad JSON: {e}"))
}

/// Random sequence with `n ∈ 1..=max_n`, entries in `1..=max_entry`, `∏sᵢ ≤ max_product`.
fn random_seq(rng: &mut ChaCha8Rng, max_n: usize, max_entry: u64, max_product: u64) -> Seq {
    loop {
        let n = rng.gen_range(1..=max_n);
        let e: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=max_entry)).collect();
        if e.iter().product::<u64>() <= max_product {
            return Seq::from_entries(e).unwrap();
        }
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Weighted descents of `r` over `s`, by cross-multiplication.
fn oracle_des(s: &[u64], r: &[u64]) -> usize {
    (0..r.len().saturating_sub(1))
        .filter(|&i| r[i] as u128 * s[i + 1] as u128 > r[i + 1] as u128 * s[i] as u128)
        .count()
}

fn oracle_asc(s: &[u64], r: &[u64]) -> usize {
    (0..r.len().saturating_sub(1))
        .filter(|&i| (r[i] as u128 * s[i + 1] as u128) < r[i + 1] as u128 * s[i] as u128)
        .count()
}

/// Every word of `∏⟨sᵢ − 1⟩`.
fn all_words(s: &[u64]) -> Vec<Vec<u64>> {
    s.iter().map(|&e| 0..e).multi_cartesian_product().collect()
}

fn as_u64(v: &[BigUint]) -> Vec<u64> {
    v.iter().map(|x| u64::try_from(x).unwrap()).collect()
}

fn anti_ehrhart() -> Check {
    let mut runs = 0;
    for n in 1..=7u32 {
        for t in 0..=5u64 {
            let v = lhall_json(&[
                "ehrhart",
                "--seq",
                &format!("anti:{n}"),
                "--t",
                &t.to_string(),
                "--method",
                "both",
            ])?;
            let want = BigUint::from(t + 1).pow(n).to_string();
            for key in ["count", "direct", "from_delta"] {
                ensure(v["values"][key] == want.as_str(), || {
                    format!("anti:{n}, t={t}: {key} = {}, want {want}", v["values"][key])
                })?;
            }
            runs += 1;
        }
    }
    Ok(format!("{runs} CLI runs"))
}

/// `A(n, i+1)` for `i = 0..n−1` by enumerating 𝔖ₙ, padded with a trailing 0.
fn eulerian_by_permutations(n: usize) -> Vec<u64> {
    let mut row = vec![0u64; n + 1];
    for p in (1..=n).permutations(n) {
        row[p.windows(2).filter(|w| w[0] > w[1]).count()] += 1;
    }
    row
}

fn eulerian_delta() -> Check {
    let l = Limits::default();
    for n in 1..=6 {
        let want = eulerian_by_permutations(n);
        for s in [Seq::lecture(n).unwrap(), Seq::anti(n).unwrap()] {
            let mut routes = vec![
                (
                    "par",
                    delta_via_parallelepiped(&s, &l).map_err(|e| e.to_string())?,
                ),
                (
                    "des",
                    delta_via_descents(&s, &l).map_err(|e| e.to_string())?,
                ),
            ];
            if s.first() == 1 {
                routes.push(("asc", delta_via_ascents(&s, &l).map_err(|e| e.to_string())?));
            }
            for (name, d) in routes {
                ensure(as_u64(d.entries()) == want, || {
                    format!("s = ({s}), {name}: {:?} != {want:?}", as_u64(d.entries()))
                })?;
            }
        }
    }
    Ok("n = 1..6".into())
}

fn criterion3_seqs() -> Vec<Seq> {
    let mut r = rng(3);
    (0..200)
        .map(|_| random_seq(&mut r, 6, 6, u64::MAX))
        .collect()
}

fn delta_agreement() -> Check {
    let l = Limits::default();
    for s in criterion3_seqs() {
        let mut routes = vec![
            delta_via_parallelepiped(&s, &l).map_err(|e| e.to_string())?,
            delta_via_descents(&s, &l).map_err(|e| e.to_string())?,
        ];
        if s.first() == 1 {
            routes.push(delta_via_ascents(&s, &l).map_err(|e| e.to_string())?);
        }
        if s.last() == 1 {
            routes.push(delta_via_descents_unstarred(&s, &l).map_err(|e| e.to_string())?);
        }
        let first = routes[0].entries();
        for d in &routes {
            ensure(d.entries() == first, || {
                format!("s = ({s}): methods disagree")
            })?;
        }
        ensure(routes[0].sum() == s.product(), || {
            format!("s = ({s}): sum != product")
        })?;
        ensure(first[0] == BigUint::from(1u8), || {
            format!("s = ({s}): delta_0 != 1")
        })?;
        ensure(first.len() == s.len() + 1, || {
            format!("s = ({s}): wrong length")
        })?;
    }
    Ok("200 sequences".into())
}

fn rem_bijection() -> Check {
    let l = Limits::default();
    let mut r = rng(4);
    let mut points = 0;
    for _ in 0..100 {
        let s = random_seq(&mut r, 6, 12, 10_000);
        let e = s.entries();
        for digits in all_words(e) {
            let w = Word::new(s.clone(), digits.clone()).unwrap();
            let x = rem_inv(&s, &w).map_err(|e| e.to_string())?;
            let back = rem(&s, &x).map_err(|er| format!("s = ({s}), r = {digits:?}: {er}"))?;
            ensure(back == w, || {
                format!("s = ({s}): rem(rem_inv({digits:?})) = {back}")
            })?;
        }
        let par = enumerate_par(&s, &l).map_err(|e| e.to_string())?;
        ensure(BigUint::from(par.len()) == s.product(), || {
            format!("s = ({s}): |Par_s| != product")
        })?;
        for x in par.points() {
            let f = kr(&s, &x).map_err(|e| e.to_string())?;
            let back = rem_inv(&s, &f.r).map_err(|e| e.to_string())?;
            ensure(back == x, || {
                format!("s = ({s}): rem_inv(rem({x})) = {back}")
            })?;
            for i in 0..e.len() {
                let k = oracle_des(&e[..=i], &f.r.digits()[..=i]) as u64;
                ensure(f.k[i] == k, || {
                    format!(
                        "s = ({s}), x = {x}: k_{} = {}, des^<{} = {k}",
                        i + 1,
                        f.k[i],
                        i + 1
                    )
                })?;
                ensure(
                    x.coords()[i] as u64 == f.k[i] * e[i] + f.r.digits()[i],
                    || format!("x = {x}: bad split"),
                )?;
            }
            points += 1;
        }
    }
    Ok(format!("100 sequences, {points} points"))
}

fn grading_equality() -> Check {
    let l = Limits::default();
    let mut r = rng(5);
    for _ in 0..100 {
        let mut s = random_seq(&mut r, 5, 6, 10_000).entries().to_vec();
        *s.last_mut().unwrap() = 1;
        let s = Seq::from_entries(s).unwrap();
        let mut plain = grade_par(&s, &l).map_err(|e| e.to_string())?;
        let mut starred = grade_par(&s.star(), &l).map_err(|e| e.to_string())?;
        let len = plain.len().max(starred.len());
        plain.resize(len, 0);
        starred.resize(len, 0);
        ensure(plain == starred, || {
            format!("s = ({s}): {plain:?} != {starred:?}")
        })?;
        // Level counts from raw points, independent of grade().
        let mut by_hand = vec![0u64; len];
        for x in enumerate_par(&s, &l).map_err(|e| e.to_string())?.points() {
            by_hand[*x.coords().last().unwrap() as usize] += 1;
        }
        ensure(by_hand == plain, || {
            format!("s = ({s}): grade() disagrees with raw levels")
        })?;
    }
    Ok("100 sequences".into())
}

fn reversal_transfer() -> Check {
    let l = Limits::default();
    let mut r = rng(6);
    let mut words = 0u64;
    for _ in 0..100 {
        let s = random_seq(&mut r, 6, 12, 10_000);
        let e = s.entries();
        let mut s_star = e.to_vec();
        s_star.push(1);
        let mut u_star: Vec<u64> = e.iter().rev().copied().collect();
        u_star.push(1);
        for digits in all_words(e) {
            let mut left = digits.clone();
            left.push(0);
            let mut right: Vec<u64> = digits
                .iter()
                .zip(e)
                .rev()
                .map(|(&d, &si)| (si - d) % si)
                .collect();
            right.push(0);
            let (a, b) = (oracle_des(&s_star, &left), oracle_des(&u_star, &right));
            ensure(a == b, || format!("s = ({s}), r = {digits:?}: {a} != {b}"))?;
            words += 1;
        }
        let batch = check_rev_identity_all(&s, &l).map_err(|e| e.to_string())?;
        ensure(batch.passed(), || {
            format!(
                "s = ({s}): library check failed on {:?}",
                batch.counterexamples.first()
            )
        })?;
    }
    for _ in 0..20 {
        let s = random_seq(&mut r, 5, 10, 1_000);
        let source = enumerate_par(&s.star(), &l).map_err(|e| e.to_string())?;
        let target = enumerate_par(&s.reverse().star(), &l).map_err(|e| e.to_string())?;
        let mut seen = Vec::new();
        for (&level, pts) in source.levels() {
            let mut image = Vec::new();
            for x in pts {
                let y = gamma(&s, x).map_err(|e| e.to_string())?.target;
                ensure(y.level() == level, || {
                    format!("s = ({s}): Gamma({x}) = {y} changes level")
                })?;
                image.push(y);
            }
            image.sort();
            ensure(image.as_slice() == target.level(level), || {
                format!("s = ({s}): level {level} images differ")
            })?;
            seen.extend(image);
        }
        seen.sort();
        ensure(seen == target.points(), || {
            format!("s = ({s}): Gamma not onto")
        })?;
    }
    Ok(format!("{words} words over 100 sequences, Gamma on 20"))
}

fn inversion_sequence_bijection() -> Check {
    let l = Limits::default();
    for n in 1..=5 {
        let s = Seq::lecture(n).unwrap();
        // Inversion sequences over (n, n−1, …, 1): digit i ranges over 0..=n−i.
        let radices: Vec<u64> = (1..=n as u64).rev().collect();
        let want = all_words(&radices);
        let mut got = Vec::new();
        for x in enumerate_par(&s.star(), &l)
            .map_err(|e| e.to_string())?
            .points()
        {
            let tr = prop64_map(n, &x).map_err(|e| e.to_string())?;
            let out = tr.output.digits().to_vec();
            let proj = tr.projected.digits();
            let plain_des = out.windows(2).filter(|w| w[0] > w[1]).count();
            let plain_asc = proj.windows(2).filter(|w| w[0] < w[1]).count();
            let level = x.level() as usize;
            ensure(level == plain_asc && level == plain_des, || {
                format!("n = {n}, x = {x}: level {level}, asc {plain_asc}, des {plain_des}")
            })?;
            ensure(oracle_asc(s.entries(), proj) == plain_asc, || {
                format!("n = {n}, x = {x}: weighted asc differs")
            })?;
            got.push(out);
        }
        got.sort();
        ensure(got == want, || {
            format!("n = {n}: image is not the set of inversion sequences")
        })?;
    }
    Ok("n = 1..5".into())
}

fn series_identity() -> Check {
    let l = Limits::default();
    let mut r = rng(8);
    for _ in 0..50 {
        let s = random_seq(&mut r, 4, 5, u64::MAX);
        let order = s.len() as u64 + 4;
        ensure(
            series_check(&s, order, &l).map_err(|e| e.to_string())?,
            || format!("s = ({s}): series check failed"),
        )?;
        let d = delta_via_descents(&s, &l).map_err(|e| e.to_string())?;
        let mut mutated = d.entries().to_vec();
        let i = r.gen_range(0..mutated.len());
        mutated[i] += 1u8;
        let bad = DeltaVector::new(s.clone(), mutated).map_err(|e| e.to_string())?;
        ensure(
            !series_check_with(&bad, order, &l).map_err(|e| e.to_string())?,
            || format!("s = ({s}): mutated delta at {i} passed"),
        )?;
    }
    Ok("50 sequences".into())
}

fn determinism() -> Check {
    let mut invocations: Vec<Vec<String>> = Vec::new();
    for n in 1..=7 {
        for t in 0..=5 {
            invocations.push(
                [
                    "ehrhart",
                    "--seq",
                    &format!("anti:{n}"),
                    "--t",
                    &t.to_string(),
                    "--method",
                    "both",
                ]
                .map(String::from)
                .to_vec(),
            );
        }
    }
    for n in 1..=6 {
        for preset in ["lecture", "anti"] {
            invocations.push(
                [
                    "delta",
                    "--seq",
                    &format!("{preset}:{n}"),
                    "--method",
                    "all",
                ]
                .map(String::from)
                .to_vec(),
            );
        }
    }
    for s in criterion3_seqs() {
        invocations.push(
            ["delta", "--seq", &s.to_string(), "--method", "all"]
                .map(String::from)
                .to_vec(),
        );
    }
    for inv in &invocations {
        let mut args: Vec<&str> = inv.iter().map(String::as_str).collect();
        args.push("--no-timing");
        let (c1, serial) = lhall(&args)?;
        args.push("--parallel");
        let (c2, parallel) = lhall(&args)?;
        ensure(c1 == 0 && c2 == 0, || {
            format!("{inv:?}: exit codes {c1}, {c2}")
        })?;
        ensure(serial == parallel, || format!("{inv:?}: outputs differ"))?;
    }
    Ok(format!("{} invocation pairs", invocations.len()))
}
