//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Every comparison is exact polynomial equality over the rationals; there is no
//! tolerance anywhere. The binary exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use degenerate_seidel::rational::{int, ratio, Rational};
use degenerate_seidel::seidel::{final_from_initial, initial_from_final};
use degenerate_seidel::sequences::{
    bell_number, degen_stirling2, degen_stirling2_by_basis, fubini_number,
};
use degenerate_seidel::series::{bell_egf, fubini_egf, seidel_transform, stirling_col_egf};
use degenerate_seidel::verify::{self, compare_printed, PRINTED_BELL, PRINTED_FUBINI};
use degenerate_seidel::{CheckStatus, Mode, Monomial, Poly, SeidelMatrix, Series};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Wall-clock budget for the full identity suite.
const SUITE_BUDGET: Duration = Duration::from_secs(60);
/// Largest index for the generating-function comparison.
const EGF_N_MAX: usize = 16;
/// Identity-suite and Stirling range.
const N_MAX: usize = 12;
/// Classical-limit range.
const CLASSICAL_N_MAX: usize = 6;
const ROUND_TRIPS: usize = 100;
const ROUND_TRIP_SEED: u64 = 0x005e_1de1;

/// Outcome of one criterion: `Err` carries the reasons it failed.
type Verdict = Result<String, Vec<String>>;
type Criterion = (&'static str, fn() -> Verdict);

fn p(s: &str) -> Poly {
    s.parse().expect("literal polynomial")
}

fn at_lambda_zero(q: &Poly) -> Poly {
    q.eval_partial(Some(&int(0)), None)
}

/// Checks that are not identity checks: printed-matrix comparisons and the
/// deliberately uncorrected statement.
fn is_diagnostic(id: &str) -> bool {
    id.starts_with("paper_matrix_") || id.ends_with("_as_printed")
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let reports = verify::run_all(N_MAX).map_err(|e| vec![e.to_string()])?;
    let elapsed = start.elapsed();
    let mut problems = Vec::new();
    for r in &reports {
        if r.status == CheckStatus::Fail {
            problems.push(format!("{} failed: {:?}", r.check_id, r.first_failure));
        } else if !is_diagnostic(&r.check_id) && r.status != CheckStatus::Pass {
            problems.push(format!("{} is {}", r.check_id, r.status));
        }
    }
    let identities = reports
        .iter()
        .filter(|r| !is_diagnostic(&r.check_id))
        .count();
    if identities < 24 {
        problems.push(format!("only {identities} identity checks registered"));
    }
    if elapsed >= SUITE_BUDGET {
        problems.push(format!("took {elapsed:?}, budget {SUITE_BUDGET:?}"));
    }
    if problems.is_empty() {
        Ok(format!(
            "{identities} identity checks exact for n <= {N_MAX} in {:.2}s",
            elapsed.as_secs_f64()
        ))
    } else {
        Err(problems)
    }
}

fn criterion_2() -> Verdict {
    let mut problems = Vec::new();
    let bell: Vec<Poly> = (0..5).map(bell_number).collect();
    let m = SeidelMatrix::build(&bell, Mode::Degenerate).expect("nonempty");
    // (n, k, printed) for every printed Bell entry that the recurrence reproduces.
    let reproduced = [
        (0, 0, "1"),
        (1, 0, "1"),
        (2, 0, "2 - l"),
        (1, 1, "3 - l"),
        (2, 1, "7 - 5*l + l^2"),
        (0, 2, "5 - 6*l + 2*l^2"),
        (1, 2, "10 - 9*l + 2*l^2"),
    ];
    for (n, k, text) in reproduced {
        let got = m.get(n, k).expect("inside the triangle");
        if *got != p(text) {
            problems.push(format!("Bell a_{{{n},{k}}} = {got}, printed {text}"));
        }
    }

    let pairs = |ds: &[verify::Discrepancy]| -> Vec<(Poly, Poly)> {
        ds.iter().map(|d| (p(&d.printed), p(&d.derived))).collect()
    };
    let expect_exactly =
        |label: &str, got: Vec<(Poly, Poly)>, want: &[(&str, &str)], problems: &mut Vec<String>| {
            let want: Vec<(Poly, Poly)> = want.iter().map(|(a, b)| (p(a), p(b))).collect();
            if got.len() != want.len() {
                problems.push(format!(
                    "{label}: {} discrepancies reported, expected exactly {}",
                    got.len(),
                    want.len()
                ));
            }
            for w in &want {
                if !got.contains(w) {
                    problems.push(format!(
                        "{label}: missing printed {} vs derived {}",
                        w.0, w.1
                    ));
                }
            }
            for g in &got {
                if !want.contains(g) {
                    problems.push(format!("{label}: extra printed {} vs derived {}", g.0, g.1));
                }
            }
        };

    let bell_found = compare_printed(&bell, &PRINTED_BELL);
    expect_exactly(
        "Bell",
        pairs(&bell_found),
        &[
            ("2 - 3*l", "2 - l"),
            ("27 - 37*l - 19*l^2 + 16*l^3", "27 - 31*l + 13*l^2 - 2*l^3"),
        ],
        &mut problems,
    );
    let fubini: Vec<Poly> = (0..5).map(fubini_number).collect();
    let fubini_found = compare_printed(&fubini, &PRINTED_FUBINI);
    expect_exactly(
        "Fubini",
        pairs(&fubini_found),
        &[
            ("16 - 7*l + 11*l^2", "16 - 7*l + l^2"),
            ("20 - 12*l + 12*l^2", "20 - 12*l + 2*l^2"),
        ],
        &mut problems,
    );

    if problems.is_empty() {
        Ok("printed Bell entries reproduced; 2 Bell and 2 Fubini discrepancies".into())
    } else {
        Err(problems)
    }
}

fn criterion_3() -> Verdict {
    let order = EGF_N_MAX + 1;
    let one = int(1);
    let at_x_one = |s: Series| -> Series {
        let coeffs = s
            .coeffs()
            .iter()
            .map(|c| c.eval_partial(None, Some(&one)))
            .collect();
        Series::from_coeffs(coeffs, s.order()).expect("same order")
    };
    let mut problems = Vec::new();
    for (label, egf, term) in [
        (
            "Bell",
            at_x_one(bell_egf(order)),
            bell_number as fn(usize) -> Poly,
        ),
        ("Fubini", at_x_one(fubini_egf(order)), fubini_number),
    ] {
        let initial: Vec<Poly> = (0..=EGF_N_MAX).map(term).collect();
        if egf.egf_terms()[..=EGF_N_MAX] != initial[..] {
            problems.push(format!("{label}: closed-form EGF disagrees with the terms"));
        }
        let transformed = seidel_transform(&egf, Mode::Degenerate).egf_terms();
        let m = SeidelMatrix::build(&initial, Mode::Degenerate).expect("nonempty");
        let fin = m.final_sequence();
        for n in 0..=EGF_N_MAX {
            if transformed[n] != fin[n] {
                problems.push(format!(
                    "{label} n={n}: EGF side {} vs matrix {}",
                    transformed[n], fin[n]
                ));
            }
            if label == "Bell" && fin[n] != bell_number(n + 1) {
                problems.push(format!(
                    "Bell a_{{0,{n}}} = {} is not phi_{}",
                    fin[n],
                    n + 1
                ));
            }
        }
    }
    if problems.is_empty() {
        Ok(format!(
            "EGF transform = final sequence for n <= {EGF_N_MAX}; Bell final = shifted Bell"
        ))
    } else {
        Err(problems)
    }
}

/// Number of set partitions of `{0..n}`, by enumerating restricted growth strings.
fn count_set_partitions(n: usize) -> Vec<usize> {
    // by_blocks[b] = number of partitions with exactly b blocks.
    let mut by_blocks = vec![0usize; n + 1];
    fn walk(pos: usize, n: usize, blocks: usize, by_blocks: &mut [usize]) {
        if pos == n {
            by_blocks[blocks] += 1;
            return;
        }
        for b in 0..=blocks {
            walk(pos + 1, n, blocks.max(b + 1), by_blocks);
        }
    }
    walk(0, n, 0, &mut by_blocks);
    by_blocks
}

/// Number of ordered set partitions of `{0..n}`, by enumerating surjections onto
/// `{0..b}` for every block count `b`.
fn count_ordered_partitions(n: usize) -> usize {
    if n == 0 {
        return 1;
    }
    (1..=n)
        .map(|b| {
            let mut count = 0;
            let total = b.pow(n as u32);
            for code in 0..total {
                let mut seen = vec![false; b];
                let mut c = code;
                for _ in 0..n {
                    seen[c % b] = true;
                    c /= b;
                }
                if seen.iter().all(|&s| s) {
                    count += 1;
                }
            }
            count
        })
        .sum()
}

fn criterion_4() -> Verdict {
    let mut problems = Vec::new();
    let printed_bell = [1, 1, 2, 5, 15, 52, 203];
    let printed_fubini = [1, 1, 3, 13, 75, 541, 4683];
    let mut bell0 = Vec::new();
    let mut fubini0 = Vec::new();
    for n in 0..=CLASSICAL_N_MAX {
        let brute_bell: usize = count_set_partitions(n).iter().sum();
        let brute_fubini = count_ordered_partitions(n);
        let b = at_lambda_zero(&bell_number(n));
        let f = at_lambda_zero(&fubini_number(n));
        if brute_bell != printed_bell[n] || b != Poly::int(brute_bell as i64) {
            problems.push(format!("Bell n={n}: got {b}, brute force {brute_bell}"));
        }
        if brute_fubini != printed_fubini[n] || f != Poly::int(brute_fubini as i64) {
            problems.push(format!("Fubini n={n}: got {f}, brute force {brute_fubini}"));
        }
        for (k, &count) in count_set_partitions(n).iter().enumerate() {
            let s = at_lambda_zero(&degen_stirling2(n, k).expect("k <= n"));
            if s != Poly::int(count as i64) {
                problems.push(format!("S({n},{k}) at l=0 is {s}, brute force {count}"));
            }
        }
        bell0.push(b);
        fubini0.push(f);
    }
    for (label, seq, full) in [
        (
            "Bell",
            &bell0,
            (0..=CLASSICAL_N_MAX).map(bell_number).collect::<Vec<_>>(),
        ),
        (
            "Fubini",
            &fubini0,
            (0..=CLASSICAL_N_MAX).map(fubini_number).collect(),
        ),
    ] {
        let classical = SeidelMatrix::build(seq, Mode::Classical).expect("nonempty");
        let degenerate = SeidelMatrix::build(&full, Mode::Degenerate)
            .expect("nonempty")
            .evaluate(Some(&int(0)), None);
        if classical
            .entries()
            .map(|(_, _, e)| e)
            .ne(degenerate.entries().map(|(_, _, e)| e))
        {
            problems.push(format!(
                "{label}: degenerate matrix at l=0 differs from classical"
            ));
        }
    }
    if problems.is_empty() {
        Ok(format!(
            "l=0 limits match partition enumerators for n <= {CLASSICAL_N_MAX}"
        ))
    } else {
        Err(problems)
    }
}

fn random_poly(rng: &mut ChaCha8Rng) -> Poly {
    let terms = rng.gen_range(0..=4);
    Poly::from_terms((0..terms).map(|_| {
        let mono = Monomial {
            x: rng.gen_range(0..=3),
            lambda: rng.gen_range(0..=3),
        };
        let coeff: Rational = ratio(rng.gen_range(-9..=9), rng.gen_range(1..=9));
        (mono, coeff)
    }))
}

fn criterion_5() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(ROUND_TRIP_SEED);
    let mut problems = Vec::new();
    for case in 0..ROUND_TRIPS {
        let len = rng.gen_range(1..=10);
        let initial: Vec<Poly> = (0..len).map(|_| random_poly(&mut rng)).collect();
        for mode in [Mode::Degenerate, Mode::Classical] {
            let fin: Vec<Poly> = (0..len)
                .map(|n| final_from_initial(&initial, n, mode).expect("in range"))
                .collect();
            let back: Vec<Poly> = (0..len)
                .map(|n| initial_from_final(&fin, n, mode).expect("in range"))
                .collect();
            if back != initial {
                problems.push(format!(
                    "case {case} ({mode}): round trip changed the sequence"
                ));
            }
            let m = SeidelMatrix::build(&initial, mode).expect("nonempty");
            if m.final_sequence() != fin {
                problems.push(format!(
                    "case {case} ({mode}): closed form disagrees with matrix"
                ));
            }
        }
    }
    if problems.is_empty() {
        Ok(format!(
            "{ROUND_TRIPS} random sequences round-trip exactly in both modes"
        ))
    } else {
        Err(problems)
    }
}

fn criterion_6() -> Verdict {
    let mut problems = Vec::new();
    for k in 0..=N_MAX {
        let by_egf = stirling_col_egf(k, N_MAX + 1).egf_terms();
        for n in k..=N_MAX {
            let rec = degen_stirling2(n, k).expect("k <= n");
            let basis = degen_stirling2_by_basis(n, k).expect("k <= n");
            if rec != basis || rec != by_egf[n] {
                problems.push(format!(
                    "S({n},{k}): recurrence {rec}, basis {basis}, EGF {}",
                    by_egf[n]
                ));
            }
        }
    }
    if problems.is_empty() {
        Ok(format!(
            "three Stirling constructions agree for k <= n <= {N_MAX}"
        ))
    } else {
        Err(problems)
    }
}

fn criterion_7() -> Verdict {
    let mut problems = Vec::new();
    let printed =
        verify::run_check("thm_2_10_a_as_printed", N_MAX).map_err(|e| vec![e.to_string()])?;
    match &printed.first_failure {
        Some(f) if printed.status != CheckStatus::Pass => {
            if f.n != 1 {
                problems.push(format!("as printed first fails at n={}, expected n=1", f.n));
            }
            if p(&f.residual).is_zero() {
                problems.push("as printed residual is zero".into());
            }
            for x in [int(0), int(1), ratio(-3, 2)] {
                let at_zero = p(&f.residual).eval(&int(0), &x);
                if at_zero != int(2) {
                    problems.push(format!("residual at l=0, x={x} is {at_zero}, expected 2"));
                }
            }
        }
        _ => problems.push(format!("as printed is {} with no failure", printed.status)),
    }
    let corrected =
        verify::run_check("thm_2_10_a_corrected", N_MAX).map_err(|e| vec![e.to_string()])?;
    if corrected.status != CheckStatus::Pass {
        problems.push(format!(
            "corrected form is {}: {:?}",
            corrected.status, corrected.first_failure
        ));
    }
    if problems.is_empty() {
        Ok(format!(
            "as printed fails at n=1 (residual {}); corrected passes for n <= {N_MAX}",
            printed
                .first_failure
                .as_ref()
                .map(|f| f.residual.as_str())
                .unwrap_or("")
        ))
    } else {
        Err(problems)
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("identity suite", criterion_1),
        ("printed example matrices", criterion_2),
        ("degenerate Seidel formula", criterion_3),
        ("classical limit", criterion_4),
        ("transform inverse", criterion_5),
        ("Stirling consistency", criterion_6),
        ("sign-error diagnosis", criterion_7),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS criterion {} ({name}): {detail}", i + 1),
            Err(problems) => {
                failed += 1;
                println!("FAIL criterion {} ({name}): {}", i + 1, problems.join("; "));
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
