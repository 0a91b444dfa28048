//! One PASS/FAIL line per acceptance criterion. All comparisons are exact; the only
//! tolerances are the wall-time limits of criteria 1 and 2.

use std::time::Duration;

use serde_json::Value;
use ucslab_core::analysis::audit::{superadditivity_margin, superadditivity_sides};
use ucslab_core::analysis::survey::constants_table;
use ucslab_core::analysis::{check_proof_steps, ClassKind, WitnessMode};
use ucslab_core::driver::ScanConfig;
use ucslab_core::enumerate::{enumerate_bits, enumerate_canonical, enumerate_families, Strategy};
use ucslab_core::{cover_count, is_separated, is_weakly_separated, ExactFraction, Family, GroundSet, SeparationParams};
use ucslab_repro::{timed, ucslab, Report, Verdict};

const LOWER_TIER_LIMIT: Duration = Duration::from_secs(5 * 60);
const FULL_TIER_LIMIT: Duration = Duration::from_secs(3 * 60 * 60);

fn rows(body: &[u8]) -> Vec<Value> {
    serde_json::from_slice::<Value>(body).expect("json body").as_array().expect("row array").clone()
}

/// Orders that did not pass, as `variant k|l (count)`.
fn failing_orders(rows: &[Value]) -> Vec<String> {
    rows.iter()
        .filter(|r| r["verdict"] != "pass")
        .map(|r| format!("{} {}|{} ({})", r["variant"].as_str().unwrap(), r["k"], r["l"], r["counterexamples"]))
        .collect()
}

fn verify_all(n: u32, rows: &[Value], code: u8, elapsed: Duration, limit: Duration) -> Verdict {
    let expected = (1..=n).map(|k| k as usize).sum::<usize>() * 2;
    let bad: u64 = rows.iter().map(|r| r["counterexamples"].as_u64().unwrap()).sum();
    let fails = failing_orders(rows);
    let ok = code == 0 && rows.len() == expected && bad == 0 && elapsed < limit;
    let mut detail =
        format!("{} orders in {:.1}s, {} counterexamples in total", rows.len(), elapsed.as_secs_f64(), bad);
    if !fails.is_empty() {
        detail += &format!("; failing: {}", fails.join(", "));
    }
    Verdict::new(ok, detail)
}

fn c1() -> Verdict {
    let (code, body, t) = timed(&["verify", "--n", "4", "--all-orders"]);
    verify_all(4, &rows(&body), code, t, LOWER_TIER_LIMIT)
}

fn c2() -> Verdict {
    let dir = tempfile::tempdir().unwrap();
    let ckpt = dir.path().join("n5.ckpt");
    let c = ckpt.to_str().unwrap();
    let base = ["verify", "--n", "5", "--all-orders", "--mode", "canonical"];

    let (code, body, t) = timed(&base);
    let mut v = verify_all(5, &rows(&body), code, t, FULL_TIER_LIMIT);

    let args: Vec<&str> = base.iter().copied().chain(["--checkpoint", c]).collect();
    let halted: Vec<&str> = args.iter().copied().chain(["--halt-after-batches", "3"]).collect();
    let (hcode, hbody) = ucslab(&halted);
    let left = ckpt.exists();
    let (rcode, rbody) = ucslab(&args);
    let resumed = hcode == 3 && hbody.is_empty() && left && rcode == code && rbody == body && !ckpt.exists();
    v.detail +=
        &format!("; killed after 3 batches and resumed: {}", if resumed { "identical report" } else { "MISMATCH" });
    v.passed &= resumed;
    v
}

/// `C(k, i)` from Pascal's rule, summed over `i >= l`.
fn pascal_tail(k: u32, l: u32) -> u64 {
    let mut row = vec![1u64];
    for _ in 0..k {
        let mut next = vec![1u64; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row[l as usize..].iter().sum()
}

fn c3() -> Verdict {
    let mut checked = 0u64;
    let mut wrong = Vec::new();
    for n in 1..=8 {
        let g = GroundSet::new(n).unwrap();
        let p = Family::powerset(g);
        for k in 1..=n {
            for l in 1..=k {
                let expected = pascal_tail(k, l) << (n - k);
                for s in g.k_subsets(k) {
                    checked += 1;
                    if cover_count(&p, s, l) != expected {
                        wrong.push(format!("n={n} S={s} l={l}"));
                    }
                }
            }
        }
    }
    Verdict::new(wrong.is_empty(), format!("{checked} (n, S, l) cases, {} mismatches {:?}", wrong.len(), wrong))
}

fn c4() -> Verdict {
    let mut off: Vec<String> = Vec::new();
    let mut checked = 0;
    for n in 1..=5 {
        for r in constants_table(n, &ScanConfig::for_n(n)).unwrap() {
            if r.selector.kind == ClassKind::All {
                continue;
            }
            checked += 1;
            if r.value != r.conjectured {
                off.push(format!("n={n} {} {} = {} < {}", r.selector.kind, r.selector.params, r.value, r.conjectured));
            }
        }
    }
    let sep = off.iter().filter(|s| s.contains(" separated ")).count();
    let weak = off.len() - sep;
    let mut detail = format!("{checked} (n, k, l, class) cases; separated off bound: {sep}, weak off bound: {weak}");
    if !off.is_empty() {
        let shown: Vec<&String> = off.iter().take(6).collect();
        detail += &format!("; e.g. {shown:?}");
    }
    Verdict::new(off.is_empty(), detail)
}

fn c5() -> Verdict {
    let mut notes = Vec::new();
    let mut ok = true;
    for (n, want) in [(1u32, 1usize), (2, 4), (3, 45)] {
        for s in [Strategy::Recursive, Strategy::Filter] {
            let got = enumerate_bits(n, s, 5).unwrap().count();
            ok &= got == want;
            notes.push(format!("n={n} {}={got}", s.name()));
        }
    }
    let rec: Vec<_> = enumerate_bits(4, Strategy::Recursive, 5).unwrap().collect();
    let fil: Vec<_> = enumerate_bits(4, Strategy::Filter, 5).unwrap().collect();
    ok &= rec == fil;
    notes.push(format!("n=4 {} vs {} identical={}", rec.len(), fil.len(), rec == fil));
    for n in 1..=4 {
        let mut reps = enumerate_canonical(n).unwrap();
        let mut sum = 0;
        while let Some((_, orbit)) = reps.next_bits() {
            sum += orbit;
        }
        let labeled = enumerate_bits(n, Strategy::Recursive, 5).unwrap().count() as u64;
        ok &= sum == labeled;
        notes.push(format!("orbits n={n}: {sum}/{labeled}"));
    }
    Verdict::new(ok, notes.join(", "))
}

fn c6() -> Verdict {
    let (code, body) = ucslab(&["audit", "--max-k", "30"]);
    let reports = rows(&body);
    let failures: usize = reports.iter().map(|r| r["failures"].as_array().unwrap().len()).sum();
    let checked: u64 = reports.iter().map(|r| r["checked"].as_u64().unwrap()).sum();
    let (lhs, rhs) = superadditivity_sides(1, 1, 1);
    let three_quarters = ExactFraction::new(3, 4);
    let equality = superadditivity_margin(1, 1, 1) == 0 && lhs == three_quarters && rhs == three_quarters;
    Verdict::new(
        code == 0 && failures == 0 && equality,
        format!("{checked} cases over {} inequalities, {failures} failures; k=k'=l=1: {lhs} vs {rhs}", reports.len()),
    )
}

fn c7() -> Verdict {
    let mut ok = true;
    let mut notes = Vec::new();
    for n in 1..=4 {
        let d = check_proof_steps(n, WitnessMode::Designated).unwrap();
        let s = check_proof_steps(n, WitnessMode::Strict).unwrap();
        let designated = s.designated_findings().count();
        ok &= d.passed() && designated == 0;
        notes.push(format!(
            "n={n}: {} designated cases/{} findings, strict {} cases/{} findings",
            d.checks,
            d.findings.len(),
            s.checks,
            s.findings.len()
        ));
    }
    Verdict::new(ok, notes.join("; "))
}

fn c8() -> Verdict {
    let mut violations = Vec::new();
    let mut families = 0;
    for n in 1..=4 {
        for f in enumerate_families(n, Strategy::Recursive).unwrap() {
            families += 1;
            for p in SeparationParams::all_up_to(n) {
                let (k, l) = (p.k(), p.l());
                let s = is_separated(&f, p);
                let w = is_weakly_separated(&f, p);
                if s && !w {
                    violations.push(format!("{f}: {p} separated but not weakly"));
                }
                if l == 1 && s != w {
                    violations.push(format!("{f}: {p} classes differ"));
                }
                if l == k && !s {
                    violations.push(format!("{f}: {p} not separated"));
                }
                if k < n && is_separated(&f, SeparationParams::new(k + 1, l).unwrap()) && !s {
                    violations.push(format!("{f}: {}|{l} without {p}", k + 1));
                }
            }
        }
    }
    Verdict::new(violations.is_empty(), format!("{families} families, {} violations {violations:?}", violations.len()))
}

fn c9() -> Verdict {
    let runs: [&[&str]; 4] = [
        &["verify", "--n", "5", "--all-orders"],
        &["verify", "--n", "4", "--k", "3", "--l", "2", "--variant", "strong"],
        &["constant", "--n", "5", "--k", "3", "--l", "2", "--class", "separated"],
        &["constant", "--n", "4", "--k", "4", "--l", "2", "--class", "weakly-separated", "--mode", "labeled"],
    ];
    let mut same = 0;
    let mut diff = Vec::new();
    for args in runs {
        let one: Vec<&str> = args.iter().copied().chain(["--workers", "1"]).collect();
        let many: Vec<&str> = args.iter().copied().chain(["--workers", "8"]).collect();
        let (c1, b1) = ucslab(&one);
        let (c8, b8) = ucslab(&many);
        if c1 == c8 && b1 == b8 && !b1.is_empty() {
            same += 1;
        } else {
            diff.push(args.join(" "));
        }
    }
    Verdict::new(diff.is_empty(), format!("{same} of {} runs byte-identical with 1 and 8 workers {diff:?}", runs.len()))
}

fn main() {
    let mut r = Report::default();
    r.check(1, "lower-tier verification, n=4 all orders", c1);
    r.check(2, "full-tier verification, n=5 canonical with resume", c2);
    r.check(3, "powerset cover identity, n<=8", c3);
    r.check(4, "bound attained by separated and weak constants, n<=5", c4);
    r.check(5, "enumeration cross-validation", c5);
    r.check(6, "binomial audit to k=30", c6);
    r.check(7, "subfamily proof steps, n<=4", c7);
    r.check(8, "class-structure invariants, n<=4", c8);
    r.check(9, "determinism across worker counts", c9);
    println!("acceptance: {} of {} criteria passed", r.total() - r.failures(), r.total());
    if r.failures() > 0 {
        std::process::exit(1);
    }
}
