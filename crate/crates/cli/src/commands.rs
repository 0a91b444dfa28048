use std::io::Write;
use std::sync::atomic::AtomicU64;
use std::sync::Arc;
use std::time::Duration;

use serde_json::json;
use ucslab_core::analysis::audit::superadditivity_sides;
use ucslab_core::analysis::survey::{constants_table, empirical_constant_with, verify_conjecture_with};
use ucslab_core::analysis::{
    audit_binomial, check_proof_steps, classify_all, verify_all_orders, ClassKind, FamilyClassSelector, ScanMode,
    Variant, VerifyOutcome, VerifyReport, WitnessMode,
};
use ucslab_core::driver::{scan_depth, ScanConfig};
use ucslab_core::enumerate::{enumerate_bits, enumerate_canonical_with, Strategy};
use ucslab_core::SeparationParams;

use crate::manifest::RunManifest;
use crate::output::{csv_rows, encode_rows, json_one, json_rows, Format, Target};
use crate::progress::Progress;
use crate::*;

pub fn dispatch(ctx: &Context, cmd: Command) -> Result<u8, CliError> {
    match cmd {
        Command::Enumerate(a) => enumerate(ctx, a),
        Command::Constant(a) => constant(ctx, a),
        Command::Verify(a) => verify(ctx, a),
        Command::Audit(a) => audit(ctx, a),
        Command::Table(a) => table(ctx, a),
        Command::Classify(a) => classify(ctx, a),
        Command::ProofSteps(a) => proof_steps(ctx, a),
    }
}

fn check_n(ctx: &Context, n: u32) -> Result<(), CliError> {
    if n == 0 || n > ctx.settings.max_n {
        return Err(CliError::usage(format!("n={n} outside 1..={} (raise with --max-n)", ctx.settings.max_n)));
    }
    Ok(())
}

fn scan_mode(n: u32, m: Option<ModeArg>) -> ScanMode {
    match m {
        Some(ModeArg::Labeled) => ScanMode::Labeled,
        Some(ModeArg::Canonical) => ScanMode::Canonical,
        None => ScanMode::default_for(n),
    }
}

fn units(n: u32) -> u64 {
    ((1u64 << n) - 1) << scan_depth(n)
}

fn scan_config(ctx: &Context, n: u32, mode: ScanMode, counter: &Arc<AtomicU64>) -> ScanConfig {
    let mut cfg = ScanConfig::for_n(n).with_workers(ctx.settings.workers).with_mode(mode);
    cfg.max_n = ctx.settings.max_n;
    cfg.batch_units = ctx.settings.batch_units;
    cfg.progress = Some(Arc::clone(counter));
    cfg
}

fn progress(ctx: &Context, label: String, counter: &Arc<AtomicU64>, total: u64) -> Progress {
    let interval = Duration::from_secs(ctx.settings.progress_secs);
    Progress::start(label, Arc::clone(counter), total, interval, !ctx.quiet)
}

fn enumerate(ctx: &Context, a: EnumerateArgs) -> Result<u8, CliError> {
    check_n(ctx, a.n)?;
    let strategy = match a.strategy {
        StrategyArg::Recursive => Strategy::Recursive,
        StrategyArg::Filter => Strategy::Filter,
    };
    let params = json!({ "n": a.n, "strategy": strategy.name(), "canonical": a.canonical });
    let mut manifest = RunManifest::start("enumerate", params, &ctx.settings, Some(a.n));
    manifest.strategy = strategy.name();
    let suffix = if a.canonical { "-canonical" } else { "" };
    let target = Target::resolve(a.out.as_deref(), &format!("families-n{}{suffix}.txt", a.n), &ctx.settings);

    let mut body = Vec::new();
    let (mut labeled, mut classes) = (0u64, 0u64);
    if a.canonical {
        let mut reps = enumerate_canonical_with(a.n, ctx.settings.max_n)?;
        while let Some((bits, orbit)) = reps.next_bits() {
            writeln!(body, "{}\t{orbit}", bits.to_family(a.n)).expect("write to memory");
            labeled += orbit;
            classes += 1;
        }
    } else {
        for bits in enumerate_bits(a.n, strategy, ctx.settings.max_n)? {
            writeln!(body, "{}", bits.to_family(a.n)).expect("write to memory");
            labeled += 1;
        }
    }
    manifest.totals.families_scanned = labeled;
    manifest.totals.classes_scanned = if a.canonical { classes } else { labeled };
    target.emit(*ctx.out.borrow_mut(), &body, &mut manifest)?;
    ctx.note(format!("labeled families: {labeled}"));
    if a.canonical {
        ctx.note(format!("isomorphism classes: {classes}"));
    }
    Ok(0)
}

fn constant(ctx: &Context, a: ConstantArgs) -> Result<u8, CliError> {
    check_n(ctx, a.n)?;
    let p = SeparationParams::new(a.k, a.l)?;
    let kind = match (a.weak, a.class) {
        (true, _) | (_, ClassArg::WeaklySeparated) => ClassKind::WeaklySeparated,
        (_, ClassArg::All) => ClassKind::All,
        (_, ClassArg::Separated) => ClassKind::Separated,
    };
    let mode = scan_mode(a.n, a.scan.mode);
    let params = json!({ "n": a.n, "k": a.k, "l": a.l, "class": kind.name(), "mode": mode.name() });
    let mut manifest = RunManifest::start("constant", params, &ctx.settings, Some(a.n));
    let target = Target::resolve(
        a.scan.out.as_deref(),
        &format!("constant-n{}-k{}-l{}-{}.json", a.n, a.k, a.l, kind.name()),
        &ctx.settings,
    );
    let format = target.format(a.scan.format, Format::Json);

    let counter = Arc::new(AtomicU64::new(0));
    let cfg = scan_config(ctx, a.n, mode, &counter);
    let report = {
        let _p = progress(ctx, format!("constant n={}", a.n), &counter, units(a.n));
        empirical_constant_with(a.n, FamilyClassSelector::new(kind, p), &cfg)?
    };
    let row = report.row();
    let body = match format {
        Format::Json => json_one(&row, &manifest.manifest_id),
        Format::Csv => csv_rows(&[&row], &manifest.manifest_id)?,
    };
    let below = report.value < report.conjectured;
    manifest.totals.families_scanned = report.families_scanned;
    manifest.totals.classes_scanned = report.classes_scanned;
    manifest.totals.passed = u64::from(!below);
    manifest.totals.failed = u64::from(below);
    target.emit(*ctx.out.borrow_mut(), &body, &mut manifest)?;
    ctx.note(format!(
        "{} {} on {} points: {} (bound {}), witness {} with S={}",
        kind, p, a.n, report.value, report.conjectured, report.witness, report.witness_s
    ));
    Ok(if below { EXIT_COUNTEREXAMPLE } else { 0 })
}

fn describe(r: &VerifyReport) -> String {
    let min = r.minimum.map_or_else(|| "-".to_string(), |m| m.to_string());
    let head = format!(
        "{} {} n={}: {} families ({} classes), minimum {}, bound {}",
        r.variant, r.params, r.n, r.families_in_class, r.classes_in_class, min, r.conjectured
    );
    match &r.outcome {
        VerifyOutcome::Pass if r.vacuous => format!("{head}: pass (vacuous, empty class)"),
        VerifyOutcome::Pass => format!("{head}: pass"),
        VerifyOutcome::Counterexample { family, profile } => {
            let prof: Vec<String> = profile.iter().map(|(s, c)| format!("{s}:{c}")).collect();
            format!(
                "{head}: COUNTEREXAMPLE ({} labeled)\n  first: {} ({} members)\n  covers: {}",
                r.counterexamples,
                family,
                family.len(),
                prof.join(" ")
            )
        }
    }
}

fn verify(ctx: &Context, a: VerifyArgs) -> Result<u8, CliError> {
    check_n(ctx, a.n)?;
    let mode = scan_mode(a.n, a.scan.mode);
    let variant = match a.variant {
        VariantArg::Standard => Variant::Standard,
        VariantArg::Strong => Variant::Strong,
    };
    let single = match (a.all_orders, a.k, a.l) {
        (false, Some(k), Some(l)) => Some(SeparationParams::new(k, l)?),
        _ => None,
    };
    let params = match single {
        Some(p) => json!({ "n": a.n, "k": p.k(), "l": p.l(), "variant": variant.name(), "mode": mode.name() }),
        None => json!({ "n": a.n, "orders": "all", "mode": mode.name() }),
    };
    let mut manifest = RunManifest::start("verify", params, &ctx.settings, Some(a.n));
    let default_name = match single {
        Some(p) => format!("verify-n{}-k{}-l{}-{}.json", a.n, p.k(), p.l(), variant.name()),
        None => format!("verify-n{}-all.json", a.n),
    };
    let target = Target::resolve(a.scan.out.as_deref(), &default_name, &ctx.settings);
    let format = target.format(a.scan.format, Format::Json);

    let counter = Arc::new(AtomicU64::new(0));
    let mut cfg = scan_config(ctx, a.n, mode, &counter);
    cfg.checkpoint = a.checkpoint.clone();
    cfg.halt_after_batches = a.halt_after_batches;
    let reports = {
        let _p = progress(ctx, format!("verify n={}", a.n), &counter, units(a.n));
        match single {
            Some(p) => vec![verify_conjecture_with(a.n, p, variant, &cfg)?],
            None => verify_all_orders(a.n, &cfg)?,
        }
    };

    let rows: Vec<_> = reports.iter().map(|r| r.row()).collect();
    let body = encode_rows(&rows, &manifest.manifest_id, format)?;
    let failed = reports.iter().filter(|r| !r.passed()).count() as u64;
    manifest.totals.families_scanned = reports.iter().map(|r| r.families_in_class).max().unwrap_or(0);
    manifest.totals.classes_scanned = reports.iter().map(|r| r.classes_in_class).max().unwrap_or(0);
    manifest.totals.passed = reports.len() as u64 - failed;
    manifest.totals.failed = failed;
    target.emit(*ctx.out.borrow_mut(), &body, &mut manifest)?;
    for r in &reports {
        ctx.note(describe(r));
    }
    ctx.note(format!("{} of {} checks passed", reports.len() as u64 - failed, reports.len()));
    Ok(if failed > 0 { EXIT_COUNTEREXAMPLE } else { 0 })
}

fn audit(ctx: &Context, a: AuditArgs) -> Result<u8, CliError> {
    let reports = audit_binomial(a.max_k)?;
    let mut manifest = RunManifest::start("audit", json!({ "max_k": a.max_k }), &ctx.settings, None);
    let target = Target::resolve(a.out.as_deref(), &format!("audit-k{}.json", a.max_k), &ctx.settings);
    let body = json_rows(&reports, &manifest.manifest_id);
    let failed = reports.iter().filter(|r| !r.passed()).count() as u64;
    manifest.totals.passed = reports.len() as u64 - failed;
    manifest.totals.failed = failed;
    target.emit(*ctx.out.borrow_mut(), &body, &mut manifest)?;
    for r in &reports {
        ctx.note(format!(
            "{}: {} cases up to k={}, {} equalities, {} failures",
            r.inequality.name(),
            r.checked,
            r.max_k,
            r.equalities,
            r.failures.len()
        ));
    }
    let (lhs, rhs) = superadditivity_sides(1, 1, 1);
    ctx.note(format!("superadditivity at k=k'=l=1: {lhs} vs {rhs}"));
    Ok(if failed > 0 { EXIT_COUNTEREXAMPLE } else { 0 })
}

/// `a..b` or `a..=b` (both inclusive) or a single `n`.
fn parse_range(s: &str) -> Result<(u32, u32), CliError> {
    let bad = || CliError::usage(format!("bad n range {s:?}; expected a..b"));
    let num = |t: &str| t.trim().parse::<u32>().map_err(|_| bad());
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (num(lo)?, num(hi.strip_prefix('=').unwrap_or(hi))?),
        None => (num(s)?, num(s)?),
    };
    if lo > hi {
        return Err(CliError::usage(format!("empty n range {s:?}")));
    }
    Ok((lo, hi))
}

fn table(ctx: &Context, a: TableArgs) -> Result<u8, CliError> {
    let (lo, hi) = parse_range(&a.n)?;
    for n in [lo, hi] {
        check_n(ctx, n)?;
    }
    let mode = a.scan.mode.map(|m| scan_mode(lo, Some(m)).name()).unwrap_or("auto");
    let params = json!({ "n_from": lo, "n_to": hi, "mode": mode });
    let mut manifest = RunManifest::start("table", params, &ctx.settings, Some(hi));
    let target = Target::resolve(a.scan.out.as_deref(), &format!("table-n{lo}-{hi}.csv"), &ctx.settings);
    let format = target.format(a.scan.format, Format::Csv);

    let counter = Arc::new(AtomicU64::new(0));
    let total = (lo..=hi).map(units).sum();
    let mut rows = Vec::new();
    {
        let _p = progress(ctx, format!("table n={lo}..{hi}"), &counter, total);
        for n in lo..=hi {
            let cfg = scan_config(ctx, n, scan_mode(n, a.scan.mode), &counter);
            let reports = constants_table(n, &cfg)?;
            manifest.totals.families_scanned += reports.first().map_or(0, |r| r.families_scanned);
            rows.extend(reports.iter().map(|r| r.row()));
        }
    }
    let below = rows.iter().filter(|r| r.verdict == ucslab_core::analysis::Verdict::BelowBound).count() as u64;
    manifest.totals.passed = rows.len() as u64 - below;
    manifest.totals.failed = below;
    let body = encode_rows(&rows, &manifest.manifest_id, format)?;
    target.emit(*ctx.out.borrow_mut(), &body, &mut manifest)?;
    ctx.note(format!("{} rows, {} below the conjectured bound", rows.len(), below));
    Ok(0)
}

fn classify(ctx: &Context, a: ClassifyArgs) -> Result<u8, CliError> {
    check_n(ctx, a.n)?;
    let rows = classify_all(a.n)?;
    let mut manifest = RunManifest::start("classify", json!({ "n": a.n }), &ctx.settings, Some(a.n));
    let target = Target::resolve(a.out.as_deref(), &format!("classes-n{}.json", a.n), &ctx.settings);
    let format = target.format(a.format, Format::Json);
    manifest.totals.families_scanned = rows.first().map_or(0, |r| r.total);
    let body = encode_rows(&rows, &manifest.manifest_id, format)?;
    target.emit(*ctx.out.borrow_mut(), &body, &mut manifest)?;
    for r in &rows {
        ctx.note(format!(
            "{}|{}: {} separated, {} weakly separated, of {}",
            r.k, r.l, r.separated, r.weakly_separated, r.total
        ));
    }
    Ok(0)
}

fn proof_steps(ctx: &Context, a: ProofStepArgs) -> Result<u8, CliError> {
    let mode = match a.witness {
        WitnessArg::Designated => WitnessMode::Designated,
        WitnessArg::Strict => WitnessMode::Strict,
    };
    let report = check_proof_steps(a.n, mode)?;
    let params = json!({ "n": a.n, "witness": mode.name() });
    let mut manifest = RunManifest::start("proof-steps", params, &ctx.settings, Some(a.n));
    let target =
        Target::resolve(a.out.as_deref(), &format!("proof-steps-n{}-{}.json", a.n, mode.name()), &ctx.settings);
    manifest.totals.families_scanned = report.families;
    manifest.totals.passed = report.checks - report.findings.len() as u64;
    manifest.totals.failed = report.findings.len() as u64;
    target.emit(*ctx.out.borrow_mut(), &json_one(&report, &manifest.manifest_id), &mut manifest)?;
    ctx.note(format!(
        "{} families, {} cases, {} findings ({} for the designated set)",
        report.families,
        report.checks,
        report.findings.len(),
        report.designated_findings().count()
    ));
    Ok(if report.passed() { 0 } else { EXIT_COUNTEREXAMPLE })
}
