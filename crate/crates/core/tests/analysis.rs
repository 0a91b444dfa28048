use proptest::prelude::*;
use proptest::strategy::Strategy as _;
use ucslab_core::analysis::survey::{constants_table, empirical_constant_with, verify_conjecture_with};
use ucslab_core::analysis::{
    classify_all, empirical_constant, verify_conjecture, ClassKind, FamilyClassSelector, ScanMode, Variant,
    VerifyOutcome,
};
use ucslab_core::binomial::tail_sum;
use ucslab_core::driver::{run_survey, ScanConfig};
use ucslab_core::enumerate::{enumerate_families, Strategy};
use ucslab_core::{
    best_cover, cover_count, is_separated, is_weakly_separated, union_closure, ExactFraction, Family, GroundSet,
    SeparationParams, SubsetMask,
};

fn p(k: u32, l: u32) -> SeparationParams {
    SeparationParams::new(k, l).unwrap()
}

fn sel(kind: ClassKind, k: u32, l: u32) -> FamilyClassSelector {
    FamilyClassSelector::new(kind, p(k, l))
}

fn frac(a: u64, b: u64) -> ExactFraction {
    ExactFraction::new(a, b)
}

/// Separation straight from the definition: every sequence of k distinct points, with the
/// first l required and the rest forbidden (or, weakly, at least one of the first l hit).
fn oracle_separated(f: &Family, k: u32, l: u32, weak: bool) -> bool {
    let n = f.ground().size();
    if n < k {
        return false;
    }
    let mut seq = Vec::new();
    fn rec(f: &Family, n: u32, k: u32, l: u32, weak: bool, seq: &mut Vec<u32>) -> bool {
        if seq.len() == k as usize {
            let (head, tail) = seq.split_at(l as usize);
            return f.members().iter().any(|a| {
                let hit = if weak { head.iter().any(|&x| a.has(x)) } else { head.iter().all(|&x| a.has(x)) };
                hit && tail.iter().all(|&x| !a.has(x))
            });
        }
        for x in 0..n {
            if !seq.contains(&x) {
                seq.push(x);
                let ok = rec(f, n, k, l, weak, seq);
                seq.pop();
                if !ok {
                    return false;
                }
            }
        }
        true
    }
    rec(f, n, k, l, weak, &mut seq)
}

/// Largest cover count over all k-sets, by scanning every mask.
fn oracle_best(f: &Family, k: u32, l: u32) -> u64 {
    let n = f.ground().size();
    (0u64..1 << n)
        .filter(|s| s.count_ones() == k)
        .map(|s| f.members().iter().filter(|a| (a.0 & s).count_ones() >= l).count() as u64)
        .max()
        .unwrap()
}

fn below(f: &Family, k: u32, l: u32) -> bool {
    // best / |f| < sum / 2^k
    (oracle_best(f, k, l) as u128) << k < f.len() as u128 * tail_sum(k, l)
}

fn small_cfg(n: u32) -> ScanConfig {
    ScanConfig::for_n(n).with_workers(2)
}

#[test]
fn constant_examples() {
    let r = empirical_constant(2, sel(ClassKind::All, 1, 1)).unwrap();
    assert_eq!(r.value, frac(1, 2));
    assert_eq!(r.witness.to_string(), "0,3");
    assert_eq!(r.families_scanned, 4);
    let r = empirical_constant(2, sel(ClassKind::Separated, 2, 1)).unwrap();
    assert_eq!(r.value, frac(3, 4));
    assert_eq!(r.witness.to_string(), "0,1,2,3");
    for k in 1..=4 {
        let r = empirical_constant(k, sel(ClassKind::Separated, k, k)).unwrap();
        assert_eq!(r.value, frac(1, 1 << k), "k={k}");
    }
}

#[test]
fn constant_report_is_self_consistent() {
    for r in constants_table(3, &small_cfg(3)).unwrap() {
        let (k, l) = (r.selector.params.k(), r.selector.params.l());
        assert_eq!(cover_count(&r.witness, r.witness_s, l), r.witness_count);
        assert_eq!(oracle_best(&r.witness, k, l), r.witness_count);
        assert_eq!(frac(r.witness_count, r.witness.len() as u64), r.value);
        assert!(r.selector.admits(&r.witness));
    }
}

#[test]
fn constants_match_brute_force_minimum() {
    for n in 1..=4 {
        let fams: Vec<Family> = enumerate_families(n, Strategy::Recursive).unwrap().collect();
        for r in constants_table(n, &small_cfg(n)).unwrap() {
            let (k, l) = (r.selector.params.k(), r.selector.params.l());
            let weak = r.selector.kind == ClassKind::WeaklySeparated;
            let class: Vec<&Family> =
                fams.iter().filter(|f| r.selector.kind == ClassKind::All || oracle_separated(f, k, l, weak)).collect();
            let best = class.iter().map(|f| frac(oracle_best(f, k, l), f.len() as u64)).min().unwrap();
            assert_eq!(r.value, best, "n={n} {}", r.selector);
            assert_eq!(r.families_scanned, class.len() as u64);
            // first attaining family in stream order
            let first = class.iter().find(|f| frac(oracle_best(f, k, l), f.len() as u64) == best).unwrap();
            assert_eq!(&&r.witness, first);
        }
    }
}

#[test]
fn verify_examples() {
    let r = verify_conjecture(2, p(2, 1), Variant::Strong).unwrap();
    assert!(r.passed());
    assert_eq!(r.minimum, Some(frac(3, 4)));
    assert!(verify_conjecture(3, p(2, 2), Variant::Standard).unwrap().passed());
}

#[test]
fn strong_variant_fails_at_three_points() {
    let r = verify_conjecture(3, p(3, 2), Variant::Strong).unwrap();
    assert_eq!(r.families_in_class, 26);
    assert_eq!(r.counterexamples, 3);
    assert_eq!(r.minimum, Some(frac(2, 5)));
    let oracle_first = enumerate_families(3, Strategy::Recursive)
        .unwrap()
        .find(|f| oracle_separated(f, 3, 2, true) && below(f, 3, 2))
        .unwrap();
    match r.outcome {
        VerifyOutcome::Counterexample { family, profile } => {
            assert_eq!(family, oracle_first);
            assert_eq!(family.to_string(), "0,1,2,3,7");
            assert_eq!(profile.len(), 1);
            assert_eq!(profile[0], (SubsetMask(7), 2));
        }
        VerifyOutcome::Pass => panic!("expected a counterexample"),
    }
    assert!(!r.vacuous);
}

#[test]
fn verification_counts_match_brute_force() {
    for n in 1..=4 {
        let fams: Vec<Family> = enumerate_families(n, Strategy::Recursive).unwrap().collect();
        for pp in SeparationParams::all_up_to(n) {
            for v in Variant::BOTH {
                let weak = v == Variant::Strong;
                let r = verify_conjecture_with(n, pp, v, &small_cfg(n)).unwrap();
                let class: Vec<&Family> = fams.iter().filter(|f| oracle_separated(f, pp.k(), pp.l(), weak)).collect();
                let bad = class.iter().filter(|f| below(f, pp.k(), pp.l())).count() as u64;
                assert_eq!(r.families_in_class, class.len() as u64);
                assert_eq!(r.counterexamples, bad, "n={n} {pp} {v}");
                if v == Variant::Standard {
                    assert!(r.passed(), "n={n} {pp}");
                }
            }
        }
    }
}

#[test]
fn class_counts_match_brute_force() {
    for n in 1..=4 {
        let fams: Vec<Family> = enumerate_families(n, Strategy::Recursive).unwrap().collect();
        for row in classify_all(n).unwrap() {
            let sep = fams.iter().filter(|f| oracle_separated(f, row.k, row.l, false)).count() as u64;
            let weak = fams.iter().filter(|f| oracle_separated(f, row.k, row.l, true)).count() as u64;
            assert_eq!((row.total, row.separated, row.weakly_separated), (fams.len() as u64, sep, weak));
        }
    }
}

#[test]
fn class_structure_invariants_exhaustive() {
    for n in 1..=4 {
        for f in enumerate_families(n, Strategy::Recursive).unwrap() {
            for pp in SeparationParams::all_up_to(n) {
                let (k, l) = (pp.k(), pp.l());
                let s = is_separated(&f, pp);
                let w = is_weakly_separated(&f, pp);
                assert!(!s || w);
                if l == 1 {
                    assert_eq!(s, w);
                }
                if l == k {
                    assert!(s);
                }
                if k < n && is_separated(&f, p(k + 1, l)) {
                    assert!(s, "monotone in k: {f} at {k}|{l}");
                }
            }
        }
    }
}

#[test]
fn labeled_and_canonical_scans_agree() {
    let cfg = small_cfg(4);
    let labeled = constants_table(4, &cfg.clone().with_mode(ScanMode::Labeled)).unwrap();
    let canonical = constants_table(4, &cfg.with_mode(ScanMode::Canonical)).unwrap();
    for (a, b) in labeled.iter().zip(&canonical) {
        assert_eq!((&a.value, &a.witness, a.witness_s), (&b.value, &b.witness, b.witness_s));
        assert_eq!(a.families_scanned, b.families_scanned);
        assert!(b.classes_scanned <= a.classes_scanned);
    }
}

#[test]
fn worker_count_does_not_change_results() {
    let sels: Vec<FamilyClassSelector> =
        SeparationParams::all_up_to(4).flat_map(|pp| ClassKind::ALL.map(|c| FamilyClassSelector::new(c, pp))).collect();
    let one = run_survey(4, &sels, &ScanConfig::for_n(4).with_workers(1)).unwrap();
    let many = run_survey(4, &sels, &ScanConfig::for_n(4).with_workers(6)).unwrap();
    assert_eq!(one.tallies, many.tallies);
}

#[test]
fn interrupted_scan_resumes_to_the_same_result() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scan.ckpt");
    let s = [sel(ClassKind::WeaklySeparated, 4, 2), sel(ClassKind::All, 2, 1)];
    let mut cfg = ScanConfig::for_n(4).with_workers(3);
    cfg.batch_units = 50;
    let whole = run_survey(4, &s, &cfg).unwrap();

    cfg.checkpoint = Some(path.clone());
    cfg.halt_after_batches = Some(2);
    let first = run_survey(4, &s, &cfg).unwrap();
    assert!(!first.is_complete());
    assert_eq!(first.units_done, 100);
    assert!(path.exists());

    // a different selector list must not pick the checkpoint up
    assert!(run_survey(4, &s[..1], &cfg).is_err());

    cfg.halt_after_batches = None;
    let rest = run_survey(4, &s, &cfg).unwrap();
    assert_eq!(rest.resumed_from, Some(100));
    assert!(rest.is_complete());
    assert_eq!(rest.tallies, whole.tallies);
    assert!(!path.exists());
}

#[test]
fn weak_constant_never_exceeds_separated() {
    for n in 2..=4 {
        for pp in SeparationParams::all_up_to(n) {
            let cfg = small_cfg(n);
            let s = empirical_constant_with(n, FamilyClassSelector::new(ClassKind::Separated, pp), &cfg).unwrap();
            let w = empirical_constant_with(n, FamilyClassSelector::new(ClassKind::WeaklySeparated, pp), &cfg).unwrap();
            assert!(w.value <= s.value);
        }
    }
}

#[test]
fn powerset_attains_the_bound() {
    for n in 1..=4 {
        let pset = Family::powerset(GroundSet::new(n).unwrap());
        for pp in SeparationParams::all_up_to(n) {
            let (_, c) = best_cover(&pset, pp).unwrap();
            assert_eq!(frac(c, pset.len() as u64), frac(tail_sum(pp.k(), pp.l()) as u64, 1 << pp.k()));
        }
    }
}

fn arb_family(max_n: u32) -> impl proptest::strategy::Strategy<Value = Family> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(0u64..(1 << n), 0..6).prop_map(move |seeds| {
            union_closure(seeds.into_iter().map(SubsetMask), GroundSet::new(n).unwrap()).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn powerset_cover_identity(n in 1u32..=8, k_frac in 0.0f64..1.0, l_frac in 0.0f64..1.0, pick in any::<u64>()) {
        let k = 1 + ((n as f64 * k_frac) as u32).min(n - 1);
        let l = 1 + ((k as f64 * l_frac) as u32).min(k - 1);
        let g = GroundSet::new(n).unwrap();
        let sets: Vec<SubsetMask> = g.k_subsets(k).collect();
        let s = sets[(pick % sets.len() as u64) as usize];
        let expected = (tail_sum(k, l) as u64) << (n - k);
        prop_assert_eq!(cover_count(&Family::powerset(g), s, l), expected);
    }

    #[test]
    fn predicates_match_definition(f in arb_family(5), k in 1u32..=5, l_off in 0u32..5) {
        let l = 1 + l_off.min(k - 1);
        let pp = p(k, l);
        prop_assert_eq!(is_separated(&f, pp), oracle_separated(&f, k, l, false));
        prop_assert_eq!(is_weakly_separated(&f, pp), oracle_separated(&f, k, l, true));
        if k <= f.ground().size() {
            prop_assert_eq!(best_cover(&f, pp).unwrap().1, oracle_best(&f, k, l));
        }
    }

    #[test]
    fn relabeling_commutes(f in arb_family(6), k in 1u32..=6, l_off in 0u32..6, shuffle in any::<u64>()) {
        let n = f.ground().size();
        let l = 1 + l_off.min(k - 1);
        let pp = p(k, l);
        let mut perm: Vec<u32> = (0..n).collect();
        let mut r = shuffle;
        for i in (1..perm.len()).rev() {
            perm.swap(i, (r % (i as u64 + 1)) as usize);
            r /= i as u64 + 1;
        }
        let g = f.permute(&perm);
        prop_assert_eq!(is_separated(&f, pp), is_separated(&g, pp));
        prop_assert_eq!(is_weakly_separated(&f, pp), is_weakly_separated(&g, pp));
        if k <= n {
            let (s, c) = best_cover(&f, pp).unwrap();
            prop_assert_eq!(best_cover(&g, pp).unwrap().1, c);
            prop_assert_eq!(cover_count(&g, s.permute(&perm), l), c);
        }
    }
}
