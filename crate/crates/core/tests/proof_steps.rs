use ucslab_core::analysis::proof_steps::Step;
use ucslab_core::analysis::{check_proof_steps, derive_disjoint_subfamily, derive_quotient_subfamily, WitnessMode};
use ucslab_core::enumerate::{enumerate_families, Strategy};
use ucslab_core::{is_separated, is_union_closed, GroundSet, SeparationParams, SubsetMask};

#[test]
fn four_points_designated() {
    let r = check_proof_steps(4, WitnessMode::Designated).unwrap();
    assert_eq!(r.families, 2271);
    assert!(r.checks > 0);
    assert!(r.passed(), "{:?}", &r.findings[..r.findings.len().min(5)]);
}

#[test]
fn four_points_strict() {
    let r = check_proof_steps(4, WitnessMode::Strict).unwrap();
    assert_eq!(r.designated_findings().count(), 0);
    assert!(r.passed(), "{:?}", &r.findings[..r.findings.len().min(5)]);
    let d = check_proof_steps(4, WitnessMode::Designated).unwrap();
    assert!(r.checks > d.checks);
}

/// Rebuild both subfamilies by hand for every family, set and order on four points.
#[test]
fn derived_members_match_direct_construction() {
    let g = GroundSet::new(4).unwrap();
    for f in enumerate_families(4, Strategy::Recursive).unwrap() {
        for s in (1u64..15).map(SubsetMask) {
            let rem = g.full().difference(s);
            let squeeze = |a: SubsetMask| -> SubsetMask {
                SubsetMask::from_elements(rem.elements().enumerate().filter(|&(_, e)| a.has(e)).map(|(i, _)| i as u32))
            };
            let mut disjoint: Vec<SubsetMask> =
                f.members().iter().filter(|a| a.0 & s.0 == 0).map(|&a| squeeze(a)).collect();
            disjoint.sort();
            let mut quotient: Vec<SubsetMask> = f
                .members()
                .iter()
                .filter(|a| a.0 & s.0 == s.0)
                .map(|&a| squeeze(a))
                .chain([SubsetMask::EMPTY])
                .collect();
            quotient.sort();
            quotient.dedup();

            let d = derive_disjoint_subfamily(&f, s, 1).unwrap();
            assert_eq!(d.derived.members, disjoint);
            assert_eq!(d.sizes.total(), f.len() as u64);
            let rg = GroundSet::new(rem.len()).unwrap();
            let valid = disjoint.contains(&rg.full()) && is_union_closed(&disjoint, rg);
            assert_eq!(d.derived.family.is_ok(), valid);

            let q = derive_quotient_subfamily(&f, s).unwrap();
            assert_eq!(q.members, quotient);
            assert!(q.family.is_ok(), "quotient of a family always contains the full remainder");
        }
    }
}

/// Outside the separation hypothesis the disjoint step can break, which the checker
/// must not count against the claims.
#[test]
fn hypothesis_matters() {
    let g = GroundSet::new(3).unwrap();
    let mut broken = 0;
    for f in enumerate_families(3, Strategy::Recursive).unwrap() {
        if is_separated(&f, SeparationParams::new(2, 1).unwrap()) {
            continue;
        }
        for s in g.k_subsets(1) {
            if derive_disjoint_subfamily(&f, s, 1).unwrap().derived.family.is_err() {
                broken += 1;
            }
        }
    }
    assert!(broken > 0);
    let r = check_proof_steps(3, WitnessMode::Strict).unwrap();
    assert!(r.findings.iter().all(|x| x.step != Step::Disjoint));
}
