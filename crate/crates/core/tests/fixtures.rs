mod common;

use common::{chain_fixture, complex_fixture, fixture, q};
use num::BigUint;
use stratvol::complex::{boundary, subdivide_chain};
use stratvol::morse::{
    check_bound, count_trajectories, count_trajectories_recursive, parse_flow, trajectories_from, validate_flow,
    verify_gray, DescendingDiskPosets, VolumeSpec,
};
use stratvol::strat::parse_poset;
use stratvol::stratified::{check_conditions, essential_norm, localize, Condition, Subcomplex};
use stratvol::Error;

fn big(n: u32) -> BigUint {
    BigUint::from(n)
}

#[test]
fn disk_chain_is_the_subdivided_fundamental_chain() {
    let file = complex_fixture("fig3-disk-s1.complex");
    let k = &file.complex;
    let coarse = chain_fixture(k, "fig3-disk-coarse.chain");
    let fine = chain_fixture(k, "fig3-disk.chain");
    assert_eq!(fine.len(), 24);
    assert_eq!(fine, subdivide_chain(k, &coarse));
    assert_eq!(
        boundary(k, &fine).unwrap(),
        subdivide_chain(k, &boundary(k, &coarse).unwrap())
    );
}

#[test]
fn disk_norms() {
    for (name, expected) in [("fig3-disk-s1.complex", 4), ("fig3-disk-s2.complex", 2)] {
        let file = complex_fixture(name);
        let strata = file.strata.unwrap();
        let c = chain_fixture(&file.complex, "fig3-disk.chain");
        assert!(check_conditions(&file.complex, &c, &strata).all_passed());
        assert_eq!(
            essential_norm(&file.complex, &c, &strata).unwrap(),
            q(expected),
            "{name}"
        );
    }
}

#[test]
fn order_violation_fixture() {
    let file = complex_fixture("order-violation.complex");
    let strata = file.strata.unwrap();
    let c = chain_fixture(&file.complex, "order-violation.chain");
    let report = check_conditions(&file.complex, &c, &strata);
    assert!(!report.passed(Condition::Order));
    assert!(matches!(
        essential_norm(&file.complex, &c, &strata),
        Err(Error::ConditionsFailed(_))
    ));
}

#[test]
fn flow_fixtures() {
    let torus = parse_flow(&fixture("tilted-torus.flow")).unwrap();
    assert_eq!(count_trajectories(&torus).total, big(8));
    assert_eq!(count_trajectories_recursive(&torus).total, big(8));
    let report = validate_flow(&torus, Some(0));
    assert!(report.passed());

    let corrupted = parse_flow(&fixture("corrupted.flow")).unwrap();
    let report = validate_flow(&corrupted, None);
    assert!(!report.square_zero());
    assert_eq!(report.square_witnesses, vec![("p".to_string(), vec!["c".to_string()])]);

    let sphere = parse_flow(&fixture("fig2-sphere.flow")).unwrap();
    assert!(validate_flow(&sphere, Some(2)).passed());
    assert_eq!(trajectories_from(&sphere, "p").unwrap(), big(2));
    assert_eq!(count_trajectories(&sphere).total, big(4));

    let genus2 = parse_flow(&fixture("genus2-deficient.flow")).unwrap();
    assert!(validate_flow(&genus2, Some(-2)).passed());
    let bound = check_bound(&genus2, &VolumeSpec::SurfaceGenus(2)).unwrap();
    assert_eq!(bound.total, big(2));
    assert_eq!(bound.simplicial_volume, q(4));
    assert!(!bound.satisfied());
    assert!(check_bound(&torus, &VolumeSpec::SurfaceGenus(1)).unwrap().satisfied());
}

#[test]
fn disk_posets_match_trajectories() {
    let sphere = parse_flow(&fixture("fig2-sphere.flow")).unwrap();
    let disk = parse_poset(&fixture("fig3-disk.poset")).unwrap();
    assert_eq!(disk.count_chains(3, false), big(4));
    let r = verify_gray(&DescendingDiskPosets::new("p", disk), &sphere).unwrap();
    assert_eq!(
        (
            r.chains.clone(),
            r.label_distinct_chains.clone(),
            r.trajectories.clone()
        ),
        (big(4), big(2), big(2))
    );
    assert_eq!(r.label_checks.len(), 2);
    assert!(r.passed());

    let torus = parse_flow(&fixture("tilted-torus.flow")).unwrap();
    let octagon = parse_poset(&fixture("tilted-torus-disk.poset")).unwrap();
    let r = verify_gray(&DescendingDiskPosets::new("p", octagon), &torus).unwrap();
    assert_eq!(r.label_distinct_chains, big(8));
    assert_eq!(r.chains, big(16));
    assert_eq!(r.label_checks.len(), 8);
    assert!(r.passed());
}

#[test]
fn disk_essentials_match_chains() {
    // Essential simplices of the disk under its corner strata are the chains of
    // three strata; under the critical-point strata they are the broken
    // trajectories from `p`.
    let disk = parse_poset(&fixture("fig3-disk.poset")).unwrap();
    let s1 = complex_fixture("fig3-disk-s1.complex");
    let c = chain_fixture(&s1.complex, "fig3-disk.chain");
    let n1 = essential_norm(&s1.complex, &c, s1.strata.as_ref().unwrap()).unwrap();
    assert_eq!(n1, q(disk.count_chains(3, false).try_into().unwrap()));
    let s2 = complex_fixture("fig3-disk-s2.complex");
    let n2 = essential_norm(&s2.complex, &c, s2.strata.as_ref().unwrap()).unwrap();
    assert_eq!(n2, q(disk.count_chains(3, true).try_into().unwrap()));
}

#[test]
fn sphere_localization() {
    let file = complex_fixture("fig2-sphere.complex");
    let k = &file.complex;
    let strata = file.strata.unwrap();
    let c = chain_fixture(k, "fig2-sphere.chain");
    assert!(boundary(k, &c).unwrap().is_empty());
    let a = Subcomplex::from_strata(k, &strata, &["b", "c"]).unwrap();
    let out = localize(k, &strata, &a, &c, &c).unwrap();
    assert!(out.all_hold());
    assert_eq!(out.cycle, c);

    let double = chain_fixture(k, "fig2-sphere-double.chain");
    assert!(matches!(
        localize(k, &strata, &a, &c, &double),
        Err(Error::ClassMismatch(_))
    ));

    // The closed lower hemisphere meets a chain of three strata.
    let lower = strata.members(strata.id_of("a").unwrap());
    let wide = Subcomplex::closure(k, lower);
    assert!(matches!(
        localize(k, &strata, &wide, &c, &c),
        Err(Error::ChainBound { found: 3, allowed: 2 })
    ));
}
