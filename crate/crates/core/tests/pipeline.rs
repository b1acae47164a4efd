use dodeca_core::fpgroup::Space;
use dodeca_core::pipeline::*;

#[test]
fn small_census_round_trips() {
    let c = Census::run(Space::Ws, 6, 1).unwrap();
    let counts = c.degree_counts();
    assert_eq!(counts.get(&5), Some(&38));
    assert_eq!(counts.get(&6), Some(&61));
    assert!((2..=4).all(|d| !counts.contains_key(&d)));

    let json = serde_json::to_string(&c.records).unwrap();
    let back: Vec<CoverRecord> = serde_json::from_str(&json).unwrap();
    assert_eq!(back, c.records);

    let covers = c.records.iter().map(|r| (r.action.clone(), r.provenance.clone())).collect();
    let again = Census::from_covers(Space::Ws, covers, 1).unwrap();
    let key = |r: &CoverRecord| (r.degree, r.homology.to_string(), r.components, r.embedded_components);
    let mut a: Vec<_> = c.records.iter().map(key).collect();
    let mut b: Vec<_> = again.records.iter().map(key).collect();
    a.sort();
    b.sort();
    assert_eq!(a, b);
}

#[test]
fn table4_matches() {
    let l = phs_lattice().unwrap();
    let t = reproduce_table4(&l.covers).unwrap();
    assert!(t.passes(), "{:?}", t.diff);
    assert_eq!(t.to_csv().lines().count(), 13);
}

#[test]
fn table2_matches() {
    let r = search_towers(1, false).unwrap();
    let t = reproduce_table2(&r).unwrap();
    assert!(t.passes(), "{:?}", t.diff);
    assert_eq!((r.doubles, r.doubles_fpf), (127, 64));
    assert_eq!(r.e_candidates, 1);
    assert!(r.e_matches_words);
}

#[test]
fn base_report_of_ws() {
    let a = dodeca_core::cosets::PermutationAction::identity(1);
    let r = analyze(Space::Ws, &a, dodeca_core::cosets::Provenance::Enumerated).unwrap();
    assert!(r.npc.npc);
    assert_eq!(r.cube_f_vector.as_tuple(), (14, 54, 60, 20));
    assert_eq!(r.record.homology.to_string(), "Z5^3");
}
