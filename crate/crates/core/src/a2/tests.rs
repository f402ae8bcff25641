use super::*;
use crate::catalog::IndecompCatalog;
use crate::derived::class::TruncationProfile;
use crate::derived::DerivedHall;
use crate::field::PrimeField;
use crate::phase::Charge;
use crate::quiver::QuiverPreset;
use std::sync::Arc;

fn a2() -> Arc<IndecompCatalog> {
    Arc::new(IndecompCatalog::build(QuiverPreset::A2, 6).unwrap())
}

fn tilted(cat: &Arc<IndecompCatalog>, gens: &[(&str, (i64, i64))]) -> StabilityCondition {
    StabilityCondition::tilted_a2(
        cat.clone(),
        gens.iter().map(|(g, _)| DerivedClass::parse(cat, g).unwrap()).collect(),
        gens.iter().map(|(_, z)| Charge::from_ints(z.0, z.1)).collect(),
    )
    .unwrap()
}

#[test]
fn standard_heart_rows() {
    let cat = a2();
    // S1 to the left of S2: only the simples are semistable.
    let r = classify(&tilted(&cat, &[("S2", (-1, 1)), ("S1", (1, 1))])).unwrap();
    assert_eq!((r.row, r.case, r.n, r.shift), (3, 1, 0, 0));
    assert_eq!(r.heart, "A");
    assert_eq!(r.phases, "phi(S2) > phi(S1)");
    assert_eq!(r.formula_label(), "(1) with n=0");
    // S1 to the right: everything is semistable.
    let r = classify(&tilted(&cat, &[("S2", (1, 1)), ("S1", (-1, 1))])).unwrap();
    assert_eq!((r.row, r.case), (10, 4));
    assert_eq!(r.semistable, ["S2", "P1", "S1"]);
    // Equal phases.
    let r = classify(&tilted(&cat, &[("S2", (0, 1)), ("S1", (0, 1))])).unwrap();
    assert_eq!(r.row, 10);
}

#[test]
fn shifted_heart_rows() {
    let cat = a2();
    let r = classify(&tilted(&cat, &[("S2", (1, 1)), ("S1[2]", (-1, 1))])).unwrap();
    assert_eq!((r.row, r.n), (1, 1));
    assert_eq!(r.heart, "add(S2,S1[2])");
    assert_eq!(r.silting.as_deref(), Some("P1 at -2, S2 at 0"));
    let r = classify(&tilted(&cat, &[("S2", (-1, 1)), ("S1[2]", (1, 1))])).unwrap();
    assert_eq!((r.row, r.n), (2, 2));
    assert_eq!(r.phases, "phi(S2) > phi(S1[2])");
    let r = classify(&tilted(&cat, &[("S1", (-1, 1)), ("P1[1]", (1, 1))])).unwrap();
    assert_eq!(r.case, 2);
    let r = classify(&tilted(&cat, &[("P1", (1, 1)), ("S2[2]", (-1, 1))])).unwrap();
    assert_eq!(r.case, 3);
}

#[test]
fn classification_is_shift_invariant() {
    let cat = a2();
    let a = classify(&tilted(&cat, &[("S2", (-1, 1)), ("S1[2]", (1, 1))])).unwrap();
    let b = classify(&tilted(&cat, &[("S2[1]", (-1, 1)), ("S1[3]", (1, 1))])).unwrap();
    assert_eq!((a.row, a.n), (b.row, b.n));
    assert_eq!(b.shift, a.shift - 1);
}

#[test]
fn every_row_is_realized() {
    let cat = a2();
    let entries = enumerate_table(witness_grid(&cat).unwrap()).unwrap();
    let rows: Vec<usize> = entries.iter().map(|e| e.row.row).collect();
    assert_eq!(rows, (1..=12).collect::<Vec<_>>());
    for e in &entries {
        assert_eq!(e.row.silting.is_some(), [1, 2, 4, 5, 7, 8].contains(&e.row.row));
        let back = StabilityCondition::from_json(cat.clone(), &e.witness.to_json(), PrimeField::new(2).unwrap()).unwrap();
        assert_eq!(classify(&back).unwrap(), e.row);
    }
}

#[test]
fn non_a2_is_rejected() {
    let cat = Arc::new(IndecompCatalog::build(QuiverPreset::A3, 3).unwrap());
    let z = crate::abelian::StabilityFunction::new(vec![Charge::from_ints(0, 1); 3], &cat).unwrap();
    let sigma = StabilityCondition::standard(cat, z, PrimeField::new(2).unwrap());
    assert!(matches!(classify(&sigma), Err(Error::InvalidSpec(_))));
}

#[test]
fn skeleton_blocks() {
    let cat = a2();
    let r = classify(&tilted(&cat, &[("S2", (1, 1)), ("S1[2]", (-1, 1))])).unwrap();
    assert_eq!(skeleton_names(&wall_crossing_skeleton(&r, 0, 1)), ["Phi_S2[1]", "Phi_S2", "Phi_S1[1]", "Phi_S1"]);
}

fn small() -> (Arc<IndecompCatalog>, DerivedHall, TruncationProfile) {
    let cat = a2();
    let dh = DerivedHall::new(cat.clone(), PrimeField::new(2).unwrap()).unwrap();
    (cat, dh, TruncationProfile::new(0, 1, 2).unwrap())
}

#[test]
fn cross_validation_accepts_the_classifier() {
    let (cat, dh, prof) = small();
    for g in [
        [("S2", (-1, 1)), ("S1", (1, 1))],
        [("S2", (1, 1)), ("S1", (-1, 1))],
        [("S2", (-1, 1)), ("S1[2]", (1, 1))],
        [("S2", (1, 1)), ("S1[2]", (-1, 1))],
    ] {
        let sigma = tilted(&cat, &g);
        let row = classify(&sigma).unwrap();
        let rep = cross_validate(&row, &sigma, &dh, &prof).unwrap();
        assert!(rep.passed(), "{row}: {:?}", rep.failures);
    }
}

#[test]
fn cross_validation_catches_mutations() {
    let (cat, dh, prof) = small();
    let sigma = tilted(&cat, &[("S2", (1, 1)), ("S1[2]", (-1, 1))]);
    let row = classify(&sigma).unwrap();
    let mutants: Vec<(&str, Box<dyn Fn(&mut TableRow)>)> = vec![
        ("row", Box::new(|r| r.row = 2)),
        ("case", Box::new(|r| r.case = 2)),
        ("n", Box::new(|r| r.n = 0)),
        ("semistable", Box::new(|r| r.semistable.push("P1".into()))),
        ("heart", Box::new(|r| r.heart = "add(S2,S1[1])".into())),
        ("phases", Box::new(|r| r.phases = "phi(S2) > phi(S1[1])".into())),
        ("formula", Box::new(|r| r.formula = 4)),
        ("shift", Box::new(|r| r.shift = 1)),
        ("silting", Box::new(|r| r.silting = None)),
    ];
    for (field, mutate) in mutants {
        let mut bad = row.clone();
        mutate(&mut bad);
        assert!(matches!(cross_validate(&bad, &sigma, &dh, &prof), Err(Error::Mismatch(_))), "{field} not caught");
    }
}
