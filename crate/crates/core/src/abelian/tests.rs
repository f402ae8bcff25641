use super::verify::*;
use super::*;
use crate::hall::poly::rat;
use crate::hall::{CoefficientField, HallAlgebra, HallElement};
use crate::quiver::QuiverPreset;

fn cat(cap: usize) -> Arc<IndecompCatalog> {
    Arc::new(IndecompCatalog::build(QuiverPreset::A2, cap).unwrap())
}

fn f(p: u32) -> PrimeField {
    PrimeField::new(p).unwrap()
}

/// Charges for φ(S2) > φ(S1), equal, and φ(S2) < φ(S1).
fn charges(case: i32) -> Vec<Charge> {
    match case {
        1 => vec![Charge::from_ints(1, 1), Charge::from_ints(-1, 1)],
        0 => vec![Charge::from_ints(0, 1), Charge::from_ints(0, 1)],
        _ => vec![Charge::from_ints(-1, 1), Charge::from_ints(1, 1)],
    }
}

fn stab(case: i32, p: u32, cap: usize) -> AbelianStability {
    let c = cat(cap);
    let z = StabilityFunction::new(charges(case), &c).unwrap();
    AbelianStability::new(c, z, f(p))
}

fn class(s: &AbelianStability, name: &str) -> ModuleClass {
    s.catalog().parse_class(name).unwrap()
}

#[test]
fn slopes() {
    let theta = LinearForm(vec![1, 0]);
    assert_eq!(theta.slope(&DimVector(vec![1, 1])).unwrap(), BigRational::new(1.into(), 2.into()));
    assert_eq!(theta.slope(&DimVector(vec![1, 0])).unwrap(), rat(1));
    assert_eq!(LinearForm(vec![0, 0]).slope(&DimVector(vec![3, 1])).unwrap(), rat(0));
    assert_eq!(theta.slope(&DimVector(vec![0, 0])).unwrap_err(), Error::ZeroVector);
}

#[test]
fn slope_order_matches_phase_order() {
    let c = cat(4);
    let theta = LinearForm(vec![2, -1]);
    let z = StabilityFunction::from_linear_form(&theta, &c).unwrap();
    let dims: Vec<DimVector> = DimVector(vec![3, 3]).lattice_below().into_iter().filter(|d| !d.is_zero()).collect();
    for a in &dims {
        for b in &dims {
            let by_slope = theta.slope(a).unwrap().cmp(&theta.slope(b).unwrap());
            assert_eq!(z.phase(a).unwrap().cmp(&z.phase(b).unwrap()), by_slope);
        }
    }
}

#[test]
fn invalid_charges_are_rejected() {
    let c = cat(4);
    assert!(StabilityFunction::new(vec![Charge::from_ints(1, 0), Charge::from_ints(0, 1)], &c).is_err());
    assert!(StabilityFunction::new(vec![Charge::from_ints(0, 1)], &c).is_err());
    let v: Value = serde_json::json!({"Z": {"1": ["-1", "1"], "2": ["1/2", "1"]}});
    let z = StabilityFunction::from_json(&v, &c).unwrap();
    assert_eq!(z.charges()[1], Charge::new(BigRational::new(1.into(), 2.into()), rat(1)));
}

#[test]
fn semistability_of_p1_follows_the_wall() {
    for (case, expected) in [(1, false), (0, true), (-1, true)] {
        let s = stab(case, 2, 4);
        assert_eq!(s.is_semistable(&class(&s, "P1")).unwrap(), expected, "case {case}");
        assert!(s.is_stable(&class(&s, "S1")).unwrap());
        assert!(s.is_stable(&class(&s, "S2")).unwrap());
    }
    let s = stab(1, 2, 4);
    let two = class(&s, "2*S1");
    assert!(s.is_semistable(&two).unwrap());
    assert!(!s.is_stable(&two).unwrap());
}

#[test]
fn hn_filtrations_on_a2() {
    let s = stab(1, 2, 4);
    let names = |h: HnFiltration| -> Vec<String> {
        h.factors.iter().map(|(c, _)| s.catalog().class_name(c)).collect()
    };
    assert_eq!(names(s.hn_filtration(&class(&s, "P1")).unwrap()), ["S2", "S1"]);
    assert_eq!(names(s.hn_filtration(&class(&s, "S1+S2")).unwrap()), ["S2", "S1"]);
    assert_eq!(names(s.hn_filtration(&class(&s, "2*S1")).unwrap()), ["S1+S1"]);
    let t = stab(-1, 3, 4);
    let ht = t.hn_filtration(&t.catalog().parse_class("S1+S2").unwrap()).unwrap();
    assert_eq!(ht.factors.len(), 2);
    assert_eq!(s.hn_filtration(&ModuleClass::zero()).unwrap_err(), Error::ZeroObject);
}

#[test]
fn hn_towers() {
    let s = stab(1, 2, 4);
    let names = |t: Vec<ModuleClass>| -> Vec<String> { t.iter().map(|c| s.catalog().class_name(c)).collect() };
    assert_eq!(names(s.hn_tower(&class(&s, "P1")).unwrap()), ["S2", "P1"]);
    assert_eq!(names(s.hn_tower(&class(&s, "S1+S2")).unwrap()), ["S2", "S1+S2"]);
    assert_eq!(names(s.hn_tower(&class(&s, "S1")).unwrap()), ["S1"]);
    // On the other side of the wall P1 is semistable.
    let t = stab(-1, 2, 4);
    assert_eq!(t.hn_tower(&class(&t, "P1")).unwrap().len(), 1);
}

#[test]
fn hn_types_do_not_depend_on_the_prime() {
    for case in [1, 0, -1] {
        let (a, b) = (stab(case, 2, 5), stab(case, 3, 5));
        for c in a.catalog().classes_up_to(4) {
            let ha = a.hn_filtration(&c).unwrap();
            let hb = b.hn_filtration(&c).unwrap();
            assert_eq!(ha.factors.iter().map(|x| &x.0).collect::<Vec<_>>(), hb.factors.iter().map(|x| &x.0).collect::<Vec<_>>());
        }
    }
}

#[test]
fn characteristic_elements() {
    let s = stab(1, 2, 4);
    let h = HallAlgebra::new(Arc::clone(s.catalog()), CoefficientField::Prime(f(2)));
    let k = s.kappa(&h, &DimVector(vec![1, 1]));
    let support: Vec<String> = k.support().map(|c| s.catalog().class_name(c)).collect();
    assert_eq!(support.len(), 2);
    assert!(support.contains(&"P1".to_string()) && support.contains(&"S1+S2".to_string()));
    let d = s.delta(&h, &DimVector(vec![2, 0])).unwrap();
    assert_eq!(d.get(&class(&s, "2*S1")), rat(1));
    let e = s.epsilon(&h, &DimVector(vec![1, 0])).unwrap();
    assert_eq!(e, HallElement::basis(h.field(), class(&s, "S1")));
}

#[test]
fn reciprocity_at_one_one() {
    let s = stab(1, 2, 4);
    let h = HallAlgebra::new(Arc::clone(s.catalog()), CoefficientField::Prime(f(2)));
    let g = DimVector(vec![1, 1]);
    let rhs = s
        .delta(&h, &g)
        .unwrap()
        .add(&h.multiply(&s.delta(&h, &DimVector(vec![0, 1])).unwrap(), &s.delta(&h, &DimVector(vec![1, 0])).unwrap()).unwrap())
        .unwrap();
    assert_eq!(s.kappa(&h, &g), rhs);
    assert!(verify_reciprocity(&s, &h, &g).unwrap().passed());
    assert!(verify_reciprocity(&s, &h, &DimVector(vec![1, 0])).unwrap().passed());
}

#[test]
fn wall_crossing_in_all_three_chambers() {
    for case in [1, 0, -1] {
        let s = stab(case, 2, 4);
        let h = HallAlgebra::new(Arc::clone(s.catalog()), CoefficientField::Prime(f(2)));
        let r = verify_wall_crossing(&s, &h, 4).unwrap();
        assert!(r.passed(), "{r:?}");
    }
    assert_eq!(stab(1, 2, 4).occupied_phases(4).unwrap().len(), 2);
    assert_eq!(stab(0, 2, 4).occupied_phases(4).unwrap().len(), 1);
    assert_eq!(stab(-1, 2, 4).occupied_phases(4).unwrap().len(), 3);
}

#[test]
fn pentagon_small() {
    let h = HallAlgebra::new(cat(4), CoefficientField::Prime(f(2)));
    let r = verify_pentagon(&h, 4).unwrap();
    assert!(r.passed(), "{r:?}");
}

#[test]
fn joyce_elements_at_q_one() {
    for case in [1, 0, -1] {
        let s = stab(case, 2, 3);
        let h = HallAlgebra::new(Arc::clone(s.catalog()), CoefficientField::Euler);
        let r = verify_joyce(&s, &h, 3).unwrap();
        assert!(r.passed(), "{r:?}");
    }
}

#[test]
fn lemma_suite_small() {
    for case in [1, 0, -1] {
        let r = lemma_suite(&stab(case, 2, 4), 4).unwrap();
        assert!(r.passed(), "{r:?}");
    }
}

#[test]
fn ordered_decomposition_counts() {
    assert_eq!(ordered_decompositions(&DimVector(vec![2, 0])).len(), 2);
    assert_eq!(ordered_decompositions(&DimVector(vec![1, 1])).len(), 3);
}
