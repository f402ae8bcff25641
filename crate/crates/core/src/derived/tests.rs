use super::*;
use crate::hall::poly::rat;
use crate::quiver::QuiverPreset;

fn hall(p: u32) -> DerivedHall {
    let cat = Arc::new(IndecompCatalog::build(QuiverPreset::A2, 2).unwrap());
    DerivedHall::new(cat, PrimeField::new(p).unwrap()).unwrap()
}

fn cls(dh: &DerivedHall, s: &str) -> DerivedClass {
    DerivedClass::parse(dh.catalog(), s).unwrap()
}

#[test]
fn needs_full_catalog() {
    let cat = Arc::new(IndecompCatalog::build(QuiverPreset::A3, 2).unwrap());
    assert!(DerivedHall::new(cat, PrimeField::new(2).unwrap()).is_err());
}

#[test]
fn aut_examples() {
    let dh = hall(2);
    assert_eq!(dh.daut_count(&cls(&dh, "S1")).unwrap(), 1);
    assert_eq!(dh.daut_count(&cls(&dh, "S1+S1[1]")).unwrap(), 1);
    assert_eq!(dh.daut_count(&DerivedClass::zero()).unwrap(), 1);
    let dh3 = hall(3);
    assert_eq!(dh3.daut_count(&cls(&dh3, "S1+S1[1]")).unwrap(), 4);
}

#[test]
fn aut_formula_matches_brute_force() {
    for p in [2, 3] {
        let dh = hall(p);
        let t = TruncationProfile::new(-1, 1, 3).unwrap();
        for x in t.classes(dh.catalog()) {
            if dh.dhom_dim(&x, &x, 0) <= 6 {
                assert_eq!(dh.daut_count(&x).unwrap(), dh.daut_count_brute(&x).unwrap(), "{}", x.name(dh.catalog()));
            }
        }
    }
}

#[test]
fn structural_hom_dims_match_complexes() {
    let dh = hall(2);
    let t = TruncationProfile::new(-1, 1, 2).unwrap();
    let cs = t.classes(dh.catalog());
    for x in &cs {
        for y in &cs {
            for s in -2..=2 {
                assert_eq!(dh.dhom(x, y, s).dim(), dh.dhom_dim(x, y, s));
            }
        }
    }
}

/// Brute-force brace product: scan |Hom(L[i], N)| over a generous range of i.
fn braces_by_scan(dh: &DerivedHall, l: &DerivedClass, n: &DerivedClass) -> BigRational {
    let q = rat(dh.field().q() as i64);
    let mut out = rat(1);
    for i in 1..=8 {
        let d = dh.dhom(&l.shift(i), n, 0).dim();
        let factor = num_traits::pow(q.clone(), d);
        out = if i % 2 == 0 { out * factor } else { out / factor };
    }
    out
}

#[test]
fn braces_examples() {
    let dh = hall(2);
    assert_eq!(dh.braces(&cls(&dh, "S1"), &cls(&dh, "S2")), rat(1));
    assert_eq!(dh.braces(&DerivedClass::zero(), &cls(&dh, "P1")), rat(1));
    let l = cls(&dh, "S1+S1[2]");
    let s1 = cls(&dh, "S1");
    assert_eq!(dh.braces(&l, &s1), braces_by_scan(&dh, &l, &s1));
    assert_eq!(dh.braces(&s1, &l), rat(2));
    let t = TruncationProfile::new(-1, 1, 2).unwrap();
    let cs = t.classes(dh.catalog());
    for x in &cs {
        for y in &cs {
            assert_eq!(dh.braces(x, y), braces_by_scan(&dh, x, y));
        }
    }
}

#[test]
fn hall_number_examples() {
    let dh = hall(2);
    let n = |m: &str, k: &str, l: &str| dh.dhall_number(&cls(&dh, m), &cls(&dh, k), &cls(&dh, l)).unwrap();
    assert_eq!(n("S1", "S2", "S1+S2"), rat(1));
    assert_eq!(n("S2", "S1", "P1"), rat(1));
    assert_eq!(n("S1", "S1", "2*S1"), rat(3));
    assert_eq!(n("S1", "S2", "P1"), rat(0));
    assert_eq!(n("S1", "S1[1]", "0"), rat(1));
    // Only the split triangle exists, but Hom(S1, S2[1]) contributes a factor q.
    assert_eq!(n("S1", "S2[1]", "S1+S2[1]"), rat(2));
    assert_eq!(hall(3).dhall_number(&cls(&dh, "S1"), &cls(&dh, "S2[1]"), &cls(&dh, "S1+S2[1]")).unwrap(), rat(3));
}

#[test]
fn both_counting_directions_agree() {
    for p in [2, 3] {
        let dh = hall(p);
        let t = TruncationProfile::new(-1, 1, 2).unwrap();
        let mut cs = vec![DerivedClass::zero()];
        cs.extend(t.classes(dh.catalog()));
        for m in &cs {
            for n in &cs {
                for l in dh.product_support(m, n) {
                    assert_eq!(
                        dh.dhall_number(m, n, &l).unwrap(),
                        dh.dhall_number_dual(m, n, &l).unwrap(),
                        "{} {} {}",
                        m.name(dh.catalog()),
                        n.name(dh.catalog()),
                        l.name(dh.catalog())
                    );
                }
            }
        }
    }
}

#[test]
fn support_bound_and_unit() {
    let dh = hall(2);
    let cat = Arc::clone(dh.catalog());
    let t = TruncationProfile::new(-1, 1, 2).unwrap();
    let cs = t.classes(&cat);
    let unit = DHallElement::unit(dh.coefficient_field());
    for m in &cs {
        let um = DHallElement::basis(dh.coefficient_field(), m.clone());
        assert_eq!(dh.multiply(&unit, &um).unwrap(), um);
        assert_eq!(dh.multiply(&um, &unit).unwrap(), um);
        for n in &cs {
            for l in dh.basis_product(m, n).unwrap().terms().keys() {
                assert!(l.total_dim(&cat) <= m.total_dim(&cat) + n.total_dim(&cat));
            }
            // Every nonzero number found by enumerating maps M -> L lies in the predicted support.
            let support = dh.product_support(m, n);
            for l in &cs {
                if !dh.dhall_number(m, n, l).unwrap().is_zero() {
                    assert!(support.contains(l));
                }
            }
        }
    }
}

#[test]
fn pointwise_product_examples() {
    let dh = hall(2);
    let fld = dh.coefficient_field();
    let u = |s: &str| DHallElement::basis(fld, cls(&dh, s));
    assert_eq!(dh.dhall_product_at(&u("S2"), &u("S1"), &cls(&dh, "P1")).unwrap(), rat(1));
    let prod = dh.multiply(&u("S1"), &u("S2[1]")).unwrap();
    assert_eq!(prod.terms().len(), 1);
    assert!(prod.terms().contains_key(&cls(&dh, "S1+S2[1]")));
}

#[test]
fn reduction_and_small_associativity() {
    let dh = hall(2);
    let cat = Arc::clone(dh.catalog());
    let counter = crate::hall::counting::SplitCounter::new(Arc::clone(&cat), dh.field());
    assert!(verify::abelian_reduction_check(&dh, &counter, 2).unwrap().passed());
    let t = TruncationProfile::new(-1, 1, 2).unwrap();
    let triples = verify::associativity_triples(&cat, &t);
    let r = verify::verify_dassociativity(&dh, &triples, "[-1,1]", 2).unwrap();
    assert!(r.passed(), "{:?}", r.failures);
    let mixed = [[cls(&dh, "S1"), cls(&dh, "S2[1]"), cls(&dh, "P1")]];
    assert!(verify::verify_dassociativity(&dh, &mixed, "[0,1]", 4).unwrap().passed());
}
