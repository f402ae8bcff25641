//! Checks on the derived Hall algebra itself.

use crate::catalog::{IndecompCatalog, ModuleClass};
use crate::derived::{DHallElement, DerivedClass, DerivedHall, TruncationProfile};
use crate::error::Result;
use crate::hall::counting::SplitCounter;
use crate::report::Report;

pub fn compare_delements(report: &mut Report, cat: &IndecompCatalog, lhs: &DHallElement, rhs: &DHallElement) {
    let mut keys: Vec<&DerivedClass> = lhs.support().chain(rhs.support()).collect();
    keys.sort();
    keys.dedup();
    for k in keys {
        report.check(k.name(cat), lhs.get(k), rhs.get(k));
    }
}

/// Ordered triples of classes in the window (zero included) whose total
/// dimensions add up to at most the cap.
pub fn associativity_triples(cat: &IndecompCatalog, profile: &TruncationProfile) -> Vec<[DerivedClass; 3]> {
    let mut classes = vec![DerivedClass::zero()];
    classes.extend(profile.classes(cat));
    let cap = profile.total_dim_cap;
    let mut out = Vec::new();
    for a in &classes {
        let da = a.total_dim(cat);
        for b in &classes {
            let db = b.total_dim(cat);
            if da + db > cap {
                continue;
            }
            for c in &classes {
                if da + db + c.total_dim(cat) <= cap {
                    out.push([a.clone(), b.clone(), c.clone()]);
                }
            }
        }
    }
    out
}

/// `(u_A * u_B) * u_C = u_A * (u_B * u_C)` coefficientwise, exactly.
pub fn verify_dassociativity(dh: &DerivedHall, triples: &[[DerivedClass; 3]], window: &str, cap: usize) -> Result<Report> {
    let cat = dh.catalog();
    let field = dh.coefficient_field();
    let mut report = Report::new("derived-associativity", window, cap);
    for [a, b, c] in triples {
        let (ua, ub, uc) = (
            DHallElement::basis(field, a.clone()),
            DHallElement::basis(field, b.clone()),
            DHallElement::basis(field, c.clone()),
        );
        let left = dh.multiply(&dh.multiply(&ua, &ub)?, &uc)?;
        let right = dh.multiply(&ua, &dh.multiply(&ub, &uc)?)?;
        let mut sub = Report::new("", "", cap);
        compare_delements(&mut sub, cat, &left, &right);
        for f in &mut sub.failures {
            f.class = format!("({},{},{}) at {}", a.name(cat), b.name(cat), c.name(cat), f.class);
        }
        report.absorb(sub);
    }
    Ok(report)
}

/// For modules the derived number must equal the classical filtration count.
pub fn abelian_reduction_check(dh: &DerivedHall, counter: &SplitCounter, total_cap: usize) -> Result<Report> {
    let cat = dh.catalog();
    let mut report = Report::new("abelian-reduction", "[0,0]", total_cap);
    let mut classes = vec![ModuleClass::zero()];
    classes.extend(cat.classes_up_to(total_cap));
    for l in &classes {
        for (m, n) in all_sub_quotient_pairs(cat, l, &classes) {
            let derived = dh.dhall_number(&DerivedClass::module(&m), &DerivedClass::module(&n), &DerivedClass::module(l))?;
            let classical = counter.hall_count(&m, &n, l)?;
            report.check(
                format!("({},{};{})", cat.class_name(&m), cat.class_name(&n), cat.class_name(l)),
                derived,
                classical,
            );
        }
    }
    Ok(report)
}

fn all_sub_quotient_pairs(cat: &IndecompCatalog, l: &ModuleClass, classes: &[ModuleClass]) -> Vec<(ModuleClass, ModuleClass)> {
    let dl = cat.dim_of(l);
    let mut out = Vec::new();
    for m in classes {
        let dm = cat.dim_of(m);
        if !dm.le(&dl) {
            continue;
        }
        let dn = &dl - &dm;
        for n in cat.classes_of_dim(&dn) {
            out.push((m.clone(), n));
        }
    }
    out
}
