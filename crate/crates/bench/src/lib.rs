//! Fixtures shared by the benchmarks.

use std::sync::Arc;

use hallwc::hall::{CoefficientField, HallAlgebra};
use hallwc::{Charge, DerivedClass, DerivedHall, IndecompCatalog, PrimeField, QuiverPreset, StabilityCondition};

pub fn catalog(preset: QuiverPreset) -> Arc<IndecompCatalog> {
    Arc::new(IndecompCatalog::build(preset, 6).expect("preset catalogs build"))
}

pub fn hall(preset: QuiverPreset, p: u32) -> HallAlgebra {
    let f = PrimeField::new(p).expect("allowed prime");
    HallAlgebra::new(catalog(preset), CoefficientField::Prime(f))
}

pub fn derived_hall(p: u32) -> DerivedHall {
    DerivedHall::new(catalog(QuiverPreset::A2), PrimeField::new(p).expect("allowed prime")).expect("A2 builds")
}

/// A tilted heart on A2 with generators `x` and `y` and the given charges.
pub fn tilted(cat: &Arc<IndecompCatalog>, x: &str, zx: (i64, i64), y: &str, zy: (i64, i64)) -> StabilityCondition {
    let gens = vec![DerivedClass::parse(cat, x).unwrap(), DerivedClass::parse(cat, y).unwrap()];
    StabilityCondition::tilted_a2(cat.clone(), gens, vec![Charge::from_ints(zx.0, zx.1), Charge::from_ints(zy.0, zy.1)])
        .expect("valid tilt")
}
