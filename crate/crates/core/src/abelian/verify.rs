//! Verifiers for the identities of the abelian theory.

use std::collections::BTreeSet;

use super::AbelianStability;
use crate::catalog::{IndecompCatalog, ModuleClass};
use crate::error::{Error, Result};
use crate::hall::{HallAlgebra, HallElement, HallSeries};
use crate::quiver::{DimVector, QuiverPreset};
use crate::report::Report;

/// Pointwise comparison of two elements on the union of their supports.
pub fn compare_elements(report: &mut Report, catalog: &IndecompCatalog, lhs: &HallElement, rhs: &HallElement) {
    let keys: BTreeSet<&ModuleClass> = lhs.support().chain(rhs.support()).collect();
    if keys.is_empty() {
        report.checked += 1;
    }
    for k in keys {
        report.check(catalog.class_name(k), lhs.get(k), rhs.get(k));
    }
}

/// Pointwise comparison of two series on every class of the common window.
pub fn compare_series(report: &mut Report, lhs: &HallSeries, rhs: &HallSeries) -> Result<()> {
    let window = if lhs.cap() <= rhs.cap() { lhs.window() } else { rhs.window() };
    for k in window {
        report.check(lhs.catalog().class_name(&k), lhs.get(&k)?, rhs.get(&k)?);
    }
    Ok(())
}

fn window_label(catalog: &IndecompCatalog, cap: usize) -> String {
    format!("{} total dim <= {cap}", catalog.preset())
}

/// Both reciprocity identities at one dimension vector.
pub fn verify_reciprocity(stab: &AbelianStability, h: &HallAlgebra, gamma: &DimVector) -> Result<Report> {
    let cat = stab.catalog();
    let mut r = Report::new("reciprocity", format!("{} gamma = {gamma}", cat.preset()), gamma.total() as usize);
    if gamma.total() as usize > cat.cap() {
        return Err(Error::CapExceeded(format!("gamma {gamma} above catalog cap {}", cat.cap())));
    }
    compare_elements(&mut r, cat, &stab.kappa(h, gamma), &stab.hn_sum(h, gamma)?);
    compare_elements(&mut r, cat, &stab.delta(h, gamma)?, &stab.reineke_sum(h, gamma)?);
    Ok(r)
}

/// 1_A against the descending product of SS series.
pub fn verify_wall_crossing(stab: &AbelianStability, h: &HallAlgebra, cap: usize) -> Result<Report> {
    let mut r = Report::new("wall-crossing-abelian", window_label(stab.catalog(), cap), cap);
    let product = stab.wall_crossing_product(h, cap)?;
    compare_series(&mut r, &product, &h.all_ones(cap))?;
    for p in stab.occupied_phases(cap)? {
        let ss = stab.ss_series(h, &p, cap)?;
        r.assert(format!("SS at {p}"), ss.is_grouplike()?, "grouplike");
    }
    Ok(r)
}

/// Σ_n u_{M^n} for an indecomposable M.
pub fn phi_series(h: &HallAlgebra, name: &str, cap: usize) -> Result<HallSeries> {
    let id = h
        .catalog()
        .by_name(name)
        .ok_or_else(|| Error::Parse(format!("unknown indecomposable {name}")))?;
    h.characteristic(cap, |c| Ok(c.ids().iter().all(|&i| i == id)))
}

/// Φ_{S2} * Φ_{S1} = Φ_{S1} * Φ_{P1} * Φ_{S2} on A2.
pub fn verify_pentagon(h: &HallAlgebra, cap: usize) -> Result<Report> {
    if h.catalog().preset() != QuiverPreset::A2 {
        return Err(Error::UnsupportedQuiver("the pentagon identity lives on a2".into()));
    }
    let mut r = Report::new("pentagon", window_label(h.catalog(), cap), cap);
    let (s1, s2, p1) = (phi_series(h, "S1", cap)?, phi_series(h, "S2", cap)?, phi_series(h, "P1", cap)?);
    let lhs = h.product_series(&[s2.clone(), s1.clone()], cap)?;
    let rhs = h.product_series(&[s1, p1, s2], cap)?;
    compare_series(&mut r, &lhs, &rhs)?;
    Ok(r)
}

/// ε_γ primitive for every γ in the window and exp(Σ_{φ(γ)=φ} ε_γ) = SS_φ.
pub fn verify_joyce(stab: &AbelianStability, h: &HallAlgebra, cap: usize) -> Result<Report> {
    let cat = stab.catalog();
    let mut r = Report::new("joyce-elements", window_label(cat, cap), cap);
    for p in stab.occupied_phases(cap)? {
        let eps = stab.epsilon_series(h, &p, cap)?;
        r.assert(format!("epsilon at {p}"), eps.is_primitive()?, "primitive");
        compare_series(&mut r, &h.exp_series(&eps)?, &stab.ss_series(h, &p, cap)?)?;
    }
    Ok(r)
}

/// The phase lemmas on short exact sequences, stability of simples,
/// stable implies indecomposable, and vanishing Hom from higher to lower phase.
pub fn lemma_suite(stab: &AbelianStability, cap: usize) -> Result<Report> {
    let cat = stab.catalog();
    let counter = crate::hall::SplitCounter::new(std::sync::Arc::clone(cat), stab.field());
    let mut r = Report::new("lemma-suite-abelian", window_label(cat, cap), cap);
    let classes = cat.classes_up_to(cap);
    for x in &classes {
        let dx = cat.dim_of(x);
        let px = stab.phase(x)?;
        for d in dx.lattice_below() {
            if d.is_zero() || d == dx {
                continue;
            }
            for (l, n) in counter.table(x, &d)?.keys() {
                let (pl, pn) = (stab.phase(l)?, stab.phase(n)?);
                let name = format!("0->{}->{}->{}->0", cat.class_name(l), cat.class_name(x), cat.class_name(n));
                let a = pl <= px;
                let b = px <= pn;
                let c = pl <= pn;
                r.assert(name.clone(), a == b && b == c, "phase in ses (1)");
                let lo = if pl < pn { &pl } else { &pn };
                let hi = if pl < pn { &pn } else { &pl };
                r.assert(name.clone(), *lo <= px && px <= *hi, "phase in ses (2)");
                if pl == px && px == pn {
                    let both = stab.is_semistable(l)? && stab.is_semistable(n)?;
                    r.assert(name, stab.is_semistable(x)? == both, "phase in ses (3)");
                }
            }
        }
        if stab.is_stable(x)? {
            r.assert(cat.class_name(x), x.is_indecomposable(), "stable implies indecomposable");
        }
    }
    for v in 0..cat.rank() {
        let s = cat.by_interval(v, v).expect("simples are in every catalog");
        r.assert(cat.entry(s).name.clone(), stab.is_stable(&ModuleClass::single(s))?, "simple is stable");
    }
    let semis: Vec<&ModuleClass> = classes
        .iter()
        .map(|c| stab.is_semistable(c).map(|b| (c, b)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|(_, b)| *b)
        .map(|(c, _)| c)
        .collect();
    for m in &semis {
        for n in &semis {
            if stab.phase(m)? > stab.phase(n)? {
                let hom = cat
                    .build_rep(m, stab.field())
                    .hom_dim(&cat.build_rep(n, stab.field()))?;
                r.assert(
                    format!("Hom({}, {})", cat.class_name(m), cat.class_name(n)),
                    hom == 0,
                    "hom from higher phase vanishes",
                );
            }
        }
    }
    Ok(r)
}
