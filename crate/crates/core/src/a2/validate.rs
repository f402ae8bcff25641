//! Checking table rows against the generic engine, and realizing every row.

use serde_json::{json, Value};
use std::collections::BTreeSet;
use std::sync::Arc;

use super::{classify, heart_label, phases_label, shifted_name, skeleton_names, silting_label, wall_crossing_skeleton, TableRow, P1, ROWS, S1, S2};
use crate::catalog::{IndecId, IndecompCatalog};
use crate::derived::class::{DerivedClass, TruncationProfile};
use crate::derived::stability::verify::{verify_wall_crossing_derived, window_label, SemistableAtlas};
use crate::derived::stability::StabilityCondition;
use crate::derived::DerivedHall;
use crate::error::{Error, Result};
use crate::phase::Charge;
use crate::report::Report;

/// Compare a row with what the engine computes for `sigma`: semistable
/// objects, the phase inequality, heart membership after normalization, the
/// occupied-phase pattern of the skeleton, and the wall-crossing identity.
/// Any disagreement is a `Mismatch` listing every differing item.
pub fn cross_validate(row: &TableRow, sigma: &StabilityCondition, dh: &DerivedHall, profile: &TruncationProfile) -> Result<Report> {
    let mut diffs: Vec<String> = Vec::new();
    if !(1..=12).contains(&row.row) {
        return Err(Error::Mismatch(format!("row {} out of range", row.row)));
    }
    let shape = &ROWS[row.row - 1];
    if row.case != shape.case || row.formula != shape.case {
        diffs.push(format!("row {} is case {} with formula {}", row.row, shape.case, shape.case));
    }
    if shape.n_zero && row.n != 0 {
        diffs.push(format!("row {} has n = 0", row.row));
    }
    if row.heart != heart_label(shape, Some(row.n)) {
        diffs.push(format!("row {} has heart {}", row.row, heart_label(shape, Some(row.n))));
    }
    if row.phases != phases_label(shape, row.n) {
        diffs.push(format!("row {} has condition {}", row.row, phases_label(shape, row.n)));
    }

    // Semistable objects, closed under shift.
    let claimed: BTreeSet<&str> = row.semistable.iter().map(String::as_str).collect();
    for id in [S1, S2, P1] {
        for s in -2..=2 {
            let ss = sigma.is_semistable(&DerivedClass::single(id, s))?;
            if ss != claimed.contains(super::name(id)) {
                diffs.push(format!("{} semistable: engine {ss}", shifted_name(id, s)));
            }
        }
    }

    // The phase inequality, read back from its text.
    match check_phases(sigma, &row.phases) {
        Ok(true) => {}
        Ok(false) => diffs.push(format!("{} fails", row.phases)),
        Err(e) => diffs.push(format!("phase column: {e}")),
    }

    // Heart membership at the recorded normalization.
    match row.heart_objects() {
        Ok(objs) => {
            for (id, s) in objs {
                let hn = sigma.hn_filtration(&DerivedClass::single(id, s))?;
                if hn.phase_max().heart_shift() != row.shift || hn.phase_min().heart_shift() != row.shift {
                    diffs.push(format!("{} not in P({}, {}]", shifted_name(id, s), row.shift, row.shift + 1));
                }
            }
        }
        Err(e) => diffs.push(format!("heart column: {e}")),
    }
    if silting_label(row).ok() != row.silting {
        diffs.push(format!("silting label {:?}", row.silting));
    }

    // Skeleton against occupied phases of semistable indecomposables.
    let (lo, hi) = profile.shift_window;
    let skeleton = wall_crossing_skeleton(row, lo, hi);
    let mut engine: BTreeSet<(IndecId, i32)> = BTreeSet::new();
    for id in [S1, S2, P1] {
        for s in lo..=hi {
            if sigma.is_semistable(&DerivedClass::single(id, s))? {
                engine.insert((id, s));
            }
        }
    }
    let predicted: BTreeSet<(IndecId, i32)> = skeleton.iter().copied().collect();
    if predicted != engine {
        diffs.push(format!("skeleton {:?} against semistables {:?}", skeleton_names(&skeleton), names(&engine)));
    } else {
        let phases: Vec<_> = skeleton
            .iter()
            .map(|&(id, s)| sigma.phase(&DerivedClass::single(id, s)))
            .collect::<Result<_>>()?;
        if phases.windows(2).any(|w| w[0] < w[1]) {
            diffs.push(format!("skeleton {:?} is not in descending phase order", skeleton_names(&skeleton)));
        }
    }
    if !diffs.is_empty() {
        return Err(Error::Mismatch(diffs.join("; ")));
    }

    let mut report = Report::new(format!("cross-validate row {}", row.row), window_label(profile), profile.total_dim_cap);
    report.checked += 1;
    let atlas = SemistableAtlas::build(sigma, profile)?;
    report.absorb(verify_wall_crossing_derived(sigma, dh, &atlas, profile)?);
    Ok(report)
}

fn names(set: &BTreeSet<(IndecId, i32)>) -> Vec<String> {
    set.iter().map(|&(id, s)| shifted_name(id, s)).collect()
}

/// Evaluate `phi(X) <= phi(Y)` or `phi(X) > phi(Y)`.
fn check_phases(sigma: &StabilityCondition, text: &str) -> Result<bool> {
    let bad = || Error::Parse(format!("phase condition {text}"));
    let (lhs, rel, rhs) = if let Some((a, b)) = text.split_once(" <= ") {
        (a, true, b)
    } else if let Some((a, b)) = text.split_once(" > ") {
        (a, false, b)
    } else {
        return Err(bad());
    };
    let obj = |s: &str| -> Result<Option<crate::phase::PhasePoint>> {
        let inner = s.trim().strip_prefix("phi(").and_then(|s| s.strip_suffix(')')).ok_or_else(bad)?;
        let (id, sh) = super::parse_object(inner).ok_or_else(bad)?;
        sigma.phase(&DerivedClass::single(id, sh))
    };
    let (Some(a), Some(b)) = (obj(lhs)?, obj(rhs)?) else {
        return Ok(false);
    };
    Ok(if rel { a <= b } else { a > b })
}

/// A classified witness.
#[derive(Clone, Debug)]
pub struct TableEntry {
    pub row: TableRow,
    pub witness: Arc<StabilityCondition>,
}

impl TableEntry {
    pub fn to_json(&self) -> Value {
        json!({
            "row": self.row.row,
            "semistable": self.row.semistable,
            "heart": self.row.heart_pattern(),
            "phases": self.row.phases_pattern(),
            "formula": self.row.formula_label(),
            "witness": {
                "n": self.row.n,
                "heart": self.row.heart,
                "phases": self.row.phases,
                "silting": self.row.silting,
                "spec": self.witness.to_json(),
            },
        })
    }

    pub fn tsv_header() -> &'static str {
        "row\tsemistable\theart\tphases\tformula\twitness_heart\twitness_n\tsilting\tspec"
    }

    pub fn to_tsv(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.row.row,
            self.row.semistable.join(","),
            self.row.heart_pattern(),
            self.row.phases_pattern(),
            self.row.formula_label(),
            self.row.heart,
            self.row.n,
            self.row.silting.as_deref().unwrap_or("-"),
            self.witness.to_json()
        )
    }
}

/// Charges on a small lattice for the simples of every heart pattern, with
/// the second simple shifted by `kmin ..= kmin + 3`.
pub fn witness_grid(cat: &Arc<IndecompCatalog>) -> Result<Vec<StabilityCondition>> {
    const LATTICE: [(i64, i64); 6] = [(1, 1), (-1, 1), (2, 1), (-2, 1), (0, 1), (-1, 0)];
    let patterns = [("S2", "S1", 0), ("S1", "P1", 1), ("P1", "S2", 1)];
    let mut out = Vec::new();
    for (x, y, kmin) in patterns {
        for k in kmin..=kmin + 3 {
            let gens = vec![
                DerivedClass::parse(cat, x)?,
                DerivedClass::parse(cat, &format!("{y}[{k}]"))?,
            ];
            for za in LATTICE {
                for zb in LATTICE {
                    let z = vec![Charge::from_ints(za.0, za.1), Charge::from_ints(zb.0, zb.1)];
                    out.push(StabilityCondition::tilted_a2(cat.clone(), gens.clone(), z)?);
                }
            }
        }
    }
    Ok(out)
}

/// Classify every witness and keep the first one for each row, in table
/// order. A row no witness reaches is `RowUnrealized`.
pub fn enumerate_table(grid: Vec<StabilityCondition>) -> Result<Vec<TableEntry>> {
    let mut found: Vec<Option<TableEntry>> = vec![None; 12];
    for sigma in grid {
        let row = classify(&sigma)?;
        let slot = &mut found[row.row - 1];
        if slot.is_none() {
            *slot = Some(TableEntry { row, witness: Arc::new(sigma) });
        }
    }
    found
        .into_iter()
        .enumerate()
        .map(|(i, e)| e.ok_or(Error::RowUnrealized(i + 1)))
        .collect()
}
