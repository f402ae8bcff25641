//! End-to-end acceptance run. Prints one line per criterion and exits
//! nonzero if any criterion fails or overruns its time budget.

use num_rational::BigRational;
use std::sync::Arc;
use std::time::{Duration, Instant};

use hallwc::a2::{cross_validate, enumerate_table, witness_grid, TableRow};
use hallwc::abelian::verify::{compare_series, lemma_suite, verify_pentagon, verify_reciprocity, verify_wall_crossing};
use hallwc::abelian::{AbelianStability, StabilityFunction};
use hallwc::derived::stability::joyce::{naive_decomposable_support, verify_joyce_primitive, verify_left_part};
use hallwc::derived::stability::pointwise::SliceAlgebra;
use hallwc::derived::stability::reineke::verify_reineke_inversion_derived;
use hallwc::derived::stability::verify::{
    check_lemma_suite_derived, verify_hn_fine, verify_lemma_wc, verify_wall_crossing_derived, SemistableAtlas,
};
use hallwc::derived::verify::{associativity_triples, verify_dassociativity};
use hallwc::hall::verify::{verify_associativity, Sampling};
use hallwc::hall::{CoefficientField, HallAlgebra};
use hallwc::*;

type Check = std::result::Result<String, String>;

fn catalog(preset: QuiverPreset) -> Arc<IndecompCatalog> {
    Arc::new(IndecompCatalog::build(preset, 6).unwrap())
}

fn field(p: u32) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn prime_hall(cat: &Arc<IndecompCatalog>, p: u32) -> HallAlgebra {
    HallAlgebra::new(cat.clone(), CoefficientField::Prime(field(p)))
}

fn window() -> TruncationProfile {
    TruncationProfile::new(-1, 1, 4).unwrap()
}

/// Fold a batch of reports into one verdict.
fn verdict(reports: &[Report]) -> Check {
    let checked: usize = reports.iter().map(|r| r.checked).sum();
    let bad: Vec<String> = reports
        .iter()
        .filter(|r| !r.passed() || !r.residual_tuples.is_empty())
        .map(|r| {
            format!(
                "{} on {}: {:?}, {} failures, {} residuals{}",
                r.identity,
                r.window,
                r.status,
                r.failures.len(),
                r.residual_tuples.len(),
                r.failures.first().map(|f| format!(" (first {}: {} vs {})", f.class, f.lhs, f.rhs)).unwrap_or_default()
            )
        })
        .collect();
    if bad.is_empty() {
        Ok(format!("{} reports, {checked} checks", reports.len()))
    } else {
        let more = if bad.len() > 4 { format!("; and {} more", bad.len() - 4) } else { String::new() };
        Err(format!("{} of {} reports failing; {}{more}", bad.len(), reports.len(), bad[..bad.len().min(4)].join("; ")))
    }
}

/// Charges for (S1, S2) with phi(S2) above, equal to and below phi(S1).
const CHARGE_GRID: [[(i64, i64); 2]; 5] = [
    [(1, 1), (-1, 1)],
    [(2, 1), (-1, 2)],
    [(0, 1), (0, 1)],
    [(1, 1), (1, 1)],
    [(-1, 1), (1, 1)],
];

fn abelian(cat: &Arc<IndecompCatalog>, z: [(i64, i64); 2], p: u32) -> AbelianStability {
    let z = StabilityFunction::new(z.iter().map(|&(a, b)| Charge::from_ints(a, b)).collect(), cat).unwrap();
    AbelianStability::new(cat.clone(), z, field(p))
}

/// Nonzero dimension vectors of A2 with total at most `cap`.
fn a2_dims(cap: i64) -> Vec<DimVector> {
    let mut out = Vec::new();
    for a in 0..=cap {
        for b in 0..=cap - a {
            if a + b > 0 {
                out.push(DimVector(vec![a, b]));
            }
        }
    }
    out
}

/// Tilted-heart witnesses for the four semistable configurations of A2.
fn witnesses(cat: &Arc<IndecompCatalog>) -> Vec<(&'static str, StabilityCondition)> {
    let tilt = |g: [(&str, (i64, i64)); 2]| {
        StabilityCondition::tilted_a2(
            cat.clone(),
            g.iter().map(|(n, _)| DerivedClass::parse(cat, n).unwrap()).collect(),
            g.iter().map(|(_, z)| Charge::from_ints(z.0, z.1)).collect(),
        )
        .unwrap()
    };
    vec![
        ("S1,S2", tilt([("S2", (-1, 1)), ("S1", (1, 1))])),
        ("S1,P1", tilt([("S1", (-1, 1)), ("P1[1]", (1, 1))])),
        ("S2,P1", tilt([("P1", (1, 1)), ("S2[2]", (-1, 1))])),
        ("S1,S2,P1", tilt([("S2", (1, 1)), ("S1", (-1, 1))])),
    ]
}

fn gamma_grid() -> Vec<DimVector> {
    [[1, 0], [0, 1], [1, 1], [2, 1], [2, 2]].iter().map(|g| DimVector(g.to_vec())).collect()
}

fn c1_abelian_associativity() -> Check {
    let mut reports = Vec::new();
    for p in [2, 3] {
        let h = prime_hall(&catalog(QuiverPreset::A2), p);
        reports.push(verify_associativity(&h, 5, Sampling::Exhaustive).map_err(|e| e.to_string())?);
        let h = prime_hall(&catalog(QuiverPreset::A3), p);
        reports.push(verify_associativity(&h, 4, Sampling::Exhaustive).map_err(|e| e.to_string())?);
    }
    verdict(&reports)
}

fn c2_pentagon() -> Check {
    let cat = catalog(QuiverPreset::A2);
    let mut reports = Vec::new();
    for f in [CoefficientField::Prime(field(2)), CoefficientField::Prime(field(3)), CoefficientField::Euler] {
        reports.push(verify_pentagon(&HallAlgebra::new(cat.clone(), f), 6).map_err(|e| e.to_string())?);
    }
    verdict(&reports)
}

fn c3_reciprocity() -> Check {
    let cat = catalog(QuiverPreset::A2);
    let mut reports = Vec::new();
    for p in [2, 3] {
        let h = prime_hall(&cat, p);
        for z in CHARGE_GRID {
            let stab = abelian(&cat, z, p);
            for g in a2_dims(6) {
                reports.push(verify_reciprocity(&stab, &h, &g).map_err(|e| e.to_string())?);
            }
        }
    }
    verdict(&reports)
}

fn c4_abelian_wall_crossing() -> Check {
    let cat = catalog(QuiverPreset::A2);
    let h = prime_hall(&cat, 2);
    let mut reports = Vec::new();
    let mut products = Vec::new();
    for z in CHARGE_GRID {
        let stab = abelian(&cat, z, 2);
        reports.push(verify_wall_crossing(&stab, &h, 6).map_err(|e| e.to_string())?);
        products.push(stab.wall_crossing_product(&h, 6).map_err(|e| e.to_string())?);
    }
    let mut inv = Report::new("invariance across charges", "a2 total dim <= 6", 6);
    for p in &products[1..] {
        compare_series(&mut inv, &products[0], p).map_err(|e| e.to_string())?;
    }
    reports.push(inv);
    verdict(&reports)
}

fn c5_derived_associativity() -> Check {
    let cat = catalog(QuiverPreset::A2);
    let dh = DerivedHall::new(cat.clone(), field(2)).map_err(|e| e.to_string())?;
    let prof = TruncationProfile::new(-1, 1, 3).unwrap();
    let triples = associativity_triples(&cat, &prof);
    verdict(&[verify_dassociativity(&dh, &triples, "[-1,1]", 3).map_err(|e| e.to_string())?])
}

fn c6_reduction_to_modules() -> Check {
    let cat = catalog(QuiverPreset::A2);
    let mut reports = Vec::new();
    for p in [2, 3] {
        let h = prime_hall(&cat, p);
        let dh = DerivedHall::new(cat.clone(), field(p)).map_err(|e| e.to_string())?;
        let mut r = Report::new(format!("dhall = hall over F{p}"), "a2 modules, total dim <= 4", 4);
        for l in cat.classes_up_to(4) {
            let dl = cat.dim_of(&l);
            for d in dl.lattice_below() {
                if d.is_zero() || d == dl {
                    continue;
                }
                let rest = DimVector(dl.0.iter().zip(&d.0).map(|(a, b)| a - b).collect());
                for m in cat.classes_of_dim(&d) {
                    for n in cat.classes_of_dim(&rest) {
                        let derived = dh
                            .dhall_number(&DerivedClass::module(&m), &DerivedClass::module(&n), &DerivedClass::module(&l))
                            .map_err(|e| e.to_string())?;
                        let abelian = h.count_filtrations(&[m.clone(), n.clone()], &l).map_err(|e| e.to_string())?;
                        let name = format!("{},{} -> {}", cat.class_name(&m), cat.class_name(&n), cat.class_name(&l));
                        r.check(name, derived, abelian);
                    }
                }
            }
        }
        reports.push(r);
    }
    verdict(&reports)
}

fn per_witness<F>(mut f: F) -> Check
where
    F: FnMut(&StabilityCondition, &DerivedHall, &TruncationProfile) -> hallwc::Result<Vec<Report>>,
{
    let cat = catalog(QuiverPreset::A2);
    let dh = DerivedHall::new(cat.clone(), field(2)).map_err(|e| e.to_string())?;
    let mut reports = Vec::new();
    for (name, sigma) in witnesses(&cat) {
        let batch = f(&sigma, &dh, &window()).map_err(|e| format!("{{{name}}}: {e}"))?;
        reports.extend(batch.into_iter().map(|mut r| {
            r.identity = format!("{} {{{name}}}", r.identity);
            r
        }));
    }
    verdict(&reports)
}

fn c7_lemma_wc() -> Check {
    per_witness(|sigma, dh, prof| Ok(vec![verify_lemma_wc(sigma, dh, prof)?]))
}

fn c8_derived_wall_crossing() -> Check {
    per_witness(|sigma, dh, prof| {
        let atlas = SemistableAtlas::build(sigma, prof)?;
        Ok(vec![verify_wall_crossing_derived(sigma, dh, &atlas, prof)?])
    })
}

fn c9_hn_fine_and_reineke() -> Check {
    per_witness(|sigma, dh, prof| {
        let atlas = SemistableAtlas::build(sigma, prof)?;
        let mut out = Vec::new();
        for g in gamma_grid() {
            for m in -1..=1 {
                out.push(verify_hn_fine(sigma, dh, &atlas, &g, m, prof)?);
                out.push(verify_reineke_inversion_derived(sigma, dh, &g, m, prof)?);
            }
        }
        Ok(out)
    })
}

fn c10_joyce() -> Check {
    let cat = catalog(QuiverPreset::A2);
    let prof = window();
    let mut reports = Vec::new();
    for (name, sigma) in witnesses(&cat) {
        let alg = SliceAlgebra::new(&sigma).map_err(|e| e.to_string())?;
        let mut r = verify_joyce_primitive(&sigma, &alg, &gamma_grid(), &prof).map_err(|e| e.to_string())?;
        r.identity = format!("{} {{{name}}}", r.identity);
        reports.push(r);
    }
    // The naive element at S1[-1] + S1[1]: -(F(S1[-1], S1[1]) + F(S1[1], S1[-1]))/2,
    // which is -(q + 1)/2 over F_q and -1 at q = 1.
    let sigma = &witnesses(&cat)[0].1;
    let x = DerivedClass::parse(&cat, "S1[-1]+S1[1]").unwrap();
    let (a, b) = (DerivedClass::parse(&cat, "S1[-1]").unwrap(), DerivedClass::parse(&cat, "S1[1]").unwrap());
    let gamma = DimVector(vec![-2, 0]);
    let mut naive = Report::new("naive epsilon at S1[-1]+S1[1]", "[-1,1]", 4);
    let mut seen = Vec::new();
    for p in [2u32, 3] {
        let dh = DerivedHall::new(cat.clone(), field(p)).map_err(|e| e.to_string())?;
        let oracle = -(dh.dhall_number(&a, &b, &x).map_err(|e| e.to_string())?
            + dh.dhall_number(&b, &a, &x).map_err(|e| e.to_string())?)
            / BigRational::from_integer(2.into());
        naive.check(format!("oracle F{p}"), &oracle, BigRational::new((-(p as i64) - 1).into(), 2.into()));
        let got = naive_decomposable_support(sigma, &dh, &gamma, &prof).map_err(|e| e.to_string())?;
        let c = got.iter().find(|(c, _)| *c == x).map(|(_, c)| c.clone()).unwrap_or_default();
        naive.check(format!("F{p}"), &c, &oracle);
        seen.push(format!("F{p}: {c}"));
    }
    let alg = SliceAlgebra::new(sigma).map_err(|e| e.to_string())?;
    let got = naive_decomposable_support(sigma, &alg, &gamma, &prof).map_err(|e| e.to_string())?;
    let c = got.iter().find(|(c, _)| *c == x).map(|(_, c)| c.clone()).unwrap_or_default();
    naive.check("q = 1", &c, -1);
    seen.push(format!("q=1: {c}"));
    reports.push(naive);
    verdict(&reports).map(|s| format!("{s}; naive coefficients {}", seen.join(", ")))
}

fn c11_left_part() -> Check {
    let cat = catalog(QuiverPreset::A2);
    let (_, sigma) = witnesses(&cat).pop().unwrap();
    let alg = SliceAlgebra::new(&sigma).map_err(|e| e.to_string())?;
    let d2 = DerivedHall::new(cat.clone(), field(2)).map_err(|e| e.to_string())?;
    let d3 = DerivedHall::new(cat.clone(), field(3)).map_err(|e| e.to_string())?;
    let mut reports = Vec::new();
    for ray in ["S1", "S2", "P1"] {
        let direction = sigma.charge(&DerivedClass::parse(&cat, ray).unwrap().k0(&cat));
        reports.push(verify_left_part(&sigma, &alg, &[&d2, &d3], &direction, &window()).map_err(|e| e.to_string())?);
    }
    verdict(&reports)
}

/// Every single-field change of a row.
fn mutants(row: &TableRow) -> Vec<(&'static str, TableRow)> {
    let mut out = Vec::new();
    let mut push = |name, f: &dyn Fn(&mut TableRow)| {
        let mut m = row.clone();
        f(&mut m);
        out.push((name, m));
    };
    push("row", &|r| r.row = r.row % 12 + 1);
    push("case", &|r| r.case = r.case % 4 + 1);
    push("n", &|r| r.n += 1);
    push("semistable", &|r| {
        if r.semistable.len() == 3 {
            r.semistable.pop();
        } else {
            r.semistable = vec!["S1".into(), "S2".into(), "P1".into()];
        }
    });
    push("heart", &|r| r.heart = if r.heart == "A" { "add(S1,S2)".into() } else { "A".into() });
    push("phases", &|r| {
        r.phases = if r.phases.contains("<=") { r.phases.replace("<=", ">") } else { r.phases.replace('>', "<=") }
    });
    push("formula", &|r| r.formula = r.formula % 4 + 1);
    push("shift", &|r| r.shift += 1);
    push("silting", &|r| r.silting = if r.silting.is_some() { None } else { Some("P1 at 0".into()) });
    out
}

fn c12_a2_table() -> Check {
    let cat = catalog(QuiverPreset::A2);
    let entries = enumerate_table(witness_grid(&cat).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let dh = DerivedHall::new(cat.clone(), field(2)).map_err(|e| e.to_string())?;
    let prof = window();
    let mut reports = Vec::new();
    let mut undetected = Vec::new();
    for (k, e) in entries.iter().enumerate() {
        if e.row.row != k + 1 {
            return Err(format!("entry {k} realizes row {}", e.row.row));
        }
        reports.push(cross_validate(&e.row, &e.witness, &dh, &prof).map_err(|err| format!("row {}: {err}", k + 1))?);
        for (field, m) in mutants(&e.row) {
            if !matches!(cross_validate(&m, &e.witness, &dh, &prof), Err(Error::Mismatch(_))) {
                undetected.push(format!("row {} {field}", k + 1));
            }
        }
    }
    if !undetected.is_empty() {
        return Err(format!("mutations not detected: {}", undetected.join(", ")));
    }
    verdict(&reports).map(|s| format!("12 rows realized, {s}, 108 mutations detected"))
}

fn c13_lemma_suites() -> Check {
    let cat = catalog(QuiverPreset::A2);
    let mut reports = Vec::new();
    for z in CHARGE_GRID {
        reports.push(lemma_suite(&abelian(&cat, z, 2), 6).map_err(|e| e.to_string())?);
    }
    match verdict(&reports) {
        Ok(a) => per_witness(|sigma, dh, prof| Ok(vec![check_lemma_suite_derived(sigma, dh, prof)?]))
            .map(|d| format!("abelian {a}; derived {d}")),
        Err(e) => Err(e),
    }
}

fn main() {
    let criteria: [(u32, &str, u64, fn() -> Check); 13] = [
        (1, "abelian Hall associativity", 60, c1_abelian_associativity),
        (2, "pentagon identity", 60, c2_pentagon),
        (3, "abelian reciprocity", 120, c3_reciprocity),
        (4, "abelian wall-crossing and invariance", 120, c4_abelian_wall_crossing),
        (5, "derived Hall associativity", 300, c5_derived_associativity),
        (6, "derived Hall numbers of modules", 60, c6_reduction_to_modules),
        (7, "unit products along HN towers", 300, c7_lemma_wc),
        (8, "derived wall-crossing", 600, c8_derived_wall_crossing),
        (9, "HN refinement and Reineke inversion", 600, c9_hn_fine_and_reineke),
        (10, "Joyce elements", 120, c10_joyce),
        (11, "exp/log identity on rays", 300, c11_left_part),
        (12, "A2 table", 300, c12_a2_table),
        (13, "lemma suites", 300, c13_lemma_suites),
    ];
    let mut failed = Vec::new();
    for (n, title, budget, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let over = took > Duration::from_secs(budget);
        let (tag, detail) = match (&outcome, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("{d}; over the {budget}s budget")),
            (Err(d), _) => ("FAIL", d.clone()),
        };
        println!("criterion {n:>2} {tag} {title} ({:.1}s): {detail}", took.as_secs_f64());
        if tag == "FAIL" {
            failed.push(n);
        }
    }
    if !failed.is_empty() {
        println!("failing criteria: {failed:?}");
        std::process::exit(1);
    }
}
