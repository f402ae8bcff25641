use hallwc::a2::{classify, cross_validate, enumerate_table, witness_grid, TableEntry};
use hallwc::abelian::verify::{lemma_suite, verify_pentagon, verify_reciprocity, verify_wall_crossing};
use hallwc::derived::stability::joyce::verify_left_part;
use hallwc::derived::stability::reineke::verify_reineke_inversion_derived;
use hallwc::derived::stability::verify::{
    check_lemma_suite_derived, verify_hn_fine, verify_lemma_wc, verify_wall_crossing_derived, SemistableAtlas,
};
use hallwc::error::{Error, Result};
use hallwc::hall::verify::{verify_associativity, Sampling};
use hallwc::hall::{CoefficientField, HallAlgebra, HallElement};
use hallwc::{Charge, DHallElement, DerivedClass, DerivedHall, DimVector, PrimeField, Report, Status};
use serde_json::{json, Value};

use crate::config::{parse_ints, RunConfig};
use crate::{Command, Format, Identity};

pub struct Output {
    pub stdout: String,
    pub summary: String,
    pub code: u8,
}

impl Output {
    fn value(v: String) -> Self {
        Output { stdout: v + "\n", summary: String::new(), code: 0 }
    }
}

/// 2 for usage and configuration problems, 3 for cap exhaustion, 1 otherwise.
pub fn error_code(e: &Error) -> u8 {
    match e {
        Error::NotPrime(_)
        | Error::PrimeNotAllowed(_)
        | Error::UnsupportedQuiver(_)
        | Error::InvalidSpec(_)
        | Error::InvalidStability(_)
        | Error::UnsupportedHeart(_)
        | Error::Parse(_)
        | Error::DimensionMismatch(_)
        | Error::ZeroCharge(_)
        | Error::ImpossibleConfiguration(_)
        | Error::WindowExceeded { .. } => 2,
        Error::CapExceeded(_) | Error::CatalogInsufficient { .. } => 3,
        _ => 1,
    }
}

fn report_output(cfg: &RunConfig, r: &Report) -> Output {
    let stdout = match cfg.format {
        Format::Json => r.to_json().to_string() + "\n",
        Format::Tsv => {
            let mut s = String::from("class\tlhs\trhs\n");
            for f in &r.failures {
                s += &format!("{}\t{}\t{}\n", f.class, f.lhs, f.rhs);
            }
            s
        }
    };
    let summary = format!(
        "{}: {:?} ({} checked, {} failures, {} residual tuples) on {}",
        r.identity,
        r.status,
        r.checked,
        r.failures.len(),
        r.residual_tuples.len(),
        r.window
    );
    Output { stdout, summary, code: r.exit_code() as u8 }
}

fn element_output(cfg: &RunConfig, json: Value, terms: Vec<(String, String)>) -> Output {
    match cfg.format {
        Format::Json => Output::value(json.to_string()),
        Format::Tsv => Output {
            stdout: terms.iter().map(|(c, v)| format!("{c}\t{v}\n")).collect(),
            summary: String::new(),
            code: 0,
        },
    }
}

pub fn run(cfg: &RunConfig, cmd: &Command) -> Result<Output> {
    let cat = &cfg.catalog;
    let prime = CoefficientField::Prime(cfg.field);
    match cmd {
        Command::Indec => match cfg.format {
            Format::Json => Ok(Output::value(cat.to_json().to_string())),
            Format::Tsv => {
                let mut s = String::from("id\tname\tdim\n");
                for (i, e) in cat.entries().iter().enumerate() {
                    s += &format!("{i}\t{}\t{}\n", e.name, e.dim);
                }
                Ok(Output { stdout: s, summary: String::new(), code: 0 })
            }
        },
        Command::Hallnum { parts, target } => {
            let h = HallAlgebra::new(cat.clone(), prime);
            let parts = parts.iter().map(|p| cat.parse_class(p)).collect::<Result<Vec<_>>>()?;
            Ok(Output::value(h.count_filtrations(&parts, &cat.parse_class(target)?)?.to_string()))
        }
        Command::Dhallnum { parts, target } => {
            let [m, n] = parts.as_slice() else {
                return Err(Error::Parse("dhallnum takes exactly two parts".into()));
            };
            let dh = DerivedHall::new(cat.clone(), cfg.field)?;
            let p = |s: &str| DerivedClass::parse(cat, s);
            Ok(Output::value(dh.dhall_number(&p(m)?, &p(n)?, &p(target)?)?.to_string()))
        }
        Command::Product { lhs, rhs, derived: false } => {
            let h = HallAlgebra::new(cat.clone(), prime);
            let (a, b) = (cat.parse_class(lhs)?, cat.parse_class(rhs)?);
            let f: HallElement = h.basis_product(&a, &b)?;
            let terms = f.terms().iter().map(|(k, v)| (cat.class_name(k), v.to_string())).collect();
            Ok(element_output(cfg, f.to_json(), terms))
        }
        Command::Product { lhs, rhs, derived: true } => {
            let dh = DerivedHall::new(cat.clone(), cfg.field)?;
            let f: DHallElement = dh.basis_product(&DerivedClass::parse(cat, lhs)?, &DerivedClass::parse(cat, rhs)?)?;
            let terms = f.terms().iter().map(|(k, v)| (k.name(cat), v.to_string())).collect();
            Ok(element_output(cfg, f.to_json(cat), terms))
        }
        Command::Hn { object, derived: false } => {
            let stab = cfg.abelian()?;
            let hn = stab.hn_filtration(&cat.parse_class(object)?)?;
            let rows: Vec<(String, String)> =
                hn.factors.iter().map(|(c, p)| (cat.class_name(c), p.to_string())).collect();
            Ok(factors_output(cfg, rows))
        }
        Command::Hn { object, derived: true } => {
            let sigma = cfg.sigma()?;
            let hn = sigma.hn_filtration(&DerivedClass::parse(cat, object)?)?;
            let rows: Vec<(String, String)> = hn.factors.iter().map(|(c, p)| (c.name(cat), p.to_string())).collect();
            Ok(factors_output(cfg, rows))
        }
        Command::Verify { identity, gamma, m, direction } => {
            let r = verify(cfg, *identity, gamma, *m, direction)?;
            Ok(report_output(cfg, &r))
        }
        Command::ClassifyA2 => {
            if cfg.spec.is_none() {
                return Err(Error::InvalidSpec("classify-a2 needs --spec".into()));
            }
            let row = classify(&cfg.sigma()?)?;
            let stdout = match cfg.format {
                Format::Json => serde_json::to_string(&row).expect("rows serialize") + "\n",
                Format::Tsv => format!("{}\t{}\t{}\t{}\t{}\n", row.row, row.heart, row.phases, row.formula_label(), row.n),
            };
            Ok(Output { stdout, summary: row.to_string(), code: 0 })
        }
        Command::TableA2 => table(cfg),
    }
}

fn factors_output(cfg: &RunConfig, rows: Vec<(String, String)>) -> Output {
    match cfg.format {
        Format::Json => Output::value(
            json!(rows.iter().map(|(c, p)| json!({"factor": c, "phase": p})).collect::<Vec<_>>()).to_string(),
        ),
        Format::Tsv => Output {
            stdout: rows.iter().map(|(c, p)| format!("{c}\t{p}\n")).collect(),
            summary: String::new(),
            code: 0,
        },
    }
}

fn verify(cfg: &RunConfig, identity: Identity, gamma: &str, m: i32, direction: &str) -> Result<Report> {
    let cat = &cfg.catalog;
    let cap = cfg.dim_cap;
    let profile = &cfg.profile;
    let h = || HallAlgebra::new(cat.clone(), CoefficientField::Prime(cfg.field));
    let dh = || DerivedHall::new(cat.clone(), cfg.field);
    let gamma = || -> Result<DimVector> {
        let v = DimVector(parse_ints(gamma)?);
        cat.quiver().check_dim(&v)?;
        Ok(v)
    };
    match identity {
        Identity::Reciprocity => {
            let (stab, h) = (cfg.abelian()?, h());
            let mut r = Report::new("reciprocity", format!("{} total dim <= {cap}", cfg.preset()), cap);
            for d in dims_up_to(cat.rank(), cap) {
                r.absorb(verify_reciprocity(&stab, &h, &d)?);
            }
            Ok(r)
        }
        Identity::WallCrossingAbelian => verify_wall_crossing(&cfg.abelian()?, &h(), cap),
        Identity::Pentagon => verify_pentagon(&h(), cap),
        Identity::Associativity => verify_associativity(&h(), cap, Sampling::for_cap(cfg.preset(), cap, cfg.seed)),
        Identity::LemmaWc => verify_lemma_wc(&cfg.sigma()?, &dh()?, profile),
        Identity::HnFine => {
            let sigma = cfg.sigma()?;
            let (dh, atlas) = (dh()?, SemistableAtlas::build(&sigma, profile)?);
            verify_hn_fine(&sigma, &dh, &atlas, &gamma()?, m, profile)
        }
        Identity::ReinekeDerived => verify_reineke_inversion_derived(&cfg.sigma()?, &dh()?, &gamma()?, m, profile),
        Identity::WallCrossingDerived => {
            let sigma = cfg.sigma()?;
            let (dh, atlas) = (dh()?, SemistableAtlas::build(&sigma, profile)?);
            verify_wall_crossing_derived(&sigma, &dh, &atlas, profile)
        }
        Identity::LeftPart => {
            let sigma = cfg.sigma()?;
            let d = parse_ints(direction)?;
            let [re, im] = d.as_slice() else {
                return Err(Error::Parse(format!("direction {direction:?} is not RE,IM")));
            };
            let alg = dh()?;
            let f2 = DerivedHall::new(cat.clone(), PrimeField::new(2)?)?;
            let f3 = DerivedHall::new(cat.clone(), PrimeField::new(3)?)?;
            verify_left_part(&sigma, &alg, &[&f2, &f3], &Charge::from_ints(*re, *im), profile)
        }
        Identity::LemmaSuite => {
            let mut r = check_lemma_suite_derived(&cfg.sigma()?, &dh()?, profile)?;
            if cfg.spec.as_ref().is_none_or(|v| v.get("heart").is_some_and(|h| h == "standard")) {
                r.absorb(lemma_suite(&cfg.abelian()?, cap)?);
            }
            Ok(r)
        }
    }
}

/// Nonzero dimension vectors of the given rank with total at most `cap`.
fn dims_up_to(rank: usize, cap: usize) -> Vec<DimVector> {
    let mut out = vec![vec![]];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                let used: i64 = v.iter().sum();
                (0..=cap as i64 - used).map(move |k| {
                    let mut w = v.clone();
                    w.push(k);
                    w
                })
            })
            .collect();
    }
    out.into_iter().filter(|v| v.iter().any(|&k| k > 0)).map(DimVector).collect()
}

fn table(cfg: &RunConfig) -> Result<Output> {
    let cat = &cfg.catalog;
    let entries = enumerate_table(witness_grid(cat)?)?;
    let dh = DerivedHall::new(cat.clone(), cfg.field)?;
    let mut code = 0u8;
    let mut summary = Vec::new();
    let mut rows: Vec<(TableEntry, Report)> = Vec::new();
    for e in entries {
        let r = cross_validate(&e.row, &e.witness, &dh, &cfg.profile)?;
        code = code.max(match r.status {
            Status::Pass => 0,
            Status::Residual => 3,
            Status::Fail => 1,
        });
        summary.push(format!("row {}: {:?}", e.row.row, r.status));
        rows.push((e, r));
    }
    // A failure outranks residuals.
    if rows.iter().any(|(_, r)| r.status == Status::Fail) {
        code = 1;
    }
    let stdout = match cfg.format {
        Format::Tsv => {
            let mut s = format!("{}\tstatus\n", TableEntry::tsv_header());
            for (e, r) in &rows {
                s += &format!("{}\t{:?}\n", e.to_tsv(), r.status);
            }
            s
        }
        Format::Json => {
            let v: Vec<Value> = rows
                .iter()
                .map(|(e, r)| {
                    let mut j = e.to_json();
                    j["report"] = r.to_json();
                    j
                })
                .collect();
            Value::Array(v).to_string() + "\n"
        }
    };
    Ok(Output { stdout, summary: summary.join("\n"), code })
}
