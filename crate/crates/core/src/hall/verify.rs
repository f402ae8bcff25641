//! Associativity of the Hall product on basis triples.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{HallAlgebra, HallElement};
use crate::catalog::ModuleClass;
use crate::error::Result;
use crate::quiver::QuiverPreset;
use crate::report::Report;

/// Largest total dimension checked exhaustively by default.
pub fn exhaustive_cap(preset: QuiverPreset) -> usize {
    match preset {
        QuiverPreset::A1 => 6,
        QuiverPreset::A2 => 5,
        QuiverPreset::A3 => 4,
        QuiverPreset::A4 => 3,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sampling {
    Exhaustive,
    /// `count` triples drawn without replacement from a seeded generator.
    Sampled { seed: u64, count: usize },
}

impl Sampling {
    /// Exhaustive up to `exhaustive_cap`, sampled above it.
    pub fn for_cap(preset: QuiverPreset, cap: usize, seed: u64) -> Self {
        if cap <= exhaustive_cap(preset) {
            Sampling::Exhaustive
        } else {
            Sampling::Sampled { seed, count: 2000 }
        }
    }
}

/// Ordered class triples with total dimension at most `cap`.
pub fn class_triples(h: &HallAlgebra, cap: usize) -> Vec<[ModuleClass; 3]> {
    let cat = h.catalog();
    let classes = cat.classes_up_to(cap);
    let dim = |c: &ModuleClass| cat.dim_of(c).total() as usize;
    let mut out = Vec::new();
    for a in &classes {
        for b in &classes {
            if dim(a) + dim(b) > cap {
                continue;
            }
            for c in &classes {
                if dim(a) + dim(b) + dim(c) <= cap {
                    out.push([a.clone(), b.clone(), c.clone()]);
                }
            }
        }
    }
    out
}

/// `(u_A u_B) u_C = u_A (u_B u_C)` exactly, on all or a sample of the triples.
pub fn verify_associativity(h: &HallAlgebra, cap: usize, sampling: Sampling) -> Result<Report> {
    let cat = h.catalog();
    let mut triples = class_triples(h, cap);
    let mode = match sampling {
        Sampling::Exhaustive => "exhaustive".to_string(),
        Sampling::Sampled { seed, count } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            triples.shuffle(&mut rng);
            triples.truncate(count);
            format!("{count} sampled, seed {seed}")
        }
    };
    let mut report = Report::new(
        format!("associativity {}", h.field()),
        format!("{} total dim <= {cap}", cat.preset()),
        cap,
    );
    report.note(mode);
    for [a, b, c] in &triples {
        let basis = |m: &ModuleClass| HallElement::basis(h.field(), m.clone());
        let left = h.multiply(&h.multiply(&basis(a), &basis(b))?, &basis(c))?;
        let right = h.multiply(&basis(a), &h.multiply(&basis(b), &basis(c))?)?;
        let name = format!("({},{},{})", cat.class_name(a), cat.class_name(b), cat.class_name(c));
        report.check(name, left.display(cat), right.display(cat));
    }
    Ok(report)
}
