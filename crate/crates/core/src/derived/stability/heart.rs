//! Hearts of bounded t-structures on the derived category of rep A2.
//!
//! Every such heart is, up to a global shift, `add(x, y[k])` for one of the
//! pairs of simples below. At the smallest allowed `k` the two simples have a
//! nonsplit extension and the heart is equivalent to rep A2 itself; above it
//! the heart is semisimple.

use crate::catalog::{IndecId, IndecompCatalog};
use crate::derived::class::DerivedClass;
use crate::error::{Error, Result};
use crate::quiver::QuiverPreset;

pub(crate) const S1: IndecId = IndecId(0);
pub(crate) const S2: IndecId = IndecId(1);
pub(crate) const P1: IndecId = IndecId(2);

/// A shifted indecomposable `(id, shift)`.
pub type Shifted = (IndecId, i32);

/// `(x, y, k_min, middle)`: heart simples `x` and `y[k]` with `k >= k_min`;
/// at `k = k_min` the extension `0 -> x -> middle -> y[k] -> 0` lives in the heart.
const PATTERNS: [(IndecId, IndecId, i32, Shifted); 3] = [(S2, S1, 0, (P1, 0)), (S1, P1, 1, (S2, 1)), (P1, S2, 1, (S1, 0))];

/// The three triangles `A -> X -> B -> A[1]` with indecomposable outer terms,
/// indexed by their middle term `X` at shift 0.
pub(crate) fn middle_triangle(x: IndecId) -> (Shifted, Shifted) {
    match x {
        IndecId(2) => ((S2, 0), (S1, 0)),
        IndecId(1) => ((S1, -1), (P1, 0)),
        _ => ((P1, 0), (S2, 1)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TiltedHeart {
    /// Index into the pattern table.
    pattern: usize,
    /// Global shift.
    pub shift: i32,
    /// Shift of the second simple relative to the first.
    pub gap: i32,
}

impl TiltedHeart {
    /// Recognize a heart from its simples, or from all three indecomposables
    /// when it is of extension type.
    pub fn recognize(cat: &IndecompCatalog, generators: &[DerivedClass]) -> Result<Self> {
        if cat.preset() != QuiverPreset::A2 {
            return Err(Error::UnsupportedHeart(format!("tilted hearts need A2, not {:?}", cat.preset())));
        }
        let mut gens = Vec::new();
        for g in generators {
            match g.pairs() {
                [p] => gens.push(*p),
                _ => return Err(Error::InvalidSpec(format!("generator {} is not indecomposable", g.name(cat)))),
            }
        }
        gens.sort();
        gens.dedup();
        for (pattern, &(x, y, kmin, middle)) in PATTERNS.iter().enumerate() {
            let Some(&(_, t)) = gens.iter().find(|g| g.0 == x) else { continue };
            let Some(&(_, ty)) = gens.iter().find(|g| g.0 == y) else { continue };
            let gap = ty - t;
            if gap < kmin {
                continue;
            }
            let heart = TiltedHeart { pattern, shift: t, gap };
            let expected: Vec<Shifted> = if gap == kmin {
                vec![(x, t), (y, ty), (middle.0, middle.1 + t)]
            } else {
                vec![(x, t), (y, ty)]
            };
            let ok = gens.iter().all(|g| expected.contains(g)) && (gens.len() == 2 || gens.len() == expected.len());
            if ok {
                return Ok(heart);
            }
        }
        let names: Vec<String> = generators.iter().map(|g| g.name(cat)).collect();
        Err(Error::InvalidSpec(format!("[{}] does not generate a heart", names.join(", "))))
    }

    pub fn simples(&self) -> [Shifted; 2] {
        let (x, y, _, _) = PATTERNS[self.pattern];
        [(x, self.shift), (y, self.shift + self.gap)]
    }

    /// `(a, e, b)` with `0 -> a -> e -> b -> 0` in the heart, if any.
    pub fn extension(&self) -> Option<(Shifted, Shifted, Shifted)> {
        let (x, y, kmin, (m, ms)) = PATTERNS[self.pattern];
        (self.gap == kmin).then_some(((x, self.shift), (m, ms + self.shift), (y, self.shift + self.gap)))
    }

    /// All indecomposable objects of the heart.
    pub fn indecomposables(&self) -> Vec<Shifted> {
        let mut v = self.simples().to_vec();
        if let Some((_, e, _)) = self.extension() {
            v.push(e);
        }
        v
    }

    /// The heart indecomposable in the shift orbit of `id`, if there is one.
    pub fn representative(&self, id: IndecId) -> Option<Shifted> {
        self.indecomposables().into_iter().find(|g| g.0 == id)
    }

    /// Heart label in the usual notation, e.g. `add(S2,S1[2])` or `A`.
    pub fn label(&self, cat: &IndecompCatalog) -> String {
        let name = |(id, s): Shifted| DerivedClass::single(id, s).name(cat);
        if self.shift == 0 && self.extension().is_some() && self.pattern == 0 {
            return "A".into();
        }
        let parts: Vec<String> = match self.extension() {
            Some((a, e, b)) if self.pattern == 0 => vec![name(a), name(b), name(e)],
            Some((a, e, b)) => vec![name(a), name(e), name(b)],
            None => self.simples().iter().map(|&g| name(g)).collect(),
        };
        format!("add({})", parts.join(","))
    }
}
