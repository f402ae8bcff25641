//! Stability conditions on the derived category of rep A2: which of S1, S2, P1
//! are semistable, the heart up to shift, and the shape of the wall-crossing
//! product. There are twelve possibilities.

pub mod validate;

use serde::Serialize;
use std::fmt;

use crate::catalog::IndecId;
use crate::derived::class::DerivedClass;
use crate::derived::stability::StabilityCondition;
use crate::error::{Error, Result};
use crate::phase::PhasePoint;
use crate::quiver::QuiverPreset;

pub use validate::{cross_validate, enumerate_table, witness_grid, TableEntry};

const S1: IndecId = IndecId(0);
const S2: IndecId = IndecId(1);
const P1: IndecId = IndecId(2);

/// A shift `a·n + b` depending on the window integer `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Sh(i32, i32);

impl Sh {
    fn at(self, n: u32) -> i32 {
        self.0 * n as i32 + self.1
    }

    fn symbol(self) -> String {
        match self {
            Sh(0, 0) => String::new(),
            Sh(0, b) => format!("[{b}]"),
            Sh(1, 0) => "[n]".into(),
            Sh(1, b) => format!("[n+{b}]"),
            Sh(a, b) => format!("[{a}n+{b}]"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">")]
    Gt,
}

struct RowShape {
    case: u8,
    semistable: &'static [IndecId],
    heart: &'static [(IndecId, Sh)],
    /// `φ(lhs) rel φ(rhs)`.
    condition: ((IndecId, Sh), Relation, (IndecId, Sh)),
    /// Whether the row pins the window integer to zero.
    n_zero: bool,
}

const Z: Sh = Sh(0, 0);
const ONE: Sh = Sh(0, 1);

/// The table in its printed order.
const ROWS: [RowShape; 12] = [
    RowShape { case: 1, semistable: &[S1, S2], heart: &[(S2, Z), (S1, Sh(1, 1))], condition: ((S2, Z), Relation::Le, (S1, Sh(1, 1))), n_zero: false },
    RowShape { case: 1, semistable: &[S1, S2], heart: &[(S2, Z), (S1, Sh(1, 0))], condition: ((S2, Z), Relation::Gt, (S1, Sh(1, 0))), n_zero: false },
    RowShape { case: 1, semistable: &[S1, S2], heart: &[(S2, Z), (S1, Z), (P1, Z)], condition: ((S2, Z), Relation::Gt, (S1, Z)), n_zero: true },
    RowShape { case: 2, semistable: &[P1, S1], heart: &[(S1, Z), (P1, Sh(1, 2))], condition: ((S1, Z), Relation::Le, (P1, Sh(1, 2))), n_zero: false },
    RowShape { case: 2, semistable: &[P1, S1], heart: &[(S1, Z), (P1, Sh(1, 1))], condition: ((S1, Z), Relation::Gt, (P1, Sh(1, 1))), n_zero: false },
    RowShape { case: 2, semistable: &[P1, S1], heart: &[(S1, Z), (S2, ONE), (P1, ONE)], condition: ((S1, Z), Relation::Gt, (P1, ONE)), n_zero: true },
    RowShape { case: 3, semistable: &[S2, P1], heart: &[(P1, Z), (S2, Sh(1, 2))], condition: ((P1, Z), Relation::Le, (S2, Sh(1, 2))), n_zero: false },
    RowShape { case: 3, semistable: &[S2, P1], heart: &[(P1, Z), (S2, Sh(1, 1))], condition: ((P1, Z), Relation::Gt, (S2, Sh(1, 1))), n_zero: false },
    RowShape { case: 3, semistable: &[S2, P1], heart: &[(P1, Z), (S1, Z), (S2, ONE)], condition: ((P1, Z), Relation::Gt, (S2, ONE)), n_zero: true },
    RowShape { case: 4, semistable: &[S2, P1, S1], heart: &[(S2, Z), (S1, Z), (P1, Z)], condition: ((S2, Z), Relation::Le, (S1, Z)), n_zero: true },
    RowShape { case: 4, semistable: &[S2, P1, S1], heart: &[(S1, Z), (S2, ONE), (P1, ONE)], condition: ((S1, Z), Relation::Le, (P1, ONE)), n_zero: true },
    RowShape { case: 4, semistable: &[S2, P1, S1], heart: &[(P1, Z), (S1, Z), (S2, ONE)], condition: ((P1, Z), Relation::Le, (S2, ONE)), n_zero: true },
];

fn name(id: IndecId) -> &'static str {
    ["S1", "S2", "P1"][id.0]
}

fn shifted_name(id: IndecId, s: i32) -> String {
    if s == 0 {
        name(id).to_string()
    } else {
        format!("{}[{s}]", name(id))
    }
}

fn parse_object(s: &str) -> Option<(IndecId, i32)> {
    let (base, shift) = match s.split_once('[') {
        Some((b, rest)) => (b, rest.strip_suffix(']')?.parse().ok()?),
        None => (s, 0),
    };
    let id = match base {
        "S1" => S1,
        "S2" => S2,
        "P1" => P1,
        _ => return None,
    };
    Some((id, shift))
}

/// One classified stability condition. All fields are plain data so that a
/// row can be compared, serialized, and perturbed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    /// Position in the printed table, 1 to 12.
    pub row: usize,
    pub case: u8,
    /// The window integer; 0 where the row fixes it.
    pub n: u32,
    pub semistable: Vec<String>,
    /// Heart of the normalized condition, e.g. `add(S2,S1[2])`, or `A`.
    pub heart: String,
    /// Concrete phase inequality, e.g. `phi(S2) <= phi(S1[2])`.
    pub phases: String,
    /// Which wall-crossing product, 1 to 4.
    pub formula: u8,
    /// Shift `t` with the designated object in `P(t, t+1]`.
    pub shift: i32,
    pub silting: Option<String>,
}

impl TableRow {
    /// Heart column with `n` left symbolic.
    pub fn heart_pattern(&self) -> String {
        heart_label(&ROWS[self.row - 1], None)
    }

    pub fn phases_pattern(&self) -> String {
        let ((a, sa), rel, (b, sb)) = ROWS[self.row - 1].condition;
        format!("phi({}{}) {} phi({}{})", name(a), sa.symbol(), rel_str(rel), name(b), sb.symbol())
    }

    pub fn formula_label(&self) -> String {
        if ROWS[self.row - 1].n_zero && self.case != 4 {
            format!("({}) with n=0", self.formula)
        } else {
            format!("({})", self.formula)
        }
    }

    /// Heart objects of the normalized condition.
    pub fn heart_objects(&self) -> Result<Vec<(IndecId, i32)>> {
        if self.heart == "A" {
            return Ok(vec![(S2, 0), (S1, 0), (P1, 0)]);
        }
        let inner = self
            .heart
            .strip_prefix("add(")
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("heart label {}", self.heart)))?;
        inner
            .split(',')
            .map(|o| parse_object(o).ok_or_else(|| Error::Parse(format!("heart object {o}"))))
            .collect()
    }
}

fn rel_str(r: Relation) -> &'static str {
    match r {
        Relation::Le => "<=",
        Relation::Gt => ">",
    }
}

fn heart_label(shape: &RowShape, n: Option<u32>) -> String {
    if shape.heart.len() == 3 && shape.heart.iter().all(|&(_, s)| s == Z) {
        return "A".into();
    }
    let parts: Vec<String> = shape
        .heart
        .iter()
        .map(|&(id, s)| match n {
            Some(n) => shifted_name(id, s.at(n)),
            None => format!("{}{}", name(id), s.symbol()),
        })
        .collect();
    format!("add({})", parts.join(","))
}

fn phases_label(shape: &RowShape, n: u32) -> String {
    let ((a, sa), rel, (b, sb)) = shape.condition;
    format!("phi({}) {} phi({})", shifted_name(a, sa.at(n)), rel_str(rel), shifted_name(b, sb.at(n)))
}

fn phase_of(sigma: &StabilityCondition, id: IndecId, s: i32) -> Result<PhasePoint> {
    let hn = sigma.hn_filtration(&DerivedClass::single(id, s))?;
    match hn.factors.as_slice() {
        [(_, p)] => Ok(p.clone()),
        _ => Err(Error::ImpossibleConfiguration(format!("{} is not semistable", shifted_name(id, s)))),
    }
}

/// The smallest `n >= 0` with `φ(lo) + n + off < φ(hi) <= φ(lo) + n + off + 1`.
fn window_integer(lo: &PhasePoint, hi: &PhasePoint, off: i32) -> Result<u32> {
    for n in 0..256 {
        let k = n as i32 + off;
        if lo.shift(k) < *hi && *hi <= lo.shift(k + 1) {
            return Ok(n);
        }
    }
    Err(Error::ImpossibleConfiguration(format!("no window integer for {hi} against {lo}")))
}

/// Whether `X[s]` lies in `P(t, t+1]`.
fn in_heart(sigma: &StabilityCondition, id: IndecId, s: i32, t: i32) -> Result<bool> {
    let hn = sigma.hn_filtration(&DerivedClass::single(id, s))?;
    Ok(hn.phase_max().heart_shift() == t && hn.phase_min().heart_shift() == t)
}

/// Determine the case and row of a stability condition on `D^b(rep A2)`.
pub fn classify(sigma: &StabilityCondition) -> Result<TableRow> {
    if sigma.catalog().preset() != QuiverPreset::A2 {
        return Err(Error::InvalidSpec("the classification is for A2 only".into()));
    }
    let ss: Vec<IndecId> = [S1, S2, P1]
        .into_iter()
        .filter_map(|id| match sigma.is_semistable(&DerivedClass::single(id, 0)) {
            Ok(true) => Some(Ok(id)),
            Ok(false) => None,
            Err(e) => Some(Err(e)),
        })
        .collect::<Result<_>>()?;
    let has = |id| ss.contains(&id);
    // The designated object is normalized into the heart.
    let (case, designated) = match (has(S1), has(S2), has(P1)) {
        (true, true, true) => (4, S1),
        (true, true, false) => (1, S2),
        (true, false, true) => (2, S1),
        (false, true, true) => (3, P1),
        _ => {
            return Err(Error::ImpossibleConfiguration(format!(
                "only {:?} semistable among S1, S2, P1",
                ss.iter().map(|&i| name(i)).collect::<Vec<_>>()
            )))
        }
    };
    let t = phase_of(sigma, designated, 0)?.heart_shift();
    let (row, n) = match case {
        1..=3 => {
            let (lo, off) = match case {
                1 => (S1, 0),
                2 => (P1, 1),
                _ => (S2, 1),
            };
            let n = window_integer(&phase_of(sigma, lo, 0)?, &phase_of(sigma, designated, 0)?, off)?;
            let base = 3 * (case as usize - 1);
            let upper = n as i32 + off + 1;
            if in_heart(sigma, lo, upper, t)? {
                (base + 1, n)
            } else if n >= 1 {
                (base + 2, n)
            } else {
                (base + 3, 0)
            }
        }
        _ => {
            let s2 = in_heart(sigma, S2, 0, t)?;
            let p1 = in_heart(sigma, P1, 0, t)?;
            match (s2, p1) {
                (true, _) => (10, 0),
                (false, false) => (11, 0),
                (false, true) => (12, 0),
            }
        }
    };
    let shape = &ROWS[row - 1];
    let mut out = TableRow {
        row,
        case,
        n,
        semistable: shape.semistable.iter().map(|&i| name(i).to_string()).collect(),
        heart: heart_label(shape, Some(n)),
        phases: phases_label(shape, n),
        formula: case,
        shift: t,
        silting: None,
    };
    out.silting = silting_label(&out).ok();
    Ok(out)
}

/// The factors of the row's wall-crossing product whose shift lies in
/// `[lo, hi]`, in the order they are multiplied (descending phase).
pub fn wall_crossing_skeleton(row: &TableRow, lo: i32, hi: i32) -> Vec<(IndecId, i32)> {
    let n = row.n as i32;
    // One period of the product, indexed by k descending.
    let block = |k: i32| -> Vec<(IndecId, i32)> {
        match row.formula {
            1 => vec![(S2, k), (S1, n + k)],
            2 => vec![(S1, k), (P1, n + 1 + k)],
            3 => vec![(P1, k), (S2, n + 1 + k)],
            _ => vec![(S1, k), (P1, k), (S2, k)],
        }
    };
    let reach = hi - lo + n + 4;
    let mut out = Vec::new();
    for k in (lo - reach..=hi + reach).rev() {
        out.extend(block(k).into_iter().filter(|&(_, s)| lo <= s && s <= hi));
    }
    out
}

pub fn skeleton_names(factors: &[(IndecId, i32)]) -> Vec<String> {
    factors.iter().map(|&(id, s)| format!("Phi_{}", shifted_name(id, s))).collect()
}

/// The silting complex behind the row's heart, as component positions.
pub fn silting_label(row: &TableRow) -> Result<String> {
    let n = row.n as i32;
    let text = match row.row {
        1 => format!("P1 at {}, S2 at 0", -(n + 1)),
        2 => format!("P1 at {}, S2 at 0", -n),
        4 => format!("S2 at {}, S2 -> P1 at -1, 0", -(n + 2)),
        5 => format!("S2 at {}, S2 -> P1 at -1, 0", -(n + 1)),
        7 => format!("S2 -> P1 at {}, {}, P1 at 0", -(n + 2), -(n + 1)),
        8 => format!("S2 -> P1 at {}, {}, P1 at 0", -(n + 1), -n),
        _ => return Err(Error::NoLabel),
    };
    Ok(text)
}

impl fmt::Display for TableRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "row {}: {{{}}} heart {} with {}, formula {} (n={})",
            self.row,
            self.semistable.join(","),
            self.heart,
            self.phases,
            self.formula,
            self.n
        )
    }
}

#[cfg(test)]
mod tests;
