//! Objects of the bounded derived category as multisets of shifted indecomposables.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::fmt;

use crate::catalog::{IndecId, IndecompCatalog, ModuleClass};
use crate::error::{Error, Result};
use crate::quiver::DimVector;

/// Isomorphism class `⊕ X_i[s_i]`. `X[s]` has its cohomology in degree `-s`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DerivedClass(Vec<(IndecId, i32)>);

impl DerivedClass {
    pub fn new(mut pairs: Vec<(IndecId, i32)>) -> Self {
        pairs.sort();
        DerivedClass(pairs)
    }

    pub fn zero() -> Self {
        DerivedClass(Vec::new())
    }

    pub fn single(id: IndecId, shift: i32) -> Self {
        DerivedClass(vec![(id, shift)])
    }

    /// A module placed in degree 0.
    pub fn module(m: &ModuleClass) -> Self {
        Self::at_shift(m, 0)
    }

    pub fn at_shift(m: &ModuleClass, shift: i32) -> Self {
        DerivedClass(m.ids().iter().map(|&id| (id, shift)).collect())
    }

    pub fn pairs(&self) -> &[(IndecId, i32)] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn summand_count(&self) -> usize {
        self.0.len()
    }

    pub fn is_indecomposable(&self) -> bool {
        self.0.len() == 1
    }

    pub fn shift(&self, by: i32) -> Self {
        DerivedClass(self.0.iter().map(|&(id, s)| (id, s + by)).collect())
    }

    pub fn plus(&self, other: &DerivedClass) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Self::new(v)
    }

    /// Distinct shifts, ascending.
    pub fn shifts(&self) -> Vec<i32> {
        let mut s: Vec<i32> = self.0.iter().map(|&(_, s)| s).collect();
        s.sort();
        s.dedup();
        s
    }

    /// The module sitting at shift `s`, i.e. the cohomology in degree `-s`.
    pub fn part_at(&self, s: i32) -> ModuleClass {
        ModuleClass::new(self.0.iter().filter(|p| p.1 == s).map(|p| p.0).collect())
    }

    /// Is this a module in degree 0?
    pub fn as_module(&self) -> Option<ModuleClass> {
        self.0.iter().all(|p| p.1 == 0).then(|| self.part_at(0))
    }

    pub fn shift_width(&self) -> i32 {
        match (self.0.iter().map(|p| p.1).min(), self.0.iter().map(|p| p.1).max()) {
            (Some(a), Some(b)) => b - a,
            _ => 0,
        }
    }

    /// Sum of underlying module dimensions, blind to shifts.
    pub fn total_dim(&self, cat: &IndecompCatalog) -> usize {
        self.0.iter().map(|&(id, _)| cat.entry(id).dim.total() as usize).sum()
    }

    /// Class in K_0: each shift contributes with sign (-1)^s.
    pub fn k0(&self, cat: &IndecompCatalog) -> DimVector {
        let mut v = DimVector::zero(cat.rank());
        for &(id, s) in &self.0 {
            let d = &cat.entry(id).dim;
            v = if s.rem_euclid(2) == 0 { &v + d } else { &v - d };
        }
        v
    }

    /// (id, shift, multiplicity) in storage order.
    pub fn multiplicities(&self) -> Vec<((IndecId, i32), usize)> {
        let mut out: Vec<((IndecId, i32), usize)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((last, k)) if *last == p => *k += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// All ordered splittings (A, B) with A ⊕ B = self.
    pub fn splittings(&self) -> Vec<(DerivedClass, DerivedClass)> {
        let mut out = vec![(Vec::new(), Vec::new())];
        for (p, k) in self.multiplicities() {
            let mut next = Vec::with_capacity(out.len() * (k + 1));
            for (a, b) in &out {
                for i in 0..=k {
                    let mut a2: Vec<(IndecId, i32)> = a.clone();
                    let mut b2: Vec<(IndecId, i32)> = b.clone();
                    a2.extend(std::iter::repeat_n(p, i));
                    b2.extend(std::iter::repeat_n(p, k - i));
                    next.push((a2, b2));
                }
            }
            out = next;
        }
        out.into_iter().map(|(a, b)| (Self::new(a), Self::new(b))).collect()
    }

    pub fn name(&self, cat: &IndecompCatalog) -> String {
        if self.0.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .multiplicities()
            .into_iter()
            .map(|((id, s), k)| {
                let base = if s == 0 {
                    cat.entry(id).name.clone()
                } else {
                    format!("{}[{}]", cat.entry(id).name, s)
                };
                if k == 1 {
                    base
                } else {
                    format!("{k}*{base}")
                }
            })
            .collect();
        parts.join("+")
    }

    /// Parse `"2*S1+S2[1]+P1[-1]"`; `"0"` is the zero object.
    pub fn parse(cat: &IndecompCatalog, s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" || s.is_empty() {
            return Ok(Self::zero());
        }
        let mut pairs = Vec::new();
        for term in s.split(['+', ',']) {
            let term = term.trim();
            let (k, body) = match term.split_once('*') {
                Some((k, b)) => (
                    k.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad multiplicity in {term}")))?,
                    b.trim(),
                ),
                None => (1, term),
            };
            let (name, shift) = match body.split_once('[') {
                Some((n, rest)) => {
                    let sh = rest
                        .strip_suffix(']')
                        .and_then(|x| x.trim().parse::<i32>().ok())
                        .ok_or_else(|| Error::Parse(format!("bad shift in {term}")))?;
                    (n.trim(), sh)
                }
                None => (body, 0),
            };
            let id = cat
                .by_name(name)
                .ok_or_else(|| Error::Parse(format!("unknown indecomposable {name}")))?;
            pairs.extend(std::iter::repeat_n((id, shift), k));
        }
        Ok(Self::new(pairs))
    }

    /// `[["S1", 0], ["S2", 1], ...]` in canonical order.
    pub fn to_json(&self, cat: &IndecompCatalog) -> Value {
        Value::Array(self.0.iter().map(|&(id, s)| json!([cat.entry(id).name, s])).collect())
    }

    /// Accepts names or numeric ids in the first slot.
    pub fn from_json(cat: &IndecompCatalog, v: &Value) -> Result<Self> {
        let bad = || Error::Parse(format!("expected [[id, shift], ...], got {v}"));
        let arr = v.as_array().ok_or_else(bad)?;
        let mut pairs = Vec::with_capacity(arr.len());
        for item in arr {
            let pair = item.as_array().filter(|p| p.len() == 2).ok_or_else(bad)?;
            let id = match &pair[0] {
                Value::String(name) => cat
                    .by_name(name)
                    .ok_or_else(|| Error::Parse(format!("unknown indecomposable {name}")))?,
                Value::Number(n) => {
                    let i = n.as_u64().ok_or_else(bad)? as usize;
                    if i >= cat.len() {
                        return Err(Error::Parse(format!("id {i} outside catalog")));
                    }
                    IndecId(i)
                }
                _ => return Err(bad()),
            };
            let shift = pair[1].as_i64().ok_or_else(bad)? as i32;
            pairs.push((id, shift));
        }
        Ok(Self::new(pairs))
    }
}

impl fmt::Display for DerivedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(id, s)| format!("{}@{}", id.0, s)).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Finite window on the derived category: shifts in `[lo, hi]`, total dimension capped.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncationProfile {
    pub shift_window: (i32, i32),
    pub total_dim_cap: usize,
}

impl TruncationProfile {
    pub fn new(lo: i32, hi: i32, total_dim_cap: usize) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidSpec(format!("empty shift window [{lo},{hi}]")));
        }
        if total_dim_cap == 0 {
            return Err(Error::InvalidSpec("total dimension cap must be at least 1".into()));
        }
        Ok(TruncationProfile {
            shift_window: (lo, hi),
            total_dim_cap,
        })
    }

    pub fn contains(&self, c: &DerivedClass, cat: &IndecompCatalog) -> bool {
        let (lo, hi) = self.shift_window;
        c.pairs().iter().all(|&(_, s)| lo <= s && s <= hi) && c.total_dim(cat) <= self.total_dim_cap
    }

    pub fn check(&self, c: &DerivedClass, cat: &IndecompCatalog) -> Result<()> {
        let (lo, hi) = self.shift_window;
        if let Some(&(_, s)) = c.pairs().iter().find(|&&(_, s)| s < lo || s > hi) {
            return Err(Error::WindowExceeded { shift: s, lo, hi });
        }
        let d = c.total_dim(cat);
        if d > self.total_dim_cap {
            return Err(Error::CapExceeded(format!(
                "total dimension {d} exceeds cap {}",
                self.total_dim_cap
            )));
        }
        Ok(())
    }

    /// Every nonzero class inside the window, ordered by total dimension then canonically.
    pub fn classes(&self, cat: &IndecompCatalog) -> Vec<DerivedClass> {
        let (lo, hi) = self.shift_window;
        let pieces: Vec<(IndecId, i32)> = cat.entries().iter().flat_map(|e| (lo..=hi).map(move |s| (e.id, s))).collect();
        sums_of(cat, &pieces, self.total_dim_cap)
    }
}

/// All nonzero direct sums of the given shifted indecomposables with total
/// dimension at most `cap`, sorted by total dimension.
pub fn sums_of(cat: &IndecompCatalog, pieces: &[(IndecId, i32)], cap: usize) -> Vec<DerivedClass> {
    let labels: Vec<(IndecId, i32, usize)> = pieces
        .iter()
        .map(|&(id, s)| (id, s, cat.entry(id).dim.total() as usize))
        .collect();
    let mut out = Vec::new();
    let mut stack: Vec<(usize, usize, Vec<(IndecId, i32)>)> = vec![(0, 0, Vec::new())];
    while let Some((start, used, acc)) = stack.pop() {
        if !acc.is_empty() {
            out.push(DerivedClass::new(acc.clone()));
        }
        for (i, &(id, s, d)) in labels.iter().enumerate().skip(start) {
            if used + d <= cap {
                let mut next = acc.clone();
                next.push((id, s));
                stack.push((i, used + d, next));
            }
        }
    }
    out.sort_by_key(|c| (c.total_dim(cat), c.clone()));
    out
}
