//! Indecomposable catalogs for linear type-A quivers, module classes as
//! multisets of catalog entries, and Krull-Schmidt decomposition.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Mat, PrimeField};
use crate::quiver::{DimVector, Quiver, QuiverPreset};
use crate::rep::Representation;

/// Index into an [`IndecompCatalog`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IndecId(pub usize);

/// An interval module: one-dimensional on vertices `lo..=hi`, identity arrows inside.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub id: IndecId,
    pub name: String,
    pub dim: DimVector,
    pub lo: usize,
    pub hi: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndecompCatalog {
    preset: QuiverPreset,
    quiver: Quiver,
    cap: usize,
    entries: Vec<CatalogEntry>,
    /// Entries ordered so that Hom(I, J) != 0 with I != J puts J first.
    solve_order: Vec<IndecId>,
}

fn interval_name(lo: usize, hi: usize, n: usize) -> String {
    if lo == hi {
        format!("S{}", lo + 1)
    } else if hi == n - 1 {
        format!("P{}", lo + 1)
    } else {
        format!("I{}{}", lo + 1, hi + 1)
    }
}

impl IndecompCatalog {
    pub fn build(preset: QuiverPreset, dim_cap: usize) -> Result<Self> {
        if dim_cap == 0 {
            return Err(Error::InvalidSpec("dimension cap must be at least 1".into()));
        }
        let n = preset.rank();
        let mut raw: Vec<(usize, usize)> = Vec::new();
        for lo in 0..n {
            for hi in lo..n {
                if hi - lo < dim_cap {
                    raw.push((lo, hi));
                }
            }
        }
        let dim_of = |lo: usize, hi: usize| DimVector((0..n).map(|v| i64::from(lo <= v && v <= hi)).collect());
        raw.sort_by(|a, b| {
            let (da, db) = (dim_of(a.0, a.1), dim_of(b.0, b.1));
            da.total().cmp(&db.total()).then_with(|| db.cmp(&da))
        });
        let entries: Vec<CatalogEntry> = raw
            .iter()
            .enumerate()
            .map(|(i, &(lo, hi))| CatalogEntry {
                id: IndecId(i),
                name: interval_name(lo, hi, n),
                dim: dim_of(lo, hi),
                lo,
                hi,
            })
            .collect();
        let mut solve_order: Vec<IndecId> = entries.iter().map(|e| e.id).collect();
        solve_order.sort_by_key(|id| {
            let e = &entries[id.0];
            (e.lo + e.hi, e.lo)
        });
        Ok(IndecompCatalog {
            preset,
            quiver: preset.quiver(),
            cap: dim_cap,
            entries,
            solve_order,
        })
    }

    pub fn for_quiver(q: &Quiver, dim_cap: usize) -> Result<Self> {
        Self::build(QuiverPreset::identify(q)?, dim_cap)
    }

    pub fn preset(&self) -> QuiverPreset {
        self.preset
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entry(&self, id: IndecId) -> &CatalogEntry {
        &self.entries[id.0]
    }

    pub fn rank(&self) -> usize {
        self.preset.rank()
    }

    pub fn by_name(&self, name: &str) -> Option<IndecId> {
        self.entries.iter().find(|e| e.name.eq_ignore_ascii_case(name)).map(|e| e.id)
    }

    pub fn by_interval(&self, lo: usize, hi: usize) -> Option<IndecId> {
        self.entries.iter().find(|e| e.lo == lo && e.hi == hi).map(|e| e.id)
    }

    /// The indecomposable projective at a vertex.
    pub fn projective(&self, v: usize) -> Option<IndecId> {
        self.by_interval(v, self.rank() - 1)
    }

    /// dim Hom between interval modules: nonzero (and then 1) iff
    /// `to.lo <= from.lo <= to.hi <= from.hi`.
    pub fn hom_dim(&self, from: IndecId, to: IndecId) -> usize {
        let (a, b) = (self.entry(from), self.entry(to));
        usize::from(b.lo <= a.lo && a.lo <= b.hi && b.hi <= a.hi)
    }

    /// dim Ext^1 between interval modules via the Euler form.
    pub fn ext_dim(&self, from: IndecId, to: IndecId) -> usize {
        let e = self
            .quiver
            .euler_form(&self.entry(from).dim, &self.entry(to).dim)
            .expect("catalog dims match the quiver");
        (self.hom_dim(from, to) as i64 - e) as usize
    }

    pub fn canonical_matrices(&self, id: IndecId) -> Vec<Mat> {
        let e = self.entry(id);
        self.quiver
            .arrows()
            .iter()
            .map(|&(s, t)| {
                let ds = usize::from(e.lo <= s && s <= e.hi);
                let dt = usize::from(e.lo <= t && t <= e.hi);
                let mut m = Mat::zeros(dt, ds);
                if ds == 1 && dt == 1 {
                    m.set(0, 0, 1);
                }
                m
            })
            .collect()
    }

    pub fn canonical(&self, id: IndecId, field: PrimeField) -> Representation {
        Representation::new(
            self.quiver.clone(),
            field,
            self.entry(id).dim.clone(),
            self.canonical_matrices(id),
        )
        .expect("canonical interval representation is well formed")
    }

    pub fn build_rep(&self, class: &ModuleClass, field: PrimeField) -> Representation {
        class.ids().iter().fold(Representation::zero(self.quiver.clone(), field), |acc, &id| {
            acc.direct_sum(&self.canonical(id, field)).expect("same quiver and field")
        })
    }

    pub fn dim_of(&self, class: &ModuleClass) -> DimVector {
        class
            .ids()
            .iter()
            .fold(DimVector::zero(self.rank()), |acc, &id| &acc + &self.entry(id).dim)
    }

    /// Krull-Schmidt multiplicities from the measured dimensions dim Hom(I, M).
    pub fn decompose(&self, m: &Representation) -> Result<ModuleClass> {
        if m.quiver() != &self.quiver {
            return Err(Error::UnsupportedQuiver("representation is on another quiver".into()));
        }
        if m.total_dim() > self.cap {
            return Err(Error::CatalogInsufficient {
                cap: self.cap,
                needed: m.total_dim(),
            });
        }
        let mut mult = vec![0i64; self.len()];
        for &i in &self.solve_order {
            if !self.entry(i).dim.le(m.dims()) {
                continue;
            }
            let measured = self.canonical(i, m.field()).hom_dim(m)? as i64;
            let known: i64 = (0..self.len())
                .filter(|&j| j != i.0)
                .map(|j| mult[j] * self.hom_dim(i, IndecId(j)) as i64)
                .sum();
            mult[i.0] = measured - known;
            debug_assert!(mult[i.0] >= 0);
        }
        let ids = mult
            .iter()
            .enumerate()
            .flat_map(|(j, &k)| std::iter::repeat_n(IndecId(j), k.max(0) as usize))
            .collect();
        let class = ModuleClass::new(ids);
        if self.dim_of(&class) != *m.dims() {
            return Err(Error::Mismatch(format!("decomposition of {} did not close", m.dims())));
        }
        Ok(class)
    }

    /// Decomposition from the multiplicities of interval summands, read off
    /// rank data of the composite arrow maps. Agrees with [`Self::decompose`].
    pub fn decompose_by_ranks(&self, m: &Representation) -> Result<ModuleClass> {
        if m.total_dim() > self.cap {
            return Err(Error::CatalogInsufficient {
                cap: self.cap,
                needed: m.total_dim(),
            });
        }
        let n = self.rank();
        let f = m.field();
        // r[i][j] = rank of the composite map from vertex i to vertex j (i <= j).
        let mut r = vec![vec![0i64; n]; n];
        for i in 0..n {
            let mut comp = Mat::identity(m.dim_at(i));
            r[i][i] = m.dim_at(i) as i64;
            for j in i + 1..n {
                comp = m.maps()[j - 1].mul(&comp, f);
                r[i][j] = comp.rank(f) as i64;
            }
        }
        let at = |i: isize, j: isize| -> i64 {
            if i < 0 || j >= n as isize || i > j {
                0
            } else {
                r[i as usize][j as usize]
            }
        };
        let mut ids = Vec::new();
        for e in &self.entries {
            let (a, b) = (e.lo as isize, e.hi as isize);
            let k = at(a, b) - at(a - 1, b) - at(a, b + 1) + at(a - 1, b + 1);
            ids.extend(std::iter::repeat_n(e.id, k.max(0) as usize));
        }
        Ok(ModuleClass::new(ids))
    }

    /// Every module class of the given dimension vector, in a fixed order.
    pub fn classes_of_dim(&self, d: &DimVector) -> Vec<ModuleClass> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.classes_rec(0, d.clone(), &mut cur, &mut out);
        out.sort();
        out
    }

    fn classes_rec(&self, start: usize, rest: DimVector, cur: &mut Vec<IndecId>, out: &mut Vec<ModuleClass>) {
        if rest.is_zero() {
            out.push(ModuleClass::new(cur.clone()));
            return;
        }
        for j in start..self.len() {
            let dj = &self.entries[j].dim;
            if dj.le(&rest) {
                cur.push(IndecId(j));
                self.classes_rec(j, &rest - dj, cur, out);
                cur.pop();
            }
        }
    }

    /// Every nonzero module class of total dimension at most `total`.
    pub fn classes_up_to(&self, total: usize) -> Vec<ModuleClass> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.classes_total_rec(0, total, &mut cur, &mut out);
        out.sort_by(|a, b| self.dim_of(a).total().cmp(&self.dim_of(b).total()).then(a.cmp(b)));
        out
    }

    fn classes_total_rec(&self, start: usize, budget: usize, cur: &mut Vec<IndecId>, out: &mut Vec<ModuleClass>) {
        if !cur.is_empty() {
            out.push(ModuleClass::new(cur.clone()));
        }
        for j in start..self.len() {
            let t = self.entries[j].dim.total() as usize;
            if t <= budget {
                cur.push(IndecId(j));
                self.classes_total_rec(j, budget - t, cur, out);
                cur.pop();
            }
        }
    }

    pub fn class_name(&self, class: &ModuleClass) -> String {
        if class.is_zero() {
            return "0".into();
        }
        class
            .ids()
            .iter()
            .map(|&id| self.entry(id).name.clone())
            .collect::<Vec<_>>()
            .join("+")
    }

    /// Parse "S1+S2", "P1" or "0"; a summand may be repeated as "2*S1".
    pub fn parse_class(&self, s: &str) -> Result<ModuleClass> {
        let s = s.trim();
        if s == "0" || s.is_empty() {
            return Ok(ModuleClass::zero());
        }
        let mut ids = Vec::new();
        for part in s.split('+') {
            let part = part.trim();
            let (k, name) = match part.split_once('*') {
                Some((k, name)) => (k.trim().parse::<usize>().map_err(|e| Error::Parse(e.to_string()))?, name.trim()),
                None => (1, part),
            };
            let id = self
                .by_name(name)
                .ok_or_else(|| Error::Parse(format!("unknown indecomposable {name}")))?;
            ids.extend(std::iter::repeat_n(id, k));
        }
        Ok(ModuleClass::new(ids))
    }

    /// dim End of a class, from the interval Hom table.
    pub fn end_dim(&self, class: &ModuleClass) -> usize {
        let ids = class.ids();
        ids.iter()
            .map(|&a| ids.iter().map(|&b| self.hom_dim(a, b)).sum::<usize>())
            .sum()
    }

    pub fn hom_dim_classes(&self, from: &ModuleClass, to: &ModuleClass) -> usize {
        from.ids()
            .iter()
            .map(|&a| to.ids().iter().map(|&b| self.hom_dim(a, b)).sum::<usize>())
            .sum()
    }

    /// |Aut| = q^(dim End - sum m_i^2) * prod |GL_{m_i}(q)|, since every
    /// indecomposable has endomorphism ring the ground field.
    pub fn aut_count(&self, class: &ModuleClass, field: PrimeField) -> Result<u128> {
        let sq: usize = class.multiplicities().iter().map(|&(_, m)| m * m).sum();
        let rad = self.end_dim(class) - sq;
        let mut out = (field.q() as u128)
            .checked_pow(rad as u32)
            .ok_or_else(|| Error::CapExceeded("automorphism count overflows".into()))?;
        for (_, m) in class.multiplicities() {
            out = out
                .checked_mul(field.gl_order(m))
                .ok_or_else(|| Error::CapExceeded("automorphism count overflows".into()))?;
        }
        Ok(out)
    }

    pub fn aut_count_rep(&self, m: &Representation) -> Result<u128> {
        self.aut_count(&self.decompose(m)?, m.field())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "quiver": self.preset.to_string(),
            "entries": self.entries.iter().map(|e| serde_json::json!({
                "id": e.id.0,
                "name": e.name,
                "dim": e.dim.0,
                "matrices": self.canonical_matrices(e.id).iter().map(|m| {
                    (0..m.rows()).map(|r| m.row(r).to_vec()).collect::<Vec<_>>()
                }).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Isomorphism class of a module: a sorted multiset of catalog ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ModuleClass(Vec<IndecId>);

impl ModuleClass {
    pub fn new(mut ids: Vec<IndecId>) -> Self {
        ids.sort();
        ModuleClass(ids)
    }

    pub fn zero() -> Self {
        ModuleClass(Vec::new())
    }

    pub fn single(id: IndecId) -> Self {
        ModuleClass(vec![id])
    }

    pub fn ids(&self) -> &[IndecId] {
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

    /// Direct sum: multiset union.
    pub fn plus(&self, other: &ModuleClass) -> ModuleClass {
        let mut ids = self.0.clone();
        ids.extend_from_slice(&other.0);
        ModuleClass::new(ids)
    }

    /// (id, multiplicity) pairs in id order.
    pub fn multiplicities(&self) -> Vec<(IndecId, usize)> {
        let mut out: Vec<(IndecId, usize)> = Vec::new();
        for &id in &self.0 {
            match out.last_mut() {
                Some((last, k)) if *last == id => *k += 1,
                _ => out.push((id, 1)),
            }
        }
        out
    }

    /// All ways to split the multiset into an ordered pair (A, B) with A + B = self.
    pub fn splittings(&self) -> Vec<(ModuleClass, ModuleClass)> {
        let mults = self.multiplicities();
        let mut out = vec![(Vec::new(), Vec::new())];
        for (id, k) in mults {
            let mut next = Vec::new();
            for (a, b) in &out {
                for i in 0..=k {
                    let mut a2: Vec<IndecId> = a.clone();
                    let mut b2: Vec<IndecId> = b.clone();
                    a2.extend(std::iter::repeat_n(id, i));
                    b2.extend(std::iter::repeat_n(id, k - i));
                    next.push((a2, b2));
                }
            }
            out = next;
        }
        out.into_iter().map(|(a, b)| (ModuleClass::new(a), ModuleClass::new(b))).collect()
    }
}

impl fmt::Display for ModuleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<String> = self.0.iter().map(|i| i.0.to_string()).collect();
        write!(f, "[{}]", ids.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn a2_catalog_order_and_names() {
        let c = IndecompCatalog::build(QuiverPreset::A2, 4).unwrap();
        let names: Vec<&str> = c.entries().iter().map(|e| e.name.as_str()).collect();
        assert_eq!(names, ["S1", "S2", "P1"]);
        let dims: Vec<Vec<i64>> = c.entries().iter().map(|e| e.dim.0.clone()).collect();
        assert_eq!(dims, [vec![1, 0], vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn catalog_sizes() {
        assert_eq!(IndecompCatalog::build(QuiverPreset::A1, 7).unwrap().len(), 1);
        assert_eq!(IndecompCatalog::build(QuiverPreset::A3, 4).unwrap().len(), 6);
        assert_eq!(IndecompCatalog::build(QuiverPreset::A4, 4).unwrap().len(), 10);
        assert_eq!(IndecompCatalog::build(QuiverPreset::A4, 2).unwrap().len(), 7);
        assert!(IndecompCatalog::build(QuiverPreset::A2, 0).is_err());
    }

    #[test]
    fn hom_table_matches_linear_algebra() {
        for preset in [QuiverPreset::A2, QuiverPreset::A3, QuiverPreset::A4] {
            let c = IndecompCatalog::build(preset, 4).unwrap();
            for p in [2, 3, 5] {
                for a in c.entries() {
                    for b in c.entries() {
                        let ra = c.canonical(a.id, f(p));
                        let rb = c.canonical(b.id, f(p));
                        assert_eq!(ra.hom_dim(&rb).unwrap(), c.hom_dim(a.id, b.id));
                        assert_eq!(ra.ext_dim(&rb).unwrap(), c.ext_dim(a.id, b.id));
                    }
                }
            }
        }
    }

    #[test]
    fn decompose_a2_examples() {
        let c = IndecompCatalog::build(QuiverPreset::A2, 4).unwrap();
        let q = QuiverPreset::A2.quiver();
        let split = Representation::new(q.clone(), f(2), DimVector(vec![1, 1]), vec![Mat::from_rows(1, 1, &[0])]).unwrap();
        let glued = Representation::new(q.clone(), f(2), DimVector(vec![1, 1]), vec![Mat::from_rows(1, 1, &[1])]).unwrap();
        assert_eq!(c.class_name(&c.decompose(&split).unwrap()), "S1+S2");
        assert_eq!(c.class_name(&c.decompose(&glued).unwrap()), "P1");
        assert!(c.decompose(&Representation::zero(q, f(2))).unwrap().is_zero());
    }

    #[test]
    fn decompose_round_trip_and_rank_path() {
        let c = IndecompCatalog::build(QuiverPreset::A4, 5).unwrap();
        for class in c.classes_up_to(5) {
            let m = c.build_rep(&class, f(3));
            assert_eq!(c.decompose(&m).unwrap(), class);
            assert_eq!(c.decompose_by_ranks(&m).unwrap(), class);
        }
    }

    #[test]
    fn decompose_rejects_oversized() {
        let c = IndecompCatalog::build(QuiverPreset::A2, 2).unwrap();
        let m = c.build_rep(&c.parse_class("P1+S1").unwrap(), f(2));
        assert_eq!(c.decompose(&m).unwrap_err(), Error::CatalogInsufficient { cap: 2, needed: 3 });
    }

    #[test]
    fn aut_counts_agree_with_brute_force() {
        let c = IndecompCatalog::build(QuiverPreset::A3, 4).unwrap();
        for p in [2, 3] {
            for class in c.classes_up_to(3) {
                let m = c.build_rep(&class, f(p));
                assert_eq!(c.aut_count(&class, f(p)).unwrap(), m.aut_count_brute().unwrap(), "{class}");
            }
        }
        let a2 = IndecompCatalog::build(QuiverPreset::A2, 4).unwrap();
        assert_eq!(a2.aut_count(&a2.parse_class("S1").unwrap(), f(2)).unwrap(), 1);
        assert_eq!(a2.aut_count(&a2.parse_class("2*S1").unwrap(), f(2)).unwrap(), 6);
        assert_eq!(a2.aut_count(&ModuleClass::zero(), f(2)).unwrap(), 1);
    }

    #[test]
    fn classes_and_splittings() {
        let c = IndecompCatalog::build(QuiverPreset::A2, 4).unwrap();
        assert_eq!(c.classes_of_dim(&DimVector(vec![1, 1])).len(), 2);
        assert_eq!(c.classes_of_dim(&DimVector(vec![2, 1])).len(), 2);
        let m = c.parse_class("2*S1+S2").unwrap();
        assert_eq!(m.splittings().len(), 6);
        assert_eq!(c.parse_class("S1+S2").unwrap().plus(&c.parse_class("P1").unwrap()).summand_count(), 3);
    }

    /// Every representation over F_2 up to the cap, grouped by isomorphism,
    /// keeping those whose endomorphism algebra has only trivial idempotents.
    fn brute_force_indecomposables(preset: QuiverPreset, cap: usize) -> usize {
        let field = f(2);
        let q = preset.quiver();
        let mut found: Vec<Representation> = Vec::new();
        for d in DimVector(vec![cap as i64; preset.rank()]).lattice_below() {
            if d.is_zero() || d.total() as usize > cap {
                continue;
            }
            let shapes: Vec<(usize, usize)> = q.arrows().iter().map(|&(s, t)| (d.0[t] as usize, d.0[s] as usize)).collect();
            let bits: usize = shapes.iter().map(|&(r, c)| r * c).sum();
            for code in 0u64..(1u64 << bits) {
                let mut k = 0;
                let maps: Vec<Mat> = shapes
                    .iter()
                    .map(|&(r, c)| {
                        let data: Vec<u32> = (0..r * c).map(|i| ((code >> (k + i)) & 1) as u32).collect();
                        k += r * c;
                        Mat::from_rows(r, c, &data)
                    })
                    .collect();
                let m = Representation::new(q.clone(), field, d.clone(), maps).unwrap();
                if !has_only_trivial_idempotents(&m) {
                    continue;
                }
                if !found.iter().any(|x| isomorphic(x, &m)) {
                    found.push(m);
                }
            }
        }
        found.len()
    }

    fn combos(basis: &[Vec<Mat>], field: PrimeField) -> Vec<Vec<Mat>> {
        let mut out = Vec::new();
        for code in 0u64..(1u64 << basis.len()) {
            let mut acc: Vec<Mat> = basis[0].iter().map(|m| Mat::zeros(m.rows(), m.cols())).collect();
            for (i, b) in basis.iter().enumerate() {
                if (code >> i) & 1 == 1 {
                    acc = acc.iter().zip(b).map(|(x, y)| x.add(y, field)).collect();
                }
            }
            out.push(acc);
        }
        out
    }

    fn has_only_trivial_idempotents(m: &Representation) -> bool {
        let field = m.field();
        let basis = m.hom_space(m).unwrap();
        combos(&basis, field)
            .iter()
            .filter(|e| e.iter().all(|x| x.mul(x, field) == *x))
            .count()
            == 2
    }

    fn isomorphic(a: &Representation, b: &Representation) -> bool {
        if a.dims() != b.dims() {
            return false;
        }
        let basis = a.hom_space(b).unwrap();
        if basis.is_empty() {
            return a.is_zero();
        }
        combos(&basis, a.field())
            .iter()
            .any(|g| g.iter().all(|x| x.rank(a.field()) == x.rows()))
    }

    #[test]
    fn brute_force_catalog_counts() {
        assert_eq!(brute_force_indecomposables(QuiverPreset::A2, 3), 3);
        assert_eq!(brute_force_indecomposables(QuiverPreset::A3, 4), 6);
    }
}
