//! Bounded complexes of projectives over linearly oriented A_n.
//!
//! The indecomposable projective at vertex `a` is the interval `[a, n-1]`, and
//! `Hom(P_a, P_b)` is one-dimensional exactly when `b <= a`, spanned by the
//! inclusion. A map `⊕ P_{a_c} -> ⊕ P_{b_r}` is therefore a scalar matrix whose
//! entry `(r, c)` may be nonzero only when `b_r <= a_c`; composition is matrix
//! multiplication.

use crate::catalog::{IndecId, IndecompCatalog};
use crate::derived::class::DerivedClass;
use crate::error::{Error, Result};
use crate::field::{Mat, PrimeField, Subspace};

/// Terms are lists of projective vertices; `diffs[k]` maps degree `lo+k` to `lo+k+1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjComplex {
    rank: usize,
    lo: i32,
    terms: Vec<Vec<usize>>,
    diffs: Vec<Mat>,
}

fn allowed(target: usize, source: usize) -> bool {
    target <= source
}

impl ProjComplex {
    pub fn zero(rank: usize) -> Self {
        ProjComplex {
            rank,
            lo: 0,
            terms: Vec::new(),
            diffs: Vec::new(),
        }
    }

    /// Build from explicit terms and differentials; checks shapes, the projective
    /// mask and `d∘d = 0`.
    pub fn new(rank: usize, lo: i32, terms: Vec<Vec<usize>>, diffs: Vec<Mat>, f: PrimeField) -> Result<Self> {
        if diffs.len() + 1 != terms.len() && !(terms.is_empty() && diffs.is_empty()) {
            return Err(Error::DimensionMismatch("need one differential between consecutive terms".into()));
        }
        let c = ProjComplex { rank, lo, terms, diffs };
        for (k, d) in c.diffs.iter().enumerate() {
            if d.rows() != c.terms[k + 1].len() || d.cols() != c.terms[k].len() {
                return Err(Error::DimensionMismatch(format!("differential {k} has the wrong shape")));
            }
            for r in 0..d.rows() {
                for col in 0..d.cols() {
                    if d.get(r, col) != 0 && !allowed(c.terms[k + 1][r], c.terms[k][col]) {
                        return Err(Error::DimensionMismatch(format!(
                            "no map P{} -> P{}",
                            c.terms[k][col] + 1,
                            c.terms[k + 1][r] + 1
                        )));
                    }
                }
            }
            if k + 1 < c.diffs.len() && !c.diffs[k + 1].mul(d, f).is_zero() {
                return Err(Error::Mismatch("d∘d ≠ 0".into()));
            }
        }
        Ok(c)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|t| t.is_empty())
    }

    /// Degrees carrying a term, as an inclusive range; `None` for the zero complex.
    pub fn support(&self) -> Option<(i32, i32)> {
        let ks: Vec<i32> = (0..self.terms.len())
            .filter(|&k| !self.terms[k].is_empty())
            .map(|k| self.lo + k as i32)
            .collect();
        Some((*ks.first()?, *ks.last()?))
    }

    pub fn term(&self, deg: i32) -> &[usize] {
        let k = deg - self.lo;
        if k < 0 || k as usize >= self.terms.len() {
            &[]
        } else {
            &self.terms[k as usize]
        }
    }

    /// Multiplicity of each projective in degree `deg`.
    pub fn multiplicities(&self, deg: i32) -> Vec<usize> {
        let mut m = vec![0; self.rank];
        for &a in self.term(deg) {
            m[a] += 1;
        }
        m
    }

    pub fn diff(&self, deg: i32) -> Mat {
        let k = deg - self.lo;
        if k < 0 || k as usize >= self.diffs.len() {
            Mat::zeros(self.term(deg + 1).len(), self.term(deg).len())
        } else {
            self.diffs[k as usize].clone()
        }
    }

    fn from_blocks(rank: usize, blocks: Vec<(i32, Vec<usize>)>, diffs: Vec<(i32, Mat)>) -> Self {
        let Some(lo) = blocks.iter().filter(|b| !b.1.is_empty()).map(|b| b.0).min() else {
            return Self::zero(rank);
        };
        let hi = blocks.iter().filter(|b| !b.1.is_empty()).map(|b| b.0).max().unwrap_or(lo);
        let mut terms = vec![Vec::new(); (hi - lo + 1) as usize];
        for (deg, t) in blocks {
            if !t.is_empty() {
                terms[(deg - lo) as usize] = t;
            }
        }
        let mut ds: Vec<Mat> = (lo..hi)
            .map(|deg| Mat::zeros(terms[(deg + 1 - lo) as usize].len(), terms[(deg - lo) as usize].len()))
            .collect();
        for (deg, d) in diffs {
            if deg >= lo && deg < hi {
                ds[(deg - lo) as usize] = d;
            }
        }
        ProjComplex { rank, lo, terms, diffs: ds }
    }

    /// Cohomology modules, reassembled as a derived class: degree `k` cohomology
    /// `M` contributes `M[-k]`. Interval multiplicities come from ranks of the
    /// vertex-to-vertex maps on `Z/B`.
    pub fn cohomology(&self, cat: &IndecompCatalog, f: PrimeField) -> Result<DerivedClass> {
        let Some((lo, hi)) = self.support() else {
            return Ok(DerivedClass::zero());
        };
        let n = self.rank;
        let mut pairs: Vec<(IndecId, i32)> = Vec::new();
        for deg in lo..=hi {
            let term = self.term(deg);
            if term.is_empty() {
                continue;
            }
            let d_out = self.diff(deg);
            let d_in = self.diff(deg - 1);
            let prev = self.term(deg - 1);
            let width = term.len();
            let alive = |t: &[usize], v: usize| -> Vec<usize> { (0..t.len()).filter(|&i| t[i] <= v).collect() };
            let cycles: Vec<Subspace> = (0..n)
                .map(|v| {
                    let cols = alive(term, v);
                    let sub = d_out.select(&(0..d_out.rows()).collect::<Vec<_>>(), &cols);
                    let vecs = sub.kernel(f).into_iter().map(|k| {
                        let mut full = vec![0u32; width];
                        for (j, &c) in cols.iter().enumerate() {
                            full[c] = k[j];
                        }
                        full
                    });
                    Subspace::span(width, vecs, f)
                })
                .collect();
            let boundaries: Vec<Subspace> = (0..n)
                .map(|v| {
                    let cols = alive(prev, v);
                    Subspace::span(width, cols.iter().map(|&c| (0..width).map(|r| d_in.get(r, c)).collect()), f)
                })
                .collect();
            let r = |i: isize, j: isize| -> i64 {
                if i < 0 || j >= n as isize || i > j {
                    return 0;
                }
                let (i, j) = (i as usize, j as usize);
                (cycles[i].sum(&boundaries[j], f).dim() - boundaries[j].dim()) as i64
            };
            for a in 0..n as isize {
                for b in a..n as isize {
                    let k = r(a, b) - r(a - 1, b) - r(a, b + 1) + r(a - 1, b + 1);
                    if k > 0 {
                        let id = cat.by_interval(a as usize, b as usize).ok_or(Error::CatalogInsufficient {
                            cap: cat.cap(),
                            needed: (b - a + 1) as usize,
                        })?;
                        pairs.extend(std::iter::repeat_n((id, -deg), k as usize));
                    }
                }
            }
        }
        Ok(DerivedClass::new(pairs))
    }
}

/// Projective resolution of a derived class: `[a, b]` with `b < n-1` resolves as
/// `P_{b+1} -> P_a`, and `X[s]` is placed so that its cohomology sits in degree `-s`.
pub fn proj_resolve(cat: &IndecompCatalog, c: &DerivedClass) -> ProjComplex {
    let n = cat.rank();
    let mut blocks: std::collections::BTreeMap<i32, Vec<usize>> = Default::default();
    let mut edges: Vec<(i32, usize, usize)> = Vec::new();
    for &(id, s) in c.pairs() {
        let e = cat.entry(id);
        let top = blocks.entry(-s).or_default();
        top.push(e.lo);
        let col_top = top.len() - 1;
        if e.hi + 1 < n {
            let low = blocks.entry(-s - 1).or_default();
            low.push(e.hi + 1);
            edges.push((-s - 1, low.len() - 1, col_top));
        }
    }
    let sizes: std::collections::BTreeMap<i32, usize> = blocks.iter().map(|(&k, v)| (k, v.len())).collect();
    let mut diffs: std::collections::BTreeMap<i32, Mat> = Default::default();
    for (deg, src, dst) in edges {
        let rows = sizes.get(&(deg + 1)).copied().unwrap_or(0);
        let cols = sizes[&deg];
        diffs.entry(deg).or_insert_with(|| Mat::zeros(rows, cols)).set(dst, src, 1);
    }
    ProjComplex::from_blocks(n, blocks.into_iter().collect(), diffs.into_iter().collect())
}

/// A degree-zero chain map, one matrix per degree of `lo..=hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    lo: i32,
    comps: Vec<Mat>,
}

impl ChainMap {
    pub fn component(&self, deg: i32) -> Option<&Mat> {
        let k = deg - self.lo;
        (k >= 0).then(|| self.comps.get(k as usize)).flatten()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Mat::is_zero)
    }
}

/// `Hom(P, Q)` in the homotopy category: chain maps modulo null-homotopic ones,
/// presented by a basis of a complement to the homotopies.
#[derive(Clone, Debug)]
pub struct HomSpace {
    source: ProjComplex,
    target: ProjComplex,
    field: PrimeField,
    lo: i32,
    hi: i32,
    /// (degree, target row, source column) for each free entry.
    slots: Vec<(i32, usize, usize)>,
    basis: Vec<Vec<u32>>,
    homotopies: Subspace,
}

impl HomSpace {
    pub fn new(source: &ProjComplex, target: &ProjComplex, field: PrimeField) -> Self {
        let (lo, hi) = match (source.support(), target.support()) {
            (Some(a), Some(b)) => (a.0.max(b.0), a.1.min(b.1)),
            _ => (0, -1),
        };
        let mut slots = Vec::new();
        for deg in lo..=hi {
            let (s, t) = (source.term(deg), target.term(deg));
            for (r, &b) in t.iter().enumerate() {
                for (c, &a) in s.iter().enumerate() {
                    if allowed(b, a) {
                        slots.push((deg, r, c));
                    }
                }
            }
        }
        let mut hs = HomSpace {
            source: source.clone(),
            target: target.clone(),
            field,
            lo,
            hi,
            slots,
            basis: Vec::new(),
            homotopies: Subspace::zero(0),
        };
        hs.solve();
        hs
    }

    fn assemble(&self, v: &[u32]) -> ChainMap {
        let mut comps: Vec<Mat> = (self.lo..=self.hi)
            .map(|deg| Mat::zeros(self.target.term(deg).len(), self.source.term(deg).len()))
            .collect();
        for (i, &(deg, r, c)) in self.slots.iter().enumerate() {
            comps[(deg - self.lo) as usize].set(r, c, v[i]);
        }
        ChainMap { lo: self.lo, comps }
    }

    fn flatten(&self, m: &ChainMap) -> Vec<u32> {
        self.slots
            .iter()
            .map(|&(deg, r, c)| m.component(deg).map_or(0, |x| x.get(r, c)))
            .collect()
    }

    fn comp_or_zero(&self, m: &ChainMap, deg: i32) -> Mat {
        m.component(deg)
            .cloned()
            .unwrap_or_else(|| Mat::zeros(self.target.term(deg).len(), self.source.term(deg).len()))
    }

    fn solve(&mut self) {
        let f = self.field;
        let nslots = self.slots.len();
        // Chain condition d_Q f^k - f^{k+1} d_P = 0, one column per slot.
        let mut rows: Vec<Vec<u32>> = Vec::new();
        for deg in self.lo - 1..=self.hi {
            let tq = self.target.term(deg + 1).len();
            let sp = self.source.term(deg).len();
            if tq == 0 || sp == 0 {
                continue;
            }
            let base = rows.len();
            rows.extend(std::iter::repeat_n(vec![0u32; nslots], tq * sp));
            let dq = self.target.diff(deg);
            let dp = self.source.diff(deg);
            for (i, &(k, r, c)) in self.slots.iter().enumerate() {
                if k == deg {
                    for r2 in 0..tq {
                        let x = dq.get(r2, r);
                        if x != 0 {
                            let e = &mut rows[base + r2 * sp + c][i];
                            *e = f.add(*e, x);
                        }
                    }
                } else if k == deg + 1 {
                    for c0 in 0..sp {
                        let x = dp.get(c, c0);
                        if x != 0 {
                            let e = &mut rows[base + r * sp + c0][i];
                            *e = f.sub(*e, x);
                        }
                    }
                }
            }
        }
        let system = Mat::from_row_vecs(nslots, &rows);
        let cycles = system.kernel(f);
        // Null-homotopic maps d_Q h^k + h^{k+1} d_P for each elementary h.
        let mut null = Vec::new();
        for deg in self.lo..=self.hi + 1 {
            let s = self.source.term(deg);
            let t = self.target.term(deg - 1);
            for (r, &b) in t.iter().enumerate() {
                for (c, &a) in s.iter().enumerate() {
                    if !allowed(b, a) {
                        continue;
                    }
                    let mut h = Mat::zeros(t.len(), s.len());
                    h.set(r, c, 1);
                    let mut comps = Vec::new();
                    for k in self.lo..=self.hi {
                        let mut m = Mat::zeros(self.target.term(k).len(), self.source.term(k).len());
                        if k == deg - 1 {
                            m = m.add(&h.mul(&self.source.diff(k), f), f);
                        }
                        if k == deg {
                            m = m.add(&self.target.diff(k - 1).mul(&h, f), f);
                        }
                        comps.push(m);
                    }
                    null.push(self.flatten(&ChainMap { lo: self.lo, comps }));
                }
            }
        }
        let homotopies = Subspace::span(nslots, null, f);
        let mut acc = homotopies.clone();
        let mut basis = Vec::new();
        for z in cycles {
            if !acc.contains(&z, f) {
                acc = acc.sum(&Subspace::span(nslots, [z.clone()], f), f);
                basis.push(z);
            }
        }
        self.basis = basis;
        self.homotopies = homotopies;
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Number of homotopy classes, `q^dim`.
    pub fn cardinality(&self) -> u128 {
        (self.field.q() as u128).pow(self.dim() as u32)
    }

    pub fn basis_maps(&self) -> Vec<ChainMap> {
        self.basis.iter().map(|v| self.assemble(v)).collect()
    }

    /// The representative with coordinates `coeffs` in the complement basis.
    pub fn combination(&self, coeffs: &[u32]) -> ChainMap {
        let f = self.field;
        let mut v = vec![0u32; self.slots.len()];
        for (b, &x) in self.basis.iter().zip(coeffs) {
            for (vi, &bi) in v.iter_mut().zip(b) {
                *vi = f.add(*vi, f.mul(x, bi));
            }
        }
        self.assemble(&v)
    }

    /// One representative per homotopy class.
    pub fn representatives(&self) -> impl Iterator<Item = ChainMap> + '_ {
        let p = self.field.p();
        let d = self.dim();
        (0..self.cardinality()).map(move |mut idx| {
            let mut coeffs = vec![0u32; d];
            for c in coeffs.iter_mut() {
                *c = (idx % p as u128) as u32;
                idx /= p as u128;
            }
            self.combination(&coeffs)
        })
    }

    /// Is `m` a chain map homotopic to zero?
    pub fn is_null_homotopic(&self, m: &ChainMap) -> bool {
        self.homotopies.contains(&self.flatten(m), self.field)
    }

    pub fn is_chain_map(&self, m: &ChainMap) -> bool {
        let f = self.field;
        (self.lo - 1..=self.hi).all(|deg| {
            let lhs = self.target.diff(deg).mul(&self.comp_or_zero(m, deg), f);
            let rhs = self.comp_or_zero(m, deg + 1).mul(&self.source.diff(deg), f);
            lhs == rhs
        })
    }

    /// Adds a random null-homotopic map; used to test independence of representatives.
    pub fn perturb(&self, m: &ChainMap, coeffs: &[u32]) -> ChainMap {
        let f = self.field;
        let mut v = self.flatten(m);
        for (b, &x) in self.homotopies.basis().iter().zip(coeffs) {
            for (vi, &bi) in v.iter_mut().zip(b) {
                *vi = f.add(*vi, f.mul(x, bi));
            }
        }
        self.assemble(&v)
    }

    pub fn homotopy_dim(&self) -> usize {
        self.homotopies.dim()
    }

    /// Mapping cone: `Cone^k = P^{k+1} ⊕ Q^k`, `d = [[-d_P, 0], [m, d_Q]]`.
    pub fn cone(&self, m: &ChainMap) -> ProjComplex {
        let f = self.field;
        let (p, q) = (&self.source, &self.target);
        let range = |c: &ProjComplex| c.support().unwrap_or((0, -1));
        let lo = (range(p).0 - 1).min(range(q).0);
        let hi = (range(p).1 - 1).max(range(q).1);
        let mut blocks = Vec::new();
        let mut diffs = Vec::new();
        for deg in lo..=hi {
            let mut t = p.term(deg + 1).to_vec();
            t.extend_from_slice(q.term(deg));
            blocks.push((deg, t));
        }
        for deg in lo..hi {
            let (p1, q0) = (p.term(deg + 1).len(), q.term(deg).len());
            let (p2, q1) = (p.term(deg + 2).len(), q.term(deg + 1).len());
            let mut d = Mat::zeros(p2 + q1, p1 + q0);
            let dp = p.diff(deg + 1);
            let dq = q.diff(deg);
            let mk = self.comp_or_zero(m, deg + 1);
            for r in 0..p2 {
                for c in 0..p1 {
                    d.set(r, c, f.neg(dp.get(r, c)));
                }
            }
            for r in 0..q1 {
                for c in 0..p1 {
                    d.set(p2 + r, c, mk.get(r, c));
                }
                for c in 0..q0 {
                    d.set(p2 + r, p1 + c, dq.get(r, c));
                }
            }
            diffs.push((deg, d));
        }
        ProjComplex::from_blocks(p.rank, blocks, diffs)
    }
}
