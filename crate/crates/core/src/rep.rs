//! Finite-field representations of a quiver and the linear algebra on them:
//! morphism spaces, subrepresentations, quotients, automorphism counts.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{subspaces_containing, Mat, PrimeField, Subspace};
use crate::quiver::{DimVector, Quiver};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Representation {
    quiver: Quiver,
    field: PrimeField,
    dims: DimVector,
    /// One `dims[target] x dims[source]` matrix per arrow.
    maps: Vec<Mat>,
}

/// A morphism of representations: one matrix per vertex.
pub type Morphism = Vec<Mat>;

/// A subrepresentation given by one subspace per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubRep {
    pub spaces: Vec<Subspace>,
}

impl SubRep {
    pub fn dim_vector(&self) -> DimVector {
        DimVector(self.spaces.iter().map(|s| s.dim() as i64).collect())
    }
}

impl Representation {
    pub fn new(quiver: Quiver, field: PrimeField, dims: DimVector, maps: Vec<Mat>) -> Result<Self> {
        quiver.check_dim(&dims)?;
        if !dims.is_nonnegative() {
            return Err(Error::DimensionMismatch(format!("negative dimension vector {dims}")));
        }
        if maps.len() != quiver.arrows().len() {
            return Err(Error::DimensionMismatch("one matrix per arrow required".into()));
        }
        for (m, &(s, t)) in maps.iter().zip(quiver.arrows()) {
            if m.rows() != dims.0[t] as usize || m.cols() != dims.0[s] as usize {
                return Err(Error::DimensionMismatch(format!(
                    "arrow {s}->{t} needs a {}x{} matrix",
                    dims.0[t], dims.0[s]
                )));
            }
            if m.entries().iter().any(|&x| x >= field.p()) {
                return Err(Error::DimensionMismatch("matrix entries not reduced".into()));
            }
        }
        Ok(Representation {
            quiver,
            field,
            dims,
            maps,
        })
    }

    pub fn zero(quiver: Quiver, field: PrimeField) -> Self {
        let n = quiver.vertex_count();
        let maps = quiver.arrows().iter().map(|_| Mat::zeros(0, 0)).collect();
        Representation {
            quiver,
            field,
            dims: DimVector::zero(n),
            maps,
        }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dims(&self) -> &DimVector {
        &self.dims
    }

    pub fn dim_at(&self, v: usize) -> usize {
        self.dims.0[v] as usize
    }

    pub fn maps(&self) -> &[Mat] {
        &self.maps
    }

    pub fn total_dim(&self) -> usize {
        self.dims.total() as usize
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_zero()
    }

    fn check_compatible(&self, other: &Representation) -> Result<()> {
        if self.field != other.field || self.quiver != other.quiver {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn direct_sum(&self, other: &Representation) -> Result<Representation> {
        self.check_compatible(other)?;
        let dims = &self.dims + &other.dims;
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(a, b)| block_diag(a, b))
            .collect();
        Ok(Representation {
            quiver: self.quiver.clone(),
            field: self.field,
            dims,
            maps,
        })
    }

    /// Transport the structure along per-vertex invertible matrices g_v:
    /// new arrow map is g_t A g_s^{-1}.
    pub fn conjugate(&self, g: &[Mat]) -> Result<Representation> {
        let f = self.field;
        let mut maps = Vec::with_capacity(self.maps.len());
        for (a, &(s, t)) in self.maps.iter().zip(self.quiver.arrows()) {
            let ginv = invert(&g[s], f).ok_or_else(|| Error::InvalidSpec("basis change not invertible".into()))?;
            maps.push(g[t].mul(a, f).mul(&ginv, f));
        }
        Representation::new(self.quiver.clone(), f, self.dims.clone(), maps)
    }

    /// Basis of Hom(self, other): solutions of the commuting-square system.
    pub fn hom_space(&self, other: &Representation) -> Result<Vec<Morphism>> {
        self.check_compatible(other)?;
        let f = self.field;
        let n = self.quiver.vertex_count();
        let mut offset = vec![0usize; n + 1];
        for v in 0..n {
            offset[v + 1] = offset[v] + other.dim_at(v) * self.dim_at(v);
        }
        let nvars = offset[n];
        let var = |v: usize, r: usize, c: usize| offset[v] + r * self.dim_at(v) + c;

        let mut rows: Vec<Vec<u32>> = Vec::new();
        for (k, &(s, t)) in self.quiver.arrows().iter().enumerate() {
            let a_m = &self.maps[k];
            let a_n = &other.maps[k];
            // (A_N f_s - f_t A_M)[i][j] = 0
            for i in 0..other.dim_at(t) {
                for j in 0..self.dim_at(s) {
                    let mut row = vec![0u32; nvars];
                    for kk in 0..other.dim_at(s) {
                        let c = a_n.get(i, kk);
                        if c != 0 {
                            let idx = var(s, kk, j);
                            row[idx] = f.add(row[idx], c);
                        }
                    }
                    for kk in 0..self.dim_at(t) {
                        let c = a_m.get(kk, j);
                        if c != 0 {
                            let idx = var(t, i, kk);
                            row[idx] = f.sub(row[idx], c);
                        }
                    }
                    rows.push(row);
                }
            }
        }
        let basis = if rows.is_empty() {
            (0..nvars)
                .map(|i| {
                    let mut v = vec![0; nvars];
                    v[i] = 1;
                    v
                })
                .collect()
        } else {
            Mat::from_row_vecs(nvars, &rows).kernel(f)
        };
        Ok(basis
            .into_iter()
            .map(|x| {
                (0..n)
                    .map(|v| Mat::from_rows(other.dim_at(v), self.dim_at(v), &x[offset[v]..offset[v + 1]]))
                    .collect()
            })
            .collect())
    }

    pub fn hom_dim(&self, other: &Representation) -> Result<usize> {
        Ok(self.hom_space(other)?.len())
    }

    /// dim Ext^1 via the hereditary identity dim Ext = dim Hom - <dim M, dim N>.
    pub fn ext_dim(&self, other: &Representation) -> Result<usize> {
        let hom = self.hom_dim(other)? as i64;
        let euler = self.quiver.euler_form(&self.dims, &other.dims)?;
        let ext = hom - euler;
        debug_assert!(ext >= 0);
        Ok(ext as usize)
    }

    /// All subrepresentations of dimension vector `d`.
    ///
    /// Vertices are visited in topological order; at each vertex only
    /// subspaces containing the images of the already chosen subspaces are
    /// generated, so every tuple produced is arrow-closed.
    pub fn enumerate_subreps(&self, d: &DimVector) -> Result<Vec<SubRep>> {
        self.quiver.check_dim(d)?;
        if !d.is_nonnegative() || !d.le(&self.dims) {
            return Err(Error::DimensionMismatch(format!("{d} is not below {}", self.dims)));
        }
        let order = self.quiver.topological_order().expect("acyclic");
        let n = self.quiver.vertex_count();
        let mut out = Vec::new();
        let mut chosen: Vec<Option<Subspace>> = vec![None; n];
        self.subrep_dfs(&order, 0, d, &mut chosen, &mut out);
        Ok(out)
    }

    fn subrep_dfs(
        &self,
        order: &[usize],
        depth: usize,
        d: &DimVector,
        chosen: &mut Vec<Option<Subspace>>,
        out: &mut Vec<SubRep>,
    ) {
        if depth == order.len() {
            out.push(SubRep {
                spaces: chosen.iter().map(|s| s.clone().expect("all vertices chosen")).collect(),
            });
            return;
        }
        let f = self.field;
        let v = order[depth];
        let amb = self.dim_at(v);
        let mut required = Subspace::zero(amb);
        for (k, &(s, t)) in self.quiver.arrows().iter().enumerate() {
            if t == v {
                let img = chosen[s].as_ref().expect("topological order").image(&self.maps[k], f);
                required = required.sum(&img, f);
            }
        }
        for w in subspaces_containing(&required, d.0[v] as usize, f) {
            chosen[v] = Some(w);
            self.subrep_dfs(order, depth + 1, d, chosen, out);
        }
        chosen[v] = None;
    }

    /// The subrepresentation itself, in the RREF bases of its subspaces.
    pub fn restrict(&self, sub: &SubRep) -> Representation {
        let f = self.field;
        let dims = sub.dim_vector();
        let maps = self
            .quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(k, &(s, t))| {
                let src = &sub.spaces[s];
                let dst = &sub.spaces[t];
                let mut m = Mat::zeros(dst.dim(), src.dim());
                for (j, b) in src.basis().iter().enumerate() {
                    let img = self.maps[k].apply(b, f);
                    let c = dst.coords(&img, f).expect("subrepresentation is arrow-closed");
                    for (i, x) in c.into_iter().enumerate() {
                        m.set(i, j, x);
                    }
                }
                m
            })
            .collect();
        Representation {
            quiver: self.quiver.clone(),
            field: f,
            dims,
            maps,
        }
    }

    /// The quotient representation, in coordinates on the non-pivot columns.
    pub fn quotient(&self, sub: &SubRep) -> Representation {
        let f = self.field;
        let n = self.quiver.vertex_count();
        let free: Vec<Vec<usize>> = sub.spaces.iter().map(|s| s.free_columns()).collect();
        let dims = DimVector((0..n).map(|v| free[v].len() as i64).collect());
        let maps = self
            .quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(k, &(s, t))| {
                let mut m = Mat::zeros(free[t].len(), free[s].len());
                for (j, &c) in free[s].iter().enumerate() {
                    let mut e = vec![0u32; self.dim_at(s)];
                    e[c] = 1;
                    let img = sub.spaces[t].reduce(&self.maps[k].apply(&e, f), f);
                    for (i, &r) in free[t].iter().enumerate() {
                        m.set(i, j, img[r]);
                    }
                }
                m
            })
            .collect();
        Representation {
            quiver: self.quiver.clone(),
            field: f,
            dims,
            maps,
        }
    }

    /// |Aut(M)| by brute force: count invertible elements of End(M).
    pub fn aut_count_brute(&self) -> Result<u128> {
        let basis = self.hom_space(self)?;
        if basis.len() > 24 {
            return Err(Error::CapExceeded(format!("End has dimension {}", basis.len())));
        }
        let f = self.field;
        let total = (f.p() as u128).pow(basis.len() as u32);
        let mut units = 0u128;
        let mut coeffs = vec![0u32; basis.len()];
        for code in 0..total {
            let mut c = code;
            for x in coeffs.iter_mut() {
                *x = (c % f.p() as u128) as u32;
                c /= f.p() as u128;
            }
            let invertible = (0..self.quiver.vertex_count()).all(|v| {
                let dv = self.dim_at(v);
                let mut m = Mat::zeros(dv, dv);
                for (b, &x) in basis.iter().zip(&coeffs) {
                    if x != 0 {
                        m = m.add(&b[v].scale(x, f), f);
                    }
                }
                m.rank(f) == dv
            });
            if invertible {
                units += 1;
            }
        }
        Ok(units)
    }
}

pub fn block_diag(a: &Mat, b: &Mat) -> Mat {
    let mut m = Mat::zeros(a.rows() + b.rows(), a.cols() + b.cols());
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            m.set(r, c, a.get(r, c));
        }
    }
    for r in 0..b.rows() {
        for c in 0..b.cols() {
            m.set(a.rows() + r, a.cols() + c, b.get(r, c));
        }
    }
    m
}

pub fn invert(m: &Mat, f: PrimeField) -> Option<Mat> {
    let n = m.rows();
    if n != m.cols() {
        return None;
    }
    let mut aug = Mat::zeros(n, 2 * n);
    for r in 0..n {
        for c in 0..n {
            aug.set(r, c, m.get(r, c));
        }
        aug.set(r, n + r, 1);
    }
    let piv = aug.rref_in_place(f);
    if piv.len() < n || piv[n - 1] >= n {
        return None;
    }
    let rows: Vec<usize> = (0..n).collect();
    let cols: Vec<usize> = (n..2 * n).collect();
    Some(aug.select(&rows, &cols))
}
