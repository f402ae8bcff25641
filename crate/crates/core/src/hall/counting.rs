//! Filtration counts over F_p and their interpolated Hall polynomials.

use num_rational::BigRational;
use num_traits::Zero;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use super::poly::HallPolynomial;
use crate::catalog::{IndecompCatalog, ModuleClass};
use crate::error::{Error, Result};
use crate::field::{PrimeField, PRIME_ALLOWLIST};
use crate::quiver::DimVector;

/// For fixed L and sub-dimension d: number of subrepresentations U of L
/// with dim U = d, keyed by the classes of (U, L/U).
pub type SplitTable = BTreeMap<(ModuleClass, ModuleClass), u128>;

type TableKey = (ModuleClass, DimVector);

/// Memoized filtration counter over one prime field.
#[derive(Debug)]
pub struct SplitCounter {
    catalog: Arc<IndecompCatalog>,
    field: PrimeField,
    cache: Mutex<HashMap<TableKey, Arc<SplitTable>>>,
}

impl SplitCounter {
    pub fn new(catalog: Arc<IndecompCatalog>, field: PrimeField) -> Self {
        SplitCounter {
            catalog,
            field,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn catalog(&self) -> &Arc<IndecompCatalog> {
        &self.catalog
    }

    pub fn table(&self, l: &ModuleClass, d: &DimVector) -> Result<Arc<SplitTable>> {
        let key = (l.clone(), d.clone());
        if let Some(t) = self.cache.lock().expect("cache poisoned").get(&key) {
            return Ok(Arc::clone(t));
        }
        let cat = &self.catalog;
        let total = cat.dim_of(l).total() as usize;
        if total > cat.cap() {
            return Err(Error::CapExceeded(format!("class of total dimension {total} above cap {}", cat.cap())));
        }
        let rep = cat.build_rep(l, self.field);
        let mut table = SplitTable::new();
        if d.is_nonnegative() && d.le(rep.dims()) {
            for sub in rep.enumerate_subreps(d)? {
                let m = cat.decompose_by_ranks(&rep.restrict(&sub))?;
                let n = cat.decompose_by_ranks(&rep.quotient(&sub))?;
                *table.entry((m, n)).or_insert(0) += 1;
            }
        }
        let table = Arc::new(table);
        self.cache
            .lock()
            .expect("cache poisoned")
            .insert(key, Arc::clone(&table));
        Ok(table)
    }

    /// Number of subrepresentations U of L with U of class M and L/U of class N.
    pub fn hall_count(&self, m: &ModuleClass, n: &ModuleClass, l: &ModuleClass) -> Result<u128> {
        let cat = &self.catalog;
        if &cat.dim_of(m) + &cat.dim_of(n) != cat.dim_of(l) {
            return Ok(0);
        }
        let t = self.table(l, &cat.dim_of(m))?;
        Ok(t.get(&(m.clone(), n.clone())).copied().unwrap_or(0))
    }

    /// Chains 0 = X_0 ⊆ ... ⊆ X_r = X with X_i / X_{i-1} of class parts[i-1].
    pub fn count_filtrations(&self, parts: &[ModuleClass], x: &ModuleClass) -> Result<u128> {
        let cat = &self.catalog;
        let sum = parts
            .iter()
            .fold(DimVector::zero(cat.rank()), |acc, p| &acc + &cat.dim_of(p));
        if sum != cat.dim_of(x) {
            return Ok(0);
        }
        match parts {
            [] => Ok(u128::from(x.is_zero())),
            [only] => Ok(u128::from(only == x)),
            [first, rest @ ..] => {
                let t = self.table(x, &cat.dim_of(first))?;
                let mut total = 0u128;
                for ((m, n), c) in t.iter() {
                    if m == first {
                        total += c * self.count_filtrations(rest, n)?;
                    }
                }
                Ok(total)
            }
        }
    }
}

/// Σ_v Σ_{i<j} d_{i,v} d_{j,v}: the dimension of the product of partial flag
/// varieties containing the filtration variety, hence a degree bound.
pub fn flag_degree_bound(dims: &[DimVector]) -> usize {
    let Some(first) = dims.first() else { return 0 };
    let mut total = 0i64;
    for v in 0..first.len() {
        for i in 0..dims.len() {
            for j in i + 1..dims.len() {
                total += dims[i].0[v] * dims[j].0[v];
            }
        }
    }
    total as usize
}

/// Filtration counters at every allowlisted prime, plus fitted polynomials.
#[derive(Debug)]
pub struct PolynomialCounter {
    catalog: Arc<IndecompCatalog>,
    counters: Vec<SplitCounter>,
    cache: Mutex<HashMap<TableKey, Arc<BTreeMap<(ModuleClass, ModuleClass), HallPolynomial>>>>,
}

impl PolynomialCounter {
    pub fn new(catalog: Arc<IndecompCatalog>) -> Self {
        let counters = PRIME_ALLOWLIST
            .iter()
            .map(|&p| SplitCounter::new(Arc::clone(&catalog), PrimeField::new(p).expect("allowlisted primes are prime")))
            .collect();
        PolynomialCounter {
            catalog,
            counters,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn counter(&self, p: u32) -> Result<&SplitCounter> {
        self.counters
            .iter()
            .find(|c| c.field().p() == p)
            .ok_or(Error::PrimeNotAllowed(p))
    }

    /// Hall polynomials for every (M, N) splitting L with dim M = d.
    pub fn table(&self, l: &ModuleClass, d: &DimVector) -> Result<Arc<BTreeMap<(ModuleClass, ModuleClass), HallPolynomial>>> {
        let key = (l.clone(), d.clone());
        if let Some(t) = self.cache.lock().expect("cache poisoned").get(&key) {
            return Ok(Arc::clone(t));
        }
        let quot = &self.catalog.dim_of(l) - d;
        let budget = flag_degree_bound(&[d.clone(), quot]);
        let mut samples: Vec<(i64, Arc<SplitTable>)> = Vec::new();
        let mut previous: Option<BTreeMap<_, HallPolynomial>> = None;
        let mut result = None;
        for c in &self.counters {
            samples.push((i64::from(c.field().p()), c.table(l, d)?));
            let keys: BTreeSet<&(ModuleClass, ModuleClass)> = samples.iter().flat_map(|(_, t)| t.keys()).collect();
            let fits: BTreeMap<(ModuleClass, ModuleClass), HallPolynomial> = keys
                .into_iter()
                .map(|k| {
                    let pts: Vec<(i64, BigRational)> = samples
                        .iter()
                        .map(|(x, t)| (*x, BigRational::from_integer(t.get(k).copied().unwrap_or(0).into())))
                        .collect();
                    (k.clone(), HallPolynomial::interpolate(&pts))
                })
                .filter(|(_, p)| p.degree().is_some())
                .collect();
            if samples.len() >= budget + 2 && previous.as_ref() == Some(&fits) {
                result = Some(fits);
                break;
            }
            previous = Some(fits);
        }
        let table = Arc::new(result.ok_or(Error::NoStabilization(self.counters.len()))?);
        self.cache
            .lock()
            .expect("cache poisoned")
            .insert(key, Arc::clone(&table));
        Ok(table)
    }

    pub fn hall_polynomial_pair(&self, m: &ModuleClass, n: &ModuleClass, l: &ModuleClass) -> Result<HallPolynomial> {
        let cat = &self.catalog;
        if &cat.dim_of(m) + &cat.dim_of(n) != cat.dim_of(l) {
            return Ok(HallPolynomial::new(Vec::new()));
        }
        let t = self.table(l, &cat.dim_of(m))?;
        Ok(t.get(&(m.clone(), n.clone())).cloned().unwrap_or_else(|| HallPolynomial::new(Vec::new())))
    }

    /// Hall polynomial of an arbitrary filtration type, fitted directly
    /// from filtration counts.
    pub fn hall_polynomial(&self, parts: &[ModuleClass], x: &ModuleClass) -> Result<HallPolynomial> {
        let dims: Vec<DimVector> = parts.iter().map(|p| self.catalog.dim_of(p)).collect();
        HallPolynomial::fit(flag_degree_bound(&dims), |p| {
            let c = self.counter(p)?.count_filtrations(parts, x)?;
            Ok(BigRational::from_integer(c.into()))
        })
    }

    pub fn euler_count(&self, m: &ModuleClass, n: &ModuleClass, l: &ModuleClass) -> Result<BigRational> {
        let v = self.hall_polynomial_pair(m, n, l)?.euler_value();
        Ok(if v.is_zero() { BigRational::zero() } else { v })
    }
}
