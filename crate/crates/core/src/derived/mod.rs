//! The derived Hall algebra of `D^b(rep Q)` for the linear type-A presets.

pub mod class;
pub mod complex;
pub mod element;
pub mod stability;
pub mod verify;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

pub use class::{DerivedClass, TruncationProfile};
pub use complex::{proj_resolve, ChainMap, HomSpace, ProjComplex};
pub use element::DHallElement;
pub use stability::{DHnFiltration, HeartSpec, StabilityCondition};

use crate::catalog::{IndecompCatalog, ModuleClass};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::hall::element::CoefficientField;

/// Counts of homotopy classes of maps, keyed by the class of their cone.
pub type ConeFibres = BTreeMap<DerivedClass, u128>;

type PairKey = (DerivedClass, DerivedClass);

/// Derived Hall numbers over one prime field, with memoized cone fibres.
#[derive(Debug)]
pub struct DerivedHall {
    catalog: Arc<IndecompCatalog>,
    field: PrimeField,
    quotient_fibres: Mutex<HashMap<PairKey, Arc<ConeFibres>>>,
    sub_fibres: Mutex<HashMap<PairKey, Arc<ConeFibres>>>,
}

fn q_power(q: u64, e: i64) -> BigRational {
    let base = BigRational::from_integer(BigInt::from(q));
    if e >= 0 {
        num_traits::pow(base, e as usize)
    } else {
        num_traits::pow(base.recip(), (-e) as usize)
    }
}

impl DerivedHall {
    /// Needs every interval module in the catalog, so that cohomology of any
    /// cone can be named.
    pub fn new(catalog: Arc<IndecompCatalog>, field: PrimeField) -> Result<Self> {
        let n = catalog.rank();
        if catalog.len() != n * (n + 1) / 2 {
            return Err(Error::CatalogInsufficient {
                cap: catalog.cap(),
                needed: n,
            });
        }
        Ok(DerivedHall {
            catalog,
            field,
            quotient_fibres: Mutex::new(HashMap::new()),
            sub_fibres: Mutex::new(HashMap::new()),
        })
    }

    pub fn catalog(&self) -> &Arc<IndecompCatalog> {
        &self.catalog
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn coefficient_field(&self) -> CoefficientField {
        CoefficientField::Prime(self.field)
    }

    pub fn resolve(&self, c: &DerivedClass) -> ProjComplex {
        proj_resolve(&self.catalog, c)
    }

    /// `Hom_D(L, N[t])` as chain maps modulo homotopy.
    pub fn dhom(&self, l: &DerivedClass, n: &DerivedClass, t: i32) -> HomSpace {
        HomSpace::new(&self.resolve(l), &self.resolve(&n.shift(t)), self.field)
    }

    /// `dim Hom_D(L, N[t])` from the hereditary formula
    /// `Hom(X[a], Y[b]) = Ext^{b-a}(X, Y)`.
    pub fn dhom_dim(&self, l: &DerivedClass, n: &DerivedClass, t: i32) -> usize {
        let cat = &self.catalog;
        let mut d = 0;
        for &(x, a) in l.pairs() {
            for &(y, b) in n.pairs() {
                d += match b + t - a {
                    0 => cat.hom_dim(x, y),
                    1 => cat.ext_dim(x, y),
                    _ => 0,
                };
            }
        }
        d
    }

    pub fn cone_class(&self, hom: &HomSpace, f: &ChainMap) -> Result<DerivedClass> {
        hom.cone(f).cohomology(&self.catalog, self.field)
    }

    /// `|Aut N| = q^(dim End - Σ m²) · Π |GL_m(q)|`; the radical quotient of
    /// `End_D(N)` is a product of matrix rings over the ground field.
    pub fn daut_count(&self, n: &DerivedClass) -> Result<u128> {
        let sq: usize = n.multiplicities().iter().map(|&(_, m)| m * m).sum();
        let rad = self.dhom_dim(n, n, 0) - sq;
        let overflow = || Error::CapExceeded("automorphism count overflows".into());
        let mut out = (self.field.q() as u128).checked_pow(rad as u32).ok_or_else(overflow)?;
        for (_, m) in n.multiplicities() {
            out = out.checked_mul(self.field.gl_order(m)).ok_or_else(overflow)?;
        }
        Ok(out)
    }

    /// Count of endomorphisms with acyclic cone; feasible up to `dim End <= 12`.
    pub fn daut_count_brute(&self, n: &DerivedClass) -> Result<u128> {
        let hom = self.dhom(n, n, 0);
        if hom.dim() > 12 {
            return Err(Error::CapExceeded(format!("dim End = {} above 12", hom.dim())));
        }
        let mut count = 0;
        for f in hom.representatives() {
            if self.cone_class(&hom, &f)?.is_zero() {
                count += 1;
            }
        }
        Ok(count)
    }

    /// Exponent `e` with `{L, N} = q^e`.
    pub fn braces_exponent(&self, l: &DerivedClass, n: &DerivedClass) -> i64 {
        let cat = &self.catalog;
        let sign = |i: i32| if i % 2 == 0 { 1 } else { -1 };
        let mut e = 0i64;
        for &(x, a) in l.pairs() {
            for &(y, b) in n.pairs() {
                // Hom(X[a+i], Y[b]) is Hom for i = b-a and Ext^1 for i = b-a-1.
                let i = b - a;
                if i >= 1 {
                    e += sign(i) * cat.hom_dim(x, y) as i64;
                }
                if i > 1 {
                    e += sign(i - 1) * cat.ext_dim(x, y) as i64;
                }
            }
        }
        e
    }

    /// `{L, N} = Π_{i>0} |Hom(L[i], N)|^{(-1)^i}`.
    pub fn braces(&self, l: &DerivedClass, n: &DerivedClass) -> BigRational {
        q_power(self.field.q(), self.braces_exponent(l, n))
    }

    /// For every homotopy class `f: L -> N`, the class of `cone f`.
    pub fn quotient_fibres(&self, l: &DerivedClass, n: &DerivedClass) -> Result<Arc<ConeFibres>> {
        let key = (l.clone(), n.clone());
        if let Some(t) = self.quotient_fibres.lock().expect("cache poisoned").get(&key) {
            return Ok(Arc::clone(t));
        }
        let t = Arc::new(self.fibres(l, n)?);
        self.quotient_fibres.lock().expect("cache poisoned").insert(key, Arc::clone(&t));
        Ok(t)
    }

    /// For every homotopy class `g: M -> L`, the class of `cone g`.
    pub fn sub_fibres(&self, m: &DerivedClass, l: &DerivedClass) -> Result<Arc<ConeFibres>> {
        let key = (m.clone(), l.clone());
        if let Some(t) = self.sub_fibres.lock().expect("cache poisoned").get(&key) {
            return Ok(Arc::clone(t));
        }
        let t = Arc::new(self.fibres(m, l)?);
        self.sub_fibres.lock().expect("cache poisoned").insert(key, Arc::clone(&t));
        Ok(t)
    }

    fn fibres(&self, from: &DerivedClass, to: &DerivedClass) -> Result<ConeFibres> {
        let hom = self.dhom(from, to, 0);
        if hom.dim() > 16 {
            return Err(Error::CapExceeded(format!("Hom space of dimension {} too large to enumerate", hom.dim())));
        }
        let mut out = ConeFibres::new();
        for f in hom.representatives() {
            *out.entry(self.cone_class(&hom, &f)?).or_insert(0) += 1;
        }
        Ok(out)
    }

    /// `F^L_{MN} = |(L,N)_{M[1]}| / |Aut N| · {L,N} / {N,N}`.
    pub fn dhall_number(&self, m: &DerivedClass, n: &DerivedClass, l: &DerivedClass) -> Result<BigRational> {
        let cat = &self.catalog;
        if &m.k0(cat) + &n.k0(cat) != l.k0(cat) {
            return Ok(BigRational::zero());
        }
        let count = self.quotient_fibres(l, n)?.get(&m.shift(1)).copied().unwrap_or(0);
        if count == 0 {
            return Ok(BigRational::zero());
        }
        let aut = self.daut_count(n)?;
        let e = self.braces_exponent(l, n) - self.braces_exponent(n, n);
        Ok(BigRational::new(BigInt::from(count), BigInt::from(aut)) * q_power(self.field.q(), e))
    }

    /// The same number counted from the other end:
    /// `|(M,L)_N| / |Aut M| · {M,L} / {M,M}`.
    pub fn dhall_number_dual(&self, m: &DerivedClass, n: &DerivedClass, l: &DerivedClass) -> Result<BigRational> {
        let cat = &self.catalog;
        if &m.k0(cat) + &n.k0(cat) != l.k0(cat) {
            return Ok(BigRational::zero());
        }
        let count = self.sub_fibres(m, l)?.get(n).copied().unwrap_or(0);
        if count == 0 {
            return Ok(BigRational::zero());
        }
        let aut = self.daut_count(m)?;
        let e = self.braces_exponent(m, l) - self.braces_exponent(m, m);
        Ok(BigRational::new(BigInt::from(count), BigInt::from(aut)) * q_power(self.field.q(), e))
    }

    /// Every `N` with `F^L_{MN} != 0`, with its value: cones of maps `M -> L`.
    pub fn quotients_of(&self, m: &DerivedClass, l: &DerivedClass) -> Result<Vec<(DerivedClass, BigRational)>> {
        let aut = self.daut_count(m)?;
        let e0 = self.braces_exponent(m, l) - self.braces_exponent(m, m);
        let scale = BigRational::new(BigInt::one(), BigInt::from(aut)) * q_power(self.field.q(), e0);
        Ok(self
            .sub_fibres(m, l)?
            .iter()
            .map(|(n, &c)| (n.clone(), &scale * BigRational::from_integer(BigInt::from(c))))
            .collect())
    }

    /// Every `M` with `F^L_{MN} != 0`, with its value: cones of maps `L -> N`, shifted back.
    pub fn subs_of(&self, n: &DerivedClass, l: &DerivedClass) -> Result<Vec<(DerivedClass, BigRational)>> {
        let aut = self.daut_count(n)?;
        let e0 = self.braces_exponent(l, n) - self.braces_exponent(n, n);
        let scale = BigRational::new(BigInt::one(), BigInt::from(aut)) * q_power(self.field.q(), e0);
        Ok(self
            .quotient_fibres(l, n)?
            .iter()
            .map(|(c, &k)| (c.shift(-1), &scale * BigRational::from_integer(BigInt::from(k))))
            .collect())
    }

    /// Classes `L` that can occur in `u_M * u_N`: by the long exact cohomology
    /// sequence each cohomology module of `L` is bounded by those of `M` and `N`.
    pub fn product_support(&self, m: &DerivedClass, n: &DerivedClass) -> Vec<DerivedClass> {
        let cat = &self.catalog;
        let target = &m.k0(cat) + &n.k0(cat);
        let mut shifts = m.shifts();
        shifts.extend(n.shifts());
        shifts.sort();
        shifts.dedup();
        let mut acc = vec![DerivedClass::zero()];
        for s in shifts {
            let bound = &cat.dim_of(&m.part_at(s)) + &cat.dim_of(&n.part_at(s));
            let mut options: Vec<ModuleClass> = Vec::new();
            for d in bound.lattice_below() {
                if d.is_zero() {
                    options.push(ModuleClass::zero());
                } else {
                    options.extend(cat.classes_of_dim(&d));
                }
            }
            acc = acc
                .iter()
                .flat_map(|a| options.iter().map(move |o| a.plus(&DerivedClass::at_shift(o, s))))
                .collect();
        }
        acc.retain(|l| l.k0(cat) == target);
        acc
    }

    pub fn basis_product(&self, m: &DerivedClass, n: &DerivedClass) -> Result<DHallElement> {
        let mut out = DHallElement::zero(self.coefficient_field());
        for l in self.product_support(m, n) {
            let c = self.dhall_number(m, n, &l)?;
            out.add_term(l, c);
        }
        Ok(out)
    }

    pub fn multiply(&self, f: &DHallElement, g: &DHallElement) -> Result<DHallElement> {
        if f.field() != self.coefficient_field() || g.field() != self.coefficient_field() {
            return Err(Error::FieldMismatch);
        }
        let mut out = DHallElement::zero(self.coefficient_field());
        for (m, a) in f.terms() {
            for (n, b) in g.terms() {
                let ab = a * b;
                for (l, c) in self.basis_product(m, n)?.terms() {
                    out.add_term(l.clone(), &ab * c);
                }
            }
        }
        Ok(out)
    }

    /// `(f * g)(L) = Σ f(M) g(N) F^L_{MN}`, without materializing the product.
    pub fn dhall_product_at(&self, f: &DHallElement, g: &DHallElement, l: &DerivedClass) -> Result<BigRational> {
        let mut acc = BigRational::zero();
        for (m, a) in f.terms() {
            for (n, b) in g.terms() {
                let c = self.dhall_number(m, n, l)?;
                if !c.is_zero() {
                    acc += a * b * c;
                }
            }
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests;
