//! Finitely supported Hall elements and truncated Hall series.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::catalog::{IndecId, IndecompCatalog, ModuleClass};
use crate::error::{Error, Result};
use crate::field::PrimeField;

/// Which structure constants an element is meant for: point counts over a
/// prime field, or their values at q = 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoefficientField {
    Prime(PrimeField),
    Euler,
}

impl fmt::Display for CoefficientField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientField::Prime(p) => write!(f, "F{}", p.p()),
            CoefficientField::Euler => write!(f, "euler"),
        }
    }
}

impl CoefficientField {
    pub fn parse(s: &str) -> Result<Self> {
        if s == "euler" {
            return Ok(CoefficientField::Euler);
        }
        let p = s
            .strip_prefix('F')
            .and_then(|x| x.parse::<u32>().ok())
            .ok_or_else(|| Error::Parse(format!("field tag {s}")))?;
        Ok(CoefficientField::Prime(PrimeField::new(p)?))
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    s.trim().parse::<BigRational>().map_err(|e| Error::Parse(format!("{s}: {e}")))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HallElement {
    field: CoefficientField,
    terms: BTreeMap<ModuleClass, BigRational>,
}

impl HallElement {
    pub fn zero(field: CoefficientField) -> Self {
        HallElement {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(field: CoefficientField, class: ModuleClass) -> Self {
        let mut e = Self::zero(field);
        e.add_term(class, BigRational::one());
        e
    }

    /// The identity u_0.
    pub fn unit(field: CoefficientField) -> Self {
        Self::basis(field, ModuleClass::zero())
    }

    pub fn field(&self) -> CoefficientField {
        self.field
    }

    pub fn get(&self, class: &ModuleClass) -> BigRational {
        self.terms.get(class).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> &BTreeMap<ModuleClass, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = &ModuleClass> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, class: ModuleClass, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(class.clone()).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&class);
        }
    }

    fn check_field(&self, other: &HallElement) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &HallElement) -> Result<HallElement> {
        self.check_field(other)?;
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &HallElement) -> Result<HallElement> {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> HallElement {
        let mut out = Self::zero(self.field);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    /// Drop every term whose class fails the predicate.
    pub fn filter<F: Fn(&ModuleClass) -> bool>(&self, keep: F) -> HallElement {
        HallElement {
            field: self.field,
            terms: self.terms.iter().filter(|(k, _)| keep(k)).map(|(k, v)| (k.clone(), v.clone())).collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "field": self.field.to_string(),
            "terms": self.terms.iter().map(|(k, v)| json!({
                "class": k.ids().iter().map(|i| i.0).collect::<Vec<_>>(),
                "coeff": v.to_string(),
            })).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<HallElement> {
        let field = CoefficientField::parse(v["field"].as_str().ok_or_else(|| Error::Parse("missing field".into()))?)?;
        let mut out = Self::zero(field);
        let terms = v["terms"].as_array().ok_or_else(|| Error::Parse("missing terms".into()))?;
        for t in terms {
            let ids = t["class"]
                .as_array()
                .ok_or_else(|| Error::Parse("missing class".into()))?
                .iter()
                .map(|x| x.as_u64().map(|i| IndecId(i as usize)).ok_or_else(|| Error::Parse("bad id".into())))
                .collect::<Result<Vec<_>>>()?;
            let c = parse_rational(t["coeff"].as_str().ok_or_else(|| Error::Parse("missing coeff".into()))?)?;
            out.add_term(ModuleClass::new(ids), c);
        }
        Ok(out)
    }

    pub fn display(&self, catalog: &IndecompCatalog) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(k, v)| {
                if v.is_one() {
                    format!("u[{}]", catalog.class_name(k))
                } else {
                    format!("({v})u[{}]", catalog.class_name(k))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// An element of the completed algebra, known on every class of total
/// dimension at most `cap`. Asking beyond the cap is an error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HallSeries {
    catalog: Arc<IndecompCatalog>,
    cap: usize,
    element: HallElement,
}

impl HallSeries {
    pub fn new(catalog: Arc<IndecompCatalog>, cap: usize, element: HallElement) -> Self {
        let element = element.filter(|k| catalog.dim_of(k).total() as usize <= cap);
        HallSeries { catalog, cap, element }
    }

    /// Build a series from a coefficient oracle evaluated on the whole window.
    pub fn from_fn<F>(catalog: Arc<IndecompCatalog>, field: CoefficientField, cap: usize, mut coeff: F) -> Result<Self>
    where
        F: FnMut(&ModuleClass) -> Result<BigRational>,
    {
        let mut e = HallElement::zero(field);
        e.add_term(ModuleClass::zero(), coeff(&ModuleClass::zero())?);
        for k in catalog.classes_up_to(cap) {
            let c = coeff(&k)?;
            e.add_term(k, c);
        }
        Ok(HallSeries { catalog, cap, element: e })
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn catalog(&self) -> &Arc<IndecompCatalog> {
        &self.catalog
    }

    pub fn field(&self) -> CoefficientField {
        self.element.field()
    }

    pub fn element(&self) -> &HallElement {
        &self.element
    }

    pub fn get(&self, class: &ModuleClass) -> Result<BigRational> {
        let t = self.catalog.dim_of(class).total() as usize;
        if t > self.cap {
            return Err(Error::CapExceeded(format!("class of total dimension {t} beyond series cap {}", self.cap)));
        }
        Ok(self.element.get(class))
    }

    pub fn truncate(&self, cap: usize) -> HallSeries {
        HallSeries::new(Arc::clone(&self.catalog), cap.min(self.cap), self.element.clone())
    }

    /// Every class in the window, the zero class first.
    pub fn window(&self) -> Vec<ModuleClass> {
        let mut out = vec![ModuleClass::zero()];
        out.extend(self.catalog.classes_up_to(self.cap));
        out
    }

    pub fn add(&self, other: &HallSeries) -> Result<HallSeries> {
        let cap = self.cap.min(other.cap);
        Ok(HallSeries::new(Arc::clone(&self.catalog), cap, self.element.add(&other.element)?))
    }

    pub fn sub(&self, other: &HallSeries) -> Result<HallSeries> {
        let cap = self.cap.min(other.cap);
        Ok(HallSeries::new(Arc::clone(&self.catalog), cap, self.element.sub(&other.element)?))
    }

    pub fn scale(&self, c: &BigRational) -> HallSeries {
        HallSeries::new(Arc::clone(&self.catalog), self.cap, self.element.scale(c))
    }

    /// Δ(f)(M, N) = f(M ⊕ N).
    pub fn comultiply_at(&self, m: &ModuleClass, n: &ModuleClass) -> Result<BigRational> {
        self.get(&m.plus(n))
    }

    /// Δ(f)(M, N) = f(M) f(N) on every pair inside the window.
    pub fn is_grouplike(&self) -> Result<bool> {
        for l in self.window() {
            let fl = self.get(&l)?;
            for (a, b) in l.splittings() {
                if fl != self.get(&a)? * self.get(&b)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Δ(f)(M, N) = f(M)[N = 0] + [M = 0]f(N) on every pair inside the window.
    pub fn is_primitive(&self) -> Result<bool> {
        for l in self.window() {
            let fl = self.get(&l)?;
            for (a, b) in l.splittings() {
                let mut rhs = BigRational::zero();
                if b.is_zero() {
                    rhs += self.get(&a)?;
                }
                if a.is_zero() {
                    rhs += self.get(&b)?;
                }
                if fl != rhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

pub fn comultiply_element_at(f: &HallElement, m: &ModuleClass, n: &ModuleClass) -> BigRational {
    f.get(&m.plus(n))
}
