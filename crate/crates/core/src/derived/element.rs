//! Finitely supported elements of the derived Hall algebra.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};
use std::collections::BTreeMap;

use crate::catalog::IndecompCatalog;
use crate::derived::class::DerivedClass;
use crate::error::{Error, Result};
use crate::hall::element::{parse_rational, CoefficientField};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DHallElement {
    field: CoefficientField,
    terms: BTreeMap<DerivedClass, BigRational>,
}

impl DHallElement {
    pub fn zero(field: CoefficientField) -> Self {
        DHallElement {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(field: CoefficientField, class: DerivedClass) -> Self {
        let mut e = Self::zero(field);
        e.add_term(class, BigRational::one());
        e
    }

    pub fn unit(field: CoefficientField) -> Self {
        Self::basis(field, DerivedClass::zero())
    }

    pub fn field(&self) -> CoefficientField {
        self.field
    }

    pub fn get(&self, class: &DerivedClass) -> BigRational {
        self.terms.get(class).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> &BTreeMap<DerivedClass, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = &DerivedClass> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, class: DerivedClass, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(class.clone()).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&class);
        }
    }

    pub fn add(&self, other: &DHallElement) -> Result<DHallElement> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &DHallElement) -> Result<DHallElement> {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> DHallElement {
        let mut out = Self::zero(self.field);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    pub fn filter<F: Fn(&DerivedClass) -> bool>(&self, keep: F) -> DHallElement {
        DHallElement {
            field: self.field,
            terms: self.terms.iter().filter(|(k, _)| keep(k)).map(|(k, v)| (k.clone(), v.clone())).collect(),
        }
    }

    pub fn to_json(&self, cat: &IndecompCatalog) -> Value {
        json!({
            "field": self.field.to_string(),
            "terms": self.terms.iter().map(|(k, v)| json!({
                "class": k.to_json(cat),
                "coeff": v.to_string(),
            })).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(cat: &IndecompCatalog, v: &Value) -> Result<DHallElement> {
        let field = CoefficientField::parse(v["field"].as_str().ok_or_else(|| Error::Parse("missing field".into()))?)?;
        let mut out = Self::zero(field);
        let terms = v["terms"].as_array().ok_or_else(|| Error::Parse("missing terms".into()))?;
        for t in terms {
            let class = DerivedClass::from_json(cat, &t["class"])?;
            let c = parse_rational(t["coeff"].as_str().ok_or_else(|| Error::Parse("missing coeff".into()))?)?;
            out.add_term(class, c);
        }
        Ok(out)
    }

    pub fn display(&self, cat: &IndecompCatalog) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(k, v)| {
                if v.is_one() {
                    format!("u[{}]", k.name(cat))
                } else {
                    format!("({v})u[{}]", k.name(cat))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}
