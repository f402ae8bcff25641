//! Slope and stability functions on module categories, HN filtrations, and
//! the characteristic elements built from them.

mod elements;
pub mod verify;

use num_rational::BigRational;
use serde_json::Value;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::catalog::{IndecompCatalog, ModuleClass};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::phase::{Charge, PhaseValue};
use crate::quiver::DimVector;
use crate::rep::SubRep;

pub use elements::ordered_decompositions;

/// An integral linear form on dimension vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm(pub Vec<i64>);

impl LinearForm {
    pub fn apply(&self, d: &DimVector) -> i64 {
        self.0.iter().zip(&d.0).map(|(t, x)| t * x).sum()
    }

    /// Θ(d) / Σ_v d_v.
    pub fn slope(&self, d: &DimVector) -> Result<BigRational> {
        if d.len() != self.0.len() {
            return Err(Error::DimensionMismatch(format!("{d} against a form of length {}", self.0.len())));
        }
        if d.is_zero() || !d.is_nonnegative() {
            return Err(Error::ZeroVector);
        }
        Ok(BigRational::new(self.apply(d).into(), d.total().into()))
    }
}

/// A central charge on dimension vectors: Z(d) = Σ_v d_v z_v.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityFunction {
    z: Vec<Charge>,
}

impl StabilityFunction {
    /// Validated against every catalog dimension vector (and hence, by
    /// additivity, every nonzero module).
    pub fn new(z: Vec<Charge>, catalog: &IndecompCatalog) -> Result<Self> {
        if z.len() != catalog.rank() {
            return Err(Error::InvalidStability(format!("{} charges for {} vertices", z.len(), catalog.rank())));
        }
        let s = StabilityFunction { z };
        for (v, c) in s.z.iter().enumerate() {
            if !c.in_upper_half() {
                return Err(Error::InvalidStability(format!("vertex {} has charge {c}", v + 1)));
            }
        }
        for e in catalog.entries() {
            if !s.charge(&e.dim).in_upper_half() {
                return Err(Error::InvalidStability(format!("{} has charge {}", e.name, s.charge(&e.dim))));
            }
        }
        Ok(s)
    }

    /// z_v = -Θ_v + i, so phase order agrees with slope order.
    pub fn from_linear_form(theta: &LinearForm, catalog: &IndecompCatalog) -> Result<Self> {
        Self::new(theta.0.iter().map(|&t| Charge::from_ints(-t, 1)).collect(), catalog)
    }

    /// Parse `{"Z": {"1": ["re","im"], "2": [...]}}` or the inner object.
    pub fn from_json(v: &Value, catalog: &IndecompCatalog) -> Result<Self> {
        Self::new(parse_charges(v, catalog.rank())?, catalog)
    }

    pub fn charges(&self) -> &[Charge] {
        &self.z
    }

    pub fn charge(&self, d: &DimVector) -> Charge {
        self.z
            .iter()
            .zip(&d.0)
            .fold(Charge::zero(), |acc, (z, &k)| acc.add(&z.scale(k)))
    }

    pub fn phase(&self, d: &DimVector) -> Result<PhaseValue> {
        PhaseValue::of(self.charge(d)).ok_or_else(|| Error::ZeroCharge(d.to_string()))
    }
}

/// Per-vertex charges from `{"Z": {"1": ["re","im"], ...}}` or the inner map.
pub fn parse_charges(v: &Value, rank: usize) -> Result<Vec<Charge>> {
    let map = v.get("Z").unwrap_or(v);
    let obj = map.as_object().ok_or_else(|| Error::Parse("charges must be an object".into()))?;
    (1..=rank)
        .map(|k| {
            let pair = obj
                .get(&k.to_string())
                .and_then(|x| x.as_array())
                .ok_or_else(|| Error::Parse(format!("missing charge for vertex {k}")))?;
            let part = |i: usize| -> Result<String> {
                match pair.get(i) {
                    Some(Value::String(s)) => Ok(s.clone()),
                    Some(Value::Number(n)) => Ok(n.to_string()),
                    _ => Err(Error::Parse(format!("bad charge for vertex {k}"))),
                }
            };
            Charge::parse(&part(0)?, &part(1)?)
        })
        .collect()
}

/// An HN filtration: factors with strictly decreasing phases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HnFiltration {
    pub factors: Vec<(ModuleClass, PhaseValue)>,
}

impl HnFiltration {
    pub fn hn_type(&self, catalog: &IndecompCatalog) -> Vec<DimVector> {
        self.factors.iter().map(|(c, _)| catalog.dim_of(c)).collect()
    }
}

/// Stability data on a module category with memoized semistability checks.
#[derive(Debug)]
pub struct AbelianStability {
    catalog: Arc<IndecompCatalog>,
    z: StabilityFunction,
    field: PrimeField,
    semistable: Mutex<HashMap<ModuleClass, bool>>,
}

impl AbelianStability {
    pub fn new(catalog: Arc<IndecompCatalog>, z: StabilityFunction, field: PrimeField) -> Self {
        AbelianStability {
            catalog,
            z,
            field,
            semistable: Mutex::new(HashMap::new()),
        }
    }

    pub fn catalog(&self) -> &Arc<IndecompCatalog> {
        &self.catalog
    }

    pub fn stability(&self) -> &StabilityFunction {
        &self.z
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn phase_of_dim(&self, d: &DimVector) -> Result<PhaseValue> {
        self.z.phase(d)
    }

    pub fn phase(&self, class: &ModuleClass) -> Result<PhaseValue> {
        if class.is_zero() {
            return Err(Error::ZeroObject);
        }
        self.z.phase(&self.catalog.dim_of(class))
    }

    fn check_cap(&self, class: &ModuleClass) -> Result<()> {
        let t = self.catalog.dim_of(class).total() as usize;
        if t > self.catalog.cap() {
            return Err(Error::CapExceeded(format!("class of total dimension {t} above cap {}", self.catalog.cap())));
        }
        Ok(())
    }

    /// Does some nonzero proper subrepresentation have phase above
    /// (or, with `allow_equal`, at least) the phase of the whole?
    fn destabilized(&self, class: &ModuleClass, allow_equal: bool) -> Result<bool> {
        self.check_cap(class)?;
        let d = self.catalog.dim_of(class);
        let phi = self.z.phase(&d)?;
        let rep = self.catalog.build_rep(class, self.field);
        for sub in d.lattice_below() {
            if sub.is_zero() || sub == d {
                continue;
            }
            let ps = self.z.phase(&sub)?;
            let bad = if allow_equal { ps >= phi } else { ps > phi };
            if bad && !rep.enumerate_subreps(&sub)?.is_empty() {
                return Ok(true);
            }
        }
        Ok(false)
    }

    pub fn is_semistable(&self, class: &ModuleClass) -> Result<bool> {
        if class.is_zero() {
            return Ok(false);
        }
        if let Some(&b) = self.semistable.lock().expect("cache poisoned").get(class) {
            return Ok(b);
        }
        let b = !self.destabilized(class, false)?;
        self.semistable.lock().expect("cache poisoned").insert(class.clone(), b);
        Ok(b)
    }

    pub fn is_stable(&self, class: &ModuleClass) -> Result<bool> {
        if class.is_zero() {
            return Ok(false);
        }
        let stable = !self.destabilized(class, true)?;
        debug_assert!(!stable || class.is_indecomposable());
        Ok(stable)
    }

    /// The unique nonzero subrepresentation of maximal phase and, among
    /// those, maximal dimension.
    pub fn maximal_destabilizing(&self, class: &ModuleClass) -> Result<(ModuleClass, ModuleClass)> {
        if class.is_zero() {
            return Err(Error::ZeroObject);
        }
        self.check_cap(class)?;
        let d = self.catalog.dim_of(class);
        let rep = self.catalog.build_rep(class, self.field);
        let mut best: Option<(PhaseValue, i64, Vec<SubRep>)> = None;
        for sub in d.lattice_below() {
            if sub.is_zero() {
                continue;
            }
            let subs = rep.enumerate_subreps(&sub)?;
            if subs.is_empty() {
                continue;
            }
            let ps = self.z.phase(&sub)?;
            let t = sub.total();
            match &mut best {
                Some((bp, bt, bs)) => {
                    if ps > *bp || (ps == *bp && t > *bt) {
                        best = Some((ps, t, subs));
                    } else if ps == *bp && t == *bt {
                        bs.extend(subs);
                    }
                }
                None => best = Some((ps, t, subs)),
            }
        }
        let (_, _, subs) = best.expect("the whole module is a candidate");
        if subs.len() != 1 {
            return Err(Error::NonUniqueMaximal(self.catalog.class_name(class)));
        }
        let u = &subs[0];
        Ok((
            self.catalog.decompose(&rep.restrict(u))?,
            self.catalog.decompose(&rep.quotient(u))?,
        ))
    }

    pub fn hn_filtration(&self, class: &ModuleClass) -> Result<HnFiltration> {
        if class.is_zero() {
            return Err(Error::ZeroObject);
        }
        let mut factors = Vec::new();
        let mut rest = class.clone();
        while !rest.is_zero() {
            let (sub, quot) = self.maximal_destabilizing(&rest)?;
            let phase = self.phase(&sub)?;
            factors.push((sub, phase));
            rest = quot;
        }
        debug_assert!(factors.windows(2).all(|w| w[0].1 > w[1].1));
        Ok(HnFiltration { factors })
    }

    /// The subobjects `0 ⊂ X_1 ⊂ ... ⊂ X_n = class` of the HN filtration, as
    /// isomorphism classes.
    pub fn hn_tower(&self, class: &ModuleClass) -> Result<Vec<ModuleClass>> {
        let hn = self.hn_filtration(class)?;
        let rep = self.catalog.build_rep(class, self.field);
        let n = hn.factors.len();
        let mut out = Vec::with_capacity(n);
        let mut d = DimVector(vec![0; self.catalog.rank()]);
        for (i, (f, phase)) in hn.factors.iter().enumerate() {
            d = &d + &self.catalog.dim_of(f);
            if i + 1 == n {
                out.push(class.clone());
                break;
            }
            let mut found = None;
            for u in rep.enumerate_subreps(&d)? {
                let sub = self.catalog.decompose(&rep.restrict(&u))?;
                let quot = self.catalog.decompose(&rep.quotient(&u))?;
                let lo = self.hn_filtration(&sub)?.factors.last().map(|x| x.1.clone());
                let hi = self.hn_filtration(&quot)?.factors.first().map(|x| x.1.clone());
                if lo.is_some_and(|p| p >= *phase) && hi.is_some_and(|p| p < *phase) {
                    found = Some(sub);
                    break;
                }
            }
            out.push(found.ok_or_else(|| Error::NonUniqueMaximal(self.catalog.class_name(class)))?);
        }
        Ok(out)
    }

    /// Distinct phases of semistable classes up to the cap, descending.
    pub fn occupied_phases(&self, cap: usize) -> Result<Vec<PhaseValue>> {
        let mut out: Vec<PhaseValue> = Vec::new();
        for c in self.catalog.classes_up_to(cap) {
            if self.is_semistable(&c)? {
                let p = self.phase(&c)?;
                if !out.contains(&p) {
                    out.push(p);
                }
            }
        }
        out.sort_by(|a, b| b.cmp(a));
        Ok(out)
    }
}

#[cfg(test)]
mod tests;
