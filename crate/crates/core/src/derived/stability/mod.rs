//! Stability conditions on the derived category, presented by a heart and a
//! stability function on it, with HN filtrations of arbitrary objects.

pub mod heart;
pub mod elements;
pub mod joyce;
pub mod pointwise;
pub mod reineke;
pub mod verify;

use num_rational::BigRational;
use serde_json::{json, Value};
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::abelian::{parse_charges, AbelianStability, StabilityFunction};
use crate::catalog::{IndecId, IndecompCatalog, ModuleClass};
use crate::derived::class::DerivedClass;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::phase::{Charge, PhasePoint, PhaseValue};
use crate::quiver::{DimVector, QuiverPreset};

use heart::{middle_triangle, Shifted, TiltedHeart};

#[derive(Clone, Debug)]
pub enum HeartSpec {
    Standard(StabilityFunction),
    TiltedA2 { generators: Vec<DerivedClass>, charges: Vec<Charge> },
}

/// HN filtration of an object of the derived category. `tower[i]` is the
/// object `X_{i+1}` with factors `0 = X_0 -> X_1 -> ... -> X_n = X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DHnFiltration {
    pub factors: Vec<(DerivedClass, PhasePoint)>,
    pub tower: Vec<DerivedClass>,
}

impl DHnFiltration {
    pub fn phase_max(&self) -> &PhasePoint {
        &self.factors[0].1
    }

    pub fn phase_min(&self) -> &PhasePoint {
        &self.factors[self.factors.len() - 1].1
    }

    pub fn hn_type(&self, cat: &IndecompCatalog) -> Vec<DimVector> {
        self.factors.iter().map(|(f, _)| f.k0(cat)).collect()
    }
}

/// `to_model[id] = (s, m)`: the heart contains `id[s]`, which corresponds to
/// the indecomposable module `m` of the model catalog.
#[derive(Clone, Debug)]
pub struct HeartModel {
    pub catalog: Arc<IndecompCatalog>,
    pub to_model: HashMap<IndecId, (i32, IndecId)>,
}

/// One step of an HN tower: factor, its phase, and the object built so far.
type Step = (DerivedClass, PhasePoint, DerivedClass);

#[derive(Debug)]
enum Backend {
    Standard(AbelianStability),
    Tilted { heart: TiltedHeart, indec: HashMap<IndecId, Vec<Step>> },
}

#[derive(Debug)]
pub struct StabilityCondition {
    catalog: Arc<IndecompCatalog>,
    spec: HeartSpec,
    /// Derived charge per vertex, extended additively to K0.
    z: Vec<Charge>,
    backend: Backend,
    hn_cache: Mutex<HashMap<DerivedClass, Arc<DHnFiltration>>>,
}

impl StabilityCondition {
    pub fn standard(catalog: Arc<IndecompCatalog>, z: StabilityFunction, field: PrimeField) -> Self {
        let charges = z.charges().to_vec();
        let ab = AbelianStability::new(catalog.clone(), z.clone(), field);
        StabilityCondition {
            catalog,
            spec: HeartSpec::Standard(z),
            z: charges,
            backend: Backend::Standard(ab),
            hn_cache: Mutex::new(HashMap::new()),
        }
    }

    /// A heart of D^b(rep A2) given by generators and one charge per generator.
    pub fn tilted_a2(catalog: Arc<IndecompCatalog>, generators: Vec<DerivedClass>, charges: Vec<Charge>) -> Result<Self> {
        let heart = TiltedHeart::recognize(&catalog, &generators)?;
        if charges.len() != generators.len() {
            return Err(Error::InvalidSpec(format!("{} charges for {} generators", charges.len(), generators.len())));
        }
        let z = solve_charges(&catalog, &generators, &charges)?;
        for (id, s) in heart.indecomposables() {
            let g = DerivedClass::single(id, s);
            let c = charge_of(&z, &g.k0(&catalog));
            if !c.in_upper_half() {
                return Err(Error::InvalidStability(format!("heart object {} has charge {c}", g.name(&catalog))));
            }
        }
        let mut sc = StabilityCondition {
            catalog,
            spec: HeartSpec::TiltedA2 { generators, charges },
            z,
            backend: Backend::Tilted { heart: heart.clone(), indec: HashMap::new() },
            hn_cache: Mutex::new(HashMap::new()),
        };
        let mut indec = HashMap::new();
        for id in [heart::S1, heart::S2, heart::P1] {
            indec.insert(id, sc.tilted_steps(&heart, id)?);
        }
        sc.backend = Backend::Tilted { heart, indec };
        Ok(sc)
    }

    /// `{"heart": "standard" | {"tilted_a2": {"generators": [...], "charges": {...}}}, "Z": {...}}`.
    /// Tilted charges are keyed by generator name; when absent, the per-vertex
    /// `"Z"` is used as the derived charge.
    pub fn from_json(catalog: Arc<IndecompCatalog>, v: &Value, field: PrimeField) -> Result<Self> {
        match v.get("heart") {
            None => Err(Error::Parse("missing heart".into())),
            Some(Value::String(s)) if s == "standard" => {
                let z = StabilityFunction::from_json(v, &catalog)?;
                Ok(Self::standard(catalog, z, field))
            }
            Some(h) => {
                let t = h
                    .get("tilted_a2")
                    .ok_or_else(|| Error::Parse(format!("unknown heart {h}")))?;
                let names = t["generators"]
                    .as_array()
                    .ok_or_else(|| Error::Parse("generators must be a list".into()))?;
                let mut generators = Vec::new();
                for n in names {
                    let g = match n {
                        Value::String(s) => DerivedClass::parse(&catalog, s)?,
                        other => DerivedClass::from_json(&catalog, &json!([other]))?,
                    };
                    generators.push(g);
                }
                let charges = match t.get("charges") {
                    Some(c) => generators
                        .iter()
                        .map(|g| {
                            let key = g.name(&catalog);
                            let pair = c.get(&key).ok_or_else(|| Error::Parse(format!("no charge for {key}")))?;
                            parse_pair(pair)
                        })
                        .collect::<Result<Vec<_>>>()?,
                    None => {
                        let z = parse_charges(v, catalog.rank())?;
                        generators.iter().map(|g| charge_of(&z, &g.k0(&catalog))).collect()
                    }
                };
                Self::tilted_a2(catalog, generators, charges)
            }
        }
    }

    pub fn to_json(&self) -> Value {
        let z: serde_json::Map<String, Value> = self
            .z
            .iter()
            .enumerate()
            .map(|(i, c)| ((i + 1).to_string(), json!([c.re.to_string(), c.im.to_string()])))
            .collect();
        match &self.spec {
            HeartSpec::Standard(_) => json!({"heart": "standard", "Z": z}),
            HeartSpec::TiltedA2 { generators, charges } => {
                let ch: serde_json::Map<String, Value> = generators
                    .iter()
                    .zip(charges)
                    .map(|(g, c)| (g.name(&self.catalog), json!([c.re.to_string(), c.im.to_string()])))
                    .collect();
                let names: Vec<String> = generators.iter().map(|g| g.name(&self.catalog)).collect();
                json!({"heart": {"tilted_a2": {"generators": names, "charges": ch}}, "Z": z})
            }
        }
    }

    pub fn catalog(&self) -> &Arc<IndecompCatalog> {
        &self.catalog
    }

    pub fn spec(&self) -> &HeartSpec {
        &self.spec
    }

    pub fn tilted_heart(&self) -> Option<&TiltedHeart> {
        match &self.backend {
            Backend::Tilted { heart, .. } => Some(heart),
            Backend::Standard(_) => None,
        }
    }

    /// The same stability condition with its heart presented by generators:
    /// for the standard heart of A2 these are the two simples.
    pub fn as_tilted(&self) -> Result<Self> {
        match &self.spec {
            HeartSpec::TiltedA2 { generators, charges } => {
                Self::tilted_a2(self.catalog.clone(), generators.clone(), charges.clone())
            }
            HeartSpec::Standard(z) => {
                let gens = vec![DerivedClass::single(heart::S2, 0), DerivedClass::single(heart::S1, 0)];
                let charges = vec![z.charges()[1].clone(), z.charges()[0].clone()];
                Self::tilted_a2(self.catalog.clone(), gens, charges)
            }
        }
    }

    pub fn vertex_charges(&self) -> &[Charge] {
        &self.z
    }

    /// Z on K0 (signed dimension vectors).
    pub fn charge(&self, gamma: &DimVector) -> Charge {
        charge_of(&self.z, gamma)
    }

    /// The phase in window `m` with direction Z(γ).
    pub fn phi_m(&self, gamma: &DimVector, m: i32) -> Result<PhasePoint> {
        let z = self.charge(gamma);
        if z.is_zero() {
            return Err(Error::UndefinedPhase(gamma.to_string()));
        }
        PhasePoint::new(m, z)
    }

    /// Phase of a heart object.
    fn heart_phase(&self, g: Shifted) -> Result<PhasePoint> {
        let c = DerivedClass::single(g.0, g.1);
        let p = PhaseValue::of(self.charge(&c.k0(&self.catalog)))
            .ok_or_else(|| Error::InvalidStability(format!("{} leaves the upper half plane", c.name(&self.catalog))))?;
        Ok(PhasePoint::of_heart(&p))
    }

    fn tilted_steps(&self, heart: &TiltedHeart, id: IndecId) -> Result<Vec<Step>> {
        let x = DerivedClass::single(id, 0);
        if let Some(rep) = heart.representative(id) {
            let k = -rep.1;
            let phase = self.heart_phase(rep)?.shift(k);
            if let Some((a, e, b)) = heart.extension() {
                if e == rep {
                    let (pa, pb) = (self.heart_phase(a)?.shift(k), self.heart_phase(b)?.shift(k));
                    if pa > pb {
                        let sa = DerivedClass::single(a.0, a.1 + k);
                        let sb = DerivedClass::single(b.0, b.1 + k);
                        return Ok(vec![(sa.clone(), pa, sa), (sb, pb, x)]);
                    }
                }
            }
            return Ok(vec![(x.clone(), phase, x)]);
        }
        let (a, b) = middle_triangle(id);
        let pa = self.shifted_heart_phase(heart, a)?;
        let pb = self.shifted_heart_phase(heart, b)?;
        if pa <= pb {
            return Err(Error::ImpossibleConfiguration(format!(
                "outer terms of the triangle through {} have phases {pa} <= {pb}",
                x.name(&self.catalog)
            )));
        }
        let sa = DerivedClass::single(a.0, a.1);
        Ok(vec![(sa.clone(), pa, sa), (DerivedClass::single(b.0, b.1), pb, x)])
    }

    /// Phase of `g`, which must be a shift of a simple of a semisimple heart.
    fn shifted_heart_phase(&self, heart: &TiltedHeart, g: Shifted) -> Result<PhasePoint> {
        let rep = heart
            .representative(g.0)
            .ok_or_else(|| Error::ImpossibleConfiguration(format!("{} is not a shift of a heart object", g.0 .0)))?;
        Ok(self.heart_phase(rep)?.shift(g.1 - rep.1))
    }

    /// HN filtrations of the blocks `X` splits into.
    fn blocks(&self, x: &DerivedClass) -> Result<Vec<Vec<Step>>> {
        match &self.backend {
            Backend::Standard(ab) => {
                let mut out = Vec::new();
                let mut shifts = x.shifts();
                shifts.sort_by(|a, b| b.cmp(a));
                for s in shifts {
                    let part = x.part_at(s);
                    let hn = ab.hn_filtration(&part)?;
                    let tower = ab.hn_tower(&part)?;
                    out.push(
                        hn.factors
                            .iter()
                            .zip(tower)
                            .map(|((f, p), sub)| {
                                (DerivedClass::at_shift(f, s), PhasePoint::of_heart(p).shift(s), DerivedClass::at_shift(&sub, s))
                            })
                            .collect(),
                    );
                }
                Ok(out)
            }
            Backend::Tilted { indec, .. } => Ok(x
                .pairs()
                .iter()
                .map(|&(id, s)| {
                    indec[&id]
                        .iter()
                        .map(|(f, p, sub)| (f.shift(s), p.shift(s), sub.shift(s)))
                        .collect()
                })
                .collect()),
        }
    }

    pub fn hn_filtration(&self, x: &DerivedClass) -> Result<Arc<DHnFiltration>> {
        if x.is_zero() {
            return Err(Error::ZeroObject);
        }
        if let Some(h) = self.hn_cache.lock().expect("cache poisoned").get(x) {
            return Ok(h.clone());
        }
        let blocks = self.blocks(x)?;
        let mut phases: Vec<PhasePoint> = blocks.iter().flatten().map(|s| s.1.clone()).collect();
        phases.sort_by(|a, b| b.cmp(a));
        phases.dedup();
        let mut factors = Vec::with_capacity(phases.len());
        let mut tower = Vec::with_capacity(phases.len());
        for psi in phases {
            let mut f = DerivedClass::zero();
            let mut sub = DerivedClass::zero();
            for b in &blocks {
                for (g, p, _) in b {
                    if *p == psi {
                        f = f.plus(g);
                    }
                }
                if let Some((_, _, s)) = b.iter().take_while(|st| st.1 >= psi).last() {
                    sub = sub.plus(s);
                }
            }
            factors.push((f, psi));
            tower.push(sub);
        }
        let hn = Arc::new(DHnFiltration { factors, tower });
        self.check_hn(x, &hn)?;
        self.hn_cache.lock().expect("cache poisoned").insert(x.clone(), hn.clone());
        Ok(hn)
    }

    fn check_hn(&self, x: &DerivedClass, hn: &DHnFiltration) -> Result<()> {
        let cat = &self.catalog;
        let ok_order = hn.factors.windows(2).all(|w| w[0].1 > w[1].1);
        let sum = hn
            .factors
            .iter()
            .fold(DimVector(vec![0; cat.rank()]), |acc, (f, _)| &acc + &f.k0(cat));
        let ok_tower = hn.tower.last() == Some(x);
        if !(ok_order && sum == x.k0(cat) && ok_tower) {
            return Err(Error::ImpossibleConfiguration(format!("malformed HN filtration of {}", x.name(cat))));
        }
        Ok(())
    }

    pub fn is_semistable(&self, x: &DerivedClass) -> Result<bool> {
        Ok(self.hn_filtration(x)?.factors.len() == 1)
    }

    /// Phase of a semistable object.
    pub fn phase(&self, x: &DerivedClass) -> Result<Option<PhasePoint>> {
        let hn = self.hn_filtration(x)?;
        Ok((hn.factors.len() == 1).then(|| hn.factors[0].1.clone()))
    }

    /// Simple in its slice: semistable, indecomposable, and with no proper
    /// semistable subobject of the same phase inside the heart it lives in.
    pub fn is_stable(&self, x: &DerivedClass) -> Result<bool> {
        if !self.is_semistable(x)? || !x.is_indecomposable() {
            return Ok(false);
        }
        let id = x.pairs()[0].0;
        match &self.backend {
            Backend::Standard(ab) => ab.is_stable(&ModuleClass::single(id)),
            Backend::Tilted { heart, .. } => {
                let Some(rep) = heart.representative(id) else { return Ok(true) };
                match heart.extension() {
                    Some((a, e, b)) if e == rep => Ok(self.heart_phase(a)? != self.heart_phase(b)?),
                    _ => Ok(true),
                }
            }
        }
    }

    /// A module category equivalent to the heart, with the position of every
    /// heart indecomposable in it. Extension-type A2 hearts map to rep A2 and
    /// semisimple ones to the two end simples of rep A3.
    pub fn heart_model(&self) -> Result<HeartModel> {
        match &self.backend {
            Backend::Standard(_) => Ok(HeartModel {
                catalog: self.catalog.clone(),
                to_model: (0..self.catalog.len()).map(|i| (IndecId(i), (0, IndecId(i)))).collect(),
            }),
            Backend::Tilted { heart, .. } => {
                let cap = self.catalog.cap();
                let (catalog, pairs) = match heart.extension() {
                    Some((a, e, b)) => {
                        let cat = IndecompCatalog::build(QuiverPreset::A2, cap)?;
                        (cat, vec![(a, heart::S2), (e, heart::P1), (b, heart::S1)])
                    }
                    None => {
                        let cat = IndecompCatalog::build(QuiverPreset::A3, cap)?;
                        let [x, y] = heart.simples();
                        let ends = (cat.by_interval(0, 0), cat.by_interval(2, 2));
                        let (Some(u), Some(v)) = ends else {
                            return Err(Error::UnsupportedQuiver("A3 catalog without end simples".into()));
                        };
                        (cat, vec![(x, u), (y, v)])
                    }
                };
                Ok(HeartModel {
                    catalog: Arc::new(catalog),
                    to_model: pairs.into_iter().map(|((id, s), m)| (id, (s, m))).collect(),
                })
            }
        }
    }

    /// Is every HN phase in (0, 1]?
    pub fn in_heart(&self, x: &DerivedClass) -> Result<bool> {
        let hn = self.hn_filtration(x)?;
        Ok(hn.factors.iter().all(|(_, p)| p.heart_shift() == 0))
    }
}

fn charge_of(z: &[Charge], gamma: &DimVector) -> Charge {
    z.iter()
        .zip(&gamma.0)
        .fold(Charge::zero(), |acc, (c, &k)| acc.add(&c.scale(k)))
}

fn parse_pair(v: &Value) -> Result<Charge> {
    let arr = v.as_array().filter(|a| a.len() == 2).ok_or_else(|| Error::Parse(format!("bad charge {v}")))?;
    let part = |x: &Value| match x {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        _ => Err(Error::Parse(format!("bad charge {v}"))),
    };
    Charge::parse(&part(&arr[0])?, &part(&arr[1])?)
}

/// Per-vertex charges from charges on generators, by solving the 2x2 system
/// on two generators with independent classes and checking the rest.
fn solve_charges(cat: &IndecompCatalog, gens: &[DerivedClass], charges: &[Charge]) -> Result<Vec<Charge>> {
    let k0: Vec<DimVector> = gens.iter().map(|g| g.k0(cat)).collect();
    let rat = |x: i64| BigRational::from_integer(x.into());
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            let (a, b) = (&k0[i].0, &k0[j].0);
            let det = a[0] * b[1] - a[1] * b[0];
            if det == 0 {
                continue;
            }
            let det = rat(det);
            // Cramer's rule, separately for real and imaginary parts.
            let solve = |ci: &BigRational, cj: &BigRational| {
                let x0 = (ci * rat(b[1]) - cj * rat(a[1])) / &det;
                let x1 = (cj * rat(a[0]) - ci * rat(b[0])) / &det;
                (x0, x1)
            };
            let (r0, r1) = solve(&charges[i].re, &charges[j].re);
            let (i0, i1) = solve(&charges[i].im, &charges[j].im);
            let z = vec![Charge::new(r0, i0), Charge::new(r1, i1)];
            for (g, (c, d)) in gens.iter().zip(charges.iter().zip(&k0)) {
                let got = charge_of(&z, d);
                if got != *c {
                    return Err(Error::InvalidStability(format!(
                        "charge of {} is {c} but additivity forces {got}",
                        g.name(cat)
                    )));
                }
            }
            return Ok(z);
        }
    }
    Err(Error::InvalidSpec("generators do not span K0".into()))
}

#[cfg(test)]
mod tests;
