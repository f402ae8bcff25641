//! Structure constants evaluated one target class at a time.

use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

use crate::catalog::ModuleClass;
use crate::derived::class::DerivedClass;
use crate::derived::stability::{HeartModel, StabilityCondition};
use crate::derived::DerivedHall;
use crate::error::{Error, Result};
use crate::hall::counting::PolynomialCounter;
use crate::hall::element::CoefficientField;

/// Anything that can list, for fixed `M` and `X`, every `N` with
/// `F^X_{MN} != 0` together with the value.
pub trait PointwiseAlgebra: Sync {
    fn field(&self) -> CoefficientField;
    fn quotients(&self, m: &DerivedClass, x: &DerivedClass) -> Result<Vec<(DerivedClass, BigRational)>>;

    /// Whether `quotients` can be evaluated with target `x`.
    fn supports(&self, _x: &DerivedClass) -> bool {
        true
    }

    /// `dim Hom(M, X)` when it is cheap to know.
    fn hom_dim(&self, _m: &DerivedClass, _x: &DerivedClass) -> Option<usize> {
        None
    }
}

impl PointwiseAlgebra for DerivedHall {
    fn field(&self) -> CoefficientField {
        self.coefficient_field()
    }

    fn quotients(&self, m: &DerivedClass, x: &DerivedClass) -> Result<Vec<(DerivedClass, BigRational)>> {
        self.quotients_of(m, x)
    }

    fn hom_dim(&self, m: &DerivedClass, x: &DerivedClass) -> Option<usize> {
        Some(self.dhom_dim(m, x, 0))
    }
}

/// Derived Hall numbers at q = 1 for objects whose heart components sit in
/// shifts of the heart that are pairwise at least two apart. Such objects
/// split into mutually orthogonal heart pieces, so the number is a product of
/// heart Hall numbers times a power of q, which becomes 1.
pub struct SliceAlgebra {
    model: HeartModel,
    counter: PolynomialCounter,
}

impl SliceAlgebra {
    pub fn new(sigma: &StabilityCondition) -> Result<Self> {
        let model = sigma.heart_model()?;
        let counter = PolynomialCounter::new(model.catalog.clone());
        Ok(SliceAlgebra { model, counter })
    }

    /// Heart-shift `k` to the module class of the `k`-th piece.
    pub fn split(&self, x: &DerivedClass) -> Result<BTreeMap<i32, ModuleClass>> {
        let mut out: BTreeMap<i32, Vec<crate::catalog::IndecId>> = BTreeMap::new();
        for &(id, s) in x.pairs() {
            let &(s0, m) = self
                .model
                .to_model
                .get(&id)
                .ok_or_else(|| Error::InvalidSpec(format!("indecomposable {} is no shift of a heart object", id.0)))?;
            out.entry(s - s0).or_default().push(m);
        }
        Ok(out.into_iter().map(|(k, v)| (k, ModuleClass::new(v))).collect())
    }

    fn assemble(&self, pieces: &[(i32, ModuleClass)]) -> DerivedClass {
        let mut pairs = Vec::new();
        for (k, m) in pieces {
            for id in m.ids() {
                let (orig, (s0, _)) = self
                    .model
                    .to_model
                    .iter()
                    .find(|(_, (_, mm))| mm == id)
                    .expect("model ids come from the heart");
                pairs.push((*orig, s0 + k));
            }
        }
        DerivedClass::new(pairs)
    }
}

impl PointwiseAlgebra for SliceAlgebra {
    fn field(&self) -> CoefficientField {
        CoefficientField::Euler
    }

    fn supports(&self, x: &DerivedClass) -> bool {
        self.split(x).is_ok_and(|s| s.keys().zip(s.keys().skip(1)).all(|(a, b)| b - a >= 2))
    }

    /// Only quotients whose heart pieces sit in the heart shifts occupied by
    /// `m` and `x` are listed.
    fn quotients(&self, m: &DerivedClass, x: &DerivedClass) -> Result<Vec<(DerivedClass, BigRational)>> {
        let (ms, xs) = (self.split(m)?, self.split(x)?);
        let mut keys: Vec<i32> = ms.keys().chain(xs.keys()).copied().collect();
        keys.sort();
        keys.dedup();
        if keys.windows(2).any(|w| w[1] - w[0] < 2) {
            return Err(Error::InvalidSpec(format!(
                "q = 1 numbers need heart shifts at least two apart, got {keys:?}"
            )));
        }
        let cat = &self.model.catalog;
        // Partial products over the slices seen so far.
        let mut acc: Vec<(Vec<(i32, ModuleClass)>, BigRational)> = vec![(Vec::new(), BigRational::one())];
        for k in keys {
            let zero = ModuleClass::zero();
            let mk = ms.get(&k).unwrap_or(&zero);
            let xk = xs.get(&k).unwrap_or(&zero);
            let dm = cat.dim_of(mk);
            if !dm.le(&cat.dim_of(xk)) {
                return Ok(Vec::new());
            }
            let table = self.counter.table(xk, &dm)?;
            let options: Vec<(ModuleClass, BigRational)> = table
                .iter()
                .filter(|((a, _), _)| a == mk)
                .map(|((_, n), poly)| (n.clone(), poly.euler_value()))
                .filter(|(_, v)| !v.is_zero())
                .collect();
            let mut next = Vec::new();
            for (pieces, c) in &acc {
                for (n, v) in &options {
                    let mut p = pieces.clone();
                    p.push((k, n.clone()));
                    next.push((p, c * v));
                }
            }
            acc = next;
        }
        Ok(acc.into_iter().map(|(p, c)| (self.assemble(&p), c)).collect())
    }
}
