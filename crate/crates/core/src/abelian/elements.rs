//! κ, δ, SS and Joyce elements, and the two reciprocity sums.

use num_rational::BigRational;
use num_traits::One;
use std::collections::BTreeMap;
use std::sync::Arc;

use super::AbelianStability;
use crate::catalog::ModuleClass;
use crate::error::Result;
use crate::hall::{HallAlgebra, HallElement, HallSeries};
use crate::phase::PhaseValue;
use crate::quiver::DimVector;

/// All ordered tuples of nonzero nonnegative vectors summing to `d`.
pub fn ordered_decompositions(d: &DimVector) -> Vec<Vec<DimVector>> {
    if d.is_zero() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in d.lattice_below() {
        if first.is_zero() {
            continue;
        }
        for mut tail in ordered_decompositions(&(d - &first)) {
            tail.insert(0, first.clone());
            out.push(tail);
        }
    }
    out
}

impl AbelianStability {
    /// Characteristic function of all modules of dimension γ.
    pub fn kappa(&self, h: &HallAlgebra, gamma: &DimVector) -> HallElement {
        let mut e = HallElement::zero(h.field());
        for c in self.catalog.classes_of_dim(gamma) {
            e.add_term(c, BigRational::one());
        }
        e
    }

    /// Characteristic function of the semistable modules of dimension γ.
    pub fn delta(&self, h: &HallAlgebra, gamma: &DimVector) -> Result<HallElement> {
        let mut e = HallElement::zero(h.field());
        if gamma.is_zero() {
            return Ok(e);
        }
        for c in self.catalog.classes_of_dim(gamma) {
            if self.is_semistable(&c)? {
                e.add_term(c, BigRational::one());
            }
        }
        Ok(e)
    }

    /// 1 + Σ_{φ(γ) = φ} δ_γ up to the cap.
    pub fn ss_series(&self, h: &HallAlgebra, phase: &PhaseValue, cap: usize) -> Result<HallSeries> {
        let series = h.characteristic(cap, |c| {
            Ok(c.is_zero() || (self.phase(c)? == *phase && self.is_semistable(c)?))
        })?;
        Ok(series)
    }

    /// Σ over ordered splittings γ = γ_1 + ... + γ_n into parts of phase φ(γ)
    /// of (-1)^(n-1)/n δ_{γ_1} * ... * δ_{γ_n}.
    pub fn epsilon(&self, h: &HallAlgebra, gamma: &DimVector) -> Result<HallElement> {
        let phi = self.phase_of_dim(gamma)?;
        // layer[β]: sum of products of n δ's of phase φ with total β.
        let mut out = HallElement::zero(h.field());
        let mut layer: BTreeMap<DimVector, HallElement> = BTreeMap::new();
        layer.insert(DimVector::zero(gamma.len()), HallElement::unit(h.field()));
        let parts: Vec<(DimVector, HallElement)> = gamma
            .lattice_below()
            .into_iter()
            .filter(|b| !b.is_zero())
            .filter(|b| self.phase_of_dim(b).map(|p| p == phi).unwrap_or(false))
            .map(|b| self.delta(h, &b).map(|d| (b, d)))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(|(_, d)| !d.is_zero())
            .collect();
        for n in 1..=gamma.total() as usize {
            let mut next: BTreeMap<DimVector, HallElement> = BTreeMap::new();
            for (beta, acc) in &layer {
                for (b, d) in &parts {
                    let s = beta + b;
                    if !s.le(gamma) {
                        continue;
                    }
                    let prod = h.multiply(acc, d)?;
                    let slot = next.entry(s).or_insert_with(|| HallElement::zero(h.field()));
                    *slot = slot.add(&prod)?;
                }
            }
            if let Some(full) = next.get(gamma) {
                let sign = if n % 2 == 1 { 1 } else { -1 };
                out = out.add(&full.scale(&BigRational::new(sign.into(), (n as i64).into())))?;
            }
            next.remove(gamma);
            if next.is_empty() {
                break;
            }
            layer = next;
        }
        Ok(out)
    }

    /// Σ over γ_1 + ... + γ_n = γ with φ(γ_1) > ... > φ(γ_n) of δ_{γ_1} * ... * δ_{γ_n}.
    pub fn hn_sum(&self, h: &HallAlgebra, gamma: &DimVector) -> Result<HallElement> {
        self.hn_sum_above(h, gamma, None)
    }

    /// Same sum over tuples of total `rest` whose phases all exceed `floor`.
    /// Recurses on the last factor, whose phase bounds the earlier ones.
    fn hn_sum_above(&self, h: &HallAlgebra, rest: &DimVector, floor: Option<&PhaseValue>) -> Result<HallElement> {
        if rest.is_zero() {
            return Ok(HallElement::unit(h.field()));
        }
        let mut out = HallElement::zero(h.field());
        for last in rest.lattice_below() {
            if last.is_zero() {
                continue;
            }
            let p = self.phase_of_dim(&last)?;
            if floor.is_some_and(|f| p <= *f) {
                continue;
            }
            let d = self.delta(h, &last)?;
            if d.is_zero() {
                continue;
            }
            let prefix = self.hn_sum_above(h, &(rest - &last), Some(&p))?;
            if !prefix.is_zero() {
                out = out.add(&h.multiply(&prefix, &d)?)?;
            }
        }
        Ok(out)
    }

    /// Σ over γ_1 + ... + γ_n = γ with φ(γ_1 + ... + γ_i) > φ(γ) for i < n of
    /// (-1)^(n-1) κ_{γ_1} * ... * κ_{γ_n}.
    pub fn reineke_sum(&self, h: &HallAlgebra, gamma: &DimVector) -> Result<HallElement> {
        let phi = self.phase_of_dim(gamma)?;
        // a[β] = Σ over tuples summing to β with every partial sum of phase
        // above φ(γ) of (-1)^k κ-products.
        let mut a: BTreeMap<DimVector, HallElement> = BTreeMap::new();
        let mut order: Vec<DimVector> = gamma.lattice_below();
        order.sort_by_key(|b| b.total());
        let zero = DimVector::zero(gamma.len());
        for beta in &order {
            if beta == gamma {
                continue;
            }
            if beta.is_zero() {
                a.insert(zero.clone(), HallElement::unit(h.field()));
                continue;
            }
            if self.phase_of_dim(beta)? <= phi {
                continue;
            }
            let mut acc = HallElement::zero(h.field());
            for (prev, val) in &a {
                if prev.le(beta) && prev != beta {
                    acc = acc.add(&h.multiply(val, &self.kappa(h, &(beta - prev)))?)?;
                }
            }
            a.insert(beta.clone(), acc.scale(&-BigRational::one()));
        }
        let mut out = HallElement::zero(h.field());
        for (prev, val) in &a {
            out = out.add(&h.multiply(val, &self.kappa(h, &(gamma - prev)))?)?;
        }
        Ok(out)
    }

    /// The ordered product of SS series over the occupied phases, descending.
    pub fn wall_crossing_product(&self, h: &HallAlgebra, cap: usize) -> Result<HallSeries> {
        let phases = self.occupied_phases(cap)?;
        let factors = phases
            .iter()
            .map(|p| self.ss_series(h, p, cap))
            .collect::<Result<Vec<_>>>()?;
        h.product_series(&factors, cap)
    }

    /// Σ_γ ε_γ over the classes of one phase, as a series.
    pub fn epsilon_series(&self, h: &HallAlgebra, phase: &PhaseValue, cap: usize) -> Result<HallSeries> {
        let mut total = HallElement::zero(h.field());
        let mut seen: Vec<DimVector> = Vec::new();
        for c in self.catalog.classes_up_to(cap) {
            let d = self.catalog.dim_of(&c);
            if seen.contains(&d) || self.phase_of_dim(&d)? != *phase {
                continue;
            }
            seen.push(d.clone());
            total = total.add(&self.epsilon(h, &d)?)?;
        }
        Ok(HallSeries::new(Arc::clone(&self.catalog), cap, total))
    }

    pub fn classes_of_phase(&self, phase: &PhaseValue, cap: usize) -> Result<Vec<ModuleClass>> {
        let mut out = Vec::new();
        for c in self.catalog.classes_up_to(cap) {
            if self.phase(&c)? == *phase {
                out.push(c);
            }
        }
        Ok(out)
    }
}
