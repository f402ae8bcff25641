//! Characteristic elements of a stability condition, restricted to a window.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::catalog::IndecId;
use crate::derived::class::{sums_of, DerivedClass, TruncationProfile};
use crate::derived::element::DHallElement;
use crate::derived::stability::pointwise::PointwiseAlgebra;
use crate::derived::stability::StabilityCondition;
use crate::error::Result;
use crate::hall::element::CoefficientField;
use crate::phase::PhasePoint;
use crate::quiver::DimVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Refined {
    Kappa,
    Delta,
}

impl StabilityCondition {
    /// `κ_γ(X)`: X nonzero of class γ; with `m`, also φ^−(X) in window m.
    /// γ = 0 gives κ_0, supported on nonzero objects of zero class.
    pub fn kappa_value(&self, x: &DerivedClass, gamma: &DimVector, m: Option<i32>) -> Result<bool> {
        if x.is_zero() || x.k0(self.catalog()) != *gamma {
            return Ok(false);
        }
        match m {
            None => Ok(true),
            Some(m) => Ok(self.hn_filtration(x)?.phase_min().window() == m),
        }
    }

    /// `δ_γ(X)`: X semistable of class γ; with `m`, its phase in window m.
    pub fn delta_value(&self, x: &DerivedClass, gamma: &DimVector, m: Option<i32>) -> Result<bool> {
        if x.is_zero() || x.k0(self.catalog()) != *gamma {
            return Ok(false);
        }
        match self.phase(x)? {
            None => Ok(false),
            Some(p) => Ok(m.is_none_or(|m| p.window() == m)),
        }
    }

    /// `χ_{γ*}(X)`: the HN type of X is γ*; with `m`, also φ^−(X) in window m.
    pub fn chi_value(&self, x: &DerivedClass, hn_type: &[DimVector], m: Option<i32>) -> Result<bool> {
        if x.is_zero() {
            return Ok(false);
        }
        let hn = self.hn_filtration(x)?;
        Ok(hn.hn_type(self.catalog()) == hn_type && m.is_none_or(|m| hn.phase_min().window() == m))
    }

    /// `SS_φ(X)`: X zero or semistable of phase φ.
    pub fn ss_value(&self, x: &DerivedClass, phi: &PhasePoint) -> Result<bool> {
        if x.is_zero() {
            return Ok(true);
        }
        Ok(self.phase(x)?.is_some_and(|p| p == *phi))
    }

    /// Semistable indecomposables of phase φ.
    pub fn slice_indecomposables(&self, phi: &PhasePoint) -> Result<Vec<(IndecId, i32)>> {
        let k = phi.heart_shift();
        let mut out = Vec::new();
        for e in self.catalog().entries() {
            // A shifted indecomposable has all HN phases within one unit of its
            // heart position, and the tilted hearts sit at most two shifts off.
            for s in k - 3..=k + 3 {
                let x = DerivedClass::single(e.id, s);
                if self.phase(&x)?.is_some_and(|p| p == *phi) {
                    out.push((e.id, s));
                }
            }
        }
        Ok(out)
    }

    /// Nonzero objects of P(φ) with total dimension at most `cap`.
    pub fn slice_classes(&self, phi: &PhasePoint, cap: usize) -> Result<Vec<DerivedClass>> {
        Ok(sums_of(self.catalog(), &self.slice_indecomposables(phi)?, cap))
    }
}

fn indicator(field: CoefficientField, classes: &[DerivedClass], mut keep: impl FnMut(&DerivedClass) -> Result<bool>) -> Result<DHallElement> {
    let mut e = DHallElement::zero(field);
    for c in classes {
        if keep(c)? {
            e.add_term(c.clone(), BigRational::one());
        }
    }
    Ok(e)
}

pub fn build_refined(
    sigma: &StabilityCondition,
    kind: Refined,
    gamma: &DimVector,
    m: Option<i32>,
    profile: &TruncationProfile,
    field: CoefficientField,
) -> Result<DHallElement> {
    let classes = profile.classes(sigma.catalog());
    indicator(field, &classes, |x| match kind {
        Refined::Kappa => sigma.kappa_value(x, gamma, m),
        Refined::Delta => sigma.delta_value(x, gamma, m),
    })
}

pub fn build_chi(
    sigma: &StabilityCondition,
    hn_type: &[DimVector],
    m: Option<i32>,
    profile: &TruncationProfile,
    field: CoefficientField,
) -> Result<DHallElement> {
    let classes = profile.classes(sigma.catalog());
    indicator(field, &classes, |x| sigma.chi_value(x, hn_type, m))
}

pub fn build_ss(sigma: &StabilityCondition, phi: &PhasePoint, profile: &TruncationProfile, field: CoefficientField) -> Result<DHallElement> {
    let mut classes = vec![DerivedClass::zero()];
    classes.extend(profile.classes(sigma.catalog()));
    indicator(field, &classes, |x| sigma.ss_value(x, phi))
}

/// `Σ_n (-1)^{n-1}/n · D^{*n}(X)` where `D` is the characteristic function
/// of the nonzero objects of the given slices. Factors after the first are
/// pruned to objects all of whose HN phases lie in the slices, which is where
/// any product of such factors is supported.
pub fn log_at(
    sigma: &StabilityCondition,
    alg: &dyn PointwiseAlgebra,
    slices: &[PhasePoint],
    x: &DerivedClass,
) -> Result<BigRational> {
    if x.is_zero() || !in_slices(sigma, slices, x)? {
        return Ok(BigRational::zero());
    }
    let cat = sigma.catalog();
    let total = x.total_dim(cat);
    let mut candidates = Vec::new();
    for phi in slices {
        candidates.extend(sigma.slice_classes(phi, total)?);
    }
    // powers[n] = D^{*n}(X), computed by peeling the first factor.
    let mut memo = std::collections::HashMap::new();
    let mut sum = BigRational::zero();
    for n in 1..=total {
        let v = power_at(sigma, alg, slices, &candidates, x, n, &mut memo)?;
        let c = BigRational::new(if n % 2 == 1 { 1 } else { -1 }.into(), (n as i64).into());
        sum += c * v;
    }
    Ok(sum)
}

pub(crate) fn in_slices(sigma: &StabilityCondition, slices: &[PhasePoint], x: &DerivedClass) -> Result<bool> {
    if x.is_zero() {
        return Ok(true);
    }
    Ok(sigma.hn_filtration(x)?.factors.iter().all(|(_, p)| slices.contains(p)))
}

fn power_at(
    sigma: &StabilityCondition,
    alg: &dyn PointwiseAlgebra,
    slices: &[PhasePoint],
    candidates: &[DerivedClass],
    x: &DerivedClass,
    n: usize,
    memo: &mut std::collections::HashMap<(DerivedClass, usize), BigRational>,
) -> Result<BigRational> {
    if n == 0 {
        return Ok(if x.is_zero() { BigRational::one() } else { BigRational::zero() });
    }
    if x.is_zero() {
        return Ok(BigRational::zero());
    }
    if let Some(v) = memo.get(&(x.clone(), n)) {
        return Ok(v.clone());
    }
    let cat = sigma.catalog();
    let total = x.total_dim(cat);
    let mut acc = BigRational::zero();
    for m in candidates {
        if m.total_dim(cat) > total {
            continue;
        }
        for (rest, f) in alg.quotients(m, x)? {
            if rest.total_dim(cat) < n - 1 || !in_slices(sigma, slices, &rest)? {
                continue;
            }
            acc += f * power_at(sigma, alg, slices, candidates, &rest, n - 1, memo)?;
        }
    }
    memo.insert((x.clone(), n), acc.clone());
    Ok(acc)
}

/// `^mε_γ` on the window: the logarithm over the single slice φ_m(γ),
/// restricted to class γ.
pub fn build_m_epsilon(
    sigma: &StabilityCondition,
    alg: &dyn PointwiseAlgebra,
    gamma: &DimVector,
    m: i32,
    profile: &TruncationProfile,
) -> Result<DHallElement> {
    let phi = sigma.phi_m(gamma, m)?;
    let cat = sigma.catalog();
    let mut e = DHallElement::zero(alg.field());
    for x in profile.classes(cat) {
        if x.k0(cat) == *gamma && alg.supports(&x) {
            e.add_term(x.clone(), log_at(sigma, alg, std::slice::from_ref(&phi), &x)?);
        }
    }
    Ok(e)
}

/// Windows `m` whose slice for γ can meet the profile.
pub fn windows_for(profile: &TruncationProfile) -> std::ops::RangeInclusive<i32> {
    let (lo, hi) = profile.shift_window;
    lo.div_euclid(2) - 1..=hi.div_euclid(2) + 1
}

pub fn build_epsilon_sigma(
    sigma: &StabilityCondition,
    alg: &dyn PointwiseAlgebra,
    gamma: &DimVector,
    profile: &TruncationProfile,
) -> Result<DHallElement> {
    let mut e = DHallElement::zero(alg.field());
    for m in windows_for(profile) {
        e = e.add(&build_m_epsilon(sigma, alg, gamma, m, profile)?)?;
    }
    Ok(e)
}

/// The first attempt at a Joyce element: the logarithm over every slice
/// whose charges lie on the ray of Z(γ), without separating windows.
pub fn build_naive_epsilon(
    sigma: &StabilityCondition,
    alg: &dyn PointwiseAlgebra,
    gamma: &DimVector,
    profile: &TruncationProfile,
) -> Result<DHallElement> {
    let slices: Vec<PhasePoint> = windows_for(profile).map(|m| sigma.phi_m(gamma, m)).collect::<Result<_>>()?;
    let cat = sigma.catalog();
    let mut e = DHallElement::zero(alg.field());
    for x in profile.classes(cat) {
        if x.k0(cat) == *gamma && alg.supports(&x) {
            e.add_term(x.clone(), log_at(sigma, alg, &slices, &x)?);
        }
    }
    Ok(e)
}
