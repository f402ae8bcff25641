//! Joyce elements of a stability condition and the exp/log identity on a ray.

use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::HashMap;

use crate::derived::class::{DerivedClass, TruncationProfile};
use crate::derived::stability::elements::{build_epsilon_sigma, build_naive_epsilon, in_slices, log_at, windows_for};
use crate::derived::stability::pointwise::PointwiseAlgebra;
use crate::derived::stability::verify::{window_label, DecreasingProducts, SemistableAtlas};
use crate::derived::stability::StabilityCondition;
use crate::derived::DerivedHall;
use crate::error::{Error, Result};
use crate::phase::{Charge, PhasePoint};
use crate::quiver::DimVector;
use crate::report::Report;

/// `ε^σ_γ` is supported on indecomposable objects for every γ given.
pub fn verify_joyce_primitive(
    sigma: &StabilityCondition,
    alg: &dyn PointwiseAlgebra,
    gammas: &[DimVector],
    profile: &TruncationProfile,
) -> Result<Report> {
    let cat = sigma.catalog();
    let mut report = Report::new(format!("joyce-primitive {:?}", alg.field()), window_label(profile), profile.total_dim_cap);
    for g in gammas {
        let e = build_epsilon_sigma(sigma, alg, g, profile)?;
        for x in profile.classes(cat) {
            if x.k0(cat) == *g && !x.is_indecomposable() && alg.supports(&x) {
                report.check(format!("epsilon_{g} at {}", x.name(cat)), e.get(&x), 0);
            }
        }
    }
    Ok(report)
}

/// Nonzero coefficients of the naive element `ε̃_γ` on decomposable classes.
pub fn naive_decomposable_support(
    sigma: &StabilityCondition,
    alg: &dyn PointwiseAlgebra,
    gamma: &DimVector,
    profile: &TruncationProfile,
) -> Result<Vec<(DerivedClass, BigRational)>> {
    let e = build_naive_epsilon(sigma, alg, gamma, profile)?;
    Ok(e.terms()
        .iter()
        .filter(|(x, c)| !x.is_indecomposable() && !c.is_zero())
        .map(|(x, c)| (x.clone(), c.clone()))
        .collect())
}

/// The slices `φ + 2m` of a ray that can meet the profile, in descending order.
pub fn ray_phases(direction: &Charge, profile: &TruncationProfile) -> Result<Vec<PhasePoint>> {
    let mut v: Vec<PhasePoint> = windows_for(profile).map(|m| PhasePoint::new(m, direction.clone())).collect::<Result<_>>()?;
    v.reverse();
    Ok(v)
}

/// `[u_{A[2m]}, u_{B[2n]}] = 0` for slice objects of the ray in different
/// windows, over each given field. The product must also land on `A ⊕ B`.
pub fn check_ray_commutation(
    sigma: &StabilityCondition,
    halls: &[&DerivedHall],
    phases: &[PhasePoint],
    profile: &TruncationProfile,
) -> Result<usize> {
    let cat = sigma.catalog();
    let slices: Vec<Vec<DerivedClass>> = phases
        .iter()
        .map(|p| sigma.slice_classes(p, profile.total_dim_cap))
        .collect::<Result<_>>()?;
    let mut checked = 0;
    for (i, si) in slices.iter().enumerate() {
        for sj in &slices[i + 1..] {
            for a in si {
                for b in sj {
                    let sum = a.plus(b);
                    if !profile.contains(&sum, cat) {
                        continue;
                    }
                    for dh in halls {
                        let (ab, ba) = (dh.basis_product(a, b)?, dh.basis_product(b, a)?);
                        if ab != ba || ab.support().any(|x| *x != sum) {
                            return Err(Error::CommutationFailure(format!(
                                "u_{} and u_{} over {:?}",
                                a.name(cat),
                                b.name(cat),
                                dh.coefficient_field()
                            )));
                        }
                        checked += 1;
                    }
                }
            }
        }
    }
    Ok(checked)
}

/// `exp(E)(X)` for `E = Σ_m log SS_{φ+2m}` evaluated pointwise.
struct ExpOfLogs<'a> {
    sigma: &'a StabilityCondition,
    alg: &'a dyn PointwiseAlgebra,
    phases: &'a [PhasePoint],
    logs: HashMap<DerivedClass, BigRational>,
    powers: HashMap<(DerivedClass, usize), BigRational>,
}

impl ExpOfLogs<'_> {
    fn log(&mut self, m: &DerivedClass) -> Result<BigRational> {
        if let Some(v) = self.logs.get(m) {
            return Ok(v.clone());
        }
        let mut v = BigRational::zero();
        for p in self.phases {
            v += log_at(self.sigma, self.alg, std::slice::from_ref(p), m)?;
        }
        self.logs.insert(m.clone(), v.clone());
        Ok(v)
    }

    fn power(&mut self, x: &DerivedClass, n: usize) -> Result<BigRational> {
        if n == 0 {
            return Ok(if x.is_zero() { BigRational::one() } else { BigRational::zero() });
        }
        if x.is_zero() {
            return Ok(BigRational::zero());
        }
        if let Some(v) = self.powers.get(&(x.clone(), n)) {
            return Ok(v.clone());
        }
        let cat = self.sigma.catalog().clone();
        let total = x.total_dim(&cat);
        let mut acc = BigRational::zero();
        for p in self.phases {
            for m in self.sigma.slice_classes(p, total)? {
                let lm = self.log(&m)?;
                if lm.is_zero() {
                    continue;
                }
                for (rest, f) in self.alg.quotients(&m, x)? {
                    if in_slices(self.sigma, self.phases, &rest)? {
                        acc += &lm * f * self.power(&rest, n - 1)?;
                    }
                }
            }
        }
        self.powers.insert((x.clone(), n), acc.clone());
        Ok(acc)
    }

    fn exp_at(&mut self, x: &DerivedClass) -> Result<BigRational> {
        let total = x.total_dim(self.sigma.catalog());
        let mut sum = BigRational::zero();
        let mut fact = BigRational::one();
        for n in 0..=total {
            if n > 0 {
                fact *= BigRational::from_integer(n.into());
            }
            sum += self.power(x, n)? / &fact;
        }
        Ok(sum)
    }
}

/// `exp(Σ_{Z(γ) ∈ ℓ} ε^σ_γ) = ∏_m SS_{φ+2m}` on the profile for the ray
/// ℓ through `direction`, after checking that the factors commute over the
/// given finite fields.
pub fn verify_left_part(
    sigma: &StabilityCondition,
    alg: &dyn PointwiseAlgebra,
    halls: &[&DerivedHall],
    direction: &Charge,
    profile: &TruncationProfile,
) -> Result<Report> {
    let cat = sigma.catalog();
    let phases = ray_phases(direction, profile)?;
    let mut report = Report::new(format!("left-part {direction}"), window_label(profile), profile.total_dim_cap);
    report.checked += check_ray_commutation(sigma, halls, &phases, profile)?;
    let slices: Vec<Vec<DerivedClass>> = phases
        .iter()
        .map(|p| sigma.slice_classes(p, profile.total_dim_cap))
        .collect::<Result<_>>()?;
    let generators = phases
        .iter()
        .map(|p| Ok(sigma.slice_indecomposables(p)?.into_iter().map(|(id, s)| DerivedClass::single(id, s)).collect()))
        .collect::<Result<_>>()?;
    let atlas = SemistableAtlas {
        phases: phases.clone(),
        slices,
        generators,
        slice_cap: profile.total_dim_cap,
    };
    let mut lhs = ExpOfLogs {
        sigma,
        alg,
        phases: &phases,
        logs: HashMap::new(),
        powers: HashMap::new(),
    };
    let mut rhs = DecreasingProducts::new(sigma, alg, &atlas);
    let mut classes = vec![DerivedClass::zero()];
    classes.extend(profile.classes(cat));
    for x in &classes {
        if !in_slices(sigma, &phases, x)? || !alg.supports(x) {
            continue;
        }
        report.check(x.name(cat), lhs.exp_at(x)?, rhs.ordered_ss_at(x)?);
    }
    for r in std::mem::take(&mut rhs.residuals) {
        report.residual(r);
    }
    Ok(report)
}
