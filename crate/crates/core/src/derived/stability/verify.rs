//! Pointwise checks of the HN and wall-crossing identities of a stability
//! condition: both sides are evaluated at one class at a time.

use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::HashMap;

use crate::derived::class::{DerivedClass, TruncationProfile};
use crate::derived::stability::pointwise::PointwiseAlgebra;
use crate::derived::stability::StabilityCondition;
use crate::derived::DerivedHall;
use crate::error::Result;
use crate::phase::PhasePoint;
use crate::quiver::DimVector;
use crate::report::Report;

pub fn window_label(profile: &TruncationProfile) -> String {
    format!("[{},{}]", profile.shift_window.0, profile.shift_window.1)
}

/// φ^+ of `x`, read off its indecomposable summands.
pub fn top_phase(sigma: &StabilityCondition, x: &DerivedClass) -> Result<PhasePoint> {
    let mut best: Option<PhasePoint> = None;
    for &(id, s) in x.pairs() {
        let p = sigma.hn_filtration(&DerivedClass::single(id, s))?.phase_max().clone();
        if best.as_ref().is_none_or(|b| p > *b) {
            best = Some(p);
        }
    }
    Ok(best.expect("nonzero object"))
}

/// The slices met by HN filtrations of a profile, in descending phase order.
/// Each slice lists every object of P(φ) up to the largest HN factor seen.
pub struct SemistableAtlas {
    pub phases: Vec<PhasePoint>,
    pub slices: Vec<Vec<DerivedClass>>,
    /// Semistable indecomposables of each slice.
    pub generators: Vec<Vec<DerivedClass>>,
    pub slice_cap: usize,
}

impl SemistableAtlas {
    pub fn build(sigma: &StabilityCondition, profile: &TruncationProfile) -> Result<Self> {
        let cat = sigma.catalog();
        let mut phases: Vec<PhasePoint> = Vec::new();
        let mut slice_cap = 0;
        for x in profile.classes(cat) {
            for (a, p) in &sigma.hn_filtration(&x)?.factors {
                slice_cap = slice_cap.max(a.total_dim(cat));
                if !phases.contains(p) {
                    phases.push(p.clone());
                }
            }
        }
        phases.sort_by(|a, b| b.cmp(a));
        let slices = phases
            .iter()
            .map(|p| sigma.slice_classes(p, slice_cap))
            .collect::<Result<_>>()?;
        let generators = phases
            .iter()
            .map(|p| {
                let g = sigma.slice_indecomposables(p)?;
                Ok(g.into_iter().map(|(id, s)| DerivedClass::single(id, s)).collect())
            })
            .collect::<Result<_>>()?;
        Ok(SemistableAtlas { phases, slices, generators, slice_cap })
    }

    /// Whether every HN factor of `x` is an atlas object.
    pub fn covers(&self, sigma: &StabilityCondition, x: &DerivedClass) -> Result<bool> {
        let cat = sigma.catalog();
        Ok(sigma
            .hn_filtration(x)?
            .factors
            .iter()
            .all(|(a, p)| a.total_dim(cat) <= self.slice_cap && self.phases.contains(p)))
    }
}

/// Sums over tuples of semistable objects with strictly decreasing phases,
/// i.e. products `δ_{A_1} * ... * δ_{A_n}` evaluated at one class.
pub struct DecreasingProducts<'a> {
    sigma: &'a StabilityCondition,
    alg: &'a dyn PointwiseAlgebra,
    atlas: &'a SemistableAtlas,
    memo: HashMap<(DerivedClass, usize, Option<i32>), BigRational>,
    pub residuals: Vec<String>,
}

impl<'a> DecreasingProducts<'a> {
    pub fn new(sigma: &'a StabilityCondition, alg: &'a dyn PointwiseAlgebra, atlas: &'a SemistableAtlas) -> Self {
        DecreasingProducts {
            sigma,
            alg,
            atlas,
            memo: HashMap::new(),
            residuals: Vec::new(),
        }
    }

    /// Sum over nonempty tuples whose phases are all among `phases[start..]`;
    /// with `last_window`, the final factor must lie in that window.
    pub fn tuples_at(&mut self, x: &DerivedClass, start: usize, last_window: Option<i32>) -> Result<BigRational> {
        let key = (x.clone(), start, last_window);
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let cat = self.sigma.catalog().clone();
        let mut acc = BigRational::zero();
        for j in start..self.atlas.phases.len() {
            let psi = self.atlas.phases[j].clone();
            let ends_here = last_window.is_none_or(|m| psi.window() == m);
            // Hom(P(ψ), P(<ψ)) = 0, so in a triangle M -> X -> N with N in
            // P(<ψ) every slice generator G has Hom(G, M) = Hom(G, X).
            let probe: Vec<Option<usize>> = self.atlas.generators[j].iter().map(|g| self.alg.hom_dim(g, x)).collect();
            if probe.iter().all(|d| *d == Some(0)) {
                continue;
            }
            for m in &self.atlas.slices[j] {
                let mismatch = self.atlas.generators[j]
                    .iter()
                    .zip(&probe)
                    .any(|(g, d)| d.is_some() && self.alg.hom_dim(g, m) != *d);
                if mismatch {
                    continue;
                }
                for (n, f) in self.alg.quotients(m, x)? {
                    if n.is_zero() {
                        if ends_here {
                            acc += f;
                        }
                        continue;
                    }
                    // Later factors have phase below ψ, and so does anything
                    // they build.
                    if top_phase(self.sigma, &n)? >= psi {
                        continue;
                    }
                    if !self.atlas.covers(self.sigma, &n)? {
                        self.residuals
                            .push(format!("{} -> {} -> {}", m.name(&cat), x.name(&cat), n.name(&cat)));
                        continue;
                    }
                    acc += f * self.tuples_at(&n, j + 1, last_window)?;
                }
            }
        }
        self.memo.insert(key, acc.clone());
        Ok(acc)
    }

    /// `(∏← SS_φ)(X)` over the occupied phases.
    pub fn ordered_ss_at(&mut self, x: &DerivedClass) -> Result<BigRational> {
        let unit = if x.is_zero() { BigRational::one() } else { BigRational::zero() };
        Ok(unit + self.tuples_at(x, 0, None)?)
    }
}

/// `∏ F^{X_i}_{X_{i-1}, A_i} = 1` along the HN tower of every nonzero class.
pub fn verify_lemma_wc(sigma: &StabilityCondition, dh: &DerivedHall, profile: &TruncationProfile) -> Result<Report> {
    let cat = sigma.catalog();
    let mut report = Report::new("lemma-wc", window_label(profile), profile.total_dim_cap);
    for x in profile.classes(cat) {
        let hn = sigma.hn_filtration(&x)?;
        let mut prod = BigRational::one();
        let mut prev = DerivedClass::zero();
        for ((a, _), xi) in hn.factors.iter().zip(&hn.tower) {
            prod *= dh.dhall_number(&prev, a, xi)?;
            prev = xi.clone();
        }
        report.check(x.name(cat), prod, 1);
    }
    Ok(report)
}

/// Both HN identities for class γ: `κ_γ = Σ δ * ... * δ` over decreasing
/// tuples, and its refinement `^mκ_γ` where the last factor sits in window `m`.
pub fn verify_hn_fine(
    sigma: &StabilityCondition,
    alg: &dyn PointwiseAlgebra,
    atlas: &SemistableAtlas,
    gamma: &DimVector,
    m: i32,
    profile: &TruncationProfile,
) -> Result<Report> {
    let cat = sigma.catalog();
    let mut report = Report::new(format!("hn-fine {gamma} m={m}"), window_label(profile), profile.total_dim_cap);
    let mut engine = DecreasingProducts::new(sigma, alg, atlas);
    for x in profile.classes(cat) {
        if x.k0(cat) != *gamma {
            continue;
        }
        let lhs = u8::from(sigma.kappa_value(&x, gamma, None)?);
        report.check(format!("kappa at {}", x.name(cat)), lhs, engine.tuples_at(&x, 0, None)?);
        let lhs = u8::from(sigma.kappa_value(&x, gamma, Some(m))?);
        report.check(format!("^{m}kappa at {}", x.name(cat)), lhs, engine.tuples_at(&x, 0, Some(m))?);
    }
    for r in std::mem::take(&mut engine.residuals) {
        report.residual(r);
    }
    Ok(report)
}

/// `1 = ∏← SS_φ` at every class of the window, and each `SS_φ` is grouplike.
pub fn verify_wall_crossing_derived(
    sigma: &StabilityCondition,
    alg: &dyn PointwiseAlgebra,
    atlas: &SemistableAtlas,
    profile: &TruncationProfile,
) -> Result<Report> {
    let cat = sigma.catalog();
    let mut report = Report::new("wall-crossing-derived", window_label(profile), profile.total_dim_cap);
    let mut engine = DecreasingProducts::new(sigma, alg, atlas);
    let mut classes = vec![DerivedClass::zero()];
    classes.extend(profile.classes(cat));
    for x in &classes {
        report.check(x.name(cat), engine.ordered_ss_at(x)?, 1);
    }
    for r in std::mem::take(&mut engine.residuals) {
        report.residual(r);
    }
    report.absorb(verify_ss_grouplike(sigma, atlas, profile)?);
    Ok(report)
}

/// `SS_φ(M ⊕ N) = SS_φ(M) SS_φ(N)` for every splitting of every class.
pub fn verify_ss_grouplike(sigma: &StabilityCondition, atlas: &SemistableAtlas, profile: &TruncationProfile) -> Result<Report> {
    let cat = sigma.catalog();
    let mut report = Report::new("ss-grouplike", window_label(profile), profile.total_dim_cap);
    for phi in &atlas.phases {
        for x in profile.classes(cat) {
            let whole = sigma.ss_value(&x, phi)?;
            for (a, b) in x.splittings() {
                let parts = sigma.ss_value(&a, phi)? && sigma.ss_value(&b, phi)?;
                report.check(format!("{} = {} + {} at {phi}", x.name(cat), a.name(cat), b.name(cat)), whole, parts);
            }
        }
    }
    Ok(report)
}

/// Phase monotonicity in triangles, direct sums of semistables, shift
/// invariance and indecomposability of stable objects, exhaustively on the profile.
pub fn check_lemma_suite_derived(sigma: &StabilityCondition, dh: &DerivedHall, profile: &TruncationProfile) -> Result<Report> {
    let cat = sigma.catalog();
    let mut report = Report::new("lemma-suite-derived", window_label(profile), profile.total_dim_cap);
    let classes = profile.classes(cat);
    let mut semistable = Vec::new();
    for x in &classes {
        let p = sigma.phase(x)?;
        for n in -2..=2 {
            let y = x.shift(n);
            let q = sigma.phase(&y)?;
            report.assert(
                format!("{} shifted by {n}", x.name(cat)),
                q == p.as_ref().map(|p| p.shift(n)) && sigma.is_stable(&y)? == sigma.is_stable(x)?,
                "shift preserves (semi)stability and moves the phase",
            );
        }
        if let Some(p) = &p {
            let simple = simple_in_slice(sigma, dh, x, p)?;
            report.assert(x.name(cat), simple == sigma.is_stable(x)?, "stable means simple in the slice");
            report.assert(x.name(cat), !simple || x.is_indecomposable(), "stable objects are indecomposable");
        }
        for (a, b) in x.splittings() {
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let pa = sigma.phase(&a)?;
            let both = pa.is_some() && pa == sigma.phase(&b)?;
            report.assert(
                format!("{} = {} + {}", x.name(cat), a.name(cat), b.name(cat)),
                p.is_some() == both && (!both || p == pa),
                "a direct sum is in P(φ) iff both summands are",
            );
        }
        if let Some(p) = p {
            semistable.push((x.clone(), p));
        }
    }
    for (m, pm) in &semistable {
        for (x, px) in &semistable {
            for (n, _) in dh.quotients_of(m, x)? {
                if n.is_zero() {
                    continue;
                }
                if let Some(pn) = sigma.phase(&n)? {
                    report.assert(
                        format!("{} -> {} -> {}", m.name(cat), x.name(cat), n.name(cat)),
                        pm <= px && px <= &pn,
                        "phases increase along a triangle of semistables",
                    );
                }
            }
        }
    }
    Ok(report)
}

/// No triangle `M -> X -> N` with `M`, `N` nonzero objects of the slice of `X`.
fn simple_in_slice(sigma: &StabilityCondition, dh: &DerivedHall, x: &DerivedClass, phi: &PhasePoint) -> Result<bool> {
    for m in sigma.slice_classes(phi, x.total_dim(sigma.catalog()))? {
        if m == *x {
            continue;
        }
        for (n, _) in dh.quotients_of(&m, x)? {
            if !n.is_zero() && sigma.phase(&n)?.as_ref() == Some(phi) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
