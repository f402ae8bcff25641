use std::sync::Arc;

use hallwc::abelian::{AbelianStability, StabilityFunction};
use hallwc::catalog::IndecompCatalog;
use hallwc::error::{Error, Result};
use hallwc::field::PrimeField;
use hallwc::phase::Charge;
use hallwc::quiver::QuiverPreset;
use hallwc::{StabilityCondition, TruncationProfile};
use serde_json::Value;

use crate::{Format, GlobalArgs, QuiverArg};

/// Everything a subcommand needs, validated up front.
pub struct RunConfig {
    pub catalog: Arc<IndecompCatalog>,
    pub field: PrimeField,
    pub dim_cap: usize,
    pub profile: TruncationProfile,
    pub spec: Option<Value>,
    pub format: Format,
    pub seed: u64,
}

impl RunConfig {
    pub fn from_args(a: &GlobalArgs) -> Result<Self> {
        let preset = match a.quiver {
            QuiverArg::A1 => QuiverPreset::A1,
            QuiverArg::A2 => QuiverPreset::A2,
            QuiverArg::A3 => QuiverPreset::A3,
            QuiverArg::A4 => QuiverPreset::A4,
        };
        let field = PrimeField::new(a.prime)?;
        if a.dim_cap == 0 {
            return Err(Error::InvalidSpec("--dim-cap must be positive".into()));
        }
        let (lo, hi) = parse_window(&a.window)?;
        let profile = TruncationProfile::new(lo, hi, a.dim_cap)?;
        let catalog = Arc::new(IndecompCatalog::build(preset, (2 * a.dim_cap).max(6))?);
        let spec = match &a.spec {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                Some(serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?)
            }
            None => None,
        };
        let cfg = RunConfig {
            catalog,
            field,
            dim_cap: a.dim_cap,
            profile,
            spec,
            format: a.format,
            seed: a.seed,
        };
        // Reject a malformed spec before any work starts.
        if cfg.spec.is_some() {
            cfg.sigma()?;
        }
        Ok(cfg)
    }

    pub fn preset(&self) -> QuiverPreset {
        self.catalog.preset()
    }

    fn default_charges(&self) -> Vec<Charge> {
        let n = self.catalog.rank() as i64;
        (1..=n).map(|k| Charge::from_ints(n + 1 - 2 * k, 1)).collect()
    }

    pub fn sigma(&self) -> Result<StabilityCondition> {
        match &self.spec {
            Some(v) => StabilityCondition::from_json(self.catalog.clone(), v, self.field),
            None => {
                let z = StabilityFunction::new(self.default_charges(), &self.catalog)?;
                Ok(StabilityCondition::standard(self.catalog.clone(), z, self.field))
            }
        }
    }

    /// The abelian stability of a standard-heart spec.
    pub fn abelian(&self) -> Result<AbelianStability> {
        let z = match &self.spec {
            Some(v) => {
                if v.get("heart").is_some_and(|h| h != "standard") {
                    return Err(Error::UnsupportedHeart("abelian verifiers need the standard heart".into()));
                }
                StabilityFunction::from_json(v, &self.catalog)?
            }
            None => StabilityFunction::new(self.default_charges(), &self.catalog)?,
        };
        Ok(AbelianStability::new(self.catalog.clone(), z, self.field))
    }
}

pub fn parse_window(s: &str) -> Result<(i32, i32)> {
    let bad = || Error::Parse(format!("window {s:?} is not LO:HI"));
    let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
    Ok((lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?))
}

/// Comma-separated integers, e.g. `1,1` or `-1,2`.
pub fn parse_ints(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|t| t.trim().parse().map_err(|_| Error::Parse(format!("{s:?} is not a list of integers"))))
        .collect()
}
