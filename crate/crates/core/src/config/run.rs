//! Computing all configurations of a cover and enlarging the window until
//! they stop changing.

use crate::covercomplex::CoverData;
use crate::fieldlin::Field;

use super::engine::{Engine, Setting};
use super::novikov::novikov_betti;
use super::scan::{degree_configs, DegreeConfigs};
use super::{ConfigError, Variant};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeResult {
    pub r: usize,
    pub variant: Variant,
    pub configs: DegreeConfigs,
    pub novikov: usize,
}

/// Every requested configuration on one window of `sheets` sheets.
pub fn configurations<F: Field>(
    field: &F,
    data: &CoverData,
    sheets: i64,
    variants: &[Variant],
    degrees: &[usize],
) -> Result<Vec<DegreeResult>, ConfigError> {
    let setting = Setting::new(data.clone(), sheets)?;
    let mut out = Vec::new();
    for &variant in variants {
        for &r in degrees {
            let e = Engine::new(field.clone(), setting.clone(), variant, r)?;
            out.push(DegreeResult {
                r,
                variant,
                configs: degree_configs(&e)?,
                novikov: novikov_betti(field, data, r),
            });
        }
    }
    Ok(out)
}

/// Configurations that agree on windows of `sheets` and `2·sheets` sheets.
#[derive(Clone, Debug)]
pub struct Stabilized {
    pub sheets: i64,
    pub results: Vec<DegreeResult>,
}

/// Double the window from `start` sheets until two consecutive sizes give
/// identical configurations; the larger size may not exceed `cap`. Without
/// a period the window is the base complex and no doubling is needed.
pub fn stable_configurations<F: Field>(
    field: &F,
    data: &CoverData,
    start: i64,
    cap: i64,
    variants: &[Variant],
    degrees: &[usize],
) -> Result<Stabilized, ConfigError> {
    if !data.has_period() {
        return Ok(Stabilized {
            sheets: 1,
            results: configurations(field, data, 1, variants, degrees)?,
        });
    }
    let attempt = |k: i64| match configurations(field, data, k, variants, degrees) {
        Ok(r) => Ok(Some(r)),
        Err(e) if e.is_window_related() => Ok(None),
        Err(e) => Err(e),
    };
    let mut k = start.max(2);
    let mut prev = attempt(k)?;
    while 2 * k <= cap {
        let next = attempt(2 * k)?;
        if let (Some(a), Some(b)) = (&prev, &next) {
            if a == b {
                return Ok(Stabilized {
                    sheets: k,
                    results: prev.expect("checked"),
                });
            }
        }
        prev = next;
        k *= 2;
    }
    Err(ConfigError::NotStabilized)
}
