//! Audits over whole inputs: window stabilization, the standard-vs-BM pair
//! comparison, the dimension identities and the box laws.

use serde::Serialize;

use crate::config::{
    configurations, critical_grid, dimension_formula_check, f_corners, f_split, stable_configurations, t_box,
    t_corners, t_split, theta_box, BoxAboveDiagonal, ConfigError, DegreeResult, DimensionReport, Engine, PlaneBox,
    Setting, Split, Variant,
};
use crate::covercomplex::{format_rational, CoverData, Q};
use crate::fieldlin::Field;

use super::{HarnessError, Verdict};

const VARIANTS: [Variant; 2] = [Variant::Standard, Variant::Bm];

fn all_degrees(data: &CoverData) -> Vec<usize> {
    (0..=data.complex.dim()).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct WindowTrial {
    pub sheets: i64,
    /// `None` when either size failed for window reasons.
    pub identical: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WindowAudit {
    pub periodic: bool,
    pub trials: Vec<WindowTrial>,
    /// The least size whose configurations agree with the doubled window.
    pub stable_sheets: Option<i64>,
}

impl Verdict for WindowAudit {
    fn passed(&self) -> bool {
        self.stable_sheets.is_some()
    }
}

/// Try `K = 2, 3, …` while `2K ≤ cap`, comparing every configuration in
/// both variants and all degrees at `K` and `2K` sheets.
pub fn window_audit<F: Field>(field: &F, data: &CoverData, cap: i64) -> Result<WindowAudit, HarnessError> {
    let degrees = all_degrees(data);
    if !data.has_period() {
        configurations(field, data, 1, &VARIANTS, &degrees)?;
        return Ok(WindowAudit {
            periodic: false,
            trials: vec![WindowTrial {
                sheets: 1,
                identical: Some(true),
            }],
            stable_sheets: Some(1),
        });
    }
    let run = |k: i64| -> Result<Option<Vec<DegreeResult>>, HarnessError> {
        match configurations(field, data, k, &VARIANTS, &degrees) {
            Ok(r) => Ok(Some(r)),
            Err(e) if e.is_window_related() => Ok(None),
            Err(e) => Err(e.into()),
        }
    };
    let mut trials = Vec::new();
    let mut k = 2;
    while 2 * k <= cap {
        let identical = match (run(k)?, run(2 * k)?) {
            (Some(x), Some(y)) => Some(x == y),
            _ => None,
        };
        trials.push(WindowTrial { sheets: k, identical });
        if identical == Some(true) {
            return Ok(WindowAudit {
                periodic: true,
                trials,
                stable_sheets: Some(k),
            });
        }
        k += 1;
    }
    Ok(WindowAudit {
        periodic: true,
        trials,
        stable_sheets: None,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ThetaLevel {
    pub r: usize,
    pub a: String,
    pub standard_dim: usize,
    pub bm_dim: usize,
    pub rank: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ThetaComparison {
    pub sheets: i64,
    pub levels: Vec<ThetaLevel>,
}

impl Verdict for ThetaComparison {
    fn passed(&self) -> bool {
        self.levels
            .iter()
            .all(|l| l.standard_dim == l.bm_dim && l.rank == l.standard_dim)
    }
}

/// At each safe critical value compare `H_r(W_a, W_{a−ε})` with
/// `H_r(W_a, W_{a−ε} ∪ Bot)` through the map induced by inclusion.
pub fn theta_comparison<F: Field>(field: &F, data: &CoverData, sheets: i64) -> Result<ThetaComparison, HarnessError> {
    let setting = Setting::new(data.clone(), sheets)?;
    let mut levels = Vec::new();
    for r in all_degrees(data) {
        let std = Engine::new(field.clone(), setting.clone(), Variant::Standard, r)?;
        let bm = Engine::new(field.clone(), setting.clone(), Variant::Bm, r)?;
        for a in setting.safe_critical() {
            let p = std.pair_at(&a)?;
            let q = bm.pair_at(&a)?;
            let (_, l) = bm.pair_cells(&a)?;
            let m = p.map_to(&q, &l)?;
            levels.push(ThetaLevel {
                r,
                a: format_rational(&a),
                standard_dim: p.dim(),
                bm_dim: q.dim(),
                rank: m.rank(),
            });
        }
    }
    Ok(ThetaComparison { sheets, levels })
}

#[derive(Clone, Debug, Serialize)]
pub struct DimensionAudit {
    pub sheets: i64,
    pub variants: Vec<Variant>,
    pub reports: Vec<DimensionReport>,
}

impl Verdict for DimensionAudit {
    fn passed(&self) -> bool {
        self.reports.iter().all(DimensionReport::holds)
    }
}

/// The pair-homology identities at every fundamental critical value, every
/// degree and both variants, on a stabilized window.
pub fn dimension_audit<F: Field>(
    field: &F,
    data: &CoverData,
    start: i64,
    cap: i64,
) -> Result<DimensionAudit, HarnessError> {
    let degrees = all_degrees(data);
    let stable = stable_configurations(field, data, start, cap, &VARIANTS, &degrees)?;
    let setting = Setting::new(data.clone(), stable.sheets)?;
    let mut reports = Vec::new();
    for variant in VARIANTS {
        let find = |r: usize| {
            stable
                .results
                .iter()
                .find(|d| d.variant == variant && d.r == r)
                .map(|d| &d.configs)
        };
        for &r in &degrees {
            let e = Engine::new(field.clone(), setting.clone(), variant, r)?;
            let here = find(r).expect("computed");
            let lower = r.checked_sub(1).and_then(find);
            for a in setting.fundamental_critical() {
                reports.push(dimension_formula_check(&e, &a, here, lower)?);
            }
        }
    }
    Ok(DimensionAudit {
        sheets: stable.sheets,
        variants: VARIANTS.to_vec(),
        reports,
    })
}

/// A box where a law failed, with what was observed.
#[derive(Clone, Debug, Serialize)]
pub struct BoxFailure {
    pub law: String,
    pub variant: Variant,
    pub r: usize,
    pub bx: String,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct BoxLawReport {
    pub theta_checked: usize,
    pub split_checked: usize,
    pub corner_checked: usize,
    pub t_checked: usize,
    pub failures: Vec<BoxFailure>,
}

impl Verdict for BoxLawReport {
    fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl BoxLawReport {
    fn fail(&mut self, law: &str, e: &Engine<impl Field>, bx: String, detail: String) {
        self.failures.push(BoxFailure {
            law: law.into(),
            variant: e.variant,
            r: e.r,
            bx,
            detail,
        });
    }

    pub fn merge(&mut self, other: BoxLawReport) {
        self.theta_checked += other.theta_checked;
        self.split_checked += other.split_checked;
        self.corner_checked += other.corner_checked;
        self.t_checked += other.t_checked;
        self.failures.extend(other.failures);
    }
}

/// Every box with corners on the critical grid of the safe range (thinned
/// to `cap` levels): θ(B) is an isomorphism, 𝔽 and 𝕋 are additive under a
/// cut at an interior grid level, corners inject and surject, and each
/// 𝕋 box agrees with its ω̂ description (checked inside [`t_box`]).
pub fn box_law_audit<F: Field>(
    field: &F,
    data: &CoverData,
    sheets: i64,
    cap: usize,
) -> Result<BoxLawReport, HarnessError> {
    let setting = Setting::new(data.clone(), sheets)?;
    let grid = critical_grid(&setting.safe_critical(), cap);
    let mut rep = BoxLawReport::default();
    for variant in VARIANTS {
        for r in all_degrees(data) {
            let e = Engine::new(field.clone(), setting.clone(), variant, r)?;
            plane_laws(&e, &grid, &mut rep)?;
            above_diagonal_laws(&e, &grid, &mut rep)?;
        }
    }
    Ok(rep)
}

fn pairs(grid: &[Q]) -> Vec<(usize, usize)> {
    let n = grid.len();
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

fn mid(i: usize, j: usize) -> Option<usize> {
    (j > i + 1).then_some((i + j) / 2)
}

fn plane_laws<F: Field>(e: &Engine<F>, grid: &[Q], rep: &mut BoxLawReport) -> Result<(), HarnessError> {
    for (i0, i1) in pairs(grid) {
        for (j0, j1) in pairs(grid) {
            let bx = PlaneBox::new(grid[i0].clone(), grid[i1].clone(), grid[j0].clone(), grid[j1].clone())?;
            let th = theta_box(e, &bx)?;
            rep.theta_checked += 1;
            if !th.is_isomorphism() {
                rep.fail("theta", e, bx.to_string(), format!("{th:?}"));
            }
            let cuts = [
                mid(i0, i1).map(|k| Split::Horizontal(grid[k].clone())),
                mid(j0, j1).map(|k| Split::Vertical(grid[k].clone())),
            ];
            for cut in cuts.into_iter().flatten() {
                let s = f_split(e, &bx, &cut)?;
                rep.split_checked += 1;
                if !s.exact() {
                    rep.fail("f-split", e, bx.to_string(), format!("{cut:?}: {s:?}"));
                }
            }
            if let (Some(x), Some(y)) = (mid(i0, i1), mid(j0, j1)) {
                let c = f_corners(e, &bx, &grid[x], &grid[y])?;
                rep.corner_checked += 1;
                if !(c.injective && c.surjective) {
                    rep.fail("f-corners", e, bx.to_string(), format!("{c:?}"));
                }
            }
        }
    }
    Ok(())
}

fn above_diagonal_laws<F: Field>(e: &Engine<F>, grid: &[Q], rep: &mut BoxLawReport) -> Result<(), HarnessError> {
    let n = grid.len();
    for (i0, i1) in pairs(grid) {
        // b0 ranges over levels ≥ a, b over levels above b0 or +∞.
        for j0 in i1..n {
            for j1 in (j0 + 1..=n).rev() {
                let b = (j1 < n).then(|| grid[j1].clone());
                let bx = BoxAboveDiagonal::new(grid[i0].clone(), grid[i1].clone(), grid[j0].clone(), b)?;
                match t_box(e, &bx) {
                    Ok(_) => {}
                    Err(ConfigError::InternalMismatch(m)) => rep.fail("t-omega", e, bx.to_string(), m),
                    Err(err) => return Err(err.into()),
                }
                rep.t_checked += 1;
                let cuts = [
                    mid(i0, i1).map(|k| Split::Horizontal(grid[k].clone())),
                    mid(j0, j1).map(|k| Split::Vertical(grid[k].clone())),
                ];
                for cut in cuts.into_iter().flatten() {
                    let s = t_split(e, &bx, &cut)?;
                    rep.split_checked += 1;
                    if !s.exact() {
                        rep.fail("t-split", e, bx.to_string(), format!("{cut:?}: {s:?}"));
                    }
                }
                if let (Some(x), Some(y)) = (mid(i0, i1), mid(j0, j1)) {
                    let c = t_corners(e, &bx, &grid[x], &grid[y])?;
                    rep.corner_checked += 1;
                    if !(c.injective && c.surjective) {
                        rep.fail("t-corners", e, bx.to_string(), format!("{c:?}"));
                    }
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covercomplex::validate;
    use crate::fieldlin::PrimeField;
    use crate::harness::fixtures;

    fn data(fx: &fixtures::Fixture) -> CoverData {
        validate(&fx.complex, &fx.form).unwrap()
    }

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    #[test]
    fn window_baselines() {
        let w = window_audit(&f2(), &data(&fixtures::fix_w()), 16).unwrap();
        assert!(w.stable_sheets.unwrap() <= 4, "{w:?}");
        let c = window_audit(&f2(), &data(&fixtures::fix_c()), 16).unwrap();
        assert!(c.stable_sheets.unwrap() <= 3, "{c:?}");
        let g = window_audit(&f2(), &data(&fixtures::fix_g()), 16).unwrap();
        assert_eq!(g.stable_sheets, Some(1));
    }

    #[test]
    fn theta_comparison_on_fixtures() {
        for fx in fixtures::all() {
            let d = data(&fx);
            let sheets = if d.has_period() { 4 } else { 1 };
            let rep = theta_comparison(&f2(), &d, sheets).unwrap();
            assert!(rep.passed(), "{}: {rep:?}", fx.name);
        }
    }

    #[test]
    fn dimension_identities_on_fixtures() {
        for fx in fixtures::all() {
            let rep = dimension_audit(&f2(), &data(&fx), 2, 16).unwrap();
            let bad: Vec<_> = rep.reports.iter().filter(|r| !r.holds()).collect();
            assert!(bad.is_empty(), "{}: {bad:#?}", fx.name);
        }
    }

    #[test]
    fn box_laws_on_small_fixtures() {
        for fx in [fixtures::fix_w(), fixtures::fix_g(), fixtures::fix_c()] {
            let d = data(&fx);
            let sheets = if d.has_period() { 4 } else { 1 };
            let rep = box_law_audit(&f2(), &d, sheets, 6).unwrap();
            assert!(rep.passed(), "{}: {:#?}", fx.name, rep.failures);
            assert!(rep.theta_checked > 0);
        }
    }
}
