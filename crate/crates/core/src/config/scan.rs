//! Support scans over the critical grid, the projected 1-D configurations,
//! and the dimension identities relating them to pair homology.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::covercomplex::{reduce_mod, Q};
use crate::fieldlin::Field;

use super::boxes::{f_box, PlaneBox};
use super::engine::Engine;
use super::{ConfigError, Kind, Variant};

/// Finitely many points `(a, b)` with multiplicities, one per Γ-orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration2D {
    pub r: usize,
    pub variant: Variant,
    pub kind: Kind,
    pub period: Q,
    pub points: Vec<((Q, Q), usize)>,
}

impl Configuration2D {
    /// Multiplicity at `(x, y)`, reading the stored orbit representative.
    pub fn value(&self, x: &Q, y: &Q) -> usize {
        let (x, y) = if self.period.is_positive() {
            let k = (x / &self.period).floor();
            let shift = k * &self.period;
            (x - &shift, y - &shift)
        } else {
            (x.clone(), y.clone())
        };
        self.points
            .iter()
            .filter(|((a, b), _)| *a == x && *b == y)
            .map(|(_, m)| *m)
            .sum()
    }

    /// `Σ_t m(x, t)`.
    pub fn row_sum(&self, x: &Q) -> usize {
        let x = reduce_mod(x, &self.period);
        self.points.iter().filter(|((a, _), _)| *a == x).map(|(_, m)| *m).sum()
    }

    /// `Σ_t m(t, y)` over all translates.
    pub fn column_sum(&self, y: &Q) -> usize {
        self.points
            .iter()
            .filter(|((_, b), _)| {
                let d = y - b;
                if self.period.is_positive() {
                    (d / &self.period).is_integer()
                } else {
                    d.is_zero()
                }
            })
            .map(|(_, m)| *m)
            .sum()
    }

    pub fn total(&self) -> usize {
        self.points.iter().map(|(_, m)| *m).sum()
    }

    /// Project to `t = b − a`, summing multiplicities.
    pub fn project(&self) -> Configuration1D {
        let mut acc: BTreeMap<Q, usize> = BTreeMap::new();
        for ((a, b), m) in &self.points {
            *acc.entry(b - a).or_default() += m;
        }
        let points: Vec<(Q, usize)> = acc.into_iter().collect();
        Configuration1D {
            r: self.r,
            variant: self.variant,
            kind: self.kind,
            total: points.iter().map(|(_, m)| m).sum(),
            points,
        }
    }
}

/// Points `t` on the line with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration1D {
    pub r: usize,
    pub variant: Variant,
    pub kind: Kind,
    pub points: Vec<(Q, usize)>,
    pub total: usize,
}

impl Configuration1D {
    pub fn value(&self, t: &Q) -> usize {
        self.points.iter().filter(|(s, _)| s == t).map(|(_, m)| *m).sum()
    }
}

/// The values `a` scanned for orbit representatives; each must be safe.
fn representatives<F: Field>(e: &Engine<F>) -> Result<Vec<Q>, ConfigError> {
    let reps = e.setting.fundamental_critical();
    for a in &reps {
        e.window().check_safe(a)?;
    }
    Ok(reps)
}

/// Scan the critical grid for the support of δ, γ or λ.
pub fn support_scan<F: Field>(e: &Engine<F>, kind: Kind) -> Result<Configuration2D, ConfigError> {
    let reps = representatives(e)?;
    let levels = e.setting.safe_critical();
    let mut points = Vec::new();
    for a in &reps {
        match kind {
            Kind::Delta => {
                for b in &levels {
                    let d = e.delta_hat(a, b)?.dim();
                    if d > 0 {
                        points.push(((a.clone(), b.clone()), d));
                    }
                }
            }
            Kind::Gamma => {
                for b in levels.iter().filter(|b| *b > a) {
                    let d = e.gamma_hat(a, b)?.dim();
                    if d > 0 {
                        points.push(((a.clone(), b.clone()), d));
                    }
                }
            }
            Kind::Lambda => {
                let d = e.lambda_hat(a)?.dim();
                if d > 0 {
                    points.push(((a.clone(), a.clone()), d));
                }
            }
        }
    }
    Ok(Configuration2D {
        r: e.r,
        variant: e.variant,
        kind,
        period: e.setting.period().clone(),
        points,
    })
}

/// The 1-D configuration; for δ its total is compared with the
/// Novikov–Betti number when one is supplied.
pub fn configuration_1d(conf: &Configuration2D, novikov: Option<usize>) -> Result<Configuration1D, ConfigError> {
    let c = conf.project();
    if let (Kind::Delta, Some(n)) = (conf.kind, novikov) {
        if c.total != n {
            return Err(ConfigError::CardinalityMismatch {
                r: conf.r,
                total: c.total,
                novikov: n,
            });
        }
    }
    Ok(c)
}

/// The configurations of one degree and variant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeConfigs {
    pub delta: Configuration2D,
    pub gamma: Configuration2D,
    pub lambda: Configuration2D,
}

pub fn degree_configs<F: Field>(e: &Engine<F>) -> Result<DegreeConfigs, ConfigError> {
    Ok(DegreeConfigs {
        delta: support_scan(e, Kind::Delta)?,
        gamma: support_scan(e, Kind::Gamma)?,
        lambda: support_scan(e, Kind::Lambda)?,
    })
}

/// Both sides of the pair-homology identity at one critical value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionReport {
    pub r: usize,
    pub a: String,
    pub pair_dim: usize,
    pub delta_row: usize,
    pub gamma_row: usize,
    pub gamma_column_below: usize,
    pub lambda_below: usize,
    /// `dim 𝕋_r(<a, a)` against `λ_r(a) + Σ_{x<a} γ_r(x, a)`.
    pub t_before: usize,
    pub t_before_rhs: usize,
}

impl DimensionReport {
    pub fn holds(&self) -> bool {
        self.pair_dim == self.delta_row + self.gamma_row + self.gamma_column_below + self.lambda_below
            && self.t_before == self.t_before_rhs
    }
}

/// Compare `dim H_r(X̃_a, X̃_{<a})` with
/// `Σ_t δ_r(a,t) + Σ_{t>a} γ_r(a,t) + Σ_{t<a} γ_{r−1}(t,a) + λ_{r−1}(a)`,
/// and `dim 𝕋_r(<a,a)` with `λ_r(a) + Σ_{x<a} γ_r(x,a)`.
/// `lower` holds the degree `r − 1` configurations (`None` for `r = 0`).
pub fn dimension_formula_check<F: Field>(
    e: &Engine<F>,
    a: &Q,
    here: &DegreeConfigs,
    lower: Option<&DegreeConfigs>,
) -> Result<DimensionReport, ConfigError> {
    let pair_dim = e.pair_at(a)?.dim();
    let (gamma_column_below, lambda_below) = match lower {
        Some(l) => (l.gamma.column_sum(a), l.lambda.value(a, a)),
        None => (0, 0),
    };
    Ok(DimensionReport {
        r: e.r,
        a: crate::covercomplex::format_rational(a),
        pair_dim,
        delta_row: here.delta.row_sum(a),
        gamma_row: here.gamma.row_sum(a),
        gamma_column_below,
        lambda_below,
        t_before: e.t_before(a)?.dim(),
        t_before_rhs: here.lambda.value(a, a) + here.gamma.column_sum(a),
    })
}

/// `dim 𝔽((a−ε, a] × [x, y))` against `Σ_{x ≤ t < y} δ(a, t)`.
pub fn interval_check<F: Field>(
    e: &Engine<F>,
    a: &Q,
    x: &Q,
    y: &Q,
    delta: &Configuration2D,
) -> Result<(usize, usize), ConfigError> {
    let bx = PlaneBox::new(a - e.eps(), a.clone(), x.clone(), y.clone())?;
    let lhs = f_box(e, &bx)?.dim();
    let rhs = e
        .setting
        .critical_between(x, y)
        .iter()
        .filter(|t| *t < y)
        .map(|t| delta.value(a, t))
        .sum();
    Ok((lhs, rhs))
}

/// Sorted sample of levels for box checks: the given critical values and
/// the midpoints between them, thinned evenly to at most `cap`.
pub fn critical_grid(values: &[Q], cap: usize) -> Vec<Q> {
    let mut grid: Vec<Q> = Vec::new();
    for w in values.windows(2) {
        grid.push(w[0].clone());
        grid.push((&w[0] + &w[1]) / Q::from_integer(2.into()));
    }
    if let Some(last) = values.last() {
        grid.push(last.clone());
    }
    if grid.len() <= cap || cap < 2 {
        return grid;
    }
    let n = grid.len();
    (0..cap).map(|i| grid[i * (n - 1) / (cap - 1)].clone()).collect()
}
