//! Stability of δ under perturbations within the cohomology class.

use num_traits::{Signed, Zero};
use rand::Rng;
use serde::Serialize;

use crate::config::{support_scan, ConfigError, Configuration1D, Engine, Kind, Setting, Variant};
use crate::covercomplex::{format_rational, integrate, CoverData, OneForm, Q};
use crate::fieldlin::{Field, Subspace};

use super::{line_points, HarnessError, LinePoint, Verdict};

/// A vertex function `g` with `dg` equal to the given edge deltas, centred
/// so that `sup |g|` is as small as possible. Fails when the deltas have a
/// nonzero period.
pub fn exact_difference(data: &CoverData, delta: &OneForm) -> Result<Vec<Q>, HarnessError> {
    let (g, periods) = integrate(&data.complex, delta);
    if let Some(p) = periods.first() {
        return Err(HarnessError::ClassMismatch(format_rational(p)));
    }
    let lo = g.iter().min().cloned().unwrap_or_else(Q::zero);
    let hi = g.iter().max().cloned().unwrap_or_else(Q::zero);
    let mid = (lo + hi) / Q::from_integer(2.into());
    Ok(g.into_iter().map(|x| x - &mid).collect())
}

/// Edge deltas `dg` of a random vertex function with `sup |g| < bound / 2`.
pub fn random_perturbation<R: Rng>(data: &CoverData, bound: &Q, rng: &mut R) -> OneForm {
    const STEPS: i64 = 16;
    let g: Vec<Q> = (0..data.complex.n_vertices())
        .map(|_| bound * Q::new(rng.gen_range(1 - STEPS..STEPS).into(), (2 * STEPS).into()))
        .collect();
    OneForm {
        values: vec![Q::zero(); data.complex.count(1)],
    }
    .plus_coboundary(&data.complex, &g)
}

/// The 1-D standard δ in degree `r`, doubling the window until two sizes
/// agree. Returns the configuration and the smaller stable size.
pub fn stable_delta_1d<F: Field>(
    field: &F,
    data: &CoverData,
    r: usize,
    start: i64,
    cap: i64,
) -> Result<(Configuration1D, i64), HarnessError> {
    let at = |k: i64| -> Result<Option<Configuration1D>, HarnessError> {
        let run = || -> Result<Configuration1D, ConfigError> {
            let e = Engine::new(field.clone(), Setting::new(data.clone(), k)?, Variant::Standard, r)?;
            Ok(support_scan(&e, Kind::Delta)?.project())
        };
        match run() {
            Ok(c) => Ok(Some(c)),
            Err(e) if e.is_window_related() => Ok(None),
            Err(e) => Err(e.into()),
        }
    };
    if !data.has_period() {
        let c = at(1)?.ok_or(ConfigError::NotStabilized)?;
        return Ok((c, 1));
    }
    let mut k = start.max(2);
    let mut prev = at(k)?;
    while 2 * k <= cap {
        let next = at(2 * k)?;
        if let (Some(a), Some(b)) = (&prev, &next) {
            if a == b {
                return Ok((next.expect("checked"), k));
            }
        }
        prev = next;
        k *= 2;
    }
    Err(ConfigError::NotStabilized.into())
}

#[derive(Clone, Debug, Serialize)]
pub struct PointSum {
    pub t: String,
    pub mult: usize,
    pub perturbed_sum: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct StabilityReport {
    pub r: usize,
    /// Minimal distance between support points; `None` below two points.
    pub sigma: Option<String>,
    pub eps_used: String,
    pub perturbation_norm: String,
    pub original: Vec<LinePoint>,
    pub perturbed: Vec<LinePoint>,
    pub points: Vec<PointSum>,
    pub leakage: Vec<LinePoint>,
    pub sandwich_levels: usize,
    pub sandwich_failures: Vec<String>,
}

impl Verdict for StabilityReport {
    fn passed(&self) -> bool {
        self.points.iter().all(|p| p.mult == p.perturbed_sum)
            && self.leakage.is_empty()
            && self.sandwich_failures.is_empty()
    }
}

fn min_gap(points: &[(Q, usize)]) -> Option<Q> {
    points.windows(2).map(|w| &w[1].0 - &w[0].0).min()
}

/// Carry a subspace of the perturbed engine's ambient homology into the
/// original engine's; both engines live on the same cells.
fn transport<F: Field>(from: &Engine<F>, to: &Engine<F>, s: &Subspace<F>) -> Result<Subspace<F>, HarnessError> {
    let vecs = s
        .basis()
        .iter()
        .map(|v| {
            let chain = from.ambient().representative(v);
            to.ambient()
                .class_of(&chain, |_| false)
                .ok_or_else(|| HarnessError::BadInput("windows do not share cells".into()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Subspace::spanned_by(to.field().clone(), to.ambient().space(), vecs))
}

/// Check `𝕀^{f}_{a−ε} ⊆ 𝕀^{f′}_a ⊆ 𝕀^{f}_{a+ε}` and the superlevel
/// counterpart at evenly spaced levels across the safe range.
fn sandwiches<F: Field>(
    field: &F,
    data: &CoverData,
    moved: &CoverData,
    r: usize,
    sheets: i64,
    eps: &Q,
    levels: usize,
) -> Result<(usize, Vec<String>), HarnessError> {
    let e1 = Engine::new(field.clone(), Setting::new(data.clone(), sheets)?, Variant::Standard, r)?;
    let e2 = Engine::new(
        field.clone(),
        Setting::new(moved.clone(), sheets)?,
        Variant::Standard,
        r,
    )?;
    let (lo, hi) = match e1.window().safe_range() {
        Some(range) => range,
        None => {
            let v = &data.critical.values;
            (v[0].clone() - eps, v[v.len() - 1].clone() + eps)
        }
    };
    let mut failures = Vec::new();
    let steps = levels.max(2) - 1;
    for k in 0..=steps {
        let a = &lo + (&hi - &lo) * Q::new((k as i64).into(), (steps as i64).into());
        let sub = transport(&e2, &e1, &e2.i_sub(&a)?)?;
        if !e1.i_sub(&(&a - eps))?.is_subspace_of(&sub) || !sub.is_subspace_of(&e1.i_sub(&(&a + eps))?) {
            failures.push(format!("sublevel at {}", format_rational(&a)));
        }
        let sup = transport(&e2, &e1, &e2.i_sup(&a)?)?;
        if !e1.i_sup(&(&a + eps))?.is_subspace_of(&sup) || !sup.is_subspace_of(&e1.i_sup(&(&a - eps))?) {
            failures.push(format!("superlevel at {}", format_rational(&a)));
        }
    }
    Ok((steps + 1, failures))
}

/// Compare the 1-D δ of `ω` and of `ω + delta` in degree `r`. With
/// `eps = None`, `ε = σ/3`, or `gap/3` (at least `6·sup|g|`) when the
/// support has fewer than two points.
#[allow(clippy::too_many_arguments)]
pub fn check_stability<F: Field>(
    field: &F,
    data: &CoverData,
    delta: &OneForm,
    r: usize,
    eps: Option<Q>,
    start: i64,
    cap: i64,
    levels: usize,
) -> Result<StabilityReport, HarnessError> {
    let g = exact_difference(data, delta)?;
    let norm = g.iter().map(|x| x.abs()).max().unwrap_or_else(Q::zero);
    let moved = data.perturbed(&g);
    let (base, k1) = stable_delta_1d(field, data, r, start, cap)?;
    let sigma = min_gap(&base.points);
    let three = Q::from_integer(3.into());
    let eps = match (eps, &sigma) {
        (Some(e), _) => e,
        (None, Some(s)) => s / &three,
        (None, None) => {
            let g3 = &data.critical.gap / &three;
            let floor = &norm * Q::from_integer(6.into());
            if floor > g3 {
                floor
            } else {
                g3
            }
        }
    };
    if !eps.is_positive() {
        return Err(HarnessError::EpsilonTooLarge("ε must be positive".into()));
    }
    if let Some(s) = &sigma {
        if &eps >= s {
            return Err(HarnessError::EpsilonTooLarge(format!(
                "ε = {} is not below σ = {}",
                format_rational(&eps),
                format_rational(s)
            )));
        }
    }
    if &norm * &three >= eps {
        return Err(HarnessError::EpsilonTooLarge(format!(
            "perturbation {} is not below ε/3 for ε = {}",
            format_rational(&norm),
            format_rational(&eps)
        )));
    }
    let (pert, k2) = stable_delta_1d(field, &moved, r, start, cap)?;
    let near = |t: &Q, s: &Q| (s - t).abs() < eps;
    let points = base
        .points
        .iter()
        .map(|(t, m)| PointSum {
            t: format_rational(t),
            mult: *m,
            perturbed_sum: pert.points.iter().filter(|(s, _)| near(t, s)).map(|(_, n)| n).sum(),
        })
        .collect();
    let leakage = pert
        .points
        .iter()
        .filter(|(s, _)| !base.points.iter().any(|(t, _)| near(t, s)))
        .map(|(s, n)| (format_rational(s), *n))
        .collect();
    let (sandwich_levels, sandwich_failures) = sandwiches(field, data, &moved, r, 2 * k1.max(k2), &eps, levels)?;
    Ok(StabilityReport {
        r,
        sigma: sigma.as_ref().map(format_rational),
        eps_used: format_rational(&eps),
        perturbation_norm: format_rational(&norm),
        original: line_points(&base),
        perturbed: line_points(&pert),
        points,
        leakage,
        sandwich_levels,
        sandwich_failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covercomplex::validate;
    use crate::fieldlin::PrimeField;
    use crate::harness::fixtures::{self, q};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    fn wedge() -> CoverData {
        let fx = fixtures::fix_w();
        validate(&fx.complex, &fx.form).unwrap()
    }

    fn edge_delta(data: &CoverData, entries: &[((usize, usize), Q)]) -> OneForm {
        let mut all: Vec<((usize, usize), Q)> =
            data.complex.edges().iter().map(|e| ((e[0], e[1]), Q::zero())).collect();
        for (e, x) in entries {
            let slot = all.iter_mut().find(|(f, _)| f == e).unwrap();
            slot.1 = x.clone();
        }
        OneForm::from_oriented(&data.complex, &all).unwrap()
    }

    #[test]
    fn identity_perturbation_matches() {
        let data = wedge();
        let zero = edge_delta(&data, &[]);
        let rep = check_stability(&f2(), &data, &zero, 1, None, 2, 16, 10).unwrap();
        assert!(rep.passed(), "{rep:#?}");
    }

    #[test]
    fn moving_the_side_loop_moves_the_point() {
        let data = wedge();
        let d = q(1, 100);
        let delta = edge_delta(&data, &[((3, 4), d.clone()), ((0, 4), d)]);
        let rep = check_stability(&f2(), &data, &delta, 1, Some(q(1, 30)), 2, 16, 10).unwrap();
        assert!(rep.passed(), "{rep:#?}");
        assert_eq!(rep.original, vec![("-1/4".to_string(), 1)]);
        assert_eq!(rep.perturbed, vec![("-13/50".to_string(), 1)]);
        assert!(rep.sandwich_levels >= 10);
    }

    #[test]
    fn period_change_is_rejected() {
        let data = wedge();
        let delta = edge_delta(&data, &[((0, 1), q(1, 10))]);
        let err = check_stability(&f2(), &data, &delta, 1, None, 2, 16, 10).unwrap_err();
        assert!(matches!(err, HarnessError::ClassMismatch(_)));
    }

    #[test]
    fn oversized_perturbation_is_rejected() {
        let data = wedge();
        let delta = edge_delta(&data, &[((3, 4), q(1, 10)), ((0, 4), q(1, 10))]);
        let err = check_stability(&f2(), &data, &delta, 1, Some(q(1, 30)), 2, 16, 10).unwrap_err();
        assert!(matches!(err, HarnessError::EpsilonTooLarge(_)));
    }

    #[test]
    fn random_small_perturbations_are_stable() {
        let data = wedge();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let bound = &data.critical.gap / Q::from_integer(9.into());
        for _ in 0..5 {
            let delta = random_perturbation(&data, &bound, &mut rng);
            let rep = check_stability(&f2(), &data, &delta, 1, None, 2, 16, 10).unwrap();
            assert!(rep.passed(), "{rep:#?}");
        }
    }
}
