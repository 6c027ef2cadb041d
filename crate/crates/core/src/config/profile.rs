//! Birth and death levels of individual classes, and Γ-compatible
//! splittings of the projections onto δ̂ and γ̂.

use num_traits::Signed;

use crate::covercomplex::{translate_chain, Q};
use crate::fieldlin::{self as fl, Field, SparseVec, Subspace};

use super::engine::Engine;
use super::scan::Configuration2D;
use super::{ConfigError, Kind, Variant};

/// `α(x)`, `β(x)` and `t(x) = β − α`; `None` stands for `−∞`, `+∞`, `∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassProfile {
    pub alpha: Option<Q>,
    pub beta: Option<Q>,
    pub t: Option<Q>,
    pub torsion: bool,
}

/// Scan the safe critical values: `α` is the first `a` with `x ∈ 𝕀_a`,
/// `β` the last `b` with `x ∈ 𝕀^b`. Membership at the lowest (highest)
/// scanned level means `α = −∞` (`β = +∞`).
pub fn class_profile<F: Field>(e: &Engine<F>, x: &SparseVec<F::Elem>) -> Result<ClassProfile, ConfigError> {
    let levels = e.setting.safe_critical();
    let mut alpha = None;
    let mut found = false;
    for (i, a) in levels.iter().enumerate() {
        if e.i_sub(a)?.contains(x) {
            alpha = (i > 0).then(|| a.clone());
            found = true;
            break;
        }
    }
    if !found {
        return Err(ConfigError::NotStabilized);
    }
    let mut beta = None;
    found = false;
    for (i, b) in levels.iter().enumerate().rev() {
        if e.i_sup(b)?.contains(x) {
            beta = (i + 1 < levels.len()).then(|| b.clone());
            found = true;
            break;
        }
    }
    if !found {
        return Err(ConfigError::NotStabilized);
    }
    let t = match (&alpha, &beta) {
        (Some(a), Some(b)) => Some(b - a),
        _ => None,
    };
    Ok(ClassProfile {
        torsion: t.is_none(),
        alpha,
        beta,
        t,
    })
}

/// Lifted basis of δ̂ or γ̂ at one orbit representative, as cycles of the
/// window: ambient cycles for δ, cycles of `W_a` for γ.
#[derive(Clone, Debug)]
pub struct SplitEntry<E> {
    pub a: Q,
    pub b: Q,
    pub chains: Vec<SparseVec<E>>,
}

/// One right inverse per orbit representative; the others are deck
/// translates.
#[derive(Clone, Debug)]
pub struct SplittingFamily<E> {
    pub kind: Kind,
    pub entries: Vec<SplitEntry<E>>,
}

/// Lift a basis of δ̂ (resp. γ̂) at each support point through the
/// projection. Splittings are built in the standard variant, where deck
/// translation acts on cycles of the window.
pub fn build_splittings<F: Field>(
    e: &Engine<F>,
    conf: &Configuration2D,
) -> Result<SplittingFamily<F::Elem>, ConfigError> {
    if e.variant != Variant::Standard {
        return Err(ConfigError::BadInput(
            "splittings are built in the standard variant".into(),
        ));
    }
    let mut entries = Vec::new();
    for ((a, b), _) in &conf.points {
        let chains = match conf.kind {
            Kind::Delta => {
                // Represent each class by a cycle below `a` so that
                // translates stay inside the window where possible.
                let q = e.delta_hat(a, b)?;
                let level = e.sublevel(Some(a))?;
                q.lifts()
                    .iter()
                    .map(|l| {
                        let v = level.to_ambient.solve(l).ok_or_else(|| {
                            ConfigError::InternalMismatch(format!("δ̂({a}, {b}) lift is not born by {a}"))
                        })?;
                        Ok(level.hom.representative(&v))
                    })
                    .collect::<Result<Vec<_>, ConfigError>>()?
            }
            Kind::Gamma => {
                let q = e.gamma_hat(a, b)?;
                let level = e.sublevel(Some(a))?;
                q.lifts().iter().map(|l| level.hom.representative(l)).collect()
            }
            Kind::Lambda => return Err(ConfigError::BadInput("λ has no splitting".into())),
        };
        entries.push(SplitEntry {
            a: a.clone(),
            b: b.clone(),
            chains,
        });
    }
    Ok(SplittingFamily {
        kind: conf.kind,
        entries,
    })
}

/// Outcome of checking a splitting family on a window.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SplittingReport {
    /// `π ∘ i = id` at every stored point and at every translate in range.
    pub sections_ok: bool,
    pub translates_checked: usize,
    /// Grid points where the lifts from the support quadrant were checked.
    pub grid_checked: usize,
    pub grid_failures: Vec<(Q, Q)>,
    /// All translated δ lifts stay independent modulo `Tor_W`.
    pub globally_independent: bool,
}

impl SplittingReport {
    pub fn holds(&self) -> bool {
        self.sections_ok && self.grid_failures.is_empty() && self.globally_independent
    }
}

/// A lift translated to the point `(a + kp, b + kp)`.
struct Placed<E> {
    a: Q,
    b: Q,
    chains: Vec<SparseVec<E>>,
}

/// Translates of every entry whose point lies in the safe range, and the
/// points whose translated cycles left the window.
fn placements<F: Field>(e: &Engine<F>, fam: &SplittingFamily<F::Elem>) -> (Vec<Placed<F::Elem>>, Vec<(Q, Q)>) {
    let s = &e.setting;
    let p = s.period().clone();
    let mut out = Vec::new();
    let mut dropped = Vec::new();
    for entry in &fam.entries {
        if !p.is_positive() {
            out.push(Placed {
                a: entry.a.clone(),
                b: entry.b.clone(),
                chains: entry.chains.clone(),
            });
            continue;
        }
        let (lo, hi) = s.window.safe_range().expect("periodic window");
        let kmin = ((&lo - entry.a.clone().min(entry.b.clone())) / &p).ceil();
        let kmax = ((&hi - entry.a.clone().max(entry.b.clone())) / &p).floor();
        let mut k = kmin;
        while k <= kmax {
            let ki: i64 = k.to_integer().try_into().expect("small shift");
            let chains: Option<Vec<_>> = entry
                .chains
                .iter()
                .map(|c| translate_chain(&s.window, e.r, c, ki))
                .collect();
            let (a, b) = (&entry.a + &k * &p, &entry.b + &k * &p);
            match chains {
                Some(chains) => out.push(Placed { a, b, chains }),
                None => dropped.push((a, b)),
            }
            k += Q::from_integer(1.into());
        }
    }
    (out, dropped)
}

fn ambient_class<F: Field>(e: &Engine<F>, chain: &SparseVec<F::Elem>) -> Option<SparseVec<F::Elem>> {
    let rel = e.ambient_rel();
    e.ambient().class_of(chain, |i| rel.contains(e.r, i))
}

/// Number of vectors and the rank they add on top of `base`.
fn rank_over<F: Field>(e: &Engine<F>, base: &Subspace<F>, vs: &[SparseVec<F::Elem>]) -> usize {
    let with = Subspace::spanned_by(
        e.field().clone(),
        base.ambient(),
        base.basis().iter().cloned().chain(vs.iter().cloned()),
    );
    with.dim() - base.dim()
}

/// Check sections, Γ-compatibility, the quadrant bases at grid points and
/// (for δ) global independence modulo `Tor_W = 𝕀_{lo} ∩ 𝕀^{hi}`.
pub fn verify_splittings<F: Field>(
    e: &Engine<F>,
    fam: &SplittingFamily<F::Elem>,
) -> Result<SplittingReport, ConfigError> {
    let (placed, dropped) = placements(e, fam);
    let levels = e.setting.safe_critical();
    let mut report = SplittingReport {
        sections_ok: true,
        globally_independent: true,
        ..Default::default()
    };
    if levels.is_empty() {
        return Ok(report);
    }
    let (lo, hi) = (levels[0].clone(), levels[levels.len() - 1].clone());
    let t_max = fam
        .entries
        .iter()
        .map(|x| &x.b - &x.a)
        .max()
        .unwrap_or_else(|| Q::from_integer(0.into()));
    match fam.kind {
        Kind::Delta => {
            let tor = fl::intersect(&e.i_sub(&lo)?, &e.i_sup(&hi)?)?;
            let mut classes: Vec<(Q, Q, SparseVec<F::Elem>)> = Vec::new();
            for pl in &placed {
                let q = e.delta_hat(&pl.a, &pl.b)?;
                let mut imgs = Vec::new();
                for c in &pl.chains {
                    let Some(x) = ambient_class(e, c) else {
                        report.sections_ok = false;
                        continue;
                    };
                    match q.try_project(&x) {
                        Some(y) => imgs.push(y),
                        None => report.sections_ok = false,
                    }
                    classes.push((pl.a.clone(), pl.b.clone(), x));
                }
                let r = Subspace::spanned_by(e.field().clone(), q.space, imgs.clone()).dim();
                if r != q.dim() || imgs.len() != q.dim() {
                    report.sections_ok = false;
                }
                report.translates_checked += 1;
            }
            let all: Vec<_> = classes.iter().map(|(_, _, x)| x.clone()).collect();
            report.globally_independent = rank_over(e, &tor, &all) == all.len();
            for x in &levels {
                for y in &levels {
                    let f = e.f_space(x, y)?;
                    let quad: Vec<_> = classes
                        .iter()
                        .filter(|(a, b, _)| a <= x && b >= y)
                        .map(|(_, _, v)| v.clone())
                        .collect();
                    let tor_here = fl::intersect(&f, &tor)?;
                    let inside = quad.iter().all(|v| f.contains(v));
                    let added = rank_over(e, &tor_here, &quad);
                    let mut ok = inside && added == quad.len();
                    let complete = !dropped.iter().any(|(a, b)| a <= x && b >= y);
                    if complete && y - &t_max >= lo && x + &t_max <= hi {
                        ok &= added + tor_here.dim() == f.dim();
                    }
                    report.grid_checked += 1;
                    if !ok {
                        report.grid_failures.push((x.clone(), y.clone()));
                    }
                }
            }
        }
        Kind::Gamma => {
            for pl in &placed {
                let q = e.gamma_hat(&pl.a, &pl.b)?;
                let level = e.sublevel(Some(&pl.a))?;
                let rel = e.bottom_rel();
                let mut imgs = Vec::new();
                for c in &pl.chains {
                    match level
                        .hom
                        .class_of(c, |i| rel.contains(e.r, i))
                        .and_then(|x| q.try_project(&x))
                    {
                        Some(y) => imgs.push(y),
                        None => report.sections_ok = false,
                    }
                }
                let r = Subspace::spanned_by(e.field().clone(), q.space, imgs.clone()).dim();
                if r != q.dim() || imgs.len() != q.dim() {
                    report.sections_ok = false;
                }
                report.translates_checked += 1;
            }
            for (i, x) in levels.iter().enumerate() {
                for y in &levels[i + 1..] {
                    let t = e.t_space(x, Some(y))?;
                    let mut pushed = Vec::new();
                    let mut inside = true;
                    for pl in placed.iter().filter(|pl| &pl.a <= x && &pl.b > x && &pl.b <= y) {
                        let src = e.sublevel(Some(&pl.a))?;
                        let push = e.inclusion(Some(&pl.a), Some(x))?;
                        let rel = e.bottom_rel();
                        for c in &pl.chains {
                            match src.hom.class_of(c, |i| rel.contains(e.r, i)) {
                                Some(v) => {
                                    let w = push.apply(&v);
                                    inside &= t.contains(&w);
                                    pushed.push(w);
                                }
                                None => inside = false,
                            }
                        }
                    }
                    let zero = Subspace::zero(e.field().clone(), t.ambient());
                    let added = rank_over(e, &zero, &pushed);
                    let mut ok = inside && added == pushed.len();
                    let complete = !dropped.iter().any(|(a, b)| a <= x && b > x && b <= y);
                    if complete && x - &t_max >= lo {
                        ok &= added == t.dim();
                    }
                    report.grid_checked += 1;
                    if !ok {
                        report.grid_failures.push((x.clone(), y.clone()));
                    }
                }
            }
        }
        Kind::Lambda => {}
    }
    Ok(report)
}
