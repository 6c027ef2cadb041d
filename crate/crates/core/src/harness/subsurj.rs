//! BM configurations through chains of sub-surjections of shrinking boxes,
//! compared with the direct quotients δ̂ and γ̂.

use serde::Serialize;

use crate::config::{
    f_box, stable_configurations, t_box, BoxAboveDiagonal, ConfigError, Engine, Kind, PlaneBox, Setting, Variant,
};
use crate::covercomplex::{format_rational, CoverData, Q};
use crate::diagcalc::{subsurjection_limit, SubSurjection};
use crate::fieldlin::{self as fl, Field, LinMap, Quotient};

use super::{HarnessError, Verdict};

#[derive(Clone, Debug, Serialize)]
pub struct SubsurjReport {
    pub r: usize,
    pub kind: Kind,
    pub a: String,
    pub b: String,
    pub offsets: Vec<String>,
    pub limit_dim: usize,
    pub direct_dim: usize,
}

impl SubsurjReport {
    pub fn matched(&self) -> bool {
        self.limit_dim == self.direct_dim
    }
}

/// Offsets `ε_0 > ε_1 > …`, halving from `start` and nudged down until
/// `a ± ε` and `b ± ε` are regular. The last two lie below `gap/2`.
fn offsets<F: Field>(e: &Engine<F>, a: &Q, b: &Q, start: Q) -> Vec<Q> {
    let s = &e.setting;
    let half = s.gap() / Q::from_integer(2.into());
    let shrink = Q::new(29.into(), 31.into());
    let regular = |eps: &Q| [a - eps, a + eps, b - eps, b + eps].iter().all(|x| !s.is_critical(x));
    let mut out: Vec<Q> = Vec::new();
    let mut eps = start;
    loop {
        let mut x = eps.clone();
        while !regular(&x) {
            x *= &shrink;
        }
        out.push(x);
        let below = out.iter().filter(|x| **x < half).count();
        if below >= 2 {
            return out;
        }
        eps /= Q::from_integer(2.into());
    }
}

/// The box modules along the chain: `outer[i] = M(B_i)` and
/// `middle[i] = M(C_i)`, as quotients of ambient subspaces.
struct Boxes<F: Field> {
    outer: Vec<Quotient<F>>,
    middle: Vec<Quotient<F>>,
}

fn f_boxes<F: Field>(e: &Engine<F>, a: &Q, b: &Q, eps: &[Q]) -> Result<Boxes<F>, HarnessError> {
    let mut outer = Vec::new();
    for x in eps {
        outer.push(f_box(e, &PlaneBox::new(a - x, a + x, b - x, b + x)?)?.quotient);
    }
    let mut middle = Vec::new();
    for w in eps.windows(2) {
        let (o, i) = (&w[0], &w[1]);
        middle.push(f_box(e, &PlaneBox::new(a - i, a + o, b - o, b + i)?)?.quotient);
    }
    Ok(Boxes { outer, middle })
}

fn t_boxes<F: Field>(e: &Engine<F>, a: &Q, b: &Q, eps: &[Q]) -> Result<Boxes<F>, HarnessError> {
    let mut outer = Vec::new();
    for x in eps {
        outer.push(t_box(e, &BoxAboveDiagonal::new(a - x, a + x, b - x, Some(b + x))?)?.quotient);
    }
    let mut middle = Vec::new();
    for w in eps.windows(2) {
        let (o, i) = (&w[0], &w[1]);
        middle.push(t_box(e, &BoxAboveDiagonal::new(a - i, a + o, b - i, Some(b + o))?)?.quotient);
    }
    Ok(Boxes { outer, middle })
}

/// The surjection `M(B_i) → M(C_i)` and the injection `M(B_{i+1}) → M(C_i)`.
fn link<F: Field>(
    e: &Engine<F>,
    kind: Kind,
    a: &Q,
    boxes: &Boxes<F>,
    eps: &[Q],
    i: usize,
) -> Result<(LinMap<F>, LinMap<F>), HarnessError> {
    let (pi_src, inj_src, tgt) = (&boxes.outer[i], &boxes.outer[i + 1], &boxes.middle[i]);
    let (id, push) = match kind {
        Kind::Delta => {
            let id = LinMap::identity(e.field().clone(), e.ambient().space());
            (id.clone(), id)
        }
        _ => {
            let top = a + &eps[i];
            let id = LinMap::identity(e.field().clone(), e.sublevel(Some(&top))?.hom.space());
            let push = (*e.inclusion(Some(&(a + &eps[i + 1])), Some(&top))?).clone();
            (id, push)
        }
    };
    Ok((
        fl::induced_descend(&id, pi_src, tgt)?,
        fl::induced_descend(&push, inj_src, tgt)?,
    ))
}

fn direct<F: Field>(e: &Engine<F>, kind: Kind, a: &Q, b: &Q) -> Result<Quotient<F>, HarnessError> {
    Ok(match kind {
        Kind::Delta => e.delta_hat(a, b)?,
        Kind::Gamma => e.gamma_hat(a, b)?,
        Kind::Lambda => return Err(HarnessError::BadInput("λ has no box chain".into())),
    })
}

/// Build the chain of boxes `B_i = (a−ε_i, a+ε_i] × [b−ε_i, b+ε_i)` (or the
/// half-open 𝕋 boxes above the diagonal), pass the sub-surjections
/// `M(B_i) → M(C_i) ⊇ M(B_{i+1})` to the limit construction, and compare
/// with the direct quotient at `(a, b)`.
pub fn bm_via_subsurjections<F: Field>(e: &Engine<F>, kind: Kind, a: &Q, b: &Q) -> Result<SubsurjReport, HarnessError> {
    let two = Q::from_integer(2.into());
    let mut start = e.setting.gap() * &two;
    if kind == Kind::Gamma {
        if b <= a {
            return Err(HarnessError::BadInput("γ needs a < b".into()));
        }
        let room = (b - a) / Q::from_integer(3.into());
        if room < start {
            start = room;
        }
    }
    let eps = offsets(e, a, b, start);
    for x in [a - &eps[0], b + &eps[0]] {
        e.window().check_safe(&x)?;
    }
    let mut chain: Vec<SubSurjection<F>> = Vec::new();
    // Coordinates on the previous link's image, as an isomorphism onto M(B_i).
    let mut relabel: Option<LinMap<F>> = None;
    let boxes = match kind {
        Kind::Delta => f_boxes(e, a, b, &eps)?,
        _ => t_boxes(e, a, b, &eps)?,
    };
    for i in 0..eps.len() - 1 {
        let (link_pi, inj) = link(e, kind, a, &boxes, &eps, i)?;
        if !inj.is_injective() {
            return Err(ConfigError::InternalMismatch("corner map is not injective".into()).into());
        }
        let pi = match &relabel {
            Some(m) => link_pi.compose(m)?,
            None => link_pi,
        };
        let sub = fl::image(&inj);
        let cols = (0..inj.domain().dim())
            .map(|j| {
                let y = inj.apply(&vec![(j, e.field().one())]);
                sub.coordinates(&y).expect("in the image")
            })
            .collect();
        let into_sub = LinMap::new(e.field().clone(), inj.domain(), sub.coord_space(), cols)?;
        relabel = Some(into_sub.inverse().expect("injective onto its image"));
        chain.push(SubSurjection::new(pi, sub)?);
    }
    let limit = subsurjection_limit(&chain)?;
    let d = direct(e, kind, a, b)?;
    Ok(SubsurjReport {
        r: e.r,
        kind,
        a: format_rational(a),
        b: format_rational(b),
        offsets: eps.iter().map(format_rational).collect(),
        limit_dim: limit.dim(),
        direct_dim: d.dim(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SubsurjAudit {
    pub sheets: i64,
    pub points: Vec<SubsurjReport>,
}

impl Verdict for SubsurjAudit {
    fn passed(&self) -> bool {
        self.points.iter().all(SubsurjReport::matched)
    }
}

/// Run the chain at every BM δ and γ support point in degrees `degrees`,
/// on a window twice the stable size.
pub fn subsurjection_audit<F: Field>(
    field: &F,
    data: &CoverData,
    degrees: &[usize],
    start: i64,
    cap: i64,
) -> Result<SubsurjAudit, HarnessError> {
    let stable = stable_configurations(field, data, start, cap, &[Variant::Bm], degrees)?;
    let sheets = if data.has_period() { 2 * stable.sheets } else { 1 };
    let setting = Setting::new(data.clone(), sheets)?;
    let mut points = Vec::new();
    for res in &stable.results {
        let e = Engine::new(field.clone(), setting.clone(), Variant::Bm, res.r)?;
        for conf in [&res.configs.delta, &res.configs.gamma] {
            for ((a, b), _) in &conf.points {
                points.push(bm_via_subsurjections(&e, conf.kind, a, b)?);
            }
        }
    }
    Ok(SubsurjAudit { sheets, points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covercomplex::validate;
    use crate::fieldlin::PrimeField;
    use crate::harness::fixtures::{self, q};

    fn engine(fx: &fixtures::Fixture, sheets: i64, r: usize) -> Engine<PrimeField> {
        let data = validate(&fx.complex, &fx.form).unwrap();
        Engine::new(
            PrimeField::new(2).unwrap(),
            Setting::new(data, sheets).unwrap(),
            Variant::Bm,
            r,
        )
        .unwrap()
    }

    #[test]
    fn wedge_delta_point() {
        let e = engine(&fixtures::fix_w(), 8, 1);
        let rep = bm_via_subsurjections(&e, Kind::Delta, &q(1, 4), &q(0, 1)).unwrap();
        assert_eq!((rep.limit_dim, rep.direct_dim), (1, 1));
    }

    #[test]
    fn disc_gamma_point() {
        let e = engine(&fixtures::fix_g(), 1, 1);
        let rep = bm_via_subsurjections(&e, Kind::Gamma, &q(1, 1), &q(2, 1)).unwrap();
        assert_eq!((rep.limit_dim, rep.direct_dim), (1, 1));
    }

    #[test]
    fn off_support_is_zero_on_both_sides() {
        let e = engine(&fixtures::fix_g(), 1, 1);
        let rep = bm_via_subsurjections(&e, Kind::Delta, &q(1, 2), &q(0, 1)).unwrap();
        assert_eq!((rep.limit_dim, rep.direct_dim), (0, 0));
    }

    #[test]
    fn every_fixture_agrees() {
        for fx in fixtures::all() {
            let data = validate(&fx.complex, &fx.form).unwrap();
            let degrees: Vec<usize> = (0..=data.complex.dim()).collect();
            let audit = subsurjection_audit(&PrimeField::new(2).unwrap(), &data, &degrees, 2, 16).unwrap();
            assert!(audit.passed(), "{}: {audit:#?}", fx.name);
        }
    }
}
