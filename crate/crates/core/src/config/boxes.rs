//! Box modules 𝔽(B), 𝔾(B), 𝕋(B), the comparison θ(B), and the exact
//! sequences attached to splitting a box in two.

use std::fmt;

use crate::covercomplex::Q;
use crate::diagcalc::{diagram_ker, omega_hat, SequenceReport, SquareDiagram, TripleComposite};
use crate::fieldlin::{self as fl, Field, LinMap, Quotient, Subspace};

use super::engine::Engine;
use super::ConfigError;

/// The half-open box `(a0, a] × [b, b1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneBox {
    pub a0: Q,
    pub a: Q,
    pub b: Q,
    pub b1: Q,
}

impl PlaneBox {
    pub fn new(a0: Q, a: Q, b: Q, b1: Q) -> Result<Self, ConfigError> {
        if a0 >= a || b >= b1 {
            return Err(ConfigError::BadBox(format!("({a0}, {a}] × [{b}, {b1})")));
        }
        Ok(PlaneBox { a0, a, b, b1 })
    }

    pub fn contains(&self, x: &Q, y: &Q) -> bool {
        &self.a0 < x && x <= &self.a && &self.b <= y && y < &self.b1
    }
}

impl fmt::Display for PlaneBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}] × [{}, {})", self.a0, self.a, self.b, self.b1)
    }
}

/// The box `(a0, a] × (b0, b]` with `a0 < a ≤ b0 < b ≤ ∞`; `b = None` is `∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxAboveDiagonal {
    pub a0: Q,
    pub a: Q,
    pub b0: Q,
    pub b: Option<Q>,
}

impl BoxAboveDiagonal {
    pub fn new(a0: Q, a: Q, b0: Q, b: Option<Q>) -> Result<Self, ConfigError> {
        let ok = a0 < a && a <= b0 && b.as_ref().is_none_or(|b| &b0 < b);
        if !ok {
            return Err(ConfigError::BadBox(format!("({a0}, {a}] × ({b0}, {b:?}]")));
        }
        Ok(BoxAboveDiagonal { a0, a, b0, b })
    }

    pub fn contains(&self, x: &Q, y: &Q) -> bool {
        &self.a0 < x && x <= &self.a && &self.b0 < y && self.b.as_ref().is_none_or(|b| y <= b)
    }
}

impl fmt::Display for BoxAboveDiagonal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.b {
            Some(b) => write!(f, "({}, {}] × ({}, {}]", self.a0, self.a, self.b0, b),
            None => write!(f, "({}, {}] × ({}, ∞]", self.a0, self.a, self.b0),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoxKind {
    F,
    G,
    T,
}

/// A box module. 𝔽 and 𝕋 boxes are quotients of subspaces; a 𝔾 box is a
/// subspace (`sub`) of the quotient `G(a0, b1)`.
#[derive(Clone, Debug)]
pub struct BoxModule<F: Field> {
    pub kind: BoxKind,
    pub quotient: Quotient<F>,
    pub sub: Option<Subspace<F>>,
}

impl<F: Field> BoxModule<F> {
    pub fn dim(&self) -> usize {
        match &self.sub {
            Some(s) => s.dim(),
            None => self.quotient.dim(),
        }
    }
}

fn identity<F: Field>(e: &Engine<F>) -> LinMap<F> {
    LinMap::identity(e.field().clone(), e.ambient().space())
}

/// `𝔽(B) = 𝔽(a, b) / (𝔽(a0, b) + 𝔽(a, b1))`, the cokernel of the square
/// of inclusions.
pub fn f_box<F: Field>(e: &Engine<F>, bx: &PlaneBox) -> Result<BoxModule<F>, ConfigError> {
    let num = e.f_space(&bx.a, &bx.b)?;
    let den = fl::sum(&*e.f_space(&bx.a0, &bx.b)?, &*e.f_space(&bx.a, &bx.b1)?)?;
    Ok(BoxModule {
        kind: BoxKind::F,
        quotient: fl::quotient(&num, &den)?,
        sub: None,
    })
}

/// `𝔾(B)`: the kernel of the square of surjections
/// `G(a0,b1) → G(a,b1), G(a0,b) → G(a,b)`.
pub fn g_box<F: Field>(e: &Engine<F>, bx: &PlaneBox) -> Result<BoxModule<F>, ConfigError> {
    let id = identity(e);
    let top = e.g_space(&bx.a0, &bx.b1)?;
    let right = e.g_space(&bx.a, &bx.b1)?;
    let left = e.g_space(&bx.a0, &bx.b)?;
    let corner = e.g_space(&bx.a, &bx.b)?;
    let square = SquareDiagram::new(
        fl::induced_descend(&id, &top, &right)?,
        fl::induced_descend(&id, &top, &left)?,
        fl::induced_descend(&id, &right, &corner)?,
        fl::induced_descend(&id, &left, &corner)?,
    )?;
    let sub = diagram_ker(&square)?;
    Ok(BoxModule {
        kind: BoxKind::G,
        quotient: top,
        sub: Some(sub),
    })
}

/// The comparison `θ(B): 𝔽(B) → 𝔾(B)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaReport {
    pub f_dim: usize,
    pub g_dim: usize,
    pub rank: usize,
}

impl ThetaReport {
    pub fn is_isomorphism(&self) -> bool {
        self.f_dim == self.g_dim && self.rank == self.f_dim
    }
}

pub fn theta_map<F: Field>(
    e: &Engine<F>,
    bx: &PlaneBox,
) -> Result<(LinMap<F>, BoxModule<F>, BoxModule<F>), ConfigError> {
    let fb = f_box(e, bx)?;
    let gb = g_box(e, bx)?;
    let sub = gb.sub.as_ref().expect("G box carries a subspace");
    let cols = fb
        .quotient
        .lifts()
        .iter()
        .map(|l| {
            let y = gb.quotient.project(l);
            sub.coordinates(&y)
                .ok_or_else(|| ConfigError::InternalMismatch(format!("θ leaves 𝔾(B) on {bx}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let m = LinMap::new(e.field().clone(), fb.quotient.space, sub.coord_space(), cols)?;
    Ok((m, fb, gb))
}

pub fn theta_box<F: Field>(e: &Engine<F>, bx: &PlaneBox) -> Result<ThetaReport, ConfigError> {
    let (m, fb, gb) = theta_map(e, bx)?;
    Ok(ThetaReport {
        f_dim: fb.dim(),
        g_dim: gb.dim(),
        rank: m.rank(),
    })
}

fn t_box_quotient<F: Field>(e: &Engine<F>, bx: &BoxAboveDiagonal) -> Result<Quotient<F>, ConfigError> {
    let b = bx.b.as_ref();
    let num = e.t_space(&bx.a, b)?;
    let pushed = fl::image_of(&*e.inclusion(Some(&bx.a0), Some(&bx.a))?, &e.t_space(&bx.a0, b)?)?;
    let den = fl::sum(&pushed, &e.t_space(&bx.a, Some(&bx.b0))?)?;
    Ok(fl::quotient(&num, &den)?)
}

/// `𝕋(B) = 𝕋(a,b) / (i 𝕋(a0,b) + 𝕋(a,b0))`, cross-checked in dimension
/// against `ω̂(i_{a0}^a, i_a^{b0}, i_{b0}^b)`.
pub fn t_box<F: Field>(e: &Engine<F>, bx: &BoxAboveDiagonal) -> Result<BoxModule<F>, ConfigError> {
    let quotient = t_box_quotient(e, bx)?;
    let triple = TripleComposite::new(
        (*e.inclusion(Some(&bx.a0), Some(&bx.a))?).clone(),
        (*e.inclusion(Some(&bx.a), Some(&bx.b0))?).clone(),
        (*e.inclusion(Some(&bx.b0), bx.b.as_ref())?).clone(),
    )?;
    let omega = omega_hat(&triple)?;
    if omega.dim() != quotient.dim() {
        return Err(ConfigError::InternalMismatch(format!(
            "𝕋{bx}: quotient has dim {} but ω̂ has dim {}",
            quotient.dim(),
            omega.dim()
        )));
    }
    Ok(BoxModule {
        kind: BoxKind::T,
        quotient,
        sub: None,
    })
}

/// Where a box is cut: `Horizontal(x)` cuts the first coordinate at `x`,
/// `Vertical(y)` the second at `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Split {
    Horizontal(Q),
    Vertical(Q),
}

/// For `B = B1 ⊔ B2`, the sequence `𝔽(B1) → 𝔽(B) → 𝔽(B2)`. A horizontal
/// cut puts `B1` on the left; a vertical cut puts `B1` on top.
pub fn f_split<F: Field>(e: &Engine<F>, bx: &PlaneBox, split: &Split) -> Result<SequenceReport, ConfigError> {
    let (b1, b2) = match split {
        Split::Horizontal(x) => (
            PlaneBox::new(bx.a0.clone(), x.clone(), bx.b.clone(), bx.b1.clone())?,
            PlaneBox::new(x.clone(), bx.a.clone(), bx.b.clone(), bx.b1.clone())?,
        ),
        Split::Vertical(y) => (
            PlaneBox::new(bx.a0.clone(), bx.a.clone(), y.clone(), bx.b1.clone())?,
            PlaneBox::new(bx.a0.clone(), bx.a.clone(), bx.b.clone(), y.clone())?,
        ),
    };
    let id = identity(e);
    let whole = f_box(e, bx)?.quotient;
    let first = fl::induced_descend(&id, &f_box(e, &b1)?.quotient, &whole)?;
    let second = fl::induced_descend(&id, &whole, &f_box(e, &b2)?.quotient)?;
    Ok(SequenceReport::from_maps(&first, &second)?)
}

/// For `B = B1 ⊔ B2` above the diagonal, `𝕋(B1) → 𝕋(B) → 𝕋(B2)`. A
/// horizontal cut puts `B1` on the left; a vertical cut puts `B1` below.
pub fn t_split<F: Field>(e: &Engine<F>, bx: &BoxAboveDiagonal, split: &Split) -> Result<SequenceReport, ConfigError> {
    let whole = t_box(e, bx)?.quotient;
    let (first, second) = match split {
        Split::Horizontal(x) => {
            let b1 = BoxAboveDiagonal::new(bx.a0.clone(), x.clone(), bx.b0.clone(), bx.b.clone())?;
            let b2 = BoxAboveDiagonal::new(x.clone(), bx.a.clone(), bx.b0.clone(), bx.b.clone())?;
            let push = e.inclusion(Some(x), Some(&bx.a))?;
            let id = LinMap::identity(e.field().clone(), push.codomain());
            (
                fl::induced_descend(&push, &t_box(e, &b1)?.quotient, &whole)?,
                fl::induced_descend(&id, &whole, &t_box(e, &b2)?.quotient)?,
            )
        }
        Split::Vertical(y) => {
            let b1 = BoxAboveDiagonal::new(bx.a0.clone(), bx.a.clone(), bx.b0.clone(), Some(y.clone()))?;
            let b2 = BoxAboveDiagonal::new(bx.a0.clone(), bx.a.clone(), y.clone(), bx.b.clone())?;
            let id = LinMap::identity(e.field().clone(), whole.numerator().ambient());
            (
                fl::induced_descend(&id, &t_box(e, &b1)?.quotient, &whole)?,
                fl::induced_descend(&id, &whole, &t_box(e, &b2)?.quotient)?,
            )
        }
    };
    Ok(SequenceReport::from_maps(&first, &second)?)
}

/// Corner maps of a box cut at `(x, y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CornerReport {
    pub injective: bool,
    pub surjective: bool,
}

/// `𝔽` of the upper-left corner `(a0,x]×[y,b1)` injects into `𝔽(B)`, and
/// `𝔽(B)` surjects onto the lower-right corner `(x,a]×[b,y)`.
pub fn f_corners<F: Field>(e: &Engine<F>, bx: &PlaneBox, x: &Q, y: &Q) -> Result<CornerReport, ConfigError> {
    let ul = PlaneBox::new(bx.a0.clone(), x.clone(), y.clone(), bx.b1.clone())?;
    let lr = PlaneBox::new(x.clone(), bx.a.clone(), bx.b.clone(), y.clone())?;
    let id = identity(e);
    let whole = f_box(e, bx)?.quotient;
    let inj = fl::induced_descend(&id, &f_box(e, &ul)?.quotient, &whole)?;
    let sur = fl::induced_descend(&id, &whole, &f_box(e, &lr)?.quotient)?;
    Ok(CornerReport {
        injective: inj.is_injective(),
        surjective: sur.is_surjective(),
    })
}

/// `𝕋` of the down-left corner `(a0,x]×(b0,y]` injects into `𝕋(B)`, and
/// `𝕋(B)` surjects onto the upper-right corner `(x,a]×(y,b]`.
pub fn t_corners<F: Field>(e: &Engine<F>, bx: &BoxAboveDiagonal, x: &Q, y: &Q) -> Result<CornerReport, ConfigError> {
    let dl = BoxAboveDiagonal::new(bx.a0.clone(), x.clone(), bx.b0.clone(), Some(y.clone()))?;
    let ur = BoxAboveDiagonal::new(x.clone(), bx.a.clone(), y.clone(), bx.b.clone())?;
    let whole = t_box(e, bx)?.quotient;
    let push = e.inclusion(Some(x), Some(&bx.a))?;
    let id = LinMap::identity(e.field().clone(), push.codomain());
    let inj = fl::induced_descend(&push, &t_box(e, &dl)?.quotient, &whole)?;
    let sur = fl::induced_descend(&id, &whole, &t_box(e, &ur)?.quotient)?;
    Ok(CornerReport {
        injective: inj.is_injective(),
        surjective: sur.is_surjective(),
    })
}
