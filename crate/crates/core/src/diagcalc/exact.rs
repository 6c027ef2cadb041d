//! The exactness statements attached to ω̂ and ω̲: factorization sequences
//! and invariance under ladders with exact columns.

use crate::fieldlin::{self as fl, Field, LinMap};

use super::omega::{omega_hat, omega_hat_induced, omega_under, omega_under_induced, TripleComposite};
use super::DiagError;

/// Which arrow of the triple is being factored.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorAt {
    Alpha,
    Beta,
    Gamma,
}

/// A three-term sequence `L → M → R` with its checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceReport {
    pub dims: [usize; 3],
    pub first_injective: bool,
    pub second_surjective: bool,
    pub middle_exact: bool,
}

impl SequenceReport {
    pub fn from_maps<F: Field>(first: &LinMap<F>, second: &LinMap<F>) -> Result<Self, DiagError> {
        let comp = second.compose(first)?;
        let ker_second = fl::kernel(second).dim();
        Ok(SequenceReport {
            dims: [first.domain().dim(), first.codomain().dim(), second.codomain().dim()],
            first_injective: first.is_injective(),
            second_surjective: second.is_surjective(),
            middle_exact: comp.is_zero() && ker_second == first.rank(),
        })
    }

    pub fn exact(&self) -> bool {
        self.first_injective
            && self.second_surjective
            && self.middle_exact
            && self.dims[1] == self.dims[0] + self.dims[2]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationReport {
    pub hat: SequenceReport,
    pub under: SequenceReport,
}

impl FactorizationReport {
    pub fn holds(&self) -> bool {
        self.hat.exact() && self.under.exact()
    }
}

fn same_map<F: Field>(x: &LinMap<F>, y: &LinMap<F>) -> bool {
    x.domain() == y.domain() && x.codomain() == y.codomain() && x.cols() == y.cols()
}

/// Build both short sequences for the factorization `f2 · f1` of the chosen
/// arrow of `t` and check them.
pub fn factorization_sequences<F: Field>(
    t: &TripleComposite<F>,
    at: FactorAt,
    f1: &LinMap<F>,
    f2: &LinMap<F>,
) -> Result<FactorizationReport, DiagError> {
    let target = match at {
        FactorAt::Alpha => &t.alpha,
        FactorAt::Beta => &t.beta,
        FactorAt::Gamma => &t.gamma,
    };
    let product = f2.compose(f1).map_err(|_| DiagError::NotAFactorization)?;
    if !same_map(&product, target) {
        return Err(DiagError::NotAFactorization);
    }
    let field = t.alpha.field().clone();
    let id = |m: &LinMap<F>| LinMap::identity(field.clone(), m.codomain());
    let (left, right, hat_first, hat_second, under_first, under_second) = match at {
        FactorAt::Alpha => {
            let left = TripleComposite::new(f1.clone(), t.beta.compose(f2)?, t.gamma.clone())?;
            let right = TripleComposite::new(f2.clone(), t.beta.clone(), t.gamma.clone())?;
            (left, right, f2.clone(), id(&t.alpha), id(&t.beta), id(&t.beta))
        }
        FactorAt::Beta => {
            let left = TripleComposite::new(t.alpha.clone(), f1.clone(), f2.clone())?;
            let mid = TripleComposite::new(t.alpha.clone(), f1.clone(), t.gamma.compose(f2)?)?;
            // The middle term here is ω(α, β1, γβ2) and the given triple sits
            // on the right.
            let report = sequence_pair(&left, &mid, t, [&id(&t.alpha), &id(&t.alpha)], [&id(f1), f2])?;
            return Ok(report);
        }
        FactorAt::Gamma => {
            let left = TripleComposite::new(t.alpha.clone(), t.beta.clone(), f1.clone())?;
            let right = TripleComposite::new(t.alpha.clone(), f1.compose(&t.beta)?, f2.clone())?;
            (left, right, id(&t.alpha), id(&t.alpha), id(&t.beta), f1.clone())
        }
    };
    sequence_pair(
        &left,
        t,
        &right,
        [&hat_first, &hat_second],
        [&under_first, &under_second],
    )
}

fn sequence_pair<F: Field>(
    left: &TripleComposite<F>,
    mid: &TripleComposite<F>,
    right: &TripleComposite<F>,
    hat_maps: [&LinMap<F>; 2],
    under_maps: [&LinMap<F>; 2],
) -> Result<FactorizationReport, DiagError> {
    let (hl, hm, hr) = (omega_hat(left)?, omega_hat(mid)?, omega_hat(right)?);
    let hat = SequenceReport::from_maps(
        &omega_hat_induced(hat_maps[0], &hl, &hm)?,
        &omega_hat_induced(hat_maps[1], &hm, &hr)?,
    )?;
    let (ul, um, ur) = (omega_under(left)?, omega_under(mid)?, omega_under(right)?);
    let under = SequenceReport::from_maps(
        &omega_under_induced(under_maps[0], &ul, &um)?,
        &omega_under_induced(under_maps[1], &um, &ur)?,
    )?;
    Ok(FactorizationReport { hat, under })
}

/// A ladder `bottom → top` of triples whose columns
/// `0 → N → X′ → X → M → 0` should be exact, with `N` and `M` carried by
/// identities along the rows.
#[derive(Clone, Debug)]
pub struct Ladder<F: Field> {
    pub top: TripleComposite<F>,
    pub bottom: TripleComposite<F>,
    /// `a, b, c, d`: bottom spaces to top spaces.
    pub down: [LinMap<F>; 4],
    /// `N → A′, B′, C′, D′`.
    pub theta: [LinMap<F>; 4],
    /// `A, B, C, D → M`.
    pub lambda: [LinMap<F>; 4],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LadderReport {
    pub hat_dims: (usize, usize),
    pub under_dims: (usize, usize),
    pub hat_iso: bool,
    pub under_iso: bool,
}

impl LadderReport {
    pub fn holds(&self) -> bool {
        self.hat_iso && self.under_iso
    }
}

fn commutes<F: Field>(p: &LinMap<F>, q: &LinMap<F>, r: &LinMap<F>, s: &LinMap<F>) -> bool {
    // p·q == r·s
    match (p.compose(q), r.compose(s)) {
        (Ok(x), Ok(y)) => same_map(&x, &y),
        _ => false,
    }
}

fn validate_ladder<F: Field>(l: &Ladder<F>) -> Result<(), DiagError> {
    let rows = |t: &TripleComposite<F>| [t.alpha.clone(), t.beta.clone(), t.gamma.clone()];
    let top = rows(&l.top);
    let bottom = rows(&l.bottom);
    for k in 0..3 {
        if !commutes(&top[k], &l.down[k], &l.down[k + 1], &bottom[k]) {
            return Err(DiagError::LadderNotCommuting);
        }
        if !same_map(
            &bottom[k]
                .compose(&l.theta[k])
                .map_err(|_| DiagError::LadderNotCommuting)?,
            &l.theta[k + 1],
        ) {
            return Err(DiagError::LadderNotCommuting);
        }
        if !same_map(
            &l.lambda[k + 1]
                .compose(&top[k])
                .map_err(|_| DiagError::LadderNotCommuting)?,
            &l.lambda[k],
        ) {
            return Err(DiagError::LadderNotCommuting);
        }
    }
    for k in 0..4 {
        let (th, a, la) = (&l.theta[k], &l.down[k], &l.lambda[k]);
        let a_th = a.compose(th).map_err(|_| DiagError::ColumnsNotExact)?;
        let la_a = la.compose(a).map_err(|_| DiagError::ColumnsNotExact)?;
        let exact = th.is_injective()
            && a_th.is_zero()
            && fl::kernel(a).dim() == th.rank()
            && la_a.is_zero()
            && fl::kernel(la).dim() == a.rank()
            && la.is_surjective();
        if !exact {
            return Err(DiagError::ColumnsNotExact);
        }
    }
    Ok(())
}

/// Check that the maps `ω̂(bottom) → ω̂(top)` and `ω̲(bottom) → ω̲(top)`
/// induced by the ladder are isomorphisms.
pub fn check_exact_row_equivalence<F: Field>(l: &Ladder<F>) -> Result<LadderReport, DiagError> {
    validate_ladder(l)?;
    let (hb, ht) = (omega_hat(&l.bottom)?, omega_hat(&l.top)?);
    let (ub, ut) = (omega_under(&l.bottom)?, omega_under(&l.top)?);
    let hat_map = omega_hat_induced(&l.down[1], &hb, &ht)?;
    let under_map = omega_under_induced(&l.down[2], &ub, &ut)?;
    Ok(LadderReport {
        hat_dims: (hb.dim(), ht.dim()),
        under_dims: (ub.dim(), ut.dim()),
        hat_iso: hat_map.is_isomorphism(),
        under_iso: under_map.is_isomorphism(),
    })
}
