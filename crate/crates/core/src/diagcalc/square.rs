use crate::fieldlin::{self as fl, sparse, AmbientSpace, Field, LinMap, Quotient, SparseVec, Subspace};

use super::DiagError;

/// `B2 ⊕ B1 / {α2(a) − α1(a)}` together with the two coprojections and the
/// diagonal map from `A`.
#[derive(Clone, Debug)]
pub struct Pushout<F: Field> {
    pub space: AmbientSpace,
    pub i2: LinMap<F>,
    pub i1: LinMap<F>,
    pub alpha: LinMap<F>,
    quotient: Quotient<F>,
}

impl<F: Field> Pushout<F> {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

/// `{(b1, b2) | β1 b1 = β2 b2} ⊆ B1 ⊕ B2` with its two projections and the
/// diagonal map to `C`.
#[derive(Clone, Debug)]
pub struct Pullback<F: Field> {
    pub space: AmbientSpace,
    pub p1: LinMap<F>,
    pub p2: LinMap<F>,
    pub beta: LinMap<F>,
    sub: Subspace<F>,
}

impl<F: Field> Pullback<F> {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Coordinates in the pullback of a compatible pair.
    pub fn coordinates(&self, b1: &SparseVec<F::Elem>, b2: &SparseVec<F::Elem>) -> Option<SparseVec<F::Elem>> {
        let n1 = self.p1.codomain().dim();
        let mut v = b1.clone();
        v.extend(b2.iter().map(|(i, x)| (i + n1, x.clone())));
        self.sub.coordinates(&v)
    }
}

fn shift<E: Clone>(v: &SparseVec<E>, by: usize) -> SparseVec<E> {
    v.iter().map(|(i, x)| (i + by, x.clone())).collect()
}

pub fn pushout<F: Field>(a1: &LinMap<F>, a2: &LinMap<F>) -> Result<Pushout<F>, DiagError> {
    if a1.domain() != a2.domain() {
        return Err(DiagError::DomainMismatch);
    }
    let f = a1.field().clone();
    let n2 = a2.codomain().dim();
    let n1 = a1.codomain().dim();
    let total = AmbientSpace::new(n2 + n1);
    let relations = a1.cols().iter().zip(a2.cols()).map(|(c1, c2)| {
        let neg = sparse::scale(&f, &f.neg(&f.one()), c1);
        let mut v = c2.clone();
        v.extend(shift(&neg, n2));
        v
    });
    let rel = Subspace::spanned_by(f.clone(), total, relations);
    let quotient = fl::quotient(&Subspace::full(f.clone(), total), &rel)?;
    let space = quotient.space;
    let i2_cols = (0..n2).map(|i| quotient.project(&sparse::unit(&f, i))).collect();
    let i1_cols = (0..n1).map(|i| quotient.project(&sparse::unit(&f, n2 + i))).collect();
    let i2 = LinMap::new(f.clone(), a2.codomain(), space, i2_cols)?;
    let i1 = LinMap::new(f.clone(), a1.codomain(), space, i1_cols)?;
    let alpha = i1.compose(a1)?;
    Ok(Pushout {
        space,
        i2,
        i1,
        alpha,
        quotient,
    })
}

pub fn pullback<F: Field>(b1: &LinMap<F>, b2: &LinMap<F>) -> Result<Pullback<F>, DiagError> {
    if b1.codomain() != b2.codomain() {
        return Err(DiagError::CodomainMismatch);
    }
    let f = b1.field().clone();
    let n1 = b1.domain().dim();
    let n2 = b2.domain().dim();
    let total = AmbientSpace::new(n1 + n2);
    let mut cols: Vec<SparseVec<F::Elem>> = b1.cols().to_vec();
    cols.extend(b2.cols().iter().map(|c| sparse::scale(&f, &f.neg(&f.one()), c)));
    let joint = LinMap::new(f.clone(), total, b1.codomain(), cols)?;
    let sub = fl::kernel(&joint);
    let space = sub.coord_space();
    let p1_cols = sub
        .basis()
        .iter()
        .map(|v| v.iter().filter(|(i, _)| *i < n1).cloned().collect())
        .collect();
    let p2_cols = sub
        .basis()
        .iter()
        .map(|v| {
            v.iter()
                .filter(|(i, _)| *i >= n1)
                .map(|(i, x)| (i - n1, x.clone()))
                .collect()
        })
        .collect();
    let p1 = LinMap::new(f.clone(), space, b1.domain(), p1_cols)?;
    let p2 = LinMap::new(f.clone(), space, b2.domain(), p2_cols)?;
    let beta = b1.compose(&p1)?;
    debug_assert_eq!(n2, b2.domain().dim());
    Ok(Pullback {
        space,
        p1,
        p2,
        beta,
        sub,
    })
}

/// A commutative square `A → B1 → C`, `A → B2 → C`.
#[derive(Clone, Debug)]
pub struct SquareDiagram<F: Field> {
    pub a1: LinMap<F>,
    pub a2: LinMap<F>,
    pub b1: LinMap<F>,
    pub b2: LinMap<F>,
}

impl<F: Field> SquareDiagram<F> {
    pub fn new(a1: LinMap<F>, a2: LinMap<F>, b1: LinMap<F>, b2: LinMap<F>) -> Result<Self, DiagError> {
        if a1.domain() != a2.domain() {
            return Err(DiagError::DomainMismatch);
        }
        if b1.codomain() != b2.codomain() {
            return Err(DiagError::CodomainMismatch);
        }
        if b1.domain() != a1.codomain() || b2.domain() != a2.codomain() {
            return Err(DiagError::NotComposable);
        }
        let left = b1.compose(&a1)?;
        let right = b2.compose(&a2)?;
        if left.cols() != right.cols() {
            return Err(DiagError::NonCommuting);
        }
        Ok(SquareDiagram { a1, a2, b1, b2 })
    }

    pub fn source(&self) -> AmbientSpace {
        self.a1.domain()
    }

    pub fn target(&self) -> AmbientSpace {
        self.b1.codomain()
    }

    /// The transposed square: `C* → B1* → A*`, `C* → B2* → A*`.
    pub fn dual(&self) -> SquareDiagram<F> {
        SquareDiagram {
            a1: self.b1.transpose(),
            a2: self.b2.transpose(),
            b1: self.a1.transpose(),
            b2: self.a2.transpose(),
        }
    }
}

/// `ker(D)`: kernel of the induced map from `A` to the pullback.
pub fn diagram_ker<F: Field>(d: &SquareDiagram<F>) -> Result<Subspace<F>, DiagError> {
    let pb = pullback(&d.b1, &d.b2)?;
    let f = d.a1.field().clone();
    let mut cols = Vec::with_capacity(d.source().dim());
    for (c1, c2) in d.a1.cols().iter().zip(d.a2.cols()) {
        cols.push(pb.coordinates(c1, c2).ok_or(DiagError::NonCommuting)?);
    }
    let to_pb = LinMap::new(f, d.source(), pb.space, cols)?;
    Ok(fl::kernel(&to_pb))
}

/// `coker(D)`: cokernel of the induced map from the pushout to `C`.
pub fn diagram_coker<F: Field>(d: &SquareDiagram<F>) -> Result<Quotient<F>, DiagError> {
    let po = pushout(&d.a1, &d.a2)?;
    let f = d.a1.field().clone();
    let n2 = d.a2.codomain().dim();
    // The pushout basis lifts to B2 ⊕ B1; send a lift to β2 b2 + β1 b1.
    let cols: Vec<_> = po
        .quotient
        .lifts()
        .iter()
        .map(|l| {
            let (lo, hi): (Vec<_>, Vec<_>) = l.iter().cloned().partition(|(i, _)| *i < n2);
            let hi: SparseVec<F::Elem> = hi.into_iter().map(|(i, x)| (i - n2, x)).collect();
            sparse::add(&f, &d.b2.apply(&lo), &d.b1.apply(&hi))
        })
        .collect();
    let from_po = LinMap::new(f.clone(), po.space, d.target(), cols)?;
    cokernel(&from_po)
}

/// `codomain / image(m)`.
pub fn cokernel<F: Field>(m: &LinMap<F>) -> Result<Quotient<F>, DiagError> {
    let full = Subspace::full(m.field().clone(), m.codomain());
    Ok(fl::quotient(&full, &fl::image(m))?)
}

/// Outcome of the dual-exchange check for a square.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualExchangeReport {
    pub coker_dim: usize,
    pub ker_dual_dim: usize,
    pub ker_dim: usize,
    pub coker_dual_dim: usize,
    pub pairings_invertible: bool,
}

impl DualExchangeReport {
    pub fn holds(&self) -> bool {
        self.coker_dim == self.ker_dual_dim && self.ker_dim == self.coker_dual_dim && self.pairings_invertible
    }
}

fn pairing_invertible<F: Field>(field: &F, functionals: &[SparseVec<F::Elem>], vectors: &[SparseVec<F::Elem>]) -> bool {
    if functionals.len() != vectors.len() {
        return false;
    }
    let n = vectors.len();
    let rows: Vec<Vec<F::Elem>> = functionals
        .iter()
        .map(|phi| {
            vectors
                .iter()
                .map(|v| {
                    let mut acc = field.zero();
                    for (i, x) in phi {
                        acc = field.add(&acc, &field.mul(x, &sparse::get(field, v, *i)));
                    }
                    acc
                })
                .collect()
        })
        .collect();
    LinMap::from_rows(field.clone(), n, n, &rows).rank() == n
}

/// Compare `dim coker(D)` with `dim ker(D*)` and `dim ker(D)` with
/// `dim coker(D*)`, and check that the evaluation pairings are perfect.
pub fn check_dual_exchange<F: Field>(d: &SquareDiagram<F>) -> Result<DualExchangeReport, DiagError> {
    let f = d.a1.field().clone();
    let dual = d.dual();
    let ker = diagram_ker(d)?;
    let coker = diagram_coker(d)?;
    let ker_dual = diagram_ker(&dual)?;
    let coker_dual = diagram_coker(&dual)?;
    let p1 = pairing_invertible(&f, ker_dual.basis(), coker.lifts());
    let p2 = pairing_invertible(&f, coker_dual.lifts(), ker.basis());
    Ok(DualExchangeReport {
        coker_dim: coker.dim(),
        ker_dual_dim: ker_dual.dim(),
        ker_dim: ker.dim(),
        coker_dual_dim: coker_dual.dim(),
        pairings_invertible: p1 && p2,
    })
}
