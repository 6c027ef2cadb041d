//! Exact linear algebra over a field: maps, subspaces in canonical reduced
//! echelon form, quotients and induced maps.

mod echelon;
mod field;
pub mod sparse;

use std::sync::atomic::{AtomicU64, Ordering};

use thiserror::Error;

pub use echelon::Echelon;
pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use sparse::SparseVec;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("subspaces live in different ambient spaces")]
    AmbientMismatch,
    #[error("the proposed subspace is not contained in the larger one")]
    NotASubspace,
    #[error("the map does not carry the source subspace into the target")]
    NotInvariant,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("unsupported field `{0}`")]
    BadField(String),
}

static NEXT_ID: AtomicU64 = AtomicU64::new(1);
const DUAL_BIT: u64 = 1 << 63;

/// A coordinate space `κ^dim` with an identity tag. Two spaces with equal
/// dimension but different tags are never confused.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AmbientSpace {
    id: u64,
    dim: usize,
}

impl AmbientSpace {
    pub fn new(dim: usize) -> Self {
        AmbientSpace {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            dim,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    /// The dual space; taking the dual twice returns the original tag.
    pub fn dual(&self) -> Self {
        AmbientSpace {
            id: self.id ^ DUAL_BIT,
            dim: self.dim,
        }
    }
}

/// A linear map stored column by column (one sparse column per domain basis
/// vector).
#[derive(Clone, Debug, PartialEq)]
pub struct LinMap<F: Field> {
    field: F,
    domain: AmbientSpace,
    codomain: AmbientSpace,
    cols: Vec<SparseVec<F::Elem>>,
}

impl<F: Field> LinMap<F> {
    pub fn new(
        field: F,
        domain: AmbientSpace,
        codomain: AmbientSpace,
        cols: Vec<SparseVec<F::Elem>>,
    ) -> Result<Self, LinAlgError> {
        if cols.len() != domain.dim() {
            return Err(LinAlgError::Shape(format!(
                "{} columns for a domain of dimension {}",
                cols.len(),
                domain.dim()
            )));
        }
        for c in &cols {
            if c.iter().any(|(i, _)| *i >= codomain.dim()) {
                return Err(LinAlgError::Shape("row index out of range".into()));
            }
            if c.windows(2).any(|w| w[0].0 >= w[1].0) || c.iter().any(|(_, x)| field.is_zero(x)) {
                return Err(LinAlgError::Shape("column not in canonical sparse form".into()));
            }
        }
        Ok(LinMap {
            field,
            domain,
            codomain,
            cols,
        })
    }

    /// Build from dense rows (`rows[i][j]` is the entry in row `i`, column
    /// `j`) between two fresh spaces.
    pub fn from_rows(field: F, n_rows: usize, n_cols: usize, rows: &[Vec<F::Elem>]) -> Self {
        Self::from_rows_between(field, AmbientSpace::new(n_cols), AmbientSpace::new(n_rows), rows)
    }

    pub fn from_rows_between(field: F, domain: AmbientSpace, codomain: AmbientSpace, rows: &[Vec<F::Elem>]) -> Self {
        assert_eq!(rows.len(), codomain.dim(), "row count");
        let mut cols = vec![Vec::new(); domain.dim()];
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), domain.dim(), "row length");
            for (j, x) in row.iter().enumerate() {
                if !field.is_zero(x) {
                    cols[j].push((i, x.clone()));
                }
            }
        }
        LinMap {
            field,
            domain,
            codomain,
            cols,
        }
    }

    pub fn zero(field: F, domain: AmbientSpace, codomain: AmbientSpace) -> Self {
        LinMap {
            field,
            domain,
            codomain,
            cols: vec![Vec::new(); domain.dim()],
        }
    }

    pub fn identity(field: F, space: AmbientSpace) -> Self {
        let cols = (0..space.dim()).map(|i| sparse::unit(&field, i)).collect();
        LinMap {
            field,
            domain: space,
            codomain: space,
            cols,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn domain(&self) -> AmbientSpace {
        self.domain
    }

    pub fn codomain(&self) -> AmbientSpace {
        self.codomain
    }

    pub fn cols(&self) -> &[SparseVec<F::Elem>] {
        &self.cols
    }

    pub fn entry(&self, row: usize, col: usize) -> F::Elem {
        sparse::get(&self.field, &self.cols[col], row)
    }

    pub fn to_dense_rows(&self) -> Vec<Vec<F::Elem>> {
        let mut rows = vec![vec![self.field.zero(); self.domain.dim()]; self.codomain.dim()];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, x) in c {
                rows[*i][j] = x.clone();
            }
        }
        rows
    }

    pub fn apply(&self, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let mut acc: SparseVec<F::Elem> = Vec::new();
        for (j, x) in v {
            acc = sparse::axpy(&self.field, &acc, x, &self.cols[*j]);
        }
        acc
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &LinMap<F>) -> Result<LinMap<F>, LinAlgError> {
        if first.codomain != self.domain {
            return Err(LinAlgError::Shape("maps are not composable".into()));
        }
        let cols = first.cols.iter().map(|c| self.apply(c)).collect();
        Ok(LinMap {
            field: self.field.clone(),
            domain: first.domain,
            codomain: self.codomain,
            cols,
        })
    }

    /// The transpose, viewed as the dual map between dual spaces.
    pub fn transpose(&self) -> LinMap<F> {
        let mut cols = vec![Vec::new(); self.codomain.dim()];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, x) in c {
                cols[*i].push((j, x.clone()));
            }
        }
        LinMap {
            field: self.field.clone(),
            domain: self.codomain.dual(),
            codomain: self.domain.dual(),
            cols,
        }
    }

    pub fn add(&self, other: &LinMap<F>) -> Result<LinMap<F>, LinAlgError> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(LinAlgError::Shape("sum of maps with different shapes".into()));
        }
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| sparse::add(&self.field, a, b))
            .collect();
        Ok(LinMap {
            field: self.field.clone(),
            domain: self.domain,
            codomain: self.codomain,
            cols,
        })
    }

    pub fn scaled(&self, c: &F::Elem) -> LinMap<F> {
        LinMap {
            field: self.field.clone(),
            domain: self.domain,
            codomain: self.codomain,
            cols: self.cols.iter().map(|v| sparse::scale(&self.field, c, v)).collect(),
        }
    }

    /// Same matrix, relabelled spaces (dimensions must agree).
    pub fn relabel(&self, domain: AmbientSpace, codomain: AmbientSpace) -> LinMap<F> {
        assert_eq!(domain.dim(), self.domain.dim());
        assert_eq!(codomain.dim(), self.codomain.dim());
        LinMap {
            field: self.field.clone(),
            domain,
            codomain,
            cols: self.cols.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.field.clone(), self.codomain.dim());
        for c in &self.cols {
            e.insert(c.clone());
        }
        e.rank()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.domain.dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.codomain.dim()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.domain.dim() == self.codomain.dim() && self.is_injective()
    }

    /// Some `x` with `self(x) = y`, if `y` lies in the image.
    pub fn solve(&self, y: &SparseVec<F::Elem>) -> Option<SparseVec<F::Elem>> {
        let f = &self.field;
        let mut e = Echelon::tracking(f.clone(), self.codomain.dim());
        for (j, c) in self.cols.iter().enumerate() {
            let _ = e.insert_tagged(c.clone(), sparse::unit(f, j));
        }
        let (rem, coeffs) = e.reduce_with_coeffs(y);
        rem.is_empty().then(|| {
            coeffs
                .into_iter()
                .fold(Vec::new(), |x, (r, c)| sparse::axpy(f, &x, &c, &e.tags()[r]))
        })
    }

    /// The inverse map, when this is an isomorphism.
    pub fn inverse(&self) -> Option<LinMap<F>> {
        if !self.is_isomorphism() {
            return None;
        }
        let f = &self.field;
        let mut e = Echelon::tracking(f.clone(), self.codomain.dim());
        for (j, c) in self.cols.iter().enumerate() {
            e.insert_tagged(c.clone(), sparse::unit(f, j)).ok()?;
        }
        let cols = (0..self.codomain.dim())
            .map(|i| {
                let (_, coeffs) = e.reduce_with_coeffs(&sparse::unit(f, i));
                coeffs
                    .into_iter()
                    .fold(Vec::new(), |x, (r, c)| sparse::axpy(f, &x, &c, &e.tags()[r]))
            })
            .collect();
        Some(LinMap {
            field: f.clone(),
            domain: self.codomain,
            codomain: self.domain,
            cols,
        })
    }
}

/// Kernel of a map, as a subspace of its domain.
pub fn kernel<F: Field>(m: &LinMap<F>) -> Subspace<F> {
    let f = m.field.clone();
    let mut e = Echelon::tracking(f.clone(), m.codomain.dim());
    let mut ker = Echelon::new(f.clone(), m.domain.dim());
    for j in (0..m.domain.dim()).rev() {
        if let Err(rel) = e.insert_tagged(m.cols[j].clone(), sparse::unit(&f, j)) {
            ker.insert(rel);
        }
    }
    Subspace::from_rref(f, m.domain, ker.into_rref())
}

/// Image of a map, as a subspace of its codomain.
pub fn image<F: Field>(m: &LinMap<F>) -> Subspace<F> {
    Subspace::spanned_by(m.field.clone(), m.codomain, m.cols.iter().cloned())
}

/// Image of a subspace under a map.
pub fn image_of<F: Field>(m: &LinMap<F>, s: &Subspace<F>) -> Result<Subspace<F>, LinAlgError> {
    if s.ambient != m.domain {
        return Err(LinAlgError::AmbientMismatch);
    }
    Ok(Subspace::spanned_by(
        m.field.clone(),
        m.codomain,
        s.basis.iter().map(|v| m.apply(v)),
    ))
}

/// Preimage `m⁻¹(s)` of a subspace of the codomain.
pub fn preimage<F: Field>(m: &LinMap<F>, s: &Subspace<F>) -> Result<Subspace<F>, LinAlgError> {
    if s.ambient != m.codomain {
        return Err(LinAlgError::AmbientMismatch);
    }
    let q = quotient(&Subspace::full(m.field.clone(), m.codomain), s)?;
    let cols = m.cols.iter().map(|c| q.project(c)).collect();
    let composite = LinMap::new(m.field.clone(), m.domain, q.space, cols)?;
    Ok(kernel(&composite))
}

pub fn sum<F: Field>(u: &Subspace<F>, v: &Subspace<F>) -> Result<Subspace<F>, LinAlgError> {
    if u.ambient != v.ambient {
        return Err(LinAlgError::AmbientMismatch);
    }
    Ok(Subspace::spanned_by(
        u.field.clone(),
        u.ambient,
        u.basis.iter().chain(&v.basis).cloned(),
    ))
}

pub fn intersect<F: Field>(u: &Subspace<F>, v: &Subspace<F>) -> Result<Subspace<F>, LinAlgError> {
    if u.ambient != v.ambient {
        return Err(LinAlgError::AmbientMismatch);
    }
    let f = &u.field;
    // Relations Σ x_i u_i = Σ y_j v_j come out of inserting v's basis into
    // an echelon of u's basis while tracking u-coordinates.
    let mut e = Echelon::tracking(f.clone(), u.ambient.dim());
    for (i, b) in u.basis.iter().enumerate() {
        let _ = e.insert_tagged(b.clone(), sparse::unit(f, i));
    }
    let n_u = u.basis.len();
    let mut out = Vec::new();
    for (j, b) in v.basis.iter().enumerate() {
        if let Err(rel) = e.insert_tagged(b.clone(), sparse::unit(f, n_u + j)) {
            // rel = Σ x_i e_i + Σ y_j e_{n_u + j} with Σ x_i u_i + Σ y_j v_j = 0.
            let mut w: SparseVec<F::Elem> = Vec::new();
            for (k, c) in &rel {
                if *k < n_u {
                    w = sparse::axpy(f, &w, c, &u.basis[*k]);
                }
            }
            out.push(w);
        }
    }
    Ok(Subspace::spanned_by(f.clone(), u.ambient, out))
}

/// A subspace of a tagged ambient space, stored by its reduced row echelon
/// basis (pivot = lowest nonzero index, pivot entry one, zeros in the other
/// basis vectors' pivot positions). The basis is unique for the subspace.
#[derive(Clone, Debug)]
pub struct Subspace<F: Field> {
    field: F,
    ambient: AmbientSpace,
    basis: Vec<SparseVec<F::Elem>>,
    coords: AmbientSpace,
}

impl<F: Field> PartialEq for Subspace<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.basis == other.basis
    }
}

impl<F: Field> Subspace<F> {
    fn from_rref(field: F, ambient: AmbientSpace, basis: Vec<SparseVec<F::Elem>>) -> Self {
        let coords = AmbientSpace::new(basis.len());
        Subspace {
            field,
            ambient,
            basis,
            coords,
        }
    }

    pub fn spanned_by(field: F, ambient: AmbientSpace, vectors: impl IntoIterator<Item = SparseVec<F::Elem>>) -> Self {
        let mut e = Echelon::new(field.clone(), ambient.dim());
        for v in vectors {
            debug_assert!(v.iter().all(|(i, _)| *i < ambient.dim()));
            e.insert(v);
        }
        Self::from_rref(field, ambient, e.into_rref())
    }

    pub fn zero(field: F, ambient: AmbientSpace) -> Self {
        Self::from_rref(field, ambient, Vec::new())
    }

    pub fn full(field: F, ambient: AmbientSpace) -> Self {
        let basis = (0..ambient.dim()).map(|i| sparse::unit(&field, i)).collect();
        Self::from_rref(field, ambient, basis)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn ambient(&self) -> AmbientSpace {
        self.ambient
    }

    /// The subspace viewed as an abstract space with its basis as
    /// coordinates.
    pub fn coord_space(&self) -> AmbientSpace {
        self.coords
    }

    pub fn basis(&self) -> &[SparseVec<F::Elem>] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient.dim()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis.iter().map(|v| v[0].0).collect()
    }

    /// Coordinates of `v` in the canonical basis, or `None` when `v` is not
    /// in the subspace.
    pub fn coordinates(&self, v: &SparseVec<F::Elem>) -> Option<SparseVec<F::Elem>> {
        let f = &self.field;
        let mut rest = v.clone();
        let mut coords = Vec::new();
        for (k, b) in self.basis.iter().enumerate() {
            let c = sparse::get(f, &rest, b[0].0);
            if !f.is_zero(&c) {
                rest = sparse::axpy(f, &rest, &f.neg(&c), b);
                coords.push((k, c));
            }
        }
        rest.is_empty().then_some(coords)
    }

    pub fn contains(&self, v: &SparseVec<F::Elem>) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn is_subspace_of(&self, other: &Subspace<F>) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|b| other.contains(b))
    }

    /// Inclusion map from the coordinate space into the ambient space.
    pub fn inclusion(&self) -> LinMap<F> {
        LinMap {
            field: self.field.clone(),
            domain: self.coords,
            codomain: self.ambient,
            cols: self.basis.clone(),
        }
    }

    /// The element with the given coordinates.
    pub fn element(&self, coords: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        self.inclusion().apply(coords)
    }

    /// Re-express this subspace inside its own coordinate space of `other`
    /// (requires `self ⊆ other`).
    pub fn in_coordinates_of(&self, other: &Subspace<F>) -> Result<Subspace<F>, LinAlgError> {
        if self.ambient != other.ambient {
            return Err(LinAlgError::AmbientMismatch);
        }
        let mut vs = Vec::new();
        for b in &self.basis {
            vs.push(other.coordinates(b).ok_or(LinAlgError::NotASubspace)?);
        }
        Ok(Subspace::spanned_by(self.field.clone(), other.coords, vs))
    }
}

/// The quotient `v / u` of nested subspaces. Carries a complement basis in
/// ambient coordinates (the lifts of the quotient basis) and the projection
/// from the coordinate space of `v`.
#[derive(Clone, Debug)]
pub struct Quotient<F: Field> {
    field: F,
    pub space: AmbientSpace,
    pub projection: LinMap<F>,
    numerator: Subspace<F>,
    denominator: Subspace<F>,
    lifts: Vec<SparseVec<F::Elem>>,
}

pub fn quotient<F: Field>(v: &Subspace<F>, u: &Subspace<F>) -> Result<Quotient<F>, LinAlgError> {
    if v.ambient != u.ambient {
        return Err(LinAlgError::AmbientMismatch);
    }
    if !u.is_subspace_of(v) {
        return Err(LinAlgError::NotASubspace);
    }
    let f = &v.field;
    let strip = |x: &SparseVec<F::Elem>| -> SparseVec<F::Elem> {
        let mut x = x.clone();
        for b in &u.basis {
            let c = sparse::get(f, &x, b[0].0);
            if !f.is_zero(&c) {
                x = sparse::axpy(f, &x, &f.neg(&c), b);
            }
        }
        x
    };
    let mut e = Echelon::new(f.clone(), v.ambient.dim());
    for b in &v.basis {
        e.insert(strip(b));
    }
    let lifts = e.into_rref();
    let space = AmbientSpace::new(lifts.len());
    let mut q = Quotient {
        field: f.clone(),
        space,
        projection: LinMap::zero(f.clone(), v.coords, space),
        numerator: v.clone(),
        denominator: u.clone(),
        lifts,
    };
    let cols = v.basis.iter().map(|b| q.project(b)).collect();
    q.projection = LinMap::new(f.clone(), v.coords, space, cols)?;
    Ok(q)
}

impl<F: Field> Quotient<F> {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn numerator(&self) -> &Subspace<F> {
        &self.numerator
    }

    pub fn denominator(&self) -> &Subspace<F> {
        &self.denominator
    }

    /// Representatives in the ambient space of the quotient basis vectors.
    pub fn lifts(&self) -> &[SparseVec<F::Elem>] {
        &self.lifts
    }

    /// Quotient coordinates of an element of the numerator given in
    /// ambient coordinates. Debug builds check membership.
    pub fn project(&self, x: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let f = &self.field;
        let mut x = x.clone();
        for b in self.denominator.basis() {
            let c = sparse::get(f, &x, b[0].0);
            if !f.is_zero(&c) {
                x = sparse::axpy(f, &x, &f.neg(&c), b);
            }
        }
        let mut out = Vec::new();
        for (k, l) in self.lifts.iter().enumerate() {
            let c = sparse::get(f, &x, l[0].0);
            if !f.is_zero(&c) {
                x = sparse::axpy(f, &x, &f.neg(&c), l);
                out.push((k, c));
            }
        }
        debug_assert!(x.is_empty(), "projected vector is not in the numerator");
        out
    }

    /// Checked projection: `None` when `x` is outside the numerator.
    pub fn try_project(&self, x: &SparseVec<F::Elem>) -> Option<SparseVec<F::Elem>> {
        self.numerator.contains(x).then(|| self.project(x))
    }

    /// The lift of a quotient vector back to the ambient space.
    pub fn lift(&self, coords: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let mut acc = Vec::new();
        for (k, c) in coords {
            acc = sparse::axpy(&self.field, &acc, c, &self.lifts[*k]);
        }
        acc
    }

    /// A right inverse of the projection, as a map from the quotient to the
    /// numerator's coordinate space.
    pub fn section(&self) -> LinMap<F> {
        let cols = self
            .lifts
            .iter()
            .map(|l| self.numerator.coordinates(l).expect("lift lies in numerator"))
            .collect();
        LinMap {
            field: self.field.clone(),
            domain: self.space,
            codomain: self.numerator.coords,
            cols,
        }
    }
}

/// The map `src → tgt` induced by `m` on subspaces (restriction).
pub fn induced_restrict<F: Field>(
    m: &LinMap<F>,
    src: &Subspace<F>,
    tgt: &Subspace<F>,
) -> Result<LinMap<F>, LinAlgError> {
    if src.ambient != m.domain || tgt.ambient != m.codomain {
        return Err(LinAlgError::AmbientMismatch);
    }
    let mut cols = Vec::with_capacity(src.dim());
    for b in &src.basis {
        cols.push(tgt.coordinates(&m.apply(b)).ok_or(LinAlgError::NotInvariant)?);
    }
    LinMap::new(m.field.clone(), src.coords, tgt.coords, cols)
}

/// The map `src → tgt` induced by `m` on quotients: `m` must carry the
/// source numerator into the target numerator and the source denominator
/// into the target denominator.
pub fn induced_descend<F: Field>(
    m: &LinMap<F>,
    src: &Quotient<F>,
    tgt: &Quotient<F>,
) -> Result<LinMap<F>, LinAlgError> {
    if src.numerator.ambient != m.domain || tgt.numerator.ambient != m.codomain {
        return Err(LinAlgError::AmbientMismatch);
    }
    for b in src.denominator.basis() {
        if !tgt.denominator.contains(&m.apply(b)) {
            return Err(LinAlgError::NotInvariant);
        }
    }
    let mut cols = Vec::with_capacity(src.dim());
    for l in &src.lifts {
        cols.push(tgt.try_project(&m.apply(l)).ok_or(LinAlgError::NotInvariant)?);
    }
    LinMap::new(m.field.clone(), src.space, tgt.space, cols)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    #[test]
    fn kernel_examples() {
        let f = f2();
        let z = LinMap::from_rows(f, 2, 2, &[vec![0, 0], vec![0, 0]]);
        assert_eq!(kernel(&z).dim(), 2);
        let id = LinMap::identity(f, AmbientSpace::new(3));
        assert_eq!(kernel(&id).dim(), 0);
        let m = LinMap::from_rows(f, 2, 2, &[vec![1, 1], vec![0, 0]]);
        let k = kernel(&m);
        assert_eq!(k.basis(), &[vec![(0, 1), (1, 1)]]);
    }

    #[test]
    fn image_examples() {
        let f = f2();
        let m = LinMap::from_rows(f, 2, 2, &[vec![1, 0], vec![1, 0]]);
        assert_eq!(image(&m).basis(), &[vec![(0, 1), (1, 1)]]);
        let id = LinMap::identity(f, AmbientSpace::new(2));
        assert!(image(&id).is_full());
        let z = LinMap::zero(f, AmbientSpace::new(2), AmbientSpace::new(2));
        assert!(image(&z).is_zero());
    }

    #[test]
    fn sum_and_intersection_examples() {
        let f = f2();
        let a = AmbientSpace::new(3);
        let u = Subspace::spanned_by(f, a, vec![vec![(0, 1), (1, 1)]]);
        let v = Subspace::spanned_by(f, a, vec![vec![(1, 1), (2, 1)]]);
        assert_eq!(sum(&u, &v).unwrap().dim(), 2);
        assert_eq!(sum(&u, &u).unwrap(), u);
        let u = Subspace::spanned_by(f, a, vec![vec![(0, 1)], vec![(0, 1), (1, 1)]]);
        let v = Subspace::spanned_by(f, a, vec![vec![(1, 1)], vec![(2, 1)]]);
        assert_eq!(intersect(&u, &v).unwrap().basis(), &[vec![(1, 1)]]);
        let other = Subspace::zero(f, AmbientSpace::new(3));
        assert_eq!(sum(&u, &other), Err(LinAlgError::AmbientMismatch));
    }

    #[test]
    fn quotient_examples() {
        let f = PrimeField::new(3).unwrap();
        let a = AmbientSpace::new(2);
        let full = Subspace::full(f, a);
        let diag = Subspace::spanned_by(f, a, vec![vec![(0, 1), (1, 1)]]);
        let q = quotient(&full, &diag).unwrap();
        assert_eq!(q.dim(), 1);
        assert!(q.project(&vec![(0, 1), (1, 1)]).is_empty());
        assert_eq!(quotient(&full, &full).unwrap().dim(), 0);
        assert_eq!(quotient(&full, &Subspace::zero(f, a)).unwrap().dim(), 2);
        assert_eq!(quotient(&diag, &full).unwrap_err(), LinAlgError::NotASubspace);
    }

    #[test]
    fn solve_finds_preimages() {
        let f = f2();
        let m = LinMap::from_rows(f, 3, 2, &[vec![1, 0], vec![1, 1], vec![0, 1]]);
        let y = m.apply(&vec![(1, 1)]);
        assert_eq!(m.apply(&m.solve(&y).unwrap()), y);
        assert!(m.solve(&vec![(0, 1)]).is_none());
    }

    #[test]
    fn inverse_undoes_the_map() {
        let f = PrimeField::new(7).unwrap();
        let m = LinMap::from_rows(f, 3, 3, &[vec![2, 1, 0], vec![0, 3, 1], vec![1, 0, 5]]);
        let inv = m.inverse().unwrap();
        assert_eq!(inv.compose(&m).unwrap().cols(), LinMap::identity(f, m.domain()).cols());
        assert_eq!(
            m.compose(&inv).unwrap().cols(),
            LinMap::identity(f, m.codomain()).cols()
        );
        assert!(LinMap::from_rows(f, 2, 2, &[vec![1, 2], vec![2, 4]])
            .inverse()
            .is_none());
    }

    #[test]
    fn restriction_example() {
        let f = f2();
        let m = LinMap::from_rows(f, 2, 2, &[vec![1, 1], vec![0, 1]]);
        let s = Subspace::spanned_by(f, m.domain(), vec![vec![(0, 1)]]);
        let t = Subspace::spanned_by(f, m.codomain(), vec![vec![(0, 1)]]);
        let r = induced_restrict(&m, &s, &t).unwrap();
        assert_eq!(r.to_dense_rows(), vec![vec![1]]);
        let bad = Subspace::spanned_by(f, m.domain(), vec![vec![(1, 1)]]);
        assert_eq!(induced_restrict(&m, &bad, &t).unwrap_err(), LinAlgError::NotInvariant);
    }

    #[test]
    fn preimage_of_zero_is_kernel() {
        let f = PrimeField::new(5).unwrap();
        let m = LinMap::from_rows(f, 1, 2, &[vec![1, 1]]);
        let z = Subspace::zero(f, m.codomain());
        assert_eq!(preimage(&m, &z).unwrap(), kernel(&m));
    }

    #[test]
    fn rationals_kernel() {
        let q = Rationals;
        let rows = vec![vec![q.from_i64(1), q.from_i64(2)], vec![q.from_i64(2), q.from_i64(4)]];
        let m = LinMap::from_rows(q, 2, 2, &rows);
        let k = kernel(&m);
        assert_eq!(k.dim(), 1);
        assert!(m.apply(&k.basis()[0]).is_empty());
    }
}
