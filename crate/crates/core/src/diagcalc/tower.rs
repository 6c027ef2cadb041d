//! Finite slabs of direct and inverse systems.

use crate::fieldlin::{self as fl, sparse, AmbientSpace, Field, LinMap, SparseVec};

use super::DiagError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variance {
    /// Maps `A_k → A_{k+1}`.
    Direct,
    /// Bonding maps `A_{k+1} → A_k`.
    Inverse,
}

/// A finite slab `A_0, …, A_N` of a system indexed by ascending integers,
/// with one map between each consecutive pair.
#[derive(Clone, Debug)]
pub struct Tower<F: Field> {
    pub field: F,
    pub variance: Variance,
    pub indices: Vec<i64>,
    pub spaces: Vec<AmbientSpace>,
    pub maps: Vec<LinMap<F>>,
}

impl<F: Field> Tower<F> {
    pub fn new(
        field: F,
        variance: Variance,
        indices: Vec<i64>,
        spaces: Vec<AmbientSpace>,
        maps: Vec<LinMap<F>>,
    ) -> Result<Self, DiagError> {
        if spaces.is_empty() {
            return Err(DiagError::EmptyTower);
        }
        if indices.len() != spaces.len() || maps.len() + 1 != spaces.len() || indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(DiagError::NotComposable);
        }
        for (k, m) in maps.iter().enumerate() {
            let (src, tgt) = match variance {
                Variance::Direct => (spaces[k], spaces[k + 1]),
                Variance::Inverse => (spaces[k + 1], spaces[k]),
            };
            if m.domain() != src || m.codomain() != tgt {
                return Err(DiagError::NotComposable);
            }
        }
        Ok(Tower {
            field,
            variance,
            indices,
            spaces,
            maps,
        })
    }

    /// A direct tower on consecutive indices starting at zero.
    pub fn direct(field: F, spaces: Vec<AmbientSpace>, maps: Vec<LinMap<F>>) -> Result<Self, DiagError> {
        let idx = (0..spaces.len() as i64).collect();
        Self::new(field, Variance::Direct, idx, spaces, maps)
    }

    pub fn inverse(field: F, spaces: Vec<AmbientSpace>, maps: Vec<LinMap<F>>) -> Result<Self, DiagError> {
        let idx = (0..spaces.len() as i64).collect();
        Self::new(field, Variance::Inverse, idx, spaces, maps)
    }

    pub fn len(&self) -> usize {
        self.spaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spaces.is_empty()
    }

    /// Whether the last map of the slab is an isomorphism.
    pub fn is_stable(&self) -> bool {
        self.maps.last().is_none_or(|m| m.is_isomorphism())
    }

    fn offsets(&self) -> Vec<usize> {
        let mut off = Vec::with_capacity(self.spaces.len() + 1);
        let mut acc = 0;
        off.push(0);
        for s in &self.spaces {
            acc += s.dim();
            off.push(acc);
        }
        off
    }
}

/// A colimit together with the structure maps `A_k → colim`.
#[derive(Clone, Debug)]
pub struct Colimit<F: Field> {
    pub space: AmbientSpace,
    pub maps: Vec<LinMap<F>>,
}

/// A limit together with the structure maps `lim → A_k`.
#[derive(Clone, Debug)]
pub struct Limit<F: Field> {
    pub space: AmbientSpace,
    pub maps: Vec<LinMap<F>>,
}

fn shifted<E: Clone>(v: &SparseVec<E>, by: usize) -> SparseVec<E> {
    v.iter().map(|(i, x)| (i + by, x.clone())).collect()
}

fn block<E: Clone>(v: &SparseVec<E>, lo: usize, hi: usize) -> SparseVec<E> {
    v.iter()
        .filter(|(i, _)| *i >= lo && *i < hi)
        .map(|(i, x)| (i - lo, x.clone()))
        .collect()
}

/// The map `𝓘: ⊕_{k<N} A_k → ⊕_k A_k`, `x_k ↦ x_k − i(x_k)`.
fn presentation_i<F: Field>(tw: &Tower<F>, f: &F) -> Result<LinMap<F>, DiagError> {
    let off = tw.offsets();
    let n = tw.spaces.len();
    let dom = AmbientSpace::new(off[n - 1]);
    let cod = AmbientSpace::new(off[n]);
    let mut cols = Vec::with_capacity(dom.dim());
    for (k, m) in tw.maps.iter().enumerate() {
        for j in 0..tw.spaces[k].dim() {
            let image = sparse::scale(f, &f.neg(&f.one()), &shifted(&m.cols()[j], off[k + 1]));
            let mut col = vec![(off[k] + j, f.one())];
            col.extend(image);
            cols.push(col);
        }
    }
    Ok(LinMap::new(f.clone(), dom, cod, cols)?)
}

/// The map `𝓟: ⊕_k A_k → ⊕_{k<N} A_k`, `(x_k) ↦ (x_k − p(x_{k+1}))`.
fn presentation_p<F: Field>(tw: &Tower<F>, f: &F) -> Result<LinMap<F>, DiagError> {
    let off = tw.offsets();
    let n = tw.spaces.len();
    let dom = AmbientSpace::new(off[n]);
    let cod = AmbientSpace::new(off[n - 1]);
    let mut cols = Vec::with_capacity(dom.dim());
    for k in 0..n {
        for j in 0..tw.spaces[k].dim() {
            let mut col = Vec::new();
            if k > 0 {
                let p = &tw.maps[k - 1];
                col = sparse::scale(f, &f.neg(&f.one()), &shifted(&p.cols()[j], off[k - 1]));
            }
            if k + 1 < n {
                col.push((off[k] + j, f.one()));
            }
            cols.push(col);
        }
    }
    Ok(LinMap::new(f.clone(), dom, cod, cols)?)
}

fn require<F: Field>(tw: &Tower<F>, v: Variance) -> Result<(), DiagError> {
    if tw.variance != v {
        return Err(DiagError::NotComposable);
    }
    if !tw.is_stable() {
        return Err(DiagError::NotStabilized);
    }
    Ok(())
}

/// Colimit of a direct slab as `coker 𝓘`.
pub fn tower_colim<F: Field>(tw: &Tower<F>) -> Result<Colimit<F>, DiagError> {
    require(tw, Variance::Direct)?;
    let f = tw.field.clone();
    let q = super::square::cokernel(&presentation_i(tw, &f)?)?;
    let off = tw.offsets();
    let maps = tw
        .spaces
        .iter()
        .enumerate()
        .map(|(k, s)| {
            let cols = (0..s.dim()).map(|j| q.project(&sparse::unit(&f, off[k] + j))).collect();
            LinMap::new(f.clone(), *s, q.space, cols)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Colimit { space: q.space, maps })
}

/// Limit of an inverse slab as `ker 𝓟`.
pub fn tower_lim<F: Field>(tw: &Tower<F>) -> Result<Limit<F>, DiagError> {
    require(tw, Variance::Inverse)?;
    let f = tw.field.clone();
    let ker = fl::kernel(&presentation_p(tw, &f)?);
    let off = tw.offsets();
    let maps = tw
        .spaces
        .iter()
        .enumerate()
        .map(|(k, s)| {
            let cols = ker.basis().iter().map(|b| block(b, off[k], off[k + 1])).collect();
            LinMap::new(f.clone(), ker.coord_space(), *s, cols)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Limit {
        space: ker.coord_space(),
        maps,
    })
}

/// `lim′` of an inverse slab: returns `coker 𝓟` and whether the slab
/// satisfies the Mittag-Leffler condition (images of later terms in each
/// `A_k` have stopped shrinking by the end of the slab).
pub fn tower_lim_derived<F: Field>(tw: &Tower<F>) -> Result<(AmbientSpace, bool), DiagError> {
    require(tw, Variance::Inverse)?;
    let f = tw.field.clone();
    let q = super::square::cokernel(&presentation_p(tw, &f)?)?;
    let n = tw.spaces.len();
    let mut ml = true;
    for k in 0..n.saturating_sub(2) {
        let mut prev: Option<LinMap<F>> = None;
        let mut imgs = Vec::new();
        for j in k..n - 1 {
            let m = match prev {
                None => tw.maps[j].clone(),
                Some(p) => p.compose(&tw.maps[j])?,
            };
            imgs.push(fl::image(&m).dim());
            prev = Some(m);
        }
        if imgs.len() >= 2 && imgs[imgs.len() - 1] != imgs[imgs.len() - 2] {
            ml = false;
        }
    }
    Ok((q.space, ml))
}
