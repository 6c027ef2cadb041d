//! Chains of sub-surjections `A_1 ⇝ A_2 ⇝ …` and their limits.

use crate::fieldlin::{self as fl, Field, LinAlgError, LinMap, Subspace};

use super::tower::{tower_colim, Colimit, Tower};
use super::DiagError;

/// A surjection `π: A → P` together with a subspace `A′ ⊆ P`. In a chain,
/// the next term's domain is the coordinate space of `A′`.
#[derive(Clone, Debug)]
pub struct SubSurjection<F: Field> {
    pub pi: LinMap<F>,
    pub sub: Subspace<F>,
}

impl<F: Field> SubSurjection<F> {
    pub fn new(pi: LinMap<F>, sub: Subspace<F>) -> Result<Self, DiagError> {
        if !pi.is_surjective() {
            return Err(DiagError::NotSurjective);
        }
        if sub.ambient() != pi.codomain() {
            return Err(DiagError::NotComposable);
        }
        Ok(SubSurjection { pi, sub })
    }
}

/// The maximal surjection refinement of a chain and its colimit.
#[derive(Clone, Debug)]
pub struct SubSurjectionLimit<F: Field> {
    /// `S_k ⊆ A_k`, with the final entry the full last `A′`.
    pub refined: Vec<Subspace<F>>,
    pub tower: Tower<F>,
    pub colimit: Colimit<F>,
}

impl<F: Field> SubSurjectionLimit<F> {
    pub fn dim(&self) -> usize {
        self.colimit.space.dim()
    }
}

/// Pull the last subspace back through the chain from right to left,
/// restrict each surjection to the resulting subspaces, and take the
/// colimit of the genuine surjection tower so obtained.
pub fn subsurjection_limit<F: Field>(chain: &[SubSurjection<F>]) -> Result<SubSurjectionLimit<F>, DiagError> {
    let Some(last) = chain.last() else {
        return Err(DiagError::EmptyTower);
    };
    for w in chain.windows(2) {
        if w[1].pi.domain() != w[0].sub.coord_space() {
            return Err(DiagError::NotComposable);
        }
    }
    let field = last.pi.field().clone();
    let n = chain.len();
    let mut refined = vec![Subspace::full(field.clone(), last.sub.coord_space())];
    for k in (0..n).rev() {
        let s = &chain[k];
        let next = refined.last().expect("nonempty");
        let in_p = Subspace::spanned_by(
            field.clone(),
            s.pi.codomain(),
            next.basis().iter().map(|v| s.sub.element(v)),
        );
        refined.push(fl::preimage(&s.pi, &in_p)?);
    }
    refined.reverse();
    let mut maps = Vec::with_capacity(n);
    for k in 0..n {
        let s = &chain[k];
        let mut cols = Vec::with_capacity(refined[k].dim());
        for b in refined[k].basis() {
            let in_sub = s.sub.coordinates(&s.pi.apply(b)).ok_or(LinAlgError::NotInvariant)?;
            cols.push(refined[k + 1].coordinates(&in_sub).ok_or(LinAlgError::NotInvariant)?);
        }
        let m = LinMap::new(
            field.clone(),
            refined[k].coord_space(),
            refined[k + 1].coord_space(),
            cols,
        )?;
        debug_assert!(m.is_surjective());
        maps.push(m);
    }
    let spaces: Vec<_> = refined.iter().map(|s| s.coord_space()).collect();
    let tower = Tower::direct(field.clone(), spaces.clone(), maps)?;
    let colimit = if n >= 2 {
        tower_colim(&tower)?
    } else {
        // A single step needs no stabilization: the colimit is its target.
        let last = LinMap::identity(field, spaces[1]);
        Colimit {
            space: spaces[1],
            maps: vec![tower.maps[0].clone(), last],
        }
    };
    Ok(SubSurjectionLimit {
        refined,
        tower,
        colimit,
    })
}
