//! Simplicial homology of pairs of subcomplexes of a window.

use crate::fieldlin::{self as fl, AmbientSpace, Field, LinMap, Quotient, SparseVec, Subspace};

use super::window::{CellSet, Window};
use super::CoverError;

const NONE: usize = usize::MAX;

/// `H_r(K, L)` for subcomplexes `L ⊆ K` of a window. Relative chains are
/// indexed by the `r`-cells of `K` not in `L`.
#[derive(Clone, Debug)]
pub struct PairHomology<F: Field> {
    pub r: usize,
    cells: Vec<usize>,
    local: Vec<usize>,
    chains: AmbientSpace,
    pub homology: Quotient<F>,
}

fn relative_cells(w: &Window, d: usize, k: &CellSet, l: &CellSet) -> (Vec<usize>, Vec<usize>) {
    let n = w.count(d);
    let mut cells = Vec::new();
    let mut local = vec![NONE; n];
    for i in 0..n {
        if k.contains(d, i) && !l.contains(d, i) {
            local[i] = cells.len();
            cells.push(i);
        }
    }
    (cells, local)
}

/// Relative boundary of the listed `d`-cells, in local coordinates of the
/// `(d−1)`-cells.
fn boundary_columns<F: Field>(
    field: &F,
    w: &Window,
    d: usize,
    cells: &[usize],
    local_below: &[usize],
) -> Vec<SparseVec<F::Elem>> {
    cells
        .iter()
        .map(|&i| {
            let mut col: Vec<(usize, F::Elem)> = w
                .faces(d, i)
                .iter()
                .enumerate()
                .filter(|(_, f)| local_below[**f] != NONE)
                .map(|(j, f)| (local_below[*f], field.from_i64(if j % 2 == 0 { 1 } else { -1 })))
                .collect();
            col.sort_by_key(|(i, _)| *i);
            col
        })
        .collect()
}

impl<F: Field> PairHomology<F> {
    pub fn compute(field: &F, w: &Window, r: usize, k: &CellSet, l: &CellSet) -> Result<Self, CoverError> {
        let (cells, local) = relative_cells(w, r, k, l);
        let chains = AmbientSpace::new(cells.len());
        let cycles = if r == 0 || r > w.dim() {
            Subspace::full(field.clone(), chains)
        } else {
            let (below, local_below) = relative_cells(w, r - 1, k, l);
            let cols = boundary_columns(field, w, r, &cells, &local_below);
            let d = LinMap::new(field.clone(), chains, AmbientSpace::new(below.len()), cols)?;
            fl::kernel(&d)
        };
        let boundaries = if r + 1 > w.dim() {
            Subspace::zero(field.clone(), chains)
        } else {
            let (above, _) = relative_cells(w, r + 1, k, l);
            let cols = boundary_columns(field, w, r + 1, &above, &local);
            Subspace::spanned_by(field.clone(), chains, cols)
        };
        let homology = fl::quotient(&cycles, &boundaries)?;
        Ok(PairHomology {
            r,
            cells,
            local,
            chains,
            homology,
        })
    }

    pub fn dim(&self) -> usize {
        self.homology.dim()
    }

    pub fn space(&self) -> AmbientSpace {
        self.homology.space
    }

    pub fn field(&self) -> &F {
        self.homology.projection.field()
    }

    /// A relative cycle (in window cell indices) representing a class.
    pub fn representative(&self, coords: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        self.homology
            .lift(coords)
            .into_iter()
            .map(|(i, x)| (self.cells[i], x))
            .collect()
    }

    /// The class of a chain given in window cell indices: cells outside
    /// `K \ L` are dropped only if they lie in `L`; `None` when the chain is
    /// not a relative cycle of this pair.
    pub fn class_of(&self, chain: &SparseVec<F::Elem>, in_l: impl Fn(usize) -> bool) -> Option<SparseVec<F::Elem>> {
        let mut v = Vec::with_capacity(chain.len());
        for (i, x) in chain {
            let j = self.local[*i];
            if j == NONE {
                if in_l(*i) {
                    continue;
                }
                return None;
            }
            v.push((j, x.clone()));
        }
        v.sort_by_key(|(i, _)| *i);
        self.homology.try_project(&v)
    }

    /// The map `H_r(K, L) → H_r(K′, L′)` induced by inclusion of pairs.
    pub fn map_to(&self, target: &PairHomology<F>, target_l: &CellSet) -> Result<LinMap<F>, CoverError> {
        let r = self.r;
        let cols = (0..self.dim())
            .map(|j| {
                let chain = self.representative(&vec![(j, self.field().one())]);
                target
                    .class_of(&chain, |i| target_l.contains(r, i))
                    .ok_or(CoverError::NotASubpair)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LinMap::new(self.field().clone(), self.space(), target.space(), cols)?)
    }

    pub fn chain_space(&self) -> AmbientSpace {
        self.chains
    }
}

/// Translate a chain by `k` sheets; `None` if it leaves the window.
pub fn translate_chain<E: Clone>(w: &Window, r: usize, chain: &SparseVec<E>, k: i64) -> Option<SparseVec<E>> {
    let mut out = Vec::with_capacity(chain.len());
    for (i, x) in chain {
        out.push((w.translate(r, *i, k)?, x.clone()));
    }
    out.sort_by_key(|(i, _)| *i);
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covercomplex::complex::SimplicialComplex;
    use crate::covercomplex::form::{validate, OneForm, Q};
    use crate::fieldlin::PrimeField;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    #[test]
    fn circle_and_its_cover() {
        let c = SimplicialComplex::new(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let f2 = PrimeField::new(2).unwrap();
        let exact = OneForm::from_oriented(&c, &[((0, 1), q(0, 1)), ((1, 2), q(0, 1)), ((0, 2), q(0, 1))]).unwrap();
        let base = Window::new(&validate(&c, &exact).unwrap(), 0, 0).unwrap();
        let h1 = PairHomology::compute(&f2, &base, 1, &base.full(), &base.empty()).unwrap();
        assert_eq!(h1.dim(), 1);

        let circ = OneForm::from_oriented(&c, &[((0, 1), q(1, 3)), ((1, 2), q(1, 3)), ((2, 0), q(1, 3))]).unwrap();
        let w = Window::new(&validate(&c, &circ).unwrap(), -2, 2).unwrap();
        let h0 = PairHomology::compute(&f2, &w, 0, &w.full(), &w.empty()).unwrap();
        let h1 = PairHomology::compute(&f2, &w, 1, &w.full(), &w.empty()).unwrap();
        assert_eq!((h0.dim(), h1.dim()), (1, 0));
        // Relative to both ends a path carries one relative 1-class.
        let ends = w.bottom().union(&w.top());
        let rel = PairHomology::compute(&f2, &w, 1, &w.full(), &ends).unwrap();
        assert_eq!(rel.dim(), 1);
        // Pair (X̃_a, X̃_{a−ε}) at a = 1/3 is trivial in every degree.
        let a = w.sublevel(&q(1, 3));
        let b = w.sublevel(&q(2, 9));
        for r in 0..2 {
            assert_eq!(PairHomology::compute(&f2, &w, r, &a, &b).unwrap().dim(), 0);
        }
    }
}
