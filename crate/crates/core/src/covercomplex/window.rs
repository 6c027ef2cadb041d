//! Finite windows of the infinite cyclic cover and their level subcomplexes.

use std::collections::HashMap;

use num_traits::{Signed, Zero};

use super::form::{CoverData, Q};
use super::CoverError;

/// A membership flag for every cell of a window, per dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellSet {
    pub member: Vec<Vec<bool>>,
}

impl CellSet {
    pub fn contains(&self, d: usize, i: usize) -> bool {
        self.member.get(d).is_some_and(|m| m[i])
    }

    pub fn union(&self, other: &CellSet) -> CellSet {
        CellSet {
            member: self
                .member
                .iter()
                .zip(&other.member)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| *x || *y).collect())
                .collect(),
        }
    }

    pub fn is_subset_of(&self, other: &CellSet) -> bool {
        self.member
            .iter()
            .zip(&other.member)
            .all(|(a, b)| a.iter().zip(b).all(|(x, y)| !*x || *y))
    }

    pub fn count(&self) -> usize {
        self.member.iter().map(|m| m.iter().filter(|x| **x).count()).sum()
    }
}

/// The cells of the cover over sheets `kmin..=kmax`. A cover cell is a pair
/// (base simplex, sheet of its first vertex); its vertices sit on the sheets
/// given by the edge offsets from the first vertex.
#[derive(Clone, Debug)]
pub struct Window {
    pub period: Q,
    pub kmin: i64,
    pub kmax: i64,
    cells: Vec<Vec<(usize, i64)>>,
    index: Vec<HashMap<(usize, i64), usize>>,
    faces: Vec<Vec<Vec<usize>>>,
    max_height: Vec<Vec<Q>>,
    min_height: Vec<Vec<Q>>,
    /// Largest height of a cover vertex below the window.
    below: Q,
    /// Smallest height of a cover vertex above the window.
    above: Q,
    span: Q,
}

impl Window {
    /// Build the window on sheets `kmin..=kmax`. Without a period the window
    /// is the base complex regardless of the requested range.
    pub fn new(data: &CoverData, kmin: i64, kmax: i64) -> Result<Self, CoverError> {
        let periodic = data.has_period();
        let (kmin, kmax) = if periodic { (kmin, kmax) } else { (0, 0) };
        if kmin > kmax || (periodic && kmax - kmin + 1 < 2) {
            return Err(CoverError::WindowTooSmall);
        }
        let c = &data.complex;
        let p = data.period.clone();
        let offset = |u: usize, v: usize| -> i64 {
            if u == v {
                0
            } else {
                data.offsets[c.index_of(&[u, v]).expect("edge")]
            }
        };
        let mut cells = Vec::new();
        let mut index = Vec::new();
        let mut max_height = Vec::new();
        let mut min_height = Vec::new();
        let mut span = Q::zero();
        for d in 0..=c.dim() {
            let mut level = Vec::new();
            let mut idx = HashMap::new();
            let mut hi = Vec::new();
            let mut lo = Vec::new();
            for (s, simplex) in c.simplices(d).iter().enumerate() {
                let sheets: Vec<i64> = simplex.iter().map(|&v| offset(simplex[0], v)).collect();
                let heights: Vec<Q> = simplex
                    .iter()
                    .zip(&sheets)
                    .map(|(&v, &o)| &data.heights[v] + Q::from_integer(o.into()) * &p)
                    .collect();
                let top = heights.iter().max().expect("nonempty").clone();
                let bottom = heights.iter().min().expect("nonempty").clone();
                if &top - &bottom > span {
                    span = &top - &bottom;
                }
                let (smin, smax) = (*sheets.iter().min().unwrap(), *sheets.iter().max().unwrap());
                for k in kmin..=kmax {
                    if k + smin < kmin || k + smax > kmax {
                        continue;
                    }
                    let shift = Q::from_integer(k.into()) * &p;
                    idx.insert((s, k), level.len());
                    level.push((s, k));
                    hi.push(&top + &shift);
                    lo.push(&bottom + &shift);
                }
            }
            cells.push(level);
            index.push(idx);
            max_height.push(hi);
            min_height.push(lo);
        }
        let mut faces = vec![Vec::new()];
        for d in 1..=c.dim() {
            let mut fd = Vec::with_capacity(cells[d].len());
            for &(s, k) in &cells[d] {
                let simplex = &c.simplices(d)[s];
                let base_faces = c.faces(d, s);
                let f: Vec<usize> = base_faces
                    .iter()
                    .enumerate()
                    .map(|(j, &bf)| {
                        let sheet = if j == 0 { k + offset(simplex[0], simplex[1]) } else { k };
                        index[d - 1][&(bf, sheet)]
                    })
                    .collect();
                fd.push(f);
            }
            faces.push(fd);
        }
        let hmax = data.heights.iter().max().expect("vertices").clone();
        let hmin = data.heights.iter().min().expect("vertices").clone();
        let below = &hmax + Q::from_integer((kmin - 1).into()) * &p;
        let above = &hmin + Q::from_integer((kmax + 1).into()) * &p;
        Ok(Window {
            period: p,
            kmin,
            kmax,
            cells,
            index,
            faces,
            max_height,
            min_height,
            below,
            above,
            span,
        })
    }

    /// The window with `sheets` sheets centred on sheet 0.
    pub fn with_sheets(data: &CoverData, sheets: i64) -> Result<Self, CoverError> {
        let kmin = -(sheets / 2);
        Self::new(data, kmin, kmin + sheets - 1)
    }

    pub fn is_periodic(&self) -> bool {
        self.period.is_positive()
    }

    pub fn sheets(&self) -> i64 {
        self.kmax - self.kmin + 1
    }

    pub fn dim(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn count(&self, d: usize) -> usize {
        self.cells.get(d).map_or(0, |c| c.len())
    }

    pub fn cell(&self, d: usize, i: usize) -> (usize, i64) {
        self.cells[d][i]
    }

    pub fn cell_index(&self, d: usize, base: usize, sheet: i64) -> Option<usize> {
        self.index.get(d)?.get(&(base, sheet)).copied()
    }

    /// Faces `τ_0, …, τ_d` of a `d`-cell; the boundary is `Σ (−1)^j τ_j`.
    pub fn faces(&self, d: usize, i: usize) -> &[usize] {
        &self.faces[d][i]
    }

    pub fn max_height(&self, d: usize, i: usize) -> &Q {
        &self.max_height[d][i]
    }

    pub fn min_height(&self, d: usize, i: usize) -> &Q {
        &self.min_height[d][i]
    }

    /// The largest height difference within one simplex.
    pub fn span(&self) -> &Q {
        &self.span
    }

    /// Queried levels must lie in `[lo, hi]` so that frontier effects stay
    /// at least one period away. Without a period every level is safe.
    pub fn safe_range(&self) -> Option<(Q, Q)> {
        if !self.is_periodic() {
            return None;
        }
        let lo = &self.below + &self.span + &self.period;
        let hi = &self.above - &self.span - &self.period;
        Some((lo, hi))
    }

    pub fn is_safe(&self, t: &Q) -> bool {
        self.safe_range().is_none_or(|(lo, hi)| lo <= *t && *t <= hi)
    }

    pub fn check_safe(&self, t: &Q) -> Result<(), CoverError> {
        if self.is_safe(t) {
            Ok(())
        } else {
            Err(CoverError::OutOfSafeRange(t.clone()))
        }
    }

    fn select(&self, keep: impl Fn(usize, usize) -> bool) -> CellSet {
        CellSet {
            member: (0..self.cells.len())
                .map(|d| (0..self.cells[d].len()).map(|i| keep(d, i)).collect())
                .collect(),
        }
    }

    pub fn full(&self) -> CellSet {
        self.select(|_, _| true)
    }

    pub fn empty(&self) -> CellSet {
        self.select(|_, _| false)
    }

    /// Cells with every vertex at height `≤ a`.
    pub fn sublevel(&self, a: &Q) -> CellSet {
        self.select(|d, i| self.max_height[d][i] <= *a)
    }

    /// Cells with every vertex at height `≥ b`.
    pub fn superlevel(&self, b: &Q) -> CellSet {
        self.select(|d, i| self.min_height[d][i] >= *b)
    }

    /// Cells lying within one simplex span of the lower cut; every cover
    /// simplex that leaves the window downwards meets the window here.
    pub fn bottom(&self) -> CellSet {
        if !self.is_periodic() {
            return self.empty();
        }
        let t = &self.below + &self.span;
        self.sublevel(&t)
    }

    pub fn top(&self) -> CellSet {
        if !self.is_periodic() {
            return self.empty();
        }
        let t = &self.above - &self.span;
        self.superlevel(&t)
    }

    /// Deck translation of a cell by `k` sheets, if it stays in the window.
    pub fn translate(&self, d: usize, i: usize, k: i64) -> Option<usize> {
        let (s, sheet) = self.cells[d][i];
        self.cell_index(d, s, sheet + k)
    }

    /// Distinct vertex heights in the window, sorted.
    pub fn vertex_heights(&self) -> Vec<Q> {
        let mut v = self.max_height[0].clone();
        v.sort();
        v.dedup();
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covercomplex::complex::SimplicialComplex;
    use crate::covercomplex::form::{validate, OneForm};

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    fn fix_c() -> CoverData {
        let c = SimplicialComplex::new(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let f = OneForm::from_oriented(&c, &[((0, 1), q(1, 3)), ((1, 2), q(1, 3)), ((2, 0), q(1, 3))]).unwrap();
        validate(&c, &f).unwrap()
    }

    #[test]
    fn circle_cover_is_a_path() {
        let w = Window::new(&fix_c(), 0, 2).unwrap();
        assert_eq!(w.count(0), 9);
        // Edges v2(k) → v0(k+1) cross sheets, so only two of the three
        // copies of that edge fit.
        assert_eq!(w.count(1), 8);
        let mut hs = w.vertex_heights();
        hs.sort();
        let expect: Vec<Q> = (0..9).map(|i| q(i, 3)).collect();
        assert_eq!(hs, expect);
    }

    #[test]
    fn one_sheet_is_too_small() {
        assert_eq!(Window::new(&fix_c(), 0, 0).unwrap_err(), CoverError::WindowTooSmall);
    }

    #[test]
    fn sublevels_grow_and_translation_shifts_heights() {
        let w = Window::with_sheets(&fix_c(), 4).unwrap();
        let a = w.sublevel(&q(0, 1));
        let b = w.sublevel(&q(1, 2));
        assert!(a.is_subset_of(&b));
        for i in 0..w.count(1) {
            if let Some(j) = w.translate(1, i, 1) {
                assert_eq!(w.max_height(1, j), &(w.max_height(1, i) + q(1, 1)));
            }
        }
        assert_eq!(w.sublevel(&q(-100, 1)).count(), 0);
        assert_eq!(w.sublevel(&q(100, 1)), w.full());
    }
}
