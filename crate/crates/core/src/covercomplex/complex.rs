//! Finite abstract simplicial complexes with sorted vertex tuples.

use std::collections::HashMap;

use super::CoverError;

/// Simplices are stored per dimension as strictly increasing vertex lists;
/// the orientation of a simplex is the one given by that order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    n_vertices: usize,
    simplices: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

impl SimplicialComplex {
    /// Build from simplices of any dimension (vertex lists in any order).
    /// Every face of every simplex must be listed.
    pub fn new(n_vertices: usize, simplices: Vec<Vec<usize>>) -> Result<Self, CoverError> {
        if n_vertices == 0 {
            return Err(CoverError::EmptyComplex);
        }
        let mut by_dim: Vec<Vec<Vec<usize>>> = vec![(0..n_vertices).map(|v| vec![v]).collect()];
        for mut s in simplices {
            s.sort_unstable();
            if s.is_empty() || s.windows(2).any(|w| w[0] == w[1]) {
                return Err(CoverError::BadInput(format!("degenerate simplex {s:?}")));
            }
            if s.iter().any(|&v| v >= n_vertices) {
                return Err(CoverError::BadInput(format!("unknown vertex in {s:?}")));
            }
            let d = s.len() - 1;
            if d == 0 {
                continue;
            }
            while by_dim.len() <= d {
                by_dim.push(Vec::new());
            }
            by_dim[d].push(s);
        }
        for level in by_dim.iter_mut() {
            level.sort();
            level.dedup();
        }
        while by_dim.last().is_some_and(|l| l.is_empty()) {
            by_dim.pop();
        }
        let index: Vec<HashMap<Vec<usize>, usize>> = by_dim
            .iter()
            .map(|l| l.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        let c = SimplicialComplex {
            n_vertices,
            simplices: by_dim,
            index,
        };
        for d in 1..=c.dim() {
            for s in &c.simplices[d] {
                for j in 0..=d {
                    let face = face_of(s, j);
                    if c.index_of(&face).is_none() {
                        return Err(CoverError::MissingFace(face));
                    }
                }
            }
        }
        Ok(c)
    }

    /// Build from maximal simplices, adding all their faces.
    pub fn from_facets(n_vertices: usize, facets: &[Vec<usize>]) -> Result<Self, CoverError> {
        let mut all = std::collections::BTreeSet::new();
        for f in facets {
            let mut f = f.clone();
            f.sort_unstable();
            let n = f.len();
            if n > 20 {
                return Err(CoverError::BadInput(format!("simplex {f:?} is too large")));
            }
            for mask in 1u32..(1 << n) {
                all.insert(
                    (0..n)
                        .filter(|i| mask & (1 << i) != 0)
                        .map(|i| f[i])
                        .collect::<Vec<_>>(),
                );
            }
        }
        Self::new(n_vertices, all.into_iter().collect())
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    /// Top dimension.
    pub fn dim(&self) -> usize {
        self.simplices.len() - 1
    }

    pub fn simplices(&self, d: usize) -> &[Vec<usize>] {
        self.simplices.get(d).map_or(&[], |v| v.as_slice())
    }

    pub fn count(&self, d: usize) -> usize {
        self.simplices(d).len()
    }

    pub fn index_of(&self, s: &[usize]) -> Option<usize> {
        let d = s.len().checked_sub(1)?;
        self.index.get(d)?.get(s).copied()
    }

    /// Indices of the codimension-one faces of simplex `i` in dimension `d`,
    /// in the order `τ_0, …, τ_d` (`τ_j` omits the `j`-th vertex).
    pub fn faces(&self, d: usize, i: usize) -> Vec<usize> {
        let s = &self.simplices[d][i];
        (0..=d)
            .map(|j| self.index_of(&face_of(s, j)).expect("faces are present"))
            .collect()
    }

    /// Cofaces of each `(n−1)`-simplex among the `n`-simplices.
    pub fn coface_counts(&self, d: usize) -> Vec<usize> {
        let mut counts = vec![0; self.count(d)];
        if d < self.dim() {
            for i in 0..self.count(d + 1) {
                for f in self.faces(d + 1, i) {
                    counts[f] += 1;
                }
            }
        }
        counts
    }

    /// The link of a vertex as a list of simplices on the other vertices.
    pub fn link(&self, v: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for d in 1..=self.dim() {
            for s in &self.simplices[d] {
                if let Ok(pos) = s.binary_search(&v) {
                    let mut rest = s.clone();
                    rest.remove(pos);
                    out.push(rest);
                }
            }
        }
        out
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        self.simplices(1)
    }
}

pub(crate) fn face_of(s: &[usize], j: usize) -> Vec<usize> {
    s.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, &v)| v).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn missing_faces_are_rejected() {
        let err = SimplicialComplex::new(3, vec![vec![0, 1, 2], vec![0, 1], vec![1, 2]]).unwrap_err();
        assert_eq!(err, CoverError::MissingFace(vec![0, 2]));
    }

    #[test]
    fn faces_are_indexed_in_vertex_order() {
        let c = SimplicialComplex::new(3, vec![vec![2, 0, 1], vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        assert_eq!(c.dim(), 2);
        let faces = c.faces(2, 0);
        let named: Vec<_> = faces.iter().map(|&i| c.simplices(1)[i].clone()).collect();
        assert_eq!(named, vec![vec![1, 2], vec![0, 2], vec![0, 1]]);
        assert_eq!(c.coface_counts(1), vec![1, 1, 1]);
    }

    #[test]
    fn empty_complex_is_rejected() {
        assert_eq!(SimplicialComplex::new(0, vec![]).unwrap_err(), CoverError::EmptyComplex);
    }
}
