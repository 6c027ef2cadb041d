//! Incremental row echelon forms with lowest-index pivots.

use super::sparse::{self, SparseVec};
use super::Field;

const NONE: usize = usize::MAX;

/// A set of vectors in echelon form: each has a distinct pivot (its lowest
/// nonzero index) normalized to one. Optionally every stored vector carries
/// a tag vector recording the combination of inserted inputs it came from.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    dim: usize,
    rows: Vec<SparseVec<F::Elem>>,
    tags: Vec<SparseVec<F::Elem>>,
    pivot_of: Vec<usize>,
    track: bool,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F, dim: usize) -> Self {
        Echelon {
            field,
            dim,
            rows: Vec::new(),
            tags: Vec::new(),
            pivot_of: vec![NONE; dim],
            track: false,
        }
    }

    /// Same as [`Echelon::new`] but keeps the input combinations.
    pub fn tracking(field: F, dim: usize) -> Self {
        let mut e = Self::new(field, dim);
        e.track = true;
        e
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec<F::Elem>] {
        &self.rows
    }

    pub fn tags(&self) -> &[SparseVec<F::Elem>] {
        &self.tags
    }

    pub fn pivot(&self, row: usize) -> usize {
        self.rows[row][0].0
    }

    pub fn row_with_pivot(&self, idx: usize) -> Option<usize> {
        match self.pivot_of.get(idx) {
            Some(&r) if r != NONE => Some(r),
            _ => None,
        }
    }

    /// Eliminate every pivot position of `v` at or after `from`, sweeping
    /// left to right. Returns the remainder and the updated tag.
    fn sweep(
        &self,
        mut v: SparseVec<F::Elem>,
        mut tag: SparseVec<F::Elem>,
        from: usize,
        skip: usize,
    ) -> (SparseVec<F::Elem>, SparseVec<F::Elem>) {
        let f = &self.field;
        let mut cursor = from;
        loop {
            let start = v.partition_point(|(i, _)| *i < cursor);
            let hit = v[start..]
                .iter()
                .find(|(i, _)| {
                    let r = self.pivot_of[*i];
                    r != NONE && r != skip
                })
                .cloned();
            let Some((i, c)) = hit else { break };
            let r = self.pivot_of[i];
            let neg = f.neg(&c);
            v = sparse::axpy(f, &v, &neg, &self.rows[r]);
            if self.track {
                tag = sparse::axpy(f, &tag, &neg, &self.tags[r]);
            }
            cursor = i + 1;
        }
        (v, tag)
    }

    /// Reduce `v` against the stored rows.
    pub fn reduce(&self, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        self.sweep(v.clone(), Vec::new(), 0, NONE).0
    }

    /// Reduce and also report the coefficients used: `v = rem + Σ coeff_r · row_r`.
    pub fn reduce_with_coeffs(&self, v: &SparseVec<F::Elem>) -> (SparseVec<F::Elem>, Vec<(usize, F::Elem)>) {
        let f = &self.field;
        let mut v = v.clone();
        let mut coeffs = Vec::new();
        let mut cursor = 0;
        loop {
            let start = v.partition_point(|(i, _)| *i < cursor);
            let hit = v[start..].iter().find(|(i, _)| self.pivot_of[*i] != NONE).cloned();
            let Some((i, c)) = hit else { break };
            let r = self.pivot_of[i];
            v = sparse::axpy(f, &v, &f.neg(&c), &self.rows[r]);
            coeffs.push((r, c));
            cursor = i + 1;
        }
        (v, coeffs)
    }

    pub fn contains(&self, v: &SparseVec<F::Elem>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Insert a vector. Returns `Ok(row)` when it enlarged the span, and
    /// `Err(relation)` with the reduced tag when it was dependent (the tag
    /// then records a vanishing combination of inputs).
    pub fn insert_tagged(
        &mut self,
        v: SparseVec<F::Elem>,
        tag: SparseVec<F::Elem>,
    ) -> Result<usize, SparseVec<F::Elem>> {
        let (v, tag) = self.sweep(v, tag, 0, NONE);
        if v.is_empty() {
            return Err(tag);
        }
        let f = &self.field;
        let inv = f.inv(&v[0].1);
        let v = sparse::scale(f, &inv, &v);
        let tag = if self.track { sparse::scale(f, &inv, &tag) } else { tag };
        let row = self.rows.len();
        self.pivot_of[v[0].0] = row;
        self.rows.push(v);
        self.tags.push(tag);
        Ok(row)
    }

    pub fn insert(&mut self, v: SparseVec<F::Elem>) -> bool {
        self.insert_tagged(v, Vec::new()).is_ok()
    }

    /// Fully reduce every row (zero at all other pivots) and return the
    /// rows sorted by pivot, i.e. the reduced row echelon basis.
    pub fn into_rref(mut self) -> Vec<SparseVec<F::Elem>> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| std::cmp::Reverse(self.rows[r][0].0));
        for r in order {
            let row = std::mem::take(&mut self.rows[r]);
            let p = row[0].0;
            let (row, _) = self.sweep(row, Vec::new(), p + 1, r);
            self.rows[r] = row;
        }
        let mut rows = self.rows;
        rows.sort_by_key(|v| v[0].0);
        rows
    }
}
