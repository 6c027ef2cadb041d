//! Sparse coordinate vectors: entries sorted by index, no explicit zeros.

use super::Field;

pub type SparseVec<E> = Vec<(usize, E)>;

/// Build a sparse vector from a dense slice, dropping zeros.
pub fn from_dense<F: Field>(field: &F, dense: &[F::Elem]) -> SparseVec<F::Elem> {
    dense
        .iter()
        .enumerate()
        .filter(|(_, x)| !field.is_zero(x))
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn to_dense<F: Field>(field: &F, v: &SparseVec<F::Elem>, dim: usize) -> Vec<F::Elem> {
    let mut out = vec![field.zero(); dim];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// Build a sparse vector from unsorted `(index, value)` pairs, summing repeats.
pub fn from_pairs<F: Field>(field: &F, mut pairs: Vec<(usize, F::Elem)>) -> SparseVec<F::Elem> {
    pairs.sort_by_key(|(i, _)| *i);
    let mut out: SparseVec<F::Elem> = Vec::with_capacity(pairs.len());
    for (i, x) in pairs {
        match out.last_mut() {
            Some((j, y)) if *j == i => *y = field.add(y, &x),
            _ => out.push((i, x)),
        }
    }
    out.retain(|(_, x)| !field.is_zero(x));
    out
}

pub fn get<F: Field>(field: &F, v: &SparseVec<F::Elem>, idx: usize) -> F::Elem {
    match v.binary_search_by_key(&idx, |(i, _)| *i) {
        Ok(k) => v[k].1.clone(),
        Err(_) => field.zero(),
    }
}

pub fn unit<F: Field>(field: &F, idx: usize) -> SparseVec<F::Elem> {
    vec![(idx, field.one())]
}

pub fn scale<F: Field>(field: &F, c: &F::Elem, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
    if field.is_zero(c) {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, field.mul(c, x))).collect()
}

/// `x + c·y`.
pub fn axpy<F: Field>(field: &F, x: &SparseVec<F::Elem>, c: &F::Elem, y: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
    if field.is_zero(c) {
        return x.clone();
    }
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut a, mut b) = (0, 0);
    while a < x.len() || b < y.len() {
        if b == y.len() || (a < x.len() && x[a].0 < y[b].0) {
            out.push(x[a].clone());
            a += 1;
        } else if a == x.len() || y[b].0 < x[a].0 {
            out.push((y[b].0, field.mul(c, &y[b].1)));
            b += 1;
        } else {
            let s = field.add(&x[a].1, &field.mul(c, &y[b].1));
            if !field.is_zero(&s) {
                out.push((x[a].0, s));
            }
            a += 1;
            b += 1;
        }
    }
    out
}

pub fn add<F: Field>(field: &F, x: &SparseVec<F::Elem>, y: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
    axpy(field, x, &field.one(), y)
}

pub fn sub<F: Field>(field: &F, x: &SparseVec<F::Elem>, y: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
    axpy(field, x, &field.neg(&field.one()), y)
}

/// Apply an index relabelling; entries mapped to `None` are dropped.
pub fn reindex<F: Field>(
    field: &F,
    v: &SparseVec<F::Elem>,
    map: impl Fn(usize) -> Option<usize>,
) -> SparseVec<F::Elem> {
    from_pairs(
        field,
        v.iter().filter_map(|(i, x)| map(*i).map(|j| (j, x.clone()))).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fieldlin::PrimeField;

    #[test]
    fn axpy_cancels_entries() {
        let f = PrimeField::new(3).unwrap();
        let x = vec![(0, 1), (2, 2)];
        let y = vec![(2, 1), (5, 1)];
        assert_eq!(axpy(&f, &x, &1, &y), vec![(0, 1), (5, 1)]);
        assert_eq!(sub(&f, &x, &x), vec![]);
    }

    #[test]
    fn pairs_are_merged() {
        let f = PrimeField::new(2).unwrap();
        assert_eq!(from_pairs(&f, vec![(3, 1), (1, 1), (3, 1)]), vec![(1, 1)]);
    }
}
