//! Rank of the free part of `H_r(X̃)` over `κ[t, t⁻¹]`, from the boundary
//! matrices of the cover written with monomial entries.

use crate::covercomplex::CoverData;
use crate::fieldlin::Field;

/// A polynomial in `t`, coefficients from low to high degree, trimmed.
#[derive(Clone, Debug, PartialEq)]
struct Poly<E>(Vec<E>);

fn trim<F: Field>(f: &F, mut v: Vec<F::Elem>) -> Poly<F::Elem> {
    while v.last().is_some_and(|x| f.is_zero(x)) {
        v.pop();
    }
    Poly(v)
}

fn is_zero<E>(p: &Poly<E>) -> bool {
    p.0.is_empty()
}

fn mul<F: Field>(f: &F, x: &Poly<F::Elem>, y: &Poly<F::Elem>) -> Poly<F::Elem> {
    if is_zero(x) || is_zero(y) {
        return Poly(Vec::new());
    }
    let mut out = vec![f.zero(); x.0.len() + y.0.len() - 1];
    for (i, a) in x.0.iter().enumerate() {
        if f.is_zero(a) {
            continue;
        }
        for (j, b) in y.0.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(a, b));
        }
    }
    trim(f, out)
}

fn sub<F: Field>(f: &F, x: &Poly<F::Elem>, y: &Poly<F::Elem>) -> Poly<F::Elem> {
    let n = x.0.len().max(y.0.len());
    let out = (0..n)
        .map(|i| {
            let a = x.0.get(i).cloned().unwrap_or_else(|| f.zero());
            let b = y.0.get(i).cloned().unwrap_or_else(|| f.zero());
            f.sub(&a, &b)
        })
        .collect();
    trim(f, out)
}

/// Exact division; the Bareiss recurrence guarantees a zero remainder.
fn div_exact<F: Field>(f: &F, x: &Poly<F::Elem>, y: &Poly<F::Elem>) -> Poly<F::Elem> {
    let mut rem = x.0.clone();
    let dy = y.0.len() - 1;
    let lead = f.inv(&y.0[dy]);
    if rem.len() <= dy {
        debug_assert!(rem.iter().all(|c| f.is_zero(c)));
        return Poly(Vec::new());
    }
    let mut q = vec![f.zero(); rem.len() - dy];
    for i in (0..q.len()).rev() {
        let c = f.mul(&rem[i + dy], &lead);
        if f.is_zero(&c) {
            continue;
        }
        for (j, b) in y.0.iter().enumerate() {
            rem[i + j] = f.sub(&rem[i + j], &f.mul(&c, b));
        }
        q[i] = c;
    }
    debug_assert!(rem.iter().all(|c| f.is_zero(c)), "inexact Bareiss division");
    trim(f, q)
}

/// Rank over `κ(t)` by fraction-free elimination.
fn rank<F: Field>(f: &F, mut m: Vec<Vec<Poly<F::Elem>>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut prev = Poly(vec![f.one()]);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let t = sub(f, &mul(f, &m[r][c], &m[i][j]), &mul(f, &m[i][c], &m[r][j]));
                m[i][j] = div_exact(f, &t, &prev);
            }
            m[i][c] = Poly(Vec::new());
        }
        prev = m[r][c].clone();
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// `∂_d` of the cover as a matrix over `κ[t]`: the face `τ_j` of a simplex
/// enters with `(−1)^j`, and `τ_0` sits `offset(v0, v1)` sheets higher.
/// Columns are shifted by a unit so every exponent is non-negative.
fn boundary<F: Field>(f: &F, data: &CoverData, d: usize) -> Vec<Vec<Poly<F::Elem>>> {
    let c = &data.complex;
    let rows = c.count(d - 1);
    let mut m = vec![vec![Poly(Vec::new()); c.count(d)]; rows];
    for (s, simplex) in c.simplices(d).iter().enumerate() {
        let faces = c.faces(d, s);
        let shift0 = data.offsets[c.index_of(&[simplex[0], simplex[1]]).expect("edge")];
        let low = shift0.min(0);
        for (j, &face) in faces.iter().enumerate() {
            let e = if j == 0 { shift0 } else { 0 } - low;
            let mut coeffs = vec![f.zero(); e as usize + 1];
            coeffs[e as usize] = f.from_i64(if j % 2 == 0 { 1 } else { -1 });
            m[face][s] = Poly(coeffs);
        }
    }
    m
}

/// The Novikov–Betti number `β^N_r`: `n_r − rank ∂_r − rank ∂_{r+1}` over
/// `κ(t)`. Without a period every offset vanishes and this is `b_r`.
pub fn novikov_betti<F: Field>(field: &F, data: &CoverData, r: usize) -> usize {
    let c = &data.complex;
    if r > c.dim() {
        return 0;
    }
    let lower = if r == 0 {
        0
    } else {
        rank(field, boundary(field, data, r))
    };
    let upper = if r + 1 > c.dim() {
        0
    } else {
        rank(field, boundary(field, data, r + 1))
    };
    c.count(r) - lower - upper
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covercomplex::{validate, OneForm, SimplicialComplex, Q};
    use crate::fieldlin::{PrimeField, Rationals};

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    #[test]
    fn circle_cover_has_no_free_homology() {
        let c = SimplicialComplex::new(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let f = OneForm::from_oriented(&c, &[((0, 1), q(1, 3)), ((1, 2), q(1, 3)), ((2, 0), q(1, 3))]).unwrap();
        let d = validate(&c, &f).unwrap();
        let f2 = PrimeField::new(2).unwrap();
        assert_eq!(novikov_betti(&f2, &d, 0), 0);
        assert_eq!(novikov_betti(&f2, &d, 1), 0);
        let exact = OneForm::from_oriented(&c, &[((0, 1), q(1, 3)), ((1, 2), q(1, 3)), ((0, 2), q(2, 3))]).unwrap();
        let d = validate(&c, &exact).unwrap();
        assert_eq!(novikov_betti(&Rationals, &d, 0), 1);
        assert_eq!(novikov_betti(&Rationals, &d, 1), 1);
    }

    #[test]
    fn bareiss_matches_hand_rank() {
        let f = PrimeField::new(5).unwrap();
        // [[1, t], [t, t²]] has rank one; [[1, t], [1, 1]] rank two.
        let p = |v: Vec<u64>| trim(&f, v);
        let m = vec![vec![p(vec![1]), p(vec![0, 1])], vec![p(vec![0, 1]), p(vec![0, 0, 1])]];
        assert_eq!(rank(&f, m), 1);
        let m = vec![vec![p(vec![1]), p(vec![0, 1])], vec![p(vec![1]), p(vec![1])]];
        assert_eq!(rank(&f, m), 2);
    }
}
