//! Seeded random complexes with exact or circle-valued forms.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::covercomplex::{validate, CoverData, OneForm, SimplicialComplex, Q};

use super::fixtures::exact_form;

/// Largest number of simplices in a generated complex.
pub const MAX_SIMPLICES: usize = 200;

fn total_simplices(c: &SimplicialComplex) -> usize {
    (0..=c.dim()).map(|d| c.count(d)).sum()
}

fn small_height<R: Rng>(rng: &mut R, den: i64) -> Q {
    Q::new(rng.gen_range(0..3 * den).into(), den.into())
}

/// A complex on up to eight vertices built from random triangles and
/// edges, with an exact form of random heights (ties allowed).
pub fn random_exact<R: Rng>(rng: &mut R) -> CoverData {
    loop {
        let n = rng.gen_range(3..=8);
        let mut facets: BTreeSet<Vec<usize>> = BTreeSet::new();
        let verts: Vec<usize> = (0..n).collect();
        for _ in 0..rng.gen_range(1..=2 * n) {
            let k = if rng.gen_bool(0.6) { 3 } else { 2 };
            let mut s: Vec<usize> = verts.choose_multiple(rng, k).copied().collect();
            s.sort();
            facets.insert(s);
        }
        for v in 0..n {
            if !facets.iter().any(|f| f.contains(&v)) {
                facets.insert(vec![v]);
            }
        }
        let facets: Vec<Vec<usize>> = facets.into_iter().collect();
        let c = SimplicialComplex::from_facets(n, &facets).expect("faces are closed up");
        if total_simplices(&c) > MAX_SIMPLICES {
            continue;
        }
        let heights: Vec<Q> = (0..n).map(|_| small_height(rng, 4)).collect();
        return validate(&c, &exact_form(&c, &heights)).expect("exact forms are cocycles");
    }
}

/// A complex wrapped around a circle: each vertex sits at one of `m ≥ 3`
/// positions and simplices only join equal or adjacent positions. The form
/// is `dh` plus `1/m` for each step forward, so the period is one.
pub fn random_circle<R: Rng>(rng: &mut R) -> CoverData {
    loop {
        let m = rng.gen_range(3..=5);
        let n = rng.gen_range(m..=m + 4);
        let mut pos: Vec<usize> = (0..n).map(|v| if v < m { v } else { rng.gen_range(0..m) }).collect();
        pos.shuffle(rng);
        let at = |j: usize| -> Vec<usize> { (0..n).filter(|&v| pos[v] == j % m).collect() };
        let mut facets: BTreeSet<Vec<usize>> = BTreeSet::new();
        // A loop through one vertex per position winds once around; every
        // other vertex hangs off a neighbour's loop vertex.
        let reps: Vec<usize> = (0..m)
            .map(|j| *at(j).choose(rng).expect("every position is used"))
            .collect();
        let edge = |u: usize, v: usize| if u < v { vec![u, v] } else { vec![v, u] };
        for j in 0..m {
            facets.insert(edge(reps[j], reps[(j + 1) % m]));
        }
        for v in 0..n {
            if !reps.contains(&v) {
                let j = (pos[v] + rng.gen_range(0..2)) % m;
                facets.insert(edge(v, reps[j]));
            }
        }
        for _ in 0..rng.gen_range(0..=2 * n) {
            let j = rng.gen_range(0..m);
            let mut pool = at(j);
            pool.extend(at(j + 1));
            let k = if rng.gen_bool(0.6) { 3 } else { 2 };
            if pool.len() < k {
                continue;
            }
            let mut s: Vec<usize> = pool.choose_multiple(rng, k).copied().collect();
            s.sort();
            facets.insert(s);
        }
        let facets: Vec<Vec<usize>> = facets.into_iter().collect();
        let c = SimplicialComplex::from_facets(n, &facets).expect("faces are closed up");
        if total_simplices(&c) > MAX_SIMPLICES {
            continue;
        }
        let den = 4 * m as i64;
        let h: Vec<Q> = (0..n)
            .map(|_| Q::new(rng.gen_range(0..den).into(), (4 * den).into()))
            .collect();
        let step = Q::new(1.into(), (m as i64).into());
        let values: Vec<((usize, usize), Q)> = c
            .edges()
            .iter()
            .map(|e| {
                let (u, v) = (e[0], e[1]);
                let winding = if pos[v] == (pos[u] + 1) % m {
                    step.clone()
                } else if pos[u] == (pos[v] + 1) % m {
                    -step.clone()
                } else {
                    Q::from_integer(0.into())
                };
                ((u, v), &h[v] - &h[u] + winding)
            })
            .collect();
        let form = OneForm::from_oriented(&c, &values).expect("every edge has a value");
        return validate(&c, &form).expect("the form is a cocycle");
    }
}

/// Alternate between the two generators.
pub fn random_instance<R: Rng>(rng: &mut R, periodic: bool) -> CoverData {
    if periodic {
        random_circle(rng)
    } else {
        random_exact(rng)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_instances_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for i in 0..40 {
            let d = random_instance(&mut rng, i % 2 == 1);
            assert!(total_simplices(&d.complex) <= MAX_SIMPLICES);
            if i % 2 == 1 {
                assert!(d.period.is_one(), "period {}", d.period);
            } else {
                assert!(!d.has_period());
            }
        }
    }

    #[test]
    fn seeds_are_reproducible() {
        let a = random_circle(&mut ChaCha8Rng::seed_from_u64(9));
        let b = random_circle(&mut ChaCha8Rng::seed_from_u64(9));
        assert_eq!(a.form, b.form);
    }
}
