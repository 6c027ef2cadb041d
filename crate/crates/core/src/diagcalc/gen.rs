//! Random inputs for the diagram-calculus property checks.

use rand::Rng;

use crate::fieldlin::{AmbientSpace, Field, LinMap};

use super::exact::{FactorAt, Ladder};
use super::omega::TripleComposite;

pub fn random_elem<F: Field, R: Rng>(f: &F, rng: &mut R) -> F::Elem {
    f.from_i64(rng.gen_range(-3..=3))
}

fn dense<F: Field, R: Rng>(f: &F, rng: &mut R, rows: usize, cols: usize) -> Vec<Vec<F::Elem>> {
    (0..rows)
        .map(|_| (0..cols).map(|_| random_elem(f, rng)).collect())
        .collect()
}

/// A random map whose rank is biased towards every value in `0..=min dim`.
pub fn random_map<F: Field, R: Rng>(f: &F, rng: &mut R, dom: AmbientSpace, cod: AmbientSpace) -> LinMap<F> {
    let r = rng.gen_range(0..=dom.dim().min(cod.dim()));
    let mid = AmbientSpace::new(r);
    let left = LinMap::from_rows_between(f.clone(), mid, cod, &dense(f, rng, cod.dim(), r));
    let right = LinMap::from_rows_between(f.clone(), dom, mid, &dense(f, rng, r, dom.dim()));
    left.compose(&right).expect("composable")
}

/// A random isomorphism `dom → cod` (equal dimensions).
pub fn random_iso<F: Field, R: Rng>(f: &F, rng: &mut R, dom: AmbientSpace, cod: AmbientSpace) -> LinMap<F> {
    assert_eq!(dom.dim(), cod.dim());
    loop {
        let m = LinMap::from_rows_between(f.clone(), dom, cod, &dense(f, rng, cod.dim(), dom.dim()));
        if m.is_isomorphism() {
            return m;
        }
    }
}

fn spaces<R: Rng>(rng: &mut R, count: usize, max_dim: usize) -> Vec<AmbientSpace> {
    (0..count)
        .map(|_| AmbientSpace::new(rng.gen_range(0..=max_dim)))
        .collect()
}

pub fn random_triple<F: Field, R: Rng>(f: &F, rng: &mut R, max_dim: usize) -> TripleComposite<F> {
    let s = spaces(rng, 4, max_dim);
    TripleComposite::new(
        random_map(f, rng, s[0], s[1]),
        random_map(f, rng, s[1], s[2]),
        random_map(f, rng, s[2], s[3]),
    )
    .expect("composable")
}

/// A random triple whose chosen arrow is the product `f2 · f1` of two
/// random maps through an intermediate space.
pub fn random_factorization<F: Field, R: Rng>(
    f: &F,
    rng: &mut R,
    max_dim: usize,
    at: FactorAt,
) -> (TripleComposite<F>, LinMap<F>, LinMap<F>) {
    let s = spaces(rng, 5, max_dim);
    let k = match at {
        FactorAt::Alpha => 0,
        FactorAt::Beta => 1,
        FactorAt::Gamma => 2,
    };
    let f1 = random_map(f, rng, s[k], s[4]);
    let f2 = random_map(f, rng, s[4], s[k + 1]);
    let mut maps: Vec<LinMap<F>> = (0..3)
        .map(|j| {
            if j == k {
                f2.compose(&f1).expect("composable")
            } else {
                random_map(f, rng, s[j], s[j + 1])
            }
        })
        .collect();
    let gamma = maps.pop().expect("three maps");
    let beta = maps.pop().expect("three maps");
    let alpha = maps.pop().expect("three maps");
    (TripleComposite::new(alpha, beta, gamma).expect("composable"), f1, f2)
}

/// A ladder with exact columns: the bottom row lives on `Y ⊕ N`, the top on
/// `Y ⊕ M`, with random coupling terms and random changes of basis.
pub fn random_ladder<F: Field, R: Rng>(f: &F, rng: &mut R, max_dim: usize) -> Ladder<F> {
    let y: Vec<usize> = (0..4).map(|_| rng.gen_range(0..=max_dim)).collect();
    let n = rng.gen_range(0..=max_dim.min(3));
    let m = rng.gen_range(0..=max_dim.min(3));
    let n_space = AmbientSpace::new(n);
    let m_space = AmbientSpace::new(m);
    let bottom_sp: Vec<_> = y.iter().map(|&d| AmbientSpace::new(d + n)).collect();
    let top_sp: Vec<_> = y.iter().map(|&d| AmbientSpace::new(d + m)).collect();
    let rho: Vec<_> = (0..3).map(|k| dense(f, rng, y[k + 1], y[k])).collect();
    let phi: Vec<_> = (0..3).map(|k| dense(f, rng, n, y[k])).collect();
    let psi: Vec<_> = (0..3).map(|k| dense(f, rng, y[k + 1], m)).collect();
    let one = |i: usize, j: usize| if i == j { f.one() } else { f.zero() };

    let build = |dom: AmbientSpace, cod: AmbientSpace, entry: &dyn Fn(usize, usize) -> F::Elem| {
        let rows: Vec<Vec<F::Elem>> = (0..cod.dim())
            .map(|i| (0..dom.dim()).map(|j| entry(i, j)).collect())
            .collect();
        LinMap::from_rows_between(f.clone(), dom, cod, &rows)
    };

    let mut bottom = Vec::new();
    let mut top = Vec::new();
    for k in 0..3 {
        let (yk, yk1) = (y[k], y[k + 1]);
        bottom.push(build(bottom_sp[k], bottom_sp[k + 1], &|i, j| match (i < yk1, j < yk) {
            (true, true) => rho[k][i][j].clone(),
            (true, false) => f.zero(),
            (false, true) => phi[k][i - yk1][j].clone(),
            (false, false) => one(i - yk1, j - yk),
        }));
        top.push(build(top_sp[k], top_sp[k + 1], &|i, j| match (i < yk1, j < yk) {
            (true, true) => rho[k][i][j].clone(),
            (true, false) => psi[k][i][j - yk].clone(),
            (false, true) => f.zero(),
            (false, false) => one(i - yk1, j - yk),
        }));
    }
    let mut down = Vec::new();
    let mut theta = Vec::new();
    let mut lambda = Vec::new();
    for k in 0..4 {
        let yk = y[k];
        down.push(build(bottom_sp[k], top_sp[k], &|i, j| {
            if i < yk && j < yk {
                one(i, j)
            } else {
                f.zero()
            }
        }));
        theta.push(build(n_space, bottom_sp[k], &|i, j| {
            if i >= yk {
                one(i - yk, j)
            } else {
                f.zero()
            }
        }));
        lambda.push(build(top_sp[k], m_space, &|i, j| {
            if j >= yk {
                one(i, j - yk)
            } else {
                f.zero()
            }
        }));
    }

    // Conjugate every row space by a random isomorphism.
    let g_bottom: Vec<_> = bottom_sp
        .iter()
        .map(|&s| random_iso(f, rng, s, AmbientSpace::new(s.dim())))
        .collect();
    let g_top: Vec<_> = top_sp
        .iter()
        .map(|&s| random_iso(f, rng, s, AmbientSpace::new(s.dim())))
        .collect();
    let inv_b: Vec<_> = g_bottom.iter().map(|g| g.inverse().expect("iso")).collect();
    let inv_t: Vec<_> = g_top.iter().map(|g| g.inverse().expect("iso")).collect();
    let conj = |g: &LinMap<F>, m: &LinMap<F>, h_inv: &LinMap<F>| {
        g.compose(&m.compose(h_inv).expect("composable")).expect("composable")
    };
    let bottom: Vec<_> = (0..3).map(|k| conj(&g_bottom[k + 1], &bottom[k], &inv_b[k])).collect();
    let top: Vec<_> = (0..3).map(|k| conj(&g_top[k + 1], &top[k], &inv_t[k])).collect();
    let down: Vec<_> = (0..4).map(|k| conj(&g_top[k], &down[k], &inv_b[k])).collect();
    let theta: Vec<_> = (0..4)
        .map(|k| g_bottom[k].compose(&theta[k]).expect("composable"))
        .collect();
    let lambda: Vec<_> = (0..4)
        .map(|k| lambda[k].compose(&inv_t[k]).expect("composable"))
        .collect();

    let triple = |v: Vec<LinMap<F>>| {
        let mut it = v.into_iter();
        TripleComposite::new(it.next().unwrap(), it.next().unwrap(), it.next().unwrap()).expect("composable")
    };
    let arr = |v: Vec<LinMap<F>>| -> [LinMap<F>; 4] { v.try_into().expect("four maps") };
    Ladder {
        top: triple(top),
        bottom: triple(bottom),
        down: arr(down),
        theta: arr(theta),
        lambda: arr(lambda),
    }
}
