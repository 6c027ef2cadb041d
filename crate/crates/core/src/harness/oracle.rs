//! An independent check for exact forms: boundary-matrix reduction of the
//! lower-star filtration on the base complex, plus ranks of cycle spaces,
//! all with plain dense vectors.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::config::{configurations, Variant};
use crate::covercomplex::{CoverData, SimplicialComplex, Q};
use crate::fieldlin::Field;

use super::{HarnessError, PlanePoint, Verdict};

type Dense<E> = Vec<E>;

fn max_height(s: &[usize], h: &[Q]) -> Q {
    s.iter().map(|&v| h[v].clone()).max().expect("nonempty simplex")
}

fn min_height(s: &[usize], h: &[Q]) -> Q {
    s.iter().map(|&v| h[v].clone()).min().expect("nonempty simplex")
}

/// Finite bars `[birth, death)` with `birth < death` of the sublevel
/// filtration in degree `r`, by the standard column reduction.
fn finite_bars<F: Field>(field: &F, c: &SimplicialComplex, h: &[Q], r: usize) -> BTreeMap<(Q, Q), usize> {
    let mut order: Vec<(Q, usize, usize)> = Vec::new();
    for d in 0..=c.dim() {
        for i in 0..c.count(d) {
            order.push((max_height(&c.simplices(d)[i], h), d, i));
        }
    }
    order.sort();
    let mut pos: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (k, (_, d, i)) in order.iter().enumerate() {
        pos.insert((*d, *i), k);
    }
    let n = order.len();
    // Columns as sparse maps row → coefficient, reduced left to right.
    let mut cols: Vec<BTreeMap<usize, F::Elem>> = Vec::with_capacity(n);
    for (_, d, i) in &order {
        let mut col = BTreeMap::new();
        if *d > 0 {
            for (j, f) in c.faces(*d, *i).into_iter().enumerate() {
                let sign = field.from_i64(if j % 2 == 0 { 1 } else { -1 });
                col.insert(pos[&(*d - 1, f)], sign);
            }
        }
        cols.push(col);
    }
    let mut low_owner: BTreeMap<usize, usize> = BTreeMap::new();
    let mut bars = BTreeMap::new();
    for j in 0..n {
        loop {
            let Some((&low, x)) = cols[j].iter().next_back() else {
                break;
            };
            let Some(&k) = low_owner.get(&low) else {
                low_owner.insert(low, j);
                break;
            };
            let factor = field.div(x, &cols[k][&low]);
            let pivot = cols[k].clone();
            for (row, y) in pivot {
                let v = field.sub(cols[j].get(&row).unwrap_or(&field.zero()), &field.mul(&factor, &y));
                if field.is_zero(&v) {
                    cols[j].remove(&row);
                } else {
                    cols[j].insert(row, v);
                }
            }
        }
        if let Some((&low, _)) = cols[j].iter().next_back() {
            let (birth, d, _) = &order[low];
            let death = &order[j].0;
            if *d == r && birth < death {
                *bars.entry((birth.clone(), death.clone())).or_insert(0) += 1;
            }
        }
    }
    bars
}

/// Row-reduced basis kept with pivot columns, for ranks and normal forms.
struct Reduced<F: Field> {
    field: F,
    rows: Vec<(usize, Dense<F::Elem>)>,
}

impl<F: Field> Reduced<F> {
    fn new(field: F) -> Self {
        Reduced {
            field,
            rows: Vec::new(),
        }
    }

    fn normal_form(&self, v: &Dense<F::Elem>) -> Dense<F::Elem> {
        let f = &self.field;
        let mut v = v.clone();
        for (p, row) in &self.rows {
            if !f.is_zero(&v[*p]) {
                let c = v[*p].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    *x = f.sub(x, &f.mul(&c, y));
                }
            }
        }
        v
    }

    /// Insert `v`; returns whether the span grew.
    fn insert(&mut self, v: &Dense<F::Elem>) -> bool {
        let f = self.field.clone();
        let mut v = self.normal_form(v);
        let Some(p) = v.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&v[p]);
        for x in v.iter_mut() {
            *x = f.mul(x, &inv);
        }
        for (_, row) in self.rows.iter_mut() {
            if !f.is_zero(&row[p]) {
                let c = row[p].clone();
                for (x, y) in row.iter_mut().zip(&v) {
                    *x = f.sub(x, &f.mul(&c, y));
                }
            }
        }
        self.rows.push((p, v));
        true
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

fn boundary_matrix<F: Field>(field: &F, c: &SimplicialComplex, d: usize) -> Vec<Dense<F::Elem>> {
    (0..c.count(d))
        .map(|i| {
            let mut col = vec![field.zero(); c.count(d - 1)];
            for (j, f) in c.faces(d, i).into_iter().enumerate() {
                col[f] = field.from_i64(if j % 2 == 0 { 1 } else { -1 });
            }
            col
        })
        .collect()
}

/// Cycles among the chains on the listed `r`-simplices.
fn cycles<F: Field>(field: &F, c: &SimplicialComplex, r: usize, keep: &[usize]) -> Vec<Dense<F::Elem>> {
    let n = c.count(r);
    let unit = |i: usize| {
        let mut v = vec![field.zero(); n];
        v[i] = field.one();
        v
    };
    if r == 0 {
        return keep.iter().map(|&i| unit(i)).collect();
    }
    let bd = boundary_matrix(field, c, r);
    // Eliminate on [∂ | chain] and keep the chains whose boundary part dies.
    let m = c.count(r - 1);
    let mut ech = Reduced::new(field.clone());
    let mut out = Vec::new();
    for &i in keep {
        let mut v = bd[i].clone();
        v.extend(unit(i));
        let w = ech.normal_form(&v);
        if w[..m].iter().all(|x| field.is_zero(x)) {
            out.push(w[m..].to_vec());
        } else {
            ech.insert(&v);
        }
    }
    out
}

/// δ and γ of an exact form in degree `r`, computed independently.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleConfigs {
    pub delta: Vec<((Q, Q), usize)>,
    pub gamma: Vec<((Q, Q), usize)>,
}

/// γ from finite sublevel bars; δ by inclusion–exclusion of
/// `dim(𝕀_a ∩ 𝕀^b)` over consecutive critical values.
pub fn oracle_configurations<F: Field>(field: &F, data: &CoverData, r: usize) -> Result<OracleConfigs, HarnessError> {
    if data.has_period() {
        return Err(HarnessError::BadInput("the oracle needs an exact form".into()));
    }
    let c = &data.complex;
    let h = &data.heights;
    let gamma = finite_bars(field, c, h, r).into_iter().collect();
    if r > c.dim() {
        return Ok(OracleConfigs {
            delta: Vec::new(),
            gamma,
        });
    }
    let mut boundaries = Reduced::new(field.clone());
    if r < c.dim() {
        for col in boundary_matrix(field, c, r + 1) {
            boundaries.insert(&col);
        }
    }
    let crit = &data.critical.values;
    let simplices = c.simplices(r);
    // Images of sublevel and superlevel cycles as normal forms modulo boundaries.
    let image = |keep: Vec<usize>| -> Vec<Dense<F::Elem>> {
        let mut r_img = Reduced::new(field.clone());
        for z in cycles(field, c, r, &keep) {
            r_img.insert(&boundaries.normal_form(&z));
        }
        r_img.rows.into_iter().map(|(_, v)| v).collect()
    };
    let subs: Vec<Vec<Dense<F::Elem>>> = crit
        .iter()
        .map(|a| {
            image(
                (0..simplices.len())
                    .filter(|&i| max_height(&simplices[i], h) <= *a)
                    .collect(),
            )
        })
        .collect();
    let sups: Vec<Vec<Dense<F::Elem>>> = crit
        .iter()
        .map(|b| {
            image(
                (0..simplices.len())
                    .filter(|&i| min_height(&simplices[i], h) >= *b)
                    .collect(),
            )
        })
        .collect();
    let m = crit.len();
    // f[i][j] = dim(𝕀_{c_i} ∩ 𝕀^{c_j}); index m stands for −∞ (sub) or +∞ (sup).
    let mut f = vec![vec![0usize; m + 1]; m + 1];
    for i in 0..m {
        for j in 0..m {
            let mut sum = Reduced::new(field.clone());
            for v in subs[i].iter().chain(&sups[j]) {
                sum.insert(v);
            }
            f[i][j] = subs[i].len() + sups[j].len() - sum.rank();
        }
    }
    let prev = |i: usize| if i == 0 { m } else { i - 1 };
    let next = |j: usize| if j + 1 == m { m } else { j + 1 };
    let mut delta = Vec::new();
    for i in 0..m {
        for j in 0..m {
            let v = f[i][j] as i64 - f[prev(i)][j] as i64 - f[i][next(j)] as i64 + f[prev(i)][next(j)] as i64;
            if v < 0 {
                return Err(HarnessError::BadInput("negative inclusion–exclusion count".into()));
            }
            if v > 0 {
                delta.push(((crit[i].clone(), crit[j].clone()), v as usize));
            }
        }
    }
    Ok(OracleConfigs { delta, gamma })
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub r: usize,
    pub delta_oracle: Vec<PlanePoint>,
    pub delta_engine: Vec<PlanePoint>,
    pub gamma_oracle: Vec<PlanePoint>,
    pub gamma_engine: Vec<PlanePoint>,
}

impl Verdict for OracleReport {
    fn passed(&self) -> bool {
        self.delta_oracle == self.delta_engine && self.gamma_oracle == self.gamma_engine
    }
}

fn plane(points: &[((Q, Q), usize)]) -> Vec<PlanePoint> {
    let mut v: Vec<_> = points.to_vec();
    v.sort();
    v.iter()
        .map(|((a, b), m)| {
            (
                crate::covercomplex::format_rational(a),
                crate::covercomplex::format_rational(b),
                *m,
            )
        })
        .collect()
}

/// Compare the engine's standard δ_r and γ_r with the oracle.
pub fn persistence_oracle<F: Field>(field: &F, data: &CoverData, r: usize) -> Result<OracleReport, HarnessError> {
    let oracle = oracle_configurations(field, data, r)?;
    let res = configurations(field, data, 1, &[Variant::Standard], &[r])?;
    let configs = &res[0].configs;
    Ok(OracleReport {
        r,
        delta_oracle: plane(&oracle.delta),
        delta_engine: plane(&configs.delta.points),
        gamma_oracle: plane(&oracle.gamma),
        gamma_engine: plane(&configs.gamma.points),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covercomplex::validate;
    use crate::fieldlin::{PrimeField, Rationals};
    use crate::harness::fixtures::{self, exact_form, q};

    fn data(fx: &fixtures::Fixture) -> CoverData {
        validate(&fx.complex, &fx.form).unwrap()
    }

    #[test]
    fn point_complex() {
        let c = SimplicialComplex::from_facets(1, &[vec![0]]).unwrap();
        let d = validate(&c, &exact_form(&c, &[q(3, 1)])).unwrap();
        let o = oracle_configurations(&PrimeField::new(2).unwrap(), &d, 0).unwrap();
        // Heights are integrated from a root at zero.
        assert_eq!(o.delta, vec![((q(0, 1), q(0, 1)), 1)]);
        assert!(o.gamma.is_empty());
    }

    #[test]
    fn disc_bar() {
        let o = oracle_configurations(&PrimeField::new(2).unwrap(), &data(&fixtures::fix_g()), 1).unwrap();
        assert_eq!(o.gamma, vec![((q(1, 1), q(2, 1)), 1)]);
        assert!(o.delta.is_empty());
    }

    #[test]
    fn path_global_pair() {
        let o = oracle_configurations(&Rationals, &data(&fixtures::fix_t()), 0).unwrap();
        assert_eq!(o.delta, vec![((q(0, 1), q(2, 1)), 1)]);
        assert!(o.gamma.is_empty());
    }

    #[test]
    fn engine_agrees_on_exact_fixtures() {
        for fx in [
            fixtures::fix_g(),
            fixtures::fix_t(),
            fixtures::sphere(),
            fixtures::projective_plane(),
        ] {
            for p in [2, 3] {
                let field = PrimeField::new(p).unwrap();
                for r in 0..=2 {
                    let rep = persistence_oracle(&field, &data(&fx), r).unwrap();
                    assert!(rep.passed(), "{} over F_{p}: {rep:#?}", fx.name);
                }
            }
        }
    }

    #[test]
    fn projective_plane_depends_on_the_field() {
        let d = data(&fixtures::projective_plane());
        let f2 = oracle_configurations(&PrimeField::new(2).unwrap(), &d, 1).unwrap();
        let f3 = oracle_configurations(&PrimeField::new(3).unwrap(), &d, 1).unwrap();
        assert_eq!(f2.delta.len(), 1);
        assert!(f3.delta.is_empty());
    }
}
