//! Simplicial 1-cocycles, their period group, and the lift to the cover.

use std::collections::VecDeque;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::complex::SimplicialComplex;
use super::CoverError;

pub type Q = BigRational;

/// Edge values of a 1-cochain, stored on edges in sorted orientation:
/// `values[e]` is `ω(u → v)` for the edge `[u, v]` with `u < v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneForm {
    pub values: Vec<Q>,
}

impl OneForm {
    /// Assemble from oriented edge values `((tail, head), ω(tail → head))`.
    pub fn from_oriented(complex: &SimplicialComplex, entries: &[((usize, usize), Q)]) -> Result<Self, CoverError> {
        let mut values: Vec<Option<Q>> = vec![None; complex.count(1)];
        for ((t, h), x) in entries {
            let (edge, val) = if t < h {
                (vec![*t, *h], x.clone())
            } else {
                (vec![*h, *t], -x.clone())
            };
            let idx = complex
                .index_of(&edge)
                .ok_or_else(|| CoverError::BadInput(format!("form value on non-edge {edge:?}")))?;
            match &values[idx] {
                Some(prev) if *prev != val => {
                    return Err(CoverError::BadInput(format!("conflicting values on edge {edge:?}")))
                }
                _ => values[idx] = Some(val),
            }
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| CoverError::MissingEdgeValue(complex.edges()[i].clone())))
            .collect::<Result<_, _>>()?;
        Ok(OneForm { values })
    }

    pub fn negated(&self) -> OneForm {
        OneForm {
            values: self.values.iter().map(|x| -x.clone()).collect(),
        }
    }

    /// `ω + dg` for a function `g` on vertices.
    pub fn plus_coboundary(&self, complex: &SimplicialComplex, g: &[Q]) -> OneForm {
        let values = complex
            .edges()
            .iter()
            .zip(&self.values)
            .map(|(e, x)| x + &g[e[1]] - &g[e[0]])
            .collect();
        OneForm { values }
    }

    /// Value on the oriented edge `u → v` (which must be an edge).
    pub fn on(&self, complex: &SimplicialComplex, u: usize, v: usize) -> Q {
        if u < v {
            self.values[complex.index_of(&[u, v]).expect("edge")].clone()
        } else {
            -self.values[complex.index_of(&[v, u]).expect("edge")].clone()
        }
    }
}

/// Critical values in one fundamental domain with the minimal gap between
/// consecutive values (extended periodically).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalSet {
    pub values: Vec<Q>,
    pub gap: Q,
}

/// A validated complex with a cocycle: the period `p` generating Γ, a lift
/// `h` of the base vertices to heights, and the sheet offsets of edges.
#[derive(Clone, Debug)]
pub struct CoverData {
    pub complex: SimplicialComplex,
    pub form: OneForm,
    pub period: Q,
    /// Height of the sheet-0 copy of each base vertex.
    pub heights: Vec<Q>,
    /// For the sorted edge `[u, v]`: the sheet of `v` relative to `u` along
    /// the cover edge starting at `u` on sheet 0.
    pub offsets: Vec<i64>,
    pub critical: CriticalSet,
}

pub fn rational_gcd(x: &Q, y: &Q) -> Q {
    if x.is_zero() {
        return y.abs();
    }
    if y.is_zero() {
        return x.abs();
    }
    let num = x.numer().gcd(y.numer());
    let den = x.denom().lcm(y.denom());
    Q::new(num, den)
}

/// `x mod p` in `[0, p)`.
pub fn reduce_mod(x: &Q, p: &Q) -> Q {
    if p.is_zero() {
        return x.clone();
    }
    x - (x / p).floor() * p
}

/// Check the cocycle condition on every triangle.
pub fn check_cocycle(complex: &SimplicialComplex, form: &OneForm) -> Result<(), CoverError> {
    for t in complex.simplices(2) {
        let (x, y, z) = (t[0], t[1], t[2]);
        let s = form.on(complex, x, y) + form.on(complex, y, z) + form.on(complex, z, x);
        if !s.is_zero() {
            return Err(CoverError::NotACocycle(t.clone()));
        }
    }
    Ok(())
}

/// Integrate `form` along a spanning forest (each root at height 0) and
/// return the heights together with the periods of the non-tree edges.
pub fn integrate(complex: &SimplicialComplex, form: &OneForm) -> (Vec<Q>, Vec<Q>) {
    let n = complex.n_vertices();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in complex.edges() {
        adj[e[0]].push(e[1]);
        adj[e[1]].push(e[0]);
    }
    let mut height: Vec<Option<Q>> = vec![None; n];
    for root in 0..n {
        if height[root].is_some() {
            continue;
        }
        height[root] = Some(Q::zero());
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let hu = height[u].clone().expect("visited");
            for &v in &adj[u] {
                if height[v].is_none() {
                    height[v] = Some(&hu + form.on(complex, u, v));
                    queue.push_back(v);
                }
            }
        }
    }
    let heights: Vec<Q> = height.into_iter().map(|h| h.expect("all visited")).collect();
    let periods = complex
        .edges()
        .iter()
        .zip(&form.values)
        .map(|(e, x)| x - (&heights[e[1]] - &heights[e[0]]))
        .filter(|c| !c.is_zero())
        .collect();
    (heights, periods)
}

pub fn critical_set(heights: &[Q], period: &Q) -> CriticalSet {
    let mut values: Vec<Q> = heights.iter().map(|h| reduce_mod(h, period)).collect();
    values.sort();
    values.dedup();
    let mut gap: Option<Q> = None;
    let mut consider = |d: Q| {
        if d.is_positive() && gap.as_ref().is_none_or(|g| d < *g) {
            gap = Some(d);
        }
    };
    for w in values.windows(2) {
        consider(&w[1] - &w[0]);
    }
    if period.is_positive() {
        consider(period - values.last().expect("nonempty") + values.first().expect("nonempty"));
    }
    CriticalSet {
        values,
        gap: gap.unwrap_or_else(|| Q::from_integer(1.into())),
    }
}

/// Validate a complex with a cocycle and compute the cover data.
pub fn validate(complex: &SimplicialComplex, form: &OneForm) -> Result<CoverData, CoverError> {
    if complex.n_vertices() == 0 {
        return Err(CoverError::EmptyComplex);
    }
    check_cocycle(complex, form)?;
    let (raw, periods) = integrate(complex, form);
    // Every finitely generated subgroup of ℚ is cyclic, so Γ = pℤ with p the
    // gcd of the periods.
    let period = periods.iter().fold(Q::zero(), |g, c| rational_gcd(&g, c));
    let heights: Vec<Q> = raw.iter().map(|h| reduce_mod(h, &period)).collect();
    let offsets = edge_offsets(complex, form, &heights, &period)?;
    let critical = critical_set(&heights, &period);
    Ok(CoverData {
        complex: complex.clone(),
        form: form.clone(),
        period,
        heights,
        offsets,
        critical,
    })
}

fn edge_offsets(
    complex: &SimplicialComplex,
    form: &OneForm,
    heights: &[Q],
    period: &Q,
) -> Result<Vec<i64>, CoverError> {
    complex
        .edges()
        .iter()
        .zip(&form.values)
        .map(|(e, x)| {
            let jump = x - (&heights[e[1]] - &heights[e[0]]);
            if period.is_zero() {
                return if jump.is_zero() {
                    Ok(0)
                } else {
                    Err(CoverError::BadInput("inconsistent lift".into()))
                };
            }
            let s = jump / period;
            if !s.is_integer() {
                return Err(CoverError::BadInput("edge jump is not a multiple of the period".into()));
            }
            i64::try_from(s.to_integer()).map_err(|_| CoverError::BadInput("sheet offset overflow".into()))
        })
        .collect()
}

impl CoverData {
    /// The same cover with the lift moved by `g` (that is, the cover data of
    /// `ω + dg` on the identical sheet structure). Heights are not reduced.
    pub fn perturbed(&self, g: &[Q]) -> CoverData {
        let heights: Vec<Q> = self.heights.iter().zip(g).map(|(h, x)| h + x).collect();
        CoverData {
            complex: self.complex.clone(),
            form: self.form.plus_coboundary(&self.complex, g),
            period: self.period.clone(),
            critical: critical_set(&heights, &self.period),
            heights,
            offsets: self.offsets.clone(),
        }
    }

    /// Cover data of `−ω`.
    pub fn negated(&self) -> Result<CoverData, CoverError> {
        validate(&self.complex, &self.form.negated())
    }

    pub fn has_period(&self) -> bool {
        self.period.is_positive()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    fn circle() -> SimplicialComplex {
        SimplicialComplex::new(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap()
    }

    #[test]
    fn triangle_circle_has_period_one() {
        let c = circle();
        let f = OneForm::from_oriented(&c, &[((0, 1), q(1, 3)), ((1, 2), q(1, 3)), ((2, 0), q(1, 3))]).unwrap();
        let d = validate(&c, &f).unwrap();
        assert_eq!(d.period, q(1, 1));
        assert_eq!(d.critical.values, vec![q(0, 1), q(1, 3), q(2, 3)]);
        assert_eq!(d.critical.gap, q(1, 3));
        // Going once around 0 → 1 → 2 → 0 climbs one sheet.
        let e02 = c.index_of(&[0, 2]).unwrap();
        let total: i64 = [(0, 1), (1, 2)]
            .iter()
            .map(|(u, v)| d.offsets[c.index_of(&[*u, *v]).unwrap()])
            .sum::<i64>()
            - d.offsets[e02];
        assert_eq!(total, 1);
    }

    #[test]
    fn exact_form_on_a_path() {
        let c = SimplicialComplex::new(3, vec![vec![0, 1], vec![1, 2]]).unwrap();
        let f = OneForm::from_oriented(&c, &[((0, 1), q(1, 1)), ((1, 2), q(1, 1))]).unwrap();
        let d = validate(&c, &f).unwrap();
        assert_eq!(d.period, q(0, 1));
        assert_eq!(d.critical.values, vec![q(0, 1), q(1, 1), q(2, 1)]);
    }

    #[test]
    fn triangle_sum_is_checked() {
        let c = SimplicialComplex::new(3, vec![vec![0, 1, 2], vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let f = OneForm::from_oriented(&c, &[((0, 1), q(1, 1)), ((1, 2), q(1, 1)), ((0, 2), q(1, 1))]).unwrap();
        assert_eq!(validate(&c, &f).unwrap_err(), CoverError::NotACocycle(vec![0, 1, 2]));
    }

    #[test]
    fn period_is_the_gcd_of_cycle_periods() {
        assert_eq!(rational_gcd(&q(2, 3), &q(1, 2)), q(1, 6));
        assert_eq!(reduce_mod(&q(-1, 3), &q(1, 1)), q(2, 3));
    }
}
