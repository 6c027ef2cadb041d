//! Duality between BM configurations and standard configurations of the
//! complementary degree on closed manifolds.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::config::{stable_configurations, DegreeResult, Variant};
use crate::covercomplex::{CoverData, SimplicialComplex, Q};
use crate::fieldlin::Field;

use super::{HarnessError, LinePoint, Verdict};

/// The dimension `n` of a closed combinatorial manifold: every
/// `(n−1)`-simplex lies in exactly two `n`-simplices, and for `2 ≤ n ≤ 3`
/// every vertex link is connected.
pub fn manifold_dim(complex: &SimplicialComplex) -> Result<usize, HarnessError> {
    let n = complex.dim();
    if n == 0 {
        return Err(HarnessError::NotAManifold("zero-dimensional complex".into()));
    }
    for (i, c) in complex.coface_counts(n - 1).iter().enumerate() {
        if *c != 2 {
            return Err(HarnessError::NotAManifold(format!(
                "{:?} lies in {c} top simplices",
                complex.simplices(n - 1)[i]
            )));
        }
    }
    if (2..=3).contains(&n) {
        for v in 0..complex.n_vertices() {
            if !link_connected(&complex.link(v)) {
                return Err(HarnessError::NotAManifold(format!(
                    "link of vertex {v} is disconnected"
                )));
            }
        }
    }
    Ok(n)
}

fn link_connected(link: &[Vec<usize>]) -> bool {
    let verts: BTreeSet<usize> = link.iter().flatten().copied().collect();
    let Some(&start) = verts.iter().next() else {
        return false;
    };
    let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for s in link.iter().filter(|s| s.len() == 2) {
        adj.entry(s[0]).or_default().push(s[1]);
        adj.entry(s[1]).or_default().push(s[0]);
    }
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(u) = stack.pop() {
        for &w in adj.get(&u).into_iter().flatten() {
            if seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen.len() == verts.len()
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeDuality {
    pub r: usize,
    /// `BM δ^ω_r` against `δ^ω_{n−r}` read at `−t`.
    pub delta_bm: Vec<LinePoint>,
    pub delta_dual: Vec<LinePoint>,
    pub delta_match: bool,
    /// `BM γ^ω_r` against `γ^{−ω}_{n−r−1}`.
    pub gamma_bm: Vec<LinePoint>,
    pub gamma_dual: Vec<LinePoint>,
    pub gamma_match: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DualityReport {
    pub n: usize,
    pub sheets: i64,
    pub degrees: Vec<DegreeDuality>,
    pub passed: bool,
}

impl Verdict for DualityReport {
    fn passed(&self) -> bool {
        self.passed
    }
}

fn find(results: &[DegreeResult], r: usize) -> &DegreeResult {
    results.iter().find(|d| d.r == r).expect("degree computed")
}

fn reflected(points: &[(Q, usize)]) -> Vec<(Q, usize)> {
    let mut v: Vec<(Q, usize)> = points.iter().map(|(t, m)| (-t.clone(), *m)).collect();
    v.sort();
    v
}

fn line(points: &[(Q, usize)]) -> Vec<LinePoint> {
    points
        .iter()
        .map(|(t, m)| (crate::covercomplex::format_rational(t), *m))
        .collect()
}

/// Compare BM configurations of `ω` with standard configurations of `ω` and
/// `−ω` in the complementary degrees. Each side is stabilized on its own.
pub fn check_duality<F: Field>(
    field: &F,
    data: &CoverData,
    start: i64,
    cap: i64,
) -> Result<DualityReport, HarnessError> {
    let n = manifold_dim(&data.complex)?;
    let degrees: Vec<usize> = (0..=n).collect();
    let bm = stable_configurations(field, data, start, cap, &[Variant::Bm], &degrees)?;
    let std = stable_configurations(field, data, start, cap, &[Variant::Standard], &degrees)?;
    let neg = stable_configurations(field, &data.negated()?, start, cap, &[Variant::Standard], &degrees)?;
    let mut out = Vec::new();
    for r in 0..=n {
        let left = find(&bm.results, r);
        let delta_bm = left.configs.delta.project().points;
        let delta_dual = reflected(&find(&std.results, n - r).configs.delta.project().points);
        let gamma_bm = left.configs.gamma.project().points;
        let gamma_dual = if r < n {
            find(&neg.results, n - r - 1).configs.gamma.project().points
        } else {
            Vec::new()
        };
        out.push(DegreeDuality {
            r,
            delta_match: delta_bm == delta_dual,
            gamma_match: gamma_bm == gamma_dual,
            delta_bm: line(&delta_bm),
            delta_dual: line(&delta_dual),
            gamma_bm: line(&gamma_bm),
            gamma_dual: line(&gamma_dual),
        });
    }
    Ok(DualityReport {
        n,
        sheets: bm.sheets.max(std.sheets).max(neg.sheets),
        passed: out.iter().all(|d| d.delta_match && d.gamma_match),
        degrees: out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covercomplex::validate;
    use crate::fieldlin::PrimeField;
    use crate::harness::fixtures;

    fn run(fx: &fixtures::Fixture) -> Result<DualityReport, HarnessError> {
        let data = validate(&fx.complex, &fx.form).unwrap();
        check_duality(&PrimeField::new(2).unwrap(), &data, 2, 16)
    }

    #[test]
    fn wedge_is_rejected() {
        assert!(matches!(run(&fixtures::fix_w()), Err(HarnessError::NotAManifold(_))));
        assert!(matches!(run(&fixtures::fix_g()), Err(HarnessError::NotAManifold(_))));
    }

    #[test]
    fn closed_surfaces_satisfy_duality() {
        for fx in [fixtures::sphere(), fixtures::projective_plane(), fixtures::torus()] {
            let rep = run(&fx).unwrap();
            assert_eq!(rep.n, 2);
            assert!(rep.passed, "{}: {rep:#?}", fx.name);
        }
    }

    #[test]
    fn sphere_delta_pairs_top_and_bottom() {
        let rep = run(&fixtures::sphere()).unwrap();
        assert_eq!(rep.degrees[0].delta_bm, vec![("5/1".to_string(), 1)]);
        assert_eq!(rep.degrees[2].delta_bm, vec![("-5/1".to_string(), 1)]);
    }
}
