//! Built-in example inputs.

use crate::covercomplex::{InputDoc, OneForm, SimplicialComplex, Q};
use crate::fieldlin::FieldSpec;

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub field: FieldSpec,
    pub complex: SimplicialComplex,
    pub form: OneForm,
    pub closed_manifold: bool,
}

impl Fixture {
    pub fn to_doc(&self) -> InputDoc {
        InputDoc::from_parts(self.field, &self.complex, &self.form, self.closed_manifold)
    }
}

pub fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

/// The exact form `dh` of vertex heights.
pub fn exact_form(complex: &SimplicialComplex, heights: &[Q]) -> OneForm {
    let entries: Vec<_> = complex
        .edges()
        .iter()
        .map(|e| ((e[0], e[1]), &heights[e[1]] - &heights[e[0]]))
        .collect();
    OneForm::from_oriented(complex, &entries).expect("every edge has a value")
}

fn build(
    name: &'static str,
    field: FieldSpec,
    n: usize,
    simplices: Vec<Vec<usize>>,
    values: &[((usize, usize), Q)],
    closed_manifold: bool,
) -> Fixture {
    let complex = SimplicialComplex::from_facets(n, &simplices).expect("fixture complex");
    let form = OneForm::from_oriented(&complex, values).expect("fixture form");
    Fixture {
        name,
        field,
        complex,
        form,
        closed_manifold,
    }
}

fn with_heights(
    name: &'static str,
    field: FieldSpec,
    n: usize,
    simplices: Vec<Vec<usize>>,
    heights: &[Q],
    closed_manifold: bool,
) -> Fixture {
    let complex = SimplicialComplex::from_facets(n, &simplices).expect("fixture complex");
    let form = exact_form(&complex, heights);
    Fixture {
        name,
        field,
        complex,
        form,
        closed_manifold,
    }
}

/// A triangle as a circle; each edge carries `1/3`, so the period is one.
pub fn fix_c() -> Fixture {
    let t = q(1, 3);
    build(
        "FIX-C",
        FieldSpec::Prime(2),
        3,
        vec![vec![0, 1], vec![1, 2], vec![0, 2]],
        &[((0, 1), t.clone()), ((1, 2), t.clone()), ((2, 0), t)],
        false,
    )
}

/// The circle of FIX-C with a second loop `0 → 3 → 4 → 0` attached at
/// vertex 0 on which the form is exact, with heights `1/8` and `1/4`.
pub fn fix_w() -> Fixture {
    let t = q(1, 3);
    build(
        "FIX-W",
        FieldSpec::Prime(2),
        5,
        vec![vec![0, 1], vec![1, 2], vec![0, 2], vec![0, 3], vec![3, 4], vec![0, 4]],
        &[
            ((0, 1), t.clone()),
            ((1, 2), t.clone()),
            ((2, 0), t),
            ((0, 3), q(1, 8)),
            ((3, 4), q(1, 8)),
            ((0, 4), q(1, 4)),
        ],
        false,
    )
}

/// A disc: the boundary circle on heights `0, 1/2, 1` coned off at height 2.
pub fn fix_g() -> Fixture {
    with_heights(
        "FIX-G",
        FieldSpec::Prime(2),
        4,
        vec![vec![0, 1, 3], vec![1, 2, 3], vec![0, 2, 3]],
        &[q(0, 1), q(1, 2), q(1, 1), q(2, 1)],
        false,
    )
}

/// A path on heights `0, 1, 2`.
pub fn fix_t() -> Fixture {
    with_heights(
        "FIX-T",
        FieldSpec::Prime(2),
        3,
        vec![vec![0, 1], vec![1, 2]],
        &[q(0, 1), q(1, 1), q(2, 1)],
        false,
    )
}

/// The octahedron with a height function.
pub fn sphere() -> Fixture {
    let mut tri = Vec::new();
    for x in [0, 1] {
        for y in [2, 3] {
            for z in [4, 5] {
                tri.push(vec![x, y, z]);
            }
        }
    }
    with_heights(
        "S2",
        FieldSpec::Prime(2),
        6,
        tri,
        &[q(0, 1), q(5, 1), q(1, 1), q(4, 1), q(2, 1), q(3, 1)],
        true,
    )
}

/// The six-vertex projective plane over ℤ/2 with a height function.
pub fn projective_plane() -> Fixture {
    let tri = [
        [0, 1, 2],
        [0, 2, 3],
        [0, 3, 4],
        [0, 4, 5],
        [0, 1, 5],
        [1, 2, 4],
        [2, 3, 5],
        [1, 3, 4],
        [2, 4, 5],
        [1, 3, 5],
    ];
    with_heights(
        "RP2",
        FieldSpec::Prime(2),
        6,
        tri.iter().map(|t| t.to_vec()).collect(),
        &[q(0, 1), q(1, 1), q(2, 1), q(3, 1), q(4, 1), q(5, 1)],
        true,
    )
}

/// The seven-vertex torus, triangles `{i, i+1, i+3}` and `{i, i+2, i+3}`
/// mod 7, with the circle form `i → i+s` worth `s/7`.
pub fn torus() -> Fixture {
    let mut tri = Vec::new();
    let mut values = Vec::new();
    for i in 0..7 {
        tri.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
        tri.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
        for s in 1..=3 {
            values.push(((i, (i + s) % 7), q(s as i64, 7)));
        }
    }
    build("FIX-T2", FieldSpec::Prime(2), 7, tri, &values, true)
}

pub fn all() -> Vec<Fixture> {
    vec![
        fix_c(),
        fix_w(),
        fix_g(),
        fix_t(),
        sphere(),
        projective_plane(),
        torus(),
    ]
}

pub fn by_name(name: &str) -> Option<Fixture> {
    all().into_iter().find(|f| f.name.eq_ignore_ascii_case(name))
}
