use super::*;
use crate::covercomplex::{validate, Q};
use crate::fieldlin::PrimeField;
use crate::harness::fixtures::{self, q, Fixture};

fn setting(fx: &Fixture, sheets: i64) -> std::rc::Rc<Setting> {
    Setting::new(validate(&fx.complex, &fx.form).unwrap(), sheets).unwrap()
}

fn engine(fx: &Fixture, sheets: i64, variant: Variant, r: usize) -> Engine<PrimeField> {
    Engine::new(PrimeField::new(2).unwrap(), setting(fx, sheets), variant, r).unwrap()
}

#[test]
fn wedge_has_one_delta_point() {
    let fx = fixtures::fix_w();
    for variant in [Variant::Standard, Variant::Bm] {
        let e = engine(&fx, 4, variant, 1);
        let d = support_scan(&e, Kind::Delta).unwrap();
        assert_eq!(d.points, vec![((q(1, 4), q(0, 1)), 1)], "{variant:?}");
        let one = configuration_1d(&d, Some(1)).unwrap();
        assert_eq!(one.points, vec![(q(-1, 4), 1)]);
        assert_eq!(support_scan(&e, Kind::Lambda).unwrap().points, vec![]);
    }
    let data = validate(&fx.complex, &fx.form).unwrap();
    assert_eq!(novikov_betti(&PrimeField::new(2).unwrap(), &data, 1), 1);
}

#[test]
fn wedge_boxes() {
    let fx = fixtures::fix_w();
    let e = engine(&fx, 4, Variant::Standard, 1);
    assert!(e.f_space(&q(1, 4), &q(0, 1)).unwrap().dim() >= 1);
    let bx = PlaneBox::new(q(0, 1), q(1, 4), q(0, 1), q(1, 4)).unwrap();
    assert_eq!(f_box(&e, &bx).unwrap().dim(), 1);
    let th = theta_box(&e, &bx).unwrap();
    assert!(th.is_isomorphism() && th.f_dim == 1);
    let empty = PlaneBox::new(q(1, 2), q(3, 5), q(0, 1), q(1, 4)).unwrap();
    assert_eq!(f_box(&e, &empty).unwrap().dim(), 0);
}

#[test]
fn circle_has_empty_configurations() {
    let fx = fixtures::fix_c();
    for r in 0..2 {
        let e = engine(&fx, 3, Variant::Standard, r);
        assert!(support_scan(&e, Kind::Delta).unwrap().points.is_empty());
        assert!(support_scan(&e, Kind::Gamma).unwrap().points.is_empty());
    }
}

#[test]
fn disc_bar_and_global_pair() {
    let fx = fixtures::fix_g();
    let e1 = engine(&fx, 1, Variant::Standard, 1);
    assert_eq!(
        support_scan(&e1, Kind::Gamma).unwrap().points,
        vec![((q(1, 1), q(2, 1)), 1)]
    );
    assert_eq!(e1.t_space(&q(1, 1), Some(&q(2, 1))).unwrap().dim(), 1);
    let bx = BoxAboveDiagonal::new(q(1, 2), q(1, 1), q(3, 2), Some(q(2, 1))).unwrap();
    assert_eq!(t_box(&e1, &bx).unwrap().dim(), 1);
    let e0 = engine(&fx, 1, Variant::Standard, 0);
    assert_eq!(
        support_scan(&e0, Kind::Delta).unwrap().points,
        vec![((q(0, 1), q(2, 1)), 1)]
    );
}

#[test]
fn class_profiles() {
    let fx = fixtures::fix_w();
    let e = engine(&fx, 4, Variant::Standard, 1);
    let w = e.window();
    // The side loop 0 → 3 → 4 → 0 on sheet 0.
    let c = &e.setting.data.complex;
    let edge = |u: usize, v: usize| w.cell_index(1, c.index_of(&[u, v]).unwrap(), 0).unwrap();
    let mut chain = vec![(edge(0, 3), 1u64), (edge(3, 4), 1), (edge(0, 4), 1)];
    chain.sort();
    let x = e.ambient().class_of(&chain, |_| false).unwrap();
    let p = class_profile(&e, &x).unwrap();
    assert_eq!((p.alpha, p.beta, p.t), (Some(q(1, 4)), Some(q(0, 1)), Some(q(-1, 4))));
    assert!(!p.torsion);
    let zero = class_profile(&e, &vec![]).unwrap();
    assert!(zero.torsion && zero.alpha.is_none() && zero.beta.is_none());

    let fc = fixtures::fix_c();
    let e0 = engine(&fc, 3, Variant::Standard, 0);
    assert_eq!(e0.ambient().dim(), 1);
    assert!(class_profile(&e0, &vec![(0, 1)]).unwrap().torsion);
}

#[test]
fn pair_identity_on_wedge() {
    let fx = fixtures::fix_w();
    let s = setting(&fx, 4);
    let f = PrimeField::new(2).unwrap();
    let engines: Vec<_> = (0..3)
        .map(|r| Engine::new(f, s.clone(), Variant::Standard, r).unwrap())
        .collect();
    let confs: Vec<_> = engines.iter().map(|e| degree_configs(e).unwrap()).collect();
    for a in s.fundamental_critical() {
        for r in 0..3 {
            let lower = if r == 0 { None } else { Some(&confs[r - 1]) };
            let rep = dimension_formula_check(&engines[r], &a, &confs[r], lower).unwrap();
            assert!(rep.holds(), "{rep:?}");
        }
    }
    let rep = dimension_formula_check(&engines[1], &q(1, 4), &confs[1], Some(&confs[0])).unwrap();
    assert_eq!((rep.pair_dim, rep.delta_row), (1, 1));
}

#[test]
fn splittings_on_wedge_and_disc() {
    let fx = fixtures::fix_w();
    let e = engine(&fx, 4, Variant::Standard, 1);
    let d = support_scan(&e, Kind::Delta).unwrap();
    let fam = build_splittings(&e, &d).unwrap();
    let rep = verify_splittings(&e, &fam).unwrap();
    assert!(rep.holds(), "{rep:?}");
    assert!(rep.translates_checked >= 2);

    let fg = fixtures::fix_g();
    let e = engine(&fg, 1, Variant::Standard, 1);
    let g = support_scan(&e, Kind::Gamma).unwrap();
    let rep = verify_splittings(&e, &build_splittings(&e, &g).unwrap()).unwrap();
    assert!(rep.holds(), "{rep:?}");
}

#[test]
fn grid_is_thinned() {
    let vals: Vec<Q> = (0..10).map(|i| q(i, 1)).collect();
    let g = critical_grid(&vals, 7);
    assert_eq!(g.len(), 7);
    assert_eq!(g[0], q(0, 1));
    assert_eq!(g[6], q(9, 1));
}
