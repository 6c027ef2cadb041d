use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::gen::{random_factorization, random_iso, random_ladder, random_map, random_triple};
use super::*;
use crate::fieldlin::{AmbientSpace, Field, LinMap, PrimeField, Rationals, Subspace};

fn random_square<F: Field>(f: &F, rng: &mut ChaCha8Rng, max_dim: usize) -> SquareDiagram<F> {
    let mut sp = || AmbientSpace::new(rng.gen_range(0..=max_dim));
    let (a, b1, b2, extra) = (sp(), sp(), sp(), sp());
    let a1 = random_map(f, rng, a, b1);
    let a2 = random_map(f, rng, a, b2);
    let po = pushout(&a1, &a2).unwrap();
    let c = AmbientSpace::new(extra.dim() + po.dim());
    let out = random_map(f, rng, po.space, c);
    SquareDiagram::new(a1, a2, out.compose(&po.i1).unwrap(), out.compose(&po.i2).unwrap()).unwrap()
}

fn duality_holds<F: Field>(f: &F, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t = random_triple(f, &mut rng, 5);
    let hat = omega_hat(&t).unwrap().dim();
    assert_eq!(hat, omega_under(&t.dual()).unwrap().dim());
    assert_eq!(omega_under(&t).unwrap().dim(), omega_hat(&t.dual()).unwrap().dim());
    if t.alpha.is_surjective() || t.gamma.is_injective() {
        assert_eq!(hat, 0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn omega_duality_mod_two(seed in any::<u64>()) {
        duality_holds(&PrimeField::new(2).unwrap(), seed);
    }

    #[test]
    fn omega_duality_mod_five(seed in any::<u64>()) {
        duality_holds(&PrimeField::new(5).unwrap(), seed);
    }

    #[test]
    fn omega_duality_rationals(seed in any::<u64>()) {
        duality_holds(&Rationals, seed);
    }

    #[test]
    fn squares_exchange_kernel_and_cokernel(seed in any::<u64>()) {
        let f = PrimeField::new(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = random_square(&f, &mut rng, 5);
        prop_assert!(check_dual_exchange(&d).unwrap().holds());
    }

    #[test]
    fn factorizations_give_short_exact_sequences(seed in any::<u64>()) {
        let f = PrimeField::new(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for at in [FactorAt::Alpha, FactorAt::Beta, FactorAt::Gamma] {
            let (t, f1, f2) = random_factorization(&f, &mut rng, 5, at);
            let r = factorization_sequences(&t, at, &f1, &f2).unwrap();
            prop_assert!(r.holds(), "{:?} {:?}", at, r);
        }
    }

    #[test]
    fn ladders_with_exact_columns_induce_isomorphisms(seed in any::<u64>()) {
        let f = PrimeField::new(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = random_ladder(&f, &mut rng, 3);
        let r = check_exact_row_equivalence(&l).unwrap();
        prop_assert!(r.holds(), "{:?}", r);
    }

    #[test]
    fn towers_of_isomorphisms(seed in any::<u64>()) {
        let f = PrimeField::new(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = rng.gen_range(0..5);
        let spaces: Vec<_> = (0..4).map(|_| AmbientSpace::new(d)).collect();
        let maps: Vec<_> = (0..3).map(|k| random_iso(&f, &mut rng, spaces[k], spaces[k + 1])).collect();
        let c = tower_colim(&Tower::direct(f, spaces.clone(), maps.clone()).unwrap()).unwrap();
        prop_assert!(c.maps.iter().all(|m| m.is_isomorphism()));
        let back: Vec<_> = maps.iter().map(|m| m.inverse().unwrap()).collect();
        let l = tower_lim(&Tower::inverse(f, spaces, back).unwrap()).unwrap();
        prop_assert!(l.maps.iter().all(|m| m.is_isomorphism()));
    }

    #[test]
    fn surjective_slabs_have_no_derived_limit(seed in any::<u64>()) {
        let f = PrimeField::new(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut dims: Vec<usize> = (0..4).map(|_| rng.gen_range(0..5)).collect();
        dims.sort();
        dims.push(dims[3]);
        let spaces: Vec<_> = dims.iter().map(|&d| AmbientSpace::new(d)).collect();
        let maps: Vec<_> = (0..4)
            .map(|k| loop {
                let m = random_map(&f, &mut rng, spaces[k + 1], spaces[k]);
                if m.is_surjective() {
                    break m;
                }
            })
            .collect();
        let tw = Tower::inverse(f, spaces, maps).unwrap();
        let (d1, _) = tower_lim_derived(&tw).unwrap();
        prop_assert_eq!(d1.dim(), 0);
    }

    #[test]
    fn genuine_surjection_chains_match_the_tower_colimit(seed in any::<u64>()) {
        let f = PrimeField::new(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut dims: Vec<usize> = (0..3).map(|_| rng.gen_range(0..5)).collect();
        dims.sort_by(|a, b| b.cmp(a));
        dims.push(dims[2]);
        let mut chain = Vec::new();
        let mut maps = Vec::new();
        let mut spaces = vec![AmbientSpace::new(dims[0])];
        let mut dom = spaces[0];
        for k in 0..3 {
            let p = AmbientSpace::new(dims[k + 1]);
            let pi = if k == 2 {
                random_iso(&f, &mut rng, dom, p)
            } else {
                loop {
                    let m = random_map(&f, &mut rng, dom, p);
                    if m.is_surjective() {
                        break m;
                    }
                }
            };
            let full = Subspace::full(f, p);
            let next = full.coord_space();
            maps.push(pi.clone());
            spaces.push(p);
            chain.push(SubSurjection::new(pi, full).unwrap());
            dom = next;
        }
        let lim = subsurjection_limit(&chain).unwrap();
        // Relabel so the plain tower chains through the same spaces.
        let mut relabeled = Vec::new();
        let mut plain_spaces = vec![spaces[0]];
        for (k, m) in maps.iter().enumerate() {
            let src = plain_spaces[k];
            let tgt = AmbientSpace::new(m.codomain().dim());
            relabeled.push(m.relabel(src, tgt));
            plain_spaces.push(tgt);
        }
        let plain = tower_colim(&Tower::direct(f, plain_spaces, relabeled).unwrap()).unwrap();
        prop_assert_eq!(lim.dim(), plain.space.dim());
    }
}

#[test]
fn unit_factor_gives_a_trivial_left_term() {
    let f = PrimeField::new(2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let t = random_triple(&f, &mut rng, 4);
    let id = LinMap::identity(f, t.alpha.domain());
    let r = factorization_sequences(&t, FactorAt::Alpha, &id, &t.alpha).unwrap();
    assert!(r.holds());
    assert_eq!(r.hat.dims[0], 0);
    assert_eq!(r.hat.dims[1], r.hat.dims[2]);
}

#[test]
fn mismatched_factorization_is_rejected() {
    let f = PrimeField::new(2).unwrap();
    let s = AmbientSpace::new(1);
    let one = LinMap::identity(f, s);
    let zero = LinMap::zero(f, s, s);
    let t = TripleComposite::new(one.clone(), one.clone(), one.clone()).unwrap();
    assert_eq!(
        factorization_sequences(&t, FactorAt::Beta, &one, &zero).unwrap_err(),
        DiagError::NotAFactorization
    );
}

#[test]
fn inexact_columns_are_rejected() {
    let f = PrimeField::new(2).unwrap();
    let s = AmbientSpace::new(1);
    let id = LinMap::identity(f, s);
    let t = TripleComposite::new(id.clone(), id.clone(), id.clone()).unwrap();
    let l = Ladder {
        top: t.clone(),
        bottom: t,
        down: [id.clone(), id.clone(), id.clone(), id.clone()],
        theta: [id.clone(), id.clone(), id.clone(), id.clone()],
        lambda: [id.clone(), id.clone(), id.clone(), id.clone()],
    };
    assert_eq!(check_exact_row_equivalence(&l).unwrap_err(), DiagError::ColumnsNotExact);
}

#[test]
fn zero_ladder_columns_give_identity() {
    let f = PrimeField::new(2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let t = random_triple(&f, &mut rng, 3);
    let sp = [t.alpha.domain(), t.beta.domain(), t.gamma.domain(), t.gamma.codomain()];
    let zero = AmbientSpace::new(0);
    let l = Ladder {
        top: t.clone(),
        bottom: t,
        down: sp.map(|s| LinMap::identity(f, s)),
        theta: sp.map(|s| LinMap::zero(f, zero, s)),
        lambda: sp.map(|s| LinMap::zero(f, s, zero)),
    };
    assert!(check_exact_row_equivalence(&l).unwrap().holds());
}
