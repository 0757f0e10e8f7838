use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

use farank::divisor::{self, c1, c1_pointed_closed_form, order_two_boundary, DivisorClass};
use farank::fusion::{Insertion, RankEngine};
use farank::oracle::rank_oracle;
use farank::rational::{from_big, rat, Rational};
use farank::registry::{self, PointedData};
use farank::spec::VoaSpec;

fn small_specs() -> Vec<VoaSpec> {
    vec![
        registry::virasoro(2, 5).unwrap(),
        registry::virasoro(3, 4).unwrap(),
        registry::virasoro(3, 5).unwrap(),
        registry::affine_sl2(2).unwrap(),
        registry::affine_sl2(3).unwrap(),
        registry::pointed(&PointedData::cyclic(3)).unwrap(),
    ]
}

fn small_groups() -> Vec<PointedData> {
    let z2 = PointedData::cyclic(2);
    vec![
        registry::z2_half(),
        PointedData::cyclic(3).with_weights(vec![rat(0, 1), rat(1, 3), rat(1, 3)], rat(2, 1)).unwrap(),
        PointedData::cyclic(4),
        PointedData::product(&z2, &z2)
            .with_weights(vec![rat(0, 1), rat(1, 2), rat(-1, 2), rat(1, 1)], rat(-3, 1))
            .unwrap(),
    ]
}

fn pick(len: usize) -> impl Strategy<Value = usize> {
    0..len
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fusion_matrices_commute(s in pick(6), a in 0usize..8, b in 0usize..8) {
        let spec = small_specs().swap_remove(s);
        let e = RankEngine::new(spec);
        let (a, b) = (a % e.modules(), b % e.modules());
        let ra = e.fusion_matrix(a).unwrap().matrix;
        let rb = e.fusion_matrix(b).unwrap().matrix;
        prop_assert!(ra.commutes_with(&rb));
    }

    #[test]
    fn trace_law(s in pick(6), picks in prop::collection::vec(0usize..8, 0..5), g in 0usize..3) {
        let e = RankEngine::new(small_specs().swap_remove(s));
        let order: Vec<usize> = picks.iter().map(|p| p % e.modules()).collect();
        let ins = Insertion::from_indices(e.modules(), &order).unwrap();
        prop_assert_eq!(e.fa_matrix(&ins, g).unwrap().trace(), e.rank(&ins, g + 1).unwrap());
    }

    #[test]
    fn rank_ignores_order_and_matches_state_sum(
        s in pick(6),
        picks in prop::collection::vec(0usize..8, 0..5),
        g in 0usize..3,
    ) {
        let e = RankEngine::new(small_specs().swap_remove(s));
        let order: Vec<usize> = picks.iter().map(|p| p % e.modules()).collect();
        let mut reversed = order.clone();
        reversed.reverse();
        let r = e.rank_of(&order, g).unwrap();
        prop_assert_eq!(&r, &e.rank_of(&reversed, g).unwrap());
        let ins = Insertion::from_indices(e.modules(), &order).unwrap();
        prop_assert_eq!(r, rank_oracle(e.spec(), &ins, g).unwrap());
    }

    #[test]
    fn pointed_rank_law(gi in pick(4), picks in prop::collection::vec(0usize..4, 0..6), g in 0usize..4) {
        let data = small_groups().swap_remove(gi);
        let e = RankEngine::new(registry::pointed(&data).unwrap());
        let beta: Vec<usize> = picks.iter().map(|p| p % data.order()).collect();
        let expected = if data.product_of(&beta) == data.identity() {
            BigInt::from(data.order()).pow(g as u32)
        } else {
            BigInt::zero()
        };
        prop_assert_eq!(e.rank_of(&beta, g).unwrap(), expected);
    }

    #[test]
    fn closed_form_matches_general_c1(
        gi in pick(4),
        picks in prop::collection::vec(0usize..4, 0..=4),
        g in 0usize..=2,
    ) {
        prop_assume!(2 * g + picks.len() > 2);
        let data = small_groups().swap_remove(gi);
        let e = RankEngine::new(registry::pointed(&data).unwrap());
        let beta: Vec<usize> = picks.iter().map(|p| p % data.order()).collect();
        prop_assert_eq!(c1(&e, &beta, g).unwrap(), c1_pointed_closed_form(&data, &beta, g).unwrap());
    }

    #[test]
    fn type_one_and_two_verdicts_do_not_depend_on_genus(
        gi in pick(4),
        picks in prop::collection::vec(0usize..4, 0..=3),
    ) {
        let data = small_groups().swap_remove(gi);
        let mut beta: Vec<usize> = picks.iter().map(|p| p % data.order()).collect();
        // Close the product so that the class is nonzero.
        beta.push(data.inverse(data.product_of(&beta)));
        let verdicts = |g: usize| {
            let d = c1_pointed_closed_form(&data, &beta, g).unwrap();
            (divisor::f_check_type1(&d).unwrap(), divisor::f_check_type2(&d).unwrap())
        };
        let first = verdicts(1);
        prop_assert_eq!(first, verdicts(2));
        prop_assert_eq!(first, verdicts(3));
    }

    #[test]
    fn tensor_c1_is_additive(picks in prop::collection::vec((0usize..2, 0usize..4), 1..=4), g in 0usize..=2) {
        prop_assume!(2 * g + picks.len() > 2);
        let a = registry::z2_half();
        let b = registry::virasoro(3, 4).unwrap();
        let (ea, eb) = (RankEngine::new(registry::pointed(&a).unwrap()), RankEngine::new(b.clone()));
        let et = RankEngine::new(registry::tensor(&registry::pointed(&a).unwrap(), &b));
        let left: Vec<usize> = picks.iter().map(|p| p.0).collect();
        let right: Vec<usize> = picks.iter().map(|p| p.1 % 3).collect();
        let both: Vec<usize> = left.iter().zip(&right).map(|(x, y)| x * 3 + y).collect();
        let r1 = from_big(&ea.rank_of(&left, g).unwrap());
        let r2 = from_big(&eb.rank_of(&right, g).unwrap());
        let expected = c1(&ea, &left, g).unwrap()
            .linear_combination(&r2, &c1(&eb, &right, g).unwrap(), &r1)
            .unwrap();
        prop_assert_eq!(c1(&et, &both, g).unwrap(), expected);
    }
}

fn order_two_modules() -> Vec<(VoaSpec, usize)> {
    let mut out = Vec::new();
    for (p, q) in [(3, 4), (3, 5), (4, 5)] {
        let spec = registry::virasoro(p, q).unwrap();
        let w = spec.max_weight_module();
        out.push((spec, w));
    }
    for level in 1..=3 {
        let spec = registry::affine_sl2(level).unwrap();
        out.push((spec, level as usize));
    }
    out
}

#[test]
fn order_two_boundary_law() {
    for (spec, s) in order_two_modules() {
        let a_s = spec.weight(s).clone();
        let e = RankEngine::new(spec);
        assert!(e.is_order_two(s).unwrap());
        for n in [4, 6, 8] {
            let d = c1(&e, &vec![s; n], 0).unwrap();
            for ((h, set), b) in &d.boundary {
                assert_eq!(*h, 0);
                assert_eq!(*b, order_two_boundary(&a_s, set.len()), "n = {n}, I = {set:?}");
            }
            let psi: Vec<Rational> = vec![a_s.clone(); n];
            assert_eq!(d.psi, psi);
        }
    }
}

#[test]
fn divisor_json_round_trips_for_computed_classes() {
    let e = RankEngine::new(registry::virasoro(2, 7).unwrap());
    for (ins, g) in [(vec![0, 1, 2], 0), (vec![0, 0], 1), (vec![], 2), (vec![1, 2, 2, 0], 1)] {
        let d = c1(&e, &ins, g).unwrap();
        assert_eq!(DivisorClass::from_json(&d.to_json()).unwrap(), d);
    }
}

#[test]
fn shared_engine_is_thread_safe_and_deterministic() {
    let e = RankEngine::new(registry::affine_sl2(4).unwrap());
    let queries: Vec<(Insertion, usize)> = Insertion::all_up_to(5, 4)
        .into_iter()
        .flat_map(|ins| (0..3).map(move |g| (ins.clone(), g)))
        .collect();
    let serial: Vec<BigInt> = queries.iter().map(|(i, g)| e.rank(i, *g).unwrap()).collect();
    let fresh = RankEngine::new(registry::affine_sl2(4).unwrap());
    let parallel: Vec<Vec<BigInt>> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..4)
            .map(|t| {
                let (fresh, queries) = (&fresh, &queries);
                s.spawn(move || {
                    let mut order: Vec<usize> = (0..queries.len()).collect();
                    order.rotate_left(t * 17 % queries.len());
                    let mut out = vec![BigInt::zero(); queries.len()];
                    for k in order {
                        out[k] = fresh.rank(&queries[k].0, queries[k].1).unwrap();
                    }
                    out
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    for p in parallel {
        assert_eq!(p, serial);
    }
}
