mod common;

use common::*;
use hfk_core::algebra::{
    chain_homology, euler_poly, grading, smith_normal_form, BigMatrix, GradedGroup, IntegerMatrix,
};
use hfk_core::complex::{FilteredKnotComplex, Generator};
use hfk_core::doubling::{
    alexander_of_double, double_hfk, double_to_companion, mirror_companion, tau_double,
};
use hfk_core::knot_db::{self, KnotRecord};
use hfk_core::meridian::{guard, meridian_sum_check};
use hfk_core::skein::skein_interpolate;
use hfk_core::surgery::hf_plus_one;
use hfk_core::Clasp;
use num_bigint::BigInt;
use num_traits::One;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn knot_key() -> impl Strategy<Value = String> {
    let keys = knot_db::bundled_keys();
    (0..keys.len()).prop_map(move |i| keys[i].clone())
}

fn clasp() -> impl Strategy<Value = Clasp> {
    prop_oneof![Just(Clasp::Positive), Just(Clasp::Negative)]
}

fn matrix() -> impl Strategy<Value = IntegerMatrix> {
    (0usize..=6, 0usize..=6).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-9i64..=9, r * c)
            .prop_map(move |data| IntegerMatrix::from_vec(r, c, data).unwrap())
    })
}

fn torsion_free_group() -> impl Strategy<Value = GradedGroup> {
    proptest::collection::vec((-6i64..=6, 1i64..=4, 1u64..=3), 0..6).prop_map(|terms| {
        terms
            .into_iter()
            .map(|(n, d, k)| GradedGroup::free(num_rational::Rational64::new(n, d), k))
            .sum()
    })
}

fn group() -> impl Strategy<Value = GradedGroup> {
    (torsion_free_group(), proptest::collection::vec((-3i64..=3, 2u64..=6), 0..3)).prop_map(
        |(g, torsion)| {
            torsion
                .into_iter()
                .fold(g, |acc, (d, t)| acc.with_torsion(grading(d), &[t]))
        },
    )
}

/// `new_j = x_j + c x_i` for random pairs with equal Maslov grading and
/// `A(x_i) <= A(x_j)`, plus an optional cancelling pair; the result is
/// filtered chain homotopy equivalent to `c`.
fn filtered_basis_change<R: Rng>(c: &FilteredKnotComplex, rng: &mut R) -> FilteredKnotComplex {
    let mut gens: Vec<Generator> = c.generators().to_vec();
    let mut d = c.differential().clone();
    if rng.gen_bool(0.5) && !gens.is_empty() {
        let anchor = gens[rng.gen_range(0..gens.len())];
        let n = gens.len();
        let mut grown = IntegerMatrix::zeros(n + 2, n + 2);
        for (r, col, x) in d.nonzero_entries() {
            grown.set(r, col, x);
        }
        grown.set(n + 1, n, 1);
        gens.push(Generator::new(anchor.maslov, anchor.alexander));
        gens.push(Generator::new(anchor.maslov - 1, anchor.alexander));
        d = grown;
    }
    let n = gens.len();
    for _ in 0..6 {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i == j || gens[i].maslov != gens[j].maslov || gens[i].alexander > gens[j].alexander {
            continue;
        }
        let coeff = rng.gen_range(-2i64..=2);
        let mut q = IntegerMatrix::identity(n);
        q.set(i, j, coeff);
        let mut q_inv = IntegerMatrix::identity(n);
        q_inv.set(i, j, -coeff);
        d = q_inv.mul(&d).unwrap().mul(&q).unwrap();
    }
    FilteredKnotComplex::new(c.name.clone(), gens, d).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_form_factors_the_matrix(m in matrix()) {
        let s = smith_normal_form(&m);
        prop_assert_eq!(mul_big(&mul_big(&s.u.to_rows(), &to_big(&m)), &s.v.to_rows()), to_big(&s.d));
        prop_assert!(is_unimodular(&s.u) && is_unimodular(&s.v));
        for (r, c, _) in s.d.nonzero_entries() {
            prop_assert_eq!(r, c);
        }
        let factors = s.invariant_factors();
        prop_assert!(factors.iter().all(|&x| x > 0));
        prop_assert!(factors.windows(2).all(|w| w[1] % w[0] == 0));
        prop_assert_eq!(factors, invariant_factors(&m));
        let kernel = s.kernel_basis();
        prop_assert!(BigMatrix::from(&m).mul(&kernel).unwrap().is_zero());
        prop_assert_eq!(kernel.cols(), m.cols() - rank(&m));
    }

    #[test]
    fn homology_is_invariant_under_basis_change(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (gradings, d, conj) = conjugated_complex(&mut rng);
        let gr: Vec<_> = gradings.iter().map(|&m| grading(m)).collect();
        let h = chain_homology(&gr, &d).unwrap();
        prop_assert_eq!(&chain_homology(&gr, &conj).unwrap(), &h);
        prop_assert_eq!(h.integral_ranks().unwrap(), betti(&gradings, &d));
    }

    #[test]
    fn adjust_free_round_trips(g in group(), d in -4i64..=4, k in 0i64..=5) {
        let at = grading(d);
        prop_assert_eq!(g.adjust_free(at, k).unwrap().adjust_free(at, -k).unwrap(), g.clone());
        let available = g.rank_at(at) as i64;
        if k <= available {
            prop_assert_eq!(g.adjust_free(at, -k).unwrap().adjust_free(at, k).unwrap(), g);
        } else {
            prop_assert!(g.adjust_free(at, -k).is_err());
        }
    }

    #[test]
    fn dual_negate_is_an_involution(g in torsion_free_group()) {
        prop_assert_eq!(g.dual_negate().unwrap().dual_negate().unwrap(), g);
    }

    #[test]
    fn euler_characteristic_is_additive(
        a in proptest::collection::vec(group(), 1..4),
        b in proptest::collection::vec(group(), 1..4),
    ) {
        let integral = |v: &[GradedGroup]| -> Vec<GradedGroup> {
            v.iter().map(|g| g.iter().filter(|(d, _)| d.is_integer()).fold(
                GradedGroup::zero(),
                |acc, (d, s)| acc + GradedGroup::free(*d, s.free),
            )).collect()
        };
        let (a, b) = (integral(&a), integral(&b));
        let sums: Vec<GradedGroup> = (0..a.len().max(b.len()))
            .map(|i| {
                a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default()
            })
            .collect();
        let chi = |v: &[GradedGroup]| euler_poly(v.iter().enumerate().map(|(i, g)| (i as i64, g))).unwrap();
        prop_assert_eq!(chi(&sums), chi(&a) + chi(&b));
    }

    #[test]
    fn filtered_basis_change_keeps_invariants(key in knot_key(), seed: u64) {
        let original = knot_db::load(&key).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let changed = filtered_basis_change(&original.complex, &mut rng);
        prop_assert_eq!(changed.tau(), original.complex.tau());
        prop_assert_eq!(changed.genus(), original.complex.genus());
        prop_assert_eq!(changed.alexander_polynomial(), original.complex.alexander_polynomial());
        let k = original.companion().unwrap();
        prop_assert_eq!(changed.to_companion().unwrap(), k.clone());
        k.validate().unwrap();
        let g = k.genus as i64;
        for j in -g..=g {
            prop_assert_eq!(changed.hfk(j), original.complex.hfk(j));
        }
        let record = KnotRecord::new(changed).unwrap();
        let back = knot_db::ingest(&knot_db::emit(&record)).unwrap();
        prop_assert_eq!(back.complex, record.complex);
        prop_assert_eq!(back.companion, record.companion);
    }

    #[test]
    fn mirror_rules(key in knot_key()) {
        let c = knot_db::load(&key).unwrap().complex;
        let k = c.to_companion().unwrap();
        let m = c.mirror();
        prop_assert_eq!(m.tau(), -c.tau());
        prop_assert_eq!(m.to_companion().unwrap(), mirror_companion(&k).unwrap());
        prop_assert_eq!(m.mirror().to_companion().unwrap(), k.clone());
        for j in -(k.genus as i64)..=k.genus as i64 {
            prop_assert_eq!(m.hfk(j), c.hfk(-j).dual_negate().unwrap());
        }
    }

    #[test]
    fn doubles_satisfy_their_invariants(key in knot_key(), t in -30i64..=30, clasp in clasp()) {
        let k = companion(&key);
        let d = double_hfk(&k, t, clasp).unwrap();
        d.check_invariants().unwrap();
        prop_assert_eq!(d.euler_poly().unwrap(), alexander_of_double(t, clasp));
        prop_assert_eq!(d.tau, tau_double(&k, t, clasp));
        for m in -4i64..=4 {
            prop_assert_eq!(d.top.rank_in(m), d.bot.rank_in(m - 2));
        }
        let back = double_to_companion(&d).unwrap();
        back.validate().unwrap();
        prop_assert_eq!(back.tau, d.tau);
        let mirrored = double_hfk(&mirror_companion(&k).unwrap(), -t, clasp.flipped()).unwrap();
        prop_assert_eq!(mirrored, d.mirror().unwrap());
    }

    #[test]
    fn positive_doubles_follow_the_tau_rule(key in knot_key(), t in -30i64..=30) {
        let k = companion(&key);
        prop_assert_eq!(tau_double(&k, t, Clasp::Positive), i64::from(t < 2 * k.tau));
    }

    #[test]
    fn skein_reaches_both_stable_ends(key in knot_key(), extra in 0i64..=6) {
        let k = companion(&key);
        let t_high = (2 * k.tau).max(guard(&k)) + extra;
        let states = skein_interpolate(&k, t_high).unwrap();
        prop_assert_eq!(states.len() as i64, 2 * t_high + 1);
        for s in &states {
            prop_assert_eq!(&s.top, &double_hfk(&k, s.t, Clasp::Positive).unwrap().top);
        }
    }

    #[test]
    fn meridian_sums_match_top_groups(key in knot_key(), extra in 0i64..=10, negative: bool) {
        let k = companion(&key);
        let t = (guard(&k) + extra) * if negative { -1 } else { 1 };
        let r = meridian_sum_check(&k, t).unwrap();
        prop_assert!(r.passed(), "{:?}", r.failures);
        prop_assert_eq!(r.groups.len() as i64, t.abs());
    }

    #[test]
    fn surgery_has_euler_characteristic_one(key in knot_key(), t in -30i64..=30) {
        let h = hf_plus_one(&companion(&key), t).unwrap();
        prop_assert_eq!(h.euler_characteristic().unwrap(), 1);
        prop_assert_eq!(h.rank() % 2, 1);
    }
}

#[test]
fn big_integer_helpers_agree_with_small_ones() {
    let m = IntegerMatrix::from_rows(&[[2, 1], [1, 1]]).unwrap();
    assert_eq!(det(to_big(&m)), BigInt::one());
    assert_eq!(to_big(&mul(&m, &m)), mul_big(&to_big(&m), &to_big(&m)));
}
