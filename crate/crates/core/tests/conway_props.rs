mod common;

use common::decodable_prefixes;

use std::cmp::Ordering;

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use surreal_core::conway::{
    from_hahn, from_sign_expansion, is_omnific, leader_cut, omega_power, oz_floor, oz_truncation,
    sign_expansion, srl_add, srl_cmp, srl_mul, srl_simpler, srl_simplest_between, to_hahn,
    truncations, ConwayError, Fuel, GeneticOracle, HahnSeries, Surreal,
};
use surreal_core::number::{Dyadic, Rational};
use surreal_core::signexp::{se_cmp, se_simpler, Sign, SignExpansion};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn one() -> Surreal {
    Surreal::one()
}

fn dyadic_prefixes(r: &Rational) -> Vec<Rational> {
    let signs = Dyadic::from_rational(r).unwrap().signs().unwrap();
    (0..signs.len())
        .map(|k| {
            Dyadic::from_sign_expansion(&SignExpansion::from_signs(&signs[..k]))
                .unwrap()
                .to_rational()
        })
        .collect()
}

/// Term-by-term convolution over an unsorted list, sorted afterwards.
fn convolve(a: &HahnSeries, b: &HahnSeries) -> HahnSeries {
    let mut acc: Vec<(Rational, Surreal)> = Vec::new();
    for (ra, ya) in &a.terms {
        for (rb, yb) in &b.terms {
            let y = srl_add(ya, yb);
            let r = ra * rb;
            match acc.iter_mut().find(|(_, z)| *z == y) {
                Some(slot) => slot.0 += r,
                None => acc.push((r, y)),
            }
        }
    }
    finish(acc)
}

fn merge(a: &HahnSeries, b: &HahnSeries) -> HahnSeries {
    let mut acc = a.terms.clone();
    for (r, y) in &b.terms {
        match acc.iter_mut().find(|(_, z)| z == y) {
            Some(slot) => slot.0 += r,
            None => acc.push((r.clone(), y.clone())),
        }
    }
    finish(acc)
}

fn finish(mut acc: Vec<(Rational, Surreal)>) -> HahnSeries {
    acc.retain(|(r, _)| *r != Rational::from_integer(BigInt::from(0)));
    acc.sort_by(|(_, y), (_, z)| srl_cmp(z, y));
    HahnSeries { terms: acc }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn ring_laws(seed: u64) {
        let mut g = rng(seed);
        let (x, y, z) = (common::surreal(&mut g, 2), common::surreal(&mut g, 2), common::surreal(&mut g, 2));
        prop_assert_eq!(srl_add(&x, &y), srl_add(&y, &x));
        prop_assert_eq!(srl_add(&srl_add(&x, &y), &z), srl_add(&x, &srl_add(&y, &z)));
        prop_assert_eq!(srl_mul(&x, &y), srl_mul(&y, &x));
        prop_assert_eq!(srl_mul(&srl_mul(&x, &y), &z), srl_mul(&x, &srl_mul(&y, &z)));
        prop_assert_eq!(srl_mul(&x, &srl_add(&y, &z)), srl_add(&srl_mul(&x, &y), &srl_mul(&x, &z)));
        prop_assert_eq!(srl_mul(&x, &one()), x.clone());
        prop_assert!(x.sub(&x).is_zero());
        if x.is_positive() && y.is_positive() {
            prop_assert!(srl_mul(&x, &y).is_positive());
        }
        if x < y {
            prop_assert!(srl_add(&x, &z) < srl_add(&y, &z));
        }
    }

    #[test]
    fn sign_expansion_is_an_order_embedding(seed: u64) {
        let mut g = rng(seed);
        let (x, y) = (common::surreal(&mut g, 2), common::surreal(&mut g, 2));
        let (sx, sy) = (sign_expansion(&x).unwrap(), sign_expansion(&y).unwrap());
        prop_assert_eq!(se_cmp(&sx, &sy), srl_cmp(&x, &y));
        prop_assert_eq!(from_sign_expansion(&sx).unwrap(), x.clone());
        prop_assert_eq!(sx == sy, x == y);
        let text: SignExpansion = sx.to_string().parse().unwrap();
        prop_assert_eq!(text, sx);
    }

    #[test]
    fn leaders_preserve_simplicity(seed: u64) {
        let mut g = rng(seed);
        let x = common::surreal(&mut g, 1);
        let y = if seed % 2 == 0 { common::surreal(&mut g, 1) } else {
            match decodable_prefixes(&x).first() { Some((p, _)) => p.clone(), None => x.clone() }
        };
        let lhs = srl_simpler(&omega_power(&x), &omega_power(&y)).unwrap();
        prop_assert_eq!(lhs, srl_simpler(&x, &y).unwrap());
        let lhs = srl_simpler(&omega_power(&y), &omega_power(&x)).unwrap();
        prop_assert_eq!(lhs, srl_simpler(&y, &x).unwrap());
    }

    #[test]
    fn truncations_are_simpler(seed: u64) {
        let x = common::surreal(&mut rng(seed), 2);
        for t in truncations(&x) {
            prop_assert!(srl_simpler(&t, &x).unwrap(), "{} vs {}", t, x);
        }
    }

    #[test]
    fn coefficient_simplicity_lifts(seed: u64) {
        let mut g = rng(seed);
        let y = common::surreal(&mut g, 1);
        let b = common::nonzero_dyadic(&mut g, 4, 3);
        let w = omega_power(&y);
        for a in dyadic_prefixes(&b).into_iter().filter(|a| *a != Rational::from_integer(BigInt::from(0))) {
            prop_assert!(srl_simpler(&w.scale(&a), &w.scale(&b)).unwrap(), "a={} b={} y={}", a, b, y);
        }
    }

    #[test]
    fn right_predecessors_squeeze(seed: u64) {
        let x = common::surreal(&mut rng(seed), 1);
        let wx = omega_power(&x);
        for (y, _) in decodable_prefixes(&x).into_iter().filter(|(_, s)| *s == Sign::Minus) {
            for n in 0..6u32 {
                let v = omega_power(&y).scale(&Rational::new(BigInt::from(1), BigInt::from(1u64 << n)));
                prop_assert!(srl_simpler(&v, &wx).unwrap(), "n={} y={} x={}", n, y, x);
            }
        }
    }

    #[test]
    fn leader_cuts_bracket_the_leader(seed: u64) {
        let y = common::small(&mut rng(seed));
        let w = omega_power(&y);
        let cut = leader_cut(&y).unwrap();
        let (left, right) = cut.realize(4);
        prop_assert!(left.iter().all(|l| *l < w) && right.iter().all(|r| w < *r));
        let s = srl_simplest_between(&left, &right, &Fuel::default()).unwrap();
        prop_assert!(s == w || srl_simpler(&s, &w).unwrap(), "{} for {}", s, w);
    }

    #[test]
    fn hahn_map_is_a_ring_isomorphism(seed: u64) {
        let mut g = rng(seed);
        let (x, y) = (common::surreal(&mut g, 2), common::surreal(&mut g, 2));
        prop_assert_eq!(to_hahn(&srl_add(&x, &y)), merge(&to_hahn(&x), &to_hahn(&y)));
        prop_assert_eq!(to_hahn(&srl_mul(&x, &y)), convolve(&to_hahn(&x), &to_hahn(&y)));
        prop_assert_eq!(from_hahn(&to_hahn(&x)), x.clone());
        prop_assert_eq!(to_hahn(&from_hahn(&to_hahn(&y))), to_hahn(&y));
    }

    #[test]
    fn omnific_truncation_bounds(seed: u64) {
        let a = common::surreal(&mut rng(seed), 2);
        let b = oz_truncation(&a);
        prop_assert!(is_omnific(&b));
        prop_assert!(b.sub(&one()) < a && a < b.add(&one()), "a={} b={}", a, b);
        prop_assert!(b == a || srl_simpler(&b, &a).unwrap(), "a={} b={}", a, b);
        let f = oz_floor(&a);
        prop_assert!(is_omnific(&f) && f <= a && a < f.add(&one()));
    }

    #[test]
    fn simplest_between_lies_between(seed: u64) {
        let mut g = rng(seed);
        let mut xs: Vec<Surreal> = (0..4).map(|_| common::surreal(&mut g, 1)).collect();
        xs.sort();
        xs.dedup();
        let split = xs.len() / 2;
        let (left, right) = xs.split_at(split);
        match srl_simplest_between(left, right, &Fuel::default()) {
            Ok(s) => {
                prop_assert!(left.iter().all(|l| *l < s) && right.iter().all(|r| s < *r));
                for x in left.iter().chain(right) {
                    prop_assert!(!srl_simpler(x, &s).unwrap() || left.iter().chain(right).any(|z| z == x));
                }
            }
            Err(ConwayError::NotInImage(_)) | Err(ConwayError::FuelExhausted(_)) => {}
            Err(e) => prop_assert!(false, "{}", e),
        }
    }

    #[test]
    fn genetic_recursion_agrees_on_small_dyadics(seed: u64) {
        let oracle = GeneticOracle::new(6);
        let mut g = rng(seed);
        for _ in 0..8 {
            let (x, y) = (common::small(&mut g), common::small(&mut g));
            let (sx, sy) = (sign_expansion(&x).unwrap(), sign_expansion(&y).unwrap());
            if sx.finite_rank().unwrap() > 6 || sy.finite_rank().unwrap() > 6 {
                continue;
            }
            prop_assert_eq!(oracle.add(&x, &y).unwrap(), srl_add(&x, &y));
            prop_assert_eq!(oracle.mul(&x, &y).unwrap(), srl_mul(&x, &y));
        }
    }
}

#[test]
fn simplicity_is_prefix_order() {
    let mut g = rng(7);
    for _ in 0..200 {
        let (x, y) = (common::surreal(&mut g, 1), common::surreal(&mut g, 1));
        let (sx, sy) = (sign_expansion(&x).unwrap(), sign_expansion(&y).unwrap());
        assert_eq!(srl_simpler(&x, &y).unwrap(), se_simpler(&sx, &sy));
        if srl_simpler(&x, &y).unwrap() {
            assert_ne!(srl_cmp(&x, &y), Ordering::Equal);
        }
    }
}

#[test]
fn sampled_properties_are_not_vacuous() {
    let mut g = rng(11);
    let (mut squeezed, mut between) = (0, 0);
    for _ in 0..300 {
        let x = common::surreal(&mut g, 1);
        squeezed += decodable_prefixes(&x)
            .iter()
            .filter(|(_, s)| *s == Sign::Minus)
            .count();
        let mut xs: Vec<Surreal> = (0..4).map(|_| common::surreal(&mut g, 1)).collect();
        xs.sort();
        xs.dedup();
        let (left, right) = xs.split_at(xs.len() / 2);
        between += srl_simplest_between(left, right, &Fuel::default()).is_ok() as usize;
    }
    assert!(squeezed > 300, "{squeezed}");
    assert!(between > 250, "{between}");
}
