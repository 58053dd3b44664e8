//! Tree laws checked over every finite sign expansion up to a fixed rank.

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{One, Zero};
use surreal_core::signexp::{
    se_cmp, se_predecessors, se_simpler, se_simplest_between, Sign, SignExpansion,
};

fn all_up_to(rank: usize) -> Vec<Vec<Sign>> {
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..rank {
        let mut next = Vec::new();
        for s in &layer {
            for sign in [Sign::Minus, Sign::Plus] {
                let mut t: Vec<Sign> = s.clone();
                t.push(sign);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Value of a finite expansion, by the binary-search reading of the tree.
fn value(signs: &[Sign]) -> BigRational {
    let mut x = BigRational::zero();
    let mut step = BigRational::one();
    let mut halving = false;
    for (i, &s) in signs.iter().enumerate() {
        if !halving && i > 0 && s != signs[0] {
            halving = true;
        }
        if halving {
            step /= BigRational::from_integer(2.into());
        }
        if s == Sign::Plus {
            x += &step;
        } else {
            x -= &step;
        }
    }
    x
}

fn se(s: &[Sign]) -> SignExpansion {
    SignExpansion::from_signs(s)
}

fn is_prefix(a: &[Sign], b: &[Sign]) -> bool {
    a.len() < b.len() && b[..a.len()] == *a
}

#[test]
fn order_matches_dyadic_values() {
    let all = all_up_to(6);
    for a in &all {
        for b in &all {
            assert_eq!(
                se_cmp(&se(a), &se(b)),
                value(a).cmp(&value(b)),
                "{a:?} {b:?}"
            );
        }
    }
}

#[test]
fn simpler_is_strict_prefix_and_implies_comparable() {
    let all = all_up_to(6);
    for a in &all {
        for b in &all {
            let s = se_simpler(&se(a), &se(b));
            assert_eq!(s, is_prefix(a, b));
            if s {
                assert_ne!(se_cmp(&se(a), &se(b)), Ordering::Equal);
            }
        }
    }
}

#[test]
fn predecessors_reconstruct_and_characterise_descendants() {
    let all = all_up_to(6);
    for a in &all {
        let x = se(a);
        let (l, r) = se_predecessors(&x).unwrap();
        assert_eq!(se_simplest_between(&l, &r).unwrap(), x);
        for b in &all {
            let y = se(b);
            let between = l.iter().all(|p| *p < y) && r.iter().all(|p| y < *p);
            assert_eq!(se_simpler(&x, &y), between && y != x, "{a:?} {b:?}");
        }
    }
}

#[test]
fn incomparable_iff_common_prefix_strictly_between() {
    let all = all_up_to(6);
    for a in &all {
        for b in &all {
            if a == b {
                continue;
            }
            let incomparable = !is_prefix(a, b) && !is_prefix(b, a);
            let k = a.iter().zip(b.iter()).take_while(|(x, y)| x == y).count();
            let c = se(&a[..k]);
            let (x, y) = (se(a), se(b));
            let strictly_between = (x < c && c < y) || (y < c && c < x);
            assert_eq!(incomparable, strictly_between, "{a:?} {b:?}");
        }
    }
}

#[test]
fn simplest_between_is_minimal_for_singleton_cuts() {
    let all = all_up_to(7);
    let small = all_up_to(5);
    for a in &small {
        for b in &small {
            let (l, r) = (se(a), se(b));
            if l >= r {
                continue;
            }
            let got =
                se_simplest_between(std::slice::from_ref(&l), std::slice::from_ref(&r)).unwrap();
            let best = all
                .iter()
                .map(|s| se(s))
                .filter(|z| l < *z && *z < r)
                .min_by_key(|z| z.finite_rank().unwrap())
                .unwrap();
            assert_eq!(got, best);
        }
    }
}
