#![allow(dead_code)]

use num_bigint::BigInt;
use rand::Rng;
use surreal_core::conway::{from_sign_expansion, sign_expansion, Surreal};
use surreal_core::number::Rational;
use surreal_core::ordinal::Ordinal;
use surreal_core::signexp::{Sign, SignExpansion};

pub fn dyadic(rng: &mut impl Rng, max_int: i64, max_exp: u32) -> Rational {
    let e = rng.gen_range(0..=max_exp);
    let span = max_int << e;
    Rational::new(
        BigInt::from(rng.gen_range(-span..=span)),
        BigInt::from(1i64 << e),
    )
}

pub fn nonzero_dyadic(rng: &mut impl Rng, max_int: i64, max_exp: u32) -> Rational {
    loop {
        let r = dyadic(rng, max_int, max_exp);
        if r != Rational::from_integer(BigInt::from(0)) {
            return r;
        }
    }
}

/// A normal form with dyadic coefficients and exponents nested at most `depth` deep.
pub fn surreal(rng: &mut impl Rng, depth: u32) -> Surreal {
    let n = rng.gen_range(0..=3);
    let terms = (0..n).map(|_| {
        let y = if depth == 0 || rng.gen_bool(0.5) {
            Surreal::from_rational(dyadic(rng, 2, 2))
        } else {
            surreal(rng, depth - 1)
        };
        (y, nonzero_dyadic(rng, 3, 2))
    });
    Surreal::from_terms(terms.collect::<Vec<_>>())
}

/// A dyadic rational as a surreal.
pub fn small(rng: &mut impl Rng) -> Surreal {
    Surreal::from_rational(dyadic(rng, 4, 3))
}

/// Prefix lengths that end inside or at the end of each run: run starts plus
/// the truncations of the run length and their successors.
pub fn cut_points(se: &SignExpansion) -> Vec<Ordinal> {
    let mut out = Vec::new();
    let mut start = Ordinal::zero();
    for (_, c) in se.runs() {
        let mut partial = Ordinal::zero();
        for (e, k) in c.atoms() {
            for extra in [Ordinal::zero(), Ordinal::one(), Ordinal::from_nat(2u32)] {
                let t = partial.add(&extra);
                if t < *c {
                    out.push(start.add(&t));
                }
            }
            partial = partial.add(&Ordinal::monomial(e.clone(), k.clone()));
        }
        start = start.add(c);
    }
    out.sort();
    out.dedup();
    out
}

/// Sign-expansion prefixes of `x` that decode to normal forms, with the sign that follows each.
pub fn decodable_prefixes(x: &Surreal) -> Vec<(Surreal, Sign)> {
    let se = sign_expansion(x).unwrap();
    cut_points(&se)
        .into_iter()
        .filter_map(|len| {
            let next = se.sign_at(&len)?;
            from_sign_expansion(&se.prefix(&len))
                .ok()
                .map(|p| (p, next))
        })
        .collect()
}
