//! Archimedean coefficient groups and domains `ℝ_y ⊆ ℚ`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Kind;
use crate::number::{rational_gcd, rational_signs, signs_value, Rational};

/// A finitely described subgroup (or, for domains, the subring it generates) of ℚ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoeffGroupDesc {
    Trivial,
    /// `{z/2^m : z ∈ ℤ}`; `ScaledIntegers(0)` is ℤ.
    ScaledIntegers(u32),
    Dyadics,
    /// Generated by 𝔻 together with the extras.
    DyadicsPlus(Vec<Rational>),
    GeneratedBy(Vec<Rational>),
}

/// Classification of a coefficient group or domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RealClass {
    Trivial,
    /// `{z/2^m}`; for domains only `m = 0` occurs.
    Scaled(u32),
    ContainsDyadics,
    /// `witness` is a member whose sign-expansion prefix `missing` is not.
    NotInitial {
        witness: Rational,
        missing: Rational,
    },
}

/// Normalized form used for membership.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Canon {
    Zero,
    /// `g·ℤ` with `g > 0`.
    Cyclic(Rational),
    /// `𝔻 + ℤ/n` for odd `n`: numbers whose odd denominator part divides `n`.
    DyadicsOver(BigInt),
    /// `ℤ[1/n]`: numbers whose denominator has only prime factors of `n`.
    Localized(BigInt),
}

fn odd_part(n: &BigInt) -> BigInt {
    let mut n = n.clone();
    while n.is_even() && !n.is_zero() {
        n >>= 1;
    }
    n
}

/// True iff every prime factor of `d` divides `n`.
fn divides_power(d: &BigInt, n: &BigInt) -> bool {
    let mut d = d.abs();
    loop {
        let g = d.gcd(n);
        if g.is_one() {
            return d.is_one();
        }
        while (&d % &g).is_zero() {
            d /= &g;
        }
    }
}

fn lcm_of_denominators<'a>(rs: impl Iterator<Item = &'a Rational>) -> BigInt {
    rs.fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

impl CoeffGroupDesc {
    pub fn integers() -> Self {
        CoeffGroupDesc::ScaledIntegers(0)
    }

    pub(crate) fn canon(&self, kind: Kind) -> Canon {
        let two = || BigInt::from(2);
        match kind {
            Kind::Group => match self {
                CoeffGroupDesc::Trivial => Canon::Zero,
                CoeffGroupDesc::ScaledIntegers(m) => {
                    Canon::Cyclic(Rational::new(BigInt::one(), BigInt::one() << *m))
                }
                CoeffGroupDesc::Dyadics => Canon::DyadicsOver(BigInt::one()),
                CoeffGroupDesc::DyadicsPlus(extra) => Canon::DyadicsOver(
                    extra
                        .iter()
                        .fold(BigInt::one(), |acc, r| acc.lcm(&odd_part(r.denom()))),
                ),
                CoeffGroupDesc::GeneratedBy(gens) => {
                    let mut it = gens.iter().filter(|g| !g.is_zero());
                    match it.next() {
                        None => Canon::Zero,
                        Some(first) => {
                            Canon::Cyclic(it.fold(first.abs(), |acc, g| rational_gcd(&acc, g)))
                        }
                    }
                }
            },
            Kind::Domain => Canon::Localized(match self {
                CoeffGroupDesc::Trivial | CoeffGroupDesc::ScaledIntegers(0) => BigInt::one(),
                CoeffGroupDesc::ScaledIntegers(_) | CoeffGroupDesc::Dyadics => two(),
                CoeffGroupDesc::DyadicsPlus(extra) => two() * lcm_of_denominators(extra.iter()),
                CoeffGroupDesc::GeneratedBy(gens) => lcm_of_denominators(gens.iter()),
            }),
        }
    }

    pub fn contains(&self, r: &Rational, kind: Kind) -> bool {
        self.canon(kind).contains(r)
    }

    /// `ℝ_self · ℝ_other ⊆ ℝ_target` for domains.
    pub(crate) fn product_within(
        &self,
        other: &Self,
        target: &Self,
    ) -> Option<(Rational, Rational)> {
        let (Canon::Localized(a), Canon::Localized(b), Canon::Localized(c)) = (
            self.canon(Kind::Domain),
            other.canon(Kind::Domain),
            target.canon(Kind::Domain),
        ) else {
            unreachable!("domain descriptors are localizations")
        };
        if divides_power(&(&a * &b), &c) {
            None
        } else {
            Some((
                Rational::new(BigInt::one(), a),
                Rational::new(BigInt::one(), b),
            ))
        }
    }

    /// The descriptor in canonical variant form for the given reading.
    pub fn canonical(&self, kind: Kind) -> CoeffGroupDesc {
        match self.canon(kind) {
            Canon::Zero => CoeffGroupDesc::Trivial,
            Canon::Cyclic(g) => match power_of_two_reciprocal(&g) {
                Some(m) => CoeffGroupDesc::ScaledIntegers(m),
                None => CoeffGroupDesc::GeneratedBy(vec![g]),
            },
            Canon::DyadicsOver(n) if n.is_one() => CoeffGroupDesc::Dyadics,
            Canon::DyadicsOver(n) => {
                CoeffGroupDesc::DyadicsPlus(vec![Rational::new(BigInt::one(), n)])
            }
            Canon::Localized(n) if n.is_one() => CoeffGroupDesc::integers(),
            Canon::Localized(n) if n.is_even() => {
                let odd = odd_part(&n);
                if odd.is_one() {
                    CoeffGroupDesc::Dyadics
                } else {
                    CoeffGroupDesc::DyadicsPlus(vec![Rational::new(BigInt::one(), odd)])
                }
            }
            Canon::Localized(n) => {
                CoeffGroupDesc::GeneratedBy(vec![Rational::new(BigInt::one(), n)])
            }
        }
    }

    /// Generators, for descriptors that carry them.
    pub fn generators(&self) -> &[Rational] {
        match self {
            CoeffGroupDesc::DyadicsPlus(g) | CoeffGroupDesc::GeneratedBy(g) => g,
            _ => &[],
        }
    }

    /// Members with small numerators and denominators, used for sampling.
    pub(crate) fn sample(&self, kind: Kind, k: i64, j: u32) -> Rational {
        let k = BigInt::from(k);
        match self.canon(kind) {
            Canon::Zero => Rational::zero(),
            Canon::Cyclic(g) => g * k,
            Canon::DyadicsOver(n) => {
                Rational::new(k, BigInt::one() << j) + Rational::new(BigInt::one(), n)
            }
            Canon::Localized(n) => Rational::new(k, num_traits::pow(n, j as usize)),
        }
    }
}

fn power_of_two_reciprocal(g: &Rational) -> Option<u32> {
    let d = g.denom();
    let bits = d.bits();
    (g.numer().is_one() && (d & (d - BigInt::one())).is_zero())
        .then(|| bits.saturating_sub(1) as u32)
}

impl Canon {
    pub(crate) fn contains(&self, r: &Rational) -> bool {
        match self {
            Canon::Zero => r.is_zero(),
            Canon::Cyclic(g) => (r / g).is_integer(),
            Canon::DyadicsOver(n) => (n % odd_part(r.denom())).is_zero(),
            Canon::Localized(n) => divides_power(r.denom(), n),
        }
    }

    /// First sign-expansion prefix of `w` that is not a member.
    fn missing_prefix(&self, w: &Rational) -> Rational {
        const LIMIT: usize = 1 << 12;
        let signs = rational_signs(w, LIMIT);
        (0..signs.len())
            .map(|k| signs_value(&signs[..k]))
            .find(|p| !self.contains(p))
            .expect("a non-initial group has a member with a missing prefix of small rank")
    }
}

/// Which arm of the initial-subgroup trichotomy `d` falls into.
pub fn classify_real_subgroup(d: &CoeffGroupDesc) -> RealClass {
    let canon = d.canon(Kind::Group);
    match &canon {
        Canon::Zero => RealClass::Trivial,
        Canon::Cyclic(g) => match power_of_two_reciprocal(g) {
            Some(m) => RealClass::Scaled(m),
            None => RealClass::NotInitial {
                witness: g.clone(),
                missing: canon.missing_prefix(g),
            },
        },
        Canon::DyadicsOver(_) => RealClass::ContainsDyadics,
        Canon::Localized(_) => unreachable!("group reading"),
    }
}

/// Which arm of the initial-subdomain dichotomy `d` falls into, reading `d` as the ring it generates.
pub fn classify_real_subdomain(d: &CoeffGroupDesc) -> RealClass {
    let canon = d.canon(Kind::Domain);
    let Canon::Localized(n) = &canon else {
        unreachable!("domain reading")
    };
    if n.is_one() {
        RealClass::Scaled(0)
    } else if n.is_even() {
        RealClass::ContainsDyadics
    } else {
        let witness = Rational::new(BigInt::one(), n.clone());
        RealClass::NotInitial {
            missing: canon.missing_prefix(&witness),
            witness,
        }
    }
}

pub(crate) fn classify(d: &CoeffGroupDesc, kind: Kind) -> RealClass {
    match kind {
        Kind::Group => classify_real_subgroup(d),
        Kind::Domain => classify_real_subdomain(d),
    }
}

impl fmt::Display for CoeffGroupDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[Rational]| {
            v.iter()
                .map(|r| r.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        match self {
            CoeffGroupDesc::Trivial => f.write_str("trivial"),
            CoeffGroupDesc::ScaledIntegers(0) => f.write_str("integers"),
            CoeffGroupDesc::ScaledIntegers(m) => write!(f, "scaled({m})"),
            CoeffGroupDesc::Dyadics => f.write_str("dyadic"),
            CoeffGroupDesc::DyadicsPlus(g) => write!(f, "dyadic+{{{}}}", list(g)),
            CoeffGroupDesc::GeneratedBy(g) => write!(f, "gen{{{}}}", list(g)),
        }
    }
}

impl fmt::Display for RealClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealClass::Trivial => f.write_str("trivial"),
            RealClass::Scaled(0) => f.write_str("integers"),
            RealClass::Scaled(m) => write!(f, "scaled({m})"),
            RealClass::ContainsDyadics => f.write_str("contains dyadics"),
            RealClass::NotInitial { witness, missing } => {
                write!(
                    f,
                    "not initial: {witness} is a member but its prefix {missing} is not"
                )
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::{int, rat, rational_is_prefix};

    #[test]
    fn group_classification() {
        assert_eq!(
            classify_real_subgroup(&CoeffGroupDesc::integers()),
            RealClass::Scaled(0)
        );
        assert_eq!(
            classify_real_subgroup(&CoeffGroupDesc::Dyadics),
            RealClass::ContainsDyadics
        );
        assert_eq!(
            classify_real_subgroup(&CoeffGroupDesc::Trivial),
            RealClass::Trivial
        );
        let third = CoeffGroupDesc::GeneratedBy(vec![rat(1, 3)]);
        assert_eq!(
            classify_real_subgroup(&third),
            RealClass::NotInitial {
                witness: rat(1, 3),
                missing: rat(1, 2)
            }
        );
        assert_eq!(
            classify_real_subgroup(&CoeffGroupDesc::GeneratedBy(vec![rat(3, 8), rat(1, 4)])),
            RealClass::Scaled(3)
        );
        assert_eq!(
            classify_real_subgroup(&CoeffGroupDesc::DyadicsPlus(vec![rat(2, 3)])),
            RealClass::ContainsDyadics
        );
        let RealClass::NotInitial { witness, missing } =
            classify_real_subgroup(&CoeffGroupDesc::GeneratedBy(vec![int(2)]))
        else {
            panic!()
        };
        assert_eq!((witness, missing), (int(2), int(1)));
    }

    #[test]
    fn domain_classification() {
        assert_eq!(
            classify_real_subdomain(&CoeffGroupDesc::integers()),
            RealClass::Scaled(0)
        );
        assert_eq!(
            classify_real_subdomain(&CoeffGroupDesc::DyadicsPlus(vec![rat(1, 3)])),
            RealClass::ContainsDyadics
        );
        let third = CoeffGroupDesc::GeneratedBy(vec![rat(1, 3)]);
        assert_eq!(
            classify_real_subdomain(&third),
            RealClass::NotInitial {
                witness: rat(1, 3),
                missing: rat(1, 2)
            }
        );
        assert_eq!(
            classify_real_subdomain(&CoeffGroupDesc::ScaledIntegers(2)),
            RealClass::ContainsDyadics
        );
    }

    #[test]
    fn canonical_forms() {
        let half = CoeffGroupDesc::GeneratedBy(vec![rat(1, 2)]);
        assert_eq!(half.canonical(Kind::Domain), CoeffGroupDesc::Dyadics);
        assert_eq!(
            half.canonical(Kind::Group),
            CoeffGroupDesc::ScaledIntegers(1)
        );
        let mixed = CoeffGroupDesc::DyadicsPlus(vec![rat(1, 3), rat(5, 12)]);
        assert_eq!(
            mixed.canonical(Kind::Group),
            CoeffGroupDesc::DyadicsPlus(vec![rat(1, 3)])
        );
        assert_eq!(
            CoeffGroupDesc::GeneratedBy(vec![rat(2, 3), rat(1, 2)]).canonical(Kind::Group),
            CoeffGroupDesc::GeneratedBy(vec![rat(1, 6)])
        );
    }

    #[test]
    fn membership() {
        let g = CoeffGroupDesc::DyadicsPlus(vec![rat(1, 3)]);
        assert!(g.contains(&rat(7, 12), Kind::Group));
        assert!(!g.contains(&rat(1, 9), Kind::Group));
        assert!(g.contains(&rat(1, 9), Kind::Domain));
        assert!(!g.contains(&rat(1, 5), Kind::Domain));
        assert!(CoeffGroupDesc::ScaledIntegers(2).contains(&rat(3, 4), Kind::Group));
        assert!(!CoeffGroupDesc::ScaledIntegers(2).contains(&rat(3, 8), Kind::Group));
        assert!(CoeffGroupDesc::integers()
            .product_within(&CoeffGroupDesc::Dyadics, &CoeffGroupDesc::integers())
            .is_some());
        assert!(CoeffGroupDesc::integers()
            .product_within(&CoeffGroupDesc::Dyadics, &CoeffGroupDesc::Dyadics)
            .is_none());
    }

    #[test]
    fn witnesses_are_genuine() {
        for d in [
            CoeffGroupDesc::GeneratedBy(vec![rat(1, 3)]),
            CoeffGroupDesc::GeneratedBy(vec![rat(3, 4)]),
            CoeffGroupDesc::GeneratedBy(vec![rat(1, 6)]),
            CoeffGroupDesc::GeneratedBy(vec![int(5)]),
            CoeffGroupDesc::GeneratedBy(vec![rat(-7, 10)]),
        ] {
            let RealClass::NotInitial { witness, missing } = classify_real_subgroup(&d) else {
                panic!("{d}")
            };
            assert!(
                d.contains(&witness, Kind::Group) && !d.contains(&missing, Kind::Group),
                "{d}"
            );
            assert!(rational_is_prefix(&missing, &witness), "{d}");
        }
    }
}
