//! Named example structures.

use super::{CoeffGroupDesc, ExponentClassDesc, Kind, StructureSpec};
use crate::conway::Surreal;
use crate::number::rat;

fn n(k: i64) -> Surreal {
    Surreal::from_int(k)
}

fn finite(kind: Kind, entries: &[(Surreal, CoeffGroupDesc)]) -> StructureSpec {
    let gamma = ExponentClassDesc::FiniteSet(entries.iter().map(|(y, _)| y.clone()).collect());
    StructureSpec::new(kind, gamma, entries.iter().cloned(), None).expect("fixture is well formed")
}

fn generated(kind: Kind, gamma: ExponentClassDesc, default: CoeffGroupDesc) -> StructureSpec {
    StructureSpec::new(kind, gamma, [], Some(default)).expect("fixture is well formed")
}

/// ℤ as a subgroup.
pub fn integers() -> StructureSpec {
    finite(Kind::Group, &[(n(0), CoeffGroupDesc::integers())])
}

/// 𝔻 as a subgroup.
pub fn dyadics() -> StructureSpec {
    finite(Kind::Group, &[(n(0), CoeffGroupDesc::Dyadics)])
}

/// `{z/2^m : z ∈ ℤ}`.
pub fn scaled(m: u32) -> StructureSpec {
    finite(Kind::Group, &[(n(0), CoeffGroupDesc::ScaledIntegers(m))])
}

/// `{d + a/ω : d ∈ 𝔻, a ∈ ℤ}`.
pub fn dyadics_with_inverse_omega() -> StructureSpec {
    finite(
        Kind::Group,
        &[
            (n(0), CoeffGroupDesc::Dyadics),
            (n(-1), CoeffGroupDesc::integers()),
        ],
    )
}

/// `{a + ω·d : d ∈ 𝔻, a ∈ ℤ}`, the image of [`dyadics_with_inverse_omega`] under `d + a/ω ↦ ω·d + a`.
pub fn omega_dyadics_with_integers() -> StructureSpec {
    finite(
        Kind::Group,
        &[
            (n(0), CoeffGroupDesc::integers()),
            (n(1), CoeffGroupDesc::Dyadics),
        ],
    )
}

/// `{d + a/ω}` with integer `d`; not initial since `1/ω` has prefix `1/2`.
pub fn integers_with_inverse_omega() -> StructureSpec {
    finite(
        Kind::Group,
        &[
            (n(0), CoeffGroupDesc::integers()),
            (n(-1), CoeffGroupDesc::integers()),
        ],
    )
}

/// `ℤ·(1/3)`.
pub fn third_group() -> StructureSpec {
    finite(
        Kind::Group,
        &[(n(0), CoeffGroupDesc::GeneratedBy(vec![rat(1, 3)]))],
    )
}

/// Γ = {−1, 0, 1, 2} with dyadic coefficients throughout.
pub fn four_exponent_group() -> StructureSpec {
    finite(
        Kind::Group,
        &[-1, 0, 1, 2].map(|k| (n(k), CoeffGroupDesc::Dyadics)),
    )
}

/// Polynomials in ω with integer coefficients.
pub fn omega_polynomials() -> StructureSpec {
    generated(
        Kind::Domain,
        ExponentClassDesc::GeneratedMonoid(vec![n(1)]),
        CoeffGroupDesc::integers(),
    )
}

/// ℤ as a subdomain.
pub fn integer_domain() -> StructureSpec {
    finite(Kind::Domain, &[(n(0), CoeffGroupDesc::integers())])
}

/// 𝔻 as a subdomain.
pub fn dyadic_domain() -> StructureSpec {
    finite(Kind::Domain, &[(n(0), CoeffGroupDesc::Dyadics)])
}

/// Γ = {0, 1}, which is not closed under addition.
pub fn non_monoid_domain() -> StructureSpec {
    finite(
        Kind::Domain,
        &[
            (n(0), CoeffGroupDesc::integers()),
            (n(1), CoeffGroupDesc::integers()),
        ],
    )
}

/// Every fixture, including the non-initial ones.
pub fn corpus() -> Vec<(&'static str, StructureSpec)> {
    let mut v = vec![
        ("integers", integers()),
        ("dyadics", dyadics()),
        ("scaled(1)", scaled(1)),
        ("scaled(3)", scaled(3)),
        ("dyadics-with-inverse-omega", dyadics_with_inverse_omega()),
        ("omega-dyadics-with-integers", omega_dyadics_with_integers()),
        ("integers-with-inverse-omega", integers_with_inverse_omega()),
        ("third", third_group()),
        ("four-exponent", four_exponent_group()),
        (
            "dyadic-plus-third",
            finite(
                Kind::Group,
                &[(n(0), CoeffGroupDesc::DyadicsPlus(vec![rat(1, 3)]))],
            ),
        ),
        (
            "integer-group-polys",
            generated(
                Kind::Group,
                ExponentClassDesc::GeneratedMonoid(vec![n(1)]),
                CoeffGroupDesc::integers(),
            ),
        ),
        (
            "half-exponents",
            generated(
                Kind::Group,
                ExponentClassDesc::GeneratedMonoid(vec![rat_s(1, 2)]),
                CoeffGroupDesc::Dyadics,
            ),
        ),
        (
            "integer-half-exponents",
            generated(
                Kind::Group,
                ExponentClassDesc::GeneratedMonoid(vec![rat_s(1, 2)]),
                CoeffGroupDesc::integers(),
            ),
        ),
        (
            "negative-powers",
            generated(
                Kind::Group,
                ExponentClassDesc::GeneratedMonoid(vec![n(-1)]),
                CoeffGroupDesc::Dyadics,
            ),
        ),
        (
            "integer-negative-powers",
            generated(
                Kind::Group,
                ExponentClassDesc::GeneratedMonoid(vec![n(-1)]),
                CoeffGroupDesc::integers(),
            ),
        ),
        (
            "all-integer-powers",
            generated(
                Kind::Group,
                ExponentClassDesc::GeneratedGroup(vec![n(1)]),
                CoeffGroupDesc::Dyadics,
            ),
        ),
        (
            "omega-exponent",
            finite(
                Kind::Group,
                &[
                    (n(0), CoeffGroupDesc::integers()),
                    (Surreal::omega(), CoeffGroupDesc::integers()),
                ],
            ),
        ),
        ("non-monoid", non_monoid_domain()),
    ];
    v.extend(domain_corpus());
    v
}

fn rat_s(a: i64, b: i64) -> Surreal {
    Surreal::from_rational(rat(a, b))
}

/// Domain fixtures, initial or not.
pub fn domain_corpus() -> Vec<(&'static str, StructureSpec)> {
    let monoid = |g: Vec<Surreal>| ExponentClassDesc::GeneratedMonoid(g);
    vec![
        ("omega-polys", omega_polynomials()),
        ("integer-domain", integer_domain()),
        ("dyadic-domain", dyadic_domain()),
        (
            "trivial-domain",
            finite(Kind::Domain, &[(n(0), CoeffGroupDesc::Trivial)]),
        ),
        (
            "sixths-domain",
            finite(
                Kind::Domain,
                &[(n(0), CoeffGroupDesc::DyadicsPlus(vec![rat(1, 3)]))],
            ),
        ),
        (
            "thirds-domain",
            finite(
                Kind::Domain,
                &[(n(0), CoeffGroupDesc::GeneratedBy(vec![rat(1, 3)]))],
            ),
        ),
        (
            "dyadic-polys",
            generated(Kind::Domain, monoid(vec![n(1)]), CoeffGroupDesc::Dyadics),
        ),
        (
            "sixths-polys",
            generated(
                Kind::Domain,
                monoid(vec![n(1)]),
                CoeffGroupDesc::DyadicsPlus(vec![rat(1, 3)]),
            ),
        ),
        (
            "omega-omega-polys",
            generated(
                Kind::Domain,
                monoid(vec![n(1), Surreal::omega()]),
                CoeffGroupDesc::integers(),
            ),
        ),
        (
            "half-exponent-dyadics",
            generated(
                Kind::Domain,
                monoid(vec![rat_s(1, 2)]),
                CoeffGroupDesc::Dyadics,
            ),
        ),
        (
            "half-exponent-integers",
            generated(
                Kind::Domain,
                monoid(vec![rat_s(1, 2)]),
                CoeffGroupDesc::integers(),
            ),
        ),
        (
            "inverse-omega-dyadics",
            generated(Kind::Domain, monoid(vec![n(-1)]), CoeffGroupDesc::Dyadics),
        ),
        (
            "inverse-omega-integers",
            generated(
                Kind::Domain,
                monoid(vec![n(-1)]),
                CoeffGroupDesc::integers(),
            ),
        ),
        (
            "omega-only",
            generated(
                Kind::Domain,
                monoid(vec![Surreal::omega()]),
                CoeffGroupDesc::integers(),
            ),
        ),
        (
            "mixed-constant",
            StructureSpec::new(
                Kind::Domain,
                monoid(vec![n(1)]),
                [(n(0), CoeffGroupDesc::integers())],
                Some(CoeffGroupDesc::Dyadics),
            )
            .expect("fixture is well formed"),
        ),
    ]
}
