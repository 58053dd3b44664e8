//! Archimedean height, convex restrictions `A[ω^τ]`, and the `d + a/ω` example.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::checks::is_initial;
use super::gamma::ordinal_ceiling;
use super::{
    is_initial_group, Answer, CoeffGroupDesc, Condition, ExponentClassDesc, Failure,
    StructureError, StructureSpec, Verdict, Witness,
};
use crate::conway::{is_omnific, omega_power, Surreal};
use crate::number::Rational;
use crate::ordinal::Ordinal;

const SEED: u64 = 0x5eed_c0de;

/// The height `ω^exponent`; `exact` is false when `exponent` is only a lower bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Height {
    pub exponent: Ordinal,
    pub exact: bool,
}

impl Height {
    pub fn value(&self) -> Ordinal {
        Ordinal::omega_pow(self.exponent.clone())
    }
}

impl fmt::Display for Height {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.value();
        if self.exact {
            write!(f, "{v}")
        } else {
            write!(f, ">= {v}")
        }
    }
}

/// Least ordinal outside Γ, or a lower bound for it.
fn least_missing_ordinal(g: &ExponentClassDesc, fuel: usize) -> (Ordinal, bool) {
    let has = |a: &Ordinal| g.member(&Surreal::from_ordinal(a), fuel);
    match g {
        ExponentClassDesc::FiniteSet(_) => {
            let k = (0u64..)
                .find(|&k| has(&Ordinal::from_nat(k)) != Answer::Yes)
                .expect("finite sets miss some natural");
            (Ordinal::from_nat(k), true)
        }
        ExponentClassDesc::Below(inner, tau) => {
            let (e, exact) = least_missing_ordinal(inner, fuel);
            if e <= *tau {
                (e, exact)
            } else {
                (tau.clone(), true)
            }
        }
        _ => {
            for (k, a) in [Ordinal::zero(), Ordinal::one()].into_iter().enumerate() {
                match has(&a) {
                    Answer::Yes => {}
                    Answer::No => return (Ordinal::from_nat(k as u64), true),
                    Answer::Unknown(_) => return (Ordinal::from_nat(k as u64), false),
                }
            }
            // Γ is additively closed and contains 1, so it contains every ordinal below the first missing ω^j.
            for j in 1..=fuel as u64 {
                let a = Ordinal::omega_pow(Ordinal::from_nat(j));
                match has(&a) {
                    Answer::Yes => {}
                    Answer::No => return (a, true),
                    Answer::Unknown(_) => return (a, false),
                }
            }
            (Ordinal::omega_pow(Ordinal::from_nat(fuel as u64)), false)
        }
    }
}

/// Supremum of `β + 1` over ordinal members `β`, as `ω^ε` with `ε` the least ordinal outside Γ.
pub fn archimedean_height(spec: &StructureSpec) -> Result<Height, StructureError> {
    if let Verdict::Fail(f) = is_initial(spec) {
        return Err(StructureError::Precondition(format!(
            "height needs an initial structure: [{}] {}",
            f.condition, f.witness
        )));
    }
    let (exponent, exact) = least_missing_ordinal(spec.gamma(), spec.fuel());
    Ok(Height { exponent, exact })
}

/// `A[ω^τ]`: the members whose leading exponent is at most some ordinal below `τ`.
pub fn convex_restrict(
    spec: &StructureSpec,
    tau: &Ordinal,
) -> Result<StructureSpec, StructureError> {
    let height = archimedean_height(spec)?;
    if tau.is_zero() || *tau > height.exponent {
        return Err(StructureError::OutOfRange(format!(
            "tau = {tau} is outside [1, {}]",
            height.exponent
        )));
    }
    if *tau == height.exponent && height.exact {
        return Ok(spec.clone());
    }
    let bounded = |y: &Surreal| ordinal_ceiling(y) < *tau;
    let gamma = match spec.gamma() {
        ExponentClassDesc::FiniteSet(s) => {
            ExponentClassDesc::FiniteSet(s.iter().filter(|y| bounded(y)).cloned().collect())
        }
        ExponentClassDesc::Below(inner, sigma) => {
            ExponentClassDesc::Below(inner.clone(), sigma.min(tau).clone())
        }
        g => ExponentClassDesc::Below(Box::new(g.clone()), tau.clone()),
    };
    let coeff: Vec<(Surreal, CoeffGroupDesc)> = spec
        .coefficient_map()
        .iter()
        .filter(|(y, _)| bounded(y))
        .map(|(y, d)| (y.clone(), d.clone()))
        .collect();
    StructureSpec::with_fuel(
        spec.kind(),
        gamma,
        coeff,
        spec.default_coefficients().cloned(),
        spec.fuel(),
    )
}

/// A random member with up to `terms` terms.
fn sample_member(
    spec: &StructureSpec,
    exponents: &[Surreal],
    rng: &mut ChaCha8Rng,
    terms: usize,
) -> Surreal {
    let k = rng.gen_range(0..=terms);
    Surreal::from_terms((0..k).map(|_| {
        let y = exponents[rng.gen_range(0..exponents.len())].clone();
        let r = spec.coefficients_at(&y).sample(
            spec.kind(),
            rng.gen_range(-6..=6),
            rng.gen_range(0..4),
        );
        (y, r)
    }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexReport {
    pub tau: Ordinal,
    pub restricted: StructureSpec,
    pub initial: Verdict,
    /// Betweenness triples that applied, and the first violation.
    pub convex_checked: usize,
    pub convex_violation: Option<(Surreal, Surreal, Surreal)>,
    /// Sampled differences and sums, and the first that escaped.
    pub group_checked: usize,
    pub group_violation: Option<(Surreal, Surreal)>,
    pub product: Verdict,
    pub mul_indecomposable: bool,
}

impl ConvexReport {
    /// Every verdict holds and product closure matches multiplicative indecomposability of `ω^τ`.
    pub fn consistent(&self) -> bool {
        self.initial.passed()
            && self.convex_violation.is_none()
            && self.group_violation.is_none()
            && self.product.passed() == self.mul_indecomposable
    }
}

impl fmt::Display for ConvexReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "tau {}: restricted gamma {}",
            self.tau,
            self.restricted.gamma()
        )?;
        writeln!(f, "initial: {}", self.initial)?;
        match &self.convex_violation {
            None => writeln!(f, "convex: pass ({} triples)", self.convex_checked)?,
            Some((x, y, z)) => writeln!(f, "convex: fail, {x} < {y} < {z}")?,
        }
        match &self.group_violation {
            None => writeln!(f, "group closure: pass ({} pairs)", self.group_checked)?,
            Some((x, y)) => writeln!(f, "group closure: fail at {x}, {y}")?,
        }
        write!(
            f,
            "product closure: {}; w^{} multiplicatively indecomposable: {}",
            self.product, self.tau, self.mul_indecomposable
        )
    }
}

/// Product closure of the ordinal leaders of `A[ω^τ]`.
fn leader_products(restricted: &StructureSpec) -> Verdict {
    let members = restricted.members_of_gamma();
    let ordinals: Vec<&Surreal> = members
        .items
        .iter()
        .filter(|y| y.to_ordinal().is_some())
        .collect();
    for (i, a) in ordinals.iter().enumerate() {
        for b in &ordinals[i..] {
            let (left, right) = (omega_power(a), omega_power(b));
            let result = left.mul(&right);
            match restricted.member(&result) {
                Answer::Yes => {}
                Answer::No => {
                    return Verdict::Fail(Failure {
                        condition: Condition::ProductClosure,
                        witness: Witness::NotClosed {
                            left,
                            right,
                            result,
                        },
                    })
                }
                Answer::Unknown(why) => return Verdict::Indeterminate(why),
            }
        }
    }
    Verdict::Pass {
        exhaustive: members.complete,
    }
}

/// Initiality, sampled convexity and group closure, and product closure of `A[ω^τ]`.
pub fn convex_verdicts(
    spec: &StructureSpec,
    tau: &Ordinal,
    samples: usize,
) -> Result<ConvexReport, StructureError> {
    let restricted = convex_restrict(spec, tau)?;
    let initial = is_initial(&restricted);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let inner = restricted.members_of_gamma().items;
    let outer = spec.members_of_gamma().items;
    let (mut convex_checked, mut convex_violation) = (0, None);
    let (mut group_checked, mut group_violation) = (0, None);
    if !inner.is_empty() {
        for _ in 0..samples {
            let (a, b) = (
                sample_member(&restricted, &inner, &mut rng, 3),
                sample_member(&restricted, &inner, &mut rng, 3),
            );
            let y = sample_member(spec, &outer, &mut rng, 3);
            let (x, z) = if a <= b {
                (a.clone(), b.clone())
            } else {
                (b.clone(), a.clone())
            };
            if x < y && y < z {
                convex_checked += 1;
                if convex_violation.is_none() && restricted.member(&y) != Answer::Yes {
                    convex_violation = Some((x, y, z));
                }
            }
            group_checked += 1;
            if group_violation.is_none()
                && (restricted.member(&a.sub(&b)) != Answer::Yes
                    || restricted.member(&a.add(&b)) != Answer::Yes)
            {
                group_violation = Some((a, b));
            }
        }
    }
    let mul_indecomposable = Ordinal::omega_pow(tau.clone())
        .is_mul_indecomposable()
        .map_err(|e| StructureError::OutOfRange(e.to_string()))?;
    Ok(ConvexReport {
        tau: tau.clone(),
        product: leader_products(&restricted),
        restricted,
        initial,
        convex_checked,
        convex_violation,
        group_checked,
        group_violation,
        mul_indecomposable,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Archimedean {
    /// No counterexample among the sampled pairs.
    Holds { pairs: usize },
    /// `0 < small < large` and no multiple of `small` exceeds `large`.
    Fails { small: Surreal, large: Surreal },
}

impl fmt::Display for Archimedean {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Archimedean::Holds { pairs } => write!(f, "archimedean on {pairs} sampled pairs"),
            Archimedean::Fails { small, large } => {
                write!(f, "not archimedean: no n has n*({small}) > {large}")
            }
        }
    }
}

/// Direct test over the leaders and sampled positive members that each `0 < x < y` has some `n` with `n·x > y`.
///
/// For a pair this holds exactly when the leading exponents agree, which is what is compared.
pub fn is_archimedean(spec: &StructureSpec, samples: usize) -> Archimedean {
    let exponents = spec.members_of_gamma().items;
    let mut positives: Vec<Surreal> = exponents.iter().map(omega_power).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    positives.extend(
        (0..samples)
            .map(|_| sample_member(spec, &exponents, &mut rng, 3))
            .filter(|x| !x.is_zero())
            .map(|x| if x.is_negative() { x.neg() } else { x }),
    );
    let mut pairs = 0;
    for x in &positives {
        for y in &positives {
            if x < y {
                pairs += 1;
                if x.leading_exponent() < y.leading_exponent() {
                    return Archimedean::Fails {
                        small: x.clone(),
                        large: y.clone(),
                    };
                }
            }
        }
    }
    Archimedean::Holds { pairs }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingReport {
    pub pairs: usize,
    pub additive: bool,
    pub order_preserving: bool,
    pub injective: bool,
    pub into_oz: bool,
    pub image_initial: Verdict,
}

impl EmbeddingReport {
    pub fn passed(&self) -> bool {
        self.additive
            && self.order_preserving
            && self.injective
            && self.into_oz
            && self.image_initial.passed()
    }
}

impl fmt::Display for EmbeddingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} pairs: additive {}, order preserving {}, injective {}, into Oz {}, image {}",
            self.pairs,
            self.additive,
            self.order_preserving,
            self.injective,
            self.into_oz,
            self.image_initial
        )
    }
}

/// `f(d + a/ω) = ω·d + a`.
pub fn section9_map(x: &Surreal) -> Surreal {
    let d = x.coefficient(&Surreal::zero());
    let a = x.coefficient(&Surreal::from_int(-1));
    Surreal::from_terms([(Surreal::one(), d), (Surreal::zero(), a)])
}

/// Checks the map from `{d + a/ω}` onto `{ω·d + a}` on random pairs.
pub fn section9_isomorphism_check(pairs: usize) -> EmbeddingReport {
    let domain = super::fixtures::dyadics_with_inverse_omega();
    let image = super::fixtures::omega_dyadics_with_integers();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let element = |rng: &mut ChaCha8Rng| {
        let d = Rational::new(
            BigInt::from(rng.gen_range(-64i64..=64)),
            BigInt::one() << rng.gen_range(0u32..6),
        );
        let a = Rational::from_integer(BigInt::from(rng.gen_range(-8i64..=8)));
        Surreal::from_terms([(Surreal::zero(), d), (Surreal::from_int(-1), a)])
    };
    let mut report = EmbeddingReport {
        pairs,
        additive: true,
        order_preserving: true,
        injective: true,
        into_oz: true,
        image_initial: is_initial_group(&image).expect("image is a group spec"),
    };
    for _ in 0..pairs {
        let (x, y) = (element(&mut rng), element(&mut rng));
        debug_assert!(domain.member(&x).is_yes() && domain.member(&y).is_yes());
        let (fx, fy) = (section9_map(&x), section9_map(&y));
        report.additive &= section9_map(&x.add(&y)) == fx.add(&fy);
        report.order_preserving &= x.cmp(&y) == fx.cmp(&fy);
        report.injective &= (x == y) == (fx == fy);
        report.into_oz &= is_omnific(&fx) && image.member(&fx).is_yes();
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::fixtures;
    use crate::syntax::parse_surreal;

    fn ord(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    #[test]
    fn heights() {
        assert_eq!(
            archimedean_height(&fixtures::integers()).unwrap().value(),
            Ordinal::omega()
        );
        assert_eq!(
            archimedean_height(&fixtures::dyadics_with_inverse_omega())
                .unwrap()
                .value(),
            Ordinal::omega()
        );
        let polys = archimedean_height(&fixtures::omega_polynomials()).unwrap();
        assert_eq!((polys.value(), polys.exact), (ord("w^w"), true));
        assert_eq!(
            archimedean_height(&fixtures::four_exponent_group())
                .unwrap()
                .value(),
            ord("w^3")
        );
        assert!(archimedean_height(&fixtures::integers_with_inverse_omega()).is_err());
    }

    #[test]
    fn restrictions() {
        let a = fixtures::four_exponent_group();
        let gamma = |t: u64| {
            convex_restrict(&a, &Ordinal::from_nat(t))
                .unwrap()
                .gamma()
                .clone()
        };
        let set = |v: &[i64]| {
            ExponentClassDesc::FiniteSet(v.iter().map(|&k| Surreal::from_int(k)).collect())
        };
        assert_eq!(gamma(1), set(&[-1, 0]));
        assert_eq!(gamma(2), set(&[-1, 0, 1]));
        assert_eq!(convex_restrict(&a, &Ordinal::from_nat(3u32)).unwrap(), a);
        assert!(matches!(
            convex_restrict(&a, &Ordinal::from_nat(4u32)),
            Err(StructureError::OutOfRange(_))
        ));
        assert!(matches!(
            convex_restrict(&a, &Ordinal::zero()),
            Err(StructureError::OutOfRange(_))
        ));
    }

    #[test]
    fn product_closure_tracks_multiplicative_indecomposability() {
        let a = fixtures::four_exponent_group();
        for t in 1..=3u64 {
            let report = convex_verdicts(&a, &Ordinal::from_nat(t), 400).unwrap();
            assert!(report.consistent(), "{report}");
            assert!(report.convex_checked > 20, "{report}");
        }
        let r2 = convex_verdicts(&a, &Ordinal::from_nat(2u32), 50).unwrap();
        let w = Surreal::omega();
        assert_eq!(
            r2.product,
            Verdict::Fail(Failure {
                condition: Condition::ProductClosure,
                witness: Witness::NotClosed {
                    left: w.clone(),
                    right: w.clone(),
                    result: w.mul(&w)
                }
            })
        );
        let rw = convex_verdicts(&fixtures::omega_polynomials(), &Ordinal::omega(), 200).unwrap();
        assert!(rw.consistent() && rw.mul_indecomposable, "{rw}");
    }

    #[test]
    fn archimedean_is_not_height() {
        assert!(
            matches!(is_archimedean(&fixtures::integers(), 200), Archimedean::Holds { pairs } if pairs > 0)
        );
        assert!(matches!(
            is_archimedean(&fixtures::dyadics(), 200),
            Archimedean::Holds { .. }
        ));
        let Archimedean::Fails { small, large } =
            is_archimedean(&fixtures::dyadics_with_inverse_omega(), 200)
        else {
            panic!()
        };
        assert_eq!(
            (small, large),
            (omega_power(&Surreal::from_int(-1)), Surreal::one())
        );
        assert_eq!(
            archimedean_height(&fixtures::dyadics_with_inverse_omega())
                .unwrap()
                .value(),
            Ordinal::omega()
        );
    }

    #[test]
    fn shift_map_and_check() {
        assert_eq!(
            section9_map(&parse_surreal("w^(-1)").unwrap()),
            Surreal::one()
        );
        assert_eq!(
            section9_map(&parse_surreal("1/2 + 3*w^(-1)").unwrap()),
            parse_surreal("w*1/2 + 3").unwrap()
        );
        let report = section9_isomorphism_check(1000);
        assert!(report.passed(), "{report}");
    }
}
