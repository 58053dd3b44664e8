//! Initiality, discreteness and omnific containment.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::coeff::{classify, Canon};
use super::gamma::{gamma_is_initial, is_right_predecessor, strict_prefixes};
use super::{Answer, Condition, Failure, Kind, StructureError, StructureSpec, Verdict, Witness};
use crate::conway::{from_sign_expansion, omega_power, sign_expansion, Surreal};
use crate::number::Rational;
use crate::ordinal::Ordinal;
use crate::signexp::{Sign, SignExpansion};

use super::coeff::RealClass;

/// Largest `n` tried for candidates `(1/2^n)·ω^y` in the successor route.
const MAX_HALVINGS: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Discreteness {
    /// Carries the least positive member.
    Discrete(Surreal),
    Dense,
}

impl fmt::Display for Discreteness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Discreteness::Discrete(x) => write!(f, "discrete, least positive {x}"),
            Discreteness::Dense => f.write_str("dense"),
        }
    }
}

fn fail(condition: Condition, witness: Witness) -> Verdict {
    Verdict::Fail(Failure { condition, witness })
}

/// First strict prefix of a member `x` that the structure does not contain.
pub(crate) fn missing_prefix(spec: &StructureSpec, x: &Surreal) -> Option<Surreal> {
    let se = sign_expansion(x).ok()?;
    strict_prefixes(&se)
        .0
        .iter()
        .filter_map(|p| from_sign_expansion(p).ok())
        .find(|v| spec.member(v) == Answer::No)
}

/// Accumulates exhaustiveness and indeterminacy across conditions.
struct Progress {
    exhaustive: bool,
    unknown: Option<String>,
}

impl Progress {
    fn absorb(&mut self, v: Verdict) -> Option<Verdict> {
        match v {
            Verdict::Pass { exhaustive } => {
                self.exhaustive &= exhaustive;
                None
            }
            Verdict::Indeterminate(why) => {
                self.unknown.get_or_insert(why);
                None
            }
            failed => Some(failed),
        }
    }

    fn finish(self) -> Verdict {
        match self.unknown {
            Some(why) => Verdict::Indeterminate(why),
            None => Verdict::Pass {
                exhaustive: self.exhaustive,
            },
        }
    }
}

fn coefficient_condition(spec: &StructureSpec, exponents: &[Surreal]) -> Verdict {
    for y in exponents {
        if let RealClass::NotInitial { witness, missing } =
            classify(spec.coefficients_at(y), spec.kind())
        {
            return fail(
                Condition::CoefficientInitial,
                Witness::MissingPrefix {
                    member: Surreal::monomial(y.clone(), witness),
                    prefix: Surreal::monomial(y.clone(), missing),
                },
            );
        }
    }
    Verdict::Pass { exhaustive: true }
}

fn right_predecessor_condition(spec: &StructureSpec, exponents: &[Surreal]) -> Verdict {
    let mut expansions = Vec::with_capacity(exponents.len());
    for y in exponents {
        match sign_expansion(y) {
            Ok(se) => expansions.push(se),
            Err(e) => return Verdict::Indeterminate(format!("exponent {y}: {e}")),
        }
    }
    for (x, xs) in exponents.iter().zip(&expansions) {
        for (y, ys) in exponents.iter().zip(&expansions) {
            if !is_right_predecessor(ys, xs) {
                continue;
            }
            if let RealClass::Scaled(m) = classify(spec.coefficients_at(y), spec.kind()) {
                let member = omega_power(x);
                let prefix = missing_prefix(spec, &member).unwrap_or_else(|| {
                    Surreal::monomial(
                        y.clone(),
                        Rational::new(BigInt::one(), BigInt::one() << (m + 1)),
                    )
                });
                return fail(
                    Condition::RightPredecessors,
                    Witness::MissingPrefix { member, prefix },
                );
            }
        }
    }
    Verdict::Pass { exhaustive: true }
}

fn monoid_condition(spec: &StructureSpec, exponents: &[Surreal]) -> Verdict {
    if spec.gamma().is_additively_generated()
        && !matches!(spec.gamma(), super::ExponentClassDesc::Below(..))
    {
        return Verdict::Pass { exhaustive: true };
    }
    let mut unknown = None;
    for (i, x) in exponents.iter().enumerate() {
        for y in &exponents[i..] {
            let s = x.add(y);
            match spec.gamma().member(&s, spec.fuel()) {
                Answer::Yes => {}
                Answer::No => {
                    return fail(
                        Condition::MonoidClosure,
                        Witness::NotClosed {
                            left: omega_power(x),
                            right: omega_power(y),
                            result: omega_power(&s),
                        },
                    )
                }
                Answer::Unknown(why) => {
                    unknown.get_or_insert(why);
                }
            }
        }
    }
    unknown.map_or(Verdict::Pass { exhaustive: true }, Verdict::Indeterminate)
}

fn product_condition(spec: &StructureSpec, exponents: &[Surreal]) -> Verdict {
    for (i, x) in exponents.iter().enumerate() {
        for y in &exponents[i..] {
            let s = x.add(y);
            if spec.gamma().member(&s, spec.fuel()) != Answer::Yes {
                continue;
            }
            let (rx, ry, rs) = (
                spec.coefficients_at(x),
                spec.coefficients_at(y),
                spec.coefficients_at(&s),
            );
            if let Some((a, b)) = rx.product_within(ry, rs) {
                let (left, right) = (
                    Surreal::monomial(x.clone(), a),
                    Surreal::monomial(y.clone(), b),
                );
                let result = left.mul(&right);
                return fail(
                    Condition::ProductClosure,
                    Witness::NotClosed {
                        left,
                        right,
                        result,
                    },
                );
            }
        }
    }
    Verdict::Pass { exhaustive: true }
}

fn initiality(spec: &StructureSpec) -> Verdict {
    let members = spec.members_of_gamma();
    let mut progress = Progress {
        exhaustive: members.complete,
        unknown: None,
    };
    let exponents = &members.items;
    let domain = spec.kind() == Kind::Domain;
    if let Some(v) = progress.absorb(gamma_is_initial(spec.gamma(), spec.fuel())) {
        return v;
    }
    if domain {
        if let Some(v) = progress.absorb(monoid_condition(spec, exponents)) {
            return v;
        }
    }
    if let Some(v) = progress.absorb(coefficient_condition(spec, exponents)) {
        return v;
    }
    if let Some(v) = progress.absorb(right_predecessor_condition(spec, exponents)) {
        return v;
    }
    if domain {
        if let Some(v) = progress.absorb(product_condition(spec, exponents)) {
            return v;
        }
    }
    progress.finish()
}

/// Initial-subgroup test: Γ initial, every `ℝ_y` initial, and `𝔻 ⊆ ℝ_y` for right predecessors.
pub fn is_initial_group(spec: &StructureSpec) -> Result<Verdict, StructureError> {
    if spec.kind() != Kind::Group {
        return Err(StructureError::Precondition(
            "is_initial_group needs a group spec".into(),
        ));
    }
    Ok(initiality(spec))
}

/// Initial-subdomain test: the group conditions in the ring reading, plus closure of Γ under `+`
/// and of the coefficient domains under products.
pub fn is_initial_domain(spec: &StructureSpec) -> Result<Verdict, StructureError> {
    if spec.kind() != Kind::Domain {
        return Err(StructureError::Precondition(
            "is_initial_domain needs a domain spec".into(),
        ));
    }
    Ok(initiality(spec))
}

/// Dispatches on the kind of `spec`.
pub fn is_initial(spec: &StructureSpec) -> Verdict {
    initiality(spec)
}

fn require_not_failing(spec: &StructureSpec, op: &str) -> Result<(), StructureError> {
    match initiality(spec) {
        Verdict::Fail(f) => Err(StructureError::Precondition(format!(
            "{op} needs an initial structure, but the check failed: [{}] {}",
            f.condition, f.witness
        ))),
        _ => Ok(()),
    }
}

/// Least positive member from the leading-term shape.
fn definitional_route(spec: &StructureSpec) -> Discreteness {
    let Some(y0) = spec.gamma().minimum() else {
        return Discreteness::Dense;
    };
    match spec.coefficients_at(&y0).canon(spec.kind()) {
        Canon::Cyclic(g) => Discreteness::Discrete(Surreal::monomial(y0, g)),
        Canon::Localized(n) if n.is_one() => Discreteness::Discrete(omega_power(&y0)),
        _ => Discreteness::Dense,
    }
}

/// A member `(1/2^n)·ω^(-α)` whose left immediate successor is not a member.
fn successor_route(spec: &StructureSpec) -> Result<Discreteness, StructureError> {
    for y in spec
        .members_of_gamma()
        .items
        .iter()
        .filter(|y| !y.is_positive())
    {
        if y.neg().to_ordinal().is_none() {
            continue;
        }
        for n in 0..=MAX_HALVINGS {
            let g = Surreal::monomial(y.clone(), Rational::new(BigInt::one(), BigInt::one() << n));
            if spec.member(&g) != Answer::Yes {
                break;
            }
            let internal = |e: String| StructureError::OutOfRange(format!("candidate {g}: {e}"));
            let mut se: SignExpansion = sign_expansion(&g).map_err(|e| internal(e.to_string()))?;
            se.push(Sign::Minus, &Ordinal::one());
            let child = from_sign_expansion(&se).map_err(|e| internal(e.to_string()))?;
            if spec.member(&child) == Answer::No {
                return Ok(Discreteness::Discrete(g));
            }
        }
    }
    Ok(Discreteness::Dense)
}

/// Discrete (with its least positive member) or dense, decided by two routes that must agree.
pub fn is_discrete(spec: &StructureSpec) -> Result<Discreteness, StructureError> {
    require_not_failing(spec, "is_discrete")?;
    let definitional = definitional_route(spec);
    let predecessor = successor_route(spec)?;
    if definitional != predecessor {
        return Err(StructureError::RouteDisagreement {
            definitional: definitional.to_string(),
            predecessor: predecessor.to_string(),
        });
    }
    Ok(definitional)
}

/// Γ nonnegative and `ℝ_0 ⊆ ℤ`.
pub fn is_subdomain_of_oz(spec: &StructureSpec) -> Result<bool, StructureError> {
    if spec.kind() != Kind::Domain {
        return Err(StructureError::Precondition(
            "is_subdomain_of_oz needs a domain spec".into(),
        ));
    }
    require_not_failing(spec, "is_subdomain_of_oz")?;
    let zero = Surreal::zero();
    Ok(spec.gamma().is_nonnegative()
        && matches!(spec.coefficients_at(&zero).canon(Kind::Domain), Canon::Localized(n) if n.is_one()))
}
