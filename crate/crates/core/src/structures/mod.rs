//! Finitely described subgroups and subdomains of the surreals, given as an
//! exponent class `Γ` with a coefficient group `ℝ_y` for each `y ∈ Γ`, and
//! decision procedures for initiality, discreteness, containment in the
//! omnific integers, and convex restriction.
//!
//! A structure is the set of finite sums `Σ ω^(y_i)·r_i` with `y_i ∈ Γ` and
//! `r_i ∈ ℝ_(y_i)`, so it is truncation closed and cross sectional by shape.
//! Checks that quantify over an infinite `Γ` run over the members produced
//! within fuel and report whether that enumeration was exhaustive.

mod checks;
mod coeff;
mod convex;
pub mod fixtures;
mod format;
mod gamma;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::conway::Surreal;
use crate::signexp::SignExpansion;

pub use checks::{
    is_discrete, is_initial, is_initial_domain, is_initial_group, is_subdomain_of_oz, Discreteness,
};
pub use coeff::{classify_real_subdomain, classify_real_subgroup, CoeffGroupDesc, RealClass};
pub use convex::section9_map;
pub use convex::{
    archimedean_height, convex_restrict, convex_verdicts, is_archimedean,
    section9_isomorphism_check, Archimedean, ConvexReport, EmbeddingReport, Height,
};
pub use format::parse_spec;
pub use gamma::{gamma_is_initial, ordinal_ceiling, ExponentClassDesc, Members, ENUM_CAP};

/// Default enumeration depth for checks over generated exponent classes.
pub const DEFAULT_FUEL: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Group,
    Domain,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid structure: {0}")]
    Invalid(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("{0}")]
    OutOfRange(String),
    #[error(
        "discreteness routes disagree: definitional {definitional}, predecessor {predecessor}"
    )]
    RouteDisagreement {
        definitional: String,
        predecessor: String,
    },
}

/// Three-valued answer for fuel-bounded questions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Answer {
    Yes,
    No,
    Unknown(String),
}

impl From<bool> for Answer {
    fn from(b: bool) -> Self {
        if b {
            Answer::Yes
        } else {
            Answer::No
        }
    }
}

impl Answer {
    pub fn is_yes(&self) -> bool {
        *self == Answer::Yes
    }
}

/// A number, or a sign expansion that is not a finite normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Point {
    Value(Surreal),
    Signs(SignExpansion),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// `exponent ∈ Γ` has the strict prefix `prefix ∉ Γ`.
    ExponentPrefix { exponent: Surreal, prefix: Point },
    /// `member` is in the structure and its strict prefix `prefix` is not.
    MissingPrefix { member: Surreal, prefix: Surreal },
    /// `left` and `right` are in the structure and `result = left·right` is not.
    NotClosed {
        left: Surreal,
        right: Surreal,
        result: Surreal,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    /// Γ is initial.
    GammaInitial,
    /// Each `ℝ_y` is initial.
    CoefficientInitial,
    /// `𝔻 ⊆ ℝ_y` whenever `y ∈ R_s(x)`.
    RightPredecessors,
    /// Γ is closed under addition.
    MonoidClosure,
    /// `ℝ_x·ℝ_y ⊆ ℝ_(x+y)`.
    ProductClosure,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub condition: Condition,
    pub witness: Witness,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// `exhaustive` when every member of Γ was examined.
    Pass {
        exhaustive: bool,
    },
    Fail(Failure),
    Indeterminate(String),
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureSpec {
    kind: Kind,
    gamma: ExponentClassDesc,
    coeff: BTreeMap<Surreal, CoeffGroupDesc>,
    default: Option<CoeffGroupDesc>,
    fuel: usize,
}

impl StructureSpec {
    pub fn new(
        kind: Kind,
        gamma: ExponentClassDesc,
        coeff: impl IntoIterator<Item = (Surreal, CoeffGroupDesc)>,
        default: Option<CoeffGroupDesc>,
    ) -> Result<Self, StructureError> {
        StructureSpec::with_fuel(kind, gamma, coeff, default, DEFAULT_FUEL)
    }

    pub fn with_fuel(
        kind: Kind,
        gamma: ExponentClassDesc,
        coeff: impl IntoIterator<Item = (Surreal, CoeffGroupDesc)>,
        default: Option<CoeffGroupDesc>,
        fuel: usize,
    ) -> Result<Self, StructureError> {
        let spec = StructureSpec {
            kind,
            gamma: gamma.normalized(),
            coeff: coeff.into_iter().collect(),
            default,
            fuel,
        };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<(), StructureError> {
        let invalid = |m: String| Err(StructureError::Invalid(m));
        if let ExponentClassDesc::FiniteSet(s) = &self.gamma {
            if s.is_empty() {
                return invalid("exponent class is empty".into());
            }
            if self.default.is_none() {
                if let Some(y) = s.iter().find(|y| !self.coeff.contains_key(y)) {
                    return invalid(format!(
                        "no coefficient group for exponent {y} and no default"
                    ));
                }
            }
        } else if self.default.is_none() {
            return invalid("a generated exponent class needs a default coefficient group".into());
        }
        for (y, d) in &self.coeff {
            match self.gamma.member(y, self.fuel) {
                Answer::Yes => {}
                Answer::No => {
                    return invalid(format!(
                        "coefficient entry for {y}, which is not in the exponent class"
                    ))
                }
                Answer::Unknown(why) => {
                    return invalid(format!("cannot confirm {y} is an exponent: {why}"))
                }
            }
            self.check_descriptor(d, &format!("exponent {y}"))?;
        }
        if let Some(d) = &self.default {
            self.check_descriptor(d, "the default")?;
        }
        Ok(())
    }

    fn check_descriptor(&self, d: &CoeffGroupDesc, at: &str) -> Result<(), StructureError> {
        if d.generators().iter().any(|g| *g == crate::number::int(0)) {
            return Err(StructureError::Invalid(format!(
                "zero generator in the coefficient group for {at}"
            )));
        }
        if !d.contains(&crate::number::int(1), self.kind) {
            return Err(StructureError::Invalid(format!(
                "coefficient group {d} for {at} does not contain 1, so the structure would not contain its leader"
            )));
        }
        Ok(())
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn gamma(&self) -> &ExponentClassDesc {
        &self.gamma
    }

    pub fn coefficient_map(&self) -> &BTreeMap<Surreal, CoeffGroupDesc> {
        &self.coeff
    }

    pub fn default_coefficients(&self) -> Option<&CoeffGroupDesc> {
        self.default.as_ref()
    }

    pub fn fuel(&self) -> usize {
        self.fuel
    }

    pub fn with_fuel_level(mut self, fuel: usize) -> Self {
        self.fuel = fuel;
        self
    }

    /// `ℝ_y` for a member `y` of Γ.
    pub fn coefficients_at(&self, y: &Surreal) -> &CoeffGroupDesc {
        self.coeff
            .get(y)
            .or(self.default.as_ref())
            .expect("validated: every exponent has a coefficient group")
    }

    /// Every exponent of `x` is in Γ and every coefficient in the matching `ℝ_y`.
    pub fn member(&self, x: &Surreal) -> Answer {
        let mut unknown = None;
        for (y, r) in x.terms() {
            match self.gamma.member(y, self.fuel) {
                Answer::No => return Answer::No,
                Answer::Unknown(why) => {
                    unknown.get_or_insert(why);
                    continue;
                }
                Answer::Yes => {}
            }
            if !self.coefficients_at(y).contains(r, self.kind) {
                return Answer::No;
            }
        }
        unknown.map_or(Answer::Yes, Answer::Unknown)
    }

    pub(crate) fn members_of_gamma(&self) -> Members {
        self.gamma.enumerate(self.fuel)
    }
}

/// Membership of `x` in the structure described by `spec`.
pub fn member(x: &Surreal, spec: &StructureSpec) -> Answer {
    spec.member(x)
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Group => "group",
            Kind::Domain => "domain",
        })
    }
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Answer::Yes => f.write_str("true"),
            Answer::No => f.write_str("false"),
            Answer::Unknown(why) => write!(f, "unknown ({why})"),
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Value(x) => write!(f, "{x}"),
            Point::Signs(s) => write!(f, "{s}"),
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::ExponentPrefix { exponent, prefix } => {
                write!(
                    f,
                    "exponent {exponent} has prefix {prefix} outside the exponent class"
                )
            }
            Witness::MissingPrefix { member, prefix } => {
                write!(f, "member {member} has prefix {prefix} outside")
            }
            Witness::NotClosed {
                left,
                right,
                result,
            } => write!(f, "({left})*({right}) = {result} is outside"),
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::GammaInitial => "exponent class initial",
            Condition::CoefficientInitial => "coefficient groups initial",
            Condition::RightPredecessors => "dyadics at right predecessors",
            Condition::MonoidClosure => "exponent class closed under +",
            Condition::ProductClosure => "coefficient products",
        })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass { exhaustive: true } => f.write_str("pass"),
            Verdict::Pass { exhaustive: false } => f.write_str("pass (within fuel)"),
            Verdict::Fail(Failure { condition, witness }) => {
                write!(f, "fail [{condition}]: {witness}")
            }
            Verdict::Indeterminate(why) => write!(f, "indeterminate: {why}"),
        }
    }
}
