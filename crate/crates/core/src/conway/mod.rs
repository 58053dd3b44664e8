//! Surreal numbers in Conway normal form.
//!
//! A [`Surreal`] is a finite sum `Σ ω^(y_i)·r_i` with strictly decreasing
//! surreal exponents `y_i` and nonzero rational coefficients `r_i`. Values
//! are canonical on construction, so structural equality is numeric equality.
//! Arithmetic is that of the Hahn field: terms compare lexicographically and
//! multiply by adding exponents.

mod genetic;
mod sign;

pub use genetic::{
    genetic_add_oracle, genetic_mul_oracle, GeneticError, GeneticOracle, DEFAULT_RANK_BOUND,
};
pub use sign::{
    birthday, from_sign_expansion, from_sign_expansion_with, sign_expansion, sign_expansion_with,
    srl_simpler, srl_simplest_between, Fuel,
};

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::number::{floor, Rational};
use crate::ordinal::Ordinal;
use crate::signexp::SignExpError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConwayError {
    #[error(
        "coefficient {0} is not dyadic; its sign expansion is not finitely run-length encodable"
    )]
    NonDyadic(String),
    #[error("fuel exhausted: {0}")]
    FuelExhausted(String),
    #[error("cut violation: {left} is not less than {right}")]
    CutViolation { left: Surreal, right: Surreal },
    #[error("{0} is not the sign expansion of a supported normal form")]
    NotInImage(String),
    #[error("option sets of {0} are not finitely representable")]
    Unrepresentable(String),
    #[error(transparent)]
    SignExp(SignExpError),
}

impl From<SignExpError> for ConwayError {
    fn from(e: SignExpError) -> Self {
        match e {
            SignExpError::FuelExhausted(n) => ConwayError::FuelExhausted(format!("run budget {n}")),
            other => ConwayError::SignExp(other),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Surreal {
    terms: Vec<(Surreal, Rational)>,
}

impl Surreal {
    pub fn zero() -> Self {
        Surreal { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Surreal::from_rational(Rational::one())
    }

    pub fn omega() -> Self {
        omega_power(&Surreal::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        Surreal::monomial(Surreal::zero(), r)
    }

    pub fn from_int(n: i64) -> Self {
        Surreal::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    /// `ω^y · r`.
    pub fn monomial(y: Surreal, r: Rational) -> Self {
        if r.is_zero() {
            Surreal::zero()
        } else {
            Surreal {
                terms: vec![(y, r)],
            }
        }
    }

    /// Canonicalizes an arbitrary list of terms: sorts, merges equal exponents, drops zeros.
    pub fn from_terms(terms: impl IntoIterator<Item = (Surreal, Rational)>) -> Self {
        let mut acc: BTreeMap<Surreal, Rational> = BTreeMap::new();
        for (y, r) in terms {
            *acc.entry(y).or_insert_with(Rational::zero) += r;
        }
        Surreal {
            terms: acc
                .into_iter()
                .rev()
                .filter(|(_, r)| !r.is_zero())
                .collect(),
        }
    }

    /// The ordinal `α` as a surreal.
    pub fn from_ordinal(a: &Ordinal) -> Self {
        Surreal {
            terms: a
                .terms()
                .iter()
                .map(|(e, n)| {
                    (
                        Surreal::from_ordinal(e),
                        Rational::from_integer(BigInt::from(n.clone())),
                    )
                })
                .collect(),
        }
    }

    /// The ordinal this surreal equals, if it is one.
    pub fn to_ordinal(&self) -> Option<Ordinal> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (y, r) in &self.terms {
            if !r.is_integer() || !r.is_positive() {
                return None;
            }
            terms.push((y.to_ordinal()?, r.to_integer().to_biguint()?));
        }
        Ordinal::from_terms(terms).ok()
    }

    pub fn terms(&self) -> &[(Surreal, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.terms
            .first()
            .map(|(_, r)| r.is_positive())
            .unwrap_or(false)
    }

    pub fn is_negative(&self) -> bool {
        self.terms
            .first()
            .map(|(_, r)| r.is_negative())
            .unwrap_or(false)
    }

    /// The rational value, if every exponent is 0.
    pub fn to_rational(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(y, r)] if y.is_zero() => Some(r.clone()),
            _ => None,
        }
    }

    /// Coefficient of `ω^y` (zero when absent).
    pub fn coefficient(&self, y: &Surreal) -> Rational {
        self.terms
            .iter()
            .find(|(e, _)| e == y)
            .map(|(_, r)| r.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn leading_exponent(&self) -> Option<&Surreal> {
        self.terms.first().map(|(y, _)| y)
    }

    /// Depth of exponent nesting.
    pub fn nesting(&self) -> usize {
        self.terms
            .iter()
            .map(|(y, _)| if y.is_zero() { 0 } else { 1 + y.nesting() })
            .max()
            .unwrap_or(0)
    }

    pub fn add(&self, rhs: &Surreal) -> Surreal {
        srl_add(self, rhs)
    }

    pub fn neg(&self) -> Surreal {
        srl_neg(self)
    }

    pub fn sub(&self, rhs: &Surreal) -> Surreal {
        srl_add(self, &srl_neg(rhs))
    }

    pub fn mul(&self, rhs: &Surreal) -> Surreal {
        srl_mul(self, rhs)
    }

    pub fn scale(&self, r: &Rational) -> Surreal {
        if r.is_zero() {
            return Surreal::zero();
        }
        Surreal {
            terms: self.terms.iter().map(|(y, c)| (y.clone(), c * r)).collect(),
        }
    }

    pub fn unicode(&self) -> Printed<'_> {
        Printed {
            x: self,
            omega: "ω",
            explicit: false,
        }
    }

    /// Fully explicit normal form `w^(y)*r + ...`.
    pub fn nf(&self) -> Printed<'_> {
        Printed {
            x: self,
            omega: "w",
            explicit: true,
        }
    }

    pub fn nf_unicode(&self) -> Printed<'_> {
        Printed {
            x: self,
            omega: "ω",
            explicit: true,
        }
    }
}

/// Order of the Hahn field: the first differing term decides, a missing term counting as coefficient 0.
pub fn srl_cmp(x: &Surreal, y: &Surreal) -> Ordering {
    for ((ex, rx), (ey, ry)) in x.terms.iter().zip(&y.terms) {
        match srl_cmp(ex, ey) {
            Ordering::Greater => return rx.cmp(&Rational::zero()),
            Ordering::Less => return Rational::zero().cmp(ry),
            Ordering::Equal => {
                let o = rx.cmp(ry);
                if o != Ordering::Equal {
                    return o;
                }
            }
        }
    }
    let n = x.terms.len().min(y.terms.len());
    match (x.terms.get(n), y.terms.get(n)) {
        (Some((_, r)), None) => r.cmp(&Rational::zero()),
        (None, Some((_, r))) => Rational::zero().cmp(r),
        _ => Ordering::Equal,
    }
}

impl Ord for Surreal {
    fn cmp(&self, other: &Self) -> Ordering {
        srl_cmp(self, other)
    }
}

impl PartialOrd for Surreal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn srl_add(x: &Surreal, y: &Surreal) -> Surreal {
    let mut out = Vec::with_capacity(x.terms.len() + y.terms.len());
    let (mut i, mut j) = (0, 0);
    while i < x.terms.len() && j < y.terms.len() {
        let (ex, rx) = &x.terms[i];
        let (ey, ry) = &y.terms[j];
        match srl_cmp(ex, ey) {
            Ordering::Greater => {
                out.push((ex.clone(), rx.clone()));
                i += 1;
            }
            Ordering::Less => {
                out.push((ey.clone(), ry.clone()));
                j += 1;
            }
            Ordering::Equal => {
                let r = rx + ry;
                if !r.is_zero() {
                    out.push((ex.clone(), r));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&x.terms[i..]);
    out.extend_from_slice(&y.terms[j..]);
    Surreal { terms: out }
}

pub fn srl_neg(x: &Surreal) -> Surreal {
    Surreal {
        terms: x.terms.iter().map(|(y, r)| (y.clone(), -r)).collect(),
    }
}

/// Convolution of the two term lists.
pub fn srl_mul(x: &Surreal, y: &Surreal) -> Surreal {
    let mut acc: BTreeMap<Surreal, Rational> = BTreeMap::new();
    for (ex, rx) in &x.terms {
        for (ey, ry) in &y.terms {
            *acc.entry(srl_add(ex, ey)).or_insert_with(Rational::zero) += rx * ry;
        }
    }
    Surreal {
        terms: acc
            .into_iter()
            .rev()
            .filter(|(_, r)| !r.is_zero())
            .collect(),
    }
}

/// The leader `ω^y`.
pub fn omega_power(y: &Surreal) -> Surreal {
    Surreal::monomial(y.clone(), Rational::one())
}

/// All proper prefixes of the term list, shortest first.
pub fn truncations(x: &Surreal) -> Vec<Surreal> {
    (0..x.terms.len())
        .map(|k| Surreal {
            terms: x.terms[..k].to_vec(),
        })
        .collect()
}

/// Non-negative exponents only, with an integer constant term.
pub fn is_omnific(x: &Surreal) -> bool {
    x.terms
        .iter()
        .all(|(y, r)| match srl_cmp(y, &Surreal::zero()) {
            Ordering::Less => false,
            Ordering::Equal => r.is_integer(),
            Ordering::Greater => true,
        })
}

/// An omnific integer `b` with `b - 1 < a < b + 1`, and `b = a` or `b` simpler than `a`.
///
/// Terms with positive exponent are kept and terms with negative exponent
/// dropped. The constant term becomes the largest integer `k` with
/// `(positive part) + k < a`: `⌊r⌋` for non-integer `r`, `r` when the
/// negative-exponent tail is positive, and `r - 1` when it is negative.
pub fn oz_truncation(a: &Surreal) -> Surreal {
    if is_omnific(a) {
        return a.clone();
    }
    let zero = Surreal::zero();
    let mut terms = Vec::new();
    let mut constant = Rational::zero();
    let mut tail_sign = Ordering::Equal;
    for (y, r) in &a.terms {
        match srl_cmp(y, &zero) {
            Ordering::Greater => terms.push((y.clone(), r.clone())),
            Ordering::Equal => constant = r.clone(),
            Ordering::Less => {
                if tail_sign == Ordering::Equal {
                    tail_sign = r.cmp(&Rational::zero());
                }
            }
        }
    }
    let k = if !constant.is_integer() {
        floor(&constant)
    } else if tail_sign == Ordering::Less {
        constant.to_integer() - BigInt::one()
    } else {
        constant.to_integer()
    };
    terms.push((zero, Rational::from_integer(k)));
    Surreal::from_terms(terms)
}

/// `⌊a⌋` in the omnific integers: the largest omnific `b ≤ a`.
pub fn oz_floor(a: &Surreal) -> Surreal {
    let b = oz_truncation(a);
    if b > *a {
        b.sub(&Surreal::one())
    } else {
        b
    }
}

/// The symbolic cut `ω^y = {0, n·ω^(y^L) | 2^(-n)·ω^(y^R)}` over the canonical options of `y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeaderCut {
    pub y: Surreal,
    pub left_options: Vec<Surreal>,
    pub right_options: Vec<Surreal>,
}

impl LeaderCut {
    /// The finite cut obtained by letting `n` range over `1..=bound`.
    pub fn realize(&self, bound: u32) -> (Vec<Surreal>, Vec<Surreal>) {
        let mut left = vec![Surreal::zero()];
        let mut right = Vec::new();
        for n in 1..=bound {
            for yl in &self.left_options {
                left.push(omega_power(yl).scale(&Rational::from_integer(BigInt::from(n))));
            }
            for yr in &self.right_options {
                right
                    .push(omega_power(yr).scale(&Rational::new(BigInt::one(), BigInt::one() << n)));
            }
        }
        (left, right)
    }
}

impl fmt::Display for LeaderCut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{0")?;
        for yl in &self.left_options {
            write!(f, ", n*w^({yl})")?;
        }
        f.write_str(" | ")?;
        for (i, yr) in self.right_options.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "w^({yr})/2^n")?;
        }
        f.write_str("}")
    }
}

/// The canonical cut for `ω^y`, with options the strict sign-expansion prefixes of `y`.
pub fn leader_cut(y: &Surreal) -> Result<LeaderCut, ConwayError> {
    let se = sign_expansion(y)?;
    let (l, r) = crate::signexp::se_predecessors(&se)
        .map_err(|_| ConwayError::Unrepresentable(y.to_string()))?;
    let decode = |v: Vec<crate::signexp::SignExpansion>| {
        v.iter()
            .map(from_sign_expansion)
            .collect::<Result<Vec<_>, _>>()
    };
    Ok(LeaderCut {
        y: y.clone(),
        left_options: decode(l)?,
        right_options: decode(r)?,
    })
}

/// Element of `ℝ((t^No))` with finite support, written `Σ r_i t^(y_i)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct HahnSeries {
    pub terms: Vec<(Rational, Surreal)>,
}

pub fn to_hahn(x: &Surreal) -> HahnSeries {
    HahnSeries {
        terms: x
            .terms
            .iter()
            .map(|(y, r)| (r.clone(), y.clone()))
            .collect(),
    }
}

pub fn from_hahn(h: &HahnSeries) -> Surreal {
    Surreal::from_terms(h.terms.iter().map(|(r, y)| (y.clone(), r.clone())))
}

impl fmt::Display for HahnSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (r, y)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "t^({y})*({r})")?;
        }
        Ok(())
    }
}

pub struct Printed<'a> {
    x: &'a Surreal,
    omega: &'a str,
    explicit: bool,
}

impl Printed<'_> {
    fn sub<'b>(&self, x: &'b Surreal) -> Printed<'b>
    where
        Self: 'b,
    {
        Printed {
            x,
            omega: self.omega,
            explicit: self.explicit,
        }
    }

    fn write_explicit(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.x.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (y, r)) in self.x.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let exponent = Printed {
                x: y,
                omega: self.omega,
                explicit: false,
            };
            write!(f, "{}^({})*", self.omega, exponent)?;
            if r.is_negative() {
                write!(f, "({r})")?;
            } else {
                write!(f, "{r}")?;
            }
        }
        Ok(())
    }

    fn write_compact(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.x.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (y, r)) in self.x.terms.iter().enumerate() {
            let mag = r.abs();
            match (i, r.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if y.is_zero() {
                write!(f, "{mag}")?;
                continue;
            }
            f.write_str(self.omega)?;
            if *y != Surreal::one() {
                f.write_str("^")?;
                match y.to_rational() {
                    Some(n) if n.is_integer() && n.is_positive() => write!(f, "{n}")?,
                    _ => write!(f, "({})", self.sub(y))?,
                }
            }
            if !mag.is_one() {
                write!(f, "*{mag}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Printed<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.explicit {
            self.write_explicit(f)
        } else {
            self.write_compact(f)
        }
    }
}

impl fmt::Display for Surreal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Printed {
            x: self,
            omega: "w",
            explicit: false,
        }
        .fmt(f)
    }
}

impl fmt::Debug for Surreal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Surreal({self})")
    }
}
