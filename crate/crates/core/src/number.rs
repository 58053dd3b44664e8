//! Exact rational and dyadic coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::ordinal::Ordinal;
use crate::signexp::{Sign, SignExpansion};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// True iff the reduced denominator is a power of two.
pub fn is_dyadic(r: &Rational) -> bool {
    let d = r.denom();
    d.is_positive() && (d & (d - BigInt::one())).is_zero()
}

/// Largest integer `≤ r`.
pub fn floor(r: &Rational) -> BigInt {
    r.numer().div_floor(r.denom())
}

/// Positive generator of the subgroup of ℚ generated by `a` and `b`.
pub fn rational_gcd(a: &Rational, b: &Rational) -> Rational {
    Rational::new(a.numer().gcd(b.numer()), a.denom().lcm(b.denom()))
}

/// The first `limit` signs of the sign expansion of `r`, or all of them if fewer.
pub fn rational_signs(r: &Rational, limit: usize) -> Vec<Sign> {
    let s = if r.is_negative() {
        Sign::Minus
    } else {
        Sign::Plus
    };
    let m = r.abs();
    let whole = floor(&m);
    let lead = if m.is_integer() {
        whole.clone()
    } else {
        whole.clone() + 1
    };
    let count = lead.to_usize().unwrap_or(usize::MAX).min(limit);
    let mut out = vec![s; count];
    let mut x = Rational::from_integer(lead);
    let mut step = Rational::one();
    while out.len() < limit && x != m {
        step /= Rational::from_integer(BigInt::from(2));
        if m < x {
            out.push(s.flip());
            x -= &step;
        } else {
            out.push(s);
            x += &step;
        }
    }
    out
}

/// Dyadic value of a finite sign sequence.
pub fn signs_value(signs: &[Sign]) -> Rational {
    Dyadic::from_sign_expansion(&SignExpansion::from_signs(signs))
        .expect("finite")
        .to_rational()
}

/// True iff the dyadic `p` is a strict sign-expansion prefix of `r`.
///
/// The numbers extending `p` are exactly those strictly between its nearest
/// left and right predecessors, so no signs are expanded.
pub fn rational_is_prefix(p: &Rational, r: &Rational) -> bool {
    let Some(d) = Dyadic::from_rational(p) else {
        return false;
    };
    if p == r {
        return false;
    }
    let (lo, hi) = d.parent_bounds();
    lo.is_none_or(|lo| lo < *r) && hi.is_none_or(|hi| *r < hi)
}

/// `m / 2^k` in lowest terms: `m` is odd unless `k = 0`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Dyadic {
    numerator: BigInt,
    exponent: u32,
}

impl Dyadic {
    pub fn new(numerator: BigInt, exponent: u32) -> Self {
        let mut d = Dyadic {
            numerator,
            exponent,
        };
        d.reduce();
        d
    }

    pub fn from_int(n: i64) -> Self {
        Dyadic::new(BigInt::from(n), 0)
    }

    pub fn numerator(&self) -> &BigInt {
        &self.numerator
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    fn reduce(&mut self) {
        if self.numerator.is_zero() {
            self.exponent = 0;
            return;
        }
        while self.exponent > 0 && self.numerator.is_even() {
            self.numerator >>= 1;
            self.exponent -= 1;
        }
    }

    pub fn from_rational(r: &Rational) -> Option<Self> {
        if !is_dyadic(r) {
            return None;
        }
        let exponent = r.denom().bits().saturating_sub(1);
        Some(Dyadic::new(
            r.numer().clone(),
            u32::try_from(exponent).ok()?,
        ))
    }

    pub fn to_rational(&self) -> Rational {
        Rational::new(self.numerator.clone(), BigInt::one() << self.exponent)
    }

    /// The finite sign expansion of this dyadic, with the integer part as one run.
    pub fn sign_expansion(&self) -> SignExpansion {
        let mut out = SignExpansion::empty();
        if self.numerator.is_zero() {
            return out;
        }
        let (s, m) = if self.numerator.is_negative() {
            (Sign::Minus, -&self.numerator)
        } else {
            (Sign::Plus, self.numerator.clone())
        };
        // all quantities are scaled by 2^k
        let k = self.exponent as usize;
        let n: BigInt = (&m + ((BigInt::one() << k) - 1)) >> k;
        out.push(s, &Ordinal::from_nat(n.to_biguint().expect("nonnegative")));
        let mut x = n << k;
        let mut step = BigInt::one() << k;
        while x != m {
            step >>= 1;
            if m < x {
                out.push(s.flip(), &Ordinal::one());
                x -= &step;
            } else {
                out.push(s, &Ordinal::one());
                x += &step;
            }
        }
        out
    }

    /// The finite sign sequence, one entry per sign; `None` past [`MAX_EXPANDED`](crate::signexp::MAX_EXPANDED) signs.
    pub fn signs(&self) -> Option<Vec<Sign>> {
        self.sign_expansion().signs()
    }

    /// Nearest predecessors below and above, `None` standing for an infinite side.
    pub fn parent_bounds(&self) -> (Option<Rational>, Option<Rational>) {
        let r = self.to_rational();
        if self.exponent > 0 {
            let step = Rational::new(BigInt::one(), BigInt::one() << self.exponent);
            return (Some(&r - &step), Some(&r + &step));
        }
        match self.numerator.sign() {
            num_bigint::Sign::NoSign => (None, None),
            num_bigint::Sign::Plus => (Some(r - Rational::one()), None),
            num_bigint::Sign::Minus => (None, Some(r + Rational::one())),
        }
    }

    /// The dyadic with the given finite sign expansion; `None` for transfinite input.
    pub fn from_sign_expansion(se: &SignExpansion) -> Option<Self> {
        let runs = se.runs();
        let Some((first, count)) = runs.first() else {
            return Some(Dyadic::from_int(0));
        };
        let mut signs = Vec::new();
        for (s, c) in &runs[1..] {
            signs.extend(std::iter::repeat_n(*s, usize::try_from(c.to_u64()?).ok()?));
        }
        // magnitude scaled by 2^k, treating `first` as the positive direction
        let k = signs.len();
        let mut x = BigInt::from(count.to_nat()?) << k;
        for (i, s) in signs.iter().enumerate() {
            let step = BigInt::one() << (k - i - 1);
            if s == first {
                x += step;
            } else {
                x -= step;
            }
        }
        if *first == Sign::Minus {
            x = -x;
        }
        Some(Dyadic::new(x, u32::try_from(k).ok()?))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_rational())
    }
}
