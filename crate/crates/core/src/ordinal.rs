//! Ordinals below ε₀ in Cantor normal form.
//!
//! An [`Ordinal`] is a finite list of `(exponent, coefficient)` terms with
//! strictly decreasing exponents and coefficients `≥ 1`; the empty list is 0.
//! Exponents are ordinals themselves, so every value is a finite tree and
//! therefore lies below ε₀.
//!
//! Only the Cantorian (non-commutative) sum and product are provided.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

/// Maximum exponent nesting accepted by the parser and by conversions.
pub const MAX_NESTING: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrdinalError {
    #[error("ordinal parse error at column {col}: {msg}")]
    Parse { col: usize, msg: String },
    #[error("ordinal out of range: {0}")]
    Range(String),
    #[error("{0} is not defined for {1}")]
    Domain(&'static str, String),
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Ordinal {
    terms: Vec<(Ordinal, BigUint)>,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_nat(1u32)
    }

    pub fn omega() -> Self {
        Self::omega_pow(Ordinal::one())
    }

    pub fn from_nat(n: impl Into<BigUint>) -> Self {
        let n = n.into();
        if n.is_zero() {
            Ordinal::zero()
        } else {
            Ordinal {
                terms: vec![(Ordinal::zero(), n)],
            }
        }
    }

    /// `ω^e`.
    pub fn omega_pow(e: Ordinal) -> Self {
        Ordinal {
            terms: vec![(e, BigUint::one())],
        }
    }

    /// `ω^e · n`.
    pub fn monomial(e: Ordinal, n: impl Into<BigUint>) -> Self {
        let n = n.into();
        if n.is_zero() {
            Ordinal::zero()
        } else {
            Ordinal {
                terms: vec![(e, n)],
            }
        }
    }

    /// Builds an ordinal from terms, which must already be in Cantor normal form.
    pub fn from_terms(terms: Vec<(Ordinal, BigUint)>) -> Result<Self, OrdinalError> {
        for w in terms.windows(2) {
            if w[0].0 <= w[1].0 {
                return Err(OrdinalError::Range(
                    "exponents must strictly decrease".into(),
                ));
            }
        }
        if terms.iter().any(|(_, c)| c.is_zero()) {
            return Err(OrdinalError::Range("coefficients must be positive".into()));
        }
        Ok(Ordinal { terms })
    }

    pub fn terms(&self) -> &[(Ordinal, BigUint)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.terms.iter().all(|(e, _)| e.is_zero())
    }

    pub fn to_nat(&self) -> Option<BigUint> {
        match self.terms.as_slice() {
            [] => Some(BigUint::zero()),
            [(e, n)] if e.is_zero() => Some(n.clone()),
            _ => None,
        }
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.to_nat().and_then(|n| n.to_u64())
    }

    /// Exponent of the leading term; `None` for zero.
    pub fn leading_exponent(&self) -> Option<&Ordinal> {
        self.terms.first().map(|(e, _)| e)
    }

    /// Exponent of the trailing (smallest) term; `None` for zero.
    pub fn trailing_exponent(&self) -> Option<&Ordinal> {
        self.terms.last().map(|(e, _)| e)
    }

    pub fn is_successor(&self) -> bool {
        matches!(self.terms.last(), Some((e, _)) if e.is_zero())
    }

    pub fn is_limit(&self) -> bool {
        !self.is_zero() && !self.is_successor()
    }

    /// Depth of exponent nesting: 0 for naturals, 1 for `ω·n + k`, and so on.
    pub fn nesting(&self) -> usize {
        self.terms
            .iter()
            .map(|(e, _)| if e.is_zero() { 0 } else { 1 + e.nesting() })
            .max()
            .unwrap_or(0)
    }

    pub fn succ(&self) -> Ordinal {
        self.add(&Ordinal::one())
    }

    /// Cantorian sum `self + rhs`.
    pub fn add(&self, rhs: &Ordinal) -> Ordinal {
        let Some((lead, lead_coeff)) = rhs.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<(Ordinal, BigUint)> =
            Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let mut rest = rhs.terms.iter();
        for (e, c) in &self.terms {
            match e.cmp(lead) {
                Ordering::Greater => terms.push((e.clone(), c.clone())),
                Ordering::Equal => {
                    terms.push((e.clone(), c + lead_coeff));
                    rest.next();
                    break;
                }
                Ordering::Less => break,
            }
        }
        terms.extend(rest.cloned());
        Ordinal { terms }
    }

    /// Cantorian product `self · rhs`.
    pub fn mul(&self, rhs: &Ordinal) -> Ordinal {
        if self.is_zero() || rhs.is_zero() {
            return Ordinal::zero();
        }
        let (lead, lead_coeff) = &self.terms[0];
        let mut out = Ordinal::zero();
        for (e, n) in &rhs.terms {
            let piece = if e.is_zero() {
                let mut terms = self.terms.clone();
                terms[0].1 = lead_coeff * n;
                Ordinal { terms }
            } else {
                Ordinal::monomial(lead.add(e), n.clone())
            };
            out = out.add(&piece);
        }
        out
    }

    /// The unique `c` with `self + c = target`, when `self ≤ target`.
    pub fn left_sub(&self, target: &Ordinal) -> Option<Ordinal> {
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let (te, tc) = target.terms.get(i)?;
            match e.cmp(te) {
                Ordering::Greater => return None,
                Ordering::Less => {
                    return Some(Ordinal {
                        terms: target.terms[i..].to_vec(),
                    })
                }
                Ordering::Equal => match c.cmp(tc) {
                    Ordering::Greater => return None,
                    Ordering::Less => {
                        let mut terms = vec![(te.clone(), tc - c)];
                        terms.extend_from_slice(&target.terms[i + 1..]);
                        return Some(Ordinal { terms });
                    }
                    Ordering::Equal => {}
                },
            }
        }
        Some(Ordinal {
            terms: target.terms[self.terms.len()..].to_vec(),
        })
    }

    /// The unique `c` with `ω^k · c = self`, when every exponent of `self` is `≥ k`.
    pub fn div_omega_pow(&self, k: &Ordinal) -> Option<Ordinal> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, n) in &self.terms {
            terms.push((k.left_sub(e)?, n.clone()));
        }
        Some(Ordinal { terms })
    }

    /// Terms as `(exponent, coefficient)` pairs, largest first.
    pub fn atoms(&self) -> impl Iterator<Item = (&Ordinal, &BigUint)> {
        self.terms.iter().map(|(e, c)| (e, c))
    }

    /// True iff `self = ω^φ` for some φ. Rejects zero.
    pub fn is_add_indecomposable(&self) -> Result<bool, OrdinalError> {
        if self.is_zero() {
            return Err(OrdinalError::Domain(
                "additive indecomposability",
                "0".into(),
            ));
        }
        Ok(self.terms.len() == 1 && self.terms[0].1.is_one())
    }

    /// True iff `self = ω^(ω^φ)` for some φ. Rejects ordinals `≤ 1`.
    ///
    /// This answers the form-based question. The ordinal 2 satisfies the
    /// quantifier characterisation (`μν < 2` for all `μ, ν < 2`) but is not
    /// of the form `ω^(ω^φ)`, and is reported `false` here.
    pub fn is_mul_indecomposable(&self) -> Result<bool, OrdinalError> {
        if *self <= Ordinal::one() {
            return Err(OrdinalError::Domain(
                "multiplicative indecomposability",
                self.to_string(),
            ));
        }
        if !self.is_add_indecomposable()? {
            return Ok(false);
        }
        let e = &self.terms[0].0;
        Ok(!e.is_zero() && e.is_add_indecomposable()?)
    }

    pub fn unicode(&self) -> UnicodeOrdinal<'_> {
        UnicodeOrdinal(self)
    }

    fn write_with(&self, f: &mut fmt::Formatter<'_>, w: &str) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if e.is_zero() {
                write!(f, "{c}")?;
                continue;
            }
            f.write_str(w)?;
            if *e != Ordinal::one() {
                f.write_str("^")?;
                match e.to_nat() {
                    Some(n) => write!(f, "{n}")?,
                    None => {
                        f.write_str("(")?;
                        e.write_with(f, w)?;
                        f.write_str(")")?;
                    }
                }
            }
            if !c.is_one() {
                write!(f, "*{c}")?;
            }
        }
        Ok(())
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(&other.terms) {
            let ord = a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Self {
        Ordinal::from_nat(n)
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_with(f, "w")
    }
}

impl fmt::Debug for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ordinal({self})")
    }
}

pub struct UnicodeOrdinal<'a>(&'a Ordinal);

impl fmt::Display for UnicodeOrdinal<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.write_with(f, "ω")
    }
}

pub fn ord_cmp(a: &Ordinal, b: &Ordinal) -> Ordering {
    a.cmp(b)
}

pub fn ord_add(a: &Ordinal, b: &Ordinal) -> Ordinal {
    a.add(b)
}

pub fn ord_mul(a: &Ordinal, b: &Ordinal) -> Ordinal {
    a.mul(b)
}

// Grammar: sum := term ('+' term)* ; term := nat | w ['^' atom] ['*' nat] ;
// atom := nat | w ['^' atom] | '(' sum ')'
struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    depth: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> OrdinalError {
        OrdinalError::Parse {
            col: self.pos + 1,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(tok.as_bytes()) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn nat(&mut self) -> Option<BigUint> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()?
            .parse()
            .ok()
    }

    fn omega(&mut self) -> bool {
        self.eat("w") || self.eat("ω")
    }

    fn sum(&mut self) -> Result<Ordinal, OrdinalError> {
        self.depth += 1;
        if self.depth > MAX_NESTING {
            return Err(OrdinalError::Range(format!(
                "exponent nesting deeper than {MAX_NESTING}"
            )));
        }
        let mut acc = self.term()?;
        while self.eat("+") {
            let t = self.term()?;
            acc = acc.add(&t);
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn term(&mut self) -> Result<Ordinal, OrdinalError> {
        if let Some(n) = self.nat() {
            return Ok(Ordinal::from_nat(n));
        }
        if !self.omega() {
            return Err(self.err("expected a natural number or w"));
        }
        let exp = if self.eat("^") {
            self.atom()?
        } else {
            Ordinal::one()
        };
        let coeff = if self.eat("*") {
            self.nat()
                .ok_or_else(|| self.err("expected a natural coefficient"))?
        } else {
            BigUint::one()
        };
        Ok(Ordinal::monomial(exp, coeff))
    }

    fn atom(&mut self) -> Result<Ordinal, OrdinalError> {
        if let Some(n) = self.nat() {
            return Ok(Ordinal::from_nat(n));
        }
        if self.omega() {
            let exp = if self.eat("^") {
                self.atom()?
            } else {
                Ordinal::one()
            };
            return Ok(Ordinal::omega_pow(exp));
        }
        if self.eat("(") {
            let inner = self.sum()?;
            if !self.eat(")") {
                return Err(self.err("expected ')'"));
            }
            return Ok(inner);
        }
        Err(self.err("expected an exponent"))
    }
}

impl FromStr for Ordinal {
    type Err = OrdinalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser {
            src: s.as_bytes(),
            pos: 0,
            depth: 0,
        };
        let o = p.sum()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("trailing input"));
        }
        Ok(o)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    #[test]
    fn comparison_examples() {
        assert_eq!(ord_cmp(&o("w"), &o("w")), Ordering::Equal);
        assert_eq!(ord_cmp(&o("w + 1"), &o("w*2")), Ordering::Less);
        assert_eq!(ord_cmp(&o("w^w"), &o("w^2*5 + 3")), Ordering::Greater);
    }

    #[test]
    fn addition_examples() {
        assert_eq!(ord_add(&o("1"), &o("w")), o("w"));
        assert_eq!(ord_add(&o("w"), &o("1")), o("w + 1"));
        assert_eq!(ord_add(&o("w + 1"), &o("w + 1")), o("w*2 + 1"));
        assert_eq!(
            ord_add(&o("w^2 + w*3 + 4"), &o("w*2 + 7")),
            o("w^2 + w*5 + 7")
        );
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(ord_mul(&o("w*2"), &o("w")), o("w^2"));
        assert_eq!(ord_mul(&o("w^3 + 5"), &o("0")), o("0"));
        assert_eq!(ord_mul(&o("w"), &o("w")), o("w^2"));
        assert_eq!(ord_mul(&o("w + 1"), &o("2")), o("w*2 + 1"));
        assert_eq!(ord_mul(&o("2"), &o("w")), o("w"));
    }

    #[test]
    fn indecomposability() {
        assert!(o("1").is_add_indecomposable().unwrap());
        assert!(!o("w + 1").is_add_indecomposable().unwrap());
        assert!(o("w^2").is_add_indecomposable().unwrap());
        assert!(o("0").is_add_indecomposable().is_err());

        assert!(o("w").is_mul_indecomposable().unwrap());
        assert!(!o("w^2").is_mul_indecomposable().unwrap());
        assert!(o("w^w").is_mul_indecomposable().unwrap());
        assert!(!o("2").is_mul_indecomposable().unwrap());
        assert!(o("1").is_mul_indecomposable().is_err());
        assert!(o("0").is_mul_indecomposable().is_err());
    }

    #[test]
    fn left_subtraction_and_division() {
        assert_eq!(o("w").left_sub(&o("w*2 + 3")), Some(o("w + 3")));
        assert_eq!(o("5").left_sub(&o("w")), Some(o("w")));
        assert_eq!(o("w + 1").left_sub(&o("w")), None);
        assert_eq!(o("w^2*3 + w").div_omega_pow(&o("1")), Some(o("w*3 + 1")));
        assert_eq!(o("w^2 + 1").div_omega_pow(&o("1")), None);
    }

    #[test]
    fn text_round_trip() {
        for s in [
            "0",
            "7",
            "w",
            "w + 1",
            "w^2*3 + w + 5",
            "w^(w + 1)*2",
            "w^w^2",
        ] {
            let v = o(s);
            assert_eq!(o(&v.to_string()), v, "{s}");
        }
        assert_eq!(o("w^2*3 + w*1 + 5").to_string(), "w^2*3 + w + 5");
        assert!("w^".parse::<Ordinal>().is_err());
        assert!("w + ".parse::<Ordinal>().is_err());
    }
}
