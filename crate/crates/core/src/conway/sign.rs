//! Conversion between normal forms and sign expansions.
//!
//! Encoding follows Gonshor's description. The leader `ω^y` is `+` followed,
//! for each sign of `y` at a position with `b` pluses before it, by
//! `ω^(b+1)` copies of that sign; run by run, a plus run of length `c`
//! contributes `ω^(b+c)` pluses and a minus run `ω^(b+1)·c` minuses.
//! `ω^y·r` appends, for each sign of `r` after its first, `ω^(y⁺)` copies
//! where `y⁺` counts all pluses of `y`; a negative `r` flips the block. A
//! sum concatenates its term blocks, except that minus signs of `y_i` lying
//! inside its common prefix with `y_(i-1)` are not emitted.
//!
//! Decoding parses the expansion back into blocks. Within a block the
//! exponent is forced by the atoms (CNF terms of run lengths) except for how
//! many trailing atoms belong to the coefficient; that choice is searched and
//! every candidate is confirmed by re-encoding.

use crate::number::{Dyadic, Rational};
use crate::ordinal::Ordinal;
use crate::signexp::{se_simpler, se_simplest_between_with, Sign, SignExpansion};

use super::{srl_cmp, ConwayError, Surreal};

/// Budgets for the recursive conversions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fuel {
    /// Maximum exponent nesting.
    pub depth: usize,
    /// Maximum runs scanned by a simplest-between computation.
    pub runs: usize,
    /// Maximum search nodes visited while decoding.
    pub search: usize,
}

impl Default for Fuel {
    fn default() -> Self {
        Fuel {
            depth: 64,
            runs: crate::signexp::DEFAULT_RUN_BUDGET,
            search: 1 << 16,
        }
    }
}

impl Fuel {
    /// A budget scaled from a single user-facing number.
    pub fn from_level(n: usize) -> Self {
        Fuel {
            depth: n.max(1),
            runs: n.max(1).saturating_mul(1024),
            search: n.max(1).saturating_mul(1024),
        }
    }
}

pub fn sign_expansion(x: &Surreal) -> Result<SignExpansion, ConwayError> {
    sign_expansion_with(x, &Fuel::default())
}

pub fn sign_expansion_with(x: &Surreal, fuel: &Fuel) -> Result<SignExpansion, ConwayError> {
    encode(x, fuel.depth)
}

fn encode(x: &Surreal, depth: usize) -> Result<SignExpansion, ConwayError> {
    if depth == 0 && !x.is_zero() {
        return Err(ConwayError::FuelExhausted("exponent nesting depth".into()));
    }
    let mut out = SignExpansion::empty();
    let mut prev: Option<SignExpansion> = None;
    for (y, r) in x.terms() {
        let d = Dyadic::from_rational(r).ok_or_else(|| ConwayError::NonDyadic(r.to_string()))?;
        let ys = encode(y, depth - 1)?;
        let silent = prev
            .as_ref()
            .map(|p| ys.diverge(p).prefix.rank())
            .unwrap_or_else(Ordinal::zero);
        let sigma = if d.numerator() > &0.into() {
            Sign::Plus
        } else {
            Sign::Minus
        };
        out.push(sigma, &Ordinal::one());
        let mut b = Ordinal::zero();
        let mut pos = Ordinal::zero();
        for (s, c) in ys.runs() {
            let end = pos.add(c);
            match s {
                Sign::Plus => {
                    out.push(sigma, &Ordinal::omega_pow(b.add(c)));
                    b = b.add(c);
                }
                Sign::Minus => {
                    let loud = if end <= silent {
                        Ordinal::zero()
                    } else if pos >= silent {
                        c.clone()
                    } else {
                        let inside = pos.left_sub(&silent).expect("pos < silent");
                        inside.left_sub(c).expect("silent < end")
                    };
                    out.push(sigma.flip(), &Ordinal::omega_pow(b.succ()).mul(&loud));
                }
            }
            pos = end;
        }
        let magnitude = Dyadic::from_rational(&num_traits::Signed::abs(r)).expect("dyadic");
        let tail = magnitude.sign_expansion();
        let unit = Ordinal::omega_pow(b);
        for (i, (s, c)) in tail.runs().iter().enumerate() {
            let s = if *s == Sign::Plus {
                sigma
            } else {
                sigma.flip()
            };
            let c = c.to_nat().expect("dyadic expansions are finite");
            // the leading sign was pushed above
            let c = if i == 0 { c - 1u32 } else { c };
            out.push(s, &unit.mul(&Ordinal::from_nat(c)));
        }
        prev = Some(ys);
    }
    Ok(out)
}

pub fn from_sign_expansion(s: &SignExpansion) -> Result<Surreal, ConwayError> {
    from_sign_expansion_with(s, &Fuel::default())
}

pub fn from_sign_expansion_with(s: &SignExpansion, fuel: &Fuel) -> Result<Surreal, ConwayError> {
    let mut budget = fuel.search;
    decode(s, fuel.depth, &mut budget)
}

fn decode(s: &SignExpansion, depth: usize, budget: &mut usize) -> Result<Surreal, ConwayError> {
    if s.is_empty() {
        return Ok(Surreal::zero());
    }
    if let Some(d) = Dyadic::from_sign_expansion(s) {
        return Ok(Surreal::from_rational(d.to_rational()));
    }
    if depth == 0 {
        return Err(ConwayError::FuelExhausted("exponent nesting depth".into()));
    }
    let mut blocks = Vec::new();
    let mut search = Search { depth, budget };
    match search.blocks(Tape::new(s), None, &mut blocks, s)? {
        Some(x) => Ok(x),
        None => Err(ConwayError::NotInImage(s.to_string())),
    }
}

/// Cursor over the runs of an expansion.
#[derive(Clone)]
struct Tape {
    runs: Vec<(Sign, Ordinal)>,
    idx: usize,
    rem: Ordinal,
}

impl Tape {
    fn new(s: &SignExpansion) -> Self {
        let runs = s.runs().to_vec();
        let rem = runs
            .first()
            .map(|r| r.1.clone())
            .unwrap_or_else(Ordinal::zero);
        Tape { runs, idx: 0, rem }
    }

    fn at_end(&self) -> bool {
        self.idx >= self.runs.len()
    }

    fn sign(&self) -> Option<Sign> {
        self.runs.get(self.idx).map(|r| r.0)
    }

    /// Sign and exponent of the next atom.
    fn front(&self) -> Option<(Sign, Ordinal)> {
        Some((self.sign()?, self.rem.leading_exponent()?.clone()))
    }

    fn settle(&mut self) {
        if self.rem.is_zero() && !self.at_end() {
            self.idx += 1;
            self.rem = self
                .runs
                .get(self.idx)
                .map(|r| r.1.clone())
                .unwrap_or_else(Ordinal::zero);
        }
    }

    /// Removes `amount` from the front of the current run; `amount` absorbed into
    /// a larger following term leaves the run unchanged.
    fn take(&mut self, amount: &Ordinal) -> bool {
        match amount.left_sub(&self.rem) {
            Some(rest) => {
                self.rem = rest;
                self.settle();
                true
            }
            None => false,
        }
    }

    /// Removes every leading term with exponent `≥ k` and returns their sum.
    fn take_from_exponent(&mut self, k: &Ordinal) -> Ordinal {
        let terms = self.rem.terms();
        let n = terms.iter().take_while(|(e, _)| e >= k).count();
        let head = Ordinal::from_terms(terms[..n].to_vec()).expect("prefix of CNF");
        let rest = Ordinal::from_terms(terms[n..].to_vec()).expect("suffix of CNF");
        self.rem = rest;
        self.settle();
        head
    }
}

/// The decoded exponent sign expansion of one block.
struct Exponent {
    signs: SignExpansion,
    pluses: Ordinal,
}

struct Search<'a> {
    depth: usize,
    budget: &'a mut usize,
}

impl Search<'_> {
    fn tick(&mut self) -> Result<(), ConwayError> {
        if *self.budget == 0 {
            return Err(ConwayError::FuelExhausted(
                "sign expansion decoding search".into(),
            ));
        }
        *self.budget -= 1;
        Ok(())
    }

    fn blocks(
        &mut self,
        mut tape: Tape,
        prev: Option<&SignExpansion>,
        done: &mut Vec<(Surreal, Rational)>,
        target: &SignExpansion,
    ) -> Result<Option<Surreal>, ConwayError> {
        self.tick()?;
        if tape.at_end() {
            let x = Surreal::from_terms(done.iter().cloned());
            if x.terms().len() == done.len() && encode(&x, self.depth)? == *target {
                return Ok(Some(x));
            }
            return Ok(None);
        }
        let sigma = tape.sign().expect("not at end");
        tape.take(&Ordinal::one());
        let Some(exp) = read_exponent(&mut tape, sigma, prev) else {
            return Ok(None);
        };
        let y = match decode(&exp.signs, self.depth - 1, self.budget) {
            Ok(y) => y,
            Err(ConwayError::NotInImage(_)) => return Ok(None),
            Err(e) => return Err(e),
        };
        if let Some((last, _)) = done.last() {
            if srl_cmp(&y, last) != std::cmp::Ordering::Less {
                return Ok(None);
            }
        }
        // coefficient tail: each atom of exponent exactly y⁺ is one further sign of |r|
        let mut tails = vec![(tape.clone(), Vec::<Sign>::new())];
        loop {
            let (t, signs) = tails.last().expect("nonempty");
            match t.front() {
                Some((s, e)) if e == exp.pluses => {
                    let mut t = t.clone();
                    let mut signs = signs.clone();
                    t.take(&Ordinal::omega_pow(e));
                    signs.push(if s == sigma { Sign::Plus } else { Sign::Minus });
                    tails.push((t, signs));
                }
                _ => break,
            }
            self.tick()?;
        }
        for (t, signs) in tails.into_iter().rev() {
            let mut all = vec![Sign::Plus];
            all.extend(signs);
            let magnitude =
                Dyadic::from_sign_expansion(&SignExpansion::from_signs(&all)).expect("finite");
            let r = match sigma {
                Sign::Plus => magnitude.to_rational(),
                Sign::Minus => -magnitude.to_rational(),
            };
            done.push((y.clone(), r));
            if let Some(x) = self.blocks(t, Some(&exp.signs), done, target)? {
                return Ok(Some(x));
            }
            done.pop();
        }
        Ok(None)
    }
}

/// Reads the exponent part of a block whose leading sign is `sigma`.
fn read_exponent(tape: &mut Tape, sigma: Sign, prev: Option<&SignExpansion>) -> Option<Exponent> {
    let mut signs = SignExpansion::empty();
    let mut b = Ordinal::zero();
    // follow the previous exponent while the common prefix lasts
    if let Some(prev) = prev {
        let mut diverged = false;
        for (s, c) in prev.runs() {
            match s {
                Sign::Minus => signs.push(Sign::Minus, c),
                Sign::Plus => {
                    match tape.front() {
                        Some((t, e)) if t == sigma && e > b => {
                            let k = b.left_sub(&e)?;
                            if k > *c {
                                return None;
                            }
                            tape.take(&Ordinal::omega_pow(e.clone()));
                            signs.push(Sign::Plus, &k);
                            b = e;
                            if k < *c {
                                diverged = true;
                            }
                        }
                        _ => diverged = true,
                    }
                    if diverged {
                        break;
                    }
                }
            }
        }
        if !diverged {
            // equal so far: the exponent must continue below the previous one
            let (t, e) = tape.front()?;
            if t != sigma.flip() || e < b.succ() {
                return None;
            }
        }
    }
    loop {
        match tape.front() {
            Some((t, e)) if t == sigma && e > b => {
                let k = b.left_sub(&e)?;
                tape.take(&Ordinal::omega_pow(e.clone()));
                signs.push(Sign::Plus, &k);
                b = e;
            }
            Some((t, e)) if t == sigma.flip() && e >= b.succ() => {
                let chunk = tape.take_from_exponent(&b.succ());
                signs.push(Sign::Minus, &chunk.div_omega_pow(&b.succ())?);
            }
            _ => break,
        }
    }
    Some(Exponent { signs, pluses: b })
}

/// True iff `x`'s sign expansion is a strict prefix of `y`'s.
pub fn srl_simpler(x: &Surreal, y: &Surreal) -> Result<bool, ConwayError> {
    Ok(se_simpler(&sign_expansion(x)?, &sign_expansion(y)?))
}

pub fn birthday(x: &Surreal) -> Result<Ordinal, ConwayError> {
    Ok(sign_expansion(x)?.rank())
}

/// The simplest surreal strictly between every member of `left` and every member of `right`.
pub fn srl_simplest_between(
    left: &[Surreal],
    right: &[Surreal],
    fuel: &Fuel,
) -> Result<Surreal, ConwayError> {
    for l in left {
        for r in right {
            if l >= r {
                return Err(ConwayError::CutViolation {
                    left: l.clone(),
                    right: r.clone(),
                });
            }
        }
    }
    let enc = |v: &[Surreal]| {
        v.iter()
            .map(|x| sign_expansion_with(x, fuel))
            .collect::<Result<Vec<_>, _>>()
    };
    let se = se_simplest_between_with(&enc(left)?, &enc(right)?, fuel.runs)?;
    from_sign_expansion_with(&se, fuel)
}
