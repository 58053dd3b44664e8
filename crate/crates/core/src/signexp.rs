//! Sign expansions: the tree coordinates of surreal numbers.
//!
//! A [`SignExpansion`] is stored run-length encoded as alternating
//! `(sign, count)` runs with ordinal counts, so transfinite expansions such as
//! `(+,w)(-,1)` are ordinary finite values. The empty expansion is 0.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::ordinal::{Ordinal, OrdinalError};

/// Default budget of runs scanned by [`se_simplest_between`].
pub const DEFAULT_RUN_BUDGET: usize = 1 << 16;
/// Longest expansion [`SignExpansion::signs`] will list sign by sign.
pub const MAX_EXPANDED: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignExpError {
    #[error("cut violation: {left} is not less than {right}")]
    CutViolation {
        left: SignExpansion,
        right: SignExpansion,
    },
    #[error("{0} has transfinite rank")]
    Transfinite(SignExpansion),
    #[error("run budget of {0} exhausted")]
    FuelExhausted(usize),
    #[error("sign expansion parse error at column {col}: {msg}")]
    Parse { col: usize, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Plus => Sign::Minus,
        }
    }

    fn as_char(self) -> char {
        match self {
            Sign::Minus => '-',
            Sign::Plus => '+',
        }
    }
}

/// Rank of "next symbol" in the tree order: minus < absent < plus.
fn slot(s: Option<Sign>) -> i8 {
    match s {
        Some(Sign::Minus) => -1,
        None => 0,
        Some(Sign::Plus) => 1,
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SignExpansion {
    runs: Vec<(Sign, Ordinal)>,
}

/// Longest common prefix of two expansions and the symbols that follow it.
#[derive(Debug, Clone)]
pub struct Divergence {
    pub prefix: SignExpansion,
    pub next_a: Option<Sign>,
    pub next_b: Option<Sign>,
}

impl SignExpansion {
    pub fn empty() -> Self {
        SignExpansion { runs: Vec::new() }
    }

    /// Builds an expansion from runs, merging equal neighbours and dropping empty runs.
    pub fn from_runs(runs: impl IntoIterator<Item = (Sign, Ordinal)>) -> Self {
        let mut se = SignExpansion::empty();
        for (s, c) in runs {
            se.push(s, &c);
        }
        se
    }

    pub fn from_signs(signs: &[Sign]) -> Self {
        SignExpansion::from_runs(signs.iter().map(|&s| (s, Ordinal::one())))
    }

    /// A single run of `count` copies of `sign`.
    pub fn run(sign: Sign, count: Ordinal) -> Self {
        SignExpansion::from_runs([(sign, count)])
    }

    pub fn runs(&self) -> &[(Sign, Ordinal)] {
        &self.runs
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    /// Appends `count` copies of `sign`.
    pub fn push(&mut self, sign: Sign, count: &Ordinal) {
        if count.is_zero() {
            return;
        }
        match self.runs.last_mut() {
            Some((s, c)) if *s == sign => *c = c.add(count),
            _ => self.runs.push((sign, count.clone())),
        }
    }

    pub fn concat(&self, other: &SignExpansion) -> SignExpansion {
        let mut out = self.clone();
        for (s, c) in &other.runs {
            out.push(*s, c);
        }
        out
    }

    pub fn negate(&self) -> SignExpansion {
        SignExpansion {
            runs: self
                .runs
                .iter()
                .map(|(s, c)| (s.flip(), c.clone()))
                .collect(),
        }
    }

    pub fn first_sign(&self) -> Option<Sign> {
        self.runs.first().map(|(s, _)| *s)
    }

    pub fn rank(&self) -> Ordinal {
        self.runs
            .iter()
            .fold(Ordinal::zero(), |acc, (_, c)| acc.add(c))
    }

    /// The rank as a machine integer, when finite and small.
    pub fn finite_rank(&self) -> Option<usize> {
        let mut n = 0usize;
        for (_, c) in &self.runs {
            n = n.checked_add(usize::try_from(c.to_u64()?).ok()?)?;
        }
        Some(n)
    }

    /// Ordinal sum, in order, of the counts of runs with the given sign.
    pub fn count_of(&self, sign: Sign) -> Ordinal {
        self.runs
            .iter()
            .filter(|(s, _)| *s == sign)
            .fold(Ordinal::zero(), |acc, (_, c)| acc.add(c))
    }

    /// Expanded list of signs, for finite ranks up to [`MAX_EXPANDED`].
    pub fn signs(&self) -> Option<Vec<Sign>> {
        let n = self.finite_rank().filter(|&n| n <= MAX_EXPANDED)?;
        let mut out = Vec::with_capacity(n);
        for (s, c) in &self.runs {
            out.extend(std::iter::repeat_n(*s, c.to_u64()? as usize));
        }
        Some(out)
    }

    /// The initial segment of length `len` (the whole expansion if shorter).
    pub fn prefix(&self, len: &Ordinal) -> SignExpansion {
        let mut out = SignExpansion::empty();
        let mut pos = Ordinal::zero();
        for (s, c) in &self.runs {
            let end = pos.add(c);
            if end <= *len {
                out.runs.push((*s, c.clone()));
                pos = end;
                continue;
            }
            let part = pos.left_sub(len).expect("pos <= len inside the walk");
            out.push(*s, &part);
            break;
        }
        out
    }

    /// The sign at ordinal position `pos`, or `None` past the end.
    pub fn sign_at(&self, pos: &Ordinal) -> Option<Sign> {
        let mut acc = Ordinal::zero();
        for (s, c) in &self.runs {
            let end = acc.add(c);
            if *pos < end {
                return Some(*s);
            }
            acc = end;
        }
        None
    }

    /// Least position `≥ start` carrying `sign`, scanning at most `budget` runs.
    fn first_from(
        &self,
        start: &Ordinal,
        sign: Sign,
        budget: &mut (usize, usize),
    ) -> Result<Option<Ordinal>, SignExpError> {
        let mut acc = Ordinal::zero();
        for (s, c) in &self.runs {
            spend(budget)?;
            let end = acc.add(c);
            if *s == sign && *start < end {
                return Ok(Some(if *start > acc { start.clone() } else { acc }));
            }
            acc = end;
        }
        Ok(None)
    }

    /// Walks both expansions in parallel up to their first difference.
    pub fn diverge(&self, other: &SignExpansion) -> Divergence {
        let (a, b) = (&self.runs, &other.runs);
        let mut prefix = SignExpansion::empty();
        let (mut i, mut j) = (0, 0);
        let mut ra = a.first().map(|r| r.1.clone());
        let mut rb = b.first().map(|r| r.1.clone());
        loop {
            let (Some(ca), Some(cb)) = (ra.clone(), rb.clone()) else {
                return Divergence {
                    prefix,
                    next_a: a.get(i).map(|r| r.0),
                    next_b: b.get(j).map(|r| r.0),
                };
            };
            let (sa, sb) = (a[i].0, b[j].0);
            if sa != sb {
                return Divergence {
                    prefix,
                    next_a: Some(sa),
                    next_b: Some(sb),
                };
            }
            match ca.cmp(&cb) {
                Ordering::Equal => {
                    prefix.push(sa, &ca);
                    i += 1;
                    j += 1;
                    ra = a.get(i).map(|r| r.1.clone());
                    rb = b.get(j).map(|r| r.1.clone());
                }
                Ordering::Less => {
                    prefix.push(sa, &ca);
                    rb = ca.left_sub(&cb);
                    i += 1;
                    ra = a.get(i).map(|r| r.1.clone());
                }
                Ordering::Greater => {
                    prefix.push(sa, &cb);
                    ra = cb.left_sub(&ca);
                    j += 1;
                    rb = b.get(j).map(|r| r.1.clone());
                }
            }
        }
    }

    pub fn unicode(&self) -> UnicodeSignExpansion<'_> {
        UnicodeSignExpansion(self)
    }

    fn write_with(&self, f: &mut fmt::Formatter<'_>, unicode: bool) -> fmt::Result {
        if self.runs.is_empty() {
            return f.write_str("[]");
        }
        if matches!(self.finite_rank(), Some(n) if n <= 64) {
            for (s, c) in &self.runs {
                for _ in 0..c.to_u64().unwrap_or(0) {
                    write!(f, "{}", s.as_char())?;
                }
            }
            return Ok(());
        }
        for (s, c) in &self.runs {
            if unicode {
                write!(f, "({},{})", s.as_char(), c.unicode())?;
            } else {
                write!(f, "({},{})", s.as_char(), c)?;
            }
        }
        Ok(())
    }
}

fn spend(budget: &mut (usize, usize)) -> Result<(), SignExpError> {
    if budget.0 == 0 {
        return Err(SignExpError::FuelExhausted(budget.1));
    }
    budget.0 -= 1;
    Ok(())
}

impl Ord for SignExpansion {
    fn cmp(&self, other: &Self) -> Ordering {
        se_cmp(self, other)
    }
}

impl PartialOrd for SignExpansion {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SignExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_with(f, false)
    }
}

impl fmt::Debug for SignExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignExpansion({self})")
    }
}

pub struct UnicodeSignExpansion<'a>(&'a SignExpansion);

impl fmt::Display for UnicodeSignExpansion<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.write_with(f, true)
    }
}

impl FromStr for SignExpansion {
    type Err = SignExpError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.is_empty() || t == "[]" || t == "ε" {
            return Ok(SignExpansion::empty());
        }
        let mut out = SignExpansion::empty();
        let mut chars = s.char_indices().peekable();
        while let Some((i, ch)) = chars.next() {
            let err = |msg: &str| SignExpError::Parse {
                col: i + 1,
                msg: msg.into(),
            };
            match ch {
                '+' => out.push(Sign::Plus, &Ordinal::one()),
                '-' | '−' => out.push(Sign::Minus, &Ordinal::one()),
                c if c.is_whitespace() => {}
                '(' => {
                    let sign = match chars.next() {
                        Some((_, '+')) => Sign::Plus,
                        Some((_, '-' | '−')) => Sign::Minus,
                        _ => return Err(err("expected a sign after '('")),
                    };
                    if !matches!(chars.next(), Some((_, ','))) {
                        return Err(err("expected ',' after the sign"));
                    }
                    let mut depth = 0usize;
                    let mut body = String::new();
                    loop {
                        match chars.next() {
                            None => return Err(err("unclosed run")),
                            Some((_, '(')) => {
                                depth += 1;
                                body.push('(');
                            }
                            Some((_, ')')) if depth == 0 => break,
                            Some((_, ')')) => {
                                depth -= 1;
                                body.push(')');
                            }
                            Some((_, c)) => body.push(c),
                        }
                    }
                    let count: Ordinal = body
                        .parse()
                        .map_err(|e: OrdinalError| err(&e.to_string()))?;
                    if count.is_zero() {
                        return Err(err("run counts must be at least 1"));
                    }
                    out.push(sign, &count);
                }
                _ => return Err(err("unexpected character")),
            }
        }
        Ok(out)
    }
}

/// The total order of the tree: first difference decides, with `- < (absent) < +`.
pub fn se_cmp(a: &SignExpansion, b: &SignExpansion) -> Ordering {
    let d = a.diverge(b);
    slot(d.next_a).cmp(&slot(d.next_b))
}

/// True iff `a` is a strict prefix of `b`.
pub fn se_simpler(a: &SignExpansion, b: &SignExpansion) -> bool {
    let d = a.diverge(b);
    d.next_a.is_none() && d.next_b.is_some()
}

pub fn se_rank(a: &SignExpansion) -> Ordinal {
    a.rank()
}

/// Strict prefixes of `a`, split into those left of `a` and those right of it.
pub fn se_predecessors(
    a: &SignExpansion,
) -> Result<(Vec<SignExpansion>, Vec<SignExpansion>), SignExpError> {
    let signs = match a.signs() {
        Some(signs) => signs,
        None if a.finite_rank().is_some() => return Err(SignExpError::FuelExhausted(MAX_EXPANDED)),
        None => return Err(SignExpError::Transfinite(a.clone())),
    };
    let (mut left, mut right) = (Vec::new(), Vec::new());
    for k in 0..signs.len() {
        let p = SignExpansion::from_signs(&signs[..k]);
        // a continues with signs[k] after p, so p < a exactly when that sign is +
        if signs[k] == Sign::Plus {
            left.push(p);
        } else {
            right.push(p);
        }
    }
    Ok((left, right))
}

/// The simplest expansion strictly between every member of `left` and every member of `right`.
pub fn se_simplest_between(
    left: &[SignExpansion],
    right: &[SignExpansion],
) -> Result<SignExpansion, SignExpError> {
    se_simplest_between_with(left, right, DEFAULT_RUN_BUDGET)
}

pub fn se_simplest_between_with(
    left: &[SignExpansion],
    right: &[SignExpansion],
    run_budget: usize,
) -> Result<SignExpansion, SignExpError> {
    let mut budget = (run_budget, run_budget);
    let l = left.iter().max();
    let r = right.iter().min();
    if let (Some(l), Some(r)) = (l, r) {
        if l >= r {
            let right = right
                .iter()
                .find(|x| *x <= l)
                .expect("min R is at most max L");
            return Err(SignExpError::CutViolation {
                left: l.clone(),
                right: right.clone(),
            });
        }
    }
    let one = Ordinal::one();
    let extend =
        |base: &SignExpansion, start: &Ordinal, sign: Sign, budget: &mut (usize, usize)| {
            Ok::<_, SignExpError>(match base.first_from(start, sign, budget)? {
                Some(pos) => base.prefix(&pos),
                None => base.concat(&SignExpansion::run(sign.flip(), one.clone())),
            })
        };
    match (l, r) {
        (None, None) => Ok(SignExpansion::empty()),
        (None, Some(r)) => extend(r, &Ordinal::zero(), Sign::Plus, &mut budget),
        (Some(l), None) => extend(l, &Ordinal::zero(), Sign::Minus, &mut budget),
        (Some(l), Some(r)) => {
            let d = l.diverge(r);
            spend(&mut budget)?;
            let delta = d.prefix.rank();
            match (d.next_a, d.next_b) {
                (Some(Sign::Minus), Some(Sign::Plus)) => Ok(d.prefix),
                // l is a prefix of r and r continues with +
                (None, Some(Sign::Plus)) => extend(r, &delta.succ(), Sign::Plus, &mut budget),
                // r is a prefix of l and l continues with -
                (Some(Sign::Minus), None) => extend(l, &delta.succ(), Sign::Minus, &mut budget),
                _ => unreachable!("max L < min R was checked"),
            }
        }
    }
}
