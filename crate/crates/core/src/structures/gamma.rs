//! Exponent classes `Γ`: finite sets and finitely generated monoids and groups.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{Answer, Condition, Failure, Point, Verdict, Witness};
use crate::conway::{from_sign_expansion, sign_expansion, Surreal};
use crate::number::Rational;
use crate::ordinal::Ordinal;
use crate::signexp::{se_simpler, SignExpansion};

/// Upper bound on the number of members produced by an enumeration.
pub const ENUM_CAP: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExponentClassDesc {
    FiniteSet(Vec<Surreal>),
    GeneratedMonoid(Vec<Surreal>),
    GeneratedGroup(Vec<Surreal>),
    /// Members `y` of the inner class with `y ≤ β` for some ordinal `β < τ`.
    Below(Box<ExponentClassDesc>, Ordinal),
}

/// Members produced within fuel; `complete` when they are all of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Members {
    pub items: Vec<Surreal>,
    pub complete: bool,
}

/// Coordinates of surreals over the monomials that occur in any of them.
struct Coordinates {
    basis: Vec<Surreal>,
}

impl Coordinates {
    fn new<'a>(xs: impl Iterator<Item = &'a Surreal>) -> Self {
        let set: BTreeSet<Surreal> = xs
            .flat_map(|x| x.terms().iter().map(|(y, _)| y.clone()))
            .collect();
        Coordinates {
            basis: set.into_iter().collect(),
        }
    }

    fn vector(&self, x: &Surreal) -> Vec<Rational> {
        self.basis.iter().map(|y| x.coefficient(y)).collect()
    }
}

/// Integer row echelon form of the lattice spanned by `rows`.
fn echelon(mut rows: Vec<Vec<BigInt>>, cols: usize) -> Vec<(usize, Vec<BigInt>)> {
    let mut out = Vec::new();
    for c in 0..cols {
        loop {
            rows.retain(|r| r.iter().any(|v| !v.is_zero()));
            let nz: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i][c].is_zero()).collect();
            match nz.len() {
                0 => break,
                1 => {
                    out.push((c, rows.swap_remove(nz[0])));
                    break;
                }
                _ => {
                    let p = *nz
                        .iter()
                        .min_by_key(|&&i| rows[i][c].abs())
                        .expect("nonempty");
                    let pivot = rows[p].clone();
                    for &i in nz.iter().filter(|&&i| i != p) {
                        let q = &rows[i][c] / &pivot[c];
                        for (v, pv) in rows[i].iter_mut().zip(&pivot) {
                            *v -= &q * pv;
                        }
                    }
                }
            }
        }
    }
    out
}

fn scale_to_integers(vectors: &[Vec<Rational>]) -> Vec<Vec<BigInt>> {
    let d = vectors
        .iter()
        .flatten()
        .fold(BigInt::from(1), |acc, r| acc.lcm(r.denom()));
    vectors
        .iter()
        .map(|v| {
            v.iter()
                .map(|r| (r * Rational::from_integer(d.clone())).to_integer())
                .collect()
        })
        .collect()
}

/// True iff `target` is an integer combination of `gens`.
fn in_lattice(gens: &[Surreal], target: &Surreal) -> bool {
    let coords = Coordinates::new(gens.iter().chain(std::iter::once(target)));
    let mut vectors: Vec<Vec<Rational>> = gens.iter().map(|g| coords.vector(g)).collect();
    vectors.push(coords.vector(target));
    let mut ints = scale_to_integers(&vectors);
    let mut t = ints.pop().expect("target row");
    for (c, row) in echelon(ints, coords.basis.len()) {
        if !(&t[c] % &row[c]).is_zero() {
            return false;
        }
        let q = &t[c] / &row[c];
        for (v, rv) in t.iter_mut().zip(&row) {
            *v -= &q * rv;
        }
    }
    t.iter().all(|v| v.is_zero())
}

/// The unique rational coefficients writing `target` over `gens`, when the generators are independent.
fn unique_solution(gens: &[Surreal], target: &Surreal) -> Option<Option<Vec<Rational>>> {
    let coords = Coordinates::new(gens.iter().chain(std::iter::once(target)));
    let (n, k) = (coords.basis.len(), gens.len());
    let cols: Vec<Vec<Rational>> = gens.iter().map(|g| coords.vector(g)).collect();
    let t = coords.vector(target);
    let mut m: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..k)
                .map(|j| cols[j][i].clone())
                .chain([t[i].clone()])
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..k {
        let Some(p) = (row..n).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][c].recip();
        for v in m[row].iter_mut() {
            *v *= &inv;
        }
        for i in 0..n {
            if i != row && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot_row = m[row].clone();
                for (v, pv) in m[i].iter_mut().zip(&pivot_row) {
                    *v -= &f * pv;
                }
            }
        }
        pivots.push(c);
        row += 1;
    }
    if pivots.len() < k {
        return None;
    }
    if m[row..].iter().any(|r| !r[k].is_zero()) {
        return Some(None);
    }
    Some(Some((0..k).map(|j| m[j][k].clone()).collect()))
}

/// The least ordinal `β` with `y ≤ β`.
pub fn ordinal_ceiling(y: &Surreal) -> Ordinal {
    let mut acc = Ordinal::zero();
    for (e, r) in y.terms() {
        if r.is_negative() {
            return acc;
        }
        let top = match e.to_ordinal() {
            Some(a) if r.is_integer() => {
                acc = acc.add(&Ordinal::monomial(a, r.to_integer().magnitude().clone()));
                continue;
            }
            Some(a) => Ordinal::monomial(a, r.ceil().to_integer().magnitude().clone()),
            None => Ordinal::omega_pow(ordinal_ceiling(e)),
        };
        return acc.add(&top);
    }
    acc
}

/// `y ≤ β` for some ordinal `β < τ`.
fn bounded_below(y: &Surreal, tau: &Ordinal) -> bool {
    ordinal_ceiling(y) < *tau
}

impl ExponentClassDesc {
    pub fn member(&self, y: &Surreal, fuel: usize) -> Answer {
        match self {
            ExponentClassDesc::FiniteSet(s) => Answer::from(s.contains(y)),
            ExponentClassDesc::GeneratedGroup(g) => Answer::from(in_lattice(g, y)),
            ExponentClassDesc::GeneratedMonoid(g) => {
                if y.is_zero() {
                    return Answer::Yes;
                }
                if !in_lattice(g, y) {
                    return Answer::No;
                }
                match unique_solution(g, y) {
                    Some(None) => Answer::No,
                    Some(Some(c)) => {
                        Answer::from(c.iter().all(|r| r.is_integer() && !r.is_negative()))
                    }
                    None => {
                        let found = self.enumerate(fuel);
                        if found.items.contains(y) {
                            Answer::Yes
                        } else {
                            Answer::Unknown(format!("no decomposition of {y} within fuel {fuel}"))
                        }
                    }
                }
            }
            ExponentClassDesc::Below(inner, tau) => {
                if !bounded_below(y, tau) {
                    Answer::No
                } else {
                    inner.member(y, fuel)
                }
            }
        }
    }

    /// Members reachable with at most `fuel` generator steps, capped at [`ENUM_CAP`], ascending.
    pub fn enumerate(&self, fuel: usize) -> Members {
        let closure = |gens: Vec<Surreal>| {
            let mut seen: BTreeSet<Surreal> = BTreeSet::from([Surreal::zero()]);
            let mut frontier = vec![Surreal::zero()];
            let mut complete = true;
            for _ in 0..fuel {
                let mut next = Vec::new();
                for x in &frontier {
                    for g in &gens {
                        let s = x.add(g);
                        if seen.len() >= ENUM_CAP {
                            complete = false;
                            break;
                        }
                        if seen.insert(s.clone()) {
                            next.push(s);
                        }
                    }
                }
                if next.is_empty() {
                    return Members {
                        items: seen.into_iter().collect(),
                        complete,
                    };
                }
                frontier = next;
            }
            Members {
                items: seen.into_iter().collect(),
                complete: false,
            }
        };
        match self {
            ExponentClassDesc::FiniteSet(s) => Members {
                items: s.clone(),
                complete: true,
            },
            ExponentClassDesc::GeneratedMonoid(g) => closure(g.clone()),
            ExponentClassDesc::GeneratedGroup(g) => {
                closure(g.iter().flat_map(|x| [x.clone(), x.neg()]).collect())
            }
            ExponentClassDesc::Below(inner, tau) => {
                let m = inner.enumerate(fuel);
                Members {
                    items: m
                        .items
                        .into_iter()
                        .filter(|y| bounded_below(y, tau))
                        .collect(),
                    complete: m.complete,
                }
            }
        }
    }

    /// The least member, or `None` when the class is unbounded below or empty.
    pub fn minimum(&self) -> Option<Surreal> {
        match self {
            ExponentClassDesc::FiniteSet(s) => s.first().cloned(),
            ExponentClassDesc::GeneratedMonoid(g) => {
                g.iter().all(|y| !y.is_negative()).then(Surreal::zero)
            }
            ExponentClassDesc::GeneratedGroup(g) => {
                g.iter().all(|y| y.is_zero()).then(Surreal::zero)
            }
            ExponentClassDesc::Below(inner, tau) => {
                inner.minimum().filter(|m| bounded_below(m, tau))
            }
        }
    }

    /// True iff no member is negative.
    pub fn is_nonnegative(&self) -> bool {
        match self {
            ExponentClassDesc::FiniteSet(s) => s.iter().all(|y| !y.is_negative()),
            _ => self.minimum().is_some_and(|m| !m.is_negative()),
        }
    }

    /// True iff the class is closed under addition by construction.
    pub fn is_additively_generated(&self) -> bool {
        match self {
            ExponentClassDesc::FiniteSet(_) => false,
            ExponentClassDesc::GeneratedMonoid(_) | ExponentClassDesc::GeneratedGroup(_) => true,
            ExponentClassDesc::Below(inner, _) => inner.is_additively_generated(),
        }
    }

    /// Canonical ordering and deduplication of finite sets and generator lists.
    pub fn normalized(self) -> Self {
        let tidy = |mut v: Vec<Surreal>| {
            v.sort();
            v.dedup();
            v
        };
        match self {
            ExponentClassDesc::FiniteSet(s) => ExponentClassDesc::FiniteSet(tidy(s)),
            ExponentClassDesc::GeneratedMonoid(g) => ExponentClassDesc::GeneratedMonoid(tidy(g)),
            ExponentClassDesc::GeneratedGroup(g) => ExponentClassDesc::GeneratedGroup(tidy(g)),
            ExponentClassDesc::Below(inner, tau) => {
                ExponentClassDesc::Below(Box::new(inner.normalized()), tau)
            }
        }
    }
}

/// Strict prefixes of a sign expansion: all of them when it is finite, otherwise
/// those ending at run boundaries, at truncations of run lengths and just after.
pub(crate) fn strict_prefixes(se: &SignExpansion) -> (Vec<SignExpansion>, bool) {
    if let Some(n) = se.finite_rank() {
        return (
            (0..n)
                .map(|k| se.prefix(&Ordinal::from_nat(k as u64)))
                .collect(),
            true,
        );
    }
    let mut lengths = BTreeSet::new();
    let mut start = Ordinal::zero();
    for (_, c) in se.runs() {
        let mut partial = Ordinal::zero();
        for (e, k) in c.atoms() {
            for extra in 0..3u64 {
                let t = partial.add(&Ordinal::from_nat(extra));
                if t < *c {
                    lengths.insert(start.add(&t));
                }
            }
            partial = partial.add(&Ordinal::monomial(e.clone(), k.clone()));
        }
        start = start.add(c);
    }
    (lengths.iter().map(|l| se.prefix(l)).collect(), false)
}

/// Every strict sign-expansion prefix of every member is a member.
pub fn gamma_is_initial(g: &ExponentClassDesc, fuel: usize) -> Verdict {
    let members = g.enumerate(fuel);
    let mut exhaustive = members.complete;
    let mut unknown = None;
    for y in &members.items {
        let se = match sign_expansion(y) {
            Ok(se) => se,
            Err(e) => return Verdict::Indeterminate(format!("exponent {y}: {e}")),
        };
        let (prefixes, complete) = strict_prefixes(&se);
        exhaustive &= complete;
        for p in prefixes {
            let missing = match from_sign_expansion(&p) {
                Ok(v) => match g.member(&v, fuel) {
                    Answer::Yes => continue,
                    Answer::No => Point::Value(v),
                    Answer::Unknown(why) => {
                        unknown.get_or_insert(why);
                        continue;
                    }
                },
                Err(_) => Point::Signs(p),
            };
            return Verdict::Fail(Failure {
                condition: Condition::GammaInitial,
                witness: Witness::ExponentPrefix {
                    exponent: y.clone(),
                    prefix: missing,
                },
            });
        }
    }
    match unknown {
        Some(why) => Verdict::Indeterminate(why),
        None => Verdict::Pass { exhaustive },
    }
}

/// `y ∈ R_s(x)`: `y` is a strict prefix of `x` lying to its right.
pub(crate) fn is_right_predecessor(y: &SignExpansion, x: &SignExpansion) -> bool {
    se_simpler(y, x) && y > x
}

impl fmt::Display for ExponentClassDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[Surreal]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        match self {
            ExponentClassDesc::FiniteSet(s) => write!(f, "finite {{{}}}", list(s)),
            ExponentClassDesc::GeneratedMonoid(g) => write!(f, "monoid {{{}}}", list(g)),
            ExponentClassDesc::GeneratedGroup(g) => write!(f, "group {{{}}}", list(g)),
            ExponentClassDesc::Below(inner, tau) => write!(f, "{inner} below {tau}"),
        }
    }
}
