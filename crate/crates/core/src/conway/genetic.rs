//! Genetic (option-recursive) sum and product on finite sign expansions.
//!
//! `x + y = {x^L + y, x + y^L | x^R + y, x + y^R}` and the corresponding
//! product formula are evaluated over the predecessor options on packed
//! finite sign sequences, with results memoized. Nothing here uses the
//! normal-form arithmetic, so the oracle is an independent check on it for
//! dyadic arguments.

use std::cmp::Ordering;
use std::sync::Mutex;

use rustc_hash::FxHashMap;
use thiserror::Error;

use crate::number::Dyadic;
use crate::signexp::{Sign, SignExpansion};

use super::Surreal;

/// Default birthday bound on oracle arguments.
pub const DEFAULT_RANK_BOUND: usize = 7;

const WORDS: usize = 4;
const CAPACITY: usize = 64 * WORDS;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneticError {
    #[error("{0} is not a dyadic rational")]
    NotDyadic(String),
    #[error("birthday {birthday} exceeds the oracle bound {bound}")]
    BoundExceeded { birthday: usize, bound: usize },
    #[error("intermediate sign expansion longer than {CAPACITY}")]
    Capacity,
}

/// A finite sign sequence packed into bits; bit set means `+`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct Key {
    bits: [u64; WORDS],
    len: u16,
}

impl Key {
    const EMPTY: Key = Key {
        bits: [0; WORDS],
        len: 0,
    };

    fn get(&self, i: usize) -> bool {
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    fn pushed(&self, plus: bool) -> Result<Key, GeneticError> {
        let i = self.len as usize;
        if i >= CAPACITY {
            return Err(GeneticError::Capacity);
        }
        let mut k = *self;
        if plus {
            k.bits[i / 64] |= 1 << (i % 64);
        }
        k.len += 1;
        Ok(k)
    }

    fn prefix(&self, n: usize) -> Key {
        let mut k = Key::EMPTY;
        for w in 0..WORDS {
            let lo = w * 64;
            if n >= lo + 64 {
                k.bits[w] = self.bits[w];
            } else if n > lo {
                k.bits[w] = self.bits[w] & ((1u64 << (n - lo)) - 1);
            }
        }
        k.len = n as u16;
        k
    }

    fn negated(&self) -> Key {
        let mut k = *self;
        let n = self.len as usize;
        for w in 0..WORDS {
            let lo = w * 64;
            let mask = if n >= lo + 64 {
                u64::MAX
            } else if n > lo {
                (1u64 << (n - lo)) - 1
            } else {
                0
            };
            k.bits[w] ^= mask;
        }
        k
    }

    /// Next symbol after position `i`: `Some(true)` for `+`, `None` past the end.
    fn at(&self, i: usize) -> Option<bool> {
        (i < self.len as usize).then(|| self.get(i))
    }

    fn common(&self, other: &Key) -> usize {
        let n = self.len.min(other.len) as usize;
        for w in 0..WORDS {
            let diff = self.bits[w] ^ other.bits[w];
            if diff != 0 {
                return n.min(w * 64 + diff.trailing_zeros() as usize);
            }
        }
        n
    }

    fn position_from(&self, start: usize, plus: bool) -> Option<usize> {
        (start..self.len as usize).find(|&i| self.get(i) == plus)
    }
}

fn slot(s: Option<bool>) -> i8 {
    match s {
        Some(false) => -1,
        None => 0,
        Some(true) => 1,
    }
}

fn cmp(a: &Key, b: &Key) -> Ordering {
    let k = a.common(b);
    slot(a.at(k)).cmp(&slot(b.at(k)))
}

fn simplest_between(l: Option<Key>, r: Option<Key>) -> Result<Key, GeneticError> {
    let cut_at = |base: Key, start: usize, plus: bool| match base.position_from(start, plus) {
        Some(p) => Ok(base.prefix(p)),
        None => base.pushed(!plus),
    };
    match (l, r) {
        (None, None) => Ok(Key::EMPTY),
        (None, Some(r)) => cut_at(r, 0, true),
        (Some(l), None) => cut_at(l, 0, false),
        (Some(l), Some(r)) => {
            let k = l.common(&r);
            match (l.at(k), r.at(k)) {
                (Some(false), Some(true)) => Ok(l.prefix(k)),
                (None, Some(true)) => cut_at(r, k + 1, true),
                (Some(false), None) => cut_at(l, k + 1, false),
                _ => panic!("genetic options out of order"),
            }
        }
    }
}

type Id = u32;

/// Interned sign sequences with memoized sums and products.
#[derive(Default)]
struct Inner {
    keys: Vec<Key>,
    ids: FxHashMap<Key, Id>,
    /// Per id: the longest prefix lying to its left and to its right.
    best_options: Vec<(Option<Id>, Option<Id>)>,
    /// Per id: all left and right options, filled on first use.
    options: Vec<Option<Options>>,
    add: FxHashMap<u64, Id>,
    mul: FxHashMap<u64, Id>,
}

/// Left and right options of one number.
type Options = (Box<[Id]>, Box<[Id]>);

fn pair(x: Id, y: Id) -> u64 {
    let (a, b) = if x <= y { (x, y) } else { (y, x) };
    (a as u64) << 32 | b as u64
}

impl Inner {
    fn intern(&mut self, k: Key) -> Id {
        if let Some(&id) = self.ids.get(&k) {
            return id;
        }
        let n = k.len as usize;
        let last = |plus: bool| (0..n).rev().find(|&i| k.get(i) == plus);
        let left = last(true).map(|i| self.intern(k.prefix(i)));
        let right = last(false).map(|i| self.intern(k.prefix(i)));
        let id = self.keys.len() as Id;
        self.keys.push(k);
        self.best_options.push((left, right));
        self.options.push(None);
        self.ids.insert(k, id);
        id
    }

    fn cmp(&self, a: Id, b: Id) -> Ordering {
        cmp(&self.keys[a as usize], &self.keys[b as usize])
    }

    fn neg(&mut self, x: Id) -> Id {
        let k = self.keys[x as usize].negated();
        self.intern(k)
    }

    fn pick(&self, best: &mut Option<Id>, v: Id, want: Ordering) {
        match best {
            Some(b) if self.cmp(v, *b) != want => {}
            _ => *best = Some(v),
        }
    }

    fn between(&mut self, lo: Option<Id>, hi: Option<Id>) -> Result<Id, GeneticError> {
        let k = simplest_between(
            lo.map(|i| self.keys[i as usize]),
            hi.map(|i| self.keys[i as usize]),
        )?;
        Ok(self.intern(k))
    }

    /// Sum over the canonical options. Only the largest left and smallest right
    /// option of each argument are visited: they are cofinal in the option sets
    /// and the sum is order preserving in each argument.
    fn add(&mut self, x: Id, y: Id) -> Result<Id, GeneticError> {
        if self.keys[x as usize].len == 0 {
            return Ok(y);
        }
        if self.keys[y as usize].len == 0 {
            return Ok(x);
        }
        if let Some(&v) = self.add.get(&pair(x, y)) {
            return Ok(v);
        }
        let (xl, xr) = self.best_options[x as usize];
        let (yl, yr) = self.best_options[y as usize];
        let (mut lo, mut hi) = (None, None);
        for (a, b) in [(xl, Some(y)), (Some(x), yl)] {
            if let (Some(a), Some(b)) = (a, b) {
                let v = self.add(a, b)?;
                self.pick(&mut lo, v, Ordering::Greater);
            }
        }
        for (a, b) in [(xr, Some(y)), (Some(x), yr)] {
            if let (Some(a), Some(b)) = (a, b) {
                let v = self.add(a, b)?;
                self.pick(&mut hi, v, Ordering::Less);
            }
        }
        let v = self.between(lo, hi)?;
        self.add.insert(pair(x, y), v);
        Ok(v)
    }

    fn options(&mut self, x: Id) -> Options {
        if let Some(o) = &self.options[x as usize] {
            return o.clone();
        }
        let k = self.keys[x as usize];
        let side = |plus: bool| -> Box<[Id]> {
            (0..k.len as usize)
                .filter(|&i| k.get(i) == plus)
                .map(|i| self.ids[&k.prefix(i)])
                .collect()
        };
        let o = (side(true), side(false));
        self.options[x as usize] = Some(o.clone());
        o
    }

    /// `a·y + x·b − a·b` for options `a` of `x` and `b` of `y`.
    fn mixed(&mut self, x: Id, y: Id, a: Id, b: Id) -> Result<Id, GeneticError> {
        let ay = self.mul(a, y)?;
        let xb = self.mul(x, b)?;
        let ab = self.mul(a, b)?;
        let s = self.add(ay, xb)?;
        let nab = self.neg(ab);
        self.add(s, nab)
    }

    /// Product over every pair of canonical options.
    fn mul(&mut self, x: Id, y: Id) -> Result<Id, GeneticError> {
        if self.keys[x as usize].len == 0 || self.keys[y as usize].len == 0 {
            return Ok(self.intern(Key::EMPTY));
        }
        if let Some(&v) = self.mul.get(&pair(x, y)) {
            return Ok(v);
        }
        let (xl, xr) = self.options(x);
        let (yl, yr) = self.options(y);
        let (mut lo, mut hi) = (None, None);
        for (xs, ys, left) in [
            (&xl, &yl, true),
            (&xr, &yr, true),
            (&xl, &yr, false),
            (&xr, &yl, false),
        ] {
            for &a in xs.iter() {
                for &b in ys.iter() {
                    let v = self.mixed(x, y, a, b)?;
                    if left {
                        self.pick(&mut lo, v, Ordering::Greater);
                    } else {
                        self.pick(&mut hi, v, Ordering::Less);
                    }
                }
            }
        }
        let v = self.between(lo, hi)?;
        self.mul.insert(pair(x, y), v);
        Ok(v)
    }
}

/// Memoizing genetic oracle; safe to share between threads.
pub struct GeneticOracle {
    rank_bound: usize,
    inner: Mutex<Inner>,
}

impl GeneticOracle {
    pub fn new(rank_bound: usize) -> Self {
        GeneticOracle {
            rank_bound,
            inner: Mutex::new(Inner::default()),
        }
    }

    pub fn rank_bound(&self) -> usize {
        self.rank_bound
    }

    fn key(&self, x: &Surreal) -> Result<Key, GeneticError> {
        let d = x
            .to_rational()
            .and_then(|r| Dyadic::from_rational(&r))
            .ok_or_else(|| GeneticError::NotDyadic(x.to_string()))?;
        let se = d.sign_expansion();
        let birthday = se.finite_rank().unwrap_or(usize::MAX);
        if birthday > self.rank_bound {
            return Err(GeneticError::BoundExceeded {
                birthday,
                bound: self.rank_bound,
            });
        }
        let signs = se.signs().expect("within the rank bound");
        signs
            .iter()
            .try_fold(Key::EMPTY, |k, s| k.pushed(*s == Sign::Plus))
    }

    fn value(k: Key) -> Surreal {
        let signs: Vec<Sign> = (0..k.len as usize)
            .map(|i| if k.get(i) { Sign::Plus } else { Sign::Minus })
            .collect();
        let d = Dyadic::from_sign_expansion(&SignExpansion::from_signs(&signs)).expect("finite");
        Surreal::from_rational(d.to_rational())
    }

    pub fn add(&self, x: &Surreal, y: &Surreal) -> Result<Surreal, GeneticError> {
        let (a, b) = (self.key(x)?, self.key(y)?);
        let mut inner = self.inner.lock().unwrap_or_else(|e| e.into_inner());
        let (a, b) = (inner.intern(a), inner.intern(b));
        let v = inner.add(a, b)?;
        Ok(Self::value(inner.keys[v as usize]))
    }

    pub fn mul(&self, x: &Surreal, y: &Surreal) -> Result<Surreal, GeneticError> {
        let (a, b) = (self.key(x)?, self.key(y)?);
        let mut inner = self.inner.lock().unwrap_or_else(|e| e.into_inner());
        let (a, b) = (inner.intern(a), inner.intern(b));
        let v = inner.mul(a, b)?;
        Ok(Self::value(inner.keys[v as usize]))
    }
}

impl Default for GeneticOracle {
    fn default() -> Self {
        GeneticOracle::new(DEFAULT_RANK_BOUND)
    }
}

pub fn genetic_add_oracle(x: &Surreal, y: &Surreal) -> Result<Surreal, GeneticError> {
    GeneticOracle::default().add(x, y)
}

pub fn genetic_mul_oracle(x: &Surreal, y: &Surreal) -> Result<Surreal, GeneticError> {
    GeneticOracle::default().mul(x, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::rat;

    fn c(n: i64, d: i64) -> Surreal {
        Surreal::from_rational(rat(n, d))
    }

    #[test]
    fn examples() {
        assert_eq!(genetic_add_oracle(&c(1, 2), &c(1, 2)).unwrap(), c(1, 1));
        assert_eq!(genetic_mul_oracle(&c(3, 4), &c(0, 1)).unwrap(), c(0, 1));
        assert_eq!(genetic_mul_oracle(&c(-1, 1), &c(-1, 1)).unwrap(), c(1, 1));
        assert_eq!(genetic_mul_oracle(&c(3, 2), &c(-5, 4)).unwrap(), c(-15, 8));
        assert_eq!(genetic_add_oracle(&c(7, 4), &c(-3, 8)).unwrap(), c(11, 8));
    }

    #[test]
    fn bounds_are_enforced() {
        let o = GeneticOracle::new(3);
        assert!(matches!(
            o.add(&c(4, 1), &c(0, 1)),
            Err(GeneticError::BoundExceeded { .. })
        ));
        assert!(matches!(
            o.add(&c(1, 3), &c(0, 1)),
            Err(GeneticError::NotDyadic(_))
        ));
        assert!(matches!(
            o.add(&Surreal::omega(), &c(0, 1)),
            Err(GeneticError::NotDyadic(_))
        ));
    }

    #[test]
    fn key_operations() {
        let k = [true, false, true]
            .iter()
            .try_fold(Key::EMPTY, |k, &p| k.pushed(p))
            .unwrap();
        assert_eq!(k.prefix(1).len, 1);
        assert!(k.prefix(1).get(0));
        assert_eq!(cmp(&k.prefix(2), &k), Ordering::Less);
        assert_eq!(cmp(&k.negated(), &Key::EMPTY), Ordering::Less);
    }
}
