//! Text form of structure specs.
//!
//! ```text
//! kind: group
//! gamma: finite {0, -1}
//! coeff: 0 => dyadic
//! coeff: -1 => integers
//! ```
//!
//! Entries are separated by newlines or `;` and `#` starts a comment. Other
//! entries are `default: <descriptor>` and `fuel: <n>`; a Γ may end in
//! `below <ordinal>`. Descriptors are `trivial`, `integers`, `scaled(m)`,
//! `dyadic`, `dyadic+{q, ...}` and `gen{q, ...}`.

use std::fmt;
use std::str::FromStr;

use super::{CoeffGroupDesc, ExponentClassDesc, Kind, StructureError, StructureSpec, DEFAULT_FUEL};
use crate::conway::{Fuel, Surreal};
use crate::number::Rational;
use crate::ordinal::Ordinal;
use crate::syntax::{eval, parse_expr, parse_list, Env};

struct Line<'a> {
    no: usize,
    env: &'a Env,
}

impl Line<'_> {
    fn err(&self, msg: impl Into<String>) -> StructureError {
        StructureError::Parse {
            line: self.no,
            msg: msg.into(),
        }
    }

    fn surreal(&self, text: &str) -> Result<Surreal, StructureError> {
        let e = parse_expr(text.trim()).map_err(|e| self.err(format!("`{}`: {e}", text.trim())))?;
        eval(&e, self.env, &Fuel::default()).map_err(|e| self.err(e.to_string()))
    }

    /// `{a, b, ...}` with nothing after the closing brace.
    fn braced_list(&self, text: &str) -> Result<Vec<Surreal>, StructureError> {
        let text = text.trim();
        let inner = text
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| self.err(format!("expected `{{...}}`, found `{text}`")))?;
        let exprs = parse_list(inner).map_err(|e| self.err(format!("`{inner}`: {e}")))?;
        exprs
            .iter()
            .map(|e| eval(e, self.env, &Fuel::default()).map_err(|e| self.err(e.to_string())))
            .collect()
    }

    fn rationals(&self, text: &str) -> Result<Vec<Rational>, StructureError> {
        self.braced_list(text)?
            .into_iter()
            .map(|x| {
                x.to_rational()
                    .ok_or_else(|| self.err(format!("coefficient generator {x} is not rational")))
            })
            .collect()
    }

    fn descriptor(&self, text: &str) -> Result<CoeffGroupDesc, StructureError> {
        let t = text.trim();
        Ok(match t {
            "trivial" => CoeffGroupDesc::Trivial,
            "integers" => CoeffGroupDesc::integers(),
            "dyadic" => CoeffGroupDesc::Dyadics,
            _ => {
                if let Some(rest) = t.strip_prefix("dyadic+") {
                    CoeffGroupDesc::DyadicsPlus(self.rationals(rest)?)
                } else if let Some(rest) = t.strip_prefix("gen") {
                    CoeffGroupDesc::GeneratedBy(self.rationals(rest)?)
                } else if let Some(m) = t.strip_prefix("scaled(").and_then(|r| r.strip_suffix(')'))
                {
                    CoeffGroupDesc::ScaledIntegers(
                        m.trim()
                            .parse()
                            .map_err(|_| self.err(format!("bad scale `{m}`")))?,
                    )
                } else {
                    return Err(self.err(format!("unknown coefficient descriptor `{t}`")));
                }
            }
        })
    }

    fn gamma(&self, text: &str) -> Result<ExponentClassDesc, StructureError> {
        let t = text.trim();
        let (body, below) = match t.rfind('}') {
            Some(i) => (&t[..=i], t[i + 1..].trim()),
            None => return Err(self.err(format!("expected an exponent class, found `{t}`"))),
        };
        let (variant, list) = body
            .split_once('{')
            .ok_or_else(|| self.err("missing `{`"))?;
        let list = self.braced_list(&format!("{{{list}"))?;
        let g = match variant.trim() {
            "finite" => ExponentClassDesc::FiniteSet(list),
            "monoid" => ExponentClassDesc::GeneratedMonoid(list),
            "group" => ExponentClassDesc::GeneratedGroup(list),
            v => {
                return Err(self.err(format!(
                    "unknown exponent class `{v}`; expected finite, monoid or group"
                )))
            }
        };
        if below.is_empty() {
            return Ok(g);
        }
        let tau = below
            .strip_prefix("below")
            .ok_or_else(|| self.err(format!("unexpected `{below}`")))?
            .trim();
        let tau: Ordinal = tau
            .parse()
            .map_err(|e| self.err(format!("bad ordinal `{tau}`: {e}")))?;
        Ok(ExponentClassDesc::Below(Box::new(g), tau))
    }
}

/// Parses a spec, resolving names in expressions against `env`.
pub fn parse_spec(text: &str, env: &Env) -> Result<StructureSpec, StructureError> {
    let mut kind = None;
    let mut gamma = None;
    let mut coeff = Vec::new();
    let mut default = None;
    let mut fuel = DEFAULT_FUEL;
    for (i, raw) in text.lines().enumerate() {
        let line = Line { no: i + 1, env };
        let content = raw.split('#').next().unwrap_or("");
        for entry in content.split(';').map(str::trim).filter(|e| !e.is_empty()) {
            let (key, value) = entry
                .split_once(':')
                .ok_or_else(|| line.err(format!("expected `key: value`, found `{entry}`")))?;
            let value = value.trim();
            match key.trim() {
                "kind" => {
                    kind = Some(match value {
                        "group" => Kind::Group,
                        "domain" => Kind::Domain,
                        _ => {
                            return Err(
                                line.err(format!("kind must be group or domain, found `{value}`"))
                            )
                        }
                    })
                }
                "gamma" => gamma = Some(line.gamma(value)?),
                "coeff" => {
                    let (y, d) = value
                        .split_once("=>")
                        .ok_or_else(|| line.err("expected `coeff: <exponent> => <descriptor>`"))?;
                    let y = line.surreal(y)?;
                    if coeff.iter().any(|(z, _)| *z == y) {
                        return Err(line.err(format!("duplicate coefficient entry for {y}")));
                    }
                    coeff.push((y, line.descriptor(d)?));
                }
                "default" => default = Some(line.descriptor(value)?),
                "fuel" => {
                    fuel = value
                        .parse()
                        .map_err(|_| line.err(format!("bad fuel `{value}`")))?
                }
                k => return Err(line.err(format!("unknown key `{k}`"))),
            }
        }
    }
    let missing = |what: &str| StructureError::Parse {
        line: text.lines().count().max(1),
        msg: format!("missing `{what}:` entry"),
    };
    let kind = kind.ok_or_else(|| missing("kind"))?;
    let gamma = gamma.ok_or_else(|| missing("gamma"))?;
    StructureSpec::with_fuel(kind, gamma, coeff, default, fuel)
}

impl FromStr for StructureSpec {
    type Err = StructureError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_spec(s, &Env::new())
    }
}

impl fmt::Display for StructureSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "kind: {}", self.kind)?;
        write!(f, "gamma: {}", self.gamma)?;
        for (y, d) in &self.coeff {
            write!(f, "\ncoeff: {y} => {d}")?;
        }
        if let Some(d) = &self.default {
            write!(f, "\ndefault: {d}")?;
        }
        if self.fuel != DEFAULT_FUEL {
            write!(f, "\nfuel: {}", self.fuel)?;
        }
        Ok(())
    }
}
