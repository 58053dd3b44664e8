//! Command interpreter behind the `surreal` binary.
//!
//! A line is either an expression, evaluated to its normal form, or a command
//! starting with `:`. [`Session::execute`] runs one line and returns a
//! [`Record`] that renders as text or as a JSON object.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde_json::json;
use surreal_core::conway::{
    from_sign_expansion_with, is_omnific, oz_floor, oz_truncation, sign_expansion_with, srl_add,
    srl_cmp, srl_mul, srl_simpler, ConwayError, Fuel, GeneticError, GeneticOracle, Surreal,
};
use surreal_core::ordinal::{Ordinal, OrdinalError};
use surreal_core::signexp::SignExpError;
use surreal_core::structures::{
    self, archimedean_height, classify_real_subdomain, classify_real_subgroup, convex_verdicts,
    is_archimedean, is_discrete, is_initial, is_subdomain_of_oz, parse_spec,
    section9_isomorphism_check, Answer, Discreteness, Kind, StructureError, StructureSpec, Verdict,
    DEFAULT_FUEL,
};
use surreal_core::syntax::{eval, parse_list, Env, EvalError, Expr, SyntaxError};

/// Samples drawn by `:convex` and `:archimedean`.
const SAMPLES: usize = 400;
/// Largest `--rank-bound` accepted; oracle tables grow exponentially in it.
pub const MAX_RANK_BOUND: usize = 12;

pub const VERBS: &[(&str, &str)] = &[
    ("eval", ":eval EXPR           normal form (also the meaning of a bare EXPR)"),
    ("nf", ":nf EXPR             normal form as an explicit sum of w^y*r terms"),
    ("sign", ":sign EXPR           sign expansion"),
    ("rank", ":rank EXPR           birthday (length of the sign expansion)"),
    ("cmp", ":cmp A, B            order comparison: <, = or >"),
    ("simpler", ":simpler A, B        whether A is a strict prefix of B"),
    ("oz", ":oz EXPR             omnific integer b with b-1 < a < b+1 and b simpler than a"),
    ("ozfloor", ":ozfloor EXPR        greatest omnific integer not above a"),
    ("omnific", ":omnific EXPR        whether EXPR is an omnific integer"),
    ("oracle", ":oracle A, B         sum and product by the genetic recursion, checked against normal forms"),
    ("let", ":let NAME = EXPR     bind a name for later expressions"),
    ("defgroup", ":defgroup NAME SPEC  define a subgroup; SPEC is inline (`;`-separated) or @FILE"),
    ("defdomain", ":defdomain NAME SPEC define a subdomain"),
    ("show", ":show NAME           print a structure in spec form"),
    ("check", ":check NAME|@FILE    initiality verdict, with a witness on failure"),
    ("member", ":member NAME EXPR    membership"),
    ("discrete", ":discrete NAME       discrete (least positive member) or dense"),
    ("height", ":height NAME         archimedean height w^e"),
    ("archimedean", ":archimedean NAME    direct sampled archimedean test"),
    ("convex", ":convex NAME TAU     convex restriction A[w^TAU] with its verdicts"),
    ("classify", ":classify DESC [domain]  classify a coefficient group or domain"),
    ("embed", ":embed [PAIRS]       check the map d + a/w -> w*d + a"),
    ("help", ":help                this list"),
    ("quit", ":quit                stop"),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCode {
    Syntax,
    Unbound,
    CutViolation,
    FuelExhausted,
    Unsupported,
    Oracle,
    Ordinal,
    SpecParse,
    SpecInvalid,
    Precondition,
    OutOfRange,
    RouteDisagreement,
    UnknownCommand,
    Arguments,
    UnknownStructure,
    Io,
}

impl ErrorCode {
    pub fn code(self) -> &'static str {
        match self {
            ErrorCode::Syntax => "E100",
            ErrorCode::Unbound => "E101",
            ErrorCode::CutViolation => "E102",
            ErrorCode::FuelExhausted => "E103",
            ErrorCode::Unsupported => "E104",
            ErrorCode::Oracle => "E105",
            ErrorCode::Ordinal => "E106",
            ErrorCode::SpecParse => "E200",
            ErrorCode::SpecInvalid => "E201",
            ErrorCode::Precondition => "E202",
            ErrorCode::OutOfRange => "E203",
            ErrorCode::RouteDisagreement => "E204",
            ErrorCode::UnknownCommand => "E300",
            ErrorCode::Arguments => "E301",
            ErrorCode::UnknownStructure => "E302",
            ErrorCode::Io => "E303",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: ErrorCode,
    pub message: String,
}

impl CliError {
    fn new(code: ErrorCode, message: impl Into<String>) -> Self {
        CliError {
            code,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "error[{}]: {}", self.code.code(), self.message)
    }
}

fn conway_code(e: &ConwayError) -> ErrorCode {
    match e {
        ConwayError::CutViolation { .. }
        | ConwayError::SignExp(SignExpError::CutViolation { .. }) => ErrorCode::CutViolation,
        ConwayError::FuelExhausted(_) | ConwayError::SignExp(SignExpError::FuelExhausted(_)) => {
            ErrorCode::FuelExhausted
        }
        _ => ErrorCode::Unsupported,
    }
}

impl From<ConwayError> for CliError {
    fn from(e: ConwayError) -> Self {
        CliError::new(conway_code(&e), e.to_string())
    }
}

impl From<EvalError> for CliError {
    fn from(e: EvalError) -> Self {
        let code = match &e {
            EvalError::Unbound(_) => ErrorCode::Unbound,
            EvalError::Conway { source, .. } => conway_code(source),
        };
        CliError::new(code, e.to_string())
    }
}

impl From<GeneticError> for CliError {
    fn from(e: GeneticError) -> Self {
        CliError::new(ErrorCode::Oracle, e.to_string())
    }
}

impl From<OrdinalError> for CliError {
    fn from(e: OrdinalError) -> Self {
        CliError::new(ErrorCode::Ordinal, e.to_string())
    }
}

impl From<StructureError> for CliError {
    fn from(e: StructureError) -> Self {
        let code = match &e {
            StructureError::Parse { .. } => ErrorCode::SpecParse,
            StructureError::Invalid(_) => ErrorCode::SpecInvalid,
            StructureError::Precondition(_) => ErrorCode::Precondition,
            StructureError::OutOfRange(_) => ErrorCode::OutOfRange,
            StructureError::RouteDisagreement { .. } => ErrorCode::RouteDisagreement,
        };
        CliError::new(code, e.to_string())
    }
}

/// Successful output of a command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reply {
    pub value: String,
    pub witness: Option<String>,
}

impl From<String> for Reply {
    fn from(value: String) -> Self {
        Reply {
            value,
            witness: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Record {
    pub verb: String,
    pub input: String,
    pub result: Result<Reply, CliError>,
    pub micros: u128,
}

impl Record {
    pub fn ok(&self) -> bool {
        self.result.is_ok()
    }

    /// Text form: the value, or `error[CODE]: message`.
    pub fn text(&self) -> String {
        match &self.result {
            Ok(r) => r.value.clone(),
            Err(e) => e.to_string(),
        }
    }

    /// One-line JSON object with fields verb, input, ok, value, witness, error, code, micros.
    pub fn json(&self) -> String {
        let (value, witness, error, code) = match &self.result {
            Ok(r) => (Some(r.value.as_str()), r.witness.as_deref(), None, None),
            Err(e) => (None, None, Some(e.message.as_str()), Some(e.code.code())),
        };
        json!({
            "verb": self.verb,
            "input": self.input,
            "ok": self.ok(),
            "value": value,
            "witness": witness,
            "error": error,
            "code": code,
            "micros": self.micros as u64,
        })
        .to_string()
    }
}

/// What a line did.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    Record(Record),
    /// Blank or comment line.
    Skip,
    Quit,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Options {
    pub fuel: usize,
    pub rank_bound: usize,
    pub unicode: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            fuel: DEFAULT_FUEL,
            rank_bound: surreal_core::conway::DEFAULT_RANK_BOUND,
            unicode: false,
        }
    }
}

pub struct Session {
    opts: Options,
    fuel: Fuel,
    env: Env,
    specs: BTreeMap<String, StructureSpec>,
    oracle: GeneticOracle,
    base: PathBuf,
}

type Outcome = Result<Reply, CliError>;

fn args_error(msg: impl Into<String>) -> CliError {
    CliError::new(ErrorCode::Arguments, msg)
}

fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    chars
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && s != "w"
}

impl Session {
    pub fn new(opts: Options) -> Self {
        let fuel = Fuel::from_level(opts.fuel);
        let oracle = GeneticOracle::new(opts.rank_bound.min(MAX_RANK_BOUND));
        Session {
            opts,
            fuel,
            env: Env::new(),
            specs: BTreeMap::new(),
            oracle,
            base: PathBuf::from("."),
        }
    }

    /// Directory that `@FILE` arguments are resolved against.
    pub fn with_base_dir(mut self, dir: impl Into<PathBuf>) -> Self {
        self.base = dir.into();
        self
    }

    pub fn execute(&mut self, line: &str) -> Step {
        let input = line.trim();
        if input.is_empty() || input.starts_with('#') {
            return Step::Skip;
        }
        let (verb, args, offset) = match input.strip_prefix(':') {
            Some(rest) => {
                let verb_len = rest.find(char::is_whitespace).unwrap_or(rest.len());
                let args = rest[verb_len..].trim_start();
                (&rest[..verb_len], args, input.len() - args.len())
            }
            None if input.starts_with("let ") || input == "let" => (
                "let",
                input[3..].trim_start(),
                input.len() - input[3..].trim_start().len(),
            ),
            None => ("eval", input, 0),
        };
        if verb == "quit" || verb == "q" {
            return Step::Quit;
        }
        let start = Instant::now();
        let result = self.dispatch(verb, args, offset);
        let verb = if VERBS.iter().any(|(v, _)| *v == verb) {
            verb
        } else {
            "unknown"
        };
        Step::Record(Record {
            verb: verb.to_string(),
            input: input.to_string(),
            result,
            micros: start.elapsed().as_micros(),
        })
    }

    fn dispatch(&mut self, verb: &str, args: &str, offset: usize) -> Outcome {
        match verb {
            "eval" => self.one(args, offset).map(|x| self.show(&x).into()),
            "nf" => self.one(args, offset).map(|x| {
                if self.opts.unicode {
                    x.nf_unicode().to_string()
                } else {
                    x.nf().to_string()
                }
                .into()
            }),
            "sign" => {
                let se = sign_expansion_with(&self.one(args, offset)?, &self.fuel)?;
                Ok(if self.opts.unicode {
                    se.unicode().to_string()
                } else {
                    se.to_string()
                }
                .into())
            }
            "rank" => Ok(self
                .ordinal(&sign_expansion_with(&self.one(args, offset)?, &self.fuel)?.rank())
                .into()),
            "cmp" => {
                let [a, b] = self.two(args, offset)?;
                Ok(match srl_cmp(&a, &b) {
                    std::cmp::Ordering::Less => "<",
                    std::cmp::Ordering::Equal => "=",
                    std::cmp::Ordering::Greater => ">",
                }
                .to_string()
                .into())
            }
            "simpler" => {
                let [a, b] = self.two(args, offset)?;
                Ok(srl_simpler(&a, &b)?.to_string().into())
            }
            "oz" => self
                .one(args, offset)
                .map(|x| self.show(&oz_truncation(&x)).into()),
            "ozfloor" => self
                .one(args, offset)
                .map(|x| self.show(&oz_floor(&x)).into()),
            "omnific" => self
                .one(args, offset)
                .map(|x| is_omnific(&x).to_string().into()),
            "oracle" => self.oracle(args, offset),
            "let" => self.bind(args, offset),
            "defgroup" => self.define(args, Kind::Group),
            "defdomain" => self.define(args, Kind::Domain),
            "show" => Ok(self.spec(args)?.to_string().into()),
            "check" => self.check(args),
            "member" => {
                let (name, rest) = split_name(args)?;
                let spec = self.spec(name)?.clone();
                let x = self.one(rest, offset + (args.len() - rest.len()))?;
                Ok(match spec.member(&x) {
                    Answer::Unknown(why) => Reply {
                        value: "unknown".into(),
                        witness: Some(why),
                    },
                    a => a.to_string().into(),
                })
            }
            "discrete" => {
                let spec = self.spec(args)?;
                let d = is_discrete(spec)?;
                let value = match d {
                    Discreteness::Discrete(x) => {
                        format!("discrete, least positive {}", self.show(&x))
                    }
                    Discreteness::Dense => "dense".into(),
                };
                Ok(match spec.kind() {
                    Kind::Domain => {
                        format!("{value}; subdomain of Oz: {}", is_subdomain_of_oz(spec)?)
                    }
                    Kind::Group => value,
                }
                .into())
            }
            "height" => {
                let h = archimedean_height(self.spec(args)?)?;
                let v = self.ordinal(&h.value());
                Ok(if h.exact {
                    v
                } else {
                    format!(">= {v} (fuel bound)")
                }
                .into())
            }
            "archimedean" => Ok(is_archimedean(self.spec(args)?, SAMPLES).to_string().into()),
            "convex" => {
                let (name, tau) = split_name(args)?;
                let tau: Ordinal = tau.trim().parse()?;
                let report = convex_verdicts(self.spec(name)?, &tau, SAMPLES)?;
                let witness = match &report.product {
                    Verdict::Fail(f) => Some(f.witness.to_string()),
                    _ => None,
                };
                Ok(Reply {
                    value: report.to_string(),
                    witness,
                })
            }
            "classify" => self.classify(args),
            "embed" => {
                let pairs = if args.is_empty() {
                    1000
                } else {
                    args.parse()
                        .map_err(|_| args_error(format!("bad pair count `{args}`")))?
                };
                if pairs > 100_000 {
                    return Err(args_error("at most 100000 pairs"));
                }
                let r = section9_isomorphism_check(pairs);
                Ok(Reply {
                    value: r.to_string(),
                    witness: None,
                })
            }
            "help" => Ok(VERBS
                .iter()
                .map(|(_, h)| *h)
                .collect::<Vec<_>>()
                .join("\n")
                .into()),
            _ => Err(CliError::new(
                ErrorCode::UnknownCommand,
                format!("unknown command `:{verb}`; try :help"),
            )),
        }
    }

    fn show(&self, x: &Surreal) -> String {
        if self.opts.unicode {
            x.unicode().to_string()
        } else {
            x.to_string()
        }
    }

    fn ordinal(&self, a: &Ordinal) -> String {
        if self.opts.unicode {
            a.unicode().to_string()
        } else {
            a.to_string()
        }
    }

    fn exprs(&self, args: &str, offset: usize) -> Result<Vec<Expr>, CliError> {
        parse_list(args).map_err(|e| syntax(e, offset))
    }

    fn eval_all(&self, args: &str, offset: usize) -> Result<Vec<Surreal>, CliError> {
        self.exprs(args, offset)?
            .iter()
            .map(|e| eval(e, &self.env, &self.fuel).map_err(CliError::from))
            .collect()
    }

    fn one(&self, args: &str, offset: usize) -> Result<Surreal, CliError> {
        match <[Surreal; 1]>::try_from(self.eval_all(args, offset)?) {
            Ok([x]) => Ok(x),
            Err(v) => Err(args_error(format!(
                "expected one expression, found {}",
                v.len()
            ))),
        }
    }

    fn two(&self, args: &str, offset: usize) -> Result<[Surreal; 2], CliError> {
        <[Surreal; 2]>::try_from(self.eval_all(args, offset)?).map_err(|v| {
            args_error(format!(
                "expected two comma-separated expressions, found {}",
                v.len()
            ))
        })
    }

    fn oracle(&self, args: &str, offset: usize) -> Outcome {
        let [a, b] = self.two(args, offset)?;
        let (sum, product) = (self.oracle.add(&a, &b)?, self.oracle.mul(&a, &b)?);
        let agree = sum == srl_add(&a, &b) && product == srl_mul(&a, &b);
        Ok(format!(
            "sum {}, product {}, {}",
            self.show(&sum),
            self.show(&product),
            if agree {
                "agrees with normal forms"
            } else {
                "DISAGREES with normal forms"
            }
        )
        .into())
    }

    fn bind(&mut self, args: &str, offset: usize) -> Outcome {
        let (name, rhs) = args
            .split_once('=')
            .ok_or_else(|| args_error("expected `let NAME = EXPR`"))?;
        let name = name.trim();
        if !is_name(name) {
            return Err(args_error(format!("`{name}` is not a valid name")));
        }
        let rhs_offset = offset + args.len() - rhs.len();
        let x = self.one(rhs, rhs_offset)?;
        let shown = self.show(&x);
        self.env.insert(name.to_string(), x);
        Ok(format!("{name} = {shown}").into())
    }

    fn load(&self, body: &str, kind: Option<Kind>) -> Result<StructureSpec, CliError> {
        let text = match body.strip_prefix('@') {
            Some(path) => {
                let path = resolve(&self.base, path.trim());
                std::fs::read_to_string(&path)
                    .map_err(|e| CliError::new(ErrorCode::Io, format!("{}: {e}", path.display())))?
            }
            None => body.to_string(),
        };
        let declares_kind = text.lines().any(|l| {
            l.split('#')
                .next()
                .unwrap_or("")
                .split(';')
                .any(|e| e.trim_start().starts_with("kind"))
        });
        let text = match (kind, declares_kind) {
            (Some(k), false) => format!("kind: {k}\n{text}"),
            _ => text,
        };
        // Inline text gains a leading line, so parse errors refer to the written entries.
        let mut spec = parse_spec(&text, &self.env).map_err(|e| {
            match (e, kind.is_some() && !declares_kind) {
                (StructureError::Parse { line, msg }, true) => StructureError::Parse {
                    line: line.saturating_sub(1).max(1),
                    msg,
                },
                (e, _) => e,
            }
        })?;
        if let Some(k) = kind {
            if spec.kind() != k {
                return Err(CliError::new(
                    ErrorCode::SpecInvalid,
                    format!("spec declares kind {} but :def{k} was used", spec.kind()),
                ));
            }
        }
        if spec.fuel() == DEFAULT_FUEL {
            spec = spec.with_fuel_level(self.opts.fuel);
        }
        Ok(spec)
    }

    fn define(&mut self, args: &str, kind: Kind) -> Outcome {
        let (name, body) = split_name(args)?;
        if body.trim().is_empty() {
            return Err(args_error("expected a spec after the name"));
        }
        let spec = self.load(body.trim(), Some(kind))?;
        let value = format!("{name}: {kind} with gamma {}", spec.gamma());
        self.specs.insert(name.to_string(), spec);
        Ok(value.into())
    }

    fn spec(&self, name: &str) -> Result<&StructureSpec, CliError> {
        let name = name.trim();
        if name.is_empty() {
            return Err(args_error("expected a structure name"));
        }
        self.specs.get(name).ok_or_else(|| {
            CliError::new(
                ErrorCode::UnknownStructure,
                format!("no structure named `{name}`"),
            )
        })
    }

    fn check(&self, args: &str) -> Outcome {
        let args = args.trim();
        let loaded;
        let spec = if args.starts_with('@') {
            loaded = self.load(args, None)?;
            &loaded
        } else {
            self.spec(args)?
        };
        let verdict = is_initial(spec);
        let witness = match &verdict {
            Verdict::Fail(f) => Some(f.witness.to_string()),
            _ => None,
        };
        Ok(Reply {
            value: format!("{} {}: {verdict}", spec.kind(), initial_word(spec.kind())),
            witness,
        })
    }

    fn classify(&self, args: &str) -> Outcome {
        let (desc, kind) = match args.trim().strip_suffix("domain") {
            Some(d) if !d.ends_with("dyadic+") => (d.trim(), Kind::Domain),
            _ => (
                args.trim()
                    .strip_suffix("group")
                    .map_or(args.trim(), str::trim),
                Kind::Group,
            ),
        };
        let probe = format!("kind: {kind}; gamma: finite {{0}}; coeff: 0 => {desc}");
        let parsed = match parse_spec(&probe, &self.env) {
            Ok(spec) => spec.coefficients_at(&Surreal::zero()).clone(),
            Err(StructureError::Invalid(_)) => {
                // Descriptors without 1 are still classifiable.
                return self.classify_loose(desc, kind);
            }
            Err(StructureError::Parse { msg, .. }) => {
                return Err(CliError::new(ErrorCode::SpecParse, msg))
            }
            Err(e) => return Err(e.into()),
        };
        Ok(classify_in(&parsed, kind).into())
    }

    fn classify_loose(&self, desc: &str, kind: Kind) -> Outcome {
        let probe = format!("kind: domain; gamma: finite {{0}}; coeff: 0 => {desc}");
        match parse_spec(&probe, &self.env) {
            Ok(spec) => Ok(classify_in(spec.coefficients_at(&Surreal::zero()), kind).into()),
            Err(e) => Err(e.into()),
        }
    }
}

fn classify_in(d: &structures::CoeffGroupDesc, kind: Kind) -> String {
    let class = match kind {
        Kind::Group => classify_real_subgroup(d),
        Kind::Domain => classify_real_subdomain(d),
    };
    format!("{} as a {kind}: {class}", d.canonical(kind))
}

fn initial_word(k: Kind) -> &'static str {
    match k {
        Kind::Group => "initiality",
        Kind::Domain => "initiality",
    }
}

fn syntax(e: SyntaxError, offset: usize) -> CliError {
    let col = if e.line == 1 { e.col + offset } else { e.col };
    CliError::new(ErrorCode::Syntax, format!("{}:{}: {}", e.line, col, e.msg))
}

fn split_name(args: &str) -> Result<(&str, &str), CliError> {
    let args = args.trim_start();
    let end = args.find(char::is_whitespace).unwrap_or(args.len());
    let name = &args[..end];
    if !is_name(name) {
        return Err(args_error(if name.is_empty() {
            "expected a structure name".to_string()
        } else {
            format!("`{name}` is not a valid name")
        }));
    }
    Ok((name, args[end..].trim_start()))
}

fn resolve(base: &Path, path: &str) -> PathBuf {
    let p = Path::new(path);
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

/// Reparses a printed value, for round-trip checks.
pub fn reparse(printed: &str) -> Result<Surreal, String> {
    surreal_core::syntax::parse_surreal(printed)
}

/// Sign expansion text back to a value.
pub fn decode_signs(text: &str, fuel: &Fuel) -> Result<Surreal, String> {
    let se = text.parse().map_err(|e: SignExpError| e.to_string())?;
    from_sign_expansion_with(&se, fuel).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(s: &mut Session, line: &str) -> Result<String, (ErrorCode, String)> {
        match s.execute(line) {
            Step::Record(r) => r.result.map(|r| r.value).map_err(|e| (e.code, e.message)),
            other => panic!("{line}: {other:?}"),
        }
    }

    #[test]
    fn expressions_and_verbs() {
        let mut s = Session::new(Options::default());
        assert_eq!(run(&mut s, "{0 | 1}").unwrap(), "1/2");
        assert_eq!(run(&mut s, "w - 1 + 1").unwrap(), "w");
        assert_eq!(run(&mut s, ":sign 3/4").unwrap(), "+-+");
        assert_eq!(run(&mut s, ":cmp w, w + 1").unwrap(), "<");
        assert_eq!(run(&mut s, ":simpler 1, 3/2").unwrap(), "true");
        assert_eq!(run(&mut s, ":oz w + 1/2").unwrap(), "w");
        assert_eq!(run(&mut s, "let x = w^(1/2)").unwrap(), "x = w^(1/2)");
        assert_eq!(run(&mut s, "x * x").unwrap(), "w");
        assert_eq!(run(&mut s, ":rank w^(-1)").unwrap(), "w");
        assert!(run(&mut s, ":oracle 1/2, 3")
            .unwrap()
            .ends_with("agrees with normal forms"));
        assert_eq!(s.execute("  # note"), Step::Skip);
        assert_eq!(s.execute(":quit"), Step::Quit);
    }

    #[test]
    fn error_classes() {
        let mut s = Session::new(Options::default());
        let code = |s: &mut Session, l: &str| run(s, l).unwrap_err().0;
        assert_eq!(code(&mut s, "1 +"), ErrorCode::Syntax);
        assert_eq!(code(&mut s, "y + 1"), ErrorCode::Unbound);
        assert_eq!(code(&mut s, "{1 | 0}"), ErrorCode::CutViolation);
        assert_eq!(code(&mut s, ":sign 1/3"), ErrorCode::Unsupported);
        assert_eq!(code(&mut s, ":oracle w, 1"), ErrorCode::Oracle);
        assert_eq!(code(&mut s, ":frobnicate"), ErrorCode::UnknownCommand);
        assert_eq!(code(&mut s, ":cmp 1"), ErrorCode::Arguments);
        assert_eq!(code(&mut s, ":check nothing"), ErrorCode::UnknownStructure);
        assert_eq!(
            code(&mut s, ":defgroup g gamma: finite {0}; coeff: 0 => reals"),
            ErrorCode::SpecParse
        );
        assert_eq!(
            code(
                &mut s,
                ":defgroup g gamma: finite {0, 1}; coeff: 0 => integers"
            ),
            ErrorCode::SpecInvalid
        );
        assert_eq!(
            code(&mut s, ":check @/nonexistent/file.spec"),
            ErrorCode::Io
        );
        run(
            &mut s,
            ":defgroup bad gamma: finite {0, -1}; default: integers",
        )
        .unwrap();
        assert_eq!(code(&mut s, ":discrete bad"), ErrorCode::Precondition);
        run(
            &mut s,
            ":defgroup z gamma: finite {0}; coeff: 0 => integers",
        )
        .unwrap();
        assert_eq!(code(&mut s, ":convex z 5"), ErrorCode::OutOfRange);
        assert_eq!(code(&mut s, ":convex z w^"), ErrorCode::Ordinal);
    }

    #[test]
    fn syntax_positions_are_relative_to_the_line() {
        let mut s = Session::new(Options::default());
        let (_, msg) = run(&mut s, ":eval 1 + )").unwrap_err();
        assert!(msg.starts_with("1:11:"), "{msg}");
        let (_, msg) = run(&mut s, "1 + )").unwrap_err();
        assert!(msg.starts_with("1:5:"), "{msg}");
    }

    #[test]
    fn structures() {
        let mut s = Session::new(Options::default());
        run(
            &mut s,
            ":defgroup inv gamma: finite {0, -1}; coeff: 0 => dyadic; coeff: -1 => integers",
        )
        .unwrap();
        assert_eq!(run(&mut s, ":check inv").unwrap(), "group initiality: pass");
        assert_eq!(
            run(&mut s, ":discrete inv").unwrap(),
            "discrete, least positive w^(-1)"
        );
        assert_eq!(run(&mut s, ":member inv 1/2 + 3*w^(-1)").unwrap(), "true");
        assert_eq!(run(&mut s, ":height inv").unwrap(), "w");
        run(&mut s, ":defdomain p gamma: monoid {1}; default: integers").unwrap();
        assert_eq!(
            run(&mut s, ":discrete p").unwrap(),
            "discrete, least positive 1; subdomain of Oz: true"
        );
        assert_eq!(run(&mut s, ":height p").unwrap(), "w^(w)");
        assert_eq!(
            run(&mut s, ":classify gen{1/3}").unwrap(),
            "gen{1/3} as a group: not initial: 1/3 is a member but its prefix 1/2 is not"
        );
        assert_eq!(
            run(&mut s, ":classify dyadic+{1/3} domain").unwrap(),
            "dyadic+{1/3} as a domain: contains dyadics"
        );
    }

    #[test]
    fn json_records_have_stable_fields() {
        let mut s = Session::new(Options::default());
        let Step::Record(r) = s.execute("{1 | 0}") else {
            panic!()
        };
        let v: serde_json::Value = serde_json::from_str(&r.json()).unwrap();
        for k in [
            "verb", "input", "ok", "value", "witness", "error", "code", "micros",
        ] {
            assert!(v.get(k).is_some(), "{k}");
        }
        assert_eq!(v["ok"], false);
        assert_eq!(v["code"], "E102");
    }
}
