#![allow(dead_code)]

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use surreal_cli::{Options, Session, Step};

pub const FUZZ_SEED: u64 = 0x5eed_c0de;

const TOKENS: &[&str] = &[
    "w",
    "ω",
    "^",
    "(",
    ")",
    "{",
    "}",
    "|",
    ",",
    "+",
    "-",
    "*",
    "/",
    "0",
    "1",
    "2",
    "7",
    "13",
    "1/2",
    "3/4",
    "1/3",
    "999999999999999999999",
    " ",
    " ",
    "x",
    "let",
    "=",
    ":",
    "#",
    ";",
    "@",
    "=>",
    "w^(",
    "w^(-1)",
    "{0 | 1}",
];

const COMMANDS: &[&str] = &[
    ":eval",
    ":nf",
    ":sign",
    ":rank",
    ":cmp",
    ":simpler",
    ":oz",
    ":ozfloor",
    ":omnific",
    ":oracle",
    ":let",
    "let",
    ":defgroup g",
    ":defdomain d",
    ":show g",
    ":check g",
    ":member g",
    ":discrete g",
    ":height g",
    ":archimedean g",
    ":convex g",
    ":classify",
    ":embed",
    ":help",
    ":frob",
];

const SEEDS: &[&str] = &[
    "{0 | 1}",
    "w^(1/2)*2 - 3",
    ":sign w + 1",
    ":cmp w, w + 1",
    ":oz {1/2 - 1 | 1/2 + 1}",
    ":defgroup g gamma: finite {0, -1}; coeff: 0 => dyadic; coeff: -1 => integers",
    ":defdomain d gamma: monoid {1}; default: integers",
    ":convex g 1",
    ":classify dyadic+{1/3} domain",
    "let x = {w | w^2}",
    ":member g 1/2 + 3*w^(-1)",
    ":oracle 3/4, -5/2",
];

fn soup(rng: &mut ChaCha8Rng) -> String {
    (0..rng.gen_range(0..16))
        .map(|_| *TOKENS.choose(rng).unwrap())
        .collect()
}

fn noise(rng: &mut ChaCha8Rng) -> String {
    (0..rng.gen_range(0..32))
        .map(|_| match rng.gen_range(0..10) {
            0 => char::from_u32(rng.gen_range(0..0x3000)).unwrap_or('?'),
            _ => rng.gen_range(b' '..=b'~') as char,
        })
        .collect()
}

fn mutate(rng: &mut ChaCha8Rng) -> String {
    let mut chars: Vec<char> = SEEDS.choose(rng).unwrap().chars().collect();
    for _ in 0..rng.gen_range(1..4) {
        let i = rng.gen_range(0..=chars.len());
        match rng.gen_range(0..3) {
            0 if i < chars.len() => {
                chars.remove(i);
            }
            1 if i < chars.len() => {
                chars[i] = *b"w^(){}|,+-*/0123456789 :;".choose(rng).unwrap() as char
            }
            _ => chars.insert(i, *b"w^(){}|,+-*/019 -".choose(rng).unwrap() as char),
        }
    }
    chars.into_iter().collect()
}

/// One fuzz input; lines mix token soup, raw noise and mutated valid commands.
pub fn fuzz_input(rng: &mut ChaCha8Rng) -> String {
    match rng.gen_range(0..5) {
        0 => soup(rng),
        1 => noise(rng),
        2 => format!("{} {}", COMMANDS.choose(rng).unwrap(), soup(rng)),
        _ => mutate(rng),
    }
}

pub struct FuzzReport {
    pub inputs: usize,
    pub panics: Vec<String>,
    pub errors: usize,
    pub slowest: (Duration, String),
}

/// Feeds `n` inputs through one session; a panic is an uncontrolled failure.
pub fn fuzz(n: usize) -> FuzzReport {
    let mut rng = ChaCha8Rng::seed_from_u64(FUZZ_SEED);
    let mut session = Session::new(Options::default());
    let mut report = FuzzReport {
        inputs: n,
        panics: Vec::new(),
        errors: 0,
        slowest: (Duration::ZERO, String::new()),
    };
    let hook = std::panic::take_hook();
    std::panic::set_hook(Box::new(|_| {}));
    for _ in 0..n {
        let input = fuzz_input(&mut rng);
        let start = Instant::now();
        match catch_unwind(AssertUnwindSafe(|| session.execute(&input))) {
            Ok(Step::Record(r)) if !r.ok() => report.errors += 1,
            Ok(_) => {}
            Err(_) => {
                report.panics.push(input.clone());
                session = Session::new(Options::default());
            }
        }
        let t = start.elapsed();
        if t > report.slowest.0 {
            report.slowest = (t, input);
        }
    }
    std::panic::set_hook(hook);
    report
}
