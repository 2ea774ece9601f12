//! Exact parameter points and the scalar expression language.
//!
//! A [`ParamPoint`] fixes the constants of one of the two cases:
//!
//! * **free**: three exponents `g10, g20, g30` subject to the quadratic
//!   constraint `g20*g30 + g30*g10 + g10*g20 = 0`, plus three nonzero
//!   couplings `g11, g21, g31`;
//! * **bounce**: a ratio `u > 0, u != 1` and couplings `g21, g31`, with
//!   `g11` fixed to one.
//!
//! Everything is exact: rationals are `BigRational` and there is no
//! floating point anywhere in the crate.

mod expr;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use expr::{BinOp, ScalarExpr};
pub(crate) use expr::{parse_ast, write_bin, write_child, Ast, PREC_ATOM, PREC_NEG, PREC_POW};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Bound on sampled numerators and denominators.
pub const SAMPLE_BOUND: i64 = 100;
/// Candidates drawn before giving up.
pub const SAMPLE_RETRIES: usize = 10_000;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"n"` or `"n/d"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::parse(format!("`{s}`"), "expected a rational `n` or `n/d`");
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Canonical `"n/d"` rendering (`"n"` for integers).
pub fn format_rational(v: &Rational) -> String {
    v.to_string()
}

pub(crate) mod rational_str {
    use super::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Case {
    Free,
    Bounce,
}

impl Case {
    pub fn name(self) -> &'static str {
        match self {
            Case::Free => "free",
            Case::Bounce => "bounce",
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Case {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "free" => Ok(Case::Free),
            "bounce" => Ok(Case::Bounce),
            _ => Err(Error::parse("case", format!("unknown case `{s}`"))),
        }
    }
}

/// Named constant that may appear in a scalar expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Param {
    G10,
    G20,
    G30,
    G11,
    G21,
    G31,
    U,
}

impl Param {
    pub const ALL: [Param; 7] = [
        Param::G10,
        Param::G20,
        Param::G30,
        Param::G11,
        Param::G21,
        Param::G31,
        Param::U,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Param::G10 => "g10",
            Param::G20 => "g20",
            Param::G30 => "g30",
            Param::G11 => "g11",
            Param::G21 => "g21",
            Param::G31 => "g31",
            Param::U => "u",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Param::ALL.into_iter().find(|p| p.name() == s)
    }
}

/// Exact values of all constants for one case.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamPoint {
    pub case: Case,
    #[serde(with = "rational_str")]
    pub g10: Rational,
    #[serde(with = "rational_str")]
    pub g20: Rational,
    #[serde(with = "rational_str")]
    pub g30: Rational,
    #[serde(with = "rational_str")]
    pub g11: Rational,
    #[serde(with = "rational_str")]
    pub g21: Rational,
    #[serde(with = "rational_str")]
    pub g31: Rational,
    #[serde(with = "rational_str")]
    pub u: Rational,
}

/// A violated clause of the parameter constraints.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub clause: &'static str,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.clause, self.detail)
    }
}

impl ParamPoint {
    pub fn free(g0: [Rational; 3], g1: [Rational; 3]) -> Self {
        let [g10, g20, g30] = g0;
        let [g11, g21, g31] = g1;
        ParamPoint {
            case: Case::Free,
            g10,
            g20,
            g30,
            g11,
            g21,
            g31,
            u: Rational::zero(),
        }
    }

    /// Bounce point; `g11` is fixed to one and the exponents are unused.
    pub fn bounce(u: Rational, g21: Rational, g31: Rational) -> Self {
        ParamPoint {
            case: Case::Bounce,
            g10: Rational::zero(),
            g20: Rational::zero(),
            g30: Rational::zero(),
            g11: Rational::one(),
            g21,
            g31,
            u,
        }
    }

    /// `g0 = (2/7, -3/7, -6/7)`, `g1 = (1, 2, 3)`.
    pub fn reference_free() -> Self {
        Self::free([rat(2, 7), rat(-3, 7), rat(-6, 7)], [int(1), int(2), int(3)])
    }

    /// `u = 2`, `g21 = 1`, `g31 = -1`.
    pub fn reference_bounce() -> Self {
        Self::bounce(int(2), int(1), int(-1))
    }

    pub fn reference(case: Case) -> Self {
        match case {
            Case::Free => Self::reference_free(),
            Case::Bounce => Self::reference_bounce(),
        }
    }

    pub fn get(&self, p: Param) -> &Rational {
        match p {
            Param::G10 => &self.g10,
            Param::G20 => &self.g20,
            Param::G30 => &self.g30,
            Param::G11 => &self.g11,
            Param::G21 => &self.g21,
            Param::G31 => &self.g31,
            Param::U => &self.u,
        }
    }

    pub fn g0(&self) -> [&Rational; 3] {
        [&self.g10, &self.g20, &self.g30]
    }

    pub fn g1(&self) -> [&Rational; 3] {
        [&self.g11, &self.g21, &self.g31]
    }

    /// `g20*g30 + g30*g10 + g10*g20`.
    pub fn kasner_form(&self) -> Rational {
        &self.g20 * &self.g30 + &self.g30 * &self.g10 + &self.g10 * &self.g20
    }

    /// Lists every violated clause; empty iff the point is valid for its case.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut push = |clause, detail: String| out.push(Violation { clause, detail });
        let names = ["g10", "g20", "g30"];
        match self.case {
            Case::Free => {
                let g = self.g0();
                for (i, v) in g.iter().enumerate() {
                    if v.is_zero() {
                        push("nonzero", format!("{} = 0", names[i]));
                    }
                }
                for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                    if g[i] == g[j] {
                        push("pairwise-distinct", format!("{} = {}", names[i], names[j]));
                    }
                }
                for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                    let s = g[i] + g[j];
                    if !s.is_negative() {
                        push("pairwise-sum-negative", format!("{} + {} = {s}", names[i], names[j]));
                    }
                }
                let k = self.kasner_form();
                if !k.is_zero() {
                    push("Kasner-constraint", format!("g20*g30 + g30*g10 + g10*g20 = {k}"));
                }
                for (i, v) in self.g1().iter().enumerate() {
                    if v.is_zero() {
                        push("couplings-nonzero", format!("g{}1 = 0", i + 1));
                    }
                }
            }
            Case::Bounce => {
                if !self.u.is_positive() {
                    push("u-positive", format!("u = {}", self.u));
                }
                if self.u.is_one() {
                    push("u-not-one", "u = 1".into());
                }
                if !self.g11.is_one() {
                    push("g11-is-one", format!("g11 = {}", self.g11));
                }
                for (name, v) in [("g21", &self.g21), ("g31", &self.g31)] {
                    if v.is_zero() {
                        push("couplings-nonzero", format!("{name} = 0"));
                    }
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidPoint(v.iter().map(|v| v.to_string()).collect()))
        }
    }

    pub fn from_json(src: &str) -> Result<Self> {
        serde_json::from_str(src).map_err(|e| Error::parse("parameter file", e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("point serializes")
    }
}

impl fmt::Display for ParamPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.case {
            Case::Free => write!(
                f,
                "free(g0 = ({}, {}, {}), g1 = ({}, {}, {}))",
                self.g10, self.g20, self.g30, self.g11, self.g21, self.g31
            ),
            Case::Bounce => write!(f, "bounce(u = {}, g21 = {}, g31 = {})", self.u, self.g21, self.g31),
        }
    }
}

fn random_rational(rng: &mut ChaCha8Rng, nonzero: bool) -> Rational {
    loop {
        let n = rng.gen_range(-SAMPLE_BOUND..=SAMPLE_BOUND);
        let d = rng.gen_range(1..=SAMPLE_BOUND);
        if !nonzero || n != 0 {
            return rat(n, d);
        }
    }
}

/// Draws a free-case candidate: `g30 = -ab/(a+b)` solves the quadratic
/// constraint for any `(g10, g20) = (a, b)` with `a + b != 0`.
pub fn free_candidate(a: Rational, b: Rational, g1: [Rational; 3]) -> Option<ParamPoint> {
    let s = &a + &b;
    if s.is_zero() {
        return None;
    }
    let c = -(&a * &b) / s;
    Some(ParamPoint::free([a, b, c], g1))
}

/// Deterministic valid free-case point. Seed 0 is the reference point.
pub fn sample_free_point(seed: u64) -> Result<ParamPoint> {
    sample_free_point_with(seed, SAMPLE_RETRIES)
}

pub fn sample_free_point_with(seed: u64, retries: usize) -> Result<ParamPoint> {
    if seed == 0 {
        return Ok(ParamPoint::reference_free());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..retries {
        let a = random_rational(&mut rng, true);
        let b = random_rational(&mut rng, true);
        let g1 = [
            random_rational(&mut rng, true),
            random_rational(&mut rng, true),
            random_rational(&mut rng, true),
        ];
        if let Some(p) = free_candidate(a, b, g1) {
            if p.is_valid() {
                return Ok(p);
            }
        }
    }
    Err(Error::SamplingExhausted { attempts: retries })
}

/// Deterministic valid bounce point. Seed 0 is the reference point.
pub fn sample_bounce_point(seed: u64) -> Result<ParamPoint> {
    if seed == 0 {
        return Ok(ParamPoint::reference_bounce());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SAMPLE_RETRIES {
        let n = rng.gen_range(1..=SAMPLE_BOUND);
        let d = rng.gen_range(1..=SAMPLE_BOUND);
        let p = ParamPoint::bounce(
            rat(n, d),
            random_rational(&mut rng, true),
            random_rational(&mut rng, true),
        );
        if p.is_valid() {
            return Ok(p);
        }
    }
    Err(Error::SamplingExhausted {
        attempts: SAMPLE_RETRIES,
    })
}

pub fn sample_point(case: Case, seed: u64) -> Result<ParamPoint> {
    match case {
        Case::Free => sample_free_point(seed),
        Case::Bounce => sample_bounce_point(seed),
    }
}
