//! Hypergeometric parameter triples (α, β, γ) and the scalar constants
//! derived from them.
//!
//! A valid triple consists of unit fractions with γ > α + β and
//! 1 > γ > β > α > 0.

use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{self, denom_u64, format_rational, int, is_unit_fraction, parse_rational, rat, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamsError {
    #[error("{name} = {value} is not the inverse of a positive integer")]
    NotUnitFraction { name: &'static str, value: String },
    #[error("ordering 1 > gamma > beta > alpha > 0 violated: {detail}")]
    OrderingViolated { detail: String },
    #[error("gamma > alpha + beta violated: gamma = {gamma}, alpha + beta = {sum}")]
    SumConstraintViolated { gamma: String, sum: String },
    #[error("cannot parse parameter triple: {0}")]
    Parse(String),
}

/// A validated parameter triple.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TriangleParams {
    #[serde(serialize_with = "rational::serialize_q", deserialize_with = "rational::deserialize_q")]
    alpha: Q,
    #[serde(serialize_with = "rational::serialize_q", deserialize_with = "rational::deserialize_q")]
    beta: Q,
    #[serde(serialize_with = "rational::serialize_q", deserialize_with = "rational::deserialize_q")]
    gamma: Q,
}

/// Constants a, b, c of the normal-form equation, w = 1 - γ, and the
/// ramification index `ram` (least common denominator of α, β, γ).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DerivedConstants {
    #[serde(serialize_with = "rational::serialize_q")]
    pub a: Q,
    #[serde(serialize_with = "rational::serialize_q")]
    pub b: Q,
    #[serde(serialize_with = "rational::serialize_q")]
    pub c: Q,
    #[serde(serialize_with = "rational::serialize_q")]
    pub w: Q,
    pub ram: u64,
}

/// The constants a, b, c for an arbitrary triple (no validity required).
pub fn abc(alpha: &Q, beta: &Q, gamma: &Q) -> (Q, Q, Q) {
    let two = int(2);
    let ab2 = &two * alpha * beta;
    let s = alpha + beta;
    let a = gamma * (Q::one() - &s) + &ab2;
    let b = &s * (gamma - &s) + &ab2 - gamma + Q::one();
    let c = gamma * (&s - gamma + Q::one()) - &ab2;
    (a, b, c)
}

/// f(α, β, γ) = ab + ac + bc.
pub fn f_value(alpha: &Q, beta: &Q, gamma: &Q) -> Q {
    let (a, b, c) = abc(alpha, beta, gamma);
    &a * &b + &a * &c + &b * &c
}

/// Left-hand sides of the simultaneous critical-point conditions of f.
pub fn critical_residuals(alpha: &Q, beta: &Q, gamma: &Q) -> [Q; 3] {
    let one = Q::one();
    let two = int(2);
    [
        (&two * alpha - gamma) * (&two * beta * beta + gamma - &two * beta * gamma),
        (&two * beta - gamma) * (&two * alpha * alpha + gamma - &two * alpha * gamma),
        (&one - alpha - beta + &two * alpha * beta) * (&one + alpha + beta - &two * gamma),
    ]
}

impl TriangleParams {
    pub fn new(alpha: Q, beta: Q, gamma: Q) -> Result<Self, ParamsError> {
        validate(alpha, beta, gamma)
    }

    pub fn alpha(&self) -> &Q {
        &self.alpha
    }

    pub fn beta(&self) -> &Q {
        &self.beta
    }

    pub fn gamma(&self) -> &Q {
        &self.gamma
    }

    pub fn derived_constants(&self) -> DerivedConstants {
        let (a, b, c) = abc(&self.alpha, &self.beta, &self.gamma);
        let ram = [&self.alpha, &self.beta, &self.gamma]
            .into_iter()
            .map(denom_u64)
            .fold(1, rational::lcm_u64);
        DerivedConstants { a, b, c, w: Q::one() - &self.gamma, ram }
    }

    /// The four factors (a+b), (a+c), (b+c), (ab+bc+ac) of η.
    pub fn eta_factors(&self) -> [Q; 4] {
        let (a, b, c) = abc(&self.alpha, &self.beta, &self.gamma);
        [&a + &b, &a + &c, &b + &c, &a * &b + &b * &c + &a * &c]
    }

    /// η = (a+b)(a+c)(b+c)(ab+bc+ac).
    pub fn eta(&self) -> Q {
        self.eta_factors().iter().fold(Q::one(), |acc, f| acc * f)
    }

    pub fn to_f64(&self) -> (f64, f64, f64) {
        (rational::to_f64(&self.alpha), rational::to_f64(&self.beta), rational::to_f64(&self.gamma))
    }

    /// `α,β,γ` in the rational text format.
    pub fn to_arg(&self) -> String {
        format!("{},{},{}", format_rational(&self.alpha), format_rational(&self.beta), format_rational(&self.gamma))
    }
}

impl fmt::Display for TriangleParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(alpha, beta, gamma) = ({}, {}, {})",
            format_rational(&self.alpha),
            format_rational(&self.beta),
            format_rational(&self.gamma)
        )
    }
}

pub fn validate(alpha: Q, beta: Q, gamma: Q) -> Result<TriangleParams, ParamsError> {
    for (name, v) in [("alpha", &alpha), ("beta", &beta), ("gamma", &gamma)] {
        if !is_unit_fraction(v) {
            return Err(ParamsError::NotUnitFraction { name, value: format_rational(v) });
        }
    }
    let mut broken = Vec::new();
    if gamma >= Q::one() {
        broken.push("gamma < 1");
    }
    if gamma <= beta {
        broken.push("gamma > beta");
    }
    if beta <= alpha {
        broken.push("beta > alpha");
    }
    if !alpha.is_positive() {
        broken.push("alpha > 0");
    }
    if !broken.is_empty() {
        return Err(ParamsError::OrderingViolated { detail: format!("requires {}", broken.join(", ")) });
    }
    let sum = &alpha + &beta;
    if gamma <= sum {
        return Err(ParamsError::SumConstraintViolated {
            gamma: format_rational(&gamma),
            sum: format_rational(&sum),
        });
    }
    Ok(TriangleParams { alpha, beta, gamma })
}

/// Parses `a/b,c/d,e/f` (commas or whitespace) into a validated triple.
pub fn parse_params(text: &str) -> Result<TriangleParams, ParamsError> {
    let parts: Vec<&str> = text.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).collect();
    if parts.len() != 3 {
        return Err(ParamsError::Parse(format!("expected three rationals, got `{text}`")));
    }
    let vals: Result<Vec<Q>, _> = parts.iter().map(|p| parse_rational(p)).collect();
    let vals = vals.map_err(|e| ParamsError::Parse(e.to_string()))?;
    let [a, b, c]: [Q; 3] = vals.try_into().expect("three values");
    validate(a, b, c)
}

/// Every valid unit-fraction triple whose denominators are at most `max_den`,
/// ordered by (γ, β, α) denominators.
pub fn enumerate_valid(max_den: u64) -> Vec<TriangleParams> {
    let mut out = Vec::new();
    for nc in 2..=max_den {
        for nb in nc + 1..=max_den {
            for na in nb + 1..=max_den {
                let (alpha, beta, gamma) = (rat(1, na as i64), rat(1, nb as i64), rat(1, nc as i64));
                if let Ok(p) = validate(alpha, beta, gamma) {
                    out.push(p);
                }
            }
        }
    }
    out
}

/// `count` distinct valid triples drawn with a fixed seed from the
/// enumeration up to denominator 30.
pub fn sample_valid(count: usize, seed: u64) -> Vec<TriangleParams> {
    let mut all = enumerate_valid(30);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    all.shuffle(&mut rng);
    all.truncate(count);
    all
}

#[derive(Debug, Clone, Serialize)]
pub struct EtaScan {
    pub max_denominator: u64,
    pub triples_checked: usize,
    pub all_positive: bool,
    #[serde(serialize_with = "rational::serialize_q")]
    pub min_eta: Q,
    pub argmin: Option<TriangleParams>,
    pub failures: Vec<TriangleParams>,
}

/// Exhaustive exact scan of η over valid triples with bounded denominators.
pub fn eta_scan(max_den: u64) -> EtaScan {
    let triples = enumerate_valid(max_den);
    let etas: Vec<Q> = triples.par_iter().map(TriangleParams::eta).collect();
    let failures: Vec<TriangleParams> =
        triples.iter().zip(&etas).filter(|(_, e)| !e.is_positive()).map(|(p, _)| p.clone()).collect();
    let argmin = etas.iter().enumerate().min_by(|a, b| a.1.cmp(b.1)).map(|(i, _)| i);
    EtaScan {
        max_denominator: max_den,
        triples_checked: triples.len(),
        all_positive: failures.is_empty(),
        min_eta: argmin.map(|i| etas[i].clone()).unwrap_or_else(Q::zero),
        argmin: argmin.map(|i| triples[i].clone()),
        failures,
    }
}

/// Informative floating sample of f = ab + ac + bc over the open region
/// 0 < α < β < γ < 1 (not restricted to unit fractions).
#[derive(Debug, Clone, Serialize)]
pub struct RegionSample {
    pub samples: usize,
    pub seed: u64,
    pub min_f: f64,
    pub argmin: (f64, f64, f64),
}

pub fn region_sample(samples: usize, seed: u64) -> RegionSample {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = (f64::INFINITY, (0.0, 0.0, 0.0));
    for _ in 0..samples {
        let mut v = [rng.gen::<f64>(), rng.gen::<f64>(), rng.gen::<f64>()];
        v.sort_by(|a, b| a.total_cmp(b));
        let [al, be, ga] = v;
        let a = ga * (1.0 - al - be) + 2.0 * al * be;
        let b = (al + be) * (ga - al - be) + 2.0 * al * be - ga + 1.0;
        let c = ga * (al + be - ga + 1.0) - 2.0 * al * be;
        let f = a * b + a * c + b * c;
        if f < best.0 {
            best = (f, (al, be, ga));
        }
    }
    RegionSample { samples, seed, min_f: best.0, argmin: best.1 }
}
