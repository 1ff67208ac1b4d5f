//! Gauss hypergeometric series, the local expansions of u₀², y₀, y₁, y₂
//! at z = 0, 1, ∞, the Γ-ratio connection constants, and numeric checks of
//! the differential equation and the connection formulas.
//!
//! With s′ = (α+β−γ+1)/2 the basic solution is
//! u₀ = z^{γ/2}(1−z)^{s′}·₂F₁(α,β;γ;z), its companion is
//! u₁ = z^{1−γ/2}(1−z)^{s′}·₂F₁(α−γ+1,β−γ+1;2−γ;z), and
//! y₀ = u₀u₀′, y₁ = y₀ − u₀²/z, y₂ = y₀ − u₀²/(z−1), τ = u₁/u₀, q = e^τ.

mod expansions;
mod formal;
mod numeric;
mod ode;

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{format_rational, Q};
use crate::series::SeriesError;

pub use expansions::{
    at_infinity, at_one, at_zero, expansion_ram, leading_terms, symbolic_at, u1_at_zero, LeadingTerm, LocalExpansion,
    ZeroGenerators,
};
pub use formal::{eval_poly, formal_checks, FormalCheck};
pub use numeric::{
    connection_constants, hyp2f1, numeric_checks, parse_complex, theta_by_extrapolation, u_values, CheckLine,
    ConnectionConstants, NamedConstant, NumericReport, SamplePlan,
};
pub use ode::{LinearOde, NormalForm};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HypergeomError {
    #[error("lower parameter {c} is a nonpositive integer")]
    PolarParameter { c: String },
    #[error("sample point {z} lies on a branch cut or singular point")]
    CutLineViolation { z: String },
    #[error("series did not converge at {z}")]
    NotConvergent { z: String },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// The three singular points and their local variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExpansionPoint {
    /// local variable z
    Zero,
    /// local variable 1 − z
    One,
    /// local variable (−z)^{−1}
    Infinity,
}

impl ExpansionPoint {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "0" | "zero" => Some(Self::Zero),
            "1" | "one" => Some(Self::One),
            "inf" | "infinity" | "∞" => Some(Self::Infinity),
            _ => None,
        }
    }

    pub fn local_variable(self) -> &'static str {
        match self {
            Self::Zero => "z",
            Self::One => "(1-z)",
            Self::Infinity => "(-z)^(-1)",
        }
    }
}

impl fmt::Display for ExpansionPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Zero => "0",
            Self::One => "1",
            Self::Infinity => "inf",
        })
    }
}

/// Falling factorial (x)_n = (x−n+1)(x−n+2)⋯(x−1)x; (x)_0 = 1.
pub fn pochhammer_falling(x: &Q, n: u32) -> Q {
    (0..n).fold(Q::one(), |acc, k| acc * (x - Q::from_integer(k.into())))
}

/// Rising factorial x(x+1)⋯(x+n−1).
pub fn pochhammer_rising(x: &Q, n: u32) -> Q {
    (0..n).fold(Q::one(), |acc, k| acc * (x + Q::from_integer(k.into())))
}

/// Coefficients of x^0..x^{n−1} in (1 + sign·x)^s, i.e. (s)_k sign^k / k!.
pub fn binomial_coeffs(s: &Q, sign: i64, n: usize) -> Vec<Q> {
    let mut out = Vec::with_capacity(n);
    let mut c = Q::one();
    for k in 0..n {
        out.push(c.clone());
        let k = Q::from_integer((k as i64).into());
        c = c * (s - &k) / (&k + Q::one()) * Q::from_integer(sign.into());
    }
    out
}

fn is_nonpositive_integer(c: &Q) -> bool {
    c.is_integer() && *c <= Q::zero()
}

/// Coefficients of z^0..z^{n−1} of ₂F₁(a,b;c;z) (rising factorials).
pub fn gauss_2f1(a: &Q, b: &Q, c: &Q, n: usize) -> Result<Vec<Q>, HypergeomError> {
    if is_nonpositive_integer(c) {
        return Err(HypergeomError::PolarParameter { c: format_rational(c) });
    }
    let mut out = Vec::with_capacity(n);
    let mut t = Q::one();
    for k in 0..n {
        out.push(t.clone());
        let k = Q::from_integer((k as i64).into());
        t = t * (a + &k) * (b + &k) / ((c + &k) * (&k + Q::one()));
    }
    Ok(out)
}
