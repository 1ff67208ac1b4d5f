//! Truncated Puiseux series `Σ c_k x^{(offset + k)/ram}`.
//!
//! Exponents are stored as integers in units of `1/ram`. Every series
//! carries an absolute precision `prec` (same units): the coefficients of
//! all exponents below `prec / ram` are certified, nothing at or above it
//! is. Arithmetic propagates precision pessimistically, so a coefficient
//! that is reported is always correct.

mod sympoly;

use std::fmt;

use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coeff::{Coeff, Domain};
use crate::rational::{self, denom_u64, format_rational, lcm_u64, parse_rational, Q};

pub use sympoly::{SymPoly, OMEGA, OMEGA1, SYMBOLS, THETA, THETA_P, ZETA1};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SeriesError {
    #[error("leading coefficient is not invertible or the series vanishes to its precision")]
    NonUnitInverse,
    #[error("coefficient domains differ ({left} vs {right})")]
    DomainMismatch { left: &'static str, right: &'static str },
    #[error("exp needs a series of positive order")]
    NonpositiveOrder,
    #[error("all coefficients below x^{precision} vanish; raise the truncation order")]
    Inconclusive { precision: String },
    #[error("invalid series JSON: {0}")]
    Json(String),
}

#[derive(Clone, PartialEq, Debug)]
pub struct Puiseux<C: Coeff> {
    ram: u64,
    offset: i64,
    coeffs: Vec<C>,
    prec: i64,
}

fn div_floor(a: i64, b: i64) -> i64 {
    a.div_euclid(b)
}

impl<C: Coeff> Puiseux<C> {
    /// Builds a series from dense coefficients starting at `offset`; the
    /// vector is padded with zeros or cut so that it ends at `prec`.
    pub fn new(ram: u64, offset: i64, mut coeffs: Vec<C>, prec: i64) -> Self {
        assert!(ram > 0, "ramification must be positive");
        let offset = offset.min(prec);
        coeffs.resize((prec - offset) as usize, C::zero());
        Puiseux { ram, offset, coeffs, prec }
    }

    /// O(x^{prec/ram}).
    pub fn zero(ram: u64, prec: i64) -> Self {
        Self::new(ram, prec, Vec::new(), prec)
    }

    /// `c x^{exp/ram} + O(x^{prec/ram})`.
    pub fn monomial(ram: u64, exp: i64, c: C, prec: i64) -> Self {
        if exp >= prec {
            return Self::zero(ram, prec);
        }
        Self::new(ram, exp, vec![c], prec)
    }

    /// Power series `Σ c_n x^n` known up to `x^prec` (exclusive).
    pub fn from_power_series(coeffs: Vec<C>, prec: i64) -> Self {
        Self::new(1, 0, coeffs, prec)
    }

    pub fn ram(&self) -> u64 {
        self.ram
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// Exponent of the first stored coefficient.
    pub fn base_exponent(&self) -> Q {
        Q::new(self.offset.into(), (self.ram as i64).into())
    }

    /// Exponent below which coefficients are certified.
    pub fn precision_exponent(&self) -> Q {
        Q::new(self.prec.into(), (self.ram as i64).into())
    }

    /// Number of stored (certified) coefficients.
    pub fn truncation(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient at exponent index `idx` (units of 1/ram), `None` past
    /// the precision.
    pub fn coeff_at(&self, idx: i64) -> Option<C> {
        if idx >= self.prec {
            None
        } else if idx < self.offset {
            Some(C::zero())
        } else {
            Some(self.coeffs[(idx - self.offset) as usize].clone())
        }
    }

    /// Coefficient at a rational exponent, `None` past the precision or
    /// off the lattice of this ramification.
    pub fn coeff_of_exponent(&self, e: &Q) -> Option<C> {
        let scaled = e * Q::from_integer((self.ram as i64).into());
        if !scaled.is_integer() {
            return None;
        }
        i64::try_from(scaled.to_integer()).ok().and_then(|i| self.coeff_at(i))
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs.iter().position(|c| !c.is_zero()).map(|i| self.offset + i as i64)
    }

    pub fn ord(&self) -> Result<Q, SeriesError> {
        self.valuation()
            .map(|v| Q::new(v.into(), (self.ram as i64).into()))
            .ok_or_else(|| SeriesError::Inconclusive { precision: format_rational(&self.precision_exponent()) })
    }

    pub fn leading_coeff(&self) -> Result<C, SeriesError> {
        let v = self.valuation().ok_or_else(|| SeriesError::Inconclusive {
            precision: format_rational(&self.precision_exponent()),
        })?;
        Ok(self.coeffs[(v - self.offset) as usize].clone())
    }

    /// Same series over ramification `ram`, which must be a multiple of
    /// the current one.
    pub fn with_ram(&self, ram: u64) -> Self {
        assert!(ram % self.ram == 0, "ramification {ram} is not a multiple of {}", self.ram);
        let m = (ram / self.ram) as i64;
        if m == 1 {
            return self.clone();
        }
        let mut coeffs = vec![C::zero(); self.coeffs.len() * m as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k * m as usize] = c.clone();
        }
        Puiseux { ram, offset: self.offset * m, coeffs, prec: self.prec * m }
    }

    /// Smallest ramification that still represents every stored exponent;
    /// precision is rounded down to the coarser lattice.
    pub fn reduce_ram(&self) -> Self {
        let mut g = self.ram as i64;
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                g = num_integer::gcd(g, self.offset + k as i64);
            }
        }
        if g <= 1 {
            return self.clone();
        }
        let prec = div_floor(self.prec, g);
        let ram = self.ram / g as u64;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(k, _)| (self.offset + *k as i64) % g == 0)
            .map(|(k, c)| ((self.offset + k as i64) / g, c.clone()))
            .collect::<Vec<_>>();
        let offset = coeffs.first().map(|(i, _)| *i).unwrap_or(prec).min(prec);
        let mut dense = vec![C::zero(); (prec - offset).max(0) as usize];
        for (i, c) in coeffs {
            if i < prec {
                dense[(i - offset) as usize] = c;
            }
        }
        Puiseux { ram, offset, coeffs: dense, prec }
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        let r = lcm_u64(self.ram, other.ram);
        (self.with_ram(r), other.with_ram(r))
    }

    /// Lowers the precision to `prec` (units of 1/ram).
    pub fn truncate(&self, prec: i64) -> Self {
        if prec >= self.prec {
            return self.clone();
        }
        let offset = self.offset.min(prec);
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate((prec - offset) as usize);
        Puiseux { ram: self.ram, offset, coeffs, prec }
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        let prec = a.prec.min(b.prec);
        let offset = a.offset.min(b.offset).min(prec);
        let mut coeffs = vec![C::zero(); (prec - offset) as usize];
        for s in [&a, &b] {
            for (k, c) in s.coeffs.iter().enumerate() {
                let idx = s.offset + k as i64;
                if idx < prec && !c.is_zero() {
                    coeffs[(idx - offset) as usize].add_assign_ref(c);
                }
            }
        }
        Puiseux { ram: a.ram, offset, coeffs, prec }
    }

    pub fn neg(&self) -> Self {
        Puiseux { coeffs: self.coeffs.iter().map(C::neg_ref).collect(), ..self.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        Puiseux { coeffs: self.coeffs.iter().map(|x| x.mul_ref(c)).collect(), ..self.clone() }
    }

    pub fn scale_rational(&self, q: &Q) -> Self {
        Puiseux { coeffs: self.coeffs.iter().map(|x| x.scale_rational(q)).collect(), ..self.clone() }
    }

    /// Multiplies by `x^{shift/ram}` exactly.
    pub fn shift(&self, shift: i64) -> Self {
        Puiseux { offset: self.offset + shift, prec: self.prec + shift, ..self.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        let va = a.valuation().unwrap_or(a.prec);
        let vb = b.valuation().unwrap_or(b.prec);
        let prec = (a.prec + vb).min(b.prec + va);
        let offset = (a.offset + b.offset).min(prec);
        let len = (prec - offset) as usize;
        let mut coeffs = vec![C::zero(); len];
        let nzb: Vec<(usize, &C)> = b.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        let base = a.offset + b.offset - offset;
        for (i, ca) in a.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for &(j, cb) in &nzb {
                let idx = base + (i + j) as i64;
                if idx >= len as i64 {
                    break;
                }
                coeffs[idx as usize].add_mul_assign(ca, cb);
            }
        }
        Puiseux { ram: a.ram, offset, coeffs, prec }
    }

    /// `self^n`; the empty power is 1 to the relative precision of `self`.
    pub fn pow(&self, n: u32) -> Self {
        if n == 0 {
            let rel = self.prec - self.valuation().unwrap_or(self.offset);
            return Self::monomial(self.ram, 0, C::one(), rel.max(1));
        }
        let mut acc = self.clone();
        for _ in 1..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse of a series whose leading coefficient is a
    /// unit; relative precision is preserved.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let v = self.valuation().ok_or(SeriesError::NonUnitInverse)?;
        let lead = &self.coeffs[(v - self.offset) as usize];
        let inv_lead = C::one().try_div(lead).ok_or(SeriesError::NonUnitInverse)?;
        let rel = (self.prec - v) as usize;
        let f = &self.coeffs[(v - self.offset) as usize..];
        let mut g: Vec<C> = Vec::with_capacity(rel);
        g.push(inv_lead.clone());
        for n in 1..rel {
            let mut acc = C::zero();
            for k in 1..=n {
                if !f[k].is_zero() {
                    acc.add_mul_assign(&f[k], &g[n - k]);
                }
            }
            g.push(acc.mul_ref(&inv_lead).neg_ref());
        }
        Ok(Puiseux { ram: self.ram, offset: -v, coeffs: g, prec: rel as i64 - v })
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, SeriesError> {
        Ok(self.mul(&other.inverse()?))
    }

    /// d/dx.
    pub fn derivative(&self) -> Self {
        let r = self.ram as i64;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let e = Q::new((self.offset + k as i64).into(), r.into());
                if c.is_zero() || e.is_zero() {
                    C::zero()
                } else {
                    c.scale_rational(&e)
                }
            })
            .collect();
        Puiseux { ram: self.ram, offset: self.offset - r, coeffs, prec: self.prec - r }
    }

    /// exp(f) for f of positive order (or vanishing to a positive precision).
    pub fn exp(&self) -> Result<Self, SeriesError> {
        match self.valuation() {
            Some(v) if v <= 0 => return Err(SeriesError::NonpositiveOrder),
            None if self.prec <= 0 => return Err(SeriesError::NonpositiveOrder),
            _ => {}
        }
        let len = self.prec as usize;
        let f = |k: usize| -> Option<&C> {
            let idx = k as i64 - self.offset;
            (idx >= 0 && (idx as usize) < self.coeffs.len()).then(|| &self.coeffs[idx as usize])
        };
        let mut e: Vec<C> = Vec::with_capacity(len);
        e.push(C::one());
        for n in 1..len {
            let mut acc = C::zero();
            for k in 1..=n {
                if let Some(fk) = f(k) {
                    if !fk.is_zero() {
                        acc.add_mul_assign(&fk.scale_rational(&Q::from_integer((k as i64).into())), &e[n - k]);
                    }
                }
            }
            e.push(acc.scale_rational(&Q::new(1.into(), (n as i64).into())));
        }
        Ok(Puiseux { ram: self.ram, offset: 0, coeffs: e, prec: self.prec })
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Puiseux<D> {
        Puiseux { ram: self.ram, offset: self.offset, coeffs: self.coeffs.iter().map(f).collect(), prec: self.prec }
    }

    /// Nonzero terms as (exponent, coefficient).
    pub fn nonzero_terms(&self) -> Vec<(Q, C)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (Q::new((self.offset + k as i64).into(), (self.ram as i64).into()), c.clone()))
            .collect()
    }

    /// True when every certified coefficient vanishes.
    pub fn is_zero_to_precision(&self) -> bool {
        self.valuation().is_none()
    }
}

impl Puiseux<Complex64> {
    /// Sum of the stored terms at `x`, principal branch for x^{1/ram}.
    pub fn eval(&self, x: Complex64) -> Complex64 {
        let root = if self.ram == 1 { x } else { (x.ln() / self.ram as f64).exp() };
        let mut acc = Complex64::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * root + c;
        }
        acc * root.powi(self.offset as i32)
    }
}

impl Puiseux<Q> {
    pub fn to_complex(&self) -> Puiseux<Complex64> {
        self.map_coeffs(|c| Complex64::new(rational::to_f64(c), 0.0))
    }

    pub fn to_symbolic(&self) -> Puiseux<SymPoly> {
        self.map_coeffs(SymPoly::from_rational)
    }
}

impl Puiseux<SymPoly> {
    pub fn eval_constants(&self, values: &[Complex64; 5]) -> Puiseux<Complex64> {
        self.map_coeffs(|c| c.eval(values))
    }
}

impl<C: Coeff> fmt::Display for Puiseux<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.nonzero_terms() {
            let (neg, mag, atomic) = c.render();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mag = if atomic { mag } else { format!("({mag})") };
            if e.is_zero() {
                f.write_str(&mag)?;
            } else {
                write!(f, "{mag}*x^({})", format_rational(&e))?;
            }
        }
        if !first {
            f.write_str(" + ")?;
        }
        write!(f, "O(x^({}))", format_rational(&self.precision_exponent()))
    }
}

/// Coefficient encoding used by the JSON schema.
pub trait JsonCoeff: Coeff {
    fn to_value(&self) -> serde_json::Value;
    fn from_value(v: &serde_json::Value) -> Result<Self, SeriesError>;
}

impl JsonCoeff for Q {
    fn to_value(&self) -> serde_json::Value {
        serde_json::Value::String(format_rational(self))
    }
    fn from_value(v: &serde_json::Value) -> Result<Self, SeriesError> {
        let s = v.as_str().ok_or_else(|| SeriesError::Json("rational coefficient must be a string".into()))?;
        parse_rational(s).map_err(|e| SeriesError::Json(e.to_string()))
    }
}

impl JsonCoeff for SymPoly {
    fn to_value(&self) -> serde_json::Value {
        serde_json::Value::String(self.to_string())
    }
    fn from_value(v: &serde_json::Value) -> Result<Self, SeriesError> {
        let s = v.as_str().ok_or_else(|| SeriesError::Json("symbolic coefficient must be a string".into()))?;
        let p = crate::ring::parse_poly::<SymPoly>(s, crate::ring::VarSet::Affine)
            .map_err(|e| SeriesError::Json(e.to_string()))?;
        p.as_constant().ok_or_else(|| SeriesError::Json(format!("`{s}` is not a constant expression")))
    }
}

impl JsonCoeff for Complex64 {
    fn to_value(&self) -> serde_json::Value {
        serde_json::json!([self.re, self.im])
    }
    fn from_value(v: &serde_json::Value) -> Result<Self, SeriesError> {
        let arr: [f64; 2] = serde_json::from_value(v.clone())
            .map_err(|_| SeriesError::Json("complex coefficient must be [re, im]".into()))?;
        Ok(Complex64::new(arr[0], arr[1]))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoeffJson {
    pub k: usize,
    pub value: serde_json::Value,
}

/// `{ram, base_exponent, coeffs: [{k, value}], truncation, domain}`:
/// coefficient `k` sits at exponent `base_exponent + k/ram`, and indices
/// `k < truncation` are certified (absent ones are zero).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub ram: u64,
    pub base_exponent: String,
    pub coeffs: Vec<CoeffJson>,
    pub truncation: usize,
    pub domain: Domain,
}

impl<C: JsonCoeff> Puiseux<C> {
    pub fn to_json(&self) -> SeriesJson {
        SeriesJson {
            ram: self.ram,
            base_exponent: format_rational(&self.base_exponent()),
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| CoeffJson { k, value: c.to_value() })
                .collect(),
            truncation: self.coeffs.len(),
            domain: C::DOMAIN,
        }
    }

    pub fn from_json(json: &SeriesJson) -> Result<Self, SeriesError> {
        if json.domain != C::DOMAIN {
            return Err(SeriesError::DomainMismatch { left: json.domain.name(), right: C::DOMAIN.name() });
        }
        if json.ram == 0 {
            return Err(SeriesError::Json("ram must be positive".into()));
        }
        let e0 = parse_rational(&json.base_exponent).map_err(|e| SeriesError::Json(e.to_string()))?;
        if json.ram % denom_u64(&e0) != 0 {
            return Err(SeriesError::Json("base_exponent denominator must divide ram".into()));
        }
        let offset = e0 * Q::from_integer((json.ram as i64).into());
        let offset = i64::try_from(offset.to_integer()).map_err(|_| SeriesError::Json("exponent too large".into()))?;
        let mut coeffs = vec![C::zero(); json.truncation];
        for c in &json.coeffs {
            if c.k >= json.truncation {
                return Err(SeriesError::Json(format!("coefficient index {} beyond truncation", c.k)));
            }
            coeffs[c.k] = C::from_value(&c.value)?;
        }
        Ok(Self::new(json.ram, offset, coeffs, offset + json.truncation as i64))
    }
}

/// A series whose coefficient domain is only known at run time (JSON input).
#[derive(Debug, Clone, PartialEq)]
pub enum AnySeries {
    Exact(Puiseux<Q>),
    Symbolic(Puiseux<SymPoly>),
    Float(Puiseux<Complex64>),
}

impl AnySeries {
    pub fn domain(&self) -> Domain {
        match self {
            AnySeries::Exact(_) => Domain::ExactRational,
            AnySeries::Symbolic(_) => Domain::RationalWithAdjoinedConstants,
            AnySeries::Float(_) => Domain::FloatingComplex,
        }
    }

    pub fn from_json(json: &SeriesJson) -> Result<Self, SeriesError> {
        match json.domain {
            Domain::ExactRational => Puiseux::from_json(json).map(AnySeries::Exact),
            Domain::RationalWithAdjoinedConstants => Puiseux::from_json(json).map(AnySeries::Symbolic),
            Domain::FloatingComplex => Puiseux::from_json(json).map(AnySeries::Float),
            Domain::RationalPolynomialT => Err(SeriesError::Json("series over Q[t] are not supported".into())),
        }
    }

    pub fn to_json(&self) -> SeriesJson {
        match self {
            AnySeries::Exact(s) => s.to_json(),
            AnySeries::Symbolic(s) => s.to_json(),
            AnySeries::Float(s) => s.to_json(),
        }
    }

    fn mismatch(&self, other: &Self) -> SeriesError {
        SeriesError::DomainMismatch { left: self.domain().name(), right: other.domain().name() }
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        match (self, other) {
            (AnySeries::Exact(a), AnySeries::Exact(b)) => Ok(AnySeries::Exact(a.add(b))),
            (AnySeries::Symbolic(a), AnySeries::Symbolic(b)) => Ok(AnySeries::Symbolic(a.add(b))),
            (AnySeries::Float(a), AnySeries::Float(b)) => Ok(AnySeries::Float(a.add(b))),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        match (self, other) {
            (AnySeries::Exact(a), AnySeries::Exact(b)) => Ok(AnySeries::Exact(a.mul(b))),
            (AnySeries::Symbolic(a), AnySeries::Symbolic(b)) => Ok(AnySeries::Symbolic(a.mul(b))),
            (AnySeries::Float(a), AnySeries::Float(b)) => Ok(AnySeries::Float(a.mul(b))),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn ord(&self) -> Result<Q, SeriesError> {
        match self {
            AnySeries::Exact(s) => s.ord(),
            AnySeries::Symbolic(s) => s.ord(),
            AnySeries::Float(s) => s.ord(),
        }
    }
}
