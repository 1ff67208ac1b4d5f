//! Sparse multivariate polynomials with a weight grading.
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`] under graded-lex order,
//! so two polynomials are equal exactly when their stored data is equal.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::RingError;
use crate::coeff::Coeff;

pub const TAU: usize = 0;
pub const Q: usize = 1;
pub const Y0: usize = 2;
pub const Y1: usize = 3;
pub const Y2: usize = 4;
pub const Y3: usize = 5;

pub const X0: usize = 0;
pub const X1: usize = 1;
pub const X2: usize = 2;
pub const X3: usize = 3;
pub const X4: usize = 4;

/// The variable sets the crate works with.
///
/// `Affine` is N = Q[τ, q, y0, y1, y2]; `Extended` adjoins the auxiliary
/// weight-one variable y3 used for weight homogenization; `Projective` is
/// K[X0..X4] whose coefficients live in Q[t].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VarSet {
    Affine,
    Extended,
    Projective,
}

impl VarSet {
    pub const fn len(self) -> usize {
        match self {
            VarSet::Affine | VarSet::Projective => 5,
            VarSet::Extended => 6,
        }
    }

    pub fn names(self) -> &'static [&'static str] {
        match self {
            VarSet::Affine => &["tau", "q", "y0", "y1", "y2"],
            VarSet::Extended => &["tau", "q", "y0", "y1", "y2", "y3"],
            VarSet::Projective => &["X0", "X1", "X2", "X3", "X4"],
        }
    }

    /// Grading: p(yi) = 1, p(τ) = p(q) = 0; every X has degree one.
    pub fn weight_of(self, var: usize) -> u32 {
        match self {
            VarSet::Affine | VarSet::Extended => u32::from(var >= Y0),
            VarSet::Projective => 1,
        }
    }

    pub fn index_of(self, name: &str) -> Option<usize> {
        let name = if name == "τ" { "tau" } else { name };
        self.names().iter().position(|n| *n == name)
    }

    pub fn name(self) -> &'static str {
        match self {
            VarSet::Affine => "affine",
            VarSet::Extended => "extended",
            VarSet::Projective => "projective",
        }
    }
}

/// Exponent vector. Ordered graded-lex with the last variable most
/// significant (τ < q < y0 < y1 < y2).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, var: usize, exp: u32) -> Self {
        let mut m = Self::one(nvars);
        m.0[var] = exp;
        m
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn exp(&self, var: usize) -> u32 {
        self.0[var]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn weight(&self, vars: VarSet) -> u32 {
        self.0.iter().enumerate().map(|(i, e)| e * vars.weight_of(i)).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        self.divides(other)
            .then(|| Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn with_exp(&self, var: usize, exp: u32) -> Monomial {
        let mut m = self.clone();
        m.0[var] = exp;
        m
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct Poly<C: Coeff> {
    vars: VarSet,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coeff> Poly<C> {
    pub fn zero(vars: VarSet) -> Self {
        Poly { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: VarSet, c: C) -> Self {
        Self::term(vars, Monomial::one(vars.len()), c)
    }

    pub fn one(vars: VarSet) -> Self {
        Self::constant(vars, C::one())
    }

    pub fn from_int(vars: VarSet, n: i64) -> Self {
        Self::constant(vars, C::from_int(n))
    }

    pub fn var(vars: VarSet, var: usize) -> Self {
        Self::term(vars, Monomial::var(vars.len(), var, 1), C::one())
    }

    pub fn term(vars: VarSet, mono: Monomial, c: C) -> Self {
        assert_eq!(mono.exps().len(), vars.len(), "monomial arity mismatch");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mono, c);
        }
        Poly { vars, terms }
    }

    /// Collects terms, summing repeated monomials and dropping zeros.
    pub fn from_terms(vars: VarSet, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn vars(&self) -> VarSet {
        self.vars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mono: &Monomial) -> C {
        self.terms.get(mono).cloned().unwrap_or_else(C::zero)
    }

    /// The constant term, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, mono: Monomial, c: &C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                e.get_mut().add_assign_ref(c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_same(&self, other: &Self) -> Result<(), RingError> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(RingError::DomainMismatch { left: self.vars, right: other.vars })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, RingError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, RingError> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, RingError> {
        self.check_same(other)?;
        let mut out = Self::zero(self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), &ca.mul_ref(cb));
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg_ref())
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars);
        }
        self.map_coeffs(|x| x.mul_ref(c))
    }

    /// Multiplies by a single term.
    pub fn mul_term(&self, mono: &Monomial, c: &C) -> Self {
        let mut out = Self::zero(self.vars);
        for (m, x) in &self.terms {
            out.add_term(m.mul(mono), &x.mul_ref(c));
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.vars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Coefficient-wise map; zero results are dropped.
    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let d = f(c);
            if !d.is_zero() {
                terms.insert(m.clone(), d);
            }
        }
        Poly { vars: self.vars, terms }
    }

    pub fn partial_degree(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(var)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Partial degrees in every variable.
    pub fn degree_profile(&self) -> Vec<u32> {
        (0..self.vars.len()).map(|v| self.partial_degree(v)).collect()
    }

    /// Largest weight of a monomial.
    pub fn weight(&self) -> Result<u32, RingError> {
        self.terms
            .keys()
            .map(|m| m.weight(self.vars))
            .max()
            .ok_or(RingError::ZeroPolynomial)
    }

    pub fn is_isobaric(&self) -> bool {
        let mut ws = self.terms.keys().map(|m| m.weight(self.vars));
        match ws.next() {
            Some(w) => ws.all(|x| x == w),
            None => true,
        }
    }

    /// Whether every term is homogeneous of one total degree.
    pub fn is_homogeneous(&self) -> bool {
        let mut ds = self.terms.keys().map(Monomial::degree);
        match ds.next() {
            Some(d) => ds.all(|x| x == d),
            None => true,
        }
    }

    /// Whether only the listed variables occur.
    pub fn uses_only(&self, allowed: &[usize]) -> bool {
        self.terms.keys().all(|m| {
            m.exps().iter().enumerate().all(|(i, e)| *e == 0 || allowed.contains(&i))
        })
    }

    /// Whether the polynomial lies in R = Q[y0, y1, y2].
    pub fn in_r(&self) -> bool {
        self.vars != VarSet::Projective && self.uses_only(&[Y0, Y1, Y2])
    }

    /// Split into isobaric pieces, ascending by weight.
    pub fn isobaric_components(&self) -> Result<Vec<(u32, Poly<C>)>, RingError> {
        if self.is_zero() {
            return Err(RingError::ZeroPolynomial);
        }
        let mut parts: BTreeMap<u32, Poly<C>> = BTreeMap::new();
        for (m, c) in &self.terms {
            parts
                .entry(m.weight(self.vars))
                .or_insert_with(|| Self::zero(self.vars))
                .add_term(m.clone(), c);
        }
        Ok(parts.into_iter().collect())
    }

    pub fn partial_derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(self.vars);
        for (m, c) in &self.terms {
            let e = m.exp(var);
            if e > 0 {
                out.add_term(m.with_exp(var, e - 1), &c.mul_ref(&C::from_int(i64::from(e))));
            }
        }
        out
    }

    /// Simultaneous substitution of every variable; `images[i]` replaces
    /// variable `i`. All images must share one variable set, which becomes
    /// the variable set of the result.
    pub fn substitute_all(&self, images: &[Poly<C>]) -> Self {
        assert_eq!(images.len(), self.vars.len(), "one image per variable");
        let target = images[0].vars;
        let mut powers: Vec<Vec<Poly<C>>> = images.iter().map(|p| vec![Poly::one(p.vars), p.clone()]).collect();
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut acc = Self::constant(target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                acc = &acc * &powers[i][e as usize];
            }
            for (mm, cc) in acc.terms {
                out.add_term(mm, &cc);
            }
        }
        out
    }

    /// Replaces the listed variables, leaving the others untouched.
    pub fn substitute(&self, subs: &[(usize, Poly<C>)]) -> Result<Self, RingError> {
        let mut images: Vec<Poly<C>> = (0..self.vars.len()).map(|i| Self::var(self.vars, i)).collect();
        for (v, p) in subs {
            self.check_same(p)?;
            images[*v] = p.clone();
        }
        Ok(self.substitute_all(&images))
    }

    /// Re-expresses the polynomial in another variable set, sending
    /// variable `i` to `mapping[i]`.
    pub fn embed(&self, target: VarSet, mapping: &[usize]) -> Self {
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut exps = vec![0; target.len()];
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    exps[mapping[i]] += e;
                }
            }
            out.add_term(Monomial::new(exps), c);
        }
        out
    }

    /// Multivariate division by a single polynomial: `self = q * d + r`
    /// where no term of `r` is divisible by the leading monomial of `d`.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self), RingError> {
        self.check_same(d)?;
        let (lm, lc) = d.leading_term().ok_or(RingError::ZeroPolynomial)?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut p = self.clone();
        let mut quot = Self::zero(self.vars);
        let mut rem = Self::zero(self.vars);
        while let Some((m, c)) = p.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            let step = lm.quotient_of(&m).and_then(|qm| c.try_div(&lc).map(|qc| (qm, qc)));
            match step {
                Some((qm, qc)) => {
                    p = &p - &d.mul_term(&qm, &qc);
                    quot.add_term(qm, &qc);
                }
                None => {
                    p.terms.remove(&m);
                    rem.add_term(m, &c);
                }
            }
        }
        Ok((quot, rem))
    }

    /// `self / d` when the division is exact.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d).ok()?;
        r.is_zero().then_some(q)
    }

    /// Weight homogenization with the auxiliary variable y3:
    /// `y3^p F(y0/y3, y1/y3, y2/y3)` where `p` is the weight of `F`.
    pub fn homogenize_weight(&self) -> Result<Self, RingError> {
        let p = self.weight()?;
        if !self.in_r() {
            return Err(RingError::VariableOutsideR);
        }
        let mut out = Self::zero(VarSet::Extended);
        for (m, c) in &self.terms {
            let mut exps = vec![0; VarSet::Extended.len()];
            exps[..m.exps().len()].copy_from_slice(m.exps());
            exps[Y3] += p - m.weight(self.vars);
            out.add_term(Monomial::new(exps), c);
        }
        Ok(out)
    }
}

impl<'a, C: Coeff> std::ops::Add for &'a Poly<C> {
    type Output = Poly<C>;
    /// Panics if the variable sets differ; see [`Poly::checked_add`].
    fn add(self, rhs: Self) -> Poly<C> {
        self.checked_add(rhs).expect("polynomials over different variable sets")
    }
}

impl<'a, C: Coeff> std::ops::Sub for &'a Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: Self) -> Poly<C> {
        self.checked_sub(rhs).expect("polynomials over different variable sets")
    }
}

impl<'a, C: Coeff> std::ops::Mul for &'a Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: Self) -> Poly<C> {
        self.checked_mul(rhs).expect("polynomials over different variable sets")
    }
}

impl<'a, C: Coeff> std::ops::Neg for &'a Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly::neg(self)
    }
}

impl<C: Coeff> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let names = self.vars.names();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let (neg, mag, atomic) = c.render();
            match (idx, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let factors: Vec<String> = m
                .exps()
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(i, e)| if *e == 1 { names[i].to_string() } else { format!("{}^{}", names[i], e) })
                .collect();
            let coeff_text = if atomic { mag } else { format!("({mag})") };
            if factors.is_empty() {
                f.write_str(&coeff_text)?;
            } else if coeff_text == "1" {
                f.write_str(&factors.join("*"))?;
            } else {
                write!(f, "{}*{}", coeff_text, factors.join("*"))?;
            }
        }
        Ok(())
    }
}
