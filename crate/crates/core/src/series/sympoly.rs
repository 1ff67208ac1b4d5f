//! Polynomials over Q in the opaque connection constants θ, θ′, ζ₁, ω, ω₁.
//!
//! No relations between the symbols are assumed; numeric values are bound
//! only at evaluation time.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use crate::coeff::{Coeff, Domain};
use crate::rational::{self, format_rational, Q};

/// Symbol names, in exponent-vector order.
pub const SYMBOLS: [&str; 5] = ["theta", "theta_p", "zeta1", "omega", "omega1"];

pub const THETA: usize = 0;
pub const THETA_P: usize = 1;
pub const ZETA1: usize = 2;
pub const OMEGA: usize = 3;
pub const OMEGA1: usize = 4;

#[derive(Clone, PartialEq, Eq, Debug, Default, Hash)]
pub struct SymPoly {
    terms: BTreeMap<[u32; 5], Q>,
}

impl SymPoly {
    pub fn symbol_index(idx: usize) -> Self {
        let mut e = [0; 5];
        e[idx] = 1;
        Self::monomial(e, Q::one())
    }

    pub fn monomial(exps: [u32; 5], c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        SymPoly { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; 5], &Q)> {
        self.terms.iter()
    }

    /// Constant term when no symbol occurs.
    pub fn as_rational(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => self.terms.get(&[0; 5]).cloned(),
            _ => None,
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc.mul_ref(self))
    }

    /// Numeric value with `values[i]` bound to `SYMBOLS[i]`.
    pub fn eval(&self, values: &[Complex64; 5]) -> Complex64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut v = Complex64::new(rational::to_f64(c), 0.0);
                for (i, &k) in e.iter().enumerate() {
                    v *= values[i].powu(k);
                }
                v
            })
            .sum()
    }

    fn add_into(&mut self, e: [u32; 5], c: Q) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }
}

fn monomial_text(e: &[u32; 5]) -> String {
    e.iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| if k == 1 { SYMBOLS[i].to_string() } else { format!("{}^{k}", SYMBOLS[i]) })
        .collect::<Vec<_>>()
        .join("*")
}

impl Zero for SymPoly {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for SymPoly {
    fn one() -> Self {
        Self::monomial([0; 5], Q::one())
    }
}

impl std::ops::Add for SymPoly {
    type Output = Self;
    fn add(self, other: Self) -> Self {
        self.add_ref(&other)
    }
}

impl std::ops::Mul for SymPoly {
    type Output = Self;
    fn mul(self, other: Self) -> Self {
        self.mul_ref(&other)
    }
}

impl Coeff for SymPoly {
    const DOMAIN: Domain = Domain::RationalWithAdjoinedConstants;

    fn from_rational(q: &Q) -> Self {
        Self::monomial([0; 5], q.clone())
    }
    fn add_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_into(*e, c.clone());
        }
        out
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }
    fn mul_ref(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let mut e = *ea;
                for i in 0..5 {
                    e[i] += eb[i];
                }
                out.add_into(e, ca * cb);
            }
        }
        out
    }
    fn neg_ref(&self) -> Self {
        SymPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
    fn try_div(&self, other: &Self) -> Option<Self> {
        let d = other.as_rational().filter(|d| !d.is_zero())?;
        Some(self.scale_rational(&(Q::one() / d)))
    }
    fn scale_rational(&self, q: &Q) -> Self {
        if q.is_zero() {
            return Self::default();
        }
        SymPoly { terms: self.terms.iter().map(|(e, c)| (*e, c * q)).collect() }
    }
    fn symbol(name: &str) -> Option<Self> {
        SYMBOLS.iter().position(|s| *s == name).map(Self::symbol_index)
    }
    fn render(&self) -> (bool, String, bool) {
        if let Some(q) = self.as_rational() {
            return q.render();
        }
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().expect("one term");
            let mono = monomial_text(e);
            let text = if c.abs().is_one() { mono } else { format!("{}*{mono}", format_rational(&c.abs())) };
            return (c.is_negative(), text, true);
        }
        (false, self.to_string(), false)
    }
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            let mono = monomial_text(e);
            if mono.is_empty() {
                write!(f, "{}", format_rational(&mag))?;
            } else if mag.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{}*{mono}", format_rational(&mag))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn arithmetic_and_eval() {
        let t = SymPoly::symbol_index(THETA);
        let tp = SymPoly::symbol_index(THETA_P);
        let s = t.add_ref(&tp).mul_ref(&t.sub_ref(&tp));
        assert_eq!(s, t.pow(2).sub_ref(&tp.pow(2)));
        assert_eq!(s.to_string(), "theta^2 - theta_p^2");
        let vals = [Complex64::new(2.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)];
        assert!((s.eval(&vals) - Complex64::new(3.0, 0.0)).norm() < 1e-15);
        assert_eq!(SymPoly::from_rational(&rat(3, 2)).try_div(&SymPoly::from_rational(&rat(3, 4))), Some(SymPoly::from_int(2)));
        assert_eq!(t.try_div(&t), None);
        assert_eq!(t.scale_rational(&rat(-1, 2)).render(), (true, "1/2*theta".to_string(), true));
    }
}
