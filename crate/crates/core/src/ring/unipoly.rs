//! Dense univariate polynomials in `t` over Q, used as coefficients of the
//! homogeneous ring K[X0..X4].

use std::fmt;


use num_traits::{One, Zero};

use crate::coeff::{Coeff, Domain};
use crate::rational::Q;

/// `c[0] + c[1] t + ...` with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug, Default, Hash)]
pub struct UniPoly {
    coeffs: Vec<Q>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn constant(c: Q) -> Self {
        Self::new(vec![c])
    }

    pub fn t() -> Self {
        Self::new(vec![Q::zero(), crate::rational::int(1)])
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Order of vanishing at `t = 0`, or `None` for zero.
    pub fn t_adic_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Q::from_integer((i as i64).into()))
                .collect(),
        )
    }

    pub fn leading(&self) -> Option<&Q> {
        self.coeffs.last()
    }

    fn div_rem(&self, other: &Self) -> Option<(Self, Self)> {
        let dd = other.degree()?;
        let lead = other.leading()?.clone();
        let mut rem = self.coeffs.clone();
        if rem.len() < other.coeffs.len() {
            return Some((Self::default(), self.clone()));
        }
        let mut quot = vec![Q::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] / &lead;
            if !c.is_zero() {
                for (j, oc) in other.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * oc;
                }
            }
            quot[i] = c;
        }
        Some((Self::new(quot), Self::new(rem)))
    }
}

impl Zero for UniPoly {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for UniPoly {
    fn one() -> Self {
        Self::constant(Q::one())
    }
}

impl std::ops::Add for UniPoly {
    type Output = Self;
    fn add(self, other: Self) -> Self {
        self.add_ref(&other)
    }
}

impl std::ops::Mul for UniPoly {
    type Output = Self;
    fn mul(self, other: Self) -> Self {
        self.mul_ref(&other)
    }
}

impl Coeff for UniPoly {
    const DOMAIN: Domain = Domain::RationalPolynomialT;

    fn from_rational(q: &Q) -> Self {
        Self::constant(q.clone())
    }
    fn add_ref(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![Q::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        Self::new(out)
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }
    fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::default();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }
    fn neg_ref(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
    fn try_div(&self, other: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(other)?;
        r.is_zero().then_some(q)
    }
    fn symbol(name: &str) -> Option<Self> {
        (name == "t").then(Self::t)
    }
    fn render(&self) -> (bool, String, bool) {
        if self.coeffs.len() <= 1 {
            let c = self.coeffs.first().cloned().unwrap_or_else(Q::zero);
            return c.render();
        }
        let nonzero = self.coeffs.iter().filter(|c| !c.is_zero()).count();
        (false, self.to_string(), nonzero == 1 && self.coeffs.last().is_some_and(|c| c.is_one()))
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag, _) = c.render();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let unit = mag == "1";
            match i {
                0 => f.write_str(&mag)?,
                _ => {
                    if !unit {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        f.write_str("t")?;
                    } else {
                        write!(f, "t^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn exact_division() {
        let a = UniPoly::new(vec![int(-1), int(0), int(1)]); // t^2 - 1
        let b = UniPoly::new(vec![int(1), int(1)]); // t + 1
        assert_eq!(a.try_div(&b), Some(UniPoly::new(vec![int(-1), int(1)])));
        assert_eq!(b.try_div(&a), None);
        assert_eq!(a.to_string(), "t^2 - 1");
        assert_eq!(UniPoly::new(vec![rat(1, 2), int(3)]).derivative(), UniPoly::constant(int(3)));
        assert_eq!(UniPoly::new(vec![int(0), int(0), int(2)]).t_adic_order(), Some(2));
    }
}
