//! Coefficient domains shared by polynomials and Puiseux series.

use num_complex::Complex64;
pub use num_traits::{One, Zero};
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::rational::{format_rational, Q};

/// Tag naming the coefficient domain of a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Domain {
    ExactRational,
    RationalWithAdjoinedConstants,
    FloatingComplex,
    RationalPolynomialT,
}

impl Domain {
    pub fn name(self) -> &'static str {
        match self {
            Domain::ExactRational => "exact-rational",
            Domain::RationalWithAdjoinedConstants => "rational-with-adjoined-constants",
            Domain::FloatingComplex => "floating-complex",
            Domain::RationalPolynomialT => "rational-polynomial-t",
        }
    }
}

/// A commutative ring of coefficients with exact (or floating) arithmetic.
///
/// Operations take references so big-number domains avoid needless clones.
pub trait Coeff: Clone + PartialEq + std::fmt::Debug + Send + Sync + Zero + One + 'static {
    const DOMAIN: Domain;

    fn from_rational(q: &Q) -> Self;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// Exact quotient when it exists in the domain.
    fn try_div(&self, other: &Self) -> Option<Self>;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&Q::from_integer(n.into()))
    }

    fn add_assign_ref(&mut self, other: &Self) {
        *self = self.add_ref(other);
    }

    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        let p = a.mul_ref(b);
        self.add_assign_ref(&p);
    }

    fn scale_rational(&self, q: &Q) -> Self {
        self.mul_ref(&Self::from_rational(q))
    }

    /// Named generator of the coefficient domain (e.g. `t` in Q[t]).
    fn symbol(_name: &str) -> Option<Self> {
        None
    }

    /// Text rendering as `(negative, magnitude text, atomic)`.
    ///
    /// Non-atomic magnitudes are parenthesized when printed as a factor.
    fn render(&self) -> (bool, String, bool);
}

impl Coeff for Q {
    const DOMAIN: Domain = Domain::ExactRational;

    fn from_rational(q: &Q) -> Self {
        q.clone()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn try_div(&self, other: &Self) -> Option<Self> {
        if Zero::is_zero(other) {
            None
        } else {
            Some(self / other)
        }
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
    fn scale_rational(&self, q: &Q) -> Self {
        self * q
    }
    fn render(&self) -> (bool, String, bool) {
        (self.is_negative(), format_rational(&self.abs()), true)
    }
}

impl Coeff for Complex64 {
    const DOMAIN: Domain = Domain::FloatingComplex;

    fn from_rational(q: &Q) -> Self {
        Complex64::new(crate::rational::to_f64(q), 0.0)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn try_div(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            None
        } else {
            Some(self / other)
        }
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
    fn render(&self) -> (bool, String, bool) {
        if self.im == 0.0 {
            (self.re < 0.0, format!("{:e}", self.re.abs()), true)
        } else {
            (false, format!("{:e}{:+e}i", self.re, self.im), false)
        }
    }
}
