//! Exact weighted multivariate polynomial algebra.
//!
//! Provides [`Poly`] over the affine ring Q[τ, q, y0, y1, y2] (weights
//! p(yi) = 1, p(τ) = p(q) = 0), its extension by the homogenizing
//! variable y3, and the homogeneous ring K[X0..X4] with coefficients in
//! Q[t]; plus resultants and a text/JSON format.

mod parse;
mod poly;
mod resultant;
mod unipoly;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use parse::{detect_varset, parse_poly, ParseError};
pub use poly::{Monomial, Poly, VarSet, Q, TAU, X0, X1, X2, X3, X4, Y0, Y1, Y2, Y3};
pub use resultant::{bareiss_det, coefficients_in, resultant, resultant_with_cofactors};
pub use unipoly::UniPoly;

use crate::coeff::Coeff;

/// Polynomial in N = Q[τ, q, y0, y1, y2] (or its y3 extension).
pub type AffinePoly = Poly<crate::rational::Q>;
/// Polynomial in K[X0..X4] with coefficients in Q[t].
pub type HomogPoly = Poly<UniPoly>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("polynomial uses variables outside R = Q[y0, y1, y2]")]
    VariableOutsideR,
    #[error("polynomial has degree zero in `{var}`")]
    DegreeZeroInVariable { var: String },
    #[error("operands live over different variable sets ({left:?} vs {right:?})")]
    DomainMismatch { left: VarSet, right: VarSet },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub coeff: String,
}

/// JSON form: variable set plus exponent-vector/coefficient pairs,
/// coefficients in the polynomial text format.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: VarSet,
    pub terms: Vec<TermJson>,
}

impl<C: Coeff> Poly<C> {
    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            vars: self.vars(),
            terms: self
                .terms()
                .rev()
                .map(|(m, c)| TermJson {
                    exp: m.exps().to_vec(),
                    coeff: Poly::constant(self.vars(), c.clone()).to_string(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &PolyJson) -> Result<Self, ParseError> {
        let mut out = Poly::zero(json.vars);
        for t in &json.terms {
            if t.exp.len() != json.vars.len() {
                return Err(ParseError { message: "exponent vector has the wrong length".into(), position: 0 });
            }
            let c: Poly<C> = parse_poly(&t.coeff, json.vars)?;
            let Some(c) = c.as_constant() else {
                return Err(ParseError { message: format!("coefficient `{}` is not constant", t.coeff), position: 0 });
            };
            out.add_term(Monomial::new(t.exp.clone()), &c);
        }
        Ok(out)
    }
}

/// Reads a polynomial from either its text form or its JSON form.
pub fn read_poly<C: Coeff>(input: &str, vars: Option<VarSet>) -> Result<Poly<C>, ParseError> {
    let trimmed = input.trim();
    if trimmed.starts_with('{') {
        let json: PolyJson = serde_json::from_str(trimmed)
            .map_err(|e| ParseError { message: format!("invalid polynomial JSON: {e}"), position: 0 })?;
        return Poly::from_json(&json);
    }
    parse_poly(trimmed, vars.unwrap_or_else(|| detect_varset(trimmed)))
}
