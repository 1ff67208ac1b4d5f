//! The derivation D of the affine ring N = Q[τ, q, y0, y1, y2], its two
//! halves D′ (acting on R = Q[y0, y1, y2] only) and H (acting on
//! L = Q[τ, q] only), the Rankin bracket, and the homogeneous derivation
//! 𝒟 on K[X0..X4].
//!
//! Every derivation is stored as a table of generator images and extended
//! by the Leibniz rule monomial by monomial.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coeff::{Coeff, Zero};
use crate::params::{DerivedConstants, TriangleParams};
use crate::rational::{rat, Q};
use crate::ring::{AffinePoly, HomogPoly, Monomial, Poly, RingError, UniPoly, VarSet, Q as QV, TAU, Y0, Y1, Y2};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DerivationError {
    #[error("bracket argument is not isobaric")]
    NotIsobaric,
    #[error("bracket argument uses variables outside R = Q[y0, y1, y2]")]
    NotInR,
    #[error("homogeneous derivation needs a homogeneous polynomial")]
    NotHomogeneous,
    #[error("expected a polynomial over the {expected} variables, got {found}")]
    WrongVariables { expected: &'static str, found: &'static str },
}

impl From<RingError> for DerivationError {
    fn from(_: RingError) -> Self {
        DerivationError::NotInR
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DerivationKind {
    D,
    Dprime,
    Honly,
    HomogD,
}

impl DerivationKind {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "D" => Some(Self::D),
            "Dprime" | "D'" => Some(Self::Dprime),
            "H" | "Honly" => Some(Self::Honly),
            "HomogD" => Some(Self::HomogD),
            _ => None,
        }
    }
}

impl fmt::Display for DerivationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::D => "D",
            Self::Dprime => "Dprime",
            Self::Honly => "H",
            Self::HomogD => "HomogD",
        })
    }
}

/// L = (1/4)(a(y0 - y1)^2 + b(y0 - y2)^2 + c(y1 - y2)^2).
pub fn l_form(consts: &DerivedConstants) -> AffinePoly {
    let v = VarSet::Affine;
    let d01 = &Poly::var(v, Y0) - &Poly::var(v, Y1);
    let d02 = &Poly::var(v, Y0) - &Poly::var(v, Y2);
    let d12 = &Poly::var(v, Y1) - &Poly::var(v, Y2);
    let sum = &(&d01.pow(2).scale(&consts.a) + &d02.pow(2).scale(&consts.b)) + &d12.pow(2).scale(&consts.c);
    sum.scale(&rat(1, 4))
}

/// A derivation of N given by its values on the five generators.
#[derive(Debug, Clone)]
pub struct Derivation {
    kind: DerivationKind,
    images: Vec<AffinePoly>,
}

impl Derivation {
    /// Tables for D, D′ or H. `HomogD` is not an affine derivation; use
    /// [`homog_d`] instead (this falls back to D for it).
    pub fn new(kind: DerivationKind, params: &TriangleParams) -> Self {
        Self::from_constants(kind, &params.derived_constants())
    }

    pub fn from_constants(kind: DerivationKind, consts: &DerivedConstants) -> Self {
        let v = VarSet::Affine;
        let l = l_form(consts);
        let mut images = vec![Poly::zero(v); v.len()];
        if kind != DerivationKind::Dprime {
            images[TAU] = Poly::constant(v, consts.w.clone());
            images[QV] = Poly::var(v, QV).scale(&consts.w);
        }
        if kind != DerivationKind::Honly {
            for y in [Y0, Y1, Y2] {
                images[y] = &Poly::var(v, y).pow(2) - &l;
            }
        }
        Derivation { kind, images }
    }

    pub fn kind(&self) -> DerivationKind {
        self.kind
    }

    /// Image of generator `var`.
    pub fn image(&self, var: usize) -> &AffinePoly {
        &self.images[var]
    }

    pub fn apply(&self, p: &AffinePoly) -> Result<AffinePoly, DerivationError> {
        if p.vars() != VarSet::Affine {
            return Err(DerivationError::WrongVariables { expected: "affine", found: p.vars().name() });
        }
        let mut out = Poly::zero(VarSet::Affine);
        for (m, c) in p.terms() {
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 || self.images[i].is_zero() {
                    continue;
                }
                let lowered = m.with_exp(i, e - 1);
                let coeff = c * Q::from_integer(e.into());
                for (im, ic) in self.images[i].terms() {
                    out.add_term(lowered.mul(im), &(&coeff * ic));
                }
            }
        }
        Ok(out)
    }

    /// D^n(p).
    pub fn apply_n(&self, p: &AffinePoly, n: usize) -> Result<AffinePoly, DerivationError> {
        let mut cur = p.clone();
        for _ in 0..n {
            cur = self.apply(&cur)?;
        }
        Ok(cur)
    }
}

#[allow(non_snake_case)]
pub fn apply_D(p: &AffinePoly, params: &TriangleParams) -> Result<AffinePoly, DerivationError> {
    Derivation::new(DerivationKind::D, params).apply(p)
}

/// Applies D′ or H (or D). `HomogD` is rejected as it acts on another ring.
pub fn apply_variant(
    p: &AffinePoly,
    kind: DerivationKind,
    params: &TriangleParams,
) -> Result<AffinePoly, DerivationError> {
    if kind == DerivationKind::HomogD {
        return Err(DerivationError::WrongVariables { expected: "projective", found: p.vars().name() });
    }
    Derivation::new(kind, params).apply(p)
}

/// [U, V] = p(U) U D(V) - p(V) V D(U) for isobaric U, V in R.
pub fn rankin_bracket(u: &AffinePoly, v: &AffinePoly, d: &Derivation) -> Result<AffinePoly, DerivationError> {
    for x in [u, v] {
        if x.vars() != VarSet::Affine || !x.in_r() {
            return Err(DerivationError::NotInR);
        }
        if !x.is_isobaric() {
            return Err(DerivationError::NotIsobaric);
        }
    }
    if u.is_zero() || v.is_zero() {
        return Ok(Poly::zero(VarSet::Affine));
    }
    let pu = Q::from_integer(u.weight()?.into());
    let pv = Q::from_integer(v.weight()?.into());
    let left = (u * &d.apply(v)?).scale(&pu);
    let right = (v * &d.apply(u)?).scale(&pv);
    Ok(&left - &right)
}

/// U = (1/4)(a(X2 - X3)^2 + b(X2 - X4)^2 + c(X3 - X4)^2) in K[X0..X4].
pub fn homog_u_form(consts: &DerivedConstants) -> HomogPoly {
    homogenize_affine(&l_form(consts)).expect("L is a polynomial")
}

/// 𝒟 = w X0^2 ∂/∂t + w X0^2 X1 ∂/∂X1 + X0 Σ_{i=2..4} (Xi^2 - U) ∂/∂Xi.
pub fn homog_d(p: &HomogPoly, params: &TriangleParams) -> Result<HomogPoly, DerivationError> {
    homog_d_with(p, &params.derived_constants())
}

pub fn homog_d_with(p: &HomogPoly, consts: &DerivedConstants) -> Result<HomogPoly, DerivationError> {
    if p.vars() != VarSet::Projective {
        return Err(DerivationError::WrongVariables { expected: "projective", found: p.vars().name() });
    }
    if !p.is_homogeneous() {
        return Err(DerivationError::NotHomogeneous);
    }
    let v = VarSet::Projective;
    let w = UniPoly::constant(consts.w.clone());
    let x0 = Poly::var(v, 0);
    let x0sq = x0.pow(2);
    let u = homog_u_form(consts);
    let mut images: Vec<HomogPoly> = vec![Poly::zero(v); 5];
    images[1] = (&x0sq * &Poly::var(v, 1)).scale(&w);
    for i in 2..5 {
        images[i] = &x0 * &(&Poly::var(v, i).pow(2) - &u);
    }
    let mut out = Poly::zero(v);
    for (m, c) in p.terms() {
        let dc = c.derivative();
        if !dc.is_zero() {
            out.add_term(m.mul(&Monomial::var(5, 0, 2)), &dc.mul_ref(&w));
        }
        for (i, &e) in m.exps().iter().enumerate() {
            if e == 0 || images[i].is_zero() {
                continue;
            }
            let lowered = m.with_exp(i, e - 1);
            let coeff = c.mul_ref(&UniPoly::from_int(i64::from(e)));
            for (im, ic) in images[i].terms() {
                out.add_term(lowered.mul(im), &coeff.mul_ref(ic));
            }
        }
    }
    Ok(out)
}

/// ψ: sets X0 = 1, sends (X1, X2, X3, X4) to (q, y0, y1, y2) and t to τ.
pub fn dehomogenize(p: &HomogPoly) -> Result<AffinePoly, DerivationError> {
    if p.vars() != VarSet::Projective {
        return Err(DerivationError::WrongVariables { expected: "projective", found: p.vars().name() });
    }
    let mut out = Poly::zero(VarSet::Affine);
    for (m, c) in p.terms() {
        let e = m.exps();
        for (k, ck) in c.coeffs().iter().enumerate() {
            if ck.is_zero() {
                continue;
            }
            let mono = Monomial::new(vec![k as u32, e[1], e[2], e[3], e[4]]);
            out.add_term(mono, ck);
        }
    }
    Ok(out)
}

/// Inverse of [`dehomogenize`] on affine polynomials: τ goes into the
/// Q[t] coefficients and X0 pads each term to the total degree in
/// (q, y0, y1, y2).
pub fn homogenize_affine(p: &AffinePoly) -> Result<HomogPoly, DerivationError> {
    if p.vars() != VarSet::Affine {
        return Err(DerivationError::WrongVariables { expected: "affine", found: p.vars().name() });
    }
    let deg = p.terms().map(|(m, _)| m.degree() - m.exp(TAU)).max().unwrap_or(0);
    let mut out = Poly::zero(VarSet::Projective);
    for (m, c) in p.terms() {
        let e = m.exps();
        let d = m.degree() - e[TAU];
        let mut tc = vec![Q::from_integer(0.into()); e[TAU] as usize + 1];
        tc[e[TAU] as usize] = c.clone();
        out.add_term(Monomial::new(vec![deg - d, e[QV], e[Y0], e[Y1], e[Y2]]), &UniPoly::new(tc));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse_poly;

    fn params() -> TriangleParams {
        TriangleParams::new(rat(1, 5), rat(1, 4), rat(1, 2)).unwrap()
    }

    fn p(s: &str) -> AffinePoly {
        parse_poly(s, VarSet::Affine).unwrap()
    }

    fn h(s: &str) -> HomogPoly {
        parse_poly(s, VarSet::Projective).unwrap()
    }

    #[test]
    fn generator_rules() {
        let prm = params();
        let d = Derivation::new(DerivationKind::D, &prm);
        assert_eq!(d.apply(&p("tau")).unwrap(), p("1/2"));
        assert_eq!(d.apply(&p("q")).unwrap(), p("1/2 q"));
        assert_eq!(d.apply(&p("7/3")).unwrap(), p("0"));
        // L at (1/5, 1/4, 1/2): a = c = 3/8, b = 249/400
        let l = p("1/4 (3/8 (y0 - y1)^2 + 249/400 (y0 - y2)^2 + 3/8 (y1 - y2)^2)");
        assert_eq!(d.apply(&p("y1")).unwrap(), &p("y1^2") - &l);
        assert_eq!(d.apply(&p("y0 - y1")).unwrap(), p("(y0 - y1)(y0 + y1)"));
        assert_eq!(d.apply(&p("y1 - y2")).unwrap(), p("(y1 - y2)(y1 + y2)"));
    }

    #[test]
    fn variants() {
        let prm = params();
        let dp = apply_variant(&p("tau^2 y0"), DerivationKind::Dprime, &prm).unwrap();
        assert_eq!(dp, &p("tau^2") * &apply_D(&p("y0"), &prm).unwrap());
        let hq = apply_variant(&p("tau q"), DerivationKind::Honly, &prm).unwrap();
        assert_eq!(hq, p("1/2 q + 1/2 tau q"));
        let x = p("tau q y0 y1^2 + q^2 y2 - tau");
        let sum = &apply_variant(&x, DerivationKind::Dprime, &prm).unwrap()
            + &apply_variant(&x, DerivationKind::Honly, &prm).unwrap();
        assert_eq!(sum, apply_D(&x, &prm).unwrap());
        assert!(apply_variant(&x, DerivationKind::HomogD, &prm).is_err());
    }

    #[test]
    fn kappa_cofactor() {
        let prm = params();
        let kappa = p("q (y0 - y1)(y0 - y2)(y1 - y2)");
        let dk = apply_D(&kappa, &prm).unwrap();
        assert_eq!(dk, &p("1/2 + 2 y0 + 2 y1 + 2 y2") * &kappa);
        assert_ne!(dk, &p("q + 2 y0 + 2 y1 + 2 y2") * &kappa);
    }

    #[test]
    fn bracket_examples() {
        let d = Derivation::new(DerivationKind::D, &params());
        // the bracket is (y1 - y2) times y0^2 - L - y0 y1 - y0 y2, not (y1 - y2) y0
        let l = l_form(&params().derived_constants());
        let b = rankin_bracket(&p("y1 - y2"), &p("y0"), &d).unwrap();
        assert_eq!(b, &p("y1 - y2") * &(&p("y0^2 - y0 y1 - y0 y2") - &l));
        assert_ne!(b, p("(y1 - y2) y0"));
        let x = p("y0 y1 - 3 y2^2");
        assert!(rankin_bracket(&x, &x, &d).unwrap().is_zero());
        let a = rankin_bracket(&p("y0"), &p("y1"), &d).unwrap();
        assert_eq!(a, rankin_bracket(&p("y1"), &p("y0"), &d).unwrap().neg());
        assert_eq!(rankin_bracket(&p("y0 + y1^2"), &p("y0"), &d), Err(DerivationError::NotIsobaric));
        assert_eq!(rankin_bracket(&p("q y0"), &p("y0"), &d), Err(DerivationError::NotInR));
    }

    #[test]
    fn homogeneous_derivation() {
        let prm = params();
        assert_eq!(homog_d(&h("X1"), &prm).unwrap(), h("1/2 X0^2 X1"));
        assert!(homog_d(&h("X0"), &prm).unwrap().is_zero());
        let u = homog_u_form(&prm.derived_constants());
        assert_eq!(homog_d(&h("X2"), &prm).unwrap(), &h("X0") * &(&h("X2^2") - &u));
        assert_eq!(homog_d(&h("t X0"), &prm).unwrap(), h("1/2 X0^3"));
        assert_eq!(homog_d(&h("X0 + X1^2"), &prm), Err(DerivationError::NotHomogeneous));
    }

    #[test]
    fn psi_compatibility() {
        let prm = params();
        for s in ["t^2 X0 X1 X2 - X3^3", "X1 (X3 - X2)(X4 - X2)(X4 - X3)", "(t + 1) X0^2 + X4^2"] {
            let q = h(s);
            let lhs = dehomogenize(&homog_d(&q, &prm).unwrap()).unwrap();
            let rhs = apply_D(&dehomogenize(&q).unwrap(), &prm).unwrap();
            assert_eq!(lhs, rhs, "{s}");
        }
        let a = p("tau^2 q y0 + y1^3 - 2");
        let hom = homogenize_affine(&a).unwrap();
        assert!(hom.is_homogeneous());
        assert_eq!(dehomogenize(&hom).unwrap(), a);
    }
}
