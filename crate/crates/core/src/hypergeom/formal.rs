//! Exact series identities at z = 0: Wronskian, both differential
//! equations, the y-difference formulas, and agreement of the algebraic
//! derivation with u₀²·d/dz on the generator series.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::Serialize;

use super::{at_zero, gauss_2f1, HypergeomError};
use crate::derivation::apply_D;
use crate::params::TriangleParams;
use crate::rational::{format_rational, Q};
use crate::coeff::Coeff;
use crate::ring::{AffinePoly, Poly, VarSet};
use crate::series::Puiseux;

/// Value of a polynomial in (τ, q, y₀, y₁, y₂) with the generator series
/// substituted in variable order.
pub fn eval_poly<C: Coeff>(p: &Poly<C>, gens: &[Puiseux<C>; 5]) -> Puiseux<C> {
    let gens = gens.clone().map(|g| g.reduce_ram());
    let ram = gens.iter().map(|g| g.ram()).fold(1, crate::rational::lcm_u64);
    // constants are exact; this bound sits past every generator's precision
    let cap = gens.iter().map(|g| g.prec() * (ram / g.ram()) as i64).max().unwrap_or(1).max(1);
    let mut cache: HashMap<(usize, u32), Puiseux<C>> = HashMap::new();
    let mut acc: Option<Puiseux<C>> = None;
    for (mono, c) in p.terms() {
        let mut term: Option<Puiseux<C>> = None;
        for (var, &e) in mono.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let pw = cache.entry((var, e)).or_insert_with(|| gens[var].pow(e)).clone();
            term = Some(match term {
                None => pw,
                Some(t) => t.mul(&pw),
            });
        }
        let term = match term {
            Some(t) => t.scale(c),
            None => Puiseux::monomial(ram, 0, c.clone(), cap),
        };
        acc = Some(match acc {
            None => term,
            Some(a) => a.add(&term),
        });
    }
    acc.unwrap_or_else(|| Puiseux::zero(ram, cap))
}

#[derive(Debug, Clone, Serialize)]
pub struct FormalCheck {
    pub name: String,
    pub holds: bool,
    /// exponent up to which the residual is certified zero
    pub certified_to: String,
}

impl FormalCheck {
    fn of(name: impl Into<String>, residual: &Puiseux<Q>) -> Self {
        FormalCheck {
            name: name.into(),
            holds: residual.is_zero_to_precision(),
            certified_to: format_rational(&residual.precision_exponent()),
        }
    }
}

/// Runs every identity with series carried to relative order `n`.
pub fn formal_checks(params: &TriangleParams, n: usize) -> Result<Vec<FormalCheck>, HypergeomError> {
    let z = at_zero(params, n)?;
    let k = params.derived_constants();
    let (al, be, ga) = (params.alpha(), params.beta(), params.gamma());
    let one = Q::one();
    let u0 = &z.local.u0;
    let u1 = &z.u1;
    let du0 = u0.derivative();
    let mut out = Vec::new();

    let w = u1.derivative().mul(u0).sub(&u1.mul(&du0));
    let w_const = Puiseux::monomial(w.ram(), 0, &one - ga, w.prec().max(1));
    out.push(FormalCheck::of("wronskian equals 1-gamma", &w.sub(&w_const)));

    // 4z²(z−1)²u″ + (a(z−1)² + bz² + c)u
    // polynomials in z, exact well past the working order
    let poly = |cs: &[Q]| Puiseux::new(1, 0, cs.to_vec(), (n + 16) as i64);
    let lhs2 = poly(&[Q::zero(), Q::zero(), Q::from_integer(4.into()), Q::from_integer((-8).into()), Q::from_integer(4.into())]);
    let lhs0 = poly(&[&k.a + &k.c, Q::from_integer((-2).into()) * &k.a, &k.a + &k.b]);
    for (name, u) in [("u0", u0), ("u1", u1)] {
        let r = lhs2.mul(&u.derivative().derivative()).add(&lhs0.mul(u));
        out.push(FormalCheck::of(format!("normal-form ode for {name}"), &r));
    }

    // z(1−z)V″ + (γ − (α+β+1)z)V′ − αβV on ₂F₁(α,β;γ;z)
    let f = Puiseux::from_power_series(gauss_2f1(al, be, ga, n + 2)?, (n + 2) as i64);
    let r = poly(&[Q::zero(), one.clone(), -one.clone()])
        .mul(&f.derivative().derivative())
        .add(&poly(&[ga.clone(), -(al + be + &one)]).mul(&f.derivative()))
        .sub(&f.scale_rational(&(al * be)));
    out.push(FormalCheck::of("hypergeometric ode for 2F1(alpha,beta;gamma)", &r));

    let [y0, y1, y2] = &z.local.y;
    let u0sq = &z.local.u0sq;
    let r = u0sq.ram() as i64;
    let inv_zm1 = Puiseux::new(1, 0, vec![-one.clone(); n + 4], (n + 4) as i64);
    out.push(FormalCheck::of("y0 - y1 = u0^2/z", &y0.sub(y1).sub(&u0sq.shift(-r))));
    out.push(FormalCheck::of("y0 - y2 = u0^2/(z-1)", &y0.sub(y2).sub(&u0sq.mul(&inv_zm1))));
    out.push(FormalCheck::of("y1 - y2 = u0^2/(z(z-1))", &y1.sub(y2).sub(&u0sq.shift(-r).mul(&inv_zm1))));

    let gens = z.generators();
    for (var, name) in VarSet::Affine.names().iter().enumerate().take(5) {
        let g = AffinePoly::var(VarSet::Affine, var);
        let image = apply_D(&g, params).expect("generators lie in R");
        let analytic = u0sq.mul(&gens[var].derivative());
        let algebraic = eval_poly(&image, &gens);
        out.push(FormalCheck::of(format!("u0^2 d{name}/dz = D({name})"), &analytic.sub(&algebraic)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn identities_hold() {
        let p = TriangleParams::new(rat(1, 5), rat(1, 4), rat(1, 2)).unwrap();
        let checks = formal_checks(&p, 12).unwrap();
        assert_eq!(checks.len(), 12);
        for c in checks {
            assert!(c.holds, "{c:?}");
        }
    }

    #[test]
    fn wrong_image_is_detected() {
        let p = TriangleParams::new(rat(1, 5), rat(1, 4), rat(1, 2)).unwrap();
        let z = at_zero(&p, 8).unwrap();
        let gens = z.generators();
        // D(τ) is w, not 2w
        let bad = AffinePoly::constant(VarSet::Affine, rat(1, 1));
        let r = z.local.u0sq.mul(&gens[0].derivative()).sub(&eval_poly(&bad, &gens));
        assert!(!r.is_zero_to_precision());
    }
}
