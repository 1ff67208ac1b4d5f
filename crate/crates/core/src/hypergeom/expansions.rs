//! Exact local expansions at 0 (rational coefficients) and at 1, ∞
//! (coefficients polynomial in the opaque constants θ, θ′, ζ₁, ω, ω₁).

use num_traits::{One, Zero};
use serde::Serialize;

use super::{binomial_coeffs, gauss_2f1, ExpansionPoint, HypergeomError};
use crate::coeff::Coeff;
use crate::params::TriangleParams;
use crate::rational::{denom_u64, format_rational, lcm_u64, Q};
use crate::series::{Puiseux, SymPoly, OMEGA, OMEGA1, THETA, THETA_P, ZETA1};

/// Extra z-units carried through intermediate products before the final
/// truncation.
const MARGIN: usize = 3;

/// Places power-series coefficients `c_k` at exponents `base + k`.
fn placed<C: Coeff>(coeffs: Vec<C>, base: &Q, ram: u64) -> Puiseux<C> {
    let r = ram as i64;
    let off = base * Q::from_integer(r.into());
    assert!(off.is_integer(), "exponent {base} is not on the 1/{ram} lattice");
    let off = i64::try_from(off.to_integer()).expect("small exponent");
    let n = coeffs.len();
    let mut dense = vec![C::zero(); (n as i64 * r) as usize];
    for (k, c) in coeffs.into_iter().enumerate() {
        dense[k * ram as usize] = c;
    }
    Puiseux::new(ram, off, dense, off + n as i64 * r)
}

fn mul_power(a: &[Q], b: &[Q]) -> Vec<Q> {
    let n = a.len().min(b.len());
    let mut out = vec![Q::zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] += x * y;
        }
    }
    out
}

fn alternate<C: Coeff>(v: Vec<C>) -> Vec<C> {
    v.into_iter().enumerate().map(|(k, c)| if k % 2 == 1 { c.neg_ref() } else { c }).collect()
}

fn lattice(ram: u64, exps: &[&Q]) -> u64 {
    exps.iter().fold(ram, |r, e| lcm_u64(r, denom_u64(e)))
}

/// Cuts to `n` local units past the leading term and presents the series
/// on the 1/ram lattice.
fn finish<C: Coeff>(s: &Puiseux<C>, n: usize, ram: u64) -> Puiseux<C> {
    let v = s.valuation().unwrap_or(s.offset());
    let cut = s.truncate(v + n as i64 * s.ram() as i64);
    let reduced = cut.reduce_ram();
    if ram % reduced.ram() == 0 {
        reduced.with_ram(ram)
    } else {
        cut
    }
}

/// Ramification of the y-series: least common denominator of α, β, γ.
pub fn expansion_ram(params: &TriangleParams) -> u64 {
    params.derived_constants().ram
}

/// u₀, u₀², y₀, y₁, y₂ at one of the singular points, in its local variable.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalExpansion<C: Coeff> {
    pub point: ExpansionPoint,
    pub u0: Puiseux<C>,
    pub u0sq: Puiseux<C>,
    pub y: [Puiseux<C>; 3],
}

/// All five generators at z = 0 plus u₀, u₁.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroGenerators {
    pub local: LocalExpansion<Q>,
    pub u1: Puiseux<Q>,
    pub tau: Puiseux<Q>,
    pub q: Puiseux<Q>,
}

impl ZeroGenerators {
    /// Series of (τ, q, y₀, y₁, y₂) in variable order.
    pub fn generators(&self) -> [Puiseux<Q>; 5] {
        let [y0, y1, y2] = self.local.y.clone();
        [self.tau.clone(), self.q.clone(), y0, y1, y2]
    }
}

struct Common {
    alpha: Q,
    beta: Q,
    gamma: Q,
    /// s′ = (α+β−γ+1)/2
    sp: Q,
    ram: u64,
}

impl Common {
    fn new(p: &TriangleParams) -> Self {
        let (alpha, beta, gamma) = (p.alpha().clone(), p.beta().clone(), p.gamma().clone());
        let sp = (&alpha + &beta - &gamma + Q::one()) / Q::from_integer(2.into());
        Common { alpha, beta, gamma, sp, ram: expansion_ram(p) }
    }
}

/// u₁ = z^{1−γ/2}(1−z)^{s′}·₂F₁(α−γ+1, β−γ+1; 2−γ; z) to relative order n.
pub fn u1_at_zero(params: &TriangleParams, n: usize) -> Result<Puiseux<Q>, HypergeomError> {
    let c = Common::new(params);
    let m = n + MARGIN;
    let one = Q::one();
    let base = &one - &c.gamma / Q::from_integer(2.into());
    let f = gauss_2f1(&(&c.alpha - &c.gamma + &one), &(&c.beta - &c.gamma + &one), &(Q::from_integer(2.into()) - &c.gamma), m)?;
    let g = binomial_coeffs(&c.sp, -1, m);
    let ram = lattice(1, &[&base]);
    Ok(finish(&placed(mul_power(&g, &f), &base, ram), n, lcm_u64(c.ram, ram)))
}

fn u0_at_zero_raw(c: &Common, m: usize) -> Result<Puiseux<Q>, HypergeomError> {
    let base = &c.gamma / Q::from_integer(2.into());
    let f = gauss_2f1(&c.alpha, &c.beta, &c.gamma, m)?;
    let g = binomial_coeffs(&c.sp, -1, m);
    // everything at zero lives on the lattice of γ/2; the declared
    // ramification is restored by `finish`
    let ram = lattice(1, &[&base]);
    Ok(placed(mul_power(&g, &f), &base, ram))
}

fn zero_expansion(c: &Common, n: usize) -> Result<LocalExpansion<Q>, HypergeomError> {
    let m = n + MARGIN;
    let u0 = u0_at_zero_raw(c, m)?;
    let r = u0.ram() as i64;
    let du0 = u0.derivative();
    let u0sq = u0.mul(&u0);
    let y0 = u0.mul(&du0);
    // 1/(z − 1) = −Σ z^k
    let inv_zm1 = placed(vec![-Q::one(); m], &Q::zero(), 1);
    let y1 = y0.sub(&u0sq.shift(-r));
    let y2 = y0.sub(&u0sq.mul(&inv_zm1));
    Ok(LocalExpansion {
        point: ExpansionPoint::Zero,
        u0: finish(&u0, n, lcm_u64(c.ram, u0.ram())),
        u0sq: finish(&u0sq, n, c.ram),
        y: [finish(&y0, n, c.ram), finish(&y1, n, c.ram), finish(&y2, n, c.ram)],
    })
}

/// Expansions at z = 0, each to `n` z-units past its leading term.
pub fn at_zero(params: &TriangleParams, n: usize) -> Result<ZeroGenerators, HypergeomError> {
    let c = Common::new(params);
    let local = zero_expansion(&c, n)?;
    // τ and q need the same margin as the y-series
    let m = n + MARGIN;
    let u0 = u0_at_zero_raw(&c, m)?;
    let u1 = u1_at_zero(params, m)?.reduce_ram();
    let tau = u1.try_div(&u0)?.reduce_ram();
    let q = tau.exp()?;
    Ok(ZeroGenerators {
        u1: finish(&u1, n, lcm_u64(c.ram, u1.ram())),
        tau: finish(&tau, n, c.ram),
        q: finish(&q, n, c.ram),
        local,
    })
}

fn sym(idx: usize) -> SymPoly {
    SymPoly::symbol_index(idx)
}

/// Expansions at z = 1 in x = 1 − z, with
/// ₂F₁(α,β;γ;z) = θ·₂F₁(α,β;α+β−γ+1;x) + θ′x^{γ−α−β}·₂F₁(γ−α,γ−β;γ−α−β+1;x).
pub fn at_one(params: &TriangleParams, n: usize) -> Result<LocalExpansion<SymPoly>, HypergeomError> {
    let c = Common::new(params);
    let m = n + MARGIN;
    let one = Q::one();
    let s = &c.gamma - &c.alpha - &c.beta;
    let ram = lattice(c.ram, &[&c.sp, &s]);
    let a_part = gauss_2f1(&c.alpha, &c.beta, &(&one - &s), m)?;
    let b_part = gauss_2f1(&(&c.gamma - &c.alpha), &(&c.gamma - &c.beta), &(&s + &one), m)?;
    let f = placed(a_part, &Q::zero(), ram).to_symbolic().scale(&sym(THETA)).add(
        &placed(b_part, &s, ram).to_symbolic().scale(&sym(THETA_P)),
    );
    let g = placed(binomial_coeffs(&(&c.gamma / Q::from_integer(2.into())), -1, m), &c.sp, ram).to_symbolic();
    let u0 = g.mul(&f);
    let r = ram as i64;
    // d/dz = −d/dx
    let du0 = u0.derivative().neg();
    let u0sq = u0.mul(&u0);
    let y0 = u0.mul(&du0);
    // 1/z = Σ x^k, 1/(z − 1) = −1/x
    let inv_z = placed(vec![SymPoly::one(); m], &Q::zero(), 1);
    let y1 = y0.sub(&u0sq.mul(&inv_z));
    let y2 = y0.add(&u0sq.shift(-r));
    Ok(LocalExpansion {
        point: ExpansionPoint::One,
        u0: finish(&u0, n, ram),
        u0sq: finish(&u0sq, n, c.ram),
        y: [finish(&y0, n, c.ram), finish(&y1, n, c.ram), finish(&y2, n, c.ram)],
    })
}

/// Expansions at z = ∞ in x = (−z)^{−1}, with
/// ₂F₁(α,β;γ;z) = ω x^α ₂F₁(α,1−γ+α;1−β+α;−x) + ω₁ x^β ₂F₁(β,1−γ+β;1−α+β;−x)
/// and z^{γ/2}(1−z)^{s′} = ζ₁ x^{−(α+β+1)/2}(1+x)^{s′}.
pub fn at_infinity(params: &TriangleParams, n: usize) -> Result<LocalExpansion<SymPoly>, HypergeomError> {
    let c = Common::new(params);
    let m = n + MARGIN;
    let one = Q::one();
    let two = Q::from_integer(2.into());
    let g_base = -(&c.alpha + &c.beta + &one) / &two;
    let ram = lattice(c.ram, &[&g_base]);
    let a_part = gauss_2f1(&c.alpha, &(&one - &c.gamma + &c.alpha), &(&one - &c.beta + &c.alpha), m)?;
    let b_part = gauss_2f1(&c.beta, &(&one - &c.gamma + &c.beta), &(&one - &c.alpha + &c.beta), m)?;
    let f = placed(alternate(a_part), &c.alpha, ram).to_symbolic().scale(&sym(OMEGA)).add(
        &placed(alternate(b_part), &c.beta, ram).to_symbolic().scale(&sym(OMEGA1)),
    );
    let g = placed(binomial_coeffs(&c.sp, 1, m), &g_base, ram).to_symbolic().scale(&sym(ZETA1));
    let u0 = g.mul(&f);
    let r = ram as i64;
    // d/dz = x² d/dx
    let du0 = u0.derivative().shift(2 * r);
    let u0sq = u0.mul(&u0);
    let y0 = u0.mul(&du0);
    // 1/z = −x, 1/(z − 1) = −x/(1 + x)
    let x_over = placed(alternate(vec![SymPoly::one(); m]), &one, 1);
    let y1 = y0.add(&u0sq.shift(r));
    let y2 = y0.add(&u0sq.mul(&x_over));
    Ok(LocalExpansion {
        point: ExpansionPoint::Infinity,
        u0: finish(&u0, n, ram),
        u0sq: finish(&u0sq, n, c.ram),
        y: [finish(&y0, n, c.ram), finish(&y1, n, c.ram), finish(&y2, n, c.ram)],
    })
}

/// Expansion at any point over the symbolic domain (rational at zero).
pub fn symbolic_at(
    point: ExpansionPoint,
    params: &TriangleParams,
    n: usize,
) -> Result<LocalExpansion<SymPoly>, HypergeomError> {
    match point {
        ExpansionPoint::Zero => {
            let z = at_zero(params, n)?.local;
            Ok(LocalExpansion {
                point: z.point,
                u0: z.u0.to_symbolic(),
                u0sq: z.u0sq.to_symbolic(),
                y: z.y.map(|s| s.to_symbolic()),
            })
        }
        ExpansionPoint::One => at_one(params, n),
        ExpansionPoint::Infinity => at_infinity(params, n),
    }
}

/// One constructed leading term next to its closed form.
#[derive(Debug, Clone, Serialize)]
pub struct LeadingTerm {
    pub point: ExpansionPoint,
    pub function: &'static str,
    /// exponent in the local variable
    pub exponent: String,
    pub coefficient: String,
    pub expected_exponent: String,
    pub expected_coefficient: String,
    pub matches: bool,
}

/// The twelve leading terms (u₀², y₀, y₁, y₂ at 0, 1, ∞) compared with
/// their closed forms. At ∞ exponents are in x = (−z)^{−1}, so x^{−e}
/// stands for (−z)^{e}.
pub fn leading_terms(params: &TriangleParams, n: usize) -> Result<Vec<LeadingTerm>, HypergeomError> {
    let (al, be, ga) = (params.alpha().clone(), params.beta().clone(), params.gamma().clone());
    let one = Q::one();
    let two = Q::from_integer(2.into());
    let r = |q: Q| SymPoly::from_rational(&q);
    let theta2 = sym(THETA).pow(2);
    let zw2 = sym(ZETA1).mul_ref(&sym(OMEGA)).pow(2);
    let e1 = &al + &be - &ga;

    let expected: [(ExpansionPoint, [(Q, SymPoly); 4]); 3] = [
        (
            ExpansionPoint::Zero,
            [
                (ga.clone(), r(one.clone())),
                (&ga - &one, r(&ga / &two)),
                (&ga - &one, r((&ga - &two) / &two)),
                (&ga - &one, r(&ga / &two)),
            ],
        ),
        (
            ExpansionPoint::One,
            [
                (&e1 + &one, theta2.clone()),
                (e1.clone(), theta2.scale_rational(&(-(&one + &e1) / &two))),
                (e1.clone(), theta2.scale_rational(&(-(&one + &e1) / &two))),
                (e1.clone(), theta2.scale_rational(&(-(&e1 - &one) / &two))),
            ],
        ),
        (
            ExpansionPoint::Infinity,
            [
                (-(&one - &al + &be), zw2.clone()),
                (&al - &be, zw2.scale_rational(&((&al - &be - &one) / &two))),
                (&al - &be, zw2.scale_rational(&((&al - &be + &one) / &two))),
                (&al - &be, zw2.scale_rational(&((&al - &be + &one) / &two))),
            ],
        ),
    ];
    let names = ["u0^2", "y0", "y1", "y2"];
    let mut out = Vec::new();
    for (point, exp) in expected {
        let e = symbolic_at(point, params, n)?;
        let series = [&e.u0sq, &e.y[0], &e.y[1], &e.y[2]];
        for ((name, s), (ee, ec)) in names.iter().zip(series).zip(exp) {
            let (got_e, got_c) = (s.ord()?, s.leading_coeff()?);
            out.push(LeadingTerm {
                point,
                function: name,
                exponent: format_rational(&got_e),
                coefficient: got_c.to_string(),
                expected_exponent: format_rational(&ee),
                expected_coefficient: ec.to_string(),
                matches: got_e == ee && got_c == ec,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn params() -> TriangleParams {
        TriangleParams::new(rat(1, 5), rat(1, 4), rat(1, 2)).unwrap()
    }

    #[test]
    fn zero_leading_terms() {
        let z = at_zero(&params(), 12).unwrap();
        let [y0, y1, y2] = &z.local.y;
        assert_eq!(z.local.u0sq.ord().unwrap(), rat(1, 2));
        assert_eq!(z.local.u0sq.leading_coeff().unwrap(), int(1));
        assert_eq!(y0.ord().unwrap(), rat(-1, 2));
        assert_eq!(y0.leading_coeff().unwrap(), rat(1, 4));
        assert_eq!(y1.leading_coeff().unwrap(), rat(-3, 4));
        assert_eq!(y2.leading_coeff().unwrap(), rat(1, 4));
        assert_eq!(z.u1.ord().unwrap(), rat(3, 4));
        assert_eq!(z.tau.ord().unwrap(), rat(1, 2));
        assert_eq!(z.q.leading_coeff().unwrap(), int(1));
        assert_eq!(y0.ram(), 20);
        // relative precision is exactly n z-units
        assert_eq!(y0.precision_exponent() - y0.ord().unwrap(), int(12));
    }

    #[test]
    fn twelve_leading_terms() {
        for t in leading_terms(&params(), 8).unwrap() {
            assert!(t.matches, "{t:?}");
        }
    }

    #[test]
    fn difference_identities_at_zero() {
        let z = at_zero(&params(), 10).unwrap();
        let [y0, y1, y2] = &z.local.y;
        let u2 = &z.local.u0sq;
        let r = u2.ram() as i64;
        // y0 − y1 = u0²/z
        let d = y0.sub(y1).sub(&u2.shift(-r));
        assert!(d.is_zero_to_precision());
        // y1 − y2 = u0²/(z(z − 1)) has order γ − 1
        assert_eq!(y1.sub(y2).ord().unwrap(), rat(-1, 2));
        assert_eq!(y0.sub(y2).ord().unwrap(), rat(1, 2));
    }
}
