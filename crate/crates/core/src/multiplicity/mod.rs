//! Vanishing orders of polynomials in τ, q, y0, y1, y2 at z = 0 (exact)
//! and at ordinary points (floating), the distance from the point
//! (1 : q : y0 : y1 : y2) to a hypersurface, and an empirical audit of the
//! multiplicity bound M1·M2⁴.
//!
//! All orders are measured in the z-coordinate.

use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::derivation::{dehomogenize, DerivationError};
use crate::hypergeom::{at_zero, eval_poly, u_values, HypergeomError, NormalForm};
use crate::params::TriangleParams;
use crate::rational::{format_rational, rat, Q};
use crate::ring::{AffinePoly, HomogPoly, Monomial, Poly, VarSet, TAU};
use crate::series::{Puiseux, SeriesError};

type C = Complex64;

/// Largest truncation order reached by doubling.
pub const MAX_ORDER: usize = 640;
/// Vanishing threshold at ordinary points, relative to the
/// cancellation-free size of each Taylor coefficient.
pub const GENERIC_THRESHOLD: f64 = 1e-8;
/// Coefficients this close below the threshold make the answer ambiguous.
const GRAY_ZONE: f64 = 1e-11;
/// Minimal distance of an ordinary point from 0 and 1.
const MIN_SEPARATION: f64 = 0.05;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MultiplicityError {
    #[error("the zero polynomial has no order")]
    ZeroPolynomial,
    #[error("no nonzero coefficient up to truncation order {order}")]
    TruncationExhausted { order: usize },
    #[error("coefficient {index} is {ratio:e} of its scale, too close to the cutoff {cutoff:e}")]
    ThresholdAmbiguous { index: usize, ratio: f64, cutoff: f64 },
    #[error("point {z} is too close to a singular point or on a cut")]
    BadPoint { z: String },
    #[error("polynomial lives over {found}, expected {expected}")]
    WrongVariables { expected: &'static str, found: &'static str },
    #[error(transparent)]
    Hypergeom(#[from] HypergeomError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Derivation(#[from] DerivationError),
}

#[derive(Debug, Clone, Serialize)]
pub struct OrdReport {
    /// "0" or the ordinary point z0
    pub point: String,
    pub poly: String,
    /// rational order in the z-coordinate
    pub ord: String,
    pub truncation: usize,
    pub domain: &'static str,
    pub coordinate: &'static str,
    #[serde(skip)]
    pub value: Q,
}

fn check_affine<T: crate::coeff::Coeff>(p: &Poly<T>) -> Result<(), MultiplicityError> {
    if p.vars() != VarSet::Affine {
        return Err(MultiplicityError::WrongVariables { expected: "affine", found: p.vars().name() });
    }
    if p.is_zero() {
        return Err(MultiplicityError::ZeroPolynomial);
    }
    Ok(())
}

/// Exact order at z = 0, doubling the truncation while inconclusive.
pub fn ord_at_zero(p: &AffinePoly, params: &TriangleParams, n: usize) -> Result<OrdReport, MultiplicityError> {
    check_affine(p)?;
    let mut order = n.max(1);
    loop {
        let gens = at_zero(params, order)?.generators();
        let s = eval_poly(p, &gens);
        if let Ok(v) = s.ord() {
            return Ok(OrdReport {
                point: "0".into(),
                poly: p.to_string(),
                ord: format_rational(&v),
                truncation: order,
                domain: "exact-rational",
                coordinate: "z",
                value: v,
            });
        }
        if order >= MAX_ORDER {
            return Err(MultiplicityError::TruncationExhausted { order });
        }
        order = (order * 2).min(MAX_ORDER);
    }
}

fn fmt_c(z: C) -> String {
    format!("{}{:+}i", z.re, z.im)
}

/// Taylor series of τ, q, y0, y1, y2 at an ordinary point, as power
/// series in h = z − z0 with `n` coefficients, plus a matching set of
/// coefficient magnitudes.
pub fn generic_generators(params: &TriangleParams, z0: C, n: usize) -> Result<[Puiseux<C>; 5], MultiplicityError> {
    if z0.norm() < MIN_SEPARATION || (z0 - 1.0).norm() < MIN_SEPARATION {
        return Err(MultiplicityError::BadPoint { z: fmt_c(z0) });
    }
    let v = u_values(params, z0).map_err(|_| MultiplicityError::BadPoint { z: fmt_c(z0) })?;
    let ode = NormalForm::new(params);
    let m = n + 2;
    let ps = |c: Vec<C>| Puiseux::new(1, 0, c, m as i64);
    let u0 = ps(ode.ode().taylor(z0, v.u0, v.du0, m));
    let u1 = ps(ode.ode().taylor(z0, v.u1, v.du1, m));
    let du0 = u0.derivative();
    let u0sq = u0.mul(&u0);
    // 1/(z0 + h) and 1/(z0 − 1 + h)
    let geometric = |a: C| ps((0..m).map(|k| (-1.0f64).powi(k as i32) / a.powu(k as u32 + 1)).collect());
    let y0 = u0.mul(&du0);
    let y1 = y0.sub(&u0sq.mul(&geometric(z0)));
    let y2 = y0.sub(&u0sq.mul(&geometric(z0 - 1.0)));
    let tau = u1.try_div(&u0)?;
    let tau0 = tau.coeff_at(0).unwrap_or_default();
    let mut shifted = tau.coeffs().to_vec();
    shifted[0] = C::zero();
    let q = ps(shifted).exp()?.scale(&tau0.exp());
    Ok([tau, q, y0, y1, y2].map(|s| s.truncate(n as i64)))
}

fn magnitudes(s: &Puiseux<C>) -> Puiseux<C> {
    s.map_coeffs(|c| C::new(c.norm(), 0.0))
}

/// Order at an ordinary point z0: index of the first Taylor coefficient
/// above the threshold.
pub fn ord_at_generic(
    p: &Poly<C>,
    params: &TriangleParams,
    z0: C,
    n: usize,
) -> Result<OrdReport, MultiplicityError> {
    check_affine(p)?;
    let gens = generic_generators(params, z0, n)?;
    let f = eval_poly(p, &gens);
    let scale = eval_poly(&p.map_coeffs(|c| C::new(c.norm(), 0.0)), &gens.clone().map(|g| magnitudes(&g)));
    let mut worst = 0.0f64;
    for k in 0..f.prec().min(scale.prec()) {
        let val = f.coeff_at(k).unwrap_or_default().norm();
        let sc = scale.coeff_at(k).unwrap_or_default().re;
        if sc == 0.0 {
            continue;
        }
        let ratio = val / sc;
        if ratio > GENERIC_THRESHOLD {
            if worst > GRAY_ZONE {
                return Err(MultiplicityError::ThresholdAmbiguous { index: k as usize, ratio: worst, cutoff: GENERIC_THRESHOLD });
            }
            let v = Q::from_integer(k.into());
            return Ok(OrdReport {
                point: fmt_c(z0),
                poly: p.to_string(),
                ord: k.to_string(),
                truncation: n,
                domain: "floating-complex",
                coordinate: "z",
                value: v,
            });
        }
        worst = worst.max(ratio);
    }
    if worst > 0.0 {
        Err(MultiplicityError::ThresholdAmbiguous { index: n, ratio: worst, cutoff: GENERIC_THRESHOLD })
    } else {
        Err(MultiplicityError::TruncationExhausted { order: n })
    }
}

/// Where a distance is evaluated.
#[derive(Debug, Clone, Copy)]
pub enum DistPoint {
    Zero,
    Generic(C),
}

#[derive(Debug, Clone, Serialize)]
pub struct DistReport {
    pub point: String,
    pub poly: String,
    pub ord_value: String,
    pub min_coeff_ord: String,
    pub min_coordinate_ord: String,
    pub degree: u32,
    /// −log Dist
    pub neg_log_dist: String,
    #[serde(skip)]
    pub value: Q,
}

/// −log Dist(ω̄, Z(U)) = ord U(ω̄) − min ord c_λ − deg U · min(0, ord F_i)
/// with ω̄ = (1 : q : y0 : y1 : y2) and c_λ ∈ Q[t] evaluated at t = τ.
pub fn log_dist_hypersurface(
    u: &HomogPoly,
    point: DistPoint,
    params: &TriangleParams,
    n: usize,
) -> Result<DistReport, MultiplicityError> {
    if u.vars() != VarSet::Projective {
        return Err(MultiplicityError::WrongVariables { expected: "projective", found: u.vars().name() });
    }
    if u.is_zero() {
        return Err(MultiplicityError::ZeroPolynomial);
    }
    if !u.is_homogeneous() {
        return Err(MultiplicityError::Derivation(DerivationError::NotHomogeneous));
    }
    let deg = u.total_degree();
    let value_poly = dehomogenize(u)?;
    let one_minus_gamma = Q::one() - params.gamma();
    let (ord_val, min_coeff, min_coord, label) = match point {
        DistPoint::Zero => {
            let ov = ord_at_zero(&value_poly, params, n)?.value;
            // ord c(τ) = (1 − γ)·(t-adic order of c)
            let mc = u
                .terms()
                .map(|(_, c)| Q::from_integer((c.t_adic_order().unwrap_or(0) as i64).into()) * &one_minus_gamma)
                .min()
                .unwrap_or_else(Q::zero);
            // ord q = 0, ord y_i = γ − 1
            let coord = (params.gamma() - Q::one()).min(Q::zero());
            (ov, mc, coord, "0".to_string())
        }
        DistPoint::Generic(z0) => {
            let pc = value_poly.map_coeffs(|c| C::new(crate::rational::to_f64(c), 0.0));
            let ov = ord_at_generic(&pc, params, z0, n)?.value;
            let mut mc: Option<Q> = None;
            for (_, c) in u.terms() {
                let mut cp = Poly::zero(VarSet::Affine);
                for (k, ck) in c.coeffs().iter().enumerate() {
                    cp.add_term(Monomial::var(5, TAU, k as u32), &C::new(crate::rational::to_f64(ck), 0.0));
                }
                let o = ord_at_generic(&cp, params, z0, n)?.value;
                mc = Some(mc.map_or(o.clone(), |m: Q| m.min(o)));
            }
            // the coordinates are holomorphic at an ordinary point
            (ov, mc.unwrap_or_else(Q::zero), Q::zero(), fmt_c(z0))
        }
    };
    let value = &ord_val - &min_coeff - Q::from_integer((deg as i64).into()) * &min_coord;
    Ok(DistReport {
        point: label,
        poly: u.to_string(),
        ord_value: format_rational(&ord_val),
        min_coeff_ord: format_rational(&min_coeff),
        min_coordinate_ord: format_rational(&min_coord),
        degree: deg,
        neg_log_dist: format_rational(&value),
        value,
    })
}

/// M1 = min(deg_τ, deg_q) + 1.
pub fn m1(profile: &[u32; 5]) -> u32 {
    profile[0].min(profile[1]) + 1
}

/// M2 = max(deg_τ, deg_q) + max(deg_y0, deg_y1, deg_y2).
pub fn m2(profile: &[u32; 5]) -> u32 {
    profile[0].max(profile[1]) + profile[2].max(profile[3]).max(profile[4])
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundAudit {
    pub params: String,
    pub profile: [u32; 5],
    pub m1: u32,
    pub m2: u32,
    pub bound: u64,
    pub seed: u64,
    pub samples: usize,
    pub conclusive: usize,
    pub exhausted: usize,
    pub max_ord: String,
    /// max ord / (M1·M2⁴); no value of the unknown constant is implied
    pub ratio: f64,
    pub within_bound: bool,
    pub ords: Vec<String>,
}

/// Dense random polynomial with exactly the given partial degrees and
/// coefficients drawn from {−9,…,9}∖{0}.
pub fn random_poly(profile: &[u32; 5], rng: &mut ChaCha8Rng) -> AffinePoly {
    let mut out = AffinePoly::zero(VarSet::Affine);
    let mut exps = [0u32; 5];
    loop {
        let mut c = rng.gen_range(1..=9i64);
        if rng.gen_bool(0.5) {
            c = -c;
        }
        out.add_term(Monomial::new(exps.to_vec()), &rat(c, 1));
        // odometer over the box
        let mut i = 0;
        loop {
            if i == 5 {
                return out;
            }
            if exps[i] < profile[i] {
                exps[i] += 1;
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

pub fn bound_audit(
    profile: [u32; 5],
    params: &TriangleParams,
    samples: usize,
    seed: u64,
    n: usize,
) -> Result<BoundAudit, MultiplicityError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let polys: Vec<AffinePoly> = (0..samples.max(1)).map(|_| random_poly(&profile, &mut rng)).collect();
    let results: Vec<Result<OrdReport, MultiplicityError>> =
        polys.par_iter().map(|p| ord_at_zero(p, params, n)).collect();
    let mut ords = Vec::new();
    let mut exhausted = 0;
    for r in results {
        match r {
            Ok(rep) => ords.push(rep.value),
            Err(MultiplicityError::TruncationExhausted { .. }) => exhausted += 1,
            Err(e) => return Err(e),
        }
    }
    let (m1v, m2v) = (m1(&profile), m2(&profile));
    let bound = u64::from(m1v) * u64::from(m2v).pow(4);
    let max_ord = ords.iter().max().cloned().unwrap_or_else(Q::zero);
    let ratio = if bound == 0 { 0.0 } else { crate::rational::to_f64(&max_ord) / bound as f64 };
    Ok(BoundAudit {
        params: params.to_string(),
        profile,
        m1: m1v,
        m2: m2v,
        bound,
        seed,
        samples: polys.len(),
        conclusive: ords.len(),
        exhausted,
        within_bound: max_ord <= Q::from_integer((bound as i64).into()),
        max_ord: format_rational(&max_ord),
        ratio,
        ords: ords.iter().map(format_rational).collect(),
    })
}
