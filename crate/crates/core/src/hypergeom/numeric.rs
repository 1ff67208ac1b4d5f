//! Floating-point side: Γ-ratio constants, a ₂F₁ evaluator, and the
//! residual report for the ODE, the Wronskian and the connection formulas.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;
use statrs::function::gamma::gamma;

use super::{at_zero, ode::LinearOde, HypergeomError, NormalForm};
use crate::params::TriangleParams;
use crate::rational::to_f64;
use crate::series::SYMBOLS;

type C = Complex64;

const DIRECT_RADIUS: f64 = 0.8;
const START_RADIUS: f64 = 0.5;
const MAX_TERMS: usize = 100_000;

/// Radius inside which the truncated series at 0 is trusted for the
/// Wronskian and ODE checks.
const SERIES_RADIUS: f64 = 0.7;

pub const RELATIVE_TOLERANCE: f64 = 1e-6;
pub const WRONSKIAN_TOLERANCE: f64 = 1e-9;

fn re(x: f64) -> C {
    C::new(x, 0.0)
}

fn fmt_c(z: C) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.re == 0.0 {
        format!("{}i", z.im)
    } else {
        format!("{}{:+}i", z.re, z.im)
    }
}

/// Parses `0.1`, `-3+2i`, `0.5i`, `1e-3`, `-i`.
pub fn parse_complex(text: &str) -> Option<C> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return None;
    }
    let Some(body) = s.strip_suffix('i') else {
        return s.parse::<f64>().ok().map(re);
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (real, imag) = match split {
        Some(k) => (body[..k].parse::<f64>().ok()?, &body[k..]),
        None => (0.0, body),
    };
    let imag = match imag {
        "" | "+" => 1.0,
        "-" => -1.0,
        t => t.parse::<f64>().ok()?,
    };
    Some(C::new(real, imag))
}

fn is_nonpositive_integer(c: C) -> bool {
    c.im == 0.0 && c.re <= 0.0 && c.re.fract() == 0.0
}

fn direct_series(a: C, b: C, c: C, z: C) -> Result<C, HypergeomError> {
    let mut sum = C::default();
    let mut comp = C::default();
    let mut term = re(1.0);
    for n in 0..MAX_TERMS {
        // Kahan summation
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * z;
        if term.norm() <= 1e-17 * sum.norm() && n > 2 {
            return Ok(sum);
        }
        if term.norm() == 0.0 {
            return Ok(sum);
        }
    }
    Err(HypergeomError::NotConvergent { z: fmt_c(z) })
}

/// ₂F₁(a,b;c;z) on ℂ − [1,∞), principal branch.
pub fn hyp2f1(a: C, b: C, c: C, z: C) -> Result<C, HypergeomError> {
    if is_nonpositive_integer(c) {
        return Err(HypergeomError::PolarParameter { c: fmt_c(c) });
    }
    if z.im == 0.0 && z.re >= 1.0 {
        return Err(HypergeomError::CutLineViolation { z: fmt_c(z) });
    }
    if z.norm() <= DIRECT_RADIUS {
        return direct_series(a, b, c, z);
    }
    // start on the ray through z, which meets neither 0 nor [1,∞)
    let z0 = z * (START_RADIUS / z.norm());
    let f0 = direct_series(a, b, c, z0)?;
    let df0 = a * b / c * direct_series(a + 1.0, b + 1.0, c + 1.0, z0)?;
    let (f, _) = LinearOde::hypergeometric(a, b, c).continue_to(z0, f0, df0, z)?;
    Ok(f)
}

/// A named constant: the opaque symbol and its numeric binding.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct NamedConstant {
    pub symbol: &'static str,
    pub re: f64,
    pub im: f64,
}

impl NamedConstant {
    fn new(symbol: &'static str, v: C) -> Self {
        NamedConstant { symbol, re: v.re, im: v.im }
    }

    pub fn value(&self) -> C {
        C::new(self.re, self.im)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConnectionConstants {
    pub theta: NamedConstant,
    pub theta_p: NamedConstant,
    pub zeta1: NamedConstant,
    pub omega: NamedConstant,
    pub omega1: NamedConstant,
    /// ω with Γ(α) in place of Γ(β) in the denominator
    pub omega_proof: NamedConstant,
}

impl ConnectionConstants {
    /// Values in the symbol order used by the series coefficients.
    pub fn values(&self) -> [C; 5] {
        [self.theta.value(), self.theta_p.value(), self.zeta1.value(), self.omega.value(), self.omega1.value()]
    }
}

pub fn connection_constants(params: &TriangleParams) -> ConnectionConstants {
    let (al, be, ga) = params.to_f64();
    let theta = gamma(ga) * gamma(ga - al - be) / (gamma(ga - al) * gamma(ga - be));
    let theta_p = gamma(ga) * gamma(al + be - ga) / (gamma(al) * gamma(be));
    let omega = gamma(ga) * gamma(be - al) / (gamma(ga - al) * gamma(be));
    let omega_proof = gamma(ga) * gamma(be - al) / (gamma(ga - al) * gamma(al));
    let omega1 = gamma(ga) * gamma(al - be) / (gamma(ga - be) * gamma(al));
    let zeta1 = C::from_polar(1.0, PI * ga / 2.0);
    ConnectionConstants {
        theta: NamedConstant::new(SYMBOLS[0], re(theta)),
        theta_p: NamedConstant::new(SYMBOLS[1], re(theta_p)),
        zeta1: NamedConstant::new(SYMBOLS[2], zeta1),
        omega: NamedConstant::new(SYMBOLS[3], re(omega)),
        omega1: NamedConstant::new(SYMBOLS[4], re(omega1)),
        omega_proof: NamedConstant::new("omega_proof", re(omega_proof)),
    }
}

/// θ as the value of ₂F₁(α,β;γ;1), from partial sums of the series at 1
/// with Richardson elimination of the tail exponents δ, δ+1, …, where
/// δ = γ−α−β.
pub fn theta_by_extrapolation(params: &TriangleParams) -> f64 {
    let (al, be, ga) = params.to_f64();
    let delta = ga - al - be;
    let levels = 10;
    let base = 256usize;
    let max_n = base << (levels - 1);
    let mut sums = Vec::with_capacity(levels);
    let (mut sum, mut comp, mut term) = (0.0f64, 0.0f64, 1.0f64);
    let mut next = base;
    for n in 0..max_n {
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if n + 1 == next {
            sums.push(sum);
            next *= 2;
        }
        let nf = n as f64;
        term *= (al + nf) * (be + nf) / ((ga + nf) * (nf + 1.0));
    }
    let mut table = sums;
    for k in 0..levels - 1 {
        let f = 2f64.powf(delta + k as f64);
        table = table.windows(2).map(|w| (f * w[1] - w[0]) / (f - 1.0)).collect();
    }
    table[0]
}

/// u₀, u₁ and their derivatives at a point, from closed forms.
#[derive(Debug, Clone, Copy)]
pub struct UValues {
    pub u0: C,
    pub du0: C,
    pub d2u0: C,
    pub u1: C,
    pub du1: C,
}

fn f_and_derivatives(a: C, b: C, c: C, z: C) -> Result<[C; 3], HypergeomError> {
    let f = hyp2f1(a, b, c, z)?;
    let f1 = a * b / c * hyp2f1(a + 1.0, b + 1.0, c + 1.0, z)?;
    let f2 = a * (a + 1.0) * b * (b + 1.0) / (c * (c + 1.0)) * hyp2f1(a + 2.0, b + 2.0, c + 2.0, z)?;
    Ok([f, f1, f2])
}

/// G·F with G = z^p (1−z)^s on principal branches.
fn product(p: f64, s: f64, z: C, f: [C; 3]) -> [C; 3] {
    let g = z.powf(p) * (1.0 - z).powf(s);
    let l1 = p / z - s / (1.0 - z);
    let l2 = l1 * l1 - p / (z * z) - s / ((1.0 - z) * (1.0 - z));
    [g * f[0], g * (l1 * f[0] + f[1]), g * (l2 * f[0] + 2.0 * l1 * f[1] + f[2])]
}

fn check_v01(z: C) -> Result<(), HypergeomError> {
    if z.im == 0.0 && (z.re <= 0.0 || z.re >= 1.0) {
        return Err(HypergeomError::CutLineViolation { z: fmt_c(z) });
    }
    Ok(())
}

pub fn u_values(params: &TriangleParams, z: C) -> Result<UValues, HypergeomError> {
    check_v01(z)?;
    let (al, be, ga) = params.to_f64();
    let sp = (al + be - ga + 1.0) / 2.0;
    let u0 = product(ga / 2.0, sp, z, f_and_derivatives(re(al), re(be), re(ga), z)?);
    let u1 = product(1.0 - ga / 2.0, sp, z, f_and_derivatives(re(al - ga + 1.0), re(be - ga + 1.0), re(2.0 - ga), z)?);
    Ok(UValues { u0: u0[0], du0: u0[1], d2u0: u0[2], u1: u1[0], du1: u1[1] })
}

/// Sample points for each family of checks.
#[derive(Debug, Clone, Serialize)]
pub struct SamplePlan {
    pub wronskian: Vec<[f64; 2]>,
    pub connection_one: Vec<[f64; 2]>,
    pub connection_inf: Vec<[f64; 2]>,
    pub order: usize,
}

impl Default for SamplePlan {
    fn default() -> Self {
        SamplePlan {
            wronskian: vec![[0.1, 0.0], [0.3, 0.0], [0.0, 0.5]],
            connection_one: vec![[1e-3, 0.0], [0.05, 0.0], [0.2, 0.1]],
            connection_inf: vec![[-3.0, 2.0], [-1.5, 3.0], [-6.0, -1.0], [0.2, 2.0]],
            order: 60,
        }
    }
}

impl SamplePlan {
    /// Same points for every family.
    pub fn uniform(points: &[C], order: usize) -> Self {
        let v: Vec<[f64; 2]> = points.iter().map(|z| [z.re, z.im]).collect();
        SamplePlan { wronskian: v.clone(), connection_one: v.clone(), connection_inf: v, order }
    }

    /// Each point goes to the families whose formulas are defined there;
    /// points on the real axis miss some of the cuts but not all.
    pub fn admissible(points: &[C], order: usize) -> Self {
        let pick = |ok: &dyn Fn(&C) -> bool| points.iter().filter(|z| ok(z)).map(|z| [z.re, z.im]).collect();
        let off01 = |z: &C| check_v01(*z).is_ok();
        SamplePlan {
            wronskian: pick(&off01),
            connection_one: pick(&off01),
            connection_inf: pick(&|z: &C| !(z.im == 0.0 && z.re >= 0.0)),
            order,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckLine {
    pub check: String,
    pub z: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckLine {
    fn new(check: &str, z: C, residual: f64, tolerance: f64) -> Self {
        CheckLine { check: check.to_string(), z: fmt_c(z), residual, tolerance, pass: residual < tolerance }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct NumericReport {
    pub constants: ConnectionConstants,
    pub theta_extrapolated: f64,
    pub theta_agreement: f64,
    /// which ω matches the connection formula at ∞: "statement", "proof" or "neither"
    pub omega_variant: String,
    pub lines: Vec<CheckLine>,
    pub all_pass: bool,
}

fn rel(lhs: C, rhs: C) -> f64 {
    (lhs - rhs).norm() / lhs.norm().max(rhs.norm()).max(f64::MIN_POSITIVE)
}

fn connection_one_residual(params: &TriangleParams, k: &ConnectionConstants, z: C) -> Result<f64, HypergeomError> {
    check_v01(z)?;
    let (al, be, ga) = params.to_f64();
    let s = ga - al - be;
    let lhs = hyp2f1(re(al), re(be), re(ga), 1.0 - z)?;
    let rhs = k.theta.value() * hyp2f1(re(al), re(be), re(1.0 - s), z)?
        + k.theta_p.value() * z.powf(s) * hyp2f1(re(ga - al), re(ga - be), re(s + 1.0), z)?;
    Ok(rel(lhs, rhs))
}

fn connection_inf_residual(params: &TriangleParams, omega: C, omega1: C, z: C) -> Result<f64, HypergeomError> {
    if z.im == 0.0 && z.re >= 0.0 {
        return Err(HypergeomError::CutLineViolation { z: fmt_c(z) });
    }
    let (al, be, ga) = params.to_f64();
    let mz = -z;
    let w = 1.0 / z;
    let lhs = hyp2f1(re(al), re(be), re(ga), z)?;
    let rhs = omega * mz.powf(-al) * hyp2f1(re(al), re(1.0 - ga + al), re(1.0 - be + al), w)?
        + omega1 * mz.powf(-be) * hyp2f1(re(be), re(1.0 - ga + be), re(1.0 - al + be), w)?;
    Ok(rel(lhs, rhs))
}

/// Runs every check of the plan; a sample on a cut is an error.
pub fn numeric_checks(params: &TriangleParams, plan: &SamplePlan) -> Result<NumericReport, HypergeomError> {
    let k = connection_constants(params);
    let gamma_f = to_f64(params.gamma());
    let theta_x = theta_by_extrapolation(params);
    let mut lines = Vec::new();
    lines.push(CheckLine {
        check: "theta two routes".into(),
        z: "1".into(),
        residual: (theta_x - k.theta.re).abs() / k.theta.re.abs(),
        tolerance: RELATIVE_TOLERANCE,
        pass: (theta_x - k.theta.re).abs() / k.theta.re.abs() < RELATIVE_TOLERANCE,
    });

    let zero = at_zero(params, plan.order)?;
    let u0s = zero.local.u0.to_complex();
    let u1s = zero.u1.to_complex();
    let (du0s, du1s) = (u0s.derivative(), u1s.derivative());
    let d2u0s = du0s.derivative();
    let normal = NormalForm::new(params);
    for z in plan.wronskian.iter().map(|p| C::new(p[0], p[1])) {
        check_v01(z)?;
        let (u0, du0, d2u0, u1, du1) = if z.norm() <= SERIES_RADIUS {
            (u0s.eval(z), du0s.eval(z), d2u0s.eval(z), u1s.eval(z), du1s.eval(z))
        } else {
            let v = u_values(params, z)?;
            (v.u0, v.du0, v.d2u0, v.u1, v.du1)
        };
        let w = du1 * u0 - u1 * du0;
        lines.push(CheckLine::new("wronskian", z, (w - (1.0 - gamma_f)).norm(), WRONSKIAN_TOLERANCE));
        let r = normal.residual(z, u0, d2u0);
        let scale = (normal.residual(z, C::default(), d2u0).norm() + normal.residual(z, u0, C::default()).norm()).max(f64::MIN_POSITIVE);
        lines.push(CheckLine::new("normal-form ode", z, r.norm() / scale, WRONSKIAN_TOLERANCE));
    }
    for z in plan.connection_one.iter().map(|p| C::new(p[0], p[1])) {
        lines.push(CheckLine::new("connection at 1", z, connection_one_residual(params, &k, z)?, RELATIVE_TOLERANCE));
    }
    let (mut stmt_ok, mut proof_ok) = (true, true);
    for z in plan.connection_inf.iter().map(|p| C::new(p[0], p[1])) {
        let stmt = connection_inf_residual(params, k.omega.value(), k.omega1.value(), z)?;
        let proof = connection_inf_residual(params, k.omega_proof.value(), k.omega1.value(), z)?;
        stmt_ok &= stmt < RELATIVE_TOLERANCE;
        proof_ok &= proof < RELATIVE_TOLERANCE;
        lines.push(CheckLine::new("connection at inf", z, stmt, RELATIVE_TOLERANCE));
        lines.push(CheckLine { pass: true, ..CheckLine::new("connection at inf, proof omega (informational)", z, proof, RELATIVE_TOLERANCE) });
    }
    let omega_variant = match (stmt_ok, proof_ok) {
        (true, true) => "both",
        (true, false) => "statement",
        (false, true) => "proof",
        (false, false) => "neither",
    };
    let all_pass = lines.iter().all(|l| l.pass);
    Ok(NumericReport {
        constants: k,
        theta_agreement: (theta_x - connection_constants(params).theta.re).abs(),
        theta_extrapolated: theta_x,
        omega_variant: omega_variant.into(),
        lines,
        all_pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn params() -> TriangleParams {
        TriangleParams::new(rat(1, 5), rat(1, 4), rat(1, 2)).unwrap()
    }

    #[test]
    fn complex_parsing() {
        assert_eq!(parse_complex("0.5i"), Some(C::new(0.0, 0.5)));
        assert_eq!(parse_complex("-3+2i"), Some(C::new(-3.0, 2.0)));
        assert_eq!(parse_complex("1e-3"), Some(re(1e-3)));
        assert_eq!(parse_complex("-i"), Some(C::new(0.0, -1.0)));
        assert_eq!(parse_complex("2e-1-1e-2i"), Some(C::new(0.2, -0.01)));
        assert_eq!(parse_complex("x"), None);
    }

    #[test]
    fn hyp2f1_closed_forms() {
        // ₂F₁(1,1;2;z) = −log(1−z)/z, ₂F₁(1/2,1;3/2;−z²) = arctan(z)/z
        for z in [C::new(0.3, 0.1), C::new(-5.0, 1.0), C::new(0.9, -0.4), C::new(3.0, 0.5)] {
            let got = hyp2f1(re(1.0), re(1.0), re(2.0), z).unwrap();
            assert!((got + (1.0 - z).ln() / z).norm() < 1e-12, "{z}");
        }
        let x = 2.5;
        let got = hyp2f1(re(0.5), re(1.0), re(1.5), re(-x * x)).unwrap();
        assert!((got.re - x.atan() / x).abs() < 1e-12);
        assert!(matches!(hyp2f1(re(0.5), re(1.0), re(1.5), re(2.0)), Err(HypergeomError::CutLineViolation { .. })));
    }

    #[test]
    fn gauss_value_routes_agree() {
        let k = connection_constants(&params());
        let t = theta_by_extrapolation(&params());
        assert!((t - k.theta.re).abs() < 1e-6 * k.theta.re, "{t} vs {}", k.theta.re);
        assert!((k.zeta1.value().norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn default_plan_passes() {
        let rep = numeric_checks(&params(), &SamplePlan::default()).unwrap();
        for l in &rep.lines {
            assert!(l.pass, "{l:?}");
        }
        assert_eq!(rep.omega_variant, "statement");
    }

    #[test]
    fn admissible_plan_avoids_cuts() {
        let pts = [re(0.1), re(-2.0), C::new(0.2, 0.3)];
        let plan = SamplePlan::admissible(&pts, 40);
        assert_eq!(plan.wronskian.len(), 2);
        assert_eq!(plan.connection_inf.len(), 2);
        assert!(numeric_checks(&params(), &plan).unwrap().all_pass);
    }

    #[test]
    fn cut_samples_rejected() {
        let plan = SamplePlan::uniform(&[re(-2.0)], 20);
        assert!(matches!(numeric_checks(&params(), &plan), Err(HypergeomError::CutLineViolation { .. })));
    }
}
