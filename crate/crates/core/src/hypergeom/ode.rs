//! Taylor-series stepping for second-order linear ODEs with polynomial
//! coefficients, P₂F″ + P₁F′ + P₀F = 0.

use num_complex::Complex64;

use super::HypergeomError;
use crate::params::TriangleParams;
use crate::rational::to_f64;

const TERMS_PER_STEP: usize = 40;
const STEP_FRACTION: f64 = 0.4;
const MAX_STEPS: usize = 10_000;

type C = Complex64;

fn c(re: f64) -> C {
    C::new(re, 0.0)
}

/// Coefficients of p(z0 + h) in powers of h.
fn recenter(p: &[C], z0: C) -> Vec<C> {
    let mut a = p.to_vec();
    let n = a.len();
    // repeated synthetic division by (z − z0)
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = a[j + 1] * z0;
            a[j] += t;
        }
    }
    a
}

#[derive(Debug, Clone)]
pub struct LinearOde {
    /// coefficients in powers of z: [P₂, P₁, P₀]
    coeffs: [Vec<C>; 3],
    singular: Vec<C>,
}

impl LinearOde {
    pub fn new(p2: Vec<C>, p1: Vec<C>, p0: Vec<C>, singular: Vec<C>) -> Self {
        LinearOde { coeffs: [p2, p1, p0], singular }
    }

    /// z(1−z)F″ + (c − (a+b+1)z)F′ − abF = 0.
    pub fn hypergeometric(a: C, b: C, cc: C) -> Self {
        Self::new(
            vec![c(0.0), c(1.0), c(-1.0)],
            vec![cc, -(a + b + 1.0)],
            vec![-(a * b)],
            vec![c(0.0), c(1.0)],
        )
    }

    pub fn singular_points(&self) -> &[C] {
        &self.singular
    }

    fn distance_to_singular(&self, z: C) -> f64 {
        self.singular.iter().map(|s| (z - s).norm()).fold(f64::INFINITY, f64::min)
    }

    /// First `n` Taylor coefficients at `z0` from F(z0), F′(z0).
    pub fn taylor(&self, z0: C, f0: C, df0: C, n: usize) -> Vec<C> {
        let [p2, p1, p0] = self.coeffs.clone().map(|p| recenter(&p, z0));
        let mut f = vec![C::default(); n.max(2)];
        f[0] = f0;
        f[1] = df0;
        let lead = p2[0];
        assert!(lead.norm() > 0.0, "Taylor expansion at a singular point");
        for k in 0..n.saturating_sub(2) {
            let mut acc = C::default();
            for (j, pj) in p2.iter().enumerate().skip(1) {
                if j > k {
                    break;
                }
                let m = k + 2 - j;
                acc += pj * f[m] * ((m * (m - 1)) as f64);
            }
            for (j, pj) in p1.iter().enumerate() {
                if j > k + 1 {
                    break;
                }
                let m = k + 1 - j;
                acc += pj * f[m] * (m as f64);
            }
            for (j, pj) in p0.iter().enumerate() {
                if j > k {
                    break;
                }
                acc += pj * f[k - j];
            }
            f[k + 2] = -acc / (lead * (((k + 2) * (k + 1)) as f64));
        }
        f.truncate(n);
        f
    }

    /// Carries (F, F′) from `z0` to `z1` along the straight segment.
    pub fn continue_to(&self, z0: C, f0: C, df0: C, z1: C) -> Result<(C, C), HypergeomError> {
        let (mut z, mut f, mut df) = (z0, f0, df0);
        for _ in 0..MAX_STEPS {
            let remaining = z1 - z;
            if remaining.norm() == 0.0 {
                return Ok((f, df));
            }
            let reach = STEP_FRACTION * self.distance_to_singular(z);
            let h = if remaining.norm() <= reach { remaining } else { remaining * (reach / remaining.norm()) };
            let t = self.taylor(z, f, df, TERMS_PER_STEP);
            let (mut v, mut dv) = (C::default(), C::default());
            for (k, tk) in t.iter().enumerate().rev() {
                v = v * h + tk;
                if k > 0 {
                    dv = dv * h + tk * (k as f64);
                }
            }
            z += h;
            f = v;
            df = dv;
            if h == remaining {
                return Ok((f, df));
            }
        }
        Err(HypergeomError::NotConvergent { z: format!("{z1}") })
    }
}

/// 4z²(z−1)²U″ + (a(z−1)² + bz² + c)U = 0, solved by u₀ and u₁.
#[derive(Debug, Clone)]
pub struct NormalForm {
    ode: LinearOde,
}

impl NormalForm {
    pub fn new(params: &TriangleParams) -> Self {
        let k = params.derived_constants();
        let (a, b, cc) = (to_f64(&k.a), to_f64(&k.b), to_f64(&k.c));
        // 4z²(z−1)² = 4z² − 8z³ + 4z⁴
        let p2 = vec![c(0.0), c(0.0), c(4.0), c(-8.0), c(4.0)];
        let p0 = vec![c(a + cc), c(-2.0 * a), c(a + b)];
        NormalForm { ode: LinearOde::new(p2, vec![], p0, vec![c(0.0), c(1.0)]) }
    }

    pub fn ode(&self) -> &LinearOde {
        &self.ode
    }

    /// 4z²(z−1)²U″ + (…)U at a point.
    pub fn residual(&self, z: C, u: C, d2u: C) -> C {
        let eval = |p: &[C]| p.iter().rev().fold(C::default(), |acc, x| acc * z + x);
        eval(&self.ode.coeffs[0]) * d2u + eval(&self.ode.coeffs[2]) * u
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recenter_matches_direct_evaluation() {
        let p = vec![c(1.0), c(-2.0), c(3.0)];
        let z0 = C::new(0.5, 0.25);
        let q = recenter(&p, z0);
        let h = C::new(0.1, -0.3);
        let direct = p.iter().rev().fold(C::default(), |a, x| a * (z0 + h) + x);
        let shifted = q.iter().rev().fold(C::default(), |a, x| a * h + x);
        assert!((direct - shifted).norm() < 1e-14);
    }

    #[test]
    fn exponential_by_stepping() {
        // F″ = F with F(0)=1, F′(0)=1 is e^z
        let ode = LinearOde::new(vec![c(1.0)], vec![], vec![c(-1.0)], vec![]);
        let (f, df) = ode.continue_to(c(0.0), c(1.0), c(1.0), C::new(1.0, 2.0)).unwrap();
        let e = C::new(1.0, 2.0).exp();
        assert!((f - e).norm() < 1e-12 && (df - e).norm() < 1e-12);
    }

    #[test]
    fn log_through_hypergeometric() {
        // ₂F₁(1,1;2;z) = −log(1−z)/z
        let ode = LinearOde::hypergeometric(c(1.0), c(1.0), c(2.0));
        let z0 = c(0.25);
        let f0 = -(1.0 - z0).ln() / z0;
        let df0 = (z0 / (1.0 - z0) + (1.0 - z0).ln()) / (z0 * z0);
        let z1 = C::new(-3.0, 2.0);
        let (f, _) = ode.continue_to(z0, f0, df0, z1).unwrap();
        let want = -(1.0 - z1).ln() / z1;
        assert!((f - want).norm() < 1e-12, "{f} vs {want}");
    }
}
