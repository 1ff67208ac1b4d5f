//! Sylvester resultants by fraction-free (Bareiss) elimination.
//!
//! Sign convention: the Sylvester matrix lists the `deg Q` shifted
//! coefficient rows of `P` (leading coefficient first) above the `deg P`
//! rows of `Q`. With this convention `Res_y(y - u, y - v) = u - v`.

use super::poly::{Monomial, Poly};
use super::RingError;
use crate::coeff::Coeff;

/// Coefficients of `p` as a polynomial in `var`, lowest degree first.
pub fn coefficients_in<C: Coeff>(p: &Poly<C>, var: usize) -> Vec<Poly<C>> {
    let deg = p.partial_degree(var) as usize;
    let mut out = vec![Poly::zero(p.vars()); deg + 1];
    for (m, c) in p.terms() {
        let e = m.exp(var) as usize;
        out[e].add_term(m.with_exp(var, 0), c);
    }
    out
}

fn sylvester<C: Coeff>(p: &Poly<C>, q: &Poly<C>, var: usize) -> Result<Vec<Vec<Poly<C>>>, RingError> {
    let m = p.partial_degree(var) as usize;
    let n = q.partial_degree(var) as usize;
    if m == 0 || n == 0 {
        return Err(RingError::DegreeZeroInVariable { var: p.vars().names()[var].to_string() });
    }
    let pc = coefficients_in(p, var);
    let qc = coefficients_in(q, var);
    let size = m + n;
    let zero = Poly::zero(p.vars());
    let mut rows = vec![vec![zero; size]; size];
    for r in 0..n {
        for j in 0..=m {
            rows[r][r + j] = pc[m - j].clone();
        }
    }
    for r in 0..m {
        for j in 0..=n {
            rows[n + r][r + j] = qc[n - j].clone();
        }
    }
    Ok(rows)
}

/// Determinant by Bareiss elimination; every division is exact.
pub fn bareiss_det<C: Coeff>(mut a: Vec<Vec<Poly<C>>>) -> Poly<C> {
    let n = a.len();
    if n == 0 {
        panic!("determinant of an empty matrix");
    }
    let vars = a[0][0].vars();
    let mut sign_flip = false;
    let mut prev = Poly::one(vars);
    for k in 0..n.saturating_sub(1) {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign_flip = !sign_flip;
                }
                None => return Poly::zero(vars),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact over an integral domain");
            }
            a[i][k] = Poly::zero(vars);
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign_flip {
        det.neg()
    } else {
        det
    }
}

/// Resultant of `p` and `q` with respect to `var`.
pub fn resultant<C: Coeff>(p: &Poly<C>, q: &Poly<C>, var: usize) -> Result<Poly<C>, RingError> {
    if p.vars() != q.vars() {
        return Err(RingError::DomainMismatch { left: p.vars(), right: q.vars() });
    }
    Ok(bareiss_det(sylvester(p, q, var)?))
}

/// Resultant together with cofactors `a`, `b` such that `r = a p + b q`.
///
/// Built from the Sylvester matrix whose last column is replaced by
/// `var^k p` and `var^k q`, expanded along that column.
pub fn resultant_with_cofactors<C: Coeff>(
    p: &Poly<C>,
    q: &Poly<C>,
    var: usize,
) -> Result<(Poly<C>, Poly<C>, Poly<C>), RingError> {
    let rows = sylvester(p, q, var)?;
    let r = bareiss_det(rows.clone());
    let m = p.partial_degree(var) as usize;
    let n = q.partial_degree(var) as usize;
    let size = m + n;
    let vars = p.vars();
    let mut a = Poly::zero(vars);
    let mut b = Poly::zero(vars);
    for row in 0..size {
        let minor: Vec<Vec<Poly<C>>> = rows
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != row)
            .map(|(_, rr)| rr[..size - 1].to_vec())
            .collect();
        let cof = if size == 1 { Poly::one(vars) } else { bareiss_det(minor) };
        let cof = if (row + size - 1) % 2 == 1 { cof.neg() } else { cof };
        if row < n {
            let shift = Monomial::var(vars.len(), var, (n - 1 - row) as u32);
            a = &a + &cof.mul_term(&shift, &C::one());
        } else {
            let shift = Monomial::var(vars.len(), var, (m - 1 - (row - n)) as u32);
            b = &b + &cof.mul_term(&shift, &C::one());
        }
    }
    Ok((r, a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Q;
    use crate::ring::parse::parse_poly;
    use crate::ring::poly::{VarSet, Y0};

    fn p(s: &str) -> Poly<Q> {
        parse_poly(s, VarSet::Affine).unwrap()
    }

    #[test]
    fn linear_sign_convention() {
        // y0 plays the eliminated variable; u = y1, v = y2
        let r = resultant(&p("y0 - y1"), &p("y0 - y2"), Y0).unwrap();
        assert_eq!(r, p("y1 - y2"));
    }

    #[test]
    fn common_root_gives_zero() {
        let r = resultant(&p("(y0 - y1)(y0 + 2)"), &p("(y0 - y1)(y0 - 3 y2)"), Y0).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn degree_zero_rejected() {
        assert!(matches!(
            resultant(&p("y1 + 1"), &p("y0"), Y0),
            Err(RingError::DegreeZeroInVariable { .. })
        ));
    }

    #[test]
    fn quadratic_discriminant_style() {
        // Res_x(x^2 + b x + c, 2x + b) = -(b^2 - 4c) ... up to the leading factor:
        // Sylvester det of [[1,b,c],[2,b,0],[0,2,b]] = b^2 + 4c - 2b^2 = 4c - b^2
        let r = resultant(&p("y0^2 + y1 y0 + y2"), &p("2 y0 + y1"), Y0).unwrap();
        assert_eq!(r, p("4 y2 - y1^2"));
    }

    #[test]
    fn cofactors_reconstruct_resultant() {
        let f = p("y0^2 y1 + 3 y0 - y2");
        let g = p("y0^3 - y1 y0 + 2");
        let (r, a, b) = resultant_with_cofactors(&f, &g, Y0).unwrap();
        assert_eq!(r, resultant(&f, &g, Y0).unwrap());
        assert_eq!(&(&a * &f) + &(&b * &g), r);
        assert_eq!(r.partial_degree(Y0), 0);
    }
}
