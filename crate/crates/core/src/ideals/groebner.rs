//! Buchberger's algorithm over Q under graded-lex order, tracking for
//! every basis element its expression in the input generators.

use num_traits::One;

use super::IdealError;
use crate::rational::Q;
use crate::ring::{AffinePoly, Monomial};

pub const DEFAULT_BUDGET: usize = 100_000;

#[derive(Debug, Clone)]
struct Element {
    poly: AffinePoly,
    /// poly = Σ cof[j]·gens[j]
    cof: Vec<AffinePoly>,
}

/// A Gröbner basis of the ideal spanned by `gens`.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    gens: Vec<AffinePoly>,
    elems: Vec<Element>,
    reductions: usize,
}

fn lead(p: &AffinePoly) -> (Monomial, Q) {
    let (m, c) = p.leading_term().expect("nonzero polynomial");
    (m.clone(), c.clone())
}

fn monic(e: Element) -> Element {
    let (_, lc) = lead(&e.poly);
    if lc.is_one() {
        return e;
    }
    let inv = Q::one() / lc;
    Element { poly: e.poly.scale(&inv), cof: e.cof.iter().map(|c| c.scale(&inv)).collect() }
}

impl GroebnerBasis {
    pub fn new(gens: &[AffinePoly], budget: usize) -> Result<Self, IdealError> {
        let vars = gens.first().ok_or(IdealError::NoGenerators)?.vars();
        if gens.iter().any(|g| g.is_zero()) {
            return Err(IdealError::ZeroGenerator);
        }
        let k = gens.len();
        let unit = |j: usize| -> Vec<AffinePoly> {
            (0..k).map(|i| if i == j { AffinePoly::one(vars) } else { AffinePoly::zero(vars) }).collect()
        };
        let mut basis = GroebnerBasis { gens: gens.to_vec(), elems: Vec::new(), reductions: 0 };
        for (j, g) in gens.iter().enumerate() {
            basis.elems.push(monic(Element { poly: g.clone(), cof: unit(j) }));
        }
        let mut pairs: Vec<(usize, usize)> =
            (0..basis.elems.len()).flat_map(|i| (0..i).map(move |j| (j, i))).collect();
        while let Some((i, j)) = pairs.pop() {
            let (mi, _) = lead(&basis.elems[i].poly);
            let (mj, _) = lead(&basis.elems[j].poly);
            let l = mi.lcm(&mj);
            // coprime leading monomials reduce to zero
            if l == mi.mul(&mj) {
                continue;
            }
            basis.reductions += 1;
            if basis.reductions > budget {
                return Err(IdealError::BasisBudgetExceeded { budget });
            }
            let ti = mi.quotient_of(&l).expect("lcm is a multiple");
            let tj = mj.quotient_of(&l).expect("lcm is a multiple");
            let (a, b) = (&basis.elems[i], &basis.elems[j]);
            let s = Element {
                poly: &a.poly.mul_term(&ti, &Q::one()) - &b.poly.mul_term(&tj, &Q::one()),
                cof: a
                    .cof
                    .iter()
                    .zip(&b.cof)
                    .map(|(x, y)| &x.mul_term(&ti, &Q::one()) - &y.mul_term(&tj, &Q::one()))
                    .collect(),
            };
            let r = basis.reduce_element(s);
            if !r.poly.is_zero() {
                let n = basis.elems.len();
                basis.elems.push(monic(r));
                pairs.extend((0..n).map(|m| (m, n)));
            }
        }
        Ok(basis)
    }

    /// Full reduction; the remainder keeps its expression in the generators.
    fn reduce_element(&self, e: Element) -> Element {
        let vars = e.poly.vars();
        let mut p = e.poly;
        let mut cof = e.cof;
        let mut rem = AffinePoly::zero(vars);
        while let Some((m, c)) = p.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
            let hit = self.elems.iter().find_map(|b| {
                let (lm, _) = lead(&b.poly);
                lm.quotient_of(&m).map(|q| (b, q))
            });
            match hit {
                Some((b, q)) => {
                    p = &p - &b.poly.mul_term(&q, &c);
                    for (x, y) in cof.iter_mut().zip(&b.cof) {
                        *x = &*x - &y.mul_term(&q, &c);
                    }
                }
                None => {
                    let t = AffinePoly::term(vars, m, c);
                    p = &p - &t;
                    rem = &rem + &t;
                }
            }
        }
        Element { poly: rem, cof }
    }

    /// Remainder of `p` and cofactors with p − remainder = Σ cof[j]·gens[j].
    pub fn reduce(&self, p: &AffinePoly) -> (AffinePoly, Vec<AffinePoly>) {
        let vars = p.vars();
        let zero = vec![AffinePoly::zero(vars); self.gens.len()];
        let r = self.reduce_element(Element { poly: p.clone(), cof: zero });
        // reduce_element tracks −(subtracted part)
        (r.poly, r.cof.iter().map(|c| c.neg()).collect())
    }

    pub fn generators(&self) -> &[AffinePoly] {
        &self.gens
    }

    pub fn basis(&self) -> Vec<AffinePoly> {
        self.elems.iter().map(|e| e.poly.clone()).collect()
    }

    pub fn reductions(&self) -> usize {
        self.reductions
    }
}

/// Σ cof[j]·gens[j].
pub fn combine(cof: &[AffinePoly], gens: &[AffinePoly]) -> AffinePoly {
    let vars = gens[0].vars();
    cof.iter().zip(gens).fold(AffinePoly::zero(vars), |acc, (c, g)| &acc + &(c * g))
}
