use num_complex::Complex64;
use num_traits::{One, Zero};
use proptest::prelude::*;

use trimult::derivation::{apply_D, rankin_bracket, Derivation, DerivationKind};
use trimult::ideals::{certify_stable, degenerate_ideal, membership, Verdict, DEFAULT_BUDGET};
use trimult::multiplicity::{log_dist_hypersurface, ord_at_generic, ord_at_zero, DistPoint, MultiplicityError};
use trimult::params::{enumerate_valid, TriangleParams};
use trimult::rational::{denom_u64, rat, Q};
use trimult::ring::{resultant, resultant_with_cofactors, AffinePoly, HomogPoly, Monomial, UniPoly, VarSet, Y0, Y1, Y2, Y3};
use trimult::series::Puiseux;

fn valid() -> Vec<TriangleParams> {
    enumerate_valid(20)
}

fn small_ram() -> Vec<TriangleParams> {
    valid().into_iter().filter(|p| p.derived_constants().ram <= 12).collect()
}

fn var(i: usize) -> AffinePoly {
    AffinePoly::var(VarSet::Affine, i)
}

fn poly_from(terms: &[([u32; 5], i64)]) -> AffinePoly {
    let mut p = AffinePoly::zero(VarSet::Affine);
    for (e, c) in terms {
        p.add_term(Monomial::new(e.to_vec()), &rat(*c, 1));
    }
    p
}

fn arb_poly(max_deg: u32) -> impl Strategy<Value = AffinePoly> {
    prop::collection::vec((prop::array::uniform5(0..=max_deg), -5i64..=5), 0..5).prop_map(|t| poly_from(&t))
}

/// Isobaric in y0, y1, y2 of the given weight, with τ and q factors.
fn arb_isobaric(weight: u32) -> impl Strategy<Value = AffinePoly> {
    prop::collection::vec((0..=1u32, 0..=1u32, 0..=weight, 0..=weight, -4i64..=4), 1..4).prop_map(move |t| {
        let mut p = AffinePoly::zero(VarSet::Affine);
        for (et, eq, e0, e1, c) in t {
            let e0 = e0.min(weight);
            let e1 = e1.min(weight - e0);
            p.add_term(Monomial::new(vec![et, eq, e0, e1, weight - e0 - e1]), &rat(c, 1));
        }
        p
    })
}

/// Isobaric in y0, y1, y2 alone, the domain of the bracket.
fn arb_iso_r(weight: u32) -> impl Strategy<Value = AffinePoly> {
    arb_isobaric(weight).prop_map(|p| p.substitute(&[(0, AffinePoly::one(VarSet::Affine)), (1, AffinePoly::one(VarSet::Affine))]).unwrap())
}

fn arb_params() -> impl Strategy<Value = TriangleParams> {
    let all = valid();
    (0..all.len()).prop_map(move |i| all[i].clone())
}

// parameter invariants

#[test]
fn b_plus_c_closed_form() {
    for p in valid() {
        let k = p.derived_constants();
        let s = p.alpha() + p.beta();
        let g = p.gamma();
        let want = Q::one() - &s * &s + g * (rat(2, 1) * &s - g);
        assert_eq!(&k.b + &k.c, want, "{p}");
    }
}

#[test]
fn ram_covers_exponent_denominators() {
    for p in valid() {
        let ram = p.derived_constants().ram;
        let (a, b, g) = (p.alpha(), p.beta(), p.gamma());
        for q in [a.clone(), b.clone(), g.clone(), g - Q::one(), a + b - g, b - a] {
            assert_eq!(ram % denom_u64(&q), 0, "{p}: {q}");
        }
    }
}

#[test]
fn eta_factors_in_closed_form() {
    for p in valid() {
        let (al, be, ga) = (p.alpha(), p.beta(), p.gamma());
        let s = al + be;
        let d = be - al;
        let one = Q::one();
        let k = p.derived_constants();
        let f = p.eta_factors();
        assert_eq!(f[0], &one - &d * &d);
        assert_eq!(f[1], ga * (rat(2, 1) - ga));
        assert_eq!(f[2], &one - &s * &s + ga * (rat(2, 1) * &s - ga));
        assert_eq!(f[3], &k.a * &k.b + &k.b * &k.c + &k.a * &k.c);
        let eta = &f[0] * &f[1] * &f[2] * &f[3];
        assert_eq!(p.eta(), eta);
    }
}

// ring

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn ring_axioms(a in arb_poly(2), b in arb_poly(2), c in arb_poly(2)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn weight_is_additive(p in arb_isobaric(2), q in arb_isobaric(3)) {
        let pq = &p * &q;
        prop_assume!(!p.is_zero() && !q.is_zero());
        prop_assert_eq!(pq.weight().unwrap(), p.weight().unwrap() + q.weight().unwrap());
    }

    #[test]
    fn weight_homogenization_round_trip(p in arb_iso_r(2), q in arb_iso_r(1)) {
        let f = &p + &q;
        prop_assume!(!f.is_zero());
        let lift = f.homogenize_weight().unwrap();
        prop_assert!(lift.is_isobaric());
        let one = AffinePoly::one(VarSet::Extended);
        let back = lift.substitute(&[(Y3, one)]).unwrap();
        prop_assert_eq!(back, f.embed(VarSet::Extended, &[0, 1, 2, 3, 4]));
    }

    #[test]
    fn resultant_is_in_the_ideal(p in arb_poly(2), q in arb_poly(2), v in 2usize..5) {
        prop_assume!(p.partial_degree(v) > 0 && q.partial_degree(v) > 0);
        let (r, a, b) = resultant_with_cofactors(&p, &q, v).unwrap();
        prop_assert_eq!(&r, &(&(&a * &p) + &(&b * &q)));
        prop_assert_eq!(r, resultant(&p, &q, v).unwrap());
    }
}

// derivation

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn leibniz(p in arb_poly(2), q in arb_poly(2), t in arb_params()) {
        let lhs = apply_D(&(&p * &q), &t).unwrap();
        let rhs = &(&apply_D(&p, &t).unwrap() * &q) + &(&p * &apply_D(&q, &t).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn weight_and_degree_ledgers(x in arb_isobaric(2), t in arb_params()) {
        prop_assume!(!x.is_zero());
        let dx = apply_D(&x, &t).unwrap();
        if !dx.is_zero() {
            prop_assert_eq!(dx.weight().unwrap(), x.weight().unwrap() + 1);
        }
        prop_assert!(dx.partial_degree(0) <= x.partial_degree(0));
        prop_assert!(dx.partial_degree(1) <= x.partial_degree(1));
    }

    #[test]
    fn bracket_laws(x in arb_iso_r(1), y in arb_iso_r(2), y2 in arb_iso_r(2), p in arb_iso_r(1), t in arb_params()) {
        let d = Derivation::new(DerivationKind::D, &t);
        let br = |u: &AffinePoly, v: &AffinePoly| rankin_bracket(u, v, &d).unwrap();
        let xy = &x * &y;
        if !xy.is_zero() && !x.is_zero() && !y.is_zero() {
            prop_assert_eq!(br(&xy, &p), &(&br(&x, &p) * &y) + &(&x * &br(&y, &p)));
        }
        let s = &y + &y2;
        if !s.is_zero() && !y.is_zero() && !y2.is_zero() {
            prop_assert_eq!(br(&s, &p), &br(&y, &p) + &br(&y2, &p));
        }
    }

    #[test]
    fn bracket_closure_on_stable_ideals(c in arb_iso_r(1), p in arb_iso_r(2), i in 0usize..3, t in arb_params()) {
        let gen = [&var(Y0) - &var(Y1), &var(Y0) - &var(Y2), &var(Y1) - &var(Y2)][i].clone();
        let x = &c * &gen;
        prop_assume!(!x.is_zero());
        let d = Derivation::new(DerivationKind::D, &t);
        let b = rankin_bracket(&x, &p, &d).unwrap();
        prop_assert!(b.div_exact(&gen).is_some() || b.is_zero());
    }
}

#[test]
fn stability_witnesses() {
    for t in valid().iter().step_by(7) {
        for g in [var(1), &var(Y0) - &var(Y1), &var(Y0) - &var(Y2), &var(Y1) - &var(Y2)] {
            let dg = apply_D(&g, t).unwrap();
            assert!(dg.div_exact(&g).is_some(), "{g} at {t}");
        }
    }
}

#[test]
fn degenerate_ideal_is_stable_and_contains_differences() {
    let gens = degenerate_ideal();
    for t in valid().iter().step_by(11) {
        let cert = certify_stable(&gens, t, 3, DEFAULT_BUDGET).unwrap();
        assert_eq!(cert.verdict, Verdict::Stable);
        assert!(cert.recheck(t).unwrap());
    }
    for d in [&var(Y0) - &var(Y1), &var(Y0) - &var(Y2)] {
        assert!(membership(&d, &gens, DEFAULT_BUDGET).unwrap().member);
    }
}

// series

fn arb_series() -> impl Strategy<Value = Puiseux<Q>> {
    (1u64..=4, -3i64..3, prop::collection::vec(-4i64..=4, 1..8), 0i64..4).prop_map(|(ram, off, cs, extra)| {
        let mut cs: Vec<Q> = cs.into_iter().map(|c| rat(c, 1)).collect();
        if cs[0].is_zero() {
            cs[0] = Q::one();
        }
        let prec = off + cs.len() as i64 + extra;
        Puiseux::new(ram, off, cs, prec)
    })
}

/// Quadratic-time product on a common ramification, known to the smaller
/// relative precision.
fn convolve(f: &Puiseux<Q>, g: &Puiseux<Q>) -> Vec<(Q, Q)> {
    let (vf, vg) = (f.valuation().unwrap(), g.valuation().unwrap());
    let rel = (f.prec() - vf).min(g.prec() - vg);
    let r = f.ram() as i64;
    let mut out = Vec::new();
    for n in 0..rel {
        let mut acc = Q::zero();
        for k in 0..=n {
            acc += f.coeff_at(vf + k).unwrap() * g.coeff_at(vg + n - k).unwrap();
        }
        if !acc.is_zero() {
            out.push((Q::new((vf + vg + n).into(), r.into()), acc));
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn ord_and_leading_coefficient_multiply(f in arb_series(), g in arb_series()) {
        let fg = f.mul(&g);
        prop_assert_eq!(fg.ord().unwrap(), f.ord().unwrap() + g.ord().unwrap());
        prop_assert_eq!(fg.leading_coeff().unwrap(), f.leading_coeff().unwrap() * g.leading_coeff().unwrap());
    }

    #[test]
    fn inverse_times_self_is_one(f in arb_series()) {
        let one = f.inverse().unwrap().mul(&f);
        prop_assert_eq!(one.ord().unwrap(), Q::zero());
        prop_assert_eq!(one.leading_coeff().unwrap(), Q::one());
        prop_assert_eq!(one.nonzero_terms().len(), 1);
    }

    #[test]
    fn derivative_lowers_ord(f in arb_series()) {
        let e = f.ord().unwrap();
        prop_assume!(!e.is_zero());
        prop_assert_eq!(f.derivative().ord().unwrap(), e - Q::one());
    }

    #[test]
    fn product_matches_convolution(f in arb_series(), g0 in arb_series()) {
        let g = Puiseux::new(f.ram(), g0.offset(), g0.coeffs().to_vec(), g0.prec());
        let got: Vec<(Q, Q)> = f.mul(&g).nonzero_terms();
        prop_assert_eq!(got, convolve(&f, &g));
    }
}

// multiplicity

#[test]
fn ord_is_additive_and_lives_on_the_lattice() {
    for t in small_ram().into_iter().take(4) {
        let ram = t.derived_constants().ram;
        let polys = [var(0), &var(Y0) - &var(Y1), &var(Y1) - &var(Y2), &(&var(Y0) * &var(Y1)) - &var(1), &var(Y2) + &var(0)];
        let ords: Vec<Q> = polys.iter().map(|p| ord_at_zero(p, &t, 12).unwrap().value).collect();
        for o in &ords {
            assert_eq!(ram % denom_u64(o), 0, "{o} at {t}");
        }
        for i in 0..polys.len() {
            for j in 0..polys.len() {
                let pq = &polys[i] * &polys[j];
                assert_eq!(ord_at_zero(&pq, &t, 12).unwrap().value, &ords[i] + &ords[j], "{} * {}", polys[i], polys[j]);
            }
        }
    }
}

#[test]
fn generic_ords_are_nonnegative_integers() {
    let t = TriangleParams::new(rat(1, 5), rat(1, 4), rat(1, 2)).unwrap();
    let z0 = Complex64::new(0.3, 0.2);
    let c = |p: &AffinePoly| p.map_coeffs(|q| Complex64::new(trimult::rational::to_f64(q), 0.0));
    for p in [var(0), &var(Y0) - &var(Y1), (&var(Y0) - &var(Y1)).pow(2), var(Y2)] {
        let o = ord_at_generic(&c(&p), &t, z0, 16).unwrap().value;
        assert!(o >= Q::zero() && o.is_integer(), "{p}: {o}");
    }
}

#[test]
fn neg_log_dist_is_a_nonnegative_lattice_point() {
    let x = |i| HomogPoly::var(VarSet::Projective, i);
    let tx = HomogPoly::term(VarSet::Projective, Monomial::new(vec![1, 0, 0, 0, 0]), UniPoly::t());
    for t in small_ram().into_iter().take(3) {
        let ram = t.derived_constants().ram;
        for u in [x(0), x(1), &x(2) - &x(3), &(&x(2) * &x(4)) - &(&x(0) * &x(1)), &tx + &x(3)] {
            let d = log_dist_hypersurface(&u, DistPoint::Zero, &t, 12).unwrap().value;
            assert!(d >= Q::zero() && ram % denom_u64(&d) == 0, "{u} at {t}: {d}");
        }
    }
}

#[test]
fn zero_polynomial_is_rejected() {
    let t = TriangleParams::new(rat(1, 5), rat(1, 4), rat(1, 2)).unwrap();
    let zero = AffinePoly::zero(VarSet::Affine);
    assert!(matches!(ord_at_zero(&zero, &t, 8), Err(MultiplicityError::ZeroPolynomial)));
}
