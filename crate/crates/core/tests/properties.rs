use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;

use wavefront_core::coeff::rat_int;
use wavefront_core::dense::Dense;
use wavefront_core::modular::{resultant_modular, ModularOptions, Strategy as ModStrategy};
use wavefront_core::mpoly::vars_from;
use wavefront_core::parse::parse_q;
use wavefront_core::resultant::{resultant_algo, subresultant_chain, Algorithm};
use wavefront_core::{Monomial, QPoly, QUPoly, Rational, Vars};

fn xyz() -> Vars {
    vars_from(&["x", "y", "z"])
}

fn poly_in(vars: Vars, terms: Vec<(Vec<u16>, i64)>) -> QPoly {
    let n = vars.len();
    let terms = terms
        .into_iter()
        .map(|(e, c)| {
            let mut m = Monomial::one(n);
            for (i, k) in e.into_iter().enumerate().take(n) {
                m.0[i] = k;
            }
            (m, rat_int(c))
        })
        .collect();
    QPoly::from_terms(vars, terms)
}

fn arb_poly(nvars: usize, max_terms: usize, max_exp: u16) -> impl Strategy<Value = Vec<(Vec<u16>, i64)>> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, nvars), -9i64..=9), 0..=max_terms)
}

fn arb_xyz() -> impl Strategy<Value = QPoly> {
    arb_poly(3, 5, 3).prop_map(|t| poly_in(xyz(), t))
}

/// Coefficients in `v` over parameters `(x, y)`; the top one is made nonzero
/// unless `declared_zero_lc`.
fn arb_upoly(max_deg: usize) -> impl Strategy<Value = QUPoly> {
    (1..=max_deg)
        .prop_flat_map(|d| prop::collection::vec(arb_poly(2, 3, 2), d + 1))
        .prop_map(|cs| {
            let params = vars_from(&["x", "y"]);
            let mut coeffs: Vec<QPoly> = cs.into_iter().map(|t| poly_in(params.clone(), t)).collect();
            let last = coeffs.last_mut().unwrap();
            if last.is_zero() {
                *last = QPoly::from_i64(params.clone(), 1);
            }
            QUPoly::new("v", params, coeffs).unwrap()
        })
}

fn scalar_upoly(cs: &[i64]) -> QUPoly {
    let none = vars_from::<&str>(&[]);
    QUPoly::new("v", none.clone(), cs.iter().map(|&c| QPoly::from_i64(none.clone(), c)).collect()).unwrap()
}

fn scalar_value(p: &QPoly) -> Rational {
    p.constant_value().unwrap_or_else(Rational::zero)
}

fn arb_dense(min_deg: usize, max_deg: usize) -> impl Strategy<Value = Vec<i64>> {
    (min_deg..=max_deg).prop_flat_map(|d| {
        (prop::collection::vec(-9i64..=9, d), prop_oneof![1i64..=9, -9i64..=-1]).prop_map(|(mut v, lc)| {
            v.push(lc);
            v
        })
    })
}

/// All complex roots by Durand-Kerner iteration.
fn roots(c: &[f64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    let lc = c[n];
    let monic: Vec<f64> = c.iter().map(|x| x / lc).collect();
    let eval = |z: Complex64| monic.iter().rev().fold(Complex64::zero(), |acc, &a| acc * z + a);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n).map(|i| seed.powu(i as u32)).collect();
    for _ in 0..2000 {
        let mut delta: f64 = 0.0;
        for i in 0..n {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            let step = eval(z[i]) / den;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    z
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms(a in arb_xyz(), b in arb_xyz(), c in arb_xyz()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        prop_assert_eq!(a.add(&QPoly::zero(xyz())), a.clone());
        prop_assert_eq!(a.mul(&QPoly::one(xyz())), a.clone());
        if !b.is_zero() {
            prop_assert_eq!(a.mul(&b).exact_div(&b).unwrap(), a.clone());
        }
    }

    #[test]
    fn text_round_trip(a in arb_xyz()) {
        prop_assert_eq!(parse_q(&a.to_string(), &xyz()).unwrap(), a);
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in arb_xyz(), b in arb_xyz(), p in prop::collection::vec(-5i64..=5, 3)) {
        let pt: Vec<Rational> = p.into_iter().map(rat_int).collect();
        let (ea, eb) = (a.eval(&pt).unwrap(), b.eval(&pt).unwrap());
        prop_assert_eq!(a.mul(&b).eval(&pt).unwrap(), &ea * &eb);
        prop_assert_eq!(a.add(&b).eval(&pt).unwrap(), ea + eb);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    /// Res(a, b) = lc(a)^deg b * prod b(alpha) over the roots of a.
    #[test]
    fn resultant_matches_root_product(a in arb_dense(1, 5), b in arb_dense(1, 5)) {
        let exact = scalar_value(&resultant_algo(&scalar_upoly(&a), &scalar_upoly(&b), Algorithm::Auto).unwrap());
        let af: Vec<f64> = a.iter().map(|&x| x as f64).collect();
        let bf: Vec<f64> = b.iter().map(|&x| x as f64).collect();
        let m = b.len() - 1;
        let lc = af[af.len() - 1];
        let mut prod = Complex64::new(lc.powi(m as i32), 0.0);
        let mut scale = lc.abs().powi(m as i32);
        for z in roots(&af) {
            prod *= bf.iter().rev().fold(Complex64::zero(), |acc, &c| acc * z + c);
            scale *= bf.iter().rev().fold(0.0, |acc, &c| acc * z.norm() + c.abs());
        }
        let exact = exact.to_f64().unwrap();
        let err = (prod.re - exact).abs() / scale.max(1.0);
        prop_assert!(err < 1e-6, "exact {} numeric {} scale {}", exact, prod, scale);
        prop_assert!(prod.im.abs() / scale.max(1.0) < 1e-6);
    }

    /// The first nonzero subresultant sits at the degree of the gcd.
    #[test]
    fn subresultants_detect_planted_gcd(g in arb_dense(1, 3), a1 in arb_dense(1, 3), b1 in arb_dense(1, 3)) {
        let to_dense = |v: &[i64]| Dense::from_i64(v);
        let a = to_dense(&g).mul(&to_dense(&a1));
        let b = to_dense(&g).mul(&to_dense(&b1));
        let d = a.gcd(&b).unwrap().degree().unwrap();
        prop_assert!(d >= g.len() - 1);
        let ints = |p: &Dense| -> Vec<i64> { p.coeffs().iter().map(|c| c.to_integer().to_i64().unwrap()).collect() };
        let chain = subresultant_chain(&scalar_upoly(&ints(&a)), &scalar_upoly(&ints(&b))).unwrap();
        let first = chain.iter().position(|s| !s.is_zero()).unwrap();
        prop_assert_eq!(first, d);
    }

    #[test]
    fn modular_matches_direct(a in arb_upoly(4), b in arb_upoly(4)) {
        let direct = resultant_algo(&a, &b, Algorithm::Bareiss).unwrap();
        prop_assert_eq!(resultant_algo(&a, &b, Algorithm::Prs).unwrap(), direct.clone());
        for s in [ModStrategy::Hybrid, ModStrategy::CrtPrimes] {
            let o = ModularOptions::default().with_strategy(s);
            prop_assert_eq!(resultant_modular(&a, &b, &o).unwrap(), direct.clone());
        }
    }

    /// Declared degrees above the actual ones: the reduction used by the
    /// subresultant route agrees with the full Sylvester determinant, and both
    /// commute with specialization.
    #[test]
    fn vanishing_leading_coefficients(a in arb_upoly(3), b in arb_upoly(3), pad_a in 0usize..2, pad_b in 0usize..2,
                                      pt in prop::collection::vec(-3i64..=3, 2)) {
        let pad = |u: &QUPoly, k: usize| {
            let mut cs = u.coeffs().to_vec();
            for _ in 0..k {
                cs.push(QPoly::zero(u.params().clone()));
            }
            QUPoly::new("v", u.params().clone(), cs).unwrap()
        };
        let (a, b) = (pad(&a, pad_a), pad(&b, pad_b));
        let full = resultant_algo(&a, &b, Algorithm::Bareiss).unwrap();
        prop_assert_eq!(resultant_algo(&a, &b, Algorithm::Prs).unwrap(), full.clone());
        let point: Vec<Rational> = pt.into_iter().map(rat_int).collect();
        let spec = |u: &QUPoly| {
            let none = vars_from::<&str>(&[]);
            let cs = u.coeffs().iter().map(|c| QPoly::constant(none.clone(), c.eval(&point).unwrap())).collect();
            QUPoly::new("v", none, cs).unwrap()
        };
        let (sa, sb) = (spec(&a), spec(&b));
        if sa.is_zero() && sb.is_zero() {
            prop_assert!(resultant_algo(&sa, &sb, Algorithm::Bareiss).is_err());
            prop_assert!(full.eval(&point).unwrap().is_zero());
        } else {
            let at = resultant_algo(&sa, &sb, Algorithm::Bareiss).unwrap();
            prop_assert_eq!(scalar_value(&at), full.eval(&point).unwrap());
        }
    }
}
