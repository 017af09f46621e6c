use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wavefront_core::certificates::{
    irreducible_certificate, pair_at, replay, specialize_poly, squarefree_certificate, upoly_modp, verify_suite,
    Certificate, Suite, Verdict,
};
use wavefront_core::coeff::rational_mod;
use wavefront_core::dense::modp_resultant;
use wavefront_core::discriminant::{build_theta, char_system, theta_from_system, ThetaOptions};
use wavefront_core::mpoly::vars_from;
use wavefront_core::parse::parse_q;
use wavefront_core::{QPoly, Rational, SingularityType};

/// `R(xi)` and `S(xi)` by specializing first agree with the full `R`, `S`.
fn dual_route(t: SingularityType, assign: &[(&str, i64)]) {
    let cs = char_system(t).unwrap();
    let full = theta_from_system(&cs, &ThetaOptions::for_type(t).with_psc(true)).unwrap();
    let (r, s) = pair_at(&cs, assign).unwrap();
    assert_eq!(specialize_poly(&full.res, assign).unwrap(), r, "{t} R");
    assert_eq!(specialize_poly(full.psc.as_ref().unwrap(), assign).unwrap(), s, "{t} S");
}

#[test]
fn specialized_pairs_match_full_resultants() {
    dual_route(SingularityType::E6, &[("x1", 0), ("x2", 0), ("x3", 0), ("x4", 1), ("x5", 1)]);
    dual_route(SingularityType::E7, &[("x1", 1), ("x2", 1), ("x3", 0), ("x4", 1), ("x5", 1), ("x6", 1)]);
    dual_route(SingularityType::E6, &[("x1", 2), ("x2", -1), ("x3", 3), ("x4", 0), ("x5", -2)]);
}

#[test]
fn replay_is_deterministic() {
    for t in [SingularityType::E6, SingularityType::D(5, wavefront_core::Sign::Minus), SingularityType::A(4)] {
        let first = verify_suite(t, Suite::All).unwrap();
        let second = verify_suite(t, Suite::All).unwrap();
        assert_eq!(first, second);
        for c in &first {
            assert_eq!(&Certificate::from_json(&c.to_json()).unwrap(), c);
        }
    }
    let modp = verify_suite(SingularityType::E6, Suite::Modp).unwrap();
    for c in &modp {
        assert_eq!(&replay(c).unwrap(), c);
    }
}

#[test]
fn modp_agrees_with_rational_reduction() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for k in 2..=5 {
        let t = SingularityType::A(k);
        let cs = char_system(t).unwrap();
        let theta = build_theta(t, &ThetaOptions::for_type(t)).unwrap().theta;
        for p in [5u64, 7, 101, 65521] {
            for _ in 0..10 {
                let pt: Vec<i64> = (0..k).map(|_| rng.gen_range(-20..=20)).collect();
                let a = upoly_modp(&cs.a, &pt, p).unwrap().unwrap();
                let b = upoly_modp(&cs.b, &pt, p).unwrap().unwrap();
                let res = modp_resultant(&a, a.len() - 1, &b, b.len() - 1, p);
                let q: Vec<Rational> = pt.iter().map(|&x| Rational::from_integer(x.into())).collect();
                assert_eq!(rational_mod(&theta.eval(&q).unwrap(), p), Some(res), "A{k} p={p} {pt:?}");
            }
        }
    }
}

fn random_factor(rng: &mut ChaCha8Rng) -> QPoly {
    let vars = vars_from(&["v", "x", "y"]);
    let deg = rng.gen_range(1..=3);
    let mut text = format!("{}*v^{deg}", rng.gen_range(1..=4));
    for _ in 0..4 {
        let (a, b, c) = (rng.gen_range(0..deg), rng.gen_range(0..=2), rng.gen_range(0..=2));
        text.push_str(&format!(" + {}*v^{a}*x^{b}*y^{c}", rng.gen_range(-5..=5)));
    }
    parse_q(&text, &vars).unwrap()
}

#[test]
fn planted_reducible_corpus_never_certifies() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for i in 0..20 {
        let f = random_factor(&mut rng).mul(&random_factor(&mut rng));
        let c = irreducible_certificate("planted", "corpus", &f, "v", 60, i).unwrap();
        assert_ne!(c.verdict, Verdict::Pass, "instance {i}: {f}");
    }
    for i in 0..10 {
        let g = random_factor(&mut rng);
        let f = g.mul(&g).mul(&random_factor(&mut rng));
        let c = squarefree_certificate("planted", "corpus", &f, "v", 60, i).unwrap();
        assert_ne!(c.verdict, Verdict::Pass, "instance {i}: {f}");
    }
}

#[test]
fn irreducible_inputs_usually_certify() {
    let vars = vars_from(&["v", "x", "y"]);
    for text in ["v^3 + x*v + y", "v^4 + x*v^2 + y*v + x*y + 1", "x*v^2 + y^2*v + x + 1"] {
        let f = parse_q(text, &vars).unwrap();
        let c = irreducible_certificate("known", "corpus", &f, "v", 200, 1).unwrap();
        assert_eq!(c.verdict, Verdict::Pass, "{text}: {c:?}");
    }
}
