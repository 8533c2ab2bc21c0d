mod common;

use common::*;
use mcgauge::exactpoly::{ratio, scalar};
use mcgauge::glagroup::{bch, exp_ad, GaugeElement};
use mcgauge::multivec::{MultiVec, Norm};
use proptest::prelude::*;
use rand::Rng;

fn triple(seed: u64) -> (MultiVec, MultiVec, MultiVec) {
    let mut r = rng(seed);
    let s = small_space(&mut r);
    let jet = r.gen_range(0..=4);
    let pick = |r: &mut rand_chacha::ChaCha8Rng| {
        let d = r.gen_range(0..=3.min(s.dim()));
        let min_y = r.gen_range(0..=1);
        tangent_multivec(r, s, d, jet, min_y, 3)
    };
    (pick(&mut r), pick(&mut r), pick(&mut r))
}

#[test]
fn graded_antisymmetry_and_jacobi() {
    for seed in 0..300 {
        let (a, b, c) = triple(seed);
        let ab = a.schouten(&b).unwrap();
        let ba = b.schouten(&a).unwrap();
        assert_eq!(ab, -&ba.scale(&graded_sign(&a, &b)), "antisymmetry, seed {seed}");

        // a bracket of two functions is zero; compare bodies so its nominal degree does not matter
        let lhs = a.schouten(&b.schouten(&c).unwrap()).unwrap().into_body();
        let rhs = ab.schouten(&c).unwrap().body() + b.schouten(&a.schouten(&c).unwrap()).unwrap().scale(&graded_sign(&a, &b)).body();
        assert_eq!(lhs, rhs, "jacobi, seed {seed}");
    }
}

#[test]
fn leibniz_rule() {
    for seed in 0..300 {
        let (a, b, c) = triple(seed + 10_000);
        if b.degree() + c.degree() > b.space().dim() {
            continue;
        }
        // [a, b∧c] = [a,b]∧c + (-1)^{(|a|-1)|b|} b∧[a,c]
        let sign = if (a.gla_degree() * b.degree() as i64).rem_euclid(2) == 1 { scalar(-1) } else { scalar(1) };
        let lhs = a.schouten(&b.wedge(&c).unwrap()).unwrap().into_body();
        let rhs = a.schouten(&b).unwrap().wedge(&c).unwrap().body()
            + b.wedge(&a.schouten(&c).unwrap()).unwrap().scale(&sign).body();
        assert_eq!(lhs, rhs, "leibniz, seed {seed}");
    }
}

#[test]
fn tangency_and_filtration_law() {
    for seed in 0..300 {
        let (a, b, _) = triple(seed + 20_000);
        let ab = a.schouten(&b).unwrap();
        assert!(ab.is_tangent(), "tangency, seed {seed}");
        if let (Some(k), Some(l)) = (a.filtration_info().level_index(), b.filtration_info().level_index()) {
            let level = ab.filtration_info().level_index().expect("bracket of F_0 elements lies in F_0");
            assert!(level >= k.saturating_add(l), "filtration, seed {seed}");
        }
    }
}

#[test]
fn norm_laws() {
    for seed in 0..300 {
        let (a, b, _) = triple(seed + 30_000);
        if a.degree() == b.degree() {
            assert!((&a + &b).norm() <= a.norm().max(b.norm()), "ultrametric, seed {seed}");
        }
        assert_eq!(a.scale(&ratio(-3, 2)).norm(), a.norm(), "scaling, seed {seed}");
        assert!(a.scale(&scalar(0)).norm().is_zero());
        assert!(a.schouten(&b).unwrap().norm() <= a.norm() * b.norm(), "submultiplicative, seed {seed}");
    }
}

#[test]
fn ad_preserves_norm_and_brackets() {
    for seed in 0..150 {
        let mut r = rng(seed + 40_000);
        let s = small_space(&mut r);
        let jet = r.gen_range(1..=4);
        let x = gauge(&mut r, s, jet, 3);
        let (du, dv) = (r.gen_range(0..=s.dim().min(2)), r.gen_range(0..=s.dim().min(2)));
        let u = tangent_multivec(&mut r, s, du, jet, 0, 3);
        let v = tangent_multivec(&mut r, s, dv, jet, 0, 3);
        let au = exp_ad(&x, &u).unwrap();
        assert_eq!(au.norm(), u.norm(), "norm preservation, seed {seed}");
        assert_eq!(au.degree(), u.degree());
        let lhs = exp_ad(&x, &u.schouten(&v).unwrap()).unwrap();
        let rhs = au.schouten(&exp_ad(&x, &v).unwrap()).unwrap();
        assert_eq!(lhs, rhs, "automorphism, seed {seed}");
        assert_eq!(exp_ad(&x.inverse(), &au).unwrap(), u, "inverse, seed {seed}");
    }
}

#[test]
fn bch_represents_composition() {
    for seed in 0..120 {
        let mut r = rng(seed + 50_000);
        let s = small_space(&mut r);
        let jet = r.gen_range(1..=5);
        let x = gauge(&mut r, s, jet, 3);
        let y = gauge(&mut r, s, jet, 3);
        let dw = r.gen_range(0..=s.dim().min(3));
        let w = tangent_multivec(&mut r, s, dw, jet, 0, 3);
        let xy = bch(&x, &y).unwrap();
        assert!(xy.norm() <= x.norm().max(y.norm()));
        assert_eq!(
            exp_ad(&xy, &w).unwrap(),
            exp_ad(&x, &exp_ad(&y, &w).unwrap()).unwrap(),
            "representation law, seed {seed}"
        );
    }
}

#[test]
fn bch_low_order_terms() {
    // Brackets of four letters from F_1 have normal degree >= 5, so at jet 4
    // the series stops after the cubic terms.
    for seed in 0..60 {
        let mut r = rng(seed + 60_000);
        let s = space(0, 2);
        let x = gauge(&mut r, s, 4, 3);
        let y = gauge(&mut r, s, 4, 3);
        let (xl, yl) = (x.log(), y.log());
        let xy = xl.schouten(yl).unwrap();
        let cubic = &xl.schouten(&xy).unwrap() - &yl.schouten(&xy).unwrap();
        let expected = &(&(xl + yl) + &xy.scale(&ratio(1, 2))) + &cubic.scale(&ratio(1, 12));
        assert_eq!(bch(&x, &y).unwrap().log(), &expected, "seed {seed}");

        let (x3, y3) = (GaugeElement::new(xl.with_jet_order(3)).unwrap(), GaugeElement::new(yl.with_jet_order(3)).unwrap());
        let quadratic = &(&x3.log().clone() + y3.log()) + &x3.log().schouten(y3.log()).unwrap().scale(&ratio(1, 2));
        assert_eq!(bch(&x3, &y3).unwrap().log(), &quadratic, "seed {seed}");
    }
}

#[test]
fn bch_is_continuous() {
    for seed in 0..60 {
        let mut r = rng(seed + 70_000);
        let s = small_space(&mut r);
        let jet = r.gen_range(2..=4);
        let x = gauge(&mut r, s, jet, 2);
        let y = gauge(&mut r, s, jet, 2);
        let x2 = GaugeElement::new(x.log() + gauge(&mut r, s, jet, 1).log()).unwrap();
        let y2 = GaugeElement::new(y.log() + gauge(&mut r, s, jet, 1).log()).unwrap();
        let lhs = (bch(&x, &y).unwrap().log() - bch(&x2, &y2).unwrap().log()).norm();
        let rhs = (x.log() - x2.log()).norm().max((y.log() - y2.log()).norm());
        assert!(lhs <= rhs, "seed {seed}");
    }
}

#[test]
fn gauge_orbits_stay_maurer_cartan() {
    for seed in 0..60 {
        let mut r = rng(seed + 80_000);
        let jet = r.gen_range(1..=4);
        let gamma = mc_sample(&mut r, jet);
        assert!(gamma.is_maurer_cartan(), "seed {seed}");
        let x = gauge(&mut r, gamma.space(), jet, 3);
        let moved = exp_ad(&x, &gamma).unwrap();
        assert!(moved.is_maurer_cartan(), "seed {seed}");
        // ‖e^X γ - γ + [γ, X]‖ <= ‖X‖²
        let defect = &(&moved - &gamma) + &gamma.schouten(x.log()).unwrap();
        assert!(defect.norm() <= x.norm() * x.norm(), "seed {seed}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exp_ad_of_zero_is_identity(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = small_space(&mut r);
        let w = tangent_multivec(&mut r, s, 1.min(s.dim()), 3, 0, 4);
        prop_assert_eq!(exp_ad(&GaugeElement::identity(s, 3), &w).unwrap(), w);
    }

    #[test]
    fn norm_is_dyadic_in_level(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = small_space(&mut r);
        let w = tangent_multivec(&mut r, s, 1.min(s.dim()), 4, 1, 3);
        let expected = match w.body().min_y_degree() {
            None => Norm::ZERO,
            Some(m) => Norm::dyadic(m - 1),
        };
        prop_assert_eq!(w.norm(), expected);
    }
}
