//! Seeded random generators shared by the integration tests.
#![allow(dead_code)]

use mcgauge::exactpoly::{ratio, scalar, Exponents, Monomial, OddSet, Scalar, SpaceModel, SuperPoly};
use mcgauge::glagroup::{exp_ad, GaugeElement};
use mcgauge::multivec::{lie_poisson, LieAlgebraData, MultiVec};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn space(p: usize, q: usize) -> SpaceModel {
    SpaceModel::new(p, q).unwrap()
}

pub fn term(s: SpaceModel, c: i64, exps: &[u32], odd: &[usize]) -> SuperPoly {
    SuperPoly::term(s, scalar(c), exps, odd).unwrap()
}

pub fn mv(s: SpaceModel, terms: &[(i64, &[u32], &[usize])], jet: u32) -> MultiVec {
    let mut body = SuperPoly::zero(s);
    for (c, e, o) in terms {
        body = &body + &term(s, *c, e, o);
    }
    let d = body.odd_degree().unwrap_or(0);
    MultiVec::new(body, d, jet).unwrap()
}

/// Coefficient in {-3..3}/{1,2}.
pub fn coefficient(r: &mut ChaCha8Rng) -> Scalar {
    ratio(r.gen_range(-3..=3), r.gen_range(1..=2))
}

/// A space with `1 <= q` and `p + q <= 3`.
pub fn small_space(r: &mut ChaCha8Rng) -> SpaceModel {
    let total = r.gen_range(1..=3);
    let q = r.gen_range(1..=total);
    space(total - q, q)
}

fn random_exponents(r: &mut ChaCha8Rng, s: SpaceModel, y_degree: u32, max_x: u32) -> Exponents {
    let mut exps: Exponents = std::iter::repeat_n(0, s.dim()).collect();
    let x_degree = if s.tangent() == 0 { 0 } else { r.gen_range(0..=max_x) };
    for _ in 0..x_degree {
        exps[r.gen_range(0..s.tangent())] += 1;
    }
    for _ in 0..y_degree {
        exps[s.tangent() + r.gen_range(0..s.normal())] += 1;
    }
    exps
}

/// Homogeneous tangent multivector of degree `degree` with terms of normal
/// degree in `min_y..=jet`.
pub fn tangent_multivec(r: &mut ChaCha8Rng, s: SpaceModel, degree: usize, jet: u32, min_y: u32, terms: usize) -> MultiVec {
    let sets = OddSet::subsets(s.dim(), degree);
    let mut body = SuperPoly::zero(s);
    if sets.is_empty() || min_y > jet {
        return MultiVec::new(body, degree, jet).unwrap();
    }
    for _ in 0..terms {
        let y = r.gen_range(min_y..=jet);
        let odd = if y == 0 {
            let tangent: Vec<OddSet> = sets.iter().copied().filter(|o| o.iter().all(|i| i < s.tangent())).collect();
            match tangent.choose(r) {
                Some(o) => *o,
                None => continue,
            }
        } else {
            *sets.choose(r).unwrap()
        };
        body.add_term(Monomial { exps: random_exponents(r, s, y, 2), odd }, coefficient(r));
    }
    MultiVec::new(body, degree, jet).unwrap()
}

/// Random gauge element: a vector field with every term of normal degree >= 2.
pub fn gauge(r: &mut ChaCha8Rng, s: SpaceModel, jet: u32, terms: usize) -> GaugeElement {
    GaugeElement::new(tangent_multivec(r, s, 1, jet, 2.min(jet + 1), terms)).unwrap()
}

/// A point-leaf MC element: a linear Lie–Poisson structure moved by a random gauge.
pub fn mc_sample(r: &mut ChaCha8Rng, jet: u32) -> MultiVec {
    let algebras = [LieAlgebraData::so3(), LieAlgebraData::sl2(), LieAlgebraData::abelian(2), heisenberg()];
    let g = algebras.choose(r).unwrap();
    let gamma = lie_poisson(g, jet);
    let x = gauge(r, gamma.space(), jet, 3);
    exp_ad(&x, &gamma).unwrap()
}

/// `[e0, e1] = e2`.
pub fn heisenberg() -> LieAlgebraData {
    LieAlgebraData::from_brackets(3, [(0, 1, 2, scalar(1))]).unwrap()
}

/// The first-order R³ structure `{x,y} = z`, `{x,z} = xz`, at jet order `jet`.
pub fn r3_first_order(jet: u32) -> MultiVec {
    let s = space(2, 1);
    mv(s, &[(1, &[0, 0, 1], &[0, 1]), (1, &[1, 0, 1], &[0, 2])], jet)
}

pub fn graded_sign(a: &MultiVec, b: &MultiVec) -> Scalar {
    if (a.gla_degree() * b.gla_degree()).rem_euclid(2) == 1 {
        scalar(-1)
    } else {
        scalar(1)
    }
}
