//! Algebroid cochains with values in `S^k(TP°)` and the Koszul differential.
//!
//! A cochain is stored exactly like a multivector: the odd generator `ξ_a`
//! stands for the dual of the frame element `e_a`, and a normal monomial
//! `y^β` stands for the symmetric product `dy^β` in `S^k(TP°)`. With this
//! labelling the projection `τ` from a graded quotient to cochains is the
//! identity on monomials.
//!
//! `TP°` is an ideal of `A_P` on which the anchor vanishes, so the bracket
//! restricts to a representation `∇_α ν = [α, ν]`, extended to `S^k` as a
//! derivation.

use std::fmt;


use crate::exactpoly::{Monomial, OddSet, SuperPoly};
use crate::multivec::MultiVec;

use super::{assemble, CochainComplex, CohomologyError, RestrictedAlgebroid, XCap};

/// A homogeneous cochain of `A_P` with coefficients in `S^power(TP°)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    pub power: u32,
    pub degree: usize,
    pub body: SuperPoly,
}

impl fmt::Display for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[C^{}; S^{}] {}", self.degree, self.power, self.body)
    }
}

/// `τ`: the normal-degree-`power` part of `w`, read as a cochain. Fails if
/// `w` has a term of lower normal degree, i.e. does not lie in `F_(power-1)`.
pub fn tau_map(power: u32, w: &MultiVec) -> Result<Cochain, CohomologyError> {
    if let Some(found) = w.body().min_y_degree() {
        if found < power {
            return Err(CohomologyError::LevelTooLow { required: power, found });
        }
    }
    Ok(Cochain { power, degree: w.degree(), body: w.body().y_homogeneous_part(power) })
}

/// `ω(e_{a_1}, …, e_{a_d})` for frame indices in any order.
fn evaluate(omega: &SuperPoly, indices: &[usize]) -> SuperPoly {
    match OddSet::from_product(indices) {
        None => SuperPoly::zero(omega.space()),
        Some((set, negative)) => {
            let c = omega.odd_component(set);
            if negative {
                -&c
            } else {
                c
            }
        }
    }
}

/// `∇_{e_a} F` on an even coefficient `F(x, y)`.
fn connection(alg: &RestrictedAlgebroid, a: usize, f: &SuperPoly) -> SuperPoly {
    let space = alg.space();
    let p = space.tangent();
    let mut out = alg.apply_anchor(a, f);
    for j in p..space.dim() {
        let df = f.deriv_even(j).expect("index in range");
        if df.is_zero() {
            continue;
        }
        // [e_a, dy_j] = Σ_c Γ_{a j}^c dy_c
        let mut image = SuperPoly::zero(space);
        for c in p..space.dim() {
            let g = alg.bracket(a, j, c);
            if !g.is_zero() {
                image = &image + &(g * &SuperPoly::coordinate(space, c).expect("index in range"));
            }
        }
        out = &out + &(&df * &image);
    }
    out
}

/// Koszul differential of a homogeneous cochain `omega` of degree `degree`.
pub fn koszul_differential(alg: &RestrictedAlgebroid, omega: &SuperPoly, degree: usize) -> SuperPoly {
    let space = alg.space();
    let n = space.dim();
    let mut out = SuperPoly::zero(space);
    for set in OddSet::subsets(n, degree + 1) {
        let js = set.indices();
        let mut value = SuperPoly::zero(space);
        for i in 0..js.len() {
            let rest: Vec<usize> = js.iter().enumerate().filter(|&(t, _)| t != i).map(|(_, &v)| v).collect();
            let term = connection(alg, js[i], &evaluate(omega, &rest));
            value = if i % 2 == 0 { &value + &term } else { &value - &term };
        }
        for i in 0..js.len() {
            for l in i + 1..js.len() {
                let rest: Vec<usize> =
                    js.iter().enumerate().filter(|&(t, _)| t != i && t != l).map(|(_, &v)| v).collect();
                let mut term = SuperPoly::zero(space);
                for c in 0..n {
                    let g = alg.bracket(js[i], js[l], c);
                    if g.is_zero() {
                        continue;
                    }
                    let mut args = Vec::with_capacity(degree);
                    args.push(c);
                    args.extend_from_slice(&rest);
                    let w = evaluate(omega, &args);
                    if !w.is_zero() {
                        term = &term + &(g * &w);
                    }
                }
                value = if (i + l) % 2 == 0 { &value + &term } else { &value - &term };
            }
        }
        for (m, c) in value.terms() {
            out.add_term(Monomial { exps: m.exps.clone(), odd: set }, c.clone());
        }
    }
    out
}

/// The Chevalley–Eilenberg complex of `alg` with values in `S^power(TP°)`,
/// on the same monomial bases as [`super::quotient_complex`].
pub fn koszul_complex(alg: &RestrictedAlgebroid, power: u32, cap: XCap) -> Result<CochainComplex, CohomologyError> {
    assemble(alg.space(), power, cap, |w, d| Ok(koszul_differential(alg, w, d)))
}
