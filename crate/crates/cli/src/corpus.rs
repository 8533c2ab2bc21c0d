//! Bundled problem documents.
//!
//! The same documents are checked in under `crates/cli/corpus/`; a test keeps
//! the files and these builders in agreement.

use std::collections::BTreeMap;

use mcgauge::exactpoly::{scalar, SpaceModel, SuperPoly};
use mcgauge::glagroup::{exp_ad, GaugeElement};
use mcgauge::multivec::{lie_poisson, LieAlgebraData, MultiVec};

use crate::document::{lie_algebra_doc, multivec_to_terms, poly_to_terms, ProblemDocument, SpaceDoc};
use crate::Example;

pub const NAMES: [(&str, Example); 3] = [
    ("r3-nonextendable", Example::R3Nonextendable),
    ("so3-roundtrip", Example::So3Roundtrip),
    ("abelian-obstructed", Example::AbelianObstructed),
];

pub fn example(name: Example) -> ProblemDocument {
    match name {
        Example::R3Nonextendable => r3_nonextendable(),
        Example::So3Roundtrip => so3_roundtrip(),
        Example::AbelianObstructed => abelian_obstructed(),
    }
}

fn poly(space: SpaceModel, terms: &[(i64, &[u32], &[usize])]) -> SuperPoly {
    terms.iter().fold(SuperPoly::zero(space), |acc, (c, e, o)| {
        &acc + &SuperPoly::term(space, scalar(*c), e, o).expect("valid term")
    })
}

/// `{x,y} = z`, `{x,z} = xz` on R³ with `P = {z = 0}`, given to first order.
pub fn r3_nonextendable() -> ProblemDocument {
    let s = SpaceModel::new(2, 1).expect("valid space");
    let first = poly(s, &[(1, &[0, 0, 1], &[0, 1]), (1, &[1, 0, 1], &[0, 2])]);
    ProblemDocument {
        space: SpaceDoc { p: 2, q: 1 },
        jet_order: 1,
        x_cap: Some(4),
        multivectors: BTreeMap::from([("first_order".to_string(), poly_to_terms(&first))]),
        lie_algebra: None,
        levels: Some(vec![0]),
    }
}

/// so(3)* at the origin and its image under the gauge `y₁²ξ₂ − 2y₂y₃ξ₁`.
pub fn so3_roundtrip() -> ProblemDocument {
    let jet = 6;
    let g = LieAlgebraData::so3();
    let gamma = lie_poisson(&g, jet);
    let s = gamma.space();
    let v = poly(s, &[(1, &[2, 0, 0], &[1]), (-2, &[0, 1, 1], &[0])]);
    let x = GaugeElement::new(MultiVec::new(v, 1, jet).expect("vector field")).expect("level >= 1");
    let gamma_prime = exp_ad(&x, &gamma).expect("same space");
    ProblemDocument {
        space: SpaceDoc { p: 0, q: 3 },
        jet_order: jet,
        x_cap: None,
        multivectors: BTreeMap::from([
            ("gamma".to_string(), multivec_to_terms(&gamma)),
            ("gamma_prime".to_string(), multivec_to_terms(&gamma_prime)),
        ]),
        lie_algebra: Some(lie_algebra_doc(&g)),
        levels: Some(vec![1, 2, 3]),
    }
}

/// `γ = 0` against `γ' = y₁² ξ₁ ξ₂` on R² at a point.
pub fn abelian_obstructed() -> ProblemDocument {
    let s = SpaceModel::new(0, 2).expect("valid space");
    let gamma_prime = poly(s, &[(1, &[2, 0], &[0, 1])]);
    ProblemDocument {
        space: SpaceDoc { p: 0, q: 2 },
        jet_order: 3,
        x_cap: None,
        multivectors: BTreeMap::from([
            ("gamma".to_string(), Vec::new()),
            ("gamma_prime".to_string(), poly_to_terms(&gamma_prime)),
        ]),
        lie_algebra: None,
        levels: Some(vec![1]),
    }
}
