//! Formal multivector fields along `P = {y = 0}`.
//!
//! A [`MultiVec`] is a [`SuperPoly`] homogeneous of odd degree `d` (the
//! multivector degree), truncated at a jet order `N`: every term of normal
//! degree above `N` is discarded. With the shifted grading `d - 1` these form
//! the graded Lie algebra that the gauge machinery acts on.
//!
//! # Conventions
//!
//! All sign conventions of the crate are fixed here and nowhere else.
//!
//! * Schouten–Nijenhuis bracket, with left derivatives `∂/∂ξ_i`:
//!
//!   `[P, Q] = Σ_i (-1)^(d_P - 1) (∂P/∂ξ_i)(∂Q/∂u_i) - (∂P/∂u_i)(∂Q/∂ξ_i)`
//!
//!   where `u_i` runs over all coordinates. This is the canonical odd
//!   Poisson bracket with a right derivative on `P`. It restricts to the Lie
//!   bracket on vector fields, gives `[X, f] = X(f)`, and for a bivector
//!   `[π, φ](dψ) = π(dψ ∧ dφ)`.
//! * Pairing: `⟨ξ_{i_1}⋯ξ_{i_d}, df_1 ∧ ⋯ ∧ df_d⟩ = det(∂f_r/∂u_{i_s})`.
//! * Hamiltonian bracket `{f, g} = π(df ∧ dg)`, so a bivector term
//!   `c ξ_i ξ_j` with `i < j` contributes `{u_i, u_j} = c`.
//! * Anchor `π♯` by `β(π♯ α) = π(α ∧ β)`.
//!
//! With these choices `[π, π]` paired with `df ∧ dg ∧ dh` equals
//! `2·({f,{g,h}} + {g,{h,f}} + {h,{f,g}})`; see [`MC_JACOBIATOR_SIGN`].

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactpoly::{scalar, Monomial, OddSet, PolyError, Scalar, SpaceModel, SuperPoly};

/// Global sign `s` in `½⟨[π,π], df∧dg∧dh⟩ = s · Jac(f,g,h)`.
pub const MC_JACOBIATOR_SIGN: i64 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MultiVecError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("jet order mismatch: {left} vs {right}")]
    JetOrderMismatch { left: u32, right: u32 },
    #[error("polynomial is not homogeneous of multivector degree {expected}")]
    NotHomogeneous { expected: usize },
    #[error("expected multivector degree {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("multivector is not tangent to the submanifold")]
    NotTangent,
    #[error("expected a purely even polynomial")]
    NotEven,
    #[error("invalid Lie algebra: {0}")]
    InvalidLieAlgebra(String),
}

/// L-norm value: `0` or `2^-n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Norm(Option<u32>);

impl Norm {
    pub const ZERO: Norm = Norm(None);
    pub const ONE: Norm = Norm(Some(0));

    /// `2^-n`.
    pub fn dyadic(n: u32) -> Norm {
        Norm(Some(n))
    }

    /// `Some(n)` for `2^-n`, `None` for zero.
    pub fn exponent(&self) -> Option<u32> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_none()
    }

    /// Parses the `"0"` / `"2^-n"` rendering produced by `Display`.
    pub fn parse(text: &str) -> Option<Norm> {
        if text == "0" {
            return Some(Norm::ZERO);
        }
        text.strip_prefix("2^-")?.parse().ok().map(Norm::dyadic)
    }
}

impl Ord for Norm {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        match (self.0, other.0) {
            (None, None) => std::cmp::Ordering::Equal,
            (None, Some(_)) => std::cmp::Ordering::Less,
            (Some(_), None) => std::cmp::Ordering::Greater,
            (Some(a), Some(b)) => b.cmp(&a),
        }
    }
}

impl PartialOrd for Norm {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl std::ops::Mul for Norm {
    type Output = Norm;
    // 2^-a · 2^-b = 2^-(a+b)
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: Norm) -> Norm {
        match (self.0, rhs.0) {
            (Some(a), Some(b)) => Norm(Some(a + b)),
            _ => Norm::ZERO,
        }
    }
}

impl fmt::Display for Norm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            None => write!(f, "0"),
            Some(n) => write!(f, "2^-{n}"),
        }
    }
}

/// Position of an element in the filtration `F_k = I^(k+1) · X`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FiltrationLevel {
    /// The zero element (in every `F_k`).
    Zero,
    /// Some term does not vanish on `P`.
    OutsideF0,
    /// In `F_k \ F_(k+1)`.
    Level(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FiltrationInfo {
    /// Minimal total normal degree, `None` for zero.
    pub min_y_degree: Option<u32>,
    pub level: FiltrationLevel,
    pub norm: Norm,
}

impl FiltrationInfo {
    pub fn of(poly: &SuperPoly) -> FiltrationInfo {
        match poly.min_y_degree() {
            None => FiltrationInfo { min_y_degree: None, level: FiltrationLevel::Zero, norm: Norm::ZERO },
            Some(0) => {
                FiltrationInfo { min_y_degree: Some(0), level: FiltrationLevel::OutsideF0, norm: Norm::ONE }
            }
            Some(m) => FiltrationInfo {
                min_y_degree: Some(m),
                level: FiltrationLevel::Level(m - 1),
                norm: Norm::dyadic(m - 1),
            },
        }
    }

    /// Numeric filtration level; `None` for elements outside `F_0`, `u32::MAX` for zero.
    pub fn level_index(&self) -> Option<u32> {
        match self.level {
            FiltrationLevel::Zero => Some(u32::MAX),
            FiltrationLevel::OutsideF0 => None,
            FiltrationLevel::Level(k) => Some(k),
        }
    }
}

/// Homogeneous multivector field of degree `d`, truncated at normal jet order `N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiVec {
    body: SuperPoly,
    degree: usize,
    jet_order: u32,
}

impl MultiVec {
    /// Wraps `body`, which must have odd degree `degree` in every term, and
    /// truncates it at `jet_order`.
    pub fn new(body: SuperPoly, degree: usize, jet_order: u32) -> Result<Self, MultiVecError> {
        if !body.is_zero() && body.odd_degree() != Some(degree) {
            return Err(MultiVecError::NotHomogeneous { expected: degree });
        }
        Ok(MultiVec { body: body.truncate_y(jet_order), degree, jet_order })
    }

    pub fn zero(space: SpaceModel, degree: usize, jet_order: u32) -> Self {
        MultiVec { body: SuperPoly::zero(space), degree, jet_order }
    }

    /// A function (degree 0 multivector).
    pub fn function(f: SuperPoly, jet_order: u32) -> Result<Self, MultiVecError> {
        if !f.is_even() {
            return Err(MultiVecError::NotEven);
        }
        MultiVec::new(f, 0, jet_order)
    }

    pub fn space(&self) -> SpaceModel {
        self.body.space()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Degree in the shifted grading, `d - 1`.
    pub fn gla_degree(&self) -> i64 {
        self.degree as i64 - 1
    }

    pub fn jet_order(&self) -> u32 {
        self.jet_order
    }

    pub fn body(&self) -> &SuperPoly {
        &self.body
    }

    pub fn into_body(self) -> SuperPoly {
        self.body
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    /// Same element viewed at another jet order (truncating when lowering).
    pub fn with_jet_order(&self, jet_order: u32) -> MultiVec {
        MultiVec { body: self.body.truncate_y(jet_order), degree: self.degree, jet_order }
    }

    /// Keeps only the terms of total normal degree `<= order`, at the same jet order.
    pub fn jet(&self, order: u32) -> MultiVec {
        MultiVec { body: self.body.truncate_y(order), degree: self.degree, jet_order: self.jet_order }
    }

    /// The terms of normal degree exactly `k`.
    pub fn y_homogeneous_part(&self, k: u32) -> MultiVec {
        MultiVec { body: self.body.y_homogeneous_part(k), degree: self.degree, jet_order: self.jet_order }
    }

    fn check_compatible(&self, other: &MultiVec) -> Result<(), MultiVecError> {
        if self.space() != other.space() {
            return Err(PolyError::SpaceMismatch { left: self.space(), right: other.space() }.into());
        }
        if self.jet_order != other.jet_order {
            return Err(MultiVecError::JetOrderMismatch { left: self.jet_order, right: other.jet_order });
        }
        Ok(())
    }

    fn check_same_degree(&self, other: &MultiVec) -> Result<(), MultiVecError> {
        self.check_compatible(other)?;
        if self.degree != other.degree {
            return Err(MultiVecError::DegreeMismatch { expected: self.degree, found: other.degree });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &MultiVec) -> Result<MultiVec, MultiVecError> {
        self.check_same_degree(other)?;
        Ok(MultiVec { body: self.body.checked_add(&other.body)?, ..self.clone() })
    }

    pub fn checked_sub(&self, other: &MultiVec) -> Result<MultiVec, MultiVecError> {
        self.check_same_degree(other)?;
        Ok(MultiVec { body: self.body.checked_sub(&other.body)?, ..self.clone() })
    }

    pub fn scale(&self, c: &Scalar) -> MultiVec {
        MultiVec { body: self.body.scale(c), degree: self.degree, jet_order: self.jet_order }
    }

    /// Wedge product, truncated.
    pub fn wedge(&self, other: &MultiVec) -> Result<MultiVec, MultiVecError> {
        self.check_compatible(other)?;
        let body = self.body.checked_mul(&other.body)?;
        Ok(MultiVec {
            body: body.truncate_y(self.jet_order),
            degree: self.degree + other.degree,
            jet_order: self.jet_order,
        })
    }

    /// Schouten–Nijenhuis bracket `[self, other]`, truncated at the common jet order.
    pub fn schouten(&self, other: &MultiVec) -> Result<MultiVec, MultiVecError> {
        self.check_compatible(other)?;
        if self.degree + other.degree == 0 {
            return Ok(MultiVec::zero(self.space(), 0, self.jet_order));
        }
        let body = schouten_poly(&self.body, self.degree, &other.body);
        Ok(MultiVec {
            body: body.truncate_y(self.jet_order),
            degree: self.degree + other.degree - 1,
            jet_order: self.jet_order,
        })
    }

    pub fn filtration_info(&self) -> FiltrationInfo {
        FiltrationInfo::of(&self.body)
    }

    pub fn norm(&self) -> Norm {
        self.filtration_info().norm
    }

    /// True iff the restriction to `P` has no normal wedge factor.
    pub fn is_tangent(&self) -> bool {
        let space = self.space();
        self.body.terms().all(|(m, _)| {
            m.y_degree(&space) >= 1 || m.odd.iter().all(|i| !space.is_normal(i))
        })
    }

    /// `[π, π]`; the bivector is Maurer–Cartan iff this vanishes.
    pub fn mc_defect(&self) -> Result<MultiVec, MultiVecError> {
        if self.degree != 2 {
            return Err(MultiVecError::DegreeMismatch { expected: 2, found: self.degree });
        }
        if !self.is_tangent() {
            return Err(MultiVecError::NotTangent);
        }
        self.schouten(self)
    }

    pub fn is_maurer_cartan(&self) -> bool {
        self.mc_defect().map(|d| d.is_zero()).unwrap_or(false)
    }

    /// Even coefficient of `ξ_{indices}` (indices in any order, sign adjusted).
    pub fn component(&self, indices: &[usize]) -> SuperPoly {
        match OddSet::from_product(indices) {
            None => SuperPoly::zero(self.space()),
            Some((set, negative)) => {
                let c = self.body.odd_component(set);
                if negative {
                    -&c
                } else {
                    c
                }
            }
        }
    }

    /// Pairing with `df_1 ∧ ⋯ ∧ df_d`, without truncation.
    pub fn contract(&self, functions: &[SuperPoly]) -> Result<SuperPoly, MultiVecError> {
        if functions.len() != self.degree {
            return Err(MultiVecError::DegreeMismatch { expected: self.degree, found: functions.len() });
        }
        let mut acc = self.body.clone();
        for f in functions {
            if !f.is_even() {
                return Err(MultiVecError::NotEven);
            }
            acc = interior_exact(&acc, f)?;
        }
        Ok(acc)
    }
}

/// `i_{df} W = Σ_i ∂_i f · ∂W/∂ξ_i`.
fn interior_exact(w: &SuperPoly, f: &SuperPoly) -> Result<SuperPoly, PolyError> {
    let mut out = SuperPoly::zero(w.space());
    for i in 0..w.space().dim() {
        let df = f.deriv_even(i)?;
        if df.is_zero() {
            continue;
        }
        let dw = w.deriv_odd(i)?;
        if dw.is_zero() {
            continue;
        }
        out = &out + &df.checked_mul(&dw)?;
    }
    Ok(out)
}

/// Untruncated Schouten bracket of `a` (odd degree `degree_a`) with `b`.
pub(crate) fn schouten_poly(a: &SuperPoly, degree_a: usize, b: &SuperPoly) -> SuperPoly {
    let space = a.space();
    let sign_first = if degree_a.is_multiple_of(2) { -Scalar::one() } else { Scalar::one() };
    let mut out = SuperPoly::zero(space);
    for i in 0..space.dim() {
        let da_odd = a.deriv_odd(i).expect("index in range");
        if !da_odd.is_zero() {
            let db_even = b.deriv_even(i).expect("index in range");
            if !db_even.is_zero() {
                out = &out + &(&da_odd * &db_even).scale(&sign_first);
            }
        }
        let da_even = a.deriv_even(i).expect("index in range");
        if !da_even.is_zero() {
            let db_odd = b.deriv_odd(i).expect("index in range");
            if !db_odd.is_zero() {
                out = &out - &(&da_even * &db_odd);
            }
        }
    }
    out
}

impl Add for &MultiVec {
    type Output = MultiVec;
    /// Panics on incompatible operands; see [`MultiVec::checked_add`].
    fn add(self, rhs: &MultiVec) -> MultiVec {
        self.checked_add(rhs).expect("incompatible multivectors")
    }
}

impl Sub for &MultiVec {
    type Output = MultiVec;
    fn sub(self, rhs: &MultiVec) -> MultiVec {
        self.checked_sub(rhs).expect("incompatible multivectors")
    }
}

impl Neg for &MultiVec {
    type Output = MultiVec;
    fn neg(self) -> MultiVec {
        MultiVec { body: -&self.body, degree: self.degree, jet_order: self.jet_order }
    }
}

impl fmt::Display for MultiVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.body)
    }
}

/// `{f, g} = π(df ∧ dg)`, untruncated.
pub fn poisson_bracket(pi: &MultiVec, f: &SuperPoly, g: &SuperPoly) -> Result<SuperPoly, MultiVecError> {
    pi.contract(&[f.clone(), g.clone()])
}

/// `{f,{g,h}} + {g,{h,f}} + {h,{f,g}}` by repeated double contraction,
/// truncated at the jet order of `pi`.
pub fn jacobiator(
    pi: &MultiVec,
    f: &SuperPoly,
    g: &SuperPoly,
    h: &SuperPoly,
) -> Result<SuperPoly, MultiVecError> {
    if pi.degree() != 2 {
        return Err(MultiVecError::DegreeMismatch { expected: 2, found: pi.degree() });
    }
    let br = |a: &SuperPoly, b: &SuperPoly| poisson_bracket(pi, a, b);
    let j = &(&br(f, &br(g, h)?)? + &br(g, &br(h, f)?)?) + &br(h, &br(f, g)?)?;
    Ok(j.truncate_y(pi.jet_order()))
}

/// Structure constants `c[i][j][k]` of `[e_i, e_j] = Σ_k c[i][j][k] e_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebraData {
    dim: usize,
    constants: Vec<Scalar>,
}

impl LieAlgebraData {
    /// Builds the algebra from brackets `[e_i, e_j] = Σ c e_k` listed for `i < j`.
    /// Antisymmetry is implied; the Jacobi identity is checked.
    pub fn from_brackets(
        dim: usize,
        brackets: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
    ) -> Result<Self, MultiVecError> {
        let mut constants = vec![Scalar::zero(); dim * dim * dim];
        for (i, j, k, c) in brackets {
            if i >= dim || j >= dim || k >= dim {
                return Err(MultiVecError::InvalidLieAlgebra(format!("index out of range in ({i},{j},{k})")));
            }
            if i >= j {
                return Err(MultiVecError::InvalidLieAlgebra(format!("bracket ({i},{j}) must have i < j")));
            }
            constants[(i * dim + j) * dim + k] += c.clone();
            constants[(j * dim + i) * dim + k] -= c;
        }
        Self::from_tensor(dim, constants)
    }

    /// Builds from the full tensor, checking antisymmetry and Jacobi.
    pub fn from_tensor(dim: usize, constants: Vec<Scalar>) -> Result<Self, MultiVecError> {
        if dim == 0 || constants.len() != dim * dim * dim {
            return Err(MultiVecError::InvalidLieAlgebra("tensor size".into()));
        }
        let g = LieAlgebraData { dim, constants };
        if let Some((i, j, k)) = g.antisymmetry_violation() {
            return Err(MultiVecError::InvalidLieAlgebra(format!("c[{i}][{j}][{k}] not antisymmetric")));
        }
        if let Some((i, j, k, l)) = g.jacobi_violation() {
            return Err(MultiVecError::InvalidLieAlgebra(format!("Jacobi fails at ({i},{j},{k}) component {l}")));
        }
        Ok(g)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn c(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.constants[(i * self.dim + j) * self.dim + k]
    }

    pub fn antisymmetry_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if self.c(i, j, k) != &-self.c(j, i, k).clone() {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize, usize)> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let mut s = Scalar::zero();
                        for m in 0..n {
                            s += self.c(i, j, m) * self.c(m, k, l);
                            s += self.c(j, k, m) * self.c(m, i, l);
                            s += self.c(k, i, m) * self.c(m, j, l);
                        }
                        if !s.is_zero() {
                            return Some((i, j, k, l));
                        }
                    }
                }
            }
        }
        None
    }

    pub fn abelian(dim: usize) -> Self {
        LieAlgebraData { dim, constants: vec![Scalar::zero(); dim * dim * dim] }
    }

    /// `so(3)`: `[e_i, e_j] = ε_ijk e_k`.
    pub fn so3() -> Self {
        Self::from_brackets(3, [(0, 1, 2, scalar(1)), (1, 2, 0, scalar(1)), (0, 2, 1, scalar(-1))])
            .expect("so(3) is a Lie algebra")
    }

    /// `sl(2)` in the basis `(h, e, f)`.
    pub fn sl2() -> Self {
        Self::from_brackets(3, [(0, 1, 1, scalar(2)), (0, 2, 2, scalar(-2)), (1, 2, 0, scalar(1))])
            .expect("sl(2) is a Lie algebra")
    }

    /// Nonzero brackets `(i, j, k, c)` with `i < j`.
    pub fn brackets(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..n {
                    if !self.c(i, j, k).is_zero() {
                        out.push((i, j, k, self.c(i, j, k).clone()));
                    }
                }
            }
        }
        out
    }
}

/// Linear Poisson structure `½ Σ c[i][j][k] y_k ξ_i ξ_j` on `g*` (`p = 0`, `q = dim g`).
pub fn lie_poisson(g: &LieAlgebraData, jet_order: u32) -> MultiVec {
    let space = SpaceModel::new(0, g.dim()).expect("dim >= 1");
    let mut body = SuperPoly::zero(space);
    for (i, j, k, c) in g.brackets() {
        let mut m = Monomial::unit(&space);
        m.exps[k] = 1;
        m.odd = OddSet::from_product(&[i, j]).expect("i < j").0;
        body.add_term(m, c);
    }
    MultiVec::new(body, 2, jet_order).expect("homogeneous bivector")
}
