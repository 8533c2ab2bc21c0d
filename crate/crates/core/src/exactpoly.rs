//! Exact supercommutative polynomials.
//!
//! A [`SuperPoly`] lives on a [`SpaceModel`] with `p` tangent coordinates
//! `x_1..x_p` followed by `q` normal coordinates `y_1..y_q`. Every coordinate
//! direction `i` also carries an odd generator `ξ_i`, which stands for the
//! wedge factor `∂/∂(coordinate i)` of a multivector field. Coordinates are
//! indexed from zero in this API; index `i < p` is tangent, `i >= p` normal.
//!
//! Coefficients are exact rationals. Terms are kept in a `BTreeMap` keyed by
//! [`Monomial`], so iteration order is graded and deterministic.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;
use thiserror::Error;

/// Exact rational coefficient, always in lowest terms with positive denominator.
pub type Scalar = BigRational;

/// Maximum number of coordinates (odd generators are stored as a `u32` mask).
pub const MAX_COORDS: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("ambient space mismatch: {left} vs {right}")]
    SpaceMismatch { left: SpaceModel, right: SpaceModel },
    #[error("coordinate index {index} out of range for {space}")]
    IndexOutOfRange { index: usize, space: SpaceModel },
    #[error("invalid space model p={p}, q={q}")]
    InvalidSpace { p: usize, q: usize },
    #[error("exponent vector has length {found}, expected {expected}")]
    ExponentLength { expected: usize, found: usize },
    #[error("cannot parse rational {0:?}")]
    BadScalar(String),
}

pub fn scalar(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// `n/d` reduced to lowest terms. Panics when `d == 0`.
pub fn ratio(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"n"` or `"n/d"` with arbitrary-size integers.
pub fn parse_scalar(text: &str) -> Result<Scalar, PolyError> {
    let bad = || PolyError::BadScalar(text.to_string());
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Scalar::new(num, den))
}

/// Inverse of [`parse_scalar`]: `"n"` for integers, `"n/d"` otherwise.
pub fn format_scalar(value: &Scalar) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Ambient coordinate model: `P = {y = 0}` inside `M = R^(p+q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpaceModel {
    p: usize,
    q: usize,
}

impl SpaceModel {
    pub fn new(p: usize, q: usize) -> Result<Self, PolyError> {
        if p + q == 0 || p + q > MAX_COORDS {
            return Err(PolyError::InvalidSpace { p, q });
        }
        Ok(SpaceModel { p, q })
    }

    /// Number of tangent coordinates.
    pub fn tangent(&self) -> usize {
        self.p
    }

    /// Number of normal coordinates.
    pub fn normal(&self) -> usize {
        self.q
    }

    pub fn dim(&self) -> usize {
        self.p + self.q
    }

    pub fn is_normal(&self, index: usize) -> bool {
        index >= self.p
    }

    fn check_index(&self, index: usize) -> Result<(), PolyError> {
        if index < self.dim() {
            Ok(())
        } else {
            Err(PolyError::IndexOutOfRange { index, space: *self })
        }
    }

    /// Display name of coordinate `index`: `x1..xp` then `y1..yq`.
    pub fn coordinate_name(&self, index: usize) -> String {
        if index < self.p {
            format!("x{}", index + 1)
        } else {
            format!("y{}", index - self.p + 1)
        }
    }
}

impl fmt::Display for SpaceModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(p={}, q={})", self.p, self.q)
    }
}

/// A strictly increasing set of odd-generator indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct OddSet(u32);

impl OddSet {
    pub const EMPTY: OddSet = OddSet(0);

    pub fn singleton(index: usize) -> Self {
        OddSet(1 << index)
    }

    /// Canonicalizes a product `ξ_{i_1}⋯ξ_{i_k}` given in arbitrary order.
    /// Returns `None` when an index repeats (the product is zero), otherwise
    /// the sorted set together with the sign of the sorting permutation.
    pub fn from_product(indices: &[usize]) -> Option<(OddSet, bool)> {
        let mut mask = 0u32;
        let mut negative = false;
        for &i in indices {
            let bit = 1u32 << i;
            if mask & bit != 0 {
                return None;
            }
            // each already present larger index is one inversion
            negative ^= (mask >> i).count_ones() % 2 == 1;
            mask |= bit;
        }
        Some((OddSet(mask), negative))
    }

    pub fn bits(&self) -> u32 {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn contains(&self, index: usize) -> bool {
        self.0 & (1 << index) != 0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let mask = self.0;
        (0..MAX_COORDS).filter(move |i| mask & (1 << i) != 0)
    }

    pub fn indices(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Number of members strictly below `index`.
    pub fn count_below(&self, index: usize) -> usize {
        (self.0 & ((1u32 << index) - 1)).count_ones() as usize
    }

    pub fn remove(&self, index: usize) -> OddSet {
        OddSet(self.0 & !(1 << index))
    }

    /// Product `ξ_self · ξ_other`: `None` if they share a generator, else the
    /// merged set and whether the Koszul sign is negative.
    pub fn merge(&self, other: &OddSet) -> Option<(OddSet, bool)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let mut inversions = 0u32;
        for j in other.iter() {
            inversions += (self.0 >> j).count_ones();
        }
        Some((OddSet(self.0 | other.0), inversions % 2 == 1))
    }

    /// All subsets of `{0..n}` with exactly `size` members, in increasing order.
    pub fn subsets(n: usize, size: usize) -> Vec<OddSet> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(size);
        fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<OddSet>) {
            if cur.len() == size {
                out.push(OddSet(cur.iter().fold(0, |m, &i| m | (1 << i))));
                return;
            }
            for i in start..n {
                cur.push(i);
                rec(i + 1, n, size, cur, out);
                cur.pop();
            }
        }
        rec(0, n, size, &mut current, &mut out);
        out.sort();
        out
    }
}

impl Ord for OddSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for OddSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub type Exponents = SmallVec<[u32; 6]>;

/// Term key: even exponents over all `p + q` coordinates and an odd set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub exps: Exponents,
    pub odd: OddSet,
}

impl Monomial {
    pub fn new(exps: impl Into<Exponents>, odd: OddSet) -> Self {
        Monomial { exps: exps.into(), odd }
    }

    pub fn unit(space: &SpaceModel) -> Self {
        Monomial { exps: SmallVec::from_elem(0, space.dim()), odd: OddSet::EMPTY }
    }

    pub fn even_degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn x_degree(&self, space: &SpaceModel) -> u32 {
        self.exps[..space.tangent()].iter().sum()
    }

    pub fn y_degree(&self, space: &SpaceModel) -> u32 {
        self.exps[space.tangent()..].iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.even_degree() + self.odd.len() as u32)
            .cmp(&(other.even_degree() + other.odd.len() as u32))
            .then_with(|| other.exps.cmp(&self.exps))
            .then_with(|| self.odd.cmp(&other.odd))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Supercommutative polynomial with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SuperPoly {
    space: SpaceModel,
    terms: BTreeMap<Monomial, Scalar>,
}

impl SuperPoly {
    pub fn zero(space: SpaceModel) -> Self {
        SuperPoly { space, terms: BTreeMap::new() }
    }

    pub fn constant(space: SpaceModel, c: Scalar) -> Self {
        let mut p = Self::zero(space);
        p.add_term(Monomial::unit(&space), c);
        p
    }

    pub fn one(space: SpaceModel) -> Self {
        Self::constant(space, Scalar::one())
    }

    /// The even coordinate function with the given index.
    pub fn coordinate(space: SpaceModel, index: usize) -> Result<Self, PolyError> {
        space.check_index(index)?;
        let mut m = Monomial::unit(&space);
        m.exps[index] = 1;
        let mut p = Self::zero(space);
        p.add_term(m, Scalar::one());
        Ok(p)
    }

    /// The odd generator `ξ_index`.
    pub fn odd(space: SpaceModel, index: usize) -> Result<Self, PolyError> {
        space.check_index(index)?;
        let mut p = Self::zero(space);
        p.add_term(
            Monomial { exps: SmallVec::from_elem(0, space.dim()), odd: OddSet::singleton(index) },
            Scalar::one(),
        );
        Ok(p)
    }

    /// `c · coords^exps · ξ_{odd[0]} ξ_{odd[1]} ⋯` with `odd` in any order.
    pub fn term(
        space: SpaceModel,
        c: Scalar,
        exps: &[u32],
        odd: &[usize],
    ) -> Result<Self, PolyError> {
        if exps.len() != space.dim() {
            return Err(PolyError::ExponentLength { expected: space.dim(), found: exps.len() });
        }
        for &i in odd {
            space.check_index(i)?;
        }
        let mut p = Self::zero(space);
        if let Some((set, negative)) = OddSet::from_product(odd) {
            p.add_term(Monomial::new(exps, set), if negative { -c } else { c });
        }
        Ok(p)
    }

    pub fn from_terms(space: SpaceModel, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = Self::zero(space);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn space(&self) -> SpaceModel {
        self.space
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Adds `c · m` in place, dropping the key if the coefficient cancels.
    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.exps.len(), self.space.dim());
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_space(&self, other: &SuperPoly) -> Result<(), PolyError> {
        if self.space == other.space {
            Ok(())
        } else {
            Err(PolyError::SpaceMismatch { left: self.space, right: other.space })
        }
    }

    pub fn checked_add(&self, other: &SuperPoly) -> Result<SuperPoly, PolyError> {
        self.check_space(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &SuperPoly) -> Result<SuperPoly, PolyError> {
        self.check_space(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    /// Supercommutative product: even parts multiply, odd parts merge with
    /// the Koszul sign.
    pub fn checked_mul(&self, other: &SuperPoly) -> Result<SuperPoly, PolyError> {
        self.check_space(other)?;
        let mut out = SuperPoly::zero(self.space);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let Some((odd, negative)) = ma.odd.merge(&mb.odd) else {
                    continue;
                };
                let exps: Exponents = ma.exps.iter().zip(&mb.exps).map(|(a, b)| a + b).collect();
                let c = ca * cb;
                out.add_term(Monomial { exps, odd }, if negative { -c } else { c });
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> SuperPoly {
        if c.is_zero() {
            return SuperPoly::zero(self.space);
        }
        SuperPoly {
            space: self.space,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// `∂/∂(coordinate index)`.
    pub fn deriv_even(&self, index: usize) -> Result<SuperPoly, PolyError> {
        self.space.check_index(index)?;
        let mut out = SuperPoly::zero(self.space);
        for (m, c) in &self.terms {
            let e = m.exps[index];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps.clone();
            exps[index] = e - 1;
            out.add_term(Monomial { exps, odd: m.odd }, c * scalar(i64::from(e)));
        }
        Ok(out)
    }

    /// Left derivative `∂/∂ξ_index`: sign `(-1)^(number of odd factors before ξ_index)`.
    pub fn deriv_odd(&self, index: usize) -> Result<SuperPoly, PolyError> {
        self.space.check_index(index)?;
        let mut out = SuperPoly::zero(self.space);
        for (m, c) in &self.terms {
            if !m.odd.contains(index) {
                continue;
            }
            let negative = m.odd.count_below(index) % 2 == 1;
            out.add_term(
                Monomial { exps: m.exps.clone(), odd: m.odd.remove(index) },
                if negative { -c.clone() } else { c.clone() },
            );
        }
        Ok(out)
    }

    /// Drops every term of total normal degree above `order`.
    pub fn truncate_y(&self, order: u32) -> SuperPoly {
        self.filter_terms(|m| m.y_degree(&self.space) <= order)
    }

    /// The part of total normal degree exactly `degree`.
    pub fn y_homogeneous_part(&self, degree: u32) -> SuperPoly {
        self.filter_terms(|m| m.y_degree(&self.space) == degree)
    }

    /// Restriction to `P = {y = 0}` (keeps the terms free of normal coordinates).
    pub fn restrict_to_submanifold(&self) -> SuperPoly {
        self.y_homogeneous_part(0)
    }

    pub fn filter_terms(&self, keep: impl Fn(&Monomial) -> bool) -> SuperPoly {
        SuperPoly {
            space: self.space,
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub fn min_y_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.y_degree(&self.space)).min()
    }

    pub fn max_y_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.y_degree(&self.space)).max()
    }

    pub fn max_x_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.x_degree(&self.space)).max()
    }

    /// `Some(d)` when every term has exactly `d` odd factors; `None` for
    /// mixed degrees. The zero polynomial reports `Some(0)`.
    pub fn odd_degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(|m| m.odd.len());
        match degrees.next() {
            None => Some(0),
            Some(d) => degrees.all(|e| e == d).then_some(d),
        }
    }

    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|m| m.odd.is_empty())
    }

    /// Collects the terms with the given odd set into an even polynomial.
    pub fn odd_component(&self, odd: OddSet) -> SuperPoly {
        SuperPoly {
            space: self.space,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.odd == odd)
                .map(|(m, c)| (Monomial { exps: m.exps.clone(), odd: OddSet::EMPTY }, c.clone()))
                .collect(),
        }
    }

    /// Evaluates the even coordinates at rational points; odd parts must be absent.
    pub fn evaluate(&self, point: &[Scalar]) -> Option<Scalar> {
        if point.len() != self.space.dim() || !self.is_even() {
            return None;
        }
        let mut total = Scalar::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(&m.exps) {
                for _ in 0..e {
                    v *= x;
                }
            }
            total += v;
        }
        Some(total)
    }
}

impl fmt::Display for SuperPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in m.exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.space.coordinate_name(i)),
                    _ => factors.push(format!("{}^{}", self.space.coordinate_name(i), e)),
                }
            }
            for i in m.odd.iter() {
                factors.push(format!("d{}", self.space.coordinate_name(i)));
            }
            if factors.is_empty() {
                write!(f, "{}", format_scalar(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", format_scalar(&abs), factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Add for &SuperPoly {
    type Output = SuperPoly;
    /// Panics on ambient-space mismatch; use [`SuperPoly::checked_add`] otherwise.
    fn add(self, rhs: &SuperPoly) -> SuperPoly {
        self.checked_add(rhs).expect("SuperPoly addition across spaces")
    }
}

impl Sub for &SuperPoly {
    type Output = SuperPoly;
    fn sub(self, rhs: &SuperPoly) -> SuperPoly {
        self.checked_sub(rhs).expect("SuperPoly subtraction across spaces")
    }
}

impl Mul for &SuperPoly {
    type Output = SuperPoly;
    fn mul(self, rhs: &SuperPoly) -> SuperPoly {
        self.checked_mul(rhs).expect("SuperPoly product across spaces")
    }
}

impl Neg for &SuperPoly {
    type Output = SuperPoly;
    fn neg(self) -> SuperPoly {
        SuperPoly {
            space: self.space,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn space(p: usize, q: usize) -> SpaceModel {
        SpaceModel::new(p, q).unwrap()
    }

    fn xi(s: SpaceModel, i: usize) -> SuperPoly {
        SuperPoly::odd(s, i).unwrap()
    }

    fn coord(s: SpaceModel, i: usize) -> SuperPoly {
        SuperPoly::coordinate(s, i).unwrap()
    }

    #[test]
    fn odd_generators_anticommute() {
        let s = space(0, 2);
        let x12 = &xi(s, 0) * &xi(s, 1);
        let x21 = &xi(s, 1) * &xi(s, 0);
        assert_eq!(x12, SuperPoly::term(s, scalar(1), &[0, 0], &[0, 1]).unwrap());
        assert_eq!(x21, -&x12);
        assert!((&xi(s, 0) * &xi(s, 0)).is_zero());
    }

    #[test]
    fn even_parts_commute() {
        let s = space(0, 2);
        let a = &coord(s, 0) * &xi(s, 0);
        let b = &coord(s, 0) * &xi(s, 1);
        let expected = SuperPoly::term(s, scalar(1), &[2, 0], &[0, 1]).unwrap();
        assert_eq!(&a * &b, expected);
    }

    #[test]
    fn space_mismatch_is_reported() {
        let a = SuperPoly::one(space(1, 1));
        let b = SuperPoly::one(space(0, 2));
        assert!(matches!(a.checked_mul(&b), Err(PolyError::SpaceMismatch { .. })));
    }

    #[test]
    fn derivatives() {
        let s = space(0, 3);
        let y1 = coord(s, 0);
        let cube = &(&y1 * &y1) * &y1;
        assert_eq!(cube.deriv_even(0).unwrap(), (&y1 * &y1).scale(&scalar(3)));
        let x12 = &xi(s, 0) * &xi(s, 1);
        assert_eq!(x12.deriv_odd(1).unwrap(), -&xi(s, 0));
        assert!(x12.deriv_odd(2).unwrap().is_zero());
        assert!(matches!(x12.deriv_odd(3), Err(PolyError::IndexOutOfRange { .. })));
    }

    #[test]
    fn truncation() {
        let s = space(1, 1);
        let y = coord(s, 1);
        let x = coord(s, 0);
        let y3 = &(&y * &y) * &y;
        assert_eq!((&y + &y3).truncate_y(2), y);
        let x5 = (0..5).fold(SuperPoly::one(s), |acc, _| &acc * &x);
        let x5y = &x5 * &y;
        assert_eq!(x5y.truncate_y(1), x5y);
        assert!(SuperPoly::zero(s).truncate_y(4).is_zero());
    }

    #[test]
    fn scalar_text_round_trip() {
        for text in ["0", "-3", "7/2", "-12345678901234567890/7"] {
            assert_eq!(format_scalar(&parse_scalar(text).unwrap()), text);
        }
        assert_eq!(format_scalar(&parse_scalar("4/6").unwrap()), "2/3");
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("abc").is_err());
    }

    #[test]
    fn odd_product_sign() {
        assert_eq!(OddSet::from_product(&[2, 0, 1]).map(|(_, n)| n), Some(false));
        assert_eq!(OddSet::from_product(&[1, 0]).map(|(_, n)| n), Some(true));
        assert_eq!(OddSet::from_product(&[1, 1]), None);
    }

    // Random polynomials on 3 coordinates, each term homogeneous in odd degree `d`.
    fn arb_poly(d: usize) -> impl Strategy<Value = SuperPoly> {
        let s = space(1, 2);
        let sets = OddSet::subsets(3, d);
        prop::collection::vec((-3i64..=3, prop::collection::vec(0u32..3, 3), 0..sets.len()), 0..4)
            .prop_map(move |ts| {
                SuperPoly::from_terms(
                    s,
                    ts.into_iter().map(|(c, e, k)| (Monomial::new(e.as_slice(), sets[k]), scalar(c))),
                )
            })
    }

    proptest! {
        #[test]
        fn supercommutative((da, db, a, b) in (0usize..3, 0usize..3).prop_flat_map(|(da, db)| {
            (Just(da), Just(db), arb_poly(da), arb_poly(db))
        })) {
            let sign = if (da * db) % 2 == 1 { scalar(-1) } else { scalar(1) };
            prop_assert_eq!(&a * &b, (&b * &a).scale(&sign));
        }

        #[test]
        fn associative(a in arb_poly(1), b in arb_poly(1), c in arb_poly(0)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }

        #[test]
        fn odd_derivative_is_odd_derivation(a in arb_poly(1), b in arb_poly(2), i in 0usize..3) {
            let lhs = (&a * &b).deriv_odd(i).unwrap();
            let rhs = &(&a.deriv_odd(i).unwrap() * &b) - &(&a * &b.deriv_odd(i).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn truncation_commutes_with_product(a in arb_poly(1), b in arb_poly(1), n in 0u32..4) {
            let full = (&a * &b).truncate_y(n);
            let pre = (&a.truncate_y(n) * &b.truncate_y(n)).truncate_y(n);
            prop_assert_eq!(full, pre);
        }
    }
}
