//! Laurent polynomials with integer coefficients over a totally ordered
//! exponent group.
//!
//! Two exponent groups are used: [`GammaExp`] (`Z^2` ordered
//! lexicographically, the two-parameter ring `Z[V, V^-1, v, v^-1]`) and
//! `i64` (the one-parameter ring `Z[v, v^-1]`).

use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// A totally ordered abelian group used as the exponent set of a Laurent
/// polynomial ring.
pub trait Exponent:
    Copy + Ord + Hash + fmt::Debug + Send + Sync + Add<Output = Self> + Sub<Output = Self> + Neg<Output = Self> + 'static
{
    const ZERO: Self;

    /// Appends the monomial `v^self` (without coefficient) to `out`.
    /// Appends nothing for the unit monomial.
    fn write_monomial(&self, out: &mut String);

    /// Multiplies the exponent by an integer.
    fn times(self, k: i64) -> Self;
}

/// An element of `Z^2` ordered lexicographically: `tdeg` is the exponent of
/// `V` and dominates `sdeg`, the exponent of `v`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GammaExp {
    pub tdeg: i64,
    pub sdeg: i64,
}

impl GammaExp {
    pub const fn new(tdeg: i64, sdeg: i64) -> Self {
        GammaExp { tdeg, sdeg }
    }
}

/// Lexicographic comparison; the derived `Ord` already is lexicographic.
pub fn lex_compare(x: GammaExp, y: GammaExp) -> std::cmp::Ordering {
    x.cmp(&y)
}

impl Add for GammaExp {
    type Output = GammaExp;
    fn add(self, o: GammaExp) -> GammaExp {
        GammaExp::new(self.tdeg + o.tdeg, self.sdeg + o.sdeg)
    }
}

impl Sub for GammaExp {
    type Output = GammaExp;
    fn sub(self, o: GammaExp) -> GammaExp {
        GammaExp::new(self.tdeg - o.tdeg, self.sdeg - o.sdeg)
    }
}

impl Neg for GammaExp {
    type Output = GammaExp;
    fn neg(self) -> GammaExp {
        GammaExp::new(-self.tdeg, -self.sdeg)
    }
}

impl fmt::Display for GammaExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.tdeg, self.sdeg)
    }
}

fn write_power(out: &mut String, var: &str, e: i64) {
    if e == 0 {
        return;
    }
    if !out.is_empty() {
        out.push('*');
    }
    out.push_str(var);
    if e != 1 {
        out.push('^');
        out.push_str(&e.to_string());
    }
}

impl Exponent for GammaExp {
    const ZERO: Self = GammaExp::new(0, 0);

    fn write_monomial(&self, out: &mut String) {
        let mut m = String::new();
        write_power(&mut m, "V", self.tdeg);
        write_power(&mut m, "v", self.sdeg);
        out.push_str(&m);
    }

    fn times(self, k: i64) -> Self {
        GammaExp::new(self.tdeg * k, self.sdeg * k)
    }
}

impl Exponent for i64 {
    const ZERO: Self = 0;

    fn write_monomial(&self, out: &mut String) {
        let mut m = String::new();
        write_power(&mut m, "v", *self);
        out.push_str(&m);
    }

    fn times(self, k: i64) -> Self {
        self * k
    }
}

/// Degree of a Laurent polynomial; the zero polynomial has degree
/// `NegInfinity`, which sorts below every finite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Degree<E> {
    NegInfinity,
    Finite(E),
}

/// Valuation of a Laurent polynomial; the zero polynomial has valuation
/// `PosInfinity`, which sorts above every finite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Valuation<E> {
    Finite(E),
    PosInfinity,
}

impl<E: Copy> Degree<E> {
    pub fn finite(self) -> Option<E> {
        match self {
            Degree::Finite(e) => Some(e),
            Degree::NegInfinity => None,
        }
    }
}

impl<E: Copy> Valuation<E> {
    pub fn finite(self) -> Option<E> {
        match self {
            Valuation::Finite(e) => Some(e),
            Valuation::PosInfinity => None,
        }
    }
}

/// A finite-support Laurent polynomial `sum c_e v^e` with arbitrary-precision
/// integer coefficients.
///
/// Terms are kept sorted by exponent in descending order and never carry a
/// zero coefficient, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Laurent<E> {
    terms: Vec<(E, BigInt)>,
}

/// The ring `Z[V, V^-1, v, v^-1]`.
pub type BiLaurent = Laurent<GammaExp>;
/// The ring `Z[v, v^-1]`.
pub type MonoLaurent = Laurent<i64>;

impl<E: Exponent> Default for Laurent<E> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<E: Exponent> Laurent<E> {
    pub fn zero() -> Self {
        Laurent { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(E::ZERO, 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(E::ZERO, c)
    }

    pub fn monomial(e: E, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        if c.is_zero() {
            Self::zero()
        } else {
            Laurent { terms: vec![(e, c)] }
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated or zero) terms.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (E, C)>,
        C: Into<BigInt>,
    {
        let mut v: Vec<(E, BigInt)> = terms.into_iter().map(|(e, c)| (e, c.into())).collect();
        Self::normalize(&mut v);
        Laurent { terms: v }
    }

    fn normalize(v: &mut Vec<(E, BigInt)>) {
        v.sort_by_key(|t| std::cmp::Reverse(t.0));
        let mut out: Vec<(E, BigInt)> = Vec::with_capacity(v.len());
        for (e, c) in v.drain(..) {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        *v = out;
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == E::ZERO && self.terms[0].1.is_one()
    }

    /// Terms in descending exponent order.
    pub fn terms(&self) -> &[(E, BigInt)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: E) -> BigInt {
        match self.terms.binary_search_by(|(x, _)| e.cmp(x)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn deg(&self) -> Degree<E> {
        self.terms.first().map_or(Degree::NegInfinity, |(e, _)| Degree::Finite(*e))
    }

    pub fn val(&self) -> Valuation<E> {
        self.terms.last().map_or(Valuation::PosInfinity, |(e, _)| Valuation::Finite(*e))
    }

    /// Coefficient at the degree, if nonzero.
    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.first().map(|(_, c)| c)
    }

    /// The involution `v^e -> v^-e`.
    pub fn bar(&self) -> Self {
        let terms = self.terms.iter().rev().map(|(e, c)| (-*e, c.clone())).collect();
        Laurent { terms }
    }

    pub fn is_bar_invariant(&self) -> bool {
        *self == self.bar()
    }

    /// True iff every exponent in the support is `< 0` (membership in `A_{<0}`).
    pub fn strictly_negative(&self) -> bool {
        self.terms.first().is_none_or(|(e, _)| *e < E::ZERO)
    }

    /// True iff every exponent is `>= 0` and the constant coefficient is 1.
    pub fn nonneg_with_unit_constant(&self) -> bool {
        self.terms.last().is_some_and(|(e, _)| *e >= E::ZERO) && self.coeff(E::ZERO).is_one()
    }

    /// The part supported on exponents `< bound`.
    pub fn below(&self, bound: E) -> Self {
        let terms = self.terms.iter().filter(|(e, _)| *e < bound).cloned().collect();
        Laurent { terms }
    }

    /// The part supported on exponents `>= bound`.
    pub fn at_or_above(&self, bound: E) -> Self {
        let terms = self.terms.iter().filter(|(e, _)| *e >= bound).cloned().collect();
        Laurent { terms }
    }

    /// Multiplies by the monomial `c v^e`.
    pub fn mul_monomial(&self, e: E, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let terms = self.terms.iter().map(|(x, d)| (*x + e, d * c)).collect();
        Laurent { terms }
    }

    pub fn shift(&self, e: E) -> Self {
        let terms = self.terms.iter().map(|(x, d)| (*x + e, d.clone())).collect();
        Laurent { terms }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        self.mul_monomial(E::ZERO, c)
    }

    /// Applies a group morphism to the exponents.
    pub fn map_exponents<F: Exponent>(&self, f: impl Fn(E) -> F) -> Laurent<F> {
        Laurent::from_terms(self.terms.iter().map(|(e, c)| (f(*e), c.clone())))
    }

    fn merge(a: &[(E, BigInt)], b: &[(E, BigInt)], negate_b: bool) -> Vec<(E, BigInt)> {
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let c = if negate_b { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate_b { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for (e, c) in &b[j..] {
            out.push((*e, if negate_b { -c } else { c.clone() }));
        }
        out
    }
}

impl<E: Exponent> fmt::Display for Laurent<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let abs = c.abs();
            let mut mono = String::new();
            e.write_monomial(&mut mono);
            if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&abs.to_string());
                out.push('*');
                out.push_str(&mono);
            }
        }
        f.write_str(&out)
    }
}

impl<E: Exponent> fmt::Debug for Laurent<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({self})")
    }
}

impl<E: Exponent> Serialize for Laurent<E> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'a, E: Exponent> Add<&'a Laurent<E>> for &'a Laurent<E> {
    type Output = Laurent<E>;
    fn add(self, o: &Laurent<E>) -> Laurent<E> {
        Laurent { terms: Laurent::merge(&self.terms, &o.terms, false) }
    }
}

impl<'a, E: Exponent> Sub<&'a Laurent<E>> for &'a Laurent<E> {
    type Output = Laurent<E>;
    fn sub(self, o: &Laurent<E>) -> Laurent<E> {
        Laurent { terms: Laurent::merge(&self.terms, &o.terms, true) }
    }
}

impl<E: Exponent> Add for Laurent<E> {
    type Output = Laurent<E>;
    fn add(self, o: Laurent<E>) -> Laurent<E> {
        &self + &o
    }
}

impl<E: Exponent> Sub for Laurent<E> {
    type Output = Laurent<E>;
    fn sub(self, o: Laurent<E>) -> Laurent<E> {
        &self - &o
    }
}

impl<E: Exponent> AddAssign<&Laurent<E>> for Laurent<E> {
    fn add_assign(&mut self, o: &Laurent<E>) {
        if o.terms.is_empty() {
            return;
        }
        if self.terms.is_empty() {
            self.terms = o.terms.clone();
            return;
        }
        self.terms = Laurent::merge(&self.terms, &o.terms, false);
    }
}

impl<E: Exponent> SubAssign<&Laurent<E>> for Laurent<E> {
    fn sub_assign(&mut self, o: &Laurent<E>) {
        if o.terms.is_empty() {
            return;
        }
        self.terms = Laurent::merge(&self.terms, &o.terms, true);
    }
}

impl<E: Exponent> Neg for &Laurent<E> {
    type Output = Laurent<E>;
    fn neg(self) -> Laurent<E> {
        Laurent { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl<E: Exponent> Neg for Laurent<E> {
    type Output = Laurent<E>;
    fn neg(self) -> Laurent<E> {
        -&self
    }
}

impl<'a, E: Exponent> Mul<&'a Laurent<E>> for &'a Laurent<E> {
    type Output = Laurent<E>;
    fn mul(self, o: &Laurent<E>) -> Laurent<E> {
        if self.terms.is_empty() || o.terms.is_empty() {
            return Laurent::zero();
        }
        if o.terms.len() == 1 {
            return self.mul_monomial(o.terms[0].0, &o.terms[0].1);
        }
        if self.terms.len() == 1 {
            return o.mul_monomial(self.terms[0].0, &self.terms[0].1);
        }
        let mut v = Vec::with_capacity(self.terms.len() * o.terms.len());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                v.push((*e1 + *e2, c1 * c2));
            }
        }
        Laurent::normalize(&mut v);
        Laurent { terms: v }
    }
}

impl<E: Exponent> Mul for Laurent<E> {
    type Output = Laurent<E>;
    fn mul(self, o: Laurent<E>) -> Laurent<E> {
        &self * &o
    }
}

/// `V = v^(1,0)`.
pub fn big_v() -> BiLaurent {
    BiLaurent::monomial(GammaExp::new(1, 0), 1)
}

/// `v = v^(0,1)`.
pub fn small_v() -> BiLaurent {
    BiLaurent::monomial(GammaExp::new(0, 1), 1)
}

/// `v^e - v^-e`, the coefficient appearing in the quadratic relation.
pub fn quadratic_coeff<E: Exponent>(e: E) -> Laurent<E> {
    Laurent::from_terms([(e, 1), (-e, -1)])
}

/// Element of `A (x)_Z A`, represented on pairs of exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tensor<E: Ord> {
    terms: BTreeMap<(E, E), BigInt>,
}

impl<E: Exponent> Tensor<E> {
    pub fn new() -> Self {
        Tensor { terms: BTreeMap::new() }
    }

    /// Adds `p (x) q`.
    pub fn add_product(&mut self, p: &Laurent<E>, q: &Laurent<E>) {
        for (e1, c1) in p.terms() {
            for (e2, c2) in q.terms() {
                let slot = self.terms.entry((*e1, *e2)).or_insert_with(BigInt::zero);
                *slot += c1 * c2;
                if slot.is_zero() {
                    self.terms.remove(&(*e1, *e2));
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(E, E), &BigInt)> {
        self.terms.iter()
    }
}

impl<E: Exponent> fmt::Display for Tensor<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|((a, b), c)| format!("{}(x){}", Laurent::monomial(*a, c.clone()), Laurent::<E>::monomial(*b, 1)))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::cmp::Ordering;

    fn g(t: i64, s: i64) -> GammaExp {
        GammaExp::new(t, s)
    }

    #[test]
    fn lex_examples() {
        assert_eq!(lex_compare(g(0, 5), g(1, -100)), Ordering::Less);
        assert_eq!(lex_compare(g(1, 2), g(1, 2)), Ordering::Equal);
        assert_eq!(lex_compare(g(1, 3), g(1, 2)), Ordering::Greater);
    }

    #[test]
    fn products() {
        let vv = &big_v() * &small_v();
        assert_eq!(vv, BiLaurent::monomial(g(1, 1), 1));
        let d = &big_v() - &big_v().bar();
        let sq = &d * &d;
        let expect = BiLaurent::from_terms([(g(2, 0), 1), (g(0, 0), -2), (g(-2, 0), 1)]);
        assert_eq!(sq, expect);
        assert!((&BiLaurent::zero() * &d).is_zero());
    }

    #[test]
    fn degree_and_valuation() {
        let p = &big_v() + &small_v();
        assert_eq!(p.deg(), Degree::Finite(g(1, 0)));
        assert_eq!(p.val(), Valuation::Finite(g(0, 1)));
        assert_eq!(BiLaurent::zero().deg(), Degree::NegInfinity);
        assert_eq!(BiLaurent::zero().val(), Valuation::PosInfinity);
        assert_eq!(p.bar().deg(), Degree::Finite(g(0, -1)));
        assert!(Degree::NegInfinity < Degree::Finite(g(-100, -100)));
    }

    #[test]
    fn bar_examples() {
        assert_eq!(big_v().bar(), BiLaurent::monomial(g(-1, 0), 1));
        let p = &BiLaurent::constant(2) + &small_v();
        let q = &BiLaurent::constant(2) + &small_v().bar();
        assert_eq!(p.bar(), q);
    }

    #[test]
    fn sign_predicates() {
        let p = &big_v().bar() + &small_v().bar();
        assert!(p.strictly_negative());
        assert!(!(&small_v().bar() * &big_v()).strictly_negative());
        assert!(BiLaurent::zero().strictly_negative());
        assert!(BiLaurent::one().nonneg_with_unit_constant());
        assert!((&BiLaurent::one() + &big_v()).nonneg_with_unit_constant());
        assert!(!BiLaurent::constant(2).nonneg_with_unit_constant());
        assert!(!BiLaurent::zero().nonneg_with_unit_constant());
    }

    #[test]
    fn rendering() {
        let d = &big_v() - &big_v().bar();
        assert_eq!(d.to_string(), "V - V^-1");
        assert_eq!(small_v().bar().to_string(), "v^-1");
        assert_eq!(BiLaurent::zero().to_string(), "0");
        let p = BiLaurent::from_terms([(g(2, -1), 3), (g(0, 0), -1), (g(0, -2), -2)]);
        assert_eq!(p.to_string(), "3*V^2*v^-1 - 1 - 2*v^-2");
        assert_eq!(BiLaurent::monomial(g(1, 1), -1).to_string(), "-V*v");
        assert_eq!(MonoLaurent::from_terms([(2, 1), (-1, 4)]).to_string(), "v^2 + 4*v^-1");
    }

    #[test]
    fn tensor_cancellation() {
        let mut t = Tensor::new();
        t.add_product(&big_v(), &small_v());
        assert!(!t.is_zero());
        t.add_product(&-big_v(), &small_v());
        assert!(t.is_zero());
    }
}
