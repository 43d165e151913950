//! The Hecke algebra of a finite parabolic subgroup of `W_n` over a Laurent
//! polynomial ring, in the standard basis `(T_w)`.
//!
//! The defining relations are `T_w T_w' = T_ww'` when lengths add and
//! `T_s^2 = 1 + (v^L(s) - v^-L(s)) T_s`. Left multiplication by a generator
//! is the only place where the length case analysis happens; everything
//! else folds over reduced words.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::coxeter::CoxeterGroup;
use crate::error::{Error, Result};
use crate::laurent::{quadratic_coeff, Exponent, GammaExp, Laurent};
use crate::perm::{GenIndex, SignedPerm};

/// An element `sum a_w T_w`, keyed by element index in its group.
#[derive(Clone, PartialEq, Eq)]
pub struct HeckeElem<E> {
    terms: BTreeMap<usize, Laurent<E>>,
}

impl<E: Exponent> Default for HeckeElem<E> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<E: Exponent> HeckeElem<E> {
    pub fn zero() -> Self {
        HeckeElem { terms: BTreeMap::new() }
    }

    pub fn basis(w: usize) -> Self {
        Self::term(w, Laurent::one())
    }

    pub fn term(w: usize, c: Laurent<E>) -> Self {
        let mut h = Self::zero();
        h.add_term(w, &c);
        h
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: usize) -> Laurent<E> {
        self.terms.get(&w).cloned().unwrap_or_default()
    }

    pub fn coeff_ref(&self, w: usize) -> Option<&Laurent<E>> {
        self.terms.get(&w)
    }

    /// Terms in increasing index order.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (usize, &Laurent<E>)> {
        self.terms.iter().map(|(w, c)| (*w, c))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.terms.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The term with the largest index, which has maximal length in the support.
    pub fn top(&self) -> Option<(usize, &Laurent<E>)> {
        self.terms.iter().next_back().map(|(w, c)| (*w, c))
    }

    /// The term with the largest index strictly below `bound`.
    pub fn last_below(&self, bound: usize) -> Option<(usize, &Laurent<E>)> {
        self.terms.range(..bound).next_back().map(|(w, c)| (*w, c))
    }

    pub fn add_term(&mut self, w: usize, c: &Laurent<E>) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn sub_term(&mut self, w: usize, c: &Laurent<E>) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w).or_default();
        *slot -= c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add_scaled(&mut self, other: &HeckeElem<E>, c: &Laurent<E>) {
        if c.is_zero() {
            return;
        }
        for (w, a) in &other.terms {
            self.add_term(*w, &(a * c));
        }
    }

    pub fn sub_scaled(&mut self, other: &HeckeElem<E>, c: &Laurent<E>) {
        if c.is_zero() {
            return;
        }
        for (w, a) in &other.terms {
            self.sub_term(*w, &(a * c));
        }
    }

    pub fn add(&self, other: &HeckeElem<E>) -> HeckeElem<E> {
        let mut out = self.clone();
        for (w, a) in &other.terms {
            out.add_term(*w, a);
        }
        out
    }

    pub fn sub(&self, other: &HeckeElem<E>) -> HeckeElem<E> {
        let mut out = self.clone();
        for (w, a) in &other.terms {
            out.sub_term(*w, a);
        }
        out
    }

    pub fn scale(&self, c: &Laurent<E>) -> HeckeElem<E> {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    /// Keeps the terms whose index satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(usize) -> bool) -> HeckeElem<E> {
        HeckeElem { terms: self.terms.iter().filter(|(w, _)| keep(**w)).map(|(w, c)| (*w, c.clone())).collect() }
    }

    pub fn map_coeffs<F: Exponent>(&self, f: impl Fn(&Laurent<E>) -> Laurent<F>) -> HeckeElem<F> {
        let mut out = HeckeElem::zero();
        for (w, c) in &self.terms {
            out.add_term(*w, &f(c));
        }
        out
    }
}

impl<E: Exponent> fmt::Debug for HeckeElem<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter().map(|(w, c)| (w, c.to_string()))).finish()
    }
}

/// Which `ell_t` layers a projection keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FilterMode {
    Exact,
    AtMost,
    AtLeast,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Filtration {
    pub level: usize,
    pub mode: FilterMode,
}

impl Filtration {
    pub fn exact(level: usize) -> Self {
        Filtration { level, mode: FilterMode::Exact }
    }

    pub fn at_most(level: usize) -> Self {
        Filtration { level, mode: FilterMode::AtMost }
    }

    pub fn at_least(level: usize) -> Self {
        Filtration { level, mode: FilterMode::AtLeast }
    }

    pub fn contains(&self, t_length: usize) -> bool {
        match self.mode {
            FilterMode::Exact => t_length == self.level,
            FilterMode::AtMost => t_length <= self.level,
            FilterMode::AtLeast => t_length >= self.level,
        }
    }
}

pub struct HeckeAlgebra<E> {
    group: Arc<CoxeterGroup>,
    weights: Vec<E>,
    quad: Vec<Laurent<E>>,
    bar_basis: OnceLock<Vec<HeckeElem<E>>>,
}

impl<E: Exponent> fmt::Debug for HeckeAlgebra<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HeckeAlgebra").field("group", &self.group).field("weights", &self.weights).finish()
    }
}

/// `L(t) = (1,0)`, `L(s_i) = (0,1)`.
pub fn asymptotic_weight(g: GenIndex) -> GammaExp {
    if g.is_t() {
        GammaExp::new(1, 0)
    } else {
        GammaExp::new(0, 1)
    }
}

impl HeckeAlgebra<GammaExp> {
    /// The two-parameter algebra with the asymptotic weight function.
    pub fn asymptotic(group: Arc<CoxeterGroup>) -> Self {
        Self::with_weights(group, asymptotic_weight)
    }
}

impl<E: Exponent> HeckeAlgebra<E> {
    pub fn with_weights(group: Arc<CoxeterGroup>, weight: impl Fn(GenIndex) -> E) -> Self {
        let weights: Vec<E> = group.gens().iter().map(|&g| weight(g)).collect();
        let quad = weights.iter().map(|&e| quadratic_coeff(e)).collect();
        HeckeAlgebra { group, weights, quad, bar_basis: OnceLock::new() }
    }

    pub fn group(&self) -> &CoxeterGroup {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<CoxeterGroup> {
        &self.group
    }

    pub fn gen_weight(&self, g: usize) -> E {
        self.weights[g]
    }

    /// `L(w)`, summed along a reduced word.
    pub fn weight(&self, w: usize) -> E {
        self.group.reduced_word(w).iter().fold(E::ZERO, |acc, &g| acc + self.weights[g])
    }

    pub fn basis(&self, w: &SignedPerm) -> Result<HeckeElem<E>> {
        Ok(HeckeElem::basis(self.group.try_index(w)?))
    }

    pub fn one(&self) -> HeckeElem<E> {
        HeckeElem::basis(self.group.identity())
    }

    pub fn scalar(&self, c: Laurent<E>) -> HeckeElem<E> {
        HeckeElem::term(self.group.identity(), c)
    }

    /// `T_s * h` for the local generator `g`.
    pub fn mul_gen_left(&self, g: usize, h: &HeckeElem<E>) -> HeckeElem<E> {
        let mut out = HeckeElem::zero();
        for (w, c) in h.iter() {
            let sw = self.group.left_mul(g, w);
            out.add_term(sw, c);
            if self.group.length(sw) < self.group.length(w) {
                out.add_term(w, &(c * &self.quad[g]));
            }
        }
        out
    }

    /// `h * T_s` for the local generator `g`.
    pub fn mul_gen_right(&self, h: &HeckeElem<E>, g: usize) -> HeckeElem<E> {
        let mut out = HeckeElem::zero();
        for (w, c) in h.iter() {
            let ws = self.group.right_mul(g, w);
            out.add_term(ws, c);
            if self.group.length(ws) < self.group.length(w) {
                out.add_term(w, &(c * &self.quad[g]));
            }
        }
        out
    }

    /// `T_s^{-1} * h = T_s h - (v^L - v^-L) h`.
    pub fn mul_gen_inv_left(&self, g: usize, h: &HeckeElem<E>) -> HeckeElem<E> {
        let mut out = self.mul_gen_left(g, h);
        out.sub_scaled(h, &self.quad[g]);
        out
    }

    /// `T_w * h`, folding over a reduced word of `w`.
    pub fn mul_basis_left(&self, w: usize, h: &HeckeElem<E>) -> HeckeElem<E> {
        let word = self.group.reduced_word(w);
        let mut out = h.clone();
        for &g in word.iter().rev() {
            out = self.mul_gen_left(g, &out);
        }
        out
    }

    /// `h * T_w`.
    pub fn mul_basis_right(&self, h: &HeckeElem<E>, w: usize) -> HeckeElem<E> {
        let word = self.group.reduced_word(w);
        let mut out = h.clone();
        for &g in &word {
            out = self.mul_gen_right(&out, g);
        }
        out
    }

    /// General product. The partial products `T_u * h2` are shared between
    /// support elements through their left descents.
    pub fn mul(&self, h1: &HeckeElem<E>, h2: &HeckeElem<E>) -> HeckeElem<E> {
        let mut memo: HashMap<usize, HeckeElem<E>> = HashMap::new();
        memo.insert(self.group.identity(), h2.clone());
        let mut out = HeckeElem::zero();
        for (u, c) in h1.iter() {
            let tu = self.left_translate(u, &mut memo);
            out.add_scaled(&tu, c);
        }
        out
    }

    fn left_translate(&self, u: usize, memo: &mut HashMap<usize, HeckeElem<E>>) -> HeckeElem<E> {
        if let Some(h) = memo.get(&u) {
            return h.clone();
        }
        let g = self.group.left_descent(u).expect("non-identity element");
        let rest = self.left_translate(self.group.left_mul(g, u), memo);
        let h = self.mul_gen_left(g, &rest);
        memo.insert(u, h.clone());
        h
    }

    /// `T_u * h` for every `u` in the group, indexed by `u`.
    pub fn all_left_translates(&self, h: &HeckeElem<E>) -> Vec<HeckeElem<E>> {
        let size = self.group.len();
        let mut out: Vec<HeckeElem<E>> = Vec::with_capacity(size);
        out.push(h.clone());
        for u in 1..size {
            let g = self.group.left_descent(u).expect("non-identity element");
            let prev = self.group.left_mul(g, u);
            out.push(self.mul_gen_left(g, &out[prev]));
        }
        out
    }

    pub fn mul_all(&self, factors: &[&HeckeElem<E>]) -> HeckeElem<E> {
        factors.iter().fold(self.one(), |acc, f| self.mul(&acc, f))
    }

    /// `T_w^{-1}`, built from `T_s^{-1} = T_s - (v^L(s) - v^-L(s))` along a
    /// reduced word.
    pub fn invert_basis(&self, w: usize) -> HeckeElem<E> {
        let mut h = self.one();
        for &g in &self.group.reduced_word(w) {
            h = self.mul_gen_inv_left(g, &h);
        }
        h
    }

    /// `bar(T_w) = T_{w^{-1}}^{-1}` for every `w`, computed once.
    pub fn bar_basis(&self) -> &[HeckeElem<E>] {
        self.bar_basis.get_or_init(|| {
            let size = self.group.len();
            let mut out: Vec<HeckeElem<E>> = Vec::with_capacity(size);
            out.push(self.one());
            for w in 1..size {
                let g = self.group.left_descent(w).expect("non-identity element");
                let prev = self.group.left_mul(g, w);
                out.push(self.mul_gen_inv_left(g, &out[prev]));
            }
            out
        })
    }

    /// The semilinear involution `sum a_w T_w -> sum bar(a_w) T_{w^-1}^{-1}`.
    pub fn bar(&self, h: &HeckeElem<E>) -> HeckeElem<E> {
        let bars = self.bar_basis();
        let mut out = HeckeElem::zero();
        for (w, c) in h.iter() {
            out.add_scaled(&bars[w], &c.bar());
        }
        out
    }

    /// The symmetrising form: the coefficient of `T_1`.
    pub fn tau(&self, h: &HeckeElem<E>) -> Laurent<E> {
        h.coeff(self.group.identity())
    }

    /// Projection onto `span{T_w : ell_t(w) in f}`.
    pub fn project_t(&self, h: &HeckeElem<E>, f: Filtration) -> HeckeElem<E> {
        h.filter(|w| f.contains(self.group.t_length(w)))
    }

    /// Membership in the ideal spanned by the `C_w` with `ell_t(w) = n`,
    /// tested as `(T_t - V^L(t)) T_sigma h = 0` for every `sigma` in `S_n`.
    pub fn is_in_cn_ideal(&self, h: &HeckeElem<E>) -> Result<bool> {
        let t = self.gen_index(GenIndex::T)?;
        let shift = Laurent::monomial(self.weights[t], 1);
        for sigma in 0..self.group.len() {
            if !self.group.elem(sigma).is_unsigned() {
                continue;
            }
            let x = self.mul_basis_left(sigma, h);
            let mut y = self.mul_gen_left(t, &x);
            y.sub_scaled(&x, &shift);
            if !y.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn gen_index(&self, g: GenIndex) -> Result<usize> {
        self.group
            .local_gen(g)
            .ok_or_else(|| Error::NotInParabolic(format!("generator {g} is not in {:?}", self.group.gens())))
    }

    /// Text form: one `+ (poly) T[window]` line per term in `(length, window)` order.
    pub fn render(&self, h: &HeckeElem<E>) -> String {
        if h.is_zero() {
            return "0\n".to_string();
        }
        let mut s = String::new();
        for (w, c) in h.iter() {
            s.push_str(&format!("+ ({}) T{}\n", c, self.group.elem(w)));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::{big_v, small_v, BiLaurent};

    fn algebra(n: usize) -> HeckeAlgebra<GammaExp> {
        HeckeAlgebra::asymptotic(Arc::new(CoxeterGroup::type_b(n)))
    }

    fn tw(h: &HeckeAlgebra<GammaExp>, s: &str) -> HeckeElem<GammaExp> {
        let n = h.group().rank();
        h.basis(&SignedPerm::parse_word(n, s).unwrap()).unwrap()
    }

    fn idx(h: &HeckeAlgebra<GammaExp>, s: &str) -> usize {
        h.group().index_of(&SignedPerm::parse_word(h.group().rank(), s).unwrap()).unwrap()
    }

    #[test]
    fn quadratic_relations() {
        let h = algebra(2);
        let t = tw(&h, "t");
        let tt = h.mul(&t, &t);
        let expect = h.one().add(&t.scale(&(&big_v() - &big_v().bar())));
        assert_eq!(tt, expect);
        let s = tw(&h, "s1");
        assert_eq!(h.mul(&s, &t), tw(&h, "s1 t"));
        let ss = h.mul(&s, &s);
        assert_eq!(ss, h.one().add(&s.scale(&(&small_v() - &small_v().bar()))));
    }

    #[test]
    fn inverses() {
        let h = algebra(2);
        assert_eq!(h.invert_basis(0), h.one());
        let t_inv = h.invert_basis(idx(&h, "t"));
        let expect = tw(&h, "t").sub(&h.scalar(&big_v() - &big_v().bar()));
        assert_eq!(t_inv, expect);
        for w in 0..h.group().len() {
            assert_eq!(h.mul(&h.invert_basis(w), &HeckeElem::basis(w)), h.one());
            assert_eq!(h.mul(&HeckeElem::basis(w), &h.invert_basis(w)), h.one());
        }
        let st = idx(&h, "s1 t");
        let prod = h.mul(&h.invert_basis(idx(&h, "t")), &h.invert_basis(idx(&h, "s1")));
        assert_eq!(h.invert_basis(st), prod);
    }

    #[test]
    fn bar_involution() {
        let h = algebra(2);
        assert_eq!(h.bar(&h.one()), h.one());
        assert_eq!(h.bar(&tw(&h, "t")), h.invert_basis(idx(&h, "t")));
        let x = tw(&h, "s1 t");
        assert_eq!(h.bar(&h.bar(&x)), x);
        let h3 = algebra(3);
        let a = tw(&h3, "s1 t s2").scale(&(&big_v() + &small_v()));
        let b = tw(&h3, "t s1").add(&tw(&h3, "s2").scale(&BiLaurent::constant(3)));
        assert_eq!(h3.bar(&h3.mul(&a, &b)), h3.mul(&h3.bar(&a), &h3.bar(&b)));
        assert_eq!(h3.bar(&h3.bar(&a)), a);
    }

    #[test]
    fn symmetrising_form() {
        let h = algebra(2);
        let t = tw(&h, "t");
        assert!(h.tau(&t).is_zero());
        assert!(h.tau(&h.mul(&t, &t)).is_one());
        assert!(h.tau(&h.mul(&t, &tw(&h, "s1"))).is_zero());
        let g = h.group();
        for x in 0..g.len() {
            for y in 0..g.len() {
                let v = h.tau(&h.mul(&HeckeElem::basis(x), &HeckeElem::basis(y)));
                assert_eq!(v.is_one(), g.mul(x, y) == 0);
                assert_eq!(v.is_zero(), g.mul(x, y) != 0);
            }
        }
    }

    #[test]
    fn braid_relations_through_words() {
        let h = algebra(3);
        let lhs = h.mul_all(&[&tw(&h, "t"), &tw(&h, "s1"), &tw(&h, "t"), &tw(&h, "s1")]);
        let rhs = h.mul_all(&[&tw(&h, "s1"), &tw(&h, "t"), &tw(&h, "s1"), &tw(&h, "t")]);
        assert_eq!(lhs, rhs);
        let lhs = h.mul_all(&[&tw(&h, "s1"), &tw(&h, "s2"), &tw(&h, "s1")]);
        let rhs = h.mul_all(&[&tw(&h, "s2"), &tw(&h, "s1"), &tw(&h, "s2")]);
        assert_eq!(lhs, rhs);
        assert_eq!(h.mul(&tw(&h, "t"), &tw(&h, "s2")), h.mul(&tw(&h, "s2"), &tw(&h, "t")));
    }

    #[test]
    fn projection_keeps_layers() {
        let h = algebra(2);
        let x = tw(&h, "t").add(&h.scalar(BiLaurent::constant(3)));
        assert_eq!(h.project_t(&x, Filtration::exact(0)), h.scalar(BiLaurent::constant(3)));
        assert_eq!(h.project_t(&x, Filtration::at_least(1)), tw(&h, "t"));
    }

    #[test]
    fn rendering() {
        let h = algebra(1);
        let x = h.invert_basis(1);
        assert_eq!(h.render(&x), "+ (-V + V^-1) T[1]\n+ (1) T[-1]\n");
    }
}
