//! The Kazhdan-Lusztig basis `(C_w)`: the unique bar-invariant elements with
//! `C_w in T_w + sum_{y<w} A_{<0} T_y`.
//!
//! The default construction solves bar-invariance directly. Writing
//! `bar(T_y) = sum_x r_{x,y} T_x`, the condition on `C_w = sum p*_{y,w} T_y`
//! reads `p*_{x,w} - bar(p*_{x,w}) = sum_{x<y<=w} r_{x,y} bar(p*_{y,w})`, so
//! going down from `w` each `p*_{x,w}` is the strictly negative part of a
//! known antisymmetric polynomial. The descent constructions build
//! `C_s C_{sw}` (or `C_{ws} C_s`) and strip bar-invariant corrections; they
//! serve as independent cross-checks.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hecke::{Filtration, HeckeAlgebra, HeckeElem};
use crate::laurent::{Exponent, Laurent};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KlMethod {
    BarCorrection,
    LeftDescent,
    RightDescent,
}

pub struct KlTable<E: Exponent> {
    algebra: Arc<HeckeAlgebra<E>>,
    c: Vec<HeckeElem<E>>,
}

/// `(v^e + v^-e)` weighted symmetrisation of the non-negative part of `c`:
/// the unique bar-invariant `m` with `c - m` strictly negative.
fn positive_correction<E: Exponent>(c: &Laurent<E>) -> Laurent<E> {
    let mut m = Laurent::zero();
    for (e, k) in c.terms() {
        if *e < E::ZERO {
            break;
        }
        m += &Laurent::monomial(*e, k.clone());
        if *e > E::ZERO {
            m += &Laurent::monomial(-*e, k.clone());
        }
    }
    m
}

impl<E: Exponent> KlTable<E> {
    pub fn build(algebra: Arc<HeckeAlgebra<E>>) -> Result<Self> {
        Self::build_with(algebra, KlMethod::BarCorrection, None)
    }

    /// Builds the table with the given method. `order` must list every
    /// element index once, in an order compatible with the Bruhat order
    /// (for instance non-decreasing length); it defaults to index order.
    pub fn build_with(algebra: Arc<HeckeAlgebra<E>>, method: KlMethod, order: Option<&[usize]>) -> Result<Self> {
        let size = algebra.group().len();
        let order: Vec<usize> = match order {
            Some(o) => {
                check_order(&algebra, o)?;
                o.to_vec()
            }
            None => (0..size).collect(),
        };
        let mut c: Vec<Option<HeckeElem<E>>> = vec![None; size];
        for &w in &order {
            let cw = match method {
                KlMethod::BarCorrection => bar_correction(&algebra, w, &order)?,
                KlMethod::LeftDescent | KlMethod::RightDescent => {
                    descent(&algebra, w, method == KlMethod::LeftDescent, &c)?
                }
            };
            c[w] = Some(cw);
        }
        let c = c.into_iter().map(|x| x.expect("every element processed")).collect();
        Ok(KlTable { algebra, c })
    }

    pub fn algebra(&self) -> &HeckeAlgebra<E> {
        &self.algebra
    }

    pub fn algebra_arc(&self) -> &Arc<HeckeAlgebra<E>> {
        &self.algebra
    }

    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }

    /// `C_w` in the `T` basis.
    pub fn c(&self, w: usize) -> &HeckeElem<E> {
        &self.c[w]
    }

    pub fn p_star(&self, y: usize, w: usize) -> Laurent<E> {
        self.c[w].coeff(y)
    }

    /// `p_{y,w} = v^{L(w)-L(y)} p*_{y,w}`.
    pub fn p(&self, y: usize, w: usize) -> Laurent<E> {
        let shift = self.algebra.weight(w) - self.algebra.weight(y);
        self.p_star(y, w).shift(shift)
    }

    /// Rewrites an element given in the `T` basis in the `C` basis.
    pub fn to_c_basis(&self, h: &HeckeElem<E>) -> HeckeElem<E> {
        let mut rest = h.clone();
        let mut out = HeckeElem::zero();
        while let Some((u, c)) = rest.top() {
            let c = c.clone();
            rest.sub_scaled(&self.c[u], &c);
            out.add_term(u, &c);
        }
        out
    }

    /// Rewrites an element given in the `C` basis in the `T` basis.
    pub fn from_c_basis(&self, h: &HeckeElem<E>) -> HeckeElem<E> {
        let mut out = HeckeElem::zero();
        for (u, c) in h.iter() {
            out.add_scaled(&self.c[u], c);
        }
        out
    }

    /// `Pi^C_f(h)`: keeps the `C`-coordinates of `h` whose `ell_t` lies in
    /// `f`, returned in the `T` basis.
    pub fn project_c(&self, h: &HeckeElem<E>, f: Filtration) -> HeckeElem<E> {
        let g = self.algebra.group();
        self.from_c_basis(&self.to_c_basis(h).filter(|w| f.contains(g.t_length(w))))
    }

    /// `C_x C_y` in the `C` basis.
    pub fn mul_c(&self, x: usize, y: usize) -> HeckeElem<E> {
        self.to_c_basis(&self.algebra.mul(&self.c[x], &self.c[y]))
    }

    /// `C_s C_y` in the `C` basis, for the local generator `g`.
    pub fn gen_times_c(&self, g: usize, y: usize) -> HeckeElem<E> {
        let cy = &self.c[y];
        let mut h = self.algebra.mul_gen_left(g, cy);
        h.add_scaled(cy, &Laurent::monomial(-self.algebra.gen_weight(g), 1));
        self.to_c_basis(&h)
    }

    /// `C_y C_s` in the `C` basis.
    pub fn c_times_gen(&self, y: usize, g: usize) -> HeckeElem<E> {
        let cy = &self.c[y];
        let mut h = self.algebra.mul_gen_right(cy, g);
        h.add_scaled(cy, &Laurent::monomial(-self.algebra.gen_weight(g), 1));
        self.to_c_basis(&h)
    }

    /// Checks both defining conditions for every `C_w`, plus positivity of
    /// the constant term of `p_{y,w}`.
    pub fn verify(&self) -> Result<()> {
        let g = self.algebra.group();
        for w in 0..self.c.len() {
            let cw = &self.c[w];
            if !cw.coeff(w).is_one() {
                return Err(Error::Consistency(format!("C_{} has leading coefficient {}", g.elem(w), cw.coeff(w))));
            }
            for (y, p) in cw.iter() {
                if y == w {
                    continue;
                }
                if !g.bruhat_leq(y, w) {
                    return Err(Error::Consistency(format!(
                        "p*_{{{},{}}} nonzero off the Bruhat interval",
                        g.elem(y),
                        g.elem(w)
                    )));
                }
                if !p.strictly_negative() {
                    return Err(Error::Consistency(format!("p*_{{{},{}}} = {p} is not in A_<0", g.elem(y), g.elem(w))));
                }
                if !self.p(y, w).nonneg_with_unit_constant() {
                    return Err(Error::Consistency(format!("p_{{{},{}}} is not in 1 + A_>0", g.elem(y), g.elem(w))));
                }
            }
            if &self.algebra.bar(cw) != cw {
                return Err(Error::Consistency(format!("C_{} is not bar-invariant", g.elem(w))));
            }
        }
        Ok(())
    }

    /// Tab-separated dump of every nonzero `p*_{y,w}`, with a header line.
    pub fn to_tsv(&self) -> String {
        let g = self.algebra.group();
        let mut s = String::from("w\ty\tp_star\n");
        for w in 0..self.c.len() {
            for (y, p) in self.c[w].iter() {
                s.push_str(&format!("{}\t{}\t{}\n", g.elem(w), g.elem(y), p));
            }
        }
        s
    }

    /// Whether two tables hold identical polynomials.
    pub fn same_polynomials(&self, other: &KlTable<E>) -> bool {
        self.c == other.c
    }
}

fn check_order<E: Exponent>(algebra: &HeckeAlgebra<E>, order: &[usize]) -> Result<()> {
    let g = algebra.group();
    let mut seen = vec![false; g.len()];
    for &w in order {
        if w >= g.len() || std::mem::replace(&mut seen[w], true) {
            return Err(Error::Precondition(format!("order is not a permutation of 0..{}", g.len())));
        }
    }
    if seen.iter().any(|s| !s) || order.windows(2).any(|p| g.length(p[0]) > g.length(p[1])) {
        return Err(Error::Precondition("order must list every element by non-decreasing length".into()));
    }
    Ok(())
}

fn bar_correction<E: Exponent>(algebra: &HeckeAlgebra<E>, w: usize, order: &[usize]) -> Result<HeckeElem<E>> {
    let group = algebra.group();
    let bars = algebra.bar_basis();
    let mut acc: Vec<Laurent<E>> = vec![Laurent::zero(); group.len()];
    let mut cw = HeckeElem::basis(w);
    for (x, r) in bars[w].iter() {
        if x != w {
            acc[x] += r;
        }
    }
    let below = group.bruhat_below(w);
    for &x in order.iter().rev() {
        if x == w || group.length(x) >= group.length(w) {
            continue;
        }
        let q = std::mem::take(&mut acc[x]);
        if !below.contains(x) {
            if !q.is_zero() {
                return Err(Error::Consistency(format!(
                    "nonzero correction {q} at {} outside the Bruhat interval of {}",
                    group.elem(x),
                    group.elem(w)
                )));
            }
            continue;
        }
        let p = q.below(E::ZERO);
        if &p - &p.bar() != q {
            return Err(Error::Consistency(format!(
                "correction {q} at ({}, {}) is not of the form p - bar(p)",
                group.elem(x),
                group.elem(w)
            )));
        }
        if p.is_zero() {
            continue;
        }
        let pb = p.bar();
        for (u, r) in bars[x].iter() {
            if u != x {
                acc[u] += &(&pb * r);
            }
        }
        cw.add_term(x, &p);
    }
    Ok(cw)
}

fn descent<E: Exponent>(
    algebra: &HeckeAlgebra<E>,
    w: usize,
    left: bool,
    done: &[Option<HeckeElem<E>>],
) -> Result<HeckeElem<E>> {
    let group = algebra.group();
    let step = if left { group.left_descent(w) } else { group.right_descent(w) };
    let Some(g) = step else {
        return Ok(HeckeElem::basis(w));
    };
    let prev = if left { group.left_mul(g, w) } else { group.right_mul(g, w) };
    let missing = || Error::Precondition(format!("C_{} needed before C_{}", group.elem(prev), group.elem(w)));
    let cp = done[prev].as_ref().ok_or_else(missing)?;
    let mut h = if left { algebra.mul_gen_left(g, cp) } else { algebra.mul_gen_right(cp, g) };
    h.add_scaled(cp, &Laurent::monomial(-algebra.gen_weight(g), 1));
    let mut cursor = w;
    while let Some((y, c)) = h.last_below(cursor) {
        cursor = y;
        let m = positive_correction(c);
        if m.is_zero() {
            continue;
        }
        let cy = done[y].as_ref().ok_or_else(|| Error::Precondition(format!("C_{} needed early", group.elem(y))))?;
        h.sub_scaled(cy, &m);
    }
    if !h.coeff(w).is_one() {
        return Err(Error::Consistency(format!("C_s C_sw has top coefficient {} at {}", h.coeff(w), group.elem(w))));
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterGroup;
    use crate::laurent::{big_v, small_v, BiLaurent, GammaExp};
    use crate::perm::SignedPerm;

    fn table(n: usize) -> KlTable<GammaExp> {
        let alg = Arc::new(HeckeAlgebra::asymptotic(Arc::new(CoxeterGroup::type_b(n))));
        KlTable::build(alg).unwrap()
    }

    fn idx(t: &KlTable<GammaExp>, word: &str) -> usize {
        let g = t.algebra().group();
        g.index_of(&SignedPerm::parse_word(g.rank(), word).unwrap()).unwrap()
    }

    #[test]
    fn small_basis_elements() {
        let t = table(2);
        assert_eq!(t.c(0), &HeckeElem::basis(0));
        let ct = HeckeElem::basis(idx(&t, "t")).add(&HeckeElem::term(0, big_v().bar()));
        assert_eq!(t.c(idx(&t, "t")), &ct);
        let s = idx(&t, "s1");
        assert_eq!(t.p_star(0, s), small_v().bar());
        t.verify().unwrap();
    }

    #[test]
    fn longest_symmetric_element() {
        let t = table(3);
        let g = t.algebra().group();
        let s3 = idx(&t, "s1 s2 s1");
        let ls = g.length(s3) as i64;
        for u in 0..g.len() {
            let expect = if g.elem(u).is_unsigned() {
                BiLaurent::monomial(GammaExp::new(0, g.length(u) as i64 - ls), 1)
            } else {
                BiLaurent::zero()
            };
            assert_eq!(t.p_star(u, s3), expect);
        }
    }

    #[test]
    fn methods_agree() {
        for n in 1..=3 {
            let alg = Arc::new(HeckeAlgebra::asymptotic(Arc::new(CoxeterGroup::type_b(n))));
            let a = KlTable::build_with(alg.clone(), KlMethod::BarCorrection, None).unwrap();
            let b = KlTable::build_with(alg.clone(), KlMethod::LeftDescent, None).unwrap();
            let c = KlTable::build_with(alg, KlMethod::RightDescent, None).unwrap();
            assert!(a.same_polynomials(&b));
            assert!(a.same_polynomials(&c));
            a.verify().unwrap();
        }
    }

    #[test]
    fn product_of_generators() {
        let t = table(2);
        let ti = idx(&t, "t");
        let prod = t.mul_c(ti, ti);
        assert_eq!(prod, HeckeElem::term(ti, &big_v() + &big_v().bar()));
        assert_eq!(t.gen_times_c(0, ti), prod);
        let x = t.from_c_basis(&prod);
        assert_eq!(t.to_c_basis(&x), prod);
    }

    #[test]
    fn bad_order_rejected() {
        let alg = Arc::new(HeckeAlgebra::asymptotic(Arc::new(CoxeterGroup::type_b(2))));
        let order: Vec<usize> = (0..8).rev().collect();
        assert!(KlTable::build_with(alg, KlMethod::BarCorrection, Some(&order)).is_err());
    }
}
