//! Structure constants `C_x C_y = sum_z h_{x,y,z} C_z` and the invariants
//! read off them: the function `a`, the coefficients `gamma`, `Delta`,
//! `n_z` and the set `D`; also the expansions of `T_{w_0}^m C_y`.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::hecke::HeckeElem;
use crate::kl::KlTable;
use crate::laurent::{Degree, Exponent, Laurent};
use crate::par;

pub struct StructTable<E: Exponent> {
    size: usize,
    h: Vec<HeckeElem<E>>,
}

impl<E: Exponent> StructTable<E> {
    /// All `|W|^2` products. Each column `y` shares the translates `T_u C_y`.
    pub fn build(table: &KlTable<E>) -> Self {
        let size = table.len();
        let alg = table.algebra();
        let cols: Vec<Vec<HeckeElem<E>>> = par::map_range(size, |y| {
            let translates = alg.all_left_translates(table.c(y));
            (0..size)
                .map(|x| {
                    let mut prod = HeckeElem::zero();
                    for (u, p) in table.c(x).iter() {
                        prod.add_scaled(&translates[u], p);
                    }
                    table.to_c_basis(&prod)
                })
                .collect()
        });
        let mut h = vec![HeckeElem::zero(); size * size];
        for (y, col) in cols.into_iter().enumerate() {
            for (x, e) in col.into_iter().enumerate() {
                h[x * size + y] = e;
            }
        }
        StructTable { size, h }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// `C_x C_y` in the `C` basis.
    pub fn product(&self, x: usize, y: usize) -> &HeckeElem<E> {
        &self.h[x * self.size + y]
    }

    /// `h_{x,y,z}`.
    pub fn h(&self, x: usize, y: usize, z: usize) -> Laurent<E> {
        self.product(x, y).coeff(z)
    }

    pub fn h_ref(&self, x: usize, y: usize, z: usize) -> Option<&Laurent<E>> {
        self.product(x, y).coeff_ref(z)
    }
}

/// Per-element invariants derived from the structure constants and from
/// `tau(C_z) = p*_{1,z}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AFunctionData<E> {
    pub a: Vec<E>,
    pub delta: Vec<E>,
    pub n: Vec<BigInt>,
    pub in_d: Vec<bool>,
}

impl<E: Exponent> AFunctionData<E> {
    pub fn compute(table: &KlTable<E>, st: &StructTable<E>) -> Result<Self> {
        let size = table.len();
        let mut a: Vec<Option<E>> = vec![None; size];
        for x in 0..size {
            for y in 0..size {
                for (z, h) in st.product(x, y).iter() {
                    if let Degree::Finite(d) = h.deg() {
                        if a[z].is_none_or(|cur| d > cur) {
                            a[z] = Some(d);
                        }
                    }
                }
            }
        }
        let a: Vec<E> = a
            .into_iter()
            .enumerate()
            .map(|(z, d)| d.ok_or_else(|| Error::Consistency(format!("C_{z} never occurs in a product"))))
            .collect::<Result<_>>()?;
        let mut delta = Vec::with_capacity(size);
        let mut n = Vec::with_capacity(size);
        for z in 0..size {
            let p = table.p_star(table.algebra().group().identity(), z);
            match p.deg() {
                Degree::Finite(d) => {
                    delta.push(-d);
                    n.push(p.coeff(d));
                }
                Degree::NegInfinity => {
                    return Err(Error::Consistency(format!("tau(C_{z}) vanishes")));
                }
            }
        }
        let in_d = (0..size).map(|z| a[z] == delta[z]).collect();
        Ok(AFunctionData { a, delta, n, in_d })
    }

    /// `gamma_{x,y,z}`: the coefficient of `v^{a(z^-1)}` in `h_{x,y,z^-1}`.
    pub fn gamma(&self, table: &KlTable<E>, st: &StructTable<E>, x: usize, y: usize, z: usize) -> BigInt {
        let zi = table.algebra().group().inverse(z);
        st.h_ref(x, y, zi).map_or_else(BigInt::zero, |h| h.coeff(self.a[zi]))
    }

    pub fn d_elements(&self) -> Vec<usize> {
        (0..self.in_d.len()).filter(|&z| self.in_d[z]).collect()
    }
}

/// `max_{x,y} deg xi_{x,y,z}` and the coefficient at `v^{a(z)}` for products
/// `X_x Y_y = sum xi_{x,y,z} C_z` of two families unitriangular over `(T_w)`.
pub struct BasisChange<E> {
    pub a: Vec<Option<E>>,
    /// `top[x][y]` lists `(z, coefficient of v^{a(z)} in xi_{x,y,z})`.
    pub top: Vec<Vec<Vec<(usize, BigInt)>>>,
}

pub fn products_in_c_basis<E: Exponent>(
    table: &KlTable<E>,
    xs: &[HeckeElem<E>],
    ys: &[HeckeElem<E>],
    a: &[E],
) -> BasisChange<E> {
    let alg = table.algebra();
    let prods: Vec<Vec<HeckeElem<E>>> =
        par::map_range(xs.len(), |x| ys.iter().map(|y| table.to_c_basis(&alg.mul(&xs[x], y))).collect());
    let mut amax: Vec<Option<E>> = vec![None; table.len()];
    for row in &prods {
        for p in row {
            for (z, c) in p.iter() {
                if let Degree::Finite(d) = c.deg() {
                    if amax[z].is_none_or(|cur| d > cur) {
                        amax[z] = Some(d);
                    }
                }
            }
        }
    }
    let top = prods
        .iter()
        .map(|row| {
            row.iter()
                .map(|p| p.iter().map(|(z, c)| (z, c.coeff(a[z]))).filter(|(_, k)| !k.is_zero()).collect())
                .collect()
        })
        .collect();
    BasisChange { a: amax, top }
}

/// `T_{w_0}^m C_y` in the `C` basis; negative powers use `T_{w_0}^{-1}`.
pub fn tw0_expand<E: Exponent>(table: &KlTable<E>, m: i64, y: usize) -> HeckeElem<E> {
    let alg = table.algebra();
    let w0 = alg.group().longest();
    let step = if m >= 0 { HeckeElem::basis(w0) } else { alg.invert_basis(w0) };
    let mut h = table.c(y).clone();
    for _ in 0..m.unsigned_abs() {
        h = alg.mul(&step, &h);
    }
    table.to_c_basis(&h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterGroup;
    use crate::hecke::HeckeAlgebra;
    use crate::laurent::{big_v, GammaExp};
    use crate::perm::SignedPerm;
    use std::sync::Arc;

    fn setup(n: usize) -> (KlTable<GammaExp>, StructTable<GammaExp>, AFunctionData<GammaExp>) {
        let alg = Arc::new(HeckeAlgebra::asymptotic(Arc::new(CoxeterGroup::type_b(n))));
        let t = KlTable::build(alg).unwrap();
        let st = StructTable::build(&t);
        let a = AFunctionData::compute(&t, &st).unwrap();
        (t, st, a)
    }

    #[test]
    fn rank_two_values() {
        let (t, st, af) = setup(2);
        let g = t.algebra().group();
        let ti = g.index_of(&SignedPerm::parse_word(2, "t").unwrap()).unwrap();
        assert_eq!(st.h(ti, ti, ti), &big_v() + &big_v().bar());
        assert_eq!(af.a[0], GammaExp::new(0, 0));
        assert_eq!(af.a[g.longest()], GammaExp::new(2, 2));
        assert_eq!(af.a[ti], GammaExp::new(1, 0));
        assert_eq!(af.delta[ti], GammaExp::new(1, 0));
        assert_eq!(af.n[ti], BigInt::from(1));
        assert!(af.in_d[ti] && af.in_d[0]);
        assert_eq!(af.gamma(&t, &st, ti, ti, ti), BigInt::from(1));
        for z in 0..g.len() {
            assert!(st.h(0, z, z).is_one());
        }
    }

    #[test]
    fn structure_constants_bar_invariant_and_bounded() {
        let (t, st, _) = setup(2);
        let alg = t.algebra();
        for x in 0..t.len() {
            for y in 0..t.len() {
                let bound = alg.weight(x).min(alg.weight(y));
                for (_, h) in st.product(x, y).iter() {
                    assert!(h.is_bar_invariant());
                    assert!(h.deg().finite().unwrap() <= bound);
                }
                let direct = t.to_c_basis(&alg.mul(t.c(x), t.c(y)));
                assert_eq!(&direct, st.product(x, y));
            }
        }
    }

    #[test]
    fn tw0_powers() {
        let (t, _, _) = setup(2);
        for y in 0..t.len() {
            assert_eq!(tw0_expand(&t, 0, y), HeckeElem::basis(y));
            let up = t.from_c_basis(&tw0_expand(&t, 1, y));
            let back = t.to_c_basis(&t.algebra().mul(&t.algebra().invert_basis(t.len() - 1), &up));
            assert_eq!(back, HeckeElem::basis(y));
        }
    }
}
