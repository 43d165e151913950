//! Lusztig's conjectures P1-P15, the degree bounds for `T_{w_0}^m C_y`, and
//! experimental sign data for the action of `T_{w_0}` on left cell modules.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cells::{CellData, CellPartition, Relation};
use crate::coxeter::CoxeterGroup;
use crate::error::Result;
use crate::hecke::HeckeAlgebra;
use crate::kl::KlTable;
use crate::laurent::{Degree, Exponent, GammaExp, Laurent, Tensor};
use crate::perm::GenIndex;
use crate::report::CheckReport;
use crate::structure::{tw0_expand, AFunctionData, StructTable};
use crate::tableau::rs_shape;

/// Seed of the quadruple sample used for P15 when the check is not exhaustive.
pub const P15_SEED: u64 = 0x5eed_0015;

/// A KL table together with everything read off it.
pub struct Invariants<'a, E: Exponent> {
    pub table: &'a KlTable<E>,
    pub st: &'a StructTable<E>,
    pub af: &'a AFunctionData<E>,
    pub cells: &'a CellData,
    gamma: HashMap<(usize, usize, usize), BigInt>,
}

/// How P15 chooses its quadruples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum P15Mode {
    Exhaustive,
    Sample { count: usize, seed: u64 },
}

impl P15Mode {
    /// Exhaustive up to 16 elements, otherwise `10^5` seeded samples.
    pub fn default_for(size: usize) -> Self {
        if size <= 16 {
            P15Mode::Exhaustive
        } else {
            P15Mode::Sample { count: 100_000, seed: P15_SEED }
        }
    }
}

impl<'a, E: Exponent> Invariants<'a, E> {
    pub fn new(table: &'a KlTable<E>, st: &'a StructTable<E>, af: &'a AFunctionData<E>, cells: &'a CellData) -> Self {
        let g = table.algebra().group();
        let mut gamma = HashMap::new();
        for x in 0..table.len() {
            for y in 0..table.len() {
                for (zi, h) in st.product(x, y).iter() {
                    let c = h.coeff(af.a[zi]);
                    if !c.is_zero() {
                        gamma.insert((x, y, g.inverse(zi)), c);
                    }
                }
            }
        }
        Invariants { table, st, af, cells, gamma }
    }

    fn size(&self) -> usize {
        self.table.len()
    }

    fn rank(&self) -> usize {
        self.table.algebra().group().rank()
    }

    fn name(&self, w: usize) -> String {
        self.table.algebra().group().elem(w).to_string()
    }

    fn inv(&self, w: usize) -> usize {
        self.table.algebra().group().inverse(w)
    }

    pub fn gamma(&self, x: usize, y: usize, z: usize) -> BigInt {
        self.gamma.get(&(x, y, z)).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Nonzero `gamma_{x,y,z}` in increasing `(x, y, z)` order.
    pub fn nonzero_gammas(&self) -> Vec<((usize, usize, usize), BigInt)> {
        let mut v: Vec<_> = self.gamma.iter().map(|(k, c)| (*k, c.clone())).collect();
        v.sort();
        v
    }

    pub fn p1(&self) -> CheckReport {
        let mut r = CheckReport::new("P1", self.rank());
        for z in 0..self.size() {
            r.check(self.af.a[z] <= self.af.delta[z], || {
                format!("z = {}: a = {:?}, Delta = {:?}", self.name(z), self.af.a[z], self.af.delta[z])
            });
        }
        r
    }

    pub fn p2(&self) -> CheckReport {
        let mut r = CheckReport::new("P2", self.rank());
        for ((x, y, d), _) in self.nonzero_gammas() {
            if self.af.in_d[d] {
                r.check(x == self.inv(y), || {
                    format!("x = {}, y = {}, d = {}", self.name(x), self.name(y), self.name(d))
                });
            }
        }
        r
    }

    pub fn p3(&self) -> CheckReport {
        let mut r = CheckReport::new("P3", self.rank());
        for y in 0..self.size() {
            let ds: Vec<usize> =
                self.af.d_elements().into_iter().filter(|&d| !self.gamma(self.inv(y), y, d).is_zero()).collect();
            r.check(ds.len() == 1, || format!("y = {}: {} candidates", self.name(y), ds.len()));
        }
        r
    }

    pub fn p4(&self) -> CheckReport {
        let mut r = CheckReport::new("P4", self.rank());
        let pre = &self.cells.two_sided;
        for z in 0..self.size() {
            for zp in pre.below(z).ones() {
                r.check(self.af.a[z] <= self.af.a[zp], || format!("z' = {} <=_LR z = {}", self.name(zp), self.name(z)));
            }
        }
        r
    }

    pub fn p5(&self) -> CheckReport {
        let mut r = CheckReport::new("P5", self.rank());
        for d in self.af.d_elements() {
            for y in 0..self.size() {
                let c = self.gamma(self.inv(y), y, d);
                if c.is_zero() {
                    continue;
                }
                let nd = &self.af.n[d];
                r.check(&c == nd && nd.abs().is_one(), || {
                    format!("d = {}, y = {}: gamma = {c}, n_d = {nd}", self.name(d), self.name(y))
                });
            }
        }
        r
    }

    pub fn p6(&self) -> CheckReport {
        let mut r = CheckReport::new("P6", self.rank());
        let g = self.table.algebra().group();
        for d in self.af.d_elements() {
            r.check(g.elem(d).is_involution(), || format!("d = {}", self.name(d)));
        }
        r
    }

    pub fn p7(&self) -> CheckReport {
        let mut r = CheckReport::new("P7", self.rank());
        for ((x, y, z), c) in self.nonzero_gammas() {
            r.check(self.gamma(y, z, x) == c, || {
                format!("x = {}, y = {}, z = {}", self.name(x), self.name(y), self.name(z))
            });
        }
        r
    }

    pub fn p8(&self) -> CheckReport {
        let mut r = CheckReport::new("P8", self.rank());
        let left = &self.cells.left;
        for ((x, y, z), _) in self.nonzero_gammas() {
            let ok = left.equiv(x, self.inv(y)) && left.equiv(y, self.inv(z)) && left.equiv(z, self.inv(x));
            r.check(ok, || format!("x = {}, y = {}, z = {}", self.name(x), self.name(y), self.name(z)));
        }
        r
    }

    fn same_a_forces_equiv(&self, id: &str, relation: Relation) -> CheckReport {
        let mut r = CheckReport::new(id, self.rank());
        let pre = self.cells.get(relation);
        for z in 0..self.size() {
            for zp in pre.below(z).ones() {
                if self.af.a[z] == self.af.a[zp] {
                    r.check(pre.equiv(z, zp), || format!("z' = {}, z = {}", self.name(zp), self.name(z)));
                }
            }
        }
        r
    }

    pub fn p9(&self) -> CheckReport {
        self.same_a_forces_equiv("P9", Relation::Left)
    }

    pub fn p10(&self) -> CheckReport {
        self.same_a_forces_equiv("P10", Relation::Right)
    }

    pub fn p11(&self) -> CheckReport {
        self.same_a_forces_equiv("P11", Relation::TwoSided)
    }

    /// `a` computed inside every standard parabolic subgroup agrees with `a`
    /// of the whole group.
    pub fn p12(&self) -> Result<CheckReport> {
        let alg = self.table.algebra();
        let g = alg.group();
        let n = g.rank();
        let mut r = CheckReport::new("P12", n);
        let gens = g.gens().to_vec();
        for mask in 0u32..(1 << gens.len()) {
            let sub: Vec<GenIndex> = (0..gens.len()).filter(|i| mask >> i & 1 == 1).map(|i| gens[i]).collect();
            let group = Arc::new(CoxeterGroup::parabolic(n, &sub)?);
            let weights: HashMap<GenIndex, E> =
                gens.iter().enumerate().map(|(i, &gi)| (gi, alg.gen_weight(i))).collect();
            let palg = Arc::new(HeckeAlgebra::with_weights(group, |gi| weights[&gi]));
            let ptable = KlTable::build(palg)?;
            let pst = StructTable::build(&ptable);
            let paf = AFunctionData::compute(&ptable, &pst)?;
            for (i, w) in ptable.algebra().group().elements().iter().enumerate() {
                let j = g.try_index(w)?;
                r.check(paf.a[i] == self.af.a[j], || {
                    format!(
                        "{w} in <{}>: {:?} vs {:?}",
                        sub.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(","),
                        paf.a[i],
                        self.af.a[j]
                    )
                });
            }
        }
        Ok(r)
    }

    pub fn p13(&self) -> CheckReport {
        let mut r = CheckReport::new("P13", self.rank());
        let cells = CellPartition::new(Relation::Left, &self.cells.left);
        for class in &cells.classes {
            let ds: Vec<usize> = class.iter().copied().filter(|&w| self.af.in_d[w]).collect();
            if ds.len() != 1 {
                r.fail(format!("left cell of {} holds {} elements of D", self.name(class[0]), ds.len()));
                continue;
            }
            r.check(true, String::new);
            for &x in class {
                r.check(!self.gamma(self.inv(x), x, ds[0]).is_zero(), || {
                    format!("x = {}, d = {}", self.name(x), self.name(ds[0]))
                });
            }
        }
        r
    }

    pub fn p14(&self) -> CheckReport {
        let mut r = CheckReport::new("P14", self.rank());
        for z in 0..self.size() {
            r.check(self.cells.two_sided.equiv(z, self.inv(z)), || format!("z = {}", self.name(z)));
        }
        r
    }

    /// `sum_y' h_{w,x',y'} (x) h_{x,y',y} = sum_y' h_{y',x',y} (x) h_{x,w,y'}`
    /// in `A (x)_Z A` whenever `a(w) = a(y)`.
    pub fn p15_holds_at(&self, x: usize, xp: usize, y: usize, w: usize) -> bool {
        let mut lhs = Tensor::new();
        let mut rhs = Tensor::new();
        for (yp, h1) in self.st.product(w, xp).iter() {
            if let Some(h2) = self.st.h_ref(x, yp, y) {
                lhs.add_product(h1, h2);
            }
        }
        for (yp, h2) in self.st.product(x, w).iter() {
            if let Some(h1) = self.st.h_ref(yp, xp, y) {
                rhs.add_product(h1, h2);
            }
        }
        lhs == rhs
    }

    pub fn p15(&self, mode: P15Mode) -> CheckReport {
        let size = self.size();
        let mut r = CheckReport::new("P15", self.rank());
        let witness = |x: usize, xp: usize, y: usize, w: usize| {
            format!("x = {}, x' = {}, y = {}, w = {}", self.name(x), self.name(xp), self.name(y), self.name(w))
        };
        match mode {
            P15Mode::Exhaustive => {
                for w in 0..size {
                    for y in (0..size).filter(|&y| self.af.a[y] == self.af.a[w]) {
                        for x in 0..size {
                            for xp in 0..size {
                                r.check(self.p15_holds_at(x, xp, y, w), || witness(x, xp, y, w));
                            }
                        }
                    }
                }
            }
            P15Mode::Sample { count, seed } => {
                let mut by_a: HashMap<E, Vec<usize>> = HashMap::new();
                for z in 0..size {
                    by_a.entry(self.af.a[z]).or_default().push(z);
                }
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for _ in 0..count {
                    let w = rng.gen_range(0..size);
                    let same = &by_a[&self.af.a[w]];
                    let y = same[rng.gen_range(0..same.len())];
                    let x = rng.gen_range(0..size);
                    let xp = rng.gen_range(0..size);
                    r.check(self.p15_holds_at(x, xp, y, w), || witness(x, xp, y, w));
                }
                r = r.with_note(format!("{count} sampled quadruples, ChaCha8 seed {seed:#x}"));
            }
        }
        r
    }

    pub fn all(&self, p15: P15Mode) -> Result<Vec<CheckReport>> {
        Ok(vec![
            self.p1(),
            self.p2(),
            self.p3(),
            self.p4(),
            self.p5(),
            self.p6(),
            self.p7(),
            self.p8(),
            self.p9(),
            self.p10(),
            self.p11(),
            self.p12()?,
            self.p13(),
            self.p14(),
            self.p15(p15),
        ])
    }

    /// Degree bounds for `T_{w_0}^m C_y = sum lambda^(m)_{x,y} C_x`.
    pub fn check_tw0(&self, powers: &[i64]) -> Vec<CheckReport> {
        let g = self.table.algebra().group();
        let n = g.rank();
        let w0 = g.longest();
        let left = &self.cells.left;
        let a = &self.af.a;
        let gap = |u: usize| a[u] - a[g.mul(w0, u)];
        let mut support = CheckReport::new("tw0-support", n);
        let mut ra = CheckReport::new("tw0-a", n);
        let mut rb = CheckReport::new("tw0-b", n);
        let mut rc = CheckReport::new("tw0-c", n);
        let mut cor = CheckReport::new("tw0-cw", n);
        for &m in powers {
            let cols: Vec<_> = crate::par::map_range(self.size(), |y| tw0_expand(self.table, m, y));
            for (y, col) in cols.iter().enumerate() {
                for x in 0..self.size() {
                    let lam = col.coeff(x);
                    let wit = || format!("m = {m}, x = {}, y = {}: {lam}", self.name(x), self.name(y));
                    if !left.leq(x, y) {
                        support.check(lam.is_zero(), wit);
                        continue;
                    }
                    let strict = left.lt(x, y);
                    let within = |bound: E| match lam.deg() {
                        Degree::NegInfinity => true,
                        Degree::Finite(d) => d < bound || (!strict && d == bound),
                    };
                    if m >= 0 {
                        ra.check(within(gap(x).times(m)), wit);
                    }
                    if m <= 0 {
                        rb.check(within(gap(y).times(m)), wit);
                    }
                    if m % 2 == 0 && left.equiv(x, y) {
                        let expect = if x == y { Laurent::monomial(gap(x).times(m), 1) } else { Laurent::zero() };
                        rc.check(lam == expect, wit);
                    }
                }
            }
            if m < 0 {
                continue;
            }
            let w0m = if m % 2 == 0 { g.identity() } else { w0 };
            let inverse_power = crate::par::map_range(self.size(), |w| tw0_expand(self.table, -m, w));
            for (w, col) in inverse_power.iter().enumerate() {
                let tau: Laurent<E> =
                    col.iter().fold(Laurent::zero(), |acc, (x, c)| &acc + &(c * &self.table.p_star(0, x)));
                let bound = -a[w] + (a[g.mul(w0, w)] - a[w]).times(m);
                let in_d = self.af.in_d[g.mul(w0m, self.inv(w))];
                let ok = match tau.deg() {
                    Degree::NegInfinity => !in_d,
                    Degree::Finite(d) => d <= bound && (d == bound) == in_d,
                };
                cor.check(ok, || format!("m = {m}, w = {}: tau = {tau}", self.name(w)));
            }
        }
        vec![support, ra, rb, rc, cor]
    }

    /// For each left cell `C`, `T_{w_0}` acts on the cell module with square
    /// `v^{2e}`; records how many eigenvalues are `+v^e` and `-v^e`.
    pub fn epsilon_signs(&self) -> Vec<CellSigns> {
        let g = self.table.algebra().group();
        let w0 = g.longest();
        let cells = CellPartition::new(Relation::Left, &self.cells.left);
        let cols: Vec<_> = (0..self.size()).map(|y| tw0_expand(self.table, 1, y)).collect();
        cells
            .classes
            .iter()
            .map(|class| {
                let c = class[0];
                let e = self.af.a[c] - self.af.a[g.mul(w0, c)];
                let mut trace = BigInt::zero();
                let mut scalar = true;
                let diag = cols[c].coeff(c).coeff(e);
                for &y in class {
                    for &x in class {
                        let lam = cols[y].coeff(x);
                        if x == y {
                            trace += lam.coeff(e);
                            scalar &= lam == Laurent::monomial(e, diag.clone());
                        } else {
                            scalar &= lam.is_zero();
                        }
                    }
                }
                let dim = BigInt::from(class.len());
                let plus: BigInt = (&dim + &trace) / 2;
                let minus: BigInt = (&dim - &trace) / 2;
                CellSigns {
                    representative: g.elem(c).to_string(),
                    size: class.len(),
                    monomial: Laurent::<E>::monomial(e, 1).to_string(),
                    plus: plus.to_string(),
                    minus: minus.to_string(),
                    scalar,
                }
            })
            .collect()
    }
}

/// Experimental: eigenvalue signs of `T_{w_0}` on one left cell module.
/// The trace only determines the counts when `T_{w_0}^2 = v^{2e}` there.
#[derive(Clone, Debug, Serialize)]
pub struct CellSigns {
    pub representative: String,
    pub size: usize,
    /// `v^e` with `T_{w_0}^2 = v^{2e}` on the cell when `scalar` holds.
    pub monomial: String,
    pub plus: String,
    pub minus: String,
    /// Whether the cell matrix of `T_{w_0}` is already `+-v^e` times the identity.
    pub scalar: bool,
}

/// `a` on `S_n` with parameter `v` equals `a_lambda` of the RS shape.
pub fn check_symmetric_a(n: usize) -> Result<CheckReport> {
    let mut r = CheckReport::new("a-symmetric", n);
    let alg = Arc::new(HeckeAlgebra::asymptotic(Arc::new(CoxeterGroup::symmetric(n))));
    let table = KlTable::build(alg)?;
    let st = StructTable::build(&table);
    let af = AFunctionData::compute(&table, &st)?;
    for (i, w) in table.algebra().group().elements().iter().enumerate() {
        let expect = GammaExp::new(0, rs_shape(w).a_value());
        r.check(af.a[i] == expect, || format!("{w}: a = {}, shape gives {expect}", af.a[i]));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_two_exhaustive() {
        let alg = Arc::new(HeckeAlgebra::asymptotic(Arc::new(CoxeterGroup::type_b(2))));
        let table = KlTable::build(alg).unwrap();
        let st = StructTable::build(&table);
        let af = AFunctionData::compute(&table, &st).unwrap();
        let cells = CellData::compute(&table);
        let inv = Invariants::new(&table, &st, &af, &cells);
        let mut reports = inv.all(P15Mode::Exhaustive).unwrap();
        reports.extend(inv.check_tw0(&[-2, -1, 0, 1, 2]));
        for r in &reports {
            assert!(r.holds, "{}", r.summary());
            assert!(r.checked > 0, "{}", r.summary());
        }
        let signs = inv.epsilon_signs();
        assert_eq!(signs.len(), 6);
        assert_eq!(signs.iter().map(|s| s.size).sum::<usize>(), 8);
    }

    #[test]
    fn sampled_p15_is_reproducible() {
        let alg = Arc::new(HeckeAlgebra::asymptotic(Arc::new(CoxeterGroup::type_b(2))));
        let table = KlTable::build(alg).unwrap();
        let st = StructTable::build(&table);
        let af = AFunctionData::compute(&table, &st).unwrap();
        let cells = CellData::compute(&table);
        let inv = Invariants::new(&table, &st, &af, &cells);
        let mode = P15Mode::Sample { count: 500, seed: 7 };
        assert_eq!(inv.p15(mode), inv.p15(mode));
    }

    #[test]
    fn symmetric_a_matches_shapes() {
        for n in 1..=4 {
            let r = check_symmetric_a(n).unwrap();
            assert!(r.holds, "{}", r.summary());
        }
    }
}
