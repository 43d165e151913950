//! The specialisation `theta: V -> v^b, v -> v^a` onto the one-parameter
//! algebra with `L(t) = b`, `L(s_i) = a`, and the comparison of KL data on
//! both sides.

use std::sync::Arc;

use serde::Serialize;

use crate::analysis::Analysis;
use crate::cells::Relation;
use crate::error::{Error, Result};
use crate::hecke::{HeckeAlgebra, HeckeElem};
use crate::kl::KlTable;
use crate::laurent::{BiLaurent, Degree, GammaExp, Laurent};
use crate::perm::{GenIndex, SignedPerm};
use crate::report::CheckReport;
use crate::tableau::alpha;
use crate::typeb::sigma_elem;

pub type MonoLaurent = Laurent<i64>;

/// `a = L(s_i)`, `b = L(t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WeightPair {
    pub a: i64,
    pub b: i64,
}

impl WeightPair {
    pub fn new(a: i64, b: i64) -> Result<Self> {
        if a < 1 || b < 1 {
            return Err(Error::OutOfRange(format!("weights must be positive, got a = {a}, b = {b}")));
        }
        Ok(WeightPair { a, b })
    }

    /// `b > (n-1) a`.
    pub fn threshold_satisfied(&self, n: usize) -> bool {
        self.b > (n as i64 - 1) * self.a
    }
}

pub fn theta_gamma(e: GammaExp, w: WeightPair) -> i64 {
    w.b * e.tdeg + w.a * e.sdeg
}

pub fn theta_poly(p: &BiLaurent, w: WeightPair) -> MonoLaurent {
    p.map_exponents(|e| theta_gamma(e, w))
}

pub fn theta_hecke(h: &HeckeElem<GammaExp>, w: WeightPair) -> HeckeElem<i64> {
    h.map_coeffs(|c| theta_poly(c, w))
}

/// KL table of the one-parameter algebra on the same group as `asym`, so
/// that element indices agree.
pub fn build_specialized_kl(asym: &KlTable<GammaExp>, w: WeightPair) -> Result<KlTable<i64>> {
    let group = Arc::clone(asym.algebra().group_arc());
    let alg = HeckeAlgebra::with_weights(group, |g: GenIndex| if g.is_t() { w.b } else { w.a });
    KlTable::build(Arc::new(alg))
}

/// `s_{n-1} ... s_1 t sigma_n`.
pub fn canonical_witness(n: usize) -> Result<SignedPerm> {
    let mut word: Vec<GenIndex> = (1..n).rev().map(GenIndex).collect();
    word.push(GenIndex::T);
    SignedPerm::from_word(n, &word)?.mul(&sigma_elem(n, n)?)
}

/// `T_{s_{n-1} ... s_1} C_t C_{sigma_n}`, the expansion used for the canonical
/// witness in the optimality argument. It has the same leading term as
/// `Gamma_w` but differs from it in lower terms once `n >= 2`.
pub fn witness_expression(asym: &KlTable<GammaExp>) -> Result<HeckeElem<GammaExp>> {
    let alg = asym.algebra();
    let g = alg.group();
    let n = g.rank();
    let word: Vec<GenIndex> = (1..n).rev().map(GenIndex).collect();
    let prefix = g.try_index(&SignedPerm::from_word(n, &word)?)?;
    let t = g.try_index(&SignedPerm::from_word(n, &[GenIndex::T])?)?;
    let h = alg.mul(asym.c(t), asym.c(g.try_index(&sigma_elem(n, n)?)?));
    Ok(alg.mul_basis_left(prefix, &h))
}

/// Coefficient of `theta` of [`witness_expression`] on `T°_{sigma_n}`.
pub fn witness_coefficient(asym: &KlTable<GammaExp>, w: WeightPair) -> Result<MonoLaurent> {
    let g = asym.algebra().group();
    let sn = g.try_index(&sigma_elem(g.rank(), g.rank())?)?;
    Ok(theta_poly(&witness_expression(asym)?.coeff(sn), w))
}

/// Coefficient of `theta(Gamma_w)` on `T°_{sigma_n}` for the canonical witness.
pub fn witness_gamma_coefficient(asym: &KlTable<GammaExp>, w: WeightPair) -> Result<MonoLaurent> {
    let g = asym.algebra().group();
    let n = g.rank();
    let gamma = crate::asym::gamma_of(asym, g.try_index(&canonical_witness(n)?)?)?;
    Ok(theta_poly(&gamma.coeff(g.try_index(&sigma_elem(n, n)?)?), w))
}

#[derive(Clone, Debug, Serialize)]
pub struct PreservationWitness {
    pub window: String,
    /// First `T_y` (in the element order) where the two sides differ.
    pub element: String,
    /// Coefficient of `theta(C_w)` there.
    pub coefficient: String,
    /// Coefficient of `C°_w` there.
    pub expected: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct PreservationReport {
    pub n: usize,
    pub a: i64,
    pub b: i64,
    pub threshold_satisfied: bool,
    pub preserved: bool,
    pub canonical_witness: String,
    pub canonical_fails: bool,
    pub witness_coefficient: String,
    pub witness_gamma_coefficient: String,
    pub witnesses: Vec<PreservationWitness>,
}

impl PreservationReport {
    /// Preservation exactly above the threshold, and the canonical witness
    /// among the failures below it.
    pub fn as_predicted(&self) -> bool {
        if self.threshold_satisfied {
            self.preserved
        } else {
            !self.preserved && self.canonical_fails
        }
    }
}

pub fn check_preservation(asym: &KlTable<GammaExp>, spec: &KlTable<i64>, w: WeightPair) -> Result<PreservationReport> {
    let g = asym.algebra().group();
    let n = g.rank();
    if spec.len() != asym.len() {
        return Err(Error::SizeMismatch(format!("{} vs {} elements", asym.len(), spec.len())));
    }
    let canonical = g.try_index(&canonical_witness(n)?)?;
    let mut witnesses = Vec::new();
    let mut canonical_fails = false;
    for x in 0..asym.len() {
        let th = theta_hecke(asym.c(x), w);
        let c0 = spec.c(x);
        if &th == c0 {
            continue;
        }
        canonical_fails |= x == canonical;
        let y = th.support().chain(c0.support()).filter(|&y| th.coeff(y) != c0.coeff(y)).min().unwrap_or(x);
        witnesses.push(PreservationWitness {
            window: g.elem(x).to_string(),
            element: g.elem(y).to_string(),
            coefficient: th.coeff(y).to_string(),
            expected: c0.coeff(y).to_string(),
        });
    }
    Ok(PreservationReport {
        n,
        a: w.a,
        b: w.b,
        threshold_satisfied: w.threshold_satisfied(n),
        preserved: witnesses.is_empty(),
        canonical_witness: g.elem(canonical).to_string(),
        canonical_fails,
        witness_coefficient: witness_coefficient(asym, w)?.to_string(),
        witness_gamma_coefficient: witness_gamma_coefficient(asym, w)?.to_string(),
        witnesses,
    })
}

/// Structure constants, cells, `Delta` and `alpha` after specialisation.
/// Requires `b > (n-1) a`.
pub fn compare_specialized_invariants(
    asym: &Analysis<GammaExp>,
    spec: &Analysis<i64>,
    w: WeightPair,
) -> Result<Vec<CheckReport>> {
    let g = asym.table.algebra().group();
    let n = g.rank();
    if !w.threshold_satisfied(n) {
        return Err(Error::Precondition(format!("b = {} is not above (n-1)a = {}", w.b, (n as i64 - 1) * w.a)));
    }
    let size = asym.table.len();
    let name = |x: usize| g.elem(x).to_string();
    let mut h = CheckReport::new("spec-h", n);
    for x in 0..size {
        for y in 0..size {
            let th = asym.st.product(x, y).map_coeffs(|c| theta_poly(c, w));
            h.check(&th == spec.st.product(x, y), || format!("x = {}, y = {}", name(x), name(y)));
        }
    }
    let mut order = CheckReport::new("spec-order", n);
    let mut cells = CheckReport::new("spec-cells", n);
    for rel in [Relation::Left, Relation::Right, Relation::TwoSided] {
        let (p, p0) = (asym.cells.get(rel), spec.cells.get(rel));
        for x in 0..size {
            for y in 0..size {
                order.check(!p0.leq(x, y) || p.leq(x, y), || format!("{rel}: x = {}, y = {}", name(x), name(y)));
                cells.check(p0.equiv(x, y) == p.equiv(x, y), || format!("{rel}: x = {}, y = {}", name(x), name(y)));
            }
        }
    }
    let alpha0: Vec<i64> = g.elements().iter().map(|z| alpha(z).map(|e| theta_gamma(e, w))).collect::<Result<_>>()?;
    let mut delta = CheckReport::new("a-special", n);
    let mut a0 = CheckReport::new("a-circ-equals-alpha-circ", n);
    for (z, &al) in alpha0.iter().enumerate() {
        let d0 = spec.af.delta[z];
        let invol = g.elem(z).is_involution();
        delta.check(d0 == theta_gamma(asym.af.delta[z], w) && d0 >= al && (d0 == al) == invol, || {
            format!("z = {}: Delta° = {d0}, alpha° = {al}", name(z))
        });
        a0.check(spec.af.a[z] == al, || format!("z = {}: a° = {}, alpha° = {al}", name(z), spec.af.a[z]));
    }
    let mut monotone =
        CheckReport::new("decroissante-zero", n).with_note("alpha°(z') <= alpha°(z), as intended, see printed typo");
    for z in 0..size {
        for zp in 0..size {
            if g.t_length(z) == g.t_length(zp) && spec.cells.two_sided.leq(z, zp) {
                monotone.check(alpha0[zp] <= alpha0[z], || format!("z = {}, z' = {}", name(z), name(zp)));
            }
        }
    }
    Ok(vec![h, order, cells, delta, a0, monotone])
}

/// `deg theta(p) <= theta(deg p)`. This can fail when `b` does not exceed
/// `a` times the spread of the `v`-exponents of `p`, e.g. `V v^-1 - v` at
/// `a = b = 1`.
pub fn degree_bound_holds(p: &BiLaurent, w: WeightPair) -> bool {
    match (theta_poly(p, w).deg(), p.deg()) {
        (Degree::NegInfinity, _) => true,
        (Degree::Finite(d), Degree::Finite(e)) => d <= theta_gamma(e, w),
        (Degree::Finite(_), Degree::NegInfinity) => false,
    }
}

/// `max sdeg - min sdeg` over the terms of `p`.
pub fn sdeg_spread(p: &BiLaurent) -> i64 {
    let s = p.terms().iter().map(|(e, _)| e.sdeg);
    match (s.clone().max(), s.min()) {
        (Some(hi), Some(lo)) => hi - lo,
        _ => 0,
    }
}
