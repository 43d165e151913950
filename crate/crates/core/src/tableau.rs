//! Partitions, bipartitions, standard bi-tableaux and the Robinson-Schensted
//! correspondence for signed permutations.
//!
//! `rs_map` scans `w(1), ..., w(n)`. Positive values are row-inserted into
//! the plus component; for negative values the absolute value goes into the
//! minus component, by row insertion ([`MinusInsertion::Row`], the frozen
//! convention) or column insertion (kept for the convention test). Recording
//! tableaux store positions.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::GammaExp;
use crate::perm::SignedPerm;
use crate::typeb::{decompose, sigma_elem, split_sigma};

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|p| p[0] < p[1]) || parts.contains(&0) {
            return Err(Error::InvalidElement(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.parts.first().copied().unwrap_or(0);
        let parts = (0..cols).map(|j| self.parts.iter().filter(|&&p| p > j).count()).collect();
        Partition { parts }
    }

    /// `a_lambda = sum_i (i-1) lambda_i`.
    pub fn a_value(&self) -> i64 {
        self.parts.iter().enumerate().map(|(i, &p)| (i * p) as i64).sum()
    }

    /// Number of standard tableaux of this shape, by the hook length formula.
    pub fn num_standard_tableaux(&self) -> u128 {
        let conj = self.conjugate();
        let n = self.size() as u128;
        let mut hooks: u128 = 1;
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row {
                hooks *= (row - j - 1 + conj.parts[j] - i - 1 + 1) as u128;
            }
        }
        (1..=n).product::<u128>() / hooks
    }
}

/// All partitions of `n`, in decreasing lexicographic order.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", join(&self.parts))
    }
}

fn join(parts: &[usize]) -> String {
    parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
}

fn parse_parts(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|x| x.trim().parse::<usize>().map_err(|e| Error::Parse(format!("bad part {x:?}: {e}")))).collect()
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().strip_prefix('(').and_then(|x| x.strip_suffix(')'));
        let inner = inner.ok_or_else(|| Error::Parse(format!("expected (p1,p2,...), got {s:?}")))?;
        Partition::new(parse_parts(inner)?)
    }
}

/// `alpha <| beta` in the dominance order; both must have the same size.
pub fn dominance_leq(alpha: &Partition, beta: &Partition) -> Result<bool> {
    if alpha.size() != beta.size() {
        return Err(Error::SizeMismatch(format!("{alpha} and {beta} have different sizes")));
    }
    let (mut sa, mut sb) = (0, 0);
    for i in 0..alpha.parts.len().max(beta.parts.len()) {
        sa += alpha.parts.get(i).copied().unwrap_or(0);
        sb += beta.parts.get(i).copied().unwrap_or(0);
        if sa > sb {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bipartition {
    pub plus: Partition,
    pub minus: Partition,
}

impl Bipartition {
    pub fn size(&self) -> usize {
        self.plus.size() + self.minus.size()
    }

    pub fn num_standard_bitableaux(&self) -> u128 {
        let n = self.size();
        let k = self.minus.size();
        let binom = (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128);
        binom * self.plus.num_standard_tableaux() * self.minus.num_standard_tableaux()
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|{})", join(&self.plus.parts), join(&self.minus.parts))
    }
}

impl FromStr for Bipartition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().strip_prefix('(').and_then(|x| x.strip_suffix(')'));
        let (p, m) = inner
            .and_then(|x| x.split_once('|'))
            .ok_or_else(|| Error::Parse(format!("expected (plus|minus), got {s:?}")))?;
        Ok(Bipartition { plus: Partition::new(parse_parts(p)?)?, minus: Partition::new(parse_parts(m)?)? })
    }
}

impl Serialize for Bipartition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

pub fn bipartitions(n: usize) -> Vec<Bipartition> {
    let mut out = Vec::new();
    for k in 0..=n {
        for plus in partitions(n - k) {
            for minus in partitions(k) {
                out.push(Bipartition { plus: plus.clone(), minus });
            }
        }
    }
    out
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Tableau {
    rows: Vec<Vec<i64>>,
}

impl Tableau {
    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn shape(&self) -> Partition {
        Partition { parts: self.rows.iter().map(|r| r.len()).collect() }
    }

    /// Schensted row insertion; returns the row where the new box appeared.
    pub fn row_insert(&mut self, x: i64) -> usize {
        let mut x = x;
        for (i, row) in self.rows.iter_mut().enumerate() {
            match row.iter().position(|&y| y > x) {
                Some(j) => x = std::mem::replace(&mut row[j], x),
                None => {
                    row.push(x);
                    return i;
                }
            }
        }
        self.rows.push(vec![x]);
        self.rows.len() - 1
    }

    /// Column insertion (bumping in columns); returns the row of the new box.
    pub fn column_insert(&mut self, x: i64) -> usize {
        let mut x = x;
        let mut col = 0;
        loop {
            let height = self.rows.iter().take_while(|r| r.len() > col).count();
            match (0..height).find(|&i| self.rows[i][col] > x) {
                Some(i) => {
                    x = std::mem::replace(&mut self.rows[i][col], x);
                    col += 1;
                }
                None => {
                    if height == self.rows.len() {
                        self.rows.push(Vec::new());
                    }
                    self.rows[height].push(x);
                    return height;
                }
            }
        }
    }

    fn place(&mut self, row: usize, x: i64) {
        if row == self.rows.len() {
            self.rows.push(Vec::new());
        }
        self.rows[row].push(x);
    }

    pub fn entries(&self) -> impl Iterator<Item = i64> + '_ {
        self.rows.iter().flatten().copied()
    }

    pub fn is_standard_on_own_entries(&self) -> bool {
        let rows_ok = self.rows.iter().all(|r| r.windows(2).all(|p| p[0] < p[1]));
        let cols_ok =
            self.rows.windows(2).all(|p| p[1].len() <= p[0].len() && (0..p[1].len()).all(|j| p[0][j] < p[1][j]));
        rows_ok && cols_ok
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct BiTableau {
    pub plus: Tableau,
    pub minus: Tableau,
}

impl BiTableau {
    pub fn shape(&self) -> Bipartition {
        Bipartition { plus: self.plus.shape(), minus: self.minus.shape() }
    }
}

/// Rows separated by `/`, entries by `,`: `1,2/3`.
impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> =
            self.rows.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")).collect();
        f.write_str(&rows.join("/"))
    }
}

impl fmt::Display for BiTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|{})", self.plus, self.minus)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MinusInsertion {
    Row,
    Column,
}

/// `(P(w), Q(w))` with the frozen row convention.
pub fn rs_map(w: &SignedPerm) -> (BiTableau, BiTableau) {
    rs_map_with(w, MinusInsertion::Row)
}

pub fn rs_map_with(w: &SignedPerm, minus: MinusInsertion) -> (BiTableau, BiTableau) {
    let mut p = BiTableau::default();
    let mut q = BiTableau::default();
    for (i, &x) in w.window().iter().enumerate() {
        let pos = i as i64 + 1;
        if x > 0 {
            let row = p.plus.row_insert(x);
            q.plus.place(row, pos);
        } else {
            let row = match minus {
                MinusInsertion::Row => p.minus.row_insert(-x),
                MinusInsertion::Column => p.minus.column_insert(-x),
            };
            q.minus.place(row, pos);
        }
    }
    (p, q)
}

/// Shape of the classical RS tableau of an ordinary permutation.
pub fn rs_shape(perm: &SignedPerm) -> Partition {
    let mut t = Tableau::default();
    for x in perm.window() {
        t.row_insert(x);
    }
    t.shape()
}

/// `lambda^+ = ` RS shape of `sigma^+`, `lambda^- = ` conjugate of the RS
/// shape of `sigma^-`.
pub fn shape_of(w: &SignedPerm) -> Bipartition {
    let d = decompose(w);
    let (minus, plus) = split_sigma(&d).expect("sigma_w lies in the Young subgroup");
    Bipartition { plus: rs_shape(&plus), minus: rs_shape(&minus).conjugate() }
}

/// `alpha(z)`, evaluated through the decomposition
/// `(ell_t(z), 2 a_S(sigma_z) - a_S(sigma_l sigma_z))` and through the
/// bipartition `(|lambda^-|, a(lambda^+) + 2 a(lambda^-*) - a(lambda^-))`;
/// the two must agree.
pub fn alpha(z: &SignedPerm) -> Result<GammaExp> {
    let n = z.rank();
    let d = decompose(z);
    let a_s = |sigma: &SignedPerm| -> Result<i64> {
        let dd = crate::typeb::Decomposition { a: d.a.clone(), l: d.l, sigma: sigma.clone(), b: d.b.clone() };
        let (minus, plus) = split_sigma(&dd)?;
        Ok(rs_shape(&minus).a_value() + rs_shape(&plus).a_value())
    };
    let shifted = sigma_elem(n, d.l)?.mul(&d.sigma)?;
    let first = GammaExp::new(d.l as i64, 2 * a_s(&d.sigma)? - a_s(&shifted)?);
    let lam = rs_map(z).0.shape();
    let second = GammaExp::new(
        lam.minus.size() as i64,
        lam.plus.a_value() + 2 * lam.minus.conjugate().a_value() - lam.minus.a_value(),
    );
    if first != second {
        return Err(Error::Consistency(format!("alpha({z}): decomposition gives {first}, bipartition gives {second}")));
    }
    Ok(first)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::all_signed_perms;
    use std::collections::HashSet;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn partition_basics() {
        assert!(dominance_leq(&p("(1,1)"), &p("(2)")).unwrap());
        assert!(dominance_leq(&p("(2,1)"), &p("(2,1)")).unwrap());
        assert!(!dominance_leq(&p("(2,1)"), &p("(1,1,1)")).unwrap());
        assert!(dominance_leq(&p("(2)"), &p("(1,1,1)")).is_err());
        assert_eq!(p("(4)").a_value(), 0);
        assert_eq!(p("(1,1,1,1)").a_value(), 6);
        assert_eq!(p("(2,1)").a_value(), 1);
        assert_eq!(p("(3,1)").conjugate(), p("(2,1,1)"));
        assert_eq!(p("(3,1)").num_standard_tableaux(), 3);
        assert_eq!(partitions(4).len(), 5);
        assert_eq!(bipartitions(2).len(), 5);
        assert_eq!(bipartitions(3).len(), 10);
        let b: Bipartition = "(2,1|1)".parse().unwrap();
        assert_eq!(b.to_string(), "(2,1|1)");
        assert_eq!("(|2)".parse::<Bipartition>().unwrap().minus, p("(2)"));
    }

    #[test]
    fn bitableau_counts_square_to_group_order() {
        for n in 1..=4usize {
            let total: u128 = bipartitions(n).iter().map(|b| b.num_standard_bitableaux().pow(2)).sum();
            assert_eq!(total, (1u128 << n) * (1..=n as u128).product::<u128>());
        }
        let left_cells: u128 = bipartitions(3).iter().map(|b| b.num_standard_bitableaux()).sum();
        assert_eq!(left_cells, 20);
    }

    #[test]
    fn rs_examples() {
        let e = SignedPerm::identity(3);
        let (pe, qe) = rs_map(&e);
        assert_eq!(pe.plus.rows(), &[vec![1, 2, 3]]);
        assert_eq!(pe, qe);
        let w0: SignedPerm = "[-1,-2,-3]".parse().unwrap();
        assert_eq!(rs_map(&w0).0.shape().to_string(), "(|3)");
        assert_eq!(shape_of(&w0).to_string(), "(|3)");
        assert_eq!(shape_of(&e).to_string(), "(3|)");
        let t: SignedPerm = "[-1,2]".parse().unwrap();
        assert_eq!(shape_of(&t).to_string(), "(1|1)");
    }

    #[test]
    fn rs_is_a_bijection_onto_same_shape_pairs() {
        for n in 1..=4 {
            let mut seen = HashSet::new();
            for w in all_signed_perms(n) {
                let (pt, qt) = rs_map(&w);
                assert_eq!(pt.shape(), qt.shape());
                assert_eq!(pt.shape().minus.size(), w.t_length());
                for t in [&pt, &qt] {
                    assert!(t.plus.is_standard_on_own_entries() && t.minus.is_standard_on_own_entries());
                    let mut all: Vec<i64> = t.plus.entries().chain(t.minus.entries()).collect();
                    all.sort_unstable();
                    assert_eq!(all, (1..=n as i64).collect::<Vec<_>>());
                }
                let (pi, qi) = rs_map(&w.inverse());
                assert_eq!(pi, qt);
                assert_eq!(qi, pt);
                assert!(seen.insert((pt, qt)));
            }
        }
    }

    #[test]
    fn row_convention_matches_shape_of_and_column_does_not() {
        let mut column_mismatch = false;
        for w in all_signed_perms(3) {
            assert_eq!(rs_map_with(&w, MinusInsertion::Row).0.shape(), shape_of(&w));
            column_mismatch |= rs_map_with(&w, MinusInsertion::Column).0.shape() != shape_of(&w);
        }
        assert!(column_mismatch);
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha(&SignedPerm::identity(2)).unwrap(), GammaExp::new(0, 0));
        assert_eq!(alpha(&"[-1,2]".parse().unwrap()).unwrap(), GammaExp::new(1, 0));
        for n in 1..=4 {
            let w0 = crate::typeb::w0(n);
            let n = n as i64;
            assert_eq!(alpha(&w0).unwrap(), GammaExp::new(n, n * (n - 1)));
        }
        for w in all_signed_perms(4) {
            alpha(&w).unwrap();
        }
    }
}
