//! Kazhdan-Lusztig preorders and cells.
//!
//! `x <=_L y` is generated by the edges `y -> x` for `C_x` occurring in
//! `C_s C_y`; `<=_R` uses `C_y C_s`; `<=_LR` is generated by both.

use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::Error;
use crate::kl::KlTable;
use crate::laurent::Exponent;
use crate::par;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Relation {
    #[serde(rename = "l")]
    Left,
    #[serde(rename = "r")]
    Right,
    #[serde(rename = "lr")]
    TwoSided,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Left => "l",
            Relation::Right => "r",
            Relation::TwoSided => "lr",
        })
    }
}

impl FromStr for Relation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "l" | "left" => Ok(Relation::Left),
            "r" | "right" => Ok(Relation::Right),
            "lr" | "two-sided" => Ok(Relation::TwoSided),
            _ => Err(Error::Parse(format!("unknown relation {s:?}; expected l, r or lr"))),
        }
    }
}

/// `leq[y]` is the set of `x` with `x <= y`.
#[derive(Clone, Debug)]
pub struct Preorder {
    leq: Vec<FixedBitSet>,
}

impl Preorder {
    pub fn from_edges(edges: &[Vec<usize>]) -> Self {
        let size = edges.len();
        let leq = par::map_range(size, |y| {
            let mut seen = FixedBitSet::with_capacity(size);
            let mut stack = vec![y];
            seen.insert(y);
            while let Some(u) = stack.pop() {
                for &x in &edges[u] {
                    if !seen.put(x) {
                        stack.push(x);
                    }
                }
            }
            seen
        });
        Preorder { leq }
    }

    pub fn len(&self) -> usize {
        self.leq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leq.is_empty()
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[y].contains(x)
    }

    pub fn equiv(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) && self.leq(y, x)
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) && !self.leq(y, x)
    }

    pub fn below(&self, y: usize) -> &FixedBitSet {
        &self.leq[y]
    }
}

/// Generator edges `y -> x` for one relation (left or right).
pub fn generator_edges<E: Exponent>(table: &KlTable<E>, left: bool) -> Vec<Vec<usize>> {
    let ngens = table.algebra().group().num_gens();
    par::map_range(table.len(), |y| {
        let mut out: Vec<usize> = Vec::new();
        for g in 0..ngens {
            let prod = if left { table.gen_times_c(g, y) } else { table.c_times_gen(y, g) };
            out.extend(prod.support().filter(|&x| x != y));
        }
        out.sort_unstable();
        out.dedup();
        out
    })
}

pub fn preorder<E: Exponent>(table: &KlTable<E>, relation: Relation) -> Preorder {
    let edges = match relation {
        Relation::Left => generator_edges(table, true),
        Relation::Right => generator_edges(table, false),
        Relation::TwoSided => {
            let mut l = generator_edges(table, true);
            let r = generator_edges(table, false);
            for (a, b) in l.iter_mut().zip(r) {
                a.extend(b);
                a.sort_unstable();
                a.dedup();
            }
            l
        }
    };
    Preorder::from_edges(&edges)
}

/// The three preorders at once, sharing the generator products.
#[derive(Clone, Debug)]
pub struct CellData {
    pub left: Preorder,
    pub right: Preorder,
    pub two_sided: Preorder,
}

impl CellData {
    pub fn compute<E: Exponent>(table: &KlTable<E>) -> Self {
        let l = generator_edges(table, true);
        let r = generator_edges(table, false);
        let both: Vec<Vec<usize>> = l
            .iter()
            .zip(&r)
            .map(|(a, b)| {
                let mut v: Vec<usize> = a.iter().chain(b).copied().collect();
                v.sort_unstable();
                v.dedup();
                v
            })
            .collect();
        CellData {
            left: Preorder::from_edges(&l),
            right: Preorder::from_edges(&r),
            two_sided: Preorder::from_edges(&both),
        }
    }

    pub fn get(&self, relation: Relation) -> &Preorder {
        match relation {
            Relation::Left => &self.left,
            Relation::Right => &self.right,
            Relation::TwoSided => &self.two_sided,
        }
    }
}

/// Equivalence classes of a preorder with the induced order on classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellPartition {
    pub relation: Relation,
    /// Each class lists its members in increasing index order; classes are
    /// ordered by their smallest member.
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    /// Covering pairs `(lower, upper)` of the class order.
    pub hasse: Vec<(usize, usize)>,
}

impl CellPartition {
    pub fn new(relation: Relation, pre: &Preorder) -> Self {
        let size = pre.len();
        let mut class_of = vec![usize::MAX; size];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for x in 0..size {
            if class_of[x] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let members: Vec<usize> = (x..size).filter(|&y| class_of[y] == usize::MAX && pre.equiv(x, y)).collect();
            for &m in &members {
                class_of[m] = id;
            }
            classes.push(members);
        }
        let k = classes.len();
        let rep: Vec<usize> = classes.iter().map(|c| c[0]).collect();
        let lt = |i: usize, j: usize| i != j && pre.leq(rep[i], rep[j]);
        let mut hasse = Vec::new();
        for i in 0..k {
            for j in 0..k {
                if lt(i, j) && !(0..k).any(|m| lt(i, m) && lt(m, j)) {
                    hasse.push((i, j));
                }
            }
        }
        CellPartition { relation, classes, class_of, hasse }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Same partition of the underlying set, ignoring class numbering.
    pub fn same_classes_as(&self, labels: &[usize]) -> bool {
        same_partition(&self.class_of, labels)
    }
}

/// Whether two labelings induce the same partition.
pub fn same_partition(a: &[usize], b: &[usize]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let n = a.len();
    (0..n).all(|i| (0..n).all(|j| (a[i] == a[j]) == (b[i] == b[j])))
}
