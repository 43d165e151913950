//! Finite standard parabolic subgroups of `W_n`, enumerated once with
//! multiplication tables, lengths and the Bruhat order.
//!
//! Elements are indexed in increasing `(length, window)` order, so index 0
//! is the identity and the last index is the longest element. Every
//! length-ordered traversal is therefore an index-ordered traversal.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::perm::{GenIndex, SignedPerm};

pub struct CoxeterGroup {
    rank: usize,
    gens: Vec<GenIndex>,
    elems: Vec<SignedPerm>,
    index: HashMap<SignedPerm, usize>,
    left: Vec<Vec<usize>>,
    right: Vec<Vec<usize>>,
    length: Vec<usize>,
    t_length: Vec<usize>,
    inverse: Vec<usize>,
    below: Vec<FixedBitSet>,
}

impl fmt::Debug for CoxeterGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoxeterGroup")
            .field("rank", &self.rank)
            .field("gens", &self.gens)
            .field("order", &self.elems.len())
            .finish()
    }
}

impl CoxeterGroup {
    /// The whole group `W_n`.
    pub fn type_b(n: usize) -> Self {
        Self::parabolic(n, &(0..n).map(GenIndex).collect::<Vec<_>>()).expect("all generators are valid")
    }

    /// `S_n`, generated by `s_1, ..., s_{n-1}`.
    pub fn symmetric(n: usize) -> Self {
        Self::parabolic(n, &(1..n).map(GenIndex).collect::<Vec<_>>()).expect("all generators are valid")
    }

    /// `S_{l,n-l}`, generated by every `s_i` with `i != l`.
    pub fn young(l: usize, n: usize) -> Result<Self> {
        if l > n {
            return Err(Error::OutOfRange(format!("l = {l} exceeds n = {n}")));
        }
        let gens: Vec<_> = (1..n).filter(|&i| i != l).map(GenIndex).collect();
        Self::parabolic(n, &gens)
    }

    /// The standard parabolic subgroup of `W_n` generated by `gens`.
    pub fn parabolic(n: usize, gens: &[GenIndex]) -> Result<Self> {
        let mut gens = gens.to_vec();
        gens.sort();
        gens.dedup();
        if let Some(g) = gens.iter().find(|g| g.0 >= n) {
            return Err(Error::RankMismatch(format!("generator {g} does not exist in W_{n}")));
        }
        let e = SignedPerm::identity(n);
        let mut seen: HashMap<SignedPerm, ()> = HashMap::from([(e.clone(), ())]);
        let mut queue = VecDeque::from([e]);
        let mut elems = Vec::new();
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = x.mul_gen_right(g);
                if !seen.contains_key(&y) {
                    seen.insert(y.clone(), ());
                    queue.push_back(y);
                }
            }
            elems.push(x);
        }
        let mut keyed: Vec<(usize, SignedPerm)> = elems.into_iter().map(|w| (w.length(), w)).collect();
        keyed.sort();
        let length: Vec<usize> = keyed.iter().map(|(l, _)| *l).collect();
        let elems: Vec<SignedPerm> = keyed.into_iter().map(|(_, w)| w).collect();
        let index: HashMap<SignedPerm, usize> = elems.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let left = gens.iter().map(|&g| elems.iter().map(|w| index[&w.mul_gen_left(g)]).collect()).collect();
        let right: Vec<Vec<usize>> =
            gens.iter().map(|&g| elems.iter().map(|w| index[&w.mul_gen_right(g)]).collect()).collect();
        let t_length = elems.iter().map(|w| w.t_length()).collect();
        let inverse = elems.iter().map(|w| index[&w.inverse()]).collect();

        let size = elems.len();
        let mut below: Vec<FixedBitSet> = Vec::with_capacity(size);
        for y in 0..size {
            let mut set = FixedBitSet::with_capacity(size);
            set.insert(y);
            let descent = (0..gens.len()).find(|&g| length[right[g][y]] < length[y]);
            if let Some(g) = descent {
                let prev = right[g][y];
                for x in below[prev].ones() {
                    set.insert(x);
                    set.insert(right[g][x]);
                }
            }
            below.push(set);
        }

        Ok(CoxeterGroup { rank: n, gens, elems, index, left, right, length, t_length, inverse, below })
    }

    /// Rank `n` of the ambient `W_n`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gens(&self) -> &[GenIndex] {
        &self.gens
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn local_gen(&self, g: GenIndex) -> Option<usize> {
        self.gens.iter().position(|&x| x == g)
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elements(&self) -> &[SignedPerm] {
        &self.elems
    }

    pub fn elem(&self, i: usize) -> &SignedPerm {
        &self.elems[i]
    }

    pub fn index_of(&self, w: &SignedPerm) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn try_index(&self, w: &SignedPerm) -> Result<usize> {
        self.index_of(w)
            .ok_or_else(|| Error::NotInParabolic(format!("{w} is not in the subgroup generated by {:?}", self.gens)))
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn longest(&self) -> usize {
        self.elems.len() - 1
    }

    pub fn length(&self, i: usize) -> usize {
        self.length[i]
    }

    pub fn t_length(&self, i: usize) -> usize {
        self.t_length[i]
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inverse[i]
    }

    /// Index of `gens[g] * elem(i)`.
    pub fn left_mul(&self, g: usize, i: usize) -> usize {
        self.left[g][i]
    }

    /// Index of `elem(i) * gens[g]`.
    pub fn right_mul(&self, g: usize, i: usize) -> usize {
        self.right[g][i]
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        let p = self.elems[x].mul(&self.elems[y]).expect("same rank");
        self.index[&p]
    }

    /// Some local generator `g` with `g * w < w`.
    pub fn left_descent(&self, w: usize) -> Option<usize> {
        (0..self.gens.len()).find(|&g| self.length[self.left[g][w]] < self.length[w])
    }

    pub fn right_descent(&self, w: usize) -> Option<usize> {
        (0..self.gens.len()).find(|&g| self.length[self.right[g][w]] < self.length[w])
    }

    /// A reduced word for `elem(w)` in local generator indices.
    pub fn reduced_word(&self, w: usize) -> Vec<usize> {
        let mut word = Vec::with_capacity(self.length[w]);
        let mut x = w;
        while let Some(g) = self.left_descent(x) {
            word.push(g);
            x = self.left[g][x];
        }
        word
    }

    pub fn bruhat_leq(&self, x: usize, y: usize) -> bool {
        self.below[y].contains(x)
    }

    /// The Bruhat interval `[e, y]`.
    pub fn bruhat_below(&self, y: usize) -> &FixedBitSet {
        &self.below[y]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Subword property oracle: `x <= y` iff `x` is the product of a
    /// subword of a reduced word of `y`.
    fn subword_leq(x: &SignedPerm, y: &SignedPerm) -> bool {
        let word = y.reduced_word();
        let n = y.rank();
        (0u32..1 << word.len()).any(|mask| {
            let sub: Vec<GenIndex> =
                word.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, g)| *g).collect();
            &SignedPerm::from_word(n, &sub).unwrap() == x
        })
    }

    /// Recursive characterisation (lifting property): for a left descent
    /// `s` of `y`, `x <= y` iff `min(x, sx) <= sy`.
    fn lifting_leq(x: &SignedPerm, y: &SignedPerm) -> bool {
        if y.is_identity() {
            return x.is_identity();
        }
        let n = y.rank();
        let s = (0..n).map(GenIndex).find(|&g| y.has_left_descent(g)).unwrap();
        let sx = x.mul_gen_left(s);
        let m = if sx.length() < x.length() { sx } else { x.clone() };
        lifting_leq(&m, &y.mul_gen_left(s))
    }

    #[test]
    fn orders() {
        for n in 1..=4 {
            let w = CoxeterGroup::type_b(n);
            assert_eq!(w.len(), (1usize << n) * (1..=n).product::<usize>());
            assert_eq!(w.length(w.longest()), n * n);
            assert_eq!(
                w.elem(w.longest()),
                &SignedPerm::from_window(&(1..=n as i64).map(|i| -i).collect::<Vec<_>>()).unwrap()
            );
        }
        assert_eq!(CoxeterGroup::symmetric(3).len(), 6);
        assert_eq!(CoxeterGroup::young(1, 3).unwrap().len(), 2);
        assert_eq!(CoxeterGroup::young(0, 3).unwrap().len(), 6);
        assert_eq!(CoxeterGroup::young(3, 3).unwrap().len(), 6);
    }

    #[test]
    fn bruhat_matches_subwords_and_lifting() {
        for n in 1..=3 {
            let w = CoxeterGroup::type_b(n);
            for y in 0..w.len() {
                for x in 0..w.len() {
                    let leq = w.bruhat_leq(x, y);
                    assert_eq!(leq, subword_leq(w.elem(x), w.elem(y)));
                    assert_eq!(leq, lifting_leq(w.elem(x), w.elem(y)));
                }
            }
        }
    }

    #[test]
    fn bruhat_examples() {
        let w = CoxeterGroup::type_b(2);
        let idx = |s: &str| w.index_of(&SignedPerm::parse_word(2, s).unwrap()).unwrap();
        for y in 0..w.len() {
            assert!(w.bruhat_leq(0, y));
        }
        assert!(!w.bruhat_leq(idx("s1"), idx("t")));
        assert!(w.bruhat_leq(idx("t"), idx("s1 t s1")));
    }

    #[test]
    fn bruhat_is_a_partial_order_refining_length() {
        let w = CoxeterGroup::type_b(3);
        for x in 0..w.len() {
            assert!(w.bruhat_leq(x, x));
            for y in 0..w.len() {
                if x != y && w.bruhat_leq(x, y) {
                    assert!(w.length(x) < w.length(y));
                    assert!(!w.bruhat_leq(y, x));
                    for z in 0..w.len() {
                        if w.bruhat_leq(y, z) {
                            assert!(w.bruhat_leq(x, z));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn tables_agree_with_permutations() {
        let w = CoxeterGroup::type_b(3);
        for i in 0..w.len() {
            for (g, &gen) in w.gens().iter().enumerate() {
                assert_eq!(w.elem(w.left_mul(g, i)), &w.elem(i).mul_gen_left(gen));
                assert_eq!(w.elem(w.right_mul(g, i)), &w.elem(i).mul_gen_right(gen));
            }
            assert_eq!(w.reduced_word(i).len(), w.length(i));
            assert_eq!(w.mul(i, w.inverse(i)), 0);
        }
    }
}
