//! Signed permutations: elements of the Weyl group `W_n` of type `B_n` in
//! window notation.
//!
//! Conventions: the window of `w` is `[w(1), ..., w(n)]` with
//! `w(-i) = -w(i)`. The product `x * y` is the composite "apply `y`, then
//! `x`". Right multiplication by `t` negates the entry in position 1 and
//! right multiplication by `s_i` swaps positions `i` and `i + 1`.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::Error;

/// A Coxeter generator of `W_n`: index 0 is `t`, index `i >= 1` is `s_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenIndex(pub usize);

impl GenIndex {
    pub const T: GenIndex = GenIndex(0);

    pub fn s(i: usize) -> GenIndex {
        GenIndex(i)
    }

    pub fn is_t(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for GenIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            f.write_str("t")
        } else {
            write!(f, "s{}", self.0)
        }
    }
}

impl FromStr for GenIndex {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        if s == "t" {
            return Ok(GenIndex::T);
        }
        match s.strip_prefix('s').and_then(|d| d.parse::<usize>().ok()) {
            Some(i) if i >= 1 => Ok(GenIndex(i)),
            _ => Err(Error::Parse(format!("unknown generator `{s}`"))),
        }
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedPerm {
    window: Vec<i8>,
}

impl SignedPerm {
    pub fn identity(n: usize) -> Self {
        SignedPerm { window: (1..=n as i8).collect() }
    }

    pub fn from_window(window: &[i64]) -> Result<Self, Error> {
        let n = window.len();
        let mut seen = vec![false; n + 1];
        for &x in window {
            let a = x.unsigned_abs() as usize;
            if x == 0 || a > n || seen[a] {
                return Err(Error::InvalidElement(format!("{window:?} is not a signed permutation")));
            }
            seen[a] = true;
        }
        Ok(SignedPerm { window: window.iter().map(|&x| x as i8).collect() })
    }

    pub fn rank(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> Vec<i64> {
        self.window.iter().map(|&x| x as i64).collect()
    }

    /// `w(i)` for `i` in `-n..=n`, `i != 0`.
    pub fn image(&self, i: i64) -> i64 {
        let v = self.window[i.unsigned_abs() as usize - 1] as i64;
        if i < 0 {
            -v
        } else {
            v
        }
    }

    /// The generator as a group element of `W_n`.
    pub fn generator(n: usize, g: GenIndex) -> Result<Self, Error> {
        if g.0 >= n {
            return Err(Error::RankMismatch(format!("generator {g} does not exist in W_{n}")));
        }
        let mut w = Self::identity(n);
        if g.is_t() {
            w.window[0] = -1;
        } else {
            w.window.swap(g.0 - 1, g.0);
        }
        Ok(w)
    }

    /// Product of the generators in the order written, `g_1 g_2 ... g_k`.
    pub fn from_word(n: usize, word: &[GenIndex]) -> Result<Self, Error> {
        let mut w = Self::identity(n);
        for &g in word {
            if g.0 >= n {
                return Err(Error::RankMismatch(format!("generator {g} does not exist in W_{n}")));
            }
            w = w.mul_gen_right(g);
        }
        Ok(w)
    }

    /// `self * g`.
    pub fn mul_gen_right(&self, g: GenIndex) -> Self {
        let mut w = self.clone();
        if g.is_t() {
            w.window[0] = -w.window[0];
        } else {
            w.window.swap(g.0 - 1, g.0);
        }
        w
    }

    /// `g * self`.
    pub fn mul_gen_left(&self, g: GenIndex) -> Self {
        let mut w = self.clone();
        for x in w.window.iter_mut() {
            if g.is_t() {
                if x.abs() == 1 {
                    *x = -*x;
                }
            } else {
                let i = g.0 as i8;
                if x.abs() == i {
                    *x = x.signum() * (i + 1);
                } else if x.abs() == i + 1 {
                    *x = x.signum() * i;
                }
            }
        }
        w
    }

    /// `self * other`: apply `other`, then `self`.
    pub fn mul(&self, other: &SignedPerm) -> Result<Self, Error> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch(format!(
                "cannot multiply elements of W_{} and W_{}",
                self.rank(),
                other.rank()
            )));
        }
        let window = other.window.iter().map(|&j| self.image(j as i64) as i8).collect();
        Ok(SignedPerm { window })
    }

    pub fn inverse(&self) -> Self {
        let mut window = vec![0i8; self.rank()];
        for (i, &x) in self.window.iter().enumerate() {
            let pos = x.unsigned_abs() as usize - 1;
            window[pos] = if x < 0 { -(i as i8 + 1) } else { i as i8 + 1 };
        }
        SignedPerm { window }
    }

    pub fn is_identity(&self) -> bool {
        self.window.iter().enumerate().all(|(i, &x)| x as usize == i + 1)
    }

    pub fn is_involution(&self) -> bool {
        self.mul(self).map(|w| w.is_identity()).unwrap_or(false)
    }

    /// `ell_t(w)`: the number of negative entries.
    pub fn t_length(&self) -> usize {
        self.window.iter().filter(|&&x| x < 0).count()
    }

    /// Coxeter length: inversions plus negative-sum pairs plus negative
    /// entries.
    pub fn length(&self) -> usize {
        let w = &self.window;
        let n = w.len();
        let mut len = self.t_length();
        for i in 0..n {
            for j in i + 1..n {
                if w[i] > w[j] {
                    len += 1;
                }
                if w[i] + w[j] < 0 {
                    len += 1;
                }
            }
        }
        len
    }

    /// `(ell, ell_t, ell_s)`.
    pub fn lengths(&self) -> (usize, usize, usize) {
        let l = self.length();
        let lt = self.t_length();
        (l, lt, l - lt)
    }

    /// True when no entry is negative, i.e. the element lies in `S_n`.
    pub fn is_unsigned(&self) -> bool {
        self.window.iter().all(|&x| x > 0)
    }

    /// A reduced word, obtained by peeling right descents.
    pub fn reduced_word(&self) -> Vec<GenIndex> {
        let n = self.rank();
        let mut w = self.clone();
        let mut word = Vec::with_capacity(self.length());
        while !w.is_identity() {
            let g = (0..n).map(GenIndex).find(|&g| w.has_right_descent(g)).expect("non-identity element has a descent");
            word.push(g);
            w = w.mul_gen_right(g);
        }
        word.reverse();
        word
    }

    /// `ell(w g) < ell(w)`.
    pub fn has_right_descent(&self, g: GenIndex) -> bool {
        if g.is_t() {
            self.window[0] < 0
        } else {
            self.window[g.0 - 1] > self.window[g.0]
        }
    }

    /// `ell(g w) < ell(w)`.
    pub fn has_left_descent(&self, g: GenIndex) -> bool {
        self.inverse().has_right_descent(g)
    }

    /// Embeds a signed permutation of a smaller rank into `W_n` by fixing
    /// `k + 1..=n`.
    pub fn extend_to(&self, n: usize) -> Self {
        let mut window = self.window.clone();
        window.extend((self.rank() as i8 + 1)..=(n as i8));
        SignedPerm { window }
    }

    pub fn parse_word(n: usize, s: &str) -> Result<Self, Error> {
        let word = s
            .split_whitespace()
            .filter(|tok| *tok != "e" && *tok != "1")
            .map(GenIndex::from_str)
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_word(n, &word)
    }

    pub fn word_string(&self) -> String {
        let word = self.reduced_word();
        if word.is_empty() {
            return "e".to_string();
        }
        word.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(" ")
    }
}

impl FromStr for SignedPerm {
    type Err = Error;

    /// Parses window notation `[-1,3,2]`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected window notation, got `{s}`")))?;
        let entries = if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|x| x.trim().parse::<i64>().map_err(|e| Error::Parse(format!("`{x}`: {e}"))))
                .collect::<Result<Vec<_>, _>>()?
        };
        SignedPerm::from_window(&entries)
    }
}

impl fmt::Display for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.window.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl fmt::Debug for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for SignedPerm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Every element of `W_n`, in no particular order.
pub fn all_signed_perms(n: usize) -> Vec<SignedPerm> {
    let mut out = Vec::new();
    let mut perm: Vec<i8> = (1..=n as i8).collect();
    permutations(&mut perm, 0, &mut |p| {
        for mask in 0..(1u32 << n) {
            let window = p.iter().enumerate().map(|(i, &x)| if mask >> i & 1 == 1 { -x } else { x }).collect();
            out.push(SignedPerm { window });
        }
    });
    out
}

fn permutations(p: &mut Vec<i8>, k: usize, f: &mut impl FnMut(&[i8])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{HashMap, VecDeque};

    fn w(x: &[i64]) -> SignedPerm {
        SignedPerm::from_window(x).unwrap()
    }

    /// Breadth-first search over words: the minimal word length of every
    /// element, plus the number of `t` letters in the first word found.
    fn word_oracle(n: usize) -> HashMap<SignedPerm, (usize, usize)> {
        let mut dist = HashMap::new();
        let e = SignedPerm::identity(n);
        dist.insert(e.clone(), (0, 0));
        let mut queue = VecDeque::from([e]);
        while let Some(x) = queue.pop_front() {
            let (d, t) = dist[&x];
            for g in (0..n).map(GenIndex) {
                let y = x.mul_gen_right(g);
                dist.entry(y.clone()).or_insert_with(|| {
                    queue.push_back(y);
                    (d + 1, t + g.is_t() as usize)
                });
            }
        }
        dist
    }

    #[test]
    fn generator_actions() {
        assert_eq!(SignedPerm::from_word(2, &[GenIndex::T]).unwrap(), w(&[-1, 2]));
        let st = SignedPerm::from_word(2, &[GenIndex(1), GenIndex::T]).unwrap();
        assert_eq!(st.lengths(), (2, 1, 1));
        assert_eq!(st, w(&[-2, 1]));
        let x = w(&[-3, 1, -2]);
        assert!(x.mul(&x.inverse()).unwrap().is_identity());
        assert!(SignedPerm::identity(2).mul(&SignedPerm::identity(3)).is_err());
    }

    #[test]
    fn length_examples() {
        assert_eq!(SignedPerm::identity(3).lengths(), (0, 0, 0));
        assert_eq!(w(&[-1, 2]).lengths(), (1, 1, 0));
        assert_eq!(w(&[-1, -2]).lengths(), (4, 2, 2));
    }

    #[test]
    fn lengths_match_word_search() {
        for n in 1..=3 {
            let oracle = word_oracle(n);
            assert_eq!(oracle.len(), (1usize << n) * (1..=n).product::<usize>());
            for (x, (d, t)) in &oracle {
                assert_eq!(x.length(), *d, "{x}");
                assert_eq!(x.t_length(), *t, "{x}");
                assert_eq!(x.reduced_word().len(), *d);
                assert_eq!(&SignedPerm::from_word(n, &x.reduced_word()).unwrap(), x);
            }
        }
    }

    #[test]
    fn left_and_right_generators() {
        for x in all_signed_perms(3) {
            for g in (0..3).map(GenIndex) {
                let gen = SignedPerm::generator(3, g).unwrap();
                assert_eq!(x.mul_gen_left(g), gen.mul(&x).unwrap());
                assert_eq!(x.mul_gen_right(g), x.mul(&gen).unwrap());
                assert_eq!(x.has_left_descent(g), x.mul_gen_left(g).length() < x.length());
                assert_eq!(x.has_right_descent(g), x.mul_gen_right(g).length() < x.length());
            }
        }
    }

    #[test]
    fn text_forms_round_trip() {
        let x = w(&[-1, 3, 2]);
        assert_eq!(x.to_string(), "[-1,3,2]");
        assert_eq!("[-1,3,2]".parse::<SignedPerm>().unwrap(), x);
        assert_eq!(SignedPerm::parse_word(3, &x.word_string()).unwrap(), x);
        assert_eq!(SignedPerm::parse_word(2, "s1 t").unwrap(), w(&[-2, 1]));
        assert!("[1,1]".parse::<SignedPerm>().is_err());
        assert!(SignedPerm::parse_word(2, "s2").is_err());
    }
}
