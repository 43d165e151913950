//! Distinguished elements of `W_n` and the decomposition
//! `w = a_w a_l sigma_w b_w^{-1}` with `l = ell_t(w)`, `a_w, b_w` minimal
//! left coset representatives of `S_n / S_{l,n-l}` and
//! `sigma_w in S_{l,n-l}`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{all_signed_perms, GenIndex, SignedPerm};

fn word(n: usize, w: &[GenIndex]) -> SignedPerm {
    SignedPerm::from_word(n, w).expect("generators are in range")
}

fn check_index(i: usize, lo: usize, n: usize, what: &str) -> Result<()> {
    if i < lo || i > n {
        return Err(Error::OutOfRange(format!("{what} = {i} must lie in {lo}..={n}")));
    }
    Ok(())
}

/// `t_1 = t`, `t_{i+1} = s_i t_i s_i`.
pub fn t_elem(n: usize, i: usize) -> Result<SignedPerm> {
    check_index(i, 1, n, "i")?;
    let mut x = word(n, &[GenIndex::T]);
    for k in 1..i {
        x = x.mul_gen_left(GenIndex(k)).mul_gen_right(GenIndex(k));
    }
    Ok(x)
}

/// `r_1 = t`, `r_{i+1} = s_i r_i`.
pub fn r_elem(n: usize, i: usize) -> Result<SignedPerm> {
    check_index(i, 1, n, "i")?;
    let mut x = word(n, &[GenIndex::T]);
    for k in 1..i {
        x = x.mul_gen_left(GenIndex(k));
    }
    Ok(x)
}

/// `a_l = r_1 r_2 ... r_l`.
pub fn a_elem(n: usize, l: usize) -> Result<SignedPerm> {
    check_index(l, 0, n, "l")?;
    let mut x = SignedPerm::identity(n);
    for i in 1..=l {
        x = x.mul(&r_elem(n, i)?)?;
    }
    Ok(x)
}

/// `sigma_l`, the longest element of `S_l` (acting on positions `1..=l`).
pub fn sigma_elem(n: usize, l: usize) -> Result<SignedPerm> {
    check_index(l, 0, n, "l")?;
    let mut window: Vec<i64> = (1..=n as i64).collect();
    window[..l].reverse();
    SignedPerm::from_window(&window)
}

/// The longest element of `W_n`.
pub fn w0(n: usize) -> SignedPerm {
    SignedPerm::from_window(&(1..=n as i64).map(|i| -i).collect::<Vec<_>>()).expect("valid window")
}

/// The longest element of `W_l` embedded in `W_n`.
pub fn w0_of(n: usize, l: usize) -> Result<SignedPerm> {
    check_index(l, 0, n, "l")?;
    Ok(w0(l).extend_to(n))
}

#[derive(Clone, Debug, Serialize)]
pub struct SpecialElements {
    pub t: Vec<SignedPerm>,
    pub r: Vec<SignedPerm>,
    pub a: Vec<SignedPerm>,
    pub sigma: Vec<SignedPerm>,
    pub w0: SignedPerm,
    pub sigma_n: SignedPerm,
}

/// `t_i`, `r_i` for `1 <= i <= n` and `a_l`, `sigma_l` for `0 <= l <= n`.
pub fn special_elements(n: usize) -> SpecialElements {
    SpecialElements {
        t: (1..=n).map(|i| t_elem(n, i).unwrap()).collect(),
        r: (1..=n).map(|i| r_elem(n, i).unwrap()).collect(),
        a: (0..=n).map(|l| a_elem(n, l).unwrap()).collect(),
        sigma: (0..=n).map(|l| sigma_elem(n, l).unwrap()).collect(),
        w0: w0(n),
        sigma_n: sigma_elem(n, n).unwrap(),
    }
}

/// Membership in `S_{l,n-l}`: unsigned, and stabilising `{1..l}`.
pub fn in_young(l: usize, w: &SignedPerm) -> bool {
    w.is_unsigned() && w.window().iter().take(l).all(|&x| x as usize <= l)
}

pub fn young_elements(l: usize, n: usize) -> Vec<SignedPerm> {
    all_signed_perms(n).into_iter().filter(|w| in_young(l, w)).collect()
}

/// Minimal length representatives of the left cosets `a S_{l,n-l}` in `S_n`:
/// the `a` with `ell(a sigma) = ell(a) + ell(sigma)` for all
/// `sigma in S_{l,n-l}`. Sorted by `(length, window)`.
pub fn min_reps_y(l: usize, n: usize) -> Result<Vec<SignedPerm>> {
    check_index(l, 0, n, "l")?;
    let young = young_elements(l, n);
    let mut out: Vec<SignedPerm> = all_signed_perms(n)
        .into_iter()
        .filter(|a| a.is_unsigned())
        .filter(|a| young.iter().all(|s| a.mul(s).unwrap().length() == a.length() + s.length()))
        .collect();
    out.sort_by_key(|w| (w.length(), w.clone()));
    Ok(out)
}

/// The set cut out by the literal condition `ell(a sigma) >= ell(sigma)` for
/// all `sigma in S_{l,n-l}`. Kept for comparison with [`min_reps_y`]; it is
/// strictly larger as soon as `S_{l,n-l}` is nontrivial.
pub fn y_set_literal(l: usize, n: usize) -> Result<Vec<SignedPerm>> {
    check_index(l, 0, n, "l")?;
    let young = young_elements(l, n);
    let mut out: Vec<SignedPerm> = all_signed_perms(n)
        .into_iter()
        .filter(|a| a.is_unsigned())
        .filter(|a| young.iter().all(|s| a.mul(s).unwrap().length() >= s.length()))
        .collect();
    out.sort_by_key(|w| (w.length(), w.clone()));
    Ok(out)
}

/// `w = a * a_l * sigma * b^{-1}` with `l = ell_t(w)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Decomposition {
    pub a: SignedPerm,
    pub l: usize,
    pub sigma: SignedPerm,
    pub b: SignedPerm,
}

impl Decomposition {
    pub fn recompose(&self) -> SignedPerm {
        let n = self.a.rank();
        let al = a_elem(n, self.l).expect("l <= n");
        self.a.mul(&al).and_then(|x| x.mul(&self.sigma)).and_then(|x| x.mul(&self.b.inverse())).expect("same rank")
    }

    pub fn lengths_add_up(&self, w: &SignedPerm) -> bool {
        let n = w.rank();
        let al = a_elem(n, self.l).expect("l <= n");
        w.length() == self.a.length() + al.length() + self.sigma.length() + self.b.length()
    }
}

/// The unique `u in S_n` increasing on `1..=l` and on `l+1..=n` with
/// `u({1..l}) = first`.
fn shuffle_rep(n: usize, first: &[usize]) -> SignedPerm {
    let mut first = first.to_vec();
    first.sort_unstable();
    let rest: Vec<usize> = (1..=n).filter(|x| !first.contains(x)).collect();
    let window: Vec<i64> = first.iter().chain(rest.iter()).map(|&x| x as i64).collect();
    SignedPerm::from_window(&window).expect("permutation")
}

/// Direct decomposition: `b` is read off the set of negative positions and
/// `a` off the set of their absolute values; `sigma` is what remains.
pub fn decompose(w: &SignedPerm) -> Decomposition {
    let n = w.rank();
    let window = w.window();
    let l = w.t_length();
    let neg_positions: Vec<usize> = window.iter().enumerate().filter(|(_, &x)| x < 0).map(|(i, _)| i + 1).collect();
    let neg_values: Vec<usize> = window.iter().filter(|&&x| x < 0).map(|&x| (-x) as usize).collect();
    let b = shuffle_rep(n, &neg_positions);
    let a = shuffle_rep(n, &neg_values);
    let al = a_elem(n, l).expect("l <= n");
    let sigma = al.inverse().mul(&a.inverse()).and_then(|x| x.mul(w)).and_then(|x| x.mul(&b)).expect("same rank");
    Decomposition { a, l, sigma, b }
}

/// Exhaustive search over `Y x S_{l,n-l} x Y`; returns every triple that
/// recomposes `w` with additive lengths.
pub fn decompose_by_search(w: &SignedPerm) -> Vec<Decomposition> {
    let n = w.rank();
    let l = w.t_length();
    let ys = min_reps_y(l, n).expect("l <= n");
    let al = a_elem(n, l).expect("l <= n");
    let mut found = Vec::new();
    for a in &ys {
        for b in &ys {
            let sigma =
                al.inverse().mul(&a.inverse()).and_then(|x| x.mul(w)).and_then(|x| x.mul(b)).expect("same rank");
            if !in_young(l, &sigma) {
                continue;
            }
            let d = Decomposition { a: a.clone(), l, sigma, b: b.clone() };
            if d.lengths_add_up(w) {
                found.push(d);
            }
        }
    }
    found
}

/// `sigma = sigma^- x sigma^+` with `sigma^- in S_l` acting on `1..=l` and
/// `sigma^+ in S_{n-l}` acting on `l+1..=n`, relabelled to `1..=n-l`.
pub fn split_sigma(d: &Decomposition) -> Result<(SignedPerm, SignedPerm)> {
    if !in_young(d.l, &d.sigma) {
        return Err(Error::NotInParabolic(format!("{} is not in S_{{{},n-{}}}", d.sigma, d.l, d.l)));
    }
    let w = d.sigma.window();
    let minus = SignedPerm::from_window(&w[..d.l])?;
    let plus: Vec<i64> = w[d.l..].iter().map(|&x| x - d.l as i64).collect();
    Ok((minus, SignedPerm::from_window(&plus)?))
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `|Y_{l,n-l}| = binomial(n, l)`.
pub fn y_count(l: usize, n: usize) -> usize {
    binomial(n, l)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str, n: usize) -> SignedPerm {
        SignedPerm::parse_word(n, s).unwrap()
    }

    #[test]
    fn special_element_examples() {
        assert_eq!(r_elem(2, 2).unwrap(), w("s1 t", 2));
        assert_eq!(a_elem(2, 1).unwrap(), w("t", 2));
        assert_eq!(t_elem(2, 2).unwrap(), w("s1 t s1", 2));
        assert_eq!(sigma_elem(3, 3).unwrap(), w("s1 s2 s1", 3));
        assert!(t_elem(2, 3).is_err());
        assert!(a_elem(2, 3).is_err());
        assert_eq!(a_elem(3, 0).unwrap(), SignedPerm::identity(3));
    }

    #[test]
    fn a_l_is_w_l_times_sigma_l() {
        for n in 1..=4 {
            for l in 0..=n {
                let lhs = a_elem(n, l).unwrap();
                let rhs = w0_of(n, l).unwrap().mul(&sigma_elem(n, l).unwrap()).unwrap();
                assert_eq!(lhs, rhs, "n={n} l={l}");
            }
        }
    }

    #[test]
    fn y_sets() {
        let y = min_reps_y(1, 2).unwrap();
        assert_eq!(y, vec![SignedPerm::identity(2), w("s1", 2)]);
        for n in 0..=4 {
            for l in 0..=n {
                assert_eq!(min_reps_y(l, n).unwrap().len(), y_count(l, n));
            }
            assert_eq!(min_reps_y(0, n).unwrap(), vec![SignedPerm::identity(n)]);
        }
    }

    #[test]
    fn literal_y_condition_is_larger() {
        // l = 1, n = 3: s1 s2 satisfies the literal inequality but is not a
        // minimal coset representative.
        let literal = y_set_literal(1, 3).unwrap();
        let standard = min_reps_y(1, 3).unwrap();
        assert!(literal.contains(&w("s1 s2", 3)));
        assert!(!standard.contains(&w("s1 s2", 3)));
        assert!(standard.iter().all(|a| literal.contains(a)));
        assert_eq!(y_set_literal(1, 2).unwrap(), min_reps_y(1, 2).unwrap());
    }

    #[test]
    fn decomposition_examples() {
        let d = decompose(&w("t", 2));
        assert_eq!(
            d,
            Decomposition {
                a: SignedPerm::identity(2),
                l: 1,
                sigma: SignedPerm::identity(2),
                b: SignedPerm::identity(2)
            }
        );
        let d = decompose(&w("s1 t", 2));
        assert_eq!(
            (d.a.clone(), d.l, d.sigma.clone(), d.b.clone()),
            (w("s1", 2), 1, SignedPerm::identity(2), SignedPerm::identity(2))
        );
        for n in 1..=4 {
            let d = decompose(&w0(n));
            assert_eq!(d.a, SignedPerm::identity(n));
            assert_eq!(d.l, n);
            assert_eq!(d.sigma, sigma_elem(n, n).unwrap());
            assert_eq!(d.b, SignedPerm::identity(n));
        }
    }

    #[test]
    fn decomposition_recomposes_everywhere() {
        for n in 1..=4 {
            for x in all_signed_perms(n) {
                let d = decompose(&x);
                assert_eq!(d.recompose(), x);
                assert!(d.lengths_add_up(&x));
                assert!(in_young(d.l, &d.sigma));
                let ys = min_reps_y(d.l, n).unwrap();
                assert!(ys.contains(&d.a) && ys.contains(&d.b));
            }
        }
    }

    #[test]
    fn decomposition_is_unique() {
        for n in 1..=3 {
            for x in all_signed_perms(n) {
                let found = decompose_by_search(&x);
                assert_eq!(found, vec![decompose(&x)], "{x}");
            }
        }
    }

    #[test]
    fn sigma_split() {
        let d = decompose(&w("t", 2));
        let (m, p) = split_sigma(&d).unwrap();
        assert!(m.is_identity() && p.is_identity());
        let d = Decomposition { a: SignedPerm::identity(3), l: 1, sigma: w("s2", 3), b: SignedPerm::identity(3) };
        let (m, p) = split_sigma(&d).unwrap();
        assert_eq!(m, SignedPerm::identity(1));
        assert_eq!(p, w("s1", 2));
        let d = decompose(&w0(3));
        let (m, p) = split_sigma(&d).unwrap();
        assert_eq!(m, sigma_elem(3, 3).unwrap());
        assert_eq!(p.rank(), 0);
        let bad = Decomposition { a: SignedPerm::identity(3), l: 1, sigma: w("s1", 3), b: SignedPerm::identity(3) };
        assert!(split_sigma(&bad).is_err());
    }
}
