//! Graded-commutative monomials and polynomials in homogeneous generators.
//!
//! A monomial is a sorted list `(generator, exponent)`; it stands for the
//! ordered product `g_{i1}^{a1} g_{i2}^{a2} ⋯` with increasing indices. Odd
//! generators have exponent at most one (odd squares vanish).

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::graded::odd;
use crate::rational::Q;

pub type Monomial = Vec<(usize, u32)>;
pub type Poly = BTreeMap<Monomial, Q>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenSet {
    pub labels: Vec<String>,
    pub degrees: Vec<i32>,
}

impl GenSet {
    pub fn new(labels: Vec<String>, degrees: Vec<i32>) -> Self {
        assert_eq!(labels.len(), degrees.len());
        Self { labels, degrees }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn is_odd(&self, g: usize) -> bool {
        odd(self.degrees[g])
    }

    pub fn degree(&self, m: &Monomial) -> i32 {
        m.iter().map(|(g, e)| self.degrees[*g] * *e as i32).sum()
    }

    pub fn label(&self, m: &Monomial) -> String {
        if m.is_empty() {
            return "1".into();
        }
        m.iter()
            .map(|(g, e)| {
                if *e == 1 {
                    self.labels[*g].clone()
                } else {
                    format!("{}^{}", self.labels[*g], e)
                }
            })
            .collect::<Vec<_>>()
            .join("·")
    }

    /// The product `a·b` in normal form, or `None` when it vanishes.
    pub fn mul(&self, a: &Monomial, b: &Monomial) -> Option<(Q, Monomial)> {
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        // parity of odd factors of `a` still to the right of the merge point
        let mut odd_a_right: u32 = a.iter().filter(|(g, _)| self.is_odd(*g)).count() as u32;
        let mut flips = 0u32;
        while i < a.len() || j < b.len() {
            let take_a = j == b.len() || (i < a.len() && a[i].0 <= b[j].0);
            if i < a.len() && j < b.len() && a[i].0 == b[j].0 {
                let g = a[i].0;
                if self.is_odd(g) {
                    return None;
                }
                out.push((g, a[i].1 + b[j].1));
                i += 1;
                j += 1;
                continue;
            }
            if take_a {
                if self.is_odd(a[i].0) {
                    odd_a_right -= 1;
                }
                out.push(a[i]);
                i += 1;
            } else {
                if self.is_odd(b[j].0) {
                    flips += odd_a_right;
                }
                out.push(b[j]);
                j += 1;
            }
        }
        let s = if flips.is_multiple_of(2) { Q::one() } else { -Q::one() };
        Some((s, out))
    }

    /// Sorts a word of generators into normal form with its Koszul sign.
    pub fn from_word(&self, word: &[usize]) -> Option<(Q, Monomial)> {
        let mut sgn = Q::one();
        let mut m: Monomial = Vec::new();
        for &g in word {
            let (s, p) = self.mul(&m, &vec![(g, 1)])?;
            sgn *= s;
            m = p;
        }
        Some((sgn, m))
    }

    /// Expands a monomial into its ordered generator word.
    pub fn word(m: &Monomial) -> Vec<usize> {
        m.iter()
            .flat_map(|(g, e)| std::iter::repeat_n(*g, *e as usize))
            .collect()
    }

    /// All monomials of total weight `1..=max` (weight of a generator given
    /// by `weight`, which must be positive), plus the empty monomial, ordered
    /// by weight then lexicographically.
    pub fn monomials_weighted(&self, weight: &dyn Fn(usize) -> u32, max: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.enumerate(0, max, weight, &mut cur, &mut out);
        out.sort_by(|a, b| {
            let wa: u32 = a.iter().map(|(g, e)| weight(*g) * e).sum();
            let wb: u32 = b.iter().map(|(g, e)| weight(*g) * e).sum();
            wa.cmp(&wb).then_with(|| a.cmp(b))
        });
        out
    }

    pub fn monomials(&self, max_weight: u32) -> Vec<Monomial> {
        self.monomials_weighted(&|_| 1, max_weight)
    }

    fn enumerate(
        &self,
        start: usize,
        budget: u32,
        weight: &dyn Fn(usize) -> u32,
        cur: &mut Monomial,
        out: &mut Vec<Monomial>,
    ) {
        out.push(cur.clone());
        for g in start..self.len() {
            let w = weight(g);
            assert!(w > 0, "generator weights must be positive");
            let cap = if self.is_odd(g) { 1 } else { u32::MAX };
            let mut e = 1;
            while e <= cap && e * w <= budget {
                cur.push((g, e));
                self.enumerate(g + 1, budget - e * w, weight, cur, out);
                cur.pop();
                e += 1;
            }
        }
    }

    pub fn poly_mul(&self, a: &Poly, b: &Poly) -> Poly {
        let mut out = Poly::new();
        for (ma, ca) in a {
            for (mb, cb) in b {
                if let Some((s, m)) = self.mul(ma, mb) {
                    add_term(&mut out, m, s * ca * cb);
                }
            }
        }
        out
    }

    /// Applies the derivation of degree `deg` with generator images `images`
    /// to a monomial: `D(g_1⋯g_k) = Σ (-1)^{deg·(|g_1|+…+|g_{i-1}|)} g_1⋯D(g_i)⋯g_k`.
    pub fn derive(&self, m: &Monomial, images: &[Poly], deg: i32) -> Poly {
        let word = Self::word(m);
        let mut out = Poly::new();
        let mut prefix_deg = 0;
        for (pos, &g) in word.iter().enumerate() {
            let s = crate::graded::koszul(deg, prefix_deg);
            let pre = self.from_word(&word[..pos]);
            let post = self.from_word(&word[pos + 1..]);
            if let (Some((s1, p1)), Some((s2, p2))) = (pre, post) {
                let left: Poly = [(p1, s1)].into();
                let right: Poly = [(p2, s2)].into();
                let t = self.poly_mul(&self.poly_mul(&left, &images[g]), &right);
                for (mm, c) in t {
                    add_term(&mut out, mm, c * &s);
                }
            }
            prefix_deg += self.degrees[g];
        }
        out
    }

    pub fn derive_poly(&self, p: &Poly, images: &[Poly], deg: i32) -> Poly {
        let mut out = Poly::new();
        for (m, c) in p {
            for (mm, cc) in self.derive(m, images, deg) {
                add_term(&mut out, mm, cc * c);
            }
        }
        out
    }
}

pub fn add_term(p: &mut Poly, m: Monomial, c: Q) {
    if c.is_zero() {
        return;
    }
    let e = p.entry(m.clone()).or_insert_with(Q::zero);
    *e += c;
    if e.is_zero() {
        p.remove(&m);
    }
}

pub fn constant(c: Q) -> Poly {
    let mut p = Poly::new();
    add_term(&mut p, Vec::new(), c);
    p
}

pub fn generator(g: usize) -> Poly {
    [(vec![(g, 1)], Q::one())].into()
}

/// Polynomial (word) degree of a monomial.
/// `3/2·x^2·y + -u` style rendering; constants print as the bare coefficient.
pub fn poly_label(gens: &GenSet, p: &Poly) -> String {
    if p.is_empty() {
        return "0".into();
    }
    p.iter()
        .map(|(m, c)| {
            if m.is_empty() {
                crate::rational::format_q(c)
            } else {
                crate::rational::format_coeff(c, &gens.label(m))
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

pub fn length(m: &Monomial) -> u32 {
    m.iter().map(|(_, e)| e).sum()
}

/// Koszul sign `ε(σ, x̄)` of the permutation taking `word` to
/// `σ(word) = (word[perm[0]], word[perm[1]], …)`, for generators of the
/// given degrees.
pub fn permutation_sign(degrees: &[i32], perm: &[usize]) -> Q {
    let mut flips = 0u32;
    for a in 0..perm.len() {
        for b in a + 1..perm.len() {
            if perm[a] > perm[b] && odd(degrees[perm[a]]) && odd(degrees[perm[b]]) {
                flips += 1;
            }
        }
    }
    crate::rational::sign(flips as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn gens(d: &[i32]) -> GenSet {
        GenSet::new((0..d.len()).map(|i| format!("g{i}")).collect(), d.to_vec())
    }

    #[test]
    fn odd_anticommute() {
        let g = gens(&[1, 1]);
        let (s, m) = g.from_word(&[1, 0]).unwrap();
        assert_eq!(s, q(-1));
        assert_eq!(m, vec![(0, 1), (1, 1)]);
        assert!(g.from_word(&[0, 1, 0]).is_none());
    }

    #[test]
    fn even_commute() {
        let g = gens(&[2, 1]);
        let (s, m) = g.from_word(&[1, 0, 0]).unwrap();
        assert_eq!(s, q(1));
        assert_eq!(m, vec![(0, 2), (1, 1)]);
    }

    #[test]
    fn mul_matches_word_sort() {
        let g = gens(&[1, 2, -1, 1, 0]);
        let ms = g.monomials(3);
        for a in &ms {
            for b in &ms {
                let mut w = GenSet::word(a);
                w.extend(GenSet::word(b));
                assert_eq!(g.mul(a, b), g.from_word(&w));
            }
        }
    }

    #[test]
    fn monomial_counts() {
        // ℚ[y] ⊗ Λ(x), y even
        let g = gens(&[1, 2]);
        assert_eq!(g.monomials(3).len(), 1 + 2 + 2 + 2);
    }

    #[test]
    fn derivation_squares_to_zero_on_koszul() {
        // X degree 0, U degree -1, dU = X²
        let g = gens(&[0, -1]);
        let images = vec![Poly::new(), [(vec![(0, 2)], q(1))].into()];
        let m = vec![(0, 3), (1, 1)];
        let dm = g.derive(&m, &images, 1);
        assert_eq!(dm, [(vec![(0, 5)], q(1))].into());
        assert!(g.derive_poly(&dm, &images, 1).is_empty());
    }

    #[test]
    fn permutation_sign_transposition() {
        assert_eq!(permutation_sign(&[1, 1], &[1, 0]), q(-1));
        assert_eq!(permutation_sign(&[1, 2], &[1, 0]), q(1));
    }
}
