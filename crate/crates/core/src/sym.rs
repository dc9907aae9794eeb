//! Weight-truncated symmetric algebras `Sym^{≤W}(C)` and the signed
//! symmetrization into tensor powers.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::{One, Zero};

use crate::graded::{Complex, GradedSpace};
use crate::linalg::SparseVec;
use crate::monomial::{GenSet, Monomial, Poly};
use crate::rational::{q, Q};

/// Tensor-power vectors keyed by generator words.
pub type WordVec = BTreeMap<Vec<usize>, Q>;

/// Flattens the basis of a complex into a generator set, returning also the
/// flat position of every `(degree, index)` pair and the differential images
/// as polynomials of weight one.
pub fn flatten(c: &Complex) -> (GenSet, BTreeMap<(i32, usize), usize>, Vec<Poly>) {
    let mut labels = Vec::new();
    let mut degrees = Vec::new();
    let mut pos = BTreeMap::new();
    for d in c.space().degrees() {
        for (i, l) in c.space().labels(d).iter().enumerate() {
            pos.insert((d, i), labels.len());
            labels.push(l.clone());
            degrees.push(d);
        }
    }
    let mut images = vec![Poly::new(); labels.len()];
    for d in c.space().degrees() {
        let block = c.d(d);
        for i in 0..c.space().dim(d) {
            for (r, v) in block.column(i) {
                images[pos[&(d, i)]].insert(vec![(pos[&(d + 1, r)], 1)], v);
            }
        }
    }
    (GenSet::new(labels, degrees), pos, images)
}

pub fn factorial(n: usize) -> Q {
    (1..=n as i64).fold(Q::one(), |acc, k| acc * q(k))
}

/// `(1/n!) Σ_σ ε(σ, x̄) x_{σ(1)} ⊗ ⋯ ⊗ x_{σ(n)}`.
pub fn symmetrize(gens: &GenSet, word: &[usize]) -> WordVec {
    let n = word.len();
    let degs: Vec<i32> = word.iter().map(|g| gens.degrees[*g]).collect();
    let scale = Q::one() / factorial(n);
    let mut out = WordVec::new();
    for perm in (0..n).permutations(n) {
        let s = crate::monomial::permutation_sign(&degs, &perm);
        let w: Vec<usize> = perm.iter().map(|&i| word[i]).collect();
        let e = out.entry(w).or_insert_with(Q::zero);
        *e += s * &scale;
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// The symmetrization projector applied to a tensor-power vector.
pub fn project(gens: &GenSet, v: &WordVec) -> WordVec {
    let mut out = WordVec::new();
    for (w, c) in v {
        for (w2, c2) in symmetrize(gens, w) {
            let e = out.entry(w2).or_insert_with(Q::zero);
            *e += c * c2;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Differential on tensor powers: `d(x_1⊗⋯⊗x_n) = Σ ± x_1⊗⋯⊗dx_i⊗⋯⊗x_n`.
pub fn tensor_differential(gens: &GenSet, images: &[Poly], v: &WordVec) -> WordVec {
    let mut out = WordVec::new();
    for (w, c) in v {
        let mut prefix = 0;
        for (i, &g) in w.iter().enumerate() {
            let s = crate::graded::koszul(1, prefix);
            for (m, cc) in &images[g] {
                let mut w2 = w.clone();
                w2[i] = m[0].0;
                let e = out.entry(w2).or_insert_with(Q::zero);
                *e += c * cc * &s;
            }
            prefix += gens.degrees[g];
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

#[derive(Clone, Debug)]
pub struct SymTruncated {
    pub gens: GenSet,
    pub max_weight: u32,
    /// Monomial basis in flat order; degree-major inside `complex`.
    pub monomials: Vec<Monomial>,
    pub complex: Complex,
    /// `(degree, index)` of each flat monomial inside `complex`.
    pub positions: Vec<(i32, usize)>,
}

impl SymTruncated {
    pub fn weight(&self, k: usize) -> u32 {
        crate::monomial::length(&self.monomials[k])
    }

    /// Dimension table keyed by `(degree, weight)`.
    pub fn dims(&self) -> BTreeMap<(i32, u32), usize> {
        let mut out = BTreeMap::new();
        for (k, m) in self.monomials.iter().enumerate() {
            *out.entry((self.gens.degree(m), self.weight(k))).or_insert(0) += 1;
        }
        out
    }

    /// Image of the `k`-th monomial under the symmetrization into `T^w`.
    pub fn embed(&self, k: usize) -> WordVec {
        symmetrize(&self.gens, &GenSet::word(&self.monomials[k]))
    }
}

/// `Sym^{≤max_weight}(C)` with the induced differential.
pub fn sym_truncated(c: &Complex, max_weight: u32) -> SymTruncated {
    let (gens, _, images) = flatten(c);
    let monomials = gens.monomials(max_weight);
    let mut space = GradedSpace::new();
    let mut positions = Vec::with_capacity(monomials.len());
    for m in &monomials {
        positions.push((gens.degree(m), space.push(gens.degree(m), gens.label(m))));
    }
    let index: BTreeMap<&Monomial, usize> = monomials.iter().enumerate().map(|(k, m)| (m, k)).collect();
    let flat: Vec<(i32, usize)> = positions.clone();
    let cols: Vec<SparseVec> = monomials
        .iter()
        .map(|m| {
            gens.derive(m, &images, 1)
                .into_iter()
                .map(|(mm, v)| (index[&mm], v))
                .collect()
        })
        .collect();
    let d = crate::graded::flat_map(&space, &space, &flat, &flat, 1, &cols)
        .expect("derivation preserves weight and raises degree");
    let complex = Complex::new(space, d).expect("induced differential squares to zero");
    SymTruncated {
        gens,
        max_weight,
        monomials,
        complex,
        positions,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::unit;

    fn zero(items: &[(&str, i32)]) -> Complex {
        Complex::from_flat(items, &vec![SparseVec::new(); items.len()]).unwrap()
    }

    #[test]
    fn sym_squares() {
        let odd = sym_truncated(&zero(&[("x", 1)]), 2);
        assert!(!odd.dims().contains_key(&(2, 2)));
        let even = sym_truncated(&zero(&[("x", 2)]), 2);
        assert_eq!(even.dims()[&(4, 2)], 1);
    }

    #[test]
    fn sym_mixed_matches_monomial_count() {
        let s = sym_truncated(&zero(&[("x", 1), ("y", 2)]), 3);
        let mut by_degree: BTreeMap<i32, usize> = BTreeMap::new();
        for ((d, _), n) in s.dims() {
            *by_degree.entry(d).or_default() += n;
        }
        // x^a y^b with a ≤ 1, a + b ≤ 3
        let mut oracle: BTreeMap<i32, usize> = BTreeMap::new();
        for a in 0..=1 {
            for b in 0..=3 {
                if a + b <= 3 {
                    *oracle.entry(a + 2 * b).or_default() += 1;
                }
            }
        }
        assert_eq!(by_degree, oracle);
    }

    #[test]
    fn projector_idempotent() {
        let c = zero(&[("a", 1), ("b", 2), ("c", 1)]);
        let (gens, _, _) = flatten(&c);
        for w in 1..=4 {
            for word in (0..w).map(|_| 0..3usize).multi_cartesian_product() {
                let v: WordVec = [(word.clone(), Q::one())].into();
                let p = project(&gens, &v);
                assert_eq!(project(&gens, &p), p);
            }
        }
    }

    #[test]
    fn embedding_is_chain_map() {
        // a → b, both in the complex a(0) → b(1), plus an odd c
        let items = [("a", 0), ("b", 1), ("c", 1)];
        let c = Complex::from_flat(&items, &[unit(1), SparseVec::new(), SparseVec::new()]).unwrap();
        let s = sym_truncated(&c, 3);
        let (gens, _, images) = flatten(&c);
        for k in 0..s.monomials.len() {
            let (deg, i) = s.positions[k];
            let dsym = s.complex.d(deg).column(i);
            let mut lhs = WordVec::new();
            for (r, v) in dsym {
                let kk = s.positions.iter().position(|p| *p == (deg + 1, r)).unwrap();
                for (w, c) in s.embed(kk) {
                    *lhs.entry(w).or_insert_with(Q::zero) += c * &v;
                }
            }
            lhs.retain(|_, v| !v.is_zero());
            assert_eq!(lhs, tensor_differential(&gens, &images, &s.embed(k)));
        }
    }
}
