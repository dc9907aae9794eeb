//! Universal enveloping algebras in a PBW basis, and the PBW symmetrization
//! check against a brute-force quotient of the tensor algebra.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use super::DgLieAlgebra;
use crate::error::{Error, Result};
use crate::graded::{koszul, GradedMap, GradedSpace};
use crate::linalg::{Matrix, Span, SparseVec};
use crate::monomial::{GenSet, Monomial};
use crate::rational::{q_frac, Q};
use crate::sym::{symmetrize, WordVec};

const STEP_LIMIT: usize = 5_000_000;

/// `U(L)` up to weight `max_weight`. Weight is the Lie weight when `L`
/// carries one and the tensor length otherwise.
#[derive(Clone, Debug)]
pub struct EnvelopingAlgebra {
    pub lie: DgLieAlgebra,
    pub max_weight: u32,
    pub weights: Vec<u32>,
    /// PBW monomials in the ordered basis of `L`.
    pub basis: Vec<Monomial>,
    index: BTreeMap<Monomial, usize>,
}

fn element_weights(l: &DgLieAlgebra) -> Vec<u32> {
    l.weights().map(|w| w.to_vec()).unwrap_or_else(|| vec![1; l.dim()])
}

pub fn enveloping(l: &DgLieAlgebra, max_weight: u32) -> Result<EnvelopingAlgebra> {
    let weights = element_weights(l);
    let w = weights.clone();
    let basis = l.basis().monomials_weighted(&|g| w[g], max_weight);
    let index = basis.iter().enumerate().map(|(k, m)| (m.clone(), k)).collect();
    let u = EnvelopingAlgebra {
        lie: l.clone(),
        max_weight,
        weights,
        basis,
        index,
    };
    Ok(u)
}

impl EnvelopingAlgebra {
    pub fn gens(&self) -> &GenSet {
        self.lie.basis()
    }

    pub fn weight(&self, m: &Monomial) -> u32 {
        m.iter().map(|(g, e)| self.weights[*g] * e).sum()
    }

    pub fn degree(&self, k: usize) -> i32 {
        self.gens().degree(&self.basis[k])
    }

    pub fn label(&self, k: usize) -> String {
        self.gens().label(&self.basis[k])
    }

    /// `(degree, weight) → dim`.
    pub fn dims(&self) -> BTreeMap<(i32, u32), usize> {
        let mut out = BTreeMap::new();
        for m in &self.basis {
            *out.entry((self.gens().degree(m), self.weight(m))).or_insert(0) += 1;
        }
        out
    }

    /// Rewrites words of `L`-basis letters into PBW normal form using
    /// `b_j b_i = (-1)^{|i||j|} b_i b_j + [b_j, b_i]` (`j > i`) and
    /// `b b = ½[b, b]` for odd `b`.
    pub fn straighten(&self, v: &WordVec) -> Result<SparseVec> {
        let l = &self.lie;
        let mut pending: WordVec = v.clone();
        let mut out = SparseVec::new();
        let mut steps = 0usize;
        let half = q_frac(1, 2);
        while let Some((w, c)) = pending.pop_first() {
            steps += 1;
            if steps > STEP_LIMIT {
                return Err(Error::Invalid("PBW straightening did not terminate".into()));
            }
            if c.is_zero() {
                continue;
            }
            let bad = (0..w.len().saturating_sub(1))
                .find(|&i| w[i] > w[i + 1] || (w[i] == w[i + 1] && l.basis().is_odd(w[i])));
            let Some(i) = bad else {
                let (s, m) = self.gens().from_word(&w).expect("sorted word has no odd square");
                let k = *self.index.get(&m).ok_or_else(|| {
                    Error::Truncation(format!("monomial {} exceeds the weight bound", self.gens().label(&m)))
                })?;
                crate::linalg::add_entry(&mut out, k, s * c);
                continue;
            };
            let (a, b) = (w[i], w[i + 1]);
            let mut push = |word: Vec<usize>, coef: Q| {
                let e = pending.entry(word).or_insert_with(Q::zero);
                *e += coef;
            };
            let br = l.bracket_basis(a, b);
            if a == b {
                for (k, ck) in &br {
                    let mut nw = w[..i].to_vec();
                    nw.push(*k);
                    nw.extend_from_slice(&w[i + 2..]);
                    push(nw, &c * ck * &half);
                }
            } else {
                let mut sw = w.clone();
                sw.swap(i, i + 1);
                push(sw, &c * koszul(l.degree(a), l.degree(b)));
                for (k, ck) in &br {
                    let mut nw = w[..i].to_vec();
                    nw.push(*k);
                    nw.extend_from_slice(&w[i + 2..]);
                    push(nw, &c * ck);
                }
            }
        }
        Ok(out)
    }

    /// Product of two PBW basis elements; errors when the result could leave
    /// the weight bound.
    pub fn product(&self, a: usize, b: usize) -> Result<SparseVec> {
        if self.weight(&self.basis[a]) + self.weight(&self.basis[b]) > self.max_weight {
            return Err(Error::Truncation("product exceeds the weight bound".into()));
        }
        let mut w = GenSet::word(&self.basis[a]);
        w.extend(GenSet::word(&self.basis[b]));
        self.straighten(&[(w, Q::one())].into())
    }

    pub fn multiply(&self, x: &SparseVec, y: &SparseVec) -> Result<SparseVec> {
        let mut out = SparseVec::new();
        for (a, ca) in x {
            for (b, cb) in y {
                crate::linalg::axpy(&mut out, &(ca * cb), &self.product(*a, *b)?);
            }
        }
        Ok(out)
    }

    /// The differential of `U(L)`, extending `d_L` as a derivation.
    pub fn d(&self, k: usize) -> Result<SparseVec> {
        let word = GenSet::word(&self.basis[k]);
        let mut v = WordVec::new();
        let mut prefix = 0;
        for (i, &g) in word.iter().enumerate() {
            let s = koszul(1, prefix);
            for (h, c) in self.lie.d_of(g) {
                let mut nw = word.clone();
                nw[i] = *h;
                *v.entry(nw).or_insert_with(Q::zero) += c * &s;
            }
            prefix += self.lie.degree(g);
        }
        self.straighten(&v)
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Graded space with the PBW basis.
    pub fn space(&self) -> GradedSpace {
        let mut s = GradedSpace::new();
        for k in 0..self.basis.len() {
            s.push(self.degree(k), self.label(k));
        }
        s
    }

    /// Degree-major position of every PBW basis element inside [`Self::space`].
    pub fn positions(&self) -> Vec<(i32, usize)> {
        let mut count: BTreeMap<i32, usize> = BTreeMap::new();
        (0..self.basis.len())
            .map(|k| {
                let d = self.degree(k);
                let c = count.entry(d).or_insert(0);
                *c += 1;
                (d, *c - 1)
            })
            .collect()
    }

    /// The symmetrization of a PBW-indexed monomial of `Sym(L)`, pushed into `U`.
    pub fn symmetrized(&self, k: usize) -> Result<SparseVec> {
        self.straighten(&symmetrize(self.gens(), &GenSet::word(&self.basis[k])))
    }
}

/// The symmetrization map `Sym^{≤W}(L) → U^{≤W}(L)` as a graded map on the
/// shared monomial indexing (both sides use the PBW monomials).
pub fn pbw_map(l: &DgLieAlgebra, max_weight: u32) -> Result<GradedMap> {
    let u = enveloping(l, max_weight)?;
    let space = u.space();
    let pos = u.positions();
    let cols: Vec<SparseVec> = (0..u.basis.len())
        .map(|k| u.symmetrized(k))
        .collect::<Result<_>>()?;
    crate::graded::flat_map(&space, &space, &pos, &pos, 0, &cols)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PbwBlock {
    pub degree: i32,
    pub weight: u32,
    /// `dim Sym^{≤w}` in this degree.
    pub source_dim: usize,
    /// Dimension of the brute-force quotient `T^{≤w}/I` in this degree.
    pub quotient_dim: usize,
    /// Rank of `Sym^{≤w} → T^{≤w}/I`.
    pub quotient_rank: usize,
    /// Rank of `Sym^{≤w} → U^{≤w}` in PBW coordinates.
    pub pbw_rank: usize,
    pub bijective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PbwReport {
    pub max_weight: u32,
    pub blocks: Vec<PbwBlock>,
    pub bijective: bool,
}

/// All letter words of weight `≤ w`, grouped by degree.
fn words_up_to(l: &DgLieAlgebra, weights: &[u32], w: u32) -> BTreeMap<i32, Vec<Vec<usize>>> {
    let mut out: BTreeMap<i32, Vec<Vec<usize>>> = BTreeMap::new();
    let mut stack: Vec<(Vec<usize>, u32, i32)> = vec![(vec![], 0, 0)];
    while let Some((word, wt, deg)) = stack.pop() {
        out.entry(deg).or_default().push(word.clone());
        for g in 0..l.dim() {
            if wt + weights[g] <= w {
                let mut nw = word.clone();
                nw.push(g);
                stack.push((nw, wt + weights[g], deg + l.degree(g)));
            }
        }
    }
    for v in out.values_mut() {
        v.sort();
    }
    out
}

/// Verifies the PBW theorem blockwise: for every `w ≤ W` and degree, the
/// symmetrization `Sym^{≤w}(L) → T^{≤w}(L)/I` is bijective, where `I` is
/// spanned by `a ⊗ (xy - (-1)^{|x||y|} yx - [x,y]) ⊗ b` of weight `≤ w`.
pub fn pbw_check(l: &DgLieAlgebra, max_weight: u32) -> Result<PbwReport> {
    let u = enveloping(l, max_weight)?;
    let ws: Vec<u32> = (0..=max_weight).collect();
    let per_weight = crate::par::map(&ws, |&w| pbw_blocks_at(&u, w));
    let mut blocks = Vec::new();
    for b in per_weight {
        blocks.extend(b?);
    }
    let bijective = blocks.iter().all(|b| b.bijective);
    Ok(PbwReport {
        max_weight,
        blocks,
        bijective,
    })
}

fn pbw_blocks_at(u: &EnvelopingAlgebra, w: u32) -> Result<Vec<PbwBlock>> {
    let l = &u.lie;
    let words = words_up_to(l, &u.weights, w);
    let weight_of = |word: &[usize]| -> u32 { word.iter().map(|g| u.weights[*g]).sum() };
    let mut out = Vec::new();
    for (&deg, list) in &words {
        let index: BTreeMap<&Vec<usize>, usize> = list.iter().enumerate().map(|(k, x)| (x, k)).collect();
        let mut rel = Span::new();
        for word in list {
            // treat `word` as a ⊗ x ⊗ y ⊗ b at every split position
            for i in 0..word.len().saturating_sub(1) {
                let (x, y) = (word[i], word[i + 1]);
                let mut v = SparseVec::new();
                v.insert(index[word], Q::one());
                let mut sw = word.clone();
                sw.swap(i, i + 1);
                crate::linalg::add_entry(&mut v, index[&sw], -koszul(l.degree(x), l.degree(y)));
                for (k, c) in l.bracket_basis(x, y) {
                    let mut nw = word[..i].to_vec();
                    nw.push(k);
                    nw.extend_from_slice(&word[i + 2..]);
                    if weight_of(&nw) <= w {
                        crate::linalg::add_entry(&mut v, index[&nw], -c);
                    }
                }
                rel.insert(v);
            }
        }
        let quotient_dim = list.len() - rel.dim();
        let src: Vec<usize> = (0..u.basis.len())
            .filter(|k| u.degree(*k) == deg && u.weight(&u.basis[*k]) <= w)
            .collect();
        let mut img = Span::new();
        let mut pbw_cols = Vec::new();
        for &k in &src {
            let s = symmetrize(u.gens(), &GenSet::word(&u.basis[k]));
            let v: SparseVec = s.iter().map(|(word, c)| (index[word], c.clone())).collect();
            img.insert(rel.reduce(&v));
            pbw_cols.push(u.straighten(&s)?);
        }
        let pbw_rank = Matrix::from_columns(u.basis.len(), &pbw_cols).rank();
        let source_dim = src.len();
        let quotient_rank = img.dim();
        out.push(PbwBlock {
            degree: deg,
            weight: w,
            source_dim,
            quotient_dim,
            quotient_rank,
            pbw_rank,
            bijective: quotient_rank == source_dim && quotient_dim == source_dim && pbw_rank == source_dim,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::free_lie;
    use super::*;

    fn free_odd() -> DgLieAlgebra {
        free_lie(&[("x".to_string(), 1)], 6).unwrap().lie
    }

    #[test]
    fn abelian_enveloping_is_symmetric() {
        let l = DgLieAlgebra::abelian(gens(&[("a", 1), ("b", 2)]));
        let u = enveloping(&l, 3).unwrap();
        // b·a = a·b, a·a = 0
        let ab = u.product(1, 2).unwrap();
        let ba = u.product(2, 1).unwrap();
        assert_eq!(ab, ba);
        assert!(u.product(1, 1).unwrap().is_empty());
    }

    #[test]
    fn sl2_dims() {
        let u = enveloping(&sl2(), 3).unwrap();
        let mut by_weight = BTreeMap::new();
        for ((_, w), n) in u.dims() {
            *by_weight.entry(w).or_insert(0) += n;
        }
        assert_eq!(by_weight, [(0, 1), (1, 3), (2, 6), (3, 10)].into());
    }

    #[test]
    fn free_odd_one_per_degree() {
        let u = enveloping(&free_odd(), 6).unwrap();
        let mut by_degree: BTreeMap<i32, usize> = BTreeMap::new();
        for ((d, _), n) in u.dims() {
            *by_degree.entry(d).or_default() += n;
        }
        for d in 0..=6 {
            assert_eq!(by_degree.get(&d), Some(&1), "degree {d}");
        }
    }

    #[test]
    fn associativity_exhaustive() {
        for l in [sl2(), heisenberg(), free_odd()] {
            let u = enveloping(&l, 4).unwrap();
            let n = u.basis.len();
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        let wt = |k: usize| u.weight(&u.basis[k]);
                        if wt(a) + wt(b) + wt(c) > 4 {
                            continue;
                        }
                        let ab = u.product(a, b).unwrap();
                        let lhs = u.multiply(&ab, &crate::linalg::unit(c)).unwrap();
                        let bc = u.product(b, c).unwrap();
                        let rhs = u.multiply(&crate::linalg::unit(a), &bc).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn pbw_bijective_and_identity_on_weight_one() {
        for l in [sl2(), heisenberg(), free_odd()] {
            let r = pbw_check(&l, 4).unwrap();
            assert!(r.bijective, "{:?}", r.blocks.iter().find(|b| !b.bijective));
            let u = enveloping(&l, 4).unwrap();
            for g in 0..l.dim() {
                let k = u.index_of(&vec![(g, 1)]).unwrap();
                assert_eq!(u.symmetrized(k).unwrap(), crate::linalg::unit(k));
            }
        }
    }

    #[test]
    fn pbw_fails_without_jacobi() {
        let l = sl2();
        let mut t = l.bracket_table().clone();
        t.insert((1, 2), [(0, crate::rational::q(2))].into());
        t.insert((2, 1), [(0, crate::rational::q(-2))].into());
        t.insert((1, 0), [(1, crate::rational::q(-1))].into());
        t.insert((0, 1), [(1, crate::rational::q(1))].into());
        let bad = DgLieAlgebra::from_parts(l.basis().clone(), vec![], t, None);
        assert!(!bad.validate().is_ok());
        assert!(!pbw_check(&bad, 3).unwrap().bijective);
    }
}
