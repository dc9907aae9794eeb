//! The CE cochain algebra `C(L) = H(L)∨` with its graded-commutative product.

use std::collections::BTreeMap;

use super::chains::{ce_homological, CeChains, Exactness};
use crate::graded::Complex;
use crate::lie::DgLieAlgebra;
use crate::linalg::{add_entry, axpy, SparseVec};
use crate::rational::sign;

/// `C(L)` in the dual flat basis `b_k*` of the chain monomials, so degree of
/// `b_k*` is minus the chain degree.
#[derive(Clone, Debug)]
pub struct CeCochains {
    pub chains: CeChains,
    pub complex: Complex,
    /// `b_a* · b_b* = Σ c · b_k*`.
    pub product: BTreeMap<(usize, usize), SparseVec>,
    d_flat: Vec<SparseVec>,
}

pub fn ce_cohomological(l: &DgLieAlgebra, max_weight: u32) -> CeCochains {
    CeCochains::from_chains(ce_homological(l, max_weight))
}

impl CeCochains {
    pub fn from_chains(chains: CeChains) -> Self {
        let n = chains.len();
        let mut d_flat = vec![SparseVec::new(); n];
        for j in 0..n {
            for (k, c) in chains.d_flat(j) {
                // (d b_k*)(b_j) = -(-1)^{|b_k*|} b_k*(d b_j)
                let s = -sign(-chains.degree(*k) as i64);
                add_entry(&mut d_flat[*k], j, s * c);
            }
        }
        let ks: Vec<usize> = (0..n).collect();
        let pieces = crate::par::map(&ks, |&k| chains.coproduct(k));
        let mut product: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
        for (k, cop) in pieces.into_iter().enumerate() {
            for ((a, b), c) in cop {
                let s = crate::graded::koszul(chains.degree(a), chains.degree(b));
                add_entry(product.entry((a, b)).or_default(), k, s * c);
            }
        }
        product.retain(|_, v| !v.is_empty());
        let complex = chains.complex.dual();
        Self {
            chains,
            complex,
            product,
            d_flat,
        }
    }

    pub fn len(&self) -> usize {
        self.chains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chains.is_empty()
    }

    pub fn degree(&self, k: usize) -> i32 {
        -self.chains.degree(k)
    }

    pub fn weight(&self, k: usize) -> u32 {
        self.chains.weight(k)
    }

    pub fn label(&self, k: usize) -> String {
        crate::graded::dual_label(&self.chains.label(k))
    }

    pub fn unit(&self) -> usize {
        self.chains.unit()
    }

    /// Flat indices spanning the augmentation ideal.
    pub fn augmentation_ideal(&self) -> Vec<usize> {
        (0..self.len()).filter(|k| *k != self.unit()).collect()
    }

    pub fn d_flat(&self, k: usize) -> &SparseVec {
        &self.d_flat[k]
    }

    pub fn apply_d(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (k, c) in v {
            axpy(&mut out, c, &self.d_flat[*k]);
        }
        out
    }

    pub fn multiply(&self, u: &SparseVec, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (a, ca) in u {
            for (b, cb) in v {
                if let Some(w) = self.product.get(&(*a, *b)) {
                    axpy(&mut out, &(ca * cb), w);
                }
            }
        }
        out
    }

    pub fn homology_dims(&self) -> BTreeMap<i32, usize> {
        self.complex.homology_dims()
    }

    /// Exactness keyed by cochain degree.
    pub fn exactness(&self) -> BTreeMap<i32, Exactness> {
        self.chains.exactness().into_iter().map(|(d, e)| (-d, e)).collect()
    }

    /// Structure constants of the cohomology ring restricted to the
    /// augmentation ideal: `true` iff all products of positive-weight
    /// cohomology classes vanish in cohomology.
    pub fn cohomology_square_zero(&self) -> bool {
        let h = self.complex.homology();
        let mut classes: Vec<SparseVec> = Vec::new();
        for (d, cycles) in &h.cycles {
            for z in cycles {
                classes.push(self.from_positions(*d, z));
            }
        }
        let unit = self.unit();
        let in_ideal: Vec<SparseVec> = classes
            .into_iter()
            .map(|mut v| {
                v.remove(&unit);
                v
            })
            .filter(|v| !v.is_empty())
            .collect();
        for a in &in_ideal {
            for b in &in_ideal {
                let p = self.multiply(a, b);
                if !p.is_empty() && !self.is_boundary(&p) {
                    return false;
                }
            }
        }
        true
    }

    /// Converts a vector in the degree-`d` block coordinates of `complex` to
    /// flat coordinates.
    pub fn from_positions(&self, d: i32, v: &SparseVec) -> SparseVec {
        let flat: Vec<usize> = (0..self.len())
            .filter(|k| self.degree(*k) == d)
            .collect();
        v.iter().map(|(i, c)| (flat[*i], c.clone())).collect()
    }

    pub fn is_boundary(&self, v: &SparseVec) -> bool {
        let Some((&k, _)) = v.iter().next() else {
            return true;
        };
        let deg = self.degree(k);
        let preimages: Vec<SparseVec> = (0..self.len())
            .filter(|j| self.degree(*j) == deg - 1)
            .map(|j| self.d_flat[j].clone())
            .collect();
        let mut span = crate::linalg::Span::new();
        for p in preimages {
            span.insert(p);
        }
        span.contains(v)
    }

    /// Weight-`≤ w` products that drop out of the truncation are zero; the
    /// unit acts as the identity.
    pub fn is_unit_left(&self) -> bool {
        let u = crate::linalg::unit(self.unit());
        (0..self.len()).all(|k| self.multiply(&u, &crate::linalg::unit(k)) == crate::linalg::unit(k))
    }

    /// `dim` per degree of the cochain space itself.
    pub fn dims(&self) -> BTreeMap<i32, usize> {
        self.complex.space().dims()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::fixtures::*;
    use crate::lie::free_lie;
    use crate::linalg::unit;

    fn suite() -> Vec<DgLieAlgebra> {
        vec![
            sl2(),
            heisenberg(),
            free_lie(&[("x".into(), 1)], 4).unwrap().lie,
            free_lie(&[("x".into(), 1), ("y".into(), 2)], 4).unwrap().lie,
        ]
    }

    #[test]
    fn product_is_derivation_and_commutative() {
        for l in suite() {
            let c = ce_cohomological(&l, 4);
            assert!(c.is_unit_left());
            for a in 0..c.len() {
                for b in 0..c.len() {
                    let (ua, ub) = (unit(a), unit(b));
                    let ab = c.multiply(&ua, &ub);
                    let mut rhs = c.multiply(&c.apply_d(&ua), &ub);
                    axpy(&mut rhs, &sign(c.degree(a) as i64), &c.multiply(&ua, &c.apply_d(&ub)));
                    assert_eq!(c.apply_d(&ab), rhs, "{} {}", c.label(a), c.label(b));
                    let ba = c.multiply(&ub, &ua);
                    let mut swapped = SparseVec::new();
                    axpy(&mut swapped, &crate::graded::koszul(c.degree(a), c.degree(b)), &ba);
                    assert_eq!(ab, swapped);
                }
            }
        }
    }

    #[test]
    fn free_even_is_square_zero_extension() {
        let l = free_lie(&[("x".into(), 2)], 4).unwrap().lie;
        let c = ce_cohomological(&l, 4);
        assert_eq!(c.homology_dims(), [(0, 1), (-1, 1)].into());
        assert!(c.cohomology_square_zero());
    }

    #[test]
    fn free_odd_is_dual_numbers() {
        let l = free_lie(&[("x".into(), 1)], 4).unwrap().lie;
        let c = ce_cohomological(&l, 4);
        // per weight: k in weight 0 and weight 1, degree 0
        let by_weight = c.chains.homology_by_weight().unwrap();
        assert_eq!(by_weight, [((0, 0), 1), ((0, 1), 1)].into());
        assert!(c.cohomology_square_zero());
    }

    #[test]
    fn sl2_trivial_coefficients() {
        let c = ce_cohomological(&sl2(), 3);
        assert_eq!(c.homology_dims(), [(0, 1), (3, 1)].into());
    }
}
