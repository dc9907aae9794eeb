//! CE cochains with coefficients, modelled as `C(L) ⊗ M` twisted by the
//! degree-1 element `Θ = Σ_i θ_i ⊗ x_i`, where `θ_i = (η.x_i)*`:
//!
//! ```text
//! d(g ⊗ m) = dg ⊗ m + (-1)^{|g|} g ⊗ dm + Σ_i (-1)^{|x_i||g|} θ_i g ⊗ x_i m
//! ```
//!
//! For finite-dimensional `M` this is `Hom(Sym^{≤W}(L[1]), M)`, and it is a
//! dg-module over `C(L)` by left multiplication.

use std::collections::BTreeMap;

use super::chains::{ce_homological, CeChains};
use super::cochains::CeCochains;
use crate::graded::{flat_map, koszul, Complex, GradedSpace};
use crate::lie::{DgLieAlgebra, Representation};
use crate::linalg::{add_entry, axpy, unit, SparseVec};
use crate::rational::sign;

/// Exponent of the overall sign on the twisting term.
pub(crate) const ACTION_SIGN: i64 = 0;

#[derive(Clone, Debug)]
pub struct CeCoefficients {
    pub chains: CeChains,
    pub cochains: CeCochains,
    pub module: Representation,
    /// Flat basis `(p, m)` standing for `p* ⊗ m`, flat index `p·dim M + m`.
    pub pairs: Vec<(usize, usize)>,
    pub complex: Complex,
    /// `(degree, index)` inside `complex` for every flat index.
    pub positions: Vec<(i32, usize)>,
    d_flat: Vec<SparseVec>,
}

pub fn ce_with_coefficients(l: &DgLieAlgebra, m: &Representation, max_weight: u32) -> CeCoefficients {
    build(ce_homological(l, max_weight), m, ACTION_SIGN)
}

pub(crate) fn build(chains: CeChains, m: &Representation, action_sign: i64) -> CeCoefficients {
    let cochains = CeCochains::from_chains(chains.clone());
    let l = &chains.lie;
    let dm = m.dim();
    let np = chains.len();
    let idx = |p: usize, k: usize| p * dm + k;
    let pairs: Vec<(usize, usize)> = (0..np).flat_map(|p| (0..dm).map(move |k| (p, k))).collect();
    let deg = |p: usize, k: usize| m.basis.degrees[k] + cochains.degree(p);
    let thetas: Vec<(usize, usize)> = (0..l.dim())
        .filter_map(|i| chains.index_of(&vec![(i, 1)]).map(|t| (i, t)))
        .collect();

    let d_flat: Vec<SparseVec> = crate::par::map(&pairs, |&(p, k)| {
        let g_deg = cochains.degree(p);
        let mut out = SparseVec::new();
        for (p2, c) in cochains.d_flat(p) {
            add_entry(&mut out, idx(*p2, k), c.clone());
        }
        let s = sign(g_deg as i64);
        for (k2, c) in &m.d[k] {
            add_entry(&mut out, idx(p, *k2), &s * c);
        }
        for &(i, t) in &thetas {
            let xm = m.act_basis(i, k);
            if xm.is_empty() {
                continue;
            }
            let tg = cochains.multiply(&unit(t), &unit(p));
            let s = sign(action_sign) * koszul(l.degree(i), g_deg);
            for (p2, c1) in &tg {
                for (k2, c2) in &xm {
                    add_entry(&mut out, idx(*p2, *k2), &s * c1 * c2);
                }
            }
        }
        out
    });
    let items: Vec<(String, i32)> = pairs
        .iter()
        .map(|&(p, k)| (format!("{}⊗{}", cochains.label(p), m.basis.labels[k]), deg(p, k)))
        .collect();
    let (space, positions) = GradedSpace::from_flat(&items);
    let map = flat_map(&space, &space, &positions, &positions, 1, &d_flat).expect("degree +1");
    let complex = Complex::new(space.clone(), map.clone()).unwrap_or_else(|_| Complex::new_unchecked(space, map));
    CeCoefficients {
        chains,
        cochains,
        module: m.clone(),
        pairs,
        complex,
        positions,
        d_flat,
    }
}

impl CeCoefficients {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn index(&self, p: usize, k: usize) -> usize {
        p * self.module.dim() + k
    }

    pub fn degree(&self, i: usize) -> i32 {
        let (p, k) = self.pairs[i];
        self.module.basis.degrees[k] + self.cochains.degree(p)
    }

    pub fn d_flat(&self, i: usize) -> &SparseVec {
        &self.d_flat[i]
    }

    pub fn apply_d(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, c) in v {
            axpy(&mut out, c, &self.d_flat[*i]);
        }
        out
    }

    pub fn homology_dims(&self) -> BTreeMap<i32, usize> {
        self.complex.homology_dims()
    }

    /// `g · (p*⊗m) = (g·p*)⊗m`.
    pub fn multiply_left(&self, g: &SparseVec, v: &SparseVec) -> SparseVec {
        let c = &self.cochains;
        self.multiply_with(v, |p, _| c.multiply(g, &unit(p)))
    }

    /// `(p*⊗m) · g = (-1)^{|m||g|} (p*·g)⊗m`.
    pub fn multiply_right(&self, v: &SparseVec, g: &SparseVec) -> SparseVec {
        let c = &self.cochains;
        self.multiply_with(v, |p, m| {
            let mut out = SparseVec::new();
            for (b, cb) in g {
                let s = koszul(self.module.basis.degrees[m], c.degree(*b));
                axpy(&mut out, &(s * cb), &c.multiply(&unit(p), &unit(*b)));
            }
            out
        })
    }

    fn multiply_with(&self, v: &SparseVec, f: impl Fn(usize, usize) -> SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, ci) in v {
            let (p, m) = self.pairs[*i];
            for (p2, c2) in f(p, m) {
                add_entry(&mut out, self.index(p2, m), ci * c2);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::fixtures::*;
    use crate::lie::{adjoint_rep, coadjoint_rep, free_lie, trivial_rep};

    #[test]
    fn d_squared_zero_with_graded_coefficients() {
        let free12 = free_lie(&[("x".into(), 1), ("y".into(), 2)], 3).unwrap().lie;
        for l in [sl2(), heisenberg(), dg_example(), free12] {
            for m in [adjoint_rep(&l), coadjoint_rep(&l)] {
                let c = ce_with_coefficients(&l, &m, 3);
                assert_eq!(c.complex.d_squared_defect(), None, "{:?}", l.basis().labels);
            }
        }
    }

    #[test]
    fn dg_module_over_cochains() {
        let l = dg_example();
        for m in [adjoint_rep(&l), coadjoint_rep(&l)] {
            let t = ce_with_coefficients(&l, &m, 3);
            let c = &t.cochains;
            for g in 0..c.len() {
                for i in 0..t.len() {
                    if c.weight(g) + c.weight(t.pairs[i].0) > 3 {
                        continue;
                    }
                    let (ug, ui) = (unit(g), unit(i));
                    let lhs = t.apply_d(&t.multiply_left(&ug, &ui));
                    let mut rhs = t.multiply_left(&c.apply_d(&ug), &ui);
                    axpy(&mut rhs, &sign(c.degree(g) as i64), &t.multiply_left(&ug, &t.apply_d(&ui)));
                    assert_eq!(lhs, rhs);
                    let lhs = t.apply_d(&t.multiply_right(&ui, &ug));
                    let mut rhs = t.multiply_right(&t.apply_d(&ui), &ug);
                    axpy(&mut rhs, &sign(t.degree(i) as i64), &t.multiply_right(&ui, &c.apply_d(&ug)));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn other_action_sign_fails() {
        let l = sl2();
        let m = adjoint_rep(&l);
        let c = build(ce_homological(&l, 3), &m, 1 - ACTION_SIGN);
        assert!(c.complex.d_squared_defect().is_some());
    }

    #[test]
    fn trivial_coefficients_match_cochains() {
        for l in [sl2(), heisenberg()] {
            let k = trivial_rep(&l, gens(&[("1", 0)]), vec![]);
            let a = ce_with_coefficients(&l, &k, 3);
            let b = super::super::ce_cohomological(&l, 3);
            for i in 0..a.len() {
                assert_eq!(a.d_flat(i), b.d_flat(i));
            }
            assert_eq!(a.homology_dims(), b.homology_dims());
        }
    }

    #[test]
    fn sl2_adjoint_acyclic() {
        let l = sl2();
        let c = ce_with_coefficients(&l, &adjoint_rep(&l), 3);
        assert_eq!(c.len(), 24);
        assert!(c.homology_dims().is_empty());
    }

    #[test]
    fn abelian_zero_action_is_tensor() {
        let l = DgLieAlgebra::abelian(gens(&[("a", 1)]));
        let m = trivial_rep(&l, gens(&[("u", 0), ("v", -1)]), vec![]);
        let c = ce_with_coefficients(&l, &m, 3);
        let base = super::super::ce_cohomological(&l, 3).homology_dims();
        let mut expected: BTreeMap<i32, usize> = BTreeMap::new();
        for (d, n) in base {
            *expected.entry(d).or_default() += n;
            *expected.entry(d - 1).or_default() += n;
        }
        assert_eq!(c.homology_dims(), expected);
    }
}
