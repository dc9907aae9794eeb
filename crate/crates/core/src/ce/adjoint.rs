//! The derivation `δ : C(L) → C(L0, L∨)[-1]` attached to a morphism
//! `α : L0 → L`, where `L∨` is the coadjoint representation restricted along
//! `α`.
//!
//! For `q*` dual to a CE monomial of `L`, a CE monomial `p` of `L0` and a
//! basis vector `y_k` of `L`,
//!
//! ```text
//! δ(q*)(p)(y_k) = (-1)^{|y_k|(1 + |p|)} q*(Sym(α)(p) · η.y_k)
//! ```
//!
//! With this sign `δ` commutes with the differentials of `C(L)` and of the
//! shifted target, and `δ(ab) = δ(a)·α*(b) + (-1)^{|a|} α*(a)·δ(b)`.

use std::collections::BTreeMap;

use super::chains::CeChains;
use super::cochains::{ce_cohomological, CeCochains};
use super::coefficients::{ce_with_coefficients, CeCoefficients};
use crate::error::{Error, Result};
use crate::graded::{flat_map, GradedMap};
use crate::lie::{coadjoint_rep, LieMorphism};
use crate::linalg::{add_entry, axpy, SparseVec};
use crate::monomial::{constant, generator, Poly};
use crate::rational::{sign, Q};

/// Exponent of the sign on `q*(Sym(α)(p) · η.y)`, from `(|p|, |y|)`.
pub(crate) fn delta_sign(p: i64, y: i64) -> i64 {
    y * (1 + p)
}

#[derive(Clone, Debug)]
pub struct AdjointDerivation {
    pub source: CeCochains,
    pub target: CeCoefficients,
    /// `δ(b_q*)` in the flat basis of `target`.
    pub columns: Vec<SparseVec>,
    /// `δ` as a degree-0 map into `target.complex.shift(-1)`.
    pub map: GradedMap,
    /// `α*` on flat cochain bases.
    pub pullback: Vec<SparseVec>,
}

pub fn adjoint_derivation(alpha: &LieMorphism, max_weight: u32) -> Result<AdjointDerivation> {
    let d = build(alpha, max_weight, delta_sign)?;
    if let Some(q) = d.chain_map_defect() {
        return Err(Error::NotChainMap(format!(
            "adjoint derivation fails on {}",
            d.source.label(q)
        )));
    }
    Ok(d)
}

/// `Sym(α)(p)` in the CE chains of the target.
pub(crate) fn sym_image(alpha: &LieMorphism, chains: &CeChains, p: &crate::monomial::Monomial) -> Poly {
    let mut out = constant(Q::from_integer(1.into()));
    for g in crate::monomial::GenSet::word(p) {
        let mut img = Poly::new();
        for (j, c) in &alpha.images[g] {
            for (m, c1) in generator(*j) {
                crate::monomial::add_term(&mut img, m, c * c1);
            }
        }
        out = chains.gens.poly_mul(&out, &img);
    }
    out
}

/// `α* : C(L) → C(L0)` on flat cochain bases: column `q` is `α*(b_q*)`.
pub fn pullback(alpha: &LieMorphism, chains_l0: &CeChains, chains_l: &CeChains) -> Vec<SparseVec> {
    let mut cols = vec![SparseVec::new(); chains_l.len()];
    for p in 0..chains_l0.len() {
        for (m, c) in sym_image(alpha, chains_l, &chains_l0.monomials[p]) {
            if let Some(q) = chains_l.index_of(&m) {
                add_entry(&mut cols[q], p, c);
            }
        }
    }
    cols
}

pub(crate) fn build(alpha: &LieMorphism, max_weight: u32, sign_of: fn(i64, i64) -> i64) -> Result<AdjointDerivation> {
    alpha.validate()?;
    let source = ce_cohomological(&alpha.target, max_weight);
    let module = coadjoint_rep(&alpha.target).restrict(alpha)?;
    let target = ce_with_coefficients(&alpha.source, &module, max_weight);
    let big = &source.chains;
    let small = &target.chains;
    let ny = alpha.target.dim();
    let mut columns = vec![SparseVec::new(); source.len()];
    for p in 0..small.len() {
        let img = sym_image(alpha, big, &small.monomials[p]);
        let dp = small.degree(p) as i64;
        for k in 0..ny {
            let prod = big.gens.poly_mul(&img, &generator(k));
            let s = sign(sign_of(dp, alpha.target.degree(k) as i64));
            for (m, coef) in prod {
                if let Some(q) = big.index_of(&m) {
                    add_entry(&mut columns[q], target.index(p, k), &s * coef);
                }
            }
        }
    }
    let src_pos: Vec<(i32, usize)> = big.positions.iter().map(|(d, i)| (-d, *i)).collect();
    let shifted = target.complex.shift(-1);
    let tgt_pos: Vec<(i32, usize)> = target.positions.iter().map(|(d, i)| (d + 1, *i)).collect();
    let map = flat_map(source.complex.space(), shifted.space(), &src_pos, &tgt_pos, 0, &columns)?;
    let pullback = pullback(alpha, small, big);
    Ok(AdjointDerivation {
        source,
        target,
        columns,
        map,
        pullback,
    })
}

impl AdjointDerivation {
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (q, c) in v {
            axpy(&mut out, c, &self.columns[*q]);
        }
        out
    }

    /// Source cochains on which `δ d = d_{[-1]} δ` is tested: all of them
    /// when weights are Lie weights, otherwise those below the top weight.
    pub fn checked_range(&self) -> Vec<usize> {
        let top = self.source.chains.max_weight;
        let exact = self.source.chains.graded_by_lie_weight;
        (0..self.source.len())
            .filter(|q| exact || self.source.weight(*q) < top)
            .collect()
    }

    /// First source basis cochain where `δ` fails to commute with the
    /// differentials (the target's differential is negated by the shift).
    pub fn chain_map_defect(&self) -> Option<usize> {
        self.checked_range().into_iter().find(|&q| {
            let e = crate::linalg::unit(q);
            let lhs = self.apply(&self.source.apply_d(&e));
            let mut rhs = self.target.apply_d(&self.apply(&e));
            axpy(&mut rhs, &Q::from_integer(1.into()), &lhs);
            !rhs.is_empty()
        })
    }

    /// Residual of the derivation rule on a pair of basis cochains; exact
    /// when the weights of `a` and `b` add up to at most the truncation.
    pub fn derivation_residual(&self, a: usize, b: usize) -> SparseVec {
        let pull = &self.pullback;
        let (ua, ub) = (crate::linalg::unit(a), crate::linalg::unit(b));
        let lhs = self.apply(&self.source.multiply(&ua, &ub));
        let mut rhs = self.target.multiply_right(&self.apply(&ua), &pull[b]);
        let s = sign(self.source.degree(a) as i64);
        axpy(&mut rhs, &s, &self.target.multiply_left(&pull[a], &self.apply(&ub)));
        let mut out = lhs;
        axpy(&mut out, &-Q::from_integer(1.into()), &rhs);
        out
    }
}

/// Weight-1 block: `δ(η.y_k*)` as a map to `L∨`, keyed by `(k, j)` meaning
/// coefficient of `1*⊗y_j*`.
pub fn weight_one_block(d: &AdjointDerivation) -> BTreeMap<(usize, usize), Q> {
    let unit = d.target.chains.unit();
    let mut out = BTreeMap::new();
    for (q, m) in d.source.chains.monomials.iter().enumerate() {
        if m.len() == 1 && m[0].1 == 1 {
            for (i, c) in &d.columns[q] {
                let (p, j) = d.target.pairs[*i];
                if p == unit {
                    out.insert((m[0].0, j), c.clone());
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::fixtures::*;
    use crate::lie::{free_lie, DgLieAlgebra};
    use crate::linalg::unit;
    use crate::rational::q;

    fn suite() -> Vec<DgLieAlgebra> {
        vec![
            sl2(),
            heisenberg(),
            dg_example(),
            free_lie(&[("x".into(), 1)], 3).unwrap().lie,
            free_lie(&[("x".into(), 1), ("y".into(), 2)], 3).unwrap().lie,
        ]
    }

    fn inclusion(l: &DgLieAlgebra, sub: &[usize]) -> LieMorphism {
        let basis = crate::monomial::GenSet::new(
            sub.iter().map(|i| l.label(*i).to_string()).collect(),
            sub.iter().map(|i| l.degree(*i)).collect(),
        );
        let s = DgLieAlgebra::abelian(basis);
        LieMorphism {
            source: s,
            target: l.clone(),
            images: sub.iter().map(|i| unit(*i)).collect(),
        }
    }

    fn check(d: &AdjointDerivation) {
        assert_eq!(d.chain_map_defect(), None);
        assert!(d.apply(&unit(d.source.unit())).is_empty());
        for a in 0..d.source.len() {
            for b in 0..d.source.len() {
                if d.source.weight(a) + d.source.weight(b) <= d.source.chains.max_weight {
                    assert!(d.derivation_residual(a, b).is_empty(), "{} {}", d.source.label(a), d.source.label(b));
                }
            }
        }
    }

    #[test]
    fn identity_is_chain_map_and_derivation() {
        for l in suite() {
            let d = adjoint_derivation(&LieMorphism::identity(&l), 3).unwrap();
            check(&d);
            if l.weights().is_some() {
                let shifted = d.target.complex.shift(-1);
                assert!(crate::graded::is_chain_map(&d.source.complex, &shifted, &d.map));
            }
        }
    }

    #[test]
    fn abelian_subalgebra_inclusions() {
        check(&adjoint_derivation(&inclusion(&sl2(), &[0]), 3).unwrap());
        check(&adjoint_derivation(&inclusion(&heisenberg(), &[0, 2]), 3).unwrap());
    }

    #[test]
    fn weight_one_is_suspended_identity() {
        for l in suite() {
            let d = adjoint_derivation(&LieMorphism::identity(&l), 3).unwrap();
            let expected: BTreeMap<(usize, usize), Q> =
                (0..l.dim()).map(|k| ((k, k), q(if l.degree(k) % 2 == 0 { 1 } else { -1 }))).collect();
            assert_eq!(weight_one_block(&d), expected);
        }
    }

    #[test]
    fn other_signs_fail() {
        let id = LieMorphism::identity(&heisenberg());
        for f in [(|_, y| y) as fn(i64, i64) -> i64, |_, _| 0, |p, y| p * y] {
            assert!(build(&id, 3, f).unwrap().chain_map_defect().is_some());
        }
    }
}
