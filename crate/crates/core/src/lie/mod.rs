//! Finite dg-Lie algebras over ℚ in a flat homogeneous basis.

mod enveloping;
mod free;
mod rep;

pub use enveloping::{enveloping, pbw_check, pbw_map, EnvelopingAlgebra, PbwBlock, PbwReport};
pub use free::{free_lie, FreeLiePresentation};
pub use rep::{adjoint_rep, coadjoint_rep, rep_tensor, trivial_rep, Representation};
#[cfg(test)]
pub(crate) use examples as fixtures;

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graded::{koszul, Complex};
use crate::linalg::{axpy, scaled, SparseVec};
use crate::monomial::GenSet;
use crate::rational::{q, sign};

/// A dg-Lie algebra: basis `basis`, differential `d[i] = d(e_i)`, and the full
/// ordered bracket table `bracket[(i, j)] = [e_i, e_j]` (absent = zero).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgLieAlgebra {
    basis: GenSet,
    d: Vec<SparseVec>,
    bracket: BTreeMap<(usize, usize), SparseVec>,
    /// Optional positive Lie weights (free Lie algebras), additive under the
    /// bracket.
    weights: Option<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: String,
    pub witness: Vec<String>,
    pub count: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    fn record(&mut self, axiom: &str, witness: Vec<String>) {
        if let Some(v) = self.violations.iter_mut().find(|v| v.axiom == axiom) {
            v.count += 1;
        } else {
            self.violations.push(Violation {
                axiom: axiom.to_string(),
                witness,
                count: 1,
            });
        }
    }

    pub fn summary(&self) -> String {
        self.violations
            .iter()
            .map(|v| format!("{} at ({}) [{} cases]", v.axiom, v.witness.join(","), v.count))
            .collect::<Vec<_>>()
            .join("; ")
    }
}

impl DgLieAlgebra {
    /// Assembles an algebra without checking the axioms; see [`Self::validate`].
    pub fn from_parts(
        basis: GenSet,
        d: Vec<SparseVec>,
        bracket: BTreeMap<(usize, usize), SparseVec>,
        weights: Option<Vec<u32>>,
    ) -> Self {
        let mut bracket = bracket;
        bracket.retain(|_, v| {
            v.retain(|_, c| !c.is_zero());
            !v.is_empty()
        });
        let mut d = d;
        d.resize(basis.len(), SparseVec::new());
        Self {
            basis,
            d,
            bracket,
            weights,
        }
    }

    /// Assembles and validates.
    pub fn new(
        basis: GenSet,
        d: Vec<SparseVec>,
        bracket: BTreeMap<(usize, usize), SparseVec>,
        weights: Option<Vec<u32>>,
    ) -> Result<Self> {
        let l = Self::from_parts(basis, d, bracket, weights);
        let report = l.validate();
        if report.is_ok() {
            Ok(l)
        } else {
            Err(Error::Axiom(report.summary()))
        }
    }

    /// Fills `[e_j, e_i] = -(-1)^{|i||j|}[e_i, e_j]` wherever only one order is
    /// given.
    pub fn complete_antisymmetry(
        basis: &GenSet,
        given: BTreeMap<(usize, usize), SparseVec>,
    ) -> BTreeMap<(usize, usize), SparseVec> {
        let mut out = given.clone();
        for ((i, j), v) in &given {
            if !given.contains_key(&(*j, *i)) {
                let s = -koszul(basis.degrees[*i], basis.degrees[*j]);
                out.insert((*j, *i), scaled(v, &s));
            }
        }
        out
    }

    pub fn abelian(basis: GenSet) -> Self {
        let n = basis.len();
        Self::from_parts(basis, vec![SparseVec::new(); n], BTreeMap::new(), None)
    }

    pub fn zero() -> Self {
        Self::abelian(GenSet::new(vec![], vec![]))
    }

    pub fn basis(&self) -> &GenSet {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.basis.degrees[i]
    }

    pub fn label(&self, i: usize) -> &str {
        &self.basis.labels[i]
    }

    pub fn weights(&self) -> Option<&[u32]> {
        self.weights.as_deref()
    }

    pub fn d_of(&self, i: usize) -> &SparseVec {
        &self.d[i]
    }

    pub fn differential(&self) -> &[SparseVec] {
        &self.d
    }

    pub fn bracket_table(&self) -> &BTreeMap<(usize, usize), SparseVec> {
        &self.bracket
    }

    pub fn is_abelian(&self) -> bool {
        self.bracket.is_empty()
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> SparseVec {
        self.bracket.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn bracket(&self, u: &SparseVec, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, a) in u {
            for (j, b) in v {
                if let Some(w) = self.bracket.get(&(*i, *j)) {
                    axpy(&mut out, &(a * b), w);
                }
            }
        }
        out
    }

    pub fn apply_d(&self, u: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, a) in u {
            axpy(&mut out, a, &self.d[*i]);
        }
        out
    }

    /// The underlying cochain complex.
    pub fn complex(&self) -> Complex {
        let items: Vec<(&str, i32)> = (0..self.dim()).map(|i| (self.label(i), self.degree(i))).collect();
        Complex::from_flat(&items, &self.d).expect("validated differential")
    }

    /// Per-degree cohomology dimensions of the underlying complex.
    pub fn cohomology_dims(&self) -> BTreeMap<i32, usize> {
        self.complex().homology_dims()
    }

    /// Degree → dimension of the underlying graded space.
    pub fn dims(&self) -> BTreeMap<i32, usize> {
        let mut out = BTreeMap::new();
        for d in &self.basis.degrees {
            *out.entry(*d).or_insert(0) += 1;
        }
        out
    }

    fn labels3(&self, i: usize, j: usize, k: usize) -> Vec<String> {
        vec![self.label(i).into(), self.label(j).into(), self.label(k).into()]
    }

    /// Checks every axiom exactly, recording one witness per violated axiom.
    pub fn validate(&self) -> ValidationReport {
        let n = self.dim();
        let mut r = ValidationReport::default();
        let deg = |i: usize| self.degree(i);
        let homogeneous = |v: &SparseVec, target: i32| v.keys().all(|k| deg(*k) == target);
        for i in 0..n {
            if !homogeneous(&self.d[i], deg(i) + 1) {
                r.record("differential degree", vec![self.label(i).into()]);
            }
        }
        for ((i, j), v) in &self.bracket {
            if !homogeneous(v, deg(*i) + deg(*j)) {
                r.record("bracket degree", vec![self.label(*i).into(), self.label(*j).into()]);
            }
        }
        if let Some(w) = &self.weights {
            for ((i, j), v) in &self.bracket {
                if v.keys().any(|k| w[*k] != w[*i] + w[*j]) {
                    r.record("bracket weight", vec![self.label(*i).into(), self.label(*j).into()]);
                }
            }
        }
        for i in 0..n {
            let dd = self.apply_d(&self.d[i]);
            if !dd.is_empty() {
                r.record("d∘d = 0", vec![self.label(i).into()]);
            }
        }
        for i in 0..n {
            for j in i..n {
                let mut s = self.bracket_basis(i, j);
                axpy(&mut s, &koszul(deg(i), deg(j)), &self.bracket_basis(j, i));
                if !s.is_empty() {
                    r.record("antisymmetry", vec![self.label(i).into(), self.label(j).into()]);
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                // d[x,y] = [dx,y] + (-1)^{|x|}[x,dy]
                let b = self.bracket_basis(i, j);
                let mut s = self.apply_d(&b);
                let ei = crate::linalg::unit(i);
                let ej = crate::linalg::unit(j);
                axpy(&mut s, &q(-1), &self.bracket(&self.d[i], &ej));
                axpy(&mut s, &-sign(deg(i) as i64), &self.bracket(&ei, &self.d[j]));
                if !s.is_empty() {
                    r.record("Leibniz", vec![self.label(i).into(), self.label(j).into()]);
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if !self.jacobi_defect(i, j, k).is_empty() {
                        r.record("Jacobi", self.labels3(i, j, k));
                    }
                }
            }
        }
        r
    }

    /// `[x,[y,z]] - [[x,y],z] - (-1)^{|x||y|}[y,[x,z]]` on basis vectors.
    pub fn jacobi_defect(&self, i: usize, j: usize, k: usize) -> SparseVec {
        let e = crate::linalg::unit;
        let mut s = self.bracket(&e(i), &self.bracket_basis(j, k));
        axpy(&mut s, &q(-1), &self.bracket(&self.bracket_basis(i, j), &e(k)));
        axpy(
            &mut s,
            &-koszul(self.degree(i), self.degree(j)),
            &self.bracket(&e(j), &self.bracket_basis(i, k)),
        );
        s
    }

    /// Keeps basis vectors of Lie weight `≤ w` (the nilpotent quotient by
    /// the ideal of higher weights). Requires weights.
    pub fn weight_truncate(&self, w: u32) -> Self {
        let Some(ws) = &self.weights else {
            return self.clone();
        };
        let keep: Vec<usize> = (0..self.dim()).filter(|i| ws[*i] <= w).collect();
        let new_index: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(a, b)| (*b, a)).collect();
        let remap = |v: &SparseVec| -> SparseVec {
            v.iter()
                .filter_map(|(k, c)| new_index.get(k).map(|nk| (*nk, c.clone())))
                .collect()
        };
        let basis = GenSet::new(
            keep.iter().map(|i| self.basis.labels[*i].clone()).collect(),
            keep.iter().map(|i| self.basis.degrees[*i]).collect(),
        );
        let d = keep.iter().map(|i| remap(&self.d[*i])).collect();
        let bracket = self
            .bracket
            .iter()
            .filter_map(|((i, j), v)| Some(((*new_index.get(i)?, *new_index.get(j)?), remap(v))))
            .collect();
        Self::from_parts(basis, d, bracket, Some(keep.iter().map(|i| ws[*i]).collect()))
    }

    /// Direct sum with the bracket zero between the summands.
    pub fn direct_sum(&self, other: &DgLieAlgebra) -> Self {
        let n = self.dim();
        let shift = |v: &SparseVec| -> SparseVec { v.iter().map(|(k, c)| (k + n, c.clone())).collect() };
        let mut labels = self.basis.labels.clone();
        labels.extend(other.basis.labels.iter().cloned());
        let mut degrees = self.basis.degrees.clone();
        degrees.extend(other.basis.degrees.iter().copied());
        let mut d = self.d.clone();
        d.extend(other.d.iter().map(shift));
        let mut bracket = self.bracket.clone();
        for ((i, j), v) in &other.bracket {
            bracket.insert((i + n, j + n), shift(v));
        }
        let weights = match (&self.weights, &other.weights) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).copied().collect()),
            _ => None,
        };
        Self::from_parts(GenSet::new(labels, degrees), d, bracket, weights)
    }

    pub fn with_weights(mut self, weights: Option<Vec<u32>>) -> Self {
        self.weights = weights;
        self
    }
}

/// `L` in the basis `v_i = e_i + Σ_{j<i, |e_j| = |e_i|} c_ij e_j` with small
/// seeded integers `c_ij`, and the isomorphism `v_i ↦ v_i` into `L`.
pub fn random_basis_change(l: &DgLieAlgebra, seed: u64) -> (DgLieAlgebra, LieMorphism) {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let n = l.dim();
    let cols: Vec<SparseVec> = (0..n)
        .map(|i| {
            let mut v = crate::linalg::unit(i);
            for j in (0..i).filter(|j| l.degree(*j) == l.degree(i)) {
                crate::linalg::add_entry(&mut v, j, q(rng.gen_range(-2..=2)));
            }
            v
        })
        .collect();
    let p = crate::linalg::Matrix::from_columns(n, &cols);
    let back = |v: &SparseVec| p.solve(v).expect("unitriangular");
    let d = (0..n).map(|i| back(&l.apply_d(&cols[i]))).collect();
    let mut bracket = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            let v = back(&l.bracket(&cols[i], &cols[j]));
            if !v.is_empty() {
                bracket.insert((i, j), v);
            }
        }
    }
    let labels = (0..n).map(|i| format!("{}'", l.label(i))).collect();
    let m = DgLieAlgebra::from_parts(GenSet::new(labels, l.basis.degrees.clone()), d, bracket, l.weights.clone());
    let iso = LieMorphism {
        source: m.clone(),
        target: l.clone(),
        images: cols,
    };
    (m, iso)
}

/// A degree-0 linear map `α : L0 → L` given by images of basis vectors.
#[derive(Clone, Debug)]
pub struct LieMorphism {
    pub source: DgLieAlgebra,
    pub target: DgLieAlgebra,
    pub images: Vec<SparseVec>,
}

impl LieMorphism {
    pub fn identity(l: &DgLieAlgebra) -> Self {
        Self {
            source: l.clone(),
            target: l.clone(),
            images: (0..l.dim()).map(crate::linalg::unit).collect(),
        }
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, c) in v {
            axpy(&mut out, c, &self.images[*i]);
        }
        out
    }

    /// Checks degree, `α d = d α` and `α[x,y] = [αx, αy]`.
    pub fn validate(&self) -> Result<()> {
        let (s, t) = (&self.source, &self.target);
        for i in 0..s.dim() {
            if self.images[i].keys().any(|k| t.degree(*k) != s.degree(i)) {
                return Err(Error::Axiom(format!("α does not preserve the degree of {}", s.label(i))));
            }
            let lhs = self.apply(s.d_of(i));
            let rhs = t.apply_d(&self.images[i]);
            if lhs != rhs {
                return Err(Error::Axiom(format!("α does not commute with d at {}", s.label(i))));
            }
        }
        for i in 0..s.dim() {
            for j in 0..s.dim() {
                let lhs = self.apply(&s.bracket_basis(i, j));
                let rhs = t.bracket(&self.images[i], &self.images[j]);
                if lhs != rhs {
                    return Err(Error::Axiom(format!(
                        "α does not preserve [{}, {}]",
                        s.label(i),
                        s.label(j)
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Small named algebras used by tests, fixtures and the CLI.
pub mod examples {
    use super::*;

    pub fn gens(items: &[(&str, i32)]) -> GenSet {
        GenSet::new(
            items.iter().map(|(l, _)| l.to_string()).collect(),
            items.iter().map(|(_, d)| *d).collect(),
        )
    }

    pub fn sl2() -> DgLieAlgebra {
        // h, e, f
        let b = gens(&[("h", 0), ("e", 0), ("f", 0)]);
        let mut t = BTreeMap::new();
        t.insert((0, 1), [(1, q(2))].into());
        t.insert((0, 2), [(2, q(-2))].into());
        t.insert((1, 2), [(0, q(1))].into());
        let t = DgLieAlgebra::complete_antisymmetry(&b, t);
        DgLieAlgebra::new(b, vec![], t, None).unwrap()
    }

    /// Heisenberg algebra with `[x, y] = z`, degrees 1, 1, 2.
    pub fn heisenberg() -> DgLieAlgebra {
        let b = gens(&[("x", 1), ("y", 1), ("z", 2)]);
        let mut t = BTreeMap::new();
        t.insert((0, 1), [(2, q(1))].into());
        let t = DgLieAlgebra::complete_antisymmetry(&b, t);
        DgLieAlgebra::new(b, vec![], t, None).unwrap()
    }

    /// `a, c` in degree 1, `b` in degree 2; `da = b`, `[c,a] = b`, `[a,a] = b`.
    pub fn dg_example() -> DgLieAlgebra {
        let basis = gens(&[("a", 1), ("c", 1), ("b", 2)]);
        let mut t = BTreeMap::new();
        t.insert((1, 0), [(2, q(1))].into());
        t.insert((0, 0), [(2, q(1))].into());
        let t = DgLieAlgebra::complete_antisymmetry(&basis, t);
        let d = vec![[(2, q(1))].into(), SparseVec::new(), SparseVec::new()];
        DgLieAlgebra::new(basis, d, t, None).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn abelian_and_sl2_valid() {
        assert!(DgLieAlgebra::abelian(gens(&[("a", 0), ("b", 1)])).validate().is_ok());
        assert!(sl2().validate().is_ok());
        assert!(heisenberg().validate().is_ok());
    }

    #[test]
    fn corrupted_sl2_names_jacobi_triple() {
        let l = sl2();
        let mut t = l.bracket_table().clone();
        t.insert((1, 2), [(0, q(2))].into());
        let bad = DgLieAlgebra::from_parts(l.basis().clone(), vec![], t, None);
        let r = bad.validate();
        let jac = r.violations.iter().find(|v| v.axiom == "Jacobi").unwrap();
        let mut w = jac.witness.clone();
        w.sort();
        assert_eq!(w, vec!["e", "f", "h"]);
    }

    #[test]
    fn odd_self_bracket_allowed() {
        // x odd with [x,x] = y: Jacobi forces [x,y] = 0, which holds
        let b = gens(&[("x", 1), ("y", 2)]);
        let t = [((0, 0), [(1, q(1))].into())].into();
        assert!(DgLieAlgebra::new(b, vec![], t, None).is_ok());
    }

    #[test]
    fn identity_morphism_valid() {
        assert!(LieMorphism::identity(&sl2()).validate().is_ok());
    }
}
