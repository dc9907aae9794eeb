//! dg-representations of a dg-Lie algebra.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{DgLieAlgebra, LieMorphism};
use crate::error::{Error, Result};
use crate::graded::{koszul, Complex};
use crate::linalg::{axpy, unit, SparseVec};
use crate::monomial::GenSet;
use crate::rational::{q, sign};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    pub lie: DgLieAlgebra,
    pub basis: GenSet,
    pub d: Vec<SparseVec>,
    /// `action[(a, m)] = e_a · v_m`.
    pub action: BTreeMap<(usize, usize), SparseVec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepViolation {
    pub axiom: String,
    pub witness: Vec<String>,
}

impl Representation {
    pub fn new(
        lie: DgLieAlgebra,
        basis: GenSet,
        d: Vec<SparseVec>,
        action: BTreeMap<(usize, usize), SparseVec>,
    ) -> Result<Self> {
        let rep = Self::from_parts(lie, basis, d, action);
        if let Some(v) = rep.validate() {
            return Err(Error::Axiom(format!(
                "representation: {} at ({})",
                v.axiom,
                v.witness.join(",")
            )));
        }
        Ok(rep)
    }

    pub fn from_parts(
        lie: DgLieAlgebra,
        basis: GenSet,
        mut d: Vec<SparseVec>,
        mut action: BTreeMap<(usize, usize), SparseVec>,
    ) -> Self {
        d.resize(basis.len(), SparseVec::new());
        action.retain(|_, v| !v.is_empty());
        Self {
            lie,
            basis,
            d,
            action,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn act_basis(&self, a: usize, m: usize) -> SparseVec {
        self.action.get(&(a, m)).cloned().unwrap_or_default()
    }

    pub fn act(&self, x: &SparseVec, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (a, ca) in x {
            for (m, cm) in v {
                if let Some(w) = self.action.get(&(*a, *m)) {
                    axpy(&mut out, &(ca * cm), w);
                }
            }
        }
        out
    }

    pub fn apply_d(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (m, c) in v {
            axpy(&mut out, c, &self.d[*m]);
        }
        out
    }

    pub fn complex(&self) -> Complex {
        let items: Vec<(&str, i32)> = (0..self.dim())
            .map(|i| (self.basis.labels[i].as_str(), self.basis.degrees[i]))
            .collect();
        Complex::from_flat(&items, &self.d).expect("valid module differential")
    }

    /// First violated axiom, if any.
    pub fn validate(&self) -> Option<RepViolation> {
        let l = &self.lie;
        let n = self.dim();
        let lab = |a: usize, m: usize| vec![l.label(a).to_string(), self.basis.labels[m].clone()];
        for m in 0..n {
            if self.d[m].keys().any(|k| self.basis.degrees[*k] != self.basis.degrees[m] + 1) {
                return Some(RepViolation {
                    axiom: "differential degree".into(),
                    witness: vec![self.basis.labels[m].clone()],
                });
            }
            if !self.apply_d(&self.d[m]).is_empty() {
                return Some(RepViolation {
                    axiom: "d∘d = 0".into(),
                    witness: vec![self.basis.labels[m].clone()],
                });
            }
        }
        for ((a, m), v) in &self.action {
            let target = l.degree(*a) + self.basis.degrees[*m];
            if v.keys().any(|k| self.basis.degrees[*k] != target) {
                return Some(RepViolation {
                    axiom: "action degree".into(),
                    witness: lab(*a, *m),
                });
            }
        }
        for a in 0..l.dim() {
            for m in 0..n {
                // d(x·m) = (dx)·m + (-1)^{|x|} x·dm
                let mut s = self.apply_d(&self.act_basis(a, m));
                axpy(&mut s, &q(-1), &self.act(l.d_of(a), &unit(m)));
                axpy(&mut s, &-sign(l.degree(a) as i64), &self.act(&unit(a), &self.d[m]));
                if !s.is_empty() {
                    return Some(RepViolation {
                        axiom: "action is a chain map".into(),
                        witness: lab(a, m),
                    });
                }
            }
        }
        for a in 0..l.dim() {
            for b in 0..l.dim() {
                for m in 0..n {
                    // [x,y]·m = x·(y·m) - (-1)^{|x||y|} y·(x·m)
                    let mut s = self.act(&l.bracket_basis(a, b), &unit(m));
                    axpy(&mut s, &q(-1), &self.act(&unit(a), &self.act_basis(b, m)));
                    axpy(
                        &mut s,
                        &koszul(l.degree(a), l.degree(b)),
                        &self.act(&unit(b), &self.act_basis(a, m)),
                    );
                    if !s.is_empty() {
                        return Some(RepViolation {
                            axiom: "module axiom".into(),
                            witness: vec![
                                l.label(a).to_string(),
                                l.label(b).to_string(),
                                self.basis.labels[m].clone(),
                            ],
                        });
                    }
                }
            }
        }
        None
    }

    /// Pulls back along `α : L0 → L`, giving an `L0`-representation.
    pub fn restrict(&self, alpha: &LieMorphism) -> Result<Representation> {
        if alpha.target != self.lie {
            return Err(Error::Invalid("restriction along a morphism into a different algebra".into()));
        }
        let mut action = BTreeMap::new();
        for a in 0..alpha.source.dim() {
            for m in 0..self.dim() {
                let v = self.act(&alpha.images[a], &unit(m));
                if !v.is_empty() {
                    action.insert((a, m), v);
                }
            }
        }
        Ok(Self::from_parts(alpha.source.clone(), self.basis.clone(), self.d.clone(), action))
    }
}

/// `L` acting on a complex by zero.
pub fn trivial_rep(lie: &DgLieAlgebra, basis: GenSet, d: Vec<SparseVec>) -> Representation {
    Representation::from_parts(lie.clone(), basis, d, BTreeMap::new())
}

pub fn adjoint_rep(lie: &DgLieAlgebra) -> Representation {
    Representation::from_parts(
        lie.clone(),
        lie.basis().clone(),
        lie.differential().to_vec(),
        lie.bracket_table().clone(),
    )
}

/// The dual `L∨` with `(x·f)(y) = -(-1)^{|x||f|} f([x,y])` and the dual
/// differential `(df)(y) = -(-1)^{|f|} f(dy)`. Basis `e_k*` in degree `-|e_k|`.
pub fn coadjoint_rep(lie: &DgLieAlgebra) -> Representation {
    let n = lie.dim();
    let basis = GenSet::new(
        (0..n).map(|k| crate::graded::dual_label(lie.label(k))).collect(),
        (0..n).map(|k| -lie.degree(k)).collect(),
    );
    let mut d = vec![SparseVec::new(); n];
    for i in 0..n {
        for (k, c) in lie.d_of(i) {
            // (d f_k)(e_i) = -(-1)^{|f_k|} c
            let s = -sign(-lie.degree(*k) as i64);
            crate::linalg::add_entry(&mut d[*k], i, s * c);
        }
    }
    let mut action: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
    for ((a, i), v) in lie.bracket_table() {
        for (k, c) in v {
            let s = -koszul(lie.degree(*a), -lie.degree(*k));
            let e = action.entry((*a, *k)).or_default();
            crate::linalg::add_entry(e, *i, s * c);
        }
    }
    Representation::from_parts(lie.clone(), basis, d, action)
}

/// Diagonal action on `M ⊗ N`; basis `m_i ⊗ n_j` has flat index `i·dim N + j`.
pub fn rep_tensor(m: &Representation, n: &Representation) -> Result<Representation> {
    if m.lie != n.lie {
        return Err(Error::Invalid("tensor of representations of different Lie algebras".into()));
    }
    let (dm, dn) = (m.dim(), n.dim());
    let idx = |i: usize, j: usize| i * dn + j;
    let mut labels = Vec::with_capacity(dm * dn);
    let mut degrees = Vec::with_capacity(dm * dn);
    for i in 0..dm {
        for j in 0..dn {
            labels.push(format!("{}⊗{}", m.basis.labels[i], n.basis.labels[j]));
            degrees.push(m.basis.degrees[i] + n.basis.degrees[j]);
        }
    }
    let tensor_left = |v: &SparseVec, j: usize| -> SparseVec { v.iter().map(|(i, c)| (idx(*i, j), c.clone())).collect() };
    let tensor_right = |i: usize, v: &SparseVec| -> SparseVec { v.iter().map(|(j, c)| (idx(i, *j), c.clone())).collect() };
    let mut d = vec![SparseVec::new(); dm * dn];
    for i in 0..dm {
        for j in 0..dn {
            let mut v = tensor_left(&m.d[i], j);
            axpy(&mut v, &sign(m.basis.degrees[i] as i64), &tensor_right(i, &n.d[j]));
            d[idx(i, j)] = v;
        }
    }
    let lie = &m.lie;
    let mut action = BTreeMap::new();
    for a in 0..lie.dim() {
        for i in 0..dm {
            for j in 0..dn {
                let mut v = tensor_left(&m.act_basis(a, i), j);
                let s = koszul(lie.degree(a), m.basis.degrees[i]);
                axpy(&mut v, &s, &tensor_right(i, &n.act_basis(a, j)));
                if !v.is_empty() {
                    action.insert((a, idx(i, j)), v);
                }
            }
        }
    }
    Ok(Representation::from_parts(lie.clone(), GenSet::new(labels, degrees), d, action))
}

/// Scales every action entry; used by tests to corrupt representations.
#[cfg(test)]
fn scale_action(r: &Representation, c: crate::rational::Q) -> Representation {
    let mut r = r.clone();
    for v in r.action.values_mut() {
        *v = crate::linalg::scaled(v, &c);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::linalg::Matrix;
    use num_traits::Zero;

    fn action_matrix(r: &Representation, a: usize) -> Matrix {
        let cols: Vec<SparseVec> = (0..r.dim()).map(|m| r.act_basis(a, m)).collect();
        Matrix::from_columns(r.dim(), &cols)
    }

    #[test]
    fn adjoint_and_coadjoint_valid() {
        for l in [sl2(), heisenberg()] {
            assert_eq!(adjoint_rep(&l).validate(), None);
            assert_eq!(coadjoint_rep(&l).validate(), None);
        }
    }

    #[test]
    fn sl2_adjoint_traceless() {
        let r = adjoint_rep(&sl2());
        for a in 0..3 {
            let m = action_matrix(&r, a);
            let tr = (0..3).fold(crate::rational::Q::zero(), |acc, i| acc + m.get(i, i));
            assert!(tr.is_zero());
        }
    }

    #[test]
    fn corrupted_action_rejected() {
        let r = scale_action(&adjoint_rep(&sl2()), q(2));
        assert_eq!(r.validate().unwrap().axiom, "module axiom");
    }

    #[test]
    fn tensor_with_trivial_line() {
        let l = sl2();
        let k = trivial_rep(&l, gens(&[("1", 0)]), vec![]);
        let ad = adjoint_rep(&l);
        let t = rep_tensor(&k, &ad).unwrap();
        assert_eq!(t.validate(), None);
        for a in 0..3 {
            assert_eq!(action_matrix(&t, a), action_matrix(&ad, a));
        }
        let kk = rep_tensor(&k, &k).unwrap();
        assert!(kk.action.is_empty());
    }

    #[test]
    fn sl2_ad_tensor_ad_has_one_invariant() {
        let ad = adjoint_rep(&sl2());
        let t = rep_tensor(&ad, &ad).unwrap();
        assert_eq!(t.validate(), None);
        let mut rows = Vec::new();
        for a in 0..3 {
            rows.extend(action_matrix(&t, a).rows().iter().cloned());
        }
        let stacked = Matrix::from_rows(9, rows);
        assert_eq!(stacked.kernel().len(), 1);
    }

    #[test]
    fn graded_tensor_valid() {
        let ad = adjoint_rep(&heisenberg());
        let co = coadjoint_rep(&heisenberg());
        assert_eq!(rep_tensor(&ad, &co).unwrap().validate(), None);
    }
}
