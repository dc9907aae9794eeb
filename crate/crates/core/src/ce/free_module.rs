//! The representation induced from a free `C(L)`-module through the
//! enveloping algebra of the η-cone `L_η = k[η] ⊗ L`.
//!
//! `L_η` has basis `x`, `η.x` with `|η.x| = |x| - 1`, `d(η.x) = x - η.dx`,
//! `[x, η.y] = (-1)^{|x|} η.[x, y]` and `[η.x, η.y] = 0`. For `V = C(L) ⊗ E`
//! the induced object is `U(L_η) ⊗ E` with `L` acting on the left.

use std::collections::BTreeMap;

use super::chains::eta_label;
use crate::error::{Error, Result};
use crate::lie::{enveloping, DgLieAlgebra, EnvelopingAlgebra, Representation};
use crate::linalg::{add_entry, scaled, SparseVec};
use crate::monomial::GenSet;
use crate::rational::{sign, Q};

/// Output of [`free_ce_module`].
#[derive(Clone, Debug)]
pub struct FreeCeModule {
    pub rep: Representation,
    pub max_weight: u32,
    /// `false` when `L` has no weight grading and brackets are nonzero: the
    /// truncated action then satisfies the module axioms only below the top
    /// weight.
    pub genuine: bool,
}

/// `L_η`, with basis `x_0..x_{n-1}, η.x_0..η.x_{n-1}`.
pub fn eta_cone(l: &DgLieAlgebra) -> Result<DgLieAlgebra> {
    let n = l.dim();
    let mut labels: Vec<String> = l.basis().labels.clone();
    let mut degrees: Vec<i32> = l.basis().degrees.clone();
    for i in 0..n {
        labels.push(eta_label(l.label(i)));
        degrees.push(l.degree(i) - 1);
    }
    let basis = GenSet::new(labels, degrees);
    let shifted = |v: &SparseVec| -> SparseVec { v.iter().map(|(k, c)| (k + n, c.clone())).collect() };
    let mut d: Vec<SparseVec> = l.differential().to_vec();
    for i in 0..n {
        let mut v = scaled(&shifted(l.d_of(i)), &-Q::from_integer(1.into()));
        add_entry(&mut v, i, Q::from_integer(1.into()));
        d.push(v);
    }
    let mut bracket: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
    for ((i, j), v) in l.bracket_table() {
        bracket.insert((*i, *j), v.clone());
        bracket.insert((*i, j + n), scaled(&shifted(v), &sign(l.degree(*i) as i64)));
    }
    let bracket = DgLieAlgebra::complete_antisymmetry(&basis, bracket);
    let weights = match l.weights() {
        Some(w) => Some(w.iter().chain(w.iter()).copied().collect()),
        None if l.is_abelian() => Some(vec![1; 2 * n]),
        None => None,
    };
    DgLieAlgebra::new(basis, d, bracket, weights)
}

/// `V = C(L) ⊗ E` is given by its generators `E` and their differential with
/// constant coefficients.
pub fn free_ce_module(
    l: &DgLieAlgebra,
    generators: &GenSet,
    generator_d: &[SparseVec],
    max_weight: u32,
) -> Result<FreeCeModule> {
    let lie_eta = eta_cone(l)?;
    let genuine = lie_eta.weights().is_some();
    let u = enveloping(&lie_eta, max_weight)?;
    let ne = generators.len();
    let nu = u.basis.len();
    let idx = |k: usize, j: usize| k * ne + j;
    let mut labels = Vec::with_capacity(nu * ne);
    let mut degrees = Vec::with_capacity(nu * ne);
    for k in 0..nu {
        for j in 0..ne {
            labels.push(format!("{}⊗{}", u.label(k), generators.labels[j]));
            degrees.push(u.degree(k) + generators.degrees[j]);
        }
    }
    let du: Vec<SparseVec> = (0..nu).map(|k| u.d(k)).collect::<Result<_>>()?;
    let mut d = vec![SparseVec::new(); nu * ne];
    for k in 0..nu {
        let s = sign(u.degree(k) as i64);
        for j in 0..ne {
            let col = &mut d[idx(k, j)];
            for (k2, c) in &du[k] {
                add_entry(col, idx(*k2, j), c.clone());
            }
            for (j2, c) in generator_d.get(j).into_iter().flatten() {
                add_entry(col, idx(k, *j2), &s * c);
            }
        }
    }
    let mut action = BTreeMap::new();
    for a in 0..l.dim() {
        for k in 0..nu {
            let prod = left_multiply(&u, a, k)?;
            for j in 0..ne {
                let v: SparseVec = prod.iter().map(|(k2, c)| (idx(*k2, j), c.clone())).collect();
                if !v.is_empty() {
                    action.insert((a, idx(k, j)), v);
                }
            }
        }
    }
    let rep = Representation::from_parts(l.clone(), GenSet::new(labels, degrees), d, action);
    if genuine {
        if let Some(v) = rep.validate() {
            return Err(Error::Axiom(format!("induced module: {} at ({})", v.axiom, v.witness.join(","))));
        }
    }
    Ok(FreeCeModule {
        rep,
        max_weight,
        genuine,
    })
}

/// `x_a · u_k` in `U^{≤W}`, zero past the weight bound.
fn left_multiply(u: &EnvelopingAlgebra, a: usize, k: usize) -> Result<SparseVec> {
    if u.weights[a] + u.weight(&u.basis[k]) > u.max_weight {
        return Ok(SparseVec::new());
    }
    let mut w = vec![a];
    w.extend(GenSet::word(&u.basis[k]));
    u.straighten(&[(w, Q::from_integer(1.into()))].into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::fixtures::*;
    use crate::lie::free_lie;

    fn one() -> GenSet {
        gens(&[("1", 0)])
    }

    #[test]
    fn eta_cone_is_valid_and_acyclic() {
        let free12 = free_lie(&[("x".into(), 1), ("y".into(), 2)], 3).unwrap().lie;
        for l in [sl2(), heisenberg(), free12] {
            let c = eta_cone(&l).unwrap();
            assert!(c.cohomology_dims().is_empty());
        }
    }

    #[test]
    fn free_rank_one_is_acyclic_onto_base() {
        let free12 = free_lie(&[("x".into(), 1), ("y".into(), 2)], 3).unwrap().lie;
        for l in [sl2(), heisenberg(), free12.clone()] {
            let m = free_ce_module(&l, &one(), &[], 3).unwrap();
            assert_eq!(m.rep.complex().homology_dims(), [(0, 1)].into());
        }
        assert!(free_ce_module(&free12, &one(), &[], 3).unwrap().genuine);
        assert!(!free_ce_module(&sl2(), &one(), &[], 3).unwrap().genuine);
    }

    #[test]
    fn abelian_koszul_case() {
        let l = DgLieAlgebra::abelian(gens(&[("a", 1), ("b", 2)]));
        let m = free_ce_module(&l, &one(), &[], 4).unwrap();
        assert!(m.genuine);
        assert_eq!(m.rep.validate(), None);
        assert_eq!(m.rep.complex().homology_dims(), [(0, 1)].into());
    }

    #[test]
    fn generators_with_differential() {
        let l = heisenberg();
        let e = gens(&[("u", 0), ("v", 1), ("w", 3)]);
        let de = vec![[(1, Q::from_integer(1.into()))].into(), SparseVec::new(), SparseVec::new()];
        let m = free_ce_module(&l, &e, &de, 3).unwrap();
        assert_eq!(m.rep.complex().homology_dims(), [(3, 1)].into());
    }

    #[test]
    fn zero_module() {
        let m = free_ce_module(&sl2(), &GenSet::new(vec![], vec![]), &[], 3).unwrap();
        assert_eq!(m.rep.dim(), 0);
    }
}
