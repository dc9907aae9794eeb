//! The Maurer–Cartan functor `B ↦ MC(m_B ⊗ L)` on artinian cdgas.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cdga::ArtinianAlgebra;
use crate::error::{Error, Result};
use crate::graded::koszul;
use crate::lie::DgLieAlgebra;
use crate::linalg::{add_entry, Matrix, Quotient, SparseVec};
use crate::monomial::{add_term, GenSet, Poly};
use crate::rational::{sign, Q};

/// `m_B ⊗ L` with `d(b⊗x) = db⊗x + (-1)^{|b|} b⊗dx` and
/// `[b⊗x, c⊗y] = (-1)^{|x||c|} bc⊗[x,y]`; basis `(b, x)` for `b ≥ 1`.
pub fn tensor_lie(b: &ArtinianAlgebra, l: &DgLieAlgebra) -> DgLieAlgebra {
    let nl = l.dim();
    let pairs: Vec<(usize, usize)> = (1..b.dim()).flat_map(|i| (0..nl).map(move |x| (i, x))).collect();
    let idx = |i: usize, x: usize| (i - 1) * nl + x;
    let labels = pairs.iter().map(|&(i, x)| format!("{}⊗{}", b.labels[i], l.label(x))).collect();
    let degrees = pairs.iter().map(|&(i, x)| b.degrees[i] + l.degree(x)).collect();
    let d = pairs
        .iter()
        .map(|&(i, x)| {
            let mut v = SparseVec::new();
            for (j, c) in &b.d[i] {
                add_entry(&mut v, idx(*j, x), c.clone());
            }
            let s = sign(b.degrees[i] as i64);
            for (y, c) in l.d_of(x) {
                add_entry(&mut v, idx(i, *y), &s * c);
            }
            v
        })
        .collect();
    let mut bracket = BTreeMap::new();
    for (p, &(i, x)) in pairs.iter().enumerate() {
        for (r, &(j, y)) in pairs.iter().enumerate() {
            let bc = b.product(i, j);
            let xy = l.bracket_basis(x, y);
            if bc.is_empty() || xy.is_empty() {
                continue;
            }
            let s = koszul(l.degree(x), b.degrees[j]);
            let mut v = SparseVec::new();
            for (k, c1) in &bc {
                for (z, c2) in &xy {
                    add_entry(&mut v, idx(*k, *z), &s * c1 * c2);
                }
            }
            if !v.is_empty() {
                bracket.insert((p, r), v);
            }
        }
    }
    DgLieAlgebra::from_parts(GenSet::new(labels, degrees), d, bracket, None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// Brackets vanish on `g^0 ⊗ g^1` and `g^1 ⊗ g^1`: MC elements are the
    /// 1-cocycles and gauge acts by translation.
    Linear,
    Nonlinear,
}

#[derive(Clone, Debug)]
pub struct McEvaluation {
    /// `g = m_B ⊗ L`.
    pub lie: DgLieAlgebra,
    /// Flat indices of `g^1`, one variable `t_k` each.
    pub degree_one: Vec<usize>,
    /// Flat indices of `g^0`.
    pub gauge: Vec<usize>,
    pub variables: GenSet,
    /// Components of `dx + ½[x,x]` along `g^2`, keyed by flat index.
    pub equations: BTreeMap<usize, Poly>,
    pub regime: Regime,
    /// Cocycle representatives of `π₀`, in the linear regime.
    pub pi0: Option<Vec<SparseVec>>,
    pub tangent_dims: BTreeMap<i32, usize>,
}

impl McEvaluation {
    pub fn pi0_dim(&self) -> Option<usize> {
        self.pi0.as_ref().map(Vec::len)
    }

    pub fn is_linear(&self) -> bool {
        self.regime == Regime::Linear
    }
}

pub fn mc_set(l: &DgLieAlgebra, b: &ArtinianAlgebra) -> Result<McEvaluation> {
    b.validate()?;
    b.nilpotency_order()?;
    let g = tensor_lie(b, l);
    let in_degree = |k: i32| -> Vec<usize> { (0..g.dim()).filter(|i| g.degree(*i) == k).collect() };
    let degree_one = in_degree(1);
    let gauge = in_degree(0);
    let variables = GenSet::new(
        (0..degree_one.len()).map(|k| format!("t{k}")).collect(),
        vec![0; degree_one.len()],
    );
    let half = Q::new(1.into(), 2.into());
    let mut equations: BTreeMap<usize, Poly> = BTreeMap::new();
    for (k, &e) in degree_one.iter().enumerate() {
        for (j, c) in g.d_of(e) {
            add_term(equations.entry(*j).or_default(), vec![(k, 1)], c.clone());
        }
        for (k2, &e2) in degree_one.iter().enumerate() {
            let mono = if k == k2 { vec![(k, 2)] } else { vec![(k.min(k2), 1), (k.max(k2), 1)] };
            for (j, c) in g.bracket_basis(e, e2) {
                add_term(equations.entry(j).or_default(), mono.clone(), &half * c);
            }
        }
    }
    equations.retain(|_, p| !p.is_empty());
    let linear = gauge
        .iter()
        .chain(&degree_one)
        .all(|&a| degree_one.iter().all(|&e| g.bracket_basis(a, e).is_empty()));
    let regime = if linear { Regime::Linear } else { Regime::Nonlinear };
    let pi0 = linear.then(|| cohomology_reps(&g, 1));
    let tangent_dims = g.cohomology_dims();
    Ok(McEvaluation {
        lie: g,
        degree_one,
        gauge,
        variables,
        equations,
        regime,
        pi0,
        tangent_dims,
    })
}

/// Cocycles of degree `k` whose classes form a basis of `H^k`.
pub(crate) fn cohomology_reps(g: &DgLieAlgebra, k: i32) -> Vec<SparseVec> {
    let here: Vec<usize> = (0..g.dim()).filter(|i| g.degree(*i) == k).collect();
    let below: Vec<usize> = (0..g.dim()).filter(|i| g.degree(*i) == k - 1).collect();
    let up: BTreeMap<usize, usize> = (0..g.dim())
        .filter(|i| g.degree(*i) == k + 1)
        .enumerate()
        .map(|(r, i)| (i, r))
        .collect();
    let cols: Vec<SparseVec> = here
        .iter()
        .map(|i| g.d_of(*i).iter().map(|(j, c)| (up[j], c.clone())).collect())
        .collect();
    let cycles: Vec<SparseVec> = Matrix::from_columns(up.len(), &cols)
        .kernel()
        .into_iter()
        .map(|z| z.into_iter().map(|(r, c)| (here[r], c)).collect())
        .collect();
    let boundaries: Vec<SparseVec> = below.iter().map(|i| g.d_of(*i).clone()).collect();
    Quotient::new(&boundaries).with_candidates(&cycles).reps
}

/// Rank of the map induced on `H^k` by a degree-0 chain map given on flat
/// bases.
pub(crate) fn induced_rank(source: &DgLieAlgebra, target: &DgLieAlgebra, f: &dyn Fn(&SparseVec) -> SparseVec, k: i32) -> usize {
    let boundaries: Vec<SparseVec> =
        (0..target.dim()).filter(|i| target.degree(*i) == k - 1).map(|i| target.d_of(i).clone()).collect();
    let images: Vec<SparseVec> = cohomology_reps(source, k).iter().map(f).collect();
    Quotient::new(&boundaries).with_candidates(&images).dim()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct McTangent {
    pub n: u32,
    pub pi0_dim: usize,
    /// `dim H^{n+1}(L)`.
    pub expected: usize,
}

impl McTangent {
    pub fn agrees(&self) -> bool {
        self.pi0_dim == self.expected
    }
}

/// `π₀ MC(L ⊗ ε_n)` against `H^{n+1}(L)`.
pub fn mc_tangent(l: &DgLieAlgebra, n: u32) -> Result<McTangent> {
    let ev = mc_set(l, &ArtinianAlgebra::eps(n))?;
    let pi0_dim = ev
        .pi0_dim()
        .ok_or_else(|| Error::Invalid("square-zero coefficients are always in the linear regime".into()))?;
    let expected = l.cohomology_dims().get(&(n as i32 + 1)).copied().unwrap_or(0);
    Ok(McTangent { n, pi0_dim, expected })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::fixtures::*;
    use crate::lie::free_lie;

    fn line(deg: i32) -> DgLieAlgebra {
        DgLieAlgebra::abelian(gens(&[("v", deg)]))
    }

    #[test]
    fn tensor_is_dg_lie() {
        let b = ArtinianAlgebra::truncated_polynomial(3);
        let b2 = ArtinianAlgebra::square_zero(&ArtinianAlgebra::eps(1), &["w".into()], &[-2], &[]).unwrap();
        for l in [sl2(), heisenberg(), dg_example()] {
            for coeff in [&b, &b2] {
                assert!(tensor_lie(coeff, &l).validate().is_ok());
            }
        }
    }

    #[test]
    fn abelian_line_over_odd_dual_numbers() {
        let ev = mc_set(&line(2), &ArtinianAlgebra::eps(1)).unwrap();
        assert!(ev.is_linear());
        assert_eq!(ev.degree_one.len(), 1);
        assert!(ev.gauge.is_empty());
        assert!(ev.equations.is_empty());
        assert_eq!(ev.pi0_dim(), Some(1));
    }

    #[test]
    fn base_point_is_contractible() {
        for l in [sl2(), heisenberg(), dg_example()] {
            let ev = mc_set(&l, &ArtinianAlgebra::base()).unwrap();
            assert_eq!(ev.pi0_dim(), Some(0));
        }
    }

    #[test]
    fn tangent_matches_shifted_cohomology() {
        let free1 = free_lie(&[("x".into(), 1)], 3).unwrap().lie;
        for l in [line(2), sl2(), heisenberg(), dg_example(), free1] {
            for n in 0..4 {
                let t = mc_tangent(&l, n).unwrap();
                assert!(t.agrees(), "{n} {:?}", l.basis().labels);
            }
        }
        assert_eq!(mc_tangent(&line(2), 1).unwrap().pi0_dim, 1);
        assert_eq!(mc_tangent(&line(2), 2).unwrap().pi0_dim, 0);
    }

    #[test]
    fn census_is_basis_independent() {
        let b = ArtinianAlgebra::square_zero(&ArtinianAlgebra::eps(1), &["w".into()], &[-2], &[]).unwrap();
        for l in [heisenberg(), dg_example()] {
            for seed in 0..4 {
                let (m, iso) = crate::lie::random_basis_change(&l, seed);
                assert!(m.validate().is_ok());
                assert!(iso.validate().is_ok());
                for coeff in [ArtinianAlgebra::eps(1), ArtinianAlgebra::eps(2), b.clone()] {
                    let x = mc_set(&l, &coeff).unwrap();
                    let y = mc_set(&m, &coeff).unwrap();
                    assert_eq!(x.pi0_dim(), y.pi0_dim());
                    assert_eq!(x.tangent_dims, y.tangent_dims);
                }
            }
        }
    }

    #[test]
    fn quadratic_equation_over_truncated_polynomials() {
        // x in degree 1; t = x⊗... over ℚ[s]/s³ in degree 0
        let l = free_lie(&[("x".into(), 1)], 3).unwrap().lie;
        let ev = mc_set(&l, &ArtinianAlgebra::truncated_polynomial(3)).unwrap();
        assert_eq!(ev.regime, Regime::Nonlinear);
        assert!(ev.pi0.is_none());
        assert!(ev.equations.values().any(|p| p.keys().any(|m| crate::monomial::length(m) == 2)));
    }
}
