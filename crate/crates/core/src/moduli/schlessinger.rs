//! Condition (F1) at the level of `π₀`: for `f : B → A'` and the unit
//! `ℚ → A'`, compares `π₀ X(B ×_{A'} ℚ)` with the homotopy fiber of
//! `X(B) → X(A')` over the base point.

use serde::Serialize;

use super::mc::{induced_rank, mc_set, Regime};
use crate::cdga::{fiber_product, AlgebraMap, ArtinianAlgebra};
use crate::error::{Error, Result};
use crate::lie::DgLieAlgebra;
use crate::linalg::{add_entry, SparseVec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchlessingerReport {
    pub regime: Regime,
    pub fiber_product_dim: usize,
    /// `dim π₀ X(B ×_{A'} ℚ)`.
    pub lhs: Option<usize>,
    /// `dim ker(H¹g_B → H¹g_{A'}) + dim coker(H⁰g_B → H⁰g_{A'})`.
    pub rhs: Option<usize>,
}

impl SchlessingerReport {
    pub fn agrees(&self) -> Option<bool> {
        Some(self.lhs? == self.rhs?)
    }
}

pub fn schlessinger_check(l: &DgLieAlgebra, f: &AlgebraMap) -> Result<SchlessingerReport> {
    f.validate()?;
    if f.images.iter().skip(1).any(|v| v.contains_key(&0)) {
        return Err(Error::Invalid("the map does not preserve augmentation ideals".into()));
    }
    let unit = AlgebraMap::new(ArtinianAlgebra::base(), f.target.clone(), vec![crate::linalg::unit(0)])?;
    let (p, _, _) = fiber_product(f, &unit)?;
    let ev_b = mc_set(l, &f.source)?;
    let ev_a = mc_set(l, &f.target)?;
    let ev_p = mc_set(l, &p)?;
    let linear = [&ev_b, &ev_a, &ev_p].iter().all(|e| e.is_linear());
    if !linear {
        return Ok(SchlessingerReport {
            regime: Regime::Nonlinear,
            fiber_product_dim: p.dim(),
            lhs: None,
            rhs: None,
        });
    }
    let nl = l.dim();
    let induced = |v: &SparseVec| -> SparseVec {
        let mut out = SparseVec::new();
        for (k, c) in v {
            let (b, x) = (k / nl + 1, k % nl);
            for (a, c2) in &f.images[b] {
                add_entry(&mut out, (a - 1) * nl + x, c * c2);
            }
        }
        out
    };
    let (gb, ga) = (&ev_b.lie, &ev_a.lie);
    let h = |e: &super::mc::McEvaluation, k: i32| e.tangent_dims.get(&k).copied().unwrap_or(0);
    let ker1 = h(&ev_b, 1) - induced_rank(gb, ga, &induced, 1);
    let coker0 = h(&ev_a, 0) - induced_rank(gb, ga, &induced, 0);
    Ok(SchlessingerReport {
        regime: Regime::Linear,
        fiber_product_dim: p.dim(),
        lhs: ev_p.pi0_dim(),
        rhs: Some(ker1 + coker0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::fixtures::*;
    use crate::lie::free_lie;
    use crate::linalg::unit;

    fn identity(a: &ArtinianAlgebra) -> AlgebraMap {
        AlgebraMap::new(a.clone(), a.clone(), (0..a.dim()).map(unit).collect()).unwrap()
    }

    /// `ℚ[x]/x^k → ℚ[x]/x^j`, `j ≤ k`.
    fn truncation(k: u32, j: u32) -> AlgebraMap {
        let images = (0..k as usize).map(|i| if i < j as usize { unit(i) } else { SparseVec::new() }).collect();
        AlgebraMap::new(ArtinianAlgebra::truncated_polynomial(k), ArtinianAlgebra::truncated_polynomial(j), images)
            .unwrap()
    }

    #[test]
    fn identity_of_square_zero() {
        for n in 0..3 {
            let r = schlessinger_check(&heisenberg(), &identity(&ArtinianAlgebra::eps(n))).unwrap();
            assert_eq!(r.agrees(), Some(true));
            assert_eq!(r.fiber_product_dim, 1);
        }
    }

    #[test]
    fn abelian_truncation_tower() {
        let l = DgLieAlgebra::abelian(gens(&[("a", 0), ("b", 1), ("c", 2)]));
        for (k, j) in [(3, 2), (4, 2), (4, 3)] {
            let r = schlessinger_check(&l, &truncation(k, j)).unwrap();
            assert_eq!(r.agrees(), Some(true), "{k} {j}");
        }
    }

    #[test]
    fn free_lie_over_dual_numbers() {
        let l = free_lie(&[("x".into(), 1)], 3).unwrap().lie;
        let r = schlessinger_check(&l, &identity(&ArtinianAlgebra::eps(0))).unwrap();
        assert_eq!(r.agrees(), Some(true));
        let r = schlessinger_check(&l, &truncation(3, 2)).unwrap();
        assert_eq!(r.regime, Regime::Nonlinear);
        assert_eq!(r.agrees(), None);
    }

    #[test]
    fn projection_of_square_zero_sum() {
        // ℚ ⊕ ε₁ ⊕ ε₂ → ℚ ⊕ ε₁
        let b = ArtinianAlgebra::square_zero(&ArtinianAlgebra::base(), &["e1".into(), "e2".into()], &[-1, -2], &[])
            .unwrap();
        let a = ArtinianAlgebra::eps(1);
        let f = AlgebraMap::new(b, a, vec![unit(0), unit(1), SparseVec::new()]).unwrap();
        for l in [sl2(), heisenberg(), dg_example()] {
            assert_eq!(schlessinger_check(&l, &f).unwrap().agrees(), Some(true));
        }
    }
}
