//! The unit `L → D C(L)` compared on underlying complexes: the cotangent
//! fiber of a cellular model of `C(L)`, shifted by one and dualized, against
//! the cohomology of `L`, per degree and weight.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cdga::{cellular_resolve, cotangent_fiber, ArtinianAlgebra, CellularTower};
use crate::ce::{ce_cohomological, CeCochains};
use crate::error::{Error, Result};
use crate::graded::Complex;
use crate::lie::DgLieAlgebra;
use crate::linalg::{unit, SparseVec};

#[derive(Clone, Debug, Serialize)]
pub struct UnitVerdict {
    /// `(degree, weight) → (dim H(L), dim of the dual shifted fiber)`.
    pub comparison: BTreeMap<(i32, u32), (usize, usize)>,
    /// Degrees of `L` covered by the certified window.
    pub degrees: (i32, i32),
    pub max_weight: u32,
    pub cells: usize,
    pub stabilized_at: usize,
    /// Weights come from the cohomological degree rather than Lie weights.
    pub degree_weights: bool,
}

impl UnitVerdict {
    pub fn passed(&self) -> bool {
        self.comparison.values().all(|(a, b)| a == b)
    }
}

/// `L` with a Lie weight grading: its own, or the degree when `d = 0`.
fn weighted(l: &DgLieAlgebra) -> Result<(DgLieAlgebra, bool)> {
    if (0..l.dim()).any(|i| l.degree(i) < 1) {
        return Err(Error::Invalid("the unit check needs L concentrated in degrees ≥ 1".into()));
    }
    if l.weights().is_some() {
        return Ok((l.clone(), false));
    }
    if l.differential().iter().all(SparseVec::is_empty) {
        let w = (0..l.dim()).map(|i| l.degree(i) as u32).collect();
        return Ok((l.clone().with_weights(Some(w)), true));
    }
    Err(Error::Invalid("L has a differential and no weight grading".into()))
}

/// `C^{≤W}(L)` as an artinian algebra with the unit first.
pub fn cochain_algebra(c: &CeCochains) -> Result<ArtinianAlgebra> {
    let u = c.unit();
    let order: Vec<usize> = std::iter::once(u).chain((0..c.len()).filter(|k| *k != u)).collect();
    let mut pos = vec![0; c.len()];
    for (i, k) in order.iter().enumerate() {
        pos[*k] = i;
    }
    let remap = |v: &SparseVec| -> SparseVec { v.iter().map(|(k, x)| (pos[*k], x.clone())).collect() };
    let mut mult = BTreeMap::new();
    for i in 1..order.len() {
        for j in 1..order.len() {
            let v = remap(&c.multiply(&unit(order[i]), &unit(order[j])));
            if !v.is_empty() {
                mult.insert((i, j), v);
            }
        }
    }
    ArtinianAlgebra::new(
        order.iter().map(|k| c.label(*k)).collect(),
        order.iter().map(|k| c.degree(*k)).collect(),
        Some(order.iter().map(|k| c.weight(*k)).collect()),
        mult,
        order.iter().map(|k| remap(c.d_flat(*k))).collect(),
    )
}

/// Cohomology of `L` per `(degree, weight)`.
fn weighted_cohomology(l: &DgLieAlgebra) -> BTreeMap<(i32, u32), usize> {
    let w = l.weights().expect("weighted");
    let mut ws: Vec<u32> = w.to_vec();
    ws.sort();
    ws.dedup();
    let mut out = BTreeMap::new();
    for wt in ws {
        let idx: Vec<usize> = (0..l.dim()).filter(|i| w[*i] == wt).collect();
        let pos: BTreeMap<usize, usize> = idx.iter().enumerate().map(|(k, i)| (*i, k)).collect();
        let items: Vec<(String, i32)> = idx.iter().map(|i| (l.label(*i).to_string(), l.degree(*i))).collect();
        let d: Vec<SparseVec> =
            idx.iter().map(|i| l.d_of(*i).iter().map(|(j, c)| (pos[j], c.clone())).collect()).collect();
        let c = Complex::from_flat(&items, &d).expect("weight block");
        for (deg, n) in c.homology_dims() {
            out.insert((deg, wt), n);
        }
    }
    out
}

pub fn unit_check(l: &DgLieAlgebra, max_weight: u32, depth: usize) -> Result<(UnitVerdict, CellularTower)> {
    if max_weight == 0 || depth == 0 {
        return Err(Error::Truncation("unit check needs max weight and depth at least 1".into()));
    }
    let (lw, degree_weights) = weighted(l)?;
    let c = ce_cohomological(&lw, max_weight);
    let b = cochain_algebra(&c)?;
    let tower = cellular_resolve(&b, depth, max_weight)?;
    let fiber = cotangent_fiber(&tower)?;
    let hi = depth as i32 + 1;
    let mut comparison: BTreeMap<(i32, u32), (usize, usize)> = BTreeMap::new();
    for ((deg, wt), n) in weighted_cohomology(&lw) {
        if (1..=hi).contains(&deg) && wt <= max_weight {
            comparison.entry((deg, wt)).or_default().0 = n;
        }
    }
    // fiber degree k ↦ degree -k after [1], then 1 - k after dualizing
    for ((k, wt), n) in fiber.dims() {
        let deg = 1 - k;
        if (1..=hi).contains(&deg) {
            comparison.entry((deg, wt)).or_default().1 = n;
        }
    }
    let verdict = UnitVerdict {
        comparison,
        degrees: (1, hi),
        max_weight,
        cells: tower.cells.len(),
        stabilized_at: tower.stabilized_at,
        degree_weights,
    };
    Ok((verdict, tower))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::fixtures::*;
    use crate::lie::free_lie;

    fn free(gens: &[(&str, i32)], w: u32) -> DgLieAlgebra {
        let g: Vec<(String, i32)> = gens.iter().map(|(l, d)| (l.to_string(), *d)).collect();
        free_lie(&g, w).unwrap().lie
    }

    #[test]
    fn free_on_degree_two() {
        let (v, t) = unit_check(&free(&[("y", 2)], 4), 4, 3).unwrap();
        assert!(v.passed());
        assert_eq!(t.cell_counts(), [((-1, 1), 1)].into());
        assert_eq!(v.comparison[&(2, 1)], (1, 1));
    }

    #[test]
    fn free_on_degree_one() {
        let (v, t) = unit_check(&free(&[("x", 1)], 4), 4, 3).unwrap();
        assert!(v.passed());
        assert_eq!(t.cell_counts(), [((-1, 2), 1), ((0, 1), 1)].into());
        assert_eq!(v.comparison.values().filter(|(a, _)| *a > 0).count(), 2);
    }

    #[test]
    fn zero_algebra() {
        let (v, t) = unit_check(&DgLieAlgebra::zero(), 3, 2).unwrap();
        assert!(v.passed());
        assert!(t.cells.is_empty());
    }

    #[test]
    fn larger_free_and_graded_examples() {
        assert!(unit_check(&free(&[("x", 1), ("y", 1)], 3), 3, 2).unwrap().0.passed());
        assert!(unit_check(&free(&[("x", 1), ("y", 2)], 3), 3, 2).unwrap().0.passed());
        let (v, _) = unit_check(&heisenberg(), 4, 2).unwrap();
        assert!(v.degree_weights && v.passed());
    }

    #[test]
    fn rejected_inputs() {
        assert!(matches!(unit_check(&sl2(), 3, 2), Err(Error::Invalid(_))));
        assert!(matches!(unit_check(&dg_example(), 3, 2), Err(Error::Invalid(_))));
        assert!(matches!(unit_check(&DgLieAlgebra::zero(), 3, 0), Err(Error::Truncation(_))));
    }
}
