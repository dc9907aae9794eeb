//! Minimal cellular (quasi-free) resolutions of weight-graded artinian
//! cdgas, built stage by stage and certified on cohomology through a
//! weight bound, and the cotangent fiber they produce.

use std::collections::BTreeMap;

use super::artinian::ArtinianAlgebra;
use super::presentation::CdgaPresentation;
use crate::error::{Error, Result};
use crate::graded::Complex;
use crate::linalg::{add_entry, axpy, Matrix, Quotient, SparseVec};
use crate::monomial::{GenSet, Monomial, Poly};
use crate::rational::Q;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CellKind {
    /// A cycle hitting a missing cohomology class.
    Generator,
    /// A cell `U` with `dU` a cycle whose class maps to zero.
    Relation,
}

#[derive(Clone, Debug)]
pub struct Cell {
    pub label: String,
    pub degree: i32,
    pub weight: u32,
    pub kind: CellKind,
    pub stage: usize,
    /// Image in the target algebra.
    pub image: SparseVec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageRecord {
    pub stage: usize,
    pub relations: usize,
    pub generators: usize,
}

#[derive(Clone, Debug)]
pub struct CellularTower {
    pub target: ArtinianAlgebra,
    /// The quasi-free model after the last stage.
    pub model: CdgaPresentation,
    /// One cell per generator of `model`.
    pub cells: Vec<Cell>,
    pub stages: Vec<StageRecord>,
    pub depth: usize,
    pub max_weight: u32,
    /// Last stage that attached a cell.
    pub stabilized_at: usize,
    /// Lowest degree `k` with `H^i(model) ≅ H^i(target)` for `k ≤ i ≤ 0`,
    /// through `max_weight`.
    pub window: i32,
}

/// Adjoins one cell `U` per cycle `R` with `|U| = |R| - 1` and `dU = R`.
pub fn attach_cells(prev: &CdgaPresentation, relations: &[(String, Poly)]) -> Result<CdgaPresentation> {
    if !prev.is_quasi_free() {
        return Err(Error::Invalid("cells attach to a quasi-free algebra".into()));
    }
    let mut cells = Vec::new();
    for (label, r) in relations {
        let Some((deg, wt)) = prev.bidegree(r) else {
            return Err(Error::Invalid(format!("relation for {label} is zero or not homogeneous")));
        };
        if !prev.apply_d(r).is_empty() {
            return Err(Error::Invalid(format!("relation {} is not a cycle", prev.label(r))));
        }
        cells.push((label.clone(), deg - 1, wt, r.clone()));
    }
    extend(prev, cells)
}

/// Adjoins closed generators `(label, degree, weight)`.
pub fn adjoin_generators(prev: &CdgaPresentation, gens: &[(String, i32, u32)]) -> Result<CdgaPresentation> {
    extend(prev, gens.iter().map(|(l, d, w)| (l.clone(), *d, *w, Poly::new())).collect())
}

fn extend(prev: &CdgaPresentation, cells: Vec<(String, i32, u32, Poly)>) -> Result<CdgaPresentation> {
    let mut labels = prev.gens.labels.clone();
    let mut degrees = prev.gens.degrees.clone();
    let mut weights = prev.weights.clone();
    let mut d = prev.d.clone();
    for (l, deg, w, r) in cells {
        if labels.contains(&l) {
            return Err(Error::Invalid(format!("duplicate generator {l}")));
        }
        labels.push(l);
        degrees.push(deg);
        weights.push(w);
        d.push(r);
    }
    CdgaPresentation::new(GenSet::new(labels, degrees), Some(weights), d, vec![])
}

/// Monomials of exactly the given weight and degree.
pub(crate) fn monomials_of(p: &CdgaPresentation, weight: u32, degree: i32) -> Vec<Monomial> {
    fn go(
        p: &CdgaPresentation,
        g: usize,
        weight: u32,
        degree: i32,
        cur: &mut Monomial,
        out: &mut Vec<Monomial>,
    ) {
        if weight == 0 {
            if degree == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if g == p.len() || degree > 0 {
            return;
        }
        let (w, d) = (p.weights[g], p.gens.degrees[g]);
        let max_e = if p.gens.is_odd(g) { 1 } else { weight / w };
        for e in (0..=max_e.min(weight / w)).rev() {
            let rest_d = degree - d * e as i32;
            if e > 0 {
                cur.push((g, e));
            }
            go(p, g + 1, weight - w * e, rest_d, cur, out);
            if e > 0 {
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(p, 0, weight, degree, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// The comparison of `H^{degree, weight}` of a quasi-free model with the
/// target.
struct Comparison {
    /// Cycles of the model whose classes span the kernel.
    kernel: Vec<Poly>,
    /// Cycles of the target whose classes span the cokernel.
    cokernel: Vec<SparseVec>,
}

struct Truncation<'a> {
    model: &'a CdgaPresentation,
    images: &'a [SparseVec],
    target: &'a ArtinianAlgebra,
}

impl Truncation<'_> {
    fn image(&self, m: &Monomial) -> SparseVec {
        let mut out: SparseVec = crate::linalg::unit(0);
        for g in GenSet::word(m) {
            out = self.target.multiply(&out, &self.images[g]);
        }
        out
    }

    fn target_block(&self, degree: i32, weight: u32) -> Vec<usize> {
        self.target.block(degree, Some(weight))
    }

    /// Model differential from `(degree, weight)` as columns on the given
    /// source monomials, in coordinates of `target` monomials.
    fn d_columns(&self, src: &[Monomial], tgt: &[Monomial]) -> Vec<SparseVec> {
        let pos: BTreeMap<&Monomial, usize> = tgt.iter().enumerate().map(|(i, m)| (m, i)).collect();
        src.iter()
            .map(|m| {
                let dm = self.model.gens.derive(m, &self.model.d, 1);
                dm.into_iter().map(|(m2, c)| (pos[&m2], c)).collect()
            })
            .collect()
    }

    fn target_d_columns(&self, src: &[usize], tgt: &[usize]) -> Vec<SparseVec> {
        let pos: BTreeMap<usize, usize> = tgt.iter().enumerate().map(|(i, k)| (*k, i)).collect();
        src.iter()
            .map(|k| self.target.d[*k].iter().map(|(k2, c)| (pos[k2], c.clone())).collect())
            .collect()
    }

    fn compare(&self, degree: i32, weight: u32) -> Comparison {
        let a = monomials_of(self.model, weight, degree);
        let a_up = monomials_of(self.model, weight, degree + 1);
        let a_down = monomials_of(self.model, weight, degree - 1);
        let b = self.target_block(degree, weight);
        let b_up = self.target_block(degree + 1, weight);
        let b_down = self.target_block(degree - 1, weight);
        let b_pos: BTreeMap<usize, usize> = b.iter().enumerate().map(|(i, k)| (*k, i)).collect();

        let z_a = Matrix::from_columns(a_up.len(), &self.d_columns(&a, &a_up)).kernel();
        let bd_a = self.d_columns(&a_down, &a);
        let z_b = Matrix::from_columns(b_up.len(), &self.target_d_columns(&b, &b_up)).kernel();
        let bd_b = self.target_d_columns(&b_down, &b);
        let p_of = |z: &SparseVec| -> SparseVec {
            let mut out = SparseVec::new();
            for (i, c) in z {
                for (k, c2) in self.image(&a[*i]) {
                    add_entry(&mut out, b_pos[&k], c * c2);
                }
            }
            out
        };
        let pz: Vec<SparseVec> = z_a.iter().map(p_of).collect();

        let mut cols = pz.clone();
        cols.extend(bd_b.iter().map(|v| crate::linalg::scaled(v, &-Q::from_integer(1.into()))));
        let kernel_cycles: Vec<SparseVec> = Matrix::from_columns(b.len(), &cols)
            .kernel()
            .into_iter()
            .map(|c| {
                let mut z = SparseVec::new();
                for (j, cj) in c.iter().filter(|(j, _)| **j < z_a.len()) {
                    axpy(&mut z, cj, &z_a[*j]);
                }
                z
            })
            .collect();
        let kernel = Quotient::new(&bd_a)
            .with_candidates(&kernel_cycles)
            .reps
            .iter()
            .map(|z| z.iter().map(|(i, c)| (a[*i].clone(), c.clone())).collect())
            .collect();
        let cokernel = Quotient::new(bd_b.iter().chain(&pz))
            .with_candidates(&z_b)
            .reps
            .iter()
            .map(|v| v.iter().map(|(i, c)| (b[*i], c.clone())).collect())
            .collect();
        Comparison { kernel, cokernel }
    }

    /// A preimage under `d` of a boundary of the target of the given degree.
    fn lift_boundary(&self, v: &SparseVec, degree: i32, weight: u32) -> Option<SparseVec> {
        let b = self.target_block(degree, weight);
        let b_down = self.target_block(degree - 1, weight);
        let pos: BTreeMap<usize, usize> = b.iter().enumerate().map(|(i, k)| (*k, i)).collect();
        let local: SparseVec = v.iter().map(|(k, c)| (pos[k], c.clone())).collect();
        let x = Matrix::from_columns(b.len(), &self.target_d_columns(&b_down, &b)).solve(&local)?;
        Some(x.into_iter().map(|(i, c)| (b_down[i], c)).collect())
    }
}

fn image_of_poly(t: &Truncation, p: &Poly) -> SparseVec {
    let mut out = SparseVec::new();
    for (m, c) in p {
        axpy(&mut out, c, &t.image(m));
    }
    out
}

/// Resolves `target` by cells in degrees `0, -1, …, -depth`, exact on
/// cohomology in degrees above `-depth` and surjective at `-depth`, through
/// weight `max_weight`.
pub fn cellular_resolve(target: &ArtinianAlgebra, depth: usize, max_weight: u32) -> Result<CellularTower> {
    target.validate()?;
    if target.weights.is_none() {
        return Err(Error::Invalid("cellular resolution needs a weight grading on the algebra".into()));
    }
    if (0..target.dim()).any(|i| i != 0 && target.weight(i) == Some(0)) {
        return Err(Error::Invalid("weight zero must be spanned by the unit".into()));
    }
    let mut model = CdgaPresentation::base();
    let mut cells: Vec<Cell> = Vec::new();
    let mut stages = Vec::new();
    for n in 0..=depth {
        let deg = -(n as i32);
        let mut record = StageRecord {
            stage: n,
            relations: 0,
            generators: 0,
        };
        if n > 0 {
            for w in 1..=max_weight {
                let images: Vec<SparseVec> = cells.iter().map(|c| c.image.clone()).collect();
                let t = Truncation { model: &model, images: &images, target };
                let kernel = t.compare(deg + 1, w).kernel;
                if kernel.is_empty() {
                    continue;
                }
                let mut new = Vec::new();
                for z in kernel {
                    let pz = image_of_poly(&t, &z);
                    let lift = t.lift_boundary(&pz, deg + 1, w).ok_or_else(|| Error::Certification {
                        degree: deg + 1,
                        reason: "kernel class does not lift".into(),
                    })?;
                    let label = format!("u{n}_{}", cells.len());
                    new.push((label.clone(), z));
                    cells.push(Cell {
                        label,
                        degree: deg,
                        weight: w,
                        kind: CellKind::Relation,
                        stage: n,
                        image: lift,
                    });
                    record.relations += 1;
                }
                model = attach_cells(&model, &new)?;
            }
        }
        for w in 1..=max_weight {
            let images: Vec<SparseVec> = cells.iter().map(|c| c.image.clone()).collect();
            let t = Truncation { model: &model, images: &images, target };
            let cokernel = t.compare(deg, w).cokernel;
            if cokernel.is_empty() {
                continue;
            }
            let mut new = Vec::new();
            for c in cokernel {
                let label = format!("x{n}_{}", cells.len());
                new.push((label.clone(), deg, w));
                cells.push(Cell {
                    label,
                    degree: deg,
                    weight: w,
                    kind: CellKind::Generator,
                    stage: n,
                    image: c,
                });
                record.generators += 1;
            }
            model = adjoin_generators(&model, &new)?;
        }
        stages.push(record);
        certify(&model, &cells, target, n, max_weight)?;
    }
    let images: Vec<SparseVec> = cells.iter().map(|c| c.image.clone()).collect();
    let t = Truncation { model: &model, images: &images, target };
    let bottom = -(depth as i32);
    let window = if (1..=max_weight).all(|w| t.compare(bottom, w).kernel.is_empty()) {
        bottom
    } else {
        bottom + 1
    };
    let stabilized_at = stages
        .iter()
        .filter(|s| s.relations + s.generators > 0)
        .map(|s| s.stage)
        .max()
        .unwrap_or(0);
    Ok(CellularTower {
        target: target.clone(),
        model,
        cells,
        stages,
        depth,
        max_weight,
        stabilized_at,
        window,
    })
}

fn certify(model: &CdgaPresentation, cells: &[Cell], target: &ArtinianAlgebra, n: usize, max_weight: u32) -> Result<()> {
    let images: Vec<SparseVec> = cells.iter().map(|c| c.image.clone()).collect();
    let t = Truncation { model, images: &images, target };
    for (i, c) in cells.iter().enumerate() {
        let lhs = image_of_poly(&t, &model.d[i]);
        if lhs != target.apply_d(&c.image) {
            return Err(Error::Certification {
                degree: c.degree,
                reason: format!("{} is not sent compatibly with d", c.label),
            });
        }
    }
    let lo = -(n as i32);
    for degree in lo..=0 {
        for w in 0..=max_weight {
            let cmp = t.compare(degree, w);
            if !cmp.cokernel.is_empty() {
                return Err(Error::Certification {
                    degree,
                    reason: format!("not surjective in weight {w}"),
                });
            }
            if degree > lo && !cmp.kernel.is_empty() {
                return Err(Error::Certification {
                    degree,
                    reason: format!("not injective in weight {w}"),
                });
            }
        }
    }
    Ok(())
}

impl CellularTower {
    /// Number of cells in each `(degree, weight)`.
    pub fn cell_counts(&self) -> BTreeMap<(i32, u32), usize> {
        let mut out = BTreeMap::new();
        for c in &self.cells {
            *out.entry((c.degree, c.weight)).or_default() += 1;
        }
        out
    }

    /// `d` of a cell as text.
    pub fn describe(&self, i: usize) -> String {
        self.model.label(&self.model.d[i])
    }
}

/// `L_{B} ⊗_B ℚ`: the cells with the linear part of their differential.
#[derive(Clone, Debug)]
pub struct CotangentFiber {
    pub labels: Vec<String>,
    pub degrees: Vec<i32>,
    pub weights: Vec<u32>,
    /// Linear part of the differential on flat cell indices.
    pub d: Vec<SparseVec>,
    pub complex: Complex,
    /// Degrees at or above this one are not affected by the depth bound.
    pub valid_from: i32,
}

pub fn cotangent_fiber(tower: &CellularTower) -> Result<CotangentFiber> {
    let model = &tower.model;
    let n = model.len();
    let d: Vec<SparseVec> = (0..n)
        .map(|i| {
            model.d[i]
                .iter()
                .filter(|(m, _)| m.len() == 1 && m[0].1 == 1)
                .map(|(m, c)| (m[0].0, c.clone()))
                .collect()
        })
        .collect();
    let items: Vec<(String, i32)> = (0..n).map(|i| (model.gens.labels[i].clone(), model.gens.degrees[i])).collect();
    let complex = Complex::from_flat(&items, &d)?;

    Ok(CotangentFiber {
        labels: model.gens.labels.clone(),
        degrees: model.gens.degrees.clone(),
        weights: model.weights.clone(),
        d,
        complex,
        valid_from: -(tower.depth as i32),
    })
}

impl CotangentFiber {
    /// Cohomology dimensions per `(degree, weight)` within the valid range.
    pub fn dims(&self) -> BTreeMap<(i32, u32), usize> {
        let mut weights: Vec<u32> = self.weights.clone();
        weights.sort();
        weights.dedup();
        let mut out = BTreeMap::new();
        for w in weights {
            let idx: Vec<usize> = (0..self.labels.len()).filter(|i| self.weights[*i] == w).collect();
            let items: Vec<(String, i32)> = idx.iter().map(|i| (self.labels[*i].clone(), self.degrees[*i])).collect();
            let pos: BTreeMap<usize, usize> = idx.iter().enumerate().map(|(k, i)| (*i, k)).collect();
            let block: Vec<SparseVec> = idx
                .iter()
                .map(|i| self.d[*i].iter().filter_map(|(j, c)| pos.get(j).map(|k| (*k, c.clone()))).collect())
                .collect();
            let c = Complex::from_flat(&items, &block).expect("weight block of a complex");
            for (deg, k) in c.homology_dims() {
                if deg >= self.valid_from {
                    out.insert((deg, w), k);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cdga::CdgaPresentation;
    use crate::rational::q;

    fn counts(t: &CellularTower) -> Vec<(i32, u32, usize)> {
        t.cell_counts().into_iter().map(|((d, w), n)| (d, w, n)).collect()
    }

    #[test]
    fn base_field_has_no_cells() {
        let t = cellular_resolve(&ArtinianAlgebra::base(), 3, 4).unwrap();
        assert!(t.cells.is_empty());
        assert_eq!(t.stabilized_at, 0);
        assert_eq!(t.window, -3);
    }

    #[test]
    fn dual_numbers() {
        let t = cellular_resolve(&ArtinianAlgebra::truncated_polynomial(2), 3, 6).unwrap();
        assert_eq!(counts(&t), vec![(-1, 2, 1), (0, 1, 1)]);
        assert_eq!(t.stabilized_at, 1);
        assert_eq!(t.describe(1), "x0_0^2");
    }

    #[test]
    fn truncated_cubic() {
        let t = cellular_resolve(&ArtinianAlgebra::truncated_polynomial(3), 3, 8).unwrap();
        assert_eq!(counts(&t), vec![(-1, 3, 1), (0, 1, 1)]);
        assert_eq!(t.stabilized_at, 1);
    }

    #[test]
    fn two_variable_square_zero() {
        let g = GenSet::new(vec!["x".into(), "y".into()], vec![0, 0]);
        let mono = |m: Monomial| -> Poly { [(m, q(1))].into() };
        let rels = vec![mono(vec![(0, 2)]), mono(vec![(0, 1), (1, 1)]), mono(vec![(1, 2)])];
        let b = CdgaPresentation::new(g, None, vec![], rels).unwrap().to_artinian().unwrap();
        let t = cellular_resolve(&b, 3, 4).unwrap();
        let c = t.cell_counts();
        assert_eq!(c[&(0, 1)], 2);
        assert_eq!(c[&(-1, 2)], 3);
        // the Koszul dual of ℚ[x,y]/m² is free on two generators
        assert_eq!(c[&(-2, 3)], 2);
        assert_eq!(c[&(-3, 4)], 3);
        assert_eq!(t.window, -3);
    }

    #[test]
    fn odd_generator() {
        let b = ArtinianAlgebra::eps(1);
        let t = cellular_resolve(&b, 3, 4).unwrap();
        assert_eq!(counts(&t), vec![(-1, 1, 1)]);
    }

    #[test]
    fn koszul_attachment() {
        let g = GenSet::new(vec!["x".into(), "y".into()], vec![0, 0]);
        let a = CdgaPresentation::new(g, None, vec![], vec![]).unwrap();
        let r = |m: Monomial| -> Poly { [(m, q(1))].into() };
        let a = attach_cells(&a, &[("u".into(), r(vec![(0, 1)])), ("v".into(), r(vec![(1, 1)]))]).unwrap();
        assert_eq!(a.gens.degrees, vec![0, 0, -1, -1]);
        assert!(attach_cells(&a, &[("w".into(), r(vec![(2, 1)]))]).is_err());
        let z: Poly = [(vec![(0, 1), (3, 1)], q(1)), (vec![(1, 1), (2, 1)], q(-1))].into();
        let a = attach_cells(&a, &[("w".into(), z)]).unwrap();
        assert_eq!(a.gens.degrees[4], -2);
    }

    #[test]
    fn unweighted_target_rejected() {
        let mut b = ArtinianAlgebra::truncated_polynomial(2);
        b.weights = None;
        assert!(matches!(cellular_resolve(&b, 2, 3), Err(Error::Invalid(_))));
    }

    #[test]
    fn fiber_of_dual_numbers() {
        let t = cellular_resolve(&ArtinianAlgebra::truncated_polynomial(2), 2, 4).unwrap();
        let f = cotangent_fiber(&t).unwrap();
        assert_eq!(f.dims(), [((-1, 2), 1), ((0, 1), 1)].into());
    }
}
