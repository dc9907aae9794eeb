//! Polynomial presentations `ℚ[generators]/(relations)` with a differential.

use std::collections::BTreeMap;

use super::artinian::ArtinianAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{Quotient, SparseVec};
use crate::monomial::{add_term, GenSet, Monomial, Poly};
use crate::rational::Q;

/// Largest weight explored when deciding finite-dimensionality.
const WEIGHT_LIMIT: u32 = 64;
/// Largest number of monomials explored in that search.
const MONOMIAL_LIMIT: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CdgaPresentation {
    pub gens: GenSet,
    /// Positive generator weights; all 1 unless given.
    pub weights: Vec<u32>,
    pub d: Vec<Poly>,
    pub relations: Vec<Poly>,
}

impl CdgaPresentation {
    pub fn new(gens: GenSet, weights: Option<Vec<u32>>, d: Vec<Poly>, relations: Vec<Poly>) -> Result<Self> {
        let n = gens.len();
        let mut d = d;
        d.resize(n, Poly::new());
        let p = Self {
            weights: weights.unwrap_or_else(|| vec![1; n]),
            gens,
            d,
            relations,
        };
        p.validate()?;
        Ok(p)
    }

    /// The polynomial algebra on no generators.
    pub fn base() -> Self {
        Self::new(GenSet::new(vec![], vec![]), None, vec![], vec![]).expect("empty presentation")
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_quasi_free(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn monomial_weight(&self, m: &Monomial) -> u32 {
        m.iter().map(|(g, e)| self.weights[*g] * e).sum()
    }

    /// `(degree, weight)` of a homogeneous nonzero polynomial.
    pub fn bidegree(&self, p: &Poly) -> Option<(i32, u32)> {
        let mut it = p.keys().map(|m| (self.gens.degree(m), self.monomial_weight(m)));
        let first = it.next()?;
        it.all(|x| x == first).then_some(first)
    }

    pub fn apply_d(&self, p: &Poly) -> Poly {
        self.gens.derive_poly(p, &self.d, 1)
    }

    pub fn label(&self, p: &Poly) -> String {
        crate::monomial::poly_label(&self.gens, p)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.len();
        if self.weights.len() != n || self.weights.contains(&0) {
            return Err(Error::Invalid("generator weights must be positive".into()));
        }
        for g in 0..n {
            let l = &self.gens.labels[g];
            if self.gens.degrees[g] > 0 {
                return Err(Error::Invalid(format!("generator {l} has positive degree")));
            }
            let dg = &self.d[g];
            if dg.is_empty() {
                continue;
            }
            if self.bidegree(dg) != Some((self.gens.degrees[g] + 1, self.weights[g])) {
                return Err(Error::Axiom(format!("d({l}) is not homogeneous of degree +1 and weight {}", self.weights[g])));
            }
            if dg.contains_key(&Vec::new()) {
                return Err(Error::Axiom(format!("d({l}) has a constant term")));
            }
        }
        for r in &self.relations {
            if r.is_empty() {
                continue;
            }
            if self.bidegree(r).is_none() {
                return Err(Error::Invalid(format!("relation {} is not homogeneous", self.label(r))));
            }
            if r.contains_key(&Vec::new()) {
                return Err(Error::Invalid(format!("relation {} has a constant term", self.label(r))));
            }
        }
        if self.is_quasi_free() {
            for g in 0..n {
                if !self.apply_d(&self.d[g]).is_empty() {
                    return Err(Error::Axiom(format!("d∘d ≠ 0 on {}", self.gens.labels[g])));
                }
            }
        }
        Ok(())
    }

    /// Structure constants of the quotient when it is finite-dimensional;
    /// the basis consists of standard monomials, graded by weight.
    pub fn to_artinian(&self) -> Result<ArtinianAlgebra> {
        let max_gen = self.weights.iter().copied().max().unwrap_or(1);
        let mut cap = 4.max(2 * max_gen);
        loop {
            if let Some(a) = self.quotient_up_to(cap, max_gen)? {
                return Ok(a);
            }
            if cap >= WEIGHT_LIMIT {
                return Err(Error::NotArtinian(format!(
                    "quotient does not vanish through weight {WEIGHT_LIMIT}: not finite-dimensional"
                )));
            }
            cap = (cap * 2).min(WEIGHT_LIMIT);
        }
    }

    fn quotient_up_to(&self, cap: u32, max_gen: u32) -> Result<Option<ArtinianAlgebra>> {
        let w = self.weights.clone();
        let monomials = self.gens.monomials_weighted(&|g| w[g], cap);
        if monomials.len() > MONOMIAL_LIMIT {
            return Err(Error::NotArtinian("quotient too large to be artinian at desk scale".into()));
        }
        let mut by_weight: BTreeMap<u32, Vec<Monomial>> = BTreeMap::new();
        for m in monomials {
            by_weight.entry(self.monomial_weight(&m)).or_default().push(m);
        }
        let local: BTreeMap<Monomial, (u32, usize)> = by_weight
            .iter()
            .flat_map(|(w, ms)| ms.iter().enumerate().map(move |(i, m)| (m.clone(), (*w, i))))
            .collect();
        let to_vec = |p: &Poly| -> SparseVec { p.iter().map(|(m, c)| (local[m].1, c.clone())).collect() };
        let mut quotients: BTreeMap<u32, Quotient> = BTreeMap::new();
        let mut zero_run = 0;
        let mut top = None;
        for (&wt, ms) in &by_weight {
            let mut ideal = Vec::new();
            for r in self.relations.iter().filter(|r| !r.is_empty()) {
                let (_, rw) = self.bidegree(r).expect("validated");
                if rw > wt {
                    continue;
                }
                for m in by_weight.get(&(wt - rw)).into_iter().flatten() {
                    let p = self.gens.poly_mul(&[(m.clone(), Q::from_integer(1.into()))].into(), r);
                    ideal.push(to_vec(&p));
                }
            }
            let units: Vec<SparseVec> = (0..ms.len()).map(crate::linalg::unit).collect();
            let qt = Quotient::new(&ideal).with_candidates(&units);
            if wt > 0 && qt.dim() == 0 {
                zero_run += 1;
                if zero_run >= max_gen {
                    top = Some(wt + 1 - zero_run);
                    break;
                }
            } else {
                zero_run = 0;
            }
            quotients.insert(wt, qt);
        }
        let Some(top) = top else { return Ok(None) };
        quotients.retain(|w, _| *w < top);
        // flat basis: standard monomials weight by weight
        let mut flat: BTreeMap<(u32, usize), usize> = BTreeMap::new();
        let mut basis: Vec<Monomial> = Vec::new();
        for (wt, qt) in &quotients {
            for (r, v) in qt.reps.iter().enumerate() {
                let (&i, _) = v.iter().next().expect("unit vector");
                flat.insert((*wt, r), basis.len());
                basis.push(by_weight[wt][i].clone());
            }
        }
        let express = |p: &Poly| -> SparseVec {
            let mut out = SparseVec::new();
            let mut parts: BTreeMap<u32, Poly> = BTreeMap::new();
            for (m, c) in p {
                let (wt, _) = local.get(m).copied().unwrap_or((u32::MAX, 0));
                if wt < top {
                    add_term(parts.entry(wt).or_default(), m.clone(), c.clone());
                }
            }
            for (wt, part) in parts {
                let coords = quotients[&wt].coords(&to_vec(&part)).expect("monomials span the quotient");
                for (r, c) in coords {
                    crate::linalg::add_entry(&mut out, flat[&(wt, r)], c);
                }
            }
            out
        };
        for r in &self.relations {
            if !express(&self.apply_d(r)).is_empty() {
                return Err(Error::Axiom(format!("d does not preserve the relation {}", self.label(r))));
            }
        }
        let n = basis.len();
        let mono = |m: &Monomial| -> Poly { [(m.clone(), Q::from_integer(1.into()))].into() };
        let mut mult = BTreeMap::new();
        for i in 1..n {
            for j in 1..n {
                let p = self.gens.poly_mul(&mono(&basis[i]), &mono(&basis[j]));
                let v = express(&p);
                if !v.is_empty() {
                    mult.insert((i, j), v);
                }
            }
        }
        let d: Vec<SparseVec> = basis.iter().map(|m| express(&self.apply_d(&mono(m)))).collect();
        let labels: Vec<String> = basis.iter().map(|m| self.gens.label(m)).collect();
        let degrees: Vec<i32> = basis.iter().map(|m| self.gens.degree(m)).collect();
        let weights: Vec<u32> = basis.iter().map(|m| self.monomial_weight(m)).collect();
        ArtinianAlgebra::new(labels, degrees, Some(weights), mult, d).map(Some)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn pow(g: usize, e: u32) -> Poly {
        [(vec![(g, e)], q(1))].into()
    }

    fn xy() -> GenSet {
        GenSet::new(vec!["x".into(), "y".into()], vec![0, 0])
    }

    #[test]
    fn polynomial_ring_is_not_artinian() {
        let p = CdgaPresentation::new(GenSet::new(vec!["x".into()], vec![0]), None, vec![], vec![]).unwrap();
        assert!(matches!(p.to_artinian(), Err(Error::NotArtinian(_))));
    }

    #[test]
    fn square_zero_in_two_variables() {
        let rels = vec![pow(0, 2), [(vec![(0, 1), (1, 1)], q(1))].into(), pow(1, 2)];
        let a = CdgaPresentation::new(xy(), None, vec![], rels).unwrap().to_artinian().unwrap();
        assert_eq!(a.labels, vec!["1", "x", "y"]);
        assert_eq!(a.nilpotency_order().unwrap(), 2);
    }

    #[test]
    fn truncated_polynomial_matches_table() {
        let a = CdgaPresentation::new(GenSet::new(vec!["x".into()], vec![0]), None, vec![], vec![pow(0, 3)])
            .unwrap()
            .to_artinian()
            .unwrap();
        let b = ArtinianAlgebra::truncated_polynomial(3);
        assert_eq!(a.mult, b.mult);
        assert_eq!(a.degrees, b.degrees);
    }

    #[test]
    fn weighted_nonmonomial_relation() {
        // x in weight 3, y in weight 2: x² - y³ and xy
        let mut r1 = pow(0, 2);
        add_term(&mut r1, vec![(1, 3)], q(-1));
        let rels = vec![r1, [(vec![(0, 1), (1, 1)], q(1))].into()];
        let a = CdgaPresentation::new(xy(), Some(vec![3, 2]), vec![], rels).unwrap().to_artinian().unwrap();
        // 1, y, x, y², y³ = x²  (y⁴ = x²y = 0)
        assert_eq!(a.dim(), 5);
        assert!(a.nilpotency_order().is_ok());
        let rels_bad = vec![pow(0, 2), {
            let mut r = pow(0, 1);
            add_term(&mut r, vec![(1, 1)], q(1));
            r
        }];
        assert!(CdgaPresentation::new(xy(), Some(vec![3, 2]), vec![], rels_bad).is_err());
    }

    #[test]
    fn differential_on_quotient() {
        // Λ(u) ⊗ ℚ[t]/t³ with du = t², u in degree -1, weight 2
        let g = GenSet::new(vec!["t".into(), "u".into()], vec![0, -1]);
        let p = CdgaPresentation::new(g, Some(vec![1, 2]), vec![Poly::new(), pow(0, 2)], vec![pow(0, 3)]).unwrap();
        let a = p.to_artinian().unwrap();
        assert_eq!(a.homology_dims(), [(0, 2), (-1, 2)].into());
    }

    #[test]
    fn positive_degree_rejected() {
        let g = GenSet::new(vec!["x".into()], vec![1]);
        assert!(CdgaPresentation::new(g, None, vec![], vec![]).is_err());
    }
}
