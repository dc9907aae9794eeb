//! Free graded Lie algebras, truncated by bracket weight, realized inside the
//! tensor algebra.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use super::DgLieAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{CoordSpan, SparseVec};
use crate::monomial::GenSet;
use crate::rational::Q;
use crate::sym::WordVec;

#[derive(Clone, Debug)]
pub struct FreeLiePresentation {
    pub generators: Vec<(String, i32)>,
    pub max_weight: u32,
    /// Basis words per weight, e.g. `[x,[x,y]]`.
    pub hall_basis: BTreeMap<u32, Vec<String>>,
    /// Tensor-algebra expansion of every basis element (flat order).
    pub expansions: Vec<WordVec>,
    /// The truncated free Lie algebra (brackets landing above `max_weight`
    /// are zero).
    pub lie: DgLieAlgebra,
}

#[derive(Clone, Debug, Serialize)]
pub struct FreeLieDims {
    /// `(weight, degree) → dimension`.
    pub dims: BTreeMap<(u32, i32), usize>,
}

/// Word degree.
fn word_degree(degrees: &[i32], w: &[usize]) -> i32 {
    w.iter().map(|g| degrees[*g]).sum()
}

/// `ab - (-1)^{|a||b|} ba` for homogeneous `a`, `b` in the tensor algebra.
pub fn commutator(degrees: &[i32], a: &WordVec, b: &WordVec) -> WordVec {
    let mut out = WordVec::new();
    for (wa, ca) in a {
        let da = word_degree(degrees, wa);
        for (wb, cb) in b {
            let db = word_degree(degrees, wb);
            let c = ca * cb;
            let mut ab = wa.clone();
            ab.extend(wb);
            *out.entry(ab).or_insert_with(Q::zero) += &c;
            let mut ba = wb.clone();
            ba.extend(wa);
            *out.entry(ba).or_insert_with(Q::zero) -= c * crate::graded::koszul(da, db);
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Interns words of a fixed length as column indices.
#[derive(Default)]
struct WordIndex {
    ids: BTreeMap<Vec<usize>, usize>,
}

impl WordIndex {
    fn vec(&mut self, v: &WordVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (w, c) in v {
            let n = self.ids.len();
            let id = *self.ids.entry(w.clone()).or_insert(n);
            out.insert(id, c.clone());
        }
        out
    }
}

pub fn free_lie(generators: &[(String, i32)], max_weight: u32) -> Result<FreeLiePresentation> {
    if max_weight < 1 {
        return Err(Error::Invalid("free_lie needs maxWeight ≥ 1".into()));
    }
    if let Some((l, d)) = generators.iter().find(|(_, d)| *d < 1) {
        return Err(Error::Invalid(format!(
            "free Lie generator {l} has degree {d}; generators must sit in degrees ≥ 1"
        )));
    }
    let degrees: Vec<i32> = generators.iter().map(|(_, d)| *d).collect();
    let mut labels: Vec<String> = Vec::new();
    let mut basis_degrees: Vec<i32> = Vec::new();
    let mut weights: Vec<u32> = Vec::new();
    let mut expansions: Vec<WordVec> = Vec::new();
    let mut spans: BTreeMap<u32, (CoordSpan, WordIndex, Vec<usize>)> = BTreeMap::new();

    for (g, (l, d)) in generators.iter().enumerate() {
        let e: WordVec = [(vec![g], Q::one())].into();
        let entry = spans.entry(1).or_default();
        let v = entry.1.vec(&e);
        entry.0.insert(&v).expect("generators are independent");
        entry.2.push(labels.len());
        labels.push(l.clone());
        basis_degrees.push(*d);
        weights.push(1);
        expansions.push(e);
    }
    for w in 2..=max_weight {
        let prev = spans.get(&(w - 1)).map(|s| s.2.clone()).unwrap_or_default();
        let mut entry = (CoordSpan::new(), WordIndex::default(), Vec::new());
        for g in 0..generators.len() {
            for &b in &prev {
                let e = commutator(&degrees, &expansions[g], &expansions[b]);
                if e.is_empty() {
                    continue;
                }
                let v = entry.1.vec(&e);
                if entry.0.insert(&v).is_some() {
                    entry.2.push(labels.len());
                    labels.push(format!("[{},{}]", labels[g], labels[b]));
                    basis_degrees.push(degrees[g] + basis_degrees[b]);
                    weights.push(w);
                    expansions.push(e);
                }
            }
        }
        spans.insert(w, entry);
    }

    let n = labels.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|(i, j)| weights[*i] + weights[*j] <= max_weight)
        .collect();
    let products = crate::par::map(&pairs, |&(i, j)| commutator(&degrees, &expansions[i], &expansions[j]));
    let mut bracket = BTreeMap::new();
    for (&(i, j), e) in pairs.iter().zip(products) {
        if e.is_empty() {
            continue;
        }
        let w = weights[i] + weights[j];
        let entry = spans.get_mut(&w).expect("weight within bound");
        let v = entry.1.vec(&e);
        let coords = entry
            .0
            .express(&v)
            .ok_or_else(|| Error::Invalid("bracket left the free Lie span".into()))?;
        let members = &entry.2;
        let image: SparseVec = coords.into_iter().map(|(k, c)| (members[k], c)).collect();
        bracket.insert((i, j), image);
    }
    let mut hall_basis: BTreeMap<u32, Vec<String>> = BTreeMap::new();
    for k in 0..n {
        hall_basis.entry(weights[k]).or_default().push(labels[k].clone());
    }
    let basis = GenSet::new(labels, basis_degrees);
    let lie = DgLieAlgebra::from_parts(basis, vec![SparseVec::new(); n], bracket, Some(weights));
    Ok(FreeLiePresentation {
        generators: generators.to_vec(),
        max_weight,
        hall_basis,
        expansions,
        lie,
    })
}

impl FreeLiePresentation {
    pub fn dims(&self) -> FreeLieDims {
        let mut dims = BTreeMap::new();
        let ws = self.lie.weights().expect("free Lie algebras carry weights");
        for k in 0..self.lie.dim() {
            *dims.entry((ws[k], self.lie.degree(k))).or_insert(0) += 1;
        }
        FreeLieDims { dims }
    }
}

/// Brute-force oracle: dimension, per `(weight, degree)`, of the span of all
/// iterated brackets of generators inside the tensor algebra.
#[cfg(test)]
pub(crate) fn primitive_dims_oracle(generators: &[(String, i32)], max_weight: u32) -> BTreeMap<(u32, i32), usize> {
    let degrees: Vec<i32> = generators.iter().map(|(_, d)| *d).collect();
    // all bracketings: Lie_w = span of [Lie_a, Lie_b], a + b = w
    let mut layers: BTreeMap<u32, Vec<WordVec>> = BTreeMap::new();
    layers.insert(
        1,
        (0..generators.len()).map(|g| [(vec![g], Q::one())].into()).collect(),
    );
    for w in 2..=max_weight {
        let mut all = Vec::new();
        for a in 1..w {
            for x in &layers[&a] {
                for y in &layers[&(w - a)] {
                    let c = commutator(&degrees, x, y);
                    if !c.is_empty() {
                        all.push(c);
                    }
                }
            }
        }
        // keep an independent subset to bound the growth
        let mut idx = WordIndex::default();
        let mut span = CoordSpan::new();
        let kept: Vec<WordVec> = all.into_iter().filter(|v| span.insert(&idx.vec(v)).is_some()).collect();
        layers.insert(w, kept);
    }
    let mut out = BTreeMap::new();
    for (w, vs) in &layers {
        let mut by_degree: BTreeMap<i32, Vec<&WordVec>> = BTreeMap::new();
        for v in vs {
            let d = word_degree(&degrees, v.keys().next().unwrap());
            by_degree.entry(d).or_default().push(v);
        }
        for (d, group) in by_degree {
            let mut idx = WordIndex::default();
            let mut span = CoordSpan::new();
            let r = group.iter().filter(|v| span.insert(&idx.vec(v)).is_some()).count();
            if r > 0 {
                out.insert((*w, d), r);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn gens(items: &[(&str, i32)]) -> Vec<(String, i32)> {
        items.iter().map(|(l, d)| (l.to_string(), *d)).collect()
    }

    #[test]
    fn one_even_generator() {
        let f = free_lie(&gens(&[("x", 2)]), 4).unwrap();
        assert_eq!(f.lie.dim(), 1);
        assert!(f.lie.bracket_basis(0, 0).is_empty());
    }

    #[test]
    fn one_odd_generator() {
        let f = free_lie(&gens(&[("x", 1)]), 5).unwrap();
        assert_eq!(f.hall_basis[&1], vec!["x"]);
        assert_eq!(f.hall_basis[&2], vec!["[x,x]"]);
        assert_eq!(f.lie.dim(), 2);
        assert!(f.lie.bracket_basis(0, 1).is_empty());
        assert_eq!(f.lie.bracket_basis(0, 0), [(1, q(1))].into());
        assert!(f.lie.validate().is_ok());
    }

    #[test]
    fn two_odd_generators_weight_two() {
        let f = free_lie(&gens(&[("x", 1), ("y", 1)]), 3).unwrap();
        assert_eq!(f.hall_basis[&2].len(), 3);
        assert!(f.lie.validate().is_ok());
    }

    #[test]
    fn rejects_degree_zero() {
        assert!(free_lie(&gens(&[("x", 0)]), 2).is_err());
    }

    #[test]
    fn dims_match_oracle() {
        for g in [
            gens(&[("x", 1)]),
            gens(&[("x", 2)]),
            gens(&[("x", 1), ("y", 1)]),
            gens(&[("x", 1), ("y", 2)]),
            gens(&[("x", 2), ("y", 2)]),
        ] {
            let f = free_lie(&g, 5).unwrap();
            assert_eq!(f.dims().dims, primitive_dims_oracle(&g, 5), "{g:?}");
            assert!(f.lie.validate().is_ok(), "{g:?}");
        }
    }
}
