//! The homological Chevalley–Eilenberg complex `H(L) = Sym(L[1])`.
//!
//! On `η.x_1 ⋯ η.x_n` (with `|η.x| = |x| - 1`, cohomological grading, so
//! homological degree `k` sits in degree `-k`):
//!
//! ```text
//! d = Σ_{i<j} (-1)^{T_ij + |x_i|} η.[x_i,x_j] η.x_1 ⋯ ^i ⋯ ^j ⋯ η.x_n
//!   - Σ_i (-1)^{S_i} η.x_1 ⋯ η.dx_i ⋯ η.x_n
//! S_i  = Σ_{k<i} (|x_k| - 1)
//! T_ij = (|x_i|-1) S_i + (|x_j|-1) S_j + (|x_i|-1)(|x_j|-1)
//! ```
//!
//! `T_ij` alone is the Koszul sign of moving `η.x_i η.x_j` to the front; the
//! extra `|x_i|` makes the quadratic part graded-symmetric on `L[1]`, which is
//! what `d² = 0` requires for algebras with mixed parities.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::graded::{Complex, GradedSpace};
use crate::lie::DgLieAlgebra;
use crate::linalg::SparseVec;
use crate::monomial::{GenSet, Monomial};
use crate::rational::{sign, Q};

/// Per-degree reliability of a truncated computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Exactness {
    Exact,
    WeightTruncated(u32),
}

impl Exactness {
    pub fn label(&self) -> String {
        match self {
            Exactness::Exact => "exact".into(),
            Exactness::WeightTruncated(w) => format!("weight-truncated({w})"),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Exactness::Exact)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum BracketSign {
    /// `(-1)^{T_ij + |x_i|}`.
    Resolved,
    /// `(-1)^{T_ij}` as displayed without the correction; kept for tests.
    #[allow(dead_code)]
    Uncorrected,
}

#[derive(Clone, Debug)]
pub struct CeChains {
    pub lie: DgLieAlgebra,
    pub max_weight: u32,
    /// Generators `η.x_i`, degree `|x_i| - 1`.
    pub gens: GenSet,
    /// Weight of each generator: Lie weight when available, else 1.
    pub gen_weights: Vec<u32>,
    /// Flat basis of monomials (weight ≤ max_weight).
    pub monomials: Vec<Monomial>,
    pub complex: Complex,
    /// `(degree, index)` inside `complex` for every flat monomial.
    pub positions: Vec<(i32, usize)>,
    index: BTreeMap<Monomial, usize>,
    d_flat: Vec<SparseVec>,
    /// `true` when weights come from a Lie weight grading, so every weight
    /// block is complete and the truncation is a direct summand.
    pub graded_by_lie_weight: bool,
}

pub fn eta_label(x: &str) -> String {
    format!("η.{x}")
}

pub(crate) fn eta_gens(l: &DgLieAlgebra) -> GenSet {
    GenSet::new(
        (0..l.dim()).map(|i| eta_label(l.label(i))).collect(),
        (0..l.dim()).map(|i| l.degree(i) - 1).collect(),
    )
}

pub fn ce_homological(l: &DgLieAlgebra, max_weight: u32) -> CeChains {
    build(l, max_weight, BracketSign::Resolved)
}

pub(crate) fn build(l: &DgLieAlgebra, max_weight: u32, bs: BracketSign) -> CeChains {
    let gens = eta_gens(l);
    let gen_weights: Vec<u32> = l.weights().map(|w| w.to_vec()).unwrap_or_else(|| vec![1; l.dim()]);
    let gw = gen_weights.clone();
    let monomials = gens.monomials_weighted(&|g| gw[g], max_weight);
    let index: BTreeMap<Monomial, usize> = monomials.iter().enumerate().map(|(k, m)| (m.clone(), k)).collect();
    let d_flat: Vec<SparseVec> = crate::par::map(&monomials, |m| {
        let mut out = SparseVec::new();
        for (mm, c) in differential_of_word(l, &gens, &GenSet::word(m), bs) {
            let k = *index.get(&mm).expect("differential preserves the weight bound");
            crate::linalg::add_entry(&mut out, k, c);
        }
        out
    });
    let mut space = GradedSpace::new();
    let positions: Vec<(i32, usize)> = monomials
        .iter()
        .map(|m| (gens.degree(m), space.push(gens.degree(m), gens.label(m))))
        .collect();
    let map = crate::graded::flat_map(&space, &space, &positions, &positions, 1, &d_flat)
        .expect("CE differential has degree +1");
    let complex = match Complex::new(space.clone(), map.clone()) {
        Ok(c) => c,
        Err(_) if bs != BracketSign::Resolved => unchecked_complex(space, map),
        Err(e) => panic!("CE differential must square to zero: {e}"),
    };
    CeChains {
        lie: l.clone(),
        max_weight,
        gens,
        gen_weights,
        monomials,
        complex,
        positions,
        index,
        d_flat,
        graded_by_lie_weight: l.weights().is_some(),
    }
}

fn unchecked_complex(space: GradedSpace, map: crate::graded::GradedMap) -> Complex {
    Complex::new_unchecked(space, map)
}

/// The CE differential on a word `η.x_{w_1} ⋯ η.x_{w_n}`, as Sym monomials.
fn differential_of_word(l: &DgLieAlgebra, gens: &GenSet, w: &[usize], bs: BracketSign) -> BTreeMap<Monomial, Q> {
    let mut out: BTreeMap<Monomial, Q> = BTreeMap::new();
    let mut add = |word: &[usize], c: Q| {
        if let Some((s, m)) = gens.from_word(word) {
            let e = out.entry(m).or_insert_with(Q::zero);
            *e += s * c;
        }
    };
    let n = w.len();
    let s_of: Vec<i64> = (0..n)
        .map(|i| w[..i].iter().map(|g| (l.degree(*g) - 1) as i64).sum())
        .collect();
    for i in 0..n {
        for (h, c) in l.d_of(w[i]) {
            let mut nw = w.to_vec();
            nw[i] = *h;
            add(&nw, -sign(s_of[i]) * c);
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let (xi, xj) = (l.degree(w[i]) as i64, l.degree(w[j]) as i64);
            let mut t = (xi - 1) * s_of[i] + (xj - 1) * s_of[j] + (xi - 1) * (xj - 1);
            if bs == BracketSign::Resolved {
                t += xi;
            }
            let rest: Vec<usize> = (0..n).filter(|k| *k != i && *k != j).map(|k| w[k]).collect();
            for (h, c) in l.bracket_basis(w[i], w[j]) {
                let mut nw = vec![h];
                nw.extend_from_slice(&rest);
                add(&nw, sign(t) * c);
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

impl CeChains {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn degree(&self, k: usize) -> i32 {
        self.gens.degree(&self.monomials[k])
    }

    pub fn weight(&self, k: usize) -> u32 {
        self.monomials[k].iter().map(|(g, e)| self.gen_weights[*g] * e).sum()
    }

    pub fn label(&self, k: usize) -> String {
        self.gens.label(&self.monomials[k])
    }

    /// `d` of the `k`-th flat basis element, in flat coordinates.
    pub fn d_flat(&self, k: usize) -> &SparseVec {
        &self.d_flat[k]
    }

    /// The unit `1 ∈ Sym⁰`.
    pub fn unit(&self) -> usize {
        self.index[&Vec::new()]
    }

    /// Homology dimensions per degree.
    pub fn homology_dims(&self) -> BTreeMap<i32, usize> {
        self.complex.homology_dims()
    }

    /// Homology dimensions per `(degree, weight)`, available when the
    /// differential preserves weight (Lie-weight grading).
    pub fn homology_by_weight(&self) -> Option<BTreeMap<(i32, u32), usize>> {
        if !self.graded_by_lie_weight {
            return None;
        }
        let mut out = BTreeMap::new();
        for w in 0..=self.max_weight {
            let sub = self.weight_block(w);
            for (d, n) in sub.homology_dims() {
                out.insert((d, w), n);
            }
        }
        Some(out)
    }

    fn weight_block(&self, w: u32) -> Complex {
        let keep: Vec<usize> = (0..self.len()).filter(|k| self.weight(*k) == w).collect();
        let local: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(a, b)| (*b, a)).collect();
        let items: Vec<(String, i32)> = keep.iter().map(|k| (self.label(*k), self.degree(*k))).collect();
        let cols: Vec<SparseVec> = keep
            .iter()
            .map(|k| self.d_flat[*k].iter().map(|(r, c)| (local[r], c.clone())).collect())
            .collect();
        Complex::from_flat(&items, &cols).expect("weight block of a graded complex")
    }

    /// Coproduct `Δ(b_k) = Σ c · b_a ⊗ b_b` (unshuffles with Koszul signs).
    pub fn coproduct(&self, k: usize) -> BTreeMap<(usize, usize), Q> {
        let w = GenSet::word(&self.monomials[k]);
        let n = w.len();
        let mut out: BTreeMap<(usize, usize), Q> = BTreeMap::new();
        for mask in 0u64..(1u64 << n) {
            let left: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let right: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 0).collect();
            // sign of moving the chosen letters to the front
            let mut flips = 0i64;
            for &i in &left {
                for &j in &right {
                    if j < i {
                        flips += (self.gens.degrees[w[i]] * self.gens.degrees[w[j]]) as i64;
                    }
                }
            }
            let lw: Vec<usize> = left.iter().map(|i| w[*i]).collect();
            let rw: Vec<usize> = right.iter().map(|i| w[*i]).collect();
            let (Some((s1, m1)), Some((s2, m2))) = (self.gens.from_word(&lw), self.gens.from_word(&rw)) else {
                continue;
            };
            let key = (self.index[&m1], self.index[&m2]);
            let e = out.entry(key).or_insert_with(Q::zero);
            *e += sign(flips) * s1 * s2;
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Per-degree exactness of this truncation relative to the untruncated
    /// complex, for every degree carried by the truncation plus neighbours.
    pub fn exactness(&self) -> BTreeMap<i32, Exactness> {
        let mut degrees: std::collections::BTreeSet<i32> = (0..self.len()).map(|k| self.degree(k)).collect();
        let extra: Vec<i32> = degrees.iter().flat_map(|d| [d - 1, d + 1]).collect();
        degrees.extend(extra);
        degrees
            .into_iter()
            .map(|q| (q, degree_exactness(&self.gens, &self.gen_weights, self.max_weight, q, self.graded_by_lie_weight)))
            .collect()
    }
}

/// Whether every monomial of degree `q` (and, for the length filtration,
/// `q - 1`) has weight at most `w`; infinite families are never exact.
pub(crate) fn degree_exactness(gens: &GenSet, weights: &[u32], w: u32, q: i32, graded: bool) -> Exactness {
    let check = |deg: i32| monomials_of_degree_within(gens, weights, w, deg);
    let ok = if graded { check(q) } else { check(q) && check(q - 1) };
    if ok {
        Exactness::Exact
    } else {
        Exactness::WeightTruncated(w)
    }
}

/// `true` iff the set of monomials of degree `q` is finite and all of them
/// have weight ≤ `w`.
fn monomials_of_degree_within(gens: &GenSet, weights: &[u32], w: u32, q: i32) -> bool {
    let even: Vec<usize> = (0..gens.len()).filter(|g| !gens.is_odd(*g)).collect();
    let pos = even.iter().any(|g| gens.degrees[*g] > 0);
    let neg = even.iter().any(|g| gens.degrees[*g] < 0);
    let zero = even.iter().any(|g| gens.degrees[*g] == 0);
    if zero || (pos && neg) {
        // some degree carries infinitely many monomials; exact only if this
        // degree cannot be reached at all, which we do not try to decide
        return false;
    }
    // odd generators contribute a bounded amount; even ones push the degree
    // monotonically away from zero
    let odd_min: i32 = (0..gens.len()).filter(|g| gens.is_odd(*g)).map(|g| gens.degrees[g].min(0)).sum();
    let odd_max: i32 = (0..gens.len()).filter(|g| gens.is_odd(*g)).map(|g| gens.degrees[g].max(0)).sum();
    let mut stack: Vec<(usize, i32, u32)> = vec![(0, 0, 0)];
    while let Some((g, deg, wt)) = stack.pop() {
        if g == gens.len() {
            if deg == q && wt > w {
                return false;
            }
            continue;
        }
        let dg = gens.degrees[g];
        let cap: u32 = if gens.is_odd(g) { 1 } else { u32::MAX };
        let mut e = 0u32;
        loop {
            let d = deg + dg * e as i32;
            // prune: remaining even generators only move away from zero
            let reachable = if pos { d + odd_min <= q } else { d + odd_max >= q };
            if !reachable && !gens.is_odd(g) {
                break;
            }
            stack.push((g + 1, d, wt + weights[g] * e));
            if e == cap || dg == 0 {
                break;
            }
            e += 1;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::free_lie;
    use crate::lie::fixtures::*;

    #[test]
    fn acyclic_summand_preserves_homology() {
        for n in [0, 1, 2] {
            let cone = DgLieAlgebra::new(
                gens(&[("u", n), ("v", n + 1)]),
                vec![[(1, crate::rational::q(1))].into(), SparseVec::new()],
                BTreeMap::new(),
                None,
            )
            .unwrap();
            for l in [sl2(), heisenberg(), dg_example()] {
                let a = ce_homological(&l, 3).homology_dims();
                let b = ce_homological(&l.direct_sum(&cone), 3).homology_dims();
                assert_eq!(a, b, "cone in degree {n} over {:?}", l.basis().labels);
            }
        }
    }

    #[test]
    fn free_on_sum_is_base_plus_shift() {
        let l = free_lie(&[("x".into(), 2), ("y".into(), 3)], 4).unwrap().lie;
        let c = ce_homological(&l, 4);
        assert_eq!(c.homology_dims(), [(0, 1), (1, 1), (2, 1)].into());
    }

    #[test]
    fn d_squared_zero_on_suite() {
        let two_odd = free_lie(&[("x".into(), 1), ("y".into(), 1)], 4).unwrap().lie;
        for l in [sl2(), heisenberg(), dg_example(), two_odd] {
            let c = ce_homological(&l, 4);
            assert_eq!(c.complex.d_squared_defect(), None);
        }
    }

    #[test]
    fn uncorrected_sign_breaks_d_squared() {
        let l = free_lie(&[("x".into(), 1), ("y".into(), 2)], 4).unwrap().lie;
        assert!(build(&l, 4, BracketSign::Uncorrected).complex.d_squared_defect().is_some());
        assert!(build(&l, 4, BracketSign::Resolved).complex.d_squared_defect().is_none());
    }

    #[test]
    fn sl2_homology() {
        let c = ce_homological(&sl2(), 3);
        assert_eq!(c.homology_dims(), [(0, 1), (-3, 1)].into());
    }

    #[test]
    fn free_even_generator() {
        let l = free_lie(&[("x".into(), 2)], 4).unwrap().lie;
        let c = ce_homological(&l, 4);
        // k ⊕ V[1]: V = k in degree 2 shifts to degree 1
        assert_eq!(c.homology_dims(), [(0, 1), (1, 1)].into());
    }

    #[test]
    fn coproduct_primitive_and_coassociative() {
        let c = ce_homological(&heisenberg(), 4);
        let unit = c.unit();
        for g in 0..c.gens.len() {
            let k = c.index_of(&vec![(g, 1)]).unwrap();
            let expected: BTreeMap<(usize, usize), Q> =
                [((k, unit), crate::rational::q(1)), ((unit, k), crate::rational::q(1))].into();
            assert_eq!(c.coproduct(k), expected);
        }
        for k in 0..c.len() {
            let mut lhs: BTreeMap<(usize, usize, usize), Q> = BTreeMap::new();
            let mut rhs: BTreeMap<(usize, usize, usize), Q> = BTreeMap::new();
            for ((a, b), x) in c.coproduct(k) {
                for ((a1, a2), y) in c.coproduct(a) {
                    *lhs.entry((a1, a2, b)).or_insert_with(Q::zero) += &x * &y;
                }
                for ((b1, b2), y) in c.coproduct(b) {
                    *rhs.entry((a, b1, b2)).or_insert_with(Q::zero) += &x * &y;
                }
            }
            lhs.retain(|_, v| !v.is_zero());
            rhs.retain(|_, v| !v.is_zero());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn exactness_flags() {
        let l = free_lie(&[("x".into(), 2)], 3).unwrap().lie;
        let c = ce_homological(&l, 3);
        assert!(c.exactness()[&1].is_exact());
        let odd = free_lie(&[("x".into(), 1)], 3).unwrap().lie;
        let c = ce_homological(&odd, 3);
        assert!(!c.exactness()[&0].is_exact());
    }
}
